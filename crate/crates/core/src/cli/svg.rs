//! Plane tropical curves as SVG. Geometry is exact; floats appear only when
//! coordinates are printed.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::CliError;
use crate::cayley::{cayley_trick, TropicalSystem};
use crate::exact_math::{dot, primitive, solve_rational, sub, Rat};
use crate::tropical::{dual_subdivision, vertex_coordinates, TropicalPolynomial};

const SCALE: f64 = 40.0;
const MARGIN: f64 = 10.0;
const COLORS: [&str; 4] = ["#1f5fa8", "#b8461b", "#2e7d32", "#6a3d9a"];

/// Axis-aligned clipping box `x0, y0, x1, y1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl std::str::FromStr for BoundingBox {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Vec<f64> = s
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad coordinate {x:?}")))
            .collect::<Result<_, _>>()?;
        if v.len() != 4 || !(v[0] < v[2] && v[1] < v[3]) || v.iter().any(|x| !x.is_finite()) {
            return Err("expected x0,y0,x1,y1 with x0 < x1 and y0 < y1".into());
        }
        Ok(BoundingBox { x0: v[0], y0: v[1], x1: v[2], y1: v[3] })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Extent {
    Segment,
    Ray,
    Line,
}

#[derive(Clone, Debug)]
struct Piece {
    curve: usize,
    from: Vec<Rat>,
    dir: Vec<Rat>,
    extent: Extent,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlotSummary {
    pub vertices: usize,
    pub bounded_edges: usize,
    pub rays: usize,
    pub lines: usize,
    pub intersections: usize,
}

fn to_f(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn rats(v: &[BigInt]) -> Vec<Rat> {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// Direction orthogonal to `e` in the plane.
fn perp(e: &[BigInt]) -> Vec<BigInt> {
    primitive(&[-e[1].clone(), e[0].clone()])
}

fn curve_pieces(index: usize, f: &TropicalPolynomial, vertices: &mut Vec<Vec<Rat>>) -> Result<Vec<Piece>, CliError> {
    let data = dual_subdivision(f).map_err(CliError::domain)?;
    let exps = f.exponents();
    let lifts = f.lifts();
    let mut out = Vec::new();
    match data.dual.dim() {
        2 => {
            let cells = data.dual.cells();
            let mut vert = Vec::new();
            for c in cells {
                let v = vertex_coordinates(&data, c).map_err(CliError::domain)?;
                vertices.push(v.clone());
                vert.push(v);
            }
            for face in data.dual.faces().iter().filter(|e| e.dim == 1) {
                let adjacent: Vec<usize> =
                    (0..cells.len()).filter(|&i| face.points.iter().all(|p| cells[i].binary_search(p).is_ok())).collect();
                let (a, b) = (face.points[0], face.points[face.points.len() - 1]);
                let edge = sub(&exps[b], &exps[a]);
                if adjacent.len() == 2 {
                    let dir: Vec<Rat> = vert[adjacent[1]].iter().zip(&vert[adjacent[0]]).map(|(p, q)| p - q).collect();
                    out.push(Piece { curve: index, from: vert[adjacent[0]].clone(), dir, extent: Extent::Segment });
                } else {
                    // outward normal of the boundary edge
                    let cell = &cells[adjacent[0]];
                    let mut u = perp(&edge);
                    let off = cell
                        .iter()
                        .map(|&p| dot(&u, &sub(&exps[p], &exps[a])))
                        .find(|x| !x.is_zero())
                        .expect("2-cell has a point off the edge");
                    if off.is_positive() {
                        u = u.iter().map(|x| -x).collect();
                    }
                    out.push(Piece { curve: index, from: vert[adjacent[0]].clone(), dir: rats(&u), extent: Extent::Ray });
                }
            }
        }
        1 => {
            for face in data.dual.faces().iter().filter(|e| e.dim == 1) {
                let (a, b) = (face.points[0], face.points[face.points.len() - 1]);
                let edge = sub(&exps[b], &exps[a]);
                // x·edge = ℓ_b - ℓ_a
                let norm = Rat::from_integer(dot(&edge, &edge));
                let t = (&lifts[b] - &lifts[a]) / norm;
                let from = rats(&edge).into_iter().map(|x| x * &t).collect();
                out.push(Piece { curve: index, from, dir: rats(&perp(&edge)), extent: Extent::Line });
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Points where all curves meet, one per two-dimensional mixed cell meeting
/// every polynomial.
fn intersection_points(sys: &TropicalSystem) -> Result<Vec<Vec<Rat>>, CliError> {
    if sys.len() < 2 {
        return Ok(Vec::new());
    }
    let ms = cayley_trick(sys).map_err(CliError::domain)?;
    let mut out = Vec::new();
    for c in ms.maximal_cells().filter(|c| c.meets_all() && c.dim == 2) {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (terms, f) in c.parts.iter().zip(sys.polys()) {
            let t0 = &f.terms()[terms[0]];
            for &t in &terms[1..] {
                let t = &f.terms()[t];
                rows.push(rats(&sub(&t.exponent, &t0.exponent)));
                rhs.push(&t.lift - &t0.lift);
            }
        }
        if let Some(x) = solve_rational(&rows, &rhs) {
            out.push(x);
        }
    }
    out.sort();
    Ok(out)
}

/// Liang-Barsky clipping of `p + t d` to the box, `t` restricted by the
/// extent. Returns the clipped endpoints.
fn clip(p: [f64; 2], d: [f64; 2], extent: Extent, b: &BoundingBox) -> Option<([f64; 2], [f64; 2])> {
    let (mut lo, mut hi) = match extent {
        Extent::Segment => (0.0, 1.0),
        Extent::Ray => (0.0, f64::INFINITY),
        Extent::Line => (f64::NEG_INFINITY, f64::INFINITY),
    };
    let bounds = [(b.x0, b.x1), (b.y0, b.y1)];
    for k in 0..2 {
        let (min, max) = bounds[k];
        if d[k] == 0.0 {
            if p[k] < min || p[k] > max {
                return None;
            }
            continue;
        }
        let t1 = (min - p[k]) / d[k];
        let t2 = (max - p[k]) / d[k];
        lo = lo.max(t1.min(t2));
        hi = hi.min(t1.max(t2));
    }
    if lo > hi {
        return None;
    }
    let at = |t: f64| [p[0] + t * d[0], p[1] + t * d[1]];
    Some((at(lo), at(hi)))
}

fn default_box(points: &[Vec<Rat>], pieces: &[Piece]) -> BoundingBox {
    let mut xs: Vec<f64> = points.iter().map(|v| to_f(&v[0])).collect();
    let mut ys: Vec<f64> = points.iter().map(|v| to_f(&v[1])).collect();
    for p in pieces.iter().filter(|p| p.extent == Extent::Line) {
        xs.push(to_f(&p.from[0]));
        ys.push(to_f(&p.from[1]));
    }
    let span = |v: &[f64]| {
        if v.is_empty() {
            (0.0, 0.0)
        } else {
            (v.iter().cloned().fold(f64::INFINITY, f64::min), v.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
        }
    };
    let (x0, x1) = span(&xs);
    let (y0, y1) = span(&ys);
    BoundingBox { x0: x0 - 2.0, y0: y0 - 2.0, x1: x1 + 2.0, y1: y1 + 2.0 }
}

/// Renders the curves of a plane system, clipping unbounded pieces to the
/// box, with markers where all curves meet and optionally the dual
/// subdivisions drawn beside the curves.
pub fn emit_svg(sys: &TropicalSystem, bbox: Option<BoundingBox>, dual: bool) -> Result<(String, PlotSummary), CliError> {
    if sys.ambient_dim() != 2 {
        return Err(CliError::Validation(format!("plotting needs ambient dimension 2, got {}", sys.ambient_dim())));
    }
    let mut vertices = Vec::new();
    let mut pieces = Vec::new();
    for (i, f) in sys.polys().iter().enumerate() {
        pieces.extend(curve_pieces(i, f, &mut vertices)?);
    }
    let marks = intersection_points(sys)?;
    let mut summary = PlotSummary {
        vertices: vertices.len(),
        intersections: marks.len(),
        ..Default::default()
    };
    for p in &pieces {
        match p.extent {
            Extent::Segment => summary.bounded_edges += 1,
            Extent::Ray => summary.rays += 1,
            Extent::Line => summary.lines += 1,
        }
    }
    let mut all_points = vertices.clone();
    all_points.extend(marks.iter().cloned());
    let b = bbox.unwrap_or_else(|| default_box(&all_points, &pieces));
    let plot_w = (b.x1 - b.x0) * SCALE + 2.0 * MARGIN;
    let plot_h = (b.y1 - b.y0) * SCALE + 2.0 * MARGIN;
    let sx = |x: f64| (x - b.x0) * SCALE + MARGIN;
    let sy = |y: f64| (b.y1 - y) * SCALE + MARGIN;

    let mut panels = Vec::new();
    if dual {
        for f in sys.polys() {
            let exps = f.exponents();
            let lo: Vec<i64> = (0..2).map(|j| exps.iter().map(|e| e[j].to_i64().unwrap_or(0)).min().unwrap()).collect();
            let hi: Vec<i64> = (0..2).map(|j| exps.iter().map(|e| e[j].to_i64().unwrap_or(0)).max().unwrap()).collect();
            panels.push((f, lo, hi));
        }
    }
    let panel_w: f64 = panels.iter().map(|(_, lo, hi)| (hi[0] - lo[0]) as f64 * SCALE + 2.0 * MARGIN).sum();
    let panel_h = panels.iter().map(|(_, lo, hi)| (hi[1] - lo[1]) as f64 * SCALE + 2.0 * MARGIN).fold(0.0, f64::max);
    let width = plot_w + panel_w;
    let height = plot_h.max(panel_h);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{width:.3}" height="{height:.3}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#cccccc" stroke-dasharray="4 3"/>"##,
        MARGIN,
        MARGIN,
        plot_w - 2.0 * MARGIN,
        plot_h - 2.0 * MARGIN
    );
    for (i, _) in sys.polys().iter().enumerate() {
        let _ = writeln!(s, r#"<g id="curve-{i}" stroke="{}" stroke-width="2" fill="none">"#, COLORS[i % COLORS.len()]);
        for p in pieces.iter().filter(|p| p.curve == i) {
            let from = [to_f(&p.from[0]), to_f(&p.from[1])];
            let dir = [to_f(&p.dir[0]), to_f(&p.dir[1])];
            if let Some((a, c)) = clip(from, dir, p.extent, &b) {
                let _ = writeln!(
                    s,
                    r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                    sx(a[0]),
                    sy(a[1]),
                    sx(c[0]),
                    sy(c[1])
                );
            }
        }
        let _ = writeln!(s, "</g>");
    }
    let inside = |v: &[Rat]| {
        let (x, y) = (to_f(&v[0]), to_f(&v[1]));
        b.x0 <= x && x <= b.x1 && b.y0 <= y && y <= b.y1
    };
    let _ = writeln!(s, r#"<g id="vertices" fill="black">"#);
    for v in vertices.iter().filter(|v| inside(v)) {
        let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="3"/>"#, sx(to_f(&v[0])), sy(to_f(&v[1])));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g id="intersections" fill="none" stroke="#d62728" stroke-width="2">"##);
    for v in marks.iter().filter(|v| inside(v)) {
        let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="6"/>"#, sx(to_f(&v[0])), sy(to_f(&v[1])));
    }
    let _ = writeln!(s, "</g>");

    let mut offset = plot_w;
    for (i, (f, lo, hi)) in panels.iter().enumerate() {
        let data = dual_subdivision(f).map_err(CliError::domain)?;
        let exps = f.exponents();
        let px = |e: &[BigInt]| offset + MARGIN + (e[0].to_i64().unwrap_or(0) - lo[0]) as f64 * SCALE;
        let py = |e: &[BigInt]| MARGIN + (hi[1] - e[1].to_i64().unwrap_or(0)) as f64 * SCALE;
        let _ = writeln!(s, r#"<g id="dual-{i}" stroke="{}" stroke-width="1" fill="none">"#, COLORS[i % COLORS.len()]);
        for e in data.dual.faces().iter().filter(|e| e.dim == 1) {
            let (a, c) = (&exps[e.points[0]], &exps[e.points[e.points.len() - 1]]);
            let _ = writeln!(s, r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#, px(a), py(a), px(c), py(c));
        }
        for e in &exps {
            let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="2" fill="black"/>"#, px(e), py(e));
        }
        let _ = writeln!(s, "</g>");
        offset += (hi[0] - lo[0]) as f64 * SCALE + 2.0 * MARGIN;
    }
    let _ = writeln!(s, "</svg>");
    Ok((s, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::tests::{poly, two_lines};

    fn single(f: TropicalPolynomial) -> TropicalSystem {
        TropicalSystem::new(2, vec![f]).unwrap()
    }

    #[test]
    fn line_has_three_rays() {
        let line = poly(2, &[(&[0, 0], 0), (&[1, 0], 0), (&[0, 1], 0)]);
        let (svg, sum) = emit_svg(&single(line), None, false).unwrap();
        assert_eq!(sum, PlotSummary { vertices: 1, rays: 3, ..Default::default() });
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<line ").count(), 3);
    }

    #[test]
    fn conic_on_square() {
        let conic = poly(2, &[(&[0, 0], 0), (&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1)]);
        let (_, sum) = emit_svg(&single(conic), None, true).unwrap();
        assert_eq!((sum.vertices, sum.bounded_edges, sum.rays), (2, 1, 4));
    }

    #[test]
    fn markers_only_where_curves_meet() {
        let (_, sum) = emit_svg(&two_lines(), None, false).unwrap();
        assert_eq!(sum.intersections, 1);
        let a = poly(2, &[(&[0, 0], 0), (&[1, 0], 0)]);
        let b = poly(2, &[(&[0, 0], 0), (&[1, 0], 5)]);
        let (svg, sum) = emit_svg(&TropicalSystem::new(2, vec![a, b]).unwrap(), None, false).unwrap();
        assert_eq!((sum.lines, sum.intersections), (2, 0));
        assert!(!svg.contains("r=\"6\""));
    }

    #[test]
    fn clipping() {
        let b: BoundingBox = "0,0,1,1".parse().unwrap();
        assert_eq!(clip([0.5, 0.5], [1.0, 0.0], Extent::Ray, &b), Some(([0.5, 0.5], [1.0, 0.5])));
        assert_eq!(clip([2.0, 2.0], [1.0, 0.0], Extent::Ray, &b), None);
        assert!("1,0,0,1".parse::<BoundingBox>().is_err());
    }
}
