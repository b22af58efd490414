use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::envelope::{int, ints, rational, rationals};
use super::svg::emit_svg;
use super::{Cli, CliError, Command};
use crate::cayley::{cayley_trick, is_nondegenerate_system, purity_flags, TropicalSystem};
use crate::invariants::{
    euler_formula_hypersurface, identity_suite, nb_k_formula, phi_polynomial, sigma_compactified,
    sigma_complete_intersection_terms, sigma_hypersurface, verify_main_theorem,
};
use crate::multiplicity::{
    stable_intersection_total, weight_by_perturbation, weight_general, weight_transversal, IntersectionCell,
    MultiplicityError,
};
use crate::patchwork::{ci_complex, euler_compactified, euler_torus};
use crate::polytope::{cone_series_check, ehrhart, mixed_volume, psi_coefficients};
use crate::tropical::{dual_subdivision, is_nondegenerate};

type Verdicts = BTreeMap<String, bool>;

pub(super) fn dispatch(cli: &Cli, sys: Option<&TropicalSystem>) -> Result<(Value, Verdicts), CliError> {
    let need = || sys.ok_or_else(|| CliError::Validation("missing input system".into()));
    match &cli.command {
        Command::Subdivide(_) => subdivide(need()?),
        Command::Nondegenerate(_) => nondegenerate(need()?),
        Command::Weights(_) => weights(need()?, cli),
        Command::Bernstein(_) => bernstein(need()?),
        Command::Patchwork(_) => patchwork(need()?, cli),
        Command::Signature(_) => signature(need()?, cli),
        Command::Verify(_) => verify(need()?, cli),
        Command::Identities { max_n } => identities(*max_n),
        Command::Plot { output, dual, .. } => {
            let (svg, summary) = emit_svg(need()?, cli.bbox, *dual)?;
            std::fs::write(output, svg).map_err(|e| CliError::Io(format!("{}: {e}", output.display())))?;
            Ok((
                json!({
                    "output": output.display().to_string(),
                    "vertices": summary.vertices,
                    "bounded_edges": summary.bounded_edges,
                    "rays": summary.rays,
                    "lines": summary.lines,
                    "intersections": summary.intersections,
                }),
                Verdicts::new(),
            ))
        }
    }
}

fn require_full(sys: &TropicalSystem) -> Result<(), CliError> {
    if sys.sum_dim() != sys.ambient_dim() {
        return Err(CliError::Validation(format!(
            "the Newton polytopes span dimension {} in ambient dimension {}",
            sys.sum_dim(),
            sys.ambient_dim()
        )));
    }
    Ok(())
}

fn require_nondegenerate(sys: &TropicalSystem) -> Result<(), CliError> {
    if !is_nondegenerate_system(sys).map_err(CliError::domain)? {
        return Err(CliError::Validation("the system is degenerate".into()));
    }
    Ok(())
}

fn subdivide(sys: &TropicalSystem) -> Result<(Value, Verdicts), CliError> {
    let mut polys = Vec::new();
    for f in sys.polys() {
        let data = dual_subdivision(f).map_err(CliError::domain)?;
        polys.push(json!({
            "cells": data.dual.cells(),
            "faces": data.dual.faces().len(),
            "primitive": is_nondegenerate(f).map_err(CliError::domain)?,
        }));
    }
    let ms = cayley_trick(sys).map_err(CliError::domain)?;
    let (pure, tight) = purity_flags(&ms);
    let cells: Vec<Value> = ms
        .maximal_cells()
        .map(|c| json!({"parts": c.parts, "part_dims": c.part_dims, "dim": c.dim, "pure": c.is_pure(), "tight": c.is_tight()}))
        .collect();
    Ok((
        json!({"polynomials": polys, "mixed": {"maximal_cells": cells, "pure": pure, "tight": tight}}),
        Verdicts::new(),
    ))
}

fn nondegenerate(sys: &TropicalSystem) -> Result<(Value, Verdicts), CliError> {
    let per: Vec<bool> = sys.polys().iter().map(is_nondegenerate).collect::<Result<_, _>>().map_err(CliError::domain)?;
    let ms = cayley_trick(sys).map_err(CliError::domain)?;
    let (pure, tight) = purity_flags(&ms);
    Ok((
        json!({
            "nondegenerate": is_nondegenerate_system(sys).map_err(CliError::domain)?,
            "polynomials_nondegenerate": per,
            "pure": pure,
            "tight": tight,
        }),
        Verdicts::new(),
    ))
}

fn weights(sys: &TropicalSystem, cli: &Cli) -> Result<(Value, Verdicts), CliError> {
    let ms = cayley_trick(sys).map_err(CliError::domain)?;
    let mut cells = Vec::new();
    let mut perturbation_ok = true;
    let mut transversal_ok = true;
    for c in ms.cells.iter().filter(|c| c.meets_all()) {
        let ic = IntersectionCell::from_mixed(sys, c);
        let w = weight_general(&ic).map_err(CliError::domain)?;
        let mut entry = json!({
            "parts": c.parts,
            "part_dims": c.part_dims,
            "dim": c.dim,
            "boundary": c.boundary,
            "transversal": ic.is_transversal(),
            "weight": int(&w.weight),
            "terms": w.terms.iter().map(|(t, mv)| json!({"t": t, "mixed_volume": int(mv)})).collect::<Vec<_>>(),
        });
        if ic.is_transversal() {
            let tw = weight_transversal(&ic).map_err(CliError::domain)?;
            entry["index"] = int(tw.index.as_ref().expect("transversal index"));
            if cli.oracle {
                let mv = mixed_volume(&ic.parts, &ic.part_dims, Some(&ic.lattice())).map_err(CliError::domain)?;
                transversal_ok &= mv == crate::exact_math::rat_int(tw.weight.clone());
            }
        }
        if cli.oracle {
            let p = weight_by_perturbation(&ic, cli.seed).map_err(CliError::domain)?;
            perturbation_ok &= p == w.weight;
            entry["perturbation_weight"] = int(&p);
        }
        cells.push(entry);
    }
    let mut verdicts = Verdicts::new();
    if cli.oracle {
        verdicts.insert("perturbation_agrees".into(), perturbation_ok);
        verdicts.insert("transversal_formula_agrees".into(), transversal_ok);
    }
    Ok((json!({"cells": cells}), verdicts))
}

fn bernstein(sys: &TropicalSystem) -> Result<(Value, Verdicts), CliError> {
    if sys.len() != sys.ambient_dim() {
        return Err(CliError::Validation(format!(
            "{} polynomials in dimension {}; a square system is required",
            sys.len(),
            sys.ambient_dim()
        )));
    }
    let (total, mv) = match stable_intersection_total(sys) {
        Ok(t) => (t.clone(), t),
        Err(MultiplicityError::BernsteinMismatch { weights, mixed_volume }) => (weights, mixed_volume),
        Err(e) => return Err(CliError::domain(e)),
    };
    let mut verdicts = Verdicts::new();
    verdicts.insert("weights_equal_mixed_volume".into(), total == mv);
    Ok((json!({"total": int(&total), "mixed_volume": int(&mv)}), verdicts))
}

fn patchwork(sys: &TropicalSystem, cli: &Cli) -> Result<(Value, Verdicts), CliError> {
    require_full(sys)?;
    require_nondegenerate(sys)?;
    let complex = ci_complex(sys).map_err(CliError::domain)?;
    let chi = euler_torus(&complex);
    let mut out = json!({"cell_counts": ints(&complex.counts), "euler_torus": int(&chi), "pieces": complex.pieces.len()});
    let mut verdicts = Verdicts::new();
    if cli.compact {
        out["euler_compactified"] = int(&euler_compactified(sys).map_err(CliError::domain)?);
    }
    if cli.oracle && sys.len() == 1 {
        let a = ehrhart(&sys.polys()[0].newton_polytope()).map_err(CliError::domain)?;
        let formula = euler_formula_hypersurface(&a).map_err(CliError::domain)?;
        out["euler_formula"] = int(&formula);
        verdicts.insert("closed_formula_agrees".into(), formula == chi);
    }
    Ok((out, verdicts))
}

fn signature(sys: &TropicalSystem, cli: &Cli) -> Result<(Value, Verdicts), CliError> {
    require_full(sys)?;
    let n = sys.ambient_dim();
    let mut verdicts = Verdicts::new();
    let mut out = if sys.len() == 1 {
        let newton = sys.polys()[0].newton_polytope();
        let a = ehrhart(&newton).map_err(CliError::domain)?;
        let phi = phi_polynomial(&a).map_err(CliError::domain)?;
        let sigma = sigma_hypersurface(&a).map_err(CliError::domain)?;
        let phi_at = phi.eval(&crate::exact_math::rat(-1, 1));
        if cli.oracle {
            verdicts.insert("phi_matches".into(), phi_at == crate::exact_math::rat_int(sigma.clone()));
            verdicts.insert("cone_series".into(), cone_series_check(&newton, 5).map_err(CliError::domain)?);
        }
        json!({
            "ehrhart": rationals(&a.coefficients),
            "psi": ints(&psi_coefficients(&a)),
            "phi": rationals(&phi.coefficients),
            "phi_at_minus_one": rational(&phi_at),
            "sigma": int(&sigma),
            "euler_formula": int(&euler_formula_hypersurface(&a).map_err(CliError::domain)?),
            "nb_formula": ints(&nb_k_formula(&a).map_err(CliError::domain)?),
        })
    } else {
        let terms = sigma_complete_intersection_terms(&sys.supports(), n).map_err(CliError::domain)?;
        let sum: num_bigint::BigInt = terms.iter().map(|(_, s)| s.clone()).sum();
        let sigma = crate::exact_math::ipow(-2, n as u32) + if sys.len() % 2 == 1 { -sum } else { sum };
        json!({
            "subsets": terms.iter().map(|(i, s)| json!({"subset": i, "sigma": int(s)})).collect::<Vec<_>>(),
            "sigma": int(&sigma),
        })
    };
    if cli.compact {
        out["sigma_compactified"] = int(&sigma_compactified(&sys.supports(), n).map_err(CliError::domain)?);
    }
    Ok((out, verdicts))
}

fn verify(sys: &TropicalSystem, cli: &Cli) -> Result<(Value, Verdicts), CliError> {
    require_full(sys)?;
    require_nondegenerate(sys)?;
    let rep = verify_main_theorem(sys, cli.compact).map_err(CliError::domain)?;
    let mut out = json!({
        "chi": int(&rep.chi),
        "sigma": int(&rep.sigma),
        "cell_counts": ints(&rep.cell_counts),
        "subsets": rep.subsets.iter().map(|(i, s)| json!({"subset": i, "sigma": int(s)})).collect::<Vec<_>>(),
        "failures": rep.failures,
    });
    if let Some(t) = &rep.hypersurface {
        out["hypersurface"] = json!({
            "ehrhart": rationals(&t.ehrhart),
            "psi": ints(&t.psi),
            "phi": rationals(&t.phi),
            "phi_at_minus_one": rational(&t.phi_at_minus_one),
            "sigma_formula": int(&t.sigma_formula),
            "euler_formula": int(&t.euler_formula),
            "nb_direct": ints(&t.nb_direct),
            "nb_formula": ints(&t.nb_formula),
        });
    }
    let mut verdicts = Verdicts::new();
    verdicts.insert("torus".into(), rep.chi == rep.sigma);
    verdicts.insert("consistency".into(), rep.holds());
    if let Some((c, s)) = &rep.compactified {
        out["compactified"] = json!({"chi": int(c), "sigma": int(s)});
        verdicts.insert("compactified".into(), c == s);
    }
    Ok((out, verdicts))
}

fn identities(max_n: usize) -> Result<(Value, Verdicts), CliError> {
    if max_n > 10 {
        return Err(CliError::Validation(format!("max-n is at most 10, got {max_n}")));
    }
    let rep = identity_suite(max_n);
    let mut verdicts = Verdicts::new();
    verdicts.insert("vanishing_sums".into(), rep.vanishing_sums);
    verdicts.insert("binomial_tail".into(), rep.binomial_tail);
    verdicts.insert("recurrences".into(), rep.recurrences);
    verdicts.insert("diagonal".into(), rep.diagonal);
    Ok((json!({"max_n": max_n, "checks": rep.checks, "failures": rep.failures}), verdicts))
}
