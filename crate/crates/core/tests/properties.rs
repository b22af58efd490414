use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

use trop_ci::cayley::{admissible_collections, cayley_trick, face_system, is_nondegenerate_system, TropicalSystem};
use trop_ci::cli::SystemFile;
use trop_ci::corpus::{
    dilated_simplex, lattice_box, nondegenerate_system, polynomial, primitive_lifts, random_lifts, random_polygon,
    random_signs, random_system, rng, small_supports,
};
use trop_ci::exact_math::{
    determinant, ivec, lattice_index, orthogonal_lattice, rank, rat, rat_int, saturation, IntMatrix, Rat,
};
use trop_ci::invariants::{
    euler_formula_hypersurface, phi_polynomial, sigma_complete_intersection, sigma_hypersurface,
};
use trop_ci::multiplicity::{weight_by_perturbation, weight_general, IntersectionCell};
use trop_ci::patchwork::{
    ci_complex, count_mixed_copies_brute, count_mixed_copies_f2, euler_torus, hypersurface_complex, SignedPiece,
};
use trop_ci::polytope::{
    count_dilate, ehrhart, mixed_volume, normalized_volume, regular_subdivision, LatticePolytope,
};
use trop_ci::tropical::{dual_subdivision, truncation, Sign, TropicalPolynomial};

type Points = Vec<Vec<BigInt>>;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

fn identity(n: usize) -> Points {
    (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
}

fn unimodular<R: Rng>(r: &mut R, n: usize) -> Points {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for _ in 0..3 * n {
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        if a != b {
            let c = r.gen_range(-2..=2);
            for j in 0..n {
                m[a][j] += c * m[b][j];
            }
        }
    }
    m.iter().map(|row| ivec(row)).collect()
}

/// `v U` for a row vector `v`.
fn apply(v: &[BigInt], u: &[Vec<BigInt>]) -> Vec<BigInt> {
    (0..u[0].len()).map(|j| v.iter().zip(u).map(|(x, row)| x * &row[j]).sum()).collect()
}

fn random_vectors<R: Rng>(r: &mut R, n: usize, count: usize, range: i64) -> Points {
    (0..count).map(|_| (0..n).map(|_| BigInt::from(r.gen_range(-range..=range))).collect()).collect()
}

fn leibniz(m: &[Vec<i64>]) -> BigInt {
    fn go(perm: &mut Vec<usize>, i: usize, m: &[Vec<i64>], total: &mut BigInt) {
        if i == perm.len() {
            let inv = (0..perm.len()).flat_map(|a| (a + 1..perm.len()).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
            let prod: BigInt = perm.iter().enumerate().map(|(row, &col)| BigInt::from(m[row][col])).product();
            if inv % 2 == 1 {
                *total -= prod;
            } else {
                *total += prod;
            }
            return;
        }
        for j in i..perm.len() {
            perm.swap(i, j);
            go(perm, i + 1, m, total);
            perm.swap(i, j);
        }
    }
    let mut perm: Vec<usize> = (0..m.len()).collect();
    let mut total = BigInt::zero();
    go(&mut perm, 0, m, &mut total);
    total
}

fn some_polytope<R: Rng>(r: &mut R) -> Points {
    match r.gen_range(0..4) {
        0 => {
            let count = r.gen_range(4..=9);
            random_polygon(r, count)
        }
        1 => dilated_simplex(2, r.gen_range(1..=3)),
        2 => lattice_box(&[r.gen_range(1..=2), r.gen_range(1..=2)]),
        _ => small_supports(r, 3),
    }
}

fn polygon_system<R: Rng>(r: &mut R, pts: &[Vec<BigInt>]) -> TropicalPolynomial {
    let lifts = primitive_lifts(r, pts, 60).expect("primitive lift");
    polynomial(pts, &lifts, Some(&random_signs(r, pts.len())))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn determinant_matches_permutation_expansion(m in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 4)) {
        let rows: Vec<&[i64]> = m.iter().map(|x| x.as_slice()).collect();
        prop_assert_eq!(determinant(&IntMatrix::from_i64(&rows)).unwrap(), leibniz(&m));
    }

    #[test]
    fn index_against_orthogonal_lattices(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5usize);
        let sat = |r: &mut rand_chacha::ChaCha8Rng| {
            let rk = r.gen_range(0..=n);
            saturation(&random_vectors(r, n, rk, 4), n)
        };
        let (g1, g2) = (sat(&mut r), sat(&mut r));
        let both: Points = g1.iter().chain(&g2).cloned().collect();
        prop_assume!(rank(&both) == n);
        let duals: Points = orthogonal_lattice(&g1, n).into_iter().chain(orthogonal_lattice(&g2, n)).collect();
        let meet = orthogonal_lattice(&duals, n);
        let lhs = lattice_index(&identity(n), &both).unwrap();
        let rhs = lattice_index(&orthogonal_lattice(&meet, n), &duals).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn index_ignores_generators_and_ambient_basis(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4usize);
        let count = r.gen_range(1..=n + 1);
        let gens = random_vectors(&mut r, n, count, 5);
        let base = lattice_index(&identity(n), &gens).unwrap();
        // same subgroup: unimodular recombination plus a redundant sum
        let m = gens.len();
        let v = unimodular(&mut r, m);
        let mut regen: Points = (0..m).map(|i| (0..n).map(|j| (0..m).map(|l| &v[i][l] * &gens[l][j]).sum()).collect()).collect();
        regen.push((0..n).map(|j| gens.iter().map(|g| g[j].clone()).sum()).collect());
        prop_assert_eq!(&lattice_index(&identity(n), &regen).unwrap(), &base);
        let u = unimodular(&mut r, n);
        let moved: Points = gens.iter().map(|g| apply(g, &u)).collect();
        prop_assert_eq!(&lattice_index(&u, &moved).unwrap(), &base);
    }

    #[test]
    fn primitive_simplices_have_volume_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4usize);
        let k = r.gen_range(1..=n);
        let u = unimodular(&mut r, n);
        let shift = random_vectors(&mut r, n, 1, 3).remove(0);
        let mut pts = vec![shift.clone()];
        pts.extend(u[..k].iter().map(|e| e.iter().zip(&shift).map(|(a, b)| a + b).collect::<Vec<_>>()));
        prop_assert!(normalized_volume(&LatticePolytope::from_points(&pts).unwrap()).is_one());
        // doubling one edge is no longer primitive
        let mut fat = pts.clone();
        fat[1] = fat[1].iter().zip(&shift).map(|(a, b)| a * 2 - b).collect();
        prop_assert_eq!(normalized_volume(&LatticePolytope::from_points(&fat).unwrap()), BigInt::from(2));
    }

    #[test]
    fn mixed_volume_of_copies_is_volume(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = some_polytope(&mut r);
        let poly = LatticePolytope::from_points(&p).unwrap();
        let l = poly.dim();
        let mv = mixed_volume(&vec![p.clone(); l], &vec![1; l], None).unwrap();
        prop_assert_eq!(mv, rat_int(normalized_volume(&poly)));
    }

    #[test]
    fn mixed_volume_is_sum_over_mixed_cells(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=3usize);
        let supports: Vec<Points> = (0..n).map(|_| small_supports(&mut r, n)).collect();
        let range = r.gen_range(0..=20);
        let sys = random_system(&mut r, &supports, range);
        let ms = cayley_trick(&sys).unwrap();
        let mut total = Rat::zero();
        for c in ms.maximal_cells() {
            let parts: Vec<Points> = c.parts.iter().zip(sys.polys()).map(|(t, f)| t.iter().map(|&i| f.terms()[i].exponent.clone()).collect()).collect();
            total += mixed_volume(&parts, &vec![1; n], Some(&identity(n))).unwrap();
        }
        prop_assert_eq!(total, mixed_volume(&supports, &vec![1; n], Some(&identity(n))).unwrap());
    }

    #[test]
    fn ehrhart_extrapolates(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = LatticePolytope::from_points(&some_polytope(&mut r)).unwrap();
        let a = ehrhart(&p).unwrap();
        let n = p.ambient_dim() as u64;
        for lambda in [n + 1, n + 2] {
            prop_assert_eq!(a.eval(lambda), rat_int(count_dilate(&p, lambda)));
        }
    }

    #[test]
    fn subdivision_tiles_the_hull(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pts = some_polytope(&mut r);
        let range = r.gen_range(0..=6);
        let sub = regular_subdivision(&pts, &random_lifts(&mut r, pts.len(), range)).unwrap();
        let sum: BigInt = sub.cells().iter().map(|c| sub.cell_volume(c)).sum();
        prop_assert_eq!(sum, normalized_volume(sub.hull()));
    }

    #[test]
    fn dual_cells_have_complementary_dimension(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pts = some_polytope(&mut r);
        let n = pts[0].len();
        let f = polynomial(&pts, &random_lifts(&mut r, pts.len(), 5), None);
        let data = dual_subdivision(&f).unwrap();
        for c in &data.cells {
            prop_assert_eq!(c.dim + c.dual_dim, n);
            prop_assert_eq!(c.unbounded, data.dual.in_boundary(&c.points));
        }
    }

    #[test]
    fn affine_change_of_lifts_keeps_subdivision(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pts = some_polytope(&mut r);
        let lifts = random_lifts(&mut r, pts.len(), 6);
        let a = random_vectors(&mut r, pts[0].len(), 1, 9).remove(0);
        let c = rat(r.gen_range(-9..=9), r.gen_range(1..=4));
        let moved: Vec<Rat> = pts.iter().zip(&lifts).map(|(p, l)| l + rat_int(trop_ci::exact_math::dot(&a, p)) + &c).collect();
        let s1 = regular_subdivision(&pts, &lifts).unwrap();
        let s2 = regular_subdivision(&pts, &moved).unwrap();
        prop_assert_eq!(s1.faces(), s2.faces());
    }

    #[test]
    fn truncation_restricts_the_subdivision(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pts = some_polytope(&mut r);
        let f = polynomial(&pts, &random_lifts(&mut r, pts.len(), 5), None);
        let data = dual_subdivision(&f).unwrap();
        for face in f.newton_polytope().faces() {
            if face.dim == 0 {
                continue;
            }
            let t = dual_subdivision(&truncation(&f, &face.points).unwrap()).unwrap();
            let lifted: BTreeSet<Vec<usize>> =
                t.dual.cells().iter().map(|c| c.iter().map(|&j| face.points[j]).collect()).collect();
            let induced: BTreeSet<Vec<usize>> = data
                .dual
                .faces()
                .iter()
                .filter(|g| g.dim == face.dim && g.points.iter().all(|i| face.points.binary_search(i).is_ok()))
                .map(|g| g.points.clone())
                .collect();
            prop_assert_eq!(lifted, induced);
        }
    }

    #[test]
    fn cayley_trick_matches_lifted_minkowski_sum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2;
        let k = r.gen_range(1..=3usize);
        let supports: Vec<Points> = (0..k).map(|_| small_supports(&mut r, n)).collect();
        let sys = random_system(&mut r, &supports, 30);
        let ms = cayley_trick(&sys).unwrap();
        // lower hull of the summed lifted points, keeping the lowest lift
        let mut sums: std::collections::BTreeMap<Vec<BigInt>, Rat> = std::collections::BTreeMap::new();
        sums.insert(vec![BigInt::zero(); n], Rat::zero());
        for f in sys.polys() {
            let mut next = std::collections::BTreeMap::new();
            for (p, l) in &sums {
                for t in f.terms() {
                    let q: Vec<BigInt> = p.iter().zip(&t.exponent).map(|(a, b)| a + b).collect();
                    let v = l + &t.lift;
                    let e = next.entry(q).or_insert_with(|| v.clone());
                    if v < *e {
                        *e = v;
                    }
                }
            }
            sums = next;
        }
        let (pts, lifts): (Points, Vec<Rat>) = sums.into_iter().unzip();
        let direct = regular_subdivision(&pts, &lifts).unwrap();
        let hull_vertices = |cell: &[Vec<BigInt>]| -> BTreeSet<Vec<BigInt>> {
            LatticePolytope::from_points(cell).unwrap().vertex_points().into_iter().collect()
        };
        let from_direct: BTreeSet<BTreeSet<Vec<BigInt>>> = direct
            .cells()
            .iter()
            .map(|c| hull_vertices(&c.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>()))
            .collect();
        let from_cayley: BTreeSet<BTreeSet<Vec<BigInt>>> = ms
            .maximal_cells()
            .map(|c| {
                let mut acc: Points = vec![vec![BigInt::zero(); n]];
                for (terms, f) in c.parts.iter().zip(sys.polys()) {
                    acc = acc
                        .iter()
                        .flat_map(|a| terms.iter().map(move |&t| a.iter().zip(&f.terms()[t].exponent).map(|(x, y)| x + y).collect::<Vec<_>>()))
                        .collect();
                }
                hull_vertices(&acc)
            })
            .collect();
        prop_assert_eq!(from_cayley, from_direct);
    }

    #[test]
    fn cayley_triangulations_give_tight_cells(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=2usize);
        let supports: Vec<Points> = (0..k).map(|_| small_supports(&mut r, 2)).collect();
        let sys = random_system(&mut r, &supports, 1_000);
        let ms = cayley_trick(&sys).unwrap();
        let triangulation = ms.cayley.cells().iter().all(|c| c.len() == ms.cayley.cell_dim(c) + 1);
        prop_assume!(triangulation);
        prop_assert!(ms.cells.iter().all(|c| c.is_tight()));
    }

    #[test]
    fn nondegeneracy_passes_to_faces(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=2usize);
        let supports: Vec<Points> = (0..k).map(|_| small_supports(&mut r, 2)).collect();
        let sys = nondegenerate_system(&mut r, &supports, 200).expect("nondegenerate lifts");
        prop_assert!(is_nondegenerate_system(&sys).unwrap());
        for adm in admissible_collections(&sys) {
            prop_assert!(is_nondegenerate_system(&face_system(&sys, &adm).unwrap()).unwrap());
        }
    }

    #[test]
    fn cells_with_a_point_factor_weigh_nothing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=3usize);
        let segment = small_supports(&mut r, n);
        let point = random_vectors(&mut r, n, 1, 3);
        let cell = IntersectionCell::new(n, vec![segment, point]).unwrap();
        prop_assert!(weight_general(&cell).unwrap().weight.is_zero());
        prop_assert!(weight_by_perturbation(&cell, seed).unwrap().is_zero());
    }

    #[test]
    fn copy_counts_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5usize);
        let pieces: Vec<SignedPiece> = (0..r.gen_range(1..=3))
            .map(|_| {
                let m = r.gen_range(1..=4);
                let pts = random_vectors(&mut r, n, m, 4);
                SignedPiece::new(pts, random_signs(&mut r, m)).unwrap()
            })
            .collect();
        prop_assert_eq!(count_mixed_copies_brute(&pieces, n), count_mixed_copies_f2(&pieces, n));
    }

    #[test]
    fn euler_characteristic_depends_only_on_the_polygon(seed in any::<u64>()) {
        let mut r = rng(seed);
        let count = r.gen_range(3..=9);
        let pts = random_polygon(&mut r, count);
        let first = euler_torus(&hypersurface_complex(&polygon_system(&mut r, &pts)).unwrap());
        for _ in 0..3 {
            prop_assert_eq!(&euler_torus(&hypersurface_complex(&polygon_system(&mut r, &pts)).unwrap()), &first);
        }
        let a = ehrhart(&LatticePolytope::from_points(&pts).unwrap()).unwrap();
        prop_assert_eq!(euler_formula_hypersurface(&a).unwrap(), first);
    }

    #[test]
    fn single_polynomial_complexes_coincide(seed in any::<u64>()) {
        let mut r = rng(seed);
        let count = r.gen_range(3..=8);
        let pts = random_polygon(&mut r, count);
        let f = polygon_system(&mut r, &pts);
        let h = hypersurface_complex(&f).unwrap();
        let c = ci_complex(&TropicalSystem::new(2, vec![f]).unwrap()).unwrap();
        prop_assert_eq!(&h.counts, &c.counts);
        let key = |p: &trop_ci::patchwork::PatchworkPiece| (p.parts.clone(), p.dim, p.copies.clone());
        let hs: BTreeSet<_> = h.pieces.iter().map(key).collect();
        let cs: BTreeSet<_> = c.pieces.iter().map(key).collect();
        prop_assert_eq!(hs, cs);
    }

    #[test]
    fn signature_paths_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pts = some_polytope(&mut r);
        let n = pts[0].len();
        let a = ehrhart(&LatticePolytope::from_points(&pts).unwrap()).unwrap();
        let sigma = sigma_hypersurface(&a).unwrap();
        prop_assert_eq!(phi_polynomial(&a).unwrap().eval(&rat(-1, 1)), rat_int(sigma.clone()));
        prop_assert_eq!(sigma_complete_intersection(&[pts.clone()], n).unwrap(), sigma.clone());
        if n == 2 {
            prop_assert_eq!(rat_int(sigma), -a.coefficients[1].clone() * rat_int(2));
        }
    }

    #[test]
    fn system_files_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=3usize);
        let supports: Vec<Points> = (0..k).map(|_| small_supports(&mut r, 2)).collect();
        let sys = random_system(&mut r, &supports, 50);
        let file = SystemFile::from_system(&sys).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let back = SystemFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(SystemFile::from_system(&back.to_system().unwrap()).unwrap(), file);
    }
}

#[test]
fn signs_do_not_enter_the_signature() {
    let pts = dilated_simplex(2, 2);
    let mut r = rng(9);
    let f = polygon_system(&mut r, &pts);
    let flipped: Vec<Sign> = f.signs().unwrap().into_iter().map(Sign::flip).collect();
    let g = polynomial(&pts, &f.lifts(), Some(&flipped));
    assert_eq!(
        euler_torus(&hypersurface_complex(&f).unwrap()),
        euler_torus(&hypersurface_complex(&g).unwrap())
    );
}
