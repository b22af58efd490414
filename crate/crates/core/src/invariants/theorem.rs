use num_bigint::BigInt;

use super::signature::{
    euler_formula_hypersurface, nb_k_formula, phi_polynomial, sigma_compactified, sigma_complete_intersection_terms,
    sigma_hypersurface,
};
use super::InvariantError;
use crate::cayley::{is_nondegenerate_system, TropicalSystem};
use crate::exact_math::{ipow, rat, Rat};
use crate::patchwork::{ci_complex, euler_compactified, euler_torus, nb_k_direct, PatchworkError};
use crate::polytope::{ehrhart, psi_coefficients, regular_subdivision};
use crate::tropical::TropicalPolynomial;

/// Intermediate data of the single-polynomial case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceTables {
    pub ehrhart: Vec<Rat>,
    pub psi: Vec<BigInt>,
    pub phi: Vec<Rat>,
    pub phi_at_minus_one: Rat,
    pub sigma_formula: BigInt,
    pub euler_formula: BigInt,
    pub nb_direct: Vec<BigInt>,
    pub nb_formula: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTheoremReport {
    /// Euler characteristic of the patchworked real part in the torus.
    pub chi: BigInt,
    /// Mixed signature of the complex complete intersection in the torus.
    pub sigma: BigInt,
    pub cell_counts: Vec<BigInt>,
    /// `σ̃(X_I)` for each nonempty `I`.
    pub subsets: Vec<(Vec<usize>, BigInt)>,
    pub hypersurface: Option<HypersurfaceTables>,
    /// `(χ, σ̃)` of the closures in the toric variety.
    pub compactified: Option<(BigInt, BigInt)>,
    pub failures: Vec<String>,
}

impl MainTheoremReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn hypersurface_tables(f: &TropicalPolynomial) -> Result<HypersurfaceTables, InvariantError> {
    let a = ehrhart(&f.newton_polytope())?;
    let phi = phi_polynomial(&a)?;
    let sub_div = regular_subdivision(&f.exponents(), &f.lifts())?;
    Ok(HypersurfaceTables {
        psi: psi_coefficients(&a),
        phi_at_minus_one: phi.eval(&rat(-1, 1)),
        phi: phi.coefficients,
        sigma_formula: sigma_hypersurface(&a)?,
        euler_formula: euler_formula_hypersurface(&a)?,
        nb_direct: nb_k_direct(&sub_div)?,
        nb_formula: nb_k_formula(&a)?,
        ehrhart: a.coefficients,
    })
}

/// Compares the Euler characteristic of the patchworked real complete
/// intersection with the mixed signature computed from the Newton polytopes
/// alone, in the torus and optionally after compactification.
pub fn verify_main_theorem(sys: &TropicalSystem, compact: bool) -> Result<MainTheoremReport, InvariantError> {
    if !is_nondegenerate_system(sys)? {
        return Err(PatchworkError::Degenerate.into());
    }
    let n = sys.ambient_dim();
    let k = sys.len();
    let complex = ci_complex(sys)?;
    let chi = euler_torus(&complex);
    let subsets = sigma_complete_intersection_terms(&sys.supports(), n)?;
    let sum: BigInt = subsets.iter().map(|(_, s)| s.clone()).sum();
    let sigma = ipow(-2, n as u32) + if k % 2 == 1 { -sum } else { sum };
    let mut failures = Vec::new();
    if chi != sigma {
        failures.push(format!("torus: χ = {chi} but σ̃ = {sigma}"));
    }
    let hypersurface = if k == 1 {
        let t = hypersurface_tables(&sys.polys()[0])?;
        if t.sigma_formula != sigma {
            failures.push(format!("σ̃ from Ehrhart coefficients is {} but {} from the subset sum", t.sigma_formula, sigma));
        }
        if t.phi_at_minus_one != Rat::from_integer(t.sigma_formula.clone()) {
            failures.push(format!("φ(-1) = {} differs from σ̃ = {}", t.phi_at_minus_one, t.sigma_formula));
        }
        if t.euler_formula != chi {
            failures.push(format!("closed Euler formula gives {} but the cell count gives {}", t.euler_formula, chi));
        }
        if t.nb_direct != t.nb_formula {
            failures.push(format!("interior simplices {:?} differ from formula {:?}", t.nb_direct, t.nb_formula));
        }
        Some(t)
    } else {
        None
    };
    let compactified = if compact {
        let c = euler_compactified(sys)?;
        let s = sigma_compactified(&sys.supports(), n)?;
        if c != s {
            failures.push(format!("compactified: χ = {c} but σ̃ = {s}"));
        }
        Some((c, s))
    } else {
        None
    };
    Ok(MainTheoremReport { chi, sigma, cell_counts: complex.counts, subsets, hypersurface, compactified, failures })
}
