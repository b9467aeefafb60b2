use crate::poly::Monomial;
use crate::scalar::Field;

use super::basis::SagbiBasis;
use super::filtration::ConditionFiltration;
use super::semigroup::LeadSemigroup;

/// Monomials outside the leading semigroup of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimReport {
    pub codim: usize,
    /// ascending by degree, then by degrevlex
    pub missing: Vec<Monomial>,
    /// `1 + max deg(missing)`, or 0 when nothing is missing
    pub conductor: u32,
}

impl CodimReport {
    fn from_missing(missing: Vec<Monomial>) -> Self {
        let conductor = missing.iter().map(|m| m.degree() + 1).max().unwrap_or(0);
        CodimReport { codim: missing.len(), missing, conductor }
    }
}

/// Codimension of the final algebra of a validated filtration.
///
/// The filtration certifies that exactly `m` monomials are missing, so the
/// degree scan stops as soon as it has found `m` of them.
pub fn codimension<F: Field>(f: &ConditionFiltration<F>) -> CodimReport {
    let m = f.len();
    let n = f.nvars();
    let mut sg = f.algebra().semigroup();
    let mut missing = Vec::new();
    let mut d = 0;
    while missing.len() < m {
        // generous safety net; a validated filtration stops far earlier
        assert!(d <= 8 * m as u32 + 16, "degree scan did not find {m} gaps");
        for mono in Monomial::all_of_degree(n, d).into_iter().rev() {
            if !sg.contains(&mono) {
                missing.push(mono);
            }
        }
        d += 1;
    }
    assert_eq!(missing.len(), m, "more gaps than levels");
    CodimReport::from_missing(missing)
}

/// Result of a degree scan over a leading semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapScan {
    /// Every monomial of degree `d..2d` lies in the semigroup for some
    /// `d ≥ 1`, hence all monomials of degree `≥ d` do.
    Complete { missing: Vec<Monomial>, conductor: u32 },
    /// No certificate up to `cap`; at least `missing.len()` gaps.
    AtLeast { missing: Vec<Monomial>, cap: u32 },
}

pub(crate) fn scan_semigroup(n: usize, sg: &mut LeadSemigroup, cap: u32) -> GapScan {
    let mut missing = Vec::new();
    let mut run_start = 1;
    for d in 1..=cap {
        let before = missing.len();
        for mono in Monomial::all_of_degree(n, d).into_iter().rev() {
            if !sg.contains(&mono) {
                missing.push(mono);
            }
        }
        if missing.len() > before {
            run_start = d + 1;
        } else if d + 1 >= 2 * run_start {
            let conductor = missing.iter().map(|m: &Monomial| m.degree() + 1).max().unwrap_or(0);
            return GapScan::Complete { missing, conductor };
        }
    }
    GapScan::AtLeast { missing, cap }
}

/// Codimension of the algebra of a SAGBI basis without a filtration, scanning
/// degrees up to `cap`.
pub fn codimension_capped<F: Field>(g: &SagbiBasis<F>, cap: u32) -> GapScan {
    scan_semigroup(g.nvars(), &mut g.semigroup(), cap)
}

impl GapScan {
    pub fn report(&self) -> Option<CodimReport> {
        match self {
            GapScan::Complete { missing, .. } => Some(CodimReport::from_missing(missing.clone())),
            GapScan::AtLeast { .. } => None,
        }
    }
}
