//! Subalgebra spectrum and clusters.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::functional::ConditionKind;
use crate::poly::Point;
use crate::sagbi::{ConditionFiltration, SagbiBasis};
use crate::scalar::Field;

/// Points at which the conditions of a filtration look, grouped into classes
/// the algebra cannot separate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum<F> {
    /// sorted lexicographically
    pub points: Vec<Point<F>>,
    /// indices into `points`; each cluster ascending, clusters ordered by
    /// their first point
    pub clusters: Vec<Vec<usize>>,
}

impl<F: Field> Spectrum<F> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Index of the cluster containing `p`.
    pub fn cluster_of(&self, p: &Point<F>) -> Option<usize> {
        let i = self.points.binary_search(p).ok()?;
        self.clusters.iter().position(|c| c.contains(&i))
    }

    pub fn cluster_points(&self, k: usize) -> Vec<Point<F>> {
        self.clusters[k].iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Lowest point of cluster `k`.
    pub fn representative(&self, k: usize) -> &Point<F> {
        &self.points[self.clusters[k][0]]
    }
}

/// `g(α) = g(β)` for every generator `g`.
pub fn are_equivalent<F: Field>(alpha: &Point<F>, beta: &Point<F>, g: &SagbiBasis<F>) -> Result<bool> {
    if alpha == beta {
        return Ok(true);
    }
    for p in g.gens() {
        if p.evaluate(alpha)? != p.evaluate(beta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Spectrum of the final algebra of `f`, clustered by generator values.
///
/// Panics if a character-difference condition ends up with its two points in
/// different clusters, which a validated filtration rules out.
pub fn spectrum<F: Field>(f: &ConditionFiltration<F>) -> Spectrum<F> {
    let points: Vec<Point<F>> = f
        .conditions()
        .flat_map(|c| c.functional.points())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let g = f.algebra();
    let values: Vec<Vec<F>> =
        points.iter().map(|p| g.evaluate_all(p).expect("points have the right dimension")).collect();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..points.len() {
        match clusters.iter_mut().find(|c| values[c[0]] == values[i]) {
            Some(c) => c.push(i),
            None => clusters.push(vec![i]),
        }
    }
    let sp = Spectrum { points, clusters };
    for c in f.conditions() {
        if let ConditionKind::CharacterDifference { alpha, beta } = &c.kind {
            assert_eq!(sp.cluster_of(alpha), sp.cluster_of(beta), "character difference split across clusters");
        }
    }
    sp
}

/// `2^d` for `d` derivation levels: a power `N` with `K + Π_N(Sp)·K[x] ⊆ A`.
pub fn ansatz_bound<F: Field>(f: &ConditionFiltration<F>) -> u32 {
    let d = f.conditions().filter(|c| c.kind.is_derivation()).count() as u32;
    1 << d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{Condition, LinearFunctional};
    use crate::poly::{PartialMultiset, TermOrder};
    use crate::sagbi::build_from_conditions;
    use crate::Rational;

    type Q = Rational;

    fn pt(c: &[i64]) -> Point<Q> {
        Point::from_ints(c)
    }

    #[test]
    fn full_ring_has_empty_spectrum() {
        let f = build_from_conditions::<Q>(2, &[], TermOrder::DegRevLex).unwrap();
        let sp = spectrum(&f);
        assert!(sp.is_empty());
        assert!(sp.clusters.is_empty());
        assert_eq!(ansatz_bound(&f), 1);
    }

    #[test]
    fn character_difference_gives_one_cluster() {
        let c = Condition::character_difference(&pt(&[1]), &pt(&[-1]), Q::from_int(1)).unwrap();
        let f = build_from_conditions(1, &[c], TermOrder::DegRevLex).unwrap();
        let sp = spectrum(&f);
        assert_eq!(sp.points, vec![pt(&[-1]), pt(&[1])]);
        assert_eq!(sp.clusters, vec![vec![0, 1]]);
        assert!(are_equivalent(&pt(&[1]), &pt(&[-1]), f.algebra()).unwrap());
        assert!(!are_equivalent(&pt(&[1]), &pt(&[2]), f.algebra()).unwrap());
        assert_eq!(ansatz_bound(&f), 1);
    }

    #[test]
    fn derivation_levels_double_the_bound() {
        let o = pt(&[0]);
        let d = |k: &[usize]| {
            Condition::derivation(&o, LinearFunctional::partial_at(&o, PartialMultiset::from_indices(1, k), Q::from_int(1)))
                .unwrap()
        };
        let f = build_from_conditions(1, &[d(&[0]), d(&[0, 0])], TermOrder::DegRevLex).unwrap();
        assert_eq!(ansatz_bound(&f), 4);
        let sp = spectrum(&f);
        assert_eq!(sp.points, vec![o.clone()]);
        assert_eq!(sp.representative(0), &o);
    }
}
