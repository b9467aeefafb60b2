//! α-derivation spaces and cotangent dimensions.
//!
//! Both computations work in a jet space at the spectrum. If every condition
//! has order `< N` then `K + Π_N(Sp)·K[x] ⊆ A`, so `m_α(A)²` contains every
//! polynomial whose `(2N−1)`-jets at the spectrum vanish, and the jet images
//! of `m_α(A)` and `m_α(A)²` determine the cotangent space exactly.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::functional::{DerivativeAtom, LinearFunctional};
use crate::jet::JetSpace;
use crate::linalg::{EchelonBasis, Matrix};
use crate::poly::{Monomial, PartialMultiset, Point};
use crate::sagbi::ConditionFiltration;
use crate::scalar::Field;
use crate::spectrum::{ansatz_bound, spectrum};

/// A basis of `D_α(A)` written with partial evaluations at the cluster of `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace<F> {
    /// lowest point of the cluster, or `α` itself off the spectrum
    pub point: Point<F>,
    pub cluster: Vec<Point<F>>,
    /// ordered by increasing leading order
    pub basis: Vec<LinearFunctional<F>>,
    /// `2N`: candidates have order `1..2N`
    pub ansatz_order: u32,
}

impl<F: Field> DerivationSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The power `N` used for jets: the smaller of [`ansatz_bound`] and one more
/// than the highest derivative order among the conditions. Both guarantee
/// `K + Π_N(Sp)·K[x] ⊆ A`.
pub fn working_power<F: Field>(f: &ConditionFiltration<F>) -> u32 {
    ansatz_bound(f).min(f.max_order() + 1)
}

fn check_point<F: Field>(f: &ConditionFiltration<F>, alpha: &Point<F>) -> Result<()> {
    if alpha.nvars() != f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), found: alpha.nvars() });
    }
    Ok(())
}

/// Basis of the α-derivations of the final algebra of `f`.
///
/// Off the spectrum only first-order partials at `α` are candidates; on it,
/// every partial of order `1..2N` at every point of α's cluster.
pub fn derivation_space<F: Field>(f: &ConditionFiltration<F>, alpha: &Point<F>) -> Result<DerivationSpace<F>> {
    check_point(f, alpha)?;
    let n = f.nvars();
    let sp = spectrum(f);
    let big_n = working_power(f);
    let (cluster, order) = match sp.cluster_of(alpha) {
        Some(k) => (sp.cluster_points(k), 2 * big_n - 1),
        None => (vec![alpha.clone()], 1),
    };
    let pts: Vec<(Point<F>, u32)> = cluster.iter().map(|p| (p.clone(), order)).collect();
    let js = JetSpace::new(n, &pts)?;
    let gens = f.algebra().gens();
    let values = f.algebra().evaluate_all(alpha)?;
    let (ideal, square) = js.maximal_ideal_images(gens, &values)?;

    let mut cands: Vec<(usize, &Monomial)> = js.coordinates();
    cands.sort_by_key(|&(k, m)| (Reverse(m.degree()), k, Reverse(m.clone())));
    let cols: Vec<usize> = cands.iter().map(|&(k, m)| js.column(k, m)).collect();
    let weights: Vec<F> =
        cands.iter().map(|(_, m)| PartialMultiset::from_counts(m.exponents().to_vec()).factorial_weight()).collect();
    let annihilator = |space: Vec<Vec<F>>| -> Vec<Vec<F>> {
        let rows: Vec<Vec<F>> = space
            .iter()
            .map(|w| cols.iter().zip(&weights).map(|(&c, wt)| w[c].mul_ref(wt)).collect())
            .collect();
        if rows.is_empty() {
            return Matrix::<F>::identity(cands.len()).rows().to_vec();
        }
        Matrix::from_rows(cands.len(), rows).kernel()
    };
    let on_square = annihilator(square.vectors());
    let on_ideal = annihilator(ideal.vectors());

    // zero-on-A functionals take the high-order pivots, so the kept rows are
    // written with the lowest orders possible
    let mut e = EchelonBasis::new(cands.len());
    for v in on_ideal {
        e.insert(v);
    }
    let mut kept = BTreeSet::new();
    for v in on_square {
        if let Some(p) = e.insert_pivot(v) {
            kept.insert(p);
        }
    }
    let mut basis: Vec<LinearFunctional<F>> = e
        .reduced_rows()
        .into_iter()
        .filter(|(p, _)| kept.contains(p))
        .map(|(_, v)| {
            let atoms = cands.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(&(k, m), coeff)| DerivativeAtom {
                coeff,
                point: js.block_point(k).clone(),
                partials: PartialMultiset::from_counts(m.exponents().to_vec()),
            });
            LinearFunctional::new(n, atoms)
        })
        .collect::<Result<_>>()?;
    basis.reverse();
    Ok(DerivationSpace { point: cluster[0].clone(), cluster, basis, ansatz_order: 2 * big_n })
}

/// `dim m_α(A)/m_α(A)²` for the final algebra of `f`.
pub fn cotangent_dimension<F: Field>(f: &ConditionFiltration<F>, alpha: &Point<F>) -> Result<usize> {
    check_point(f, alpha)?;
    let sp = spectrum(f);
    let order = 2 * working_power(f) - 1;
    let mut pts: Vec<(Point<F>, u32)> = sp.points.iter().map(|p| (p.clone(), order)).collect();
    if !sp.contains(alpha) {
        pts.push((alpha.clone(), 1));
    }
    let js = JetSpace::new(f.nvars(), &pts)?;
    let values = f.algebra().evaluate_all(alpha)?;
    let (ideal, square) = js.maximal_ideal_images(f.algebra().gens(), &values)?;
    Ok(ideal.dim() - square.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::Condition;
    use crate::poly::TermOrder;
    use crate::sagbi::{build_from_conditions, leibniz_holds};
    use crate::Rational;

    type Q = Rational;

    fn pt(c: &[i64]) -> Point<Q> {
        Point::from_ints(c)
    }

    fn partial(p: &Point<Q>, idx: &[usize]) -> LinearFunctional<Q> {
        LinearFunctional::partial_at(p, PartialMultiset::from_indices(p.nvars(), idx), Q::from_int(1))
    }

    fn a1() -> ConditionFiltration<Q> {
        let o = pt(&[0]);
        let conds = [
            Condition::derivation(&o, partial(&o, &[0])).unwrap(),
            Condition::derivation(&o, partial(&o, &[0, 0])).unwrap(),
        ];
        build_from_conditions(1, &conds, TermOrder::DegRevLex).unwrap()
    }

    #[test]
    fn full_ring_has_first_order_partials() {
        for n in 1..=3 {
            let f = build_from_conditions::<Q>(n, &[], TermOrder::DegRevLex).unwrap();
            let alpha = Point::new((0..n as i64).map(|i| Q::new((i + 2).into(), 3.into())).collect());
            let d = derivation_space(&f, &alpha).unwrap();
            assert_eq!(d.dim(), n);
            assert!(d.basis.iter().all(|l| l.max_order() == 1 && l.atoms().len() == 1));
            assert_eq!(cotangent_dimension(&f, &alpha).unwrap(), n);
        }
    }

    #[test]
    fn a1_derivations_are_orders_three_to_five() {
        let f = a1();
        let o = pt(&[0]);
        let d = derivation_space(&f, &o).unwrap();
        let expect: Vec<_> = [&[0, 0, 0][..], &[0, 0, 0, 0], &[0, 0, 0, 0, 0]].iter().map(|k| partial(&o, k)).collect();
        assert_eq!(d.basis, expect);
        assert_eq!(d.ansatz_order, 6);
        assert_eq!(cotangent_dimension(&f, &o).unwrap(), 3);
        for l in &d.basis {
            assert!(leibniz_holds(f.algebra().gens(), l, &o, &o).unwrap());
        }
        // off the spectrum
        assert_eq!(derivation_space(&f, &pt(&[5])).unwrap().dim(), 1);
        assert_eq!(cotangent_dimension(&f, &pt(&[5])).unwrap(), 1);
    }

    #[test]
    fn character_difference_doubles_dimension() {
        let a = pt(&[1, 0]);
        let b = pt(&[0, 2]);
        let c = Condition::character_difference(&a, &b, Q::from_int(1)).unwrap();
        let f = build_from_conditions(2, &[c], TermOrder::DegRevLex).unwrap();
        let d = derivation_space(&f, &a).unwrap();
        assert_eq!(d.dim(), 4);
        assert_eq!(d.point, b);
        assert_eq!(d, derivation_space(&f, &b).unwrap());
        assert!(d.basis.iter().all(|l| l.max_order() == 1));
        assert_eq!(cotangent_dimension(&f, &a).unwrap(), 4);
        for l in &d.basis {
            assert!(leibniz_holds(f.algebra().gens(), l, &a, &a).unwrap());
        }
    }

    #[test]
    fn wrong_dimension_is_an_error() {
        assert!(derivation_space(&a1(), &pt(&[0, 0])).is_err());
        assert!(cotangent_dimension(&a1(), &pt(&[0, 0])).is_err());
    }
}
