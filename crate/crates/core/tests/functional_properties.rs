//! Invariants of linear functionals and the Leibniz test.

mod common;

use common::*;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, max_global_rejects: 50 * cases, ..ProptestConfig::default() }
}
use subalg::functional::{check_leibniz, express_in_span, LinearFunctional};
use subalg::poly::{Monomial, PartialMultiset, Point, Polynomial};
use subalg::random::{random_filtration, random_point, random_polynomial, RandomShape};
use subalg::sagbi::leibniz_holds;
use subalg::Field;

fn random_functional(r: &mut rand_chacha::ChaCha8Rng, n: usize, atoms: usize) -> LinearFunctional<Q> {
    use rand::Rng;
    let mut l = LinearFunctional::zero(n);
    for _ in 0..atoms {
        let p = random_point::<Q, _>(r, n, 2);
        let order = r.gen_range(0..=2);
        let idx: Vec<usize> = (0..order).map(|_| r.gen_range(0..n)).collect();
        let a = LinearFunctional::partial_at(&p, PartialMultiset::from_indices(n, &idx), Q::from_int(r.gen_range(-3..=3)));
        l = l.add(&a).unwrap();
    }
    l
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn apply_is_linear(seed in any::<u64>(), n in 1usize..=3, a in -4i64..=4, b in -4i64..=4) {
        let mut r = rng(seed);
        let l = random_functional(&mut r, n, 3);
        let f = random_polynomial::<Q, _>(&mut r, n, 4, 4);
        let g = random_polynomial::<Q, _>(&mut r, n, 4, 4);
        let (a, b) = (Q::from_int(a), Q::from_int(b));
        let lhs = l.apply(&(f.scale(&a) + g.scale(&b))).unwrap();
        let rhs = a * l.apply(&f).unwrap() + b * l.apply(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn character_differences_are_leibniz_on_the_full_ring(seed in any::<u64>(), n in 1usize..=2, d in 0u32..=3) {
        let mut r = rng(seed);
        let alpha = random_point::<Q, _>(&mut r, n, 3);
        let beta = random_point::<Q, _>(&mut r, n, 3);
        prop_assume!(alpha != beta);
        let l = chardiff(&alpha, &beta).functional;
        let span: Vec<Polynomial<Q>> =
            Monomial::all_up_to_degree(n, d).into_iter().map(|m| Polynomial::term(m, Q::from_int(1))).collect();
        prop_assert!(check_leibniz(&l, &alpha, &beta, &span).unwrap());
    }

    #[test]
    fn no_condition_is_both_a_derivation_and_a_difference(seed in any::<u64>()) {
        let (mut r, f) = instance(seed, 2).ok_or_else(|| TestCaseError::reject("generator gave up"))?;
        for (k, level) in f.levels().iter().enumerate() {
            let gens = level.algebra.gens();
            let l = &level.condition.functional;
            let (alpha, beta) = level.condition.kind.leibniz_points();
            prop_assert!(leibniz_holds(gens, l, alpha, beta).unwrap());
            if alpha != beta {
                for p in [alpha, beta] {
                    prop_assert!(!leibniz_holds(gens, l, p, p).unwrap(), "level {k} is also a derivation at {p:?}");
                }
            } else {
                // points the level algebra does not separate from α give the same module
                let other: Point<Q> = random_point(&mut r, f.nvars(), 3);
                let values = |p: &Point<Q>| level.algebra.evaluate_all(p).unwrap();
                if values(&other) == values(alpha) {
                    continue;
                }
                prop_assert!(!leibniz_holds(gens, l, alpha, &other).unwrap());
                prop_assert!(!leibniz_holds(gens, l, &other, alpha).unwrap());
            }
        }
    }

    #[test]
    fn express_in_span_reproduces_the_functional(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = rng(seed);
        let basis: Vec<LinearFunctional<Q>> = (0..3).map(|_| random_functional(&mut r, n, 2)).collect();
        let coeffs = [Q::from_int(2), Q::from_int(-1), Q::new(1.into(), 3.into())];
        let mut l = LinearFunctional::zero(n);
        for (b, c) in basis.iter().zip(&coeffs) {
            l = l.add(&b.scale(c)).unwrap();
        }
        let test: Vec<Polynomial<Q>> =
            Monomial::all_up_to_degree(n, 3).into_iter().map(|m| Polynomial::term(m, Q::from_int(1))).collect();
        let c = express_in_span(&l, &basis, &test).unwrap();
        prop_assert!(c.is_some());
        let c = c.unwrap();
        for t in &test {
            let mut v = Q::from_int(0);
            for (b, ci) in basis.iter().zip(&c) {
                v = v + ci.clone() * b.apply(t).unwrap();
            }
            prop_assert_eq!(v, l.apply(t).unwrap());
        }
    }
}

#[test]
fn random_filtrations_use_every_kind_of_condition() {
    let mut r = rng(3);
    let (mut diffs, mut derivs) = (0, 0);
    for _ in 0..30 {
        if let Some(f) = random_filtration::<Q, _>(&mut r, &RandomShape::new(2, 2)) {
            for c in f.conditions() {
                let (a, b) = c.kind.leibniz_points();
                if a == b {
                    derivs += 1;
                } else {
                    diffs += 1;
                }
            }
        }
    }
    assert!(diffs > 0 && derivs > 0);
}
