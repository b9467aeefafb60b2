//! Random validated filtrations and polynomials for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::derivations::derivation_space;
use crate::functional::{Condition, LinearFunctional};
use crate::poly::{Monomial, Point, Polynomial, TermOrder};
use crate::sagbi::{ConditionFiltration, FiltrationBuilder};
use crate::scalar::Field;

/// Shape of the random instances.
#[derive(Clone, Debug)]
pub struct RandomShape {
    pub nvars: usize,
    pub levels: usize,
    /// number of candidate points
    pub pool: usize,
    /// coordinates are drawn from `-range..=range`
    pub range: i64,
    pub order: TermOrder,
}

impl RandomShape {
    pub fn new(nvars: usize, levels: usize) -> Self {
        RandomShape { nvars, levels, pool: 3, range: 2, order: TermOrder::DegRevLex }
    }
}

pub fn random_point<F: Field, R: Rng>(rng: &mut R, n: usize, range: i64) -> Point<F> {
    Point::new((0..n).map(|_| F::from_int(rng.gen_range(-range..=range))).collect())
}

fn nonzero_point<F: Field, R: Rng>(rng: &mut R, n: usize, range: i64) -> Point<F> {
    loop {
        let p = random_point(rng, n, range.max(1));
        if !p.is_zero() {
            return p;
        }
    }
}

fn point_pool<F: Field, R: Rng>(rng: &mut R, shape: &RandomShape) -> Vec<Point<F>> {
    let mut pool: Vec<Point<F>> = Vec::new();
    while pool.len() < shape.pool.max(2) {
        let p = random_point(rng, shape.nvars, shape.range);
        if !pool.contains(&p) {
            pool.push(p);
        }
    }
    pool
}

/// A proposal for the next level of `b`: a character difference between pool
/// points, a first-order directional derivative, or a random combination of
/// low-order derivations of the current algebra.
pub fn propose_condition<F: Field, R: Rng>(
    rng: &mut R,
    b: &FiltrationBuilder<F>,
    pool: &[Point<F>],
    shape: &RandomShape,
) -> Option<Condition<F>> {
    let n = shape.nvars;
    let p = pool.choose(rng).unwrap();
    match rng.gen_range(0..3) {
        0 => {
            let q = pool.choose(rng).unwrap();
            (p != q).then(|| Condition::character_difference(p, q, F::one()).unwrap())
        }
        1 => {
            let u = nonzero_point(rng, n, shape.range);
            let l = LinearFunctional::directional(p, &[u], F::one()).ok()?;
            Condition::derivation(p, l).ok()
        }
        _ => {
            let f: ConditionFiltration<F> = b.clone().finish();
            let ds = derivation_space(&f, p).ok()?;
            let low: Vec<&LinearFunctional<F>> = ds.basis.iter().take(2).collect();
            let mut l = LinearFunctional::zero(n);
            for d in low {
                let c = F::from_int(rng.gen_range(-2..=2));
                l = l.add(&d.scale(&c)).ok()?;
            }
            Condition::derivation(p, l).ok()
        }
    }
}

/// A validated filtration with exactly `shape.levels` levels, built by
/// keeping every proposal the builder accepts. Returns `None` if 40 proposals
/// per level are not enough.
pub fn random_filtration<F: Field, R: Rng>(rng: &mut R, shape: &RandomShape) -> Option<ConditionFiltration<F>> {
    let pool = point_pool(rng, shape);
    let mut b = FiltrationBuilder::new(shape.nvars, shape.order);
    for _ in 0..shape.levels {
        let mut placed = false;
        for _ in 0..40 {
            if let Some(c) = propose_condition(rng, &b, &pool, shape) {
                if b.push(c).is_ok() {
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            return None;
        }
    }
    Some(b.finish())
}

/// Random polynomial with at most `terms` terms of degree `≤ deg` and small
/// integer coefficients.
pub fn random_polynomial<F: Field, R: Rng>(rng: &mut R, n: usize, deg: u32, terms: usize) -> Polynomial<F> {
    let monos = Monomial::all_up_to_degree(n, deg);
    Polynomial::from_terms(
        n,
        (0..terms).map(|_| (monos.choose(rng).unwrap().clone(), F::from_int(rng.gen_range(-5..=5)))),
    )
}
