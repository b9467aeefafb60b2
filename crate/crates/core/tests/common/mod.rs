#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subalg::functional::{Condition, LinearFunctional};
use subalg::poly::{parse_polynomial, PartialMultiset, Point, Polynomial, TermOrder};
use subalg::qn::general_leibniz;
use subalg::random::{random_filtration, random_point, random_polynomial, RandomShape};
use subalg::sagbi::{codimension, in_span, ConditionFiltration, FiltrationBuilder};
use subalg::{cotangent_dimension, derivation_space, spectrum, Field, Rational};

pub type Q = Rational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn pt(c: &[i64]) -> Point<Q> {
    Point::from_ints(c)
}

pub fn poly(s: &str, n: usize) -> Polynomial<Q> {
    parse_polynomial(s, n).unwrap()
}

pub fn partial(p: &Point<Q>, idx: &[usize], c: i64) -> LinearFunctional<Q> {
    LinearFunctional::partial_at(p, PartialMultiset::from_indices(p.nvars(), idx), Q::from_int(c))
}

pub fn derivation(p: &Point<Q>, l: LinearFunctional<Q>) -> Condition<Q> {
    Condition::derivation(p, l).unwrap()
}

pub fn chardiff(a: &Point<Q>, b: &Point<Q>) -> Condition<Q> {
    Condition::character_difference(a, b, Q::from_int(1)).unwrap()
}

pub fn a1_conditions() -> Vec<Condition<Q>> {
    let o = pt(&[0]);
    vec![derivation(&o, partial(&o, &[0], 1)), derivation(&o, partial(&o, &[0, 0], 1))]
}

pub fn a2_conditions() -> Vec<Condition<Q>> {
    vec![chardiff(&pt(&[1]), &pt(&[-1]))]
}

pub fn a3_conditions() -> Vec<Condition<Q>> {
    let p = pt(&[0, 1]);
    vec![derivation(&p, partial(&p, &[0], 1)), derivation(&p, partial(&p, &[0, 1], 1))]
}

pub const A3_GENERATORS: [&str; 4] = ["x2", "x1^2", "x1*x2^2 - 2*x1*x2 + x1", "x1^3"];

pub fn a4_conditions() -> Vec<Condition<Q>> {
    let a = pt(&[1, 0, -1]);
    let b = pt(&[3, 2, 5]);
    let c = pt(&[1, -3, 2]);
    let mixed = partial(&b, &[0], 1).add(&partial(&c, &[1], -3)).unwrap();
    vec![derivation(&a, partial(&a, &[2], 1)), chardiff(&b, &c), derivation(&b, mixed)]
}

pub const A4_GENERATORS: [&str; 16] = [
    "y3^2 - 81/11*y1 - 27/11*y2 + 2*y3",
    "y2*y3 - 18/11*y1 - 28/11*y2",
    "y1*y3 - 5*y1 - y3",
    "y2^2 - 75/11*y1 + 41/11*y2",
    "y1*y2 - 2*y1 - y2",
    "y1^2 - 54/11*y1 + 4/11*y2",
    "y3^3 - 324/11*y1 - 108/11*y2 - 3*y3",
    "y2*y3^2 - 126/11*y1 - 86/11*y2",
    "y1*y3^2 - 356/11*y1 - 27/11*y2 + 2*y3",
    "y2^2*y3 - 186/11*y1 + 70/11*y2",
    "y1*y2*y3 - 128/11*y1 - 28/11*y2",
    "y1^2*y3 - 270/11*y1 + 20/11*y2 - y3",
    "y2^3 + 300/11*y1 - 197/11*y2",
    "y1*y2^2 - 119/11*y1 + 41/11*y2",
    "y1^2*y2 - 108/11*y1 - 3/11*y2",
    "y1^3 - 213/11*y1 + 28/11*y2",
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random validated filtration with `n ≤ max_n` variables and `≤ 3` levels
/// drawn from `seed`; `None` when the generator gave up.
pub fn instance(seed: u64, max_n: usize) -> Option<(ChaCha8Rng, ConditionFiltration<Q>)> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    let m = r.gen_range(0..=3);
    let f = random_filtration(&mut r, &RandomShape::new(n, m))?;
    Some((r, f))
}

/// A point of the spectrum when there is one, sometimes a random point.
pub fn some_point(r: &mut ChaCha8Rng, f: &ConditionFiltration<Q>) -> Point<Q> {
    let sp = spectrum(f);
    if sp.is_empty() || r.gen_bool(0.2) {
        random_point(r, f.nvars(), 3)
    } else {
        sp.points.choose(r).unwrap().clone()
    }
}

pub type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Subduction terminates, the remainder's leading monomial is outside the
/// leading semigroup, and `f − r` satisfies every condition.
pub fn prop_subduction_contract(seed: u64) -> Option<Outcome> {
    let (mut r, f) = instance(seed, 2)?;
    let g = random_polynomial::<Q, _>(&mut r, f.nvars(), 6, 5);
    let s = f.algebra().subduce(&g).map_err(|e| e.to_string());
    Some(s.and_then(|s| {
        if let Some(m) = s.remainder.lm(f.order()) {
            ensure(!f.algebra().semigroup().contains(m), || format!("remainder lm {m} in semigroup"))?;
        }
        let reduced = &g - &s.remainder;
        ensure(f.satisfies_conditions(&reduced).unwrap(), || format!("{g} minus remainder is outside A"))
    }))
}

/// Every level adds exactly the leading monomial it kills to the gaps.
pub fn prop_drop_by_one(seed: u64) -> Option<Outcome> {
    let (_, f) = instance(seed, 2)?;
    let mut prev = codimension(&f.prefix(0)).missing;
    for k in 1..=f.len() {
        let next = codimension(&f.prefix(k)).missing;
        let kept = prev.iter().all(|m| next.contains(m));
        if !kept || next.len() != prev.len() + 1 {
            return Some(Err(format!("level {k}: gaps {prev:?} -> {next:?}")));
        }
        prev = next;
    }
    Some(Ok(()))
}

/// A condition whose points avoid γ's cluster leaves `dim D_γ` unchanged.
pub fn prop_other_clusters(seed: u64) -> Option<Outcome> {
    let (mut r, f) = instance(seed, 2)?;
    let sp = spectrum(&f);
    let gamma = some_point(&mut r, &f);
    let cluster: Vec<Point<Q>> = match sp.cluster_of(&gamma) {
        Some(k) => sp.cluster_points(k),
        None => vec![gamma.clone()],
    };
    let n = f.nvars();
    let a = random_point::<Q, _>(&mut r, n, 4);
    let b = random_point::<Q, _>(&mut r, n, 4);
    if a == b || cluster.contains(&a) || cluster.contains(&b) {
        return None;
    }
    let cond = if r.gen_bool(0.5) {
        chardiff(&a, &b)
    } else {
        let u = random_point::<Q, _>(&mut r, n, 2);
        if u.is_zero() {
            return None;
        }
        derivation(&a, LinearFunctional::directional(&a, &[u], Q::from_int(1)).unwrap())
    };
    // the condition must not connect to γ through a's or b's cluster either
    let g = f.algebra();
    let gv = g.evaluate_all(&gamma).unwrap();
    if cond.functional.points().iter().any(|p| g.evaluate_all(p).unwrap() == gv) {
        return None;
    }
    let mut b2 = FiltrationBuilder::new(n, f.order());
    for c in f.conditions() {
        b2.push(c.clone()).unwrap();
    }
    b2.push(cond).ok()?;
    let f2 = b2.finish();
    let before = derivation_space(&f, &gamma).unwrap().dim();
    let after = derivation_space(&f2, &gamma).unwrap().dim();
    Some(ensure(before == after, || format!("dim D_γ changed {before} -> {after} at {gamma}")))
}

/// Gluing two inequivalent points adds their derivation dimensions.
pub fn prop_connect_clusters(seed: u64) -> Option<Outcome> {
    let (mut r, f) = instance(seed, 2)?;
    let alpha = some_point(&mut r, &f);
    let beta = some_point(&mut r, &f);
    if subalg::are_equivalent(&alpha, &beta, f.algebra()).unwrap() {
        return None;
    }
    let mut b = FiltrationBuilder::new(f.nvars(), f.order());
    for c in f.conditions() {
        b.push(c.clone()).unwrap();
    }
    if let Err(e) = b.push(chardiff(&alpha, &beta)) {
        return Some(Err(format!("gluing {alpha} and {beta} rejected: {e}")));
    }
    let f2 = b.finish();
    let da = derivation_space(&f, &alpha).unwrap().dim();
    let db = derivation_space(&f, &beta).unwrap().dim();
    let d2 = derivation_space(&f2, &alpha).unwrap().dim();
    Some(ensure(d2 == da + db, || format!("{d2} != {da} + {db} gluing {alpha} and {beta}")))
}

/// `dim D_α(A)` is bounded by the number of generators and equals the
/// cotangent dimension.
pub fn prop_derivation_bound(seed: u64) -> Option<Outcome> {
    let (mut r, f) = instance(seed, 3)?;
    let alpha = some_point(&mut r, &f);
    let d = derivation_space(&f, &alpha).unwrap().dim();
    let c = cotangent_dimension(&f, &alpha).unwrap();
    let m = f.algebra().len();
    Some(ensure(d <= m && d == c, || format!("dim {d}, cotangent {c}, generators {m} at {alpha}")))
}

/// The sub-multiset expansion of `∂^U(fg)` matches direct differentiation.
pub fn prop_general_leibniz(seed: u64) -> Option<Outcome> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=3);
    let f = random_polynomial::<Q, _>(&mut r, n, 5, 4);
    let g = random_polynomial::<Q, _>(&mut r, n, 5, 4);
    let len = r.gen_range(0..=4);
    let idx: Vec<usize> = (0..len).map(|_| r.gen_range(0..n)).collect();
    let u = PartialMultiset::from_indices(n, &idx);
    let lhs = general_leibniz(&f, &g, &u).unwrap();
    let rhs = (&f * &g).derive(&u).unwrap();
    Some(ensure(lhs == rhs, || format!("expansion differs for U = {u}")))
}

fn count_classes(points: &[Point<Q>], g: &subalg::SagbiBasis<Q>) -> usize {
    let mut values: Vec<Vec<Q>> = points.iter().map(|p| g.evaluate_all(p).unwrap()).collect();
    values.sort();
    values.dedup();
    values.len()
}

/// A character-difference level merges exactly two classes among the
/// spectrum points.
pub fn prop_cluster_merge(seed: u64) -> Option<Outcome> {
    let (_, f) = instance(seed, 2)?;
    let pts = spectrum(&f).points;
    for (k, c) in f.conditions().enumerate() {
        if c.kind.is_derivation() {
            continue;
        }
        let before = count_classes(&pts, f.level_algebra(k));
        let after = count_classes(&pts, f.level_algebra(k + 1));
        if after + 1 != before {
            return Some(Err(format!("level {k}: {before} classes -> {after}")));
        }
    }
    Some(Ok(()))
}

/// Subduction membership agrees with linear algebra on the conditions in
/// degrees `≤ conductor + 2`.
pub fn prop_membership_oracle(seed: u64) -> Option<Outcome> {
    let (mut r, f) = instance(seed, 2)?;
    let d = codimension(&f).conductor + 2;
    let slice = f.truncated_basis(d).unwrap();
    let g = if r.gen_bool(0.5) {
        // a random element of the algebra
        slice.iter().fold(Polynomial::zero(f.nvars()), |acc, b| acc + b.scale(&Q::from_int(r.gen_range(-3..=3))))
    } else {
        random_polynomial::<Q, _>(&mut r, f.nvars(), d, 4)
    };
    let by_subduction = f.algebra().is_member(&g).unwrap();
    let by_algebra = in_span(f.nvars(), &slice, &g, d);
    Some(ensure(by_subduction == by_algebra, || format!("{g}: subduction {by_subduction}, linear algebra {by_algebra}")))
}

/// Runs `prop` on seeds from `base` until `count` instances were produced.
pub fn run_seeds(base: u64, count: usize, prop: fn(u64) -> Option<Outcome>) -> Result<usize, String> {
    let mut done = 0;
    let mut seed = base;
    while done < count {
        if seed - base > 50 * count as u64 {
            return Err(format!("only {done} instances in {} seeds", seed - base));
        }
        if let Some(o) = prop(seed) {
            o.map_err(|e| format!("seed {seed}: {e}"))?;
            done += 1;
        }
        seed += 1;
    }
    Ok(done)
}

pub fn default_order() -> TermOrder {
    TermOrder::DegRevLex
}
