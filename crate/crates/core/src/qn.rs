//! The algebras `Q'_N(S) = K ⊕ Π_N(S)·K[x]` and `Q_N(S)`, and desk-scale
//! checks of the statements relating them to derivation spaces.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::derivations::{cotangent_dimension, derivation_space};
use crate::error::{Error, Result};
use crate::functional::{express_in_span, Condition, LinearFunctional};
use crate::jet::JetSpace;
use crate::linalg::{dot, EchelonBasis};
use crate::poly::{Monomial, PartialMultiset, Point, Polynomial, TermOrder};
use crate::report::Report;
use crate::sagbi::{build_from_conditions, codimension, leibniz_holds, ConditionFiltration};
use crate::scalar::{binomial_u64, Field};
use crate::spectrum::{ansatz_bound, spectrum};

/// A nonempty finite set of points of the same dimension, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet<F> {
    points: Vec<Point<F>>,
}

impl<F: Field> PointSet<F> {
    pub fn new(mut points: Vec<Point<F>>) -> Result<Self> {
        let n = points.first().ok_or_else(|| Error::InvalidPointSet("empty point set".into()))?.nvars();
        if let Some(p) = points.iter().find(|p| p.nvars() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: p.nvars() });
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidPointSet(format!("repeated point {}", w[0])));
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point<F>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.points[0].nvars()
    }

    /// Lexicographically smallest point, the hub of the character differences.
    pub fn base(&self) -> &Point<F> {
        &self.points[0]
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        self.points.binary_search(p).is_ok()
    }
}

/// `(x - α)^m`
pub fn shifted_monomial<F: Field>(alpha: &Point<F>, m: &Monomial) -> Polynomial<F> {
    Polynomial::term(m.clone(), F::one()).translate(&alpha.neg()).expect("dimensions agree")
}

fn lex_descending(n: usize, d: u32) -> Vec<Monomial> {
    let mut ms = Monomial::all_of_degree(n, d);
    ms.sort_by(|a, b| TermOrder::Lex.cmp(b, a));
    ms
}

/// All monomials of degree `N` in `x_i − α_i`, from `(x_1 − α_1)^N` down in
/// lex order.
pub fn p_n<F: Field>(alpha: &Point<F>, big_n: u32) -> Vec<Polynomial<F>> {
    lex_descending(alpha.nvars(), big_n).iter().map(|m| shifted_monomial(alpha, m)).collect()
}

/// Every product of one element of `P_N(α)` per `α ∈ S`; the first point
/// varies slowest.
pub fn pi_n<F: Field>(s: &PointSet<F>, big_n: u32) -> Vec<Polynomial<F>> {
    let mut out = vec![Polynomial::one(s.nvars())];
    for alpha in s.points() {
        let factors = p_n(alpha, big_n);
        out = out.iter().flat_map(|acc| factors.iter().map(move |p| acc * p)).collect();
    }
    out
}

/// The degree-`≤ D` part of `Π_N(S)·K[x]`, spanned by `π·x^a`.
#[derive(Clone, Debug)]
pub struct QprimeSlice<F> {
    points: Vec<Point<F>>,
    degree: u32,
    index: HashMap<Monomial, usize>,
    span: EchelonBasis<F>,
}

impl<F: Field> QprimeSlice<F> {
    pub fn new(s: &PointSet<F>, big_n: u32, degree: u32) -> Self {
        let n = s.nvars();
        let monos = Monomial::all_up_to_degree(n, degree);
        let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut slice = QprimeSlice { points: s.points().to_vec(), degree, index, span: EchelonBasis::new(monos.len()) };
        let top = big_n * s.len() as u32;
        if top <= degree {
            for pi in pi_n(s, big_n) {
                for a in Monomial::all_up_to_degree(n, degree - top) {
                    let v = slice.coords(&pi.mul_term(&a, &F::one()));
                    slice.span.insert(v);
                }
            }
        }
        slice
    }

    fn coords(&self, f: &Polynomial<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.index.len()];
        for (m, c) in f.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dimension of the ideal slice, without the constants.
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// `dim K[x]_{≤D} − dim (K ⊕ slice)`
    pub fn codim(&self) -> usize {
        self.index.len() - self.dim() - 1
    }

    /// `f ∈ K ⊕ slice`; false whenever `deg f > D`.
    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        if f.total_degree().unwrap_or(0) > self.degree {
            return Ok(false);
        }
        // every element of the ideal vanishes on S, which fixes the constant
        let c = f.evaluate(&self.points[0])?;
        for p in &self.points[1..] {
            if f.evaluate(p)? != c {
                return Ok(false);
            }
        }
        let rest = f - &Polynomial::constant(f.nvars(), c);
        Ok(self.span.contains(&self.coords(&rest)))
    }
}

/// `f ∈ Q'_N(S)`, decided in degrees `≤ D`.
pub fn qprime_membership<F: Field>(f: &Polynomial<F>, s: &PointSet<F>, big_n: u32, degree: u32) -> Result<bool> {
    QprimeSlice::new(s, big_n, degree).contains(f)
}

/// Pure partials `f ↦ ∂^d f(α)` with `lo ≤ |d| < hi` at every `α ∈ S`,
/// ordered by order, then point, then multiset.
pub fn pure_partials<F: Field>(s: &PointSet<F>, lo: u32, hi: u32) -> Vec<LinearFunctional<F>> {
    let mut out = Vec::new();
    for j in lo.max(1)..hi {
        for alpha in s.points() {
            for d in PartialMultiset::all_of_order(s.nvars(), j) {
                out.push(LinearFunctional::partial_at(alpha, d, F::one()));
            }
        }
    }
    out
}

/// The condition list `E(S) ∪ D_N(S)` in filtration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QnSpec<F> {
    pub points: PointSet<F>,
    pub power: u32,
    pub conditions: Vec<Condition<F>>,
}

impl<F: Field> QnSpec<F> {
    pub fn new(points: PointSet<F>, power: u32) -> Result<Self> {
        if power == 0 {
            return Err(Error::Invalid("N must be positive".into()));
        }
        let base = points.base();
        let mut conditions: Vec<Condition<F>> = points.points()[1..]
            .iter()
            .map(|beta| Condition::character_difference(base, beta, F::one()))
            .collect::<Result<_>>()?;
        for l in pure_partials(&points, 1, power) {
            let alpha = l.atoms()[0].point.clone();
            conditions.push(Condition::derivation(&alpha, l)?);
        }
        Ok(QnSpec { points, power, conditions })
    }

    pub fn num_character_differences(&self) -> usize {
        self.points.len() - 1
    }

    pub fn num_derivatives(&self) -> usize {
        self.conditions.len() - self.num_character_differences()
    }
}

/// The filtration of `Q_N(S)` given by its spec.
///
/// Panics if a condition is rejected, which a well-formed spec rules out.
pub fn qn_build<F: Field>(spec: &QnSpec<F>, ord: TermOrder) -> ConditionFiltration<F> {
    let f = build_from_conditions(spec.points.nvars(), &spec.conditions, ord)
        .unwrap_or_else(|e| panic!("Q_N conditions must form a filtration: {e}"));
    assert_eq!(f.len(), spec.conditions.len());
    f
}

/// `Q'_N(S) = Q_N(S)`: generators of `Q_N` lie in `Q'_N`, the spanning set
/// of `Q'_N` lies in `Q_N`, and both have the same codimension in degrees
/// `≤ D`.
pub fn verify_qprime_eq_q<F: Field>(s: &PointSet<F>, big_n: u32, ord: TermOrder) -> Result<Report> {
    let spec = QnSpec::new(s.clone(), big_n)?;
    let q = qn_build(&spec, ord);
    let cr = codimension(&q);
    let gen_deg = q.algebra().gens().iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let degree = (cr.conductor + big_n * s.len() as u32).max(gen_deg);
    let slice = QprimeSlice::new(s, big_n, degree);
    let mut r = Report::new();

    let outside: Vec<String> = q
        .algebra()
        .gens()
        .iter()
        .filter(|g| !slice.contains(g).unwrap_or(false))
        .map(|g| g.to_string())
        .collect();
    r.push(
        "generators_of_q_in_qprime",
        outside.is_empty(),
        json!({"generators": q.algebra().len(), "degree_cap": degree, "outside": outside}),
    );

    let mut sub = q.algebra().subductor();
    let top = big_n * s.len() as u32;
    let mut tried = 0;
    let mut failed = Vec::new();
    for pi in pi_n(s, big_n) {
        for a in Monomial::all_up_to_degree(s.nvars(), degree.saturating_sub(top)) {
            let p = pi.mul_term(&a, &F::one());
            tried += 1;
            if !sub.is_member(&p)? {
                failed.push(p.to_string());
            }
        }
    }
    r.push("qprime_spanning_set_in_q", failed.is_empty(), json!({"products": tried, "not_members": failed}));

    let qp = slice.codim();
    r.push(
        "codimensions_agree",
        qp == cr.codim,
        json!({"codim_q": cr.codim, "codim_qprime_truncated": qp, "degree_cap": degree}),
    );
    Ok(r)
}

/// `D_α(Q_N(S))` is spanned by the pure partials of order `N..2N` at `S`.
pub fn verify_d_of_q<F: Field>(s: &PointSet<F>, big_n: u32, alpha: &Point<F>, ord: TermOrder) -> Result<Report> {
    if !s.contains(alpha) {
        return Err(Error::InvalidPointSet(format!("{alpha} is not in S")));
    }
    let n = s.nvars() as u32;
    let spec = QnSpec::new(s.clone(), big_n)?;
    let q = qn_build(&spec, ord);
    let ds = derivation_space(&q, alpha)?;
    let mut r = Report::new();

    let per_point = binomial_u64(n + 2 * big_n - 1, n) - binomial_u64(n + big_n - 1, n);
    let expected = s.len() as u64 * per_point;
    r.push(
        "dimension_formula",
        ds.dim() as u64 == expected,
        json!({"computed": ds.dim(), "expected": expected, "points": s.len()}),
    );

    let high = pure_partials(s, big_n, 2 * big_n);
    let at_alpha: Vec<&LinearFunctional<F>> = high.iter().filter(|l| &l.atoms()[0].point == alpha).collect();
    let mut bad = Vec::new();
    for l in &at_alpha {
        if !leibniz_holds(q.algebra().gens(), l, alpha, alpha)? {
            bad.push(l.to_string());
        }
    }
    r.push("high_partials_are_derivations", bad.is_empty(), json!({"checked": at_alpha.len(), "failing": bad}));

    let cr = codimension(&q);
    let degree = 2 * big_n * s.len() as u32 + cr.conductor;
    let test_space = q.truncated_basis(degree)?;
    let mut unexpressed = Vec::new();
    for d in &ds.basis {
        if express_in_span(d, &high, &test_space)?.is_none() {
            unexpressed.push(d.to_string());
        }
    }
    r.push(
        "basis_in_span_of_high_partials",
        unexpressed.is_empty(),
        json!({"basis": ds.dim(), "candidates": high.len(), "degree": degree, "unexpressed": unexpressed}),
    );

    let cot = cotangent_dimension(&q, alpha)?;
    r.push("cotangent_dimension", cot == ds.dim(), json!({"cotangent": cot, "derivations": ds.dim()}));
    Ok(r)
}

/// Knobs of [`verify_main_theorem_with`].
#[derive(Clone, Debug)]
pub struct MainOptions {
    /// products `π·x^a` additionally checked by subduction
    pub subduction_samples: usize,
    /// random pairs `(f, g)` from the algebra per basis derivation
    pub leibniz_pairs: usize,
    pub seed: u64,
}

impl Default for MainOptions {
    fn default() -> Self {
        MainOptions { subduction_samples: 8, leibniz_pairs: 12, seed: 0x5eed }
    }
}

/// `K + Π_N(Sp)·K[x] ⊆ A`, decided exactly: `π·K[x]` lies in the common
/// kernel of the conditions iff every condition vanishes on `J(π)·J(K[x])`,
/// with jets at the spectrum of order the highest condition order.
pub fn ideal_contained<F: Field>(f: &ConditionFiltration<F>, big_n: u32) -> Result<bool> {
    let sp = spectrum(f);
    if sp.is_empty() {
        return Ok(true);
    }
    let order = f.max_order();
    let pts: Vec<(Point<F>, u32)> = sp.points.iter().map(|p| (p.clone(), order)).collect();
    let js = JetSpace::new(f.nvars(), &pts)?;
    let rows: Vec<Vec<F>> =
        f.conditions().map(|c| js.functional_row(&c.functional).expect("jets carry every condition")).collect();
    let units: Vec<Vec<F>> = (0..js.width())
        .map(|k| {
            let mut e = vec![F::zero(); js.width()];
            e[k] = F::one();
            e
        })
        .collect();
    let mut jets = vec![js.one()];
    for alpha in &sp.points {
        let factors: Vec<Vec<F>> = p_n(alpha, big_n).iter().map(|p| js.jet(p)).collect::<Result<_>>()?;
        let js = &js;
        jets = jets.iter().flat_map(|acc| factors.iter().map(move |p| js.mul(acc, p))).collect();
    }
    for pi in &jets {
        for e in &units {
            let v = js.mul(pi, e);
            if rows.iter().any(|r| !dot(r, &v).is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest `N ≤ cap` with `K + Π_N(Sp)·K[x] ⊆ A`.
pub fn minimal_containment_power<F: Field>(f: &ConditionFiltration<F>, cap: u32) -> Result<Option<u32>> {
    for k in 1..=cap {
        if ideal_contained(f, k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn random_element<F: Field>(gens: &[Polynomial<F>], n: usize, rng: &mut ChaCha8Rng) -> Polynomial<F> {
    let mut f = Polynomial::constant(n, F::from_int(rng.gen_range(-3..=3)));
    if gens.is_empty() {
        return f;
    }
    for _ in 0..3 {
        let c = F::from_int(rng.gen_range(-4..=4));
        let mut t = gens.choose(rng).unwrap().clone();
        if rng.gen_bool(0.5) {
            t = &t * gens.choose(rng).unwrap();
        }
        f = f + t.scale(&c);
    }
    f
}

pub fn verify_main_theorem<F: Field>(f: &ConditionFiltration<F>, alpha: &Point<F>) -> Result<Report> {
    verify_main_theorem_with(f, alpha, &MainOptions::default())
}

/// Containment of `Q'_N(Sp)` in `A`, agreement of the ansatz with the
/// cotangent dimension, and the Leibniz rule on random pairs.
pub fn verify_main_theorem_with<F: Field>(
    f: &ConditionFiltration<F>,
    alpha: &Point<F>,
    opts: &MainOptions,
) -> Result<Report> {
    let n = f.nvars();
    let sp = spectrum(f);
    let big_n = ansatz_bound(f);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut r = Report::new();

    let contained = ideal_contained(f, big_n)?;
    let minimal = minimal_containment_power(f, big_n)?;
    r.push(
        "ideal_contained",
        contained,
        json!({"N": big_n, "spectrum_points": sp.len(), "smallest_N": minimal}),
    );

    if !sp.is_empty() {
        let s = PointSet::new(sp.points.clone())?;
        let mut products = pi_n(&s, big_n);
        products.shuffle(&mut rng);
        let mut sub = f.algebra().subductor();
        let mut failed = Vec::new();
        let take = opts.subduction_samples.min(products.len());
        for pi in &products[..take] {
            let a = Monomial::all_up_to_degree(n, 1).choose(&mut rng).unwrap().clone();
            let p = pi.mul_term(&a, &F::one());
            if !sub.is_member(&p)? {
                failed.push(p.to_string());
            }
        }
        r.push("ideal_sample_subduces", failed.is_empty(), json!({"sampled": take, "not_members": failed}));
    }

    let ds = derivation_space(f, alpha)?;
    let cot = cotangent_dimension(f, alpha)?;
    r.push(
        "cotangent_matches_ansatz",
        cot == ds.dim(),
        json!({"cotangent": cot, "derivations": ds.dim(), "ansatz_order": ds.ansatz_order}),
    );

    let gens = f.algebra().gens();
    let mut violations = Vec::new();
    for (k, d) in ds.basis.iter().enumerate() {
        for _ in 0..opts.leibniz_pairs {
            let a = random_element(gens, n, &mut rng);
            let b = random_element(gens, n, &mut rng);
            let lhs = d.apply(&(&a * &b))?;
            let rhs = a.evaluate(alpha)?.mul_ref(&d.apply(&b)?).add_ref(&d.apply(&a)?.mul_ref(&b.evaluate(alpha)?));
            if lhs != rhs {
                violations.push(k);
                break;
            }
        }
    }
    r.push(
        "random_leibniz",
        violations.is_empty(),
        json!({"basis": ds.dim(), "pairs_each": opts.leibniz_pairs, "failing_basis_elements": violations}),
    );
    Ok(r)
}

/// `∂^U(fg)` through the expansion over sub-multisets `V ⊆ U`, each counted
/// with the multiplicity `∏ C(u_i, v_i)` of its copies in the power multiset.
pub fn general_leibniz<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, u: &PartialMultiset) -> Result<Polynomial<F>> {
    let mut acc = Polynomial::zero(f.nvars());
    for v in crate::functional::sub_multisets(&u.as_monomial()) {
        let rest = u.as_monomial().div(&v).expect("sub-multiset");
        let mult: u64 = u.counts().iter().zip(v.exponents()).map(|(&a, &b)| binomial_u64(a, b)).product();
        let dv = f.derive(&PartialMultiset::from_counts(v.exponents().to_vec()))?;
        let dr = g.derive(&PartialMultiset::from_counts(rest.exponents().to_vec()))?;
        acc = acc + (&dv * &dr).scale(&F::from_int(mult as i64));
    }
    Ok(acc)
}
