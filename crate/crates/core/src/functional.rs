//! Linear functionals on K[x] built from mixed-partial evaluations at points.
//!
//! A [`LinearFunctional`] is a finite sum `f ↦ Σ c · ∂^d f(p)`. Character
//! differences, α-derivations and every subalgebra condition handled by the
//! crate have this shape.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{power_table, Monomial, PartialMultiset, Point, Polynomial};
use crate::scalar::Field;

/// One summand `coeff · ∂^partials f(point)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DerivativeAtom<F> {
    pub coeff: F,
    pub point: Point<F>,
    pub partials: PartialMultiset,
}

/// A normalized finite combination of derivative evaluations.
///
/// Normal form: at most one atom per `(point, partials)`, no zero coefficients,
/// atoms sorted by point (lexicographically) and then by partials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearFunctional<F> {
    n: usize,
    atoms: Vec<DerivativeAtom<F>>,
}

impl<F: Field> LinearFunctional<F> {
    pub fn zero(n: usize) -> Self {
        LinearFunctional { n, atoms: Vec::new() }
    }

    pub fn new(n: usize, atoms: impl IntoIterator<Item = DerivativeAtom<F>>) -> Result<Self> {
        let mut acc: BTreeMap<(Point<F>, PartialMultiset), F> = BTreeMap::new();
        for a in atoms {
            if a.point.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.point.nvars() });
            }
            if a.partials.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.partials.nvars() });
            }
            let slot = acc.entry((a.point, a.partials)).or_insert_with(F::zero);
            *slot = slot.add_ref(&a.coeff);
        }
        let atoms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((point, partials), coeff)| DerivativeAtom { coeff, point, partials })
            .collect();
        Ok(LinearFunctional { n, atoms })
    }

    /// `f ↦ f(p)`
    pub fn evaluation(p: &Point<F>) -> Self {
        Self::partial_at(p, PartialMultiset::empty(p.nvars()), F::one())
    }

    /// `f ↦ c · ∂^d f(p)`
    pub fn partial_at(p: &Point<F>, d: PartialMultiset, c: F) -> Self {
        Self::new(p.nvars(), [DerivativeAtom { coeff: c, point: p.clone(), partials: d }])
            .expect("dimensions agree")
    }

    /// `f ↦ c · f^{(k)}_{u_1 … u_k}(p)` expanded into pure partials by
    /// multilinearity.
    pub fn directional(p: &Point<F>, directions: &[Point<F>], c: F) -> Result<Self> {
        let n = p.nvars();
        for u in directions {
            if u.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: u.nvars() });
            }
            if u.is_zero() {
                return Err(Error::InvalidDirection);
            }
        }
        let mut terms: Vec<(Vec<usize>, F)> = vec![(Vec::new(), c)];
        for u in directions {
            let mut next = Vec::new();
            for (idx, v) in &terms {
                for (i, ui) in u.coords().iter().enumerate() {
                    if ui.is_zero() {
                        continue;
                    }
                    let mut idx = idx.clone();
                    idx.push(i);
                    next.push((idx, v.mul_ref(ui)));
                }
            }
            terms = next;
        }
        Self::new(
            n,
            terms.into_iter().map(|(idx, coeff)| DerivativeAtom {
                coeff,
                point: p.clone(),
                partials: PartialMultiset::from_indices(n, &idx),
            }),
        )
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[DerivativeAtom<F>] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Highest derivative order among the atoms (0 for pure evaluations).
    pub fn max_order(&self) -> u32 {
        self.atoms.iter().map(|a| a.partials.order()).max().unwrap_or(0)
    }

    /// Distinct evaluation points, sorted.
    pub fn points(&self) -> Vec<Point<F>> {
        let mut pts: Vec<Point<F>> = self.atoms.iter().map(|a| a.point.clone()).collect();
        pts.dedup();
        pts
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(
            self.n,
            self.atoms.iter().map(|a| DerivativeAtom { coeff: a.coeff.mul_ref(c), ..a.clone() }),
        )
        .unwrap()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Self::new(self.n, self.atoms.iter().chain(&other.atoms).cloned())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&F::one().neg_ref()))
    }

    /// Σ atoms `c · ∂^d f(p)`, exactly.
    pub fn apply(&self, f: &Polynomial<F>) -> Result<F> {
        if f.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: f.nvars() });
        }
        let maxdeg = f.total_degree().unwrap_or(0);
        let mut acc = F::zero();
        let mut i = 0;
        while i < self.atoms.len() {
            let p = &self.atoms[i].point;
            let powers = power_table(p.coords(), maxdeg);
            while i < self.atoms.len() && &self.atoms[i].point == p {
                let a = &self.atoms[i];
                let t = f.taylor_coefficient_with(&powers, &a.partials.as_monomial());
                if !t.is_zero() {
                    acc.add_mul(&a.coeff, &t.mul_ref(&a.partials.factorial_weight()));
                }
                i += 1;
            }
        }
        Ok(acc)
    }
}

impl<F: Field> fmt::Display for LinearFunctional<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|a| {
                if a.partials.is_empty() {
                    format!("{}·f{}", a.coeff, a.point)
                } else {
                    format!("{}·D{}f{}", a.coeff, a.partials, a.point)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// How a condition satisfies the bimodule Leibniz rule
/// `L(fg) = f(α)L(g) + L(f)g(β)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ConditionKind<F> {
    CharacterDifference { alpha: Point<F>, beta: Point<F> },
    Derivation { point: Point<F> },
}

impl<F: Field> ConditionKind<F> {
    /// The pair `(α, β)` of the Leibniz rule.
    pub fn leibniz_points(&self) -> (&Point<F>, &Point<F>) {
        match self {
            ConditionKind::CharacterDifference { alpha, beta } => (alpha, beta),
            ConditionKind::Derivation { point } => (point, point),
        }
    }

    pub fn is_derivation(&self) -> bool {
        matches!(self, ConditionKind::Derivation { .. })
    }
}

/// A linear functional together with its declared Leibniz type.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Condition<F> {
    pub functional: LinearFunctional<F>,
    pub kind: ConditionKind<F>,
}

impl<F: Field> Condition<F> {
    pub fn character_difference(alpha: &Point<F>, beta: &Point<F>, c: F) -> Result<Self> {
        Ok(Condition {
            functional: character_difference(alpha, beta, c)?,
            kind: ConditionKind::CharacterDifference { alpha: alpha.clone(), beta: beta.clone() },
        })
    }

    pub fn derivation(point: &Point<F>, functional: LinearFunctional<F>) -> Result<Self> {
        if point.nvars() != functional.nvars() {
            return Err(Error::DimensionMismatch { expected: functional.nvars(), found: point.nvars() });
        }
        if functional.is_zero() {
            return Err(Error::DegenerateCondition("the zero functional is not a condition".into()));
        }
        Ok(Condition { functional, kind: ConditionKind::Derivation { point: point.clone() } })
    }

    /// Guesses the kind: a two-point pure-evaluation functional `c(f(α) − f(β))`
    /// is a character difference, anything else a derivation at its first point.
    pub fn infer(functional: LinearFunctional<F>) -> Result<Self> {
        let atoms = functional.atoms();
        if atoms.len() == 2
            && atoms.iter().all(|a| a.partials.is_empty())
            && atoms[0].coeff.add_ref(&atoms[1].coeff).is_zero()
        {
            let kind = ConditionKind::CharacterDifference {
                alpha: atoms[0].point.clone(),
                beta: atoms[1].point.clone(),
            };
            return Ok(Condition { functional, kind });
        }
        let point = functional
            .atoms()
            .first()
            .map(|a| a.point.clone())
            .ok_or_else(|| Error::DegenerateCondition("the zero functional is not a condition".into()))?;
        Self::derivation(&point, functional)
    }

    pub fn nvars(&self) -> usize {
        self.functional.nvars()
    }
}

/// `f ↦ c(f(α) − f(β))`
pub fn character_difference<F: Field>(alpha: &Point<F>, beta: &Point<F>, c: F) -> Result<LinearFunctional<F>> {
    if alpha.nvars() != beta.nvars() {
        return Err(Error::DimensionMismatch { expected: alpha.nvars(), found: beta.nvars() });
    }
    if alpha == beta {
        return Err(Error::DegenerateCondition("character difference needs two distinct points".into()));
    }
    if c.is_zero() {
        return Err(Error::DegenerateCondition("character difference with zero scale".into()));
    }
    let n = alpha.nvars();
    LinearFunctional::new(
        n,
        [
            DerivativeAtom { coeff: c.clone(), point: alpha.clone(), partials: PartialMultiset::empty(n) },
            DerivativeAtom { coeff: c.neg_ref(), point: beta.clone(), partials: PartialMultiset::empty(n) },
        ],
    )
}

/// Sub-multisets `b ≤ d` of a multiset given as counts.
pub(crate) fn sub_multisets(d: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::with_capacity(d.nvars())];
    for &c in d.exponents() {
        let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
        for prefix in &out {
            for k in 0..=c {
                let mut p: Vec<u32> = prefix.clone();
                p.push(k);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Values needed to evaluate `L` on products: for each atom point, the Taylor
/// coefficients of a polynomial at every sub-multiset of the atoms' partials.
struct ProductEvaluator<'a, F> {
    functional: &'a LinearFunctional<F>,
    /// per distinct point: (point, needed monomials, index map)
    points: Vec<(Point<F>, Vec<Monomial>, HashMap<Monomial, usize>)>,
}

impl<'a, F: Field> ProductEvaluator<'a, F> {
    fn new(functional: &'a LinearFunctional<F>) -> Self {
        let mut points: Vec<(Point<F>, Vec<Monomial>, HashMap<Monomial, usize>)> = Vec::new();
        for a in functional.atoms() {
            if points.last().map(|p| &p.0) != Some(&a.point) {
                points.push((a.point.clone(), Vec::new(), HashMap::new()));
            }
            let entry = points.last_mut().unwrap();
            for b in sub_multisets(&a.partials.as_monomial()) {
                if !entry.2.contains_key(&b) {
                    entry.2.insert(b.clone(), entry.1.len());
                    entry.1.push(b);
                }
            }
        }
        ProductEvaluator { functional, points }
    }

    fn taylor_data(&self, f: &Polynomial<F>) -> Vec<Vec<F>> {
        let maxdeg = f.total_degree().unwrap_or(0);
        self.points
            .iter()
            .map(|(p, needed, _)| {
                let powers = power_table(p.coords(), maxdeg);
                needed.iter().map(|b| f.taylor_coefficient_with(&powers, b)).collect()
            })
            .collect()
    }

    /// `L(fg)` from the Taylor data of `f` and `g`.
    fn apply_product(&self, tf: &[Vec<F>], tg: &[Vec<F>]) -> F {
        let mut acc = F::zero();
        let mut pi = 0;
        for (k, a) in self.functional.atoms().iter().enumerate() {
            if k > 0 && self.functional.atoms()[k - 1].point != a.point {
                pi += 1;
            }
            let (_, _, index) = &self.points[pi];
            let d = a.partials.as_monomial();
            let mut s = F::zero();
            for b in sub_multisets(&d) {
                let rest = d.div(&b).unwrap();
                s.add_mul(&tf[pi][index[&b]], &tg[pi][index[&rest]]);
            }
            if !s.is_zero() {
                acc.add_mul(&a.coeff, &s.mul_ref(&a.partials.factorial_weight()));
            }
        }
        acc
    }
}

/// True iff `L(fg) = f(α)L(g) + L(f)g(β)` for every ordered pair `f, g` from
/// `span`. By bilinearity this is the Leibniz rule on the span of `span`.
pub fn check_leibniz<F: Field>(
    l: &LinearFunctional<F>,
    alpha: &Point<F>,
    beta: &Point<F>,
    span: &[Polynomial<F>],
) -> Result<bool> {
    Ok(first_leibniz_violation(l, alpha, beta, span)?.is_none())
}

/// Index pair of the first `(f, g)` violating the Leibniz rule, if any.
pub fn first_leibniz_violation<F: Field>(
    l: &LinearFunctional<F>,
    alpha: &Point<F>,
    beta: &Point<F>,
    span: &[Polynomial<F>],
) -> Result<Option<(usize, usize)>> {
    for f in span {
        if f.nvars() != l.nvars() {
            return Err(Error::DimensionMismatch { expected: l.nvars(), found: f.nvars() });
        }
    }
    let ev = ProductEvaluator::new(l);
    let data: Vec<Vec<Vec<F>>> = span.iter().map(|f| ev.taylor_data(f)).collect();
    let lf: Vec<F> = span.iter().map(|f| l.apply(f)).collect::<Result<_>>()?;
    let fa: Vec<F> = span.iter().map(|f| f.evaluate(alpha)).collect::<Result<_>>()?;
    let fb: Vec<F> = span.iter().map(|f| f.evaluate(beta)).collect::<Result<_>>()?;
    for i in 0..span.len() {
        for j in 0..span.len() {
            let lhs = ev.apply_product(&data[i], &data[j]);
            let rhs = fa[i].mul_ref(&lf[j]).add_ref(&lf[i].mul_ref(&fb[j]));
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Coefficients `c` with `L = Σ c_i L_i` as functions on the span of
/// `test_space`, or `None` when `L` is not in the span of the `L_i` there.
pub fn express_in_span<F: Field>(
    l: &LinearFunctional<F>,
    basis: &[LinearFunctional<F>],
    test_space: &[Polynomial<F>],
) -> Result<Option<Vec<F>>> {
    let mut rows = Vec::with_capacity(test_space.len());
    let mut rhs = Vec::with_capacity(test_space.len());
    for f in test_space {
        rows.push(basis.iter().map(|b| b.apply(f)).collect::<Result<Vec<F>>>()?);
        rhs.push(l.apply(f)?);
    }
    if basis.is_empty() {
        return Ok(rhs.iter().all(|v| v.is_zero()).then(Vec::new));
    }
    Ok(Matrix::from_rows(basis.len(), rows).solve(&rhs))
}
