use crate::error::{Error, Result};
use crate::functional::{Condition, LinearFunctional};
use crate::jet::JetSpace;
use crate::linalg::{dot, EchelonBasis, Matrix};
use crate::poly::{Monomial, Point, Polynomial, TermOrder};
use crate::scalar::Field;

use super::basis::{kernel_sagbi, SagbiBasis};

/// One step `A_{k+1} = A_k ∩ Ker(L_k)` of a filtration.
#[derive(Clone, Debug)]
pub struct FiltrationLevel<F> {
    pub condition: Condition<F>,
    /// minimal SAGBI basis of `A_k`, the algebra the condition is imposed on
    pub algebra: SagbiBasis<F>,
}

/// A validated chain `A_m ⊂ … ⊂ A_0 = K[x]`.
#[derive(Clone, Debug)]
pub struct ConditionFiltration<F> {
    n: usize,
    ord: TermOrder,
    levels: Vec<FiltrationLevel<F>>,
    algebra: SagbiBasis<F>,
}

impl<F: Field> ConditionFiltration<F> {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> TermOrder {
        self.ord
    }

    pub fn levels(&self) -> &[FiltrationLevel<F>] {
        &self.levels
    }

    /// Number of levels, which is also the codimension of the final algebra.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn conditions(&self) -> impl Iterator<Item = &Condition<F>> {
        self.levels.iter().map(|l| &l.condition)
    }

    /// Basis of the final algebra `A_m`.
    pub fn algebra(&self) -> &SagbiBasis<F> {
        &self.algebra
    }

    /// Basis of `A_k` for `k` in `0..=len()`.
    pub fn level_algebra(&self, k: usize) -> &SagbiBasis<F> {
        if k == self.levels.len() {
            &self.algebra
        } else {
            &self.levels[k].algebra
        }
    }

    /// The filtration made of the first `k` levels.
    pub fn prefix(&self, k: usize) -> ConditionFiltration<F> {
        ConditionFiltration {
            n: self.n,
            ord: self.ord,
            levels: self.levels[..k].to_vec(),
            algebra: self.level_algebra(k).clone(),
        }
    }

    /// `f ∈ A`, decided by evaluating every condition: the final algebra is
    /// the common kernel of all conditions in `K[x]`.
    pub fn satisfies_conditions(&self, f: &Polynomial<F>) -> Result<bool> {
        for c in self.conditions() {
            if !c.functional.apply(f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Highest derivative order among all conditions.
    pub fn max_order(&self) -> u32 {
        self.conditions().map(|c| c.functional.max_order()).max().unwrap_or(0)
    }

    /// Basis of the degree-`≤ d` slice of the final algebra, by exact linear
    /// algebra on the conditions (independent of SAGBI machinery).
    pub fn truncated_basis(&self, d: u32) -> Result<Vec<Polynomial<F>>> {
        let funcs: Vec<&LinearFunctional<F>> = self.conditions().map(|c| &c.functional).collect();
        truncated_kernel(self.n, &funcs, d)
    }
}

/// Basis of `{f : deg f ≤ d, L(f) = 0 for all L}`.
pub fn truncated_kernel<F: Field>(n: usize, funcs: &[&LinearFunctional<F>], d: u32) -> Result<Vec<Polynomial<F>>> {
    let monos = Monomial::all_up_to_degree(n, d);
    if funcs.is_empty() {
        return Ok(monos.into_iter().map(|m| Polynomial::term(m, F::one())).collect());
    }
    let rows: Vec<Vec<F>> = funcs
        .iter()
        .map(|l| monos.iter().map(|m| l.apply(&Polynomial::term(m.clone(), F::one()))).collect::<Result<Vec<F>>>())
        .collect::<Result<_>>()?;
    let kernel = Matrix::from_rows(monos.len(), rows).kernel();
    Ok(kernel
        .into_iter()
        .map(|v| Polynomial::from_terms(n, monos.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero())))
        .collect())
}

/// Membership in the span of `basis` by exact linear algebra over the
/// monomials of degree `≤ d`.
pub fn in_span<F: Field>(n: usize, basis: &[Polynomial<F>], f: &Polynomial<F>, d: u32) -> bool {
    if f.total_degree().unwrap_or(0) > d {
        return false;
    }
    let monos = Monomial::all_up_to_degree(n, d);
    let coords = |p: &Polynomial<F>| monos.iter().map(|m| p.coefficient(m)).collect::<Vec<F>>();
    let mut e = EchelonBasis::new(monos.len());
    for b in basis {
        e.insert(coords(b));
    }
    e.contains(&coords(f))
}

/// Exact test of `L(fg) = f(α)L(g) + L(f)g(β)` for all `f, g` in the algebra
/// generated by `gens`.
///
/// Both sides only depend on jets of `f` and `g` of order `≤ max_order(L)` at
/// the points of `L` and on values at `α`, `β`. The image of the algebra in
/// that jet space is finite-dimensional and spanned by products of generator
/// jets, so checking the rule on a basis of the image is complete.
pub fn leibniz_holds<F: Field>(
    gens: &[Polynomial<F>],
    l: &LinearFunctional<F>,
    alpha: &Point<F>,
    beta: &Point<F>,
) -> Result<bool> {
    let n = l.nvars();
    let r = l.max_order();
    let mut pts: Vec<(Point<F>, u32)> = l.points().into_iter().map(|p| (p, r)).collect();
    for p in [alpha, beta] {
        if !pts.iter().any(|(q, _)| q == p) {
            pts.push((p.clone(), 0));
        }
    }
    let js = JetSpace::new(n, &pts)?;
    let ka = js.block_of(alpha).unwrap();
    let kb = js.block_of(beta).unwrap();
    let row = js.functional_row(l).expect("jet space carries every atom");
    let basis = js.algebra_image(gens)?.vectors();
    let lv: Vec<F> = basis.iter().map(|u| dot(&row, u)).collect();
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let lhs = dot(&row, &js.mul(u, v));
            let rhs = js.value(u, ka).mul_ref(&lv[j]).add_ref(&lv[i].mul_ref(js.value(v, kb)));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Builds a filtration one condition at a time.
#[derive(Clone, Debug)]
pub struct FiltrationBuilder<F> {
    n: usize,
    ord: TermOrder,
    levels: Vec<FiltrationLevel<F>>,
    current: SagbiBasis<F>,
}

impl<F: Field> FiltrationBuilder<F> {
    pub fn new(n: usize, ord: TermOrder) -> Self {
        FiltrationBuilder { n, ord, levels: Vec::new(), current: SagbiBasis::full_ring(n, ord) }
    }

    pub fn current(&self) -> &SagbiBasis<F> {
        &self.current
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Validates `cond` on the current algebra and kernels by it. On error the
    /// builder is unchanged.
    pub fn push(&mut self, cond: Condition<F>) -> Result<()> {
        let level = self.levels.len();
        if cond.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: cond.nvars() });
        }
        let (alpha, beta) = cond.kind.leibniz_points();
        if alpha.nvars() != self.n || beta.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: alpha.nvars().min(beta.nvars()) });
        }
        if !leibniz_holds(self.current.gens(), &cond.functional, alpha, beta)? {
            let what = if cond.kind.is_derivation() {
                format!("not a {alpha}-derivation on this level (Leibniz rule fails)")
            } else {
                format!("not a ({alpha}, {beta}) subalgebra condition on this level (Leibniz rule fails)")
            };
            return Err(Error::InvalidFiltration { level, reason: what });
        }
        let next = match kernel_sagbi(&self.current, &cond.functional) {
            Ok(b) => b,
            Err(Error::NotAProperCondition) => return Err(Error::RedundantCondition { level }),
            Err(e) => return Err(e),
        };
        let prev = std::mem::replace(&mut self.current, next);
        self.levels.push(FiltrationLevel { condition: cond, algebra: prev });
        Ok(())
    }

    pub fn finish(self) -> ConditionFiltration<F> {
        ConditionFiltration { n: self.n, ord: self.ord, levels: self.levels, algebra: self.current }
    }
}

/// Validates `conds` in order and builds the minimal SAGBI basis of every
/// level.
pub fn build_from_conditions<F: Field>(
    n: usize,
    conds: &[Condition<F>],
    ord: TermOrder,
) -> Result<ConditionFiltration<F>> {
    let mut b = FiltrationBuilder::new(n, ord);
    for c in conds {
        b.push(c.clone())?;
    }
    Ok(b.finish())
}
