use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::functional::LinearFunctional;
use crate::poly::{Monomial, Point, Polynomial, TermOrder};
use crate::scalar::Field;

use super::semigroup::LeadSemigroup;

/// A minimal SAGBI basis: monic, nonconstant generators sorted ascending by
/// leading monomial, no leading monomial in the semigroup of the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SagbiBasis<F> {
    n: usize,
    ord: TermOrder,
    gens: Vec<Polynomial<F>>,
}

/// Result of subduction: `f = remainder + Σ c · prod gens^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subduction<F> {
    pub remainder: Polynomial<F>,
    pub steps: Vec<(F, Vec<u32>)>,
}

impl<F: Field> SagbiBasis<F> {
    /// `K[x]` itself, generated by the variables.
    pub fn full_ring(n: usize, ord: TermOrder) -> Self {
        let mut gens: Vec<Polynomial<F>> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        sort_by_lm(&mut gens, ord);
        SagbiBasis { n, ord, gens }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> TermOrder {
        self.ord
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| g.lm(self.ord).unwrap().clone()).collect()
    }

    pub fn semigroup(&self) -> LeadSemigroup {
        LeadSemigroup::new(self.leading_monomials())
    }

    pub fn subductor(&self) -> Subductor<F> {
        Subductor::new(self.n, self.ord, self.gens.clone())
    }

    pub fn subduce(&self, f: &Polynomial<F>) -> Result<Subduction<F>> {
        self.subductor().subduce(f)
    }

    pub fn is_member(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.subduce(f)?.remainder.is_zero())
    }

    /// Two-sided subduction: every generator of each basis is a member of
    /// the algebra of the other.
    pub fn same_algebra(&self, other: &SagbiBasis<F>) -> Result<bool> {
        let mut a = self.subductor();
        let mut b = other.subductor();
        for g in other.gens() {
            if !a.is_member(g)? {
                return Ok(false);
            }
        }
        for g in self.gens() {
            if !b.is_member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Values of all generators at `p`.
    pub fn evaluate_all(&self, p: &Point<F>) -> Result<Vec<F>> {
        self.gens.iter().map(|g| g.evaluate(p)).collect()
    }
}

fn sort_by_lm<F: Field>(gens: &mut [Polynomial<F>], ord: TermOrder) {
    gens.sort_by(|a, b| ord.cmp(a.lm(ord).unwrap(), b.lm(ord).unwrap()));
}

/// Subduction against a fixed list of monic generators, caching products of
/// generator powers between calls.
#[derive(Clone, Debug)]
pub struct Subductor<F> {
    n: usize,
    ord: TermOrder,
    gens: Vec<Polynomial<F>>,
    semigroup: LeadSemigroup,
    products: HashMap<Vec<u32>, Polynomial<F>>,
}

impl<F: Field> Subductor<F> {
    /// Generators must be monic and nonconstant under `ord`.
    pub fn new(n: usize, ord: TermOrder, gens: Vec<Polynomial<F>>) -> Self {
        for g in &gens {
            let (m, c) = g.leading_term(ord).expect("zero generator");
            assert!(c.is_one() && !m.is_one(), "generators must be monic and nonconstant");
        }
        let semigroup = LeadSemigroup::new(gens.iter().map(|g| g.lm(ord).unwrap().clone()).collect());
        Subductor { n, ord, gens, semigroup, products: HashMap::new() }
    }

    pub fn semigroup(&mut self) -> &mut LeadSemigroup {
        &mut self.semigroup
    }

    /// `prod gens[i]^e[i]`
    pub fn product(&mut self, e: &[u32]) -> Polynomial<F> {
        let Some(i) = e.iter().position(|&k| k > 0) else {
            return Polynomial::one(self.n);
        };
        if let Some(p) = self.products.get(e) {
            return p.clone();
        }
        let mut rest = e.to_vec();
        rest[i] -= 1;
        let p = &self.product(&rest) * &self.gens[i];
        self.products.insert(e.to_vec(), p.clone());
        p
    }

    pub fn subduce(&mut self, f: &Polynomial<F>) -> Result<Subduction<F>> {
        if f.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: f.nvars() });
        }
        let mut rem = f.clone();
        let mut steps = Vec::new();
        while let Some((m, c)) = rem.leading_term(self.ord).map(|(m, c)| (m.clone(), c.clone())) {
            let Some(e) = self.semigroup.factor(&m) else {
                break;
            };
            let p = self.product(&e);
            rem = rem.sub_scaled(&p, &c);
            if let Some(next) = rem.lm(self.ord) {
                assert_eq!(self.ord.cmp(next, &m), Ordering::Less, "subduction must lower the leading monomial");
            }
            steps.push((c, e));
        }
        if let Some(m) = rem.lm(self.ord) {
            let m = m.clone();
            assert!(!self.semigroup.contains(&m), "remainder leading monomial must lie outside the semigroup");
        }
        Ok(Subduction { remainder: rem, steps })
    }

    pub fn is_member(&mut self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.subduce(f)?.remainder.is_zero())
    }

    /// Removes every non-leading term whose monomial lies in the semigroup.
    fn tail_reduce(&mut self, g: &Polynomial<F>) -> Polynomial<F> {
        let (lm, _) = g.leading_term(self.ord).expect("nonzero");
        let lm = lm.clone();
        let mut kept: Vec<(Monomial, F)> = vec![(lm.clone(), F::one())];
        let mut rest = g.sub_scaled(&Polynomial::term(lm, F::one()), &F::one());
        while let Some((m, c)) = rest.leading_term(self.ord).map(|(m, c)| (m.clone(), c.clone())) {
            match self.semigroup.factor(&m) {
                Some(e) => {
                    let p = self.product(&e);
                    rest = rest.sub_scaled(&p, &c);
                }
                None => {
                    rest = rest.sub_scaled(&Polynomial::term(m.clone(), F::one()), &c);
                    kept.push((m, c));
                }
            }
        }
        Polynomial::from_terms(self.n, kept)
    }
}

/// Minimal reduced SAGBI basis of the algebra generated by a (possibly
/// redundant) SAGBI basis `gens`.
///
/// Generators whose leading monomial is generated by earlier ones are
/// dropped; every survivor is then tail-reduced so that none of its
/// non-leading monomials lies in the leading semigroup. The output depends
/// only on the algebra and the order.
pub fn minimalize<F: Field>(n: usize, gens: &[Polynomial<F>], ord: TermOrder) -> Result<SagbiBasis<F>> {
    let mut cands: Vec<Polynomial<F>> = Vec::with_capacity(gens.len());
    for g in gens {
        if g.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.nvars() });
        }
        if !g.is_constant() {
            cands.push(g.monic(ord));
        }
    }
    sort_by_lm(&mut cands, ord);
    let mut kept: Vec<Polynomial<F>> = Vec::new();
    let mut sg = LeadSemigroup::new(Vec::new());
    for g in cands {
        let m = g.lm(ord).unwrap().clone();
        if sg.contains(&m) {
            continue;
        }
        kept.push(g);
        sg = LeadSemigroup::new(kept.iter().map(|g| g.lm(ord).unwrap().clone()).collect());
    }
    let mut sub = Subductor::new(n, ord, kept.clone());
    let reduced = kept.iter().map(|g| sub.tail_reduce(g)).collect();
    Ok(SagbiBasis { n, ord, gens: reduced })
}

/// The raw generating set `G'` for `A ∩ Ker(L)` built from a minimal basis
/// `G` of `A`, before minimalization: with `j` the first index where
/// `L(g_j) ≠ 0`,
/// `{g_i - L(g_i)/L(g_j) g_j : i ≠ j} ∪ {g_i g_j - L(g_i g_j)/L(g_j) g_j} ∪ {g_j³ - L(g_j³)/L(g_j) g_j}`.
pub fn kernel_sagbi_raw<F: Field>(g: &SagbiBasis<F>, l: &LinearFunctional<F>) -> Result<Vec<Polynomial<F>>> {
    if l.nvars() != g.nvars() {
        return Err(Error::DimensionMismatch { expected: g.nvars(), found: l.nvars() });
    }
    let values: Vec<F> = g.gens().iter().map(|p| l.apply(p)).collect::<Result<_>>()?;
    let j = values.iter().position(|v| !v.is_zero()).ok_or(Error::NotAProperCondition)?;
    let gj = &g.gens()[j];
    let lj = &values[j];
    let shift = |f: Polynomial<F>, lf: &F| f.sub_scaled(gj, &lf.div_ref(lj));
    let mut out = Vec::with_capacity(2 * g.len());
    for (i, gi) in g.gens().iter().enumerate() {
        if i != j {
            out.push(shift(gi.clone(), &values[i]));
        }
    }
    for gi in g.gens() {
        let p = gi * gj;
        let lp = l.apply(&p)?;
        out.push(shift(p, &lp));
    }
    let cube = gj.pow(3);
    let lc = l.apply(&cube)?;
    out.push(shift(cube, &lc));
    Ok(out)
}

/// Minimal SAGBI basis of `A ∩ Ker(L)` for a subalgebra condition `L` on the
/// algebra `A` of `g`.
pub fn kernel_sagbi<F: Field>(g: &SagbiBasis<F>, l: &LinearFunctional<F>) -> Result<SagbiBasis<F>> {
    let raw = kernel_sagbi_raw(g, l)?;
    minimalize(g.nvars(), &raw, g.order())
}

/// Outcome of [`complete_generators`].
#[derive(Clone, Debug)]
pub struct Completion<F> {
    /// Monic generators of the same algebra; a SAGBI basis when `certified`.
    pub gens: Vec<Polynomial<F>>,
    /// Set when the leading semigroup has exactly `target_codim` gaps.
    pub certified: bool,
    /// Highest degree up to which leading-monomial relations were processed.
    pub degree: u32,
}

impl<F: Field> Completion<F> {
    pub fn basis(&self, n: usize, ord: TermOrder) -> Result<Option<SagbiBasis<F>>> {
        if !self.certified {
            return Ok(None);
        }
        minimalize(n, &self.gens, ord).map(Some)
    }
}

/// SAGBI completion of an arbitrary generating set, processing relations
/// between leading monomials degree by degree up to `max_degree`.
///
/// Without extra knowledge completeness cannot be decided, so the caller
/// passes the codimension `target_codim` of an algebra known to contain the
/// generators. Once the leading semigroup of the working set has that many
/// gaps the two algebras coincide and the working set is a SAGBI basis.
pub fn complete_generators<F: Field>(
    n: usize,
    gens: &[Polynomial<F>],
    ord: TermOrder,
    max_degree: u32,
    target_codim: usize,
) -> Result<Completion<F>> {
    let mut work: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        if g.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.nvars() });
        }
        add_reduced(n, ord, &mut work, g)?;
    }
    let gap_cap = max_degree.max(1);
    let certified = |work: &[Polynomial<F>]| {
        let mut sg = LeadSemigroup::new(work.iter().map(|g| g.lm(ord).unwrap().clone()).collect());
        matches!(super::codim::scan_semigroup(n, &mut sg, gap_cap),
            super::codim::GapScan::Complete { ref missing, .. } if missing.len() == target_codim)
    };
    if certified(&work) {
        return Ok(Completion { gens: work, certified: true, degree: 0 });
    }
    let mut d = 1;
    while d <= max_degree {
        let mut sub = Subductor::new(n, ord, work.clone());
        let mut added = false;
        for m in Monomial::all_of_degree(n, d) {
            let fs = sub.semigroup().factorizations(&m, 64);
            if fs.len() < 2 {
                continue;
            }
            let base = sub.product(&fs[0]);
            for e in &fs[1..] {
                let diff = &base - &sub.product(e);
                let r = sub.subduce(&diff)?.remainder;
                if !r.is_constant() {
                    add_reduced(n, ord, &mut work, &r)?;
                    added = true;
                }
            }
            if added {
                break;
            }
        }
        if added {
            if certified(&work) {
                return Ok(Completion { gens: work, certified: true, degree: d });
            }
            d = 1;
            continue;
        }
        d += 1;
    }
    let ok = certified(&work);
    Ok(Completion { gens: work, certified: ok, degree: max_degree })
}

fn add_reduced<F: Field>(n: usize, ord: TermOrder, work: &mut Vec<Polynomial<F>>, g: &Polynomial<F>) -> Result<()> {
    if g.is_constant() {
        return Ok(());
    }
    let r = if work.is_empty() {
        g.clone()
    } else {
        Subductor::new(n, ord, work.clone()).subduce(g)?.remainder
    };
    if !r.is_constant() {
        work.push(r.monic(ord));
        sort_by_lm(work, ord);
    }
    Ok(())
}
