use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Monomial, PartialMultiset, TermOrder};
use super::point::Point;
use crate::error::{Error, Result};
use crate::scalar::{binomial, falling_factorial, Field};

/// Sparse polynomial in `n` variables.
///
/// Terms are kept sorted in descending degrevlex order whatever order is used
/// for leading-term computations, so two equal polynomials always have equal
/// representations. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<F> {
    n: usize,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: Vec::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, F::one())
    }

    pub fn constant(n: usize, c: F) -> Self {
        Self::term(Monomial::one(n), c)
    }

    /// The variable `x_{i+1}`.
    pub fn var(n: usize, i: usize) -> Self {
        Self::term(Monomial::var(n, i), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let n = m.nvars();
        if c.is_zero() {
            return Self::zero(n);
        }
        Polynomial { n, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), n);
            match acc.get_mut(&m) {
                Some(v) => *v = v.add_ref(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(n, acc)
    }

    fn from_map(n: usize, acc: HashMap<Monomial, F>) -> Self {
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { n, terms }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    pub fn constant_term(&self) -> F {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => F::zero(),
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// Leading monomial and leading coefficient under `ord`.
    pub fn leading(&self, ord: TermOrder) -> Result<(&Monomial, &F)> {
        self.leading_term(ord).ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_term(&self, ord: TermOrder) -> Option<(&Monomial, &F)> {
        if ord == TermOrder::DegRevLex {
            return self.terms.first().map(|(m, c)| (m, c));
        }
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn lm(&self, ord: TermOrder) -> Option<&Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { b[j].1.neg_ref() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { n: self.n, terms: out }
    }

    /// `self - c * other`
    pub fn sub_scaled(&self, other: &Self, c: &F) -> Self {
        assert_eq!(self.n, other.n, "polynomials in different rings");
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), b[j].1.mul_ref(c).neg_ref()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut v = a[i].1.clone();
                    v.sub_mul(c, &b[j].1);
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { n: self.n, terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(v) => v.add_mul(ca, cb),
                    None => {
                        acc.insert(m, ca.mul_ref(cb));
                    }
                }
            }
        }
        Self::from_map(self.n, acc)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul_ref(c))).collect(),
        }
    }

    /// `self * c * x^m`
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        // multiplying by a monomial preserves degrevlex order
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v.mul_ref(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = acc.mul_impl(self);
        }
        acc
    }

    /// Divides by the leading coefficient under `ord`. Zero stays zero.
    pub fn monic(&self, ord: TermOrder) -> Self {
        match self.leading_term(ord) {
            Some((_, c)) => {
                let inv = c.inv();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, p: &Point<F>) -> Result<F> {
        if p.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: p.nvars() });
        }
        Ok(self.eval_unchecked(p.coords()))
    }

    pub(crate) fn eval_unchecked(&self, p: &[F]) -> F {
        let maxdeg = self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0);
        let powers = power_table(p, maxdeg);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v = v.mul_ref(&powers[i][e as usize]);
                }
            }
            acc = acc.add_ref(&v);
        }
        acc
    }

    /// Mixed partial derivative prescribed by the multiset `d`.
    pub fn derive(&self, d: &PartialMultiset) -> Result<Self> {
        if d.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: d.nvars() });
        }
        let dm = d.as_monomial();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if let Some(q) = m.div(&dm) {
                let mut v = c.clone();
                for (a, k) in m.exponents().iter().zip(d.counts()) {
                    v = v.mul_ref(&falling_factorial(*a, *k));
                }
                terms.push((q, v));
            }
        }
        Ok(Self::from_terms(self.n, terms))
    }

    /// `∂f/∂x_{i+1}`
    pub fn partial(&self, i: usize) -> Self {
        let mut counts = vec![0; self.n];
        counts[i] = 1;
        self.derive(&PartialMultiset::from_counts(counts)).expect("dimension matches")
    }

    /// `sum_i u_i * ∂f/∂x_i`
    pub fn directional_derivative(&self, u: &Point<F>) -> Result<Self> {
        if u.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: u.nvars() });
        }
        if u.is_zero() {
            return Err(Error::InvalidDirection);
        }
        let mut acc = Self::zero(self.n);
        for (i, ui) in u.coords().iter().enumerate() {
            if !ui.is_zero() {
                acc = acc.merge(&self.partial(i).scale(ui), false);
            }
        }
        Ok(acc)
    }

    /// `f(x + a)`
    pub fn translate(&self, a: &Point<F>) -> Result<Self> {
        if a.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: a.nvars() });
        }
        let maxdeg = self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0);
        let powers = power_table(a.coords(), maxdeg);
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in &self.terms {
            // expand prod_i (x_i + a_i)^{e_i}
            let mut partial: Vec<(Vec<u32>, F)> = vec![(Vec::with_capacity(self.n), c.clone())];
            for (i, &e) in m.exponents().iter().enumerate() {
                let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                for (exps, v) in &partial {
                    for k in 0..=e {
                        let shift = &powers[i][(e - k) as usize];
                        if shift.is_zero() {
                            continue;
                        }
                        let w = v.mul_ref(&binomial::<F>(e, k)).mul_ref(shift);
                        let mut ex = exps.clone();
                        ex.push(k);
                        next.push((ex, w));
                    }
                }
                partial = next;
            }
            for (exps, v) in partial {
                let mono = Monomial::new(exps);
                match acc.get_mut(&mono) {
                    Some(x) => *x = x.add_ref(&v),
                    None => {
                        acc.insert(mono, v);
                    }
                }
            }
        }
        Ok(Self::from_map(self.n, acc))
    }

    /// Taylor coefficient of `(x - p)^b` in the expansion of `self` around `p`,
    /// i.e. `∂^b f(p) / b!`.
    pub fn taylor_coefficient(&self, p: &[F], b: &Monomial) -> F {
        let maxdeg = self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0);
        let powers = power_table(p, maxdeg);
        self.taylor_coefficient_with(&powers, b)
    }

    pub(crate) fn taylor_coefficient_with(&self, powers: &[Vec<F>], b: &Monomial) -> F {
        let mut acc = F::zero();
        'terms: for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, (&a, &k)) in m.exponents().iter().zip(b.exponents()).enumerate() {
                if a < k {
                    continue 'terms;
                }
                if k > 0 {
                    v = v.mul_ref(&binomial::<F>(a, k));
                }
                if a > k {
                    let pw = &powers[i][(a - k) as usize];
                    if pw.is_zero() {
                        continue 'terms;
                    }
                    v = v.mul_ref(pw);
                }
            }
            acc = acc.add_ref(&v);
        }
        acc
    }

    /// Drops all terms of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Self {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= d).cloned().collect(),
        }
    }
}

/// `powers[i][k] = p_i^k` for `k <= maxdeg`.
pub(crate) fn power_table<F: Field>(p: &[F], maxdeg: u32) -> Vec<Vec<F>> {
    p.iter()
        .map(|x| {
            let mut row = Vec::with_capacity(maxdeg as usize + 1);
            row.push(F::one());
            for k in 1..=maxdeg as usize {
                let next = row[k - 1].mul_ref(x);
                row.push(next);
            }
            row
        })
        .collect()
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl<F: Field> $trait<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                assert_eq!(self.n, rhs.n, "polynomials in different rings");
                self.$impl(rhs)
            }
        }
        impl<F: Field> $trait<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
        impl<F: Field> $trait<&Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                (&self).$method(rhs)
            }
        }
    };
}

impl<F: Field> Polynomial<F> {
    fn add_impl(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }
    fn sub_impl(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&F::one().neg_ref())
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::format_polynomial(self))
    }
}
