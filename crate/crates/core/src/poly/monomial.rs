use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `a` of the monomial `x^a`.
///
/// The derived `Ord` is *not* used; `Monomial` orders itself by degree reverse
/// lexicographic order (x1 > x2 > ... > xn), which is also the canonical storage
/// order of polynomial terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// All monomials in `n` variables of total degree exactly `d`, in descending
    /// degrevlex order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// All monomials of total degree at most `d`, ascending by degree.
    pub fn all_up_to_degree(n: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Monomial::all_of_degree(n, k).into_iter().rev()).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        TermOrder::DegRevLex.cmp(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Monomial order with x1 > x2 > ... > xn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    Lex,
    DegLex,
    #[default]
    DegRevLex,
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (&a.0, &b.0);
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::DegLex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            TermOrder::DegRevLex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    /// Orders whose comparison starts with total degree.
    pub fn is_degree_compatible(&self) -> bool {
        !matches!(self, TermOrder::Lex)
    }

    pub fn name(&self) -> &'static str {
        match self {
            TermOrder::Lex => "lex",
            TermOrder::DegLex => "deglex",
            TermOrder::DegRevLex => "degrevlex",
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TermOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(TermOrder::Lex),
            "deglex" => Ok(TermOrder::DegLex),
            "degrevlex" => Ok(TermOrder::DegRevLex),
            other => Err(format!("unknown term order `{other}`")),
        }
    }
}

/// A multiset of variables, i.e. a mixed partial derivative `d`. Stored as
/// per-variable multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartialMultiset {
    counts: Vec<u32>,
}

impl PartialMultiset {
    pub fn empty(n: usize) -> Self {
        PartialMultiset { counts: vec![0; n] }
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        PartialMultiset { counts }
    }

    /// From 0-based variable indices, repetitions allowed. Indices must be `< n`.
    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut counts = vec![0; n];
        for &i in indices {
            counts[i] += 1;
        }
        PartialMultiset { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn nvars(&self) -> usize {
        self.counts.len()
    }

    pub fn order(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.order() == 0
    }

    /// Sorted 0-based variable indices, with repetition.
    pub fn indices(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat(i).take(c as usize))
            .collect()
    }

    pub fn as_monomial(&self) -> Monomial {
        Monomial(self.counts.clone())
    }

    pub fn union(&self, other: &PartialMultiset) -> PartialMultiset {
        PartialMultiset {
            counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect(),
        }
    }

    /// `prod_i counts_i!`
    pub fn factorial_weight<F: crate::scalar::Field>(&self) -> F {
        self.counts
            .iter()
            .fold(F::one(), |acc, &c| acc.mul_ref(&crate::scalar::factorial(c)))
    }

    /// The set `d^j`: all multisets of `j` variables drawn with repetition, in
    /// lexicographic order of their sorted index lists.
    pub fn all_of_order(n: usize, j: u32) -> Vec<PartialMultiset> {
        let mut out: Vec<PartialMultiset> = Monomial::all_of_degree(n, j)
            .into_iter()
            .map(|m| PartialMultiset { counts: m.0 })
            .collect();
        out.sort();
        out
    }
}

impl Ord for PartialMultiset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for PartialMultiset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PartialMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.indices().iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "[{}]", names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrevlex_breaks_ties_on_last_variable() {
        // x1*x2^2 vs x1^2*x2
        assert_eq!(TermOrder::DegRevLex.cmp(&m(&[1, 2]), &m(&[2, 1])), Ordering::Less);
        // x1*x3 vs x2^2: equal degree, x1*x3 has the larger last exponent
        assert_eq!(TermOrder::DegRevLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(TermOrder::DegLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(TermOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn orders_are_multiplicative() {
        let mons = Monomial::all_up_to_degree(3, 3);
        for ord in [TermOrder::Lex, TermOrder::DegLex, TermOrder::DegRevLex] {
            for u in &mons {
                for v in &mons {
                    for w in mons.iter().step_by(3) {
                        if ord.cmp(u, v) == Ordering::Less {
                            assert_eq!(ord.cmp(&u.mul(w), &v.mul(w)), Ordering::Less);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(3, 3).len(), 10);
        assert_eq!(Monomial::all_up_to_degree(2, 3).len(), 10);
        let d3 = PartialMultiset::all_of_order(3, 3);
        assert_eq!(d3.len(), 10);
        assert_eq!(d3[0].indices(), vec![0, 0, 0]);
        assert_eq!(d3[1].indices(), vec![0, 0, 1]);
        assert_eq!(d3[4].indices(), vec![0, 1, 2]);
        assert_eq!(d3[9].indices(), vec![2, 2, 2]);
    }

    #[test]
    fn division() {
        assert_eq!(m(&[2, 1]).div(&m(&[1, 1])), Some(m(&[1, 0])));
        assert_eq!(m(&[2, 0]).div(&m(&[0, 1])), None);
    }
}
