use std::collections::HashMap;

use crate::poly::Monomial;

/// The monomial semigroup generated by a list of leading monomials, with
/// memoized membership.
#[derive(Clone, Debug)]
pub struct LeadSemigroup {
    gens: Vec<Monomial>,
    memo: HashMap<Monomial, Option<Vec<u32>>>,
}

impl LeadSemigroup {
    /// The generators must all differ from the unit monomial.
    pub fn new(gens: Vec<Monomial>) -> Self {
        assert!(gens.iter().all(|m| !m.is_one()), "unit monomial as semigroup generator");
        LeadSemigroup { gens, memo: HashMap::new() }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    /// An exponent vector `e` with `prod gens[i]^e[i] = m`, preferring early
    /// generators, or `None` when `m` is not in the semigroup.
    pub fn factor(&mut self, m: &Monomial) -> Option<Vec<u32>> {
        if m.is_one() {
            return Some(vec![0; self.gens.len()]);
        }
        if let Some(hit) = self.memo.get(m) {
            return hit.clone();
        }
        let mut found = None;
        for i in 0..self.gens.len() {
            if let Some(rest) = m.div(&self.gens[i]) {
                if let Some(mut e) = self.factor(&rest) {
                    e[i] += 1;
                    found = Some(e);
                    break;
                }
            }
        }
        self.memo.insert(m.clone(), found.clone());
        found
    }

    pub fn contains(&mut self, m: &Monomial) -> bool {
        self.factor(m).is_some()
    }

    /// Every exponent vector realizing `m`, at most `limit` of them.
    pub fn factorizations(&mut self, m: &Monomial, limit: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.gens.len()];
        self.collect(m, 0, &mut cur, &mut out, limit);
        out
    }

    fn collect(&mut self, m: &Monomial, from: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if m.is_one() {
            out.push(cur.clone());
            return;
        }
        if !self.contains(m) {
            return;
        }
        // generators are used in non-decreasing index order, so each vector
        // is produced once
        for i in from..self.gens.len() {
            if let Some(rest) = m.div(&self.gens[i]) {
                cur[i] += 1;
                self.collect(&rest, i, cur, out, limit);
                cur[i] -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn numerical_semigroup_of_a1() {
        let mut s = LeadSemigroup::new(vec![mono(&[3]), mono(&[4]), mono(&[5])]);
        let missing: Vec<u32> = (0..12).filter(|&d| !s.contains(&mono(&[d]))).collect();
        assert_eq!(missing, vec![1, 2]);
        assert_eq!(s.factor(&mono(&[7])), Some(vec![1, 1, 0]));
        assert_eq!(s.factorizations(&mono(&[8]), 10).len(), 2);
    }

    #[test]
    fn bivariate_membership() {
        let mut s = LeadSemigroup::new(vec![mono(&[0, 1]), mono(&[2, 0]), mono(&[1, 2]), mono(&[3, 0])]);
        assert!(!s.contains(&mono(&[1, 0])));
        assert!(!s.contains(&mono(&[1, 1])));
        assert!(s.contains(&mono(&[1, 3])));
        assert!(s.contains(&mono(&[5, 1])));
    }
}
