use std::fmt;

use crate::scalar::Field;

/// A point of K^n. Ordered lexicographically by coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Point<F>(pub Vec<F>);

impl<F: Field> Point<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Point(coords)
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![F::zero(); n])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[F] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Point<F>) -> Point<F> {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a.add_ref(b)).collect())
    }

    pub fn neg(&self) -> Point<F> {
        Point(self.0.iter().map(|a| a.neg_ref()).collect())
    }
}

impl<F: Field> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
