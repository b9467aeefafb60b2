//! Exact scalar fields.
//!
//! Every algorithm in the crate is written against [`Field`], a small extension
//! of `num_traits::Num` with by-reference arithmetic. The provided instances are
//! the rational types `Ratio<T>` for signed integer `T`; the crate root fixes
//! `Ratio<BigInt>` as the default scalar.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, Zero};

/// An exact field of characteristic zero.
pub trait Field:
    Clone + Eq + Ord + Hash + Debug + Display + FromStr + Num + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add_ref(&a.mul_ref(b));
    }

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = self.sub_ref(&a.mul_ref(b));
    }

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Hash + Debug + Display + FromStr + From<i64> + Send + Sync + 'static,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = &*self + &(a * b);
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = &*self - &(a * b);
    }
}

/// Binomial coefficient as a field element.
pub fn binomial<F: Field>(n: u32, k: u32) -> F {
    F::from_int(binomial_u64(n, k) as i64)
}

pub fn binomial_u64(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `a * (a - 1) * ... * (a - k + 1)`
pub fn falling_factorial<F: Field>(a: u32, k: u32) -> F {
    let mut acc = F::one();
    for i in 0..k {
        acc = acc.mul_ref(&F::from_int((a - i) as i64));
    }
    acc
}

pub fn factorial<F: Field>(k: u32) -> F {
    falling_factorial(k, k)
}
