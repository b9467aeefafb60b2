//! Exact dense linear algebra over a [`Field`].

use std::collections::BTreeMap;

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![F::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = F::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(cols: usize, data: Vec<Vec<F>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: data.len(), cols, data }
    }

    pub fn from_ints(data: &[&[i64]]) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        Self::from_rows(cols, data.iter().map(|r| r.iter().map(|&v| F::from_int(v)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i]
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        self.data.iter().map(|r| dot(r, v)).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv();
            for v in m[r].iter_mut().skip(c) {
                *v = v.mul_ref(&inv);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                        x.sub_mul(&f, y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix { rows: self.rows, cols: self.cols, data: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = EchelonBasis::new(self.cols);
        for r in &self.data {
            e.insert(r.clone());
        }
        e.dim()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column,
    /// with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// A particular solution of `M x = b`, free variables set to zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_rows(
            self.cols + 1,
            self.data.iter().zip(b).map(|(r, v)| r.iter().cloned().chain(std::iter::once(v.clone())).collect()).collect(),
        );
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.data[i][self.cols].clone();
        }
        Some(x)
    }
}

fn kernel_from_rref<F: Field>(r: &Matrix<F>, pivots: &[usize]) -> Vec<Vec<F>> {
    let mut is_pivot = vec![None; r.cols];
    for (i, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(i);
    }
    let mut out = Vec::new();
    for free in 0..r.cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![F::zero(); r.cols];
        v[free] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = r.data[i][free].neg_ref();
        }
        out.push(v);
    }
    out
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_mul(x, y);
    }
    acc
}

/// Rank, right-kernel basis and reduced row echelon form of `m`.
#[derive(Clone, Debug)]
pub struct LinearAlgebraSummary<F> {
    pub rank: usize,
    pub kernel: Vec<Vec<F>>,
    pub rref: Matrix<F>,
    pub pivots: Vec<usize>,
}

pub fn exact_linear_algebra<F: Field>(m: &Matrix<F>) -> LinearAlgebraSummary<F> {
    let (rref, pivots) = m.rref();
    let kernel = kernel_from_rref(&rref, &pivots);
    LinearAlgebraSummary { rank: pivots.len(), kernel, rref, pivots }
}

/// Incrementally built row-echelon basis of a subspace of `F^width`.
///
/// Each stored row has a 1 in its pivot column and zeros in all columns before
/// it. Rows are not back-reduced against each other.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F> {
    width: usize,
    rows: BTreeMap<usize, Vec<F>>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(width: usize) -> Self {
        EchelonBasis { width, rows: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<F>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` in place; afterwards `v` is zero iff it was in the span.
    pub fn reduce(&self, v: &mut [F]) {
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row).skip(p) {
                x.sub_mul(&f, y);
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the basis; returns `false` when it was already in the span.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        self.insert_reduced(v)
    }

    /// Like [`insert`](Self::insert) for a vector already reduced by `self`.
    pub fn insert_reduced(&mut self, v: Vec<F>) -> bool {
        self.insert_reduced_pivot(v).is_some()
    }

    /// Like [`insert`](Self::insert), returning the pivot of the new row.
    pub fn insert_pivot(&mut self, mut v: Vec<F>) -> Option<usize> {
        self.reduce(&mut v);
        self.insert_reduced_pivot(v)
    }

    fn insert_reduced_pivot(&mut self, mut v: Vec<F>) -> Option<usize> {
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = v[p].inv();
        for x in v.iter_mut().skip(p) {
            *x = x.mul_ref(&inv);
        }
        self.rows.insert(p, v);
        Some(p)
    }

    /// The stored row with pivot `p`.
    pub fn row(&self, p: usize) -> Option<&[F]> {
        self.rows.get(&p).map(|r| r.as_slice())
    }

    /// Fully reduced basis: every pivot column is zero in all other rows.
    pub fn reduced_rows(&self) -> Vec<(usize, Vec<F>)> {
        let mut rows: Vec<(usize, Vec<F>)> = self.rows.iter().map(|(&p, r)| (p, r.clone())).collect();
        for i in (0..rows.len()).rev() {
            let (p, pivot_row) = rows[i].clone();
            for row in rows.iter_mut().take(i) {
                if !row.1[p].is_zero() {
                    let f = row.1[p].clone();
                    for (x, y) in row.1.iter_mut().zip(&pivot_row).skip(p) {
                        x.sub_mul(&f, y);
                    }
                }
            }
        }
        rows
    }
}
