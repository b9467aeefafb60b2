//! Truncated Taylor algebras at finitely many points.
//!
//! For points `p_1, …, p_k` and orders `r_1, …, r_k` the map
//! `K[x] → ⊕ K[x]/m_{p_i}^{r_i + 1}` is a surjective algebra morphism. Every
//! functional in this crate only sees such jets, so questions about products
//! in a subalgebra reduce to finite-dimensional linear algebra here.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functional::LinearFunctional;
use crate::linalg::EchelonBasis;
use crate::poly::{Monomial, Point, Polynomial};
use crate::scalar::Field;

/// Multiplication table of `K[x]/m^{r+1}` in the monomial basis.
#[derive(Debug)]
struct Table {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `prod[i]` lists `(j, k)` with `monos[i] * monos[j] = monos[k]`.
    prod: Vec<Vec<(usize, usize)>>,
}

impl Table {
    fn new(n: usize, order: u32) -> Self {
        let monos = Monomial::all_up_to_degree(n, order);
        let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let prod = monos
            .iter()
            .map(|a| {
                monos
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| a.degree() + b.degree() <= order)
                    .map(|(j, b)| (j, index[&a.mul(b)]))
                    .collect()
            })
            .collect();
        Table { monos, index, prod }
    }
}

#[derive(Debug)]
struct Block<F> {
    point: Point<F>,
    order: u32,
    offset: usize,
    table: Arc<Table>,
}

/// `⊕_i K[x]/m_{p_i}^{r_i+1}`, coordinates are Taylor coefficients of
/// `(x - p_i)^b` for `|b| ≤ r_i`, block by block, each block ascending by degree.
#[derive(Debug)]
pub struct JetSpace<F> {
    n: usize,
    blocks: Vec<Block<F>>,
    width: usize,
}

impl<F: Field> JetSpace<F> {
    /// Points must be distinct and of dimension `n`.
    pub fn new(n: usize, points: &[(Point<F>, u32)]) -> Result<Self> {
        let mut tables: HashMap<u32, Arc<Table>> = HashMap::new();
        let mut blocks = Vec::with_capacity(points.len());
        let mut offset = 0;
        for (p, r) in points {
            if p.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.nvars() });
            }
            if blocks.iter().any(|b: &Block<F>| &b.point == p) {
                return Err(Error::InvalidPointSet(format!("repeated point {p}")));
            }
            let table = tables.entry(*r).or_insert_with(|| Arc::new(Table::new(n, *r))).clone();
            let len = table.monos.len();
            blocks.push(Block { point: p.clone(), order: *r, offset, table });
            offset += len;
        }
        Ok(JetSpace { n, blocks, width: offset })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> impl Iterator<Item = &Point<F>> {
        self.blocks.iter().map(|b| &b.point)
    }

    pub fn block_of(&self, p: &Point<F>) -> Option<usize> {
        self.blocks.iter().position(|b| &b.point == p)
    }

    pub fn one(&self) -> Vec<F> {
        let mut v = vec![F::zero(); self.width];
        for b in &self.blocks {
            v[b.offset] = F::one();
        }
        v
    }

    pub fn scalar(&self, c: &F) -> Vec<F> {
        self.one().into_iter().map(|x| x.mul_ref(c)).collect()
    }

    pub fn jet(&self, f: &Polynomial<F>) -> Result<Vec<F>> {
        let mut v = vec![F::zero(); self.width];
        for b in &self.blocks {
            let g = f.translate(&b.point)?;
            for (m, c) in g.terms() {
                if m.degree() <= b.order {
                    v[b.offset + b.table.index[m]] = c.clone();
                }
            }
        }
        Ok(v)
    }

    /// The value `f(p)` of the jet at block `k`.
    pub fn value<'a>(&self, u: &'a [F], k: usize) -> &'a F {
        &u[self.blocks[k].offset]
    }

    pub fn mul(&self, u: &[F], v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.width];
        for b in &self.blocks {
            let o = b.offset;
            for (i, row) in b.table.prod.iter().enumerate() {
                let ui = &u[o + i];
                if ui.is_zero() {
                    continue;
                }
                for &(j, k) in row {
                    out[o + k].add_mul(ui, &v[o + j]);
                }
            }
        }
        out
    }

    pub fn sub(&self, u: &[F], v: &[F]) -> Vec<F> {
        u.iter().zip(v).map(|(a, b)| a.sub_ref(b)).collect()
    }

    /// Coordinates `ℓ` with `L(f) = ℓ · jet(f)`, or `None` when `L` involves
    /// a point or an order the space does not carry.
    pub fn functional_row(&self, l: &LinearFunctional<F>) -> Option<Vec<F>> {
        let mut row = vec![F::zero(); self.width];
        for a in l.atoms() {
            let b = &self.blocks[self.block_of(&a.point)?];
            let k = *b.table.index.get(&a.partials.as_monomial())?;
            let w = a.coeff.mul_ref(&a.partials.factorial_weight());
            row[b.offset + k] = row[b.offset + k].add_ref(&w);
        }
        Some(row)
    }

    /// Every coordinate as a candidate functional: `(block, monomial)` for
    /// monomials of order `1..=r` in each block.
    pub fn coordinates(&self) -> Vec<(usize, &Monomial)> {
        let mut out = Vec::new();
        for (k, b) in self.blocks.iter().enumerate() {
            for m in &b.table.monos {
                if !m.is_one() {
                    out.push((k, m));
                }
            }
        }
        out
    }

    pub fn column(&self, block: usize, m: &Monomial) -> usize {
        let b = &self.blocks[block];
        b.offset + b.table.index[m]
    }

    pub fn block_point(&self, block: usize) -> &Point<F> {
        &self.blocks[block].point
    }

    /// The smallest subspace containing `seeds` and closed under
    /// multiplication by every element of `multipliers`.
    pub fn closure(&self, seeds: Vec<Vec<F>>, multipliers: &[Vec<F>]) -> Closure<F> {
        let mut basis = EchelonBasis::new(self.width);
        let mut queue = Vec::new();
        for s in seeds {
            if let Some(p) = basis.insert_pivot(s) {
                queue.push(p);
            }
        }
        while let Some(p) = queue.pop() {
            let v = basis.row(p).expect("stored row").to_vec();
            for h in multipliers {
                if let Some(q) = basis.insert_pivot(self.mul(&v, h)) {
                    queue.push(q);
                }
            }
        }
        Closure { basis }
    }

    /// Jets of the subalgebra generated by `gens`: the closure of `{1} ∪ gens`.
    pub fn algebra_image(&self, gens: &[Polynomial<F>]) -> Result<Closure<F>> {
        let jets: Vec<Vec<F>> = gens.iter().map(|g| self.jet(g)).collect::<Result<_>>()?;
        let mut seeds = vec![self.one()];
        seeds.extend(jets.iter().cloned());
        Ok(self.closure(seeds, &jets))
    }

    /// Jets of `m_α(A)` and `m_α(A)²` for `A = K[gens]`, where `α` is any point
    /// at which the generators take the values `values`.
    pub fn maximal_ideal_images(&self, gens: &[Polynomial<F>], values: &[F]) -> Result<(Closure<F>, Closure<F>)> {
        let h: Vec<Vec<F>> = gens
            .iter()
            .zip(values)
            .map(|(g, c)| Ok(self.sub(&self.jet(g)?, &self.scalar(c))))
            .collect::<Result<_>>()?;
        let mut seeds = Vec::new();
        for i in 0..h.len() {
            for j in i..h.len() {
                seeds.push(self.mul(&h[i], &h[j]));
            }
        }
        let square = self.closure(seeds, &h);
        let mut ideal = square.clone();
        for v in h {
            ideal.basis.insert(v);
        }
        Ok((ideal, square))
    }
}

/// A subspace of a [`JetSpace`] in echelon form.
#[derive(Clone, Debug)]
pub struct Closure<F> {
    pub basis: EchelonBasis<F>,
}

impl<F: Field> Closure<F> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn vectors(&self) -> Vec<Vec<F>> {
        self.basis.rows().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::Rational;

    type Q = Rational;

    fn poly(s: &str, n: usize) -> Polynomial<Q> {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn jet_map_is_multiplicative() {
        let pts = [(Point::from_ints(&[1, -1]), 3), (Point::from_ints(&[0, 2]), 2)];
        let js = JetSpace::<Q>::new(2, &pts).unwrap();
        let f = poly("x1^2*x2 - 3*x2 + 1/2", 2);
        let g = poly("x1*x2^3 + x1 - 7", 2);
        let prod = js.mul(&js.jet(&f).unwrap(), &js.jet(&g).unwrap());
        assert_eq!(prod, js.jet(&(&f * &g)).unwrap());
        assert_eq!(js.width(), 10 + 6);
    }

    #[test]
    fn functional_rows_evaluate() {
        use crate::poly::PartialMultiset;
        let p = Point::from_ints(&[2]);
        let js = JetSpace::<Q>::new(1, &[(p.clone(), 3)]).unwrap();
        let l = LinearFunctional::partial_at(&p, PartialMultiset::from_indices(1, &[0, 0]), Q::from_int(1));
        let f = poly("x^3", 1);
        let row = js.functional_row(&l).unwrap();
        assert_eq!(crate::linalg::dot(&row, &js.jet(&f).unwrap()), l.apply(&f).unwrap());
        let high = LinearFunctional::partial_at(&p, PartialMultiset::from_indices(1, &[0, 0, 0, 0]), Q::from_int(1));
        assert!(js.functional_row(&high).is_none());
    }

    #[test]
    fn image_of_a1_in_low_jets() {
        let o = Point::from_ints(&[0]);
        let js = JetSpace::<Q>::new(1, &[(o, 5)]).unwrap();
        let gens = [poly("x^3", 1), poly("x^4", 1), poly("x^5", 1)];
        assert_eq!(js.algebra_image(&gens).unwrap().dim(), 4);
        let (m, m2) = js.maximal_ideal_images(&gens, &vec![Q::from_int(0); 3]).unwrap();
        assert_eq!((m.dim(), m2.dim()), (3, 0));
    }
}
