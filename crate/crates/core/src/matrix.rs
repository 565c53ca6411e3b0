//! Dense matrices over exact fields. Vectors are rows and act on the right.

use crate::field::Field;
use crate::poly::{self, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Self { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    /// The matrix unit with a one at `(i, j)`.
    pub fn unit<F: Field<Elem = E>>(f: &F, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        m.set(i, j, f.one());
        m
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in sum");
        Self::from_fn(self.rows, self.cols, |i, j| f.add(self.get(i, j), other.get(i, j)))
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in difference");
        Self::from_fn(self.rows, self.cols, |i, j| f.sub(self.get(i, j), other.get(i, j)))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| f.mul(c, self.get(i, j)))
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            f.mul(self.get(i / other.rows, j / other.cols), other.get(i % other.rows, j % other.cols))
        })
    }

    /// Block-diagonal embedding of `self` in the top-left corner of an
    /// `n × n` zero matrix.
    pub fn embed<F: Field<Elem = E>>(&self, f: &F, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i < self.rows && j < self.cols { self.get(i, j).clone() } else { f.zero() })
    }

    /// `v · self`.
    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![f.zero(); self.cols];
        for (k, vk) in v.iter().enumerate() {
            if f.is_zero(vk) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(o, &f.mul(vk, self.get(k, j)));
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in 0..m.cols {
                let v = f.mul(&inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{x : self · x = 0}` as vectors.
    pub fn nullspace<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![f.zero(); self.cols];
                x[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(r.get(i, fc));
                }
                x
            })
            .collect()
    }

    /// Basis of `{v : v · self = 0}`.
    pub fn left_nullspace<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        self.transpose().nullspace(f)
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    /// Characteristic polynomial `det(x·I − self)`, monic, via reduction to
    /// upper Hessenberg form.
    pub fn charpoly<F: Field<Elem = E>>(&self, f: &F) -> Poly<E> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !f.is_zero(h.get(i, m - 1))) else { continue };
            h.swap_rows(i, m);
            h.swap_cols(i, m);
            let inv = f.inv(h.get(m, m - 1)).expect("nonzero pivot");
            for k in m + 1..n {
                let u = f.mul(h.get(k, m - 1), &inv);
                if f.is_zero(&u) {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(k, j), &f.mul(&u, h.get(m, j)));
                    h.set(k, j, v);
                }
                for i2 in 0..n {
                    let v = f.add(h.get(i2, m), &f.mul(&u, h.get(i2, k)));
                    h.set(i2, m, v);
                }
            }
        }
        // p[m] is the characteristic polynomial of the leading m×m block.
        let mut p: Vec<Poly<E>> = vec![poly::one(f)];
        for m in 1..=n {
            let lin = poly::trim(f, vec![f.neg(h.get(m - 1, m - 1)), f.one()]);
            let mut next = poly::mul(f, &lin, &p[m - 1]);
            let mut prod = f.one();
            for i in (1..m).rev() {
                prod = f.mul(&prod, h.get(i, i - 1));
                let c = f.mul(&prod, h.get(i - 1, m - 1));
                let term: Poly<E> = p[i - 1].iter().map(|a| f.mul(a, &c)).collect();
                next = poly::sub(f, &next, &term);
            }
            p.push(next);
        }
        p.pop().expect("at least the constant polynomial")
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly<F: Field<Elem = E>>(&self, f: &F, p: &[E]) -> Self {
        let n = self.rows;
        let id = Self::identity(f, n);
        p.iter().rev().fold(Self::zeros(f, n, n), |acc, c| acc.mul(f, self).add(f, &id.scale(f, c)))
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| f.format(x)).collect()).collect()
    }
}

/// A subspace held as a semi-echelon basis: each row has a leading one at its
/// pivot and zeros at the pivots of earlier rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<E> {
    dim: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn new(ambient: usize) -> Self {
        Self { dim: ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after reduction, with the coefficients used on each
    /// basis row.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> (Vec<E>, Vec<E>) {
        let mut v = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !f.is_zero(&c) {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
            coeffs.push(c);
        }
        (v, coeffs)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).0.iter().all(|x| f.is_zero(x))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let (res, coeffs) = self.reduce(f, v);
        res.iter().all(|x| f.is_zero(x)).then_some(coeffs)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        let (mut res, _) = self.reduce(f, v);
        let Some(p) = res.iter().position(|x| !f.is_zero(x)) else { return false };
        let inv = f.inv(&res[p]).expect("nonzero");
        for x in res.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push(res);
        self.pivots.push(p);
        true
    }

    /// The smallest subspace containing `seeds` and closed under right
    /// multiplication by every generator.
    pub fn spin<F: Field<Elem = E>>(f: &F, ambient: usize, seeds: &[Vec<E>], gens: &[Matrix<E>]) -> Self {
        let mut s = Self::new(ambient);
        for v in seeds {
            s.insert(f, v);
        }
        let mut next = 0;
        while next < s.rows.len() {
            let v = s.rows[next].clone();
            for g in gens {
                let w = g.apply(f, &v);
                s.insert(f, &w);
            }
            next += 1;
        }
        s
    }

    pub fn to_matrix(&self) -> Matrix<E> {
        Matrix::from_rows(self.rows.clone(), self.dim)
    }
}
