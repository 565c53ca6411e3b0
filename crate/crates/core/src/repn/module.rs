use serde::Serialize;

use crate::error::RepnError;
use crate::field::{Field, GaloisField};
use crate::matrix::{Matrix, Subspace};

/// A module given by the matrices of a set of algebra generators. Vectors are
/// rows, so `v ↦ v·g`; the algebra is the unital span of all products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixAlgebraModule {
    pub field: GaloisField,
    pub dim: usize,
    pub generators: Vec<Matrix<u32>>,
}

impl MatrixAlgebraModule {
    pub fn new(field: GaloisField, dim: usize, generators: Vec<Matrix<u32>>) -> Result<Self, RepnError> {
        if let Some(g) = generators.iter().find(|g| g.rows() != dim || g.cols() != dim) {
            return Err(RepnError::Dimension(format!("{}×{} generator on a {dim}-dimensional module", g.rows(), g.cols())));
        }
        Ok(Self { field, dim, generators })
    }

    /// The action on the subspace `s`, in the coordinates of its basis.
    pub fn submodule(&self, s: &Subspace<u32>) -> Self {
        let f = &self.field;
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let rows = s.basis().iter().map(|b| s.coordinates(f, &g.apply(f, b)).expect("subspace is invariant")).collect();
                Matrix::from_rows(rows, s.dim())
            })
            .collect();
        Self { field: f.clone(), dim: s.dim(), generators }
    }

    /// The action on `V / s`, with basis the unit vectors off the pivots of `s`.
    pub fn quotient(&self, s: &Subspace<u32>) -> Self {
        let f = &self.field;
        let free: Vec<usize> = (0..self.dim).filter(|c| !s.pivots().contains(c)).collect();
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let rows = free
                    .iter()
                    .map(|&k| {
                        let (res, _) = s.reduce(f, g.row(k));
                        free.iter().map(|&c| res[c]).collect()
                    })
                    .collect();
                Matrix::from_rows(rows, free.len())
            })
            .collect();
        Self { field: f.clone(), dim: free.len(), generators }
    }

    pub fn transposed(&self) -> Vec<Matrix<u32>> {
        self.generators.iter().map(Matrix::transpose).collect()
    }

    /// `n` copies of the module acted on by `M_n` of its algebra: the
    /// generators sit in the top-left slot, and the matrix units `E_{i,i+1}`,
    /// `E_{i+1,i}` permute the copies.
    pub fn amplify(&self, n: usize) -> Self {
        let f = &self.field;
        let id = Matrix::identity(f, self.dim);
        let mut generators: Vec<Matrix<u32>> = self.generators.iter().map(|g| Matrix::unit(f, n, 0, 0).kron(f, g)).collect();
        generators.push(Matrix::unit(f, n, 0, 0).kron(f, &id));
        for i in 0..n.saturating_sub(1) {
            generators.push(Matrix::unit(f, n, i, i + 1).kron(f, &id));
            generators.push(Matrix::unit(f, n, i + 1, i).kron(f, &id));
        }
        Self { field: f.clone(), dim: n * self.dim, generators }
    }
}

/// A basis of the algebra generated by some matrices, each element recorded
/// as the word in the generators that produced it.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    pub field: GaloisField,
    pub elements: Vec<Matrix<u32>>,
    pub words: Vec<Vec<usize>>,
}

impl AlgebraBasis {
    /// Spans the words in `generators` starting from the identity, stopping
    /// with an error once the dimension passes `cap`.
    pub fn generate(field: &GaloisField, dim: usize, generators: &[Matrix<u32>], cap: usize) -> Result<Self, RepnError> {
        let f = field;
        let flat = |m: &Matrix<u32>| m.to_rows().concat();
        let mut span = Subspace::new(dim * dim);
        let mut elements = vec![Matrix::identity(f, dim)];
        let mut words = vec![Vec::new()];
        span.insert(f, &flat(&elements[0]));
        let mut next = 0;
        while next < elements.len() {
            for (j, g) in generators.iter().enumerate() {
                let m = elements[next].mul(f, g);
                if span.insert(f, &flat(&m)) {
                    if elements.len() == cap {
                        return Err(RepnError::AlgebraTooLarge { dim: elements.len() + 1, cap });
                    }
                    let mut w = words[next].clone();
                    w.push(j);
                    elements.push(m);
                    words.push(w);
                }
            }
            next += 1;
        }
        Ok(Self { field: f.clone(), elements, words })
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Coordinates of `x` in the recorded basis, if `x` lies in the algebra.
    pub fn coordinates(&self, x: &Matrix<u32>) -> Option<Vec<u32>> {
        let f = &self.field;
        let mut rows: Vec<Vec<u32>> = self.elements.iter().map(|m| m.to_rows().concat()).collect();
        rows.push(x.to_rows().concat());
        let width = rows[0].len();
        let null = Matrix::from_rows(rows, width).left_nullspace(f);
        let last = self.elements.len();
        let sol = null.into_iter().find(|v| !f.is_zero(&v[last]))?;
        let scale = f.neg(&f.inv(&sol[last]).expect("nonzero"));
        Some(sol[..last].iter().map(|c| f.mul(c, &scale)).collect())
    }

    /// Evaluates a combination of basis words on other generator matrices.
    pub fn evaluate(&self, coeffs: &[u32], generators: &[Matrix<u32>], dim: usize) -> Matrix<u32> {
        let f = &self.field;
        let mut out = Matrix::zeros(f, dim, dim);
        for (c, w) in coeffs.iter().zip(&self.words) {
            if f.is_zero(c) {
                continue;
            }
            let m = w.iter().fold(Matrix::identity(f, dim), |acc, &j| acc.mul(f, &generators[j]));
            out = out.add(f, &m.scale(f, c));
        }
        out
    }

    /// The algebra acting on itself by right multiplication.
    pub fn regular_module(&self, generators: &[Matrix<u32>]) -> MatrixAlgebraModule {
        let f = &self.field;
        let n = self.dim();
        let gens = generators
            .iter()
            .map(|g| {
                let rows = self.elements.iter().map(|b| self.coordinates(&b.mul(f, g)).expect("algebra is closed")).collect();
                Matrix::from_rows(rows, n)
            })
            .collect();
        MatrixAlgebraModule { field: f.clone(), dim: n, generators: gens }
    }
}

/// Factor dimensions as reported in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorSummary {
    pub dim: usize,
    pub multiplicity: usize,
    pub endo_dim: usize,
}
