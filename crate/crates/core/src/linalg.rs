//! Vectors, sparse accumulation and dense matrices over a [`FieldSpec`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Sparse coefficient vector, sorted by index, no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Collects `index -> coefficient` contributions and emits a [`SparseVec`].
#[derive(Default)]
pub struct Accumulator {
    terms: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, index: usize, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(c) => *c += &coeff,
            None => {
                self.terms.insert(index, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, v: &[(usize, Scalar)], scale: &Scalar) {
        for (i, c) in v {
            self.add(*i, c * scale);
        }
    }

    pub fn finish(self) -> SparseVec {
        self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

pub fn basis_sparse(field: &FieldSpec, i: usize) -> SparseVec {
    vec![(i, field.one())]
}

pub fn to_dense(v: &[(usize, Scalar)], dim: usize, field: &FieldSpec) -> Vec<Scalar> {
    let mut out = vec![field.zero(); dim];
    for (i, c) in v {
        out[*i] += c;
    }
    out
}

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn scale_sparse(v: &[(usize, Scalar)], s: &Scalar) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, c)| (*i, c * s)).collect()
}

/// Dense `dst_dim × src_dim` matrix; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub field: FieldSpec,
    pub src_dim: usize,
    pub dst_dim: usize,
    data: Vec<Scalar>,
}

impl LinearMap {
    pub fn zeros(field: FieldSpec, dst_dim: usize, src_dim: usize) -> Self {
        LinearMap { field, src_dim, dst_dim, data: vec![field.zero(); src_dim * dst_dim] }
    }

    pub fn identity(field: FieldSpec, dim: usize) -> Self {
        let mut m = Self::zeros(field, dim, dim);
        for i in 0..dim {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a map from the images of the source basis vectors.
    pub fn from_columns(field: FieldSpec, dst_dim: usize, columns: &[SparseVec]) -> Result<Self> {
        let mut m = Self::zeros(field, dst_dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col {
                if *i >= dst_dim {
                    return Err(Error::IndexOutOfRange(format!("row {i} >= {dst_dim}")));
                }
                m.data[i * m.src_dim + j] += c;
            }
        }
        Ok(m)
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dst_dim = rows.len();
        let src_dim = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != src_dim) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(LinearMap { field, src_dim, dst_dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.data[row * self.src_dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Scalar) {
        self.data[row * self.src_dim + col] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.src_dim.max(1)).take(self.dst_dim)
    }

    pub fn column(&self, j: usize) -> SparseVec {
        (0..self.dst_dim)
            .filter_map(|i| {
                let c = self.get(i, j);
                (!c.is_zero()).then(|| (i, c.clone()))
            })
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![Vec::new(); self.src_dim];
        for i in 0..self.dst_dim {
            for (j, col) in cols.iter_mut().enumerate() {
                let c = self.get(i, j);
                if !c.is_zero() {
                    col.push((i, c.clone()));
                }
            }
        }
        cols
    }

    pub fn apply_sparse(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dst_dim];
        for (j, c) in v {
            for (i, o) in out.iter_mut().enumerate() {
                let m = self.get(i, *j);
                if !m.is_zero() {
                    o.add_product(m, c);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.apply_sparse(&to_sparse(v))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.src_dim != other.dst_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.dst_dim, self.src_dim, other.dst_dim, other.src_dim
            )));
        }
        let mine = self.columns();
        let cols: Vec<SparseVec> = other
            .columns()
            .iter()
            .map(|col| {
                let mut acc = Accumulator::new();
                for (k, c) in col {
                    acc.add_scaled(&mine[*k], c);
                }
                acc.finish()
            })
            .collect();
        LinearMap::from_columns(self.field, self.dst_dim, &cols)
    }

    pub fn transpose(&self) -> LinearMap {
        let mut t = LinearMap::zeros(self.field, self.src_dim, self.dst_dim);
        for i in 0..self.dst_dim {
            for j in 0..self.src_dim {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Kronecker product with lexicographic (left-major) index order.
    pub fn kronecker(&self, other: &LinearMap) -> LinearMap {
        let mut k = LinearMap::zeros(
            self.field,
            self.dst_dim * other.dst_dim,
            self.src_dim * other.src_dim,
        );
        for i in 0..self.dst_dim {
            for j in 0..self.src_dim {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.dst_dim {
                    for q in 0..other.src_dim {
                        let b = other.get(p, q);
                        if !b.is_zero() {
                            k.set(i * other.dst_dim + p, j * other.src_dim + q, a * b);
                        }
                    }
                }
            }
        }
        k
    }

    pub fn is_identity(&self) -> bool {
        self.src_dim == self.dst_dim
            && (0..self.dst_dim).all(|i| {
                (0..self.src_dim).all(|j| {
                    let c = self.get(i, j);
                    if i == j {
                        c.is_one()
                    } else {
                        c.is_zero()
                    }
                })
            })
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<LinearMap> {
        if self.src_dim != self.dst_dim {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.src_dim;
        let mut a: Vec<Vec<Scalar>> = self.rows().map(|r| r.to_vec()).collect();
        let mut inv: Vec<Vec<Scalar>> = LinearMap::identity(self.field, n).rows().map(|r| r.to_vec()).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv()?;
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x = &*x * &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    if !a[col][c].is_zero() {
                        let d = &factor * &a[col][c];
                        a[r][c] = &a[r][c] - &d;
                    }
                    if !inv[col][c].is_zero() {
                        let d = &factor * &inv[col][c];
                        inv[r][c] = &inv[r][c] - &d;
                    }
                }
            }
        }
        LinearMap::from_rows(self.field, inv)
    }

    /// Basis of the right kernel `{x : M x = 0}` from the reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.src_dim).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.src_dim];
                v[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&rref[row][f];
                }
                v
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn rref(&self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let mut a: Vec<Vec<Scalar>> = self.rows().map(|r| r.to_vec()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.src_dim {
            if row == self.dst_dim {
                break;
            }
            let Some(p) = (row..self.dst_dim).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].inv().expect("nonzero pivot");
            for x in a[row].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot = a[row].clone();
            for (r, target) in a.iter_mut().enumerate() {
                if r != row && !target[col].is_zero() {
                    let factor = target[col].clone();
                    for (t, p) in target[col..].iter_mut().zip(&pivot[col..]) {
                        if !p.is_zero() {
                            *t = &*t - &(&factor * p);
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }
}
