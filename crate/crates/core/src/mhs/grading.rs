use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Space, Subspace};
use crate::scalar::Scalar;

/// A semisimple operator with integer eigenvalues, stored through an
/// eigenbasis so that eigencomponents of other operators are cheap.
#[derive(Clone, Debug)]
pub struct Grading<S> {
    space: Space,
    basis: Matrix<S>,
    basis_inv: Matrix<S>,
    labels: Vec<i32>,
    operator: Matrix<S>,
}

impl<S: Scalar> Grading<S> {
    /// The grading acting by `k` on each listed subspace; the subspaces must
    /// form a direct sum decomposition of the whole space.
    pub fn from_pieces<'a>(space: Space, pieces: impl IntoIterator<Item = (i32, &'a Subspace<S>)>) -> Result<Self> {
        let mut cols = Vec::new();
        let mut labels = Vec::new();
        for (k, sub) in pieces {
            for v in sub.basis() {
                cols.push(v.clone());
                labels.push(k);
            }
        }
        if cols.len() != space.dim {
            return Err(Error::Singular);
        }
        let basis = Matrix::from_columns(space.dim, &cols);
        let basis_inv = basis.inverse(space.eps)?;
        Ok(Self::from_eigenbasis(space, basis, basis_inv, labels))
    }

    fn from_eigenbasis(space: Space, basis: Matrix<S>, basis_inv: Matrix<S>, labels: Vec<i32>) -> Self {
        let n = space.dim;
        let d = Matrix::from_fn(n, n, |i, j| if i == j { S::from_i64(labels[i] as i64) } else { S::zero() });
        let operator = &(&basis * &d) * &basis_inv;
        Grading { space, basis, basis_inv, labels, operator }
    }

    pub fn operator(&self) -> &Matrix<S> {
        &self.operator
    }

    pub fn eigenvalues(&self) -> BTreeSet<i32> {
        self.labels.iter().copied().collect()
    }

    /// Multiplicity of the eigenvalue k.
    pub fn multiplicity(&self, k: i32) -> usize {
        self.labels.iter().filter(|&&l| l == k).count()
    }

    pub fn eigenspace(&self, k: i32) -> Subspace<S> {
        let gens: Vec<Vec<S>> =
            (0..self.labels.len()).filter(|&i| self.labels[i] == k).map(|i| self.basis.column(i)).collect();
        Subspace::span(self.space, &gens).expect("same dimension")
    }

    pub fn projector(&self, k: i32) -> Matrix<S> {
        let n = self.space.dim;
        let d = Matrix::from_fn(n, n, |i, j| if i == j && self.labels[i] == k { S::one() } else { S::zero() });
        &(&self.basis * &d) * &self.basis_inv
    }

    /// Coordinates of an operator in the eigenbasis.
    pub fn in_eigenbasis(&self, op: &Matrix<S>) -> Matrix<S> {
        &(&self.basis_inv * op) * &self.basis
    }

    /// The part of `op` on which ad(Y) acts by `shift`, i.e. Σ_k P_{k+shift}·op·P_k.
    pub fn component(&self, op: &Matrix<S>, shift: i32) -> Matrix<S> {
        let mut c = self.in_eigenbasis(op);
        let n = self.space.dim;
        for i in 0..n {
            for j in 0..n {
                if self.labels[i] - self.labels[j] != shift {
                    c[(i, j)] = S::zero();
                }
            }
        }
        &(&self.basis * &c) * &self.basis_inv
    }

    /// Shifts present in `op`, ignoring entries negligible at `eps`.
    pub fn shifts(&self, op: &Matrix<S>, eps: f64) -> BTreeSet<i32> {
        let c = self.in_eigenbasis(op);
        let scale = c.max_abs();
        let n = self.space.dim;
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if !c[(i, j)].negligible(scale.max(1.0), eps) {
                    out.insert(self.labels[i] - self.labels[j]);
                }
            }
        }
        out
    }

    /// The spread max − min of the eigenvalues.
    pub fn spread(&self) -> i32 {
        match (self.labels.iter().min(), self.labels.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// Ad(g)·Y for invertible g.
    pub fn conjugated(&self, g: &Matrix<S>, g_inv: &Matrix<S>) -> Self {
        Self::from_eigenbasis(self.space, g * &self.basis, &self.basis_inv * g_inv, self.labels.clone())
    }
}
