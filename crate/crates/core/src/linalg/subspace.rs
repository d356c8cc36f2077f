use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::matrix::{row_reduce, row_reduce_against, Matrix};
use crate::scalar::Scalar;

/// Default relative tolerance for rank decisions on the float backend.
pub const DEFAULT_EPS: f64 = 1e-9;

/// A vector space ℚⁿ with its distinguished basis, together with the rank
/// tolerance used by every subspace built inside it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Space {
    pub dim: usize,
    pub eps: f64,
}

impl Space {
    pub fn new(dim: usize) -> Self {
        Space { dim, eps: DEFAULT_EPS }
    }

    pub fn with_eps(dim: usize, eps: f64) -> Self {
        Space { dim, eps }
    }

    pub fn basis_vector<S: Scalar>(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim];
        v[i] = S::one();
        v
    }

    pub(crate) fn check(&self, other: &Space) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }
}

/// A subspace of Vℂ, stored by its reduced row-echelon basis.
#[derive(Clone)]
pub struct Subspace<S> {
    space: Space,
    basis: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn span(space: Space, generators: &[Vec<S>]) -> Result<Self> {
        if let Some(v) = generators.iter().find(|v| v.len() != space.dim) {
            return Err(Error::DimensionMismatch { expected: space.dim, found: v.len() });
        }
        Ok(Self::span_unchecked(space, generators.to_vec()))
    }

    pub(crate) fn span_unchecked(space: Space, generators: Vec<Vec<S>>) -> Self {
        let (basis, pivots) = row_reduce(generators, space.dim, space.eps);
        Subspace { space, basis, pivots }
    }

    pub fn zero(space: Space) -> Self {
        Subspace { space, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(space: Space) -> Self {
        let basis = (0..space.dim).map(|i| space.basis_vector(i)).collect();
        Subspace { space, basis, pivots: (0..space.dim).collect() }
    }

    /// Span of the listed distinguished basis vectors.
    pub fn coordinate(space: Space, indices: &[usize]) -> Self {
        let gens = indices.iter().map(|&i| space.basis_vector(i)).collect();
        Self::span_unchecked(space, gens)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// The subspace re-spanned on another backend, with tolerance `eps`.
    pub fn cast<T: Scalar>(&self, eps: f64) -> Subspace<T> {
        let gens = self.basis.iter().map(|v| v.iter().map(|x| T::from_c64(x.to_c64())).collect()).collect();
        Subspace::span_unchecked(Space::with_eps(self.space.dim, eps), gens)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.space.dim
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an n × dim matrix.
    pub fn basis_matrix(&self) -> Matrix<S> {
        Matrix::from_columns(self.space.dim, &self.basis)
    }

    /// v minus its echelon reduction against the basis; zero iff v ∈ self.
    pub fn residual(&self, v: &[S]) -> (Vec<S>, f64) {
        let mut r = v.to_vec();
        let mut scale = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            let row_max = row.iter().map(|x| x.abs()).fold(0.0, f64::max);
            scale = scale.max(c.abs() * row_max);
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = x.clone() - c.clone() * b.clone();
                }
            }
            r[p] = S::zero();
        }
        (r, scale)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.space.dim, "vector length");
        let (r, scale) = self.residual(v);
        r.iter().all(|x| x.negligible(scale, self.space.eps))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.dim() <= other.dim() && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        if self.space.dim != other.space.dim || self.dim() != other.dim() {
            return false;
        }
        if S::EXACT {
            self.pivots == other.pivots && self.basis == other.basis
        } else {
            self.is_subspace_of(other) && other.is_subspace_of(self)
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.space.check(&other.space)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let gens = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::span_unchecked(self.space, gens))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.space.check(&other.space)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        // Columns [A | −B]; a kernel vector (x, y) gives the common vector Σ xᵢ aᵢ.
        let n = self.space.dim;
        let (da, db) = (self.dim(), other.dim());
        let m = Matrix::from_fn(n, da + db, |i, j| {
            if j < da {
                self.basis[j][i].clone()
            } else {
                -other.basis[j - da][i].clone()
            }
        });
        let gens = m
            .kernel(self.space.eps)
            .into_iter()
            .map(|k| {
                let mut v = vec![S::zero(); n];
                for (c, row) in k.iter().take(da).zip(&self.basis) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, b) in v.iter_mut().zip(row) {
                        *x = x.clone() + c.clone() * b.clone();
                    }
                }
                v
            })
            .collect();
        Ok(Self::span_unchecked(self.space, gens))
    }

    pub fn conj(&self) -> Self {
        let gens = self.basis.iter().map(|v| v.iter().map(|x| x.conj()).collect()).collect();
        Self::span_unchecked(self.space, gens)
    }

    /// Whether the subspace is defined over the reals, i.e. fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.conj().same_as(self)
    }

    /// Image under a linear map into `target`.
    pub fn image(&self, map: &Matrix<S>, target: Space) -> Self {
        assert_eq!(map.cols(), self.space.dim, "map source");
        assert_eq!(map.rows(), target.dim, "map target");
        let gens = self.basis.iter().map(|v| map.apply(v)).collect();
        let reference = map.max_abs() * self.basis.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
        let (basis, pivots) = row_reduce_against(gens, target.dim, target.eps, reference);
        Subspace { space: target, basis, pivots }
    }

    /// {v ∈ source : map·v ∈ self}.
    pub fn preimage(&self, map: &Matrix<S>, source: Space) -> Self {
        assert_eq!(map.rows(), self.space.dim, "map target");
        assert_eq!(map.cols(), source.dim, "map source");
        let (_, proj) = quotient_map(&self.space, self);
        let k = (&proj * map).kernel(source.eps);
        Self::span_unchecked(source, k)
    }

    /// The annihilator {φ : φ(self) = 0} inside the dual space, in the dual basis.
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.space);
        }
        let k = Matrix::from_rows(&self.basis).kernel(self.space.eps);
        Self::span_unchecked(self.space, k)
    }

    /// Coordinates of v ∈ self in the echelon basis.
    pub fn coordinates(&self, v: &[S]) -> Vec<S> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }
}

/// Quotient V/S with the section spanned by non-pivot basis vectors in
/// ascending order. Returns the quotient space and the projection matrix.
pub fn quotient_map<S: Scalar>(space: &Space, sub: &Subspace<S>) -> (Space, Matrix<S>) {
    let free: Vec<usize> = (0..space.dim).filter(|i| !sub.pivots.contains(i)).collect();
    let target = Space::with_eps(free.len(), space.eps);
    let cols: Vec<Vec<S>> = (0..space.dim)
        .map(|j| {
            let (r, _) = sub.residual(&space.basis_vector::<S>(j));
            free.iter().map(|&f| r[f].clone()).collect()
        })
        .collect();
    (target, Matrix::from_columns(free.len(), &cols))
}

/// Indices of the basis vectors used as the quotient section.
pub fn quotient_section<S: Scalar>(space: &Space, sub: &Subspace<S>) -> Vec<usize> {
    (0..space.dim).filter(|i| !sub.pivots.contains(i)).collect()
}

impl<S: Scalar> PartialEq for Subspace<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl<S: fmt::Debug> fmt::Debug for Subspace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}) [", self.basis.len(), self.space.dim)?;
        for v in &self.basis {
            let s: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
            write!(f, " ({})", s.join(", "))?;
        }
        write!(f, " ]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gauss;

    fn q(n: i64) -> Gauss {
        Gauss::from_i64(n)
    }

    fn v(xs: &[i64]) -> Vec<Gauss> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn independent_lines_meet_in_zero() {
        let s = Space::new(2);
        let a = Subspace::span(s, &[v(&[1, 0])]).unwrap();
        let b = Subspace::span(s, &[v(&[0, 1])]).unwrap();
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(s));
    }

    #[test]
    fn intersection_by_brute_force() {
        // Common vectors x(e1+e2) + y e3 = u(e1+e2) + w e1 force w = 0 and y = 0.
        let s = Space::new(3);
        let a = Subspace::span(s, &[v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let b = Subspace::span(s, &[v(&[1, 1, 0]), v(&[1, 0, 0])]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!(c, Subspace::span(s, &[v(&[1, 1, 0])]).unwrap());
        assert_eq!(Subspace::full(s).intersect(&b).unwrap(), b);
    }

    #[test]
    fn sum_of_diagonals_is_full() {
        let s = Space::new(2);
        let a = Subspace::span(s, &[v(&[1, 1])]).unwrap();
        let b = Subspace::span(s, &[v(&[1, -1])]).unwrap();
        assert!(a.sum(&b).unwrap().is_full());
        assert_eq!(a.sum(&Subspace::zero(s)).unwrap(), a);
    }

    #[test]
    fn quotient_kills_subspace() {
        let s = Space::new(3);
        let sub = Subspace::coordinate(s, &[2]);
        let (qs, p) = quotient_map(&s, &sub);
        assert_eq!(qs.dim, 2);
        assert!(p.apply(&v(&[0, 0, 1])).iter().all(|x| x.is_zero()));

        let (_, id) = quotient_map(&s, &Subspace::<Gauss>::zero(s));
        assert_eq!(id, Matrix::identity(3));

        let s2 = Space::new(2);
        let diag = Subspace::span(s2, &[v(&[1, 1])]).unwrap();
        let (q2, p2) = quotient_map(&s2, &diag);
        assert_eq!(q2.dim, 1);
        let ker = Subspace::span(s2, &p2.kernel(0.0)).unwrap();
        assert_eq!(ker, diag);
    }

    #[test]
    fn conjugation_flips_imaginary_parts() {
        let s = Space::new(2);
        let a = Subspace::span(s, &[vec![Gauss::one(), Gauss::i()]]).unwrap();
        let b = Subspace::span(s, &[vec![Gauss::one(), -Gauss::i()]]).unwrap();
        assert_eq!(a.conj(), b);
        assert!(!a.is_real());
        assert!(Subspace::span(s, &[v(&[1, 2])]).unwrap().is_real());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Subspace::<Gauss>::full(Space::new(2));
        let b = Subspace::<Gauss>::full(Space::new(3));
        assert_eq!(a.intersect(&b).err(), Some(Error::DimensionMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn preimage_and_annihilator() {
        let s = Space::new(3);
        let mut n = Matrix::<Gauss>::zeros(3, 3);
        n[(1, 0)] = q(1);
        n[(2, 1)] = q(1);
        let ker = Subspace::<Gauss>::zero(s).preimage(&n, s);
        assert_eq!(ker, Subspace::coordinate(s, &[2]));
        let ann = Subspace::<Gauss>::coordinate(s, &[0, 1]).annihilator();
        assert_eq!(ann, Subspace::coordinate(s, &[2]));
    }
}
