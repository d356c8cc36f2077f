use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix. Also used for linear maps between spaces of the
/// distinguished bases: columns index the source, rows the target.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type LinearMap<S> = Matrix<S>;

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Restriction to a block of rows and columns.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Exactly zero, or below `eps` in max-entry norm on the float backend.
    pub fn is_zero(&self, eps: f64) -> bool {
        if S::EXACT {
            self.data.iter().all(|x| x.is_zero())
        } else {
            self.max_abs() <= eps
        }
    }

    /// Max-entry distance to `other`; exact backend returns 0.0 only on equality.
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// g·self·g⁻¹ given both g and g⁻¹.
    pub fn conjugate_by(&self, g: &Self, g_inv: &Self) -> Self {
        &(g * self) * g_inv
    }

    pub fn rank(&self, eps: f64) -> usize {
        row_reduce(self.row_vectors(), self.cols, eps).1.len()
    }

    /// Basis of the right kernel {v : self·v = 0}.
    pub fn kernel(&self, eps: f64) -> Vec<Vec<S>> {
        let (rows, pivots) = row_reduce(self.row_vectors(), self.cols, eps);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rows[r][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, eps: f64) -> Result<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
                r
            })
            .collect();
        let (rows, pivots) = row_reduce_columns(aug, 2 * n, n, eps, 0.0);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| rows[i][n + j].clone()))
    }

    /// Smallest k ≥ 1 with self^k = 0, or `NotNilpotent` if self^n ≠ 0.
    pub fn nilpotency_order(&self, eps: f64) -> Result<usize> {
        assert!(self.is_square());
        let n = self.rows;
        let scale = self.max_abs().max(1.0);
        let mut p = Self::identity(n);
        for k in 1..=n.max(1) {
            p = &p * self;
            let tol = eps * scale.powi(k as i32);
            if p.is_zero(tol) {
                return Ok(k);
            }
        }
        if n == 0 {
            return Ok(1);
        }
        Err(Error::NotNilpotent)
    }

    /// The same matrix on another backend, through complex doubles.
    pub fn cast<T: Scalar>(&self) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |i, j| T::from_c64(self[(i, j)].to_c64()))
    }

    /// Σ_{j<k} (s·A)^j / j! for nilpotent A.
    pub fn exp_nilpotent(&self, s: &S, eps: f64) -> Result<Self> {
        let order = self.nilpotency_order(eps)?;
        let a = self.scale(s);
        let mut term = Self::identity(self.rows);
        let mut out = term.clone();
        for j in 1..order {
            term = (&term * &a).scale(&(S::one() / S::from_i64(j as i64)));
            out = &out + &term;
        }
        Ok(out)
    }
}

/// Gauss–Jordan elimination on row vectors. Returns the nonzero reduced rows
/// and their pivot columns. Exact backend takes the first nonzero pivot;
/// float backend takes the largest pivot in the column and discards pivots
/// at or below `eps` times the largest entry of the input.
pub fn row_reduce<S: Scalar>(rows: Vec<Vec<S>>, ncols: usize, eps: f64) -> (Vec<Vec<S>>, Vec<usize>) {
    row_reduce_columns(rows, ncols, ncols, eps, 0.0)
}

/// [`row_reduce`] with the float threshold measured against at least
/// `reference`, so rows that are roundoff relative to it count as zero.
pub(crate) fn row_reduce_against<S: Scalar>(
    rows: Vec<Vec<S>>,
    ncols: usize,
    eps: f64,
    reference: f64,
) -> (Vec<Vec<S>>, Vec<usize>) {
    row_reduce_columns(rows, ncols, ncols, eps, reference)
}

fn row_reduce_columns<S: Scalar>(
    mut rows: Vec<Vec<S>>,
    ncols: usize,
    pivot_cols: usize,
    eps: f64,
    reference: f64,
) -> (Vec<Vec<S>>, Vec<usize>) {
    let scale = rows.iter().flat_map(|r| r[..pivot_cols].iter()).map(|x| x.abs()).fold(reference, f64::max);
    let thresh = eps * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let found = if S::EXACT {
            (r..rows.len()).find(|&i| !rows[i][c].is_zero())
        } else {
            let (best, mag) =
                (r..rows.len())
                    .map(|i| (i, rows[i][c].abs()))
                    .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            (mag > thresh && mag > 0.0).then_some(best)
        };
        let Some(p) = found else {
            if !S::EXACT {
                for row in rows.iter_mut().skip(r) {
                    row[c] = S::zero();
                }
            }
            continue;
        };
        rows.swap(r, p);
        let inv = S::one() / rows[r][c].clone();
        for x in rows[r].iter_mut().take(ncols).skip(c) {
            *x = x.clone() * inv.clone();
        }
        rows[r][c] = S::one();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
                }
            }
            row[c] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference shape");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.map(|x| -x.clone())
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
