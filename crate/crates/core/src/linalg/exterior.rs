use crate::linalg::filtration::{Direction, Filtration};
use crate::linalg::matrix::Matrix;
use crate::linalg::subspace::{Space, Subspace};
use crate::scalar::Scalar;

/// Sorted k-subsets of {0..n} in lexicographic order; the basis e_I of Λᵏ.
pub fn wedge_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn det<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    let mut d = S::one();
    for c in 0..n {
        let Some(p) = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())) else {
            return S::zero();
        };
        if m[p][c].is_zero() {
            return S::zero();
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d = d * piv.clone();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone() / piv.clone();
            let (above, below) = m.split_at_mut(r);
            for (x, p) in below[0][c..].iter_mut().zip(&above[c][c..]) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
    }
    d
}

/// Coordinates of v₁ ∧ … ∧ v_k in the basis e_I.
pub fn wedge<S: Scalar>(vs: &[Vec<S>], basis: &[Vec<usize>]) -> Vec<S> {
    basis.iter().map(|idx| det(vs.iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect()).collect())).collect()
}

/// The induced map Λᵏg, columns indexed by e_I.
pub fn wedge_map<S: Scalar>(g: &Matrix<S>, k: usize) -> Matrix<S> {
    let basis = wedge_indices(g.cols(), k);
    let out = wedge_indices(g.rows(), k);
    let cols: Vec<Vec<S>> = basis
        .iter()
        .map(|idx| {
            let vs: Vec<Vec<S>> = idx.iter().map(|&i| g.column(i)).collect();
            wedge(&vs, &out)
        })
        .collect();
    Matrix::from_columns(out.len(), &cols)
}

/// Leibniz extension of an endomorphism to Λᵏ: Σ over slots of 1∧…∧A∧…∧1.
pub fn wedge_derivation<S: Scalar>(a: &Matrix<S>, k: usize) -> Matrix<S> {
    let n = a.cols();
    let basis = wedge_indices(n, k);
    let cols: Vec<Vec<S>> = basis
        .iter()
        .map(|idx| {
            let mut acc = vec![S::zero(); basis.len()];
            for slot in 0..k {
                let vs: Vec<Vec<S>> = idx
                    .iter()
                    .enumerate()
                    .map(|(s, &i)| if s == slot { a.column(i) } else { Space::new(n).basis_vector(i) })
                    .collect();
                for (x, y) in acc.iter_mut().zip(wedge(&vs, &basis)) {
                    *x = x.clone() + y;
                }
            }
            acc
        })
        .collect();
    Matrix::from_columns(basis.len(), &cols)
}

/// Basis adapted to a filtration, each vector tagged with the extreme index
/// of the step it first appears in.
fn adapted_basis<S: Scalar>(f: &Filtration<S>) -> Vec<(i32, Vec<S>)> {
    let (lo, hi) = f.support();
    let order: Vec<i32> = match f.direction() {
        Direction::Increasing => (lo..=hi).collect(),
        Direction::Decreasing => (lo..=hi).rev().collect(),
    };
    let mut acc = Subspace::zero(f.space());
    let mut out = Vec::new();
    for k in order {
        for v in f.get(k).basis() {
            if !acc.contains(v) {
                acc = acc.sum(&Subspace::span_unchecked(f.space(), vec![v.clone()])).expect("same space");
                out.push((k, v.clone()));
            }
        }
    }
    out
}

/// Induced filtration on Λᵏ: the piece at index m is spanned by wedges of
/// adapted basis vectors whose indices sum to at least (decreasing) or at
/// most (increasing) m.
pub fn wedge_filtration<S: Scalar>(f: &Filtration<S>, k: usize) -> Filtration<S> {
    let n = f.space().dim;
    let target = Space::with_eps(wedge_indices(n, k).len(), f.space().eps);
    let out_basis = wedge_indices(n, k);
    let adapted = adapted_basis(f);
    let tagged: Vec<(i32, Vec<S>)> = wedge_indices(adapted.len(), k)
        .into_iter()
        .map(|idx| {
            let w: i32 = idx.iter().map(|&i| adapted[i].0).sum();
            let vs: Vec<Vec<S>> = idx.iter().map(|&i| adapted[i].1.clone()).collect();
            (w, wedge(&vs, &out_basis))
        })
        .collect();
    let (lo, hi) = f.support();
    let (klo, khi) = (lo * k as i32, hi * k as i32);
    let steps = (klo..=khi)
        .map(|m| {
            let gens = tagged
                .iter()
                .filter(|(w, _)| match f.direction() {
                    Direction::Increasing => *w <= m,
                    Direction::Decreasing => *w >= m,
                })
                .map(|(_, v)| v.clone())
                .collect();
            Subspace::span_unchecked(target, gens)
        })
        .collect();
    if target.dim == 0 {
        return Filtration::trivial(target, f.direction(), 0);
    }
    Filtration::new(target, f.direction(), klo, steps).expect("induced filtration is a chain")
}
