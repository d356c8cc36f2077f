//! Monodromy weight filtrations W(N) and relative weight filtrations M(N, W).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{wedge_derivation, Direction, Filtration, Matrix, Space, Subspace};
use crate::scalar::Scalar;

/// A nilpotent endomorphism with rational matrix.
#[derive(Clone, Debug)]
pub struct NilpotentOperator<S> {
    matrix: Matrix<S>,
    order: usize,
    space: Space,
}

impl<S: Scalar> NilpotentOperator<S> {
    pub fn new(space: Space, matrix: Matrix<S>) -> Result<Self> {
        if matrix.rows() != space.dim || matrix.cols() != space.dim {
            return Err(Error::DimensionMismatch { expected: space.dim, found: matrix.rows() });
        }
        if !(0..space.dim).all(|i| matrix.row(i).iter().all(|x| x.is_real(space.eps))) {
            return Err(Error::Precondition("N must have a rational matrix".into()));
        }
        let order = matrix.nilpotency_order(space.eps)?;
        Ok(NilpotentOperator { matrix, order, space })
    }

    pub fn zero(space: Space) -> Self {
        NilpotentOperator { matrix: Matrix::zeros(space.dim, space.dim), order: 1, space }
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// Smallest k with N^k = 0.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.order <= 1
    }

    fn power(&self, k: usize) -> Matrix<S> {
        if k >= self.order {
            Matrix::zeros(self.space.dim, self.space.dim)
        } else {
            self.matrix.pow(k as u32)
        }
    }

    pub fn preserves(&self, w: &Filtration<S>) -> bool {
        let (lo, hi) = w.support();
        (lo..=hi).all(|k| w.get(k).image(&self.matrix, self.space).is_subspace_of(w.get(k)))
    }

    /// Leibniz action on Λᵏ.
    pub fn induced_on_exterior_power(&self, k: usize) -> Result<Self> {
        if k > self.space.dim {
            return Err(Error::Precondition(format!("exterior power {k} exceeds dimension {}", self.space.dim)));
        }
        let m = wedge_derivation(&self.matrix, k);
        Self::new(Space::with_eps(m.rows(), self.space.eps), m)
    }
}

/// W(N) centered at c, checked by [`verify_weight_filtration`].
pub fn weight_filtration<S: Scalar>(n: &NilpotentOperator<S>, center: i32) -> Result<Filtration<S>> {
    let full = Subspace::full(n.space);
    let f = centered_filtration(n, center, &full, &Subspace::zero(n.space))?;
    let report = verify_weight_filtration(&f, n, center);
    if !report.passed() {
        return Err(Error::Precondition(format!("internal: W(N) failed its verifier at {:?}", report.first_failure())));
    }
    Ok(f)
}

/// W(N) on top/bottom, pulled back to top: the piece at c + m is
/// Σ_{j ≥ max(0,−m)} Ker N^{m+j+1} ∩ Im N^j computed modulo `bottom`.
fn centered_filtration<S: Scalar>(
    n: &NilpotentOperator<S>,
    center: i32,
    top: &Subspace<S>,
    bottom: &Subspace<S>,
) -> Result<Filtration<S>> {
    let space = n.space;
    let k = n.order as i32;
    let ker = |r: usize| -> Result<Subspace<S>> { bottom.preimage(&n.power(r), space).intersect(top) };
    let im = |j: usize| -> Result<Subspace<S>> { top.image(&n.power(j), space).sum(bottom) };
    let mut steps = Vec::new();
    for m in -k..=k {
        let mut s = bottom.clone();
        for j in (-m).max(0)..=k {
            let r = m + j + 1;
            if r <= 0 {
                continue;
            }
            s = s.sum(&ker(r as usize)?.intersect(&im(j as usize)?)?)?;
        }
        steps.push(s);
    }
    let mut jumps = BTreeMap::new();
    for (i, s) in steps.into_iter().enumerate() {
        jumps.insert(center - k + i as i32, s);
    }
    filtration_within(space, top, bottom, jumps)
}

/// A chain of subspaces of V between `bottom` and `top`, padded so it is
/// a filtration of V: below the chain 0, above the chain V.
fn filtration_within<S: Scalar>(
    space: Space,
    top: &Subspace<S>,
    _bottom: &Subspace<S>,
    jumps: BTreeMap<i32, Subspace<S>>,
) -> Result<Filtration<S>> {
    let mut jumps = jumps;
    if !top.is_full() {
        let hi = jumps.keys().next_back().copied().unwrap_or(0);
        jumps.insert(hi + 1, Subspace::full(space));
    }
    Filtration::from_jumps(space, Direction::Increasing, &jumps)
}

/// One condition of the relative weight filtration characterization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    /// N(M_l) ⊆ M_{l−2}.
    Lowers { l: i32 },
    /// N^l : Gr^M_{k+l} Gr^W_k → Gr^M_{k−l} Gr^W_k is an isomorphism.
    Isomorphism { k: i32, l: i32 },
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<(Condition, bool)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn first_failure(&self) -> Option<&Condition> {
        self.checks.iter().find(|(_, ok)| !ok).map(|(c, _)| c)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Condition> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(c, _)| c)
    }
}

/// Checks the defining conditions of W(N) centered at c.
pub fn verify_weight_filtration<S: Scalar>(
    f: &Filtration<S>,
    n: &NilpotentOperator<S>,
    center: i32,
) -> VerificationReport {
    let w = Filtration::trivial(n.space, Direction::Increasing, center);
    verify_relative(f, n, &w)
}

/// Checks N(M_l) ⊆ M_{l−2} for every l and, on every Gr^W_k with the induced
/// filtration (M_j ∩ W_k + W_{k−1}) / W_{k−1}, that N^l is an isomorphism
/// from the piece at k + l onto the piece at k − l.
pub fn verify_relative<S: Scalar>(
    m: &Filtration<S>,
    n: &NilpotentOperator<S>,
    w: &Filtration<S>,
) -> VerificationReport {
    let space = n.space;
    let mut report = VerificationReport::default();
    if m.space().dim != space.dim || w.space().dim != space.dim {
        report.checks.push((Condition::Lowers { l: 0 }, false));
        return report;
    }
    let (mlo, mhi) = m.support();
    for l in mlo..=mhi + 2 {
        let ok = m.get(l).image(n.matrix(), space).is_subspace_of(m.get(l - 2));
        report.checks.push((Condition::Lowers { l }, ok));
    }
    let (wlo, whi) = w.support();
    for k in wlo..=whi {
        let wk = w.get(k);
        let below = w.get(k - 1);
        if wk.dim() == below.dim() {
            continue;
        }
        let g = |j: i32| -> Subspace<S> { m.get(j).intersect(wk).and_then(|s| s.sum(below)).expect("same space") };
        let gr = |j: i32| g(j).dim() - g(j - 1).dim();
        let reach = (mhi - k).max(k - mlo) + 1;
        for l in 1..=reach {
            let top = g(k + l);
            let target = g(k - l);
            let under = g(k - l - 1);
            let image = top.image(&n.power(l as usize), space);
            let mapped = image.sum(&under).expect("same space");
            let ok = gr(k + l) == gr(k - l) && image.is_subspace_of(&target) && mapped.dim() - under.dim() == gr(k + l);
            report.checks.push((Condition::Isomorphism { k, l }, ok));
        }
    }
    report
}

/// How M(N, W) was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// N = 0, so M = W.
    Trivial,
    /// W has a single weight k, so M = W(N) centered at k.
    Pure,
    /// N² = 0 with W in at most three consecutive weights.
    SquareZero,
    /// General recursive attempt over the weights of W.
    Recursive,
}

#[derive(Clone, Debug)]
pub struct RelativeWeightFiltration<S> {
    pub filtration: Filtration<S>,
    pub construction: Construction,
}

/// M(N, W), built weight by weight and always verified; an unverifiable
/// result is reported as non-existence.
pub fn relative_weight_filtration<S: Scalar>(
    n: &NilpotentOperator<S>,
    w: &Filtration<S>,
) -> Result<RelativeWeightFiltration<S>> {
    if !n.preserves(w) {
        return Err(Error::Precondition("N does not preserve W".into()));
    }
    let (wlo, whi) = w.support();
    let weights: Vec<i32> = w.graded_dims().into_keys().collect();
    let construction = if n.is_zero() {
        Construction::Trivial
    } else if weights.len() <= 1 {
        Construction::Pure
    } else if n.order <= 2 && whi - wlo <= 2 {
        Construction::SquareZero
    } else {
        Construction::Recursive
    };
    let filtration = match construction {
        Construction::Trivial => w.clone(),
        Construction::Pure => weight_filtration(n, weights.first().copied().unwrap_or(wlo))?,
        Construction::SquareZero | Construction::Recursive => {
            let pieces = lift(n, w, whi)?;
            let mut jumps = BTreeMap::new();
            for (l, s) in pieces {
                jumps.insert(l, s);
            }
            Filtration::from_jumps(n.space, Direction::Increasing, &jumps)
                .map_err(|e| Error::NoRelativeFiltration(format!("lifted pieces do not form a filtration ({e})")))?
        }
    };
    let report = verify_relative(&filtration, n, w);
    if let Some(c) = report.first_failure() {
        return Err(Error::NoRelativeFiltration(format!("verification fails at {c:?}")));
    }
    Ok(RelativeWeightFiltration { filtration, construction })
}

/// Pieces of M(N, W|W_top) as subspaces of W_top, indexed over a range that
/// ends with W_top.
fn lift<S: Scalar>(n: &NilpotentOperator<S>, w: &Filtration<S>, top: i32) -> Result<BTreeMap<i32, Subspace<S>>> {
    let space = n.space;
    let (wlo, _) = w.support();
    let wk = w.get(top).clone();
    let a = w.get(top - 1).clone();
    let k = n.order as i32;

    let pure = centered_filtration(n, top, &wk, &a)?;
    let mb = |l: i32| -> Subspace<S> { pure.get(l).intersect(&wk).expect("same space") };
    if top <= wlo || a.is_zero() {
        return Ok((top - k..=top + k).map(|l| (l, mb(l))).collect());
    }

    let ma = lift(n, w, top - 1)?;
    let ma_lo = *ma.keys().next().expect("nonempty");
    let ma_get = |l: i32| -> Subspace<S> {
        if l < ma_lo {
            Subspace::zero(space)
        } else {
            ma.range(..=l).next_back().map(|(_, s)| s.clone()).unwrap_or_else(|| Subspace::zero(space))
        }
    };

    let mut lifts = Vec::new();
    for j in 0..=k {
        let cond = ma_get(top - j - 2).preimage(&n.power(j as usize + 1), space);
        lifts.push((j, mb(top + j).intersect(&cond)?));
    }
    let lo = ma_lo.min(top - k - 2 * k);
    let hi = (top + k).max(*ma.keys().next_back().expect("nonempty"));
    let mut out = BTreeMap::new();
    for l in lo..=hi {
        let mut s = ma_get(l);
        for (j, lj) in &lifts {
            for i in 0..=k {
                if top + j - 2 * i <= l {
                    s = s.sum(&lj.image(&n.power(i as usize), space))?;
                }
            }
        }
        out.insert(l, s);
    }
    out.insert(hi + 1, wk);
    Ok(out)
}
