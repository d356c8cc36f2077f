//! Mixed Hodge structures, their Deligne splitting and the operator δ.

mod grading;
mod ops;

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{Direction, Filtration, Matrix, Space, Subspace};
use crate::scalar::Scalar;

pub use grading::Grading;
pub use ops::{check_morphism, direct_sum, Morphism};

/// A rational vector space with an increasing weight filtration W (defined
/// over ℚ) and a decreasing Hodge filtration F on the complexification.
///
/// Construction validates the pair and computes its Deligne bigrading.
#[derive(Clone, Debug)]
pub struct MixedHodgeStructure<S> {
    space: Space,
    weight: Filtration<S>,
    hodge: Filtration<S>,
    splitting: DeligneSplitting<S>,
}

/// The bigrading {I^{a,b}} of an MHS and its grading operator Y.
#[derive(Clone, Debug)]
pub struct DeligneSplitting<S> {
    pieces: BTreeMap<(i32, i32), Subspace<S>>,
    labels: Vec<(i32, i32)>,
    grading: Grading<S>,
}

/// The real operator δ ∈ Λ^{−1,−1} with conj(Y) = Ad(e^{−2iδ})·Y, and its
/// ad(Y)-eigencomponents δ_{−j} keyed by j.
#[derive(Clone, Debug)]
pub struct Delta<S> {
    pub matrix: Matrix<S>,
    pub components: BTreeMap<i32, Matrix<S>>,
    /// Max-entry residual of the defining equation.
    pub residual: f64,
}

impl<S: Scalar> MixedHodgeStructure<S> {
    pub fn new(weight: Filtration<S>, hodge: Filtration<S>) -> Result<Self> {
        let space = weight.space();
        space.check(&hodge.space())?;
        if weight.direction() != Direction::Increasing || hodge.direction() != Direction::Decreasing {
            return Err(Error::InvalidFiltration("W must increase and F must decrease".into()));
        }
        let (wlo, whi) = weight.support();
        for k in wlo..=whi {
            if !weight.get(k).is_real() {
                return Err(Error::InvalidFiltration(format!("W_{k} is not defined over the rationals")));
            }
        }
        check_purity(&weight, &hodge)?;
        let splitting = DeligneSplitting::compute(&weight, &hodge)?;
        Ok(MixedHodgeStructure { space, weight, hodge, splitting })
    }

    /// Builds W and F from spanning vectors at their jump indices (see
    /// [`Filtration::from_jumps`]) and validates.
    pub fn from_generators(space: Space, weight: &[(i32, Vec<Vec<S>>)], hodge: &[(i32, Vec<Vec<S>>)]) -> Result<Self> {
        let build = |data: &[(i32, Vec<Vec<S>>)], dir| -> Result<Filtration<S>> {
            let mut jumps = BTreeMap::new();
            for (k, gens) in data {
                jumps.insert(*k, Subspace::span(space, gens)?);
            }
            Filtration::from_jumps(space, dir, &jumps)
        };
        Self::new(build(weight, Direction::Increasing)?, build(hodge, Direction::Decreasing)?)
    }

    /// The zero space, which is a valid MHS with empty bigrading.
    pub fn zero(eps: f64) -> Self {
        let space = Space::with_eps(0, eps);
        let w = Filtration::trivial(space, Direction::Increasing, 0);
        let f = Filtration::trivial(space, Direction::Decreasing, 0);
        Self::new(w, f).expect("zero space")
    }

    /// The Tate structure ℚ(a): one-dimensional of weight −2a and Hodge type (−a,−a).
    pub fn tate(a: i32, eps: f64) -> Self {
        let space = Space::with_eps(1, eps);
        let w = Filtration::trivial(space, Direction::Increasing, -2 * a);
        let f = Filtration::trivial(space, Direction::Decreasing, -a);
        Self::new(w, f).expect("Tate structure")
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn eps(&self) -> f64 {
        self.space.eps
    }

    pub fn weight(&self) -> &Filtration<S> {
        &self.weight
    }

    pub fn hodge(&self) -> &Filtration<S> {
        &self.hodge
    }

    pub fn splitting(&self) -> &DeligneSplitting<S> {
        &self.splitting
    }

    pub fn y(&self) -> &Matrix<S> {
        self.splitting.grading.operator()
    }

    pub fn grading(&self) -> &Grading<S> {
        &self.splitting.grading
    }

    /// Dimensions of the nonzero pieces I^{a,b}.
    pub fn hodge_numbers(&self) -> BTreeMap<(i32, i32), usize> {
        self.splitting.pieces.iter().map(|(&k, s)| (k, s.dim())).collect()
    }

    /// Dimensions of the nonzero graded pieces Gr^W_k.
    pub fn weight_dims(&self) -> BTreeMap<i32, usize> {
        self.weight.graded_dims()
    }

    /// The splitting operator δ, computed by a triangular solve over the
    /// ad(Y)-eigencomponents and then checked against its characterization.
    pub fn delta(&self) -> Result<Delta<S>> {
        let n = self.dim();
        let eps = self.eps();
        let g = &self.splitting.grading;
        let y = g.operator();
        let ybar = y.conj();
        let mut x = Matrix::zeros(n, n);
        for m in 1..=g.spread() {
            let ex = x.exp_nilpotent(&S::one(), eps)?;
            let emx = x.exp_nilpotent(&-S::one(), eps)?;
            let r = y.conjugate_by(&ex, &emx);
            let d = &ybar - &r;
            let c = g.component(&d, -m).scale(&(S::one() / S::from_i64(m as i64)));
            x = &x + &c;
        }
        // X = −2iδ.
        let delta = x.scale(&(S::i() / S::from_i64(2)));
        self.verified_delta(delta)
    }

    fn verified_delta(&self, delta: Matrix<S>) -> Result<Delta<S>> {
        let eps = self.eps();
        let g = &self.splitting.grading;
        let y = g.operator();
        let scale = (1.0 + y.max_abs()) * (1.0 + delta.max_abs()).powi(2);
        let tol = 100.0 * eps * scale;
        let check = |name: &'static str, r: f64, exact_zero: bool| -> Result<()> {
            let ok = if S::EXACT { exact_zero } else { r <= tol };
            if ok {
                Ok(())
            } else {
                Err(Error::DeltaVerification { check: name, residual: r })
            }
        };

        let imag = delta.conj();
        check("reality", delta.distance(&imag), delta == imag)?;

        let coords = g.in_eigenbasis(&delta);
        let labels = &self.splitting.labels;
        let mut off = 0.0f64;
        let mut off_zero = true;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let ((a, b), (c, d)) = (labels[i], labels[j]);
                if !(a < c && b < d) {
                    off = off.max(coords[(i, j)].abs());
                    off_zero &= coords[(i, j)].is_zero();
                }
            }
        }
        check("type (-1,-1)", off, off_zero)?;

        let two_i = S::i() * S::from_i64(2);
        let e = delta.exp_nilpotent(&-two_i.clone(), eps)?;
        let e_inv = delta.exp_nilpotent(&two_i, eps)?;
        let lhs = y.conjugate_by(&e, &e_inv);
        let rhs = y.conj();
        let residual = lhs.distance(&rhs);
        check("defining equation", residual, lhs == rhs)?;

        let mut components = BTreeMap::new();
        let mut recon = Matrix::zeros(self.dim(), self.dim());
        for j in 1..=g.spread() {
            let c = g.component(&delta, -j);
            recon = &recon + &c;
            if j == 1 {
                check("no shift-1 component", c.max_abs(), c.is_zero(0.0))?;
                continue;
            }
            components.insert(j, c);
        }
        check("component sum", recon.distance(&delta), recon == delta)?;
        Ok(Delta { matrix: delta, components, residual })
    }

    /// conj(I^{a,b}) = I^{b,a} for all (a,b).
    pub fn is_split(&self) -> bool {
        let zero = Subspace::zero(self.space);
        self.splitting.pieces.iter().all(|(&(a, b), s)| {
            let other = self.splitting.pieces.get(&(b, a)).unwrap_or(&zero);
            s.conj().same_as(other)
        })
    }

    /// conj(I^{a,b}) ⊆ I^{b,a} ⊕ ⊕_{r<b, s<a} I^{r,s}, with the dimensions of
    /// I^{a,b} and I^{b,a} equal.
    pub fn conjugation_congruence(&self) -> bool {
        let pieces = &self.splitting.pieces;
        pieces.iter().all(|(&(a, b), s)| {
            let Some(mirror) = pieces.get(&(b, a)) else {
                return false;
            };
            if mirror.dim() != s.dim() {
                return false;
            }
            let mut target = mirror.clone();
            for (&(r, t), p) in pieces {
                if r < b && t < a {
                    target = target.sum(p).expect("same space");
                }
            }
            s.conj().is_subspace_of(&target)
        })
    }

    /// The ℝ-split structure (e^{−iδ}·F, W).
    pub fn split_over_r(&self, delta: &Delta<S>) -> Result<Self> {
        let g = delta.matrix.exp_nilpotent(&-S::i(), self.eps())?;
        Self::new(self.weight.clone(), self.hodge.transform(&g))
    }

    /// (g·F, W) for an invertible g preserving W.
    pub fn transform_hodge(&self, g: &Matrix<S>) -> Result<Self> {
        Self::new(self.weight.clone(), self.hodge.transform(g))
    }

    /// Gr^W_n with the induced Hodge filtration, pure of weight n.
    pub fn graded_piece(&self, n: i32) -> Result<Self> {
        Ok(self.subquotient(self.weight.get(n), self.weight.get(n - 1))?.0)
    }

    /// The structure induced on top/bottom for sub-MHS bottom ⊆ top, and the
    /// linear map from V (restricted to top) onto the subquotient.
    pub fn subquotient(&self, top: &Subspace<S>, bottom: &Subspace<S>) -> Result<(Self, Matrix<S>)> {
        let (sub, _) = self.restrict(top)?;
        let bottom_coords: Vec<Vec<S>> = bottom.basis().iter().map(|v| top.coordinates(v)).collect();
        let bottom_in_top = Subspace::span(sub.space, &bottom_coords)?;
        let (quot, proj) = sub.quotient(&bottom_in_top)?;
        let select =
            Matrix::from_fn(top.dim(), self.dim(), |i, j| if top.pivots()[i] == j { S::one() } else { S::zero() });
        Ok((quot, &proj * &select))
    }

    /// Restriction to a rational subspace; returns the structure in
    /// echelon-basis coordinates and the inclusion map.
    pub fn restrict(&self, sub: &Subspace<S>) -> Result<(Self, Matrix<S>)> {
        self.space.check(&sub.space())?;
        if !sub.is_real() {
            return Err(Error::Precondition("subspace is not defined over the rationals".into()));
        }
        let w = self.weight.restrict(sub)?;
        let f = self.hodge.restrict(sub)?;
        Ok((Self::new(w, f)?, sub.basis_matrix()))
    }

    /// Quotient by a rational sub-MHS with the induced filtrations; returns the
    /// structure and the projection.
    pub fn quotient(&self, sub: &Subspace<S>) -> Result<(Self, Matrix<S>)> {
        self.space.check(&sub.space())?;
        if !sub.is_real() {
            return Err(Error::Precondition("subspace is not defined over the rationals".into()));
        }
        let (target, proj) = crate::linalg::quotient_map(&self.space, sub);
        let w = self.weight.push_forward(&proj, target)?;
        let f = self.hodge.push_forward(&proj, target)?;
        Ok((Self::new(w, f)?, proj))
    }

    /// Tensor with ℚ(a): W shifts by −2a, F by −a.
    pub fn tate_twist(&self, a: i32) -> Self {
        let w = self.weight.shift(-2 * a);
        let f = self.hodge.shift(-a);
        Self::new(w, f).expect("a twist of an MHS is an MHS")
    }

    /// The dual structure on V^∨ in the dual basis: W^∨_k = ann(W_{−k−1}),
    /// F^p(V^∨) = ann(F^{1−p}).
    pub fn dual(&self) -> Self {
        let (wlo, whi) = self.weight.support();
        let (flo, fhi) = self.hodge.support();
        let w_steps = (-whi..=-wlo).map(|k| self.weight.get(-k - 1).annihilator()).collect();
        let f_steps = (-fhi..=-flo).map(|p| self.hodge.get(1 - p).annihilator()).collect();
        let w = Filtration::new(self.space, Direction::Increasing, -whi, w_steps).expect("dual chain");
        let f = Filtration::new(self.space, Direction::Decreasing, -fhi, f_steps).expect("dual chain");
        Self::new(w, f).expect("the dual of an MHS is an MHS")
    }

    /// Λᵏ with the induced filtrations, in the basis e_I of sorted k-subsets.
    pub fn exterior_power(&self, k: usize) -> Result<Self> {
        if k > self.dim() {
            return Err(Error::Precondition(format!("exterior power {k} exceeds dimension {}", self.dim())));
        }
        let w = crate::linalg::wedge_filtration(&self.weight, k);
        let f = crate::linalg::wedge_filtration(&self.hodge, k);
        Self::new(w, f)
    }
}

impl<S: Scalar> DeligneSplitting<S> {
    fn compute(weight: &Filtration<S>, hodge: &Filtration<S>) -> Result<Self> {
        let space = weight.space();
        let (wlo, whi) = weight.support();
        let (flo, fhi) = hodge.support();
        let mut cache: HashMap<(i32, i32), Subspace<S>> = HashMap::new();
        let mut fw = |p: i32, k: i32| -> Subspace<S> {
            cache.entry((p, k)).or_insert_with(|| hodge.get(p).intersect(weight.get(k)).expect("same space")).clone()
        };

        let mut pieces = BTreeMap::new();
        if space.dim > 0 {
            for a in flo..=fhi {
                for b in (wlo - fhi)..=(whi - flo) {
                    let k = a + b;
                    if k < wlo || k > whi {
                        continue;
                    }
                    // U^{b−1}_{k−2} = Σ_{j≥0} F^{b−1−j} ∩ W_{k−2−j}
                    let mut u = Subspace::zero(space);
                    let mut j = 0;
                    while k - 2 - j >= wlo {
                        u = u.sum(&fw(b - 1 - j, k - 2 - j))?;
                        j += 1;
                    }
                    let inner = fw(b, k).conj().sum(&u.conj())?;
                    let piece = fw(a, k).intersect(&inner)?;
                    if !piece.is_zero() {
                        pieces.insert((a, b), piece);
                    }
                }
            }
        }

        let total: usize = pieces.values().map(|s| s.dim()).sum();
        if total != space.dim {
            let (a, b) = pieces.keys().next().copied().unwrap_or((flo, wlo - flo));
            return Err(Error::NotMhs {
                a,
                b,
                reason: format!("bigrading has total dimension {total}, expected {}", space.dim),
            });
        }
        let mut labels = Vec::new();
        for (&(a, b), s) in &pieces {
            labels.extend(std::iter::repeat_n((a, b), s.dim()));
        }
        let grading = Grading::from_pieces(space, pieces.iter().map(|(&(a, b), s)| (a + b, s)))
            .map_err(|_| Error::NotMhs { a: flo, b: wlo - flo, reason: "bigrading is not a direct sum".into() })?;

        for p in flo..=fhi {
            let mut s = Subspace::zero(space);
            for (_, piece) in pieces.range((p, i32::MIN)..) {
                s = s.sum(piece)?;
            }
            if !s.same_as(hodge.get(p)) {
                return Err(Error::NotMhs { a: p, b: wlo - p, reason: format!("F^{p} is not reconstructed") });
            }
        }
        for k in wlo..=whi {
            let mut s = Subspace::zero(space);
            for (_, piece) in pieces.iter().filter(|((a, b), _)| a + b <= k) {
                s = s.sum(piece)?;
            }
            if !s.same_as(weight.get(k)) {
                return Err(Error::NotMhs { a: flo, b: k - flo, reason: format!("W_{k} is not reconstructed") });
            }
        }
        Ok(DeligneSplitting { pieces, labels, grading })
    }

    pub fn pieces(&self) -> &BTreeMap<(i32, i32), Subspace<S>> {
        &self.pieces
    }

    pub fn piece(&self, a: i32, b: i32) -> Option<&Subspace<S>> {
        self.pieces.get(&(a, b))
    }

    pub fn grading(&self) -> &Grading<S> {
        &self.grading
    }
}

/// Each Gr^W_k must carry a pure Hodge structure of weight k:
/// F^p ⊕ conj(F^{k−p+1}) = Gr^W_k for all p.
fn check_purity<S: Scalar>(weight: &Filtration<S>, hodge: &Filtration<S>) -> Result<()> {
    let (wlo, whi) = weight.support();
    let (flo, fhi) = hodge.support();
    for k in wlo..=whi {
        let wk = weight.get(k);
        let below = weight.get(k - 1);
        let gr = wk.dim() - below.dim();
        if gr == 0 {
            continue;
        }
        for p in flo.min(k - fhi)..=fhi.max(k - flo) + 1 {
            let a = hodge.get(p).intersect(wk)?.sum(below)?;
            let b = hodge.get(k - p + 1).intersect(wk)?.conj().sum(below)?;
            let da = a.dim() - below.dim();
            let db = b.dim() - below.dim();
            if da + db != gr || !a.sum(&b)?.same_as(wk) {
                return Err(Error::NotMhs { a: p, b: k - p, reason: format!("Gr^W_{k} is not pure of weight {k}") });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
