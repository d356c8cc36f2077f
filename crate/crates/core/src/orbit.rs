//! Biextension nilpotent orbits θ(z) = e^{zN}·F∞ and their asymptotic heights.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::biextension::{as_biextension, check_biextension_weights, Biextension};
use crate::error::{Error, Result};
use crate::linalg::{Filtration, Matrix, Space};
use crate::mhs::{Grading, MixedHodgeStructure};
use crate::nilpotent::{relative_weight_filtration, NilpotentOperator, RelativeWeightFiltration};
use crate::scalar::Scalar;

#[cfg(feature = "parallel")]
fn map_points<T: Sync, R: Send>(points: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    points.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_points<T, R>(points: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    points.iter().map(f).collect()
}

/// Imaginary parts at which (e^{zN}·F∞, W) is checked on construction.
pub const ADMISSIBILITY_SAMPLES: [i64; 3] = [1, 5, 10];

#[derive(Clone, Debug)]
pub struct NilpotentOrbit<S> {
    n: NilpotentOperator<S>,
    f_infinity: Filtration<S>,
    weight: Filtration<S>,
    m: RelativeWeightFiltration<S>,
    limit: MixedHodgeStructure<S>,
    one: Vec<S>,
    one_dual: Vec<S>,
}

/// The grading Y(N, F∞, W) and the eigencomponents of N and δ_M under it.
#[derive(Clone, Debug)]
pub struct EigencomponentData<S> {
    pub y_nfw: Matrix<S>,
    pub grading: Grading<S>,
    /// N_{−j} keyed by j ∈ {0, 1, 2}.
    pub n: BTreeMap<i32, Matrix<S>>,
    /// δ_{M,−j} keyed by j ∈ {0, 1, 2}.
    pub delta_m: BTreeMap<i32, Matrix<S>>,
    /// The part of δ_{M,−1} from Gr_0 to Gr_{−1}.
    pub delta_m_a: Matrix<S>,
    /// The part of δ_{M,−1} from Gr_{−1} to Gr_{−2}.
    pub delta_m_b: Matrix<S>,
    /// F̃∞ = e^{−iδ_M}·F∞.
    pub f_tilde: Filtration<S>,
}

#[derive(Clone, Debug)]
pub struct ScanRecord {
    pub t: Complex64,
    /// h(t), or the reason the orbit is not an MHS at t.
    pub h: std::result::Result<f64, Error>,
    /// h(t) + μ·log|t|.
    pub h_tilde: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct HeightScan {
    pub theta: f64,
    pub mu: f64,
    pub h_limit: f64,
    pub records: Vec<ScanRecord>,
}

#[derive(Clone, Debug)]
pub struct CrosscheckSample {
    pub z: Complex64,
    /// ‖Ad(e^{−zN})·Y_{(e^{zN}F̃∞, W)} − Y(N,F∞,W)‖.
    pub distance: std::result::Result<f64, Error>,
    /// The same with F∞ in place of F̃∞.
    pub literal_distance: std::result::Result<f64, Error>,
}

/// Builds the orbit, computes M(N, W) and the limit MHS (F∞, M), and checks
/// admissibility: (e^{zN}·F∞, W) is an MHS at z = i·{1, 5, 10} and N maps
/// I^{a,b} of the limit into I^{a−1,b−1}.
pub fn make_orbit<S: Scalar>(
    n: NilpotentOperator<S>,
    f_infinity: Filtration<S>,
    weight: Filtration<S>,
    one: Vec<S>,
    one_dual: Vec<S>,
) -> Result<NilpotentOrbit<S>> {
    let space = n.space();
    space.check(&f_infinity.space())?;
    space.check(&weight.space())?;
    check_biextension_weights(&weight, &one, &one_dual)?;
    if !n.preserves(&weight) {
        return Err(Error::Precondition("N does not preserve W".into()));
    }
    let m = relative_weight_filtration(&n, &weight).map_err(|e| match e {
        Error::NoRelativeFiltration(r) => Error::Admissibility(format!("no relative weight filtration: {r}")),
        other => other,
    })?;
    let limit = MixedHodgeStructure::new(m.filtration.clone(), f_infinity.clone())
        .map_err(|e| Error::Admissibility(format!("(F∞, M) is not an MHS: {e}")))?;
    for &y in &ADMISSIBILITY_SAMPLES {
        let z = S::i() * S::from_i64(y);
        let g = n.matrix().exp_nilpotent(&z, space.eps)?;
        MixedHodgeStructure::new(weight.clone(), f_infinity.transform(&g))
            .map_err(|e| Error::Admissibility(format!("not an MHS at z = {y}i: {e}")))?;
    }
    for (&(a, b), piece) in limit.splitting().pieces() {
        let target = limit.splitting().piece(a - 1, b - 1);
        let image = piece.image(n.matrix(), space);
        if !image.is_zero() && !target.is_some_and(|t| image.is_subspace_of(t)) {
            return Err(Error::Admissibility(format!("N does not map I^{{{a},{b}}} into I^{{{},{}}}", a - 1, b - 1)));
        }
    }
    Ok(NilpotentOrbit { n, f_infinity, weight, m, limit, one, one_dual })
}

impl<S: Scalar> NilpotentOrbit<S> {
    pub fn n(&self) -> &NilpotentOperator<S> {
        &self.n
    }

    pub fn f_infinity(&self) -> &Filtration<S> {
        &self.f_infinity
    }

    pub fn weight(&self) -> &Filtration<S> {
        &self.weight
    }

    pub fn relative(&self) -> &RelativeWeightFiltration<S> {
        &self.m
    }

    pub fn m(&self) -> &Filtration<S> {
        &self.m.filtration
    }

    pub fn limit_mhs(&self) -> &MixedHodgeStructure<S> {
        &self.limit
    }

    pub fn one(&self) -> &[S] {
        &self.one
    }

    pub fn one_dual(&self) -> &[S] {
        &self.one_dual
    }

    pub fn space(&self) -> Space {
        self.n.space()
    }

    /// The orbit rebuilt on another backend.
    pub fn cast<T: Scalar>(&self, eps: f64) -> Result<NilpotentOrbit<T>> {
        let space = Space::with_eps(self.space().dim, eps);
        let cast_vec = |v: &[S]| v.iter().map(|x| T::from_c64(x.to_c64())).collect::<Vec<T>>();
        make_orbit(
            NilpotentOperator::new(space, self.n.matrix().cast())?,
            self.f_infinity.cast(eps),
            self.weight.cast(eps),
            cast_vec(&self.one),
            cast_vec(&self.one_dual),
        )
    }

    /// (e^{zN}·F∞, W) as a biextension.
    pub fn evaluate_z(&self, z: &S) -> Result<Biextension<S>> {
        let g = self.n.matrix().exp_nilpotent(z, self.space().eps)?;
        let mhs = MixedHodgeStructure::new(self.weight.clone(), self.f_infinity.transform(&g))?;
        as_biextension(mhs, self.one.clone(), self.one_dual.clone())
    }

    /// The biextension at t with z = log(t)/(2πi) on the principal branch,
    /// computed on the float backend.
    pub fn evaluate(&self, t: Complex64) -> Result<Biextension<Complex64>> {
        if t.norm() == 0.0 || t.norm() >= 1.0 || !t.is_finite() {
            return Err(Error::Precondition(format!("t = {t} is not in the punctured unit disc")));
        }
        let eps = self.space().eps.max(crate::linalg::DEFAULT_EPS);
        let z = t.ln() / Complex64::new(0.0, 2.0 * PI);
        let n: Matrix<Complex64> = self.n.matrix().cast();
        let g = n.exp_nilpotent(&z, eps)?;
        let weight = self.weight.cast(eps);
        let hodge = self.f_infinity.cast::<Complex64>(eps).transform(&g);
        let mhs = MixedHodgeStructure::new(weight, hodge)?;
        let cast_vec = |v: &[S]| v.iter().map(|x| x.to_c64()).collect::<Vec<_>>();
        as_biextension(mhs, cast_vec(&self.one), cast_vec(&self.one_dual))
    }

    /// Y(N, F∞, W) = Ad(e^{−iN})·Y_{(e^{iN}·F̃∞, W)} with F̃∞ = e^{−iδ_M}·F∞,
    /// and the ad(Y)-eigencomponents of N and δ_M.
    pub fn grading_y_nfw(&self) -> Result<EigencomponentData<S>> {
        let eps = self.space().eps;
        let delta = self.limit.delta()?;
        let f_tilde = self.f_infinity.transform(&delta.matrix.exp_nilpotent(&-S::i(), eps)?);
        let e_in = self.n.matrix().exp_nilpotent(&S::i(), eps)?;
        let e_min = self.n.matrix().exp_nilpotent(&-S::i(), eps)?;
        let twisted = MixedHodgeStructure::new(self.weight.clone(), f_tilde.transform(&e_in))
            .map_err(|e| Error::Admissibility(format!("(e^{{iN}}F̃∞, W) is not an MHS: {e}")))?;
        let grading = twisted.grading().conjugated(&e_min, &e_in);
        let y_nfw = grading.operator().clone();
        let comps =
            |op: &Matrix<S>| -> BTreeMap<i32, Matrix<S>> { (0..=2).map(|j| (j, grading.component(op, -j))).collect() };
        let n = comps(self.n.matrix());
        let delta_m = comps(&delta.matrix);
        let d1 = &delta_m[&1];
        let delta_m_a = &(&grading.projector(-1) * d1) * &grading.projector(0);
        let delta_m_b = &(&grading.projector(-2) * d1) * &grading.projector(-1);
        Ok(EigencomponentData { y_nfw, grading, n, delta_m, delta_m_a, delta_m_b, f_tilde })
    }

    fn coefficient(&self, v: &[S]) -> S {
        let i = (0..self.one_dual.len())
            .max_by(|&a, &b| self.one_dual[a].abs().total_cmp(&self.one_dual[b].abs()))
            .expect("nonzero space");
        v[i].clone() / self.one_dual[i].clone()
    }

    /// μ with N_{−2}(one) = μ·one_dual.
    pub fn mu(&self) -> Result<S> {
        let data = self.grading_y_nfw()?;
        Ok(self.coefficient(&data.n[&2].apply(&self.one)).re())
    }

    /// H(N, F∞, W) = 2π·c with δ_{M,−2}(one) = c·one_dual.
    pub fn limit_height(&self) -> Result<f64> {
        let data = self.grading_y_nfw()?;
        let c = self.coefficient(&data.delta_m[&2].apply(&self.one));
        if !c.is_real(self.space().eps.sqrt()) {
            return Err(Error::DeltaVerification { check: "limit height coefficient is real", residual: c.im().abs() });
        }
        Ok(2.0 * PI * c.to_c64().re)
    }

    /// The orbit in the coordinate s = f·t with c = log f(0)/(2πi): F∞ ↦ e^{−cN}·F∞.
    /// Then H ↦ H − 2π·μ·Im c, that is H + μ·log|f(0)|.
    pub fn rescale_coordinate(&self, c: &S) -> Result<NilpotentOrbit<S>> {
        let g = self.n.matrix().exp_nilpotent(&-c.clone(), self.space().eps)?;
        make_orbit(
            self.n.clone(),
            self.f_infinity.transform(&g),
            self.weight.clone(),
            self.one.clone(),
            self.one_dual.clone(),
        )
    }

    /// h(t) and h̃(t) = h(t) + μ·log|t| along the ray arg t = θ.
    pub fn height_scan(&self, theta: f64, moduli: &[f64]) -> Result<HeightScan> {
        if moduli.iter().any(|&r| !(r > 0.0 && r < 1.0)) || moduli.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Precondition("moduli must be strictly decreasing in (0, 1)".into()));
        }
        let mu = self.mu()?.to_c64().re;
        let h_limit = self.limit_height()?;
        let records = map_points(moduli, |&r| {
            let t = Complex64::from_polar(r, theta);
            let h = self.evaluate(t).and_then(|b| b.height());
            let h_tilde = h.as_ref().ok().map(|h| h + mu * r.ln());
            ScanRecord { t, h, h_tilde }
        });
        Ok(HeightScan { theta, mu, h_limit, records })
    }

    /// Distances between Ad(e^{−zN})·Y_{(e^{zN}F, W)} and Y(N, F∞, W) for
    /// F = F̃∞ and for F = F∞.
    pub fn y_limit_crosscheck(&self, zs: &[Complex64]) -> Result<Vec<CrosscheckSample>> {
        let data = self.grading_y_nfw()?;
        let y_nfw: Matrix<Complex64> = data.y_nfw.cast();
        let eps = self.space().eps.max(crate::linalg::DEFAULT_EPS);
        let n: Matrix<Complex64> = self.n.matrix().cast();
        let weight = self.weight.cast::<Complex64>(eps);
        let tilde = data.f_tilde.cast::<Complex64>(eps);
        let plain = self.f_infinity.cast::<Complex64>(eps);
        let distance = |z: Complex64, f: &Filtration<Complex64>| -> Result<f64> {
            let g = n.exp_nilpotent(&z, eps)?;
            let g_inv = n.exp_nilpotent(&-z, eps)?;
            let mhs = MixedHodgeStructure::new(weight.clone(), f.transform(&g))?;
            Ok(mhs.y().conjugate_by(&g_inv, &g).distance(&y_nfw))
        };
        Ok(map_points(zs, |&z| CrosscheckSample {
            z,
            distance: distance(z, &tilde),
            literal_distance: distance(z, &plain),
        }))
    }
}
