//! Biextensions: mixed Hodge structures with graded pieces ℚ(0), H, ℚ(1) and
//! designated Betti generators, together with their archimedean height.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{Filtration, Space, Subspace};
use crate::mhs::{Delta, MixedHodgeStructure};
use crate::scalar::Scalar;

/// The constant κ in Ht = κ·log|CR| for [`p1_four_points`].
pub const CROSS_RATIO_KAPPA: f64 = -1.0;

/// A biextension B with rational generators: `one` lifts a generator of
/// Gr^W_0 and `one_dual` spans W_{−2}.
#[derive(Clone, Debug)]
pub struct Biextension<S> {
    mhs: MixedHodgeStructure<S>,
    one: Vec<S>,
    one_dual: Vec<S>,
}

fn shape(weight: i32, reason: impl Into<String>) -> Error {
    Error::Shape { weight, reason: reason.into() }
}

/// Validates the biextension shape and the generators.
pub fn as_biextension<S: Scalar>(mhs: MixedHodgeStructure<S>, one: Vec<S>, one_dual: Vec<S>) -> Result<Biextension<S>> {
    check_biextension_weights(mhs.weight(), &one, &one_dual)?;
    let w = mhs.weight();
    let bottom = w.get(-2);
    let f = mhs.hodge();
    if !bottom.is_subspace_of(f.get(-1)) || !f.get(0).intersect(bottom)?.is_zero() {
        return Err(shape(-2, "W_{−2} is not of type (−1,−1)"));
    }
    let top = f.get(0).sum(w.get(-1))?;
    if !top.contains(&one) {
        return Err(shape(0, "Gr^W_0 is not of type (0,0)"));
    }
    Ok(Biextension { mhs, one, one_dual })
}

/// Checks that W has graded dimensions (1, h, 1) at weights (0, −1, −2),
/// that one_dual spans W_{−2} and that one generates Gr^W_0.
pub fn check_biextension_weights<S: Scalar>(w: &Filtration<S>, one: &[S], one_dual: &[S]) -> Result<()> {
    let space = w.space();
    for v in [one, one_dual] {
        if v.len() != space.dim {
            return Err(Error::DimensionMismatch { expected: space.dim, found: v.len() });
        }
        if !v.iter().all(|x| x.is_real(space.eps)) {
            return Err(Error::Precondition("Betti generators must be rational".into()));
        }
    }
    let dims = w.graded_dims();
    if let Some((&k, _)) = dims.iter().find(|(&k, _)| !(-2..=0).contains(&k)) {
        return Err(shape(k, "biextensions only have weights 0, −1 and −2"));
    }
    for k in [0, -2] {
        if dims.get(&k).copied().unwrap_or(0) != 1 {
            return Err(shape(k, "graded piece must be one-dimensional"));
        }
    }
    if !w.get(-2).contains(one_dual) || one_dual.iter().all(|x| x.negligible(1.0, space.eps)) {
        return Err(shape(-2, "one_dual does not span W_{−2}"));
    }
    if !w.get(0).contains(one) || w.get(-1).contains(one) {
        return Err(shape(0, "one does not generate Gr^W_0"));
    }
    Ok(())
}

impl<S: Scalar> Biextension<S> {
    pub fn mhs(&self) -> &MixedHodgeStructure<S> {
        &self.mhs
    }

    pub fn one(&self) -> &[S] {
        &self.one
    }

    pub fn one_dual(&self) -> &[S] {
        &self.one_dual
    }

    /// Dimension of the weight −1 piece.
    pub fn middle_dim(&self) -> usize {
        self.mhs.weight_dims().get(&-1).copied().unwrap_or(0)
    }

    /// Coefficient of v ∈ W_{−2} on one_dual.
    pub fn coefficient_on_one_dual(&self, v: &[S]) -> S {
        let i = (0..self.one_dual.len())
            .max_by(|&a, &b| self.one_dual[a].abs().total_cmp(&self.one_dual[b].abs()))
            .expect("nonzero space");
        v[i].clone() / self.one_dual[i].clone()
    }

    /// The real number c with δ(one) = c·one_dual.
    pub fn delta_coefficient(&self) -> Result<S> {
        let delta = self.mhs.delta()?;
        self.coefficient_from(&delta)
    }

    fn coefficient_from(&self, delta: &Delta<S>) -> Result<S> {
        let image = delta.matrix.apply(&self.one);
        let eps = self.mhs.eps();
        if !self.mhs.weight().get(-2).contains(&image) {
            return Err(Error::DeltaVerification { check: "δ(one) ∈ W_{−2}", residual: f64::NAN });
        }
        let c = self.coefficient_on_one_dual(&image);
        if !c.is_real(eps.sqrt()) {
            return Err(Error::DeltaVerification { check: "δ coefficient is real", residual: c.im().abs() });
        }
        Ok(c.re())
    }

    /// Ht(B) = 2π·c where δ(one) = c·one_dual.
    pub fn height(&self) -> Result<f64> {
        Ok(2.0 * PI * self.delta_coefficient()?.to_c64().re)
    }

    pub fn is_split_over_r(&self) -> bool {
        self.mhs.is_split()
    }

    /// The dual structure twisted by ℚ(1), in the dual basis. Its `one` pairs
    /// to 1 with one_dual and its `one_dual` is the functional vanishing on
    /// W_{−1} with value 1 on one. Heights negate: Ht(B^∨) = −Ht(B).
    pub fn dual(&self) -> Biextension<S> {
        let mhs = self.mhs.dual().tate_twist(1);
        let n = self.one.len();
        let i =
            (0..n).max_by(|&a, &b| self.one_dual[a].abs().total_cmp(&self.one_dual[b].abs())).expect("nonzero space");
        let mut one = vec![S::zero(); n];
        one[i] = S::one() / self.one_dual[i].clone();
        let ann = self.mhs.weight().get(-1).annihilator();
        let a = ann.basis()[0].clone();
        let pairing = a.iter().zip(&self.one).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
        let one_dual = a.into_iter().map(|x| x / pairing.clone()).collect();
        as_biextension(mhs, one, one_dual).expect("the dual of a biextension is a biextension")
    }

    /// The class of the sub-structure spanned by the two generators; requires
    /// that span to be a sub-MHS.
    pub fn extension_class(&self) -> Result<ExtensionClass<S>> {
        let sub = Subspace::span(self.mhs.space(), &[self.one.clone(), self.one_dual.clone()])?;
        let (m, _) = self.mhs.restrict(&sub).map_err(|_| shape(0, "the generators do not span a sub-structure"))?;
        let one = sub.coordinates(&self.one);
        let one_dual = sub.coordinates(&self.one_dual);
        class_with_generators(&m, &one, &one_dual)
    }
}

/// A period z modulo ℤ: F⁰ is spanned by one + z·one_dual.
#[derive(Clone, Debug)]
pub struct ExtensionClass<S> {
    pub z: S,
}

impl<S: Scalar> ExtensionClass<S> {
    pub fn new(z: S) -> Self {
        ExtensionClass { z }
    }

    /// The representative with real part in [0, 1).
    pub fn reduced(&self) -> S {
        self.z.reduce_mod_z()
    }

    /// Equality modulo ℤ; exact on the exact backend.
    pub fn equivalent(&self, other: &Self, eps: f64) -> bool {
        let d = (self.z.clone() - other.z.clone()).reduce_mod_z();
        if S::EXACT {
            return d.is_zero();
        }
        let d = d.to_c64();
        d.im.abs() <= eps && (d.re.abs() <= eps || (1.0 - d.re).abs() <= eps)
    }
}

/// The period of a two-dimensional extension of one Tate structure by
/// another, in the generators given by the echelon basis of the weight
/// filtration: one_dual spans the lower step, one is the coordinate vector
/// completing it.
pub fn extension_class<S: Scalar>(m: &MixedHodgeStructure<S>) -> Result<ExtensionClass<S>> {
    let dims = m.weight_dims();
    if m.dim() != 2 || dims.len() != 2 || dims.values().any(|&d| d != 1) {
        return Err(shape(*dims.keys().next().unwrap_or(&0), "expected two one-dimensional graded pieces"));
    }
    let low = *dims.keys().next().expect("two weights");
    let bottom = m.weight().get(low);
    let one_dual = bottom.basis()[0].clone();
    let free = 1 - bottom.pivots()[0];
    let one = m.space().basis_vector(free);
    class_with_generators(m, &one, &one_dual)
}

fn class_with_generators<S: Scalar>(
    m: &MixedHodgeStructure<S>,
    one: &[S],
    one_dual: &[S],
) -> Result<ExtensionClass<S>> {
    let dims = m.weight_dims();
    let (&low, &high) = (dims.keys().next().expect("weights"), dims.keys().next_back().expect("weights"));
    if dims.len() != 2 || low % 2 != 0 || high % 2 != 0 {
        return Err(shape(low, "graded pieces must be Tate"));
    }
    let f = m.hodge().get(high / 2);
    let types = m.hodge_numbers();
    if types.get(&(high / 2, high / 2)) != Some(&1) || types.get(&(low / 2, low / 2)) != Some(&1) || f.dim() != 1 {
        return Err(shape(high, "graded pieces must be Tate"));
    }
    let v = &f.basis()[0];
    // Solve v = α·one + β·one_dual by Cramer's rule.
    let det = one[0].clone() * one_dual[1].clone() - one[1].clone() * one_dual[0].clone();
    let alpha = (v[0].clone() * one_dual[1].clone() - v[1].clone() * one_dual[0].clone()) / det.clone();
    let beta = (one[0].clone() * v[1].clone() - one[1].clone() * v[0].clone()) / det;
    Ok(ExtensionClass::new(beta / alpha))
}

/// The dim-2 biextension with one = e₀, one_dual = e₁ and F⁰ = span(one + z·one_dual).
pub fn two_step<S: Scalar>(z: S, eps: f64) -> Result<Biextension<S>> {
    let space = Space::with_eps(2, eps);
    let e0: Vec<S> = space.basis_vector(0);
    let e1: Vec<S> = space.basis_vector(1);
    let mhs = MixedHodgeStructure::from_generators(
        space,
        &[(-2, vec![e1.clone()]), (0, vec![e0.clone(), e1.clone()])],
        &[(-1, vec![e0.clone(), e1.clone()]), (0, vec![vec![S::one(), z]])],
    )?;
    as_biextension(mhs, e0, e1)
}

/// A point of ℙ¹.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum P1Point {
    Finite(Complex64),
    Infinity,
}

impl From<Complex64> for P1Point {
    fn from(z: Complex64) -> Self {
        P1Point::Finite(z)
    }
}

fn difference(a: P1Point, b: P1Point, eps: f64) -> Result<Complex64> {
    match (a, b) {
        (P1Point::Finite(x), P1Point::Finite(y)) => {
            let d = x - y;
            if d.norm() <= eps * (1.0 + x.norm().max(y.norm())) {
                return Err(Error::Degenerate(format!("coincident points {x} and {y}")));
            }
            Ok(d)
        }
        (P1Point::Infinity, P1Point::Infinity) => Err(Error::Degenerate("two points at infinity".into())),
        _ => Ok(Complex64::new(1.0, 0.0)),
    }
}

/// CR = ((r−p)(s−q)) / ((r−q)(s−p)); each point occurs once in the numerator
/// and once in the denominator, so factors involving ∞ cancel.
pub fn cross_ratio(p: P1Point, q: P1Point, r: P1Point, s: P1Point, eps: f64) -> Result<Complex64> {
    difference(p, q, eps)?;
    difference(r, s, eps)?;
    let num = difference(r, p, eps)? * difference(s, q, eps)?;
    let den = difference(r, q, eps)? * difference(s, p, eps)?;
    Ok(num / den)
}

/// The relative cohomology of ℙ¹∖{p,q} relative to {r,s}: Betti basis
/// (relative path, loop), period z = log(CR)/(2πi) on the principal branch,
/// and height κ·log|CR| with κ = [`CROSS_RATIO_KAPPA`].
pub fn p1_four_points<S: Scalar>(p: P1Point, q: P1Point, r: P1Point, s: P1Point, eps: f64) -> Result<Biextension<S>> {
    let cr = cross_ratio(p, q, r, s, eps)?;
    let z = cr.ln() / Complex64::new(0.0, 2.0 * PI);
    two_step(S::from_c64(z), eps)
}
