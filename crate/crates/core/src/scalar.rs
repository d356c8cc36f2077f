//! Scalar backends: exact Gaussian rationals and double-precision complex numbers.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field operations shared by both backends.
///
/// Every value lives in ℚ(i) (exact) or ℂ (float). `EXACT` switches rank
/// decisions between exact zero tests and a relative tolerance.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn i() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn from_parts(re: &BigRational, im: &BigRational) -> Self;
    /// Exact binary expansion on the exact backend.
    fn from_c64(z: Complex64) -> Self;

    fn conj(&self) -> Self;
    fn re(&self) -> Self;
    fn im(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> f64;
    fn to_c64(&self) -> Complex64;
    /// The representative with real part in [0, 1) of the class modulo ℤ.
    fn reduce_mod_z(&self) -> Self;

    /// Whether the value is negligible against `scale` (float) or zero (exact).
    fn negligible(&self, scale: f64, eps: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs() <= eps * scale.max(f64::MIN_POSITIVE)
        }
    }

    fn is_real(&self, eps: f64) -> bool {
        self.im().negligible(self.abs().max(1.0), eps)
    }
}

/// An exact element a + b·i of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gauss {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gauss {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gauss { re, im: BigRational::zero() }
    }

    fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rat_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        Gauss { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, o: Gauss) -> Gauss {
        Gauss { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::real(self.re * o.re);
        }
        Gauss { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Div for Gauss {
    type Output = Gauss;
    fn div(self, o: Gauss) -> Gauss {
        assert!(!Scalar::is_zero(&o), "division by zero");
        if o.im.is_zero() {
            return Gauss { re: self.re / &o.re, im: self.im / o.re };
        }
        let n = o.norm_sq();
        let c = o.conj();
        let p = self * c;
        Gauss { re: p.re / &n, im: p.im / n }
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl fmt::Debug for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar for Gauss {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn zero() -> Self {
        Gauss::real(BigRational::zero())
    }
    fn one() -> Self {
        Gauss::real(BigRational::one())
    }
    fn i() -> Self {
        Gauss { re: BigRational::zero(), im: BigRational::one() }
    }
    fn from_i64(v: i64) -> Self {
        Gauss::real(rat(v, 1))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Gauss::real(rat(num, den))
    }
    fn from_rational(q: &BigRational) -> Self {
        Gauss::real(q.clone())
    }
    fn from_parts(re: &BigRational, im: &BigRational) -> Self {
        Gauss { re: re.clone(), im: im.clone() }
    }
    fn from_c64(z: Complex64) -> Self {
        Gauss { re: rat_from_f64(z.re), im: rat_from_f64(z.im) }
    }
    fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }
    fn re(&self) -> Self {
        Gauss::real(self.re.clone())
    }
    fn im(&self) -> Self {
        Gauss::real(self.im.clone())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
    fn reduce_mod_z(&self) -> Self {
        Gauss { re: &self.re - self.re.floor(), im: self.im.clone() }
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn from_parts(re: &BigRational, im: &BigRational) -> Self {
        Complex64::new(re.to_f64().unwrap_or(f64::NAN), im.to_f64().unwrap_or(f64::NAN))
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn re(&self) -> Self {
        Complex64::new(self.re, 0.0)
    }
    fn im(&self) -> Self {
        Complex64::new(self.im, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn reduce_mod_z(&self) -> Self {
        let re = self.re - self.re.floor();
        Complex64::new(if re >= 1.0 { 0.0 } else { re }, self.im)
    }
}
