//! The JSON document read and written by `mhx`.
//!
//! Rationals are strings such as `"-3/4"`; complex entries are objects
//! `{"re": …, "im": …}` whose parts are rational strings or decimals. Field
//! order and map order are fixed, so [`Document::to_canonical`] reproduces a
//! canonical input byte for byte.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use mhx_core::genus3::{Model, NodalModel, ReducibleModel, V_DIM};
use mhx_core::linalg::{Direction, Filtration, Matrix, Space, Subspace};
use mhx_core::mhs::MixedHodgeStructure;
use mhx_core::{Gauss, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Complex {
    pub re: Rational,
    pub im: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generators {
    pub one: Vec<Rational>,
    pub one_dual: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Nodal,
    Reducible,
}

/// Genus-3 model parameters. For the reducible kind `tau` is the 3×3
/// block-diagonal matrix diag(τ₂, τ₁).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub tau: Vec<Vec<Complex>>,
    pub aj_z: Vec<Complex>,
    pub aj_w: Vec<Complex>,
    pub b: Complex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub backend: Backend,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weight_filtration: BTreeMap<i32, Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub hodge_filtration: BTreeMap<i32, Vec<Vec<Complex>>>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Generators>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSpec>,
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Rational {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let parsed = match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => parse_rational(&s),
            serde_json::Value::Number(n) => parse_decimal(&n.to_string()),
            other => return Err(D::Error::custom(format!("expected a rational, found {other}"))),
        };
        parsed.map(Rational).ok_or_else(|| D::Error::custom("malformed rational"))
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl Complex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Complex { re: Rational(re), im: Rational(im) }
    }

    fn to_scalar<S: Scalar>(&self) -> S {
        S::from_parts(&self.re.0, &self.im.0)
    }
}

/// Accepts `p/q`, integers and decimals with an optional exponent, exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.contains('/') {
        let (p, q) = s.split_once('/')?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p.trim().parse().ok()?, q));
    }
    BigRational::from_str(s).ok().or_else(|| parse_decimal(s))
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let scale = exp.checked_sub(i32::try_from(frac.len()).ok()?)?;
    if scale.abs() > 4096 {
        return None;
    }
    let n: BigInt = format!("{int}{frac}").parse().ok()?;
    let q = BigRational::from_integer(n) * BigRational::from_integer(BigInt::from(10)).pow(scale);
    Some(if negative { -q } else { q })
}

fn parse_error(field: impl fmt::Display, message: impl fmt::Display) -> CliError {
    CliError::Parse(format!("{field}: {message}"))
}

fn rational_vector<S: Scalar>(v: &[Rational]) -> Vec<S> {
    v.iter().map(|q| S::from_rational(&q.0)).collect()
}

fn complex_vector<S: Scalar>(v: &[Complex]) -> Vec<S> {
    v.iter().map(Complex::to_scalar).collect()
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        doc.check_shapes()?;
        Ok(doc)
    }

    pub fn to_canonical(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialize");
        text.push('\n');
        text
    }

    fn check_shapes(&self) -> Result<(), CliError> {
        let dim = self.dimension;
        let check = |field: String, len: usize| {
            if len == dim {
                Ok(())
            } else {
                Err(parse_error(field, format!("expected length {dim}, found {len}")))
            }
        };
        for (k, gens) in &self.weight_filtration {
            for (i, v) in gens.iter().enumerate() {
                check(format!("weight_filtration.{k}[{i}]"), v.len())?;
            }
        }
        for (p, gens) in &self.hodge_filtration {
            for (i, v) in gens.iter().enumerate() {
                check(format!("hodge_filtration.{p}[{i}]"), v.len())?;
            }
        }
        if let Some(n) = &self.n {
            check("N".into(), n.len())?;
            for (i, row) in n.iter().enumerate() {
                check(format!("N[{i}]"), row.len())?;
            }
        }
        if let Some(g) = &self.generators {
            check("generators.one".into(), g.one.len())?;
            check("generators.one_dual".into(), g.one_dual.len())?;
        }
        if let Some(m) = &self.model {
            if dim != V_DIM {
                return Err(parse_error("dimension", format!("a model document has dimension {V_DIM}")));
            }
            let (tau, pairs) = match m.kind {
                ModelKind::Nodal => (2, 6),
                ModelKind::Reducible => (3, 20),
            };
            if m.tau.len() != tau || m.tau.iter().any(|row| row.len() != tau) {
                return Err(parse_error("model.tau", format!("expected a {tau}×{tau} matrix")));
            }
            for (field, v) in [("model.aj_z", &m.aj_z), ("model.aj_w", &m.aj_w)] {
                if v.len() != pairs {
                    return Err(parse_error(field, format!("expected {pairs} entries, found {}", v.len())));
                }
            }
            if m.kind == ModelKind::Reducible && m.mu.is_some() {
                return Err(parse_error("model.mu", "only nodal models carry mu"));
            }
        }
        Ok(())
    }

    pub fn space(&self, eps: f64) -> Space {
        Space::with_eps(self.dimension, eps)
    }

    fn filtration<S: Scalar>(
        &self,
        field: &str,
        data: BTreeMap<i32, Vec<Vec<S>>>,
        direction: Direction,
        eps: f64,
    ) -> Result<Filtration<S>, CliError> {
        if data.is_empty() {
            return Err(parse_error(field, "missing"));
        }
        let space = self.space(eps);
        let mut jumps = BTreeMap::new();
        for (k, gens) in data {
            jumps.insert(k, Subspace::span(space, &gens).map_err(|e| parse_error(format!("{field}.{k}"), e))?);
        }
        Filtration::from_jumps(space, direction, &jumps).map_err(|e| parse_error(field, e))
    }

    pub fn weight<S: Scalar>(&self, eps: f64) -> Result<Filtration<S>, CliError> {
        let data = self.weight_filtration.iter().map(|(&k, g)| (k, g.iter().map(|v| rational_vector(v)).collect()));
        self.filtration("weight_filtration", data.collect(), Direction::Increasing, eps)
    }

    pub fn hodge<S: Scalar>(&self, eps: f64) -> Result<Filtration<S>, CliError> {
        let data = self.hodge_filtration.iter().map(|(&p, g)| (p, g.iter().map(|v| complex_vector(v)).collect()));
        self.filtration("hodge_filtration", data.collect(), Direction::Decreasing, eps)
    }

    pub fn mhs<S: Scalar>(&self, eps: f64) -> Result<MixedHodgeStructure<S>, CliError> {
        let (w, f) = (self.weight(eps)?, self.hodge(eps)?);
        Ok(MixedHodgeStructure::new(w, f)?)
    }

    pub fn n_matrix<S: Scalar>(&self) -> Result<Matrix<S>, CliError> {
        let n = self.n.as_ref().ok_or_else(|| parse_error("N", "missing"))?;
        Ok(Matrix::from_rows(&n.iter().map(|row| rational_vector(row)).collect::<Vec<_>>()))
    }

    pub fn generators<S: Scalar>(&self) -> Result<(Vec<S>, Vec<S>), CliError> {
        let g = self.generators.as_ref().ok_or_else(|| parse_error("generators", "missing"))?;
        Ok((rational_vector(&g.one), rational_vector(&g.one_dual)))
    }

    pub fn model<S: Scalar>(&self) -> Result<Model<S>, CliError> {
        let m = self.model.as_ref().ok_or_else(|| parse_error("model", "missing"))?;
        let t = |i: usize, j: usize| m.tau[i][j].to_scalar::<S>();
        let aj_z = complex_vector(&m.aj_z);
        let aj_w = complex_vector(&m.aj_w);
        let b = m.b.to_scalar();
        Ok(match m.kind {
            ModelKind::Nodal => Model::Nodal(NodalModel {
                tau: [[t(0, 0), t(0, 1)], [t(1, 0), t(1, 1)]],
                aj_z,
                aj_w,
                b,
                mu: m.mu.as_ref().map_or_else(S::zero, |q| S::from_rational(&q.0)),
            }),
            ModelKind::Reducible => {
                for (i, j) in [(0, 2), (1, 2), (2, 0), (2, 1)] {
                    if !t(i, j).is_zero() {
                        return Err(
                            mhx_core::Error::InvalidPeriod("tau must be block diagonal diag(τ₂, τ₁)".into()).into()
                        );
                    }
                }
                Model::Reducible(ReducibleModel {
                    tau1: t(2, 2),
                    tau2: [[t(0, 0), t(0, 1)], [t(1, 0), t(1, 1)]],
                    aj_z,
                    aj_w,
                    b,
                })
            }
        })
    }

    /// The document of an exact MHS: W and F listed by their jumps.
    pub fn from_mhs(mhs: &MixedHodgeStructure<Gauss>) -> Self {
        let to_rational = |v: &[Gauss]| v.iter().map(|x| Rational(x.re.clone())).collect();
        let to_complex = |v: &[Gauss]| v.iter().map(|x| Complex::new(x.re.clone(), x.im.clone())).collect();
        let (wlo, whi) = mhs.weight().support();
        let mut weight_filtration = BTreeMap::new();
        for k in wlo..=whi {
            if k == whi || mhs.weight().get(k).dim() > mhs.weight().get(k - 1).dim() {
                weight_filtration.insert(k, mhs.weight().get(k).basis().iter().map(|v| to_rational(v)).collect());
            }
        }
        let (flo, fhi) = mhs.hodge().support();
        let mut hodge_filtration = BTreeMap::new();
        for p in flo..=fhi {
            if p == flo || mhs.hodge().get(p).dim() > mhs.hodge().get(p + 1).dim() {
                hodge_filtration.insert(p, mhs.hodge().get(p).basis().iter().map(|v| to_complex(v)).collect());
            }
        }
        Document {
            backend: Backend::Exact,
            dimension: mhs.dim(),
            weight_filtration,
            hodge_filtration,
            n: None,
            generators: None,
            model: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn rational_spellings() {
        assert_eq!(parse_rational("-3/4"), Some(q(-3, 4)));
        assert_eq!(parse_rational("6/8"), Some(q(3, 4)));
        assert_eq!(parse_rational("7"), Some(q(7, 1)));
        assert_eq!(parse_rational("0.125"), Some(q(1, 8)));
        assert_eq!(parse_rational("-2.5e-1"), Some(q(-1, 4)));
        assert_eq!(parse_rational("1e3"), Some(q(1000, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn decimal_payloads_are_exact() {
        let c: Complex = serde_json::from_str(r#"{"re": 0.1, "im": "1/3"}"#).unwrap();
        assert_eq!(c, Complex::new(q(1, 10), q(1, 3)));
        assert!(serde_json::from_str::<Complex>(r#"{"re": 1, "im": 0, "x": 1}"#).is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"backend": "exact", "dimension": 1, "extra": 3}"#;
        assert!(matches!(Document::parse(text), Err(CliError::Parse(_))));
    }

    #[test]
    fn vector_lengths_are_checked() {
        let text = r#"{"backend": "exact", "dimension": 2, "weight_filtration": {"0": [["1"]]}}"#;
        let err = Document::parse(text).unwrap_err().to_string();
        assert!(err.contains("weight_filtration.0[0]"), "{err}");
    }
}
