//! One function per subcommand, generic over the scalar backend.

use std::collections::BTreeMap;
use std::fmt::Write;

use mhx_core::biextension::as_biextension;
use mhx_core::genus3::{build_v_lim, verify_main_theorem};
use mhx_core::linalg::Filtration;
use mhx_core::nilpotent::{relative_weight_filtration, verify_weight_filtration, weight_filtration, NilpotentOperator};
use mhx_core::orbit::{make_orbit, NilpotentOrbit};
use mhx_core::Scalar;
use serde::Serialize;

use crate::{CliError, Document};

/// What a command prints, plus an optional JSON sidecar and a failed check
/// that turns into a nonzero exit after the report is written.
#[derive(Debug, Default)]
pub struct Report {
    pub text: String,
    pub sidecar: Option<String>,
    pub verdict: Option<CliError>,
}

impl Report {
    fn text(text: String) -> Self {
        Report { text, ..Report::default() }
    }
}

/// 17 significant digits.
pub fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn dims_table(out: &mut String, label: &str, dims: &BTreeMap<i32, usize>) {
    for (k, d) in dims {
        writeln!(out, "  {label}_{k} {d}").unwrap();
    }
}

fn cumulative(out: &mut String, label: &str, f: &Filtration<impl Scalar>) {
    let (lo, hi) = f.support();
    for k in lo - 1..=hi {
        writeln!(out, "  {label}_{k} {}", f.get(k).dim()).unwrap();
    }
}

fn operator<S: Scalar>(doc: &Document, eps: f64) -> Result<NilpotentOperator<S>, CliError> {
    Ok(NilpotentOperator::new(doc.space(eps), doc.n_matrix()?)?)
}

pub fn validate<S: Scalar>(doc: &Document, eps: f64) -> Result<Report, CliError> {
    let mhs = doc.mhs::<S>(eps)?;
    let mut out = format!("valid mixed Hodge structure of dimension {}\nweight graded dims:\n", mhs.dim());
    dims_table(&mut out, "Gr", &mhs.weight_dims());
    out.push_str("hodge numbers:\n");
    for ((a, b), d) in mhs.hodge_numbers() {
        writeln!(out, "  h^{{{a},{b}}} {d}").unwrap();
    }
    Ok(Report::text(out))
}

pub fn split<S: Scalar>(doc: &Document, eps: f64) -> Result<Report, CliError> {
    let mhs = doc.mhs::<S>(eps)?;
    let delta = mhs.delta()?;
    let mut out = String::from("Deligne splitting:\n");
    for ((a, b), d) in mhs.hodge_numbers() {
        writeln!(out, "  I^{{{a},{b}}} {d}").unwrap();
    }
    writeln!(out, "split over R: {}", if mhs.is_split() { "yes" } else { "no" }).unwrap();
    writeln!(out, "delta is zero: {}", if delta.matrix.is_zero(eps) { "yes" } else { "no" }).unwrap();
    Ok(Report::text(out))
}

pub fn delta<S: Scalar>(doc: &Document, eps: f64) -> Result<Report, CliError> {
    let delta = doc.mhs::<S>(eps)?.delta()?;
    let mut out = format!("delta:\n{}", delta.matrix);
    for (j, c) in &delta.components {
        if !c.is_zero(eps) {
            write!(out, "delta_{{{}}}:\n{c}", -j).unwrap();
        }
    }
    writeln!(out, "residual {}", number(delta.residual)).unwrap();
    Ok(Report::text(out))
}

pub fn height<S: Scalar>(doc: &Document, eps: f64) -> Result<Report, CliError> {
    let mhs = doc.mhs::<S>(eps)?;
    let (one, one_dual) = doc.generators()?;
    let b = as_biextension(mhs, one, one_dual)?;
    let coefficient = b.delta_coefficient()?;
    let out = format!(
        "delta coefficient {coefficient}\nheight {}\n",
        number(2.0 * std::f64::consts::PI * coefficient.to_c64().re)
    );
    Ok(Report::text(out))
}

pub fn wfilt<S: Scalar>(doc: &Document, center: i32, eps: f64) -> Result<Report, CliError> {
    let n = operator::<S>(doc, eps)?;
    let w = weight_filtration(&n, center)?;
    let report = verify_weight_filtration(&w, &n, center);
    let mut out = format!("W(N) centered at {center}, cumulative dims:\n");
    cumulative(&mut out, "W", &w);
    writeln!(out, "verified: {}", if report.passed() { "yes" } else { "no" }).unwrap();
    Ok(Report::text(out))
}

pub fn relwfilt<S: Scalar>(doc: &Document, eps: f64) -> Result<Report, CliError> {
    let n = operator::<S>(doc, eps)?;
    let w = doc.weight::<S>(eps)?;
    let m = relative_weight_filtration(&n, &w)?;
    let mut out = format!("M(N, W) via {:?} construction, cumulative dims:\n", m.construction);
    cumulative(&mut out, "M", &m.filtration);
    if m.filtration.same_as(&w) {
        out.push_str("M = W\n");
    }
    Ok(Report::text(out))
}

pub fn orbit<S: Scalar>(doc: &Document, eps: f64) -> Result<NilpotentOrbit<S>, CliError> {
    let n = operator::<S>(doc, eps)?;
    let (one, one_dual) = doc.generators()?;
    Ok(make_orbit(n, doc.hodge(eps)?, doc.weight(eps)?, one, one_dual)?)
}

#[derive(Serialize)]
struct ScanSidecar {
    mu: f64,
    #[serde(rename = "H_limit")]
    h_limit: f64,
    converged_gap: Option<f64>,
}

/// CSV of (|t|, arg t, h, h̃) at |t| = 10^{−1}, …, 10^{−decades}.
pub fn scan<S: Scalar>(doc: &Document, angle: f64, decades: u32, eps: f64) -> Result<Report, CliError> {
    if decades == 0 {
        return Err(CliError::Parse("--decades must be positive".into()));
    }
    let orbit = orbit::<S>(doc, eps)?;
    let moduli: Vec<f64> = (1..=decades).map(|d| 10f64.powi(-(d as i32))).collect();
    let scan = orbit.height_scan(angle, &moduli)?;
    let mut out = String::from("t_abs,t_arg,h,h_tilde\n");
    for (r, &modulus) in scan.records.iter().zip(&moduli) {
        let h = r.h.as_ref().map_or(String::new(), |h| number(*h));
        let h_tilde = r.h_tilde.map_or(String::new(), number);
        writeln!(out, "{},{},{h},{h_tilde}", number(modulus), number(angle)).unwrap();
    }
    let converged_gap = scan.records.iter().rev().find_map(|r| r.h_tilde).map(|h| (h - scan.h_limit).abs());
    let sidecar = ScanSidecar { mu: scan.mu, h_limit: scan.h_limit, converged_gap };
    let sidecar = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n";
    Ok(Report { text: out, sidecar: Some(sidecar), verdict: None })
}

pub fn genus3<S: Scalar>(doc: &Document, verify: bool, eps: f64) -> Result<Report, CliError> {
    let model = doc.model::<S>()?;
    model.validate(eps)?;
    if !verify {
        let orbit = build_v_lim(&model, eps)?;
        let mut out = String::from("limit biextension, graded dims of W:\n");
        dims_table(&mut out, "Gr", &orbit.weight().graded_dims());
        out.push_str("graded dims of M:\n");
        dims_table(&mut out, "Gr", &orbit.m().graded_dims());
        writeln!(out, "mu {}", orbit.mu()?).unwrap();
        writeln!(out, "limit height {}", number(orbit.limit_height()?)).unwrap();
        return Ok(Report::text(out));
    }
    let r = verify_main_theorem(&model, eps)?;
    let mut out = String::new();
    writeln!(out, "limit height {}", number(r.limit_height)).unwrap();
    writeln!(out, "boundary height {}", number(r.boundary_height)).unwrap();
    writeln!(out, "gap {}", number(r.gap)).unwrap();
    writeln!(out, "restriction distance {}", number(r.restriction_distance)).unwrap();
    writeln!(out, "delta_M,0 norm {}", number(r.delta_m0_norm)).unwrap();
    out.push_str("graded dims of M on the limit:\n");
    dims_table(&mut out, "Gr", &r.m_dims);
    out.push_str("graded dims of M on Q:\n");
    dims_table(&mut out, "Gr", &r.q_dims);
    out.push_str("graded dims of W on the boundary biextension:\n");
    dims_table(&mut out, "Gr", &r.boundary_dims);
    let verdict = (!r.passed(eps)).then(|| CliError::Failed(format!("gap {:e} at tolerance {eps:e}", r.gap)));
    writeln!(out, "{}", if verdict.is_none() { "PASS" } else { "FAIL" }).unwrap();
    Ok(Report { text: out, sidecar: None, verdict })
}
