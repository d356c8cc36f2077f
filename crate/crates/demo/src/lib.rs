//! WebAssembly bindings behind `www/index.html`.
//!
//! Each export has a plain Rust counterpart so the numbers can be checked
//! natively.

use mhx_core::biextension::{p1_four_points, P1Point};
use mhx_core::samples::Sampler;
use mhx_core::{Complex64, Error};
use wasm_bindgen::prelude::*;

const EPS: f64 = 1e-9;

/// Heights along a ray, with NaN where the orbit fails to be an MHS.
#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct Scan {
    mu: f64,
    limit: f64,
    moduli: Vec<f64>,
    h: Vec<f64>,
    h_tilde: Vec<f64>,
}

#[wasm_bindgen]
impl Scan {
    #[wasm_bindgen(getter)]
    pub fn mu(&self) -> f64 {
        self.mu
    }

    #[wasm_bindgen(getter)]
    pub fn limit(&self) -> f64 {
        self.limit
    }

    #[wasm_bindgen(getter)]
    pub fn moduli(&self) -> Vec<f64> {
        self.moduli.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn h(&self) -> Vec<f64> {
        self.h.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn h_tilde(&self) -> Vec<f64> {
        self.h_tilde.clone()
    }
}

fn point(re: f64, im: f64) -> P1Point {
    if re.is_finite() && im.is_finite() {
        P1Point::Finite(Complex64::new(re, im))
    } else {
        P1Point::Infinity
    }
}

/// Height of ℙ¹ minus {p, q} relative to {r, s}. `coords` holds the real and
/// imaginary parts of p, q, r, s; a non-finite pair stands for ∞.
pub fn height_of_points(coords: &[f64]) -> Result<f64, Error> {
    if coords.len() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, found: coords.len() });
    }
    let [p, q, r, s] = [0, 2, 4, 6].map(|i| point(coords[i], coords[i + 1]));
    p1_four_points::<Complex64>(p, q, r, s, EPS)?.height()
}

/// h and h̃ at |t| = 10^{−1}, …, 10^{−decades} on a random orbit with
/// `pure_pairs` weight −1 pairs.
pub fn scan_orbit(seed: u64, pure_pairs: usize, angle: f64, decades: u32) -> Result<Scan, Error> {
    let orbit = Sampler::new(seed).coupled_orbit::<Complex64>(pure_pairs, EPS)?;
    let moduli: Vec<f64> = (1..=decades as i32).map(|d| 10f64.powi(-d)).collect();
    let scan = orbit.height_scan(angle, &moduli)?;
    let h = scan.records.iter().map(|r| r.h.clone().unwrap_or(f64::NAN)).collect();
    let h_tilde = scan.records.iter().map(|r| r.h_tilde.unwrap_or(f64::NAN)).collect();
    Ok(Scan { mu: scan.mu, limit: scan.h_limit, moduli, h, h_tilde })
}

/// Rows (Im z, distance, literal distance) at z = x + i·2^k, k < count, for
/// the same random orbit as [`scan_orbit`].
pub fn crosscheck_orbit(seed: u64, pure_pairs: usize, x: f64, count: u32) -> Result<Vec<[f64; 3]>, Error> {
    let orbit = Sampler::new(seed).coupled_orbit::<Complex64>(pure_pairs, EPS)?;
    let zs: Vec<Complex64> = (0..count as i32).map(|k| Complex64::new(x, 2f64.powi(k))).collect();
    Ok(orbit
        .y_limit_crosscheck(&zs)?
        .into_iter()
        .map(|s| [s.z.im, s.distance.unwrap_or(f64::NAN), s.literal_distance.unwrap_or(f64::NAN)])
        .collect())
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn four_point_height(coords: &[f64]) -> Result<f64, JsError> {
    height_of_points(coords).map_err(js)
}

#[wasm_bindgen]
pub fn orbit_scan(seed: u32, pure_pairs: u32, angle: f64, decades: u32) -> Result<Scan, JsError> {
    scan_orbit(seed.into(), pure_pairs as usize, angle, decades).map_err(js)
}

/// Flattened rows of [`crosscheck_orbit`].
#[wasm_bindgen]
pub fn limit_crosscheck(seed: u32, pure_pairs: u32, x: f64, count: u32) -> Result<Vec<f64>, JsError> {
    Ok(crosscheck_orbit(seed.into(), pure_pairs as usize, x, count).map_err(js)?.concat())
}
