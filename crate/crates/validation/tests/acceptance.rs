use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use mhx_core::biextension::{p1_four_points, two_step, P1Point, CROSS_RATIO_KAPPA};
use mhx_core::genus3::{build_h1_lim, build_h3_lim, build_v_lim, verify_main_theorem};
use mhx_core::linalg::{Direction, Filtration, Matrix, Space, Subspace};
use mhx_core::mhs::{check_morphism, direct_sum, MixedHodgeStructure};
use mhx_core::nilpotent::{verify_weight_filtration, weight_filtration, NilpotentOperator};
use mhx_core::orbit::{make_orbit, NilpotentOrbit};
use mhx_core::samples::{jordan, partitions, Sampler};
use mhx_core::{Complex64, Gauss, Scalar};

const FLOAT_EPS: f64 = 1e-9;
const RAYS: [f64; 3] = [0.3, 1.7, -2.4];
const CROSSCHECK_IM: [f64; 5] = [1.0, 2.0, 4.0, 8.0, 16.0];
const NOISE: f64 = 1e-12;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn decades(d: i32) -> Vec<f64> {
    (1..=d).map(|k| 10f64.powi(-k)).collect()
}

fn sum_of<S: Scalar>(space: Space, pieces: impl Iterator<Item = Subspace<S>>) -> Subspace<S> {
    pieces.fold(Subspace::zero(space), |acc, p| acc.sum(&p).unwrap())
}

/// Direct sum, reconstruction of F and W, and the conjugation congruence.
fn bigrading_ok<S: Scalar>(m: &MixedHodgeStructure<S>) -> bool {
    let space = m.space();
    let pieces = m.splitting().pieces();
    let total: usize = pieces.values().map(|p| p.dim()).sum();
    let direct = total == m.dim() && sum_of(space, pieces.values().cloned()).is_full();
    let (flo, fhi) = m.hodge().support();
    let f_ok = (flo - 1..=fhi + 1).all(|p| {
        let s = sum_of(space, pieces.iter().filter(|((a, _), _)| *a >= p).map(|(_, s)| s.clone()));
        s.same_as(m.hodge().get(p))
    });
    let (wlo, whi) = m.weight().support();
    let w_ok = (wlo - 1..=whi + 1).all(|k| {
        let s = sum_of(space, pieces.iter().filter(|((a, b), _)| a + b <= k).map(|(_, s)| s.clone()));
        s.same_as(m.weight().get(k))
    });
    direct && f_ok && w_ok && m.conjugation_congruence()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(101);
    let mut bad = 0;
    for _ in 0..100 {
        let m = s.mhs::<Gauss>(8, -3..=2, 0.0).unwrap();
        bad += usize::from(!bigrading_ok(&m));
    }
    for _ in 0..100 {
        let m = s.mhs::<Complex64>(8, -3..=2, FLOAT_EPS).unwrap();
        bad += usize::from(!bigrading_ok(&m));
    }
    let t = start.elapsed();
    outcome(bad == 0 && t < Duration::from_secs(10), format!("200 structures, {bad} failures, {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut s = Sampler::new(202);
    let mut exact_bad = 0;
    let mut worst = 0.0f64;
    let mut unsplit = 0;
    for _ in 0..100 {
        let m = s.mhs::<Gauss>(8, -3..=2, 0.0).unwrap();
        let d = m.delta().unwrap();
        let y = m.y();
        let lhs = y.conjugate_by(
            &d.matrix.exp_nilpotent(&(Gauss::i() * Gauss::from_i64(-2)), 0.0).unwrap(),
            &d.matrix.exp_nilpotent(&(Gauss::i() * Gauss::from_i64(2)), 0.0).unwrap(),
        );
        exact_bad += usize::from(lhs != y.conj());
        unsplit += usize::from(!m.split_over_r(&d).unwrap().is_split());
    }
    for _ in 0..100 {
        let m = s.mhs::<Complex64>(8, -3..=2, FLOAT_EPS).unwrap();
        let d = m.delta().unwrap();
        worst = worst.max(d.residual);
        unsplit += usize::from(!m.split_over_r(&d).unwrap().is_split());
    }
    outcome(
        exact_bad == 0 && worst < 1e-10 && unsplit == 0,
        format!("exact nonzero residuals {exact_bad}, float max residual {worst:.1e}, not split after e^(-i delta): {unsplit}"),
    )
}

/// Inclusions of W_k, projections to V/W_k, automorphism graphs and
/// direct-sum maps; returns (count, max distance, exactness failures).
fn morphisms_for<S: Scalar>(s: &mut Sampler, eps: f64, draws: usize) -> (usize, f64, usize, usize) {
    let mut count = 0;
    let mut worst = 0.0f64;
    let mut failures = 0;
    let mut inexact = 0;
    let mut record = |r: mhx_core::Result<mhx_core::mhs::Morphism<S>>| {
        count += 1;
        match r {
            Ok(m) => worst = worst.max(m.delta_distance),
            Err(_) => failures += 1,
        }
    };
    for _ in 0..draws {
        let a = s.mhs::<S>(6, -2..=2, eps).unwrap();
        let (lo, hi) = a.weight().support();
        for k in lo..hi {
            let w = a.weight().get(k).clone();
            let (sub, incl) = a.restrict(&w).unwrap();
            let (quot, proj) = a.quotient(&w).unwrap();
            record(check_morphism(&incl, &sub, &a));
            record(check_morphism(&proj, &a, &quot));
            let (sd, qd, ad) = (sub.weight_dims(), quot.weight_dims(), a.weight_dims());
            let exact = ad.iter().all(|(l, &n)| sd.get(l).unwrap_or(&0) + qd.get(l).unwrap_or(&0) == n);
            inexact += usize::from(!exact);
        }
        let g = s.weight_automorphism(a.weight()).unwrap();
        let b = a.transform_hodge(&g).unwrap();
        record(check_morphism(&g, &a, &b));
        let c = s.mhs::<S>(4, -2..=2, eps).unwrap();
        let sum = direct_sum(&a, &c).unwrap();
        let n = a.dim();
        let into = Matrix::from_fn(sum.dim(), n, |i, j| if i == j { S::one() } else { S::zero() });
        let onto = Matrix::from_fn(c.dim(), sum.dim(), |i, j| if j == n + i { S::one() } else { S::zero() });
        record(check_morphism(&into, &a, &sum));
        record(check_morphism(&onto, &sum, &c));
    }
    (count, worst, failures, inexact)
}

fn criterion_3() -> Outcome {
    let mut s = Sampler::new(303);
    let (ce, de, fe, ie) = morphisms_for::<Gauss>(&mut s, 0.0, 15);
    let (cf, df, ff, iff) = morphisms_for::<Complex64>(&mut s, FLOAT_EPS, 15);
    outcome(
        ce >= 50 && cf >= 50 && de == 0.0 && df < 1e-10 && fe + ff == 0 && ie + iff == 0,
        format!("{ce} exact and {cf} float morphisms, exact max distance {de:.1e}, float {df:.1e}, rejected {}, non-exact graded sequences {}", fe + ff, ie + iff),
    )
}

fn mobius(m: [Complex64; 4], p: P1Point) -> P1Point {
    let [a, b, c, d] = m;
    match p {
        P1Point::Infinity if c.norm() == 0.0 => P1Point::Infinity,
        P1Point::Infinity => P1Point::Finite(a / c),
        P1Point::Finite(z) => {
            let den = c * z + d;
            if den.norm() < 1e-12 {
                P1Point::Infinity
            } else {
                P1Point::Finite((a * z + b) / den)
            }
        }
    }
}

fn criterion_4() -> Outcome {
    // κ from the exact dim-2 structure with period z = i: |CR| = e^{−2π}.
    let oracle = two_step(Gauss::i(), 0.0).unwrap().height().unwrap();
    let kappa = oracle / (-2.0 * PI);
    let mut s = Sampler::new(404);
    let mut worst = 0.0f64;
    let mut worst_mobius = 0.0f64;
    for k in 0..25 {
        let pts = s.four_points(k == 0);
        let [p, q, r, t] = pts;
        let h = p1_four_points::<Complex64>(p, q, r, t, FLOAT_EPS).unwrap().height().unwrap();
        let cr = mhx_core::biextension::cross_ratio(p, q, r, t, FLOAT_EPS).unwrap();
        worst = worst.max((h - kappa * cr.norm().ln()).abs());
        let m = s.mobius();
        let [p2, q2, r2, t2] = pts.map(|x| mobius(m, x));
        let h2 = p1_four_points::<Complex64>(p2, q2, r2, t2, FLOAT_EPS).unwrap().height().unwrap();
        worst_mobius = worst_mobius.max((h - h2).abs());
    }
    outcome(
        kappa == CROSS_RATIO_KAPPA && worst < 1e-9 && worst_mobius < 1e-9,
        format!("kappa {kappa}, max |height - kappa log|CR|| {worst:.1e}, max Mobius change {worst_mobius:.1e}"),
    )
}

/// Replacing one step by a neighbouring step, or shifting the whole
/// filtration, must break the defining conditions.
fn perturbations_fail(f: &Filtration<Gauss>, n: &NilpotentOperator<Gauss>) -> (usize, usize) {
    let (lo, hi) = f.support();
    let mut tried = 0;
    let mut survived = 0;
    let mut candidates = vec![f.shift(1), f.shift(-1)];
    for k in lo..=hi {
        for other in [k - 1, k + 1] {
            let steps: Vec<_> =
                (lo - 1..=hi + 1).map(|j| if j == k { f.get(other).clone() } else { f.get(j).clone() }).collect();
            if let Ok(p) = Filtration::new(f.space(), Direction::Increasing, lo - 1, steps) {
                if !p.same_as(f) {
                    candidates.push(p);
                }
            }
        }
    }
    for p in candidates {
        tried += 1;
        survived += usize::from(verify_weight_filtration(&p, n, 0).passed());
    }
    (tried, survived)
}

fn criterion_5() -> Outcome {
    let mut s = Sampler::new(505);
    let mut ops: Vec<NilpotentOperator<Gauss>> = Vec::new();
    for _ in 0..50 {
        let d = s.int(1..=5) as usize;
        ops.push(s.nilpotent(d, 0.0).unwrap());
    }
    for d in 1..=4 {
        for p in partitions(d) {
            ops.push(NilpotentOperator::new(Space::new(d), jordan(&p)).unwrap());
            ops.push(s.conjugated_jordan(&p, 0.0).unwrap());
        }
    }
    let (mut failed, mut tried, mut survived) = (0, 0, 0);
    for n in &ops {
        let f = weight_filtration(n, 0).unwrap();
        failed += usize::from(!verify_weight_filtration(&f, n, 0).passed());
        let (t, sv) = perturbations_fail(&f, n);
        tried += t;
        survived += sv;
    }
    outcome(
        failed == 0 && survived == 0,
        format!(
            "{} operators, verifier failures {failed}, {tried} perturbations of which {survived} passed",
            ops.len()
        ),
    )
}

fn dim2_orbit(m: i64, z0: Gauss) -> NilpotentOrbit<Gauss> {
    let s = Space::new(2);
    let (e0, e1): (Vec<Gauss>, Vec<Gauss>) = (s.basis_vector(0), s.basis_vector(1));
    let w = Filtration::from_jumps(
        s,
        Direction::Increasing,
        &BTreeMap::from([(-2, Subspace::span(s, std::slice::from_ref(&e1)).unwrap()), (0, Subspace::full(s))]),
    )
    .unwrap();
    let f = Filtration::from_jumps(
        s,
        Direction::Decreasing,
        &BTreeMap::from([(-1, Subspace::full(s)), (0, Subspace::span(s, &[vec![Gauss::one(), z0]]).unwrap())]),
    )
    .unwrap();
    let mut n = Matrix::zeros(2, 2);
    n[(1, 0)] = Gauss::from_i64(m);
    make_orbit(NilpotentOperator::new(s, n).unwrap(), f, w, e0, e1).unwrap()
}

fn generated_orbits() -> Vec<NilpotentOrbit<Gauss>> {
    let mut s = Sampler::new(606);
    (0..10).map(|k| s.coupled_orbit::<Gauss>(k % 3, 0.0).unwrap()).collect()
}

fn criterion_6(orbits: &[NilpotentOrbit<Gauss>]) -> Outcome {
    let moduli = decades(8);
    let mut not_decreasing = 0;
    let mut worst_final = 0.0f64;
    for o in orbits {
        for &theta in &RAYS {
            let scan = o.height_scan(theta, &moduli).unwrap();
            let gaps: Vec<f64> =
                scan.records.iter().map(|r| (r.h_tilde.expect("valid sample") - scan.h_limit).abs()).collect();
            not_decreasing += usize::from(gaps[2..].windows(2).any(|w| w[1] > w[0] + NOISE));
            worst_final = worst_final.max(gaps[7] / (1.0 + scan.h_limit.abs()));
        }
    }
    let closed = dim2_orbit(3, Gauss::from_ratio(1, 3) + Gauss::i() * Gauss::from_ratio(3, 4));
    let scan = closed.height_scan(0.9, &moduli).unwrap();
    let closed_gap = scan.records.iter().map(|r| (r.h_tilde.unwrap() - scan.h_limit).abs()).fold(0.0, f64::max);
    outcome(
        not_decreasing == 0 && worst_final < 1e-6 && closed_gap < 1e-12,
        format!(
            "{} rays, non-decreasing from decade 3: {not_decreasing}, max final relative gap {worst_final:.2e}, closed-form max gap {closed_gap:.1e}",
            orbits.len() * RAYS.len()
        ),
    )
}

fn criterion_7(orbits: &[NilpotentOrbit<Gauss>]) -> Outcome {
    let mut s = Sampler::new(707);
    let mut mu_changed = 0;
    let mut worst = 0.0f64;
    for k in 0..20 {
        let o = &orbits[k % orbits.len()];
        let c: Gauss = s.small_complex();
        let r = o.rescale_coordinate(&c).unwrap();
        let mu = o.mu().unwrap();
        mu_changed += usize::from(r.mu().unwrap() != mu);
        let shift = mu.to_c64().re * (Complex64::new(0.0, 2.0 * PI) * c.to_c64()).exp().norm().ln();
        let law = r.limit_height().unwrap() - o.limit_height().unwrap();
        worst = worst.max((law - shift).abs());
    }
    outcome(
        mu_changed == 0 && worst < 1e-9,
        format!("20 pairs, mu changed {mu_changed}, max shift-law error {worst:.1e}"),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(808);
    let mut dims_bad = 0;
    let (mut d0, mut gap, mut restriction) = (0.0f64, 0.0f64, 0.0f64);
    let dims = |v: &[(i32, usize)]| v.iter().copied().collect::<BTreeMap<_, _>>();
    for _ in 0..10 {
        let model = s.nodal_model::<Gauss>();
        let h1 = build_h1_lim(&model, 0.0).unwrap().0.weight_dims();
        let h3 = build_h3_lim(&model, 0.0).unwrap().0.weight_dims();
        let r = verify_main_theorem(&model, 0.0).unwrap();
        let ok = h1 == dims(&[(0, 1), (1, 4), (2, 1)])
            && h3 == dims(&[(-2, 6), (-1, 8), (0, 6)])
            && r.m_dims == dims(&[(-2, 7), (-1, 8), (0, 7)])
            && r.q_dims == dims(&[(-2, 7), (-1, 8), (0, 1)])
            && r.boundary_dims == dims(&[(-2, 1), (-1, 8), (0, 1)]);
        dims_bad += usize::from(!ok);
        d0 = d0.max(r.delta_m0_norm);
        gap = gap.max(r.gap);
        restriction = restriction.max(r.restriction_distance);
    }
    let t = start.elapsed();
    outcome(
        dims_bad == 0 && d0 < 1e-10 && gap < 1e-8 && restriction < 1e-10 && t < Duration::from_secs(60),
        format!("10 draws, dimension mismatches {dims_bad}, max delta_M0 {d0:.1e}, max gap {gap:.1e}, max restriction distance {restriction:.1e}, {t:.2?}"),
    )
}

fn criterion_9() -> Outcome {
    let mut s = Sampler::new(909);
    let (mut m_ne_w, mut spread, mut gap) = (0, 0.0f64, 0.0f64);
    for _ in 0..3 {
        let model = s.reducible_model::<Gauss>();
        let orbit = build_v_lim(&model, 0.0).unwrap();
        m_ne_w += usize::from(!orbit.m().same_as(orbit.weight()));
        let scan = orbit.height_scan(0.4, &decades(8)).unwrap();
        let hs: Vec<f64> = scan.records.iter().map(|r| *r.h.as_ref().unwrap()).collect();
        let (lo, hi) = hs.iter().fold((f64::MAX, f64::MIN), |(a, b), &h| (a.min(h), b.max(h)));
        spread = spread.max(hi - lo);
        gap = gap.max(verify_main_theorem(&model, 0.0).unwrap().gap);
    }
    outcome(
        m_ne_w == 0 && spread < 1e-12 && gap < 1e-10,
        format!("3 draws, M != W: {m_ne_w}, max h spread {spread:.1e}, max gap {gap:.1e}"),
    )
}

fn criterion_10(orbits: &[NilpotentOrbit<Gauss>]) -> Outcome {
    let mut s = Sampler::new(1010);
    let mut all: Vec<NilpotentOrbit<Gauss>> = orbits.to_vec();
    all.push(dim2_orbit(2, Gauss::from_ratio(-1, 2) + Gauss::i()));
    all.push(build_v_lim(&s.nodal_model::<Gauss>(), 0.0).unwrap());
    let zs: Vec<Complex64> = CROSSCHECK_IM.iter().map(|&y| Complex64::new(0.25, y)).collect();
    let (mut not_decreasing, mut worst) = (0, 0.0f64);
    for o in &all {
        let d: Vec<f64> = o.y_limit_crosscheck(&zs).unwrap().into_iter().map(|c| c.distance.unwrap()).collect();
        not_decreasing += usize::from(d.windows(2).any(|w| w[1] > w[0] + NOISE));
        worst = worst.max(d[4]);
    }
    outcome(
        not_decreasing == 0 && worst < 1e-6,
        format!("{} orbits, non-decreasing: {not_decreasing}, max final distance {worst:.1e}", all.len()),
    )
}

fn run(id: usize, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
    });
    let tag = if o.passed { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} {tag}  {} [{:.2?}]", o.detail, start.elapsed());
    o.passed
}

fn main() {
    let orbits = generated_orbits();
    let results = [
        run(1, criterion_1),
        run(2, criterion_2),
        run(3, criterion_3),
        run(4, criterion_4),
        run(5, criterion_5),
        run(6, || criterion_6(&orbits)),
        run(7, || criterion_7(&orbits)),
        run(8, criterion_8),
        run(9, criterion_9),
        run(10, || criterion_10(&orbits)),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
