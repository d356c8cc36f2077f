use mhx_core::samples::Sampler;
use mhx_core::Complex64;
use mhx_demo::{crosscheck_orbit, height_of_points, scan_orbit};

#[test]
fn four_points_with_infinity() {
    let x: f64 = 3.0;
    let h = height_of_points(&[0.0, 0.0, f64::INFINITY, 0.0, 1.0, 0.0, x, 0.0]).unwrap();
    assert!((h - x.ln()).abs() < 1e-14, "{h}");
}

#[test]
fn four_point_height_is_mobius_invariant() {
    let pts =
        [Complex64::new(0.3, 1.0), Complex64::new(-2.0, 0.5), Complex64::new(1.5, -0.7), Complex64::new(0.1, 2.2)];
    let g = |z: Complex64| (z * 2.0 + 1.0) / (z + 3.0);
    let flat = |ps: &[Complex64]| ps.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<_>>();
    let before = height_of_points(&flat(&pts)).unwrap();
    let after = height_of_points(&flat(&pts.map(g))).unwrap();
    assert!((before - after).abs() < 1e-12, "{before} {after}");
}

#[test]
fn malformed_points_are_rejected() {
    assert!(height_of_points(&[0.0; 6]).is_err());
    assert!(height_of_points(&[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 2.0, 0.0]).is_err());
}

#[test]
fn scan_matches_the_library() {
    let scan = scan_orbit(5, 1, 0.4, 8).unwrap();
    let orbit = Sampler::new(5).coupled_orbit::<Complex64>(1, 1e-9).unwrap();
    assert_eq!(scan.limit(), orbit.limit_height().unwrap());
    assert_eq!(scan.mu(), orbit.mu().unwrap().re);
    assert_eq!(scan.moduli().len(), 8);
    assert!(scan.moduli().windows(2).all(|w| w[0] > w[1]));
    let gaps: Vec<f64> = scan.h_tilde().iter().map(|h| (h - scan.limit()).abs()).collect();
    assert!(gaps.iter().all(|g| g.is_finite()));
    assert!(gaps[2..].windows(2).all(|w| w[1] <= w[0] + 1e-12), "{gaps:?}");
    for ((h, ht), r) in scan.h().iter().zip(scan.h_tilde()).zip(scan.moduli()) {
        assert!((h + scan.mu() * r.ln() - ht).abs() < 1e-12);
    }
}

#[test]
fn crosscheck_distances_shrink() {
    let rows = crosscheck_orbit(5, 1, 0.25, 5).unwrap();
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), [1.0, 2.0, 4.0, 8.0, 16.0]);
    assert!(rows.windows(2).all(|w| w[1][1] <= w[0][1] + 1e-12), "{rows:?}");
    assert!(rows[4][1] < 1e-9, "{rows:?}");
}
