use minisphere::bench::{run_convergence_on, run_scaling, KPolicy, ScalingConfig};
use minisphere::Point3;

#[test]
fn growing_k_scales_like_k_times_n() {
    // k ~ n^(1/4) predicts a slope near 1.25.
    let report = run_scaling(&ScalingConfig {
        k: KPolicy::Auto,
        ..ScalingConfig::default()
    })
    .unwrap();
    assert!((0.85..=1.30).contains(&report.slope), "slope {}", report.slope);
    let ks: Vec<usize> = report.sizes.iter().map(|s| s.k.unwrap()).collect();
    assert!(ks.windows(2).all(|w| w[0] <= w[1]), "{ks:?}");
}

#[test]
fn cube_corners_are_covered_at_every_k() {
    let corners: Vec<Point3> = (0..8)
        .map(|c| Point3::new((c & 1) as f64, ((c >> 1) & 1) as f64, (c >> 2) as f64))
        .collect();
    let clouds = vec![corners; 4];
    let report = run_convergence_on(&clouds, &[1, 2, 3, 4], &[6, 12, 24, 48], false).unwrap();
    for row in &report.rows {
        assert_eq!(row.coverage_mean, Some(1.0), "k = {}", row.k);
    }
}
