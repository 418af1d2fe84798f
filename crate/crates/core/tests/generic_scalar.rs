//! The core is generic over the scalar: exercise the f32 instantiation.

use triopo_core::{
    estimate_spectrum, evaluate_criteria, negativity_from, output_spectrum, simulate, OpoParams,
    OpoParams32, SimConfig,
};

#[test]
fn f32_pipeline_smoke() {
    let p: OpoParams32 = OpoParams32::new(0.10, 0.02, 0.0, 0.0, 1.5, 1.0).unwrap();
    assert!((p.gamma0() - 0.05).abs() < 1e-7);

    // shot-noise limit survives single precision
    let sm = output_spectrum(&p, 100.0f32).unwrap();
    let re = sm.re();
    for i in 0..6 {
        for j in 0..6 {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((re[i][j] - expect).abs() < 2e-3);
        }
    }

    let sm = output_spectrum(&p, 0.02f32).unwrap();
    let w = evaluate_criteria(&sm).unwrap();
    assert!(w.s1 > 0.0 && w.s1 < 4.0);
    assert!((w.s2 - w.s3).abs() < 1e-4);
    let n = negativity_from(&sm).unwrap();
    assert!(n.en_diff > 0.0);

    // double precision agrees with single to float accuracy
    let pd = OpoParams::<f64>::new(0.10, 0.02, 0.0, 0.0, 1.5, 1.0).unwrap();
    let wd = evaluate_criteria(&output_spectrum(&pd, 0.02f64).unwrap()).unwrap();
    assert!((w.s1 as f64 - wd.s1).abs() < 1e-4);
}

#[test]
fn f32_monte_carlo_smoke() {
    let p = OpoParams32::new(0.10, 0.02, 0.0, 0.0, 1.5, 1.0).unwrap();
    let cfg = SimConfig::<f32>::new(0.25, 4096 * 9, 4096, 3, 8).unwrap();
    let series = simulate(&p, &cfg).unwrap();
    let c = [0.0f32, 0.0, 1.0, 0.0, -1.0, 0.0];
    let est = estimate_spectrum(&series, &c, &[0.1f32]).unwrap();
    let analytic = output_spectrum(&p, 0.1f32).unwrap().variance(&c);
    assert!((est.estimates[0] - analytic).abs() <= 4.0 * est.std_errors[0]);
}
