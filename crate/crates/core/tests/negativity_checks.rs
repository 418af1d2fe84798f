//! Cross-module eigenvalue identifications and negativity behavior.

use triopo_core::linalg::sym_eigen;
use triopo_core::{
    en_diff, evaluate_criteria, negativity_from, output_spectrum, ppt_symplectic_check, Mode,
    OpoParams,
};

fn defaults(sigma: f64) -> OpoParams<f64> {
    OpoParams::new(0.10, 0.02, 0.0, 0.0, sigma, 1.0).unwrap()
}

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;
const P_MINUS: [f64; 6] = [0.0, 0.0, H, 0.0, -H, 0.0];

/// The normalized twin amplitude difference is an exact eigenvector of the
/// covariance matrix at every operating point, and always one of the two
/// smallest eigenvalues on the default window.
#[test]
fn twin_difference_is_an_exact_eigenpair() {
    for (sigma, omega) in [
        (1.5, 0.005),
        (1.5, 0.02),
        (1.5, 0.05),
        (1.2, 0.01),
        (1.9, 0.005),
        (1.9, 0.3),
    ] {
        let sm = output_spectrum(&defaults(sigma), omega).unwrap();
        let target = sm.variance(&P_MINUS);
        let (vals, vecs) = sym_eigen(&sm.re());

        let idx = vals
            .iter()
            .position(|&l| (l - target).abs() < 1e-9)
            .unwrap_or_else(|| panic!("V(p-) = {target} not an eigenvalue at ({sigma}, {omega}): {vals:?}"));
        assert!(idx <= 1, "twin difference not among the two smallest");

        // the matching eigenvector is the twin difference itself (up to sign)
        let v: [f64; 6] = std::array::from_fn(|k| vecs[k][idx]);
        let overlap: f64 = v.iter().zip(&P_MINUS).map(|(a, b)| a * b).sum();
        for k in 0..6 {
            assert!(
                (v[k] - overlap.signum() * P_MINUS[k]).abs() < 1e-6,
                "eigenvector component {k} = {}",
                v[k]
            );
        }
    }
}

/// At the bottom of the frequency window (and pump powers past ~1.4) the
/// twin difference carries the smallest eigenvalue; at higher analysis
/// frequencies the optimal phase combination dips below it and the order
/// swaps.
#[test]
fn eigenvalue_ordering_across_the_window() {
    let sm = output_spectrum(&defaults(1.5), 0.005).unwrap();
    let target = sm.variance(&P_MINUS);
    let (vals, _) = sym_eigen(&sm.re());
    assert!((vals[0] - target).abs() < 1e-9, "lambda1 = {}", vals[0]);

    let sm = output_spectrum(&defaults(1.5), 0.05).unwrap();
    let target = sm.variance(&P_MINUS);
    let (vals, _) = sym_eigen(&sm.re());
    assert!(vals[0] < target - 1e-3);
    assert!(
        (vals[1] - target).abs() < 1e-9,
        "lambda2 = {} vs V(p-) = {target}",
        vals[1]
    );
}

/// Where the second eigenvector is the phase combination (q1 + q2 - b q0),
/// the reported coefficient tracks the optimal S1 parameter.
#[test]
fn beta_is_reported_where_the_pattern_holds() {
    let sm = output_spectrum(&defaults(1.5), 0.005).unwrap();
    let n = negativity_from(&sm).unwrap();
    let beta = n.beta.expect("pattern holds here");
    assert!(beta > 0.0 && beta < 2.0);
    // same ballpark as the optimized witness coefficient
    let w = evaluate_criteria(&sm).unwrap();
    assert!((beta - w.alpha0).abs() < 0.3, "beta {beta} vs alpha0 {}", w.alpha0);

    // where the second eigenvector is amplitude-like there is no beta
    let sm = output_spectrum(&defaults(1.5), 0.05).unwrap();
    assert!(negativity_from(&sm).unwrap().beta.is_none());
}

#[test]
fn full_beats_reduced_across_the_grid() {
    for sigma in [1.05, 1.35, 1.65, 2.0] {
        for omega in [0.005, 0.03, 0.1, 0.3, 0.5] {
            let n = en_diff(&defaults(sigma), omega).unwrap();
            assert!(
                n.en_diff >= -1e-10,
                "en_diff = {} at ({sigma}, {omega})",
                n.en_diff
            );
            assert!(n.en_full >= 0.0 && n.en_reduced >= 0.0);
            // Cauchy interlacing of the pump-traced submatrix
            for i in 0..4 {
                assert!(n.eigvals_full[i] <= n.eigvals_reduced[i] + 1e-12);
                assert!(n.eigvals_reduced[i] <= n.eigvals_full[i + 2] + 1e-12);
            }
        }
    }
}

#[test]
fn pump_is_entangled_with_the_twins() {
    let sm = output_spectrum(&defaults(1.5), 0.05).unwrap();
    let en = ppt_symplectic_check(&sm, Mode::Pump).unwrap();
    assert!(en > 0.0, "pump bipartition negativity = {en}");
    let n = negativity_from(&sm).unwrap();
    assert!(n.en_diff > 0.0);
}

/// The PPT cross-check is consistent across the twin relabeling.
#[test]
fn ppt_respects_twin_symmetry() {
    let sm = output_spectrum(&defaults(1.5), 0.02).unwrap();
    let a = ppt_symplectic_check(&sm, Mode::Signal).unwrap();
    let b = ppt_symplectic_check(&sm, Mode::Idler).unwrap();
    assert!((a - b).abs() < 1e-10);
    assert!(a > 0.0);
}
