//! Full single-point report: spectral matrix, witnesses, negativities.

use serde::Serialize;
use triopo_core::{
    evaluate_criteria, negativity_from, output_spectrum, ppt_symplectic_check, Mode,
};

use crate::config::{CliError, ParamSpec};

#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    pub params: ParamsEcho,
    pub omega: f64,
    pub steady_state: SteadyStateReport,
    pub spectral_matrix: MatrixReport,
    pub witnesses: WitnessReport,
    pub negativity: NegativityReport,
    /// Partial-transpose cross-check per lone mode (pump, signal, idler).
    pub ppt_log_negativity: PptReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamsEcho {
    pub t0: f64,
    pub t: f64,
    pub mu0: f64,
    pub mu: f64,
    pub sigma: f64,
    pub chi: f64,
    pub tau: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SteadyStateReport {
    pub pump_amp: f64,
    pub twin_amp: f64,
    pub d: f64,
}

/// Hermitian matrix as separate real and imaginary parts, physical ordering
/// (p0, q0, p1, q1, p2, q2).
#[derive(Debug, Clone, Serialize)]
pub struct MatrixReport {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub alpha0: f64,
    pub alpha2: f64,
    pub alpha1: f64,
    pub bounds: [[f64; 3]; 3],
    pub violated: [bool; 3],
    pub excludes: [[bool; 3]; 3],
    pub tripartite: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NegativityReport {
    pub eigvals_full: [f64; 6],
    pub eigvals_reduced: [f64; 4],
    pub en_full: f64,
    pub en_reduced: f64,
    pub en_diff: f64,
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PptReport {
    pub pump: f64,
    pub signal: f64,
    pub idler: f64,
}

pub fn run_point(spec: &ParamSpec, sigma: f64, omega: f64) -> Result<PointReport, CliError> {
    let params = spec.build(sigma)?;
    let ss = params.steady_state();
    let sm = output_spectrum(&params, omega)?;
    let w = evaluate_criteria(&sm)?;
    let n = negativity_from(&sm)?;
    let ppt = PptReport {
        pump: ppt_symplectic_check(&sm, Mode::Pump)?,
        signal: ppt_symplectic_check(&sm, Mode::Signal)?,
        idler: ppt_symplectic_check(&sm, Mode::Idler)?,
    };

    let re = sm.re();
    Ok(PointReport {
        params: ParamsEcho {
            t0: params.t0,
            t: params.t,
            mu0: params.mu0,
            mu: params.mu,
            sigma: params.sigma,
            chi: params.chi,
            tau: params.tau,
        },
        omega,
        steady_state: SteadyStateReport {
            pump_amp: ss.pump_amp,
            twin_amp: ss.twin_amp,
            d: ss.d,
        },
        spectral_matrix: MatrixReport {
            re: re.iter().map(|r| r.to_vec()).collect(),
            im: (0..6)
                .map(|i| (0..6).map(|j| sm.s[i][j].im).collect())
                .collect(),
        },
        witnesses: WitnessReport {
            s1: w.s1,
            s2: w.s2,
            s3: w.s3,
            alpha0: w.alpha0,
            alpha2: w.alpha2,
            alpha1: w.alpha1,
            bounds: w.bounds,
            violated: w.violated,
            excludes: w.excludes(),
            tripartite: w.tripartite(),
        },
        negativity: NegativityReport {
            eigvals_full: n.eigvals_full,
            eigvals_reduced: n.eigvals_reduced,
            en_full: n.en_full,
            en_reduced: n.en_reduced,
            en_diff: n.en_diff,
            beta: n.beta,
        },
        ppt_log_negativity: ppt,
    })
}
