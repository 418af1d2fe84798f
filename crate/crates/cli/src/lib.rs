//! Sweeps, reports and Monte Carlo cross-checks for the above-threshold OPO
//! noise model, with CSV/JSON emission. The `triopo` binary is a thin
//! argument-parsing layer over this library.

pub mod config;
pub mod oracle;
pub mod point;
pub mod sweep;

pub use config::{CliError, Grid, OmegaGrid, OutputKind, ParamSpec, SweepConfig};
pub use oracle::{run_oracle_check, OracleReport, OracleRow};
pub use point::{run_point, PointReport};
pub use sweep::{run_sweep, SweepRow, SweepTable};

/// Cap the rayon pool from TRIOPO_THREADS, when set. Returns an error only
/// for an unparsable value; a pool that is already running is left alone.
pub fn configure_threads_from_env() -> Result<(), CliError> {
    match std::env::var("TRIOPO_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let n: usize = raw.parse().map_err(|_| {
                CliError::Config(format!("TRIOPO_THREADS = {raw:?} is not a thread count"))
            })?;
            if n == 0 {
                return Err(CliError::Config("TRIOPO_THREADS must be at least 1".into()));
            }
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Ok(())
        }
    }
}
