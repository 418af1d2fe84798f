//! Grid evaluation over (sigma, omega) and table serialization.

use std::io::{self, Write};

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use triopo_core::{evaluate_criteria, negativity_from, output_spectrum};

use crate::config::{fmt_sig, CliError, OutputKind, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessCols {
    pub s1_min: f64,
    pub alpha0: f64,
    pub s2_min: f64,
    pub alpha2: f64,
    pub s3_min: f64,
    pub alpha1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityCols {
    pub lambda1: f64,
    pub lambda2: f64,
    pub en_full: f64,
    pub en_reduced: f64,
    pub en_diff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub sigma: f64,
    pub omega: f64,
    pub witnesses: Option<WitnessCols>,
    pub negativity: Option<NegativityCols>,
    /// Diagonal quadrature variances (p0, q0, p1, q1, p2, q2).
    pub diagonal: Option<[f64; 6]>,
    /// "ok" or the error that hit this grid point.
    pub status: Result<(), String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub config: SweepConfig,
    pub sigmas: Vec<f64>,
    pub omegas: Vec<f64>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.status.is_err()).count()
    }
}

/// Evaluate the grid, ordered by (sigma, omega). Grid points are independent
/// and run on the current rayon pool; the collected order is deterministic.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepTable, CliError> {
    cfg.validate()?;
    let sigmas = cfg.sigma_grid.points();
    let omegas = cfg.omega_grid.points();
    let points: Vec<(f64, f64)> = sigmas
        .iter()
        .flat_map(|&s| omegas.iter().map(move |&w| (s, w)))
        .collect();

    let rows: Vec<SweepRow> = points
        .par_iter()
        .map(|&(sigma, omega)| eval_point(cfg, sigma, omega))
        .collect();

    Ok(SweepTable {
        config: cfg.clone(),
        sigmas,
        omegas,
        rows,
    })
}

fn eval_point(cfg: &SweepConfig, sigma: f64, omega: f64) -> SweepRow {
    let mut row = SweepRow {
        sigma,
        omega,
        witnesses: None,
        negativity: None,
        diagonal: None,
        status: Ok(()),
    };
    let result = (|| -> Result<(), triopo_core::Error> {
        let params = cfg.params.build(sigma)?;
        let sm = output_spectrum(&params, omega)?;
        if cfg.selected(OutputKind::Witnesses) {
            let w = evaluate_criteria(&sm)?;
            row.witnesses = Some(WitnessCols {
                s1_min: w.s1,
                alpha0: w.alpha0,
                s2_min: w.s2,
                alpha2: w.alpha2,
                s3_min: w.s3,
                alpha1: w.alpha1,
            });
        }
        if cfg.selected(OutputKind::Negativity) {
            let n = negativity_from(&sm)?;
            row.negativity = Some(NegativityCols {
                lambda1: n.eigvals_full[0],
                lambda2: n.eigvals_full[1],
                en_full: n.en_full,
                en_reduced: n.en_reduced,
                en_diff: n.en_diff,
            });
        }
        if cfg.selected(OutputKind::Spectra) {
            let re = sm.re();
            row.diagonal = Some(std::array::from_fn(|i| re[i][i]));
        }
        Ok(())
    })();
    if let Err(e) = result {
        row.status = Err(e.to_string());
    }
    row
}

pub const WITNESS_HEADERS: [&str; 6] = ["s1_min", "alpha0", "s2_min", "alpha2", "s3_min", "alpha1"];
pub const NEGATIVITY_HEADERS: [&str; 5] = ["lambda1", "lambda2", "en_full", "en_reduced", "en_diff"];
pub const SPECTRA_HEADERS: [&str; 6] = ["spp0", "sqq0", "spp1", "sqq1", "spp2", "sqq2"];

fn header(cfg: &SweepConfig) -> Vec<&'static str> {
    let mut cols = vec!["sigma", "omega"];
    if cfg.selected(OutputKind::Witnesses) {
        cols.extend(WITNESS_HEADERS);
    }
    if cfg.selected(OutputKind::Negativity) {
        cols.extend(NEGATIVITY_HEADERS);
    }
    if cfg.selected(OutputKind::Spectra) {
        cols.extend(SPECTRA_HEADERS);
    }
    cols.push("status");
    cols
}

fn row_values(row: &SweepRow) -> Vec<Option<f64>> {
    let mut vals = Vec::new();
    if let Some(w) = &row.witnesses {
        vals.extend([w.s1_min, w.alpha0, w.s2_min, w.alpha2, w.s3_min, w.alpha1].map(Some));
    }
    if let Some(n) = &row.negativity {
        vals.extend([n.lambda1, n.lambda2, n.en_full, n.en_reduced, n.en_diff].map(Some));
    }
    if let Some(d) = &row.diagonal {
        vals.extend(d.map(Some));
    }
    vals
}

/// CSV with a header row, "." decimal separator and 12 significant digits.
pub fn write_csv(table: &SweepTable, out: &mut dyn Write) -> io::Result<()> {
    let cols = header(&table.config);
    writeln!(out, "{}", cols.join(","))?;
    let value_cols = cols.len() - 3; // minus sigma, omega, status
    for row in &table.rows {
        let mut cells = vec![fmt_sig(row.sigma), fmt_sig(row.omega)];
        let vals = row_values(row);
        for i in 0..value_cols {
            cells.push(vals.get(i).and_then(|v| v.map(fmt_sig)).unwrap_or_default());
        }
        cells.push(match &row.status {
            Ok(()) => "ok".to_string(),
            Err(msg) => format!("error: {msg}"),
        });
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

/// JSON array of row objects carrying the same columns as the CSV.
pub fn write_json(table: &SweepTable, out: &mut dyn Write) -> io::Result<()> {
    let cols = header(&table.config);
    let value_cols = cols.len() - 3;
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            obj.insert("sigma".into(), json!(row.sigma));
            obj.insert("omega".into(), json!(row.omega));
            let vals = row_values(row);
            for i in 0..value_cols {
                let key = cols[2 + i].to_string();
                match vals.get(i).copied().flatten() {
                    Some(v) => obj.insert(key, json!(v)),
                    None => obj.insert(key, Value::Null),
                };
            }
            obj.insert(
                "status".into(),
                match &row.status {
                    Ok(()) => json!("ok"),
                    Err(msg) => json!(format!("error: {msg}")),
                },
            );
            Value::Object(obj)
        })
        .collect();
    serde_json::to_writer_pretty(&mut *out, &rows)?;
    writeln!(out)?;
    Ok(())
}
