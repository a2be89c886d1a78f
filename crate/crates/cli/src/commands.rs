//! Subcommand implementations. Reports go to standard output; warnings and
//! failure diagnostics go to standard error so the CSV/JSON artifacts stay
//! machine-readable.

use std::path::{Path, PathBuf};

use serde_json::json;

use moledrill_core::caster;
use moledrill_core::config::Config;
use moledrill_core::cycle;
use moledrill_core::data;
use moledrill_core::drilling::solve_operating_point;
use moledrill_core::forelimb;
use moledrill_core::optimizer::{self, SweepRange};
use moledrill_core::Error;

use crate::render;

/// Illustrative cornering-force rise emitted by `caster --csv-out`.
const RISE_TIME_CONSTANT_S: f64 = 0.2;
const RISE_DURATION_S: f64 = 2.0;
const RISE_STEP_S: f64 = 0.01;

pub struct Output {
    pub json: bool,
    pub csv_out: Option<PathBuf>,
}

impl Output {
    fn write_csv(&self, text: &str) -> Result<(), Error> {
        if let Some(path) = &self.csv_out {
            std::fs::write(path, text).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
        }
        Ok(())
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports contain only finite numbers")
}

pub fn predict(
    config: &Config,
    wob_min: f64,
    wob_max: f64,
    step: f64,
    out: &Output,
) -> Result<u8, Error> {
    let range = SweepRange {
        wob_min,
        wob_max,
        step,
    };
    let result = optimizer::sweep(&range, config)?;
    if result.grid.is_empty() {
        eprintln!(
            "error: the motor stalls across the entire range [{wob_min}, {wob_max}] N; \
             no operating point is feasible"
        );
        return Ok(3);
    }
    if result.truncated {
        eprintln!(
            "warning: motor stall inside the range; grid truncated at {:.3} N",
            result.grid.last().expect("non-empty grid").wob
        );
    }
    let csv = render::sweep_csv(&result.grid);
    if out.json {
        println!("{}", to_json(&result));
    } else {
        print!("{csv}");
    }
    out.write_csv(&csv)?;
    Ok(0)
}

pub fn optimize(
    config: &Config,
    wob_min: f64,
    wob_max: f64,
    step: f64,
    data_path: Option<&Path>,
    out: &Output,
) -> Result<u8, Error> {
    let records = match data_path {
        Some(path) => data::load_table3(path)?,
        None => data::bundled_table3(),
    };
    let range = SweepRange {
        wob_min,
        wob_max,
        step,
    };
    let (calibration, swept) = optimizer::optimum_report(config, &records, &range)?;
    if swept.truncated {
        eprintln!("warning: motor stall inside the range; grid truncated");
    }
    if out.json {
        println!(
            "{}",
            to_json(&json!({ "calibration": calibration, "sweep": swept }))
        );
    } else {
        let max_resid = calibration
            .residuals
            .iter()
            .map(|r| r.rel_error.abs())
            .fold(0.0_f64, f64::max);
        println!(
            "s_cal = {:.6} (fit residual max = {:.4}; excluded: {})",
            calibration.s_cal,
            max_resid,
            if calibration.excluded.is_empty() {
                "none".to_string()
            } else {
                calibration.excluded.join(", ")
            }
        );
        match (swept.crossing, &swept.optimum) {
            (Some(crossing), Some(op)) => {
                println!(
                    "crossing: WOB = {:.3} N, e_s = {:.6} MPa",
                    crossing,
                    op.e_s / 1e6
                );
                println!(
                    "recommended: ROP = {:.4} m/hr, RPM = {:.1}, torque = {:.4} N·m",
                    op.rop, op.rpm, op.torque
                );
            }
            _ => println!(
                "no crossing: specific energy does not meet {:.6} MPa in [{:.1}, {:.1}] N",
                config.soil.sigma_c / 1e6,
                wob_min,
                wob_max
            ),
        }
    }
    out.write_csv(&render::sweep_csv(&swept.grid))?;
    Ok(0)
}

pub fn validate(
    config: &Config,
    data_path: Option<&Path>,
    tolerance: f64,
    out: &Output,
) -> Result<u8, Error> {
    let records = match data_path {
        Some(path) => data::load_table3(path)?,
        None => data::bundled_table3(),
    };
    let report = optimizer::validation_report(config, &records)?;
    if out.json {
        println!("{}", to_json(&report));
    } else {
        print!("{}", render::validation_table(&report));
    }
    out.write_csv(&render::validation_csv(&report))?;
    if report.summary.max_rel_error_included <= tolerance {
        Ok(0)
    } else {
        eprintln!(
            "check failed: max relative ROP error {:.4} exceeds tolerance {:.4}",
            report.summary.max_rel_error_included, tolerance
        );
        Ok(1)
    }
}

pub fn simulate(
    config: &Config,
    target_depth: Option<f64>,
    wob: f64,
    out: &Output,
) -> Result<u8, Error> {
    let mut plan = config.cycle.clone();
    if let Some(depth) = target_depth {
        plan.target_depth = depth;
    }
    let op = solve_operating_point(wob, &config.soil, &config.motor, &config.bit, &config.galle)?;
    let timeline = cycle::simulate(&plan, &op, &config.bit, &config.soil, op.rpm)?;
    if out.json {
        println!(
            "{}",
            to_json(&json!({ "op_point": op, "timeline": timeline }))
        );
    } else {
        println!(
            "wob = {:.3} N: rop = {:.6} m/hr, rpm = {:.1}, torque = {:.4} N·m",
            op.wob, op.rop, op.rpm, op.torque
        );
        println!(
            "cycles = {}, elapsed = {:.1} s, net advance = {:.6} m/hr",
            timeline.totals.cycles,
            timeline.totals.elapsed_s,
            timeline.totals.net_advance_rate_m_hr
        );
    }
    out.write_csv(&render::timeline_csv(&timeline))?;
    Ok(0)
}

pub fn caster(config: &Config, out: &Output) -> Result<u8, Error> {
    let balance = caster::balance(&config.caster);
    if out.json {
        println!(
            "{}",
            to_json(&json!({ "spec": config.caster, "balance": balance }))
        );
    } else {
        print!("{}", render::caster_table(&balance));
    }
    let curve = caster::rise_curve(
        &config.caster,
        RISE_TIME_CONSTANT_S,
        RISE_DURATION_S,
        RISE_STEP_S,
    );
    out.write_csv(&render::rise_csv(&curve))?;
    Ok(0)
}

pub fn forelimb(config: &Config, data_path: Option<&Path>, out: &Output) -> Result<u8, Error> {
    let mut spec = config.forelimb.clone();
    if let Some(path) = data_path {
        spec.table4 = data::load_table4(path)?;
    }
    spec.validate()?;
    spec.k_trans = forelimb::fit_k_trans(&spec)?;

    let rows: Vec<render::ForelimbFitRow> = spec
        .table4
        .iter()
        .map(|row| {
            let f_model = forelimb::max_push_force(row.alpha, &spec);
            render::ForelimbFitRow {
                d: row.d,
                alpha: row.alpha,
                f_meas: row.f_h_max,
                f_model,
                rel_error: (f_model - row.f_h_max) / row.f_h_max,
            }
        })
        .collect();
    let max_rel_error = rows
        .iter()
        .map(|r| r.rel_error.abs())
        .fold(0.0_f64, f64::max);
    let pull = forelimb::pull_forces(&spec);

    if out.json {
        let json_rows: Vec<serde_json::Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "d_mm": r.d,
                    "alpha_deg": r.alpha,
                    "f_meas_n": r.f_meas,
                    "f_model_n": r.f_model,
                    "rel_error": r.rel_error,
                })
            })
            .collect();
        println!(
            "{}",
            to_json(&json!({
                "k_trans": spec.k_trans,
                "rows": json_rows,
                "max_rel_error": max_rel_error,
                "pull": pull,
            }))
        );
    } else {
        print!(
            "{}",
            render::forelimb_table(&spec, &rows, &pull, max_rel_error)
        );
    }
    out.write_csv(&render::forelimb_csv(&rows))?;
    Ok(0)
}
