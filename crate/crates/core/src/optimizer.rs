//! Weight-on-bit sweeps, calibration of the penetration-rate scale against
//! bench records, and location of the operating point where specific energy
//! meets the target formation strength.
//!
//! The minimum useful specific energy equals the formation's compressive
//! strength, so the sweep's `e_s = σ_c` crossing is the recommended
//! operating point.

use serde::Serialize;

use crate::config::Config;
use crate::drilling::{
    galle_rop, normalized_wob, rotary_speed_r, solve_operating_point, OperatingPoint,
};
use crate::error::{Error, Result};
use crate::quantities::{AreaConvention, BitGeometry, ExperimentRecord, GalleConstants};

/// Bisection stops when the specific energy is within this of the target.
pub const CROSSING_TOLERANCE_PA: f64 = 1.0;

/// A weight-on-bit grid: inclusive endpoints, fixed step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRange {
    pub wob_min: f64,
    pub wob_max: f64,
    pub step: f64,
}

impl Default for SweepRange {
    fn default() -> Self {
        Self {
            wob_min: 30.0,
            wob_max: 140.0,
            step: 1.0,
        }
    }
}

impl SweepRange {
    pub fn validate(&self) -> Result<()> {
        if !(self.wob_min > 0.0 && self.wob_min < self.wob_max) {
            return Err(Error::Validation {
                field: "sweep.wob_min/wob_max".to_string(),
                message: format!(
                    "need 0 < wob_min < wob_max (got {} and {})",
                    self.wob_min, self.wob_max
                ),
            });
        }
        if self.step <= 0.0 {
            return Err(Error::Validation {
                field: "sweep.step".to_string(),
                message: format!("must be > 0 (got {})", self.step),
            });
        }
        Ok(())
    }
}

/// Result of one sweep: the grid, and the target crossing when one exists.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    /// Operating points ordered by strictly increasing weight on bit.
    pub grid: Vec<OperatingPoint>,
    /// Weight on bit where the specific energy meets the target strength.
    pub crossing: Option<f64>,
    /// The solved chain at the crossing.
    pub optimum: Option<OperatingPoint>,
    /// True when the motor stalled inside the requested range and the grid
    /// was cut short at the last feasible node.
    pub truncated: bool,
}

/// Per-record calibration residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub label: String,
    /// Signed relative error of the calibrated model against the
    /// measurement.
    pub rel_error: f64,
}

/// Fitted penetration-rate scale and its per-record quality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationReport {
    pub s_cal: f64,
    pub residuals: Vec<Residual>,
    /// Labels of records that did not inform the fit.
    pub excluded: Vec<String>,
}

impl CalibrationReport {
    pub fn is_excluded(&self, label: &str) -> bool {
        self.excluded.iter().any(|l| l == label)
    }
}

/// Evaluate the chain across a weight-on-bit grid and locate the target
/// crossing by bisection between the first straddling pair.
pub fn sweep(range: &SweepRange, config: &Config) -> Result<SweepResult> {
    range.validate()?;
    let node_count = ((range.wob_max - range.wob_min) / range.step + 1e-9).floor() as usize;
    let mut grid: Vec<OperatingPoint> = Vec::with_capacity(node_count + 1);
    let mut truncated = false;
    for k in 0..=node_count {
        let wob = range.wob_min + k as f64 * range.step;
        match solve_at(wob, config) {
            Ok(op) => grid.push(op),
            Err(Error::Stall { .. }) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let sigma = config.soil.sigma_c;
    let mut crossing = None;
    for pair in grid.windows(2) {
        let f_lo = pair[0].e_s - sigma;
        let f_hi = pair[1].e_s - sigma;
        if f_lo == 0.0 {
            crossing = Some(pair[0].wob);
            break;
        }
        if f_lo * f_hi < 0.0 {
            crossing = Some(bisect(pair[0].wob, pair[1].wob, f_lo, sigma, config)?);
            break;
        }
    }
    if crossing.is_none() {
        if let Some(last) = grid.last() {
            if last.e_s == sigma {
                crossing = Some(last.wob);
            }
        }
    }

    let optimum = match crossing {
        Some(wob) => Some(solve_at(wob, config)?),
        None => None,
    };
    Ok(SweepResult {
        grid,
        crossing,
        optimum,
        truncated,
    })
}

fn solve_at(wob: f64, config: &Config) -> Result<OperatingPoint> {
    solve_operating_point(wob, &config.soil, &config.motor, &config.bit, &config.galle)
}

fn bisect(mut lo: f64, mut hi: f64, mut f_lo: f64, sigma: f64, config: &Config) -> Result<f64> {
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let f_mid = solve_at(mid, config)?.e_s - sigma;
        if f_mid.abs() <= CROSSING_TOLERANCE_PA {
            return Ok(mid);
        }
        if (f_lo > 0.0) == (f_mid > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

/// Fit the penetration-rate scale to bench records.
///
/// Each usable record contributes the log-ratio between its measured rate
/// (depth over duration) and the unit-scale model rate evaluated at the
/// record's measured spindle speed; the fitted scale is the exponential of
/// the mean, i.e. the least-squares solution in log space. Outlier rows,
/// zero-progress rows, and rows the model cannot rate are excluded.
pub fn fit_s_cal(records: &[ExperimentRecord], config: &Config) -> Result<CalibrationReport> {
    let gc_unit = GalleConstants {
        s_cal: 1.0,
        ..config.galle.clone()
    };
    struct UsableRow {
        label: String,
        measured: f64,
        model_at_unit: f64,
    }
    let mut rows: Vec<UsableRow> = Vec::new();
    let mut excluded = Vec::new();
    for rec in records {
        rec.validate()?;
        if rec.outlier || rec.drilled_depth <= 0.0 {
            excluded.push(rec.label.clone());
            continue;
        }
        let r = rotary_speed_r(rec.rpm, config.soil.condition);
        let model_at_unit = galle_rop(normalized_wob(rec.wob, &config.bit, &gc_unit), r, &gc_unit);
        if model_at_unit <= 0.0 {
            excluded.push(rec.label.clone());
            continue;
        }
        rows.push(UsableRow {
            label: rec.label.clone(),
            measured: rec.rop_measured(),
            model_at_unit,
        });
    }
    if rows.len() < 2 {
        return Err(Error::Calibration { usable: rows.len() });
    }
    let mean_log = rows
        .iter()
        .map(|row| (row.measured / row.model_at_unit).ln())
        .sum::<f64>()
        / rows.len() as f64;
    let s_cal = mean_log.exp();
    let residuals = rows
        .iter()
        .map(|row| Residual {
            label: row.label.clone(),
            rel_error: (s_cal * row.model_at_unit - row.measured) / row.measured,
        })
        .collect();
    Ok(CalibrationReport {
        s_cal,
        residuals,
        excluded,
    })
}

/// Calibrate against the records, then sweep with the fitted scale. The
/// sweep's crossing is the recommended operating point.
pub fn optimum_report(
    config: &Config,
    records: &[ExperimentRecord],
    range: &SweepRange,
) -> Result<(CalibrationReport, SweepResult)> {
    let calibration = fit_s_cal(records, config)?;
    let mut tuned = config.clone();
    tuned.galle.s_cal = calibration.s_cal;
    let swept = sweep(range, &tuned)?;
    Ok((calibration, swept))
}

/// One row of the model-versus-measurement report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationRow {
    pub label: String,
    pub wob: f64,
    pub measured_rop: f64,
    pub model_rop: f64,
    pub rel_error: f64,
    pub measured_e_s_reported: f64,
    pub model_e_s_fullcircle: f64,
    pub model_e_s_annulus: f64,
    pub excluded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationSummary {
    pub s_cal: f64,
    pub max_rel_error_included: f64,
    pub spearman_e_s: f64,
    pub excluded: Vec<String>,
}

/// Calibrated model versus the bench records, row by row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
    pub summary: ValidationSummary,
}

/// Build the model-versus-measurement report: fit the scale, rate every
/// record at its measured spindle speed, and solve the full chain at each
/// record's weight under both area conventions.
pub fn validation_report(
    config: &Config,
    records: &[ExperimentRecord],
) -> Result<ValidationReport> {
    let calibration = fit_s_cal(records, config)?;
    let mut tuned = config.clone();
    tuned.galle.s_cal = calibration.s_cal;
    let geom_full = BitGeometry {
        area_convention: AreaConvention::FullCircle,
        ..tuned.bit.clone()
    };
    let geom_annulus = BitGeometry {
        area_convention: AreaConvention::Annulus,
        ..tuned.bit.clone()
    };

    let mut rows = Vec::new();
    let mut max_rel_error_included = 0.0_f64;
    for rec in records {
        let measured_rop = rec.rop_measured();
        if measured_rop <= 0.0 {
            continue; // zero-progress rows appear only in the excluded list
        }
        let r = rotary_speed_r(rec.rpm, tuned.soil.condition);
        let model_rop = galle_rop(
            normalized_wob(rec.wob, &tuned.bit, &tuned.galle),
            r,
            &tuned.galle,
        );
        let rel_error = (model_rop - measured_rop) / measured_rop;
        let op_full =
            solve_operating_point(rec.wob, &tuned.soil, &tuned.motor, &geom_full, &tuned.galle)?;
        let op_annulus = solve_operating_point(
            rec.wob,
            &tuned.soil,
            &tuned.motor,
            &geom_annulus,
            &tuned.galle,
        )?;
        let excluded = calibration.is_excluded(&rec.label);
        if !excluded {
            max_rel_error_included = max_rel_error_included.max(rel_error.abs());
        }
        rows.push(ValidationRow {
            label: rec.label.clone(),
            wob: rec.wob,
            measured_rop,
            model_rop,
            rel_error,
            measured_e_s_reported: rec.e_s_reported,
            model_e_s_fullcircle: op_full.e_s,
            model_e_s_annulus: op_annulus.e_s,
            excluded,
        });
    }

    let wobs: Vec<f64> = rows.iter().map(|r| r.wob).collect();
    let energies: Vec<f64> = rows.iter().map(|r| r.model_e_s_fullcircle).collect();
    let spearman_e_s = spearman(&wobs, &energies);
    Ok(ValidationReport {
        rows,
        summary: ValidationSummary {
            s_cal: calibration.s_cal,
            max_rel_error_included,
            spearman_e_s,
            excluded: calibration.excluded,
        },
    })
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let rx = ranks(xs);
    let ry = ranks(ys);
    pearson(&rx, &ry)
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            out[idx] = rank;
        }
        i = j + 1;
    }
    out
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return 0.0;
    }
    cov / (vx * vy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::bundled_table3;
    use crate::quantities::ExperimentRecord;

    fn fitted_config() -> Config {
        let config = Config::default();
        let calibration = fit_s_cal(&bundled_table3(), &config).unwrap();
        let mut tuned = config;
        tuned.galle.s_cal = calibration.s_cal;
        tuned
    }

    #[test]
    fn fitted_scale_value() {
        let report = fit_s_cal(&bundled_table3(), &Config::default()).unwrap();
        assert!((report.s_cal - 0.378073).abs() < 1e-6);
        assert!(report.s_cal > 0.30 && report.s_cal < 0.50);
        assert_eq!(report.excluded, vec!["W+0.5".to_string()]);
        assert_eq!(report.residuals.len(), 4);
        let max = report
            .residuals
            .iter()
            .map(|r| r.rel_error.abs())
            .fold(0.0_f64, f64::max);
        assert!((max - 0.2337).abs() < 5e-4);
    }

    #[test]
    fn identity_fit_needs_two_records() {
        let config = Config::default();
        // a record whose measured rate equals the unit-scale model rate
        let op = solve_at(93.3, &config).unwrap();
        let record = ExperimentRecord {
            label: "ident".to_string(),
            wob: 93.3,
            drilled_depth: op.rop * 600.0 / 3600.0,
            duration: 600.0,
            rpm: op.rpm,
            e_s_reported: 0.0,
            outlier: false,
        };
        assert!(matches!(
            fit_s_cal(std::slice::from_ref(&record), &config),
            Err(Error::Calibration { usable: 1 })
        ));
        let report = fit_s_cal(&[record.clone(), record], &config).unwrap();
        assert!((report.s_cal - 1.0).abs() < 1e-9);
    }

    #[test]
    fn all_outliers_cannot_calibrate() {
        let mut records = bundled_table3();
        for rec in &mut records {
            rec.outlier = true;
        }
        assert!(matches!(
            fit_s_cal(&records, &Config::default()),
            Err(Error::Calibration { usable: 0 })
        ));
    }

    #[test]
    fn fit_scales_with_measured_rate() {
        let config = Config::default();
        let base = fit_s_cal(&bundled_table3(), &config).unwrap();
        let mut scaled = bundled_table3();
        for rec in &mut scaled {
            rec.drilled_depth *= 2.5;
        }
        let report = fit_s_cal(&scaled, &config).unwrap();
        assert!((report.s_cal / base.s_cal - 2.5).abs() < 1e-12);
    }

    #[test]
    fn sweep_locates_the_target_crossing() {
        let config = fitted_config();
        let result = sweep(
            &SweepRange {
                wob_min: 80.0,
                wob_max: 120.0,
                step: 1.0,
            },
            &config,
        )
        .unwrap();
        assert!(!result.truncated);
        let crossing = result.crossing.expect("crossing in range");
        assert!((crossing - 96.01).abs() < 0.05);
        let optimum = result.optimum.unwrap();
        assert!((optimum.e_s - config.soil.sigma_c).abs() <= CROSSING_TOLERANCE_PA);
        assert!((optimum.rop - 1.0407).abs() < 0.005);
        // bracketing grid nodes straddle the target
        let idx = result.grid.iter().position(|op| op.wob > crossing).unwrap();
        assert!(result.grid[idx - 1].e_s > config.soil.sigma_c);
        assert!(result.grid[idx].e_s < config.soil.sigma_c);
    }

    #[test]
    fn sweep_reports_no_crossing_at_low_weights() {
        let config = fitted_config();
        let result = sweep(
            &SweepRange {
                wob_min: 30.0,
                wob_max: 40.0,
                step: 1.0,
            },
            &config,
        )
        .unwrap();
        assert!(result.crossing.is_none());
        assert!(result.grid.iter().all(|op| op.e_s > config.soil.sigma_c));
    }

    #[test]
    fn oversized_step_gives_single_node() {
        let result = sweep(
            &SweepRange {
                wob_min: 50.0,
                wob_max: 60.0,
                step: 100.0,
            },
            &Config::default(),
        )
        .unwrap();
        assert_eq!(result.grid.len(), 1);
        assert!(result.crossing.is_none());
    }

    #[test]
    fn grid_has_inclusive_endpoints() {
        let result = sweep(&SweepRange::default(), &Config::default()).unwrap();
        assert_eq!(result.grid.len(), 111);
        assert_eq!(result.grid[0].wob, 30.0);
        assert_eq!(result.grid.last().unwrap().wob, 140.0);
    }

    #[test]
    fn stall_inside_range_truncates_with_flag() {
        let result = sweep(
            &SweepRange {
                wob_min: 230.0,
                wob_max: 260.0,
                step: 5.0,
            },
            &Config::default(),
        )
        .unwrap();
        assert!(result.truncated);
        assert_eq!(result.grid.len(), 3); // 230, 235, 240; 245 stalls
    }

    #[test]
    fn fully_stalled_range_yields_empty_grid() {
        let result = sweep(
            &SweepRange {
                wob_min: 250.0,
                wob_max: 260.0,
                step: 1.0,
            },
            &Config::default(),
        )
        .unwrap();
        assert!(result.truncated);
        assert!(result.grid.is_empty());
    }

    #[test]
    fn crossing_is_grid_refinement_stable() {
        let config = fitted_config();
        let coarse = sweep(
            &SweepRange {
                wob_min: 80.0,
                wob_max: 120.0,
                step: 2.0,
            },
            &config,
        )
        .unwrap();
        let fine = sweep(
            &SweepRange {
                wob_min: 80.0,
                wob_max: 120.0,
                step: 1.0,
            },
            &config,
        )
        .unwrap();
        let delta = (coarse.crossing.unwrap() - fine.crossing.unwrap()).abs();
        assert!(delta < 2.0, "crossing moved {delta} N under refinement");
    }

    #[test]
    fn weaker_target_crosses_at_higher_weight() {
        // e_s falls as weight rises, so a weaker target strength is reached
        // further along the curve, and a target below the curve's floor is
        // never reached at all.
        let mut weak = fitted_config();
        weak.soil.sigma_c = 2.0e6;
        let wide = SweepRange {
            wob_min: 10.0,
            wob_max: 240.0,
            step: 1.0,
        };
        let strong_crossing = sweep(&wide, &fitted_config()).unwrap().crossing.unwrap();
        let weak_crossing = sweep(&wide, &weak).unwrap().crossing.unwrap();
        assert!(weak_crossing > strong_crossing);

        let mut unreachable = fitted_config();
        unreachable.soil.sigma_c = 0.1e6;
        assert!(sweep(&wide, &unreachable).unwrap().crossing.is_none());
    }

    #[test]
    fn optimum_report_recommends_within_expected_region() {
        let (calibration, swept) = optimum_report(
            &Config::default(),
            &bundled_table3(),
            &SweepRange::default(),
        )
        .unwrap();
        assert!(calibration.s_cal > 0.30 && calibration.s_cal < 0.50);
        let crossing = swept.crossing.unwrap();
        assert!((75.0..=112.0).contains(&crossing), "crossing {crossing}");
        let rop = swept.optimum.unwrap().rop;
        assert!((0.74..=1.37).contains(&rop), "rop {rop}");
    }

    #[test]
    fn calibrated_chain_rate_at_nominal_weight() {
        let config = fitted_config();
        let op = solve_at(93.3, &config).unwrap();
        assert!((0.9..=1.3).contains(&op.rop), "rop {}", op.rop);
    }

    #[test]
    fn validation_rows_and_trend() {
        let report = validation_report(&Config::default(), &bundled_table3()).unwrap();
        assert_eq!(report.rows.len(), 5);
        assert_eq!(report.summary.spearman_e_s, -1.0);
        assert!(report.summary.max_rel_error_included <= 0.35);
        assert!(report.rows.iter().any(|r| r.excluded && r.label == "W+0.5"));
        // the excluded row's residual is large but does not drive the summary
        let outlier = report.rows.iter().find(|r| r.label == "W+0.5").unwrap();
        assert!(outlier.rel_error.abs() > 1.0);
        for row in &report.rows {
            assert!(row.model_e_s_annulus > row.model_e_s_fullcircle);
        }
    }

    #[test]
    fn spearman_hand_cases() {
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]), 1.0);
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[9.0, 5.0, 1.0]), -1.0);
        let rho = spearman(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]);
        assert!((rho - 0.8).abs() < 1e-12);
    }
}
