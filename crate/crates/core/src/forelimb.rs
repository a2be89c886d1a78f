//! Quasi-static forelimb model: opening angle versus borehole width, the
//! one-parameter sine transmission for push force, pull-force composition,
//! and the per-cycle debris weight.
//!
//! No linkage dimensions are available, so the push transmission is a
//! single fitted coefficient on `2·F_m·sin α` rather than a fabricated
//! multibody model; the fit residual against the push-test table bounds the
//! modeling error.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantities::{BitGeometry, SoilSpec, GRAVITY};

/// One push-test row: channel width, settled opening angle, peak force.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushTestRow {
    /// Channel inner width (mm).
    pub d: f64,
    /// Forefoot opening angle from the horizontal (deg).
    pub alpha: f64,
    /// Peak horizontal contact force (N).
    pub f_h_max: f64,
}

/// Forelimb actuator and transmission parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ForelimbSpec {
    /// Maximum force per linear actuator (N).
    pub f_m: f64,
    /// Servo maximum torque (N·m).
    pub tau_m: f64,
    /// Forelimb rack-pinion radius (m).
    pub r_pinion_fl: f64,
    /// Fitted transmission coefficient of the sine push model.
    pub k_trans: f64,
    /// Push-test table, strictly increasing in width and angle.
    pub table4: Vec<PushTestRow>,
}

fn bundled_push_table() -> Vec<PushTestRow> {
    vec![
        PushTestRow {
            d: 40.0,
            alpha: 57.0,
            f_h_max: 35.56,
        },
        PushTestRow {
            d: 80.0,
            alpha: 76.0,
            f_h_max: 38.26,
        },
        PushTestRow {
            d: 120.0,
            alpha: 94.0,
            f_h_max: 39.90,
        },
        PushTestRow {
            d: 160.0,
            alpha: 112.0,
            f_h_max: 39.98,
        },
        PushTestRow {
            d: 200.0,
            alpha: 135.0,
            f_h_max: 33.93,
        },
    ]
}

impl Default for ForelimbSpec {
    fn default() -> Self {
        let f_m = 80.0;
        let table4 = bundled_push_table();
        let k_trans = fit_over(f_m, &table4).expect("bundled table fits");
        Self {
            f_m,
            tau_m: 2.5,
            r_pinion_fl: 0.010,
            k_trans,
            table4,
        }
    }
}

impl ForelimbSpec {
    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("forelimb.f_m", self.f_m),
            ("forelimb.tau_m", self.tau_m),
            ("forelimb.r_pinion_fl", self.r_pinion_fl),
        ] {
            if value <= 0.0 {
                return Err(Error::Validation {
                    field: field.to_string(),
                    message: format!("must be > 0 (got {value})"),
                });
            }
        }
        for pair in self.table4.windows(2) {
            if pair[1].d <= pair[0].d || pair[1].alpha <= pair[0].alpha {
                return Err(Error::Validation {
                    field: "forelimb.table4".to_string(),
                    message: format!(
                        "rows must be strictly increasing in d and alpha (at d = {})",
                        pair[1].d
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Opening angle for a borehole width, by piecewise-linear interpolation
/// through the push-test table. No extrapolation outside the tabulated range.
pub fn alpha_for_width(d: f64, spec: &ForelimbSpec) -> Result<f64> {
    let (first, last) = match (spec.table4.first(), spec.table4.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::Data("push-test table is empty".to_string())),
    };
    if d < first.d || d > last.d {
        return Err(Error::WidthOutOfRange {
            d,
            min: first.d,
            max: last.d,
        });
    }
    for pair in spec.table4.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if d <= hi.d {
            let t = (d - lo.d) / (hi.d - lo.d);
            return Ok(lo.alpha + t * (hi.alpha - lo.alpha));
        }
    }
    Ok(last.alpha)
}

fn fit_over(f_m: f64, table: &[PushTestRow]) -> Result<f64> {
    let mut num = 0.0;
    let mut den = 0.0;
    for row in table {
        let s = row.alpha.to_radians().sin();
        num += s * row.f_h_max;
        den += s * s;
    }
    if table.is_empty() || den <= 0.0 {
        return Err(Error::Fit(
            "push-test table has no rows with sin(alpha) != 0".to_string(),
        ));
    }
    Ok(num / (2.0 * f_m * den))
}

/// Least-squares fit of `F(α) = 2·F_m·k·sin α` to the push-test forces:
/// `k = Σ(sin α·F) / (2·F_m·Σ sin²α)`.
pub fn fit_k_trans(spec: &ForelimbSpec) -> Result<f64> {
    fit_over(spec.f_m, &spec.table4)
}

/// Push force of the two-actuator sine transmission at an opening angle (N).
pub fn max_push_force(alpha_deg: f64, spec: &ForelimbSpec) -> f64 {
    debug_assert!((0.0..=180.0).contains(&alpha_deg), "alpha outside [0, 180]");
    2.0 * spec.f_m * spec.k_trans * alpha_deg.to_radians().sin()
}

/// Steady pull-force components with the forefeet locked fully open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PullForces {
    /// Servo contribution through the rack-pinion (N).
    pub servo: f64,
    /// Combined linear-actuator contribution (N).
    pub linear: f64,
}

/// Pull-force components: servo torque over the pinion radius versus the
/// two linear actuators. The servo dominates under the default parameters.
pub fn pull_forces(spec: &ForelimbSpec) -> PullForces {
    PullForces {
        servo: spec.tau_m / spec.r_pinion_fl,
        linear: 2.0 * spec.f_m,
    }
}

/// Weight of loosened spoil from one drilled increment (N): cylinder at the
/// expanded diameter times bulked density.
pub fn debris_weight(depth: f64, geom: &BitGeometry, soil: &SoilSpec) -> f64 {
    debug_assert!(depth >= 0.0, "depth must be non-negative");
    let r = geom.d_expanded / 2.0;
    std::f64::consts::PI * r * r * depth * soil.gamma_c * soil.bulking * GRAVITY
}
