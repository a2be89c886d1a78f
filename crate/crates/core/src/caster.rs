//! Spring-loaded caster set: the static torque balance that decides whether
//! the wheels align with the travel direction during continuous rotation.
//!
//! Each caster is mounted at an inclination and held there by a spring. The
//! cornering force on the rolling wheels acts through the pneumatic trail
//! and produces a self-aligning torque; when it overcomes the spring's
//! slip-steer correcting torque the wheel rotates to the aligned position.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative band inside which the two opposing torques count as a tie.
/// f64 rounding leaves residues around 1e-19 N·m when the inputs are tuned
/// to the exact threshold; anything that small is noise, not a verdict.
const TIE_BAND_REL: f64 = 1e-12;

/// Caster set parameters. Lengths are millimeters, forces newtons; torques
/// come out of [`balance`] in N·m.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CasterSpec {
    /// Spring constant (N/mm).
    pub k_spring: f64,
    /// Spring compression between the mounted and aligned orientations (mm).
    pub delta_x: f64,
    /// Mounted inclination of the wheel sets (deg).
    pub theta: f64,
    /// Contact patch length (mm).
    pub l_cp: f64,
    /// Moment arm of the spring force (mm).
    pub a_m: f64,
    /// Cornering force per wheel (N).
    pub f_c: f64,
    /// Static wheel friction coefficient.
    pub mu_s_wheel: f64,
    /// Kinetic wheel friction coefficient.
    pub mu_k_wheel: f64,
}

impl Default for CasterSpec {
    fn default() -> Self {
        Self {
            k_spring: 0.077,
            delta_x: 5.0,
            theta: 30.0,
            l_cp: 7.0,
            a_m: 10.0,
            f_c: 2.4,
            mu_s_wheel: 0.9,
            mu_k_wheel: 0.75,
        }
    }
}

impl CasterSpec {
    pub fn validate(&self) -> Result<()> {
        let checks: [(&str, f64, bool); 6] = [
            ("caster.k_spring", self.k_spring, self.k_spring > 0.0),
            ("caster.delta_x", self.delta_x, self.delta_x >= 0.0),
            ("caster.l_cp", self.l_cp, self.l_cp > 0.0),
            ("caster.a_m", self.a_m, self.a_m > 0.0),
            ("caster.f_c", self.f_c, self.f_c >= 0.0),
            (
                "caster.theta",
                self.theta,
                self.theta > 0.0 && self.theta < 90.0,
            ),
        ];
        for (field, got, ok) in checks {
            if !ok {
                return Err(Error::Validation {
                    field: field.to_string(),
                    message: format!("out of range (got {got})"),
                });
            }
        }
        Ok(())
    }
}

/// Resolved torque balance of one caster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CasterBalance {
    /// Spring retaining force (N).
    pub f_sp: f64,
    /// Pneumatic trail, a quarter of the contact patch (mm).
    pub p_t: f64,
    /// Self-aligning torque from the cornering force (N·m).
    pub t_sat: f64,
    /// Slip-steer correcting torque from the spring (N·m).
    pub t_ss: f64,
    /// Net torque `t_ss − t_sat` (N·m); negative means the wheel aligns.
    pub sigma_t: f64,
    /// True iff the cornering torque strictly wins and the wheel rotates
    /// to the aligned orientation.
    pub aligns: bool,
    /// True when the torques tie to within rounding; reported as
    /// not-aligned.
    pub boundary: bool,
}

/// Spring retaining force `k·Δx` (N).
pub fn spring_force(spec: &CasterSpec) -> f64 {
    spec.k_spring * spec.delta_x
}

/// Resolve the torque balance: `T_SAT = 2·F_C·P_T`, `T_SS = 2·F_sp·A_M`,
/// `ΣT = T_SS − T_SAT`, with `P_T = l_CP/4`.
pub fn balance(spec: &CasterSpec) -> CasterBalance {
    let f_sp = spring_force(spec);
    let p_t = spec.l_cp / 4.0;
    let t_sat = 2.0 * spec.f_c * (p_t / 1000.0);
    let t_ss = 2.0 * f_sp * (spec.a_m / 1000.0);
    let mut sigma_t = t_ss - t_sat;
    let boundary = sigma_t.abs() <= TIE_BAND_REL * t_ss.abs().max(t_sat.abs());
    if boundary {
        sigma_t = 0.0;
    }
    CasterBalance {
        f_sp,
        p_t,
        t_sat,
        t_ss,
        sigma_t,
        aligns: sigma_t < 0.0,
        boundary,
    }
}

/// Sample of the illustrative cornering-force rise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RisePoint {
    pub t_s: f64,
    pub f_c_n: f64,
    pub sigma_t_nm: f64,
}

/// First-order rise of the cornering force toward its steady value, with the
/// net caster torque recomputed at each sample. Illustrative only: the
/// transient is not a validated model, just the expected saturating shape.
pub fn rise_curve(
    spec: &CasterSpec,
    time_constant_s: f64,
    duration_s: f64,
    step_s: f64,
) -> Vec<RisePoint> {
    debug_assert!(time_constant_s > 0.0 && duration_s >= 0.0 && step_s > 0.0);
    let n = (duration_s / step_s).floor() as usize;
    (0..=n)
        .map(|k| {
            let t = k as f64 * step_s;
            let f_c = spec.f_c * (1.0 - (-t / time_constant_s).exp());
            let b = balance(&CasterSpec {
                f_c,
                ..spec.clone()
            });
            RisePoint {
                t_s: t,
                f_c_n: f_c,
                sigma_t_nm: b.sigma_t,
            }
        })
        .collect()
}
