//! Shared value records and unit conventions.
//!
//! The internal unit system is SI (N, m, s, Pa); rotational speed crosses
//! API boundaries in rev/min. The one deliberate exception is the diameter
//! unit of the normalized-weight formula, selectable through
//! [`GalleConstants::d_unit`], since that correlation's constants predate SI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Standard gravity (m/s²), used for kgf conversion and debris weight.
pub const GRAVITY: f64 = 9.81;

/// Branch selector for the rotary-speed function of the penetration-rate
/// correlation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SoilCondition {
    Soft,
    Hard,
}

/// How the bit contact area enters the specific-energy computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AreaConvention {
    /// Full disc at the expanded diameter.
    FullCircle,
    /// Ring between the folded and expanded diameters.
    Annulus,
    /// A measured/assumed effective area in m².
    Effective(f64),
}

/// Unit in which the expanded diameter enters the normalized-weight formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiameterUnit {
    Millimeters,
    Inches,
    Meters,
}

impl DiameterUnit {
    /// Convert a diameter in meters into this unit.
    pub fn from_meters(self, d_m: f64) -> f64 {
        match self {
            DiameterUnit::Millimeters => d_m * 1000.0,
            DiameterUnit::Inches => d_m / 0.0254,
            DiameterUnit::Meters => d_m,
        }
    }
}

/// Target formation properties.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SoilSpec {
    /// Compressive strength (Pa).
    pub sigma_c: f64,
    /// Bulk density (kg/m³).
    pub gamma_c: f64,
    /// Bit–soil kinetic friction coefficient.
    pub mu: f64,
    /// Formation hardness branch for the rotary-speed function.
    pub condition: SoilCondition,
    /// Debris bulking factor: loosened weight over in-place weight.
    pub bulking: f64,
}

impl Default for SoilSpec {
    fn default() -> Self {
        Self {
            sigma_c: 4.0e6,
            gamma_c: 650.0,
            mu: 0.45,
            condition: SoilCondition::Soft,
            bulking: 1.232,
        }
    }
}

impl SoilSpec {
    pub fn validate(&self) -> Result<()> {
        check(
            self.sigma_c > 0.0,
            "soil.sigma_c",
            "must be > 0",
            self.sigma_c,
        )?;
        check(
            self.gamma_c > 0.0,
            "soil.gamma_c",
            "must be > 0",
            self.gamma_c,
        )?;
        check(
            self.mu > 0.0 && self.mu < 2.0,
            "soil.mu",
            "must be in (0, 2)",
            self.mu,
        )?;
        check(
            self.bulking >= 1.0,
            "soil.bulking",
            "must be >= 1",
            self.bulking,
        )
    }
}

/// Drive motor parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MotorSpec {
    /// Stall torque (N·m).
    pub tau_s: f64,
    /// No-load speed (rev/min).
    pub omega_n: f64,
    /// Transfer efficiency between motor and bit.
    pub eta: f64,
}

impl Default for MotorSpec {
    fn default() -> Self {
        Self {
            tau_s: 8.83,
            omega_n: 200.0,
            eta: 0.84,
        }
    }
}

impl MotorSpec {
    /// Largest bit torque the motor can sustain (N·m).
    pub fn max_torque(&self) -> f64 {
        self.eta * self.tau_s
    }

    pub fn validate(&self) -> Result<()> {
        check(self.tau_s > 0.0, "motor.tau_s", "must be > 0", self.tau_s)?;
        check(
            self.omega_n > 0.0,
            "motor.omega_n",
            "must be > 0",
            self.omega_n,
        )?;
        check(
            self.eta > 0.0 && self.eta <= 1.0,
            "motor.eta",
            "must be in (0, 1]",
            self.eta,
        )
    }
}

/// Expandable-bit geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BitGeometry {
    /// Diameter with the blades folded (m).
    pub d_folded: f64,
    /// Diameter with the blades fully expanded (m).
    pub d_expanded: f64,
    pub blade_count_inner: u32,
    pub blade_count_expandable: u32,
    /// Contact-area convention for the specific-energy computation.
    pub area_convention: AreaConvention,
    /// Middle-part linear travel per spindle revolution (m/rev).
    pub screw_pitch: f64,
    /// Rack-pinion radius converting travel to blade angle (m).
    pub pinion_radius: f64,
    /// Middle-part stroke (m).
    pub max_travel: f64,
}

impl Default for BitGeometry {
    fn default() -> Self {
        let max_travel = 0.010;
        Self {
            d_folded: 0.0934,
            d_expanded: 0.202,
            blade_count_inner: 3,
            blade_count_expandable: 3,
            area_convention: AreaConvention::FullCircle,
            screw_pitch: 0.002,
            // Full stroke sweeps the blades through exactly a quarter turn.
            pinion_radius: max_travel / std::f64::consts::FRAC_PI_2,
            max_travel,
        }
    }
}

impl BitGeometry {
    /// Bit contact area under the configured convention (m²).
    pub fn contact_area(&self) -> f64 {
        let r_exp = self.d_expanded / 2.0;
        match self.area_convention {
            AreaConvention::FullCircle => std::f64::consts::PI * r_exp * r_exp,
            AreaConvention::Annulus => {
                let r_fold = self.d_folded / 2.0;
                std::f64::consts::PI * (r_exp * r_exp - r_fold * r_fold)
            }
            AreaConvention::Effective(a) => a,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check(
            self.d_folded > 0.0,
            "bit.d_folded",
            "must be > 0",
            self.d_folded,
        )?;
        check(
            self.d_expanded > self.d_folded,
            "bit.d_expanded",
            "must exceed d_folded",
            self.d_expanded,
        )?;
        check(
            self.blade_count_inner >= 1,
            "bit.blade_count_inner",
            "must be >= 1",
            self.blade_count_inner as f64,
        )?;
        check(
            self.blade_count_expandable >= 1,
            "bit.blade_count_expandable",
            "must be >= 1",
            self.blade_count_expandable as f64,
        )?;
        if let AreaConvention::Effective(a) = self.area_convention {
            check(
                a > 0.0,
                "bit.area_convention",
                "effective area must be > 0",
                a,
            )?;
        }
        check(
            self.screw_pitch > 0.0,
            "bit.screw_pitch",
            "must be > 0",
            self.screw_pitch,
        )?;
        check(
            self.pinion_radius > 0.0,
            "bit.pinion_radius",
            "must be > 0",
            self.pinion_radius,
        )?;
        check(
            self.max_travel > 0.0,
            "bit.max_travel",
            "must be > 0",
            self.max_travel,
        )
    }
}

/// Constants of the semi-empirical penetration-rate correlation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GalleConstants {
    /// Dullness function value for a chipping-type tooth.
    pub a: f64,
    /// Exponent on the normalized weight.
    pub k_exp: f64,
    /// Exponent on the dullness function.
    pub p_exp: f64,
    /// Scale constant of the normalized-weight formula.
    pub wbar_scale: f64,
    /// Unit in which the expanded diameter enters the normalized weight.
    pub d_unit: DiameterUnit,
    /// Calibration scale on the predicted rate of penetration.
    pub s_cal: f64,
}

impl Default for GalleConstants {
    fn default() -> Self {
        Self {
            a: 565.6,
            k_exp: 1.0,
            p_exp: 0.5,
            wbar_scale: 7.88,
            d_unit: DiameterUnit::Millimeters,
            s_cal: 1.0,
        }
    }
}

impl GalleConstants {
    pub fn validate(&self) -> Result<()> {
        check(self.a > 0.0, "galle.a", "must be > 0", self.a)?;
        check(self.p_exp > 0.0, "galle.p_exp", "must be > 0", self.p_exp)?;
        check(self.s_cal > 0.0, "galle.s_cal", "must be > 0", self.s_cal)
    }
}

/// One bench drilling session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub label: String,
    /// Applied weight on bit (N).
    pub wob: f64,
    /// Depth drilled over the session (m).
    pub drilled_depth: f64,
    /// Session length (s).
    pub duration: f64,
    /// Measured spindle speed (rev/min).
    pub rpm: f64,
    /// Specific energy reported for the session (Pa).
    pub e_s_reported: f64,
    /// Excluded from calibration when set.
    pub outlier: bool,
}

impl ExperimentRecord {
    /// Measured rate of penetration (m/hr).
    pub fn rop_measured(&self) -> f64 {
        self.drilled_depth / self.duration * 3600.0
    }

    pub fn validate(&self) -> Result<()> {
        check(
            self.duration > 0.0,
            "record.duration",
            "must be > 0",
            self.duration,
        )?;
        check(
            self.drilled_depth >= 0.0,
            "record.drilled_depth",
            "must be >= 0",
            self.drilled_depth,
        )?;
        check(self.rpm >= 0.0, "record.rpm", "must be >= 0", self.rpm)
    }
}

fn check(ok: bool, field: &str, bound: &str, got: f64) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Validation {
            field: field.to_string(),
            message: format!("{bound} (got {got})"),
        })
    }
}
