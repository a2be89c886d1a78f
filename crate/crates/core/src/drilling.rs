//! The drilling chain: weight-on-bit → torque → spindle speed → rotary-speed
//! function → normalized weight → rate of penetration → specific energy.
//!
//! Every operation is a pure function of its arguments.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantities::{BitGeometry, GalleConstants, MotorSpec, SoilCondition, SoilSpec};

/// Formation drilling-capability exponent: the capability parameter is
/// estimated as the normalized weight raised to this power.
const CF_EXPONENT: f64 = 0.6;

/// One fully solved operating point of the drilling chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatingPoint {
    /// Weight on bit (N).
    pub wob: f64,
    /// Bit torque (N·m).
    pub torque: f64,
    /// Spindle speed (rev/min).
    pub rpm: f64,
    /// Rotary-speed function value.
    pub r_value: f64,
    /// Normalized weight.
    pub wbar: f64,
    /// Rate of penetration (m/hr).
    pub rop: f64,
    /// Specific energy (Pa).
    pub e_s: f64,
}

/// Bit torque from weight on bit: `T = μ·D·WOB/3` with `D` the expanded
/// diameter in meters.
pub fn torque_from_wob(wob: f64, soil: &SoilSpec, geom: &BitGeometry) -> Result<f64> {
    if wob < 0.0 {
        return Err(Error::Domain {
            quantity: "wob",
            value: wob,
        });
    }
    Ok(soil.mu * geom.d_expanded * wob / 3.0)
}

/// Spindle speed on the motor's linear torque–speed line (rev/min).
///
/// Evaluated as `ω_n·(1 − T/(η·τ_s))` so the endpoints are exact: zero
/// torque returns the no-load speed, the maximum torque returns zero. A
/// torque above `η·τ_s` is a stall error, never a clamped zero.
pub fn motor_rpm(torque: f64, motor: &MotorSpec) -> Result<f64> {
    if torque < 0.0 {
        return Err(Error::Domain {
            quantity: "torque",
            value: torque,
        });
    }
    let max_torque = motor.max_torque();
    if torque > max_torque {
        return Err(Error::Stall { torque, max_torque });
    }
    Ok(motor.omega_n * (1.0 - torque / max_torque))
}

/// Rotary-speed function of the penetration-rate correlation.
///
/// Soft formations: `e^(−100/N²)·N^0.428 + 0.2·N·(1 − e^(−100/N²))`; hard
/// formations use exponent 0.750 and coefficient 0.5. The value at rest is
/// 0 by continuous extension.
pub fn rotary_speed_r(rpm: f64, condition: SoilCondition) -> f64 {
    debug_assert!(rpm >= 0.0, "rpm must be non-negative");
    if rpm <= 0.0 {
        return 0.0;
    }
    let damp = (-100.0 / (rpm * rpm)).exp();
    match condition {
        SoilCondition::Soft => damp * rpm.powf(0.428) + 0.2 * rpm * (1.0 - damp),
        SoilCondition::Hard => damp * rpm.powf(0.750) + 0.5 * rpm * (1.0 - damp),
    }
}

/// Normalized weight: `scale·WOB/D` with `D` expressed in the configured
/// diameter unit.
pub fn normalized_wob(wob: f64, geom: &BitGeometry, gc: &GalleConstants) -> f64 {
    debug_assert!(wob >= 0.0, "wob must be non-negative");
    gc.wbar_scale * wob / gc.d_unit.from_meters(geom.d_expanded)
}

/// Semi-empirical rate of penetration (m/hr):
/// `s_cal · W̄^0.6 · W̄^k · r / a^P`.
pub fn galle_rop(wbar: f64, r: f64, gc: &GalleConstants) -> f64 {
    debug_assert!(wbar >= 0.0 && r >= 0.0, "wbar and r must be non-negative");
    gc.s_cal * wbar.powf(CF_EXPONENT) * wbar.powf(gc.k_exp) * r / gc.a.powf(gc.p_exp)
}

/// Specific energy of rotary drilling (Pa): thrust term plus rotary term,
/// `WOB/A + 2π·N·T/(A·u)` with `N` in rev/s and `u` in m/s.
pub fn specific_energy(
    wob: f64,
    rpm: f64,
    torque: f64,
    rop: f64,
    geom: &BitGeometry,
) -> Result<f64> {
    if rop <= 0.0 {
        return Err(Error::InfeasibleRate(format!(
            "specific energy is undefined at rate of penetration {rop} m/hr"
        )));
    }
    for (quantity, value) in [("wob", wob), ("rpm", rpm), ("torque", torque)] {
        if value < 0.0 {
            return Err(Error::Domain { quantity, value });
        }
    }
    let area = geom.contact_area();
    let rev_per_s = rpm / 60.0;
    let rop_m_s = rop / 3600.0;
    Ok(wob / area + 2.0 * std::f64::consts::PI * rev_per_s * torque / (area * rop_m_s))
}

/// Evaluate the full chain at one weight on bit.
///
/// The stored fields are mutually consistent: re-evaluating any single
/// relation from the stored inputs reproduces the stored output.
pub fn solve_operating_point(
    wob: f64,
    soil: &SoilSpec,
    motor: &MotorSpec,
    geom: &BitGeometry,
    gc: &GalleConstants,
) -> Result<OperatingPoint> {
    let torque = torque_from_wob(wob, soil, geom)?;
    let rpm = motor_rpm(torque, motor)?;
    let r_value = rotary_speed_r(rpm, soil.condition);
    let wbar = normalized_wob(wob, geom, gc);
    let rop = galle_rop(wbar, r_value, gc);
    let e_s = specific_energy(wob, rpm, torque, rop, geom)?;
    Ok(OperatingPoint {
        wob,
        torque,
        rpm,
        r_value,
        wbar,
        rop,
        e_s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::quantities::AreaConvention;

    fn defaults() -> (SoilSpec, MotorSpec, BitGeometry, GalleConstants) {
        (
            SoilSpec::default(),
            MotorSpec::default(),
            BitGeometry::default(),
            GalleConstants::default(),
        )
    }

    #[test]
    fn torque_hand_values() {
        let (soil, _, geom, _) = defaults();
        // 0.45 · 0.202 · WOB / 3, evaluated by hand
        assert!((torque_from_wob(93.3, &soil, &geom).unwrap() - 2.82699).abs() < 1e-9);
        assert!((torque_from_wob(106.95, &soil, &geom).unwrap() - 3.240585).abs() < 1e-9);
        assert_eq!(torque_from_wob(0.0, &soil, &geom).unwrap(), 0.0);
    }

    #[test]
    fn torque_rejects_negative_wob() {
        let (soil, _, geom, _) = defaults();
        assert!(matches!(
            torque_from_wob(-1.0, &soil, &geom),
            Err(Error::Domain {
                quantity: "wob",
                ..
            })
        ));
    }

    #[test]
    fn motor_curve_endpoints_exact() {
        let motor = MotorSpec::default();
        assert_eq!(motor_rpm(0.0, &motor).unwrap(), 200.0);
        assert_eq!(motor_rpm(motor.max_torque(), &motor).unwrap(), 0.0);
    }

    #[test]
    fn motor_rpm_at_working_torque() {
        let motor = MotorSpec::default();
        let rpm = motor_rpm(2.827, &motor).unwrap();
        assert!((rpm - 123.771774).abs() < 1e-6);
        // within 0.5 rev/min of the nominal operating speed
        assert!((rpm - 123.8).abs() < 0.5);
    }

    #[test]
    fn motor_stalls_above_max_torque() {
        let motor = MotorSpec::default();
        assert!(matches!(
            motor_rpm(motor.max_torque() + 1e-9, &motor),
            Err(Error::Stall { .. })
        ));
    }

    #[test]
    fn rotary_speed_hand_values() {
        assert_eq!(rotary_speed_r(0.0, SoilCondition::Soft), 0.0);
        // limiting value from below: vanishing speed gives vanishing r
        assert!(rotary_speed_r(1e-3, SoilCondition::Soft) < 1e-3);
        assert!((rotary_speed_r(124.49, SoilCondition::Soft) - 7.992906).abs() < 1e-6);
        assert!((rotary_speed_r(74.0, SoilCondition::Soft) - 6.463659).abs() < 1e-6);
        assert!((rotary_speed_r(124.49, SoilCondition::Hard) - 37.429905).abs() < 1e-6);
    }

    #[test]
    fn rotary_speed_strictly_increasing_on_grid() {
        let mut prev = rotary_speed_r(1.0, SoilCondition::Soft);
        for rpm in 2..=300 {
            let cur = rotary_speed_r(rpm as f64, SoilCondition::Soft);
            assert!(cur > prev, "r not increasing at {rpm} rev/min");
            prev = cur;
        }
    }

    #[test]
    fn normalized_wob_hand_values() {
        let (_, _, geom, gc) = defaults();
        assert_eq!(normalized_wob(0.0, &geom, &gc), 0.0);
        assert!((normalized_wob(68.6, &geom, &gc) - 2.676079).abs() < 1e-6);
        assert!((normalized_wob(93.3, &geom, &gc) - 3.639624).abs() < 1e-6);
    }

    #[test]
    fn galle_rop_hand_values() {
        let gc = GalleConstants::default();
        assert_eq!(galle_rop(0.0, 5.0, &gc), 0.0);
        assert!((galle_rop(3.640, 7.99, &gc) - 2.654937).abs() < 1e-6);
        assert!((galle_rop(2.676, 7.96, &gc) - 1.616725).abs() < 1e-6);
    }

    #[test]
    fn specific_energy_thrust_only_when_torque_zero() {
        let geom = BitGeometry::default();
        let e = specific_energy(93.3, 150.0, 0.0, 1.0, &geom).unwrap();
        assert_eq!(e, 93.3 / geom.contact_area());
    }

    #[test]
    fn specific_energy_both_conventions() {
        // Inputs reproduce the base-row bench session: measured speed and
        // measured rate with the model torque at that weight.
        let annulus = BitGeometry {
            area_convention: AreaConvention::Annulus,
            ..BitGeometry::default()
        };
        let e_an = specific_energy(68.6, 124.0, 2.078, 0.5466, &annulus).unwrap();
        assert!((e_an - 7.0561228e6).abs() < 100.0);

        let full = BitGeometry::default();
        let e_fc = specific_energy(68.6, 124.0, 2.078, 0.5466, &full).unwrap();
        assert!((e_fc - 5.5475817e6).abs() < 100.0);
    }

    #[test]
    fn specific_energy_rejects_zero_rop() {
        let geom = BitGeometry::default();
        assert!(matches!(
            specific_energy(10.0, 100.0, 1.0, 0.0, &geom),
            Err(Error::InfeasibleRate(_))
        ));
    }

    #[test]
    fn chain_hand_values_at_nominal_weight() {
        let (soil, motor, geom, gc) = defaults();
        let op = solve_operating_point(93.3, &soil, &motor, &geom, &gc).unwrap();
        assert!((op.torque - 2.82699).abs() < 1e-9);
        assert!((op.rpm - 123.772043).abs() < 1e-6);
        assert!((op.r_value - 7.973876).abs() < 1e-6);
        assert!((op.rop - 2.649142).abs() < 1e-6);
        assert!((op.rop - 2.64).abs() < 0.02);
    }

    #[test]
    fn chain_fields_mutually_consistent() {
        let (soil, motor, geom, gc) = defaults();
        let op = solve_operating_point(93.3, &soil, &motor, &geom, &gc).unwrap();
        let tol = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1.0);
        assert!(tol(
            torque_from_wob(op.wob, &soil, &geom).unwrap(),
            op.torque
        ));
        assert!(tol(motor_rpm(op.torque, &motor).unwrap(), op.rpm));
        assert!(tol(rotary_speed_r(op.rpm, soil.condition), op.r_value));
        assert!(tol(normalized_wob(op.wob, &geom, &gc), op.wbar));
        assert!(tol(galle_rop(op.wbar, op.r_value, &gc), op.rop));
        assert!(tol(
            specific_energy(op.wob, op.rpm, op.torque, op.rop, &geom).unwrap(),
            op.e_s
        ));
    }

    #[test]
    fn chain_zero_load_is_infeasible() {
        let (soil, motor, geom, gc) = defaults();
        assert!(matches!(
            solve_operating_point(0.0, &soil, &motor, &geom, &gc),
            Err(Error::InfeasibleRate(_))
        ));
    }

    #[test]
    fn chain_trend_over_working_range() {
        let (soil, motor, geom, gc) = defaults();
        let mut prev: Option<OperatingPoint> = None;
        let mut wob = 30.0;
        while wob <= 140.0 {
            let op = solve_operating_point(wob, &soil, &motor, &geom, &gc).unwrap();
            if let Some(p) = prev {
                assert!(op.e_s < p.e_s, "e_s not decreasing at {wob} N");
                assert!(op.rop > p.rop, "rop not increasing at {wob} N");
                assert!(op.rpm < p.rpm, "rpm not decreasing at {wob} N");
            }
            // the rotary term only ever adds to the thrust floor
            assert!(op.e_s >= op.wob / geom.contact_area());
            prev = Some(op);
            wob += 1.0;
        }
    }
}
