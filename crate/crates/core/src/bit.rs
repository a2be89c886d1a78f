//! Expandable-bit kinematics: screw-driven travel of the middle part,
//! rack-and-pinion blade angle, effective diameter, and expand/fold timing.
//!
//! Counterclockwise spindle rotation drives the middle part toward the
//! expanded end of its stroke; clockwise rotation folds the blades back.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantities::BitGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BitMode {
    Folded,
    Transitioning,
    Expanded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinDirection {
    Clockwise,
    CounterClockwise,
}

/// Kinematic state of the expandable bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BitState {
    /// Middle-part axial position within the stroke (m).
    pub travel: f64,
    /// Blade angle (rad): 0 folded, π/2 fully expanded.
    pub blade_angle: f64,
    /// Current effective cutting diameter (m).
    pub diameter: f64,
    pub mode: BitMode,
}

impl BitState {
    pub fn folded(geom: &BitGeometry) -> Self {
        Self::from_travel(0.0, geom)
    }

    /// Derive the dependent fields from an axial position.
    ///
    /// The blade angle is the rack travel over the pinion radius, clamped to
    /// a quarter turn; the diameter follows a pivoting blade tip,
    /// `D = D_folded + (D_expanded − D_folded)·sin β`, with the endpoints
    /// returned exactly.
    pub fn from_travel(travel: f64, geom: &BitGeometry) -> Self {
        let travel = travel.clamp(0.0, geom.max_travel);
        let blade_angle = (travel / geom.pinion_radius).clamp(0.0, FRAC_PI_2);
        let (diameter, mode) = if blade_angle <= 0.0 {
            (geom.d_folded, BitMode::Folded)
        } else if blade_angle >= FRAC_PI_2 {
            (geom.d_expanded, BitMode::Expanded)
        } else {
            (
                geom.d_folded + (geom.d_expanded - geom.d_folded) * blade_angle.sin(),
                BitMode::Transitioning,
            )
        };
        Self {
            travel,
            blade_angle,
            diameter,
            mode,
        }
    }
}

/// Result of spinning the bit: the new state plus whether the stroke end
/// was hit (where the caster set takes over and rotation continues without
/// further travel).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TravelOutcome {
    pub state: BitState,
    pub saturated: bool,
}

/// Advance the middle part by a number of spindle turns.
///
/// Counterclockwise turns increase travel by `pitch·turns` (expansion),
/// clockwise turns decrease it (folding); the position saturates at the
/// stroke ends and saturation is flagged rather than treated as an error.
pub fn travel_from_rotation(
    turns: f64,
    direction: SpinDirection,
    geom: &BitGeometry,
    state: &BitState,
) -> TravelOutcome {
    debug_assert!(turns >= 0.0, "turns must be non-negative");
    let delta = geom.screw_pitch * turns.max(0.0);
    let raw = match direction {
        SpinDirection::CounterClockwise => state.travel + delta,
        SpinDirection::Clockwise => state.travel - delta,
    };
    let clamped = raw.clamp(0.0, geom.max_travel);
    TravelOutcome {
        state: BitState::from_travel(clamped, geom),
        saturated: raw != clamped,
    }
}

/// Full-stroke expansion or folding time at constant spindle speed (s).
pub fn transition_duration(geom: &BitGeometry, rpm: f64) -> Result<f64> {
    if rpm <= 0.0 {
        return Err(Error::Domain {
            quantity: "rpm",
            value: rpm,
        });
    }
    Ok((geom.max_travel / geom.screw_pitch) / rpm * 60.0)
}

impl BitGeometry {
    /// Expanded-to-folded diameter ratio.
    pub fn expansion_ratio(&self) -> f64 {
        self.d_expanded / self.d_folded
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_stroke_expands_to_expanded_diameter() {
        let geom = BitGeometry::default();
        let folded = BitState::folded(&geom);
        assert_eq!(folded.mode, BitMode::Folded);
        assert_eq!(folded.diameter, geom.d_folded);

        let turns = geom.max_travel / geom.screw_pitch;
        let out = travel_from_rotation(turns, SpinDirection::CounterClockwise, &geom, &folded);
        assert_eq!(out.state.mode, BitMode::Expanded);
        assert_eq!(out.state.diameter, 0.202);
        assert!(!out.saturated);
    }

    #[test]
    fn folding_from_folded_saturates_unchanged() {
        let geom = BitGeometry::default();
        let folded = BitState::folded(&geom);
        let out = travel_from_rotation(3.0, SpinDirection::Clockwise, &geom, &folded);
        assert_eq!(out.state, folded);
        assert!(out.saturated);
    }

    #[test]
    fn half_stroke_blade_angle_is_linear_in_travel() {
        let geom = BitGeometry::default();
        let folded = BitState::folded(&geom);
        let turns = geom.max_travel / geom.screw_pitch / 2.0;
        let out = travel_from_rotation(turns, SpinDirection::CounterClockwise, &geom, &folded);
        let expected = (geom.max_travel / 2.0) / geom.pinion_radius;
        assert!(expected < FRAC_PI_2);
        assert!((out.state.blade_angle - expected).abs() < 1e-15);
        assert_eq!(out.state.mode, BitMode::Transitioning);
    }

    #[test]
    fn expansion_ratio_values() {
        let geom = BitGeometry::default();
        assert!((geom.expansion_ratio() - 2.163).abs() < 0.005);

        let square = BitGeometry {
            d_folded: 0.1,
            d_expanded: 0.1,
            ..BitGeometry::default()
        };
        assert_eq!(square.expansion_ratio(), 1.0);

        let triple = BitGeometry {
            d_folded: 0.1,
            d_expanded: 0.3,
            ..BitGeometry::default()
        };
        assert!((triple.expansion_ratio() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn transition_duration_values() {
        let geom = BitGeometry::default();
        // 5 turns of stroke at 120 rev/min
        assert!((transition_duration(&geom, 120.0).unwrap() - 2.5).abs() < 1e-12);
        let half = transition_duration(&geom, 240.0).unwrap();
        assert!((half - 1.25).abs() < 1e-12);

        let degenerate = BitGeometry {
            max_travel: 0.0,
            ..BitGeometry::default()
        };
        assert_eq!(transition_duration(&degenerate, 120.0).unwrap(), 0.0);

        assert!(matches!(
            transition_duration(&geom, 0.0),
            Err(Error::Domain {
                quantity: "rpm",
                ..
            })
        ));
    }

    #[test]
    fn diameter_monotone_in_travel() {
        let geom = BitGeometry::default();
        let mut prev = BitState::from_travel(0.0, &geom).diameter;
        for k in 1..=100 {
            let travel = geom.max_travel * k as f64 / 100.0;
            let d = BitState::from_travel(travel, &geom).diameter;
            assert!(d >= prev);
            prev = d;
        }
        assert_eq!(prev, geom.d_expanded);
    }
}
