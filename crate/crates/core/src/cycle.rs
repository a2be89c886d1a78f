//! Six-phase excavation cycle: the interlocked state machine and the
//! multi-cycle timeline simulator.
//!
//! Drill and forelimb modules operate alternately to avoid collisions: the
//! forelimbs may only move forward with the bit folded, and drilling may
//! only start with the blades fully expanded.

use serde::{Deserialize, Serialize};

use crate::bit::{self, BitMode, BitState, SpinDirection};
use crate::drilling::OperatingPoint;
use crate::error::{Error, Result};
use crate::forelimb::debris_weight;
use crate::quantities::{BitGeometry, SoilSpec};

/// The six phases of one excavation cycle, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DigPhase {
    /// (1) Forelimbs at the rear, folded bit advances to the face.
    ForelimbsRearBitAdvance,
    /// (2) Counterclockwise rotation expands the blades.
    ExpandBlades,
    /// (3) The expanded bit drills the face.
    Drill,
    /// (4) Clockwise rotation folds the blades and retracts the bit.
    FoldBladesRetract,
    /// (5) Forelimbs move forward with the end effectors gathered.
    ForelimbsForwardGathered,
    /// (6) Forefeet spread and sweep the spoil backward.
    SpreadAndSweepBack,
}

impl DigPhase {
    pub const ALL: [DigPhase; 6] = [
        DigPhase::ForelimbsRearBitAdvance,
        DigPhase::ExpandBlades,
        DigPhase::Drill,
        DigPhase::FoldBladesRetract,
        DigPhase::ForelimbsForwardGathered,
        DigPhase::SpreadAndSweepBack,
    ];

    /// 1-based phase id.
    pub fn index(self) -> u8 {
        match self {
            DigPhase::ForelimbsRearBitAdvance => 1,
            DigPhase::ExpandBlades => 2,
            DigPhase::Drill => 3,
            DigPhase::FoldBladesRetract => 4,
            DigPhase::ForelimbsForwardGathered => 5,
            DigPhase::SpreadAndSweepBack => 6,
        }
    }

    /// The unique successor in the cycle.
    pub fn successor(self) -> DigPhase {
        Self::ALL[self.index() as usize % 6]
    }
}

/// Advance the state machine by one phase, enforcing the interlocks:
/// entering the drill phase requires expanded blades, and the forelimb
/// phases require the bit folded.
pub fn step(current: DigPhase, bit: &BitState) -> Result<DigPhase> {
    let next = current.successor();
    match next {
        DigPhase::Drill if bit.mode != BitMode::Expanded => Err(Error::Sequence(format!(
            "entering the drill phase requires expanded blades (bit is {:?})",
            bit.mode
        ))),
        DigPhase::ForelimbsForwardGathered | DigPhase::SpreadAndSweepBack
            if bit.mode != BitMode::Folded =>
        {
            Err(Error::Sequence(format!(
                "forelimbs may only move forward with the bit folded (bit is {:?})",
                bit.mode
            )))
        }
        _ => Ok(next),
    }
}

/// Plan for one excavation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CyclePlan {
    /// Depth drilled per cycle (m).
    pub depth_per_cycle: f64,
    /// Total depth to excavate (m).
    pub target_depth: f64,
    /// Combined duration of the two forelimb phases per cycle (s).
    pub forelimb_sweep_time: f64,
    /// Duration of the bit-advance phase per cycle (s).
    pub bit_advance_time: f64,
}

impl Default for CyclePlan {
    fn default() -> Self {
        Self {
            depth_per_cycle: 0.030,
            target_depth: 0.30,
            // phase timings are rig configuration, not measured values
            forelimb_sweep_time: 10.0,
            bit_advance_time: 10.0,
        }
    }
}

impl CyclePlan {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            (
                "cycle.depth_per_cycle",
                self.depth_per_cycle,
                self.depth_per_cycle > 0.0,
            ),
            (
                "cycle.target_depth",
                self.target_depth,
                self.target_depth >= 0.0,
            ),
            (
                "cycle.forelimb_sweep_time",
                self.forelimb_sweep_time,
                self.forelimb_sweep_time >= 0.0,
            ),
            (
                "cycle.bit_advance_time",
                self.bit_advance_time,
                self.bit_advance_time >= 0.0,
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

/// One timeline entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimelineEntry {
    pub phase: DigPhase,
    pub start_s: f64,
    pub duration_s: f64,
    /// Cumulative depth at the end of this entry (m).
    pub depth_after_m: f64,
    /// Spoil weight removed during this entry (N); nonzero only in the
    /// sweep phase.
    pub debris_removed_n: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimelineTotals {
    pub elapsed_s: f64,
    pub cycles: u64,
    /// Net advance rate over the whole run (m/hr), drilling plus overheads.
    pub net_advance_rate_m_hr: f64,
}

/// Full excavation timeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DigTimeline {
    pub entries: Vec<TimelineEntry>,
    pub totals: TimelineTotals,
}

/// Time to drill `depth` meters at `rop` m/hr, in seconds.
pub fn drill_phase_duration(depth: f64, rop: f64) -> Result<f64> {
    if rop <= 0.0 {
        return Err(Error::InfeasibleRate(format!(
            "cannot drill at rate of penetration {rop} m/hr"
        )));
    }
    if depth < 0.0 {
        return Err(Error::Domain {
            quantity: "depth",
            value: depth,
        });
    }
    Ok(depth / rop * 3600.0)
}

/// Run the six-phase cycle until the target depth is reached.
///
/// Per cycle: advance, expand, drill, fold, forelimbs forward, sweep. The
/// bit state is driven through its real kinematics and every phase change
/// goes through [`step`], so the interlocks are enforced, not assumed. A
/// partial final cycle drills only the remaining depth and removes
/// proportional debris.
pub fn simulate(
    plan: &CyclePlan,
    op_point: &OperatingPoint,
    geom: &BitGeometry,
    soil: &SoilSpec,
    rpm_for_transitions: f64,
) -> Result<DigTimeline> {
    plan.validate()?;
    if op_point.rop <= 0.0 {
        return Err(Error::InfeasibleRate(format!(
            "cannot simulate at rate of penetration {} m/hr",
            op_point.rop
        )));
    }
    let transition_s = bit::transition_duration(geom, rpm_for_transitions)?;
    let full_stroke_turns = geom.max_travel / geom.screw_pitch;

    let mut entries = Vec::new();
    let mut bit_state = BitState::folded(geom);
    let mut phase = DigPhase::SpreadAndSweepBack; // so the first step wraps to phase 1
    let mut t = 0.0_f64;
    let mut depth = 0.0_f64;
    let mut remaining = plan.target_depth;
    let mut cycles = 0_u64;

    // sub-picometer residues from float subtraction do not earn a cycle
    let eps = plan.depth_per_cycle * 1e-12;
    while remaining > eps {
        let cycle_depth = remaining.min(plan.depth_per_cycle);
        remaining -= cycle_depth;
        cycles += 1;

        let mut push = |phase: DigPhase, duration: f64, depth_after: f64, debris: f64| {
            entries.push(TimelineEntry {
                phase,
                start_s: t,
                duration_s: duration,
                depth_after_m: depth_after,
                debris_removed_n: debris,
            });
            t += duration;
        };

        phase = step(phase, &bit_state)?;
        push(phase, plan.bit_advance_time, depth, 0.0);

        phase = step(phase, &bit_state)?;
        push(phase, transition_s, depth, 0.0);
        bit_state = bit::travel_from_rotation(
            full_stroke_turns,
            SpinDirection::CounterClockwise,
            geom,
            &bit_state,
        )
        .state;

        phase = step(phase, &bit_state)?;
        let drill_s = drill_phase_duration(cycle_depth, op_point.rop)?;
        depth += cycle_depth;
        push(phase, drill_s, depth, 0.0);

        phase = step(phase, &bit_state)?;
        push(phase, transition_s, depth, 0.0);
        bit_state = bit::travel_from_rotation(
            full_stroke_turns,
            SpinDirection::Clockwise,
            geom,
            &bit_state,
        )
        .state;

        phase = step(phase, &bit_state)?;
        push(phase, plan.forelimb_sweep_time / 2.0, depth, 0.0);

        phase = step(phase, &bit_state)?;
        let debris = debris_weight(cycle_depth, geom, soil);
        push(phase, plan.forelimb_sweep_time / 2.0, depth, debris);
    }

    let net = if t > 0.0 { depth / t * 3600.0 } else { 0.0 };
    Ok(DigTimeline {
        entries,
        totals: TimelineTotals {
            elapsed_s: t,
            cycles,
            net_advance_rate_m_hr: net,
        },
    })
}
