//! Core models for an expandable-bit drilling robot.
//!
//! The crate covers the drilling chain (weight-on-bit → torque → spindle
//! speed → penetration rate → specific energy), calibration of the
//! penetration-rate scale against bench data, the spring-loaded caster
//! alignment balance, expandable-bit kinematics, forelimb debris removal,
//! and the six-phase excavation cycle simulator.

pub mod bit;
pub mod caster;
pub mod config;
pub mod cycle;
pub mod data;
pub mod drilling;
pub mod error;
pub mod forelimb;
pub mod optimizer;
pub mod quantities;

pub use config::{load_config, Config};
pub use error::{Error, Result};
pub use quantities::{
    AreaConvention, BitGeometry, DiameterUnit, ExperimentRecord, GalleConstants, MotorSpec,
    SoilCondition, SoilSpec, GRAVITY,
};
