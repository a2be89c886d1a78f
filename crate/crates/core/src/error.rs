//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The configuration document could not be parsed. The message carries
    /// the line/field diagnostics from the parser.
    #[error("configuration parse error: {0}")]
    ConfigParse(String),

    /// A field violated its declared bound.
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    /// A dataset file could not be read or decoded.
    #[error("data error: {0}")]
    Data(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// An input was outside the physical domain of an operation.
    #[error("domain error: {quantity} = {value} is out of range")]
    Domain { quantity: &'static str, value: f64 },

    /// The requested torque exceeds what the motor can deliver.
    #[error(
        "motor stall: torque {torque:.4} N·m exceeds the deliverable maximum {max_torque:.4} N·m"
    )]
    Stall { torque: f64, max_torque: f64 },

    /// A rate of penetration of zero (or less) poisons downstream values.
    #[error("infeasible rate of penetration: {0}")]
    InfeasibleRate(String),

    /// Calibration needs at least two usable experiment records.
    #[error("calibration requires at least 2 usable records, found {usable}")]
    Calibration { usable: usize },

    /// The transmission fit has no usable rows.
    #[error("transmission fit failed: {0}")]
    Fit(String),

    /// Interpolation input outside the tabulated range; no extrapolation.
    #[error("width {d} mm outside the tabulated range [{min}, {max}] mm")]
    WidthOutOfRange { d: f64, min: f64, max: f64 },

    /// A dig-cycle interlock guard was violated.
    #[error("sequence violation: {0}")]
    Sequence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
