use alloc::vec::Vec;

use crate::model::{Axis, GraspType};
use crate::validate::Issue;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid record: {} violation(s), first: {}", .0.len(), .0.first().map(|i| i.code.as_str()).unwrap_or("none"))]
    Invalid(Vec<Issue>),
    #[error("actuation {0} is outside [0, 1]")]
    ActuationOutOfRange(f64),
    #[error("depth {depth} is outside the profile domain [{min}, {max}]")]
    DepthOutOfRange { depth: f64, min: f64, max: f64 },
    #[error("operation needs a length profile, got an area profile")]
    WrongExtentKind,
    #[error("hand has no {0} measurement set")]
    MissingGraspType(GraspType),
    #[error("spherical grasps need an object area or both span and width")]
    MissingObjectDimension,
    #[error("{axis} target {value} must lie strictly between 0 and 1")]
    TargetOutOfRange { axis: Axis, value: f64 },
    #[error("{0} axis has no upper bound")]
    UnboundedAxis(Axis),
    #[error("search resolution must be at least 1")]
    InvalidResolution,
    #[error("{axis} extrema are degenerate: max {max} <= min {min}")]
    DegenerateExtrema { axis: Axis, min: f64, max: f64 },
}
