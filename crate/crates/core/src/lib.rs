//! Grasp-space measurement model for robot hands.
//!
//! A hand is described by a handful of one-time measurements plus, per grasp
//! type, a set of finger configurations. Each configuration is an ordered list
//! of depth/extent pairs measured from the palm outwards. This crate validates
//! such records, interpolates the graspable region across finger actuation,
//! and searches for the actuation and placement at which an object fits.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, plotting and
//! the command line live in the `graspspan` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod draft;
mod error;
pub mod fit;
pub mod interp;
pub mod model;
pub mod validate;

pub use draft::{HandDraft, ObjectDraft, OneTimeDraft, PairDraft, ProfileDraft, SetDraft};
pub use error::Error;
pub use fit::{
    axis_extrema, canonical_object, classify, compare_hands, fit, relative_size, required_extent,
    AxisClasses, AxisExtrema, CanonicalTargets, CompareRow, FitResult, HandExtrema, Placement,
    DEFAULT_RESOLUTION,
};
pub use interp::{
    config_interp, profile_region, span_interp, InterpolatedProfile, ProfilePoint, RegionVertex,
};
pub use model::{
    Axis, ConfigRole, ConfigurationProfile, DistalContact, ExtentKind, GraspMeasurementSet,
    GraspType, HandRecord, MeasurementPair, ObjectSpec, OneTimeMeasurements, PairLabel, Provenance,
    SizeBand, SizeClass,
};
pub use validate::{documentation_completeness, validate_hand, validate_object, Issue, IssueCode};

/// Date type used for measurement records.
pub use chrono::NaiveDate;
