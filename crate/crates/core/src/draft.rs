//! Unchecked input records.
//!
//! Drafts mirror the validated model one to one but carry no invariants.
//! Parsers fill them in, [`crate::validate_hand`] reports what is wrong with
//! them, and the `new` constructors in [`crate::model`] turn them into
//! validated values.

use alloc::string::String;
use alloc::vec::Vec;

use chrono::NaiveDate;

use crate::model::{ConfigRole, DistalContact, GraspType, PairLabel, Provenance};

#[derive(Debug, Clone, PartialEq)]
pub struct PairDraft {
    pub depth: f64,
    pub extent: f64,
    pub label: PairLabel,
}

impl PairDraft {
    pub fn new(depth: f64, extent: f64, label: PairLabel) -> Self {
        Self {
            depth,
            extent,
            label,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileDraft {
    pub actuation: f64,
    pub role: ConfigRole,
    pub distal_contact: DistalContact,
    pub pairs: Vec<PairDraft>,
    pub provenance: Provenance,
}

impl ProfileDraft {
    /// Builds a profile from `(depth, extent)` points, labelling the first
    /// Base, the last Distal and everything between Mid.
    pub fn from_points(actuation: f64, role: ConfigRole, points: &[(f64, f64)]) -> Self {
        let last = points.len().saturating_sub(1);
        let pairs = points
            .iter()
            .enumerate()
            .map(|(i, &(depth, extent))| {
                let label = if i == 0 {
                    PairLabel::Base
                } else if i == last {
                    PairLabel::Distal
                } else {
                    PairLabel::Mid
                };
                PairDraft::new(depth, extent, label)
            })
            .collect();
        Self {
            actuation,
            role,
            distal_contact: DistalContact::FingerpadCenter,
            pairs,
            provenance: Provenance::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SetDraft {
    pub grasp_type: GraspType,
    pub configurations: Vec<ProfileDraft>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneTimeDraft {
    pub max_open: f64,
    pub min_width: f64,
    pub max_width: f64,
    pub max_width_unbounded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HandDraft {
    pub name: String,
    pub measurer: String,
    pub date: NaiveDate,
    pub one_time: OneTimeDraft,
    pub sets: Vec<SetDraft>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectDraft {
    pub name: String,
    pub span: f64,
    pub depth: f64,
    pub width: Option<f64>,
    pub area: Option<f64>,
}

impl ObjectDraft {
    pub fn new(name: impl Into<String>, span: f64, depth: f64) -> Self {
        Self {
            name: name.into(),
            span,
            depth,
            width: None,
            area: None,
        }
    }

    pub fn with_width(mut self, width: f64) -> Self {
        self.width = Some(width);
        self
    }

    pub fn with_area(mut self, area: f64) -> Self {
        self.area = Some(area);
        self
    }
}
