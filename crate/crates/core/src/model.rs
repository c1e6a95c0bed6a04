//! Validated measurement types.
//!
//! Every type here is immutable once built. The only way to obtain a
//! [`HandRecord`], [`GraspMeasurementSet`], [`ConfigurationProfile`],
//! [`OneTimeMeasurements`] or [`ObjectSpec`] is through a constructor that runs
//! the matching checks in [`crate::validate`], so holding one of these values
//! means its invariants hold.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use chrono::NaiveDate;

use crate::draft::{HandDraft, ObjectDraft, OneTimeDraft, PairDraft, ProfileDraft, SetDraft};
use crate::error::Error;
use crate::validate;

/// Grasp type a measurement set was taken for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraspType {
    Precision,
    CylindricalPower,
    SphericalPower,
}

impl GraspType {
    pub const ALL: [GraspType; 3] = [
        GraspType::Precision,
        GraspType::CylindricalPower,
        GraspType::SphericalPower,
    ];

    /// Key used for this grasp type in documents and issue paths.
    pub fn key(self) -> &'static str {
        match self {
            GraspType::Precision => "precision",
            GraspType::CylindricalPower => "cylindricalPower",
            GraspType::SphericalPower => "sphericalPower",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        GraspType::ALL.into_iter().find(|t| t.key() == key)
    }

    /// Spherical power sets record the area of the disk that fits at each
    /// depth; the other grasp types record a span length.
    pub fn extent_kind(self) -> ExtentKind {
        match self {
            GraspType::SphericalPower => ExtentKind::Area,
            GraspType::Precision | GraspType::CylindricalPower => ExtentKind::Length,
        }
    }

    pub fn is_power(self) -> bool {
        !matches!(self, GraspType::Precision)
    }
}

impl fmt::Display for GraspType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Unit of the extent column of a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtentKind {
    /// Span in millimeters.
    Length,
    /// Disk area in square millimeters.
    Area,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairLabel {
    Base,
    Mid,
    Distal,
}

impl PairLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            PairLabel::Base => "base",
            PairLabel::Mid => "mid",
            PairLabel::Distal => "distal",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        [PairLabel::Base, PairLabel::Mid, PairLabel::Distal]
            .into_iter()
            .find(|l| l.as_str() == key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigRole {
    /// Widest configuration that is still a functional grasp (actuation 0).
    MaxFunctional,
    Intermediate,
    /// Narrowest functional grasp (actuation 1).
    MinFunctional,
}

impl ConfigRole {
    pub fn as_str(self) -> &'static str {
        match self {
            ConfigRole::MaxFunctional => "max",
            ConfigRole::Intermediate => "intermediate",
            ConfigRole::MinFunctional => "min",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        [
            ConfigRole::MaxFunctional,
            ConfigRole::Intermediate,
            ConfigRole::MinFunctional,
        ]
        .into_iter()
        .find(|r| r.as_str() == key)
    }
}

/// Where the distal measurement was taken on the distal link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistalContact {
    Tip,
    FingerpadCenter,
}

impl DistalContact {
    pub fn as_str(self) -> &'static str {
        match self {
            DistalContact::Tip => "tip",
            DistalContact::FingerpadCenter => "fingerpadCenter",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        [DistalContact::Tip, DistalContact::FingerpadCenter]
            .into_iter()
            .find(|c| c.as_str() == key)
    }
}

/// Photo references and notes documenting how a configuration was measured.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    /// Top-down photo with a ruler or grid in view.
    pub photo_ref: Option<String>,
    /// Second photo looking at the palm (spherical power grasps).
    pub palm_photo_ref: Option<String>,
    pub note: Option<String>,
}

/// One depth/extent measurement inside a validated profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementPair {
    depth: f64,
    extent: f64,
    label: PairLabel,
}

impl MeasurementPair {
    /// Depth from the palm in mm.
    pub fn depth(&self) -> f64 {
        self.depth
    }

    /// Span in mm, or disk area in mm² for spherical power sets.
    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn label(&self) -> PairLabel {
        self.label
    }
}

/// A single measured finger configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigurationProfile {
    actuation: f64,
    role: ConfigRole,
    distal_contact: DistalContact,
    pairs: Vec<MeasurementPair>,
    provenance: Provenance,
}

impl ConfigurationProfile {
    pub fn new(draft: ProfileDraft) -> Result<Self, Error> {
        let issues = validate::profile_issues(&draft, "");
        if !issues.is_empty() {
            return Err(Error::Invalid(issues));
        }
        Ok(Self::from_checked(draft))
    }

    pub(crate) fn from_checked(draft: ProfileDraft) -> Self {
        Self {
            actuation: draft.actuation,
            role: draft.role,
            distal_contact: draft.distal_contact,
            pairs: draft
                .pairs
                .into_iter()
                .map(|p| MeasurementPair {
                    depth: p.depth,
                    extent: p.extent,
                    label: p.label,
                })
                .collect(),
            provenance: draft.provenance,
        }
    }

    pub fn actuation(&self) -> f64 {
        self.actuation
    }

    pub fn role(&self) -> ConfigRole {
        self.role
    }

    pub fn distal_contact(&self) -> DistalContact {
        self.distal_contact
    }

    pub fn pairs(&self) -> &[MeasurementPair] {
        &self.pairs
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Largest extent over all pairs.
    pub fn max_extent(&self) -> f64 {
        self.pairs.iter().map(|p| p.extent).fold(0.0, f64::max)
    }

    pub fn base_depth(&self) -> f64 {
        self.pairs[0].depth
    }

    pub fn distal_depth(&self) -> f64 {
        self.pairs[self.pairs.len() - 1].depth
    }

    pub fn to_draft(&self) -> ProfileDraft {
        ProfileDraft {
            actuation: self.actuation,
            role: self.role,
            distal_contact: self.distal_contact,
            pairs: self
                .pairs
                .iter()
                .map(|p| PairDraft {
                    depth: p.depth,
                    extent: p.extent,
                    label: p.label,
                })
                .collect(),
            provenance: self.provenance.clone(),
        }
    }
}

/// All configurations measured for one grasp type, ordered by actuation.
#[derive(Debug, Clone, PartialEq)]
pub struct GraspMeasurementSet {
    grasp_type: GraspType,
    configurations: Vec<ConfigurationProfile>,
}

impl GraspMeasurementSet {
    pub fn new(draft: SetDraft) -> Result<Self, Error> {
        let issues = validate::set_issues(&draft, "");
        if !issues.is_empty() {
            return Err(Error::Invalid(issues));
        }
        Ok(Self::from_checked(draft))
    }

    pub(crate) fn from_checked(draft: SetDraft) -> Self {
        Self {
            grasp_type: draft.grasp_type,
            configurations: draft
                .configurations
                .into_iter()
                .map(ConfigurationProfile::from_checked)
                .collect(),
        }
    }

    pub fn grasp_type(&self) -> GraspType {
        self.grasp_type
    }

    pub fn extent_kind(&self) -> ExtentKind {
        self.grasp_type.extent_kind()
    }

    /// Configurations in strictly increasing actuation order.
    pub fn configurations(&self) -> &[ConfigurationProfile] {
        &self.configurations
    }

    pub fn max_profile(&self) -> &ConfigurationProfile {
        &self.configurations[0]
    }

    pub fn min_profile(&self) -> &ConfigurationProfile {
        &self.configurations[self.configurations.len() - 1]
    }

    /// Number of pairs shared by every profile in the set.
    pub fn pair_count(&self) -> usize {
        self.configurations[0].pairs.len()
    }

    pub fn to_draft(&self) -> SetDraft {
        SetDraft {
            grasp_type: self.grasp_type,
            configurations: self.configurations.iter().map(|c| c.to_draft()).collect(),
        }
    }
}

/// Measurements taken once per hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneTimeMeasurements {
    max_open: f64,
    min_width: f64,
    max_width: f64,
    max_width_unbounded: bool,
}

impl OneTimeMeasurements {
    pub fn new(draft: OneTimeDraft) -> Result<Self, Error> {
        let issues = validate::one_time_issues(&draft, "");
        if !issues.is_empty() {
            return Err(Error::Invalid(issues));
        }
        Ok(Self::from_checked(draft))
    }

    pub(crate) fn from_checked(d: OneTimeDraft) -> Self {
        Self {
            max_open: d.max_open,
            min_width: d.min_width,
            max_width: d.max_width,
            max_width_unbounded: d.max_width_unbounded,
        }
    }

    /// Span between the distal link ends with the hand fully open, in mm.
    pub fn max_open(&self) -> f64 {
        self.max_open
    }

    /// Height of the shortest object that can be picked off a table, in mm.
    pub fn min_width(&self) -> f64 {
        self.min_width
    }

    /// Tallest graspable object in mm, or the palm width when
    /// [`max_width_unbounded`](Self::max_width_unbounded) is set.
    pub fn max_width(&self) -> f64 {
        self.max_width
    }

    pub fn max_width_unbounded(&self) -> bool {
        self.max_width_unbounded
    }

    pub fn to_draft(&self) -> OneTimeDraft {
        OneTimeDraft {
            max_open: self.max_open,
            min_width: self.min_width,
            max_width: self.max_width,
            max_width_unbounded: self.max_width_unbounded,
        }
    }
}

/// A fully validated hand measurement record.
#[derive(Debug, Clone, PartialEq)]
pub struct HandRecord {
    name: String,
    measurer: String,
    date: NaiveDate,
    one_time: OneTimeMeasurements,
    sets: Vec<GraspMeasurementSet>,
}

impl HandRecord {
    /// Validates `draft` and builds the record. On failure every violation is
    /// returned, not just the first.
    pub fn new(draft: HandDraft) -> Result<Self, Error> {
        let issues = validate::validate_hand(&draft);
        if !issues.is_empty() {
            return Err(Error::Invalid(issues));
        }
        let mut sets: Vec<GraspMeasurementSet> = draft
            .sets
            .into_iter()
            .map(GraspMeasurementSet::from_checked)
            .collect();
        sets.sort_by_key(|s| s.grasp_type);
        Ok(Self {
            name: draft.name,
            measurer: draft.measurer,
            date: draft.date,
            one_time: OneTimeMeasurements::from_checked(draft.one_time),
            sets,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn measurer(&self) -> &str {
        &self.measurer
    }

    pub fn date(&self) -> NaiveDate {
        self.date
    }

    pub fn one_time(&self) -> &OneTimeMeasurements {
        &self.one_time
    }

    pub fn set(&self, grasp_type: GraspType) -> Option<&GraspMeasurementSet> {
        self.sets.iter().find(|s| s.grasp_type == grasp_type)
    }

    /// Sets in [`GraspType`] order.
    pub fn sets(&self) -> &[GraspMeasurementSet] {
        &self.sets
    }

    pub fn to_draft(&self) -> HandDraft {
        HandDraft {
            name: self.name.clone(),
            measurer: self.measurer.clone(),
            date: self.date,
            one_time: self.one_time.to_draft(),
            sets: self.sets.iter().map(|s| s.to_draft()).collect(),
        }
    }
}

impl TryFrom<HandDraft> for HandRecord {
    type Error = Error;

    fn try_from(draft: HandDraft) -> Result<Self, Error> {
        HandRecord::new(draft)
    }
}

/// Object cross-section along the hand's span, depth and width axes.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectSpec {
    name: String,
    span: f64,
    depth: f64,
    width: Option<f64>,
    area: Option<f64>,
}

impl ObjectSpec {
    pub fn new(draft: ObjectDraft) -> Result<Self, Error> {
        let issues = validate::validate_object(&draft);
        if !issues.is_empty() {
            return Err(Error::Invalid(issues));
        }
        Ok(Self {
            name: draft.name,
            span: draft.span,
            depth: draft.depth,
            width: draft.width,
            area: draft.area,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Extent along the span axis, mm.
    pub fn span(&self) -> f64 {
        self.span
    }

    /// Extent along the depth axis, mm.
    pub fn depth(&self) -> f64 {
        self.depth
    }

    /// Height off the table, mm.
    pub fn width(&self) -> Option<f64> {
        self.width
    }

    /// Equatorial disk area for spherical grasps, mm².
    pub fn area(&self) -> Option<f64> {
        self.area
    }

    pub fn to_draft(&self) -> ObjectDraft {
        ObjectDraft {
            name: self.name.clone(),
            span: self.span,
            depth: self.depth,
            width: self.width,
            area: self.area,
        }
    }
}

impl TryFrom<ObjectDraft> for ObjectSpec {
    type Error = Error;

    fn try_from(draft: ObjectDraft) -> Result<Self, Error> {
        ObjectSpec::new(draft)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Span,
    Depth,
    Width,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Span, Axis::Depth, Axis::Width];

    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Span => "Span",
            Axis::Depth => "Depth",
            Axis::Width => "Width",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Qualitative size of an object relative to a hand along one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SizeBand {
    TooSmall,
    Small,
    Medium,
    Large,
    TooLarge,
}

impl SizeBand {
    /// Bands a relative size. `0.7` is Medium; Large covers `(0.7, 1.0]`.
    /// NaN is treated as out of range on the large side.
    pub fn from_relative(s: f64) -> Self {
        if s < 0.0 {
            SizeBand::TooSmall
        } else if s < 0.3 {
            SizeBand::Small
        } else if s <= 0.7 {
            SizeBand::Medium
        } else if s <= 1.0 {
            SizeBand::Large
        } else {
            SizeBand::TooLarge
        }
    }

    /// Small, Medium or Large.
    pub fn is_graspable(self) -> bool {
        matches!(self, SizeBand::Small | SizeBand::Medium | SizeBand::Large)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SizeBand::TooSmall => "TooSmall",
            SizeBand::Small => "Small",
            SizeBand::Medium => "Medium",
            SizeBand::Large => "Large",
            SizeBand::TooLarge => "TooLarge",
        }
    }
}

impl fmt::Display for SizeBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A size band together with the relative size it was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeClass {
    pub band: SizeBand,
    /// `(O - m) / (M - m)`, uncapped.
    pub relative: f64,
}

impl SizeClass {
    pub fn from_relative(relative: f64) -> Self {
        SizeClass {
            band: SizeBand::from_relative(relative),
            relative,
        }
    }
}
