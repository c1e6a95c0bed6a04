//! Invariant checks over drafts and documentation checks over records.
//!
//! Issue paths are JSON pointers into the on-disk document layout, e.g.
//! `/sets/precision/configurations/1/pairs/0/depthMm`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::draft::{HandDraft, ObjectDraft, OneTimeDraft, ProfileDraft, SetDraft};
use crate::model::{ConfigRole, GraspType, HandRecord, PairLabel};

/// Machine-readable issue codes. Everything except the last two is a hard
/// violation; `MissingPhotoRef` and `SphericalNeedsPalmView` are
/// documentation warnings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IssueCode {
    EmptyName,
    NonFiniteValue,
    MaxOpenNotPositive,
    MinWidthNegative,
    MaxWidthNotAboveMin,
    NoGraspSets,
    DuplicateGraspType,
    TooFewPairs,
    NegativeDepth,
    NegativeExtent,
    BadPairLabel,
    DepthNotIncreasing,
    ActuationOutOfRange,
    MaxActuationNotZero,
    MinActuationNotOne,
    IntermediateAtEndpoint,
    MaxConfigCount,
    MinConfigCount,
    ActuationNotIncreasing,
    PairCountMismatch,
    SpanRangeDegenerate,
    SpanExceedsMaxOpen,
    NonPositiveDimension,
    MissingPhotoRef,
    SphericalNeedsPalmView,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        use IssueCode::*;
        match self {
            EmptyName => "EMPTY_NAME",
            NonFiniteValue => "NON_FINITE_VALUE",
            MaxOpenNotPositive => "MAX_OPEN_NOT_POSITIVE",
            MinWidthNegative => "MIN_WIDTH_NEGATIVE",
            MaxWidthNotAboveMin => "MAX_WIDTH_NOT_ABOVE_MIN",
            NoGraspSets => "NO_GRASP_SETS",
            DuplicateGraspType => "DUPLICATE_GRASP_TYPE",
            TooFewPairs => "TOO_FEW_PAIRS",
            NegativeDepth => "NEGATIVE_DEPTH",
            NegativeExtent => "NEGATIVE_EXTENT",
            BadPairLabel => "BAD_PAIR_LABEL",
            DepthNotIncreasing => "DEPTH_NOT_INCREASING",
            ActuationOutOfRange => "ACTUATION_OUT_OF_RANGE",
            MaxActuationNotZero => "MAX_ACTUATION_NOT_ZERO",
            MinActuationNotOne => "MIN_ACTUATION_NOT_ONE",
            IntermediateAtEndpoint => "INTERMEDIATE_AT_ENDPOINT",
            MaxConfigCount => "MAX_CONFIG_COUNT",
            MinConfigCount => "MIN_CONFIG_COUNT",
            ActuationNotIncreasing => "ACTUATION_NOT_INCREASING",
            PairCountMismatch => "PAIR_COUNT_MISMATCH",
            SpanRangeDegenerate => "SPAN_RANGE_DEGENERATE",
            SpanExceedsMaxOpen => "SPAN_EXCEEDS_MAX_OPEN",
            NonPositiveDimension => "NON_POSITIVE_DIMENSION",
            MissingPhotoRef => "MISSING_PHOTO_REF",
            SphericalNeedsPalmView => "SPHERICAL_NEEDS_PALM_VIEW",
        }
    }

    pub fn is_warning(self) -> bool {
        matches!(
            self,
            IssueCode::MissingPhotoRef | IssueCode::SphericalNeedsPalmView
        )
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A violation or warning with the document path it refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub code: IssueCode,
    pub path: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code, self.path, self.message)
    }
}

struct Sink<'a> {
    out: &'a mut Vec<Issue>,
}

impl Sink<'_> {
    fn push(&mut self, code: IssueCode, path: String, message: String) {
        self.out.push(Issue {
            code,
            path,
            message,
        });
    }

    /// Reports non-finite values; returns true when `v` is finite.
    fn finite(&mut self, v: f64, path: &str) -> bool {
        if v.is_finite() {
            true
        } else {
            self.push(
                IssueCode::NonFiniteValue,
                path.into(),
                format!("value {v} is not finite"),
            );
            false
        }
    }
}

/// Every invariant violation in `hand`. An empty list means the draft can be
/// turned into a [`HandRecord`].
pub fn validate_hand(hand: &HandDraft) -> Vec<Issue> {
    let mut out = Vec::new();
    let mut sink = Sink { out: &mut out };

    if hand.name.trim().is_empty() {
        sink.push(
            IssueCode::EmptyName,
            "/name".into(),
            "hand name is empty".into(),
        );
    }

    sink.out.extend(one_time_issues(&hand.one_time, "/oneTime"));

    if hand.sets.is_empty() {
        sink.push(
            IssueCode::NoGraspSets,
            "/sets".into(),
            "at least one grasp measurement set is required".into(),
        );
    }

    for (i, set) in hand.sets.iter().enumerate() {
        let prefix = format!("/sets/{}", set.grasp_type.key());
        if hand.sets[..i]
            .iter()
            .any(|s| s.grasp_type == set.grasp_type)
        {
            sink.push(
                IssueCode::DuplicateGraspType,
                prefix.clone(),
                format!("more than one {} set", set.grasp_type),
            );
        }
        sink.out.extend(set_issues(set, &prefix));

        let max_open = hand.one_time.max_open;
        if set.grasp_type.extent_kind() == crate::ExtentKind::Length && max_open.is_finite() {
            let max_idx = set
                .configurations
                .iter()
                .position(|c| c.role == ConfigRole::MaxFunctional);
            if let Some(ci) = max_idx {
                for (pi, pair) in set.configurations[ci].pairs.iter().enumerate() {
                    if pair.extent > max_open {
                        sink.push(
                            IssueCode::SpanExceedsMaxOpen,
                            format!("{prefix}/configurations/{ci}/pairs/{pi}/extent"),
                            format!("span {} exceeds max open {}", pair.extent, max_open),
                        );
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn one_time_issues(one: &OneTimeDraft, prefix: &str) -> Vec<Issue> {
    let mut out = Vec::new();
    let mut sink = Sink { out: &mut out };
    let p_open = format!("{prefix}/maxOpenMm");
    let p_min = format!("{prefix}/minWidthMm");
    let p_max = format!("{prefix}/maxWidthMm");

    if sink.finite(one.max_open, &p_open) && one.max_open <= 0.0 {
        sink.push(
            IssueCode::MaxOpenNotPositive,
            p_open,
            format!("max open {} must be positive", one.max_open),
        );
    }
    let min_ok = sink.finite(one.min_width, &p_min);
    if min_ok && one.min_width < 0.0 {
        sink.push(
            IssueCode::MinWidthNegative,
            p_min,
            format!("min width {} is negative", one.min_width),
        );
    }
    if sink.finite(one.max_width, &p_max) && min_ok && one.max_width <= one.min_width {
        sink.push(
            IssueCode::MaxWidthNotAboveMin,
            p_max,
            format!(
                "max width {} must exceed min width {}",
                one.max_width, one.min_width
            ),
        );
    }
    out
}

pub(crate) fn set_issues(set: &SetDraft, prefix: &str) -> Vec<Issue> {
    let mut out = Vec::new();
    let mut sink = Sink { out: &mut out };
    let configs = &set.configurations;
    let configs_path = format!("{prefix}/configurations");

    for role in [ConfigRole::MaxFunctional, ConfigRole::MinFunctional] {
        let count = configs.iter().filter(|c| c.role == role).count();
        if count != 1 {
            let code = if role == ConfigRole::MaxFunctional {
                IssueCode::MaxConfigCount
            } else {
                IssueCode::MinConfigCount
            };
            sink.push(
                code,
                configs_path.clone(),
                format!(
                    "expected exactly one {} configuration, found {count}",
                    role.as_str()
                ),
            );
        }
    }

    for (i, c) in configs.iter().enumerate() {
        let cpath = format!("{configs_path}/{i}");
        sink.out.extend(profile_issues(c, &cpath));
        if i > 0 {
            let prev = configs[i - 1].actuation;
            // NaN and out-of-range actuations are already reported per profile.
            if c.actuation.is_finite() && prev.is_finite() && c.actuation <= prev {
                sink.push(
                    IssueCode::ActuationNotIncreasing,
                    format!("{cpath}/actuation"),
                    format!(
                        "actuation {} does not exceed previous {}",
                        c.actuation, prev
                    ),
                );
            }
            let n0 = configs[0].pairs.len();
            if c.pairs.len() != n0 {
                sink.push(
                    IssueCode::PairCountMismatch,
                    format!("{cpath}/pairs"),
                    format!("{} pairs, first configuration has {n0}", c.pairs.len()),
                );
            }
        }
    }

    let max = configs
        .iter()
        .position(|c| c.role == ConfigRole::MaxFunctional);
    let min = configs
        .iter()
        .position(|c| c.role == ConfigRole::MinFunctional);
    if let (Some(max), Some(min)) = (max, min) {
        let widest = |c: &ProfileDraft| c.pairs.iter().map(|p| p.extent).fold(f64::NAN, f64::max);
        let (hi, lo) = (widest(&configs[max]), widest(&configs[min]));
        if hi.is_finite() && lo.is_finite() && hi <= lo {
            sink.push(
                IssueCode::SpanRangeDegenerate,
                format!("{configs_path}/{max}/pairs"),
                format!("largest max-configuration extent {hi} does not exceed min-configuration extent {lo}"),
            );
        }
    }
    out
}

pub(crate) fn profile_issues(p: &ProfileDraft, prefix: &str) -> Vec<Issue> {
    let mut out = Vec::new();
    let mut sink = Sink { out: &mut out };
    let a_path = format!("{prefix}/actuation");
    let a = p.actuation;

    if !(0.0..=1.0).contains(&a) {
        sink.push(
            IssueCode::ActuationOutOfRange,
            a_path,
            format!("actuation {a} is outside [0, 1]"),
        );
    } else {
        match p.role {
            ConfigRole::MaxFunctional if a != 0.0 => sink.push(
                IssueCode::MaxActuationNotZero,
                a_path,
                format!("max configuration must have actuation 0, got {a}"),
            ),
            ConfigRole::MinFunctional if a != 1.0 => sink.push(
                IssueCode::MinActuationNotOne,
                a_path,
                format!("min configuration must have actuation 1, got {a}"),
            ),
            ConfigRole::Intermediate if a == 0.0 || a == 1.0 => sink.push(
                IssueCode::IntermediateAtEndpoint,
                a_path,
                format!("intermediate configuration must have 0 < actuation < 1, got {a}"),
            ),
            _ => {}
        }
    }

    let n = p.pairs.len();
    if n < 2 {
        sink.push(
            IssueCode::TooFewPairs,
            format!("{prefix}/pairs"),
            format!("at least a base and a distal pair are required, found {n}"),
        );
    }

    for (j, pair) in p.pairs.iter().enumerate() {
        let base = format!("{prefix}/pairs/{j}");
        let d_path = format!("{base}/depthMm");
        let e_path = format!("{base}/extent");
        if sink.finite(pair.depth, &d_path) && pair.depth < 0.0 {
            sink.push(
                IssueCode::NegativeDepth,
                d_path.clone(),
                format!("depth {} is negative", pair.depth),
            );
        }
        if sink.finite(pair.extent, &e_path) && pair.extent < 0.0 {
            sink.push(
                IssueCode::NegativeExtent,
                e_path,
                format!("extent {} is negative", pair.extent),
            );
        }

        let expected = if j == 0 {
            PairLabel::Base
        } else if j + 1 == n {
            PairLabel::Distal
        } else {
            PairLabel::Mid
        };
        if n >= 2 && pair.label != expected {
            sink.push(
                IssueCode::BadPairLabel,
                format!("{base}/label"),
                format!(
                    "expected label {}, found {}",
                    expected.as_str(),
                    pair.label.as_str()
                ),
            );
        }

        if j > 0 {
            let prev = p.pairs[j - 1].depth;
            if pair.depth.is_finite() && prev.is_finite() && pair.depth <= prev {
                sink.push(
                    IssueCode::DepthNotIncreasing,
                    d_path,
                    format!("depth {} does not exceed previous depth {prev}", pair.depth),
                );
            }
        }
    }
    out
}

/// Violations in an object draft.
pub fn validate_object(obj: &ObjectDraft) -> Vec<Issue> {
    let mut out = Vec::new();
    let mut sink = Sink { out: &mut out };
    if obj.name.trim().is_empty() {
        sink.push(
            IssueCode::EmptyName,
            "/name".into(),
            "object name is empty".into(),
        );
    }
    let dims = [
        ("/oSpanMm", Some(obj.span)),
        ("/oDepthMm", Some(obj.depth)),
        ("/oWidthMm", obj.width),
        ("/oAreaMm2", obj.area),
    ];
    for (path, value) in dims {
        if let Some(v) = value {
            if sink.finite(v, path) && v <= 0.0 {
                sink.push(
                    IssueCode::NonPositiveDimension,
                    path.into(),
                    format!("dimension {v} must be positive"),
                );
            }
        }
    }
    out
}

/// Documentation warnings for a valid record: configurations without a
/// top-down photo reference, and spherical power configurations without the
/// additional palm-view photo.
pub fn documentation_completeness(hand: &HandRecord) -> Vec<Issue> {
    let mut out = Vec::new();
    for set in hand.sets() {
        let t = set.grasp_type();
        for (i, c) in set.configurations().iter().enumerate() {
            let path = format!("/sets/{}/configurations/{i}", t.key());
            if c.provenance().photo_ref.is_none() {
                out.push(Issue {
                    code: IssueCode::MissingPhotoRef,
                    path: format!("{path}/photoRef"),
                    message: format!(
                        "{} configuration at actuation {} of the {t} set has no photo reference",
                        c.role().as_str(),
                        c.actuation()
                    ),
                });
            }
            if t == GraspType::SphericalPower && c.provenance().palm_photo_ref.is_none() {
                out.push(Issue {
                    code: IssueCode::SphericalNeedsPalmView,
                    path: format!("{path}/palmPhotoRef"),
                    message: format!(
                        "{} spherical configuration needs a second photo looking at the palm",
                        c.role().as_str()
                    ),
                });
            }
        }
    }
    out
}
