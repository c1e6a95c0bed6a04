//! Interpolation across actuation and along depth.
//!
//! A measurement set is treated as piecewise linear in actuation: between two
//! measured configurations every pair is blended pointwise (depth and extent
//! alike). Within one profile, extent is piecewise linear in depth between
//! the breakpoints. Nothing is extrapolated.

use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::model::{ConfigurationProfile, ExtentKind, GraspMeasurementSet};
use crate::validate::{Issue, IssueCode};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub depth: f64,
    pub extent: f64,
}

/// Depth/extent breakpoints at a given actuation.
///
/// Depths are strictly increasing, extents are non-negative and there are at
/// least two points.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolatedProfile {
    actuation: f64,
    kind: ExtentKind,
    points: Vec<ProfilePoint>,
}

impl InterpolatedProfile {
    pub fn new(actuation: f64, kind: ExtentKind, points: Vec<ProfilePoint>) -> Result<Self, Error> {
        let mut issues = Vec::new();
        if !(0.0..=1.0).contains(&actuation) {
            return Err(Error::ActuationOutOfRange(actuation));
        }
        if points.len() < 2 {
            issues.push(Issue {
                code: IssueCode::TooFewPairs,
                path: "/pairs".into(),
                message: format!("at least two points are required, found {}", points.len()),
            });
        }
        for (i, p) in points.iter().enumerate() {
            if !(p.extent >= 0.0 && p.extent.is_finite()) {
                issues.push(Issue {
                    code: IssueCode::NegativeExtent,
                    path: format!("/pairs/{i}/extent"),
                    message: format!("extent {} must be finite and non-negative", p.extent),
                });
            }
            if !p.depth.is_finite() || (i > 0 && p.depth <= points[i - 1].depth) {
                issues.push(Issue {
                    code: IssueCode::DepthNotIncreasing,
                    path: format!("/pairs/{i}/depthMm"),
                    message: format!("depth {} breaks strict ordering", p.depth),
                });
            }
        }
        if !issues.is_empty() {
            return Err(Error::Invalid(issues));
        }
        Ok(Self {
            actuation,
            kind,
            points,
        })
    }

    fn from_measured(profile: &ConfigurationProfile, kind: ExtentKind) -> Self {
        Self {
            actuation: profile.actuation(),
            kind,
            points: profile
                .pairs()
                .iter()
                .map(|p| ProfilePoint {
                    depth: p.depth(),
                    extent: p.extent(),
                })
                .collect(),
        }
    }

    pub fn actuation(&self) -> f64 {
        self.actuation
    }

    pub fn extent_kind(&self) -> ExtentKind {
        self.kind
    }

    pub fn points(&self) -> &[ProfilePoint] {
        &self.points
    }

    pub fn min_depth(&self) -> f64 {
        self.points[0].depth
    }

    pub fn max_depth(&self) -> f64 {
        self.points[self.points.len() - 1].depth
    }

    pub fn max_extent(&self) -> f64 {
        self.points.iter().map(|p| p.extent).fold(0.0, f64::max)
    }
}

/// Profile of `set` at actuation `a`.
///
/// At a measured actuation the stored pairs are returned unchanged. Otherwise
/// the two measured configurations adjacent in actuation are blended pair by
/// pair.
pub fn config_interp(set: &GraspMeasurementSet, a: f64) -> Result<InterpolatedProfile, Error> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::ActuationOutOfRange(a));
    }
    let configs = set.configurations();
    let kind = set.extent_kind();
    // First configuration with actuation >= a; exists because the last one is 1.
    let hi = configs.partition_point(|c| c.actuation() < a);
    let upper = &configs[hi];
    if upper.actuation() == a {
        return Ok(InterpolatedProfile::from_measured(upper, kind));
    }
    let lower = &configs[hi - 1];
    let t = (a - lower.actuation()) / (upper.actuation() - lower.actuation());
    let points = lower
        .pairs()
        .iter()
        .zip(upper.pairs())
        .map(|(lo, up)| ProfilePoint {
            depth: lerp(lo.depth(), up.depth(), t),
            extent: lerp(lo.extent(), up.extent(), t),
        })
        .collect();
    Ok(InterpolatedProfile {
        actuation: a,
        kind,
        points,
    })
}

/// `lo + t (hi - lo)`: monotone in `t` under rounding, exact at `t = 0`.
#[inline]
pub(crate) fn lerp(lo: f64, hi: f64, t: f64) -> f64 {
    lo + t * (hi - lo)
}

/// Extent of `profile` at depth `d`.
pub fn span_interp(profile: &InterpolatedProfile, d: f64) -> Result<f64, Error> {
    let pts = &profile.points;
    let (min, max) = (profile.min_depth(), profile.max_depth());
    if !(min..=max).contains(&d) {
        return Err(Error::DepthOutOfRange { depth: d, min, max });
    }
    let i = pts.partition_point(|p| p.depth < d);
    let right = pts[i];
    if right.depth == d {
        return Ok(right.extent);
    }
    let left = pts[i - 1];
    let t = (d - left.depth) / (right.depth - left.depth);
    Ok(lerp(left.extent, right.extent, t))
}

/// Vertex of a region outline: `lateral` is the signed offset from the
/// center line, so a span `s` contributes `-s/2` and `+s/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVertex {
    pub depth: f64,
    pub lateral: f64,
}

/// Closed outline of a length profile mirrored about the depth axis.
///
/// Vertices run up the negative side from Base to Distal and back down the
/// positive side. A zero extent yields two coincident vertices.
pub fn profile_region(profile: &InterpolatedProfile) -> Result<Vec<RegionVertex>, Error> {
    if profile.kind != ExtentKind::Length {
        return Err(Error::WrongExtentKind);
    }
    let left = profile.points.iter().map(|p| RegionVertex {
        depth: p.depth,
        lateral: -p.extent / 2.0,
    });
    let right = profile.points.iter().rev().map(|p| RegionVertex {
        depth: p.depth,
        lateral: p.extent / 2.0,
    });
    Ok(left.chain(right).collect())
}
