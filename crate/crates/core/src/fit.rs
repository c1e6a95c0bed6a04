//! Relative object size and object-fit search.
//!
//! Relative size along an axis is `s = (O - m) / (M - m)` where `m` and `M`
//! are the hand's minimum and maximum along that axis. The fit search scans
//! actuation from fully closed to fully open and, at each actuation, computes
//! the exact set of object center depths for which the object's depth
//! interval sits inside the profile and the profile extent never drops below
//! the object's span (or disk area).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::Error;
use crate::interp::{config_interp, InterpolatedProfile};
use crate::model::{
    Axis, ExtentKind, GraspMeasurementSet, GraspType, HandRecord, ObjectSpec, SizeBand, SizeClass,
};
use crate::ObjectDraft;

/// Default number of actuation steps scanned by [`fit`].
pub const DEFAULT_RESOLUTION: u32 = 1000;

/// Minimum and maximum of a hand along one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisExtrema {
    axis: Axis,
    min: f64,
    max: f64,
    unbounded_max: bool,
}

impl AxisExtrema {
    /// `max` must exceed `min`; only the Width axis may be unbounded.
    pub fn new(axis: Axis, min: f64, max: f64, unbounded_max: bool) -> Result<Self, Error> {
        if !(min.is_finite() && max.is_finite() && max > min)
            || (unbounded_max && axis != Axis::Width)
        {
            return Err(Error::DegenerateExtrema { axis, min, max });
        }
        Ok(Self {
            axis,
            min,
            max,
            unbounded_max,
        })
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    /// For an unbounded axis this is the recorded palm width.
    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn unbounded_max(&self) -> bool {
        self.unbounded_max
    }

    /// Object size at relative size `s`.
    pub fn invert(&self, s: f64) -> f64 {
        self.min + s * (self.max - self.min)
    }
}

/// Extrema of one grasp type of a hand along all three axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HandExtrema {
    pub span: AxisExtrema,
    pub depth: AxisExtrema,
    pub width: AxisExtrema,
}

impl HandExtrema {
    pub fn get(&self, axis: Axis) -> &AxisExtrema {
        match axis {
            Axis::Span => &self.span,
            Axis::Depth => &self.depth,
            Axis::Width => &self.width,
        }
    }
}

/// Span: max extent of the Min profile to max extent of the Max profile
/// (areas for spherical sets). Depth: 0 to the Max profile's Distal depth.
/// Width: the one-time min and max width.
pub fn axis_extrema(hand: &HandRecord, grasp_type: GraspType) -> Result<HandExtrema, Error> {
    let set = hand
        .set(grasp_type)
        .ok_or(Error::MissingGraspType(grasp_type))?;
    let one = hand.one_time();
    Ok(HandExtrema {
        span: AxisExtrema::new(
            Axis::Span,
            set.min_profile().max_extent(),
            set.max_profile().max_extent(),
            false,
        )?,
        depth: AxisExtrema::new(Axis::Depth, 0.0, set.max_profile().distal_depth(), false)?,
        width: AxisExtrema::new(
            Axis::Width,
            one.min_width(),
            one.max_width(),
            one.max_width_unbounded(),
        )?,
    })
}

/// Classifies an object dimension against one axis.
///
/// On an unbounded axis the band is capped at Large; the reported relative
/// size is left uncapped.
pub fn relative_size(object: f64, extrema: &AxisExtrema) -> SizeClass {
    let s = (object - extrema.min) / (extrema.max - extrema.min);
    let mut class = SizeClass::from_relative(s);
    if extrema.unbounded_max && class.band == SizeBand::TooLarge {
        class.band = SizeBand::Large;
    }
    class
}

/// Per-axis size classes. Width is present only when the object has a width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisClasses {
    pub span: SizeClass,
    pub depth: SizeClass,
    pub width: Option<SizeClass>,
}

impl AxisClasses {
    pub fn iter(&self) -> impl Iterator<Item = (Axis, SizeClass)> + '_ {
        [
            Some((Axis::Span, self.span)),
            Some((Axis::Depth, self.depth)),
            self.width.map(|w| (Axis::Width, w)),
        ]
        .into_iter()
        .flatten()
    }

    pub fn get(&self, axis: Axis) -> Option<SizeClass> {
        match axis {
            Axis::Span => Some(self.span),
            Axis::Depth => Some(self.depth),
            Axis::Width => self.width,
        }
    }

    pub fn all_graspable(&self) -> bool {
        self.iter().all(|(_, c)| c.band.is_graspable())
    }
}

/// Where to hold the object: actuation and depth of the object's center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub actuation: f64,
    pub center_depth: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub classes: AxisClasses,
    /// Present iff the object fits.
    pub placement: Option<Placement>,
}

impl FitResult {
    pub fn feasible(&self) -> bool {
        self.placement.is_some()
    }
}

/// Extent the profile has to provide along the object's depth: the span for
/// length profiles, the disk area for area profiles. Without an explicit area
/// the ellipse with axes `span` and `width` is used.
pub fn required_extent(obj: &ObjectSpec, kind: ExtentKind) -> Result<f64, Error> {
    match kind {
        ExtentKind::Length => Ok(obj.span()),
        ExtentKind::Area => match (obj.area(), obj.width()) {
            (Some(area), _) => Ok(area),
            (None, Some(w)) => Ok(PI * (obj.span() / 2.0) * (w / 2.0)),
            (None, None) => Err(Error::MissingObjectDimension),
        },
    }
}

/// Size classes without any placement search.
pub fn classify(
    hand: &HandRecord,
    grasp_type: GraspType,
    obj: &ObjectSpec,
) -> Result<AxisClasses, Error> {
    let set = hand
        .set(grasp_type)
        .ok_or(Error::MissingGraspType(grasp_type))?;
    let ext = axis_extrema(hand, grasp_type)?;
    let required = required_extent(obj, set.extent_kind())?;
    Ok(AxisClasses {
        span: relative_size(required, &ext.span),
        depth: relative_size(obj.depth(), &ext.depth),
        width: obj.width().map(|w| relative_size(w, &ext.width)),
    })
}

/// Determines whether `obj` fits `hand` for `grasp_type` and, if so, the
/// ideal actuation and center depth.
///
/// An object fits when every axis class is Small, Medium or Large and some
/// actuation admits a center depth at which the object is enclosed. The
/// largest such actuation on a grid of `resolution + 1` evenly spaced values
/// (fingers nearest contact) is chosen; at each grid actuation the feasible
/// center depths are computed exactly. Power grasps take the shallowest
/// center depth at that actuation (object against the palm), precision grasps
/// the deepest (object in the distal links).
pub fn fit(
    hand: &HandRecord,
    grasp_type: GraspType,
    obj: &ObjectSpec,
    resolution: u32,
) -> Result<FitResult, Error> {
    if resolution == 0 {
        return Err(Error::InvalidResolution);
    }
    let classes = classify(hand, grasp_type, obj)?;
    let placement = if classes.all_graspable() {
        // classify() already checked that the set exists and the extent is derivable.
        let set = hand
            .set(grasp_type)
            .ok_or(Error::MissingGraspType(grasp_type))?;
        let required = required_extent(obj, set.extent_kind())?;
        search_placement(
            set,
            required,
            obj.depth(),
            grasp_type.is_power(),
            resolution,
        )
    } else {
        None
    };
    Ok(FitResult { classes, placement })
}

fn search_placement(
    set: &GraspMeasurementSet,
    required: f64,
    object_depth: f64,
    prefer_shallow: bool,
    resolution: u32,
) -> Option<Placement> {
    let k_max = resolution;
    let at = |a: f64| -> Option<f64> {
        let profile = config_interp(set, a).ok()?;
        best_center(&profile, required, object_depth, prefer_shallow)
    };
    (0..=k_max).rev().find_map(|k| {
        let a = k as f64 / k_max as f64;
        at(a).map(|center_depth| Placement {
            actuation: a,
            center_depth,
        })
    })
}

/// Closed depth intervals on which the profile extent is at least `required`,
/// merged where they touch at a breakpoint.
pub fn coverage_intervals(profile: &InterpolatedProfile, required: f64) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for seg in profile.points().windows(2) {
        let (d0, e0, d1, e1) = (seg[0].depth, seg[0].extent, seg[1].depth, seg[1].extent);
        let piece = match (e0 >= required, e1 >= required) {
            (true, true) => (d0, d1),
            (true, false) => (d0, d0 + (e0 - required) / (e0 - e1) * (d1 - d0)),
            (false, true) => (d1 - (e1 - required) / (e1 - e0) * (d1 - d0), d1),
            (false, false) => continue,
        };
        match out.last_mut() {
            Some(last) if last.1 == piece.0 => last.1 = piece.1,
            _ => out.push(piece),
        }
    }
    out
}

/// Feasible center depth with the requested tie-break, if any.
pub fn best_center(
    profile: &InterpolatedProfile,
    required: f64,
    object_depth: f64,
    prefer_shallow: bool,
) -> Option<f64> {
    let half = object_depth / 2.0;
    let centers = coverage_intervals(profile, required)
        .into_iter()
        .filter(|&(g0, g1)| g1 - g0 >= object_depth)
        .map(|(g0, g1)| {
            let lo = g0 + half;
            (lo, (g1 - half).max(lo))
        });
    if prefer_shallow {
        centers.map(|(lo, _)| lo).reduce(f64::min)
    } else {
        centers.map(|(_, hi)| hi).reduce(f64::max)
    }
}

/// Target relative sizes for [`canonical_object`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalTargets {
    pub span: f64,
    pub depth: f64,
    pub width: Option<f64>,
}

impl CanonicalTargets {
    /// Same target on span and depth, and on width when `with_width` is set.
    pub fn uniform(s: f64, with_width: bool) -> Self {
        Self {
            span: s,
            depth: s,
            width: with_width.then_some(s),
        }
    }
}

/// Object whose relative size along each requested axis equals the target.
///
/// For spherical power sets the span target applies to disk area: the object
/// carries that area and a span equal to the diameter of the disk.
pub fn canonical_object(
    hand: &HandRecord,
    grasp_type: GraspType,
    targets: CanonicalTargets,
) -> Result<ObjectSpec, Error> {
    let ext = axis_extrema(hand, grasp_type)?;
    let check = |axis: Axis, s: f64| {
        if s > 0.0 && s < 1.0 {
            Ok(s)
        } else {
            Err(Error::TargetOutOfRange { axis, value: s })
        }
    };
    let s_span = check(Axis::Span, targets.span)?;
    let s_depth = check(Axis::Depth, targets.depth)?;
    let width = match targets.width {
        Some(s) => {
            let s = check(Axis::Width, s)?;
            if ext.width.unbounded_max {
                return Err(Error::UnboundedAxis(Axis::Width));
            }
            Some(ext.width.invert(s))
        }
        None => None,
    };

    let name = format!("canonical-{}-{}", hand.name(), grasp_type.key());
    let span_value = ext.span.invert(s_span);
    let mut draft = ObjectDraft {
        name,
        span: span_value,
        depth: ext.depth.invert(s_depth),
        width,
        area: None,
    };
    if grasp_type.extent_kind() == ExtentKind::Area {
        draft.area = Some(span_value);
        draft.span = 2.0 * libm::sqrt(span_value / PI);
    }
    ObjectSpec::new(draft)
}

/// One row of [`compare_hands`].
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub hand: String,
    pub outcome: Result<FitResult, Error>,
}

/// Fits `obj` in every hand, in input order. Hands without a set for
/// `grasp_type` get a `MissingGraspType` row.
pub fn compare_hands(
    hands: &[HandRecord],
    grasp_type: GraspType,
    obj: &ObjectSpec,
    resolution: u32,
) -> Vec<CompareRow> {
    hands
        .iter()
        .map(|h| CompareRow {
            hand: String::from(h.name()),
            outcome: fit(h, grasp_type, obj, resolution),
        })
        .collect()
}
