//! To-scale SVG plots of grasp regions.
//!
//! Each hand gets a tile. Inside a tile the palm sits on a horizontal
//! baseline, depth grows upwards and span is mirrored about the vertical
//! center line, so a profile breakpoint `(d, e)` lands at
//! `(±e / 2 / scale, -d / scale)` relative to the tile origin. All tiles share
//! one scale.
//!
//! Spherical power sets measure disk area rather than span. Those tiles show
//! area on the horizontal axis instead, normalized so the largest area in the
//! tile fills the shared tile width.

use std::fmt::Write as _;

use graspspan_core::{
    config_interp, fit, profile_region, required_extent, ConfigRole, Error, ExtentKind,
    GraspMeasurementSet, GraspType, HandRecord, InterpolatedProfile, ObjectSpec, PairLabel,
    Placement, DEFAULT_RESOLUTION,
};

#[derive(Debug, Clone, PartialEq)]
pub enum OverlayPlacement {
    /// Use the placement found by the fit search.
    Auto,
    Fixed(Placement),
}

/// An object cross-section drawn in every tile.
#[derive(Debug, Clone, PartialEq)]
pub struct Overlay {
    pub object: ObjectSpec,
    pub placement: OverlayPlacement,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigSelector {
    Role(ConfigRole),
    /// Any actuation in [0, 1]; unmeasured ones are interpolated.
    Actuation(f64),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum ShowConfigs {
    #[default]
    All,
    Only(Vec<ConfigSelector>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub hands: Vec<(HandRecord, GraspType)>,
    pub overlays: Vec<Overlay>,
    /// Millimeters per pixel.
    pub scale: f64,
    pub show: ShowConfigs,
    pub title: String,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RenderError {
    #[error("scale must be a positive number of mm per pixel, got {0}")]
    InvalidScale(f64),
    #[error("a plot needs at least one hand")]
    NoHands,
    #[error("hand {hand:?} has no {grasp} measurement set")]
    MissingGraspType { hand: String, grasp: GraspType },
    #[error("object {object:?} does not fit hand {hand:?}, so it cannot be placed automatically")]
    InfeasibleOverlay { object: String, hand: String },
    #[error(transparent)]
    Core(#[from] Error),
}

struct Theme {
    background: &'static str,
    text: &'static str,
    font: &'static str,
    palm: &'static str,
    max: &'static str,
    min: &'static str,
    intermediate: &'static str,
    interpolated: &'static str,
    shade: &'static str,
    shade_opacity: &'static str,
    marker: &'static str,
    object: &'static str,
    object_opacity: &'static str,
}

const THEME: Theme = Theme {
    background: "#ffffff",
    text: "#222222",
    font: "sans-serif",
    palm: "#555555",
    max: "#1f77b4",
    min: "#d62728",
    intermediate: "#7f7f7f",
    interpolated: "#2ca02c",
    shade: "#9ecae1",
    shade_opacity: "0.35",
    marker: "#000000",
    object: "#ff7f0e",
    object_opacity: "0.45",
};

// Fixed layout in pixels.
const TITLE_H: f64 = 30.0;
const LABEL_H: f64 = 20.0;
const PAD: f64 = 20.0;
const RULER_H: f64 = 40.0;
const MARK: f64 = 3.0;

/// Formats a coordinate with six decimals, never as `-0.000000`.
fn f6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// A profile chosen for drawing.
struct Drawn {
    profile: InterpolatedProfile,
    role: Option<ConfigRole>,
    /// Mid-pair points, empty for interpolated profiles between sets with no mids.
    mids: Vec<(f64, f64)>,
}

struct PlacedObject<'a> {
    object: &'a ObjectSpec,
    placement: Placement,
    /// Span for length tiles, area for area tiles.
    extent: f64,
}

struct Tile<'a> {
    hand: &'a HandRecord,
    set: &'a GraspMeasurementSet,
    drawn: Vec<Drawn>,
    max: InterpolatedProfile,
    min: InterpolatedProfile,
    objects: Vec<PlacedObject<'a>>,
}

impl Tile<'_> {
    fn kind(&self) -> ExtentKind {
        self.set.extent_kind()
    }

    fn max_extent(&self) -> f64 {
        let profiles = self.drawn.iter().map(|d| d.profile.max_extent());
        let objects = self.objects.iter().map(|o| o.extent);
        profiles
            .chain(objects)
            .chain([self.max.max_extent(), self.min.max_extent()])
            .fold(0.0, f64::max)
    }

    fn max_depth(&self) -> f64 {
        let profiles = self.drawn.iter().map(|d| d.profile.max_depth());
        let objects = self
            .objects
            .iter()
            .map(|o| o.placement.center_depth + o.object.depth() / 2.0);
        profiles
            .chain(objects)
            .chain([self.max.max_depth(), self.min.max_depth()])
            .fold(0.0, f64::max)
    }
}

fn profile_of(set: &GraspMeasurementSet, index: usize) -> Result<Drawn, Error> {
    let config = &set.configurations()[index];
    let profile = config_interp(set, config.actuation())?;
    let mids = config
        .pairs()
        .iter()
        .filter(|p| p.label() == PairLabel::Mid)
        .map(|p| (p.depth(), p.extent()))
        .collect();
    Ok(Drawn {
        profile,
        role: Some(config.role()),
        mids,
    })
}

fn select(set: &GraspMeasurementSet, show: &ShowConfigs) -> Result<Vec<Drawn>, Error> {
    let configs = set.configurations();
    let mut measured: Vec<usize> = Vec::new();
    let mut extra: Vec<f64> = Vec::new();
    match show {
        ShowConfigs::All => measured.extend(0..configs.len()),
        ShowConfigs::Only(selectors) => {
            for sel in selectors {
                match *sel {
                    ConfigSelector::Role(role) => {
                        measured.extend((0..configs.len()).filter(|&i| configs[i].role() == role))
                    }
                    ConfigSelector::Actuation(a) => {
                        match configs.iter().position(|c| c.actuation() == a) {
                            Some(i) => measured.push(i),
                            None => extra.push(a),
                        }
                    }
                }
            }
            measured.sort_unstable();
            measured.dedup();
            let mut seen: Vec<f64> = Vec::new();
            extra.retain(|a| {
                let fresh = !seen.contains(a);
                seen.push(*a);
                fresh
            });
        }
    }
    let mut out = measured
        .into_iter()
        .map(|i| profile_of(set, i))
        .collect::<Result<Vec<_>, _>>()?;
    for a in extra {
        out.push(Drawn {
            profile: config_interp(set, a)?,
            role: None,
            mids: Vec::new(),
        });
    }
    Ok(out)
}

fn build_tiles(spec: &PlotSpec) -> Result<Vec<Tile<'_>>, RenderError> {
    let mut tiles = Vec::with_capacity(spec.hands.len());
    for (hand, grasp) in &spec.hands {
        let set = hand
            .set(*grasp)
            .ok_or_else(|| RenderError::MissingGraspType {
                hand: hand.name().into(),
                grasp: *grasp,
            })?;
        let mut objects = Vec::with_capacity(spec.overlays.len());
        for overlay in &spec.overlays {
            let placement = match &overlay.placement {
                OverlayPlacement::Fixed(p) => *p,
                OverlayPlacement::Auto => fit(hand, *grasp, &overlay.object, DEFAULT_RESOLUTION)?
                    .placement
                    .ok_or_else(|| RenderError::InfeasibleOverlay {
                        object: overlay.object.name().into(),
                        hand: hand.name().into(),
                    })?,
            };
            objects.push(PlacedObject {
                object: &overlay.object,
                placement,
                extent: required_extent(&overlay.object, set.extent_kind())?,
            });
        }
        tiles.push(Tile {
            hand,
            set,
            drawn: select(set, &spec.show)?,
            max: config_interp(set, 0.0)?,
            min: config_interp(set, 1.0)?,
            objects,
        });
    }
    Ok(tiles)
}

/// Maps profile points to tile-local pixel coordinates.
struct Frame {
    scale: f64,
    kind: ExtentKind,
    /// Pixels per unit area, only used by area tiles.
    area_px: f64,
}

impl Frame {
    fn y(&self, depth: f64) -> f64 {
        -depth / self.scale
    }

    fn x_area(&self, area: f64) -> f64 {
        area * self.area_px
    }

    /// Outline of a profile: closed mirrored polygon or open area curve.
    fn outline(&self, profile: &InterpolatedProfile) -> Result<String, Error> {
        let mut d = String::new();
        match self.kind {
            ExtentKind::Length => {
                for (i, v) in profile_region(profile)?.iter().enumerate() {
                    let cmd = if i == 0 { "M" } else { "L" };
                    let _ = write!(
                        d,
                        "{cmd} {} {} ",
                        f6(v.lateral / self.scale),
                        f6(self.y(v.depth))
                    );
                }
                d.push('Z');
            }
            ExtentKind::Area => {
                for (i, p) in profile.points().iter().enumerate() {
                    let cmd = if i == 0 { "M" } else { "L" };
                    let _ = write!(
                        d,
                        "{cmd} {} {} ",
                        f6(self.x_area(p.extent)),
                        f6(self.y(p.depth))
                    );
                }
                d.pop();
            }
        }
        Ok(d)
    }

    /// Closed polygon bounded by the area curve and the depth axis.
    fn area_polygon(&self, profile: &InterpolatedProfile) -> String {
        let pts = profile.points();
        let mut d = format!("M 0.000000 {} ", f6(self.y(pts[0].depth)));
        for p in pts {
            let _ = write!(
                d,
                "L {} {} ",
                f6(self.x_area(p.extent)),
                f6(self.y(p.depth))
            );
        }
        let _ = write!(d, "L 0.000000 {} Z", f6(self.y(pts[pts.len() - 1].depth)));
        d
    }

    fn plus(&self, x: f64, y: f64) -> String {
        format!(
            "M {} {} H {} M {} {} V {}",
            f6(x - MARK),
            f6(y),
            f6(x + MARK),
            f6(x),
            f6(y - MARK),
            f6(y + MARK)
        )
    }
}

fn stroke_for(role: Option<ConfigRole>) -> &'static str {
    match role {
        Some(ConfigRole::MaxFunctional) => THEME.max,
        Some(ConfigRole::MinFunctional) => THEME.min,
        Some(ConfigRole::Intermediate) => THEME.intermediate,
        None => THEME.interpolated,
    }
}

/// Largest 1, 2 or 5 times a power of ten not above `limit` millimeters.
fn ruler_length(limit: f64) -> f64 {
    if limit <= 0.0 || !limit.is_finite() {
        return 1.0;
    }
    let mut power = 10f64.powi(limit.log10().floor() as i32);
    // log10 can land a hair low for exact powers of ten.
    if power * 10.0 <= limit {
        power *= 10.0;
    }
    [5.0, 2.0, 1.0]
        .into_iter()
        .map(|m| m * power)
        .find(|&l| l <= limit)
        .unwrap_or(power)
}

/// Renders a plot. Output depends only on `spec`.
pub fn render_svg(spec: &PlotSpec) -> Result<String, RenderError> {
    if !(spec.scale > 0.0 && spec.scale.is_finite()) {
        return Err(RenderError::InvalidScale(spec.scale));
    }
    if spec.hands.is_empty() {
        return Err(RenderError::NoHands);
    }
    let tiles = build_tiles(spec)?;
    let s = spec.scale;

    let length_w = tiles
        .iter()
        .filter(|t| t.kind() == ExtentKind::Length)
        .map(Tile::max_extent)
        .fold(0.0, f64::max);
    let max_depth = tiles.iter().map(Tile::max_depth).fold(0.0, f64::max);
    // Area-only plots have no span to size by; use a square content box.
    let content_mm = if length_w > 0.0 {
        length_w
    } else {
        max_depth.max(1.0)
    };
    let content_w = content_mm / s;
    let content_h = max_depth / s;
    let tile_w = content_w + 2.0 * PAD;
    let width = tile_w * tiles.len() as f64;
    let baseline = TITLE_H + LABEL_H + PAD + content_h;
    let height = baseline + PAD + RULER_H;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="{font}">"#,
        w = f6(width),
        h = f6(height),
        font = THEME.font,
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(&spec.title));
    let _ = writeln!(
        svg,
        r#"<rect class="background" x="0" y="0" width="{}" height="{}" fill="{}"/>"#,
        f6(width),
        f6(height),
        THEME.background
    );
    let _ = writeln!(
        svg,
        r#"<text class="title" x="{}" y="{}" text-anchor="middle" font-size="16" fill="{}">{}</text>"#,
        f6(width / 2.0),
        f6(TITLE_H - 8.0),
        THEME.text,
        escape(&spec.title)
    );

    for (i, tile) in tiles.iter().enumerate() {
        let left = tile_w * i as f64;
        let kind = tile.kind();
        let area_max = tile.max_extent();
        let frame = Frame {
            scale: s,
            kind,
            area_px: if area_max > 0.0 {
                content_w / area_max
            } else {
                0.0
            },
        };
        let origin_x = match kind {
            ExtentKind::Length => left + PAD + content_w / 2.0,
            ExtentKind::Area => left + PAD,
        };
        let label_x = match kind {
            ExtentKind::Length => 0.0,
            ExtentKind::Area => content_w / 2.0,
        };
        let _ = writeln!(
            svg,
            r#"<g id="hand-{i}" class="tile {k}" transform="translate({} {})">"#,
            f6(origin_x),
            f6(baseline),
            k = tile.set.grasp_type().key(),
        );
        let _ = writeln!(
            svg,
            r#"<text class="label" x="{}" y="{}" text-anchor="middle" font-size="12" fill="{}">{} ({})</text>"#,
            f6(label_x),
            f6(-content_h - PAD),
            THEME.text,
            escape(tile.hand.name()),
            tile.set.grasp_type()
        );
        let (palm_x0, palm_x1) = match kind {
            ExtentKind::Length => (-content_w / 2.0, content_w / 2.0),
            ExtentKind::Area => (0.0, content_w),
        };
        let _ = writeln!(
            svg,
            r#"<line class="palm" x1="{}" y1="0.000000" x2="{}" y2="0.000000" stroke="{}" stroke-width="2"/>"#,
            f6(palm_x0),
            f6(palm_x1),
            THEME.palm
        );
        if kind == ExtentKind::Area {
            let _ = writeln!(
                svg,
                r#"<text class="axis" x="{}" y="14" text-anchor="end" font-size="10" fill="{}">area {} mm²</text>"#,
                f6(content_w),
                THEME.text,
                format_args!("{area_max:.1}")
            );
        }

        let shade = match kind {
            ExtentKind::Length => format!(
                "{} {}",
                frame.outline(&tile.max)?,
                frame.outline(&tile.min)?
            ),
            ExtentKind::Area => format!(
                "{} {}",
                frame.area_polygon(&tile.max),
                frame.area_polygon(&tile.min)
            ),
        };
        let _ = writeln!(
            svg,
            r#"<path class="shade" fill-rule="evenodd" fill="{}" fill-opacity="{}" stroke="none" d="{shade}"/>"#,
            THEME.shade, THEME.shade_opacity
        );

        for (j, drawn) in tile.drawn.iter().enumerate() {
            let _ = writeln!(
                svg,
                r#"<path id="hand-{i}-config-{j}" class="outline" data-actuation="{}" fill="none" stroke="{}" stroke-width="1.5" d="{}"/>"#,
                f6(drawn.profile.actuation()),
                stroke_for(drawn.role),
                frame.outline(&drawn.profile)?
            );
        }
        for drawn in &tile.drawn {
            for &(d, e) in &drawn.mids {
                let y = frame.y(d);
                let marks = match kind {
                    ExtentKind::Length => {
                        let x = e / 2.0 / s;
                        format!("{} {}", frame.plus(-x, y), frame.plus(x, y))
                    }
                    ExtentKind::Area => frame.plus(frame.x_area(e), y),
                };
                let _ = writeln!(
                    svg,
                    r#"<path class="mid" fill="none" stroke="{}" stroke-width="1" d="{marks}"/>"#,
                    THEME.marker
                );
            }
        }

        for (j, placed) in tile.objects.iter().enumerate() {
            let at = config_interp(tile.set, placed.placement.actuation)?;
            let _ = writeln!(
                svg,
                r#"<path class="placement" data-actuation="{}" fill="none" stroke="{}" stroke-width="1" stroke-dasharray="4 2" d="{}"/>"#,
                f6(placed.placement.actuation),
                THEME.object,
                frame.outline(&at)?
            );
            let h = placed.object.depth() / s;
            let top = frame.y(placed.placement.center_depth) - h / 2.0;
            let (x, w) = match kind {
                ExtentKind::Length => (-placed.extent / 2.0 / s, placed.extent / s),
                ExtentKind::Area => (0.0, frame.x_area(placed.extent)),
            };
            let _ = writeln!(
                svg,
                r#"<rect id="hand-{i}-object-{j}" class="object" x="{}" y="{}" width="{}" height="{}" fill="{}" fill-opacity="{}" stroke="{}"><title>{}</title></rect>"#,
                f6(x),
                f6(top),
                f6(w),
                f6(h),
                THEME.object,
                THEME.object_opacity,
                THEME.object,
                escape(placed.object.name())
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    let ruler_mm = ruler_length(content_mm);
    let ruler_px = ruler_mm / s;
    let y = baseline + PAD + RULER_H / 2.0;
    let _ = writeln!(
        svg,
        r#"<g id="ruler" transform="translate({} {})" stroke="{c}" fill="{c}">"#,
        f6(PAD),
        f6(y),
        c = THEME.text
    );
    let _ = writeln!(
        svg,
        r#"<path fill="none" stroke-width="1" d="M 0.000000 -4.000000 V 0.000000 H {x} V -4.000000"/>"#,
        x = f6(ruler_px)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="14" text-anchor="middle" font-size="10" stroke="none">{} mm</text>"#,
        f6(ruler_px / 2.0),
        ruler_mm
    );
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
