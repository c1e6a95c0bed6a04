//! Fixture helpers shared by the integration tests of this crate.
#![allow(dead_code)]

use std::path::PathBuf;

use graspspan::document::{parse_hand, parse_objects};
use graspspan_core::{HandRecord, ObjectSpec};

pub fn fixture_path(parts: &[&str]) -> PathBuf {
    let mut p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures"]
        .iter()
        .collect();
    p.extend(parts);
    p
}

pub fn read_fixture(parts: &[&str]) -> Vec<u8> {
    let path = fixture_path(parts);
    std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn data_hand(name: &str) -> HandRecord {
    parse_hand(&read_fixture(&["data", name])).unwrap().value
}

pub fn data_object(name: &str) -> ObjectSpec {
    parse_objects(&read_fixture(&["data", name]))
        .unwrap()
        .value
        .remove(0)
}

/// (fixture, expected pointer, expected violation code if it comes from record validation)
pub const MALFORMED: &[(&str, &str, Option<&str>)] = &[
    ("empty_name.grasp.json", "/name", Some("EMPTY_NAME")),
    (
        "max_open_not_positive.grasp.json",
        "/oneTime/maxOpenMm",
        Some("MAX_OPEN_NOT_POSITIVE"),
    ),
    (
        "min_width_negative.grasp.json",
        "/oneTime/minWidthMm",
        Some("MIN_WIDTH_NEGATIVE"),
    ),
    (
        "max_width_not_above_min.grasp.json",
        "/oneTime/maxWidthMm",
        Some("MAX_WIDTH_NOT_ABOVE_MIN"),
    ),
    ("no_grasp_sets.grasp.json", "/sets", Some("NO_GRASP_SETS")),
    (
        "too_few_pairs.grasp.json",
        "/sets/precision/configurations/0/pairs",
        Some("TOO_FEW_PAIRS"),
    ),
    (
        "negative_depth.grasp.json",
        "/sets/precision/configurations/1/pairs/0/depthMm",
        Some("NEGATIVE_DEPTH"),
    ),
    (
        "negative_extent.grasp.json",
        "/sets/precision/configurations/2/pairs/2/extent",
        Some("NEGATIVE_EXTENT"),
    ),
    (
        "depth_not_increasing.grasp.json",
        "/sets/precision/configurations/0/pairs/2/depthMm",
        Some("DEPTH_NOT_INCREASING"),
    ),
    (
        "bad_pair_label.grasp.json",
        "/sets/precision/configurations/0/pairs/0/label",
        Some("BAD_PAIR_LABEL"),
    ),
    (
        "actuation_out_of_range.grasp.json",
        "/sets/precision/configurations/1/actuation",
        Some("ACTUATION_OUT_OF_RANGE"),
    ),
    (
        "max_actuation_not_zero.grasp.json",
        "/sets/precision/configurations/0/actuation",
        Some("MAX_ACTUATION_NOT_ZERO"),
    ),
    (
        "min_actuation_not_one.grasp.json",
        "/sets/precision/configurations/2/actuation",
        Some("MIN_ACTUATION_NOT_ONE"),
    ),
    (
        "intermediate_at_endpoint.grasp.json",
        "/sets/precision/configurations/1/actuation",
        Some("INTERMEDIATE_AT_ENDPOINT"),
    ),
    (
        "missing_max_config.grasp.json",
        "/sets/precision/configurations",
        Some("MAX_CONFIG_COUNT"),
    ),
    (
        "actuation_not_increasing.grasp.json",
        "/sets/precision/configurations/2/actuation",
        Some("ACTUATION_NOT_INCREASING"),
    ),
    (
        "pair_count_mismatch.grasp.json",
        "/sets/precision/configurations/2/pairs",
        Some("PAIR_COUNT_MISMATCH"),
    ),
    (
        "span_exceeds_max_open.grasp.json",
        "/sets/precision/configurations/0/pairs/2/extent",
        Some("SPAN_EXCEEDS_MAX_OPEN"),
    ),
    (
        "span_range_degenerate.grasp.json",
        "/sets/precision/configurations/0/pairs",
        Some("SPAN_RANGE_DEGENERATE"),
    ),
    ("missing_field.grasp.json", "/measurer", None),
    (
        "wrong_type.grasp.json",
        "/sets/precision/configurations/0/actuation",
        None,
    ),
    ("bad_date.grasp.json", "/date", None),
    (
        "unknown_role.grasp.json",
        "/sets/precision/configurations/2/role",
        None,
    ),
    (
        "unknown_grasp_set_shape.grasp.json",
        "/sets/precision",
        None,
    ),
    (
        "object_zero_depth.object.json",
        "/oDepthMm",
        Some("NON_POSITIVE_DIMENSION"),
    ),
    (
        "object_set_negative_area.object.json",
        "/objects/1/oAreaMm2",
        Some("NON_POSITIVE_DIMENSION"),
    ),
];

use graspspan::render::{render_svg, Overlay, OverlayPlacement, PlotSpec, ShowConfigs};
use graspspan_core::{config_interp, profile_region, ExtentKind, GraspType};

/// Plot specs whose output is checked in under `fixtures/golden/`.
pub fn golden_specs() -> Vec<(&'static str, PlotSpec)> {
    let hand = data_hand("two_finger.grasp.json");
    vec![
        (
            "two_config.svg",
            PlotSpec {
                hands: vec![(hand.clone(), GraspType::Precision)],
                overlays: vec![],
                scale: 0.5,
                show: ShowConfigs::All,
                title: "two-finger precision".into(),
            },
        ),
        (
            "hand_object_overlay.svg",
            PlotSpec {
                hands: vec![(hand, GraspType::CylindricalPower)],
                overlays: vec![Overlay {
                    object: data_object("apple.object.json"),
                    placement: OverlayPlacement::Auto,
                }],
                scale: 0.5,
                show: ShowConfigs::All,
                title: "apple in a cylindrical power grasp".into(),
            },
        ),
    ]
}

/// Compares rendered goldens with the checked-in files. Set `UPDATE_GOLDENS`
/// to rewrite them. Returns the names that differ.
pub fn golden_mismatches() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDENS").is_some();
    let mut bad = Vec::new();
    for (name, spec) in golden_specs() {
        let svg = render_svg(&spec).unwrap();
        let path = fixture_path(&["golden", name]);
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &svg).unwrap();
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == svg => {}
            _ => bad.push(name.to_string()),
        }
    }
    bad
}

fn attr<'a>(element: &'a str, name: &str) -> Option<&'a str> {
    let key = format!(" {name}=\"");
    let start = element.find(&key)? + key.len();
    let len = element[start..].find('"')?;
    Some(&element[start..start + len])
}

/// Tile index, actuation and vertices of one outline path.
pub type Outline = (usize, f64, Vec<(f64, f64)>);

/// Every outline path in the SVG.
pub fn outlines(svg: &str) -> Vec<Outline> {
    svg.lines()
        .filter(|l| l.starts_with("<path") && attr(l, "class") == Some("outline"))
        .map(|l| {
            let id = attr(l, "id").unwrap();
            let tile: usize = id["hand-".len()..id.find("-config").unwrap()]
                .parse()
                .unwrap();
            let a: f64 = attr(l, "data-actuation").unwrap().parse().unwrap();
            let nums: Vec<f64> = attr(l, "d")
                .unwrap()
                .split_whitespace()
                .filter_map(|t| t.parse().ok())
                .collect();
            (tile, a, nums.chunks(2).map(|c| (c[0], c[1])).collect())
        })
        .collect()
}

/// Bound for [`coordinate_error`]: six-decimal rounding plus an allowance for
/// reading the printed decimal back into binary floating point.
pub const COORDINATE_TOLERANCE: f64 = 0.5e-6 + 1e-12;

/// Largest distance between an outline vertex in the SVG and the exact
/// `(±extent / 2, -depth) / scale` of the profile it draws. Length tiles only.
pub fn coordinate_error(spec: &PlotSpec) -> f64 {
    let svg = render_svg(spec).unwrap();
    let mut worst: f64 = 0.0;
    for (tile, a, vertices) in outlines(&svg) {
        let (hand, grasp) = &spec.hands[tile];
        let set = hand.set(*grasp).unwrap();
        if set.extent_kind() != ExtentKind::Length {
            continue;
        }
        // Find the configuration with this six-decimal actuation.
        let actuation = set
            .configurations()
            .iter()
            .map(|c| c.actuation())
            .find(|x| format!("{x:.6}") == format!("{a:.6}"))
            .unwrap_or(a);
        let region = profile_region(&config_interp(set, actuation).unwrap()).unwrap();
        assert_eq!(region.len(), vertices.len());
        for (v, (x, y)) in region.iter().zip(vertices) {
            worst = worst
                .max((v.lateral / spec.scale - x).abs())
                .max((-v.depth / spec.scale - y).abs());
        }
    }
    worst
}
