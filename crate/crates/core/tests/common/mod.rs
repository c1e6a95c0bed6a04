//! Shared generators and independent reference implementations.
//!
//! Nothing in here calls the interpolation or search code under test; the
//! oracles recompute everything from the raw measurement points.

#![allow(dead_code)]

use graspspan_core::{
    ConfigRole, GraspType, HandDraft, HandRecord, NaiveDate, ObjectDraft, ObjectSpec, OneTimeDraft,
    ProfileDraft, SetDraft,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Points = Vec<(f64, f64)>;

/// Random increasing depths starting in [0, 15) with `n` points.
fn random_profile<R: Rng>(rng: &mut R, n: usize, extent: (f64, f64)) -> Points {
    let mut d = rng.gen_range(0.0..15.0);
    (0..n)
        .map(|i| {
            if i > 0 {
                d += rng.gen_range(8.0..35.0);
            }
            (d, rng.gen_range(extent.0..extent.1))
        })
        .collect()
}

/// A random two-configuration set: a wide Max profile and a narrow Min
/// profile with the same number of pairs.
pub fn random_two_config<R: Rng>(rng: &mut R) -> (Points, Points) {
    let n = rng.gen_range(2..=4);
    let max = random_profile(rng, n, (60.0, 140.0));
    let min = random_profile(rng, n, (10.0, 50.0));
    (max, min)
}

pub fn hand_from(name: &str, grasp: GraspType, max: &Points, min: &Points) -> HandRecord {
    let widest = max.iter().map(|p| p.1).fold(0.0, f64::max);
    HandRecord::new(HandDraft {
        name: name.into(),
        measurer: "generator".into(),
        date: NaiveDate::from_ymd_opt(2024, 1, 1).unwrap(),
        one_time: OneTimeDraft {
            max_open: widest + 10.0,
            min_width: 10.0,
            max_width: 80.0,
            max_width_unbounded: false,
        },
        sets: vec![SetDraft {
            grasp_type: grasp,
            configurations: vec![
                ProfileDraft::from_points(0.0, ConfigRole::MaxFunctional, max),
                ProfileDraft::from_points(1.0, ConfigRole::MinFunctional, min),
            ],
        }],
    })
    .expect("generated hand is valid")
}

pub fn object(name: &str, span: f64, depth: f64) -> ObjectSpec {
    ObjectSpec::new(ObjectDraft::new(name, span, depth)).expect("valid object")
}

/// `(1 - a) lo + a hi`, pair by pair.
pub fn oracle_blend(max: &Points, min: &Points, a: f64) -> Points {
    max.iter()
        .zip(min)
        .map(|(p, q)| ((1.0 - a) * p.0 + a * q.0, (1.0 - a) * p.1 + a * q.1))
        .collect()
}

/// Linear scan evaluation of a piecewise-linear profile.
pub fn oracle_eval(pts: &Points, d: f64) -> Option<f64> {
    for w in pts.windows(2) {
        let ((d0, e0), (d1, e1)) = (w[0], w[1]);
        if d >= d0 && d <= d1 {
            let lambda = (d - d0) / (d1 - d0);
            return Some((1.0 - lambda) * e0 + lambda * e1);
        }
    }
    None
}

/// Object of depth `2 * half` centered at `c` is enclosed: both faces lie in
/// the domain and the extent at both faces and every breakpoint between them
/// reaches `required`.
pub fn oracle_encloses(pts: &Points, required: f64, c: f64, half: f64) -> bool {
    let (lo, hi) = (c - half, c + half);
    let ok = |d: f64| oracle_eval(pts, d).is_some_and(|e| e >= required);
    ok(lo)
        && ok(hi)
        && pts
            .iter()
            .filter(|p| p.0 > lo && p.0 < hi)
            .all(|p| p.1 >= required)
}

pub struct OracleFit {
    pub actuation: f64,
    pub center: f64,
    /// Spacing of the center grid at the returned actuation.
    pub center_step: f64,
}

/// Brute-force search over `steps + 1` actuations and `steps + 1` centers per
/// actuation. Largest feasible actuation wins; ties go to the shallowest
/// center for power grasps and the deepest otherwise.
pub fn oracle_search(
    max: &Points,
    min: &Points,
    required: f64,
    object_depth: f64,
    shallow: bool,
    steps: u32,
) -> Option<OracleFit> {
    (0..=steps)
        .rev()
        .find_map(|i| oracle_at(max, min, required, object_depth, shallow, i, steps))
}

/// The center search of [`oracle_search`] at the single actuation `i / steps`.
pub fn oracle_at(
    max: &Points,
    min: &Points,
    required: f64,
    object_depth: f64,
    shallow: bool,
    i: u32,
    steps: u32,
) -> Option<OracleFit> {
    let half = object_depth / 2.0;
    let a = i as f64 / steps as f64;
    let pts = oracle_blend(max, min, a);
    if pts.iter().all(|p| p.1 < required) {
        return None;
    }
    let c_lo = pts[0].0 + half;
    let c_hi = pts[pts.len() - 1].0 - half;
    if c_lo > c_hi {
        return None;
    }
    let center = |j: u32| c_lo + (j as f64 / steps as f64) * (c_hi - c_lo);
    let hit = if shallow {
        (0..=steps)
            .map(center)
            .find(|&c| oracle_encloses(&pts, required, c, half))
    } else {
        (0..=steps)
            .rev()
            .map(center)
            .find(|&c| oracle_encloses(&pts, required, c, half))
    };
    hit.map(|c| OracleFit {
        actuation: a,
        center: c,
        center_step: (c_hi - c_lo) / steps as f64,
    })
}

/// Relative size recomputed from scratch.
pub fn oracle_relative(o: f64, m: f64, big_m: f64) -> f64 {
    (o - m) / (big_m - m)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rounds to a multiple of 0.001 so that values survive a 6-decimal text
/// round trip untouched.
pub fn q(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

fn random_points<R: Rng>(rng: &mut R, n: usize, extent: (f64, f64), scale: f64) -> Vec<(f64, f64)> {
    let mut d = q(rng.gen_range(0.0..15.0));
    (0..n)
        .map(|i| {
            if i > 0 {
                d = q(d + rng.gen_range(5.0..35.0));
            }
            (d, q(rng.gen_range(extent.0..extent.1) * scale))
        })
        .collect()
}

fn random_provenance<R: Rng>(rng: &mut R, tag: &str) -> graspspan_core::Provenance {
    graspspan_core::Provenance {
        photo_ref: rng.gen_bool(0.7).then(|| format!("photos/{tag}-top.jpg")),
        palm_photo_ref: rng.gen_bool(0.3).then(|| format!("photos/{tag}-palm.jpg")),
        note: rng
            .gen_bool(0.3)
            .then(|| format!("held with a {tag} \"block\"")),
    }
}

/// A random draft that satisfies every record invariant.
pub fn random_hand_draft<R: Rng>(rng: &mut R, id: usize) -> HandDraft {
    let mut types: Vec<GraspType> = GraspType::ALL
        .into_iter()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    if types.is_empty() {
        types.push(GraspType::ALL[rng.gen_range(0..3)]);
    }
    let mut widest_length: f64 = 0.0;
    let sets = types
        .into_iter()
        .map(|t| {
            let scale = if t == GraspType::SphericalPower {
                40.0
            } else {
                1.0
            };
            let n = rng.gen_range(2..=4);
            let mut actuations: Vec<f64> = (0..rng.gen_range(0..=2))
                .map(|_| rng.gen_range(1..1000) as f64 / 1000.0)
                .collect();
            actuations.sort_by(f64::total_cmp);
            actuations.dedup();
            let mut configurations = vec![ProfileDraft::from_points(
                0.0,
                ConfigRole::MaxFunctional,
                &random_points(rng, n, (60.0, 140.0), scale),
            )];
            for a in actuations {
                configurations.push(ProfileDraft::from_points(
                    a,
                    ConfigRole::Intermediate,
                    &random_points(rng, n, (20.0, 100.0), scale),
                ));
            }
            configurations.push(ProfileDraft::from_points(
                1.0,
                ConfigRole::MinFunctional,
                &random_points(rng, n, (5.0, 50.0), scale),
            ));
            for (i, c) in configurations.iter_mut().enumerate() {
                c.provenance = random_provenance(rng, &format!("{}-{i}", t.key()));
                if rng.gen_bool(0.5) {
                    c.distal_contact = graspspan_core::DistalContact::Tip;
                }
            }
            if t != GraspType::SphericalPower {
                let w = configurations[0]
                    .pairs
                    .iter()
                    .map(|p| p.extent)
                    .fold(0.0, f64::max);
                widest_length = widest_length.max(w);
            }
            SetDraft {
                grasp_type: t,
                configurations,
            }
        })
        .collect();
    let min_width = q(rng.gen_range(0.0..30.0));
    HandDraft {
        name: format!("hand-{id}"),
        measurer: "generated".into(),
        date: NaiveDate::from_ymd_opt(
            rng.gen_range(2000..2030),
            rng.gen_range(1..=12),
            rng.gen_range(1..=28),
        )
        .unwrap(),
        one_time: OneTimeDraft {
            max_open: q(widest_length.max(60.0) + rng.gen_range(0.0..20.0)),
            min_width,
            max_width: q(min_width + rng.gen_range(5.0..80.0)),
            max_width_unbounded: rng.gen_bool(0.3),
        },
        sets,
    }
}
