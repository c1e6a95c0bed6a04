mod common;

use common::*;
use graspspan_core::*;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn constructor_and_validator_agree(seed in any::<u64>()) {
        let draft = random_hand_draft(&mut rng(seed), 0);
        prop_assert!(validate_hand(&draft).is_empty());
        let hand = HandRecord::new(draft).unwrap();
        prop_assert!(validate_hand(&hand.to_draft()).is_empty());
        for set in hand.sets() {
            for c in set.configurations() {
                prop_assert!(c.pairs().windows(2).all(|w| w[0].depth() < w[1].depth()));
            }
        }
    }

    #[test]
    fn banding_is_total(s in -0.5f64..1.5) {
        let band = SizeBand::from_relative(s);
        let matches = [
            s < 0.0,
            (0.0..0.3).contains(&s),
            (0.3..=0.7).contains(&s),
            s > 0.7 && s <= 1.0,
            s > 1.0,
        ];
        prop_assert_eq!(matches.iter().filter(|m| **m).count(), 1);
        let expected = [SizeBand::TooSmall, SizeBand::Small, SizeBand::Medium, SizeBand::Large, SizeBand::TooLarge]
            [matches.iter().position(|m| *m).unwrap()];
        prop_assert_eq!(band, expected);
    }

    #[test]
    fn endpoint_identity(seed in any::<u64>()) {
        let hand = HandRecord::new(random_hand_draft(&mut rng(seed), 0)).unwrap();
        for set in hand.sets() {
            for c in set.configurations() {
                let p = config_interp(set, c.actuation()).unwrap();
                let got: Vec<(f64, f64)> = p.points().iter().map(|p| (p.depth, p.extent)).collect();
                let want: Vec<(f64, f64)> = c.pairs().iter().map(|p| (p.depth(), p.extent())).collect();
                prop_assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn blending_is_monotone(seed in any::<u64>(), u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let hand = HandRecord::new(random_hand_draft(&mut rng(seed), 0)).unwrap();
        let set = &hand.sets()[0];
        let configs = set.configurations();
        let seg = (u * (configs.len() - 1) as f64) as usize;
        let (lo, hi) = (configs[seg].actuation(), configs[seg + 1].actuation());
        let (t1, t2) = if u <= v { (u, v) } else { (v, u) };
        let a1 = lo + t1 * (hi - lo);
        let a2 = lo + t2 * (hi - lo);
        let p1 = config_interp(set, a1).unwrap();
        let p2 = config_interp(set, a2).unwrap();
        let pl = config_interp(set, lo).unwrap();
        let ph = config_interp(set, hi).unwrap();
        for i in 0..set.pair_count() {
            for (f1, f2, fl, fh) in [
                (p1.points()[i].depth, p2.points()[i].depth, pl.points()[i].depth, ph.points()[i].depth),
                (p1.points()[i].extent, p2.points()[i].extent, pl.points()[i].extent, ph.points()[i].extent),
            ] {
                // Between a1 and a2 the coordinate moves in the same direction
                // as it does across the whole bracket.
                if fh >= fl {
                    prop_assert!(f1 <= f2);
                } else {
                    prop_assert!(f1 >= f2);
                }
            }
        }
    }

    #[test]
    fn piecewise_linear_exactness(seed in any::<u64>(), a in 0.0f64..=1.0, lambda in 0.0f64..=1.0) {
        let hand = HandRecord::new(random_hand_draft(&mut rng(seed), 0)).unwrap();
        let p = config_interp(&hand.sets()[0], a).unwrap();
        for w in p.points().windows(2) {
            let d = (1.0 - lambda) * w[0].depth + lambda * w[1].depth;
            let want = (1.0 - lambda) * w[0].extent + lambda * w[1].extent;
            let got = span_interp(&p, d.clamp(w[0].depth, w[1].depth)).unwrap();
            prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "{got} vs {want}");
        }
    }

    #[test]
    fn band_matches_formula(m in 0.0f64..200.0, width in 0.1f64..200.0, o in -100.0f64..500.0) {
        let ext = AxisExtrema::new(Axis::Span, m, m + width, false).unwrap();
        let s = oracle_relative(o, m, m + width);
        let c = relative_size(o, &ext);
        prop_assert_eq!(c.relative, s);
        prop_assert_eq!(c.band, SizeBand::from_relative(s));
    }

    #[test]
    fn canonical_round_trip(seed in any::<u64>(), s in 0.001f64..0.999) {
        let hand = HandRecord::new(random_hand_draft(&mut rng(seed), 0)).unwrap();
        let t = hand.sets()[0].grasp_type();
        let bounded = !hand.one_time().max_width_unbounded();
        let obj = canonical_object(&hand, t, CanonicalTargets::uniform(s, bounded)).unwrap();
        let classes = classify(&hand, t, &obj).unwrap();
        for (_, c) in classes.iter() {
            prop_assert!((c.relative - s).abs() <= 1e-9);
            prop_assert_eq!(c.band, SizeBand::from_relative(s));
        }
        prop_assert_eq!(classes.width.is_some(), bounded);
    }

    #[test]
    fn fit_is_monotone_in_object_size(seed in any::<u64>(), shrink_s in 0.0f64..1.0, shrink_d in 0.0f64..1.0) {
        let mut r = rng(seed);
        let (max, min) = random_two_config(&mut r);
        let grasp = if r.gen_bool(0.5) { GraspType::Precision } else { GraspType::CylindricalPower };
        let hand = hand_from("h", grasp, &max, &min);
        let ext = axis_extrema(&hand, grasp).unwrap();
        let os = r.gen_range(ext.span.min()..=ext.span.max());
        let od = r.gen_range(1.0..ext.depth.max());
        let a = fit(&hand, grasp, &object("a", os, od), 200).unwrap();
        prop_assume!(a.feasible());
        // Shrinking is only guaranteed to keep fitting while the span class
        // stays at or above Small.
        let bs = ext.span.min() + shrink_s * (os - ext.span.min());
        let bd = od * (0.05 + 0.95 * shrink_d);
        let b = fit(&hand, grasp, &object("b", bs.max(ext.span.min()), bd), 200).unwrap();
        prop_assert!(b.feasible(), "A fits at {:?} but B ({bs}, {bd}) does not", a.placement);
    }
}

#[test]
fn endpoint_consistency_with_plateau() {
    let max = vec![(0.0, 120.0), (40.0, 120.0)];
    let min = vec![(0.0, 30.0), (35.0, 25.0)];
    for grasp in [GraspType::Precision, GraspType::CylindricalPower] {
        let hand = hand_from("plateau", grasp, &max, &min);
        let r = fit(
            &hand,
            grasp,
            &object("thin", 120.0, 1e-6),
            DEFAULT_RESOLUTION,
        )
        .unwrap();
        assert_eq!(r.classes.span.band, SizeBand::Large);
        assert_eq!(r.classes.span.relative, 1.0);
        let p = r.placement.expect("fits at the widest configuration");
        assert_eq!(p.actuation, 0.0);
    }
}

#[test]
fn bilinear_agreement_on_grid() {
    let mut r = rng(11);
    for _ in 0..20 {
        let (max, min) = random_two_config(&mut r);
        let hand = hand_from("h", GraspType::Precision, &max, &min);
        let set = hand.set(GraspType::Precision).unwrap();
        for i in 0..100 {
            let a = i as f64 / 99.0;
            let p = config_interp(set, a).unwrap();
            let pts = oracle_blend(&max, &min, a);
            let (lo, hi) = (
                p.min_depth().max(pts[0].0),
                p.max_depth().min(pts[pts.len() - 1].0),
            );
            for j in 0..100 {
                let d = (lo + (hi - lo) * j as f64 / 99.0).min(hi);
                let got = span_interp(&p, d).unwrap();
                let want = oracle_eval(&pts, d).unwrap();
                assert!(
                    (got - want).abs() <= 1e-9 * want.abs().max(1.0),
                    "a={a} d={d}: {got} vs {want}"
                );
            }
        }
    }
}
