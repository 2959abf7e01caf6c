mod common;

use altsub_core::iso::{isomorphism, Labelled};
use altsub_core::layout::{check_crossings, tutte_layout, Shape};
use altsub_core::recurrence::fit_recurrence;
use altsub_core::{build_planar_map, emit_pd, initial_tiling, maps_isomorphic, parse_pd_code, subdivide, validate, LinkDiagram, Seed, TruncatedComplex};
use common::*;
use proptest::prelude::*;
use proptest::sample::select;

fn orientation_labels(c: &TruncatedComplex) -> Vec<u32> {
    (0..c.map().face_count() as u32)
        .map(|f| match c.orientation(f) {
            None => 0,
            Some(o) if o.is_clockwise() => 1,
            Some(_) => 2,
        })
        .collect()
}

/// Same diagram with crossings reordered and arcs renamed.
fn relabel_pd(d: &LinkDiagram, order: &[usize], arcs: &[u32]) -> LinkDiagram {
    let crossings = order.iter().map(|&k| d.crossings()[k].map(|a| arcs[a as usize - 1])).collect();
    LinkDiagram::from_crossings(crossings).unwrap()
}

fn shuffled(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pd_relabelling_preserves_everything(
        (name, order, arcs) in select(ADMISSIBLE.to_vec()).prop_flat_map(|name| {
            let n = diagram(name).crossing_count();
            (Just(name), shuffled(n), shuffled(2 * n))
        })
    ) {
        let d = diagram(name);
        let arcs: Vec<u32> = arcs.iter().map(|&a| a as u32 + 1).collect();
        let e = relabel_pd(&d, &order, &arcs);
        let (rd, re) = (
            validate(&d, &build_planar_map(&d).unwrap()),
            validate(&e, &build_planar_map(&e).unwrap()),
        );
        prop_assert_eq!(
            (rd.alternating, rd.reduced, rd.prime, rd.non_split, rd.link_components),
            (re.alternating, re.reduced, re.prime, re.non_split, re.link_components)
        );
        let (cd, ce) = (complex_of(&d), complex_of(&e));
        let (ld, le) = (orientation_labels(&cd), orientation_labels(&ce));
        let iso = isomorphism(Labelled { map: cd.map(), face_label: &ld }, Labelled { map: ce.map(), face_label: &le });
        prop_assert!(iso.is_some());
        let (rule_d, rule_e) = (altsub_core::build_rule(&cd).unwrap(), altsub_core::build_rule(&ce).unwrap());
        prop_assert_eq!(rule_d.types.len(), rule_e.types.len());
        let shape = |r: &altsub_core::SubdivisionRule| {
            let mut v: Vec<_> = r.types.iter().map(|t| (t.kind, t.len())).collect();
            v.sort_by_key(|x| (x.0 as u8, x.1));
            v
        };
        prop_assert_eq!(shape(&rule_d), shape(&rule_e));
    }

    #[test]
    fn pd_round_trip(name in select(ADMISSIBLE.to_vec())) {
        let d = diagram(name);
        let text = emit_pd(&d);
        let back = parse_pd_code(&text).unwrap();
        prop_assert!(back.is_isomorphic(&d));
        prop_assert_eq!(emit_pd(&back), text);
    }

    #[test]
    fn isomorphism_survives_relabelling(
        name in select(vec!["hopf", "trefoil", "borromean", "figure8"]),
        depth in 0u32..4,
        seed in any::<u64>(),
    ) {
        use rand::{seq::SliceRandom, SeedableRng};
        let rule = rule(name);
        let mut t = initial_tiling(&rule, Seed::Sphere).unwrap();
        for _ in 0..depth {
            t = subdivide(&rule, &t).unwrap();
        }
        let mut perm: Vec<u32> = (0..t.map.dart_count() as u32).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let u = relabel(&t, &perm);
        let out = maps_isomorphic(&t, &u);
        prop_assert!(out.isomorphic);
        let w = out.witness.unwrap();
        for d in 0..t.map.dart_count() as u32 {
            prop_assert_eq!(w[t.map.twin(d) as usize], u.map.twin(w[d as usize]));
            prop_assert_eq!(w[t.map.next(d) as usize], u.map.next(w[d as usize]));
        }
        // a single changed face class breaks it
        let mut v = u.clone();
        let f = v.tiles().next().unwrap() as usize;
        v.class[f] = if v.class[f] == altsub_core::tiling::FaceClass::Truncation {
            altsub_core::tiling::FaceClass::Clockwise
        } else {
            altsub_core::tiling::FaceClass::Truncation
        };
        prop_assert!(!maps_isomorphic(&t, &v).isomorphic);
    }

    #[test]
    fn euler_characteristic_is_stable(name in select(ADMISSIBLE.to_vec()), pick in any::<prop::sample::Index>(), depth in 1u32..3) {
        let rule = rule(name);
        let ty = pick.index(rule.types.len()) as u32;
        let mut t = initial_tiling(&rule, Seed::Tile { tile_type: ty }).unwrap();
        let chi = t.euler_characteristic();
        prop_assert_eq!(chi, 1);
        for _ in 0..depth {
            t = subdivide(&rule, &t).unwrap();
            prop_assert_eq!(t.euler_characteristic(), chi);
        }
    }

    #[test]
    fn layouts_are_crossing_free(name in select(ADMISSIBLE.to_vec()), pick in any::<prop::sample::Index>(), depth in 0u32..3) {
        let rule = rule(name);
        let ty = pick.index(rule.types.len()) as u32;
        let mut t = initial_tiling(&rule, Seed::Tile { tile_type: ty }).unwrap();
        for _ in 0..depth {
            t = subdivide(&rule, &t).unwrap();
        }
        let l = tutte_layout(&t, None, Shape::Polygon).unwrap();
        prop_assert!(l.residual <= 1e-9);
        let report = check_crossings(&t.map, &l);
        prop_assert!(report.is_crossing_free(), "{:?}", report);
    }

    #[test]
    fn recurrences_are_recovered(
        coeffs in prop::collection::vec(-3i64..=3, 1..4),
        init in prop::collection::vec(0i64..20, 3),
    ) {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let k = coeffs.len();
        let mut seq: Vec<i64> = init[..k].to_vec();
        while seq.len() < 2 * k + 6 {
            let n = seq.len();
            seq.push((0..k).map(|i| coeffs[i] * seq[n - 1 - i]).sum());
        }
        let series: Vec<BigRational> = seq.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        let (fit_on, check) = series.split_at(series.len() - 2);
        let r = fit_recurrence(fit_on, 12).unwrap().unwrap();
        prop_assert!(r.order() <= k);
        prop_assert_eq!(r.predict(fit_on, 2), check.to_vec());
    }
}
