mod common;

use altsub_core::rule::verify_edge_compatibility;
use altsub_core::tiling::{census_by_counts, refinement_violations, replacement_evolve_stats, subdivide_traced, FaceClass};
use altsub_core::{collapse_merged_edges, initial_tiling, maps_isomorphic, replacement_evolve, Seed, Witness};
use common::*;

#[test]
fn admissible_fixtures_validate() {
    for name in ADMISSIBLE {
        let r = report(name);
        assert!(r.admissible(), "{name}: {r}");
        assert!(r.witnesses.is_empty(), "{name}");
    }
    assert_eq!(report("hopf").link_components, 2);
    assert_eq!(report("borromean").link_components, 3);
    assert_eq!(report("knot8_b").link_components, 1);
}

#[test]
fn invalid_fixtures_are_rejected_with_witnesses() {
    let r = report("invalid/unknot1");
    assert!(!r.reduced && r.alternating);
    assert!(r.witnesses.iter().any(|w| matches!(w, Witness::Nugatory { .. })));

    let r = report("invalid/split_hopf");
    assert!(!r.non_split);
    assert!(r.witnesses.iter().any(|w| matches!(w, Witness::Split { components } if components.len() == 2)));

    let r = report("invalid/granny");
    assert!(r.alternating && r.reduced && r.non_split && !r.prime);
    assert!(r
        .witnesses
        .iter()
        .any(|w| matches!(w, Witness::SharedEdges { arcs, .. } if arcs.len() >= 2)));
}

#[test]
fn rules_are_clean_and_compatible() {
    for name in ADMISSIBLE {
        let rule = rule(name);
        assert!(rule.hazards.is_clean(), "{name}: {:?}", rule.hazards.hazards);
        let compat = verify_edge_compatibility(&rule);
        assert_eq!(compat.mismatches, 0, "{name}");
        assert!(!compat.checked.is_empty(), "{name}");
        assert_eq!(rule.types.last().unwrap().name, "trunc");
    }
}

#[test]
fn sphere_stages_refine_and_keep_euler_characteristic() {
    for name in ADMISSIBLE {
        let rule = rule(name);
        let mut t = initial_tiling(&rule, Seed::Sphere).unwrap();
        let mut prev_nonterminal = 0;
        for stage in 0..3 {
            assert_eq!(t.euler_characteristic(), 2, "{name} stage {stage}");
            let nonterminal = t.tiles().filter(|&f| t.class[f as usize] != FaceClass::Truncation).count();
            assert!(nonterminal > prev_nonterminal, "{name} stage {stage}");
            prev_nonterminal = nonterminal;
            let (next, trace) = subdivide_traced(&rule, &t).unwrap();
            assert_eq!(refinement_violations(&t, &next, &trace), 0, "{name} stage {stage}");
            for f in next.tiles() {
                assert!((next.parent[f as usize] as usize) < t.map.face_count());
            }
            t = next;
        }
    }
}

#[test]
fn seed_tiles_are_disks() {
    for name in ["hopf", "trefoil", "figure8"] {
        let rule = rule(name);
        for ty in 0..rule.types.len() as u32 {
            let mut t = initial_tiling(&rule, Seed::Tile { tile_type: ty }).unwrap();
            for _ in 0..3 {
                assert_eq!(t.euler_characteristic(), 1);
                t = altsub_core::subdivide(&rule, &t).unwrap();
            }
        }
    }
}

#[test]
fn counted_and_explicit_censuses_agree() {
    for name in ["trefoil", "borromean", "knot7_a"] {
        let rule = rule(name);
        let counted = census_by_counts(&rule, Seed::Sphere, 3).unwrap();
        let mut t = initial_tiling(&rule, Seed::Sphere).unwrap();
        for stage in 0..=3 {
            assert_eq!(altsub_core::tile_census(&t), counted.counts[stage], "{name} stage {stage}");
            t = altsub_core::subdivide(&rule, &t).unwrap();
        }
    }
}

#[test]
fn oracle_matches_on_larger_knots() {
    for name in ["torus_2_5", "knot7_a", "knot8_18"] {
        let c = complex(name);
        let rule = altsub_core::build_rule(&c).unwrap();
        let t = altsub_core::tiling::subdivide_n(&rule, &initial_tiling(&rule, Seed::Sphere).unwrap(), 2).unwrap();
        let collapsed = collapse_merged_edges(&rule, &t).unwrap();
        assert!(maps_isomorphic(&collapsed, &replacement_evolve(&c, 2).unwrap()).isomorphic, "{name}");
    }
}

#[test]
fn cover_never_exceeds_four_polyhedra_per_edge() {
    for name in ADMISSIBLE {
        let (_, stats) = replacement_evolve_stats(&complex(name), 3).unwrap();
        assert!(stats.max_link_count.iter().all(|&k| k <= 3), "{name}");
        assert!(stats.max_loaded_per_region.iter().all(|&k| k <= 1), "{name}");
        assert!(stats.saturated_edges.iter().skip(1).any(|&k| k > 0), "{name}");
    }
}
