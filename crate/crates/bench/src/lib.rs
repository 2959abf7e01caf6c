//! Shared fixtures for the benchmarks.

use std::path::PathBuf;

use altsub_core::{build_planar_map, build_rule, checkerboard, parse_pd_code, truncate, SubdivisionRule, TruncatedComplex};

pub fn complex(name: &str) -> TruncatedComplex {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.pd"));
    let text = std::fs::read_to_string(path).expect("fixture readable");
    let map = build_planar_map(&parse_pd_code(&text).expect("fixture parses")).expect("planar");
    truncate(&map, &checkerboard(&map).expect("alternating")).expect("truncates")
}

pub fn rule(name: &str) -> SubdivisionRule {
    build_rule(&complex(name)).expect("rule builds")
}
