//! Subdivision rules for prime alternating link complements.

pub mod cover;
pub mod iso;
pub mod layout;
pub mod link_diagram;
pub mod map;
pub mod polyhedral;
pub mod recurrence;
pub mod render;
pub mod rule;
pub mod tiling;

pub use link_diagram::{
    build_planar_map, emit_pd, parse_pd_code, validate, LinkDiagram, ValidationReport, Witness,
};
pub use map::{CombinatorialMap, Dart, EdgeKind};
pub use polyhedral::{
    checkerboard, checkerboard_with, emit_complex_json, gluing_twist, truncate, GluingDatum,
    Orientation, OrientationAssignment, TruncatedComplex,
};
pub use recurrence::{fit_recurrence, Recurrence};
pub use render::{emit_svg, emit_tiling_json, load_tiling_json, StyleSpec};
pub use layout::{check_crossings, tutte_layout, Layout, Shape};
pub use rule::{
    build_rule, derive_replacement_rule, emit_rule_json, loaded_pair_pattern, single_region_pattern,
    to_subdivision_rule, verify_edge_compatibility, ReplacementPattern, ReplacementRule,
    SubdivisionRule, TileKind, TileState, TileType,
};
pub use tiling::{
    collapse_merged_edges, initial_tiling, maps_isomorphic, replacement_evolve, subdivide,
    tile_census, CensusSeries, Seed, Tiling,
};
