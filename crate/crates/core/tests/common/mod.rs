#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use altsub_core::polyhedral::FaceRole;
use altsub_core::tiling::UNTYPED;
use altsub_core::{
    build_planar_map, checkerboard, parse_pd_code, truncate, validate, CombinatorialMap, Dart, EdgeKind,
    LinkDiagram, SubdivisionRule, Tiling, TruncatedComplex, ValidationReport,
};

pub const ADMISSIBLE: [&str; 10] = [
    "hopf",
    "trefoil",
    "figure8",
    "borromean",
    "torus_2_5",
    "torus_2_7",
    "knot7_a",
    "knot7_b",
    "knot8_18",
    "knot8_b",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.pd"))
}

pub fn diagram(name: &str) -> LinkDiagram {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    parse_pd_code(&text).expect("fixture parses")
}

pub fn report(name: &str) -> ValidationReport {
    let d = diagram(name);
    validate(&d, &build_planar_map(&d).unwrap())
}

pub fn complex_of(d: &LinkDiagram) -> TruncatedComplex {
    let m = build_planar_map(d).unwrap();
    truncate(&m, &checkerboard(&m).unwrap()).unwrap()
}

pub fn complex(name: &str) -> TruncatedComplex {
    complex_of(&diagram(name))
}

pub fn rule(name: &str) -> SubdivisionRule {
    altsub_core::build_rule(&complex(name)).unwrap()
}

/// Face labels of a truncated complex: 1 on truncation squares.
pub fn role_labels(c: &TruncatedComplex) -> Vec<u32> {
    (0..c.map().face_count() as u32).map(|f| (c.role(f) == FaceRole::TruncationSquare) as u32).collect()
}

/// Builds a polyhedron surface from vertex cycles listed counterclockwise
/// seen from outside. Edges of faces in `truncation` have kind
/// `Truncation`, the rest `Link`.
pub fn from_vertex_faces(faces: &[Vec<u32>], truncation: &[bool]) -> CombinatorialMap {
    let mut dart_of = HashMap::new();
    let mut cycles = Vec::new();
    let mut face_of = Vec::new();
    for (f, cyc) in faces.iter().enumerate() {
        let mut c = Vec::new();
        for i in 0..cyc.len() {
            let d = dart_of.len() as Dart;
            dart_of.insert((cyc[i], cyc[(i + 1) % cyc.len()]), d);
            face_of.push(f);
            c.push(d);
        }
        cycles.push(c);
    }
    let n = dart_of.len();
    let mut twin = vec![0; n];
    let mut kind = vec![EdgeKind::Link; n];
    for (&(a, b), &d) in &dart_of {
        let e = dart_of[&(b, a)];
        twin[d as usize] = e;
        if truncation[face_of[d as usize]] || truncation[face_of[e as usize]] {
            kind[d as usize] = EdgeKind::Truncation;
        }
    }
    CombinatorialMap::from_faces(&cycles, twin, kind).unwrap()
}

/// Cube with truncation squares on top and bottom.
pub fn reference_cube() -> (CombinatorialMap, Vec<u32>) {
    let faces = vec![
        vec![0, 3, 2, 1],
        vec![4, 5, 6, 7],
        vec![0, 1, 5, 4],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 6],
        vec![3, 0, 4, 7],
    ];
    let trunc = [true, true, false, false, false, false];
    (from_vertex_faces(&faces, &trunc), trunc.iter().map(|&t| t as u32).collect())
}

/// Hexagonal prism whose side squares alternate truncation / region.
pub fn reference_hexagonal_prism() -> (CombinatorialMap, Vec<u32>) {
    let mut faces = vec![vec![0, 5, 4, 3, 2, 1], vec![6, 7, 8, 9, 10, 11]];
    let mut trunc = vec![false, false];
    for i in 0..6 {
        let j = (i + 1) % 6;
        faces.push(vec![i, j, j + 6, i + 6]);
        trunc.push(i % 2 == 0);
    }
    (from_vertex_faces(&faces, &trunc), trunc.iter().map(|&t| t as u32).collect())
}

/// Truncated octahedron: squares at the octahedron vertices, hexagons at
/// its faces. Vertex `(u, v)` sits on edge `uv` near `u`.
pub fn reference_truncated_octahedron() -> (CombinatorialMap, Vec<u32>) {
    // 0:+x 1:-x 2:+y 3:-y 4:+z 5:-z
    let mut tris = Vec::new();
    for sx in [0, 1] {
        for sy in [2, 3] {
            for sz in [4, 5] {
                let positive = (sx == 0) ^ (sy == 3) ^ (sz == 5);
                tris.push(if positive { [sx, sy, sz] } else { [sx, sz, sy] });
            }
        }
    }
    let mut id = HashMap::new();
    let mut vid = |u: u32, v: u32| {
        let n = id.len() as u32;
        *id.entry((u, v)).or_insert(n)
    };
    let mut faces = Vec::new();
    let mut trunc = Vec::new();
    // around u: after (u, v) comes (u, w) for each triangle (u, v, w)
    let mut succ = HashMap::new();
    for t in &tris {
        for r in 0..3 {
            let (u, v, w) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
            succ.insert((u, v), w);
        }
        let [a, b, c] = *t;
        faces.push(vec![vid(a, b), vid(b, a), vid(b, c), vid(c, b), vid(c, a), vid(a, c)]);
        trunc.push(false);
    }
    for u in 0..6 {
        let start = *succ.keys().filter(|k| k.0 == u).map(|k| &k.1).min().unwrap();
        let mut cyc = vec![vid(u, start)];
        let mut v = succ[&(u, start)];
        while v != start {
            cyc.push(vid(u, v));
            v = succ[&(u, v)];
        }
        faces.push(cyc);
        trunc.push(true);
    }
    (from_vertex_faces(&faces, &trunc), trunc.iter().map(|&t| t as u32).collect())
}

/// Renames darts by `perm` and reverses the face order.
pub fn relabel(t: &Tiling, perm: &[Dart]) -> Tiling {
    let m = &t.map;
    let n = m.dart_count();
    let mut twin = vec![0; n];
    let mut next = vec![0; n];
    let mut kind = vec![EdgeKind::Link; n];
    for d in 0..n {
        let p = perm[d] as usize;
        twin[p] = perm[m.twin(d as Dart) as usize];
        next[p] = perm[m.next(d as Dart) as usize];
        kind[p] = m.kind(d as Dart);
    }
    let cycles: Vec<Vec<Dart>> =
        (0..m.face_count() as u32).rev().map(|f| t.cycle(f).iter().map(|&d| perm[d as usize]).collect()).collect();
    let map = CombinatorialMap::from_faces(&cycles, twin, kind).unwrap();
    assert_eq!(map.rotation(), next.as_slice());
    let nf = m.face_count() as u32;
    let old = |g: u32| (nf - 1 - g) as usize;
    let remap_face = |f: u32| if f == UNTYPED { f } else { nf - 1 - f };
    let mut loaded = vec![false; n];
    let mut corner = vec![false; n];
    for d in 0..n {
        loaded[perm[d] as usize] = t.loaded[d];
        corner[perm[d] as usize] = t.corner[d];
    }
    Tiling {
        stage: t.stage,
        seed: t.seed,
        mode: t.mode,
        class: (0..nf).map(|g| t.class[old(g)]).collect(),
        tile_type: (0..nf).map(|g| t.tile_type[old(g)]).collect(),
        type_names: t.type_names.clone(),
        root: (0..nf).map(|g| perm[t.root[old(g)] as usize]).collect(),
        parent: (0..nf).map(|g| t.parent[old(g)]).collect(),
        loaded,
        corner,
        outer: t.outer.map(remap_face),
        map,
    }
}
