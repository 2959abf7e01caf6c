//! Iterating a subdivision rule, and the replacement-mode oracle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{evolve, EvolveStats, GluingError, Label, Views};
use crate::iso::{isomorphism, Labelled};
use crate::map::{CombinatorialMap, Dart, EdgeKind, MapError, NONE};
use crate::polyhedral::TruncatedComplex;
use crate::rule::{LocalTwin, SubdivisionRule, TileKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TilingError {
    #[error("unknown seed `{0}`")]
    UnknownSeed(String),
    #[error("operation needs a subdivision-mode tiling")]
    WrongMode,
    #[error("edge split mismatch at dart {dart}: {left} vs {right} pieces")]
    EdgeMismatch { dart: Dart, left: usize, right: usize },
    #[error("tile {0} has no type")]
    Untyped(u32),
    #[error(transparent)]
    Gluing(#[from] GluingError),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceClass {
    Clockwise,
    Counterclockwise,
    /// A loaded-pair tile.
    Pair,
    Truncation,
    /// The complement of a disk tiling.
    Outer,
}

impl FaceClass {
    fn of(kind: TileKind) -> FaceClass {
        match kind {
            TileKind::Clockwise => FaceClass::Clockwise,
            TileKind::Counterclockwise => FaceClass::Counterclockwise,
            TileKind::Pair => FaceClass::Pair,
            TileKind::Truncation => FaceClass::Truncation,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "seed", rename_all = "snake_case")]
pub enum Seed {
    /// The boundary of the initial polyhedron.
    Sphere,
    /// A single closed tile.
    Tile { tile_type: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Subdivision,
    Replacement,
}

/// A staged planar complex. Per-face vectors are indexed by face id and
/// per-dart vectors by dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub stage: u32,
    pub seed: Seed,
    pub mode: Mode,
    pub map: CombinatorialMap,
    pub class: Vec<FaceClass>,
    /// Tile type, or `u32::MAX` for the outer face and untyped tiles.
    pub tile_type: Vec<u32>,
    pub type_names: Vec<String>,
    /// Root dart of every face; tile edge `k` is `face_next^k(root)`.
    pub root: Vec<Dart>,
    /// Face of the previous stage containing this one.
    pub parent: Vec<u32>,
    pub loaded: Vec<bool>,
    /// Outer darts that start an edge of the seed tile.
    pub corner: Vec<bool>,
    pub outer: Option<u32>,
}

pub const UNTYPED: u32 = NONE;

impl Tiling {
    pub fn tile_count(&self) -> usize {
        self.map.face_count() - self.outer.is_some() as usize
    }

    /// Euler characteristic of the tiled surface: 2 for a sphere, 1 for a disk.
    pub fn euler_characteristic(&self) -> i64 {
        self.map.euler_characteristic() - self.outer.is_some() as i64
    }

    /// Face darts starting at the root.
    pub fn cycle(&self, f: u32) -> Vec<Dart> {
        let r = self.root[f as usize];
        let mut out = vec![r];
        let mut x = self.map.face_next(r);
        while x != r {
            out.push(x);
            x = self.map.face_next(x);
        }
        out
    }

    pub fn tiles(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.map.face_count() as u32).filter(move |&f| Some(f) != self.outer)
    }

    pub fn type_name(&self, f: u32) -> Option<&str> {
        let t = self.tile_type[f as usize];
        (t != UNTYPED).then(|| self.type_names[t as usize].as_str())
    }

    fn labels(&self) -> Vec<u32> {
        self.class.iter().map(|&c| c as u32).collect()
    }
}

/// Resolves a seed name: `sphere`, a type name, or a type id.
pub fn parse_seed(rule: &SubdivisionRule, s: &str) -> Result<Seed, TilingError> {
    if s == "sphere" {
        return Ok(Seed::Sphere);
    }
    if let Some(id) = rule.type_by_name(s) {
        return Ok(Seed::Tile { tile_type: id });
    }
    match s.parse::<u32>() {
        Ok(id) if (id as usize) < rule.types.len() => Ok(Seed::Tile { tile_type: id }),
        _ => Err(TilingError::UnknownSeed(s.to_string())),
    }
}

/// The stage-0 tiling of a seed.
pub fn initial_tiling(rule: &SubdivisionRule, seed: Seed) -> Result<Tiling, TilingError> {
    let type_names: Vec<String> = rule.types.iter().map(|t| t.name.clone()).collect();
    match seed {
        Seed::Sphere => {
            let map = rule.sphere_map().clone();
            let n = map.dart_count();
            let tile_type: Vec<u32> = rule.sphere.iter().map(|s| s.tile_type).collect();
            Ok(Tiling {
                stage: 0,
                seed,
                mode: Mode::Subdivision,
                class: tile_type.iter().map(|&t| FaceClass::of(rule.types[t as usize].kind)).collect(),
                root: rule.sphere.iter().map(|s| s.cycle[0]).collect(),
                parent: vec![NONE; map.face_count()],
                tile_type,
                type_names,
                loaded: vec![false; n],
                corner: vec![false; n],
                outer: None,
                map,
            })
        }
        Seed::Tile { tile_type } => {
            let ty = rule
                .types
                .get(tile_type as usize)
                .ok_or_else(|| TilingError::UnknownSeed(tile_type.to_string()))?;
            let l = ty.len() as Dart;
            let twin: Vec<Dart> = (0..2 * l).map(|d| if d < l { d + l } else { d - l }).collect();
            let kind: Vec<EdgeKind> = (0..2 * l).map(|d| ty.boundary[(d % l) as usize].kind).collect();
            let inner: Vec<Dart> = (0..l).collect();
            let outer: Vec<Dart> = std::iter::once(l).chain((1..l).rev().map(|k| l + k)).collect();
            let map = CombinatorialMap::from_faces(&[inner, outer], twin, kind)?;
            let mut corner = vec![false; 2 * l as usize];
            for d in l..2 * l {
                corner[d as usize] = true;
            }
            let outer_face = map.face_of(l);
            let mut tiling = Tiling {
                stage: 0,
                seed,
                mode: Mode::Subdivision,
                class: vec![FaceClass::Outer; 2],
                tile_type: vec![UNTYPED; 2],
                type_names,
                root: vec![0; 2],
                parent: vec![NONE; 2],
                loaded: vec![false; 2 * l as usize],
                corner,
                outer: Some(outer_face),
                map,
            };
            let tf = tiling.map.face_of(0) as usize;
            tiling.class[tf] = FaceClass::of(ty.kind);
            tiling.tile_type[tf] = tile_type;
            tiling.root[outer_face as usize] = l;
            mark_loaded(rule, &mut tiling);
            Ok(tiling)
        }
    }
}

/// Pair tiles carry the moved boundary over their loaded edge.
fn mark_loaded(rule: &SubdivisionRule, t: &mut Tiling) {
    for f in t.tiles().collect::<Vec<_>>() {
        let ty = t.tile_type[f as usize];
        if ty == UNTYPED {
            continue;
        }
        if let Some(s) = rule.types[ty as usize].split {
            let cycle = t.cycle(f);
            for &d in &cycle[..s as usize] {
                t.loaded[d as usize] = true;
                t.loaded[t.map.twin(d) as usize] = true;
            }
        }
    }
}

/// Where every old dart went: the chain of new darts along it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Refinement {
    pub chains: Vec<Vec<Dart>>,
}

pub fn subdivide(rule: &SubdivisionRule, t: &Tiling) -> Result<Tiling, TilingError> {
    subdivide_traced(rule, t).map(|(t, _)| t)
}

pub fn subdivide_n(rule: &SubdivisionRule, t: &Tiling, n: u32) -> Result<Tiling, TilingError> {
    let mut cur = t.clone();
    for _ in 0..n {
        cur = subdivide(rule, &cur)?;
    }
    Ok(cur)
}

/// One simultaneous subdivision of every tile.
pub fn subdivide_traced(rule: &SubdivisionRule, t: &Tiling) -> Result<(Tiling, Refinement), TilingError> {
    if t.mode != Mode::Subdivision {
        return Err(TilingError::WrongMode);
    }
    let m = &t.map;
    let nf = m.face_count();
    // per dart: (face, index from root)
    let mut at = vec![(0u32, 0u32); m.dart_count()];
    let mut offset = vec![0u32; nf];
    let mut next = 0u32;
    for f in t.tiles() {
        let ty = t.tile_type[f as usize];
        if ty == UNTYPED {
            return Err(TilingError::Untyped(f));
        }
        for (i, d) in t.cycle(f).into_iter().enumerate() {
            at[d as usize] = (f, i as u32);
        }
        offset[f as usize] = next;
        next += rule.types[ty as usize].pattern.dart_count() as u32;
    }
    let pieces_of = |d: Dart| -> &[u32] {
        let (f, i) = at[d as usize];
        &rule.types[t.tile_type[f as usize] as usize].pattern.pieces[i as usize]
    };
    // outer darts, each split into as many pieces as the tile across
    let mut outer_first = vec![NONE; m.dart_count()];
    let mut outer_cycle: Vec<Dart> = Vec::new();
    if let Some(o) = t.outer {
        let mut x = t.root[o as usize];
        loop {
            outer_first[x as usize] = next + outer_cycle.len() as u32;
            let n = pieces_of(m.twin(x)).len();
            for k in 0..n as u32 {
                outer_cycle.push(outer_first[x as usize] + k);
            }
            x = m.face_next(x);
            if x == t.root[o as usize] {
                break;
            }
        }
    }
    let total = next as usize + outer_cycle.len();
    let mut twin = vec![NONE; total];
    let mut kind = vec![EdgeKind::Link; total];
    let mut corner = vec![false; total];
    let mut faces: Vec<Vec<Dart>> = Vec::new();
    let mut tile_type = Vec::new();
    let mut root = Vec::new();
    let mut parent = Vec::new();
    let mut chains: Vec<Vec<Dart>> = vec![Vec::new(); m.dart_count()];
    for f in t.tiles() {
        let ty = &rule.types[t.tile_type[f as usize] as usize];
        let p = &ty.pattern;
        let base = offset[f as usize];
        let cycle = t.cycle(f);
        for (x, tw) in p.twin.iter().enumerate() {
            let g = base + x as u32;
            kind[g as usize] = p.kind[x];
            twin[g as usize] = match *tw {
                LocalTwin::Internal(y) => base + y,
                LocalTwin::Boundary { edge, piece } => {
                    let d = cycle[edge as usize];
                    let e = m.twin(d);
                    let n = p.pieces[edge as usize].len();
                    let j = n - 1 - piece as usize;
                    if outer_first[e as usize] != NONE {
                        outer_first[e as usize] + j as u32
                    } else {
                        let other = pieces_of(e);
                        if other.len() != n {
                            return Err(TilingError::EdgeMismatch { dart: d, left: n, right: other.len() });
                        }
                        offset[at[e as usize].0 as usize] + other[j]
                    }
                }
            };
        }
        for (k, &d) in cycle.iter().enumerate() {
            chains[d as usize] = p.pieces[k].iter().map(|&x| base + x).collect();
        }
        for ch in &p.children {
            faces.push(ch.cycle.iter().map(|&x| base + x).collect());
            tile_type.push(ch.tile_type);
            root.push(base + ch.cycle[0]);
            parent.push(f);
        }
    }
    let mut outer = None;
    if let Some(o) = t.outer {
        for d in t.cycle(o) {
            let first = outer_first[d as usize];
            let inner = &chains[m.twin(d) as usize];
            let n = inner.len() as u32;
            for k in 0..n {
                let g = first + k;
                let y = inner[(n - 1 - k) as usize];
                twin[g as usize] = y;
                kind[g as usize] = kind[y as usize];
            }
            corner[first as usize] = t.corner[d as usize];
            chains[d as usize] = (first..first + n).collect();
        }
        outer = Some(faces.len() as u32);
        root.push(outer_cycle[0]);
        faces.push(outer_cycle);
        tile_type.push(UNTYPED);
        parent.push(o);
    }
    debug_assert!(!twin.contains(&NONE));
    let map = CombinatorialMap::from_faces(&faces, twin, kind)?;
    let class = tile_type
        .iter()
        .map(|&ty| if ty == UNTYPED { FaceClass::Outer } else { FaceClass::of(rule.types[ty as usize].kind) })
        .collect();
    let mut out = Tiling {
        stage: t.stage + 1,
        seed: t.seed,
        mode: Mode::Subdivision,
        loaded: vec![false; total],
        class,
        tile_type,
        type_names: t.type_names.clone(),
        root,
        parent,
        corner,
        outer,
        map,
    };
    mark_loaded(rule, &mut out);
    Ok((out, Refinement { chains }))
}

/// Checks that every old edge survives as a chain of new edges between the
/// images of its endpoints. Returns the number of violating darts.
pub fn refinement_violations(old: &Tiling, new: &Tiling, trace: &Refinement) -> usize {
    let (vid, _) = new.map.vertex_ids();
    let (old_vid, old_nv) = old.map.vertex_ids();
    let mut image = vec![NONE; old_nv];
    let mut bad = 0;
    for d in 0..old.map.dart_count() as Dart {
        let chain = &trace.chains[d as usize];
        let tw = &trace.chains[old.map.twin(d) as usize];
        let ok_shape = !chain.is_empty()
            && chain.len() == tw.len()
            && chain.iter().zip(tw.iter().rev()).all(|(&a, &b)| new.map.twin(a) == b)
            && chain.windows(2).all(|w| vid[new.map.twin(w[0]) as usize] == vid[w[1] as usize])
            && chain.iter().all(|&x| new.map.kind(x) == old.map.kind(d) || chain.len() > 1);
        let start = chain.first().map(|&x| vid[x as usize]).unwrap_or(NONE);
        let ov = old_vid[d as usize] as usize;
        let ok_vertex = match image[ov] {
            NONE => {
                image[ov] = start;
                true
            }
            v => v == start,
        };
        if !(ok_shape && ok_vertex) {
            bad += 1;
        }
    }
    bad
}

/// Splits every pair tile back into its clockwise and counterclockwise
/// regions along the loaded edge, giving the replacement-mode picture.
pub fn collapse_merged_edges(rule: &SubdivisionRule, t: &Tiling) -> Result<Tiling, TilingError> {
    if t.mode != Mode::Subdivision {
        return Err(TilingError::WrongMode);
    }
    let m = &t.map;
    let mut twin = m.twins().to_vec();
    let mut kind = m.kinds().to_vec();
    let mut faces = Vec::new();
    let mut class = Vec::new();
    let mut tile_type = Vec::new();
    let mut root = Vec::new();
    let mut parent = Vec::new();
    let mut loaded = vec![false; m.dart_count()];
    let mut outer = None;
    for f in 0..m.face_count() as u32 {
        let cycle = t.cycle(f);
        let ty = t.tile_type[f as usize];
        let split = (ty != UNTYPED).then(|| rule.types[ty as usize].split).flatten();
        match split {
            Some(s) => {
                let (x, y) = (twin.len() as Dart, twin.len() as Dart + 1);
                twin.extend([y, x]);
                kind.extend([EdgeKind::Link, EdgeKind::Link]);
                loaded.extend([true, true]);
                let mut mface = cycle[..s as usize].to_vec();
                mface.push(x);
                let mut nface = vec![y];
                nface.extend_from_slice(&cycle[s as usize..]);
                for (face, c) in [(mface, FaceClass::Clockwise), (nface, FaceClass::Counterclockwise)] {
                    root.push(face[0]);
                    faces.push(face);
                    class.push(c);
                    tile_type.push(UNTYPED);
                    parent.push(f);
                }
            }
            None => {
                if Some(f) == t.outer {
                    outer = Some(faces.len() as u32);
                }
                root.push(cycle[0]);
                faces.push(cycle);
                class.push(t.class[f as usize]);
                tile_type.push(ty);
                parent.push(f);
            }
        }
    }
    let n = twin.len();
    let map = CombinatorialMap::from_faces(&faces, twin, kind)?;
    let mut corner = t.corner.clone();
    corner.resize(n, false);
    Ok(Tiling {
        stage: t.stage,
        seed: t.seed,
        mode: Mode::Replacement,
        map,
        class,
        tile_type,
        type_names: t.type_names.clone(),
        root,
        parent,
        loaded,
        corner,
        outer,
    })
}

/// The boundary of the cover after `depth` rounds of gluing, built
/// directly from polyhedron copies without the subdivision rule.
pub fn replacement_evolve(complex: &TruncatedComplex, depth: u32) -> Result<Tiling, TilingError> {
    replacement_evolve_stats(complex, depth).map(|(t, _)| t)
}

pub fn replacement_evolve_stats(
    complex: &TruncatedComplex,
    depth: u32,
) -> Result<(Tiling, EvolveStats), TilingError> {
    let v = Views::new(complex);
    let (sheet, stats) = evolve(&v, depth)?;
    let m = &sheet.map;
    let class = sheet
        .label
        .iter()
        .map(|l| match *l {
            Label::Region { tface, .. } if v.cw[tface as usize] => FaceClass::Clockwise,
            Label::Region { .. } => FaceClass::Counterclockwise,
            Label::Trunc => FaceClass::Truncation,
            Label::Outer => FaceClass::Outer,
        })
        .collect();
    let nf = m.face_count();
    let tiling = Tiling {
        stage: depth,
        seed: Seed::Sphere,
        mode: Mode::Replacement,
        class,
        tile_type: vec![UNTYPED; nf],
        type_names: Vec::new(),
        root: (0..nf as u32).map(|f| m.face(f)[0]).collect(),
        parent: sheet.parent.clone(),
        loaded: (0..m.dart_count() as Dart).map(|d| sheet.is_loaded(d)).collect(),
        corner: vec![false; m.dart_count()],
        outer: None,
        map: sheet.map,
    };
    Ok((tiling, stats))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoOutcome {
    pub isomorphic: bool,
    /// Dart bijection from the first tiling to the second.
    pub witness: Option<Vec<Dart>>,
}

/// Orientation-preserving isomorphism respecting face classes and edge kinds.
pub fn maps_isomorphic(a: &Tiling, b: &Tiling) -> IsoOutcome {
    let (la, lb) = (a.labels(), b.labels());
    let witness = isomorphism(
        Labelled { map: &a.map, face_label: &la },
        Labelled { map: &b.map, face_label: &lb },
    );
    IsoOutcome { isomorphic: witness.is_some(), witness }
}

/// Tile counts per type.
pub fn tile_census(t: &Tiling) -> Vec<u64> {
    let mut counts = vec![0u64; t.type_names.len()];
    for f in t.tiles() {
        let ty = t.tile_type[f as usize];
        if ty != UNTYPED {
            counts[ty as usize] += 1;
        }
    }
    counts
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSeries {
    pub type_names: Vec<String>,
    /// `counts[stage][type]`.
    pub counts: Vec<Vec<u64>>,
}

impl CensusSeries {
    pub fn totals(&self) -> Vec<u64> {
        self.counts.iter().map(|c| c.iter().sum()).collect()
    }

    /// Totals over non-terminal types.
    pub fn non_terminal(&self, rule: &SubdivisionRule) -> Vec<u64> {
        self.counts
            .iter()
            .map(|c| c.iter().zip(&rule.types).filter(|(_, t)| !t.is_terminal()).map(|(n, _)| n).sum())
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("stage,type,count\n");
        for (stage, row) in self.counts.iter().enumerate() {
            for (name, n) in self.type_names.iter().zip(row) {
                out.push_str(&format!("{stage},{name},{n}\n"));
            }
        }
        out
    }
}

/// Census of stages `0..=stages` by explicit subdivision.
pub fn census_series(rule: &SubdivisionRule, seed: Seed, stages: u32) -> Result<CensusSeries, TilingError> {
    let mut t = initial_tiling(rule, seed)?;
    let mut series = CensusSeries { type_names: t.type_names.clone(), counts: vec![tile_census(&t)] };
    for _ in 0..stages {
        t = subdivide(rule, &t)?;
        series.counts.push(tile_census(&t));
    }
    Ok(series)
}

/// Census of stages `0..=stages` from child-type counts alone; only
/// totals, no tiling is built. Counts saturate at `u64::MAX`.
pub fn census_by_counts(rule: &SubdivisionRule, seed: Seed, stages: u32) -> Result<CensusSeries, TilingError> {
    let t = initial_tiling(rule, seed)?;
    let n = rule.types.len();
    let mut children = vec![vec![0u64; n]; n];
    for (i, ty) in rule.types.iter().enumerate() {
        for ch in &ty.pattern.children {
            children[i][ch.tile_type as usize] += 1;
        }
    }
    let mut cur = tile_census(&t);
    let mut counts = vec![cur.clone()];
    for _ in 0..stages {
        let mut next = vec![0u64; n];
        for (i, &c) in cur.iter().enumerate() {
            for (j, &k) in children[i].iter().enumerate() {
                next[j] = next[j].saturating_add(c.saturating_mul(k));
            }
        }
        counts.push(next.clone());
        cur = next;
    }
    Ok(CensusSeries { type_names: t.type_names, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link_diagram::{build_planar_map, parse_pd_code};
    use crate::polyhedral::{checkerboard, truncate};
    use crate::rule::build_rule;

    const HOPF: &str = "X 1,4,2,3 / X 3,2,4,1";
    const TREFOIL: &str = "X 1,4,2,5 / X 3,6,4,1 / X 5,2,6,3";

    fn setup(pd: &str) -> (TruncatedComplex, SubdivisionRule) {
        let m = build_planar_map(&parse_pd_code(pd).unwrap()).unwrap();
        let c = truncate(&m, &checkerboard(&m).unwrap()).unwrap();
        let r = build_rule(&c).unwrap();
        (c, r)
    }

    #[test]
    fn hopf_seeds() {
        let (_, rule) = setup(HOPF);
        let s = initial_tiling(&rule, Seed::Sphere).unwrap();
        assert_eq!(s.tile_count(), 6);
        assert_eq!(s.euler_characteristic(), 2);
        let a = initial_tiling(&rule, parse_seed(&rule, "A").unwrap()).unwrap();
        assert_eq!(a.tile_count(), 1);
        assert_eq!(a.map.face(a.outer.unwrap()).len(), 4);
        assert_eq!(a.euler_characteristic(), 1);
        assert!(parse_seed(&rule, "Q").is_err());
    }

    #[test]
    fn hopf_tile_a_first_stage() {
        let (_, rule) = setup(HOPF);
        let a = initial_tiling(&rule, Seed::Tile { tile_type: 0 }).unwrap();
        let (s1, trace) = subdivide_traced(&rule, &a).unwrap();
        assert_eq!(s1.tile_count(), rule.types[0].pattern.children.len());
        assert_eq!(s1.euler_characteristic(), 1);
        assert_eq!(refinement_violations(&a, &s1, &trace), 0);
        // boundary: two link edges in three pieces, two truncation edges
        assert_eq!(s1.map.face(s1.outer.unwrap()).len(), 8);
    }

    #[test]
    fn truncation_tiles_are_fixed() {
        let (_, rule) = setup(TREFOIL);
        let t = initial_tiling(&rule, Seed::Tile { tile_type: rule.truncation_type() }).unwrap();
        let s = subdivide_n(&rule, &t, 3).unwrap();
        assert!(maps_isomorphic(&t, &s).isomorphic);
    }

    #[test]
    fn hopf_stage_one_matches_oracle() {
        let (c, rule) = setup(HOPF);
        let s = subdivide(&rule, &initial_tiling(&rule, Seed::Sphere).unwrap()).unwrap();
        let collapsed = collapse_merged_edges(&rule, &s).unwrap();
        let oracle = replacement_evolve(&c, 1).unwrap();
        assert!(maps_isomorphic(&collapsed, &oracle).isomorphic);
        let s0 = initial_tiling(&rule, Seed::Sphere).unwrap();
        let c0 = collapse_merged_edges(&rule, &s0).unwrap();
        assert!(maps_isomorphic(&c0, &replacement_evolve(&c, 0).unwrap()).isomorphic);
    }

    #[test]
    fn census_paths_agree() {
        let (_, rule) = setup(TREFOIL);
        for seed in [Seed::Sphere, Seed::Tile { tile_type: 0 }] {
            let a = census_series(&rule, seed, 4).unwrap();
            let b = census_by_counts(&rule, seed, 4).unwrap();
            assert_eq!(a, b);
        }
        let csv = census_series(&rule, Seed::Sphere, 1).unwrap().to_csv();
        assert!(csv.starts_with("stage,type,count\n0,A,"));
    }
}
