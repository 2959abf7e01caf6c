//! Replacement rules and their conversion to subdivision rules.
//!
//! A tile is described by a [`TileState`]: a region or a loaded pair of
//! regions, together with the parity of the polyhedron copy that will be
//! glued onto it. Gluing that copy onto a model disk gives the replacement
//! pattern. The subdivision pattern is obtained by pushing every clockwise
//! edge subregion (a mover) out over its loaded edge, and by splitting the
//! loaded edge of every counterclockwise edge subregion (a receiver) into
//! the pieces its neighbour's mover will deposit there. A receiver becomes
//! a loaded-pair tile.
//!
//! Tile types are the classes of the greatest bisimulation on states: two
//! states are equivalent under a rotation when their subdivision patterns
//! are isomorphic with matching boundary pieces and every pair of
//! corresponding children is again equivalent.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{pair_model, region_model, GluingError, Label, Sheet, Unit, Views};
use crate::map::{CombinatorialMap, Dart, EdgeKind, NONE};
use crate::polyhedral::{FaceRole, Orientation, TruncatedComplex};

/// A tile of the growing cover, up to the choice of root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum TileState {
    /// A region to be covered by a copy of parity `cover`.
    Region { cover: u8, face: u32 },
    /// A clockwise and a counterclockwise region sharing a loaded edge,
    /// covered together by one copy of parity `cover`.
    Pair { cover: u8, cw: u32, ccw: u32 },
}

impl TileState {
    pub fn cover(&self) -> u8 {
        match *self {
            TileState::Region { cover, .. } | TileState::Pair { cover, .. } => cover,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("face {0} is a truncation square")]
    TruncationSquare(u32),
    #[error("regions {0} and {1} have the same orientation")]
    SameOrientation(u32, u32),
    #[error("tile type enumeration exceeded the budget of {0} states")]
    BudgetExceeded(usize),
    #[error("hazard: {0}")]
    Hazard(Hazard),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Gluing(#[from] GluingError),
}

/// Role of a face in a replacement pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubregionClass {
    Outer,
    Truncation,
    /// Meets the parent boundary in exactly one edge, through `dart`.
    Edge { dart: Dart },
    Interior,
    /// Meets the parent boundary in something other than one link edge.
    Irregular,
}

/// The disk obtained by gluing one polyhedron onto a tile.
#[derive(Clone, Debug)]
pub struct ReplacementPattern {
    pub state: TileState,
    pub classes: Vec<SubregionClass>,
    pub orientation: Vec<Option<Orientation>>,
    pub outer_face: u32,
    sheet: Sheet,
    boundary_len: usize,
}

impl ReplacementPattern {
    pub fn map(&self) -> &CombinatorialMap {
        &self.sheet.map
    }

    /// Faces other than the outer face.
    pub fn subtile_count(&self) -> usize {
        self.sheet.map.face_count() - 1
    }

    pub fn count(&self, class: fn(&SubregionClass) -> bool) -> usize {
        self.classes.iter().filter(|c| class(c)).count()
    }

    /// Parent boundary edge index carried by an outer dart.
    pub fn parent_edge(&self, outer_dart: Dart) -> Option<u32> {
        let t = self.sheet.tag[outer_dart as usize];
        (t != NONE).then_some(t)
    }

    /// Link edges on the parent boundary; after the stage each has been
    /// identified three times.
    pub fn loaded(&self, d: Dart) -> bool {
        let m = &self.sheet.map;
        m.kind(d) == EdgeKind::Link
            && (m.face_of(d) == self.outer_face || m.face_of(m.twin(d)) == self.outer_face)
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary_len
    }
}

fn classify(v: &Views, sheet: &Sheet) -> (Vec<SubregionClass>, Vec<Option<Orientation>>, u32) {
    let m = &sheet.map;
    let outer = (0..m.face_count() as u32)
        .find(|&f| sheet.label[f as usize] == Label::Outer)
        .expect("pattern has an outer face");
    let mut classes = Vec::with_capacity(m.face_count());
    let mut orient = Vec::with_capacity(m.face_count());
    for f in 0..m.face_count() as u32 {
        let (class, o) = match sheet.label[f as usize] {
            Label::Outer => (SubregionClass::Outer, None),
            Label::Trunc => (SubregionClass::Truncation, None),
            Label::Region { tface, .. } => {
                let touching: Vec<Dart> = m
                    .face(f)
                    .iter()
                    .copied()
                    .filter(|&d| m.face_of(m.twin(d)) == outer)
                    .collect();
                let class = match touching.as_slice() {
                    [] => SubregionClass::Interior,
                    [d] if m.kind(*d) == EdgeKind::Link => SubregionClass::Edge { dart: *d },
                    _ => SubregionClass::Irregular,
                };
                let o = if v.cw[tface as usize] {
                    Orientation::Clockwise
                } else {
                    Orientation::Counterclockwise
                };
                (class, Some(o))
            }
        };
        classes.push(class);
        orient.push(o);
    }
    (classes, orient, outer)
}

fn model_of(v: &Views, state: TileState) -> Result<(Sheet, Vec<Unit>), GluingError> {
    Ok(match state {
        TileState::Region { cover, face } => (region_model(v, cover, face), vec![Unit::Single(0)]),
        TileState::Pair { cover, cw, ccw } => (pair_model(v, cover, cw, ccw)?, vec![Unit::Pair(0, 1)]),
    })
}

fn build_pattern(v: &Views, state: TileState) -> Result<ReplacementPattern, GluingError> {
    let (model, units) = model_of(v, state)?;
    let boundary_len = match state {
        TileState::Region { face, .. } => v.region_len(face),
        TileState::Pair { cw, ccw, .. } => v.region_len(cw) + v.region_len(ccw) - 2,
    };
    let sheet = model.cover(v, &units)?;
    let (classes, orientation, outer_face) = classify(v, &sheet);
    Ok(ReplacementPattern { state, classes, orientation, outer_face, sheet, boundary_len })
}

fn check_region(complex: &TruncatedComplex, r: u32) -> Result<(), RuleError> {
    if r as usize >= complex.map().face_count() || complex.role(r) != FaceRole::Region {
        return Err(RuleError::TruncationSquare(r));
    }
    Ok(())
}

/// Pattern of one polyhedron glued onto a region of the initial polyhedron.
pub fn single_region_pattern(
    complex: &TruncatedComplex,
    region: u32,
) -> Result<ReplacementPattern, RuleError> {
    check_region(complex, region)?;
    let v = Views::new(complex);
    Ok(build_pattern(&v, TileState::Region { cover: 1, face: region })?)
}

/// Pattern of one polyhedron glued onto two adjacent regions of the
/// initial polyhedron treated as a loaded pair.
pub fn loaded_pair_pattern(
    complex: &TruncatedComplex,
    r1: u32,
    r2: u32,
) -> Result<ReplacementPattern, RuleError> {
    check_region(complex, r1)?;
    check_region(complex, r2)?;
    if complex.is_clockwise(r1) == complex.is_clockwise(r2) {
        return Err(RuleError::SameOrientation(r1, r2));
    }
    let (cw, ccw) = if complex.is_clockwise(r1) { (r1, r2) } else { (r2, r1) };
    let v = Views::new(complex);
    Ok(build_pattern(&v, TileState::Pair { cover: 1, cw, ccw })?)
}

/// Child states of a replacement pattern at the next stage: interior and
/// edge subregions, the latter paired across their loaded edge with the
/// face the next copy presents there.
fn replacement_children(v: &Views, p: &ReplacementPattern) -> Vec<TileState> {
    let next = 1 - p.state.cover();
    let mut out = Vec::new();
    for (f, class) in p.classes.iter().enumerate() {
        let Label::Region { tface: h, .. } = p.sheet.label[f] else { continue };
        match *class {
            SubregionClass::Edge { dart } => {
                let j = p.sheet.pos[dart as usize] as usize;
                let other = v.across(next, h, j);
                out.push(if v.cw[h as usize] {
                    TileState::Pair { cover: next, cw: h, ccw: other }
                } else {
                    TileState::Pair { cover: next, cw: other, ccw: h }
                });
            }
            _ => out.push(TileState::Region { cover: next, face: h }),
        }
    }
    out
}

/// All states reachable from the initial polyhedron with their patterns.
#[derive(Clone, Debug)]
pub struct ReplacementRule {
    views: Views,
    pub states: Vec<TileState>,
    pub patterns: Vec<ReplacementPattern>,
    /// State of each region of the initial polyhedron.
    pub seed_states: Vec<TileState>,
    regions: usize,
}

pub const DEFAULT_STATE_BUDGET: usize = 100_000;

/// Enumerates the states reachable from the initial polyhedron.
pub fn derive_replacement_rule(complex: &TruncatedComplex) -> Result<ReplacementRule, RuleError> {
    derive_replacement_rule_with(complex, DEFAULT_STATE_BUDGET)
}

pub fn derive_replacement_rule_with(
    complex: &TruncatedComplex,
    budget: usize,
) -> Result<ReplacementRule, RuleError> {
    let v = Views::new(complex);
    let seed_states: Vec<TileState> = (0..complex.region_count() as u32)
        .map(|g| TileState::Region { cover: 1, face: g })
        .collect();
    let mut seen: HashSet<TileState> = seed_states.iter().copied().collect();
    let mut queue: VecDeque<TileState> = seed_states.iter().copied().collect();
    let mut found = Vec::new();
    while let Some(s) = queue.pop_front() {
        if found.len() >= budget {
            return Err(RuleError::BudgetExceeded(budget));
        }
        let p = build_pattern(&v, s)?;
        for c in replacement_children(&v, &p) {
            if seen.insert(c) {
                queue.push_back(c);
            }
        }
        found.push((s, p));
    }
    found.sort_by_key(|(s, _)| *s);
    let (states, patterns) = found.into_iter().unzip();
    Ok(ReplacementRule { views: v, states, patterns, seed_states, regions: complex.region_count() })
}

impl ReplacementRule {
    pub fn index_of(&self, s: TileState) -> Option<usize> {
        self.states.binary_search(&s).ok()
    }

    pub fn is_clockwise(&self, region: u32) -> bool {
        self.views.cw[region as usize]
    }

    pub fn region_count(&self) -> usize {
        self.regions
    }

    pub fn crossing_count(&self) -> usize {
        self.views.crossings
    }

}

/// A violated precondition of the mover construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "hazard", rename_all = "snake_case")]
pub enum Hazard {
    /// A subregion meets the parent boundary in two or more edges, or in a
    /// truncation edge only.
    TwoLoadedEdges { state: TileState, face: u32 },
    MoversShareEdge { state: TileState, faces: (u32, u32) },
    MoversShareVertex { state: TileState, faces: (u32, u32) },
    InteriorValence { state: TileState, dart: Dart, valence: usize },
    /// A receiver whose partner across the loaded edge is not clockwise.
    ReceiverWithoutMover { state: TileState, face: u32 },
    /// A boundary link edge met by something other than one edge subregion.
    UnassignedLoadedEdge { state: TileState, edge: u32 },
}

impl std::fmt::Display for Hazard {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", serde_json::to_string(self).expect("serializable"))
    }
}

/// Outcome of checking every pattern for the mover hazards.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HazardReport {
    pub patterns: usize,
    pub movers: usize,
    pub receivers: usize,
    pub interior_vertices: usize,
    /// Truncation edges carried along with moved link edges.
    pub truncation_edges_moved: usize,
    pub hazards: Vec<Hazard>,
}

impl HazardReport {
    pub fn is_clean(&self) -> bool {
        self.hazards.is_empty()
    }
}

/// Reference to a child in a local pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalTwin {
    Internal(u32),
    /// Piece `piece` of parent edge `edge`.
    Boundary { edge: u32, piece: u32 },
}

/// A tile's subdivision: local darts, child faces and boundary pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildPattern {
    pub face_next: Vec<u32>,
    pub twin: Vec<LocalTwin>,
    pub kind: Vec<EdgeKind>,
    /// Child faces; each cycle starts at the child's root.
    pub children: Vec<ChildTile>,
    /// Per parent edge: local darts along it, in the parent edge's direction.
    pub pieces: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildTile {
    /// Tile type id (or state index while the rule is assembled).
    pub tile_type: u32,
    pub cycle: Vec<u32>,
}

impl ChildPattern {
    pub fn dart_count(&self) -> usize {
        self.face_next.len()
    }

    /// Child index and offset within the child's cycle, per local dart.
    pub fn locate(&self) -> Vec<(u32, u32)> {
        let mut out = vec![(NONE, NONE); self.dart_count()];
        for (c, ch) in self.children.iter().enumerate() {
            for (i, &d) in ch.cycle.iter().enumerate() {
                out[d as usize] = (c as u32, i as u32);
            }
        }
        out
    }
}

/// Kind of a subdivision tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TileKind {
    Clockwise,
    Counterclockwise,
    Pair,
    Truncation,
}

/// Boundary edge descriptor: parent kind and the kinds of its pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeSignature {
    pub kind: EdgeKind,
    pub pieces: Vec<EdgeKind>,
}

struct StatePattern {
    kind: TileKind,
    boundary: Vec<EdgeSignature>,
    /// Length of the clockwise part of a pair tile.
    split: Option<u32>,
    pattern: ChildPattern,
}

fn state_kind(v: &Views, s: TileState) -> TileKind {
    match s {
        TileState::Pair { .. } => TileKind::Pair,
        TileState::Region { face, .. } if v.cw[face as usize] => TileKind::Clockwise,
        TileState::Region { .. } => TileKind::Counterclockwise,
    }
}

fn chain_kind(k: usize) -> EdgeKind {
    if k % 2 == 0 {
        EdgeKind::Truncation
    } else {
        EdgeKind::Link
    }
}

/// Turns a replacement pattern into a subdivision pattern, collecting
/// hazards. Child tiles refer to states through `intern`.
fn subdivision_pattern(
    v: &Views,
    p: &ReplacementPattern,
    report: &mut HazardReport,
    intern: &mut dyn FnMut(TileState) -> u32,
) -> Option<StatePattern> {
    let state = p.state;
    let s = &p.sheet;
    let m = &s.map;
    let outer = p.outer_face;
    let next = 1 - state.cover();
    let nf = m.face_count();
    let hazards_before = report.hazards.len();
    report.patterns += 1;

    let is_mover = |f: usize| {
        matches!(p.classes[f], SubregionClass::Edge { .. })
            && p.orientation[f] == Some(Orientation::Clockwise)
    };
    let is_receiver = |f: usize| {
        matches!(p.classes[f], SubregionClass::Edge { .. })
            && p.orientation[f] == Some(Orientation::Counterclockwise)
    };

    for f in 0..nf {
        if p.classes[f] == SubregionClass::Irregular {
            report.hazards.push(Hazard::TwoLoadedEdges { state, face: f as u32 });
        }
        if is_mover(f) {
            report.movers += 1;
            for &d in m.face(f as u32) {
                let g = m.face_of(m.twin(d)) as usize;
                if g != f && is_mover(g) && f < g {
                    report.hazards.push(Hazard::MoversShareEdge {
                        state,
                        faces: (f as u32, g as u32),
                    });
                }
                if m.kind(d) == EdgeKind::Truncation {
                    report.truncation_edges_moved += 1;
                }
            }
        }
        if is_receiver(f) {
            report.receivers += 1;
        }
    }
    // every boundary link edge must be met by an edge subregion
    for &o in m.face(outer) {
        let f = m.face_of(m.twin(o)) as usize;
        if m.kind(o) == EdgeKind::Link && !matches!(p.classes[f], SubregionClass::Edge { .. }) {
            report.hazards.push(Hazard::UnassignedLoadedEdge { state, edge: s.tag[o as usize] });
        }
    }

    let (vid, nv) = m.vertex_ids();
    let mut on_boundary = vec![false; nv];
    for &o in m.face(outer) {
        on_boundary[vid[o as usize] as usize] = true;
    }
    let mut vseen = vec![false; nv];
    for d in 0..m.dart_count() as Dart {
        let x = vid[d as usize] as usize;
        if on_boundary[x] || std::mem::replace(&mut vseen[x], true) {
            continue;
        }
        report.interior_vertices += 1;
        let around = m.vertex_darts(d);
        if around.len() != 3 {
            report.hazards.push(Hazard::InteriorValence { state, dart: d, valence: around.len() });
        }
        let movers: Vec<u32> = around
            .iter()
            .map(|&y| m.face_of(y))
            .filter(|&f| is_mover(f as usize))
            .collect();
        for i in 0..movers.len() {
            for j in i + 1..movers.len() {
                if movers[i] != movers[j] {
                    report.hazards.push(Hazard::MoversShareVertex {
                        state,
                        faces: (movers[i].min(movers[j]), movers[i].max(movers[j])),
                    });
                }
            }
        }
    }

    // receivers: the loaded edge becomes a chain matching the partner mover
    let mut chain_len = vec![0usize; nf];
    let mut partner = vec![NONE; nf];
    for f in 0..nf {
        if !is_receiver(f) {
            continue;
        }
        let SubregionClass::Edge { dart } = p.classes[f] else { unreachable!() };
        let Label::Region { tface: h, .. } = s.label[f] else { unreachable!() };
        let g = v.across(next, h, s.pos[dart as usize] as usize);
        if g == NONE || !v.cw[g as usize] {
            report.hazards.push(Hazard::ReceiverWithoutMover { state, face: f as u32 });
            continue;
        }
        partner[f] = g;
        chain_len[f] = v.region_len(g) - 1;
    }
    if report.hazards.len() > hazards_before {
        return None;
    }

    // local numbering: kept faces in order, receivers' loaded darts expanded
    let mut local = vec![NONE; m.dart_count()];
    let mut chain_first: HashMap<Dart, u32> = HashMap::new();
    let mut face_cycles: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut kinds: Vec<EdgeKind> = Vec::new();
    let mut next_local = 0u32;
    for f in 0..nf {
        if f as u32 == outer || is_mover(f) {
            continue;
        }
        let mut cycle = Vec::new();
        for &d in m.face(f as u32) {
            if is_receiver(f) && matches!(p.classes[f], SubregionClass::Edge { dart } if dart == d) {
                chain_first.insert(d, next_local);
                for k in 0..chain_len[f] {
                    cycle.push(next_local);
                    kinds.push(chain_kind(k));
                    next_local += 1;
                }
            } else {
                local[d as usize] = next_local;
                cycle.push(next_local);
                kinds.push(m.kind(d));
                next_local += 1;
            }
        }
        face_cycles.push((f, cycle));
    }
    let n_local = next_local as usize;

    // new outer boundary as (local dart on the inside, parent edge) in
    // outer-cycle order
    let mut outer_list: Vec<(u32, u32)> = Vec::new();
    for &o in m.face(outer) {
        let t = s.tag[o as usize];
        let x = m.twin(o);
        let f = m.face_of(x) as usize;
        if is_mover(f) {
            let mut y = m.face_next(x);
            while y != x {
                outer_list.push((local[m.twin(y) as usize], t));
                y = m.face_next(y);
            }
        } else if is_receiver(f) {
            let first = chain_first[&x];
            for k in (0..chain_len[f] as u32).rev() {
                outer_list.push((first + k, t));
            }
        } else {
            outer_list.push((local[x as usize], t));
        }
    }
    let l = p.boundary_len;
    let Some(start) = (0..outer_list.len())
        .find(|&i| outer_list[i].1 != outer_list[(i + outer_list.len() - 1) % outer_list.len()].1)
        .or((l == 1).then_some(0))
    else {
        return None;
    };
    outer_list.rotate_left(start);
    let mut pieces: Vec<Vec<u32>> = vec![Vec::new(); l];
    let mut last = NONE;
    for &(x, t) in &outer_list {
        if t != last && !pieces[t as usize].is_empty() {
            // group not contiguous
            return None;
        }
        pieces[t as usize].push(x);
        last = t;
    }
    let mut twin = vec![LocalTwin::Internal(NONE); n_local];
    for (k, group) in pieces.iter_mut().enumerate() {
        group.reverse();
        for (j, &x) in group.iter().enumerate() {
            twin[x as usize] = LocalTwin::Boundary { edge: k as u32, piece: j as u32 };
        }
    }
    for d in 0..m.dart_count() {
        let x = local[d];
        if x == NONE || twin[x as usize] != LocalTwin::Internal(NONE) {
            continue;
        }
        let y = local[m.twin(d as Dart) as usize];
        twin[x as usize] = LocalTwin::Internal(y);
    }
    if twin.contains(&LocalTwin::Internal(NONE)) {
        return None;
    }
    let mut face_next = vec![0u32; n_local];
    let mut children = Vec::with_capacity(face_cycles.len());
    for (f, cycle) in face_cycles {
        for (i, &x) in cycle.iter().enumerate() {
            face_next[x as usize] = cycle[(i + 1) % cycle.len()];
        }
        let (tile_type, root) = match s.label[f] {
            Label::Trunc => (NONE, 0),
            Label::Region { tface: h, .. } if is_receiver(f) => {
                let st = TileState::Pair { cover: next, cw: partner[f], ccw: h };
                let SubregionClass::Edge { dart } = p.classes[f] else { unreachable!() };
                let first = chain_first[&dart];
                (intern(st), cycle.iter().position(|&x| x == first).unwrap())
            }
            Label::Region { tface: h, .. } => {
                let st = TileState::Region { cover: next, face: h };
                let root = m.face(f as u32).iter().position(|&d| s.pos[d as usize] == 0);
                (intern(st), root.expect("region has a position-0 dart"))
            }
            Label::Outer => unreachable!(),
        };
        let mut cycle = cycle;
        cycle.rotate_left(root);
        children.push(ChildTile { tile_type, cycle });
    }

    // boundary signature from the model tile
    let model = &s.map;
    let outer_cycle = model.face(outer);
    let mut parent_kind = vec![EdgeKind::Link; l];
    for &o in outer_cycle {
        let t = s.tag[o as usize];
        if t != NONE {
            parent_kind[t as usize] = model.kind(o);
        }
    }
    let boundary = (0..l)
        .map(|k| EdgeSignature {
            kind: parent_kind[k],
            pieces: pieces[k].iter().map(|&x| kinds[x as usize]).collect(),
        })
        .collect();
    let split = match state {
        TileState::Pair { cw, .. } => Some(v.region_len(cw) as u32 - 1),
        _ => None,
    };
    Some(StatePattern {
        kind: state_kind(v, state),
        boundary,
        split,
        pattern: ChildPattern { face_next, twin, kind: kinds, children, pieces },
    })
}

/// Runs the mover construction on every pattern and reports hazards.
pub fn certify_hazards(rule: &ReplacementRule) -> HazardReport {
    let mut report = HazardReport::default();
    let mut dummy = |_s: TileState| 0u32;
    for p in &rule.patterns {
        subdivision_pattern(&rule.views, p, &mut report, &mut dummy);
    }
    report
}

/// A subdivision tile type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileType {
    pub id: u32,
    pub name: String,
    pub kind: TileKind,
    pub boundary: Vec<EdgeSignature>,
    /// For pairs: number of boundary edges in the clockwise part, which
    /// starts at the root.
    pub split: Option<u32>,
    pub pattern: ChildPattern,
    /// States of the replacement rule merged into this type.
    pub states: Vec<TileState>,
}

impl TileType {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn is_terminal(&self) -> bool {
        self.kind == TileKind::Truncation
    }
}

/// A tile of the initial polyhedron: its type and root dart in `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedTile {
    pub tile_type: u32,
    pub cycle: Vec<Dart>,
}

/// A finite subdivision rule with boundary.
#[derive(Clone, Debug)]
pub struct SubdivisionRule {
    pub types: Vec<TileType>,
    /// Faces of the initial polyhedron in order, with types and rooted cycles.
    pub sphere: Vec<SeedTile>,
    sphere_map: CombinatorialMap,
    pub hazards: HazardReport,
    pub state_types: Vec<(TileState, u32, u32)>,
}

impl SubdivisionRule {
    pub fn truncation_type(&self) -> u32 {
        (self.types.len() - 1) as u32
    }

    pub fn type_by_name(&self, name: &str) -> Option<u32> {
        self.types.iter().find(|t| t.name == name).map(|t| t.id)
    }

    pub fn non_terminal_count(&self) -> usize {
        self.types.iter().filter(|t| !t.is_terminal()).count()
    }

    pub fn sphere_map(&self) -> &CombinatorialMap {
        &self.sphere_map
    }
}

fn type_name(i: usize) -> String {
    let mut s = String::new();
    let mut i = i;
    loop {
        s.insert(0, (b'A' + (i % 26) as u8) as char);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s
}

/// Rooted isomorphism of two state patterns under boundary rotation `r`.
/// Returns the child correspondences `(child state, child state, offset)`,
/// with `NONE` states for truncation squares.
fn pattern_iso(a: &StatePattern, b: &StatePattern, r: usize) -> Option<Vec<(u32, u32, u32)>> {
    let (pa, pb) = (&a.pattern, &b.pattern);
    let l = a.boundary.len();
    if pa.dart_count() != pb.dart_count() || pa.children.len() != pb.children.len() {
        return None;
    }
    let mut f = vec![NONE; pa.dart_count()];
    let mut queue = VecDeque::new();
    for k in 0..l {
        let (x, y) = (&pa.pieces[k], &pb.pieces[(k + r) % l]);
        if x.len() != y.len() {
            return None;
        }
        for (&u, &w) in x.iter().zip(y) {
            f[u as usize] = w;
            queue.push_back(u);
        }
    }
    let mut used = vec![false; pb.dart_count()];
    for &u in &queue {
        if std::mem::replace(&mut used[f[u as usize] as usize], true) {
            return None;
        }
    }
    while let Some(u) = queue.pop_front() {
        let w = f[u as usize];
        if pa.kind[u as usize] != pb.kind[w as usize] {
            return None;
        }
        let mut step = |x: u32, y: u32, queue: &mut VecDeque<u32>| -> bool {
            match f[x as usize] {
                NONE => {
                    if std::mem::replace(&mut used[y as usize], true) {
                        return false;
                    }
                    f[x as usize] = y;
                    queue.push_back(x);
                    true
                }
                z => z == y,
            }
        };
        if !step(pa.face_next[u as usize], pb.face_next[w as usize], &mut queue) {
            return None;
        }
        match (pa.twin[u as usize], pb.twin[w as usize]) {
            (LocalTwin::Internal(x), LocalTwin::Internal(y)) => {
                if !step(x, y, &mut queue) {
                    return None;
                }
            }
            (LocalTwin::Boundary { edge: e1, piece: p1 }, LocalTwin::Boundary { edge: e2, piece: p2 }) => {
                if (e1 as usize + r) % l != e2 as usize || p1 != p2 {
                    return None;
                }
            }
            _ => return None,
        }
    }
    if f.contains(&NONE) {
        return None;
    }
    let loc_b = pb.locate();
    let mut out = Vec::with_capacity(pa.children.len());
    for ch in &pa.children {
        let (cb, off) = loc_b[f[ch.cycle[0] as usize] as usize];
        let other = &pb.children[cb as usize];
        if other.cycle.len() != ch.cycle.len() || (ch.tile_type == NONE) != (other.tile_type == NONE) {
            return None;
        }
        out.push((ch.tile_type, other.tile_type, off));
    }
    Some(out)
}

/// Builds the subdivision rule: hazard certification, state patterns,
/// then tile types as bisimulation classes.
pub fn to_subdivision_rule(replacement: &ReplacementRule) -> Result<SubdivisionRule, RuleError> {
    let v = &replacement.views;
    let mut report = HazardReport::default();
    let mut patterns: Vec<StatePattern> = Vec::with_capacity(replacement.states.len());
    let mut missing = Vec::new();
    for p in &replacement.patterns {
        let mut intern = |s: TileState| match replacement.index_of(s) {
            Some(i) => i as u32,
            None => {
                missing.push(s);
                NONE
            }
        };
        match subdivision_pattern(v, p, &mut report, &mut intern) {
            Some(sp) => patterns.push(sp),
            None => {
                let h = report.hazards.first().cloned().ok_or_else(|| {
                    RuleError::Internal(format!("malformed pattern for {:?}", p.state))
                })?;
                return Err(RuleError::Hazard(h));
            }
        }
    }
    if let Some(s) = missing.first() {
        return Err(RuleError::Internal(format!("child state {s:?} missing from the rule")));
    }
    if let Some(h) = report.hazards.first() {
        return Err(RuleError::Hazard(h.clone()));
    }

    // candidate triples (a, b, r): a's edge k is b's edge k + r
    let n = patterns.len();
    let mut by_shape: BTreeMap<(TileKind, usize, Option<u32>), Vec<usize>> = BTreeMap::new();
    for (i, sp) in patterns.iter().enumerate() {
        by_shape.entry((sp.kind, sp.boundary.len(), sp.split)).or_default().push(i);
    }
    let mut triples: HashMap<(u32, u32, u32), Vec<(u32, u32, u32)>> = HashMap::new();
    for group in by_shape.values() {
        for &a in group {
            for &b in group {
                let (sa, sb) = (&patterns[a], &patterns[b]);
                let l = sa.boundary.len();
                let rotations: Vec<usize> = if sa.kind == TileKind::Pair { vec![0] } else { (0..l).collect() };
                for r in rotations {
                    if (0..l).any(|k| sa.boundary[k] != sb.boundary[(k + r) % l]) {
                        continue;
                    }
                    if let Some(req) = pattern_iso(sa, sb, r) {
                        triples.insert((a as u32, b as u32, r as u32), req);
                    }
                }
            }
        }
    }
    // greatest fixpoint
    loop {
        let dead: Vec<(u32, u32, u32)> = triples
            .iter()
            .filter(|(_, req)| {
                req.iter().any(|&(x, y, o)| x != NONE && !triples.contains_key(&(x, y, o)))
            })
            .map(|(k, _)| *k)
            .collect();
        if dead.is_empty() {
            break;
        }
        for k in dead {
            triples.remove(&k);
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b, _) in triples.keys() {
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    // classes ordered clockwise regions, counterclockwise regions, pairs
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        classes.entry(root).or_default().push(i);
    }
    let mut class_list: Vec<Vec<usize>> = classes.into_values().collect();
    class_list.sort_by_key(|c| (patterns[c[0]].kind, c[0]));
    let mut type_of = vec![0u32; n];
    let mut align = vec![0u32; n];
    for (t, members) in class_list.iter().enumerate() {
        let rep = members[0] as u32;
        for &s in members {
            type_of[s] = t as u32;
            let a = (0..patterns[s].boundary.len() as u32)
                .find(|&r| triples.contains_key(&(rep, s as u32, r)))
                .ok_or_else(|| RuleError::Internal(format!("state {s} not aligned to {rep}")))?;
            align[s] = a;
        }
    }
    let trunc_id = class_list.len() as u32;
    let mut types: Vec<TileType> = Vec::with_capacity(class_list.len() + 1);
    for (t, members) in class_list.iter().enumerate() {
        let rep = &patterns[members[0]];
        let mut pattern = rep.pattern.clone();
        for ch in &mut pattern.children {
            if ch.tile_type == NONE {
                ch.tile_type = trunc_id;
            } else {
                let s = ch.tile_type as usize;
                ch.cycle.rotate_left(align[s] as usize);
                ch.tile_type = type_of[s];
            }
        }
        types.push(TileType {
            id: t as u32,
            name: type_name(t),
            kind: rep.kind,
            boundary: rep.boundary.clone(),
            split: rep.split,
            pattern,
            states: members.iter().map(|&s| replacement.states[s]).collect(),
        });
    }
    let sig = |_| EdgeSignature { kind: EdgeKind::Truncation, pieces: vec![EdgeKind::Truncation] };
    types.push(TileType {
        id: trunc_id,
        name: "trunc".into(),
        kind: TileKind::Truncation,
        boundary: (0..4u32).map(sig).collect(),
        split: None,
        pattern: ChildPattern {
            face_next: vec![1, 2, 3, 0],
            twin: (0..4).map(|k| LocalTwin::Boundary { edge: k, piece: 0 }).collect(),
            kind: vec![EdgeKind::Truncation; 4],
            children: vec![ChildTile { tile_type: trunc_id, cycle: vec![0, 1, 2, 3] }],
            pieces: (0..4).map(|k| vec![k]).collect(),
        },
        states: Vec::new(),
    });

    let t = &v.maps[0];
    let sphere = (0..t.face_count() as u32)
        .map(|f| {
            let mut cycle = t.face(f).to_vec();
            if (f as usize) < replacement.regions {
                let s = replacement.index_of(TileState::Region { cover: 1, face: f }).unwrap();
                cycle.rotate_left(align[s] as usize);
                SeedTile { tile_type: type_of[s], cycle }
            } else {
                SeedTile { tile_type: trunc_id, cycle }
            }
        })
        .collect();
    let state_types = (0..n).map(|s| (replacement.states[s], type_of[s], align[s])).collect();
    Ok(SubdivisionRule { types, sphere, sphere_map: t.clone(), hazards: report, state_types })
}

/// One realizable adjacency: edge `edge_a` of `type_a` glued to edge
/// `edge_b` of `type_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Adjacency {
    pub type_a: u32,
    pub edge_a: u32,
    pub type_b: u32,
    pub edge_b: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedAdjacency {
    pub adjacency: Adjacency,
    pub pieces_a: usize,
    pub pieces_b: usize,
    pub compatible: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    pub checked: Vec<CheckedAdjacency>,
    pub mismatches: usize,
}

impl CompatibilityReport {
    /// Type pairs that occur as neighbours.
    pub fn type_pairs(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self
            .checked
            .iter()
            .map(|c| {
                let (a, b) = (c.adjacency.type_a, c.adjacency.type_b);
                (a.min(b), a.max(b))
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn normalized(a: Adjacency) -> Adjacency {
    if (a.type_a, a.edge_a) <= (a.type_b, a.edge_b) {
        a
    } else {
        Adjacency { type_a: a.type_b, edge_a: a.edge_b, type_b: a.type_a, edge_b: a.edge_a }
    }
}

/// Closes the adjacencies of the initial polyhedron and of every child
/// pattern under subdivision and checks that glued edges split alike.
pub fn verify_edge_compatibility(rule: &SubdivisionRule) -> CompatibilityReport {
    let mut seen: HashSet<Adjacency> = HashSet::new();
    let mut queue: VecDeque<Adjacency> = VecDeque::new();
    let push = |a: Adjacency, seen: &mut HashSet<Adjacency>, queue: &mut VecDeque<Adjacency>| {
        let a = normalized(a);
        if seen.insert(a.clone()) {
            queue.push_back(a);
        }
    };
    let t = &rule.sphere_map;
    let mut where_ = vec![(0u32, 0u32); t.dart_count()];
    for (f, seed) in rule.sphere.iter().enumerate() {
        for (i, &d) in seed.cycle.iter().enumerate() {
            where_[d as usize] = (f as u32, i as u32);
        }
    }
    for d in 0..t.dart_count() as Dart {
        let (fa, ia) = where_[d as usize];
        let (fb, ib) = where_[t.twin(d) as usize];
        let adj = Adjacency {
            type_a: rule.sphere[fa as usize].tile_type,
            edge_a: ia,
            type_b: rule.sphere[fb as usize].tile_type,
            edge_b: ib,
        };
        push(adj, &mut seen, &mut queue);
    }
    let located: Vec<Vec<(u32, u32)>> = rule.types.iter().map(|ty| ty.pattern.locate()).collect();
    for (ti, ty) in rule.types.iter().enumerate() {
        let loc = &located[ti];
        for (x, tw) in ty.pattern.twin.iter().enumerate() {
            if let LocalTwin::Internal(y) = *tw {
                let (cx, ix) = loc[x];
                let (cy, iy) = loc[y as usize];
                let adj = Adjacency {
                    type_a: ty.pattern.children[cx as usize].tile_type,
                    edge_a: ix,
                    type_b: ty.pattern.children[cy as usize].tile_type,
                    edge_b: iy,
                };
                push(adj, &mut seen, &mut queue);
            }
        }
    }
    let mut report = CompatibilityReport::default();
    while let Some(adj) = queue.pop_front() {
        let (ta, tb) = (&rule.types[adj.type_a as usize], &rule.types[adj.type_b as usize]);
        let (sa, sb) = (&ta.boundary[adj.edge_a as usize], &tb.boundary[adj.edge_b as usize]);
        let (pa, pb) = (&ta.pattern.pieces[adj.edge_a as usize], &tb.pattern.pieces[adj.edge_b as usize]);
        let n = pa.len();
        let mut ok = sa.kind == sb.kind && n == pb.len();
        if ok {
            for j in 0..n {
                let (x, y) = (pa[j], pb[n - 1 - j]);
                if ta.pattern.kind[x as usize] != tb.pattern.kind[y as usize] {
                    ok = false;
                    continue;
                }
                let (cx, ix) = located[adj.type_a as usize][x as usize];
                let (cy, iy) = located[adj.type_b as usize][y as usize];
                let child = Adjacency {
                    type_a: ta.pattern.children[cx as usize].tile_type,
                    edge_a: ix,
                    type_b: tb.pattern.children[cy as usize].tile_type,
                    edge_b: iy,
                };
                push(child, &mut seen, &mut queue);
            }
        }
        if !ok {
            report.mismatches += 1;
        }
        report.checked.push(CheckedAdjacency {
            adjacency: adj,
            pieces_a: n,
            pieces_b: pb.len(),
            compatible: ok,
        });
    }
    report.checked.sort_by(|a, b| a.adjacency.cmp(&b.adjacency));
    report
}

#[derive(Serialize)]
struct RuleJson<'a> {
    schema: &'static str,
    types: &'a [TileType],
    sphere: &'a [SeedTile],
    hazards: &'a HazardReport,
    compatibility: &'a CompatibilityReport,
}

/// Full rule serialization (`rule-v1`), stable across runs.
pub fn emit_rule_json(rule: &SubdivisionRule) -> String {
    let compat = verify_edge_compatibility(rule);
    let doc = RuleJson {
        schema: "rule-v1",
        types: &rule.types,
        sphere: &rule.sphere,
        hazards: &rule.hazards,
        compatibility: &compat,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// Convenience: replacement rule, hazards and subdivision rule in one go.
pub fn build_rule(complex: &TruncatedComplex) -> Result<SubdivisionRule, RuleError> {
    to_subdivision_rule(&derive_replacement_rule(complex)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link_diagram::{build_planar_map, parse_pd_code};
    use crate::polyhedral::{checkerboard, truncate};

    pub(crate) fn complex(pd: &str) -> TruncatedComplex {
        let m = build_planar_map(&parse_pd_code(pd).unwrap()).unwrap();
        truncate(&m, &checkerboard(&m).unwrap()).unwrap()
    }

    const HOPF: &str = "X 1,4,2,3 / X 3,2,4,1";
    const TREFOIL: &str = "X 1,4,2,5 / X 3,6,4,1 / X 5,2,6,3";

    fn is_edge(c: &SubregionClass) -> bool {
        matches!(c, SubregionClass::Edge { .. })
    }

    #[test]
    fn hopf_clockwise_region_pattern() {
        let t = complex(HOPF);
        let cw = (0..4).find(|&g| t.is_clockwise(g)).unwrap();
        let p = single_region_pattern(&t, cw).unwrap();
        assert_eq!(p.subtile_count(), 5);
        assert_eq!(p.count(|c| *c == SubregionClass::Interior), 1);
        assert_eq!(p.count(is_edge), 2);
        assert_eq!(p.count(|c| *c == SubregionClass::Truncation), 2);
    }

    #[test]
    fn trefoil_triangle_pattern() {
        let t = complex(TREFOIL);
        let tri = (0..5).find(|&g| t.map().face(g).len() == 6).unwrap();
        let p = single_region_pattern(&t, tri).unwrap();
        assert_eq!(p.subtile_count(), 7);
        assert_eq!(p.count(|c| *c == SubregionClass::Truncation), 3);
    }

    #[test]
    fn pair_patterns() {
        let t = complex(HOPF);
        let (a, b) = (0..4u32)
            .flat_map(|a| (0..4u32).map(move |b| (a, b)))
            .find(|&(a, b)| t.is_clockwise(a) && !t.is_clockwise(b))
            .unwrap();
        let p = loaded_pair_pattern(&t, a, b).unwrap();
        assert_eq!(p.subtile_count(), 4);
        // every region of the pair pattern is an edge subregion
        for (f, c) in p.classes.iter().enumerate() {
            if p.orientation[f].is_some() {
                assert!(is_edge(c), "{c:?}");
            }
        }
        assert!(matches!(loaded_pair_pattern(&t, a, a), Err(RuleError::SameOrientation(..))));
        assert!(matches!(single_region_pattern(&t, 4), Err(RuleError::TruncationSquare(4))));

        let t = complex(TREFOIL);
        let bigon = (0..5).find(|&g| t.map().face(g).len() == 4).unwrap();
        let tri = (0..5).find(|&g| t.map().face(g).len() == 6).unwrap();
        let p = loaded_pair_pattern(&t, bigon, tri).unwrap();
        assert_eq!(p.subtile_count(), 6);
        assert!(!p.classes.contains(&SubregionClass::Irregular));
    }

    #[test]
    fn hopf_rule_has_three_types() {
        let rule = build_rule(&complex(HOPF)).unwrap();
        let names: Vec<(&str, TileKind)> =
            rule.types.iter().map(|t| (t.name.as_str(), t.kind)).collect();
        assert_eq!(
            names,
            vec![
                ("A", TileKind::Clockwise),
                ("B", TileKind::Counterclockwise),
                ("C", TileKind::Pair),
                ("trunc", TileKind::Truncation)
            ]
        );
        assert!(rule.hazards.is_clean());
    }

    #[test]
    fn hopf_b_splits_link_edges_in_three() {
        let rule = build_rule(&complex(HOPF)).unwrap();
        for name in ["A", "B"] {
            let ty = &rule.types[rule.type_by_name(name).unwrap() as usize];
            for sig in &ty.boundary {
                let expect = if sig.kind == EdgeKind::Link { 3 } else { 1 };
                assert_eq!(sig.pieces.len(), expect, "{name}");
            }
        }
    }

    #[test]
    fn trefoil_rule_has_three_types() {
        let rule = build_rule(&complex(TREFOIL)).unwrap();
        assert_eq!(rule.non_terminal_count(), 3);
        let report = verify_edge_compatibility(&rule);
        assert_eq!(report.mismatches, 0);
    }

    #[test]
    fn rule_is_deterministic() {
        let t = complex(TREFOIL);
        assert_eq!(emit_rule_json(&build_rule(&t).unwrap()), emit_rule_json(&build_rule(&t).unwrap()));
    }

    #[test]
    fn type_names() {
        assert_eq!(type_name(0), "A");
        assert_eq!(type_name(25), "Z");
        assert_eq!(type_name(26), "AA");
    }
}
