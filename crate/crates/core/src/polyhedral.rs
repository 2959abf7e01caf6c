//! Checkerboard orientation, truncation and the face gluing.
//!
//! The truncated complex numbers its darts in three blocks of `4c`:
//! link darts `d` (the diagram darts), square sides `S(k,p) = 4c+4k+p`
//! and region sides `R(k,p) = 8c+4k+p`. The region side `R(k,p)` runs
//! along the truncation square of crossing `k` at the corner between slots
//! `p` and `p+1`, and is the twin of `S(k,p)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::map::{CombinatorialMap, Dart, EdgeKind, MapError, NONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::Counterclockwise,
            Orientation::Counterclockwise => Orientation::Clockwise,
        }
    }

    pub fn is_clockwise(self) -> bool {
        self == Orientation::Clockwise
    }
}

/// Orientation of every face of a diagram map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationAssignment {
    pub faces: Vec<Orientation>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face adjacency is not bipartite (edge of dart {0})")]
    NotBipartite(Dart),
    #[error("orientation covers {got} faces but the map has {expected}")]
    OrientationSize { got: usize, expected: usize },
    #[error("vertex of dart {0} is not 4-valent")]
    NotFourValent(Dart),
    #[error("face {0} is a truncation square and is never glued")]
    TruncationSquare(u32),
    #[error("face {0} does not exist")]
    NoSuchFace(u32),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Proper 2-coloring of the faces. The face to the left of dart 0, the
/// corner between the incoming under-strand and the next strand
/// counterclockwise at crossing 0, is clockwise.
pub fn checkerboard(map: &CombinatorialMap) -> Result<OrientationAssignment, ComplexError> {
    checkerboard_with(map, false)
}

/// As [`checkerboard`], swapping the two classes when `flip` is set.
pub fn checkerboard_with(
    map: &CombinatorialMap,
    flip: bool,
) -> Result<OrientationAssignment, ComplexError> {
    let nf = map.face_count();
    let mut color: Vec<Option<Orientation>> = vec![None; nf];
    let first = if flip { Orientation::Counterclockwise } else { Orientation::Clockwise };
    // the slot 0/1 corner of the lowest crossing in each component
    for d in (0..map.dart_count() as Dart).step_by(4) {
        let seed = map.face_of(d) as usize;
        if color[seed].is_some() {
            continue;
        }
        color[seed] = Some(first);
        let mut stack = vec![seed as u32];
        while let Some(f) = stack.pop() {
            let c = color[f as usize].unwrap();
            for &d in map.face(f) {
                let g = map.face_of(map.twin(d));
                match color[g as usize] {
                    None => {
                        color[g as usize] = Some(c.flip());
                        stack.push(g);
                    }
                    Some(x) if x == c => return Err(ComplexError::NotBipartite(d)),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(OrientationAssignment { faces: color.into_iter().map(Option::unwrap).collect() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceRole {
    Region,
    TruncationSquare,
}

/// The boundary of one truncated ideal polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedComplex {
    map: CombinatorialMap,
    crossings: usize,
    regions: usize,
    orientation: Vec<Orientation>,
    diagram_face: Vec<u32>,
}

impl TruncatedComplex {
    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings
    }

    /// Regions are faces `0..region_count()`; truncation squares follow.
    pub fn region_count(&self) -> usize {
        self.regions
    }

    pub fn role(&self, face: u32) -> FaceRole {
        if (face as usize) < self.regions {
            FaceRole::Region
        } else {
            FaceRole::TruncationSquare
        }
    }

    /// Orientation of a region, `None` for truncation squares.
    pub fn orientation(&self, face: u32) -> Option<Orientation> {
        self.orientation.get(face as usize).copied()
    }

    pub fn is_clockwise(&self, region: u32) -> bool {
        self.orientation[region as usize].is_clockwise()
    }

    /// Diagram face a region came from.
    pub fn diagram_face(&self, region: u32) -> u32 {
        self.diagram_face[region as usize]
    }

    pub fn square_of_crossing(&self, k: usize) -> u32 {
        (self.regions + k) as u32
    }
}

/// Replaces every crossing by a truncation square.
pub fn truncate(
    map: &CombinatorialMap,
    orient: &OrientationAssignment,
) -> Result<TruncatedComplex, ComplexError> {
    if orient.faces.len() != map.face_count() {
        return Err(ComplexError::OrientationSize {
            got: orient.faces.len(),
            expected: map.face_count(),
        });
    }
    let n = map.dart_count();
    for d in 0..n as Dart {
        if map.next(d) != ((d & !3) | ((d + 1) & 3)) {
            return Err(ComplexError::NotFourValent(d));
        }
    }
    let c = n / 4;
    let s = |d: Dart| (4 * c) as Dart + d;
    let r = |d: Dart| (8 * c) as Dart + d;
    let mut twin = vec![NONE; 12 * c];
    let mut kind = vec![EdgeKind::Truncation; 12 * c];
    for d in 0..n as Dart {
        twin[d as usize] = map.twin(d);
        kind[d as usize] = EdgeKind::Link;
        twin[s(d) as usize] = r(d);
        twin[r(d) as usize] = s(d);
    }
    let mut faces = Vec::with_capacity(map.face_count() + c);
    for f in map.faces() {
        let m = f.len();
        let mut cycle = Vec::with_capacity(2 * m);
        for i in 0..m {
            cycle.push(f[i]);
            cycle.push(r(f[(i + 1) % m]));
        }
        faces.push(cycle);
    }
    for k in 0..c as Dart {
        faces.push((0..4).map(|p| s(4 * k + p)).collect());
    }
    let tmap = CombinatorialMap::from_faces(&faces, twin, kind)?;
    Ok(TruncatedComplex {
        map: tmap,
        crossings: c,
        regions: map.face_count(),
        orientation: orient.faces.clone(),
        diagram_face: (0..map.face_count() as u32).collect(),
    })
}

/// Face pairing of a region with its copy on the mirror polyhedron.
///
/// Positions index the region's cycle counterclockwise from its first dart;
/// even positions are link edges. Mirror position `i` meets region position
/// `to_region(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingDatum {
    pub region: u32,
    pub len: u32,
    /// One link step: +1 clockwise, -1 counterclockwise.
    pub link_steps_clockwise: i32,
    /// The same rotation in cycle positions.
    pub dart_shift: i32,
}

impl GluingDatum {
    pub fn to_region(&self, i: u32) -> u32 {
        (i as i64 + self.dart_shift as i64).rem_euclid(self.len as i64) as u32
    }

    pub fn to_mirror(&self, j: u32) -> u32 {
        (j as i64 - self.dart_shift as i64).rem_euclid(self.len as i64) as u32
    }
}

/// The twist gluing `region` to the mirror polyhedron.
pub fn gluing_twist(complex: &TruncatedComplex, region: u32) -> Result<GluingDatum, ComplexError> {
    if region as usize >= complex.map.face_count() {
        return Err(ComplexError::NoSuchFace(region));
    }
    if complex.role(region) == FaceRole::TruncationSquare {
        return Err(ComplexError::TruncationSquare(region));
    }
    let len = complex.map.face(region).len() as u32;
    let steps = if complex.is_clockwise(region) { 1 } else { -1 };
    Ok(GluingDatum { region, len, link_steps_clockwise: steps, dart_shift: -2 * steps })
}

#[derive(Serialize)]
struct ComplexJson<'a> {
    schema: &'static str,
    crossings: usize,
    darts: usize,
    twin: &'a [Dart],
    next: &'a [Dart],
    kind: &'a [EdgeKind],
    faces: Vec<FaceJson<'a>>,
}

#[derive(Serialize)]
struct FaceJson<'a> {
    role: FaceRole,
    #[serde(skip_serializing_if = "Option::is_none")]
    orientation: Option<Orientation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagram_face: Option<u32>,
    darts: &'a [Dart],
}

/// JSON dump of a complex (`complex-v1`).
pub fn emit_complex_json(complex: &TruncatedComplex) -> String {
    let m = &complex.map;
    let faces = (0..m.face_count() as u32)
        .map(|f| FaceJson {
            role: complex.role(f),
            orientation: complex.orientation(f),
            diagram_face: (complex.role(f) == FaceRole::Region).then(|| complex.diagram_face(f)),
            darts: m.face(f),
        })
        .collect();
    let doc = ComplexJson {
        schema: "complex-v1",
        crossings: complex.crossings,
        darts: m.dart_count(),
        twin: m.twins(),
        next: m.rotation(),
        kind: m.kinds(),
        faces,
    };
    serde_json::to_string(&doc).expect("serializable") + "\n"
}
