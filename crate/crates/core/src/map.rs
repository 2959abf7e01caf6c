//! Half-edge planar maps.
//!
//! A map is a set of darts with two permutations: `twin`, a fixed-point-free
//! involution pairing the two halves of an edge, and `next`, the
//! counterclockwise rotation of darts around their common origin vertex.
//! A dart has its face on the left, so the face successor of `d` is
//! `next⁻¹(twin(d))` and faces are traversed counterclockwise.
//!
//! Diagrams, truncated polyhedra, replacement patterns and tilings all use
//! this one representation. Faces are stored explicitly in cycle order so
//! that callers can fix the face numbering when they build a map from faces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a dart.
pub type Dart = u32;

/// Sentinel for "no dart".
pub(crate) const NONE: u32 = u32::MAX;

/// Which part of the link complement an edge comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// An edge of the original diagram.
    Link,
    /// An edge of a truncation square.
    Truncation,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("permutation arrays have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("dart count {0} is odd or zero")]
    BadDartCount(usize),
    #[error("twin is not a fixed-point-free involution at dart {0}")]
    BadTwin(Dart),
    #[error("{0} is not a permutation (dart {1} repeated or out of range)")]
    NotPermutation(&'static str, Dart),
    #[error("edge kind differs between dart {0} and its twin")]
    KindMismatch(Dart),
}

/// A planar map given by its darts, twin involution and vertex rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialMap {
    twin: Vec<Dart>,
    next: Vec<Dart>,
    face_next: Vec<Dart>,
    face_of: Vec<u32>,
    face_start: Vec<u32>,
    face_darts: Vec<Dart>,
    kind: Vec<EdgeKind>,
}

fn check_permutation(p: &[Dart], name: &'static str) -> Result<(), MapError> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        let i = x as usize;
        if i >= p.len() || seen[i] {
            return Err(MapError::NotPermutation(name, x));
        }
        seen[i] = true;
    }
    Ok(())
}

fn check_twin(twin: &[Dart], kind: &[EdgeKind]) -> Result<(), MapError> {
    if twin.is_empty() || twin.len() % 2 == 1 {
        return Err(MapError::BadDartCount(twin.len()));
    }
    for (d, &t) in twin.iter().enumerate() {
        if t as usize >= twin.len() || t as usize == d || twin[t as usize] as usize != d {
            return Err(MapError::BadTwin(d as Dart));
        }
        if kind[d] != kind[t as usize] {
            return Err(MapError::KindMismatch(d as Dart));
        }
    }
    Ok(())
}

impl CombinatorialMap {
    /// Builds a map from its twin involution and counterclockwise vertex
    /// rotation. Faces are numbered in order of their smallest dart.
    pub fn from_rotation(
        twin: Vec<Dart>,
        next: Vec<Dart>,
        kind: Vec<EdgeKind>,
    ) -> Result<Self, MapError> {
        if twin.len() != next.len() {
            return Err(MapError::LengthMismatch(twin.len(), next.len()));
        }
        if twin.len() != kind.len() {
            return Err(MapError::LengthMismatch(twin.len(), kind.len()));
        }
        check_twin(&twin, &kind)?;
        check_permutation(&next, "next")?;
        let n = twin.len();
        let mut prev = vec![0; n];
        for (d, &x) in next.iter().enumerate() {
            prev[x as usize] = d as Dart;
        }
        let face_next: Vec<Dart> = (0..n).map(|d| prev[twin[d] as usize]).collect();
        let mut map = CombinatorialMap {
            twin,
            next,
            face_next,
            face_of: vec![NONE; n],
            face_start: Vec::new(),
            face_darts: Vec::with_capacity(n),
            kind,
        };
        map.face_start.push(0);
        for d in 0..n {
            if map.face_of[d] != NONE {
                continue;
            }
            let f = (map.face_start.len() - 1) as u32;
            let mut x = d as Dart;
            loop {
                map.face_of[x as usize] = f;
                map.face_darts.push(x);
                x = map.face_next[x as usize];
                if x as usize == d {
                    break;
                }
            }
            map.face_start.push(map.face_darts.len() as u32);
        }
        Ok(map)
    }

    /// Builds a map from explicit face cycles (each listed counterclockwise,
    /// face on the left of every dart) and the twin involution. Face `i` of
    /// the result is `faces[i]`, and its cycle starts at `faces[i][0]`.
    pub fn from_faces(
        faces: &[Vec<Dart>],
        twin: Vec<Dart>,
        kind: Vec<EdgeKind>,
    ) -> Result<Self, MapError> {
        let mut face_start = Vec::with_capacity(faces.len() + 1);
        let mut face_darts = Vec::with_capacity(twin.len());
        face_start.push(0);
        for cycle in faces {
            face_darts.extend_from_slice(cycle);
            face_start.push(face_darts.len() as u32);
        }
        Self::from_face_lists(face_start, face_darts, twin, kind)
    }

    /// As [`from_faces`](Self::from_faces) with the cycles given in
    /// compressed form: face `i` is `face_darts[face_start[i]..face_start[i+1]]`.
    pub fn from_face_lists(
        face_start: Vec<u32>,
        face_darts: Vec<Dart>,
        twin: Vec<Dart>,
        kind: Vec<EdgeKind>,
    ) -> Result<Self, MapError> {
        let n = twin.len();
        if kind.len() != n {
            return Err(MapError::LengthMismatch(n, kind.len()));
        }
        if face_darts.len() != n {
            return Err(MapError::LengthMismatch(n, face_darts.len()));
        }
        check_twin(&twin, &kind)?;
        let mut face_next = vec![NONE; n];
        let mut face_of = vec![NONE; n];
        for f in 0..face_start.len().saturating_sub(1) {
            let cycle = &face_darts[face_start[f] as usize..face_start[f + 1] as usize];
            for (i, &d) in cycle.iter().enumerate() {
                if d as usize >= n || face_of[d as usize] != NONE {
                    return Err(MapError::NotPermutation("faces", d));
                }
                face_of[d as usize] = f as u32;
                face_next[d as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        if let Some(d) = face_of.iter().position(|&f| f == NONE) {
            return Err(MapError::NotPermutation("faces", d as Dart));
        }
        // next⁻¹(x) = face_next(twin(x))
        let mut next = vec![0; n];
        for x in 0..n {
            next[face_next[twin[x] as usize] as usize] = x as Dart;
        }
        Ok(CombinatorialMap { twin, next, face_next, face_of, face_start, face_darts, kind })
    }

    #[inline]
    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    #[inline]
    pub fn twin(&self, d: Dart) -> Dart {
        self.twin[d as usize]
    }

    /// Counterclockwise successor of `d` around its origin.
    #[inline]
    pub fn next(&self, d: Dart) -> Dart {
        self.next[d as usize]
    }

    /// Successor of `d` along its face.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        self.face_next[d as usize]
    }

    #[inline]
    pub fn face_of(&self, d: Dart) -> u32 {
        self.face_of[d as usize]
    }

    #[inline]
    pub fn kind(&self, d: Dart) -> EdgeKind {
        self.kind[d as usize]
    }

    pub fn face_count(&self) -> usize {
        self.face_start.len() - 1
    }

    /// Darts of face `f` in counterclockwise order.
    pub fn face(&self, f: u32) -> &[Dart] {
        let (a, b) = (self.face_start[f as usize], self.face_start[f as usize + 1]);
        &self.face_darts[a as usize..b as usize]
    }

    pub fn faces(&self) -> impl Iterator<Item = &[Dart]> + '_ {
        (0..self.face_count() as u32).map(move |f| self.face(f))
    }

    /// Position of `d` within the stored cycle of its face.
    pub fn position_in_face(&self, d: Dart) -> usize {
        let f = self.face_of(d);
        self.face(f).iter().position(|&x| x == d).expect("dart in its face")
    }

    pub fn twins(&self) -> &[Dart] {
        &self.twin
    }

    pub fn rotation(&self) -> &[Dart] {
        &self.next
    }

    pub fn kinds(&self) -> &[EdgeKind] {
        &self.kind
    }

    /// Vertex id of every dart's origin, numbered by smallest dart, plus
    /// the vertex count.
    pub fn vertex_ids(&self) -> (Vec<u32>, usize) {
        let n = self.dart_count();
        let mut id = vec![NONE; n];
        let mut count = 0u32;
        for d in 0..n {
            if id[d] != NONE {
                continue;
            }
            let mut x = d as Dart;
            loop {
                id[x as usize] = count;
                x = self.next[x as usize];
                if x as usize == d {
                    break;
                }
            }
            count += 1;
        }
        (id, count as usize)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids().1
    }

    /// Darts leaving the origin of `d`, counterclockwise starting at `d`.
    pub fn vertex_darts(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.next(d);
        while x != d {
            out.push(x);
            x = self.next(x);
        }
        out
    }

    /// `V - E + F`; 2 for a connected sphere map.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Connected component of every dart, plus the component count.
    pub fn components(&self) -> (Vec<u32>, usize) {
        let n = self.dart_count();
        let mut comp = vec![NONE; n];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != NONE {
                continue;
            }
            comp[s] = count;
            stack.push(s as Dart);
            while let Some(x) = stack.pop() {
                for y in [self.twin(x), self.next(x)] {
                    if comp[y as usize] == NONE {
                        comp[y as usize] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (comp, count as usize)
    }

    /// Every component is a sphere: `V - E + F = 2` per component.
    pub fn is_spherical(&self) -> bool {
        let (comp, k) = self.components();
        let (vid, nv) = self.vertex_ids();
        let mut v = vec![0i64; k];
        let mut e = vec![0i64; k];
        let mut f = vec![0i64; k];
        let mut seen_v = vec![false; nv];
        for d in 0..self.dart_count() {
            let c = comp[d] as usize;
            if !seen_v[vid[d] as usize] {
                seen_v[vid[d] as usize] = true;
                v[c] += 1;
            }
            if d < self.twin[d] as usize {
                e[c] += 1;
            }
        }
        for face in self.faces() {
            f[comp[face[0] as usize] as usize] += 1;
        }
        (0..k).all(|c| v[c] - e[c] + f[c] == 2)
    }

    pub fn dump(&self) -> MapDump {
        MapDump { twin: self.twin.clone(), next: self.next.clone(), kind: self.kind.clone() }
    }
}

/// Serializable form of a map.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapDump {
    pub twin: Vec<Dart>,
    pub next: Vec<Dart>,
    pub kind: Vec<EdgeKind>,
}

impl TryFrom<MapDump> for CombinatorialMap {
    type Error = MapError;

    fn try_from(d: MapDump) -> Result<Self, MapError> {
        CombinatorialMap::from_rotation(d.twin, d.next, d.kind)
    }
}
