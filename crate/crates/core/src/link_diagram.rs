//! PD-code parsing and the standing hypotheses on diagrams.
//!
//! A crossing is written `X a,b,c,d` where the four arc labels are listed
//! counterclockwise starting at the incoming under-strand. Crossing `k`
//! owns darts `4k..4k+4`, dart `4k+p` leaving along slot `p`, and the
//! counterclockwise rotation at the crossing is `4k+p -> 4k+(p+1)%4`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::map::{CombinatorialMap, Dart, EdgeKind, MapError};

/// A link diagram as a list of PD crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    arc_count: usize,
}

/// Where an arc label was seen in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty PD code")]
    Empty,
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("arc {arc} used {count} times (expected 2), first seen at {at}")]
    ArcMultiplicity { arc: u32, count: usize, at: Location },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("diagram has no crossings")]
    Empty,
    #[error("component containing crossing {crossing} has Euler characteristic {chi}, not 2")]
    NotPlanar { crossing: usize, chi: i64 },
    #[error(transparent)]
    Map(#[from] MapError),
}

struct Cursor<'a> {
    text: &'a [u8],
    i: usize,
    line: usize,
    line_start: usize,
}

impl<'a> Cursor<'a> {
    fn at(&self) -> Location {
        Location { line: self.line, column: self.i - self.line_start + 1 }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.i).copied()
    }

    fn skip_blanks(&mut self) {
        while let Some(b' ' | b'\t' | b'\r') = self.peek() {
            self.i += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { at: self.at(), message: message.into() }
    }

    /// Skips blanks, a trailing comment, and reports whether a record ended.
    fn end_of_record(&mut self) -> bool {
        self.skip_blanks();
        if self.peek() == Some(b'#') {
            while !matches!(self.peek(), None | Some(b'\n')) {
                self.i += 1;
            }
        }
        match self.peek() {
            None => true,
            Some(b'\n') => {
                self.i += 1;
                self.line += 1;
                self.line_start = self.i;
                true
            }
            Some(b'/') => {
                self.i += 1;
                true
            }
            _ => false,
        }
    }

    fn number(&mut self) -> Result<(u32, Location), ParseError> {
        self.skip_blanks();
        let at = self.at();
        let start = self.i;
        while let Some(b'0'..=b'9') = self.peek() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected an arc label"));
        }
        let s = std::str::from_utf8(&self.text[start..self.i]).expect("ascii digits");
        match s.parse::<u32>() {
            Ok(0) => Err(ParseError::Syntax { at, message: "arc labels start at 1".into() }),
            Ok(v) => Ok((v, at)),
            Err(_) => Err(ParseError::Syntax { at, message: format!("arc label {s} too large") }),
        }
    }
}

/// Parses PD-code text into a diagram.
pub fn parse_pd_code(text: &str) -> Result<LinkDiagram, ParseError> {
    let mut cur = Cursor { text: text.as_bytes(), i: 0, line: 1, line_start: 0 };
    let mut crossings = Vec::new();
    let mut seen: BTreeMap<u32, (usize, Location)> = BTreeMap::new();
    loop {
        if cur.end_of_record() {
            if cur.peek().is_none() {
                break;
            }
            continue;
        }
        match cur.peek() {
            Some(b'X') => cur.i += 1,
            _ => return Err(cur.err("expected 'X'")),
        }
        let mut tuple = [0u32; 4];
        for (p, slot) in tuple.iter_mut().enumerate() {
            if p > 0 {
                cur.skip_blanks();
                if cur.peek() != Some(b',') {
                    return Err(cur.err("expected ','"));
                }
                cur.i += 1;
            }
            let (v, at) = cur.number()?;
            *slot = v;
            let e = seen.entry(v).or_insert((0, at));
            e.0 += 1;
        }
        if !cur.end_of_record() {
            return Err(cur.err("unexpected text after crossing"));
        }
        crossings.push(tuple);
    }
    if crossings.is_empty() {
        return Err(ParseError::Empty);
    }
    if let Some((&arc, &(count, at))) = seen.iter().find(|(_, (n, _))| *n != 2) {
        return Err(ParseError::ArcMultiplicity { arc, count, at });
    }
    Ok(LinkDiagram { arc_count: seen.len(), crossings })
}

/// Writes a diagram in the PD text format, crossings sorted.
pub fn emit_pd(diagram: &LinkDiagram) -> String {
    let mut rows = diagram.crossings.clone();
    rows.sort_unstable();
    let mut out = String::new();
    for [a, b, c, d] in rows {
        let _ = writeln!(out, "X {a},{b},{c},{d}");
    }
    out
}

impl LinkDiagram {
    /// Builds a diagram from tuples, checking that every arc occurs twice.
    pub fn from_crossings(crossings: Vec<[u32; 4]>) -> Result<Self, ParseError> {
        let text: String = crossings
            .iter()
            .map(|[a, b, c, d]| format!("X {a},{b},{c},{d}\n"))
            .collect();
        parse_pd_code(&text)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Renames arcs and reorders crossings. `arc_map` sends old labels to
    /// new ones and `order[i]` is the old index of new crossing `i`.
    pub fn relabel(&self, arc_map: &HashMap<u32, u32>, order: &[usize]) -> LinkDiagram {
        let crossings = order
            .iter()
            .map(|&k| self.crossings[k].map(|a| arc_map[&a]))
            .collect();
        LinkDiagram { crossings, arc_count: self.arc_count }
    }

    /// Disjoint union, renaming the second diagram's arcs apart.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let shift = self.crossings.iter().flatten().copied().max().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|t| t.map(|a| a + shift)));
        LinkDiagram { crossings, arc_count: self.arc_count + other.arc_count }
    }

    /// Both diagrams are equal up to renaming arcs and reordering crossings.
    pub fn is_isomorphic(&self, other: &LinkDiagram) -> bool {
        let n = self.crossings.len();
        if n != other.crossings.len() || self.arc_count != other.arc_count {
            return false;
        }
        let index = |d: &LinkDiagram| {
            let mut m: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
            for (k, t) in d.crossings.iter().enumerate() {
                for (p, &a) in t.iter().enumerate() {
                    m.entry(a).or_default().push((k, p));
                }
            }
            m
        };
        let (ia, ib) = (index(self), index(other));
        let mut done = vec![false; n];
        let mut used = vec![false; n];
        let mut arcs: HashMap<u32, u32> = HashMap::new();
        // match components greedily; each is rigid once one crossing is fixed
        for s in 0..n {
            if done[s] {
                continue;
            }
            let mut matched = false;
            for t in (0..n).filter(|&t| !used[t]) {
                let mut cmap: HashMap<usize, usize> = HashMap::new();
                let mut amap = arcs.clone();
                if extend_crossing_iso(self, other, &ia, &ib, s, t, &mut cmap, &mut amap, &used) {
                    for (&a, &b) in &cmap {
                        done[a] = true;
                        used[b] = true;
                    }
                    arcs = amap;
                    matched = true;
                    break;
                }
            }
            if !matched {
                return false;
            }
        }
        true
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_crossing_iso(
    a: &LinkDiagram,
    b: &LinkDiagram,
    ia: &HashMap<u32, Vec<(usize, usize)>>,
    ib: &HashMap<u32, Vec<(usize, usize)>>,
    s: usize,
    t: usize,
    cmap: &mut HashMap<usize, usize>,
    amap: &mut HashMap<u32, u32>,
    used: &[bool],
) -> bool {
    let mut queue = VecDeque::from([(s, t)]);
    cmap.insert(s, t);
    let mut image_used: Vec<bool> = used.to_vec();
    image_used[t] = true;
    while let Some((x, y)) = queue.pop_front() {
        for p in 0..4 {
            let (u, v) = (a.crossings[x][p], b.crossings[y][p]);
            match amap.get(&u) {
                Some(&w) if w != v => return false,
                Some(_) => continue,
                None => {
                    amap.insert(u, v);
                }
            }
            // the other end of arc u must go to the other end of arc v
            let other_a = ia[&u].iter().find(|&&(k, q)| (k, q) != (x, p)).copied().unwrap();
            let other_b = ib[&v].iter().find(|&&(k, q)| (k, q) != (y, p)).copied().unwrap();
            if other_a.1 != other_b.1 {
                return false;
            }
            match cmap.get(&other_a.0) {
                Some(&w) if w != other_b.0 => return false,
                Some(_) => {}
                None => {
                    if image_used[other_b.0] {
                        return false;
                    }
                    image_used[other_b.0] = true;
                    cmap.insert(other_a.0, other_b.0);
                    queue.push_back((other_a.0, other_b.0));
                }
            }
        }
    }
    true
}

/// Darts pairing the two occurrences of every arc.
fn arc_twins(diagram: &LinkDiagram) -> Vec<Dart> {
    let mut first: HashMap<u32, Dart> = HashMap::new();
    let mut twin = vec![0; 4 * diagram.crossings.len()];
    for (k, t) in diagram.crossings.iter().enumerate() {
        for (p, &a) in t.iter().enumerate() {
            let d = (4 * k + p) as Dart;
            if let Some(e) = first.remove(&a) {
                twin[d as usize] = e;
                twin[e as usize] = d;
            } else {
                first.insert(a, d);
            }
        }
    }
    twin
}

/// The 4-valent planar map of a diagram.
pub fn build_planar_map(diagram: &LinkDiagram) -> Result<CombinatorialMap, DiagramError> {
    let c = diagram.crossings.len();
    if c == 0 {
        return Err(DiagramError::Empty);
    }
    let twin = arc_twins(diagram);
    let next: Vec<Dart> = (0..4 * c as u32).map(|d| (d & !3) | ((d + 1) & 3)).collect();
    let map = CombinatorialMap::from_rotation(twin, next, vec![EdgeKind::Link; 4 * c])?;
    if !map.is_spherical() {
        let (comp, _) = map.components();
        // report the first offending component
        for k in 0..c {
            let sub = component_chi(&map, &comp, comp[4 * k]);
            if sub != 2 {
                return Err(DiagramError::NotPlanar { crossing: k, chi: sub });
            }
        }
    }
    Ok(map)
}

fn component_chi(map: &CombinatorialMap, comp: &[u32], which: u32) -> i64 {
    let (vid, nv) = map.vertex_ids();
    let mut seen = vec![false; nv];
    let (mut v, mut e, mut f) = (0i64, 0i64, 0i64);
    for d in 0..map.dart_count() {
        if comp[d] != which {
            continue;
        }
        if !std::mem::replace(&mut seen[vid[d] as usize], true) {
            v += 1;
        }
        if d < map.twin(d as Dart) as usize {
            e += 1;
        }
    }
    for face in map.faces() {
        if comp[face[0] as usize] == which {
            f += 1;
        }
    }
    v - e + f
}

/// Evidence for a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Witness {
    /// Two consecutive passages of the same kind around `arc`, or a strand
    /// entering a crossing through its outgoing under slot.
    NotAlternating { arc: u32, crossing: usize },
    /// A crossing two of whose corners lie in the same face.
    Nugatory { crossing: usize },
    /// Two faces sharing more than one edge; edges given by arc label.
    SharedEdges { faces: (u32, u32), arcs: Vec<u32> },
    /// Crossing indices of each connected component.
    Split { components: Vec<Vec<usize>> },
}

/// Results of checking a diagram against the admissible input class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub alternating: bool,
    pub reduced: bool,
    pub prime: bool,
    pub non_split: bool,
    /// Number of link components found by walking strands.
    pub link_components: usize,
    pub witnesses: Vec<Witness>,
}

impl ValidationReport {
    pub fn admissible(&self) -> bool {
        self.alternating && self.reduced && self.prime && self.non_split
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "alternating: {}", self.alternating)?;
        writeln!(f, "reduced: {}", self.reduced)?;
        writeln!(f, "prime: {}", self.prime)?;
        writeln!(f, "non_split: {}", self.non_split)?;
        writeln!(f, "link_components: {}", self.link_components)?;
        for w in &self.witnesses {
            match w {
                Witness::NotAlternating { arc, crossing } => {
                    writeln!(f, "witness: not alternating at arc {arc} (crossing {crossing})")?
                }
                Witness::Nugatory { crossing } => {
                    writeln!(f, "witness: nugatory crossing {crossing}")?
                }
                Witness::SharedEdges { faces, arcs } => writeln!(
                    f,
                    "witness: faces {} and {} share arcs {:?}",
                    faces.0, faces.1, arcs
                )?,
                Witness::Split { components } => {
                    writeln!(f, "witness: {} components {:?}", components.len(), components)?
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Passage {
    Under,
    Over,
}

/// Walks every strand; returns (alternating, component count, witness).
fn strand_walk(diagram: &LinkDiagram, map: &CombinatorialMap) -> (bool, usize, Option<Witness>) {
    let n = map.dart_count();
    let mut visited = vec![false; n];
    let mut components = 0;
    let mut witness = None;
    let arc_of = |d: Dart| diagram.crossings[d as usize / 4][d as usize % 4];
    // under exits fix the direction; anything left over has no under passage
    let starts = (0..n as Dart).filter(|d| d % 4 == 2).chain((0..n as Dart).filter(|d| d % 4 != 2));
    for start in starts {
        if visited[start as usize] {
            continue;
        }
        components += 1;
        let mut seq: Vec<(Passage, Dart)> = Vec::new();
        let mut d = start;
        loop {
            visited[d as usize] = true;
            let t = map.twin(d);
            visited[t as usize] = true;
            let (k, p) = (t & !3, t & 3);
            let (kind, exit) = match p {
                0 => (Passage::Under, k | 2),
                2 => {
                    witness.get_or_insert(Witness::NotAlternating {
                        arc: arc_of(t),
                        crossing: k as usize / 4,
                    });
                    break;
                }
                _ => (Passage::Over, k | (p ^ 2)),
            };
            seq.push((kind, t));
            d = exit;
            if d == start || visited[d as usize] {
                break;
            }
        }
        let m = seq.len();
        for i in 0..m {
            let (a, b) = (seq[i], seq[(i + 1) % m]);
            if a.0 == b.0 {
                witness.get_or_insert(Witness::NotAlternating {
                    arc: arc_of(b.1),
                    crossing: b.1 as usize / 4,
                });
            }
        }
    }
    (witness.is_none(), components, witness)
}

/// Checks the diagram against the alternating, reduced, prime and
/// non-split hypotheses. Failures are recorded in the report.
pub fn validate(diagram: &LinkDiagram, map: &CombinatorialMap) -> ValidationReport {
    let c = diagram.crossings.len();
    let mut witnesses = Vec::new();

    let (alternating, link_components, w) = strand_walk(diagram, map);
    witnesses.extend(w);

    let mut reduced = true;
    for k in 0..c {
        let corners: Vec<u32> = (0..4).map(|p| map.face_of((4 * k + p) as Dart)).collect();
        let repeated = (0..4).any(|i| (i + 1..4).any(|j| corners[i] == corners[j]));
        if repeated {
            reduced = false;
            witnesses.push(Witness::Nugatory { crossing: k });
            break;
        }
    }

    let mut shared: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
    for d in 0..map.dart_count() as Dart {
        let t = map.twin(d);
        if d > t {
            continue;
        }
        let (f, g) = (map.face_of(d), map.face_of(t));
        if f != g {
            let key = (f.min(g), f.max(g));
            shared.entry(key).or_default().push(diagram.crossings[d as usize / 4][d as usize % 4]);
        }
    }
    let mut prime = true;
    if let Some((&faces, arcs)) = shared.iter().find(|(_, v)| v.len() >= 2) {
        prime = false;
        let mut arcs = arcs.clone();
        arcs.sort_unstable();
        witnesses.push(Witness::SharedEdges { faces, arcs });
    }

    let (comp, count) = map.components();
    let non_split = count == 1;
    if !non_split {
        let mut components = vec![Vec::new(); count];
        for k in 0..c {
            components[comp[4 * k] as usize].push(k);
        }
        witnesses.push(Witness::Split { components });
    }

    ValidationReport { alternating, reduced, prime, non_split, link_components, witnesses }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "X 1,4,2,3 / X 3,2,4,1";
    const TREFOIL: &str = "X 1,4,2,5 / X 3,6,4,1 / X 5,2,6,3";

    fn degrees(map: &CombinatorialMap) -> Vec<usize> {
        let mut d: Vec<usize> = map.faces().map(|f| f.len()).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn parses_hopf() {
        let d = parse_pd_code(HOPF).unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.arc_count(), 4);
        assert_eq!(d.crossings()[1], [3, 2, 4, 1]);
    }

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "# trefoil\n\nX 1,4,2,5  # first\nX 3, 6, 4, 1\n\tX 5,2,6,3\n";
        let d = parse_pd_code(text).unwrap();
        assert_eq!(d, parse_pd_code(TREFOIL).unwrap());
    }

    #[test]
    fn one_crossing_unknot_parses() {
        let d = parse_pd_code("X 1,1,2,2").unwrap();
        assert_eq!(d.crossing_count(), 1);
    }

    #[test]
    fn parse_errors_have_locations() {
        assert_eq!(parse_pd_code(""), Err(ParseError::Empty));
        assert_eq!(parse_pd_code("# nothing\n\n"), Err(ParseError::Empty));
        match parse_pd_code("X 1,2,3,4\nX 1,2,3;4") {
            Err(ParseError::Syntax { at, .. }) => assert_eq!(at, Location { line: 2, column: 8 }),
            other => panic!("{other:?}"),
        }
        match parse_pd_code("X 1,2,3,4 / X 1,2,3,5") {
            Err(ParseError::ArcMultiplicity { arc: 4, count: 1, at }) => {
                assert_eq!(at, Location { line: 1, column: 9 })
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pd_code("Y 1,1,2,2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_pd_code("X 0,0,2,2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_pd_code("X 1,1,2,2 junk"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn hopf_map_is_four_bigons() {
        let d = parse_pd_code(HOPF).unwrap();
        let m = build_planar_map(&d).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (2, 4, 4));
        assert_eq!(degrees(&m), vec![2, 2, 2, 2]);
    }

    #[test]
    fn trefoil_map_faces() {
        let m = build_planar_map(&parse_pd_code(TREFOIL).unwrap()).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (3, 6, 5));
        assert_eq!(degrees(&m), vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn hopf_and_trefoil_admissible() {
        for text in [HOPF, TREFOIL] {
            let d = parse_pd_code(text).unwrap();
            let r = validate(&d, &build_planar_map(&d).unwrap());
            assert!(r.admissible(), "{r}");
        }
        let d = parse_pd_code(HOPF).unwrap();
        assert_eq!(validate(&d, &build_planar_map(&d).unwrap()).link_components, 2);
        let d = parse_pd_code(TREFOIL).unwrap();
        assert_eq!(validate(&d, &build_planar_map(&d).unwrap()).link_components, 1);
    }

    #[test]
    fn unknot_is_not_reduced() {
        let d = parse_pd_code("X 1,1,2,2").unwrap();
        let r = validate(&d, &build_planar_map(&d).unwrap());
        assert!(!r.reduced);
        assert!(r.witnesses.contains(&Witness::Nugatory { crossing: 0 }));
    }

    #[test]
    fn two_hopfs_are_split() {
        let h = parse_pd_code(HOPF).unwrap();
        let d = h.disjoint_union(&h);
        let r = validate(&d, &build_planar_map(&d).unwrap());
        assert!(!r.non_split);
        assert!(r.witnesses.contains(&Witness::Split { components: vec![vec![0, 1], vec![2, 3]] }));
    }

    #[test]
    fn wrong_under_start_is_not_alternating() {
        // trefoil with the first crossing rotated by one slot
        let d = parse_pd_code("X 4,2,5,1 / X 3,6,4,1 / X 5,2,6,3").unwrap();
        let r = validate(&d, &build_planar_map(&d).unwrap());
        assert!(!r.alternating);
    }

    #[test]
    fn emit_round_trip() {
        let d = parse_pd_code(TREFOIL).unwrap();
        let text = emit_pd(&d);
        assert_eq!(text, "X 1,4,2,5\nX 3,6,4,1\nX 5,2,6,3\n");
        let e = parse_pd_code(&text).unwrap();
        assert!(d.is_isomorphic(&e));
        let arcs: HashMap<u32, u32> = (1..=6).map(|a| (a, 7 - a)).collect();
        assert!(d.is_isomorphic(&d.relabel(&arcs, &[2, 0, 1])));
        assert!(!d.is_isomorphic(&parse_pd_code("X 4,2,5,1 / X 3,6,4,1 / X 5,2,6,3").unwrap()));
    }
}
