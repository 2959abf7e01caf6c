//! Gluing polyhedra onto a boundary sphere.
//!
//! The universal cover is grown from copies of the two polyhedra. Seen from
//! outside the growing ball, a copy of the first polyhedron looks like the
//! truncated complex `T` and a copy of the second like its mirror image.
//! A copy of parity `π` is glued onto regions owned by parity `1 - π`;
//! its face `g` meets the region at the twisted positions given by
//! [`Views::sigma`]. Every dart carries the position it has in its region
//! of `T`, which is all the gluing needs.

use std::collections::HashMap;

use thiserror::Error;

use crate::map::{CombinatorialMap, Dart, EdgeKind, MapError, NONE};
use crate::polyhedral::{gluing_twist, TruncatedComplex};

/// Local-homeomorphism or bookkeeping failure while gluing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GluingError {
    #[error("edge of dart {dart} would meet {count} polyhedra")]
    LocalHomeomorphism { dart: Dart, count: u8 },
    #[error("loaded edge of dart {dart} is not matched by adjacent faces of the glued polyhedron")]
    PairMismatch { dart: Dart },
    #[error("region {face} carries two loaded edges")]
    TwoLoadedEdges { face: u32 },
    #[error("loaded edge of dart {dart} separates regions of equal orientation")]
    SameOrientation { dart: Dart },
    #[error("face {face} cannot be covered")]
    NotCoverable { face: u32 },
    #[error("regions {0} and {1} are not adjacent across exactly one edge")]
    NotAdjacent(u32, u32),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// What a face of the polyhedron views is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ViewFace {
    Region(u32),
    Trunc,
}

/// The two polyhedron views with their position bookkeeping.
#[derive(Clone, Debug)]
pub(crate) struct Views {
    pub maps: [CombinatorialMap; 2],
    /// Per view and dart: the region of `T` the dart lies on, or `NONE`.
    pub region: [Vec<u32>; 2],
    pub pos: [Vec<u16>; 2],
    /// Per view and region: darts by position.
    pub at: [Vec<Vec<Dart>>; 2],
    pub face_kind: [Vec<ViewFace>; 2],
    pub shift: Vec<i32>,
    pub cw: Vec<bool>,
    pub crossings: usize,
}

impl Views {
    pub fn new(complex: &TruncatedComplex) -> Views {
        let t = complex.map().clone();
        let n = t.dart_count();
        let regions = complex.region_count();
        let mut region0 = vec![NONE; n];
        let mut pos0 = vec![0u16; n];
        for f in 0..t.face_count() as u32 {
            for (i, &d) in t.face(f).iter().enumerate() {
                pos0[d as usize] = i as u16;
                if (f as usize) < regions {
                    region0[d as usize] = f;
                }
            }
        }
        let at0: Vec<Vec<Dart>> = (0..regions as u32).map(|g| t.face(g).to_vec()).collect();
        let mut prev = vec![0; n];
        for d in 0..n as Dart {
            prev[t.next(d) as usize] = d;
        }
        let mirror = CombinatorialMap::from_rotation(t.twins().to_vec(), prev, t.kinds().to_vec())
            .expect("mirror of a valid map");
        let region1: Vec<u32> = (0..n).map(|z| region0[t.twin(z as Dart) as usize]).collect();
        let pos1: Vec<u16> = (0..n).map(|z| pos0[t.twin(z as Dart) as usize]).collect();
        let at1: Vec<Vec<Dart>> =
            at0.iter().map(|row| row.iter().map(|&d| t.twin(d)).collect()).collect();
        let kind_of = |m: &CombinatorialMap, reg: &[u32]| -> Vec<ViewFace> {
            m.faces()
                .map(|f| match reg[f[0] as usize] {
                    NONE => ViewFace::Trunc,
                    g => ViewFace::Region(g),
                })
                .collect()
        };
        let face_kind = [kind_of(&t, &region0), kind_of(&mirror, &region1)];
        let shift = (0..regions as u32)
            .map(|g| gluing_twist(complex, g).expect("region").dart_shift)
            .collect();
        let cw = (0..regions as u32).map(|g| complex.is_clockwise(g)).collect();
        Views {
            maps: [t, mirror],
            region: [region0, region1],
            pos: [pos0, pos1],
            at: [at0, at1],
            face_kind,
            shift,
            cw,
            crossings: complex.crossing_count(),
        }
    }

    pub fn region_len(&self, g: u32) -> usize {
        self.at[0][g as usize].len()
    }

    /// Region position met by position `i` of face `g` on a parity-`pi` copy.
    pub fn sigma(&self, pi: u8, g: u32, i: usize) -> usize {
        let m = self.region_len(g) as i64;
        let s = self.shift[g as usize] as i64;
        let s = if pi == 1 { s } else { -s };
        (i as i64 + s).rem_euclid(m) as usize
    }

    pub fn sigma_inv(&self, pi: u8, g: u32, j: usize) -> usize {
        let m = self.region_len(g) as i64;
        let s = self.shift[g as usize] as i64;
        let s = if pi == 1 { s } else { -s };
        (j as i64 - s).rem_euclid(m) as usize
    }

    /// The region a parity-`pi` copy glued onto `(g, j)` presents across
    /// that edge: the face on the other side of the matched dart.
    pub fn across(&self, pi: u8, g: u32, j: usize) -> u32 {
        let y = self.at[pi as usize][g as usize][self.sigma_inv(pi, g, j)];
        self.region[pi as usize][self.maps[pi as usize].twin(y) as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Label {
    Region { owner: u8, tface: u32 },
    Trunc,
    Outer,
}

/// A boundary sphere (or a disk with outer faces) being built.
#[derive(Clone, Debug)]
pub(crate) struct Sheet {
    pub map: CombinatorialMap,
    pub label: Vec<Label>,
    /// Per dart: position in its region of `T`.
    pub pos: Vec<u16>,
    /// Per dart: number of polyhedra meeting its edge.
    pub count: Vec<u8>,
    /// Per dart: caller bookkeeping, carried through gluing.
    pub tag: Vec<u32>,
    /// Per face: the face it replaced or was kept from.
    pub parent: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Unit {
    Single(u32),
    /// Clockwise and counterclockwise region sharing a loaded edge.
    Pair(u32, u32),
}

impl Unit {
    fn faces(&self) -> ([u32; 2], usize) {
        match *self {
            Unit::Single(f) => ([f, NONE], 1),
            Unit::Pair(d, e) => ([d, e], 2),
        }
    }
}

const ERASED: u32 = NONE - 1;

impl Sheet {
    /// `T` as seen from outside, every edge met by one polyhedron.
    pub fn initial(v: &Views) -> Sheet {
        let t = v.maps[0].clone();
        let label = v.face_kind[0]
            .iter()
            .map(|k| match *k {
                ViewFace::Region(g) => Label::Region { owner: 0, tface: g },
                ViewFace::Trunc => Label::Trunc,
            })
            .collect();
        let n = t.dart_count();
        let nf = t.face_count();
        Sheet {
            map: t,
            label,
            pos: v.pos[0].clone(),
            count: vec![1; n],
            tag: vec![NONE; n],
            parent: vec![NONE; nf],
        }
    }

    pub fn is_loaded(&self, d: Dart) -> bool {
        self.map.kind(d) == EdgeKind::Link && self.count[d as usize] == 3
    }

    pub fn region_of(&self, f: u32) -> Option<(u8, u32)> {
        match self.label[f as usize] {
            Label::Region { owner, tface } => Some((owner, tface)),
            _ => None,
        }
    }

    /// The units of one full stage: every region, loaded ones in pairs.
    pub fn stage_units(&self, v: &Views) -> Result<Vec<Unit>, GluingError> {
        let nf = self.map.face_count();
        let mut loaded = vec![NONE; nf];
        for d in 0..self.map.dart_count() as Dart {
            if self.is_loaded(d) {
                let f = self.map.face_of(d);
                if loaded[f as usize] != NONE {
                    return Err(GluingError::TwoLoadedEdges { face: f });
                }
                loaded[f as usize] = d;
            }
        }
        let mut units = Vec::new();
        for f in 0..nf as u32 {
            let Some((_, g)) = self.region_of(f) else { continue };
            match loaded[f as usize] {
                NONE => units.push(Unit::Single(f)),
                d => {
                    let e = self.map.face_of(self.map.twin(d));
                    let Some((_, h)) = self.region_of(e) else {
                        return Err(GluingError::NotCoverable { face: e });
                    };
                    if v.cw[g as usize] == v.cw[h as usize] {
                        return Err(GluingError::SameOrientation { dart: d });
                    }
                    if v.cw[g as usize] {
                        units.push(Unit::Pair(f, e));
                    }
                }
            }
        }
        Ok(units)
    }

    /// Glues one polyhedron onto each unit and returns the new sheet. Kept
    /// faces come first in their old order, followed by the faces of each
    /// glued copy in unit order.
    pub fn cover(&self, v: &Views, units: &[Unit]) -> Result<Sheet, GluingError> {
        let s = &self.map;
        let n = s.dart_count();
        let nf = s.face_count();
        let mut hole_unit = vec![NONE; nf];
        let mut by_pos_base = vec![NONE; nf];
        let mut by_pos: Vec<Dart> = Vec::new();
        let mut parity = Vec::with_capacity(units.len());
        for (u, unit) in units.iter().enumerate() {
            let (faces, k) = unit.faces();
            let mut pi = NONE as u8;
            for &f in &faces[..k] {
                let Some((owner, g)) = self.region_of(f) else {
                    return Err(GluingError::NotCoverable { face: f });
                };
                if hole_unit[f as usize] != NONE || (pi != NONE as u8 && pi != 1 - owner) {
                    return Err(GluingError::NotCoverable { face: f });
                }
                pi = 1 - owner;
                hole_unit[f as usize] = u as u32;
                let base = by_pos.len();
                by_pos_base[f as usize] = base as u32;
                by_pos.resize(base + v.region_len(g), NONE);
                for &d in s.face(f) {
                    by_pos[base + self.pos[d as usize] as usize] = d;
                }
            }
            parity.push(pi);
        }
        let in_hole = |d: Dart| hole_unit[s.face_of(d) as usize] != NONE;

        let mut newid = vec![NONE; n];
        let mut next_id = 0u32;
        for d in 0..n {
            if !in_hole(d as Dart) {
                newid[d] = next_id;
                next_id += 1;
            }
        }

        // local numbering of the kept darts of a copy, cached per hole shape
        let ucount = v.maps[0].dart_count();
        let mut shapes: HashMap<(u8, u32, u32), Vec<u32>> = HashMap::new();
        let mut unit_base = Vec::with_capacity(units.len());
        let mut unit_shape = Vec::with_capacity(units.len());
        for (u, unit) in units.iter().enumerate() {
            let (faces, k) = unit.faces();
            let pi = parity[u];
            let g0 = self.region_of(faces[0]).unwrap().1;
            let g1 = if k == 2 { self.region_of(faces[1]).unwrap().1 } else { NONE };
            let key = (pi, g0, g1);
            let local = shapes.entry(key).or_insert_with(|| {
                let reg = &v.region[pi as usize];
                let mut next = 0;
                (0..ucount)
                    .map(|z| {
                        if reg[z] == g0 || (g1 != NONE && reg[z] == g1) {
                            NONE
                        } else {
                            next += 1;
                            next - 1
                        }
                    })
                    .collect()
            });
            let kept = local.iter().filter(|&&x| x != NONE).count() as u32;
            unit_base.push(next_id);
            unit_shape.push(key);
            next_id += kept;
        }
        let id = |u: usize, z: Dart| -> u32 {
            let l = shapes[&unit_shape[u]][z as usize];
            debug_assert_ne!(l, NONE);
            unit_base[u] + l
        };

        // replacement of every hole dart by a dart of its copy
        let mut repl = vec![NONE; n];
        for (u, unit) in units.iter().enumerate() {
            let (faces, k) = unit.faces();
            let pi = parity[u];
            let um = &v.maps[pi as usize];
            for (which, &f) in faces[..k].iter().enumerate() {
                let g = self.region_of(f).unwrap().1;
                let partner = if k == 2 { faces[1 - which] } else { NONE };
                let gp = if k == 2 { self.region_of(partner).unwrap().1 } else { NONE };
                for &r in s.face(f) {
                    let i = v.sigma_inv(pi, g, self.pos[r as usize] as usize);
                    let y = v.at[pi as usize][g as usize][i];
                    let z = um.twin(y);
                    let across_partner = s.face_of(s.twin(r)) == partner;
                    if k == 2 && v.region[pi as usize][z as usize] == gp {
                        let t = s.twin(r);
                        let ok = across_partner && {
                            let ip = v.sigma_inv(pi, gp, self.pos[t as usize] as usize);
                            v.at[pi as usize][gp as usize][ip] == z
                        };
                        if !ok {
                            return Err(GluingError::PairMismatch { dart: r });
                        }
                        if self.count[r as usize] != 3 || s.kind(r) != EdgeKind::Link {
                            return Err(GluingError::LocalHomeomorphism {
                                dart: r,
                                count: self.count[r as usize] + 1,
                            });
                        }
                        repl[r as usize] = ERASED;
                    } else {
                        if across_partner {
                            return Err(GluingError::PairMismatch { dart: r });
                        }
                        repl[r as usize] = id(u, z);
                    }
                }
            }
        }
        let nt = |x: Dart| if in_hole(x) { repl[x as usize] } else { newid[x as usize] };

        let total = next_id as usize;
        let mut twin = vec![NONE; total];
        let mut kind = vec![EdgeKind::Link; total];
        let mut pos = vec![0u16; total];
        let mut count = vec![0u8; total];
        let mut tag = vec![NONE; total];
        let check = |d: Dart, k: EdgeKind, c: u8| -> Result<(), GluingError> {
            let cap = if k == EdgeKind::Link { 3 } else { 2 };
            if c > cap {
                Err(GluingError::LocalHomeomorphism { dart: d, count: c })
            } else {
                Ok(())
            }
        };
        for d in 0..n as Dart {
            let nd = newid[d as usize];
            if nd == NONE {
                continue;
            }
            let t = s.twin(d);
            let c = self.count[d as usize] + u8::from(in_hole(t));
            check(d, s.kind(d), c)?;
            let i = nd as usize;
            twin[i] = nt(t);
            kind[i] = s.kind(d);
            pos[i] = self.pos[d as usize];
            count[i] = c;
            tag[i] = self.tag[d as usize];
        }
        for (u, unit) in units.iter().enumerate() {
            let (faces, k) = unit.faces();
            let pi = parity[u] as usize;
            let um = &v.maps[pi];
            let local = &shapes[&unit_shape[u]];
            for z in 0..ucount as Dart {
                if local[z as usize] == NONE {
                    continue;
                }
                let i = id(u, z) as usize;
                let y = um.twin(z);
                let gy = v.region[pi][y as usize];
                let hole = faces[..k].iter().copied().find(|&f| self.region_of(f).unwrap().1 == gy);
                match hole {
                    Some(f) if gy != NONE => {
                        let j = v.sigma(pi as u8, gy, v.pos[pi][y as usize] as usize);
                        let r = by_pos[by_pos_base[f as usize] as usize + j];
                        let t = s.twin(r);
                        let c = self.count[r as usize] + 1 + u8::from(in_hole(t));
                        if s.kind(r) != um.kind(z) {
                            return Err(GluingError::PairMismatch { dart: r });
                        }
                        check(r, s.kind(r), c)?;
                        twin[i] = nt(t);
                        count[i] = c;
                    }
                    _ => {
                        twin[i] = id(u, y);
                        count[i] = 1;
                    }
                }
                kind[i] = um.kind(z);
                pos[i] = v.pos[pi][z as usize];
            }
        }

        let mut face_start = Vec::with_capacity(nf + units.len() * 2 * v.crossings + 1);
        let mut face_darts = Vec::with_capacity(total);
        let mut label = Vec::new();
        let mut parent = Vec::new();
        face_start.push(0u32);
        for f in 0..nf as u32 {
            if hole_unit[f as usize] != NONE {
                continue;
            }
            face_darts.extend(s.face(f).iter().map(|&d| newid[d as usize]));
            face_start.push(face_darts.len() as u32);
            label.push(self.label[f as usize]);
            parent.push(f);
        }
        for (u, unit) in units.iter().enumerate() {
            let (faces, k) = unit.faces();
            let pi = parity[u];
            let um = &v.maps[pi as usize];
            let holes: Vec<u32> = faces[..k].iter().map(|&f| self.region_of(f).unwrap().1).collect();
            for (h, fk) in v.face_kind[pi as usize].iter().enumerate() {
                let lab = match *fk {
                    ViewFace::Region(g) if holes.contains(&g) => continue,
                    ViewFace::Region(g) => Label::Region { owner: pi, tface: g },
                    ViewFace::Trunc => Label::Trunc,
                };
                face_darts.extend(um.face(h as u32).iter().map(|&z| id(u, z)));
                face_start.push(face_darts.len() as u32);
                label.push(lab);
                parent.push(faces[0]);
            }
        }
        let map = CombinatorialMap::from_face_lists(face_start, face_darts, twin, kind)?;
        Ok(Sheet { map, label, pos, count, tag, parent })
    }
}

/// Statistics from growing the cover.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvolveStats {
    /// Loaded edges erased at each stage; each met exactly four polyhedra.
    pub saturated_edges: Vec<usize>,
    /// Largest number of loaded edges on one region at each stage.
    pub max_loaded_per_region: Vec<usize>,
    /// Largest polyhedron count on a surviving link edge at each stage.
    pub max_link_count: Vec<u8>,
}

pub(crate) fn max_loaded_per_region(sheet: &Sheet) -> usize {
    let mut per = vec![0usize; sheet.map.face_count()];
    for d in 0..sheet.map.dart_count() as Dart {
        if sheet.is_loaded(d) {
            per[sheet.map.face_of(d) as usize] += 1;
        }
    }
    per.into_iter().max().unwrap_or(0)
}

/// Grows the cover for `depth` full stages from the initial polyhedron.
pub(crate) fn evolve(v: &Views, depth: u32) -> Result<(Sheet, EvolveStats), GluingError> {
    let mut sheet = Sheet::initial(v);
    let mut stats = EvolveStats::default();
    let record = |sheet: &Sheet, stats: &mut EvolveStats| {
        stats.max_loaded_per_region.push(max_loaded_per_region(sheet));
        let m = (0..sheet.map.dart_count())
            .filter(|&d| sheet.map.kind(d as Dart) == EdgeKind::Link)
            .map(|d| sheet.count[d])
            .max()
            .unwrap_or(0);
        stats.max_link_count.push(m);
    };
    record(&sheet, &mut stats);
    stats.saturated_edges.push(0);
    for _ in 0..depth {
        let units = sheet.stage_units(v)?;
        let pairs = units.iter().filter(|u| matches!(u, Unit::Pair(..))).count();
        sheet = sheet.cover(v, &units)?;
        stats.saturated_edges.push(pairs);
        record(&sheet, &mut stats);
    }
    Ok((sheet, stats))
}

/// A single region of parity-`1 - pi` ownership as a disk with an outer
/// face. Tile edge `k` is the region's `k`-th dart from position 0.
pub(crate) fn region_model(v: &Views, pi: u8, g: u32) -> Sheet {
    let o = (1 - pi) as usize;
    let um = &v.maps[o];
    let mut cycle = vec![v.at[o][g as usize][0]];
    loop {
        let x = um.face_next(*cycle.last().unwrap());
        if x == cycle[0] {
            break;
        }
        cycle.push(x);
    }
    let m = cycle.len() as u32;
    let twin: Vec<Dart> = (0..2 * m).map(|d| if d < m { d + m } else { d - m }).collect();
    let kind: Vec<EdgeKind> =
        (0..2 * m).map(|d| um.kind(cycle[(d % m) as usize])).collect();
    let mut pos: Vec<u16> = cycle.iter().map(|&d| v.pos[o][d as usize]).collect();
    pos.extend(std::iter::repeat(0).take(m as usize));
    let mut tag = vec![NONE; m as usize];
    tag.extend(0..m);
    let inner: Vec<Dart> = (0..m).collect();
    let outer: Vec<Dart> = std::iter::once(m).chain((1..m).rev().map(|k| m + k)).collect();
    let map = CombinatorialMap::from_faces(&[inner, outer], twin, kind).expect("polygon");
    Sheet {
        map,
        label: vec![Label::Region { owner: o as u8, tface: g }, Label::Outer],
        pos,
        count: vec![1; 2 * m as usize],
        tag,
        parent: vec![NONE; 2],
    }
}

/// The shared dart of `gd` facing `ge` in view `o`, if they share exactly
/// one edge.
pub(crate) fn shared_dart(v: &Views, o: usize, gd: u32, ge: u32) -> Option<Dart> {
    let um = &v.maps[o];
    let mut found = None;
    for &d in &v.at[o][gd as usize] {
        if v.region[o][um.twin(d) as usize] == ge {
            if found.is_some() {
                return None;
            }
            found = Some(d);
        }
    }
    found
}

/// A loaded pair of parity-`1 - pi` regions as a disk, joined along the
/// edge that the covering copy's faces `gd` and `ge` share. Tile edges run
/// over the clockwise region after the loaded edge, then the other one.
pub(crate) fn pair_model(v: &Views, pi: u8, gd: u32, ge: u32) -> Result<Sheet, GluingError> {
    let o = (1 - pi) as usize;
    let um = &v.maps[o];
    if !v.cw[gd as usize] || v.cw[ge as usize] {
        return Err(GluingError::NotAdjacent(gd, ge));
    }
    // the loaded edge sits where the covering copy's shared edge lands
    let p = pi as usize;
    let y = shared_dart(v, p, gd, ge).ok_or(GluingError::NotAdjacent(gd, ge))?;
    let jd = v.sigma(pi, gd, v.pos[p][y as usize] as usize);
    let je = v.sigma(pi, ge, v.pos[p][v.maps[p].twin(y) as usize] as usize);
    let a = v.at[o][gd as usize][jd];
    let b = v.at[o][ge as usize][je];
    let walk = |start: Dart| {
        let mut out = Vec::new();
        let mut x = um.face_next(start);
        while x != start {
            out.push(x);
            x = um.face_next(x);
        }
        out
    };
    let dpart = walk(a);
    let epart = walk(b);
    let l = (dpart.len() + epart.len()) as u32;
    let tile: Vec<Dart> = dpart.iter().chain(&epart).copied().collect();
    let (al, bl) = (l, l + 1);
    let out = |k: u32| l + 2 + k;
    let total = 2 * l + 2;
    let mut twin = vec![NONE; total as usize];
    let mut kind = vec![EdgeKind::Link; total as usize];
    let mut pos = vec![0u16; total as usize];
    let mut count = vec![1u8; total as usize];
    let mut tag = vec![NONE; total as usize];
    for k in 0..l {
        twin[k as usize] = out(k);
        twin[out(k) as usize] = k;
        let kd = um.kind(tile[k as usize]);
        kind[k as usize] = kd;
        kind[out(k) as usize] = kd;
        pos[k as usize] = v.pos[o][tile[k as usize] as usize];
        tag[out(k) as usize] = k;
    }
    twin[al as usize] = bl;
    twin[bl as usize] = al;
    pos[al as usize] = v.pos[o][a as usize];
    pos[bl as usize] = v.pos[o][b as usize];
    count[al as usize] = 3;
    count[bl as usize] = 3;
    let nd = dpart.len() as u32;
    let dface: Vec<Dart> = std::iter::once(al).chain(0..nd).collect();
    let eface: Vec<Dart> = std::iter::once(bl).chain(nd..l).collect();
    let oface: Vec<Dart> = std::iter::once(out(0)).chain((1..l).rev().map(out)).collect();
    let map = CombinatorialMap::from_faces(&[dface, eface, oface], twin, kind)?;
    Ok(Sheet {
        map,
        label: vec![
            Label::Region { owner: o as u8, tface: gd },
            Label::Region { owner: o as u8, tface: ge },
            Label::Outer,
        ],
        pos,
        count,
        tag,
        parent: vec![NONE; 3],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link_diagram::{build_planar_map, parse_pd_code};
    use crate::polyhedral::{checkerboard, truncate};

    fn views(pd: &str) -> Views {
        let m = build_planar_map(&parse_pd_code(pd).unwrap()).unwrap();
        Views::new(&truncate(&m, &checkerboard(&m).unwrap()).unwrap())
    }

    const HOPF: &str = "X 1,4,2,3 / X 3,2,4,1";
    const TREFOIL: &str = "X 1,4,2,5 / X 3,6,4,1 / X 5,2,6,3";
    const BORROMEAN: &str =
        "X 6,1,7,2 / X 12,8,9,7 / X 4,12,1,11 / X 10,5,11,6 / X 8,4,5,3 / X 2,9,3,10";

    #[test]
    fn mirror_positions_are_consistent() {
        let v = views(TREFOIL);
        for pi in 0..2 {
            let m = &v.maps[pi];
            for g in 0..v.at[0].len() {
                for (i, &d) in v.at[pi][g].iter().enumerate() {
                    assert_eq!(v.pos[pi][d as usize] as usize, i);
                    assert_eq!(v.region[pi][d as usize], g as u32);
                    let f = m.face_of(d);
                    assert_eq!(v.face_kind[pi][f as usize], ViewFace::Region(g as u32));
                }
            }
            assert!(m.is_spherical());
        }
    }

    #[test]
    fn first_stage_loads_every_link_edge() {
        let v = views(HOPF);
        let s = Sheet::initial(&v);
        let units = s.stage_units(&v).unwrap();
        assert_eq!(units.len(), 4);
        let s1 = s.cover(&v, &units).unwrap();
        assert!(s1.map.is_spherical());
        // four cubes of five faces each plus the two old squares
        assert_eq!(s1.map.face_count(), 2 + 4 * 5);
        let loaded = (0..s1.map.dart_count() as Dart).filter(|&d| s1.is_loaded(d)).count();
        assert_eq!(loaded, 2 * 4);
        assert_eq!(max_loaded_per_region(&s1), 1);
    }

    #[test]
    fn evolve_saturates_edges() {
        for pd in [HOPF, TREFOIL] {
            let v = views(pd);
            let (sheet, stats) = evolve(&v, 3).unwrap();
            assert!(sheet.map.is_spherical());
            assert!(stats.max_loaded_per_region.iter().all(|&x| x <= 1));
            assert!(stats.max_link_count.iter().all(|&x| x <= 3));
            assert!(stats.saturated_edges[2] > 0);
        }
    }

    #[test]
    fn models_are_disks() {
        let v = views(TREFOIL);
        for pi in 0..2 {
            for g in 0..v.at[0].len() as u32 {
                let s = region_model(&v, pi, g);
                assert_eq!(s.map.euler_characteristic(), 2);
                let p = s.cover(&v, &[Unit::Single(0)]).unwrap();
                assert_eq!(p.map.face_count(), 1 + 2 * 3 + 1);
            }
        }
        let (gd, ge) = (0..5u32)
            .flat_map(|a| (0..5u32).map(move |b| (a, b)))
            .find(|&(a, b)| v.cw[a as usize] && !v.cw[b as usize])
            .unwrap();
        for pi in 0..2 {
            let s = pair_model(&v, pi, gd, ge).unwrap();
            let p = s.cover(&v, &[Unit::Pair(0, 1)]).unwrap();
            assert_eq!(p.map.face_count(), 1 + 2 * 3);
        }
    }

    #[test]
    fn same_sign_twist_is_rejected() {
        let v = views(BORROMEAN);
        assert!(evolve(&v, 3).is_ok());
        let mut mirrored = v.clone();
        mirrored.shift.iter_mut().for_each(|s| *s = -*s);
        assert!(evolve(&mirrored, 3).is_ok());
        let mut same = v.clone();
        same.shift.iter_mut().for_each(|s| *s = 2);
        assert!(matches!(evolve(&same, 4), Err(GluingError::PairMismatch { .. })));
    }
}
