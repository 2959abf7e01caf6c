//! Orientation-preserving isomorphism of labelled planar maps.

use std::collections::{HashMap, VecDeque};

use crate::map::{CombinatorialMap, Dart, EdgeKind, NONE};

/// A map with one label per face.
#[derive(Clone, Copy)]
pub struct Labelled<'a> {
    pub map: &'a CombinatorialMap,
    pub face_label: &'a [u32],
}

/// Dart colours refined jointly over both maps, so equal colours mean
/// equal local views up to the refinement depth.
fn refine(a: Labelled, b: Labelled) -> (Vec<u32>, Vec<u32>) {
    let mut table: HashMap<(u32, u32, u32, u32), u32> = HashMap::new();
    let init = |l: Labelled, table: &mut HashMap<(u32, u32, u32, u32), u32>| -> Vec<u32> {
        let m = l.map;
        let (vid, nv) = m.vertex_ids();
        let mut deg = vec![0u32; nv];
        for &x in &vid {
            deg[x as usize] += 1;
        }
        (0..m.dart_count() as Dart)
            .map(|d| {
                let f = m.face_of(d);
                let key = (
                    (m.kind(d) == EdgeKind::Link) as u32,
                    l.face_label[f as usize],
                    m.face(f).len() as u32,
                    deg[vid[d as usize] as usize],
                );
                let n = table.len() as u32;
                *table.entry(key).or_insert(n)
            })
            .collect()
    };
    let mut ca = init(a, &mut table);
    let mut cb = init(b, &mut table);
    let classes = |c: &[u32], d: &[u32]| {
        let mut v: Vec<u32> = c.iter().chain(d).copied().collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    let mut count = classes(&ca, &cb);
    loop {
        let mut table: HashMap<(u32, u32, u32, u32), u32> = HashMap::new();
        let mut step = |l: Labelled, c: &[u32]| -> Vec<u32> {
            let m = l.map;
            (0..m.dart_count() as Dart)
                .map(|d| {
                    let key = (
                        c[d as usize],
                        c[m.twin(d) as usize],
                        c[m.face_next(d) as usize],
                        c[m.next(d) as usize],
                    );
                    let n = table.len() as u32;
                    *table.entry(key).or_insert(n)
                })
                .collect()
        };
        let na = step(a, &ca);
        let nb = step(b, &cb);
        let n = classes(&na, &nb);
        ca = na;
        cb = nb;
        if n == count {
            break;
        }
        count = n;
    }
    (ca, cb)
}

/// Extends `a_d -> b_d` along twin and face_next. On success the mapping
/// covers the component of `a_d`; on failure `f` and `used` are restored.
fn propagate(
    a: Labelled,
    b: Labelled,
    a_d: Dart,
    b_d: Dart,
    f: &mut [Dart],
    used: &mut [bool],
) -> bool {
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut ok = true;
    let assign = |x: Dart, y: Dart, f: &mut [Dart], used: &mut [bool], queue: &mut VecDeque<Dart>, touched: &mut Vec<Dart>| -> bool {
        if f[x as usize] != NONE {
            return f[x as usize] == y;
        }
        if used[y as usize] {
            return false;
        }
        let (ma, mb) = (a.map, b.map);
        if ma.kind(x) != mb.kind(y)
            || a.face_label[ma.face_of(x) as usize] != b.face_label[mb.face_of(y) as usize]
        {
            return false;
        }
        f[x as usize] = y;
        used[y as usize] = true;
        touched.push(x);
        queue.push_back(x);
        true
    };
    if !assign(a_d, b_d, f, used, &mut queue, &mut touched) {
        return false;
    }
    while let Some(x) = queue.pop_front() {
        let y = f[x as usize];
        if !assign(a.map.twin(x), b.map.twin(y), f, used, &mut queue, &mut touched)
            || !assign(a.map.face_next(x), b.map.face_next(y), f, used, &mut queue, &mut touched)
        {
            ok = false;
            break;
        }
    }
    if !ok {
        for x in touched {
            used[f[x as usize] as usize] = false;
            f[x as usize] = NONE;
        }
    }
    ok
}

/// Returns a dart bijection `a -> b` commuting with twin and face_next and
/// preserving edge kinds and face labels, if one exists.
pub fn isomorphism(a: Labelled, b: Labelled) -> Option<Vec<Dart>> {
    let (ma, mb) = (a.map, b.map);
    if ma.dart_count() != mb.dart_count()
        || ma.face_count() != mb.face_count()
        || ma.vertex_count() != mb.vertex_count()
    {
        return None;
    }
    let (ca, cb) = refine(a, b);
    let mut ha: Vec<u32> = ca.clone();
    let mut hb: Vec<u32> = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return None;
    }
    let mut by_colour: HashMap<u32, Vec<Dart>> = HashMap::new();
    for (d, &c) in cb.iter().enumerate() {
        by_colour.entry(c).or_default().push(d as Dart);
    }
    let (comp, ncomp) = ma.components();
    let mut f = vec![NONE; ma.dart_count()];
    let mut used = vec![false; mb.dart_count()];
    for k in 0..ncomp as u32 {
        // anchor on the rarest colour in this component
        let anchor = (0..ma.dart_count() as Dart)
            .filter(|&d| comp[d as usize] == k)
            .min_by_key(|&d| (by_colour[&ca[d as usize]].len(), d))
            .expect("component is non-empty");
        let found = by_colour[&ca[anchor as usize]]
            .iter()
            .any(|&y| !used[y as usize] && propagate(a, b, anchor, y, &mut f, &mut used));
        if !found {
            return None;
        }
    }
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> CombinatorialMap {
        let d = crate::parse_pd_code("X 1,4,2,3 / X 3,2,4,1").unwrap();
        let m = crate::build_planar_map(&d).unwrap();
        crate::truncate(&m, &crate::checkerboard(&m).unwrap()).unwrap().map().clone()
    }

    #[test]
    fn cube_automorphisms() {
        let m = cube();
        assert_eq!(m.euler_characteristic(), 2);
        let labels = vec![0; 6];
        let l = Labelled { map: &m, face_label: &labels };
        let f = isomorphism(l, l).unwrap();
        for d in 0..m.dart_count() as Dart {
            assert_eq!(f[m.twin(d) as usize], m.twin(f[d as usize]));
        }
        let mut other = labels.clone();
        other[0] = 1;
        let l2 = Labelled { map: &m, face_label: &other };
        assert!(isomorphism(l, l2).is_none());
        assert!(isomorphism(l2, l2).is_some());
    }
}
