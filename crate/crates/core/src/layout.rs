//! Tutte barycentric layout of tilings.

use serde::{Deserialize, Serialize};
use sprs::{FillInReduction, TriMat};
use sprs_ldl::Ldl;
use thiserror::Error;

use crate::map::{CombinatorialMap, Dart, NONE};
use crate::tiling::{FaceClass, Tiling};

/// Above this many interior vertices the system is solved iteratively.
pub const DIRECT_SOLVER_LIMIT: usize = 50_000;
/// Required barycentric residual in the max norm.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum LayoutError {
    #[error("face {0} does not exist")]
    NoSuchFace(u32),
    #[error("tiling is not connected")]
    Disconnected,
    #[error("singular barycentric system")]
    Singular,
    #[error("solver stopped at residual {0:e}")]
    NotConverged(f64),
    #[error("degenerate drawing at face {face}; separation pair {pair:?}")]
    Degenerate { face: u32, pair: Option<(u32, u32)> },
}

/// Boundary shape for the outer face.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// Regular polygon with one corner per seed edge; boundary vertices
    /// between corners are spaced evenly along the sides.
    #[default]
    Polygon,
    /// Every boundary vertex on the unit circle.
    Circle,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    /// Per vertex.
    pub positions: Vec<[f64; 2]>,
    /// Per dart: the vertex it leaves.
    pub vertex_of: Vec<u32>,
    pub outer: u32,
    /// Boundary vertices in outer-face order.
    pub boundary: Vec<u32>,
    pub residual: f64,
}

impl Layout {
    pub fn point(&self, d: Dart) -> [f64; 2] {
        self.positions[self.vertex_of[d as usize] as usize]
    }
}

/// A truncation square if there is one, else face 0.
pub fn default_outer(t: &Tiling) -> u32 {
    t.outer.unwrap_or_else(|| {
        (0..t.map.face_count() as u32)
            .find(|&f| t.class[f as usize] == FaceClass::Truncation)
            .unwrap_or(0)
    })
}

fn boundary_positions(t: &Tiling, outer: u32, cycle: &[Dart], shape: Shape) -> Vec<[f64; 2]> {
    let n = cycle.len();
    let mut corners: Vec<usize> = if shape == Shape::Polygon && Some(outer) == t.outer {
        (0..n).filter(|&i| t.corner[cycle[i] as usize]).collect()
    } else {
        Vec::new()
    };
    if shape == Shape::Circle || corners.len() < 3 {
        corners = (0..n).collect();
    }
    // outer face runs clockwise, so place its vertices clockwise
    let k = corners.len();
    let corner_at = |c: usize| {
        let a = std::f64::consts::FRAC_PI_2 - std::f64::consts::TAU * c as f64 / k as f64;
        [a.cos(), a.sin()]
    };
    let mut pos = vec![[0.0; 2]; n];
    for c in 0..k {
        let (i0, i1) = (corners[c], corners[(c + 1) % k]);
        let span = (i1 + n - i0) % n;
        let span = if span == 0 { n } else { span };
        let (p, q) = (corner_at(c), corner_at((c + 1) % k));
        for s in 0..span {
            let t = s as f64 / span as f64;
            pos[(i0 + s) % n] = [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
        }
    }
    pos
}

/// Neighbour lists with multiplicity, one entry per outgoing dart.
fn neighbours(m: &CombinatorialMap, vid: &[u32], nv: usize) -> Vec<Vec<u32>> {
    let mut nb = vec![Vec::new(); nv];
    for d in 0..m.dart_count() as Dart {
        nb[vid[d as usize] as usize].push(vid[m.twin(d) as usize]);
    }
    nb
}

fn residual(nb: &[Vec<u32>], fixed: &[bool], pos: &[[f64; 2]]) -> f64 {
    let mut worst: f64 = 0.0;
    for v in 0..pos.len() {
        if fixed[v] || nb[v].is_empty() {
            continue;
        }
        let k = nb[v].len() as f64;
        for c in 0..2 {
            let mean = nb[v].iter().map(|&u| pos[u as usize][c]).sum::<f64>() / k;
            worst = worst.max((pos[v][c] - mean).abs());
        }
    }
    worst
}

/// Straight-line drawing with the outer face fixed to `shape` and every
/// other vertex at the mean of its neighbours.
pub fn tutte_layout(t: &Tiling, outer: Option<u32>, shape: Shape) -> Result<Layout, LayoutError> {
    let m = &t.map;
    let outer = outer.unwrap_or_else(|| default_outer(t));
    if outer as usize >= m.face_count() {
        return Err(LayoutError::NoSuchFace(outer));
    }
    if m.components().1 != 1 {
        return Err(LayoutError::Disconnected);
    }
    let (vid, nv) = m.vertex_ids();
    let cycle = t.cycle(outer);
    let bpos = boundary_positions(t, outer, &cycle, shape);
    let mut pos = vec![[0.0; 2]; nv];
    let mut fixed = vec![false; nv];
    let mut boundary = Vec::with_capacity(cycle.len());
    for (i, &d) in cycle.iter().enumerate() {
        let v = vid[d as usize] as usize;
        if !fixed[v] {
            fixed[v] = true;
            pos[v] = bpos[i];
            boundary.push(v as u32);
        }
    }
    let nb = neighbours(m, &vid, nv);
    let mut index = vec![NONE; nv];
    let mut interior = Vec::new();
    for v in 0..nv {
        if !fixed[v] {
            index[v] = interior.len() as u32;
            interior.push(v);
        }
    }
    let n = interior.len();
    if n > 0 {
        let mut a = TriMat::new((n, n));
        let mut rhs = [vec![0.0; n], vec![0.0; n]];
        for (i, &v) in interior.iter().enumerate() {
            a.add_triplet(i, i, nb[v].len() as f64);
            for &u in &nb[v] {
                let u = u as usize;
                if fixed[u] {
                    rhs[0][i] += pos[u][0];
                    rhs[1][i] += pos[u][1];
                } else {
                    a.add_triplet(i, index[u] as usize, -1.0);
                }
            }
        }
        let a = a.to_csc::<usize>();
        let sol = if n == 1 {
            let k = nb[interior[0]].len() as f64;
            [vec![rhs[0][0] / k], vec![rhs[1][0] / k]]
        } else if n <= DIRECT_SOLVER_LIMIT {
            let ldl = Ldl::new()
                .fill_in_reduction(FillInReduction::ReverseCuthillMcKee)
                .numeric(a.view())
                .map_err(|_| LayoutError::Singular)?;
            [ldl.solve(&rhs[0]), ldl.solve(&rhs[1])]
        } else {
            [conjugate_gradient(&a, &rhs[0])?, conjugate_gradient(&a, &rhs[1])?]
        };
        for (i, &v) in interior.iter().enumerate() {
            pos[v] = [sol[0][i], sol[1][i]];
        }
    }
    let res = residual(&nb, &fixed, &pos);
    if !res.is_finite() || res > RESIDUAL_TOLERANCE {
        return Err(LayoutError::NotConverged(res));
    }
    let layout = Layout { positions: pos, vertex_of: vid, outer, boundary, residual: res };
    if let Some(face) = first_degenerate_face(m, &layout) {
        return Err(LayoutError::Degenerate { face, pair: separation_pair(m, &layout.vertex_of, face) });
    }
    Ok(layout)
}

/// Jacobi-preconditioned conjugate gradients on the interior Laplacian.
fn conjugate_gradient(a: &sprs::CsMat<f64>, b: &[f64]) -> Result<Vec<f64>, LayoutError> {
    let n = b.len();
    let mut diag = vec![1.0; n];
    for (v, (i, j)) in a.iter() {
        if i == j {
            diag[i] = *v;
        }
    }
    let mul = |x: &[f64]| -> Vec<f64> {
        let mut y = vec![0.0; n];
        for (v, (i, j)) in a.iter() {
            y[i] += v * x[j];
        }
        y
    };
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&diag).map(|(r, d)| r / d).collect();
    let mut p = z.clone();
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
    for _ in 0..20 * n.max(100) {
        let ap = mul(&p);
        let alpha = rz / p.iter().zip(&ap).map(|(a, b)| a * b).sum::<f64>();
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        // residual per row scaled by the degree equals the barycentric residual
        let worst = r.iter().zip(&diag).map(|(r, d)| (r / d).abs()).fold(0.0, f64::max);
        if worst < RESIDUAL_TOLERANCE * 1e-2 {
            return Ok(x);
        }
        z = r.iter().zip(&diag).map(|(r, d)| r / d).collect();
        let rz2: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz2 / rz;
        rz = rz2;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(LayoutError::NotConverged(r.iter().map(|v| v.abs()).fold(0.0, f64::max)))
}

/// Twice the signed area of a face, summed from its first corner, and a
/// bound on the rounding error of that sum.
fn doubled_area(m: &CombinatorialMap, layout: &Layout, f: u32) -> (f64, f64) {
    let pts: Vec<[f64; 2]> = m.face(f).iter().map(|&d| layout.point(d)).collect();
    let o = pts[0];
    let (mut sum, mut mag) = (0.0, 0.0);
    for w in pts[1..].windows(2) {
        let (a, b) = ([w[0][0] - o[0], w[0][1] - o[1]], [w[1][0] - o[0], w[1][1] - o[1]]);
        sum += a[0] * b[1] - a[1] * b[0];
        mag += (a[0] * b[1]).abs() + (a[1] * b[0]).abs();
    }
    (sum, (pts.len() as f64 + 4.0) * f64::EPSILON * mag)
}

/// Signed area of a face; inner faces are positive in a valid drawing.
pub fn face_area(m: &CombinatorialMap, layout: &Layout, f: u32) -> f64 {
    doubled_area(m, layout, f).0 / 2.0
}

/// True when the area of `f` is positive beyond rounding error.
fn certainly_positive(m: &CombinatorialMap, layout: &Layout, f: u32) -> bool {
    let (a, err) = doubled_area(m, layout, f);
    a > err && a > 0.0
}

fn first_degenerate_face(m: &CombinatorialMap, layout: &Layout) -> Option<u32> {
    (0..m.face_count() as u32).find(|&f| f != layout.outer && !certainly_positive(m, layout, f))
}

/// Two vertices of `face` whose removal disconnects the graph.
fn separation_pair(m: &CombinatorialMap, vid: &[u32], face: u32) -> Option<(u32, u32)> {
    let mut vs: Vec<u32> = m.face(face).iter().map(|&d| vid[d as usize]).collect();
    vs.sort_unstable();
    vs.dedup();
    let nv = vid.iter().map(|&v| v + 1).max().unwrap_or(0) as usize;
    let nb = neighbours(m, vid, nv);
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let (a, b) = (vs[i], vs[j]);
            let start = (0..nv as u32).find(|&v| v != a && v != b)?;
            let mut seen = vec![false; nv];
            seen[a as usize] = true;
            seen[b as usize] = true;
            seen[start as usize] = true;
            let mut stack = vec![start];
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &u in &nb[v as usize] {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        count += 1;
                        stack.push(u);
                    }
                }
            }
            if count < nv - 2 {
                return Some((a, b));
            }
        }
    }
    None
}

/// Result of the crossing checks on a drawing.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub faces_checked: usize,
    pub non_positive_faces: usize,
    /// |sum of inner face areas - outer polygon area|.
    pub area_defect: f64,
    pub edges_checked: usize,
    pub segment_crossings: usize,
}

impl CrossingReport {
    pub fn is_crossing_free(&self) -> bool {
        self.non_positive_faces == 0 && self.area_defect <= 1e-9 && self.segment_crossings == 0
    }
}

/// Sign of the orientation of `abc`, or 0 when rounding could flip it.
fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> i8 {
    let l = (b[0] - a[0]) * (c[1] - a[1]);
    let r = (b[1] - a[1]) * (c[0] - a[0]);
    let det = l - r;
    let err = 4.0 * f64::EPSILON * (l.abs() + r.abs());
    if det > err {
        1
    } else if det < -err {
        -1
    } else {
        0
    }
}

/// Face orientation tests plus a grid sweep for properly crossing edges.
/// Signs count only when they exceed a floating-point error bound, so an
/// uncertain sign is reported as a defect rather than accepted.
pub fn check_crossings(m: &CombinatorialMap, layout: &Layout) -> CrossingReport {
    let mut report = CrossingReport::default();
    let mut inner = 0.0;
    for f in 0..m.face_count() as u32 {
        if f == layout.outer {
            continue;
        }
        report.faces_checked += 1;
        if !certainly_positive(m, layout, f) {
            report.non_positive_faces += 1;
        }
        inner += face_area(m, layout, f);
    }
    report.area_defect = (inner + face_area(m, layout, layout.outer)).abs();

    let edges: Vec<(u32, u32)> = (0..m.dart_count() as Dart)
        .filter(|&d| d < m.twin(d))
        .map(|d| (layout.vertex_of[d as usize], layout.vertex_of[m.twin(d) as usize]))
        .collect();
    report.edges_checked = edges.len();
    let cells = ((edges.len() as f64).sqrt().ceil() as usize).max(1);
    let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
    for p in &layout.positions {
        for c in 0..2 {
            lo[c] = lo[c].min(p[c]);
            hi[c] = hi[c].max(p[c]);
        }
    }
    let cell_of = |x: f64, c: usize| {
        let w = (hi[c] - lo[c]).max(1e-12);
        (((x - lo[c]) / w * cells as f64) as usize).min(cells - 1)
    };
    let mut grid: Vec<Vec<u32>> = vec![Vec::new(); cells * cells];
    for (i, &(u, v)) in edges.iter().enumerate() {
        let (p, q) = (layout.positions[u as usize], layout.positions[v as usize]);
        let (x0, x1) = (cell_of(p[0].min(q[0]), 0), cell_of(p[0].max(q[0]), 0));
        let (y0, y1) = (cell_of(p[1].min(q[1]), 1), cell_of(p[1].max(q[1]), 1));
        for x in x0..=x1 {
            for y in y0..=y1 {
                grid[x * cells + y].push(i as u32);
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    for bucket in &grid {
        for (k, &i) in bucket.iter().enumerate() {
            for &j in &bucket[k + 1..] {
                let ((a, b), (c, d)) = (edges[i as usize], edges[j as usize]);
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let (p1, p2) = (layout.positions[a as usize], layout.positions[b as usize]);
                let (q1, q2) = (layout.positions[c as usize], layout.positions[d as usize]);
                let o1 = orient(p1, p2, q1);
                let o2 = orient(p1, p2, q2);
                let o3 = orient(q1, q2, p1);
                let o4 = orient(q1, q2, p2);
                if o1 * o2 < 0 && o3 * o4 < 0 && seen.insert((i.min(j), i.max(j))) {
                    report.segment_crossings += 1;
                }
            }
        }
    }
    report
}
