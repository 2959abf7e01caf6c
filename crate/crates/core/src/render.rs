//! SVG drawings and the `tiling-v1` JSON format.
//!
//! `tiling-v1` fields:
//!
//! | field | meaning |
//! |---|---|
//! | `schema` | `"tiling-v1"` |
//! | `stage`, `seed`, `mode` | provenance |
//! | `darts` | dart count |
//! | `twin`, `next`, `kind` | per dart: involution, counterclockwise rotation, `link` / `truncation` |
//! | `faces` | per face: dart cycle starting at the root |
//! | `classes` | per face: `clockwise`, `counterclockwise`, `pair`, `truncation`, `outer` |
//! | `tile_types` | per face: type name or `null` |
//! | `parents` | per face: containing face of the previous stage or `null` |
//! | `type_names` | type names of the rule, indexed by type id |
//! | `loaded`, `corners` | sorted dart lists |
//! | `outer` | outer face of a disk tiling or `null` |

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::layout::Layout;
use crate::map::{CombinatorialMap, Dart, EdgeKind, MapError, NONE};
use crate::tiling::{FaceClass, Mode, Seed, Tiling, UNTYPED};

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("invalid tiling document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema `{0}`")]
    Schema(String),
    #[error("inconsistent tiling document: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Drawing options; unset fields take the defaults below.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StyleSpec {
    pub size: Option<u32>,
    pub stroke_width: Option<f64>,
    pub truncation_fill: Option<String>,
    pub clockwise_fill: Option<String>,
    pub counterclockwise_fill: Option<String>,
    pub pair_fill: Option<String>,
}

struct Style {
    size: u32,
    stroke_width: f64,
    truncation_fill: String,
    clockwise_fill: String,
    counterclockwise_fill: String,
    pair_fill: String,
}

impl StyleSpec {
    fn resolve(&self) -> Style {
        Style {
            size: self.size.unwrap_or(800),
            stroke_width: self.stroke_width.unwrap_or(0.004),
            truncation_fill: self.truncation_fill.clone().unwrap_or_else(|| "#9a9a9a".into()),
            clockwise_fill: self.clockwise_fill.clone().unwrap_or_else(|| "#ffffff".into()),
            counterclockwise_fill: self.counterclockwise_fill.clone().unwrap_or_else(|| "#f2f2f2".into()),
            pair_fill: self.pair_fill.clone().unwrap_or_else(|| "#e4ecf7".into()),
        }
    }
}

fn css_name(t: &Tiling, f: u32) -> String {
    match t.type_name(f) {
        Some(n) => n.to_string(),
        None => match t.class[f as usize] {
            FaceClass::Clockwise => "cw".into(),
            FaceClass::Counterclockwise => "ccw".into(),
            FaceClass::Pair => "pair".into(),
            FaceClass::Truncation => "trunc".into(),
            FaceClass::Outer => "outer".into(),
        },
    }
}

/// SVG 1.1 drawing: one polygon per tile, loaded edges dashed on top.
pub fn emit_svg(t: &Tiling, l: &Layout, style: &StyleSpec) -> String {
    let s = style.resolve();
    let p = |x: f64| format!("{x:.6}");
    let pt = |q: [f64; 2]| format!("{},{}", p(q[0]), p(-q[1]));
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" viewBox=\"-1.050000 -1.050000 2.100000 2.100000\">",
        s.size
    );
    let _ = writeln!(
        out,
        "<style>.tile{{stroke:#000000;stroke-width:{sw};stroke-linejoin:round;fill:{cw}}} .tile-ccw,.ccw{{fill:{ccw}}} .pair{{fill:{pair}}} .tile-trunc{{fill:{tr}}} .edge-loaded{{stroke:#000000;stroke-width:{sw};stroke-dasharray:0.012,0.008;fill:none}}</style>",
        sw = p(s.stroke_width),
        cw = s.clockwise_fill,
        ccw = s.counterclockwise_fill,
        pair = s.pair_fill,
        tr = s.truncation_fill,
    );
    out.push_str("<g id=\"tiles\">\n");
    for f in 0..t.map.face_count() as u32 {
        if f == l.outer || t.class[f as usize] == FaceClass::Outer {
            continue;
        }
        let extra = match t.class[f as usize] {
            FaceClass::Counterclockwise => " ccw",
            FaceClass::Pair => " pair",
            _ => "",
        };
        let points: Vec<String> = t.cycle(f).iter().map(|&d| pt(l.point(d))).collect();
        let _ = writeln!(
            out,
            "<polygon id=\"f{f}\" class=\"tile tile-{}{extra}\" points=\"{}\"/>",
            css_name(t, f),
            points.join(" ")
        );
    }
    out.push_str("</g>\n<g id=\"loaded\">\n");
    for d in 0..t.map.dart_count() as Dart {
        let e = t.map.twin(d);
        if d < e && t.loaded[d as usize] {
            let (a, b) = (l.point(d), l.point(e));
            let _ = writeln!(
                out,
                "<line class=\"edge-loaded\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                p(a[0]),
                p(-a[1]),
                p(b[0]),
                p(-b[1])
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[derive(Serialize, Deserialize)]
struct TilingDoc {
    schema: String,
    stage: u32,
    seed: Seed,
    mode: Mode,
    darts: usize,
    twin: Vec<Dart>,
    next: Vec<Dart>,
    kind: Vec<EdgeKind>,
    faces: Vec<Vec<Dart>>,
    classes: Vec<FaceClass>,
    tile_types: Vec<Option<String>>,
    parents: Vec<Option<u32>>,
    type_names: Vec<String>,
    loaded: Vec<Dart>,
    corners: Vec<Dart>,
    outer: Option<u32>,
}

/// Lossless `tiling-v1` dump; byte-stable for equal tilings.
pub fn emit_tiling_json(t: &Tiling) -> String {
    let m = &t.map;
    let doc = TilingDoc {
        schema: "tiling-v1".into(),
        stage: t.stage,
        seed: t.seed,
        mode: t.mode,
        darts: m.dart_count(),
        twin: m.twins().to_vec(),
        next: m.rotation().to_vec(),
        kind: m.kinds().to_vec(),
        faces: (0..m.face_count() as u32).map(|f| t.cycle(f)).collect(),
        classes: t.class.clone(),
        tile_types: (0..m.face_count() as u32).map(|f| t.type_name(f).map(str::to_string)).collect(),
        parents: t.parent.iter().map(|&p| (p != NONE).then_some(p)).collect(),
        type_names: t.type_names.clone(),
        loaded: (0..m.dart_count() as Dart).filter(|&d| t.loaded[d as usize]).collect(),
        corners: (0..m.dart_count() as Dart).filter(|&d| t.corner[d as usize]).collect(),
        outer: t.outer,
    };
    serde_json::to_string(&doc).expect("serializable") + "\n"
}

pub fn load_tiling_json(s: &str) -> Result<Tiling, RenderError> {
    let doc: TilingDoc = serde_json::from_str(s)?;
    if doc.schema != "tiling-v1" {
        return Err(RenderError::Schema(doc.schema));
    }
    let n = doc.darts;
    let nf = doc.faces.len();
    if doc.twin.len() != n || doc.next.len() != n || doc.kind.len() != n {
        return Err(RenderError::Inconsistent("per-dart arrays differ in length".into()));
    }
    if doc.classes.len() != nf || doc.tile_types.len() != nf || doc.parents.len() != nf {
        return Err(RenderError::Inconsistent("per-face arrays differ in length".into()));
    }
    if doc.faces.iter().any(Vec::is_empty) {
        return Err(RenderError::Inconsistent("empty face".into()));
    }
    let map = CombinatorialMap::from_faces(&doc.faces, doc.twin, doc.kind)?;
    if map.rotation() != doc.next.as_slice() {
        return Err(RenderError::Inconsistent("`next` disagrees with the faces".into()));
    }
    let mut tile_type = Vec::with_capacity(nf);
    for name in &doc.tile_types {
        tile_type.push(match name {
            None => UNTYPED,
            Some(name) => doc
                .type_names
                .iter()
                .position(|t| t == name)
                .ok_or_else(|| RenderError::Inconsistent(format!("unknown type `{name}`")))?
                as u32,
        });
    }
    let mark = |list: &[Dart]| -> Result<Vec<bool>, RenderError> {
        let mut v = vec![false; n];
        for &d in list {
            *v.get_mut(d as usize).ok_or_else(|| RenderError::Inconsistent(format!("dart {d} out of range")))? = true;
        }
        Ok(v)
    };
    let loaded = mark(&doc.loaded)?;
    let corner = mark(&doc.corners)?;
    Ok(Tiling {
        stage: doc.stage,
        seed: doc.seed,
        mode: doc.mode,
        class: doc.classes,
        tile_type,
        type_names: doc.type_names,
        root: doc.faces.iter().map(|c| c[0]).collect(),
        parent: doc.parents.iter().map(|p| p.unwrap_or(NONE)).collect(),
        loaded,
        corner,
        outer: doc.outer,
        map,
    })
}
