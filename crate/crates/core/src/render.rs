//! SVG pictures of planar chamber tilings.
//!
//! Hyperbolic tilings are drawn in the Poincaré disk (edges as circular arcs),
//! Euclidean ones in the plane.  Coordinates are printed with four decimals so
//! the output is byte-stable.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::CoxeterMatrix;
use crate::engine::{
    chamber_of_system, decompose_in, group_canonical_generators, group_chamber_bfs, EngineError,
    Group, SubgroupSpec,
};
use crate::geometry::{realize_coxeter, Corner, GeometryError, Polytope, SpaceKind};
use crate::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    PoincareDisk,
    EuclideanPlane,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// Defaults to the model matching the group.
    pub model: Option<Model>,
    pub depth: usize,
    pub max_chambers: usize,
    pub stroke_width: f64,
    pub mirror_width: f64,
    pub highlight: Option<SubgroupSpec>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            model: None,
            depth: 6,
            max_chambers: 20_000,
            stroke_width: 0.002,
            mirror_width: 0.006,
            highlight: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("only planar groups can be drawn (got dimension {0})")]
    Dimension(usize),
    #[error("model {0:?} does not match a {1:?} group")]
    ModelMismatch(Model, SpaceKind),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Rendered picture with the counts it was built from.
#[derive(Debug, Clone)]
pub struct Rendering {
    pub svg: String,
    pub chambers: usize,
    pub highlighted: usize,
}

fn num(x: f64) -> String {
    let s = format!("{:.4}", x);
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

type Pt = [f64; 2];

fn to_poincare(k: &[f64]) -> Pt {
    let r2 = (k[0] * k[0] + k[1] * k[1]).min(1.0);
    let s = 1.0 + (1.0 - r2).sqrt();
    [k[0] / s, k[1] / s]
}

/// SVG path segment from the current point to `q` along the geodesic.
fn geodesic_to(out: &mut String, model: Model, p: Pt, q: Pt) {
    let screen = |x: Pt| format!("{} {}", num(x[0]), num(-x[1]));
    if model == Model::PoincareDisk {
        let det = 2.0 * (p[0] * q[1] - p[1] * q[0]);
        if det.abs() > 1e-9 {
            let a = p[0] * p[0] + p[1] * p[1] + 1.0;
            let b = q[0] * q[0] + q[1] * q[1] + 1.0;
            let c = [(a * q[1] - b * p[1]) / det, (b * p[0] - a * q[0]) / det];
            let r = (c[0] * c[0] + c[1] * c[1] - 1.0).max(0.0).sqrt();
            let cross = (q[0] - p[0]) * (c[1] - p[1]) - (q[1] - p[1]) * (c[0] - p[0]);
            let sweep = if cross > 0.0 { 1 } else { 0 };
            let _ = write!(out, " A {} {} 0 0 {} {}", num(r), num(r), sweep, screen(q));
            return;
        }
    }
    let _ = write!(out, " L {}", screen(q));
}

fn polygon_points(p: &Polytope, model: Model) -> Vec<Pt> {
    p.corners()
        .iter()
        .filter_map(|c| match c {
            Corner::At(v) => {
                let ch = p.all_vertices()[*v].chart();
                Some(match model {
                    Model::PoincareDisk => to_poincare(&ch),
                    Model::EuclideanPlane => [ch[0], ch[1]],
                })
            }
            Corner::Open => None,
        })
        .collect()
}

fn polygon_path(points: &[Pt], model: Model) -> String {
    let mut d = String::new();
    if let Some(first) = points.first() {
        let _ = write!(d, "M {} {}", num(first[0]), num(-first[1]));
        for k in 0..points.len() {
            geodesic_to(&mut d, model, points[k], points[(k + 1) % points.len()]);
        }
        d.push_str(" Z");
    }
    d
}

pub fn render_svg(
    m: &CoxeterMatrix,
    spec: &RenderSpec,
    tol: &Tolerances,
) -> Result<Rendering, RenderError> {
    let real = realize_coxeter(m, tol)?;
    let space = real.space();
    if space.dim != 2 {
        return Err(RenderError::Dimension(space.dim));
    }
    let natural = match space.kind {
        SpaceKind::Hyperbolic => Model::PoincareDisk,
        SpaceKind::Euclidean => Model::EuclideanPlane,
    };
    let model = spec.model.unwrap_or(natural);
    if model != natural {
        return Err(RenderError::ModelMismatch(model, space.kind));
    }
    let group = Group::new(m, *tol);
    let chambers = group_chamber_bfs(&group, spec.depth, spec.max_chambers);
    let tiles = decompose_in(&real, &chambers)?;
    let inside: HashSet<Vec<i64>> = match &spec.highlight {
        Some(h) => {
            let sys = group_canonical_generators(&group, h)?;
            let ch = chamber_of_system(&group, sys, spec.max_chambers)?;
            ch.chambers.elements.into_iter().map(|e| e.key).collect()
        }
        None => HashSet::new(),
    };

    let polys: Vec<Vec<Pt>> = tiles
        .tiles
        .iter()
        .map(|t| polygon_points(t, model))
        .collect();
    let (lo, hi) = match model {
        Model::PoincareDisk => ([-1.0, -1.0], [1.0, 1.0]),
        Model::EuclideanPlane => {
            let mut lo = [f64::INFINITY; 2];
            let mut hi = [f64::NEG_INFINITY; 2];
            for p in polys.iter().flatten() {
                for k in 0..2 {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
            (lo, hi)
        }
    };
    let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let scale = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9) / 2.0;
    let sw = spec.stroke_width * scale;
    let mw = spec.mirror_width * scale;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"800\">",
        num(lo[0] - pad),
        num(-hi[1] - pad),
        num(hi[0] - lo[0] + 2.0 * pad),
        num(hi[1] - lo[1] + 2.0 * pad)
    );
    let _ = writeln!(
        svg,
        "<style>.chamber{{fill:#fff;stroke:#333;stroke-width:{sw}}} .highlight{{fill:#f4b942}} .base{{fill:#9ecae1}} .mirror{{fill:none;stroke:#c0392b;stroke-width:{mw}}} .boundary{{fill:none;stroke:#000;stroke-width:{sw}}}</style>",
        sw = num(sw),
        mw = num(mw)
    );
    if model == Model::PoincareDisk {
        let _ = writeln!(
            svg,
            "<circle class=\"boundary\" cx=\"0\" cy=\"0\" r=\"1\"/>"
        );
    }
    let mut highlighted = 0;
    for (k, pts) in polys.iter().enumerate() {
        let key = &chambers.elements[k].key;
        let class = if inside.contains(key) {
            highlighted += 1;
            "chamber highlight"
        } else if k == 0 {
            "chamber base"
        } else {
            "chamber"
        };
        let _ = writeln!(
            svg,
            "<path class=\"{class}\" d=\"{}\"/>",
            polygon_path(pts, model)
        );
    }
    // Mirrors of the base chamber.
    let base = polygon_points(&real.polytope, model);
    let _ = writeln!(
        svg,
        "<path class=\"mirror\" d=\"{}\"/>",
        polygon_path(&base, model)
    );
    svg.push_str("</svg>\n");
    Ok(Rendering {
        svg,
        chambers: chambers.len(),
        highlighted,
    })
}
