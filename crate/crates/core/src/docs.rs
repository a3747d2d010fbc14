//! JSON documents read and written by the command line and the C interface.
//!
//! Coxeter matrix: `{"rank": n, "m": [[...]], "weights": [{"i","j","c"}]}`
//! with ∞ written as 0.  Polytope: `{"space": "euclidean"|"hyperbolic",
//! "halfspaces": [{"normal": [...], "offset": b}]}` or `{"triangle": [p,q,r]}`.
//! Subgroup: `{"reflections": [{"word": [...]} | {"root": [...]}]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{CoxeterDiagram, CoxeterMatrix, DiagramError, EdgeLabel};
use crate::geometry::{realize_triangle, GeometryError, Hyperplane, Polytope, SpaceKind};
use crate::Tolerances;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("rank is {rank} but the matrix has {rows} rows")]
    RankMismatch { rank: usize, rows: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub i: usize,
    pub j: usize,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub rank: usize,
    pub m: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<WeightEntry>,
}

impl MatrixDocument {
    pub fn to_matrix(&self) -> Result<CoxeterMatrix, DocError> {
        if self.m.len() != self.rank {
            return Err(DocError::RankMismatch {
                rank: self.rank,
                rows: self.m.len(),
            });
        }
        let mut m = CoxeterMatrix::from_codes(&self.m)?;
        for w in &self.weights {
            m = m.with_weight(w.i, w.j, w.c)?;
        }
        Ok(m)
    }
}

impl CoxeterMatrix {
    pub fn to_document(&self) -> MatrixDocument {
        let n = self.rank();
        MatrixDocument {
            rank: n,
            m: (0..n)
                .map(|i| (0..n).map(|j| self.label(i, j).code()).collect())
                .collect(),
            weights: self
                .weights()
                .iter()
                .map(|(&(i, j), &c)| WeightEntry { i, j, c })
                .collect(),
        }
    }
}

pub fn parse_matrix(text: &str) -> Result<CoxeterMatrix, DocError> {
    serde_json::from_str::<MatrixDocument>(text)?.to_matrix()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceDocument {
    pub normal: Vec<f64>,
    /// Euclidean offset `b` in `normal·x ≥ b`; absent for hyperbolic normals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolytopeDocument {
    Triangle {
        triangle: [u32; 3],
    },
    Halfspaces {
        space: SpaceKind,
        halfspaces: Vec<HalfspaceDocument>,
    },
}

impl PolytopeDocument {
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeDocument::Halfspaces {
            space: p.space().kind,
            halfspaces: p
                .facets()
                .iter()
                .map(|h| match h {
                    Hyperplane::Euclidean { normal, offset } => HalfspaceDocument {
                        normal: normal.iter().copied().collect(),
                        offset: Some(*offset),
                    },
                    Hyperplane::Hyperbolic { normal } => HalfspaceDocument {
                        normal: normal.iter().copied().collect(),
                        offset: None,
                    },
                })
                .collect(),
        }
    }

    pub fn to_polytope(&self, tol: Tolerances) -> Result<Polytope, DocError> {
        match self {
            PolytopeDocument::Triangle {
                triangle: [p, q, r],
            } => Ok(realize_triangle(&CoxeterMatrix::triangle(*p, *q, *r)?)?),
            PolytopeDocument::Halfspaces { space, halfspaces } => {
                let hs = halfspaces
                    .iter()
                    .map(|h| match space {
                        SpaceKind::Euclidean => {
                            Hyperplane::euclidean(&h.normal, h.offset.unwrap_or(0.0))
                        }
                        SpaceKind::Hyperbolic => Hyperplane::hyperbolic(&h.normal),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Polytope::new(hs, tol)?)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeDocument {
    pub a: usize,
    pub b: usize,
    /// `"3"`, `"∞"` or `"dotted"`.
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub nodes: Vec<usize>,
    pub edges: Vec<EdgeDocument>,
}

impl DiagramDocument {
    pub fn from_diagram(d: &CoxeterDiagram) -> Self {
        DiagramDocument {
            nodes: d.nodes().to_vec(),
            edges: d
                .edges()
                .iter()
                .map(|e| {
                    let (label, weight) = match e.label {
                        EdgeLabel::Order(m) => (m.to_string(), None),
                        EdgeLabel::Parallel => ("∞".to_string(), None),
                        EdgeLabel::Dotted(c) => ("dotted".to_string(), Some(c)),
                    };
                    EdgeDocument {
                        a: d.nodes()[e.a],
                        b: d.nodes()[e.b],
                        label,
                        weight,
                    }
                })
                .collect(),
        }
    }
}
