//! Model-space geometry in E² / H² (and simplices in dimension three).
//!
//! Points and hyperplanes are handled in homogeneous coordinates on `R^{n+1}`.
//! A Euclidean point `x` is `(x, 1)`; a hyperbolic point lives on the upper
//! sheet of the hyperboloid `⟨x,x⟩ = −1` for the form of signature `(n,1)`,
//! and an ideal point is a future lightlike vector scaled to last coordinate 1.
//! Every hyperplane becomes a covector `f` with the closed half-space
//! `f·X ≥ 0`, so both geometries share one polygon engine working in the
//! affine chart `X_n = 1` (the plane itself, or the Klein model).

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{
    classify_diagram, signature_with, CoxeterDiagram, CoxeterMatrix, DiagramClass, EdgeLabel,
    GramMatrix, Signature, TAU_SIG,
};
use crate::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("hyperplane normal is zero or not finite")]
    ZeroNormal,
    #[error("hyperbolic normal is not spacelike (⟨e,e⟩ = {0})")]
    NotSpacelike(f64),
    #[error("hyperplanes live in different spaces")]
    SpaceMismatch,
    #[error("the two hyperplanes coincide")]
    IdenticalHyperplanes,
    #[error("at least one half-space is required")]
    NoHalfspaces,
    #[error("the intersection of the half-spaces has empty interior")]
    EmptyInterior,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("unsupported configuration: {0}")]
    Unsupported(&'static str),
    #[error("polytope has infinite area")]
    InfiniteArea,
    #[error("vertex {0} is not a vertex of the polytope")]
    InvalidVertex(usize),
    #[error("facet set {0:?} is not a face of the polytope")]
    InvalidFace(Vec<usize>),
    #[error("polytope is not acute-angled")]
    NotAcuteAngled,
    #[error("the hyperplane does not meet the interior of the polytope")]
    DisjointSplit,
    #[error("Gram matrix is positive definite (spherical); no E²/H² realization")]
    EllipticGram,
    #[error("Gram matrix cannot be realized: {0}")]
    NotRealizable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Euclidean,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Space {
    pub kind: SpaceKind,
    pub dim: usize,
}

/// Lorentzian product of signature `(n,1)`; the last coordinate is timelike.
pub fn lorentz(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let n = a.len() - 1;
    a.rows(0, n).dot(&b.rows(0, n)) - a[n] * b[n]
}

/// A hyperplane together with a chosen positive side.
#[derive(Debug, Clone, PartialEq)]
pub enum Hyperplane {
    /// Locus `normal·x = offset`, positive side `normal·x ≥ offset`; `|normal| = 1`.
    Euclidean { normal: DVector<f64>, offset: f64 },
    /// Locus `⟨normal,x⟩ = 0`, positive side `⟨normal,x⟩ ≥ 0`; `⟨normal,normal⟩ = 1`.
    Hyperbolic { normal: DVector<f64> },
}

impl Hyperplane {
    pub fn euclidean(normal: &[f64], offset: f64) -> Result<Self, GeometryError> {
        let n = DVector::from_column_slice(normal);
        let len = n.norm();
        if len.is_nan() || len <= 1e-300 || !len.is_finite() || !offset.is_finite() {
            return Err(GeometryError::ZeroNormal);
        }
        Ok(Hyperplane::Euclidean {
            normal: n / len,
            offset: offset / len,
        })
    }

    pub fn hyperbolic(normal: &[f64]) -> Result<Self, GeometryError> {
        if normal.len() < 2 {
            return Err(GeometryError::ZeroNormal);
        }
        let e = DVector::from_column_slice(normal);
        let q = lorentz(&e, &e);
        if !q.is_finite() {
            return Err(GeometryError::ZeroNormal);
        }
        if q <= 1e-14 {
            return Err(GeometryError::NotSpacelike(q));
        }
        Ok(Hyperplane::Hyperbolic {
            normal: e / q.sqrt(),
        })
    }

    /// Rebuilds a hyperplane from a homogeneous covector, normalizing it.
    pub fn from_covector(kind: SpaceKind, f: &DVector<f64>) -> Result<Self, GeometryError> {
        let n = f.len() - 1;
        match kind {
            SpaceKind::Euclidean => Self::euclidean(f.rows(0, n).as_slice(), -f[n]),
            SpaceKind::Hyperbolic => {
                let mut e = f.clone();
                e[n] = -e[n];
                Self::hyperbolic(e.as_slice())
            }
        }
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            Hyperplane::Euclidean { .. } => SpaceKind::Euclidean,
            Hyperplane::Hyperbolic { .. } => SpaceKind::Hyperbolic,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Hyperplane::Euclidean { normal, .. } => normal.len(),
            Hyperplane::Hyperbolic { normal } => normal.len() - 1,
        }
    }

    pub fn space(&self) -> Space {
        Space {
            kind: self.kind(),
            dim: self.dim(),
        }
    }

    /// Homogeneous covector `f` with `f·X` the signed value at a point `X`.
    pub fn covector(&self) -> DVector<f64> {
        match self {
            Hyperplane::Euclidean { normal, offset } => {
                let n = normal.len();
                let mut f = DVector::zeros(n + 1);
                f.rows_mut(0, n).copy_from(normal);
                f[n] = -offset;
                f
            }
            Hyperplane::Hyperbolic { normal } => {
                let mut f = normal.clone();
                let n = f.len() - 1;
                f[n] = -f[n];
                f
            }
        }
    }

    /// Signed value at a homogeneous point.
    pub fn eval(&self, x: &DVector<f64>) -> f64 {
        self.covector().dot(x)
    }

    /// Form product of the unit normals: `u·u'` or `⟨e,e'⟩`.
    pub fn product(&self, other: &Hyperplane) -> f64 {
        match (self, other) {
            (Hyperplane::Euclidean { normal: a, .. }, Hyperplane::Euclidean { normal: b, .. }) => {
                a.dot(b)
            }
            (Hyperplane::Hyperbolic { normal: a }, Hyperplane::Hyperbolic { normal: b }) => {
                lorentz(a, b)
            }
            _ => f64::NAN,
        }
    }

    pub fn flipped(&self) -> Hyperplane {
        match self {
            Hyperplane::Euclidean { normal, offset } => Hyperplane::Euclidean {
                normal: -normal,
                offset: -offset,
            },
            Hyperplane::Hyperbolic { normal } => Hyperplane::Hyperbolic { normal: -normal },
        }
    }

    /// Whether both hyperplanes have the same locus (either orientation).
    pub fn same_locus(&self, other: &Hyperplane, tol: f64) -> bool {
        if self.space() != other.space() {
            return false;
        }
        let a = self.covector();
        let b = other.covector();
        (&a - &b).amax() <= tol || (&a + &b).amax() <= tol
    }

    /// Mirror image of a homogeneous point.
    pub fn reflect(&self, x: &DVector<f64>) -> DVector<f64> {
        match self {
            Hyperplane::Euclidean { normal, .. } => {
                let v = self.eval(x);
                let n = normal.len();
                let mut y = x.clone();
                for i in 0..n {
                    y[i] -= 2.0 * v * normal[i];
                }
                y
            }
            Hyperplane::Hyperbolic { normal } => x - normal * (2.0 * lorentz(normal, x)),
        }
    }
}

/// Relative position of two hyperplanes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleClass {
    /// Dihedral angle of the intersection of the two positive sides.
    Intersecting(f64),
    Parallel,
    /// Hyperbolic only; carries the distance between the hyperplanes.
    Divergent(f64),
}

pub fn dihedral_angle(
    h1: &Hyperplane,
    h2: &Hyperplane,
    tol: &Tolerances,
) -> Result<AngleClass, GeometryError> {
    if h1.space() != h2.space() {
        return Err(GeometryError::SpaceMismatch);
    }
    if h1.same_locus(h2, tol.geo) {
        return Err(GeometryError::IdenticalHyperplanes);
    }
    let p = h1.product(h2);
    if p.abs() < 1.0 - tol.geo {
        return Ok(AngleClass::Intersecting((-p).acos()));
    }
    match h1.kind() {
        SpaceKind::Euclidean => Ok(AngleClass::Parallel),
        SpaceKind::Hyperbolic => {
            if (p.abs() - 1.0).abs() <= tol.geo {
                Ok(AngleClass::Parallel)
            } else {
                Ok(AngleClass::Divergent(p.abs().acosh()))
            }
        }
    }
}

/// `Some(m)` when `theta = π/m` for an integer `2 ≤ m ≤ 1000` within `tol`.
pub fn submultiple_of_pi(theta: f64, tol: f64) -> Option<u32> {
    if theta <= 0.0 {
        return None;
    }
    let m = (PI / theta).round();
    if !(2.0..=1000.0).contains(&m) {
        return None;
    }
    ((theta - PI / m).abs() <= tol).then_some(m as u32)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    /// Homogeneous coordinates (see module docs).
    pub point: DVector<f64>,
    pub ideal: bool,
    /// Facets through the vertex, sorted.
    pub facets: Vec<usize>,
}

impl Vertex {
    /// Affine chart coordinates (Klein model for hyperbolic space).
    pub fn chart(&self) -> Vec<f64> {
        let n = self.point.len() - 1;
        (0..n).map(|i| self.point[i] / self.point[n]).collect()
    }
}

/// Junction between consecutive facets of a polygon's facet cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    /// The facets meet at this vertex (ordinary or ideal).
    At(usize),
    /// The boundary escapes to infinity between the two facets.
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceKind {
    Facet,
    Edge,
    Vertex,
    IdealVertex,
}

/// A face named by the facets that contain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub kind: FaceKind,
    pub facets: Vec<usize>,
}

/// Convex polytope given as an irredundant intersection of half-spaces.
#[derive(Debug, Clone)]
pub struct Polytope {
    space: Space,
    facets: Vec<Hyperplane>,
    source: Vec<usize>,
    vertices: Vec<Vertex>,
    cycle: Vec<usize>,
    corners: Vec<Corner>,
    edges: Vec<(usize, usize)>,
    recession: Vec<DVector<f64>>,
    hyperideal: usize,
    bounded: bool,
    finite_volume: bool,
    tol: Tolerances,
}

impl Polytope {
    /// Intersects the positive sides of `halfspaces`, dropping redundant ones.
    pub fn new(halfspaces: Vec<Hyperplane>, tol: Tolerances) -> Result<Self, GeometryError> {
        let first = halfspaces.first().ok_or(GeometryError::NoHalfspaces)?;
        let space = first.space();
        if halfspaces.iter().any(|h| h.space() != space) {
            return Err(GeometryError::SpaceMismatch);
        }
        match space.dim {
            2 => build_polygon(space, halfspaces, tol),
            3 => build_solid(space, halfspaces, tol),
            d => Err(GeometryError::UnsupportedDimension(d)),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn facets(&self) -> &[Hyperplane] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Index of each facet in the half-space list the polytope was built from.
    pub fn source_indices(&self) -> &[usize] {
        &self.source
    }

    pub fn all_vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Ordinary and ideal vertices.
    pub fn vertices(&self) -> (Vec<&Vertex>, Vec<&Vertex>) {
        self.vertices.iter().partition(|v| !v.ideal)
    }

    /// Unit recession directions of an unbounded Euclidean polygon.
    pub fn recession_directions(&self) -> &[DVector<f64>] {
        &self.recession
    }

    /// Facet cycle of a polygon, in counter-clockwise chart order.
    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// `corners()[k]` joins `cycle()[k]` and `cycle()[k + 1]` (cyclically).
    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    /// Pairs of facets meeting in a codimension-2 face through ordinary points.
    pub fn ridges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn finite_volume(&self) -> bool {
        self.finite_volume
    }

    /// Number of simplex vertices lying beyond the ideal boundary.
    pub fn hyperideal_vertex_count(&self) -> usize {
        self.hyperideal
    }

    pub fn contains_point(&self, x: &DVector<f64>) -> bool {
        self.facets.iter().all(|f| f.eval(x) >= -self.tol.geo)
    }

    /// Codimension-2 faces with their dihedral angles.
    pub fn dihedral_angles(&self) -> Vec<((usize, usize), AngleClass)> {
        let mut out = Vec::new();
        let mut pairs: Vec<(usize, usize)> = self.edges.clone();
        if self.space.dim == 2 {
            for c in &self.corners {
                if let Corner::At(v) = c {
                    let f = &self.vertices[*v].facets;
                    pairs.push((f[0], f[1]));
                }
            }
        }
        for (a, b) in pairs {
            if let Ok(angle) = dihedral_angle(&self.facets[a], &self.facets[b], &self.tol) {
                out.push(((a, b), angle));
            }
        }
        out
    }

    /// Faces as facet-index sets: facets, edges (dimension 3) and vertices.
    pub fn faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = (0..self.facets.len())
            .map(|i| Face {
                kind: FaceKind::Facet,
                facets: vec![i],
            })
            .collect();
        if self.space.dim == 3 {
            out.extend(self.edges.iter().map(|&(a, b)| Face {
                kind: FaceKind::Edge,
                facets: vec![a, b],
            }));
        }
        out.extend(self.vertices.iter().map(|v| Face {
            kind: if v.ideal {
                FaceKind::IdealVertex
            } else {
                FaceKind::Vertex
            },
            facets: v.facets.clone(),
        }));
        out
    }

    /// Whether the faces with facet sets `a` and `b` share a point of the
    /// polytope (ideal points do not count).
    pub fn faces_meet(&self, a: &[usize], b: &[usize]) -> bool {
        let union = sorted_union(a, b);
        self.faces()
            .iter()
            .any(|f| f.kind != FaceKind::IdealVertex && union.iter().all(|i| f.facets.contains(i)))
    }

    /// Whether the intersection of the given facet hyperplanes is nonempty
    /// in the model space (ideal points excluded).
    pub fn flats_meet(&self, facets: &[usize]) -> bool {
        let hs: Vec<&Hyperplane> = facets.iter().map(|&i| &self.facets[i]).collect();
        flats_meet(&hs, self.tol.geo)
    }

    /// Euclidean translate by `t`.
    pub fn translated(&self, t: &[f64]) -> Result<Polytope, GeometryError> {
        let hs = self
            .facets
            .iter()
            .map(|h| match h {
                Hyperplane::Euclidean { normal, offset } => {
                    let shift: f64 = normal.iter().zip(t).map(|(a, b)| a * b).sum();
                    Hyperplane::euclidean(normal.as_slice(), offset + shift)
                }
                Hyperplane::Hyperbolic { .. } => Err(GeometryError::Unsupported(
                    "translation in hyperbolic space",
                )),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Polytope::new(hs, self.tol)
    }

    fn face_index(&self, face: &[usize]) -> Option<Face> {
        let mut key = face.to_vec();
        key.sort_unstable();
        key.dedup();
        self.faces().into_iter().find(|f| f.facets == key)
    }
}

fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

/// Whether the hyperplanes have a common point in the model space.
pub fn flats_meet(hs: &[&Hyperplane], tol: f64) -> bool {
    if hs.is_empty() {
        return true;
    }
    match hs[0].kind() {
        SpaceKind::Euclidean => {
            let n = hs[0].dim();
            let a = DMatrix::from_fn(hs.len(), n, |r, c| match hs[r] {
                Hyperplane::Euclidean { normal, .. } => normal[c],
                _ => f64::NAN,
            });
            let b = DVector::from_fn(hs.len(), |r, _| match hs[r] {
                Hyperplane::Euclidean { offset, .. } => *offset,
                _ => f64::NAN,
            });
            let svd = a.clone().svd(true, true);
            match svd.solve(&b, 1e-10) {
                Ok(x) => (&a * x - b).amax() <= tol.max(1e-9),
                Err(_) => false,
            }
        }
        SpaceKind::Hyperbolic => {
            let n1 = hs[0].dim() + 1;
            let vecs = DMatrix::from_fn(hs.len(), n1, |r, c| match hs[r] {
                Hyperplane::Hyperbolic { normal } => normal[c],
                _ => f64::NAN,
            });
            let rank = vecs.rank(1e-9);
            let gram = DMatrix::from_fn(hs.len(), hs.len(), |i, j| hs[i].product(hs[j]));
            let sig = signature_with(&gram, TAU_SIG.max(tol));
            sig.negative == 0 && sig.positive == rank
        }
    }
}

// ---------------------------------------------------------------------------
// Polygons

type ChartPoint = [f64; 2];

fn chart_covector(h: &Hyperplane) -> [f64; 3] {
    let c = h.covector();
    [c[0], c[1], c[2]]
}

fn cov_value(f: &[f64; 3], p: ChartPoint) -> f64 {
    f[0] * p[0] + f[1] * p[1] + f[2]
}

fn line_meet(f: &[f64; 3], g: &[f64; 3]) -> Option<ChartPoint> {
    let det = f[0] * g[1] - f[1] * g[0];
    if det.abs() < 1e-14 {
        return None;
    }
    Some([
        (-f[2] * g[1] + f[1] * g[2]) / det,
        (-f[0] * g[2] + f[2] * g[0]) / det,
    ])
}

/// Clips a convex chart polygon (vertex, label of the edge leaving it) by `f ≥ 0`.
fn clip(
    poly: &[(ChartPoint, Option<usize>)],
    f: &[f64; 3],
    label: usize,
    eps: f64,
) -> Vec<(ChartPoint, Option<usize>)> {
    let n = poly.len();
    let mut out: Vec<(ChartPoint, Option<usize>)> = Vec::with_capacity(n + 1);
    for k in 0..n {
        let (p, l) = poly[k];
        let q = poly[(k + 1) % n].0;
        let a = cov_value(f, p);
        let b = cov_value(f, q);
        let (pin, qin) = (a >= -eps, b >= -eps);
        let lerp = |t: f64| [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
        match (pin, qin) {
            (true, true) => out.push((p, l)),
            (true, false) => {
                if a > eps {
                    out.push((p, l));
                    out.push((lerp(a / (a - b)), Some(label)));
                } else {
                    out.push((p, Some(label)));
                }
            }
            (false, true) => {
                if b > eps {
                    out.push((lerp(a / (a - b)), l));
                }
            }
            (false, false) => {}
        }
    }
    dedupe_ring(&mut out, eps);
    out
}

fn dedupe_ring(ring: &mut Vec<(ChartPoint, Option<usize>)>, eps: f64) {
    loop {
        let n = ring.len();
        if n < 2 {
            return;
        }
        let hit = (0..n).find(|&k| {
            let (p, q) = (ring[k].0, ring[(k + 1) % n].0);
            (p[0] - q[0]).abs() <= eps && (p[1] - q[1]).abs() <= eps
        });
        match hit {
            Some(k) => {
                ring.remove(k);
            }
            None => return,
        }
    }
}

fn shoelace(points: &[ChartPoint]) -> f64 {
    let n = points.len();
    let mut s = 0.0;
    for k in 0..n {
        let (p, q) = (points[k], points[(k + 1) % n]);
        s += p[0] * q[1] - p[1] * q[0];
    }
    0.5 * s
}

/// Portion of the chart segment `p → q` inside the open unit disk, as a
/// parameter interval.
fn disk_interval(p: ChartPoint, q: ChartPoint) -> Option<(f64, f64)> {
    let d = [q[0] - p[0], q[1] - p[1]];
    let a = d[0] * d[0] + d[1] * d[1];
    if a == 0.0 {
        return None;
    }
    let b = 2.0 * (p[0] * d[0] + p[1] * d[1]);
    let c = p[0] * p[0] + p[1] * p[1] - 1.0;
    let disc = b * b - 4.0 * a * c;
    if disc <= 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let lo = ((-b - s) / (2.0 * a)).max(0.0);
    let hi = ((-b + s) / (2.0 * a)).min(1.0);
    (hi > lo).then_some((lo, hi))
}

fn dist_to_segment(p: ChartPoint, q: ChartPoint) -> f64 {
    let d = [q[0] - p[0], q[1] - p[1]];
    let dd = d[0] * d[0] + d[1] * d[1];
    let t = if dd == 0.0 {
        0.0
    } else {
        (-(p[0] * d[0] + p[1] * d[1]) / dd).clamp(0.0, 1.0)
    };
    let x = [p[0] + t * d[0], p[1] + t * d[1]];
    (x[0] * x[0] + x[1] * x[1]).sqrt()
}

fn homogeneous_point(kind: SpaceKind, chart: &[f64], ideal: bool) -> DVector<f64> {
    let n = chart.len();
    let mut x = DVector::from_fn(n + 1, |i, _| if i < n { chart[i] } else { 1.0 });
    if kind == SpaceKind::Hyperbolic {
        let r2: f64 = chart.iter().map(|c| c * c).sum();
        if ideal {
            let r = r2.sqrt();
            for i in 0..n {
                x[i] /= r;
            }
        } else {
            x /= (1.0 - r2).sqrt();
        }
    }
    x
}

fn build_polygon(
    space: Space,
    halfspaces: Vec<Hyperplane>,
    tol: Tolerances,
) -> Result<Polytope, GeometryError> {
    let covs: Vec<[f64; 3]> = halfspaces.iter().map(chart_covector).collect();
    let half = match space.kind {
        SpaceKind::Hyperbolic => 2.0,
        SpaceKind::Euclidean => {
            let mut r: f64 = 1.0;
            for (i, f) in covs.iter().enumerate() {
                r = r.max(f[2].abs());
                for g in &covs[i + 1..] {
                    if let Some(p) = line_meet(f, g) {
                        r = r.max(p[0].abs()).max(p[1].abs());
                    }
                }
            }
            10.0 * r
        }
    };
    let eps = 1e-12 * half.max(1.0);
    let mut ring: Vec<(ChartPoint, Option<usize>)> = vec![
        ([-half, -half], None),
        ([half, -half], None),
        ([half, half], None),
        ([-half, half], None),
    ];
    for (i, f) in covs.iter().enumerate() {
        ring = clip(&ring, f, i, eps);
        if ring.len() < 3 {
            return Err(GeometryError::EmptyInterior);
        }
    }
    let pts: Vec<ChartPoint> = ring.iter().map(|r| r.0).collect();
    if shoelace(&pts) <= 1e-12 * half * half {
        return Err(GeometryError::EmptyInterior);
    }
    let m = ring.len();
    let seg = |k: usize| (ring[k].0, ring[(k + 1) % m].0);

    // Which ring edges carry a facet of the polytope.
    let present: Vec<bool> = (0..m)
        .map(|k| {
            let (p, q) = seg(k);
            ring[k].1.is_some()
                && match space.kind {
                    SpaceKind::Euclidean => {
                        ((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2)).sqrt() > 1e-9
                    }
                    SpaceKind::Hyperbolic => disk_interval(p, q).is_some_and(|(lo, hi)| {
                        let len = ((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2)).sqrt();
                        (hi - lo) * len > 1e-9
                    }),
                }
        })
        .collect();

    if space.kind == SpaceKind::Hyperbolic {
        let inside = pts.iter().all(|_| true) && {
            let origin_in = covs.iter().all(|f| f[2] >= -eps);
            origin_in || (0..m).any(|k| dist_to_segment(seg(k).0, seg(k).1) < 1.0 - 1e-9)
        };
        if !inside {
            return Err(GeometryError::EmptyInterior);
        }
    }

    let mut ks: Vec<usize> = (0..m).filter(|&k| present[k]).collect();
    // Corner after each present edge.
    let corner_kind = |a: usize, b: usize| -> Option<(ChartPoint, bool)> {
        if b != (a + 1) % m || a == b {
            return None;
        }
        let v = ring[b].0;
        match space.kind {
            SpaceKind::Euclidean => Some((v, false)),
            SpaceKind::Hyperbolic => {
                let r2 = v[0] * v[0] + v[1] * v[1];
                if r2 < 1.0 - tol.geo {
                    Some((v, false))
                } else if (r2 - 1.0).abs() <= tol.geo {
                    Some((v, true))
                } else {
                    None
                }
            }
        }
    };
    let nk = ks.len();
    let open_after: Vec<bool> = (0..nk)
        .map(|a| nk < 2 || corner_kind(ks[a], ks[(a + 1) % nk]).is_none())
        .collect();
    // Deterministic starting point: after an open corner if there is one,
    // otherwise at the smallest facet index.
    let start = if let Some(a) = (0..nk)
        .filter(|&a| open_after[a])
        .min_by_key(|&a| ring[ks[(a + 1) % nk]].1)
    {
        (a + 1) % nk.max(1)
    } else {
        (0..nk).min_by_key(|&a| ring[ks[a]].1).unwrap_or(0)
    };
    ks.rotate_left(start.min(nk.saturating_sub(1)));

    let mut labels: Vec<usize> = ks.iter().map(|&k| ring[k].1.unwrap()).collect();
    labels.sort_unstable();
    labels.dedup();
    let new_index = |label: usize| labels.binary_search(&label).unwrap();

    let mut vertices = Vec::new();
    let mut corners = Vec::new();
    let mut cycle = Vec::new();
    for a in 0..nk {
        let (ka, kb) = (ks[a], ks[(a + 1) % nk]);
        cycle.push(new_index(ring[ka].1.unwrap()));
        match (nk >= 2).then(|| corner_kind(ka, kb)).flatten() {
            Some((v, ideal)) => {
                let mut fs = vec![
                    new_index(ring[ka].1.unwrap()),
                    new_index(ring[kb].1.unwrap()),
                ];
                fs.sort_unstable();
                vertices.push(Vertex {
                    point: homogeneous_point(space.kind, &v, ideal),
                    ideal,
                    facets: fs,
                });
                corners.push(Corner::At(vertices.len() - 1));
            }
            None => corners.push(Corner::Open),
        }
    }

    let mut recession: Vec<DVector<f64>> = Vec::new();
    let (bounded, finite_volume) = match space.kind {
        SpaceKind::Euclidean => {
            for k in 0..m {
                if !present[k] {
                    continue;
                }
                let (p, q) = seg(k);
                let next_box = ring[(k + 1) % m].1.is_none();
                let prev_box = ring[(k + m - 1) % m].1.is_none();
                let d = DVector::from_vec(vec![q[0] - p[0], q[1] - p[1]]).normalize();
                for dir in [next_box.then(|| d.clone()), prev_box.then(|| -d.clone())]
                    .into_iter()
                    .flatten()
                {
                    if !recession.iter().any(|r| r.dot(&dir) > 1.0 - 1e-9) {
                        recession.push(dir);
                    }
                }
            }
            let b = ring.iter().all(|r| r.1.is_some());
            (b, b)
        }
        SpaceKind::Hyperbolic => {
            let fv = nk >= 3 && corners.iter().all(|c| *c != Corner::Open);
            (fv && vertices.iter().all(|v| !v.ideal), fv)
        }
    };

    let facets: Vec<Hyperplane> = labels.iter().map(|&l| halfspaces[l].clone()).collect();
    Ok(Polytope {
        space,
        facets,
        source: labels,
        vertices,
        cycle,
        corners,
        edges: Vec::new(),
        recession,
        hyperideal: 0,
        bounded,
        finite_volume,
        tol,
    })
}

// ---------------------------------------------------------------------------
// Dimension three: simplices (Euclidean or hyperbolic) and bounded Euclidean
// polytopes.

fn classify_ray(kind: SpaceKind, x: &DVector<f64>, tol: f64) -> Option<(DVector<f64>, bool)> {
    let n = x.len() - 1;
    if x[n] <= 1e-12 * x.amax() {
        return None;
    }
    let chart: Vec<f64> = (0..n).map(|i| x[i] / x[n]).collect();
    match kind {
        SpaceKind::Euclidean => Some((homogeneous_point(kind, &chart, false), false)),
        SpaceKind::Hyperbolic => {
            let r2: f64 = chart.iter().map(|c| c * c).sum();
            if r2 < 1.0 - tol {
                Some((homogeneous_point(kind, &chart, false), false))
            } else if (r2 - 1.0).abs() <= tol {
                Some((homogeneous_point(kind, &chart, true), true))
            } else {
                None
            }
        }
    }
}

fn build_solid(
    space: Space,
    halfspaces: Vec<Hyperplane>,
    tol: Tolerances,
) -> Result<Polytope, GeometryError> {
    let covs: Vec<DVector<f64>> = halfspaces.iter().map(|h| h.covector()).collect();
    let f = DMatrix::from_fn(covs.len(), 4, |r, c| covs[r][c]);
    if covs.len() == 4 && f.rank(1e-10) == 4 {
        return build_simplex(space, halfspaces, f, tol);
    }
    if space.kind == SpaceKind::Hyperbolic {
        return Err(GeometryError::Unsupported(
            "hyperbolic 3-polytopes other than simplices",
        ));
    }
    // Bounded Euclidean polytope: brute-force vertex enumeration over triples.
    let normals: Vec<DVector<f64>> = covs.iter().map(|c| c.rows(0, 3).into_owned()).collect();
    if euclidean_recession_3d(&normals) {
        return Err(GeometryError::Unsupported(
            "unbounded Euclidean 3-polytopes",
        ));
    }
    let n = covs.len();
    let mut pts: Vec<DVector<f64>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let m = DMatrix::from_fn(3, 4, |r, c| [&covs[i], &covs[j], &covs[k]][r][c]);
                let x = null_vector_3x4(&m);
                let Some((p, _)) = classify_ray(space.kind, &x, tol.geo)
                    .or_else(|| classify_ray(space.kind, &(-&x), tol.geo))
                else {
                    continue;
                };
                if covs.iter().all(|c| c.dot(&p) >= -tol.geo)
                    && !pts.iter().any(|q| (q - &p).amax() <= 1e-9)
                {
                    pts.push(p);
                }
            }
        }
    }
    if pts.len() < 4 {
        return Err(GeometryError::EmptyInterior);
    }
    let incident = |c: &DVector<f64>| -> Vec<usize> {
        (0..pts.len())
            .filter(|&v| c.dot(&pts[v]).abs() <= tol.geo)
            .collect()
    };
    let keep: Vec<usize> = (0..n).filter(|&i| incident(&covs[i]).len() >= 3).collect();
    let facets: Vec<Hyperplane> = keep.iter().map(|&i| halfspaces[i].clone()).collect();
    let vertices: Vec<Vertex> = pts
        .iter()
        .map(|p| Vertex {
            point: p.clone(),
            ideal: false,
            facets: (0..keep.len())
                .filter(|&a| covs[keep[a]].dot(p).abs() <= tol.geo)
                .collect(),
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..keep.len() {
        for b in (a + 1)..keep.len() {
            let shared = vertices
                .iter()
                .filter(|v| v.facets.contains(&a) && v.facets.contains(&b))
                .count();
            if shared >= 2 {
                edges.push((a, b));
            }
        }
    }
    Ok(Polytope {
        space,
        facets,
        source: keep,
        vertices,
        cycle: Vec::new(),
        corners: Vec::new(),
        edges,
        recession: Vec::new(),
        hyperideal: 0,
        bounded: true,
        finite_volume: true,
        tol,
    })
}

fn build_simplex(
    space: Space,
    halfspaces: Vec<Hyperplane>,
    f: DMatrix<f64>,
    tol: Tolerances,
) -> Result<Polytope, GeometryError> {
    // Columns of F⁻¹ generate the cone {X : F X ≥ 0}; column m is the ray
    // opposite facet m.
    let inv = f
        .clone()
        .try_inverse()
        .ok_or(GeometryError::Unsupported("degenerate simplex"))?;
    let mut vertices = Vec::new();
    let mut hyperideal = 0;
    for m in 0..4 {
        let ray = inv.column(m).into_owned();
        match classify_ray(space.kind, &ray, tol.geo) {
            Some((p, ideal)) => vertices.push(Vertex {
                point: p,
                ideal,
                facets: (0..4).filter(|&i| i != m).collect(),
            }),
            None => hyperideal += 1,
        }
    }
    let interior = inv.column_sum();
    let nonempty = match space.kind {
        SpaceKind::Euclidean => (0..4).any(|m| inv[(3, m)] > 1e-12),
        SpaceKind::Hyperbolic => {
            !vertices.is_empty() || (interior[3] > 0.0 && lorentz(&interior, &interior) < 0.0)
        }
    };
    if !nonempty {
        return Err(GeometryError::EmptyInterior);
    }
    if space.kind == SpaceKind::Euclidean && hyperideal > 0 {
        return Err(GeometryError::Unsupported(
            "unbounded Euclidean 3-polytopes",
        ));
    }
    let edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let finite_volume = hyperideal == 0;
    let bounded = finite_volume && vertices.iter().all(|v| !v.ideal);
    Ok(Polytope {
        space,
        facets: halfspaces,
        source: vec![0, 1, 2, 3],
        vertices,
        cycle: Vec::new(),
        corners: Vec::new(),
        edges,
        recession: Vec::new(),
        hyperideal,
        bounded,
        finite_volume,
        tol,
    })
}

/// Generalized cross product of the three rows of a 3×4 matrix.
fn null_vector_3x4(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_fn(4, |l, _| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != l).collect();
        let minor = DMatrix::from_fn(3, 3, |r, c| m[(r, cols[c])]);
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        sign * minor.determinant()
    })
}

/// Whether `{d : u_i·d ≥ 0 ∀i}` contains a nonzero direction.
fn euclidean_recession_3d(normals: &[DVector<f64>]) -> bool {
    let mut cands: Vec<DVector<f64>> = Vec::new();
    let mut any_cross = false;
    for (i, a) in normals.iter().enumerate() {
        cands.push(a.clone());
        cands.push(-a);
        for b in &normals[i + 1..] {
            let c = DVector::from_vec(vec![
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ]);
            if c.norm() > 1e-9 {
                any_cross = true;
                let c = c.normalize();
                cands.push(-&c);
                cands.push(c);
            }
        }
    }
    if !any_cross {
        return true;
    }
    cands
        .iter()
        .any(|d| normals.iter().all(|u| u.dot(d) >= -1e-12))
}

// ---------------------------------------------------------------------------
// Predicates and constructions

pub fn is_coxeter_polytope(p: &Polytope) -> bool {
    p.dihedral_angles().iter().all(|(_, a)| match a {
        AngleClass::Intersecting(theta) => submultiple_of_pi(*theta, p.tol.ang).is_some(),
        _ => true,
    })
}

pub fn is_acute_angled(p: &Polytope) -> bool {
    p.dihedral_angles().iter().all(|(_, a)| match a {
        AngleClass::Intersecting(theta) => *theta <= PI / 2.0 + p.tol.ang,
        _ => true,
    })
}

/// Section of a polytope near a vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexLink {
    pub vertex: usize,
    pub ideal: bool,
    /// Facets through the vertex; these are the nodes of the link diagram.
    pub facets: Vec<usize>,
    /// Dihedral angles between pairs of those facets (one value in dimension 2,
    /// the three angles of the link triangle at a simple vertex in dimension 3).
    pub angles: Vec<((usize, usize), AngleClass)>,
    /// Coxeter diagram of the link, present when every angle is `π/m` or parallel.
    pub diagram: Option<CoxeterDiagram>,
}

impl VertexLink {
    pub fn class(&self) -> Option<DiagramClass> {
        self.diagram.as_ref().map(classify_diagram)
    }

    /// Link law: ordinary vertices have elliptic links; ideal vertices have
    /// parabolic unions whose Euclidean dimension matches the section.
    pub fn satisfies_link_law(&self, dim: usize) -> bool {
        match (self.class(), &self.diagram) {
            (Some(DiagramClass::Elliptic(_)), _) => !self.ideal,
            (Some(DiagramClass::ParabolicUnion(comps)), Some(d)) => {
                self.ideal && d.len() - comps.len() == dim - 1
            }
            _ => false,
        }
    }
}

pub fn vertex_link(p: &Polytope, vertex: usize) -> Result<VertexLink, GeometryError> {
    let v = p
        .vertices
        .get(vertex)
        .ok_or(GeometryError::InvalidVertex(vertex))?;
    if v.facets.len() < p.space.dim {
        return Err(GeometryError::InvalidVertex(vertex));
    }
    let k = v.facets.len();
    let mut angles = Vec::new();
    let mut edges = Vec::new();
    let mut coxeter = true;
    for a in 0..k {
        for b in (a + 1)..k {
            let (fa, fb) = (v.facets[a], v.facets[b]);
            let angle = dihedral_angle(&p.facets[fa], &p.facets[fb], &p.tol)?;
            match angle {
                AngleClass::Intersecting(theta) => match submultiple_of_pi(theta, p.tol.ang) {
                    Some(2) => {}
                    Some(m) => edges.push((a, b, EdgeLabel::Order(m))),
                    None => coxeter = false,
                },
                AngleClass::Parallel => edges.push((a, b, EdgeLabel::Parallel)),
                AngleClass::Divergent(_) => coxeter = false,
            }
            angles.push(((fa, fb), angle));
        }
    }
    Ok(VertexLink {
        vertex,
        ideal: v.ideal,
        facets: v.facets.clone(),
        angles,
        diagram: coxeter.then(|| CoxeterDiagram::from_edges(k, &edges)),
    })
}

/// Type of the link of the simplex vertex opposite facet `m`, read off the
/// Gram matrix of the remaining facets.
fn simplex_link_finite(p: &Polytope, m: usize) -> bool {
    let others: Vec<usize> = (0..p.facets.len()).filter(|&i| i != m).collect();
    let k = others.len();
    let g = DMatrix::from_fn(k, k, |a, b| {
        p.facets[others[a]].product(&p.facets[others[b]])
    });
    let sig = signature_with(&g, TAU_SIG);
    if sig == Signature::new(k, 0, 0) {
        return true;
    }
    // A vertex link of a simplex has as many nodes as the simplex dimension,
    // so an ideal link is a single connected parabolic diagram.
    let diag = gram_diagram(&g, p.tol.ang);
    match diag.as_ref().map(classify_diagram) {
        Some(DiagramClass::ParabolicUnion(c)) => c.len() == 1,
        Some(_) => false,
        None => sig == Signature::new(k - 1, 1, 0) && connected_gram(&g),
    }
}

fn connected_gram(g: &DMatrix<f64>) -> bool {
    let n = g.nrows();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if !seen[w] && g[(v, w)].abs() > 1e-12 {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Coxeter diagram of a Gram matrix whose entries are all `−cos(π/m)` or `−1`.
fn gram_diagram(g: &DMatrix<f64>, tol_ang: f64) -> Option<CoxeterDiagram> {
    let n = g.nrows();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let p = g[(a, b)];
            if (p + 1.0).abs() <= 1e-9 {
                edges.push((a, b, EdgeLabel::Parallel));
            } else if p.abs() < 1.0 {
                match submultiple_of_pi((-p).acos(), tol_ang)? {
                    2 => {}
                    m => edges.push((a, b, EdgeLabel::Order(m))),
                }
            } else {
                return None;
            }
        }
    }
    Some(CoxeterDiagram::from_edges(n, &edges))
}

pub fn has_finite_volume(p: &Polytope) -> Result<bool, GeometryError> {
    match p.space.dim {
        2 => Ok(p.finite_volume),
        3 if p.facets.len() == 4 && p.edges.len() == 6 => {
            Ok((0..4).all(|m| simplex_link_finite(p, m)))
        }
        3 if p.space.kind == SpaceKind::Euclidean => Ok(p.bounded),
        _ => Err(GeometryError::Unsupported(
            "finite volume test for this shape",
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtensionRelation {
    Meet,
    Disjoint,
}

pub fn extension_relation(
    p: &Polytope,
    f1: &[usize],
    f2: &[usize],
) -> Result<ExtensionRelation, GeometryError> {
    for f in [f1, f2] {
        if p.face_index(f).is_none() {
            return Err(GeometryError::InvalidFace(f.to_vec()));
        }
    }
    Ok(if p.flats_meet(&sorted_union(f1, f2)) {
        ExtensionRelation::Meet
    } else {
        ExtensionRelation::Disjoint
    })
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AndreevReport {
    pub pairs_checked: usize,
    /// Face pairs without a common point.
    pub disjoint_pairs: usize,
    /// Disjoint face pairs whose extensions nevertheless meet.
    pub violations: Vec<(Vec<usize>, Vec<usize>)>,
}

impl AndreevReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that disjoint faces of an acute-angled polytope have disjoint extensions.
pub fn andreev_verify(p: &Polytope) -> Result<AndreevReport, GeometryError> {
    if !is_acute_angled(p) {
        return Err(GeometryError::NotAcuteAngled);
    }
    let faces: Vec<Face> = p
        .faces()
        .into_iter()
        .filter(|f| f.kind != FaceKind::IdealVertex)
        .collect();
    let mut report = AndreevReport::default();
    for a in 0..faces.len() {
        for b in (a + 1)..faces.len() {
            report.pairs_checked += 1;
            let (fa, fb) = (&faces[a].facets, &faces[b].facets);
            if p.faces_meet(fa, fb) {
                continue;
            }
            report.disjoint_pairs += 1;
            if p.flats_meet(&sorted_union(fa, fb)) {
                report.violations.push((fa.clone(), fb.clone()));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct Split {
    /// Part on the positive side of the cutting hyperplane.
    pub first: Polytope,
    pub second: Polytope,
    pub meets_every_facet_interior: bool,
    pub contains_vertex: bool,
    /// Number of facets whose relative interior the hyperplane crosses.
    pub facets_met: usize,
}

/// Whether the line `a` crosses the relative interior of facet `i` of a polygon.
fn meets_facet_interior(p: &Polytope, a: &Hyperplane, i: usize) -> bool {
    let fa = chart_covector(a);
    let fi = chart_covector(&p.facets[i]);
    let x = [
        fa[1] * fi[2] - fa[2] * fi[1],
        fa[2] * fi[0] - fa[0] * fi[2],
        fa[0] * fi[1] - fa[1] * fi[0],
    ];
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale < 1e-14 || x[2].abs() <= 1e-12 * scale {
        return false;
    }
    let chart = [x[0] / x[2], x[1] / x[2]];
    if p.space.kind == SpaceKind::Hyperbolic
        && chart[0].powi(2) + chart[1].powi(2) >= 1.0 - p.tol.geo
    {
        return false;
    }
    let pt = homogeneous_point(p.space.kind, &chart, false);
    p.facets
        .iter()
        .enumerate()
        .all(|(j, f)| j == i || f.eval(&pt) > p.tol.geo)
}

pub fn split_by_hyperplane(p: &Polytope, a: &Hyperplane) -> Result<Split, GeometryError> {
    if p.space.dim != 2 {
        return Err(GeometryError::UnsupportedDimension(p.space.dim));
    }
    if a.space() != p.space {
        return Err(GeometryError::SpaceMismatch);
    }
    if p.facets.iter().any(|f| f.same_locus(a, p.tol.geo)) {
        return Err(GeometryError::DisjointSplit);
    }
    let build = |cut: Hyperplane| {
        let mut hs = p.facets.clone();
        hs.push(cut);
        Polytope::new(hs, p.tol).map_err(|e| match e {
            GeometryError::EmptyInterior => GeometryError::DisjointSplit,
            e => e,
        })
    };
    let first = build(a.clone())?;
    let second = build(a.flipped())?;
    // A part that lost no facet and gained none is the whole polygon.
    let cut_used = |q: &Polytope| q.source.contains(&p.facets.len());
    if !cut_used(&first) || !cut_used(&second) {
        return Err(GeometryError::DisjointSplit);
    }
    let met: Vec<bool> = (0..p.facets.len())
        .map(|i| meets_facet_interior(p, a, i))
        .collect();
    let contains_vertex = p
        .vertices
        .iter()
        .any(|v| a.eval(&v.point).abs() <= p.tol.geo);
    Ok(Split {
        first,
        second,
        meets_every_facet_interior: met.iter().all(|&m| m),
        contains_vertex,
        facets_met: met.iter().filter(|&&m| m).count(),
    })
}

/// Area of a finite-area polygon: Gauss–Bonnet in H², shoelace in E².
pub fn area2(p: &Polytope) -> Result<f64, GeometryError> {
    if p.space.dim != 2 {
        return Err(GeometryError::UnsupportedDimension(p.space.dim));
    }
    if !p.finite_volume {
        return Err(GeometryError::InfiniteArea);
    }
    match p.space.kind {
        SpaceKind::Hyperbolic => {
            let k = p.corners.len() as f64;
            let mut sum = 0.0;
            for c in &p.corners {
                if let Corner::At(v) = c {
                    let f = &p.vertices[*v].facets;
                    if let AngleClass::Intersecting(t) =
                        dihedral_angle(&p.facets[f[0]], &p.facets[f[1]], &p.tol)?
                    {
                        sum += t;
                    }
                }
            }
            Ok((k - 2.0) * PI - sum)
        }
        SpaceKind::Euclidean => {
            let pts: Vec<ChartPoint> = p
                .corners
                .iter()
                .filter_map(|c| match c {
                    Corner::At(v) => {
                        let ch = p.vertices[*v].chart();
                        Some([ch[0], ch[1]])
                    }
                    Corner::Open => None,
                })
                .collect();
            Ok(shoelace(&pts).abs())
        }
    }
}

/// Concrete walls for a Gram matrix together with the polytope they bound.
#[derive(Debug, Clone)]
pub struct Realization {
    /// One hyperplane per row of the Gram matrix, in order.
    pub walls: Vec<Hyperplane>,
    pub polytope: Polytope,
}

impl Realization {
    pub fn space(&self) -> Space {
        self.polytope.space()
    }

    /// Hyperplane of the root `Σ c_i α_i`, i.e. the covector `Σ c_i f_i`.
    pub fn root_hyperplane(&self, coords: &[f64]) -> Result<Hyperplane, GeometryError> {
        let mut f = DVector::zeros(self.space().dim + 1);
        for (c, w) in coords.iter().zip(&self.walls) {
            f += w.covector() * *c;
        }
        Hyperplane::from_covector(self.space().kind, &f)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Realizes a Gram matrix of signature `(n,·,1)` in Hⁿ or `(n,·,0)` with a
/// nontrivial kernel in Eⁿ, for `n ∈ {2, 3}`.
///
/// The first wall of the chosen positive-definite basis lies along the first
/// axis and the second in the first coordinate plane.
pub fn realize_gram(g: &GramMatrix, tol: &Tolerances) -> Result<Realization, GeometryError> {
    let n = g.rank();
    let m = g.matrix();
    let sig = g.signature();
    if sig.negative == 0 && sig.zero == 0 {
        return Err(GeometryError::EllipticGram);
    }
    if sig.negative > 1 {
        return Err(GeometryError::NotRealizable(format!(
            "signature {sig} has more than one negative direction"
        )));
    }
    let kind = if sig.negative == 1 {
        SpaceKind::Hyperbolic
    } else {
        SpaceKind::Euclidean
    };
    let dim = sig.positive;
    if !(2..=3).contains(&dim) {
        return Err(GeometryError::UnsupportedDimension(dim));
    }
    let (basis, chol) = combinations(n, dim)
        .into_iter()
        .find_map(|s| {
            let sub = DMatrix::from_fn(dim, dim, |a, b| m[(s[a], s[b])]);
            let l = sub.cholesky()?.l();
            (l.diagonal().min() > 1e-6).then_some((s, l))
        })
        .ok_or_else(|| GeometryError::NotRealizable("no positive-definite basis".into()))?;
    let spatial = |k: usize| -> DVector<f64> {
        let rhs = DVector::from_fn(dim, |a, _| m[(basis[a], k)]);
        chol.solve_lower_triangular(&rhs).expect("invertible")
    };

    let mut walls_data: Vec<(DVector<f64>, f64)> = Vec::with_capacity(n);
    match kind {
        SpaceKind::Euclidean => {
            let mut offsets = vec![0.0; n];
            let diag = GramMatrix(m.clone());
            for comp in gram_components(m) {
                let sub = diag.principal(&comp);
                if sub.signature().zero > 0 {
                    offsets[*comp.last().unwrap()] = -1.0;
                }
            }
            for (k, off) in offsets.iter().enumerate() {
                walls_data.push((spatial(k), *off));
            }
        }
        SpaceKind::Hyperbolic => {
            let j = (0..n)
                .filter(|j| !basis.contains(j))
                .find(|&j| {
                    let mut idx = basis.clone();
                    idx.push(j);
                    g.principal(&idx).0.determinant() < -1e-9
                })
                .ok_or_else(|| GeometryError::NotRealizable("no timelike completion".into()))?;
            let mut frame: Vec<DVector<f64>> = basis
                .iter()
                .map(|&b| {
                    let mut v = DVector::zeros(dim + 1);
                    v.rows_mut(0, dim).copy_from(&spatial(b));
                    v
                })
                .collect();
            let x = spatial(j);
            let t = (x.norm_squared() - 1.0).max(0.0).sqrt();
            let mut ej = DVector::zeros(dim + 1);
            ej.rows_mut(0, dim).copy_from(&x);
            ej[dim] = t;
            frame.push(ej);
            let mut idx = basis.clone();
            idx.push(j);
            // Rows give ⟨frame_b, y⟩ = a_b · y.
            let a = DMatrix::from_fn(dim + 1, dim + 1, |r, c| {
                if c == dim {
                    -frame[r][c]
                } else {
                    frame[r][c]
                }
            });
            let lu = a.lu();
            for k in 0..n {
                let rhs = DVector::from_fn(dim + 1, |r, _| m[(idx[r], k)]);
                let y = lu
                    .solve(&rhs)
                    .ok_or_else(|| GeometryError::NotRealizable("singular frame".into()))?;
                walls_data.push((y, 0.0));
            }
        }
    }

    let make = |flip: bool| -> Result<Vec<Hyperplane>, GeometryError> {
        walls_data
            .iter()
            .map(|(v, off)| match kind {
                SpaceKind::Euclidean => Hyperplane::euclidean(v.as_slice(), *off),
                SpaceKind::Hyperbolic => {
                    let mut e = v.clone();
                    if flip {
                        e[dim] = -e[dim];
                    }
                    Hyperplane::hyperbolic(e.as_slice())
                }
            })
            .collect()
    };
    let mut walls = make(false)?;
    let mut poly = Polytope::new(walls.clone(), *tol);
    if kind == SpaceKind::Hyperbolic && matches!(poly, Err(GeometryError::EmptyInterior)) {
        walls = make(true)?;
        poly = Polytope::new(walls.clone(), *tol);
    }
    let polytope = poly?;
    if polytope.facet_count() != n {
        return Err(GeometryError::NotRealizable(
            "some wall does not bound the realized polytope".into(),
        ));
    }
    Ok(Realization { walls, polytope })
}

fn gram_components(m: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for w in 0..n {
                if !seen[w] && m[(v, w)].abs() > 1e-12 {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Realizes the chamber of a Coxeter matrix in E² / H² / E³ / H³.
pub fn realize_coxeter(m: &CoxeterMatrix, tol: &Tolerances) -> Result<Realization, GeometryError> {
    realize_gram(&m.gram(), tol)
}

/// Realizes a rank-3 Coxeter matrix as a Euclidean or hyperbolic triangle.
pub fn realize_triangle(m: &CoxeterMatrix) -> Result<Polytope, GeometryError> {
    if m.rank() != 3 {
        return Err(GeometryError::NotRealizable(format!(
            "expected rank 3, got {}",
            m.rank()
        )));
    }
    Ok(realize_coxeter(m, &Tolerances::default())?.polytope)
}

/// Regular right-angled pentagon in H²: lines at Klein-chart distance `r`
/// from the centre, `r² = cos(2π/5)`.
pub fn right_angled_pentagon(tol: Tolerances) -> Polytope {
    let r = (2.0 * PI / 5.0).cos().sqrt();
    let hs = (0..5)
        .map(|k| {
            let phi = 2.0 * PI * k as f64 / 5.0;
            Hyperplane::hyperbolic(&[-phi.cos(), -phi.sin(), -r]).expect("spacelike")
        })
        .collect();
    Polytope::new(hs, tol).expect("pentagon")
}

/// H² quadrilateral with angles (π/2, π/2, π/2, π/3).
pub fn lambert_quadrilateral(tol: Tolerances) -> Polytope {
    let s = (1.0f64 / 3.0).sqrt();
    let hs = vec![
        Hyperplane::hyperbolic(&[1.0, 0.0, 0.0]).expect("spacelike"),
        Hyperplane::hyperbolic(&[0.0, 1.0, 0.0]).expect("spacelike"),
        Hyperplane::hyperbolic(&[-1.0, 0.0, -s]).expect("spacelike"),
        Hyperplane::hyperbolic(&[0.0, -1.0, -s]).expect("spacelike"),
    ];
    Polytope::new(hs, tol).expect("quadrilateral")
}

/// Axis-parallel Euclidean box `[0,w] × [0,h]`.
pub fn rectangle(w: f64, h: f64, tol: Tolerances) -> Polytope {
    let e = |n: [f64; 2], b: f64| Hyperplane::euclidean(&n, b).expect("nonzero");
    Polytope::new(
        vec![
            e([1.0, 0.0], 0.0),
            e([-1.0, 0.0], -w),
            e([0.0, 1.0], 0.0),
            e([0.0, -1.0], -h),
        ],
        tol,
    )
    .expect("rectangle")
}

/// Euclidean strip `0 ≤ y ≤ 1`.
pub fn strip(tol: Tolerances) -> Polytope {
    let e = |n: [f64; 2], b: f64| Hyperplane::euclidean(&n, b).expect("nonzero");
    Polytope::new(vec![e([0.0, 1.0], 0.0), e([0.0, -1.0], -1.0)], tol).expect("strip")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn e2(n: [f64; 2], b: f64) -> Hyperplane {
        Hyperplane::euclidean(&n, b).unwrap()
    }

    fn square() -> Polytope {
        Polytope::new(
            vec![
                e2([1.0, 0.0], 0.0),
                e2([-1.0, 0.0], -1.0),
                e2([0.0, 1.0], 0.0),
                e2([0.0, -1.0], -1.0),
            ],
            tol(),
        )
        .unwrap()
    }

    fn strip() -> Polytope {
        Polytope::new(vec![e2([0.0, 1.0], 0.0), e2([0.0, -1.0], -1.0)], tol()).unwrap()
    }

    fn angles_sorted(p: &Polytope) -> Vec<f64> {
        let mut a: Vec<f64> = p
            .dihedral_angles()
            .iter()
            .filter_map(|(_, a)| match a {
                AngleClass::Intersecting(t) => Some(*t),
                _ => None,
            })
            .collect();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        a
    }

    #[test]
    fn dihedral_angle_classes() {
        let h = |v: [f64; 3]| Hyperplane::hyperbolic(&v).unwrap();
        let a = h([1.0, 0.0, 0.0]);
        // ⟨a,b⟩ = −1/2
        let b = h([-0.5, (0.75f64).sqrt(), 0.0]);
        match dihedral_angle(&a, &b, &tol()).unwrap() {
            AngleClass::Intersecting(t) => assert!((t - PI / 3.0).abs() < 1e-12),
            x => panic!("{x:?}"),
        }
        // ⟨a,c⟩ = −1: c = (−1, 1, 1)
        let c = h([-1.0, 1.0, 1.0]);
        assert_eq!(
            dihedral_angle(&a, &c, &tol()).unwrap(),
            AngleClass::Parallel
        );
        // ⟨a,d⟩ = −1.2
        let d = h([-1.2, 0.0, (1.2f64 * 1.2 - 1.0).sqrt()]);
        match dihedral_angle(&a, &d, &tol()).unwrap() {
            AngleClass::Divergent(x) => assert!((x - 0.622_362_503_714_779_4).abs() < 1e-9),
            x => panic!("{x:?}"),
        }
        assert_eq!(
            dihedral_angle(&a, &a.flipped(), &tol()),
            Err(GeometryError::IdenticalHyperplanes)
        );
        let sq = square();
        assert_eq!(
            dihedral_angle(&sq.facets()[0], &sq.facets()[1], &tol()).unwrap(),
            AngleClass::Parallel
        );
    }

    #[test]
    fn coxeter_and_acute_predicates() {
        let t = realize_triangle(&CoxeterMatrix::triangle(2, 3, 7).unwrap()).unwrap();
        assert!(is_coxeter_polytope(&t));
        assert!(is_acute_angled(&t));
        assert!(is_coxeter_polytope(&strip()));
        assert!(is_acute_angled(&square()));
        // Quadrilateral with angles 2π/5, 3π/5, π/2, π/2 (a right trapezoid).
        let th = 2.0 * PI / 5.0;
        let quad = Polytope::new(
            vec![
                e2([0.0, 1.0], 0.0),
                e2([1.0, 0.0], 0.0),
                e2([0.0, -1.0], -1.0),
                e2([-th.sin(), -th.cos()], -3.0 * th.sin()),
            ],
            tol(),
        )
        .unwrap();
        assert_eq!(quad.facet_count(), 4);
        assert!(!is_coxeter_polytope(&quad));
        // Regular pentagon in E²: every angle 3π/5.
        let pent = Polytope::new(
            (0..5)
                .map(|k| {
                    let phi = 2.0 * PI * k as f64 / 5.0;
                    e2([-phi.cos(), -phi.sin()], -1.0)
                })
                .collect(),
            tol(),
        )
        .unwrap();
        assert!(!is_acute_angled(&pent));
        // Square with a corner cut off at angles 2π/3 and 5π/6.
        let cut = Polytope::new(
            vec![
                e2([1.0, 0.0], 0.0),
                e2([0.0, 1.0], 0.0),
                e2([-1.0, 0.0], -2.0),
                e2([0.0, -1.0], -2.0),
                e2([-(PI / 6.0).cos(), -(PI / 6.0).sin()], -2.3),
            ],
            tol(),
        )
        .unwrap();
        assert_eq!(cut.facet_count(), 5);
        let big = angles_sorted(&cut).into_iter().fold(0.0, f64::max);
        assert!((big - 5.0 * PI / 6.0).abs() < 1e-9);
        assert!(!is_acute_angled(&cut));
    }

    #[test]
    fn vertex_counts() {
        let t = realize_triangle(&CoxeterMatrix::triangle(2, 3, 7).unwrap()).unwrap();
        let (o, i) = t.vertices();
        assert_eq!((o.len(), i.len()), (3, 0));
        let t = realize_triangle(&CoxeterMatrix::triangle(2, 3, 0).unwrap()).unwrap();
        let (o, i) = t.vertices();
        assert_eq!((o.len(), i.len()), (2, 1));
        let ideal = i[0];
        assert!(lorentz(&ideal.point, &ideal.point).abs() < 1e-9);
        let s = strip();
        let (o, i) = s.vertices();
        assert_eq!((o.len(), i.len()), (0, 0));
        assert_eq!(s.recession_directions().len(), 2);
    }

    #[test]
    fn vertex_links_in_dimension_two() {
        let t = realize_triangle(&CoxeterMatrix::triangle(2, 3, 7).unwrap()).unwrap();
        let link = (0..3)
            .map(|v| vertex_link(&t, v).unwrap())
            .find(|l| match l.angles[0].1 {
                AngleClass::Intersecting(a) => (a - PI / 7.0).abs() < 1e-9,
                _ => false,
            })
            .unwrap();
        assert_eq!(
            link.class(),
            Some(DiagramClass::Elliptic(vec!["I2(7)".into()]))
        );
        assert!(link.satisfies_link_law(2));
        let t = realize_triangle(&CoxeterMatrix::triangle(2, 3, 0).unwrap()).unwrap();
        let ideal = t.all_vertices().iter().position(|v| v.ideal).unwrap();
        let l = vertex_link(&t, ideal).unwrap();
        assert_eq!(
            l.class(),
            Some(DiagramClass::ParabolicUnion(vec!["Ã1".into()]))
        );
        assert!(l.satisfies_link_law(2));
        assert_eq!(vertex_link(&t, 7), Err(GeometryError::InvalidVertex(7)));
    }

    #[test]
    fn cube_corner_link() {
        let mut hs = Vec::new();
        for axis in 0..3 {
            let mut n = [0.0; 3];
            n[axis] = 1.0;
            hs.push(Hyperplane::euclidean(&n, 0.0).unwrap());
            n[axis] = -1.0;
            hs.push(Hyperplane::euclidean(&n, -1.0).unwrap());
        }
        let cube = Polytope::new(hs, tol()).unwrap();
        assert_eq!(cube.all_vertices().len(), 8);
        assert_eq!(cube.ridges().len(), 12);
        assert!(has_finite_volume(&cube).unwrap());
        let l = vertex_link(&cube, 0).unwrap();
        assert_eq!(l.angles.len(), 3);
        for (_, a) in &l.angles {
            assert_eq!(*a, AngleClass::Intersecting(PI / 2.0));
        }
        assert_eq!(
            l.class(),
            Some(DiagramClass::Elliptic(vec![
                "A1".into(),
                "A1".into(),
                "A1".into()
            ]))
        );
        assert!(andreev_verify(&cube).unwrap().passed());
    }

    #[test]
    fn tetrahedron_336_has_an_ideal_vertex() {
        let m = CoxeterMatrix::from_codes(&[
            vec![1, 3, 2, 2],
            vec![3, 1, 3, 2],
            vec![2, 3, 1, 6],
            vec![2, 2, 6, 1],
        ])
        .unwrap();
        let r = realize_coxeter(&m, &tol()).unwrap();
        let p = &r.polytope;
        assert_eq!(
            p.space(),
            Space {
                kind: SpaceKind::Hyperbolic,
                dim: 3
            }
        );
        let v = p
            .all_vertices()
            .iter()
            .position(|v| v.facets == vec![1, 2, 3])
            .unwrap();
        let l = vertex_link(p, v).unwrap();
        assert!(l.ideal);
        assert_eq!(
            l.class(),
            Some(DiagramClass::ParabolicUnion(vec!["G\u{303}2".into()]))
        );
        assert!(has_finite_volume(p).unwrap());
        for v in 0..p.all_vertices().len() {
            assert!(vertex_link(p, v).unwrap().satisfies_link_law(3));
        }
        assert!(andreev_verify(p).unwrap().passed());
    }

    #[test]
    fn finite_volume_and_area() {
        let t = realize_triangle(&CoxeterMatrix::triangle(2, 3, 7).unwrap()).unwrap();
        assert!(has_finite_volume(&t).unwrap());
        assert!((area2(&t).unwrap() - PI / 42.0).abs() < 1e-12);
        assert!(!has_finite_volume(&strip()).unwrap());
        assert_eq!(area2(&strip()), Err(GeometryError::InfiniteArea));
        let t = realize_triangle(&CoxeterMatrix::triangle(2, 3, 0).unwrap()).unwrap();
        assert!(has_finite_volume(&t).unwrap());
        assert!((area2(&t).unwrap() - PI / 6.0).abs() < 1e-9);
        let a = area2(&realize_triangle(&CoxeterMatrix::triangle(2, 3, 8).unwrap()).unwrap());
        let b = area2(&realize_triangle(&CoxeterMatrix::triangle(3, 3, 4).unwrap()).unwrap());
        assert!((a.unwrap() - PI / 24.0).abs() < 1e-12);
        assert!((b.unwrap() - PI / 12.0).abs() < 1e-12);
        assert!((area2(&square()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn extension_relations() {
        let t = realize_triangle(&CoxeterMatrix::triangle(2, 3, 7).unwrap()).unwrap();
        assert_eq!(
            extension_relation(&t, &[0], &[1]).unwrap(),
            ExtensionRelation::Meet
        );
        let sq = square();
        assert_eq!(
            extension_relation(&sq, &[0], &[1]).unwrap(),
            ExtensionRelation::Disjoint
        );
        assert_eq!(
            extension_relation(&sq, &[0, 1], &[2]),
            Err(GeometryError::InvalidFace(vec![0, 1]))
        );
        let p = right_angled_pentagon(tol());
        assert_eq!(p.facet_count(), 5);
        for i in 0..5 {
            let j = (i + 2) % 5;
            assert!(p.facets()[i].product(&p.facets()[j]) < -1.0);
            assert_eq!(
                extension_relation(&p, &[i], &[j]).unwrap(),
                ExtensionRelation::Disjoint
            );
        }
    }

    #[test]
    fn andreev_examples() {
        let t = realize_triangle(&CoxeterMatrix::triangle(2, 3, 7).unwrap()).unwrap();
        let r = andreev_verify(&t).unwrap();
        assert!(r.passed());
        let p = right_angled_pentagon(tol());
        assert!(is_acute_angled(&p));
        let r = andreev_verify(&p).unwrap();
        assert!(r.passed());
        // 5 side pairs, 5 vertex pairs that share no side, 5 vertex-side pairs... only the
        // side-side count is pinned here.
        let side_pairs = (0..5)
            .flat_map(|i| ((i + 1)..5).map(move |j| (i, j)))
            .filter(|&(i, j)| !p.faces_meet(&[i], &[j]))
            .count();
        assert_eq!(side_pairs, 5);
        let q = lambert_quadrilateral(tol());
        assert_eq!(q.facet_count(), 4);
        let mut a = angles_sorted(&q);
        a.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
        assert_eq!(a.len(), 2);
        assert!((a[0] - PI / 3.0).abs() < 1e-9 && (a[1] - PI / 2.0).abs() < 1e-9);
        assert!(andreev_verify(&q).unwrap().passed());
        let bad = Polytope::new(
            (0..5)
                .map(|k| {
                    let phi = 2.0 * PI * k as f64 / 5.0;
                    e2([-phi.cos(), -phi.sin()], -1.0)
                })
                .collect(),
            tol(),
        )
        .unwrap();
        assert_eq!(andreev_verify(&bad), Err(GeometryError::NotAcuteAngled));
    }

    #[test]
    fn splits() {
        let s = split_by_hyperplane(&strip(), &e2([1.0, 0.0], 0.0)).unwrap();
        assert_eq!(s.first.facet_count(), 3);
        assert_eq!(s.second.facet_count(), 3);
        assert!(s.meets_every_facet_interior);
        assert!(!s.contains_vertex);
        let d = split_by_hyperplane(&square(), &e2([1.0, -1.0], 0.0)).unwrap();
        assert!(d.contains_vertex);
        assert_eq!(d.first.facet_count(), 3);
        // Equilateral triangle with an altitude through the apex.
        let tri = realize_triangle(&CoxeterMatrix::triangle(3, 3, 3).unwrap()).unwrap();
        let apex = tri.all_vertices()[0].chart();
        let opposite: Vec<usize> = (0..3)
            .filter(|i| !tri.all_vertices()[0].facets.contains(i))
            .collect();
        let base = &tri.facets()[opposite[0]];
        let n = match base {
            Hyperplane::Euclidean { normal, .. } => normal.clone(),
            _ => unreachable!(),
        };
        // Altitude: through the apex, perpendicular to the base.
        let dir = [-n[1], n[0]];
        let alt = e2([dir[0], dir[1]], dir[0] * apex[0] + dir[1] * apex[1]);
        let s = split_by_hyperplane(&tri, &alt).unwrap();
        assert!(!s.meets_every_facet_interior);
        assert_eq!(s.facets_met, 1);
        assert!(s.contains_vertex);
        assert!(is_coxeter_polytope(&s.first));
        let total = area2(&s.first).unwrap() + area2(&s.second).unwrap();
        assert!((total - area2(&tri).unwrap()).abs() < 1e-9);
        assert_eq!(
            split_by_hyperplane(&square(), &e2([1.0, 0.0], 5.0)).err(),
            Some(GeometryError::DisjointSplit)
        );
    }

    #[test]
    fn realize_examples() {
        let eq = realize_triangle(&CoxeterMatrix::triangle(3, 3, 3).unwrap()).unwrap();
        assert_eq!(eq.space().kind, SpaceKind::Euclidean);
        for a in angles_sorted(&eq) {
            assert!((a - PI / 3.0).abs() < 1e-12);
        }
        let r = realize_triangle(&CoxeterMatrix::triangle(2, 3, 6).unwrap()).unwrap();
        let want = [PI / 6.0, PI / 3.0, PI / 2.0];
        for (a, w) in angles_sorted(&r).iter().zip(want) {
            assert!((a - w).abs() < 1e-12);
        }
        // Canonical placement: first wall along the first axis.
        match &r.facets()[0] {
            Hyperplane::Euclidean { normal, .. } => assert_eq!(normal.as_slice(), &[1.0, 0.0]),
            _ => unreachable!(),
        }
        assert_eq!(
            realize_triangle(&CoxeterMatrix::triangle(2, 3, 5).unwrap()).err(),
            Some(GeometryError::EllipticGram)
        );
    }

    #[test]
    fn reflection_is_an_isometry_of_the_form() {
        let h = Hyperplane::hyperbolic(&[0.3, -0.4, 0.2]).unwrap();
        let x = homogeneous_point(SpaceKind::Hyperbolic, &[0.1, 0.2], false);
        let y = h.reflect(&x);
        assert!((lorentz(&y, &y) + 1.0).abs() < 1e-12);
        assert!((h.eval(&y) + h.eval(&x)).abs() < 1e-12);
        let e = e2([0.6, 0.8], 1.0);
        let p = DVector::from_vec(vec![3.0, -1.0, 1.0]);
        let q = e.reflect(&p);
        assert!((e.eval(&q) + e.eval(&p)).abs() < 1e-12);
    }
}
