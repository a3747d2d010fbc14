//! Coxeter matrices, Coxeter diagrams, Gram matrices and the classification
//! of diagrams into elliptic (finite), parabolic (affine) and everything else.
//!
//! A diagram is classified twice: once from the signature of its Gram matrix
//! and once by isomorphism against the standard tables of connected elliptic
//! and connected parabolic diagrams. The two must agree; the test suite checks
//! this for every tabulated family up to rank 10.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use thiserror::Error;

/// Eigenvalues with absolute value at or below this count as zero.
pub const TAU_SIG: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagramError {
    #[error("matrix must have rank at least 1")]
    EmptyMatrix,
    #[error("row {row} has length {len}, expected {rank}")]
    RaggedRow { row: usize, len: usize, rank: usize },
    #[error("entry ({i},{j}) = {value}: {reason}")]
    BadEntry {
        i: usize,
        j: usize,
        value: u32,
        reason: &'static str,
    },
    #[error("weight for ({i},{j}) = {c}: {reason}")]
    BadWeight {
        i: usize,
        j: usize,
        c: f64,
        reason: &'static str,
    },
    #[error("unknown node {0}")]
    UnknownNode(usize),
}

/// Order of the product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    /// JSON-style encoding: ∞ is written as 0.
    pub fn from_code(code: u32) -> Self {
        if code == 0 {
            Label::Infinite
        } else {
            Label::Finite(code)
        }
    }

    pub fn code(self) -> u32 {
        match self {
            Label::Finite(m) => m,
            Label::Infinite => 0,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "∞"),
        }
    }
}

/// Symmetric Coxeter matrix with optional Gram weights on ∞-pairs.
///
/// An ∞-pair without a weight stands for two parallel mirrors (Gram entry −1);
/// a weight `c < −1` stands for two divergent mirrors at distance `arccosh(−c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoxeterMatrix {
    labels: Vec<Vec<Label>>,
    weights: BTreeMap<(usize, usize), f64>,
}

impl CoxeterMatrix {
    pub fn new(labels: Vec<Vec<Label>>) -> Result<Self, DiagramError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(DiagramError::EmptyMatrix);
        }
        for (i, row) in labels.iter().enumerate() {
            if row.len() != rank {
                return Err(DiagramError::RaggedRow {
                    row: i,
                    len: row.len(),
                    rank,
                });
            }
        }
        for (i, row) in labels.iter().enumerate() {
            for (j, &l) in row.iter().enumerate() {
                if i == j {
                    if l != Label::Finite(1) {
                        return Err(DiagramError::BadEntry {
                            i,
                            j,
                            value: l.code(),
                            reason: "diagonal entries must be 1",
                        });
                    }
                    continue;
                }
                if let Label::Finite(m) = l {
                    if m < 2 {
                        return Err(DiagramError::BadEntry {
                            i,
                            j,
                            value: m,
                            reason: "off-diagonal entries must be at least 2 (or 0 for ∞)",
                        });
                    }
                }
                if labels[j][i] != l {
                    return Err(DiagramError::BadEntry {
                        i,
                        j,
                        value: l.code(),
                        reason: "matrix is not symmetric",
                    });
                }
            }
        }
        Ok(Self {
            labels,
            weights: BTreeMap::new(),
        })
    }

    /// Builds a matrix from integer rows, 0 meaning ∞.
    pub fn from_codes(rows: &[Vec<u32>]) -> Result<Self, DiagramError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| Label::from_code(c)).collect())
                .collect(),
        )
    }

    /// Rank-3 matrix of the triangle group with `m01 = p`, `m12 = q`, `m02 = r`
    /// (0 meaning ∞).
    pub fn triangle(p: u32, q: u32, r: u32) -> Result<Self, DiagramError> {
        Self::from_codes(&[vec![1, p, r], vec![p, 1, q], vec![r, q, 1]])
    }

    /// Attaches a Gram weight `c ≤ −1` to the ∞-pair `(i, j)`.
    pub fn with_weight(mut self, i: usize, j: usize, c: f64) -> Result<Self, DiagramError> {
        let n = self.rank();
        if i >= n || j >= n || i == j {
            return Err(DiagramError::BadWeight {
                i,
                j,
                c,
                reason: "pair out of range",
            });
        }
        if self.labels[i][j] != Label::Infinite {
            return Err(DiagramError::BadWeight {
                i,
                j,
                c,
                reason: "weights are only allowed on ∞ entries",
            });
        }
        if !c.is_finite() || c > -1.0 {
            return Err(DiagramError::BadWeight {
                i,
                j,
                c,
                reason: "weight must be a finite real ≤ −1",
            });
        }
        let key = (i.min(j), i.max(j));
        if c == -1.0 {
            self.weights.remove(&key);
        } else {
            self.weights.insert(key, c);
        }
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i][j]
    }

    /// Gram weight of an ∞-pair; `None` for finite pairs.
    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        match self.labels[i][j] {
            Label::Infinite => Some(
                self.weights
                    .get(&(i.min(j), i.max(j)))
                    .copied()
                    .unwrap_or(-1.0),
            ),
            Label::Finite(_) => None,
        }
    }

    /// Explicitly stored weights (those different from −1), keyed by `(i, j)` with `i < j`.
    pub fn weights(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.weights
    }

    /// Largest finite off-diagonal label (2 when there is none).
    pub fn max_finite_label(&self) -> u32 {
        let n = self.rank();
        let mut best = 2;
        for i in 0..n {
            for j in (i + 1)..n {
                if let Label::Finite(m) = self.labels[i][j] {
                    best = best.max(m);
                }
            }
        }
        best
    }

    pub fn gram(&self) -> GramMatrix {
        gram_from_coxeter(self)
    }

    pub fn diagram(&self) -> CoxeterDiagram {
        CoxeterDiagram::from_matrix(self)
    }
}

/// Gram matrix of the geometric representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(pub DMatrix<f64>);

impl GramMatrix {
    pub fn rank(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// Principal submatrix on the given indices.
    pub fn principal(&self, idx: &[usize]) -> GramMatrix {
        GramMatrix(DMatrix::from_fn(idx.len(), idx.len(), |a, b| {
            self.0[(idx[a], idx[b])]
        }))
    }

    pub fn signature(&self) -> Signature {
        signature(self)
    }
}

/// `−cos(π/m)`, written so that `m = 2` gives exactly 0 and `m = 3` exactly −1/2.
pub fn neg_cos_pi_over(m: u32) -> f64 {
    match m {
        2 => 0.0,
        3 => -0.5,
        _ => -(PI / m as f64).cos(),
    }
}

pub fn gram_from_coxeter(m: &CoxeterMatrix) -> GramMatrix {
    let n = m.rank();
    GramMatrix(DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            return 1.0;
        }
        match m.label(i, j) {
            Label::Finite(k) => neg_cos_pi_over(k),
            Label::Infinite => m.weight(i, j).unwrap_or(-1.0),
        }
    }))
}

/// Sign counts of the eigenvalues of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, zero: usize, negative: usize) -> Self {
        Self {
            positive,
            zero,
            negative,
        }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.zero + self.negative
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.zero, self.negative)
    }
}

pub fn signature(g: &GramMatrix) -> Signature {
    signature_with(g.matrix(), TAU_SIG)
}

/// Eigenvalue sign counts of a symmetric matrix with an explicit zero threshold.
pub fn signature_with(m: &DMatrix<f64>, tau: f64) -> Signature {
    if m.nrows() == 0 {
        return Signature::new(0, 0, 0);
    }
    let eig = m.clone().symmetric_eigen();
    let mut s = Signature::new(0, 0, 0);
    for &l in eig.eigenvalues.iter() {
        if l > tau {
            s.positive += 1;
        } else if l < -tau {
            s.negative += 1;
        } else {
            s.zero += 1;
        }
    }
    s
}

/// Edge of a Coxeter diagram. Pairs with `m = 2` have no edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeLabel {
    /// Finite label `m ≥ 3`.
    Order(u32),
    /// ∞ with Gram entry −1 (parallel mirrors).
    Parallel,
    /// ∞ with Gram entry `c < −1` (divergent mirrors).
    Dotted(f64),
}

impl EdgeLabel {
    fn same_kind(&self, other: &EdgeLabel) -> bool {
        match (self, other) {
            (EdgeLabel::Order(a), EdgeLabel::Order(b)) => a == b,
            (EdgeLabel::Parallel, EdgeLabel::Parallel) => true,
            (EdgeLabel::Dotted(a), EdgeLabel::Dotted(b)) => (a - b).abs() <= 1e-12,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: EdgeLabel,
}

/// Coxeter diagram on a set of named nodes.
///
/// Node names survive [`remove_node`], so a node of a sub-diagram still refers
/// to the generator it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct CoxeterDiagram {
    nodes: Vec<usize>,
    /// Edges by node position, `a < b`, sorted.
    edges: Vec<Edge>,
}

impl CoxeterDiagram {
    pub fn from_matrix(m: &CoxeterMatrix) -> Self {
        let n = m.rank();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let label = match m.label(a, b) {
                    Label::Finite(2) => continue,
                    Label::Finite(k) => EdgeLabel::Order(k),
                    Label::Infinite => {
                        let c = m.weight(a, b).unwrap_or(-1.0);
                        if c == -1.0 {
                            EdgeLabel::Parallel
                        } else {
                            EdgeLabel::Dotted(c)
                        }
                    }
                };
                edges.push(Edge { a, b, label });
            }
        }
        Self {
            nodes: (0..n).collect(),
            edges,
        }
    }

    /// Diagram on `n` nodes named `0..n` from an edge list by position.
    pub fn from_edges(n: usize, edges: &[(usize, usize, EdgeLabel)]) -> Self {
        let mut e: Vec<Edge> = edges
            .iter()
            .map(|&(a, b, label)| Edge {
                a: a.min(b),
                b: a.max(b),
                label,
            })
            .collect();
        e.sort_by_key(|x| (x.a, x.b));
        Self {
            nodes: (0..n).collect(),
            edges: e,
        }
    }

    pub fn to_matrix(&self) -> CoxeterMatrix {
        let n = self.nodes.len();
        let mut labels = vec![vec![Label::Finite(2); n]; n];
        for (i, row) in labels.iter_mut().enumerate() {
            row[i] = Label::Finite(1);
        }
        let mut weights = BTreeMap::new();
        for e in &self.edges {
            let l = match e.label {
                EdgeLabel::Order(k) => Label::Finite(k),
                EdgeLabel::Parallel => Label::Infinite,
                EdgeLabel::Dotted(c) => {
                    weights.insert((e.a, e.b), c);
                    Label::Infinite
                }
            };
            labels[e.a][e.b] = l;
            labels[e.b][e.a] = l;
        }
        CoxeterMatrix { labels, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<EdgeLabel> {
        let (a, b) = (a.min(b), a.max(b));
        self.edges
            .iter()
            .find(|e| e.a == a && e.b == b)
            .map(|e| e.label)
    }

    pub fn has_dotted(&self) -> bool {
        self.edges
            .iter()
            .any(|e| matches!(e.label, EdgeLabel::Dotted(_)))
    }

    pub fn gram(&self) -> GramMatrix {
        gram_from_coxeter(&self.to_matrix())
    }

    fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    /// Connected components as sorted lists of node positions.
    pub fn component_positions(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for e in &self.edges {
                    let w = if e.a == v {
                        e.b
                    } else if e.b == v {
                        e.a
                    } else {
                        continue;
                    };
                    if !seen[w] {
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

    /// Induced sub-diagram on the given node positions (kept in the given order).
    pub fn induced(&self, positions: &[usize]) -> CoxeterDiagram {
        let mut edges = Vec::new();
        for (na, &pa) in positions.iter().enumerate() {
            for (nb, &pb) in positions.iter().enumerate().skip(na + 1) {
                if let Some(label) = self.edge(pa, pb) {
                    edges.push(Edge {
                        a: na,
                        b: nb,
                        label,
                    });
                }
            }
        }
        CoxeterDiagram {
            nodes: positions.iter().map(|&p| self.nodes[p]).collect(),
            edges,
        }
    }

    pub fn components(&self) -> Vec<CoxeterDiagram> {
        self.component_positions()
            .iter()
            .map(|c| self.induced(c))
            .collect()
    }

    /// Disjoint union; nodes of `other` are renamed to follow those of `self`.
    pub fn disjoint_union(&self, other: &CoxeterDiagram) -> CoxeterDiagram {
        let n = self.nodes.len();
        let base = self.nodes.iter().max().map_or(0, |m| m + 1);
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes.iter().map(|v| v + base));
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            a: e.a + n,
            b: e.b + n,
            label: e.label,
        }));
        CoxeterDiagram { nodes, edges }
    }

    /// Plain-text rendering: one line per edge, then isolated nodes.
    pub fn text_art(&self) -> String {
        let mut lines = Vec::new();
        for e in &self.edges {
            let (a, b) = (self.nodes[e.a], self.nodes[e.b]);
            let bond = match e.label {
                EdgeLabel::Order(3) => "-----".to_string(),
                EdgeLabel::Order(k) => format!("--{k}--"),
                EdgeLabel::Parallel => "--∞--".to_string(),
                EdgeLabel::Dotted(c) => format!("..({c})..",),
            };
            lines.push(format!("{a} {bond} {b}"));
        }
        for (p, &v) in self.nodes.iter().enumerate() {
            if self.degree(p) == 0 {
                lines.push(format!("{v}"));
            }
        }
        lines.join("\n")
    }
}

pub fn remove_node(d: &CoxeterDiagram, v: usize) -> Result<CoxeterDiagram, DiagramError> {
    let pos = d
        .nodes
        .iter()
        .position(|&x| x == v)
        .ok_or(DiagramError::UnknownNode(v))?;
    let keep: Vec<usize> = (0..d.len()).filter(|&p| p != pos).collect();
    Ok(d.induced(&keep))
}

/// Coarse type of a single connected diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentType {
    Elliptic,
    Parabolic,
    Other,
}

/// Classification of a (possibly disconnected) diagram.
///
/// `Indefinite` covers every diagram that is neither elliptic nor a disjoint
/// union of connected parabolic diagrams, including mixed unions such as
/// `A1 ⊔ Ã1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramClass {
    Elliptic(Vec<String>),
    ParabolicUnion(Vec<String>),
    Indefinite,
}

impl DiagramClass {
    pub fn is_elliptic(&self) -> bool {
        matches!(self, DiagramClass::Elliptic(_))
    }

    pub fn is_parabolic_union(&self) -> bool {
        matches!(self, DiagramClass::ParabolicUnion(_))
    }
}

/// Signature route: type of a connected diagram.
pub fn component_type_by_signature(d: &CoxeterDiagram) -> ComponentType {
    if d.has_dotted() {
        return ComponentType::Other;
    }
    let k = d.len();
    let s = d.gram().signature();
    if s == Signature::new(k, 0, 0) {
        ComponentType::Elliptic
    } else if k >= 2 && s == Signature::new(k - 1, 1, 0) {
        ComponentType::Parabolic
    } else {
        ComponentType::Other
    }
}

pub fn classify_diagram(d: &CoxeterDiagram) -> DiagramClass {
    if d.has_dotted() || d.is_empty() {
        return DiagramClass::Indefinite;
    }
    let comps = d.components();
    let types: Vec<ComponentType> = comps.iter().map(component_type_by_signature).collect();
    let kind = if types.iter().all(|&t| t == ComponentType::Elliptic) {
        ComponentType::Elliptic
    } else if types.iter().all(|&t| t == ComponentType::Parabolic) {
        ComponentType::Parabolic
    } else {
        return DiagramClass::Indefinite;
    };
    let names = comps
        .iter()
        .map(|c| {
            table_name(c)
                .map(|(name, _)| name)
                .unwrap_or_else(|| "?".to_string())
        })
        .collect();
    match kind {
        ComponentType::Elliptic => DiagramClass::Elliptic(names),
        _ => DiagramClass::ParabolicUnion(names),
    }
}

/// Table route: classification by isomorphism against the named families.
pub fn classify_by_table(d: &CoxeterDiagram) -> DiagramClass {
    if d.has_dotted() || d.is_empty() {
        return DiagramClass::Indefinite;
    }
    let mut names = Vec::new();
    let mut types = Vec::new();
    for c in d.components() {
        match table_name(&c) {
            Some((name, t)) => {
                names.push(name);
                types.push(t);
            }
            None => return DiagramClass::Indefinite,
        }
    }
    if types.iter().all(|&t| t == ComponentType::Elliptic) {
        DiagramClass::Elliptic(names)
    } else if types.iter().all(|&t| t == ComponentType::Parabolic) {
        DiagramClass::ParabolicUnion(names)
    } else {
        DiagramClass::Indefinite
    }
}

fn tilde(letter: char) -> String {
    match letter {
        'A' => "Ã".to_string(),
        'E' => "Ẽ".to_string(),
        c => format!("{c}\u{303}"),
    }
}

/// Builds a path on `labels.len() + 1` nodes with the given consecutive labels.
fn path(labels: &[u32]) -> CoxeterDiagram {
    let edges: Vec<(usize, usize, EdgeLabel)> = labels
        .iter()
        .enumerate()
        .filter(|(_, &m)| m != 2)
        .map(|(i, &m)| (i, i + 1, EdgeLabel::Order(m)))
        .collect();
    CoxeterDiagram::from_edges(labels.len() + 1, &edges)
}

/// Star with a central node and simply-laced arms of the given lengths.
fn star(arms: &[usize]) -> CoxeterDiagram {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next, EdgeLabel::Order(3)));
            prev = next;
            next += 1;
        }
    }
    CoxeterDiagram::from_edges(next, &edges)
}

/// Path `a-b-c-...` with two extra leaves hanging off the first interior node.
/// `tail` gives the labels of the chain that starts at the branch node.
fn forked(tail: &[u32]) -> CoxeterDiagram {
    // nodes 0 and 1 attach to 2, then 2-3-...
    let mut edges = vec![(0, 2, EdgeLabel::Order(3)), (1, 2, EdgeLabel::Order(3))];
    for (k, &m) in tail.iter().enumerate() {
        edges.push((2 + k, 3 + k, EdgeLabel::Order(m)));
    }
    CoxeterDiagram::from_edges(3 + tail.len(), &edges)
}

/// Connected elliptic diagrams on `k ≥ 3` nodes (rank 1 and 2 are named directly).
pub fn elliptic_table(k: usize) -> Vec<(String, CoxeterDiagram)> {
    let mut t = Vec::new();
    if k < 3 {
        return t;
    }
    t.push((format!("A{k}"), path(&vec![3; k - 1])));
    let mut b = vec![3; k - 1];
    b[k - 2] = 4;
    t.push((format!("B{k}"), path(&b)));
    if k >= 4 {
        t.push((format!("D{k}"), star(&[k - 3, 1, 1])));
    }
    match k {
        3 => t.push(("H3".into(), path(&[5, 3]))),
        4 => {
            t.push(("F4".into(), path(&[3, 4, 3])));
            t.push(("H4".into(), path(&[5, 3, 3])));
        }
        6 => t.push(("E6".into(), star(&[2, 2, 1]))),
        7 => t.push(("E7".into(), star(&[3, 2, 1]))),
        8 => t.push(("E8".into(), star(&[4, 2, 1]))),
        _ => {}
    }
    t
}

/// Connected parabolic diagrams on `k ≥ 2` nodes.
pub fn parabolic_table(k: usize) -> Vec<(String, CoxeterDiagram)> {
    let mut t = Vec::new();
    if k < 2 {
        return t;
    }
    let n = k - 1;
    if k == 2 {
        t.push((
            format!("{}1", tilde('A')),
            CoxeterDiagram::from_edges(2, &[(0, 1, EdgeLabel::Parallel)]),
        ));
        return t;
    }
    let cycle: Vec<(usize, usize, EdgeLabel)> = (0..k)
        .map(|i| (i, (i + 1) % k, EdgeLabel::Order(3)))
        .collect();
    t.push((
        format!("{}{n}", tilde('A')),
        CoxeterDiagram::from_edges(k, &cycle),
    ));
    if n >= 3 {
        // B̃n: fork at one end, label 4 at the other.
        let mut tail = vec![3; n - 2];
        tail[n - 3] = 4;
        t.push((format!("{}{n}", tilde('B')), forked(&tail)));
    }
    let mut c = vec![3; n];
    c[0] = 4;
    c[n - 1] = 4;
    t.push((format!("{}{n}", tilde('C')), path(&c)));
    if n >= 4 {
        // D̃n: forks at both ends.
        let mut edges = vec![(0, 2, EdgeLabel::Order(3)), (1, 2, EdgeLabel::Order(3))];
        for v in 2..(n - 2) {
            edges.push((v, v + 1, EdgeLabel::Order(3)));
        }
        edges.push((n - 2, n - 1, EdgeLabel::Order(3)));
        edges.push((n - 2, n, EdgeLabel::Order(3)));
        t.push((
            format!("{}{n}", tilde('D')),
            CoxeterDiagram::from_edges(k, &edges),
        ));
    }
    match n {
        2 => t.push((format!("{}2", tilde('G')), path(&[6, 3]))),
        4 => t.push((format!("{}4", tilde('F')), path(&[3, 3, 4, 3]))),
        6 => t.push((format!("{}6", tilde('E')), star(&[2, 2, 2]))),
        7 => t.push((format!("{}7", tilde('E')), star(&[3, 3, 1]))),
        8 => t.push((format!("{}8", tilde('E')), star(&[5, 2, 1]))),
        _ => {}
    }
    t
}

/// Name and type of a connected diagram from the tables, if it is tabulated.
pub fn table_name(d: &CoxeterDiagram) -> Option<(String, ComponentType)> {
    if d.has_dotted() {
        return None;
    }
    match d.len() {
        0 => None,
        1 => Some(("A1".into(), ComponentType::Elliptic)),
        2 => match d.edge(0, 1) {
            None => None,
            Some(EdgeLabel::Order(3)) => Some(("A2".into(), ComponentType::Elliptic)),
            Some(EdgeLabel::Order(4)) => Some(("B2".into(), ComponentType::Elliptic)),
            Some(EdgeLabel::Order(m)) => Some((format!("I2({m})"), ComponentType::Elliptic)),
            Some(EdgeLabel::Parallel) => {
                Some((format!("{}1", tilde('A')), ComponentType::Parabolic))
            }
            Some(EdgeLabel::Dotted(_)) => None,
        },
        k => {
            for (name, t) in elliptic_table(k) {
                if isomorphic(d, &t) {
                    return Some((name, ComponentType::Elliptic));
                }
            }
            for (name, t) in parabolic_table(k) {
                if isomorphic(d, &t) {
                    return Some((name, ComponentType::Parabolic));
                }
            }
            None
        }
    }
}

/// Labelled-graph isomorphism by exhaustive permutation search with degree pruning.
pub fn isomorphic(a: &CoxeterDiagram, b: &CoxeterDiagram) -> bool {
    let n = a.len();
    if n != b.len() || a.edges.len() != b.edges.len() {
        return false;
    }
    let deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let mut sa = deg_a.clone();
    let mut sb = deg_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_map(a, b, &deg_a, &deg_b, 0, &mut map, &mut used)
}

fn extend_map(
    a: &CoxeterDiagram,
    b: &CoxeterDiagram,
    deg_a: &[usize],
    deg_b: &[usize],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.len();
    if v == n {
        return true;
    }
    for w in 0..n {
        if used[w] || deg_a[v] != deg_b[w] {
            continue;
        }
        let consistent = (0..v).all(|u| match (a.edge(u, v), b.edge(map[u], w)) {
            (None, None) => true,
            (Some(x), Some(y)) => x.same_kind(&y),
            _ => false,
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend_map(a, b, deg_a, deg_b, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    false
}

/// Every disjoint union of connected parabolic diagrams with at most
/// `max_rank` nodes, one representative per isomorphism class.
pub fn enumerate_parabolic_unions(max_rank: usize) -> Vec<CoxeterDiagram> {
    let max_rank = max_rank.min(10);
    let mut pieces: Vec<(String, CoxeterDiagram)> = Vec::new();
    for k in 2..=max_rank {
        pieces.extend(parabolic_table(k));
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    collect_unions(&pieces, 0, 0, max_rank, &mut chosen, &mut out);
    out
}

fn collect_unions(
    pieces: &[(String, CoxeterDiagram)],
    start: usize,
    used: usize,
    max_rank: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<CoxeterDiagram>,
) {
    for i in start..pieces.len() {
        let size = pieces[i].1.len();
        if used + size > max_rank {
            continue;
        }
        chosen.push(i);
        let mut d = pieces[chosen[0]].1.clone();
        for &c in &chosen[1..] {
            d = d.disjoint_union(&pieces[c].1);
        }
        out.push(d);
        collect_unions(pieces, i, used + size, max_rank, chosen, out);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(c: &DiagramClass) -> Vec<String> {
        match c {
            DiagramClass::Elliptic(n) | DiagramClass::ParabolicUnion(n) => n.clone(),
            DiagramClass::Indefinite => vec![],
        }
    }

    #[test]
    fn gram_entries() {
        let m = CoxeterMatrix::triangle(2, 3, 7).unwrap();
        let g = m.gram();
        assert_eq!(g.get(0, 1), 0.0);
        assert_eq!(g.get(1, 2), -0.5);
        // −cos(π/7) = −0.9009688679024191
        assert!((g.get(0, 2) + 0.900_968_867_902_419_1).abs() < 1e-15);
        let w = CoxeterMatrix::triangle(2, 2, 0)
            .unwrap()
            .with_weight(0, 2, -1.5)
            .unwrap();
        assert_eq!(w.gram().get(0, 2), -1.5);
        assert_eq!(w.gram().get(2, 0), -1.5);
    }

    #[test]
    fn invalid_matrices() {
        assert!(CoxeterMatrix::from_codes(&[vec![1, 1], vec![1, 1]]).is_err());
        assert!(CoxeterMatrix::from_codes(&[vec![1, 3], vec![4, 1]]).is_err());
        assert!(CoxeterMatrix::from_codes(&[vec![2]]).is_err());
        assert!(CoxeterMatrix::from_codes(&[vec![1, 3], vec![3]]).is_err());
        let m = CoxeterMatrix::triangle(2, 3, 0).unwrap();
        assert!(m.clone().with_weight(0, 1, -2.0).is_err());
        assert!(m.with_weight(0, 2, -0.5).is_err());
    }

    #[test]
    fn signatures() {
        let a2 = GramMatrix(DMatrix::from_row_slice(2, 2, &[1.0, -0.5, -0.5, 1.0]));
        assert_eq!(a2.signature(), Signature::new(2, 0, 0));
        let at2 = CoxeterMatrix::triangle(3, 3, 3).unwrap().gram();
        assert_eq!(at2.signature(), Signature::new(2, 1, 0));
        let h = CoxeterMatrix::triangle(2, 3, 7).unwrap().gram();
        assert_eq!(h.signature(), Signature::new(2, 0, 1));
    }

    #[test]
    fn classify_examples() {
        let h3 = path(&[5, 3]);
        assert_eq!(
            classify_diagram(&h3),
            DiagramClass::Elliptic(vec!["H3".into()])
        );
        let at2 = CoxeterMatrix::triangle(3, 3, 3).unwrap().diagram();
        assert_eq!(
            classify_diagram(&at2),
            DiagramClass::ParabolicUnion(vec!["Ã2".into()])
        );
        let g2 = path(&[3, 6]);
        assert_eq!(
            classify_diagram(&g2),
            DiagramClass::ParabolicUnion(vec!["G\u{303}2".into()])
        );
        let cube = CoxeterDiagram::from_edges(3, &[]);
        assert_eq!(
            classify_diagram(&cube),
            DiagramClass::Elliptic(vec!["A1".into(), "A1".into(), "A1".into()])
        );
    }

    #[test]
    fn infinity_weights() {
        let par = CoxeterDiagram::from_edges(2, &[(0, 1, EdgeLabel::Parallel)]);
        assert_eq!(
            classify_diagram(&par),
            DiagramClass::ParabolicUnion(vec!["Ã1".into()])
        );
        let div = CoxeterDiagram::from_edges(2, &[(0, 1, EdgeLabel::Dotted(-1.5))]);
        assert_eq!(classify_diagram(&div), DiagramClass::Indefinite);
    }

    #[test]
    fn hyperbolic_triangle_is_indefinite() {
        let d = CoxeterMatrix::triangle(2, 3, 7).unwrap().diagram();
        assert_eq!(classify_diagram(&d), DiagramClass::Indefinite);
        assert_eq!(classify_by_table(&d), DiagramClass::Indefinite);
    }

    #[test]
    fn mixed_union_is_not_parabolic() {
        let d = CoxeterDiagram::from_edges(3, &[(1, 2, EdgeLabel::Parallel)]);
        assert_eq!(classify_diagram(&d), DiagramClass::Indefinite);
    }

    #[test]
    fn remove_node_examples() {
        let at2 = CoxeterMatrix::triangle(3, 3, 3).unwrap().diagram();
        for v in 0..3 {
            let r = remove_node(&at2, v).unwrap();
            assert_eq!(
                classify_diagram(&r),
                DiagramClass::Elliptic(vec!["A2".into()])
            );
        }
        let at1 = CoxeterDiagram::from_edges(2, &[(0, 1, EdgeLabel::Parallel)]);
        let r = remove_node(&at1, 1).unwrap();
        assert_eq!(r.nodes(), &[0]);
        assert_eq!(
            classify_diagram(&r),
            DiagramClass::Elliptic(vec!["A1".into()])
        );
        let u = at1.disjoint_union(&at2);
        assert_eq!(u.nodes(), &[0, 1, 2, 3, 4]);
        let r = remove_node(&u, 3).unwrap();
        assert_eq!(r.nodes(), &[0, 1, 2, 4]);
        let comps: Vec<String> = r
            .components()
            .iter()
            .map(|c| table_name(c).unwrap().0)
            .collect();
        assert_eq!(comps, vec!["Ã1", "A2"]);
        assert_eq!(classify_diagram(&r), DiagramClass::Indefinite);
        assert_eq!(remove_node(&u, 9), Err(DiagramError::UnknownNode(9)));
    }

    #[test]
    fn parabolic_union_enumeration() {
        let two = enumerate_parabolic_unions(2);
        assert_eq!(two.len(), 1);
        assert_eq!(names(&classify_diagram(&two[0])), vec!["Ã1"]);
        let three: Vec<Vec<String>> = enumerate_parabolic_unions(3)
            .iter()
            .map(|d| names(&classify_diagram(d)))
            .collect();
        assert_eq!(three.len(), 4);
        for want in ["Ã1", "Ã2", "C\u{303}2", "G\u{303}2"] {
            assert!(three.iter().any(|n| n == &vec![want.to_string()]), "{want}");
        }
        let four = enumerate_parabolic_unions(4);
        assert!(four
            .iter()
            .any(|d| names(&classify_diagram(d)) == vec!["Ã1", "Ã1"]));
    }

    #[test]
    fn tables_agree_with_signature() {
        for k in 3..=10 {
            for (name, d) in elliptic_table(k) {
                assert_eq!(
                    component_type_by_signature(&d),
                    ComponentType::Elliptic,
                    "{name}"
                );
                assert_eq!(
                    classify_diagram(&d),
                    DiagramClass::Elliptic(vec![name.clone()])
                );
            }
        }
        for k in 2..=10 {
            for (name, d) in parabolic_table(k) {
                assert_eq!(
                    component_type_by_signature(&d),
                    ComponentType::Parabolic,
                    "{name}"
                );
                assert_eq!(
                    classify_diagram(&d),
                    DiagramClass::ParabolicUnion(vec![name.clone()])
                );
            }
        }
        for m in 3..40 {
            let d = path(&[m]);
            assert!(classify_diagram(&d).is_elliptic());
        }
    }

    #[test]
    fn diagram_matrix_round_trip() {
        let m = CoxeterMatrix::from_codes(&[
            vec![1, 3, 0, 2],
            vec![3, 1, 5, 0],
            vec![0, 5, 1, 2],
            vec![2, 0, 2, 1],
        ])
        .unwrap()
        .with_weight(1, 3, -2.5)
        .unwrap();
        assert_eq!(m.diagram().to_matrix(), m);
    }

    #[test]
    fn text_art_lists_edges_and_isolated_nodes() {
        let m = CoxeterMatrix::from_codes(&[vec![1, 5, 2], vec![5, 1, 2], vec![2, 2, 1]]).unwrap();
        assert_eq!(m.diagram().text_art(), "0 --5-- 1\n2");
    }
}
