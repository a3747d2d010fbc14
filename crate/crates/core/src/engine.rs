//! Geometric representation of a Coxeter group, chamber enumeration and
//! fundamental chambers of reflection subgroups.
//!
//! Everything is expressed in the basis of simple roots `α_1..α_n`.  The
//! simple reflection `s_i` acts by `v ↦ v − 2B(α_i, v) α_i`.  A chamber is
//! named by the group element `w` carrying the base chamber `C` to it, and
//! `wC` lies on the positive side of a root `δ` iff `x0(w⁻¹δ) > 0`, where
//! `x0` is a fixed generic point of `C` seen as a functional on roots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::CoxeterMatrix;
use crate::geometry::{
    area2, dihedral_angle, has_finite_volume, realize_coxeter, AngleClass, GeometryError,
    Hyperplane, Polytope, Realization,
};
use crate::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("generator index {index} out of range for rank {rank}")]
    BadGenerator { index: usize, rank: usize },
    #[error("subgroup entry {entry} is not a reflection of the group")]
    NotAReflection { entry: usize },
    #[error("subgroup entry {entry} is not a root of the group")]
    NotARoot { entry: usize },
    #[error("subgroup has no reflections")]
    EmptySubgroup,
    #[error("reflections along roots {0:?} and {1:?} generate a non-discrete group (B = {2})")]
    NonDiscretePair(Vec<f64>, Vec<f64>, f64),
    #[error("dihedral closure grew past {0} roots")]
    BoundExceeded(usize),
    #[error("subgroup chamber did not close within {0} chambers")]
    IndexBoundExceeded(usize),
    #[error("canonical generator loop did not converge")]
    NoConvergence,
    #[error("some tile is not contained in the polytope")]
    TilesNotContained,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Search limits for chamber enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub max_depth: usize,
    /// Upper bound on the number of chambers (and so on the subgroup index).
    pub max_chambers: usize,
    pub tol: Tolerances,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_depth: 14,
            max_chambers: 4096,
            tol: Tolerances::default(),
        }
    }
}

/// Identity token: matrix entries rounded to `grid`.
pub fn element_key(m: &DMatrix<f64>, grid: f64) -> Vec<i64> {
    m.iter().map(|x| (x / grid).round() as i64).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub word: Vec<usize>,
    pub matrix: DMatrix<f64>,
    pub inverse: DMatrix<f64>,
    pub key: Vec<i64>,
}

/// A vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Root(pub DVector<f64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = DVector::zeros(rank);
        v[i] = 1.0;
        Root(v)
    }

    pub fn coords(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn height(&self) -> f64 {
        self.0.sum()
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.0.iter().all(|&x| x >= -tol) && self.0.iter().any(|&x| x > tol)
    }

    pub fn is_negative(&self, tol: f64) -> bool {
        self.0.iter().all(|&x| x <= tol) && self.0.iter().any(|&x| x < -tol)
    }

    /// The positive one of `±self`, if the coordinates have a common sign.
    pub fn positive_part(&self, tol: f64) -> Option<Root> {
        if self.is_positive(tol) {
            Some(self.clone())
        } else if self.is_negative(tol) {
            Some(Root(-&self.0))
        } else {
            None
        }
    }

    pub fn key(&self, grid: f64) -> Vec<i64> {
        self.0.iter().map(|x| (x / grid).round() as i64).collect()
    }
}

/// `B(a, b)` for the form `g`.
pub fn form(g: &DMatrix<f64>, a: &Root, b: &Root) -> f64 {
    (a.0.transpose() * g * &b.0)[(0, 0)]
}

/// `σ_β(γ) = γ − 2B(β,γ)β`.
pub fn reflect_root(g: &DMatrix<f64>, r: &Root, by: &Root) -> Root {
    Root(&r.0 - &by.0 * (2.0 * form(g, by, r)))
}

/// Coxeter group with cached representation data.
#[derive(Debug, Clone)]
pub struct Group {
    matrix: CoxeterMatrix,
    gram: DMatrix<f64>,
    gens: Vec<DMatrix<f64>>,
    probe: DVector<f64>,
    tol: Tolerances,
}

/// Generic interior point of the base chamber: `x0(α_i) = c_i` with
/// `c = (1, √2−1, √3−1, √5−2, …)`.
fn probe(rank: usize) -> DVector<f64> {
    let mut primes = Vec::new();
    let mut k = 2u32;
    while primes.len() + 1 < rank {
        if (2..k).all(|d| !k.is_multiple_of(d)) {
            primes.push(k);
        }
        k += 1;
    }
    DVector::from_fn(rank, |i, _| {
        if i == 0 {
            1.0
        } else {
            let s = (primes[i - 1] as f64).sqrt();
            s - s.floor()
        }
    })
}

impl Group {
    pub fn new(matrix: &CoxeterMatrix, tol: Tolerances) -> Group {
        let gram = matrix.gram().0;
        let gens = simple_reflection_matrices(&gram);
        Group {
            matrix: matrix.clone(),
            probe: probe(gram.nrows()),
            gram,
            gens,
            tol,
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn coxeter(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn generator(&self, i: usize) -> &DMatrix<f64> {
        &self.gens[i]
    }

    pub fn identity(&self) -> GroupElement {
        let m = DMatrix::identity(self.rank(), self.rank());
        GroupElement {
            word: Vec::new(),
            key: element_key(&m, self.tol.id),
            inverse: m.clone(),
            matrix: m,
        }
    }

    /// `w · s_i`.
    pub fn times_generator(&self, w: &GroupElement, i: usize) -> GroupElement {
        let matrix = &w.matrix * &self.gens[i];
        let mut word = w.word.clone();
        word.push(i);
        GroupElement {
            word,
            key: element_key(&matrix, self.tol.id),
            inverse: &self.gens[i] * &w.inverse,
            matrix,
        }
    }

    pub fn element(&self, word: &[usize]) -> Result<GroupElement, EngineError> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.rank() {
                return Err(EngineError::BadGenerator {
                    index: i,
                    rank: self.rank(),
                });
            }
            w = self.times_generator(&w, i);
        }
        Ok(w)
    }

    pub fn form(&self, a: &Root, b: &Root) -> f64 {
        form(&self.gram, a, b)
    }

    pub fn reflect(&self, r: &Root, by: &Root) -> Root {
        reflect_root(&self.gram, r, by)
    }

    /// Value of the probe point on a root.
    pub fn probe_value(&self, r: &DVector<f64>) -> f64 {
        self.probe.dot(r)
    }

    /// Whether `r` is a real root, by descending to a simple root.
    pub fn is_root(&self, r: &Root) -> bool {
        let tol = 1e-9;
        let Some(mut r) = r.positive_part(tol) else {
            return false;
        };
        if (self.form(&r, &r) - 1.0).abs() > 1e-7 {
            return false;
        }
        for _ in 0..10_000 {
            if r.0.iter().filter(|x| x.abs() > tol).count() == 1
                && r.0.iter().any(|x| (x - 1.0).abs() <= 1e-7)
            {
                return true;
            }
            let gr = &self.gram * &r.0;
            let Some(i) = (0..self.rank()).find(|&i| gr[i] > tol && r.0[i] > tol) else {
                return false;
            };
            let next = Root(
                &r.0 - DVector::from_fn(self.rank(), |k, _| if k == i { 2.0 * gr[i] } else { 0.0 }),
            );
            if !next.is_positive(1e-7) {
                return false;
            }
            r = next;
        }
        false
    }
}

fn simple_reflection_matrices(g: &DMatrix<f64>) -> Vec<DMatrix<f64>> {
    let n = g.nrows();
    (0..n)
        .map(|i| {
            let mut s = DMatrix::identity(n, n);
            for k in 0..n {
                s[(i, k)] -= 2.0 * g[(i, k)];
            }
            s
        })
        .collect()
}

/// Matrices of the simple reflections, with their one-letter words.
pub fn simple_reflections(m: &CoxeterMatrix) -> Vec<GroupElement> {
    let g = Group::new(m, Tolerances::default());
    (0..g.rank())
        .map(|i| g.times_generator(&g.identity(), i))
        .collect()
}

/// Chambers of the tiling near the base chamber.
#[derive(Debug, Clone)]
pub struct ChamberSet {
    pub elements: Vec<GroupElement>,
    /// `adjacency[c][i]`: chamber across wall `i` of chamber `c`, if present.
    pub adjacency: Vec<Vec<Option<usize>>>,
    /// Set when the chamber bound stopped the search early.
    pub truncated: bool,
    lookup: HashMap<Vec<i64>, usize>,
}

impl ChamberSet {
    fn new() -> Self {
        ChamberSet {
            elements: Vec::new(),
            adjacency: Vec::new(),
            truncated: false,
            lookup: HashMap::new(),
        }
    }

    fn insert(&mut self, e: GroupElement, rank: usize) -> usize {
        let id = self.elements.len();
        self.lookup.insert(e.key.clone(), id);
        self.elements.push(e);
        self.adjacency.push(vec![None; rank]);
        id
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn find(&self, key: &[i64]) -> Option<usize> {
        self.lookup.get(key).copied()
    }

    fn link(&mut self, group: &Group) {
        for c in 0..self.elements.len() {
            for i in 0..group.rank() {
                let n = group.times_generator(&self.elements[c], i);
                self.adjacency[c][i] = self.find(&n.key);
            }
        }
    }
}

/// All elements of word length at most `max_depth`, capped at `max_chambers`.
pub fn chamber_bfs(m: &CoxeterMatrix, max_depth: usize, max_chambers: usize) -> ChamberSet {
    group_chamber_bfs(
        &Group::new(m, Tolerances::default()),
        max_depth,
        max_chambers,
    )
}

pub fn group_chamber_bfs(group: &Group, max_depth: usize, max_chambers: usize) -> ChamberSet {
    let mut set = ChamberSet::new();
    set.insert(group.identity(), group.rank());
    let mut frontier = vec![0];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for &c in &frontier {
            for i in 0..group.rank() {
                let e = group.times_generator(&set.elements[c], i);
                if set.find(&e.key).is_some() {
                    continue;
                }
                if set.len() >= max_chambers {
                    set.truncated = true;
                    continue;
                }
                next.push(set.insert(e, group.rank()));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    set.link(group);
    set
}

/// One entry of a subgroup description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReflectionSpec {
    /// Word `i_1 … i_k` of a reflection, e.g. `w s_i w⁻¹`.
    Word(Vec<usize>),
    /// Root coordinates in the simple-root basis.
    Root(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub reflections: Vec<ReflectionSpec>,
}

impl SubgroupSpec {
    pub fn from_words(words: &[&[usize]]) -> Self {
        SubgroupSpec {
            reflections: words
                .iter()
                .map(|w| ReflectionSpec::Word(w.to_vec()))
                .collect(),
        }
    }

    pub fn from_roots(roots: &[Root]) -> Self {
        SubgroupSpec {
            reflections: roots
                .iter()
                .map(|r| ReflectionSpec::Root(r.coords().to_vec()))
                .collect(),
        }
    }
}

/// Positive unit root of a reflection matrix `M` (so `I − M` has rank one).
fn root_of_reflection(group: &Group, m: &DMatrix<f64>) -> Option<Root> {
    let n = group.rank();
    let id = DMatrix::<f64>::identity(n, n);
    if (m * m - &id).amax() > 1e-7 {
        return None;
    }
    let d = &id - m;
    if d.rank(1e-7) != 1 {
        return None;
    }
    let col =
        (0..n).max_by(|&a, &b| d.column(a).norm().partial_cmp(&d.column(b).norm()).unwrap())?;
    let v = Root(d.column(col).into_owned());
    let q = group.form(&v, &v);
    if q <= 1e-12 {
        return None;
    }
    Root(v.0 / q.sqrt()).positive_part(1e-7)
}

/// Positive unit roots of the subgroup's reflections, in input order.
pub fn spec_roots(group: &Group, h: &SubgroupSpec) -> Result<Vec<Root>, EngineError> {
    if h.reflections.is_empty() {
        return Err(EngineError::EmptySubgroup);
    }
    h.reflections
        .iter()
        .enumerate()
        .map(|(entry, r)| match r {
            ReflectionSpec::Word(w) => {
                let e = group.element(w)?;
                root_of_reflection(group, &e.matrix).ok_or(EngineError::NotAReflection { entry })
            }
            ReflectionSpec::Root(c) => {
                if c.len() != group.rank() {
                    return Err(EngineError::NotARoot { entry });
                }
                let r = Root(DVector::from_column_slice(c));
                let q = group.form(&r, &r);
                if q.is_nan() || q <= 1e-12 {
                    return Err(EngineError::NotARoot { entry });
                }
                let r = Root(r.0 / q.sqrt())
                    .positive_part(1e-9)
                    .ok_or(EngineError::NotARoot { entry })?;
                if group.is_root(&r) {
                    Ok(r)
                } else {
                    Err(EngineError::NotARoot { entry })
                }
            }
        })
        .collect()
}

/// Simple roots of a reflection subgroup; pairwise `B` is `−cos(π/m)` or `≤ −1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSystem {
    pub roots: Vec<Root>,
}

impl CanonicalSystem {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Sorted rounded coordinates; equal keys mean equal subgroups.
    pub fn key(&self, grid: f64) -> Vec<Vec<i64>> {
        let mut k: Vec<Vec<i64>> = self.roots.iter().map(|r| r.key(grid)).collect();
        k.sort();
        k
    }

    /// Gram matrix of the system.
    pub fn gram(&self, g: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.roots.len();
        DMatrix::from_fn(n, n, |i, j| form(g, &self.roots[i], &self.roots[j]))
    }
}

/// Whether `b` is an admissible product of two canonical generators.
pub fn admissible_pair(b: f64, tol: &Tolerances) -> bool {
    if b <= -1.0 + tol.geo {
        return true;
    }
    if b.abs() >= 1.0 {
        return false;
    }
    let phi = (-b).acos();
    let m = (PI / phi).round();
    m >= 2.0 && (phi - PI / m).abs() <= tol.ang
}

/// Smallest `m ≤ 1000` with `phi ≡ kπ/m`.
fn dihedral_order(phi: f64, tol: f64) -> Option<u32> {
    (2..=1000u32).find(|&m| {
        let k = (phi * m as f64 / PI).round();
        k >= 1.0 && (phi - k * PI / m as f64).abs() <= tol
    })
}

fn sort_dedupe(roots: &mut Vec<Root>, grid: f64) {
    roots.sort_by(|a, b| {
        a.coords()
            .partial_cmp(b.coords())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut seen = HashSet::new();
    roots.retain(|r| seen.insert(r.key(grid)));
}

/// Simple pair of the finite dihedral system spanned by `beta`, `gamma`.
fn finite_simple_pair(
    group: &Group,
    beta: &Root,
    gamma: &Root,
    order: u32,
    limit: usize,
) -> Result<(Root, Root), EngineError> {
    let grid = group.tol.id;
    let mut all = vec![beta.clone(), gamma.clone()];
    let mut seen: HashSet<Vec<i64>> = all.iter().map(|r| r.key(grid)).collect();
    let mut k = 0;
    while k < all.len() {
        for by in [beta, gamma] {
            let r = group.reflect(&all[k], by);
            if seen.insert(r.key(grid)) {
                all.push(r);
                if all.len() > limit {
                    return Err(EngineError::BoundExceeded(limit));
                }
            }
        }
        k += 1;
    }
    let pos: Vec<Root> = all.into_iter().filter(|r| r.is_positive(1e-9)).collect();
    let target = -(PI / order as f64).cos();
    for a in 0..pos.len() {
        for b in (a + 1)..pos.len() {
            if (group.form(&pos[a], &pos[b]) - target).abs() <= 1e-7 {
                return Ok((pos[a].clone(), pos[b].clone()));
            }
        }
    }
    Err(EngineError::NonDiscretePair(
        beta.coords().to_vec(),
        gamma.coords().to_vec(),
        group.form(beta, gamma),
    ))
}

/// One descent step for a pair whose mirrors do not meet with `B ≥ 1`.
fn infinite_step(group: &Group, beta: &Root, gamma: &Root) -> Result<(Root, Root), EngineError> {
    let bad = || {
        EngineError::NonDiscretePair(
            beta.coords().to_vec(),
            gamma.coords().to_vec(),
            group.form(beta, gamma),
        )
    };
    let g1 = group
        .reflect(gamma, beta)
        .positive_part(1e-7)
        .ok_or_else(bad)?;
    let b1 = group
        .reflect(beta, gamma)
        .positive_part(1e-7)
        .ok_or_else(bad)?;
    let h1 = beta.height() + g1.height();
    let h2 = b1.height() + gamma.height();
    Ok(if h1 <= h2 {
        (beta.clone(), g1)
    } else {
        (b1, gamma.clone())
    })
}

pub fn canonical_generators(
    m: &CoxeterMatrix,
    h: &SubgroupSpec,
) -> Result<CanonicalSystem, EngineError> {
    let group = Group::new(m, Tolerances::default());
    group_canonical_generators(&group, h)
}

pub fn group_canonical_generators(
    group: &Group,
    h: &SubgroupSpec,
) -> Result<CanonicalSystem, EngineError> {
    let roots = spec_roots(group, h)?;
    canonical_from_roots(group, roots)
}

/// Rank-2 replacement loop on a set of positive unit roots.
pub fn canonical_from_roots(
    group: &Group,
    mut roots: Vec<Root>,
) -> Result<CanonicalSystem, EngineError> {
    let tol = group.tol;
    let limit = 2 * (group.matrix.max_finite_label().max(2) as usize);
    sort_dedupe(&mut roots, tol.id);
    for _ in 0..100_000 {
        let violating = (0..roots.len())
            .flat_map(|a| ((a + 1)..roots.len()).map(move |b| (a, b)))
            .find(|&(a, b)| !admissible_pair(group.form(&roots[a], &roots[b]), &tol));
        let Some((a, b)) = violating else {
            return Ok(CanonicalSystem { roots });
        };
        let (beta, gamma) = (&roots[a], &roots[b]);
        let bv = group.form(beta, gamma);
        let (x, y) = if bv >= 1.0 - tol.geo {
            infinite_step(group, beta, gamma)?
        } else {
            let order = dihedral_order((-bv).acos(), tol.ang).ok_or_else(|| {
                EngineError::NonDiscretePair(beta.coords().to_vec(), gamma.coords().to_vec(), bv)
            })?;
            finite_simple_pair(group, beta, gamma, order, limit)?
        };
        roots[a] = x;
        roots[b] = y;
        sort_dedupe(&mut roots, tol.id);
    }
    Err(EngineError::NoConvergence)
}

/// Chamber of a reflection subgroup that contains the base chamber.
#[derive(Debug, Clone)]
pub struct SubgroupChamber {
    pub system: CanonicalSystem,
    /// Chambers of the group inside the subgroup chamber.
    pub chambers: ChamberSet,
    pub index: usize,
    /// Number of distinct walls separating inside chambers from outside ones.
    pub facet_count: usize,
    /// Those walls as positive roots, sorted.
    pub walls: Vec<Root>,
}

pub fn subgroup_chamber(
    m: &CoxeterMatrix,
    h: &SubgroupSpec,
    bounds: &Bounds,
) -> Result<SubgroupChamber, EngineError> {
    let group = Group::new(m, bounds.tol);
    let system = group_canonical_generators(&group, h)?;
    chamber_of_system(&group, system, bounds.max_chambers)
}

/// Breadth-first search over the chambers on the positive side of every root
/// of `system`, starting from the base chamber.
pub fn chamber_of_system(
    group: &Group,
    system: CanonicalSystem,
    max_chambers: usize,
) -> Result<SubgroupChamber, EngineError> {
    let grid = group.tol.id;
    let inside = |inv: &DMatrix<f64>| {
        system
            .roots
            .iter()
            .all(|d| group.probe_value(&(inv * &d.0)) > 0.0)
    };
    let mut set = ChamberSet::new();
    set.insert(group.identity(), group.rank());
    let mut walls: Vec<Root> = Vec::new();
    let mut wall_keys = HashSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for i in 0..group.rank() {
            let e = group.times_generator(&set.elements[c], i);
            if let Some(id) = set.find(&e.key) {
                set.adjacency[c][i] = Some(id);
                continue;
            }
            if inside(&e.inverse) {
                if set.len() >= max_chambers {
                    return Err(EngineError::IndexBoundExceeded(max_chambers));
                }
                let id = set.insert(e, group.rank());
                set.adjacency[c][i] = Some(id);
                queue.push_back(id);
            } else {
                let w = Root(set.elements[c].matrix.column(i).into_owned());
                let w = w.positive_part(1e-7).unwrap_or(w);
                if wall_keys.insert(w.key(grid)) {
                    walls.push(w);
                }
            }
        }
    }
    set.link(group);
    sort_dedupe(&mut walls, grid);
    Ok(SubgroupChamber {
        index: set.len(),
        facet_count: walls.len(),
        system,
        chambers: set,
        walls,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    #[serde(rename = "k_F")]
    pub k_f: usize,
    #[serde(rename = "k_P")]
    pub k_p: usize,
    pub index: usize,
    pub finite_volume: bool,
    pub holds: bool,
}

/// Polytope bounded by the mirrors of `roots`, on their positive sides.
pub fn roots_polytope(r: &Realization, roots: &[Root]) -> Result<Polytope, GeometryError> {
    let hs = roots
        .iter()
        .map(|d| r.root_hyperplane(d.coords()))
        .collect::<Result<Vec<_>, _>>()?;
    Polytope::new(hs, *r.polytope.tolerances())
}

/// Finite volume of the chamber bounded by `roots`.
pub fn chamber_finite_volume(group: &Group, roots: &[Root]) -> Result<bool, EngineError> {
    let sig = crate::diagrams::signature_with(&group.gram, crate::diagrams::TAU_SIG);
    if sig.negative == 0 && sig.zero == 0 {
        return Ok(true);
    }
    let r = realize_coxeter(&group.matrix, &group.tol)?;
    let p = roots_polytope(&r, roots)?;
    Ok(has_finite_volume(&p)?)
}

pub fn theorem_check(
    m: &CoxeterMatrix,
    h: &SubgroupSpec,
    bounds: &Bounds,
) -> Result<TheoremVerdict, EngineError> {
    let group = Group::new(m, bounds.tol);
    let ch = chamber_of_system(
        &group,
        group_canonical_generators(&group, h)?,
        bounds.max_chambers,
    )?;
    verdict_for(&group, &ch)
}

pub fn verdict_for(group: &Group, ch: &SubgroupChamber) -> Result<TheoremVerdict, EngineError> {
    let k_f = group.rank();
    let k_p = ch.facet_count;
    Ok(TheoremVerdict {
        k_f,
        k_p,
        index: ch.index,
        finite_volume: chamber_finite_volume(group, &ch.system.roots)?,
        holds: k_p >= k_f,
    })
}

/// Geometric tiles of a chamber set in a realization of the group.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub realization: Realization,
    pub tiles: Vec<Polytope>,
    /// `(a, b, wall)` for tiles `a < b` sharing the wall.
    pub shared_walls: Vec<(usize, usize, Hyperplane)>,
}

pub fn decompose(
    m: &CoxeterMatrix,
    chambers: &ChamberSet,
    tol: &Tolerances,
) -> Result<Decomposition, EngineError> {
    let realization = realize_coxeter(m, tol)?;
    decompose_in(&realization, chambers)
}

pub fn decompose_in(
    realization: &Realization,
    chambers: &ChamberSet,
) -> Result<Decomposition, EngineError> {
    let rank = realization.walls.len();
    let wall = |c: usize, i: usize| {
        let col: Vec<f64> = chambers.elements[c]
            .matrix
            .column(i)
            .iter()
            .copied()
            .collect();
        realization.root_hyperplane(&col)
    };
    let mut tiles = Vec::new();
    let mut shared = Vec::new();
    for c in 0..chambers.len() {
        let hs = (0..rank)
            .map(|i| wall(c, i))
            .collect::<Result<Vec<_>, _>>()?;
        tiles.push(Polytope::new(hs, *realization.polytope.tolerances())?);
        for i in 0..rank {
            if let Some(d) = chambers.adjacency[c][i] {
                if c < d {
                    shared.push((c, d, wall(c, i)?));
                }
            }
        }
    }
    Ok(Decomposition {
        realization: realization.clone(),
        tiles,
        shared_walls: shared,
    })
}

fn tile_points(p: &Polytope) -> Vec<DVector<f64>> {
    p.all_vertices().iter().map(|v| v.point.clone()).collect()
}

fn tiles_inside(p: &Polytope, d: &Decomposition) -> bool {
    d.tiles
        .iter()
        .all(|t| tile_points(t).iter().all(|x| p.contains_point(x)))
}

/// Tile walls not supporting a facet of `p`.
pub fn mirrors_of_decomposition(
    p: &Polytope,
    d: &Decomposition,
) -> Result<Vec<Hyperplane>, EngineError> {
    if !tiles_inside(p, d) {
        return Err(EngineError::TilesNotContained);
    }
    let tol = 1e-7;
    let mut out: Vec<Hyperplane> = Vec::new();
    for t in &d.tiles {
        for h in t.facets() {
            if p.facets().iter().any(|f| f.same_locus(h, tol))
                || out.iter().any(|o| o.same_locus(h, tol))
            {
                continue;
            }
            out.push(h.clone());
        }
    }
    Ok(out)
}

/// Per vertex of `p`: true when no mirror passes through it.
pub fn fundamental_angles(p: &Polytope, mirrors: &[Hyperplane]) -> Vec<bool> {
    let tol = p.tolerances().geo.max(1e-9) * 100.0;
    p.all_vertices()
        .iter()
        .map(|v| mirrors.iter().all(|m| m.eval(&v.point).abs() > tol))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub tiles: usize,
    /// (a) tiles congruent to the fundamental polytope.
    pub congruent: bool,
    /// (a) tiles pairwise interior-disjoint.
    pub disjoint: bool,
    /// (b) tiles contained in the polytope and areas adding up.
    pub covers: bool,
    /// (c) tiles across a shared wall are mirror images.
    pub symmetric: bool,
    pub area_residual: Option<f64>,
    pub failures: Vec<String>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.congruent && self.disjoint && self.covers && self.symmetric
    }
}

fn sorted_angles(p: &Polytope) -> Vec<f64> {
    let mut a: Vec<f64> = p
        .dihedral_angles()
        .into_iter()
        .filter_map(|(_, a)| match a {
            AngleClass::Intersecting(t) => Some(t),
            _ => None,
        })
        .collect();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    a
}

/// Separating-line test: some facet of one tile leaves the other on its
/// non-positive side.
fn separated(a: &Polytope, b: &Polytope, tol: f64) -> bool {
    let one_way = |x: &Polytope, y: &Polytope| {
        let pts = tile_points(y);
        !pts.is_empty()
            && x.facets()
                .iter()
                .any(|h| pts.iter().all(|q| h.eval(q) <= tol))
    };
    one_way(a, b) || one_way(b, a)
}

fn same_point_sets(a: &[DVector<f64>], b: &[DVector<f64>], tol: f64) -> bool {
    let chart = |x: &DVector<f64>| {
        let n = x.len() - 1;
        DVector::from_fn(n, |i, _| x[i] / x[n])
    };
    a.len() == b.len()
        && a.iter()
            .all(|x| b.iter().any(|y| (chart(x) - chart(y)).amax() <= tol))
}

pub fn verify_decomposition(p: &Polytope, f: &Polytope, d: &Decomposition) -> DecompositionReport {
    let mut r = DecompositionReport {
        tiles: d.tiles.len(),
        congruent: true,
        disjoint: true,
        covers: true,
        symmetric: true,
        ..Default::default()
    };
    let area_f = area2(f).ok();
    let angles_f = sorted_angles(f);
    for (k, t) in d.tiles.iter().enumerate() {
        let angles = sorted_angles(t);
        let same_angles = angles.len() == angles_f.len()
            && angles
                .iter()
                .zip(&angles_f)
                .all(|(a, b)| (a - b).abs() <= 1e-7);
        let same_area = match (area2(t).ok(), area_f) {
            (Some(a), Some(b)) => (a - b).abs() <= 1e-9,
            (None, None) => t.facet_count() == f.facet_count(),
            _ => false,
        };
        if !(same_angles && same_area) {
            r.congruent = false;
            r.failures
                .push(format!("(a) tile {k} is not congruent to F"));
        }
    }
    for a in 0..d.tiles.len() {
        for b in (a + 1)..d.tiles.len() {
            if !separated(&d.tiles[a], &d.tiles[b], 1e-9) {
                r.disjoint = false;
                r.failures.push(format!("(a) tiles {a} and {b} overlap"));
            }
        }
    }
    for (k, t) in d.tiles.iter().enumerate() {
        if !tile_points(t).iter().all(|x| p.contains_point(x)) {
            r.covers = false;
            r.failures.push(format!("(b) tile {k} leaves P"));
        }
    }
    if let (Ok(total), Some(af)) = (area2(p), area_f) {
        let residual = (total - af * d.tiles.len() as f64).abs();
        r.area_residual = Some(residual);
        if residual > 1e-9 {
            r.covers = false;
            r.failures.push(format!("(b) area residual {residual:e}"));
        }
    }
    for (a, b, wall) in &d.shared_walls {
        let img: Vec<DVector<f64>> = tile_points(&d.tiles[*a])
            .iter()
            .map(|x| wall.reflect(x))
            .collect();
        if !same_point_sets(&img, &tile_points(&d.tiles[*b]), 1e-7) {
            r.symmetric = false;
            r.failures
                .push(format!("(c) tiles {a} and {b} are not mirror images"));
        }
    }
    r
}

/// Area of the subgroup chamber against `index · area(F)`, when both are finite.
pub fn area_residual(
    m: &CoxeterMatrix,
    ch: &SubgroupChamber,
    tol: &Tolerances,
) -> Result<f64, EngineError> {
    let r = realize_coxeter(m, tol)?;
    let p = roots_polytope(&r, &ch.system.roots)?;
    let af = area2(&r.polytope)?;
    let ap = area2(&p)?;
    Ok((ap - ch.index as f64 * af).abs())
}

/// Angle between two hyperplanes as a multiple of π, when they intersect.
pub fn angle_over_pi(a: &Hyperplane, b: &Hyperplane, tol: &Tolerances) -> Option<f64> {
    match dihedral_angle(a, b, tol).ok()? {
        AngleClass::Intersecting(t) => Some(t / PI),
        _ => None,
    }
}
