//! Property suites: subgroup corpus enumeration with facet-count verdicts,
//! splitting-line grids over polygons, exhaustive diagram checks and the
//! strip counterexample.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use nalgebra::DVector;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{
    classify_diagram, elliptic_table, enumerate_parabolic_unions, remove_node, CoxeterDiagram,
    CoxeterMatrix, DiagramClass, EdgeLabel,
};
use crate::engine::{
    area_residual, canonical_from_roots, chamber_of_system, group_chamber_bfs, verdict_for, Bounds,
    CanonicalSystem, EngineError, Group, Root, SubgroupSpec, TheoremVerdict,
};
use crate::geometry::{
    andreev_verify, area2, is_acute_angled, is_coxeter_polytope, lambert_quadrilateral,
    realize_coxeter, realize_triangle, rectangle, right_angled_pentagon, split_by_hyperplane,
    strip, Hyperplane, Polytope, SpaceKind,
};
use crate::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub case: String,
    pub detail: String,
    /// Enough input to reproduce the case.
    pub input: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub violations: Vec<Violation>,
    /// Failures of the conclusion where a hypothesis (finite volume) is known
    /// to be missing.
    pub expected_counterexamples: Vec<Violation>,
    pub skipped: usize,
    /// Cases in which the hypotheses of the tested statement held.
    pub hypothesis_cases: usize,
    /// Side checks not counted in `cases`.
    pub auxiliary_cases: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<CorpusEntry>,
    pub wall_clock_ms: u64,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Groups and bounds for the subgroup enumeration.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub groups: Vec<(String, CoxeterMatrix)>,
    pub max_depth: usize,
    pub max_index: usize,
    pub tol: Tolerances,
}

impl Default for Corpus {
    fn default() -> Self {
        let groups = [
            (3, 3, 3),
            (2, 4, 4),
            (2, 3, 6),
            (2, 3, 7),
            (2, 3, 8),
            (2, 4, 5),
        ]
        .iter()
        .map(|&(p, q, r)| {
            (
                format!("({p},{q},{r})"),
                CoxeterMatrix::triangle(p, q, r).expect("valid triangle"),
            )
        })
        .collect();
        Corpus {
            groups,
            max_depth: 8,
            max_index: 48,
            tol: Tolerances::default(),
        }
    }
}

/// One distinct finite-index subgroup found by the enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub group: String,
    /// Canonical generators in the simple-root basis.
    pub roots: Vec<Vec<f64>>,
    pub verdict: TheoremVerdict,
    /// Size of the canonical system.
    pub canonical_count: usize,
    pub area_residual: Option<f64>,
}

fn root_coords(r: &Root) -> Vec<f64> {
    r.coords().iter().map(|x| x + 0.0).collect()
}

/// Positive roots `w(α_i)` for `|w| ≤ depth`.
fn reflections_up_to(group: &Group, depth: usize) -> Vec<Root> {
    let set = group_chamber_bfs(group, depth, usize::MAX);
    let grid = group.tolerances().id;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in &set.elements {
        for i in 0..group.rank() {
            let r = Root(e.matrix.column(i).into_owned());
            if let Some(r) = r.positive_part(1e-7) {
                if seen.insert(r.key(grid)) {
                    out.push(r);
                }
            }
        }
    }
    out.sort_by(|a, b| a.coords().partial_cmp(b.coords()).unwrap());
    out
}

/// Distinct canonical systems of subgroups generated by at most `max_gens`
/// of the given reflections.  Also returns how many generating sets failed.
fn subgroup_systems(
    group: &Group,
    reflections: &[Root],
    max_gens: usize,
) -> (Vec<CanonicalSystem>, usize) {
    let grid = group.tolerances().id;
    let mut all: BTreeMap<Vec<Vec<i64>>, CanonicalSystem> = BTreeMap::new();
    let mut frontier: Vec<CanonicalSystem> = Vec::new();
    for r in reflections {
        let s = CanonicalSystem {
            roots: vec![r.clone()],
        };
        if all.insert(s.key(grid), s.clone()).is_none() {
            frontier.push(s);
        }
    }
    let mut failed = 0;
    for _ in 1..max_gens {
        let results: Vec<Result<CanonicalSystem, EngineError>> = frontier
            .par_iter()
            .flat_map_iter(|s| {
                reflections.iter().filter_map(move |r| {
                    let k = r.key(grid);
                    if s.roots.iter().any(|x| x.key(grid) == k) {
                        return None;
                    }
                    let mut roots = s.roots.clone();
                    roots.push(r.clone());
                    Some(canonical_from_roots(group, roots))
                })
            })
            .collect();
        let mut next = Vec::new();
        for res in results {
            match res {
                Ok(s) => {
                    if all.insert(s.key(grid), s.clone()).is_none() {
                        next.push(s);
                    }
                }
                Err(_) => failed += 1,
            }
        }
        frontier = next;
    }
    (all.into_values().collect(), failed)
}

/// Facet-count property over all finite-index reflection subgroups generated
/// by up to four reflections `w s_i w⁻¹` with `|w| ≤ max_depth / 2`.
pub fn enumerate_and_verify(c: &Corpus) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("theorem");
    for (name, m) in &c.groups {
        let group = Group::new(m, c.tol);
        let refl = reflections_up_to(&group, c.max_depth / 2);
        let (systems, failed) = subgroup_systems(&group, &refl, 4);
        report.skipped += failed;
        let outcomes: Vec<Result<Option<CorpusEntry>, Violation>> = systems
            .par_iter()
            .map(|s| check_system(name, m, &group, s, c))
            .collect();
        for o in outcomes {
            match o {
                Ok(Some(e)) => {
                    if e.verdict.finite_volume {
                        report.cases += 1;
                        if !e.verdict.holds {
                            report.violations.push(Violation {
                                case: format!("{name} {:?}", e.roots),
                                detail: format!(
                                    "k_P = {} < k_F = {}",
                                    e.verdict.k_p, e.verdict.k_f
                                ),
                                input: serde_json::to_value(&e).unwrap_or_default(),
                            });
                        }
                    } else if !e.verdict.holds {
                        report.expected_counterexamples.push(Violation {
                            case: format!("{name} {:?}", e.roots),
                            detail: "infinite volume".into(),
                            input: serde_json::to_value(&e).unwrap_or_default(),
                        });
                    }
                    report.entries.push(e);
                }
                Ok(None) => report.skipped += 1,
                Err(v) => report.violations.push(v),
            }
        }
    }
    report.hypothesis_cases = report.cases;
    report.wall_clock_ms = start.elapsed().as_millis() as u64;
    report
}

fn check_system(
    name: &str,
    m: &CoxeterMatrix,
    group: &Group,
    s: &CanonicalSystem,
    c: &Corpus,
) -> Result<Option<CorpusEntry>, Violation> {
    let roots: Vec<Vec<f64>> = s.roots.iter().map(root_coords).collect();
    let fail = |detail: String| Violation {
        case: format!("{name} {roots:?}"),
        detail,
        input: serde_json::json!({
            "group": m.to_document(),
            "subgroup": SubgroupSpec::from_roots(&s.roots),
        }),
    };
    let ch = match chamber_of_system(group, s.clone(), c.max_index) {
        Ok(ch) => ch,
        Err(EngineError::IndexBoundExceeded(_)) => return Ok(None),
        Err(e) => return Err(fail(e.to_string())),
    };
    let grid = c.tol.id;
    let wall_keys: Vec<Vec<i64>> = ch.walls.iter().map(|w| w.key(grid)).collect();
    if ch.facet_count != s.len() || wall_keys != s.key(grid) {
        return Err(fail(format!(
            "canonical system has {} roots, chamber has {} walls",
            s.len(),
            ch.facet_count
        )));
    }
    let verdict = verdict_for(group, &ch).map_err(|e| fail(e.to_string()))?;
    let residual = if verdict.finite_volume {
        let r = area_residual(m, &ch, &c.tol).map_err(|e| fail(e.to_string()))?;
        if r > 1e-9 {
            return Err(fail(format!("area residual {r:e}")));
        }
        Some(r)
    } else {
        None
    };
    Ok(Some(CorpusEntry {
        group: name.to_string(),
        roots,
        verdict,
        canonical_count: s.len(),
        area_residual: residual,
    }))
}

// ---------------------------------------------------------------------------
// Splitting-line grids

/// Named polygons used by the splitting suites.
pub fn corpus_polygons(tol: Tolerances) -> Vec<(String, Polytope)> {
    let mut out = Vec::new();
    for (name, m) in Corpus::default().groups {
        if let Ok(p) = realize_triangle(&m) {
            out.push((format!("triangle {name}"), p));
        }
    }
    out.push(("unit square".into(), rectangle(1.0, 1.0, tol)));
    out.push(("rectangle 2x1".into(), rectangle(2.0, 1.0, tol)));
    out.push(("right-angled pentagon".into(), right_angled_pentagon(tol)));
    out.push(("quadrilateral (2,2,2,3)".into(), lambert_quadrilateral(tol)));
    out.push(("strip".into(), strip(tol)));
    out
}

type ChartPoint = [f64; 2];

/// Portion of facet `i` inside the polygon, clipped to a window (Euclidean)
/// or slightly inside the unit disk (hyperbolic), in chart coordinates.
fn facet_segment(p: &Polytope, i: usize, window: f64) -> Option<(ChartPoint, ChartPoint)> {
    let f = p.facets()[i].covector();
    let nn = f[0] * f[0] + f[1] * f[1];
    let p0 = [-f[2] * f[0] / nn, -f[2] * f[1] / nn];
    let d = [-f[1] / nn.sqrt(), f[0] / nn.sqrt()];
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (j, h) in p.facets().iter().enumerate() {
        if j == i {
            continue;
        }
        let g = h.covector();
        let a = g[0] * p0[0] + g[1] * p0[1] + g[2];
        let b = g[0] * d[0] + g[1] * d[1];
        if b.abs() < 1e-14 {
            if a < -1e-12 {
                return None;
            }
        } else if b > 0.0 {
            lo = lo.max(-a / b);
        } else {
            hi = hi.min(-a / b);
        }
    }
    match p.space().kind {
        SpaceKind::Euclidean => {
            let c = p0[0] * d[0] + p0[1] * d[1];
            lo = lo.max(-c - window);
            hi = hi.min(-c + window);
        }
        SpaceKind::Hyperbolic => {
            let r2 = 1.0 - 1e-6;
            let b = p0[0] * d[0] + p0[1] * d[1];
            let cc = p0[0] * p0[0] + p0[1] * p0[1] - r2;
            let disc = b * b - cc;
            if disc <= 0.0 {
                return None;
            }
            lo = lo.max(-b - disc.sqrt());
            hi = hi.min(-b + disc.sqrt());
        }
    }
    (hi > lo + 1e-9).then(|| {
        (
            [p0[0] + lo * d[0], p0[1] + lo * d[1]],
            [p0[0] + hi * d[0], p0[1] + hi * d[1]],
        )
    })
}

/// Deterministic grid of cutting lines through pairs of boundary samples on
/// different facets.
pub fn splitting_lines(p: &Polytope, samples_per_edge: usize) -> Vec<Hyperplane> {
    let window = 2.0
        * p.all_vertices()
            .iter()
            .flat_map(|v| v.chart())
            .fold(1.0f64, |m, x| m.max(x.abs()));
    let mut pts: Vec<(usize, ChartPoint)> = Vec::new();
    for i in 0..p.facet_count() {
        if let Some((a, b)) = facet_segment(p, i, window) {
            for k in 0..samples_per_edge {
                let t = k as f64 / (samples_per_edge - 1).max(1) as f64;
                pts.push((i, [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]));
            }
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..pts.len() {
        for b in (a + 1)..pts.len() {
            let ((fa, x), (fb, y)) = (pts[a], pts[b]);
            if fa == fb {
                continue;
            }
            let c = [x[1] - y[1], y[0] - x[0], x[0] * y[1] - x[1] * y[0]];
            let n = (c[0] * c[0] + c[1] * c[1]).sqrt();
            if n < 1e-9 {
                continue;
            }
            let mut c = [c[0] / n, c[1] / n, c[2] / n];
            if c[0] < -1e-12 || (c[0].abs() <= 1e-12 && c[1] < 0.0) {
                c = [-c[0], -c[1], -c[2]];
            }
            let key: Vec<i64> = c.iter().map(|v| (v * 1e8).round() as i64).collect();
            if !seen.insert(key) {
                continue;
            }
            let cov = DVector::from_vec(c.to_vec());
            if let Ok(h) = Hyperplane::from_covector(p.space().kind, &cov) {
                out.push(h);
            }
        }
    }
    out
}

fn line_doc(h: &Hyperplane) -> serde_json::Value {
    serde_json::json!({ "covector": h.covector().as_slice() })
}

/// Splitting grids: both parts with more than `k` facets force the
/// line through every facet interior; a Coxeter part with such a line leaves
/// the whole polygon Coxeter; facet counts and areas add up.
pub fn lemma1_suite(polygons: &[(String, Polytope)]) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("lemma1");
    let per: Vec<SuiteReport> = polygons
        .par_iter()
        .map(|(name, p)| {
            let mut r = SuiteReport::new("lemma1");
            let k = p.facet_count();
            let area_p = area2(p).ok();
            for line in splitting_lines(p, 24) {
                let Ok(s) = split_by_hyperplane(p, &line) else {
                    r.skipped += 1;
                    continue;
                };
                r.cases += 1;
                let (k1, k2) = (s.first.facet_count(), s.second.facet_count());
                let mut bad = Vec::new();
                if k1 > k && k2 > k {
                    r.hypothesis_cases += 1;
                    if !s.meets_every_facet_interior {
                        bad.push("both parts exceed k facets but a facet interior is missed");
                    }
                }
                if s.meets_every_facet_interior
                    && is_coxeter_polytope(&s.first)
                    && !is_coxeter_polytope(p)
                {
                    bad.push("Coxeter part with a full-crossing line but P is not Coxeter");
                }
                if k1 + k2 > k + 2 * s.facets_met + 2 {
                    bad.push("facet count of the parts too large");
                }
                if let Some(a) = area_p {
                    match (area2(&s.first), area2(&s.second)) {
                        (Ok(a1), Ok(a2)) if (a - a1 - a2).abs() <= 1e-9 => {}
                        _ => bad.push("areas do not add up"),
                    }
                }
                for b in bad {
                    r.violations.push(Violation {
                        case: name.clone(),
                        detail: b.into(),
                        input: line_doc(&line),
                    });
                }
            }
            r
        })
        .collect();
    for r in per {
        merge(&mut report, r);
    }
    report.wall_clock_ms = start.elapsed().as_millis() as u64;
    report
}

/// Splitting grids: a line meeting every facet interior and no
/// vertex leaves neither part acute-angled, for finite-volume polygons.
pub fn lemma3_suite(polygons: &[(String, Polytope)]) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("lemma3");
    let per: Vec<SuiteReport> = polygons
        .par_iter()
        .map(|(name, p)| {
            let mut r = SuiteReport::new("lemma3");
            for line in splitting_lines(p, 24) {
                let Ok(s) = split_by_hyperplane(p, &line) else {
                    r.skipped += 1;
                    continue;
                };
                r.cases += 1;
                if !(s.meets_every_facet_interior && !s.contains_vertex) {
                    continue;
                }
                r.hypothesis_cases += 1;
                if is_acute_angled(&s.first) || is_acute_angled(&s.second) {
                    let v = Violation {
                        case: name.clone(),
                        detail: "an acute-angled part".into(),
                        input: line_doc(&line),
                    };
                    if p.finite_volume() {
                        r.violations.push(v);
                    } else {
                        r.expected_counterexamples.push(v);
                    }
                }
            }
            r
        })
        .collect();
    for r in per {
        merge(&mut report, r);
    }
    report.wall_clock_ms = start.elapsed().as_millis() as u64;
    report
}

fn merge(into: &mut SuiteReport, r: SuiteReport) {
    into.cases += r.cases;
    into.skipped += r.skipped;
    into.hypothesis_cases += r.hypothesis_cases;
    into.auxiliary_cases += r.auxiliary_cases;
    into.violations.extend(r.violations);
    into.expected_counterexamples
        .extend(r.expected_counterexamples);
    into.entries.extend(r.entries);
}

fn rank2_elliptic(m: u32) -> CoxeterDiagram {
    if m == 2 {
        CoxeterDiagram::from_edges(2, &[])
    } else {
        CoxeterDiagram::from_edges(2, &[(0, 1, EdgeLabel::Order(m))])
    }
}

/// Removing a node from a union of connected parabolic diagrams never leaves a
/// union of connected parabolic diagrams; removing one from an elliptic
/// diagram leaves an elliptic one.
pub fn lemma2_suite(max_rank: usize) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("lemma2");
    for d in enumerate_parabolic_unions(max_rank) {
        for &v in d.nodes() {
            report.cases += 1;
            let rest = remove_node(&d, v).expect("node of d");
            if rest.is_empty() {
                continue;
            }
            if let DiagramClass::ParabolicUnion(names) = classify_diagram(&rest) {
                report.violations.push(Violation {
                    case: d.text_art(),
                    detail: format!("removing node {v} leaves parabolic {names:?}"),
                    input: serde_json::json!({ "matrix": d.to_matrix().to_document(), "node": v }),
                });
            }
        }
    }
    let mut elliptic: Vec<CoxeterDiagram> = vec![CoxeterDiagram::from_edges(1, &[])];
    elliptic.extend((2..=12).map(rank2_elliptic));
    for k in 3..=max_rank {
        elliptic.extend(elliptic_table(k).into_iter().map(|(_, d)| d));
    }
    for d in elliptic {
        for &v in d.nodes() {
            report.auxiliary_cases += 1;
            let rest = remove_node(&d, v).expect("node of d");
            if !rest.is_empty() && !classify_diagram(&rest).is_elliptic() {
                report.violations.push(Violation {
                    case: d.text_art(),
                    detail: format!("removing node {v} from an elliptic diagram"),
                    input: serde_json::json!({ "matrix": d.to_matrix().to_document(), "node": v }),
                });
            }
        }
    }
    report.wall_clock_ms = start.elapsed().as_millis() as u64;
    report
}

/// Half-strip group with the strip subgroup (Euclidean and hyperbolic), plus a
/// finite rectangle as a sanity check.
pub fn remark2_regression() -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("remark2");
    let tol = Tolerances::default();
    let bounds = Bounds::default();
    let half = CoxeterMatrix::from_codes(&[vec![1, 2, 2], vec![2, 1, 0], vec![2, 0, 1]])
        .expect("valid matrix");
    let cosh1 = 1f64.cosh();
    let cases: Vec<(&str, CoxeterMatrix, SubgroupSpec, bool)> = vec![
        (
            "E2 strip",
            half.clone(),
            SubgroupSpec::from_words(&[&[1], &[2]]),
            false,
        ),
        (
            "H2 divergent pair",
            half.with_weight(1, 2, -cosh1).expect("valid weight"),
            SubgroupSpec::from_words(&[&[1], &[2]]),
            false,
        ),
        (
            "rectangle",
            CoxeterMatrix::from_codes(&[
                vec![1, 0, 2, 2],
                vec![0, 1, 2, 2],
                vec![2, 2, 1, 0],
                vec![2, 2, 0, 1],
            ])
            .expect("valid matrix"),
            SubgroupSpec::from_words(&[&[0], &[2], &[3], &[1, 0, 1]]),
            true,
        ),
    ];
    for (name, m, h, finite) in cases {
        report.cases += 1;
        let input = serde_json::json!({ "group": m.to_document(), "subgroup": h });
        let mut fail = |detail: String| {
            report.violations.push(Violation {
                case: name.into(),
                detail,
                input: input.clone(),
            })
        };
        let verdict = match crate::engine::theorem_check(&m, &h, &bounds) {
            Ok(v) => v,
            Err(e) => {
                fail(e.to_string());
                continue;
            }
        };
        // The perpendicular wall splits the H-chamber into two G-chambers.
        let geometric = realize_coxeter(&m, &tol).ok().and_then(|r| {
            let strip = crate::engine::roots_polytope(
                &r,
                &crate::engine::spec_roots(&Group::new(&m, tol), &h).ok()?,
            )
            .ok()?;
            let s = split_by_hyperplane(&strip, &r.walls[0]).ok()?;
            Some((
                strip.facet_count(),
                s.first.facet_count(),
                s.second.facet_count(),
                s.meets_every_facet_interior,
            ))
        });
        if finite {
            if !(verdict.holds && verdict.finite_volume && verdict.index == 2) {
                fail(format!("unexpected verdict {verdict:?}"));
            }
        } else {
            let want_split = Some((2, 3, 3, true));
            if verdict.holds || verdict.finite_volume || verdict.k_f != 3 || verdict.k_p != 2 {
                fail(format!("unexpected verdict {verdict:?}"));
            } else if geometric != want_split {
                fail(format!("unexpected split {geometric:?}"));
            } else {
                report.expected_counterexamples.push(Violation {
                    case: name.into(),
                    detail: format!(
                        "k_P = {} < k_F = {} with infinite volume",
                        verdict.k_p, verdict.k_f
                    ),
                    input,
                });
            }
        }
    }
    report.wall_clock_ms = start.elapsed().as_millis() as u64;
    report
}

/// Acute-angled polytopes used for the disjoint-faces check.
pub fn andreev_corpus(tol: Tolerances) -> Vec<(String, Polytope)> {
    let mut out: Vec<(String, Polytope)> = corpus_polygons(tol)
        .into_iter()
        .filter(|(_, p)| p.finite_volume())
        .collect();
    if let Ok(p) = realize_triangle(&CoxeterMatrix::triangle(2, 3, 0).expect("valid")) {
        out.push(("triangle (2,3,∞)".into(), p));
    }
    let tets: [(&str, [[u32; 4]; 4]); 3] = [
        (
            "tetrahedron [3,3,6]",
            [[1, 3, 2, 2], [3, 1, 3, 2], [2, 3, 1, 6], [2, 2, 6, 1]],
        ),
        (
            "tetrahedron [5,3,5]",
            [[1, 5, 2, 2], [5, 1, 3, 2], [2, 3, 1, 5], [2, 2, 5, 1]],
        ),
        (
            "tetrahedron [4,3,4]",
            [[1, 4, 2, 2], [4, 1, 3, 2], [2, 3, 1, 4], [2, 2, 4, 1]],
        ),
    ];
    for (name, rows) in tets {
        let m = CoxeterMatrix::from_codes(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .expect("valid");
        if let Ok(r) = realize_coxeter(&m, &tol) {
            out.push((name.into(), r.polytope));
        }
    }
    let mut cube = Vec::new();
    for axis in 0..3 {
        let mut n = [0.0; 3];
        n[axis] = 1.0;
        cube.push(Hyperplane::euclidean(&n, 0.0).expect("nonzero"));
        n[axis] = -1.0;
        cube.push(Hyperplane::euclidean(&n, -1.0).expect("nonzero"));
    }
    if let Ok(p) = Polytope::new(cube, tol) {
        out.push(("cube".into(), p));
    }
    out
}

pub fn andreev_suite(polytopes: &[(String, Polytope)]) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("andreev");
    for (name, p) in polytopes {
        match andreev_verify(p) {
            Ok(r) => {
                report.cases += r.pairs_checked;
                report.hypothesis_cases += r.disjoint_pairs;
                for (a, b) in r.violations {
                    report.violations.push(Violation {
                        case: name.clone(),
                        detail: format!(
                            "faces {a:?} and {b:?} are disjoint but their extensions meet"
                        ),
                        input: serde_json::json!({ "faces": [a, b] }),
                    });
                }
            }
            Err(e) => report.violations.push(Violation {
                case: name.clone(),
                detail: e.to_string(),
                input: serde_json::Value::Null,
            }),
        }
    }
    report.wall_clock_ms = start.elapsed().as_millis() as u64;
    report
}
