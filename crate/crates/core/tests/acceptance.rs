//! End-to-end acceptance run.  Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use coxdec::diagrams::{enumerate_parabolic_unions, CoxeterMatrix};
use coxdec::engine::{
    chamber_bfs, roots_polytope, subgroup_chamber, theorem_check, Bounds, Group, Root, SubgroupSpec,
};
use coxdec::geometry::{
    andreev_verify, area2, extension_relation, realize_coxeter, ExtensionRelation, Hyperplane,
    Polytope, SpaceKind,
};
use coxdec::harness::{
    andreev_corpus, andreev_suite, lemma2_suite, remark2_regression, SuiteReport,
};
use coxdec::Tolerances;

const BIN: &str = env!("CARGO_BIN_EXE_coxdec");

type Outcome = Result<String, String>;
type Named = (
    &'static str,
    (u32, u32, u32),
    SubgroupSpec,
    usize,
    usize,
    Option<[u32; 3]>,
);
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn conjugates(generator: usize, conj: &[&[usize]]) -> SubgroupSpec {
    let words: Vec<Vec<usize>> = conj
        .iter()
        .map(|w| {
            let mut x = w.to_vec();
            x.push(generator);
            x.extend(w.iter().rev());
            x
        })
        .collect();
    let refs: Vec<&[usize]> = words.iter().map(|w| w.as_slice()).collect();
    SubgroupSpec::from_words(&refs)
}

/// Shoelace area from chart coordinates of the ordinary vertices in cycle order.
fn shoelace(p: &Polytope) -> f64 {
    let pts: Vec<Vec<f64>> = p
        .corners()
        .iter()
        .filter_map(|c| match c {
            coxdec::geometry::Corner::At(v) => Some(p.all_vertices()[*v].chart()),
            coxdec::geometry::Corner::Open => None,
        })
        .collect();
    let n = pts.len();
    (0..n)
        .map(|k| pts[k][0] * pts[(k + 1) % n][1] - pts[(k + 1) % n][0] * pts[k][1])
        .sum::<f64>()
        .abs()
        / 2.0
}

fn gauss_bonnet(angles: &[u32]) -> f64 {
    (angles.len() as f64 - 2.0) * PI - angles.iter().map(|&m| PI / m as f64).sum::<f64>()
}

fn theorem_suite() -> Outcome {
    let start = Instant::now();
    let out = Command::new(BIN)
        .args([
            "verify",
            "--suite",
            "theorem",
            "--max-depth",
            "8",
            "--max-index",
            "48",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}", out.status.code())
    })?;
    let reports: Vec<SuiteReport> =
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let r = &reports[0];
    let finite: HashSet<(String, String)> = r
        .entries
        .iter()
        .filter(|e| e.verdict.finite_volume)
        .map(|e| (e.group.clone(), format!("{:?}", e.roots)))
        .collect();
    let bad = r
        .entries
        .iter()
        .filter(|e| e.verdict.finite_volume && e.verdict.k_p < e.verdict.k_f)
        .count();
    ensure(r.violations.is_empty() && bad == 0, || {
        format!(
            "{} violations, {bad} entries with k_P < k_F",
            r.violations.len()
        )
    })?;
    ensure(finite.len() >= 12, || {
        format!("only {} finite-covolume entries", finite.len())
    })?;
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "{} finite-covolume entries, 0 violations, {secs:.2} s",
        finite.len()
    ))
}

fn named_instances() -> Outcome {
    let tol = Tolerances::default();
    let bounds = Bounds::default();
    let doubling = SubgroupSpec::from_words(&[&[1], &[2], &[0, 2, 0]]);
    let square = conjugates(
        0,
        &[
            &[],
            &[1],
            &[2],
            &[1, 2],
            &[2, 1],
            &[1, 2, 1],
            &[2, 1, 2],
            &[1, 2, 1, 2],
        ],
    );
    // (group, subgroup, index, k_P, angle labels of P or None for Euclidean)
    let cases: [Named; 3] = [
        (
            "(2,3,8) > (3,3,4)",
            (2, 3, 8),
            doubling.clone(),
            2,
            3,
            Some([3, 3, 4]),
        ),
        ("(2,3,6) > (3,3,3)", (2, 3, 6), doubling, 2, 3, None),
        ("(2,4,4) > square", (2, 4, 4), square, 8, 4, None),
    ];
    let mut worst: f64 = 0.0;
    for (name, (p, q, r), h, index, k_p, labels) in cases {
        let m = CoxeterMatrix::triangle(p, q, r).unwrap();
        let v = theorem_check(&m, &h, &bounds).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            v.index == index && v.k_p == k_p && v.k_f == 3 && v.holds,
            || format!("{name}: {v:?}"),
        )?;
        let ch = subgroup_chamber(&m, &h, &bounds).map_err(|e| e.to_string())?;
        let real = realize_coxeter(&m, &tol).map_err(|e| e.to_string())?;
        let big = roots_polytope(&real, &ch.system.roots).map_err(|e| e.to_string())?;
        let area_p = area2(&big).map_err(|e| e.to_string())?;
        let (oracle_p, oracle_f) = match real.space().kind {
            SpaceKind::Hyperbolic => (gauss_bonnet(&labels.unwrap()), gauss_bonnet(&[p, q, r])),
            SpaceKind::Euclidean => (shoelace(&big), shoelace(&real.polytope)),
        };
        let residual = (area_p - index as f64 * oracle_f).abs();
        worst = worst.max(residual).max((oracle_p - area_p).abs());
        ensure(
            residual <= 1e-9 && (oracle_p - area_p).abs() <= 1e-9,
            || format!("{name}: area {area_p} vs {index} x {oracle_f}"),
        )?;
    }
    Ok(format!("3 instances, worst area residual {worst:.1e}"))
}

fn facet_cross_check() -> Outcome {
    let out = Command::new(BIN)
        .args(["verify", "--suite", "theorem"])
        .output()
        .map_err(|e| e.to_string())?;
    let reports: Vec<SuiteReport> =
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let groups: std::collections::HashMap<String, CoxeterMatrix> =
        coxdec::harness::Corpus::default()
            .groups
            .into_iter()
            .collect();
    let bounds = Bounds {
        max_chambers: 48,
        ..Bounds::default()
    };
    let entries = &reports[0].entries;
    for e in entries {
        let roots: Vec<Root> = e.roots.iter().map(|c| Root(c.clone().into())).collect();
        let ch = subgroup_chamber(
            &groups[&e.group],
            &SubgroupSpec::from_roots(&roots),
            &bounds,
        )
        .map_err(|err| format!("{} {:?}: {err}", e.group, e.roots))?;
        ensure(
            ch.system.len() == ch.facet_count && ch.facet_count == e.verdict.k_p,
            || {
                format!(
                    "{} {:?}: |Δ| {} vs facets {}",
                    e.group,
                    e.roots,
                    ch.system.len(),
                    ch.facet_count
                )
            },
        )?;
    }
    Ok(format!("{} entries, 0 mismatches", entries.len()))
}

fn lemma2() -> Outcome {
    let r = lemma2_suite(8);
    let nodes: usize = enumerate_parabolic_unions(8)
        .iter()
        .map(|d| d.nodes().len())
        .sum();
    // Independent count: multisets of connected affine diagrams (by node
    // count 2..=8: 1, 3, 3, 5, 4, 5, 5 types) with at most 8 nodes in total.
    let types: Vec<usize> = [(2, 1), (3, 3), (4, 3), (5, 5), (6, 4), (7, 5), (8, 5)]
        .iter()
        .flat_map(|&(n, k)| std::iter::repeat_n(n, k))
        .collect();
    fn total(types: &[usize], budget: usize, used: usize) -> usize {
        match types.split_first() {
            None => used,
            Some((&t, rest)) => (0..=budget / t)
                .map(|k| total(rest, budget - k * t, used + k * t))
                .sum(),
        }
    }
    let oracle = total(&types, 8, 0);
    ensure(r.passed(), || format!("{} violations", r.violations.len()))?;
    ensure(r.cases == nodes && nodes == oracle, || {
        format!("cases {} / node total {nodes} / oracle {oracle}", r.cases)
    })?;
    Ok(format!("{} cases, 0 violations", r.cases))
}

fn andreev() -> Outcome {
    let corpus = andreev_corpus(Tolerances::default());
    let names: Vec<&str> = corpus.iter().map(|(n, _)| n.as_str()).collect();
    for want in [
        "triangle",
        "pentagon",
        "quadrilateral",
        "rectangle",
        "tetrahedron",
    ] {
        ensure(names.iter().any(|n| n.contains(want)), || {
            format!("corpus lacks a {want}")
        })?;
    }
    let r = andreev_suite(&corpus);
    ensure(r.passed(), || format!("{} violations", r.violations.len()))?;
    // Without acute angles the conclusion fails: two disjoint sides of this
    // quadrilateral have meeting extensions, and the checker refuses it.
    let bent = Polytope::new(
        vec![
            Hyperplane::euclidean(&[0.0, 1.0], 0.0).unwrap(),
            Hyperplane::euclidean(&[1.0, 0.0], 0.0).unwrap(),
            Hyperplane::euclidean(&[-1.0, -0.2], -1.0).unwrap(),
            Hyperplane::euclidean(&[0.0, -1.0], -1.0).unwrap(),
        ],
        Tolerances::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(
        !bent.faces_meet(&[1], &[2])
            && extension_relation(&bent, &[1], &[2]).ok() == Some(ExtensionRelation::Meet)
            && andreev_verify(&bent).is_err(),
        || "negative control not detected".into(),
    )?;
    Ok(format!(
        "{} polytopes, {} pairs, 0 violations",
        corpus.len(),
        r.cases
    ))
}

fn remark2() -> Outcome {
    let r = remark2_regression();
    ensure(r.passed() && r.expected_counterexamples.len() == 2, || {
        format!("{:?} / {:?}", r.violations, r.expected_counterexamples)
    })?;
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let group = dir.path().join("strip.json");
    let sub = dir.path().join("pair.json");
    let cosh1 = 1f64.cosh();
    let docs = [
        r#"{"rank":3,"m":[[1,2,2],[2,1,0],[2,0,1]]}"#.to_string(),
        format!(
            r#"{{"rank":3,"m":[[1,2,2],[2,1,0],[2,0,1]],"weights":[{{"i":1,"j":2,"c":{}}}]}}"#,
            -cosh1
        ),
    ];
    std::fs::write(&sub, r#"{"reflections":[{"word":[1]},{"word":[2]}]}"#)
        .map_err(|e| e.to_string())?;
    for doc in docs {
        std::fs::write(&group, doc).map_err(|e| e.to_string())?;
        let out = Command::new(BIN)
            .arg("subgroup")
            .arg(&group)
            .arg(&sub)
            .output()
            .map_err(|e| e.to_string())?;
        let v: serde_json::Value =
            serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        ensure(
            out.status.code() == Some(0) && v["holds"] == false && v["finite_volume"] == false,
            || format!("exit {:?}, verdict {v}", out.status.code()),
        )?;
    }
    Ok("E2 and H2 strips: holds=false, finite_volume=false, exit 0".into())
}

/// Distinct elements of word length at most `depth`, from plain matrix products.
fn word_oracle(m: &CoxeterMatrix, depth: usize) -> usize {
    let n = m.rank();
    let g = m.gram();
    let gen = |i: usize| -> Vec<Vec<f64>> {
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (if r == c { 1.0 } else { 0.0 })
                            - if r == i { 2.0 * g.get(i, c) } else { 0.0 }
                    })
                    .collect()
            })
            .collect()
    };
    let mul = |a: &Vec<Vec<f64>>, b: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum())
                    .collect()
            })
            .collect()
    };
    let key = |a: &Vec<Vec<f64>>| -> Vec<i64> {
        a.iter()
            .flatten()
            .map(|x| (x * 1e6).round() as i64)
            .collect()
    };
    let id: Vec<Vec<f64>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut seen = HashSet::from([key(&id)]);
    let mut layer = vec![id];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..n {
                let x = mul(w, &gen(i));
                if seen.insert(key(&x)) {
                    next.push(x);
                }
            }
        }
        layer = next;
    }
    seen.len()
}

fn kernel() -> Outcome {
    let m = CoxeterMatrix::triangle(2, 3, 7).unwrap();
    let counts: Vec<usize> = (0..=2).map(|d| chamber_bfs(&m, d, 10_000).len()).collect();
    let oracle: Vec<usize> = (0..=2).map(|d| word_oracle(&m, d)).collect();
    ensure(counts == [1, 4, 9] && oracle == counts, || {
        format!("counts {counts:?}, oracle {oracle:?}")
    })?;
    let group = Group::new(&m, Tolerances::default());
    let set = chamber_bfs(&m, 8, 10_000);
    let mut worst: f64 = 0.0;
    for e in &set.elements {
        let d = e.matrix.transpose() * group.gram() * &e.matrix - group.gram();
        worst = worst.max(d.amax());
    }
    ensure(worst <= 1e-9, || format!("form defect {worst:e}"))?;
    let mut inv: f64 = 0.0;
    for i in 0..3 {
        let s = group.generator(i);
        inv = inv.max((s * s - nalgebra::DMatrix::identity(3, 3)).amax());
    }
    ensure(inv <= 1e-12, || format!("involution defect {inv:e}"))?;
    Ok(format!(
        "counts 1/4/9, form defect {worst:.1e} over {} elements, involution defect {inv:.1e}",
        set.len()
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("theorem suite over the default corpus", theorem_suite),
        ("named instances with area oracle", named_instances),
        (
            "canonical generators vs geometric facets",
            facet_cross_check,
        ),
        ("parabolic node removal, rank <= 8", lemma2),
        ("disjoint faces have divergent extensions", andreev),
        ("strip counterexamples", remark2),
        ("kernel sanity for (2,3,7)", kernel),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
