use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use torsion_lab_core::cocycle::{flat_trivializations_on_cyclic, schur_multiplier};
use torsion_lab_core::local_system::{local_system_from_torsion, twisted_class_algebra, twisted_cr_cohomology};
use torsion_lab_core::surface::{
    alpha_weight_closed, enumerate_homs, gluing_check, twisted_dw_partition, Gluing, SurfaceError,
};
use torsion_lab_core::{default_corpus, Cochain1, Cocycle2, FiniteGroup, OrbifoldPresentation, SurfaceSignature};

use crate::error::CliError;
use crate::input::{load_group, load_group_and_cocycle, read_json, resolve_group_ref, GroupRef};

pub struct CorpusOptions<'a> {
    pub groups: &'a [String],
    pub corpus_file: Option<&'a str>,
    pub cocycle_files: &'a [String],
    pub max_classes: usize,
    pub samples: usize,
    pub seed: u64,
    pub cap: u64,
}

enum Cell {
    Pass,
    Skip,
    Fail(Value),
}

type Check = fn(&FiniteGroup, &Cocycle2, &mut StdRng, u64) -> Result<Cell, CliError>;

const CHECKS: &[(&str, Check)] = &[
    ("local_system", check_local_system),
    ("trivializations", check_trivializations),
    ("genus_one", check_genus_one),
    ("closed_weights", check_closed_weights),
    ("dimension_invariance", check_dimension_invariance),
    ("class_algebra", check_class_algebra),
    ("gluing", check_gluing),
];

fn random_cochain(g: &FiniteGroup, rng: &mut StdRng) -> Cochain1 {
    let m = 2 * g.order() as u64;
    let e = g.identity();
    let exps: Vec<i64> = g.elements().map(|x| if x == e { 0 } else { rng.gen_range(0..m as i64) }).collect();
    Cochain1::from_exponents(g, m, &exps).expect("normalized")
}

fn check_local_system(g: &FiniteGroup, alpha: &Cocycle2, _: &mut StdRng, _: u64) -> Result<Cell, CliError> {
    let l = local_system_from_torsion(&OrbifoldPresentation::point(g.clone()), alpha)?;
    let report = l.verify();
    Ok(match report.failures.first() {
        None => Cell::Pass,
        Some((c, w)) => Cell::Fail(json!({ "condition": c, "elements": w })),
    })
}

fn check_trivializations(g: &FiniteGroup, alpha: &Cocycle2, _: &mut StdRng, _: u64) -> Result<Cell, CliError> {
    for c in g.conjugacy_classes() {
        let r = c.representative;
        let list = flat_trivializations_on_cyclic(g, alpha, r, None)?;
        if list.len() != g.element_order(r) {
            return Ok(Cell::Fail(json!({ "element": r.0, "count": list.len(), "expected": g.element_order(r) })));
        }
        if let Some(t) = list.iter().find(|t| !t.trivializes(g, alpha)) {
            return Ok(Cell::Fail(json!({ "element": r.0, "generator": t.generator().0 })));
        }
    }
    Ok(Cell::Pass)
}

fn check_genus_one(g: &FiniteGroup, alpha: &Cocycle2, _: &mut StdRng, cap: u64) -> Result<Cell, CliError> {
    let z = twisted_dw_partition(g, alpha, 1, cap)?;
    let dim = twisted_cr_cohomology(&OrbifoldPresentation::point(g.clone()), alpha)?.total_dimension();
    Ok(if z == num_rational::BigRational::from_integer(dim.into()) {
        Cell::Pass
    } else {
        Cell::Fail(json!({ "partition": crate::output::big_rational(&z), "dimension": dim }))
    })
}

fn check_closed_weights(g: &FiniteGroup, alpha: &Cocycle2, rng: &mut StdRng, cap: u64) -> Result<Cell, CliError> {
    let twisted = alpha.twisted_by(g, &random_cochain(g, rng));
    for hom in enumerate_homs(g, &SurfaceSignature::closed(1), cap)? {
        let w = alpha_weight_closed(g, alpha, &hom)?;
        if alpha_weight_closed(g, &twisted, &hom)? != w {
            return Ok(Cell::Fail(json!({ "kind": "coboundary", "mu": [hom.mu[0].0, hom.mu[1].0] })));
        }
        for h in g.elements() {
            if alpha_weight_closed(g, alpha, &hom.conjugate(g, h))? != w {
                return Ok(Cell::Fail(json!({ "kind": "conjugation", "mu": [hom.mu[0].0, hom.mu[1].0], "by": h.0 })));
            }
        }
    }
    Ok(Cell::Pass)
}

fn check_dimension_invariance(g: &FiniteGroup, alpha: &Cocycle2, rng: &mut StdRng, _: u64) -> Result<Cell, CliError> {
    let p = OrbifoldPresentation::point(g.clone());
    let a = twisted_cr_cohomology(&p, alpha)?.total_dimension();
    let b = twisted_cr_cohomology(&p, &alpha.twisted_by(g, &random_cochain(g, rng)))?.total_dimension();
    Ok(if a == b { Cell::Pass } else { Cell::Fail(json!({ "before": a, "after": b })) })
}

fn check_class_algebra(g: &FiniteGroup, alpha: &Cocycle2, _: &mut StdRng, _: u64) -> Result<Cell, CliError> {
    let a = twisted_class_algebra(g, alpha)?;
    if let Some((i, j, k)) = a.associativity_failure() {
        return Ok(Cell::Fail(json!({ "kind": "associativity", "basis": [i, j, k] })));
    }
    Ok(if a.identity_holds() { Cell::Pass } else { Cell::Fail(json!({ "kind": "identity" })) })
}

fn check_gluing(g: &FiniteGroup, alpha: &Cocycle2, _: &mut StdRng, cap: u64) -> Result<Cell, CliError> {
    for gluing in [Gluing::Pants, Gluing::SelfGluing { genus: 0 }] {
        match gluing_check(g, alpha, gluing, cap) {
            Ok(r) if r.passed() => {}
            Ok(r) => {
                let classes = &r.failures[0].0;
                return Ok(Cell::Fail(json!({ "gluing": format!("{gluing:?}"), "classes": classes })));
            }
            Err(SurfaceError::CapExceeded { .. }) => return Ok(Cell::Skip),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Cell::Pass)
}

fn run_row(group: &FiniteGroup, alpha: &Cocycle2, label: &str, rng: &mut StdRng, cap: u64) -> Value {
    let mut checks = BTreeMap::new();
    let mut witness = Value::Null;
    for (name, check) in CHECKS {
        let cell = check(group, alpha, rng, cap).unwrap_or_else(|e| Cell::Fail(e.to_json()));
        let text = match cell {
            Cell::Pass => "pass",
            Cell::Skip => "skip",
            Cell::Fail(w) => {
                if witness.is_null() {
                    witness = json!({ "check": name, "detail": w });
                }
                "fail"
            }
        };
        checks.insert(name.to_string(), json!(text));
    }
    json!({
        "group": group.label(),
        "order": group.order(),
        "cocycle": label,
        "passed": witness.is_null(),
        "checks": checks,
        "witness": witness,
    })
}

fn failed_row(group: &str, label: &str, error: &CliError) -> Value {
    json!({
        "group": group,
        "order": Value::Null,
        "cocycle": label,
        "passed": false,
        "checks": {},
        "witness": { "check": "load", "detail": error.to_json() },
    })
}

type Loaded = Result<FiniteGroup, (String, CliError)>;

fn collect_groups(opts: &CorpusOptions) -> Result<Vec<Loaded>, CliError> {
    let mut out = Vec::new();
    if let Some(path) = opts.corpus_file {
        let refs: Vec<GroupRef> = read_json(path)?;
        for r in &refs {
            let name = match r {
                GroupRef::Specifier(s) => s.clone(),
                GroupRef::Inline(_) => format!("{path}[inline]"),
            };
            out.push(resolve_group_ref(r).map_err(|e| (name, e)));
        }
    }
    for s in opts.groups {
        out.push(load_group(s).map_err(|e| (s.clone(), e)));
    }
    if opts.corpus_file.is_none() && opts.groups.is_empty() {
        out.extend(default_corpus().into_iter().map(Ok));
    }
    Ok(out)
}

/// Pass/fail matrix of the invariant suite: for each group, its first
/// `max_classes` cohomology classes plus `samples` random cohomologous
/// variants; then one row per extra cocycle file.
pub fn corpus(opts: &CorpusOptions) -> Result<crate::commands::Outcome, CliError> {
    let mut rows = Vec::new();
    for (index, entry) in collect_groups(opts)?.into_iter().enumerate() {
        let g = match entry {
            Ok(g) => g,
            Err((name, e)) => {
                rows.push(failed_row(&name, "-", &e));
                continue;
            }
        };
        let mut rng = StdRng::seed_from_u64(opts.seed.wrapping_add(index as u64));
        let classes = schur_multiplier(&g, g.order() as u64)?.all_classes();
        let chosen: Vec<Cocycle2> = classes.into_iter().take(opts.max_classes.max(1)).collect();
        for (i, alpha) in chosen.iter().enumerate() {
            rows.push(run_row(&g, alpha, &format!("class:{i}"), &mut rng, opts.cap));
        }
        for s in 0..opts.samples {
            let alpha = chosen[rng.gen_range(0..chosen.len())].twisted_by(&g, &random_cochain(&g, &mut rng));
            rows.push(run_row(&g, &alpha, &format!("sample:{s}"), &mut rng, opts.cap));
        }
    }
    for path in opts.cocycle_files {
        let mut rng = StdRng::seed_from_u64(opts.seed);
        match load_group_and_cocycle(None, path) {
            Ok((g, alpha)) => rows.push(run_row(&g, &alpha, path, &mut rng, opts.cap)),
            Err(e @ CliError::Io { .. }) => return Err(e),
            Err(e) => rows.push(failed_row("-", path, &e)),
        }
    }
    let failed: Vec<Value> = rows
        .iter()
        .filter(|r| r["passed"] == json!(false))
        .map(|r| json!({ "group": r["group"], "cocycle": r["cocycle"], "witness": r["witness"] }))
        .collect();
    let failure = failed.first().cloned();
    Ok(crate::commands::Outcome {
        result: json!({
            "rows": rows,
            "total": rows.len(),
            "failed": failed.len(),
            "passed": failed.is_empty(),
        }),
        failure,
    })
}
