use num_integer::Integer;
use serde_json::{json, Value};
use torsion_lab_core::cocycle::{
    flat_trivializations_on_cyclic, is_coboundary, schur_multiplier, standard_torsion_cocycle,
};
use torsion_lab_core::local_system::{local_system_from_torsion, twisted_class_algebra, twisted_cr_cohomology};
use torsion_lab_core::sectors::{inertia, moduli_sectors, multisectors, virtual_dimension, FixedLocus};
use torsion_lab_core::surface::{
    enumerate_homs, fundamental_class_multiplier, gluing_check, gw_table, twisted_dw_partition, twisted_point_gw,
    Gluing,
};
use torsion_lab_core::{Cocycle2, FiniteGroup, OrbifoldPresentation, RootOfUnity, SurfaceSignature};

use crate::error::CliError;
use crate::input::{
    cocycle_to_file, group_to_file, load_group, load_group_and_cocycle, load_presentation, parse_classes, parse_element,
};
use crate::output::{big_rational, cyclotomic, rational, root};
use crate::{CocycleCmd, GlueKind, GroupCmd, SectorsCmd, SurfaceCmd, TwistCmd};

/// A verb's payload; `failure` makes the run exit with the validation status
/// after the report is written.
pub struct Outcome {
    pub result: Value,
    pub failure: Option<Value>,
}

impl From<Value> for Outcome {
    fn from(result: Value) -> Self {
        Outcome { result, failure: None }
    }
}

fn fixed_json(f: &FixedLocus) -> Value {
    match f {
        FixedLocus::Point => json!("point"),
        FixedLocus::Subspace { rank } => json!({ "rank": rank }),
        FixedLocus::Subset { points } => json!({ "points": points }),
    }
}

fn indices(elems: &[torsion_lab_core::Element]) -> Vec<usize> {
    elems.iter().map(|e| e.0).collect()
}

pub fn group(cmd: &GroupCmd) -> Result<Outcome, CliError> {
    match cmd {
        GroupCmd::Info { group } => {
            let g = load_group(group)?;
            let classes: Vec<Value> = g
                .conjugacy_classes()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let r = c.representative;
                    json!({
                        "class": i,
                        "representative": r.0,
                        "size": c.len(),
                        "element_order": g.element_order(r),
                        "centralizer_order": g.centralizer(r).order(),
                        "inverse_class": g.inverse_class(i),
                    })
                })
                .collect();
            Ok(json!({
                "label": g.label(),
                "order": g.order(),
                "identity": g.identity().0,
                "abelian": g.is_abelian(),
                "exponent": g.exponent(),
                "classes": classes,
            })
            .into())
        }
        GroupCmd::Table { group } => {
            let g = load_group(group)?;
            Ok(serde_json::to_value(group_to_file(&g)).expect("serializable").into())
        }
    }
}

fn cocycle_json(alpha: &Cocycle2) -> Value {
    json!({ "modulus": alpha.modulus(), "exponents": alpha.exponents() })
}

/// Canonical class data of `alpha` at a modulus that holds both its values
/// and a representative of every class.
fn classify(g: &FiniteGroup, alpha: &Cocycle2) -> Result<(Cocycle2, usize), CliError> {
    let n = (g.order() as u64).lcm(&alpha.modulus());
    let report = schur_multiplier(g, n)?;
    let canon = report.canonical_form(alpha)?;
    let index = report.all_classes().iter().position(|c| *c == canon).expect("canonical form is listed");
    Ok((canon, index))
}

pub fn cocycle(cmd: &CocycleCmd) -> Result<Outcome, CliError> {
    match cmd {
        CocycleCmd::Verify { group, cocycle } => {
            let (g, alpha) = load_group_and_cocycle(group.as_deref(), cocycle)?;
            let (canon, index) = classify(&g, &alpha)?;
            Ok(json!({
                "valid": true,
                "group": g.label(),
                "modulus": alpha.modulus(),
                "minimal_modulus": alpha.minimal_modulus(),
                "coboundary": is_coboundary(&g, &alpha).is_some(),
                "class_index": index,
                "canonical": cocycle_json(&canon),
            })
            .into())
        }
        CocycleCmd::Schur { group, modulus } => {
            let g = load_group(group)?;
            let report = schur_multiplier(&g, modulus.unwrap_or(g.order() as u64))?;
            Ok(json!(report.divisors()).into())
        }
        CocycleCmd::Classes { group, modulus } => {
            let g = load_group(group)?;
            let report = schur_multiplier(&g, modulus.unwrap_or(g.order() as u64))?;
            let classes: Vec<Value> = report.all_classes().iter().map(cocycle_json).collect();
            Ok(json!({
                "divisors": report.divisors(),
                "order": report.order(),
                "modulus": report.modulus(),
                "representatives": report.representatives().iter().map(cocycle_json).collect::<Vec<_>>(),
                "classes": classes,
            })
            .into())
        }
        CocycleCmd::StandardTorsion { n } => {
            if *n < 2 || n * n > torsion_lab_core::group::DEFAULT_CLOSURE_CAP {
                return Err(CliError::validation(
                    "standard torsion needs 2 <= n and n^2 within the group size limit",
                    json!({ "kind": "InvalidParameter", "n": n }),
                ));
            }
            let (g, alpha) = standard_torsion_cocycle(*n);
            Ok(serde_json::to_value(cocycle_to_file(&g, &alpha)).expect("serializable").into())
        }
        CocycleCmd::Trivialize { group, cocycle, element, modulus } => {
            let (g, alpha) = load_group_and_cocycle(group.as_deref(), cocycle)?;
            let x = parse_element(element, &g)?;
            let list = flat_trivializations_on_cyclic(&g, &alpha, x, *modulus)?;
            let items: Vec<Value> = list
                .iter()
                .map(|t| {
                    json!({
                        "generator": t.generator().0,
                        "members": indices(t.members()),
                        "values": t.values().iter().map(|&z| root(z)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(json!({ "count": items.len(), "trivializations": items }).into())
        }
    }
}

fn presentation(group: &str, spec: &str) -> Result<OrbifoldPresentation, CliError> {
    let g = load_group(group)?;
    load_presentation(&g, spec)
}

pub fn sectors(cmd: &SectorsCmd, cap: u64) -> Result<Outcome, CliError> {
    match cmd {
        SectorsCmd::Inertia { group, presentation: spec } => {
            let p = presentation(group, spec)?;
            let items: Vec<Value> = inertia(&p)
                .iter()
                .map(|s| {
                    json!({
                        "class": s.class_index,
                        "representative": s.representative().0,
                        "size": s.class.len(),
                        "centralizer_order": s.centralizer.order(),
                        "age": rational(&s.age),
                        "fixed": fixed_json(&s.fixed),
                    })
                })
                .collect();
            Ok(json!(items).into())
        }
        SectorsCmd::Multi { group, presentation: spec, k, moduli } => {
            let p = presentation(group, spec)?;
            let list = if *moduli { moduli_sectors(&p, *k, cap)? } else { multisectors(&p, *k, cap)? };
            let items: Vec<Value> = list
                .iter()
                .map(|m| {
                    json!({
                        "tuple": indices(&m.tuple),
                        "orbit_size": m.orbit_size,
                        "centralizer_order": m.joint_centralizer.order(),
                        "product_class": m.product_class,
                        "fixed": fixed_json(&m.fixed),
                    })
                })
                .collect();
            Ok(json!({ "count": items.len(), "multisectors": items }).into())
        }
        SectorsCmd::Ages { group, presentation: spec } => {
            let p = presentation(group, spec)?;
            let g = p.group();
            let items: Vec<Value> = g
                .elements()
                .map(|x| json!({ "element": x.0, "class": g.class_index(x), "age": rational(&p.age(x)) }))
                .collect();
            Ok(json!(items).into())
        }
        SectorsCmd::Vdim { group, presentation: spec, genus, classes } => {
            let p = presentation(group, spec)?;
            let g = p.group();
            let tuple = parse_classes(classes, g)?
                .into_iter()
                .map(|c| c.map(|c| g.conjugacy_classes()[c].representative))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| {
                    CliError::validation("vdim needs explicit classes", json!({ "kind": "UnconstrainedClass" }))
                })?;
            Ok(rational(&virtual_dimension(&p, *genus, &tuple)).into())
        }
    }
}

pub fn twist(cmd: &TwistCmd) -> Result<Outcome, CliError> {
    match cmd {
        TwistCmd::Cohomology { group, cocycle, presentation: spec } => {
            let (g, alpha) = load_group_and_cocycle(group.as_deref(), cocycle)?;
            let p = load_presentation(&g, spec)?;
            let h = twisted_cr_cohomology(&p, &alpha)?;
            let sectors: Vec<Value> = h
                .sectors
                .iter()
                .map(|s| {
                    json!({
                        "class": s.class_index,
                        "representative": s.representative.0,
                        "age": rational(&s.age),
                        "degree": rational(&s.degree),
                        "dimension": s.dimension,
                        "surviving": s.surviving,
                    })
                })
                .collect();
            let poincare: Vec<Value> =
                h.poincare_polynomial().iter().map(|(d, n)| json!({ "degree": rational(d), "dim": n })).collect();
            Ok(json!({ "total_dim": h.total_dimension(), "poincare": poincare, "sectors": sectors }).into())
        }
        TwistCmd::Algebra { group, cocycle } => {
            let (g, alpha) = load_group_and_cocycle(group.as_deref(), cocycle)?;
            let a = twisted_class_algebra(&g, &alpha)?;
            let basis = a.basis();
            let d = a.dimension();
            let mut constants = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let c = a.constant(i, j, k);
                        if !c.is_zero() {
                            constants
                                .push(json!({ "i": basis[i], "j": basis[j], "k": basis[k], "value": cyclotomic(c) }));
                        }
                    }
                }
            }
            let inv = a.invariants();
            Ok(json!({
                "dimension": d,
                "basis": basis,
                "representatives": indices(a.representatives()),
                "identity_class": basis[a.identity_index()],
                "commutative": inv.commutative,
                "associative": inv.associative,
                "constants": constants,
            })
            .into())
        }
        TwistCmd::Verify { group, cocycle, presentation: spec, constant_theta } => {
            let (g, alpha) = load_group_and_cocycle(group.as_deref(), cocycle)?;
            let p = load_presentation(&g, spec)?;
            let mut l = local_system_from_torsion(&p, &alpha)?;
            if *constant_theta {
                l = l.with_theta(vec![RootOfUnity::ONE; g.order() * g.order()])?;
            }
            let report = l.verify();
            let failures: Vec<Value> =
                report.failures.iter().map(|(c, w)| json!({ "condition": c, "elements": w })).collect();
            let conditions: serde_json::Map<String, Value> =
                (1..=4u8).map(|c| (c.to_string(), json!(report.condition_passed(c)))).collect();
            let failure = failures.first().cloned();
            Ok(Outcome {
                result: json!({ "passed": report.passed(), "conditions": conditions, "failures": failures }),
                failure,
            })
        }
    }
}

pub fn surface(cmd: &SurfaceCmd, cap: u64) -> Result<Outcome, CliError> {
    match cmd {
        SurfaceCmd::Homs { group, genus, classes } => {
            let g = load_group(group)?;
            let sig = SurfaceSignature::with_boundary(*genus, parse_classes(classes, &g)?);
            let homs = enumerate_homs(&g, &sig, cap)?;
            let items: Vec<Value> =
                homs.iter().map(|h| json!({ "mu": indices(&h.mu), "boundary": indices(&h.boundary) })).collect();
            Ok(json!({ "count": items.len(), "homs": items }).into())
        }
        SurfaceCmd::Partition { group, cocycle, genus } => {
            let (g, alpha) = load_group_and_cocycle(group.as_deref(), cocycle)?;
            Ok(big_rational(&twisted_dw_partition(&g, &alpha, *genus, cap)?).into())
        }
        SurfaceCmd::Gw { group, cocycle, genus, classes, k } => {
            let (g, alpha) = load_group_and_cocycle(group.as_deref(), cocycle)?;
            match (classes, k) {
                (Some(classes), _) => {
                    let tuple =
                        parse_classes(classes, &g)?.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
                            CliError::validation("gw needs explicit classes", json!({ "kind": "UnconstrainedClass" }))
                        })?;
                    let surviving = torsion_lab_core::local_system::surviving_classes(&g, &alpha);
                    let value = twisted_point_gw(&g, &alpha, *genus, &tuple, cap)?;
                    Ok(json!({
                        "genus": genus,
                        "classes": tuple,
                        "surviving": tuple.iter().all(|&c| surviving[c]),
                        "value": cyclotomic(&value),
                    })
                    .into())
                }
                (None, k) => {
                    let t = gw_table(&g, &alpha, *genus, k.unwrap_or(0), None, cap)?;
                    let entries: Vec<Value> =
                        t.entries.iter().map(|(key, v)| json!({ "classes": key, "value": cyclotomic(v) })).collect();
                    Ok(json!({ "genus": t.genus, "k": t.k, "surviving": t.surviving, "entries": entries }).into())
                }
            }
        }
        SurfaceCmd::Glue { group, cocycle, gluing, genus } => {
            let (g, alpha) = load_group_and_cocycle(group.as_deref(), cocycle)?;
            let (gluing, name) = match gluing {
                GlueKind::Pants => (Gluing::Pants, "pants".to_string()),
                GlueKind::SelfGluing => (Gluing::SelfGluing { genus: *genus }, format!("self-gluing:{genus}")),
            };
            let report = gluing_check(&g, &alpha, gluing, cap)?;
            let failures: Vec<Value> = report
                .failures
                .iter()
                .map(|(key, glued, composed)| {
                    json!({ "classes": key, "glued": cyclotomic(glued), "composed": cyclotomic(composed) })
                })
                .collect();
            let failure = failures.first().cloned();
            Ok(Outcome {
                result: json!({ "gluing": name, "checked": report.checked, "passed": report.passed(), "failures": failures }),
                failure,
            })
        }
        SurfaceCmd::Lcm { multiplicities } => {
            let sig = SurfaceSignature { multiplicities: multiplicities.clone(), ..SurfaceSignature::closed(0) };
            Ok(json!(fundamental_class_multiplier(&sig)?).into())
        }
    }
}
