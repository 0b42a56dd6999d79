use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::json;
use torsion_lab_core::cocycle::{schur_multiplier, standard_torsion_cocycle};
use torsion_lab_core::group::DEFAULT_CLOSURE_CAP;
use torsion_lab_core::{Cocycle2, FiniteGroup, OrbifoldPresentation, Rational};

use crate::error::CliError;

/// A group as stored on disk: a full table or permutation generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupFile {
    Table { label: String, order: usize, mul: Vec<Vec<usize>> },
    Permutations { label: String, degree: usize, generators: Vec<Vec<usize>> },
}

/// Either a builtin specifier or an inline group object.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Specifier(String),
    Inline(GroupFile),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleFile {
    pub group: GroupRef,
    pub modulus: u64,
    pub exponents: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(rename = "type")]
    pub kind: String,
    pub group: Option<GroupRef>,
    pub weights: Option<Vec<Vec<u64>>>,
    pub weight_modulus: Option<u64>,
    pub rank: Option<usize>,
    pub ages: Option<Vec<String>>,
    pub action: Option<Vec<Vec<usize>>>,
}

/// Treats arguments ending in `.json` or naming an existing file as paths.
pub fn is_file_ref(arg: &str) -> bool {
    arg.ends_with(".json") || Path::new(arg).is_file()
}

/// Reads a JSON file; a full report is accepted in place of its `result`.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.into(),
        line: e.line(),
        message: e.to_string(),
    })?;
    if value.get("tool").is_some() && value.get("result").is_some() {
        value = value["result"].take();
    }
    serde_json::from_value(value).map_err(|e| CliError::Schema { path: path.into(), message: e.to_string() })
}

pub fn group_from_file(g: &GroupFile) -> Result<FiniteGroup, CliError> {
    match g {
        GroupFile::Table { label, order, mul } => {
            if mul.len() != *order {
                return Err(CliError::validation(
                    "table size differs from the declared order",
                    json!({ "kind": "OrderMismatch", "expected": order, "found": mul.len() }),
                ));
            }
            Ok(FiniteGroup::from_cayley_table(mul, label.clone())?)
        }
        GroupFile::Permutations { label, degree, generators } => {
            Ok(FiniteGroup::from_permutation_generators(*degree, generators, label.clone(), DEFAULT_CLOSURE_CAP)?)
        }
    }
}

pub fn resolve_group_ref(r: &GroupRef) -> Result<FiniteGroup, CliError> {
    match r {
        GroupRef::Specifier(s) => load_group(s),
        GroupRef::Inline(g) => group_from_file(g),
    }
}

pub fn load_group(arg: &str) -> Result<FiniteGroup, CliError> {
    if is_file_ref(arg) {
        group_from_file(&read_json(arg)?)
    } else {
        Ok(FiniteGroup::from_specifier(arg)?)
    }
}

pub fn group_to_file(g: &FiniteGroup) -> GroupFile {
    GroupFile::Table { label: g.label().to_string(), order: g.order(), mul: g.table() }
}

pub fn cocycle_to_file(g: &FiniteGroup, alpha: &Cocycle2) -> CocycleFile {
    let group = match FiniteGroup::from_specifier(g.label()) {
        Ok(h) if h.table() == g.table() => GroupRef::Specifier(g.label().to_string()),
        _ => GroupRef::Inline(group_to_file(g)),
    };
    let exponents = alpha.exponents().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect();
    CocycleFile { group, modulus: alpha.modulus(), exponents }
}

fn mismatch(expected: &FiniteGroup, found: &FiniteGroup) -> CliError {
    CliError::validation(
        "the cocycle is defined on a different group",
        json!({ "kind": "GroupMismatch", "expected": expected.label(), "found": found.label() }),
    )
}

fn bad_cocycle_spec(spec: &str) -> CliError {
    CliError::validation(
        format!("unrecognized cocycle specifier `{spec}`"),
        json!({ "kind": "UnknownSpecifier", "specifier": spec }),
    )
}

/// Resolves `--group` and `--cocycle` together. Builtin cocycles are
/// `trivial`, `standard-torsion:n` and `class:i` (the `i`-th class of the
/// canonical listing at modulus `|G|`); anything else is a cocycle file.
pub fn load_group_and_cocycle(group: Option<&str>, cocycle: &str) -> Result<(FiniteGroup, Cocycle2), CliError> {
    let given = group.map(load_group).transpose()?;
    if is_file_ref(cocycle) {
        let file: CocycleFile = read_json(cocycle)?;
        let own = resolve_group_ref(&file.group)?;
        let g = match given {
            Some(g) if g.table() != own.table() => return Err(mismatch(&g, &own)),
            Some(g) => g,
            None => own,
        };
        let alpha = Cocycle2::from_exponents(&g, file.modulus, &file.exponents)?;
        return Ok((g, alpha));
    }
    if let Some(n) = cocycle.strip_prefix("standard-torsion:") {
        let n: usize = n.parse().map_err(|_| bad_cocycle_spec(cocycle))?;
        if n < 2 || n * n > DEFAULT_CLOSURE_CAP {
            return Err(bad_cocycle_spec(cocycle));
        }
        let (own, alpha) = standard_torsion_cocycle(n);
        let g = match given {
            Some(g) if g.table() != own.table() => return Err(mismatch(&g, &own)),
            Some(g) => g,
            None => own,
        };
        return Ok((g, alpha));
    }
    let g = given.ok_or_else(|| {
        CliError::validation("this cocycle needs --group", json!({ "kind": "MissingGroup", "cocycle": cocycle }))
    })?;
    if cocycle == "trivial" {
        let alpha = Cocycle2::trivial(&g);
        return Ok((g, alpha));
    }
    if let Some(i) = cocycle.strip_prefix("class:") {
        let i: usize = i.parse().map_err(|_| bad_cocycle_spec(cocycle))?;
        let classes = schur_multiplier(&g, g.order() as u64)?.all_classes();
        let count = classes.len();
        let alpha = classes.into_iter().nth(i).ok_or_else(|| {
            CliError::validation(
                format!("class index {i} is out of range"),
                json!({ "kind": "ClassOutOfRange", "index": i, "classes": count }),
            )
        })?;
        return Ok((g, alpha));
    }
    Err(bad_cocycle_spec(cocycle))
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim().parse::<Rational>().map_err(|_| {
        CliError::validation(format!("`{s}` is not a rational"), json!({ "kind": "BadRational", "value": s }))
    })
}

/// `point`, `linear:c1,c2,…` (cyclic groups, weight `c_j·i` at the `i`-th
/// power of the generator) or a presentation file.
pub fn load_presentation(g: &FiniteGroup, arg: &str) -> Result<OrbifoldPresentation, CliError> {
    if arg == "point" {
        return Ok(OrbifoldPresentation::point(g.clone()));
    }
    if let Some(rest) = arg.strip_prefix("linear:") {
        let n = g.order() as u64;
        let cyclic = FiniteGroup::cyclic(g.order());
        if g.table() != cyclic.table() {
            return Err(CliError::validation(
                "`linear:` presentations need a cyclic group",
                json!({ "kind": "NotCyclic", "group": g.label() }),
            ));
        }
        let coeffs: Vec<u64> = rest
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|_| bad_presentation(arg)))
            .collect::<Result<_, _>>()?;
        let weights = coeffs.iter().map(|c| (0..n).map(|i| c * i % n).collect()).collect();
        return Ok(OrbifoldPresentation::linear(g.clone(), weights, n, None)?);
    }
    if !is_file_ref(arg) {
        return Err(bad_presentation(arg));
    }
    let file: PresentationFile = read_json(arg)?;
    if let Some(r) = &file.group {
        let own = resolve_group_ref(r)?;
        if own.table() != g.table() {
            return Err(mismatch(g, &own));
        }
    }
    let schema = |message: &str| CliError::Schema { path: arg.into(), message: message.into() };
    let ages =
        file.ages.as_ref().map(|a| a.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()).transpose()?;
    match file.kind.as_str() {
        "point" => Ok(OrbifoldPresentation::point(g.clone())),
        "linear" => match (file.weights, ages) {
            (Some(w), ages) => {
                let m = file.weight_modulus.ok_or_else(|| schema("linear presentations need weight_modulus"))?;
                Ok(OrbifoldPresentation::linear(g.clone(), w, m, ages)?)
            }
            (None, Some(ages)) => {
                let rank = file.rank.ok_or_else(|| schema("age-only presentations need rank"))?;
                Ok(OrbifoldPresentation::linear_from_ages(g.clone(), rank, ages)?)
            }
            (None, None) => Err(schema("linear presentations need weights or ages")),
        },
        "gset" => {
            let action = file.action.ok_or_else(|| schema("gset presentations need action"))?;
            Ok(OrbifoldPresentation::gset(g.clone(), action)?)
        }
        other => Err(schema(&format!("unknown presentation type `{other}`"))),
    }
}

fn bad_presentation(arg: &str) -> CliError {
    CliError::validation(
        format!("unrecognized presentation `{arg}`"),
        json!({ "kind": "UnknownSpecifier", "specifier": arg }),
    )
}

/// Parses a comma-separated list of class indices, `*` meaning unconstrained.
pub fn parse_classes(arg: &str, g: &FiniteGroup) -> Result<Vec<Option<usize>>, CliError> {
    if arg.trim().is_empty() {
        return Ok(Vec::new());
    }
    let count = g.conjugacy_classes().len();
    arg.split(',')
        .map(|s| {
            let s = s.trim();
            if s == "*" {
                return Ok(None);
            }
            match s.parse::<usize>() {
                Ok(c) if c < count => Ok(Some(c)),
                _ => Err(CliError::validation(
                    format!("`{s}` is not a class index below {count}"),
                    json!({ "kind": "ClassOutOfRange", "value": s, "classes": count }),
                )),
            }
        })
        .collect()
}

pub fn parse_element(arg: &str, g: &FiniteGroup) -> Result<torsion_lab_core::Element, CliError> {
    arg.trim().parse::<usize>().ok().and_then(|i| g.element(i)).ok_or_else(|| {
        CliError::validation(
            format!("`{arg}` is not an element index below {}", g.order()),
            json!({ "kind": "ElementOutOfRange", "value": arg, "order": g.order() }),
        )
    })
}
