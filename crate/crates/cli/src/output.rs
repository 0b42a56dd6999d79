use num_rational::BigRational;
use serde_json::{json, Map, Value};
use torsion_lab_core::arith::rational_string;
use torsion_lab_core::{Cyclotomic, Rational, RootOfUnity};

pub fn rational(q: &Rational) -> Value {
    if *q.denom() == 1 {
        Value::String(q.numer().to_string())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub fn big_rational(q: &BigRational) -> Value {
    Value::String(rational_string(q))
}

pub fn root(z: RootOfUnity) -> Value {
    json!({ "num": z.num(), "den": z.den() })
}

/// Exact cyclotomic value: rational part when it has one, the canonical
/// string form, and the reduced coefficient vector over `e(j/n)`.
pub fn cyclotomic(c: &Cyclotomic) -> Value {
    let (n, coeffs) = c.reduced();
    json!({
        "rational": c.to_rational().map(|q| big_rational(&q)),
        "display": c.display_string(),
        "conductor": n,
        "coefficients": coeffs.iter().map(big_rational).collect::<Vec<_>>(),
    })
}

pub fn render(value: &Value, format: crate::Format) -> String {
    match format {
        crate::Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable");
            s.push('\n');
            s
        }
        crate::Format::Text => render_text(value),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(m) if m.len() == 2 && m.contains_key("num") && m.contains_key("den") => {
            format!("e({}/{})", m["num"], m["den"])
        }
        Value::Object(m) if m.contains_key("display") => scalar_text(&m["display"]),
        other => other.to_string(),
    }
}

fn is_table(items: &[Value]) -> bool {
    !items.is_empty() && items.iter().all(Value::is_object)
}

fn is_special(m: &Map<String, Value>) -> bool {
    m.contains_key("display") || (m.len() == 2 && m.contains_key("num") && m.contains_key("den"))
}

/// Row cells, with nested objects of plain scalars spread into their own columns.
fn flatten_row(item: &Value) -> Vec<(String, String)> {
    let mut cells = Vec::new();
    for (k, v) in item.as_object().expect("object rows") {
        match v {
            Value::Object(inner) if !is_special(inner) && inner.values().all(|x| !x.is_object() && !x.is_array()) => {
                cells.extend(inner.iter().map(|(ik, iv)| (ik.clone(), scalar_text(iv))));
            }
            _ => cells.push((k.clone(), scalar_text(v))),
        }
    }
    cells
}

fn table_text(items: &[Value], indent: usize, out: &mut String) {
    let flat: Vec<Vec<(String, String)>> = items.iter().map(flatten_row).collect();
    let mut columns: Vec<String> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let rows: Vec<Vec<String>> = flat
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|c| row.iter().find(|(k, _)| k == c).map_or_else(String::new, |(_, v)| v.clone()))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| rows.iter().map(|r| r[j].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        format!("{}{}\n", " ".repeat(indent), padded.join("  ").trim_end())
    };
    out.push_str(&line(columns.iter().map(String::as_str).collect()));
    for r in &rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
}

fn object_text(m: &Map<String, Value>, indent: usize, out: &mut String) {
    let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
    for (k, v) in m {
        match v {
            Value::Array(items) if is_table(items) => {
                out.push_str(&format!("{}{k}:\n", " ".repeat(indent)));
                table_text(items, indent + 2, out);
            }
            Value::Object(inner) if !is_special(inner) => {
                out.push_str(&format!("{}{k}:\n", " ".repeat(indent)));
                object_text(inner, indent + 2, out);
            }
            _ => out.push_str(&format!("{}{k:<width$}  {}\n", " ".repeat(indent), scalar_text(v))),
        }
    }
}

/// Aligned plain-text form of a JSON value.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(m) => object_text(m, 0, &mut out),
        Value::Array(items) if is_table(items) => table_text(items, 0, &mut out),
        other => {
            out.push_str(&scalar_text(other));
            out.push('\n');
        }
    }
    out
}
