//! Structured command output and its plain-text rendering.

use heegaard_core::{homology_of_y, HeegaardDiagram};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Summary of the diagram a command worked on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digest {
    pub genus: usize,
    pub vertices: usize,
    pub edges: usize,
    pub regions: usize,
    pub h1: String,
    pub b1: usize,
    pub torsion: Vec<Value>,
}

impl Digest {
    pub fn of(d: &HeegaardDiagram) -> Digest {
        let h = homology_of_y(d);
        Digest {
            genus: d.genus(),
            vertices: d.num_vertices(),
            edges: d.num_arcs(),
            regions: d.num_regions(),
            h1: h.to_string(),
            b1: h.b1,
            torsion: h.torsion.iter().map(int).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Arguments as given, program name excluded.
    pub command: Vec<String>,
    pub digest: Option<Digest>,
    pub payload: Value,
    pub status: i32,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(d) = &self.digest {
            out.push_str(&format!(
                "genus {}, {} vertices, {} edges, {} regions, H1 = {}\n",
                d.genus, d.vertices, d.edges, d.regions, d.h1
            ));
        }
        render(&self.payload, 0, &mut out);
        out
    }

    pub fn error_message(&self) -> Option<String> {
        let e = self.payload.get("error")?;
        let mut msg = e.get("message")?.as_str()?.to_string();
        if let Some(p) = e.get("path").and_then(Value::as_str) {
            msg = format!("{p}: {msg}");
        }
        Some(msg)
    }
}

/// Integers stay JSON numbers while they fit in 64 bits.
pub fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(n) => json!(n),
        None => json!(v.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

/// Rationals are written `p/q`, or `p` when integral.
pub fn rational(v: &BigRational) -> Value {
    json!(v.to_string())
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                if let Some(s) = scalar(item) {
                    if s.contains('\n') {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for line in s.lines() {
                            out.push_str(&format!("{pad}  {line}\n"));
                        }
                    } else {
                        out.push_str(&format!("{pad}{k}: {s}\n"));
                    }
                } else if let Some(line) = flat_list(item) {
                    out.push_str(&format!("{pad}{k}: {line}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(item, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if let Some(s) = scalar(item).or_else(|| flat_list(item)) {
                    out.push_str(&format!("{pad}- {s}\n"));
                } else if let Some(line) = flat_object(item) {
                    out.push_str(&format!("{pad}- {line}\n"));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn flat_list(v: &Value) -> Option<String> {
    let items = v.as_array()?;
    let parts: Option<Vec<String>> = items.iter().map(|i| scalar(i).or_else(|| flat_list(i).map(|s| format!("[{s}]")))).collect();
    Some(parts?.join(", "))
}

/// Objects of scalars and flat lists fit on one line.
fn flat_object(v: &Value) -> Option<String> {
    let map = v.as_object()?;
    let parts: Option<Vec<String>> = map
        .iter()
        .map(|(k, i)| {
            scalar(i)
                .filter(|s| !s.contains('\n'))
                .or_else(|| flat_list(i).map(|s| format!("[{s}]")))
                .map(|s| format!("{k}={s}"))
        })
        .collect();
    Some(parts?.join(" "))
}
