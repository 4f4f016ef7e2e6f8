//! Reports: a JSON value with sorted keys, printed as JSON or as indented
//! `key: value` text.

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::repder::{Diagram, Policy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub samples: usize,
    pub max_dim: usize,
    pub passed: bool,
    pub body: Value,
    /// Printed verbatim in text format instead of the body (graph output).
    #[serde(skip)]
    pub raw: Option<String>,
}

impl Report {
    pub fn new(command: &str, policy: &Policy, passed: bool, body: impl Serialize) -> Result<Self> {
        Ok(Report {
            command: command.to_string(),
            seed: policy.seed,
            samples: policy.samples,
            max_dim: policy.max_dim,
            passed,
            body: to_value(body)?,
            raw: None,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                if let Some(raw) = &self.raw {
                    return raw.clone();
                }
                let mut out = String::new();
                out.push_str(&format!("command: {}\n", self.command));
                out.push_str(&format!(
                    "seed: {}\nsamples: {}\nmax_dim: {}\n",
                    self.seed, self.samples, self.max_dim
                ));
                out.push_str(&format!("passed: {}\n", self.passed));
                match &self.body {
                    Value::Object(m) if !m.is_empty() => {
                        out.push_str("body:\n");
                        write_text(&self.body, 1, &mut out);
                    }
                    Value::Object(_) | Value::Null => {}
                    v => out.push_str(&format!("body: {}\n", scalar(v))),
                }
                out
            }
        }
    }
}

/// Round-trips through a string so that maps come out with sorted keys.
pub fn to_value(x: impl Serialize) -> Result<Value> {
    let s = serde_json::to_string(&x).map_err(|e| Error::Invariant(e.to_string()))?;
    serde_json::from_str(&s).map_err(|e| Error::Invariant(e.to_string()))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(xs) => {
            let parts: Vec<String> = xs.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        v => scalar(v),
    }
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_text(x, depth + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_text(x, depth + 1, out);
                }
            }
        }
        v => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per object, one edge per non-identity morphism.
pub fn category_dot(c: &FinCategory) -> String {
    let mut s = format!("digraph {} {{\n", quote(c.name()));
    for a in c.objects() {
        s.push_str(&format!("  {};\n", quote(c.object_label(a))));
    }
    for f in c.morphisms().filter(|f| !c.is_identity(*f)) {
        s.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(c.object_label(c.source(f))),
            quote(c.object_label(c.target(f))),
            quote(c.morphism_label(f))
        ));
    }
    s.push_str("}\n");
    s
}

/// Nodes carry dimensions, edges the rank of their matrix.
pub fn diagram_dot(x: &Diagram) -> String {
    let c = x.shape();
    let mut s = format!("digraph {} {{\n", quote(c.name()));
    for a in c.objects() {
        s.push_str(&format!(
            "  {} [label={}];\n",
            quote(c.object_label(a)),
            quote(&format!("{}: Q^{}", c.object_label(a), x.dim(a)))
        ));
    }
    for f in c.morphisms().filter(|f| !c.is_identity(*f)) {
        s.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(c.object_label(c.source(f))),
            quote(c.object_label(c.target(f))),
            quote(&format!("{} (rank {})", c.morphism_label(f), x.mat(f).rank()))
        ));
    }
    s.push_str("}\n");
    s
}
