use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{FieldSpec, RunConfig};

/// How a check affects the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// Must hold; a failure exits with status 1.
    Gated,
    /// Reported only, e.g. a statement outside its proven range.
    Observed,
    /// Computed over a prime field.
    Informative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub vparity: String,
    pub role: Role,
    pub holds: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, vparity: impl ToString, role: Role, holds: bool, detail: String) -> Check {
        Check { name: name.to_string(), vparity: vparity.to_string(), role, holds, detail }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub config: RunConfig,
    pub dims: Value,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().filter(|c| c.role == Role::Gated).all(|c| c.holds)
    }

    pub fn exit_code(&self) -> u8 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    /// Keys come out sorted. Everything outside `timing` is deterministic.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let cfg = &self.config;
        let mut obj = Map::new();
        obj.insert("shape".into(), json!({ "m": cfg.m, "n": cfg.n, "r": cfg.r }));
        obj.insert(
            "field".into(),
            json!({
                "label": cfg.field.to_string(),
                "role": if cfg.field.is_authoritative() { "authoritative" } else { "informative" },
            }),
        );
        obj.insert("vparity".into(), json!(cfg.vparity.to_string()));
        obj.insert("dims".into(), self.dims.clone());
        obj.insert("checks".into(), serde_json::to_value(&self.checks).expect("checks serialize"));
        obj.insert("pass".into(), json!(self.pass()));
        if with_timing {
            obj.insert("timing".into(), json!({ "elapsed_ms": self.elapsed_ms as u64 }));
        }
        Value::Object(obj)
    }

    pub fn render_json(&self, with_timing: bool) -> String {
        serde_json::to_string_pretty(&self.to_json(with_timing)).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let cfg = &self.config;
        let mut out = String::new();
        let role = match cfg.field {
            FieldSpec::Rationals => "authoritative",
            FieldSpec::Prime(_) => "informative",
        };
        let _ = writeln!(
            out,
            "shape ({}|{},{})  field {} ({role})  vparity {}",
            cfg.m, cfg.n, cfg.r, cfg.field, cfg.vparity
        );
        if !self.dims.as_object().is_some_and(Map::is_empty) {
            out.push_str("dims\n");
            write_value(&mut out, &self.dims, 1);
        }
        if !self.checks.is_empty() {
            out.push_str("checks\n");
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let status = match (c.role, c.holds) {
                    (Role::Observed, true) => "yes ",
                    (Role::Observed, false) => "no  ",
                    (_, true) => "PASS",
                    (_, false) => "FAIL",
                };
                let role = match c.role {
                    Role::Gated => "gated",
                    Role::Observed => "observed",
                    Role::Informative => "informative",
                };
                let _ = writeln!(out, "  {status}  {role:<11} {:<4} {:<width$}  {}", c.vparity, c.name, c.detail);
            }
        }
        let _ = writeln!(out, "result: {}", if self.pass() { "PASS" } else { "FAIL" });
        let _ = writeln!(out, "elapsed: {} ms", self.elapsed_ms);
        out
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_leaf(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", leaf(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    write_value(out, x, depth + 1);
                }
            }
        }
        Value::Array(items) if items.iter().all(is_leaf) => {
            let _ = writeln!(out, "{pad}{}", items.iter().map(leaf).collect::<Vec<_>>().join(", "));
        }
        Value::Array(items) => {
            for x in items {
                match x.as_object() {
                    Some(map) if map.values().all(is_leaf) => {
                        let line: Vec<_> = map.iter().map(|(k, x)| format!("{k} {}", leaf(x))).collect();
                        let _ = writeln!(out, "{pad}- {}", line.join(", "));
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}-");
                        write_value(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", leaf(other));
        }
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.is_empty(),
        Value::Object(map) => map.is_empty(),
        _ => true,
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
