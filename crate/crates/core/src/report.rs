//! Report documents shared by the command-line tool and the examples.
//!
//! Rationals are always strings `p` or `p/q` in lowest terms.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::linalg::RatMatrix;
use crate::rational::{format_q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Value {
    Rational(String),
    Vector(Vec<String>),
    Matrix(Vec<Vec<String>>),
    Text(String),
    Integer(i128),
    Integers(Vec<i128>),
}

impl Value {
    pub fn rational(x: &Q) -> Self {
        Value::Rational(format_q(x))
    }

    pub fn vector<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Self {
        Value::Vector(xs.into_iter().map(format_q).collect())
    }

    pub fn matrix(m: &RatMatrix) -> Self {
        Value::Matrix(
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(format_q).collect())
                .collect(),
        )
    }

    fn render(&self) -> String {
        match self {
            Value::Rational(s) | Value::Text(s) => s.clone(),
            Value::Vector(v) => format!("({})", v.join(", ")),
            Value::Integer(n) => n.to_string(),
            Value::Integers(v) => {
                format!(
                    "[{}]",
                    v.iter()
                        .map(|n| n.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            }
            Value::Matrix(rows) => {
                let width = rows
                    .iter()
                    .flatten()
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0);
                rows.iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|s| format!("{s:>width$}")).collect();
                        format!("  [{}]", cells.join(" "))
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedResult {
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub anchor: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<NamedResult>,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>) -> Self {
        ReportDocument {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, name: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.inputs.push((name.into(), value.into()));
        self
    }

    pub fn result(&mut self, name: impl Into<String>, value: Value) -> &mut Self {
        self.results.push(NamedResult {
            name: name.into(),
            value,
        });
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    /// Records a check and returns its outcome.
    pub fn check(
        &mut self,
        anchor: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> bool {
        self.checks.push(Check {
            anchor: anchor.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    /// Records `actual == expected` on rationals.
    pub fn check_eq(&mut self, anchor: impl Into<String>, actual: &Q, expected: &Q) -> bool {
        let passed = actual == expected;
        let detail = if passed {
            format_q(actual)
        } else {
            format!("got {}, expected {}", format_q(actual), format_q(expected))
        };
        self.check(anchor, passed, detail)
    }

    /// Records a failed check for an error raised while computing `anchor`.
    pub fn check_err(&mut self, anchor: impl Into<String>, err: &crate::Error) -> bool {
        self.check(anchor, false, err.to_string())
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "input {k} = {v}");
        }
        for r in &self.results {
            let rendered = r.value.render();
            if rendered.contains('\n') {
                let _ = writeln!(out, "{}:\n{rendered}", r.name);
            } else {
                let _ = writeln!(out, "{}: {rendered}", r.name);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{mark}] {}: {}", c.anchor, c.detail);
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qi, qr};

    #[test]
    fn json_round_trip() {
        let mut r = ReportDocument::new("demo");
        r.input("x", "-126");
        r.result("v", Value::vector(&[qr(-7, 2), qi(4)]));
        r.result("m", Value::matrix(&RatMatrix::identity(2)));
        r.result("t", Value::Text("1/2".into()));
        r.result("hits", Value::Integers(vec![0, -5]));
        r.check_eq("eq", &qr(2, 4), &qr(1, 2));
        r.check_eq("ne", &qi(1), &qi(2));
        let back = ReportDocument::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_json().contains("\"-7/2\""));
        assert!(r.to_text().contains("[FAIL] ne: got 1, expected 2"));
    }
}
