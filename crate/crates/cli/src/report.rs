//! The report envelope shared by every subcommand.

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "tischler-report/1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            inputs: Map::new(),
            results: Value::Null,
            verdicts: Vec::new(),
            pass: true,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_string(), to_value(value));
        self
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: impl Into<String>) -> &mut Self {
        self.pass &= pass;
        self.verdicts.push(Verdict {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Human summary: the given lines, then one line per verdict.
    pub fn to_human(&self, lines: &[String]) -> String {
        let mut s = format!(
            "{}: {}\n",
            self.command,
            if self.pass { "PASS" } else { "FAIL" }
        );
        for l in lines {
            s.push_str(&format!("  {l}\n"));
        }
        for v in &self.verdicts {
            s.push_str(&format!(
                "  [{}] {}: {}\n",
                if v.pass { "pass" } else { "FAIL" },
                v.name,
                v.detail
            ));
        }
        s
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("values serialize")
}
