use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Violation,
    Witness,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Violation => "violation",
            Status::Witness => "witness",
        }
    }
}

/// One recomputable fact: `recipe` is a command that yields `value` again.
#[derive(Debug, Clone, Serialize)]
pub struct Fact {
    pub label: String,
    pub value: Value,
    pub recipe: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub label: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub facts: Vec<Fact>,
    pub witnesses: Vec<Witness>,
    pub status: Status,
    /// Whether this status is the one the command is expected to produce.
    pub expected: bool,
    #[serde(skip)]
    pub brief: bool,
}

impl Report {
    pub fn new(command: &[String], instance: &str) -> Self {
        Report {
            command: command.to_vec(),
            instance: instance.to_string(),
            result: None,
            facts: Vec::new(),
            witnesses: Vec::new(),
            status: Status::Pass,
            expected: true,
            brief: false,
        }
    }

    /// Text output is just the result line.
    pub fn brief(mut self, result: impl Into<Value>) -> Self {
        self.result = Some(result.into());
        self.brief = true;
        self
    }

    pub fn result(mut self, result: impl Into<Value>) -> Self {
        self.result = Some(result.into());
        self
    }

    pub fn fact(&mut self, label: &str, value: impl Into<Value>, recipe: impl Into<String>) {
        self.facts.push(Fact {
            label: label.to_string(),
            value: value.into(),
            recipe: recipe.into(),
        });
    }

    pub fn witness(&mut self, label: &str, value: impl Into<String>) {
        self.witnesses.push(Witness {
            label: label.to_string(),
            value: value.into(),
        });
    }

    pub fn status(mut self, status: Status, expected: bool) -> Self {
        self.status = status;
        self.expected = expected;
        self
    }

    pub fn exit_code(&self) -> u8 {
        if self.expected {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(r) = &self.result {
            writeln!(out, "{}", plain(r)).unwrap();
        }
        if self.brief {
            return out;
        }
        writeln!(out, "instance: {}", self.instance).unwrap();
        for f in &self.facts {
            writeln!(out, "  {} = {}", f.label, plain(&f.value)).unwrap();
        }
        for w in &self.witnesses {
            writeln!(out, "  {}: {}", w.label, w.value).unwrap();
        }
        let note = if self.expected { "" } else { " (unexpected)" };
        writeln!(out, "status: {}{note}", self.status.as_str()).unwrap();
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
