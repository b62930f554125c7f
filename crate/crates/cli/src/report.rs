//! Reports: what was run, under which assumptions, what came out and which
//! construction produced each value.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
    Refused,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Refused => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Refused => "refused",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultLine {
    pub label: String,
    pub value: String,
    /// The construction that produced the value.
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub instance: String,
    pub status: Status,
    pub assumptions: Vec<String>,
    pub results: Vec<ResultLine>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, instance: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            instance: instance.into(),
            status: Status::Ok,
            assumptions: Vec::new(),
            results: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            witness: None,
        }
    }

    pub fn assume(&mut self, a: impl Into<String>) {
        self.assumptions.push(a.into());
    }

    pub fn result(&mut self, label: impl Into<String>, value: impl ToString, source: impl Into<String>) {
        self.results.push(ResultLine { label: label.into(), value: value.to_string(), source: source.into() });
    }

    /// Records a check; a failing check fails the report.
    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        if !pass && self.status == Status::Ok {
            self.status = Status::Failed;
        }
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn refuse(&mut self, reason: impl Into<String>, witness: impl Into<String>) {
        self.status = Status::Refused;
        self.note(reason);
        self.witness = Some(witness.into());
    }

    pub fn fail(&mut self, reason: impl Into<String>) {
        self.status = Status::Failed;
        self.note(reason);
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ {}", self.command);
        let _ = writeln!(out, "instance: {}", self.instance);
        if !self.assumptions.is_empty() {
            out.push_str("assumptions:\n");
            for a in &self.assumptions {
                let _ = writeln!(out, "  - {a}");
            }
        }
        if !self.results.is_empty() {
            out.push_str("results:\n");
            let width = self.results.iter().map(|r| r.label.chars().count()).max().unwrap_or(0);
            let mut last_source: Option<&str> = None;
            for r in &self.results {
                if last_source != Some(r.source.as_str()) {
                    let _ = writeln!(out, "  [{}]", r.source);
                    last_source = Some(&r.source);
                }
                let pad = width - r.label.chars().count();
                let _ = writeln!(out, "    {}{} = {}", r.label, " ".repeat(pad), r.value);
            }
        }
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                let mark = if c.pass { "pass" } else { "FAIL" };
                let _ = writeln!(out, "  {mark}  {}: {}", c.name, c.detail);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {w}");
        }
        let _ = writeln!(out, "status: {}", self.status.as_str());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_sets_status() {
        let mut r = Report::new("steinhom bf x", "x");
        r.check("a", true, "");
        assert_eq!(r.exit_code(), 0);
        r.check("b", false, "");
        assert_eq!(r.exit_code(), 1);
        r.refuse("no", "w");
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn text_groups_results_by_source() {
        let mut r = Report::new("cmd", "inst");
        r.result("H_0", "Z", "nerve");
        r.result("H_1", "Z/2", "nerve");
        let text = r.to_text();
        assert_eq!(text.matches("[nerve]").count(), 1);
        assert!(text.contains("    H_1 = Z/2\n"));
    }
}
