//! Line-delimited JSON reports.
//!
//! Every report is a header line, any number of `check` and `data` lines, and
//! a final `summary` line. Object keys are sorted. Timings appear only with
//! `--timing`, so reports are otherwise byte-identical across runs.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "qgrass-report/1";

pub struct Report {
    lines: Vec<String>,
    checks: usize,
    failed: Vec<String>,
    timing: bool,
    started: Instant,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

impl Report {
    pub fn new(command: &str, args: Value, timing: bool) -> Self {
        let mut r = Report {
            lines: Vec::new(),
            checks: 0,
            failed: Vec::new(),
            timing,
            started: Instant::now(),
        };
        r.push(json!({"record": "header", "schema": SCHEMA, "command": command, "args": args}));
        r
    }

    fn push(&mut self, v: Value) {
        self.lines.push(serde_json::to_string(&v).expect("json"));
    }

    fn elapsed(&self, since: Instant) -> Option<f64> {
        self.timing.then(|| since.elapsed().as_secs_f64() * 1e3)
    }

    /// Records an asserted check.
    pub fn check<T: Serialize>(&mut self, name: &str, passed: bool, result: &T, since: Instant) {
        self.checks += 1;
        if !passed {
            self.failed.push(name.to_string());
        }
        let mut v = json!({"record": "check", "name": name, "passed": passed, "result": to_value(result)});
        if let Some(ms) = self.elapsed(since) {
            v["elapsed_ms"] = json!(ms);
        }
        self.push(v);
    }

    /// Records a value that is reported but not asserted.
    pub fn data<T: Serialize>(&mut self, kind: &str, value: &T) {
        self.push(json!({"record": "data", "kind": kind, "value": to_value(value)}));
    }

    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }

    /// Appends the summary and returns the whole document.
    pub fn finish(mut self) -> (String, bool) {
        let passed = self.passed();
        let mut v = json!({
            "record": "summary",
            "checks": self.checks,
            "failed": self.failed,
            "passed": passed,
        });
        if let Some(ms) = self.elapsed(self.started) {
            v["elapsed_ms"] = json!(ms);
        }
        self.push(v);
        let mut out = self.lines.join("\n");
        out.push('\n');
        (out, passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let mut r = Report::new("demo", json!({"x": 1}), false);
        r.check("a", true, &3, Instant::now());
        r.data("d", &vec![1, 2]);
        r.check("b", false, &json!({"why": "no"}), Instant::now());
        let (text, passed) = r.finish();
        assert!(!passed);
        let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0]["schema"], SCHEMA);
        assert_eq!(lines[4]["failed"], json!(["b"]));
        assert_eq!(lines[4]["checks"], 2);
        assert!(lines.iter().all(|l| l.get("elapsed_ms").is_none()));
    }
}
