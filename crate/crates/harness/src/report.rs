//! Line-oriented verification reports with a stable schema. Text output is
//! deterministic for a fixed (suite, count, seed); wall-clock timings are
//! carried separately and appear only in the JSON rendering.

use serde::Serialize;

pub const REPORT_SCHEMA: &str = "conespec-report v1";

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub instance: usize,
    pub check: String,
    pub pass: bool,
    /// Replayable instance description plus certificate digests on failure.
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub count: usize,
    pub seed: u64,
    pub outcomes: Vec<CheckOutcome>,
    /// Milliseconds per instance; excluded from the deterministic text form.
    pub wall_clock_ms: Vec<u128>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.pass).collect()
    }

    /// Deterministic structured text: header, one line per check, summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(REPORT_SCHEMA);
        out.push('\n');
        out.push_str(&format!("suite {}\n", self.suite));
        out.push_str(&format!("count {}\n", self.count));
        out.push_str(&format!("seed {}\n", self.seed));
        for o in &self.outcomes {
            out.push_str(&format!(
                "instance {} check {} {}{}\n",
                o.instance,
                o.check,
                if o.pass { "pass" } else { "FAIL" },
                if o.detail.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", o.detail)
                }
            ));
        }
        let fails = self.failures().len();
        out.push_str(&format!(
            "summary pass={} fail={}\n",
            self.outcomes.len() - fails,
            fails
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
