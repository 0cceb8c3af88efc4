//! Verification report model and deterministic JSON emission.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Constant or statement printed in the source text.
    Paper,
    /// Follows by direct substitution.
    Trivial,
    /// Produced by an independent oracle (brute force, exact arithmetic).
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseVerdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub value: Value,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    /// Acceptance criterion number, or 0 for supplementary findings.
    pub criterion: u32,
    pub inputs: Value,
    pub expected: Expected,
    pub actual: Value,
    pub margin: Option<f64>,
    pub verdict: CaseVerdict,
}

impl Case {
    pub fn new(id: &str, criterion: u32, inputs: Value, expected: Value, provenance: Provenance) -> Self {
        Case {
            id: id.to_string(),
            criterion,
            inputs,
            expected: Expected { value: expected, provenance },
            actual: Value::Null,
            margin: None,
            verdict: CaseVerdict::Fail,
        }
    }

    pub fn finish(mut self, actual: Value, margin: Option<f64>, pass: bool) -> Self {
        self.actual = actual;
        self.margin = margin.filter(|m| m.is_finite());
        self.verdict = if pass { CaseVerdict::Pass } else { CaseVerdict::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == CaseVerdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub grids: Value,
    pub tolerances: Value,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub environment: Environment,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(Case::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed())
    }

    /// Pass/fail per criterion number, in increasing order.
    pub fn criteria(&self) -> Vec<(u32, bool)> {
        let mut out: Vec<(u32, bool)> = Vec::new();
        for c in &self.cases {
            match out.iter_mut().find(|(k, _)| *k == c.criterion) {
                Some((_, ok)) => *ok &= c.passed(),
                None => out.push((c.criterion, c.passed())),
            }
        }
        out.sort_by_key(|(k, _)| *k);
        out
    }
}

/// Pretty JSON with a trailing newline. Object keys come out in struct
/// order or sorted, so equal values give equal bytes.
pub fn to_json<T: Serialize>(value: &T) -> crate::error::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
