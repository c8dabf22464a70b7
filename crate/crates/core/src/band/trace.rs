//! Audited move logs. Every step records the move, the rule it instantiates,
//! digests of the state before and after, and the cu value before and after;
//! pushing a step with a cu change is an internal-inconsistency error.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TraceStep {
    pub k: usize,
    #[serde(rename = "move")]
    pub move_name: String,
    pub rule: String,
    pub digest_before: String,
    pub digest_after: String,
    pub cu_before: u64,
    pub cu_after: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ReductionTrace {
    pub p: u64,
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn new(p: u64) -> Self {
        Self { p, steps: Vec::new() }
    }

    /// Record one move. The engine aborts if the move failed to preserve cu.
    pub fn push(
        &mut self,
        move_name: &str,
        rule: &str,
        state_before: &str,
        state_after: &str,
        cu_before: u64,
        cu_after: u64,
    ) -> Result<()> {
        if cu_before != cu_after {
            return Err(Error::InternalInconsistency(format!(
                "move {move_name} changed cu from {cu_before} to {cu_after}"
            )));
        }
        self.steps.push(TraceStep {
            k: self.steps.len() + 1,
            move_name: move_name.to_string(),
            rule: rule.to_string(),
            digest_before: digest(state_before),
            digest_after: digest(state_after),
            cu_before,
            cu_after,
        });
        Ok(())
    }

    /// Append another trace, renumbering its steps.
    pub fn extend(&mut self, other: ReductionTrace) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        for mut step in other.steps {
            step.k = self.steps.len() + 1;
            self.steps.push(step);
        }
        Ok(())
    }

    /// Line-oriented text form, one record per step.
    pub fn to_text(&self) -> String {
        self.steps
            .iter()
            .map(|s| {
                format!(
                    "step {} | move {} | ref \"{}\" | cu {}->{}",
                    s.k, s.move_name, s.rule, s.cu_before, s.cu_after
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serialization cannot fail")
    }
}

/// FNV-1a digest of a canonical state string, 16 hex digits.
pub fn digest(state: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in state.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}
