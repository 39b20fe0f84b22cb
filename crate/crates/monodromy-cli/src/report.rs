//! Report structures shared by the text and JSON outputs.
//!
//! Every numeric evidence value is rendered as a decimal string so group
//! orders and census counts survive JSON round trips exactly. The schema
//! version only changes when the JSON layout changes incompatibly.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    Pass,
    Fail,
    /// The step did not run: the budget ran out, or an earlier step it
    /// depends on already failed. `skip_reason` tells the two apart.
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    Budget,
    Dependency,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub name: &'static str,
    pub status: StepStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<SkipReason>,
    /// One human-readable sentence about what was checked or why it failed.
    pub detail: String,
    /// Exact values backing the verdict, every number in decimal.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub evidence: BTreeMap<&'static str, String>,
}

impl StepReport {
    pub fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        StepReport {
            name,
            status: StepStatus::Pass,
            skip_reason: None,
            detail: detail.into(),
            evidence: BTreeMap::new(),
        }
    }

    pub fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        StepReport {
            name,
            status: StepStatus::Fail,
            skip_reason: None,
            detail: detail.into(),
            evidence: BTreeMap::new(),
        }
    }

    pub fn skipped(name: &'static str, reason: SkipReason, detail: impl Into<String>) -> Self {
        StepReport {
            name,
            status: StepStatus::Skipped,
            skip_reason: Some(reason),
            detail: detail.into(),
            evidence: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &'static str, value: impl ToString) -> Self {
        self.evidence.insert(key, value.to_string());
        self
    }
}

/// Steps whose skip poisons the whole verification: these certify the facts
/// the report exists to establish, so "did not run" cannot count as success.
pub const REQUIRED_STEPS: &[&str] = &[
    "closure",
    "genus",
    "belyi_identity",
    "degree_count",
    "profile_match",
];

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub fixture: String,
    pub group: String,
    pub degree: usize,
    pub seed: u64,
    pub budget_class_members: u64,
    pub budget_seconds: u64,
    pub steps: Vec<StepReport>,
    pub pass: bool,
    /// True when at least one step was skipped for budget reasons.
    pub budget_limited: bool,
}

impl VerifyReport {
    /// Overall verdict: no step failed, and no step on the required list
    /// was skipped.
    pub fn conclude(&mut self) {
        self.pass = self.steps.iter().all(|s| s.status != StepStatus::Fail)
            && self.steps.iter().all(|s| {
                s.status != StepStatus::Skipped || !REQUIRED_STEPS.contains(&s.name)
            });
        self.budget_limited = self
            .steps
            .iter()
            .any(|s| s.skip_reason == Some(SkipReason::Budget));
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (degree {}, {}): {}",
            self.fixture,
            self.degree,
            self.group,
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        for step in &self.steps {
            let tag = match step.status {
                StepStatus::Pass => "pass",
                StepStatus::Fail => "FAIL",
                StepStatus::Skipped => "skip",
            };
            writeln!(f, "  [{tag}] {:<18} {}", step.name, step.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanTriple {
    pub types: [String; 3],
    pub class_indices: [usize; 3],
    pub class_sizes: [String; 3],
    pub pair_count: String,
    pub generating_pair_count: String,
    pub generating_orbit_count: String,
    /// How many ordered type triples this unordered one stands for.
    pub ordered_variants: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub fixture: String,
    pub group: String,
    pub degree: usize,
    pub seed: u64,
    pub budget_class_members: u64,
    pub budget_seconds: u64,
    pub group_order: String,
    pub class_count: usize,
    pub table_complete: bool,
    /// Distinct unordered type triples passing every filter.
    pub triples: Vec<ScanTriple>,
    /// Sum of ordered variants over `triples`.
    pub ordered_total: u32,
    /// Why the scan returned nothing, when structural gates decided that.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<String>,
    /// Set when a census inside the scan ran out of budget; the triple list
    /// is then a lower bound, not an answer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_stop: Option<String>,
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (degree {}, {}): {} class triple(s){}",
            self.fixture,
            self.degree,
            self.group,
            self.triples.len(),
            if self.table_complete {
                ""
            } else {
                " [class table incomplete]"
            }
        )?;
        if let Some(gate) = &self.gate {
            writeln!(f, "  ruled out up front: {gate}")?;
        }
        if let Some(stop) = &self.budget_stop {
            writeln!(f, "  stopped early: {stop}")?;
        }
        for t in &self.triples {
            writeln!(
                f,
                "  ({}, {}, {}): pairs {}, generating {}, orbits {}, ordered x{}",
                t.types[0],
                t.types[1],
                t.types[2],
                t.pair_count,
                t.generating_pair_count,
                t.generating_orbit_count,
                t.ordered_variants
            )?;
        }
        Ok(())
    }
}
