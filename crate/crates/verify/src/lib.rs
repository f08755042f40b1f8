//! Acceptance criteria for `cumdev-core`, checked against the independent
//! reference computations in [`oracles`].

#![allow(clippy::excessive_precision)]

pub mod criteria;
pub mod oracles;

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    /// One-line summary of the decisive numbers.
    pub detail: String,
    /// Monte Carlo or oracle table rows, one string per row.
    pub table: Vec<String>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn ok(&self) -> bool {
        self.pass && self.within_budget()
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.pass, self.within_budget()) {
            (true, true) => "PASS",
            (true, false) => "SLOW",
            _ => "FAIL",
        };
        write!(
            f,
            "[{tag}] {:>2} {:<34} {:>8.2}s / {:>4}s  {}",
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

/// Body of a criterion: pass flag, detail line and table rows.
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
    pub table: Vec<String>,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into(), table: Vec::new() }
    }

    pub fn with_table(mut self, table: Vec<String>) -> Self {
        self.table = table;
        self
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub budget: Duration,
    pub fast: bool,
    pub run: fn() -> cumdev_core::Result<Outcome>,
}

impl Criterion {
    pub fn evaluate(&self) -> CriterionResult {
        let start = Instant::now();
        let outcome = (self.run)().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        CriterionResult {
            id: self.id,
            name: self.name,
            pass: outcome.pass,
            detail: outcome.detail,
            table: outcome.table,
            elapsed: start.elapsed(),
            budget: self.budget,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Oracles and closed forms.
    Fast,
    /// Every criterion, including the Monte Carlo ones.
    Full,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Suite::Fast),
            "full" => Ok(Suite::Full),
            other => Err(format!("unknown suite '{other}' (expected fast or full)")),
        }
    }
}

pub fn criteria_in(suite: Suite) -> Vec<&'static Criterion> {
    criteria::ALL.iter().filter(|c| suite == Suite::Full || c.fast).collect()
}

pub fn criterion(id: u32) -> Option<&'static Criterion> {
    criteria::ALL.iter().find(|c| c.id == id)
}

/// Runs the suite in id order, calling `report` after each criterion.
pub fn run_suite(suite: Suite, mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    criteria_in(suite)
        .into_iter()
        .map(|c| {
            let r = c.evaluate();
            report(&r);
            r
        })
        .collect()
}
