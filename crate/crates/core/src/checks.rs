//! Law-checking bookkeeping shared by the verification routines: every law
//! records how many instances it saw, over which scope, and a capped list of
//! machine-readable witnesses for the instances that failed.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::groups::{FGroup, GroupInterface};

/// Maximum number of witnesses kept per law.
pub const MAX_WITNESSES: usize = 8;

/// Instance budget for laws quantified over pairs of basis elements.
pub const BINARY_BUDGET: u64 = 250_000;
/// Instance budget for laws quantified over triples of basis elements.
pub const TERNARY_BUDGET: u64 = 600_000;

/// Named coordinates of a failing instance, e.g. `{"g": "1", "f": "-2"}`.
pub type Witness = BTreeMap<String, String>;

/// Builds a witness from `(name, value)` pairs.
pub fn witness<const N: usize>(items: [(&str, String); N]) -> Witness {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// What a check actually covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "radius")]
pub enum Scope {
    /// Every instance (finite `F`).
    Exhaustive,
    /// Every instance with `F`-arguments in the ball of the given radius.
    Ball(u32),
    /// A finite certificate that implies the law everywhere.
    Global,
}

impl std::fmt::Display for Scope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scope::Exhaustive => write!(f, "exhaustive"),
            Scope::Ball(r) => write!(f, "verified on ball R={r}"),
            Scope::Global => write!(f, "verified globally"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub scope: Scope,
    pub instances: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
}

impl LawCheck {
    pub fn new(law: impl Into<String>, scope: Scope) -> Self {
        LawCheck {
            law: law.into(),
            scope,
            instances: 0,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    /// Records one instance; the witness is only built on failure.
    pub fn record(&mut self, ok: bool, w: impl FnOnce() -> Witness) {
        self.instances += 1;
        if !ok {
            self.violations += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// A named group of law checks.
#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<LawCheck>,
}

impl Section {
    pub fn new(name: impl Into<String>, checks: Vec<LawCheck>) -> Self {
        let passed = checks.iter().all(LawCheck::passed);
        Section {
            name: name.into(),
            passed,
            checks,
        }
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

/// Scope label for a law evaluated on the ball of radius `r`.
pub fn scope_for(f: &FGroup, r: u32) -> Scope {
    if f.is_finite() {
        Scope::Exhaustive
    } else {
        Scope::Ball(r)
    }
}

/// Largest radius `r <= requested` with `(weight · |ball(r)|)^arity <= budget`.
/// Finite groups are always checked exhaustively.
pub fn budget_radius(f: &FGroup, requested: u32, weight: u64, arity: u32, budget: u64) -> u32 {
    if f.is_finite() {
        return requested;
    }
    let mut r = requested;
    while r > 0 {
        let size = weight.saturating_mul(f.ball(r).len() as u64);
        if size.saturating_pow(arity) <= budget {
            break;
        }
        r -= 1;
    }
    r
}
