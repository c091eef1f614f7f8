//! Uniform result records for hypothesis-gated checks.
//!
//! Most propositions in this domain only hold under side conditions the
//! source statements leave implicit. Every checker therefore evaluates its
//! hypotheses first and asserts the conclusion only when they are met;
//! otherwise the record carries `Verdict::HypothesisNotMet` instead of a
//! spurious failure.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Outcome of one checked identity or inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Hypotheses met and the conclusion holds within tolerance.
    Holds,
    /// Hypotheses met but the conclusion fails; a witness is recorded.
    Fails,
    /// At least one hypothesis is unmet; nothing is asserted.
    HypothesisNotMet,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
            Verdict::HypothesisNotMet => write!(f, "hypothesis-not-met"),
        }
    }
}

/// A named hypothesis and whether it was established for the inputs at hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: &'static str,
    pub met: bool,
}

impl Hypothesis {
    pub fn new(name: &'static str, met: bool) -> Self {
        Hypothesis { name, met }
    }
}

/// One checked claim instance: both sides, the gap, and the verdict.
#[derive(Debug, Clone)]
pub struct CheckItem {
    pub label: &'static str,
    pub hypotheses: Vec<Hypothesis>,
    pub lhs: f64,
    pub rhs: f64,
    /// Signed gap; its meaning (|lhs-rhs| or lhs-rhs) depends on `kind`.
    pub delta: f64,
    pub tol: f64,
    pub kind: CheckKind,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

/// Whether the check is an equality or a one-sided bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// |lhs - rhs| <= tol
    Equal,
    /// lhs <= rhs + tol
    AtMost,
}

impl CheckItem {
    /// Evaluate an identity or bound once the hypothesis list is assembled.
    pub fn evaluate(
        label: &'static str,
        hypotheses: Vec<Hypothesis>,
        kind: CheckKind,
        lhs: f64,
        rhs: f64,
        tol: f64,
    ) -> Self {
        let delta = match kind {
            CheckKind::Equal => (lhs - rhs).abs(),
            CheckKind::AtMost => lhs - rhs,
        };
        let verdict = if hypotheses.iter().any(|h| !h.met) {
            Verdict::HypothesisNotMet
        } else if delta <= tol {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        CheckItem { label, hypotheses, lhs, rhs, delta, tol, kind, verdict, witness: None }
    }

    pub fn with_witness(mut self, witness: String) -> Self {
        self.witness = Some(witness);
        self
    }
}

/// A bundle of check items produced by one operation.
#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    /// True when no asserted item failed (unmet hypotheses are not failures).
    pub fn no_failures(&self) -> bool {
        self.items.iter().all(|i| i.verdict != Verdict::Fails)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.verdict == Verdict::Fails)
    }
}
