//! Named check results. Every desk check in the crate reduces to comparing
//! two numbers; the report keeps both sides, the signed margin `lhs - rhs`
//! and a verdict judged at an explicit tolerance.

use serde::Serialize;

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Margin within tolerance of zero: the bound is attained.
    Equality,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport<T> {
    pub name: String,
    pub lhs: T,
    pub rhs: T,
    /// Always `lhs - rhs`.
    pub margin: T,
    pub verdict: Verdict,
    pub notes: String,
}

impl<T: Real> CheckReport<T> {
    /// `lhs >= rhs` expected; equality when the margin sits within `tol`.
    pub fn greater_equal(
        name: impl Into<String>,
        lhs: T,
        rhs: T,
        tol: T,
        notes: impl Into<String>,
    ) -> Self {
        let margin = lhs - rhs;
        let verdict = if margin.abs() <= tol {
            Verdict::Equality
        } else if margin > T::zero() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin,
            verdict,
            notes: notes.into(),
        }
    }

    /// `lhs <= rhs` expected.
    pub fn less_equal(
        name: impl Into<String>,
        lhs: T,
        rhs: T,
        tol: T,
        notes: impl Into<String>,
    ) -> Self {
        let margin = lhs - rhs;
        let verdict = if margin.abs() <= tol {
            Verdict::Equality
        } else if margin < T::zero() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin,
            verdict,
            notes: notes.into(),
        }
    }

    /// `lhs == rhs` expected within `tol`.
    pub fn equality(
        name: impl Into<String>,
        lhs: T,
        rhs: T,
        tol: T,
        notes: impl Into<String>,
    ) -> Self {
        let margin = lhs - rhs;
        let verdict = if margin.abs() <= tol {
            Verdict::Equality
        } else {
            Verdict::Fail
        };
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin,
            verdict,
            notes: notes.into(),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::Equality)
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }
}
