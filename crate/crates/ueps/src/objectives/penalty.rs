//! Constraint-violation accounting and the two penalty transforms that turn a
//! constrained problem into an unconstrained one: a weighted additive penalty
//! and a static feasibility penalty.

use serde::{Deserialize, Serialize};

use super::{ObjectiveSpec, EQUALITY_TOLERANCE};
use crate::error::{Error, Result};

/// Positive weights for the additive penalty, one per constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PenaltyWeights {
    pub inequality_weights: Vec<f64>,
    pub equality_weights: Vec<f64>,
}

impl PenaltyWeights {
    pub fn new(inequality_weights: Vec<f64>, equality_weights: Vec<f64>) -> Result<Self> {
        if inequality_weights.iter().chain(&equality_weights).any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidParameter(
                "penalty weights must all be positive".into(),
            ));
        }
        Ok(Self {
            inequality_weights,
            equality_weights,
        })
    }

    /// Unit weight for every constraint of `spec`.
    pub fn unit(spec: &ObjectiveSpec) -> Self {
        Self {
            inequality_weights: vec![1.0; spec.inequality_constraints().len()],
            equality_weights: vec![1.0; spec.equality_constraints().len()],
        }
    }
}

/// Per-constraint violation magnitudes at one point.
///
/// `satisfied_count` counts excess entries that are exactly zero; equality
/// tolerances are applied by the consumers that need them.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    /// `max(g_k(x), 0)` per inequality constraint.
    pub inequality_excess: Vec<f64>,
    /// `|h_j(x)|` per equality constraint.
    pub equality_excess: Vec<f64>,
    /// Number of excess entries equal to zero.
    pub satisfied_count: usize,
    /// Total number of constraints.
    pub total_count: usize,
}

impl ViolationReport {
    /// Satisfied-constraint count with equalities allowed `|h| <= eq_tol`.
    pub fn satisfied_within(&self, eq_tol: f64) -> usize {
        let ineq = self.inequality_excess.iter().filter(|&&e| e == 0.0).count();
        let eq = self.equality_excess.iter().filter(|&&e| e <= eq_tol).count();
        ineq + eq
    }

    /// Sum of excesses weighted per constraint; the additive penalty term.
    pub fn weighted_sum(&self, weights: &PenaltyWeights) -> f64 {
        let ineq: f64 = self
            .inequality_excess
            .iter()
            .zip(&weights.inequality_weights)
            .map(|(e, w)| w * e)
            .sum();
        let eq: f64 = self
            .equality_excess
            .iter()
            .zip(&weights.equality_weights)
            .map(|(e, w)| w * e)
            .sum();
        ineq + eq
    }
}

/// Constraint diagnostics at a candidate point, for human-readable output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// Raw (unpenalized) objective value.
    pub raw_objective: f64,
    /// Raw `g_k(x)` values (satisfied when <= 0).
    pub inequality_values: Vec<f64>,
    /// `max(g_k(x), 0)` per inequality constraint.
    pub inequality_excess: Vec<f64>,
    /// `|h_j(x)|` per equality constraint.
    pub equality_excess: Vec<f64>,
    pub satisfied_count: usize,
    pub total_count: usize,
    /// Largest excess relative to its constraint's characteristic scale.
    pub max_relative_violation: f64,
    /// True when `max_relative_violation` is within the reporting tolerance.
    pub feasible: bool,
}

impl ObjectiveSpec {
    /// Measures how far `x` violates each constraint.
    pub fn violations(&self, x: &[f64]) -> Result<ViolationReport> {
        self.check_input(x)?;
        let inequality_excess: Vec<f64> = self
            .inequality_constraints()
            .iter()
            .map(|c| c.value(x).max(0.0))
            .collect();
        let equality_excess: Vec<f64> = self
            .equality_constraints()
            .iter()
            .map(|c| c.value(x).abs())
            .collect();
        let satisfied_count = inequality_excess
            .iter()
            .chain(&equality_excess)
            .filter(|&&e| e == 0.0)
            .count();
        let total_count = inequality_excess.len() + equality_excess.len();
        Ok(ViolationReport {
            inequality_excess,
            equality_excess,
            satisfied_count,
            total_count,
        })
    }

    /// Constraint diagnostics at `x` using `rtol` as the relative reporting
    /// tolerance (see [`super::DEFAULT_FEASIBILITY_RTOL`]).
    pub fn feasibility(&self, x: &[f64], rtol: f64) -> Result<FeasibilityReport> {
        let report = self.violations(x)?;
        let inequality_values: Vec<f64> = self
            .inequality_constraints()
            .iter()
            .map(|c| c.value(x))
            .collect();
        let mut max_rel = 0.0_f64;
        for (excess, c) in report.inequality_excess.iter().zip(self.inequality_constraints()) {
            max_rel = max_rel.max(excess / c.scale());
        }
        for (excess, c) in report.equality_excess.iter().zip(self.equality_constraints()) {
            max_rel = max_rel.max(excess / c.scale());
        }
        Ok(FeasibilityReport {
            raw_objective: self.evaluate(x)?,
            inequality_values,
            inequality_excess: report.inequality_excess,
            equality_excess: report.equality_excess,
            satisfied_count: report.satisfied_count,
            total_count: report.total_count,
            max_relative_violation: max_rel,
            feasible: max_rel <= rtol,
        })
    }

    /// Additive penalty transform: the returned unconstrained objective is
    ///
    /// `F(x) = f(x) + sum_i r_i * max(g_i(x), 0) + sum_j c_j * |h_j(x)|`.
    ///
    /// The penalty terms are added exactly once, on top of the raw objective.
    pub fn additive_penalty(&self, weights: &PenaltyWeights) -> Result<ObjectiveSpec> {
        if !self.is_constrained() {
            return Err(Error::InvalidParameter(format!(
                "'{}' has no constraints to penalize",
                self.name()
            )));
        }
        if weights.inequality_weights.len() != self.inequality.len()
            || weights.equality_weights.len() != self.equality.len()
        {
            return Err(Error::InvalidParameter(format!(
                "penalty weights must match constraint counts ({} inequality, {} equality)",
                self.inequality.len(),
                self.equality.len()
            )));
        }
        if weights
            .inequality_weights
            .iter()
            .chain(&weights.equality_weights)
            .any(|&w| !(w > 0.0))
        {
            return Err(Error::InvalidParameter(
                "penalty weights must all be positive".into(),
            ));
        }

        let raw = self.raw.clone();
        let ineq = self.inequality.clone();
        let eq = self.equality.clone();
        let w = weights.clone();
        let wrapped = move |x: &[f64]| {
            let mut f = (raw)(x);
            for (c, wi) in ineq.iter().zip(&w.inequality_weights) {
                f += wi * c.value(x).max(0.0);
            }
            for (c, cj) in eq.iter().zip(&w.equality_weights) {
                f += cj * c.value(x).abs();
            }
            f
        };
        Ok(ObjectiveSpec {
            name: self.name.clone(),
            arity: self.arity,
            raw: std::sync::Arc::new(wrapped),
            bounds: self.bounds.clone(),
            inequality: Vec::new(),
            equality: Vec::new(),
            known_optimum: None,
        })
    }

    /// Static penalty transform: the returned unconstrained objective equals
    /// the raw `f(x)` at feasible points and `K * (1 - s/m)` otherwise, where
    /// `s` is the number of satisfied constraints out of `m`. Equalities count
    /// as satisfied within [`EQUALITY_TOLERANCE`].
    pub fn static_penalty(&self, k: f64) -> Result<ObjectiveSpec> {
        if !self.is_constrained() {
            return Err(Error::InvalidParameter(format!(
                "'{}' has no constraints to penalize",
                self.name()
            )));
        }
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "static penalty constant must be positive and finite, got {k}"
            )));
        }

        let raw = self.raw.clone();
        let ineq = self.inequality.clone();
        let eq = self.equality.clone();
        let m = (ineq.len() + eq.len()) as f64;
        let wrapped = move |x: &[f64]| {
            let mut satisfied = 0usize;
            for c in &ineq {
                if c.value(x) <= 0.0 {
                    satisfied += 1;
                }
            }
            for c in &eq {
                if c.value(x).abs() <= EQUALITY_TOLERANCE {
                    satisfied += 1;
                }
            }
            if satisfied as f64 == m {
                (raw)(x)
            } else {
                k * (1.0 - satisfied as f64 / m)
            }
        };
        Ok(ObjectiveSpec {
            name: self.name.clone(),
            arity: self.arity,
            raw: std::sync::Arc::new(wrapped),
            bounds: self.bounds.clone(),
            inequality: Vec::new(),
            equality: Vec::new(),
            known_optimum: None,
        })
    }
}
