//! Raw benchmark-function formulas.
//!
//! Two-dimensional entries index `x[0]`, `x[1]` directly; the registry pins
//! each function's arity, so length checks live in `ObjectiveSpec::evaluate`.

use std::f64::consts::{E, PI};

pub(crate) fn ackley(x: &[f64]) -> f64 {
    let a = -20.0 * (-0.2 * (0.5 * (x[0] * x[0] + x[1] * x[1])).sqrt()).exp();
    let b = -(0.5 * ((2.0 * PI * x[0]).cos() + (2.0 * PI * x[1]).cos())).exp();
    a + b + E + 20.0
}

pub(crate) fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|xi| xi * xi).sum()
}

/// Generalized Rosenbrock; the registry uses it at d = 2.
pub(crate) fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

pub(crate) fn beale(x: &[f64]) -> f64 {
    (1.5 - x[0] + x[0] * x[1]).powi(2)
        + (2.25 - x[0] + x[0] * x[1] * x[1]).powi(2)
        + (2.625 - x[0] + x[0] * x[1] * x[1] * x[1]).powi(2)
}

pub(crate) fn booth(x: &[f64]) -> f64 {
    (x[0] + 2.0 * x[1] - 7.0).powi(2) + (2.0 * x[0] + x[1] - 5.0).powi(2)
}

pub(crate) fn bukin_n6(x: &[f64]) -> f64 {
    100.0 * (x[1] - 0.01 * x[0] * x[0]).abs().sqrt() + 0.01 * (x[0] + 10.0).abs()
}

pub(crate) fn matyas(x: &[f64]) -> f64 {
    0.26 * (x[0] * x[0] + x[1] * x[1]) - 0.48 * x[0] * x[1]
}

pub(crate) fn levy(x: &[f64]) -> f64 {
    let s3y = (3.0 * PI * x[1]).sin().powi(2);
    (3.0 * PI * x[0]).sin().powi(2)
        + (x[0] - 1.0).powi(2) * (1.0 + s3y)
        + (x[1] - 1.0).powi(2) * (1.0 + s3y)
}

pub(crate) fn easom(x: &[f64]) -> f64 {
    -x[0].cos() * x[1].cos() * (-((x[0] - PI).powi(2) + (x[1] - PI).powi(2))).exp()
}

pub(crate) fn eggholder(x: &[f64]) -> f64 {
    let f1 = -(x[1] + 47.0) * (x[0] / 2.0 + (x[1] + 47.0)).abs().sqrt().sin();
    let f2 = -x[0] * (x[0] - (x[1] + 47.0)).abs().sin();
    f1 + f2
}

pub(crate) fn mccormick(x: &[f64]) -> f64 {
    (x[0] + x[1]).sin() + (x[0] - x[1]).powi(2) - 1.5 * x[0] + 2.5 * x[1] + 1.0
}

pub(crate) fn eggcrate(x: &[f64]) -> f64 {
    x[0] * x[0] + x[1] * x[1] + 25.0 * (x[0].sin().powi(2) + x[1].sin().powi(2))
}

pub(crate) fn michalewicz(x: &[f64]) -> f64 {
    -x.iter()
        .enumerate()
        .map(|(i, &xi)| xi.sin() * ((i + 1) as f64 * xi * xi / PI).sin().powi(20))
        .sum::<f64>()
}

/// Pressure-vessel material/forming/welding cost (coefficient 0.6224 on the
/// first term; the 0.6244 variant does not reproduce the reference cost).
pub(crate) fn pressure_vessel_cost(x: &[f64]) -> f64 {
    0.6224 * x[0] * x[2] * x[3]
        + 1.7781 * x[1] * x[2] * x[2]
        + 3.1661 * x[0] * x[0] * x[3]
        + 19.84 * x[0] * x[0] * x[2]
}

/// Tension/compression spring weight: (x3 + 2) * x2 * x1^2.
pub(crate) fn spring_weight(x: &[f64]) -> f64 {
    (x[2] + 2.0) * x[1] * x[0] * x[0]
}
