//! Underdamped particle swarm optimization.
//!
//! Each particle is pulled toward the global best by a decaying oscillation
//! term `A * k(r1) * exp(-b t)` whose random multiplier `k` lets particles
//! overshoot the target and explore past it, while an additional random
//! perturbation keeps early iterations diffuse. Two published variants of the
//! update rule differ in the cosine offset of `k` and in whether the
//! perturbation strength is constant or decays geometrically; both are
//! selectable, and the defaults follow the variant that produced the
//! reference results.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::core::{inertia_weight, RngStream, RunResult, SwarmState};
use crate::error::{Error, Result};
use crate::objectives::ObjectiveSpec;
use crate::runner::run_swarm;

/// Multiplier shape for the oscillation term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OscillationKernel {
    /// `A * (2 - cos(2 pi r1)) * exp(-b t)`, range `[A, 3A] * exp(-b t)`.
    Text,
    /// `A * (1 - cos(2 pi r1)) * exp(-b t)`, range `[0, 2A] * exp(-b t)`.
    Code,
}

/// Time behavior of the perturbation strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbationSchedule {
    /// `alpha` at every iteration.
    Constant,
    /// `alpha^t`; starts at 1 and decays. With `alpha = 0` the term is
    /// identically zero (the `t = 0` power would otherwise resurrect it).
    Geometric,
}

/// How many random scalars each update consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomnessGranularity {
    /// One `r1` and one `r2` scalar per particle, broadcast over dimensions.
    PerParticle,
    /// Fresh `r1` and `r2` scalars per component.
    PerDimension,
}

/// Full UEPS hyperparameter bundle.
///
/// Defaults reproduce the reference configuration: `A = 1`, `b = 0.007`,
/// `alpha = 0.8`, inertia decaying 0.9 -> 0.4, 50 particles, 100 iterations,
/// with the `Code` kernel, geometric perturbation, and per-particle draws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UepsParams {
    /// Oscillation amplitude `A`; how far a particle can move per iteration.
    pub amplitude: f64,
    /// Damping rate `b`; oscillations shrink by `exp(-b)` per iteration.
    pub damping_rate: f64,
    /// Perturbation strength `alpha`.
    pub perturbation: f64,
    pub w_min: f64,
    pub w_max: f64,
    pub n_particles: usize,
    pub max_iter: usize,
    pub kernel: OscillationKernel,
    pub schedule: PerturbationSchedule,
    pub granularity: RandomnessGranularity,
}

impl Default for UepsParams {
    fn default() -> Self {
        Self {
            amplitude: 1.0,
            damping_rate: 0.007,
            perturbation: 0.8,
            w_min: 0.4,
            w_max: 0.9,
            n_particles: 50,
            max_iter: 100,
            kernel: OscillationKernel::Code,
            schedule: PerturbationSchedule::Geometric,
            granularity: RandomnessGranularity::PerParticle,
        }
    }
}

impl UepsParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.amplitude > 0.0) || !self.amplitude.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "amplitude must be positive, got {}",
                self.amplitude
            )));
        }
        if !(self.damping_rate >= 0.0) || !self.damping_rate.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "damping rate must be >= 0, got {}",
                self.damping_rate
            )));
        }
        if !(self.perturbation >= 0.0) || !self.perturbation.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "perturbation must be >= 0, got {}",
                self.perturbation
            )));
        }
        if !(0.0 <= self.w_min && self.w_min <= self.w_max) {
            return Err(Error::InvalidParameter(format!(
                "inertia bounds must satisfy 0 <= w_min <= w_max, got [{}, {}]",
                self.w_min, self.w_max
            )));
        }
        if self.n_particles == 0 {
            return Err(Error::InvalidParameter("n_particles must be >= 1".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be >= 1".into()));
        }
        Ok(())
    }
}

/// Decaying oscillation multiplier applied to `(x* - x_i)` at iteration `t`.
pub fn oscillation_coefficient(
    amplitude: f64,
    damping_rate: f64,
    t: usize,
    r1: f64,
    kernel: OscillationKernel,
) -> f64 {
    let offset = match kernel {
        OscillationKernel::Text => 2.0,
        OscillationKernel::Code => 1.0,
    };
    amplitude * (offset - (TAU * r1).cos()) * (-damping_rate * t as f64).exp()
}

/// Perturbation strength at iteration `t`.
fn perturbation_factor(alpha: f64, t: usize, schedule: PerturbationSchedule) -> f64 {
    match schedule {
        PerturbationSchedule::Constant => alpha,
        PerturbationSchedule::Geometric => {
            if alpha == 0.0 {
                0.0
            } else {
                alpha.powi(t as i32)
            }
        }
    }
}

/// Number of scalars per draw block for this granularity.
fn block_len(granularity: RandomnessGranularity, n: usize, d: usize) -> usize {
    match granularity {
        RandomnessGranularity::PerParticle => n,
        RandomnessGranularity::PerDimension => n * d,
    }
}

fn draw_block(rng: &mut RngStream, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.next_f64()).collect()
}

/// Velocity and position update for every particle, given already-drawn
/// blocks. `r1` and `r2` are particle-major (one scalar per particle, or `d`
/// consecutive scalars per particle for per-dimension granularity). The
/// global best is read once and held fixed for the whole sweep.
fn apply_step(
    state: &mut SwarmState,
    params: &UepsParams,
    w: f64,
    pert: f64,
    t: usize,
    r1: &[f64],
    r2: &[f64],
    objective: &ObjectiveSpec,
) {
    let d = state.dim();
    let gbest = state.global_best_pos.clone();
    for i in 0..state.n_particles() {
        let per_particle_osc = match params.granularity {
            RandomnessGranularity::PerParticle => Some(oscillation_coefficient(
                params.amplitude,
                params.damping_rate,
                t,
                r1[i],
                params.kernel,
            )),
            RandomnessGranularity::PerDimension => None,
        };
        for j in 0..d {
            let osc = per_particle_osc.unwrap_or_else(|| {
                oscillation_coefficient(
                    params.amplitude,
                    params.damping_rate,
                    t,
                    r1[i * d + j],
                    params.kernel,
                )
            });
            let r2_ij = match params.granularity {
                RandomnessGranularity::PerParticle => r2[i],
                RandomnessGranularity::PerDimension => r2[i * d + j],
            };
            let v = &mut state.velocities[i][j];
            *v = w * *v + osc * (gbest[j] - state.positions[i][j]) + pert * (r2_ij - 0.5);
            state.positions[i][j] += *v;
        }
        objective.bounds().clip_in_place(&mut state.positions[i]);
    }
}

/// One UEPS iteration: draw the `r1` block then the `r2` block (particle
/// order, component order within a particle for per-dimension granularity),
/// update every velocity and clamped position, evaluate, update personal
/// bests on strict improvement, and recompute the global best.
pub fn ueps_step(
    state: &mut SwarmState,
    params: &UepsParams,
    rng: &mut RngStream,
    objective: &ObjectiveSpec,
) -> Result<()> {
    let t = state.iteration();
    if t >= params.max_iter {
        return Err(Error::InvalidParameter(format!(
            "iteration {t} is past max_iter {}",
            params.max_iter
        )));
    }
    if state.dim() != objective.arity() {
        return Err(Error::DimensionMismatch {
            expected: objective.arity(),
            got: state.dim(),
        });
    }
    if state.n_particles() != params.n_particles {
        return Err(Error::InvalidParameter(format!(
            "state has {} particles, params expect {}",
            state.n_particles(),
            params.n_particles
        )));
    }

    let w = inertia_weight(t, params.w_min, params.w_max, params.max_iter)?;
    let pert = perturbation_factor(params.perturbation, t, params.schedule);
    let len = block_len(params.granularity, state.n_particles(), state.dim());
    let r1 = draw_block(rng, len);
    let r2 = draw_block(rng, len);

    apply_step(state, params, w, pert, t, &r1, &r2, objective);

    let values: Vec<f64> = state
        .positions
        .iter()
        .map(|x| objective.evaluate_unchecked(x))
        .collect();
    state.update_bests(&values)?;
    state.iteration += 1;
    debug_assert!(state.check_invariants(objective.bounds()).is_ok());
    Ok(())
}

/// Full UEPS run: uniform random initial positions, zero initial velocities,
/// exactly `max_iter` steps, best-so-far trace per iteration.
///
/// The objective must be unconstrained; apply a penalty wrapper first.
pub fn ueps_run(objective: &ObjectiveSpec, params: &UepsParams, seed: u64) -> Result<RunResult> {
    params.validate()?;
    run_swarm(
        objective,
        params.n_particles,
        params.max_iter,
        seed,
        |state, rng| ueps_step(state, params, rng, objective),
    )
}
