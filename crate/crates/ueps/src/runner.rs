//! Common run loop shared by the two optimizers: seeded initialization, a
//! fixed number of steps, best-so-far trace, wall time, and evaluation count.

use std::time::Instant;

use crate::core::{ProgressTrace, RngStream, RunResult, SwarmState};
use crate::error::{Error, Result};
use crate::objectives::ObjectiveSpec;

pub(crate) fn run_swarm<F>(
    objective: &ObjectiveSpec,
    n_particles: usize,
    max_iter: usize,
    seed: u64,
    mut step_fn: F,
) -> Result<RunResult>
where
    F: FnMut(&mut SwarmState, &mut RngStream) -> Result<()>,
{
    if objective.is_constrained() {
        return Err(Error::InvalidConfig(format!(
            "'{}' has unreduced constraints; apply a penalty wrapper before optimizing",
            objective.name()
        )));
    }
    let start = Instant::now();
    let mut rng = RngStream::new(seed);
    let mut state = SwarmState::init_uniform(objective.bounds(), n_particles, &mut rng, |x| {
        Ok(objective.evaluate_unchecked(x))
    })?;
    let mut trace = ProgressTrace::with_capacity(max_iter);
    for _ in 0..max_iter {
        step_fn(&mut state, &mut rng)?;
        trace.push(state.global_best_val());
    }
    Ok(RunResult {
        seed,
        best_pos: state.global_best_pos().to_vec(),
        best_val: state.global_best_val(),
        wall_time_s: start.elapsed().as_secs_f64(),
        evaluations: (n_particles * (max_iter + 1)) as u64,
        trace,
    })
}
