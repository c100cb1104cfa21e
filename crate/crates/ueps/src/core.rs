//! Shared domain types: search bounds, seeded random streams, swarm state,
//! and the linearly decaying inertia weight used by both optimizers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the generator backing [`RngStream`], recorded in result schemas so
/// runs are reproducible across builds of this implementation.
pub const RNG_ALGORITHM: &str = "chacha8";

/// A rectangular search region `[lower, upper]` per component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoundsBox {
    /// Builds a box, requiring equal lengths, dimension >= 1, and
    /// `lower[i] < upper[i]` for every component.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::InvalidParameter("bounds must have dimension >= 1".into()));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::NonFiniteInput { index: i });
            }
            if lo >= hi {
                return Err(Error::InvalidParameter(format!(
                    "lower[{i}] = {lo} must be < upper[{i}] = {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// True when every component of `x` lies in `[lower, upper]` (inclusive).
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(&self.lower)
                .zip(&self.upper)
                .all(|((&xi, &lo), &hi)| lo <= xi && xi <= hi)
    }

    /// Componentwise clamp of `x` into the box. Idempotent.
    pub fn clip(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(x.iter()
            .zip(&self.lower)
            .zip(&self.upper)
            .map(|((&xi, &lo), &hi)| xi.min(hi).max(lo))
            .collect())
    }

    /// In-place clamp for optimizer inner loops; `x` must already have the
    /// right dimension.
    pub(crate) fn clip_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        for ((xi, &lo), &hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *xi = xi.min(hi).max(lo);
        }
    }

    /// One uniform sample inside the box, consuming one draw per component in
    /// component order.
    pub fn sample(&self, rng: &mut RngStream) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| lo + rng.next_f64() * (hi - lo))
            .collect()
    }
}

/// Componentwise clamp of `x` into `bounds`.
pub fn clip_to_bounds(x: &[f64], bounds: &BoundsBox) -> Result<Vec<f64>> {
    bounds.clip(x)
}

/// Linearly decaying inertia weight: `w_max - (w_max - w_min) * t / t_max`.
///
/// Starts at `w_max` (t = 0) and reaches `w_min` at `t = t_max`.
pub fn inertia_weight(t: usize, w_min: f64, w_max: f64, t_max: usize) -> Result<f64> {
    if t_max < 1 {
        return Err(Error::InvalidParameter("t_max must be >= 1".into()));
    }
    if t > t_max {
        return Err(Error::InvalidParameter(format!(
            "iteration {t} out of range 0..={t_max}"
        )));
    }
    if !(0.0 <= w_min && w_min <= w_max) {
        return Err(Error::InvalidParameter(format!(
            "inertia bounds must satisfy 0 <= w_min <= w_max, got [{w_min}, {w_max}]"
        )));
    }
    Ok(w_max - (w_max - w_min) * t as f64 / t_max as f64)
}

/// A seeded stream of uniform draws on `[0, 1)`.
///
/// Identical seeds produce bit-identical sequences. The generator is ChaCha8
/// (see [`RNG_ALGORITHM`]); each optimizer run owns exactly one stream and
/// consumes draws in a canonical, documented order.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Next uniform draw on `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}

/// Per-iteration best-so-far objective values of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProgressTrace(Vec<f64>);

impl ProgressTrace {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn with_capacity(n: usize) -> Self {
        Self(Vec::with_capacity(n))
    }

    pub fn push(&mut self, best_so_far: f64) {
        self.0.push(best_so_far);
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<f64> {
        self.0.last().copied()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[1] <= w[0])
    }

    pub(crate) fn clear(&mut self) {
        self.0.clear();
    }
}

impl Default for ProgressTrace {
    fn default() -> Self {
        Self::new()
    }
}

/// Outcome of a single optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub seed: u64,
    pub best_pos: Vec<f64>,
    pub best_val: f64,
    pub wall_time_s: f64,
    pub evaluations: u64,
    pub trace: ProgressTrace,
}

/// Positions, velocities, and best-known points of a swarm at one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    pub(crate) positions: Vec<Vec<f64>>,
    pub(crate) velocities: Vec<Vec<f64>>,
    pub(crate) personal_best_pos: Vec<Vec<f64>>,
    pub(crate) personal_best_val: Vec<f64>,
    pub(crate) global_best_pos: Vec<f64>,
    pub(crate) global_best_val: f64,
    pub(crate) iteration: usize,
}

impl SwarmState {
    /// Initializes a swarm with uniform random positions inside `bounds` and
    /// zero velocities. Positions are drawn first (particle-major, component
    /// order within a particle), then evaluated in particle order; personal
    /// bests start at the initial points and the global best is the minimum
    /// personal best (lowest index on ties).
    pub fn init_uniform<F>(
        bounds: &BoundsBox,
        n_particles: usize,
        rng: &mut RngStream,
        mut eval: F,
    ) -> Result<Self>
    where
        F: FnMut(&[f64]) -> Result<f64>,
    {
        if n_particles == 0 {
            return Err(Error::InvalidParameter("n_particles must be >= 1".into()));
        }
        let positions: Vec<Vec<f64>> = (0..n_particles).map(|_| bounds.sample(rng)).collect();
        let mut personal_best_val = Vec::with_capacity(n_particles);
        for (i, x) in positions.iter().enumerate() {
            let f = eval(x)?;
            if !f.is_finite() {
                return Err(Error::NonFiniteFitness {
                    particle: i,
                    value: f,
                });
            }
            personal_best_val.push(f);
        }
        let velocities = vec![vec![0.0; bounds.dim()]; n_particles];
        let personal_best_pos = positions.clone();
        let gi = argmin_first(&personal_best_val);
        let global_best_pos = personal_best_pos[gi].clone();
        let global_best_val = personal_best_val[gi];
        Ok(Self {
            positions,
            velocities,
            personal_best_pos,
            personal_best_val,
            global_best_pos,
            global_best_val,
            iteration: 0,
        })
    }

    pub fn n_particles(&self) -> usize {
        self.positions.len()
    }

    pub fn dim(&self) -> usize {
        self.global_best_pos.len()
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn positions(&self) -> &[Vec<f64>] {
        &self.positions
    }

    pub fn velocities(&self) -> &[Vec<f64>] {
        &self.velocities
    }

    pub fn personal_best_positions(&self) -> &[Vec<f64>] {
        &self.personal_best_pos
    }

    pub fn personal_best_values(&self) -> &[f64] {
        &self.personal_best_val
    }

    pub fn global_best_pos(&self) -> &[f64] {
        &self.global_best_pos
    }

    pub fn global_best_val(&self) -> f64 {
        self.global_best_val
    }

    /// Updates personal bests from freshly evaluated positions (strict
    /// improvement only; ties keep the incumbent) and recomputes the global
    /// best as the minimum personal best, lowest index on ties.
    pub(crate) fn update_bests(&mut self, new_values: &[f64]) -> Result<()> {
        for (i, &f) in new_values.iter().enumerate() {
            if !f.is_finite() {
                return Err(Error::NonFiniteFitness {
                    particle: i,
                    value: f,
                });
            }
            if f < self.personal_best_val[i] {
                self.personal_best_val[i] = f;
                self.personal_best_pos[i].copy_from_slice(&self.positions[i]);
            }
        }
        let gi = argmin_first(&self.personal_best_val);
        self.global_best_pos.copy_from_slice(&self.personal_best_pos[gi]);
        self.global_best_val = self.personal_best_val[gi];
        Ok(())
    }

    /// Verifies the structural invariants: consistent shapes, positions inside
    /// the bounds, and the global best equal to the minimum personal best
    /// (lowest index on ties).
    pub fn check_invariants(&self, bounds: &BoundsBox) -> std::result::Result<(), String> {
        let n = self.positions.len();
        let d = bounds.dim();
        if self.velocities.len() != n || self.personal_best_pos.len() != n {
            return Err("row counts disagree".into());
        }
        if self.personal_best_val.len() != n {
            return Err("personal best values length disagrees".into());
        }
        for (i, row) in self.positions.iter().enumerate() {
            if row.len() != d {
                return Err(format!("position {i} has wrong dimension"));
            }
            if !bounds.contains(row) {
                return Err(format!("position {i} escapes bounds: {row:?}"));
            }
        }
        let gi = argmin_first(&self.personal_best_val);
        if self.global_best_val != self.personal_best_val[gi] {
            return Err(format!(
                "global best value {} != min personal best {}",
                self.global_best_val, self.personal_best_val[gi]
            ));
        }
        if self.global_best_pos != self.personal_best_pos[gi] {
            return Err("global best position is not the lowest-index argmin row".into());
        }
        Ok(())
    }
}

/// Index of the smallest value, lowest index on ties.
pub(crate) fn argmin_first(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}
