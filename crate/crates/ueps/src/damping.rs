//! Closed-form solutions of the damped oscillator
//! `m x'' + c x' + k x = 0`, the physical analogy behind the decaying
//! oscillation coefficient of the optimizer. The damping ratio
//! `gamma = c / (2m)` against the natural frequency `omega0 = sqrt(k/m)`
//! selects one of three regimes, each with its own closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative half-width of the band around `gamma = omega0` classified as
/// critically damped.
const REGIME_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Overdamped,
    Critical,
    Underdamped,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::Overdamped => "overdamped",
            Regime::Critical => "critical",
            Regime::Underdamped => "underdamped",
        };
        f.write_str(s)
    }
}

/// Mass/damping/stiffness of an oscillator plus the amplitude and phase
/// constants of its closed-form solution.
///
/// The amplitudes are the direct coefficients of each regime's closed form
/// (not initial conditions): underdamped uses `amp_a` and `phase`, critical
/// uses `amp_a` and `amp_b`, overdamped uses `amp_a` and `amp_b` as the
/// coefficients of the slow and fast decaying exponentials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams {
    pub mass: f64,
    pub damping_c: f64,
    pub stiffness: f64,
    pub amp_a: f64,
    pub amp_b: f64,
    pub phase: f64,
}

impl OscillatorParams {
    pub fn new(
        mass: f64,
        damping_c: f64,
        stiffness: f64,
        amp_a: f64,
        amp_b: f64,
        phase: f64,
    ) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mass must be positive, got {mass}"
            )));
        }
        if !(damping_c >= 0.0) || !damping_c.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "damping coefficient must be >= 0, got {damping_c}"
            )));
        }
        if !(stiffness > 0.0) || !stiffness.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "stiffness must be positive, got {stiffness}"
            )));
        }
        for (name, v) in [("amp_a", amp_a), ("amp_b", amp_b), ("phase", phase)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        Ok(Self {
            mass,
            damping_c,
            stiffness,
            amp_a,
            amp_b,
            phase,
        })
    }

    /// Unit-mass oscillator with the given damping ratio and natural
    /// frequency directly (`c = 2 gamma`, `k = omega0^2`), convenient for
    /// regenerating curves parameterized by `gamma` and `omega0`.
    pub fn from_rates(gamma: f64, omega0: f64, amp_a: f64, amp_b: f64, phase: f64) -> Result<Self> {
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "omega0 must be positive, got {omega0}"
            )));
        }
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gamma must be >= 0, got {gamma}"
            )));
        }
        Self::new(1.0, 2.0 * gamma, omega0 * omega0, amp_a, amp_b, phase)
    }

    /// Natural (undamped) angular frequency `sqrt(k/m)`.
    pub fn omega0(&self) -> f64 {
        (self.stiffness / self.mass).sqrt()
    }

    /// Damping ratio `c / (2m)`.
    pub fn gamma(&self) -> f64 {
        self.damping_c / (2.0 * self.mass)
    }

    /// Damped oscillation frequency `sqrt(omega0^2 - gamma^2)`; only
    /// meaningful in the underdamped regime.
    pub fn omega_d(&self) -> f64 {
        let w0 = self.omega0();
        let g = self.gamma();
        (w0 * w0 - g * g).sqrt()
    }

    /// Regime classification with a relative tolerance around the critical
    /// boundary: overdamped iff `gamma > omega0 + eps`, critical iff
    /// `|gamma - omega0| <= eps`, underdamped otherwise.
    pub fn regime(&self) -> Regime {
        let g = self.gamma();
        let w0 = self.omega0();
        let eps = REGIME_EPS * g.max(w0);
        if g > w0 + eps {
            Regime::Overdamped
        } else if (g - w0).abs() <= eps {
            Regime::Critical
        } else {
            Regime::Underdamped
        }
    }

    /// Closed-form displacement at time `t` for the classified regime.
    pub fn position(&self, t: f64) -> f64 {
        let g = self.gamma();
        match self.regime() {
            Regime::Underdamped => {
                self.amp_a * (-g * t).exp() * (self.omega_d() * t + self.phase).cos()
            }
            Regime::Critical => (self.amp_a + self.amp_b * t) * (-g * t).exp(),
            Regime::Overdamped => {
                let w0 = self.omega0();
                let root = (g * g - w0 * w0).sqrt();
                let lambda1 = -g + root;
                let lambda2 = -g - root;
                self.amp_a * (lambda1 * t).exp() + self.amp_b * (lambda2 * t).exp()
            }
        }
    }

    /// `n_samples` evenly spaced `(t, x)` pairs over `[t_start, t_end]`,
    /// endpoints included.
    pub fn sample_curve(
        &self,
        t_start: f64,
        t_end: f64,
        n_samples: usize,
    ) -> Result<Vec<(f64, f64)>> {
        if !(t_start < t_end) {
            return Err(Error::InvalidParameter(format!(
                "need t_start < t_end, got [{t_start}, {t_end}]"
            )));
        }
        if n_samples < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 samples, got {n_samples}"
            )));
        }
        let step = (t_end - t_start) / (n_samples - 1) as f64;
        Ok((0..n_samples)
            .map(|i| {
                let t = if i == n_samples - 1 {
                    t_end
                } else {
                    t_start + i as f64 * step
                };
                (t, self.position(t))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn classify(m: f64, c: f64, k: f64) -> Regime {
        OscillatorParams::new(m, c, k, 1.0, 0.0, 0.0).unwrap().regime()
    }

    #[test]
    fn regime_examples() {
        assert_eq!(classify(1.0, 4.0, 1.0), Regime::Overdamped);
        assert_eq!(classify(1.0, 2.0, 1.0), Regime::Critical);
        assert_eq!(classify(1.0, 0.2, 1.0), Regime::Underdamped);
        assert_eq!(classify(1.0, 0.0, 1.0), Regime::Underdamped);
    }

    #[test]
    fn position_at_zero_is_amp_a() {
        let under = OscillatorParams::new(1.0, 0.2, 1.0, 1.25, 0.0, 0.0).unwrap();
        assert_eq!(under.position(0.0), 1.25);
        let critical = OscillatorParams::new(1.0, 2.0, 1.0, 0.75, 3.0, 0.0).unwrap();
        assert_eq!(critical.position(0.0), 0.75);
    }

    #[test]
    fn undamped_limit_is_pure_cosine() {
        let p = OscillatorParams::new(1.0, 0.0, 1.0, 1.0, 0.0, 0.0).unwrap();
        assert!((p.position(PI) + 1.0).abs() < 1e-12);
        assert!((p.position(2.0 * PI) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn curve_endpoints_and_degenerate_grid() {
        let p = OscillatorParams::new(1.0, 0.2, 1.0, 1.0, 0.0, 0.0).unwrap();
        let two = p.sample_curve(0.0, 3.0, 2).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].0, 0.0);
        assert_eq!(two[1].0, 3.0);
        assert_eq!(two[0].1, p.position(0.0));
        assert_eq!(two[1].1, p.position(3.0));

        assert!(p.sample_curve(3.0, 0.0, 10).is_err());
        assert!(p.sample_curve(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn undamped_curve_bounded_by_amplitude() {
        let p = OscillatorParams::new(1.0, 0.0, 2.5, 1.0, 0.0, 0.0).unwrap();
        for (_, x) in p.sample_curve(0.0, 50.0, 2000).unwrap() {
            assert!(x.abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn underdamped_envelope_bound() {
        let p = OscillatorParams::new(0.5, 0.4, 3.0, 1.7, 0.0, 0.3).unwrap();
        assert_eq!(p.regime(), Regime::Underdamped);
        let g = p.gamma();
        for (t, x) in p.sample_curve(0.0, 20.0, 5000).unwrap() {
            assert!(x.abs() <= 1.7 * (-g * t).exp() + 1e-12);
        }
    }

    #[test]
    fn overdamped_roots_are_negative() {
        let p = OscillatorParams::new(1.0, 4.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        let g = p.gamma();
        let w0 = p.omega0();
        let root = (g * g - w0 * w0).sqrt();
        assert!(-g + root < 0.0);
        assert!(-g - root < 0.0);
        // Monotone decay toward zero for positive coefficients.
        let xs = p.sample_curve(0.0, 10.0, 100).unwrap();
        for w in xs.windows(2) {
            assert!(w[1].1 <= w[0].1 + 1e-15);
            assert!(w[1].1 > 0.0);
        }
    }

    #[test]
    fn rate_constructor_matches_physical_form() {
        let a = OscillatorParams::from_rates(0.1, 2.0, 1.0, 0.0, 0.0).unwrap();
        assert!((a.gamma() - 0.1).abs() < 1e-15);
        assert!((a.omega0() - 2.0).abs() < 1e-15);
        assert_eq!(a.regime(), Regime::Underdamped);
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(OscillatorParams::new(0.0, 1.0, 1.0, 1.0, 0.0, 0.0).is_err());
        assert!(OscillatorParams::new(1.0, -1.0, 1.0, 1.0, 0.0, 0.0).is_err());
        assert!(OscillatorParams::new(1.0, 1.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(OscillatorParams::new(1.0, 1.0, 1.0, f64::NAN, 0.0, 0.0).is_err());
        assert!(OscillatorParams::from_rates(-0.1, 1.0, 1.0, 0.0, 0.0).is_err());
        assert!(OscillatorParams::from_rates(1.0, 0.0, 1.0, 0.0, 0.0).is_err());
    }

    /// Central-difference residual of the governing equation at time `t`.
    fn ode_residual(p: &OscillatorParams, t: f64) -> f64 {
        let h = 1e-5;
        let x0 = p.position(t - h);
        let x1 = p.position(t);
        let x2 = p.position(t + h);
        let dx = (x2 - x0) / (2.0 * h);
        let ddx = (x2 - 2.0 * x1 + x0) / (h * h);
        p.mass * ddx + p.damping_c * dx + p.stiffness * x1
    }

    fn uniform(rng: &mut crate::core::RngStream, lo: f64, hi: f64) -> f64 {
        lo + rng.next_f64() * (hi - lo)
    }

    #[test]
    fn closed_forms_satisfy_the_ode() {
        let mut rng = crate::core::RngStream::new(2024);
        for regime in [Regime::Underdamped, Regime::Critical, Regime::Overdamped] {
            for _ in 0..100 {
                let m = uniform(&mut rng, 0.5, 2.0);
                let k = uniform(&mut rng, 0.5, 4.0);
                let w0 = (k / m).sqrt();
                let gamma = match regime {
                    Regime::Underdamped => uniform(&mut rng, 0.0, 0.9) * w0,
                    Regime::Critical => w0,
                    Regime::Overdamped => uniform(&mut rng, 1.1, 3.0) * w0,
                };
                let p = OscillatorParams::new(
                    m,
                    2.0 * m * gamma,
                    k,
                    uniform(&mut rng, -2.0, 2.0),
                    uniform(&mut rng, -2.0, 2.0),
                    uniform(&mut rng, -PI, PI),
                )
                .unwrap();
                assert_eq!(p.regime(), regime, "sampled {p:?}");
                let tol = 1e-4 * (k * p.amp_a.abs()).max(1.0);
                for i in 0..20 {
                    let t = 0.1 + 4.9 * i as f64 / 19.0;
                    let r = ode_residual(&p, t);
                    assert!(r.abs() <= tol, "{regime:?} residual {r} at t={t} for {p:?}");
                }
            }
        }
    }

    #[test]
    fn overdamped_and_critical_do_not_oscillate() {
        let mut rng = crate::core::RngStream::new(31);
        for _ in 0..50 {
            let m = uniform(&mut rng, 0.5, 2.0);
            let k = uniform(&mut rng, 0.5, 4.0);
            let w0 = (k / m).sqrt();
            for gamma in [w0, uniform(&mut rng, 1.1, 3.0) * w0] {
                let p = OscillatorParams::new(
                    m,
                    2.0 * m * gamma,
                    k,
                    uniform(&mut rng, 0.1, 2.0),
                    uniform(&mut rng, 0.0, 2.0),
                    0.0,
                )
                .unwrap();
                let horizon = 10.0 / p.gamma();
                for (_, x) in p.sample_curve(0.0, horizon, 10_000).unwrap() {
                    assert!(x > 0.0, "sign change in {:?} regime: {p:?}", p.regime());
                }
            }
        }
    }

    #[test]
    fn classification_is_scale_invariant() {
        // Power-of-two scalings are exact in floating point, so the scaled
        // system classifies identically, bit for bit.
        let mut rng = crate::core::RngStream::new(8);
        for _ in 0..200 {
            let m = uniform(&mut rng, 0.5, 2.0);
            let k = uniform(&mut rng, 0.5, 4.0);
            let c = uniform(&mut rng, 0.0, 6.0);
            let p = OscillatorParams::new(m, c, k, 1.0, 0.0, 0.0).unwrap();
            for s in [0.25, 0.5, 2.0, 8.0, 256.0] {
                let q = OscillatorParams::new(s * m, s * c, s * k, 1.0, 0.0, 0.0).unwrap();
                assert_eq!(p.gamma().to_bits(), q.gamma().to_bits());
                assert_eq!(p.regime(), q.regime());
            }
        }
    }
}
