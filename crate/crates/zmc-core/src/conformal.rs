//! The conformal-factor ODE of intrinsic rotational surfaces.
//!
//! For zero mean curvature (after normalizing the homothety constant to
//! `b = 1`) the factor satisfies `rho rho'' - rho'^2 + epsilon e^{4au} = 0`,
//! whose positive solutions are
//! `rho = e^{2au} (-epsilon A e^{Bu} + e^{-Bu} / A) / (2B)` for `A, B > 0`.
//! For constant nonzero mean curvature the second-order ODE
//! `rho rho'' - rho'^2 = epsilon (H^2 rho^4 - b^2 e^{4au})` is integrated
//! numerically.

use crate::ode::{self, AdaptiveOptions, OdeError};
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum ConformalError {
    #[error("A and B must be positive")]
    InvalidCoefficients,
    #[error("epsilon must be +1 or -1")]
    InvalidEpsilon,
    #[error("initial conformal factor must be positive (got {rho0})")]
    NonPositiveInitial { rho0: f64 },
    #[error("no closed-form coefficients fit the initial data")]
    FitFailed,
    #[error("integration failed: {0}")]
    Ode(#[from] OdeError),
}

/// Value and two derivatives of the conformal factor at a point, with a
/// positivity flag for evaluations outside the positivity domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RhoJet {
    pub rho: f64,
    pub d1: f64,
    pub d2: f64,
    pub positive: bool,
}

/// Where the closed form stays positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PositivityDomain {
    AllReals,
    /// Positive for `u < bound`.
    Below(f64),
    /// Positive for `u > bound`.
    Above(f64),
}

/// Closed-form solution family of the zero-mean-curvature factor equation.
#[derive(Clone, Copy, Debug)]
pub struct ConformalFactor {
    pub a: f64,
    pub big_a: f64,
    pub big_b: f64,
    pub epsilon: f64,
}

impl ConformalFactor {
    pub fn new(a: f64, big_a: f64, big_b: f64, epsilon: f64) -> Result<Self, ConformalError> {
        if !(big_a > 0.0) || !(big_b > 0.0) {
            return Err(ConformalError::InvalidCoefficients);
        }
        if epsilon.abs() != 1.0 {
            return Err(ConformalError::InvalidEpsilon);
        }
        Ok(ConformalFactor { a, big_a, big_b, epsilon })
    }

    /// `rho = p e^{su} + q e^{tu}` with `p = -epsilon A/(2B)`, `s = 2a + B`,
    /// `q = 1/(2AB)`, `t = 2a - B`.
    pub fn eval(&self, u: f64) -> RhoJet {
        signed_rho_jet(self.a, self.big_a, self.big_b, self.epsilon, u)
    }

    pub fn positivity_domain(&self) -> PositivityDomain {
        if self.epsilon < 0.0 {
            PositivityDomain::AllReals
        } else {
            PositivityDomain::Below(-self.big_a.ln() / self.big_b)
        }
    }
}

/// The raw (signed) closed form; callers that need positivity should check
/// the `positive` flag. Accepts `b_exp` of either sign, which the surface
/// catalog uses for the `B = -2a` branch.
pub(crate) fn signed_rho_jet(a: f64, big_a: f64, b_exp: f64, epsilon: f64, u: f64) -> RhoJet {
    let p = -epsilon * big_a / (2.0 * b_exp);
    let q = 1.0 / (2.0 * big_a * b_exp);
    let s = 2.0 * a + b_exp;
    let t = 2.0 * a - b_exp;
    let es = (s * u).exp();
    let et = (t * u).exp();
    let rho = p * es + q * et;
    RhoJet {
        rho,
        d1: p * s * es + q * t * et,
        d2: p * s * s * es + q * t * t * et,
        positive: rho > 0.0,
    }
}

/// Evaluate the closed form (value and derivatives) at `u`. `A, B > 0`.
pub fn rho_closed_form(
    a: f64,
    big_a: f64,
    big_b: f64,
    epsilon: f64,
    u: f64,
) -> Result<RhoJet, ConformalError> {
    Ok(ConformalFactor::new(a, big_a, big_b, epsilon)?.eval(u))
}

/// Residual of `rho rho'' - rho'^2 + epsilon e^{4au}` for a 2-jet of `rho`.
pub fn rho_ode_residual(rho: f64, rho_d1: f64, rho_d2: f64, a: f64, epsilon: f64, u: f64) -> f64 {
    rho * rho_d2 - rho_d1 * rho_d1 + epsilon * (4.0 * a * u).exp()
}

/// The constant-mean-curvature factor problem
/// `rho rho'' - rho'^2 = epsilon (H^2 rho^4 - b^2 e^{4au})`.
///
/// `b = 0` is inadmissible for genuine twisted surfaces but accepted here for
/// diagnostic runs.
#[derive(Clone, Copy, Debug)]
pub struct CmcOdeProblem {
    pub mean: f64,
    pub a: f64,
    pub b: f64,
    pub epsilon: f64,
    pub u0: f64,
    pub rho0: f64,
    pub rho0_prime: f64,
}

/// How a trajectory ended.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TrajectoryEnd {
    Completed,
    /// The factor collapsed toward zero; the surface degenerates there.
    DomainExit { u: f64 },
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    /// `(u, rho, rho')` at the requested sample points that were reached.
    pub samples: Vec<(f64, f64, f64)>,
    pub end: TrajectoryEnd,
}

const RHO_FLOOR: f64 = 1e-10;

/// Integrate the factor ODE from `(u0, rho0, rho0')` through the requested
/// sample abscissae (monotone away from `u0`). Stops with a typed domain
/// exit when `rho <= 1e-10`.
pub fn rho_cmc_integrate(
    problem: &CmcOdeProblem,
    samples: &[f64],
    opts: &AdaptiveOptions,
) -> Result<Trajectory, ConformalError> {
    if !(problem.rho0 > 0.0) {
        return Err(ConformalError::NonPositiveInitial { rho0: problem.rho0 });
    }
    let p = *problem;
    let rhs = move |u: f64, y: &[f64; 2]| {
        let rho = y[0];
        let d1 = y[1];
        let forcing = p.epsilon
            * (p.mean * p.mean * rho * rho * rho * rho
                - p.b * p.b * (4.0 * p.a * u).exp());
        [d1, (d1 * d1 + forcing) / rho]
    };
    let halt = |_u: f64, y: &[f64; 2]| y[0] <= RHO_FLOOR;
    let (states, halted) = ode::integrate_samples(
        &rhs,
        problem.u0,
        [problem.rho0, problem.rho0_prime],
        samples,
        opts,
        &halt,
    )?;
    let samples = states.into_iter().map(|(u, y)| (u, y[0], y[1])).collect();
    let end = match halted {
        Some(h) => TrajectoryEnd::DomainExit { u: h.t },
        None => TrajectoryEnd::Completed,
    };
    Ok(Trajectory { samples, end })
}

/// Principal curvature from the twist normalization:
/// `lambda1 = -sigma H + (b / rho^2) e^{2au}`. With `b = 0` the point is
/// umbilic, which genuine twisted surfaces exclude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lambda1 {
    pub value: f64,
    pub umbilic: bool,
}

pub fn lambda1_formula(mean: f64, b: f64, a: f64, sigma: f64, rho: f64, u: f64) -> Lambda1 {
    let value = -sigma * mean + b / (rho * rho) * (2.0 * a * u).exp();
    Lambda1 { value, umbilic: b == 0.0 }
}

/// Recover `(A, B)` of the closed form from initial data `(rho0, rho0')` at
/// `u0` (zero mean curvature, `b = 1`).
///
/// From `rho = P + Q`, `rho' = sP + tQ` with `s,t = 2a ± B` and
/// `PQ = -epsilon e^{4 a u0} / (4 B^2)`:
/// `B^2 rho0^2 = (rho0' - 2a rho0)^2 - epsilon e^{4 a u0}`.
pub fn fit_ab_from_initial(
    a: f64,
    epsilon: f64,
    u0: f64,
    rho0: f64,
    rho0_prime: f64,
) -> Result<(f64, f64), ConformalError> {
    if !(rho0 > 0.0) {
        return Err(ConformalError::NonPositiveInitial { rho0 });
    }
    let w = rho0_prime - 2.0 * a * rho0;
    let rad = w * w - epsilon * (4.0 * a * u0).exp();
    if !(rad > 0.0) {
        return Err(ConformalError::FitFailed);
    }
    let big_b = rad.sqrt() / rho0;
    let p = 0.5 * (rho0 + w / big_b);
    let big_a = -epsilon * p * 2.0 * big_b * (-(2.0 * a + big_b) * u0).exp();
    if !(big_a > 0.0) || !big_a.is_finite() {
        return Err(ConformalError::FitFailed);
    }
    Ok((big_a, big_b))
}
