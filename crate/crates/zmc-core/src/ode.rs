//! Adaptive Dormand-Prince 5(4) integration over small fixed-size states.
//!
//! The solver clips steps so requested sample abscissae are hit exactly, and
//! supports a halt predicate for typed domain exits (used when the conformal
//! factor collapses to zero).

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

#[derive(Clone, Copy, Debug)]
pub struct AdaptiveOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h_initial: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        AdaptiveOptions {
            rtol: 1e-11,
            atol: 1e-12,
            h_initial: 1e-3,
            h_min: 1e-13,
            h_max: 0.25,
            max_steps: 200_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum OdeError {
    #[error("step size underflow near t = {t}")]
    StepSizeUnderflow { t: f64 },
    #[error("step budget exhausted at t = {t}")]
    MaxSteps { t: f64 },
}

/// Reason integration stopped before the end of the interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halt {
    pub t: f64,
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] =
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

struct Stepper<'a, const N: usize> {
    f: &'a dyn Fn(f64, &[f64; N]) -> [f64; N],
    opts: AdaptiveOptions,
}

impl<'a, const N: usize> Stepper<'a, N> {
    /// One accepted step from `(t, y)` with trial size `h` (signed).
    /// Returns `(t_new, y_new, h_next)`.
    fn step(&self, t: f64, y: &[f64; N], mut h: f64) -> Result<(f64, [f64; N], f64), OdeError> {
        let dir = h.signum();
        loop {
            if h.abs() < self.opts.h_min {
                return Err(OdeError::StepSizeUnderflow { t });
            }
            let mut k: [[f64; N]; 7] = [[0.0; N]; 7];
            k[0] = (self.f)(t, y);
            for s in 1..7 {
                let mut ys = *y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    let a = if s < 7 && j < 6 { A[s - 1][j] } else { 0.0 };
                    if a != 0.0 {
                        for i in 0..N {
                            ys[i] += h * a * kj[i];
                        }
                    }
                }
                k[s] = (self.f)(t + C[s] * h, &ys);
            }
            let mut y5 = *y;
            let mut y4 = *y;
            for (s, ks) in k.iter().enumerate() {
                for i in 0..N {
                    y5[i] += h * B5[s] * ks[i];
                    y4[i] += h * B4[s] * ks[i];
                }
            }
            let mut err: f64 = 0.0;
            for i in 0..N {
                let sc = self.opts.atol + self.opts.rtol * y5[i].abs().max(y[i].abs());
                err = err.max(((y5[i] - y4[i]) / sc).abs());
            }
            if err.is_finite() && err <= 1.0 {
                let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                let h_next = dir * (h.abs() * fac).min(self.opts.h_max);
                return Ok((t + h, y5, h_next));
            }
            let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 1.0) } else { 0.1 };
            h *= fac;
        }
    }
}

/// States `(t, y)` reported at the requested sample abscissae, plus the
/// halt location when the predicate fired.
pub type SampledStates<const N: usize> = (Vec<(f64, [f64; N])>, Option<Halt>);

/// Integrate from `t0` to each abscissa in `samples` (monotone away from
/// `t0`), reporting the state at every one. Stops early when `halt` fires,
/// recording where.
pub fn integrate_samples<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    samples: &[f64],
    opts: &AdaptiveOptions,
    halt: &dyn Fn(f64, &[f64; N]) -> bool,
) -> Result<SampledStates<N>, OdeError> {
    let stepper = Stepper { f, opts: *opts };
    let mut out = Vec::with_capacity(samples.len());
    let mut t = t0;
    let mut y = y0;
    if halt(t, &y) {
        return Ok((out, Some(Halt { t })));
    }
    let mut steps = 0usize;
    for &target in samples {
        if target == t {
            out.push((t, y));
            continue;
        }
        let dir = (target - t).signum();
        let mut h = dir * opts.h_initial.min(opts.h_max);
        while (target - t) * dir > 0.0 {
            steps += 1;
            if steps > opts.max_steps {
                return Err(OdeError::MaxSteps { t });
            }
            if (t + h - target) * dir > 0.0 {
                h = target - t;
            }
            let (tn, yn, hn) = stepper.step(t, &y, h)?;
            t = tn;
            y = yn;
            h = hn;
            if halt(t, &y) {
                return Ok((out, Some(Halt { t })));
            }
        }
        out.push((t, y));
    }
    Ok((out, None))
}

/// Integrate from `t0` to `t1` and return the final state.
pub fn integrate_to<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    t1: f64,
    opts: &AdaptiveOptions,
) -> Result<[f64; N], OdeError> {
    let (out, _) = integrate_samples(f, t0, y0, &[t1], opts, &|_, _| false)?;
    Ok(out.last().map(|(_, y)| *y).unwrap_or(y0))
}
