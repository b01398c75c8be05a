//! Adaptive Gauss-Legendre quadrature for hypernumber-valued line integrals.
//!
//! Integrands are parametrized over `t in [0, 1]`; adaptivity bisects a panel
//! until the 15-point rule agrees with its two-half refinement.

use crate::hyper::{hyper_add3, Hyper, HyperKind, HyperVec3};
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("quadrature failed to converge to {target} (reached {reached})")]
    NoConvergence { target: f64, reached: f64 },
    #[error("integrand evaluation failed at t = {t}")]
    Evaluation { t: f64 },
}

// 15-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_X: [f64; 15] = [
    -0.9879925180204854,
    -0.937273392400706,
    -0.8482065834104272,
    -0.7244177313601701,
    -0.5709721726085388,
    -0.3941513470775634,
    -0.2011940939974345,
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601701,
    0.8482065834104272,
    0.937273392400706,
    0.9879925180204854,
];
const GL_W: [f64; 15] = [
    0.0307532419961173,
    0.0703660474881081,
    0.1071592204671719,
    0.1395706779261543,
    0.1662692058169939,
    0.1861610000155622,
    0.1984314853271116,
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
];

fn panel<E>(
    f: &dyn Fn(f64) -> Result<HyperVec3, E>,
    a: f64,
    b: f64,
    kind: HyperKind,
) -> Result<HyperVec3, QuadError> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = [Hyper::zero(kind); 3];
    for (x, w) in GL_X.iter().zip(GL_W.iter()) {
        let t = mid + half * x;
        let y = f(t).map_err(|_| QuadError::Evaluation { t })?;
        for i in 0..3 {
            acc[i] = acc[i] + y[i].scale(w * half);
        }
    }
    Ok(acc)
}

fn vec_err(a: &HyperVec3, b: &HyperVec3) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        m = m.max((a[i].re - b[i].re).abs()).max((a[i].im - b[i].im).abs());
    }
    m
}

/// Integrate `f` over `t in [0, 1]` to absolute target `tol`.
pub fn integrate_segment<E>(
    f: &dyn Fn(f64) -> Result<HyperVec3, E>,
    kind: HyperKind,
    tol: f64,
) -> Result<HyperVec3, QuadError> {
    // (a, b, whole-panel estimate, depth)
    let mut stack: Vec<(f64, f64, HyperVec3, u32)> = Vec::new();
    let whole = panel(f, 0.0, 1.0, kind)?;
    stack.push((0.0, 1.0, whole, 0));
    let mut total = [Hyper::zero(kind); 3];
    let mut worst: f64 = 0.0;
    while let Some((a, b, est, depth)) = stack.pop() {
        let mid = 0.5 * (a + b);
        let left = panel(f, a, mid, kind)?;
        let right = panel(f, mid, b, kind)?;
        let refined = hyper_add3(&left, &right);
        let err = vec_err(&refined, &est);
        if err <= tol * (b - a).max(1e-3) || depth >= 28 {
            if depth >= 28 && err > tol {
                worst = worst.max(err);
            }
            total = hyper_add3(&total, &refined);
        } else {
            stack.push((a, mid, left, depth + 1));
            stack.push((mid, b, right, depth + 1));
        }
    }
    if worst > tol {
        return Err(QuadError::NoConvergence { target: tol, reached: worst });
    }
    Ok(total)
}
