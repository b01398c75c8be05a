//! Central finite differences with one step of Richardson extrapolation.
//!
//! Used as the independent validator of analytic jets and for derivatives of
//! scalar data that comes without a closed form. The extrapolated stencils
//! are O(h^4).

use crate::minkowski::Vec3;

/// Step size `1e-4 * (1 + |x|)`.
pub fn default_step(x: f64) -> f64 {
    1e-4 * (1.0 + x.abs())
}

/// Step size for second derivatives. Rounding in a second difference grows
/// like `4 eps / h^2`, so the step is an order larger than [`default_step`].
pub fn default_step2(x: f64) -> f64 {
    1e-3 * (1.0 + x.abs())
}

fn central1(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

fn central2(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// First derivative, Richardson-extrapolated: `(4 D(h/2) - D(h)) / 3`.
pub fn d1(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (4.0 * central1(f, x, h / 2.0) - central1(f, x, h)) / 3.0
}

/// Second derivative, Richardson-extrapolated.
pub fn d2(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (4.0 * central2(f, x, h / 2.0) - central2(f, x, h)) / 3.0
}

/// Full finite-difference 2-jet of a position map.
pub struct FdJet {
    pub x: Vec3,
    pub xu: Vec3,
    pub xv: Vec3,
    pub xuu: Vec3,
    pub xuv: Vec3,
    pub xvv: Vec3,
}

/// Finite-difference jet of `pos` at `(u, v)`, O(h^4) accurate.
pub fn jet_fd(pos: &dyn Fn(f64, f64) -> Vec3, u: f64, v: f64, h: f64) -> FdJet {
    let comp = |h: f64| {
        let xu = (pos(u + h, v) - pos(u - h, v)) / (2.0 * h);
        let xv = (pos(u, v + h) - pos(u, v - h)) / (2.0 * h);
        let x0 = pos(u, v);
        let xuu = (pos(u + h, v) - x0 * 2.0 + pos(u - h, v)) / (h * h);
        let xvv = (pos(u, v + h) - x0 * 2.0 + pos(u, v - h)) / (h * h);
        let xuv = (pos(u + h, v + h) - pos(u + h, v - h) - pos(u - h, v + h)
            + pos(u - h, v - h))
            / (4.0 * h * h);
        (xu, xv, xuu, xuv, xvv)
    };
    let a = comp(h);
    let b = comp(h / 2.0);
    let rich = |fa: Vec3, fb: Vec3| (fb * 4.0 - fa) / 3.0;
    FdJet {
        x: pos(u, v),
        xu: rich(a.0, b.0),
        xv: rich(a.1, b.1),
        xuu: rich(a.2, b.2),
        xuv: rich(a.3, b.3),
        xvv: rich(a.4, b.4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    #[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

    #[test]
    fn scalar_derivatives() {
        let f = |x: f64| (2.0 * x).exp() * x.sin();
        let x = 0.7;
        let h = default_step(x);
        let d1_exact = (2.0 * x).exp() * (2.0 * x.sin() + x.cos());
        let d2_exact = (2.0 * x).exp() * (3.0 * x.sin() + 4.0 * x.cos());
        assert_abs_diff_eq!(d1(&f, x, h), d1_exact, epsilon = 1e-10);
        assert_abs_diff_eq!(d2(&f, x, h), d2_exact, epsilon = 1e-6);
    }

    #[test]
    fn jet_of_polynomial_is_exact() {
        let pos = |u: f64, v: f64| Vec3::new(u * u * v, u + v * v * v, u * v);
        let j = jet_fd(&pos, 0.4, -0.3, 1e-3);
        assert_abs_diff_eq!(j.xu.x1, 2.0 * 0.4 * -0.3, epsilon = 1e-10);
        assert_abs_diff_eq!(j.xuv.x1, 2.0 * 0.4, epsilon = 1e-8);
        assert_abs_diff_eq!(j.xvv.x2, 6.0 * -0.3, epsilon = 1e-7);
        assert_abs_diff_eq!(j.xuv.x3, 1.0, epsilon = 1e-9);
    }
}
