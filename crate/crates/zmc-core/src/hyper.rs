//! Unified complex / split-complex scalar.
//!
//! A [`Hyper`] is `re + unit * im` where `unit^2 = -1` (complex, `unit = i`)
//! or `unit^2 = +1` (paracomplex, `unit = tau`). The paracomplex algebra has
//! zero divisors along `re = ±im`; division reports them instead of producing
//! non-finite values.

use crate::minkowski::Vec3;
use core::ops::{Add, Mul, Neg, Sub};
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

/// Which algebra a [`Hyper`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum HyperKind {
    /// `unit^2 = -1`.
    Complex,
    /// `unit^2 = +1` (split-complex).
    Paracomplex,
}

impl HyperKind {
    pub fn unit_square(self) -> f64 {
        match self {
            HyperKind::Complex => -1.0,
            HyperKind::Paracomplex => 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HyperError {
    #[error("operands live in different scalar algebras")]
    KindMismatch,
    #[error("division by a non-invertible element (paracomplex zero divisor or zero)")]
    NonInvertible,
    #[error("argument outside the logarithm domain")]
    OutsideLogDomain,
}

/// A number `re + unit * im` with `unit^2 = kind.unit_square()`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyper {
    pub re: f64,
    pub im: f64,
    pub kind: HyperKind,
}

impl Hyper {
    pub const fn new(re: f64, im: f64, kind: HyperKind) -> Self {
        Hyper { re, im, kind }
    }

    pub const fn real(re: f64, kind: HyperKind) -> Self {
        Hyper { re, im: 0.0, kind }
    }

    /// The imaginary unit of the algebra: `i` or `tau`.
    pub const fn unit(kind: HyperKind) -> Self {
        Hyper { re: 0.0, im: 1.0, kind }
    }

    pub const fn zero(kind: HyperKind) -> Self {
        Hyper { re: 0.0, im: 0.0, kind }
    }

    pub const fn one(kind: HyperKind) -> Self {
        Hyper { re: 1.0, im: 0.0, kind }
    }

    pub fn conj(self) -> Self {
        Hyper { re: self.re, im: -self.im, kind: self.kind }
    }

    /// `z * conj(z)`, a real number: `re^2 + im^2` (complex) or
    /// `re^2 - im^2` (paracomplex).
    pub fn modulus_sq(self) -> f64 {
        self.re * self.re - self.kind.unit_square() * self.im * self.im
    }

    /// Invertible iff `z * conj(z) != 0`; the paracomplex algebra is singular
    /// along `re = ±im`.
    pub fn is_invertible(self) -> bool {
        let n = self.modulus_sq();
        n != 0.0 && n.is_finite()
    }

    pub fn scale(self, s: f64) -> Self {
        Hyper { re: self.re * s, im: self.im * s, kind: self.kind }
    }

    pub fn try_mul(self, o: Hyper) -> Result<Hyper, HyperError> {
        if self.kind != o.kind {
            return Err(HyperError::KindMismatch);
        }
        Ok(self * o)
    }

    pub fn try_div(self, o: Hyper) -> Result<Hyper, HyperError> {
        if self.kind != o.kind {
            return Err(HyperError::KindMismatch);
        }
        if !o.is_invertible() {
            return Err(HyperError::NonInvertible);
        }
        let n = o.modulus_sq();
        let num = self * o.conj();
        Ok(Hyper::new(num.re / n, num.im / n, self.kind))
    }

    /// Exponential: `e^re (cos im + i sin im)` or `e^re (cosh im + tau sinh im)`.
    pub fn exp(self) -> Hyper {
        let e = self.re.exp();
        match self.kind {
            HyperKind::Complex => {
                let (s, c) = self.im.sin_cos();
                Hyper::new(e * c, e * s, self.kind)
            }
            HyperKind::Paracomplex => {
                Hyper::new(e * self.im.cosh(), e * self.im.sinh(), self.kind)
            }
        }
    }

    /// Logarithm. Complex: principal branch, undefined at 0. Paracomplex:
    /// defined on the wedge `re > |im|`.
    pub fn ln(self) -> Result<Hyper, HyperError> {
        match self.kind {
            HyperKind::Complex => {
                let n = self.modulus_sq();
                if n == 0.0 || !n.is_finite() {
                    return Err(HyperError::OutsideLogDomain);
                }
                Ok(Hyper::new(0.5 * n.ln(), self.im.atan2(self.re), self.kind))
            }
            HyperKind::Paracomplex => {
                if self.re <= self.im.abs() {
                    return Err(HyperError::OutsideLogDomain);
                }
                let n = self.modulus_sq();
                Ok(Hyper::new(0.5 * n.ln(), (self.im / self.re).atanh(), self.kind))
            }
        }
    }

    /// Integer power; negative exponents divide and may hit zero divisors.
    pub fn powi(self, n: i64) -> Result<Hyper, HyperError> {
        if n < 0 {
            return Hyper::one(self.kind).try_div(self.powi(-n)?);
        }
        let mut acc = Hyper::one(self.kind);
        let mut base = self;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        Ok(acc)
    }
}

/// Multiplication of hypernumbers of matching kind.
///
/// Mixing algebras is a programming error and panics; use
/// [`Hyper::try_mul`] where the kind is data-dependent.
pub fn hyper_mul(a: Hyper, b: Hyper) -> Result<Hyper, HyperError> {
    a.try_mul(b)
}

/// Exponential of a hypernumber (see [`Hyper::exp`]).
pub fn hyper_exp(z: Hyper) -> Hyper {
    z.exp()
}

impl Add for Hyper {
    type Output = Hyper;
    fn add(self, o: Hyper) -> Hyper {
        debug_assert_eq!(self.kind, o.kind);
        Hyper::new(self.re + o.re, self.im + o.im, self.kind)
    }
}

impl Sub for Hyper {
    type Output = Hyper;
    fn sub(self, o: Hyper) -> Hyper {
        debug_assert_eq!(self.kind, o.kind);
        Hyper::new(self.re - o.re, self.im - o.im, self.kind)
    }
}

impl Neg for Hyper {
    type Output = Hyper;
    fn neg(self) -> Hyper {
        Hyper::new(-self.re, -self.im, self.kind)
    }
}

impl Mul for Hyper {
    type Output = Hyper;
    fn mul(self, o: Hyper) -> Hyper {
        assert_eq!(self.kind, o.kind, "hypernumber kinds must match");
        let us = self.kind.unit_square();
        Hyper::new(
            self.re * o.re + us * self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.kind,
        )
    }
}

impl Mul<f64> for Hyper {
    type Output = Hyper;
    fn mul(self, s: f64) -> Hyper {
        self.scale(s)
    }
}

/// A triple of hypernumbers: an analytically continued point of `E^3_1`.
pub type HyperVec3 = [Hyper; 3];

/// Componentwise real part, the surface point `Re F(z)`.
pub fn re3(v: &HyperVec3) -> Vec3 {
    Vec3::new(v[0].re, v[1].re, v[2].re)
}

/// Componentwise imaginary part.
pub fn im3(v: &HyperVec3) -> Vec3 {
    Vec3::new(v[0].im, v[1].im, v[2].im)
}

/// Bilinear extension of the Lorentzian cross product to hypernumber vectors.
pub fn hyper_cross(u: &HyperVec3, v: &HyperVec3) -> HyperVec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        -(u[0] * v[1] - u[1] * v[0]),
    ]
}

/// Bilinear extension of the Lorentzian inner product.
pub fn hyper_dot(u: &HyperVec3, v: &HyperVec3) -> Hyper {
    u[0] * v[0] + u[1] * v[1] - u[2] * v[2]
}

pub fn hyper_scale3(v: &HyperVec3, s: Hyper) -> HyperVec3 {
    [v[0] * s, v[1] * s, v[2] * s]
}

pub fn hyper_add3(u: &HyperVec3, v: &HyperVec3) -> HyperVec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const TAU: HyperKind = HyperKind::Paracomplex;
    const I: HyperKind = HyperKind::Complex;

    /// Truncated power-series oracle, independent of `Hyper::exp`.
    fn exp_series(z: Hyper, terms: usize) -> Hyper {
        let mut sum = Hyper::one(z.kind);
        let mut term = Hyper::one(z.kind);
        for n in 1..=terms {
            term = term * z * (1.0 / n as f64);
            sum = sum + term;
        }
        sum
    }

    #[test]
    fn unit_squares() {
        let tau = Hyper::unit(TAU);
        let sq = (tau * tau, Hyper::one(TAU));
        assert_eq!(sq.0, sq.1);
        let i = Hyper::unit(I);
        assert_eq!(i * i, -Hyper::one(I));
    }

    #[test]
    fn paracomplex_zero_divisors() {
        let a = Hyper::new(1.0, 1.0, TAU);
        let b = Hyper::new(1.0, -1.0, TAU);
        assert_eq!(a * b, Hyper::zero(TAU));
        assert!(!a.is_invertible());
        assert_eq!(Hyper::one(TAU).try_div(a), Err(HyperError::NonInvertible));
        let c = Hyper::new(2.0, 0.5, TAU);
        let q = (a * c).try_div(c).unwrap();
        assert_abs_diff_eq!(q.re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(q.im, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn exp_values() {
        assert_eq!(Hyper::zero(TAU).exp(), Hyper::one(TAU));
        let e = Hyper::unit(TAU).exp();
        assert_abs_diff_eq!(e.re, 1.0f64.cosh(), epsilon = 1e-12);
        assert_abs_diff_eq!(e.im, 1.0f64.sinh(), epsilon = 1e-12);
        assert_abs_diff_eq!(e.re, 1.54308063481524, epsilon = 1e-12);
        assert_abs_diff_eq!(e.im, 1.17520119364380, epsilon = 1e-12);

        let m = Hyper::new(0.0, core::f64::consts::PI, I).exp();
        assert_abs_diff_eq!(m.re, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn exp_matches_series_oracle() {
        for kind in [I, TAU] {
            for &(re, im) in &[(0.3, -1.2), (-0.7, 0.4), (1.5, 1.1), (2.0, -0.1)] {
                let z = Hyper::new(re, im, kind);
                let s = exp_series(z, 30);
                let e = z.exp();
                assert_abs_diff_eq!(e.re, s.re, epsilon = 1e-12);
                assert_abs_diff_eq!(e.im, s.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn ln_inverts_exp_on_domain() {
        for kind in [I, TAU] {
            let z = Hyper::new(0.4, kind.unit_square().max(0.0) * 0.2 + 0.1, kind);
            let w = z.exp().ln().unwrap();
            assert_abs_diff_eq!(w.re, z.re, epsilon = 1e-13);
            assert_abs_diff_eq!(w.im, z.im, epsilon = 1e-13);
        }
        // outside the paracomplex wedge
        assert!(Hyper::new(0.5, 0.9, TAU).ln().is_err());
    }

    #[test]
    fn powi_and_cross() {
        let z = Hyper::new(0.8, 0.3, I);
        let z3 = z.powi(3).unwrap();
        let byhand = z * z * z;
        assert_abs_diff_eq!(z3.re, byhand.re, epsilon = 1e-13);
        let zm2 = z.powi(-2).unwrap();
        let check = zm2 * z * z;
        assert_abs_diff_eq!(check.re, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(check.im, 0.0, epsilon = 1e-13);

        let u = [Hyper::real(1.0, I), Hyper::real(0.0, I), Hyper::real(0.0, I)];
        let v = [Hyper::real(0.0, I), Hyper::real(1.0, I), Hyper::real(0.0, I)];
        let w = hyper_cross(&u, &v);
        assert_eq!(re3(&w), Vec3::new(0.0, 0.0, -1.0));
    }
}
