//! Lorentzian linear algebra: vectors of `E^3_1`, causal characters, and the
//! isometry groups of tangent planes.
//!
//! The inner product is `<u,v> = u1*v1 + u2*v2 - u3*v3`. The cross product is
//! oriented by the identity `<u x v, w> = det(u, v, w)`.

use core::ops::{Add, Div, Mul, Neg, Sub};
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

/// A point or vector of Lorentz-Minkowski 3-space.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Vec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x1: 0.0, x2: 0.0, x3: 0.0 };

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Vec3 { x1, x2, x3 }
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    /// Signed Lorentzian square `<v,v>`.
    pub fn norm2(&self) -> f64 {
        lorentz_dot(*self, *self)
    }

    /// Largest absolute component, used for scale-aware tolerances.
    pub fn max_abs(&self) -> f64 {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs())
    }

    pub fn causal_character(&self, tol: f64) -> CausalCharacter {
        causal_character(*self, tol)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x1 / s, self.x2 / s, self.x3 / s)
    }
}

/// The Lorentzian inner product `u1*v1 + u2*v2 - u3*v3`.
pub fn lorentz_dot(u: Vec3, v: Vec3) -> f64 {
    u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3
}

/// The Lorentzian cross product, oriented so that `<u x v, w> = det(u,v,w)`.
pub fn lorentz_cross(u: Vec3, v: Vec3) -> Vec3 {
    Vec3::new(
        u.x2 * v.x3 - u.x3 * v.x2,
        u.x3 * v.x1 - u.x1 * v.x3,
        -(u.x1 * v.x2 - u.x2 * v.x1),
    )
}

/// Determinant of the 3x3 matrix with rows `u, v, w`.
pub fn det3(u: Vec3, v: Vec3, w: Vec3) -> f64 {
    u.x1 * (v.x2 * w.x3 - v.x3 * w.x2) - u.x2 * (v.x1 * w.x3 - v.x3 * w.x1)
        + u.x3 * (v.x1 * w.x2 - v.x2 * w.x1)
}

/// Causal character of a vector, by the sign of `<v,v>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Classify `v` by the sign of `<v,v>`, treating `|<v,v>| <= tol` as lightlike.
///
/// Callers that want the scale-aware default should pass
/// [`lightlike_tolerance`]`(v)`.
pub fn causal_character(v: Vec3, tol: f64) -> CausalCharacter {
    let q = v.norm2();
    if q.abs() <= tol {
        CausalCharacter::Lightlike
    } else if q > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    }
}

/// Default lightlike tolerance, `1e-12 * (1 + |<v,v>|-scale)`.
pub fn lightlike_tolerance(v: Vec3) -> f64 {
    let scale = v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3;
    1e-12 * (1.0 + scale)
}

/// Error for an inadmissible metric signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("delta and epsilon must each be +1 or -1")]
    NotASign,
    #[error("delta and epsilon cannot both be -1")]
    DoublyNegative,
}

/// The signature `diag(delta, epsilon)` of an intrinsic rotational metric
/// `rho(u)^2 (delta du^2 + epsilon dv^2)`, with `sigma = delta * epsilon`.
///
/// `(delta, epsilon) = (-1, -1)` is inadmissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MetricSignature {
    delta: i8,
    epsilon: i8,
}

impl MetricSignature {
    /// Spacelike surface: `delta = epsilon = 1`.
    pub const SPACELIKE: MetricSignature = MetricSignature { delta: 1, epsilon: 1 };
    /// Timelike surface with spacelike `u`-direction: `delta = 1, epsilon = -1`.
    pub const TIMELIKE_U: MetricSignature = MetricSignature { delta: 1, epsilon: -1 };
    /// Timelike surface with timelike `u`-direction: `delta = -1, epsilon = 1`.
    pub const TIMELIKE_V: MetricSignature = MetricSignature { delta: -1, epsilon: 1 };

    pub fn new(delta: i8, epsilon: i8) -> Result<Self, SignatureError> {
        if delta.abs() != 1 || epsilon.abs() != 1 {
            return Err(SignatureError::NotASign);
        }
        if delta == -1 && epsilon == -1 {
            return Err(SignatureError::DoublyNegative);
        }
        Ok(MetricSignature { delta, epsilon })
    }

    pub fn delta(&self) -> f64 {
        self.delta as f64
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon as f64
    }

    /// `sigma = delta * epsilon`: +1 for spacelike surfaces, -1 for timelike.
    pub fn sigma(&self) -> f64 {
        (self.delta * self.epsilon) as f64
    }

    pub fn is_spacelike(&self) -> bool {
        self.delta == 1 && self.epsilon == 1
    }
}

/// A 2x2 real matrix in the tangent-plane basis `{d/du, d/dv}`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a11: 1.0, a12: 0.0, a21: 0.0, a22: 1.0 };

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        Some(Mat2::new(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d))
    }

    pub fn frobenius(&self) -> f64 {
        (self.a11 * self.a11 + self.a12 * self.a12 + self.a21 * self.a21 + self.a22 * self.a22)
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.a11.abs().max(self.a12.abs()).max(self.a21.abs()).max(self.a22.abs())
    }
}

/// Kind of tangent-plane rotation: Euclidean on Riemannian planes, hyperbolic
/// on Lorentzian planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum RotationKind {
    Euclidean,
    Hyperbolic,
}

/// A tangent-plane isometry: `R_theta` (Euclidean) or `G_theta` (hyperbolic).
///
/// Euclidean entries are `[[cos, -sin], [sin, cos]]`; hyperbolic entries are
/// `[[cosh, sinh], [sinh, cosh]]`. Both have determinant 1 and compose by
/// adding angles of the same kind.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation2 {
    pub kind: RotationKind,
    pub angle: f64,
    pub entries: Mat2,
}

/// Build the tangent-plane rotation of the given kind and angle.
pub fn rotation(kind: RotationKind, angle: f64) -> Rotation2 {
    let entries = match kind {
        RotationKind::Euclidean => {
            let (s, c) = angle.sin_cos();
            Mat2::new(c, -s, s, c)
        }
        RotationKind::Hyperbolic => {
            let (s, c) = (angle.sinh(), angle.cosh());
            Mat2::new(c, s, s, c)
        }
    };
    Rotation2 { kind, angle, entries }
}

impl Rotation2 {
    /// Compose with another rotation of the same kind. Returns `None` when
    /// the kinds differ.
    pub fn compose(&self, other: &Rotation2) -> Option<Rotation2> {
        if self.kind != other.kind {
            return None;
        }
        Some(rotation(self.kind, self.angle + other.angle))
    }

    pub fn inverse(&self) -> Rotation2 {
        rotation(self.kind, -self.angle)
    }

    /// Conjugate a 2x2 matrix: `Phi_theta * m * Phi_{-theta}`.
    pub fn conjugate(&self, m: &Mat2) -> Mat2 {
        self.entries.mul(m).mul(&self.inverse().entries)
    }
}
