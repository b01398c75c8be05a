//! Zero-mean-curvature surface geometry in Lorentz-Minkowski 3-space.
//!
//! The ambient space is `R^3` with the Lorentzian inner product
//! `dx1^2 + dx2^2 - dx3^2`. The crate provides:
//!
//! * [`minkowski`] — Lorentzian vectors, causal characters, tangent-plane
//!   rotation groups, and 2x2 matrix helpers.
//! * [`hyper`] — a unified complex / split-complex scalar used for analytic
//!   continuation of closed forms.
//! * [`surface`] — parametrized patches carrying an analytic 2-jet.
//! * [`kernel`] — fundamental forms, Weingarten operator, curvatures, twist
//!   extraction, and the Gauss/Codazzi compatibility residuals.
//! * [`conformal`] — the conformal-factor ODE: closed-form solution, residual
//!   checks, and adaptive numeric integration for nonzero mean curvature.
//! * [`catalog`] — closed-form parametrizations of the intrinsic rotational
//!   ZMC families and the named surfaces (both Enneper surfaces, the second
//!   timelike Enneper, and the two catenoids), plus revolution-surface
//!   reparametrization.
//! * [`bjorling`] — orthonormal frame integration along the base curve and
//!   the Björling reconstruction in complex and paracomplex form, together
//!   with the associate-family deformation.
//! * [`weierstrass`] — Weierstrass pairs for both causal characters, the
//!   integer monomial families, residues/periods, and end classification.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the `libm`
//! feature when building without `std`.

#![cfg_attr(not(feature = "std"), no_std)]
// parameter validation deliberately uses `!(x > 0.0)` so NaN fails closed
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("zmc-core needs either the `std` or the `libm` feature for f64 math");

extern crate alloc;

pub mod bjorling;
pub mod catalog;
pub mod conformal;
pub mod fd;
pub mod hyper;
pub mod kernel;
pub mod minkowski;
pub mod ode;
pub mod quad;
pub mod revolution;
pub mod surface;
pub mod weierstrass;

pub use hyper::{Hyper, HyperKind};
pub use minkowski::{
    causal_character, lorentz_cross, lorentz_dot, CausalCharacter, Mat2, MetricSignature,
    Rotation2, RotationKind, Vec3,
};
pub use surface::{Jet2, SurfacePatch, UvDomain};
