//! Frame integration, base curves, the Björling reconstruction, and the
//! associate-family deformation.
//!
//! Along `v = 0` the adapted orthonormal frame `{E1, E2, E3}` of a family
//! surface satisfies `E1' = s1 h E3`, `E2' = 0`, `E3' = s3 h E1` with
//! `h = e^{2au} / rho` and case-dependent signs; the closed-form frames are
//! rational in `e^{Bu}`. The surface is recovered from the analytic data
//! `(c, E3)` by
//!
//! `X(u, v) = Re( c(z) + unit * int_{u}^{z} E3(w) x c'(w) dw )`,
//!
//! `z = u + unit v`, integrating along the straight segment at constant `u`
//! (the complex case is path-free by analyticity; for the paracomplex case
//! the segment is the fixed convention, matching `X(u, 0) = c(u)`).

use crate::catalog::{family_extension, CatenoidKind, FamilyKind, FamilyParams};
use crate::hyper::{
    hyper_add3, hyper_dot, hyper_scale3, re3, Hyper, HyperError, HyperKind, HyperVec3,
};
use crate::kernel;
use crate::minkowski::{lorentz_dot, MetricSignature, Vec3};
use crate::ode::{self, AdaptiveOptions, OdeError};
use crate::quad::{self, QuadError};
use crate::surface::{ExpForm3, ExtensionPatch, PatchError, ScaledExtension, SurfacePatch};
use alloc::boxed::Box;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum BjorlingError {
    #[error("frame integration failed: {0}")]
    Ode(#[from] OdeError),
    #[error("quadrature failed: {0}")]
    Quadrature(#[from] QuadError),
    #[error("analytic continuation hit a lightlike coordinate (paracomplex zero divisor)")]
    LightlikeCoordinate,
    #[error("continuation failed: {0}")]
    Hyper(HyperError),
    #[error("input data violates the Björling contract: {0}")]
    InvalidData(&'static str),
    #[error("patch is not a conformal ZMC immersion (residual {residual})")]
    NonConformal { residual: f64 },
    #[error("patch evaluation failed: {0}")]
    Patch(#[from] PatchError),
}

impl From<HyperError> for BjorlingError {
    fn from(e: HyperError) -> Self {
        match e {
            HyperError::NonInvertible => BjorlingError::LightlikeCoordinate,
            other => BjorlingError::Hyper(other),
        }
    }
}

/// Orthonormal frame at one point of the base curve: `<E1,E1> = delta`,
/// `<E2,E2> = epsilon`, `<E3,E3> = -sigma`, `E3 = E1 x E2`.
#[derive(Clone, Copy, Debug)]
pub struct FrameState {
    pub u: f64,
    pub e1: Vec3,
    pub e2: Vec3,
    pub e3: Vec3,
    pub signature: MetricSignature,
}

impl FrameState {
    /// Max deviation from the orthonormality relations.
    pub fn orthonormality_residual(&self) -> f64 {
        let s = self.signature;
        (lorentz_dot(self.e1, self.e1) - s.delta())
            .abs()
            .max((lorentz_dot(self.e2, self.e2) - s.epsilon()).abs())
            .max((lorentz_dot(self.e3, self.e3) + s.sigma()).abs())
            .max(lorentz_dot(self.e1, self.e2).abs())
            .max(lorentz_dot(self.e1, self.e3).abs())
            .max(lorentz_dot(self.e2, self.e3).abs())
    }
}

/// Closed-form frames of a family, rational in `e^{B z}`, evaluable at
/// hypernumber arguments for analytic continuation.
#[derive(Clone, Copy, Debug)]
pub struct FrameForm {
    pub kind: FamilyKind,
    pub big_a: f64,
    pub be: f64,
}

impl FrameForm {
    pub fn of(params: &FamilyParams) -> Self {
        FrameForm { kind: params.kind, big_a: params.big_a, be: params.effective_b() }
    }

    /// `(E1, E2, E3)` continued to `z`.
    pub fn eval_hyper(&self, z: Hyper) -> Result<[HyperVec3; 3], HyperError> {
        let hk = z.kind;
        let one = Hyper::one(hk);
        let zero = Hyper::zero(hk);
        let m = z.scale(2.0 * self.be).exp().scale(self.big_a * self.big_a);
        let p = z.scale(self.be).exp().scale(2.0 * self.big_a);
        match self.kind {
            FamilyKind::Spacelike => {
                let den = one - m;
                let q = one + m;
                let e1 = [q.try_div(den)?, zero, p.try_div(den)?];
                let e2 = [zero, one, zero];
                let e3 = [-(p.try_div(den)?), zero, -(q.try_div(den)?)];
                Ok([e1, e2, e3])
            }
            FamilyKind::TimelikeU => {
                let den = one + m;
                let d = one - m;
                let e1 = [p.try_div(den)?, d.try_div(den)?, zero];
                let e2 = [zero, zero, one];
                let e3 = [d.try_div(den)?, -(p.try_div(den)?), zero];
                Ok([e1, e2, e3])
            }
            FamilyKind::TimelikeV => {
                let den = one - m;
                let q = one + m;
                let e1 = [p.try_div(den)?, zero, -(q.try_div(den)?)];
                let e2 = [zero, one, zero];
                let e3 = [q.try_div(den)?, zero, -(p.try_div(den)?)];
                Ok([e1, e2, e3])
            }
        }
    }

    /// Real frame at `u`.
    pub fn state(&self, u: f64) -> Result<FrameState, HyperError> {
        let hk = self.kind.hyper_kind();
        let [e1, e2, e3] = self.eval_hyper(Hyper::real(u, hk))?;
        Ok(FrameState {
            u,
            e1: re3(&e1),
            e2: re3(&e2),
            e3: re3(&e3),
            signature: self.kind.signature(),
        })
    }

    /// Frame rotation speed `h(u) = e^{2au} / rho(u)` (signed, closed form).
    pub fn h(&self, u: f64) -> f64 {
        let m = self.big_a * self.big_a * (2.0 * self.be * u).exp();
        let den = match self.kind {
            FamilyKind::TimelikeU => 1.0 + m,
            _ => 1.0 - m,
        };
        2.0 * self.big_a * self.be * (self.be * u).exp() / den
    }

    /// `(s1, s3)` with `E1' = s1 h E3`, `E3' = s3 h E1`.
    pub fn ode_signs(&self) -> (f64, f64) {
        match self.kind {
            FamilyKind::Spacelike => (-1.0, -1.0),
            FamilyKind::TimelikeU => (1.0, -1.0),
            FamilyKind::TimelikeV => (1.0, 1.0),
        }
    }
}

/// Integrate the frame system over `u_range`, starting from the closed-form
/// frame at the left endpoint, reporting `n` equally spaced states.
pub fn frame_integrate(
    params: &FamilyParams,
    u_range: (f64, f64),
    n: usize,
) -> Result<Vec<FrameState>, BjorlingError> {
    let form = FrameForm::of(params);
    let start = form.state(u_range.0)?;
    let (s1, s3) = form.ode_signs();
    let rhs = move |u: f64, y: &[f64; 9]| {
        let h = form.h(u);
        // y = (E1, E2, E3) flattened; E2' = 0
        [
            s1 * h * y[6],
            s1 * h * y[7],
            s1 * h * y[8],
            0.0,
            0.0,
            0.0,
            s3 * h * y[0],
            s3 * h * y[1],
            s3 * h * y[2],
        ]
    };
    let y0 = [
        start.e1.x1, start.e1.x2, start.e1.x3, start.e2.x1, start.e2.x2, start.e2.x3,
        start.e3.x1, start.e3.x2, start.e3.x3,
    ];
    let samples = crate::surface::linspace(u_range.0, u_range.1, n.max(2));
    let (states, _) = ode::integrate_samples(
        &rhs,
        u_range.0,
        y0,
        &samples,
        &AdaptiveOptions::default(),
        &|_, _| false,
    )?;
    Ok(states
        .into_iter()
        .map(|(u, y)| FrameState {
            u,
            e1: Vec3::new(y[0], y[1], y[2]),
            e2: Vec3::new(y[3], y[4], y[5]),
            e3: Vec3::new(y[6], y[7], y[8]),
            signature: params.signature(),
        })
        .collect())
}

/// The analytic base curve `c(u) = X(u, 0)` of a family member, as a closed
/// form (the real-coefficient part of the surface extension). Satisfies
/// `c'(u) = rho(u) E1(u)` with the signed conformal factor.
pub fn base_curve(params: &FamilyParams) -> ExpForm3 {
    real_coefficient_part(&family_extension(params))
}

/// Value and first derivative of the base curve at `u`.
pub fn base_curve_point(params: &FamilyParams, u: f64) -> (Vec3, Vec3) {
    let c = base_curve(params);
    let z = Hyper::real(u, params.kind.hyper_kind());
    (re3(&c.eval(z)), re3(&c.deriv(z)))
}

/// Keep the real part of every coefficient: the continuation of
/// `u -> Re F(u)` off the real axis.
pub fn real_coefficient_part(f: &ExpForm3) -> ExpForm3 {
    let strip = |form: &crate::surface::ExpForm| {
        let kind = form.kind;
        let mut out = crate::surface::ExpForm::zero(kind);
        for &(c, k) in &form.terms {
            if c.re != 0.0 {
                out = out.term(Hyper::real(c.re, kind), k);
            }
        }
        out.linear = Hyper::real(form.linear.re, kind);
        out.constant = Hyper::real(form.constant.re, kind);
        out
    };
    ExpForm3 { comps: [strip(&f.comps[0]), strip(&f.comps[1]), strip(&f.comps[2])] }
}

type HyperField = Box<dyn Fn(Hyper) -> Result<HyperVec3, HyperError> + Send + Sync>;

/// Analytic Björling data: a curve with derivative and a unit normal field,
/// both hypernumber-analytic.
///
/// `cross_field` evaluates `E3(z) x c'(z)`, the reconstruction integrand. It
/// defaults to the literal cross product, but closed-form descriptors supply
/// the reduced analytic form: the frame components are rational and their
/// removable singularities (paracomplex zero divisors of the denominators)
/// would otherwise poison quadrature nodes, while the product itself is
/// entire.
pub struct BjorlingData {
    pub kind: HyperKind,
    pub sigma: f64,
    pub curve: HyperField,
    pub curve_deriv: HyperField,
    pub normal: HyperField,
    pub cross_field: HyperField,
}

/// Serializable closed-form descriptor for Björling data.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "source", rename_all = "snake_case"))]
pub enum BjorlingDescriptor {
    Family(FamilyParams),
    Catenoid { kind: CatenoidKind, big_a: f64, big_b: f64 },
}

/// Build the analytic data `(c, E3)` described by a descriptor.
pub fn build_bjorling_data(desc: &BjorlingDescriptor) -> Result<BjorlingData, BjorlingError> {
    let (curve_form, frame, sigma, hk, slope_a, eps) = match desc {
        BjorlingDescriptor::Family(p) => (
            base_curve(p),
            FrameForm::of(p),
            p.signature().sigma(),
            p.kind.hyper_kind(),
            p.a,
            p.epsilon(),
        ),
        BjorlingDescriptor::Catenoid { kind, big_a, big_b } => {
            if !(*big_a > 0.0) || !(*big_b > 0.0) {
                return Err(BjorlingError::InvalidData("catenoid needs A, B > 0"));
            }
            let (fam_kind, sigma, eps) = match kind {
                CatenoidKind::Elliptic => (FamilyKind::Spacelike, 1.0, 1.0),
                CatenoidKind::Timelike => (FamilyKind::TimelikeU, -1.0, -1.0),
            };
            let form = catenoid_extension_form(*kind, *big_a, *big_b);
            (
                real_coefficient_part(&form),
                FrameForm { kind: fam_kind, big_a: *big_a, be: *big_b },
                sigma,
                fam_kind.hyper_kind(),
                0.0,
                eps,
            )
        }
    };
    let cf = curve_form.clone();
    let cd = curve_form;
    // The integrand E3 x c' reduces to rho_f(z) times a constant unit
    // direction (c' = rho_f E1 and E3 x E1 = -/+ E2); rho_f is entire, so
    // the rational frames' removable singularities never enter.
    let (dir, dir_sign): (usize, f64) = match frame.kind {
        FamilyKind::Spacelike => (1, -1.0),
        FamilyKind::TimelikeU => (2, -1.0),
        FamilyKind::TimelikeV => (1, 1.0),
    };
    let (p_coef, q_coef) = (
        -eps * frame.big_a / (2.0 * frame.be),
        1.0 / (2.0 * frame.big_a * frame.be),
    );
    let (s_exp, t_exp) = (2.0 * slope_a + frame.be, 2.0 * slope_a - frame.be);
    let cross: HyperField = Box::new(move |z: Hyper| {
        let rho_f =
            z.scale(s_exp).exp().scale(p_coef) + z.scale(t_exp).exp().scale(q_coef);
        let mut out = [Hyper::zero(z.kind); 3];
        out[dir] = rho_f.scale(dir_sign);
        Ok(out)
    });
    Ok(BjorlingData {
        kind: hk,
        sigma,
        curve: Box::new(move |z| Ok(cf.eval(z))),
        curve_deriv: Box::new(move |z| Ok(cd.deriv(z))),
        normal: Box::new(move |z| frame.eval_hyper(z).map(|f| f[2])),
        cross_field: cross,
    })
}

fn catenoid_extension_form(kind: CatenoidKind, big_a: f64, big_b: f64) -> ExpForm3 {
    use crate::surface::ExpForm;
    let (a2b2, ab2) = (2.0 * big_b * big_b, 2.0 * big_a * big_b * big_b);
    match kind {
        CatenoidKind::Elliptic => {
            let k = HyperKind::Complex;
            ExpForm3 {
                comps: [
                    ExpForm::zero(k)
                        .term(Hyper::real(big_a / a2b2, k), big_b)
                        .term(Hyper::real(-1.0 / ab2, k), -big_b),
                    ExpForm::zero(k)
                        .term(Hyper::new(0.0, -big_a / a2b2, k), big_b)
                        .term(Hyper::new(0.0, -1.0 / ab2, k), -big_b),
                    ExpForm::zero(k).with_linear(Hyper::real(1.0 / big_b, k)),
                ],
            }
        }
        CatenoidKind::Timelike => {
            let k = HyperKind::Paracomplex;
            ExpForm3 {
                comps: [
                    ExpForm::zero(k).with_linear(Hyper::real(1.0 / big_b, k)),
                    ExpForm::zero(k)
                        .term(Hyper::real(-big_a / a2b2, k), big_b)
                        .term(Hyper::real(-1.0 / ab2, k), -big_b),
                    ExpForm::zero(k)
                        .term(Hyper::new(0.0, -big_a / a2b2, k), big_b)
                        .term(Hyper::new(0.0, 1.0 / ab2, k), -big_b),
                ],
            }
        }
    }
}

/// Check the Björling contract on real-axis samples: `<E3, E3> = -sigma` and
/// `<E3, c'> = 0` to `tol`.
pub fn validate_bjorling_data(
    data: &BjorlingData,
    u_samples: &[f64],
    tol: f64,
) -> Result<(), BjorlingError> {
    for &u in u_samples {
        let z = Hyper::real(u, data.kind);
        let n = (data.normal)(z)?;
        let cp = (data.curve_deriv)(z)?;
        let nn = hyper_dot(&n, &n).re;
        let nc = hyper_dot(&n, &cp).re;
        if (nn + data.sigma).abs() > tol {
            return Err(BjorlingError::InvalidData("normal is not unit of the required sign"));
        }
        if nc.abs() > tol * (1.0 + re3(&cp).max_abs()) {
            return Err(BjorlingError::InvalidData("normal is not orthogonal to the curve"));
        }
    }
    Ok(())
}

/// Integration path for the reconstruction integral from `(u, 0)` to
/// `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BjorlingPath {
    /// Straight segment at constant `u` (the canonical convention).
    VerticalSegment,
    /// Real-axis detour through `u_anchor`, then vertical, then horizontal.
    Rectangle { u_anchor: f64 },
}

const QUAD_TOL: f64 = 1e-12;

fn segment_integral(
    data: &BjorlingData,
    from: Hyper,
    to: Hyper,
) -> Result<HyperVec3, BjorlingError> {
    let delta = to - from;
    let f = |t: f64| -> Result<HyperVec3, BjorlingError> {
        let w = from + delta.scale(t);
        Ok(hyper_scale3(&(data.cross_field)(w)?, delta))
    };
    Ok(quad::integrate_segment(&f, data.kind, QUAD_TOL)?)
}

/// Evaluate the Björling reconstruction at `(u, v)` along the given path.
pub fn bjorling_point_via(
    data: &BjorlingData,
    u: f64,
    v: f64,
    path: BjorlingPath,
) -> Result<Vec3, BjorlingError> {
    let unit = Hyper::unit(data.kind);
    let z = Hyper::new(u, v, data.kind);
    let start = Hyper::real(u, data.kind);
    let integral = match path {
        BjorlingPath::VerticalSegment => segment_integral(data, start, z)?,
        BjorlingPath::Rectangle { u_anchor } => {
            let a = Hyper::real(u_anchor, data.kind);
            let corner = Hyper::new(u_anchor, v, data.kind);
            let i1 = segment_integral(data, start, a)?;
            let i2 = segment_integral(data, a, corner)?;
            let i3 = segment_integral(data, corner, z)?;
            hyper_add3(&hyper_add3(&i1, &i2), &i3)
        }
    };
    let c = (data.curve)(z)?;
    Ok(re3(&hyper_add3(&c, &hyper_scale3(&integral, unit))))
}

/// Evaluate the Björling reconstruction at `(u, v)` (canonical vertical
/// segment path; `v = 0` returns the curve exactly).
pub fn bjorling_point(data: &BjorlingData, u: f64, v: f64) -> Result<Vec3, BjorlingError> {
    bjorling_point_via(data, u, v, BjorlingPath::VerticalSegment)
}

/// Reconstruct a grid of points.
pub fn bjorling_solve(
    data: &BjorlingData,
    u_samples: &[f64],
    v_samples: &[f64],
) -> Result<Vec<Vec<Vec3>>, BjorlingError> {
    u_samples
        .iter()
        .map(|&u| v_samples.iter().map(|&v| bjorling_point(data, u, v)).collect())
        .collect()
}

/// Conformality/harmonicity residual of an extension-backed patch on sample
/// points: `|E + unit^2 G| + |F|` scaled, plus the wave/Laplace residual.
pub fn conformal_zmc_residual(patch: &ExtensionPatch, samples: &[(f64, f64)]) -> f64 {
    let us = patch.ext.kind().unit_square();
    let mut worst: f64 = 0.0;
    for &(u, v) in samples {
        if let Ok(j) = patch.jet(u, v) {
            let e = lorentz_dot(j.xu, j.xu);
            let f = lorentz_dot(j.xu, j.xv);
            let g = lorentz_dot(j.xv, j.xv);
            let scale = e.abs().max(g.abs()).max(1.0);
            let conf = (e + us * g).abs().max(f.abs()) / scale;
            let lap = (j.xuu - j.xvv * us).max_abs() / (1.0 + j.xuu.max_abs());
            let h = kernel::shape_operator(&j)
                .map(|(a, sigma)| kernel::curvature_summary(&a, sigma).mean.abs())
                .unwrap_or(f64::INFINITY);
            worst = worst.max(conf).max(lap).max(h);
        }
    }
    worst
}

const ASSOCIATE_TOL: f64 = 1e-8;

/// The raw conjugate mixing `Re(e^{unit * phase} F)`: spacelike
/// `cos(phase) X + sin(phase) X*`, timelike `cosh(phase) X + sinh(phase) X*`,
/// where `X*` is the (para)conjugate surface (`X*_u = X_v`). Requires a
/// conformal ZMC patch with analytic extension.
///
/// Mixing by `phase` turns the Hopf form by `phase` and therefore the
/// Weingarten operator by only half of it; see [`associate_deform`] for the
/// deformation indexed by the Weingarten rotation angle.
pub fn conjugate_mix(
    patch: &ExtensionPatch,
    phase: f64,
) -> Result<ExtensionPatch, BjorlingError> {
    let kind = patch.ext.kind();
    let domain = patch.domain.clone();
    // sample well clear of degeneracy loci, where curvature evaluation
    // loses accuracy
    let mut wide = domain.clone();
    wide.margin = wide.margin.max(0.1);
    let mut samples = Vec::new();
    for u in wide.sample_u(-1.0, 1.0, 5) {
        for v in [-0.4, 0.2, 0.5] {
            samples.push((u, v));
        }
    }
    let residual = conformal_zmc_residual(patch, &samples);
    if residual > ASSOCIATE_TOL {
        return Err(BjorlingError::NonConformal { residual });
    }
    let factor = Hyper::new(0.0, phase, kind).exp();
    let ext = ScaledExtension { inner: patch.ext.clone_ext(), factor };
    Ok(ExtensionPatch::new(Box::new(ext), domain, patch.signature))
}

/// The associate surface with Weingarten rotation angle `theta`: at matched
/// points the deformed shape operator is `Phi_theta A Phi_{-theta}` (with
/// `Phi = R` or `G` by causal kind), the first fundamental form is
/// preserved, and `theta = 0` is the identity. The underlying conjugate
/// mixing advances by `-2 theta`.
pub fn associate_deform(
    patch: &ExtensionPatch,
    theta: f64,
) -> Result<ExtensionPatch, BjorlingError> {
    conjugate_mix(patch, -2.0 * theta)
}
