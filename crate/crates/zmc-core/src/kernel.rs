//! Fundamental forms, Weingarten operator, curvatures, twist extraction, and
//! the Gauss/Codazzi compatibility residuals of intrinsic rotational data.
//!
//! Conventions: the unit normal is `N = (X_u x X_v) / |X_u x X_v|` with
//! `<N,N> = -sigma`; the Weingarten operator is `A = I^{-1} II` in the basis
//! `{d/du, d/dv}`; `H = -sigma (lambda1 + lambda2) / 2` and
//! `K = -sigma det A`.

use crate::fd;
use crate::minkowski::{
    lorentz_cross, lorentz_dot, rotation, Mat2, MetricSignature, RotationKind, Vec3,
};
use crate::surface::{Jet2, SurfacePatch};
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum KernelError {
    #[error("degenerate first fundamental form (EG - F^2 = {disc})")]
    DegenerateMetric { disc: f64 },
    #[error("lightlike normal direction: <n, n> = {norm2}")]
    DegenerateNormal { norm2: f64 },
    #[error("negative radicand H^2 + sigma K = {value}")]
    NegativeRadicand { value: f64 },
    #[error("conformal factor vanishes")]
    ZeroConformalFactor,
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum TwistError {
    #[error("umbilic line: the twist angle is undefined")]
    UmbilicLine,
    #[error("timelike twist structure violated: |2 a21 / (a11 - a22)| = {ratio} >= 1")]
    StructureViolated { ratio: f64 },
    #[error("shape operator unavailable: {0}")]
    Kernel(#[from] KernelError),
    #[error("patch evaluation failed")]
    Patch,
}

/// Induced metric coefficients `E = <X_u,X_u>`, `F = <X_u,X_v>`, `G = <X_v,X_v>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FirstForm {
    pub fn discriminant(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

/// Second fundamental form coefficients against the unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecondForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

/// Weingarten operator in the basis `{d/du, d/dv}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeOperator {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl ShapeOperator {
    pub fn mat(&self) -> Mat2 {
        Mat2::new(self.a11, self.a12, self.a21, self.a22)
    }

    pub fn from_mat(m: Mat2) -> Self {
        ShapeOperator { a11: m.a11, a12: m.a12, a21: m.a21, a22: m.a22 }
    }
}

/// Curvature data derived from a shape operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureSummary {
    /// Mean curvature `H`.
    pub mean: f64,
    /// Gauss curvature `K`.
    pub gauss: f64,
    pub lambda1: Option<f64>,
    pub lambda2: Option<f64>,
    pub diagonalizable: bool,
    pub umbilic: bool,
}

/// Twist angle along `u = const`, with linear fit and structure residual.
#[derive(Clone, Debug)]
pub struct TwistReport {
    /// Unwrapped samples `(v, alpha(v))`.
    pub alpha_samples: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Max over samples of the off-diagonal remainder after conjugating the
    /// shape operator back by the extracted angle.
    pub structure_residual: f64,
}

pub fn first_form(jet: &Jet2) -> Result<FirstForm, KernelError> {
    let e = lorentz_dot(jet.xu, jet.xu);
    let f = lorentz_dot(jet.xu, jet.xv);
    let g = lorentz_dot(jet.xv, jet.xv);
    let ff = FirstForm { e, f, g };
    let scale = e.abs().max(g.abs()).max(f.abs()).max(1e-300);
    if ff.discriminant().abs() <= 1e-14 * scale * scale {
        return Err(KernelError::DegenerateMetric { disc: ff.discriminant() });
    }
    Ok(ff)
}

/// Unit normal and the causal sign of the surface.
#[derive(Clone, Copy, Debug)]
pub struct UnitNormal {
    pub n: Vec3,
    /// `sigma`: +1 when the surface is spacelike (timelike normal), -1 when
    /// timelike (spacelike normal); `<N, N> = -sigma`.
    pub sigma: f64,
}

pub fn unit_normal(jet: &Jet2) -> Result<UnitNormal, KernelError> {
    let n = lorentz_cross(jet.xu, jet.xv);
    let nn = lorentz_dot(n, n);
    let scale = n.max_abs().max(1e-300);
    if nn.abs() <= 1e-24 * scale * scale {
        return Err(KernelError::DegenerateNormal { norm2: nn });
    }
    let sigma = if nn < 0.0 { 1.0 } else { -1.0 };
    Ok(UnitNormal { n: n / nn.abs().sqrt(), sigma })
}

pub fn second_form(jet: &Jet2, normal: Vec3) -> SecondForm {
    SecondForm {
        e: lorentz_dot(jet.xuu, normal),
        f: lorentz_dot(jet.xuv, normal),
        g: lorentz_dot(jet.xvv, normal),
    }
}

/// Shape operator `A = I^{-1} II` with the surface's causal sign.
pub fn shape_operator(jet: &Jet2) -> Result<(ShapeOperator, f64), KernelError> {
    let i = first_form(jet)?;
    let un = unit_normal(jet)?;
    let ii = second_form(jet, un.n);
    let im = Mat2::new(i.e, i.f, i.f, i.g);
    let iim = Mat2::new(ii.e, ii.f, ii.f, ii.g);
    let inv = im.inverse().ok_or(KernelError::DegenerateMetric { disc: im.det() })?;
    Ok((ShapeOperator::from_mat(inv.mul(&iim)), un.sigma))
}

/// Residual of the self-adjointness of `A` w.r.t. the first form: `I A`
/// must be symmetric.
pub fn self_adjointness_residual(i: &FirstForm, a: &ShapeOperator) -> f64 {
    let im = Mat2::new(i.e, i.f, i.f, i.g);
    let ia = im.mul(&a.mat());
    (ia.a12 - ia.a21).abs()
}

/// Curvatures from the shape operator. Complex eigenvalue pairs (possible
/// only on timelike surfaces) clear the `diagonalizable` flag and omit the
/// principal curvatures.
pub fn curvature_summary(a: &ShapeOperator, sigma: f64) -> CurvatureSummary {
    let m = a.mat();
    let tr = m.trace();
    let det = m.det();
    let mean = -sigma * tr / 2.0;
    let gauss = -sigma * det;
    // (a11 - a22)^2 + 4 a12 a21 equals tr^2 - 4 det without the
    // catastrophic cancellation near umbilics
    let d = m.a11 - m.a22;
    let disc = d * d + 4.0 * m.a12 * m.a21;
    let scale = 1.0 + m.max_abs();
    let umb_tol = 1e-9 * scale;
    if disc < -umb_tol * umb_tol {
        return CurvatureSummary {
            mean,
            gauss,
            lambda1: None,
            lambda2: None,
            diagonalizable: false,
            umbilic: false,
        };
    }
    let sq = disc.max(0.0).sqrt();
    let l1 = (tr + sq) / 2.0;
    let l2 = (tr - sq) / 2.0;
    let eigen_equal = (l1 - l2).abs() <= 1e-9 * (1.0 + l1.abs() + l2.abs());
    // Equal eigenvalues with a non-scalar matrix is a shear: not
    // diagonalizable, and not geometrically umbilic.
    let offdiag = a.a12.abs().max(a.a21.abs());
    let diagonalizable = !eigen_equal || offdiag <= umb_tol;
    CurvatureSummary {
        mean,
        gauss,
        lambda1: diagonalizable.then_some(l1),
        lambda2: diagonalizable.then_some(l2),
        diagonalizable,
        umbilic: eigen_equal && diagonalizable,
    }
}

/// Skew curvature `sqrt(H^2 + sigma K)`; equals half the principal-curvature
/// gap when the shape operator diagonalizes.
pub fn skew_curvature(mean: f64, gauss: f64, sigma: f64) -> Result<f64, KernelError> {
    let r = mean * mean + sigma * gauss;
    if r < 0.0 {
        return Err(KernelError::NegativeRadicand { value: r });
    }
    Ok(r.sqrt())
}

/// Levi-Civita coefficients of `rho(u)^2 diag(delta, epsilon)` in the
/// unit frame `U = d_u / rho`, `V = d_v / rho`:
/// `(nabla_U U, nabla_U V, nabla_V U = c3 V, nabla_V V = c4 U)` as
/// `(0, 0, rho'/rho^2, -delta epsilon rho'/rho^2)`.
pub fn levi_civita_coeffs(
    rho: f64,
    rho_prime: f64,
    signature: MetricSignature,
) -> Result<[f64; 4], KernelError> {
    if rho == 0.0 {
        return Err(KernelError::ZeroConformalFactor);
    }
    let c = rho_prime / (rho * rho);
    Ok([0.0, 0.0, c, -signature.delta() * signature.epsilon() * c])
}

/// Twist angle of a single shape operator, before unwrapping.
fn raw_twist_angle(a: &ShapeOperator, kind: RotationKind) -> Result<f64, TwistError> {
    let d = a.a11 - a.a22;
    match kind {
        RotationKind::Euclidean => {
            let scale = 1.0 + a.mat().max_abs();
            if d.abs() <= 1e-13 * scale && a.a12.abs() <= 1e-13 * scale {
                return Err(TwistError::UmbilicLine);
            }
            Ok(-0.5 * (2.0 * a.a12).atan2(d))
        }
        RotationKind::Hyperbolic => {
            let scale = 1.0 + a.mat().max_abs();
            if d.abs() <= 1e-13 * scale && a.a21.abs() <= 1e-13 * scale {
                return Err(TwistError::UmbilicLine);
            }
            let ratio = 2.0 * a.a21 / d;
            if !ratio.is_finite() || ratio.abs() >= 1.0 {
                return Err(TwistError::StructureViolated { ratio });
            }
            Ok(-0.5 * ratio.atanh())
        }
    }
}

/// Extract the twist `alpha(v)` of a patch along the line `u = u_fixed`.
///
/// Spacelike surfaces use `alpha = -atan2(2 a12, a11 - a22) / 2` with the
/// branch (defined modulo pi/2 by eigenvalue relabeling) unwrapped for
/// continuity in `v` before the linear fit; timelike surfaces use the
/// hyperbolic analogue, which is branch-free.
pub fn extract_twist(
    patch: &dyn SurfacePatch,
    u_fixed: f64,
    v_samples: &[f64],
) -> Result<TwistReport, TwistError> {
    let mut samples = Vec::with_capacity(v_samples.len());
    let mut structure_residual: f64 = 0.0;
    let mut prev: Option<f64> = None;
    for &v in v_samples {
        let jet = patch.jet(u_fixed, v).map_err(|_| TwistError::Patch)?;
        let (a, sigma) = shape_operator(&jet)?;
        let kind =
            if sigma > 0.0 { RotationKind::Euclidean } else { RotationKind::Hyperbolic };
        let mut alpha = raw_twist_angle(&a, kind)?;
        if kind == RotationKind::Euclidean {
            if let Some(p) = prev {
                // shift by multiples of pi/2 (eigenvalue relabeling) for
                // continuity in v
                let step = core::f64::consts::FRAC_PI_2;
                let k = ((p - alpha) / step).round();
                alpha += k * step;
            }
        }
        prev = Some(alpha);
        samples.push((v, alpha));

        // conjugate back: Phi_alpha A Phi_{-alpha} must be diagonal
        let phi = rotation(kind, alpha);
        let d = phi.conjugate(&a.mat());
        structure_residual = structure_residual.max(d.a12.abs().max(d.a21.abs()));
    }
    let (slope, intercept) = linear_fit(&samples);
    Ok(TwistReport { alpha_samples: samples, slope, intercept, structure_residual })
}

fn linear_fit(samples: &[(f64, f64)]) -> (f64, f64) {
    let n = samples.len() as f64;
    if samples.len() < 2 {
        return (0.0, samples.first().map(|s| s.1).unwrap_or(0.0));
    }
    let sx: f64 = samples.iter().map(|s| s.0).sum();
    let sy: f64 = samples.iter().map(|s| s.1).sum();
    let sxx: f64 = samples.iter().map(|s| s.0 * s.0).sum();
    let sxy: f64 = samples.iter().map(|s| s.0 * s.1).sum();
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return (0.0, sy / n);
    }
    let slope = (n * sxy - sx * sy) / denom;
    (slope, (sy - slope * sx) / n)
}

/// A scalar function of one variable with derivatives supplied analytically
/// or by finite differences.
pub enum Scalar1 <'a> {
    /// Value only; derivatives by Richardson-extrapolated central differences.
    Numeric(&'a dyn Fn(f64) -> f64),
    /// `(f, f', f'')`.
    Analytic(&'a dyn Fn(f64) -> (f64, f64, f64)),
}

impl Scalar1<'_> {
    pub fn jet(&self, x: f64) -> (f64, f64, f64) {
        match self {
            Scalar1::Numeric(f) => {
                let h = fd::default_step(x);
                (f(x), fd::d1(*f, x, h), fd::d2(*f, x, fd::default_step2(x)))
            }
            Scalar1::Analytic(f) => f(x),
        }
    }
}

/// Which Codazzi system applies: the causal character of the surface is
/// given by `signature`, the conjugating rotation by `twist_kind`. The
/// matched combinations (spacelike/Euclidean, timelike/hyperbolic) are the
/// twist structure of the surface families; the crossed ones arise when the
/// opposite rotation type is imposed.
pub struct CompatibilityInput<'a> {
    pub lambda1: Scalar1<'a>,
    pub lambda2: Scalar1<'a>,
    pub rho: Scalar1<'a>,
    /// Twist angle and its derivative.
    pub alpha: &'a dyn Fn(f64) -> f64,
    pub signature: MetricSignature,
    pub twist_kind: RotationKind,
}

/// Pointwise residuals of the Gauss equation and the applicable Codazzi pair.
#[derive(Clone, Debug, Default)]
pub struct CompatibilityResiduals {
    pub gauss_max: f64,
    pub codazzi1_max: f64,
    pub codazzi2_max: f64,
}

impl CompatibilityResiduals {
    pub fn codazzi_max(&self) -> f64 {
        self.codazzi1_max.max(self.codazzi2_max)
    }
}

/// Evaluate the compatibility residuals on a `(u, v)` grid.
///
/// Gauss: `lambda1 lambda2 - epsilon (rho rho'' - rho'^2) / rho^4`.
/// The Codazzi pair is selected by `(signature, twist_kind)`.
pub fn compatibility_residuals(
    input: &CompatibilityInput<'_>,
    u_grid: &[f64],
    v_grid: &[f64],
) -> CompatibilityResiduals {
    let mut out = CompatibilityResiduals::default();
    let eps = input.signature.epsilon();
    for &u in u_grid {
        let (l1, l1p, _) = input.lambda1.jet(u);
        let (l2, l2p, _) = input.lambda2.jet(u);
        let (r, rp, rpp) = input.rho.jet(u);
        let gauss = l1 * l2 - eps * (r * rpp - rp * rp) / (r * r * r * r);
        out.gauss_max = out.gauss_max.max(gauss.abs());
        for &v in v_grid {
            let al = (input.alpha)(v);
            let alp = fd::d1(input.alpha, v, fd::default_step(v));
            let (c1, c2) = codazzi_pair(
                input.signature,
                input.twist_kind,
                l1,
                l2,
                l1p,
                l2p,
                r,
                rp,
                al,
                alp,
            );
            out.codazzi1_max = out.codazzi1_max.max(c1.abs());
            out.codazzi2_max = out.codazzi2_max.max(c2.abs());
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn codazzi_pair(
    signature: MetricSignature,
    twist_kind: RotationKind,
    l1: f64,
    l2: f64,
    l1p: f64,
    l2p: f64,
    rho: f64,
    rhop: f64,
    alpha: f64,
    alphap: f64,
) -> (f64, f64) {
    let spacelike = signature.sigma() > 0.0;
    match (spacelike, twist_kind) {
        (true, RotationKind::Euclidean) => {
            let c1 = (2.0 * alpha).sin() * rho * (l1p + l2p);
            let (s, c) = alpha.sin_cos();
            let c2 = -l1p * s * s + l2p * c * c
                + (l1 - l2) * (rho * alphap - rhop) / rho;
            (c1, c2)
        }
        (false, RotationKind::Hyperbolic) => {
            let c1 = (2.0 * alpha).sinh() * rho * (l1p + l2p);
            let (s, c) = (alpha.sinh(), alpha.cosh());
            let c2 = s * s * l1p + c * c * l2p + (l1 - l2) * (rho * alphap - rhop) / rho;
            (c1, c2)
        }
        (false, RotationKind::Euclidean) => {
            let c1 = (2.0 * alpha).sin() * rho * (l2p - l1p + 2.0 * alphap * (l1 - l2));
            let (s, c) = alpha.sin_cos();
            let c2 = l1p * s * s + l2p * c * c
                + (l1 - l2) / rho * (2.0 * alpha).cos() * (rho * alphap - rhop);
            (c1, c2)
        }
        (true, RotationKind::Hyperbolic) => {
            let (s, c) = (alpha.sinh(), alpha.cosh());
            let c1 = c * s * rho * (2.0 * alphap * (l2 - l1) + l1p - l2p);
            let c2 = rho * (-s * s * l1p + c * c * l2p)
                + (2.0 * alpha).cosh() * (l1 - l2) * (rho * alphap - rhop);
            (c1, c2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{ClosurePatch, UvDomain};
    use alloc::boxed::Box;
    use approx::assert_abs_diff_eq;

    fn plane_jet(u: f64, v: f64) -> Jet2 {
        Jet2 {
            x: Vec3::new(u, v, 0.0),
            xu: Vec3::new(1.0, 0.0, 0.0),
            xv: Vec3::new(0.0, 1.0, 0.0),
            xuu: Vec3::ZERO,
            xuv: Vec3::ZERO,
            xvv: Vec3::ZERO,
        }
    }

    #[test]
    fn plane_forms_and_normal() {
        let j = plane_jet(0.2, 0.4);
        let i = first_form(&j).unwrap();
        assert_eq!((i.e, i.f, i.g), (1.0, 0.0, 1.0));
        let un = unit_normal(&j).unwrap();
        assert_eq!(un.sigma, 1.0);
        assert_abs_diff_eq!(lorentz_dot(un.n, un.n), -1.0);
        assert_abs_diff_eq!(un.n.x3.abs(), 1.0);
    }

    #[test]
    fn curvature_summary_identity_operator() {
        let a = ShapeOperator { a11: 1.0, a12: 0.0, a21: 0.0, a22: 1.0 };
        let s = curvature_summary(&a, 1.0);
        assert_abs_diff_eq!(s.mean, -1.0);
        assert_abs_diff_eq!(s.gauss, -1.0);
        assert!(s.umbilic);
        assert!(s.diagonalizable);
    }

    #[test]
    fn curvature_summary_complex_pair() {
        // rotation-like operator: eigenvalues i, -i
        let a = ShapeOperator { a11: 0.0, a12: -1.0, a21: 1.0, a22: 0.0 };
        let s = curvature_summary(&a, -1.0);
        assert!(!s.diagonalizable);
        assert!(s.lambda1.is_none());
    }

    #[test]
    fn skew_curvature_values() {
        assert_abs_diff_eq!(skew_curvature(0.0, 0.0, 1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(skew_curvature(1.0, 0.0, 1.0).unwrap(), 1.0);
        // spacelike Enneper at u = ln 2: H = 0, K = (2/9)^2
        let k = (2.0f64 / 9.0) * (2.0 / 9.0);
        assert_abs_diff_eq!(skew_curvature(0.0, k, 1.0).unwrap(), 2.0 / 9.0, epsilon = 1e-15);
        assert!(skew_curvature(0.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn levi_civita_cases() {
        let s = MetricSignature::SPACELIKE;
        assert_eq!(levi_civita_coeffs(1.0, 0.0, s).unwrap(), [0.0, 0.0, 0.0, 0.0]);
        // rho = e^u at u = 0: rho'/rho^2 = 1
        let c = levi_civita_coeffs(1.0, 1.0, s).unwrap();
        assert_eq!(c, [0.0, 0.0, 1.0, -1.0]);
        let t = MetricSignature::TIMELIKE_U;
        let ct = levi_civita_coeffs(1.0, 1.0, t).unwrap();
        assert_eq!(ct, [0.0, 0.0, 1.0, 1.0]);
        assert!(levi_civita_coeffs(0.0, 1.0, s).is_err());
    }

    /// Pseudosphere patch x1^2 + x2^2 - x3^2 = -1 (upper sheet), a totally
    /// umbilic spacelike surface; brute-force oracle for the umbilic flag.
    #[test]
    fn pseudosphere_is_umbilic() {
        let eval = |s: f64, t: f64| {
            let j = Jet2 {
                x: Vec3::new(s.sinh() * t.cos(), s.sinh() * t.sin(), s.cosh()),
                xu: Vec3::new(s.cosh() * t.cos(), s.cosh() * t.sin(), s.sinh()),
                xv: Vec3::new(-s.sinh() * t.sin(), s.sinh() * t.cos(), 0.0),
                xuu: Vec3::new(s.sinh() * t.cos(), s.sinh() * t.sin(), s.cosh()),
                xuv: Vec3::new(-s.cosh() * t.sin(), s.cosh() * t.cos(), 0.0),
                xvv: Vec3::new(-s.sinh() * t.cos(), -s.sinh() * t.sin(), 0.0),
            };
            Ok(j)
        };
        let patch = ClosurePatch {
            eval: Box::new(eval),
            domain: UvDomain::unbounded(),
            signature: Some(MetricSignature::SPACELIKE),
        };
        let mut lam = None;
        for s in [0.4, 0.9, 1.5] {
            for t in [0.0, 1.0, 2.5] {
                let jet = patch.jet(s, t).unwrap();
                let (a, sigma) = shape_operator(&jet).unwrap();
                assert_eq!(sigma, 1.0);
                let cs = curvature_summary(&a, sigma);
                assert!(cs.umbilic, "A = {:?}", a);
                let l = cs.lambda1.unwrap();
                if let Some(prev) = lam {
                    assert_abs_diff_eq!(l, prev, epsilon = 1e-9);
                }
                lam = Some(l);
            }
        }
    }

    #[test]
    fn compatibility_flat_plane_is_exact() {
        let l = |_u: f64| (0.0, 0.0, 0.0);
        let r = |_u: f64| (1.0, 0.0, 0.0);
        let alpha = |_v: f64| 0.0;
        let input = CompatibilityInput {
            lambda1: Scalar1::Analytic(&l),
            lambda2: Scalar1::Analytic(&l),
            rho: Scalar1::Analytic(&r),
            alpha: &alpha,
            signature: MetricSignature::SPACELIKE,
            twist_kind: RotationKind::Euclidean,
        };
        let res = compatibility_residuals(&input, &[0.0, 0.5], &[0.0, 1.0]);
        assert_eq!(res.gauss_max, 0.0);
        assert_eq!(res.codazzi_max(), 0.0);
    }
}
