//! Reparametrization of surfaces of revolution to intrinsic rotational form.
//!
//! Each axis case reduces to an autonomous ODE for the radial coordinate
//! `r(u)`; solving it makes the first fundamental form
//! `rho(u)^2 diag(delta, epsilon)`. The radial trajectory is integrated once
//! at construction and interpolated (cubic Hermite) afterwards; first and
//! second derivatives of `r` come from the ODE itself, so the patch carries
//! a consistent analytic 2-jet.

use crate::minkowski::{MetricSignature, Vec3};
use crate::ode::{self, AdaptiveOptions, OdeError};
use crate::surface::{Jet2, PatchError, SurfacePatch, UvDomain};
use alloc::boxed::Box;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum RevolutionError {
    #[error("sign condition violated at r = {r}: {what}")]
    SignCondition { r: f64, what: &'static str },
    #[error("radial coordinate reached zero during reparametrization")]
    RadialCollapse,
    #[error("delta must be +1 or -1")]
    InvalidDelta,
    #[error("integration failed: {0}")]
    Ode(#[from] OdeError),
}

/// Causal type of the rotation axis (the two spacelike sub-cases differ by
/// the causal character of the orbit circles).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AxisCase {
    /// `x3`-axis; orbits `(r cos v, r sin v, .)`.
    Timelike,
    /// `x1`-axis with timelike orbits `(., f cosh v, f sinh v)`.
    Spacelike1,
    /// `x1`-axis with spacelike orbits `(., f sinh v, f cosh v)`.
    Spacelike2,
    /// Axis spanned by `(1, 0, 1)`.
    Lightlike,
}

/// Profile function with two derivatives.
pub trait Profile: Send + Sync {
    fn jet(&self, r: f64) -> (f64, f64, f64);
}

impl<F: Fn(f64) -> (f64, f64, f64) + Send + Sync> Profile for F {
    fn jet(&self, r: f64) -> (f64, f64, f64) {
        self(r)
    }
}

/// Setup for the reparametrization: the ODE fixes `r'` only up to sign and
/// initial condition, both of which are exposed here.
#[derive(Clone, Copy, Debug)]
pub struct RevolutionSpec {
    pub axis: AxisCase,
    /// `delta` of the target metric `rho^2 (delta du^2 + epsilon dv^2)`;
    /// forced to +1 for `Spacelike1`.
    pub delta: f64,
    /// `r` at `u = u0`.
    pub r0: f64,
    pub u0: f64,
    /// Sign of `r'` (the ODE's square root branch).
    pub prime_sign: f64,
    /// Parametrized `u`-interval.
    pub u_range: (f64, f64),
}

struct RadialTable {
    us: Vec<f64>,
    rs: Vec<f64>,
    drs: Vec<f64>,
}

impl RadialTable {
    /// Cubic Hermite interpolation of `r(u)` between integration nodes.
    fn eval(&self, u: f64) -> Option<f64> {
        let n = self.us.len();
        if n < 2 || u < self.us[0] - 1e-12 || u > self.us[n - 1] + 1e-12 {
            return None;
        }
        let idx = match self.us.binary_search_by(|x| x.partial_cmp(&u).unwrap()) {
            Ok(i) => return Some(self.rs[i]),
            Err(i) => i.clamp(1, n - 1) - 1,
        };
        let (u0, u1) = (self.us[idx], self.us[idx + 1]);
        let h = u1 - u0;
        let t = (u - u0) / h;
        let (p0, p1) = (self.rs[idx], self.rs[idx + 1]);
        let (m0, m1) = (self.drs[idx] * h, self.drs[idx + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        Some(
            (2.0 * t3 - 3.0 * t2 + 1.0) * p0
                + (t3 - 2.0 * t2 + t) * m0
                + (-2.0 * t3 + 3.0 * t2) * p1
                + (t3 - t2) * m1,
        )
    }
}

/// A revolution surface reparametrized to intrinsic rotational coordinates.
pub struct RevolutionPatch {
    axis: AxisCase,
    profile: Box<dyn Profile>,
    rhs_sign: f64,
    delta: f64,
    table: RadialTable,
    domain: UvDomain,
    signature: MetricSignature,
}

fn radial_rhs(
    axis: AxisCase,
    delta: f64,
    profile: &dyn Profile,
    sign: f64,
    r: f64,
) -> Result<f64, RevolutionError> {
    let (f, df, _) = profile.jet(r);
    match axis {
        AxisCase::Timelike => {
            let q = delta * (1.0 - df * df);
            if !(q > 0.0) {
                return Err(RevolutionError::SignCondition { r, what: "delta (1 - f'^2) > 0" });
            }
            // r'^2 = delta r^2 / (1 - f'^2) = r^2 / q
            Ok(sign * r.abs() / q.sqrt())
        }
        AxisCase::Spacelike1 => Ok(sign * f.abs() / (1.0 + df * df).sqrt()),
        AxisCase::Spacelike2 => {
            let q = delta * (1.0 - df * df);
            if !(q > 0.0) {
                return Err(RevolutionError::SignCondition { r, what: "delta (1 - f'^2) > 0" });
            }
            Ok(sign * f.abs() * (delta / (1.0 - df * df)).sqrt())
        }
        AxisCase::Lightlike => {
            let q = delta * df;
            if !(q > 0.0) {
                return Err(RevolutionError::SignCondition { r, what: "delta f' > 0" });
            }
            Ok(sign * r.abs() * (delta / df).sqrt())
        }
    }
}

/// Reparametrize a surface of revolution so its first fundamental form is
/// `rho(u)^2 diag(delta, epsilon)`.
pub fn revolution_reparametrize(
    profile: Box<dyn Profile>,
    spec: &RevolutionSpec,
) -> Result<RevolutionPatch, RevolutionError> {
    if spec.delta.abs() != 1.0 {
        return Err(RevolutionError::InvalidDelta);
    }
    let delta = if spec.axis == AxisCase::Spacelike1 { 1.0 } else { spec.delta };
    // probe the sign condition at the start
    radial_rhs(spec.axis, delta, profile.as_ref(), spec.prime_sign, spec.r0)?;

    let axis = spec.axis;
    let sign = spec.prime_sign.signum();
    let prof = profile.as_ref();
    let rhs = |_u: f64, y: &[f64; 1]| {
        radial_rhs(axis, delta, prof, sign, y[0]).map(|d| [d]).unwrap_or([f64::NAN])
    };
    let n = 2048usize;
    let mut us = crate::surface::linspace(spec.u_range.0, spec.u_range.1, n);
    // integrate outward from u0 in both directions
    let mut table_us = Vec::new();
    let mut table_rs = Vec::new();
    let mut table_drs = Vec::new();
    us.retain(|u| u.is_finite());
    let left: Vec<f64> =
        us.iter().copied().filter(|&u| u < spec.u0).rev().collect();
    let right: Vec<f64> = us.iter().copied().filter(|&u| u >= spec.u0).collect();
    let opts = AdaptiveOptions { rtol: 1e-12, atol: 1e-13, ..Default::default() };
    let halt = |_u: f64, y: &[f64; 1]| !(y[0].abs() > 1e-12) || !y[0].is_finite();
    let (l_states, l_halt) =
        ode::integrate_samples(&rhs, spec.u0, [spec.r0], &left, &opts, &halt)?;
    let (r_states, r_halt) =
        ode::integrate_samples(&rhs, spec.u0, [spec.r0], &right, &opts, &halt)?;
    if l_halt.is_some() || r_halt.is_some() {
        return Err(RevolutionError::RadialCollapse);
    }
    for (u, y) in l_states.into_iter().rev().chain(r_states) {
        table_us.push(u);
        table_rs.push(y[0]);
        table_drs.push(radial_rhs(axis, delta, prof, sign, y[0])?);
    }
    let signature = match axis {
        AxisCase::Spacelike1 => MetricSignature::TIMELIKE_U,
        _ => {
            if delta > 0.0 {
                MetricSignature::SPACELIKE
            } else {
                MetricSignature::TIMELIKE_V
            }
        }
    };
    let domain = UvDomain {
        u_min: spec.u_range.0,
        u_max: spec.u_range.1,
        v_min: f64::NEG_INFINITY,
        v_max: f64::INFINITY,
        u_exclusions: Vec::new(),
        margin: 0.0,
    };
    Ok(RevolutionPatch {
        axis,
        profile,
        rhs_sign: sign,
        delta,
        table: RadialTable { us: table_us, rs: table_rs, drs: table_drs },
        domain,
        signature,
    })
}

impl RevolutionPatch {
    /// `(r, r', r'')` at `u`; derivatives from the autonomous ODE.
    fn radial_jet(&self, u: f64) -> Result<(f64, f64, f64), PatchError> {
        let r = self.table.eval(u).ok_or(PatchError::OutsideDomain { u, v: 0.0 })?;
        let d1 = radial_rhs(self.axis, self.delta, self.profile.as_ref(), self.rhs_sign, r)
            .map_err(|_| PatchError::Degenerate { u, v: 0.0 })?;
        // r'' = dF/dr * F for r' = F(r), via a small centered step in r
        let hr = 1e-6 * (1.0 + r.abs());
        let fp = radial_rhs(self.axis, self.delta, self.profile.as_ref(), self.rhs_sign, r + hr)
            .map_err(|_| PatchError::Degenerate { u, v: 0.0 })?;
        let fm = radial_rhs(self.axis, self.delta, self.profile.as_ref(), self.rhs_sign, r - hr)
            .map_err(|_| PatchError::Degenerate { u, v: 0.0 })?;
        let d2 = (fp - fm) / (2.0 * hr) * d1;
        Ok((r, d1, d2))
    }

    /// The conformal factor of the reparametrized metric.
    pub fn rho(&self, u: f64) -> Result<f64, PatchError> {
        let (r, _, _) = self.radial_jet(u)?;
        let (f, _, _) = self.profile.jet(r);
        Ok(match self.axis {
            AxisCase::Timelike | AxisCase::Lightlike => r.abs(),
            AxisCase::Spacelike1 | AxisCase::Spacelike2 => f.abs(),
        })
    }
}

impl SurfacePatch for RevolutionPatch {
    fn jet(&self, u: f64, v: f64) -> Result<Jet2, PatchError> {
        if !self.domain.contains(u, v) {
            return Err(PatchError::OutsideDomain { u, v });
        }
        let (r, r1, r2) = self.radial_jet(u)?;
        let (f, df, d2f) = self.profile.jet(r);
        // chain rule: d/du f(r(u)) = f' r', d2/du2 = f'' r'^2 + f' r''
        let fu = df * r1;
        let fuu = d2f * r1 * r1 + df * r2;
        Ok(match self.axis {
            AxisCase::Timelike => {
                let (sv, cv) = v.sin_cos();
                Jet2 {
                    x: Vec3::new(r * cv, r * sv, f),
                    xu: Vec3::new(r1 * cv, r1 * sv, fu),
                    xv: Vec3::new(-r * sv, r * cv, 0.0),
                    xuu: Vec3::new(r2 * cv, r2 * sv, fuu),
                    xuv: Vec3::new(-r1 * sv, r1 * cv, 0.0),
                    xvv: Vec3::new(-r * cv, -r * sv, 0.0),
                }
            }
            AxisCase::Spacelike1 => {
                let (sv, cv) = (v.sinh(), v.cosh());
                Jet2 {
                    x: Vec3::new(r, f * cv, f * sv),
                    xu: Vec3::new(r1, fu * cv, fu * sv),
                    xv: Vec3::new(0.0, f * sv, f * cv),
                    xuu: Vec3::new(r2, fuu * cv, fuu * sv),
                    xuv: Vec3::new(0.0, fu * sv, fu * cv),
                    xvv: Vec3::new(0.0, f * cv, f * sv),
                }
            }
            AxisCase::Spacelike2 => {
                let (sv, cv) = (v.sinh(), v.cosh());
                Jet2 {
                    x: Vec3::new(r, f * sv, f * cv),
                    xu: Vec3::new(r1, fu * sv, fu * cv),
                    xv: Vec3::new(0.0, f * cv, f * sv),
                    xuu: Vec3::new(r2, fuu * sv, fuu * cv),
                    xuv: Vec3::new(0.0, fu * cv, fu * sv),
                    xvv: Vec3::new(0.0, f * sv, f * cv),
                }
            }
            AxisCase::Lightlike => {
                // Half-scaled parametrization of the lightlike-axis orbit so
                // that I = f' r'^2 du^2 + r^2 dv^2 exactly.
                Jet2 {
                    x: Vec3::new(
                        0.5 * (f + r * (1.0 - v * v)),
                        -v * r,
                        0.5 * (f - r * (1.0 + v * v)),
                    ),
                    xu: Vec3::new(
                        0.5 * (fu + r1 * (1.0 - v * v)),
                        -v * r1,
                        0.5 * (fu - r1 * (1.0 + v * v)),
                    ),
                    xv: Vec3::new(-r * v, -r, -r * v),
                    xuu: Vec3::new(
                        0.5 * (fuu + r2 * (1.0 - v * v)),
                        -v * r2,
                        0.5 * (fuu - r2 * (1.0 + v * v)),
                    ),
                    xuv: Vec3::new(-r1 * v, -r1, -r1 * v),
                    xvv: Vec3::new(-r, 0.0, -r),
                }
            }
        })
    }

    fn domain(&self) -> &UvDomain {
        &self.domain
    }

    fn signature(&self) -> Option<MetricSignature> {
        Some(self.signature)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel;
    use approx::assert_abs_diff_eq;

    fn linear_profile() -> Box<dyn Profile> {
        Box::new(|r: f64| (r, 1.0, 0.0))
    }

    #[test]
    fn lightlike_axis_linear_profile_is_exponential() {
        // f(r) = r, delta = 1: r'^2 = r^2 so r = e^u from r0 = 1
        let spec = RevolutionSpec {
            axis: AxisCase::Lightlike,
            delta: 1.0,
            r0: 1.0,
            u0: 0.0,
            prime_sign: 1.0,
            u_range: (-1.0, 1.0),
        };
        let patch = revolution_reparametrize(linear_profile(), &spec).unwrap();
        for &u in &[-0.8, -0.2, 0.0, 0.4, 0.9] {
            let rho = patch.rho(u).unwrap();
            assert_abs_diff_eq!(rho, u.exp(), epsilon = 1e-9);
            let j = patch.jet(u, 0.7).unwrap();
            let i = kernel::first_form(&j).unwrap();
            let e2u = (2.0 * u).exp();
            assert_abs_diff_eq!(i.e, e2u, epsilon = 1e-6 * e2u.max(1.0));
            assert_abs_diff_eq!(i.g, e2u, epsilon = 1e-6 * e2u.max(1.0));
            assert_abs_diff_eq!(i.f, 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn spacelike1_axis_gives_timelike_patch() {
        // f(r) = r: (1 + f'^2) r'^2 = f^2 -> r = r0 e^{u/sqrt 2}
        let spec = RevolutionSpec {
            axis: AxisCase::Spacelike1,
            delta: 1.0,
            r0: 1.0,
            u0: 0.0,
            prime_sign: 1.0,
            u_range: (-1.0, 1.0),
        };
        let patch = revolution_reparametrize(linear_profile(), &spec).unwrap();
        assert_eq!(patch.signature(), Some(MetricSignature::TIMELIKE_U));
        for &(u, v) in &[(0.3, 0.5), (-0.6, -0.2)] {
            let j = patch.jet(u, v).unwrap();
            let i = kernel::first_form(&j).unwrap();
            let rho2 = patch.rho(u).unwrap().powi(2);
            assert_abs_diff_eq!(i.e, rho2, epsilon = 1e-6 * rho2);
            assert_abs_diff_eq!(i.g, -rho2, epsilon = 1e-6 * rho2);
            assert_abs_diff_eq!(i.f, 0.0, epsilon = 1e-8);
            // exact solution check
            assert_abs_diff_eq!(
                patch.rho(u).unwrap(),
                (u / 2.0f64.sqrt()).exp(),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn timelike_axis_first_form_is_intrinsic_rotational() {
        // profile with |f'| < 1: f(r) = r/2
        let profile: Box<dyn Profile> = Box::new(|r: f64| (0.5 * r, 0.5, 0.0));
        let spec = RevolutionSpec {
            axis: AxisCase::Timelike,
            delta: 1.0,
            r0: 1.0,
            u0: 0.0,
            prime_sign: 1.0,
            u_range: (-0.8, 0.8),
        };
        let patch = revolution_reparametrize(profile, &spec).unwrap();
        for &(u, v) in &[(0.2, 1.0), (-0.5, 2.2)] {
            let j = patch.jet(u, v).unwrap();
            let i = kernel::first_form(&j).unwrap();
            let rho2 = patch.rho(u).unwrap().powi(2);
            assert_abs_diff_eq!(i.e / rho2, 1.0, epsilon = 1e-6);
            assert_abs_diff_eq!(i.g / rho2, 1.0, epsilon = 1e-6);
            assert_abs_diff_eq!(i.f, 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn spacelike2_axis_solves_its_radial_equation() {
        // f(r) = r/2: (1 - f'^2) r'^2 = delta f^2 with delta = 1 gives
        // r = r0 e^{u / sqrt(3)}
        let profile: Box<dyn Profile> = Box::new(|r: f64| (0.5 * r, 0.5, 0.0));
        let spec = RevolutionSpec {
            axis: AxisCase::Spacelike2,
            delta: 1.0,
            r0: 1.0,
            u0: 0.0,
            prime_sign: 1.0,
            u_range: (-0.8, 0.8),
        };
        let patch = revolution_reparametrize(profile, &spec).unwrap();
        assert_eq!(patch.signature(), Some(MetricSignature::SPACELIKE));
        for &(u, v) in &[(0.4, 0.9), (-0.5, -0.3)] {
            let j = patch.jet(u, v).unwrap();
            let i = kernel::first_form(&j).unwrap();
            let rho2 = patch.rho(u).unwrap().powi(2);
            assert_abs_diff_eq!(i.e / rho2, 1.0, epsilon = 1e-6);
            assert_abs_diff_eq!(i.g / rho2, 1.0, epsilon = 1e-6);
            assert_abs_diff_eq!(
                patch.rho(u).unwrap(),
                0.5 * (u / 3.0f64.sqrt()).exp(),
                epsilon = 1e-8
            );
        }
    }

    #[test]
    fn sign_condition_is_enforced() {
        // timelike axis with |f'| > 1 and delta = +1 violates delta(1 - f'^2) > 0
        let profile: Box<dyn Profile> = Box::new(|r: f64| (2.0 * r, 2.0, 0.0));
        let spec = RevolutionSpec {
            axis: AxisCase::Timelike,
            delta: 1.0,
            r0: 1.0,
            u0: 0.0,
            prime_sign: 1.0,
            u_range: (-0.5, 0.5),
        };
        assert!(matches!(
            revolution_reparametrize(profile, &spec),
            Err(RevolutionError::SignCondition { .. })
        ));
        // delta = -1 makes it admissible (timelike patch)
        let profile: Box<dyn Profile> = Box::new(|r: f64| (2.0 * r, 2.0, 0.0));
        let spec = RevolutionSpec { delta: -1.0, ..spec };
        let patch = revolution_reparametrize(profile, &spec).unwrap();
        assert_eq!(patch.signature(), Some(MetricSignature::TIMELIKE_V));
        let j = patch.jet(0.1, 0.3).unwrap();
        let i = kernel::first_form(&j).unwrap();
        assert!(i.e < 0.0 && i.g > 0.0);
    }
}
