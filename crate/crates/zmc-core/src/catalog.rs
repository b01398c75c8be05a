//! Closed-form catalog of intrinsic rotational ZMC surfaces.
//!
//! Three families, classified by causal type and twist slope `a` (twist
//! `alpha(v) = a v`), each with three branches according to whether the
//! exponent `B` equals `±2a`:
//!
//! * spacelike (`delta = epsilon = 1`),
//! * timelike with spacelike `u`-curves (`delta = 1, epsilon = -1`),
//! * timelike with timelike `u`-curves (`delta = -1, epsilon = 1`).
//!
//! Every patch is the real part of an explicit exponential form in
//! `z = u + unit*v`, so jets are hand-differentiated closed forms. The named
//! surfaces (the two Enneper surfaces, the second timelike Enneper, and the
//! elliptic/timelike catenoids) are fixed members or untwisted limits of the
//! families.

use crate::conformal::{signed_rho_jet, RhoJet};
use crate::hyper::{Hyper, HyperKind};
use crate::minkowski::MetricSignature;
use crate::surface::{ExpForm, ExpForm3, ExtensionPatch, UvDomain};
use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("invalid family parameters: {0}")]
    InvalidParams(&'static str),
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("u = {u} lies on the degeneracy locus u = {locus}")]
    DegenerateU { u: f64, locus: f64 },
}

/// Causal kind of a family surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FamilyKind {
    /// Spacelike surface, `delta = epsilon = 1`.
    Spacelike,
    /// Timelike surface with spacelike `u`-direction, `delta = 1, epsilon = -1`.
    TimelikeU,
    /// Timelike surface with timelike `u`-direction, `delta = -1, epsilon = 1`.
    TimelikeV,
}

impl FamilyKind {
    pub fn signature(self) -> MetricSignature {
        match self {
            FamilyKind::Spacelike => MetricSignature::SPACELIKE,
            FamilyKind::TimelikeU => MetricSignature::TIMELIKE_U,
            FamilyKind::TimelikeV => MetricSignature::TIMELIKE_V,
        }
    }

    pub fn hyper_kind(self) -> HyperKind {
        match self {
            FamilyKind::Spacelike => HyperKind::Complex,
            _ => HyperKind::Paracomplex,
        }
    }
}

/// Exponent branch of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Branch {
    Generic,
    /// `B = 2a`: linear terms appear in the parametrization.
    TwiceSlope,
    /// `B = -2a`.
    NegTwiceSlope,
}

/// Parameters `(kind, a, A, B)` selecting one closed-form ZMC family member.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FamilyParams {
    pub kind: FamilyKind,
    /// Twist slope, nonzero.
    pub a: f64,
    /// Coefficient `A > 0`.
    pub big_a: f64,
    /// Exponent `B`; the constructor classifies `B = ±2a` branches.
    pub big_b: f64,
    pub branch: Branch,
}

impl FamilyParams {
    /// Classify and validate. `B = ±2a` (exact float equality) selects the
    /// special branches; otherwise `B` must be positive.
    pub fn new(kind: FamilyKind, a: f64, big_a: f64, big_b: f64) -> Result<Self, CatalogError> {
        if a == 0.0 || !a.is_finite() {
            return Err(CatalogError::InvalidParams("twist slope a must be nonzero"));
        }
        if !(big_a > 0.0) || !big_a.is_finite() {
            return Err(CatalogError::InvalidParams("A must be positive"));
        }
        if !big_b.is_finite() || big_b == 0.0 {
            return Err(CatalogError::InvalidParams("B must be nonzero"));
        }
        let branch = if big_b == 2.0 * a {
            Branch::TwiceSlope
        } else if big_b == -2.0 * a {
            Branch::NegTwiceSlope
        } else if big_b > 0.0 {
            Branch::Generic
        } else {
            return Err(CatalogError::InvalidParams("generic branch requires B > 0"));
        };
        Ok(FamilyParams { kind, a, big_a, big_b, branch })
    }

    /// The exponent actually used in closed forms: `B`, `2a`, or `-2a`.
    /// Negative on the `B = -2a` branch when `a > 0`; all closed forms
    /// remain valid with the signed value.
    pub fn effective_b(&self) -> f64 {
        match self.branch {
            Branch::Generic => self.big_b,
            Branch::TwiceSlope => 2.0 * self.a,
            Branch::NegTwiceSlope => -2.0 * self.a,
        }
    }

    pub fn signature(&self) -> MetricSignature {
        self.kind.signature()
    }

    pub fn epsilon(&self) -> f64 {
        self.signature().epsilon()
    }

    /// Degeneracy locus `u = -ln A / B`; the timelike family with spacelike
    /// `u`-curves is globally immersed.
    pub fn exclusion(&self) -> Option<f64> {
        match self.kind {
            FamilyKind::TimelikeU => None,
            _ => Some(-self.big_a.ln() / self.effective_b()),
        }
    }

    /// Signed conformal factor jet. Its absolute value is the metric factor;
    /// the sign bookkeeping keeps the frame and base-curve closed forms
    /// mutually consistent on every branch.
    pub fn rho_signed(&self, u: f64) -> RhoJet {
        signed_rho_jet(self.a, self.big_a, self.effective_b(), self.epsilon(), u)
    }

    pub fn id(&self) -> String {
        let kind = match self.kind {
            FamilyKind::Spacelike => "spacelike",
            FamilyKind::TimelikeU => "timelike-u",
            FamilyKind::TimelikeV => "timelike-v",
        };
        format!("family:{kind},a={},A={},B={}", self.a, self.big_a, self.big_b)
    }
}

/// Stated closed-form metric coefficients `u -> (E, G)` (`F = 0`).
pub type StatedFirstForm = Box<dyn Fn(f64) -> (f64, f64) + Send + Sync>;

/// A catalog entry: patch, stated metric, stated domain, provenance.
pub struct NamedSurface {
    pub id: String,
    pub patch: ExtensionPatch,
    pub stated_first_form: StatedFirstForm,
    /// Human-readable origin of the surface within the classification.
    pub provenance: String,
    /// Twist slope the shape operator must exhibit.
    pub twist_slope: f64,
    /// Family parameters when the entry is a family member.
    pub params: Option<FamilyParams>,
}

fn re(c: f64, kind: HyperKind) -> Hyper {
    Hyper::real(c, kind)
}

fn unit_c(c: f64, kind: HyperKind) -> Hyper {
    Hyper::new(0.0, c, kind)
}

/// Build the analytic extension `F` with `X = Re F(u + unit v)` for a family
/// member, following the branch displays.
pub fn family_extension(p: &FamilyParams) -> ExpForm3 {
    let kind = p.kind.hyper_kind();
    let (a, big_a) = (p.a, p.big_a);
    let a2 = big_a * big_a;
    let zero = || ExpForm::zero(kind);
    match (p.kind, p.branch) {
        (FamilyKind::Spacelike, Branch::Generic) => {
            let b = p.big_b;
            let n = 2.0 * big_a * b;
            let (s, t) = (2.0 * a + b, 2.0 * a - b);
            ExpForm3 {
                comps: [
                    zero().term(re(a2 / (n * s), kind), s).term(re(1.0 / (n * t), kind), t),
                    zero()
                        .term(unit_c(a2 / (n * s), kind), s)
                        .term(unit_c(-1.0 / (n * t), kind), t),
                    zero().term(re(1.0 / (2.0 * a * b), kind), 2.0 * a),
                ],
            }
        }
        (FamilyKind::Spacelike, Branch::TwiceSlope) => {
            let n16 = 16.0 * a * a * big_a;
            ExpForm3 {
                comps: [
                    zero().term(re(a2 / n16, kind), 4.0 * a).with_linear(re(4.0 * a / n16, kind)),
                    zero()
                        .term(unit_c(a2 / n16, kind), 4.0 * a)
                        .with_linear(unit_c(-4.0 * a / n16, kind)),
                    zero().term(re(1.0 / (4.0 * a * a), kind), 2.0 * a),
                ],
            }
        }
        (FamilyKind::Spacelike, Branch::NegTwiceSlope) => {
            let n16 = 16.0 * a * a * big_a;
            ExpForm3 {
                comps: [
                    zero()
                        .term(re(-1.0 / n16, kind), 4.0 * a)
                        .with_linear(re(-4.0 * a * a2 / n16, kind)),
                    zero()
                        .term(unit_c(1.0 / n16, kind), 4.0 * a)
                        .with_linear(unit_c(-4.0 * a * a2 / n16, kind)),
                    zero().term(re(-1.0 / (4.0 * a * a), kind), 2.0 * a),
                ],
            }
        }
        (FamilyKind::TimelikeU, Branch::Generic) => {
            let b = p.big_b;
            let n = 2.0 * big_a * b;
            let (s, t) = (2.0 * a + b, 2.0 * a - b);
            ExpForm3 {
                comps: [
                    zero().term(re(1.0 / (2.0 * a * b), kind), 2.0 * a),
                    zero().term(re(1.0 / (n * t), kind), t).term(re(-a2 / (n * s), kind), s),
                    zero()
                        .term(unit_c(-a2 / (n * s), kind), s)
                        .term(unit_c(-1.0 / (n * t), kind), t),
                ],
            }
        }
        (FamilyKind::TimelikeU, Branch::TwiceSlope) => {
            let n16 = 16.0 * a * a * big_a;
            ExpForm3 {
                comps: [
                    zero().term(re(1.0 / (4.0 * a * a), kind), 2.0 * a),
                    zero().term(re(-a2 / n16, kind), 4.0 * a).with_linear(re(4.0 * a / n16, kind)),
                    zero()
                        .term(unit_c(-a2 / n16, kind), 4.0 * a)
                        .with_linear(unit_c(-4.0 * a / n16, kind)),
                ],
            }
        }
        (FamilyKind::TimelikeU, Branch::NegTwiceSlope) => {
            let n16 = 16.0 * a * a * big_a;
            ExpForm3 {
                comps: [
                    zero().term(re(-1.0 / (4.0 * a * a), kind), 2.0 * a),
                    zero()
                        .term(re(-1.0 / n16, kind), 4.0 * a)
                        .with_linear(re(4.0 * a * a2 / n16, kind)),
                    zero()
                        .term(unit_c(1.0 / n16, kind), 4.0 * a)
                        .with_linear(unit_c(4.0 * a * a2 / n16, kind)),
                ],
            }
        }
        (FamilyKind::TimelikeV, Branch::Generic) => {
            let b = p.big_b;
            let n = 2.0 * big_a * b;
            let (s, t) = (2.0 * a + b, 2.0 * a - b);
            ExpForm3 {
                comps: [
                    zero().term(re(1.0 / (2.0 * a * b), kind), 2.0 * a),
                    zero()
                        .term(unit_c(-a2 / (n * s), kind), s)
                        .term(unit_c(1.0 / (n * t), kind), t),
                    zero().term(re(-1.0 / (n * t), kind), t).term(re(-a2 / (n * s), kind), s),
                ],
            }
        }
        (FamilyKind::TimelikeV, Branch::TwiceSlope) => {
            let n16 = 16.0 * a * a * big_a;
            ExpForm3 {
                comps: [
                    zero().term(re(1.0 / (4.0 * a * a), kind), 2.0 * a),
                    zero()
                        .term(unit_c(-a2 / n16, kind), 4.0 * a)
                        .with_linear(unit_c(4.0 * a / n16, kind)),
                    zero()
                        .term(re(-a2 / n16, kind), 4.0 * a)
                        .with_linear(re(-4.0 * a / n16, kind)),
                ],
            }
        }
        (FamilyKind::TimelikeV, Branch::NegTwiceSlope) => {
            let n16 = 16.0 * a * a * big_a;
            ExpForm3 {
                comps: [
                    zero().term(re(-1.0 / (4.0 * a * a), kind), 2.0 * a),
                    zero()
                        .term(unit_c(-1.0 / n16, kind), 4.0 * a)
                        .with_linear(unit_c(4.0 * a * a2 / n16, kind)),
                    zero()
                        .term(re(1.0 / n16, kind), 4.0 * a)
                        .with_linear(re(4.0 * a * a2 / n16, kind)),
                ],
            }
        }
    }
}

fn family_domain(p: &FamilyParams) -> UvDomain {
    let mut d = UvDomain::unbounded();
    if let Some(x) = p.exclusion() {
        d.u_exclusions.push(x);
    }
    d
}

/// The stated metric factor `rho^2` of a family member (always positive off
/// the degeneracy locus).
pub fn family_metric_factor(p: &FamilyParams, u: f64) -> f64 {
    let be = p.effective_b();
    let (a, big_a) = (p.a, p.big_a);
    let q = big_a * big_a * (2.0 * be * u).exp();
    let base = ((4.0 * a - 2.0 * be) * u).exp() / (4.0 * big_a * big_a * be * be);
    match p.kind {
        FamilyKind::TimelikeU => base * (q + 1.0) * (q + 1.0),
        _ => base * (q - 1.0) * (q - 1.0),
    }
}

/// The theorem's closed-form metric coefficients `(E, G)` at `u`.
pub fn catalog_first_form(p: &FamilyParams, u: f64) -> Result<(f64, f64), CatalogError> {
    if let DomainStatus::Degenerate { locus } = domain_check(p, u) {
        return Err(CatalogError::DegenerateU { u, locus });
    }
    let r2 = family_metric_factor(p, u);
    Ok(match p.kind {
        FamilyKind::Spacelike => (r2, r2),
        FamilyKind::TimelikeU => (r2, -r2),
        FamilyKind::TimelikeV => (-r2, r2),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DomainStatus {
    Valid,
    Degenerate { locus: f64 },
}

/// Flag `u` on a degeneracy locus (where the map fails to be an immersion).
pub fn domain_check(p: &FamilyParams, u: f64) -> DomainStatus {
    match p.exclusion() {
        Some(locus) if (u - locus).abs() <= 1e-9 * (1.0 + locus.abs()) => {
            DomainStatus::Degenerate { locus }
        }
        _ => DomainStatus::Valid,
    }
}

/// Build the closed-form patch of a family member.
pub fn theorem_surface(p: &FamilyParams) -> Result<NamedSurface, CatalogError> {
    let ext = family_extension(p);
    let patch = ExtensionPatch::new(Box::new(ext), family_domain(p), p.signature());
    let params = *p;
    let stated = Box::new(move |u: f64| {
        let r2 = family_metric_factor(&params, u);
        match params.kind {
            FamilyKind::Spacelike => (r2, r2),
            FamilyKind::TimelikeU => (r2, -r2),
            FamilyKind::TimelikeV => (-r2, r2),
        }
    });
    let provenance = match (p.kind, p.branch) {
        (FamilyKind::Spacelike, _) => "spacelike intrinsic rotational ZMC family",
        (FamilyKind::TimelikeU, _) => {
            "timelike intrinsic rotational ZMC family, spacelike u-curves"
        }
        (FamilyKind::TimelikeV, _) => {
            "timelike intrinsic rotational ZMC family, timelike u-curves"
        }
    };
    Ok(NamedSurface {
        id: p.id(),
        patch,
        stated_first_form: stated,
        provenance: provenance.to_owned(),
        twist_slope: p.a,
        params: Some(*p),
    })
}

/// Untwisted (`a = 0`) rotational members: the catenoid kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CatenoidKind {
    /// Spacelike, rotational about the `x3`-axis.
    Elliptic,
    /// Timelike, hyperbolic-rotational about the `x1`-axis.
    Timelike,
}

/// The untwisted ZMC surface of revolution with parameters `A, B > 0`.
pub fn catenoid(kind: CatenoidKind, big_a: f64, big_b: f64) -> Result<NamedSurface, CatalogError> {
    if !(big_a > 0.0) || !(big_b > 0.0) {
        return Err(CatalogError::InvalidParams("catenoid needs A, B > 0"));
    }
    let (a2b2, ab2) = (2.0 * big_b * big_b, 2.0 * big_a * big_b * big_b);
    match kind {
        CatenoidKind::Elliptic => {
            let k = HyperKind::Complex;
            let radial =
                ExpForm::zero(k).term(re(big_a / a2b2, k), big_b).term(re(-1.0 / ab2, k), -big_b);
            let f2 = ExpForm::zero(k)
                .term(unit_c(-big_a / a2b2, k), big_b)
                .term(unit_c(-1.0 / ab2, k), -big_b);
            let f3 = ExpForm::zero(k).with_linear(re(1.0 / big_b, k));
            let ext = ExpForm3 { comps: [radial, f2, f3] };
            let mut domain = UvDomain::unbounded();
            domain.u_exclusions.push(-big_a.ln() / big_b);
            let patch = ExtensionPatch::new(Box::new(ext), domain, MetricSignature::SPACELIKE);
            let (fa, fb) = (big_a, big_b);
            Ok(NamedSurface {
                id: format!("elliptic-catenoid:A={big_a},B={big_b}"),
                patch,
                stated_first_form: Box::new(move |u| {
                    let r = ((fb * u).exp() * fa / (2.0 * fb) - (-fb * u).exp() / (2.0 * fa * fb))
                        .abs();
                    (r * r, r * r)
                }),
                provenance: "elliptic catenoid (untwisted spacelike ZMC surface of revolution)"
                    .to_owned(),
                twist_slope: 0.0,
                params: None,
            })
        }
        CatenoidKind::Timelike => {
            let k = HyperKind::Paracomplex;
            let f1 = ExpForm::zero(k).with_linear(re(1.0 / big_b, k));
            let f2 = ExpForm::zero(k)
                .term(re(-big_a / a2b2, k), big_b)
                .term(re(-1.0 / ab2, k), -big_b);
            let f3 = ExpForm::zero(k)
                .term(unit_c(-big_a / a2b2, k), big_b)
                .term(unit_c(1.0 / ab2, k), -big_b);
            let ext = ExpForm3 { comps: [f1, f2, f3] };
            let patch = ExtensionPatch::new(
                Box::new(ext),
                UvDomain::unbounded(),
                MetricSignature::TIMELIKE_U,
            );
            let (fa, fb) = (big_a, big_b);
            Ok(NamedSurface {
                id: format!("timelike-catenoid:A={big_a},B={big_b}"),
                patch,
                stated_first_form: Box::new(move |u| {
                    let r = (fb * u).exp() * fa / (2.0 * fb) + (-fb * u).exp() / (2.0 * fa * fb);
                    (r * r, -r * r)
                }),
                provenance: "timelike catenoid (untwisted timelike ZMC surface of revolution)"
                    .to_owned(),
                twist_slope: 0.0,
                params: None,
            })
        }
    }
}

/// Ids accepted by [`named_surface`].
pub const NAMED_IDS: [&str; 5] = [
    "enneper_spacelike",
    "enneper_timelike",
    "enneper_timelike_2",
    "elliptic_catenoid",
    "timelike_catenoid",
];

/// The named surfaces of the catalog, in their classical normalizations.
pub fn named_surface(id: &str) -> Result<NamedSurface, CatalogError> {
    match id {
        "enneper_spacelike" => {
            let k = HyperKind::Complex;
            // X = e^u ((e^{2u} cos 3v + 3 cos v)/3, (e^{2u} sin 3v - 3 sin v)/3, -e^u cos 2v)
            let ext = ExpForm3 {
                comps: [
                    ExpForm::zero(k).term(re(1.0 / 3.0, k), 3.0).term(re(1.0, k), 1.0),
                    ExpForm::zero(k).term(unit_c(-1.0 / 3.0, k), 3.0).term(unit_c(1.0, k), 1.0),
                    ExpForm::zero(k).term(re(-1.0, k), 2.0),
                ],
            };
            let mut domain = UvDomain::unbounded();
            domain.u_exclusions.push(0.0);
            Ok(NamedSurface {
                id: id.to_owned(),
                patch: ExtensionPatch::new(Box::new(ext), domain, MetricSignature::SPACELIKE),
                stated_first_form: Box::new(|u| {
                    let e = (2.0 * u).exp() * ((2.0 * u).exp() - 1.0).powi(2);
                    (e, e)
                }),
                provenance: "spacelike Enneper surface (spacelike family at a = A = B = 1, \
                             classical normalization)"
                    .to_owned(),
                twist_slope: 1.0,
                params: None,
            })
        }
        "enneper_timelike" => {
            let k = HyperKind::Paracomplex;
            // X = e^u (e^u cosh 2v, (3 cosh v - e^{2u} cosh 3v)/3, (3 sinh v + e^{2u} sinh 3v)/3)
            let ext = ExpForm3 {
                comps: [
                    ExpForm::zero(k).term(re(1.0, k), 2.0),
                    ExpForm::zero(k).term(re(1.0, k), 1.0).term(re(-1.0 / 3.0, k), 3.0),
                    ExpForm::zero(k).term(unit_c(1.0, k), 1.0).term(unit_c(1.0 / 3.0, k), 3.0),
                ],
            };
            Ok(NamedSurface {
                id: id.to_owned(),
                patch: ExtensionPatch::new(
                    Box::new(ext),
                    UvDomain::unbounded(),
                    MetricSignature::TIMELIKE_U,
                ),
                stated_first_form: Box::new(|u| {
                    let e = (2.0 * u).exp() * (1.0 + (2.0 * u).exp()).powi(2);
                    (e, -e)
                }),
                provenance: "timelike Enneper surface (timelike family with spacelike u-curves \
                             at a = A = B = 1, classical normalization)"
                    .to_owned(),
                twist_slope: 1.0,
                params: None,
            })
        }
        "enneper_timelike_2" => {
            let k = HyperKind::Paracomplex;
            // X = (e^{2u} cosh 2v / 2,
            //      -e^u (e^{2u} sinh 3v - 3 sinh v)/6,
            //      -e^u (e^{2u} cosh 3v + 3 cosh v)/6)
            let ext = ExpForm3 {
                comps: [
                    ExpForm::zero(k).term(re(0.5, k), 2.0),
                    ExpForm::zero(k)
                        .term(unit_c(-1.0 / 6.0, k), 3.0)
                        .term(unit_c(0.5, k), 1.0),
                    ExpForm::zero(k).term(re(-1.0 / 6.0, k), 3.0).term(re(-0.5, k), 1.0),
                ],
            };
            let mut domain = UvDomain::unbounded();
            domain.u_exclusions.push(0.0);
            Ok(NamedSurface {
                id: id.to_owned(),
                patch: ExtensionPatch::new(Box::new(ext), domain, MetricSignature::TIMELIKE_V),
                stated_first_form: Box::new(|u| {
                    let q = (2.0 * u).exp() * ((2.0 * u).exp() - 1.0).powi(2) / 4.0;
                    (-q, q)
                }),
                provenance: "second timelike Enneper surface (timelike family with timelike \
                             u-curves at a = A = B = 1)"
                    .to_owned(),
                twist_slope: 1.0,
                params: Some(FamilyParams::new(FamilyKind::TimelikeV, 1.0, 1.0, 1.0)?),
            })
        }
        "elliptic_catenoid" => {
            let mut s = catenoid(CatenoidKind::Elliptic, 1.0, 1.0)?;
            s.id = id.to_owned();
            Ok(s)
        }
        "timelike_catenoid" => {
            let mut s = catenoid(CatenoidKind::Timelike, 1.0, 1.0)?;
            s.id = id.to_owned();
            Ok(s)
        }
        other => Err(CatalogError::UnknownId(other.to_owned())),
    }
}

/// Polynomial parametrization of the second timelike Enneper surface; agrees
/// with the exponential form under `(e^u cosh v, e^u sinh v) -> (u, v)`.
pub fn enneper_timelike_2_polynomial(u: f64, v: f64) -> crate::minkowski::Vec3 {
    crate::minkowski::Vec3::new(
        0.5 * (u * u + v * v),
        -v * (3.0 * u * u + v * v - 3.0) / 6.0,
        -u * (u * u + 3.0 * v * v + 3.0) / 6.0,
    )
}

/// Sampling window for verification sweeps over a family member.
///
/// `u` runs over `[-1.5, 1.5]` keeping 0.12 clear of degeneracy loci and
/// dropping points where the metric factor falls below 0.02 (curvature
/// evaluation loses digits as the immersion degenerates). The `v` window is
/// `[-pi, pi]` for spacelike members; timelike members use `[-0.6, 0.6]`,
/// inside which their hyperbolic-cosine cancellations stay far below the
/// verification tolerances.
pub fn verification_grid(p: &FamilyParams, nu: usize, nv: usize) -> (Vec<f64>, Vec<f64>) {
    let mut domain = UvDomain::unbounded();
    if let Some(x) = p.exclusion() {
        domain.u_exclusions.push(x);
    }
    domain.margin = 0.12;
    let us: Vec<f64> = domain
        .sample_u(-1.5, 1.5, nu)
        .into_iter()
        .filter(|&u| family_metric_factor(p, u) >= 0.02)
        .collect();
    let vmax = match p.kind {
        FamilyKind::Spacelike => core::f64::consts::PI,
        _ => 0.6,
    };
    let vs = crate::surface::linspace(-vmax, vmax, nv);
    (us, vs)
}

/// All family members over a small parameter grid (used by the verification
/// suites): `a in {0.5, 1, 2}`, `A in {0.5, 1, 2}`, `B in {1, 3, 2a, -2a}`.
pub fn standard_family_grid(kind: FamilyKind) -> Vec<FamilyParams> {
    let mut out = Vec::new();
    for &a in &[0.5, 1.0, 2.0] {
        for &big_a in &[0.5, 1.0, 2.0] {
            for &big_b in &[1.0, 3.0, 2.0 * a, -2.0 * a] {
                if let Ok(p) = FamilyParams::new(kind, a, big_a, big_b) {
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel;
    use crate::minkowski::Vec3;
    use crate::surface::SurfacePatch;
    use approx::assert_abs_diff_eq;

    #[test]
    fn params_classify_branches() {
        let p = FamilyParams::new(FamilyKind::Spacelike, 0.5, 1.0, 1.0).unwrap();
        assert_eq!(p.branch, Branch::TwiceSlope);
        let p = FamilyParams::new(FamilyKind::Spacelike, 0.5, 1.0, -1.0).unwrap();
        assert_eq!(p.branch, Branch::NegTwiceSlope);
        assert_eq!(p.effective_b(), -1.0);
        let p = FamilyParams::new(FamilyKind::Spacelike, 1.0, 1.0, 3.0).unwrap();
        assert_eq!(p.branch, Branch::Generic);
        assert!(FamilyParams::new(FamilyKind::Spacelike, 0.0, 1.0, 1.0).is_err());
        assert!(FamilyParams::new(FamilyKind::Spacelike, 1.0, -1.0, 1.0).is_err());
        assert!(FamilyParams::new(FamilyKind::Spacelike, 1.0, 1.0, -3.0).is_err());
    }

    #[test]
    fn spacelike_twice_slope_frozen_point() {
        // a = 1/2, A = 1, (u, v) = (0, 0) -> X = (1/4, 0, 1).
        // With A = 1 the point u = 0 is the non-immersion locus, so evaluate
        // the analytic position map rather than the jet.
        let p = FamilyParams::new(FamilyKind::Spacelike, 0.5, 1.0, 1.0).unwrap();
        let s = theorem_surface(&p).unwrap();
        let x = s.patch.position(0.0, 0.0).unwrap();
        assert_abs_diff_eq!(x.x1, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(x.x2, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(x.x3, 1.0, epsilon = 1e-15);
        assert!(s.patch.jet(0.0, 0.0).is_err());
    }

    #[test]
    fn stated_first_form_frozen_values() {
        // spacelike B = 2a, A = 2, a = 1, u = 0: E = 9/64
        let p = FamilyParams::new(FamilyKind::Spacelike, 1.0, 2.0, 2.0).unwrap();
        let (e, g) = catalog_first_form(&p, 0.0).unwrap();
        assert_abs_diff_eq!(e, 9.0 / 64.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g, 9.0 / 64.0, epsilon = 1e-15);

        // spacelike generic A = 1, B = 3: u = 0 is the degeneracy locus
        let p = FamilyParams::new(FamilyKind::Spacelike, 1.0, 1.0, 3.0).unwrap();
        assert!(matches!(catalog_first_form(&p, 0.0), Err(CatalogError::DegenerateU { .. })));

        // timelike-u generic: no exclusions, G = -E < 0 everywhere
        let p = FamilyParams::new(FamilyKind::TimelikeU, 1.0, 1.0, 3.0).unwrap();
        assert_eq!(p.exclusion(), None);
        let (e, g) = catalog_first_form(&p, 0.0).unwrap();
        assert!(e > 0.0);
        assert_abs_diff_eq!(g, -e);
    }

    #[test]
    fn domain_check_cases() {
        let p = FamilyParams::new(FamilyKind::Spacelike, 1.0, 1.0, 3.0).unwrap();
        assert!(matches!(domain_check(&p, 0.0), DomainStatus::Degenerate { .. }));
        assert_eq!(domain_check(&p, 0.4), DomainStatus::Valid);

        // timelike-v, B = -2a, A = e^2, a = 1: u = ln A / (2a) = 1 degenerate
        let p =
            FamilyParams::new(FamilyKind::TimelikeV, 1.0, core::f64::consts::E.powi(2), -2.0)
                .unwrap();
        assert!(matches!(domain_check(&p, 1.0), DomainStatus::Degenerate { locus } if (locus - 1.0).abs() < 1e-12));
    }

    #[test]
    fn named_surface_frozen_points() {
        // enneper_spacelike at (ln 2, 0) -> (14/3, 0, -4)
        let s = named_surface("enneper_spacelike").unwrap();
        let j = s.patch.jet(2.0f64.ln(), 0.0).unwrap();
        assert_abs_diff_eq!(j.x.x1, 14.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(j.x.x2, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(j.x.x3, -4.0, epsilon = 1e-12);

        // enneper_timelike at (0, 0) -> (1, 2/3, 0)
        let s = named_surface("enneper_timelike").unwrap();
        let j = s.patch.jet(0.0, 0.0).unwrap();
        assert_abs_diff_eq!(j.x.x1, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(j.x.x2, 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(j.x.x3, 0.0, epsilon = 1e-15);

        assert!(named_surface("no_such_surface").is_err());
    }

    #[test]
    fn named_first_forms_match_kernel() {
        for id in NAMED_IDS {
            let s = named_surface(id).unwrap();
            for &u in &[-1.2, -0.4, 0.5, 1.1] {
                if s.patch.domain().clearance(u) < 0.05 {
                    continue;
                }
                for &v in &[-0.8, 0.3] {
                    let j = s.patch.jet(u, v).unwrap();
                    let i = kernel::first_form(&j).unwrap();
                    let (e, g) = (s.stated_first_form)(u);
                    let scale = e.abs().max(1.0);
                    assert_abs_diff_eq!(i.e, e, epsilon = 1e-10 * scale);
                    assert_abs_diff_eq!(i.g, g, epsilon = 1e-10 * scale);
                    assert_abs_diff_eq!(i.f, 0.0, epsilon = 1e-10 * scale);
                }
            }
        }
    }

    #[test]
    fn ent2_polynomial_and_exponential_forms_agree() {
        let s = named_surface("enneper_timelike_2").unwrap();
        for &(u, v) in &[(1.0, 0.0), (0.5, 0.7), (-0.6, -0.4)] {
            let j = s.patch.jet(u, v).unwrap();
            let big_u = u.exp() * v.cosh();
            let big_v = u.exp() * v.sinh();
            let p = enneper_timelike_2_polynomial(big_u, big_v);
            assert_abs_diff_eq!((j.x - p).max_abs(), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn catenoid_rotational_equivariance() {
        // elliptic: Euclidean rotation about x3; timelike: hyperbolic about x1
        let s = named_surface("elliptic_catenoid").unwrap();
        for &theta in &[0.1, 1.0] {
            for &(u, v) in &[(-0.9, 0.3), (0.7, -1.0)] {
                let x = s.patch.jet(u, v).unwrap().x;
                let y = s.patch.jet(u, v + theta).unwrap().x;
                let rot = Vec3::new(
                    theta.cos() * x.x1 - theta.sin() * x.x2,
                    theta.sin() * x.x1 + theta.cos() * x.x2,
                    x.x3,
                );
                assert_abs_diff_eq!((rot - y).max_abs(), 0.0, epsilon = 1e-10);
            }
        }
        let s = named_surface("timelike_catenoid").unwrap();
        for &theta in &[0.1, 1.0] {
            for &(u, v) in &[(-0.9, 0.3), (0.7, -1.0)] {
                let x = s.patch.jet(u, v).unwrap().x;
                let y = s.patch.jet(u, v + theta).unwrap().x;
                let rot = Vec3::new(
                    x.x1,
                    theta.cosh() * x.x2 + theta.sinh() * x.x3,
                    theta.sinh() * x.x2 + theta.cosh() * x.x3,
                );
                assert_abs_diff_eq!((rot - y).max_abs(), 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn family_grid_is_branch_complete() {
        let g = standard_family_grid(FamilyKind::Spacelike);
        assert!(g.iter().any(|p| p.branch == Branch::Generic));
        assert!(g.iter().any(|p| p.branch == Branch::TwiceSlope));
        assert!(g.iter().any(|p| p.branch == Branch::NegTwiceSlope));
        // a = 0.5 makes B = 1 the 2a-branch; no duplicate entries
        for (i, p) in g.iter().enumerate() {
            for q in &g[i + 1..] {
                assert_ne!(p, q);
            }
        }
    }
}
