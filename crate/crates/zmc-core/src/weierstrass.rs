//! Weierstrass representation of conformal ZMC immersions.
//!
//! A surface is encoded by a pair `(g, omega)`; the induced derivative
//! triple is
//!
//! * spacelike:  `phi = ((1 + g^2)/2, i (1 - g^2)/2, g) * omega`,
//! * timelike:   `phi = (g, (1 - g^2)/2, tau (1 + g^2)/2) * omega`,
//!
//! with `phi1^2 + phi2^2 - phi3^2 = 0`, and the surface is recovered by the
//! adopted convention `X = 2 Re int phi dz`. The closed-form families have
//! exponential data; the integer families `E_s(n, m)` / `E_t(n, m)` have
//! exact monomial data `g = z^n`, `omega = z^{-n-m-1} dz` (spacelike) or
//! `omega = z^{-(n-m+1)} dz` (timelike), over which residues and periods are
//! computed in exact rational arithmetic.

use crate::catalog::{FamilyKind, FamilyParams};
use crate::hyper::{Hyper, HyperError, HyperKind, HyperVec3};
use crate::minkowski::Vec3;
use crate::quad;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum WeierstrassError {
    #[error("no closed-form Weierstrass pair is provided for this family kind")]
    UnsupportedFamilyKind,
    #[error("evaluation point is a pole or lies on the logarithm cut")]
    PoleOrCut,
    #[error("integer family needs n != 0")]
    ZeroOrder,
    #[error("quadrature failed")]
    Quadrature,
}

/// One closed-form scalar: an exponential `coef e^{k z}` or a monomial
/// `coef z^p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarForm {
    Exp { coef: Hyper, k: f64 },
    Monomial { coef: Hyper, p: i64 },
}

impl ScalarForm {
    pub fn eval(&self, z: Hyper) -> Result<Hyper, HyperError> {
        match self {
            ScalarForm::Exp { coef, k } => Ok(*coef * z.scale(*k).exp()),
            ScalarForm::Monomial { coef, p } => Ok(*coef * z.powi(*p)?),
        }
    }
}

/// Weierstrass data `(g, omega = omega_coeff dz)` of one causal kind.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeierstrassData {
    pub kind: HyperKind,
    pub g: ScalarForm,
    pub omega_coeff: ScalarForm,
}

/// Extract the closed-form pair of a family member. Pairs are available for
/// the spacelike family and the timelike family with spacelike `u`-curves;
/// the other timelike family reconstructs through the Björling route.
pub fn weierstrass_from_family(p: &FamilyParams) -> Result<WeierstrassData, WeierstrassError> {
    let be = p.effective_b();
    let (a, big_a) = (p.a, p.big_a);
    match p.kind {
        FamilyKind::Spacelike => {
            let kind = HyperKind::Complex;
            Ok(WeierstrassData {
                kind,
                g: ScalarForm::Exp { coef: Hyper::real(1.0 / big_a, kind), k: -be },
                omega_coeff: ScalarForm::Exp {
                    coef: Hyper::real(big_a / (2.0 * be), kind),
                    k: 2.0 * a + be,
                },
            })
        }
        FamilyKind::TimelikeU => {
            let kind = HyperKind::Paracomplex;
            Ok(WeierstrassData {
                kind,
                g: ScalarForm::Exp { coef: Hyper::real(big_a, kind), k: be },
                omega_coeff: ScalarForm::Exp {
                    coef: Hyper::real(1.0 / (big_a * be), kind),
                    k: 2.0 * a - be,
                },
            })
        }
        FamilyKind::TimelikeV => Err(WeierstrassError::UnsupportedFamilyKind),
    }
}

/// A term `(num/den) * unit^{unit_pow} * z^{exponent}` with exact rational
/// coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonoTerm {
    pub num: i64,
    pub den: i64,
    /// 0 for a real coefficient, 1 for a `unit` multiple.
    pub unit_pow: u8,
    pub exponent: i64,
}

impl MonoTerm {
    pub fn coef_hyper(&self, kind: HyperKind) -> Hyper {
        let c = self.num as f64 / self.den as f64;
        if self.unit_pow == 0 {
            Hyper::real(c, kind)
        } else {
            Hyper::new(0.0, c, kind)
        }
    }
}

/// The derivative triple `phi`, either exponential (families) or exact
/// monomial sums (integer families).
#[derive(Clone, Debug, PartialEq)]
pub enum HolomorphicDerivative {
    Exp { kind: HyperKind, comps: [Vec<(Hyper, f64)>; 3] },
    Monomial { kind: HyperKind, comps: [Vec<MonoTerm>; 3] },
}

impl HolomorphicDerivative {
    pub fn kind(&self) -> HyperKind {
        match self {
            HolomorphicDerivative::Exp { kind, .. } => *kind,
            HolomorphicDerivative::Monomial { kind, .. } => *kind,
        }
    }

    pub fn eval(&self, z: Hyper) -> Result<HyperVec3, WeierstrassError> {
        let kind = self.kind();
        let mut out = [Hyper::zero(kind); 3];
        match self {
            HolomorphicDerivative::Exp { comps, .. } => {
                for (i, comp) in comps.iter().enumerate() {
                    for &(c, k) in comp {
                        out[i] = out[i] + c * z.scale(k).exp();
                    }
                }
            }
            HolomorphicDerivative::Monomial { comps, .. } => {
                for (i, comp) in comps.iter().enumerate() {
                    for t in comp {
                        let zp = z.powi(t.exponent).map_err(|_| WeierstrassError::PoleOrCut)?;
                        out[i] = out[i] + t.coef_hyper(kind) * zp;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `phi1^2 + phi2^2 - phi3^2` at `z` (zero for conformal data).
    pub fn conformality_residual(&self, z: Hyper) -> Result<f64, WeierstrassError> {
        let p = self.eval(z)?;
        let s = p[0] * p[0] + p[1] * p[1] - p[2] * p[2];
        Ok(s.re.abs().max(s.im.abs()))
    }

    /// Termwise derivative (exact for both exponential and monomial data).
    pub fn derivative(&self) -> HolomorphicDerivative {
        match self {
            HolomorphicDerivative::Exp { kind, comps } => HolomorphicDerivative::Exp {
                kind: *kind,
                comps: core::array::from_fn(|i| {
                    comps[i].iter().map(|&(c, k)| (c.scale(k), k)).collect()
                }),
            },
            HolomorphicDerivative::Monomial { kind, comps } => HolomorphicDerivative::Monomial {
                kind: *kind,
                comps: core::array::from_fn(|i| {
                    comps[i]
                        .iter()
                        .filter(|t| t.exponent != 0)
                        .map(|t| MonoTerm {
                            num: t.num * t.exponent,
                            den: t.den,
                            unit_pow: t.unit_pow,
                            exponent: t.exponent - 1,
                        })
                        .collect()
                }),
            },
        }
    }

    /// Antiderivative evaluated at `z`, taking natural primitives with zero
    /// constants (`e^{kz} -> e^{kz}/k`, `z^p -> z^{p+1}/(p+1)`,
    /// `z^{-1} -> log z`). Errors at poles and on the logarithm cut.
    pub fn primitive(&self, z: Hyper) -> Result<HyperVec3, WeierstrassError> {
        let kind = self.kind();
        let mut out = [Hyper::zero(kind); 3];
        match self {
            HolomorphicDerivative::Exp { comps, .. } => {
                for (i, comp) in comps.iter().enumerate() {
                    for &(c, k) in comp {
                        if k == 0.0 {
                            out[i] = out[i] + c * z;
                        } else {
                            out[i] = out[i] + (c * z.scale(k).exp()).scale(1.0 / k);
                        }
                    }
                }
            }
            HolomorphicDerivative::Monomial { comps, .. } => {
                for (i, comp) in comps.iter().enumerate() {
                    for t in comp {
                        let c = t.coef_hyper(kind);
                        if t.exponent == -1 {
                            let l = z.ln().map_err(|_| WeierstrassError::PoleOrCut)?;
                            out[i] = out[i] + c * l;
                        } else {
                            let p1 = t.exponent + 1;
                            let zp = z.powi(p1).map_err(|_| WeierstrassError::PoleOrCut)?;
                            out[i] = out[i] + (c * zp).scale(1.0 / p1 as f64);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Build `phi` from a Weierstrass pair. The timelike third component's sign
/// is `+tau/2 (1 + g^2)`, fixed so the integer family at `(n, m) = (1, 2)`
/// reproduces the timelike Enneper surface.
pub fn phi_from_data(data: &WeierstrassData) -> Result<HolomorphicDerivative, WeierstrassError> {
    let kind = data.kind;
    let half = 0.5;
    match (data.g, data.omega_coeff) {
        (ScalarForm::Exp { coef: gc, k: gk }, ScalarForm::Exp { coef: oc, k: ok }) => {
            let g2c = gc * gc;
            let g2k = 2.0 * gk;
            let unit = Hyper::unit(kind);
            let comps = match kind {
                HyperKind::Complex => [
                    alloc::vec![(oc.scale(half), ok), ((g2c * oc).scale(half), g2k + ok)],
                    alloc::vec![
                        ((unit * oc).scale(half), ok),
                        (-(unit * g2c * oc).scale(half), g2k + ok),
                    ],
                    alloc::vec![(gc * oc, gk + ok)],
                ],
                HyperKind::Paracomplex => [
                    alloc::vec![(gc * oc, gk + ok)],
                    alloc::vec![(oc.scale(half), ok), (-(g2c * oc).scale(half), g2k + ok)],
                    alloc::vec![
                        ((unit * oc).scale(half), ok),
                        ((unit * g2c * oc).scale(half), g2k + ok),
                    ],
                ],
            };
            Ok(HolomorphicDerivative::Exp { kind, comps })
        }
        (ScalarForm::Monomial { coef: gc, p: gp }, ScalarForm::Monomial { coef: oc, p: op }) => {
            if gc.im != 0.0 || oc.im != 0.0 || gc.re != 1.0 || oc.re != 1.0 {
                // only the normalized integer data take the monomial route
                return Err(WeierstrassError::PoleOrCut);
            }
            Ok(integer_phi(kind, gp, op))
        }
        _ => Err(WeierstrassError::PoleOrCut),
    }
}

fn integer_phi(kind: HyperKind, n: i64, op: i64) -> HolomorphicDerivative {
    // g = z^n, omega = z^{op} dz
    let t = |num: i64, den: i64, unit_pow: u8, exponent: i64| MonoTerm {
        num,
        den,
        unit_pow,
        exponent,
    };
    let comps = match kind {
        HyperKind::Complex => [
            alloc::vec![t(1, 2, 0, op), t(1, 2, 0, 2 * n + op)],
            alloc::vec![t(1, 2, 1, op), t(-1, 2, 1, 2 * n + op)],
            alloc::vec![t(1, 1, 0, n + op)],
        ],
        HyperKind::Paracomplex => [
            alloc::vec![t(1, 1, 0, n + op)],
            alloc::vec![t(1, 2, 0, op), t(-1, 2, 0, 2 * n + op)],
            alloc::vec![t(1, 2, 1, op), t(1, 2, 1, 2 * n + op)],
        ],
    };
    HolomorphicDerivative::Monomial { kind, comps }
}

/// The integer families: `E_s(n, m)` (spacelike) and `E_t(n, m)` (timelike),
/// `g = z^n` with `omega = z^{-n-m-1} dz` resp. `omega = z^{-(n-m+1)} dz`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntegerFamily {
    pub n: i64,
    pub m: i64,
    pub spacelike: bool,
}

impl IntegerFamily {
    pub fn new(n: i64, m: i64, spacelike: bool) -> Result<Self, WeierstrassError> {
        if n == 0 {
            return Err(WeierstrassError::ZeroOrder);
        }
        Ok(IntegerFamily { n, m, spacelike })
    }

    pub fn kind(&self) -> HyperKind {
        if self.spacelike {
            HyperKind::Complex
        } else {
            HyperKind::Paracomplex
        }
    }

    pub fn data(&self) -> WeierstrassData {
        let kind = self.kind();
        let op = if self.spacelike { -self.n - self.m - 1 } else { -(self.n - self.m + 1) };
        WeierstrassData {
            kind,
            g: ScalarForm::Monomial { coef: Hyper::one(kind), p: self.n },
            omega_coeff: ScalarForm::Monomial { coef: Hyper::one(kind), p: op },
        }
    }
}

/// Exact monomial derivative triple of an integer family.
pub fn integer_family_phi(fam: &IntegerFamily) -> HolomorphicDerivative {
    let op = if fam.spacelike { -fam.n - fam.m - 1 } else { -(fam.n - fam.m + 1) };
    integer_phi(fam.kind(), fam.n, op)
}

/// Exact rational value `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };

    fn reduced(num: i64, den: i64) -> Rational {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs().max(1)
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(num, den);
        let s = den.signum();
        Rational { num: s * num / g, den: s * den / g }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

/// Exact residue of one component at `z = 0`: `re + unit * im` with rational
/// parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactResidue {
    pub re: Rational,
    pub im: Rational,
}

impl ExactResidue {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Real period of one component around `z = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PeriodValue {
    /// Complex kind: `Re(2 pi i Res) = -2 pi Im(Res)`, an exact multiple of pi.
    PiMultiple(Rational),
    /// Paracomplex kind: a `z^{-1}` term integrates to a logarithm; loop
    /// periods are not meaningful, the flag records the log/linear term.
    LogTerm(bool),
}

impl PeriodValue {
    pub fn numeric(&self) -> f64 {
        match self {
            PeriodValue::PiMultiple(r) => core::f64::consts::PI * r.value(),
            PeriodValue::LogTerm(flag) => {
                if *flag {
                    f64::NAN
                } else {
                    0.0
                }
            }
        }
    }

    pub fn is_present(&self) -> bool {
        match self {
            PeriodValue::PiMultiple(r) => !r.is_zero(),
            PeriodValue::LogTerm(flag) => *flag,
        }
    }
}

/// Residues at `z = 0` and the induced real periods, in exact arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodReport {
    pub residues: [ExactResidue; 3],
    pub real_periods: [PeriodValue; 3],
}

/// Exact residue/period analysis of an integer family at `z = 0`.
pub fn residue_period_report(fam: &IntegerFamily) -> PeriodReport {
    let phi = integer_family_phi(fam);
    let comps = match &phi {
        HolomorphicDerivative::Monomial { comps, .. } => comps,
        _ => unreachable!("integer families are monomial"),
    };
    let mut residues = [ExactResidue { re: Rational::ZERO, im: Rational::ZERO }; 3];
    for (i, comp) in comps.iter().enumerate() {
        let mut re = Rational::ZERO;
        let mut im = Rational::ZERO;
        for t in comp {
            if t.exponent == -1 {
                let r = Rational::reduced(t.num, t.den);
                if t.unit_pow == 0 {
                    re = add_rat(re, r);
                } else {
                    im = add_rat(im, r);
                }
            }
        }
        residues[i] = ExactResidue { re, im };
    }
    let real_periods = core::array::from_fn(|i| {
        if fam.spacelike {
            // Re(2 pi i (x + i y)) = -2 pi y
            PeriodValue::PiMultiple(Rational::reduced(
                -2 * residues[i].im.num,
                residues[i].im.den,
            ))
        } else {
            PeriodValue::LogTerm(!residues[i].is_zero())
        }
    });
    PeriodReport { residues, real_periods }
}

fn add_rat(a: Rational, b: Rational) -> Rational {
    Rational::reduced(a.num * b.den + b.num * a.den, a.den * b.den)
}

/// Numeric loop transport: `Re oint phi dz` around the circle `|z| = radius`,
/// by quadrature. Confirms the exact real periods independently.
pub fn loop_transport_numeric(
    phi: &HolomorphicDerivative,
    radius: f64,
) -> Result<Vec3, WeierstrassError> {
    let kind = phi.kind();
    if kind != HyperKind::Complex {
        return Err(WeierstrassError::PoleOrCut);
    }
    let two_pi = 2.0 * core::f64::consts::PI;
    let f = |t: f64| -> Result<HyperVec3, WeierstrassError> {
        let theta = two_pi * t;
        let z = Hyper::new(radius * theta.cos(), radius * theta.sin(), kind);
        // dz = i z d(theta) = i z * 2 pi dt
        let dz = Hyper::unit(kind) * z * two_pi;
        let p = phi.eval(z)?;
        Ok([p[0] * dz, p[1] * dz, p[2] * dz])
    };
    let v = quad::integrate_segment(&f, kind, 1e-12).map_err(|_| WeierstrassError::Quadrature)?;
    Ok(Vec3::new(v[0].re, v[1].re, v[2].re))
}

/// How the integration constant of `X = 2 Re int phi` is fixed.
#[derive(Clone, Copy, Debug)]
pub enum IntegrationConstant {
    /// Natural primitive with zero constants (reproduces the family
    /// parametrizations whose `v = 0` slice is the base curve).
    Natural,
    /// Shift so that `X(z_anchor) = x_anchor`.
    Anchor { z_anchor: Hyper, x_anchor: Vec3 },
}

/// Integrate `phi` on evaluation points: `X(z) = 2 Re int phi dz`, the
/// adopted factor-2 convention.
pub fn integrate_phi(
    phi: &HolomorphicDerivative,
    constant: IntegrationConstant,
    points: &[Hyper],
) -> Result<Vec<Vec3>, WeierstrassError> {
    let offset = match constant {
        IntegrationConstant::Natural => Vec3::ZERO,
        IntegrationConstant::Anchor { z_anchor, x_anchor } => {
            let p = phi.primitive(z_anchor)?;
            x_anchor - Vec3::new(2.0 * p[0].re, 2.0 * p[1].re, 2.0 * p[2].re)
        }
    };
    points
        .iter()
        .map(|&z| {
            let p = phi.primitive(z)?;
            Ok(Vec3::new(2.0 * p[0].re, 2.0 * p[1].re, 2.0 * p[2].re) + offset)
        })
        .collect()
}

/// End of an integer-family surface: `z = 0` or `z = infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EndPoint {
    Zero,
    Infinity,
}

/// Asymptotic class of an end, by the maximal pole order of the three
/// 1-forms `phi_k dz`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EndClass {
    /// Order 4.
    Enneper,
    /// Order 2, nonzero residue, injective Gauss map near the end.
    Catenoid,
    /// Order 2, zero residue (or non-injective Gauss map).
    Planar,
    /// Order outside {2, 4}: reported with raw orders, no class assigned.
    Unclassified,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EndReport {
    pub at: EndPoint,
    /// Pole orders of `phi_k dz` at the end.
    pub orders: [i64; 3],
    pub max_order: i64,
    pub class: EndClass,
    pub residue_nonzero: bool,
    pub gauss_injective: bool,
}

/// Classify both ends of an integer family. At infinity the 1-form is pulled
/// back by `z = 1/w`, `dz = -dw/w^2`, so a monomial `z^p dz` has pole order
/// `max(0, p + 2)` there (and `max(0, -p)` at zero).
pub fn end_classification(fam: &IntegerFamily) -> [EndReport; 2] {
    let phi = integer_family_phi(fam);
    let comps = match &phi {
        HolomorphicDerivative::Monomial { comps, .. } => comps,
        _ => unreachable!(),
    };
    let report = residue_period_report(fam);
    let mut out = [EndReport {
        at: EndPoint::Zero,
        orders: [0; 3],
        max_order: 0,
        class: EndClass::Unclassified,
        residue_nonzero: false,
        gauss_injective: false,
    }; 2];
    for (slot, at) in [(0usize, EndPoint::Zero), (1, EndPoint::Infinity)] {
        let mut orders = [0i64; 3];
        for (i, comp) in comps.iter().enumerate() {
            for t in comp {
                let ord = match at {
                    EndPoint::Zero => (-t.exponent).max(0),
                    EndPoint::Infinity => (t.exponent + 2).max(0),
                };
                orders[i] = orders[i].max(ord);
            }
        }
        let max_order = *orders.iter().max().unwrap();
        // residue at infinity of a monomial form is minus the residue at zero
        let residue_nonzero = report.residues.iter().any(|r| !r.is_zero());
        let gauss_injective = fam.n.abs() == 1;
        let class = match max_order {
            4 => EndClass::Enneper,
            2 => {
                if residue_nonzero && gauss_injective {
                    EndClass::Catenoid
                } else {
                    EndClass::Planar
                }
            }
            _ => EndClass::Unclassified,
        };
        out[slot] = EndReport { at, orders, max_order, class, residue_nonzero, gauss_injective };
    }
    out
}
