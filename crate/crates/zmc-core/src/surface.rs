//! Parametrized surface patches carrying an analytic 2-jet.
//!
//! A [`SurfacePatch`] evaluates the full 2-jet `{X, X_u, X_v, X_uu, X_uv,
//! X_vv}`. Closed-form patches are realized as `X = Re F(z)` where `F` is an
//! analytic hypernumber map ([`AnalyticExtension`]) in `z = u + unit*v`; that
//! single representation yields hand-differentiated jets for every catalog
//! family and also feeds the associate-family deformation.

use crate::fd;
use crate::hyper::{Hyper, HyperKind, HyperVec3};
use crate::minkowski::{MetricSignature, Vec3};
use alloc::boxed::Box;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait when built without std
use num_traits::Float;

/// Analytic 2-jet of a parametrized surface at one point.
#[derive(Clone, Copy, Debug)]
pub struct Jet2 {
    pub x: Vec3,
    pub xu: Vec3,
    pub xv: Vec3,
    pub xuu: Vec3,
    pub xuv: Vec3,
    pub xvv: Vec3,
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum PatchError {
    #[error("point (u, v) = ({u}, {v}) is outside the patch domain")]
    OutsideDomain { u: f64, v: f64 },
    #[error("evaluation hit a degeneracy at (u, v) = ({u}, {v})")]
    Degenerate { u: f64, v: f64 },
}

/// Rectangular `(u, v)` domain minus declared degeneracy lines `u = const`.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UvDomain {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    /// Degeneracy loci `u = const` where the map fails to be an immersion.
    pub u_exclusions: Vec<f64>,
    /// Half-width kept clear around each exclusion when sampling.
    pub margin: f64,
}

impl UvDomain {
    pub fn unbounded() -> Self {
        UvDomain {
            u_min: f64::NEG_INFINITY,
            u_max: f64::INFINITY,
            v_min: f64::NEG_INFINITY,
            v_max: f64::INFINITY,
            u_exclusions: Vec::new(),
            margin: 1e-3,
        }
    }

    pub fn with_exclusions(mut self, ex: &[f64]) -> Self {
        self.u_exclusions.extend_from_slice(ex);
        self
    }

    /// Distance from `u` to the nearest exclusion line (infinite when none).
    pub fn clearance(&self, u: f64) -> f64 {
        self.u_exclusions.iter().map(|&e| (u - e).abs()).fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        u >= self.u_min
            && u <= self.u_max
            && v >= self.v_min
            && v <= self.v_max
            && self.clearance(u) > self.margin
    }

    /// `n` samples of `[lo, hi]` that keep `margin` clear of every exclusion,
    /// distributed across the admissible sub-intervals proportionally to their
    /// lengths. Returns an empty vector when nothing is admissible.
    pub fn sample_u(&self, lo: f64, hi: f64, n: usize) -> Vec<f64> {
        let lo = lo.max(self.u_min);
        let hi = hi.min(self.u_max);
        if !(hi > lo) || n == 0 {
            return Vec::new();
        }
        let mut cuts: Vec<(f64, f64)> = Vec::new();
        let mut segments = alloc::vec![(lo, hi)];
        for &e in &self.u_exclusions {
            let mut next = Vec::new();
            for (a, b) in segments {
                let (xl, xr) = (e - self.margin, e + self.margin);
                if xr <= a || xl >= b {
                    next.push((a, b));
                } else {
                    if xl > a {
                        next.push((a, xl));
                    }
                    if xr < b {
                        next.push((xr, b));
                    }
                }
            }
            segments = next;
        }
        cuts.extend(segments);
        let total: f64 = cuts.iter().map(|(a, b)| b - a).sum();
        if total <= 0.0 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(n);
        let mut remaining = n;
        for (idx, (a, b)) in cuts.iter().enumerate() {
            let share = if idx + 1 == cuts.len() {
                remaining
            } else {
                (((b - a) / total) * n as f64).round().max(1.0) as usize
            };
            let share = share.min(remaining);
            for k in 0..share {
                let t = if share == 1 { 0.5 } else { k as f64 / (share - 1) as f64 };
                out.push(a + t * (b - a));
            }
            remaining -= share;
            if remaining == 0 {
                break;
            }
        }
        out
    }
}

/// Uniform samples of `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![0.5 * (lo + hi)],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// A surface with analytic 2-jet and a declared causal character.
///
/// Evaluators hold no interior mutability, so patches may be shared across
/// worker threads.
pub trait SurfacePatch: Send + Sync {
    fn jet(&self, u: f64, v: f64) -> Result<Jet2, PatchError>;
    fn domain(&self) -> &UvDomain;
    fn signature(&self) -> Option<MetricSignature>;
    /// Analytic hypernumber extension `F` with `X = Re F(z)`, when available.
    fn extension(&self) -> Option<&dyn AnalyticExtension> {
        None
    }
}

/// Analytic map `z -> F(z)` with two derivatives, `X = Re F`.
pub trait AnalyticExtension: Send + Sync {
    fn kind(&self) -> HyperKind;
    /// `(F, F', F'')` at `z`.
    fn f_jet2(&self, z: Hyper) -> Result<(HyperVec3, HyperVec3, HyperVec3), PatchError>;
    fn clone_ext(&self) -> Box<dyn AnalyticExtension>;
}

/// One component of a closed form: `sum_j c_j e^{k_j z} + c_lin z + c_0`.
#[derive(Clone, Debug)]
pub struct ExpForm {
    pub kind: HyperKind,
    pub terms: Vec<(Hyper, f64)>,
    pub linear: Hyper,
    pub constant: Hyper,
}

impl ExpForm {
    pub fn zero(kind: HyperKind) -> Self {
        ExpForm { kind, terms: Vec::new(), linear: Hyper::zero(kind), constant: Hyper::zero(kind) }
    }

    pub fn term(mut self, coef: Hyper, k: f64) -> Self {
        debug_assert_eq!(coef.kind, self.kind);
        self.terms.push((coef, k));
        self
    }

    pub fn with_linear(mut self, coef: Hyper) -> Self {
        self.linear = coef;
        self
    }

    pub fn jet2(&self, z: Hyper) -> (Hyper, Hyper, Hyper) {
        let mut f = self.constant + self.linear * z;
        let mut f1 = self.linear;
        let mut f2 = Hyper::zero(self.kind);
        for &(c, k) in &self.terms {
            let e = c * z.scale(k).exp();
            f = f + e;
            f1 = f1 + e.scale(k);
            f2 = f2 + e.scale(k * k);
        }
        (f, f1, f2)
    }

    /// Multiply by a constant hypernumber factor.
    pub fn premul(&self, factor: Hyper) -> ExpForm {
        ExpForm {
            kind: self.kind,
            terms: self.terms.iter().map(|&(c, k)| (factor * c, k)).collect(),
            linear: factor * self.linear,
            constant: factor * self.constant,
        }
    }
}

/// Three-component closed form implementing [`AnalyticExtension`].
#[derive(Clone, Debug)]
pub struct ExpForm3 {
    pub comps: [ExpForm; 3],
}

impl ExpForm3 {
    pub fn kind(&self) -> HyperKind {
        self.comps[0].kind
    }

    pub fn eval(&self, z: Hyper) -> HyperVec3 {
        [self.comps[0].jet2(z).0, self.comps[1].jet2(z).0, self.comps[2].jet2(z).0]
    }

    pub fn deriv(&self, z: Hyper) -> HyperVec3 {
        [self.comps[0].jet2(z).1, self.comps[1].jet2(z).1, self.comps[2].jet2(z).1]
    }

    pub fn premul(&self, factor: Hyper) -> ExpForm3 {
        ExpForm3 {
            comps: [
                self.comps[0].premul(factor),
                self.comps[1].premul(factor),
                self.comps[2].premul(factor),
            ],
        }
    }
}

impl AnalyticExtension for ExpForm3 {
    fn kind(&self) -> HyperKind {
        ExpForm3::kind(self)
    }

    fn f_jet2(&self, z: Hyper) -> Result<(HyperVec3, HyperVec3, HyperVec3), PatchError> {
        let mut f = [Hyper::zero(self.kind()); 3];
        let mut f1 = f;
        let mut f2 = f;
        for i in 0..3 {
            let (a, b, c) = self.comps[i].jet2(z);
            f[i] = a;
            f1[i] = b;
            f2[i] = c;
        }
        Ok((f, f1, f2))
    }

    fn clone_ext(&self) -> Box<dyn AnalyticExtension> {
        Box::new(self.clone())
    }
}

/// An extension scaled by a constant factor; the associate family applies
/// `e^{unit * theta}` this way.
pub struct ScaledExtension {
    pub inner: Box<dyn AnalyticExtension>,
    pub factor: Hyper,
}

impl AnalyticExtension for ScaledExtension {
    fn kind(&self) -> HyperKind {
        self.inner.kind()
    }

    fn f_jet2(&self, z: Hyper) -> Result<(HyperVec3, HyperVec3, HyperVec3), PatchError> {
        let (f, f1, f2) = self.inner.f_jet2(z)?;
        let m = |v: HyperVec3| [self.factor * v[0], self.factor * v[1], self.factor * v[2]];
        Ok((m(f), m(f1), m(f2)))
    }

    fn clone_ext(&self) -> Box<dyn AnalyticExtension> {
        Box::new(ScaledExtension { inner: self.inner.clone_ext(), factor: self.factor })
    }
}

/// A patch realized as the real part of an analytic extension.
pub struct ExtensionPatch {
    pub ext: Box<dyn AnalyticExtension>,
    pub domain: UvDomain,
    pub signature: MetricSignature,
}

impl ExtensionPatch {
    pub fn new(
        ext: Box<dyn AnalyticExtension>,
        domain: UvDomain,
        signature: MetricSignature,
    ) -> Self {
        ExtensionPatch { ext, domain, signature }
    }

    /// The position map alone. Unlike [`SurfacePatch::jet`], this does not
    /// police degeneracy loci: the parametrization extends analytically
    /// across them, it merely stops being an immersion there.
    pub fn position(&self, u: f64, v: f64) -> Result<Vec3, PatchError> {
        let kind = self.ext.kind();
        let (f, _, _) = self.ext.f_jet2(Hyper::new(u, v, kind))?;
        Ok(Vec3::new(f[0].re, f[1].re, f[2].re))
    }
}

impl SurfacePatch for ExtensionPatch {
    fn jet(&self, u: f64, v: f64) -> Result<Jet2, PatchError> {
        if !self.domain.contains(u, v) {
            return Err(PatchError::OutsideDomain { u, v });
        }
        let kind = self.ext.kind();
        let z = Hyper::new(u, v, kind);
        let (f, f1, f2) = self.ext.f_jet2(z)?;
        let us = kind.unit_square();
        let re = |w: &HyperVec3| Vec3::new(w[0].re, w[1].re, w[2].re);
        let im = |w: &HyperVec3| Vec3::new(w[0].im, w[1].im, w[2].im);
        Ok(Jet2 {
            x: re(&f),
            xu: re(&f1),
            // d/dv Re F = Re(unit * F'), and Re(unit * w) = unit^2 * Im w.
            xv: im(&f1) * us,
            xuu: re(&f2),
            xuv: im(&f2) * us,
            xvv: re(&f2) * us,
        })
    }

    fn domain(&self) -> &UvDomain {
        &self.domain
    }

    fn signature(&self) -> Option<MetricSignature> {
        Some(self.signature)
    }

    fn extension(&self) -> Option<&dyn AnalyticExtension> {
        Some(self.ext.as_ref())
    }
}

/// A patch backed by arbitrary closures (used for test surfaces and the
/// revolution reparametrization).
pub struct ClosurePatch {
    pub eval: Box<dyn Fn(f64, f64) -> Result<Jet2, PatchError> + Send + Sync>,
    pub domain: UvDomain,
    pub signature: Option<MetricSignature>,
}

impl SurfacePatch for ClosurePatch {
    fn jet(&self, u: f64, v: f64) -> Result<Jet2, PatchError> {
        if !self.domain.contains(u, v) {
            return Err(PatchError::OutsideDomain { u, v });
        }
        (self.eval)(u, v)
    }

    fn domain(&self) -> &UvDomain {
        &self.domain
    }

    fn signature(&self) -> Option<MetricSignature> {
        self.signature
    }
}

/// Validation mode: compare the analytic jet with a Richardson-extrapolated
/// finite-difference jet of the position map. Returns the max absolute
/// discrepancy over all jet entries.
pub fn validate_jet(patch: &dyn SurfacePatch, u: f64, v: f64, h: f64) -> Result<f64, PatchError> {
    let analytic = patch.jet(u, v)?;
    let pos = |uu: f64, vv: f64| patch.jet(uu, vv).map(|j| j.x).unwrap_or(Vec3::ZERO);
    let fdj = fd::jet_fd(&pos, u, v, h);
    let d = |a: Vec3, b: Vec3| (a - b).max_abs();
    Ok(d(analytic.x, fdj.x)
        .max(d(analytic.xu, fdj.xu))
        .max(d(analytic.xv, fdj.xv))
        .max(d(analytic.xuu, fdj.xuu))
        .max(d(analytic.xuv, fdj.xuv))
        .max(d(analytic.xvv, fdj.xvv)))
}
