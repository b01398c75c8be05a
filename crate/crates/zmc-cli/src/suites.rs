//! The named verification suites.
//!
//! Every suite computes a max residual over a deterministic grid and passes
//! iff it is within tolerance. A seed adds extra randomized sample points to
//! the pointwise sweeps.

use crate::config::GridSpec;
use crate::report::CheckResult;
use crate::rng::SplitMix64;
use crate::target::Target;
use anyhow::{bail, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;
use zmc_core::bjorling::{
    associate_deform, bjorling_point, build_bjorling_data, frame_integrate, BjorlingDescriptor,
    FrameForm,
};
use zmc_core::catalog::{
    named_surface, theorem_surface, CatenoidKind, FamilyKind, FamilyParams, NamedSurface,
};
use zmc_core::hyper::Hyper;
use zmc_core::kernel::{
    self, compatibility_residuals, extract_twist, CompatibilityInput, Scalar1,
};
use zmc_core::minkowski::{rotation, MetricSignature, RotationKind, Vec3};
use zmc_core::surface::{linspace, Jet2, SurfacePatch};
use zmc_core::weierstrass::{
    end_classification, integer_family_phi, integrate_phi, loop_transport_numeric, phi_from_data,
    residue_period_report, weierstrass_from_family, EndPoint, HolomorphicDerivative,
    IntegerFamily, IntegrationConstant, PeriodValue,
};

/// All suite names, in presentation order.
pub const SUITE_NAMES: [&str; 12] = [
    "zmc",
    "first-form",
    "twist",
    "codazzi",
    "gauss",
    "frame",
    "bjorling",
    "weierstrass",
    "periods",
    "ends",
    "associate",
    "catenoid-symmetry",
];

/// Default tolerance of each suite.
pub fn default_tolerance(name: &str) -> Option<f64> {
    Some(match name {
        "zmc" => 1e-8,
        "first-form" => 1e-10,
        "twist" => 1e-8,
        "codazzi" => 1e-6,
        "gauss" => 1e-6,
        "frame" => 1e-8,
        "bjorling" => 1e-6,
        "weierstrass" => 1e-6,
        "periods" => 1e-8,
        "ends" => 0.0,
        "associate" => 1e-6,
        "catenoid-symmetry" => 1e-10,
        _ => return None,
    })
}

/// Suites that apply to the given target.
pub fn applicable_suites(target: &Target) -> Vec<&'static str> {
    match target {
        Target::Integer(_) => vec!["zmc", "weierstrass", "periods", "ends"],
        Target::Catenoid { .. } => vec![
            "zmc",
            "first-form",
            "twist",
            "codazzi",
            "gauss",
            "frame",
            "bjorling",
            "associate",
            "catenoid-symmetry",
        ],
        Target::Named(id) if id.ends_with("catenoid") => vec![
            "zmc",
            "first-form",
            "twist",
            "codazzi",
            "gauss",
            "frame",
            "bjorling",
            "associate",
            "catenoid-symmetry",
        ],
        Target::Named(id) => {
            let mut v = vec![
                "zmc",
                "first-form",
                "twist",
                "codazzi",
                "gauss",
                "frame",
                "bjorling",
                "associate",
            ];
            // the closed-form pairs cover the spacelike family and the
            // timelike family with spacelike u-curves
            if id != "enneper_timelike_2" {
                v.insert(7, "weierstrass");
            }
            v
        }
        Target::Family(p) => {
            let mut v = vec![
                "zmc",
                "first-form",
                "twist",
                "codazzi",
                "gauss",
                "frame",
                "bjorling",
                "associate",
            ];
            if p.kind != FamilyKind::TimelikeV {
                v.insert(7, "weierstrass");
            }
            v
        }
    }
}

/// Run one named suite against a target.
pub fn run_suite(
    name: &str,
    target: &Target,
    grid: &GridSpec,
    tolerances: &BTreeMap<String, f64>,
    seed: Option<u64>,
) -> Result<CheckResult> {
    let tol = tolerances
        .get(name)
        .copied()
        .or_else(|| default_tolerance(name))
        .ok_or_else(|| anyhow::anyhow!("unknown suite `{name}`"))?;
    if !applicable_suites(target).contains(&name) {
        bail!("suite `{name}` does not apply to target `{}`", target.id());
    }
    let residual = match name {
        "zmc" => zmc_residual(target, grid, seed)?,
        "first-form" => first_form_residual(target, grid, seed)?,
        "twist" => twist_residual(target, grid)?,
        "codazzi" => compatibility(target, grid)?.codazzi_max(),
        "gauss" => compatibility(target, grid)?.gauss_max,
        "frame" => frame_residual(target)?,
        "bjorling" => bjorling_residual(target)?,
        "weierstrass" => weierstrass_residual(target)?,
        "periods" => periods_residual(target)?,
        "ends" => ends_residual(target)?,
        "associate" => associate_residual(target)?,
        "catenoid-symmetry" => catenoid_symmetry_residual(target)?,
        other => bail!("unknown suite `{other}`"),
    };
    Ok(CheckResult::new(name, residual, tol))
}

// ---------------------------------------------------------------------------
// grid policy
// ---------------------------------------------------------------------------

/// Safe sampling window for curvature sweeps over a patch target: clearance
/// 0.12 from degeneracy loci, metric factor at least 0.02, and a bounded
/// v-window for timelike members (their cosh factors otherwise dominate the
/// floating-point budget).
fn sweep_grid(surface: &NamedSurface, grid: &GridSpec, nu: usize, nv: usize) -> (Vec<f64>, Vec<f64>) {
    let mut domain = surface.patch.domain.clone();
    domain.margin = domain.margin.max(0.12);
    let us: Vec<f64> = domain
        .sample_u(grid.u_min, grid.u_max, nu)
        .into_iter()
        .filter(|&u| (surface.stated_first_form)(u).0.abs() >= 0.02)
        .collect();
    let spacelike = surface
        .patch
        .signature
        .is_spacelike();
    let (vlo, vhi) = if spacelike {
        (grid.v_min, grid.v_max)
    } else {
        (grid.v_min.max(-0.6), grid.v_max.min(0.6))
    };
    (us, linspace(vlo, vhi, nv))
}

fn extra_random_points(
    us: &[f64],
    vs: &[f64],
    seed: Option<u64>,
) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    if let (Some(seed), (Some(&ulo), Some(&uhi)), (Some(&vlo), Some(&vhi))) = (
        seed,
        (us.first(), us.last()),
        (vs.first(), vs.last()),
    ) {
        let mut rng = SplitMix64::new(seed);
        for _ in 0..32 {
            out.push((rng.uniform(ulo, uhi), rng.uniform(vlo, vhi)));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// pointwise sweeps
// ---------------------------------------------------------------------------

fn zmc_residual(target: &Target, grid: &GridSpec, seed: Option<u64>) -> Result<f64> {
    if let Target::Integer(fam) = target {
        // analytic jets of X = 2 Re int phi: the primitive, phi, and phi'
        // are all closed forms
        let phi = integer_family_phi(fam);
        let dphi = phi.derivative();
        let kind = fam.kind();
        let us2 = kind.unit_square();
        let mut worst: f64 = 0.0;
        for &(u, v) in &[(1.1, 0.3), (0.8, -0.4), (1.4, 0.2), (0.9, 0.5)] {
            let z = Hyper::new(u, v, kind);
            let x = integrate_phi(&phi, IntegrationConstant::Natural, &[z])?[0];
            let f1 = phi.eval(z)?;
            let f2 = dphi.eval(z)?;
            let re = |w: &[Hyper; 3]| Vec3::new(w[0].re, w[1].re, w[2].re) * 2.0;
            let im = |w: &[Hyper; 3]| Vec3::new(w[0].im, w[1].im, w[2].im) * 2.0;
            let jet = Jet2 {
                x,
                xu: re(&f1),
                xv: im(&f1) * us2,
                xuu: re(&f2),
                xuv: im(&f2) * us2,
                xvv: re(&f2) * us2,
            };
            let (a, sigma) = kernel::shape_operator(&jet)?;
            worst = worst.max(kernel::curvature_summary(&a, sigma).mean.abs());
        }
        return Ok(worst);
    }
    let surface = target.surface()?;
    let (us, vs) = sweep_grid(&surface, grid, grid.nu, grid.nv);
    let mut worst = us
        .par_iter()
        .map(|&u| {
            let mut m: f64 = 0.0;
            for &v in &vs {
                if let Ok(jet) = surface.patch.jet(u, v) {
                    if let Ok((a, sigma)) = kernel::shape_operator(&jet) {
                        m = m.max(kernel::curvature_summary(&a, sigma).mean.abs());
                    }
                }
            }
            m
        })
        .reduce(|| 0.0, f64::max);
    for (u, v) in extra_random_points(&us, &vs, seed) {
        if let Ok(jet) = surface.patch.jet(u, v) {
            if let Ok((a, sigma)) = kernel::shape_operator(&jet) {
                worst = worst.max(kernel::curvature_summary(&a, sigma).mean.abs());
            }
        }
    }
    Ok(worst)
}

fn first_form_residual(target: &Target, grid: &GridSpec, seed: Option<u64>) -> Result<f64> {
    let surface = target.surface()?;
    let (us, vs) = sweep_grid(&surface, grid, grid.nu, grid.nv);
    let point = |u: f64, v: f64| -> f64 {
        let (e_stated, g_stated) = (surface.stated_first_form)(u);
        let scale = e_stated.abs().max(1e-12);
        match surface.patch.jet(u, v).and_then(|j| {
            kernel::first_form(&j).map_err(|_| zmc_core::surface::PatchError::Degenerate { u, v })
        }) {
            Ok(i) => ((i.e - e_stated).abs().max((i.g - g_stated).abs()).max(i.f.abs())) / scale,
            Err(_) => f64::INFINITY,
        }
    };
    let mut worst = us
        .par_iter()
        .map(|&u| vs.iter().map(|&v| point(u, v)).fold(0.0, f64::max))
        .reduce(|| 0.0, f64::max);
    for (u, v) in extra_random_points(&us, &vs, seed) {
        worst = worst.max(point(u, v));
    }
    Ok(worst)
}

fn twist_residual(target: &Target, grid: &GridSpec) -> Result<f64> {
    let surface = target.surface()?;
    let (us, vs) = sweep_grid(&surface, grid, 7, 41);
    let expected = surface.twist_slope;
    let mut worst: f64 = 0.0;
    for &u in &us {
        let rep = extract_twist(&surface.patch, u, &vs)
            .map_err(|e| anyhow::anyhow!("twist extraction failed at u = {u}: {e}"))?;
        worst = worst.max((rep.slope - expected).abs()).max(rep.structure_residual);
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// compatibility data
// ---------------------------------------------------------------------------

struct ConformalScalars {
    lambda1: Box<dyn Fn(f64) -> f64 + Sync>,
    rho: Box<dyn Fn(f64) -> f64 + Sync>,
    slope: f64,
    signature: MetricSignature,
}

/// The scalar data `(lambda_i, rho, alpha)` of a target, for the
/// compatibility equations.
fn conformal_scalars(target: &Target) -> Result<ConformalScalars> {
    Ok(match target {
        Target::Family(p) => {
            let p = *p;
            ConformalScalars {
                lambda1: Box::new(move |u| {
                    let r = p.rho_signed(u).rho;
                    (2.0 * p.a * u).exp() / (r * r)
                }),
                rho: Box::new(move |u| p.rho_signed(u).rho.abs()),
                slope: p.a,
                signature: p.signature(),
            }
        }
        Target::Named(id) => match id.as_str() {
            "enneper_spacelike" => ConformalScalars {
                lambda1: Box::new(|u| 2.0 / ((2.0 * u).exp() - 1.0).powi(2)),
                rho: Box::new(|u| u.exp() * ((2.0 * u).exp() - 1.0).abs()),
                slope: 1.0,
                signature: MetricSignature::SPACELIKE,
            },
            "enneper_timelike" => ConformalScalars {
                lambda1: Box::new(|u| 2.0 / ((2.0 * u).exp() + 1.0).powi(2)),
                rho: Box::new(|u| u.exp() * ((2.0 * u).exp() + 1.0)),
                slope: 1.0,
                signature: MetricSignature::TIMELIKE_U,
            },
            "enneper_timelike_2" => {
                return conformal_scalars(&Target::Family(FamilyParams::new(
                    FamilyKind::TimelikeV,
                    1.0,
                    1.0,
                    1.0,
                )?))
            }
            "elliptic_catenoid" => {
                return conformal_scalars(&Target::Catenoid {
                    kind: CatenoidKind::Elliptic,
                    big_a: 1.0,
                    big_b: 1.0,
                })
            }
            "timelike_catenoid" => {
                return conformal_scalars(&Target::Catenoid {
                    kind: CatenoidKind::Timelike,
                    big_a: 1.0,
                    big_b: 1.0,
                })
            }
            other => bail!("no conformal data for `{other}`"),
        },
        Target::Catenoid { kind, big_a, big_b } => {
            let (big_a, big_b) = (*big_a, *big_b);
            let (eps, signature) = match kind {
                CatenoidKind::Elliptic => (1.0, MetricSignature::SPACELIKE),
                CatenoidKind::Timelike => (-1.0, MetricSignature::TIMELIKE_U),
            };
            let rho = move |u: f64| {
                ((-eps) * big_a * (big_b * u).exp() / (2.0 * big_b)
                    + (-(big_b) * u).exp() / (2.0 * big_a * big_b))
                    .abs()
            };
            ConformalScalars {
                lambda1: Box::new(move |u| 1.0 / (rho(u) * rho(u))),
                rho: Box::new(rho),
                slope: 0.0,
                signature,
            }
        }
        Target::Integer(_) => bail!("no conformal scalar data for integer families"),
    })
}

fn compatibility(
    target: &Target,
    grid: &GridSpec,
) -> Result<zmc_core::kernel::CompatibilityResiduals> {
    let data = conformal_scalars(target)?;
    let surface = target.surface()?;
    let (us, vs) = sweep_grid(&surface, grid, 9, 7);
    let l1 = &data.lambda1;
    let l2 = move |u: f64| -l1(u);
    let slope = data.slope;
    let alpha = move |v: f64| slope * v;
    let twist_kind = if data.signature.sigma() > 0.0 {
        RotationKind::Euclidean
    } else {
        RotationKind::Hyperbolic
    };
    let input = CompatibilityInput {
        lambda1: Scalar1::Numeric(l1.as_ref()),
        lambda2: Scalar1::Numeric(&l2),
        rho: Scalar1::Numeric(data.rho.as_ref()),
        alpha: &alpha,
        signature: data.signature,
        twist_kind,
    };
    Ok(compatibility_residuals(&input, &us, &vs))
}

// ---------------------------------------------------------------------------
// frames / Björling / Weierstrass
// ---------------------------------------------------------------------------

/// Family parameters whose frames/Björling data drive a target.
fn frame_params(target: &Target) -> Result<BjorlingDescriptor> {
    Ok(match target {
        Target::Family(p) => BjorlingDescriptor::Family(*p),
        Target::Catenoid { kind, big_a, big_b } => {
            BjorlingDescriptor::Catenoid { kind: *kind, big_a: *big_a, big_b: *big_b }
        }
        Target::Named(id) => match id.as_str() {
            "enneper_spacelike" => BjorlingDescriptor::Family(FamilyParams::new(
                FamilyKind::Spacelike,
                1.0,
                1.0,
                1.0,
            )?),
            "enneper_timelike" => BjorlingDescriptor::Family(FamilyParams::new(
                FamilyKind::TimelikeU,
                1.0,
                1.0,
                1.0,
            )?),
            "enneper_timelike_2" => BjorlingDescriptor::Family(FamilyParams::new(
                FamilyKind::TimelikeV,
                1.0,
                1.0,
                1.0,
            )?),
            "elliptic_catenoid" => BjorlingDescriptor::Catenoid {
                kind: CatenoidKind::Elliptic,
                big_a: 1.0,
                big_b: 1.0,
            },
            "timelike_catenoid" => BjorlingDescriptor::Catenoid {
                kind: CatenoidKind::Timelike,
                big_a: 1.0,
                big_b: 1.0,
            },
            other => bail!("no frame data for `{other}`"),
        },
        Target::Integer(_) => bail!("integer families have no frame data"),
    })
}

fn frame_ranges(exclusion: Option<f64>) -> Vec<(f64, f64)> {
    match exclusion {
        None => vec![(-2.0, 2.0)],
        Some(x) => {
            let mut out = Vec::new();
            if x - 0.15 > -2.0 {
                out.push((-2.0, x - 0.15));
            }
            if x + 0.15 < 2.0 {
                out.push((x + 0.15, 2.0));
            }
            out
        }
    }
}

fn frame_residual(target: &Target) -> Result<f64> {
    let params = match frame_params(target)? {
        BjorlingDescriptor::Family(p) => p,
        BjorlingDescriptor::Catenoid { kind, big_a, big_b } => {
            // untwisted frames integrate through the same closed forms
            let fam_kind = match kind {
                CatenoidKind::Elliptic => FamilyKind::Spacelike,
                CatenoidKind::Timelike => FamilyKind::TimelikeU,
            };
            let form = FrameForm { kind: fam_kind, big_a, be: big_b };
            let excl = match kind {
                CatenoidKind::Elliptic => Some(-big_a.ln() / big_b),
                CatenoidKind::Timelike => None,
            };
            let mut worst: f64 = 0.0;
            for range in frame_ranges(excl) {
                worst = worst.max(integrate_frame_form(&form, range)?);
            }
            return Ok(worst);
        }
    };
    let form = FrameForm::of(&params);
    let mut worst: f64 = 0.0;
    for range in frame_ranges(params.exclusion()) {
        let states = frame_integrate(&params, range, 17)?;
        for s in &states {
            let exact = form.state(s.u)?;
            worst = worst
                .max((s.e1 - exact.e1).max_abs())
                .max((s.e3 - exact.e3).max_abs())
                .max((s.e2 - exact.e2).max_abs())
                .max(s.orthonormality_residual());
        }
    }
    Ok(worst)
}

/// Integrate a bare frame form (catenoid case) and compare with its closed
/// form.
fn integrate_frame_form(form: &FrameForm, range: (f64, f64)) -> Result<f64> {
    let start = form.state(range.0)?;
    let (s1, s3) = form.ode_signs();
    let f = *form;
    let rhs = move |u: f64, y: &[f64; 9]| {
        let h = f.h(u);
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
    let samples = linspace(range.0, range.1, 17);
    let (states, _) = zmc_core::ode::integrate_samples(
        &rhs,
        range.0,
        y0,
        &samples,
        &zmc_core::ode::AdaptiveOptions::default(),
        &|_, _| false,
    )?;
    let mut worst: f64 = 0.0;
    for (u, y) in states {
        let exact = form.state(u)?;
        let e1 = Vec3::new(y[0], y[1], y[2]);
        let e3 = Vec3::new(y[6], y[7], y[8]);
        worst = worst.max((e1 - exact.e1).max_abs()).max((e3 - exact.e3).max_abs());
    }
    Ok(worst)
}

fn bjorling_residual(target: &Target) -> Result<f64> {
    let desc = frame_params(target)?;
    let data = build_bjorling_data(&desc)?;
    // reconstruction is compared against the closed-form patch it encodes
    let (surface, flip) = match &desc {
        BjorlingDescriptor::Family(p) => (theorem_surface(p)?, 1.0),
        BjorlingDescriptor::Catenoid { kind, big_a, big_b } => {
            let s = zmc_core::catalog::catenoid(*kind, *big_a, *big_b)?;
            // the displayed elliptic catenoid uses the conjugate v-orientation
            let flip = match kind {
                CatenoidKind::Elliptic => -1.0,
                CatenoidKind::Timelike => 1.0,
            };
            (s, flip)
        }
    };
    let mut domain = surface.patch.domain.clone();
    domain.margin = 0.15;
    let us = domain.sample_u(-1.0, 1.0, 5);
    let vs = [-0.5, -0.25, 0.0, 0.3, 0.5];
    let mut worst: f64 = 0.0;
    for &u in &us {
        for &v in &vs {
            let x = bjorling_point(&data, u, v)?;
            let y = surface.patch.jet(u, flip * v).map(|j| j.x)?;
            worst = worst.max((x - y).max_abs());
        }
    }
    Ok(worst)
}

fn weierstrass_residual(target: &Target) -> Result<f64> {
    if let Target::Integer(fam) = target {
        return weierstrass_integer_checks(fam);
    }
    match weierstrass_family_of(target)? {
        Some(p) => weierstrass_family_roundtrip(&p),
        None => bail!("no Weierstrass data route for `{}`", target.id()),
    }
}

fn weierstrass_family_of(target: &Target) -> Result<Option<FamilyParams>> {
    Ok(match target {
        Target::Family(p) if p.kind != FamilyKind::TimelikeV => Some(*p),
        Target::Named(id) => match id.as_str() {
            "enneper_spacelike" => {
                Some(FamilyParams::new(FamilyKind::Spacelike, 1.0, 1.0, 1.0)?)
            }
            "enneper_timelike" => Some(FamilyParams::new(FamilyKind::TimelikeU, 1.0, 1.0, 1.0)?),
            _ => None,
        },
        _ => None,
    })
}

/// Round-trip: family pair -> phi -> X = 2 Re int phi, against the catalog
/// patch. Spacelike lands exactly; the timelike pair reconstructs at twice
/// the scale in the conjugate coordinate (frozen normalization).
fn weierstrass_family_roundtrip(p: &FamilyParams) -> Result<f64> {
    let s = theorem_surface(p)?;
    let phi = phi_from_data(&weierstrass_from_family(p)?)?;
    let mut domain = s.patch.domain.clone();
    domain.margin = 0.15;
    let us = domain.sample_u(-1.0, 1.0, 5);
    let kind = p.kind.hyper_kind();
    let mut worst: f64 = 0.0;
    for &u in &us {
        for &v in &[-0.6, 0.0, 0.45] {
            let z = Hyper::new(u, v, kind);
            let x = integrate_phi(&phi, IntegrationConstant::Natural, &[z])?[0];
            let y = match p.kind {
                FamilyKind::Spacelike => s.patch.jet(u, v)?.x,
                _ => s.patch.jet(u, -v)?.x * 2.0,
            };
            worst = worst.max((x - y).max_abs());
        }
    }
    Ok(worst)
}

fn weierstrass_integer_checks(fam: &IntegerFamily) -> Result<f64> {
    let phi = integer_family_phi(fam);
    let kind = fam.kind();
    let mut worst: f64 = 0.0;
    // conformality identity on sample points
    for &(u, v) in &[(0.7, 0.2), (1.3, -0.5), (0.9, 0.8), (1.8, 0.1)] {
        let z = Hyper::new(u, v, kind);
        worst = worst.max(phi.conformality_residual(z)?);
    }
    // phi of the normalized data route agrees with the exact monomials
    let via_data = phi_from_data(&fam.data())?;
    for &(u, v) in &[(0.8, 0.3), (1.5, -0.6)] {
        let z = Hyper::new(u, v, kind);
        let a = via_data.eval(z)?;
        let b = phi.eval(z)?;
        for i in 0..3 {
            worst = worst.max((a[i].re - b[i].re).abs().max((a[i].im - b[i].im).abs()));
        }
    }
    // frozen reconstructions for the named members
    worst = worst.max(named_integer_reconstruction(fam, &phi)?);
    Ok(worst)
}

fn named_integer_reconstruction(
    fam: &IntegerFamily,
    phi: &HolomorphicDerivative,
) -> Result<f64> {
    let kind = fam.kind();
    let compare: Option<(NamedSurface, f64, bool, Vec3)> = match (fam.n, fam.m, fam.spacelike) {
        // E_t(1,2) at z = e^w is the timelike Enneper, exactly
        (1, 2, false) => Some((named_surface("enneper_timelike")?, 1.0, false, Vec3::new(1.0, 1.0, 1.0))),
        // E_t(1,0) lands on twice the timelike catenoid in the conjugate coordinate
        (1, 0, false) => Some((named_surface("timelike_catenoid")?, 2.0, true, Vec3::new(1.0, 1.0, 1.0))),
        // E_s(1,0) is twice the elliptic catenoid
        (1, 0, true) => Some((named_surface("elliptic_catenoid")?, 2.0, false, Vec3::new(1.0, 1.0, 1.0))),
        // E_s(1,2) at z = e^{-w} is the spacelike Enneper up to the x1 mirror
        (1, 2, true) => {
            Some((named_surface("enneper_spacelike")?, 1.0, false, Vec3::new(-1.0, 1.0, 1.0)))
        }
        _ => None,
    };
    let Some((surface, scale, conj_v, mirror)) = compare else {
        return Ok(0.0);
    };
    let neg_exp = fam.spacelike && fam.m == 2; // z = e^{-w} for the Enneper reduction
    let mut worst: f64 = 0.0;
    for &(u, v) in &[(0.4, 0.3), (-0.5, -0.6), (0.8, 0.5)] {
        if surface.patch.domain.clearance(u) < 0.2 {
            continue;
        }
        let w = Hyper::new(u, v, kind);
        let z = if neg_exp { (-w).exp() } else { w.exp() };
        let x = integrate_phi(phi, IntegrationConstant::Natural, &[z])?[0];
        let vv = if conj_v { -v } else { v };
        let y = surface.patch.jet(u, vv)?.x;
        let expected =
            Vec3::new(mirror.x1 * y.x1 * scale, mirror.x2 * y.x2 * scale, mirror.x3 * y.x3 * scale);
        worst = worst.max((x - expected).max_abs());
    }
    Ok(worst)
}

fn periods_residual(target: &Target) -> Result<f64> {
    let Target::Integer(fam) = target else {
        bail!("periods apply to integer families");
    };
    let report = residue_period_report(fam);
    if !fam.spacelike {
        // paracomplex: log-term flags must match the exponent structure
        let phi = integer_family_phi(fam);
        let comps = match &phi {
            HolomorphicDerivative::Monomial { comps, .. } => comps,
            _ => unreachable!(),
        };
        for (i, comp) in comps.iter().enumerate() {
            let has = comp.iter().any(|t| t.exponent == -1 && t.num != 0);
            if has != report.real_periods[i].is_present() {
                return Ok(1.0);
            }
        }
        return Ok(0.0);
    }
    let phi = integer_family_phi(fam);
    let transported = loop_transport_numeric(&phi, 0.8)?;
    let expect = [
        report.real_periods[0].numeric(),
        report.real_periods[1].numeric(),
        report.real_periods[2].numeric(),
    ];
    Ok((transported.x1 - expect[0])
        .abs()
        .max((transported.x2 - expect[1]).abs())
        .max((transported.x3 - expect[2]).abs()))
}

/// Numeric pole-order estimate of the 1-form `phi_k dz` at an end, from the
/// log-log growth rate of `phi` (pulled back by `z = 1/w` at infinity).
fn numeric_end_orders(phi: &HolomorphicDerivative, at: EndPoint) -> Result<[i64; 3]> {
    let kind = phi.kind();
    let (r1, r2) = (1e-3, 2e-3);
    let mut orders = [0i64; 3];
    for i in 0..3 {
        let mag = |r: f64| -> Result<f64> {
            let (z, jac) = match at {
                EndPoint::Zero => (Hyper::real(r, kind), 1.0),
                // pull back by z = 1/w: the form gains a factor 1/w^2
                EndPoint::Infinity => (Hyper::real(1.0 / r, kind), 1.0 / (r * r)),
            };
            let p = phi.eval(z)?;
            Ok((p[i].re.abs().max(p[i].im.abs())) * jac)
        };
        let (m1, m2) = (mag(r1)?, mag(r2)?);
        if m1 <= 1e-300 && m2 <= 1e-300 {
            orders[i] = 0;
            continue;
        }
        let slope = (m1.ln() - m2.ln()) / (r2.ln() - r1.ln());
        orders[i] = slope.round().max(0.0) as i64;
    }
    Ok(orders)
}

fn ends_residual(target: &Target) -> Result<f64> {
    let Target::Integer(fam) = target else {
        bail!("end classification applies to integer families");
    };
    let reports = end_classification(fam);
    let phi = integer_family_phi(fam);
    let mut worst = 0.0f64;
    for rep in &reports {
        let numeric = numeric_end_orders(&phi, rep.at)?;
        for (num, exact) in numeric.iter().zip(rep.orders.iter()) {
            worst = worst.max((num - exact).abs() as f64);
        }
        let k = *rep.orders.iter().max().unwrap();
        if k != rep.max_order {
            worst = worst.max(1.0);
        }
    }
    Ok(worst)
}

fn associate_residual(target: &Target) -> Result<f64> {
    let surface = target.surface()?;
    let sig = surface.patch.signature;
    let kind = if sig.is_spacelike() {
        RotationKind::Euclidean
    } else {
        RotationKind::Hyperbolic
    };
    let mut domain = surface.patch.domain.clone();
    domain.margin = 0.15;
    let us = domain.sample_u(-1.0, 1.0, 4);
    let vs = [-0.45, 0.1, 0.5];
    let mut worst: f64 = 0.0;
    for &theta in &[0.3, 1.0] {
        let deformed = associate_deform(&surface.patch, theta)?;
        for &u in &us {
            for &v in &vs {
                let ji = surface.patch.jet(u, v)?;
                let jd = deformed.jet(u, v)?;
                let ii = kernel::first_form(&ji)?;
                let idf = kernel::first_form(&jd)?;
                let scale = ii.e.abs().max(1.0);
                // first-form preservation enters at 100x so the 1e-6 gate
                // enforces the 1e-8 isometry budget
                let iso = (ii.e - idf.e)
                    .abs()
                    .max((ii.f - idf.f).abs())
                    .max((ii.g - idf.g).abs())
                    / scale;
                worst = worst.max(100.0 * iso);
                let (a, _) = kernel::shape_operator(&ji)?;
                let (ad, _) = kernel::shape_operator(&jd)?;
                let conj = rotation(kind, theta).conjugate(&a.mat());
                worst = worst
                    .max(ad.mat().sub(&conj).frobenius() / (1.0 + a.mat().frobenius()));
            }
        }
    }
    Ok(worst)
}

fn catenoid_symmetry_residual(target: &Target) -> Result<f64> {
    let (surface, euclidean, big_b) = match target {
        Target::Named(id) if id == "elliptic_catenoid" => (named_surface(id)?, true, 1.0),
        Target::Named(id) if id == "timelike_catenoid" => (named_surface(id)?, false, 1.0),
        Target::Catenoid { kind, big_b, .. } => {
            (target.surface()?, *kind == CatenoidKind::Elliptic, *big_b)
        }
        _ => bail!("catenoid symmetry applies to catenoid targets"),
    };
    let mut domain = surface.patch.domain.clone();
    domain.margin = 0.15;
    let us = domain.sample_u(-1.2, 1.2, 5);
    let mut worst: f64 = 0.0;
    for &theta in &[0.1, 1.0] {
        // shifting v by theta rotates the orbit circles by B * theta
        let phi = big_b * theta;
        for &u in &us {
            for &v in &[-0.7, 0.2, 1.3] {
                let x = surface.patch.jet(u, v)?.x;
                let y = surface.patch.jet(u, v + theta)?.x;
                let rotated = if euclidean {
                    Vec3::new(
                        phi.cos() * x.x1 - phi.sin() * x.x2,
                        phi.sin() * x.x1 + phi.cos() * x.x2,
                        x.x3,
                    )
                } else {
                    Vec3::new(
                        x.x1,
                        phi.cosh() * x.x2 + phi.sinh() * x.x3,
                        phi.sinh() * x.x2 + phi.cosh() * x.x3,
                    )
                };
                worst = worst.max((rotated - y).max_abs());
            }
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------

/// The period values of an integer family as displayable strings.
pub fn describe_periods(fam: &IntegerFamily) -> Vec<String> {
    let report = residue_period_report(fam);
    report
        .real_periods
        .iter()
        .enumerate()
        .map(|(i, p)| match p {
            PeriodValue::PiMultiple(r) => {
                format!("x{}: {} * pi ({:.12})", i + 1, format_rat(r), p.numeric())
            }
            PeriodValue::LogTerm(true) => format!("x{}: log/linear term present", i + 1),
            PeriodValue::LogTerm(false) => format!("x{}: none", i + 1),
        })
        .collect()
}

fn format_rat(r: &zmc_core::weierstrass::Rational) -> String {
    if r.den == 1 {
        format!("{}", r.num)
    } else {
        format!("{}/{}", r.num, r.den)
    }
}
