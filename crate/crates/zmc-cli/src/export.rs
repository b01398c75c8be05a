//! Surface sampling and mesh/CSV/JSON export.
//!
//! OBJ meshes use `v x y z` lines followed by 1-based row-major `f`
//! triangles; CSV carries the header `u,v,x1,x2,x3` with shortest
//! round-trip float formatting (re-import is bit-exact); JSON wraps the
//! samples with target/grid/exclusion metadata.

use crate::config::{Format, GridSpec};
use crate::target::Target;
use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;
use zmc_core::hyper::Hyper;
use zmc_core::minkowski::Vec3;
use zmc_core::surface::linspace;
use zmc_core::weierstrass::{integer_family_phi, integrate_phi, IntegrationConstant};

/// A sampled rectangular patch.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampledGrid {
    pub target: String,
    pub us: Vec<f64>,
    pub vs: Vec<f64>,
    /// Row-major: `points[iu][iv]`.
    pub points: Vec<Vec<[f64; 3]>>,
    pub exclusions: Vec<f64>,
}

/// Sample a patch-backed target over the grid. `u` rows that fall within the
/// patch margin of a degeneracy locus are dropped with a warning (the grid
/// is auto-shrunk); OBJ export refuses such grids instead, since dropping
/// rows would tear the mesh.
pub fn sample_grid(target: &Target, grid: &GridSpec) -> Result<SampledGrid> {
    if let Target::Integer(fam) = target {
        return sample_integer_grid(target, fam, grid);
    }
    let surface = target.surface()?;
    let domain = surface.patch.domain.clone();
    let mut us = linspace(grid.u_min, grid.u_max, grid.nu);
    let before = us.len();
    us.retain(|&u| domain.clearance(u) > domain.margin);
    if us.len() < before {
        eprintln!(
            "warning: {} grid row(s) within {} of a degeneracy locus were dropped",
            before - us.len(),
            domain.margin
        );
    }
    if us.len() < 2 {
        bail!("grid does not contain two admissible u rows");
    }
    let vs = linspace(grid.v_min, grid.v_max, grid.nv);
    let points: Vec<Vec<[f64; 3]>> = us
        .par_iter()
        .map(|&u| {
            vs.iter()
                .map(|&v| {
                    let x = surface
                        .patch
                        .position(u, v)
                        .unwrap_or(Vec3::new(f64::NAN, f64::NAN, f64::NAN));
                    [x.x1, x.x2, x.x3]
                })
                .collect()
        })
        .collect();
    Ok(SampledGrid {
        target: target.id(),
        us,
        vs,
        points,
        exclusions: domain.u_exclusions.clone(),
    })
}

/// Integer-family surfaces: `X = 2 Re int phi` sampled at `z = u + unit v`.
/// The grid must avoid `z = 0` (and, for data carrying `z^{-1}` terms, the
/// logarithm cut along the non-positive axis).
fn sample_integer_grid(
    target: &Target,
    fam: &zmc_core::weierstrass::IntegerFamily,
    grid: &GridSpec,
) -> Result<SampledGrid> {
    let phi = integer_family_phi(fam);
    let kind = fam.kind();
    let us = linspace(grid.u_min, grid.u_max, grid.nu);
    let vs = linspace(grid.v_min, grid.v_max, grid.nv);
    let points: Vec<Vec<Result<[f64; 3]>>> = us
        .par_iter()
        .map(|&u| {
            vs.iter()
                .map(|&v| {
                    let z = Hyper::new(u, v, kind);
                    let x = integrate_phi(&phi, IntegrationConstant::Natural, &[z])
                        .map_err(|e| anyhow::anyhow!("at (u, v) = ({u}, {v}): {e}"))?[0];
                    Ok([x.x1, x.x2, x.x3])
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(us.len());
    for row in points {
        rows.push(row.into_iter().collect::<Result<Vec<_>>>()?);
    }
    Ok(SampledGrid {
        target: target.id(),
        us,
        vs,
        points: rows,
        exclusions: vec![],
    })
}

/// True when a degeneracy locus lies strictly inside the grid's u-range.
pub fn grid_straddles_exclusion(target: &Target, grid: &GridSpec) -> Result<Option<f64>> {
    if matches!(target, Target::Integer(_)) {
        return Ok(None);
    }
    let surface = target.surface()?;
    Ok(surface
        .patch
        .domain
        .u_exclusions
        .iter()
        .copied()
        .find(|&e| e > grid.u_min && e < grid.u_max))
}

pub fn write_output(sampled: &SampledGrid, format: Format, path: &str) -> Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    match format {
        Format::Obj => write_obj(sampled, &mut buf)?,
        Format::Csv => write_csv(sampled, &mut buf)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, sampled)?;
            buf.push(b'\n');
        }
    }
    std::fs::write(path, &buf).with_context(|| format!("writing {path}"))?;
    Ok(())
}

fn write_obj(s: &SampledGrid, out: &mut impl Write) -> Result<()> {
    let (nu, nv) = (s.us.len(), s.vs.len());
    writeln!(out, "# {} sampled {}x{}", s.target, nu, nv)?;
    for row in &s.points {
        for p in row {
            writeln!(out, "v {} {} {}", p[0], p[1], p[2])?;
        }
    }
    // row-major 1-based indices; two triangles per cell
    for iu in 0..nu - 1 {
        for iv in 0..nv - 1 {
            let a = iu * nv + iv + 1;
            let b = a + 1;
            let c = a + nv;
            let d = c + 1;
            writeln!(out, "f {a} {b} {d}")?;
            writeln!(out, "f {a} {d} {c}")?;
        }
    }
    Ok(())
}

fn write_csv(s: &SampledGrid, out: &mut impl Write) -> Result<()> {
    writeln!(out, "u,v,x1,x2,x3")?;
    for (iu, &u) in s.us.iter().enumerate() {
        for (iv, &v) in s.vs.iter().enumerate() {
            let p = s.points[iu][iv];
            writeln!(out, "{},{},{},{},{}", u, v, p[0], p[1], p[2])?;
        }
    }
    Ok(())
}

/// Re-import an emitted CSV (used by the round-trip checks).
pub fn read_csv(text: &str) -> Result<Vec<(f64, f64, [f64; 3])>> {
    let mut lines = text.lines();
    match lines.next() {
        Some("u,v,x1,x2,x3") => {}
        other => bail!("unexpected CSV header {:?}", other),
    }
    let mut out = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 5 {
            bail!("bad CSV row `{line}`");
        }
        out.push((
            cols[0].parse()?,
            cols[1].parse()?,
            [cols[2].parse()?, cols[3].parse()?, cols[4].parse()?],
        ));
    }
    Ok(out)
}
