//! `zmc`: catalog browsing, surface evaluation, mesh export, and the
//! verification suite runner for intrinsic rotational zero-mean-curvature
//! surfaces in Lorentz-Minkowski 3-space.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::collections::BTreeMap;
use std::process::ExitCode;
use zmc_cli::config::{Format, GridSpec, JobConfig};
use zmc_cli::export::{grid_straddles_exclusion, sample_grid, write_output};
use zmc_cli::report::{CheckResult, Environment, VerificationReport};
use zmc_cli::suites::{applicable_suites, describe_periods, run_suite, SUITE_NAMES};
use zmc_cli::target::Target;
use zmc_core::catalog::{named_surface, NAMED_IDS};
use zmc_core::kernel;
use zmc_core::surface::SurfacePatch;
use zmc_core::weierstrass::{end_classification, EndClass, EndPoint};

#[derive(Parser)]
#[command(name = "zmc", version, about = "intrinsic rotational ZMC surfaces in E^3_1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List named surfaces, family schemas, and verification suites.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a surface and its curvature data at one point.
    Eval {
        #[arg(long)]
        target: String,
        /// Point as `u,v`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        json: bool,
    },
    /// Sample a surface over a grid and write OBJ/CSV/JSON.
    Export(ExportArgs),
    /// Run verification suites and report per-check residuals.
    Verify(VerifyArgs),
    /// Reconstruct a surface from closed-form Björling data.
    Bjorling(BjorlingArgs),
    /// Weierstrass data reports: residues, periods, end classification.
    Weierstrass(WeierstrassArgs),
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    output: Option<String>,
    /// obj | csv | json
    #[arg(long)]
    format: Option<String>,
    /// `u_min,u_max,v_min,v_max,nu,nv`
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    target: Option<String>,
    /// Comma-separated suite names (default: every applicable suite).
    #[arg(long)]
    suite: Option<String>,
    /// `u_min,u_max,v_min,v_max,nu,nv` for the sweeps.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Write the machine-readable report here.
    #[arg(long)]
    json: Option<String>,
    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol")]
    tolerances: Vec<String>,
    /// Seed for the extra randomized sample points.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args)]
struct BjorlingArgs {
    /// Family data: `kind,a=..,A=..,B=..` (kinds as in `family:` targets).
    #[arg(long)]
    family: Option<String>,
    /// JSON file holding a Björling descriptor.
    #[arg(long)]
    data: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    format: Option<String>,
    /// Verify the data contract before reconstructing.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct WeierstrassArgs {
    /// `es:n,m`, `et:n,m`, or a family target.
    #[arg(long)]
    target: String,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    zmc_cli::init_threads();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::List { json } => cmd_list(json),
        Command::Eval { target, at, json } => cmd_eval(&target, &at, json),
        Command::Export(args) => cmd_export(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bjorling(args) => cmd_bjorling(args),
        Command::Weierstrass(args) => cmd_weierstrass(args),
    }
}

fn cmd_list(as_json: bool) -> Result<bool> {
    let mut targets = Vec::new();
    for id in NAMED_IDS {
        let s = named_surface(id)?;
        let kind = if s.patch.signature.is_spacelike() { "spacelike" } else { "timelike" };
        targets.push(json!({"id": id, "provenance": s.provenance, "kind": kind}));
    }
    let value = json!({
        "targets": targets,
        "family_schema": {
            "kinds": ["spacelike", "timelike-u", "timelike-v"],
            "parameters": [
                "a (twist slope, nonzero)",
                "A (positive)",
                "B (exponent; B = ±2a selects the linear-term branches)"
            ],
            "branches": ["generic", "twice_slope", "neg_twice_slope"],
            "example": "family:spacelike,a=1,A=1,B=3"
        },
        "integer_family_schema": {
            "prefixes": ["es", "et"],
            "parameters": ["n (nonzero integer)", "m (integer)"],
            "example": "es:2,-1"
        },
        "suites": SUITE_NAMES,
    });
    if as_json {
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("named surfaces:");
        for t in value["targets"].as_array().unwrap() {
            println!("  {:<22} {}", t["id"].as_str().unwrap(), t["provenance"].as_str().unwrap());
        }
        println!("families:   family:<kind>,a=..,A=..,B=..  (spacelike | timelike-u | timelike-v)");
        println!("integer:    es:n,m | et:n,m");
        println!("catenoids:  catenoid:elliptic,A=..,B=.. | catenoid:timelike,A=..,B=..");
        println!("suites:     {}", SUITE_NAMES.join(" "));
    }
    Ok(true)
}

fn cmd_eval(target: &str, at: &str, as_json: bool) -> Result<bool> {
    let target = Target::parse(target)?;
    let (u, v) = at.split_once(',').ok_or_else(|| anyhow!("--at expects `u,v`"))?;
    let (u, v): (f64, f64) = (u.trim().parse()?, v.trim().parse()?);
    let surface = target.surface()?;
    let x = surface.patch.position(u, v)?;
    let mut obj = json!({
        "target": target.id(),
        "u": u, "v": v,
        "x": [x.x1, x.x2, x.x3],
    });
    if let Ok(jet) = surface.patch.jet(u, v) {
        let i = kernel::first_form(&jet)?;
        let (a, sigma) = kernel::shape_operator(&jet)?;
        let cs = kernel::curvature_summary(&a, sigma);
        obj["first_form"] = json!({"E": i.e, "F": i.f, "G": i.g});
        obj["mean_curvature"] = json!(cs.mean);
        obj["gauss_curvature"] = json!(cs.gauss);
        obj["principal_curvatures"] = json!([cs.lambda1, cs.lambda2]);
        obj["causal_character"] = json!(if sigma > 0.0 { "spacelike" } else { "timelike" });
    } else {
        obj["note"] = json!("point is on or near a degeneracy locus; curvature data omitted");
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&obj)?);
    } else {
        println!("{} at (u, v) = ({u}, {v})", target.id());
        println!("  X = ({}, {}, {})", x.x1, x.x2, x.x3);
        if let Some(ff) = obj.get("first_form") {
            println!("  I: E = {}, F = {}, G = {}", ff["E"], ff["F"], ff["G"]);
            println!(
                "  H = {}, K = {}, lambda = {}",
                obj["mean_curvature"], obj["gauss_curvature"], obj["principal_curvatures"]
            );
        } else {
            println!("  (degeneracy locus; curvature data omitted)");
        }
    }
    Ok(true)
}

fn merge_config(
    config: Option<&str>,
    target: Option<&str>,
    grid: Option<&str>,
) -> Result<(JobConfig, Option<String>, GridSpec)> {
    let mut cfg = match config {
        Some(path) => JobConfig::load(path)?,
        None => JobConfig::default(),
    };
    let target = target.map(str::to_string).or_else(|| cfg.target.clone());
    if let Some(g) = grid {
        cfg.grid = Some(GridSpec::parse(g)?);
    }
    let grid = cfg.grid.unwrap_or_default();
    grid.validate()?;
    Ok((cfg, target, grid))
}

fn cmd_export(args: ExportArgs) -> Result<bool> {
    let (cfg, target, grid) =
        merge_config(args.config.as_deref(), args.target.as_deref(), args.grid.as_deref())?;
    let target = Target::parse(&target.ok_or_else(|| anyhow!("missing --target"))?)?;
    let (path, format) = match (&args.output, &args.format, &cfg.output) {
        (Some(p), Some(f), _) => (p.clone(), Format::parse(f)?),
        (None, None, Some(o)) => (o.path.clone(), o.format),
        _ => bail!("export needs --output and --format (or a config output block)"),
    };
    if format == Format::Obj {
        if let Some(locus) = grid_straddles_exclusion(&target, &grid)? {
            bail!(
                "grid straddles the degeneracy locus u = {locus} of `{}`; meshes must not \
                 cross non-immersion lines (exclusions: {:?}). Shrink the u-range to one side.",
                target.id(),
                target.surface()?.patch.domain.u_exclusions
            );
        }
    }
    let sampled = sample_grid(&target, &grid)?;
    write_output(&sampled, format, &path)?;
    println!(
        "wrote {} ({} x {} samples of {})",
        path,
        sampled.us.len(),
        sampled.vs.len(),
        target.id()
    );
    Ok(true)
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let (cfg, target, grid) =
        merge_config(args.config.as_deref(), args.target.as_deref(), args.grid.as_deref())?;
    let target = Target::parse(&target.ok_or_else(|| anyhow!("missing --target"))?)?;
    let mut tolerances: BTreeMap<String, f64> = cfg.tolerances.clone();
    for t in &args.tolerances {
        let (k, v) = t.split_once('=').ok_or_else(|| anyhow!("--tol expects name=value"))?;
        tolerances.insert(k.trim().to_string(), v.trim().parse()?);
    }
    let seed = args.seed.or(cfg.seed);
    let requested: Vec<String> = match &args.suite {
        Some(s) => s.split(',').map(|x| x.trim().to_string()).collect(),
        None if !cfg.suite.is_empty() => cfg.suite.clone(),
        None => applicable_suites(&target).iter().map(|s| s.to_string()).collect(),
    };
    let mut checks: Vec<CheckResult> = Vec::new();
    for name in &requested {
        let check = run_suite(name, &target, &grid, &tolerances, seed)
            .with_context(|| format!("suite `{name}` on `{}`", target.id()))?;
        checks.push(check);
    }
    let report = VerificationReport::new(
        target.id(),
        checks,
        Environment { grid, seed, tolerance_overrides: tolerances },
    );
    print!("{}", report.render_text());
    if let Some(path) = &args.json {
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(report.pass)
}

fn cmd_bjorling(args: BjorlingArgs) -> Result<bool> {
    use zmc_core::bjorling::{build_bjorling_data, validate_bjorling_data, BjorlingDescriptor};
    let desc: BjorlingDescriptor = match (&args.family, &args.data) {
        (Some(f), None) => {
            let t = Target::parse(&format!("family:{f}"))?;
            match t {
                Target::Family(p) => BjorlingDescriptor::Family(p),
                _ => unreachable!(),
            }
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            serde_json::from_str(&text)?
        }
        _ => bail!("provide exactly one of --family or --data"),
    };
    let data = build_bjorling_data(&desc)?;
    let grid = match &args.grid {
        Some(g) => GridSpec::parse(g)?,
        None => GridSpec { nu: 41, nv: 41, v_min: -0.5, v_max: 0.5, ..Default::default() },
    };
    if args.check {
        let us = zmc_core::surface::linspace(grid.u_min, grid.u_max, 9);
        validate_bjorling_data(&data, &us, 1e-10)?;
        println!("data contract ok: unit normal of the required sign, orthogonal to the curve");
    }
    let us = zmc_core::surface::linspace(grid.u_min, grid.u_max, grid.nu);
    let vs = zmc_core::surface::linspace(grid.v_min, grid.v_max, grid.nv);
    let rows = zmc_core::bjorling::bjorling_solve(&data, &us, &vs)?;
    match (&args.output, &args.format) {
        (Some(path), Some(fmt)) => {
            let sampled = zmc_cli::export::SampledGrid {
                target: "bjorling".to_string(),
                us,
                vs,
                points: rows
                    .iter()
                    .map(|r| r.iter().map(|p| [p.x1, p.x2, p.x3]).collect())
                    .collect(),
                exclusions: vec![],
            };
            write_output(&sampled, Format::parse(fmt)?, path)?;
            println!("wrote {path}");
        }
        _ => {
            println!(
                "reconstructed {} x {} points; X at grid center = {:?}",
                us.len(),
                vs.len(),
                rows[us.len() / 2][vs.len() / 2]
            );
        }
    }
    Ok(true)
}

fn cmd_weierstrass(args: WeierstrassArgs) -> Result<bool> {
    let target = Target::parse(&args.target)?;
    match &target {
        Target::Integer(fam) => {
            let ends = end_classification(fam);
            let periods = describe_periods(fam);
            if args.json {
                let obj = json!({
                    "target": target.id(),
                    "ends": ends.iter().map(|e| json!({
                        "at": match e.at { EndPoint::Zero => "0", EndPoint::Infinity => "inf" },
                        "orders": e.orders,
                        "max_order": e.max_order,
                        "class": match e.class {
                            EndClass::Enneper => "enneper",
                            EndClass::Catenoid => "catenoid",
                            EndClass::Planar => "planar",
                            EndClass::Unclassified => "unclassified",
                        },
                    })).collect::<Vec<_>>(),
                    "real_periods": periods,
                });
                println!("{}", serde_json::to_string_pretty(&obj)?);
            } else {
                println!("{}", target.id());
                for e in &ends {
                    println!(
                        "  end at {}: orders {:?}, max {}, {:?}",
                        match e.at {
                            EndPoint::Zero => "0",
                            EndPoint::Infinity => "infinity",
                        },
                        e.orders,
                        e.max_order,
                        e.class
                    );
                }
                println!("  real periods around 0:");
                for p in periods {
                    println!("    {p}");
                }
            }
            Ok(true)
        }
        Target::Family(p) => {
            let data = zmc_core::weierstrass::weierstrass_from_family(p)?;
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "target": target.id(),
                        "g": format!("{:?}", data.g),
                        "omega_coeff": format!("{:?}", data.omega_coeff),
                    }))?
                );
            } else {
                println!(
                    "{}: g = {:?}, omega coefficient = {:?}",
                    target.id(),
                    data.g,
                    data.omega_coeff
                );
            }
            Ok(true)
        }
        _ => bail!("weierstrass reports apply to `es:n,m`, `et:n,m`, or family targets"),
    }
}
