//! Target addressing: named catalog surfaces, family parameters, integer
//! Weierstrass families, and catenoids, all parseable from CLI strings.

use anyhow::{anyhow, bail, Context, Result};
use zmc_core::catalog::{
    catenoid, named_surface, CatenoidKind, FamilyKind, FamilyParams, NamedSurface, NAMED_IDS,
};
use zmc_core::weierstrass::IntegerFamily;

/// A resolvable verification/export target.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Named(String),
    Family(FamilyParams),
    Integer(IntegerFamily),
    Catenoid { kind: CatenoidKind, big_a: f64, big_b: f64 },
}

impl Target {
    /// Parse a target string:
    ///
    /// * a named id (`enneper_spacelike`, ...);
    /// * `family:<kind>,a=<v>,A=<v>,B=<v>` with kind one of `spacelike`,
    ///   `timelike-u`, `timelike-v`;
    /// * `es:<n>,<m>` / `et:<n>,<m>` for the integer families;
    /// * `catenoid:elliptic,A=<v>,B=<v>` or `catenoid:timelike,...`.
    pub fn parse(s: &str) -> Result<Target> {
        let s = s.trim();
        if NAMED_IDS.contains(&s) {
            return Ok(Target::Named(s.to_string()));
        }
        if let Some(rest) = s.strip_prefix("family:") {
            return parse_family(rest).map(Target::Family);
        }
        if let Some(rest) = s.strip_prefix("es:") {
            let (n, m) = parse_pair(rest)?;
            return Ok(Target::Integer(IntegerFamily::new(n, m, true)?));
        }
        if let Some(rest) = s.strip_prefix("et:") {
            let (n, m) = parse_pair(rest)?;
            return Ok(Target::Integer(IntegerFamily::new(n, m, false)?));
        }
        if let Some(rest) = s.strip_prefix("catenoid:") {
            let mut parts = rest.split(',');
            let kind = match parts.next().map(str::trim) {
                Some("elliptic") => CatenoidKind::Elliptic,
                Some("timelike") => CatenoidKind::Timelike,
                other => bail!("unknown catenoid kind {:?}", other),
            };
            let kv = parse_kv(parts)?;
            let big_a = *kv_get(&kv, "A")?;
            let big_b = *kv_get(&kv, "B")?;
            return Ok(Target::Catenoid { kind, big_a, big_b });
        }
        bail!(
            "unknown target `{s}`; expected one of {:?}, `family:...`, `es:n,m`, `et:n,m`, \
             or `catenoid:...`",
            NAMED_IDS
        )
    }

    pub fn id(&self) -> String {
        match self {
            Target::Named(id) => id.clone(),
            Target::Family(p) => p.id(),
            Target::Integer(f) => {
                format!("{}:{},{}", if f.spacelike { "es" } else { "et" }, f.n, f.m)
            }
            Target::Catenoid { kind, big_a, big_b } => format!(
                "catenoid:{},A={big_a},B={big_b}",
                match kind {
                    CatenoidKind::Elliptic => "elliptic",
                    CatenoidKind::Timelike => "timelike",
                }
            ),
        }
    }

    /// Resolve to a catalog surface when the target is patch-backed.
    /// Integer families are not patch-backed (their surfaces come from
    /// integrating the derivative triple).
    pub fn surface(&self) -> Result<NamedSurface> {
        match self {
            Target::Named(id) => Ok(named_surface(id)?),
            Target::Family(p) => Ok(zmc_core::catalog::theorem_surface(p)?),
            Target::Catenoid { kind, big_a, big_b } => Ok(catenoid(*kind, *big_a, *big_b)?),
            Target::Integer(f) => {
                bail!("target {} has no closed-form patch; use the weierstrass commands", {
                    let _ = f;
                    self.id()
                })
            }
        }
    }
}

fn parse_pair(s: &str) -> Result<(i64, i64)> {
    let mut it = s.split(',').map(str::trim);
    let n = it
        .next()
        .ok_or_else(|| anyhow!("missing n"))?
        .parse::<i64>()
        .context("bad integer n")?;
    let m = it
        .next()
        .ok_or_else(|| anyhow!("missing m"))?
        .parse::<i64>()
        .context("bad integer m")?;
    if it.next().is_some() {
        bail!("expected exactly `n,m`");
    }
    Ok((n, m))
}

fn parse_kv<'a>(parts: impl Iterator<Item = &'a str>) -> Result<Vec<(String, f64)>> {
    let mut out = Vec::new();
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value, got `{p}`"))?;
        out.push((k.trim().to_string(), v.trim().parse::<f64>().context("bad number")?));
    }
    Ok(out)
}

fn kv_get<'a>(kv: &'a [(String, f64)], key: &str) -> Result<&'a f64> {
    kv.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v)
        .ok_or_else(|| anyhow!("missing parameter `{key}`"))
}

fn parse_family(rest: &str) -> Result<FamilyParams> {
    let mut parts = rest.split(',');
    let kind = match parts.next().map(str::trim) {
        Some("spacelike") => FamilyKind::Spacelike,
        Some("timelike-u") | Some("timelike_u") => FamilyKind::TimelikeU,
        Some("timelike-v") | Some("timelike_v") => FamilyKind::TimelikeV,
        other => bail!("unknown family kind {:?} (expected spacelike|timelike-u|timelike-v)", other),
    };
    let kv = parse_kv(parts)?;
    let a = *kv_get(&kv, "a")?;
    let big_a = *kv_get(&kv, "A")?;
    let big_b = *kv_get(&kv, "B")?;
    Ok(FamilyParams::new(kind, a, big_a, big_b)?)
}
