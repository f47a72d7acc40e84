//! Flag parsing and run configuration.
//!
//! The parsed configuration normalizes into a canonical echo string placed in
//! every output header, so a run is fully reproducible from its own output.

use koenigs::geom::Point;
use koenigs::harmonic::wos::TargetSpec;
use koenigs::semigroup::{CanonicalDomain, QuadrantKind};

pub const USAGE: &str = "usage:
  koenigs symmetrize --domain <file.json> [--out <file>]
  koenigs polarize   --domain <file.json> [--out <file>]
  koenigs hm         --domain <spec> --target slit|re:<x>|im:<y> [--slit <t0>]
                     [--z0 x,y] [--samples N] [--seed S] [--eps E]
                     [--method wos|grid] [--mesh h] [--right-cap R] [--y-cap Y]
                     [--out <file>]
  koenigs trajectory --domain <spec> --t-grid <grid> [--samples N] [--seed S]
                     [--out <file>]
  koenigs verify     --check t1|t2|baernstein|polarization|diam|scalars
                     [--domain <spec>] [--t-grid <grid>] [--samples N]
                     [--seed S] [--format json|csv] [--out <file>]
  koenigs gap-curve  --domain <spec> --t-grid <grid> [--samples N] [--seed S]
                     [--out <file>]

domain spec: a JSON file path, canonical:<kind>[:p1[:p2]] with kind one of
half_plane, strip, shifted_strip, sector, quadrant[:reflected], or
random:<seed>:<count> (verify only).
t grid: t0:t1:n (linear, inclusive) or geom:t0:t1:n.";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Symmetrize,
    Polarize,
    Hm,
    Trajectory,
    Verify,
    GapCurve,
}

impl Subcommand {
    fn name(&self) -> &'static str {
        match self {
            Subcommand::Symmetrize => "symmetrize",
            Subcommand::Polarize => "polarize",
            Subcommand::Hm => "hm",
            Subcommand::Trajectory => "trajectory",
            Subcommand::Verify => "verify",
            Subcommand::GapCurve => "gap-curve",
        }
    }
}

#[derive(Debug, Clone)]
pub enum DomainSource {
    File(String),
    Canonical(CanonicalDomain),
    Random { seed: u64, count: u64 },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub domain: Option<DomainSource>,
    pub domain_raw: Option<String>,
    pub slit: Vec<f64>,
    pub target: Option<TargetSpec>,
    pub target_raw: Option<String>,
    pub z0: Option<Point>,
    pub samples: u64,
    pub seed: u64,
    pub eps: Option<f64>,
    pub max_steps: Option<u32>,
    pub method: Option<String>,
    pub mesh: Option<f64>,
    pub right_cap: Option<f64>,
    pub y_cap: Option<f64>,
    pub t_grid_raw: Option<String>,
    pub check: Option<String>,
    pub format: Option<String>,
    pub out: Option<String>,
}

impl RunConfig {
    pub fn parse(args: &[String]) -> Result<RunConfig, String> {
        let sub = args.first().ok_or("missing subcommand")?;
        let subcommand = match sub.as_str() {
            "symmetrize" => Subcommand::Symmetrize,
            "polarize" => Subcommand::Polarize,
            "hm" => Subcommand::Hm,
            "trajectory" => Subcommand::Trajectory,
            "verify" => Subcommand::Verify,
            "gap-curve" => Subcommand::GapCurve,
            other => return Err(format!("unknown subcommand {other}")),
        };

        let mut config = RunConfig {
            subcommand,
            domain: None,
            domain_raw: None,
            slit: Vec::new(),
            target: None,
            target_raw: None,
            z0: None,
            samples: 100_000,
            seed: 1,
            eps: None,
            max_steps: None,
            method: None,
            mesh: None,
            right_cap: None,
            y_cap: None,
            t_grid_raw: None,
            check: None,
            format: None,
            out: None,
        };

        let mut it = args[1..].iter();
        while let Some(flag) = it.next() {
            let mut value = || -> Result<&String, String> {
                it.next().ok_or(format!("flag {flag} needs a value"))
            };
            match flag.as_str() {
                "--domain" => {
                    let raw = value()?.clone();
                    config.domain = Some(parse_domain(&raw)?);
                    config.domain_raw = Some(raw);
                }
                "--slit" => config.slit.push(parse_f64(value()?)?),
                "--target" => {
                    let raw = value()?.clone();
                    config.target = Some(parse_target(&raw)?);
                    config.target_raw = Some(raw);
                }
                "--z0" => {
                    let raw = value()?;
                    let (x, y) = raw
                        .split_once(',')
                        .ok_or(format!("--z0 expects x,y, got {raw}"))?;
                    config.z0 = Some(Point::new(parse_f64(x)?, parse_f64(y)?));
                }
                "--samples" => config.samples = parse_u64(value()?)?,
                "--seed" => config.seed = parse_u64(value()?)?,
                "--eps" => config.eps = Some(parse_f64(value()?)?),
                "--max-steps" => config.max_steps = Some(parse_u64(value()?)? as u32),
                "--method" => config.method = Some(value()?.clone()),
                "--mesh" => config.mesh = Some(parse_f64(value()?)?),
                "--right-cap" => config.right_cap = Some(parse_f64(value()?)?),
                "--y-cap" => config.y_cap = Some(parse_f64(value()?)?),
                "--t-grid" => config.t_grid_raw = Some(value()?.clone()),
                "--check" => config.check = Some(value()?.clone()),
                "--format" => config.format = Some(value()?.clone()),
                "--out" => config.out = Some(value()?.clone()),
                other => return Err(format!("unknown flag {other}")),
            }
        }
        Ok(config)
    }

    /// Normalized configuration echo for the output header.
    pub fn echo(&self) -> String {
        let mut parts = vec![self.subcommand.name().to_string()];
        if let Some(raw) = &self.domain_raw {
            parts.push(format!("--domain {raw}"));
        }
        for s in &self.slit {
            parts.push(format!("--slit {s}"));
        }
        if let Some(raw) = &self.target_raw {
            parts.push(format!("--target {raw}"));
        }
        if let Some(p) = self.z0 {
            parts.push(format!("--z0 {},{}", p.x, p.y));
        }
        if let Some(check) = &self.check {
            parts.push(format!("--check {check}"));
        }
        if let Some(grid) = &self.t_grid_raw {
            parts.push(format!("--t-grid {grid}"));
        }
        parts.push(format!("--samples {}", self.samples));
        parts.push(format!("--seed {}", self.seed));
        if let Some(eps) = self.eps {
            parts.push(format!("--eps {eps}"));
        }
        if let Some(ms) = self.max_steps {
            parts.push(format!("--max-steps {ms}"));
        }
        if let Some(m) = &self.method {
            parts.push(format!("--method {m}"));
        }
        if let Some(h) = self.mesh {
            parts.push(format!("--mesh {h}"));
        }
        if let Some(r) = self.right_cap {
            parts.push(format!("--right-cap {r}"));
        }
        if let Some(y) = self.y_cap {
            parts.push(format!("--y-cap {y}"));
        }
        if let Some(f) = &self.format {
            parts.push(format!("--format {f}"));
        }
        parts.join(" ")
    }

    pub fn domain_echo(&self) -> String {
        self.domain_raw.clone().unwrap_or_else(|| "unspecified".to_string())
    }

    /// Expands `t0:t1:n` (linear) or `geom:t0:t1:n` into times.
    pub fn t_grid(&self) -> Result<Vec<f64>, String> {
        let raw = self.t_grid_raw.as_deref().ok_or("missing --t-grid")?;
        let (geometric, rest) = match raw.strip_prefix("geom:") {
            Some(rest) => (true, rest),
            None => (false, raw),
        };
        let fields: Vec<&str> = rest.split(':').collect();
        if fields.len() != 3 {
            return Err(format!("t grid {raw} is not t0:t1:n"));
        }
        let t0 = parse_f64(fields[0])?;
        let t1 = parse_f64(fields[1])?;
        let n: usize = fields[2].parse().map_err(|_| format!("bad count {}", fields[2]))?;
        if n == 0 {
            return Err("t grid needs at least one point".into());
        }
        if n == 1 {
            return Ok(vec![t0]);
        }
        let mut out = Vec::with_capacity(n);
        if geometric {
            if !(t0 > 0.0 && t1 > 0.0) {
                return Err("geometric grids need positive endpoints".into());
            }
            for k in 0..n {
                out.push(t0 * (t1 / t0).powf(k as f64 / (n - 1) as f64));
            }
        } else {
            for k in 0..n {
                out.push(t0 + (t1 - t0) * k as f64 / (n - 1) as f64);
            }
        }
        Ok(out)
    }

    pub fn write_output(&self, text: &str) -> Result<(), String> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}")),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse().map_err(|_| format!("bad number {s}"))
}

fn parse_u64(s: &str) -> Result<u64, String> {
    s.trim().parse().map_err(|_| format!("bad integer {s}"))
}

fn parse_domain(raw: &str) -> Result<DomainSource, String> {
    if let Some(rest) = raw.strip_prefix("canonical:") {
        let fields: Vec<&str> = rest.split(':').collect();
        let canonical = match fields[0] {
            "half_plane" => CanonicalDomain::HalfPlane { d: param(&fields, 1)? },
            "strip" => CanonicalDomain::Strip { a: param(&fields, 1)? },
            "shifted_strip" => {
                CanonicalDomain::ShiftedStrip { a: param(&fields, 1)?, b: param(&fields, 2)? }
            }
            "sector" => CanonicalDomain::Sector { c: param(&fields, 1)? },
            "quadrant" => {
                let kind = match fields.get(1) {
                    Some(&"reflected") => QuadrantKind::UpperLeftCorner,
                    None => QuadrantKind::LowerLeftCorner,
                    Some(other) => return Err(format!("unknown quadrant variant {other}")),
                };
                CanonicalDomain::Quadrant { kind }
            }
            other => return Err(format!("unknown canonical kind {other}")),
        };
        return Ok(DomainSource::Canonical(canonical));
    }
    if let Some(rest) = raw.strip_prefix("random:") {
        let (seed, count) = rest
            .split_once(':')
            .ok_or(format!("random spec {raw} is not random:seed:count"))?;
        return Ok(DomainSource::Random {
            seed: parse_u64(seed)?,
            count: parse_u64(count)?,
        });
    }
    Ok(DomainSource::File(raw.to_string()))
}

fn param(fields: &[&str], index: usize) -> Result<f64, String> {
    fields
        .get(index)
        .ok_or(format!("canonical spec needs parameter {index}"))
        .and_then(|s| parse_f64(s))
}

fn parse_target(raw: &str) -> Result<TargetSpec, String> {
    if raw == "slit" {
        return Ok(TargetSpec::AllSlits);
    }
    if let Some(x) = raw.strip_prefix("re:") {
        return Ok(TargetSpec::VerticalAt(parse_f64(x)?));
    }
    if let Some(y) = raw.strip_prefix("im:") {
        return Ok(TargetSpec::HorizontalAt(parse_f64(y)?));
    }
    if let Some(list) = raw.strip_prefix("seg:") {
        let ids: Result<Vec<usize>, _> = list.split(',').map(|s| s.trim().parse()).collect();
        return Ok(TargetSpec::SegmentIndices(
            ids.map_err(|_| format!("bad segment list {list}"))?,
        ));
    }
    Err(format!("unknown target {raw} (want slit, re:<x>, im:<y> or seg:<i,...>)"))
}
