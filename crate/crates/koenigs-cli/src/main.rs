//! Command-line front end: domain ingestion, estimator configuration, and
//! CSV/JSON emission for harmonic-measure queries, trajectories, transforms,
//! verification suites and gap curves.
//!
//! Every output starts with a header line echoing the tool version and the
//! normalized run configuration; re-running that configuration reproduces the
//! file byte for byte. Exit status: 0 on success, 1 when any verification
//! record fails, 2 on input errors.

use std::fmt::Write as _;
use std::process::ExitCode;

use koenigs::geom::json::{domain_from_json, domain_to_json};
use koenigs::geom::{Point, Segment, StaircaseDomain};
use koenigs::harmonic::grid::hm_grid_windowed;
use koenigs::harmonic::wos::{hm_wos, WosParams};
use koenigs::semigroup::{CanonicalDomain, QuadrantKind, TrajectoryPoint};
use koenigs::transform::{polarize, steiner};
use koenigs::verify::{
    check_baernstein, check_diam, check_symmetrization_chain, check_polarization_slit, scalar_suite,
    symmetrization_head_canonical, polarization_head_canonical, CheckRecord, VerificationReport,
};

mod run;

use run::{DomainSource, RunConfig, Subcommand};

fn main() -> ExitCode {
    configure_thread_pool();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let config = match RunConfig::parse(&args) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            eprintln!("{}", run::USAGE);
            return ExitCode::from(2);
        }
    };
    match execute(&config) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Caps the worker pool from KOENIGS_THREADS; results do not depend on it.
fn configure_thread_pool() {
    if let Ok(value) = std::env::var("KOENIGS_THREADS") {
        if let Ok(n) = value.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn execute(config: &RunConfig) -> Result<bool, String> {
    let header = format!("# koenigs {} | {}", env!("CARGO_PKG_VERSION"), config.echo());
    match &config.subcommand {
        Subcommand::Symmetrize | Subcommand::Polarize => {
            let domain = load_staircase(config)?;
            let out = match config.subcommand {
                Subcommand::Symmetrize => steiner(&domain),
                _ => polarize(&domain),
            }
            .map_err(|e| e.to_string())?;
            config.write_output(&domain_to_json(&out))?;
            Ok(true)
        }
        Subcommand::Hm => run_hm(config, &header),
        Subcommand::Trajectory => run_trajectory(config, &header),
        Subcommand::Verify => run_verify(config, &header),
        Subcommand::GapCurve => run_gap_curve(config, &header),
    }
}

fn load_staircase(config: &RunConfig) -> Result<StaircaseDomain, String> {
    match &config.domain {
        Some(DomainSource::File(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {path}: {e}"))?;
            domain_from_json(&text).map_err(|e| e.to_string())
        }
        Some(DomainSource::Canonical(c)) => canonical_staircase(c),
        Some(DomainSource::Random { seed, count }) => {
            if *count != 1 {
                return Err("this subcommand takes a single domain; use random:<seed>:1".into());
            }
            Ok(koenigs::fixtures::random_domain(*seed, 0))
        }
        None => Err("missing --domain".into()),
    }
}

fn canonical_staircase(c: &CanonicalDomain) -> Result<StaircaseDomain, String> {
    match c {
        CanonicalDomain::Sector { .. } => {
            // Piecewise approximation; width and extent follow the trajectory
            // cross-check convention.
            Ok(c.staircase(0.01, 54.0))
        }
        _ => Ok(c.staircase(0.01, 1.0)),
    }
}

fn wos_params_for(config: &RunConfig, domain: &StaircaseDomain) -> WosParams {
    let mut params = WosParams::for_domain(domain, config.samples, config.seed);
    if let Some(eps) = config.eps {
        params.eps = eps;
    }
    if let Some(ms) = config.max_steps {
        params.max_steps = ms;
    }
    params
}

fn run_hm(config: &RunConfig, header: &str) -> Result<bool, String> {
    let domain = load_staircase(config)?;
    let slits: Vec<Segment> = config.slit.iter().map(|&t| Segment::slit_from(t)).collect();
    let target = config.target.clone().ok_or("missing --target")?;
    let z0 = config.z0.unwrap_or(Point::ORIGIN);

    let mut body = String::new();
    writeln!(body, "value,stderr,n,method,eps,censored_fraction").unwrap();
    match config.method.as_deref().unwrap_or("wos") {
        "wos" => {
            let params = wos_params_for(config, &domain);
            let est = hm_wos(&domain, &slits, z0, &target, &params).map_err(|e| e.to_string())?;
            writeln!(
                body,
                "{},{},{},{},{},{}",
                est.value,
                est.stderr,
                est.n_samples,
                est.method,
                est.eps,
                est.censored_fraction()
            )
            .unwrap();
        }
        "grid" => {
            let h = config.mesh.unwrap_or(1.0 / 64.0);
            let right_cap = config
                .right_cap
                .unwrap_or_else(|| spec_right_cap(&domain, config.slit.first().copied().unwrap_or(0.0)));
            let y_cap = config.y_cap.unwrap_or(right_cap);
            let value = hm_grid_windowed(&domain, &slits, z0, &target, h, right_cap, y_cap)
                .map_err(|e| e.to_string())?;
            writeln!(body, "{value},0,0,grid,{h},0").unwrap();
        }
        other => return Err(format!("unknown method {other}")),
    }
    config.write_output(&format!("{header}\n{body}"))?;
    Ok(true)
}

/// Default truncation abscissa: slit start plus 40 characteristic lengths.
fn spec_right_cap(domain: &StaircaseDomain, t: f64) -> f64 {
    t.max(0.0) + 40.0 * domain.characteristic_length()
}

fn run_trajectory(config: &RunConfig, header: &str) -> Result<bool, String> {
    let grid = config.t_grid()?;
    let mut body = String::new();
    writeln!(body, "t,phi0,gap,stderr_gap,method").unwrap();

    match &config.domain {
        Some(DomainSource::Canonical(c)) => {
            for &t in &grid {
                let p = c.gap(t).map_err(|e| e.to_string())?;
                push_trajectory_row(&mut body, &p);
            }
        }
        Some(_) => {
            let domain = load_staircase(config)?;
            let params = wos_params_for(config, &domain);
            for &t in &grid {
                let p = koenigs::semigroup::trajectory_symmetric(&domain, t, &params)
                    .map_err(|e| e.to_string())?;
                push_trajectory_row(&mut body, &p);
            }
        }
        None => return Err("missing --domain".into()),
    }
    config.write_output(&format!("{header}\n{body}"))?;
    Ok(true)
}

fn push_trajectory_row(body: &mut String, p: &TrajectoryPoint) {
    let phi0 = p.phi0.map(|v| v.to_string()).unwrap_or_default();
    writeln!(body, "{},{},{},{},{}", p.t, phi0, p.gap, p.stderr_gap, p.method).unwrap();
}

fn run_verify(config: &RunConfig, header: &str) -> Result<bool, String> {
    let check = config.check.as_deref().ok_or("missing --check")?;
    let reports = collect_reports(config, check)?;
    let all_pass = reports.iter().all(|r| r.all_pass());

    let text = match config.format.as_deref().unwrap_or("json") {
        "json" => {
            let json =
                serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?;
            format!("{header}\n{json}\n")
        }
        "csv" => {
            let mut body = String::new();
            writeln!(body, "fixture,name,lhs,rhs,stderr_lhs,stderr_rhs,margin,pass,tolerance_rule,escalated").unwrap();
            for report in &reports {
                for c in &report.checks {
                    writeln!(
                        body,
                        "{},{},{},{},{},{},{},{},{},{}",
                        csv_quote(&report.fixture),
                        csv_quote(&c.name),
                        c.lhs,
                        c.rhs,
                        c.stderr_lhs,
                        c.stderr_rhs,
                        c.margin,
                        c.pass,
                        csv_quote(&c.tolerance_rule),
                        c.escalated
                    )
                    .unwrap();
                }
            }
            format!("{header}\n{body}")
        }
        other => return Err(format!("unknown format {other}")),
    };
    config.write_output(&text)?;
    Ok(all_pass)
}

fn collect_reports(config: &RunConfig, check: &str) -> Result<Vec<VerificationReport>, String> {
    match check {
        "scalars" => Ok(vec![scalar_suite()]),
        "diam" => Ok(vec![check_diam()]),
        "t1" | "t2" => match &config.domain {
            Some(DomainSource::Canonical(c)) => {
                let grid = config.t_grid()?;
                let tag = config.domain_echo();
                let report = if check == "t1" {
                    canonical_t1_report(c, &tag, &grid)?
                } else {
                    canonical_t2_report(c, &tag, &grid)?
                };
                Ok(vec![report])
            }
            _ => {
                let grid = config.t_grid()?;
                let positive: Vec<f64> = grid.iter().copied().filter(|&t| t > 0.0).collect();
                run_on_fixtures(config, |domain, tag, params| {
                    let r = if check == "t1" {
                        check_symmetrization_chain(domain, tag, &positive, params)
                    } else {
                        check_polarization_slit(domain, tag, &positive, params)
                    };
                    r.map_err(|e| e.to_string())
                })
            }
        },
        "polarization" => {
            let grid = config.t_grid()?;
            let positive: Vec<f64> = grid.iter().copied().filter(|&t| t > 0.0).collect();
            run_on_fixtures(config, |domain, tag, params| {
                check_polarization_slit(domain, tag, &positive, params).map_err(|e| e.to_string())
            })
        }
        "baernstein" => {
            let grid = config.t_grid()?;
            let positive: Vec<f64> = grid.iter().copied().filter(|&t| t > 0.0).collect();
            run_on_fixtures(config, |domain, tag, params| {
                let mut merged = VerificationReport::new(tag, Some(params.into()));
                for &t in &positive {
                    let r = check_baernstein(domain, tag, t, params).map_err(|e| e.to_string())?;
                    merged.checks.extend(r.checks);
                }
                Ok(merged)
            })
        }
        other => Err(format!("unknown check {other}")),
    }
}

fn run_on_fixtures(
    config: &RunConfig,
    run: impl Fn(&StaircaseDomain, &str, &WosParams) -> Result<VerificationReport, String>,
) -> Result<Vec<VerificationReport>, String> {
    match &config.domain {
        Some(DomainSource::Random { seed, count }) => {
            let mut reports = Vec::new();
            for index in 0..*count {
                let domain = koenigs::fixtures::random_domain(*seed, index);
                let tag = domain_to_json(&domain);
                let params = wos_params_for(config, &domain);
                reports.push(run(&domain, &tag, &params)?);
            }
            Ok(reports)
        }
        Some(_) => {
            let domain = load_staircase(config)?;
            let tag = config.domain_echo();
            let params = wos_params_for(config, &domain);
            Ok(vec![run(&domain, &tag, &params)?])
        }
        None => Err("missing --domain".into()),
    }
}

/// Closed-form HEAD report for a canonical domain against its symmetrization.
fn canonical_t1_report(
    c: &CanonicalDomain,
    tag: &str,
    grid: &[f64],
) -> Result<VerificationReport, String> {
    if matches!(c, CanonicalDomain::Quadrant { .. }) {
        // Spelled-out canonical pair suite covers the quadrant and strips.
        return symmetrization_head_canonical(grid)
            .map_err(|e| e.to_string())
            .map(|mut r| {
                r.checks.retain(|rec| rec.name.contains("quadrant"));
                r
            });
    }
    let sharp = canonical_steiner(c);
    let mut report = VerificationReport::new(tag, None);
    for &t in grid {
        let own = c.gap(t).map_err(|e| e.to_string())?;
        let sym = sharp.gap(t).map_err(|e| e.to_string())?;
        report.checks.push(CheckRecord::one_sided_exact(
            format!("HEAD_gap_below_4pi_symmetrized(t={t})"),
            own.gap,
            4.0 * std::f64::consts::PI * sym.gap,
        ));
    }
    Ok(report)
}

fn canonical_t2_report(
    c: &CanonicalDomain,
    tag: &str,
    grid: &[f64],
) -> Result<VerificationReport, String> {
    if matches!(c, CanonicalDomain::Quadrant { .. }) {
        return polarization_head_canonical(grid)
            .map_err(|e| e.to_string())
            .map(|mut r| {
                r.checks.retain(|rec| rec.name.contains("quadrant"));
                r
            });
    }
    let polarized = canonical_polarize(c);
    let mut report = VerificationReport::new(tag, None);
    for &t in grid {
        let own = c.gap(t).map_err(|e| e.to_string())?;
        let pol = polarized.gap(t).map_err(|e| e.to_string())?;
        report.checks.push(CheckRecord::one_sided_exact(
            format!("HEAD_gap_below_2pi_polarized(t={t})"),
            own.gap,
            2.0 * std::f64::consts::PI * pol.gap,
        ));
    }
    Ok(report)
}

fn canonical_steiner(c: &CanonicalDomain) -> CanonicalDomain {
    match *c {
        CanonicalDomain::HalfPlane { d } => CanonicalDomain::HalfPlane { d },
        CanonicalDomain::Strip { a } => CanonicalDomain::Strip { a },
        CanonicalDomain::ShiftedStrip { a, b } => CanonicalDomain::Strip { a: (a + b) / 2.0 },
        CanonicalDomain::Sector { c } => CanonicalDomain::Sector { c },
        CanonicalDomain::Quadrant { .. } => CanonicalDomain::HalfPlane { d: 1.0 },
    }
}

fn canonical_polarize(c: &CanonicalDomain) -> CanonicalDomain {
    match *c {
        CanonicalDomain::ShiftedStrip { a, b } if a > b => CanonicalDomain::ShiftedStrip { a: b, b: a },
        CanonicalDomain::Quadrant { .. } => {
            CanonicalDomain::Quadrant { kind: QuadrantKind::LowerLeftCorner }
        }
        other => other,
    }
}

/// Quotes a CSV field when it contains separators or quotes.
fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn run_gap_curve(config: &RunConfig, header: &str) -> Result<bool, String> {
    let grid = config.t_grid()?;
    let mut body = String::new();
    writeln!(body, "t,gap,stderr_gap,gap_sharp,stderr_sharp,ratio,ratio_upper_3sigma").unwrap();

    let rows: Vec<(TrajectoryPoint, TrajectoryPoint)> = match &config.domain {
        Some(DomainSource::Canonical(c)) => {
            let sharp = canonical_steiner(c);
            grid.iter()
                .map(|&t| -> Result<_, String> {
                    Ok((c.gap(t).map_err(|e| e.to_string())?, sharp.gap(t).map_err(|e| e.to_string())?))
                })
                .collect::<Result<_, _>>()?
        }
        Some(_) => {
            let domain = load_staircase(config)?;
            if !koenigs::transform::is_symmetric(&domain) {
                return Err(
                    "gap curves need a canonical family or a symmetric staircase domain".into()
                );
            }
            let params = wos_params_for(config, &domain);
            grid.iter()
                .map(|&t| {
                    koenigs::verify::gap_pair_symmetric(&domain, t, &params)
                        .map_err(|e| e.to_string())
                })
                .collect::<Result<_, _>>()?
        }
        None => return Err("missing --domain".into()),
    };

    for (own, sym) in rows {
        let ratio = if sym.gap > 0.0 { own.gap / sym.gap } else { f64::NAN };
        let upper = if sym.gap - 3.0 * sym.stderr_gap > 0.0 {
            (own.gap + 3.0 * own.stderr_gap) / (sym.gap - 3.0 * sym.stderr_gap)
        } else {
            f64::NAN
        };
        writeln!(
            body,
            "{},{},{},{},{},{},{}",
            own.t, own.gap, own.stderr_gap, sym.gap, sym.stderr_gap, ratio, upper
        )
        .unwrap();
    }
    config.write_output(&format!("{header}\n{body}"))?;
    Ok(true)
}
