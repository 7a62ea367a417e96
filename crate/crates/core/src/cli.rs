//! Command-line front end.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::Value;

use crate::approx::{continuous_approx_char, dyadic_average, lp_simple_approx, uniform_limit_certificate};
use crate::borel::dyadic_cover;
use crate::config;
use crate::curves::{delta_preimage, delta_separation, Curve, SimpleCurve};
use crate::error::{Error, Result};
use crate::lcs::{SpaceModel, Vector};
use crate::lpnorm::Quadrature;
use crate::numeric::{format_rational, ratio};
use crate::report::{field, quadrature_row, ApproxReport, QUADRATURE_HEADER};

#[derive(Debug, Parser)]
#[command(name = "lusin", version, about = "Lusin certificates, Lᵖ approximation and pathology reports for curves in locally convex spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// JSON config file, or `-` for stdin.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output file for the CSV (default stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    /// Seed for sampled corpora.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Truncation depth of the uniform-limit pipeline.
    #[arg(long, global = true, default_value_t = 20)]
    pub depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Hat-path Lᵖ rates, delta-path separation and preimages.
    Pathology,
    /// Dyadic-averaging convergence table.
    Dyadic,
    /// Simple-function Lᵖ density driver.
    Density,
    /// Urysohn approximation of an indicator curve.
    Urysohn,
    /// Dyadic cover of an interval set.
    Cover,
    /// Quadrature of curve seminorms with inequality checks.
    Integrate,
    /// Uniform-Cauchy limit pipeline.
    Limit,
}

/// CSV text, a human summary, and whether every pass flag held.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub csv: String,
    pub summary: String,
    pub pass: bool,
}

impl Outcome {
    fn from_report(name: &str, report: ApproxReport) -> Self {
        let failed = report.rows.iter().filter(|r| !r.pass).count();
        let mut summary = format!("{name}: {} rows, {failed} failed", report.rows.len());
        if let Some(r) = report.first_failure() {
            summary.push_str(&format!("\nfirst failure: {}", r.csv()));
        }
        Self {
            csv: report.to_csv(),
            summary,
            pass: failed == 0,
        }
    }
}

/// Exit status: 0 pass, 1 verification or computation failure, 2 usage or
/// config error.
pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(o) if o.pass => 0,
        Ok(_) => 1,
        Err(Error::Config(_)) => 2,
        Err(_) => 1,
    }
}

/// Reads the config named by `--config`. Without the flag, `pathology` runs
/// on defaults and the other commands read stdin.
pub fn load_config(cli: &Cli, stdin: &mut dyn Read) -> Result<Value> {
    let text = match &cli.config {
        Some(p) if p.as_os_str() == "-" => read_all(stdin)?,
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?,
        None if cli.command == Command::Pathology => return Ok(Value::Null),
        None => read_all(stdin)?,
    };
    config::parse_document(&text)
}

fn read_all(r: &mut dyn Read) -> Result<String> {
    let mut s = String::new();
    r.read_to_string(&mut s)
        .map_err(|e| Error::Config(format!("cannot read stdin: {e}")))?;
    Ok(s)
}

pub fn run(cli: &Cli, cfg: &Value) -> Result<Outcome> {
    let quad = Quadrature::new(cli.tol).map_err(|e| Error::Config(e.to_string()))?;
    match cli.command {
        Command::Pathology => pathology(cfg, &quad, cli.seed),
        Command::Dyadic => dyadic(cfg, &quad),
        Command::Density => density(cfg, &quad),
        Command::Urysohn => urysohn(cfg, &quad),
        Command::Cover => cover(cfg),
        Command::Integrate => integrate(cfg, &quad),
        Command::Limit => limit(cfg, cli.depth),
    }
}

fn get<'a>(cfg: &'a Value, key: &str) -> Option<&'a Value> {
    cfg.get(key).filter(|v| !v.is_null())
}

fn need<'a>(cfg: &'a Value, key: &str) -> Result<&'a Value> {
    get(cfg, key).ok_or_else(|| Error::Config(format!("missing field {key:?}")))
}

fn reals_or(cfg: &Value, key: &str, default: &[f64]) -> Result<Vec<f64>> {
    match get(cfg, key) {
        Some(Value::Array(_)) => config::reals(&cfg[key], key),
        Some(v) => Ok(vec![config::real(v)?]),
        None => Ok(default.to_vec()),
    }
}

fn space_of(cfg: &Value) -> Result<SpaceModel> {
    config::space(need(cfg, "space")?)
}

fn pathology(cfg: &Value, quad: &Quadrature, seed: u64) -> Result<Outcome> {
    let ns: Vec<u64> = match get(cfg, "ns") {
        Some(v) => config::uint_range(v, "ns")?,
        None => vec![1, 2, 5, 10, 20, 50, 100, 200, 512],
    };
    if ns.contains(&0) {
        return Err(Error::Config("ns must be positive".into()));
    }
    let xs = reals_or(cfg, "xs", &(1..=9).map(|i| i as f64 / 10.0).collect::<Vec<_>>())?;
    let ps = reals_or(cfg, "ps", &[1.0, 2.0, 3.0])?;
    if ps.iter().any(|p| *p < 1.0) || xs.iter().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(Error::Config("need p ≥ 1 and x in [0,1]".into()));
    }

    let triples: Vec<(u64, f64, f64)> = ns
        .iter()
        .flat_map(|&n| {
            let ps = &ps;
            xs.iter().flat_map(move |&x| ps.iter().map(move |&p| (n, x, p)))
        })
        .collect();
    let rows = triples
        .par_iter()
        .map(|&(n, x, p)| {
            let space = SpaceModel::pointwise(vec![x])?;
            let r = quad.lp_integral(&space, &Curve::HatPath(n as u32), 0, p)?;
            Ok((n, x, p, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ApproxReport::new();
    for (n, x, p, r) in rows {
        let nf = n as f64;
        let bound = 2.0 / nf;
        let interior = x - 1.0 / nf >= 0.0 && x + 1.0 / nf <= 1.0;
        let rate_ok = !interior || (r.value - 2.0 / (nf * (p + 1.0))).abs() <= 1e-8;
        let pass = r.value <= bound + r.abs_error_bound && rate_ok;
        report.push("hat_rate", format!("x={x}"), Some(p), format!("n={n}"), bound, r.value, pass);
    }

    let points = match get(cfg, "separation") {
        Some(v) => config::reals(v, "separation")?,
        None => {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut pts: Vec<f64> = vec![0.2, 0.3];
            while pts.len() < 5 {
                let s = rng.gen_range(0..=100) as f64 / 100.0;
                if !pts.contains(&s) {
                    pts.push(s);
                }
            }
            pts
        }
    };
    for &s in &points {
        for &t in &points {
            if s != t {
                let d = delta_separation(s, t)?;
                report.push("delta_separation", format!("x={s}"), None, format!("s={s};s'={t}"), 1.0, d, d == 1.0);
            }
        }
    }

    let constraints: Vec<Vec<(f64, (f64, f64))>> = match get(cfg, "preimage") {
        Some(v) => config::list(v, "preimage")?
            .iter()
            .map(|group| {
                config::list(group, "preimage group")?
                    .iter()
                    .map(|c| {
                        let x = config::real(need(c, "x")?)?;
                        let u = config::reals(need(c, "U")?, "U")?;
                        match u.as_slice() {
                            [lo, hi] if lo < hi => Ok((x, (*lo, *hi))),
                            _ => Err(Error::Config("U: expected [lo, hi] with lo < hi".into())),
                        }
                    })
                    .collect()
            })
            .collect::<Result<_>>()?,
        None => {
            let hits_one = (0.5, 2.0);
            let misses_one = (-0.5, 0.5);
            let mut groups: Vec<Vec<(f64, (f64, f64))>> = points
                .iter()
                .flat_map(|&x| [vec![(x, hits_one)], vec![(x, misses_one)]])
                .collect();
            groups.push(points.iter().map(|&x| (x, misses_one)).collect());
            groups
        }
    };
    for group in constraints {
        let pre = delta_preimage(&group);
        let label = group
            .iter()
            .map(|(x, (lo, hi))| format!("x={x} in ({lo} {hi})"))
            .collect::<Vec<_>>()
            .join(" & ");
        let m = pre.measure();
        report.push("delta_preimage", "", None, format!("{label} -> {}", pre.label()), 1.0, m, m == 0.0 || m == 1.0);
    }
    Ok(Outcome::from_report("pathology", report))
}

fn curve_of(cfg: &Value, space: &SpaceModel) -> Result<Curve> {
    config::curve(need(cfg, "curve")?, space)
}

fn dyadic(cfg: &Value, quad: &Quadrature) -> Result<Outcome> {
    let space = space_of(cfg)?;
    let curve = curve_of(cfg, &space)?;
    let levels: Vec<u64> = match get(cfg, "levels") {
        Some(v) => config::uint_range(v, "levels")?,
        None => (0..=8).collect(),
    };
    if levels.iter().any(|l| *l > 20) {
        return Err(Error::Config("levels above 20 are not supported".into()));
    }
    let ps = reals_or(cfg, "ps", &[1.0])?;
    let averages = levels
        .iter()
        .map(|&n| dyadic_average(&space, &curve, n as u32, quad).map(Curve::Simple))
        .collect::<Result<Vec<_>>>()?;

    let mut csv = String::from("level,seminorm,p,error,error_bound,ratio,bound,pass\n");
    let mut pass = true;
    let mut rows = 0;
    let mut failed = Vec::new();
    for &q in space.active() {
        let lip = curve.lipschitz(&space, q);
        for &p in &ps {
            let errs = averages
                .iter()
                .map(|a| quad.lp_seminorm(&space, &curve.sub(a), q, p))
                .collect::<Result<Vec<_>>>()?;
            for (i, (&n, e)) in levels.iter().zip(&errs).enumerate() {
                let ratio = errs
                    .get(i + 1)
                    .filter(|next| next.value > 0.0)
                    .map(|next| (e.value / next.value).to_string())
                    .unwrap_or_default();
                let bound = lip.map(|l| l * 0.5f64.powi(n as i32));
                let slack = e.abs_error_bound + 1e-12;
                let within = bound.is_none_or(|b| e.value <= b + slack);
                let monotone = i == 0
                    || levels[i - 1] > n
                    || e.value <= errs[i - 1].value + slack + errs[i - 1].abs_error_bound;
                let ok = within && monotone;
                csv.push_str(&format!(
                    "{n},{},{p},{},{},{ratio},{},{ok}\n",
                    field(&space.seminorm_label(q)),
                    e.value,
                    e.abs_error_bound,
                    bound.map(|b| b.to_string()).unwrap_or_default()
                ));
                rows += 1;
                if !ok {
                    pass = false;
                    failed.push(format!("level {n}, {}, p={p}", space.seminorm_label(q)));
                }
            }
        }
    }
    let mut summary = format!("dyadic: {rows} rows, {} failed", failed.len());
    if let Some(f) = failed.first() {
        summary.push_str(&format!("\nfirst failure: {f}"));
    }
    Ok(Outcome { csv, summary, pass })
}

fn density(cfg: &Value, quad: &Quadrature) -> Result<Outcome> {
    let space = space_of(cfg)?;
    let curve = curve_of(cfg, &space)?;
    let eps = reals_or(cfg, "eps", &[0.1, 0.01])?;
    let p = match get(cfg, "p") {
        Some(v) => config::real(v)?,
        None => 1.0,
    };
    let mut report = ApproxReport::new();
    for &q in space.active() {
        for &e in &eps {
            let (_, r) = lp_simple_approx(&space, &curve, q, p, e, quad)?;
            report.extend(r);
        }
    }
    Ok(Outcome::from_report("density", report))
}

fn urysohn(cfg: &Value, quad: &Quadrature) -> Result<Outcome> {
    let set = config::interval_set(need(cfg, "set")?)?;
    let (space, y0) = match get(cfg, "space") {
        Some(s) => (config::space(s)?, config::vector(need(cfg, "y0")?)?),
        None => {
            let y0 = match get(cfg, "y0") {
                Some(v) => config::vector(v)?,
                None => Vector::coords(vec![1.0]),
            };
            let Vector::Coords(c) = &y0 else {
                return Err(Error::Config("a pointwise y0 needs an explicit space".into()));
            };
            let dim = c.len();
            (SpaceModel::coordinates(dim)?, y0)
        }
    };
    let ns: Vec<u64> = match get(cfg, "ns") {
        Some(v) => config::uint_range(v, "ns")?,
        None => (0..=6).map(|k| 1 << k).collect(),
    };
    if ns.contains(&0) {
        return Err(Error::Config("ns must be positive".into()));
    }
    let ps = reals_or(cfg, "ps", &[1.0])?;
    let mut report = ApproxReport::new();
    for &p in &ps {
        for &n in &ns {
            let (_, r) = continuous_approx_char(&space, &y0, &set, n as u32, p, quad)?;
            report.extend(r);
        }
    }
    Ok(Outcome::from_report("urysohn", report))
}

fn cover(cfg: &Value) -> Result<Outcome> {
    let set_value = need(cfg, "set")?;
    let set = config::interval_set(set_value)?;
    let eps = match need(cfg, "eps")? {
        Value::Array(a) => a.iter().map(config::rational).collect::<Result<Vec<_>>>()?,
        v => vec![config::rational(v)?],
    };
    let mut csv = String::from("set,eps,level,cells,symm_diff,pass\n");
    let mut pass = true;
    for e in &eps {
        let c = dyadic_cover(&set, e).map_err(|err| Error::Config(err.to_string()))?;
        let ok = c.symm_diff_measure() < e;
        pass &= ok;
        csv.push_str(&format!(
            "{},{},{},{},{},{ok}\n",
            field(&set.to_string()),
            format_rational(e),
            c.level(),
            field(&c.ranges_label()),
            format_rational(c.symm_diff_measure())
        ));
    }
    let summary = format!("cover: {} rows, {}", eps.len(), if pass { "all pass" } else { "some failed" });
    Ok(Outcome { csv, summary, pass })
}

fn integrate(cfg: &Value, quad: &Quadrature) -> Result<Outcome> {
    let space = space_of(cfg)?;
    let named: Vec<(String, Curve)> = match get(cfg, "curves") {
        Some(v) => config::list(v, "curves")?
            .iter()
            .enumerate()
            .map(|(i, entry)| {
                let c = config::curve(need(entry, "curve")?, &space)?;
                let name = entry
                    .get("name")
                    .and_then(Value::as_str)
                    .map(str::to_string)
                    .unwrap_or_else(|| format!("{}{i}", c.kind_name()));
                Ok((name, c))
            })
            .collect::<Result<_>>()?,
        None => {
            let c = curve_of(cfg, &space)?;
            vec![(c.kind_name().to_string(), c)]
        }
    };
    let mut ps = reals_or(cfg, "ps", &[1.0, 2.0])?;
    ps.sort_by(f64::total_cmp);
    let mut csv = format!("{QUADRATURE_HEADER}\n");
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, curve) in &named {
        for &q in space.active() {
            let label = space.seminorm_label(q);
            for &p in &ps {
                let r = quad.lp_seminorm(&space, curve, q, p)?;
                csv.push_str(&quadrature_row(name, &label, p, &r));
                csv.push('\n');
            }
            let hb = quad.hb_inequality_check(&space, curve, q)?;
            pass &= hb.pass;
            notes.push(format!(
                "{name} {label}: q(∫γ) = {} ≤ ∫q(γ) = {} [{}]",
                hb.lhs,
                hb.rhs,
                if hb.pass { "pass" } else { "FAIL" }
            ));
            for w in ps.windows(2) {
                let m = quad.p_monotonicity_check(&space, curve, q, w[0], w[1])?;
                pass &= m.pass;
                notes.push(format!(
                    "{name} {label}: ‖γ‖_{} = {} ≤ ‖γ‖_{} = {} [{}]",
                    w[0],
                    m.lp,
                    w[1],
                    m.lr,
                    if m.pass { "pass" } else { "FAIL" }
                ));
            }
        }
    }
    Ok(Outcome {
        csv,
        summary: notes.join("\n"),
        pass,
    })
}

/// `β_i = Σ_j Hat(c_j, n_i) χ_{I_j}` on `cells` uniform cells with left
/// endpoints `c_j`.
pub fn hat_discretization(ns: &[u32], cells: u32) -> Result<Vec<SimpleCurve>> {
    if cells == 0 || ns.contains(&0) {
        return Err(Error::Config("hat discretization needs positive ns and cells".into()));
    }
    let m = cells as i64;
    ns.iter()
        .map(|&n| {
            let pieces = (0..m)
                .map(|j| {
                    let c = j as f64 / m as f64;
                    let set = crate::borel::IntervalSet::interval(ratio(j, m), ratio(j + 1, m))?;
                    Ok((Vector::hat(c, n as f64)?, set))
                })
                .collect::<Result<Vec<_>>>()?;
            SimpleCurve::new(Vector::zero_pointwise(), pieces, vec![])
        })
        .collect()
}

fn limit(cfg: &Value, depth: usize) -> Result<Outcome> {
    let seq_cfg = need(cfg, "sequence")?;
    let (space, seq) = if let Some(h) = get(seq_cfg, "hat_discretization") {
        let ns: Vec<u32> = config::uint_range(need(h, "ns")?, "ns")?
            .into_iter()
            .map(|n| n.min(u32::MAX as u64) as u32)
            .collect();
        let cells = config::uint(need(h, "cells")?)?.min(1 << 16) as u32;
        let x = config::real(need(h, "x")?)?;
        let space = match get(cfg, "space") {
            Some(s) => config::space(s)?,
            None => SpaceModel::pointwise(vec![x])?,
        };
        (space, hat_discretization(&ns, cells)?)
    } else if let Some(list) = get(seq_cfg, "explicit") {
        let space = space_of(cfg)?;
        let seq = config::list(list, "explicit")?
            .iter()
            .map(|c| match config::curve(c, &space)? {
                Curve::Simple(s) => Ok(s),
                other => Err(Error::Config(format!("sequence members must be simple, got {}", other.kind_name()))),
            })
            .collect::<Result<Vec<_>>>()?;
        (space, seq)
    } else {
        return Err(Error::Config("sequence: expected hat_discretization or explicit".into()));
    };
    let schedule = reals_or(cfg, "schedule", &[0.25])?;
    match uniform_limit_certificate(&space, &seq, &schedule, depth) {
        Ok(out) => Ok(Outcome::from_report("limit", out.report)),
        Err(Error::CauchyFailure { level, m, n, t, gap, eps }) => {
            let mut report = ApproxReport::new();
            report.push(
                "uniform_limit_certificate",
                "max",
                None,
                format!("k={level};m={m};n={n};t={t}"),
                eps,
                gap,
                false,
            );
            let mut o = Outcome::from_report("limit", report);
            o.summary.push_str(&format!(
                "\ngap witness: level {level}, q(beta_{m} - beta_{n})({t}) = {gap} ≥ {eps}"
            ));
            Ok(o)
        }
        Err(e) => Err(e),
    }
}
