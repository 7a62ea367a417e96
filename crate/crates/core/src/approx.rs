//! Approximation drivers: simple approximation on Lusin compacts, Lᵖ
//! density, the Urysohn ramp, dyadic averaging and uniform-Cauchy limits.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::borel::{inner_compact, outer_open, CompactSet, IntervalSet};
use crate::curves::{
    certify_restriction, intersect_certificates, lusin_certificate, Curve, Evaluator, Evidence,
    LusinCertificate, PiecewiseContinuous, SimpleCurve,
};
use crate::error::{Error, Result};
use crate::lcs::{SpaceModel, Vector};
use crate::lpnorm::{dyadic_cell, Quadrature};
use crate::numeric::{format_rational, from_f64, int, one, ratio, to_f64, zero, Rational};
use crate::report::ApproxReport;

const MAX_CELLS: u64 = 1 << 22;

fn require_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::invalid(format!("tolerance must be positive, got {eps}")));
    }
    Ok(())
}

/// A radius `δ` such that `|s - t| < δ` forces `q(γ(s) - γ(t)) < eps` for
/// `s, t` in the same partition cell of `K`.
fn select_radius(
    space: &SpaceModel,
    curve: &Curve,
    cert: &LusinCertificate,
    q: usize,
    eps: f64,
) -> Result<f64> {
    if let Some(l) = curve.lipschitz(space, q) {
        return Ok(if l > 0.0 { eps / l } else { 1.0 });
    }
    if let (Curve::Simple(s), Evidence::Exact) = (curve, cert.evidence()) {
        if s.is_locally_constant_on(cert.compact()) {
            return Ok(cert.compact().min_gap().map_or(1.0, |g| to_f64(&g)));
        }
    }
    cert.table(q)
        .and_then(|t| t.radius_for(eps))
        .ok_or(Error::NoModulus { eps })
}

/// `β = Σ γ(s_i) χ_{[t_{i-1}, t_i) ∩ K} + γ(1) χ_{1}` on a uniform
/// partition of mesh `δ/2` refined at the curve's breakpoints, with `s_i` the
/// leftmost point of the cell inside `K`. The report holds the sup of
/// `q(γ - β)` over a verification grid on `K`, which must stay below `eps`.
pub fn uniform_simple_approx(
    space: &SpaceModel,
    curve: &Curve,
    cert: &LusinCertificate,
    q: usize,
    eps: f64,
) -> Result<(SimpleCurve, ApproxReport)> {
    require_eps(eps)?;
    curve.check_space(space)?;
    let seminorm = space.seminorm(q)?.clone();
    let delta = select_radius(space, curve, cert, q, eps)?;
    let n = (2.0 / delta).ceil();
    if !(n <= MAX_CELLS as f64) {
        return Err(Error::invalid(format!(
            "partition of mesh {} needs more than {MAX_CELLS} cells",
            delta / 2.0
        )));
    }
    let n = (n as i64).max(1);
    let mut cuts: BTreeSet<Rational> = (0..=n).map(|k| ratio(k, n)).collect();
    for b in curve.breakpoints() {
        cuts.insert(from_f64(b)?);
    }
    let cuts: Vec<Rational> = cuts.into_iter().collect();

    let compact = cert.compact().pieces();
    let mut pieces: Vec<(Vector, IntervalSet)> = Vec::new();
    let mut atoms: Vec<(Rational, Vector)> = Vec::new();
    let mut sup: f64 = 0.0;
    let mut j = 0;
    for w in cuts.windows(2) {
        let (l, r) = (&w[0], &w[1]);
        while j < compact.len() && compact[j].1 < *l {
            j += 1;
        }
        let hits: Vec<&(Rational, Rational)> =
            compact[j..].iter().take_while(|(a, _)| a < r).collect();
        let Some(first) = hits.first() else { continue };
        let s = first.0.clone().max(l.clone());
        let y = curve.eval(&s)?;
        let mut cell_pieces = Vec::new();
        for (a, b) in hits {
            let lo = a.clone().max(l.clone());
            let closed = b < r;
            let hi = if closed { b.clone() } else { r.clone() };
            for k in 0..=4 {
                if k == 4 && !closed {
                    break;
                }
                let t = &lo + (&hi - &lo) * ratio(k, 4);
                let d = seminorm.eval(&curve.eval(&t)?.sub(&y)?)?;
                sup = sup.max(d);
            }
            if closed {
                atoms.push((hi.clone(), y.clone()));
            }
            cell_pieces.push((lo, hi));
        }
        pieces.push((y, IntervalSet::from_pieces(cell_pieces)?));
    }
    atoms.push((one(), curve.eval(&one())?));
    let beta = SimpleCurve::new(space.zero(), pieces, atoms)?;
    let mut report = ApproxReport::new();
    report.push(
        "uniform_simple_approx",
        space.seminorm_label(q),
        None,
        format!("eps={eps}"),
        eps,
        sup,
        sup < eps,
    );
    Ok((beta, report))
}

/// A simple `β` with `‖γ - β‖_{Lᵖ,q} < eps`, checked by quadrature.
///
/// The budget splits as `εᵖ/2` for the complement of a Lusin compact `K`
/// (where `β = 0`), chosen through [`Quadrature::abs_continuity_delta`], and
/// `εᵖ/2` for `K`, where `β` approximates uniformly within `ε/2^{1/p}`.
pub fn lp_simple_approx(
    space: &SpaceModel,
    curve: &Curve,
    q: usize,
    p: f64,
    eps: f64,
    quad: &Quadrature,
) -> Result<(SimpleCurve, ApproxReport)> {
    require_eps(eps)?;
    let label = space.seminorm_label(q);
    let mut report = ApproxReport::new();
    if let Curve::Simple(s) = curve {
        space.seminorm(q)?;
        curve.check_space(space)?;
        report.push("lp_simple_approx", label, Some(p), format!("eps={eps}"), eps, 0.0, true);
        return Ok((s.clone(), report));
    }
    let budget = eps.powf(p) / 2.0;
    let delta = quad.abs_continuity_delta(space, curve, q, p, budget)?;
    let mut cert = lusin_certificate(curve, &from_f64(delta)?)?;
    let uniform_eps = eps / 2f64.powf(1.0 / p);
    if curve.lipschitz(space, q).is_none() && *cert.evidence() != Evidence::Exact {
        certify_until(space, curve, &mut cert, q, uniform_eps)?;
    }
    let (beta, inner) = uniform_simple_approx(space, curve, &cert, q, uniform_eps)?;
    report.extend(inner);
    let diff = curve.sub(&Curve::Simple(beta.clone()));
    let dist = quad.lp_seminorm(space, &diff, q, p)?;
    let measured = dist.value + dist.abs_error_bound;
    report.push("lp_simple_approx", label, Some(p), format!("eps={eps}"), eps, measured, measured < eps);
    Ok((beta, report))
}

/// Refines the verification grid until the modulus table yields a radius
/// for `eps`.
fn certify_until(
    space: &SpaceModel,
    curve: &Curve,
    cert: &mut LusinCertificate,
    q: usize,
    eps: f64,
) -> Result<()> {
    for k in 6..=13 {
        let table = certify_restriction(space, curve, cert, q, &ratio(1, 1 << k))?;
        if table.radius_for(eps).is_some() {
            return Ok(());
        }
    }
    Err(Error::NoModulus { eps })
}

/// Piecewise-linear real function given by knots, constant outside them.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinear {
    knots: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        self.knots.iter().map(|(t, _)| *t).collect()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let k = &self.knots;
        if k.is_empty() {
            return 0.0;
        }
        let i = k.partition_point(|(x, _)| *x <= t);
        if i == 0 {
            return k[0].1;
        }
        if i == k.len() {
            return k[k.len() - 1].1;
        }
        let ((x0, y0), (x1, y1)) = (k[i - 1], k[i]);
        y0 + (y1 - y0) * (t - x0) / (x1 - x0)
    }

    pub fn max_slope(&self) -> f64 {
        self.knots
            .windows(2)
            .map(|w| ((w[1].1 - w[0].1) / (w[1].0 - w[0].0)).abs())
            .fold(0.0, f64::max)
    }
}

/// `χ_K ≤ f ≤ χ_U`: `f = 1` from the first to the last piece of `K` inside
/// each component of `U`, with linear ramps down to 0 at the component's
/// ends. Margins at the ends of `[0,1]` are waived.
pub fn urysohn_1d(compact: &CompactSet, open: &IntervalSet) -> Result<PiecewiseLinear> {
    let mut hull: BTreeMap<usize, (Rational, Rational)> = BTreeMap::new();
    for (a, b) in compact.pieces() {
        let idx = open
            .pieces()
            .iter()
            .position(|(u, v)| u <= a && (b < v || (*b == one() && *v == one())))
            .ok_or_else(|| {
                Error::invalid(format!(
                    "[{}, {}] is not inside one component of U",
                    format_rational(a),
                    format_rational(b)
                ))
            })?;
        let (u, v) = &open.pieces()[idx];
        if (a == u && *u != zero()) || (b == v && *v != one()) {
            return Err(Error::invalid("zero margin between K and the complement of U"));
        }
        let e = hull.entry(idx).or_insert_with(|| (a.clone(), b.clone()));
        e.1 = b.clone();
    }
    let mut knots: Vec<(f64, f64)> = Vec::new();
    for (idx, (a, b)) in hull {
        let (u, v) = &open.pieces()[idx];
        if a > *u {
            knots.push((to_f64(u), 0.0));
        }
        knots.push((to_f64(&a), 1.0));
        knots.push((to_f64(&b), 1.0));
        if b < *v {
            knots.push((to_f64(v), 0.0));
        }
    }
    knots.dedup();
    Ok(PiecewiseLinear { knots })
}

/// `α_n = f_n · y₀` for `f_n = urysohn_1d(K_n, U_n)` with `K_n` and `U_n`
/// within `1/(2n)` of `A`. The report checks
/// `‖α_n - y₀χ_A‖ᵖ ≤ q(y₀)ᵖ/n` by quadrature for every active `q`.
pub fn continuous_approx_char(
    space: &SpaceModel,
    y0: &Vector,
    set: &IntervalSet,
    n: u32,
    p: f64,
    quad: &Quadrature,
) -> Result<(Curve, ApproxReport)> {
    if n == 0 {
        return Err(Error::invalid("n must be a positive integer"));
    }
    space.check(y0)?;
    let budget = ratio(1, 2 * n as i64);
    let f = urysohn_1d(&inner_compact(set, &budget)?, &outer_open(set, &budget)?)?;
    let alpha = ramp_curve(space, y0, f)?;
    let target = Curve::Simple(SimpleCurve::new(space.zero(), vec![(y0.clone(), set.clone())], vec![])?);
    let diff = alpha.sub(&target);
    let mut report = ApproxReport::new();
    for &q in space.active() {
        let r = quad.lp_integral(space, &diff, q, p)?;
        let bound = space.seminorm_eval(q, y0)?.powf(p) / n as f64;
        let measured = r.value;
        report.push(
            "continuous_approx_char",
            space.seminorm_label(q),
            Some(p),
            format!("n={n}"),
            bound,
            measured,
            measured <= bound + r.abs_error_bound + 1e-12,
        );
    }
    Ok((alpha, report))
}

fn ramp_curve(space: &SpaceModel, y0: &Vector, f: PiecewiseLinear) -> Result<Curve> {
    let slope = f.max_slope();
    let lip = space
        .active()
        .iter()
        .map(|&q| Ok((q, space.seminorm_eval(q, y0)? * slope)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let breaks = f.breakpoints();
    let y = y0.clone();
    let eval: Evaluator = Arc::new(move |t| y.scale(f.eval(t)));
    Ok(Curve::PiecewiseContinuous(PiecewiseContinuous::new("urysohn", eval, breaks, lip, true)?))
}

/// `γ_n = Σ_j (2ⁿ ∫_{I_j} γ) χ_{I_j}` over the level-`n` dyadic cells.
pub fn dyadic_average(space: &SpaceModel, curve: &Curve, level: u32, quad: &Quadrature) -> Result<SimpleCurve> {
    if level > 20 {
        return Err(Error::invalid(format!("dyadic level {level} exceeds 20")));
    }
    curve.check_space(space)?;
    let scale = (1u64 << level) as f64;
    let values: Vec<Result<(Vector, IntervalSet)>> = (0..1u64 << level)
        .into_par_iter()
        .map(|k| {
            let cell = dyadic_cell(k, level);
            let (z, _) = quad
                .weak_integral(space, curve, &cell)
                .map_err(|e| Error::Cell { cell: k, source: Box::new(e) })?;
            Ok((z.scale(scale), cell))
        })
        .collect();
    let pieces = values.into_iter().collect::<Result<Vec<_>>>()?;
    SimpleCurve::new(space.zero(), pieces, vec![])
}

/// One level of the uniform-Cauchy check.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelCheck {
    pub level: usize,
    pub eps: f64,
    /// First index from which all pairs stay below `eps` on `H_k`.
    pub start: usize,
    /// Largest `q(β_m - β_n)` over `H_k` for `m, n ≥ start`.
    pub sup: f64,
    pub missing: Rational,
}

#[derive(Clone, Debug)]
pub struct LimitOutcome {
    pub limit: SimpleCurve,
    pub certificate: LusinCertificate,
    pub levels: Vec<LevelCheck>,
    pub report: ApproxReport,
}

/// Points of `H` at which every member's value is read: the left end of
/// each piece and every member breakpoint inside it. Members are constant
/// between consecutive breakpoints, so sups over these points are exact.
fn check_points(compact: &CompactSet, breaks: &[Rational]) -> Vec<Rational> {
    let mut pts = Vec::new();
    for (a, b) in compact.pieces() {
        pts.push(a.clone());
        let start = breaks.partition_point(|e| e <= a);
        pts.extend(breaks[start..].iter().take_while(|e| *e <= b).cloned());
    }
    pts
}

/// Checks the uniform-Cauchy hypothesis level by level and returns the
/// truncated limit `β_{N_K}` on `H_K` for `K = depth`.
///
/// At level `k`, `H_k` intersects the members' certificates with budgets
/// summing to `1/k`, `ε_k` is `schedule[min(k, len) - 1]`, and `N_k` is the
/// smallest index with `q(β_m - β_n) < ε_k` on `H_k` for all `m ≠ n ≥ N_k`
/// and every active `q`. At least two members must remain past `N_k`.
pub fn uniform_limit_certificate(
    space: &SpaceModel,
    seq: &[SimpleCurve],
    schedule: &[f64],
    depth: usize,
) -> Result<LimitOutcome> {
    if seq.len() < 2 {
        return Err(Error::invalid("need at least two sequence members"));
    }
    if schedule.is_empty() || schedule.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::invalid("tolerance schedule must be nonempty and positive"));
    }
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    for s in seq {
        space.check(s.zero_vector())?;
    }
    let curves: Vec<Curve> = seq.iter().cloned().map(Curve::Simple).collect();
    let breaks: Vec<Rational> = seq
        .iter()
        .flat_map(|s| s.breakpoints())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let len = seq.len();
    let mut levels = Vec::with_capacity(depth);
    let mut report = ApproxReport::new();
    let mut last: Option<(usize, LusinCertificate)> = None;
    for k in 1..=depth {
        let mut budget = ratio(1, k as i64);
        let certs = curves
            .iter()
            .map(|c| {
                budget /= int(2);
                lusin_certificate(c, &budget)
            })
            .collect::<Result<Vec<_>>>()?;
        let h = intersect_certificates(&certs)?;
        let eps = schedule[k.min(schedule.len()) - 1];
        let pts = check_points(h.compact(), &breaks);

        // sup over H_k of the worst active seminorm, per pair, with witness
        let mut gap = vec![vec![(0.0f64, 0.0f64); len]; len];
        for (m, bm) in seq.iter().enumerate() {
            for (n, bn) in seq.iter().enumerate().skip(m + 1) {
                let mut worst = (0.0, 0.0);
                for t in &pts {
                    let d = bm.value_at(t).sub(bn.value_at(t))?;
                    for &q in space.active() {
                        let v = space.seminorm_eval(q, &d)?;
                        if v > worst.0 {
                            worst = (v, to_f64(t));
                        }
                    }
                }
                gap[m][n] = worst;
            }
        }
        let tail_sup = |from: usize| -> (f64, usize, usize, f64) {
            let mut best = (0.0, from, from + 1, 0.0);
            for m in from..len {
                for n in m + 1..len {
                    if gap[m][n].0 > best.0 {
                        best = (gap[m][n].0, m, n, gap[m][n].1);
                    }
                }
            }
            best
        };
        let Some(start) = (0..len - 1).find(|&from| tail_sup(from).0 < eps) else {
            let (g, m, n, t) = tail_sup(len - 2);
            return Err(Error::CauchyFailure { level: k, m, n, t, gap: g, eps });
        };
        let sup = tail_sup(start).0;
        report.push(
            "uniform_limit_certificate",
            "max",
            None,
            format!("k={k};N={start}"),
            eps,
            sup,
            true,
        );
        levels.push(LevelCheck {
            level: k,
            eps,
            start,
            sup,
            missing: h.missing_measure(),
        });
        last = Some((start, h));
    }
    let (start, h) = last.expect("depth ≥ 1");
    let limit = seq[start].restrict_to(h.compact())?;
    let certificate = LusinCertificate::new(h.compact().clone(), ratio(1, depth as i64), Evidence::Exact)?;
    debug_assert!(limit.is_locally_constant_on(certificate.compact()));
    let missing = to_f64(&certificate.missing_measure());
    report.push(
        "uniform_limit_certificate",
        "",
        None,
        format!("depth={depth}"),
        1.0 / depth as f64,
        missing,
        missing < 1.0 / depth as f64,
    );
    Ok(LimitOutcome {
        limit,
        certificate,
        levels,
        report,
    })
}
