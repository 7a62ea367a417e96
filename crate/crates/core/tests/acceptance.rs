//! Acceptance gate: ten criteria, each printed as one PASS/FAIL line.

mod common;

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use lusin::approx::{continuous_approx_char, dyadic_average, lp_simple_approx};
use lusin::borel::{dyadic_cover, CompactSet, IntervalSet};
use lusin::config;
use lusin::curves::{
    certify_restriction, char_certificate, delta_separation, hat_cauchy_gap, intersect_certificates,
    Curve, Evidence, LusinCertificate,
};
use lusin::lcs::{SpaceModel, Vector};
use lusin::lpnorm::Quadrature;
use lusin::numeric::{from_f64, int, ratio, to_f64, Rational};
use num::{ToPrimitive, Zero};
use rand::Rng;
use serde_json::json;

type Outcome = std::result::Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `∫_0^1 max(1 - n|x - t|, 0)^p dt`, clipped at the ends of `[0,1]`.
fn hat_power_oracle(n: f64, x: f64, p: f64) -> f64 {
    let left = 1.0 - (1.0 - (n * x).min(1.0)).powf(p + 1.0);
    let right = 1.0 - (1.0 - (n * (1.0 - x)).min(1.0)).powf(p + 1.0);
    (left + right) / (n * (p + 1.0))
}

fn criterion_1() -> Outcome {
    let quad = Quadrature::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 1..=512u32 {
        for i in 1..=9 {
            let x = i as f64 / 10.0;
            let space = SpaceModel::pointwise(vec![x]).unwrap();
            for p in [1.0, 2.0, 3.0] {
                let v = quad.lp_integral(&space, &Curve::HatPath(n), 0, p).map_err(|e| e.to_string())?.value;
                let nf = n as f64;
                let oracle = hat_power_oracle(nf, x, p);
                worst = worst.max((v - oracle).abs());
                check((v - oracle).abs() <= 1e-8, || format!("n={n} x={x} p={p}: {v} vs {oracle}"))?;
                if x - 1.0 / nf >= 0.0 && x + 1.0 / nf <= 1.0 {
                    let rate = 2.0 / (nf * (p + 1.0));
                    check((v - rate).abs() <= 1e-8, || format!("n={n} x={x} p={p}: {v} vs 2/(n(p+1))"))?;
                }
                check(v <= 2.0 / nf, || format!("n={n} x={x} p={p}: {v} > 2/n"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} triples, max deviation {worst:e}"))
}

fn criterion_2() -> Outcome {
    let mut rng = common::rng(2);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n: u32 = rng.gen_range(1..=200);
        let m: u32 = rng.gen_range(2 * n..=10 * n);
        let hi = 1.0 - 1.0 / (2.0 * n as f64);
        let x = rng.gen_range(0.0..hi);
        if x <= 0.0 {
            continue;
        }
        let g = hat_cauchy_gap(n, m, x).map_err(|e| format!("n={n} m={m} x={x}: {e}"))?;
        worst = worst.max((g - 0.5).abs());
        check((g - 0.5).abs() <= 1e-12, || format!("n={n} m={m} x={x}: gap {g}"))?;
    }
    Ok(format!("100 triples, max |gap - 1/2| = {worst:e}"))
}

/// `∫ q(α - y₀χ_A)^p` read off the curve's own values: between
/// consecutive breakpoints of `α` and of `A` the integrand is
/// `q(y₀)·|f - c|` with `f` affine and `c` constant, so 8-point Gauss is exact
/// for `p ≤ 2` on each piece.
fn urysohn_oracle(space: &SpaceModel, q: usize, alpha: &Curve, y0: &Vector, set: &IntervalSet, p: f64) -> f64 {
    let mut cuts: Vec<f64> = alpha.breakpoints();
    cuts.extend(set.to_f64_pieces().into_iter().flat_map(|(a, b)| [a, b]));
    cuts.extend([0.0, 1.0]);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let nodes = [
        (-0.960_289_856_497_536_3, 0.101_228_536_290_376_26),
        (-0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
        (-0.525_532_409_916_329, 0.313_706_645_877_887_3),
        (-0.183_434_642_495_649_8, 0.362_683_783_378_362),
        (0.183_434_642_495_649_8, 0.362_683_783_378_362),
        (0.525_532_409_916_329, 0.313_706_645_877_887_3),
        (0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
        (0.960_289_856_497_536_3, 0.101_228_536_290_376_26),
    ];
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (u, v) = (w[0], w[1]);
        if v <= u {
            continue;
        }
        let inside = set.contains(&from_f64(0.5 * (u + v)).unwrap());
        let (c, r) = (0.5 * (u + v), 0.5 * (v - u));
        for (x, wt) in nodes {
            let t = c + r * x;
            let mut d = alpha.eval_f64(t).unwrap();
            if inside {
                d = d.sub(y0).unwrap();
            }
            total += r * wt * space.seminorm_eval(q, &d).unwrap().powf(p);
        }
    }
    total
}

fn criterion_3() -> Outcome {
    let mut rng = common::rng(3);
    let quad = Quadrature::default();
    let space = SpaceModel::finite_dim(2, vec![vec![1.0, 0.0], vec![0.5, 2.0], vec![1.0, 1.0]]).unwrap();
    let mut rows = 0;
    let mut slack = f64::INFINITY;
    for _ in 0..20 {
        let set = common::random_set(&mut rng, 5, 1000);
        let y0 = Vector::coords(common::coords(&mut rng, 2));
        for p in [1.0, 2.0] {
            for n in [1u32, 2, 4, 8, 16, 32, 64] {
                let (alpha, report) =
                    continuous_approx_char(&space, &y0, &set, n, p, &quad).map_err(|e| e.to_string())?;
                for (row, &q) in report.rows.iter().zip(space.active()) {
                    let bound = space.seminorm_eval(q, &y0).unwrap().powf(p) / n as f64;
                    let oracle = urysohn_oracle(&space, q, &alpha, &y0, &set, p);
                    check((row.measured - oracle).abs() <= 1e-9 * (1.0 + oracle), || {
                        format!("A={set} n={n} p={p} q{q}: quadrature {} vs oracle {oracle}", row.measured)
                    })?;
                    check(row.measured <= bound + 1e-8 && row.pass, || {
                        format!("A={set} n={n} p={p} q{q}: {} > {bound}", row.measured)
                    })?;
                    if bound > 0.0 {
                        slack = slack.min(bound - row.measured);
                    }
                    rows += 1;
                }
            }
        }
    }
    Ok(format!("{rows} rows, smallest margin to q(y0)^p/n: {slack:e}"))
}

/// Brute-force dyadic cover of a set with endpoints in `(1/D)ℤ`, all in
/// integer arithmetic scaled by `D·2ⁿ`: returns the first level whose
/// majority cover misses less than `eps`, with that symmetric difference.
fn cover_oracle(pieces: &[(i128, i128)], denom: i128, eps: &Rational) -> (u32, Rational) {
    for level in 0..=40u32 {
        let cells: i128 = 1 << level;
        let mut miss: i128 = 0;
        for k in 0..cells {
            let (lo, hi) = (k * denom, (k + 1) * denom);
            let inside: i128 = pieces
                .iter()
                .map(|&(a, b)| ((b * cells).min(hi) - (a * cells).max(lo)).max(0))
                .sum();
            miss += inside.min(denom - inside);
        }
        let sd = Rational::new(miss.into(), (denom * cells).into());
        if sd < *eps {
            return (level, sd);
        }
    }
    panic!("oracle found no level");
}

fn criterion_4() -> Outcome {
    let mut rng = common::rng(4);
    let denom = 1000i64;
    let mut checked = 0;
    let mut deepest = 0;
    for _ in 0..200 {
        let set = common::random_set(&mut rng, 5, denom);
        let scaled: Vec<(i128, i128)> = set
            .pieces()
            .iter()
            .map(|(a, b)| {
                let s = |q: &Rational| (q * int(denom)).to_integer().to_i128().unwrap();
                (s(a), s(b))
            })
            .collect();
        for eps in [ratio(1, 10), ratio(1, 100), ratio(1, 1000)] {
            let cover = dyadic_cover(&set, &eps).map_err(|e| e.to_string())?;
            check(*cover.symm_diff_measure() < eps, || format!("A={set}: symm diff not below eps"))?;
            let exact = cover.to_interval_set().symm_diff(&set).measure();
            check(exact == *cover.symm_diff_measure(), || format!("A={set}: reported symm diff disagrees"))?;
            let (level, sd) = cover_oracle(&scaled, denom as i128, &eps);
            check(cover.level() == level && *cover.symm_diff_measure() == sd, || {
                format!("A={set} eps={eps}: level {} vs oracle {level}", cover.level())
            })?;
            deepest = deepest.max(level);
            checked += 1;
        }
    }
    Ok(format!("{checked} covers match the brute-force oracle, deepest level {deepest}"))
}

fn criterion_5() -> Outcome {
    let quad = Quadrature::default();
    let line = SpaceModel::coordinates(1).unwrap();
    let linear = config::curve(&json!({"pw": {"name": "linear", "y": [1]}}), &line).unwrap();
    for n in 0..=12u32 {
        let avg = dyadic_average(&line, &linear, n, &quad).map_err(|e| e.to_string())?;
        let err = quad.lp_seminorm(&line, &linear.sub(&Curve::Simple(avg)), 0, 1.0).unwrap();
        let exact = 0.5f64.powi(n as i32 + 2);
        check(err.value == exact && err.abs_error_bound == 0.0, || {
            format!("level {n}: error {} vs 2^-(n+2) = {exact}", err.value)
        })?;
    }

    let plane = SpaceModel::finite_dim(2, vec![vec![1.0, 0.0], vec![1.0, 2.0]]).unwrap();
    let hats = SpaceModel::pointwise(vec![0.3, 0.5]).unwrap();
    let corpus = [
        (&plane, json!({"pw": {"name": "linear", "y": [1, -2]}})),
        (&plane, json!({"pw": {"name": "quadratic", "y": [0.5, 1]}})),
        (&plane, json!({"pw": {"name": "sine", "k": 2, "y": [1, 1]}})),
        (&plane, json!({"pw": {"name": "sawtooth", "k": 3, "y": [2, -1]}})),
        (&hats, json!({"hat_path": 10})),
        (&hats, json!({"combination": [[2, {"hat_path": 4}], [-1, {"hat_path": 9}]]})),
    ];
    let mut rows = 0;
    let mut growth = Vec::new();
    for (space, lit) in &corpus {
        let curve = config::curve(lit, space).unwrap();
        let avgs: Vec<Curve> = (0..=8)
            .map(|n| dyadic_average(space, &curve, n, &quad).map(Curve::Simple))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for &q in space.active() {
            let lip = curve.lipschitz(space, q).ok_or_else(|| format!("{lit}: no Lipschitz metadata"))?;
            let mut prev = f64::INFINITY;
            for (n, avg) in avgs.iter().enumerate() {
                let e = quad.lp_seminorm(space, &curve.sub(avg), q, 1.0).map_err(|e| e.to_string())?;
                let bound = lip * 0.5f64.powi(n as i32);
                check(e.value <= bound + e.abs_error_bound + 1e-12, || {
                    format!("{lit} q{q} level {n}: {} > L·2^-n = {bound}", e.value)
                })?;
                if e.value > prev + e.abs_error_bound + 1e-12 {
                    growth.push(format!("{lit} q{q} level {}→{n}: {prev} → {}", n - 1, e.value));
                }
                prev = e.value;
                rows += 1;
            }
        }
    }
    check(growth.is_empty(), || {
        format!("{rows} rows within L·2^-n, but the error is not non-increasing in {} case(s): {}", growth.len(), growth.join("; "))
    })?;
    Ok(format!("t·e1 exact through level 12; {rows} Lipschitz rows within L·2^-n and non-increasing"))
}

/// `‖γ - β‖ᵖ` by 5-point Gauss on every interval between breakpoints of `β`
/// and kinks of `γ`, each split in four.
fn density_oracle(space: &SpaceModel, q: usize, curve: &Curve, beta: &lusin::curves::SimpleCurve, kinks: &[f64], p: f64) -> f64 {
    let mut cuts: Vec<Rational> = beta.breakpoints();
    cuts.extend(kinks.iter().filter(|k| (0.0..=1.0).contains(*k)).map(|k| from_f64(*k).unwrap()));
    cuts.extend(curve.breakpoints().into_iter().map(|b| from_f64(b).unwrap()));
    cuts.push(Rational::zero());
    cuts.push(int(1));
    cuts.sort();
    cuts.dedup();
    let nodes = [
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.0, 0.568_888_888_888_888_9),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let y = beta.value_at(&((&w[0] + &w[1]) / int(2))).clone();
        let (u, v) = (to_f64(&w[0]), to_f64(&w[1]));
        for j in 0..4 {
            let a = u + (v - u) * j as f64 / 4.0;
            let b = u + (v - u) * (j + 1) as f64 / 4.0;
            let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
            for (x, wt) in nodes {
                let d = curve.eval_f64(c + r * x).unwrap().sub(&y).unwrap();
                total += r * wt * space.seminorm_eval(q, &d).unwrap().powf(p);
            }
        }
    }
    total.powf(1.0 / p)
}

fn criterion_6() -> Outcome {
    let quad = Quadrature::default();
    let plane = SpaceModel::finite_dim(2, vec![vec![1.0, 0.0], vec![0.5, 2.0]]).unwrap();
    let hats = SpaceModel::pointwise(vec![0.25, 0.5]).unwrap();
    let corpus = [
        (&plane, json!({"constant": [1, -2]}), vec![]),
        (&plane, json!({"pw": {"name": "linear", "y": [1, 0]}}), vec![]),
        (&plane, json!({"pw": {"name": "linear", "y": [-2, 3]}}), vec![]),
        (&hats, json!({"hat_path": 5}), vec![0.05, 0.25, 0.45, 0.3, 0.5, 0.7]),
        (&hats, json!({"hat_path": 20}), vec![0.2, 0.25, 0.3, 0.45, 0.5, 0.55]),
        (&plane, json!({"simple": {"pieces": [[[1, 2], "[0,1/4)"], [[-1, 0], "[1/3,0.9)"]]}}), vec![]),
        (&hats, json!({"simple": {"pieces": [[{"hat": [0.5, 4]}, "[0.1,0.6)"]]}}), vec![]),
    ];
    let mut runs = 0;
    let mut worst_ratio: f64 = 0.0;
    for (space, lit, kinks) in &corpus {
        let curve = config::curve(lit, space).unwrap();
        for &q in space.active() {
            for p in [1.0, 2.0] {
                for eps in [0.1, 0.01] {
                    let (beta, report) =
                        lp_simple_approx(space, &curve, q, p, eps, &quad).map_err(|e| format!("{lit}: {e}"))?;
                    let last = report.rows.last().unwrap();
                    check(report.all_pass(), || format!("{lit} q{q} p={p} eps={eps}: {report:?}"))?;
                    let oracle = density_oracle(space, q, &curve, &beta, kinks, p);
                    check(oracle < eps, || format!("{lit} q{q} p={p} eps={eps}: oracle {oracle}"))?;
                    check((oracle - last.measured).abs() <= 1e-6 * eps, || {
                        format!("{lit} q{q} p={p} eps={eps}: oracle {oracle} vs {}", last.measured)
                    })?;
                    worst_ratio = worst_ratio.max(oracle / eps);
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("{runs} runs, largest distance/eps {worst_ratio:.3}"))
}

fn criterion_7() -> Outcome {
    let mut rng = common::rng(7);
    let quad = Quadrature::default();
    let mut checks = 0;
    for i in 0..500 {
        let space = common::random_model(&mut rng);
        let curve = common::random_curve(&mut rng, &space);
        for &q in space.active() {
            let hb = quad.hb_inequality_check(&space, &curve, q).map_err(|e| format!("curve {i}: {e}"))?;
            check(hb.pass, || format!("curve {i} ({curve:?}) q{q}: {} > {} + {}", hb.lhs, hb.rhs, hb.slack))?;
            checks += 1;
        }
    }
    Ok(format!("500 curves, {checks} seminorm checks"))
}

fn random_compact(rng: &mut rand::rngs::StdRng) -> CompactSet {
    let mut ends: Vec<i64> = (0..2 * rng.gen_range(1..=4)).map(|_| rng.gen_range(0..=200)).collect();
    ends.sort();
    ends.dedup();
    let pieces: Vec<(Rational, Rational)> = ends
        .chunks(2)
        .filter(|c| c.len() == 2)
        .map(|c| (ratio(c[0], 200), ratio(c[1], 200)))
        .collect();
    let pieces = pieces
        .iter()
        .enumerate()
        .filter(|(i, (a, _))| *i == 0 || *a > pieces[i - 1].1)
        .map(|(_, p)| p.clone())
        .collect::<Vec<_>>();
    CompactSet::from_pieces(pieces).unwrap()
}

fn criterion_8() -> Outcome {
    let mut rng = common::rng(8);
    for i in 0..500 {
        let set = common::random_set(&mut rng, 6, 1000);
        let eps = ratio(rng.gen_range(1..=100), 1000);
        let cert = char_certificate(&Vector::coords(vec![1.0]), &set, &eps).map_err(|e| e.to_string())?;
        let k = cert.compact();
        let missing = int(1) - k.measure();
        check(missing < eps, || format!("case {i}: missing {missing} ≥ {eps}"))?;
        for (lo, hi) in k.pieces() {
            let inside = set.pieces().iter().any(|(a, b)| a <= lo && hi < b);
            let outside = set.pieces().iter().all(|(a, b)| hi < a || lo >= b);
            check(inside || outside, || format!("case {i}: [{lo}, {hi}] straddles A = {set}"))?;
        }
        for w in k.pieces().windows(2) {
            check(w[0].1 < w[1].0, || format!("case {i}: pieces of K touch"))?;
        }
    }

    for i in 0..200 {
        let size = rng.gen_range(0..=10);
        let certs: Vec<LusinCertificate> = (0..size)
            .map(|_| {
                let k = random_compact(&mut rng);
                let miss = int(1) - k.measure();
                let eps = miss + ratio(rng.gen_range(1..=50), 1000);
                LusinCertificate::new(k, eps, Evidence::Unchecked).unwrap()
            })
            .collect();
        let h = intersect_certificates(&certs).map_err(|e| e.to_string())?;
        let sum_eps = certs.iter().fold(Rational::zero(), |acc, c| acc + c.eps());
        let sum_miss = certs.iter().fold(Rational::zero(), |acc, c| acc + c.missing_measure());
        check(*h.eps() == sum_eps, || format!("family {i}: budget is not the sum"))?;
        let mut direct = CompactSet::full();
        for c in &certs {
            direct = direct.intersect(c.compact());
        }
        check(*h.compact() == direct, || format!("family {i}: intersection differs"))?;
        check(h.missing_measure() <= sum_miss, || format!("family {i}: subadditivity fails"))?;
        check(size == 0 || h.missing_measure() < sum_eps, || format!("family {i}: measure bound fails"))?;
    }

    let mut pairs = 0;
    for _ in 0..50 {
        let denom = 1i64 << rng.gen_range(3..=7);
        let a = rng.gen_range(0..denom - 1);
        let b = rng.gen_range(a + 1..=denom);
        let s = ratio(rng.gen_range(a..=b), denom);
        let space = SpaceModel::pointwise(vec![to_f64(&s)]).unwrap();
        let k = CompactSet::from_pieces(vec![(ratio(a, denom), ratio(b, denom))]).unwrap();
        let mut cert = LusinCertificate::new(k, int(1), Evidence::Unchecked).unwrap();
        let table = certify_restriction(&space, &Curve::DeltaPath, &mut cert, 0, &ratio(1, denom))
            .map_err(|e| e.to_string())?;
        check(table.rows.iter().all(|(_, m)| *m == 1.0), || format!("grid modulus {:?}", table.rows))?;
        for t in a..=b {
            for u in a..=b {
                if t != u {
                    let (x, y) = (t as f64 / denom as f64, u as f64 / denom as f64);
                    check(delta_separation(x, y).unwrap() == 1.0, || format!("separation {x} {y}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("500 char certificates, 200 families, {pairs} delta grid pairs"))
}

fn criterion_9() -> Outcome {
    let mut rng = common::rng(9);
    let quad = Quadrature::default();
    let mut pairs = 0;
    for i in 0..500 {
        let space = common::random_model(&mut rng);
        let g = common::random_curve(&mut rng, &space);
        let h = common::random_curve(&mut rng, &space);
        let alpha = common::coords(&mut rng, 1)[0];
        let p = [1.0, 1.5, 2.0, 3.0][rng.gen_range(0..4)];
        for &q in space.active() {
            let ng = quad.lp_seminorm(&space, &g, q, p).map_err(|e| format!("pair {i}: {e}"))?;
            let nh = quad.lp_seminorm(&space, &h, q, p).map_err(|e| format!("pair {i}: {e}"))?;
            let ns = quad.lp_seminorm(&space, &g.add(&h), q, p).map_err(|e| format!("pair {i}: {e}"))?;
            let na = quad.lp_seminorm(&space, &g.scale(alpha), q, p).map_err(|e| format!("pair {i}: {e}"))?;
            let hom_slack = 1e-10 + na.abs_error_bound + alpha.abs() * ng.abs_error_bound;
            check((na.value - alpha.abs() * ng.value).abs() <= hom_slack, || {
                format!("pair {i} q{q} p={p}: ‖αγ‖ = {} vs |α|‖γ‖ = {}", na.value, alpha.abs() * ng.value)
            })?;
            let tri_slack = ns.abs_error_bound + ng.abs_error_bound + nh.abs_error_bound + 1e-12;
            check(ns.value <= ng.value + nh.value + tri_slack, || {
                format!("pair {i} q{q} p={p}: triangle {} > {} + {}", ns.value, ng.value, nh.value)
            })?;
            for (a, b) in [(1.0, 2.0), (2.0, 3.0), (1.0, 3.0)] {
                let m = quad.p_monotonicity_check(&space, &g, q, a, b).map_err(|e| e.to_string())?;
                check(m.pass, || format!("pair {i} q{q}: ‖γ‖_{a} = {} > ‖γ‖_{b} = {}", m.lp, m.lr))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (pair, seminorm) cases"))
}

fn criterion_10() -> Outcome {
    let cfg = json!({"sequence": {"hat_discretization": {"ns": [4, 8, 16, 32], "cells": 256, "x": 0.5}}, "schedule": [0.25]});
    let mut child = Command::new(env!("CARGO_BIN_EXE_lusin"))
        .args(["limit", "--config", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(cfg.to_string().as_bytes())
        .map_err(|e| e.to_string())?;
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    check(out.status.code() == Some(1), || format!("exit status {:?}", out.status.code()))?;
    let csv = String::from_utf8_lossy(&out.stdout);
    let row = csv.lines().nth(1).ok_or("no witness row")?;
    let cols: Vec<&str> = row.split(',').collect();
    let gap: f64 = cols[5].parse().map_err(|_| format!("bad row {row}"))?;
    check(gap >= 0.5 - 1e-9 && cols[6] == "false", || format!("witness row {row}"))?;
    Ok(format!("exit 1, witness {}", cols[3]))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 10] = [
        ("hat-path rate 2/(n(p+1)) ≤ 2/n", criterion_1, Some(Duration::from_secs(5))),
        ("Cauchy gap = 1/2", criterion_2, Some(Duration::from_secs(1))),
        ("Urysohn rate q(y0)^p/n", criterion_3, Some(Duration::from_secs(10))),
        ("dyadic covering", criterion_4, Some(Duration::from_secs(10))),
        ("dyadic averaging", criterion_5, Some(Duration::from_secs(10))),
        ("simple density", criterion_6, Some(Duration::from_secs(20))),
        ("seminorm of the integral", criterion_7, Some(Duration::from_secs(10))),
        ("certificate suite", criterion_8, Some(Duration::from_secs(5))),
        ("Lp seminorm axioms and p-monotonicity", criterion_9, Some(Duration::from_secs(10))),
        ("uniform-limit negative test", criterion_10, None),
    ];
    let mut failures = Vec::new();
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(detail), Some(l)) if took > *l => Err(format!("{detail}; runtime {took:.2?} exceeds {l:?}")),
            (r, _) => r,
        };
        let line = match &result {
            Ok(detail) => format!("criterion {:>2} PASS {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => format!("criterion {:>2} FAIL {name} ({took:.2?}): {why}", i + 1),
        };
        let _ = writeln!(std::io::stderr(), "{line}");
        if result.is_err() {
            failures.push(line);
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
