#![allow(dead_code)]

use lusin::borel::IntervalSet;
use lusin::config;
use lusin::curves::Curve;
use lusin::lcs::SpaceModel;
use lusin::numeric::ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Up to `max_pieces` disjoint pieces with endpoints in `(1/denom)ℤ`.
pub fn random_set(rng: &mut StdRng, max_pieces: usize, denom: i64) -> IntervalSet {
    let k = rng.gen_range(0..=max_pieces);
    let mut ends: Vec<i64> = (0..2 * k).map(|_| rng.gen_range(0..=denom)).collect();
    ends.sort();
    ends.dedup();
    let pieces = ends
        .chunks(2)
        .filter(|c| c.len() == 2)
        .map(|c| (ratio(c[0], denom), ratio(c[1], denom)));
    IntervalSet::from_pieces(pieces).unwrap()
}

pub fn coords(rng: &mut StdRng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| (rng.gen_range(-40..=40) as f64) / 8.0).collect()
}

pub fn finite_space(rng: &mut StdRng) -> SpaceModel {
    let weights: Vec<Vec<f64>> = (0..3)
        .map(|_| (0..3).map(|_| rng.gen_range(0..=4) as f64 / 2.0).collect())
        .collect();
    SpaceModel::finite_dim(3, weights).unwrap()
}

pub fn pointwise_space(rng: &mut StdRng) -> SpaceModel {
    let mut pts: Vec<f64> = (0..3).map(|_| rng.gen_range(1..20) as f64 / 20.0).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    SpaceModel::pointwise(pts).unwrap()
}

fn set_json(rng: &mut StdRng) -> Value {
    let s = random_set(rng, 3, 64);
    Value::Array(
        s.pieces()
            .iter()
            .map(|(a, b)| json!([a.to_string(), b.to_string()]))
            .collect(),
    )
}

fn simple_json(rng: &mut StdRng, vector: &mut dyn FnMut(&mut StdRng) -> Value) -> Value {
    let mut ends: Vec<i64> = (0..rng.gen_range(1..=6)).map(|_| rng.gen_range(0..=64)).collect();
    ends.push(0);
    ends.push(64);
    ends.sort();
    ends.dedup();
    let mut pieces = Vec::new();
    for w in ends.windows(2) {
        if rng.gen_bool(0.8) {
            pieces.push(json!([vector(rng), [[format!("{}/64", w[0]), format!("{}/64", w[1])]]]));
        }
    }
    json!({"simple": {"pieces": pieces}})
}

/// Curve literal in the finite-dimensional model of [`finite_space`].
pub fn finite_curve_json(rng: &mut StdRng) -> Value {
    let mut vec3 = |r: &mut StdRng| json!(coords(r, 3));
    match rng.gen_range(0..6) {
        0 => simple_json(rng, &mut vec3),
        1 => json!({"constant": vec3(rng)}),
        2 => json!({"pw": {"name": "linear", "y": vec3(rng)}}),
        3 => json!({"pw": {"name": "quadratic", "y": vec3(rng)}}),
        4 => json!({"pw": {"name": "sine", "k": rng.gen_range(1..=3), "y": vec3(rng)}}),
        _ => {
            let a = simple_json(rng, &mut vec3);
            json!({"combination": [[1.5, a], [-1, {"pw": {"name": "sawtooth", "k": rng.gen_range(1..=4), "y": vec3(rng)}}]]})
        }
    }
}

/// Curve literal in the pointwise model.
pub fn pointwise_curve_json(rng: &mut StdRng) -> Value {
    let mut hat = |r: &mut StdRng| json!({"hat": [r.gen_range(0..=20) as f64 / 20.0, r.gen_range(1..=12)]});
    match rng.gen_range(0..4) {
        0 => json!({"hat_path": rng.gen_range(1..=40)}),
        1 => json!({"combination": [
            [coords(rng, 1)[0], {"hat_path": rng.gen_range(1..=40)}],
            [coords(rng, 1)[0], {"hat_path": rng.gen_range(1..=40)}]
        ]}),
        2 => simple_json(rng, &mut hat),
        _ => json!("delta_path"),
    }
}

pub fn random_curve(rng: &mut StdRng, space: &SpaceModel) -> Curve {
    let v = if space.is_pointwise() {
        pointwise_curve_json(rng)
    } else {
        finite_curve_json(rng)
    };
    config::curve(&v, space).unwrap()
}

pub fn random_model(rng: &mut StdRng) -> SpaceModel {
    if rng.gen_bool(0.5) {
        finite_space(rng)
    } else {
        pointwise_space(rng)
    }
}

pub fn set_literal(rng: &mut StdRng) -> Value {
    set_json(rng)
}
