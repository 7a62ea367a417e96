//! JSON configuration: spaces, vectors, sets and curves.
//!
//! Every numeric literal may be a JSON number or a string; strings accept
//! `p/q` fractions. Numbers are read from their literal text, so decimal
//! endpoints such as `0.1` stay exact rationals.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::borel::IntervalSet;
use crate::curves::{Curve, Evaluator, PiecewiseContinuous, SimpleCurve};
use crate::error::{Error, Result};
use crate::lcs::{SpaceModel, Vector};
use crate::numeric::{parse_rational, to_f64, Rational};

fn err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Promotes model errors raised while building from config to config errors.
fn cfg<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Config(_) => e,
        other => Error::Config(other.to_string()),
    })
}

pub fn parse_document(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    if !v.is_object() && !v.is_null() {
        return Err(err("config must be a JSON object"));
    }
    Ok(v)
}

pub fn rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(err(format!("expected a number, got {other}"))),
    }
}

pub fn real(v: &Value) -> Result<f64> {
    rational(v).map(|q| to_f64(&q))
}

pub fn uint(v: &Value) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(format!("expected a nonnegative integer, got {v}")))
}

pub fn list<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(format!("{what}: expected an array")))
}

pub fn reals(v: &Value, what: &str) -> Result<Vec<f64>> {
    list(v, what)?.iter().map(real).collect()
}

/// A list of integers, or `{"from": a, "to": b}` inclusive.
pub fn uint_range(v: &Value, what: &str) -> Result<Vec<u64>> {
    if let Some(obj) = v.as_object() {
        let from = uint(obj.get("from").ok_or_else(|| err(format!("{what}: missing from")))?)?;
        let to = uint(obj.get("to").ok_or_else(|| err(format!("{what}: missing to")))?)?;
        if from > to {
            return Err(err(format!("{what}: empty range")));
        }
        return Ok((from..=to).collect());
    }
    list(v, what)?.iter().map(uint).collect()
}

fn single_key(v: &Value, what: &str) -> Result<(String, Value)> {
    let obj = v
        .as_object()
        .filter(|o| o.len() == 1)
        .ok_or_else(|| err(format!("{what}: expected an object with one key, got {v}")))?;
    let (k, inner) = obj.iter().next().expect("one key");
    Ok((k.clone(), inner.clone()))
}

/// `{"coordinates": d}`, `{"finite_dim": {"dim": d, "seminorms": [[w…]…]}}`
/// or `{"pointwise": [x…]}`, optionally with `"active": [i…]` alongside.
pub fn space(v: &Value) -> Result<SpaceModel> {
    let obj = v.as_object().ok_or_else(|| err("space: expected an object"))?;
    let active = obj.get("active");
    let mut rest: Map<String, Value> = obj.clone();
    rest.remove("active");
    let (kind, body) = single_key(&Value::Object(rest), "space")?;
    let model = match kind.as_str() {
        "coordinates" => cfg(SpaceModel::coordinates(uint(&body)? as usize))?,
        "finite_dim" => {
            let dim = uint(body.get("dim").ok_or_else(|| err("finite_dim: missing dim"))?)? as usize;
            let weights = list(body.get("seminorms").ok_or_else(|| err("finite_dim: missing seminorms"))?, "seminorms")?
                .iter()
                .map(|w| reals(w, "seminorm weights"))
                .collect::<Result<Vec<_>>>()?;
            cfg(SpaceModel::finite_dim(dim, weights))?
        }
        "pointwise" => cfg(SpaceModel::pointwise(reals(&body, "pointwise")?))?,
        other => return Err(err(format!("unknown space kind {other:?}"))),
    };
    match active {
        Some(a) => cfg(model.with_active(uint_range(a, "active")?.into_iter().map(|i| i as usize).collect())),
        None => Ok(model),
    }
}

/// A plain array is a coordinate vector; otherwise one of `coords`, `hat`
/// (`{"c": center, "n": steepness}` or `[center, steepness]`), `ind`,
/// `scale` (`[c, vector]`), `sum`.
pub fn vector(v: &Value) -> Result<Vector> {
    if v.is_array() {
        return Ok(Vector::coords(reals(v, "coords")?));
    }
    let (kind, body) = single_key(v, "vector")?;
    match kind.as_str() {
        "coords" => Ok(Vector::coords(reals(&body, "coords")?)),
        "zero" => match body.as_u64() {
            Some(d) => Ok(Vector::zero_coords(d as usize)),
            None => Ok(Vector::zero_pointwise()),
        },
        "hat" if body.is_object() => {
            let field = |k: &str| body.get(k).ok_or_else(|| err(format!("hat: missing {k:?}"))).and_then(real);
            cfg(Vector::hat(field("c")?, field("n")?))
        }
        "hat" => {
            let a = reals(&body, "hat")?;
            match a.as_slice() {
                [c, n] => cfg(Vector::hat(*c, *n)),
                _ => Err(err("hat: expected [center, steepness]")),
            }
        }
        "ind" => Ok(Vector::indicator(real(&body)?)),
        "scale" => {
            let a = list(&body, "scale")?;
            match a.as_slice() {
                [c, x] => Ok(vector(x)?.scale(real(c)?)),
                _ => Err(err("scale: expected [c, vector]")),
            }
        }
        "sum" => {
            let terms = list(&body, "sum")?;
            let mut it = terms.iter();
            let first = it.next().ok_or_else(|| err("sum: empty"))?;
            it.try_fold(vector(first)?, |acc, t| cfg(acc.add(&vector(t)?)))
        }
        other => Err(err(format!("unknown vector kind {other:?}"))),
    }
}

/// `"[a,b)"` pieces joined by `U`, `"empty"`, `"[0,1)"`, or an array of
/// `[lo, hi]` pairs.
pub fn interval_set(v: &Value) -> Result<IntervalSet> {
    match v {
        Value::String(s) => parse_set_text(s),
        Value::Array(pairs) => {
            let pieces = pairs
                .iter()
                .map(|p| match p.as_array().map(|a| a.as_slice()) {
                    Some([lo, hi]) => Ok((rational(lo)?, rational(hi)?)),
                    _ => Err(err(format!("set piece: expected [lo, hi], got {p}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            cfg(IntervalSet::from_pieces(pieces))
        }
        other => Err(err(format!("set: expected a string or array, got {other}"))),
    }
}

fn parse_set_text(s: &str) -> Result<IntervalSet> {
    let s = s.trim();
    if s.is_empty() || s == "empty" || s == "∅" {
        return Ok(IntervalSet::empty());
    }
    let mut pieces = Vec::new();
    for part in s.split(['U', '∪']) {
        let part = part.trim();
        let inner = part
            .strip_prefix('[')
            .and_then(|p| p.strip_suffix(')'))
            .ok_or_else(|| err(format!("set piece {part:?}: expected [lo,hi)")))?;
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| err(format!("set piece {part:?}: expected [lo,hi)")))?;
        pieces.push((parse_rational(lo.trim())?, parse_rational(hi.trim())?));
    }
    cfg(IntervalSet::from_pieces(pieces))
}

/// Named evaluators `t ↦ φ(t)·y`, with Lipschitz constant `L_φ·q(y)`.
fn named(name: &str, body: &Map<String, Value>) -> Result<(Evaluator, Vec<f64>, f64, bool)> {
    let k = match body.get("k") {
        Some(k) => uint(k)?.max(1) as f64,
        None => 1.0,
    };
    let out: (fn(f64, f64) -> f64, Vec<f64>, f64, bool) = match name {
        "linear" => (|t, _| t, vec![], 1.0, true),
        "quadratic" => (|t, _| t * t, vec![], 2.0, false),
        "sine" => (|t, k| (2.0 * std::f64::consts::PI * k * t).sin(), vec![], 2.0 * std::f64::consts::PI * k, false),
        "sawtooth" => (
            |t, k| (k * t).fract(),
            (1..k as u64).map(|j| j as f64 / k).collect(),
            k,
            true,
        ),
        other => return Err(err(format!("unknown evaluator {other:?}"))),
    };
    let (phi, breaks, lip, affine) = out;
    let y = vector(body.get("y").ok_or_else(|| err(format!("{name}: missing y")))?)?;
    let eval: Evaluator = Arc::new(move |t| y.scale(phi(t, k)));
    Ok((eval, breaks, lip, affine))
}

/// Curve literals: `simple`, `constant`, `hat_path`, `delta_path`, `pw`
/// (a named evaluator) and `combination`.
pub fn curve(v: &Value, space: &SpaceModel) -> Result<Curve> {
    let c = if v.as_str() == Some("delta_path") {
        Curve::DeltaPath
    } else {
        let (kind, body) = single_key(v, "curve")?;
        match kind.as_str() {
            "simple" => {
                let pieces = match body.get("pieces") {
                    Some(p) => list(p, "pieces")?
                        .iter()
                        .map(|pc| match pc.as_array().map(|a| a.as_slice()) {
                            Some([y, set]) => Ok((vector(y)?, interval_set(set)?)),
                            _ => Err(err("simple piece: expected [vector, set]")),
                        })
                        .collect::<Result<Vec<_>>>()?,
                    None => Vec::new(),
                };
                let atoms = match body.get("atoms") {
                    Some(a) => list(a, "atoms")?
                        .iter()
                        .map(|at| match at.as_array().map(|a| a.as_slice()) {
                            Some([t, y]) => Ok((rational(t)?, vector(y)?)),
                            _ => Err(err("atom: expected [t, vector]")),
                        })
                        .collect::<Result<Vec<_>>>()?,
                    None => Vec::new(),
                };
                Curve::Simple(cfg(SimpleCurve::new(space.zero(), pieces, atoms))?)
            }
            "constant" => cfg(Curve::constant(vector(&body)?))?,
            "hat_path" => cfg(Curve::hat_path(uint(&body)?.min(u32::MAX as u64) as u32))?,
            "delta_path" => Curve::DeltaPath,
            "pw" => {
                let obj = body.as_object().ok_or_else(|| err("pw: expected an object"))?;
                let name = obj
                    .get("name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| err("pw: missing name"))?;
                let (eval, mut breaks, rate, affine) = named(name, obj)?;
                if let Some(b) = obj.get("breaks") {
                    breaks.extend(reals(b, "breaks")?);
                }
                let y = vector(&obj["y"])?;
                let mut lip = BTreeMap::new();
                for &q in space.active() {
                    lip.insert(q, rate * cfg(space.seminorm_eval(q, &y))?);
                }
                Curve::PiecewiseContinuous(cfg(PiecewiseContinuous::new(name, eval, breaks, lip, affine))?)
            }
            "combination" => {
                let terms = list(&body, "combination")?
                    .iter()
                    .map(|t| match t.as_array().map(|a| a.as_slice()) {
                        Some([c, inner]) => Ok((real(c)?, curve(inner, space)?)),
                        _ => Err(err("combination term: expected [c, curve]")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                if terms.is_empty() {
                    return Err(err("combination: empty"));
                }
                Curve::Combination(terms)
            }
            other => return Err(err(format!("unknown curve kind {other:?}"))),
        }
    };
    cfg(c.check_space(space))?;
    Ok(c)
}
