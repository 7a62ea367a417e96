//! Quadrature of `t ↦ q(γ(t))^p`, Lᵖ seminorms and weak integrals.
//!
//! Every seminorm is `q = Σ w_j |f_j|` for functionals `f_j`, so the integrand
//! is assembled from the scalar profiles `f_j ∘ γ`. Each profile is a list of
//! cells on which `f_j ∘ γ` is either affine with known end values or opaque
//! (only point evaluations available). All-affine cells are split at the
//! sign changes of every component and integrated in closed form; opaque cells
//! go through adaptive Gauss–Legendre bisection.

use std::fmt;

use crate::borel::IntervalSet;
use crate::curves::Curve;
use crate::error::{Error, Result};
use crate::lcs::{Functional, FunctionalForm, Primitive, SpaceModel, Vector};
use crate::numeric::{dyadic, to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ExactPiecewise,
    Adaptive,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ExactPiecewise => "exact-piecewise",
            Method::Adaptive => "adaptive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_bound: f64,
    pub cells: usize,
    pub method: Method,
}

impl QuadratureResult {
    fn zero() -> Self {
        Self {
            value: 0.0,
            abs_error_bound: 0.0,
            cells: 0,
            method: Method::ExactPiecewise,
        }
    }

    fn absorb(&mut self, other: QuadratureResult) {
        self.value += other.value;
        self.abs_error_bound += other.abs_error_bound;
        self.cells += other.cells;
        if other.method == Method::Adaptive {
            self.method = Method::Adaptive;
        }
    }

    /// `value^(1/p)` with the error bound pushed through the root.
    pub fn root(self, p: f64) -> Self {
        let v = self.value.max(0.0);
        let r = v.powf(1.0 / p);
        let e = self.abs_error_bound;
        let bound = if e == 0.0 {
            0.0
        } else {
            let up = (v + e).powf(1.0 / p) - r;
            let down = r - (v - e).max(0.0).powf(1.0 / p);
            up.max(down)
        };
        Self {
            value: r,
            abs_error_bound: bound,
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Shape {
    Affine(f64, f64),
    Opaque,
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    a: f64,
    b: f64,
    shape: Shape,
}

impl Cell {
    fn restrict(&self, a: f64, b: f64) -> Shape {
        match self.shape {
            Shape::Affine(v0, v1) if self.b > self.a => {
                let at = |t: f64| v0 + (v1 - v0) * (t - self.a) / (self.b - self.a);
                Shape::Affine(at(a), at(b))
            }
            s => s,
        }
    }
}

fn sorted_cuts(mut cuts: Vec<f64>) -> Vec<f64> {
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.retain(|c| (0.0..=1.0).contains(c));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts
}

fn point_terms(f: &Functional, curve: &Curve) -> Result<Vec<f64>> {
    match f.form() {
        FunctionalForm::PointEvals(t) => Ok(t.iter().map(|(x, _)| *x).collect()),
        FunctionalForm::Coefficients(_) => Err(Error::SpaceMismatch(format!(
            "coefficient functional on the {} curve",
            curve.kind_name()
        ))),
    }
}

/// Scalar profile of `f ∘ γ` over `[0,1]`.
fn profile(curve: &Curve, f: &Functional) -> Result<Vec<Cell>> {
    let g = |t: f64| -> Result<f64> { f.apply(&curve.eval_f64(t)?) };
    match curve {
        Curve::Simple(s) => {
            let mut cells = Vec::new();
            let mut cursor = 0.0;
            for (lo, hi, v) in s.intervals() {
                let (lo, hi) = (to_f64(lo), to_f64(hi));
                if lo > cursor {
                    cells.push(Cell { a: cursor, b: lo, shape: Shape::Affine(0.0, 0.0) });
                }
                let y = f.apply(v)?;
                cells.push(Cell { a: lo, b: hi, shape: Shape::Affine(y, y) });
                cursor = hi;
            }
            if cursor < 1.0 {
                cells.push(Cell { a: cursor, b: 1.0, shape: Shape::Affine(0.0, 0.0) });
            }
            f.apply(s.zero_vector())?;
            Ok(cells)
        }
        Curve::HatPath(n) => {
            let w = 1.0 / *n as f64;
            let kinks = point_terms(f, curve)?
                .into_iter()
                .flat_map(|x| [x - w, x, x + w])
                .collect();
            let cuts = sorted_cuts(kinks);
            cuts.windows(2)
                .map(|c| Ok(Cell { a: c[0], b: c[1], shape: Shape::Affine(g(c[0])?, g(c[1])?) }))
                .collect()
        }
        Curve::DeltaPath => {
            point_terms(f, curve)?;
            Ok(vec![Cell { a: 0.0, b: 1.0, shape: Shape::Affine(0.0, 0.0) }])
        }
        Curve::PiecewiseContinuous(pc) => {
            f.apply(&pc.eval(0.0))?;
            let cuts = sorted_cuts(pc.breakpoints().to_vec());
            cuts.windows(2)
                .map(|c| {
                    let shape = if pc.is_affine() {
                        // right-continuous at breakpoints: read the left limit
                        // at c[1] off the midpoint
                        let v0 = g(c[0])?;
                        let vm = g(0.5 * (c[0] + c[1]))?;
                        Shape::Affine(v0, 2.0 * vm - v0)
                    } else {
                        Shape::Opaque
                    };
                    Ok(Cell { a: c[0], b: c[1], shape })
                })
                .collect()
        }
        Curve::Combination(terms) => {
            let profiles = terms
                .iter()
                .map(|(_, c)| profile(c, f))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&[Cell]> = profiles.iter().map(|p| p.as_slice()).collect();
            Ok(merge(&refs)
                .into_iter()
                .map(|(a, b, shapes)| {
                    let mut acc = Some((0.0, 0.0));
                    for ((c, _), s) in terms.iter().zip(shapes) {
                        acc = match (acc, s) {
                            (Some((x, y)), Shape::Affine(u, v)) => Some((x + c * u, y + c * v)),
                            _ => None,
                        };
                    }
                    let shape = acc.map_or(Shape::Opaque, |(x, y)| Shape::Affine(x, y));
                    Cell { a, b, shape }
                })
                .collect())
        }
    }
}

/// Common refinement of several profiles.
fn merge(profiles: &[&[Cell]]) -> Vec<(f64, f64, Vec<Shape>)> {
    let cuts = sorted_cuts(
        profiles
            .iter()
            .flat_map(|p| p.iter().flat_map(|c| [c.a, c.b]))
            .collect(),
    );
    let mut idx = vec![0usize; profiles.len()];
    let mut out = Vec::with_capacity(cuts.len());
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let shapes = profiles
            .iter()
            .zip(idx.iter_mut())
            .map(|(p, i)| {
                while *i + 1 < p.len() && p[*i].b <= mid {
                    *i += 1;
                }
                p[*i].restrict(a, b)
            })
            .collect();
        out.push((a, b, shapes));
    }
    out
}

/// Quadrature settings: absolute tolerance and adaptive cell cap.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub tol: f64,
    pub max_cells: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_cells: 1_000_000,
        }
    }
}

const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

fn gauss(a: f64, b: f64, h: &mut impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
    let mut s = 0.0;
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
        s += w * h(c + r * x)?;
    }
    Ok(r * s)
}

/// `∫_0^len g^p` for `g` affine from `g0 ≥ 0` to `g1 ≥ 0`.
fn affine_power(g0: f64, g1: f64, len: f64, p: f64) -> f64 {
    let (g0, g1) = (g0.max(0.0), g1.max(0.0));
    if p == 1.0 {
        return 0.5 * (g0 + g1) * len;
    }
    if p.fract() == 0.0 && p <= 64.0 {
        let k = p as i32;
        let s: f64 = (0..=k).map(|j| g0.powi(j) * g1.powi(k - j)).sum();
        return s * len / (p + 1.0);
    }
    let d = g1 - g0;
    if d.abs() <= 1e-6 * g0.max(g1) || d == 0.0 {
        let mut f = |t: f64| Ok((g0 + d * t / len).powf(p));
        return gauss(0.0, len, &mut f).unwrap_or(f64::NAN);
    }
    len * (g1.powf(p + 1.0) - g0.powf(p + 1.0)) / ((p + 1.0) * d)
}

/// What the quadrature integrates over a cell.
#[derive(Clone, Copy)]
enum Mode {
    /// `(Σ w_j |f_j|)^p`
    Seminorm(f64),
    /// `Σ w_j f_j`, signed
    Linear,
}

impl Quadrature {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::invalid("quadrature tolerance must be positive"));
        }
        Ok(Self {
            tol,
            ..Self::default()
        })
    }

    fn integrate(
        &self,
        curve: &Curve,
        comps: &[(f64, Functional)],
        mode: Mode,
        over: Option<&IntervalSet>,
    ) -> Result<QuadratureResult> {
        let profiles = comps
            .iter()
            .map(|(_, f)| profile(curve, f))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&[Cell]> = profiles.iter().map(|p| p.as_slice()).collect();
        let cells = merge(&refs);
        let windows: Vec<(f64, f64)> = match over {
            None => vec![(0.0, 1.0)],
            Some(set) => set.to_f64_pieces(),
        };
        let weights: Vec<f64> = comps.iter().map(|(w, _)| *w).collect();
        let mut total = QuadratureResult::zero();
        let mut wi = 0;
        for (a, b, shapes) in &cells {
            while wi < windows.len() && windows[wi].1 <= *a {
                wi += 1;
            }
            for &(lo, hi) in windows[wi.min(windows.len())..].iter().take_while(|w| w.0 < *b) {
                let (ca, cb) = (a.max(lo), b.min(hi));
                if cb <= ca {
                    continue;
                }
                let proto = Cell { a: *a, b: *b, shape: Shape::Opaque };
                let clipped: Vec<Shape> = shapes
                    .iter()
                    .map(|s| Cell { shape: *s, ..proto }.restrict(ca, cb))
                    .collect();
                let r = if clipped.iter().all(|s| matches!(s, Shape::Affine(..))) {
                    exact_cell(ca, cb, &clipped, &weights, mode)
                } else {
                    self.adaptive_cell(ca, cb, curve, comps, mode, total.cells)?
                };
                total.absorb(r);
            }
        }
        Ok(total)
    }

    fn adaptive_cell(
        &self,
        a: f64,
        b: f64,
        curve: &Curve,
        comps: &[(f64, Functional)],
        mode: Mode,
        used: usize,
    ) -> Result<QuadratureResult> {
        let mut h = |t: f64| -> Result<f64> {
            let v = curve.eval_f64(t)?;
            let mut acc = 0.0;
            for (w, f) in comps {
                let y = f.apply(&v)?;
                acc += match mode {
                    Mode::Seminorm(_) => w * y.abs(),
                    Mode::Linear => w * y,
                };
            }
            let out = match mode {
                Mode::Seminorm(p) => acc.powf(p),
                Mode::Linear => acc,
            };
            if out.is_finite() {
                Ok(out)
            } else {
                Err(Error::NonConvergent { lo: a, hi: b, cells: used })
            }
        };
        let width = b - a;
        let mut out = QuadratureResult {
            method: Method::Adaptive,
            ..QuadratureResult::zero()
        };
        let mut stack: Vec<(f64, f64, f64)> = Vec::new();
        let seeds = 8;
        for k in 0..seeds {
            let (lo, hi) = (a + width * k as f64 / seeds as f64, a + width * (k + 1) as f64 / seeds as f64);
            stack.push((lo, hi, gauss(lo, hi, &mut h)?));
        }
        while let Some((lo, hi, whole)) = stack.pop() {
            let mid = 0.5 * (lo + hi);
            let left = gauss(lo, mid, &mut h)?;
            let right = gauss(mid, hi, &mut h)?;
            let refined = left + right;
            let err = (refined - whole).abs();
            if err <= self.tol * (hi - lo) || hi - lo < 1e-15 {
                out.value += refined;
                out.abs_error_bound += err;
                out.cells += 1;
                continue;
            }
            if used + out.cells + stack.len() + 2 > self.max_cells {
                return Err(Error::NonConvergent { lo, hi, cells: self.max_cells });
            }
            stack.push((mid, hi, right));
            stack.push((lo, mid, left));
        }
        Ok(out)
    }

    /// `∫_0^1 q(γ(t))^p dt`.
    pub fn lp_integral(&self, space: &SpaceModel, curve: &Curve, q: usize, p: f64) -> Result<QuadratureResult> {
        self.lp_integral_over(space, curve, q, p, None)
    }

    /// `∫_A q(γ(t))^p dt`, or over `[0,1]` when `over` is `None`.
    pub fn lp_integral_over(
        &self,
        space: &SpaceModel,
        curve: &Curve,
        q: usize,
        p: f64,
        over: Option<&IntervalSet>,
    ) -> Result<QuadratureResult> {
        check_p(p)?;
        let comps = space.seminorm(q)?.components();
        curve.check_space(space)?;
        if comps.is_empty() {
            return Ok(QuadratureResult::zero());
        }
        self.integrate(curve, &comps, Mode::Seminorm(p), over)
    }

    /// `‖γ‖_{Lᵖ,q} = (∫ q(γ)^p)^{1/p}`.
    pub fn lp_seminorm(&self, space: &SpaceModel, curve: &Curve, q: usize, p: f64) -> Result<QuadratureResult> {
        Ok(self.lp_integral(space, curve, q, p)?.root(p))
    }

    /// `∫_A f(γ(t)) dt` for one functional.
    pub fn functional_integral(
        &self,
        curve: &Curve,
        f: &Functional,
        over: &IntervalSet,
    ) -> Result<QuadratureResult> {
        self.integrate(curve, &[(1.0, f.clone())], Mode::Linear, Some(over))
    }

    /// The weak integral `z = ∫_A γ` with its summed error bound.
    ///
    /// Simple curves give `Σ λ(A_i ∩ A) y_i`. Otherwise `z` is assembled from
    /// the integrals against the generating functionals: coordinates in the
    /// finite-dimensional model, and `Σ v_x · Indicator(x)` over the active
    /// evaluation points in the pointwise model, which pairs correctly with
    /// every active `π_x`.
    pub fn weak_integral(&self, space: &SpaceModel, curve: &Curve, over: &IntervalSet) -> Result<(Vector, f64)> {
        curve.check_space(space)?;
        if let Curve::Simple(s) = curve {
            return Ok((s.integral(over)?, 0.0));
        }
        let gens = space.generating_functionals();
        let mut values = Vec::with_capacity(gens.len());
        let mut err = 0.0;
        for f in &gens {
            let r = self.functional_integral(curve, f, over)?;
            values.push(r.value);
            err += r.abs_error_bound;
        }
        let z = if space.is_pointwise() {
            Vector::combination(
                space
                    .points()
                    .into_iter()
                    .zip(values)
                    .map(|(x, v)| (Primitive::Indicator(x), v))
                    .collect(),
            )
        } else {
            Vector::coords(values)
        };
        Ok((z, err))
    }

    /// `q(∫γ) ≤ ∫ q(γ)`.
    pub fn hb_inequality_check(&self, space: &SpaceModel, curve: &Curve, q: usize) -> Result<HbCheck> {
        let (z, z_err) = self.weak_integral(space, curve, &IntervalSet::unit())?;
        let lhs = space.seminorm_eval(q, &z)?;
        let rhs = self.lp_integral(space, curve, q, 1.0)?;
        let weight: f64 = space.seminorm(q)?.components().iter().map(|(w, _)| w).sum();
        let slack = weight * z_err + rhs.abs_error_bound + ROUNDING * (1.0 + rhs.value.abs());
        Ok(HbCheck {
            lhs,
            rhs: rhs.value,
            slack,
            pass: lhs <= rhs.value + slack,
        })
    }

    /// `‖γ‖_p ≤ ‖γ‖_r` for `1 ≤ p ≤ r` on the probability interval.
    pub fn p_monotonicity_check(
        &self,
        space: &SpaceModel,
        curve: &Curve,
        q: usize,
        p: f64,
        r: f64,
    ) -> Result<MonotonicityCheck> {
        check_p(p)?;
        if r < p {
            return Err(Error::invalid(format!("need p ≤ r, got p={p}, r={r}")));
        }
        let lp = self.lp_seminorm(space, curve, q, p)?;
        let lr = self.lp_seminorm(space, curve, q, r)?;
        let slack = lp.abs_error_bound + lr.abs_error_bound + ROUNDING * (1.0 + lr.value);
        Ok(MonotonicityCheck {
            lp: lp.value,
            lr: lr.value,
            slack,
            pass: lp.value <= lr.value + slack,
        })
    }

    /// Largest `δ ≤ 1` such that every set of measure below `δ` carries less
    /// than `budget` of `∫ q(γ)^p`.
    ///
    /// The worst set fills the cells of highest density first, so with
    /// `M(δ)` the greedy mass, `δ` is the inverse of `M` at `budget`. Densities
    /// are exact maxima on affine cells and sampled maxima on opaque cells
    /// (widened by a declared Lipschitz constant when present).
    pub fn abs_continuity_delta(&self, space: &SpaceModel, curve: &Curve, q: usize, p: f64, budget: f64) -> Result<f64> {
        check_p(p)?;
        if !(budget > 0.0) {
            return Err(Error::invalid("budget must be positive"));
        }
        curve.check_space(space)?;
        let comps = space.seminorm(q)?.components();
        let profiles = comps
            .iter()
            .map(|(_, f)| profile(curve, f))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&[Cell]> = profiles.iter().map(|p| p.as_slice()).collect();
        let lip = curve.lipschitz(space, q);
        let mut dens: Vec<(f64, f64)> = Vec::new();
        for (a, b, shapes) in merge(&refs) {
            let len = b - a;
            if len <= 0.0 {
                continue;
            }
            let sup = if shapes.iter().all(|s| matches!(s, Shape::Affine(..))) {
                let at = |side: usize| -> f64 {
                    comps
                        .iter()
                        .zip(&shapes)
                        .map(|((w, _), s)| match s {
                            Shape::Affine(u, v) => w * if side == 0 { u.abs() } else { v.abs() },
                            Shape::Opaque => 0.0,
                        })
                        .sum()
                };
                at(0).max(at(1))
            } else {
                const SAMPLES: usize = 256;
                let mut m: f64 = 0.0;
                for k in 0..SAMPLES {
                    let t = a + len * (k as f64 + 0.5) / SAMPLES as f64;
                    m = m.max(space.seminorm_eval(q, &curve.eval_f64(t)?)?);
                }
                m + lip.map_or(0.0, |l| l * len / (2 * SAMPLES) as f64)
            };
            let d = sup.powf(p);
            if !d.is_finite() {
                return Err(Error::Unsupported(format!(
                    "integrand unbounded on [{a}, {b}] without a declared profile"
                )));
            }
            dens.push((d, len));
        }
        dens.sort_by(|x, y| y.0.total_cmp(&x.0));
        let mut mass = 0.0;
        let mut delta = 0.0;
        for (d, len) in dens {
            if d <= 0.0 {
                return Ok(1.0);
            }
            if mass + d * len >= budget {
                return Ok((delta + (budget - mass) / d).min(1.0));
            }
            mass += d * len;
            delta += len;
        }
        Ok(1.0)
    }

    /// Samples `η(t) = ∫_0^t γ` on the grid `t_k = k·h` and reports the
    /// largest increment `q(η(t_{k+1}) − η(t_k))` per active seminorm.
    pub fn running_integral(&self, space: &SpaceModel, curve: &Curve, step: &Rational) -> Result<RunningIntegral> {
        if *step <= crate::numeric::zero() {
            return Err(Error::invalid("grid step must be positive"));
        }
        let steps = (crate::numeric::one() / step).ceil().to_integer();
        let steps: usize = num::ToPrimitive::to_usize(&steps)
            .filter(|n| *n <= 100_000)
            .ok_or_else(|| Error::invalid("running-integral grid is too fine"))?;
        let mut times = vec![0.0];
        let mut samples = vec![space.zero()];
        let mut increments: Vec<f64> = vec![0.0; space.active().len()];
        let mut acc = space.zero();
        let mut lo = crate::numeric::zero();
        for k in 1..=steps {
            let hi = (step * crate::numeric::int(k as i64)).min(crate::numeric::one());
            let (dz, _) = self.weak_integral(space, curve, &IntervalSet::interval(lo.clone(), hi.clone())?)?;
            acc = acc.add(&dz)?;
            for (slot, q) in increments.iter_mut().zip(space.active()) {
                *slot = slot.max(space.seminorm_eval(*q, &dz)?);
            }
            times.push(to_f64(&hi));
            samples.push(acc.clone());
            lo = hi;
        }
        Ok(RunningIntegral {
            times,
            samples,
            modulus: space.active().iter().copied().zip(increments).collect(),
        })
    }
}

/// Float slack for comparisons whose exact sides agree, like the equality
/// cases of the seminorm inequalities.
const ROUNDING: f64 = 1e-12;

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::invalid(format!("exponent p must satisfy 1 ≤ p < ∞, got {p}")));
    }
    Ok(())
}

fn exact_cell(a: f64, b: f64, shapes: &[Shape], weights: &[f64], mode: Mode) -> QuadratureResult {
    let ends: Vec<(f64, f64)> = shapes
        .iter()
        .map(|s| match s {
            Shape::Affine(u, v) => (*u, *v),
            Shape::Opaque => unreachable!("exact cells are all affine"),
        })
        .collect();
    let value = match mode {
        Mode::Linear => {
            let (u, v) = weights
                .iter()
                .zip(&ends)
                .fold((0.0, 0.0), |(x, y), (w, (u, v))| (x + w * u, y + w * v));
            0.5 * (u + v) * (b - a)
        }
        Mode::Seminorm(p) => {
            let mut cuts = vec![0.0, 1.0];
            for (u, v) in &ends {
                if u * v < 0.0 {
                    cuts.push(u / (u - v));
                }
            }
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let h = |s: f64| -> f64 {
                weights
                    .iter()
                    .zip(&ends)
                    .map(|(w, (u, v))| w * (u + (v - u) * s).abs())
                    .sum()
            };
            cuts.windows(2)
                .map(|w| affine_power(h(w[0]), h(w[1]), (w[1] - w[0]) * (b - a), p))
                .sum()
        }
    };
    QuadratureResult {
        value,
        abs_error_bound: 0.0,
        cells: 1,
        method: Method::ExactPiecewise,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HbCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonotonicityCheck {
    pub lp: f64,
    pub lr: f64,
    pub slack: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunningIntegral {
    pub times: Vec<f64>,
    pub samples: Vec<Vector>,
    /// `(seminorm index, max increment)`.
    pub modulus: Vec<(usize, f64)>,
}

pub fn lp_seminorm(space: &SpaceModel, curve: &Curve, q: usize, p: f64) -> Result<QuadratureResult> {
    Quadrature::default().lp_seminorm(space, curve, q, p)
}

pub fn weak_integral(space: &SpaceModel, curve: &Curve, over: &IntervalSet) -> Result<Vector> {
    Quadrature::default().weak_integral(space, curve, over).map(|(z, _)| z)
}

pub fn hb_inequality_check(space: &SpaceModel, curve: &Curve, q: usize) -> Result<HbCheck> {
    Quadrature::default().hb_inequality_check(space, curve, q)
}

pub fn p_monotonicity_check(space: &SpaceModel, curve: &Curve, q: usize, p: f64, r: f64) -> Result<MonotonicityCheck> {
    Quadrature::default().p_monotonicity_check(space, curve, q, p, r)
}

pub fn abs_continuity_delta(space: &SpaceModel, curve: &Curve, q: usize, p: f64, budget: f64) -> Result<f64> {
    Quadrature::default().abs_continuity_delta(space, curve, q, p, budget)
}

pub fn running_integral(space: &SpaceModel, curve: &Curve, step: &Rational) -> Result<RunningIntegral> {
    Quadrature::default().running_integral(space, curve, step)
}

/// The dyadic cell `I_k = [k/2ⁿ, (k+1)/2ⁿ)`.
pub fn dyadic_cell(k: u64, level: u32) -> IntervalSet {
    IntervalSet::interval(dyadic(k, level), dyadic(k + 1, level)).expect("dyadic cell inside [0,1]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{PiecewiseContinuous, SimpleCurve};
    use crate::numeric::ratio;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    fn step(y: Vector, lo: (i64, i64), hi: (i64, i64)) -> Curve {
        let zero = y.zero_like();
        let set = IntervalSet::interval(ratio(lo.0, lo.1), ratio(hi.0, hi.1)).unwrap();
        Curve::Simple(SimpleCurve::new(zero, vec![(y, set)], vec![]).unwrap())
    }

    fn linear() -> Curve {
        let f: crate::curves::Evaluator = Arc::new(|t| Vector::coords(vec![t]));
        let lip = BTreeMap::from([(0, 1.0)]);
        Curve::PiecewiseContinuous(PiecewiseContinuous::new("linear", f, vec![], lip, true).unwrap())
    }

    fn sine() -> Curve {
        let f: crate::curves::Evaluator = Arc::new(|t| Vector::coords(vec![(std::f64::consts::PI * t).sin()]));
        Curve::PiecewiseContinuous(PiecewiseContinuous::new("sine", f, vec![], BTreeMap::new(), false).unwrap())
    }

    #[test]
    fn seminorm_examples() {
        let space = SpaceModel::finite_dim(1, vec![vec![2.0]]).unwrap();
        let zero = Curve::constant(Vector::zero_coords(1)).unwrap();
        assert_eq!(lp_seminorm(&space, &zero, 0, 2.0).unwrap().value, 0.0);

        let c = step(Vector::coords(vec![1.0]), (0, 1), (1, 4));
        let r = lp_seminorm(&space, &c, 0, 1.0).unwrap();
        assert_eq!(r.value, 0.5);
        assert_eq!(r.abs_error_bound, 0.0);
        assert_eq!(r.method, Method::ExactPiecewise);

        let pw = SpaceModel::pointwise(vec![0.5]).unwrap();
        let r = lp_seminorm(&pw, &Curve::HatPath(10), 0, 2.0).unwrap();
        assert!((r.value - (1.0f64 / 15.0).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn hat_rate_closed_form() {
        let pw = SpaceModel::pointwise(vec![0.3]).unwrap();
        let q = Quadrature::default();
        for p in [1.0, 2.0, 2.5, 3.0] {
            let r = q.lp_integral(&pw, &Curve::HatPath(7), 0, p).unwrap();
            assert!((r.value - 2.0 / (7.0 * (p + 1.0))).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn adaptive_matches_closed_form() {
        let space = SpaceModel::coordinates(1).unwrap();
        let r = Quadrature::default().lp_integral(&space, &sine(), 0, 1.0).unwrap();
        assert_eq!(r.method, Method::Adaptive);
        assert!((r.value - 2.0 / std::f64::consts::PI).abs() < 1e-10);
        assert!(r.abs_error_bound < 1e-10);
    }

    #[test]
    fn affine_curve_integrates_exactly() {
        let space = SpaceModel::coordinates(1).unwrap();
        let shifted = linear().sub(&Curve::constant(Vector::coords(vec![0.5])).unwrap());
        let r = Quadrature::default().lp_integral(&space, &shifted, 0, 1.0).unwrap();
        assert_eq!(r.method, Method::ExactPiecewise);
        assert!((r.value - 0.25).abs() < 1e-15);
    }

    #[test]
    fn weak_integral_examples() {
        let space = SpaceModel::coordinates(2).unwrap();
        let y0 = Vector::coords(vec![1.0, -2.0]);
        let c = step(y0.clone(), (1, 4), (3, 4));
        assert_eq!(weak_integral(&space, &c, &IntervalSet::unit()).unwrap(), y0.scale(0.5));

        let pw = SpaceModel::pointwise(vec![0.5, 0.05]).unwrap();
        let z = weak_integral(&pw, &Curve::HatPath(10), &IntervalSet::unit()).unwrap();
        assert!((z.eval_at(0.5).unwrap() - 0.1).abs() < 1e-12);
        // 1/n only for interior x; at 0.05 half of the hat is clipped
        assert!((z.eval_at(0.05).unwrap() - 0.0875).abs() < 1e-12);

        let z = weak_integral(&pw, &Curve::DeltaPath, &IntervalSet::unit()).unwrap();
        assert_eq!(z.eval_at(0.5).unwrap(), 0.0);
        assert_eq!(z.eval_at(0.05).unwrap(), 0.0);
    }

    #[test]
    fn running_integral_examples() {
        let space = SpaceModel::coordinates(1).unwrap();
        let c = step(Vector::coords(vec![3.0]), (0, 1), (1, 2));
        let r = running_integral(&space, &c, &ratio(1, 10)).unwrap();
        for (t, eta) in r.times.iter().zip(&r.samples) {
            assert!((eta.coord(0).unwrap() - 3.0 * t.min(0.5)).abs() < 1e-12);
        }
        assert!(r.modulus[0].1 <= 0.3 + 1e-12);

        let pw = SpaceModel::pointwise(vec![0.5]).unwrap();
        let r = running_integral(&pw, &Curve::HatPath(10), &ratio(1, 100)).unwrap();
        assert!(r.modulus[0].1 <= 0.01 + 1e-12);
    }

    #[test]
    fn hahn_banach_examples() {
        let space = SpaceModel::coordinates(2).unwrap();
        let y0 = Vector::coords(vec![1.0, -2.0]);
        let c = Curve::constant(y0.clone()).unwrap();
        let h = hb_inequality_check(&space, &c, 0).unwrap();
        assert!(h.pass && (h.lhs - h.rhs).abs() < 1e-15);

        let zero = y0.zero_like();
        let half = |lo, hi| IntervalSet::interval(ratio(lo, 2), ratio(hi, 2)).unwrap();
        let c = Curve::Simple(
            SimpleCurve::new(zero, vec![(y0.clone(), half(0, 1)), (y0.scale(-1.0), half(1, 2))], vec![]).unwrap(),
        );
        let h = hb_inequality_check(&space, &c, 0).unwrap();
        assert_eq!((h.lhs, h.rhs, h.pass), (0.0, 1.0, true));

        let pw = SpaceModel::pointwise(vec![0.5]).unwrap();
        let h = hb_inequality_check(&pw, &Curve::HatPath(10), 0).unwrap();
        assert!(h.pass && (h.lhs - 0.1).abs() < 1e-12 && (h.rhs - 0.1).abs() < 1e-12);
    }

    #[test]
    fn delta_examples() {
        let space = SpaceModel::finite_dim(1, vec![vec![2.0]]).unwrap();
        let zero = Curve::constant(Vector::zero_coords(1)).unwrap();
        assert_eq!(abs_continuity_delta(&space, &zero, 0, 1.0, 0.1).unwrap(), 1.0);
        let c = step(Vector::coords(vec![1.0]), (0, 1), (1, 4));
        let d = abs_continuity_delta(&space, &c, 0, 1.0, 0.1).unwrap();
        assert!((d - 0.05).abs() < 1e-15);
        let d = abs_continuity_delta(&space, &linear(), 0, 2.0, 0.1).unwrap();
        assert!((d - 0.1 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn monotonicity_examples() {
        let space = SpaceModel::coordinates(1).unwrap();
        let c = step(Vector::coords(vec![1.0]), (0, 1), (1, 4));
        let m = p_monotonicity_check(&space, &c, 0, 1.0, 2.0).unwrap();
        assert!(m.pass && m.lp == 0.25 && m.lr == 0.5);
        let pw = SpaceModel::pointwise(vec![0.5]).unwrap();
        let m = p_monotonicity_check(&pw, &Curve::HatPath(10), 0, 1.0, 2.0).unwrap();
        assert!(m.pass && (m.lr - 0.2582).abs() < 1e-4);
        assert!(p_monotonicity_check(&pw, &Curve::HatPath(10), 0, 2.0, 1.0).is_err());
    }

    #[test]
    fn delta_path_is_null() {
        let pw = SpaceModel::pointwise(vec![0.25, 0.5, 0.75]).unwrap();
        for q in 0..3 {
            assert_eq!(lp_seminorm(&pw, &Curve::DeltaPath, q, 1.5).unwrap().value, 0.0);
        }
    }

    #[test]
    fn undeclared_singularity_fails() {
        let f: crate::curves::Evaluator = Arc::new(|t| Vector::coords(vec![1.0 / (t - 0.3)]));
        let c = Curve::PiecewiseContinuous(PiecewiseContinuous::new("pole", f, vec![], BTreeMap::new(), false).unwrap());
        let space = SpaceModel::coordinates(1).unwrap();
        let q = Quadrature { tol: 1e-10, max_cells: 10_000 };
        assert!(matches!(q.lp_integral(&space, &c, 0, 1.0), Err(Error::NonConvergent { .. })));
    }
}
