//! Locally convex spaces modelled as seminorm families over concrete vectors.
//!
//! Two models are provided: `ℝ^d` with nonnegatively weighted absolute
//! coordinate seminorms, and the pointwise space `ℝ^ℝ` restricted to finite
//! combinations of indicator and hat primitives, whose topology comes from
//! the point seminorms `q_x(f) = |f(x)|`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// A primitive of the pointwise space `ℝ^ℝ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Primitive {
    /// `x ↦ 1` if `x == at`, else `0`.
    Indicator(f64),
    /// `x ↦ max{1 - steepness·|x - center|, 0}`.
    Hat { center: f64, steepness: f64 },
}

impl Primitive {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Primitive::Indicator(at) => {
                if x == at {
                    1.0
                } else {
                    0.0
                }
            }
            Primitive::Hat { center, steepness } => (1.0 - steepness * (x - center).abs()).max(0.0),
        }
    }

    fn key(&self) -> (u8, f64, f64) {
        match *self {
            Primitive::Indicator(at) => (0, at, 0.0),
            Primitive::Hat { center, steepness } => (1, center, steepness),
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.key(), other.key());
        a.0.cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
    }
}

/// An element of one of the two space models.
///
/// Pointwise vectors are kept normalised: primitives sorted, duplicates
/// merged, zero coefficients dropped. The empty combination is the zero
/// function.
#[derive(Clone, Debug, PartialEq)]
pub enum Vector {
    Coords(Vec<f64>),
    Pointwise(Vec<(Primitive, f64)>),
}

fn normalize_terms(mut terms: Vec<(Primitive, f64)>) -> Vec<(Primitive, f64)> {
    terms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(Primitive, f64)> = Vec::with_capacity(terms.len());
    for (p, c) in terms {
        match out.last_mut() {
            Some((q, acc)) if q.total_cmp(&p) == Ordering::Equal => *acc += c,
            _ => out.push((p, c)),
        }
    }
    out.retain(|(_, c)| *c != 0.0);
    out
}

impl Vector {
    pub fn coords(values: Vec<f64>) -> Self {
        Vector::Coords(values)
    }

    pub fn zero_coords(dim: usize) -> Self {
        Vector::Coords(vec![0.0; dim])
    }

    pub fn zero_pointwise() -> Self {
        Vector::Pointwise(Vec::new())
    }

    pub fn indicator(at: f64) -> Self {
        Vector::Pointwise(vec![(Primitive::Indicator(at), 1.0)])
    }

    pub fn hat(center: f64, steepness: f64) -> Result<Self> {
        if !(steepness > 0.0 && steepness.is_finite() && center.is_finite()) {
            return Err(Error::invalid(format!(
                "hat needs finite center and positive steepness, got ({center}, {steepness})"
            )));
        }
        Ok(Vector::Pointwise(vec![(
            Primitive::Hat { center, steepness },
            1.0,
        )]))
    }

    /// A pointwise combination from raw terms.
    pub fn combination(terms: Vec<(Primitive, f64)>) -> Self {
        Vector::Pointwise(normalize_terms(terms))
    }

    /// The zero of the same model (same dimension for coordinates).
    pub fn zero_like(&self) -> Self {
        match self {
            Vector::Coords(c) => Vector::zero_coords(c.len()),
            Vector::Pointwise(_) => Vector::zero_pointwise(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Vector::Coords(c) => c.iter().all(|x| *x == 0.0),
            Vector::Pointwise(t) => t.is_empty(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Vector::Coords(_) => "finite-dim",
            Vector::Pointwise(_) => "pointwise",
        }
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        match (self, other) {
            (Vector::Coords(a), Vector::Coords(b)) => {
                if a.len() != b.len() {
                    return Err(Error::SpaceMismatch(format!(
                        "dimensions {} and {}",
                        a.len(),
                        b.len()
                    )));
                }
                Ok(Vector::Coords(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
            (Vector::Pointwise(a), Vector::Pointwise(b)) => Ok(Vector::Pointwise(
                normalize_terms(a.iter().chain(b.iter()).copied().collect()),
            )),
            _ => Err(Error::SpaceMismatch(format!(
                "{} + {}",
                self.kind(),
                other.kind()
            ))),
        }
    }

    pub fn scale(&self, alpha: f64) -> Vector {
        match self {
            Vector::Coords(a) => Vector::Coords(a.iter().map(|x| alpha * x).collect()),
            Vector::Pointwise(t) => Vector::Pointwise(normalize_terms(
                t.iter().map(|(p, c)| (*p, alpha * c)).collect(),
            )),
        }
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.add(&other.scale(-1.0))
    }

    /// Evaluates a pointwise vector, viewed as a function `ℝ → ℝ`, at `x`.
    pub fn eval_at(&self, x: f64) -> Result<f64> {
        match self {
            Vector::Pointwise(t) => Ok(t.iter().map(|(p, c)| c * p.eval(x)).sum()),
            Vector::Coords(_) => Err(Error::Unsupported(
                "point evaluation of a finite-dimensional vector".into(),
            )),
        }
    }

    pub fn coord(&self, j: usize) -> Result<f64> {
        match self {
            Vector::Coords(c) => c.get(j).copied().ok_or_else(|| {
                Error::SpaceMismatch(format!("coordinate {j} of a {}-vector", c.len()))
            }),
            Vector::Pointwise(_) => Err(Error::Unsupported(
                "coordinate of a pointwise vector".into(),
            )),
        }
    }
}

// Bitwise hashing, consistent with `PartialEq` once `-0.0` is folded into `0.0`.
impl Eq for Vector {}

impl Hash for Vector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        fn bits(x: f64) -> u64 {
            if x == 0.0 {
                0
            } else {
                x.to_bits()
            }
        }
        match self {
            Vector::Coords(c) => {
                0u8.hash(state);
                c.iter().for_each(|x| bits(*x).hash(state));
            }
            Vector::Pointwise(t) => {
                1u8.hash(state);
                for (p, c) in t {
                    let (k, a, b) = p.key();
                    (k, bits(a), bits(b), bits(*c)).hash(state);
                }
            }
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vector::Coords(c) => {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Vector::Pointwise(t) if t.is_empty() => write!(f, "0"),
            Vector::Pointwise(t) => {
                for (i, (p, c)) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    match p {
                        Primitive::Indicator(at) => write!(f, "{c}·δ[{at}]")?,
                        Primitive::Hat { center, steepness } => {
                            write!(f, "{c}·hat[{center}; {steepness}]")?
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// Continuous linear functional: a coefficient pairing on `ℝ^d`, or a finite
/// combination `Σ a_k π_{x_k}` of point evaluations on `ℝ^ℝ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    form: FunctionalForm,
    /// Seminorm index `i` with `|f(v)| ≤ q_i(v)` for all `v`, when known.
    pub dominated_by: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionalForm {
    Coefficients(Vec<f64>),
    PointEvals(Vec<(f64, f64)>),
}

impl Functional {
    pub fn coefficients(c: Vec<f64>) -> Self {
        Self {
            form: FunctionalForm::Coefficients(c),
            dominated_by: None,
        }
    }

    pub fn coordinate(dim: usize, j: usize) -> Self {
        let mut c = vec![0.0; dim];
        c[j] = 1.0;
        Self::coefficients(c)
    }

    /// `π_x`.
    pub fn point_eval(x: f64) -> Self {
        Self::point_evals(vec![(x, 1.0)])
    }

    /// `Σ coef·π_point`.
    pub fn point_evals(terms: Vec<(f64, f64)>) -> Self {
        Self {
            form: FunctionalForm::PointEvals(terms),
            dominated_by: None,
        }
    }

    pub fn form(&self) -> &FunctionalForm {
        &self.form
    }

    pub fn apply(&self, v: &Vector) -> Result<f64> {
        match (&self.form, v) {
            (FunctionalForm::Coefficients(c), Vector::Coords(x)) => {
                if c.len() != x.len() {
                    return Err(Error::SpaceMismatch(format!(
                        "functional of dimension {} on a {}-vector",
                        c.len(),
                        x.len()
                    )));
                }
                Ok(c.iter().zip(x).map(|(a, b)| a * b).sum())
            }
            (FunctionalForm::PointEvals(terms), Vector::Pointwise(_)) => terms
                .iter()
                .map(|(x, a)| v.eval_at(*x).map(|y| a * y))
                .sum(),
            _ => Err(Error::SpaceMismatch(format!(
                "functional applied to a {} vector",
                v.kind()
            ))),
        }
    }
}

/// A single continuous seminorm of a space model.
#[derive(Clone, Debug, PartialEq)]
pub enum Seminorm {
    /// `q(v) = Σ_j w_j |v_j|` with `w_j ≥ 0`.
    Weighted(Vec<f64>),
    /// `q_x(f) = |f(x)|`.
    Point(f64),
}

impl Seminorm {
    /// Writes `q = Σ w·|f|` over functionals `f`; every seminorm in both models
    /// has this shape, which is what quadrature exploits.
    pub fn components(&self) -> Vec<(f64, Functional)> {
        match self {
            Seminorm::Weighted(w) => w
                .iter()
                .enumerate()
                .filter(|(_, wj)| **wj > 0.0)
                .map(|(j, wj)| (*wj, Functional::coordinate(w.len(), j)))
                .collect(),
            Seminorm::Point(x) => vec![(1.0, Functional::point_eval(*x))],
        }
    }

    pub fn eval(&self, v: &Vector) -> Result<f64> {
        match (self, v) {
            (Seminorm::Weighted(w), Vector::Coords(c)) if w.len() == c.len() => {
                Ok(w.iter().zip(c).map(|(a, b)| a * b.abs()).sum())
            }
            (Seminorm::Point(x), Vector::Pointwise(_)) => Ok(v.eval_at(*x)?.abs()),
            _ => Err(Error::SpaceMismatch(format!(
                "seminorm {self:?} on a {} vector",
                v.kind()
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum SpaceKind {
    FiniteDim { dim: usize },
    Pointwise,
}

/// A seminorm family over one of the concrete vector models, with an explicit
/// list of active seminorm indices. Computations never range over more than
/// the active indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceModel {
    kind: SpaceKind,
    seminorms: Vec<Seminorm>,
    active: Vec<usize>,
}

impl SpaceModel {
    /// `ℝ^d` with the given weight rows as seminorms, all active.
    pub fn finite_dim(dim: usize, weights: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        for (i, w) in weights.iter().enumerate() {
            if w.len() != dim || w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                return Err(Error::invalid(format!(
                    "seminorm {i} needs {dim} nonnegative weights"
                )));
            }
        }
        let active = (0..weights.len()).collect();
        Ok(Self {
            kind: SpaceKind::FiniteDim { dim },
            seminorms: weights.into_iter().map(Seminorm::Weighted).collect(),
            active,
        })
    }

    /// `ℝ^d` with the coordinate seminorms `|v_j|`.
    pub fn coordinates(dim: usize) -> Result<Self> {
        let weights = (0..dim)
            .map(|j| {
                let mut w = vec![0.0; dim];
                w[j] = 1.0;
                w
            })
            .collect();
        Self::finite_dim(dim, weights)
    }

    /// `ℝ^ℝ` with active point seminorms `q_x` for the given points.
    pub fn pointwise(points: Vec<f64>) -> Result<Self> {
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("evaluation points must be finite"));
        }
        let active = (0..points.len()).collect();
        Ok(Self {
            kind: SpaceKind::Pointwise,
            seminorms: points.into_iter().map(Seminorm::Point).collect(),
            active,
        })
    }

    /// Restricts the active seminorms.
    pub fn with_active(mut self, active: Vec<usize>) -> Result<Self> {
        if let Some(bad) = active.iter().find(|i| **i >= self.seminorms.len()) {
            return Err(Error::UnknownSeminorm {
                index: *bad,
                active: self.seminorms.len(),
            });
        }
        self.active = active;
        Ok(self)
    }

    pub fn is_pointwise(&self) -> bool {
        matches!(self.kind, SpaceKind::Pointwise)
    }

    pub fn dim(&self) -> Option<usize> {
        match self.kind {
            SpaceKind::FiniteDim { dim } => Some(dim),
            SpaceKind::Pointwise => None,
        }
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn zero(&self) -> Vector {
        match self.kind {
            SpaceKind::FiniteDim { dim } => Vector::zero_coords(dim),
            SpaceKind::Pointwise => Vector::zero_pointwise(),
        }
    }

    pub fn seminorm(&self, i: usize) -> Result<&Seminorm> {
        if !self.active.contains(&i) {
            return Err(Error::UnknownSeminorm {
                index: i,
                active: self.active.len(),
            });
        }
        Ok(&self.seminorms[i])
    }

    /// `q_i(v)`.
    pub fn seminorm_eval(&self, i: usize, v: &Vector) -> Result<f64> {
        self.check(v)?;
        self.seminorm(i)?.eval(v)
    }

    /// Short column label, `q0` or `x=0.5`.
    pub fn seminorm_label(&self, i: usize) -> String {
        match self.seminorms.get(i) {
            Some(Seminorm::Point(x)) => format!("x={x}"),
            _ => format!("q{i}"),
        }
    }

    /// Checks that `v` belongs to this model.
    pub fn check(&self, v: &Vector) -> Result<()> {
        match (&self.kind, v) {
            (SpaceKind::FiniteDim { dim }, Vector::Coords(c)) if c.len() == *dim => Ok(()),
            (SpaceKind::Pointwise, Vector::Pointwise(_)) => Ok(()),
            _ => Err(Error::SpaceMismatch(format!(
                "{} vector in a {} space",
                v.kind(),
                if self.is_pointwise() {
                    "pointwise"
                } else {
                    "finite-dim"
                }
            ))),
        }
    }

    /// The functionals against which weak integrals are tested: coordinate
    /// forms on `ℝ^d`, point evaluations at the active points on `ℝ^ℝ`.
    pub fn generating_functionals(&self) -> Vec<Functional> {
        match self.kind {
            SpaceKind::FiniteDim { dim } => (0..dim)
                .map(|j| {
                    let mut f = Functional::coordinate(dim, j);
                    f.dominated_by = self.active.iter().copied().find(|&i| {
                        matches!(&self.seminorms[i], Seminorm::Weighted(w) if w[j] >= 1.0)
                    });
                    f
                })
                .collect(),
            SpaceKind::Pointwise => self
                .active
                .iter()
                .map(|&i| {
                    let x = match self.seminorms[i] {
                        Seminorm::Point(x) => x,
                        Seminorm::Weighted(_) => unreachable!("pointwise model"),
                    };
                    let mut f = Functional::point_eval(x);
                    f.dominated_by = Some(i);
                    f
                })
                .collect(),
        }
    }

    /// Active evaluation points of the pointwise model.
    pub fn points(&self) -> Vec<f64> {
        self.active
            .iter()
            .filter_map(|&i| match self.seminorms[i] {
                Seminorm::Point(x) => Some(x),
                Seminorm::Weighted(_) => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    #[test]
    fn seminorm_eval_examples() {
        let s = SpaceModel::pointwise(vec![0.5]).unwrap();
        assert_eq!(s.seminorm_eval(0, &Vector::zero_pointwise()).unwrap(), 0.0);
        let h = Vector::hat(0.55, 10.0).unwrap();
        assert!(close(s.seminorm_eval(0, &h).unwrap(), 0.5));

        let s = SpaceModel::pointwise(vec![0.2]).unwrap();
        let d = Vector::indicator(0.2).sub(&Vector::indicator(0.3)).unwrap();
        assert_eq!(s.seminorm_eval(0, &d).unwrap(), 1.0);
    }

    #[test]
    fn unknown_seminorm_is_an_error() {
        let s = SpaceModel::coordinates(2).unwrap().with_active(vec![1]).unwrap();
        let v = Vector::coords(vec![1.0, 2.0]);
        assert!(matches!(
            s.seminorm_eval(0, &v),
            Err(Error::UnknownSeminorm { index: 0, .. })
        ));
        assert_eq!(s.seminorm_eval(1, &v).unwrap(), 2.0);
    }

    #[test]
    fn vector_arithmetic_normalizes() {
        let h = Vector::hat(0.5, 10.0).unwrap();
        assert_eq!(h.add(&Vector::zero_pointwise()).unwrap(), h);
        assert_eq!(h.scale(2.0).eval_at(0.5).unwrap(), 2.0);
        let twice = h.add(&h).unwrap();
        match &twice {
            Vector::Pointwise(t) => assert_eq!(t.len(), 1),
            _ => unreachable!(),
        }
        for x in [0.3, 0.45, 0.5, 0.52, 0.9] {
            assert!(close(twice.eval_at(x).unwrap(), 2.0 * h.eval_at(x).unwrap()));
        }
        assert!(h.sub(&h).unwrap().is_zero());
    }

    #[test]
    fn mixed_kinds_are_rejected() {
        let a = Vector::coords(vec![1.0]);
        let b = Vector::indicator(0.1);
        assert!(matches!(a.add(&b), Err(Error::SpaceMismatch(_))));
        assert!(Vector::coords(vec![1.0]).add(&Vector::coords(vec![1.0, 2.0])).is_err());
        assert!(Vector::hat(0.5, 0.0).is_err());
    }

    #[test]
    fn functional_examples() {
        let f = Functional::point_eval(0.3);
        assert_eq!(f.apply(&Vector::indicator(0.3)).unwrap(), 1.0);
        assert!(close(f.apply(&Vector::hat(0.25, 20.0).unwrap()).unwrap(), 0.0));
        let g = Functional::point_evals(vec![(0.1, 2.0), (0.9, 1.0)]);
        assert_eq!(g.apply(&Vector::hat(0.1, 5.0).unwrap()).unwrap(), 2.0);
        assert!(Functional::coordinate(2, 0).apply(&Vector::indicator(0.3)).is_err());
    }

    #[test]
    fn point_functionals_attain_their_seminorm() {
        let s = SpaceModel::pointwise(vec![0.25, 0.75]).unwrap();
        let v = Vector::hat(0.3, 4.0)
            .unwrap()
            .add(&Vector::indicator(0.75).scale(-3.0))
            .unwrap();
        for f in s.generating_functionals() {
            let i = f.dominated_by.unwrap();
            assert_eq!(f.apply(&v).unwrap().abs(), s.seminorm_eval(i, &v).unwrap());
        }
    }
}
