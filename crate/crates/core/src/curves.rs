//! Curves `[0,1] → E` and machine-checkable Lusin certificates for them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num::traits::Zero;

use crate::borel::{inner_compact, inner_compact_cells, CompactSet, IntervalSet};
use crate::error::{Error, Result};
use crate::lcs::{SpaceModel, Vector};
use crate::numeric::{format_rational, from_f64, int, one, to_f64, zero, Rational};

pub type Evaluator = Arc<dyn Fn(f64) -> Vector + Send + Sync>;

/// `Σ y_i χ_{A_i}` with pairwise disjoint `A_i`, plus finitely many point
/// values ("atoms") that override the pieces on a null set.
///
/// The representation is canonical: pieces with equal vectors are merged,
/// zero pieces and redundant atoms are dropped, so structural equality is
/// equality of functions.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleCurve {
    zero: Vector,
    pieces: Vec<(Vector, IntervalSet)>,
    atoms: BTreeMap<Rational, Vector>,
    index: Vec<(Rational, Rational, usize)>,
}

impl SimpleCurve {
    pub fn new(
        zero: Vector,
        pieces: Vec<(Vector, IntervalSet)>,
        atoms: Vec<(Rational, Vector)>,
    ) -> Result<Self> {
        if !zero.is_zero() {
            return Err(Error::invalid("simple curve needs a zero vector template"));
        }
        let mut raw: Vec<(Vector, Vec<(Rational, Rational)>)> = Vec::new();
        let mut slot: HashMap<Vector, usize> = HashMap::new();
        let mut total = zero_measure();
        let mut all = Vec::new();
        for (v, set) in pieces {
            zero.add(&v)?;
            if set.is_empty() {
                continue;
            }
            total += set.measure();
            all.extend(set.pieces().iter().cloned());
            if v.is_zero() {
                continue;
            }
            let i = *slot.entry(v.clone()).or_insert_with(|| {
                raw.push((v, Vec::new()));
                raw.len() - 1
            });
            raw[i].1.extend(set.pieces().iter().cloned());
        }
        if IntervalSet::from_pieces(all)?.measure() != total {
            return Err(Error::invalid("simple curve pieces overlap"));
        }
        let mut groups = raw
            .into_iter()
            .map(|(v, p)| Ok((v, IntervalSet::from_pieces(p)?)))
            .collect::<Result<Vec<_>>>()?;
        groups.retain(|(v, _)| !v.is_zero());
        groups.sort_by(|a, b| a.1.pieces()[0].0.cmp(&b.1.pieces()[0].0));

        let mut index: Vec<(Rational, Rational, usize)> = groups
            .iter()
            .enumerate()
            .flat_map(|(i, (_, s))| s.pieces().iter().map(move |(lo, hi)| (lo.clone(), hi.clone(), i)))
            .collect();
        index.sort();

        let mut curve = Self {
            zero,
            pieces: groups,
            atoms: BTreeMap::new(),
            index,
        };
        let mut kept = BTreeMap::new();
        for (t, v) in atoms {
            curve.zero.add(&v)?;
            if t < zero_measure() || t > one() {
                return Err(Error::Domain(to_f64(&t)));
            }
            if let Some(prev) = kept.get(&t) {
                if *prev != v {
                    return Err(Error::invalid(format!(
                        "conflicting atoms at {}",
                        format_rational(&t)
                    )));
                }
            }
            if *curve.piece_value(&t) != v {
                kept.insert(t, v);
            }
        }
        curve.atoms = kept;
        Ok(curve)
    }

    /// The constant curve `y` on `[0,1]` (as `y χ_{[0,1)}` plus an atom at 1).
    pub fn constant(y: Vector) -> Result<Self> {
        let zero = y.zero_like();
        Self::new(zero, vec![(y.clone(), IntervalSet::unit())], vec![(one(), y)])
    }

    pub fn zero_vector(&self) -> &Vector {
        &self.zero
    }

    pub fn pieces(&self) -> &[(Vector, IntervalSet)] {
        &self.pieces
    }

    pub fn atoms(&self) -> &BTreeMap<Rational, Vector> {
        &self.atoms
    }

    /// Half-open elementary intervals with their piece values, sorted.
    pub(crate) fn intervals(&self) -> impl Iterator<Item = (&Rational, &Rational, &Vector)> {
        self.index
            .iter()
            .map(move |(lo, hi, i)| (lo, hi, &self.pieces[*i].0))
    }

    fn piece_value(&self, t: &Rational) -> &Vector {
        let idx = self.index.partition_point(|(lo, _, _)| lo <= t);
        if idx > 0 {
            let (_, hi, i) = &self.index[idx - 1];
            if t < hi {
                return &self.pieces[*i].0;
            }
        }
        &self.zero
    }

    pub fn value_at(&self, t: &Rational) -> &Vector {
        self.atoms.get(t).unwrap_or_else(|| self.piece_value(t))
    }

    /// Sorted piece endpoints and atom locations.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut pts: BTreeSet<Rational> = BTreeSet::new();
        for (lo, hi, _) in &self.index {
            pts.insert(lo.clone());
            pts.insert(hi.clone());
        }
        pts.extend(self.atoms.keys().cloned());
        pts.into_iter().collect()
    }

    /// `∫_over β = Σ λ(A_i ∩ over) y_i`, exact in the measures.
    pub fn integral(&self, over: &IntervalSet) -> Result<Vector> {
        let mut acc = self.zero.clone();
        for (v, set) in &self.pieces {
            let m = set.intersect(over).measure();
            if !m.is_zero() {
                acc = acc.add(&v.scale(to_f64(&m)))?;
            }
        }
        Ok(acc)
    }

    /// `β` is constant on every closed piece of `K`; since the pieces of `K`
    /// are separated by positive gaps this makes `β|_K` continuous.
    pub fn is_locally_constant_on(&self, compact: &CompactSet) -> bool {
        let breaks = self.breakpoints();
        compact.pieces().iter().all(|(a, b)| {
            let base = self.value_at(a);
            let start = breaks.partition_point(|e| e <= a);
            breaks[start..]
                .iter()
                .take_while(|e| *e <= b)
                .all(|e| self.value_at(e) == base)
        })
    }

    /// `β · χ_K`.
    pub fn restrict_to(&self, compact: &CompactSet) -> Result<SimpleCurve> {
        let support = compact.to_interval_set();
        let pieces = self
            .pieces
            .iter()
            .map(|(v, s)| (v.clone(), s.intersect(&support)))
            .collect();
        let mut atoms: Vec<(Rational, Vector)> = compact
            .pieces()
            .iter()
            .map(|(_, b)| (b.clone(), self.value_at(b).clone()))
            .collect();
        atoms.extend(
            self.atoms
                .iter()
                .filter(|(t, _)| compact.contains(t))
                .map(|(t, v)| (t.clone(), v.clone())),
        );
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        atoms.dedup_by(|a, b| a.0 == b.0);
        SimpleCurve::new(self.zero.clone(), pieces, atoms)
    }
}

fn zero_measure() -> Rational {
    zero()
}

/// A curve given by a registered evaluator, continuous between declared
/// breakpoints and right-continuous at them.
#[derive(Clone)]
pub struct PiecewiseContinuous {
    name: String,
    evaluator: Evaluator,
    breakpoints: Vec<f64>,
    lipschitz: BTreeMap<usize, f64>,
    affine: bool,
}

impl PiecewiseContinuous {
    /// `affine` declares that every functional composed with the curve is
    /// affine in `t` between breakpoints, which lets quadrature integrate it
    /// exactly.
    pub fn new(
        name: impl Into<String>,
        evaluator: Evaluator,
        mut breakpoints: Vec<f64>,
        lipschitz: BTreeMap<usize, f64>,
        affine: bool,
    ) -> Result<Self> {
        if breakpoints.iter().any(|b| !(0.0..=1.0).contains(b)) {
            return Err(Error::invalid("breakpoints must lie in [0,1]"));
        }
        if lipschitz.values().any(|l| !(l.is_finite() && *l >= 0.0)) {
            return Err(Error::invalid("Lipschitz constants must be finite and nonnegative"));
        }
        breakpoints.sort_by(f64::total_cmp);
        breakpoints.dedup();
        breakpoints.retain(|b| *b > 0.0 && *b < 1.0);
        Ok(Self {
            name: name.into(),
            evaluator,
            breakpoints,
            lipschitz,
            affine,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    pub fn lipschitz(&self, q: usize) -> Option<f64> {
        self.lipschitz.get(&q).copied()
    }

    pub fn eval(&self, t: f64) -> Vector {
        (self.evaluator)(t)
    }
}

impl fmt::Debug for PiecewiseContinuous {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PiecewiseContinuous")
            .field("name", &self.name)
            .field("breakpoints", &self.breakpoints)
            .field("lipschitz", &self.lipschitz)
            .field("affine", &self.affine)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum Curve {
    Simple(SimpleCurve),
    PiecewiseContinuous(PiecewiseContinuous),
    /// `t ↦ Hat(t, n)` in the pointwise space.
    HatPath(u32),
    /// `t ↦ Indicator(t)` in the pointwise space.
    DeltaPath,
    /// `Σ c_i γ_i`.
    Combination(Vec<(f64, Curve)>),
}

fn check_domain(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain(t))
    }
}

impl Curve {
    pub fn hat_path(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("hat path steepness must be a positive integer"));
        }
        Ok(Curve::HatPath(n))
    }

    pub fn constant(y: Vector) -> Result<Self> {
        SimpleCurve::constant(y).map(Curve::Simple)
    }

    pub fn sub(&self, other: &Curve) -> Curve {
        Curve::Combination(vec![(1.0, self.clone()), (-1.0, other.clone())])
    }

    pub fn add(&self, other: &Curve) -> Curve {
        Curve::Combination(vec![(1.0, self.clone()), (1.0, other.clone())])
    }

    pub fn scale(&self, alpha: f64) -> Curve {
        Curve::Combination(vec![(alpha, self.clone())])
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Curve::Simple(_) => "simple",
            Curve::PiecewiseContinuous(_) => "piecewise",
            Curve::HatPath(_) => "hat_path",
            Curve::DeltaPath => "delta_path",
            Curve::Combination(_) => "combination",
        }
    }

    /// `γ(t)` at an exact point.
    pub fn eval(&self, t: &Rational) -> Result<Vector> {
        if *t < zero() || *t > one() {
            return Err(Error::Domain(to_f64(t)));
        }
        match self {
            Curve::Simple(s) => Ok(s.value_at(t).clone()),
            Curve::Combination(terms) => combine(terms, |c| c.eval(t)),
            _ => self.eval_f64(to_f64(t)),
        }
    }

    /// `γ(t)` at a float point; simple curves compare it exactly.
    pub fn eval_f64(&self, t: f64) -> Result<Vector> {
        check_domain(t)?;
        match self {
            Curve::Simple(s) => Ok(s.value_at(&from_f64(t)?).clone()),
            Curve::PiecewiseContinuous(p) => Ok(p.eval(t)),
            Curve::HatPath(n) => Vector::hat(t, *n as f64),
            Curve::DeltaPath => Ok(Vector::indicator(t)),
            Curve::Combination(terms) => combine(terms, |c| c.eval_f64(t)),
        }
    }

    /// Points where the curve may jump (or where a simple curve changes value).
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out: Vec<f64> = match self {
            Curve::Simple(s) => s.breakpoints().iter().map(to_f64).collect(),
            Curve::PiecewiseContinuous(p) => p.breakpoints.clone(),
            Curve::HatPath(_) => Vec::new(),
            // discontinuous everywhere; no finite list describes it
            Curve::DeltaPath => Vec::new(),
            Curve::Combination(terms) => terms.iter().flat_map(|(_, c)| c.breakpoints()).collect(),
        };
        out.sort_by(f64::total_cmp);
        out.dedup();
        out.retain(|b| *b > 0.0 && *b < 1.0);
        out
    }

    /// Declared or structural Lipschitz constant of `t ↦ γ(t)` in seminorm
    /// `q` between breakpoints.
    pub fn lipschitz(&self, space: &SpaceModel, q: usize) -> Option<f64> {
        match self {
            Curve::Simple(_) | Curve::DeltaPath => None,
            Curve::PiecewiseContinuous(p) => p.lipschitz(q),
            Curve::HatPath(n) => match space.seminorm(q).ok()? {
                crate::lcs::Seminorm::Point(_) => Some(*n as f64),
                crate::lcs::Seminorm::Weighted(_) => None,
            },
            Curve::Combination(terms) => terms.iter().try_fold(0.0, |acc, (c, curve)| {
                let l = match curve {
                    Curve::Simple(s) if s.pieces().is_empty() && s.atoms().is_empty() => 0.0,
                    _ => curve.lipschitz(space, q)?,
                };
                Some(acc + c.abs() * l)
            }),
        }
    }

    /// Checks that the curve takes values in `space`.
    pub fn check_space(&self, space: &SpaceModel) -> Result<()> {
        match self {
            Curve::Simple(s) => space.check(s.zero_vector()),
            Curve::HatPath(_) | Curve::DeltaPath => space.check(&Vector::zero_pointwise()),
            Curve::PiecewiseContinuous(p) => space.check(&p.eval(0.0)),
            Curve::Combination(terms) => terms.iter().try_for_each(|(_, c)| c.check_space(space)),
        }
    }
}

fn combine(terms: &[(f64, Curve)], mut eval: impl FnMut(&Curve) -> Result<Vector>) -> Result<Vector> {
    let mut iter = terms.iter();
    let Some((c0, first)) = iter.next() else {
        return Err(Error::invalid("empty combination has no model to take zero from"));
    };
    let mut acc = eval(first)?.scale(*c0);
    for (c, curve) in iter {
        acc = acc.add(&eval(curve)?.scale(*c))?;
    }
    Ok(acc)
}

/// Observed uniform-continuity modulus of `γ|_K` on a grid: for each bucket
/// radius `δ`, the largest `q(γ(s) - γ(t))` over grid points `|s - t| ≤ δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulusTable {
    pub seminorm: usize,
    pub step: f64,
    pub rows: Vec<(f64, f64)>,
}

impl ModulusTable {
    /// Largest bucket radius whose observed modulus stays below `eps`.
    pub fn radius_for(&self, eps: f64) -> Option<f64> {
        self.rows
            .iter()
            .filter(|(_, m)| *m < eps)
            .map(|(d, _)| *d)
            .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.max(d))))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    /// Structural: the simple curve is constant on each closed piece of `K`.
    Exact,
    /// Grid witness tables, one per certified seminorm.
    GridChecked(Vec<ModulusTable>),
    /// Compact set built, continuity not yet witnessed.
    Unchecked,
}

/// A compact `K` with `λ([0,1] \ K) < eps` (or `K = [0,1]` when `eps = 0`),
/// plus evidence that the curve restricted to `K` is continuous.
#[derive(Clone, Debug, PartialEq)]
pub struct LusinCertificate {
    compact: CompactSet,
    eps: Rational,
    evidence: Evidence,
}

impl LusinCertificate {
    pub fn new(compact: CompactSet, eps: Rational, evidence: Evidence) -> Result<Self> {
        let missing = compact.complement_measure();
        let ok = missing < eps || (eps.is_zero() && missing.is_zero());
        if !ok {
            return Err(Error::invalid(format!(
                "λ([0,1] \\ K) = {} does not meet the claimed bound {}",
                format_rational(&missing),
                format_rational(&eps)
            )));
        }
        Ok(Self {
            compact,
            eps,
            evidence,
        })
    }

    pub fn full() -> Self {
        Self {
            compact: CompactSet::full(),
            eps: zero(),
            evidence: Evidence::Exact,
        }
    }

    pub fn compact(&self) -> &CompactSet {
        &self.compact
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn evidence(&self) -> &Evidence {
        &self.evidence
    }

    pub fn table(&self, q: usize) -> Option<&ModulusTable> {
        match &self.evidence {
            Evidence::GridChecked(t) => t.iter().find(|m| m.seminorm == q),
            _ => None,
        }
    }

    /// `λ([0,1] \ K)`.
    pub fn missing_measure(&self) -> Rational {
        self.compact.complement_measure()
    }
}

fn require_positive(eps: &Rational) -> Result<()> {
    if *eps <= zero() {
        return Err(Error::invalid("certificate budget must be positive"));
    }
    Ok(())
}

/// Certificate for `y₀ χ_A`: `K = F₁ ∪ F₂` with closed `F₁ ⊆ A`,
/// `F₂ ⊆ [0,1) \ A`, each missing less than `eps/2`.
pub fn char_certificate(y0: &Vector, set: &IntervalSet, eps: &Rational) -> Result<LusinCertificate> {
    require_positive(eps)?;
    let half = eps / int(2);
    let inside = inner_compact(set, &half)?;
    let outside = inner_compact(&set.complement(), &half)?;
    let compact = inside.union(&outside);
    debug_assert!(compact.is_clopen_trace(set));
    let _ = y0;
    LusinCertificate::new(compact, eps.clone(), Evidence::Exact)
}

/// A certificate of budget `eps` for any Lusin-measurable representable curve.
///
/// Simple curves get structural evidence; evaluator curves get `K` avoiding a
/// small left neighbourhood of every breakpoint, to be witnessed later by
/// [`certify_restriction`]. The delta path has no certificate.
pub fn lusin_certificate(curve: &Curve, eps: &Rational) -> Result<LusinCertificate> {
    require_positive(eps)?;
    match curve {
        Curve::Simple(s) => simple_certificate(s, eps),
        Curve::HatPath(_) => LusinCertificate::new(CompactSet::full(), eps.clone(), Evidence::Unchecked),
        Curve::PiecewiseContinuous(p) => {
            let mut edges = vec![zero()];
            for b in &p.breakpoints {
                edges.push(from_f64(*b)?);
            }
            edges.push(one());
            let cells: Vec<(Rational, Rational)> =
                edges.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
            let compact = if cells.len() == 1 {
                CompactSet::full()
            } else {
                inner_compact_cells(&cells, eps)?
            };
            LusinCertificate::new(compact, eps.clone(), Evidence::Unchecked)
        }
        Curve::DeltaPath => Err(Error::NotLusinMeasurable(
            "t ↦ δ_t is continuous on no compact of positive measure".into(),
        )),
        Curve::Combination(terms) => {
            let mut certs = Vec::with_capacity(terms.len());
            let mut budget = eps.clone();
            for (_, c) in terms {
                budget /= int(2);
                certs.push(lusin_certificate(c, &budget)?);
            }
            let joint = intersect_certificates(&certs)?;
            let evidence = if certs.iter().all(|c| c.evidence == Evidence::Exact) {
                Evidence::Exact
            } else {
                Evidence::Unchecked
            };
            LusinCertificate::new(joint.compact, eps.clone(), evidence)
        }
    }
}

fn simple_certificate(curve: &SimpleCurve, eps: &Rational) -> Result<LusinCertificate> {
    if curve.is_locally_constant_on(&CompactSet::full()) {
        return LusinCertificate::new(CompactSet::full(), eps.clone(), Evidence::Exact);
    }
    let mut edges: BTreeSet<Rational> = curve.breakpoints().into_iter().collect();
    edges.insert(zero());
    edges.insert(one());
    let edges: Vec<Rational> = edges.into_iter().collect();
    let cells = edges.len() - 1;
    let shrink = eps / int(20 * cells as i64);
    let mut pieces = Vec::with_capacity(cells);
    for w in edges.windows(2) {
        let lo = if curve.atoms().contains_key(&w[0]) {
            &w[0] + &shrink
        } else {
            w[0].clone()
        };
        let hi = &w[1] - &shrink;
        if lo <= hi {
            pieces.push((lo, hi));
        }
    }
    let compact = CompactSet::from_pieces(pieces)?;
    debug_assert!(curve.is_locally_constant_on(&compact));
    LusinCertificate::new(compact, eps.clone(), Evidence::Exact)
}

const MAX_GRID_POINTS: usize = 1 << 14;

fn grid_points(compact: &CompactSet, step: &Rational) -> Result<Vec<Rational>> {
    let mut pts: BTreeSet<Rational> = BTreeSet::new();
    for (a, b) in compact.pieces() {
        pts.insert(a.clone());
        pts.insert(b.clone());
        let mut k = (a / step).ceil();
        loop {
            let t = &k * step;
            if t > *b {
                break;
            }
            pts.insert(t);
            if pts.len() > MAX_GRID_POINTS {
                return Err(Error::invalid(format!(
                    "verification grid exceeds {MAX_GRID_POINTS} points"
                )));
            }
            k += one();
        }
    }
    Ok(pts.into_iter().collect())
}

/// Witnesses continuity of `γ|_K` in seminorm `q` on the grid `K ∩ hℤ` plus
/// the endpoints of `K`, with buckets `δ = h, 2h, 4h, …`.
///
/// Exact certificates of simple curves skip the grid: every bucket below the
/// smallest gap of `K` has modulus 0. Otherwise the table is attached to the
/// certificate as grid evidence.
pub fn certify_restriction(
    space: &SpaceModel,
    curve: &Curve,
    cert: &mut LusinCertificate,
    q: usize,
    step: &Rational,
) -> Result<ModulusTable> {
    require_positive(step)?;
    let seminorm = space.seminorm(q)?;
    let h = to_f64(step);
    let mut buckets = Vec::new();
    let mut d = h;
    loop {
        buckets.push(d);
        if d >= 1.0 {
            break;
        }
        d *= 2.0;
    }

    if let (Curve::Simple(s), Evidence::Exact) = (curve, &cert.evidence) {
        if s.is_locally_constant_on(&cert.compact) {
            let gap = cert.compact.min_gap().map(|g| to_f64(&g)).unwrap_or(f64::INFINITY);
            let rows: Vec<(f64, f64)> = buckets
                .iter()
                .filter(|d| **d < gap)
                .map(|d| (*d, 0.0))
                .collect();
            return Ok(ModulusTable {
                seminorm: q,
                step: h,
                rows,
            });
        }
    }

    let pts = grid_points(&cert.compact, step)?;
    let comps = seminorm.components();
    let mut values: Vec<Vec<f64>> = Vec::with_capacity(pts.len());
    for t in &pts {
        let v = curve.eval(t)?;
        values.push(
            comps
                .iter()
                .map(|(_, f)| f.apply(&v))
                .collect::<Result<Vec<f64>>>()?,
        );
    }
    let ts: Vec<f64> = pts.iter().map(to_f64).collect();
    let mut worst = vec![0.0f64; buckets.len()];
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            let dist = ts[j] - ts[i];
            let b = buckets
                .iter()
                .position(|d| dist <= d * (1.0 + 1e-12))
                .unwrap_or(buckets.len() - 1);
            let m: f64 = comps
                .iter()
                .zip(values[i].iter().zip(&values[j]))
                .map(|((w, _), (a, c))| w * (a - c).abs())
                .sum();
            if m > worst[b] {
                worst[b] = m;
            }
        }
    }
    for b in 1..worst.len() {
        worst[b] = worst[b].max(worst[b - 1]);
    }
    let table = ModulusTable {
        seminorm: q,
        step: h,
        rows: buckets.into_iter().zip(worst).collect(),
    };
    match &mut cert.evidence {
        Evidence::GridChecked(tables) => {
            tables.retain(|t| t.seminorm != q);
            tables.push(table.clone());
        }
        Evidence::Exact => {}
        e @ Evidence::Unchecked => *e = Evidence::GridChecked(vec![table.clone()]),
    }
    Ok(table)
}

/// `H = ∩ K_n` with `λ([0,1] \ H) ≤ Σ λ([0,1] \ K_n) < Σ eps_n`, checked
/// exactly. An empty family gives `[0,1]` with budget 0.
pub fn intersect_certificates(certs: &[LusinCertificate]) -> Result<LusinCertificate> {
    let Some(first) = certs.first() else {
        return Ok(LusinCertificate::full());
    };
    let compact = certs[1..]
        .iter()
        .fold(first.compact.clone(), |k, c| k.intersect(&c.compact));
    let eps = certs.iter().fold(zero(), |acc, c| acc + &c.eps);
    let missing_sum = certs.iter().fold(zero(), |acc, c| acc + c.missing_measure());
    if compact.complement_measure() > missing_sum {
        return Err(Error::invalid("subadditivity violated in certificate intersection"));
    }
    let evidence = if certs.iter().all(|c| c.evidence == Evidence::Exact) {
        Evidence::Exact
    } else {
        Evidence::Unchecked
    };
    LusinCertificate::new(compact, eps, evidence)
}

/// `q_s(δ_s - δ_{s'})`, always 1: the delta path separates every pair of
/// distinct times in the seminorm attached to one of them.
pub fn delta_separation(s: f64, s_prime: f64) -> Result<f64> {
    if s == s_prime {
        return Err(Error::invalid("separation needs two distinct points"));
    }
    let diff = Vector::indicator(s).sub(&Vector::indicator(s_prime))?;
    Ok(diff.eval_at(s)?.abs())
}

/// `q_x(γ_m(t) - γ_n(t))` at `t = x + 1/(2n)` for the hat paths, checked
/// against `|max{1 - m/(2n), 0} - 1/2|`.
pub fn hat_cauchy_gap(n: u32, m: u32, x: f64) -> Result<f64> {
    if n == 0 || m < 2 * n {
        return Err(Error::invalid(format!("need n ≥ 1 and m ≥ 2n, got n={n}, m={m}")));
    }
    let t = x + 1.0 / (2.0 * n as f64);
    if !(x > 0.0 && x < 1.0 && t > 0.0 && t < 1.0) {
        return Err(Error::invalid(format!(
            "need x and x + 1/(2n) in (0,1), got x={x}, n={n}"
        )));
    }
    let diff = Vector::hat(t, m as f64)?.sub(&Vector::hat(t, n as f64)?)?;
    let gap = diff.eval_at(x)?.abs();
    let expected = ((1.0 - m as f64 / (2.0 * n as f64)).max(0.0) - 0.5).abs();
    if (gap - expected).abs() > 1e-12 {
        return Err(Error::invalid(format!(
            "hat gap {gap} disagrees with closed form {expected}"
        )));
    }
    Ok(gap)
}

/// A subset of `[0,1]` that is finite or cofinite.
#[derive(Clone, Debug, PartialEq)]
pub enum PointSet {
    Finite(Vec<f64>),
    Cofinite(Vec<f64>),
}

impl PointSet {
    pub fn measure(&self) -> f64 {
        match self {
            PointSet::Finite(_) => 0.0,
            PointSet::Cofinite(_) => 1.0,
        }
    }

    fn intersect(self, other: PointSet) -> PointSet {
        use PointSet::*;
        let norm = |mut v: Vec<f64>| {
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        };
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(norm(a.into_iter().filter(|x| b.contains(x)).collect())),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => {
                Finite(norm(a.into_iter().filter(|x| !b.contains(x)).collect()))
            }
            (Cofinite(a), Cofinite(b)) => Cofinite(norm(a.into_iter().chain(b).collect())),
        }
    }

    pub fn label(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            PointSet::Finite(v) if v.is_empty() => "empty".into(),
            PointSet::Finite(v) => format!("finite{{{}}}", list(v)),
            PointSet::Cofinite(v) if v.is_empty() => "[0,1]".into(),
            PointSet::Cofinite(v) => format!("[0,1] minus {{{}}}", list(v)),
        }
    }
}

/// `γ⁻¹(∩ π_{x_i}⁻¹(U_i))` for the delta path and open intervals
/// `U_i = (lo_i, hi_i)`: each coordinate `π_x ∘ γ = χ_{x}` takes only the
/// values 0 and 1, so the preimage is finite or cofinite.
pub fn delta_preimage(constraints: &[(f64, (f64, f64))]) -> PointSet {
    let mut acc = PointSet::Cofinite(Vec::new());
    for &(x, (lo, hi)) in constraints {
        let has_one = lo < 1.0 && 1.0 < hi;
        let has_zero = lo < 0.0 && 0.0 < hi;
        let inside = (0.0..=1.0).contains(&x);
        let pre = match (has_zero, has_one) {
            (true, true) => PointSet::Cofinite(Vec::new()),
            (false, true) => PointSet::Finite(if inside { vec![x] } else { Vec::new() }),
            (true, false) => PointSet::Cofinite(if inside { vec![x] } else { Vec::new() }),
            (false, false) => PointSet::Finite(Vec::new()),
        };
        acc = acc.intersect(pre);
    }
    acc
}

/// Lusin compacts of positive measure contain more than one grid point; for
/// the delta path this is exactly what forces modulus 1.
pub fn grid_point_count(compact: &CompactSet, step: &Rational) -> Result<usize> {
    grid_points(compact, step).map(|p| p.len())
}
