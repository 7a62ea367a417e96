//! Exact arithmetic on finite unions of rational intervals in `[0,1]`.
//!
//! [`IntervalSet`] holds half-open pieces `[lo, hi)` and plays the role of a
//! Borel set; [`CompactSet`] holds closed pieces `[lo, hi]` separated by
//! strictly positive gaps. Every endpoint is a [`Rational`], so measures,
//! symmetric differences and regularity gaps are computed without rounding.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::numeric::{dyadic, format_rational, int, one, zero, Rational};

/// Finite disjoint union of half-open intervals `[lo, hi) ⊆ [0,1]`, sorted,
/// with adjacent pieces merged and no empty piece.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    pieces: Vec<(Rational, Rational)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `[0, 1)`.
    pub fn unit() -> Self {
        Self {
            pieces: vec![(zero(), one())],
        }
    }

    pub fn interval(lo: Rational, hi: Rational) -> Result<Self> {
        Self::from_pieces(vec![(lo, hi)])
    }

    /// Builds a set from arbitrary (possibly overlapping, unsorted) pieces.
    /// Empty pieces are dropped; endpoints must lie in `[0,1]`.
    pub fn from_pieces(pieces: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut raw: Vec<(Rational, Rational)> = Vec::new();
        for (lo, hi) in pieces {
            if lo < zero() || hi > one() {
                return Err(Error::invalid(format!(
                    "interval [{}, {}) leaves [0,1]",
                    format_rational(&lo),
                    format_rational(&hi)
                )));
            }
            if lo > hi {
                return Err(Error::invalid(format!(
                    "interval [{}, {}) has lo > hi",
                    format_rational(&lo),
                    format_rational(&hi)
                )));
            }
            if lo < hi {
                raw.push((lo, hi));
            }
        }
        Ok(Self::normalized(raw))
    }

    fn normalized(mut raw: Vec<(Rational, Rational)>) -> Self {
        raw.sort();
        let mut pieces: Vec<(Rational, Rational)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match pieces.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => pieces.push((lo, hi)),
            }
        }
        Self { pieces }
    }

    pub fn pieces(&self) -> &[(Rational, Rational)] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let idx = self.pieces.partition_point(|(lo, _)| lo <= t);
        idx > 0 && *t < self.pieces[idx - 1].1
    }

    pub fn measure(&self) -> Rational {
        self.pieces
            .iter()
            .fold(zero(), |acc, (lo, hi)| acc + (hi - lo))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::normalized(
            self.pieces
                .iter()
                .chain(other.pieces.iter())
                .cloned()
                .collect(),
        )
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (a, b) = (&self.pieces, &other.pieces);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = (&a[i].0).max(&b[j].0);
            let hi = (&a[i].1).min(&b[j].1);
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self { pieces: out }
    }

    /// Complement within `[0,1)`.
    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.pieces.len() + 1);
        let mut cursor = zero();
        for (lo, hi) in &self.pieces {
            if cursor < *lo {
                out.push((cursor.clone(), lo.clone()));
            }
            cursor = hi.clone();
        }
        if cursor < one() {
            out.push((cursor, one()));
        }
        Self { pieces: out }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    pub fn symm_diff(&self, other: &Self) -> Self {
        self.difference(other).union(&other.difference(self))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Piece endpoints rounded to the nearest float.
    pub fn to_f64_pieces(&self) -> Vec<(f64, f64)> {
        self.pieces
            .iter()
            .map(|(lo, hi)| (crate::numeric::to_f64(lo), crate::numeric::to_f64(hi)))
            .collect()
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "∅");
        }
        for (i, (lo, hi)) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "[{}, {})", format_rational(lo), format_rational(hi))?;
        }
        Ok(())
    }
}

/// Finite union of closed intervals `[lo, hi] ⊆ [0,1]` (points allowed) with
/// strictly positive gaps between consecutive pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CompactSet {
    pieces: Vec<(Rational, Rational)>,
}

impl CompactSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `[0, 1]`.
    pub fn full() -> Self {
        Self {
            pieces: vec![(zero(), one())],
        }
    }

    /// Touching or overlapping closed pieces are merged.
    pub fn from_pieces(pieces: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut raw: Vec<(Rational, Rational)> = Vec::new();
        for (lo, hi) in pieces {
            if lo < zero() || hi > one() || lo > hi {
                return Err(Error::invalid(format!(
                    "closed interval [{}, {}] is not a valid subset of [0,1]",
                    format_rational(&lo),
                    format_rational(&hi)
                )));
            }
            raw.push((lo, hi));
        }
        raw.sort();
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        Ok(Self { pieces: out })
    }

    pub fn pieces(&self) -> &[(Rational, Rational)] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let idx = self.pieces.partition_point(|(lo, _)| lo <= t);
        idx > 0 && *t <= self.pieces[idx - 1].1
    }

    pub fn measure(&self) -> Rational {
        self.pieces
            .iter()
            .fold(zero(), |acc, (lo, hi)| acc + (hi - lo))
    }

    /// `λ([0,1] \ K)`.
    pub fn complement_measure(&self) -> Rational {
        one() - self.measure()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_pieces(self.pieces.iter().chain(other.pieces.iter()).cloned())
            .expect("union of valid compact sets")
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (a, b) = (&self.pieces, &other.pieces);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = (&a[i].0).max(&b[j].0);
            let hi = (&a[i].1).min(&b[j].1);
            if lo <= hi {
                out.push((lo.clone(), hi.clone()));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self { pieces: out }
    }

    /// Smallest gap between consecutive pieces; `None` for fewer than two pieces.
    pub fn min_gap(&self) -> Option<Rational> {
        self.pieces
            .windows(2)
            .map(|w| &w[1].0 - &w[0].1)
            .min()
    }

    /// The same points up to a null set, as half-open pieces.
    pub fn to_interval_set(&self) -> IntervalSet {
        IntervalSet::normalized(
            self.pieces
                .iter()
                .filter(|(lo, hi)| lo < hi)
                .cloned()
                .collect(),
        )
    }

    /// `K ⊆ A` up to the right endpoints of closed pieces, which must still
    /// fall in `A` for genuine containment.
    pub fn is_subset_of(&self, set: &IntervalSet) -> bool {
        self.pieces.iter().all(|(lo, hi)| {
            let idx = set.pieces.partition_point(|(a, _)| a <= lo);
            idx > 0 && {
                let (_, b) = &set.pieces[idx - 1];
                hi < b
            }
        })
    }

    /// `K ∩ A` is open and closed in `K`: every closed piece of `K` lies
    /// entirely inside `A` or entirely outside it.
    pub fn is_clopen_trace(&self, set: &IntervalSet) -> bool {
        self.pieces.iter().all(|(lo, hi)| {
            let piece = CompactSet {
                pieces: vec![(lo.clone(), hi.clone())],
            };
            piece.is_subset_of(set) || piece.is_disjoint_from(set)
        })
    }

    pub fn is_disjoint_from(&self, set: &IntervalSet) -> bool {
        self.pieces.iter().all(|(lo, hi)| {
            // closed [lo, hi] meets [a, b) iff a <= hi && lo < b
            set.pieces.iter().all(|(a, b)| !(a <= hi && lo < b))
        })
    }
}

impl fmt::Display for CompactSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "∅");
        }
        for (i, (lo, hi)) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "[{}, {}]", format_rational(lo), format_rational(hi))?;
        }
        Ok(())
    }
}

fn require_positive(delta: &Rational, what: &str) -> Result<()> {
    if *delta <= zero() {
        return Err(Error::invalid(format!(
            "{what} must be positive, got {}",
            format_rational(delta)
        )));
    }
    Ok(())
}

/// Closed subset of `A` missing less than `delta` of its measure.
///
/// With `k` pieces every `[a, b)` becomes `[a, b - s]` for `s = delta/(10k)`;
/// pieces no longer than `s` are dropped.
pub fn inner_compact(set: &IntervalSet, delta: &Rational) -> Result<CompactSet> {
    inner_compact_cells(set.pieces(), delta)
}

/// [`inner_compact`] on an explicit list of sorted, disjoint half-open cells.
/// Adjacent cells are not merged, so each cell yields its own closed piece.
pub fn inner_compact_cells(cells: &[(Rational, Rational)], delta: &Rational) -> Result<CompactSet> {
    require_positive(delta, "regularity budget")?;
    let live = cells.iter().filter(|(lo, hi)| lo < hi).count();
    if live == 0 {
        return Ok(CompactSet::empty());
    }
    let shrink = delta / int(10 * live as i64);
    let pieces = cells
        .iter()
        .filter(|(lo, hi)| hi - lo > shrink)
        .map(|(lo, hi)| (lo.clone(), hi - &shrink))
        .collect::<Vec<_>>();
    CompactSet::from_pieces(pieces)
}

/// Finite union of intervals containing `A` with excess measure below `delta`.
///
/// Each endpoint moves outwards by `delta/(5k)` and the result is clipped to
/// `[0,1]`.
pub fn outer_open(set: &IntervalSet, delta: &Rational) -> Result<IntervalSet> {
    require_positive(delta, "regularity budget")?;
    if set.is_empty() {
        return Ok(IntervalSet::empty());
    }
    let grow = delta / int(5 * set.pieces().len() as i64);
    IntervalSet::from_pieces(set.pieces().iter().map(|(lo, hi)| {
        let lo = lo - &grow;
        let hi = hi + &grow;
        (lo.max(zero()), hi.min(one()))
    }))
}

/// Union of selected cells `[k/2^n, (k+1)/2^n)` of the level-`n` dyadic
/// partition, stored as sorted half-open index ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicCover {
    level: u32,
    ranges: Vec<(u64, u64)>,
    error: Rational,
}

impl DyadicCover {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Index ranges `[start, end)` of selected cells.
    pub fn ranges(&self) -> &[(u64, u64)] {
        &self.ranges
    }

    pub fn cells(&self) -> impl Iterator<Item = u64> + '_ {
        self.ranges.iter().flat_map(|&(a, b)| a..b)
    }

    pub fn cell_count(&self) -> u64 {
        self.ranges.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains_cell(&self, k: u64) -> bool {
        let idx = self.ranges.partition_point(|&(a, _)| a <= k);
        idx > 0 && k < self.ranges[idx - 1].1
    }

    /// `λ(A △ cover)` for the set the cover was built from.
    pub fn symm_diff_measure(&self) -> &Rational {
        &self.error
    }

    pub fn to_interval_set(&self) -> IntervalSet {
        IntervalSet {
            pieces: self
                .ranges
                .iter()
                .map(|&(a, b)| (dyadic(a, self.level), dyadic(b, self.level)))
                .collect(),
        }
    }

    /// Compact rendering of the selected indices, e.g. `0-20;33`.
    pub fn ranges_label(&self) -> String {
        self.ranges
            .iter()
            .map(|&(a, b)| {
                if b - a == 1 {
                    a.to_string()
                } else {
                    format!("{}-{}", a, b - 1)
                }
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn floor_u64(q: &Rational) -> u64 {
    q.floor().to_integer().to_u64().expect("cell index fits in u64")
}

/// Majority-rule selection at a fixed level: cell `k` is selected iff
/// `λ(A ∩ I_k) > λ(I_k)/2`. This minimises `λ(A △ cover)` at that level.
pub fn dyadic_cover_at_level(set: &IntervalSet, level: u32) -> DyadicCover {
    let scale = Rational::from_integer(BigInt::one() << level as usize);
    let cell_len = dyadic(1, level);
    let half = &cell_len / int(2);
    let mut full: Vec<(u64, u64)> = Vec::new();
    let mut partial: BTreeMap<u64, Rational> = BTreeMap::new();
    for (lo, hi) in set.pieces() {
        let first = floor_u64(&(lo * &scale));
        let hi_scaled = hi * &scale;
        let mut last = floor_u64(&hi_scaled);
        if Rational::from_integer(BigInt::from(last)) == hi_scaled {
            last -= 1;
        }
        if first == last {
            *partial.entry(first).or_insert_with(zero) += hi - lo;
            continue;
        }
        *partial.entry(first).or_insert_with(zero) += dyadic(first + 1, level) - lo;
        *partial.entry(last).or_insert_with(zero) += hi - dyadic(last, level);
        if first + 1 < last {
            full.push((first + 1, last));
        }
    }
    let mut selected: Vec<(u64, u64)> = full;
    selected.extend(
        partial
            .into_iter()
            .filter(|(_, m)| *m > half)
            .map(|(k, _)| (k, k + 1)),
    );
    selected.sort();
    let mut ranges: Vec<(u64, u64)> = Vec::with_capacity(selected.len());
    for (a, b) in selected {
        match ranges.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => ranges.push((a, b)),
        }
    }
    let mut cover = DyadicCover {
        level,
        ranges,
        error: zero(),
    };
    cover.error = set.symm_diff(&cover.to_interval_set()).measure();
    cover
}

const MAX_COVER_LEVEL: u32 = 62;

/// Smallest dyadic level whose majority-rule cover approximates `A` to
/// within `eps` in symmetric-difference measure.
pub fn dyadic_cover(set: &IntervalSet, eps: &Rational) -> Result<DyadicCover> {
    require_positive(eps, "covering tolerance")?;
    for level in 0..=MAX_COVER_LEVEL {
        let cover = dyadic_cover_at_level(set, level);
        if cover.error < *eps {
            return Ok(cover);
        }
    }
    Err(Error::invalid(format!(
        "no dyadic level up to {MAX_COVER_LEVEL} reaches tolerance {}",
        format_rational(eps)
    )))
}
