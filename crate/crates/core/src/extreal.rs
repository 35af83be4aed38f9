//! Points, open arcs and open subsets of the circle `ℝ ∪ {∞}`.
//!
//! An [`Arc`] `(b, a)` runs from its left endpoint `b` in the increasing
//! direction to its right endpoint `a`. When both endpoints are finite and
//! `b > a` the arc passes through `∞`, i.e. `(b, a) = (b, ∞) ∪ {∞} ∪ (−∞, a)`.
//!
//! Internally an arc stores raw `f64` endpoints where `∞` as a left endpoint
//! is `-inf` and `∞` as a right endpoint is `+inf`. With that encoding an arc
//! with `b < a` never contains `∞` and an arc with `b >= a` always does.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::numeric::same_point;
use crate::{Error, Result};

/// A point of the circle `ℝ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtPoint {
    Finite(f64),
    Infinity,
}

impl ExtPoint {
    pub fn is_infinite(self) -> bool {
        matches!(self, ExtPoint::Infinity)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtPoint::Finite(x) => Some(x),
            ExtPoint::Infinity => None,
        }
    }

    /// Order along the circle cut just after `∞`: finite points ascending,
    /// then `∞` last.
    pub fn circle_cmp(&self, other: &ExtPoint) -> Ordering {
        self.key().total_cmp(&other.key())
    }

    fn key(self) -> f64 {
        match self {
            ExtPoint::Finite(x) => x,
            ExtPoint::Infinity => f64::INFINITY,
        }
    }

    /// Tolerant equality (see [`same_point`]).
    pub fn same(self, other: ExtPoint) -> bool {
        match (self, other) {
            (ExtPoint::Infinity, ExtPoint::Infinity) => true,
            (ExtPoint::Finite(x), ExtPoint::Finite(y)) => same_point(x, y),
            _ => false,
        }
    }

    fn raw_left(self) -> f64 {
        match self {
            ExtPoint::Finite(x) => x,
            ExtPoint::Infinity => f64::NEG_INFINITY,
        }
    }

    fn raw_right(self) -> f64 {
        match self {
            ExtPoint::Finite(x) => x,
            ExtPoint::Infinity => f64::INFINITY,
        }
    }

    fn from_raw(x: f64) -> ExtPoint {
        if x.is_infinite() {
            ExtPoint::Infinity
        } else {
            ExtPoint::Finite(x)
        }
    }
}

impl From<f64> for ExtPoint {
    fn from(x: f64) -> Self {
        ExtPoint::from_raw(x)
    }
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::Finite(x) => write!(f, "{x}"),
            ExtPoint::Infinity => write!(f, "∞"),
        }
    }
}

/// A point of the Riemann sphere, used for values that may be poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn real(x: f64) -> ExtComplex {
        ExtComplex::Finite(Complex64::new(x, 0.0))
    }

    pub fn recip(self) -> ExtComplex {
        match self {
            ExtComplex::Infinity => ExtComplex::Finite(Complex64::new(0.0, 0.0)),
            ExtComplex::Finite(z) if z == Complex64::new(0.0, 0.0) => ExtComplex::Infinity,
            ExtComplex::Finite(z) => ExtComplex::Finite(z.inv()),
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

impl From<ExtPoint> for ExtComplex {
    fn from(p: ExtPoint) -> Self {
        match p {
            ExtPoint::Finite(x) => ExtComplex::real(x),
            ExtPoint::Infinity => ExtComplex::Infinity,
        }
    }
}

/// An open arc of `ℝ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    b: f64,
    a: f64,
}

impl Arc {
    /// The arc from `b` to `a`. Rejects `b = a`.
    pub fn new(b: ExtPoint, a: ExtPoint) -> Result<Arc> {
        if b.same(a) {
            return Err(Error::DegenerateArc);
        }
        Ok(Arc { b: b.raw_left(), a: a.raw_right() })
    }

    /// Arc with finite endpoints.
    pub fn finite(b: f64, a: f64) -> Result<Arc> {
        if !b.is_finite() || !a.is_finite() {
            return Err(Error::InvalidInput("finite arc endpoints required".into()));
        }
        Arc::new(ExtPoint::Finite(b), ExtPoint::Finite(a))
    }

    /// The circle with one point removed.
    pub fn punctured(p: ExtPoint) -> Arc {
        Arc { b: p.raw_left(), a: p.raw_right() }
    }

    pub(crate) fn from_raw(b: f64, a: f64) -> Arc {
        Arc { b, a }
    }

    pub fn b(&self) -> ExtPoint {
        ExtPoint::from_raw(self.b)
    }

    pub fn a(&self) -> ExtPoint {
        ExtPoint::from_raw(self.a)
    }

    pub(crate) fn raw(&self) -> (f64, f64) {
        (self.b, self.a)
    }

    /// Whether the arc contains `∞`.
    pub fn wraps(&self) -> bool {
        self.b >= self.a
    }

    /// Whether both endpoints coincide (the circle minus a point).
    pub fn is_punctured(&self) -> bool {
        (self.b.is_infinite() && self.a.is_infinite() && self.b < self.a) || self.b == self.a
    }

    pub fn contains(&self, p: ExtPoint) -> bool {
        match p {
            ExtPoint::Infinity => self.wraps(),
            ExtPoint::Finite(x) => {
                if self.wraps() {
                    x > self.b || x < self.a
                } else {
                    x > self.b && x < self.a
                }
            }
        }
    }

    /// Lebesgue length; infinite for arcs touching or containing `∞`.
    pub fn length(&self) -> f64 {
        if self.wraps() || self.b.is_infinite() || self.a.is_infinite() {
            f64::INFINITY
        } else {
            self.a - self.b
        }
    }

    /// Angle at `z ∈ ℂ⁺` subtended by the arc, in `[0, π]`.
    pub fn angle_at(&self, z: Complex64) -> f64 {
        if self.wraps() {
            if self.b == self.a {
                return PI;
            }
            // complement of the closed linear arc [a, b]
            PI - linear_angle(self.a, self.b, z)
        } else {
            linear_angle(self.b, self.a, z)
        }
    }

    fn pieces(&self, out: &mut Vec<(f64, f64)>) -> bool {
        if self.wraps() {
            out.push((self.b, f64::INFINITY));
            out.push((f64::NEG_INFINITY, self.a));
            true
        } else {
            out.push((self.b, self.a));
            false
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.b(), self.a())
    }
}

/// `arg(z − t)` extended by `0` at `t = −∞` and `π` at `t = +∞`.
fn arg_from(t: f64, z: Complex64) -> f64 {
    if t == f64::NEG_INFINITY {
        0.0
    } else if t == f64::INFINITY {
        PI
    } else {
        (z - t).arg()
    }
}

/// Angle at `z` subtended by the linear interval `(lo, hi)`, `lo < hi`.
fn linear_angle(lo: f64, hi: f64, z: Complex64) -> f64 {
    if lo.is_finite() && hi.is_finite() {
        // arg((z − hi) / (z − lo)) lies in (0, π) for Im z > 0
        let w = (z - hi) * (z - lo).conj();
        w.im.atan2(w.re)
    } else {
        arg_from(hi, z) - arg_from(lo, z)
    }
}

/// Canonical open subset of `ℝ ∪ {∞}` given by finitely many disjoint arcs.
///
/// Arcs are sorted by left endpoint with the (at most one) arc through `∞`
/// last. Abutting arcs are kept apart: the shared endpoint is not in the set.
#[derive(Debug, Clone)]
pub struct ArcSet {
    full: bool,
    arcs: Vec<Arc>,
}

impl PartialEq for ArcSet {
    fn eq(&self, other: &Self) -> bool {
        self.full == other.full
            && self.arcs.len() == other.arcs.len()
            && self.arcs.iter().zip(&other.arcs).all(|(x, y)| {
                x.b().same(y.b()) && x.a().same(y.a()) && x.wraps() == y.wraps()
            })
    }
}

type Pieces = (Vec<(f64, f64)>, bool);

impl ArcSet {
    pub fn empty() -> ArcSet {
        ArcSet { full: false, arcs: Vec::new() }
    }

    /// The whole circle.
    pub fn full() -> ArcSet {
        ArcSet { full: true, arcs: Vec::new() }
    }

    pub fn single(arc: Arc) -> ArcSet {
        ArcSet::normalize([arc])
    }

    /// Canonical form of a union of arcs: overlapping arcs merge, abutting
    /// arcs stay separate.
    pub fn normalize<I: IntoIterator<Item = Arc>>(arcs: I) -> ArcSet {
        let mut pieces = Vec::new();
        let mut inf = false;
        for arc in arcs {
            inf |= arc.pieces(&mut pieces);
        }
        ArcSet::from_pieces(merge(pieces, false), inf)
    }

    /// Like [`ArcSet::normalize`], validating raw endpoint pairs first.
    pub fn from_pairs<I: IntoIterator<Item = (ExtPoint, ExtPoint)>>(pairs: I) -> Result<ArcSet> {
        let arcs: Result<Vec<Arc>> = pairs.into_iter().map(|(b, a)| Arc::new(b, a)).collect();
        Ok(ArcSet::normalize(arcs?))
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    fn to_pieces(&self) -> Pieces {
        if self.full {
            return (alloc::vec![(f64::NEG_INFINITY, f64::INFINITY)], true);
        }
        let mut pieces = Vec::new();
        let mut inf = false;
        for arc in &self.arcs {
            inf |= arc.pieces(&mut pieces);
        }
        pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
        (pieces, inf)
    }

    fn from_pieces(pieces: Vec<(f64, f64)>, inf: bool) -> ArcSet {
        if pieces.is_empty() {
            return ArcSet::empty();
        }
        let n = pieces.len();
        if inf {
            debug_assert!(pieces[0].0 == f64::NEG_INFINITY && pieces[n - 1].1 == f64::INFINITY);
            if n == 1 {
                return ArcSet::full();
            }
            let mut arcs: Vec<Arc> = pieces[1..n - 1].iter().map(|&(b, a)| Arc::from_raw(b, a)).collect();
            arcs.push(Arc::from_raw(pieces[n - 1].0, pieces[0].1));
            ArcSet { full: false, arcs }
        } else {
            ArcSet { full: false, arcs: pieces.iter().map(|&(b, a)| Arc::from_raw(b, a)).collect() }
        }
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        if self.full || other.full {
            return ArcSet::full();
        }
        ArcSet::normalize(self.arcs.iter().chain(&other.arcs).copied())
    }

    /// Lebesgue regularization at finite points: arcs sharing a finite
    /// endpoint are merged (chains included). `∞` is never adjoined.
    pub fn regularize(&self) -> ArcSet {
        if self.full {
            return self.clone();
        }
        let (pieces, inf) = self.to_pieces();
        ArcSet::from_pieces(merge(pieces, true), inf)
    }

    pub fn is_regular(&self) -> bool {
        self.regularize() == *self
    }

    pub fn contains(&self, p: ExtPoint) -> bool {
        self.full || self.arcs.iter().any(|a| a.contains(p))
    }

    /// The component containing `p`, if any.
    pub fn component_of(&self, p: ExtPoint) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.contains(p))
    }

    /// Set inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &ArcSet) -> bool {
        if other.full {
            return true;
        }
        if self.full {
            return false;
        }
        let (mine, inf) = self.to_pieces();
        let (theirs, their_inf) = other.to_pieces();
        if inf && !their_inf {
            return false;
        }
        mine.iter().all(|&(lo, hi)| {
            theirs.iter().any(|&(l, h)| (l <= lo || same_point(l, lo)) && (hi <= h || same_point(hi, h)))
        })
    }

    /// Whether the two open sets intersect.
    pub fn overlaps(&self, other: &ArcSet) -> bool {
        if self.is_empty() || other.is_empty() {
            return false;
        }
        if self.full || other.full {
            return true;
        }
        let (mine, _) = self.to_pieces();
        let (theirs, _) = other.to_pieces();
        mine.iter().any(|&(lo, hi)| {
            theirs.iter().any(|&(l, h)| {
                let s = lo.max(l);
                let e = hi.min(h);
                s < e && !same_point(s, e)
            })
        })
    }

    /// The open set with the given points removed; arcs containing a point
    /// split into two abutting arcs.
    pub fn remove_points(&self, points: &[ExtPoint]) -> ArcSet {
        let (mut pieces, mut inf) = self.to_pieces();
        for p in points {
            match *p {
                ExtPoint::Infinity => inf = false,
                ExtPoint::Finite(x) => {
                    if let Some(i) = pieces
                        .iter()
                        .position(|&(lo, hi)| lo < x && x < hi && !same_point(lo, x) && !same_point(x, hi))
                    {
                        let (lo, hi) = pieces[i];
                        pieces[i] = (lo, x);
                        pieces.insert(i + 1, (x, hi));
                    }
                }
            }
        }
        ArcSet::from_pieces(pieces, inf)
    }

    /// Interior of the complement.
    pub fn complement_interior(&self) -> ArcSet {
        if self.full {
            return ArcSet::empty();
        }
        let (pieces, inf) = self.to_pieces();
        if pieces.is_empty() {
            return ArcSet::full();
        }
        let mut gaps = Vec::new();
        let first = pieces[0].0;
        let last = pieces[pieces.len() - 1].1;
        if first > f64::NEG_INFINITY {
            gaps.push((f64::NEG_INFINITY, first));
        }
        for w in pieces.windows(2) {
            if w[1].0 > w[0].1 && !same_point(w[0].1, w[1].0) {
                gaps.push((w[0].1, w[1].0));
            }
        }
        if last < f64::INFINITY {
            gaps.push((last, f64::INFINITY));
        }
        let gap_inf = !inf && first > f64::NEG_INFINITY && last < f64::INFINITY;
        if !gap_inf {
            // ∞ is a boundary point: pieces touching it stay linear
            return ArcSet { full: false, arcs: gaps.iter().map(|&(b, a)| Arc::from_raw(b, a)).collect() };
        }
        ArcSet::from_pieces(gaps, true)
    }

    /// Angle at `z ∈ ℂ⁺` subtended by the set, `Im z · ∫_O dt/|t − z|²`.
    pub fn angle_subtended(&self, z: Complex64) -> f64 {
        if self.full {
            return PI;
        }
        self.arcs.iter().map(|a| a.angle_at(z)).sum()
    }

    /// Lebesgue measure; infinite as soon as one arc is unbounded.
    pub fn measure(&self) -> f64 {
        if self.full {
            return f64::INFINITY;
        }
        self.arcs.iter().map(Arc::length).sum()
    }

    /// Left endpoints `{b_n}` (their closure, since the set is finite).
    pub fn left_endpoints(&self) -> Vec<ExtPoint> {
        sorted_points(self.arcs.iter().map(Arc::b))
    }

    pub fn right_endpoints(&self) -> Vec<ExtPoint> {
        sorted_points(self.arcs.iter().map(Arc::a))
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full {
            return write!(f, "ℝ∪{{∞}}");
        }
        if self.arcs.is_empty() {
            return write!(f, "∅");
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

fn sorted_points<I: IntoIterator<Item = ExtPoint>>(it: I) -> Vec<ExtPoint> {
    let mut v: Vec<ExtPoint> = it.into_iter().collect();
    v.sort_by(ExtPoint::circle_cmp);
    v.dedup_by(|x, y| x.same(*y));
    v
}

/// Sorts and merges linear pieces. Overlapping pieces always merge; with
/// `join_touching` pieces sharing a finite endpoint merge as well.
fn merge(mut pieces: Vec<(f64, f64)>, join_touching: bool) -> Vec<(f64, f64)> {
    pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
    for (lo, hi) in pieces {
        if let Some(cur) = out.last_mut() {
            let touching = same_point(lo, cur.1) && lo.is_finite();
            let overlapping = lo < cur.1 && !touching;
            if overlapping || (join_touching && touching) {
                if hi > cur.1 {
                    cur.1 = hi;
                }
                continue;
            }
        }
        out.push((lo, hi));
    }
    out
}

/// Finite part of `closure{b_n}` plus a flag for accumulation on a
/// residual (Cantor-type) set not enumerated.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryDescriptor {
    pub points: Vec<ExtPoint>,
    pub accumulates: bool,
}

/// `(lo, hi) ∖ C` where `C` is the middle-thirds Cantor set of `[lo, hi]`,
/// optionally together with the exterior arc `(hi, lo)` through `∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CantorComplement {
    pub lo: f64,
    pub hi: f64,
    /// `None` is the full (infinite) construction.
    pub depth: Option<u32>,
    pub exterior: bool,
}

/// Deepest level whose arcs can be enumerated with exact integer offsets.
pub const CANTOR_MAX_LEVEL: u32 = 38;

impl CantorComplement {
    pub fn new(lo: f64, hi: f64, depth: Option<u32>, exterior: bool) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInput("cantor base interval must be finite with lo < hi".into()));
        }
        if depth.is_some_and(|d| d > CANTOR_MAX_LEVEL) {
            return Err(Error::InvalidInput("cantor depth too large".into()));
        }
        Ok(CantorComplement { lo, hi, depth, exterior })
    }

    pub fn base_length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn exterior_arc(&self) -> Option<Arc> {
        self.exterior.then(|| Arc::from_raw(self.hi, self.lo))
    }

    /// Whether `level` (1-based) belongs to the set.
    pub fn has_level(&self, level: u32) -> bool {
        level >= 1 && self.depth.map_or(level <= CANTOR_MAX_LEVEL, |d| level <= d)
    }

    /// The `2^{level−1}` removed middle thirds of length `L·3^{−level}`.
    pub fn level_arcs(&self, level: u32) -> impl Iterator<Item = Arc> + '_ {
        let count: u64 = if self.has_level(level) { 1u64 << (level - 1) } else { 0 };
        let scale = self.base_length() / 3f64.powi(level as i32);
        (0..count).map(move |i| {
            let n = stage_numerator(i, level - 1);
            Arc::from_raw(self.lo + scale * (3 * n + 1) as f64, self.lo + scale * (3 * n + 2) as f64)
        })
    }

    /// Total length of the interior arcs at levels `> done`.
    pub fn remaining_length(&self, done: u32) -> f64 {
        let l = self.base_length();
        let tail = (2.0f64 / 3.0).powi(done as i32);
        match self.depth {
            None => l * tail,
            Some(d) if d <= done => 0.0,
            Some(d) => l * (tail - (2.0f64 / 3.0).powi(d as i32)),
        }
    }

    /// Distance from `z` to the closed stage-`m` set `C_m`, which contains
    /// every interior arc of level `> m`.
    pub fn distance_to_stage(&self, z: Complex64, m: u32) -> f64 {
        let dx = stage_distance(z.re, self.lo, self.base_length(), m);
        dx.hypot(z.im)
    }

    /// Measure of the set (interior arcs only, or infinite with the exterior).
    pub fn measure(&self) -> f64 {
        if self.exterior {
            return f64::INFINITY;
        }
        let l = self.base_length();
        match self.depth {
            None => l,
            Some(d) => l * (1.0 - (2.0f64 / 3.0).powi(d as i32)),
        }
    }

    /// Left endpoints enumerated through `depth` levels.
    pub fn boundary_left(&self, depth: u32) -> BoundaryDescriptor {
        let upto = self.depth.map_or(depth, |d| d.min(depth));
        let mut pts: Vec<ExtPoint> = Vec::new();
        if self.exterior {
            pts.push(ExtPoint::Finite(self.hi));
        }
        for level in 1..=upto {
            pts.extend(self.level_arcs(level).map(|a| a.b()));
        }
        let accumulates = self.depth.is_none_or(|d| depth < d);
        BoundaryDescriptor { points: sorted_points(pts), accumulates }
    }

    /// Regularization, resolved symbolically.
    pub fn regularize(&self) -> ArcSet {
        match self.depth {
            None => {
                let inner = ArcSet::single(Arc::from_raw(self.lo, self.hi));
                match self.exterior_arc() {
                    Some(e) => inner.union(&ArcSet::single(e)).regularize(),
                    None => inner,
                }
            }
            Some(d) => self.to_arcset(d).regularize(),
        }
    }

    /// Explicit arc set through `depth` levels.
    pub fn to_arcset(&self, depth: u32) -> ArcSet {
        let upto = self.depth.map_or(depth, |d| d.min(depth));
        let mut arcs: Vec<Arc> = self.exterior_arc().into_iter().collect();
        for level in 1..=upto {
            arcs.extend(self.level_arcs(level));
        }
        ArcSet::normalize(arcs)
    }
}

/// Integer left offset (in units of `3^{−m}` of the base length) of the
/// `i`-th remaining closed interval at stage `m`.
fn stage_numerator(i: u64, m: u32) -> u64 {
    let mut n = 0u64;
    for k in 0..m {
        n *= 3;
        if (i >> (m - 1 - k)) & 1 == 1 {
            n += 2;
        }
    }
    n
}

fn stage_distance(x: f64, lo: f64, len: f64, m: u32) -> f64 {
    let (mut l, mut w) = (lo, len);
    for _ in 0..m {
        if x <= l {
            return l - x;
        }
        if x >= l + w {
            return x - (l + w);
        }
        let third = w / 3.0;
        if x <= l + third {
            w = third;
        } else if x >= l + 2.0 * third {
            l += 2.0 * third;
            w = third;
        } else {
            return (x - (l + third)).min(l + 2.0 * third - x);
        }
    }
    if x < l {
        l - x
    } else if x > l + w {
        x - (l + w)
    } else {
        0.0
    }
}

/// Source of arcs for a Kreĭn product, enumerated by decreasing length.
#[derive(Debug, Clone, PartialEq)]
pub enum ArcGenerator {
    Explicit(ArcSet),
    CantorComplement(CantorComplement),
}

impl ArcGenerator {
    pub fn regularize(&self) -> ArcSet {
        match self {
            ArcGenerator::Explicit(s) => s.regularize(),
            ArcGenerator::CantorComplement(c) => c.regularize(),
        }
    }

    pub fn measure(&self) -> f64 {
        match self {
            ArcGenerator::Explicit(s) => s.measure(),
            ArcGenerator::CantorComplement(c) => c.measure(),
        }
    }

    pub fn boundary_left(&self, depth: u32) -> BoundaryDescriptor {
        match self {
            ArcGenerator::Explicit(s) => BoundaryDescriptor { points: s.left_endpoints(), accumulates: false },
            ArcGenerator::CantorComplement(c) => c.boundary_left(depth),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtPoint::{Finite as F, Infinity as Inf};

    fn arc(b: f64, a: f64) -> Arc {
        Arc::finite(b, a).unwrap()
    }

    #[test]
    fn abutting_arcs_stay_separate() {
        let s = ArcSet::normalize([arc(1.0, 2.0), arc(2.0, 3.0)]);
        assert_eq!(s.len(), 2);
        assert!(!s.contains(F(2.0)));
    }

    #[test]
    fn overlapping_arcs_merge() {
        let s = ArcSet::normalize([arc(0.0, 2.0), arc(1.0, 3.0)]);
        assert_eq!(s, ArcSet::single(arc(0.0, 3.0)));
    }

    #[test]
    fn wrap_arc_contains_infinity() {
        let s = ArcSet::single(arc(1.0, 0.0));
        assert!(s.contains(Inf));
        assert!(s.contains(F(5.0)) && s.contains(F(-5.0)));
        assert!(!s.contains(F(0.5)));
        assert_eq!(s.arcs()[0].b(), F(1.0));
        assert_eq!(s.arcs()[0].a(), F(0.0));
    }

    #[test]
    fn degenerate_arc_rejected() {
        assert_eq!(Arc::finite(1.0, 1.0), Err(Error::DegenerateArc));
        assert!(Arc::new(Inf, Inf).is_err());
    }

    #[test]
    fn regularize_merges_shared_endpoint() {
        let s = ArcSet::normalize([arc(1.0, 2.0), arc(2.0, 3.0)]).regularize();
        assert_eq!(s, ArcSet::single(arc(1.0, 3.0)));
        let t = ArcSet::single(arc(0.0, 1.0));
        assert_eq!(t.regularize(), t);
    }

    #[test]
    fn regularize_through_wrap_and_to_full() {
        let s = ArcSet::normalize([arc(1.0, 0.0), arc(0.0, 0.5)]).regularize();
        assert_eq!(s, ArcSet::single(arc(1.0, 0.5)));
        let full = ArcSet::normalize([arc(1.0, 0.0), arc(0.0, 1.0)]).regularize();
        assert!(full.is_full());
    }

    #[test]
    fn regularize_never_adjoins_infinity() {
        let s = ArcSet::normalize([Arc::new(Inf, F(0.0)).unwrap(), Arc::new(F(1.0), Inf).unwrap()]);
        assert_eq!(s.regularize(), s);
        assert!(!s.regularize().contains(Inf));
    }

    #[test]
    fn boundary_left_examples() {
        let s = ArcSet::normalize([arc(1.0, 2.0), arc(3.0, 4.0)]);
        assert_eq!(s.left_endpoints(), [F(1.0), F(3.0)]);
        assert_eq!(ArcSet::single(arc(1.0, 0.0)).left_endpoints(), [F(1.0)]);
    }

    #[test]
    fn cantor_boundary_depth_two() {
        let c = CantorComplement::new(0.0, 1.0, None, false).unwrap();
        let d = c.boundary_left(2);
        let want = [1.0 / 9.0, 1.0 / 3.0, 7.0 / 9.0];
        assert_eq!(d.points.len(), 3);
        for (p, w) in d.points.iter().zip(want) {
            assert!((p.finite().unwrap() - w).abs() < 1e-15);
        }
        assert!(d.accumulates);
    }

    #[test]
    fn angle_examples() {
        let i = Complex64::new(0.0, 1.0);
        assert!((ArcSet::single(arc(-1.0, 1.0)).angle_subtended(i) - PI / 2.0).abs() < 1e-15);
        assert_eq!(ArcSet::empty().angle_subtended(i), 0.0);
        assert_eq!(ArcSet::full().angle_subtended(i), PI);
    }

    #[test]
    fn angle_of_half_lines_and_wraps() {
        let z = Complex64::new(0.3, 0.7);
        let left = Arc::new(Inf, F(0.0)).unwrap();
        let right = Arc::new(F(0.0), Inf).unwrap();
        assert!((left.angle_at(z) + right.angle_at(z) - PI).abs() < 1e-14);
        let w = arc(2.0, -1.0);
        let inner = arc(-1.0, 2.0);
        assert!((w.angle_at(z) + inner.angle_at(z) - PI).abs() < 1e-14);
    }

    #[test]
    fn measure_examples() {
        assert_eq!(ArcSet::normalize([arc(1.0, 2.0), arc(2.0, 3.0)]).measure(), 2.0);
        assert_eq!(ArcSet::single(arc(1.0, 0.0)).measure(), f64::INFINITY);
        for k in 1..8 {
            let c = CantorComplement::new(0.0, 1.0, Some(k), false).unwrap();
            // independent: sum removed lengths level by level
            let direct: f64 = (1..=k).flat_map(|l| c.level_arcs(l)).map(|a| a.length()).sum();
            assert!((c.measure() - direct).abs() < 1e-14);
            assert!((c.measure() - (1.0 - (2.0f64 / 3.0).powi(k as i32))).abs() < 1e-14);
        }
    }

    #[test]
    fn cantor_regularizes_symbolically() {
        let c = CantorComplement::new(0.0, 1.0, None, false).unwrap();
        assert_eq!(c.regularize(), ArcSet::single(arc(0.0, 1.0)));
        let e = CantorComplement::new(0.0, 1.0, None, true).unwrap();
        assert!(e.regularize().is_full());
    }

    #[test]
    fn stage_distance_matches_enumeration() {
        let c = CantorComplement::new(0.0, 1.0, None, false).unwrap();
        for &x in &[-0.5, 0.05, 0.2, 0.5, 0.34, 0.7, 0.95, 1.3] {
            for m in 0..6 {
                // brute force: remaining closed intervals at stage m
                let n = 1u64 << m;
                let w = 1.0 / 3f64.powi(m as i32);
                let brute = (0..n)
                    .map(|i| {
                        let l = stage_numerator(i, m) as f64 * w;
                        if x < l { l - x } else if x > l + w { x - l - w } else { 0.0 }
                    })
                    .fold(f64::INFINITY, f64::min);
                let d = c.distance_to_stage(Complex64::new(x, 0.0), m);
                assert!((d - brute).abs() < 1e-14, "x={x} m={m}");
            }
        }
    }

    #[test]
    fn subset_and_points() {
        let omega = ArcSet::full().remove_points(&[F(0.0)]);
        assert_eq!(omega.len(), 1);
        assert!(omega.arcs()[0].is_punctured());
        let o = ArcSet::single(Arc::new(F(0.0), Inf).unwrap());
        assert!(o.is_subset_of(&omega));
        assert!(!ArcSet::single(arc(-1.0, 1.0)).is_subset_of(&omega));
        assert!(omega.regularize().is_full());
    }

    #[test]
    fn complement_interior_of_two_arcs() {
        let s = ArcSet::normalize([arc(0.0, 1.0), arc(2.0, 3.0)]);
        let c = s.complement_interior();
        assert_eq!(c, ArcSet::normalize([arc(1.0, 2.0), arc(3.0, 0.0)]));
        assert!(ArcSet::empty().complement_interior().is_full());
        assert!(ArcSet::full().complement_interior().is_empty());
    }
}
