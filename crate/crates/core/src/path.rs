//! Piecewise-linear paths from the origin, kept in canonical form.
//!
//! A path is stored as its minimal breakpoint sequence: consecutive
//! breakpoints differ, and no corner joins two segments pointing in the same
//! direction. Two paths that agree up to reparametrization therefore have
//! identical breakpoint lists, and `==` is path equality.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::root_system::RootSystem;
use crate::weight::{RatVec, Q};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Path {
    points: Vec<RatVec>,
}

impl Path {
    /// The trivial path θ.
    pub fn trivial(rank: usize) -> Self {
        Path { points: vec![RatVec::zero(rank)] }
    }

    /// `t ↦ t·v`.
    pub fn straight(v: RatVec) -> Self {
        let rank = v.rank();
        Self::from_segments(rank, [v])
    }

    /// Accumulates displacements from the origin. Zero displacements are
    /// dropped and consecutive segments in the same direction are merged.
    pub fn from_segments<I: IntoIterator<Item = RatVec>>(rank: usize, displacements: I) -> Self {
        let mut builder = Builder::new(RatVec::zero(rank));
        for d in displacements {
            debug_assert_eq!(d.rank(), rank);
            builder.push_displacement(&d);
        }
        builder.finish()
    }

    /// Canonicalizes a polyline. The first point must be the origin.
    pub(crate) fn from_points<I: IntoIterator<Item = RatVec>>(points: I) -> Self {
        let mut iter = points.into_iter();
        let first = iter.next().expect("a polyline has at least one point");
        debug_assert!(first.is_zero());
        let mut builder = Builder::new(first);
        for p in iter {
            builder.push_point(p);
        }
        builder.finish()
    }

    /// Parses an arbitrary breakpoint list, rejecting lists that do not
    /// start at the origin or disagree on rank.
    pub fn try_from_points(points: Vec<RatVec>) -> Result<Self> {
        use crate::error::Error;
        let first = points.first().ok_or_else(|| Error::Invalid("a path needs at least one breakpoint".into()))?;
        if !first.is_zero() {
            return Err(Error::Invalid("paths start at the origin".into()));
        }
        let rank = first.rank();
        if let Some(p) = points.iter().find(|p| p.rank() != rank) {
            return Err(Error::DimensionMismatch { expected: rank, actual: p.rank() });
        }
        Ok(Self::from_points(points))
    }

    pub fn rank(&self) -> usize {
        self.points[0].rank()
    }

    pub fn points(&self) -> &[RatVec] {
        &self.points
    }

    pub fn is_trivial(&self) -> bool {
        self.points.len() == 1
    }

    /// `wt(π) = π(1)`.
    pub fn weight(&self) -> &RatVec {
        self.points.last().expect("nonempty")
    }

    pub fn segments(&self) -> impl Iterator<Item = RatVec> + '_ {
        self.points.windows(2).map(|w| &w[1] - &w[0])
    }

    pub fn concat(&self, other: &Path) -> Path {
        let mut builder = Builder::new(RatVec::zero(self.rank()));
        for p in &self.points[1..] {
            builder.push_point(p.clone());
        }
        let shift = self.weight();
        for p in &other.points[1..] {
            builder.push_point(shift + p);
        }
        builder.finish()
    }

    /// `t ↦ ⟨π(t), α_i∨⟩`, sampled at the breakpoints.
    pub fn h_function(&self, i: usize) -> Result<ScalarPl> {
        let values = self.points.iter().map(|p| p.pairing(i)).collect::<Result<_>>()?;
        Ok(ScalarPl { values })
    }

    /// Total length in the invariant form of `rs`.
    pub fn length(&self, rs: &RootSystem) -> PathLength {
        let mut len = PathLength::default();
        for d in self.segments() {
            len.add_sqrt(rs.norm_squared(&d));
        }
        len
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.points.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

struct Builder {
    points: Vec<RatVec>,
}

impl Builder {
    fn new(origin: RatVec) -> Self {
        Builder { points: vec![origin] }
    }

    fn push_point(&mut self, p: RatVec) {
        let last = self.points.last().expect("nonempty");
        let d = &p - last;
        if d.is_zero() {
            return;
        }
        if let [.., a, b] = self.points.as_slice() {
            if (b - a).positive_multiple(&d).is_some() {
                *self.points.last_mut().expect("nonempty") = p;
                return;
            }
        }
        self.points.push(p);
    }

    fn push_displacement(&mut self, d: &RatVec) {
        let p = self.points.last().expect("nonempty") + d;
        self.push_point(p);
    }

    fn finish(self) -> Path {
        Path { points: self.points }
    }
}

/// A location on a polyline: `fraction` of the way along segment `segment`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PathPosition {
    pub segment: usize,
    pub fraction: Q,
}

/// Values of a piecewise-linear scalar function at the breakpoints of its
/// source path; linear in between.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarPl {
    values: Vec<Q>,
}

impl ScalarPl {
    pub fn values(&self) -> &[Q] {
        &self.values
    }

    /// The minimum over the whole path; always attained at a breakpoint.
    pub fn min(&self) -> Q {
        *self.values.iter().min().expect("nonempty")
    }

    pub fn first_attainment(&self, level: Q) -> Option<usize> {
        self.values.iter().position(|&v| v == level)
    }

    pub fn last_attainment(&self, level: Q) -> Option<usize> {
        self.values.iter().rposition(|&v| v == level)
    }

    /// Every isolated position at which the function takes the value
    /// `level`, in path order. Flat stretches contribute their breakpoints.
    pub fn crossings(&self, level: Q) -> Vec<PathPosition> {
        let mut out = Vec::new();
        for (j, &v) in self.values.iter().enumerate() {
            if v == level {
                out.push(PathPosition { segment: j, fraction: Q::zero() });
            }
            if let Some(&w) = self.values.get(j + 1) {
                if (v - level).is_positive() != (w - level).is_positive() && v != level && w != level {
                    out.push(PathPosition { segment: j, fraction: (level - v) / (w - v) });
                }
            }
        }
        out
    }
}

/// Inserts a breakpoint wherever `⟨·, α_i∨⟩` crosses an integer strictly
/// inside a segment. Returns the refined points, their `h` values, and the
/// new index of every original point.
pub(crate) fn refine_at_integers(points: &[RatVec], i: usize) -> Result<(Vec<RatVec>, Vec<Q>, Vec<usize>)> {
    let mut out = Vec::with_capacity(points.len() * 2);
    let mut hs = Vec::with_capacity(points.len() * 2);
    let mut index = Vec::with_capacity(points.len());
    for (j, p) in points.iter().enumerate() {
        let h = p.pairing(i)?;
        if j > 0 {
            let prev = &points[j - 1];
            let h0 = hs[hs.len() - 1];
            if h0 != h {
                let (lo, hi) = if h0 < h { (h0, h) } else { (h, h0) };
                let mut levels: Vec<i64> = ((lo.floor().to_integer() + 1)..=(hi.ceil().to_integer() - 1))
                    .filter(|&m| Q::from_integer(m) > lo && Q::from_integer(m) < hi)
                    .collect();
                if h0 > h {
                    levels.reverse();
                }
                let d = p - prev;
                for m in levels {
                    let level = Q::from_integer(m);
                    let s = (level - h0) / (h - h0);
                    out.push(prev + &(&d * s));
                    hs.push(level);
                }
            }
        }
        index.push(out.len());
        out.push(p.clone());
        hs.push(h);
    }
    Ok((out, hs, index))
}

/// An exact sum of square roots `Σ c_s √s` keyed by square-free `s`.
/// Square roots of distinct square-free integers are linearly independent
/// over the rationals, so equality of these maps is equality of lengths.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct PathLength {
    terms: BTreeMap<u64, Q>,
}

impl PathLength {
    fn add_sqrt(&mut self, value: Q) {
        assert!(!value.is_negative(), "squared lengths are non-negative");
        if value.is_zero() {
            return;
        }
        let (num, den) = (*value.numer() as u64, *value.denom() as u64);
        // √(a/b) = √(ab)/b
        let (root, free) = split_square(num * den);
        *self.terms.entry(free).or_insert_with(Q::zero) += Q::new(root as i64, den as i64);
    }

    pub fn terms(&self) -> &BTreeMap<u64, Q> {
        &self.terms
    }
}

/// `n = root² · free` with `free` square-free.
fn split_square(mut n: u64) -> (u64, u64) {
    let mut root = 1;
    let mut free = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    (root, free * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::TypeLabel;
    use crate::weight::q;

    fn v(c: &[i64]) -> RatVec {
        RatVec::from_ints(c)
    }

    fn half(c: &[i64]) -> RatVec {
        RatVec::from_coords(c.iter().map(|&x| Q::new(x, 2)))
    }

    // A2 vectors in fundamental-weight coordinates
    fn e1() -> RatVec {
        v(&[1, 0])
    }
    fn e2() -> RatVec {
        v(&[-1, 1])
    }
    fn alpha2() -> RatVec {
        v(&[-1, 2])
    }

    #[test]
    fn empty_segment_list_is_trivial() {
        let p = Path::from_segments(2, []);
        assert_eq!(p, Path::trivial(2));
        assert!(p.is_trivial());
        assert_eq!(p.weight(), &RatVec::zero(2));
    }

    #[test]
    fn collinear_segments_merge() {
        let p = Path::from_segments(2, [e1(), e1()]);
        assert_eq!(p.points(), &[v(&[0, 0]), v(&[2, 0])]);
        let halves = Path::from_segments(2, [half(&[1, 0]), half(&[1, 0])]);
        assert_eq!(halves, Path::straight(e1()));
        assert_ne!(Path::straight(e1()), Path::straight(e2()));
    }

    #[test]
    fn opposite_segments_do_not_merge() {
        let minus_half = -&half(&[-1, 2]);
        let p = Path::from_segments(2, [minus_half.clone(), -&minus_half]);
        assert_eq!(p.points(), &[v(&[0, 0]), half(&[1, -2]), v(&[0, 0])]);
        assert_eq!(p.weight(), &v(&[0, 0]));
    }

    #[test]
    fn zero_segments_are_dropped() {
        let p = Path::from_segments(2, [RatVec::zero(2), e1(), RatVec::zero(2), e1()]);
        assert_eq!(p, Path::straight(v(&[2, 0])));
    }

    #[test]
    fn concat_examples() {
        let a = Path::straight(e1());
        assert_eq!(Path::trivial(2).concat(&a), a);
        assert_eq!(a.concat(&Path::trivial(2)), a);
        let bent = a.concat(&Path::straight(e2()));
        assert_eq!(bent.points(), &[v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn h_function_examples() {
        let straight = Path::straight(v(&[1, 1]));
        let h = straight.h_function(1).unwrap();
        assert_eq!(h.values(), &[q(0), q(1)]);
        assert_eq!(h.min(), q(0));

        let dip = Path::straight(e2()).concat(&Path::straight(e1()));
        let h = dip.h_function(1).unwrap();
        assert_eq!(h.values(), &[q(0), q(-1), q(0)]);
        assert_eq!(h.min(), q(-1));

        let pi4 = Path::from_segments(2, [-&(&alpha2() * Q::new(1, 2)), &alpha2() * Q::new(1, 2)]);
        assert_eq!(pi4.h_function(2).unwrap().values(), &[q(0), q(-1), q(0)]);
        assert!(pi4.h_function(3).is_err());
    }

    #[test]
    fn crossings_are_exact() {
        let p = Path::straight(alpha2());
        let h = p.h_function(2).unwrap();
        assert_eq!(h.crossings(q(1)), vec![PathPosition { segment: 0, fraction: Q::new(1, 2) }]);
        assert_eq!(h.first_attainment(q(0)), Some(0));
        assert_eq!(h.last_attainment(q(2)), Some(1));
        assert!(h.crossings(q(3)).is_empty());
    }

    #[test]
    fn refinement_inserts_integer_levels() {
        let p = Path::straight(v(&[0, -3]));
        let (pts, hs, index) = refine_at_integers(p.points(), 2).unwrap();
        assert_eq!(hs, vec![q(0), q(-1), q(-2), q(-3)]);
        assert_eq!(pts[1], v(&[0, -1]));
        assert_eq!(index, vec![0, 3]);
    }

    #[test]
    fn lengths_compare_exactly() {
        let a2 = RootSystem::build(TypeLabel::A, 2).unwrap();
        let straight = Path::straight(v(&[1, 1]));
        let split = Path::from_segments(2, [half(&[1, 1]), half(&[1, 1])]);
        assert_eq!(straight.length(&a2), split.length(&a2));
        let bent = Path::straight(e1()).concat(&Path::straight(e2()));
        assert_ne!(bent.length(&a2), straight.length(&a2));
    }

    #[test]
    fn square_splitting() {
        assert_eq!(split_square(12), (2, 3));
        assert_eq!(split_square(49), (7, 1));
        assert_eq!(split_square(30), (1, 30));
        assert_eq!(split_square(1), (1, 1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn segment() -> impl Strategy<Value = RatVec> {
            prop::collection::vec((-3i64..=3, 1i64..=3).prop_map(|(a, b)| Q::new(a, b)), 2).prop_map(RatVec::from_coords)
        }

        fn path() -> impl Strategy<Value = Path> {
            prop::collection::vec(segment(), 0..6).prop_map(|s| Path::from_segments(2, s))
        }

        fn is_canonical(p: &Path) -> bool {
            let segs: Vec<RatVec> = p.segments().collect();
            p.points()[0].is_zero()
                && segs.iter().all(|s| !s.is_zero())
                && segs.windows(2).all(|w| w[0].positive_multiple(&w[1]).is_none())
        }

        proptest! {
            #[test]
            fn canonical_form_is_idempotent(p in path()) {
                prop_assert!(is_canonical(&p));
                prop_assert_eq!(Path::from_segments(2, p.segments()), p);
            }

            #[test]
            fn concat_is_associative_with_additive_weight(a in path(), b in path(), c in path()) {
                prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
                let ab = a.concat(&b);
                prop_assert_eq!(ab.weight(), &(a.weight() + b.weight()));
                prop_assert!(is_canonical(&a.concat(&b)));
            }

            #[test]
            fn subdividing_segments_is_invisible(a in path(), k in 2i64..5) {
                let pieces = a.segments().flat_map(|s| {
                    let piece = &s * Q::new(1, k);
                    std::iter::repeat_n(piece, k as usize)
                });
                prop_assert_eq!(Path::from_segments(2, pieces), a);
            }
        }
    }
}
