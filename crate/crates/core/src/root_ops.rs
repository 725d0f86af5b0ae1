//! Root operators `e_i` (raise) and `f_i` (lower) on paths and on
//! factor-tracked monomials.
//!
//! Both operators cut the path into three pieces at positions where
//! `h_i(t) = ⟨π(t), α_i∨⟩` takes consecutive integer values, reflect the
//! middle piece with `s_i`, and glue the pieces back together. Cut positions
//! are made into breakpoints by first refining the polyline at every integer
//! level of `h_i`, so all cuts are exact.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::{refine_at_integers, Path};
use crate::root_system::RootSystem;
use crate::weight::{RatVec, Weight, Q};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Raise,
    Lower,
}

/// A monomial factor: a path tagged with the dominant shape whose crystal
/// it belongs to.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Factor {
    pub shape: Weight,
    pub path: Path,
}

impl Factor {
    pub fn new(shape: Weight, path: Path) -> Self {
        Factor { shape, path }
    }

    /// The straight path `π_λ` tagged with shape `λ`.
    pub fn straight(shape: Weight) -> Self {
        let path = Path::straight(shape.to_rat());
        Factor { shape, path }
    }
}

/// An ordered concatenation of factors together with the cached
/// concatenated path.
#[derive(Clone, Debug)]
pub struct Monomial {
    factors: Vec<Factor>,
    concat: Path,
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors && self.concat.rank() == other.concat.rank()
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

impl Monomial {
    pub fn empty(rank: usize) -> Self {
        Monomial { factors: Vec::new(), concat: Path::trivial(rank) }
    }

    pub fn new(rank: usize, factors: Vec<Factor>) -> Result<Self> {
        for f in &factors {
            if f.shape.rank() != rank || f.path.rank() != rank {
                return Err(Error::DimensionMismatch { expected: rank, actual: f.path.rank() });
            }
            if !f.shape.is_dominant() {
                return Err(Error::NonDominantWeight(f.shape.to_string()));
            }
        }
        Ok(Self::from_factors(rank, factors))
    }

    pub(crate) fn from_factors(rank: usize, factors: Vec<Factor>) -> Self {
        let concat = Path::from_points(raw_points(rank, &factors).0);
        Monomial { factors, concat }
    }

    /// A one-factor monomial holding the straight path `π_λ`.
    pub fn straight(shape: Weight) -> Self {
        let rank = shape.rank();
        Self::from_factors(rank, vec![Factor::straight(shape)])
    }

    pub fn rank(&self) -> usize {
        self.concat.rank()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn concatenation(&self) -> &Path {
        &self.concat
    }

    pub fn weight(&self) -> &RatVec {
        self.concat.weight()
    }

    /// Sum of the factor shapes.
    pub fn shape(&self) -> Weight {
        let mut total = Weight::zero(self.rank());
        for f in &self.factors {
            total += &f.shape;
        }
        total
    }

    /// Fundamental indices of the factor shapes, if every factor has a
    /// fundamental shape.
    pub fn shape_indices(&self) -> Option<Vec<usize>> {
        self.factors.iter().map(|f| f.shape.fundamental_index()).collect()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Monomial { factors, concat: self.concat.concat(&other.concat) }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "θ");
        }
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " ⋆ ")?;
            }
            write!(f, "{}", factor.path)?;
        }
        Ok(())
    }
}

/// Raising steps in application order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OperatorLog(pub Vec<usize>);

impl OperatorLog {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

/// Concatenated (non-canonical) polyline of the factors and the polyline
/// index at which each factor starts; the final entry is the end.
fn raw_points(rank: usize, factors: &[Factor]) -> (Vec<RatVec>, Vec<usize>) {
    let mut points = vec![RatVec::zero(rank)];
    let mut bounds = vec![0];
    for f in factors {
        let shift = points.last().expect("nonempty").clone();
        points.extend(f.path.points()[1..].iter().map(|p| &shift + p));
        bounds.push(points.len() - 1);
    }
    (points, bounds)
}

/// Breakpoint indices `(start, end)` of the piece to reflect, on a polyline
/// already refined at the integer levels of `h`.
fn locate_cut(h: &[Q], i: usize, direction: Direction) -> Result<Option<(usize, usize)>> {
    let min = *h.iter().min().expect("nonempty");
    if !min.is_integer() {
        return Err(Error::IntegralityViolation { index: i, min: min.to_string() });
    }
    let next = min + Q::from_integer(1);
    match direction {
        Direction::Raise => {
            if min.is_zero() {
                return Ok(None);
            }
            let t1 = h.iter().position(|&v| v == min).expect("minimum is attained");
            let t0 = h[..t1].iter().rposition(|&v| v == next).expect("h starts at 0 above the minimum");
            Ok(Some((t0, t1)))
        }
        Direction::Lower => {
            let p = h.iter().rposition(|&v| v == min).expect("minimum is attained");
            let end = *h.last().expect("nonempty");
            if (end - min).floor().is_zero() {
                return Ok(None);
            }
            let x = p + 1 + h[p + 1..].iter().position(|&v| v == next).expect("h climbs past the minimum");
            Ok(Some((p, x)))
        }
    }
}

/// Rebuilds `points` with the displacements between `start` and `end`
/// reflected by `s_i`.
fn reflect_piece(rs: &RootSystem, i: usize, points: &[RatVec], start: usize, end: usize) -> Result<Vec<RatVec>> {
    let mut out = Vec::with_capacity(points.len());
    out.extend_from_slice(&points[..=start]);
    for k in start..points.len() - 1 {
        let d = &points[k + 1] - &points[k];
        let d = if k < end { rs.reflect(i, &d)? } else { d };
        let next = out.last().expect("nonempty") + &d;
        out.push(next);
    }
    Ok(out)
}

fn apply_path(rs: &RootSystem, path: &Path, i: usize, direction: Direction) -> Result<Option<Path>> {
    rs.check_index(i)?;
    let (points, h, _) = refine_at_integers(path.points(), i)?;
    let Some((start, end)) = locate_cut(&h, i, direction)? else {
        return Ok(None);
    };
    Ok(Some(Path::from_points(reflect_piece(rs, i, &points, start, end)?)))
}

/// The raising operator `e_i`; `None` stands for the zero result.
pub fn apply_e(rs: &RootSystem, path: &Path, i: usize) -> Result<Option<Path>> {
    apply_path(rs, path, i, Direction::Raise)
}

/// The lowering operator `f_i`; `None` stands for the zero result.
pub fn apply_f(rs: &RootSystem, path: &Path, i: usize) -> Result<Option<Path>> {
    apply_path(rs, path, i, Direction::Lower)
}

pub fn apply_op(rs: &RootSystem, path: &Path, i: usize, direction: Direction) -> Result<Option<Path>> {
    apply_path(rs, path, i, direction)
}

/// Applies a root operator to the concatenation of `m` and attributes the
/// reflected piece to the single factor that contains it.
pub fn apply_op_mono(rs: &RootSystem, m: &Monomial, i: usize, direction: Direction) -> Result<Option<Monomial>> {
    rs.check_index(i)?;
    let (raw, bounds) = raw_points(m.rank(), &m.factors);
    let (points, h, index) = refine_at_integers(&raw, i)?;
    let Some((start, end)) = locate_cut(&h, i, direction)? else {
        return Ok(None);
    };
    let bounds: Vec<usize> = bounds.iter().map(|&b| index[b]).collect();
    let j = (0..m.factors.len())
        .find(|&j| bounds[j] <= start && start < bounds[j + 1])
        .ok_or(Error::FactorBoundaryViolation { index: i })?;
    let (lo, hi) = (bounds[j], bounds[j + 1]);
    if end > hi {
        return Err(Error::FactorBoundaryViolation { index: i });
    }
    let origin = &points[lo];
    let local: Vec<RatVec> = points[lo..=hi].iter().map(|p| p - origin).collect();
    let reflected = reflect_piece(rs, i, &local, start - lo, end - lo)?;
    let mut factors = m.factors.clone();
    factors[j].path = Path::from_points(reflected);
    Ok(Some(Monomial::from_factors(m.rank(), factors)))
}

/// Raises `m` until every `e_i` vanishes, always using the smallest index
/// whose operator is nonzero. Returns the highest monomial and the log.
pub fn raise_to_highest(rs: &RootSystem, m: &Monomial) -> Result<(Monomial, OperatorLog)> {
    let mut current = m.clone();
    let mut log = Vec::new();
    'raise: loop {
        for i in 1..=rs.rank() {
            if let Some(next) = apply_op_mono(rs, &current, i, Direction::Raise)? {
                current = next;
                log.push(i);
                continue 'raise;
            }
        }
        return Ok((current, OperatorLog(log)));
    }
}

/// Replays a raising log backwards with lowering operators.
pub fn lower_by_log(rs: &RootSystem, m: &Monomial, log: &OperatorLog) -> Result<Option<Monomial>> {
    let mut current = m.clone();
    for &i in log.0.iter().rev() {
        match apply_op_mono(rs, &current, i, Direction::Lower)? {
            Some(next) => current = next,
            None => return Ok(None),
        }
    }
    Ok(Some(current))
}

/// Bare-path analogue of [`raise_to_highest`].
pub fn raise_path_to_highest(rs: &RootSystem, path: &Path) -> Result<(Path, OperatorLog)> {
    let mut current = path.clone();
    let mut log = Vec::new();
    'raise: loop {
        for i in 1..=rs.rank() {
            if let Some(next) = apply_e(rs, &current, i)? {
                current = next;
                log.push(i);
                continue 'raise;
            }
        }
        return Ok((current, OperatorLog(log)));
    }
}

/// Bare-path analogue of [`lower_by_log`].
pub fn lower_path_by_log(rs: &RootSystem, path: &Path, log: &OperatorLog) -> Result<Option<Path>> {
    let mut current = path.clone();
    for &i in log.0.iter().rev() {
        match apply_f(rs, &current, i)? {
            Some(next) => current = next,
            None => return Ok(None),
        }
    }
    Ok(Some(current))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::TypeLabel;

    fn a2() -> RootSystem {
        RootSystem::build(TypeLabel::A, 2).unwrap()
    }

    fn v(c: &[i64]) -> RatVec {
        RatVec::from_ints(c)
    }

    // A2 in fundamental-weight coordinates
    const E1: [i64; 2] = [1, 0];
    const E2: [i64; 2] = [-1, 1];
    const E3: [i64; 2] = [0, -1];
    const E12: [i64; 2] = [0, 1];
    const E13: [i64; 2] = [1, -1];
    const E23: [i64; 2] = [-1, 0];

    fn straight(c: [i64; 2]) -> Path {
        Path::straight(v(&c))
    }

    fn col(k: usize, c: [i64; 2]) -> Factor {
        Factor::new(Weight::fundamental(2, k).unwrap(), straight(c))
    }

    fn mono(factors: Vec<Factor>) -> Monomial {
        Monomial::new(2, factors).unwrap()
    }

    fn alpha(i: usize) -> RatVec {
        a2().simple_root(i).unwrap().clone()
    }

    #[test]
    fn e_vanishes_on_dominant_straight_path() {
        assert_eq!(apply_e(&a2(), &straight([1, 1]), 1).unwrap(), None);
        assert_eq!(apply_e(&a2(), &straight([1, 1]), 2).unwrap(), None);
    }

    #[test]
    fn e_examples() {
        let rs = a2();
        let pi8 = straight([-1, -1]);
        let pi6 = Path::straight(-&alpha(2));
        assert_eq!(apply_e(&rs, &pi8, 1).unwrap(), Some(pi6));
        assert_eq!(apply_e(&rs, &straight(E2), 1).unwrap(), Some(straight(E1)));
    }

    #[test]
    fn f_examples() {
        let rs = a2();
        let pi2 = Path::straight(alpha(2));
        assert_eq!(apply_f(&rs, &straight([1, 1]), 1).unwrap(), Some(pi2.clone()));
        let half = &alpha(2) * Q::new(1, 2);
        let pi4 = Path::from_segments(2, [-&half, half.clone()]);
        assert_eq!(apply_f(&rs, &pi2, 2).unwrap(), Some(pi4.clone()));
        assert_eq!(pi4.points(), &[v(&[0, 0]), -&half, v(&[0, 0])]);
        let pi6 = Path::straight(-&alpha(2));
        assert_eq!(apply_f(&rs, &pi6, 2).unwrap(), None);
        assert_eq!(apply_f(&rs, &pi4, 2).unwrap(), Some(pi6));
    }

    #[test]
    fn non_integral_minimum_is_rejected() {
        let p = Path::straight(RatVec::from_coords([Q::new(-1, 2), Q::new(0, 1)]));
        assert!(matches!(apply_e(&a2(), &p, 1), Err(Error::IntegralityViolation { .. })));
        assert!(matches!(apply_f(&a2(), &p, 1), Err(Error::IntegralityViolation { .. })));
        assert!(matches!(apply_f(&a2(), &p, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn monomial_lowering_touches_one_factor() {
        let rs = a2();
        let m = mono(vec![col(1, E1), col(2, E12)]);
        let lowered = apply_op_mono(&rs, &m, 2, Direction::Lower).unwrap().unwrap();
        assert_eq!(lowered, mono(vec![col(1, E1), col(2, E13)]));
    }

    #[test]
    fn monomial_raising_examples() {
        let rs = a2();
        let m = mono(vec![col(2, E23), col(1, E1)]);
        let raised = apply_op_mono(&rs, &m, 1, Direction::Raise).unwrap().unwrap();
        assert_eq!(raised, mono(vec![col(2, E13), col(1, E1)]));

        let dominant = mono(vec![col(1, E1), col(2, E12)]);
        for i in 1..=2 {
            assert_eq!(apply_op_mono(&rs, &dominant, i, Direction::Raise).unwrap(), None);
        }
    }

    #[test]
    fn raising_examples() {
        let rs = a2();
        let dominant = mono(vec![col(1, E1), col(2, E12)]);
        assert_eq!(raise_to_highest(&rs, &dominant).unwrap(), (dominant.clone(), OperatorLog::default()));

        let (hi, log) = raise_to_highest(&rs, &mono(vec![col(1, E2), col(1, E3)])).unwrap();
        assert_eq!(hi, mono(vec![col(1, E1), col(1, E2)]));
        assert_eq!(log.entries(), &[1, 2]);

        let (hi, log) = raise_to_highest(&rs, &mono(vec![col(2, E23), col(1, E1)])).unwrap();
        assert_eq!(hi, mono(vec![col(2, E12), col(1, E1)]));
        assert_eq!(log.entries(), &[1, 2]);
    }

    #[test]
    fn lowering_by_log_examples() {
        let rs = a2();
        let m = mono(vec![col(1, E1), col(2, E12)]);
        assert_eq!(lower_by_log(&rs, &m, &OperatorLog::default()).unwrap(), Some(m.clone()));
        let lowered = lower_by_log(&rs, &m, &OperatorLog(vec![1, 2])).unwrap();
        assert_eq!(lowered, Some(mono(vec![col(1, E2), col(2, E13)])));
        // f_1 f_1 of a single box vanishes
        let single = mono(vec![col(1, E1)]);
        assert_eq!(lower_by_log(&rs, &single, &OperatorLog(vec![1, 1])).unwrap(), None);
    }

    #[test]
    fn raise_then_lower_roundtrips() {
        let rs = a2();
        let m = mono(vec![col(1, E3), col(2, E13), col(1, E2)]);
        let (hi, log) = raise_to_highest(&rs, &m).unwrap();
        assert_eq!(lower_by_log(&rs, &hi, &log).unwrap(), Some(m.clone()));
        let (hp, plog) = raise_path_to_highest(&rs, m.concatenation()).unwrap();
        assert_eq!(&hp, hi.concatenation());
        assert_eq!(plog, log);
        assert_eq!(lower_path_by_log(&rs, &hp, &plog).unwrap().as_ref(), Some(m.concatenation()));
    }

    #[test]
    fn monomial_rejects_bad_factors() {
        let f = Factor::new(Weight::new(&[-1, 0]), straight(E1));
        assert!(matches!(Monomial::new(2, vec![f]), Err(Error::NonDominantWeight(_))));
        let f = Factor::new(Weight::new(&[1, 0, 0]), Path::straight(v(&[1, 0, 0])));
        assert!(Monomial::new(2, vec![f]).is_err());
        assert_eq!(Monomial::empty(2).concatenation(), &Path::trivial(2));
    }
}
