//! Crystal graphs generated by lowering operators, L-S paths of fundamental
//! shape, standard tableaux, and the plactic equivalence.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::path::Path;
use crate::root_ops::{apply_op_mono, lower_by_log, raise_to_highest, Direction, Factor, Monomial, OperatorLog};
use crate::root_system::RootSystem;
use crate::weight::Weight;

/// Vertices in breadth-first discovery order; vertex 0 is the seed. An edge
/// `(u, i, v)` means `f_i(u) = v`.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    vertices: Vec<Monomial>,
    edges: Vec<(usize, usize, usize)>,
}

impl CrystalGraph {
    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn source(&self) -> &Monomial {
        &self.vertices[0]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Breadth-first closure of a highest-weight seed under the lowering
/// operators, children visited in increasing root index.
pub fn generate_crystal(rs: &RootSystem, seed: &Monomial) -> Result<CrystalGraph> {
    for i in 1..=rs.rank() {
        if apply_op_mono(rs, seed, i, Direction::Raise)?.is_some() {
            return Err(Error::NonHighestSeed(i));
        }
    }
    let mut ids: HashMap<Monomial, usize> = HashMap::new();
    let mut vertices = vec![seed.clone()];
    let mut edges = Vec::new();
    ids.insert(seed.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for i in 1..=rs.rank() {
            let Some(child) = apply_op_mono(rs, &vertices[u], i, Direction::Lower)? else {
                continue;
            };
            let v = match ids.get(&child) {
                Some(&v) => v,
                None => {
                    let v = vertices.len();
                    ids.insert(child.clone(), v);
                    vertices.push(child);
                    queue.push_back(v);
                    v
                }
            };
            edges.push((u, i, v));
        }
    }
    Ok(CrystalGraph { vertices, edges })
}

/// The L-S paths of shape `ω_k`, in breadth-first order from `π_{ω_k}`.
pub fn ls_paths(rs: &RootSystem, k: usize) -> Result<Vec<Path>> {
    let seed = Monomial::straight(rs.fundamental(k)?);
    let graph = generate_crystal(rs, &seed)?;
    Ok(graph.vertices.into_iter().map(|m| m.concatenation().clone()).collect())
}

/// `a_1` copies of `π_{ω_1}`, then `a_2` copies of `π_{ω_2}`, and so on.
pub fn dominant_monomial(rs: &RootSystem, shape: &Weight) -> Result<Monomial> {
    if shape.rank() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), actual: shape.rank() });
    }
    if !shape.is_dominant() {
        return Err(Error::NonDominantWeight(shape.to_string()));
    }
    let mut factors = Vec::new();
    for (k, &a) in shape.coords().iter().enumerate() {
        let wk = rs.fundamental(k + 1)?;
        factors.extend((0..a).map(|_| Factor::straight(wk.clone())));
    }
    Monomial::new(rs.rank(), factors)
}

/// A Young tableau (fundamental factor shapes in weakly increasing order)
/// lying in the crystal of the dominant monomial of its shape.
pub fn is_standard(rs: &RootSystem, m: &Monomial) -> Result<bool> {
    let Some(indices) = m.shape_indices() else {
        return Ok(false);
    };
    if indices.windows(2).any(|w| w[0] > w[1]) {
        return Ok(false);
    }
    let (highest, _) = raise_to_highest(rs, m)?;
    Ok(highest == dominant_monomial(rs, &m.shape())?)
}

/// A monomial together with its highest element and raising log.
#[derive(Clone, Debug)]
pub struct Raised {
    pub monomial: Monomial,
    pub highest: Monomial,
    pub log: OperatorLog,
}

impl Raised {
    pub fn new(rs: &RootSystem, m: &Monomial) -> Result<Self> {
        let (highest, log) = raise_to_highest(rs, m)?;
        Ok(Raised { monomial: m.clone(), highest, log })
    }
}

/// Plactic equivalence on already-raised monomials: equal highest weights,
/// and transporting `a` into the crystal of `b` lands on `b`'s path.
pub fn equivalent_raised(rs: &RootSystem, a: &Raised, b: &Raised) -> Result<bool> {
    if a.highest.weight() != b.highest.weight() {
        return Ok(false);
    }
    Ok(match lower_by_log(rs, &b.highest, &a.log)? {
        Some(image) => image.concatenation() == b.monomial.concatenation(),
        None => false,
    })
}

/// `m1 ∼ m2` in the plactic monoid.
pub fn equivalent(rs: &RootSystem, m1: &Monomial, m2: &Monomial) -> Result<bool> {
    equivalent_raised(rs, &Raised::new(rs, m1)?, &Raised::new(rs, m2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::TypeLabel;
    use crate::weight::RatVec;

    fn rs(label: TypeLabel, rank: usize) -> RootSystem {
        RootSystem::build(label, rank).unwrap()
    }

    fn straight(c: [i64; 2]) -> Path {
        Path::straight(RatVec::from_ints(&c))
    }

    fn col(k: usize, c: [i64; 2]) -> Factor {
        Factor::new(Weight::fundamental(2, k).unwrap(), straight(c))
    }

    fn mono(f: Vec<Factor>) -> Monomial {
        Monomial::new(2, f).unwrap()
    }

    const E1: [i64; 2] = [1, 0];
    const E2: [i64; 2] = [-1, 1];
    const E3: [i64; 2] = [0, -1];
    const E12: [i64; 2] = [0, 1];
    const E13: [i64; 2] = [1, -1];
    const E23: [i64; 2] = [-1, 0];

    #[test]
    fn adjoint_crystal_of_a2() {
        let a2 = rs(TypeLabel::A, 2);
        let g = generate_crystal(&a2, &Monomial::straight(Weight::new(&[1, 1]))).unwrap();
        assert_eq!(g.len(), 8);
        let expected = vec![(0, 1, 1), (0, 2, 2), (1, 2, 3), (2, 1, 4), (3, 2, 5), (4, 1, 6), (5, 1, 7), (6, 2, 7)];
        assert_eq!(g.edges(), expected.as_slice());
    }

    #[test]
    fn fundamental_crystals() {
        let a2 = rs(TypeLabel::A, 2);
        assert_eq!(ls_paths(&a2, 1).unwrap(), vec![straight(E1), straight(E2), straight(E3)]);
        assert_eq!(ls_paths(&a2, 2).unwrap(), vec![straight(E12), straight(E13), straight(E23)]);
        assert_eq!(ls_paths(&rs(TypeLabel::C, 2), 1).unwrap().len(), 4);
        assert_eq!(ls_paths(&rs(TypeLabel::G2, 2), 2).unwrap().len(), 14);
        assert!(matches!(ls_paths(&a2, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn non_highest_seed_is_rejected() {
        let a2 = rs(TypeLabel::A, 2);
        let seed = mono(vec![col(1, E2)]);
        assert!(matches!(generate_crystal(&a2, &seed), Err(Error::NonHighestSeed(1))));
    }

    #[test]
    fn dominant_monomial_examples() {
        let a2 = rs(TypeLabel::A, 2);
        assert_eq!(dominant_monomial(&a2, &Weight::new(&[1, 1])).unwrap(), mono(vec![col(1, E1), col(2, E12)]));
        assert_eq!(dominant_monomial(&a2, &Weight::new(&[0, 0])).unwrap(), Monomial::empty(2));
        assert_eq!(dominant_monomial(&a2, &Weight::new(&[2, 0])).unwrap(), mono(vec![col(1, E1), col(1, E1)]));
        assert!(matches!(dominant_monomial(&a2, &Weight::new(&[1, -1])), Err(Error::NonDominantWeight(_))));
    }

    #[test]
    fn standardness_examples() {
        let a2 = rs(TypeLabel::A, 2);
        assert!(is_standard(&a2, &dominant_monomial(&a2, &Weight::new(&[2, 1])).unwrap()).unwrap());
        assert!(is_standard(&a2, &Monomial::empty(2)).unwrap());
        assert!(is_standard(&a2, &mono(vec![col(1, E2), col(1, E1)])).unwrap());
        assert!(!is_standard(&a2, &mono(vec![col(1, E1), col(1, E2)])).unwrap());
        // shapes out of order
        assert!(!is_standard(&a2, &mono(vec![col(2, E12), col(1, E1)])).unwrap());
        // a non-fundamental factor never forms a tableau
        assert!(!is_standard(&a2, &Monomial::straight(Weight::new(&[1, 1]))).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let a2 = rs(TypeLabel::A, 2);
        let m = mono(vec![col(1, E1), col(1, E2)]);
        assert!(equivalent(&a2, &m, &m).unwrap());
        assert!(equivalent(&a2, &m, &mono(vec![col(2, E12)])).unwrap());
        assert!(!equivalent(&a2, &m, &mono(vec![col(1, E2), col(1, E1)])).unwrap());
        // 113 ~ 131 (same highest weight, transported by the same log)
        let w113 = mono(vec![col(1, E1), col(1, E1), col(1, E3)]);
        let w131 = mono(vec![col(1, E1), col(1, E3), col(1, E1)]);
        assert!(equivalent(&a2, &w113, &w131).unwrap());
        // 123 ~ θ
        let w123 = mono(vec![col(1, E1), col(1, E2), col(1, E3)]);
        assert!(equivalent(&a2, &w123, &Monomial::empty(2)).unwrap());
        let _ = (E13, E23);
    }

    #[test]
    fn crystal_has_unique_source_and_sink() {
        for (label, rank) in [(TypeLabel::A, 3), (TypeLabel::B, 2), (TypeLabel::C, 2), (TypeLabel::G2, 2)] {
            let s = rs(label, rank);
            let seed = Monomial::straight(s.rho().clone());
            let g = generate_crystal(&s, &seed).unwrap();
            assert_eq!(g.len() as u64, s.weyl_dim(s.rho()).unwrap());
            let vanish = |m: &Monomial, d| (1..=rank).all(|i| apply_op_mono(&s, m, i, d).unwrap().is_none());
            let sources: Vec<_> = g.vertices().iter().filter(|m| vanish(m, Direction::Raise)).collect();
            let sinks: Vec<_> = g.vertices().iter().filter(|m| vanish(m, Direction::Lower)).collect();
            assert_eq!(sources, vec![g.source()]);
            assert_eq!(sinks.len(), 1);
            for &(u, i, v) in g.edges() {
                let up = apply_op_mono(&s, &g.vertices()[v], i, Direction::Raise).unwrap();
                assert_eq!(up.as_ref(), Some(&g.vertices()[u]));
            }
        }
    }

    #[test]
    fn fundamental_weights_lie_below_their_shape() {
        for (label, rank) in [(TypeLabel::A, 3), (TypeLabel::B, 3), (TypeLabel::C, 3), (TypeLabel::D, 4), (TypeLabel::G2, 2)] {
            let s = rs(label, rank);
            for k in 1..=rank {
                let wk = s.fundamental(k).unwrap();
                let paths = ls_paths(&s, k).unwrap();
                assert_eq!(paths.len() as u64, s.weyl_dim(&wk).unwrap());
                for p in paths.iter().skip(1) {
                    let w = p.weight().to_weight().unwrap();
                    assert!(s.precedes(&w, &wk), "{label}{rank} ω{k}: {w}");
                }
            }
        }
    }
}
