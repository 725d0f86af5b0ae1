//! Shared fixtures for the criterion benches.

use lsplacto::{RewriteSystem, RootSystem, TypeLabel, Word};

pub fn system(label: TypeLabel, rank: usize) -> RewriteSystem {
    RewriteSystem::build(&RootSystem::build(label, rank).expect("supported")).expect("rules build")
}

/// `count` words of `len` letters, walking the alphabet with coprime
/// strides so the inputs are varied but fixed.
pub fn words(system: &RewriteSystem, count: usize, len: usize) -> Vec<Word> {
    let n = system.table().len();
    (0..count)
        .map(|c| Word((0..len).map(|i| (c * 7 + i * (2 * c + 3) + i * i) % n).collect()))
        .collect()
}
