//! Type A ground truth: the congruence generated by the relations
//!
//! * `xzy = zxy` for `x < y ≤ z`,
//! * `yxz = yzx` for `x ≤ y < z`,
//! * `12…n = 1`,
//!
//! on words over `{1, …, n}`, computed by brute-force closure, and compared
//! with the path-model equivalence of the corresponding monomials.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::{equivalent_raised, Raised};
use crate::error::{Error, Result};
use crate::path::Path;
use crate::plactic::{with_threads, GeneratorTable, RewriteSystem, Word};
use crate::root_ops::{Factor, Monomial};
use crate::root_system::{RootSystem, TypeLabel};
use crate::weight::Weight;

/// Default length budget for [`knuth_equiv`].
pub const DEFAULT_BUDGET: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct BoxWord(pub Vec<u8>);

impl BoxWord {
    pub fn new(letters: &[u8]) -> Self {
        BoxWord(letters.to_vec())
    }

    /// Digits `1`–`9`; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c.to_digit(10) {
                Some(d) if d > 0 => Ok(d as u8),
                _ => Err(Error::Invalid(format!("not a box letter: {c:?}"))),
            })
            .collect::<Result<_>>()
            .map(BoxWord)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&x| x == 0 || x as usize > n) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter: letter as usize, n }),
            None => Ok(()),
        }
    }

    /// Multiplicity of each letter; two congruent words share it up to
    /// whole copies of `12…n`.
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for &x in &self.0 {
            c[x as usize - 1] += 1;
        }
        c
    }
}

impl fmt::Display for BoxWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// All words reachable from `w` by one relation, in either direction,
/// staying within `max_len` letters.
fn neighbours(n: usize, w: &[u8], max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(2) {
        let (p, q, r) = (w[i], w[i + 1], w[i + 2]);
        let mut push = |a: u8, b: u8, c: u8| {
            let mut v = w.to_vec();
            v[i..i + 3].copy_from_slice(&[a, b, c]);
            out.push(v);
        };
        // xzy <-> zxy with x < y <= z
        if p < r && r <= q {
            push(q, p, r);
        }
        if q < r && r <= p {
            push(q, p, r);
        }
        // yxz <-> yzx with x <= y < z
        if q <= p && p < r {
            push(p, r, q);
        }
        if r <= p && p < q {
            push(p, r, q);
        }
    }
    let column: Vec<u8> = (1..=n as u8).collect();
    for i in 0..=w.len().saturating_sub(n) {
        if w.len() >= n && w[i..i + n] == column[..] {
            let mut v = w[..i].to_vec();
            v.extend_from_slice(&w[i + n..]);
            out.push(v);
        }
    }
    if w.len() + n <= max_len {
        for i in 0..=w.len() {
            let mut v = w[..i].to_vec();
            v.extend_from_slice(&column);
            v.extend_from_slice(&w[i..]);
            out.push(v);
        }
    }
    out
}

/// The congruence class of `w` among words of at most `max_len` letters.
pub fn knuth_class(n: usize, w: &BoxWord, max_len: usize) -> Result<HashSet<BoxWord>> {
    w.check(n)?;
    let mut seen: HashSet<Vec<u8>> = HashSet::from([w.0.clone()]);
    let mut queue = VecDeque::from([w.0.clone()]);
    while let Some(u) = queue.pop_front() {
        for v in neighbours(n, &u, max_len) {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    Ok(seen.into_iter().map(BoxWord).collect())
}

/// Closure test with the default length budget.
pub fn knuth_equiv(n: usize, w1: &BoxWord, w2: &BoxWord) -> Result<bool> {
    knuth_equiv_with_budget(n, w1, w2, DEFAULT_BUDGET)
}

/// Both words must have at most `budget` letters; the closure may pass
/// through words of up to `budget + n` letters.
pub fn knuth_equiv_with_budget(n: usize, w1: &BoxWord, w2: &BoxWord, budget: usize) -> Result<bool> {
    if w1.len() > budget || w2.len() > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    w2.check(n)?;
    Ok(knuth_class(n, w1, budget + n)?.contains(w2))
}

fn check_type_a(rs: &RootSystem) -> Result<usize> {
    if rs.label() != TypeLabel::A {
        return Err(Error::Invalid(format!("box words need type A, got {}{}", rs.label(), rs.rank())));
    }
    Ok(rs.rank() + 1)
}

/// `ε_x` in fundamental-weight coordinates: `ω_x - ω_{x-1}`.
pub fn box_weight(rank: usize, x: u8) -> Weight {
    let x = x as usize;
    let mut c = vec![0i64; rank];
    if x <= rank {
        c[x - 1] += 1;
    }
    if x >= 2 {
        c[x - 2] -= 1;
    }
    Weight::new(&c)
}

/// Letter `x` becomes the straight path `π_{ε_x}`.
pub fn box_to_monomial(rs: &RootSystem, w: &BoxWord) -> Result<Monomial> {
    let n = check_type_a(rs)?;
    w.check(n)?;
    let omega1 = rs.fundamental(1)?;
    let factors = w
        .0
        .iter()
        .map(|&x| Factor::new(omega1.clone(), Path::straight(box_weight(rs.rank(), x).to_rat())))
        .collect();
    Monomial::new(rs.rank(), factors)
}

/// The generator word of a box word.
pub fn box_to_word(rs: &RootSystem, table: &GeneratorTable, w: &BoxWord) -> Result<Word> {
    table.factorize(&box_to_monomial(rs, w)?)
}

/// Letters of the type A column whose weight is `w`, in increasing order.
pub fn column_letters(w: &Weight) -> Vec<u8> {
    // coefficient of ε_x, up to a common shift
    let rank = w.rank();
    let mut eps = vec![0i64; rank + 1];
    for x in (0..rank).rev() {
        eps[x] = eps[x + 1] + w.coords()[x];
    }
    let top = eps.iter().copied().max().unwrap_or(0);
    if eps.iter().all(|&e| e == top) {
        return Vec::new();
    }
    (1..=rank as u8 + 1).filter(|&x| eps[x as usize - 1] == top).collect()
}

/// Expands a generator word into box letters, columns in factor order, each
/// column read in increasing order (`descending == false`) or decreasing.
pub fn word_to_boxes(table: &GeneratorTable, w: &Word, descending: bool) -> BoxWord {
    let mut out = Vec::new();
    for &g in w.letters() {
        let mut col = column_letters(&table.get(g).weight);
        if descending {
            col.reverse();
        }
        out.extend(col);
    }
    BoxWord(out)
}

/// All words over `{1..n}` of length at most `max_len`, shortest first,
/// then lexicographic.
pub fn all_words(n: usize, max_len: usize) -> Vec<BoxWord> {
    let mut out = vec![BoxWord::default()];
    let mut layer = vec![Vec::<u8>::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (1..=n as u8).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(BoxWord));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub left: String,
    pub right: String,
    pub knuth: bool,
    pub path_model: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub n: usize,
    pub max_len: usize,
    pub words: usize,
    pub classes_path_model: usize,
    pub classes_knuth: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty() && self.classes_knuth == self.classes_path_model
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} max_len={}: {} words, {} path-model classes, {} Knuth classes, {} mismatches",
            self.n,
            self.max_len,
            self.words,
            self.classes_path_model,
            self.classes_knuth,
            self.mismatches.len()
        )
    }
}

/// Class label of every word under the Knuth closure.
fn knuth_labels(n: usize, words: &[BoxWord], max_len: usize) -> Result<Vec<usize>> {
    let position: HashMap<&BoxWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut label = vec![usize::MAX; words.len()];
    let mut next = 0;
    for i in 0..words.len() {
        if label[i] != usize::MAX {
            continue;
        }
        for w in knuth_class(n, &words[i], max_len + n)? {
            if let Some(&j) = position.get(&w) {
                label[j] = next;
            }
        }
        next += 1;
    }
    Ok(label)
}

fn count_classes(len: usize, related: impl Fn(usize, usize) -> bool) -> usize {
    let mut label = vec![usize::MAX; len];
    let mut next = 0;
    for i in 0..len {
        if label[i] == usize::MAX {
            for j in i..len {
                if label[j] == usize::MAX && related(i, j) {
                    label[j] = next;
                }
            }
            next += 1;
        }
    }
    next
}

/// Compares the two congruences on every pair of words over `{1..n}` of at
/// most `max_len` letters, the empty word included.
pub fn cross_check(n: usize, max_len: usize, threads: Option<usize>) -> Result<CrossCheckReport> {
    if n < 2 {
        return Err(Error::Invalid(format!("alphabet size must be at least 2, got {n}")));
    }
    let rs = RootSystem::build(TypeLabel::A, n - 1)?;
    let words = all_words(n, max_len);
    let knuth = knuth_labels(n, &words, max_len)?;
    let raised: Vec<Raised> = with_threads(threads, || {
        words
            .par_iter()
            .map(|w| Raised::new(&rs, &box_to_monomial(&rs, w)?))
            .collect::<Result<_>>()
    })?;
    let path_rows: Vec<Vec<bool>> = with_threads(threads, || {
        (0..words.len())
            .into_par_iter()
            .map(|i| {
                (0..words.len())
                    .map(|j| equivalent_raised(&rs, &raised[i], &raised[j]))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()
    })?;
    let mut mismatches = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let k = knuth[i] == knuth[j];
            let p = path_rows[i][j];
            if k != p || p != path_rows[j][i] {
                mismatches.push(Mismatch {
                    left: words[i].to_string(),
                    right: words[j].to_string(),
                    knuth: k,
                    path_model: p,
                });
            }
        }
    }
    let classes_knuth = knuth.iter().collect::<HashSet<_>>().len();
    let classes_path_model = count_classes(words.len(), |i, j| path_rows[i][j]);
    Ok(CrossCheckReport { n, max_len, words: words.len(), classes_path_model, classes_knuth, mismatches })
}

/// Which ways of reading normal forms back as box words stay in the Knuth
/// class of the original word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReadingFinding {
    pub n: usize,
    pub max_len: usize,
    /// Reading name to the number of words it gets wrong.
    pub violations: BTreeMap<String, usize>,
}

impl ReadingFinding {
    pub fn consistent(&self) -> Vec<&str> {
        self.violations.iter().filter(|(_, &v)| v == 0).map(|(k, _)| k.as_str()).collect()
    }
}

const READINGS: [(&str, bool, bool); 4] = [
    ("columns in order, increasing", false, false),
    ("columns in order, decreasing", false, true),
    ("columns reversed, increasing", true, false),
    ("columns reversed, decreasing", true, true),
];

/// Tries the four column readings of each normal form.
pub fn reading_finding(n: usize, max_len: usize) -> Result<ReadingFinding> {
    let rs = RootSystem::build(TypeLabel::A, n - 1)?;
    let system = RewriteSystem::build(&rs)?;
    let mut violations: BTreeMap<String, usize> = READINGS.iter().map(|r| (r.0.to_string(), 0)).collect();
    for w in all_words(n, max_len) {
        let nf = system.normalize(&box_to_word(&rs, system.table(), &w)?)?;
        let class = knuth_class(n, &w, max_len + n)?;
        for (name, reversed, descending) in READINGS {
            let mut word = nf.clone();
            if reversed {
                word.0.reverse();
            }
            let reading = word_to_boxes(system.table(), &word, descending);
            if !class.contains(&reading) {
                *violations.get_mut(name).expect("known reading") += 1;
            }
        }
    }
    Ok(ReadingFinding { n, max_len, violations })
}
