//! The column presentation of the plactic monoid.
//!
//! Generators are the L-S paths of fundamental shape. For every ordered pair
//! of generators whose concatenation is not a standard tableau there is one
//! rule, rewriting the pair to the unique equivalent standard tableau. The
//! audits check, rule by rule, that shapes strictly decrease and that every
//! overlap of two rules resolves to a common normal form.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::{dominant_monomial, ls_paths, Raised};
use crate::error::{Error, Result};
use crate::path::Path;
use crate::root_ops::{lower_by_log, Factor, Monomial};
use crate::root_system::{ColumnDecomposition, RootSystem, TypeLabel};
use crate::weight::Weight;

/// Step budget for [`RewriteSystem::normalize`].
pub const NORMALIZE_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct Generator {
    pub id: String,
    /// Fundamental index `k` of the shape `ω_k`.
    pub shape: usize,
    pub ordinal: usize,
    pub path: Path,
    pub weight: Weight,
}

/// The alphabet: L-S paths of shape `ω_1`, then `ω_2`, and so on, each
/// block in breadth-first crystal order.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    rank: usize,
    entries: Vec<Generator>,
    by_path: HashMap<Path, usize>,
    by_id: HashMap<String, usize>,
}

/// A word over the generators, stored as indices into the table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

impl GeneratorTable {
    pub fn build(rs: &RootSystem) -> Result<Self> {
        let mut entries = Vec::new();
        for k in 1..=rs.rank() {
            for (ordinal, path) in ls_paths(rs, k)?.into_iter().enumerate() {
                let weight = path.weight().to_weight().expect("L-S paths end at integral weights");
                entries.push(Generator { id: format!("w{k}.{ordinal}"), shape: k, ordinal, path, weight });
            }
        }
        let by_path = entries.iter().enumerate().map(|(i, g)| (g.path.clone(), i)).collect();
        let by_id = entries.iter().enumerate().map(|(i, g)| (g.id.clone(), i)).collect();
        Ok(GeneratorTable { rank: rs.rank(), entries, by_path, by_id })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Generator] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> &Generator {
        &self.entries[index]
    }

    pub fn index_of_id(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn index_of_path(&self, path: &Path) -> Option<usize> {
        self.by_path.get(path).copied()
    }

    /// Generators of shape `ω_k`, as table indices.
    pub fn block(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().enumerate().filter(move |(_, g)| g.shape == k).map(|(i, _)| i)
    }

    pub fn monomial(&self, word: &Word) -> Monomial {
        let factors = word
            .0
            .iter()
            .map(|&i| {
                let g = &self.entries[i];
                Factor::new(Weight::fundamental(self.rank, g.shape).expect("valid shape"), g.path.clone())
            })
            .collect();
        Monomial::new(self.rank, factors).expect("generators are well formed")
    }

    /// Reads a monomial back as a word; every factor must be a generator of
    /// the matching shape.
    pub fn factorize(&self, m: &Monomial) -> Result<Word> {
        m.factors()
            .iter()
            .map(|f| {
                let unknown = || Error::UnknownGenerator(f.path.to_string());
                let i = self.index_of_path(&f.path).ok_or_else(unknown)?;
                if f.shape.fundamental_index() != Some(self.entries[i].shape) {
                    return Err(unknown());
                }
                Ok(i)
            })
            .collect::<Result<_>>()
            .map(Word)
    }

    /// Parses whitespace- or comma-separated generator ids.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|id| self.index_of_id(id).ok_or_else(|| Error::UnknownGenerator(id.to_string())))
            .collect::<Result<_>>()
            .map(Word)
    }

    pub fn format_word(&self, word: &Word) -> String {
        word.0.iter().map(|&i| self.entries[i].id.as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn ids(&self, word: &Word) -> Vec<String> {
        word.0.iter().map(|&i| self.entries[i].id.clone()).collect()
    }

    /// Sum of the generator weights.
    pub fn word_weight(&self, word: &Word) -> Weight {
        let mut total = Weight::zero(self.rank);
        for &i in &word.0 {
            total += &self.entries[i].weight;
        }
        total
    }

    /// Sum of the generator shapes.
    pub fn word_shape(&self, word: &Word) -> Weight {
        let mut total = Weight::zero(self.rank);
        for &i in &word.0 {
            total += &Weight::fundamental(self.rank, self.entries[i].shape).expect("valid shape");
        }
        total
    }
}

/// The standard tableau equivalent to `m`, as a word: raise `m`, then replay
/// the log on the dominant monomial of the highest weight.
pub fn standard_form(rs: &RootSystem, table: &GeneratorTable, m: &Monomial) -> Result<Word> {
    standard_form_raised(rs, table, &Raised::new(rs, m)?)
}

fn standard_form_raised(rs: &RootSystem, table: &GeneratorTable, raised: &Raised) -> Result<Word> {
    let mu = highest_weight(&raised.highest)?;
    let dominant = dominant_monomial(rs, &mu)?;
    let lowered = lower_by_log(rs, &dominant, &raised.log)?
        .ok_or_else(|| Error::UnknownGenerator(format!("log {:?} vanishes on the dominant monomial", raised.log.0)))?;
    table.factorize(&lowered)
}

fn highest_weight(highest: &Monomial) -> Result<Weight> {
    highest
        .weight()
        .to_weight()
        .filter(Weight::is_dominant)
        .ok_or_else(|| Error::NonDominantWeight(highest.weight().to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: (usize, usize),
    pub rhs: Word,
    /// Tableau shape of the left-hand side used by the termination order:
    /// `ω_{k1} + ω_{k2}` when the pair is a tableau, otherwise the shape of
    /// its decomposition into box columns.
    pub lhs_shape: Weight,
    pub rhs_shape: Weight,
    /// Whether the factor shapes of the left-hand side are in tableau order.
    pub lhs_is_tableau: bool,
}

/// The compiled presentation: generators plus one rule per non-standard
/// ordered pair, sorted by left-hand side.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    root_system: RootSystem,
    table: GeneratorTable,
    rules: Vec<Rule>,
    lookup: Vec<Option<u32>>,
    columns: Option<ColumnDecomposition>,
}

/// Runs `f` on a dedicated pool of `threads` workers, or on the global
/// pool when `threads` is `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

impl RewriteSystem {
    pub fn build(rs: &RootSystem) -> Result<Self> {
        Self::build_with_threads(rs, None)
    }

    pub fn build_with_threads(rs: &RootSystem, threads: Option<usize>) -> Result<Self> {
        let table = GeneratorTable::build(rs)?;
        let columns = rs.column_decomposition();
        let n = table.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let built: Vec<Result<Option<Rule>>> = with_threads(threads, || {
            pairs
                .par_iter()
                .map(|&(a, b)| rule_for_pair(rs, &table, columns.as_ref(), a, b))
                .collect()
        });
        let mut rules = Vec::new();
        let mut lookup = vec![None; n * n];
        for rule in built {
            if let Some(rule) = rule? {
                lookup[rule.lhs.0 * n + rule.lhs.1] = Some(rules.len() as u32);
                rules.push(rule);
            }
        }
        Ok(RewriteSystem { root_system: rs.clone(), table, rules, lookup, columns })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn label(&self) -> TypeLabel {
        self.root_system.label()
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn column_decomposition(&self) -> Option<&ColumnDecomposition> {
        self.columns.as_ref()
    }

    pub fn rule(&self, a: usize, b: usize) -> Option<&Rule> {
        let n = self.table.len();
        self.lookup[a * n + b].map(|r| &self.rules[r as usize])
    }

    /// Rewrites with the leftmost applicable rule until none applies.
    pub fn normalize(&self, word: &Word) -> Result<Word> {
        self.normalize_with_budget(word, NORMALIZE_BUDGET)
    }

    pub fn normalize_with_budget(&self, word: &Word, budget: usize) -> Result<Word> {
        let n = self.table.len();
        if let Some(&bad) = word.0.iter().find(|&&g| g >= n) {
            return Err(Error::UnknownGenerator(format!("index {bad}")));
        }
        let mut w = word.0.clone();
        let mut steps = 0usize;
        let mut i = 0usize;
        while i + 1 < w.len() {
            match self.rule(w[i], w[i + 1]) {
                Some(rule) => {
                    steps += 1;
                    if steps > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    w.splice(i..i + 2, rule.rhs.0.iter().copied());
                    // pairs left of i - 1 are untouched and already irreducible
                    i = i.saturating_sub(1);
                }
                None => i += 1,
            }
        }
        Ok(Word(w))
    }

    /// Whether no rule applies anywhere in `word`.
    pub fn is_normal_form(&self, word: &Word) -> bool {
        word.0.windows(2).all(|p| self.rule(p[0], p[1]).is_none())
    }
}

fn rule_for_pair(
    rs: &RootSystem,
    table: &GeneratorTable,
    columns: Option<&ColumnDecomposition>,
    a: usize,
    b: usize,
) -> Result<Option<Rule>> {
    let (k1, k2) = (table.get(a).shape, table.get(b).shape);
    let lhs = Word(vec![a, b]);
    let m = table.monomial(&lhs);
    let raised = Raised::new(rs, &m)?;
    let lhs_is_tableau = k1 <= k2;
    let tableau_shape = m.shape();
    if lhs_is_tableau && raised.highest == dominant_monomial(rs, &tableau_shape)? {
        return Ok(None);
    }
    let rhs = standard_form_raised(rs, table, &raised)?;
    let rhs_shape = table.word_shape(&rhs);
    let lhs_shape = match columns {
        Some(c) if !lhs_is_tableau => {
            Weight::fundamental(rs.rank(), c.box_index)?.scaled(c.counts[k1 - 1] + c.counts[k2 - 1])
        }
        _ => tableau_shape,
    };
    Ok(Some(Rule { lhs: (a, b), rhs, lhs_shape, rhs_shape, lhs_is_tableau }))
}

/// Compiles the rule set.
pub fn build_rules(rs: &RootSystem) -> Result<RewriteSystem> {
    RewriteSystem::build(rs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleFailure {
    pub lhs: [String; 2],
    pub rhs: Vec<String>,
    pub lhs_shape: Weight,
    pub rhs_shape: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TerminationReport {
    pub pass: bool,
    pub rules_checked: usize,
    pub max_rhs_length: usize,
    pub failures: Vec<RuleFailure>,
}

/// Checks `rhs_shape ≺ lhs_shape` for every rule.
pub fn audit_termination(rs: &RootSystem, system: &RewriteSystem) -> TerminationReport {
    audit_rules(rs, system, system.rules())
}

fn audit_rules(rs: &RootSystem, system: &RewriteSystem, rules: &[Rule]) -> TerminationReport {
    let table = system.table();
    let failures: Vec<RuleFailure> = rules
        .iter()
        .filter(|r| !rs.precedes(&r.rhs_shape, &r.lhs_shape))
        .map(|r| RuleFailure {
            lhs: [table.get(r.lhs.0).id.clone(), table.get(r.lhs.1).id.clone()],
            rhs: table.ids(&r.rhs),
            lhs_shape: r.lhs_shape.clone(),
            rhs_shape: r.rhs_shape.clone(),
        })
        .collect();
    TerminationReport {
        pass: failures.is_empty(),
        rules_checked: rules.len(),
        max_rhs_length: rules.iter().map(|r| r.rhs.len()).max().unwrap_or(0),
        failures,
    }
}

/// Audits an arbitrary rule list against the same order; used to check
/// that the audit rejects rules pointing the wrong way.
pub fn audit_rule_list(rs: &RootSystem, system: &RewriteSystem, rules: &[Rule]) -> TerminationReport {
    audit_rules(rs, system, rules)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleFailure {
    pub triple: [String; 3],
    pub left: Result<Vec<String>, String>,
    pub right: Result<Vec<String>, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport {
    pub pass: bool,
    pub triples_checked: usize,
    pub failures: Vec<TripleFailure>,
}

/// Reduces both one-step descendants of every overlap `c1 c2 c3` (rules on
/// `c1 c2` and on `c2 c3`) to normal form and compares them.
pub fn audit_local_confluence(system: &RewriteSystem, threads: Option<usize>) -> ConfluenceReport {
    let n = system.table().len();
    let results: Vec<Vec<Option<TripleFailure>>> = with_threads(threads, || {
        system
            .rules()
            .par_iter()
            .map(|r1| {
                let (a, b) = r1.lhs;
                (0..n)
                    .filter_map(|c| system.rule(b, c).map(|r2| (c, r2)))
                    .map(|(c, r2)| check_triple(system, r1, r2, a, c))
                    .collect()
            })
            .collect()
    });
    let triples_checked = results.iter().map(Vec::len).sum();
    let failures: Vec<TripleFailure> = results.into_iter().flatten().flatten().collect();
    ConfluenceReport { pass: failures.is_empty(), triples_checked, failures }
}

fn check_triple(system: &RewriteSystem, r1: &Rule, r2: &Rule, a: usize, c: usize) -> Option<TripleFailure> {
    let table = system.table();
    let mut left = r1.rhs.0.clone();
    left.push(c);
    let mut right = vec![a];
    right.extend_from_slice(&r2.rhs.0);
    let left = system.normalize(&Word(left));
    let right = system.normalize(&Word(right));
    match (&left, &right) {
        (Ok(l), Ok(r)) if l == r => None,
        _ => {
            let show = |w: Result<Word>| w.map(|w| table.ids(&w)).map_err(|e| e.to_string());
            Some(TripleFailure {
                triple: [table.get(a).id.clone(), table.get(r1.lhs.1).id.clone(), table.get(c).id.clone()],
                left: show(left),
                right: show(right),
            })
        }
    }
}

impl fmt::Display for TerminationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "termination: {} ({} rules, {} failures, max rhs length {})",
            if self.pass { "PASS" } else { "FAIL" },
            self.rules_checked,
            self.failures.len(),
            self.max_rhs_length
        )
    }
}

impl fmt::Display for ConfluenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "confluence: {} ({} critical triples, {} failures)",
            if self.pass { "PASS" } else { "FAIL" },
            self.triples_checked,
            self.failures.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::RatVec;

    fn system(label: TypeLabel, rank: usize) -> RewriteSystem {
        build_rules(&RootSystem::build(label, rank).unwrap()).unwrap()
    }

    fn gen(table: &GeneratorTable, coords: &[i64]) -> usize {
        table.index_of_path(&Path::straight(RatVec::from_ints(coords))).unwrap()
    }

    #[test]
    fn generator_counts() {
        let count = |l, r| GeneratorTable::build(&RootSystem::build(l, r).unwrap()).unwrap().len();
        assert_eq!(count(TypeLabel::A, 2), 6);
        assert_eq!(count(TypeLabel::A, 3), 14);
        assert_eq!(count(TypeLabel::G2, 2), 21);
        let t = GeneratorTable::build(&RootSystem::build(TypeLabel::A, 2).unwrap()).unwrap();
        assert_eq!(t.block(1).count(), 3);
        assert_eq!(t.get(3).id, "w2.0");
        assert_eq!(t.parse_word("w1.0, w2.1").unwrap(), Word(vec![0, 4]));
        assert!(matches!(t.parse_word("w9.9"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn a1_has_a_single_rule_to_the_empty_word() {
        let s = system(TypeLabel::A, 1);
        assert_eq!(s.table().len(), 2);
        assert_eq!(s.rules().len(), 1);
        let r = &s.rules()[0];
        assert_eq!(r.lhs, (0, 1));
        assert!(r.rhs.is_empty());
        assert_eq!(r.lhs_shape, Weight::new(&[2]));
        assert_eq!(r.rhs_shape, Weight::new(&[0]));
        let report = audit_termination(s.root_system(), &s);
        assert!(report.pass);
        assert_eq!(report.max_rhs_length, 0);
    }

    #[test]
    fn a2_rule_examples() {
        let s = system(TypeLabel::A, 2);
        let t = s.table();
        let (e1, e2) = (gen(t, &[1, 0]), gen(t, &[-1, 1]));
        let (e12, e13, e23) = (gen(t, &[0, 1]), gen(t, &[1, -1]), gen(t, &[-1, 0]));
        assert_eq!(s.rule(e1, e2).unwrap().rhs, Word(vec![e12]));
        assert_eq!(s.rule(e23, e1).unwrap().rhs, Word(vec![e2, e13]));
        assert!(s.rule(e2, e1).is_none());
        assert!(s.rule(e1, e1).is_none());
        // shapes out of order are never standard
        assert!(s.rule(e12, e1).is_some());

        let m = t.monomial(&Word(vec![e23, e1]));
        assert_eq!(standard_form(s.root_system(), t, &m).unwrap(), Word(vec![e2, e13]));
        let standard = Word(vec![e2, e13]);
        assert_eq!(standard_form(s.root_system(), t, &t.monomial(&standard)).unwrap(), standard);
    }

    #[test]
    fn a2_normalize_examples() {
        let s = system(TypeLabel::A, 2);
        let t = s.table();
        let (e1, e2, e3) = (gen(t, &[1, 0]), gen(t, &[-1, 1]), gen(t, &[0, -1]));
        let e13 = gen(t, &[1, -1]);
        assert_eq!(s.normalize(&Word::default()).unwrap(), Word::default());
        assert_eq!(s.normalize(&Word(vec![e1, e2, e3])).unwrap(), Word::default());
        let w = Word(vec![e2, e3, e1]);
        assert_eq!(s.normalize(&w).unwrap(), Word(vec![e2, e13]));
        assert_eq!(standard_form(s.root_system(), t, &t.monomial(&w)).unwrap(), Word(vec![e2, e13]));
        assert!(matches!(s.normalize(&Word(vec![99])), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn a1_standard_form_of_12_is_empty() {
        let s = system(TypeLabel::A, 1);
        let m = s.table().monomial(&Word(vec![0, 1]));
        assert_eq!(standard_form(s.root_system(), s.table(), &m).unwrap(), Word::default());
    }

    #[test]
    fn budget_guard_fires() {
        let s = system(TypeLabel::A, 1);
        assert!(matches!(s.normalize_with_budget(&Word(vec![0, 1, 0, 1]), 1), Err(Error::BudgetExceeded(1))));
        assert_eq!(s.normalize_with_budget(&Word(vec![0, 1, 0, 1]), 2).unwrap(), Word::default());
    }

    #[test]
    fn reversed_rules_fail_the_audit() {
        let s = system(TypeLabel::A, 2);
        let reversed: Vec<Rule> = s
            .rules()
            .iter()
            .map(|r| Rule { lhs_shape: r.rhs_shape.clone(), rhs_shape: r.lhs_shape.clone(), ..r.clone() })
            .collect();
        let report = audit_rule_list(s.root_system(), &s, &reversed);
        assert!(!report.pass);
        assert_eq!(report.failures.len(), reversed.len());
    }

    #[test]
    fn small_systems_are_convergent() {
        for (l, r) in [(TypeLabel::A, 1), (TypeLabel::A, 2), (TypeLabel::C, 2)] {
            let s = system(l, r);
            assert!(audit_termination(s.root_system(), &s).pass, "{l}{r}");
            let c = audit_local_confluence(&s, None);
            assert!(c.pass, "{l}{r}: {:?}", c.failures.first());
            // A1 has a single rule and nothing overlaps it
            assert_eq!(c.triples_checked == 0, r == 1);
        }
    }
}
