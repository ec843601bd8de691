//! The four table-based learners.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::alphabet::Word;
use crate::automata::Automaton;
use crate::error::{Error, Result};
use crate::tables::{
    apply_modifications, derive_bollig_nfa, derive_dfa, derive_reversal_rfsa, ModifiedTable,
    ObservationTable,
};
use crate::teacher::{QueryStats, ReversalTeacher, Teacher};

/// Limits shared by all learners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LearnerConfig {
    /// Maximum number of table fixes plus equivalence queries before the
    /// learner gives up with [`Error::Diagnostic`].
    pub round_limit: usize,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        // 4^8: far beyond anything the corpus needs
        LearnerConfig { round_limit: 1 << 16 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinalTable {
    Plain(ObservationTable),
    Modified(ModifiedTable),
}

impl FinalTable {
    pub fn table(&self) -> &ObservationTable {
        match self {
            FinalTable::Plain(t) => t,
            FinalTable::Modified(m) => m.table(),
        }
    }
}

/// What the context-adding phase of [`two_step_prime_contexts`] cost.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ContextPhase {
    pub added_contexts: usize,
    pub mq_total: usize,
    pub mq_distinct: usize,
}

#[derive(Debug, Clone)]
pub struct LearnerResult {
    pub hypothesis: Automaton,
    pub final_table: FinalTable,
    pub stats: QueryStats,
    /// Equivalence queries asked by this run.
    pub iterations: usize,
    pub context_phase: Option<ContextPhase>,
    /// `(|RED|, |E|)` after every table update of the learning loop.
    pub growth: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    LStar,
    NLStar,
    Reversal2Step,
    Prime2Step,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::LStar,
        Algorithm::NLStar,
        Algorithm::Reversal2Step,
        Algorithm::Prime2Step,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::LStar => "lstar",
            Algorithm::NLStar => "nlstar",
            Algorithm::Reversal2Step => "rev2step",
            Algorithm::Prime2Step => "prime2step",
        }
    }

    pub fn run<T: Teacher + ?Sized>(self, teacher: &mut T) -> Result<LearnerResult> {
        self.run_with(teacher, &LearnerConfig::default())
    }

    pub fn run_with<T: Teacher + ?Sized>(
        self,
        teacher: &mut T,
        config: &LearnerConfig,
    ) -> Result<LearnerResult> {
        match self {
            Algorithm::LStar => lstar_col_with(teacher, config),
            Algorithm::NLStar => nlstar_with(teacher, config),
            Algorithm::Reversal2Step => two_step_reversal_with(teacher, config),
            Algorithm::Prime2Step => two_step_prime_contexts_with(teacher, config),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected lstar, nlstar, rev2step or prime2step)"))
    }
}

struct Rounds {
    used: usize,
    limit: usize,
}

impl Rounds {
    fn tick(&mut self, learner: &str) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::Diagnostic(format!(
                "{learner} exceeded {} rounds without converging",
                self.limit
            )));
        }
        Ok(())
    }
}

/// Adds every suffix of `c` as a context; errors if none is new, since the
/// hypothesis would then already agree with the table on `c`.
fn add_suffixes(t: &mut ObservationTable, c: &Word, learner: &str) -> Result<()> {
    let mut added = false;
    for e in c.suffixes() {
        added |= t.add_context(&e)?;
    }
    if !added {
        return Err(Error::Diagnostic(format!(
            "{learner}: counterexample contributed no new context"
        )));
    }
    Ok(())
}

/// Angluin-style learner for the minimal DFA. Closedness is repaired before
/// consistency, and a counterexample contributes all its suffixes as contexts.
pub fn lstar_col<T: Teacher + ?Sized>(teacher: &mut T) -> Result<LearnerResult> {
    lstar_col_with(teacher, &LearnerConfig::default())
}

pub fn lstar_col_with<T: Teacher + ?Sized>(
    teacher: &mut T,
    config: &LearnerConfig,
) -> Result<LearnerResult> {
    let mut t = ObservationTable::new(teacher.alphabet().clone());
    t.fill(teacher)?;
    let mut growth = vec![(t.red().len(), t.contexts().len())];
    let mut rounds = Rounds { used: 0, limit: config.round_limit };
    let mut iterations = 0;
    loop {
        loop {
            rounds.tick("lstar")?;
            if let Some(s) = t.is_closed() {
                t.add_red(&s)?;
            } else if let Some(e) = t.is_consistent() {
                t.add_context(&e)?;
            } else {
                break;
            }
            t.fill(teacher)?;
            growth.push((t.red().len(), t.contexts().len()));
        }
        let hypothesis = derive_dfa(&t)?;
        iterations += 1;
        match teacher.eq(&hypothesis)? {
            None => {
                return Ok(LearnerResult {
                    hypothesis,
                    final_table: FinalTable::Plain(t),
                    stats: teacher.stats(),
                    iterations,
                    context_phase: None,
                    growth,
                })
            }
            Some(c) => {
                add_suffixes(&mut t, &c, "lstar")?;
                t.fill(teacher)?;
                growth.push((t.red().len(), t.contexts().len()));
            }
        }
    }
}

/// Learns the canonical RFSA directly with RFSA-closedness and
/// RFSA-consistency in place of closedness and consistency.
pub fn nlstar<T: Teacher + ?Sized>(teacher: &mut T) -> Result<LearnerResult> {
    nlstar_with(teacher, &LearnerConfig::default())
}

pub fn nlstar_with<T: Teacher + ?Sized>(
    teacher: &mut T,
    config: &LearnerConfig,
) -> Result<LearnerResult> {
    let mut t = ObservationTable::new(teacher.alphabet().clone());
    t.fill(teacher)?;
    let mut growth = vec![(t.red().len(), t.contexts().len())];
    let mut rounds = Rounds { used: 0, limit: config.round_limit };
    let mut iterations = 0;
    loop {
        loop {
            rounds.tick("nlstar")?;
            if let Some(s) = t.is_rfsa_closed() {
                t.add_red(&s)?;
            } else if let Some(e) = t.is_rfsa_consistent() {
                t.add_context(&e)?;
            } else {
                break;
            }
            t.fill(teacher)?;
            growth.push((t.red().len(), t.contexts().len()));
        }
        let hypothesis = derive_bollig_nfa(&t)?;
        iterations += 1;
        rounds.tick("nlstar")?;
        match teacher.eq(&hypothesis)? {
            None => {
                return Ok(LearnerResult {
                    hypothesis,
                    final_table: FinalTable::Plain(t),
                    stats: teacher.stats(),
                    iterations,
                    context_phase: None,
                    growth,
                })
            }
            Some(c) => {
                add_suffixes(&mut t, &c, "nlstar")?;
                t.fill(teacher)?;
                growth.push((t.red().len(), t.contexts().len()));
            }
        }
    }
}

/// Learns the minimal DFA of the reversed language through a reversing
/// teacher, prunes the final table and reads the canonical RFSA off it.
/// The pruning asks no queries.
pub fn two_step_reversal<T: Teacher + ?Sized>(teacher: &mut T) -> Result<LearnerResult> {
    two_step_reversal_with(teacher, &LearnerConfig::default())
}

pub fn two_step_reversal_with<T: Teacher + ?Sized>(
    teacher: &mut T,
    config: &LearnerConfig,
) -> Result<LearnerResult> {
    let first = lstar_col_with(&mut ReversalTeacher::new(&mut *teacher), config)?;
    let modified = apply_modifications(first.final_table.table())?;
    let hypothesis = derive_reversal_rfsa(&modified)?;
    Ok(LearnerResult {
        hypothesis,
        final_table: FinalTable::Modified(modified),
        stats: teacher.stats(),
        iterations: first.iterations,
        context_phase: None,
        growth: first.growth,
    })
}

/// Learns the minimal DFA, drops all-zero rows and columns, then for every
/// `RED` word `s` and final state `f` adds the least context leading from
/// `row(s)` to `f`, fills the new cells and reads the canonical RFSA off the
/// table. Asks no equivalence queries beyond the DFA phase.
pub fn two_step_prime_contexts<T: Teacher + ?Sized>(teacher: &mut T) -> Result<LearnerResult> {
    two_step_prime_contexts_with(teacher, &LearnerConfig::default())
}

pub fn two_step_prime_contexts_with<T: Teacher + ?Sized>(
    teacher: &mut T,
    config: &LearnerConfig,
) -> Result<LearnerResult> {
    let first = lstar_col_with(teacher, config)?;
    let full = first.final_table.table();

    // (2)': zero rows and zero columns
    let nonzero = |s: &Word| full.row_unchecked(s).iter().any(|&b| b);
    let red: Vec<Word> = full.red().iter().filter(|s| nonzero(s)).cloned().collect();
    let blue: Vec<Word> = full.blue().iter().filter(|s| nonzero(s)).cloned().collect();
    let contexts: Vec<Word> = full
        .contexts()
        .iter()
        .filter(|e| full.column(e).is_ok_and(|c| c.iter().any(|&b| b)))
        .cloned()
        .collect();
    let mut t = full.restricted(red, blue, contexts);

    // (3)': per RED word and final state, the least word leading there
    let dfa = table_dfa(&t);
    let mut added_contexts = 0;
    for source in 0..dfa.states {
        let words = least_words_from(&dfa, source, t.alphabet().len());
        for &f in &dfa.finals {
            if let Some(e) = &words[f] {
                if t.add_context(e)? {
                    added_contexts += 1;
                }
            }
        }
    }
    let before = teacher.stats();
    t.fill(teacher)?;
    let after = teacher.stats();

    if let Some(s) = t.is_rfsa_closed() {
        return Err(Error::Diagnostic(format!(
            "prime2step: extended table is not RFSA-closed at `{}`",
            t.alphabet().format_word(&s)
        )));
    }
    if let Some(e) = t.is_rfsa_consistent() {
        return Err(Error::Diagnostic(format!(
            "prime2step: extended table is not RFSA-consistent (context `{}`)",
            t.alphabet().format_word(&e)
        )));
    }
    let hypothesis = derive_bollig_nfa(&t)?;
    Ok(LearnerResult {
        hypothesis,
        final_table: FinalTable::Plain(t),
        stats: after,
        iterations: first.iterations,
        context_phase: Some(ContextPhase {
            added_contexts,
            mq_total: after.mq_total - before.mq_total,
            mq_distinct: after.mq_distinct - before.mq_distinct,
        }),
        growth: first.growth.clone(),
    })
}

/// The partial DFA of a pruned table: one state per `RED` word (rows are
/// pairwise distinct), missing extension rows give missing arcs.
struct TableDfa {
    states: usize,
    finals: Vec<usize>,
    next: Vec<Vec<Option<usize>>>,
}

fn table_dfa(t: &ObservationTable) -> TableDfa {
    let red = t.red();
    let index_of = |row: &[bool]| red.iter().position(|s| t.row_unchecked(s) == row);
    let next = red
        .iter()
        .map(|s| {
            t.alphabet()
                .symbols()
                .map(|a| t.extension_row(s, a).and_then(index_of))
                .collect()
        })
        .collect();
    let finals = match t.contexts().iter().position(Word::is_empty) {
        Some(c) => (0..red.len()).filter(|&i| t.row_unchecked(&red[i])[c]).collect(),
        None => Vec::new(),
    };
    TableDfa {
        states: red.len(),
        finals,
        next,
    }
}

/// Breadth-first search in symbol order: the least word reaching each state.
fn least_words_from(d: &TableDfa, source: usize, sigma: usize) -> Vec<Option<Word>> {
    let mut words: Vec<Option<Word>> = vec![None; d.states];
    words[source] = Some(Word::epsilon());
    let mut queue = VecDeque::from([source]);
    while let Some(p) = queue.pop_front() {
        for a in 0..sigma {
            if let Some(q) = d.next[p][a] {
                if words[q].is_none() {
                    words[q] = Some(words[p].as_ref().unwrap().append(a));
                    queue.push_back(q);
                }
            }
        }
    }
    words
}

/// Post-hoc check that a hypothesis accepts exactly the target language.
pub fn is_correct(hypothesis: &Automaton, target: &Automaton) -> Result<bool> {
    Ok(crate::automata::shortest_difference_witness(hypothesis, target)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automata::isomorphic;
    use crate::languages;
    use crate::residuals::canonical_rfsa;
    use crate::teacher::TeacherSession;

    fn targets() -> Vec<Automaton> {
        vec![
            Automaton::universal(Alphabet::letters(2)),
            languages::even_a(),
            languages::ends_with_a(),
            languages::nth_from_last_is_a(2).minimal_dfa(),
            languages::nth_from_last_is_a(3).minimal_dfa(),
        ]
    }

    #[test]
    fn lstar_on_sigma_star() {
        let mut s = TeacherSession::new(Automaton::universal(Alphabet::letters(2)));
        let r = lstar_col(&mut s).unwrap();
        assert_eq!(r.hypothesis.num_states(), 1);
        assert_eq!(r.stats.eq_count, 1);
        let t = r.final_table.table();
        assert_eq!((t.red().len(), t.contexts().len()), (1, 1));
    }

    #[test]
    fn lstar_learns_minimal_dfa() {
        for target in targets() {
            let mut s = TeacherSession::new(target.clone());
            let r = lstar_col(&mut s).unwrap();
            let min = target.minimal_dfa();
            assert!(isomorphic(&r.hypothesis, &min));
            assert!(r.stats.eq_count <= min.num_states());
            assert_eq!(r.stats.eq_count, r.iterations);
            let t = r.final_table.table();
            for (i, x) in t.red().iter().enumerate() {
                for y in &t.red()[i + 1..] {
                    assert!(t.obviously_different(x, y).unwrap());
                }
            }
            // every row is a join of non-coverable RED rows
            assert_eq!(t.is_rfsa_closed(), None);
        }
    }

    #[test]
    fn lstar_table_need_not_be_rfsa_consistent() {
        // rows ε:1 and a:0, so row(a) ⊑ row(ε) while row(aa) = 1 ⋢ row(a) = 0
        let mut s = TeacherSession::new(languages::even_a());
        let r = lstar_col(&mut s).unwrap();
        let t = r.final_table.table();
        assert_eq!(t.contexts(), &[Word::epsilon()]);
        assert_eq!(t.is_consistent(), None);
        assert_eq!(t.is_rfsa_consistent(), Some(Word(vec![0])));
    }

    #[test]
    fn rfsa_learners_match_oracle() {
        let ab = Alphabet::letters(2);
        let cases = [
            (Algorithm::NLStar, targets()),
            (
                Algorithm::Reversal2Step,
                vec![Automaton::universal(ab.clone()), languages::ends_with_a()],
            ),
            (
                Algorithm::Prime2Step,
                vec![
                    Automaton::universal(ab),
                    languages::nth_from_last_is_a(2).minimal_dfa(),
                    languages::nth_from_last_is_a(3).minimal_dfa(),
                ],
            ),
        ];
        for (alg, langs) in cases {
            for target in langs {
                let oracle = canonical_rfsa(&target.minimal_dfa()).unwrap();
                let mut s = TeacherSession::new(target.clone());
                let r = alg.run(&mut s).unwrap();
                assert!(is_correct(&r.hypothesis, &target).unwrap(), "{alg}");
                assert!(isomorphic(&r.hypothesis, &oracle), "{alg}");
            }
        }
    }

    fn residual_of(target: &Automaton, w: &Word) -> usize {
        let d = target.minimal_dfa();
        *d.run(d.initial(), w).unwrap().iter().next().unwrap()
    }

    #[test]
    fn reversal_table_can_miss_a_prime_column() {
        // second from last is a: primes L, L ∪ Σ, L ∪ {ε}; the last one needs
        // the context ba, which the table for the reversal never acquires
        let target = languages::nth_from_last_is_a(2).minimal_dfa();
        let mut s = TeacherSession::new(target.clone());
        let first = lstar_col(&mut ReversalTeacher::new(&mut s)).unwrap();
        let columns: Vec<usize> = first
            .final_table
            .table()
            .contexts()
            .iter()
            .map(|e| residual_of(&target, &e.reversed()))
            .collect();
        let idx = crate::residuals::residual_index(&target.minimal_dfa()).unwrap();
        let missing: Vec<usize> =
            idx.primes().into_iter().filter(|p| !columns.contains(p)).collect();
        assert_eq!(missing, [residual_of(&target, &Word(vec![0, 1]))]);

        let mut s = TeacherSession::new(target.clone());
        let r = two_step_reversal(&mut s).unwrap();
        assert!(!is_correct(&r.hypothesis, &target).unwrap());
    }

    #[test]
    fn zero_row_pruning_can_drop_a_live_state() {
        // even number of a's: with E = {ε} the row of `a` is all zero
        let target = languages::even_a();
        let mut s = TeacherSession::new(target.clone());
        let r = two_step_prime_contexts(&mut s).unwrap();
        assert_eq!(r.final_table.table().red(), &[Word::epsilon()]);
        assert!(!is_correct(&r.hypothesis, &target).unwrap());
    }

    #[test]
    fn sigma_star_rfsa_learners() {
        for alg in [Algorithm::NLStar, Algorithm::Reversal2Step, Algorithm::Prime2Step] {
            let mut s = TeacherSession::new(Automaton::universal(Alphabet::letters(2)));
            let r = alg.run(&mut s).unwrap();
            assert_eq!(r.hypothesis.num_states(), 1);
            assert_eq!(r.stats.eq_count, 1, "{alg}");
        }
        let mut s = TeacherSession::new(Automaton::universal(Alphabet::letters(2)));
        let r = two_step_prime_contexts(&mut s).unwrap();
        assert_eq!(r.context_phase.unwrap(), ContextPhase::default());
    }

    #[test]
    fn reversal_surgery_asks_nothing() {
        let target = languages::nth_from_last_is_a(3).minimal_dfa();
        let mut a = TeacherSession::new(target.clone());
        let plain = lstar_col(&mut ReversalTeacher::new(&mut a)).unwrap();
        let mut b = TeacherSession::new(target);
        let two = two_step_reversal(&mut b).unwrap();
        assert_eq!(plain.stats, two.stats);
    }

    #[test]
    fn prime_contexts_cost() {
        let target = languages::nth_from_last_is_a(3).minimal_dfa();
        let mut a = TeacherSession::new(target.clone());
        let plain = lstar_col(&mut a).unwrap();
        let mut b = TeacherSession::new(target.clone());
        let two = two_step_prime_contexts(&mut b).unwrap();
        assert_eq!(plain.stats.eq_count, two.stats.eq_count);
        let phase = two.context_phase.unwrap();
        let index = target.minimal_dfa().num_states();
        let finals = target.minimal_dfa().finals().len();
        assert!(phase.added_contexts <= index * finals);
        assert_eq!(two.stats.mq_distinct, plain.stats.mq_distinct + phase.mq_distinct);
    }

    #[test]
    fn round_limit_is_a_diagnostic() {
        let mut s = TeacherSession::new(languages::nth_from_last_is_a(3).minimal_dfa());
        let err = nlstar_with(&mut s, &LearnerConfig { round_limit: 2 }).unwrap_err();
        assert!(matches!(err, Error::Diagnostic(_)));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for alg in Algorithm::ALL {
            assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
        }
        assert!("foo".parse::<Algorithm>().is_err());
    }
}
