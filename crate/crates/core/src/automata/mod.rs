//! Finite-state acceptors.
//!
//! One [`Automaton`] type covers DFAs, NFAs and RFSAs. States are the
//! contiguous ids `0..n`; the transition relation maps every
//! `(state, symbol)` pair to a (possibly empty) set of targets.

mod compare;
mod format;
mod subset;

use std::collections::{BTreeSet, VecDeque};

pub use compare::{isomorphic, shortest_difference_witness};
pub use subset::Determinized;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

pub type StateId = usize;
pub type StateSet = BTreeSet<StateId>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automaton {
    alphabet: Alphabet,
    initial: StateSet,
    finals: StateSet,
    // delta[state][symbol]
    delta: Vec<Vec<StateSet>>,
}

impl Automaton {
    /// An automaton with `states` states and no initial states, final states
    /// or transitions.
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let delta = vec![vec![StateSet::new(); alphabet.len()]; states];
        Automaton {
            alphabet,
            initial: StateSet::new(),
            finals: StateSet::new(),
            delta,
        }
    }

    /// The one-state automaton accepting Σ*.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut a = Automaton::new(alphabet, 1);
        a.add_initial(0);
        a.add_final(0);
        for s in a.alphabet.symbols() {
            a.add_transition(0, s, 0);
        }
        a
    }

    /// The one-state automaton accepting nothing (a non-final sink).
    pub fn empty_language(alphabet: Alphabet) -> Self {
        let mut a = Automaton::new(alphabet, 1);
        a.add_initial(0);
        for s in a.alphabet.symbols() {
            a.add_transition(0, s, 0);
        }
        a
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.delta.len()
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn is_initial(&self, q: StateId) -> bool {
        self.initial.contains(&q)
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn successors(&self, q: StateId, a: Symbol) -> &StateSet {
        &self.delta[q][a]
    }

    /// Every arc `(source, symbol, target)` in state, symbol, target order.
    pub fn arcs(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, ts)| ts.iter().map(move |&q| (p, a, q)))
        })
    }

    pub fn add_state(&mut self) -> StateId {
        self.delta.push(vec![StateSet::new(); self.alphabet.len()]);
        self.delta.len() - 1
    }

    pub fn add_initial(&mut self, q: StateId) {
        assert!(q < self.num_states(), "initial state {q} out of range");
        self.initial.insert(q);
    }

    pub fn add_final(&mut self, q: StateId) {
        assert!(q < self.num_states(), "final state {q} out of range");
        self.finals.insert(q);
    }

    pub fn add_transition(&mut self, from: StateId, a: Symbol, to: StateId) {
        let n = self.num_states();
        assert!(from < n && to < n, "transition {from} -> {to} out of range");
        self.delta[from][a].insert(to);
    }

    /// Exactly one initial state and at most one successor per pair.
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.delta.iter().flatten().all(|ts| ts.len() <= 1)
    }

    /// At least one successor per pair.
    pub fn is_total(&self) -> bool {
        self.delta.iter().flatten().all(|ts| !ts.is_empty())
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if q < self.num_states() {
            Ok(())
        } else {
            Err(Error::InvalidState {
                state: q,
                len: self.num_states(),
            })
        }
    }

    pub(crate) fn step(&self, from: &StateSet, a: Symbol) -> StateSet {
        from.iter()
            .flat_map(|&q| self.delta[q][a].iter().copied())
            .collect()
    }

    /// The set of states reachable from `from` along `w`.
    pub fn run(&self, from: &StateSet, w: &Word) -> Result<StateSet> {
        self.alphabet.check_word(w)?;
        if let Some(&q) = from.iter().next_back() {
            self.check_state(q)?;
        }
        Ok(w.symbols()
            .iter()
            .fold(from.clone(), |cur, &a| self.step(&cur, a)))
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        let reached = self.run(&self.initial, w)?;
        Ok(!reached.is_disjoint(&self.finals))
    }

    /// Membership of `w` in the language accepted from state `q`.
    pub fn accepts_from(&self, q: StateId, w: &Word) -> Result<bool> {
        self.check_state(q)?;
        let reached = self.run(&StateSet::from([q]), w)?;
        Ok(!reached.is_disjoint(&self.finals))
    }

    /// Same states and transitions, different initial set.
    pub fn with_initial(&self, initial: StateSet) -> Automaton {
        let mut a = self.clone();
        a.initial = initial;
        a
    }

    /// Swaps initial and final states and inverts every arc.
    pub fn reverse(&self) -> Automaton {
        let mut r = Automaton::new(self.alphabet.clone(), self.num_states());
        r.initial = self.finals.clone();
        r.finals = self.initial.clone();
        for (p, a, q) in self.arcs() {
            r.delta[q][a].insert(p);
        }
        r
    }

    /// States reachable from the initial set.
    pub fn reachable(&self) -> StateSet {
        let mut seen = self.initial.clone();
        let mut queue: VecDeque<StateId> = self.initial.iter().copied().collect();
        while let Some(p) = queue.pop_front() {
            for ts in &self.delta[p] {
                for &q in ts {
                    if seen.insert(q) {
                        queue.push_back(q);
                    }
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable.
    pub fn coreachable(&self) -> StateSet {
        self.reverse().reachable()
    }

    /// Keeps the states in `keep`, renumbered in increasing id order.
    pub(crate) fn restrict(&self, keep: &StateSet) -> Automaton {
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &q) in keep.iter().enumerate() {
            index[q] = i;
        }
        let mut out = Automaton::new(self.alphabet.clone(), keep.len());
        out.initial = self.initial.iter().filter(|q| keep.contains(q)).map(|&q| index[q]).collect();
        out.finals = self.finals.iter().filter(|q| keep.contains(q)).map(|&q| index[q]).collect();
        for (p, a, q) in self.arcs() {
            if keep.contains(&p) && keep.contains(&q) {
                out.delta[index[p]][a].insert(index[q]);
            }
        }
        out
    }

    /// Removes every useless state (unreachable, or unable to reach a final
    /// state) together with its arcs. The result may be partial.
    pub fn trim(&self) -> Automaton {
        let keep: StateSet = self
            .reachable()
            .intersection(&self.coreachable())
            .copied()
            .collect();
        self.restrict(&keep)
    }

    /// Completes a partial automaton with a non-final sink state. Total inputs
    /// are returned unchanged.
    pub fn totalize(&self) -> Automaton {
        if self.is_total() {
            return self.clone();
        }
        let mut out = self.clone();
        let sink = out.add_state();
        for q in out.states() {
            for a in self.alphabet.symbols() {
                if out.delta[q][a].is_empty() {
                    out.delta[q][a].insert(sink);
                }
            }
        }
        out
    }

    /// Subset construction over the reachable subsets; see [`Determinized`].
    pub fn determinize(&self) -> Determinized {
        subset::determinize(self)
    }

    /// The minimal total DFA for the language of a deterministic automaton,
    /// numbered breadth-first over the sorted alphabet.
    pub fn minimize(&self) -> Result<Automaton> {
        if !self.is_deterministic() {
            return Err(Error::contract("minimize needs a deterministic automaton"));
        }
        Ok(subset::minimize_dfa(self))
    }

    /// The minimal DFA of an arbitrary automaton.
    pub fn minimal_dfa(&self) -> Automaton {
        subset::minimize_dfa(&self.determinize().dfa)
    }
}

/// Free-function form of [`Automaton::reverse`].
pub fn reverse_automaton(a: &Automaton) -> Automaton {
    a.reverse()
}
