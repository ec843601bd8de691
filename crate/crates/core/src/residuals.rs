//! Residual languages of a regular language, primality, and two independent
//! constructions of the canonical RFSA: straight from the definition over
//! the minimal DFA ([`canonical_rfsa`]) and via non-coverable reachable state
//! sets ([`c_of_b`]).

use std::collections::VecDeque;

use crate::automata::{shortest_difference_witness, Automaton, StateId, StateSet};
use crate::error::{Error, Result};

/// Residual languages of `L`, identified with the states of its minimal DFA,
/// together with their inclusion relation.
#[derive(Debug, Clone)]
pub struct ResidualIndex {
    base: Automaton,
    inclusion: Vec<Vec<bool>>,
}

impl ResidualIndex {
    /// The minimal DFA the residuals are read from.
    pub fn base(&self) -> &Automaton {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.inclusion.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inclusion.is_empty()
    }

    /// Whether residual `q1` is a subset of residual `q2`.
    pub fn includes(&self, q1: StateId, q2: StateId) -> bool {
        self.inclusion[q1][q2]
    }

    pub fn strictly_includes(&self, q1: StateId, q2: StateId) -> bool {
        self.inclusion[q1][q2] && !self.inclusion[q2][q1]
    }

    /// Ids of the prime residuals in increasing order.
    pub fn primes(&self) -> Vec<StateId> {
        (0..self.len()).filter(|&q| is_prime(self, q)).collect()
    }

    /// The id of `L` itself.
    pub fn initial(&self) -> StateId {
        *self.base.initial().iter().next().unwrap()
    }
}

fn require_minimal_dfa(dfa: &Automaton) -> Result<()> {
    if !dfa.is_deterministic() || !dfa.is_total() {
        return Err(Error::contract("expected a total deterministic automaton"));
    }
    if dfa.minimize()?.num_states() != dfa.num_states() {
        return Err(Error::contract("expected a minimal automaton"));
    }
    Ok(())
}

// L_p ⊆ L_q in a total DFA: no reachable pair is (final, non-final)
fn dfa_state_included(d: &Automaton, p: StateId, q: StateId) -> bool {
    let next = |x: StateId, s: usize| *d.successors(x, s).iter().next().unwrap();
    let n = d.num_states();
    let mut seen = vec![false; n * n];
    seen[p * n + q] = true;
    let mut queue = VecDeque::from([(p, q)]);
    while let Some((x, y)) = queue.pop_front() {
        if d.is_final(x) && !d.is_final(y) {
            return false;
        }
        for s in d.alphabet().symbols() {
            let (nx, ny) = (next(x, s), next(y, s));
            if !seen[nx * n + ny] {
                seen[nx * n + ny] = true;
                queue.push_back((nx, ny));
            }
        }
    }
    true
}

/// Computes the residual inclusion matrix of a minimal total DFA by product
/// reachability.
pub fn residual_index(dfa: &Automaton) -> Result<ResidualIndex> {
    require_minimal_dfa(dfa)?;
    let n = dfa.num_states();
    let inclusion = (0..n)
        .map(|p| (0..n).map(|q| dfa_state_included(dfa, p, q)).collect())
        .collect();
    Ok(ResidualIndex {
        base: dfa.clone(),
        inclusion,
    })
}

/// A residual is prime unless it equals the union of the residuals strictly
/// contained in it.
pub fn is_prime(idx: &ResidualIndex, q: StateId) -> bool {
    let below: StateSet = (0..idx.len()).filter(|&p| idx.strictly_includes(p, q)).collect();
    let union = idx.base.with_initial(below);
    let itself = idx.base.with_initial(StateSet::from([q]));
    shortest_difference_witness(&union, &itself)
        .expect("same alphabet")
        .is_some()
}

/// The canonical RFSA of the language of a minimal total DFA: one state per
/// prime residual (in base-state order), initial states the primes contained
/// in `L`, final states the primes containing ε, and `a`-successors of `p`
/// the primes contained in the residual reached from `p` by `a`.
pub fn canonical_rfsa(dfa: &Automaton) -> Result<Automaton> {
    let idx = residual_index(dfa)?;
    Ok(canonical_rfsa_of(&idx))
}

pub(crate) fn canonical_rfsa_of(idx: &ResidualIndex) -> Automaton {
    let d = &idx.base;
    let primes = idx.primes();
    let mut out = Automaton::new(d.alphabet().clone(), primes.len());
    let init = idx.initial();
    for (i, &p) in primes.iter().enumerate() {
        if idx.includes(p, init) {
            out.add_initial(i);
        }
        if d.is_final(p) {
            out.add_final(i);
        }
        for s in d.alphabet().symbols() {
            let target = *d.successors(p, s).iter().next().unwrap();
            for (j, &r) in primes.iter().enumerate() {
                if idx.includes(r, target) {
                    out.add_transition(i, s, j);
                }
            }
        }
    }
    out
}

/// The family of state sets `run(B, initial, w)` over all words `w`.
#[derive(Debug, Clone)]
pub struct StateSetFamily {
    ground: Automaton,
    members: Vec<StateSet>,
}

impl StateSetFamily {
    pub fn ground(&self) -> &Automaton {
        &self.ground
    }

    /// Members in breadth-first discovery order (the initial set first).
    pub fn members(&self) -> &[StateSet] {
        &self.members
    }

    pub fn contains(&self, p: &StateSet) -> bool {
        self.members.contains(p)
    }
}

pub fn reachable_state_sets(b: &Automaton) -> StateSetFamily {
    StateSetFamily {
        ground: b.clone(),
        members: b.determinize().subsets,
    }
}

/// Whether `p` is the union of the other members of the family contained in
/// it. The empty set counts as coverable (empty union).
pub fn is_coverable_state(p: &StateSet, family: &StateSetFamily) -> Result<bool> {
    if !family.contains(p) {
        return Err(Error::NotInFamily);
    }
    Ok(covered_by_others(p, &family.members))
}

fn covered_by_others(p: &StateSet, members: &[StateSet]) -> bool {
    let union: StateSet = members
        .iter()
        .filter(|m| *m != p && m.is_subset(p))
        .flatten()
        .copied()
        .collect();
    union == *p
}

/// The automaton of non-coverable reachable state sets of `b`. When the
/// reversal of `b` is a trimmed RFSA with all states reachable, this is the
/// canonical RFSA for `L(b)`.
pub fn c_of_b(b: &Automaton) -> Automaton {
    let family = reachable_state_sets(b);
    let states: Vec<&StateSet> = family
        .members
        .iter()
        .filter(|p| !covered_by_others(p, &family.members))
        .collect();
    let mut out = Automaton::new(b.alphabet().clone(), states.len());
    for (i, p) in states.iter().enumerate() {
        if p.is_subset(b.initial()) {
            out.add_initial(i);
        }
        if !p.is_disjoint(b.finals()) {
            out.add_final(i);
        }
        for s in b.alphabet().symbols() {
            let image = b.step(p, s);
            for (j, q) in states.iter().enumerate() {
                if q.is_subset(&image) {
                    out.add_transition(i, s, j);
                }
            }
        }
    }
    out
}

/// Largest state count [`min_distinguishing_context_count`] accepts.
pub const CONTEXT_SEARCH_MAX_STATES: usize = 4;

/// Least number of contexts whose acceptance columns separate every pair of
/// states of a minimal DFA, by exhaustive search over all realizable columns.
pub fn min_distinguishing_context_count(dfa: &Automaton) -> Result<usize> {
    require_minimal_dfa(dfa)?;
    let n = dfa.num_states();
    if n > CONTEXT_SEARCH_MAX_STATES {
        return Err(Error::Refused(format!(
            "{n} states exceeds the exhaustive search budget of {CONTEXT_SEARCH_MAX_STATES}"
        )));
    }
    // run(reverse, finals, w) = states accepting reverse(w), so the reachable
    // subsets of the reversal are exactly the realizable columns.
    let columns = reachable_state_sets(&dfa.reverse()).members;
    let m = columns.len();
    let mut best = usize::MAX;
    for mask in 0u32..(1 << m) {
        let k = mask.count_ones() as usize;
        if k >= best {
            continue;
        }
        let signature = |q: StateId| -> Vec<bool> {
            (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| columns[i].contains(&q))
                .collect()
        };
        let sigs: Vec<Vec<bool>> = (0..n).map(signature).collect();
        let separating = (0..n).all(|p| (p + 1..n).all(|q| sigs[p] != sigs[q]));
        if separating {
            best = k;
        }
    }
    Ok(best)
}
