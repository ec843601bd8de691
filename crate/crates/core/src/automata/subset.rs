use std::collections::{HashMap, VecDeque};

use super::{Automaton, StateId, StateSet};

/// Result of the subset construction. `dfa` is deterministic and total;
/// `subsets[i]` is the set of source states that DFA state `i` stands for.
/// State 0 is the initial subset and ids follow breadth-first discovery
/// over the sorted alphabet.
#[derive(Debug, Clone)]
pub struct Determinized {
    pub dfa: Automaton,
    pub subsets: Vec<StateSet>,
}

pub(super) fn determinize(a: &Automaton) -> Determinized {
    let sigma = a.alphabet().len();
    let mut ids: HashMap<StateSet, StateId> = HashMap::new();
    let mut subsets = vec![a.initial().clone()];
    ids.insert(a.initial().clone(), 0);
    let mut edges: Vec<Vec<StateId>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut row = Vec::with_capacity(sigma);
        for s in a.alphabet().symbols() {
            let next = a.step(&subsets[i], s);
            let id = *ids.entry(next.clone()).or_insert_with(|| {
                subsets.push(next);
                subsets.len() - 1
            });
            row.push(id);
        }
        edges.push(row);
        i += 1;
    }
    let mut dfa = Automaton::new(a.alphabet().clone(), subsets.len());
    dfa.add_initial(0);
    for (p, row) in edges.iter().enumerate() {
        if !subsets[p].is_disjoint(a.finals()) {
            dfa.add_final(p);
        }
        for (s, &q) in row.iter().enumerate() {
            dfa.add_transition(p, s, q);
        }
    }
    Determinized { dfa, subsets }
}

/// Moore partition refinement followed by breadth-first renumbering.
/// Expects a deterministic (possibly partial) automaton.
pub(super) fn minimize_dfa(d: &Automaton) -> Automaton {
    let d = d.totalize();
    let d = d.restrict(&d.reachable());
    let n = d.num_states();
    let sigma = d.alphabet().len();
    let next = |q: StateId, a: usize| -> StateId { *d.successors(q, a).iter().next().unwrap() };

    let mut class: Vec<usize> = (0..n).map(|q| usize::from(d.is_final(q))).collect();
    let mut count = class.iter().collect::<std::collections::HashSet<_>>().len();
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let refined: Vec<usize> = (0..n)
            .map(|q| {
                let mut sig = Vec::with_capacity(sigma + 1);
                sig.push(class[q]);
                sig.extend((0..sigma).map(|a| class[next(q, a)]));
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        let new_count = ids.len();
        class = refined;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // canonical numbering: BFS from the initial class, symbols in order
    let start = class[*d.initial().iter().next().unwrap()];
    let mut rep = vec![usize::MAX; count];
    for q in (0..n).rev() {
        rep[class[q]] = q;
    }
    let mut number = vec![usize::MAX; count];
    let mut order = vec![start];
    number[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for a in 0..sigma {
            let t = class[next(rep[c], a)];
            if number[t] == usize::MAX {
                number[t] = order.len();
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    let mut out = Automaton::new(d.alphabet().clone(), order.len());
    out.add_initial(0);
    for (i, &c) in order.iter().enumerate() {
        if d.is_final(rep[c]) {
            out.add_final(i);
        }
        for a in 0..sigma {
            out.add_transition(i, a, number[class[next(rep[c], a)]]);
        }
    }
    out
}
