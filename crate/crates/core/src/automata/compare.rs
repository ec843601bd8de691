use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{Automaton, StateId};
use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};

/// The length-lexicographically least word accepted by exactly one of `a`
/// and `b`, or `None` when their languages are equal.
///
/// Searches the product of the two determinized automata. When the reversed
/// automata are closer to deterministic (a reversed DFA, say), the product is
/// built over the reversals instead and the same word is recovered from it.
pub fn shortest_difference_witness(a: &Automaton, b: &Automaton) -> Result<Option<Word>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let (ra, rb) = (a.reverse(), b.reverse());
    if blowup(&ra) + blowup(&rb) < blowup(a) + blowup(b) {
        Ok(witness_reversed(&ra, &rb))
    } else {
        Ok(witness_forward(a, b))
    }
}

fn blowup(x: &Automaton) -> usize {
    if x.is_deterministic() {
        0
    } else {
        x.num_states()
    }
}

/// Reachable part of the product of the determinized automata; pair 0 is
/// the start, `accepting[i]` marks pairs where exactly one side accepts.
struct Product {
    next: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

fn product(a: &Automaton, b: &Automaton) -> Product {
    let da = a.determinize().dfa;
    let db = b.determinize().dfa;
    let step = |d: &Automaton, q: StateId, s: Symbol| *d.successors(q, s).iter().next().unwrap();
    let mut ids: HashMap<(StateId, StateId), usize> = HashMap::from([((0, 0), 0)]);
    let mut pairs = vec![(0, 0)];
    let mut next = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        let row = a
            .alphabet()
            .symbols()
            .map(|s| {
                let succ = (step(&da, p, s), step(&db, q, s));
                *ids.entry(succ).or_insert_with(|| {
                    pairs.push(succ);
                    pairs.len() - 1
                })
            })
            .collect();
        next.push(row);
        i += 1;
    }
    let accepting = pairs.iter().map(|&(p, q)| da.is_final(p) != db.is_final(q)).collect();
    Product { next, accepting }
}

// breadth-first in symbol order reaches every pair first by its least word
fn witness_forward(a: &Automaton, b: &Automaton) -> Option<Word> {
    let d = product(a, b);
    let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; d.next.len()];
    let mut seen = vec![false; d.next.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(p) = queue.pop_front() {
        if d.accepting[p] {
            let mut symbols = Vec::new();
            let mut cur = p;
            while let Some((prev, s)) = parent[cur] {
                symbols.push(s);
                cur = prev;
            }
            symbols.reverse();
            return Some(Word(symbols));
        }
        for (s, &q) in d.next[p].iter().enumerate() {
            if !seen[q] {
                seen[q] = true;
                parent[q] = Some((p, s));
                queue.push_back(q);
            }
        }
    }
    None
}

// `ra`, `rb` are the reversals; a word w is a witness iff its mirror image is
// accepted by the product. The least length comes from the layers of pairs
// reachable in exactly j steps; the least word of that length is then built
// front to back, keeping the pairs that the rest of the mirror image can
// still lead back to the start from.
fn witness_reversed(ra: &Automaton, rb: &Automaton) -> Option<Word> {
    let d = product(ra, rb);
    if !d.accepting.iter().any(|&x| x) {
        return None;
    }
    let mut layers: Vec<BTreeSet<usize>> = vec![BTreeSet::from([0])];
    while !layers.last().unwrap().iter().any(|&p| d.accepting[p]) {
        let last = layers.last().unwrap();
        let succ = last.iter().flat_map(|&p| d.next[p].iter().copied()).collect();
        layers.push(succ);
    }
    let len = layers.len() - 1;
    let mut current: BTreeSet<usize> =
        layers[len].iter().copied().filter(|&p| d.accepting[p]).collect();
    let mut symbols = Vec::with_capacity(len);
    for j in (0..len).rev() {
        let (s, prev) = (0..ra.alphabet().len())
            .find_map(|s| {
                let prev: BTreeSet<usize> = layers[j]
                    .iter()
                    .copied()
                    .filter(|&p| current.contains(&d.next[p][s]))
                    .collect();
                (!prev.is_empty()).then_some((s, prev))
            })
            .expect("every kept pair has a predecessor in the previous layer");
        symbols.push(s);
        current = prev;
    }
    Some(Word(symbols))
}

/// Whether some bijection of states maps initial, final and transition
/// structure of `a` exactly onto `b`.
pub fn isomorphic(a: &Automaton, b: &Automaton) -> bool {
    if a.alphabet() != b.alphabet()
        || a.num_states() != b.num_states()
        || a.initial().len() != b.initial().len()
        || a.finals().len() != b.finals().len()
        || a.arcs().count() != b.arcs().count()
    {
        return false;
    }
    let profile = |x: &Automaton, q: StateId| {
        let out: Vec<usize> = x.alphabet().symbols().map(|s| x.successors(q, s).len()).collect();
        let mut inc = vec![0usize; x.alphabet().len()];
        for (_, s, t) in x.arcs() {
            if t == q {
                inc[s] += 1;
            }
        }
        (x.is_initial(q), x.is_final(q), out, inc)
    };
    let pa: Vec<_> = a.states().map(|q| profile(a, q)).collect();
    let pb: Vec<_> = b.states().map(|q| profile(b, q)).collect();
    let mut image = vec![usize::MAX; a.num_states()];
    let mut used = vec![false; b.num_states()];
    extend(a, b, &pa, &pb, 0, &mut image, &mut used)
}

type Profile = (bool, bool, Vec<usize>, Vec<usize>);

fn extend(
    a: &Automaton,
    b: &Automaton,
    pa: &[Profile],
    pb: &[Profile],
    next: StateId,
    image: &mut [StateId],
    used: &mut [bool],
) -> bool {
    if next == a.num_states() {
        return true;
    }
    for cand in b.states() {
        if used[cand] || pa[next] != pb[cand] {
            continue;
        }
        image[next] = cand;
        if compatible(a, b, next, image) {
            used[cand] = true;
            if extend(a, b, pa, pb, next + 1, image, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    image[next] = usize::MAX;
    false
}

// arcs between `q` and every already-mapped state (including q itself) agree
fn compatible(a: &Automaton, b: &Automaton, q: StateId, image: &[StateId]) -> bool {
    let bq = image[q];
    (0..=q).all(|p| {
        let bp = image[p];
        a.alphabet().symbols().all(|s| {
            a.successors(q, s).contains(&p) == b.successors(bq, s).contains(&bp)
                && a.successors(p, s).contains(&q) == b.successors(bp, s).contains(&bq)
        })
    })
}
