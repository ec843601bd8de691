//! Small hand-built languages over `{a, b}` used in tests, examples and the CLI.

use crate::alphabet::Alphabet;
use crate::automata::Automaton;

const A: usize = 0;
const B: usize = 1;

/// Words with an even number of `a`: state 0 even (initial, final), 1 odd.
pub fn even_a() -> Automaton {
    let mut d = Automaton::new(Alphabet::letters(2), 2);
    d.add_initial(0);
    d.add_final(0);
    d.add_transition(0, A, 1);
    d.add_transition(1, A, 0);
    d.add_transition(0, B, 0);
    d.add_transition(1, B, 1);
    d
}

/// Σ*a as a two-state total DFA: state 1 means "last symbol was a".
pub fn ends_with_a() -> Automaton {
    let mut d = Automaton::new(Alphabet::letters(2), 2);
    d.add_initial(0);
    d.add_final(1);
    for q in 0..2 {
        d.add_transition(q, A, 1);
        d.add_transition(q, B, 0);
    }
    d
}

/// Σ*a as an NFA: state 0 loops on both symbols and guesses the last `a`.
pub fn ends_with_a_nfa() -> Automaton {
    let mut n = Automaton::new(Alphabet::letters(2), 2);
    n.add_initial(0);
    n.add_final(1);
    n.add_transition(0, A, 0);
    n.add_transition(0, B, 0);
    n.add_transition(0, A, 1);
    n
}

/// Σ*aΣ^(n-1): the n-th symbol from the end is `a`. An (n+1)-state NFA whose
/// minimal DFA has 2^n states.
pub fn nth_from_last_is_a(n: usize) -> Automaton {
    let mut m = Automaton::new(Alphabet::letters(2), n + 1);
    m.add_initial(0);
    m.add_final(n);
    m.add_transition(0, A, 0);
    m.add_transition(0, B, 0);
    m.add_transition(0, A, 1);
    for q in 1..n {
        m.add_transition(q, A, q + 1);
        m.add_transition(q, B, q + 1);
    }
    m
}
