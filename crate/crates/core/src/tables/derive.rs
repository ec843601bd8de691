use std::collections::HashMap;

use super::{included, ModifiedTable, ObservationTable};
use crate::alphabet::Word;
use crate::automata::{Automaton, StateSet};
use crate::error::{Error, Result};

/// The DFA of a closed and consistent table: one state per distinct `RED`
/// row (numbered in `RED` order), initial `row(ε)`, final rows with
/// `obs(s, ε) = 1`, and `row(s) -a-> row(s·a)`.
pub fn derive_dfa(t: &ObservationTable) -> Result<Automaton> {
    if !t.is_filled() || t.is_closed().is_some() || t.is_consistent().is_some() {
        return Err(Error::contract("derive_dfa needs a closed and consistent table"));
    }
    let eps = t
        .contexts()
        .iter()
        .position(Word::is_empty)
        .ok_or_else(|| Error::contract("ε is not a context"))?;
    let mut ids: HashMap<&[bool], usize> = HashMap::new();
    let mut reps: Vec<&Word> = Vec::new();
    for s in t.red() {
        ids.entry(t.row_unchecked(s)).or_insert_with(|| {
            reps.push(s);
            reps.len() - 1
        });
    }
    let mut d = Automaton::new(t.alphabet().clone(), reps.len());
    d.add_initial(ids[t.row(&Word::epsilon())?]);
    for (q, s) in reps.iter().enumerate() {
        if t.row_unchecked(s)[eps] {
            d.add_final(q);
        }
        for a in t.alphabet().symbols() {
            let row = t.row(&s.append(a))?;
            d.add_transition(q, a, ids[row]);
        }
    }
    Ok(d)
}

/// Reads the RFSA off a pruned table for the reversed language.
///
/// The pruned table's own automaton `A_T` has one state per `RED` word and
/// no failure state. Each remaining column `e` becomes the state
/// `q_e = {s ∈ RED | obs(s, e) = 1}`; `q_e` is initial when every member had
/// `obs(s, ε) = 1` before pruning, final when it contains ε, and
/// `q -a-> q'` whenever `q'` lies inside the `a`-predecessors of `q` in
/// `A_T`. States follow column order.
pub fn derive_reversal_rfsa(m: &ModifiedTable) -> Result<Automaton> {
    let t = m.table();
    let red = t.red();
    let mut index: HashMap<&[bool], usize> = HashMap::new();
    for (i, s) in red.iter().enumerate() {
        if index.insert(t.row_unchecked(s), i).is_some() {
            return Err(Error::contract("pruned table has repeated RED rows"));
        }
    }
    // A_T: successor of each RED word per symbol, None for pruned zero rows
    let mut succ: Vec<Vec<Option<usize>>> = Vec::with_capacity(red.len());
    for s in red {
        let mut row = Vec::with_capacity(t.alphabet().len());
        for a in t.alphabet().symbols() {
            let target = match t.extension_row(s, a) {
                None => None,
                Some(r) => Some(*index.get(r).ok_or_else(|| {
                    Error::contract("pruned table is not closed over its RED rows")
                })?),
            };
            row.push(target);
        }
        succ.push(row);
    }

    let states: Vec<StateSet> = t
        .contexts()
        .iter()
        .map(|e| {
            let c = t.context_index(e).unwrap();
            (0..red.len()).filter(|&i| t.row_unchecked(&red[i])[c]).collect()
        })
        .collect();
    let eps_red = red.iter().position(Word::is_empty);
    let accepting: StateSet = red
        .iter()
        .enumerate()
        .filter(|(_, s)| m.eps_obs(s) == Some(true))
        .map(|(i, _)| i)
        .collect();

    let mut r = Automaton::new(t.alphabet().clone(), states.len());
    for (i, q) in states.iter().enumerate() {
        if q.is_subset(&accepting) {
            r.add_initial(i);
        }
        if eps_red.is_some_and(|e| q.contains(&e)) {
            r.add_final(i);
        }
        for a in t.alphabet().symbols() {
            let pred: StateSet = (0..red.len())
                .filter(|&s| succ[s][a].is_some_and(|x| q.contains(&x)))
                .collect();
            for (j, q2) in states.iter().enumerate() {
                if q2.is_subset(&pred) {
                    r.add_transition(i, a, j);
                }
            }
        }
    }
    Ok(r)
}

/// The NFA of an RFSA-closed and RFSA-consistent table: states are the
/// non-coverable `RED` rows, initial those included in `row(ε)`, final those
/// with `obs(s, ε) = 1`, and `row(s) -a-> r` for every state `r ⊑ row(s·a)`.
/// A missing extension row (pruned as all-zero) has no successors.
pub fn derive_bollig_nfa(t: &ObservationTable) -> Result<Automaton> {
    if !t.is_filled() || t.is_rfsa_closed().is_some() || t.is_rfsa_consistent().is_some() {
        return Err(Error::contract(
            "derive_bollig_nfa needs an RFSA-closed and RFSA-consistent table",
        ));
    }
    let eps = t.context_index(&Word::epsilon())?;
    let zero = vec![false; t.contexts().len()];
    let reps = t.ncov_red();
    let rows: Vec<&[bool]> = reps.iter().map(|s| t.row_unchecked(s)).collect();
    let eps_row: &[bool] = if t.contains(&Word::epsilon()) {
        t.row_unchecked(&Word::epsilon())
    } else {
        &zero
    };
    let mut r = Automaton::new(t.alphabet().clone(), reps.len());
    for (i, s) in reps.iter().enumerate() {
        if included(rows[i], eps_row) {
            r.add_initial(i);
        }
        if rows[i][eps] {
            r.add_final(i);
        }
        for a in t.alphabet().symbols() {
            let next = t.extension_row(s, a).unwrap_or(&zero);
            for (j, row) in rows.iter().enumerate() {
                if included(row, next) {
                    r.add_transition(i, a, j);
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automata::isomorphic;
    use crate::languages;
    use crate::tables::tests::{unary, unary_table};
    use crate::tables::apply_modifications;

    #[test]
    fn single_row_universal() {
        let t = unary_table(&[&[1]], &[1], unary(1));
        let d = derive_dfa(&t).unwrap();
        assert_eq!(d, Automaton::universal(Alphabet::letters(1)));
        let b = derive_bollig_nfa(&t).unwrap();
        assert_eq!(b, d);
        let m = apply_modifications(&t).unwrap();
        let r = derive_reversal_rfsa(&m).unwrap();
        assert_eq!(r, d);
    }

    #[test]
    fn derive_dfa_needs_closed_table() {
        let t = unary_table(&[&[1]], &[0], unary(1));
        assert!(matches!(derive_dfa(&t), Err(Error::Contract(_))));
    }

    #[test]
    fn deterministic_shaped_table_matches_dfa() {
        // even number of a's over a unary alphabet: rows (1,0) and (0,1)
        let t = unary_table(&[&[1, 0], &[0, 1]], &[1, 0], unary(2));
        let d = derive_dfa(&t).unwrap();
        let b = derive_bollig_nfa(&t).unwrap();
        assert!(isomorphic(&d, &b));
        assert_eq!(d.num_states(), 2);
    }

    #[test]
    fn bollig_rejects_unclosed() {
        let t = unary_table(&[&[1, 0]], &[1, 1], unary(2));
        assert!(matches!(derive_bollig_nfa(&t), Err(Error::Contract(_))));
    }

    #[test]
    fn even_a_reversal_table() {
        use crate::learners::lstar_col;
        use crate::teacher::{ReversalTeacher, TeacherSession};
        let mut session = TeacherSession::new(languages::even_a());
        let res = lstar_col(&mut ReversalTeacher::new(&mut session)).unwrap();
        // rows ε:1, a:0 over E = {ε}; pruning keeps one row and one column
        let m = apply_modifications(res.final_table.table()).unwrap();
        assert_eq!(m.table().contexts(), &[Word::epsilon()]);
        assert_eq!(m.table().red(), &[Word::epsilon()]);
        let r = derive_reversal_rfsa(&m).unwrap();
        let mut b_star = Automaton::new(Alphabet::letters(2), 1);
        b_star.add_initial(0);
        b_star.add_final(0);
        b_star.add_transition(0, 1, 0);
        assert_eq!(r, b_star);
    }
}
