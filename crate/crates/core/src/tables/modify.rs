use std::collections::BTreeMap;

use super::{covered, ObservationTable};
use crate::alphabet::Word;
use crate::error::{Error, Result};

/// A final table for the reversed language after pruning, plus the
/// ε-column as it was before pruning (it may be pruned away).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModifiedTable {
    table: ObservationTable,
    eps_obs: BTreeMap<Word, bool>,
}

impl ModifiedTable {
    pub fn table(&self) -> &ObservationTable {
        &self.table
    }

    /// Pre-pruning `obs(s, ε)` for a `RED` word `s`.
    pub fn eps_obs(&self, s: &Word) -> Option<bool> {
        self.eps_obs.get(s).copied()
    }

    pub fn into_table(self) -> ObservationTable {
        self.table
    }
}

/// Prunes a closed and consistent table:
///
/// 1. keep the least `RED` word per distinct `RED` row and the least context
///    per distinct column;
/// 2. drop all-zero rows and all-zero columns;
/// 3. drop every column that is the OR of the other remaining columns
///    included in it (all coverable columns at once).
///
/// `BLUE` becomes the one-symbol extensions of the kept `RED` words that
/// label a non-zero row of the input.
pub fn apply_modifications(t: &ObservationTable) -> Result<ModifiedTable> {
    if !t.is_filled() || t.is_closed().is_some() || t.is_consistent().is_some() {
        return Err(Error::contract("modifications need a closed and consistent table"));
    }
    let eps = t
        .contexts()
        .iter()
        .position(Word::is_empty)
        .ok_or_else(|| Error::contract("ε is not a context"))?;

    // (1) rows
    let mut red_sorted: Vec<&Word> = t.red().iter().collect();
    red_sorted.sort();
    let mut red: Vec<Word> = Vec::new();
    for s in red_sorted {
        let r = t.row_unchecked(s);
        if !red.iter().any(|x| t.row_unchecked(x) == r) {
            red.push(s.clone());
        }
    }
    let eps_obs: BTreeMap<Word, bool> = red
        .iter()
        .map(|s| (s.clone(), t.row_unchecked(s)[eps]))
        .collect();

    // (1) columns, compared over the kept RED words
    let column = |c: usize, rows: &[Word]| -> Vec<bool> {
        rows.iter().map(|s| t.row_unchecked(s)[c]).collect()
    };
    let mut cols: Vec<usize> = Vec::new();
    let mut by_len: Vec<usize> = (0..t.contexts().len()).collect();
    by_len.sort_by(|&x, &y| t.contexts()[x].cmp(&t.contexts()[y]));
    for c in by_len {
        if !cols.iter().any(|&k| column(k, &red) == column(c, &red)) {
            cols.push(c);
        }
    }
    cols.sort();

    // (2)
    let zero_row = |s: &Word| cols.iter().all(|&c| !t.row_unchecked(s)[c]);
    red.retain(|s| !zero_row(s));
    cols.retain(|&c| column(c, &red).iter().any(|&b| b));

    // (3)
    let columns: Vec<Vec<bool>> = cols.iter().map(|&c| column(c, &red)).collect();
    let refs: Vec<&[bool]> = columns.iter().map(Vec::as_slice).collect();
    let kept: Vec<usize> = cols
        .iter()
        .zip(&columns)
        .filter(|(_, col)| !covered(col, &refs))
        .map(|(&c, _)| c)
        .collect();

    let mut blue: Vec<Word> = red
        .iter()
        .flat_map(|s| t.alphabet().symbols().map(move |a| s.append(a)))
        .filter(|w| !red.contains(w) && t.contains(w))
        .filter(|w| kept.iter().any(|&c| t.row_unchecked(w)[c]))
        .collect();
    blue.sort();
    blue.dedup();

    let contexts = kept.iter().map(|&c| t.contexts()[c].clone()).collect();
    Ok(ModifiedTable {
        table: t.restricted(red, blue, contexts),
        eps_obs,
    })
}
