//! Observation tables: storage, mutation, and the closedness, consistency and
//! coverability predicates used by the learners.
//!
//! Rows are labelled by words of `RED ∪ BLUE`, columns by contexts `E`, and
//! cell `(s, e)` records whether `s·e` is in the target language. Every
//! "least" choice (violators, representatives, added contexts) is
//! length-lexicographic.

mod derive;
mod modify;

use std::collections::HashMap;
use std::fmt::Write as _;

pub use derive::{derive_bollig_nfa, derive_dfa, derive_reversal_rfsa};
pub use modify::{apply_modifications, ModifiedTable};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::teacher::Teacher;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationTable {
    alphabet: Alphabet,
    red: Vec<Word>,
    blue: Vec<Word>,
    contexts: Vec<Word>,
    slots: HashMap<Word, usize>,
    // cells[slot][context index], meaningful only where known is set
    cells: Vec<Vec<bool>>,
    known: Vec<Vec<bool>>,
}

/// `r ⊑ s`: every 1 of `r` is a 1 of `s`.
pub(crate) fn included(r: &[bool], s: &[bool]) -> bool {
    r.iter().zip(s).all(|(&x, &y)| !x || y)
}

/// Whether `target` is the bitwise OR of the `candidates` strictly below it.
pub(crate) fn covered(target: &[bool], candidates: &[&[bool]]) -> bool {
    join_below(target, candidates, true)
}

/// OR of the candidates included in `target` (excluding candidates equal to
/// it when `strict`) equals `target`.
pub(crate) fn join_below(target: &[bool], candidates: &[&[bool]], strict: bool) -> bool {
    let mut acc = vec![false; target.len()];
    for c in candidates {
        if (!strict || *c != target) && included(c, target) {
            for (a, &b) in acc.iter_mut().zip(c.iter()) {
                *a |= b;
            }
        }
    }
    acc == target
}

impl ObservationTable {
    /// `RED = {ε}`, `E = {ε}`, `BLUE = Σ`, no cells filled yet.
    pub fn new(alphabet: Alphabet) -> Self {
        let mut t = ObservationTable {
            alphabet,
            red: Vec::new(),
            blue: Vec::new(),
            contexts: vec![Word::epsilon()],
            slots: HashMap::new(),
            cells: Vec::new(),
            known: Vec::new(),
        };
        t.insert_row(Word::epsilon());
        t.red.push(Word::epsilon());
        t.extend_blue(&Word::epsilon());
        t
    }

    /// A fully filled table from explicit bits; `bits` lists the rows of
    /// `red` followed by those of `blue`, one bit per context.
    pub fn from_matrix(
        alphabet: Alphabet,
        red: Vec<Word>,
        blue: Vec<Word>,
        contexts: Vec<Word>,
        bits: Vec<Vec<bool>>,
    ) -> Result<Self> {
        let mut t = ObservationTable {
            alphabet,
            red: Vec::new(),
            blue: Vec::new(),
            contexts: Vec::new(),
            slots: HashMap::new(),
            cells: Vec::new(),
            known: Vec::new(),
        };
        for e in &contexts {
            t.alphabet.check_word(e)?;
            if t.contexts.contains(e) {
                return Err(Error::contract("repeated context"));
            }
            t.contexts.push(e.clone());
        }
        if bits.len() != red.len() + blue.len() || bits.iter().any(|r| r.len() != contexts.len()) {
            return Err(Error::contract("bit matrix does not match table shape"));
        }
        for (w, row) in red.iter().chain(&blue).zip(bits) {
            t.alphabet.check_word(w)?;
            if t.slots.contains_key(w) {
                return Err(Error::contract("repeated row label"));
            }
            let slot = t.insert_row(w.clone());
            t.cells[slot] = row;
            t.known[slot] = vec![true; contexts.len()];
        }
        t.red = red;
        t.blue = blue;
        t.blue.sort();
        t.check_shape()?;
        Ok(t)
    }

    /// Builds a table over a subset of this table's rows and columns; used
    /// by the two-step surgery, which gives up the shape invariants.
    pub(crate) fn restricted(&self, red: Vec<Word>, blue: Vec<Word>, contexts: Vec<Word>) -> Self {
        let cols: Vec<usize> = contexts.iter().map(|e| self.context_index(e).unwrap()).collect();
        let mut t = ObservationTable {
            alphabet: self.alphabet.clone(),
            red: Vec::new(),
            blue: Vec::new(),
            contexts,
            slots: HashMap::new(),
            cells: Vec::new(),
            known: Vec::new(),
        };
        for w in red.iter().chain(&blue) {
            let src = self.slots[w];
            let slot = t.insert_row(w.clone());
            t.cells[slot] = cols.iter().map(|&c| self.cells[src][c]).collect();
            t.known[slot] = cols.iter().map(|&c| self.known[src][c]).collect();
        }
        t.red = red;
        t.blue = blue;
        t
    }

    fn check_shape(&self) -> Result<()> {
        for s in &self.red {
            if let Some(p) = s.parent() {
                if !self.red.contains(&p) {
                    return Err(Error::contract("RED is not prefix-closed"));
                }
            }
        }
        let mut expected: Vec<Word> = self
            .red
            .iter()
            .flat_map(|s| self.alphabet.symbols().map(move |a| s.append(a)))
            .filter(|w| !self.red.contains(w))
            .collect();
        expected.sort();
        expected.dedup();
        if expected != self.blue {
            return Err(Error::contract("BLUE is not RED·Σ minus RED"));
        }
        Ok(())
    }

    fn insert_row(&mut self, w: Word) -> usize {
        if let Some(&slot) = self.slots.get(&w) {
            return slot;
        }
        let slot = self.cells.len();
        self.cells.push(vec![false; self.contexts.len()]);
        self.known.push(vec![false; self.contexts.len()]);
        self.slots.insert(w, slot);
        slot
    }

    fn extend_blue(&mut self, s: &Word) {
        for a in self.alphabet.symbols() {
            let w = s.append(a);
            if !self.slots.contains_key(&w) {
                self.insert_row(w.clone());
                self.blue.push(w);
            }
        }
        self.blue.sort();
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn red(&self) -> &[Word] {
        &self.red
    }

    pub fn blue(&self) -> &[Word] {
        &self.blue
    }

    pub fn contexts(&self) -> &[Word] {
        &self.contexts
    }

    /// `RED` followed by `BLUE`.
    pub fn labels(&self) -> impl Iterator<Item = &Word> {
        self.red.iter().chain(&self.blue)
    }

    pub fn contains(&self, s: &Word) -> bool {
        self.slots.contains_key(s)
    }

    pub fn is_red(&self, s: &Word) -> bool {
        self.red.contains(s)
    }

    pub fn has_context(&self, e: &Word) -> bool {
        self.contexts.contains(e)
    }

    fn context_index(&self, e: &Word) -> Result<usize> {
        self.contexts
            .iter()
            .position(|c| c == e)
            .ok_or_else(|| Error::UnknownContext(self.alphabet.format_word(e)))
    }

    fn slot(&self, s: &Word) -> Result<usize> {
        self.slots
            .get(s)
            .copied()
            .ok_or_else(|| Error::NotInTable(self.alphabet.format_word(s)))
    }

    /// Number of cells still waiting for a membership query.
    pub fn unfilled(&self) -> usize {
        self.labels()
            .map(|w| self.known[self.slots[w]].iter().filter(|k| !**k).count())
            .sum()
    }

    pub fn is_filled(&self) -> bool {
        self.unfilled() == 0
    }

    fn assert_filled(&self) {
        assert!(self.is_filled(), "observation table has unfilled cells");
    }

    pub fn obs(&self, s: &Word, e: &Word) -> Result<bool> {
        let slot = self.slot(s)?;
        let c = self.context_index(e)?;
        if !self.known[slot][c] {
            return Err(Error::contract("cell has not been filled"));
        }
        Ok(self.cells[slot][c])
    }

    /// The row of `s` as one bit per context.
    pub fn row(&self, s: &Word) -> Result<&[bool]> {
        let slot = self.slot(s)?;
        if self.known[slot].iter().any(|k| !k) {
            return Err(Error::contract("row has unfilled cells"));
        }
        Ok(&self.cells[slot])
    }

    pub(crate) fn row_unchecked(&self, s: &Word) -> &[bool] {
        &self.cells[self.slots[s]]
    }

    /// Row of `s·a`, if that word labels a row. After surgery a missing
    /// extension stands for an all-zero row.
    pub(crate) fn extension_row(&self, s: &Word, a: Symbol) -> Option<&[bool]> {
        self.slots.get(&s.append(a)).map(|&slot| self.cells[slot].as_slice())
    }

    /// The column of `e` restricted to `RED`, in `RED` order.
    pub fn column(&self, e: &Word) -> Result<Vec<bool>> {
        let c = self.context_index(e)?;
        Ok(self.red.iter().map(|s| self.cells[self.slots[s]][c]).collect())
    }

    /// Moves `s` from `BLUE` to `RED` and adds its one-symbol extensions to
    /// `BLUE`. New cells are left for [`ObservationTable::fill`].
    pub fn add_red(&mut self, s: &Word) -> Result<()> {
        if self.is_red(s) {
            return Ok(());
        }
        let parent_red = s.parent().is_some_and(|p| self.is_red(&p));
        if !parent_red {
            return Err(Error::contract(format!(
                "`{}` does not extend a RED word by one symbol",
                self.alphabet.format_word(s)
            )));
        }
        self.insert_row(s.clone());
        self.blue.retain(|w| w != s);
        self.red.push(s.clone());
        self.extend_blue(s);
        Ok(())
    }

    /// Adds a context; returns `false` (and changes nothing) if present.
    pub fn add_context(&mut self, e: &Word) -> Result<bool> {
        self.alphabet.check_word(e)?;
        if self.has_context(e) {
            return Ok(false);
        }
        self.contexts.push(e.clone());
        for (cells, known) in self.cells.iter_mut().zip(&mut self.known) {
            cells.push(false);
            known.push(false);
        }
        Ok(true)
    }

    /// Asks one membership query per unfilled cell; returns how many were asked.
    pub fn fill<T: Teacher + ?Sized>(&mut self, teacher: &mut T) -> Result<usize> {
        let labels: Vec<Word> = self.labels().cloned().collect();
        let mut asked = 0;
        for s in labels {
            let slot = self.slots[&s];
            for c in 0..self.contexts.len() {
                if !self.known[slot][c] {
                    self.cells[slot][c] = teacher.mq(&s.concat(&self.contexts[c]))?;
                    self.known[slot][c] = true;
                    asked += 1;
                }
            }
        }
        Ok(asked)
    }

    /// `r <> s`: the rows differ in some context.
    pub fn obviously_different(&self, r: &Word, s: &Word) -> Result<bool> {
        Ok(self.row(r)? != self.row(s)?)
    }

    /// `None` if closed, else the least `BLUE` word whose row matches no `RED` row.
    pub fn is_closed(&self) -> Option<Word> {
        self.assert_filled();
        let red_rows: Vec<&[bool]> = self.red.iter().map(|s| self.row_unchecked(s)).collect();
        self.blue
            .iter()
            .find(|b| !red_rows.contains(&self.row_unchecked(b)))
            .cloned()
    }

    /// `None` if consistent, else the least context `a·e` separating the
    /// extensions of two `RED` words with equal rows.
    pub fn is_consistent(&self) -> Option<Word> {
        self.assert_filled();
        let zero = vec![false; self.contexts.len()];
        let mut best: Option<(Symbol, &Word)> = None;
        for (i, s1) in self.red.iter().enumerate() {
            for s2 in &self.red[i + 1..] {
                if self.row_unchecked(s1) != self.row_unchecked(s2) {
                    continue;
                }
                for a in self.alphabet.symbols() {
                    let r1 = self.extension_row(s1, a).unwrap_or(&zero);
                    let r2 = self.extension_row(s2, a).unwrap_or(&zero);
                    for (c, e) in self.contexts.iter().enumerate() {
                        if r1[c] != r2[c] {
                            best = least_context(best, (a, e));
                        }
                    }
                }
            }
        }
        best.map(|(a, e)| e.prepend(a))
    }

    /// `row(s1) ⊑ row(s2)`.
    pub fn row_includes(&self, s1: &Word, s2: &Word) -> Result<bool> {
        Ok(included(self.row(s1)?, self.row(s2)?))
    }

    /// Whether `row(s)` is the OR of the candidate rows strictly included in it.
    pub fn is_row_coverable(&self, s: &Word, candidates: &[Word]) -> Result<bool> {
        let target = self.row(s)?;
        let rows = candidates
            .iter()
            .map(|c| self.row(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(covered(target, &rows))
    }

    fn all_rows(&self) -> Vec<&[bool]> {
        self.labels().map(|w| self.row_unchecked(w)).collect()
    }

    /// One representative (the least word) per distinct `RED` row that is not
    /// coverable by the rows of `RED ∪ BLUE`, in length-lexicographic order.
    pub fn ncov_red(&self) -> Vec<Word> {
        self.assert_filled();
        let all = self.all_rows();
        let mut sorted: Vec<&Word> = self.red.iter().collect();
        sorted.sort();
        let mut seen: Vec<&[bool]> = Vec::new();
        let mut out = Vec::new();
        for s in sorted {
            let r = self.row_unchecked(s);
            if seen.contains(&r) {
                continue;
            }
            seen.push(r);
            if !covered(r, &all) {
                out.push(s.clone());
            }
        }
        out
    }

    /// `None` if every `BLUE` row is the OR of the `ncov_red` rows included
    /// in it. Otherwise the least `BLUE` word whose row is non-coverable in
    /// `RED ∪ BLUE` but is not a non-coverable `RED` row.
    pub fn is_rfsa_closed(&self) -> Option<Word> {
        self.assert_filled();
        let primes: Vec<&[bool]> = self.ncov_red().iter().map(|s| self.row_unchecked(s)).collect();
        let uncovered: Vec<&Word> = self
            .blue
            .iter()
            .filter(|b| !join_below(self.row_unchecked(b), &primes, false))
            .collect();
        if uncovered.is_empty() {
            return None;
        }
        let all = self.all_rows();
        self.blue
            .iter()
            .find(|b| {
                let r = self.row_unchecked(b);
                !primes.contains(&r) && !covered(r, &all)
            })
            .or(uncovered.first().copied())
            .cloned()
    }

    /// `None` if `row(s1) ⊑ row(s2)` implies `row(s1·a) ⊑ row(s2·a)` for all
    /// `RED` words and symbols; otherwise the least context `a·e` with
    /// `obs(s1·a, e) = 1` and `obs(s2·a, e) = 0`.
    pub fn is_rfsa_consistent(&self) -> Option<Word> {
        self.assert_filled();
        let zero = vec![false; self.contexts.len()];
        let mut best: Option<(Symbol, &Word)> = None;
        for s1 in &self.red {
            for s2 in &self.red {
                if s1 == s2 || !included(self.row_unchecked(s1), self.row_unchecked(s2)) {
                    continue;
                }
                for a in self.alphabet.symbols() {
                    let r1 = self.extension_row(s1, a).unwrap_or(&zero);
                    let r2 = self.extension_row(s2, a).unwrap_or(&zero);
                    for (c, e) in self.contexts.iter().enumerate() {
                        if r1[c] && !r2[c] {
                            best = least_context(best, (a, e));
                        }
                    }
                }
            }
        }
        best.map(|(a, e)| e.prepend(a))
    }

    /// Whether `col(e)` over `RED` is the OR of the other columns whose 1s it
    /// contains.
    pub fn is_column_coverable(&self, e: &Word) -> Result<bool> {
        let target = self.column(e)?;
        let columns = self
            .contexts
            .iter()
            .map(|c| self.column(c))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&[bool]> = columns.iter().map(Vec::as_slice).collect();
        Ok(covered(&target, &refs))
    }

    /// Tab-separated grid: a header of contexts (ε as `^`), then `RED` rows,
    /// a `--` line, then `BLUE` rows. Unfilled cells print as `?`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.contexts {
            let _ = write!(out, "\t{}", self.alphabet.format_word(e));
        }
        out.push('\n');
        let print_rows = |out: &mut String, words: &[Word]| {
            for s in words {
                let slot = self.slots[s];
                out.push_str(&self.alphabet.format_word(s));
                for c in 0..self.contexts.len() {
                    let cell = match (self.known[slot][c], self.cells[slot][c]) {
                        (false, _) => '?',
                        (true, true) => '1',
                        (true, false) => '0',
                    };
                    out.push('\t');
                    out.push(cell);
                }
                out.push('\n');
            }
        };
        print_rows(&mut out, &self.red);
        out.push_str("--\n");
        print_rows(&mut out, &self.blue);
        out
    }
}

fn least_context<'a>(
    best: Option<(Symbol, &'a Word)>,
    cand: (Symbol, &'a Word),
) -> Option<(Symbol, &'a Word)> {
    match best {
        Some(b) if b <= cand => Some(b),
        _ => Some(cand),
    }
}
