//! Alphabets and words.
//!
//! Symbols are stored as indices into a sorted [`Alphabet`], so index order
//! is alphabet order and the derived ordering on [`Word`] is the
//! length-lexicographic order used for every tie-break in the crate.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub type Symbol = usize;

/// An ordered finite set of symbol names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from symbol names; names are sorted and deduplicated.
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort();
        names.dedup();
        Alphabet { names }
    }

    /// `a`, `b`, `c`, ... up to `size` symbols (at most 26).
    pub fn letters(size: usize) -> Self {
        assert!(size <= 26, "at most 26 letter symbols");
        Alphabet::new((0..size).map(|i| char::from(b'a' + i as u8).to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, symbol: Symbol) -> &str {
        &self.names[symbol]
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .map_err(|_| Error::UnknownSymbol(name.to_string()))
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word. `^` and the empty string denote ε. With single-character
    /// symbol names the word is read character by character; otherwise symbols
    /// are separated by `.`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() || text == "^" {
            return Ok(Word::epsilon());
        }
        let symbols = if self.single_char() {
            text.chars()
                .map(|c| self.symbol(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split('.')
                .map(|s| self.symbol(s))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(symbols))
    }

    /// Inverse of [`Alphabet::parse_word`].
    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "^".to_string();
        }
        let sep = if self.single_char() { "" } else { "." };
        word.0
            .iter()
            .map(|&s| self.names[s].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.0.iter().find(|&&s| s >= self.len()) {
            Some(s) => Err(Error::UnknownSymbol(format!("#{s}"))),
            None => Ok(()),
        }
    }

    /// All words of length at most `max_len`, in length-lexicographic order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::epsilon()];
        let mut layer = vec![Word::epsilon()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for a in self.symbols() {
                    next.push(w.append(a));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// A finite sequence of symbols, ordered length-lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn epsilon() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn append(&self, a: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(a);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, a: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// The word without its last symbol; `None` for ε.
    pub fn parent(&self) -> Option<Word> {
        (!self.0.is_empty()).then(|| Word(self.0[..self.0.len() - 1].to_vec()))
    }

    /// All suffixes including ε and the word itself, shortest first.
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.0.len()).rev().map(move |i| Word(self.0[i..].to_vec()))
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Symbol indices joined by `.`; use [`Alphabet::format_word`] for names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Reverses a word: reverse_word(ε) = ε and reverse_word(a·w) = reverse_word(w)·a.
pub fn reverse_word(w: &Word) -> Word {
    w.reversed()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_lex_order() {
        let ab = Alphabet::letters(2);
        let mut words: Vec<Word> = ["ba", "b", "^", "aa", "a", "ab"]
            .iter()
            .map(|w| ab.parse_word(w).unwrap())
            .collect();
        words.sort();
        let shown: Vec<_> = words.iter().map(|w| ab.format_word(w)).collect();
        assert_eq!(shown, ["^", "a", "b", "aa", "ab", "ba"]);
    }

    #[test]
    fn reverse_word_cases() {
        let ab = Alphabet::letters(2);
        assert_eq!(reverse_word(&Word::epsilon()), Word::epsilon());
        let w = ab.parse_word("ab").unwrap();
        assert_eq!(ab.format_word(&reverse_word(&w)), "ba");
        let w = ab.parse_word("aabab").unwrap();
        assert_eq!(reverse_word(&reverse_word(&w)), w);
    }

    #[test]
    fn suffixes_include_epsilon_and_word() {
        let ab = Alphabet::letters(2);
        let w = ab.parse_word("ab").unwrap();
        let s: Vec<_> = w.suffixes().map(|x| ab.format_word(&x)).collect();
        assert_eq!(s, ["^", "b", "ab"]);
    }

    #[test]
    fn multi_char_symbols_use_dots() {
        let ab = Alphabet::new(["lo", "hi"]);
        let w = ab.parse_word("hi.lo.lo").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(ab.format_word(&w), "hi.lo.lo");
        assert!(matches!(ab.parse_word("hi.x"), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn words_up_to_counts() {
        let ab = Alphabet::letters(2);
        let ws = ab.words_up_to(3);
        assert_eq!(ws.len(), 1 + 2 + 4 + 8);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }
}
