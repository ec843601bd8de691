//! Seeded random corpus of regular languages.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::automata::Automaton;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusParams {
    pub n: usize,
    pub max_states: usize,
    pub alphabet_size: usize,
    pub seed: u64,
}

impl CorpusParams {
    /// The corpus the acceptance suite runs on.
    pub const STANDARD: CorpusParams = CorpusParams {
        n: 200,
        max_states: 8,
        alphabet_size: 2,
        seed: 42,
    };
}

/// Draws `n` minimal DFAs. Each draw picks a state count uniformly in
/// `1..=max_states`, uniform transitions and finals with probability 1/2;
/// languages equal to ∅ or Σ* are redrawn.
///
/// # Panics
///
/// If any parameter is zero.
pub fn generate(p: &CorpusParams) -> Vec<Automaton> {
    assert!(p.n > 0 && p.max_states > 0 && p.alphabet_size > 0, "corpus parameters must be positive");
    let alphabet = Alphabet::letters(p.alphabet_size);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut out = Vec::with_capacity(p.n);
    while out.len() < p.n {
        let states = rng.gen_range(1..=p.max_states);
        let mut d = Automaton::new(alphabet.clone(), states);
        d.add_initial(0);
        for q in 0..states {
            for a in alphabet.symbols() {
                d.add_transition(q, a, rng.gen_range(0..states));
            }
            if rng.gen_bool(0.5) {
                d.add_final(q);
            }
        }
        let min = d.minimal_dfa();
        // a one-state minimal DFA is ∅ or Σ*
        if min.num_states() > 1 {
            out.push(min);
        }
    }
    out
}

pub fn file_name(k: usize) -> String {
    format!("lang_{k:03}.aut")
}

/// Writes `lang_000.aut`, `lang_001.aut`, ... into `dir`, creating it.
pub fn write_corpus(dir: &Path, langs: &[Automaton]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for (k, a) in langs.iter().enumerate() {
        fs::write(dir.join(file_name(k)), a.to_string())?;
    }
    Ok(())
}

/// The `.aut` files of `dir` in name order.
pub fn corpus_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "aut"));
    files.sort();
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> CorpusParams {
        CorpusParams { n: 20, max_states: 5, alphabet_size: 2, seed }
    }

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(generate(&small(7)), generate(&small(7)));
        assert_ne!(generate(&small(7)), generate(&small(8)));
    }

    #[test]
    fn members_are_minimal_and_nontrivial() {
        for d in generate(&small(1)) {
            assert!(d.num_states() >= 2 && d.num_states() <= 5);
            assert_eq!(d, d.minimal_dfa());
            assert!(!d.finals().is_empty());
            assert!(d.finals().len() < d.num_states());
        }
    }

    #[test]
    fn unary_corpus() {
        let p = CorpusParams { n: 10, max_states: 6, alphabet_size: 1, seed: 3 };
        for d in generate(&p) {
            assert_eq!(d.alphabet().len(), 1);
            assert!(d.num_states() >= 2);
        }
    }

    #[test]
    fn file_names_sort_numerically() {
        assert_eq!(file_name(7), "lang_007.aut");
        assert!(file_name(9) < file_name(10));
    }
}
