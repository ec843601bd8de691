//! Learning residual finite-state automata (RFSAs) with observation tables.
//!
//! Four learners share one table and teacher infrastructure:
//!
//! * [`learners::lstar_col`]: Angluin-style learner for the minimal DFA,
//!   adding all suffixes of each counterexample as contexts;
//! * [`learners::nlstar`]: learns the canonical RFSA directly with
//!   RFSA-closedness and RFSA-consistency;
//! * [`learners::two_step_reversal`]: learns the minimal DFA of the reversed
//!   language, then prunes the final table down to the canonical RFSA;
//! * [`learners::two_step_prime_contexts`]: learns the minimal DFA, then adds
//!   one context per (state, final state) pair and reads the canonical RFSA
//!   off the extended table.
//!
//! [`residuals`] computes the canonical RFSA straight from a minimal DFA and
//! serves as the independent oracle for all of them.

pub mod alphabet;
pub mod automata;
pub mod bench;
pub mod corpus;
mod error;
pub mod languages;
pub mod learners;
pub mod residuals;
pub mod tables;
pub mod teacher;

pub use alphabet::{reverse_word, Alphabet, Symbol, Word};
pub use automata::{isomorphic, shortest_difference_witness, Automaton, StateId, StateSet};
pub use error::{Error, Result};
