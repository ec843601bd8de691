//! A simulated minimally adequate teacher over a secret target automaton,
//! with query accounting, and a view that teaches the reversed language.

use std::collections::HashMap;

use crate::alphabet::{reverse_word, Alphabet, Word};
use crate::automata::{shortest_difference_witness, Automaton};
use crate::error::{Error, Result};

/// Query tallies of one teaching session.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub mq_total: usize,
    /// Membership queries on words not asked before.
    pub mq_distinct: usize,
    pub eq_count: usize,
    /// Length of the longest counterexample returned so far.
    pub longest_counterexample: usize,
}

/// Membership and equivalence oracle for some target language.
pub trait Teacher {
    fn alphabet(&self) -> &Alphabet;

    /// Is `w` in the target language?
    fn mq(&mut self, w: &Word) -> Result<bool>;

    /// `None` if `hypothesis` accepts the target language, else a word in
    /// the symmetric difference.
    fn eq(&mut self, hypothesis: &Automaton) -> Result<Option<Word>>;

    fn stats(&self) -> QueryStats;
}

impl<T: Teacher + ?Sized> Teacher for &mut T {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }

    fn mq(&mut self, w: &Word) -> Result<bool> {
        (**self).mq(w)
    }

    fn eq(&mut self, hypothesis: &Automaton) -> Result<Option<Word>> {
        (**self).eq(hypothesis)
    }

    fn stats(&self) -> QueryStats {
        (**self).stats()
    }
}

#[derive(Debug, Clone)]
pub struct TeacherSession {
    target: Automaton,
    stats: QueryStats,
    cache: HashMap<Word, bool>,
}

impl TeacherSession {
    pub fn new(target: Automaton) -> Self {
        TeacherSession {
            target,
            stats: QueryStats::default(),
            cache: HashMap::new(),
        }
    }

    pub fn target(&self) -> &Automaton {
        &self.target
    }
}

impl Teacher for TeacherSession {
    fn alphabet(&self) -> &Alphabet {
        self.target.alphabet()
    }

    fn mq(&mut self, w: &Word) -> Result<bool> {
        self.target.alphabet().check_word(w)?;
        self.stats.mq_total += 1;
        if let Some(&answer) = self.cache.get(w) {
            return Ok(answer);
        }
        let answer = self.target.accepts(w)?;
        self.stats.mq_distinct += 1;
        self.cache.insert(w.clone(), answer);
        Ok(answer)
    }

    /// Returns the length-lexicographically least word of the symmetric
    /// difference.
    fn eq(&mut self, hypothesis: &Automaton) -> Result<Option<Word>> {
        if hypothesis.alphabet() != self.target.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        self.stats.eq_count += 1;
        let cex = shortest_difference_witness(hypothesis, &self.target)?;
        if let Some(c) = &cex {
            self.stats.longest_counterexample = self.stats.longest_counterexample.max(c.len());
        }
        Ok(cex)
    }

    fn stats(&self) -> QueryStats {
        self.stats
    }
}

/// Teaches the reversal of the inner teacher's language: words and
/// hypotheses are reversed on the way in, counterexamples on the way out.
/// All queries are counted by the inner teacher.
#[derive(Debug)]
pub struct ReversalTeacher<T> {
    inner: T,
}

impl<T: Teacher> ReversalTeacher<T> {
    pub fn new(inner: T) -> Self {
        ReversalTeacher { inner }
    }

    pub fn into_inner(self) -> T {
        self.inner
    }
}

impl<T: Teacher> Teacher for ReversalTeacher<T> {
    fn alphabet(&self) -> &Alphabet {
        self.inner.alphabet()
    }

    fn mq(&mut self, w: &Word) -> Result<bool> {
        self.inner.mq(&reverse_word(w))
    }

    fn eq(&mut self, hypothesis: &Automaton) -> Result<Option<Word>> {
        Ok(self.inner.eq(&hypothesis.reverse())?.map(|c| reverse_word(&c)))
    }

    fn stats(&self) -> QueryStats {
        self.inner.stats()
    }
}

/// Free-function form of [`ReversalTeacher::new`].
pub fn reversal_teacher<T: Teacher>(inner: T) -> ReversalTeacher<T> {
    ReversalTeacher::new(inner)
}
