//! Query-complexity benchmark over a corpus.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::automata::Automaton;
use crate::error::Result;
use crate::learners::{is_correct, Algorithm, LearnerResult};
use crate::residuals::canonical_rfsa;
use crate::teacher::{Teacher, TeacherSession};

pub const CSV_HEADER: &str =
    "language,alg,index,primes,hyp_states,mq_total,mq_distinct,eq,cex_max,correct,wall_ms";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub language: String,
    pub alg: Algorithm,
    /// States of the minimal DFA.
    pub index: usize,
    /// States of the canonical RFSA.
    pub primes: usize,
    pub hyp_states: usize,
    pub mq_total: usize,
    pub mq_distinct: usize,
    pub eq: usize,
    pub cex_max: usize,
    pub correct: bool,
    pub wall_ms: u128,
    /// Set when the learner stopped with an error.
    pub diagnostic: Option<String>,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.language,
            self.alg,
            self.index,
            self.primes,
            self.hyp_states,
            self.mq_total,
            self.mq_distinct,
            self.eq,
            self.cex_max,
            u8::from(self.correct),
            self.wall_ms
        )
    }
}

/// Runs one learner on a fresh session; correctness is checked afterwards
/// outside the session, so it does not show up in the query counts.
pub fn run_one(language: &str, target: &Automaton, alg: Algorithm) -> Result<BenchRecord> {
    Ok(run_learner(language, target, alg)?.0)
}

/// Like [`run_one`], also handing back the learner's result when it finished.
pub fn run_learner(
    language: &str,
    target: &Automaton,
    alg: Algorithm,
) -> Result<(BenchRecord, Option<LearnerResult>)> {
    let min = target.minimal_dfa();
    let primes = canonical_rfsa(&min)?.num_states();
    let mut session = TeacherSession::new(min.clone());
    let start = Instant::now();
    let outcome = alg.run(&mut session);
    let wall_ms = start.elapsed().as_millis();
    let stats = match &outcome {
        Ok(r) => r.stats,
        Err(_) => session.stats(),
    };
    let mut rec = BenchRecord {
        language: language.to_string(),
        alg,
        index: min.num_states(),
        primes,
        hyp_states: 0,
        mq_total: stats.mq_total,
        mq_distinct: stats.mq_distinct,
        eq: stats.eq_count,
        cex_max: stats.longest_counterexample,
        correct: false,
        wall_ms,
        diagnostic: None,
    };
    match outcome {
        Ok(r) => {
            rec.hyp_states = r.hypothesis.num_states();
            rec.correct = is_correct(&r.hypothesis, &min)?;
            if !rec.correct {
                rec.diagnostic = Some("hypothesis differs from the target".into());
            }
            Ok((rec, Some(r)))
        }
        Err(e) => {
            rec.diagnostic = Some(e.to_string());
            Ok((rec, None))
        }
    }
}

/// Every algorithm on every language, `jobs` runs at a time (0 picks the
/// number of CPUs). Records come back sorted by (language, algorithm name)
/// whatever the scheduling.
pub fn run_bench(
    langs: &[(String, Automaton)],
    algs: &[Algorithm],
    jobs: usize,
) -> Result<Vec<BenchRecord>> {
    let work: Vec<(&str, &Automaton, Algorithm)> = langs
        .iter()
        .flat_map(|(name, a)| algs.iter().map(move |&alg| (name.as_str(), a, alg)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| crate::Error::Diagnostic(format!("cannot start worker pool: {e}")))?;
    let mut records = pool.install(|| {
        work.par_iter()
            .map(|&(name, a, alg)| run_one(name, a, alg))
            .collect::<Result<Vec<_>>>()
    })?;
    records.sort_by(|x, y| (&x.language, x.alg.name()).cmp(&(&y.language, y.alg.name())));
    Ok(records)
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}
