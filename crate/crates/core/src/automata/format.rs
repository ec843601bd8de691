//! Line-based text format:
//!
//! ```text
//! # comment
//! alphabet: a b
//! states: 3
//! initial: 0
//! final: 0 2
//! trans: 0 a 1
//! trans: 0 b 0
//! ```
//!
//! Several ids on `initial:` or repeated `trans:` lines for one
//! `(state, symbol)` pair describe a nondeterministic automaton.

use std::fmt;
use std::str::FromStr;

use super::{Automaton, StateId};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ids: &mut dyn Iterator<Item = String>| {
            ids.map(|s| format!(" {s}")).collect::<String>()
        };
        writeln!(f, "alphabet:{}", join(&mut self.alphabet().names().iter().cloned()))?;
        writeln!(f, "states: {}", self.num_states())?;
        writeln!(f, "initial:{}", join(&mut self.initial().iter().map(|q| q.to_string())))?;
        writeln!(f, "final:{}", join(&mut self.finals().iter().map(|q| q.to_string())))?;
        for (p, a, q) in self.arcs() {
            writeln!(f, "trans: {p} {} {q}", self.alphabet().name(a))?;
        }
        Ok(())
    }
}

impl FromStr for Automaton {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Automaton::parse(text)
    }
}

impl Automaton {
    /// Strict parser for the text format; errors carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<Automaton> {
        let mut alphabet: Option<Alphabet> = None;
        let mut automaton: Option<Automaton> = None;
        let mut seen_initial = false;
        let mut seen_final = false;
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, rest) = trimmed
                .split_once(':')
                .ok_or_else(|| Error::parse(line, "expected `key: values`"))?;
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            match key {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(Error::parse(line, "duplicate `alphabet:` line"));
                    }
                    let ab = Alphabet::new(tokens.iter().copied());
                    if ab.len() != tokens.len() {
                        return Err(Error::parse(line, "repeated symbol in alphabet"));
                    }
                    if tokens.iter().any(|t| t.contains('.') || *t == "^") {
                        return Err(Error::parse(line, "symbols may not contain `.` or be `^`"));
                    }
                    alphabet = Some(ab);
                }
                "states" => {
                    if automaton.is_some() {
                        return Err(Error::parse(line, "duplicate `states:` line"));
                    }
                    let ab = alphabet
                        .clone()
                        .ok_or_else(|| Error::parse(line, "`states:` before `alphabet:`"))?;
                    let [n] = tokens[..] else {
                        return Err(Error::parse(line, "`states:` takes one count"));
                    };
                    let n: usize = n
                        .parse()
                        .map_err(|_| Error::parse(line, format!("bad state count `{n}`")))?;
                    automaton = Some(Automaton::new(ab, n));
                }
                "initial" | "final" => {
                    let a = automaton
                        .as_mut()
                        .ok_or_else(|| Error::parse(line, format!("`{key}:` before `states:`")))?;
                    let seen = if key == "initial" { &mut seen_initial } else { &mut seen_final };
                    if *seen {
                        return Err(Error::parse(line, format!("duplicate `{key}:` line")));
                    }
                    *seen = true;
                    for t in tokens {
                        let q = state_id(t, a.num_states(), line)?;
                        if key == "initial" {
                            a.add_initial(q);
                        } else {
                            a.add_final(q);
                        }
                    }
                }
                "trans" => {
                    let a = automaton
                        .as_mut()
                        .ok_or_else(|| Error::parse(line, "`trans:` before `states:`"))?;
                    let [p, s, q] = tokens[..] else {
                        return Err(Error::parse(line, "`trans:` takes `source symbol target`"));
                    };
                    let p = state_id(p, a.num_states(), line)?;
                    let q = state_id(q, a.num_states(), line)?;
                    let s = a
                        .alphabet()
                        .symbol(s)
                        .map_err(|_| Error::parse(line, format!("unknown symbol `{s}`")))?;
                    a.add_transition(p, s, q);
                }
                other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
            }
        }
        automaton.ok_or_else(|| Error::parse(last_line.max(1), "missing `states:` line"))
    }
}

fn state_id(token: &str, n: usize, line: usize) -> Result<StateId> {
    let q: StateId = token
        .parse()
        .map_err(|_| Error::parse(line, format!("bad state id `{token}`")))?;
    if q >= n {
        return Err(Error::parse(line, format!("state {q} out of range (states: {n})")));
    }
    Ok(q)
}
