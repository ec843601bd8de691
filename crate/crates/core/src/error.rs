use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("state {state} is out of range for an automaton with {len} states")]
    InvalidState { state: usize, len: usize },
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("word `{0}` is not a row label of the table")]
    NotInTable(String),
    #[error("context `{0}` is not a column of the table")]
    UnknownContext(String),
    #[error("state set is not a member of the family")]
    NotInFamily,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A precondition of the called operation does not hold.
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("refused: {0}")]
    Refused(String),
    /// A learner reached a state its correctness argument rules out.
    #[error("learner diagnostic: {0}")]
    Diagnostic(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
