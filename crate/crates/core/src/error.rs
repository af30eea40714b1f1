use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("unexpected token `{token}`: expected {expected}")]
    Token {
        token: String,
        expected: &'static str,
    },

    #[error("{0}")]
    OutOfRange(String),

    #[error("cannot place {value}: it is already home")]
    AlreadyHome { value: usize },

    #[error("cannot displace {value}: it is not home")]
    NotHome { value: usize },

    #[error("cannot displace {value} onto its own position")]
    TargetIsHome { value: usize },

    #[error("n = {n} exceeds the search capacity {cap}")]
    Capacity { n: usize, cap: usize },

    #[error("placement digraph has a cycle through {0}")]
    Cycle(String),

    #[error("code `{code}` is not of the form +^i 0^k -^j with k >= 1")]
    CodeShape { code: String },

    #[error("firing target {target} outside {lo}..={hi}")]
    FiringTarget { target: usize, lo: usize, hi: usize },

    #[error("invalid firing word at letter {index} (`{letter}`): {reason}")]
    InvalidWord {
        index: usize,
        letter: String,
        reason: String,
    },

    #[error("invalid set partition: {0}")]
    InvalidPartition(String),
}
