use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("inadmissible deviation {l}: permutation has {runs} runs")]
    InadmissibleDeviation { l: usize, runs: usize },

    #[error("coefficient still depends on z: {0}")]
    ZDependent(String),

    #[error("not a polynomial: {0}")]
    NotPolynomial(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T> = std::result::Result<T, Error>;
