use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point mass must be positive, got M = {0}")]
    NonPositiveMass(String),

    #[error("mollifier width must be positive, got gamma = {0}")]
    NonPositiveWidth(String),

    #[error("moment index {k} out of range: only {available} explicit moments supplied")]
    MomentOutOfRange { k: usize, available: usize },

    #[error("exact rational arithmetic unavailable: {0}")]
    ExactUnavailable(String),

    #[error("unsupported float precision: {0} bits (use 53 or 106)")]
    UnsupportedPrecision(u32),

    #[error("moment sequence is not positive definite: leading Hankel minor of order {order} is {detail}")]
    NotPositiveDefinite { order: usize, detail: String },

    #[error("Hankel matrix singular or near-singular at leading minor of order {order}; retry in exact mode")]
    SingularHankel { order: usize },

    #[error("degree {n} exceeds the {mode} degree cap {cap}")]
    DegreeCap { n: usize, cap: usize, mode: &'static str },

    #[error("need {needed} moments, got {got}")]
    NotEnoughMoments { needed: usize, got: usize },

    #[error("recurrence coefficient beta_{k} = {value} is not positive")]
    NonPositiveBeta { k: usize, value: String },

    #[error("exact and float zero paths disagree at zero {k}: exact {exact}, float {float}")]
    PathDisagreement { k: usize, exact: f64, float: f64 },

    #[error("zeros {k} and {next} are not separated (engine error)", next = k + 1)]
    CoincidentZeros { k: usize },

    #[error("polynomial of degree {degree} has {found} real zeros")]
    NotRealRooted { degree: usize, found: usize },

    #[error("moving mass index {index} is invalid for {count} masses")]
    BadMovingIndex { index: usize, count: usize },

    #[error("measure has no moving mass")]
    NoMovingMass,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid gamma schedule: {0}")]
    InvalidGammas(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("at a = {a}: {source}")]
    AtGridPoint { a: String, source: Box<Error> },

    #[error("at gamma = {gamma}: {source}")]
    AtGamma { gamma: String, source: Box<Error> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),
}
