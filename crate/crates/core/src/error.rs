use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{op} needs an exact polynomial but the input is truncated above q^{order}")]
    TruncatedInput { op: &'static str, order: String },

    #[error("coefficient of {monomial} is unknown: the value is truncated above q^{order}")]
    UnknownCoefficient { monomial: String, order: String },

    #[error("an infinite product or series needs a truncation order")]
    MissingTruncation,

    #[error("factor {factor} does not grow in q, so the product cannot be truncated")]
    NonTerminating { factor: String },

    #[error("requested size {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: u64, cap: u64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("unknown partition family `{0}`")]
    UnknownFamily(String),

    #[error("partition {partition} is not in {family}")]
    NotInFamily { partition: String, family: String },

    #[error("max part {max_part} is outside the residue class handled by the {recurrence} recurrence")]
    WrongResidue { max_part: i64, recurrence: String },

    #[error("invalid motion configuration: {0}")]
    InvalidConfig(String),

    #[error("move path does not fit: {0}")]
    PathOutOfBounds(String),

    #[error("motion blocked: {0}")]
    Blocked(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parameter {name}={value} is outside the verified range [{lo}, {hi}]")]
    ParamOutOfRange { name: String, value: i64, lo: i64, hi: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("malformed serialized polynomial: {0}")]
    Deserialize(String),
}
