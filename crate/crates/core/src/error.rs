use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient of x^{0} vanishes; sign pattern undefined")]
    ZeroCoefficient(usize),
    #[error("interval endpoint is a root")]
    BoundaryRoot,
    #[error("empty interval: lower bound must be below upper bound")]
    EmptyInterval,
    #[error("polynomial is not hyperbolic")]
    NotHyperbolic,
    #[error("polynomial vanishes at zero")]
    RootAtZero,
    #[error("two distinct roots share a modulus")]
    ModuliTie,
    #[error("polynomial has a multiple root")]
    NonGeneric,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("invalid root configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid sign pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid order of moduli: {0}")]
    InvalidOrder(String),
    #[error("couple is not compatible with the sign pattern")]
    Incompatible,
    #[error("expected two sign changes, found {0}")]
    WrongChangeCount(usize),
    #[error("epsilon halving exhausted after {0} halvings")]
    EpsilonExhausted(u32),
    #[error("rational snapping collapsed the order of moduli")]
    OrderCollapsed,
    #[error("unknown certificate `{0}`")]
    UnknownCertificate(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("soundness violation: {0}")]
    SoundnessViolation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
