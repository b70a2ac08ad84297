use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("(a, b) = (0, 0) does not define a bundle with finite fundamental group")]
    ZeroBundle,

    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(i64, i64),

    #[error("modulus must be positive, got {0}")]
    BadModulus(i64),

    #[error("modulus {0} is not admissible: need r > 1 and gcd(r, 6) = 1")]
    InadmissibleModulus(u64),

    #[error("fundamental groups differ: Z/{0} vs Z/{1}")]
    ModulusMismatch(u64, u64),

    #[error("group element must be nonzero mod {0}")]
    ZeroElement(u64),

    #[error("rho is only defined here for odd r, got {0}")]
    EvenModulus(u64),

    #[error("scan cap of {cap} exceeded")]
    ScanCapExceeded { cap: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("form is degenerate: {0}")]
    Degenerate(String),

    #[error("malformed matrix: {0}")]
    Shape(String),

    #[error("basis is not symplectic: {0}")]
    NotSymplectic(String),
}
