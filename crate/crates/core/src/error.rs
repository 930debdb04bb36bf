use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("supplied modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulusDegree { expected: usize, got: usize },
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("group order {n} is even; 2 is not invertible")]
    EvenModulus { n: u64 },
    #[error("subset is not a planar difference set")]
    NotPlanar,
    #[error("completion cross-check failed: candidate {g} excluded by the halving rule but D + {g} has counts in {{1,2}} (or vice versa)")]
    CompletionCrossCheck { g: u64 },
    #[error("{k} does not divide q - 1 = {qm1}")]
    BadSubgroupIndex { k: u64, qm1: u64 },
    #[error("supplied generator is not a primitive root")]
    NotPrimitive,
    #[error("vertex {v} out of range for side of size {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("codegree of a vertex with itself is undefined")]
    EqualVertices,
    #[error("element {g} out of range for group of order {n}")]
    ElementOutOfRange { g: u64, n: u64 },
    #[error("no closed C4 formula for even group order {n}; use the direct count")]
    EvenOrderFormula { n: u64 },
    #[error("exhaustive search space C({n}, {k}) exceeds the cap {cap}")]
    ExhaustiveCapExceeded { n: u64, k: u64, cap: u64 },
    #[error("malformed graph file at line {line}: {msg}")]
    MalformedGraphFile { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
