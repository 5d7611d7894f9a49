use thiserror::Error;

/// Everything that can go wrong while building groups, enumerating lattices,
/// or evaluating audits.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup { reason: String, witness: Vec<usize> },

    #[error("group order exceeds cap {cap} (reached at least {reached})")]
    OrderCapExceeded { cap: usize, reached: usize },

    #[error("subgroup lattice of a group of order {order} exceeds lattice cap {cap}")]
    LatticeCapExceeded { cap: usize, order: usize },

    #[error("action of element {h} is not an automorphism: fails on pair ({a}, {b})")]
    NotAnAutomorphism { h: usize, a: usize, b: usize },

    #[error("action is not a homomorphism: fails on pair ({h1}, {h2})")]
    NotAHomomorphism { h1: usize, h2: usize },

    #[error("action images do not generate the acting group ({reached} of {order} elements)")]
    IncompleteAction { reached: usize, order: usize },

    #[error("{p} does not divide the group order {order}")]
    NoSuchPrime { p: u64, order: usize },

    #[error("subgroup is not contained in the claimed overgroup")]
    NotNested,

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("orders {0} and {1} are not coprime")]
    NotCoprime(usize, usize),

    #[error("hypotheses not met: {0}")]
    Inapplicable(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }

    /// True for the two cap-related variants.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::OrderCapExceeded { .. } | Error::LatticeCapExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
