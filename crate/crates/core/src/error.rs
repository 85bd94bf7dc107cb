use thiserror::Error;

use crate::bunch::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("parse error{}{}: {message}", .line.map(|l| format!(" at line {l}")).unwrap_or_default(), .field.as_ref().map(|f| format!(" in `{f}`")).unwrap_or_default())]
    Parse {
        line: Option<usize>,
        field: Option<String>,
        message: String,
    },

    #[error("unknown layer `{0}`")]
    UnknownLayer(String),

    #[error("layer `{from}` is above layer `{to}` in the skeleton")]
    LayerOrder { from: String, to: String },

    #[error("layer group of `{0}` has no lower cover of the requested element")]
    CoverMissing(String),

    #[error("cannot insert above `{0}`: layer is in the J class")]
    LayerClass(String),

    #[error("cannot insert below the least layer `{0}`")]
    LeastLayer(String),

    #[error("cannot insert below `{0}`: its layer subgroup is proper, so the copy would not map into it")]
    SubgroupObstruction(String),

    #[error("even chains have an unfillable gap between f and t")]
    EvenTypeUnsupported,

    #[error("`{x}` is not strictly below `{y}`")]
    NotLess { x: String, y: String },

    #[error("chain is not bounded")]
    Unbounded,

    #[error("chain is trivial")]
    TrivialChain,

    #[error("size {size} exceeds the enumeration bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("table is not involutive: ¬¬{0} ≠ {0}")]
    NotInvolutive(usize),

    #[error("table is neither odd nor even (unit {unit}, falsum {falsum})")]
    NotOddOrEven { unit: usize, falsum: usize },

    #[error("no v satisfies {x}·v ≤ {z}")]
    NotResiduated { x: usize, z: usize },

    #[error("FL_e axiom failure: {0}")]
    AxiomFailure(String),

    #[error("round trip mismatch at cell ({row}, {col}): table has {expected}, reconstruction has {found}")]
    RoundTripMismatch {
        row: usize,
        col: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid bunch:\n{0}")]
    InvalidBunch(Box<ValidationReport>),

    #[error("chain is infinite; give a window size")]
    Infinite,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            line: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }

    pub(crate) fn parse_msg(message: impl Into<String>) -> Self {
        Error::Parse {
            line: None,
            field: None,
            message: message.into(),
        }
    }

    pub(crate) fn at_line(self, line: Option<usize>) -> Self {
        match self {
            Error::Parse {
                line: None,
                field,
                message,
            } => Error::Parse {
                line,
                field,
                message,
            },
            other => other,
        }
    }
}
