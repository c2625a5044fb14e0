use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization bound exceeded: cofactor {value} is larger than {bound}")]
    BoundExceeded { value: String, bound: String },
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("Pfister parameters must be nonzero")]
    ZeroParameter,
    #[error("fold {0} is out of range")]
    FoldOutOfRange(usize),
    #[error("forms live over different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("the form is isotropic")]
    IsotropicInput,
    #[error("operation not supported over {0}")]
    UnsupportedField(String),
    #[error("form dimension must be even, got {0}")]
    OddDimension(usize),
    #[error("dimension {0} is too small")]
    DimensionTooSmall(usize),
    #[error("the degree-2 part is anisotropic")]
    AnisotropicPart,
    #[error("no isotropic vector found within height bound {0}")]
    WitnessNotFound(u64),
    #[error("polynomial is not invariant under the family")]
    NotInvariant,
    #[error("invalid map: {0}")]
    InvalidMap(String),
}

impl Error {
    /// Variant name, used as a stable error tag in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::ZeroInput => "ZeroInput",
            Error::Syntax { .. } => "Syntax",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::MissingAssignment(_) => "MissingAssignment",
            Error::ZeroScalar => "ZeroScalar",
            Error::ZeroParameter => "ZeroParameter",
            Error::FoldOutOfRange(_) => "FoldOutOfRange",
            Error::FieldMismatch => "FieldMismatch",
            Error::InvalidField(_) => "InvalidField",
            Error::InvalidForm(_) => "InvalidForm",
            Error::IsotropicInput => "IsotropicInput",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::OddDimension(_) => "OddDimension",
            Error::DimensionTooSmall(_) => "DimensionTooSmall",
            Error::AnisotropicPart => "AnisotropicPart",
            Error::WitnessNotFound(_) => "WitnessNotFound",
            Error::NotInvariant => "NotInvariant",
            Error::InvalidMap(_) => "InvalidMap",
        }
    }

    /// Errors caused by a search or factorization limit rather than bad input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. } | Error::WitnessNotFound(_))
    }
}
