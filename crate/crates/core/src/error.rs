use alloc::string::String;

/// Every failure the algebra layer can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("monomial division is not exact")]
    DivisionNotExact,
    #[error("incompatible modules: {0}")]
    IncompatibleModule(String),
    #[error("entry ({row}, {col}) is not homogeneous of the required degree")]
    NotHomogeneous { row: usize, col: usize },
    #[error("column {column} is not in the image")]
    NotInImage { column: usize },
    #[error("resolution did not terminate within {max_length} steps")]
    LengthExceeded { max_length: usize },
    #[error("chain map does not induce zero; no null-homotopy exists")]
    NotNullHomotopic,
    #[error("algebra is not finite over the subring: {0}")]
    NotFiniteOverS(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("degree data is inconsistent: {0}")]
    DegreesInconsistent(String),
    #[error("no twist makes the resolution palindromic")]
    NoTwistExists,
    #[error("module is not Gorenstein: {0}")]
    NotGorenstein(String),
    #[error("odd codimension required, found {0}")]
    OddCodimRequired(usize),
    #[error("duality map t_{index} is not invertible")]
    TNotInvertible { index: usize },
    #[error("resolution shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("middle map is not (-1)^m-symmetric for sign {sign}")]
    MiddleMapNotSymmetric { sign: i32 },
    #[error("dual complex is not exact at position {position}")]
    DualNotExact { position: usize },
    #[error("averaged duality map is not invertible")]
    AveragedMapNotInvertible,
    #[error("lift failed: {0}")]
    LiftFailed(String),
    #[error("no commutative ring structure on the module: {0}")]
    NoRingStructure(String),
}

impl AlgebraError {
    /// Whether the failure reflects a broken exactness assumption in an internal lift.
    pub fn is_lift_failure(&self) -> bool {
        matches!(self, AlgebraError::NotInImage { .. } | AlgebraError::LiftFailed(_))
    }
}

pub type Result<T, E = AlgebraError> = core::result::Result<T, E>;
