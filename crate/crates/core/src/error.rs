use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("differential does not square to zero in degree {0}")]
    NotSquareZero(i64),
    #[error("map is not of degree -1: entry ({row}, {col})")]
    BadDifferentialDegree { row: usize, col: usize },
    #[error("elements belong to different algebras")]
    OwnerMismatch,
    #[error("degree mismatch on generators: {0}")]
    DegreeMismatch(String),
    #[error("name collision after tagging: `{0}`")]
    NameCollision(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("element is not homogeneous of degree {expected}")]
    WrongDegree { expected: i64 },
    #[error("element is not a Maurer-Cartan element")]
    NotMaurerCartan,
    #[error("input is not nilpotent of class <= {0}")]
    NotNilpotent(usize),
    #[error("algebra is not abelian")]
    NotAbelian,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("group action: {0}")]
    BadAction(String),
    #[error("differential is not equivariant")]
    NotEquivariant,
    #[error("invalid coalgebra datum: {0}")]
    InvalidDatum(String),
    #[error("missing cell image for `{0}`")]
    MissingCellImage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
