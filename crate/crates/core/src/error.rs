use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("resonant Sylvester operator{}", order_suffix(.order))]
    ResonantSylvester { order: Option<usize> },
    #[error("not a covering: polynomial has degree 0 in eta")]
    NotACovering,
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("unsupported atlas: {0}")]
    UnsupportedAtlas(String),
    #[error("inconsistent surface description: {0}")]
    InconsistentSurface(String),
    #[error("{0} is not a pole")]
    NotAPole(String),
    #[error("invalid Higgs field: {0}")]
    InvalidHiggs(String),
    #[error("gauge transformation not invertible: {0}")]
    NonInvertibleGauge(String),
    #[error("residue rank {0} is not one")]
    ResidueRank(usize),
    #[error("non-generic Case2 (branch degenerates)")]
    NonGenericCase2,
    #[error("insufficient jet data: requested order {requested}, available {available}")]
    InsufficientJet { requested: i64, available: i64 },
    #[error("input is not in normal form: {0}")]
    NotNormalized(String),
    #[error("infinity intersection mismatch at pole {pole}: {detail}")]
    InfinityMismatch { pole: String, detail: String },
    #[error("RH assumption violated: {0}")]
    NonSimpleBranching(String),
    #[error("reducible spectral curve: {0}")]
    Reducible(String),
    #[error("spectral curve is singular: {0}")]
    SingularCurve(String),
    #[error("non-cyclic fixture: (1,2) entry vanishes identically")]
    NonCyclic,
    #[error("inconsistent divisor: {0}")]
    InconsistentDivisor(String),
    #[error("non-generic divisor: {0}")]
    NonGenericDivisor(String),
    #[error("invalid phase point: {0}")]
    InvalidPhasePoint(String),
    #[error("invalid flow parameters: {0}")]
    InvalidFlow(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

fn order_suffix(order: &Option<usize>) -> String {
    match order {
        Some(k) => format!(" at jet order {k}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
