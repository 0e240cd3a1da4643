use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("invalid cochain: {0}")]
    InvalidCochain(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("instance too large: {what} ({size} exceeds bound {bound})")]
    TooLarge {
        what: &'static str,
        size: u128,
        bound: u128,
    },
    #[error("coboundary solve requested for a degree-0 cochain")]
    DegreeZero,
    #[error("cochain is not a cocycle: {0}")]
    NotCocycle(String),
    #[error("module data invariant broken: {0}")]
    InvariantBroken(String),
    #[error("module data belong to different categories")]
    CategoryMismatch,
    #[error("g-action depends on the chosen lift: {0}")]
    LiftDependence(String),
    #[error("consistency failure ({clause}): {detail}")]
    ConsistencyFailure { clause: &'static str, detail: String },
    #[error("obstructed 1-cocycle: restriction of the associator is nontrivial")]
    Obstructed,
    #[error("extension data live over different contexts")]
    ContextMismatch,
    #[error("Tambara-Yamagami category is group-theoretical (Lagrangian subgroup {0:?})")]
    GroupTheoreticalCase(Vec<usize>),
    #[error("invalid Tambara-Yamagami data: {0}")]
    InvalidTy(String),
    #[error("input error: {0}")]
    Input(String),
}
