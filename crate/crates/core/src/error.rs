use thiserror::Error;

/// Errors raised by the group engine and the experiments built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    /// A bounded search ran out of nodes. The answer is unknown, not negative.
    #[error("search budget exceeded: {used} nodes explored, limit {limit}")]
    SearchBudgetExceeded { used: u64, limit: u64 },
    #[error("evaluation budget exceeded: {required} evaluations required, limit {limit}")]
    BudgetExceeded { required: u128, limit: u64 },
    #[error("decomposition already satisfies the strong-retract criterion")]
    CriterionHolds,
    #[error("no assignment for variable x{0}")]
    MissingAssignment(usize),
    #[error("no value bound to coefficient #{0}")]
    MissingCoefficient(u32),
    #[error("word contains coefficient letters")]
    HasCoefficients,
    #[error("parity code needs odd length, got {0}")]
    EvenLength(usize),
    #[error("no code for p = {p}, k = {k} found with t <= {t_max}")]
    NotFoundWithinBound { p: u32, k: usize, t_max: usize },
    #[error("subgroup C has exponent {found}, code is over F_{expected}")]
    ExponentMismatch { expected: u32, found: usize },
    #[error("amalgamated subgroup is not central")]
    NotCentral,
    #[error("amalgam map is not an isomorphism of subgroups")]
    NotIsomorphism,
    #[error("the {0}-part of Z(L) is trivial")]
    TrivialC(u32),
    #[error("code search failed: {0}")]
    ApproxSearchFailed(String),
    #[error("torsion subgroup is abelian")]
    AbelianTorsion,
    #[error("torsion subgroup is infinite (alpha = 0)")]
    Unbounded,
    #[error("order {order} exceeds the limit {limit}")]
    TooLarge { order: u128, limit: u128 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
