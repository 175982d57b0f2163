use thiserror::Error;

/// Vertex indices inside errors are 0-based; messages print them 1-based (`v1`, `v2`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arrows between v{} and v{} listed more than once", .0 + 1, .1 + 1)]
    DuplicateArrowPair(usize, usize),
    #[error("self-loop at v{}", .0 + 1)]
    SelfLoop(usize),
    #[error("arrow between frozen vertices v{} and v{}", .0 + 1, .1 + 1)]
    FrozenFrozenArrow(usize, usize),
    #[error("arrow multiplicity must be positive (v{} -> v{})", .0 + 1, .1 + 1)]
    BadMultiplicity(usize, usize),
    #[error("vertex v{} is frozen", .0 + 1)]
    FrozenVertex(usize),
    #[error("quiver already has frozen vertices")]
    AlreadyFramed,
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("quiver is not acyclic (directed cycle {})", fmt_vertices(.0))]
    NotAcyclic(Vec<usize>),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("c-vector of v{} is not sign-coherent", .0 + 1)]
    SignIncoherent(usize),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("cycle has no oriented 2-path through v{}", .0 + 1)]
    NoOrientedPathThroughV(usize),
    #[error("labeled digraph L_v{} contains the directed cycle {}", .0 + 1, fmt_vertices(.1))]
    LGraphCyclic(usize, Vec<usize>),
    #[error("matrix is not a quasi-Cartan companion: {0}")]
    NotCompanion(String),
    #[error("v{} and v{} are not adjacent in the cyclic order", .0 + 1, .1 + 1)]
    NotCyclicallyAdjacent(usize, usize),
    #[error("v{} and v{} are joined by arrows in the quiver", .0 + 1, .1 + 1)]
    QuiverAdjacent(usize, usize),
    #[error("cyclically ordered quivers have different underlying quivers")]
    DifferentQuivers,
    #[error("v{} is not proper in any wiggle-equivalent ordering", .vertex + 1)]
    NotProper {
        vertex: usize,
        /// Oriented 2-paths `(u, v, w)` that fail to turn right in the supplied ordering.
        violations: Vec<(usize, usize, usize)>,
    },
    #[error("companion update precondition violated: {0}")]
    OrderPreconditionViolated(String),
    #[error("order is not a valid ordering of the mutable vertices: {0}")]
    BadOrder(String),
    #[error("linear order is incompatible with arrow v{} -> v{}", .0 + 1, .1 + 1)]
    OrderIncompatible(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

fn fmt_vertices(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| format!("v{}", v + 1))
        .collect::<Vec<_>>()
        .join(" -> ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable tag used in JSON error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateArrowPair(..) => "DuplicateArrowPair",
            Error::SelfLoop(_) => "SelfLoop",
            Error::FrozenFrozenArrow(..) => "FrozenFrozenArrow",
            Error::BadMultiplicity(..) => "BadMultiplicity",
            Error::FrozenVertex(_) => "FrozenVertex",
            Error::AlreadyFramed => "AlreadyFramed",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::NotAcyclic(_) => "NotAcyclic",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::SignIncoherent(_) => "SignIncoherent",
            Error::InvalidCycle(_) => "InvalidCycle",
            Error::NoOrientedPathThroughV(_) => "NoOrientedPathThroughV",
            Error::LGraphCyclic(..) => "LGraphCyclic",
            Error::NotCompanion(_) => "NotCompanion",
            Error::NotCyclicallyAdjacent(..) => "NotCyclicallyAdjacent",
            Error::QuiverAdjacent(..) => "QuiverAdjacent",
            Error::DifferentQuivers => "DifferentQuivers",
            Error::NotProper { .. } => "NotProper",
            Error::OrderPreconditionViolated(_) => "OrderPreconditionViolated",
            Error::BadOrder(_) => "BadOrder",
            Error::OrderIncompatible(..) => "OrderIncompatible",
            Error::Dimension(_) => "Dimension",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::Parse(_) => "Parse",
        }
    }
}
