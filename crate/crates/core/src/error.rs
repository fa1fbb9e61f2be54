use thiserror::Error;

/// Domain errors. Each variant carries a stable machine-readable code
/// (see [`Error::code`]) used by the CLI.
#[derive(Error, Debug)]
pub enum Error {
    #[error("bilinear form has no negative eigenvalue: {0}")]
    NotIndefinite(String),
    #[error("line-quadric equation is identically zero")]
    Degenerate,
    #[error("line does not intersect the isotropic cone")]
    NoIntersection,
    #[error("declared relations contradict the Gram matrix: {0}")]
    InconsistentRelations(String),
    #[error("vector lies on the direction hyperplane of the transverse form")]
    OnDirectionHyperplane,
    #[error("word leaves the action domain (nonpositive transverse value at step {step})")]
    LeavesDomain { step: usize },
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("reference point lies on the face through the limit point")]
    OnFace,
    #[error("elementary-root iteration did not converge within {max_iter} rounds")]
    NoConvergence { max_iter: usize },
    #[error("index subset {0:?} is not facial")]
    NotFacial(Vec<usize>),
    #[error("fundamental chamber slice K is empty (finite type)")]
    EmptyK,
    #[error("system is not generic universal: {0}")]
    NotGenericUniversal(String),
    #[error("system is not weakly hyperbolic")]
    NotWeaklyHyperbolic,
    #[error("pair product {0} is greater than -1; pair admits no condensation")]
    NotDominantPair(f64),
    #[error("subsystem search exhausted: {0}")]
    SearchExhausted(String),
    #[error("system document is not valid JSON: {0}")]
    Parse(String),
    #[error("system document violates the schema at `{key}`: {message}")]
    Schema { key: String, message: String },
    #[error("simple-system axioms violated: {0}")]
    Axiom(String),
    #[error("rendering supports rank 3 and 4 only, got rank {0}")]
    UnsupportedRank(usize),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotIndefinite(_) => "not_indefinite",
            Error::Degenerate => "degenerate_quadric",
            Error::NoIntersection => "no_intersection",
            Error::InconsistentRelations(_) => "inconsistent_relations",
            Error::OnDirectionHyperplane => "on_direction_hyperplane",
            Error::LeavesDomain { .. } => "leaves_domain",
            Error::EmptyCloud => "empty_cloud",
            Error::OnFace => "on_face",
            Error::NoConvergence { .. } => "no_convergence",
            Error::NotFacial(_) => "not_facial",
            Error::EmptyK => "empty_k",
            Error::NotGenericUniversal(_) => "not_generic_universal",
            Error::NotWeaklyHyperbolic => "not_weakly_hyperbolic",
            Error::NotDominantPair(_) => "not_dominant_pair",
            Error::SearchExhausted(_) => "search_exhausted",
            Error::Parse(_) => "parse_error",
            Error::Schema { .. } => "schema_error",
            Error::Axiom(_) => "axiom_error",
            Error::UnsupportedRank(_) => "unsupported_rank",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
