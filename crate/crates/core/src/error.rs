use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("empty lcm")]
    EmptyLcm,
    #[error("generators not distinct")]
    GeneratorsNotDistinct,
    #[error("non-minimal generators")]
    NonMinimalGenerators,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed monomial `{0}`")]
    MalformedMonomial(String),
    #[error("exponent vector has {got} entries, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("universe size {q} exceeds the limit of {limit}")]
    UniverseTooLarge { q: usize, limit: usize },
    #[error("closure cap exceeded ({cap} relations)")]
    ClosureCapExceeded { cap: usize },
    #[error("root not in base set")]
    RootNotInBaseSet,
    #[error("theorem hypothesis |B|≥2 violated by {0}")]
    TheoremHypothesis(String),
    #[error("generator count {count} exceeds the lattice cap of {cap}")]
    GeneratorCap { count: usize, cap: usize },
    #[error("power generator count {count} exceeds the cap of {cap}")]
    PowerCap { count: usize, cap: usize },
    #[error("slice at multidegree {multidegree} has {faces} faces, above the cap of {cap}")]
    FaceCap {
        multidegree: String,
        faces: usize,
        cap: usize,
    },
    #[error("ideal is not square-free")]
    NotSquareFree,
    #[error("ideal does not satisfy D: relation {0} fails")]
    RelationFails(String),
    #[error("invalid field characteristic {0}")]
    InvalidField(u64),
    #[error("{0}")]
    Precondition(String),
}

impl Error {
    /// True for the resource-cap family of errors.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::UniverseTooLarge { .. }
                | Error::ClosureCapExceeded { .. }
                | Error::GeneratorCap { .. }
                | Error::PowerCap { .. }
                | Error::FaceCap { .. }
        )
    }
}
