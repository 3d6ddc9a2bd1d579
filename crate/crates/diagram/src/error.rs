#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("code is not realizable by a plane curve: {0}")]
    UnrealizableCode(String),
    #[error("crossing `{0}` is visited more than twice")]
    DuplicateVisit(String),
    #[error("crossing `{0}` is missing a visit or its chirality")]
    MissingVisit(String),
    #[error("polyline is not generic: {0}")]
    NonGeneric(String),
    #[error("no crossing with id {0}")]
    UnknownCrossing(usize),
    #[error("no arc {0} for a basepoint")]
    BadBasepoint(usize),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invalid planar map: {0}")]
    Invalid(String),
}
