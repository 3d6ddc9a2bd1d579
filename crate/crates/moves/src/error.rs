use doodle_diagram::DiagramError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MoveError {
    #[error("move site is gone: {0}")]
    SiteVanished(String),
    #[error("branch {branch} does not pass next to the vertex of {vertex}")]
    BranchNotAdjacent { vertex: u64, branch: u64 },
    #[error("both resolutions have the same value ({0}); refusing to pick a side")]
    AmbiguousSide(i64),
    #[error("degeneration process does not match the quasidoodle: {0}")]
    InconsistentProcess(String),
    #[error("no generic realization found: {0}")]
    NoRealization(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
