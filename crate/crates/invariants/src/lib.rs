//! Index-type invariants M(β) of plane curves, characteristic numbers of
//! invariants at multiple points, and empirical order tests.

mod characteristic;
mod moment;

pub use characteristic::{
    characteristic_number, mode_process, order_upper_test, top_symbol, OrderReport, OrderRow,
    SampleSpec,
};
pub use moment::{
    binom_falling, moment, moment_at_all_basepoints, strangeness, Evaluator, Memoized, Moment,
};

#[derive(Debug, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Diagram(#[from] doodle_diagram::DiagramError),
    #[error(transparent)]
    Move(#[from] doodle_moves::MoveError),
    #[error(transparent)]
    Clique(#[from] doodle_cliques::CliqueError),
    #[error("realizations disagree on the top symbol: {0:?}")]
    SymbolInconsistent(Vec<i64>),
    #[error("beta must be at least 1")]
    BadBeta,
}
