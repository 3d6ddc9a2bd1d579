//! Local moves on plane curves: kinks, tangencies, triangle passes; triple
//! and higher points with their degeneration processes; random traces and a
//! heuristic simplifier.

mod error;
mod local;
mod merkov;
mod moves;
mod quasi;
mod realize;
mod trace;

pub use error::MoveError;
pub use local::{join_branch_map, offset_branch, Offset};
pub use merkov::{merkov_candidates, merkov_curve, MerkovCandidates, MERKOV_POLYLINE};
pub use moves::{
    apply_move, find_move_sites, inverse_event, tangency_variants, CreationSite, MoveEvent,
    MoveSites,
};
pub use quasi::{
    collapse_triangle, join_branch, resolve_last, resolve_path, DegenerationProcess, Quasidoodle,
    Resolution, Step,
};
pub use realize::{realize_pattern, Realization};
pub use trace::{
    greedy_reduce, random_event, random_trace, random_trace_with, simplify, MoveTrace,
    SimplifyReport, TraceConfig,
};
