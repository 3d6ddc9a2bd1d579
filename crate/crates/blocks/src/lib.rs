//! Blocks of the resolved discriminant: their Borel–Moore homology through
//! the monodromy of the base circle, and whole main-filtration columns
//! assembled from a cellular model in which collision faces carry the
//! auxiliary differentials.

mod block;
mod cells;
mod census;
mod column;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use doodle_cliques::{classes_of_complexity, CliqueClass, MultFilter};

pub use block::{
    block, block_top_homology, equivariant_cycles, rotation_perm, BlockDescriptor, BlockHomology,
};
pub use cells::{CellKind, ColumnComplex, FacePart, Generator};
pub use census::{census, CensusReport, CensusRow};
pub use column::{
    auxiliary_column, boundary_checks, column_complex, cross_group_checks, d1_square_checks,
    BlockSummary, ColumnReport, CrossCheck, DegreeGroup, GeneratorPiece, GeneratorReport,
    GeneratorTerm,
};

#[derive(Debug, thiserror::Error)]
pub enum BlocksError {
    #[error(transparent)]
    Homology(#[from] doodle_homology::HomologyError),
    #[error(transparent)]
    Complex(#[from] doodle_complex::ComplexError),
    #[error("inconsistent block data: {0}")]
    Inconsistent(String),
    #[error("unsupported column: {0}")]
    Unsupported(String),
}

/// Which discriminant the blocks belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    /// Triple points and their degenerations.
    Doodle,
    /// Triple points of immersions: no coincident points are allowed.
    Idoodle,
    /// Quadruple points of immersions.
    Fourfold,
}

impl Context {
    pub fn arity(self) -> usize {
        match self {
            Context::Fourfold => 4,
            _ => 3,
        }
    }

    /// Whether cliques of this class occur in the context.
    pub fn admits(self, class: &CliqueClass) -> bool {
        class.arity() == self.arity() && (self == Context::Doodle || class.is_configuration())
    }

    /// All block classes of main-filtration index `p`.
    pub fn classes(self, p: usize) -> Vec<CliqueClass> {
        let filter = match self {
            Context::Doodle => MultFilter::all(),
            _ => MultFilter::configurations(),
        };
        classes_of_complexity(self.arity(), p, filter)
    }

    /// The relative degree whose groups the census reads: invariants of
    /// curves for the triple-point contexts, first cohomology for quadruple
    /// points.
    pub fn census_degree(self) -> i64 {
        match self {
            Context::Fourfold => -2,
            _ => -1,
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Context::Doodle => "doodle",
            Context::Idoodle => "idoodle",
            Context::Fourfold => "fourfold",
        })
    }
}

impl FromStr for Context {
    type Err = BlocksError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "doodle" | "doodle-invariants" => Ok(Context::Doodle),
            "idoodle" | "i-doodle" | "idoodle-invariants" => Ok(Context::Idoodle),
            "fourfold" | "fourfold-h1" => Ok(Context::Fourfold),
            _ => Err(BlocksError::Unsupported(format!(
                "unknown context `{s}` (doodle, idoodle, fourfold)"
            ))),
        }
    }
}
