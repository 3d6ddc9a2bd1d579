use serde::{Deserialize, Serialize};

use doodle_homology::{GroupPresentation, Ring};

use crate::column::auxiliary_column;
use crate::{BlocksError, Context};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub order: usize,
    pub group: GroupPresentation,
    /// Number of cyclic summands.
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub context: Context,
    pub ring: Ring,
    pub degree: i64,
    pub rows: Vec<CensusRow>,
    pub assumptions: Vec<String>,
}

impl CensusReport {
    pub fn counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count).collect()
    }
}

fn assumptions(context: Context) -> Vec<String> {
    let mut a =
        vec!["vector-bundle factors of all blocks are orientable along the base loops".to_string()];
    a.push(match context {
        Context::Doodle => "no differentials between main-filtration columns in degree −1 (the lower columns vanish in degrees −1 and −2)",
        Context::Idoodle => "the main spectral sequence degenerates at E¹, so each order's group is its column's degree −1 group",
        Context::Fourfold => "columns do not interact in degree −2 (dimension count)",
    }.to_string());
    a
}

/// Per-order groups read off the census degree of every column up to
/// `max_order`.
pub fn census(context: Context, max_order: usize, ring: Ring) -> Result<CensusReport, BlocksError> {
    let degree = context.census_degree();
    let mut rows = Vec::new();
    for order in 1..=max_order {
        let column = auxiliary_column(order, context.arity(), context, ring)?;
        if column.unmodeled_degrees.contains(&degree) {
            return Err(BlocksError::Unsupported(format!(
                "degree {degree} of column {order} is not modeled"
            )));
        }
        let group = column.group_at(degree);
        let count = group.free_rank + group.torsion.len();
        rows.push(CensusRow {
            order,
            group,
            count,
        });
    }
    Ok(CensusReport {
        context,
        ring,
        degree,
        rows,
        assumptions: assumptions(context),
    })
}
