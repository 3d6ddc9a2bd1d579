//! Cliques of points on the circle: A-series, clique classes up to
//! rotation and group renaming, degeneration modes, hypergraph tests.

mod class;
mod enumerate;
mod modes;

pub use class::{ASeries, CliqueClass, Slot};
pub use enumerate::{classes_of_complexity, enumerate_classes, MultFilter};
pub use modes::{
    degeneration_modes, degeneration_process_count, mode_count, step_count, DegenerationMode,
    ModeStep,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliqueError {
    #[error("empty clique")]
    Empty,
    #[error("multiplicity {0} not allowed")]
    InvalidMultiplicity(u8),
    #[error("group of size {size} is smaller than arity {arity}")]
    GroupTooSmall { size: usize, arity: usize },
    #[error("arity {0} unsupported (3 or 4)")]
    UnsupportedArity(usize),
    #[error("{0} is not a configuration")]
    NotConfiguration(String),
    #[error("cannot parse clique {0:?}")]
    Parse(String),
}

/// Whether the hyperedges on points `0..a` cover every point and form a
/// single connected component.
pub fn hypergraph_connected(a: usize, edges: &[Vec<usize>]) -> bool {
    if a == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..a).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut covered = vec![false; a];
    for e in edges {
        for &x in e {
            if x >= a {
                return false;
            }
            covered[x] = true;
        }
        for w in e.windows(2) {
            let (u, v) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[u] = v;
        }
    }
    if !covered.iter().all(|&c| c) {
        return false;
    }
    let root = find(&mut parent, 0);
    (0..a).all(|x| find(&mut parent, x) == root)
}
