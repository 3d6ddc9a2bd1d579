use serde::{Deserialize, Serialize};

use crate::{CliqueClass, CliqueError};

/// One marking step. Points are numbered by slot position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModeStep {
    /// First marking in a group: `k` points at once.
    Form { group: usize, points: Vec<usize> },
    /// One more point of a group that already has marked points.
    Join { group: usize, point: usize },
}

/// A complete marking order for a configuration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DegenerationMode {
    pub steps: Vec<ModeStep>,
}

fn require_configuration(class: &CliqueClass) -> Result<(), CliqueError> {
    if class.is_configuration() {
        Ok(())
    } else {
        Err(CliqueError::NotConfiguration(class.to_string()))
    }
}

fn k_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in k_subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Every valid marking order, by exhaustive search.
pub fn degeneration_modes(class: &CliqueClass) -> Result<Vec<DegenerationMode>, CliqueError> {
    require_configuration(class)?;
    let k = class.arity();
    let members: Vec<Vec<usize>> = (0..class.group_count())
        .map(|g| {
            (0..class.rho())
                .filter(|&i| class.slots()[i].group == g)
                .collect()
        })
        .collect();
    let mut marked = vec![false; class.rho()];
    let mut out = Vec::new();
    search(&members, k, &mut marked, &mut Vec::new(), &mut out);
    Ok(out)
}

fn search(
    members: &[Vec<usize>],
    k: usize,
    marked: &mut [bool],
    steps: &mut Vec<ModeStep>,
    out: &mut Vec<DegenerationMode>,
) {
    if marked.iter().all(|&m| m) {
        out.push(DegenerationMode {
            steps: steps.clone(),
        });
        return;
    }
    for (g, pts) in members.iter().enumerate() {
        let free: Vec<usize> = pts.iter().copied().filter(|&p| !marked[p]).collect();
        if free.is_empty() {
            continue;
        }
        if free.len() == pts.len() {
            for sub in k_subsets(&free, k) {
                sub.iter().for_each(|&p| marked[p] = true);
                steps.push(ModeStep::Form {
                    group: g,
                    points: sub.clone(),
                });
                search(members, k, marked, steps, out);
                steps.pop();
                sub.iter().for_each(|&p| marked[p] = false);
            }
        } else {
            for p in free {
                marked[p] = true;
                steps.push(ModeStep::Join { group: g, point: p });
                search(members, k, marked, steps, out);
                steps.pop();
                marked[p] = false;
            }
        }
    }
}

/// Number of marking steps: `Σ (aᵢ − k + 1)`.
pub fn step_count(class: &CliqueClass) -> usize {
    let k = class.arity();
    class.group_sizes().iter().map(|a| a + 1 - k).sum()
}

/// Closed form for the mode count: per group `C(a,k)·(a−k)!`, times the
/// interleavings of the groups' step sequences.
pub fn mode_count(class: &CliqueClass) -> Result<u64, CliqueError> {
    require_configuration(class)?;
    let k = class.arity() as u64;
    let mut total = 1u64;
    let mut steps_so_far = 0u64;
    for a in class.group_sizes() {
        let a = a as u64;
        total *= binom(a, k) * factorial(a - k);
        let s = a - k + 1;
        total *= binom(steps_so_far + s, s);
        steps_so_far += s;
    }
    Ok(total)
}

/// Modes times the two resolution sides of every step.
pub fn degeneration_process_count(class: &CliqueClass) -> Result<u64, CliqueError> {
    Ok(mode_count(class)? << step_count(class))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
