use std::collections::BTreeSet;

use crate::{ASeries, CliqueClass, Slot};

/// Restricts which multiplicity patterns are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MultFilter {
    /// Exact number of double points; `None` allows any.
    pub doubles: Option<usize>,
    /// Whether points of multiplicity 3 are allowed.
    pub triples: bool,
}

impl MultFilter {
    /// Every clique with multiplicities ≤ 3.
    pub fn all() -> Self {
        MultFilter {
            doubles: None,
            triples: true,
        }
    }

    /// Configurations only.
    pub fn configurations() -> Self {
        Self::doubles(0)
    }

    /// Exactly `d` double points and no triple ones.
    pub fn doubles(d: usize) -> Self {
        MultFilter {
            doubles: Some(d),
            triples: false,
        }
    }

    fn admits(&self, c: &CliqueClass) -> bool {
        (self.triples || c.count_mult(3) == 0)
            && self.doubles.map_or(true, |d| c.count_mult(2) == d)
    }
}

/// Ordered ways to write `a` as a sum of parts in `1..=max`.
fn compositions(a: usize, max: u8) -> Vec<Vec<u8>> {
    if a == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for m in 1..=max.min(a as u8) {
        for mut rest in compositions(a - m as usize, max) {
            rest.insert(0, m);
            out.push(rest);
        }
    }
    out
}

/// All classes of exactly this complexity, sorted.
pub fn classes_of_complexity(
    arity: usize,
    complexity: usize,
    filter: MultFilter,
) -> Vec<CliqueClass> {
    let max_mult = if arity == 4 { 1 } else { 3 };
    let mut found = BTreeSet::new();
    for series in ASeries::of_complexity(complexity, arity) {
        // pick a slot decomposition for every group, then interleave
        let per_group: Vec<Vec<Vec<u8>>> = series
            .parts()
            .iter()
            .map(|&a| compositions(a, max_mult))
            .collect();
        let mut choice = vec![0usize; per_group.len()];
        loop {
            let groups: Vec<&Vec<u8>> = choice
                .iter()
                .enumerate()
                .map(|(g, &i)| &per_group[g][i])
                .collect();
            interleave(&groups, arity, &filter, &mut found);
            // odometer
            let mut g = 0;
            loop {
                if g == choice.len() {
                    break;
                }
                choice[g] += 1;
                if choice[g] < per_group[g].len() {
                    break;
                }
                choice[g] = 0;
                g += 1;
            }
            if g == choice.len() {
                break;
            }
        }
    }
    found.into_iter().collect()
}

fn interleave(
    groups: &[&Vec<u8>],
    arity: usize,
    filter: &MultFilter,
    out: &mut BTreeSet<CliqueClass>,
) {
    let mut used = vec![0usize; groups.len()];
    let total: usize = groups.iter().map(|g| g.len()).sum();
    let mut seq = Vec::with_capacity(total);
    fn go(
        groups: &[&Vec<u8>],
        used: &mut [usize],
        seq: &mut Vec<Slot>,
        total: usize,
        arity: usize,
        filter: &MultFilter,
        out: &mut BTreeSet<CliqueClass>,
    ) {
        if seq.len() == total {
            let c = CliqueClass::new(seq.clone(), arity).expect("parts are valid");
            if filter.admits(&c) {
                out.insert(c);
            }
            return;
        }
        for g in 0..groups.len() {
            // rotations are identified: start with group 0
            if seq.is_empty() && g != 0 {
                continue;
            }
            if used[g] < groups[g].len() {
                seq.push(Slot::new(g, groups[g][used[g]]));
                used[g] += 1;
                go(groups, used, seq, total, arity, filter, out);
                used[g] -= 1;
                seq.pop();
            }
        }
    }
    go(groups, &mut used, &mut seq, total, arity, filter, out);
}

/// All classes with complexity in `1..=max_complexity`, ordered by
/// complexity and then canonically.
pub fn enumerate_classes(
    arity: usize,
    max_complexity: usize,
    filter: MultFilter,
) -> Vec<CliqueClass> {
    (1..=max_complexity)
        .flat_map(|c| classes_of_complexity(arity, c, filter))
        .collect()
}
