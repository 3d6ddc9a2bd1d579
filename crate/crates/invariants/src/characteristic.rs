use serde::Serialize;

use doodle_cliques::{classes_of_complexity, CliqueClass, DegenerationMode, ModeStep, MultFilter};
use doodle_moves::{
    realize_pattern, resolve_last, DegenerationProcess, Quasidoodle, Realization, Step,
};

use crate::{Evaluator, InvariantError};

/// Positive minus negative resolution of the last step, recursively, down
/// to `f` on regular curves.
pub fn characteristic_number(
    f: &dyn Evaluator,
    q: &Quasidoodle,
    dp: &DegenerationProcess,
) -> Result<i64, InvariantError> {
    if dp.steps.is_empty() {
        return f.evaluate(&q.to_diagram()?);
    }
    let r = resolve_last(q, dp)?;
    Ok(characteristic_number(f, &r.plus, &r.rest)? - characteristic_number(f, &r.minus, &r.rest)?)
}

/// Translates a marking order on clique slots into branch steps of a
/// realization of that clique.
pub fn mode_process(mode: &DegenerationMode, real: &Realization) -> DegenerationProcess {
    let tags = &real.slot_tags;
    let mut first = std::collections::HashMap::new();
    let steps = mode
        .steps
        .iter()
        .map(|s| match s {
            ModeStep::Form { group, points } => {
                let step = Step::form_triple([tags[points[0]], tags[points[1]], tags[points[2]]]);
                if let Step::FormTriple { vertex, .. } = step {
                    first.insert(*group, vertex);
                }
                step
            }
            ModeStep::Join { group, point } => Step::JoinBranch {
                vertex: first[group],
                branch: tags[*point],
            },
        })
        .collect();
    DegenerationProcess::new(steps)
}

fn realize(class: &CliqueClass, seed: u64, tries: usize) -> Result<Realization, InvariantError> {
    let pattern: Vec<usize> = class.slots().iter().map(|s| s.group).collect();
    Ok(realize_pattern(&pattern, seed, tries)?)
}

/// Which quasidoodles to test: realizations of each class for each seed.
#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub classes: Vec<CliqueClass>,
    pub seeds: Vec<u64>,
    /// Drawing attempts per realization.
    pub tries: usize,
}

impl SampleSpec {
    /// Every configuration class of the given complexity (arity 3).
    pub fn configurations(complexity: usize, seeds: Vec<u64>) -> Self {
        SampleSpec {
            classes: classes_of_complexity(3, complexity, MultFilter::configurations()),
            seeds,
            tries: 4,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderRow {
    pub class: String,
    pub seed: u64,
    pub crossings: usize,
    pub mode: usize,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub evaluator: String,
    /// Upper bound being tested: characteristic numbers at complexity
    /// `order + 1` must vanish.
    pub order: usize,
    pub rows: Vec<OrderRow>,
    /// Modes times resolution sides, summed over all rows' quasidoodles.
    pub processes: u64,
    pub passed: bool,
}

/// Evaluates `f`'s characteristic number for every mode of every sample;
/// passes iff all vanish.
pub fn order_upper_test(
    f: &dyn Evaluator,
    order: usize,
    spec: &SampleSpec,
) -> Result<OrderReport, InvariantError> {
    let mut rows = Vec::new();
    let mut processes = 0;
    for class in &spec.classes {
        for &seed in &spec.seeds {
            let real = realize(class, seed, spec.tries)?;
            let q = &real.quasidoodle;
            processes += DegenerationProcess::full_count(q);
            for (mode, dp) in DegenerationProcess::all_modes(q).iter().enumerate() {
                rows.push(OrderRow {
                    class: class.to_string(),
                    seed,
                    crossings: q.map.n_vertices(),
                    mode,
                    value: characteristic_number(f, q, dp)?,
                });
            }
        }
    }
    let passed = rows.iter().all(|r| r.value == 0);
    Ok(OrderReport {
        evaluator: f.name(),
        order,
        rows,
        processes,
        passed,
    })
}

/// The characteristic number of `f` at `(class, mode)`, checked to agree
/// over realizations drawn with every seed (at least three).
pub fn top_symbol(
    f: &dyn Evaluator,
    class: &CliqueClass,
    mode: &DegenerationMode,
    seeds: &[u64],
) -> Result<i64, InvariantError> {
    assert!(
        seeds.len() >= 3,
        "top_symbol needs at least three realizations"
    );
    let mut values = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let real = realize(class, seed, 4)?;
        let dp = mode_process(mode, &real);
        values.push(characteristic_number(f, &real.quasidoodle, &dp)?);
    }
    if values.windows(2).all(|w| w[0] == w[1]) {
        Ok(values[0])
    } else {
        Err(InvariantError::SymbolInconsistent(values))
    }
}
