//! Audit trail of a coordinate-search execution.

use crate::optimizer::bounds::Winner;
use crate::scalar::Scalar;

/// One candidate comparison on one dimension. Bounds are recorded as they
/// were *before* the shrink, so the candidate formula and the halving law
/// can be replayed from the record alone.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionRecord<S> {
    pub run: usize,
    pub sweep: usize,
    /// Position within the run's dimension permutation.
    pub step: usize,
    pub dim: usize,
    pub lower: S,
    pub upper: S,
    pub x_value: S,
    pub y_value: S,
    pub x_fitness: f64,
    pub y_fitness: f64,
    pub winner: Winner,
}

/// End-of-run summary.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub run: usize,
    /// Dimension visiting order used by every sweep of this run.
    pub permutation: Vec<usize>,
    pub final_fitness: f64,
    /// Whether this run's final vector replaced the best-so-far.
    pub improved: bool,
}

/// Full record of an optimization: every decision, every run summary, and
/// the total number of fitness evaluations.
#[derive(Debug, Clone, Default)]
pub struct OptimizationTrace<S> {
    decisions: Vec<DecisionRecord<S>>,
    runs: Vec<RunRecord>,
    evaluations: u64,
}

impl<S: Scalar> OptimizationTrace<S> {
    pub fn new() -> Self {
        Self {
            decisions: Vec::new(),
            runs: Vec::new(),
            evaluations: 0,
        }
    }

    pub(crate) fn count_evaluation(&mut self) {
        self.evaluations += 1;
    }

    pub(crate) fn push_decision(&mut self, record: DecisionRecord<S>) {
        self.decisions.push(record);
    }

    pub(crate) fn push_run(&mut self, record: RunRecord) {
        self.runs.push(record);
    }

    pub fn decisions(&self) -> &[DecisionRecord<S>] {
        &self.decisions
    }

    pub fn runs(&self) -> &[RunRecord] {
        &self.runs
    }

    /// Total fitness evaluations requested by the search.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Best end-of-run fitness after each run, non-decreasing by
    /// construction.
    pub fn best_fitness_history(&self) -> Vec<f64> {
        let mut best = f64::NEG_INFINITY;
        self.runs
            .iter()
            .map(|r| {
                if r.improved {
                    best = r.final_fitness;
                }
                best
            })
            .collect()
    }
}
