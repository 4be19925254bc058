//! The coordinate-search engine and its scalar variants.
//!
//! Each run draws a fresh random permutation of the dimensions, then sweeps
//! it `maxiter` times. A step on dimension `i` compares the two half-interval
//! centers (evaluating the full threshold vector with only coordinate `i`
//! changed), keeps the winner in both working vectors, and halves that
//! dimension's interval. Ties go to Y. After the sweeps the run's final
//! vector is evaluated once more and kept if it beats the best run so far.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::optimizer::bounds::Winner;
use crate::optimizer::config::{compute_rmax, CsConfig, InitialBounds};
use crate::optimizer::trace::{DecisionRecord, OptimizationTrace, RunRecord};
use crate::scalar::Scalar;
use crate::seeds::derive_seed;
use crate::threshold::{GlobalThreshold, ThresholdVector};

/// Result of a coordinate search: the best threshold vector found, its
/// fitness, and the full audit trace.
#[derive(Debug, Clone)]
pub struct CsOutcome<S> {
    pub thresholds: ThresholdVector<S>,
    pub fitness: f64,
    pub trace: OptimizationTrace<S>,
}

fn evaluate<S, F>(fitness: &mut F, v: &ThresholdVector<S>, trace: &mut OptimizationTrace<S>) -> Result<f64>
where
    S: Scalar,
    F: FnMut(&ThresholdVector<S>) -> Result<f64>,
{
    trace.count_evaluation();
    let value = fitness(v)?;
    if !value.is_finite() {
        return Err(Error::NonFiniteFitness { value });
    }
    Ok(value)
}

/// Runs the full per-feature coordinate search. `fitness` must map a
/// threshold vector to a finite score deterministically; higher is better.
///
/// The number of runs is `R_max = max(1, floor(max_nfe / (2*D*maxiter)))`
/// and the search performs exactly `2*D*maxiter` evaluations per run plus
/// one end-of-run evaluation, visible in the trace.
pub fn optimize_feature_thresholds<S, F>(
    n_samples: usize,
    n_dims: usize,
    config: &CsConfig<S>,
    mut fitness: F,
) -> Result<CsOutcome<S>>
where
    S: Scalar,
    F: FnMut(&ThresholdVector<S>) -> Result<f64>,
{
    config.validate()?;
    if n_dims == 0 {
        return Err(Error::Empty("search space has no dimensions"));
    }
    let r_max = compute_rmax(n_samples, n_dims, config.maxiter, config.max_nfe);
    let initial = config.initial_bounds.materialize(n_dims)?;

    let mut trace = OptimizationTrace::new();
    let mut bounds = initial.clone();
    let mut best: Option<(ThresholdVector<S>, f64)> = None;

    for run in 0..r_max {
        if config.reset_bounds_per_run {
            bounds = initial.clone();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, run as u64));
        let mut perm: Vec<usize> = (0..n_dims).collect();
        perm.shuffle(&mut rng);

        // Both working vectors start at the interval centers and are kept
        // identical except for the active coordinate of the current step.
        let centers: Vec<S> = (0..n_dims).map(|d| bounds.center(d)).collect();
        let mut x = ThresholdVector::new(centers)?;
        let mut y = x.clone();

        for sweep in 0..config.maxiter {
            for (step, &dim) in perm.iter().enumerate() {
                let (lower, upper) = bounds.interval(dim);
                let (cx, cy) = bounds.candidates(dim)?;
                x.set(dim, cx)?;
                y.set(dim, cy)?;
                let fx = evaluate(&mut fitness, &x, &mut trace)?;
                let fy = evaluate(&mut fitness, &y, &mut trace)?;
                let winner = if fx > fy { Winner::X } else { Winner::Y };
                bounds.shrink(dim, winner)?;
                match winner {
                    Winner::X => y.set(dim, cx)?,
                    Winner::Y => x.set(dim, cy)?,
                }
                trace.push_decision(DecisionRecord {
                    run,
                    sweep,
                    step,
                    dim,
                    lower,
                    upper,
                    x_value: cx,
                    y_value: cy,
                    x_fitness: fx,
                    y_fitness: fy,
                    winner,
                });
            }
        }

        // x and y are identical here; either is the run's final vector.
        let final_vector = x.clone();
        let final_fitness = evaluate(&mut fitness, &final_vector, &mut trace)?;
        let improved = best
            .as_ref()
            .is_none_or(|(_, best_fitness)| final_fitness > *best_fitness);
        if improved {
            best = Some((final_vector, final_fitness));
        }
        trace.push_run(RunRecord {
            run,
            permutation: perm,
            final_fitness,
            improved,
        });
    }

    let (thresholds, fitness) = best.expect("r_max >= 1 guarantees at least one run");
    Ok(CsOutcome {
        thresholds,
        fitness,
        trace,
    })
}

/// Outcome of a scalar search: a single cut-point shared by all features.
#[derive(Debug, Clone)]
pub struct ScalarOutcome<S> {
    pub threshold: GlobalThreshold<S>,
    pub fitness: f64,
    pub trace: OptimizationTrace<S>,
}

/// Coordinate search over a single scalar threshold applied to every
/// feature. All budget bookkeeping uses a one-dimensional search space.
pub fn optimize_global_threshold<S, F>(
    n_samples: usize,
    config: &CsConfig<S>,
    mut fitness: F,
) -> Result<ScalarOutcome<S>>
where
    S: Scalar,
    F: FnMut(S) -> Result<f64>,
{
    let outcome = optimize_feature_thresholds(n_samples, 1, config, |v: &ThresholdVector<S>| {
        fitness(v.get(0))
    })?;
    Ok(ScalarOutcome {
        threshold: GlobalThreshold::new(
            outcome.thresholds.get(0),
            crate::threshold::ThresholdMethod::CsGlobal,
        )?,
        fitness: outcome.fitness,
        trace: outcome.trace,
    })
}

/// Result of refining a scalar cut-point.
#[derive(Debug, Clone)]
pub struct RefineOutcome<S> {
    pub threshold: GlobalThreshold<S>,
    pub start_fitness: f64,
    pub fitness: f64,
    pub trace: OptimizationTrace<S>,
}

/// Refines a scalar cut-point with a one-dimensional coordinate search over
/// a window centered at the start, clamped to the configured global bounds.
/// Returns the best of *all* evaluated points including the start, so the
/// result never scores below the starting threshold. Ties keep the start.
pub fn refine_scalar<S, F>(
    start: &GlobalThreshold<S>,
    window_half_width: S,
    n_samples: usize,
    config: &CsConfig<S>,
    mut fitness: F,
) -> Result<RefineOutcome<S>>
where
    S: Scalar,
    F: FnMut(S) -> Result<f64>,
{
    config.validate()?;
    if window_half_width < S::zero() {
        return Err(Error::InvalidConfig(
            "refinement window half-width must be non-negative".into(),
        ));
    }
    let start_fitness = fitness(start.value())?;
    if !start_fitness.is_finite() {
        return Err(Error::NonFiniteFitness {
            value: start_fitness,
        });
    }
    let method = start.method().refined();

    // Clamp the window to the global search interval.
    let (global_lo, global_hi) = match &config.initial_bounds {
        InitialBounds::Uniform(lo, hi) => (*lo, *hi),
        InitialBounds::PerDimension(pairs) => pairs
            .first()
            .copied()
            .ok_or(Error::Empty("refinement bounds"))?,
    };
    let lo = (start.value() - window_half_width).max(global_lo);
    let hi = (start.value() + window_half_width).min(global_hi);
    if !(lo < hi) {
        // Empty search window: nothing to explore.
        return Ok(RefineOutcome {
            threshold: GlobalThreshold::new(start.value(), method)?,
            start_fitness,
            fitness: start_fitness,
            trace: OptimizationTrace::new(),
        });
    }

    let window_config = CsConfig {
        initial_bounds: InitialBounds::Uniform(lo, hi),
        ..config.clone()
    };
    // Track the best individual point seen, not just the best end-of-run
    // vector: the refinement contract is an argmax over every evaluation.
    let mut best_point: Option<(S, f64)> = None;
    let scan = optimize_global_threshold(n_samples, &window_config, |t: S| {
        let f = fitness(t)?;
        if best_point.is_none_or(|(_, bf)| f > bf) {
            best_point = Some((t, f));
        }
        Ok(f)
    })?;

    let (value, refined_fitness) = match best_point {
        Some((t, f)) if f > start_fitness => (t, f),
        _ => (start.value(), start_fitness),
    };
    Ok(RefineOutcome {
        threshold: GlobalThreshold::new(value, method)?,
        start_fitness,
        fitness: refined_fitness,
        trace: scan.trace,
    })
}
