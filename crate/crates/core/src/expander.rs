//! Randomized expander synthesis on top of an existing port graph.
//!
//! Both synthesizers share one insertion process. Phase 1 adds edges between
//! vertices whose degree is below the maximum degree of the input, picking
//! endpoints with probability proportional to their deficit. Phase 2 adds
//! uniformly random matchings one edge at a time. The plain synthesizer stops
//! once `lambda2 >= 2 * beta`; the congestion-aware one maintains a cycle
//! basis and stops once the number of cycle groups reaches `ceil(2 / lambda2)`.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cycles::{static_decongestion, CycleState, PartitionRule, RemovalRule};
use crate::error::{Error, Result};
use crate::graph::{lambda2, MultiGraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpanderConfig {
    /// Target expansion; the plain synthesizer stops at `lambda2 >= 2 * beta`.
    pub beta: f64,
    /// Maximum number of random matching layers in Phase 2.
    pub tau_iterations: usize,
    /// Insertions between spanning-forest resets.
    pub tau_reset: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExpanderConfig {
    fn default() -> Self {
        ExpanderConfig {
            beta: 0.34,
            tau_iterations: 20,
            tau_reset: 25,
            trials: 100,
            seed: 0,
        }
    }
}

impl ExpanderConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::param(format!("beta must be positive, got {}", self.beta)));
        }
        if self.tau_iterations == 0 {
            return Err(Error::param("tau_iterations must be at least 1"));
        }
        if self.tau_reset == 0 {
            return Err(Error::param("tau_reset must be at least 1"));
        }
        if self.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        Ok(())
    }
}

/// Group count needed for balance at connectivity `lambda2`; `usize::MAX`
/// when the graph is (numerically) disconnected.
pub fn required_groups(lambda2: f64) -> usize {
    if lambda2 <= 1e-12 {
        usize::MAX
    } else {
        (2.0 / lambda2 - 1e-9).ceil().max(0.0) as usize
    }
}

/// One row of the per-insertion trace. Step 0 is the input graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub step: usize,
    pub lambda2: f64,
    pub t: usize,
    /// `ceil(2 / lambda2)`, or `None` while disconnected.
    pub required: Option<usize>,
    pub edges: usize,
}

/// Result of the congestion-aware synthesizer.
#[derive(Clone, Debug)]
pub struct BalancedExpander {
    pub graph: MultiGraph,
    pub state: CycleState,
    pub lambda2: f64,
    pub trace: Vec<TraceRow>,
}

fn lambda2_or_zero(g: &MultiGraph) -> Result<f64> {
    if g.num_vertices() < 2 {
        Ok(0.0)
    } else {
        lambda2(g)
    }
}

/// Runs Phase 1 and Phase 2, calling `after_edge` on every new edge until it
/// reports done. Yields the best `lambda2` seen when the layer budget runs
/// out.
fn insertion_process<R: Rng>(
    g: &mut MultiGraph,
    tau_iterations: usize,
    rng: &mut R,
    mut after_edge: impl FnMut(&MultiGraph, usize, &mut R) -> Result<(bool, f64)>,
) -> Result<std::result::Result<(), f64>> {
    let mut best = f64::NEG_INFINITY;
    let n = g.num_vertices();
    let max_deg = g.max_degree();

    // Phase 1: fill degree deficits.
    loop {
        let deficit: Vec<usize> = (0..n).map(|v| max_deg - g.degree(v)).collect();
        if deficit.iter().filter(|&&d| d > 0).count() < 2 {
            break;
        }
        let dist = WeightedIndex::new(&deficit).expect("positive total deficit");
        let (u, v) = loop {
            let u = dist.sample(rng);
            let v = dist.sample(rng);
            if u != v {
                break (u, v);
            }
        };
        let e = g.add_edge(u, v)?;
        let (done, l2) = after_edge(g, e, rng)?;
        best = best.max(l2);
        if done {
            return Ok(Ok(()));
        }
    }

    // Phase 2: random matchings, checked edge by edge.
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..tau_iterations {
        order.shuffle(rng);
        for pair in order.chunks_exact(2) {
            let e = g.add_edge(pair[0], pair[1])?;
            let (done, l2) = after_edge(g, e, rng)?;
            best = best.max(l2);
            if done {
                return Ok(Ok(()));
            }
        }
    }
    Ok(Err(best))
}

fn check_input(g0: &MultiGraph, cfg: &ExpanderConfig) -> Result<()> {
    cfg.validate()?;
    if g0.num_vertices() < 2 {
        return Err(Error::param(format!(
            "expander synthesis needs at least 2 vertices, got {}",
            g0.num_vertices()
        )));
    }
    Ok(())
}

/// Grows `g0` until `lambda2 >= 2 * beta`. Edge ids of `g0` are preserved.
pub fn conditioned_expander(
    g0: &MultiGraph,
    cfg: &ExpanderConfig,
    rng: &mut impl Rng,
) -> Result<MultiGraph> {
    check_input(g0, cfg)?;
    let threshold = 2.0 * cfg.beta;
    let start = lambda2(g0)?;
    if start >= threshold {
        return Ok(g0.clone());
    }
    let mut g = g0.clone();
    let outcome = insertion_process(&mut g, cfg.tau_iterations, rng, |g, _, _| {
        let l2 = lambda2(g)?;
        Ok((l2 >= threshold, l2))
    })?;
    match outcome {
        Ok(()) => Ok(g),
        Err(best) => Err(Error::ExpansionUnreachable {
            best_lambda2: best.max(start),
        }),
    }
}

/// Grows `g0` while maintaining a cycle basis and its partition; stops when
/// the group count `t` reaches `ceil(2 / lambda2)`. The starting basis comes
/// from static decongestion of `g0` with retirement rule `retire`; each
/// later cycle swaps out a forest edge chosen by `removal`.
pub fn congestion_aware_expander(
    g0: &MultiGraph,
    cfg: &ExpanderConfig,
    rule: PartitionRule,
    retire: RemovalRule,
    removal: RemovalRule,
    rng: &mut impl Rng,
) -> Result<BalancedExpander> {
    check_input(g0, cfg)?;
    let mut state = static_decongestion(g0, rule, retire, removal, rng);
    let start = lambda2(g0)?;
    let mut trace = vec![TraceRow {
        step: 0,
        lambda2: start,
        t: state.t(),
        required: Some(required_groups(start)).filter(|&r| r != usize::MAX),
        edges: g0.num_edges(),
    }];
    if state.t() >= required_groups(start) {
        return Ok(BalancedExpander {
            graph: g0.clone(),
            state,
            lambda2: start,
            trace,
        });
    }
    let mut g = g0.clone();
    let mut last = start;
    let mut steps = 0usize;
    let outcome = insertion_process(
        &mut g,
        cfg.tau_iterations,
        rng,
        |g, e, r| {
            steps += 1;
            state.update_cycle_basis(g, e, r);
            if steps.is_multiple_of(cfg.tau_reset) {
                state.reset_forest(g);
            }
            let l2 = lambda2(g)?;
            last = l2;
            let required = required_groups(l2);
            trace.push(TraceRow {
                step: steps,
                lambda2: l2,
                t: state.t(),
                required: Some(required).filter(|&r| r != usize::MAX),
                edges: g.num_edges(),
            });
            Ok((state.t() >= required, l2))
        },
    )?;
    match outcome {
        Ok(()) => Ok(BalancedExpander {
            graph: g,
            state,
            lambda2: last,
            trace,
        }),
        Err(best) => Err(Error::ExpansionUnreachable {
            best_lambda2: best.max(start),
        }),
    }
}

/// Union of `degree` random matchings on `n` vertices, resampled until it is
/// connected with `lambda2 >= threshold`. With odd `n` each matching leaves
/// one vertex out.
pub fn random_regular_expander(
    n: usize,
    degree: usize,
    threshold: f64,
    max_attempts: usize,
    rng: &mut impl Rng,
) -> Result<MultiGraph> {
    if n < 2 || degree == 0 {
        return Err(Error::param(format!(
            "regular expander needs n >= 2 and degree >= 1, got n={n}, degree={degree}"
        )));
    }
    let mut best = 0.0f64;
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..max_attempts.max(1) {
        let mut g = MultiGraph::new(n);
        for _ in 0..degree {
            order.shuffle(rng);
            for pair in order.chunks_exact(2) {
                g.add_edge(pair[0], pair[1])?;
            }
        }
        let l2 = lambda2_or_zero(&g)?;
        if l2 >= threshold && g.is_connected() {
            return Ok(g);
        }
        best = best.max(l2);
    }
    Err(Error::ExpansionUnreachable { best_lambda2: best })
}
