//! Randomized generation, mutation, brute-force oracles, and round-trip
//! fuzzing for the characterizer.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characterize::{classify, verify_realization};
use crate::error::{Error, Result};
use crate::family::{GraphFamily, Mode};
use crate::graph::{Edge, WeightedGraph};
use crate::iso::are_isomorphic;
use crate::metric::{all_pairs_distances, DistanceMatrix};
use crate::rational::Rational;

/// Vertex-count bound for the exhaustive all-simple-paths oracle.
pub const ORACLE_VERTEX_LIMIT: usize = 14;

/// Configuration for sampling weightings of a family graph: i.i.d. weights
/// drawn uniformly from the grid `{p/denominator_grid}` intersected with
/// `[weight_low, weight_high)`, deterministically per seed.
#[derive(Clone)]
pub struct SampleConfig {
    pub family: Arc<dyn GraphFamily>,
    pub weight_low: Rational,
    pub weight_high: Rational,
    pub denominator_grid: u64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(
        family: Arc<dyn GraphFamily>,
        weight_low: Rational,
        weight_high: Rational,
        denominator_grid: u64,
        seed: u64,
    ) -> Result<Self> {
        let cfg = SampleConfig {
            family,
            weight_low,
            weight_high,
            denominator_grid,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Weights drawn from thousandths in `[1,2)`: the regime in which every
    /// edge of a girth-5 family graph is guaranteed useful.
    pub fn unit_interval(family: Arc<dyn GraphFamily>, seed: u64) -> Self {
        SampleConfig {
            family,
            weight_low: Rational::one(),
            weight_high: Rational::from_integer(2),
            denominator_grid: 1000,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.weight_low.is_positive() || self.weight_low >= self.weight_high {
            return Err(Error::InvalidParameter(format!(
                "weight range [{}, {}) must satisfy 0 < low < high",
                self.weight_low, self.weight_high
            )));
        }
        if self.denominator_grid == 0 || self.denominator_grid > i64::MAX as u64 {
            return Err(Error::InvalidParameter(format!(
                "denominator grid {} out of range",
                self.denominator_grid
            )));
        }
        if self.grid_bounds()?.is_none() {
            return Err(Error::InvalidParameter(format!(
                "no grid point p/{} lies in [{}, {})",
                self.denominator_grid, self.weight_low, self.weight_high
            )));
        }
        Ok(())
    }

    /// Every alternative route in a girth-5 graph uses at least four edges,
    /// so weights below twice the minimum make every edge its endpoints'
    /// unique geodesic.
    pub fn guarantees_useful(&self) -> bool {
        self.weight_high <= &Rational::from_integer(2) * &self.weight_low
    }

    fn grid_bounds(&self) -> Result<Option<(i64, i64)>> {
        let grid = Rational::from_integer(self.denominator_grid as i64);
        let p_min = (&self.weight_low * &grid)
            .ceil_to_i64()
            .ok_or_else(|| Error::InvalidParameter("weight grid overflows".into()))?;
        let p_max = (&self.weight_high * &grid)
            .ceil_to_i64()
            .ok_or_else(|| Error::InvalidParameter("weight grid overflows".into()))?
            - 1;
        Ok((p_min <= p_max).then_some((p_min, p_max)))
    }
}

impl std::fmt::Debug for SampleConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SampleConfig({}, [{}, {}), grid {}, seed {})",
            self.family.id(),
            self.weight_low,
            self.weight_high,
            self.denominator_grid,
            self.seed
        )
    }
}

/// Samples the family graph with random grid weights. Equivalent to
/// [`sample_weights_for_trial`] with trial 0.
pub fn sample_weights(cfg: &SampleConfig) -> Result<WeightedGraph> {
    sample_weights_for_trial(cfg, 0)
}

/// Samples one trial's weighting. Each trial uses an independent RNG stream
/// derived from `(seed, trial)`, so trials can run in parallel while staying
/// bitwise reproducible.
pub fn sample_weights_for_trial(cfg: &SampleConfig, trial: u64) -> Result<WeightedGraph> {
    cfg.validate()?;
    let (p_min, p_max) = cfg.grid_bounds()?.expect("validated");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial);
    cfg.family
        .unit_graph()
        .reweighted(|_| Rational::new(rng.gen_range(p_min..=p_max), cfg.denominator_grid as i64))
}

/// Perturbs exactly one symmetric off-diagonal entry pair by a nonzero
/// rational delta (a quarter, half, or the whole of the entry's magnitude,
/// either sign), resampling deltas that would drive the entry to zero or
/// below. Symmetry is preserved. Panics when the matrix has dimension < 2.
pub fn mutate_matrix(d: &DistanceMatrix, seed: u64) -> DistanceMatrix {
    let m = d.dim();
    assert!(m >= 2, "mutation needs at least a 2x2 matrix");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = rng.gen_range(0..m);
    let j = loop {
        let j = rng.gen_range(0..m);
        if j != i {
            break j;
        }
    };
    let entry = d.entry(i, j).clone();
    let base = if entry.is_zero() {
        Rational::one()
    } else {
        entry.abs()
    };
    let factors = [Rational::new(1, 4), Rational::new(1, 2), Rational::one()];
    let mutated = loop {
        let factor = &factors[rng.gen_range(0..factors.len())];
        let magnitude = &base * factor;
        let delta = if rng.gen_range(0..2) == 0 {
            magnitude
        } else {
            -magnitude
        };
        let candidate = &entry + &delta;
        if candidate.is_positive() {
            break candidate;
        }
    };
    let mut entries = d.entries_cloned();
    entries[i][j] = mutated.clone();
    entries[j][i] = mutated;
    DistanceMatrix::new(d.labels().to_vec(), entries).expect("shape unchanged")
}

/// Ground truth for usefulness: enumerates every simple path of every pair
/// and checks whether some pair's minimum-weight paths all contain `e`.
/// Exhaustive, so limited to [`ORACLE_VERTEX_LIMIT`] vertices.
pub fn oracle_useful_edge(g: &WeightedGraph, e: Edge) -> Result<bool> {
    let n = g.vertex_count();
    if n > ORACLE_VERTEX_LIMIT {
        return Err(Error::SizeLimit {
            limit: ORACLE_VERTEX_LIMIT,
            found: n,
        });
    }
    if g.weight(e).is_none() {
        return Err(Error::InvalidParameter(format!(
            "{} is not an edge of the graph",
            g.describe_edge(e)
        )));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut tally = PathTally::default();
            let mut visited = vec![false; n];
            visited[i] = true;
            walk(
                g,
                i,
                j,
                e,
                Rational::zero(),
                false,
                &mut visited,
                &mut tally,
            );
            if tally.minimum.is_some() && tally.min_count == tally.min_count_through {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Default)]
struct PathTally {
    minimum: Option<Rational>,
    min_count: u64,
    min_count_through: u64,
}

#[allow(clippy::too_many_arguments)]
fn walk(
    g: &WeightedGraph,
    current: usize,
    target: usize,
    e: Edge,
    weight: Rational,
    through: bool,
    visited: &mut Vec<bool>,
    tally: &mut PathTally,
) {
    if current == target {
        match &tally.minimum {
            Some(min) if weight > *min => {}
            Some(min) if weight == *min => {
                tally.min_count += 1;
                tally.min_count_through += u64::from(through);
            }
            _ => {
                tally.minimum = Some(weight);
                tally.min_count = 1;
                tally.min_count_through = u64::from(through);
            }
        }
        return;
    }
    for (v, w) in g.neighbors(current) {
        if visited[*v] {
            continue;
        }
        visited[*v] = true;
        let step_through = through || Edge::new(current, *v) == e;
        walk(g, *v, target, e, &weight + w, step_through, visited, tally);
        visited[*v] = false;
    }
}

/// Floyd–Warshall with exact rationals; the cross-check oracle for the
/// Dijkstra-based matrix, equal to it entry for entry.
pub fn oracle_distance_floyd(g: &WeightedGraph) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    let mut dist: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for i in 0..n {
        dist[i][i] = Some(Rational::zero());
    }
    for (e, w) in g.edges() {
        dist[e.a()][e.b()] = Some(w.clone());
        dist[e.b()][e.a()] = Some(w.clone());
    }
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = dist[i][k].clone() else {
                continue;
            };
            for j in 0..n {
                let Some(dkj) = &dist[k][j] else { continue };
                let candidate = &dik + dkj;
                if dist[i][j].as_ref().is_none_or(|d| candidate < *d) {
                    dist[i][j] = Some(candidate);
                }
            }
        }
    }
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            match &dist[i][j] {
                Some(d) => row.push(d.clone()),
                None => {
                    return Err(Error::Disconnected {
                        a: g.label(i).to_string(),
                        b: g.label(j).to_string(),
                    })
                }
            }
        }
        entries.push(row);
    }
    DistanceMatrix::new(g.labels().to_vec(), entries)
}

/// Stage of the round trip at which a fuzz trial failed.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FuzzStage {
    Classify,
    Realize,
    Verify,
    WeightIsomorphism,
}

/// One failed trial, replayable via
/// [`sample_weights_for_trial`]`(cfg, trial)` with the recorded seed.
#[derive(Clone, Debug, Serialize)]
pub struct FuzzFailure {
    pub trial: u64,
    pub seed: u64,
    pub stage: FuzzStage,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<DistanceMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub family: String,
    pub seed: u64,
    pub trials: u64,
    pub passes: u64,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.passes == self.trials
    }
}

/// Per trial: sample a weighting, take its distance matrix, classify it
/// (expected realizable), rebuild the graph, verify the realization, and
/// check weight-preserving isomorphism with the sample. Failures are data,
/// not errors; trials run in parallel and the report is independent of
/// scheduling.
pub fn fuzz_roundtrip(cfg: &SampleConfig, trials: u64) -> Result<FuzzReport> {
    cfg.validate()?;
    // Out-of-scope families are rejected before any trial runs.
    cfg.family.scope_check(Mode::Strict)?;

    let failures: Vec<FuzzFailure> = (0..trials)
        .into_par_iter()
        .filter_map(|trial| run_trial(cfg, trial))
        .collect();
    Ok(FuzzReport {
        family: cfg.family.id(),
        seed: cfg.seed,
        trials,
        passes: trials - failures.len() as u64,
        failures,
    })
}

fn run_trial(cfg: &SampleConfig, trial: u64) -> Option<FuzzFailure> {
    let fail = |stage, witness, matrix| {
        Some(FuzzFailure {
            trial,
            seed: cfg.seed,
            stage,
            witness,
            matrix,
        })
    };
    let sample = match sample_weights_for_trial(cfg, trial) {
        Ok(g) => g,
        Err(err) => return fail(FuzzStage::Classify, err.to_string(), None),
    };
    let d = match all_pairs_distances(&sample) {
        Ok(d) => d,
        Err(err) => return fail(FuzzStage::Classify, err.to_string(), None),
    };
    let verdict = match classify(&d, cfg.family.as_ref(), Mode::Strict) {
        Ok(v) => v,
        Err(err) => return fail(FuzzStage::Classify, err.to_string(), Some(d)),
    };
    if !verdict.realizable {
        let summary = verdict
            .conditions
            .iter()
            .filter(|c| !c.holds)
            .map(|c| {
                let first = c
                    .witnesses
                    .first()
                    .map(|w| w.to_string())
                    .unwrap_or_default();
                format!("condition {} fails: {first}", c.id)
            })
            .collect::<Vec<_>>()
            .join("; ");
        return fail(FuzzStage::Classify, summary, Some(d));
    }
    let realized = match verdict.realization {
        Some(g) => g,
        None => {
            return fail(
                FuzzStage::Realize,
                "realizable verdict without realization".into(),
                Some(d),
            )
        }
    };
    let report = verify_realization(&realized, &d, cfg.family.as_ref());
    if !report.all_true() {
        return fail(
            FuzzStage::Verify,
            report.counterexamples.join("; "),
            Some(d),
        );
    }
    if are_isomorphic(&realized, &sample, true).is_none() {
        return fail(
            FuzzStage::WeightIsomorphism,
            "realization is not weight-preserving isomorphic to the sample".into(),
            Some(d),
        );
    }
    None
}
