//! Scaling measurements for the disjoint-matchings algorithm.
//!
//! Input size is the number of preference entries, `2 n^2`, so a run that
//! is linear in its input shows a log-log slope of about 2 against `n`.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::engine::disjoint_stable_matchings_with_work;
use crate::error::GenError;
use crate::gen::{gen_cyclic, gen_random};
use crate::instance::Instance;

/// Proposals plus deletions in one full run never exceed `WORK_BOUND_C * n^2`.
///
/// Breakdown: the woman-proposing run makes at most `n^2` proposals; each
/// pair is deleted at most once (`n^2`); an extended run makes at most `n`
/// proposals beyond the pairs it deletes, and there are at most `n + 1`
/// extended runs. That totals at most `4 n^2 + n <= 5 n^2`.
pub const WORK_BOUND_C: u64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Workload {
    Cyclic,
    /// Random instances; size `n` uses seed `base + n`.
    Random {
        base_seed: u64,
    },
}

impl Workload {
    pub fn instance(&self, n: usize) -> Result<Instance, GenError> {
        match *self {
            Workload::Cyclic => gen_cyclic(n),
            Workload::Random { base_seed } => gen_random(n, base_seed.wrapping_add(n as u64)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Workload::Cyclic => "cyclic",
            Workload::Random { .. } => "random",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub input_size: usize,
    #[serde(serialize_with = "as_secs")]
    pub wall_time: Duration,
    pub proposal_count: u64,
    pub deletion_count: u64,
    pub chain_length: usize,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl BenchRecord {
    pub const CSV_HEADER: &'static str = "n,input_size,wall_time_s,proposal_count,deletion_count,chain_length";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.9},{},{},{}",
            self.n,
            self.input_size,
            self.wall_time.as_secs_f64(),
            self.proposal_count,
            self.deletion_count,
            self.chain_length
        )
    }

    /// Does the step count respect [`WORK_BOUND_C`]?
    pub fn within_work_bound(&self) -> bool {
        let n = self.n as u64;
        self.proposal_count + self.deletion_count <= WORK_BOUND_C * n * n
    }
}

/// Times one run on an already built instance.
pub fn measure(inst: &Instance) -> BenchRecord {
    let start = Instant::now();
    let (chain, work) = disjoint_stable_matchings_with_work(inst);
    let wall_time = start.elapsed();
    BenchRecord {
        n: inst.n(),
        input_size: inst.input_size(),
        wall_time,
        proposal_count: work.proposals,
        deletion_count: work.deletions,
        chain_length: chain.len(),
    }
}

/// One record per size, keeping the fastest of `repeats` runs. Instance
/// generation is not timed.
pub fn run_bench(workload: Workload, sizes: &[usize], repeats: usize) -> Result<Vec<BenchRecord>, GenError> {
    let repeats = repeats.max(1);
    sizes
        .iter()
        .map(|&n| {
            let inst = workload.instance(n)?;
            let best = (0..repeats)
                .map(|_| measure(&inst))
                .min_by_key(|r| r.wall_time)
                .expect("at least one repeat");
            Ok(best)
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`. `None` with fewer than two
/// distinct `x` or any non-positive coordinate.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Slope of wall time against `n` over a set of records.
pub fn time_slope(records: &[BenchRecord]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.n as f64, r.wall_time.as_secs_f64()))
        .collect();
    fit_loglog_slope(&pts)
}
