//! Parallel drivers. Work is split across a rayon pool whose size comes
//! from `QSD_THREADS` (default: all cores); results are collected in input
//! order, so output does not depend on the thread count.

use rayon::prelude::*;
use shiryaev_qsd::simulate::{simulate_path, EmpiricalQsd, PathOutcome, SimConfig};
use shiryaev_qsd::Result;

pub fn thread_count() -> usize {
    std::env::var("QSD_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn pool() -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .expect("thread pool")
}

/// Maps `f` over `items` in parallel, keeping order.
pub fn par_map<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    pool().install(|| items.par_iter().map(f).collect())
}

/// Runs every path of `cfg` in parallel and aggregates.
pub fn simulate_parallel(cfg: &SimConfig) -> Result<EmpiricalQsd> {
    cfg.validate()?;
    let outcomes: Vec<PathOutcome> = pool().install(|| {
        (0..cfg.paths as u64)
            .into_par_iter()
            .map(|i| simulate_path(cfg, i))
            .collect()
    });
    EmpiricalQsd::from_outcomes(cfg, &outcomes)
}
