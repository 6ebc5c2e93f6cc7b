//! Deterministic parallel reductions.
//!
//! Work is split into fixed-size chunks whose boundaries do not depend on the
//! number of workers. Each chunk is summed in index order and the chunk
//! results are merged in index order, so the result is bit-identical for any
//! thread count.

use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::factors::CompensatedSum;

const CHUNK: usize = 1 << 15;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "ZETAQUANT_THREADS";

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let n = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or(0);
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
    })
}

/// Compensated sum of `term(0) + ... + term(len - 1)` in fixed order.
///
/// The first failing index (lowest) wins when several terms fail.
pub fn fixed_order_sum<F>(len: usize, term: F) -> Result<Complex64>
where
    F: Fn(usize) -> Result<Complex64> + Sync,
{
    let chunks = len.div_ceil(CHUNK);
    let partial: Vec<Result<CompensatedSum>> = pool().install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = CompensatedSum::new();
                for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                    acc.add(term(i)?);
                }
                Ok(acc)
            })
            .collect()
    });
    let mut total = CompensatedSum::new();
    for p in partial {
        total.merge(&p?);
    }
    Ok(total.value())
}
