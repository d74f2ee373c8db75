//! A fixed team of worker threads with two loop shapes: statically
//! partitioned loops for the preparation stage and dynamically scheduled
//! loops for the search stage.
//!
//! Every worker of the team runs the same closure (a broadcast), so a loop
//! costs one wake-up of the pool rather than a round of thread spawns.

use std::ops::Range;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::{Error, Result};

/// Worker team owned by one discovery call.
pub struct Team {
    pool: Option<ThreadPool>,
    threads: usize,
}

impl Team {
    pub fn new(threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(Error::param("thread count must be at least 1"));
        }
        let pool = if threads > 1 {
            let pool = ThreadPoolBuilder::new()
                .num_threads(threads)
                .thread_name(|i| format!("phidd-worker-{i}"))
                .build()
                .map_err(|e| Error::param(format!("cannot start {threads} workers: {e}")))?;
            Some(pool)
        } else {
            None
        };
        Ok(Team { pool, threads })
    }

    /// A team that runs everything on the calling thread.
    pub fn single() -> Self {
        Team {
            pool: None,
            threads: 1,
        }
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    /// Runs `f(worker_index)` once on every worker; results in worker order.
    fn broadcast<R, F>(&self, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync,
    {
        match &self.pool {
            Some(pool) => pool.broadcast(|ctx| f(ctx.index())),
            None => vec![f(0)],
        }
    }

    /// Runs `f` over static contiguous ranges of `0..len`, one per worker,
    /// and returns the results in range order.
    pub fn static_ranges<R, F>(&self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(Range<usize>) -> R + Sync,
    {
        let ranges = partition(len, self.threads);
        if ranges.len() <= 1 {
            return ranges.into_iter().map(&f).collect();
        }
        self.broadcast(|w| ranges.get(w).cloned().map(&f))
            .into_iter()
            .flatten()
            .collect()
    }

    /// Calls `f(i, chunk)` for every `chunk_len`-sized chunk of `data`,
    /// with chunks statically distributed over the team.
    pub fn static_chunks_mut<T, F>(&self, data: &mut [T], chunk_len: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync,
    {
        let count = data.len() / chunk_len.max(1);
        let ranges = partition(count, self.threads);
        if ranges.len() <= 1 {
            for (i, chunk) in data.chunks_exact_mut(chunk_len).enumerate() {
                f(i, chunk);
            }
            return;
        }
        let mut parts = Vec::with_capacity(ranges.len());
        let mut rest = &mut data[..count * chunk_len];
        for range in ranges {
            let (head, tail) = rest.split_at_mut(range.len() * chunk_len);
            rest = tail;
            parts.push(Mutex::new(Some((range.start, head))));
        }
        self.broadcast(|w| {
            let part = parts.get(w).and_then(|p| p.lock().expect("part lock").take());
            if let Some((start, head)) = part {
                for (k, chunk) in head.chunks_exact_mut(chunk_len).enumerate() {
                    f(start + k, chunk);
                }
            }
        });
    }

    /// Dynamically scheduled loop over `0..len`.
    ///
    /// Workers grab `chunk` consecutive iterations at a time from a shared
    /// counter. Each worker owns a state created by `init`; states come back
    /// in worker order. Once `abort` is set, workers stop at their next
    /// chunk boundary.
    pub fn dynamic_for<S, I, F>(&self, len: usize, chunk: usize, abort: &AtomicBool, init: I, body: F) -> Vec<S>
    where
        S: Send,
        I: Fn() -> S + Sync,
        F: Fn(&mut S, usize) + Sync,
    {
        let chunk = chunk.max(1);
        let next = AtomicUsize::new(0);
        let worker = |_| {
            let mut state = init();
            loop {
                if abort.load(Ordering::Relaxed) {
                    break;
                }
                let start = next.fetch_add(chunk, Ordering::Relaxed);
                if start >= len {
                    break;
                }
                for i in start..(start + chunk).min(len) {
                    body(&mut state, i);
                }
            }
            state
        };
        if len <= chunk {
            return vec![worker(0)];
        }
        self.broadcast(worker)
    }
}

/// Splits `0..len` into at most `parts` contiguous ranges of near-equal size.
pub fn partition(len: usize, parts: usize) -> Vec<Range<usize>> {
    let parts = parts.max(1).min(len.max(1));
    let base = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for p in 0..parts {
        let size = base + usize::from(p < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}
