//! A scoped-thread [`Pool`].

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use axlab_core::pool::Pool;

/// Runs jobs on up to `workers` threads. Results come back in job order, so
/// output does not depend on scheduling.
#[derive(Debug, Clone, Copy)]
pub struct Threaded {
    workers: usize,
}

impl Threaded {
    pub fn new(workers: usize) -> Self {
        Threaded { workers: workers.max(1) }
    }

    /// One worker per available core.
    pub fn available() -> Self {
        Threaded::new(std::thread::available_parallelism().map_or(1, NonZeroUsize::get))
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

impl Pool for Threaded {
    fn run<R: Send>(&self, count: usize, job: &(dyn Fn(usize) -> R + Sync)) -> Vec<R> {
        if self.workers == 1 || count < 2 {
            return (0..count).map(job).collect();
        }
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..count).map(|_| None).collect());
        std::thread::scope(|scope| {
            for _ in 0..self.workers.min(count) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= count {
                        break;
                    }
                    let r = job(i);
                    slots.lock().unwrap()[i] = Some(r);
                });
            }
        });
        slots.into_inner().unwrap().into_iter().map(|r| r.expect("every job ran")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_keep_job_order() {
        let out = Threaded::new(4).run(100, &|i| i * i);
        assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
        assert!(Threaded::new(3).run(0, &|i| i).is_empty());
    }
}
