//! Fan-out of independent work items.

use alloc::vec::Vec;

/// Runs `count` independent jobs and returns their results in index order,
/// whatever order they were executed in.
pub trait Pool: Sync {
    fn run<R: Send>(&self, count: usize, job: &(dyn Fn(usize) -> R + Sync)) -> Vec<R>;
}

/// Runs jobs one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Pool for Sequential {
    fn run<R: Send>(&self, count: usize, job: &(dyn Fn(usize) -> R + Sync)) -> Vec<R> {
        (0..count).map(job).collect()
    }
}
