//! Command-line front end, threaded scheduling and report formats for
//! [`axlab_core`].

pub mod cli;
pub mod pool;
pub mod report;

pub use pool::Threaded;
