//! Library half of the command-line front end: target addressing, grid
//! sampling, mesh export, and the verification suites. The binary in
//! `main.rs` is a thin clap wrapper over these.

// validation uses `!(x > 0.0)` so NaN fails closed
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod export;
pub mod report;
pub mod rng;
pub mod schema;
pub mod suites;
pub mod target;

/// Thread count override honored by the grid sweeps (`ZMC_THREADS`).
pub const THREADS_ENV: &str = "ZMC_THREADS";

/// Build the rayon pool honoring [`THREADS_ENV`]; call once at startup.
pub fn init_threads() {
    if let Ok(n) = std::env::var(THREADS_ENV) {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}
