//! Benchmark fixtures.

use swapshop::instance::{generate_grid, generate_random_euclidean, WeightModel};
use swapshop::Instance;

/// Random-weight `side x side` grid.
pub fn grid(side: usize, seed: u64) -> Instance {
    generate_grid(side, side, WeightModel::Random { seed }).expect("side >= 1")
}

/// `n` uniform points in the unit square, squared distances.
pub fn points(n: usize, seed: u64) -> Instance {
    generate_random_euclidean(n, 2, seed)
        .and_then(|i| i.with_p(2))
        .expect("n >= 1")
}
