//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use vecnet_core::search::{SearchParams, Strategy};
use vecnet_core::{FieldCtx, Mat};

/// A deterministic pseudo-random square matrix over `ctx`.
pub fn dense_matrix(ctx: &Arc<FieldCtx>, n: usize, seed: u64) -> Mat {
    let order = ctx.order() as u64;
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    let data = (0..n * n)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % order) as u32
        })
        .collect();
    Mat::from_vec(ctx, n, n, data).expect("shape")
}

/// Greedy search for the 3-cover of 2-subspaces of GF(2)^6.
pub fn greedy_51_params() -> SearchParams {
    SearchParams {
        n: 6,
        k: 2,
        alpha: 3,
        min_dim: 4,
        q: 2,
        strategy: Strategy::Greedy,
        budget: u64::MAX,
        seed: 0,
    }
}
