//! Shared inputs for the benchmarks.

use lucas_index::LucasParams;

/// The three sequences with published comparison tables.
pub fn reference_sequences() -> Vec<LucasParams> {
    [(1, 1), (4, -1), (10, 2)]
        .into_iter()
        .map(|(a1, a2)| LucasParams::new(a1, a2).expect("valid parameters"))
        .collect()
}
