//! Fixtures shared by the benchmarks: seeded synthetic streams and miners
//! warmed up on them.

use epistream::stream::{generate_synthetic, GenConfig};
use epistream::{Itemset, MinerState};

/// A stream of `window_size + slides` itemsets over 40 items with item
/// probability 0.03.
pub fn synthetic_stream(window_size: usize, slides: usize, seed: u64) -> Vec<Itemset> {
    let config = GenConfig { vocab_size: 40, item_probability: 0.03, length: window_size + slides, seed };
    generate_synthetic(&config).expect("valid probability").itemsets
}

/// A miner holding the first `window_size` itemsets of `stream`.
pub fn warmed_up(stream: &[Itemset], window_size: usize, sigma: usize) -> MinerState {
    let mut state = MinerState::new(window_size, sigma);
    for itemset in &stream[..window_size] {
        state.warmup_append(itemset.clone());
    }
    state
}
