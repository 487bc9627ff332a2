use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pattern::{Item, Itemset};
use crate::stream::{Dictionary, StreamSource};

/// Random itemset streams: at every position each vocabulary item is
/// present independently with `item_probability`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub vocab_size: usize,
    pub item_probability: f64,
    pub length: usize,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { vocab_size: 40, item_probability: 0.03, length: 1000, seed: 0 }
    }
}

pub fn generate_synthetic(config: &GenConfig) -> Result<StreamSource> {
    let p = config.item_probability;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Config(format!("item probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let itemsets = (0..config.length)
        .map(|_| (0..config.vocab_size as u32).filter(|_| rng.random_bool(p)).map(Item).collect::<Itemset>())
        .collect();
    Ok(StreamSource { dictionary: Dictionary::numeric(config.vocab_size), itemsets })
}
