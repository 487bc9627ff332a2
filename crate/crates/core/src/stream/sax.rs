use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::pattern::{Item, Itemset};
use crate::stream::{Dictionary, StreamSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// z-normalize the raw series only.
    Series,
    /// z-normalize the raw series, then the PAA block means as well, so
    /// symbols are equiprobable whatever the within-block correlation.
    SeriesAndBlocks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaxConfig {
    pub alphabet_size: usize,
    /// Raw samples averaged into one symbol.
    pub paa_size: usize,
    pub normalization: Normalization,
}

impl Default for SaxConfig {
    fn default() -> Self {
        SaxConfig { alphabet_size: 14, paa_size: 24, normalization: Normalization::SeriesAndBlocks }
    }
}

/// Zero mean, unit variance. `None` when the series has (numerically)
/// zero variance.
pub fn z_normalize(series: &[f64]) -> Option<Vec<f64>> {
    if series.is_empty() {
        return None;
    }
    let n = series.len() as f64;
    let mean = series.iter().sum::<f64>() / n;
    let var = series.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    if sd.is_nan() || sd <= 1e-12 * mean.abs().max(1.0) {
        return None;
    }
    Some(series.iter().map(|x| (x - mean) / sd).collect())
}

/// Means of consecutive non-overlapping blocks of `block` samples; a
/// trailing partial block is dropped.
pub fn paa(series: &[f64], block: usize) -> Vec<f64> {
    assert!(block >= 1, "block size must be at least 1");
    series.chunks_exact(block).map(|c| c.iter().sum::<f64>() / block as f64).collect()
}

/// Standard normal quantiles at k / alphabet_size, k = 1 .. alphabet_size - 1.
pub fn breakpoints(alphabet_size: usize) -> Vec<f64> {
    let normal = Normal::standard();
    (1..alphabet_size).map(|k| normal.inverse_cdf(k as f64 / alphabet_size as f64)).collect()
}

/// Symbol of a normalized value: the number of breakpoints at or below it.
pub fn symbolize(value: f64, breakpoints: &[f64]) -> usize {
    breakpoints.partition_point(|&b| b <= value)
}

/// Discretize a numeric series into one singleton itemset per PAA block.
/// A zero-variance series maps every block to the median symbol.
pub fn sax_discretize(series: &[f64], config: &SaxConfig) -> Result<StreamSource> {
    if config.alphabet_size < 2 {
        return Err(Error::Config("alphabet size must be at least 2".into()));
    }
    if config.paa_size < 1 {
        return Err(Error::Config("PAA size must be at least 1".into()));
    }
    if series.len() < config.paa_size {
        return Err(Error::Config(format!(
            "series of {} values is shorter than one PAA block of {}",
            series.len(),
            config.paa_size
        )));
    }
    let blocks = series.len() / config.paa_size;
    let median = config.alphabet_size / 2;
    let symbols: Vec<usize> = match z_normalize(series) {
        None => vec![median; blocks],
        Some(normalized) => {
            let means = paa(&normalized, config.paa_size);
            let means = match config.normalization {
                Normalization::Series => Some(means),
                Normalization::SeriesAndBlocks => z_normalize(&means),
            };
            match means {
                None => vec![median; blocks],
                Some(means) => {
                    let cuts = breakpoints(config.alphabet_size);
                    means.iter().map(|&m| symbolize(m, &cuts)).collect()
                }
            }
        }
    };
    Ok(StreamSource {
        dictionary: Dictionary::numeric(config.alphabet_size),
        itemsets: symbols.into_iter().map(|s| Itemset::singleton(Item(s as u32))).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_series_maps_to_one_symbol() {
        let source = sax_discretize(&[3.5; 240], &SaxConfig::default()).unwrap();
        assert_eq!(source.len(), 10);
        assert!(source.iter().all(|s| s == &Itemset::singleton(Item(7))));
    }

    #[test]
    fn binary_alphabet_is_the_sign() {
        let series = [1.0, 2.0, -3.0, -0.5, 0.25, 0.25];
        let cfg = SaxConfig { alphabet_size: 2, paa_size: 2, normalization: Normalization::Series };
        let source = sax_discretize(&series, &cfg).unwrap();
        // Block means of the normalized series keep the sign of the raw
        // block means minus the overall mean (0).
        assert_eq!(source.itemsets, vec![Itemset::of(&[1]), Itemset::of(&[0]), Itemset::of(&[1])]);
    }

    #[test]
    fn paa_blocks() {
        assert_eq!(paa(&[1.0, 3.0, 5.0, 7.0, 9.0], 2), vec![2.0, 6.0]);
        assert_eq!(paa(&[4.0; 6], 3), vec![4.0, 4.0]);
    }

    #[test]
    fn breakpoints_are_symmetric() {
        let cuts = breakpoints(14);
        assert_eq!(cuts.len(), 13);
        assert!(cuts[6].abs() < 1e-9);
        for k in 0..13 {
            assert!((cuts[k] + cuts[12 - k]).abs() < 1e-9);
        }
        assert_eq!(symbolize(-10.0, &cuts), 0);
        assert_eq!(symbolize(10.0, &cuts), 13);
    }

    #[test]
    fn short_series_and_bad_config() {
        assert!(sax_discretize(&[1.0; 10], &SaxConfig::default()).is_err());
        let cfg = SaxConfig { alphabet_size: 1, ..SaxConfig::default() };
        assert!(sax_discretize(&[1.0; 100], &cfg).is_err());
    }
}
