//! Stream ingestion: itemset text files, the synthetic generator, and SAX
//! discretization of numeric series.

mod generator;
mod reader;
mod sax;

use std::cmp::Ordering;
use std::collections::HashMap;

pub use generator::{generate_synthetic, GenConfig};
pub use reader::{read_itemset_stream, read_numeric_series, write_itemset_stream};
pub use sax::{breakpoints, paa, sax_discretize, symbolize, z_normalize, Normalization, SaxConfig};

use crate::pattern::{Item, Itemset};

/// Symbol ↔ item id mapping for one stream. Ids follow the natural order
/// of the symbols (numerically for integer symbols, then lexicographically).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dictionary {
    symbols: Vec<String>,
    ids: HashMap<String, Item>,
}

fn natural_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

impl Dictionary {
    pub fn from_symbols<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        symbols.sort_by(|a, b| natural_order(a, b));
        symbols.dedup();
        let ids = symbols.iter().enumerate().map(|(k, s)| (s.clone(), Item(k as u32))).collect();
        Dictionary { symbols, ids }
    }

    /// Symbols `0`, `1`, … `size - 1`.
    pub fn numeric(size: usize) -> Self {
        Dictionary::from_symbols((0..size).map(|k| k.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, symbol: &str) -> Option<Item> {
        self.ids.get(symbol).copied()
    }

    /// Falls back to the numeric id for items outside the dictionary.
    pub fn symbol(&self, item: Item) -> String {
        self.symbols.get(item.index()).cloned().unwrap_or_else(|| item.0.to_string())
    }
}

/// A materialized itemset stream and its dictionary.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StreamSource {
    pub dictionary: Dictionary,
    pub itemsets: Vec<Itemset>,
}

impl StreamSource {
    pub fn len(&self) -> usize {
        self.itemsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Itemset> {
        self.itemsets.iter()
    }
}

impl IntoIterator for StreamSource {
    type Item = Itemset;
    type IntoIter = std::vec::IntoIter<Itemset>;

    fn into_iter(self) -> Self::IntoIter {
        self.itemsets.into_iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_symbol_order() {
        let d = Dictionary::from_symbols(["10", "b", "2", "a", "2"]);
        assert_eq!(d.len(), 4);
        assert_eq!(d.get("2"), Some(Item(0)));
        assert_eq!(d.get("10"), Some(Item(1)));
        assert_eq!(d.get("a"), Some(Item(2)));
        assert_eq!(d.symbol(Item(3)), "b");
        assert_eq!(d.symbol(Item(9)), "9");
    }
}
