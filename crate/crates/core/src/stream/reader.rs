use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::stream::{Dictionary, StreamSource};

const RESERVED: &[char] = &['(', ')', ',', ';', '#'];

/// Parse the itemset text format: one itemset per line, whitespace
/// separated item tokens, `#` comment lines, blank line = empty itemset.
pub fn read_itemset_stream(text: &str) -> Result<StreamSource> {
    let mut lines: Vec<Vec<&str>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if let Some(bad) = tokens.iter().find(|t| t.contains(RESERVED)) {
            return Err(Error::Parse { line: idx + 1, message: format!("malformed item token {bad:?}") });
        }
        lines.push(tokens);
    }
    let dictionary = Dictionary::from_symbols(lines.iter().flatten().copied());
    let itemsets = lines
        .iter()
        .map(|tokens| tokens.iter().map(|t| dictionary.get(t).expect("symbol registered")).collect())
        .collect();
    Ok(StreamSource { dictionary, itemsets })
}

pub fn write_itemset_stream<W: Write>(source: &StreamSource, out: &mut W) -> io::Result<()> {
    for itemset in &source.itemsets {
        let line: Vec<String> = itemset.items().iter().map(|&i| source.dictionary.symbol(i)).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

/// One number per line; blank and `#` lines are skipped.
pub fn read_numeric_series(text: &str) -> Result<Vec<f64>> {
    let mut series = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 =
            line.parse().map_err(|_| Error::Parse { line: idx + 1, message: format!("not a number: {line:?}") })?;
        if !value.is_finite() {
            return Err(Error::Parse { line: idx + 1, message: format!("non-finite value {line:?}") });
        }
        series.push(value);
    }
    Ok(series)
}
