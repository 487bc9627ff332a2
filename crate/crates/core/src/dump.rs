//! Text rendering of patterns and pattern trees.
//!
//! One line per pattern: `pattern<TAB>support<TAB>occurrences`, where a
//! multi-item itemset prints as `(a b)`, a singleton as `a`, itemsets are
//! separated by spaces and occurrences print as `(2,3);(3,5)`.

use std::fmt::Write;

use crate::pattern::Pattern;
use crate::stream::Dictionary;
use crate::tree::{PatternEntry, PatternTree};

pub fn format_pattern(pattern: &Pattern, dictionary: &Dictionary) -> String {
    let parts: Vec<String> = pattern
        .itemsets()
        .iter()
        .map(|set| {
            let symbols: Vec<String> = set.items().iter().map(|&i| dictionary.symbol(i)).collect();
            if symbols.len() == 1 {
                symbols.into_iter().next().expect("one symbol")
            } else {
                format!("({})", symbols.join(" "))
            }
        })
        .collect();
    parts.join(" ")
}

pub fn format_entry(entry: &PatternEntry, dictionary: &Dictionary) -> String {
    format!("{}\t{}\t{}", format_pattern(&entry.pattern, dictionary), entry.support, entry.occurrences)
}

/// All patterns of `tree` in enumeration order, newline terminated.
pub fn dump_tree(tree: &PatternTree, dictionary: &Dictionary) -> String {
    let mut out = String::new();
    for entry in tree.enumerate() {
        writeln!(out, "{}", format_entry(&entry, dictionary)).expect("writing to a String");
    }
    out
}
