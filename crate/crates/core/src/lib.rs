//! Exact mining of frequent serial episodes over a sliding window of an
//! itemset stream.
//!
//! A pattern's support is its number of minimal occurrences in the
//! window. [`MinerState`] keeps the tree of frequent patterns up to date
//! one itemset at a time; [`mine_batch`] rebuilds it from scratch; the
//! [`oracle`] module evaluates the definition by brute force.

pub mod batch;
pub mod dump;
pub mod error;
pub mod incremental;
pub mod oracle;
pub mod pattern;
pub mod stream;
pub mod tree;
pub mod window;

pub use batch::{mine_batch, occurrences_by_growth};
pub use error::{Error, Result};
pub use incremental::{MinerState, SlideStats};
pub use pattern::{is_subitemset, is_subsequence, Extension, ExtensionKind, Item, Itemset, Pattern};
pub use stream::{Dictionary, StreamSource};
pub use tree::{PatternEntry, PatternNode, PatternTree};
pub use window::{Occurrence, OccurrenceList, Position, Window};
