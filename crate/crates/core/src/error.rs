use thiserror::Error;

use crate::pattern::Item;
use crate::window::Position;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Composition must add an item greater than every item of the last itemset.
    #[error("composition with item {item} violates the item order (last itemset ends with {last})")]
    OrderViolation { item: Item, last: Item },

    #[error("occurrence starting at {start} appended after an occurrence starting at {previous}")]
    OutOfOrderAppend { start: Position, previous: Position },

    #[error("patterns need at least one itemset and no itemset may be empty")]
    EmptyPattern,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
