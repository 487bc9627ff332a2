//! Stream windows and occurrence lists.
//!
//! Positions are absolute and 1-based: the first itemset of the stream sits
//! at position 1 and positions are never renumbered as the window slides.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::pattern::{Item, Itemset};

pub type Position = u64;

/// Positions of one embedding of a pattern, one per pattern itemset,
/// strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence(Vec<Position>);

impl Occurrence {
    pub fn new(positions: Vec<Position>) -> Self {
        debug_assert!(!positions.is_empty());
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        Occurrence(positions)
    }

    pub fn single(position: Position) -> Self {
        Occurrence(vec![position])
    }

    pub fn positions(&self) -> &[Position] {
        &self.0
    }

    pub fn first(&self) -> Position {
        self.0[0]
    }

    pub fn last(&self) -> Position {
        *self.0.last().expect("occurrences are non-empty")
    }

    pub fn interval(&self) -> (Position, Position) {
        (self.first(), self.last())
    }

    /// This occurrence followed by `other`, as produced when a prefix
    /// occurrence is prepended to an itemset-tree occurrence.
    pub fn concat(&self, other: &Occurrence) -> Occurrence {
        let mut positions = Vec::with_capacity(self.0.len() + other.0.len());
        positions.extend_from_slice(&self.0);
        positions.extend_from_slice(&other.0);
        Occurrence::new(positions)
    }

    /// Replace the last position.
    pub fn with_last(&self, position: Position) -> Occurrence {
        let mut positions = self.0.clone();
        *positions.last_mut().expect("occurrences are non-empty") = position;
        Occurrence::new(positions)
    }

    pub fn push(&self, position: Position) -> Occurrence {
        let mut positions = Vec::with_capacity(self.0.len() + 1);
        positions.extend_from_slice(&self.0);
        positions.push(position);
        Occurrence::new(positions)
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Minimal occurrences of one pattern, ordered by first position.
///
/// Both first and last positions are strictly increasing, so no interval
/// strictly contains another.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OccurrenceList(Vec<Occurrence>);

impl OccurrenceList {
    pub fn new() -> Self {
        OccurrenceList(Vec::new())
    }

    /// Build from occurrences already satisfying the list invariant.
    pub fn from_sorted(occurrences: Vec<Occurrence>) -> Self {
        debug_assert!(occurrences.windows(2).all(|w| w[0].first() < w[1].first() && w[0].last() < w[1].last()));
        OccurrenceList(occurrences)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Occurrence> {
        self.0.iter()
    }

    pub fn last(&self) -> Option<&Occurrence> {
        self.0.last()
    }

    pub fn as_slice(&self) -> &[Occurrence] {
        &self.0
    }

    /// Append with minimality repair.
    ///
    /// `occ` must not start before the last stored occurrence. It is
    /// rejected (`Ok(false)`) when a stored interval lies inside its own;
    /// stored occurrences whose interval strictly contains it are removed.
    pub fn append(&mut self, occ: Occurrence) -> Result<bool> {
        let (start, end) = occ.interval();
        if let Some(tail) = self.0.last() {
            if tail.first() > start {
                return Err(Error::OutOfOrderAppend { start, previous: tail.first() });
            }
            if tail.first() == start && tail.last() <= end {
                return Ok(false);
            }
        }
        // Ends are increasing, so the occurrences ending at or after `end`
        // form a suffix; each of them strictly contains the new interval.
        let keep = self.0.partition_point(|o| o.last() < end);
        self.0.truncate(keep);
        self.0.push(occ);
        Ok(true)
    }

    /// Remove occurrences starting at `position`; returns how many went.
    pub fn drop_starting_at(&mut self, position: Position) -> usize {
        // First positions are strictly increasing: only the head can match.
        match self.0.first() {
            Some(head) if head.first() == position => {
                self.0.remove(0);
                1
            }
            _ => 0,
        }
    }

    pub fn into_vec(self) -> Vec<Occurrence> {
        self.0
    }
}

impl<'a> IntoIterator for &'a OccurrenceList {
    type Item = &'a Occurrence;
    type IntoIter = std::slice::Iter<'a, Occurrence>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for OccurrenceList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, occ) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{occ}")?;
        }
        Ok(())
    }
}

/// Contiguous slice of the stream.
///
/// Keeps, per item, the ascending positions where it occurs, so growth
/// scans can jump straight to candidate positions.
#[derive(Clone, Debug)]
pub struct Window {
    start: Position,
    itemsets: VecDeque<Itemset>,
    postings: Vec<VecDeque<Position>>,
}

impl Default for Window {
    fn default() -> Self {
        Window::new(1)
    }
}

impl Window {
    /// Empty window whose first element will sit at `start`.
    pub fn new(start: Position) -> Self {
        assert!(start >= 1, "positions are 1-based");
        Window { start, itemsets: VecDeque::new(), postings: Vec::new() }
    }

    pub fn from_itemsets<I: IntoIterator<Item = Itemset>>(start: Position, itemsets: I) -> Self {
        let mut window = Window::new(start);
        for itemset in itemsets {
            window.push_back(itemset);
        }
        window
    }

    /// Position of the oldest element (or of the next element, when empty).
    pub fn start(&self) -> Position {
        self.start
    }

    /// Position the next pushed itemset will get.
    pub fn next_position(&self) -> Position {
        self.start + self.itemsets.len() as Position
    }

    /// Position of the newest element.
    pub fn end(&self) -> Option<Position> {
        (!self.itemsets.is_empty()).then(|| self.next_position() - 1)
    }

    pub fn len(&self) -> usize {
        self.itemsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    pub fn get(&self, position: Position) -> Option<&Itemset> {
        let offset = position.checked_sub(self.start)?;
        self.itemsets.get(usize::try_from(offset).ok()?)
    }

    pub fn contains_position(&self, position: Position) -> bool {
        position >= self.start && position < self.next_position()
    }

    /// Elements with their absolute positions.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Position, &Itemset)> + '_ {
        self.itemsets.iter().enumerate().map(move |(k, set)| (self.start + k as Position, set))
    }

    /// Elements at positions `from..=to`, clamped to the window.
    pub fn range(&self, from: Position, to: Position) -> impl Iterator<Item = &Itemset> + '_ {
        let lo = from.max(self.start);
        let hi = to.min(self.next_position().saturating_sub(1));
        let skip = (lo - self.start) as usize;
        let take = if hi >= lo { (hi - lo + 1) as usize } else { 0 };
        self.itemsets.iter().skip(skip).take(take)
    }

    pub fn itemsets(&self) -> impl Iterator<Item = &Itemset> + '_ {
        self.itemsets.iter()
    }

    /// Items occurring somewhere in the window, ascending.
    pub fn items(&self) -> Vec<Item> {
        self.postings.iter().enumerate().filter(|(_, p)| !p.is_empty()).map(|(id, _)| Item(id as u32)).collect()
    }

    pub fn push_back(&mut self, itemset: Itemset) -> Position {
        let position = self.next_position();
        for item in itemset.items() {
            if item.index() >= self.postings.len() {
                self.postings.resize_with(item.index() + 1, VecDeque::new);
            }
            self.postings[item.index()].push_back(position);
        }
        self.itemsets.push_back(itemset);
        position
    }

    pub fn pop_front(&mut self) -> Option<(Position, Itemset)> {
        let itemset = self.itemsets.pop_front()?;
        let position = self.start;
        for item in itemset.items() {
            let popped = self.postings[item.index()].pop_front();
            debug_assert_eq!(popped, Some(position));
        }
        self.start += 1;
        Some((position, itemset))
    }

    /// Ascending positions of `item` in the window.
    pub fn postings(&self, item: Item) -> Option<&VecDeque<Position>> {
        self.postings.get(item.index())
    }

    /// First position `p` with `from <= p < until` whose element contains
    /// `item`.
    pub fn find_item(&self, item: Item, from: Position, until: Position) -> Option<Position> {
        let postings = self.postings(item)?;
        let p = *postings.get(postings.partition_point(|&p| p < from))?;
        (p < until).then_some(p)
    }

    /// First position `p` with `from <= p < until` whose element contains
    /// every item of `needed`.
    pub fn find_superset(&self, needed: &Itemset, from: Position, until: Position) -> Option<Position> {
        // Walk the postings of the rarest item.
        let rarest = needed.items().iter().copied().min_by_key(|item| self.postings(*item).map_or(0, VecDeque::len))?;
        let postings = self.postings(rarest)?;
        let begin = postings.partition_point(|&p| p < from);
        postings
            .range(begin..)
            .take_while(|&&p| p < until)
            .copied()
            .find(|&p| self.get(p).is_some_and(|set| needed.is_subitemset_of(set)))
    }
}
