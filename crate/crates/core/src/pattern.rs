//! Items, itemsets and serial episodes, with the sub-itemset and
//! sub-sequence relations used everywhere else in the crate.

use std::fmt;

use crate::error::{Error, Result};

/// Dense item id. The total order on items is the order on ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(pub u32);

impl Item {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Sorted, duplicate-free set of items.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset(Vec<Item>);

impl Itemset {
    pub fn new<I: IntoIterator<Item = Item>>(items: I) -> Self {
        let mut items: Vec<Item> = items.into_iter().collect();
        items.sort_unstable();
        items.dedup();
        Itemset(items)
    }

    pub fn empty() -> Self {
        Itemset(Vec::new())
    }

    pub fn singleton(item: Item) -> Self {
        Itemset(vec![item])
    }

    /// Shorthand for tests and examples: `Itemset::of(&[1, 2])`.
    pub fn of(ids: &[u32]) -> Self {
        Self::new(ids.iter().copied().map(Item))
    }

    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: Item) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    /// Greatest item, if any.
    pub fn last(&self) -> Option<Item> {
        self.0.last().copied()
    }

    pub fn is_subitemset_of(&self, other: &Itemset) -> bool {
        is_subitemset(self, other)
    }

    pub(crate) fn push_greatest(&mut self, item: Item) {
        debug_assert!(self.last().is_none_or(|last| last < item));
        self.0.push(item);
    }

    pub(crate) fn pop_greatest(&mut self) -> Option<Item> {
        self.0.pop()
    }
}

impl FromIterator<Item> for Itemset {
    fn from_iter<T: IntoIterator<Item = Item>>(iter: T) -> Self {
        Itemset::new(iter)
    }
}

/// `beta ⊑ alpha`: every item of `beta` occurs in `alpha`. Merge-walk over
/// the two sorted lists.
pub fn is_subitemset(beta: &Itemset, alpha: &Itemset) -> bool {
    if beta.len() > alpha.len() {
        return false;
    }
    let mut rest = alpha.items().iter();
    'outer: for b in beta.items() {
        for a in rest.by_ref() {
            match a.cmp(b) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// `t ⪯ s`: the itemsets of `t` embed, in order, into super-itemsets of
/// strictly increasing elements of `s`. Greedy left-to-right.
pub fn is_subsequence<'a, S>(t: &Pattern, s: S) -> bool
where
    S: IntoIterator<Item = &'a Itemset>,
{
    let mut pending = t.itemsets().iter().peekable();
    for element in s {
        match pending.peek() {
            Some(next) if is_subitemset(next, element) => {
                pending.next();
            }
            Some(_) => {}
            None => break,
        }
    }
    pending.peek().is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtensionKind {
    /// Append a new singleton itemset.
    Succession,
    /// Add an item to the last itemset; the item must exceed all its items.
    Composition,
}

/// The edge leading from a pattern to one of its children in the prefix tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Extension {
    pub item: Item,
    pub kind: ExtensionKind,
}

impl Extension {
    pub fn succession(item: Item) -> Self {
        Extension { item, kind: ExtensionKind::Succession }
    }

    pub fn composition(item: Item) -> Self {
        Extension { item, kind: ExtensionKind::Composition }
    }
}

/// A serial episode: a non-empty sequence of non-empty itemsets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(Vec<Itemset>);

impl Pattern {
    pub fn new(itemsets: Vec<Itemset>) -> Result<Self> {
        if itemsets.is_empty() || itemsets.iter().any(Itemset::is_empty) {
            return Err(Error::EmptyPattern);
        }
        Ok(Pattern(itemsets))
    }

    pub fn singleton(item: Item) -> Self {
        Pattern(vec![Itemset::singleton(item)])
    }

    /// Shorthand for tests: `Pattern::of(&[&[1, 2], &[2]])` is `⟨(1 2) 2⟩`.
    ///
    /// Panics on an empty pattern or an empty itemset.
    pub fn of(itemsets: &[&[u32]]) -> Self {
        Pattern::new(itemsets.iter().map(|ids| Itemset::of(ids)).collect()).expect("pattern literal must be non-empty")
    }

    pub fn itemsets(&self) -> &[Itemset] {
        &self.0
    }

    /// Number of itemsets, `|S|`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total number of items, `‖S‖`.
    pub fn item_count(&self) -> usize {
        self.0.iter().map(Itemset::len).sum()
    }

    pub fn last_itemset(&self) -> &Itemset {
        self.0.last().expect("patterns are non-empty")
    }

    pub fn extend(&self, extension: Extension) -> Result<Pattern> {
        let mut child = self.clone();
        match extension.kind {
            ExtensionKind::Succession => child.0.push(Itemset::singleton(extension.item)),
            ExtensionKind::Composition => {
                let last = child.0.last_mut().expect("patterns are non-empty");
                let greatest = last.last().expect("pattern itemsets are non-empty");
                if extension.item <= greatest {
                    return Err(Error::OrderViolation { item: extension.item, last: greatest });
                }
                last.push_greatest(extension.item);
            }
        }
        Ok(child)
    }

    /// Canonical parent in the prefix tree and the edge to this pattern.
    /// `None` for single-item patterns, whose parent is the empty root.
    pub fn parent(&self) -> Option<(Pattern, Extension)> {
        let mut parent = self.clone();
        let last = parent.0.last_mut().expect("patterns are non-empty");
        if last.len() > 1 {
            let item = last.pop_greatest().expect("checked length");
            Some((parent, Extension::composition(item)))
        } else if parent.0.len() > 1 {
            let item = parent.0.pop().and_then(|set| set.last()).expect("non-empty itemset");
            Some((parent, Extension::succession(item)))
        } else {
            None
        }
    }

    /// Edges from the root down to this pattern.
    pub fn derivation(&self) -> Vec<Extension> {
        let mut chain = Vec::with_capacity(self.item_count());
        for itemset in &self.0 {
            for (k, &item) in itemset.items().iter().enumerate() {
                chain.push(if k == 0 { Extension::succession(item) } else { Extension::composition(item) });
            }
        }
        chain
    }

    /// Inverse of [`Pattern::derivation`].
    pub fn from_derivation(chain: &[Extension]) -> Result<Pattern> {
        let mut itemsets: Vec<Itemset> = Vec::new();
        for ext in chain {
            match ext.kind {
                ExtensionKind::Succession => itemsets.push(Itemset::singleton(ext.item)),
                ExtensionKind::Composition => {
                    let last = itemsets.last_mut().ok_or(Error::EmptyPattern)?;
                    let greatest = last.last().expect("non-empty itemset");
                    if ext.item <= greatest {
                        return Err(Error::OrderViolation { item: ext.item, last: greatest });
                    }
                    last.push_greatest(ext.item);
                }
            }
        }
        Pattern::new(itemsets)
    }
}
