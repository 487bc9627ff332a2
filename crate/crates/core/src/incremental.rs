//! Incremental maintenance of the frequent-pattern tree over a sliding
//! window.
//!
//! Each new itemset moves the window by one position:
//!
//! 1. occurrences starting at the oldest position are dropped, nodes that
//!    can still recover at the new position are flagged quasi-frequent and
//!    everything else below sigma is pruned;
//! 2. the tree of sub-itemsets of the new itemset is merged under the root
//!    and under every frequent node, each copy prefixed by that node's
//!    newest occurrence;
//! 3. nodes created by the merge get their full occurrence lists rebuilt
//!    from their parent's;
//! 4. nodes below sigma are pruned.
//!
//! Existing nodes never need a rescan: the only occurrence a pattern can
//! gain ends at the new position, and the merge supplies it.

use crate::batch::{occurrences_by_growth, occurrences_of_item};
use crate::pattern::{Extension, ExtensionKind, Item, Itemset};
use crate::tree::{PatternNode, PatternTree};
use crate::window::{Occurrence, OccurrenceList, Position, Window};

/// All non-empty sub-itemsets of one incoming itemset, each holding the
/// single occurrence at the incoming position. Singletons hang off the
/// root by succession; larger sub-itemsets chain by composition.
#[derive(Clone, Debug)]
pub struct ItemsetTree {
    root: PatternNode,
}

impl ItemsetTree {
    pub fn root(&self) -> &PatternNode {
        &self.root
    }

    pub fn node_count(&self) -> usize {
        self.root.subtree_size().0 - 1
    }

    /// A copy whose occurrences are all prefixed by `prefix`.
    pub fn prefixed(&self, prefix: Option<&Occurrence>) -> ItemsetTree {
        fn walk(node: &mut PatternNode, prefix: &Occurrence) {
            let prefixed = node.occurrences.iter().map(|occ| prefix.concat(occ)).collect();
            node.occurrences = OccurrenceList::from_sorted(prefixed);
            node.all_children_mut().for_each(|child| walk(child, prefix));
        }
        let mut copy = self.clone();
        if let Some(prefix) = prefix {
            walk(&mut copy.root, prefix);
        }
        copy
    }
}

pub fn build_itemset_tree(incoming: &Itemset, position: Position) -> ItemsetTree {
    fn extend(node: &mut PatternNode, rest: &[Item], position: Position) {
        for (k, &item) in rest.iter().enumerate() {
            let mut child = PatternNode::new(Extension::composition(item));
            child.occurrences = OccurrenceList::from_sorted(vec![Occurrence::single(position)]);
            extend(&mut child, &rest[k + 1..], position);
            node.c_children.push(child);
        }
    }
    let mut root = PatternNode::root();
    let items = incoming.items();
    for (k, &item) in items.iter().enumerate() {
        let mut child = PatternNode::new(Extension::succession(item));
        child.occurrences = OccurrenceList::from_sorted(vec![Occurrence::single(position)]);
        extend(&mut child, &items[k + 1..], position);
        root.s_children.push(child);
    }
    ItemsetTree { root }
}

/// Merge `itemset_tree` under the root and under every node that is
/// frequent in the current tree.
///
/// Targets are visited children first: a merge only touches the target's
/// subtree, so every target is judged on its state before any merge, and
/// occurrences added at the new position never act as prefixes. Returns
/// the number of merge targets.
pub fn merging(tree: &mut PatternTree, itemset_tree: &ItemsetTree) -> usize {
    fn walk(node: &mut PatternNode, source: &PatternNode, sigma: usize, stats: &mut (usize, isize, isize)) {
        node.all_children_mut().for_each(|child| walk(child, source, sigma, stats));
        let is_root = node.extension().is_none();
        if is_root || (!node.is_quasi() && node.support() >= sigma) {
            let prefix = node.occurrences().last().cloned();
            let (n, o) = merge_prefixed(source, prefix.as_ref(), node);
            stats.0 += 1;
            stats.1 += n;
            stats.2 += o;
        }
    }
    let sigma = tree.sigma();
    let mut stats = (0, 0, 0);
    walk(tree.root_mut(), itemset_tree.root(), sigma, &mut stats);
    tree.adjust_counts(stats.1, stats.2);
    stats.0
}

/// Merge the prefixed itemset-tree node `source` into `target`, which
/// stands for the same pattern. Missing children are copied over and
/// tagged for completion. Returns (nodes, occurrences) added.
pub fn rec_merge(source: &PatternNode, target: &mut PatternNode) -> (isize, isize) {
    merge_prefixed(source, None, target)
}

/// [`rec_merge`] with every source occurrence read as `prefix` followed
/// by the occurrence.
fn merge_prefixed(source: &PatternNode, prefix: Option<&Occurrence>, target: &mut PatternNode) -> (isize, isize) {
    let mut occurrences = 0isize;
    for occ in source.occurrences() {
        let before = target.support();
        target
            .occurrences
            .append(prefixed(prefix, occ))
            .expect("a merged occurrence never starts before the target's newest");
        occurrences += target.support() as isize - before as isize;
        target.quasi = false;
    }
    let mut nodes = 0isize;
    for kind in [ExtensionKind::Succession, ExtensionKind::Composition] {
        for child in source.children(kind) {
            let ext = child.extension().expect("non-root");
            match target.child_mut(ext) {
                Some(existing) => {
                    let (n, o) = merge_prefixed(child, prefix, existing);
                    nodes += n;
                    occurrences += o;
                }
                None => {
                    let copy = tagged_copy(child, prefix);
                    let (n, o) = copy.subtree_size();
                    nodes += n as isize;
                    occurrences += o as isize;
                    target.insert_child(copy);
                }
            }
        }
    }
    (nodes, occurrences)
}

fn prefixed(prefix: Option<&Occurrence>, occ: &Occurrence) -> Occurrence {
    match prefix {
        Some(prefix) => prefix.concat(occ),
        None => occ.clone(),
    }
}

fn tagged_copy(node: &PatternNode, prefix: Option<&Occurrence>) -> PatternNode {
    let mut copy = PatternNode::new(node.extension().expect("non-root"));
    let list = node.occurrences().iter().map(|occ| prefixed(prefix, occ)).collect();
    copy.occurrences = OccurrenceList::from_sorted(list);
    copy.needs_completion = true;
    copy.s_children = node.s_children.iter().map(|c| tagged_copy(c, prefix)).collect();
    copy.c_children = node.c_children.iter().map(|c| tagged_copy(c, prefix)).collect();
    copy
}

/// Rebuild the occurrence lists of nodes tagged by the merge, top-down,
/// from their parents' complete lists. Subtrees under nodes below sigma
/// are left alone; the final prune drops them. Returns the number of
/// nodes completed.
pub fn completion(tree: &mut PatternTree, window: &Window) -> usize {
    fn walk(node: &mut PatternNode, last: &Itemset, window: &Window, sigma: usize, stats: &mut (usize, isize)) {
        let is_root = node.extension().is_none();
        let PatternNode { occurrences, s_children, c_children, .. } = node;
        for child in s_children.iter_mut().chain(c_children.iter_mut()) {
            let ext = child.extension().expect("non-root");
            if child.needs_completion {
                let list = if is_root {
                    occurrences_of_item(ext.item, window)
                } else {
                    occurrences_by_growth(occurrences, last, ext, window)
                };
                stats.0 += 1;
                stats.1 += list.len() as isize - child.support() as isize;
                child.occurrences = list;
                child.needs_completion = false;
            }
            if child.support() < sigma {
                continue;
            }
            let child_last = match ext.kind {
                ExtensionKind::Succession => Itemset::singleton(ext.item),
                ExtensionKind::Composition => {
                    let mut grown = last.clone();
                    grown.push_greatest(ext.item);
                    grown
                }
            };
            walk(child, &child_last, window, sigma, stats);
        }
    }
    let sigma = tree.sigma();
    let mut stats = (0, 0);
    walk(tree.root_mut(), &Itemset::empty(), window, sigma, &mut stats);
    tree.adjust_counts(0, stats.1);
    stats.0
}

/// Work done by one update, for instrumentation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SlideStats {
    pub quasi_marked: usize,
    pub merge_targets: usize,
    pub completed: usize,
}

/// Frequent-pattern tree of the current window plus the window itself.
#[derive(Clone, Debug)]
pub struct MinerState {
    tree: PatternTree,
    window: Window,
    window_size: usize,
}

impl MinerState {
    pub fn new(window_size: usize, sigma: usize) -> Self {
        assert!(window_size >= 1, "window size must be at least 1");
        MinerState { tree: PatternTree::new(sigma), window: Window::new(1), window_size }
    }

    pub fn tree(&self) -> &PatternTree {
        &self.tree
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn window_size(&self) -> usize {
        self.window_size
    }

    pub fn sigma(&self) -> usize {
        self.tree.sigma()
    }

    pub fn is_warm(&self) -> bool {
        self.window.len() >= self.window_size
    }

    /// Take in the next itemset of the stream. Drops the oldest itemset
    /// first when the window is full.
    pub fn slide(&mut self, incoming: Itemset) -> SlideStats {
        let quasi_marked = if self.is_warm() { self.delete_oldest(&incoming) } else { 0 };
        SlideStats { quasi_marked, ..self.add(incoming) }
    }

    /// Append while the window is still filling up; no deletion.
    pub fn warmup_append(&mut self, incoming: Itemset) -> SlideStats {
        assert!(!self.is_warm(), "window already full; use slide");
        self.add(incoming)
    }

    /// Drop the oldest itemset and its occurrences. Nodes that fall to
    /// sigma - 1 and whose last itemset fits in `incoming` are kept,
    /// flagged quasi-frequent. Returns the number of flagged nodes.
    pub fn delete_oldest(&mut self, incoming: &Itemset) -> usize {
        let oldest = self.window.start();
        self.tree.drop_occurrences_starting_at(oldest);
        let marked = self.tree.mark_quasi(incoming);
        self.tree.prune(true);
        self.window.pop_front();
        marked
    }

    /// Append `incoming` to the window and return its itemset tree
    /// (`None` for an empty itemset).
    pub fn push_to_window(&mut self, incoming: Itemset) -> Option<ItemsetTree> {
        let position = self.window.next_position();
        let itemset_tree = (!incoming.is_empty()).then(|| build_itemset_tree(&incoming, position));
        self.window.push_back(incoming);
        itemset_tree
    }

    pub fn merge(&mut self, itemset_tree: &ItemsetTree) -> usize {
        merging(&mut self.tree, itemset_tree)
    }

    pub fn complete(&mut self) -> usize {
        completion(&mut self.tree, &self.window)
    }

    /// Final prune; clears quasi and completion flags.
    pub fn finish(&mut self) {
        self.tree.prune(false);
        self.tree.clear_flags();
    }

    fn add(&mut self, incoming: Itemset) -> SlideStats {
        let mut stats = SlideStats::default();
        if let Some(itemset_tree) = self.push_to_window(incoming) {
            stats.merge_targets = self.merge(&itemset_tree);
            stats.completed = self.complete();
        }
        self.finish();
        stats
    }
}
