//! From-scratch mining of one window, and the occurrence-growth routine
//! shared with incremental completion.

use crate::pattern::{Extension, ExtensionKind, Item, Itemset};
use crate::tree::{PatternNode, PatternTree};
use crate::window::{Occurrence, OccurrenceList, Position, Window};

/// Minimal occurrences of the single-item pattern `⟨item⟩`.
pub fn occurrences_of_item(item: Item, window: &Window) -> OccurrenceList {
    let occurrences =
        window.postings(item).map(|p| p.iter().map(|&pos| Occurrence::single(pos)).collect()).unwrap_or_default();
    OccurrenceList::from_sorted(occurrences)
}

/// Minimal occurrences of a child pattern, derived from its parent's.
///
/// `parent_last` is the parent's last itemset. Every minimal occurrence of
/// the child starts where a minimal occurrence of the parent starts, and
/// the leftmost embedding from that start reuses the parent occurrence for
/// all but the child's last itemset. Parent occurrences are visited newest
/// first; a candidate is minimal exactly when it ends before every
/// candidate found for a later start, which also bounds each scan.
///
/// For composition the new last position is searched from the parent's
/// last position onwards rather than only at it: the parent embedding
/// under a minimal child occurrence need not itself be minimal.
pub fn occurrences_by_growth(
    parent_occurrences: &OccurrenceList,
    parent_last: &Itemset,
    extension: Extension,
    window: &Window,
) -> OccurrenceList {
    let mut needed = parent_last.clone();
    if extension.kind == ExtensionKind::Composition {
        needed.push_greatest(extension.item);
    }
    let mut found = Vec::new();
    let mut limit = Position::MAX;
    for occ in parent_occurrences.iter().rev() {
        let candidate = match extension.kind {
            ExtensionKind::Succession => {
                window.find_item(extension.item, occ.last() + 1, limit).map(|pos| occ.push(pos))
            }
            ExtensionKind::Composition if occ.positions().len() == 1 => {
                let start = occ.first();
                let hosts = window.get(start).is_some_and(|set| set.contains(extension.item));
                (hosts && start < limit).then(|| occ.clone())
            }
            ExtensionKind::Composition => {
                window.find_superset(&needed, occ.last(), limit).map(|pos| occ.with_last(pos))
            }
        };
        if let Some(candidate) = candidate {
            limit = candidate.last();
            found.push(candidate);
        }
    }
    found.reverse();
    OccurrenceList::from_sorted(found)
}

/// Build the tree of all patterns with support at least `sigma` in
/// `window`, growing depth-first from the frequent items.
pub fn mine_batch(window: &Window, sigma: usize) -> PatternTree {
    let mut tree = PatternTree::new(sigma);
    let items = window.items();
    let mut nodes = 0usize;
    let mut occurrences = 0usize;
    for &item in &items {
        let list = occurrences_of_item(item, window);
        if list.len() < sigma {
            continue;
        }
        let mut node = PatternNode::new(Extension::succession(item));
        nodes += 1;
        occurrences += list.len();
        node.occurrences = list;
        let mut last = Itemset::singleton(item);
        grow(&mut node, &mut last, &items, window, sigma, &mut nodes, &mut occurrences);
        tree.root_mut().insert_child(node);
    }
    tree.adjust_counts(nodes as isize, occurrences as isize);
    tree
}

fn grow(
    node: &mut PatternNode,
    last: &mut Itemset,
    items: &[Item],
    window: &Window,
    sigma: usize,
    nodes: &mut usize,
    occurrences: &mut usize,
) {
    let greatest = last.last().expect("pattern itemsets are non-empty");
    let compositions = items.iter().filter(|&&i| i > greatest).map(|&i| Extension::composition(i));
    let successions = items.iter().map(|&i| Extension::succession(i));
    for ext in compositions.chain(successions) {
        let list = occurrences_by_growth(&node.occurrences, last, ext, window);
        if list.len() < sigma {
            continue;
        }
        *nodes += 1;
        *occurrences += list.len();
        let mut child = PatternNode::new(ext);
        child.occurrences = list;
        match ext.kind {
            ExtensionKind::Composition => {
                last.push_greatest(ext.item);
                grow(&mut child, last, items, window, sigma, nodes, occurrences);
                last.pop_greatest();
            }
            ExtensionKind::Succession => {
                let mut fresh = Itemset::singleton(ext.item);
                grow(&mut child, &mut fresh, items, window, sigma, nodes, occurrences);
            }
        }
        node.insert_child(child);
    }
}
