//! Brute-force minimal occurrences, straight from the definition.
//!
//! Nothing here is fast. It enumerates every embedding and re-checks
//! minimality with [`is_subsequence`] on window slices; the miners are
//! tested against it on small windows.

use std::collections::{BTreeMap, VecDeque};
use std::time::Instant;

use crate::pattern::{is_subitemset, is_subsequence, Extension, Pattern};
use crate::window::{Occurrence, OccurrenceList, Position, Window};

/// Every embedding of `pattern` in `window`: one position per itemset,
/// strictly increasing, each element containing its pattern itemset.
/// Yielded in lexicographic order.
pub fn embeddings(pattern: &Pattern, window: &Window) -> Vec<Occurrence> {
    let mut out = Vec::new();
    for_each_embedding(pattern, window, |positions| out.push(Occurrence::new(positions.to_vec())));
    out
}

fn for_each_embedding<F: FnMut(&[Position])>(pattern: &Pattern, window: &Window, mut f: F) {
    fn grow<F: FnMut(&[Position])>(
        pattern: &Pattern,
        window: &Window,
        from: Position,
        current: &mut Vec<Position>,
        f: &mut F,
    ) {
        let depth = current.len();
        if depth == pattern.len() {
            f(current);
            return;
        }
        let Some(end) = window.end() else { return };
        for position in from..=end {
            let element = window.get(position).expect("position inside window");
            if is_subitemset(&pattern.itemsets()[depth], element) {
                current.push(position);
                grow(pattern, window, position + 1, current, f);
                current.pop();
            }
        }
    }
    if pattern.len() <= window.len() {
        grow(pattern, window, window.start(), &mut Vec::new(), &mut f);
    }
}

/// Minimal occurrences of `pattern` in `window`.
///
/// An embedding spanning `[i1, in]` is kept when neither `[i1+1, in]` nor
/// `[i1, in-1]` contains the pattern. Several embeddings can share the
/// same minimal interval; the lexicographically smallest one (the greedy
/// leftmost embedding from `i1`) represents it.
pub fn enumerate_minimal_occurrences(pattern: &Pattern, window: &Window) -> OccurrenceList {
    let mut by_interval: BTreeMap<(Position, Position), Occurrence> = BTreeMap::new();
    for_each_embedding(pattern, window, |positions| {
        let interval = (positions[0], positions[positions.len() - 1]);
        by_interval.entry(interval).or_insert_with(|| Occurrence::new(positions.to_vec()));
    });
    let minimal = by_interval
        .into_iter()
        .filter(|&((first, last), _)| {
            let without_first = is_subsequence(pattern, window.range(first + 1, last));
            let without_last = last > first && is_subsequence(pattern, window.range(first, last - 1));
            !without_first && !without_last
        })
        .map(|(_, occ)| occ)
        .collect();
    OccurrenceList::from_sorted(minimal)
}

pub fn support(pattern: &Pattern, window: &Window) -> usize {
    enumerate_minimal_occurrences(pattern, window).len()
}

/// All patterns with support at least `sigma`, grown breadth-first from
/// single items and pruned on support.
pub fn mine_oracle(window: &Window, sigma: usize) -> BTreeMap<Pattern, OccurrenceList> {
    mine(window, sigma, None).expect("no deadline")
}

/// [`mine_oracle`] that gives up, returning `None`, once `deadline` has
/// passed.
pub fn mine_oracle_until(
    window: &Window,
    sigma: usize,
    deadline: Instant,
) -> Option<BTreeMap<Pattern, OccurrenceList>> {
    mine(window, sigma, Some(deadline))
}

fn mine(window: &Window, sigma: usize, deadline: Option<Instant>) -> Option<BTreeMap<Pattern, OccurrenceList>> {
    assert!(sigma >= 1, "sigma must be at least 1");
    let items = window.items();
    let mut found = BTreeMap::new();
    // Candidates are only generated from their canonical parent, so each
    // one is queued exactly once.
    let mut queue: VecDeque<Pattern> = items.iter().map(|&i| Pattern::singleton(i)).collect();

    while let Some(pattern) = queue.pop_front() {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return None;
        }
        let occurrences = enumerate_minimal_occurrences(&pattern, window);
        if occurrences.len() < sigma {
            continue;
        }
        let greatest = pattern.last_itemset().last().expect("non-empty itemset");
        for &item in &items {
            let mut candidates = vec![Extension::succession(item)];
            if item > greatest {
                candidates.push(Extension::composition(item));
            }
            for ext in candidates {
                queue.push_back(pattern.extend(ext).expect("order checked above"));
            }
        }
        found.insert(pattern, occurrences);
    }
    Some(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Itemset;

    const A: u32 = 0;
    const B: u32 = 1;
    const C: u32 = 2;

    fn example1() -> Window {
        Window::from_itemsets(
            1,
            [Itemset::of(&[A]), Itemset::of(&[B, C]), Itemset::of(&[A, B, C]), Itemset::of(&[C]), Itemset::of(&[B])],
        )
    }

    fn positions(list: &OccurrenceList) -> Vec<Vec<Position>> {
        list.iter().map(|o| o.positions().to_vec()).collect()
    }

    #[test]
    fn example1_minimal_occurrences() {
        let w = example1();
        // (3,5) is not minimal for ⟨(bc) c⟩: (3,4) sits strictly inside it.
        let list = enumerate_minimal_occurrences(&Pattern::of(&[&[B, C], &[C]]), &w);
        assert_eq!(positions(&list), vec![vec![2, 3], vec![3, 4]]);
        let list = enumerate_minimal_occurrences(&Pattern::of(&[&[B, C], &[B]]), &w);
        assert_eq!(positions(&list), vec![vec![2, 3], vec![3, 5]]);
        assert_eq!(support(&Pattern::of(&[&[B, C], &[C]]), &w), 2);
    }

    #[test]
    fn b_after_slide() {
        let w = Window::from_itemsets(
            2,
            [Itemset::of(&[A, B]), Itemset::of(&[A, B]), Itemset::of(&[C]), Itemset::of(&[B, C])],
        );
        let list = enumerate_minimal_occurrences(&Pattern::of(&[&[B]]), &w);
        assert_eq!(positions(&list), vec![vec![2], vec![3], vec![5]]);
        let list = enumerate_minimal_occurrences(&Pattern::of(&[&[B], &[C]]), &w);
        assert_eq!(positions(&list), vec![vec![3, 4]]);
    }

    #[test]
    fn pattern_longer_than_window() {
        let w = Window::from_itemsets(1, [Itemset::of(&[A])]);
        assert!(enumerate_minimal_occurrences(&Pattern::of(&[&[A], &[A]]), &w).is_empty());
        assert_eq!(support(&Pattern::of(&[&[7]]), &example1()), 0);
    }

    #[test]
    fn composition_needs_non_minimal_parent_embedding() {
        // ⟨a b⟩ is minimal only at (2,3), yet ⟨a (bc)⟩ is minimal at (2,4).
        let w =
            Window::from_itemsets(1, [Itemset::of(&[A]), Itemset::of(&[A]), Itemset::of(&[B]), Itemset::of(&[B, C])]);
        let ab = enumerate_minimal_occurrences(&Pattern::of(&[&[A], &[B]]), &w);
        assert_eq!(positions(&ab), vec![vec![2, 3]]);
        let abc = enumerate_minimal_occurrences(&Pattern::of(&[&[A], &[B, C]]), &w);
        assert_eq!(positions(&abc), vec![vec![2, 4]]);
    }

    #[test]
    fn tied_intervals_keep_leftmost_tuple() {
        // ⟨a b c⟩ in ⟨a b b c⟩ embeds as (1,2,4) and (1,3,4), same interval.
        let w = Window::from_itemsets(1, [Itemset::of(&[A]), Itemset::of(&[B]), Itemset::of(&[B]), Itemset::of(&[C])]);
        let list = enumerate_minimal_occurrences(&Pattern::of(&[&[A], &[B], &[C]]), &w);
        assert_eq!(positions(&list), vec![vec![1, 2, 4]]);
    }

    #[test]
    fn mine_example1() {
        let found = mine_oracle(&example1(), 2);
        assert_eq!(found[&Pattern::of(&[&[B, C], &[C]])].len(), 2);
        assert_eq!(found[&Pattern::of(&[&[B, C], &[B]])].len(), 2);
        assert!(found.values().all(|l| l.len() >= 2));
        assert!(!found.contains_key(&Pattern::of(&[&[A], &[A], &[A]])));
    }

    #[test]
    fn sigma_one_finds_every_subpattern() {
        let w = Window::from_itemsets(1, [Itemset::of(&[A, B])]);
        let found = mine_oracle(&w, 1);
        let patterns: Vec<_> = found.keys().cloned().collect();
        assert_eq!(patterns, vec![Pattern::of(&[&[A]]), Pattern::of(&[&[A, B]]), Pattern::of(&[&[B]])]);
    }
}
