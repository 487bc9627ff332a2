use std::collections::{BTreeMap, BTreeSet};

use epistream::oracle::{embeddings, enumerate_minimal_occurrences, mine_oracle, support};
use epistream::stream::{generate_synthetic, sax_discretize, GenConfig, SaxConfig};
use epistream::{
    is_subitemset, is_subsequence, mine_batch, Extension, Item, Itemset, MinerState, Occurrence, OccurrenceList,
    Pattern, PatternNode, PatternTree, Position, Window,
};
use proptest::prelude::*;

fn itemset(alphabet: u32, max_len: usize) -> impl Strategy<Value = Itemset> {
    prop::collection::vec(0..alphabet, 0..=max_len).prop_map(|ids| Itemset::new(ids.into_iter().map(Item)))
}

fn nonempty_itemset(alphabet: u32, max_len: usize) -> impl Strategy<Value = Itemset> {
    prop::collection::vec(0..alphabet, 1..=max_len).prop_map(|ids| Itemset::new(ids.into_iter().map(Item)))
}

fn pattern(alphabet: u32, max_itemsets: usize) -> impl Strategy<Value = Pattern> {
    prop::collection::vec(nonempty_itemset(alphabet, 3), 1..=max_itemsets).prop_map(|sets| Pattern::new(sets).unwrap())
}

fn window(alphabet: u32, lengths: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Window> {
    prop::collection::vec(itemset(alphabet, 3), lengths).prop_map(|sets| Window::from_itemsets(1, sets))
}

fn map(tree: &PatternTree) -> BTreeMap<Pattern, OccurrenceList> {
    tree.enumerate().into_iter().map(|e| (e.pattern, e.occurrences)).collect()
}

/// Keeps the itemsets and items selected by `mask` (bits reused
/// cyclically); drops itemsets that end up empty.
fn shrink(pattern: &Pattern, mask: u64) -> Option<Pattern> {
    let mut bit = 0;
    let mut next = || {
        let keep = mask >> (bit % 64) & 1 == 1;
        bit += 1;
        keep
    };
    let sets: Vec<Itemset> = pattern
        .itemsets()
        .iter()
        .map(|set| Itemset::new(set.items().iter().copied().filter(|_| next())))
        .filter(|set| !set.is_empty())
        .collect();
    Pattern::new(sets).ok()
}

proptest! {
    #[test]
    fn subitemset_is_a_partial_order(a in itemset(5, 4), b in itemset(5, 4), c in itemset(5, 4)) {
        prop_assert!(is_subitemset(&a, &a));
        if is_subitemset(&a, &b) && is_subitemset(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if is_subitemset(&a, &b) && is_subitemset(&b, &c) {
            prop_assert!(is_subitemset(&a, &c));
        }
        let union = Itemset::new(a.items().iter().chain(b.items()).copied());
        prop_assert!(is_subitemset(&a, &union) && is_subitemset(&b, &union));
    }

    #[test]
    fn subsequence_is_reflexive_and_transitive(p in pattern(4, 5), m1: u64, m2: u64) {
        prop_assert!(is_subsequence(&p, p.itemsets()));
        if let Some(q) = shrink(&p, m1) {
            prop_assert!(is_subsequence(&q, p.itemsets()));
            if let Some(r) = shrink(&q, m2) {
                prop_assert!(is_subsequence(&r, q.itemsets()));
                prop_assert!(is_subsequence(&r, p.itemsets()));
            }
        }
    }

    #[test]
    fn derivation_is_unique_and_extensions_injective(p in pattern(5, 4)) {
        let chain = p.derivation();
        prop_assert_eq!(chain.len(), p.item_count());
        prop_assert_eq!(Pattern::from_derivation(&chain).unwrap(), p.clone());
        if let Some((parent, ext)) = p.parent() {
            prop_assert_eq!(parent.extend(ext).unwrap(), p.clone());
        }
        let children: Vec<Pattern> = (0..6)
            .flat_map(|i| [Extension::succession(Item(i)), Extension::composition(Item(i))])
            .filter_map(|ext| p.extend(ext).ok())
            .collect();
        let distinct: BTreeSet<&Pattern> = children.iter().collect();
        prop_assert_eq!(distinct.len(), children.len());
        for child in &children {
            prop_assert_eq!(child.parent().map(|(parent, _)| parent), Some(p.clone()));
        }
    }

    #[test]
    fn oracle_occurrences_satisfy_the_definition(w in window(3, 1..=8), p in pattern(3, 3)) {
        let list = enumerate_minimal_occurrences(&p, &w);
        let all = embeddings(&p, &w);
        for occ in list.iter() {
            let positions = occ.positions();
            prop_assert_eq!(positions.len(), p.len());
            prop_assert!(positions.windows(2).all(|pair| pair[0] < pair[1]));
            for (set, &pos) in p.itemsets().iter().zip(positions) {
                prop_assert!(is_subitemset(set, w.get(pos).unwrap()));
            }
            let (first, last) = occ.interval();
            prop_assert!(!is_subsequence(&p, w.range(first + 1, last)));
            prop_assert!(first == last || !is_subsequence(&p, w.range(first, last - 1)));
            prop_assert!(all.contains(occ));
        }
        let intervals: Vec<(Position, Position)> = list.iter().map(Occurrence::interval).collect();
        for x in &intervals {
            for y in &intervals {
                let contains = x.0 <= y.0 && y.1 <= x.1 && x != y;
                prop_assert!(!contains, "{:?} contains {:?}", x, y);
            }
        }
        // Every embedding spans some minimal interval.
        for occ in &all {
            let (first, last) = occ.interval();
            prop_assert!(intervals.iter().any(|&(a, b)| first <= a && b <= last));
        }
    }

    #[test]
    fn support_is_antimonotone(w in window(3, 1..=8), p in pattern(3, 4)) {
        let mut current = p;
        while let Some((parent, _)) = current.parent() {
            prop_assert!(support(&parent, &w) >= support(&current, &w));
            current = parent;
        }
    }

    #[test]
    fn occurrence_list_append_keeps_an_antichain(steps in prop::collection::vec((0u64..3, 0u64..4), 1..30)) {
        let mut list = OccurrenceList::new();
        let mut start = 1;
        for (advance, span) in steps {
            start += advance;
            let occ = if span == 0 { Occurrence::single(start) } else { Occurrence::new(vec![start, start + span]) };
            list.append(occ).unwrap();
            let occs = list.as_slice();
            prop_assert!(occs.windows(2).all(|pair| pair[0].first() < pair[1].first() && pair[0].last() < pair[1].last()));
        }
    }
}

/// All patterns with at least one embedding, up to the window length,
/// with no support pruning.
fn exhaustive(w: &Window, sigma: usize) -> BTreeMap<Pattern, OccurrenceList> {
    fn subsets(set: &Itemset) -> Vec<Itemset> {
        let items = set.items();
        (1u32..1 << items.len())
            .map(|mask| Itemset::new((0..items.len()).filter(|k| mask >> k & 1 == 1).map(|k| items[k])))
            .collect()
    }
    let alphabet: BTreeSet<Itemset> = w.itemsets().flat_map(subsets).collect();
    let mut found = BTreeMap::new();
    let mut frontier: Vec<Vec<Itemset>> = vec![Vec::new()];
    for _ in 0..w.len() {
        let mut next = Vec::new();
        for prefix in &frontier {
            for set in &alphabet {
                let mut sets = prefix.clone();
                sets.push(set.clone());
                let p = Pattern::new(sets.clone()).unwrap();
                if !is_subsequence(&p, w.itemsets()) {
                    continue;
                }
                let list = enumerate_minimal_occurrences(&p, w);
                if list.len() >= sigma {
                    found.insert(p, list);
                }
                next.push(sets);
            }
        }
        frontier = next;
    }
    found
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pruned_oracle_matches_exhaustive_enumeration(
        sets in prop::collection::vec(itemset(3, 2), 8),
        sigma in 1usize..=3,
    ) {
        let w = Window::from_itemsets(1, sets);
        prop_assert_eq!(mine_oracle(&w, sigma), exhaustive(&w, sigma));
    }

    #[test]
    fn batch_matches_oracle_on_short_windows(w in window(4, 1..=12), sigma in 2usize..=3) {
        prop_assert_eq!(map(&mine_batch(&w, sigma)), mine_oracle(&w, sigma));
    }

    #[test]
    fn batch_matches_oracle_on_windows_up_to_twenty(w in window(6, 13..=20), sigma in 3usize..=4) {
        prop_assert_eq!(map(&mine_batch(&w, sigma)), mine_oracle(&w, sigma));
    }
}

fn check_tree(tree: &PatternTree) -> Result<(), TestCaseError> {
    fn walk(node: &PatternNode, sigma: usize) -> Result<(), TestCaseError> {
        for children in [node.s_children(), node.c_children()] {
            prop_assert!(children
                .windows(2)
                .all(|pair| pair[0].extension().unwrap().item < pair[1].extension().unwrap().item));
        }
        for child in node.s_children().iter().chain(node.c_children()) {
            prop_assert!(child.support() >= sigma);
            if node.extension().is_some() {
                prop_assert!(node.support() >= child.support());
            }
            walk(child, sigma)?;
        }
        Ok(())
    }
    prop_assert_eq!(tree.recount(), (tree.node_count(), tree.occurrence_count()));
    let patterns: BTreeSet<Pattern> = tree.enumerate().into_iter().map(|e| e.pattern).collect();
    prop_assert_eq!(patterns.len(), tree.node_count());
    walk(tree.root(), tree.sigma())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn batch_trees_are_well_formed(w in window(5, 1..=16), sigma in 2usize..=4) {
        check_tree(&mine_batch(&w, sigma))?;
    }

    #[test]
    fn incremental_matches_batch_over_random_slides(
        stream in prop::collection::vec(itemset(8, 3), 200),
        ws in 3usize..=12,
        sigma in 2usize..=4,
    ) {
        let mut state = MinerState::new(ws, sigma);
        for set in stream {
            state.slide(set);
            let expected = mine_batch(state.window(), sigma);
            prop_assert_eq!(state.tree().enumerate(), expected.enumerate());
            check_tree(state.tree())?;
        }
    }

    #[test]
    fn warm_up_then_slides_matches_batch(
        stream in prop::collection::vec(itemset(6, 3), 10..40),
        ws in 2usize..=10,
        sigma in 1usize..=3,
    ) {
        let mut state = MinerState::new(ws, sigma);
        for (k, set) in stream.into_iter().enumerate() {
            if k < ws {
                state.warmup_append(set);
            } else {
                state.slide(set);
            }
            prop_assert_eq!(state.tree().enumerate(), mine_batch(state.window(), sigma).enumerate());
        }
    }

    #[test]
    fn generator_is_reproducible(seed: u64, vocab in 1usize..20, p in 0.0f64..=1.0, length in 0usize..200) {
        let config = GenConfig { vocab_size: vocab, item_probability: p, length, seed };
        let first = generate_synthetic(&config).unwrap();
        prop_assert_eq!(&first, &generate_synthetic(&config).unwrap());
        prop_assert_eq!(first.len(), length);
        prop_assert!(first.iter().all(|set| set.items().iter().all(|i| i.index() < vocab)));
    }

    #[test]
    fn sax_symbols_in_range(
        series in prop::collection::vec(-1e3f64..1e3, 1..400),
        alphabet in 2usize..20,
        paa in 1usize..30,
    ) {
        let config = SaxConfig { alphabet_size: alphabet, paa_size: paa, ..SaxConfig::default() };
        match sax_discretize(&series, &config) {
            Ok(source) => {
                prop_assert_eq!(source.len(), series.len() / paa);
                prop_assert!(source.iter().all(|set| set.len() == 1 && set.items()[0].index() < alphabet));
            }
            Err(_) => prop_assert!(series.len() < paa),
        }
    }
}
