//! Prefix tree of patterns with per-node minimal-occurrence lists.
//!
//! Every node stores only the edge that leads to it; the full pattern is
//! the concatenation of edges along the root path. Succession children
//! append a singleton itemset, composition children add a greater item to
//! the last itemset. Both child sets are kept sorted by item.

use crate::error::Result;
use crate::pattern::{Extension, ExtensionKind, Item, Itemset, Pattern};
use crate::window::{Occurrence, OccurrenceList, Position};

#[derive(Clone, Debug)]
pub struct PatternNode {
    extension: Option<Extension>,
    pub(crate) occurrences: OccurrenceList,
    pub(crate) s_children: Vec<PatternNode>,
    pub(crate) c_children: Vec<PatternNode>,
    pub(crate) quasi: bool,
    pub(crate) needs_completion: bool,
}

impl PatternNode {
    pub(crate) fn root() -> Self {
        PatternNode {
            extension: None,
            occurrences: OccurrenceList::new(),
            s_children: Vec::new(),
            c_children: Vec::new(),
            quasi: false,
            needs_completion: false,
        }
    }

    pub(crate) fn new(extension: Extension) -> Self {
        PatternNode { extension: Some(extension), ..PatternNode::root() }
    }

    /// The edge leading here; `None` at the root.
    pub fn extension(&self) -> Option<Extension> {
        self.extension
    }

    pub fn occurrences(&self) -> &OccurrenceList {
        &self.occurrences
    }

    pub fn support(&self) -> usize {
        self.occurrences.len()
    }

    pub fn is_quasi(&self) -> bool {
        self.quasi
    }

    pub fn s_children(&self) -> &[PatternNode] {
        &self.s_children
    }

    pub fn c_children(&self) -> &[PatternNode] {
        &self.c_children
    }

    fn item(&self) -> Item {
        self.extension.expect("root has no item").item
    }

    pub(crate) fn children(&self, kind: ExtensionKind) -> &Vec<PatternNode> {
        match kind {
            ExtensionKind::Succession => &self.s_children,
            ExtensionKind::Composition => &self.c_children,
        }
    }

    pub(crate) fn children_mut(&mut self, kind: ExtensionKind) -> &mut Vec<PatternNode> {
        match kind {
            ExtensionKind::Succession => &mut self.s_children,
            ExtensionKind::Composition => &mut self.c_children,
        }
    }

    fn child_index(&self, ext: Extension) -> std::result::Result<usize, usize> {
        self.children(ext.kind).binary_search_by_key(&ext.item, PatternNode::item)
    }

    pub fn child(&self, ext: Extension) -> Option<&PatternNode> {
        let idx = self.child_index(ext).ok()?;
        Some(&self.children(ext.kind)[idx])
    }

    pub(crate) fn child_mut(&mut self, ext: Extension) -> Option<&mut PatternNode> {
        let idx = self.child_index(ext).ok()?;
        Some(&mut self.children_mut(ext.kind)[idx])
    }

    /// Insert `node` among the children; it must not already be present.
    pub(crate) fn insert_child(&mut self, node: PatternNode) -> &mut PatternNode {
        let ext = node.extension.expect("only non-root nodes become children");
        let idx = match self.child_index(ext) {
            Ok(_) => panic!("child {ext:?} already present"),
            Err(idx) => idx,
        };
        let children = self.children_mut(ext.kind);
        children.insert(idx, node);
        &mut children[idx]
    }

    /// Returns the child and whether it was created.
    fn child_or_insert(&mut self, ext: Extension) -> (&mut PatternNode, bool) {
        match self.child_index(ext) {
            Ok(idx) => (&mut self.children_mut(ext.kind)[idx], false),
            Err(idx) => {
                let children = self.children_mut(ext.kind);
                children.insert(idx, PatternNode::new(ext));
                (&mut children[idx], true)
            }
        }
    }

    pub(crate) fn all_children(&self) -> impl Iterator<Item = &PatternNode> {
        self.s_children.iter().chain(self.c_children.iter())
    }

    pub(crate) fn all_children_mut(&mut self) -> impl Iterator<Item = &mut PatternNode> {
        self.s_children.iter_mut().chain(self.c_children.iter_mut())
    }

    /// (nodes, occurrences) in the subtree, this node included.
    pub(crate) fn subtree_size(&self) -> (usize, usize) {
        self.all_children().fold((1, self.support()), |(n, o), child| {
            let (cn, co) = child.subtree_size();
            (n + cn, o + co)
        })
    }
}

/// One pattern of an enumerated tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternEntry {
    pub pattern: Pattern,
    pub support: usize,
    pub occurrences: OccurrenceList,
}

#[derive(Clone, Debug)]
pub struct PatternTree {
    root: PatternNode,
    sigma: usize,
    node_count: usize,
    occurrence_count: usize,
}

impl PatternTree {
    pub fn new(sigma: usize) -> Self {
        assert!(sigma >= 1, "sigma must be at least 1");
        PatternTree { root: PatternNode::root(), sigma, node_count: 0, occurrence_count: 0 }
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Nodes below the root.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Occurrences stored across all nodes.
    pub fn occurrence_count(&self) -> usize {
        self.occurrence_count
    }

    pub fn root(&self) -> &PatternNode {
        &self.root
    }

    pub(crate) fn root_mut(&mut self) -> &mut PatternNode {
        &mut self.root
    }

    /// Apply metric deltas from code that edits nodes directly.
    pub(crate) fn adjust_counts(&mut self, nodes: isize, occurrences: isize) {
        self.node_count = self.node_count.checked_add_signed(nodes).expect("node count underflow");
        self.occurrence_count =
            self.occurrence_count.checked_add_signed(occurrences).expect("occurrence count underflow");
    }

    /// Counts by traversal, for checking the maintained metrics.
    pub fn recount(&self) -> (usize, usize) {
        let (nodes, occurrences) = self.root.subtree_size();
        (nodes - 1, occurrences)
    }

    pub fn get(&self, pattern: &Pattern) -> Option<&PatternNode> {
        pattern.derivation().into_iter().try_fold(&self.root, |node, ext| node.child(ext))
    }

    /// Walk the derivation chain of `pattern`, creating missing nodes with
    /// empty occurrence lists.
    pub fn insert_or_get(&mut self, pattern: &Pattern) -> &mut PatternNode {
        let mut created = 0;
        let mut node = &mut self.root;
        for ext in pattern.derivation() {
            let (child, new) = node.child_or_insert(ext);
            created += new as usize;
            node = child;
        }
        self.node_count += created;
        node
    }

    /// Append an occurrence to `pattern`'s node (created if needed), with
    /// minimality repair. Returns whether it was kept.
    pub fn append_occurrence(&mut self, pattern: &Pattern, occ: Occurrence) -> Result<bool> {
        let node = self.insert_or_get(pattern);
        let before = node.support();
        let accepted = node.occurrences.append(occ)?;
        let after = node.support();
        self.adjust_counts(0, after as isize - before as isize);
        Ok(accepted)
    }

    /// Remove every occurrence whose first position is `position`.
    pub fn drop_occurrences_starting_at(&mut self, position: Position) {
        fn walk(node: &mut PatternNode, position: Position) -> usize {
            let mut removed = node.occurrences.drop_starting_at(position);
            for child in node.all_children_mut() {
                removed += walk(child, position);
            }
            removed
        }
        let removed = walk(&mut self.root, position);
        self.occurrence_count -= removed;
    }

    /// Flag nodes at support `sigma - 1` whose last itemset is contained in
    /// `incoming`; they may still gain an occurrence at the new position.
    /// Returns the number of flagged nodes.
    pub fn mark_quasi(&mut self, incoming: &Itemset) -> usize {
        fn walk(node: &mut PatternNode, last: &mut Vec<Item>, target: usize, incoming: &Itemset) -> usize {
            let mut marked = 0;
            for kind in [ExtensionKind::Succession, ExtensionKind::Composition] {
                for child in node.children_mut(kind).iter_mut() {
                    let saved = match kind {
                        ExtensionKind::Succession => Some(std::mem::replace(last, vec![child.item()])),
                        ExtensionKind::Composition => {
                            last.push(child.item());
                            None
                        }
                    };
                    if child.support() == target && last.iter().all(|&item| incoming.contains(item)) {
                        child.quasi = true;
                        marked += 1;
                    }
                    marked += walk(child, last, target, incoming);
                    match saved {
                        Some(previous) => *last = previous,
                        None => {
                            last.pop();
                        }
                    }
                }
            }
            marked
        }
        let target = self.sigma - 1;
        walk(&mut self.root, &mut Vec::new(), target, incoming)
    }

    pub fn clear_flags(&mut self) {
        fn walk(node: &mut PatternNode) {
            node.quasi = false;
            node.needs_completion = false;
            node.all_children_mut().for_each(walk);
        }
        walk(&mut self.root);
    }

    /// Remove nodes with support below sigma, each together with its
    /// subtree. With `retain_quasi`, quasi nodes survive, and so do the
    /// ancestors needed to keep them attached.
    pub fn prune(&mut self, retain_quasi: bool) {
        fn keep(node: &mut PatternNode, sigma: usize, retain_quasi: bool, removed: &mut (usize, usize)) -> bool {
            let frequent = node.support() >= sigma;
            if !frequent && !retain_quasi {
                return false;
            }
            for kind in [ExtensionKind::Succession, ExtensionKind::Composition] {
                node.children_mut(kind).retain_mut(|child| {
                    let kept = keep(child, sigma, retain_quasi, removed);
                    if !kept {
                        let (n, o) = child.subtree_size();
                        removed.0 += n;
                        removed.1 += o;
                    }
                    kept
                });
            }
            frequent || node.quasi || node.all_children().next().is_some()
        }
        let sigma = self.sigma;
        let mut removed = (0, 0);
        for kind in [ExtensionKind::Succession, ExtensionKind::Composition] {
            self.root.children_mut(kind).retain_mut(|child| {
                let kept = keep(child, sigma, retain_quasi, &mut removed);
                if !kept {
                    let (n, o) = child.subtree_size();
                    removed.0 += n;
                    removed.1 += o;
                }
                kept
            });
        }
        self.node_count -= removed.0;
        self.occurrence_count -= removed.1;
    }

    /// Depth-first listing: succession children before composition
    /// children, items ascending.
    pub fn enumerate(&self) -> Vec<PatternEntry> {
        let mut out = Vec::with_capacity(self.node_count);
        self.visit(|path, node| {
            out.push(PatternEntry {
                pattern: Pattern::from_derivation(path).expect("tree paths are canonical"),
                support: node.support(),
                occurrences: node.occurrences.clone(),
            })
        });
        out
    }

    /// Pre-order visit of every non-root node with its root path.
    pub fn visit<F: FnMut(&[Extension], &PatternNode)>(&self, mut f: F) {
        fn walk<F: FnMut(&[Extension], &PatternNode)>(node: &PatternNode, path: &mut Vec<Extension>, f: &mut F) {
            for child in node.all_children() {
                path.push(child.extension.expect("non-root"));
                f(path, child);
                walk(child, path, f);
                path.pop();
            }
        }
        walk(&self.root, &mut Vec::new(), &mut f);
    }
}
