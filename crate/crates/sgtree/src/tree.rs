//! Tree navigation and genus-bounded enumeration.
//!
//! The tree of numerical semigroups is rooted at the trivial semigroup; the
//! children of a node are obtained by removing one effective generator and
//! the parent by re-adjoining the Frobenius number. The level of a node
//! equals its genus.

use rayon::prelude::*;

use crate::chains;
use crate::error::Error;
use crate::semigroup::NumericalSemigroup;

/// One visited node during enumeration.
#[derive(Clone, Debug)]
pub struct TreeNodeRecord {
    pub semigroup: NumericalSemigroup,
    /// Gap set of the parent, absent for the enumeration root.
    pub parent_key: Option<Vec<u64>>,
    /// The effective generator whose removal produced this node.
    pub removed_generator: Option<u64>,
    /// Whether the node lies in an infinite chain.
    pub in_chain: bool,
}

/// Per-genus node counts produced by an enumeration, indexed by genus.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GenusCounts {
    counts: Vec<u64>,
}

impl GenusCounts {
    pub fn new() -> Self {
        GenusCounts { counts: Vec::new() }
    }

    pub fn record(&mut self, genus: u64) {
        let g = genus as usize;
        if self.counts.len() <= g {
            self.counts.resize(g + 1, 0);
        }
        self.counts[g] += 1;
    }

    /// Count at one genus (0 outside the recorded range).
    pub fn get(&self, genus: u64) -> u64 {
        self.counts.get(genus as usize).copied().unwrap_or(0)
    }

    pub fn merge(&mut self, other: &GenusCounts) {
        if self.counts.len() < other.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (i, &c) in other.counts.iter().enumerate() {
            self.counts[i] += c;
        }
    }

    /// `(genus, count)` rows for every recorded genus.
    pub fn rows(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().enumerate().map(|(g, &c)| (g as u64, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Leaf, stick or branching, by number of children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeClass {
    Leaf,
    Stick,
    Branching,
}

impl NodeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeClass::Leaf => "leaf",
            NodeClass::Stick => "stick",
            NodeClass::Branching => "branching",
        }
    }
}

/// `(removed generator, child)` pairs, ascending by removed generator.
pub fn children_with_generators(
    s: &NumericalSemigroup,
) -> Vec<(u64, NumericalSemigroup)> {
    s.effective_generators()
        .into_iter()
        .map(|e| (e, s.child_removing(e)))
        .collect()
}

/// Children in the semigroup tree, ascending by removed generator.
pub fn children(s: &NumericalSemigroup) -> Vec<NumericalSemigroup> {
    s.effective_generators()
        .into_iter()
        .map(|e| s.child_removing(e))
        .collect()
}

/// The parent, obtained by adjoining the Frobenius number.
pub fn parent(s: &NumericalSemigroup) -> Result<NumericalSemigroup, Error> {
    if s.is_trivial() {
        return Err(Error::RootHasNoParent);
    }
    let mut gaps = s.gaps();
    gaps.pop();
    Ok(NumericalSemigroup::from_gaps_trusted(&gaps))
}

/// Number of children.
pub fn efficacy(s: &NumericalSemigroup) -> u64 {
    s.effective_generators().len() as u64
}

pub fn classify_node(s: &NumericalSemigroup) -> NodeClass {
    match efficacy(s) {
        0 => NodeClass::Leaf,
        1 => NodeClass::Stick,
        _ => NodeClass::Branching,
    }
}

/// Structural descendant test: strictly larger genus, contained in the
/// ancestor and agreeing with it below the ancestor's conductor.
pub fn is_descendant(candidate: &NumericalSemigroup, ancestor: &NumericalSemigroup) -> bool {
    if candidate.genus() <= ancestor.genus() {
        return false;
    }
    // agreement below the ancestor's conductor
    for x in 0..ancestor.conductor() {
        if candidate.contains(x) != ancestor.contains(x) {
            return false;
        }
    }
    // containment: every gap of the ancestor is a gap of the candidate
    ancestor.gaps().iter().all(|&x| !candidate.contains(x))
}

/// Descendant test by iterating the parent map; must agree with
/// [`is_descendant`] (cross-checked in the property suite).
pub fn is_descendant_by_parents(
    candidate: &NumericalSemigroup,
    ancestor: &NumericalSemigroup,
) -> bool {
    if candidate.genus() <= ancestor.genus() {
        return false;
    }
    let mut cur = candidate.clone();
    while cur.genus() > ancestor.genus() {
        match parent(&cur) {
            Ok(p) => cur = p,
            Err(_) => return false,
        }
    }
    cur == *ancestor
}

/// Depth-first enumeration of the descendants of `root` with genus at most
/// `max_genus`, descending only into nodes satisfying `filter`.
///
/// The visitor sees each node exactly once, parents before children and
/// siblings in ascending order of the removed generator. Returns per-genus
/// counts of the visited nodes.
pub fn enumerate<F, V>(
    root: &NumericalSemigroup,
    max_genus: u64,
    filter: &F,
    visitor: &mut V,
) -> GenusCounts
where
    F: Fn(&NumericalSemigroup) -> bool,
    V: FnMut(&TreeNodeRecord),
{
    let mut counts = GenusCounts::new();
    if root.genus() > max_genus || !filter(root) {
        return counts;
    }
    let mut stack: Vec<(NumericalSemigroup, Option<Vec<u64>>, Option<u64>)> =
        vec![(root.clone(), None, None)];
    while let Some((node, parent_key, removed)) = stack.pop() {
        counts.record(node.genus());
        let record = TreeNodeRecord {
            in_chain: chains::in_infinite_chain(&node),
            parent_key,
            removed_generator: removed,
            semigroup: node.clone(),
        };
        visitor(&record);
        if node.genus() < max_genus {
            let key = node.key();
            let mut kids = children_with_generators(&node);
            kids.retain(|(_, ch)| filter(ch));
            for (e, ch) in kids.into_iter().rev() {
                stack.push((ch, Some(key.clone()), Some(e)));
            }
        }
    }
    counts
}

fn count_subtree<F>(root: &NumericalSemigroup, max_genus: u64, filter: &F) -> GenusCounts
where
    F: Fn(&NumericalSemigroup) -> bool,
{
    let mut counts = GenusCounts::new();
    let mut stack = vec![root.clone()];
    while let Some(node) = stack.pop() {
        counts.record(node.genus());
        if node.genus() < max_genus {
            for ch in children(&node) {
                if filter(&ch) {
                    stack.push(ch);
                }
            }
        }
    }
    counts
}

/// Counting fast path. With `jobs > 1` the subtrees hanging off a breadth
/// frontier are handed to a worker pool and the per-genus counts are merged
/// associatively, so the result is independent of the worker count.
pub fn enumerate_counts<F>(
    root: &NumericalSemigroup,
    max_genus: u64,
    filter: &F,
    jobs: usize,
) -> GenusCounts
where
    F: Fn(&NumericalSemigroup) -> bool + Sync,
{
    let mut counts = GenusCounts::new();
    if root.genus() > max_genus || !filter(root) {
        return counts;
    }
    if jobs <= 1 {
        return count_subtree(root, max_genus, filter);
    }
    let target = jobs * 8;
    let mut frontier = vec![root.clone()];
    while !frontier.is_empty() && frontier.len() < target && frontier[0].genus() < max_genus {
        let mut next = Vec::new();
        for node in frontier.drain(..) {
            counts.record(node.genus());
            for ch in children(&node) {
                if filter(&ch) {
                    next.push(ch);
                }
            }
        }
        frontier = next;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("worker pool");
    let sub = pool.install(|| {
        frontier
            .par_iter()
            .map(|n| count_subtree(n, max_genus, filter))
            .reduce(GenusCounts::new, |mut a, b| {
                a.merge(&b);
                a
            })
    });
    counts.merge(&sub);
    counts
}

/// The ordinary semigroup under which every semigroup of multiplicity `m`
/// lives. Enumerating below it while keeping the multiplicity fixed yields
/// exactly the multiplicity-`m` subtree.
pub fn multiplicity_subtree_root(m: u64) -> NumericalSemigroup {
    assert!(m >= 1, "multiplicity must be positive");
    let gaps: Vec<u64> = (1..m).collect();
    NumericalSemigroup::from_gaps_trusted(&gaps)
}
