//! Serialization-ready tree graphs and the DOT / TikZ / JSON writers.
//!
//! Nodes are canonically ordered by (genus, gap set), so the rendered bytes
//! are independent of traversal strategy and worker count.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chains;
use crate::families;
use crate::semigroup::NumericalSemigroup;
use crate::tree;

/// How node labels are rendered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelStyle {
    /// `{0,4,6,->}` style.
    SetNotation,
    /// `(2,4)_3` style for a fixed multiplicity, falling back to set
    /// notation for nodes without the tuple shape.
    Tuple { multiplicity: u64 },
}

/// A named set of nodes to color in the output.
#[derive(Clone, Debug)]
pub struct HighlightSet {
    pub class: String,
    pub members: HashSet<Vec<u64>>,
}

/// Options for [`build_tree_graph`].
#[derive(Clone, Debug)]
pub struct TreeExportOptions {
    pub max_genus: u64,
    /// Keep only nodes lying in infinite chains.
    pub chain_filter: bool,
    /// Keep only nodes of this multiplicity (prunes the ordinary branch).
    pub trim_multiplicity: Option<u64>,
    pub label_style: LabelStyle,
    pub highlights: Vec<HighlightSet>,
    pub jobs: usize,
}

impl Default for TreeExportOptions {
    fn default() -> Self {
        TreeExportOptions {
            max_genus: 0,
            chain_filter: false,
            trim_multiplicity: None,
            label_style: LabelStyle::SetNotation,
            highlights: Vec::new(),
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportNode {
    pub id: usize,
    pub gaps: Vec<u64>,
    pub genus: u64,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportEdge {
    pub from: usize,
    pub to: usize,
    pub removed_generator: u64,
}

/// A tree of semigroups ready for rendering: nodes sorted by (genus, gaps),
/// edges sorted by endpoint ids, genus as the layout depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportGraph {
    pub nodes: Vec<ExportNode>,
    pub edges: Vec<ExportEdge>,
}

type Collected = (NumericalSemigroup, Option<Vec<u64>>, Option<u64>);

fn collect_subtree<F>(
    root: &NumericalSemigroup,
    parent_key: Option<Vec<u64>>,
    removed: Option<u64>,
    max_genus: u64,
    filter: &F,
) -> Vec<Collected>
where
    F: Fn(&NumericalSemigroup) -> bool,
{
    let mut out = Vec::new();
    let mut stack = vec![(root.clone(), parent_key, removed)];
    while let Some((node, pk, rm)) = stack.pop() {
        let key = node.key();
        if node.genus() < max_genus {
            for (e, ch) in tree::children_with_generators(&node) {
                if filter(&ch) {
                    stack.push((ch, Some(key.clone()), Some(e)));
                }
            }
        }
        out.push((node, pk, rm));
    }
    out
}

/// Builds the export graph of the (filtered) subtree under `root`.
pub fn build_tree_graph(root: &NumericalSemigroup, opts: &TreeExportOptions) -> ExportGraph {
    let filter = |s: &NumericalSemigroup| {
        opts.trim_multiplicity.is_none_or(|m| s.multiplicity() == m)
            && (!opts.chain_filter || chains::in_infinite_chain(s))
    };
    let mut collected: Vec<Collected> = Vec::new();
    if root.genus() <= opts.max_genus && filter(root) {
        if opts.jobs <= 1 {
            collected = collect_subtree(root, None, None, opts.max_genus, &filter);
        } else {
            // hand whole subtrees to workers; canonical sorting below makes
            // the result independent of this split
            let mut frontier: Vec<Collected> = vec![(root.clone(), None, None)];
            let target = opts.jobs * 8;
            while !frontier.is_empty()
                && frontier.len() < target
                && frontier[0].0.genus() < opts.max_genus
            {
                let mut next = Vec::new();
                for (node, pk, rm) in frontier.drain(..) {
                    let key = node.key();
                    for (e, ch) in tree::children_with_generators(&node) {
                        if filter(&ch) {
                            next.push((ch, Some(key.clone()), Some(e)));
                        }
                    }
                    collected.push((node, pk, rm));
                }
                frontier = next;
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs)
                .build()
                .expect("worker pool");
            let sub: Vec<Vec<Collected>> = pool.install(|| {
                frontier
                    .par_iter()
                    .map(|(n, pk, rm)| {
                        collect_subtree(n, pk.clone(), *rm, opts.max_genus, &filter)
                    })
                    .collect()
            });
            collected.extend(sub.into_iter().flatten());
        }
    }
    collected.sort_by_cached_key(|(s, _, _)| (s.genus(), s.key()));

    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut nodes = Vec::with_capacity(collected.len());
    for (i, (s, _, _)) in collected.iter().enumerate() {
        let gaps = s.key();
        index.insert(gaps.clone(), i);
        let label = match opts.label_style {
            LabelStyle::SetNotation => s.to_string(),
            LabelStyle::Tuple { multiplicity } => families::to_tuple(s, multiplicity)
                .map(|t| t.to_string())
                .unwrap_or_else(|_| s.to_string()),
        };
        let class = opts
            .highlights
            .iter()
            .find(|h| h.members.contains(&gaps))
            .map(|h| h.class.clone());
        nodes.push(ExportNode {
            id: i,
            gaps,
            genus: s.genus(),
            label,
            class,
        });
    }
    let mut edges = Vec::new();
    for (s, pk, rm) in &collected {
        if let (Some(pk), Some(rm)) = (pk, rm) {
            edges.push(ExportEdge {
                from: index[pk],
                to: index[&s.key()],
                removed_generator: *rm,
            });
        }
    }
    edges.sort_by_key(|e| (e.from, e.to));
    ExportGraph { nodes, edges }
}

fn class_color(class: &str) -> &'static str {
    match class {
        "tau" => "blue",
        "gamma-chain" | "nu-chain" => "green",
        _ => "red",
    }
}

fn tex_escape_label(label: &str) -> String {
    let body = label
        .replace('{', "\\{")
        .replace('}', "\\}")
        .replace('\u{2192}', "\\rightarrow ");
    format!("${body}$")
}

impl ExportGraph {
    /// Structural sanity: canonical node order, edges between existing nodes
    /// spanning one genus level, and a single root.
    pub fn validate(&self) -> Result<(), String> {
        for (i, n) in self.nodes.iter().enumerate() {
            if n.id != i {
                return Err(format!("node {i} has id {}", n.id));
            }
            if n.gaps.len() as u64 != n.genus {
                return Err(format!("node {i} genus does not match its gap count"));
            }
        }
        for w in self.nodes.windows(2) {
            if (w[0].genus, &w[0].gaps) >= (w[1].genus, &w[1].gaps) {
                return Err("nodes are not in canonical order".into());
            }
        }
        let mut has_parent = vec![false; self.nodes.len()];
        for e in &self.edges {
            if e.from >= self.nodes.len() || e.to >= self.nodes.len() {
                return Err("edge endpoint out of range".into());
            }
            if self.nodes[e.to].genus != self.nodes[e.from].genus + 1 {
                return Err("edge does not span one genus level".into());
            }
            if has_parent[e.to] {
                return Err(format!("node {} has two parents", e.to));
            }
            has_parent[e.to] = true;
        }
        let roots = has_parent.iter().filter(|&&b| !b).count();
        if !self.nodes.is_empty() && roots != 1 {
            return Err(format!("expected a single root, found {roots}"));
        }
        Ok(())
    }

    /// Stable DOT rendering (directed graph, genus left to right).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph semigroup_tree {\n");
        out.push_str("  rankdir=LR;\n");
        out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
        for n in &self.nodes {
            match &n.class {
                Some(c) => {
                    let color = class_color(c);
                    out.push_str(&format!(
                        "  n{} [label=\"{}\", color=\"{}\", fontcolor=\"{}\"];\n",
                        n.id, n.label, color, color
                    ));
                }
                None => out.push_str(&format!("  n{} [label=\"{}\"];\n", n.id, n.label)),
            }
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                e.from, e.to, e.removed_generator
            ));
        }
        out.push_str("}\n");
        out
    }

    /// Standalone TikZ picture body in the bracket tree style.
    pub fn to_tikz(&self) -> String {
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        let mut has_parent = vec![false; self.nodes.len()];
        for e in &self.edges {
            children[e.from].push(e.to);
            has_parent[e.to] = true;
        }
        let mut out = String::from("\\begin{tikzpicture}[grow'=right, sibling distance=6mm]\n");
        match (0..self.nodes.len()).find(|&i| !has_parent[i]) {
            Some(root) => {
                out.push_str("\\Tree ");
                self.tikz_node(root, &children, &mut out);
                out.push('\n');
            }
            None => out.push_str("% empty tree\n"),
        }
        out.push_str("\\end{tikzpicture}\n");
        out
    }

    fn tikz_node(&self, id: usize, children: &[Vec<usize>], out: &mut String) {
        let n = &self.nodes[id];
        out.push_str(&format!("[.{{{}}} ", tex_escape_label(&n.label)));
        for &ch in &children[id] {
            let color = self.nodes[ch]
                .class
                .as_deref()
                .map_or("red", class_color);
            out.push_str(&format!("\\edge[{color}]; "));
            self.tikz_node(ch, children, out);
        }
        out.push_str("] ");
    }

    /// Pretty JSON with a trailing newline; parsing and re-rendering is
    /// byte-identical.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_tree(max_genus: u64, jobs: usize) -> ExportGraph {
        let opts = TreeExportOptions {
            max_genus,
            chain_filter: true,
            trim_multiplicity: Some(4),
            label_style: LabelStyle::SetNotation,
            highlights: Vec::new(),
            jobs,
        };
        build_tree_graph(&tree::multiplicity_subtree_root(4), &opts)
    }

    #[test]
    fn single_node_graph() {
        let opts = TreeExportOptions::default();
        let g = build_tree_graph(&NumericalSemigroup::trivial(), &opts);
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
        assert_eq!(g.nodes[0].label, "{0,\u{2192}}");
        g.validate().unwrap();
    }

    #[test]
    fn motif_shape_to_genus_seven() {
        let g = chain_tree(7, 1);
        g.validate().unwrap();
        assert_eq!(g.nodes.len(), 8); // ordinary root plus the seven motif nodes
        assert_eq!(g.edges.len(), 7);
    }

    #[test]
    fn deterministic_across_jobs_and_runs() {
        let a = chain_tree(40, 1);
        let b = chain_tree(40, 8);
        let c = chain_tree(40, 1);
        assert_eq!(a.to_dot(), b.to_dot());
        assert_eq!(a.to_dot(), c.to_dot());
        assert_eq!(a.to_json(), b.to_json());
        a.validate().unwrap();
    }

    #[test]
    fn json_roundtrip_is_byte_identical() {
        let g = chain_tree(16, 1);
        let json = g.to_json();
        let parsed = ExportGraph::from_json(&json).unwrap();
        assert_eq!(parsed.to_json(), json);
        assert_eq!(parsed, g);
    }

    #[test]
    fn tuple_labels_in_fixed_multiplicity_trees() {
        let opts = TreeExportOptions {
            max_genus: 7,
            chain_filter: true,
            trim_multiplicity: Some(6),
            label_style: LabelStyle::Tuple { multiplicity: 6 },
            highlights: Vec::new(),
            jobs: 1,
        };
        let g = build_tree_graph(&tree::multiplicity_subtree_root(6), &opts);
        let labels: Vec<&str> = g.nodes.iter().map(|n| n.label.as_str()).collect();
        assert!(labels.contains(&"(2)_1"));
        // the ordinary root has no tuple shape and falls back to set notation
        assert!(labels.contains(&"{0,6,\u{2192}}"));
    }

    #[test]
    fn highlight_classes_color_nodes() {
        let tau: HashSet<Vec<u64>> = families::m6_labeled_nodes(1)
            .iter()
            .map(|s| s.key())
            .collect();
        let opts = TreeExportOptions {
            max_genus: 11,
            chain_filter: true,
            trim_multiplicity: Some(6),
            label_style: LabelStyle::SetNotation,
            highlights: vec![HighlightSet {
                class: "tau".into(),
                members: tau,
            }],
            jobs: 1,
        };
        let g = build_tree_graph(&tree::multiplicity_subtree_root(6), &opts);
        let dot = g.to_dot();
        assert!(dot.contains("color=\"blue\""));
        let tikz = g.to_tikz();
        assert!(tikz.contains("\\edge[blue];"));
    }
}
