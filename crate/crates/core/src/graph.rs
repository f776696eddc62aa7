//! Finite directed multigraphs.
//!
//! A [`Graph`] is a set of named nodes and a set of named arcs together with
//! total source and target maps. Parallel arcs and loops are allowed. Nodes
//! and arcs are stored in input order and addressed internally by index; ids
//! are opaque strings.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Separator used inside ids of arc-graph nodes and arcs (`a/b/c` is the path
/// with arcs `a`, `b`, `c`).
pub const PATH_SEP: char = '/';

/// One arc of a graph, with endpoints given as node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcData {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph.
///
/// Equality compares nodes and arcs (ids, endpoints and order) and ignores
/// the graph name.
#[derive(Clone)]
pub struct Graph {
    name: String,
    nodes: Vec<String>,
    arcs: Vec<ArcData>,
    node_index: HashMap<String, usize>,
    arc_index: HashMap<String, usize>,
    in_arcs: Vec<Vec<usize>>,
    out_arcs: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.arcs == other.arcs
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("nodes", &self.nodes)
            .field(
                "arcs",
                &self
                    .arcs
                    .iter()
                    .map(|a| (&a.id, &self.nodes[a.source], &self.nodes[a.target]))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// An unchecked graph description, as read from a file or assembled by hand.
///
/// Line numbers are optional and only used to annotate violations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub name: String,
    pub nodes: Vec<RawNode>,
    pub arcs: Vec<RawArc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawNode {
    pub id: String,
    pub line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawArc {
    pub id: String,
    pub source: String,
    pub target: String,
    pub line: Option<usize>,
}

/// A broken graph invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DanglingSource {
        arc: String,
        node: String,
        line: Option<usize>,
    },
    DanglingTarget {
        arc: String,
        node: String,
        line: Option<usize>,
    },
    DuplicateNode {
        id: String,
        line: Option<usize>,
    },
    DuplicateArc {
        id: String,
        line: Option<usize>,
    },
    BadId {
        id: String,
        line: Option<usize>,
    },
}

impl Violation {
    pub fn line(&self) -> Option<usize> {
        match self {
            Violation::DanglingSource { line, .. }
            | Violation::DanglingTarget { line, .. }
            | Violation::DuplicateNode { line, .. }
            | Violation::DuplicateArc { line, .. }
            | Violation::BadId { line, .. } => *line,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line() {
            write!(f, "line {line}: ")?;
        }
        match self {
            Violation::DanglingSource { arc, node, .. } => {
                write!(f, "dangling source {node} of arc {arc}")
            }
            Violation::DanglingTarget { arc, node, .. } => {
                write!(f, "dangling target {node} of arc {arc}")
            }
            Violation::DuplicateNode { id, .. } => write!(f, "duplicate node id {id}"),
            Violation::DuplicateArc { id, .. } => write!(f, "duplicate arc id {id}"),
            Violation::BadId { id, .. } => write!(f, "id {id:?} is empty or contains whitespace"),
        }
    }
}

fn bad_id(id: &str) -> bool {
    id.is_empty() || id.chars().any(char::is_whitespace)
}

/// Checks every graph invariant and reports all violations at once.
pub fn validate(raw: &RawGraph) -> std::result::Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    for node in &raw.nodes {
        if bad_id(&node.id) {
            violations.push(Violation::BadId {
                id: node.id.clone(),
                line: node.line,
            });
        }
        if !seen.insert(node.id.as_str()) {
            violations.push(Violation::DuplicateNode {
                id: node.id.clone(),
                line: node.line,
            });
        }
    }
    let mut seen_arcs = HashSet::new();
    for arc in &raw.arcs {
        if bad_id(&arc.id) {
            violations.push(Violation::BadId {
                id: arc.id.clone(),
                line: arc.line,
            });
        }
        if !seen_arcs.insert(arc.id.as_str()) {
            violations.push(Violation::DuplicateArc {
                id: arc.id.clone(),
                line: arc.line,
            });
        }
        if !seen.contains(arc.source.as_str()) {
            violations.push(Violation::DanglingSource {
                arc: arc.id.clone(),
                node: arc.source.clone(),
                line: arc.line,
            });
        }
        if !seen.contains(arc.target.as_str()) {
            violations.push(Violation::DanglingTarget {
                arc: arc.id.clone(),
                node: arc.target.clone(),
                line: arc.line,
            });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

impl RawGraph {
    pub fn new(name: impl Into<String>) -> Self {
        RawGraph {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn node(mut self, id: impl Into<String>) -> Self {
        self.nodes.push(RawNode {
            id: id.into(),
            line: None,
        });
        self
    }

    pub fn arc(
        mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        self.arcs.push(RawArc {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            line: None,
        });
        self
    }

    pub fn build(&self) -> Result<Graph> {
        validate(self).map_err(Error::InvalidGraph)?;
        let node_index: HashMap<String, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.clone(), i))
            .collect();
        let arcs = self
            .arcs
            .iter()
            .map(|a| ArcData {
                id: a.id.clone(),
                source: node_index[&a.source],
                target: node_index[&a.target],
            })
            .collect();
        Ok(Graph::from_parts(
            self.name.clone(),
            self.nodes.iter().map(|n| n.id.clone()).collect(),
            arcs,
        ))
    }
}

impl Graph {
    /// Builds a graph from node ids and `(arc id, source id, target id)` triples.
    pub fn new<N, A, S>(name: impl Into<String>, nodes: N, arcs: A) -> Result<Graph>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        A: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let mut raw = RawGraph::new(name);
        for n in nodes {
            raw = raw.node(n);
        }
        for (id, s, t) in arcs {
            raw = raw.arc(id, s, t);
        }
        raw.build()
    }

    /// Assembles a graph from already-indexed parts. Ids must be unique and
    /// endpoints in range; constructions inside the crate guarantee this.
    pub(crate) fn from_parts(name: String, nodes: Vec<String>, arcs: Vec<ArcData>) -> Graph {
        let node_index: HashMap<String, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let arc_index: HashMap<String, usize> = arcs
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.clone(), i))
            .collect();
        debug_assert_eq!(node_index.len(), nodes.len(), "duplicate node ids");
        debug_assert_eq!(arc_index.len(), arcs.len(), "duplicate arc ids");
        let mut in_arcs = vec![Vec::new(); nodes.len()];
        let mut out_arcs = vec![Vec::new(); nodes.len()];
        for (i, a) in arcs.iter().enumerate() {
            out_arcs[a.source].push(i);
            in_arcs[a.target].push(i);
        }
        Graph {
            name,
            nodes,
            arcs,
            node_index,
            arc_index,
            in_arcs,
            out_arcs,
        }
    }

    pub fn empty(name: impl Into<String>) -> Graph {
        Graph::from_parts(name.into(), Vec::new(), Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Graph {
        self.name = name.into();
        self
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[ArcData] {
        &self.arcs
    }

    pub fn node_id(&self, node: usize) -> &str {
        &self.nodes[node]
    }

    pub fn arc_id(&self, arc: usize) -> &str {
        &self.arcs[arc].id
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.node_index.get(id).copied()
    }

    pub fn arc_index(&self, id: &str) -> Option<usize> {
        self.arc_index.get(id).copied()
    }

    pub fn source(&self, arc: usize) -> usize {
        self.arcs[arc].source
    }

    pub fn target(&self, arc: usize) -> usize {
        self.arcs[arc].target
    }

    /// Arcs with target `node`, in input order (the set `X(*, node)`).
    pub fn in_arcs(&self, node: usize) -> &[usize] {
        &self.in_arcs[node]
    }

    /// Arcs with source `node`, in input order.
    pub fn out_arcs(&self, node: usize) -> &[usize] {
        &self.out_arcs[node]
    }

    /// True iff no two distinct arcs share both source and target.
    pub fn is_separated(&self) -> bool {
        let mut seen = HashSet::new();
        self.arcs.iter().all(|a| seen.insert((a.source, a.target)))
    }

    /// Number of arcs from `source` to `target`.
    pub fn multiplicity(&self, source: usize, target: usize) -> usize {
        self.out_arcs[source]
            .iter()
            .filter(|&&a| self.arcs[a].target == target)
            .count()
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            name: self.name.clone(),
            nodes: self
                .nodes
                .iter()
                .map(|n| RawNode {
                    id: n.clone(),
                    line: None,
                })
                .collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| RawArc {
                    id: a.id.clone(),
                    source: self.nodes[a.source].clone(),
                    target: self.nodes[a.target].clone(),
                    line: None,
                })
                .collect(),
        }
    }
}

/// Makes a list of ids pairwise distinct by suffixing later duplicates with
/// `~k`. Already-distinct lists are returned unchanged.
pub(crate) fn uniquify(ids: Vec<String>) -> Vec<String> {
    let mut taken: HashSet<String> = HashSet::with_capacity(ids.len());
    let mut dup = false;
    for id in &ids {
        if !taken.insert(id.clone()) {
            dup = true;
            break;
        }
    }
    if !dup {
        return ids;
    }
    let mut taken: HashSet<String> = ids.iter().cloned().collect();
    let mut used = HashSet::with_capacity(ids.len());
    ids.into_iter()
        .map(|id| {
            if used.insert(id.clone()) {
                return id;
            }
            let mut k = 2;
            loop {
                let candidate = format!("{id}~{k}");
                if taken.insert(candidate.clone()) {
                    used.insert(candidate.clone());
                    return candidate;
                }
                k += 1;
            }
        })
        .collect()
}
