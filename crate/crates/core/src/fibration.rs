//! Coverings, trees at a node, and basal graphs.
//!
//! A covering restricts to a bijection on incoming arcs at every node. The
//! tree `T(X, x)` collects all finite paths ending at `x`; two nodes are
//! tree-equivalent when their trees are isomorphic. That relation is the
//! coarsest partition stable under backward refinement: a node's block is
//! determined by its block and the multiset of blocks its in-arcs come from.
//! Quotienting by it yields the basal graph.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{ArcData, Graph, PATH_SEP};
use crate::morphism::GraphMorphism;
use crate::walks::same_host;

/// True iff `f` maps the in-arcs of each domain node bijectively onto the
/// in-arcs of its image.
pub fn is_covering(f: &GraphMorphism) -> bool {
    let x = f.domain();
    (0..x.node_count()).all(|v| covers_at(f, v))
}

/// The covering condition at a single node.
pub fn covers_at(f: &GraphMorphism, v: usize) -> bool {
    let x = f.domain();
    let y = f.codomain();
    let incoming = x.in_arcs(v);
    let target = y.in_arcs(f.node(v));
    if incoming.len() != target.len() {
        return false;
    }
    let mut images: Vec<usize> = incoming.iter().map(|&a| f.arc(a)).collect();
    images.sort_unstable();
    images.dedup();
    images.len() == incoming.len()
}

pub fn is_epic_covering(f: &GraphMorphism) -> bool {
    is_covering(f) && f.is_epic()
}

/// A depth-bounded tree at a node with its projection back to the graph.
#[derive(Debug, Clone)]
pub struct TruncatedTree {
    pub tree: Arc<Graph>,
    /// Sends a path to its source and the arc `(aα, a, α)` to `a`.
    pub projection: GraphMorphism,
    /// Path length of each tree node.
    pub depth: Vec<usize>,
}

/// The tree at `node` cut off at paths of length `depth`.
///
/// Node ids are the paths' arc ids joined with [`PATH_SEP`], the root being
/// the node id itself; the arc `(aα, a, α)` takes the id of its source `aα`.
pub fn truncated_tree(x: &Arc<Graph>, node: usize, depth: usize) -> TruncatedTree {
    // each tree node: (path arcs, source node in x)
    let mut paths: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), node)];
    let mut depths = vec![0];
    let mut arcs = Vec::new();
    let mut arc_image = Vec::new();
    let mut frontier = vec![0];
    for d in 1..=depth {
        let mut next = Vec::new();
        for &child in &frontier {
            let src = paths[child].1;
            for &a in x.in_arcs(src) {
                let mut p = Vec::with_capacity(d);
                p.push(a);
                p.extend_from_slice(&paths[child].0);
                let id = paths.len();
                paths.push((p, x.source(a)));
                depths.push(d);
                arcs.push((id, child));
                arc_image.push(a);
                next.push(id);
            }
        }
        frontier = next;
    }
    let name = |p: &[usize]| {
        if p.is_empty() {
            x.node_id(node).to_string()
        } else {
            p.iter()
                .map(|&a| x.arc_id(a))
                .collect::<Vec<_>>()
                .join(&PATH_SEP.to_string())
        }
    };
    let node_ids: Vec<String> =
        crate::graph::uniquify(paths.iter().map(|(p, _)| name(p)).collect());
    let arcs = arcs
        .iter()
        .map(|&(s, t)| ArcData {
            id: node_ids[s].clone(),
            source: s,
            target: t,
        })
        .collect();
    let tree = Arc::new(Graph::from_parts(
        format!("T({},{})", x.name(), x.node_id(node)),
        node_ids,
        arcs,
    ));
    let projection = GraphMorphism::new_unchecked(
        tree.clone(),
        x.clone(),
        paths.iter().map(|&(_, s)| s).collect(),
        arc_image,
    );
    TruncatedTree {
        tree,
        projection,
        depth: depths,
    }
}

/// Tree-equivalence classes of nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePartition {
    /// Node indices per block, blocks ordered by their first node.
    pub blocks: Vec<Vec<usize>>,
    /// Block index of each node.
    pub block_of: Vec<usize>,
    /// Refinement rounds run, including the final one that split nothing.
    pub rounds: usize,
}

impl NodePartition {
    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn same_block(&self, u: usize, v: usize) -> bool {
        self.block_of[u] == self.block_of[v]
    }
}

/// Sorted source blocks of the in-arcs at `v`.
fn in_signature(x: &Graph, block_of: &[usize], v: usize) -> Vec<usize> {
    let mut s: Vec<usize> = x
        .in_arcs(v)
        .iter()
        .map(|&a| block_of[x.source(a)])
        .collect();
    s.sort_unstable();
    s
}

/// Renumbers blocks by first occurrence in node order.
fn canonical_blocks(labels: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut renumber = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let block_of = labels
        .iter()
        .enumerate()
        .map(|(v, l)| {
            let b = *renumber.entry(*l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
            b
        })
        .collect();
    (blocks, block_of)
}

/// One refinement step: split by (block, in-signature).
fn refine_once(x: &Graph, block_of: &[usize]) -> Vec<usize> {
    let mut ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let keys: Vec<(usize, Vec<usize>)> = (0..x.node_count())
        .map(|v| (block_of[v], in_signature(x, block_of, v)))
        .collect();
    for k in &keys {
        let n = ids.len();
        ids.entry(k.clone()).or_insert(n);
    }
    let labels: Vec<usize> = keys.iter().map(|k| ids[k]).collect();
    canonical_blocks(&labels).1
}

/// The tree-equivalence partition, by backward refinement to stability.
pub fn tree_partition(x: &Graph) -> NodePartition {
    let mut block_of = vec![0; x.node_count()];
    let mut count = usize::from(x.node_count() > 0);
    let mut rounds = 0;
    loop {
        let next = refine_once(x, &block_of);
        rounds += 1;
        let next_count = next.iter().max().map_or(0, |m| m + 1);
        block_of = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    let (blocks, block_of) = canonical_blocks(&block_of);
    NodePartition {
        blocks,
        block_of,
        rounds,
    }
}

/// Partition after exactly `rounds` refinement steps, which identifies nodes
/// whose trees agree to that depth.
pub fn partial_tree_partition(x: &Graph, rounds: usize) -> NodePartition {
    let mut block_of = vec![0; x.node_count()];
    for _ in 0..rounds {
        block_of = refine_once(x, &block_of);
    }
    let (blocks, block_of) = canonical_blocks(&block_of);
    NodePartition {
        blocks,
        block_of,
        rounds,
    }
}

/// True iff no two nodes have isomorphic trees.
pub fn is_basal(x: &Graph) -> bool {
    tree_partition(x).is_discrete()
}

/// How [`basal_of`] picks the node representing each block.
pub trait RepresentativePolicy {
    /// Picks one node from a nonempty block given in input order.
    fn choose(&self, graph: &Graph, block: &[usize]) -> usize;
}

/// Built-in representative policies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RepresentativeChoice {
    #[default]
    FirstInInputOrder,
    LastInInputOrder,
}

impl RepresentativePolicy for RepresentativeChoice {
    fn choose(&self, _graph: &Graph, block: &[usize]) -> usize {
        match self {
            RepresentativeChoice::FirstInInputOrder => block[0],
            RepresentativeChoice::LastInInputOrder => *block.last().unwrap(),
        }
    }
}

impl std::str::FromStr for RepresentativeChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "first" => Ok(RepresentativeChoice::FirstInInputOrder),
            "last" => Ok(RepresentativeChoice::LastInInputOrder),
            other => Err(format!(
                "unknown strategy {other:?} (expected first or last)"
            )),
        }
    }
}

/// An epic covering onto a basal graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basing {
    p: GraphMorphism,
}

impl Basing {
    /// Accepts `p` after checking that it is an epic covering with a basal
    /// codomain.
    pub fn new(p: GraphMorphism) -> Result<Basing> {
        if !is_epic_covering(&p) {
            return Err(Error::Precondition(
                "basing must be an epic covering".into(),
            ));
        }
        if !is_basal(p.codomain()) {
            return Err(Error::Precondition("basing codomain is not basal".into()));
        }
        Ok(Basing { p })
    }

    pub fn morphism(&self) -> &GraphMorphism {
        &self.p
    }

    pub fn base(&self) -> &Arc<Graph> {
        self.p.codomain()
    }

    pub fn into_morphism(self) -> GraphMorphism {
        self.p
    }
}

/// In-arcs at `v` ordered by (source block, arc index).
fn sorted_in_arcs(x: &Graph, part: &NodePartition, v: usize) -> Vec<usize> {
    let mut arcs = x.in_arcs(v).to_vec();
    arcs.sort_by_key(|&a| (part.block_of[x.source(a)], a));
    arcs
}

/// The basal quotient of `x` and the basing onto it.
///
/// One representative per tree-equivalence block becomes a node of `B`; the
/// in-arcs of each representative become the arcs of `B`, keeping their ids,
/// with source the representative of the original source's block. An arc of
/// `x` is sent to the in-arc of its target's representative in the same
/// position once both in-arc lists are sorted by (source block, arc index).
pub fn basal_of(x: &Arc<Graph>, policy: &impl RepresentativePolicy) -> Basing {
    let part = tree_partition(x);
    let reps: Vec<usize> = part.blocks.iter().map(|b| policy.choose(x, b)).collect();
    let mut b_arcs = Vec::new();
    let mut b_arc_of = HashMap::new();
    for (block, &r) in reps.iter().enumerate() {
        for &a in &sorted_in_arcs(x, &part, r) {
            b_arc_of.insert(a, b_arcs.len());
            b_arcs.push(ArcData {
                id: x.arc_id(a).to_string(),
                source: part.block_of[x.source(a)],
                target: block,
            });
        }
    }
    let base = Arc::new(Graph::from_parts(
        format!("B({})", x.name()),
        reps.iter().map(|&r| x.node_id(r).to_string()).collect(),
        b_arcs,
    ));
    let mut arc_map = vec![0; x.arc_count()];
    for v in 0..x.node_count() {
        let r = reps[part.block_of[v]];
        for (&a, &ra) in sorted_in_arcs(x, &part, v)
            .iter()
            .zip(&sorted_in_arcs(x, &part, r))
        {
            arc_map[a] = b_arc_of[&ra];
        }
    }
    let p = GraphMorphism::new_unchecked(x.clone(), base, part.block_of.clone(), arc_map);
    Basing { p }
}

/// Given an epic covering `f: X → Y` and a basing `p: X → B`, an epic
/// covering `h: Y → B` with `h∘f` agreeing with `p` on nodes.
///
/// Uses the section of `f₀` picking the first preimage of each node, and
/// extends it to arcs by inverting the in-arc bijections of `f` there.
pub fn lift_over_basing(f: &GraphMorphism, p: &Basing) -> Result<GraphMorphism> {
    if !is_epic_covering(f) {
        return Err(Error::Precondition("f must be an epic covering".into()));
    }
    let p = &p.p;
    if !same_host(f.domain(), p.domain()) {
        return Err(Error::Precondition(
            "f and the basing have different domains".into(),
        ));
    }
    let x = f.domain();
    let y = f.codomain();
    let mut section = vec![usize::MAX; y.node_count()];
    for v in (0..x.node_count()).rev() {
        section[f.node(v)] = v;
    }
    let node_map = section.iter().map(|&v| p.node(v)).collect();
    let mut arc_map = vec![0; y.arc_count()];
    for (target, &v) in section.iter().enumerate() {
        debug_assert_eq!(f.node(v), target);
        for &a in x.in_arcs(v) {
            arc_map[f.arc(a)] = p.arc(a);
        }
    }
    let h = GraphMorphism::new(y.clone(), p.codomain().clone(), node_map, arc_map)?;
    debug_assert!(is_epic_covering(&h));
    Ok(h)
}

/// True iff `f` and `g` have the same node map.
pub fn agree_on_nodes(f: &GraphMorphism, g: &GraphMorphism) -> Result<bool> {
    if !same_host(f.domain(), g.domain()) || !same_host(f.codomain(), g.codomain()) {
        return Err(Error::SignatureMismatch);
    }
    Ok(f.node_map() == g.node_map())
}
