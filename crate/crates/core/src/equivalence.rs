//! Decidable shadows of N-equivalence.
//!
//! Nothing here proves two graphs N-equivalent. The checks are necessary
//! conditions (equal zeta series, isomorphic basal graphs of the walkable
//! parts, bijections on closed walks, coverings) plus an exhaustive search for
//! explicit level-`n` homotopy inverses.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fibration::{basal_of, is_covering, RepresentativeChoice};
use crate::functors::{morphism_between, path_graph, truncation_between};
use crate::graph::{ArcData, Graph};
use crate::iso::{graph_iso, NotIsomorphic};
use crate::morphism::GraphMorphism;
use crate::walks::{periodic_walks, same_host, EPWalk};
use crate::zeta::{cycle_count, first_cycle_mismatch, zeta_equal};

/// Nodes of the largest subgraph in which every node has an arc to another
/// node of the subgraph; these are exactly the nodes where an infinite walk
/// starts.
fn walkable_nodes(x: &Graph) -> Vec<bool> {
    let mut alive = vec![true; x.node_count()];
    let mut live_out: Vec<usize> = (0..x.node_count()).map(|v| x.out_arcs(v).len()).collect();
    let mut dead: Vec<usize> = (0..x.node_count()).filter(|&v| live_out[v] == 0).collect();
    while let Some(v) = dead.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &a in x.in_arcs(v) {
            let u = x.source(a);
            live_out[u] -= 1;
            if live_out[u] == 0 && alive[u] {
                dead.push(u);
            }
        }
    }
    alive
}

/// The walkable subgraph and its inclusion. Ids and order are kept.
pub fn walkable_subgraph(x: &Arc<Graph>) -> (Arc<Graph>, GraphMorphism) {
    let alive = walkable_nodes(x);
    let node_keep: Vec<usize> = (0..x.node_count()).filter(|&v| alive[v]).collect();
    let mut new_index = vec![usize::MAX; x.node_count()];
    for (i, &v) in node_keep.iter().enumerate() {
        new_index[v] = i;
    }
    // an arc into a walkable node starts at a walkable node
    let arc_keep: Vec<usize> = (0..x.arc_count()).filter(|&a| alive[x.target(a)]).collect();
    let sub = Arc::new(Graph::from_parts(
        format!("walkable({})", x.name()),
        node_keep
            .iter()
            .map(|&v| x.node_id(v).to_string())
            .collect(),
        arc_keep
            .iter()
            .map(|&a| ArcData {
                id: x.arc_id(a).to_string(),
                source: new_index[x.source(a)],
                target: new_index[x.target(a)],
            })
            .collect(),
    ));
    let incl = GraphMorphism::new_unchecked(sub.clone(), x.clone(), node_keep, arc_keep);
    (sub, incl)
}

pub fn is_walkable(x: &Graph) -> bool {
    walkable_nodes(x).into_iter().all(|a| a)
}

/// True iff `f` and `g` agree on the walkable subgraph of their domain,
/// which is the homotopy relation between graph morphisms.
pub fn homotopic(f: &GraphMorphism, g: &GraphMorphism) -> Result<bool> {
    if !same_host(f.domain(), g.domain()) || !same_host(f.codomain(), g.codomain()) {
        return Err(Error::SignatureMismatch);
    }
    let x = f.domain();
    let alive = walkable_nodes(x);
    let nodes_agree = (0..x.node_count())
        .filter(|&v| alive[v])
        .all(|v| f.node(v) == g.node(v));
    let arcs_agree = (0..x.arc_count())
        .filter(|&a| alive[x.target(a)])
        .all(|a| f.arc(a) == g.arc(a));
    Ok(nodes_agree && arcs_agree)
}

/// Default cap on the size of `Aⁿ(Y)` for [`find_level_inverse`].
pub const LEVEL_SEARCH_LIMIT: usize = 2000;

/// Outcome of a level-`n` inverse search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelSearch {
    /// `q: Aⁿ(Y) → X` with `q∘Aⁿ(f) = s_{n,0}` and `f∘q = s_{n,0}`.
    Witness(GraphMorphism),
    /// No such `q` exists.
    Refuted,
}

impl LevelSearch {
    pub fn witness(&self) -> Option<&GraphMorphism> {
        match self {
            LevelSearch::Witness(q) => Some(q),
            LevelSearch::Refuted => None,
        }
    }
}

/// Exhaustive search for a level-`n` homotopy inverse of `f: X → Y`.
/// Fails with a precondition error if `Aⁿ(Y)` has more than `limit` nodes.
pub fn find_level_inverse(f: &GraphMorphism, n: usize, limit: usize) -> Result<LevelSearch> {
    let x = f.domain();
    let y = f.codomain();
    let any = path_graph(y, n);
    if any.graph.node_count() > limit {
        return Err(Error::Precondition(format!(
            "A^{n}({}) has {} nodes, above the search limit {limit}",
            y.name(),
            any.graph.node_count()
        )));
    }
    let anx = path_graph(x, n);
    let an_f = morphism_between(f, &anx, &any);
    let s_x = truncation_between(&anx, &path_graph(x, 0));
    let s_y = truncation_between(&any, &path_graph(y, 0));
    let target = &any.graph;

    // values of q forced by q∘Aⁿ(f) = s_{n,0}
    let mut forced_node = vec![None; target.node_count()];
    for v in 0..anx.graph.node_count() {
        let b = an_f.node(v);
        match forced_node[b] {
            Some(x0) if x0 != s_x.node(v) => return Ok(LevelSearch::Refuted),
            _ => forced_node[b] = Some(s_x.node(v)),
        }
    }
    let mut forced_arc = vec![None; target.arc_count()];
    for a in 0..anx.graph.arc_count() {
        let b = an_f.arc(a);
        match forced_arc[b] {
            Some(a0) if a0 != s_x.arc(a) => return Ok(LevelSearch::Refuted),
            _ => forced_arc[b] = Some(s_x.arc(a)),
        }
    }
    // candidates compatible with f∘q = s_{n,0}
    let node_cands: Vec<Vec<usize>> = (0..target.node_count())
        .map(|b| match forced_node[b] {
            Some(v) => [v]
                .into_iter()
                .filter(|&v| f.node(v) == s_y.node(b))
                .collect(),
            None => (0..x.node_count())
                .filter(|&v| f.node(v) == s_y.node(b))
                .collect(),
        })
        .collect();
    let arc_cands: Vec<Vec<usize>> = (0..target.arc_count())
        .map(|e| match forced_arc[e] {
            Some(a) => [a]
                .into_iter()
                .filter(|&a| f.arc(a) == s_y.arc(e))
                .collect(),
            None => (0..x.arc_count())
                .filter(|&a| f.arc(a) == s_y.arc(e))
                .collect(),
        })
        .collect();
    if node_cands.iter().any(Vec::is_empty) || arc_cands.iter().any(Vec::is_empty) {
        return Ok(LevelSearch::Refuted);
    }
    let mut order: Vec<usize> = (0..target.node_count()).collect();
    order.sort_by_key(|&b| (node_cands[b].len(), b));
    let mut position = vec![0; order.len()];
    for (i, &b) in order.iter().enumerate() {
        position[b] = i;
    }
    let mut search = LevelInverseSearch {
        x,
        target,
        order: &order,
        position: &position,
        node_cands: &node_cands,
        arc_cands: &arc_cands,
        assignment: vec![usize::MAX; target.node_count()],
    };
    if !search.run(0) {
        return Ok(LevelSearch::Refuted);
    }
    let node_map = search.assignment;
    let arc_map = (0..target.arc_count())
        .map(|e| {
            let (s, t) = (node_map[target.source(e)], node_map[target.target(e)]);
            *arc_cands[e]
                .iter()
                .find(|&&a| x.source(a) == s && x.target(a) == t)
                .expect("checked during search")
        })
        .collect();
    let q = GraphMorphism::new(Arc::new(any.graph.clone()), x.clone(), node_map, arc_map)?;
    Ok(LevelSearch::Witness(q))
}

struct LevelInverseSearch<'a> {
    x: &'a Graph,
    target: &'a Graph,
    order: &'a [usize],
    position: &'a [usize],
    node_cands: &'a [Vec<usize>],
    arc_cands: &'a [Vec<usize>],
    assignment: Vec<usize>,
}

impl LevelInverseSearch<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let b = self.order[depth];
        for i in 0..self.node_cands[b].len() {
            self.assignment[b] = self.node_cands[b][i];
            if self.arcs_feasible(b, depth) && self.run(depth + 1) {
                return true;
            }
        }
        self.assignment[b] = usize::MAX;
        false
    }

    /// Every arc touching `b` whose other end is already assigned has a
    /// candidate with matching endpoints.
    fn arcs_feasible(&self, b: usize, depth: usize) -> bool {
        let t = self.target;
        let assigned = |v: usize| self.position[v] <= depth;
        t.out_arcs(b).iter().chain(t.in_arcs(b)).all(|&e| {
            let (s, tt) = (t.source(e), t.target(e));
            if !assigned(s) || !assigned(tt) {
                return true;
            }
            let (qs, qt) = (self.assignment[s], self.assignment[tt]);
            self.arc_cands[e]
                .iter()
                .any(|&a| self.x.source(a) == qs && self.x.target(a) == qt)
        })
    }
}

/// A morphism `Aⁿ(X) → Y`, read as a level-`n` arrow from `X` to `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelArrow {
    source: Arc<Graph>,
    level: usize,
    map: GraphMorphism,
}

impl LevelArrow {
    /// Checks that the domain of `map` is `A^level(source)`.
    pub fn new(source: Arc<Graph>, level: usize, map: GraphMorphism) -> Result<LevelArrow> {
        if path_graph(&source, level).graph != **map.domain() {
            return Err(Error::Precondition(format!(
                "domain is not A^{level}({}) under the path id scheme",
                source.name()
            )));
        }
        Ok(LevelArrow { source, level, map })
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn map(&self) -> &GraphMorphism {
        &self.map
    }
}

/// `g ⊙ f = g ∘ Aᵐ(f)`, a level `m+n` arrow, for `f` at level `n` and `g`
/// at level `m`.
pub fn compose_level_arrows(f: &LevelArrow, g: &LevelArrow) -> Result<LevelArrow> {
    if !same_host(f.map.codomain(), &g.source) {
        return Err(Error::DomainMismatch);
    }
    let lifted = crate::functors::arc_graph_of_morphism(&f.map, g.level);
    let map = crate::morphism::compose(&g.map, &lifted)?;
    LevelArrow::new(f.source.clone(), f.level + g.level, map)
}

/// Why a morphism cannot be an N-equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// `C_m` of domain and codomain have different sizes.
    CycleCount {
        m: usize,
        domain: BigInt,
        codomain: BigInt,
    },
    /// Two closed walks of length `m` with the same image.
    NotInjective {
        m: usize,
        first: EPWalk,
        second: EPWalk,
    },
    /// The domain is walkable but `f` is not a covering at this node.
    NotCovering { node: String },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::CycleCount {
                m,
                domain,
                codomain,
            } => {
                write!(f, "c[{m}] differs: {domain} vs {codomain}")
            }
            Refutation::NotInjective { m, first, second } => {
                write!(f, "length {m} closed walks collide: {first} and {second}")
            }
            Refutation::NotCovering { node } => write!(f, "not a covering at node {node}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Refuted(Refutation),
    ConsistentUpTo(usize),
}

/// Necessary conditions for `N(f)` to be bijective: `f` induces a bijection
/// `C_m(X) → C_m(Y)` for `m ≤ period_bound`, and is a covering when `X` is
/// walkable. A semi-decision: consistency proves nothing.
pub fn n_equivalence_evidence(f: &GraphMorphism, period_bound: usize) -> Evidence {
    let x = f.domain();
    let y = f.codomain();
    for m in 1..=period_bound {
        let cx = cycle_count(x, m);
        let cy = cycle_count(y, m);
        if cx != cy {
            return Evidence::Refuted(Refutation::CycleCount {
                m,
                domain: cx,
                codomain: cy,
            });
        }
        let mut seen: std::collections::HashMap<Vec<usize>, usize> = Default::default();
        let walks = periodic_walks(x, m);
        for (i, w) in walks.iter().enumerate() {
            let image: Vec<usize> = w.period().iter().map(|&a| f.arc(a)).collect();
            if let Some(&j) = seen.get(&image) {
                return Evidence::Refuted(Refutation::NotInjective {
                    m,
                    first: walks[j].clone(),
                    second: w.clone(),
                });
            }
            seen.insert(image, i);
        }
    }
    if is_walkable(x) && !is_covering(f) {
        let node = (0..x.node_count())
            .find(|&v| !crate::fibration::covers_at(f, v))
            .expect("some node fails");
        return Evidence::Refuted(Refutation::NotCovering {
            node: x.node_id(node).to_string(),
        });
    }
    Evidence::ConsistentUpTo(period_bound)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZetaVerdict {
    Equal,
    RefutedAt {
        m: usize,
        x_count: BigInt,
        y_count: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasalVerdict {
    Isomorphic,
    Refuted(NotIsomorphic),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Size {
    pub nodes: usize,
    pub arcs: usize,
}

impl Size {
    fn of(g: &Graph) -> Size {
        Size {
            nodes: g.node_count(),
            arcs: g.arc_count(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overall {
    Refuted,
    ConsistentUpTo(usize),
}

/// Necessary-condition battery for N-equivalence of two graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub zeta: ZetaVerdict,
    pub basal: BasalVerdict,
    pub walkable: (Size, Size),
    pub basal_sizes: (Size, Size),
    pub overall: Overall,
}

impl EquivalenceReport {
    /// Equal zeta series (`∼_C`), reported on its own.
    pub fn c_equivalent(&self) -> bool {
        self.zeta == ZetaVerdict::Equal
    }

    pub fn is_refuted(&self) -> bool {
        self.overall == Overall::Refuted
    }

    /// The same report with the roles of the two graphs exchanged.
    pub fn swapped(&self) -> EquivalenceReport {
        let zeta = match &self.zeta {
            ZetaVerdict::Equal => ZetaVerdict::Equal,
            ZetaVerdict::RefutedAt {
                m,
                x_count,
                y_count,
            } => ZetaVerdict::RefutedAt {
                m: *m,
                x_count: y_count.clone(),
                y_count: x_count.clone(),
            },
        };
        let basal = match &self.basal {
            BasalVerdict::Refuted(NotIsomorphic::NodeCount(a, b)) => {
                BasalVerdict::Refuted(NotIsomorphic::NodeCount(*b, *a))
            }
            BasalVerdict::Refuted(NotIsomorphic::ArcCount(a, b)) => {
                BasalVerdict::Refuted(NotIsomorphic::ArcCount(*b, *a))
            }
            other => other.clone(),
        };
        EquivalenceReport {
            zeta,
            basal,
            walkable: (self.walkable.1, self.walkable.0),
            basal_sizes: (self.basal_sizes.1, self.basal_sizes.0),
            overall: self.overall,
        }
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.zeta {
            ZetaVerdict::Equal => writeln!(f, "zeta=equal")?,
            ZetaVerdict::RefutedAt {
                m,
                x_count,
                y_count,
            } => {
                writeln!(f, "zeta=refuted")?;
                writeln!(f, "zeta_refuted_at={m}")?;
                writeln!(f, "zeta_counts={x_count},{y_count}")?;
            }
        }
        match &self.basal {
            BasalVerdict::Isomorphic => writeln!(f, "basal=isomorphic")?,
            BasalVerdict::Refuted(why) => {
                writeln!(f, "basal=refuted")?;
                writeln!(f, "basal_reason={why}")?;
            }
        }
        let (bx, by) = self.basal_sizes;
        writeln!(f, "basal_x={} nodes,{} arcs", bx.nodes, bx.arcs)?;
        writeln!(f, "basal_y={} nodes,{} arcs", by.nodes, by.arcs)?;
        let (wx, wy) = self.walkable;
        writeln!(f, "walkable_x={} nodes,{} arcs", wx.nodes, wx.arcs)?;
        writeln!(f, "walkable_y={} nodes,{} arcs", wy.nodes, wy.arcs)?;
        writeln!(f, "c_equivalent={}", self.c_equivalent())?;
        match self.overall {
            Overall::Refuted => writeln!(f, "n_equivalent=refuted"),
            Overall::ConsistentUpTo(d) => writeln!(f, "n_equivalent=consistent-up-to({d})"),
        }
    }
}

/// Compares zeta series and the basal graphs of the walkable subgraphs.
pub fn compare_battery(x: &Arc<Graph>, y: &Arc<Graph>, degree: usize) -> EquivalenceReport {
    let zeta = if zeta_equal(x, y, degree) {
        ZetaVerdict::Equal
    } else {
        let m = first_cycle_mismatch(x, y).expect("different zeta series differ in some c_m");
        ZetaVerdict::RefutedAt {
            m,
            x_count: cycle_count(x, m),
            y_count: cycle_count(y, m),
        }
    };
    let (wx, _) = walkable_subgraph(x);
    let (wy, _) = walkable_subgraph(y);
    let bx = basal_of(&wx, &RepresentativeChoice::default());
    let by = basal_of(&wy, &RepresentativeChoice::default());
    let basal = match graph_iso(bx.base(), by.base()) {
        Ok(_) => BasalVerdict::Isomorphic,
        Err(why) => BasalVerdict::Refuted(why),
    };
    let overall = if zeta == ZetaVerdict::Equal && basal == BasalVerdict::Isomorphic {
        Overall::ConsistentUpTo(degree)
    } else {
        Overall::Refuted
    };
    EquivalenceReport {
        zeta,
        basal,
        walkable: (Size::of(&wx), Size::of(&wy)),
        basal_sizes: (Size::of(bx.base()), Size::of(by.base())),
        overall,
    }
}
