//! Multigraph isomorphism by colour refinement and backtracking.
//!
//! Both graphs are refined together so colours are comparable across them.
//! Nodes of the first graph are then assigned in order of increasing colour
//! class size, and each candidate is checked against the arc multiplicities
//! of all previously assigned pairs. A complete node bijection that preserves
//! every multiplicity extends to an arc bijection by pairing parallel arcs in
//! input order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::graph::Graph;
use crate::morphism::GraphMorphism;

/// Why two graphs are not isomorphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotIsomorphic {
    NodeCount(usize, usize),
    ArcCount(usize, usize),
    /// Colour refinement produced different colour histograms.
    Invariants,
    /// Backtracking search exhausted every compatible assignment.
    SearchExhausted,
}

impl fmt::Display for NotIsomorphic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotIsomorphic::NodeCount(a, b) => write!(f, "node counts differ ({a} vs {b})"),
            NotIsomorphic::ArcCount(a, b) => write!(f, "arc counts differ ({a} vs {b})"),
            NotIsomorphic::Invariants => f.write_str("refined degree invariants differ"),
            NotIsomorphic::SearchExhausted => f.write_str("no multiplicity-preserving bijection"),
        }
    }
}

/// Finds an isomorphism `x → y` or explains why none exists.
pub fn graph_iso(x: &Arc<Graph>, y: &Arc<Graph>) -> Result<GraphMorphism, NotIsomorphic> {
    if x.node_count() != y.node_count() {
        return Err(NotIsomorphic::NodeCount(x.node_count(), y.node_count()));
    }
    if x.arc_count() != y.arc_count() {
        return Err(NotIsomorphic::ArcCount(x.arc_count(), y.arc_count()));
    }
    let n = x.node_count();
    let (cx, cy) = refine_jointly(x, y);
    let mut hx = cx.clone();
    let mut hy = cy.clone();
    hx.sort_unstable();
    hy.sort_unstable();
    if hx != hy {
        return Err(NotIsomorphic::Invariants);
    }

    let mx = Multiplicities::new(x);
    let my = Multiplicities::new(y);
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &cx {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&cx[v]], cx[v], v));

    let mut search = Search {
        order: &order,
        cx: &cx,
        cy: &cy,
        mx: &mx,
        my: &my,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if !search.run(0) {
        return Err(NotIsomorphic::SearchExhausted);
    }
    let node_map = search.map;

    let mut y_arcs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (b, arc) in y.arcs().iter().enumerate() {
        y_arcs.entry((arc.source, arc.target)).or_default().push(b);
    }
    let mut taken: HashMap<(usize, usize), usize> = HashMap::new();
    let arc_map = x
        .arcs()
        .iter()
        .map(|a| {
            let key = (node_map[a.source], node_map[a.target]);
            let k = taken.entry(key).or_default();
            let b = y_arcs[&key][*k];
            *k += 1;
            b
        })
        .collect();
    Ok(GraphMorphism::new_unchecked(
        x.clone(),
        y.clone(),
        node_map,
        arc_map,
    ))
}

pub fn is_isomorphic(x: &Arc<Graph>, y: &Arc<Graph>) -> bool {
    graph_iso(x, y).is_ok()
}

struct Multiplicities {
    n: usize,
    counts: Vec<u32>,
}

impl Multiplicities {
    fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let mut counts = vec![0; n * n];
        for a in g.arcs() {
            counts[a.source * n + a.target] += 1;
        }
        Multiplicities { n, counts }
    }

    fn get(&self, u: usize, v: usize) -> u32 {
        self.counts[u * self.n + v]
    }
}

struct Search<'a> {
    order: &'a [usize],
    cx: &'a [usize],
    cy: &'a [usize],
    mx: &'a Multiplicities,
    my: &'a Multiplicities,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        for v in 0..self.cy.len() {
            if self.used[v] || self.cy[v] != self.cx[u] || !self.consistent(u, v, depth) {
                continue;
            }
            self.map[u] = v;
            self.used[v] = true;
            if self.run(depth + 1) {
                return true;
            }
            self.used[v] = false;
            self.map[u] = usize::MAX;
        }
        false
    }

    fn consistent(&self, u: usize, v: usize, depth: usize) -> bool {
        if self.mx.get(u, u) != self.my.get(v, v) {
            return false;
        }
        self.order[..depth].iter().all(|&w| {
            let z = self.map[w];
            self.mx.get(u, w) == self.my.get(v, z) && self.mx.get(w, u) == self.my.get(z, v)
        })
    }
}

/// Colour refinement over the disjoint union of `x` and `y`. A node's colour
/// is refined by the multisets of (neighbour colour, multiplicity) along out-
/// and in-arcs. Colours are canonical: numbered by sorted signature.
fn refine_jointly(x: &Graph, y: &Graph) -> (Vec<usize>, Vec<usize>) {
    let graphs = [x, y];
    let mut colours: [Vec<usize>; 2] = [vec![0; x.node_count()], vec![0; y.node_count()]];
    let mut classes = 1;
    loop {
        type Signature = (usize, Vec<(usize, u32)>, Vec<(usize, u32)>);
        let sigs: Vec<Vec<Signature>> = graphs
            .iter()
            .zip(&colours)
            .map(|(g, col)| {
                (0..g.node_count())
                    .map(|v| {
                        let mut out: BTreeMap<(usize, usize), u32> = BTreeMap::new();
                        for &a in g.out_arcs(v) {
                            *out.entry((col[g.target(a)], g.target(a))).or_default() += 1;
                        }
                        let mut inn: BTreeMap<(usize, usize), u32> = BTreeMap::new();
                        for &a in g.in_arcs(v) {
                            *inn.entry((col[g.source(a)], g.source(a))).or_default() += 1;
                        }
                        let strip = |m: BTreeMap<(usize, usize), u32>| {
                            let mut s: Vec<(usize, u32)> =
                                m.into_iter().map(|((c, _), k)| (c, k)).collect();
                            s.sort_unstable();
                            s
                        };
                        (col[v], strip(out), strip(inn))
                    })
                    .collect()
            })
            .collect();
        let mut palette: BTreeMap<&Signature, usize> = BTreeMap::new();
        for s in sigs.iter().flatten() {
            palette.insert(s, 0);
        }
        for (i, c) in palette.values_mut().enumerate() {
            *c = i;
        }
        let next = [
            sigs[0].iter().map(|s| palette[s]).collect::<Vec<_>>(),
            sigs[1].iter().map(|s| palette[s]).collect::<Vec<_>>(),
        ];
        let count = palette.len();
        colours = next;
        if count == classes {
            return (colours[0].clone(), colours[1].clone());
        }
        classes = count;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{standard_graph, StandardGraph};

    fn g(kind: StandardGraph) -> Arc<Graph> {
        Arc::new(standard_graph(kind).unwrap())
    }

    #[test]
    fn relabelled_cycle_is_found() {
        let c3 = g(StandardGraph::Cycle(3));
        let perm = Arc::new(
            Graph::new(
                "c3'",
                ["b", "c", "a"],
                [("z", "c", "a"), ("x", "a", "b"), ("y", "b", "c")],
            )
            .unwrap(),
        );
        let w = graph_iso(&c3, &perm).unwrap();
        assert!(w.is_isomorphism());
    }

    #[test]
    fn different_sizes_refuted() {
        let err = graph_iso(&g(StandardGraph::Cycle(3)), &g(StandardGraph::Cycle(4)));
        assert_eq!(err.unwrap_err(), NotIsomorphic::NodeCount(3, 4));
    }

    #[test]
    fn parallel_arcs_matter() {
        // same adjacency support, different multiplicities
        let x = Arc::new(
            Graph::new(
                "x",
                ["u", "v"],
                [("a", "u", "v"), ("b", "u", "v"), ("c", "v", "u")],
            )
            .unwrap(),
        );
        let y = Arc::new(
            Graph::new(
                "y",
                ["u", "v"],
                [("a", "u", "v"), ("b", "v", "u"), ("c", "v", "v")],
            )
            .unwrap(),
        );
        assert!(graph_iso(&x, &y).is_err());
        let w = graph_iso(&x, &x).unwrap();
        assert_eq!(w, GraphMorphism::identity(x));
    }

    #[test]
    fn regular_graphs_need_backtracking() {
        // C6 versus two disjoint triangles: same degrees everywhere
        let c6 = g(StandardGraph::Cycle(6));
        let c3 = g(StandardGraph::Cycle(3));
        let (two_c3, _, _) = crate::morphism::coproduct(&c3, &c3);
        assert!(graph_iso(&c6, &two_c3).is_err());
    }
}
