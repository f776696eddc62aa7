//! Random multigraphs and walks for test suites and benchmarks.

use std::sync::Arc;

use rand::Rng;

use crate::equivalence::walkable_subgraph;
use crate::graph::{ArcData, Graph};
use crate::walks::EPWalk;

/// A graph with `1..=max_nodes` nodes and `0..=max_arcs` arcs whose
/// endpoints are drawn uniformly, so loops and parallel arcs occur.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, max_nodes: usize, max_arcs: usize) -> Graph {
    let n = rng.gen_range(1..=max_nodes);
    let m = rng.gen_range(0..=max_arcs);
    random_graph_sized(rng, n, m)
}

pub fn random_graph_sized<R: Rng + ?Sized>(rng: &mut R, nodes: usize, arcs: usize) -> Graph {
    let name = format!("R{nodes}x{arcs}");
    let node_ids = (0..nodes).map(|k| format!("n{k}")).collect();
    let arcs = (0..arcs)
        .map(|k| ArcData {
            id: format!("e{k}"),
            source: rng.gen_range(0..nodes),
            target: rng.gen_range(0..nodes),
        })
        .collect();
    Graph::from_parts(name, node_ids, arcs)
}

/// A random eventually periodic walk, or `None` if the graph has no walks.
///
/// Walks at least `min_len` random steps inside the walkable subgraph, then
/// continues until it revisits a node and closes the period there.
pub fn random_walk<R: Rng + ?Sized>(
    rng: &mut R,
    host: &Arc<Graph>,
    min_len: usize,
) -> Option<EPWalk> {
    let (_, incl) = walkable_subgraph(host);
    let mut alive = vec![false; host.node_count()];
    for &v in incl.node_map() {
        alive[v] = true;
    }
    let starts: Vec<usize> = (0..host.node_count()).filter(|&v| alive[v]).collect();
    if starts.is_empty() {
        return None;
    }
    let mut at = starts[rng.gen_range(0..starts.len())];
    let mut visits: Vec<Vec<usize>> = vec![Vec::new(); host.node_count()];
    let mut arcs = Vec::new();
    loop {
        if arcs.len() >= min_len && !visits[at].is_empty() {
            let seen = &visits[at];
            let i = seen[rng.gen_range(0..seen.len())];
            let per = arcs[i..].to_vec();
            arcs.truncate(i);
            return Some(EPWalk::new(host.clone(), arcs, per).expect("closed by construction"));
        }
        visits[at].push(arcs.len());
        let out: Vec<usize> = host
            .out_arcs(at)
            .iter()
            .copied()
            .filter(|&a| alive[host.target(a)])
            .collect();
        let a = out[rng.gen_range(0..out.len())];
        arcs.push(a);
        at = host.target(a);
    }
}
