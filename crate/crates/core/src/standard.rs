//! The standard small graphs.
//!
//! Id schemes: nodes are decimal integers `0..`; path, cycle and complete
//! graph arcs are `(i,j)`; bouquet loops are `l0, l1, ...`.

use crate::error::{Error, Result};
use crate::graph::{ArcData, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardGraph {
    /// `P(n)`: nodes `0..=n`, arcs `(k,k+1)`.
    Path(usize),
    /// `C(n)`: nodes `0..n`, arcs `(k,k+1 mod n)`. Requires `n ≥ 1`.
    Cycle(usize),
    /// `D = P(0)`, a single node.
    D,
    /// `A = P(1)`, a single arc.
    A,
    /// `B(k)`: one node with `k` loops.
    Bouquet(usize),
    /// `K(k)`: `k` nodes with exactly one arc for each ordered pair.
    Complete(usize),
    /// The terminal graph `1`: one node, one loop. Identical to `C(1)`.
    Terminal,
    /// The initial (empty) graph `0`.
    Initial,
}

pub fn standard_graph(kind: StandardGraph) -> Result<Graph> {
    let numbered = |n: usize| (0..n).map(|k| k.to_string()).collect::<Vec<_>>();
    let pair_arc = |i: usize, j: usize| ArcData {
        id: format!("({i},{j})"),
        source: i,
        target: j,
    };
    let graph = match kind {
        StandardGraph::Path(n) => Graph::from_parts(
            format!("P{n}"),
            numbered(n + 1),
            (0..n).map(|k| pair_arc(k, k + 1)).collect(),
        ),
        StandardGraph::Cycle(0) => return Err(Error::EmptyCycle),
        StandardGraph::Cycle(n) => Graph::from_parts(
            format!("C{n}"),
            numbered(n),
            (0..n).map(|k| pair_arc(k, (k + 1) % n)).collect(),
        ),
        StandardGraph::D => standard_graph(StandardGraph::Path(0))?.with_name("D"),
        StandardGraph::A => standard_graph(StandardGraph::Path(1))?.with_name("A"),
        StandardGraph::Bouquet(k) => Graph::from_parts(
            format!("B{k}"),
            numbered(1),
            (0..k)
                .map(|i| ArcData {
                    id: format!("l{i}"),
                    source: 0,
                    target: 0,
                })
                .collect(),
        ),
        StandardGraph::Complete(k) => Graph::from_parts(
            format!("K{k}"),
            numbered(k),
            (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .map(|(i, j)| pair_arc(i, j))
                .collect(),
        ),
        StandardGraph::Terminal => standard_graph(StandardGraph::Cycle(1))?.with_name("1"),
        StandardGraph::Initial => Graph::empty("0"),
    };
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate;

    #[test]
    fn p1_has_one_arc() {
        let a = standard_graph(StandardGraph::Path(1)).unwrap();
        assert_eq!((a.node_count(), a.arc_count()), (2, 1));
        assert_eq!(a, standard_graph(StandardGraph::A).unwrap());
        assert_eq!(standard_graph(StandardGraph::D).unwrap().node_count(), 1);
    }

    #[test]
    fn c1_is_terminal() {
        assert_eq!(
            standard_graph(StandardGraph::Cycle(1)).unwrap(),
            standard_graph(StandardGraph::Terminal).unwrap()
        );
    }

    #[test]
    fn c0_rejected() {
        assert_eq!(
            standard_graph(StandardGraph::Cycle(0)),
            Err(Error::EmptyCycle)
        );
    }

    #[test]
    fn complete_has_all_ordered_pairs() {
        let k2 = standard_graph(StandardGraph::Complete(2)).unwrap();
        assert_eq!(k2.arc_count(), 4);
        assert_eq!(k2.arcs().iter().filter(|a| a.source == a.target).count(), 2);
        assert!(k2.is_separated());
    }

    #[test]
    fn all_kinds_validate() {
        use StandardGraph::*;
        for kind in [
            Path(0),
            Path(4),
            Cycle(1),
            Cycle(5),
            D,
            A,
            Bouquet(0),
            Bouquet(3),
            Complete(0),
            Complete(3),
            Terminal,
            Initial,
        ] {
            let g = standard_graph(kind).unwrap();
            assert!(validate(&g.to_raw()).is_ok(), "{kind:?}");
        }
    }
}
