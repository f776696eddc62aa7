//! The arc-graph functor `A`, its iterates `Aⁿ`, source truncations, and
//! dynamic graphs.
//!
//! `Aⁿ(X)` has the length-`n` paths of `X` as nodes and the length-`n+1`
//! paths as arcs. Ids follow one scheme throughout: a path is named by its
//! arc ids joined with [`PATH_SEP`], and a length-0 path by its node id. The
//! scheme is produced by iterating [`arc_graph`], which names the composable
//! pair `(a₁, a₂)` as `a₁` followed by the last segment of `a₂`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{uniquify, ArcData, Graph, PATH_SEP};
use crate::morphism::GraphMorphism;

/// A finite path, stored as a start node and arc indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathKey {
    pub start: usize,
    pub arcs: Vec<usize>,
}

/// `Aⁿ(X)` together with the path of `X` behind each node and arc.
#[derive(Debug, Clone)]
pub struct PathGraph {
    pub graph: Graph,
    pub level: usize,
    pub node_paths: Vec<PathKey>,
    pub arc_paths: Vec<PathKey>,
}

impl PathGraph {
    /// Index of the node of `Aⁿ(X)` carrying the given length-`n` path.
    pub fn node_lookup(&self) -> HashMap<&PathKey, usize> {
        self.node_paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect()
    }

    pub fn arc_lookup(&self) -> HashMap<&PathKey, usize> {
        self.arc_paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect()
    }
}

fn last_segment(id: &str) -> &str {
    id.rsplit(PATH_SEP).next().unwrap_or(id)
}

/// The arc graph together with the composable pair behind each new arc.
fn arc_graph_with_pairs(x: &Graph) -> (Graph, Vec<(usize, usize)>) {
    let nodes = x.arcs().iter().map(|a| a.id.clone()).collect();
    let pairs: Vec<(usize, usize)> = (0..x.arc_count())
        .flat_map(|a1| x.out_arcs(x.target(a1)).iter().map(move |&a2| (a1, a2)))
        .collect();
    let ids = uniquify(
        pairs
            .iter()
            .map(|&(a1, a2)| format!("{}{PATH_SEP}{}", x.arc_id(a1), last_segment(x.arc_id(a2))))
            .collect(),
    );
    let arcs = pairs
        .iter()
        .zip(ids)
        .map(|(&(a1, a2), id)| ArcData {
            id,
            source: a1,
            target: a2,
        })
        .collect();
    (
        Graph::from_parts(format!("A({})", x.name()), nodes, arcs),
        pairs,
    )
}

/// `A(X)`: nodes are the arcs of `X`, arcs are composable pairs.
pub fn arc_graph(x: &Graph) -> Graph {
    arc_graph_with_pairs(x).0
}

/// `Aⁿ(X)` by `n`-fold iteration of [`arc_graph`]; `A⁰(X)` is `X` itself.
pub fn arc_graph_n(x: &Graph, n: usize) -> Graph {
    path_graph(x, n).graph
}

/// `Aⁿ(X)` with the underlying paths recorded.
pub fn path_graph(x: &Graph, n: usize) -> PathGraph {
    let mut current = PathGraph {
        graph: x.clone(),
        level: 0,
        node_paths: (0..x.node_count())
            .map(|v| PathKey {
                start: v,
                arcs: Vec::new(),
            })
            .collect(),
        arc_paths: x
            .arcs()
            .iter()
            .enumerate()
            .map(|(i, a)| PathKey {
                start: a.source,
                arcs: vec![i],
            })
            .collect(),
    };
    for _ in 0..n {
        let (graph, pairs) = arc_graph_with_pairs(&current.graph);
        let arc_paths = pairs
            .iter()
            .map(|&(e1, e2)| {
                let mut p = current.arc_paths[e1].clone();
                p.arcs.push(
                    *current.arc_paths[e2]
                        .arcs
                        .last()
                        .expect("nonempty arc path"),
                );
                p
            })
            .collect();
        current = PathGraph {
            graph,
            level: current.level + 1,
            node_paths: std::mem::take(&mut current.arc_paths),
            arc_paths,
        };
    }
    if n >= 2 {
        current.graph = current.graph.with_name(format!("A^{n}({})", x.name()));
    }
    current
}

fn prefix(p: &PathKey, len: usize) -> PathKey {
    PathKey {
        start: p.start,
        arcs: p.arcs[..len].to_vec(),
    }
}

/// The source truncation `s_{m,n}: A^{n+m}(X) → Aⁿ(X)`, keeping the initial
/// length-`n` subpath of each node and length-`n+1` subpath of each arc.
pub fn source_truncation(x: &Graph, m: usize, n: usize) -> GraphMorphism {
    let long = path_graph(x, n + m);
    let short = path_graph(x, n);
    truncation_between(&long, &short)
}

pub(crate) fn truncation_between(long: &PathGraph, short: &PathGraph) -> GraphMorphism {
    let n = short.level;
    let nodes = short.node_lookup();
    let arcs = short.arc_lookup();
    let node_map = long
        .node_paths
        .iter()
        .map(|p| nodes[&prefix(p, n)])
        .collect();
    let arc_map = long
        .arc_paths
        .iter()
        .map(|p| arcs[&prefix(p, n + 1)])
        .collect();
    GraphMorphism::new_unchecked(
        Arc::new(long.graph.clone()),
        Arc::new(short.graph.clone()),
        node_map,
        arc_map,
    )
}

/// `Aⁿ(f): Aⁿ(X) → Aⁿ(Y)`, acting on paths arc by arc.
pub fn arc_graph_of_morphism(f: &GraphMorphism, n: usize) -> GraphMorphism {
    let dom = path_graph(f.domain(), n);
    let cod = path_graph(f.codomain(), n);
    morphism_between(f, &dom, &cod)
}

pub(crate) fn morphism_between(
    f: &GraphMorphism,
    dom: &PathGraph,
    cod: &PathGraph,
) -> GraphMorphism {
    let image = |p: &PathKey| PathKey {
        start: f.node(p.start),
        arcs: p.arcs.iter().map(|&a| f.arc(a)).collect(),
    };
    let nodes = cod.node_lookup();
    let arcs = cod.arc_lookup();
    let node_map = dom.node_paths.iter().map(|p| nodes[&image(p)]).collect();
    let arc_map = dom.arc_paths.iter().map(|p| arcs[&image(p)]).collect();
    GraphMorphism::new_unchecked(
        Arc::new(dom.graph.clone()),
        Arc::new(cod.graph.clone()),
        node_map,
        arc_map,
    )
}

/// A finite set with an endofunction `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteNSet {
    elements: Vec<String>,
    tau: Vec<usize>,
}

impl FiniteNSet {
    pub fn new(elements: Vec<String>, tau: Vec<usize>) -> Result<Self> {
        if tau.len() != elements.len() {
            return Err(Error::InvalidNSet(format!(
                "tau has {} entries for {} elements",
                tau.len(),
                elements.len()
            )));
        }
        if let Some(&t) = tau.iter().find(|&&t| t >= elements.len()) {
            return Err(Error::InvalidNSet(format!("tau value {t} out of range")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = elements.iter().find(|e| !seen.insert(e.as_str())) {
            return Err(Error::InvalidNSet(format!("duplicate element {dup}")));
        }
        Ok(FiniteNSet { elements, tau })
    }

    /// `ℤ/n` with `τ(k) = k + 1`.
    pub fn cyclic(n: usize) -> Self {
        FiniteNSet {
            elements: (0..n).map(|k| k.to_string()).collect(),
            tau: (0..n).map(|k| (k + 1) % n).collect(),
        }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.tau[i] == i)
    }
}

/// `D(S, τ)`: every element is a node and an arc; arc `x` runs `x → τ(x)`.
/// Arc ids equal node ids.
pub fn dynamic_from_nset(s: &FiniteNSet) -> Graph {
    let arcs = s
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| ArcData {
            id: e.clone(),
            source: i,
            target: s.tau[i],
        })
        .collect();
    Graph::from_parts("D(S)".into(), s.elements.clone(), arcs)
}

/// True iff every node has exactly one outgoing arc.
pub fn is_dynamic(x: &Graph) -> bool {
    (0..x.node_count()).all(|v| x.out_arcs(v).len() == 1)
}

fn require_dynamic(x: &Graph) -> Result<()> {
    match (0..x.node_count()).find(|&v| x.out_arcs(v).len() != 1) {
        Some(v) => Err(Error::NotDynamic(
            x.node_id(v).to_string(),
            x.out_arcs(v).len(),
        )),
        None => Ok(()),
    }
}

/// The N-set of nodes of a dynamic graph, `τ(x)` the target of the unique
/// arc leaving `x`.
pub fn nset_from_dynamic(x: &Graph) -> Result<FiniteNSet> {
    require_dynamic(x)?;
    Ok(FiniteNSet {
        elements: x.nodes().to_vec(),
        tau: (0..x.node_count())
            .map(|v| x.target(x.out_arcs(v)[0]))
            .collect(),
    })
}

/// The shift endomorphism `σ` of a dynamic graph, with `s(σ(a)) = t(a)`.
pub fn sigma_endomorphism(x: &Arc<Graph>) -> Result<GraphMorphism> {
    require_dynamic(x)?;
    let node_map = (0..x.node_count())
        .map(|v| x.target(x.out_arcs(v)[0]))
        .collect();
    let arc_map = (0..x.arc_count())
        .map(|a| x.out_arcs(x.target(a))[0])
        .collect();
    Ok(GraphMorphism::new_unchecked(
        x.clone(),
        x.clone(),
        node_map,
        arc_map,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::morphism::compose;
    use crate::standard::{standard_graph, StandardGraph};

    fn g(kind: StandardGraph) -> Graph {
        standard_graph(kind).unwrap()
    }

    fn iso(a: &Graph, b: &Graph) -> bool {
        is_isomorphic(&Arc::new(a.clone()), &Arc::new(b.clone()))
    }

    #[test]
    fn arc_graph_of_a_is_d() {
        assert!(iso(&arc_graph(&g(StandardGraph::A)), &g(StandardGraph::D)));
    }

    #[test]
    fn arc_graph_of_bouquet_is_complete() {
        let a = arc_graph(&g(StandardGraph::Bouquet(3)));
        assert!(iso(&a, &g(StandardGraph::Complete(3))));
    }

    #[test]
    fn iterate_ids_are_paths() {
        let p3 = g(StandardGraph::Path(3));
        let a2 = arc_graph_n(&p3, 2);
        assert_eq!(a2.nodes(), ["(0,1)/(1,2)", "(1,2)/(2,3)"]);
        assert_eq!(a2.arc_id(0), "(0,1)/(1,2)/(2,3)");
        assert_eq!(arc_graph_n(&p3, 0), p3);
    }

    #[test]
    fn colliding_last_segments_get_distinct_ids() {
        // two arcs leaving y share the last segment "c"
        let x = Graph::new(
            "x",
            ["u", "v", "w"],
            [("a", "u", "v"), ("p/c", "v", "w"), ("q/c", "v", "w")],
        )
        .unwrap();
        let a = arc_graph(&x);
        assert_eq!(a.arc_count(), 2);
        assert_ne!(a.arc_id(0), a.arc_id(1));
    }

    #[test]
    fn truncation_to_level_zero_is_source() {
        let b2 = g(StandardGraph::Bouquet(2));
        let s = source_truncation(&b2, 1, 0);
        let ax = s.domain().clone();
        for v in 0..ax.node_count() {
            assert_eq!(s.node(v), b2.source(v));
        }
        assert_eq!(
            source_truncation(&b2, 0, 2),
            GraphMorphism::identity(Arc::new(arc_graph_n(&b2, 2)))
        );
    }

    #[test]
    fn truncations_compose() {
        let x = Graph::new(
            "x",
            ["0", "1"],
            [
                ("a", "0", "1"),
                ("b", "1", "0"),
                ("c", "1", "1"),
                ("d", "1", "1"),
            ],
        )
        .unwrap();
        // s_{1,0} ∘ s_{1,1} = s_{2,0}
        let lhs = compose(&source_truncation(&x, 1, 0), &source_truncation(&x, 1, 1)).unwrap();
        assert_eq!(lhs, source_truncation(&x, 2, 0));
    }

    #[test]
    fn functor_on_identity() {
        let x = Arc::new(g(StandardGraph::Complete(2)));
        let id = GraphMorphism::identity(x.clone());
        for n in 0..3 {
            let an = arc_graph_of_morphism(&id, n);
            assert_eq!(an, GraphMorphism::identity(an.domain().clone()));
        }
    }

    #[test]
    fn cyclic_nset_gives_cycle() {
        for n in 1..6 {
            assert!(iso(
                &dynamic_from_nset(&FiniteNSet::cyclic(n)),
                &g(StandardGraph::Cycle(n))
            ));
        }
        let one = FiniteNSet::cyclic(1);
        assert!(iso(&dynamic_from_nset(&one), &g(StandardGraph::Terminal)));
    }

    #[test]
    fn fixed_point_and_two_cycle() {
        let s = FiniteNSet::new(vec!["f".into(), "p".into(), "q".into()], vec![0, 2, 1]).unwrap();
        let d = dynamic_from_nset(&s);
        assert_eq!(d.arcs().iter().filter(|a| a.source == a.target).count(), 1);
        assert_eq!(d.multiplicity(1, 2) + d.multiplicity(2, 1), 2);
        let loops: Vec<usize> = (0..d.arc_count())
            .filter(|&a| d.source(a) == d.target(a))
            .collect();
        assert_eq!(s.fixed_points().collect::<Vec<_>>(), loops);
    }

    #[test]
    fn nset_round_trip() {
        let s = FiniteNSet::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![1, 2, 1, 0],
        )
        .unwrap();
        let d = dynamic_from_nset(&s);
        assert!(is_dynamic(&d));
        assert_eq!(nset_from_dynamic(&d).unwrap(), s);
        assert_eq!(dynamic_from_nset(&nset_from_dynamic(&d).unwrap()), d);
    }

    #[test]
    fn non_dynamic_rejected() {
        let b2 = Arc::new(g(StandardGraph::Bouquet(2)));
        assert!(!is_dynamic(&b2));
        assert!(matches!(
            nset_from_dynamic(&b2),
            Err(Error::NotDynamic(_, 2))
        ));
        assert!(sigma_endomorphism(&b2).is_err());
    }

    #[test]
    fn sigma_rotates_cycle() {
        let c4 = Arc::new(g(StandardGraph::Cycle(4)));
        let s = sigma_endomorphism(&c4).unwrap();
        assert_eq!(s.node_map(), [1, 2, 3, 0]);
        let one = Arc::new(g(StandardGraph::Terminal));
        assert_eq!(
            sigma_endomorphism(&one).unwrap(),
            GraphMorphism::identity(one)
        );
    }

    #[test]
    fn nset_rejects_bad_tau() {
        assert!(FiniteNSet::new(vec!["a".into()], vec![1]).is_err());
        assert!(FiniteNSet::new(vec!["a".into(), "a".into()], vec![0, 0]).is_err());
    }
}
