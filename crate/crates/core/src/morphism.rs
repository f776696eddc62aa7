//! Graph morphisms and the finite limits/colimits built from them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{uniquify, ArcData, Graph};

/// A node map and an arc map commuting with source and target.
///
/// Two morphisms are equal when their domains, codomains and both maps are
/// equal; there is no quotienting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    domain: Arc<Graph>,
    codomain: Arc<Graph>,
    node_map: Vec<usize>,
    arc_map: Vec<usize>,
}

impl GraphMorphism {
    /// Builds a morphism from index maps, checking totality and
    /// `s∘f₁ = f₀∘s`, `t∘f₁ = f₀∘t`.
    pub fn new(
        domain: Arc<Graph>,
        codomain: Arc<Graph>,
        node_map: Vec<usize>,
        arc_map: Vec<usize>,
    ) -> Result<Self> {
        if node_map.len() != domain.node_count() {
            return Err(Error::InvalidMorphism(format!(
                "node map has {} entries for {} nodes",
                node_map.len(),
                domain.node_count()
            )));
        }
        if arc_map.len() != domain.arc_count() {
            return Err(Error::InvalidMorphism(format!(
                "arc map has {} entries for {} arcs",
                arc_map.len(),
                domain.arc_count()
            )));
        }
        if let Some(&v) = node_map.iter().find(|&&v| v >= codomain.node_count()) {
            return Err(Error::InvalidMorphism(format!(
                "node index {v} out of range"
            )));
        }
        if let Some(&a) = arc_map.iter().find(|&&a| a >= codomain.arc_count()) {
            return Err(Error::InvalidMorphism(format!(
                "arc index {a} out of range"
            )));
        }
        let f = GraphMorphism {
            domain,
            codomain,
            node_map,
            arc_map,
        };
        if let Some(bad) = f.first_non_commuting_arc() {
            return Err(Error::InvalidMorphism(format!(
                "arc {} => {} does not commute with source/target",
                f.domain.arc_id(bad),
                f.codomain.arc_id(f.arc_map[bad])
            )));
        }
        Ok(f)
    }

    /// Builds a morphism from `(domain id, codomain id)` pairs.
    pub fn from_ids<'a>(
        domain: Arc<Graph>,
        codomain: Arc<Graph>,
        nodes: impl IntoIterator<Item = (&'a str, &'a str)>,
        arcs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut node_map = vec![None; domain.node_count()];
        for (x, y) in nodes {
            let i = domain
                .node_index(x)
                .ok_or_else(|| Error::InvalidMorphism(format!("unknown domain node {x}")))?;
            let j = codomain
                .node_index(y)
                .ok_or_else(|| Error::InvalidMorphism(format!("unknown codomain node {y}")))?;
            if node_map[i].replace(j).is_some() {
                return Err(Error::InvalidMorphism(format!("node {x} mapped twice")));
            }
        }
        let mut arc_map = vec![None; domain.arc_count()];
        for (a, b) in arcs {
            let i = domain
                .arc_index(a)
                .ok_or_else(|| Error::InvalidMorphism(format!("unknown domain arc {a}")))?;
            let j = codomain
                .arc_index(b)
                .ok_or_else(|| Error::InvalidMorphism(format!("unknown codomain arc {b}")))?;
            if arc_map[i].replace(j).is_some() {
                return Err(Error::InvalidMorphism(format!("arc {a} mapped twice")));
            }
        }
        let node_map = node_map
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::InvalidMorphism(format!("node {} is not mapped", domain.node_id(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let arc_map = arc_map
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::InvalidMorphism(format!("arc {} is not mapped", domain.arc_id(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GraphMorphism::new(domain, codomain, node_map, arc_map)
    }

    /// Used where commutation holds by construction.
    pub(crate) fn new_unchecked(
        domain: Arc<Graph>,
        codomain: Arc<Graph>,
        node_map: Vec<usize>,
        arc_map: Vec<usize>,
    ) -> Self {
        let f = GraphMorphism {
            domain,
            codomain,
            node_map,
            arc_map,
        };
        debug_assert!(f.first_non_commuting_arc().is_none());
        f
    }

    pub fn identity(graph: Arc<Graph>) -> Self {
        GraphMorphism {
            node_map: (0..graph.node_count()).collect(),
            arc_map: (0..graph.arc_count()).collect(),
            domain: graph.clone(),
            codomain: graph,
        }
    }

    /// The unique morphism into a graph with one node and one loop.
    pub fn to_terminal(domain: Arc<Graph>, terminal: Arc<Graph>) -> Result<Self> {
        if terminal.node_count() != 1 || terminal.arc_count() != 1 {
            return Err(Error::Precondition(
                "codomain is not a terminal graph".into(),
            ));
        }
        let n = domain.node_count();
        let m = domain.arc_count();
        Ok(GraphMorphism::new_unchecked(
            domain,
            terminal,
            vec![0; n],
            vec![0; m],
        ))
    }

    fn first_non_commuting_arc(&self) -> Option<usize> {
        (0..self.domain.arc_count()).find(|&a| {
            let b = self.arc_map[a];
            self.codomain.source(b) != self.node_map[self.domain.source(a)]
                || self.codomain.target(b) != self.node_map[self.domain.target(a)]
        })
    }

    pub fn domain(&self) -> &Arc<Graph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Graph> {
        &self.codomain
    }

    pub fn node_map(&self) -> &[usize] {
        &self.node_map
    }

    pub fn arc_map(&self) -> &[usize] {
        &self.arc_map
    }

    pub fn node(&self, node: usize) -> usize {
        self.node_map[node]
    }

    pub fn arc(&self, arc: usize) -> usize {
        self.arc_map[arc]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GraphMorphism) -> Result<GraphMorphism> {
        compose(next, self)
    }

    /// True iff both the node map and the arc map are surjective.
    pub fn is_epic(&self) -> bool {
        surjective(&self.node_map, self.codomain.node_count())
            && surjective(&self.arc_map, self.codomain.arc_count())
    }

    /// True iff the morphism is bijective on nodes and on arcs.
    pub fn is_isomorphism(&self) -> bool {
        self.domain.node_count() == self.codomain.node_count()
            && self.domain.arc_count() == self.codomain.arc_count()
            && self.is_epic()
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GraphMorphism> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut node_map = vec![0; self.node_map.len()];
        for (i, &j) in self.node_map.iter().enumerate() {
            node_map[j] = i;
        }
        let mut arc_map = vec![0; self.arc_map.len()];
        for (i, &j) in self.arc_map.iter().enumerate() {
            arc_map[j] = i;
        }
        Some(GraphMorphism::new_unchecked(
            self.codomain.clone(),
            self.domain.clone(),
            node_map,
            arc_map,
        ))
    }
}

fn surjective(map: &[usize], size: usize) -> bool {
    let mut hit = vec![false; size];
    for &v in map {
        hit[v] = true;
    }
    hit.into_iter().all(|h| h)
}

/// `g ∘ f`; requires `codomain(f) = domain(g)`.
pub fn compose(g: &GraphMorphism, f: &GraphMorphism) -> Result<GraphMorphism> {
    if !Arc::ptr_eq(&f.codomain, &g.domain) && *f.codomain != *g.domain {
        return Err(Error::DomainMismatch);
    }
    Ok(GraphMorphism {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        node_map: f.node_map.iter().map(|&v| g.node_map[v]).collect(),
        arc_map: f.arc_map.iter().map(|&a| g.arc_map[a]).collect(),
    })
}

/// Disjoint union with injections. Ids are prefixed with `1:` and `2:`.
pub fn coproduct(x: &Arc<Graph>, y: &Arc<Graph>) -> (Arc<Graph>, GraphMorphism, GraphMorphism) {
    let nx = x.node_count();
    let mx = x.arc_count();
    let nodes = x
        .nodes()
        .iter()
        .map(|n| format!("1:{n}"))
        .chain(y.nodes().iter().map(|n| format!("2:{n}")))
        .collect();
    let arcs = x
        .arcs()
        .iter()
        .map(|a| ArcData {
            id: format!("1:{}", a.id),
            source: a.source,
            target: a.target,
        })
        .chain(y.arcs().iter().map(|a| ArcData {
            id: format!("2:{}", a.id),
            source: a.source + nx,
            target: a.target + nx,
        }))
        .collect();
    let sum = Arc::new(Graph::from_parts(
        format!("{}+{}", x.name(), y.name()),
        nodes,
        arcs,
    ));
    let left =
        GraphMorphism::new_unchecked(x.clone(), sum.clone(), (0..nx).collect(), (0..mx).collect());
    let right = GraphMorphism::new_unchecked(
        y.clone(),
        sum.clone(),
        (nx..nx + y.node_count()).collect(),
        (mx..mx + y.arc_count()).collect(),
    );
    (sum, left, right)
}

/// The pullback `X ×_B Y` of `p: X → B` and `q: Y → B`, with its two
/// projections. Node and arc ids are `(x,y)` pairs in row-major input order.
pub fn fiber_product(
    p: &GraphMorphism,
    q: &GraphMorphism,
) -> Result<(Arc<Graph>, GraphMorphism, GraphMorphism)> {
    if !Arc::ptr_eq(&p.codomain, &q.codomain) && *p.codomain != *q.codomain {
        return Err(Error::CodomainMismatch);
    }
    let x = &p.domain;
    let y = &q.domain;
    let mut node_pairs = Vec::new();
    let mut node_of = vec![vec![None; y.node_count()]; x.node_count()];
    for (i, row) in node_of.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            if p.node_map[i] == q.node_map[j] {
                *slot = Some(node_pairs.len());
                node_pairs.push((i, j));
            }
        }
    }
    let mut arc_pairs = Vec::new();
    for a in 0..x.arc_count() {
        for b in 0..y.arc_count() {
            if p.arc_map[a] == q.arc_map[b] {
                arc_pairs.push((a, b));
            }
        }
    }
    let node_ids = uniquify(
        node_pairs
            .iter()
            .map(|&(i, j)| format!("({},{})", x.node_id(i), y.node_id(j)))
            .collect(),
    );
    let arc_ids = uniquify(
        arc_pairs
            .iter()
            .map(|&(a, b)| format!("({},{})", x.arc_id(a), y.arc_id(b)))
            .collect(),
    );
    // endpoints of a matched arc pair are matched node pairs since p and q commute
    let arcs = arc_pairs
        .iter()
        .zip(arc_ids)
        .map(|(&(a, b), id)| ArcData {
            id,
            source: node_of[x.source(a)][y.source(b)].expect("pullback source"),
            target: node_of[x.target(a)][y.target(b)].expect("pullback target"),
        })
        .collect();
    let e = Arc::new(Graph::from_parts(
        format!("{}x{}", x.name(), y.name()),
        node_ids,
        arcs,
    ));
    let pr_x = GraphMorphism::new_unchecked(
        e.clone(),
        x.clone(),
        node_pairs.iter().map(|&(i, _)| i).collect(),
        arc_pairs.iter().map(|&(a, _)| a).collect(),
    );
    let pr_y = GraphMorphism::new_unchecked(
        e.clone(),
        y.clone(),
        node_pairs.iter().map(|&(_, j)| j).collect(),
        arc_pairs.iter().map(|&(_, b)| b).collect(),
    );
    Ok((e, pr_x, pr_y))
}

/// Every morphism `X → Y`, in lexicographic order of (node map, arc map),
/// stopping after `limit` results.
pub fn all_morphisms(x: &Arc<Graph>, y: &Arc<Graph>, limit: usize) -> Vec<GraphMorphism> {
    let mut out = Vec::new();
    let mut node_map = vec![0; x.node_count()];
    enumerate_nodes(x, y, 0, &mut node_map, &mut out, limit);
    out
}

fn enumerate_nodes(
    x: &Arc<Graph>,
    y: &Arc<Graph>,
    i: usize,
    node_map: &mut Vec<usize>,
    out: &mut Vec<GraphMorphism>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if i == x.node_count() {
        let candidates: Vec<Vec<usize>> = x
            .arcs()
            .iter()
            .map(|a| {
                y.out_arcs(node_map[a.source])
                    .iter()
                    .copied()
                    .filter(|&b| y.target(b) == node_map[a.target])
                    .collect()
            })
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return;
        }
        let mut choice = vec![0; candidates.len()];
        loop {
            if out.len() >= limit {
                return;
            }
            let arc_map = choice
                .iter()
                .zip(&candidates)
                .map(|(&c, cs)| cs[c])
                .collect();
            out.push(GraphMorphism::new_unchecked(
                x.clone(),
                y.clone(),
                node_map.clone(),
                arc_map,
            ));
            // odometer over arc choices, last arc fastest
            let mut k = choice.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    }
    for v in 0..y.node_count() {
        node_map[i] = v;
        // prune: arcs among assigned nodes need a target arc
        let ok = x.arcs().iter().all(|a| {
            a.source > i
                || a.target > i
                || y.multiplicity(node_map[a.source], node_map[a.target]) > 0
        });
        if ok {
            enumerate_nodes(x, y, i + 1, node_map, out, limit);
        }
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
    fn identity_laws() {
        let c3 = g(StandardGraph::Cycle(3));
        let one = g(StandardGraph::Terminal);
        let f = GraphMorphism::to_terminal(c3.clone(), one.clone()).unwrap();
        assert_eq!(compose(&GraphMorphism::identity(one), &f).unwrap(), f);
        assert_eq!(compose(&f, &GraphMorphism::identity(c3)).unwrap(), f);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let c3 = g(StandardGraph::Cycle(3));
        let c2 = g(StandardGraph::Cycle(2));
        let err = compose(&GraphMorphism::identity(c3), &GraphMorphism::identity(c2));
        assert_eq!(err.unwrap_err(), Error::DomainMismatch);
    }

    #[test]
    fn non_commuting_map_rejected() {
        let p1 = g(StandardGraph::Path(1));
        let err = GraphMorphism::new(p1.clone(), p1, vec![1, 0], vec![0]);
        assert!(matches!(err, Err(Error::InvalidMorphism(_))));
    }

    #[test]
    fn from_ids_requires_total_maps() {
        let p1 = g(StandardGraph::Path(1));
        let err = GraphMorphism::from_ids(p1.clone(), p1, [("0", "0")], []);
        assert!(matches!(err, Err(Error::InvalidMorphism(_))));
    }

    #[test]
    fn epic_checks() {
        let d = g(StandardGraph::D);
        let a = g(StandardGraph::A);
        let incl = GraphMorphism::new(d, a.clone(), vec![0], vec![]).unwrap();
        assert!(!incl.is_epic());
        assert!(GraphMorphism::identity(a).is_epic());
    }

    #[test]
    fn arc_surjectivity_is_checked() {
        // both nodes hit but one of two parallel arcs missed
        let x = Arc::new(Graph::new("x", ["u"], [("l", "u", "u")]).unwrap());
        let y = Arc::new(Graph::new("y", ["v"], [("m", "v", "v"), ("n", "v", "v")]).unwrap());
        let f = GraphMorphism::new(x, y, vec![0], vec![0]).unwrap();
        assert!(!f.is_epic());
    }

    #[test]
    fn coproduct_counts_add() {
        let d = g(StandardGraph::D);
        let (sum, l, r) = coproduct(&d, &d);
        assert_eq!(sum.node_count(), 2);
        assert_eq!(sum.arc_count(), 0);
        assert_ne!(l.node(0), r.node(0));
        let c3 = g(StandardGraph::Cycle(3));
        let b2 = g(StandardGraph::Bouquet(2));
        let (sum, _, _) = coproduct(&c3, &b2);
        assert_eq!(sum.node_count(), 4);
        assert_eq!(sum.arc_count(), 5);
        let (sum, _, _) = coproduct(&g(StandardGraph::Initial), &c3);
        assert_eq!(sum.node_count(), 3);
    }

    #[test]
    fn pullback_of_identities() {
        let b = g(StandardGraph::Bouquet(2));
        let id = GraphMorphism::identity(b.clone());
        let (e, px, py) = fiber_product(&id, &id).unwrap();
        assert_eq!(e.node_count(), 1);
        assert_eq!(e.arc_count(), 2);
        assert_eq!(px, py);
    }

    #[test]
    fn product_over_terminal() {
        let one = g(StandardGraph::Terminal);
        let c2 = g(StandardGraph::Cycle(2));
        let c3 = g(StandardGraph::Cycle(3));
        let p = GraphMorphism::to_terminal(c2, one.clone()).unwrap();
        let q = GraphMorphism::to_terminal(c3, one).unwrap();
        let (e, px, py) = fiber_product(&p, &q).unwrap();
        assert_eq!(e.node_count(), 6);
        assert_eq!(e.arc_count(), 6);
        assert_eq!(compose(&p, &px).unwrap(), compose(&q, &py).unwrap());
    }

    #[test]
    fn bouquet_endomorphisms() {
        let b2 = g(StandardGraph::Bouquet(2));
        assert_eq!(all_morphisms(&b2, &b2, usize::MAX).len(), 4);
        let c2 = g(StandardGraph::Cycle(2));
        let one = g(StandardGraph::Terminal);
        assert!(all_morphisms(&one, &c2, usize::MAX).is_empty());
        assert_eq!(all_morphisms(&c2, &c2, usize::MAX).len(), 2);
    }
}
