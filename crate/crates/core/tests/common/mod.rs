//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use arcwalk::random::random_graph;
use arcwalk::{Graph, GraphMorphism, IntPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SUITE_SEED: u64 = 0x005e_ed0f_a7c5;

/// The fixed 50-graph random suite: 1..=6 nodes, 0..=10 arcs, loops and
/// parallel arcs allowed.
pub fn suite() -> Vec<Arc<Graph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    (0..50)
        .map(|i| Arc::new(random_graph(&mut rng, 6, 10).with_name(format!("S{i}"))))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nodes `0..=4`, arcs `(0,i)` and `(i,0)` for `i = 1..4`.
pub fn star() -> Arc<Graph> {
    let nodes = ["0", "1", "2", "3", "4"];
    let mut arcs = Vec::new();
    for i in 1..=4 {
        arcs.push((format!("(0,{i})"), "0".to_string(), i.to_string()));
        arcs.push((format!("({i},0)"), i.to_string(), "0".to_string()));
    }
    Arc::new(Graph::new("X", nodes, arcs).unwrap())
}

/// Integers mod 4 with arcs `(i,i+1)` and `(i,i-1)`.
pub fn square() -> Arc<Graph> {
    let nodes = ["0", "1", "2", "3"];
    let mut arcs = Vec::new();
    for i in 0..4 {
        for j in [(i + 1) % 4, (i + 3) % 4] {
            arcs.push((format!("({i},{j})"), i.to_string(), j.to_string()));
        }
    }
    Arc::new(Graph::new("Y", nodes, arcs).unwrap())
}

/// The two-node graph of the cautionary basing example, and its two maps
/// onto the two-loop bouquet.
pub struct Cautionary {
    pub x: Arc<Graph>,
    pub b: Arc<Graph>,
    pub b_prime: Arc<Graph>,
    pub p: GraphMorphism,
    pub p_prime: GraphMorphism,
}

pub fn cautionary() -> Cautionary {
    let x = Arc::new(
        Graph::new(
            "X",
            ["x0", "x1"],
            [
                ("b'", "x0", "x1"),
                ("b''", "x1", "x0"),
                ("c'", "x0", "x0"),
                ("c''", "x1", "x1"),
            ],
        )
        .unwrap(),
    );
    let bouquet =
        |name: &str| Arc::new(Graph::new(name, ["x"], [("b", "x", "x"), ("c", "x", "x")]).unwrap());
    let b = bouquet("B");
    let b_prime = bouquet("B'");
    let nodes = [("x0", "x"), ("x1", "x")];
    let p = GraphMorphism::from_ids(
        x.clone(),
        b.clone(),
        nodes,
        [("b'", "b"), ("b''", "b"), ("c'", "c"), ("c''", "c")],
    )
    .unwrap();
    let p_prime = GraphMorphism::from_ids(
        x.clone(),
        b_prime.clone(),
        nodes,
        [("b'", "b"), ("c'", "b"), ("b''", "c"), ("c''", "c")],
    )
    .unwrap();
    Cautionary {
        x,
        b,
        b_prime,
        p,
        p_prime,
    }
}

/// Closed arc sequences of length `m`, enumerated by brute force.
pub fn closed_walks(x: &Graph, m: usize) -> Vec<Vec<usize>> {
    fn go(
        x: &Graph,
        start: usize,
        at: usize,
        m: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == m {
            if at == start {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..x.arc_count() {
            if x.source(a) == at {
                cur.push(a);
                go(x, start, x.target(a), m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..x.node_count() {
        go(x, v, v, m, &mut Vec::new(), &mut out);
    }
    out
}

/// `det(xI − A)` by Laplace expansion along the first row.
pub fn char_poly_cofactor(x: &Graph) -> IntPoly {
    let n = x.node_count();
    let entry = |i: usize, j: usize| {
        let a = x
            .arcs()
            .iter()
            .filter(|e| e.source == i && e.target == j)
            .count() as i64;
        if i == j {
            IntPoly::from_i64(&[-a, 1])
        } else {
            IntPoly::from_i64(&[-a])
        }
    };
    let m: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| (0..n).map(|j| entry(i, j)).collect())
        .collect();
    fn det(m: &[Vec<IntPoly>], rows: &[usize], cols: &[usize]) -> IntPoly {
        if rows.is_empty() {
            return IntPoly::one();
        }
        let r = rows[0];
        let mut total = IntPoly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
            let term = m[r][c].mul(&det(m, &rows[1..], &rest));
            total = if k % 2 == 0 {
                total.add(&term)
            } else {
                total.sub(&term)
            };
        }
        total
    }
    let idx: Vec<usize> = (0..n).collect();
    det(&m, &idx, &idx)
}

/// Walkable iff some node reachable from `v` (including `v`) lies on a
/// cycle, decided by plain forward searches.
pub fn reaches_cycle(x: &Graph) -> Vec<bool> {
    let n = x.node_count();
    let reach = |v: usize| {
        let mut seen = vec![false; n];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for a in 0..x.arc_count() {
                if x.source(a) == u && !seen[x.target(a)] {
                    seen[x.target(a)] = true;
                    stack.push(x.target(a));
                }
            }
        }
        seen
    };
    // u lies on a cycle iff u is reachable from one of its successors
    let on_cycle: Vec<bool> = (0..n)
        .map(|u| (0..x.arc_count()).any(|a| x.source(a) == u && reach(x.target(a))[u]))
        .collect();
    (0..n)
        .map(|v| reach(v).iter().zip(&on_cycle).any(|(&r, &c)| r && c))
        .collect()
}

/// Canonical labels for rooted in-trees: a node's label is determined by the
/// sorted labels of the sources of its in-arcs. The interner is shared so
/// labels are comparable across trees.
#[derive(Default)]
pub struct TreeCanon {
    interner: HashMap<Vec<usize>, usize>,
}

impl TreeCanon {
    /// Label of the root (the unique node without out-arcs).
    pub fn root_label(&mut self, tree: &Graph) -> usize {
        let n = tree.node_count();
        let mut out_deg = vec![0; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in tree.arcs() {
            out_deg[a.source] += 1;
            children[a.target].push(a.source);
        }
        let root = (0..n).find(|&v| out_deg[v] == 0).expect("tree has a root");
        // post-order without recursion
        let mut label = vec![usize::MAX; n];
        let mut stack = vec![(root, false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                let mut key: Vec<usize> = children[v].iter().map(|&c| label[c]).collect();
                key.sort_unstable();
                let next = self.interner.len();
                label[v] = *self.interner.entry(key).or_insert(next);
            } else {
                stack.push((v, true));
                for &c in &children[v] {
                    stack.push((c, false));
                }
            }
        }
        label[root]
    }
}
