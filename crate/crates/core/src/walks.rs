//! Eventually periodic walks and the walk-space ultrametric.
//!
//! A walk is an infinite forward sequence of composable arcs. Only the
//! eventually periodic ones are represented: a finite preperiod followed by a
//! closed path repeated forever. These are dense in the walk space and every
//! question asked of them here is decidable.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::functors::{path_graph, PathKey};
use crate::graph::Graph;
use crate::morphism::GraphMorphism;

pub(crate) fn same_host(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn composable(host: &Graph, arcs: &[usize]) -> bool {
    arcs.windows(2)
        .all(|w| host.target(w[0]) == host.source(w[1]))
}

/// A finite path: a start node and a (possibly empty) composable arc list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    host: Arc<Graph>,
    start: usize,
    arcs: Vec<usize>,
}

impl Path {
    pub fn new(host: Arc<Graph>, start: usize, arcs: Vec<usize>) -> Result<Path> {
        if start >= host.node_count() {
            return Err(Error::IllFormedWalk(format!(
                "start node {start} out of range"
            )));
        }
        if arcs.iter().any(|&a| a >= host.arc_count()) {
            return Err(Error::IllFormedWalk("arc index out of range".into()));
        }
        if arcs.first().is_some_and(|&a| host.source(a) != start) || !composable(&host, &arcs) {
            return Err(Error::IllFormedWalk("arcs are not composable".into()));
        }
        Ok(Path { host, start, arcs })
    }

    pub fn host(&self) -> &Arc<Graph> {
        &self.host
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn end(&self) -> usize {
        self.arcs
            .last()
            .map_or(self.start, |&a| self.host.target(a))
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if !same_host(&self.host, &other.host) {
            return Err(Error::HostMismatch);
        }
        if self.end() != other.start {
            return Err(Error::IllFormedWalk("paths do not meet".into()));
        }
        let mut arcs = self.arcs.clone();
        arcs.extend_from_slice(&other.arcs);
        Ok(Path {
            host: self.host.clone(),
            start: self.start,
            arcs,
        })
    }
}

/// Distance between walks: zero or a power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dyadic {
    Zero,
    /// `2^e`.
    Pow2(i64),
}

impl Dyadic {
    pub fn one() -> Dyadic {
        Dyadic::Pow2(0)
    }

    /// Multiplies by `2^k`.
    pub fn scale(self, k: i64) -> Dyadic {
        match self {
            Dyadic::Zero => Dyadic::Zero,
            Dyadic::Pow2(e) => Dyadic::Pow2(e + k),
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dyadic::Zero, Dyadic::Zero) => Ordering::Equal,
            (Dyadic::Zero, _) => Ordering::Less,
            (_, Dyadic::Zero) => Ordering::Greater,
            (Dyadic::Pow2(a), Dyadic::Pow2(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Dyadic::Zero => f.write_str("0"),
            Dyadic::Pow2(e) if e >= 0 => write!(f, "{}", BigUint::one() << e as u64),
            Dyadic::Pow2(e) => write!(f, "1/{}", BigUint::one() << e.unsigned_abs()),
        }
    }
}

/// An eventually periodic walk: `preperiod · period · period · ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EPWalk {
    host: Arc<Graph>,
    pre: Vec<usize>,
    per: Vec<usize>,
}

impl EPWalk {
    pub fn new(host: Arc<Graph>, pre: Vec<usize>, per: Vec<usize>) -> Result<EPWalk> {
        if per.is_empty() {
            return Err(Error::IllFormedWalk("period must be nonempty".into()));
        }
        if pre.iter().chain(&per).any(|&a| a >= host.arc_count()) {
            return Err(Error::IllFormedWalk("arc index out of range".into()));
        }
        if !composable(&host, &pre) || !composable(&host, &per) {
            return Err(Error::IllFormedWalk("arcs are not composable".into()));
        }
        if host.target(*per.last().unwrap()) != host.source(per[0]) {
            return Err(Error::IllFormedWalk("period is not a closed path".into()));
        }
        if let Some(&last) = pre.last() {
            if host.target(last) != host.source(per[0]) {
                return Err(Error::IllFormedWalk(
                    "preperiod does not reach the period".into(),
                ));
            }
        }
        Ok(EPWalk { host, pre, per })
    }

    pub fn from_ids(host: Arc<Graph>, pre: &[&str], per: &[&str]) -> Result<EPWalk> {
        let look = |ids: &[&str]| {
            ids.iter()
                .map(|id| {
                    host.arc_index(id)
                        .ok_or_else(|| Error::IllFormedWalk(format!("unknown arc {id}")))
                })
                .collect::<Result<Vec<_>>>()
        };
        let pre = look(pre)?;
        let per = look(per)?;
        EPWalk::new(host, pre, per)
    }

    pub fn host(&self) -> &Arc<Graph> {
        &self.host
    }

    pub fn preperiod(&self) -> &[usize] {
        &self.pre
    }

    pub fn period(&self) -> &[usize] {
        &self.per
    }

    pub fn source(&self) -> usize {
        self.host.source(self.arc_at(0))
    }

    /// The `k`-th arc of the infinite sequence.
    pub fn arc_at(&self, k: usize) -> usize {
        if k < self.pre.len() {
            self.pre[k]
        } else {
            self.per[(k - self.pre.len()) % self.per.len()]
        }
    }

    /// The first `len` arcs.
    pub fn unroll(&self, len: usize) -> Vec<usize> {
        (0..len).map(|k| self.arc_at(k)).collect()
    }

    /// The unique presentation with a primitive period and shortest preperiod.
    pub fn normalize(&self) -> EPWalk {
        let len = self.per.len();
        let root = (1..=len)
            .find(|&d| len.is_multiple_of(d) && (0..len).all(|i| self.per[i] == self.per[i % d]))
            .unwrap_or(len);
        let mut per: Vec<usize> = self.per[..root].to_vec();
        let mut pre = self.pre.clone();
        while pre.last().is_some_and(|a| a == per.last().unwrap()) {
            pre.pop();
            per.rotate_right(1);
        }
        EPWalk {
            host: self.host.clone(),
            pre,
            per,
        }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// True iff both presentations denote the same infinite walk.
    pub fn same_walk(&self, other: &EPWalk) -> bool {
        same_host(&self.host, &other.host) && {
            let a = self.normalize();
            let b = other.normalize();
            a.pre == b.pre && a.per == b.per
        }
    }

    /// Drops the first arc.
    pub fn shift(&self) -> EPWalk {
        let mut w = self.clone();
        if w.pre.is_empty() {
            w.per.rotate_left(1);
        } else {
            w.pre.remove(0);
        }
        w.normalize()
    }

    /// The initial length-`n` path `s_n(w)`.
    pub fn source_path(&self, n: usize) -> Path {
        Path {
            host: self.host.clone(),
            start: self.source(),
            arcs: self.unroll(n),
        }
    }

    /// A length after which two walks agreeing so far agree forever.
    fn agreement_bound(&self, other: &EPWalk) -> usize {
        let (p, q) = (self.per.len(), other.per.len());
        self.pre.len() + other.pre.len() + p / gcd(p, q) * q
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for EPWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids = |arcs: &[usize]| {
            arcs.iter()
                .map(|&a| self.host.arc_id(a))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "walk {} pre=[{}] per=[{}]",
            self.host.name(),
            ids(&self.pre),
            ids(&self.per)
        )
    }
}

/// `d(w, v) = 2⁻ⁿ` for the smallest `n` with `s_n(w) ≠ s_n(v)`, and 0 for
/// equal walks.
pub fn distance(w: &EPWalk, v: &EPWalk) -> Result<Dyadic> {
    if !same_host(&w.host, &v.host) {
        return Err(Error::HostMismatch);
    }
    if w.source() != v.source() {
        return Ok(Dyadic::one());
    }
    let bound = w.agreement_bound(v);
    Ok(match (0..bound).find(|&k| w.arc_at(k) != v.arc_at(k)) {
        Some(k) => Dyadic::Pow2(-(k as i64 + 1)),
        None => Dyadic::Zero,
    })
}

/// Membership of `w` in the cylinder set `U(alpha)`.
pub fn cylinder_contains(alpha: &Path, w: &EPWalk) -> Result<bool> {
    if !same_host(&alpha.host, &w.host) {
        return Err(Error::HostMismatch);
    }
    Ok(w.source() == alpha.start
        && alpha
            .arcs
            .iter()
            .enumerate()
            .all(|(k, &a)| w.arc_at(k) == a))
}

/// Every based closed walk of length `n` as a pure-periodic walk, not
/// normalized: the census has `c_n` entries. Ordered by start node, then
/// lexicographically by arc index.
pub fn periodic_walks(x: &Arc<Graph>, n: usize) -> Vec<EPWalk> {
    assert!(n >= 1, "closed walks have positive length");
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(n);
    fn extend(
        x: &Arc<Graph>,
        start: usize,
        at: usize,
        n: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<EPWalk>,
    ) {
        if stack.len() == n {
            if at == start {
                out.push(EPWalk {
                    host: x.clone(),
                    pre: Vec::new(),
                    per: stack.clone(),
                });
            }
            return;
        }
        for &a in x.out_arcs(at) {
            stack.push(a);
            extend(x, start, x.target(a), n, stack, out);
            stack.pop();
        }
    }
    for v in 0..x.node_count() {
        extend(x, v, v, n, &mut stack, &mut out);
    }
    out
}

/// `N(f)`: the image of a walk under a graph morphism.
pub fn map_walk(f: &GraphMorphism, w: &EPWalk) -> Result<EPWalk> {
    if !same_host(f.domain(), &w.host) {
        return Err(Error::HostMismatch);
    }
    Ok(EPWalk {
        host: f.codomain().clone(),
        pre: w.pre.iter().map(|&a| f.arc(a)).collect(),
        per: w.per.iter().map(|&a| f.arc(a)).collect(),
    }
    .normalize())
}

/// The sliding block code of `f: Aⁿ(X) → Y` applied to a walk on `X`:
/// output arc `k` is the image of the length-`n+1` window starting at arc
/// `k`. The domain of `f` must be `Aⁿ(X)` under the canonical id scheme.
pub fn apply_block_code(f: &GraphMorphism, n: usize, w: &EPWalk) -> Result<EPWalk> {
    let tower = path_graph(&w.host, n);
    if **f.domain() != tower.graph {
        return Err(Error::BlockCodeDomain {
            level: n,
            graph: w.host.name().to_string(),
        });
    }
    let arcs = tower.arc_lookup();
    let window = |k: usize| {
        let path = w.unroll(k + n + 1)[k..].to_vec();
        let key = PathKey {
            start: w.host.source(path[0]),
            arcs: path,
        };
        f.arc(arcs[&key])
    };
    let p = w.pre.len();
    let q = w.per.len();
    Ok(EPWalk {
        host: f.codomain().clone(),
        pre: (0..p).map(window).collect(),
        per: (p..p + q).map(window).collect(),
    }
    .normalize())
}
