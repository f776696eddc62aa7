//! Cycle counts and zeta series.
//!
//! For a finite graph with adjacency matrix `A`, the number of based closed
//! walks of length `m` is `c_m = tr(Aᵐ)`, and the zeta series
//! `exp(Σ c_m uᵐ/m)` equals `1/det(I − uA)`. The reversed characteristic
//! polynomial `det(I − uA)` is therefore a finite certificate for the whole
//! series. Everything here is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::Graph;
use crate::poly::IntPoly;

/// Square matrix of arc multiplicities, rows and columns in node input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl AdjMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let order = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == order),
            "matrix must be square"
        );
        AdjMatrix {
            order,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.order.max(1))
            .take(self.order)
            .map(<[_]>::to_vec)
            .collect()
    }

    fn identity(order: usize) -> Self {
        let mut entries = vec![BigInt::zero(); order * order];
        for i in 0..order {
            entries[i * order + i] = BigInt::one();
        }
        AdjMatrix { order, entries }
    }

    fn mul(&self, other: &AdjMatrix) -> AdjMatrix {
        let n = self.order;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        AdjMatrix { order: n, entries }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.order).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn entry_sum(&self) -> BigInt {
        self.entries.iter().sum()
    }

    /// `A⁰, A¹, ..., Aᵈ`.
    pub fn powers(&self, d: usize) -> Vec<AdjMatrix> {
        let mut out = Vec::with_capacity(d + 1);
        out.push(AdjMatrix::identity(self.order));
        for k in 0..d {
            out.push(out[k].mul(self));
        }
        out
    }
}

pub fn adjacency(x: &Graph) -> AdjMatrix {
    let n = x.node_count();
    let mut entries = vec![BigInt::zero(); n * n];
    for a in x.arcs() {
        entries[a.source * n + a.target] += 1;
    }
    AdjMatrix { order: n, entries }
}

/// `c_m`, the number of closed walks of length `m`, as `tr(Aᵐ)`.
pub fn cycle_count(x: &Graph, m: usize) -> BigInt {
    assert!(m >= 1, "cycle counts start at m = 1");
    adjacency(x).powers(m)[m].trace()
}

/// `c_m` by depth-first enumeration of closed arc sequences. Exponential in
/// `m`; the caller bounds it.
pub fn cycle_count_bruteforce(x: &Graph, m: usize) -> u64 {
    assert!(m >= 1, "cycle counts start at m = 1");
    fn extend(x: &Graph, start: usize, at: usize, left: usize) -> u64 {
        if left == 0 {
            return u64::from(at == start);
        }
        x.out_arcs(at)
            .iter()
            .map(|&a| extend(x, start, x.target(a), left - 1))
            .sum()
    }
    (0..x.node_count()).map(|v| extend(x, v, v, m)).sum()
}

/// `det(xI − A)` by Berkowitz's division-free algorithm.
///
/// Works from the bottom-right corner outwards: writing the trailing
/// principal block as `[[a, R], [C, M]]`, the characteristic polynomial of the
/// block is `T · χ_M` where `T` is lower-triangular Toeplitz with first column
/// `(1, −a, −RC, −RMC, −RM²C, ...)`.
pub fn char_poly(a: &AdjMatrix) -> IntPoly {
    let n = a.order();
    // coefficients highest degree first, starting from the empty block
    let mut chi: Vec<BigInt> = vec![BigInt::one()];
    for k in (0..n).rev() {
        let size = n - k - 1; // order of M
        let r: Vec<&BigInt> = (k + 1..n).map(|j| a.get(k, j)).collect();
        let mut column = vec![BigInt::one(), -a.get(k, k).clone()];
        // v runs through C, MC, M²C, ...
        let mut v: Vec<BigInt> = (k + 1..n).map(|i| a.get(i, k).clone()).collect();
        for step in 0..size {
            let rv: BigInt = r.iter().zip(&v).map(|(x, y)| *x * y).sum();
            column.push(-rv);
            if step + 1 < size {
                v = (0..size)
                    .map(|i| (0..size).map(|j| a.get(k + 1 + i, k + 1 + j) * &v[j]).sum())
                    .collect();
            }
        }
        debug_assert_eq!(column.len(), chi.len() + 1);
        let next: Vec<BigInt> = (0..=chi.len())
            .map(|i| {
                (0..chi.len())
                    .filter(|&j| j <= i)
                    .map(|j| &column[i - j] * &chi[j])
                    .sum()
            })
            .collect();
        chi = next;
    }
    chi.reverse();
    IntPoly::new(chi)
}

/// Cycle counts, determinant form and truncated series of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaData {
    /// `c_1, ..., c_D`.
    pub cycle_counts: Vec<BigInt>,
    /// `det(I − uA)`.
    pub det_poly: IntPoly,
    /// Coefficients of `u⁰, ..., u^D` in `exp(Σ c_m uᵐ/m)`.
    pub series: Vec<BigRational>,
}

/// `det(I − uA)`, the reversed characteristic polynomial.
pub fn det_poly(x: &Graph) -> IntPoly {
    char_poly(&adjacency(x)).reversed(x.node_count())
}

pub fn zeta_data(x: &Graph, degree: usize) -> ZetaData {
    let powers = adjacency(x).powers(degree);
    let cycle_counts: Vec<BigInt> = powers[1..].iter().map(AdjMatrix::trace).collect();
    ZetaData {
        series: exp_series(&cycle_counts),
        cycle_counts,
        det_poly: det_poly(x),
    }
}

/// `exp(Σ c_m uᵐ/m)` through degree `counts.len()`, via `Z' = (Σ c_m uᵐ⁻¹) Z`,
/// i.e. `k z_k = Σ_{m=1..k} c_m z_{k−m}`.
pub fn exp_series(counts: &[BigInt]) -> Vec<BigRational> {
    let mut z: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=counts.len() {
        let s: BigRational = (1..=k)
            .map(|m| BigRational::from_integer(counts[m - 1].clone()) * &z[k - m])
            .sum();
        z.push(s / BigRational::from_integer(BigInt::from(k)));
    }
    z
}

/// True iff the zeta series of `x` and `y` coincide, decided by comparing
/// `det(I − uA)`. The truncated series through `degree` is compared as well.
pub fn zeta_equal(x: &Graph, y: &Graph, degree: usize) -> bool {
    let zx = zeta_data(x, degree);
    let zy = zeta_data(y, degree);
    let equal = zx.det_poly == zy.det_poly;
    debug_assert!(!equal || zx.series == zy.series);
    equal && zx.series == zy.series
}

/// Smallest `m` with `c_m(x) ≠ c_m(y)`, or `None` when the zeta series agree.
/// A mismatch, if any, occurs by the larger node count.
pub fn first_cycle_mismatch(x: &Graph, y: &Graph) -> Option<usize> {
    let bound = x.node_count().max(y.node_count()).max(1);
    let cx = adjacency(x).powers(bound);
    let cy = adjacency(y).powers(bound);
    (1..=bound).find(|&m| cx[m].trace() != cy[m].trace())
}

/// Multiply two truncated series.
pub fn series_mul(a: &[BigRational], b: &[BigInt], degree: usize) -> Vec<BigRational> {
    (0..=degree)
        .map(|k| {
            (0..=k)
                .filter(|&i| i < a.len() && k - i < b.len())
                .map(|i| &a[i] * BigRational::from_integer(b[k - i].clone()))
                .sum()
        })
        .collect()
}
