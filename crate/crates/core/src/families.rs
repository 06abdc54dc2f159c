//! Named graphs of the extremal problem and the quotient machinery for
//! `S+_{m,k+1}`: the star `K_{1,m-k-1}` with `k+1` pairwise disjoint edges
//! added between its leaves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::scalar::Scalar;
use crate::spectral::symmetric_eigenvalues;

/// Size `m` and slack `k` of the extremal problem: graphs with `m` edges
/// that avoid `C4` and `K_{1,m-k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtremalParams {
    pub m: usize,
    pub k: usize,
}

impl ExtremalParams {
    pub fn new(m: usize, k: usize) -> Self {
        ExtremalParams { m, k }
    }

    /// Smallest `m` covered by the main theorem: `max{7k+31, k^2+8(k+1)}`.
    pub fn theorem_min_m(k: usize) -> usize {
        (7 * k + 31).max(k * k + 8 * (k + 1))
    }

    pub fn theorem_threshold(&self) -> bool {
        self.m >= Self::theorem_min_m(self.k)
    }

    /// Leaves of the forbidden star, `m - k` (saturating).
    pub fn star_size(&self) -> usize {
        self.m.saturating_sub(self.k)
    }

    /// Largest admissible degree, `m - k - 1`.
    pub fn degree_cap(&self) -> usize {
        self.m.saturating_sub(self.k + 1)
    }

    /// `S+` needs `m - 3k - 3 >= 0` pendant vertices.
    pub fn splus_constructible(&self) -> bool {
        self.m >= 3 * self.k + 3
    }

    fn require_constructible(&self) -> Result<()> {
        if self.splus_constructible() {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "S+ needs m >= 3k+3 = {}, got m = {}",
                3 * self.k + 3,
                self.m
            )))
        }
    }
}

/// `S+_{m,k+1}` with its conventional labeling: vertex 0 is the center,
/// `1..=2k+2` are the matched leaves (pairs `(1,2), (3,4), ..`), the rest
/// are pendants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSplus {
    pub graph: Graph,
    pub params: ExtremalParams,
}

/// The three-class equitable partition of `S+`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplusPartition {
    pub center: Vec<usize>,
    pub matched: Vec<usize>,
    pub pendants: Vec<usize>,
}

impl SplusPartition {
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.center.len(), self.matched.len(), self.pendants.len())
    }

    /// Non-empty classes in the order center, matched, pendants.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        [&self.center, &self.matched, &self.pendants]
            .into_iter()
            .filter(|c| !c.is_empty())
            .cloned()
            .collect()
    }
}

pub fn construct_splus(p: &ExtremalParams) -> Result<LabeledSplus> {
    p.require_constructible()?;
    let n = p.m - p.k;
    let mut edges: Vec<Edge> = (1..n).map(|v| (0, v)).collect();
    edges.extend((0..=p.k).map(|i| (2 * i + 1, 2 * i + 2)));
    Ok(LabeledSplus {
        graph: Graph::from_edge_list(&edges, Some(n))?,
        params: *p,
    })
}

impl LabeledSplus {
    /// Accepts `g` only if it is `S+_{m,k+1}` under the conventional labeling.
    pub fn from_graph(g: &Graph, p: &ExtremalParams) -> Result<Self> {
        let expected = construct_splus(p)?;
        if &expected.graph == g {
            Ok(expected)
        } else {
            Err(Error::InvalidParams(
                "graph is not S+ under the conventional labeling".into(),
            ))
        }
    }

    pub fn center(&self) -> usize {
        0
    }

    pub fn partition(&self) -> SplusPartition {
        let matched_end = 2 * self.params.k + 2;
        SplusPartition {
            center: vec![0],
            matched: (1..=matched_end).collect(),
            pendants: (matched_end + 1..self.graph.n()).collect(),
        }
    }
}

/// Recognizes `S+_{m,k+1}` under any labeling (isolated vertices ignored).
pub fn is_splus(g: &Graph, p: &ExtremalParams) -> bool {
    let g = g.without_isolated();
    if !p.splus_constructible() || g.m() != p.m || g.n() != p.m - p.k {
        return false;
    }
    let Some(center) = (0..g.n()).find(|&u| g.neighbors(u).len() == g.n() - 1) else {
        return false;
    };
    // Everything else is a leaf of the center; the leaf-leaf edges must be
    // a matching of size k + 1.
    let leaf_degrees: Vec<usize> = (0..g.n())
        .filter(|&u| u != center)
        .map(|u| g.neighbors(u).len())
        .collect();
    leaf_degrees.iter().all(|&d| d <= 2)
        && leaf_degrees.iter().filter(|&&d| d == 2).count() == 2 * p.k + 2
}

/// `K_{1,m}` with center 0.
pub fn construct_star(m: usize) -> Result<Graph> {
    if m < 1 {
        return Err(Error::InvalidParams("star needs m >= 1".into()));
    }
    Ok(Graph::complete_bipartite(1, m))
}

/// `K_{1,m-1}` plus a disjoint edge on vertices `m, m+1`.
pub fn construct_star_union_edge(m: usize) -> Result<Graph> {
    if m < 2 {
        return Err(Error::InvalidParams("star plus edge needs m >= 2".into()));
    }
    let mut edges: Vec<Edge> = (1..m).map(|v| (0, v)).collect();
    edges.push((m, m + 1));
    Graph::from_edge_list(&edges, None)
}

/// Quotient of `Q(G)` by an equitable partition: `entries[i][j]` is the
/// Q-row-sum from any vertex of class `i` into class `j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientMatrix<T> {
    pub entries: Vec<Vec<T>>,
    pub block_sizes: Vec<usize>,
}

impl<T: Scalar> QuotientMatrix<T> {
    pub fn order(&self) -> usize {
        self.block_sizes.len()
    }

    /// Eigenvalues, descending.
    ///
    /// The quotient is not symmetric, but `|V_i| b_ij = |V_j| b_ji`, so
    /// `D^{1/2} B D^{-1/2}` with `D = diag(|V_i|)` is symmetric and similar.
    pub fn eigenvalues(&self) -> Vec<T> {
        let k = self.order();
        let sqrt: Vec<T> = self
            .block_sizes
            .iter()
            .map(|&s| T::from_count(s).sqrt())
            .collect();
        let sym = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| sqrt[i] * self.entries[i][j] / sqrt[j])
                    .collect()
            })
            .collect();
        symmetric_eigenvalues(sym)
    }

    /// `det(xI - B)` for a 3x3 quotient.
    pub fn characteristic_cubic(&self) -> Option<Cubic<T>> {
        if self.order() != 3 {
            return None;
        }
        let b = &self.entries;
        let trace = b[0][0] + b[1][1] + b[2][2];
        let minors = b[0][0] * b[1][1] - b[0][1] * b[1][0] + b[0][0] * b[2][2] - b[0][2] * b[2][0]
            + b[1][1] * b[2][2]
            - b[1][2] * b[2][1];
        let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
            - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
            + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
        Some(Cubic {
            coeffs: [T::one(), -trace, minors, -det],
        })
    }
}

/// Quotient matrix of `Q(g)` for `partition`, which must cover every vertex
/// exactly once and be equitable.
pub fn quotient_matrix<T: Scalar>(
    g: &Graph,
    partition: &[Vec<usize>],
) -> Result<QuotientMatrix<T>> {
    let n = g.n();
    let mut class_of = vec![usize::MAX; n];
    for (i, class) in partition.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::InvalidPartition(format!("class {i} is empty")));
        }
        for &v in class {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if class_of[v] != usize::MAX {
                return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
            }
            class_of[v] = i;
        }
    }
    if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::InvalidPartition(format!(
            "vertex {v} is not covered"
        )));
    }
    let k = partition.len();
    let row_sums = |u: usize| -> Vec<usize> {
        let mut sums = vec![0usize; k];
        sums[class_of[u]] += g.neighbors(u).len();
        for &v in g.neighbors(u) {
            sums[class_of[v]] += 1;
        }
        sums
    };
    let mut entries = Vec::with_capacity(k);
    for (i, class) in partition.iter().enumerate() {
        let first = row_sums(class[0]);
        for &u in &class[1..] {
            let sums = row_sums(u);
            if let Some(j) = (0..k).find(|&j| sums[j] != first[j]) {
                return Err(Error::NotEquitable {
                    class: i,
                    into: j,
                    u: class[0],
                    v: u,
                    sum_u: first[j],
                    sum_v: sums[j],
                });
            }
        }
        entries.push(first.into_iter().map(T::from_count).collect());
    }
    Ok(QuotientMatrix {
        entries,
        block_sizes: partition.iter().map(Vec::len).collect(),
    })
}

/// Monic cubic `x^3 + c1 x^2 + c2 x + c3`, stored as `[1, c1, c2, c3]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cubic<T> {
    pub coeffs: [T; 4],
}

const NEWTON_MAX_STEPS: usize = 200;

impl<T: Scalar> Cubic<T> {
    pub fn eval(&self, x: T) -> T {
        let [a, b, c, d] = self.coeffs;
        ((a * x + b) * x + c) * x + d
    }

    pub fn derivative(&self, x: T) -> T {
        let [a, b, c, _] = self.coeffs;
        (T::lit(3.0) * a * x + T::lit(2.0) * b) * x + c
    }

    /// Newton's method from `x0`, which must lie above the largest root in
    /// the region where the cubic is increasing and convex; the iterates
    /// then decrease monotonically onto the largest root. Stops when
    /// `|f(x)| <= 1e-12 x0^3` or the step is below `1e-14 x0`.
    pub fn largest_root_from(&self, x0: T) -> Result<T> {
        let scale = x0.abs().max(T::one());
        let ftol = T::lit(1e-12).max(T::tol_floor()) * scale * scale * scale;
        let steptol = T::lit(1e-14).max(T::tol_floor()) * scale;
        let mut x = x0;
        for _ in 0..NEWTON_MAX_STEPS {
            let fx = self.eval(x);
            if fx.abs() <= ftol {
                return Ok(x);
            }
            let step = fx / self.derivative(x);
            x -= step;
            if step.abs() < steptol {
                return Ok(x);
            }
        }
        Err(Error::NoConvergence {
            iterations: NEWTON_MAX_STEPS,
            residual: self.eval(x).to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// `f(x) = x^3 - (m-k+3) x^2 + 3(m-k) x - 4(k+1)`, the characteristic
/// polynomial of the three-class quotient of `S+_{m,k+1}`. Needs
/// `m >= 3k+4` so that the pendant class is non-empty.
pub fn splus_cubic<T: Scalar>(p: &ExtremalParams) -> Result<Cubic<T>> {
    if p.m < 3 * p.k + 4 {
        return Err(Error::InvalidParams(format!(
            "the S+ cubic needs m >= 3k+4 = {}, got m = {} (no pendant class)",
            3 * p.k + 4,
            p.m
        )));
    }
    let s = T::from_count(p.m - p.k);
    Ok(Cubic {
        coeffs: [
            T::one(),
            -(s + T::lit(3.0)),
            T::lit(3.0) * s,
            -T::from_count(4 * (p.k + 1)),
        ],
    })
}

/// `q(S+_{m,k+1})` as the largest root of [`splus_cubic`], by Newton from
/// `m - k + 3`.
pub fn splus_q_closed<T: Scalar>(p: &ExtremalParams) -> Result<T> {
    splus_cubic::<T>(p)?.largest_root_from(T::from_count(p.m - p.k + 3))
}

/// Two-sided estimate `m-k + 1/m^2 < q(S+) < m-k + 2(k+1)/(m-k-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplusBounds<T> {
    pub lower: T,
    pub upper: T,
    /// Whether `m >= 7k+31`, the range in which the estimate is claimed.
    pub in_stated_range: bool,
}

pub fn splus_bounds<T: Scalar>(p: &ExtremalParams) -> Result<SplusBounds<T>> {
    if p.m <= p.k + 1 {
        return Err(Error::InvalidParams(format!(
            "bounds need m > k+1, got m = {}, k = {}",
            p.m, p.k
        )));
    }
    let s = T::from_count(p.m - p.k);
    let m = T::from_count(p.m);
    Ok(SplusBounds {
        lower: s + T::one() / (m * m),
        upper: s + T::from_count(2 * (p.k + 1)) / T::from_count(p.m - p.k - 1),
        in_stated_range: p.m >= 7 * p.k + 31,
    })
}
