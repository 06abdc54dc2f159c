//! Exact canonical forms by partition refinement plus exhaustive search.
//!
//! The vertex set is refined into an ordered equitable partition (cells
//! split by neighbor counts into every other cell, in descending signature
//! order). When a cell is left with more than one vertex, each of its
//! vertices is individualized in turn and the refinement repeated. Every
//! discrete leaf gives a vertex ordering; the canonical form is the
//! lexicographically greatest upper-triangular adjacency bitstring over all
//! leaves. Twins (vertices with the same neighborhood apart from each
//! other) are interchangeable, so only one vertex per twin class is
//! branched on.

use std::fmt;

use super::Graph;
use crate::error::{Error, Result};

/// Default vertex ceiling for canonical forms.
pub const DEFAULT_CANON_LIMIT: usize = 12;

/// Canonical adjacency encoding. Equal forms iff isomorphic graphs.
///
/// Bits are the upper triangle in row-major order (`(0,1), (0,2), ..,
/// (1,2), ..`) packed most-significant-first, so `Ord` on the form is
/// lexicographic order on the bitstring for graphs of equal order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rebuilds the canonically labeled representative.
    pub fn to_graph(&self) -> Graph {
        let mut adj = vec![Vec::new(); self.n];
        let mut k = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.bits[k / 64] >> (63 - k % 64) & 1 == 1 {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                k += 1;
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph::from_sorted_adjacency(adj)
    }
}

impl fmt::Display for CanonicalForm {
    /// `n:` followed by the bitstring in hex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for w in &self.bits {
            write!(f, "{w:016x}")?;
        }
        Ok(())
    }
}

/// Canonical form with the default ceiling of [`DEFAULT_CANON_LIMIT`] vertices.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_form_with_limit(g: &Graph, limit: usize) -> Result<CanonicalForm> {
    canonical_labeling(g, limit).map(|(form, _)| form)
}

pub fn isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return Ok(false);
    }
    let mut d1 = g1.degrees();
    let mut d2 = g2.degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(false);
    }
    Ok(canonical_form(g1)? == canonical_form(g2)?)
}

/// Canonical form and a canonical ordering: `order[p]` is the vertex of `g`
/// placed at position `p` of the canonical representative.
pub fn canonical_labeling(g: &Graph, limit: usize) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.n();
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "canonical form vertex count",
            size: n,
            limit,
        });
    }
    let matrix: Vec<Vec<bool>> = (0..n)
        .map(|u| {
            let mut row = vec![false; n];
            for &v in g.neighbors(u) {
                row[v] = true;
            }
            row
        })
        .collect();
    let mut search = Search {
        g,
        matrix: &matrix,
        best: None,
    };
    let cells = if n == 0 {
        Vec::new()
    } else {
        vec![(0..n).collect()]
    };
    search.descend(cells);
    let (bits, order) = search.best.unwrap_or_default();
    Ok((CanonicalForm { n, bits }, order))
}

struct Search<'a> {
    g: &'a Graph,
    matrix: &'a [Vec<bool>],
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<Vec<usize>>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            let bits = encode(self.matrix, &order);
            if self.best.as_ref().is_none_or(|(b, _)| bits > *b) {
                self.best = Some((bits, order));
            }
            return;
        };
        for v in twin_representatives(self.matrix, &cells[target]) {
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.descend(next);
        }
    }
}

/// Splits cells by neighbor counts into each cell until stable.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(n);
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; k];
                    for &w in g.neighbors(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable_by(|a, b| b.cmp(a));
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let split = next.len() > cells.len();
        *cells = next;
        if !split {
            return;
        }
    }
}

/// One vertex (the smallest label) per twin class of `cell`.
fn twin_representatives(matrix: &[Vec<bool>], cell: &[usize]) -> Vec<usize> {
    let n = matrix.len();
    let twins =
        |u: usize, v: usize| (0..n).all(|w| w == u || w == v || matrix[u][w] == matrix[v][w]);
    let mut sorted = cell.to_vec();
    sorted.sort_unstable();
    let mut reps: Vec<usize> = Vec::new();
    for v in sorted {
        if !reps.iter().any(|&r| twins(r, v)) {
            reps.push(v);
        }
    }
    reps
}

fn encode(matrix: &[Vec<bool>], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let pairs = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; pairs.div_ceil(64)];
    let mut k = 0;
    for p in 0..n {
        let row = &matrix[order[p]];
        for &r in &order[p + 1..] {
            if row[r] {
                bits[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    bits
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: best encoding over all n! orderings.
    fn brute_force_form(g: &Graph) -> Vec<u64> {
        let n = g.n();
        let matrix: Vec<Vec<bool>> = (0..n)
            .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
            .collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = encode(&matrix, &perm);
        // Heap's algorithm
        let mut c = vec![0usize; n];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                best = best.max(encode(&matrix, &perm));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best
    }

    #[test]
    fn relabeled_paths_agree() {
        let a = Graph::from_edge_list(&[(0, 1), (1, 2)], None).unwrap();
        let b = Graph::from_edge_list(&[(2, 0), (0, 1)], None).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn triangle_vs_claw() {
        let k3 = Graph::complete(3);
        let k13 = Graph::complete_bipartite(1, 3);
        assert_ne!(canonical_form(&k3).unwrap(), canonical_form(&k13).unwrap());
        assert!(!isomorphic(&k3, &k13).unwrap());
    }

    #[test]
    fn ceiling_enforced() {
        let g = Graph::path(13);
        assert!(matches!(
            canonical_form(&g),
            Err(Error::LimitExceeded {
                size: 13,
                limit: 12,
                ..
            })
        ));
        assert!(canonical_form_with_limit(&g, 20).is_ok());
    }

    #[test]
    fn representative_round_trip() {
        let g = Graph::cycle(5).with_edge(0, 2).unwrap();
        let (form, order) = canonical_labeling(&g, 12).unwrap();
        let rep = form.to_graph();
        assert!(isomorphic(&rep, &g).unwrap());
        assert_eq!(canonical_form(&rep).unwrap(), form);
        let mut perm = vec![0; g.n()];
        for (p, &v) in order.iter().enumerate() {
            perm[v] = p;
        }
        assert_eq!(g.relabel(&perm), rep);
    }

    #[test]
    fn strongly_regular_pair_distinguished() {
        // Petersen vs the 5-prism: both 3-regular on 10 vertices.
        let petersen = Graph::from_edge_list(
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 4),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (6, 9),
                (6, 8),
                (5, 8),
            ],
            None,
        )
        .unwrap();
        let prism = Graph::from_edge_list(
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 4),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 9),
                (5, 9),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
            None,
        )
        .unwrap();
        assert!(!isomorphic(&petersen, &prism).unwrap());
        let shuffled = petersen.relabel(&[3, 7, 1, 9, 0, 5, 2, 8, 4, 6]);
        assert!(isomorphic(&petersen, &shuffled).unwrap());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (1..=max_n).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
                .prop_map(move |(bits, perm)| {
                    let mut edges = Vec::new();
                    let mut k = 0;
                    for i in 0..n {
                        for j in i + 1..n {
                            if bits[k] {
                                edges.push((i, j));
                            }
                            k += 1;
                        }
                    }
                    (Graph::from_edge_list(&edges, Some(n)).unwrap(), perm)
                })
        })
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling((g, perm) in arb_graph(10)) {
            let h = g.relabel(&perm);
            prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }
    }

    /// On every labeled graph with up to six vertices, the canonical form and
    /// the n! brute-force form induce the same partition into classes, and
    /// the class counts match the known totals 1, 2, 4, 11, 34, 156.
    #[test]
    fn same_classes_as_brute_force() {
        use std::collections::BTreeMap;
        for (n, expected) in (1..=6usize).zip([1usize, 2, 4, 11, 34, 156]) {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            let mut brute_to_canon: BTreeMap<Vec<u64>, CanonicalForm> = BTreeMap::new();
            let mut canon_to_brute: BTreeMap<CanonicalForm, Vec<u64>> = BTreeMap::new();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edge_list(&edges, Some(n)).unwrap();
                let brute = brute_force_form(&g);
                let canon = canonical_form(&g).unwrap();
                assert_eq!(
                    brute_to_canon.entry(brute.clone()).or_insert(canon.clone()),
                    &canon
                );
                assert_eq!(canon_to_brute.entry(canon).or_insert(brute.clone()), &brute);
            }
            assert_eq!(brute_to_canon.len(), expected, "n = {n}");
            assert_eq!(canon_to_brute.len(), expected);
        }
    }
}
