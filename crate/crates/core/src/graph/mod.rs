//! Immutable simple undirected graphs.
//!
//! Vertices are `0..n`. Every vertex keeps a sorted neighbor list, so
//! iteration order is deterministic and independent of how the graph was
//! built. Edits ([`Graph::rotate`], [`Graph::with_edge`]) return new values.

mod canon;
mod io;

pub use canon::{
    canonical_form, canonical_form_with_limit, canonical_labeling, isomorphic, CanonicalForm,
    DEFAULT_CANON_LIMIT,
};
pub use io::{from_graph6, parse_edge_list, to_edge_list, to_graph6};

use crate::error::{Error, Result};

/// An undirected edge with `0 <= u < v`.
pub type Edge = (usize, usize);

fn ordered(a: usize, b: usize) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list.
    ///
    /// `n` defaults to one more than the largest vertex index (0 for an
    /// empty list). Loops, duplicate edges (in either orientation) and
    /// indices `>= n` are rejected.
    pub fn from_edge_list(edges: &[Edge], n: Option<usize>) -> Result<Self> {
        let n = match n {
            Some(n) => n,
            None => edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0),
        };
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = ordered(u, w[0]);
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
        })
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn check(&self, u: usize) -> Result<()> {
        if u < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: u,
                n: self.n(),
            })
        }
    }

    /// Sorted neighbors of `u`. Panics if `u` is out of range.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> Result<usize> {
        self.check(u)?;
        Ok(self.adj[u].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Maximum degree, 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff there is exactly one component and it spans every vertex.
    /// The graph on zero vertices is not connected.
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Induced subgraph on `vertices` (relabeled `0..len` in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length");
        let mut adj = vec![Vec::new(); self.n()];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&v| perm[v]).collect();
            adj[perm[u]].sort_unstable();
        }
        Graph::from_sorted_adjacency(adj)
    }

    /// Disjoint union, vertices of later parts shifted past earlier ones.
    pub fn disjoint_union(parts: &[&Graph]) -> Graph {
        let mut adj = Vec::new();
        for g in parts {
            let offset = adj.len();
            adj.extend(
                g.adj
                    .iter()
                    .map(|l| l.iter().map(|&v| v + offset).collect()),
            );
        }
        Graph::from_sorted_adjacency(adj)
    }

    /// Adds vertex `n` and no edges.
    pub fn with_vertex(&self) -> Graph {
        let mut adj = self.adj.clone();
        adj.push(Vec::new());
        Graph { adj, m: self.m }
    }

    /// Returns `self + uv`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        if self.has_edge(u, v) {
            let (a, b) = ordered(u, v);
            return Err(Error::EdgeExists(a, b));
        }
        let mut g = self.clone();
        g.insert(u, v);
        Ok(g)
    }

    /// Returns `self - uv`.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            let (a, b) = ordered(u, v);
            return Err(Error::MissingEdge(a, b));
        }
        let mut g = self.clone();
        g.erase(u, v);
        Ok(g)
    }

    /// Edge rotation `self - remove + add`; the edge count is unchanged.
    pub fn rotate(&self, remove: Edge, add: Edge) -> Result<Graph> {
        let (c, d) = remove;
        let (a, b) = add;
        self.check(a)?;
        self.check(b)?;
        if !self.has_edge(c, d) {
            let (x, y) = ordered(c, d);
            return Err(Error::MissingEdge(x, y));
        }
        if a == b {
            return Err(Error::LoopEdge(a));
        }
        if self.has_edge(a, b) {
            let (x, y) = ordered(a, b);
            return Err(Error::EdgeExists(x, y));
        }
        let mut g = self.clone();
        g.erase(c, d);
        g.insert(a, b);
        Ok(g)
    }

    fn insert(&mut self, u: usize, v: usize) {
        for (x, y) in [(u, v), (v, u)] {
            let list = &mut self.adj[x];
            let pos = list.binary_search(&y).unwrap_err();
            list.insert(pos, y);
        }
        self.m += 1;
    }

    fn erase(&mut self, u: usize, v: usize) {
        for (x, y) in [(u, v), (v, u)] {
            let list = &mut self.adj[x];
            let pos = list.binary_search(&y).unwrap();
            list.remove(pos);
        }
        self.m -= 1;
    }

    /// Drops isolated vertices, keeping the relative order of the others.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|&u| !self.adj[u].is_empty()).collect();
        self.induced(&keep)
    }

    // Common graphs, mostly for tests and harnesses.

    pub fn path(n: usize) -> Graph {
        let edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(&edges, Some(n)).expect("path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::from_edge_list(&edges, Some(n)).expect("cycle")
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Graph::from_edge_list(&edges, Some(n)).expect("complete")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<Edge> = (0..a)
            .flat_map(|i| (a..a + b).map(move |j| (i, j)))
            .collect();
        Graph::from_edge_list(&edges, Some(a + b)).expect("complete bipartite")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn splus_7_2() -> Graph {
        Graph::from_edge_list(
            &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (3, 4)],
            None,
        )
        .unwrap()
    }

    #[test]
    fn single_edge() {
        let g = Graph::from_edge_list(&[(0, 1)], None).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn splus_edge_list_and_degrees() {
        let g = splus_7_2();
        assert_eq!((g.n(), g.m()), (6, 7));
        assert_eq!(g.degree(0).unwrap(), 5);
        assert_eq!(g.degree(1).unwrap(), 2);
        assert_eq!(g.degree(5).unwrap(), 1);
        assert_eq!(g.max_degree(), 5);
        assert!(g.degree(6).is_err());
    }

    #[test]
    fn rejects_bad_edge_lists() {
        assert_eq!(
            Graph::from_edge_list(&[(0, 0)], None),
            Err(Error::LoopEdge(0))
        );
        assert_eq!(
            Graph::from_edge_list(&[(0, 1), (1, 0)], None),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edge_list(&[(0, 3)], Some(3)),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn components_and_isolation() {
        let g = Graph::from_edge_list(&[(0, 1), (0, 2), (0, 3), (4, 5)], None).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2, 3], vec![4, 5]]);
        assert!(!g.is_connected());
        assert!(splus_7_2().is_connected());
        let e = Graph::empty(3);
        assert!(e.has_isolated_vertex());
        assert_eq!(e.components().len(), 3);
        assert!(!Graph::empty(0).is_connected());
    }

    #[test]
    fn rotation_of_path_is_a_path() {
        let p3 = Graph::path(3);
        let r = p3.rotate((1, 2), (0, 2)).unwrap();
        assert_eq!(r.edge_list(), vec![(0, 1), (0, 2)]);
        assert_eq!(p3.edge_list(), vec![(0, 1), (1, 2)]);
        assert!(isomorphic(&p3, &r).unwrap());
    }

    #[test]
    fn rotation_of_c4_to_triangle() {
        let c4 = Graph::cycle(4);
        let r = c4.rotate((0, 3), (0, 2)).unwrap();
        assert_eq!(r.m(), 4);
        assert!(r.has_edge(0, 1) && r.has_edge(1, 2) && r.has_edge(0, 2));
        assert!(!crate::witness::has_c4(&r));
    }

    #[test]
    fn rotation_errors() {
        let p3 = Graph::path(3);
        assert_eq!(p3.rotate((0, 1), (0, 1)), Err(Error::EdgeExists(0, 1)));
        assert_eq!(p3.rotate((0, 2), (1, 2)), Err(Error::MissingEdge(0, 2)));
        assert_eq!(p3.rotate((0, 1), (2, 2)), Err(Error::LoopEdge(2)));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
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
                Graph::from_edge_list(&edges, Some(n)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn degree_sum_is_twice_m(g in arb_graph()) {
            prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
            for u in 0..g.n() {
                prop_assert!(!g.has_edge(u, u));
                for &v in g.neighbors(u) {
                    prop_assert!(g.has_edge(v, u));
                }
            }
        }

        #[test]
        fn rotation_round_trip(g in arb_graph(), pick in any::<(usize, usize)>()) {
            let edges = g.edge_list();
            let non_edges: Vec<Edge> = (0..g.n())
                .flat_map(|i| (i + 1..g.n()).map(move |j| (i, j)))
                .filter(|&(i, j)| !g.has_edge(i, j))
                .collect();
            prop_assume!(!edges.is_empty() && !non_edges.is_empty());
            let e = edges[pick.0 % edges.len()];
            let f = non_edges[pick.1 % non_edges.len()];
            let r = g.rotate(e, f).unwrap();
            prop_assert_eq!(r.m(), g.m());
            prop_assert_eq!(r.rotate(f, e).unwrap(), g);
        }
    }
}
