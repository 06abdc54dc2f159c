//! Isomorph-free generation of graphs by edge count.
//!
//! Connected graphs are grown one edge at a time (an edge between existing
//! vertices, or a pendant edge to a new vertex) and deduplicated per level
//! by canonical form. Every connected graph with `e + 1` edges has an edge
//! whose removal leaves a connected graph on the same or one fewer vertex,
//! so the levels are complete. Graphs without isolated vertices are
//! assembled from multisets of connected components.
//!
//! Filters must be monotone (closed under taking subgraphs) for the
//! pruning to be exact; the provided [`GraphFilter`] only offers such
//! properties.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::ExtremalParams;
use crate::graph::{canonical_form, CanonicalForm, Graph, DEFAULT_CANON_LIMIT};
use crate::spectral::q_index_default;
use crate::witness::has_c4;

/// Edge ceiling for the unfiltered sweep over graphs without isolated vertices.
pub const NO_ISOLATED_LIMIT: usize = 8;
/// Edge ceiling for filtered (C4-free) sweeps.
pub const FILTERED_LIMIT: usize = 9;
/// Numeric tie threshold between isomorphism classes.
pub const TIE_TOL: f64 = 1e-9;

/// Monotone admissibility filter applied at every generation step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraphFilter {
    pub c4_free: bool,
    pub max_degree: Option<usize>,
}

impl GraphFilter {
    pub fn accepts(&self, g: &Graph) -> bool {
        self.max_degree.is_none_or(|d| g.max_degree() <= d) && !(self.c4_free && has_c4(g))
    }

    fn is_trivial(&self) -> bool {
        !self.c4_free && self.max_degree.is_none()
    }
}

/// One representative (canonically labeled) per isomorphism class of
/// connected graphs with `m` edges and at most `n_max` vertices that pass
/// `filter` at every intermediate size. Output is sorted by canonical form.
pub fn connected_graphs(m: usize, n_max: usize, filter: &GraphFilter) -> Result<Vec<Graph>> {
    Ok(connected_levels(m, n_max, filter)?
        .pop()
        .unwrap_or_default()
        .into_iter()
        .map(|f| f.to_graph())
        .collect())
}

/// Levels `1..=m` of the connected generation, `levels[e - 1]` holding the
/// classes with `e` edges.
fn connected_levels(
    m: usize,
    n_max: usize,
    filter: &GraphFilter,
) -> Result<Vec<BTreeSet<CanonicalForm>>> {
    if m == 0 {
        return Err(Error::InvalidParams("edge count must be at least 1".into()));
    }
    if n_max > DEFAULT_CANON_LIMIT {
        return Err(Error::LimitExceeded {
            what: "enumeration vertex count",
            size: n_max,
            limit: DEFAULT_CANON_LIMIT,
        });
    }
    let mut levels = Vec::with_capacity(m);
    let k2 = Graph::complete(2);
    let mut current = BTreeSet::new();
    if n_max >= 2 && filter.accepts(&k2) {
        current.insert(canonical_form(&k2)?);
    }
    levels.push(current.clone());
    for _ in 1..m {
        let parents: Vec<Graph> = current.iter().map(CanonicalForm::to_graph).collect();
        let children: Vec<Vec<CanonicalForm>> = parents
            .par_iter()
            .map(|g| augment(g, n_max, filter))
            .collect::<Result<_>>()?;
        current = children.into_iter().flatten().collect();
        levels.push(current.clone());
    }
    Ok(levels)
}

fn augment(g: &Graph, n_max: usize, filter: &GraphFilter) -> Result<Vec<CanonicalForm>> {
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                let h = g.with_edge(u, v)?;
                if filter.accepts(&h) {
                    out.push(canonical_form(&h)?);
                }
            }
        }
    }
    if n < n_max {
        let grown = g.with_vertex();
        for u in 0..n {
            let h = grown.with_edge(u, n)?;
            if filter.accepts(&h) {
                out.push(canonical_form(&h)?);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A connected isomorphism class together with its Q-index.
#[derive(Clone, Debug)]
pub struct ComponentClass {
    pub graph: Graph,
    pub q: f64,
}

/// A graph without isolated vertices, described by its connected
/// components: `(edge count, index into the class list for that count)`,
/// in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composite {
    pub parts: Vec<(usize, usize)>,
}

/// Connected classes by edge count plus every composite of total size `m`.
#[derive(Clone, Debug)]
pub struct ClassCatalog {
    pub m: usize,
    /// `by_edges[e]` lists the connected classes with `e` edges (`e >= 1`).
    pub by_edges: Vec<Vec<ComponentClass>>,
    pub composites: Vec<Composite>,
}

impl ClassCatalog {
    pub fn build(m: usize, filter: &GraphFilter) -> Result<Self> {
        let limit = if filter.is_trivial() {
            NO_ISOLATED_LIMIT
        } else {
            FILTERED_LIMIT
        };
        if m > limit {
            return Err(Error::LimitExceeded {
                what: "enumeration edge count",
                size: m,
                limit,
            });
        }
        let levels = connected_levels(m, (m + 1).min(DEFAULT_CANON_LIMIT), filter)?;
        let mut by_edges = vec![Vec::new()];
        for level in levels {
            let graphs: Vec<Graph> = level.iter().map(CanonicalForm::to_graph).collect();
            let classes = graphs
                .into_par_iter()
                .map(|graph| {
                    let q = q_index_default(&graph)?;
                    Ok(ComponentClass { graph, q })
                })
                .collect::<Result<Vec<_>>>()?;
            by_edges.push(classes);
        }
        let mut composites = Vec::new();
        let mut stack = Vec::new();
        compose(&by_edges, m, (m, usize::MAX), &mut stack, &mut composites);
        Ok(ClassCatalog {
            m,
            by_edges,
            composites,
        })
    }

    pub fn component(&self, part: (usize, usize)) -> &ComponentClass {
        &self.by_edges[part.0][part.1]
    }

    /// Disjoint union of the composite's components, in part order.
    pub fn assemble(&self, c: &Composite) -> Graph {
        let parts: Vec<&Graph> = c.parts.iter().map(|&p| &self.component(p).graph).collect();
        Graph::disjoint_union(&parts)
    }

    /// Q-index of a composite: the largest component index.
    pub fn q(&self, c: &Composite) -> f64 {
        c.parts
            .iter()
            .map(|&p| self.component(p).q)
            .fold(0.0, f64::max)
    }
}

/// Multisets of parts in non-increasing `(edges, index)` order summing to `remaining`.
fn compose(
    by_edges: &[Vec<ComponentClass>],
    remaining: usize,
    bound: (usize, usize),
    stack: &mut Vec<(usize, usize)>,
    out: &mut Vec<Composite>,
) {
    if remaining == 0 {
        out.push(Composite {
            parts: stack.clone(),
        });
        return;
    }
    for e in (1..=remaining.min(bound.0)).rev() {
        let count = by_edges[e].len();
        let top = if e == bound.0 {
            count.min(bound.1.saturating_add(1))
        } else {
            count
        };
        for idx in (0..top).rev() {
            stack.push((e, idx));
            compose(by_edges, remaining - e, (e, idx), stack, out);
            stack.pop();
        }
    }
}

/// One representative per isomorphism class of graphs with `m` edges and
/// minimum degree at least 1 (`m <= 8`).
pub fn graphs_no_isolated(m: usize) -> Result<Vec<Graph>> {
    let catalog = ClassCatalog::build(m, &GraphFilter::default())?;
    Ok(catalog
        .composites
        .iter()
        .map(|c| catalog.assemble(c))
        .collect())
}

/// Outcome of an exhaustive search for the admissible graph of largest
/// Q-index.
#[derive(Clone, Debug)]
pub struct ExtremalReport {
    pub params: ExtremalParams,
    pub best: Graph,
    pub q: f64,
    /// Gap to the best class outside the tie group, `None` if there is none.
    pub runner_up_gap: Option<f64>,
    /// Every class within [`TIE_TOL`] of the maximum (including `best`).
    pub ties: Vec<Graph>,
    pub class_count: usize,
}

impl ExtremalReport {
    pub const CSV_HEADER: &'static str = "m,k,classes,best_q,best_graph6,gap";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.params.m,
            self.params.k,
            self.class_count,
            self.q,
            crate::graph::to_graph6(&self.best),
            self.runner_up_gap
                .map(|g| g.to_string())
                .unwrap_or_default()
        )
    }
}

/// Largest Q-index over admissible graphs (no isolated vertex, no C4,
/// maximum degree at most `m - k - 1`), by exhaustive enumeration.
pub fn extremal_by_enumeration(p: &ExtremalParams) -> Result<ExtremalReport> {
    let filter = GraphFilter {
        c4_free: true,
        max_degree: Some(p.degree_cap()),
    };
    let catalog = ClassCatalog::build(p.m, &filter)?;
    if catalog.composites.is_empty() {
        return Err(Error::EmptyFamily(format!(
            "no admissible graph with m = {}, k = {}",
            p.m, p.k
        )));
    }
    let mut scored: Vec<(f64, &Composite)> = catalog
        .composites
        .iter()
        .map(|c| (catalog.q(c), c))
        .collect();
    // stable: equal q keeps generation order
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    let q = scored[0].0;
    let ties: Vec<Graph> = scored
        .iter()
        .take_while(|(s, _)| q - s <= TIE_TOL)
        .map(|(_, c)| catalog.assemble(c))
        .collect();
    let runner_up_gap = scored.get(ties.len()).map(|(s, _)| q - s);
    Ok(ExtremalReport {
        params: *p,
        best: ties[0].clone(),
        q,
        runner_up_gap,
        ties,
        class_count: scored.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::isomorphic;

    #[test]
    fn tiny_levels() {
        let one = connected_graphs(1, 2, &GraphFilter::default()).unwrap();
        assert_eq!(one, vec![Graph::complete(2)]);
        let three = connected_graphs(3, 4, &GraphFilter::default()).unwrap();
        assert_eq!(three.len(), 3);
        for target in [
            Graph::path(4),
            Graph::complete(3),
            Graph::complete_bipartite(1, 3),
        ] {
            assert_eq!(
                three
                    .iter()
                    .filter(|g| isomorphic(g, &target).unwrap())
                    .count(),
                1
            );
        }
    }

    #[test]
    fn c4_free_prune_drops_the_square() {
        let all = connected_graphs(4, 5, &GraphFilter::default()).unwrap();
        let free = connected_graphs(
            4,
            5,
            &GraphFilter {
                c4_free: true,
                max_degree: None,
            },
        )
        .unwrap();
        assert_eq!(all.len(), 5);
        assert_eq!(free.len(), 4);
        let filtered: Vec<Graph> = all.into_iter().filter(|g| !has_c4(g)).collect();
        assert_eq!(filtered, free);
        assert!(free
            .iter()
            .all(|g| !isomorphic(g, &Graph::cycle(4)).unwrap()));
    }

    #[test]
    fn small_no_isolated_counts() {
        assert_eq!(graphs_no_isolated(2).unwrap().len(), 2);
        assert_eq!(graphs_no_isolated(3).unwrap().len(), 5);
        assert_eq!(graphs_no_isolated(4).unwrap().len(), 11);
        assert!(graphs_no_isolated(9).is_err());
    }

    #[test]
    fn extremal_small_cases() {
        let r = extremal_by_enumeration(&ExtremalParams::new(7, 1)).unwrap();
        assert!(r.q >= (7.0 + 33f64.sqrt()) / 2.0 - 1e-9);
        let r = extremal_by_enumeration(&ExtremalParams::new(4, 0)).unwrap();
        let splus = crate::families::construct_splus(&ExtremalParams::new(4, 0)).unwrap();
        assert!(r.q >= q_index_default(&splus.graph).unwrap() - 1e-9);
    }

    #[test]
    fn oversized_requests_rejected() {
        assert!(connected_graphs(3, 13, &GraphFilter::default()).is_err());
        assert!(connected_graphs(0, 2, &GraphFilter::default()).is_err());
    }
}
