//! Forbidden-subgraph predicates: 4-cycles and large stars.

use crate::families::ExtremalParams;
use crate::graph::Graph;

/// Common-neighbor counts for every vertex pair, `counts[a * n + b]`.
fn common_neighbor_counts(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut counts = vec![0u32; n * n];
    for w in 0..n {
        let nb = g.neighbors(w);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                counts[a * n + b] += 1;
            }
        }
    }
    counts
}

/// True iff some vertex pair has two common neighbors.
pub fn has_c4(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 {
        return false;
    }
    let mut marker = vec![usize::MAX; n * n];
    for w in 0..n {
        let nb = g.neighbors(w);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                let slot = &mut marker[a * n + b];
                if *slot != usize::MAX {
                    return true;
                }
                *slot = w;
            }
        }
    }
    false
}

/// A 4-cycle `[a, x, b, y]` (in cyclic order), where `(a, b)` is the
/// lexicographically first pair with two common neighbors and `x < y` are
/// its two smallest common neighbors.
pub fn find_c4(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n();
    let counts = common_neighbor_counts(g);
    for a in 0..n {
        for b in a + 1..n {
            if counts[a * n + b] >= 2 {
                let (na, nb) = (g.neighbors(a), g.neighbors(b));
                let mut common = na.iter().filter(|v| nb.binary_search(v).is_ok());
                let x = *common.next().expect("two common neighbors");
                let y = *common.next().expect("two common neighbors");
                return Some([a, x, b, y]);
            }
        }
    }
    None
}

/// Number of 4-cycles (as subgraphs).
pub fn count_c4(g: &Graph) -> usize {
    let c: usize = common_neighbor_counts(g)
        .iter()
        .map(|&k| (k as usize) * (k as usize).saturating_sub(1) / 2)
        .sum();
    // every 4-cycle is counted once from each of its two diagonals
    c / 2
}

/// Whether adding `ab` to `g` creates a 4-cycle, i.e. whether `g` has a
/// path `a - x - y - b` on four distinct vertices. Assumes `ab` is not an
/// edge of `g`.
pub fn edge_closes_c4(g: &Graph, a: usize, b: usize) -> bool {
    let nb = g.neighbors(b);
    g.neighbors(a).iter().any(|&x| {
        x != b
            && g.neighbors(x)
                .iter()
                .any(|&y| y != a && y != b && nb.binary_search(&y).is_ok())
    })
}

/// `K_{1,s}` is a subgraph iff the maximum degree is at least `s`.
pub fn contains_star(g: &Graph, s: usize) -> bool {
    g.max_degree() >= s
}

/// Member of the family the extremal problem ranges over: exactly `m`
/// edges, no isolated vertex, no 4-cycle and no `K_{1,m-k}`.
pub fn is_admissible(g: &Graph, p: &ExtremalParams) -> bool {
    g.m() == p.m && !g.has_isolated_vertex() && !contains_star(g, p.star_size()) && !has_c4(g)
}
