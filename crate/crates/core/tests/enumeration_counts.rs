//! Class counts against known totals and against a brute-force oracle that
//! dedupes labeled graphs by backtracking isomorphism.

use qindex::enumerate::{connected_graphs, graphs_no_isolated, GraphFilter};
use qindex::Graph;

/// Graphs with m edges and no isolated vertex, m = 1..=8.
const NO_ISOLATED: [usize; 8] = [1, 2, 5, 11, 26, 68, 177, 497];
/// Connected graphs with m edges, m = 1..=8.
const CONNECTED: [usize; 8] = [1, 1, 3, 5, 12, 30, 79, 227];

fn isomorphic(g: &Graph, h: &Graph) -> bool {
    fn extend(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let u = map.len();
        if u == g.n() {
            return true;
        }
        for v in 0..h.n() {
            if used[v] || g.neighbors(u).len() != h.neighbors(v).len() {
                continue;
            }
            if (0..u).all(|w| g.has_edge(u, w) == h.has_edge(v, map[w])) {
                map.push(v);
                used[v] = true;
                if extend(g, h, map, used) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
    if g.n() != h.n() || g.m() != h.m() {
        return false;
    }
    let (mut a, mut b) = (g.degrees(), h.degrees());
    a.sort_unstable();
    b.sort_unstable();
    a == b && extend(g, h, &mut Vec::new(), &mut vec![false; h.n()])
}

/// Calls `f` on every `m`-subset of `0..len`.
fn subsets(len: usize, m: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, len: usize, m: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == m {
            f(cur);
            return;
        }
        for i in start..len {
            if len - i < m - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, len, m, cur, f);
            cur.pop();
        }
    }
    go(0, len, m, &mut Vec::new(), f);
}

fn brute_force_classes(m: usize, connected_only: bool) -> usize {
    let mut reps: Vec<Graph> = Vec::new();
    let n_max = if connected_only { m + 1 } else { 2 * m };
    for n in 2..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        if pairs.len() < m {
            continue;
        }
        subsets(pairs.len(), m, &mut |idx| {
            let edges: Vec<_> = idx.iter().map(|&i| pairs[i]).collect();
            let g = Graph::from_edge_list(&edges, Some(n)).unwrap();
            if g.has_isolated_vertex() || (connected_only && !g.is_connected()) {
                return;
            }
            if !reps.iter().any(|r| isomorphic(r, &g)) {
                reps.push(g);
            }
        });
    }
    reps.len()
}

#[test]
fn no_isolated_counts_match_known_totals() {
    for m in 1..=8 {
        assert_eq!(
            graphs_no_isolated(m).unwrap().len(),
            NO_ISOLATED[m - 1],
            "m = {m}"
        );
    }
}

#[test]
fn connected_counts_match_known_totals() {
    for m in 1..=8 {
        let got = connected_graphs(m, m + 1, &GraphFilter::default()).unwrap();
        assert_eq!(got.len(), CONNECTED[m - 1], "m = {m}");
        assert!(got.iter().all(Graph::is_connected));
    }
}

#[test]
fn known_totals_agree_with_brute_force() {
    for m in 1..=5 {
        assert_eq!(brute_force_classes(m, false), NO_ISOLATED[m - 1], "m = {m}");
    }
    for m in 1..=6 {
        assert_eq!(brute_force_classes(m, true), CONNECTED[m - 1], "m = {m}");
    }
}

#[test]
fn representatives_are_pairwise_non_isomorphic() {
    let gs = graphs_no_isolated(6).unwrap();
    for (i, g) in gs.iter().enumerate() {
        assert!(!g.has_isolated_vertex());
        assert_eq!(g.m(), 6);
        for h in &gs[i + 1..] {
            assert!(!isomorphic(g, h));
        }
    }
}
