//! Seeded edge-rotation hill climbing over admissible graphs.
//!
//! A move deletes an edge `cd` and adds a non-edge `ab`, where `b` may be a
//! fresh vertex. Vertices left isolated by the deletion are dropped, so
//! every state stays in the class of graphs without isolated vertices and
//! the vertex count can change along the search. Moves are screened by the
//! Rayleigh bound `(x_a + x_b)^2 - (x_c + x_d)^2`: a positive bound
//! certifies an improvement, and a random fraction of the remaining moves
//! is solved exactly to catch improvements the one-sided bound misses.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{construct_splus, ExtremalParams};
use crate::graph::{Edge, Graph};
use crate::spectral::{perron_dominant, PerronResult, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::witness::{count_c4, edge_closes_c4, has_c4, is_admissible};

/// Minimum exact gain for a move to be accepted.
pub const ACCEPT_EPS: f64 = 1e-12;
/// Gain above which a screened-out move counts as a screening miss.
pub const MISS_EPS: f64 = 1e-6;
/// Largest `m` the search is meant for.
pub const SEARCH_LIMIT: usize = 80;

/// Membership rule for search states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Admissibility {
    /// No C4, no `K_{1,m-k}`, no isolated vertex.
    Strict,
    /// As `Strict`, but up to this many 4-cycles are tolerated. Only used
    /// as a negative control.
    AllowC4(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Candidate moves examined per restart before giving up.
    pub move_cap: usize,
    pub screening: bool,
    /// Fraction of screened-out moves that are still solved exactly.
    pub subsample_rate: f64,
    pub admissibility: Admissibility,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 20,
            seed: 1,
            move_cap: 100_000,
            screening: true,
            subsample_rate: 0.1,
            admissibility: Admissibility::Strict,
        }
    }
}

/// Current point of one restart.
#[derive(Clone, Debug)]
pub struct SearchState {
    pub g: Graph,
    pub q: f64,
    pub perron: PerronResult<f64>,
    pub moves_tried: usize,
    pub restart_index: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestartTrace {
    pub restart_index: usize,
    pub initializer: String,
    pub start_q: f64,
    pub best_q: f64,
    pub accepted_moves: usize,
    pub moves_tried: usize,
    pub exact_solves: usize,
    pub screened_out_checked: usize,
    /// Screened-out moves whose exact gain exceeded [`MISS_EPS`].
    pub screened_out_improving: usize,
    /// Candidates examined in the final pass that found no improvement.
    pub candidates_at_termination: usize,
    pub local_optimum: bool,
    #[serde(skip)]
    pub wall_ms: u64,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best: Graph,
    pub q: f64,
    pub best_restart: usize,
    pub trace: Vec<RestartTrace>,
}

fn restart_rng(seed: u64, restart_index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ restart_index as u64)
}

fn admissible(g: &Graph, p: &ExtremalParams, rule: Admissibility) -> bool {
    match rule {
        Admissibility::Strict => is_admissible(g, p),
        Admissibility::AllowC4(t) => {
            g.m() == p.m
                && !g.has_isolated_vertex()
                && g.max_degree() <= p.degree_cap()
                && count_c4(g) <= t
        }
    }
}

/// A seeded random admissible graph: either `S+` scrambled by random legal
/// rotations, or a greedy random connected C4-free graph under the degree
/// cap.
pub fn random_admissible(p: &ExtremalParams, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_admissible_with(p, &mut rng).map(|(g, _)| g)
}

fn random_admissible_with(
    p: &ExtremalParams,
    rng: &mut ChaCha8Rng,
) -> Result<(Graph, &'static str)> {
    if !p.splus_constructible() {
        return Err(Error::InvalidParams(format!(
            "search needs m >= 3k+3 = {}",
            3 * p.k + 3
        )));
    }
    let (g, name) = if rng.gen_bool(0.5) {
        (perturbed_splus(p, rng)?, "perturbed-splus")
    } else {
        (greedy_random(p, rng), "greedy-random")
    };
    debug_assert!(is_admissible(&g, p));
    Ok((g, name))
}

fn perturbed_splus(p: &ExtremalParams, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut g = construct_splus(p)?.graph;
    let rotations = rng.gen_range(1..=(p.m / 4).max(1));
    let mut done = 0;
    let mut attempts = 0;
    while done < rotations && attempts < 100 * rotations {
        attempts += 1;
        let edges = g.edge_list();
        let remove = edges[rng.gen_range(0..edges.len())];
        let a = rng.gen_range(0..g.n());
        let b = rng.gen_range(0..=g.n());
        let mv = Move {
            remove,
            add: (a, b),
        };
        if let Some(h) = apply_legal(&g, &mv, p, Admissibility::Strict).filter(|h| h.n() <= p.m + 1)
        {
            g = h;
            done += 1;
        }
    }
    Ok(g)
}

fn greedy_random(p: &ExtremalParams, rng: &mut ChaCha8Rng) -> Graph {
    let cap = p.degree_cap();
    let mut g = Graph::complete(2);
    while g.m() < p.m {
        let n = g.n();
        let roll: f64 = rng.gen();
        let next = if roll < 0.6 && n >= 3 {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            (a != b
                && !g.has_edge(a, b)
                && g.neighbors(a).len() < cap
                && g.neighbors(b).len() < cap
                && !edge_closes_c4(&g, a, b))
            .then(|| g.with_edge(a, b).expect("checked non-edge"))
        } else {
            let a = rng.gen_range(0..n);
            (g.neighbors(a).len() < cap)
                .then(|| g.with_vertex().with_edge(a, n).expect("fresh vertex"))
        };
        if let Some(h) = next {
            g = h;
        }
    }
    g
}

#[derive(Clone, Copy, Debug)]
struct Move {
    remove: Edge,
    /// `add.1 == n` means a fresh vertex.
    add: Edge,
}

/// Result of applying `mv` if the outcome is admissible.
fn apply_legal(g: &Graph, mv: &Move, p: &ExtremalParams, rule: Admissibility) -> Option<Graph> {
    let n = g.n();
    let (c, d) = mv.remove;
    let (a, b) = mv.add;
    if a == b || a >= n || b > n || !g.has_edge(c, d) || (b < n && g.has_edge(a, b)) {
        return None;
    }
    if (a, b) == (c.min(d), c.max(d)) || (b, a) == (c.min(d), c.max(d)) {
        return None;
    }
    let deg_after = |v: usize| -> usize {
        let base = if v < n { g.neighbors(v).len() } else { 0 };
        base + usize::from(v == a || v == b) - usize::from(v == c || v == d)
    };
    if deg_after(a) > p.degree_cap() || deg_after(b) > p.degree_cap() {
        return None;
    }
    if rule == Admissibility::Strict && b < n && closes_c4_without(g, a, b, (c, d)) {
        return None;
    }
    let mut h = g.without_edge(c, d).ok()?;
    if b == n {
        h = h.with_vertex();
    }
    h = h.with_edge(a, b).ok()?;
    if h.has_isolated_vertex() {
        h = h.without_isolated();
    }
    if let Admissibility::AllowC4(t) = rule {
        if count_c4(&h) > t {
            return None;
        }
    }
    Some(h)
}

/// Whether `g - cd` has a path `a - x - y - b` on four distinct vertices.
fn closes_c4_without(g: &Graph, a: usize, b: usize, removed: Edge) -> bool {
    let gone = |u: usize, v: usize| (u, v) == removed || (v, u) == removed;
    let nb = g.neighbors(b);
    g.neighbors(a).iter().any(|&x| {
        x != b
            && !gone(a, x)
            && g.neighbors(x).iter().any(|&y| {
                y != a && y != b && !gone(x, y) && !gone(y, b) && nb.binary_search(&y).is_ok()
            })
    })
}

/// Maps the Perron vector of `g` onto the vertices of `h`, the result of
/// `mv` (fresh vertex appended, isolated vertices dropped), as a warm start.
fn warm_start(g: &Graph, pr: &PerronResult<f64>, mv: &Move, h: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut x = pr.x.clone();
    if mv.add.1 == n {
        x.push(0.0);
    }
    let mut degs: Vec<usize> = (0..n).map(|v| g.neighbors(v).len()).collect();
    if mv.add.1 == n {
        degs.push(0);
    }
    degs[mv.remove.0] -= 1;
    degs[mv.remove.1] -= 1;
    degs[mv.add.0] += 1;
    degs[mv.add.1] += 1;
    let kept: Vec<f64> = x
        .into_iter()
        .zip(degs)
        .filter(|&(_, d)| d > 0)
        .map(|(v, _)| v)
        .collect();
    debug_assert_eq!(kept.len(), h.n());
    let floor = 1e-3 * kept.iter().copied().fold(0.0, f64::max).max(1e-12);
    kept.into_iter().map(|v| v + floor).collect()
}

fn solve(g: &Graph, start: Option<&[f64]>) -> Result<PerronResult<f64>> {
    perron_dominant(g, start, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

fn run_restart(
    p: &ExtremalParams,
    cfg: &SearchConfig,
    restart_index: usize,
) -> Result<(SearchState, RestartTrace)> {
    let clock = Instant::now();
    let mut rng = restart_rng(cfg.seed, restart_index);
    let (g0, initializer) = random_admissible_with(p, &mut rng)?;
    let pr = solve(&g0, None)?;
    let mut state = SearchState {
        q: pr.q,
        g: g0,
        perron: pr,
        moves_tried: 0,
        restart_index,
    };
    let mut trace = RestartTrace {
        restart_index,
        initializer: initializer.to_string(),
        start_q: state.q,
        best_q: state.q,
        accepted_moves: 0,
        moves_tried: 0,
        exact_solves: 0,
        screened_out_checked: 0,
        screened_out_improving: 0,
        candidates_at_termination: 0,
        local_optimum: false,
        wall_ms: 0,
    };
    'passes: loop {
        let g = &state.g;
        let n = g.n();
        let edges = g.edge_list();
        let mut adds: Vec<Edge> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !g.has_edge(a, b) {
                    adds.push((a, b));
                }
            }
            adds.push((a, n));
        }
        let mut moves: Vec<(u32, u32)> = (0..edges.len() as u32)
            .flat_map(|e| (0..adds.len() as u32).map(move |f| (e, f)))
            .collect();
        moves.shuffle(&mut rng);
        let mut examined = 0;
        for (e, f) in moves {
            if state.moves_tried >= cfg.move_cap {
                break 'passes;
            }
            state.moves_tried += 1;
            examined += 1;
            let mv = Move {
                remove: edges[e as usize],
                add: adds[f as usize],
            };
            let bound = {
                let x = &state.perron.x;
                let xa = x[mv.add.0];
                let xb = if mv.add.1 == n { 0.0 } else { x[mv.add.1] };
                let (xc, xd) = (x[mv.remove.0], x[mv.remove.1]);
                (xa + xb) * (xa + xb) - (xc + xd) * (xc + xd)
            };
            let screened_in = !cfg.screening || bound > 0.0;
            let sampled = !screened_in && rng.gen_bool(cfg.subsample_rate);
            if !screened_in && !sampled {
                continue;
            }
            let Some(h) = apply_legal(&state.g, &mv, p, cfg.admissibility) else {
                continue;
            };
            let warm = warm_start(&state.g, &state.perron, &mv, &h);
            let pr = solve(&h, Some(&warm))?;
            trace.exact_solves += 1;
            let gain = pr.q - state.q;
            if sampled {
                trace.screened_out_checked += 1;
                if gain > MISS_EPS {
                    trace.screened_out_improving += 1;
                }
            }
            if gain > ACCEPT_EPS {
                state.g = h;
                state.q = pr.q;
                state.perron = pr;
                trace.accepted_moves += 1;
                continue 'passes;
            }
        }
        trace.candidates_at_termination = examined;
        trace.local_optimum = true;
        break;
    }
    trace.best_q = state.q;
    trace.moves_tried = state.moves_tried;
    trace.wall_ms = clock.elapsed().as_millis() as u64;
    Ok((state, trace))
}

/// Runs `cfg.restarts` independent climbs and returns the best state.
///
/// Restarts run in parallel; the result does not depend on the worker
/// count. Ties within 1e-12 go to the lowest restart index.
pub fn local_search(p: &ExtremalParams, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if cfg.restarts == 0 {
        return Err(Error::InvalidParams("restarts must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&cfg.subsample_rate) {
        return Err(Error::InvalidParams(
            "subsample rate must lie in [0, 1]".into(),
        ));
    }
    let runs = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(p, cfg, r))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, (state, _)) in runs.iter().enumerate() {
        if state.q > runs[best].0.q + ACCEPT_EPS {
            best = i;
        }
    }
    let trace = runs.iter().map(|(_, t)| t.clone()).collect();
    let (state, _) = runs.into_iter().nth(best).expect("at least one restart");
    Ok(SearchOutcome {
        best: state.g,
        q: state.q,
        best_restart: best,
        trace,
    })
}

/// Whether the final graph keeps every admissibility invariant.
pub fn check_outcome(outcome: &SearchOutcome, p: &ExtremalParams, rule: Admissibility) -> bool {
    admissible(&outcome.best, p, rule) && (rule != Admissibility::Strict || !has_c4(&outcome.best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::q_index_default;

    #[test]
    fn random_admissible_is_admissible_and_seeded() {
        for (m, k) in [(31usize, 0usize), (7, 1), (20, 3), (45, 1)] {
            let p = ExtremalParams::new(m, k);
            for seed in 0..12 {
                let g = random_admissible(&p, seed).unwrap();
                assert!(is_admissible(&g, &p), "{m} {k} {seed}");
                assert!(g.n() <= m + 1);
                assert_eq!(g, random_admissible(&p, seed).unwrap());
            }
        }
        assert!(random_admissible(&ExtremalParams::new(5, 1), 0).is_err());
    }

    #[test]
    fn legal_moves_keep_invariants() {
        let p = ExtremalParams::new(12, 1);
        let g = construct_splus(&p).unwrap().graph;
        let n = g.n();
        for remove in g.edge_list() {
            for a in 0..n {
                for b in a + 1..=n {
                    let mv = Move {
                        remove,
                        add: (a, b),
                    };
                    if let Some(h) = apply_legal(&g, &mv, &p, Admissibility::Strict) {
                        assert!(is_admissible(&h, &p), "{mv:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn c4_check_ignores_removed_edge() {
        // path 0-1-2-3: adding 0-3 closes a 4-cycle unless 1-2 goes away
        let g = Graph::path(4);
        assert!(closes_c4_without(&g, 0, 3, (4, 5)));
        assert!(!closes_c4_without(&g, 0, 3, (1, 2)));
    }

    #[test]
    fn small_search_matches_enumeration() {
        let p = ExtremalParams::new(7, 1);
        let out = local_search(&p, &SearchConfig::default()).unwrap();
        let exact = crate::enumerate::extremal_by_enumeration(&p).unwrap();
        assert!((out.q - exact.q).abs() <= 1e-8);
        assert!(is_admissible(&out.best, &p));
        assert!((q_index_default(&out.best).unwrap() - out.q).abs() < 1e-9);
    }

    #[test]
    fn accepted_moves_strictly_improve() {
        let p = ExtremalParams::new(25, 1);
        let cfg = SearchConfig {
            restarts: 4,
            ..SearchConfig::default()
        };
        let out = local_search(&p, &cfg).unwrap();
        for t in &out.trace {
            assert!(t.best_q >= t.start_q);
            assert!(t.accepted_moves == 0 || t.best_q > t.start_q);
            assert!(t.local_optimum);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let p = ExtremalParams::new(20, 1);
        let cfg = SearchConfig {
            restarts: 3,
            seed: 9,
            ..SearchConfig::default()
        };
        let a = local_search(&p, &cfg).unwrap();
        let b = local_search(&p, &cfg).unwrap();
        assert_eq!(a.best, b.best);
        assert_eq!(a.q, b.q);
        let strip = |t: &[RestartTrace]| -> Vec<RestartTrace> {
            t.iter()
                .cloned()
                .map(|mut r| {
                    r.wall_ms = 0;
                    r
                })
                .collect()
        };
        assert_eq!(strip(&a.trace), strip(&b.trace));
    }

    #[test]
    fn bad_config_rejected() {
        let p = ExtremalParams::new(20, 1);
        let cfg = SearchConfig {
            restarts: 0,
            ..SearchConfig::default()
        };
        assert!(local_search(&p, &cfg).is_err());
    }
}
