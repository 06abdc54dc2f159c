//! Harnesses that check the extremal statements numerically and emit
//! [`Certificate`]s.

mod certificate;

pub use certificate::{Certificate, Verdict, Witness};

use certificate::Builder;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{
    extremal_by_enumeration, ClassCatalog, GraphFilter, FILTERED_LIMIT, NO_ISOLATED_LIMIT,
};
use crate::error::{Error, Result};
use crate::families::{
    construct_splus, construct_star, is_splus, quotient_matrix, splus_bounds, splus_cubic,
    ExtremalParams,
};
use crate::graph::{canonical_form, Graph};
use crate::optimize::{local_search, Admissibility, SearchConfig, SEARCH_LIMIT};
use crate::spectral::{
    feng_bound, perron, perron_dominant, rotation_delta_lower_bound, spectrum_dense,
    DEFAULT_MAX_ITER, DEFAULT_TOL, DENSE_LIMIT,
};

/// Largest `m` for which the lemma-bounds grid also solves `S+` iteratively.
pub const CROSS_CHECK_CEILING: usize = 500;
/// Relative agreement required between the cubic root and the Perron root.
pub const CROSS_CHECK_REL: f64 = 1e-8;
/// Quotient eigenvalue to Q-spectrum matching.
pub const QUOTIENT_EIG_TOL: f64 = 1e-7;
/// Agreement of the largest quotient eigenvalue with `q`.
pub const QUOTIENT_Q_TOL: f64 = 1e-9;
pub const FENG_SLACK: f64 = 1e-9;
pub const ROTATION_SLACK: f64 = 1e-9;
/// Pendant entry agreement in the claims harness.
pub const PENDANT_TOL: f64 = 1e-9;
/// Numerical tie threshold for maxima.
pub const TIE_TOL: f64 = 1e-9;
/// Probe window below `q(S+)`.
pub const PROBE_BELOW: f64 = 1e-6;
/// Probe window above `q(S+)`.
pub const PROBE_ABOVE: f64 = 1e-9;
/// Largest `n` for random graphs in the Feng and rotation harnesses.
pub const RANDOM_N_LIMIT: usize = 12;

const SEARCH_NOTE: &str = "heuristic probe: seeded local search over admissible graphs; \
a pass means no admissible graph above q(S+) was found, which is evidence and not a proof";
const CLAIMS_NOTE: &str = "structural statements about a maximizer are checked on S+ only; \
other maximizers are not reachable at this scale";

/// `m` endpoints of a lemma-bounds grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MRange {
    /// From the theorem threshold for each `k` up to the given `m`.
    Auto(usize),
    Explicit(usize, usize),
}

impl MRange {
    pub fn bounds(&self, k: usize) -> (usize, usize) {
        match *self {
            MRange::Auto(hi) => (ExtremalParams::theorem_min_m(k), hi),
            MRange::Explicit(lo, hi) => (lo, hi),
        }
    }
}

/// One point of the lemma-bounds grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub m: usize,
    pub k: usize,
    pub lower: f64,
    pub q: f64,
    pub upper: f64,
    pub perron_q: Option<f64>,
    pub ok: bool,
}

impl BoundRow {
    pub const CSV_HEADER: &'static str = "m,k,lower,q,upper,perron_q,ok";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.m,
            self.k,
            self.lower,
            self.q,
            self.upper,
            self.perron_q.map(|v| v.to_string()).unwrap_or_default(),
            self.ok
        )
    }
}

/// Knobs for the lemma-bounds harness.
#[derive(Clone, Copy, Debug)]
pub struct LemmaOptions {
    pub cross_check_ceiling: usize,
    /// Adds 1 to the cubic's constant term. Negative control only.
    pub corrupt_cubic: bool,
}

impl Default for LemmaOptions {
    fn default() -> Self {
        LemmaOptions {
            cross_check_ceiling: CROSS_CHECK_CEILING,
            corrupt_cubic: false,
        }
    }
}

fn bound_row(p: ExtremalParams, opts: &LemmaOptions, tol: f64) -> Result<BoundRow> {
    let mut cubic = splus_cubic::<f64>(&p)?;
    if opts.corrupt_cubic {
        cubic.coeffs[3] += 1.0;
    }
    let q = cubic.largest_root_from((p.m - p.k + 3) as f64)?;
    let b = splus_bounds::<f64>(&p)?;
    let perron_q = if p.m <= opts.cross_check_ceiling {
        let g = construct_splus(&p)?.graph;
        Some(perron(&g, tol, DEFAULT_MAX_ITER)?.q)
    } else {
        None
    };
    let agrees = perron_q.is_none_or(|pq| (pq - q).abs() <= CROSS_CHECK_REL * q.abs());
    Ok(BoundRow {
        m: p.m,
        k: p.k,
        lower: b.lower,
        q,
        upper: b.upper,
        perron_q,
        ok: b.lower < q && q < b.upper && agrees,
    })
}

/// Every point of the grid, ordered by `k` then `m`. Points below the
/// theorem threshold are an error.
pub fn lemma_bounds_grid(
    k_range: (usize, usize),
    m_range: MRange,
    tol: f64,
    opts: &LemmaOptions,
) -> Result<Vec<BoundRow>> {
    let mut points = Vec::new();
    for k in k_range.0..=k_range.1 {
        let (lo, hi) = m_range.bounds(k);
        let min = ExtremalParams::theorem_min_m(k);
        if lo < min {
            return Err(Error::InvalidParams(format!(
                "grid point (m = {lo}, k = {k}) is below the threshold m >= {min}"
            )));
        }
        points.extend((lo..=hi).map(|m| ExtremalParams::new(m, k)));
    }
    points
        .par_iter()
        .map(|&p| bound_row(p, opts, tol))
        .collect()
}

pub fn verify_lemma_bounds(k_range: (usize, usize), m_range: MRange, tol: f64) -> Certificate {
    verify_lemma_bounds_with(k_range, m_range, tol, &LemmaOptions::default()).0
}

/// The certificate together with the grid rows it summarizes.
pub fn verify_lemma_bounds_with(
    k_range: (usize, usize),
    m_range: MRange,
    tol: f64,
    opts: &LemmaOptions,
) -> (Certificate, Vec<BoundRow>) {
    let mut b = Builder::new("lemma-bounds");
    b.param("k_range", [k_range.0, k_range.1])
        .param("m_range", m_range)
        .param("cross_check_ceiling", opts.cross_check_ceiling)
        .param("corrupt_cubic", opts.corrupt_cubic)
        .tolerance("perron", tol)
        .tolerance("cross_check_relative", CROSS_CHECK_REL);
    let rows = match lemma_bounds_grid(k_range, m_range, tol, opts) {
        Ok(rows) => rows,
        Err(e) => {
            b.witness(Witness::text("error", e.to_string()));
            let verdict = if matches!(e, Error::NoConvergence { .. }) {
                Verdict::Inconclusive
            } else {
                Verdict::Refused
            };
            return (b.finish(verdict), Vec::new());
        }
    };
    b.witness(Witness::value("grid_points", rows.len() as f64));
    let cross = rows.iter().filter(|r| r.perron_q.is_some()).count();
    b.witness(Witness::value("cross_checked_points", cross as f64));
    let verdict = match rows.iter().find(|r| !r.ok) {
        Some(bad) => {
            b.witness(Witness::record("first_failure", bad));
            Verdict::Fail
        }
        None => {
            let tightest = rows
                .iter()
                .map(|r| (r.q - r.lower).min(r.upper - r.q))
                .fold(f64::INFINITY, f64::min);
            b.witness(Witness::value("smallest_margin", tightest));
            if rows.is_empty() {
                Verdict::Refused
            } else {
                Verdict::Pass
            }
        }
    };
    (b.finish(verdict), rows)
}

/// Exhaustive check that `K_{1,m}` is the unique maximizer of `q` over
/// graphs with `m` edges and no isolated vertex, `4 <= m <= 8`.
pub fn verify_zhai(m: usize, tol: f64) -> Certificate {
    let mut b = Builder::new("zhai");
    b.param("m", m).tolerance("tie", tol);
    if !(4..=NO_ISOLATED_LIMIT).contains(&m) {
        b.witness(Witness::text(
            "reason",
            format!("m must lie in 4..={NO_ISOLATED_LIMIT}"),
        ));
        return b.finish(Verdict::Refused);
    }
    let catalog = match ClassCatalog::build(m, &GraphFilter::default()) {
        Ok(c) => c,
        Err(e) => {
            b.witness(Witness::text("error", e.to_string()));
            return b.finish(Verdict::Inconclusive);
        }
    };
    let target = m as f64 + 1.0;
    let star = canonical_form(&construct_star(m).expect("m >= 1")).expect("m + 1 <= 12");
    let qs: Vec<f64> = catalog.composites.iter().map(|c| catalog.q(c)).collect();
    b.witness(Witness::value("class_count", qs.len() as f64));
    if let Some(i) = qs.iter().position(|&q| q > target + tol) {
        b.witness(Witness::graph(
            "violator",
            &catalog.assemble(&catalog.composites[i]),
        ))
        .witness(Witness::value("violator_q", qs[i]));
        return b.finish(Verdict::Fail);
    }
    let top: Vec<usize> = (0..qs.len()).filter(|&i| qs[i] > target - tol).collect();
    let q_max = qs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    b.witness(Witness::value("q", q_max));
    let graphs: Vec<Graph> = top
        .iter()
        .map(|&i| catalog.assemble(&catalog.composites[i]))
        .collect();
    let is_star = |g: &Graph| canonical_form(g).is_ok_and(|f| f == star);
    match graphs.as_slice() {
        [g] if is_star(g) => {
            b.witness(Witness::text("maximizer", format!("K_{{1,{m}}}")))
                .witness(Witness::graph("maximizer_graph", g));
            b.finish(Verdict::Pass)
        }
        [] => {
            b.witness(Witness::text("reason", "no class attains m+1"));
            b.finish(Verdict::Fail)
        }
        [g] => {
            b.witness(Witness::graph("maximizer_graph", g));
            b.finish(Verdict::Fail)
        }
        many => {
            for (i, g) in many.iter().enumerate() {
                b.witness(Witness::graph(format!("tied_{i}"), g));
            }
            b.finish(Verdict::Tie)
        }
    }
}

/// Checks the three-class quotient of `S+` against its dense Q-spectrum.
pub fn verify_quotient(p: &ExtremalParams, tol: f64) -> Certificate {
    verify_quotient_with(p, tol, false)
}

/// `inject_bad_partition` moves one pendant into the matched class, which
/// breaks equitability. Negative control only.
pub fn verify_quotient_with(
    p: &ExtremalParams,
    tol: f64,
    inject_bad_partition: bool,
) -> Certificate {
    let mut b = Builder::new("quotient");
    b.param("m", p.m)
        .param("k", p.k)
        .param("inject_bad_partition", inject_bad_partition)
        .tolerance("eigenvalue_match", QUOTIENT_EIG_TOL)
        .tolerance("q_match", QUOTIENT_Q_TOL)
        .tolerance("perron", tol);
    if p.m < 3 * p.k + 4 || p.m - p.k > DENSE_LIMIT {
        b.witness(Witness::text(
            "reason",
            format!("needs m >= 3k+4 and m-k <= {DENSE_LIMIT}"),
        ));
        return b.finish(Verdict::Refused);
    }
    let s = construct_splus(p).expect("m >= 3k+4");
    let mut classes = s.partition().classes();
    if inject_bad_partition {
        let moved = classes[2].pop().expect("pendant class is non-empty");
        classes[1].push(moved);
        if classes[2].is_empty() {
            classes.pop();
        }
    }
    let quotient = match quotient_matrix::<f64>(&s.graph, &classes) {
        Ok(qm) => qm,
        Err(e) => {
            b.witness(Witness::text("error", e.to_string()));
            return b.finish(Verdict::Refused);
        }
    };
    let spectrum = spectrum_dense::<f64>(&s.graph).expect("within dense limit");
    let q = match perron(&s.graph, tol, DEFAULT_MAX_ITER) {
        Ok(pr) => pr.q,
        Err(e) => {
            b.witness(Witness::text("error", e.to_string()));
            return b.finish(Verdict::Inconclusive);
        }
    };
    let eigs = quotient.eigenvalues();
    b.witness(Witness::record("quotient_matrix", &quotient.entries))
        .witness(Witness::record("quotient_eigenvalues", &eigs))
        .witness(Witness::value("q", q));
    let unmatched: Vec<f64> = eigs
        .iter()
        .copied()
        .filter(|&e| !spectrum.contains(e, QUOTIENT_EIG_TOL))
        .collect();
    let top = eigs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let verdict = if !unmatched.is_empty() {
        b.witness(Witness::record("unmatched_eigenvalues", &unmatched))
            .witness(Witness::graph("splus", &s.graph));
        Verdict::Fail
    } else if (top - q).abs() > QUOTIENT_Q_TOL {
        b.witness(Witness::value("largest_quotient_eigenvalue", top))
            .witness(Witness::graph("splus", &s.graph));
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    b.finish(verdict)
}

/// Random connected graph on `n` vertices: a random recursive tree plus
/// each remaining pair independently with a random density.
fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let density: f64 = rng.gen();
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(&edges, Some(n)).expect("simple by construction")
}

/// Feng's degree bound on seeded random connected graphs plus its equality
/// cases, cycles and complete bipartite graphs.
pub fn verify_feng(trials: usize, n_max: usize, seed: u64, tol: f64) -> Certificate {
    let mut b = Builder::new("feng");
    b.param("trials", trials)
        .param("n_max", n_max)
        .param("seed", seed)
        .tolerance("slack", tol);
    if !(2..=DENSE_LIMIT).contains(&n_max) {
        b.witness(Witness::text(
            "reason",
            format!("n_max must lie in 2..={DENSE_LIMIT}"),
        ));
        return b.finish(Verdict::Refused);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Graph> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(2..=n_max);
            random_connected(&mut rng, n)
        })
        .collect();
    let evaluate = |g: &Graph| -> (f64, f64) {
        let q = spectrum_dense::<f64>(g)
            .expect("within dense limit")
            .largest();
        (q, feng_bound::<f64>(g).expect("connected, n >= 2"))
    };
    let random: Vec<(f64, f64)> = graphs.par_iter().map(evaluate).collect();
    let mut equality_cases: Vec<(String, Graph)> = (3..=12)
        .map(|n| (format!("C_{n}"), Graph::cycle(n)))
        .collect();
    for a in 1..=6 {
        for c in a..=6 {
            equality_cases.push((format!("K_{{{a},{c}}}"), Graph::complete_bipartite(a, c)));
        }
    }
    let equal: Vec<(f64, f64)> = equality_cases
        .par_iter()
        .map(|(_, g)| evaluate(g))
        .collect();

    let worst = random
        .iter()
        .map(|&(q, f)| q - f)
        .fold(f64::NEG_INFINITY, f64::max);
    b.witness(Witness::value("max_q_minus_bound", worst));
    let eq_worst = equal
        .iter()
        .map(|&(q, f)| (q - f).abs())
        .fold(0.0, f64::max);
    b.witness(Witness::value("max_equality_gap", eq_worst));
    if let Some(i) = random.iter().position(|&(q, f)| q > f + tol) {
        b.witness(Witness::graph("violator", &graphs[i]))
            .witness(Witness::value("violator_q", random[i].0))
            .witness(Witness::value("violator_bound", random[i].1));
        return b.finish(Verdict::Fail);
    }
    if let Some(i) = equal.iter().position(|&(q, f)| (q - f).abs() > tol) {
        b.witness(Witness::text("equality_case", &equality_cases[i].0))
            .witness(Witness::graph("equality_graph", &equality_cases[i].1));
        return b.finish(Verdict::Fail);
    }
    b.finish(Verdict::Pass)
}

/// One sampled rotation, kept for witnesses.
#[derive(Clone, Debug, Serialize)]
struct RotationSample {
    #[serde(skip)]
    graph: Graph,
    graph6: String,
    remove: (usize, usize),
    add: (usize, usize),
}

fn sample_rotation(rng: &mut ChaCha8Rng, n_max: usize) -> RotationSample {
    loop {
        let n = rng.gen_range(3..=n_max);
        let g = random_connected(rng, n);
        let edges = g.edge_list();
        let non_edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        if non_edges.is_empty() {
            continue;
        }
        let remove = edges[rng.gen_range(0..edges.len())];
        let add = non_edges[rng.gen_range(0..non_edges.len())];
        return RotationSample {
            graph6: crate::graph::to_graph6(&g),
            graph: g,
            remove,
            add,
        };
    }
}

/// Exact `q(G') - q(G)` against the Rayleigh lower bound on seeded random
/// rotations with `n <= 10`.
pub fn verify_rotation(trials: usize, seed: u64, tol: f64) -> Certificate {
    const N_MAX: usize = 10;
    let mut b = Builder::new("rotation");
    b.param("trials", trials)
        .param("seed", seed)
        .param("n_max", N_MAX)
        .tolerance("slack", tol)
        .tolerance("perron", DEFAULT_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<RotationSample> = (0..trials)
        .map(|_| sample_rotation(&mut rng, N_MAX))
        .collect();
    let results: Vec<Result<(f64, f64)>> = samples
        .par_iter()
        .map(|s| {
            let pr = perron_dominant::<f64>(&s.graph, None, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
            let bound = rotation_delta_lower_bound(&s.graph, s.remove, s.add, &pr)?;
            let h = s.graph.rotate(s.remove, s.add)?;
            let before = spectrum_dense::<f64>(&s.graph)?.largest();
            let after = spectrum_dense::<f64>(&h)?.largest();
            Ok((after - before, bound))
        })
        .collect();
    let mut worst = f64::INFINITY;
    for (s, r) in samples.iter().zip(&results) {
        match r {
            Ok((delta, bound)) => {
                worst = worst.min(delta - bound);
                if *delta < bound - tol {
                    b.witness(Witness::record("violation", s))
                        .witness(Witness::value("delta", *delta))
                        .witness(Witness::value("bound", *bound));
                    return b.finish(Verdict::Fail);
                }
            }
            Err(e) => {
                b.witness(Witness::record("sample", s))
                    .witness(Witness::text("error", e.to_string()));
                return b.finish(Verdict::Inconclusive);
            }
        }
    }
    b.witness(Witness::value("min_delta_minus_bound", worst));
    b.finish(Verdict::Pass)
}

/// Vertex classes relative to the Perron argmax `u_star`: its neighbors
/// `a` (split into degree-one `a1` and the rest `a2`) and the non-neighbors
/// `b` (split into `b1` with no neighbor in `b` and the rest `b2`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartitionStats {
    pub u_star: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
}

impl VertexPartitionStats {
    pub fn new(g: &Graph, u_star: usize) -> Self {
        let a: Vec<usize> = g.neighbors(u_star).to_vec();
        let b: Vec<usize> = (0..g.n())
            .filter(|&v| v != u_star && !g.has_edge(u_star, v))
            .collect();
        let (a1, a2) = a.iter().partition(|&&v| g.neighbors(v).len() == 1);
        let in_b = |v: &usize| b.binary_search(v).is_ok();
        let (b1, b2) = b.iter().partition(|&&v| !g.neighbors(v).iter().any(in_b));
        VertexPartitionStats {
            u_star,
            a,
            b,
            a1,
            a2,
            b1,
            b2,
        }
    }

    /// Number of neighbors of `v` inside `a`.
    pub fn degree_into_a(&self, g: &Graph, v: usize) -> usize {
        g.neighbors(v)
            .iter()
            .filter(|u| self.a.binary_search(u).is_ok())
            .count()
    }
}

/// Structural statements about the Perron vector of `S+`. Outside the
/// theorem range the run is report-only.
pub fn verify_claims_on_splus(p: &ExtremalParams, tol: f64) -> Certificate {
    let mut b = Builder::new("claims");
    let strict = p.theorem_threshold();
    b.param("m", p.m)
        .param("k", p.k)
        .param("mode", if strict { "strict" } else { "report-only" })
        .tolerance("pendant", PENDANT_TOL)
        .tolerance("perron", tol)
        .note(CLAIMS_NOTE);
    let s = match construct_splus(p) {
        Ok(s) => s,
        Err(e) => {
            b.witness(Witness::text("error", e.to_string()));
            return b.finish(Verdict::Refused);
        }
    };
    let g = &s.graph;
    let pr = match perron(g, tol, DEFAULT_MAX_ITER) {
        Ok(pr) => pr,
        Err(e) => {
            b.witness(Witness::text("error", e.to_string()));
            return b.finish(Verdict::Inconclusive);
        }
    };
    let u_star = pr.argmax();
    let x_star = pr.x[u_star];
    let tied = (0..g.n()).any(|v| v != u_star && x_star - pr.x[v] <= 1e3 * tol * x_star);
    b.witness(Witness::value("q", pr.q))
        .witness(Witness::value("x_star", x_star));
    if tied {
        b.witness(Witness::text(
            "reason",
            "argmax of the Perron vector is tied",
        ));
        return b.finish(Verdict::Inconclusive);
    }
    let stats = VertexPartitionStats::new(g, u_star);
    let q = pr.q;
    let k = p.k;
    let pendant = x_star / (q - 1.0);
    let degree_cap_bound = (k as f64 + 3.0) / (2.0 * (q - k as f64 - 2.0)) * x_star;
    let others = || (0..g.n()).filter(|&v| v != u_star);
    let checks: Vec<(&str, bool)> = vec![
        ("u_star_is_center", u_star == s.center()),
        ("a_size", stats.a.len() == p.m - p.k - 1),
        ("a1_size", stats.a1.len() + 3 * k + 3 == p.m),
        ("a1_at_least_two", stats.a1.len() >= 2),
        ("b_empty", stats.b.is_empty()),
        (
            "degree_into_a_at_most_one",
            others().all(|v| stats.degree_into_a(g, v) <= 1),
        ),
        (
            "entries_below_half",
            others().all(|v| pr.x[v] < 0.5 * x_star),
        ),
        (
            "pendant_entries",
            stats
                .a1
                .iter()
                .all(|&v| (pr.x[v] - pendant).abs() <= PENDANT_TOL),
        ),
        (
            "degrees_at_most_k_plus_2",
            others().all(|v| g.neighbors(v).len() <= k + 2),
        ),
        (
            "a2_entries_bounded",
            stats
                .a2
                .iter()
                .all(|&v| pr.x[v] <= degree_cap_bound * (1.0 + PENDANT_TOL)),
        ),
    ];
    if stats.a1.len() < 2 {
        b.witness(Witness::text(
            "range",
            "m - 3k - 3 < 2: outside the claim range",
        ));
    }
    if let Some(&v) = stats.a1.first() {
        b.witness(Witness::value("pendant_ratio", pr.x[v] / x_star));
    }
    b.witness(Witness::value("expected_pendant_ratio", 1.0 / (q - 1.0)))
        .witness(Witness::record(
            "partition_sizes",
            [
                stats.a.len(),
                stats.a1.len(),
                stats.a2.len(),
                stats.b.len(),
                stats.b1.len(),
                stats.b2.len(),
            ],
        ));
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    b.witness(Witness::record("failed_checks", &failed));
    if !strict {
        return b.finish(Verdict::Informational);
    }
    if failed.is_empty() {
        b.finish(Verdict::Pass)
    } else {
        b.witness(Witness::graph("splus", g));
        b.finish(Verdict::Fail)
    }
}

/// `q(S+)` by Perron iteration when the closed form does not apply.
fn splus_q(p: &ExtremalParams) -> Result<f64> {
    match crate::families::splus_q_closed::<f64>(p) {
        Ok(q) => Ok(q),
        Err(_) => Ok(perron(&construct_splus(p)?.graph, DEFAULT_TOL, DEFAULT_MAX_ITER)?.q),
    }
}

/// Exhaustive membership check at desk scale: the admissible maximum is at
/// least `q(S+)`. Identity of the maximizer is reported, not asserted.
pub fn verify_extremal_small(p: &ExtremalParams, tol: f64) -> Certificate {
    let mut b = Builder::new("extremal-small");
    b.param("m", p.m)
        .param("k", p.k)
        .tolerance("membership", tol);
    if !p.splus_constructible() || p.theorem_threshold() || p.m > FILTERED_LIMIT {
        b.witness(Witness::text(
            "reason",
            format!(
                "needs 3k+3 <= m <= {FILTERED_LIMIT} and m below the theorem threshold; \
                 use theorem-probe at the threshold"
            ),
        ));
        return b.finish(Verdict::Refused);
    }
    b.note("uniqueness of the maximizer is reported only; the theorem range is not reachable by enumeration");
    let report = match extremal_by_enumeration(p) {
        Ok(r) => r,
        Err(e) => {
            b.witness(Witness::text("error", e.to_string()));
            return b.finish(Verdict::Refused);
        }
    };
    let q_splus = match splus_q(p) {
        Ok(q) => q,
        Err(e) => {
            b.witness(Witness::text("error", e.to_string()));
            return b.finish(Verdict::Inconclusive);
        }
    };
    let best_is_splus = is_splus(&report.best, p);
    b.witness(Witness::value("best_q", report.q))
        .witness(Witness::value("splus_q", q_splus))
        .witness(Witness::graph("best", &report.best))
        .witness(Witness::text("best_is_splus", best_is_splus.to_string()))
        .witness(Witness::value("tie_count", report.ties.len() as f64))
        .witness(Witness::value("class_count", report.class_count as f64));
    if let Some(gap) = report.runner_up_gap {
        b.witness(Witness::value("runner_up_gap", gap));
    }
    if report.q >= q_splus - tol {
        b.finish(Verdict::Pass)
    } else {
        b.finish(Verdict::Fail)
    }
}

/// Local-search probe at the theorem range. The search must land within
/// `[q(S+) - 1e-6, q(S+) + 1e-9]`: above is a counterexample, below is
/// inconclusive.
pub fn verify_theorem_probe(p: &ExtremalParams, restarts: usize, seed: u64) -> Certificate {
    verify_theorem_probe_with(
        p,
        &SearchConfig {
            restarts,
            seed,
            ..SearchConfig::default()
        },
    )
}

pub fn verify_theorem_probe_with(p: &ExtremalParams, cfg: &SearchConfig) -> Certificate {
    let mut b = Builder::new("theorem-probe");
    b.param("m", p.m)
        .param("k", p.k)
        .param("restarts", cfg.restarts)
        .param("seed", cfg.seed)
        .param("move_cap", cfg.move_cap)
        .param("screening", cfg.screening)
        .param("subsample_rate", cfg.subsample_rate)
        .param("admissibility", cfg.admissibility)
        .tolerance("below", PROBE_BELOW)
        .tolerance("above", PROBE_ABOVE)
        .note(SEARCH_NOTE);
    if !p.theorem_threshold() || p.m > SEARCH_LIMIT {
        b.witness(Witness::text(
            "reason",
            format!(
                "needs m >= {} and m <= {SEARCH_LIMIT}",
                ExtremalParams::theorem_min_m(p.k)
            ),
        ));
        return b.finish(Verdict::Refused);
    }
    let q_splus = match crate::families::splus_q_closed::<f64>(p) {
        Ok(q) => q,
        Err(e) => {
            b.witness(Witness::text("error", e.to_string()));
            return b.finish(Verdict::Refused);
        }
    };
    let out = match local_search(p, cfg) {
        Ok(o) => o,
        Err(e) => {
            b.witness(Witness::text("error", e.to_string()));
            return b.finish(Verdict::Inconclusive);
        }
    };
    let all_local_optima = out.trace.iter().all(|t| t.local_optimum);
    b.witness(Witness::value("best_q", out.q))
        .witness(Witness::value("splus_q", q_splus))
        .witness(Witness::value("excess", out.q - q_splus))
        .witness(Witness::graph("best", &out.best))
        .witness(Witness::text(
            "best_is_splus",
            is_splus(&out.best, p).to_string(),
        ))
        .witness(Witness::value("best_restart", out.best_restart as f64))
        .witness(Witness::record("trace", &out.trace));
    let verdict = if out.q > q_splus + PROBE_ABOVE {
        Verdict::Fail
    } else if out.q >= q_splus - PROBE_BELOW {
        Verdict::Pass
    } else {
        if !all_local_optima {
            b.witness(Witness::text("reason", "move budget exhausted"));
        }
        Verdict::Inconclusive
    };
    b.finish(verdict)
}

/// [`verify_theorem_probe`] with up to one 4-cycle tolerated. Negative
/// control: graphs with a 4-cycle can beat `S+`, so this should fail.
pub fn verify_theorem_probe_relaxed(p: &ExtremalParams, restarts: usize, seed: u64) -> Certificate {
    verify_theorem_probe_with(
        p,
        &SearchConfig {
            restarts,
            seed,
            admissibility: Admissibility::AllowC4(1),
            ..SearchConfig::default()
        },
    )
}
