use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Default residual tolerance (relative to `q`) for double precision.
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

/// Largest eigenvalue of `Q(G)` and its unit, nonnegative eigenvector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerronResult<T> {
    pub q: T,
    pub x: Vec<T>,
    /// `max_u |(Qx)_u - q x_u|` at the returned pair.
    pub residual: T,
    pub iterations: usize,
}

impl<T: Scalar> PerronResult<T> {
    /// Index of the largest entry; the lowest index wins exact ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.x.iter().enumerate() {
            if v > self.x[best] {
                best = i;
            }
        }
        best
    }
}

/// `y = Q x` for `Q = D + A`.
pub(crate) fn apply_q<T: Scalar>(g: &Graph, x: &[T], y: &mut [T]) {
    for (u, yu) in y.iter_mut().enumerate() {
        let nb = g.neighbors(u);
        let mut acc = T::from_count(nb.len()) * x[u];
        for &v in nb {
            acc += x[v];
        }
        *yu = acc;
    }
}

fn norm<T: Scalar>(x: &[T]) -> T {
    x.iter().map(|&v| v * v).sum::<T>().sqrt()
}

/// Perron pair of a connected graph by power iteration on `Q`, starting
/// from the all-ones vector.
///
/// `Q` has a positive diagonal wherever the degree is positive, so on a
/// connected graph it is primitive and the iteration converges without a
/// shift. Convergence is declared when `max_u |(Qx - qx)_u| <= tol * max(q, 1)`
/// with `q = x'Qx`. The tolerance is clamped below at `16 eps`.
pub fn perron<T: Scalar>(g: &Graph, tol: T, max_iter: usize) -> Result<PerronResult<T>> {
    perron_from(g, None, tol, max_iter)
}

/// [`perron`] with an optional warm start. Entries of `start` must be
/// positive; anything else falls back to the all-ones start.
pub fn perron_from<T: Scalar>(
    g: &Graph,
    start: Option<&[T]>,
    tol: T,
    max_iter: usize,
) -> Result<PerronResult<T>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParams(
            "Perron pair of the empty graph".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let tol = tol.max(T::tol_floor());
    let mut x: Vec<T> = match start {
        Some(s) if s.len() == n && s.iter().all(|&v| v > T::zero() && v.is_finite()) => s.to_vec(),
        _ => vec![T::one(); n],
    };
    let nx = norm(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let mut y = vec![T::zero(); n];
    let mut residual = T::infinity();
    for it in 0..=max_iter {
        apply_q(g, &x, &mut y);
        let q: T = x.iter().zip(&y).map(|(&a, &b)| a * b).sum();
        residual = x
            .iter()
            .zip(&y)
            .map(|(&a, &b)| (b - q * a).abs())
            .fold(T::zero(), T::max);
        if residual <= tol * q.max(T::one()) {
            return Ok(PerronResult {
                q,
                x,
                residual,
                iterations: it,
            });
        }
        let ny = norm(&y);
        for (a, &b) in x.iter_mut().zip(&y) {
            *a = b / ny;
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual: residual.to_f64().unwrap_or(f64::NAN),
    })
}

/// Perron pair of the component with the largest Q-index, embedded in the
/// whole vertex set with zeros elsewhere. Equal component indices resolve
/// to the component with the smallest vertex. Isolated vertices count as
/// components with index 0.
///
/// The vector still satisfies `Qx = qx` on the whole graph, so Rayleigh
/// arguments apply to disconnected graphs too.
pub fn perron_dominant<T: Scalar>(
    g: &Graph,
    start: Option<&[T]>,
    tol: T,
    max_iter: usize,
) -> Result<PerronResult<T>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParams(
            "Perron pair of the empty graph".into(),
        ));
    }
    let comps = g.components();
    if comps.len() == 1 {
        return perron_from(g, start, tol, max_iter);
    }
    let mut best: Option<(Vec<usize>, PerronResult<T>)> = None;
    for comp in comps {
        let sub = g.induced(&comp);
        let warm: Option<Vec<T>> = start.map(|s| comp.iter().map(|&v| s[v]).collect());
        let pr = perron_from(&sub, warm.as_deref(), tol, max_iter)?;
        if best.as_ref().is_none_or(|(_, b)| pr.q > b.q) {
            best = Some((comp, pr));
        }
    }
    let (comp, pr) = best.expect("at least one component");
    let mut x = vec![T::zero(); n];
    for (&v, &xv) in comp.iter().zip(&pr.x) {
        x[v] = xv;
    }
    Ok(PerronResult { x, ..pr })
}

/// Q-index of an arbitrary graph: the largest Perron root over components.
/// An isolated vertex contributes 0.
pub fn q_index<T: Scalar>(g: &Graph, tol: T, max_iter: usize) -> Result<T> {
    let mut q = T::zero();
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let pr = perron(&g.induced(&comp), tol, max_iter)?;
        q = q.max(pr.q);
    }
    Ok(q)
}

/// [`q_index`] with the default double-precision tolerances.
pub fn q_index_default(g: &Graph) -> Result<f64> {
    q_index(g, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

/// `max_u |(q - d(u)) x_u - sum_{v ~ u} x_v|`.
pub fn eigen_equation_residual<T: Scalar>(g: &Graph, pr: &PerronResult<T>) -> T {
    (0..g.n())
        .map(|u| {
            let nb = g.neighbors(u);
            let lhs = (pr.q - T::from_count(nb.len())) * pr.x[u];
            let rhs: T = nb.iter().map(|&v| pr.x[v]).sum();
            (lhs - rhs).abs()
        })
        .fold(T::zero(), T::max)
}
