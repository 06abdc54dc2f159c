//! Signless Laplacian spectral kernels.

mod jacobi;
mod perron;

pub use jacobi::{symmetric_eigenvalues, JACOBI_MAX_SWEEPS, JACOBI_THRESHOLD};
pub use perron::{
    eigen_equation_residual, perron, perron_dominant, perron_from, q_index, q_index_default,
    PerronResult, DEFAULT_MAX_ITER, DEFAULT_TOL,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::scalar::Scalar;

/// Vertex ceiling for dense spectra.
pub const DENSE_LIMIT: usize = 512;

/// Dense `Q(G) = D(G) + A(G)`.
pub fn q_matrix<T: Scalar>(g: &Graph) -> Vec<Vec<T>> {
    let n = g.n();
    let mut q = vec![vec![T::zero(); n]; n];
    for u in 0..n {
        q[u][u] = T::from_count(g.neighbors(u).len());
        for &v in g.neighbors(u) {
            q[u][v] = T::one();
        }
    }
    q
}

/// Q-eigenvalues in descending order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum<T> {
    pub eigenvalues: Vec<T>,
}

impl<T: Scalar> Spectrum<T> {
    /// Largest eigenvalue, 0 for the empty graph.
    pub fn largest(&self) -> T {
        self.eigenvalues.first().copied().unwrap_or_else(T::zero)
    }

    pub fn trace(&self) -> T {
        self.eigenvalues.iter().copied().sum()
    }

    /// Whether some eigenvalue lies within `tol` of `value`.
    pub fn contains(&self, value: T, tol: T) -> bool {
        self.eigenvalues.iter().any(|&e| (e - value).abs() <= tol)
    }
}

pub fn spectrum_dense<T: Scalar>(g: &Graph) -> Result<Spectrum<T>> {
    spectrum_dense_with_limit(g, DENSE_LIMIT)
}

pub fn spectrum_dense_with_limit<T: Scalar>(g: &Graph, limit: usize) -> Result<Spectrum<T>> {
    if g.n() > limit {
        return Err(Error::LimitExceeded {
            what: "dense spectrum vertex count",
            size: g.n(),
            limit,
        });
    }
    Ok(Spectrum {
        eigenvalues: symmetric_eigenvalues(q_matrix(g)),
    })
}

/// `max_u { d(u) + (sum_{v ~ u} d(v)) / d(u) }`, an upper bound on `q(G)`
/// with equality exactly for regular and semiregular bipartite graphs.
pub fn feng_bound<T: Scalar>(g: &Graph) -> Result<T> {
    if g.n() == 0 {
        return Err(Error::InvalidParams("bound of the empty graph".into()));
    }
    let deg = g.degrees();
    let mut best = T::neg_infinity();
    for u in 0..g.n() {
        if deg[u] == 0 {
            return Err(Error::IsolatedVertex(u));
        }
        let sum: usize = g.neighbors(u).iter().map(|&v| deg[v]).sum();
        let val = T::from_count(deg[u]) + T::from_count(sum) / T::from_count(deg[u]);
        best = best.max(val);
    }
    Ok(best)
}

/// `x' Q x = sum_{uv in E} (x_u + x_v)^2`.
pub fn rayleigh<T: Scalar>(g: &Graph, x: &[T]) -> T {
    g.edges()
        .map(|(u, v)| {
            let s = x[u] + x[v];
            s * s
        })
        .sum()
}

/// Lower bound on `q(G - cd + ab) - q(G)` from the unit Perron vector:
/// `(x_a + x_b)^2 - (x_c + x_d)^2` for `add = (a, b)`, `remove = (c, d)`.
///
/// This is the change of the Rayleigh quotient `x' Q x` under the rotation,
/// and `q(G')` is at least the Rayleigh quotient of any unit vector.
pub fn rotation_delta_lower_bound<T: Scalar>(
    g: &Graph,
    remove: Edge,
    add: Edge,
    pr: &PerronResult<T>,
) -> Result<T> {
    let (c, d) = remove;
    let (a, b) = add;
    for v in [a, b, c, d] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
    }
    if !g.has_edge(c, d) {
        return Err(Error::MissingEdge(c.min(d), c.max(d)));
    }
    if a == b {
        return Err(Error::LoopEdge(a));
    }
    if g.has_edge(a, b) {
        return Err(Error::EdgeExists(a.min(b), a.max(b)));
    }
    if pr.x.len() != g.n() {
        return Err(Error::InvalidParams(format!(
            "Perron vector has {} entries for {} vertices",
            pr.x.len(),
            g.n()
        )));
    }
    let norm = pr.x.iter().map(|&v| v * v).sum::<T>().sqrt();
    if (norm - T::one()).abs() > T::epsilon().sqrt() {
        return Err(Error::NonUnitVector(norm.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(rotation_delta_unchecked(&pr.x, remove, add))
}

pub(crate) fn rotation_delta_unchecked<T: Scalar>(x: &[T], remove: Edge, add: Edge) -> T {
    let gain = x[add.0] + x[add.1];
    let loss = x[remove.0] + x[remove.1];
    gain * gain - loss * loss
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn small_spectra() {
        let k2: Spectrum<f64> = spectrum_dense(&Graph::complete(2)).unwrap();
        assert_abs_diff_eq!(k2.eigenvalues[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(k2.eigenvalues[1], 0.0, epsilon = 1e-14);

        let p3: Spectrum<f64> = spectrum_dense(&Graph::path(3)).unwrap();
        for (got, want) in p3.eigenvalues.iter().zip([3.0, 1.0, 0.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-13);
        }

        let c4: Spectrum<f64> = spectrum_dense(&Graph::cycle(4)).unwrap();
        for (got, want) in c4.eigenvalues.iter().zip([4.0, 2.0, 2.0, 0.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-13);
        }
        assert_abs_diff_eq!(c4.trace(), 8.0, epsilon = 1e-12);
    }

    #[test]
    fn dense_limit() {
        assert!(spectrum_dense_with_limit::<f64>(&Graph::path(10), 9).is_err());
    }

    #[test]
    fn feng_equality_cases() {
        let c5 = Graph::cycle(5);
        assert_eq!(feng_bound::<f64>(&c5).unwrap(), 4.0);
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(feng_bound::<f64>(&k23).unwrap(), 5.0);
        let s: Spectrum<f64> = spectrum_dense(&k23).unwrap();
        assert_abs_diff_eq!(s.largest(), 5.0, epsilon = 1e-12);
        assert_eq!(
            feng_bound::<f64>(&Graph::empty(2)),
            Err(Error::IsolatedVertex(0))
        );
    }

    #[test]
    fn p3_rotation_hand_case() {
        let p3 = Graph::path(3);
        let pr = perron(&p3, 1e-14, DEFAULT_MAX_ITER).unwrap();
        let r6 = 6f64.sqrt();
        for (got, want) in pr.x.iter().zip([1.0 / r6, 2.0 / r6, 1.0 / r6]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        let bound = rotation_delta_lower_bound(&p3, (1, 2), (0, 2), &pr).unwrap();
        assert_abs_diff_eq!(bound, -5.0 / 6.0, epsilon = 1e-12);
        let q_new = q_index_default(&p3.rotate((1, 2), (0, 2)).unwrap()).unwrap();
        assert!(q_new >= pr.q + bound);
    }

    #[test]
    fn symmetric_rotation_has_zero_bound() {
        let c6 = Graph::cycle(6);
        let pr = perron(&c6, 1e-12, DEFAULT_MAX_ITER).unwrap();
        let b = rotation_delta_lower_bound(&c6, (0, 1), (0, 2), &pr).unwrap();
        assert_abs_diff_eq!(b, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn rotation_bound_preconditions() {
        let p3 = Graph::path(3);
        let mut pr = perron(&p3, 1e-12, DEFAULT_MAX_ITER).unwrap();
        assert!(rotation_delta_lower_bound(&p3, (0, 2), (0, 1), &pr).is_err());
        assert!(rotation_delta_lower_bound(&p3, (0, 1), (0, 1), &pr).is_err());
        pr.x[0] *= 2.0;
        assert!(matches!(
            rotation_delta_lower_bound(&p3, (1, 2), (0, 2), &pr),
            Err(Error::NonUnitVector(_))
        ));
    }

    #[test]
    fn rayleigh_matches_quadratic_form() {
        let g = Graph::cycle(5).with_edge(0, 2).unwrap();
        let x: Vec<f64> = (0..5).map(|i| 0.1 + i as f64).collect();
        let q = q_matrix::<f64>(&g);
        let direct: f64 = (0..5)
            .map(|i| (0..5).map(|j| x[i] * q[i][j] * x[j]).sum::<f64>())
            .sum();
        assert_abs_diff_eq!(rayleigh(&g, &x), direct, epsilon = 1e-12);
    }
}
