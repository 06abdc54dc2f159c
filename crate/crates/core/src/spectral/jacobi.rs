//! Cyclic Jacobi sweeps for dense symmetric matrices.

use crate::scalar::Scalar;

/// Off-diagonal threshold relative to the Frobenius norm.
pub const JACOBI_THRESHOLD: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of a dense symmetric matrix, in descending order.
///
/// Each sweep visits every `(p, q)` pair above the diagonal and applies
/// the plane rotation that zeroes `a[p][q]`. Iteration stops when the
/// off-diagonal Frobenius norm drops below `JACOBI_THRESHOLD` times the
/// matrix norm or after `JACOBI_MAX_SWEEPS` sweeps. Only the upper
/// triangle of `a` is read.
pub fn symmetric_eigenvalues<T: Scalar>(mut a: Vec<Vec<T>>) -> Vec<T> {
    let n = a.len();
    for p in 0..n {
        assert_eq!(a[p].len(), n, "matrix must be square");
        for q in p + 1..n {
            a[q][p] = a[p][q];
        }
    }
    let total: T = a.iter().flatten().map(|&v| v * v).sum::<T>().sqrt();
    let threshold = T::lit(JACOBI_THRESHOLD).max(T::epsilon()) * total;
    let off = |a: &Vec<Vec<T>>| -> T {
        let mut s = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                s += a[p][q] * a[p][q];
            }
        }
        (s + s).sqrt()
    };
    let two = T::lit(2.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (two * apq);
                let t = if theta.abs() > T::lit(1e15).min(T::one() / T::epsilon()) {
                    T::one() / (two * theta)
                } else {
                    let sign = if theta < T::zero() {
                        -T::one()
                    } else {
                        T::one()
                    };
                    sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                let tau = s / (T::one() + c);
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = T::zero();
                a[q][p] = T::zero();
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r][p];
                    let arq = a[r][q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r][p] = new_rp;
                    a[p][r] = new_rp;
                    a[r][q] = new_rq;
                    a[q][r] = new_rq;
                }
            }
        }
    }
    let mut eig: Vec<T> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    eig
}
