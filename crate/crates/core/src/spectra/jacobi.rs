//! Dense symmetric eigenvalues by cyclic Jacobi rotations.

use crate::scalar::{lit, Scalar};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues, ascending, of the symmetric `n × n` row-major matrix `a`.
///
/// Rotations sweep the upper triangle row by row; only the rows are rotated in place and the
/// columns are restored by symmetry. Iteration stops once the off-diagonal Frobenius norm is
/// below machine precision relative to the whole matrix.
pub fn jacobi_eigenvalues<T: Scalar>(mut a: Vec<T>, n: usize) -> Vec<T> {
    assert_eq!(a.len(), n * n, "matrix must be n × n");
    let total: T = a.iter().fold(T::zero(), |acc, &x| acc + x * x);
    let tol = T::epsilon() * T::epsilon() * total;
    for sweep in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + a[p * n + q] * a[p * n + q];
            }
        }
        if off + off <= tol {
            break;
        }
        // Skip tiny elements in the first sweeps; they are rotated away later for free.
        let skip = if sweep < 3 { lit::<T>(0.2) * off / lit((n * n) as f64) } else { T::zero() };
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == T::zero() || apq * apq < skip {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (apq + apq);
                let t = {
                    let r = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -r
                    } else {
                        r
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                let (lo, hi) = a.split_at_mut(q * n);
                let row_p = &mut lo[p * n..p * n + n];
                let row_q = &mut hi[..n];
                for k in 0..n {
                    let x = row_p[k];
                    let y = row_q[k];
                    row_p[k] = c * x - s * y;
                    row_q[k] = s * x + c * y;
                }
                for k in 0..n {
                    if k != p && k != q {
                        a[k * n + p] = a[p * n + k];
                        a[k * n + q] = a[q * n + k];
                    }
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = T::zero();
                a[q * n + p] = T::zero();
            }
        }
    }
    let mut eig: Vec<T> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    eig
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tridiagonal_closed_form() {
        let n = 40;
        let mut a = vec![0.0_f64; n * n];
        for i in 0..n {
            a[i * n + i] = 2.0;
            if i + 1 < n {
                a[i * n + i + 1] = -1.0;
                a[(i + 1) * n + i] = -1.0;
            }
        }
        let eig = jacobi_eigenvalues(a, n);
        for (j, e) in eig.iter().enumerate() {
            let exact = 2.0 - 2.0 * (PI * (j + 1) as f64 / (n + 1) as f64).cos();
            assert!((e - exact).abs() < 1e-13, "{j}: {e} vs {exact}");
        }
    }

    #[test]
    fn diagonal_and_small() {
        assert_eq!(jacobi_eigenvalues(vec![3.0_f64, 0.0, 0.0, 1.0], 2), vec![1.0, 3.0]);
        let eig = jacobi_eigenvalues(vec![2.0_f64, 1.0, 1.0, 2.0], 2);
        assert!((eig[0] - 1.0).abs() < 1e-15 && (eig[1] - 3.0).abs() < 1e-15);
    }
}
