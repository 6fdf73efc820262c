//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::RealScalar;
use crate::IntegerMatrix;

const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericSpectrum<T> {
    /// Eigenvalues in ascending order.
    pub values: Vec<T>,
    /// Bound on `|computed - exact|` for every eigenvalue.
    pub error_bound: T,
    pub sweeps: usize,
}

/// Eigenvalues of a symmetric integer matrix.
pub fn numeric_eigenvalues(m: &IntegerMatrix, tol: f64) -> Result<NumericSpectrum<f64>> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    symmetric_eigenvalues(&m.map(|&x| x as f64), tol)
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// sweeping until the off-diagonal Frobenius norm drops below `tol`.
pub fn symmetric_eigenvalues<T: RealScalar>(m: &Matrix<T>, tol: T) -> Result<NumericSpectrum<T>> {
    let n = m.dim();
    let mut a: Vec<T> = m.as_slice().to_vec();
    let at = |i: usize, j: usize| i * n + j;
    let frob = a.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
    for i in 0..n {
        for j in 0..i {
            let (x, y) = (a[at(i, j)], a[at(j, i)]);
            if (x - y).abs() > tol.max(T::epsilon() * frob) {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let n_t = T::from(n.max(1)).unwrap();
    let floor = T::from(16.0).unwrap() * T::epsilon() * frob * n_t;
    let target = tol.max(floor);

    let off_norm = |a: &[T]| {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s = s + a[at(i, j)] * a[at(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let two = T::one() + T::one();
    let mut sweeps = 0;
    let mut off = off_norm(&a);
    while off > target && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[at(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let (app, aqq) = (a[at(p, p)], a[at(q, q)]);
                let theta = (aqq - app) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                a[at(p, p)] = app - t * apq;
                a[at(q, q)] = aqq + t * apq;
                a[at(p, q)] = T::zero();
                a[at(q, p)] = T::zero();
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let (arp, arq) = (a[at(r, p)], a[at(r, q)]);
                    let np = c * arp - s * arq;
                    let nq = s * arp + c * arq;
                    a[at(r, p)] = np;
                    a[at(p, r)] = np;
                    a[at(r, q)] = nq;
                    a[at(q, r)] = nq;
                }
            }
        }
        sweeps += 1;
        off = off_norm(&a);
    }
    let mut values: Vec<T> = (0..n).map(|i| a[at(i, i)]).collect();
    values.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // Weyl: perturbation by the remaining off-diagonal part, plus rounding
    let error_bound = off + floor;
    Ok(NumericSpectrum { values, error_bound, sweeps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron() {
        let m: IntegerMatrix = Matrix::from_fn(6, |i, j| (i / 2 != j / 2) as i64);
        let s = numeric_eigenvalues(&m, 1e-10).unwrap();
        let expect = [-2.0, -2.0, 0.0, 0.0, 0.0, 4.0];
        for (x, y) in s.values.iter().zip(expect) {
            assert!((x - y).abs() < 1e-9);
        }
        assert!(s.error_bound < 1e-9);
    }

    #[test]
    fn zero_matrix() {
        let m: IntegerMatrix = Matrix::zeros(4);
        let s = numeric_eigenvalues(&m, 1e-10).unwrap();
        assert!(s.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rejects_asymmetric() {
        let m = Matrix::from_rows(vec![vec![0i64, 1], vec![0, 0]]).unwrap();
        assert_eq!(numeric_eigenvalues(&m, 1e-10), Err(Error::NotSymmetric));
    }

    #[test]
    fn generic_over_f32() {
        let m = Matrix::from_rows(vec![vec![2.0f32, 1.0], vec![1.0, 2.0]]).unwrap();
        let s = symmetric_eigenvalues(&m, 1e-5).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-4 && (s.values[1] - 3.0).abs() < 1e-4);
    }
}
