use num_complex::Complex;

use super::{CMatrix, SymTridiagonal};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative tolerance for accepting a matrix as Hermitian.
const HERMITIAN_TOL: f64 = 1e-12;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen<T> {
    /// Ascending eigenvalues.
    pub values: Vec<T>,
    /// Orthonormal eigenvectors as columns.
    pub vectors: Option<CMatrix<T>>,
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Diagonalise a Hermitian matrix.
///
/// Tridiagonal input goes straight to the QL solver after a diagonal phase
/// gauge makes the off-diagonal real and non-negative. Dense input is first
/// reduced with complex Householder reflections.
pub fn hermitian_eigen<T: Real>(a: &CMatrix<T>, want_vectors: bool) -> Result<HermitianEigen<T>> {
    let n = a.dim();
    if n == 0 {
        return Ok(HermitianEigen {
            values: vec![],
            vectors: want_vectors.then(|| CMatrix::zeros(0)),
        });
    }
    let dev = a.hermitian_deviation();
    if dev > T::tol(HERMITIAN_TOL) * a.max_abs().max(T::one()) {
        return Err(Error::NotHermitian(dev.to_f64().unwrap_or(f64::NAN)));
    }

    let (work, q) = if a.is_tridiagonal() {
        (a.clone(), None)
    } else {
        let (t, q) = householder_tridiagonalize(a, want_vectors);
        (t, q)
    };

    // Gauge: phases[k+1] = phases[k] * sub[k] / |sub[k]|.
    let mut phases = vec![Complex::new(T::one(), T::zero()); n];
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n - 1 {
        let sub = work[(k + 1, k)];
        let mag = sub.norm();
        phases[k + 1] = if mag > T::zero() {
            phases[k] * (sub / mag)
        } else {
            phases[k]
        };
        off.push(mag);
    }
    let diag: Vec<T> = (0..n).map(|i| work[(i, i)].re).collect();
    let eig = SymTridiagonal::new(diag, off)?.eigen(want_vectors)?;

    let vectors = eig.vectors.map(|z| {
        let mut v = CMatrix::from_fn(n, |i, j| phases[i] * z[i * n + j]);
        if let Some(q) = &q {
            v = q * &v;
        }
        fix_phases(&mut v);
        v
    });
    Ok(HermitianEigen {
        values: eig.values,
        vectors,
    })
}

/// Make the largest-modulus entry of every column real and positive.
fn fix_phases<T: Real>(v: &mut CMatrix<T>) {
    let n = v.dim();
    let slack = T::tol(1e-10);
    for j in 0..n {
        let max = (0..n).map(|i| v[(i, j)].norm()).fold(T::zero(), T::max);
        let Some(pivot) = (0..n).find(|&i| v[(i, j)].norm() >= max * (T::one() - slack)) else {
            continue;
        };
        let z = v[(pivot, j)];
        if z.norm() == T::zero() {
            continue;
        }
        let rot = z.conj() / z.norm();
        for i in 0..n {
            v[(i, j)] = v[(i, j)] * rot;
        }
    }
}

/// `A = Q T Q^H` with `T` Hermitian tridiagonal.
fn householder_tridiagonalize<T: Real>(
    a: &CMatrix<T>,
    want_q: bool,
) -> (CMatrix<T>, Option<CMatrix<T>>) {
    let n = a.dim();
    let mut t = a.clone();
    let mut q = want_q.then(|| CMatrix::identity(n));
    let two = T::lit(2.0);

    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex<T>> = (k + 1..n).map(|i| t[(i, k)]).collect();
        let tail: T = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == T::zero() {
            continue;
        }
        let xnorm = (tail + x[0].norm_sqr()).sqrt();
        let phase = if x[0].norm() > T::zero() {
            x[0] / x[0].norm()
        } else {
            Complex::new(T::one(), T::zero())
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] = v[0] - alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        for z in v.iter_mut() {
            *z = *z / vnorm;
        }

        // Left: rows k+1.. of T  <- (I - 2 v v^H) rows.
        for j in 0..n {
            let mut dot = czero();
            for (idx, vi) in v.iter().enumerate() {
                dot = dot + vi.conj() * t[(k + 1 + idx, j)];
            }
            for (idx, vi) in v.iter().enumerate() {
                t[(k + 1 + idx, j)] = t[(k + 1 + idx, j)] - *vi * dot * two;
            }
        }
        // Right: columns k+1.. of T <- cols (I - 2 v v^H).
        let right = |m: &mut CMatrix<T>| {
            for i in 0..n {
                let mut dot: Complex<T> = czero();
                for (idx, vi) in v.iter().enumerate() {
                    dot = dot + m[(i, k + 1 + idx)] * *vi;
                }
                for (idx, vi) in v.iter().enumerate() {
                    m[(i, k + 1 + idx)] = m[(i, k + 1 + idx)] - dot * vi.conj() * two;
                }
            }
        };
        right(&mut t);
        if let Some(q) = q.as_mut() {
            right(q);
        }
        // Exact zeros outside the band so the result is recognisably tridiagonal.
        for i in k + 2..n {
            t[(i, k)] = czero();
            t[(k, i)] = czero();
        }
    }
    for i in 0..n {
        t[(i, i)] = Complex::new(t[(i, i)].re, T::zero());
    }
    (t, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_hermitian(n: usize, re: &[f64], im: &[f64]) -> CMatrix<f64> {
        let mut a = CMatrix::zeros(n);
        let mut idx = 0;
        for i in 0..n {
            for j in i..n {
                let z = if i == j {
                    Complex::new(re[idx], 0.0)
                } else {
                    Complex::new(re[idx], im[idx])
                };
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
                idx += 1;
            }
        }
        a
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut a = CMatrix::<f64>::identity(3);
        a[(0, 2)] = Complex::new(1.0, 0.0);
        assert!(matches!(
            hermitian_eigen(&a, false),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn pauli_y() {
        let mut a = CMatrix::<f64>::zeros(2);
        a[(0, 1)] = Complex::new(0.0, -1.0);
        a[(1, 0)] = Complex::new(0.0, 1.0);
        let eig = hermitian_eigen(&a, true).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15 && (eig.values[1] - 1.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn dense_hermitian_residuals(
            n in 1usize..9,
            re in prop::collection::vec(-3.0f64..3.0, 45),
            im in prop::collection::vec(-3.0f64..3.0, 45),
        ) {
            let a = random_hermitian(n, &re, &im);
            let eig = hermitian_eigen(&a, true).unwrap();
            let v = eig.vectors.unwrap();
            let scale = a.frobenius_norm().max(1.0);
            for j in 0..n {
                let x = v.column(j);
                let ax = a.matvec(&x);
                let res: f64 = ax.iter().zip(&x).map(|(p, q)| (*p - *q * eig.values[j]).norm_sqr()).sum::<f64>().sqrt();
                prop_assert!(res < 1e-10 * scale, "residual {res}");
            }
            let gram = &v.adjoint() * &v;
            let id = CMatrix::identity(n);
            prop_assert!((&gram - &id).max_abs() < 1e-10);
            let trace: f64 = (0..n).map(|i| a[(i, i)].re).sum();
            let sum: f64 = eig.values.iter().sum();
            prop_assert!((trace - sum).abs() < 1e-9 * scale);
        }
    }
}
