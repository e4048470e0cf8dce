use crate::error::{Error, Result};
use crate::scalar::Real;

/// Iteration cap per eigenvalue for the implicit QL sweep.
const MAX_SWEEPS: usize = 60;

/// Real symmetric tridiagonal matrix.
///
/// `off[i]` couples rows `i` and `i + 1`, so `off.len() == diag.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

/// Eigenvalues in ascending order and, optionally, the orthonormal eigenvectors
/// stored column-wise in a row-major `n x n` buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalEigen<T> {
    pub values: Vec<T>,
    pub vectors: Option<Vec<T>>,
}

impl<T: Real> SymTridiagonal<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                expected: diag.len().saturating_sub(1),
                found: off.len(),
            });
        }
        Ok(SymTridiagonal { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Largest absolute row sum; an upper bound for the spectral norm.
    pub fn norm_bound(&self) -> T {
        (0..self.dim())
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s = s + self.off[i - 1].abs();
                }
                if i < self.off.len() {
                    s = s + self.off[i].abs();
                }
                s
            })
            .fold(T::zero(), T::max)
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s = s + self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s = s + self.off[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        Ok(self.eigen(false)?.values)
    }

    /// Implicit-shift QL (EISPACK `tql2` lineage).
    pub fn eigen(&self, want_vectors: bool) -> Result<TridiagonalEigen<T>> {
        let n = self.dim();
        let mut d = self.diag.clone();
        let mut e: Vec<T> = self
            .off
            .iter()
            .copied()
            .chain(std::iter::once(T::zero()))
            .collect();
        let mut z = want_vectors.then(|| {
            let mut z = vec![T::zero(); n * n];
            for i in 0..n {
                z[i * n + i] = T::one();
            }
            z
        });

        let eps = T::epsilon();
        let two = T::lit(2.0);
        let mut f = T::zero();
        let mut tst1 = T::zero();
        for l in 0..n {
            tst1 = tst1.max(d[l].abs() + e[l].abs());
            let mut m = l;
            while m < n - 1 && e[m].abs() > eps * tst1 {
                m += 1;
            }
            if m > l {
                let mut sweeps = 0;
                loop {
                    sweeps += 1;
                    if sweeps > MAX_SWEEPS {
                        return Err(Error::NoConvergence(format!(
                            "tridiagonal QL: eigenvalue {l} after {MAX_SWEEPS} sweeps"
                        )));
                    }
                    // Wilkinson-type shift from the leading 2x2 block.
                    let g = d[l];
                    let mut p = (d[l + 1] - g) / (two * e[l]);
                    let mut r = p.hypot(T::one());
                    if p < T::zero() {
                        r = -r;
                    }
                    d[l] = e[l] / (p + r);
                    d[l + 1] = e[l] * (p + r);
                    let dl1 = d[l + 1];
                    let mut h = g - d[l];
                    for di in d.iter_mut().skip(l + 2) {
                        *di = *di - h;
                    }
                    f = f + h;

                    p = d[m];
                    let mut c = T::one();
                    let mut c2 = c;
                    let mut c3 = c;
                    let el1 = e[l + 1];
                    let mut s = T::zero();
                    let mut s2 = T::zero();
                    for i in (l..m).rev() {
                        c3 = c2;
                        c2 = c;
                        s2 = s;
                        let g = c * e[i];
                        h = c * p;
                        r = p.hypot(e[i]);
                        e[i + 1] = s * r;
                        s = e[i] / r;
                        c = p / r;
                        p = c * d[i] - s * g;
                        d[i + 1] = h + s * (c * g + s * d[i]);
                        if let Some(z) = z.as_mut() {
                            for k in 0..n {
                                let zk1 = z[k * n + i + 1];
                                let zk = z[k * n + i];
                                z[k * n + i + 1] = s * zk + c * zk1;
                                z[k * n + i] = c * zk - s * zk1;
                            }
                        }
                    }
                    p = -s * s2 * c3 * el1 * e[l] / dl1;
                    e[l] = s * p;
                    d[l] = c * p;
                    if e[l].abs() <= eps * tst1 {
                        break;
                    }
                }
            }
            d[l] = d[l] + f;
            e[l] = T::zero();
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(std::cmp::Ordering::Equal));
        let values = order.iter().map(|&k| d[k]).collect();
        let vectors = z.map(|z| {
            let mut sorted = vec![T::zero(); n * n];
            for (new, &old) in order.iter().enumerate() {
                for k in 0..n {
                    sorted[k * n + new] = z[k * n + old];
                }
            }
            sorted
        });
        Ok(TridiagonalEigen { values, vectors })
    }
}
