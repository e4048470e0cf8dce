use std::fmt;

use num_complex::Complex;

use crate::linalg::{CMatrix, SymTridiagonal};
use crate::model::{KzBasis, ModelParams};
use crate::scalar::Real;

/// Which operator a matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Kx,
    Ky,
    Kz,
    Kplus,
    Kminus,
    H,
    C,
    Custom,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::Kx => "Kx",
            Label::Ky => "Ky",
            Label::Kz => "Kz",
            Label::Kplus => "K+",
            Label::Kminus => "K-",
            Label::H => "H",
            Label::C => "C",
            Label::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// Matrix of an operator in the ascending-`m` basis of `K_z`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T> {
    pub label: Label,
    pub matrix: CMatrix<T>,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn new(label: Label, matrix: CMatrix<T>) -> Self {
        OperatorMatrix { label, matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Real symmetric tridiagonal view, if the matrix is one.
    pub fn as_real_tridiagonal(&self) -> Option<SymTridiagonal<T>> {
        let m = &self.matrix;
        let n = m.dim();
        if n == 0 || !m.is_tridiagonal() {
            return None;
        }
        let real = (0..n).all(|i| {
            m[(i, i)].im == T::zero()
                && (i + 1 >= n || (m[(i, i + 1)].im == T::zero() && m[(i, i + 1)] == m[(i + 1, i)]))
        });
        if !real {
            return None;
        }
        let diag = (0..n).map(|i| m[(i, i)].re).collect();
        let off = (0..n - 1).map(|i| m[(i, i + 1)].re).collect();
        SymTridiagonal::new(diag, off).ok()
    }
}

/// The five generators of the deformed algebra for one value of `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Generators<T> {
    pub n_particles: usize,
    pub kx: OperatorMatrix<T>,
    pub ky: OperatorMatrix<T>,
    pub kz: OperatorMatrix<T>,
    pub kplus: OperatorMatrix<T>,
    pub kminus: OperatorMatrix<T>,
}

impl<T: Real> Generators<T> {
    pub fn get(&self, label: Label) -> Option<&OperatorMatrix<T>> {
        match label {
            Label::Kx => Some(&self.kx),
            Label::Ky => Some(&self.ky),
            Label::Kz => Some(&self.kz),
            Label::Kplus => Some(&self.kplus),
            Label::Kminus => Some(&self.kminus),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.kz.dim()
    }

    /// `a K_x + b K_z + c K_y`.
    pub fn combination(&self, a: T, b: T, c: T) -> CMatrix<T> {
        let x = self.kx.matrix.scale_real(a);
        let z = self.kz.matrix.scale_real(b);
        let y = self.ky.matrix.scale_real(c);
        &(&x + &z) + &y
    }
}

/// `<m_{k+1}| K_+ |m_k> = sqrt((n_a + 1)(n_a + 2) n_b / N)` with `n_a, n_b` taken at `m_k`.
pub fn ladder_element<T: Real>(basis: &KzBasis<T>, k: usize) -> T {
    let na = T::count(basis.atom_counts[k]);
    let nb = T::count(basis.molecule_counts[k]);
    let n = T::count(basis.n_particles);
    ((na + T::one()) * (na + T::lit(2.0)) * nb / n).sqrt()
}

pub fn build_generators<T: Real>(basis: &KzBasis<T>) -> Generators<T> {
    let dim = basis.dimension();
    let zero = T::zero();
    let half = T::lit(0.5);
    let mut kplus = CMatrix::zeros(dim);
    let mut kx = CMatrix::zeros(dim);
    let mut ky = CMatrix::zeros(dim);
    for k in 0..dim - 1 {
        let c = ladder_element(basis, k);
        kplus[(k + 1, k)] = Complex::new(c, zero);
        kx[(k + 1, k)] = Complex::new(c * half, zero);
        kx[(k, k + 1)] = Complex::new(c * half, zero);
        // (K_+ - K_-) / 2i
        ky[(k + 1, k)] = Complex::new(zero, -c * half);
        ky[(k, k + 1)] = Complex::new(zero, c * half);
    }
    let kminus = kplus.adjoint();
    Generators {
        n_particles: basis.n_particles,
        kx: OperatorMatrix::new(Label::Kx, kx),
        ky: OperatorMatrix::new(Label::Ky, ky),
        kz: OperatorMatrix::new(Label::Kz, CMatrix::from_real_diagonal(&basis.m_values)),
        kplus: OperatorMatrix::new(Label::Kplus, kplus),
        kminus: OperatorMatrix::new(Label::Kminus, kminus),
    }
}

/// `F(K_z, N_hat) = -N_hat/N - (N_hat + 4 K_z)(N_hat - 12 K_z) / (4N)`.
pub fn structure_polynomial<T: Real>(kz: T, n_hat: T, big_n: T) -> T {
    let four = T::lit(4.0);
    -n_hat / big_n - (n_hat + four * kz) * (n_hat - T::lit(12.0) * kz) / (four * big_n)
}

/// `F` with matrix argument on the fixed-`N` sector (`N_hat = N * 1`).
pub fn structure_polynomial_matrix<T: Real>(kz: &CMatrix<T>, big_n: usize) -> CMatrix<T> {
    let n = T::count(big_n);
    let id = CMatrix::identity(kz.dim());
    let left = &id.scale_real(n) + &kz.scale_real(T::lit(4.0));
    let right = &id.scale_real(n) - &kz.scale_real(T::lit(12.0));
    let prod = &left * &right;
    let a = id.scale_real(-T::one());
    let b = prod.scale_real(-T::one() / (T::lit(4.0) * n));
    &a + &b
}

/// Real symmetric tridiagonal form of `H = eps K_z + v K_x` (fast path for large `N`).
pub fn hamiltonian_tridiagonal<T: Real>(params: &ModelParams<T>) -> SymTridiagonal<T> {
    let basis =
        crate::model::basis_states::<T>(params.n_particles).expect("params already validated");
    let half = T::lit(0.5);
    let diag = basis.m_values.iter().map(|&m| params.epsilon * m).collect();
    let off = (0..basis.dimension() - 1)
        .map(|k| params.v * half * ladder_element(&basis, k))
        .collect();
    SymTridiagonal { diag, off }
}

/// Dense `H = eps K_z + v K_x`.
pub fn build_hamiltonian<T: Real>(params: &ModelParams<T>) -> OperatorMatrix<T> {
    let t = hamiltonian_tridiagonal(params);
    OperatorMatrix::new(Label::H, CMatrix::from_real_tridiagonal(&t.diag, &t.off))
}

/// `C = K_- K_+ + (4/N) K_z^3 + ((N + 6)/N) K_z^2 + ((8 - N^2)/(4N)) K_z`.
pub fn casimir_matrix<T: Real>(basis: &KzBasis<T>) -> OperatorMatrix<T> {
    let g = build_generators(basis);
    let n = T::count(basis.n_particles);
    let kz = &g.kz.matrix;
    let kz2 = kz * kz;
    let kz3 = &kz2 * kz;
    let mut c = &g.kminus.matrix * &g.kplus.matrix;
    c = &c + &kz3.scale_real(T::lit(4.0) / n);
    c = &c + &kz2.scale_real((n + T::lit(6.0)) / n);
    c = &c + &kz.scale_real((T::lit(8.0) - n * n) / (T::lit(4.0) * n));
    OperatorMatrix::new(Label::C, c)
}
