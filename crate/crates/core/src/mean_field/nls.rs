use num_complex::Complex;

use crate::error::{domain, Result};
use crate::model::ModelParams;
use crate::ode::{integrate, OdeOptions};
use crate::scalar::Real;

use super::bloch::BlochPoint;

/// Two equivalent amplitude pairs for the mean-field state.
///
/// `Psi` keeps the atomic amplitude with `|psi_a|^2 + 2|psi_b|^2 = 2`;
/// `Chi` uses `chi_a = psi_a^2`, so `|chi_a| + 2|chi_b|^2 = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveVariant {
    Psi,
    Chi,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldWavefunction<T> {
    pub variant: WaveVariant,
    pub a: Complex<T>,
    pub b: Complex<T>,
}

const NORM_TOL: f64 = 1e-10;

impl<T: Real> MeanFieldWavefunction<T> {
    /// Checked constructor; the normalisation must hold within `1e-10`.
    pub fn new(variant: WaveVariant, a: Complex<T>, b: Complex<T>) -> Result<Self> {
        let w = MeanFieldWavefunction { variant, a, b };
        let dev = (w.norm_constraint() - T::lit(2.0)).abs();
        if dev.is_nan() || dev > T::tol(NORM_TOL) {
            return domain(format!("wavefunction normalisation off by {dev:e}"));
        }
        Ok(w)
    }

    /// `|a|^2 + 2|b|^2` (Psi) or `|a| + 2|b|^2` (Chi); equals 2 on the physical manifold.
    pub fn norm_constraint(&self) -> T {
        let atomic = match self.variant {
            WaveVariant::Psi => self.a.norm_sqr(),
            WaveVariant::Chi => self.a.norm(),
        };
        atomic + T::lit(2.0) * self.b.norm_sqr()
    }

    /// Atomic pair coherence `psi_a*^2 psi_b` (equivalently `chi_a* chi_b`).
    fn coherence(&self) -> Complex<T> {
        match self.variant {
            WaveVariant::Psi => self.a.conj() * self.a.conj() * self.b,
            WaveVariant::Chi => self.a.conj() * self.b,
        }
    }

    fn to_array(self) -> [T; 4] {
        [self.a.re, self.a.im, self.b.re, self.b.im]
    }

    fn from_array(variant: WaveVariant, y: [T; 4]) -> Self {
        MeanFieldWavefunction {
            variant,
            a: Complex::new(y[0], y[1]),
            b: Complex::new(y[2], y[3]),
        }
    }
}

/// Time derivatives `(da/dt, db/dt)` of the nonlinear Schrodinger form.
pub fn nls_rhs<T: Real>(
    w: &MeanFieldWavefunction<T>,
    params: &ModelParams<T>,
) -> (Complex<T>, Complex<T>) {
    let (eps, v) = (params.epsilon, params.v);
    let half = T::lit(0.5);
    let mi = Complex::new(T::zero(), -T::one());
    let g = v / (T::lit(2.0) * T::SQRT_2());
    let (ha, hb) = match w.variant {
        WaveVariant::Psi => (
            w.a * (eps * T::lit(0.25)) + w.a.conj() * w.b * (v / T::SQRT_2()),
            w.a * w.a * g - w.b * (eps * half),
        ),
        WaveVariant::Chi => (
            w.a * (eps * half) + w.b * (T::SQRT_2() * v * w.a.norm()),
            w.a * g - w.b * (eps * half),
        ),
    };
    (mi * ha, mi * hb)
}

/// Mean-field point represented by an amplitude pair.
pub fn bloch_projection<T: Real>(w: &MeanFieldWavefunction<T>) -> Result<BlochPoint<T>> {
    let x = w.coherence();
    let inv = T::one() / (T::lit(2.0) * T::SQRT_2());
    let atomic = match w.variant {
        WaveVariant::Psi => w.a.norm_sqr(),
        WaveVariant::Chi => w.a.norm(),
    };
    let sz = T::lit(0.25) * (atomic - T::lit(2.0) * w.b.norm_sqr());
    BlochPoint::new(T::lit(2.0) * x.re * inv, T::lit(2.0) * x.im * inv, sz)
}

/// An amplitude pair projecting onto `s`, with real non-negative atomic amplitude.
pub fn wavefunction_from_bloch<T: Real>(
    s: &BlochPoint<T>,
    variant: WaveVariant,
) -> MeanFieldWavefunction<T> {
    let two = T::lit(2.0);
    let atomic = (T::one() + two * s.sz).max(T::zero());
    let coherence = Complex::new(s.sx, s.sy) * T::SQRT_2();
    let b = if atomic > T::zero() {
        coherence / atomic
    } else {
        Complex::new(T::one(), T::zero())
    };
    let a = match variant {
        WaveVariant::Psi => atomic.sqrt(),
        WaveVariant::Chi => atomic,
    };
    MeanFieldWavefunction {
        variant,
        a: Complex::new(a, T::zero()),
        b,
    }
}

/// Integrate the amplitude equations from `w0` at `t = 0`.
pub fn integrate_nls<T: Real>(
    w0: &MeanFieldWavefunction<T>,
    times: &[T],
    params: &ModelParams<T>,
    tol: T,
) -> Result<Vec<MeanFieldWavefunction<T>>> {
    let variant = w0.variant;
    let (ys, _) = integrate(
        |_, y: &[T; 4]| {
            let (da, db) = nls_rhs(&MeanFieldWavefunction::from_array(variant, *y), params);
            [da.re, da.im, db.re, db.im]
        },
        T::zero(),
        w0.to_array(),
        times,
        &OdeOptions::with_tol(tol),
    )?;
    Ok(ys
        .into_iter()
        .map(|y| MeanFieldWavefunction::from_array(variant, y))
        .collect())
}
