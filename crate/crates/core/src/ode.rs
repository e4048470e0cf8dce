//! Adaptive Dormand-Prince 5(4) integrator for small autonomous or
//! non-autonomous systems with fixed state dimension.

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions<T> {
    pub rtol: T,
    pub atol: T,
    pub max_steps: usize,
}

impl<T: Real> OdeOptions<T> {
    /// Same relative and absolute tolerance.
    pub fn with_tol(tol: T) -> Self {
        OdeOptions {
            rtol: tol,
            atol: tol,
            max_steps: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
}

struct Tableau<T> {
    c: [T; 7],
    a: [[T; 6]; 7],
    e: [T; 7],
}

fn tableau<T: Real>() -> Tableau<T> {
    let l = T::lit;
    let z = T::zero();
    Tableau {
        c: [z, l(0.2), l(0.3), l(0.8), l(8.0 / 9.0), l(1.0), l(1.0)],
        a: [
            [z; 6],
            [l(0.2), z, z, z, z, z],
            [l(3.0 / 40.0), l(9.0 / 40.0), z, z, z, z],
            [l(44.0 / 45.0), l(-56.0 / 15.0), l(32.0 / 9.0), z, z, z],
            [
                l(19372.0 / 6561.0),
                l(-25360.0 / 2187.0),
                l(64448.0 / 6561.0),
                l(-212.0 / 729.0),
                z,
                z,
            ],
            [
                l(9017.0 / 3168.0),
                l(-355.0 / 33.0),
                l(46732.0 / 5247.0),
                l(49.0 / 176.0),
                l(-5103.0 / 18656.0),
                z,
            ],
            [
                l(35.0 / 384.0),
                z,
                l(500.0 / 1113.0),
                l(125.0 / 192.0),
                l(-2187.0 / 6784.0),
                l(11.0 / 84.0),
            ],
        ],
        e: [
            l(71.0 / 57600.0),
            z,
            l(-71.0 / 16695.0),
            l(71.0 / 1920.0),
            l(-17253.0 / 339200.0),
            l(22.0 / 525.0),
            l(-1.0 / 40.0),
        ],
    }
}

/// Integrate `y' = f(t, y)` from `(t0, y0)` and return `y` at every sample time.
///
/// `sample_times` must be non-decreasing and not earlier than `t0`; steps are
/// clipped so that each sample time is hit exactly.
pub fn integrate<T, const D: usize, F>(
    mut f: F,
    t0: T,
    y0: [T; D],
    sample_times: &[T],
    opts: &OdeOptions<T>,
) -> Result<(Vec<[T; D]>, OdeStats)>
where
    T: Real,
    F: FnMut(T, &[T; D]) -> [T; D],
{
    if sample_times.windows(2).any(|w| w[1] < w[0]) || sample_times.first().is_some_and(|&s| s < t0)
    {
        return domain("sample times must be non-decreasing and >= t0");
    }
    let tab = tableau::<T>();
    let mut stats = OdeStats::default();
    let mut out = Vec::with_capacity(sample_times.len());
    let mut t = t0;
    let mut y = y0;
    let mut k0 = f(t, &y);
    let mut h = initial_step(&y, &k0, opts);
    let safety = T::lit(0.9);
    let fifth = T::lit(0.2);

    for &target in sample_times {
        while t < target {
            if stats.accepted + stats.rejected >= opts.max_steps {
                return Err(Error::NoConvergence(format!(
                    "ODE: step budget exhausted at t = {t}"
                )));
            }
            let floor = T::epsilon() * T::lit(16.0) * t.abs().max(T::one());
            if h < floor {
                return Err(Error::StepUnderflow {
                    t: t.to_f64().unwrap_or(f64::NAN),
                    h: h.to_f64().unwrap_or(f64::NAN),
                    context:
                        "error estimate not reducible; trajectory may have left the smooth region"
                            .into(),
                });
            }
            let last = target - t <= h;
            let step = if last { target - t } else { h };

            let mut k = [[T::zero(); D]; 7];
            k[0] = k0;
            for s in 1..7 {
                let mut ys = y;
                for (i, yi) in ys.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc = acc + tab.a[s][j] * kj[i];
                    }
                    *yi = *yi + step * acc;
                }
                k[s] = f(t + tab.c[s] * step, &ys);
            }
            // Stage 7 is evaluated at the 5th-order solution (FSAL).
            let mut y_new = y;
            for (i, yi) in y_new.iter_mut().enumerate() {
                let mut acc = T::zero();
                for (aj, kj) in tab.a[6].iter().zip(&k) {
                    acc = acc + *aj * kj[i];
                }
                *yi = *yi + step * acc;
            }
            let mut err_sq = T::zero();
            for i in 0..D {
                let mut e = T::zero();
                for (ej, kj) in tab.e.iter().zip(&k) {
                    e = e + *ej * kj[i];
                }
                let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
                let r = step * e / sc;
                err_sq = err_sq + r * r;
            }
            let err = (err_sq / T::count(D.max(1))).sqrt();
            if !err.is_finite() {
                stats.rejected += 1;
                h = step * fifth;
                continue;
            }
            let factor = if err == T::zero() {
                T::lit(5.0)
            } else {
                (safety * err.powf(-fifth)).max(fifth).min(T::lit(5.0))
            };
            if err <= T::one() {
                stats.accepted += 1;
                t = if last { target } else { t + step };
                y = y_new;
                k0 = k[6];
                // Do not let a short clipped step shrink the working step size.
                h = if last {
                    h.max(step * factor)
                } else {
                    step * factor
                };
            } else {
                stats.rejected += 1;
                h = step * factor.min(T::one());
            }
        }
        out.push(y);
    }
    Ok((out, stats))
}

fn initial_step<T: Real, const D: usize>(y: &[T; D], f: &[T; D], opts: &OdeOptions<T>) -> T {
    let mut d0 = T::zero();
    let mut d1 = T::zero();
    for i in 0..D {
        let sc = opts.atol + opts.rtol * y[i].abs();
        d0 = d0 + (y[i] / sc).powi(2);
        d1 = d1 + (f[i] / sc).powi(2);
    }
    let (d0, d1) = (d0.sqrt(), d1.sqrt());
    if d0 < T::lit(1e-5) || d1 < T::lit(1e-5) {
        T::lit(1e-6)
    } else {
        (T::lit(0.01) * d0 / d1).min(T::lit(0.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_long_run() {
        let times: Vec<f64> = (1..=50).map(|k| k as f64).collect();
        let (ys, stats) = integrate(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            0.0,
            [1.0, 0.0],
            &times,
            &OdeOptions::with_tol(1e-10),
        )
        .unwrap();
        for (y, &t) in ys.iter().zip(&times) {
            assert!((y[0] - t.cos()).abs() < 1e-8);
            assert!((y[1] + t.sin()).abs() < 1e-8);
        }
        assert!(stats.accepted > 0);
    }

    #[test]
    fn exponential_decay_and_sample_at_start() {
        let (ys, _) = integrate(
            |_, y: &[f64; 1]| [-y[0]],
            0.0,
            [1.0],
            &[0.0, 1.0, 2.0],
            &OdeOptions::with_tol(1e-12),
        )
        .unwrap();
        assert_eq!(ys[0][0], 1.0);
        assert!((ys[2][0] - (-2.0f64).exp()).abs() < 1e-11);
    }

    #[test]
    fn blow_up_reports_underflow_or_budget() {
        // y' = y^2 from y = 1 blows up at t = 1.
        let opts = OdeOptions {
            max_steps: 100_000,
            ..OdeOptions::with_tol(1e-10)
        };
        let r = integrate(|_, y: &[f64; 1]| [y[0] * y[0]], 0.0, [1.0], &[2.0], &opts);
        assert!(r.is_err());
    }

    #[test]
    fn rejects_unsorted_samples() {
        assert!(integrate(
            |_, y: &[f64; 1]| [y[0]],
            0.0,
            [1.0],
            &[1.0, 0.5],
            &OdeOptions::with_tol(1e-8)
        )
        .is_err());
    }
}
