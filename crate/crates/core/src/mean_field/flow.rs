use crate::error::{domain, Result};
use crate::model::{radius, radius_derivative, ModelParams};
use crate::ode::{integrate, OdeOptions};
use crate::scalar::Real;

use super::bloch::{wrap_angle, BlochPoint, CanonicalPoint};

/// Default integrator tolerance for trajectories.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Per-step error target relative to the requested tolerance, so that drift
/// accumulated over long runs stays within a few multiples of `tol`.
const STEP_TOL_FACTOR: f64 = 1e-2;

fn step_options<T: Real>(tol: T) -> OdeOptions<T> {
    OdeOptions::with_tol(tol * T::lit(STEP_TOL_FACTOR))
}

fn rhs_array<T: Real>(s: &[T; 3], eps: T, v: T) -> [T; 3] {
    let quarter = T::lit(0.25);
    let [sx, sy, sz] = *s;
    [
        -eps * sy,
        eps * sx + v * quarter * (T::one() - T::lit(4.0) * sz - T::lit(12.0) * sz * sz),
        v * sy,
    ]
}

/// Time derivative of the mean-field state.
pub fn mf_rhs<T: Real>(s: &BlochPoint<T>, params: &ModelParams<T>) -> [T; 3] {
    rhs_array(&s.as_array(), params.epsilon, params.v)
}

/// `eps s_z + v s_x`.
pub fn mf_energy<T: Real>(s: &BlochPoint<T>, params: &ModelParams<T>) -> T {
    params.epsilon * s.sz + params.v * s.sx
}

/// `eps p + v r(p) cos q`.
pub fn mf_energy_canonical<T: Real>(c: &CanonicalPoint<T>, params: &ModelParams<T>) -> T {
    params.epsilon * c.p + params.v * radius(c.p) * c.q.cos()
}

/// Hamilton's equations in the canonical chart, `(dp/dt, dq/dt)`.
pub fn canonical_rhs<T: Real>(c: &CanonicalPoint<T>, params: &ModelParams<T>) -> [T; 2] {
    [
        params.v * radius(c.p) * c.q.sin(),
        params.epsilon + params.v * radius_derivative(c.p) * c.q.cos(),
    ]
}

/// `samples` equally spaced times on `[0, t_max]`, both ends included.
pub fn uniform_times<T: Real>(t_max: T, samples: usize) -> Result<Vec<T>> {
    if samples < 2 || t_max <= T::zero() || !t_max.is_finite() {
        return domain("need t_max > 0 and at least two samples");
    }
    let step = t_max / T::count(samples - 1);
    Ok((0..samples)
        .map(|k| {
            if k + 1 == samples {
                t_max
            } else {
                T::count(k) * step
            }
        })
        .collect())
}

/// Sampled mean-field trajectory with conservation diagnostics.
#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub points: Vec<BlochPoint<T>>,
    /// Largest deviation of the energy from its initial value.
    pub energy_drift: T,
    /// Largest `|s_x^2 + s_y^2 - r^2(s_z)|` along the samples.
    pub surface_drift: T,
}

/// Integrate the Bloch flow from `s0` (at `t = 0`) and sample at `times`.
///
/// No projection back onto the surface is applied; the drift fields report
/// how well the invariants were kept.
pub fn integrate_trajectory<T: Real>(
    s0: &BlochPoint<T>,
    times: &[T],
    params: &ModelParams<T>,
    tol: T,
) -> Result<Trajectory<T>> {
    let (eps, v) = (params.epsilon, params.v);
    let (ys, _) = integrate(
        |_, y: &[T; 3]| rhs_array(y, eps, v),
        T::zero(),
        s0.as_array(),
        times,
        &step_options(tol),
    )?;
    let e0 = mf_energy(s0, params);
    let points: Vec<BlochPoint<T>> = ys.into_iter().map(BlochPoint::from_array).collect();
    let mut energy_drift = T::zero();
    let mut surface_drift = T::zero();
    for p in &points {
        energy_drift = energy_drift.max((mf_energy(p, params) - e0).abs());
        surface_drift = surface_drift.max(p.surface_residual().abs());
    }
    Ok(Trajectory {
        times: times.to_vec(),
        points,
        energy_drift,
        surface_drift,
    })
}

/// Integrate Hamilton's equations in `(p, q)`; the trajectory must avoid the vertices.
pub fn integrate_canonical<T: Real>(
    c0: &CanonicalPoint<T>,
    times: &[T],
    params: &ModelParams<T>,
    tol: T,
) -> Result<Vec<CanonicalPoint<T>>> {
    let (eps, v) = (params.epsilon, params.v);
    let (ys, _) = integrate(
        |_, y: &[T; 2]| {
            [
                v * radius(y[0]) * y[1].sin(),
                eps + v * radius_derivative(y[0]) * y[1].cos(),
            ]
        },
        T::zero(),
        [c0.p, c0.q],
        times,
        &step_options(tol),
    )?;
    ys.into_iter()
        .map(|[p, q]| {
            if !p.is_finite() || !q.is_finite() {
                return domain("canonical trajectory reached a vertex");
            }
            Ok(CanonicalPoint {
                p,
                q: wrap_angle(q),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mean_field::bloch::{from_canonical, to_canonical};
    use crate::model::make_params;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rhs_examples() {
        let p = make_params(0.0, 1.0, 2).unwrap();
        let r = mf_rhs(&BlochPoint::new(0.5, 0.0, 0.0).unwrap(), &p);
        assert_eq!(r, [0.0, 0.25, 0.0]);
        let r = mf_rhs(&BlochPoint::<f64>::tip(), &p);
        assert_abs_diff_eq!(r[1], 0.0, epsilon = 1e-15);
        assert_eq!(
            mf_energy(
                &BlochPoint::<f64>::tip(),
                &make_params(1.0, 1.0, 2).unwrap()
            ),
            -0.5
        );
    }

    #[test]
    fn invariants_within_ten_tol() {
        let times = uniform_times(100.0, 1001).unwrap();
        for eps in [0.0, 0.7, 2.0, -1.3] {
            let params = make_params(eps, 1.0, 2).unwrap();
            for &(p, q) in &[(0.1, 0.4), (-0.45, 4.0), (0.4, 2.0), (0.0, 2.5)] {
                let s0 = from_canonical(&CanonicalPoint::new(p, q).unwrap());
                for tol in [1e-8, 1e-10] {
                    let tr = integrate_trajectory(&s0, &times, &params, tol).unwrap();
                    assert!(
                        tr.energy_drift <= 10.0 * tol,
                        "eps={eps} {} ",
                        tr.energy_drift
                    );
                    assert!(
                        tr.surface_drift <= 10.0 * tol,
                        "eps={eps} p={p} {}",
                        tr.surface_drift
                    );
                }
            }
        }
    }

    /// `{A, B} = dA/dp dB/dq - dA/dq dB/dp` by central differences.
    fn poisson_fd(
        f: impl Fn(f64, f64) -> f64,
        g: impl Fn(f64, f64) -> f64,
        p: f64,
        q: f64,
        h: f64,
    ) -> f64 {
        let dp = |u: &dyn Fn(f64, f64) -> f64| (u(p + h, q) - u(p - h, q)) / (2.0 * h);
        let dq = |u: &dyn Fn(f64, f64) -> f64| (u(p, q + h) - u(p, q - h)) / (2.0 * h);
        dp(&f) * dq(&g) - dq(&f) * dp(&g)
    }

    #[test]
    fn bracket_closure_and_flow() {
        let params = make_params(0.6, 0.9, 2).unwrap();
        let ham = |p: f64, q: f64| params.epsilon * p + params.v * radius(p) * q.cos();
        let sx = |p: f64, q: f64| radius(p) * q.cos();
        let sy = |p: f64, q: f64| radius(p) * q.sin();
        let sz = |p: f64, _q: f64| p;
        let mut state = 0x853c_49e6_748f_ea9bu64;
        let mut uniform = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let p = -0.45 + 0.9 * uniform();
            let q = std::f64::consts::TAU * uniform();
            let s = from_canonical(&CanonicalPoint { p, q });
            let h = 1e-5;
            assert_abs_diff_eq!(
                poisson_fd(sx, sy, p, q, h),
                0.25 * (1.0 - 4.0 * p - 12.0 * p * p),
                epsilon = 1e-6
            );
            assert_abs_diff_eq!(poisson_fd(sy, sz, p, q, h), -s.sx, epsilon = 1e-6);
            assert_abs_diff_eq!(poisson_fd(sz, sx, p, q, h), -s.sy, epsilon = 1e-6);
            // With this bracket the equations of motion read ds/dt = {H, s}.
            let exact = mf_rhs(&s, &params);
            let flow = [
                poisson_fd(ham, sx, p, q, h),
                poisson_fd(ham, sy, p, q, h),
                poisson_fd(ham, sz, p, q, h),
            ];
            for k in 0..3 {
                assert_abs_diff_eq!(flow[k], exact[k], epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn canonical_matches_bloch() {
        let params = make_params(1.5, 1.0, 2).unwrap();
        let c0 = CanonicalPoint::new(0.05, 1.0).unwrap();
        let times = uniform_times(20.0, 201).unwrap();
        let can = integrate_canonical(&c0, &times, &params, 1e-12).unwrap();
        let tr = integrate_trajectory(&from_canonical(&c0), &times, &params, 1e-12).unwrap();
        for (c, s) in can.iter().zip(&tr.points) {
            let sc = from_canonical(c);
            assert!(sc.distance(s) < 1e-8, "{}", sc.distance(s));
            let back = to_canonical(s).unwrap();
            assert_abs_diff_eq!(back.p, c.p, epsilon = 1e-8);
        }
    }

    #[test]
    fn time_grid() {
        let t = uniform_times(1.0, 5).unwrap();
        assert_eq!(t, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(uniform_times(0.0, 5).is_err());
    }
}
