use crate::error::{domain, Result};
use crate::model::{clamp_to_domain, radius, radius_squared};
use crate::scalar::Real;

/// Accepted distance from the constraint surface when building a point.
pub const SURFACE_TOL: f64 = 1e-10;

/// Minimum radius at which the canonical angle is defined.
const VERTEX_RADIUS: f64 = 1e-12;

/// Mean-field state `s_j = eta <K_j>` on the teardrop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint<T> {
    pub sx: T,
    pub sy: T,
    pub sz: T,
}

impl<T: Real> BlochPoint<T> {
    /// Checked constructor: `s_z` in range and on the surface within [`SURFACE_TOL`].
    pub fn new(sx: T, sy: T, sz: T) -> Result<Self> {
        let sz = clamp_to_domain(sz)?;
        let p = BlochPoint { sx, sy, sz };
        let res = p.surface_residual().abs();
        if res.is_nan() || res > T::tol(SURFACE_TOL) {
            return domain(format!(
                "point ({sx}, {sy}, {sz}) is {res:e} off the teardrop surface"
            ));
        }
        Ok(p)
    }

    /// Build without checks; for integrator output where drift is measured, not enforced.
    pub fn unchecked(sx: T, sy: T, sz: T) -> Self {
        BlochPoint { sx, sy, sz }
    }

    /// The cusp, all-molecular state.
    pub fn tip() -> Self {
        BlochPoint::unchecked(T::zero(), T::zero(), -T::lit(0.5))
    }

    /// `s_x^2 + s_y^2 - r^2(s_z)`.
    pub fn surface_residual(&self) -> T {
        self.sx * self.sx + self.sy * self.sy - radius_squared(self.sz)
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.sx, self.sy, self.sz]
    }

    pub fn from_array(a: [T; 3]) -> Self {
        BlochPoint::unchecked(a[0], a[1], a[2])
    }

    pub fn distance(&self, other: &Self) -> T {
        ((self.sx - other.sx).powi(2) + (self.sy - other.sy).powi(2) + (self.sz - other.sz).powi(2))
            .sqrt()
    }
}

/// Canonical pair: `p = s_z`, `q` the azimuth, wrapped into `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalPoint<T> {
    pub p: T,
    pub q: T,
}

impl<T: Real> CanonicalPoint<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        Ok(CanonicalPoint {
            p: clamp_to_domain(p)?,
            q: wrap_angle(q),
        })
    }
}

pub(crate) fn wrap_angle<T: Real>(q: T) -> T {
    let tau = T::TAU();
    let w = q % tau;
    let w = if w < T::zero() { w + tau } else { w };
    if w >= tau {
        T::zero()
    } else {
        w
    }
}

pub fn to_canonical<T: Real>(s: &BlochPoint<T>) -> Result<CanonicalPoint<T>> {
    if radius(s.sz) <= T::lit(VERTEX_RADIUS) {
        return domain("angle undefined at r=0 (teardrop vertex)");
    }
    CanonicalPoint::new(s.sz, s.sy.atan2(s.sx))
}

pub fn from_canonical<T: Real>(c: &CanonicalPoint<T>) -> BlochPoint<T> {
    let r = radius(c.p);
    BlochPoint::unchecked(r * c.q.cos(), r * c.q.sin(), c.p)
}

/// Point of the teardrop minimising `a s_x + b s_z + c s_y`.
///
/// This is the mean-field image of the ground state of `a K_x + b K_z + c K_y`.
pub fn surface_minimizer<T: Real>(a: T, b: T, c: T) -> Result<BlochPoint<T>> {
    let half = T::lit(0.5);
    let w = (a * a + c * c).sqrt();
    if w == T::zero() {
        return match b.partial_cmp(&T::zero()) {
            Some(std::cmp::Ordering::Greater) => Ok(BlochPoint::tip()),
            Some(std::cmp::Ordering::Less) => Ok(BlochPoint::unchecked(T::zero(), T::zero(), half)),
            _ => domain("linear functional is identically zero"),
        };
    }
    // Minimise b p - w r(p). With u = sqrt(1 - 2p) the stationarity condition
    // r'(p) = b / w becomes 6u^2 - 4(b/w) u - 4 = 0.
    let beta = b / w;
    let four = T::lit(4.0);
    let u = (four * beta + (T::lit(16.0) * beta * beta + T::lit(96.0)).sqrt()) / T::lit(12.0);
    if u >= T::SQRT_2() {
        return Ok(BlochPoint::tip());
    }
    let p = (T::one() - u * u) * half;
    let r = radius(p);
    Ok(BlochPoint::unchecked(-a / w * r, -c / w * r, p))
}

/// Euclidean distance from `(x, z)` to the teardrop cross-section `{(+-r(p), p)}`.
pub fn distance_to_cross_section<T: Real>(x: T, z: T) -> T {
    let half = T::lit(0.5);
    let x = x.abs();
    let d2 = |p: T| (x - radius(p)).powi(2) + (z - p).powi(2);
    let samples = 2000;
    let step = T::one() / T::count(samples);
    let mut best = 0;
    let mut best_val = T::infinity();
    for k in 0..=samples {
        let v = d2(-half + T::count(k) * step);
        if v < best_val {
            best_val = v;
            best = k;
        }
    }
    // Golden-section refinement on the bracketing cells.
    let mut a = (-half + T::count(best.saturating_sub(1)) * step).max(-half);
    let mut b = (-half + T::count(best + 1) * step).min(half);
    let g = (T::lit(5.0).sqrt() - T::one()) * half;
    for _ in 0..100 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if d2(c) < d2(d) {
            b = d;
        } else {
            a = c;
        }
    }
    best_val.min(d2((a + b) * half)).sqrt()
}
