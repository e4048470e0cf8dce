use crate::error::{domain, Result};
use crate::scalar::Real;

/// Complete elliptic integral of the first kind, `K(m) = int_0^{pi/2} (1 - m sin^2)^{-1/2}`.
///
/// Takes the parameter `m` (not the modulus). Returns infinity for `m >= 1`.
pub fn elliptic_k<T: Real>(m: T) -> Result<T> {
    if m.is_nan() || m < T::zero() {
        return domain(format!("elliptic parameter m = {m} must lie in [0, 1)"));
    }
    if m >= T::one() {
        return Ok(T::infinity());
    }
    let mut a = T::one();
    let mut g = (T::one() - m).sqrt();
    for _ in 0..64 {
        if (a - g).abs() <= T::epsilon() * a {
            break;
        }
        let next = (a + g) * T::lit(0.5);
        g = (a * g).sqrt();
        a = next;
    }
    Ok(T::FRAC_PI_2() / a)
}
