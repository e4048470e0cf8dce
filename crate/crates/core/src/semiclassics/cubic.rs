use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest excursion of the trigonometric-method cosine argument beyond
/// `[-1, 1]` that is still attributed to rounding at a double root.
const ARG_SLACK: f64 = 1e-6;

fn horner<T: Real>(c: &[T; 4], x: T) -> (T, T) {
    let val = ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
    let der = (T::lit(3.0) * c[0] * x + T::lit(2.0) * c[1]) * x + c[2];
    (val, der)
}

/// One Newton step, kept only if it lowers the residual.
pub(crate) fn polish<T: Real>(c: &[T; 4], x: T) -> T {
    let (f, df) = horner(c, x);
    if df == T::zero() || !df.is_finite() {
        return x;
    }
    let y = x - f / df;
    if horner(c, y).0.abs() < f.abs() {
        y
    } else {
        x
    }
}

/// The three real roots of `a x^3 + b x^2 + c x + d`, ascending.
///
/// Uses the trigonometric form and one Newton polish per root. A complex pair
/// beyond rounding slack is reported as an internal error.
pub fn real_cubic_roots<T: Real>(a: T, b: T, c: T, d: T) -> Result<[T; 3]> {
    if a == T::zero() || !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite()) {
        return Err(Error::Internal(
            "cubic needs a finite, nonzero leading coefficient".into(),
        ));
    }
    let three = T::lit(3.0);
    let (bb, cc, dd) = (b / a, c / a, d / a);
    let shift = bb / three;
    let p = cc - bb * bb / three;
    let q = T::lit(2.0) * bb * bb * bb / T::lit(27.0) - bb * cc / three + dd;
    let scale = (bb * bb / three).max(cc.abs()).max(T::min_positive_value());
    let mut roots = if p >= -T::tol(1e-14) * scale {
        // Triple root, up to rounding.
        let q_scale = scale * scale.sqrt();
        if p > T::tol(1e-10) * scale || q.abs() > T::tol(1e-10) * q_scale {
            return Err(Error::Internal(format!(
                "cubic has complex roots (p = {p:e}, q = {q:e}); three real roots were expected"
            )));
        }
        let t = (-q).cbrt();
        [t - shift; 3]
    } else {
        let m = T::lit(2.0) * (-p / three).sqrt();
        let arg = three * q / (p * m);
        if arg.abs() > T::one() + T::lit(ARG_SLACK) {
            return Err(Error::Internal(format!(
                "cubic has complex roots (cosine argument {arg}); three real roots were expected"
            )));
        }
        let phi = arg.max(-T::one()).min(T::one()).acos() / three;
        let third = T::TAU() / three;
        [
            m * phi.cos() - shift,
            m * (phi - third).cos() - shift,
            m * (phi - T::lit(2.0) * third).cos() - shift,
        ]
    };
    let coeffs = [T::one(), bb, cc, dd];
    for r in roots.iter_mut() {
        *r = polish(&coeffs, *r);
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn simple_and_repeated() {
        let r = real_cubic_roots(1.0, -6.0, 11.0, -6.0).unwrap();
        for (x, y) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-13);
        }
        // (x + 1/2)^2 (2x - 1)
        let r = real_cubic_roots(2.0, 1.0, -0.5, -0.25).unwrap();
        assert_abs_diff_eq!(r[0], -0.5, epsilon = 1e-7);
        assert_abs_diff_eq!(r[1], -0.5, epsilon = 1e-7);
        assert_abs_diff_eq!(r[2], 0.5, epsilon = 1e-14);
        let r = real_cubic_roots(1.0, -3.0, 3.0, -1.0).unwrap();
        for x in r {
            assert_abs_diff_eq!(x, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn complex_pair_rejected() {
        assert!(real_cubic_roots(1.0, 0.0, 1.0, 0.0).is_err());
        assert!(real_cubic_roots(0.0, 1.0, 1.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn recovers_prescribed_roots(a in 0.1f64..5.0, x in -3.0f64..3.0, y in -3.0f64..3.0, z in -3.0f64..3.0) {
            let mut want = [x, y, z];
            want.sort_by(|u, v| u.partial_cmp(v).unwrap());
            let b = -a * (x + y + z);
            let c = a * (x * y + y * z + x * z);
            let d = -a * x * y * z;
            let got = real_cubic_roots(a, b, c, d).unwrap();
            for (g, w) in got.iter().zip(want) {
                // Near-coincident roots are only determined to ~sqrt(machine eps).
                prop_assert!((g - w).abs() < 1e-6, "{:?} vs {:?}", got, want);
            }
        }
    }
}
