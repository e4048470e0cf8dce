use crate::error::Result;
use crate::model::{radius, teardrop_radius, ModelParams};
use crate::scalar::Real;

/// Extremal energies `U+-(p) = eps p +- |v| r(p)` over each cross-section of the teardrop.
///
/// `|v|` is used so that `U- <= U+` for either sign of the coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialCurves<T> {
    pub epsilon: T,
    pub v_abs: T,
}

pub fn potential_curves<T: Real>(params: &ModelParams<T>) -> PotentialCurves<T> {
    PotentialCurves {
        epsilon: params.epsilon,
        v_abs: params.v.abs(),
    }
}

impl<T: Real> PotentialCurves<T> {
    pub fn upper(&self, p: T) -> Result<T> {
        Ok(self.epsilon * p + self.v_abs * teardrop_radius(p)?)
    }

    pub fn lower(&self, p: T) -> Result<T> {
        Ok(self.epsilon * p - self.v_abs * teardrop_radius(p)?)
    }

    /// Both curves without domain checking.
    pub(crate) fn pair(&self, p: T) -> (T, T) {
        let w = self.v_abs * radius(p);
        (self.epsilon * p - w, self.epsilon * p + w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mean_field::energy_bounds;
    use crate::model::make_params;
    use approx::assert_abs_diff_eq;

    #[test]
    fn examples() {
        let u = potential_curves(&make_params(1.0, 0.7, 2).unwrap());
        assert_eq!(u.upper(0.5).unwrap(), 0.5);
        assert_eq!(u.lower(0.5).unwrap(), 0.5);
        assert_eq!(u.upper(-0.5).unwrap(), -0.5);
        assert_eq!(u.lower(-0.5).unwrap(), -0.5);
        let u = potential_curves(&make_params(0.0, 1.0, 2).unwrap());
        assert_eq!(u.upper(0.0).unwrap(), 0.5);
        assert_eq!(u.lower(0.0).unwrap(), -0.5);
        assert!(u.upper(0.6).is_err());
    }

    #[test]
    fn extrema_are_fixed_point_energies() {
        for &(e, v) in &[(0.0, 1.0), (0.8, 1.0), (-1.1, 0.6), (3.0, 1.0), (0.4, -1.0)] {
            let params = make_params(e, v, 2).unwrap();
            let u = potential_curves(&params);
            let (lo, hi) = energy_bounds(&params).unwrap();
            let mut umin = f64::INFINITY;
            let mut umax = f64::NEG_INFINITY;
            for i in 0..=20000 {
                let p = -0.5 + i as f64 / 20000.0;
                umin = umin.min(u.lower(p).unwrap());
                umax = umax.max(u.upper(p).unwrap());
                assert!(u.lower(p).unwrap() <= u.upper(p).unwrap());
            }
            assert_abs_diff_eq!(umin, lo, epsilon = 1e-7);
            assert_abs_diff_eq!(umax, hi, epsilon = 1e-7);
        }
        let (lo, hi) = energy_bounds(&make_params(0.0, 1.0, 2).unwrap()).unwrap();
        assert_abs_diff_eq!(hi, 2.0 * 6f64.sqrt() / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lo, -2.0 * 6f64.sqrt() / 9.0, epsilon = 1e-15);
    }
}
