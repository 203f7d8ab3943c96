//! Points of `I × J × ℝ` and the scaled taxicab metric
//! `ρ(u, v) = |Δx| + |Δy| + θ|Δz|` whose closed balls are octahedrons.

use serde::{Deserialize, Serialize};

/// The rectangle `I × J = [x_min, x_max] × [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainBox {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl DomainBox {
    pub fn contains_xy(&self, p: &Point3) -> bool {
        p.x >= self.x.0 && p.x <= self.x.1 && p.y >= self.y.0 && p.y <= self.y.1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &Point3) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

impl From<[f64; 3]> for Point3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Self { x, y, z }
    }
}

/// The metric `ρ` together with the quantities it was derived from.
///
/// `theta` weights the vertical axis; `delta` bounds `|x|` and `|y|` on the
/// domain rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledTaxicabMetric {
    pub theta: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub delta: f64,
}

impl ScaledTaxicabMetric {
    #[inline]
    pub fn rho(&self, u: &Point3, v: &Point3) -> f64 {
        rho(self.theta, u, v)
    }

    /// Coordinates in which `ρ` becomes the plain L1 distance.
    #[inline]
    pub fn weighted(&self, u: &Point3) -> [f64; 3] {
        [u.x, u.y, self.theta * u.z]
    }
}

#[inline]
pub fn rho(theta: f64, u: &Point3, v: &Point3) -> f64 {
    (u.x - v.x).abs() + (u.y - v.y).abs() + theta * (u.z - v.z).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rho_direct_evaluation() {
        let u = Point3::new(0.0, 0.0, 0.0);
        let v = Point3::new(1.0, 2.0, 4.0);
        assert_eq!(rho(0.5, &u, &v), 5.0);
        assert_eq!(rho(0.5, &v, &v), 0.0);
    }

    fn coord() -> impl Strategy<Value = f64> {
        -1.0e3..1.0e3
    }

    fn point() -> impl Strategy<Value = Point3> {
        (coord(), coord(), coord()).prop_map(|(x, y, z)| Point3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn metric_axioms(u in point(), v in point(), w in point(), theta in 1.0e-3..=1.0f64) {
            let duv = rho(theta, &u, &v);
            prop_assert!(duv >= 0.0);
            prop_assert_eq!(duv, rho(theta, &v, &u));
            prop_assert_eq!(rho(theta, &u, &u), 0.0);
            if u != v {
                prop_assert!(duv > 0.0);
            }
            let scale = 1.0 + duv + rho(theta, &u, &w) + rho(theta, &w, &v);
            prop_assert!(duv <= rho(theta, &u, &w) + rho(theta, &w, &v) + 1e-12 * scale);
        }
    }
}
