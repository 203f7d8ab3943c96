//! Construction of the iterated function system of a fractal interpolation
//! surface: the affine-bilinear maps
//!
//! ```text
//! F(x, y, z) = (a·x + b, c·y + d, e·x + f·y + g·z + α·x·y + β)
//! ```
//!
//! one per grid cell `(k, l)`, the vertical weight `θ` of the metric under
//! which all of them contract, their contraction constants and fixed points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{DomainBox, Point3, ScaledTaxicabMetric};
use crate::grid::DataGrid;

/// Coefficients of one affine-bilinear map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl MapCoefficients {
    #[inline]
    pub fn apply(&self, u: &Point3) -> Point3 {
        Point3 {
            x: self.a * u.x + self.b,
            y: self.c * u.y + self.d,
            z: self.e * u.x + self.f * u.y + self.g * u.z + self.alpha * u.x * u.y + self.beta,
        }
    }

    pub fn to_array(&self) -> [f64; 9] {
        [
            self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.alpha, self.beta,
        ]
    }

    pub fn from_array([a, b, c, d, e, f, g, alpha, beta]: [f64; 9]) -> Self {
        Self {
            a,
            b,
            c,
            d,
            e,
            f,
            g,
            alpha,
            beta,
        }
    }
}

/// `p, q, r, t` for map `(k, l)`: the heights of the four target sub-cell
/// corners with the `g`-scaled domain corners removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerResiduals {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub t: f64,
}

impl CornerResiduals {
    pub fn new(grid: &DataGrid, k: usize, l: usize) -> Self {
        let (n, m) = (grid.n(), grid.m());
        let g = grid.g(k, l);
        Self {
            p: grid.z(k, l) - g * grid.z(n, m),
            q: grid.z(k - 1, l) - g * grid.z(0, m),
            r: grid.z(k, l - 1) - g * grid.z(n, 0),
            t: grid.z(k - 1, l - 1) - g * grid.z(0, 0),
        }
    }
}

/// Coefficients of `F_{k,l}` for `k` in `1..=n`, `l` in `1..=m`.
///
/// The map sends the four corners of the data rectangle onto the four
/// corners of cell `(k, l)`, heights included.
pub fn compute_coefficients(grid: &DataGrid, k: usize, l: usize) -> MapCoefficients {
    assert!((1..=grid.n()).contains(&k) && (1..=grid.m()).contains(&l));
    let (x, y) = (grid.x(), grid.y());
    let (x0, xn) = (x[0], x[grid.n()]);
    let (y0, ym) = (y[0], y[grid.m()]);
    let width = xn - x0;
    let height = ym - y0;
    let area = width * height;

    let CornerResiduals { p, q, r, t } = CornerResiduals::new(grid, k, l);

    MapCoefficients {
        a: (x[k] - x[k - 1]) / width,
        b: (x[k - 1] * xn - x[k] * x0) / width,
        c: (y[l] - y[l - 1]) / height,
        d: (y[l - 1] * ym - y[l] * y0) / height,
        e: (y0 * (q - p) - ym * (t - r)) / area,
        f: (x0 * (r - p) - xn * (t - q)) / area,
        g: grid.g(k, l),
        alpha: (p - q - r + t) / area,
        beta: (y0 * (x0 * p - xn * q) - ym * (x0 * r - xn * t)) / area,
    }
}

/// Vertical weight `θ = min(θ₁, θ₂)` making every map a `ρ`-contraction.
///
/// `θ₁ = (1 - max a) / (2 max(|e| + δ|α|))`, or 1 when every `e` and `α`
/// vanishes; `θ₂` likewise with `c` and `f`.
pub fn compute_theta(coeffs: &[MapCoefficients], delta: f64) -> ScaledTaxicabMetric {
    let mut max_a = f64::NEG_INFINITY;
    let mut max_c = f64::NEG_INFINITY;
    let mut max_x = 0.0_f64;
    let mut max_y = 0.0_f64;
    for m in coeffs {
        max_a = max_a.max(m.a);
        max_c = max_c.max(m.c);
        max_x = max_x.max(m.e.abs() + delta * m.alpha.abs());
        max_y = max_y.max(m.f.abs() + delta * m.alpha.abs());
    }
    let theta1 = if max_x == 0.0 {
        1.0
    } else {
        (1.0 - max_a) / (2.0 * max_x)
    };
    let theta2 = if max_y == 0.0 {
        1.0
    } else {
        (1.0 - max_c) / (2.0 * max_y)
    };
    ScaledTaxicabMetric {
        theta: theta1.min(theta2),
        theta1,
        theta2,
        delta,
    }
}

/// The formula value `max{a + θ(|e| + δ|α|), c + θ(|f| + δ|α|), g}`,
/// without the `< 1` check.
pub fn contraction_bound(m: &MapCoefficients, metric: &ScaledTaxicabMetric) -> f64 {
    let (theta, delta) = (metric.theta, metric.delta);
    let bilinear = delta * m.alpha.abs();
    (m.a + theta * (m.e.abs() + bilinear))
        .max(m.c + theta * (m.f.abs() + bilinear))
        .max(m.g)
}

/// Lipschitz constant of `m` with respect to `ρ` on `I × J × ℝ`.
pub fn contraction_constant(m: &MapCoefficients, metric: &ScaledTaxicabMetric) -> Result<f64> {
    let value = contraction_bound(m, metric);
    if value < 1.0 {
        Ok(value)
    } else {
        Err(Error::ContractionNotStrict { value })
    }
}

/// Closed-form fixed point of an affine-bilinear map with `a, c, g ≠ 1`.
pub fn fixed_point(m: &MapCoefficients) -> Point3 {
    let x = m.b / (1.0 - m.a);
    let y = m.d / (1.0 - m.c);
    let z = (m.e * x + m.f * y + m.alpha * x * y + m.beta) / (1.0 - m.g);
    Point3 { x, y, z }
}

/// Grid cell `(k, l)` of a base map, 1-based.
pub type CellLabel = (usize, usize);

/// One map of a (possibly composed) system.
///
/// `factors` lists the base cells of the composition, outermost first; a
/// base map has exactly one factor.
#[derive(Debug, Clone, PartialEq)]
pub struct IfsMap {
    pub factors: Vec<CellLabel>,
    pub coeffs: MapCoefficients,
    pub contraction: f64,
    pub fixed_point: Point3,
}

impl IfsMap {
    #[inline]
    pub fn apply(&self, u: &Point3) -> Point3 {
        self.coeffs.apply(u)
    }
}

/// A flat list of maps sharing one metric. The base system has order 1;
/// [`crate::composition::compose_system`] produces higher orders.
#[derive(Debug, Clone, PartialEq)]
pub struct IfsSystem {
    pub order: u32,
    pub maps: Vec<IfsMap>,
    pub metric: ScaledTaxicabMetric,
    pub domain: DomainBox,
}

impl IfsSystem {
    /// Builds the base system of a validated grid, maps in row-major
    /// `(k, l)` order.
    pub fn from_grid(grid: &DataGrid) -> Result<Self> {
        let cells: Vec<CellLabel> = (1..=grid.n())
            .flat_map(|k| (1..=grid.m()).map(move |l| (k, l)))
            .collect();
        let coeffs: Vec<MapCoefficients> = cells
            .iter()
            .map(|&(k, l)| compute_coefficients(grid, k, l))
            .collect();
        let metric = compute_theta(&coeffs, grid.delta());
        let maps = cells
            .into_iter()
            .zip(coeffs)
            .map(|(cell, coeffs)| {
                Ok(IfsMap {
                    factors: vec![cell],
                    contraction: contraction_constant(&coeffs, &metric)?,
                    fixed_point: fixed_point(&coeffs),
                    coeffs,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let (x, y) = (grid.x(), grid.y());
        Ok(Self {
            order: 1,
            maps,
            metric,
            domain: DomainBox {
                x: (x[0], x[grid.n()]),
                y: (y[0], y[grid.m()]),
            },
        })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn constants(&self) -> Vec<f64> {
        self.maps.iter().map(|m| m.contraction).collect()
    }

    pub fn fixed_points(&self) -> Vec<Point3> {
        self.maps.iter().map(|m| m.fixed_point).collect()
    }

    pub fn max_contraction(&self) -> f64 {
        self.maps.iter().map(|m| m.contraction).fold(0.0, f64::max)
    }
}

/// The four `(image, expected)` pairs of the corner conditions of map `(k, l)`:
/// the domain corners must land on the corners of cell `(k, l)`.
pub fn corner_images(grid: &DataGrid, coeffs: &MapCoefficients, k: usize, l: usize) -> [(Point3, Point3); 4] {
    let (n, m) = (grid.n(), grid.m());
    [
        (coeffs.apply(&grid.node(0, 0)), grid.node(k - 1, l - 1)),
        (coeffs.apply(&grid.node(n, 0)), grid.node(k, l - 1)),
        (coeffs.apply(&grid.node(0, m)), grid.node(k - 1, l)),
        (coeffs.apply(&grid.node(n, m)), grid.node(k, l)),
    ]
}
