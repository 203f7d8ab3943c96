//! The interpolation data set: node abscissae, ordinates, heights and the
//! vertical scaling factors of the maps.

use serde::{Deserialize, Serialize};

use crate::error::{Edge, Error, Result};
use crate::geometry::Point3;

/// Relative tolerance of the boundary collinearity test, measured against
/// the data scale (largest absolute coordinate).
pub const COLLINEARITY_TOLERANCE: f64 = 1e-9;

/// Unvalidated grid contents, exactly as read from a file.
///
/// `z[k][l]` is the height over `(x[k], y[l])`; `g[k-1][l-1]` is the
/// vertical scaling factor of map `(k, l)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridData {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<Vec<f64>>,
    pub g: Vec<Vec<f64>>,
}

impl GridData {
    pub fn validate(self) -> Result<DataGrid> {
        validate_grid(self)
    }
}

/// A grid that passed [`validate_grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct DataGrid {
    data: GridData,
    scale: f64,
}

impl DataGrid {
    /// Number of x-intervals `n`.
    pub fn n(&self) -> usize {
        self.data.x.len() - 1
    }

    /// Number of y-intervals `m`.
    pub fn m(&self) -> usize {
        self.data.y.len() - 1
    }

    pub fn map_count(&self) -> usize {
        self.n() * self.m()
    }

    pub fn x(&self) -> &[f64] {
        &self.data.x
    }

    pub fn y(&self) -> &[f64] {
        &self.data.y
    }

    pub fn z(&self, k: usize, l: usize) -> f64 {
        self.data.z[k][l]
    }

    /// Scaling factor of map `(k, l)`, with `k` in `1..=n` and `l` in `1..=m`.
    pub fn g(&self, k: usize, l: usize) -> f64 {
        self.data.g[k - 1][l - 1]
    }

    pub fn node(&self, k: usize, l: usize) -> Point3 {
        Point3::new(self.data.x[k], self.data.y[l], self.data.z[k][l])
    }

    /// All `(n+1)(m+1)` data points in row-major `(k, l)` order.
    pub fn nodes(&self) -> Vec<Point3> {
        (0..=self.n())
            .flat_map(|k| (0..=self.m()).map(move |l| (k, l)))
            .map(|(k, l)| self.node(k, l))
            .collect()
    }

    /// `δ = max{|x_0|, |x_n|, |y_0|, |y_m|}`.
    pub fn delta(&self) -> f64 {
        let (x, y) = (&self.data.x, &self.data.y);
        x[0].abs()
            .max(x[self.n()].abs())
            .max(y[0].abs())
            .max(y[self.m()].abs())
    }

    /// Largest absolute coordinate of any data point (at least 1). Absolute
    /// tolerances across the crate are expressed as multiples of it.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn z_range(&self) -> (f64, f64) {
        z_bounds(&self.data.z)
    }

    pub fn data(&self) -> &GridData {
        &self.data
    }

    pub fn into_data(self) -> GridData {
        self.data
    }
}

fn z_bounds(z: &[Vec<f64>]) -> (f64, f64) {
    z.iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

/// Checks shapes, monotone axes, `0 < g < 1`, at least two maps and the
/// collinearity of the data on each of the four boundary edges.
pub fn validate_grid(data: GridData) -> Result<DataGrid> {
    check_shapes(&data)?;
    check_finite(&data)?;
    check_monotone("x", &data.x)?;
    check_monotone("y", &data.y)?;

    for (k, row) in data.g.iter().enumerate() {
        for (l, &value) in row.iter().enumerate() {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::GOutOfRange {
                    k: k + 1,
                    l: l + 1,
                    value,
                });
            }
        }
    }

    let (n, m) = (data.x.len() - 1, data.y.len() - 1);
    if n * m < 2 {
        return Err(Error::TooFewMaps { count: n * m });
    }

    let scale = data
        .x
        .iter()
        .chain(&data.y)
        .chain(data.z.iter().flatten())
        .fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let tolerance = COLLINEARITY_TOLERANCE * scale;
    let edges = [
        (Edge::Left, &data.y, (0..=m).map(|l| data.z[0][l]).collect::<Vec<_>>()),
        (Edge::Right, &data.y, (0..=m).map(|l| data.z[n][l]).collect()),
        (Edge::Bottom, &data.x, (0..=n).map(|k| data.z[k][0]).collect()),
        (Edge::Top, &data.x, (0..=n).map(|k| data.z[k][m]).collect()),
    ];
    for (edge, axis, heights) in edges {
        let deviation = collinearity_deviation(axis, &heights);
        if deviation > tolerance {
            return Err(Error::BoundaryNotCollinear {
                edge,
                deviation,
                tolerance,
            });
        }
    }

    Ok(DataGrid { data, scale })
}

/// Largest vertical distance between an interior point `(s_i, h_i)` and the
/// chord through the two end points.
pub fn collinearity_deviation(axis: &[f64], heights: &[f64]) -> f64 {
    let last = axis.len() - 1;
    let (s0, h0) = (axis[0], heights[0]);
    let slope = (heights[last] - h0) / (axis[last] - s0);
    axis.iter()
        .zip(heights)
        .map(|(&s, &h)| (h - (h0 + slope * (s - s0))).abs())
        .fold(0.0, f64::max)
}

fn check_shapes(data: &GridData) -> Result<()> {
    if data.x.len() < 2 {
        return Err(Error::AxisTooShort {
            axis: "x",
            len: data.x.len(),
        });
    }
    if data.y.len() < 2 {
        return Err(Error::AxisTooShort {
            axis: "y",
            len: data.y.len(),
        });
    }
    let (rows, cols) = (data.x.len(), data.y.len());
    check_matrix("z", &data.z, rows, cols, "n+1", "m+1")?;
    check_matrix("g", &data.g, rows - 1, cols - 1, "n", "m")
}

fn check_matrix(
    key: &'static str,
    matrix: &[Vec<f64>],
    rows: usize,
    cols: usize,
    rows_label: &str,
    cols_label: &str,
) -> Result<()> {
    if matrix.len() != rows {
        return Err(Error::Shape {
            key,
            detail: format!("expected {rows} rows ({rows_label}), found {}", matrix.len()),
        });
    }
    if let Some((i, row)) = matrix.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(Error::Shape {
            key,
            detail: format!(
                "row {i} has {} entries, expected {cols} ({cols_label})",
                row.len()
            ),
        });
    }
    Ok(())
}

fn check_finite(data: &GridData) -> Result<()> {
    let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
    if !finite(&data.x) {
        return Err(Error::NonFinite { key: "x" });
    }
    if !finite(&data.y) {
        return Err(Error::NonFinite { key: "y" });
    }
    if !data.z.iter().all(|r| finite(r)) {
        return Err(Error::NonFinite { key: "z" });
    }
    if !data.g.iter().all(|r| finite(r)) {
        return Err(Error::NonFinite { key: "g" });
    }
    Ok(())
}

fn check_monotone(axis: &'static str, values: &[f64]) -> Result<()> {
    match values.windows(2).position(|w| w[1] <= w[0]) {
        Some(i) => Err(Error::NonMonotoneAxis { axis, index: i + 1 }),
        None => Ok(()),
    }
}
