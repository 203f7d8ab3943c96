//! Finite covers of the attractor by `ρ`-balls (octahedrons).
//!
//! Each map of a system gets the ball centred at its fixed point. The radii
//! solve `ρ_i = c_i (M + max_{j≠i} ρ_j)`, where `M` is the `ρ`-diameter of
//! the fixed points. The solution only needs the largest constant `c'` and
//! the largest of the remaining ones `c''`:
//!
//! ```text
//! ρ_{i'} = M c' (1 + c'') / (1 - c' c'')
//! ρ_i    = M c_i (1 + c') / (1 - c' c'')     for i ≠ i'
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{rho, Point3, ScaledTaxicabMetric};
use crate::ifs::IfsSystem;

/// Indices of the largest value and of the largest among the others.
/// Ties resolve to the first occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Top2 {
    pub primary: usize,
    pub secondary: usize,
}

/// Comparison tally of one [`top2_select_counted`] pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComparisonCounts {
    /// Comparisons against the running maximum.
    pub primary: usize,
    /// Comparisons against the running second maximum.
    pub secondary: usize,
}

/// Single pass, `N - 1` comparisons against the maximum and at most `N - 1`
/// against the runner-up.
pub fn top2_select(values: &[f64]) -> Result<Top2> {
    top2_scan(values, None)
}

pub fn top2_select_counted(values: &[f64]) -> Result<(Top2, ComparisonCounts)> {
    let mut counts = ComparisonCounts::default();
    let top = top2_scan(values, Some(&mut counts))?;
    Ok((top, counts))
}

fn top2_scan(values: &[f64], mut counts: Option<&mut ComparisonCounts>) -> Result<Top2> {
    if values.len() < 2 {
        return Err(Error::TooFewMaps { count: values.len() });
    }
    let mut primary = 0;
    let mut secondary: Option<usize> = None;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if let Some(c) = counts.as_deref_mut() {
            c.primary += 1;
        }
        if v > values[primary] {
            secondary = Some(primary);
            primary = i;
            continue;
        }
        match secondary {
            None => secondary = Some(i),
            Some(s) => {
                if let Some(c) = counts.as_deref_mut() {
                    c.secondary += 1;
                }
                if v > values[s] {
                    secondary = Some(i);
                }
            }
        }
    }
    Ok(Top2 {
        primary,
        secondary: secondary.expect("at least two values"),
    })
}

/// Sorting baseline for [`top2_select`]: orders every index by value
/// (descending, ties by index) and keeps the first two.
pub fn top2_by_sort(values: &[f64]) -> Result<Top2> {
    if values.len() < 2 {
        return Err(Error::TooFewMaps { count: values.len() });
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    Ok(Top2 {
        primary: order[0],
        secondary: order[1],
    })
}

/// The largest pairwise `ρ` distance and a pair attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diameter {
    pub value: f64,
    pub pair: (usize, usize),
}

// In weighted coordinates w = (x, y, θz), ρ is the L1 distance, and
// |a| + |b| + |c| = max over sign vectors of (±a ± b ± c). Fixing the
// first sign leaves four patterns.
const SIGN_PATTERNS: [[f64; 3]; 4] = [
    [1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0],
    [1.0, -1.0, 1.0],
    [1.0, -1.0, -1.0],
];

/// Exact `ρ`-diameter in `O(N)`.
///
/// For each sign pattern the extreme projections give a candidate pair; the
/// result is the largest `ρ` among the four candidates, evaluated with
/// [`rho`] so it matches a pairwise scan bit for bit.
pub fn max_pairwise_distance(points: &[Point3], metric: &ScaledTaxicabMetric) -> Diameter {
    assert!(!points.is_empty(), "diameter of an empty set");
    let mut best = Diameter {
        value: 0.0,
        pair: (0, 0),
    };
    for signs in SIGN_PATTERNS {
        let (mut lo, mut hi) = ((f64::INFINITY, 0), (f64::NEG_INFINITY, 0));
        for (i, p) in points.iter().enumerate() {
            let w = metric.weighted(p);
            let s = signs[0] * w[0] + signs[1] * w[1] + signs[2] * w[2];
            if s < lo.0 {
                lo = (s, i);
            }
            if s > hi.0 {
                hi = (s, i);
            }
        }
        let (i, j) = (lo.1.min(hi.1), lo.1.max(hi.1));
        let value = metric.rho(&points[i], &points[j]);
        if value > best.value {
            best = Diameter {
                value,
                pair: (i, j),
            };
        }
    }
    best
}

/// Quadratic reference scan for [`max_pairwise_distance`].
pub fn max_pairwise_distance_brute(points: &[Point3], metric: &ScaledTaxicabMetric) -> Diameter {
    assert!(!points.is_empty(), "diameter of an empty set");
    let mut best = Diameter {
        value: 0.0,
        pair: (0, 0),
    };
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let value = metric.rho(&points[i], &points[j]);
            if value > best.value {
                best = Diameter {
                    value,
                    pair: (i, j),
                };
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiameterMethod {
    #[default]
    SignPattern,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusSolution {
    pub primary_index: usize,
    pub secondary_index: usize,
    /// `M`, the `ρ`-diameter of the fixed points.
    pub diameter: f64,
    pub radii: Vec<f64>,
}

/// Closed-form solution of the radius system for the given constants.
pub fn solve_radii(constants: &[f64], diameter: f64) -> Result<RadiusSolution> {
    let Top2 { primary, secondary } = top2_select(constants)?;
    let (c1, c2) = (constants[primary], constants[secondary]);
    let denom = 1.0 - c1 * c2;
    let radii = constants
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if i == primary {
                diameter * c * (1.0 + c2) / denom
            } else {
                diameter * c * (1.0 + c1) / denom
            }
        })
        .collect();
    Ok(RadiusSolution {
        primary_index: primary,
        secondary_index: secondary,
        diameter,
        radii,
    })
}

/// Largest relative residual of `ρ_i = c_i (M + max_{j≠i} ρ_j)` over all `i`.
pub fn equation_residual(constants: &[f64], diameter: f64, radii: &[f64]) -> f64 {
    let Top2 { primary, secondary } = top2_by_sort(radii).expect("at least two radii");
    radii
        .iter()
        .zip(constants)
        .enumerate()
        .map(|(i, (&r, &c))| {
            let others = if i == primary { radii[secondary] } else { radii[primary] };
            let rhs = c * (diameter + others);
            let scale = r.abs().max(rhs.abs());
            if scale == 0.0 {
                0.0
            } else {
                (r - rhs).abs() / scale
            }
        })
        .fold(0.0, f64::max)
}

pub fn cover_radii(system: &IfsSystem) -> Result<RadiusSolution> {
    cover_radii_with(system, DiameterMethod::SignPattern)
}

pub fn cover_radii_with(system: &IfsSystem, method: DiameterMethod) -> Result<RadiusSolution> {
    if system.len() < 2 {
        return Err(Error::TooFewMaps { count: system.len() });
    }
    let points = system.fixed_points();
    let diameter = match method {
        DiameterMethod::SignPattern => max_pairwise_distance(&points, &system.metric),
        DiameterMethod::BruteForce => max_pairwise_distance_brute(&points, &system.metric),
    };
    solve_radii(&system.constants(), diameter.value)
}

/// Closed `ρ`-ball, stored with its six vertices in the order
/// `+x, +y, +z, -x, -y, -z`. The z-vertices sit at distance `r / θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Octahedron {
    pub center: Point3,
    pub radius: f64,
    pub vertices: [Point3; 6],
}

impl Octahedron {
    pub fn new(center: Point3, radius: f64, theta: f64) -> Self {
        let Point3 { x, y, z } = center;
        let h = radius / theta;
        Self {
            center,
            radius,
            vertices: [
                Point3::new(x + radius, y, z),
                Point3::new(x, y + radius, z),
                Point3::new(x, y, z + h),
                Point3::new(x - radius, y, z),
                Point3::new(x, y - radius, z),
                Point3::new(x, y, z - h),
            ],
        }
    }

    /// `ρ(p, center) - radius`; non-positive inside.
    #[inline]
    pub fn excess(&self, p: &Point3, theta: f64) -> f64 {
        rho(theta, p, &self.center) - self.radius
    }

    #[inline]
    pub fn contains(&self, p: &Point3, theta: f64, slack: f64) -> bool {
        self.excess(p, theta) <= slack
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OctahedronCover {
    pub order: u32,
    pub metric: ScaledTaxicabMetric,
    pub solution: RadiusSolution,
    pub octahedra: Vec<Octahedron>,
}

impl OctahedronCover {
    pub fn theta(&self) -> f64 {
        self.metric.theta
    }

    pub fn len(&self) -> usize {
        self.octahedra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.octahedra.is_empty()
    }

    pub fn max_radius(&self) -> f64 {
        self.solution.radii.iter().copied().fold(0.0, f64::max)
    }

    /// Linear scan over all octahedra. See [`CoverIndex`] for large covers.
    pub fn contains(&self, p: &Point3, slack: f64) -> bool {
        let theta = self.theta();
        self.octahedra.iter().any(|o| o.contains(p, theta, slack))
    }

    /// Smallest `ρ(p, center) - radius` over all octahedra.
    pub fn min_excess(&self, p: &Point3) -> f64 {
        let theta = self.theta();
        self.octahedra
            .iter()
            .map(|o| o.excess(p, theta))
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn build_cover(system: &IfsSystem) -> Result<OctahedronCover> {
    let solution = cover_radii(system)?;
    let theta = system.metric.theta;
    let octahedra = system
        .maps
        .iter()
        .zip(&solution.radii)
        .map(|(map, &r)| Octahedron::new(map.fixed_point, r, theta))
        .collect();
    Ok(OctahedronCover {
        order: system.order,
        metric: system.metric,
        solution,
        octahedra,
    })
}

/// Uniform grid over the xy-footprints of a cover's octahedra, for fast
/// membership queries.
#[derive(Debug, Clone)]
pub struct CoverIndex<'a> {
    cover: &'a OctahedronCover,
    origin: (f64, f64),
    cell: f64,
    dims: (usize, usize),
    offsets: Vec<usize>,
    items: Vec<u32>,
}

impl<'a> CoverIndex<'a> {
    pub fn new(cover: &'a OctahedronCover) -> Self {
        let octs = &cover.octahedra;
        let (mut x0, mut y0, mut x1, mut y1) = (
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        );
        let mut radius_sum = 0.0;
        for o in octs {
            x0 = x0.min(o.center.x - o.radius);
            y0 = y0.min(o.center.y - o.radius);
            x1 = x1.max(o.center.x + o.radius);
            y1 = y1.max(o.center.y + o.radius);
            radius_sum += o.radius;
        }
        let width = (x1 - x0).max(f64::MIN_POSITIVE);
        let height = (y1 - y0).max(f64::MIN_POSITIVE);
        let max_cells = 4 * octs.len().max(1) + 16;
        let mut cell = (radius_sum / octs.len().max(1) as f64).max(f64::MIN_POSITIVE);
        while (width / cell).ceil() * (height / cell).ceil() > max_cells as f64 {
            cell *= 1.5;
        }
        let dims = (
            ((width / cell).ceil() as usize).max(1),
            ((height / cell).ceil() as usize).max(1),
        );

        let mut index = Self {
            cover,
            origin: (x0, y0),
            cell,
            dims,
            offsets: Vec::new(),
            items: Vec::new(),
        };
        let ranges: Vec<_> = octs
            .iter()
            .map(|o| {
                index.cell_range(
                    o.center.x - o.radius,
                    o.center.x + o.radius,
                    o.center.y - o.radius,
                    o.center.y + o.radius,
                )
            })
            .collect();
        let mut counts = vec![0usize; dims.0 * dims.1 + 1];
        for r in ranges.iter().flatten() {
            for (i, j) in r.cells() {
                counts[i * dims.1 + j + 1] += 1;
            }
        }
        for k in 1..counts.len() {
            counts[k] += counts[k - 1];
        }
        let mut cursor = counts.clone();
        let mut items = vec![0u32; counts[counts.len() - 1]];
        for (id, r) in ranges.iter().enumerate() {
            if let Some(r) = r {
                for (i, j) in r.cells() {
                    let slot = &mut cursor[i * dims.1 + j];
                    items[*slot] = id as u32;
                    *slot += 1;
                }
            }
        }
        // nearest footprints first, so a covered point usually stops early
        for i in 0..dims.0 {
            for j in 0..dims.1 {
                let cell_id = i * dims.1 + j;
                let cx = x0 + (i as f64 + 0.5) * cell;
                let cy = y0 + (j as f64 + 0.5) * cell;
                items[counts[cell_id]..counts[cell_id + 1]].sort_by(|&a, &b| {
                    let da = octs[a as usize].center;
                    let db = octs[b as usize].center;
                    ((da.x - cx).abs() + (da.y - cy).abs()).total_cmp(&((db.x - cx).abs() + (db.y - cy).abs()))
                });
            }
        }
        index.offsets = counts;
        index.items = items;
        index
    }

    fn cell_range(&self, x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Option<CellRange> {
        let (nx, ny) = self.dims;
        let fx = (x_lo - self.origin.0) / self.cell;
        let tx = (x_hi - self.origin.0) / self.cell;
        let fy = (y_lo - self.origin.1) / self.cell;
        let ty = (y_hi - self.origin.1) / self.cell;
        if tx < 0.0 || ty < 0.0 || fx >= nx as f64 || fy >= ny as f64 {
            return None;
        }
        let clamp = |v: f64, n: usize| (v.floor().max(0.0) as usize).min(n - 1);
        Some(CellRange {
            x: (clamp(fx, nx), clamp(tx, nx)),
            y: (clamp(fy, ny), clamp(ty, ny)),
        })
    }

    /// Same answer as [`OctahedronCover::contains`].
    pub fn contains(&self, p: &Point3, slack: f64) -> bool {
        let theta = self.cover.theta();
        let Some(range) = self.cell_range(p.x - slack, p.x + slack, p.y - slack, p.y + slack) else {
            return false;
        };
        range.cells().any(|(i, j)| {
            let cell = i * self.dims.1 + j;
            self.items[self.offsets[cell]..self.offsets[cell + 1]]
                .iter()
                .any(|&id| self.cover.octahedra[id as usize].contains(p, theta, slack))
        })
    }

    pub fn cover(&self) -> &OctahedronCover {
        self.cover
    }
}

#[derive(Debug, Clone, Copy)]
struct CellRange {
    x: (usize, usize),
    y: (usize, usize),
}

impl CellRange {
    fn cells(self) -> impl Iterator<Item = (usize, usize)> {
        (self.x.0..=self.x.1).flat_map(move |i| (self.y.0..=self.y.1).map(move |j| (i, j)))
    }
}

/// Outcome of testing a point set against a cover.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContainmentSummary {
    pub points_tested: usize,
    pub failures: usize,
    /// Slack allowed per point.
    pub slack: f64,
    /// Largest positive distance outside the cover among the tested points
    /// (0 when every point is strictly covered).
    pub max_slack_used: f64,
}

impl ContainmentSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn check_containment(index: &CoverIndex<'_>, points: &[Point3], slack: f64) -> ContainmentSummary {
    use rayon::prelude::*;

    let (failures, max_slack_used) = points
        .par_iter()
        .map(|p| {
            if index.contains(p, 0.0) {
                (0, 0.0)
            } else {
                let excess = index.cover().min_excess(p).max(0.0);
                (usize::from(excess > slack), excess)
            }
        })
        .reduce(|| (0, 0.0), |a, b| (a.0 + b.0, a.1.max(b.1)));
    ContainmentSummary {
        points_tested: points.len(),
        failures,
        slack,
        max_slack_used,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn metric(theta: f64) -> ScaledTaxicabMetric {
        ScaledTaxicabMetric {
            theta,
            theta1: theta,
            theta2: theta,
            delta: 1.0,
        }
    }

    #[test]
    fn top2_examples() {
        let t = top2_select(&[0.7, 0.5, 0.6, 0.6]).unwrap();
        assert_eq!((t.primary, t.secondary), (0, 2));
        let t = top2_select(&[0.3, 0.3]).unwrap();
        assert_eq!((t.primary, t.secondary), (0, 1));
        // second maximum arriving between the two running maxima
        let t = top2_select(&[0.9, 0.1, 0.5]).unwrap();
        assert_eq!((t.primary, t.secondary), (0, 2));
        let t = top2_select(&[0.1, 0.9, 0.5, 0.95]).unwrap();
        assert_eq!((t.primary, t.secondary), (3, 1));
        assert!(matches!(top2_select(&[0.3]), Err(Error::TooFewMaps { count: 1 })));
    }

    #[test]
    fn top2_matches_sort_on_random_arrays() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.random_range(2..60);
            // coarse values force plenty of ties
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(0..8) as f64 / 8.0).collect();
            let a = top2_select(&v).unwrap();
            let b = top2_by_sort(&v).unwrap();
            assert_eq!(a, b, "{v:?}");
        }
    }

    #[test]
    fn top2_comparison_counts() {
        let v: Vec<f64> = (0..1000).map(f64::from).collect();
        let (t, counts) = top2_select_counted(&v).unwrap();
        assert_eq!((t.primary, t.secondary), (999, 998));
        assert_eq!(counts.primary, 999);
        assert!(counts.secondary <= 999);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 1_000_000;
        let v: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let (t, counts) = top2_select_counted(&v).unwrap();
        assert_eq!(t, top2_by_sort(&v).unwrap());
        assert_eq!(counts.primary, n - 1);
        assert!(counts.secondary < n);
    }

    #[test]
    fn diameter_of_example1_fixed_points() {
        let theta = 0.8;
        let pts = [
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(0.0, 200.0, 20.0),
            Point3::new(200.0, 0.0, -20.0),
            Point3::new(200.0, 200.0, 0.0),
        ];
        let d = max_pairwise_distance(&pts, &metric(theta));
        assert_eq!(d.value, 400.0 + 40.0 * theta);
        assert_eq!(d.pair, (1, 2));
        assert_eq!(d, max_pairwise_distance_brute(&pts, &metric(theta)));
        assert_eq!(max_pairwise_distance(&pts[..1], &metric(theta)).value, 0.0);
    }

    #[test]
    fn diameter_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.random_range(1..300);
            let m = metric(rng.random_range(0.01..1.0));
            let pts: Vec<Point3> = (0..n)
                .map(|_| {
                    Point3::new(
                        rng.random_range(-100.0..100.0),
                        rng.random_range(-100.0..100.0),
                        rng.random_range(-100.0..100.0),
                    )
                })
                .collect();
            assert_eq!(
                max_pairwise_distance(&pts, &m).value,
                max_pairwise_distance_brute(&pts, &m).value
            );
        }
    }

    #[test]
    fn radii_examples() {
        let s = solve_radii(&[0.5, 0.5], 400.0).unwrap();
        assert_eq!(s.radii, vec![400.0, 400.0]);

        let c = 0.6;
        let s = solve_radii(&[c; 7], 10.0).unwrap();
        for r in &s.radii {
            assert!((r - 10.0 * c / (1.0 - c)).abs() < 1e-12);
        }
    }

    #[test]
    fn radii_solve_the_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.random_range(2..50);
            let c: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..0.99)).collect();
            let m = rng.random_range(0.0..1000.0);
            let s = solve_radii(&c, m).unwrap();
            assert!(equation_residual(&c, m, &s.radii) <= 1e-12);
            let (p, q) = (s.primary_index, s.secondary_index);
            for (i, &r) in s.radii.iter().enumerate() {
                if i != p {
                    assert!(s.radii[p] >= s.radii[q] && s.radii[q] >= r);
                }
            }
        }
    }

    #[test]
    fn octahedron_vertices() {
        let o = Octahedron::new(Point3::default(), 1.0, 0.5);
        assert_eq!(
            o.vertices,
            [
                Point3::new(1.0, 0.0, 0.0),
                Point3::new(0.0, 1.0, 0.0),
                Point3::new(0.0, 0.0, 2.0),
                Point3::new(-1.0, 0.0, 0.0),
                Point3::new(0.0, -1.0, 0.0),
                Point3::new(0.0, 0.0, -2.0),
            ]
        );
        for v in o.vertices {
            assert!(o.contains(&v, 0.5, 0.0));
        }
        assert!(!o.contains(&Point3::new(0.0, 0.0, 2.1), 0.5, 0.0));
    }

    fn random_cover(rng: &mut ChaCha8Rng, n: usize) -> OctahedronCover {
        let theta = 0.7;
        let octahedra: Vec<_> = (0..n)
            .map(|_| {
                Octahedron::new(
                    Point3::new(
                        rng.random_range(0.0..100.0),
                        rng.random_range(0.0..100.0),
                        rng.random_range(-10.0..10.0),
                    ),
                    rng.random_range(0.1..8.0),
                    theta,
                )
            })
            .collect();
        OctahedronCover {
            order: 1,
            metric: metric(theta),
            solution: RadiusSolution {
                primary_index: 0,
                secondary_index: 1,
                diameter: 0.0,
                radii: octahedra.iter().map(|o| o.radius).collect(),
            },
            octahedra,
        }
    }

    #[test]
    fn index_agrees_with_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let cover = random_cover(&mut rng, 400);
        let index = CoverIndex::new(&cover);
        for _ in 0..5000 {
            let p = Point3::new(
                rng.random_range(-10.0..110.0),
                rng.random_range(-10.0..110.0),
                rng.random_range(-15.0..15.0),
            );
            for slack in [0.0, 0.5] {
                assert_eq!(index.contains(&p, slack), cover.contains(&p, slack), "{p:?}");
            }
        }
        for o in &cover.octahedra {
            assert!(index.contains(&o.center, 0.0));
        }
    }

    #[test]
    fn exterior_point_is_rejected() {
        let cover = {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            random_cover(&mut rng, 1)
        };
        let o = cover.octahedra[0];
        let slack = 1e-3;
        let p = Point3::new(o.center.x + o.radius + 2.0 * slack, o.center.y, o.center.z);
        assert!(!cover.contains(&p, slack));
        assert!(!CoverIndex::new(&cover).contains(&p, slack));
        let summary = check_containment(&CoverIndex::new(&cover), &[p, o.center], slack);
        assert_eq!(summary.failures, 1);
        assert!((summary.max_slack_used - 2.0 * slack).abs() < 1e-9);
    }
}
