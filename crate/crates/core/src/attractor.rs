//! Sampling the attractor: deterministic iteration of the Hutchinson
//! operator `K ↦ ⋃ F_i(K)` and the chaos game.

use std::collections::HashMap;

use indexmap::IndexMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::{rho, Point3};
use crate::grid::DataGrid;
use crate::ifs::IfsMap;

pub const DEFAULT_POINT_CAP: usize = 1_000_000;
/// Deduplication grid, relative to the data scale.
pub const DEFAULT_RELATIVE_RESOLUTION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMethod {
    Deterministic,
    ChaosGame,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Point3>,
    /// Hutchinson iterations applied, or chaos-game steps taken.
    pub generation: usize,
    pub method: SamplingMethod,
    /// Set once any step dropped points to respect the cap.
    pub truncated: bool,
}

impl PointCloud {
    pub fn seed(points: Vec<Point3>) -> Self {
        Self {
            points,
            generation: 0,
            method: SamplingMethod::Deterministic,
            truncated: false,
        }
    }

    /// The `(n+1)(m+1)` data points, which lie on the surface.
    pub fn from_grid(grid: &DataGrid) -> Self {
        Self::seed(grid.nodes())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingConfig {
    /// Points falling in the same cube of this edge length are merged.
    pub resolution: f64,
    /// Maximum number of points kept after each step.
    pub cap: usize,
}

impl SamplingConfig {
    pub fn for_grid(grid: &DataGrid) -> Self {
        Self {
            resolution: DEFAULT_RELATIVE_RESOLUTION * grid.scale(),
            cap: DEFAULT_POINT_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }
}

type CellKey = (i64, i64, i64);

/// Fraction of a cell near each face within which the neighbouring cell is
/// also probed, so that copies of one point split by rounding still merge.
const BOUNDARY_BAND: f64 = 1e-3;

#[derive(Clone, Copy)]
struct Cell {
    key: CellKey,
    // -1, 0 or +1 per axis: neighbour to probe, if any
    near: [i64; 3],
}

fn locate(p: &Point3, resolution: f64) -> Cell {
    let mut key = [0i64; 3];
    let mut near = [0i64; 3];
    for (axis, v) in [p.x, p.y, p.z].into_iter().enumerate() {
        let scaled = v / resolution;
        let base = scaled.floor();
        let frac = scaled - base;
        key[axis] = base as i64;
        near[axis] = if frac < BOUNDARY_BAND {
            -1
        } else if frac > 1.0 - BOUNDARY_BAND {
            1
        } else {
            0
        };
    }
    Cell {
        key: (key[0], key[1], key[2]),
        near,
    }
}

impl Cell {
    /// The own cell first, then the probed neighbours.
    fn candidates(self) -> impl Iterator<Item = CellKey> {
        let (x, y, z) = self.key;
        let [nx, ny, nz] = self.near;
        (0..8u8)
            .filter(move |mask| {
                (mask & 1 == 0 || nx != 0) && (mask & 2 == 0 || ny != 0) && (mask & 4 == 0 || nz != 0)
            })
            .map(move |mask| {
                (
                    x + if mask & 1 != 0 { nx } else { 0 },
                    y + if mask & 2 != 0 { ny } else { 0 },
                    z + if mask & 4 != 0 { nz } else { 0 },
                )
            })
    }

    fn find<V>(self, map: &HashMap<CellKey, V>) -> Option<&V> {
        self.candidates().find_map(|k| map.get(&k))
    }

    fn find_in(self, map: &IndexMap<CellKey, Point3>) -> bool {
        self.candidates().any(|k| map.contains_key(&k))
    }
}

const CHUNK: usize = 4096;

/// One application of the Hutchinson operator to `cloud`.
///
/// Images are deduplicated on a grid of `config.resolution`: an image is
/// dropped when its cell, or a neighbouring cell it nearly touches, is taken. The output
/// lists first the images that coincide with an input point, in input
/// order, then the remaining images in generation order (input-major, map
/// minor). When more than `config.cap` points remain the tail is dropped
/// and `truncated` is set. Keeping old points ahead of new ones means a
/// seed contained in its own image (such as the data points) survives
/// truncation intact.
pub fn hutchinson_step(maps: &[IfsMap], cloud: &PointCloud, config: &SamplingConfig) -> PointCloud {
    assert!(!cloud.is_empty(), "Hutchinson step on an empty cloud");
    let resolution = config.resolution;

    let mut input_slots: HashMap<CellKey, usize> = HashMap::with_capacity(cloud.len());
    for (i, p) in cloud.points.iter().enumerate() {
        let cell = locate(p, resolution);
        if cell.find(&input_slots).is_none() {
            input_slots.insert(cell.key, i);
        }
    }
    let mut retained: Vec<Option<Point3>> = vec![None; cloud.len()];
    let mut fresh: IndexMap<CellKey, Point3> = IndexMap::new();
    let mut truncated = cloud.truncated;

    for chunk in cloud.points.chunks(CHUNK) {
        let images: Vec<Point3> = chunk
            .par_iter()
            .flat_map_iter(|u| maps.iter().map(move |f| f.apply(u)))
            .collect();
        for image in images {
            let cell = locate(&image, resolution);
            if let Some(&slot) = cell.find(&input_slots) {
                retained[slot].get_or_insert(image);
            } else if !cell.find_in(&fresh) {
                if fresh.len() < config.cap {
                    fresh.insert(cell.key, image);
                } else {
                    truncated = true;
                }
            }
        }
    }

    let mut points: Vec<Point3> = retained.into_iter().flatten().collect();
    if points.len() > config.cap {
        points.truncate(config.cap);
        truncated = true;
    }
    let room = config.cap - points.len();
    if fresh.len() > room {
        truncated = true;
    }
    points.extend(fresh.into_values().take(room));

    PointCloud {
        points,
        generation: cloud.generation + 1,
        method: SamplingMethod::Deterministic,
        truncated,
    }
}

/// `iterations` Hutchinson steps starting from `seed`.
pub fn sample_attractor(
    maps: &[IfsMap],
    iterations: usize,
    seed: PointCloud,
    config: &SamplingConfig,
) -> PointCloud {
    (0..iterations).fold(seed, |cloud, _| hutchinson_step(maps, &cloud, config))
}

/// `c_max^iterations · reference_diameter`: how far `iterations` Hutchinson
/// steps can leave a seed from the attractor when the seed starts within
/// `reference_diameter` of it.
pub fn approximation_bound(max_contraction: f64, iterations: usize, reference_diameter: f64) -> f64 {
    max_contraction.powi(iterations as i32) * reference_diameter
}

/// Random iteration `u ← F_i(u)` with `i` uniform over the maps, starting at
/// `start`. The first `burn_in` points are discarded, so `steps - burn_in`
/// points are returned. The same seed always gives the same cloud.
pub fn chaos_game(maps: &[IfsMap], start: Point3, steps: usize, burn_in: usize, rng_seed: u64) -> PointCloud {
    assert!(steps > burn_in, "chaos game needs steps > burn_in");
    assert!(!maps.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut u = start;
    let mut points = Vec::with_capacity(steps - burn_in);
    for step in 0..steps {
        u = maps[rng.random_range(0..maps.len())].apply(&u);
        if step >= burn_in {
            points.push(u);
        }
    }
    PointCloud {
        points,
        generation: steps,
        method: SamplingMethod::ChaosGame,
        truncated: false,
    }
}

/// Hausdorff distance in `ρ` between two nonempty point sets (quadratic).
pub fn hausdorff_distance(a: &[Point3], b: &[Point3], theta: f64) -> f64 {
    directed_hausdorff(a, b, theta).max(directed_hausdorff(b, a, theta))
}

/// `max_{p ∈ from} min_{q ∈ to} ρ(p, q)`.
pub fn directed_hausdorff(from: &[Point3], to: &[Point3], theta: f64) -> f64 {
    from.par_iter()
        .map(|p| to.iter().map(|q| rho(theta, p, q)).fold(f64::INFINITY, f64::min))
        .reduce(|| 0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::tests::example1;
    use crate::ifs::IfsSystem;

    fn setup() -> (DataGrid, IfsSystem) {
        let grid = example1().validate().unwrap();
        let system = IfsSystem::from_grid(&grid).unwrap();
        (grid, system)
    }

    #[test]
    fn fixed_points_are_invariant() {
        let (grid, system) = setup();
        let cfg = SamplingConfig::for_grid(&grid);
        let seed = PointCloud::seed(system.fixed_points());
        let next = hutchinson_step(&system.maps, &seed, &cfg);
        for (a, b) in seed.points.iter().zip(&next.points) {
            assert!(a.max_abs_diff(b) <= cfg.resolution);
        }
        assert_eq!(next.generation, 1);
    }

    #[test]
    fn corners_map_to_the_data_nodes() {
        let (grid, system) = setup();
        let cfg = SamplingConfig::for_grid(&grid);
        let corners = PointCloud::seed(vec![
            grid.node(0, 0),
            grid.node(2, 0),
            grid.node(0, 2),
            grid.node(2, 2),
        ]);
        let next = hutchinson_step(&system.maps, &corners, &cfg);
        // 16 images, 9 distinct: exactly the data nodes
        assert_eq!(next.len(), 9);
        assert!(!next.truncated);
        for node in grid.nodes() {
            assert!(next.points.iter().any(|p| p.max_abs_diff(&node) <= cfg.resolution));
        }
        for p in &next.points {
            assert!(system.domain.contains_xy(p));
        }
    }

    #[test]
    fn zero_iterations_keep_the_seed() {
        let (grid, system) = setup();
        let seed = PointCloud::from_grid(&grid);
        let out = sample_attractor(&system.maps, 0, seed.clone(), &SamplingConfig::for_grid(&grid));
        assert_eq!(out, seed);
    }

    #[test]
    fn eight_iterations_fill_the_dyadic_lattice() {
        let (grid, system) = setup();
        let cfg = SamplingConfig::for_grid(&grid);
        let cloud = sample_attractor(&system.maps, 8, PointCloud::from_grid(&grid), &cfg);
        // node spacing halves every step, starting from 100
        let side = 513;
        assert_eq!(cloud.len(), side * side);
        assert!(!cloud.truncated);
        let step = 200.0 / 512.0;
        let mut seen = vec![false; side * side];
        for p in &cloud.points {
            let (i, j) = ((p.x / step).round(), (p.y / step).round());
            assert!((p.x - i * step).abs() < 1e-9 && (p.y - j * step).abs() < 1e-9);
            seen[i as usize * side + j as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn truncation_keeps_the_seed() {
        let (grid, system) = setup();
        let cfg = SamplingConfig::for_grid(&grid).with_cap(40);
        let seed = PointCloud::from_grid(&grid);
        let cloud = sample_attractor(&system.maps, 4, seed.clone(), &cfg);
        assert!(cloud.truncated);
        assert_eq!(cloud.len(), 40);
        for (a, b) in seed.points.iter().zip(&cloud.points) {
            assert!(a.max_abs_diff(b) <= cfg.resolution);
        }
    }

    #[test]
    fn chaos_game_is_reproducible() {
        let (grid, system) = setup();
        let a = chaos_game(&system.maps, grid.node(0, 0), 500, 10, 42);
        let b = chaos_game(&system.maps, grid.node(0, 0), 500, 10, 42);
        assert_eq!(a, b);
        assert_eq!(a.len(), 490);
        let c = chaos_game(&system.maps, grid.node(0, 0), 500, 10, 43);
        assert_ne!(a.points, c.points);
        assert_eq!(chaos_game(&system.maps, grid.node(0, 0), 11, 10, 0).len(), 1);
        assert!(a.points.iter().all(|p| system.domain.contains_xy(p)));
    }

    #[test]
    fn hausdorff_basics() {
        let a = [Point3::new(0.0, 0.0, 0.0)];
        let b = [Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 1.0, 2.0)];
        assert_eq!(hausdorff_distance(&a, &b, 0.5), 3.0);
        assert_eq!(hausdorff_distance(&b, &b, 0.5), 0.0);
    }
}
