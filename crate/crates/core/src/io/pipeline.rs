//! Grid in, cover and samples out.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::attractor::{chaos_game, sample_attractor, PointCloud, SamplingConfig, DEFAULT_POINT_CAP};
use crate::composition::{compose_system, ConstantRule, DEFAULT_MAP_CAP};
use crate::cover::{build_cover, check_containment, ContainmentSummary, CoverIndex};
use crate::error::{Error, Result};
use crate::grid::DataGrid;
use crate::ifs::IfsSystem;
use crate::io::mesh::{write_obj, write_xyz};
use crate::io::report::CoverReport;
use crate::io::write_atomic;

pub const REPORT_FILE: &str = "report.json";
pub const MESH_FILE: &str = "cover.obj";
pub const CLOUD_FILE: &str = "surface.xyz";
pub const SUMMARY_FILE: &str = "containment.json";

/// Containment slack relative to the data scale.
pub const DEFAULT_RELATIVE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub order: u32,
    pub iterations: usize,
    pub map_cap: usize,
    pub point_cap: usize,
    /// Chaos-game steps added to the containment check; 0 disables it.
    pub chaos_steps: usize,
    pub chaos_burn_in: usize,
    pub chaos_seed: u64,
    pub relative_slack: f64,
    pub rule: ConstantRule,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            order: 1,
            iterations: 8,
            map_cap: DEFAULT_MAP_CAP,
            point_cap: DEFAULT_POINT_CAP,
            chaos_steps: 0,
            chaos_burn_in: 0,
            chaos_seed: 0,
            relative_slack: DEFAULT_RELATIVE_SLACK,
            rule: ConstantRule::Product,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContainmentFile {
    pub order: u32,
    pub octahedra: usize,
    pub deterministic_points: usize,
    pub chaos_points: usize,
    pub truncated: bool,
    pub passed: bool,
    pub summary: ContainmentSummary,
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub report: CoverReport,
    pub containment: ContainmentSummary,
    pub report_path: PathBuf,
    pub mesh_path: PathBuf,
    pub cloud_path: PathBuf,
    pub summary_path: PathBuf,
}

impl PipelineOutcome {
    pub fn passed(&self) -> bool {
        self.containment.passed()
    }
}

/// Builds the order-`p` cover, samples the surface, checks that every
/// sample lies in the cover, and writes the report, the mesh, the point
/// cloud and the containment summary into `out_dir`.
impl PipelineOptions {
    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::InvalidOption {
                name: "order",
                detail: "must be at least 1".into(),
            });
        }
        if !(self.relative_slack.is_finite() && self.relative_slack >= 0.0) {
            return Err(Error::InvalidOption {
                name: "slack",
                detail: format!("{} is not a finite non-negative number", self.relative_slack),
            });
        }
        if self.chaos_steps > 0 && self.chaos_steps <= self.chaos_burn_in {
            return Err(Error::InvalidOption {
                name: "chaos_steps",
                detail: "must exceed the burn-in".into(),
            });
        }
        Ok(())
    }
}

pub fn run_pipeline(grid: &DataGrid, options: &PipelineOptions, out_dir: &Path) -> Result<PipelineOutcome> {
    options.validate()?;
    let base = IfsSystem::from_grid(grid)?;
    let system = compose_system(&base, options.order, options.map_cap, options.rule)?;
    let cover = build_cover(&system)?;

    let config = SamplingConfig::for_grid(grid).with_cap(options.point_cap);
    let cloud = sample_attractor(&base.maps, options.iterations, PointCloud::from_grid(grid), &config);
    let chaos = (options.chaos_steps > 0).then(|| {
        chaos_game(
            &base.maps,
            grid.node(0, 0),
            options.chaos_steps,
            options.chaos_burn_in,
            options.chaos_seed,
        )
    });

    let slack = options.relative_slack * grid.scale();
    let index = CoverIndex::new(&cover);
    let mut points = cloud.points.clone();
    if let Some(c) = &chaos {
        points.extend_from_slice(&c.points);
    }
    let containment = check_containment(&index, &points, slack);
    let report = CoverReport::new(&system, &cover, Some(containment));

    let report_path = out_dir.join(REPORT_FILE);
    let mesh_path = out_dir.join(MESH_FILE);
    let cloud_path = out_dir.join(CLOUD_FILE);
    let summary_path = out_dir.join(SUMMARY_FILE);

    write_atomic(&report_path, |w| report.write_json(w).map_err(std::io::Error::other))?;
    write_atomic(&mesh_path, |w| write_obj(&cover, w))?;
    write_atomic(&cloud_path, |w| write_xyz(&cloud.points, w))?;
    let summary = ContainmentFile {
        order: cover.order,
        octahedra: cover.len(),
        deterministic_points: cloud.len(),
        chaos_points: chaos.as_ref().map_or(0, PointCloud::len),
        truncated: cloud.truncated,
        passed: containment.passed(),
        summary: containment,
    };
    write_atomic(&summary_path, |w| {
        serde_json::to_writer_pretty(&mut *w, &summary).map_err(std::io::Error::other)?;
        writeln!(w)
    })?;

    Ok(PipelineOutcome {
        report,
        containment,
        report_path,
        mesh_path,
        cloud_path,
        summary_path,
    })
}
