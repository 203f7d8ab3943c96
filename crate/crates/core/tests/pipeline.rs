mod common;

use std::fs;

use common::{example1, example2};
use octacover::io::mesh::read_obj_vertices;
use octacover::io::pipeline::{run_pipeline, ContainmentFile, PipelineOptions};
use octacover::io::report::CoverReport;
use octacover::Error;

fn small_options(order: u32) -> PipelineOptions {
    PipelineOptions {
        order,
        iterations: 4,
        chaos_steps: 2_000,
        ..PipelineOptions::default()
    }
}

#[test]
fn order_one_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let outcome = run_pipeline(&example1(), &small_options(1), dir.path()).unwrap();
    assert!(outcome.passed());
    assert_eq!(outcome.report.map_count, 4);

    let mesh = fs::read_to_string(&outcome.mesh_path).unwrap();
    assert_eq!(mesh.lines().filter(|l| l.starts_with("f ")).count(), 32);
    assert_eq!(mesh.lines().filter(|l| l.starts_with("o ")).count(), 4);

    let text = fs::read_to_string(&outcome.report_path).unwrap();
    let report = CoverReport::from_json(&text).unwrap();
    report.check_consistency().unwrap();
    assert_eq!(report.order, 1);
    assert_eq!(report.maps.len(), 4);

    let vertices = read_obj_vertices(&mesh);
    let expected: Vec<_> = report.maps.iter().flat_map(|m| m.vertices).collect();
    assert_eq!(vertices.len(), expected.len());
    for (v, e) in vertices.iter().zip(&expected) {
        assert!(v.max_abs_diff(e) <= 1e-12 * 200.0);
    }

    let summary: ContainmentFile = serde_json::from_str(&fs::read_to_string(&outcome.summary_path).unwrap()).unwrap();
    assert!(summary.passed);
    assert_eq!(summary.chaos_points, 2_000);
    assert_eq!(summary.summary.failures, 0);

    let cloud = fs::read_to_string(&outcome.cloud_path).unwrap();
    assert_eq!(cloud.lines().count(), summary.deterministic_points);
}

#[test]
fn composed_order_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let outcome = run_pipeline(&example2(), &small_options(2), dir.path()).unwrap();
    assert!(outcome.passed());
    assert_eq!(outcome.report.map_count, 81);
    let report = CoverReport::from_json(&fs::read_to_string(&outcome.report_path).unwrap()).unwrap();
    report.check_consistency().unwrap();
    assert!(report.maps.iter().all(|m| m.factors.len() == 2));
}

#[test]
fn rejects_oversized_system_before_writing() {
    let dir = tempfile::tempdir().unwrap();
    let options = PipelineOptions {
        map_cap: 63,
        ..small_options(3)
    };
    assert!(matches!(
        run_pipeline(&example1(), &options, dir.path()),
        Err(Error::SystemTooLarge { requested: 64, cap: 63 })
    ));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn rejects_bad_options() {
    let dir = tempfile::tempdir().unwrap();
    for options in [
        PipelineOptions {
            relative_slack: -1.0,
            ..small_options(1)
        },
        PipelineOptions {
            relative_slack: f64::NAN,
            ..small_options(1)
        },
        PipelineOptions {
            order: 0,
            ..small_options(1)
        },
        PipelineOptions {
            chaos_burn_in: 5_000,
            ..small_options(1)
        },
    ] {
        assert!(matches!(
            run_pipeline(&example1(), &options, dir.path()),
            Err(Error::InvalidOption { .. })
        ));
    }
}
