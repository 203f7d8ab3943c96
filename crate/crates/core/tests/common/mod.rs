#![allow(dead_code)]

use std::path::PathBuf;

use octacover::io::grid_file::parse_grid;
use octacover::DataGrid;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn example1() -> DataGrid {
    parse_grid(&fixture_path("example1.grid")).expect("example1 fixture")
}

pub fn example2() -> DataGrid {
    parse_grid(&fixture_path("example2.grid")).expect("example2 fixture")
}

pub fn assert_rel(actual: f64, expected: f64, rel: f64) {
    let tol = rel * expected.abs().max(1.0);
    assert!(
        (actual - expected).abs() <= tol,
        "{actual} vs {expected} (tolerance {tol:e})"
    );
}
