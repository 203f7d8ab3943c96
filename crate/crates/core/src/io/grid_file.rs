//! Grid input files: a TOML document with the arrays `x`, `y`, `z` and `g`.
//!
//! ```toml
//! x = [0.0, 100.0, 200.0]
//! y = [0.0, 100.0, 200.0]
//! z = [[0.0, 10.0, 20.0], [-10.0, -30.0, 10.0], [-20.0, -10.0, 0.0]]
//! g = [[0.7, 0.6], [0.5, 0.6]]
//! ```
//!
//! `z[k][l]` is the height over `(x[k], y[l])`, so rows follow x; `g[k-1][l-1]`
//! belongs to the map onto cell `(k, l)`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{DataGrid, GridData};

pub fn parse_grid(path: &Path) -> Result<DataGrid> {
    read_grid_data(path)?.validate()
}

pub fn read_grid_data(path: &Path) -> Result<GridData> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_grid_data(&text, path)
}

/// Parses without validating; `origin` only labels error messages.
pub fn parse_grid_data(text: &str, origin: &Path) -> Result<GridData> {
    toml::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn serialize_grid(data: &GridData) -> String {
    toml::to_string(data).expect("grid data is always representable")
}
