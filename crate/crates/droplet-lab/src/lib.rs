//! Scenario runner for `droplet-core`: config files, parameter sweeps and
//! deterministic CSV/JSON output.

// `!(x >= 1.0)` style guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
mod error;
pub mod scenario;
pub mod table;

pub use config::{parse_config, Format, Mode, ScenarioConfig};
pub use error::{LabError, Result};
pub use scenario::{run, Scenario};
pub use table::{emit, Cell, Column, ResultTable};

use std::path::Path;

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}
