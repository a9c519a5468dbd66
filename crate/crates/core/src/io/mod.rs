//! File formats, reports, SVG output and the command-line front end.

pub mod cli;
pub mod fan_file;
pub mod report;
pub mod semigroup_file;
pub mod svg;

pub use cli::{run_cli, EXIT_DOMAIN, EXIT_OK, EXIT_ORACLE, EXIT_USAGE};
pub use fan_file::{parse_fan_file, parse_fan_str, read_fan_file, FanFile};
pub use report::{ReportDocument, ResultSection, REPORT_SCHEMA, TOOL_VERSION};
pub use semigroup_file::{parse_element, parse_semigroup_str, read_semigroup_file};
pub use svg::{render_fan_svg, render_picard_slice_svg, PicardSlice};
