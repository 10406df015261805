//! Command-line surface for the stabwall engine: deterministic JSON/CSV/SVG
//! artifacts for walls, scans, charges, duals, Kronecker checks, and figure
//! presets. Identical job specifications produce byte-identical artifacts
//! (rationals travel as exact strings; floats appear only in SVG
//! coordinates, rounded to six digits).

pub mod config;
pub mod jobs;
pub mod svg;

pub use jobs::{run, CliError, JobSpec, OutputFormat};

/// Exit code for input/validation errors.
pub const EXIT_INPUT: i32 = 2;
/// Exit code for internal invariant violations.
pub const EXIT_INTERNAL: i32 = 3;
