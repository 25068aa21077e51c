//! Benchmark sweeps, resource estimates, image segmentation and file formats.

mod pgm;
mod record;
mod resources;
mod segment;
mod sweep;

pub use pgm::{read_pgm, read_pgm_file, write_mask, write_mask_file, GrayImage};
pub use record::{
    emit_csv, emit_json, parse_csv, parse_json, relative_error, BenchmarkRecord, CSV_HEADER,
};
pub use resources::{resource_estimate, Algorithm, ResourceEstimate};
pub use segment::{segment_image, SegmentSummary, MAX_ORACLE_PIXELS, MAX_SEGMENT_PIXELS};
pub use sweep::{grid_side, run_sweep, SweepConfig, DEFAULT_SEEDS, DEFAULT_SIZES};
