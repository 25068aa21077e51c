use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::pgm::{read_pgm_file, write_mask_file, GrayImage};
use super::record::relative_error;
use crate::error::{Error, Result};
use crate::graph::{BitVector, GridGraph};
use crate::optimize::OptimizerKind;
use crate::oracle::{brute_force_min_cut, MAX_VARIABLES};
use crate::solve::{solve, Method, SolveConfig};

/// Images up to this many pixels are also solved exactly for comparison.
pub const MAX_ORACLE_PIXELS: usize = MAX_VARIABLES;
pub const MAX_SEGMENT_PIXELS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentSummary {
    pub method: Method,
    pub optimizer: OptimizerKind,
    pub layers: usize,
    pub shots: u64,
    pub seed: u64,
    pub width: usize,
    pub height: usize,
    pub cost: f64,
    pub evaluations: usize,
    /// Exact minimum, when the image is small enough to enumerate.
    pub exact: Option<f64>,
    pub rel_error: Option<f64>,
    pub wall_time_s: f64,
}

/// Segments an in-memory image; bit `i` of the mask is row-major pixel `i`.
pub fn segment(image: &GrayImage, cfg: &SolveConfig) -> Result<(BitVector, SegmentSummary)> {
    let n = image.width * image.height;
    if n > MAX_SEGMENT_PIXELS {
        return Err(Error::TooLarge(n, MAX_SEGMENT_PIXELS));
    }
    let g = GridGraph::from_image(
        &image.intensities(),
        image.width,
        image.height,
        f64::from(image.max_value),
    )?;
    let start = Instant::now();
    let solution = solve(&g, cfg)?;
    let wall_time_s = start.elapsed().as_secs_f64();
    let exact = if n <= MAX_ORACLE_PIXELS { Some(brute_force_min_cut(&g)?.value) } else { None };
    let summary = SegmentSummary {
        method: cfg.method,
        optimizer: cfg.optimizer,
        layers: cfg.layers,
        shots: cfg.shots,
        seed: cfg.seed,
        width: image.width,
        height: image.height,
        cost: solution.cost,
        evaluations: solution.optimizer.evaluations,
        exact,
        rel_error: exact.and_then(|e| relative_error(solution.cost, e)),
        wall_time_s,
    };
    Ok((solution.bits, summary))
}

/// Reads a PGM, writes the mask as plain PBM and the summary as JSON.
pub fn segment_image(
    pgm: &Path,
    cfg: &SolveConfig,
    mask_out: &Path,
    summary_out: &Path,
) -> Result<SegmentSummary> {
    let image = read_pgm_file(pgm)?;
    let (mask, summary) = segment(&image, cfg)?;
    write_mask_file(&mask, image.width, image.height, mask_out)?;
    let json = serde_json::to_string_pretty(&summary).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(summary_out, json + "\n")
        .map_err(|e| Error::Io(format!("{}: {e}", summary_out.display())))?;
    Ok(summary)
}
