//! Punctures, planar boundaries, twist-site detection and the density and
//! average-face-size analyses.

mod boundary;
mod density;
mod puncture;
mod twist;

pub use boundary::{
    boundary_logical_count, build_boundary_patch, BoundaryCount, BoundaryFamily, BoundaryPatch,
    BoundarySegment, BoundarySpec,
};
pub use density::{
    density_analysis, favg_analysis, max_generators, saturated_code, DensityPolicy, DensityReport, FavgReport,
    ValenceFamily, Verdict,
};
pub use puncture::{hole_logical_count, puncture, HoleClass, HoleCount, PuncturedCode};
pub use twist::{twist_sites, TwistKind, TwistReport};

use thiserror::Error;

use crate::hsc::HscError;
use crate::stabilizer::StabilizerError;

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("face {face} has no generator in slot {slot}")]
    NoSuchGenerator { face: usize, slot: usize },
    #[error("invalid boundary spec: {0}")]
    InvalidBoundarySpec(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("map has {0} components")]
    Disconnected(usize),
    #[error(transparent)]
    Hsc(#[from] HscError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}
