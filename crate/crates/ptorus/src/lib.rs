//! Slices of the deformation space of once-punctured-torus Kleinian groups.
//!
//! The crate renders the Maskit slice, linear slices in trace coordinates,
//! horizontal slices (intersections of Maskit translates) and
//! Fenchel-Nielsen twist slices as verdict rasters, and runs numerical
//! experiments on how linear slices converge when the fixed trace approaches
//! the parabolic value 2 horocyclically or tangentially.

pub mod coords;
pub mod discreteness;
pub mod error;
pub mod limits;
pub mod mobius;
pub mod slices;

pub use coords::{
    beta_from_lambda, complex_length, eta, g_lam, g_lam_inv, gamma_branch, h_lam, hat_sigma,
    map_f, realize_triple, rho_alpha, sigma_mu, theta, ComplexLength, FnCoords,
    PuncturedTorusRep, TraceCoords, TraceTriple,
};
pub use discreteness::{
    membership_fn, membership_maskit, membership_trace, neighbor, scan, ScanParams, Slot, Verdict,
};
pub use error::{Error, Result};
pub use limits::{
    classify, classify_with, cyclic_b_n, cyclic_limit_check, hausdorff, run_experiment,
    Classification, ConvergenceKind, ConvergenceReport, ReportRow, SequenceSpec,
};
pub use mobius::{
    commutator, compose, inverse, power, psl_distance, ExtComplex, UnitDetMatrix,
};
pub use slices::{
    pgm_bytes, raster_fn, raster_im_zeta, raster_linear, raster_m_zeta, raster_maskit,
    read_raster, rotate_raster_im, write_raster, RasterMeta, SliceRaster, Window, CODE_CERTIFIED,
    CODE_ERROR, CODE_LIKELY, CODE_MEMBER, GRAY_LEVELS,
};

pub use num_complex::Complex64;
