//! Numerical operator calculus for conformal maps with analytic boundaries.
//!
//! The crate is layered bottom-up:
//!
//! * [`series`], [`maps`], [`power_matrix`]: truncated Laurent series with
//!   explicit "unknown beyond window" bookkeeping, the Taylor/Laurent map
//!   types, and power matrices of maps.
//! * [`fourier`], [`curve`], [`cauchy`]: boundary data stored as Fourier
//!   coefficients in the circle parameter of a curve, sampled curves, Cauchy
//!   integrals and the jump (Plemelj) decomposition.
//! * [`faber`], [`grunsky`]: Faber polynomials, Faber series, the
//!   trivialization operator, and Grunsky coefficients by two routes.
//! * [`spaces`]: Dirichlet energies, half-order norms, the Besov double
//!   integral and the chord-arc diagnostic.
//! * [`rigging`]: tuples of non-overlapping maps, the block Grunsky operator
//!   and the graph identities it satisfies.

pub mod cauchy;
pub mod curve;
pub mod error;
pub mod faber;
pub mod fourier;
pub mod grunsky;
pub mod maps;
pub mod power_matrix;
pub mod rigging;
pub mod serde_c64;
pub mod series;
pub mod spaces;

pub use num_complex::Complex64 as C64;

pub use cauchy::{
    boundary_values, cauchy_integral, jump_decompose, project_exterior, project_interior,
    JumpDecomposition, Side,
};
pub use curve::{sample_curve, CurveSample, Orientation};
pub use error::{Error, Result};
pub use faber::{
    faber_polynomials, faber_polynomials_exterior, faber_series, trivialization_apply,
    DomainSide, FaberFamily, FaberSeries,
};
pub use fourier::BoundaryFunction;
pub use grunsky::{grunsky_via_faber, grunsky_via_generating, GrunskyMatrix};
pub use maps::{ConformalMap, LaurentMap, TaylorMap};
pub use power_matrix::{build_power_matrix, PowerMatrix, Triangularity};
pub use rigging::{
    apply_k, apply_wf, assemble_grunsky_blocks, cauchy_sum, hilbert_schmidt_norm,
    hilbert_schmidt_partial_sums, split_h, transfer, validate_rigging, verify_graph,
    wf_identity_residual, GraphReport, GrunskyBlocks, HTuple, KComponents, Pole, Rigging,
    RiggingConfig, TestFunction, ValidationReport,
};
pub use series::{laurent_reversion, series_reversion, FormalSeries, Reversion, Truncation};
pub use spaces::{
    besov_seminorm, chord_arc_constant, dirichlet_energy, fourier_half_norm,
    harmonic_dirichlet_norm, h_half_norm, jump_bound_ratio, DiskFunction, HarmonicPair,
};
