//! Harmonic-measure computation: closed-form reference values, a
//! walk-on-spheres Monte Carlo estimator, and a deterministic grid oracle.

pub mod closed_form;
pub mod grid;
pub mod wos;

pub use closed_form::{
    arc_measure, crosscut_geodesic, diam_bound, inverse_slit_disk, slit_disk,
    slit_disk_derivative, ClosedFormError,
};
pub use grid::{hm_grid, GridError};
pub use wos::{hm_wos, FeatureSet, HMEstimate, Method, TargetSpec, WosError, WosParams};
