//! Staircase-domain toolkit for holomorphic semigroups: Steiner symmetrization,
//! polarization, harmonic-measure estimators (walk-on-spheres and a grid
//! oracle), trajectory recovery toward the Denjoy-Wolff point, and inequality
//! verification suites.

// Guards like `!(x > 0.0)` are used on purpose: they reject NaN along with
// out-of-range values in one comparison.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod fixtures;
pub mod geom;
pub mod harmonic;
pub mod rng;
pub mod semigroup;
pub mod transform;
pub mod verify;
