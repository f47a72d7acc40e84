//! Geometry of staircase domains: interval sets, segments, membership,
//! boundary decomposition, cut components, and the JSON wire format.

pub mod domain;
pub mod interval;
pub mod json;
pub mod segment;

pub use domain::{GeomError, Point, StaircaseDomain, ValidationReport};
pub use interval::{IntervalError, IntervalSet};
pub use segment::Segment;
