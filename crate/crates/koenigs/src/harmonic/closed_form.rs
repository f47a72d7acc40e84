//! Closed-form harmonic-measure values on the unit disk.
//!
//! These are the exact reference quantities every estimator and verification
//! suite is compared against: the Poisson arc measure, the radial-slit
//! measure and its inverse, the perpendicular-geodesic crosscut measure, and
//! the diameter lower bound.

use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub enum ClosedFormError {
    /// Input outside the admissible range of the formula.
    OutOfRange { name: &'static str, value: f64 },
}

impl std::fmt::Display for ClosedFormError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosedFormError::OutOfRange { name, value } => {
                write!(f, "{name}: argument {value} out of range")
            }
        }
    }
}

impl std::error::Error for ClosedFormError {}

/// Harmonic measure at 0 of a circular arc of the given length: `len / (2 pi)`.
pub fn arc_measure(arc_length: f64) -> Result<f64, ClosedFormError> {
    if !(0.0..=2.0 * PI).contains(&arc_length) {
        return Err(ClosedFormError::OutOfRange { name: "arc_measure", value: arc_length });
    }
    Ok(arc_length / (2.0 * PI))
}

/// Harmonic measure at 0 of the radial slit `[r, 1]` in the slit disk:
/// `(2/pi) atan((1 - r) / (2 sqrt(r)))`, strictly decreasing on `(0, 1)`.
pub fn slit_disk(r: f64) -> Result<f64, ClosedFormError> {
    if !(0.0 < r && r < 1.0) {
        return Err(ClosedFormError::OutOfRange { name: "slit_disk", value: r });
    }
    Ok((2.0 / PI) * ((1.0 - r) / (2.0 * r.sqrt())).atan())
}

/// Derivative of [`slit_disk`]: `-2 / (pi sqrt(r) (1 + r))`. Used to propagate
/// sampling error through the inverse map.
pub fn slit_disk_derivative(r: f64) -> Result<f64, ClosedFormError> {
    if !(0.0 < r && r < 1.0) {
        return Err(ClosedFormError::OutOfRange { name: "slit_disk_derivative", value: r });
    }
    Ok(-2.0 / (PI * r.sqrt() * (1.0 + r)))
}

/// The unique `r` in `(0, 1)` with `slit_disk(r) = w`, by monotone bisection
/// to 1e-14 absolute.
pub fn inverse_slit_disk(w: f64) -> Result<f64, ClosedFormError> {
    if !(0.0 < w && w < 1.0) {
        return Err(ClosedFormError::OutOfRange { name: "inverse_slit_disk", value: w });
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    // slit_disk decreases from 1 at 0+ to 0 at 1-, so the target keeps the
    // invariant slit_disk(lo) > w > slit_disk(hi).
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        let v = (2.0 / PI) * ((1.0 - mid) / (2.0 * mid.sqrt())).atan();
        if v > w {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Harmonic measure at 0 of the hyperbolic geodesic through `r` perpendicular
/// to the real diameter, seen from the component containing 0:
/// `1 - (2/pi) atan(2r / (1 - r^2))`.
pub fn crosscut_geodesic(r: f64) -> Result<f64, ClosedFormError> {
    if !(-1.0 < r && r < 1.0) {
        return Err(ClosedFormError::OutOfRange { name: "crosscut_geodesic", value: r });
    }
    Ok(1.0 - (2.0 / PI) * (2.0 * r / (1.0 - r * r)).atan())
}

/// Diameter lower bound for arcs: `(1/pi) asin(d/2)` for diameter `d` in `[0, 2]`.
pub fn diam_bound(d: f64) -> Result<f64, ClosedFormError> {
    if !(0.0..=2.0).contains(&d) {
        return Err(ClosedFormError::OutOfRange { name: "diam_bound", value: d });
    }
    Ok((1.0 / PI) * (d / 2.0).asin())
}
