//! Semigroup trajectories toward the Denjoy-Wolff point.
//!
//! For canonical domain families the orbit of 0 has a closed form via an
//! explicit Riemann map normalized to send 0 to 0 and the positive-direction
//! prime end to 1; the reported quantity is the gap `|phi_t(0) - tau|`. For
//! arbitrary symmetric staircase domains the orbit point is recovered by slit
//! inversion: the half-line `[t, inf)` lies on a hyperbolic geodesic of a
//! symmetric domain, so its harmonic measure from 0 equals the disk slit
//! measure at `phi_t(0)`, which the strictly monotone slit formula inverts.

use crate::geom::{Point, Segment, StaircaseDomain};
use crate::harmonic::closed_form::{
    inverse_slit_disk, slit_disk_derivative, ClosedFormError,
};
use crate::harmonic::wos::{hm_wos, TargetSpec, WosError, WosParams};
use crate::transform::is_symmetric;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryMethod {
    ClosedForm,
    SlitInversion,
}

impl std::fmt::Display for TrajectoryMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TrajectoryMethod::ClosedForm => write!(f, "closed_form"),
            TrajectoryMethod::SlitInversion => write!(f, "slit_inversion"),
        }
    }
}

/// One sample of a trajectory: the time, the recovered orbit position on the
/// real diameter when available, and the gap `|phi_t(0) - tau|` with its
/// propagated sampling error.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    /// Orbit position in `[0, 1)` when the orbit runs along the real diameter.
    pub phi0: Option<f64>,
    /// `|phi_t(0) - tau|`, in `[0, 2]`; equals `1 - phi0` when `phi0` is real.
    pub gap: f64,
    pub method: TrajectoryMethod,
    pub stderr_gap: f64,
}

impl TrajectoryPoint {
    fn exact(t: f64, phi0: Option<f64>, gap: f64) -> TrajectoryPoint {
        TrajectoryPoint { t, phi0, gap, method: TrajectoryMethod::ClosedForm, stderr_gap: 0.0 }
    }

    /// Closed-form point with a real orbit position, derived as `1 - gap` so
    /// the complement identity holds exactly. Once the position would round
    /// to 1 (the orbit is numerically at the Denjoy-Wolff point) it is
    /// reported as absent; the gap keeps full relative precision.
    fn real_orbit(t: f64, gap: f64) -> TrajectoryPoint {
        let phi = 1.0 - gap;
        TrajectoryPoint::exact(t, (phi < 1.0).then_some(phi), gap)
    }
}

#[derive(Debug)]
pub enum SemigroupError {
    /// A family parameter (width, aperture, time) was out of range.
    BadParameter { name: &'static str, value: f64 },
    /// Slit inversion requires a domain symmetric about the real axis.
    AsymmetricDomain,
    /// The slit `[t, inf)` must lie inside the domain.
    SlitOutsideDomain { t: f64 },
    Estimator(WosError),
    ClosedForm(ClosedFormError),
}

impl std::fmt::Display for SemigroupError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SemigroupError::BadParameter { name, value } => {
                write!(f, "parameter {name} = {value} out of range")
            }
            SemigroupError::AsymmetricDomain => {
                write!(f, "trajectory recovery needs a domain symmetric about the real axis")
            }
            SemigroupError::SlitOutsideDomain { t } => {
                write!(f, "half-line [{t}, inf) does not lie in the domain")
            }
            SemigroupError::Estimator(e) => write!(f, "{e}"),
            SemigroupError::ClosedForm(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SemigroupError {}

impl From<WosError> for SemigroupError {
    fn from(e: WosError) -> Self {
        SemigroupError::Estimator(e)
    }
}

impl From<ClosedFormError> for SemigroupError {
    fn from(e: ClosedFormError) -> Self {
        SemigroupError::ClosedForm(e)
    }
}

fn check_time(t: f64) -> Result<(), SemigroupError> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(SemigroupError::BadParameter { name: "t", value: t })
    }
}

/// Gap for the half-plane `{Re z > -d}`: the map `w -> w / (w + 2d)` sends it
/// to the disk with `0 -> 0`, `inf -> 1`, so `phi_t(0) = t / (t + 2d)`.
pub fn gap_half_plane(d: f64, t: f64) -> Result<TrajectoryPoint, SemigroupError> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(SemigroupError::BadParameter { name: "d", value: d });
    }
    check_time(t)?;
    Ok(TrajectoryPoint::real_orbit(t, 2.0 * d / (t + 2.0 * d)))
}

/// Gap for the symmetric strip `{|Im z| < a}`: `phi_t(0) = tanh(pi t / (4a))`.
/// The gap is evaluated as `2 e^{-2x} / (1 + e^{-2x})`, which keeps full
/// relative precision long after `tanh` saturates to 1.
pub fn gap_strip(a: f64, t: f64) -> Result<TrajectoryPoint, SemigroupError> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(SemigroupError::BadParameter { name: "a", value: a });
    }
    check_time(t)?;
    let x = std::f64::consts::PI * t / (4.0 * a);
    let e = (-2.0 * x).exp();
    Ok(TrajectoryPoint::real_orbit(t, 2.0 * e / (1.0 + e)))
}

/// Gap for the shifted strip `{-a < Im z < b}`. The strip maps to the disk by
/// `tanh(pi (w - i(b-a)/2) / (2(a+b)))`; a disk automorphism then recenters
/// the image of 0, and the gap is measured to the rotated Denjoy-Wolff point.
/// The orbit leaves the real diameter, so only the gap is returned.
pub fn gap_shifted_strip(a: f64, b: f64, t: f64) -> Result<TrajectoryPoint, SemigroupError> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(SemigroupError::BadParameter { name: "a", value: a });
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(SemigroupError::BadParameter { name: "b", value: b });
    }
    check_time(t)?;

    let u = std::f64::consts::PI * t / (2.0 * (a + b));
    let v = -std::f64::consts::PI * (b - a) / (4.0 * (a + b));
    // m0(t) = tanh(u + iv).
    let m = complex_tanh(u, v);
    // p = m0(0) = i tan(v) is purely imaginary; T(z) = (z - p)/(1 - conj(p) z).
    let q = v.tan();
    let phi = moebius_imag_center(m, q);
    let tau = moebius_imag_center((1.0, 0.0), q);
    let gap = ((phi.0 - tau.0).powi(2) + (phi.1 - tau.1).powi(2)).sqrt();
    let point = if q == 0.0 {
        TrajectoryPoint::real_orbit(t, gap)
    } else {
        TrajectoryPoint::exact(t, None, gap)
    };
    Ok(point)
}

/// Gap for the sector `{x > -1, |y| < c(x+1)/2}` with half-aperture
/// `theta = atan(c/2)`: the vertex power `(w+1)^beta`, `beta = pi/(2 theta)`,
/// opens it to the right half-plane with `0 -> 1`, and the Cayley map gives
/// `phi_t(0) = ((t+1)^beta - 1)/((t+1)^beta + 1)`.
pub fn gap_sector(c: f64, t: f64) -> Result<TrajectoryPoint, SemigroupError> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(SemigroupError::BadParameter { name: "c", value: c });
    }
    check_time(t)?;
    let theta = (c / 2.0).atan();
    let beta = std::f64::consts::FRAC_PI_2 / theta;
    let pow = (t + 1.0).powf(beta);
    if !pow.is_finite() {
        return Ok(TrajectoryPoint::exact(t, None, 0.0));
    }
    Ok(TrajectoryPoint::real_orbit(t, 2.0 / (pow + 1.0)))
}

/// Which quadrant family member: `{x > -1, y > -1}` or its conjugate
/// `{x > -1, y < 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrantKind {
    LowerLeftCorner,
    UpperLeftCorner,
}

/// Gap for the quadrant: squaring at the corner opens the right angle to a
/// half-plane and a Moebius map normalizes, giving
/// `gap = 4 / |(t + 1 + i)^2 + 2i|`. Conjugation symmetry makes both members
/// of the family agree exactly.
pub fn gap_quadrant(kind: QuadrantKind, t: f64) -> Result<TrajectoryPoint, SemigroupError> {
    check_time(t)?;
    let _ = kind; // the mirror formula has the same modulus, term for term
    let re = (t + 1.0) * (t + 1.0) - 1.0;
    let im = 2.0 * (t + 2.0);
    Ok(TrajectoryPoint::exact(t, None, 4.0 / re.hypot(im)))
}

/// `tanh(u + iv)` as `(tanh u + i tan v) / (1 + i tanh u tan v)`.
fn complex_tanh(u: f64, v: f64) -> (f64, f64) {
    let tu = u.tanh();
    let tv = v.tan();
    let denom = 1.0 + (tu * tv) * (tu * tv);
    ((tu * (1.0 + tv * tv)) / denom, (tv * (1.0 - tu * tu)) / denom)
}

/// The disk automorphism `(z - iq) / (1 + iq z)` applied to `z = (re, im)`.
fn moebius_imag_center(z: (f64, f64), q: f64) -> (f64, f64) {
    let num = (z.0, z.1 - q);
    let den = (1.0 - q * z.1, q * z.0);
    let d2 = den.0 * den.0 + den.1 * den.1;
    (
        (num.0 * den.0 + num.1 * den.1) / d2,
        (num.1 * den.0 - num.0 * den.1) / d2,
    )
}

/// Koenigs coordinate of a real orbit position, for the families whose orbit
/// stays on the real diameter. Inverse of the trajectory maps above.
pub fn koenigs_half_plane(d: f64, phi: f64) -> f64 {
    2.0 * d * phi / (1.0 - phi)
}

pub fn koenigs_strip(a: f64, phi: f64) -> f64 {
    4.0 * a * phi.atanh() / std::f64::consts::PI
}

pub fn koenigs_sector(c: f64, phi: f64) -> f64 {
    let theta = (c / 2.0).atan();
    let beta = std::f64::consts::FRAC_PI_2 / theta;
    ((1.0 + phi) / (1.0 - phi)).powf(1.0 / beta) - 1.0
}

/// Recovers the trajectory point of a symmetric staircase domain at time `t`
/// by estimating `omega(0, [t, inf), domain \ [t, inf))` with walk-on-spheres
/// and inverting the slit formula. The sampling error is pushed through the
/// inverse map by the delta method.
pub fn trajectory_symmetric(
    domain: &StaircaseDomain,
    t: f64,
    params: &WosParams,
) -> Result<TrajectoryPoint, SemigroupError> {
    domain.require_valid().map_err(WosError::Geometry)?;
    if !is_symmetric(domain) {
        return Err(SemigroupError::AsymmetricDomain);
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(SemigroupError::BadParameter { name: "t", value: t });
    }
    if t == 0.0 {
        return Ok(TrajectoryPoint {
            t,
            phi0: Some(0.0),
            gap: 1.0,
            method: TrajectoryMethod::SlitInversion,
            stderr_gap: 0.0,
        });
    }
    if !domain.contains(Point::new(t, 0.0)) {
        return Err(SemigroupError::SlitOutsideDomain { t });
    }

    let slits = [Segment::slit_from(t)];
    let est = hm_wos(domain, &slits, Point::ORIGIN, &TargetSpec::AllSlits, params)?;

    let (phi0, gap, deriv) = if est.value <= 0.0 {
        // No hits: the orbit is numerically at the Denjoy-Wolff point.
        (None, 0.0, std::f64::consts::PI)
    } else if est.value >= 1.0 {
        (Some(0.0), 1.0, std::f64::consts::PI / 2.0)
    } else {
        let r = inverse_slit_disk(est.value)?;
        let deriv = 1.0 / slit_disk_derivative(r)?.abs();
        (Some(r), 1.0 - r, deriv)
    };

    Ok(TrajectoryPoint {
        t,
        phi0,
        gap,
        method: TrajectoryMethod::SlitInversion,
        stderr_gap: est.stderr * deriv,
    })
}

/// The canonical Koenigs-domain families with exact trajectories.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CanonicalDomain {
    /// `{Re z > -d}`.
    HalfPlane { d: f64 },
    /// `{|Im z| < a}`.
    Strip { a: f64 },
    /// `{-a < Im z < b}`.
    ShiftedStrip { a: f64, b: f64 },
    /// `{x > -1, |y| < c(x+1)/2}`.
    Sector { c: f64 },
    Quadrant { kind: QuadrantKind },
}

impl CanonicalDomain {
    pub fn gap(&self, t: f64) -> Result<TrajectoryPoint, SemigroupError> {
        match *self {
            CanonicalDomain::HalfPlane { d } => gap_half_plane(d, t),
            CanonicalDomain::Strip { a } => gap_strip(a, t),
            CanonicalDomain::ShiftedStrip { a, b } => gap_shifted_strip(a, b, t),
            CanonicalDomain::Sector { c } => gap_sector(c, t),
            CanonicalDomain::Quadrant { kind } => gap_quadrant(kind, t),
        }
    }

    /// Exact staircase representation, except for the sector which is
    /// approximated by inscribed pieces of the given width out to `x_max`.
    pub fn staircase(&self, sector_step: f64, sector_x_max: f64) -> StaircaseDomain {
        use crate::geom::IntervalSet;
        match *self {
            CanonicalDomain::HalfPlane { d } => StaircaseDomain::half_plane(-d),
            CanonicalDomain::Strip { a } => StaircaseDomain::strip(-a, a),
            CanonicalDomain::ShiftedStrip { a, b } => StaircaseDomain::strip(-a, b),
            CanonicalDomain::Quadrant { kind } => {
                let section = match kind {
                    QuadrantKind::LowerLeftCorner => IntervalSet::single(-1.0, f64::INFINITY),
                    QuadrantKind::UpperLeftCorner => IntervalSet::single(f64::NEG_INFINITY, 1.0),
                };
                StaircaseDomain::try_new(vec![-1.0], vec![IntervalSet::empty(), section]).unwrap()
            }
            CanonicalDomain::Sector { c } => {
                let mut breakpoints = Vec::new();
                let mut sections = vec![IntervalSet::empty()];
                let steps = ((sector_x_max + 1.0) / sector_step).ceil() as usize;
                for k in 0..steps {
                    let x = -1.0 + k as f64 * sector_step;
                    breakpoints.push(x);
                    // Inscribed: value at the left edge of the piece.
                    let half = c * (x + 1.0) / 2.0;
                    if half > 0.0 {
                        sections.push(IntervalSet::single(-half, half));
                    } else {
                        sections.push(IntervalSet::empty());
                    }
                }
                StaircaseDomain::try_new(breakpoints, sections)
                    .unwrap()
                    .canonicalize()
            }
        }
    }
}
