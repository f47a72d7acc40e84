//! Deterministic finite-difference oracle for harmonic measure.
//!
//! Solves the 5-point Laplace equation on the uniform lattice `h * Z^2`
//! intersected with the domain (minus slits), boundary value 1 on target
//! features and 0 elsewhere, and returns the value at `z0`. The domain is
//! truncated to a window: the right edge sits at `right_cap`, the left and
//! vertical edges follow the real boundary when the domain is bounded there
//! and otherwise become artificial absorbing-zero caps. Truncation error is
//! exponentially small in the cap distances for bounded cross-sections.
//!
//! The linear system is symmetric positive definite and solved by conjugate
//! gradients with an SSOR preconditioner, single-threaded, so results are
//! bitwise reproducible.

use crate::geom::{Point, Segment, StaircaseDomain};
use crate::harmonic::wos::{FeatureSet, TargetSpec, WosError};

#[derive(Debug, Clone, PartialEq)]
pub enum GridError {
    BadParams(String),
    /// Some section interval spans fewer than 4 cells at this mesh size.
    UnresolvedGap { length: f64, h: f64 },
    /// The snapped evaluation point is not an interior mesh node.
    StartNotInterior { x: f64, y: f64 },
    Target(WosError),
    /// CG failed to reach tolerance within the iteration cap.
    NoConvergence { residual: f64 },
}

impl std::fmt::Display for GridError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GridError::BadParams(msg) => write!(f, "bad grid parameters: {msg}"),
            GridError::UnresolvedGap { length, h } => write!(
                f,
                "mesh h={h} cannot resolve a section interval of length {length} (need 4 cells)"
            ),
            GridError::StartNotInterior { x, y } => {
                write!(f, "snapped start point ({x}, {y}) is not an interior mesh node")
            }
            GridError::Target(e) => write!(f, "{e}"),
            GridError::NoConvergence { residual } => {
                write!(f, "solver stalled at residual {residual}")
            }
        }
    }
}

impl std::error::Error for GridError {}

impl From<WosError> for GridError {
    fn from(e: WosError) -> Self {
        GridError::Target(e)
    }
}

/// Finite-difference estimate of `omega(z0, target, domain minus slits)`.
///
/// `h` is the mesh size and `right_cap` the abscissa of the artificial right
/// edge. Unbounded cross-sections are capped vertically at `±right_cap` as
/// well. Deterministic; second-order accurate away from corners.
pub fn hm_grid(
    domain: &StaircaseDomain,
    slits: &[Segment],
    z0: Point,
    target: &TargetSpec,
    h: f64,
    right_cap: f64,
) -> Result<f64, GridError> {
    hm_grid_windowed(domain, slits, z0, target, h, right_cap, right_cap.abs())
}

/// [`hm_grid`] with an explicit vertical cap for unbounded cross-sections,
/// for callers that have validated a leaner window (e.g. by doubling it).
pub fn hm_grid_windowed(
    domain: &StaircaseDomain,
    slits: &[Segment],
    z0: Point,
    target: &TargetSpec,
    h: f64,
    right_cap: f64,
    y_cap: f64,
) -> Result<f64, GridError> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(GridError::BadParams(format!("mesh size {h}")));
    }
    if !right_cap.is_finite() || right_cap <= z0.x {
        return Err(GridError::BadParams(format!("right cap {right_cap}")));
    }

    // Mesh resolution check: every finite section interval needs >= 4 cells.
    for s in domain.sections() {
        for &(lo, hi) in s.intervals() {
            let len = hi - lo;
            if len.is_finite() && len < 4.0 * h {
                return Err(GridError::UnresolvedGap { length: len, h });
            }
        }
    }

    if !(y_cap > 0.0) || !y_cap.is_finite() {
        return Err(GridError::BadParams(format!("y cap {y_cap}")));
    }
    let window = Window::derive(domain, right_cap, y_cap, h)?;
    let features = FeatureSet::new(domain, slits);
    let mask = features.resolve(target)?;

    let nx = (window.i_hi - window.i_lo + 1) as usize;
    let ny = (window.j_hi - window.j_lo + 1) as usize;
    let n_nodes = nx.checked_mul(ny).filter(|&n| n < 200_000_000).ok_or_else(|| {
        GridError::BadParams(format!("window of {nx} x {ny} nodes is too large"))
    })?;

    // Node classification: interior unknowns get an index; everything else is
    // a Dirichlet node whose value comes from its nearest feature, or 0 on an
    // artificial cap edge.
    const OUTSIDE: u32 = u32::MAX;
    let mut index = vec![OUTSIDE; n_nodes];
    let mut coords: Vec<(i64, i64)> = Vec::new();
    for j in window.j_lo..=window.j_hi {
        for i in window.i_lo..=window.i_hi {
            let p = Point::new(i as f64 * h, j as f64 * h);
            let artificial = window.on_artificial_edge(i, j);
            if !artificial
                && domain.interior_contains(p)
                && !slits.iter().any(|s| s.contains_point(p))
            {
                let flat = window.flat(i, j, nx);
                index[flat] = coords.len() as u32;
                coords.push((i, j));
            }
        }
    }

    let n = coords.len();
    if n == 0 {
        return Err(GridError::StartNotInterior { x: z0.x, y: z0.y });
    }

    // Snap z0 to the nearest mesh node.
    let zi = (z0.x / h).round() as i64;
    let zj = (z0.y / h).round() as i64;
    if zi < window.i_lo || zi > window.i_hi || zj < window.j_lo || zj > window.j_hi {
        return Err(GridError::StartNotInterior { x: zi as f64 * h, y: zj as f64 * h });
    }
    let z_flat = window.flat(zi, zj, nx);
    if index[z_flat] == OUTSIDE {
        return Err(GridError::StartNotInterior { x: zi as f64 * h, y: zj as f64 * h });
    }

    // Assemble neighbors and the Dirichlet right-hand side.
    let mut neighbors = vec![[OUTSIDE; 4]; n];
    let mut rhs = vec![0.0f64; n];
    let offsets = [(-1i64, 0i64), (1, 0), (0, -1), (0, 1)];
    for (k, &(i, j)) in coords.iter().enumerate() {
        for (s, &(di, dj)) in offsets.iter().enumerate() {
            let (ni, nj) = (i + di, j + dj);
            let in_window =
                ni >= window.i_lo && ni <= window.i_hi && nj >= window.j_lo && nj <= window.j_hi;
            let nb = if in_window { index[window.flat(ni, nj, nx)] } else { OUTSIDE };
            if nb != OUTSIDE {
                neighbors[k][s] = nb;
            } else {
                let p = Point::new(ni as f64 * h, nj as f64 * h);
                let artificial = !in_window || window.on_artificial_edge(ni, nj);
                if !artificial {
                    let (_, id) = features.nearest(p);
                    if id != usize::MAX && mask[id] {
                        rhs[k] += 1.0;
                    }
                }
                // Artificial caps and non-target features contribute 0.
            }
        }
    }

    let u = solve_pcg(&neighbors, &rhs)?;
    Ok(u[index[z_flat] as usize])
}

struct Window {
    i_lo: i64,
    i_hi: i64,
    j_lo: i64,
    j_hi: i64,
    left_artificial: bool,
    bottom_artificial: bool,
    top_artificial: bool,
}

impl Window {
    fn derive(
        domain: &StaircaseDomain,
        right_cap: f64,
        y_cap: f64,
        h: f64,
    ) -> Result<Window, GridError> {
        let left_artificial = !domain.sections()[0].is_empty();
        let x_lo = if left_artificial {
            -right_cap.abs()
        } else {
            domain.breakpoints().first().copied().unwrap_or(-right_cap.abs())
        };

        let mut y_lo = f64::INFINITY;
        let mut y_hi = f64::NEG_INFINITY;
        let mut bottom_artificial = false;
        let mut top_artificial = false;
        for s in domain.sections() {
            for &(lo, hi) in s.intervals() {
                if lo.is_finite() {
                    y_lo = y_lo.min(lo);
                } else {
                    bottom_artificial = true;
                }
                if hi.is_finite() {
                    y_hi = y_hi.max(hi);
                } else {
                    top_artificial = true;
                }
            }
        }
        if bottom_artificial {
            y_lo = -y_cap;
        }
        if top_artificial {
            y_hi = y_cap;
        }
        if !(y_lo < y_hi) {
            return Err(GridError::BadParams("domain has no vertical extent".into()));
        }

        Ok(Window {
            i_lo: (x_lo / h).floor() as i64,
            i_hi: (right_cap / h).ceil() as i64,
            j_lo: (y_lo / h).floor() as i64,
            j_hi: (y_hi / h).ceil() as i64,
            left_artificial,
            bottom_artificial,
            top_artificial,
        })
    }

    fn flat(&self, i: i64, j: i64, nx: usize) -> usize {
        ((j - self.j_lo) as usize) * nx + (i - self.i_lo) as usize
    }

    /// Nodes on artificial cap edges are forced to 0 even when they lie inside
    /// the true domain or on a feature.
    fn on_artificial_edge(&self, i: i64, j: i64) -> bool {
        i >= self.i_hi
            || (self.left_artificial && i <= self.i_lo)
            || (self.bottom_artificial && j <= self.j_lo)
            || (self.top_artificial && j >= self.j_hi)
    }
}

/// Conjugate gradients on `A u = b` for the 5-point operator
/// `(A u)_k = 4 u_k - sum of interior neighbors`, preconditioned with
/// modified incomplete Cholesky MIC(0).
fn solve_pcg(neighbors: &[[u32; 4]], rhs: &[f64]) -> Result<Vec<f64>, GridError> {
    const OUTSIDE: u32 = u32::MAX;
    let n = rhs.len();

    let apply_a = |u: &[f64], out: &mut [f64]| {
        for k in 0..n {
            let mut acc = 4.0 * u[k];
            for &nb in &neighbors[k] {
                if nb != OUTSIDE {
                    acc -= u[nb as usize];
                }
            }
            out[k] = acc;
        }
    };

    // MIC(0) diagonal: row sums of (D+L) D^{-1} (D+L^T) match those of A,
    // which folds the dropped fill into d and brings the iteration count down
    // to O(sqrt(grid diameter)). upper_degree[j] counts j's neighbors with a
    // larger index (the dropped-fill sources).
    let mut upper_degree = vec![0u8; n];
    for (k, nbs) in neighbors.iter().enumerate() {
        for &nb in nbs {
            if nb != OUTSIDE && (nb as usize) > k {
                upper_degree[k] += 1;
            }
        }
    }
    let mut diag = vec![0.0f64; n];
    for k in 0..n {
        let mut d = 4.0 * (1.0 + 1e-10);
        for &nb in &neighbors[k] {
            let j = nb as usize;
            if nb != OUTSIDE && j < k {
                d -= upper_degree[j] as f64 / diag[j];
            }
        }
        diag[k] = d;
    }

    // z = (D+L)^{-1} D (D+L^T)^{-1} r via forward and backward sweeps.
    let apply_m_inv = |r: &[f64], z: &mut [f64]| {
        for k in 0..n {
            let mut acc = r[k];
            for &nb in &neighbors[k] {
                if nb != OUTSIDE && (nb as usize) < k {
                    acc += z[nb as usize];
                }
            }
            z[k] = acc / diag[k];
        }
        for k in (0..n).rev() {
            let mut acc = z[k] * diag[k];
            for &nb in &neighbors[k] {
                if nb != OUTSIDE && (nb as usize) > k {
                    acc += z[nb as usize];
                }
            }
            z[k] = acc / diag[k];
        }
    };

    let mut u = vec![0.0f64; n];
    let mut r = rhs.to_vec();
    let mut z = vec![0.0f64; n];
    apply_m_inv(&r, &mut z);
    let mut p = z.clone();
    let mut ap = vec![0.0f64; n];

    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut rz = dot(&r, &z);
    let b_norm = rhs.iter().fold(0.0f64, |m, &v| m.max(v.abs())).max(1e-300);
    let tol = 1e-11 * b_norm;

    let max_iter = 40_000.min(10 * n + 100);
    for _ in 0..max_iter {
        let r_norm = r.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        if r_norm <= tol {
            return Ok(u);
        }
        apply_a(&p, &mut ap);
        let alpha = rz / dot(&p, &ap);
        for k in 0..n {
            u[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        apply_m_inv(&r, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for k in 0..n {
            p[k] = z[k] + beta * p[k];
        }
    }
    let r_norm = r.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if r_norm <= tol * 100.0 {
        Ok(u)
    } else {
        Err(GridError::NoConvergence { residual: r_norm })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_top_line_is_one_half() {
        let d = StaircaseDomain::strip(-1.0, 1.0);
        let v = hm_grid(&d, &[], Point::ORIGIN, &TargetSpec::HorizontalAt(1.0), 1.0 / 32.0, 16.0)
            .unwrap();
        assert!((v - 0.5).abs() < 5e-3, "got {v}");
    }

    #[test]
    fn rejects_unresolved_mesh_and_bad_params() {
        let d = StaircaseDomain::strip(-0.01, 0.01);
        assert!(matches!(
            hm_grid(&d, &[], Point::ORIGIN, &TargetSpec::HorizontalAt(0.01), 0.25, 4.0),
            Err(GridError::UnresolvedGap { .. })
        ));
        let strip = StaircaseDomain::strip(-1.0, 1.0);
        assert!(hm_grid(&strip, &[], Point::ORIGIN, &TargetSpec::HorizontalAt(1.0), -0.5, 4.0).is_err());
        assert!(hm_grid(&strip, &[], Point::ORIGIN, &TargetSpec::HorizontalAt(1.0), 0.25, -1.0).is_err());
    }

    #[test]
    fn richardson_ratio_for_slit_in_strip() {
        // The slit tip carries an r^(1/2) singularity, which drags the plain
        // 5-point scheme down to first order globally: the self-convergence
        // ratio settles near 2, not the smooth-case 4.
        let d = StaircaseDomain::strip(-1.0, 1.0);
        let slits = [Segment::slit_from(1.0)];
        let t = TargetSpec::AllSlits;
        let mut vals = Vec::new();
        for h in [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0] {
            vals.push(hm_grid(&d, &slits, Point::ORIGIN, &t, h, 12.0).unwrap());
        }
        let ratio = (vals[0] - vals[1]) / (vals[1] - vals[2]);
        assert!((1.6..2.9).contains(&ratio), "Richardson ratio {ratio}, values {vals:?}");
    }

    #[test]
    fn richardson_ratio_is_second_order_without_slit() {
        let d = StaircaseDomain::strip(-1.0, 1.0);
        let t = TargetSpec::HorizontalAt(1.0);
        let mut vals = Vec::new();
        for h in [1.0 / 4.0, 1.0 / 8.0, 1.0 / 16.0] {
            vals.push(hm_grid(&d, &[], Point::new(0.0, 0.25), &t, h, 12.0).unwrap());
        }
        let ratio = (vals[0] - vals[1]) / (vals[1] - vals[2]);
        assert!((3.0..5.5).contains(&ratio), "Richardson ratio {ratio}, values {vals:?}");
    }

    #[test]
    fn grid_is_deterministic() {
        let d = StaircaseDomain::strip(-1.0, 1.0);
        let slits = [Segment::slit_from(1.0)];
        let a = hm_grid(&d, &slits, Point::ORIGIN, &TargetSpec::AllSlits, 1.0 / 16.0, 12.0).unwrap();
        let b = hm_grid(&d, &slits, Point::ORIGIN, &TargetSpec::AllSlits, 1.0 / 16.0, 12.0).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn slit_half_plane_matches_conformal_value() {
        // Half-plane {x > -1} minus [1, inf): the map w -> w/(w+2) carries the
        // configuration to the radial slit [1/3, 1] in the disk, so the exact
        // measure is slit_disk(1/3) = 1/3.
        let hp = StaircaseDomain::half_plane(-1.0);
        let slits = [Segment::slit_from(1.0)];
        let v = hm_grid_windowed(&hp, &slits, Point::ORIGIN, &TargetSpec::AllSlits, 1.0 / 32.0, 40.0, 16.0)
            .unwrap();
        let exact = crate::harmonic::closed_form::slit_disk(1.0 / 3.0).unwrap();
        assert!((v - exact).abs() < 5e-3, "grid {v} vs exact {exact}");
    }

    #[test]
    fn cut_half_plane_crosscut_is_linear_profile() {
        // The left component of the half-plane at t = 2 is a vertical strip;
        // the crosscut measure from 0 is exactly (0+1)/(2+1).
        let hp = StaircaseDomain::half_plane(-1.0);
        let (cut, _) = hp.left_component(2.0).unwrap();
        let v = hm_grid_windowed(&cut, &[], Point::ORIGIN, &TargetSpec::VerticalAt(2.0), 1.0 / 32.0, 2.5, 10.0)
            .unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-4, "grid {v}");
    }
}
