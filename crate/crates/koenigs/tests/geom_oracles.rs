//! Independent brute-force oracles for the geometry queries.
//!
//! The distance query is cross-checked against the minimum distance to a fine
//! discretization of every boundary segment (step 2e-5, so the sampling error
//! at the probed distances stays below 1e-9), and membership is cross-checked
//! against cross-section membership.

use koenigs::fixtures::three_step;
use koenigs::geom::{Point, Segment, StaircaseDomain};
use koenigs::rng::CounterRng;

/// Minimum distance from `p` to sample points along `seg`, clipped to a
/// window around the probe.
fn sampled_distance(seg: &Segment, p: Point, step: f64) -> f64 {
    let clip = 32.0;
    // (fixed coordinate, sweep range, true when the sweep runs along x)
    let (fixed, c0, c1, sweeps_x) = match *seg {
        Segment::Horizontal { y, x0, x1 } => (y, (p.x - clip).max(x0), (p.x + clip).min(x1), true),
        Segment::Vertical { x, y0, y1 } => (x, (p.y - clip).max(y0), (p.y + clip).min(y1), false),
    };
    if c0 > c1 {
        return f64::INFINITY;
    }
    let n = ((c1 - c0) / step).ceil() as usize;
    let mut best = f64::INFINITY;
    for k in 0..=n {
        let c = c0 + (c1 - c0) * k as f64 / n.max(1) as f64;
        let d = if sweeps_x {
            (p.x - c).hypot(p.y - fixed)
        } else {
            (p.x - fixed).hypot(p.y - c)
        };
        if d < best {
            best = d;
        }
    }
    best
}

#[test]
fn distance_matches_brute_force_discretization() {
    let domain = three_step();
    let slits = vec![Segment::slit_from(2.0)];
    let mut segments = domain.boundary_segments();
    segments.extend_from_slice(&slits);

    let mut rng = CounterRng::for_sample(0xd15, 0);
    let mut probes = vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 1.25),
        Point::new(3.0, -0.5),
        Point::new(2.5, 0.25),
    ];
    // Probes stay at distance >= 0.05 so the sampling overshoot
    // step^2 / (8 d) remains below the 1e-9 tolerance.
    while probes.len() < 12 {
        let p = Point::new(rng.uniform_in(-0.2, 5.0), rng.uniform_in(-1.0, 1.5));
        if domain.contains(p)
            && !slits.iter().any(|s| s.contains_point(p))
            && domain.distance_to_boundary(p, &slits).unwrap().0 >= 0.05
        {
            probes.push(p);
        }
    }

    for p in probes {
        let (exact, _) = domain.distance_to_boundary(p, &slits).unwrap();
        let brute = segments
            .iter()
            .map(|s| sampled_distance(s, p, 2e-5))
            .fold(f64::INFINITY, f64::min);
        // Sample points lie on the segments, so the sampled minimum can only
        // overshoot the true distance.
        assert!(
            brute >= exact && brute - exact <= 1e-9,
            "at {p:?}: exact {exact} vs sampled {brute}"
        );
    }
}

#[test]
fn membership_agrees_with_cross_section() {
    let domain = three_step();
    let mut rng = CounterRng::for_sample(0xd16, 0);
    for _ in 0..2000 {
        let p = Point::new(rng.uniform_in(-1.0, 4.0), rng.uniform_in(-2.0, 2.5));
        assert_eq!(
            domain.contains(p),
            domain.cross_section(p.x).contains(p.y),
            "mismatch at {p:?}"
        );
    }
}

#[test]
fn cross_sections_grow_rightward_on_random_domains() {
    for index in 0..30 {
        let d = koenigs::fixtures::random_domain(0xcafe, index);
        let mut probes: Vec<f64> = d.breakpoints().to_vec();
        for w in d.breakpoints().windows(2) {
            probes.push(0.5 * (w[0] + w[1]));
        }
        probes.push(d.breakpoints()[0] - 0.5);
        probes.push(d.breakpoints().last().unwrap() + 0.5);
        probes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for pair in probes.windows(2) {
            assert!(
                d.cross_section(pair[0]).is_subset_of(d.cross_section(pair[1])),
                "sections shrink between {} and {} in fixture {index}",
                pair[0],
                pair[1]
            );
        }
    }
}

#[test]
fn left_component_is_left_of_cut_and_contains_origin() {
    for index in 0..20 {
        let d = koenigs::fixtures::random_domain(0xcu64, index);
        for t in [0.5, 1.5] {
            let (omega_t, gamma) = d.left_component(t).unwrap();
            assert!(omega_t.contains(Point::ORIGIN), "fixture {index}");
            assert!(omega_t.cross_section(t + 1e-9).is_empty());
            for seg in &gamma {
                assert_eq!(seg.x_range(), (t, t));
            }
            assert!(!gamma.is_empty(), "crosscut empty for fixture {index} at t={t}");
        }
    }
}

#[test]
fn strip_distance_example() {
    // The fixed examples from the distance contract.
    let strip = StaircaseDomain::strip(-1.0, 1.0);
    let (d, _) = strip.distance_to_boundary(Point::new(0.0, 0.25), &[]).unwrap();
    assert_eq!(d, 0.75);
    let slit = [Segment::slit_from(2.0)];
    let (d, idx) = strip.distance_to_boundary(Point::new(2.0, 0.5), &slit).unwrap();
    assert_eq!(d, 0.5);
    assert_eq!(idx, strip.boundary_segments().len(), "nearest should be the slit");
}
