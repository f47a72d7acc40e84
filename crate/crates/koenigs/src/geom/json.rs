//! JSON wire format for staircase domains.
//!
//! ```json
//! { "breakpoints": [x1, ...], "sections": [ [ [lo, hi], ... ], ... ] }
//! ```
//!
//! Endpoints are IEEE doubles in decimal; infinite endpoints use the string
//! sentinels `"inf"` and `"-inf"`. `sections` has exactly one more entry than
//! `breakpoints`.

use serde::{Deserialize, Serialize};

use super::domain::{GeomError, StaircaseDomain};
use super::interval::IntervalSet;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Endpoint {
    Num(f64),
    Sentinel(String),
}

impl Endpoint {
    fn encode(x: f64) -> Endpoint {
        if x == f64::INFINITY {
            Endpoint::Sentinel("inf".to_string())
        } else if x == f64::NEG_INFINITY {
            Endpoint::Sentinel("-inf".to_string())
        } else {
            Endpoint::Num(x)
        }
    }

    fn decode(&self) -> Result<f64, JsonError> {
        match self {
            Endpoint::Num(x) => Ok(*x),
            Endpoint::Sentinel(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(JsonError::BadSentinel(other.to_string())),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DomainWire {
    breakpoints: Vec<f64>,
    sections: Vec<Vec<(Endpoint, Endpoint)>>,
}

#[derive(Debug)]
pub enum JsonError {
    Parse(serde_json::Error),
    BadSentinel(String),
    Geometry(GeomError),
}

impl std::fmt::Display for JsonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JsonError::Parse(e) => write!(f, "invalid domain JSON: {e}"),
            JsonError::BadSentinel(s) => {
                write!(f, "invalid endpoint sentinel {s:?} (expected \"inf\" or \"-inf\")")
            }
            JsonError::Geometry(e) => write!(f, "invalid domain: {e}"),
        }
    }
}

impl std::error::Error for JsonError {}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Parse(e)
    }
}

impl From<GeomError> for JsonError {
    fn from(e: GeomError) -> Self {
        JsonError::Geometry(e)
    }
}

/// Serializes a domain to its JSON wire form.
pub fn domain_to_json(domain: &StaircaseDomain) -> String {
    let wire = DomainWire {
        breakpoints: domain.breakpoints().to_vec(),
        sections: domain
            .sections()
            .iter()
            .map(|s| {
                s.intervals()
                    .iter()
                    .map(|&(lo, hi)| (Endpoint::encode(lo), Endpoint::encode(hi)))
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string(&wire).expect("domain wire form serializes")
}

/// Parses the JSON wire form back into a domain.
pub fn domain_from_json(text: &str) -> Result<StaircaseDomain, JsonError> {
    let wire: DomainWire = serde_json::from_str(text)?;
    let mut sections = Vec::with_capacity(wire.sections.len());
    for sec in &wire.sections {
        let mut intervals = Vec::with_capacity(sec.len());
        for (lo, hi) in sec {
            intervals.push((lo.decode()?, hi.decode()?));
        }
        sections.push(IntervalSet::try_new(intervals).map_err(GeomError::from)?);
    }
    Ok(StaircaseDomain::try_new(wire.breakpoints, sections)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    #[test]
    fn round_trip_with_infinite_endpoints() {
        let hp = StaircaseDomain::half_plane(-1.0);
        let text = domain_to_json(&hp);
        assert_eq!(text, r#"{"breakpoints":[-1.0],"sections":[[],[["-inf","inf"]]]}"#);
        let back = domain_from_json(&text).unwrap();
        assert_eq!(back, hp);
    }

    #[test]
    fn round_trip_finite_domain() {
        let d = StaircaseDomain::try_new(
            vec![-0.25, 0.25],
            vec![
                IntervalSet::empty(),
                IntervalSet::single(-1.0, 0.5),
                IntervalSet::try_new(vec![(-1.0, 0.5), (1.0, 1.5)]).unwrap(),
            ],
        )
        .unwrap();
        let back = domain_from_json(&domain_to_json(&d)).unwrap();
        assert_eq!(back, d);
        assert!(back.contains(Point::ORIGIN));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(domain_from_json("{").is_err());
        assert!(domain_from_json(r#"{"breakpoints":[0.0],"sections":[[]]}"#).is_err());
        assert!(
            domain_from_json(r#"{"breakpoints":[],"sections":[[["oops",1.0]]]}"#).is_err()
        );
        assert!(
            domain_from_json(r#"{"breakpoints":[],"sections":[[[2.0,1.0]]]}"#).is_err()
        );
    }
}
