//! Point-set files. JSON is canonical and lossless; CSV is a float-only
//! export.
//!
//! ```json
//! {"dim": 2, "backend": "rational", "points": [["0/1", "1/2"], ["1/1", "0/1"]]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::construct::ConstructionTrace;
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::scalar::{Backend, Float, Rational, Scalar};

#[derive(Serialize)]
struct FileOut<'a, S: Scalar> {
    dim: usize,
    backend: Backend,
    points: Vec<&'a [S]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a ConstructionTrace<S>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "S: Deserialize<'de>")]
struct FileIn<S> {
    dim: usize,
    backend: Backend,
    points: Vec<Vec<S>>,
    trace: Option<ConstructionTrace<S>>,
}

/// A point set read from disk, in whichever backend the file declares.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPointSet {
    Rational(PointSet<Rational>),
    Float(PointSet<Float>),
}

impl AnyPointSet {
    pub fn backend(&self) -> Backend {
        match self {
            AnyPointSet::Rational(_) => Backend::Rational,
            AnyPointSet::Float(_) => Backend::Float64,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyPointSet::Rational(ps) => ps.len(),
            AnyPointSet::Float(ps) => ps.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyPointSet::Rational(ps) => ps.dim(),
            AnyPointSet::Float(ps) => ps.dim(),
        }
    }
}

pub fn to_json<S: Scalar>(ps: &PointSet<S>) -> Result<String> {
    let file = FileOut {
        dim: ps.dim(),
        backend: S::BACKEND,
        points: ps.points().iter().map(|p| p.coords()).collect(),
        trace: ps.provenance(),
    };
    serde_json::to_string_pretty(&file).map_err(|e| Error::Format(e.to_string()))
}

fn typed<S: Scalar + for<'de> Deserialize<'de>>(value: Value) -> Result<PointSet<S>> {
    let file: FileIn<S> = serde_json::from_value(value).map_err(|e| Error::Format(e.to_string()))?;
    if file.backend != S::BACKEND {
        return Err(Error::BackendMismatch {
            expected: S::BACKEND,
            found: file.backend,
        });
    }
    let mut ps = PointSet::from_coords(file.dim, file.points)?;
    if let Some(trace) = file.trace {
        ps = ps.with_provenance(trace);
    }
    Ok(ps)
}

pub fn from_json(text: &str) -> Result<AnyPointSet> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let backend: Backend = value
        .get("backend")
        .cloned()
        .ok_or_else(|| Error::Format("missing \"backend\"".into()))
        .and_then(|b| serde_json::from_value(b).map_err(|e| Error::Format(e.to_string())))?;
    match backend {
        Backend::Rational => typed(value).map(AnyPointSet::Rational),
        Backend::Float64 => typed(value).map(AnyPointSet::Float),
    }
}

/// Reads a file that must use backend `S`.
pub fn from_json_as<S: Scalar + for<'de> Deserialize<'de>>(text: &str) -> Result<PointSet<S>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let found: Backend = value
        .get("backend")
        .cloned()
        .ok_or_else(|| Error::Format("missing \"backend\"".into()))
        .and_then(|b| serde_json::from_value(b).map_err(|e| Error::Format(e.to_string())))?;
    if found != S::BACKEND {
        return Err(Error::BackendMismatch {
            expected: S::BACKEND,
            found,
        });
    }
    typed(value)
}

/// One point per row under a `x0,..,x{d-1}` header. Exact values are
/// rounded to the nearest float.
pub fn to_csv<S: Scalar>(ps: &PointSet<S>) -> String {
    let mut out = (0..ps.dim())
        .map(|i| format!("x{i}"))
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    for p in ps.points() {
        let row: Vec<String> = p.coords().iter().map(|c| format!("{:?}", c.to_f64())).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn read_point_set(path: &Path) -> Result<AnyPointSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_full, ConstructionConfig};

    #[test]
    fn rational_round_trip_keeps_trace() {
        let (ps, _) = construct_full(&ConstructionConfig::<Rational>::new(3)).unwrap();
        let text = to_json(&ps).unwrap();
        assert!(text.contains("\"backend\": \"rational\""));
        match from_json(&text).unwrap() {
            AnyPointSet::Rational(back) => assert_eq!(back, ps),
            other => panic!("wrong backend {:?}", other.backend()),
        }
    }

    #[test]
    fn float_round_trip_is_bit_exact() {
        let rows = vec![
            vec![Float::new(0.1).unwrap(), Float::new(1e-300).unwrap()],
            vec![Float::new(-2.5).unwrap(), Float::new(1.0 / 3.0).unwrap()],
        ];
        let ps = PointSet::from_coords(2, rows).unwrap();
        let back: PointSet<Float> = from_json_as(&to_json(&ps).unwrap()).unwrap();
        assert_eq!(back, ps);
    }

    #[test]
    fn rejects_bad_files() {
        let ragged = r#"{"dim":2,"backend":"rational","points":[["1","2"],["3"]]}"#;
        assert!(matches!(from_json(ragged), Err(Error::DimensionMismatch { .. })));
        let bad = r#"{"dim":1,"backend":"rational","points":[["1/0"]]}"#;
        assert!(matches!(from_json(bad), Err(Error::Format(_))));
        let nob = r#"{"dim":1,"points":[]}"#;
        assert!(from_json(nob).is_err());
        let f = r#"{"dim":1,"backend":"float64","points":[[1.5]]}"#;
        assert!(matches!(
            from_json_as::<Rational>(f),
            Err(Error::BackendMismatch { .. })
        ));
        let decimal = r#"{"dim":1,"backend":"rational","points":[[0.1],["2/4"]]}"#;
        match from_json(decimal).unwrap() {
            AnyPointSet::Rational(ps) => {
                assert_eq!(ps.point(0).coords()[0], Rational::ratio(1, 10));
                assert_eq!(ps.point(1).coords()[0], Rational::ratio(1, 2));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn csv_has_header() {
        let ps = PointSet::from_coords(2, vec![vec![Rational::ratio(1, 2), Rational::from_int(3)]]).unwrap();
        assert_eq!(to_csv(&ps), "x0,x1\n0.5,3.0\n");
    }
}
