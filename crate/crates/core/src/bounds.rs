//! Known cardinalities of acute sets, in exact integer arithmetic.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub d: usize,
    /// `2^(d-1) + 1`, the hypercube-plus-apex construction.
    pub construction: BigUint,
    /// `2^d - 1`.
    pub upper: BigUint,
    /// `F_(d+2)` with `F_1 = F_2 = 1`.
    pub fibonacci: BigUint,
    /// `floor(sqrt(4^(d-1) / 3^d))`, the random-vertex estimate `(2/sqrt 3)^d / 2` rounded down.
    pub random_vertices: BigUint,
    /// `2d - 1`.
    pub simplex_like: BigUint,
    /// `3^(floor(d/2) - 1) - 1`, strictly antipodal record; zero below d = 2.
    pub antipodal: BigUint,
}

pub fn fibonacci(k: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

fn pow(base: u32, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), e)
}

pub fn bounds_row(d: usize) -> Result<BoundsRow> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let half = d / 2;
    let antipodal = if half >= 1 {
        pow(3, half - 1) - BigUint::one()
    } else {
        BigUint::zero()
    };
    Ok(BoundsRow {
        d,
        construction: pow(2, d - 1) + BigUint::one(),
        upper: pow(2, d) - BigUint::one(),
        fibonacci: fibonacci(d + 2),
        random_vertices: (pow(4, d - 1) / pow(3, d)).sqrt(),
        simplex_like: BigUint::from(2 * d - 1),
        antipodal,
    })
}

pub fn bounds_table(dmin: usize, dmax: usize) -> Result<Vec<BoundsRow>> {
    if dmin < 2 {
        return Err(Error::UnsupportedDimension(dmin));
    }
    if dmax < dmin {
        return Err(Error::InvalidParameter(format!("empty range {dmin}..={dmax}")));
    }
    (dmin..=dmax).map(bounds_row).collect()
}

pub fn render_table(rows: &[BoundsRow]) -> String {
    let header = [
        "d",
        "2^(d-1)+1",
        "2^d-1",
        "F(d+2)",
        "EF",
        "2d-1",
        "3^(d/2-1)-1",
    ];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.d.to_string(),
                r.construction.to_string(),
                r.upper.to_string(),
                r.fibonacci.to_string(),
                r.random_vertices.to_string(),
                r.simplex_like.to_string(),
                r.antipodal.to_string(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cols: Vec<&str>| {
        cols.iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join(" | ")
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    out.push_str(
        &widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .join("-+-"),
    );
    out.push('\n');
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CardinalityStatus {
    /// More than `2^d - 1` points: impossible, so something upstream is wrong.
    ExceedsUpper,
    MatchesConstruction,
    /// Above the construction but within the upper bound.
    Between,
    BelowConstruction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CardinalityReport {
    pub d: usize,
    #[serde(serialize_with = "decimal")]
    pub n: BigUint,
    pub status: CardinalityStatus,
    #[serde(serialize_with = "decimal")]
    pub construction: BigUint,
    #[serde(serialize_with = "decimal")]
    pub upper: BigUint,
    /// Best earlier lower bound: `max(2d - 1, F_(d+2), EF)`.
    #[serde(serialize_with = "decimal")]
    pub prior_record: BigUint,
    pub note: String,
}

fn decimal<Se: Serializer>(n: &BigUint, s: Se) -> Result<Se::Ok, Se::Error> {
    s.serialize_str(&n.to_string())
}

pub fn verify_cardinality_bounds(d: usize, n: u64) -> Result<CardinalityReport> {
    let row = bounds_row(d)?;
    let n = BigUint::from(n);
    let prior = row
        .simplex_like
        .clone()
        .max(row.fibonacci.clone())
        .max(row.random_vertices.clone());
    let (status, note) = if n > row.upper {
        (
            CardinalityStatus::ExceedsUpper,
            format!("{n} exceeds the upper bound {}; likely a verification bug", row.upper),
        )
    } else if n == row.construction {
        (
            CardinalityStatus::MatchesConstruction,
            format!("matches 2^{}+1 = {}", d - 1, row.construction),
        )
    } else if n > row.construction {
        (
            CardinalityStatus::Between,
            format!("above {} and within the upper bound {}", row.construction, row.upper),
        )
    } else {
        (
            CardinalityStatus::BelowConstruction,
            format!(
                "below {}; prior record was {}",
                row.construction, prior
            ),
        )
    };
    Ok(CardinalityReport {
        d,
        n,
        status,
        construction: row.construction,
        upper: row.upper,
        prior_record: prior,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(r: &BoundsRow) -> [String; 6] {
        [
            r.construction.to_string(),
            r.upper.to_string(),
            r.fibonacci.to_string(),
            r.random_vertices.to_string(),
            r.simplex_like.to_string(),
            r.antipodal.to_string(),
        ]
    }

    #[test]
    fn known_rows() {
        assert_eq!(cols(&bounds_row(5).unwrap()), ["17", "31", "13", "1", "9", "2"]);
        assert_eq!(cols(&bounds_row(4).unwrap()), ["9", "15", "8", "0", "7", "2"]);
        assert_eq!(cols(&bounds_row(3).unwrap()), ["5", "7", "5", "0", "5", "0"]);
        assert_eq!(bounds_row(10).unwrap().antipodal, BigUint::from(80u32));
        assert!(bounds_table(1, 3).is_err());
    }

    #[test]
    fn fibonacci_values() {
        let f: Vec<String> = (0..10).map(|k| fibonacci(k).to_string()).collect();
        assert_eq!(f, ["0", "1", "1", "2", "3", "5", "8", "13", "21", "34"]);
    }

    #[test]
    fn cardinality_statuses() {
        let r = verify_cardinality_bounds(5, 17).unwrap();
        assert_eq!(r.status, CardinalityStatus::MatchesConstruction);
        let r = verify_cardinality_bounds(5, 32).unwrap();
        assert_eq!(r.status, CardinalityStatus::ExceedsUpper);
        let r = verify_cardinality_bounds(4, 8).unwrap();
        assert_eq!(r.status, CardinalityStatus::BelowConstruction);
        assert_eq!(r.prior_record, BigUint::from(8u32));
        let r = verify_cardinality_bounds(5, 20).unwrap();
        assert_eq!(r.status, CardinalityStatus::Between);
    }
}
