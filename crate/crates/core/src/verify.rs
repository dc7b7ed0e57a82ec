//! Brute-force certification over all triples.
//!
//! This module deliberately avoids the Gram-matrix code in
//! [`crate::geometry`]: it works from pairwise squared distances and the
//! polarization identity `2 <p-q, r-q> = |p-q|^2 + |r-q|^2 - |p-r|^2`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use crate::bounds::{verify_cardinality_bounds, CardinalityReport, CardinalityStatus};
use crate::error::{Error, Result};
use crate::geometry::{PointSet, Tolerance, TripleWitness};
use crate::scalar::{Backend, LiftedValue, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Acute,
    Nonobtuse,
    Antipodal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Scan everything and report the exact minimum.
    #[default]
    Margin,
    /// Stop at the first failure.
    Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Acute,
    NonAcute,
    Nonobtuse,
    Obtuse,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(self, Verdict::Acute | Verdict::Nonobtuse)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<S> {
    pub check: Check,
    pub verdict: Verdict,
    pub passed: bool,
    pub mode: Mode,
    pub points: usize,
    pub margin: S,
    pub strict_margin: S,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<TripleWitness<S>>,
    pub triples_checked: u64,
    pub squared_diameter: S,
    pub backend: Backend,
    #[serde(rename = "elapsed_seconds")]
    pub elapsed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntipodalReport<S> {
    pub check: Check,
    /// Only the direction joining each pair is tried, so a failure does not
    /// rule out strict antipodality.
    pub method: &'static str,
    pub passed: bool,
    pub mode: Mode,
    pub points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_pair: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_point: Option<usize>,
    /// Smallest gap `min(<z-x, y-x>, |y-x|^2 - <z-x, y-x>)` seen.
    pub min_slack: S,
    pub pairs_checked: u64,
    pub backend: Backend,
    #[serde(rename = "elapsed_seconds")]
    pub elapsed: f64,
}

/// Squared distances on a lifted scale: `|x_i - x_j|^2 = at(i, j) * unit_sq`.
struct Distances<S: Scalar> {
    lower: Vec<S::Lifted>,
    unit_sq: S,
}

impl<S: Scalar> Distances<S> {
    fn new(ps: &PointSet<S>) -> Self {
        let n = ps.len();
        let d = ps.dim();
        let flat: Vec<&S> = ps.points().iter().flat_map(|p| p.coords()).collect();
        let (lifted, unit) = S::lift(&flat);
        let rows: Vec<&[S::Lifted]> = lifted.chunks(d).collect();
        // Row i holds the distances to points 0..i.
        let lower = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let rows = &rows;
                (0..i).map(move |j| <S::Lifted as LiftedValue>::squared_distance(rows[i], rows[j]))
            })
            .collect();
        Distances {
            lower,
            unit_sq: unit.clone() * unit,
        }
    }

    fn at(&self, i: usize, j: usize) -> &S::Lifted {
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        &self.lower[hi * (hi - 1) / 2 + lo]
    }

    /// `2 <p-q, r-q>` on the lifted scale.
    fn double_dot_into(&self, q: usize, p: usize, r: usize, out: &mut S::Lifted) {
        out.clone_from(self.at(q, p));
        *out += self.at(q, r);
        *out -= self.at(p, r);
    }

    fn half_unit_sq(&self) -> S {
        self.unit_sq.clone() * S::ratio(1, 2)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TriplePredicate {
    Acute,
    Nonobtuse,
}

struct Row<L> {
    best: Option<(L, [usize; 3])>,
    failure: Option<(L, [usize; 3])>,
}

pub fn verify_acute<S: Scalar>(ps: &PointSet<S>, tol: &Tolerance<S>) -> Result<VerificationReport<S>> {
    verify_acute_with(ps, tol, Mode::Margin)
}

pub fn verify_acute_with<S: Scalar>(
    ps: &PointSet<S>,
    tol: &Tolerance<S>,
    mode: Mode,
) -> Result<VerificationReport<S>> {
    verify_triples(ps, tol, TriplePredicate::Acute, mode)
}

pub fn verify_nonobtuse<S: Scalar>(ps: &PointSet<S>, tol: &Tolerance<S>) -> Result<VerificationReport<S>> {
    verify_nonobtuse_with(ps, tol, Mode::Margin)
}

pub fn verify_nonobtuse_with<S: Scalar>(
    ps: &PointSet<S>,
    tol: &Tolerance<S>,
    mode: Mode,
) -> Result<VerificationReport<S>> {
    verify_triples(ps, tol, TriplePredicate::Nonobtuse, mode)
}

fn verify_triples<S: Scalar>(
    ps: &PointSet<S>,
    tol: &Tolerance<S>,
    pred: TriplePredicate,
    mode: Mode,
) -> Result<VerificationReport<S>> {
    let started = Instant::now();
    let n = ps.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let dist = Distances::new(ps);
    let two_tol = S::from_int(2) * tol.strict_margin().clone();
    // Exact tolerances are zero, so flooring loses nothing for either sign.
    let limit = match pred {
        TriplePredicate::Acute => S::lifted_floor(&two_tol, &dist.unit_sq),
        TriplePredicate::Nonobtuse => S::lifted_floor(&-two_tol, &dist.unit_sq),
    };
    let fails = |v: &S::Lifted| match pred {
        TriplePredicate::Acute => *v <= limit,
        TriplePredicate::Nonobtuse => *v < limit,
    };
    let stop_early = mode == Mode::Verdict;
    let first_failing_row = AtomicUsize::new(usize::MAX);

    let rows: Vec<Row<S::Lifted>> = (0..n - 2)
        .into_par_iter()
        .map(|i| {
            let mut row = Row {
                best: None,
                failure: None,
            };
            if stop_early && i > first_failing_row.load(Ordering::Relaxed) {
                return row;
            }
            let mut v = <S::Lifted as LiftedValue>::zero();
            for j in i + 1..n {
                for k in j + 1..n {
                    for (q, p, r) in [(i, j, k), (j, i, k), (k, i, j)] {
                        dist.double_dot_into(q, p, r, &mut v);
                        if stop_early && fails(&v) {
                            first_failing_row.fetch_min(i, Ordering::Relaxed);
                            row.failure = Some((v, [q, p, r]));
                            return row;
                        }
                        if row.best.as_ref().is_none_or(|(b, _)| v < *b) {
                            row.best = Some((v.clone(), [q, p, r]));
                        }
                    }
                }
            }
            row
        })
        .collect();

    let half = dist.half_unit_sq();
    let to_witness = |(v, [q, p, r]): (S::Lifted, [usize; 3])| TripleWitness {
        apex_index: q,
        leg_index_1: p,
        leg_index_2: r,
        dot_value: S::unlift(&v, &half),
    };
    let failure = rows.iter().find_map(|r| r.failure.clone());
    let (witness, triples_checked) = match failure {
        Some(f) => {
            let [q, p, r] = f.1;
            let mut idx = [q, p, r];
            idx.sort_unstable();
            (to_witness(f), triples_up_to(n, idx))
        }
        None => {
            let mut best: Option<(S::Lifted, [usize; 3])> = None;
            for row in rows {
                if let Some(b) = row.best {
                    if best.as_ref().is_none_or(|(cur, _)| b.0 < *cur) {
                        best = Some(b);
                    }
                }
            }
            (to_witness(best.expect("n >= 3")), choose3(n))
        }
    };
    let margin = witness.dot_value.clone();
    let strict = tol.strict_margin().clone();
    let verdict = match pred {
        TriplePredicate::Acute if margin > strict => Verdict::Acute,
        TriplePredicate::Acute => Verdict::NonAcute,
        TriplePredicate::Nonobtuse if margin >= -strict.clone() => Verdict::Nonobtuse,
        TriplePredicate::Nonobtuse => Verdict::Obtuse,
    };
    let max_dist = (0..dist.lower.len())
        .fold(<S::Lifted as LiftedValue>::zero(), |m, i| {
            if dist.lower[i] > m {
                dist.lower[i].clone()
            } else {
                m
            }
        });
    let keep_witness = mode == Mode::Margin || !verdict.passed();
    Ok(VerificationReport {
        check: match pred {
            TriplePredicate::Acute => Check::Acute,
            TriplePredicate::Nonobtuse => Check::Nonobtuse,
        },
        verdict,
        passed: verdict.passed(),
        mode,
        points: n,
        margin,
        strict_margin: strict,
        witness: keep_witness.then_some(witness),
        triples_checked,
        squared_diameter: S::unlift(&max_dist, &dist.unit_sq),
        backend: S::BACKEND,
        elapsed: started.elapsed().as_secs_f64(),
    })
}

fn choose2(m: usize) -> u64 {
    let m = m as u64;
    m * m.saturating_sub(1) / 2
}

fn choose3(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

/// Position (1-based) of `i<j<k` in lexicographic triple order.
fn triples_up_to(n: usize, [i, j, k]: [usize; 3]) -> u64 {
    let before_i: u64 = (0..i).map(|a| choose2(n - 1 - a)).sum();
    let before_j: u64 = (i + 1..j).map(|b| (n - 1 - b) as u64).sum();
    before_i + before_j + (k - j) as u64
}

/// For every pair `(x, y)` checks `0 < <z-x, y-x> < |y-x|^2` for all other
/// `z`, i.e. the hyperplanes through `x` and `y` orthogonal to `y - x`
/// strictly separate the rest of the set.
pub fn verify_antipodal_witness<S: Scalar>(
    ps: &PointSet<S>,
    tol: &Tolerance<S>,
) -> Result<AntipodalReport<S>> {
    verify_antipodal_witness_with(ps, tol, Mode::Margin)
}

pub fn verify_antipodal_witness_with<S: Scalar>(
    ps: &PointSet<S>,
    tol: &Tolerance<S>,
    mode: Mode,
) -> Result<AntipodalReport<S>> {
    let started = Instant::now();
    let n = ps.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let dist = Distances::new(ps);
    let limit = S::lifted_floor(
        &(S::from_int(2) * tol.strict_margin().clone()),
        &dist.unit_sq,
    );
    let stop_early = mode == Mode::Verdict;
    let first_failing_row = AtomicUsize::new(usize::MAX);

    type Hit<L> = (L, [usize; 3]);
    let rows: Vec<(Option<Hit<S::Lifted>>, Option<Hit<S::Lifted>>)> = (0..n - 1)
        .into_par_iter()
        .map(|x| {
            let mut best: Option<Hit<S::Lifted>> = None;
            let mut failure = None;
            if stop_early && x > first_failing_row.load(Ordering::Relaxed) {
                return (best, failure);
            }
            let mut near = <S::Lifted as LiftedValue>::zero();
            let mut far = <S::Lifted as LiftedValue>::zero();
            for y in x + 1..n {
                let xy = dist.at(x, y);
                for z in 0..n {
                    if z == x || z == y {
                        continue;
                    }
                    // near = 2 <z-x, y-x>, far = 2 |y-x|^2 - near = 2 <z-y, x-y>.
                    dist.double_dot_into(x, z, y, &mut near);
                    far.clone_from(xy);
                    far += xy;
                    far -= &near;
                    let gap = if near <= far { &near } else { &far };
                    if best.as_ref().is_none_or(|(b, _)| gap < b) {
                        best = Some((gap.clone(), [x, y, z]));
                    }
                    if *gap <= limit && failure.is_none() {
                        failure = Some((gap.clone(), [x, y, z]));
                        if stop_early {
                            first_failing_row.fetch_min(x, Ordering::Relaxed);
                            return (best, failure);
                        }
                    }
                }
            }
            (best, failure)
        })
        .collect();

    let failure = rows.iter().find_map(|(_, f)| f.clone());
    let mut best: Option<Hit<S::Lifted>> = None;
    for (b, _) in rows.into_iter() {
        if let Some(b) = b {
            if best.as_ref().is_none_or(|(cur, _)| b.0 < *cur) {
                best = Some(b);
            }
        }
    }
    let half = dist.half_unit_sq();
    let pairs_checked = match &failure {
        Some((_, [x, y, _])) => {
            let before: u64 = (0..*x).map(|a| (n - 1 - a) as u64).sum();
            before + (y - x) as u64
        }
        None => choose2(n),
    };
    let slack_source = match (&failure, stop_early) {
        (Some(f), true) => f.0.clone(),
        _ => best.expect("n >= 3").0,
    };
    Ok(AntipodalReport {
        check: Check::Antipodal,
        method: "witness-based",
        passed: failure.is_none(),
        mode,
        points: n,
        failing_pair: failure.as_ref().map(|(_, [x, y, _])| (*x, *y)),
        failing_point: failure.as_ref().map(|(_, [_, _, z])| *z),
        min_slack: S::unlift(&slack_source, &half),
        pairs_checked,
        backend: S::BACKEND,
        elapsed: started.elapsed().as_secs_f64(),
    })
}
