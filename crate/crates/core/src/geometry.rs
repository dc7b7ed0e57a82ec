//! Points, point sets and the dot-product predicates built on them.
//!
//! An angle is classified by the sign of its apex dot `<p - q, r - q>`;
//! no square roots or cosines are ever taken.

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::ConstructionTrace;
use crate::error::{Error, Result};
use crate::scalar::{Backend, LiftedValue, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn sub(&self, other: &Self) -> Result<Vec<S>> {
        check_dims(self, other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() - b.clone())
            .collect())
    }

    pub fn squared_distance(&self, other: &Self) -> Result<S> {
        Ok(norm_sq(&self.sub(other)?))
    }
}

fn check_dims<S: Scalar>(a: &Point<S>, b: &Point<S>) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

pub fn dot<S: Scalar>(u: &[S], v: &[S]) -> S {
    u.iter()
        .zip(v)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

pub fn norm_sq<S: Scalar>(u: &[S]) -> S {
    dot(u, u)
}

/// Ordered collection of distinct points of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<S> {
    dim: usize,
    points: Vec<Point<S>>,
    provenance: Option<ConstructionTrace<S>>,
}

impl<S: Scalar> PointSet<S> {
    pub fn new(dim: usize, points: Vec<Point<S>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyPoint);
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
        for pair in order.windows(2) {
            if points[pair[0]] == points[pair[1]] {
                let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                return Err(Error::CoincidentPoints(a, b));
            }
        }
        Ok(PointSet {
            dim,
            points,
            provenance: None,
        })
    }

    pub fn from_coords(dim: usize, rows: Vec<Vec<S>>) -> Result<Self> {
        let points = rows.into_iter().map(Point::new).collect::<Result<_>>()?;
        Self::new(dim, points)
    }

    pub fn with_provenance(mut self, trace: ConstructionTrace<S>) -> Self {
        self.provenance = Some(trace);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn backend(&self) -> Backend {
        S::BACKEND
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point<S> {
        &self.points[i]
    }

    pub fn provenance(&self) -> Option<&ConstructionTrace<S>> {
        self.provenance.as_ref()
    }

    pub fn into_points(self) -> Vec<Point<S>> {
        self.points
    }

    /// Reorders points so that new index `i` holds old point `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let points = perm.iter().map(|&i| self.points[i].clone()).collect();
        Self::new(self.dim, points)
    }
}

/// A triple that fails (or, in margin mode, is weakest for) the predicate.
/// The apex is listed first and the legs are in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleWitness<S> {
    pub apex_index: usize,
    pub leg_index_1: usize,
    pub leg_index_2: usize,
    pub dot_value: S,
}

impl<S> TripleWitness<S> {
    pub fn sorted_indices(&self) -> [usize; 3] {
        let mut idx = [self.apex_index, self.leg_index_1, self.leg_index_2];
        idx.sort_unstable();
        idx
    }
}

/// Smallest dot product still accepted as an acute angle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tolerance<S> {
    strict_margin: S,
}

impl<S: Scalar> Tolerance<S> {
    /// Exact backends only accept zero; float backends need a positive margin.
    pub fn new(strict_margin: S) -> Result<Self> {
        if S::BACKEND.is_exact() {
            if strict_margin != S::zero() {
                return Err(Error::InvalidTolerance(
                    "exact arithmetic uses a zero strict margin".into(),
                ));
            }
        } else if !strict_margin.is_positive() {
            return Err(Error::InvalidTolerance(
                "float arithmetic needs a positive strict margin".into(),
            ));
        }
        Ok(Tolerance { strict_margin })
    }

    /// Default for a set: zero when exact, `1e-9 * (1 + D^2)` for floats.
    pub fn for_set(ps: &PointSet<S>) -> Result<Self> {
        let diam = if ps.len() >= 2 {
            squared_diameter(ps)?
        } else {
            S::zero()
        };
        Self::new(S::default_strict_margin(&diam))
    }

    pub fn strict_margin(&self) -> &S {
        &self.strict_margin
    }
}

pub fn dot_at_apex<S: Scalar>(q: &Point<S>, p: &Point<S>, r: &Point<S>) -> Result<S> {
    Ok(dot(&p.sub(q)?, &r.sub(q)?))
}

pub fn triangle_margin<S: Scalar>(p1: &Point<S>, p2: &Point<S>, p3: &Point<S>) -> Result<S> {
    check_dims(p1, p2)?;
    check_dims(p1, p3)?;
    if p1 == p2 {
        return Err(Error::CoincidentPoints(0, 1));
    }
    if p1 == p3 {
        return Err(Error::CoincidentPoints(0, 2));
    }
    if p2 == p3 {
        return Err(Error::CoincidentPoints(1, 2));
    }
    let a = dot_at_apex(p1, p2, p3)?;
    let b = dot_at_apex(p2, p1, p3)?;
    let c = dot_at_apex(p3, p1, p2)?;
    Ok(a.min_of(b).min_of(c))
}

pub fn squared_diameter<S: Scalar>(ps: &PointSet<S>) -> Result<S> {
    if ps.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: ps.len(),
        });
    }
    let gram = Gram::new(ps);
    let n = ps.len();
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut best = <S::Lifted as LiftedValue>::zero();
            let mut d = <S::Lifted as LiftedValue>::zero();
            for j in i + 1..n {
                d.clone_from(gram.entry(i, i));
                d += gram.entry(j, j);
                d -= gram.entry(i, j);
                d -= gram.entry(i, j);
                if d > best {
                    best.clone_from(&d);
                }
            }
            best
        })
        .reduce(
            <S::Lifted as LiftedValue>::zero,
            |a, b| if b > a { b } else { a },
        );
    Ok(S::unlift(&best, gram.unit_sq()))
}

/// Gram matrix of a point set on a common lifted scale:
/// `<x_i, x_j> = entry(i, j) * unit_sq`.
pub struct Gram<S: Scalar> {
    n: usize,
    entries: Vec<S::Lifted>,
    unit_sq: S,
}

impl<S: Scalar> Gram<S> {
    pub fn new(ps: &PointSet<S>) -> Self {
        let n = ps.len();
        let d = ps.dim();
        let all: Vec<&S> = ps.points().iter().flat_map(|p| p.coords()).collect();
        let (lifted, unit) = S::lift(&all);
        let rows: Vec<&[S::Lifted]> = lifted.chunks(d).collect();
        let upper: Vec<Vec<S::Lifted>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (i..n)
                    .map(|j| <S::Lifted as LiftedValue>::dot(rows[i], rows[j]))
                    .collect()
            })
            .collect();
        let mut entries = vec![<S::Lifted as LiftedValue>::zero(); n * n];
        for (i, row) in upper.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                let j = i + off;
                if i != j {
                    entries[j * n + i] = v.clone();
                }
                entries[i * n + j] = v;
            }
        }
        Gram {
            n,
            entries,
            unit_sq: unit.clone() * unit,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn entry(&self, i: usize, j: usize) -> &S::Lifted {
        &self.entries[i * self.n + j]
    }

    pub fn unit_sq(&self) -> &S {
        &self.unit_sq
    }

    /// Writes the lifted apex dot `<x_p - x_q, x_r - x_q>` into `out`.
    pub fn apex_dot_into(&self, q: usize, p: usize, r: usize, out: &mut S::Lifted) {
        out.clone_from(self.entry(p, r));
        *out += self.entry(q, q);
        *out -= self.entry(q, p);
        *out -= self.entry(q, r);
    }

    pub fn apex_dot(&self, q: usize, p: usize, r: usize) -> S {
        let mut out = <S::Lifted as LiftedValue>::zero();
        self.apex_dot_into(q, p, r, &mut out);
        S::unlift(&out, &self.unit_sq)
    }

    /// Lifted threshold `t` such that a dot is at most `bound` iff its
    /// lifted value is at most `t`.
    pub fn threshold(&self, bound: &S) -> S::Lifted {
        S::lifted_floor(bound, &self.unit_sq)
    }
}

struct RowBest<L> {
    value: L,
    witness: [usize; 3],
}

/// Minimum apex dot over all triples with the lexicographically first
/// argmin triple (apex first, then legs in index order).
pub fn set_margin<S: Scalar>(ps: &PointSet<S>) -> Result<(S, TripleWitness<S>)> {
    let n = ps.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let gram = Gram::new(ps);
    let rows: Vec<Option<RowBest<S::Lifted>>> = (0..n - 2)
        .into_par_iter()
        .map(|i| margin_row(&gram, i))
        .collect();
    let mut best: Option<RowBest<S::Lifted>> = None;
    for row in rows.into_iter().flatten() {
        match &best {
            Some(b) if !(row.value < b.value) => {}
            _ => best = Some(row),
        }
    }
    let best = best.expect("at least one triple");
    let dot_value = S::unlift(&best.value, gram.unit_sq());
    let [apex, l1, l2] = best.witness;
    Ok((
        dot_value.clone(),
        TripleWitness {
            apex_index: apex,
            leg_index_1: l1,
            leg_index_2: l2,
            dot_value,
        },
    ))
}

fn margin_row<S: Scalar>(gram: &Gram<S>, i: usize) -> Option<RowBest<S::Lifted>> {
    let n = gram.len();
    let mut scratch = <S::Lifted as LiftedValue>::zero();
    let mut best: Option<RowBest<S::Lifted>> = None;
    for j in i + 1..n {
        for k in j + 1..n {
            for (apex, l1, l2) in [(i, j, k), (j, i, k), (k, i, j)] {
                gram.apex_dot_into(apex, l1, l2, &mut scratch);
                let better = match &best {
                    None => true,
                    Some(b) => scratch < b.value,
                };
                if better {
                    match &mut best {
                        Some(b) => {
                            b.value.clone_from(&scratch);
                            b.witness = [apex, l1, l2];
                        }
                        None => {
                            best = Some(RowBest {
                                value: scratch.clone(),
                                witness: [apex, l1, l2],
                            })
                        }
                    }
                }
            }
        }
    }
    best
}

/// First triple in `i<j<k` order (apexes tried in index order) whose apex
/// dot is at most `bound`.
pub fn first_dot_at_most<S: Scalar>(ps: &PointSet<S>, bound: &S) -> Result<Option<TripleWitness<S>>> {
    let n = ps.len();
    if n < 3 {
        return Ok(None);
    }
    let gram = Gram::new(ps);
    let t = gram.threshold(bound);
    let hit = (0..n - 2).into_par_iter().find_map_first(|i| {
        let mut scratch = <S::Lifted as LiftedValue>::zero();
        for j in i + 1..n {
            for k in j + 1..n {
                for (apex, l1, l2) in [(i, j, k), (j, i, k), (k, i, j)] {
                    gram.apex_dot_into(apex, l1, l2, &mut scratch);
                    if scratch <= t {
                        return Some((apex, l1, l2, scratch));
                    }
                }
            }
        }
        None
    });
    Ok(hit.map(|(apex, l1, l2, v)| TripleWitness {
        apex_index: apex,
        leg_index_1: l1,
        leg_index_2: l2,
        dot_value: S::unlift(&v, gram.unit_sq()),
    }))
}
