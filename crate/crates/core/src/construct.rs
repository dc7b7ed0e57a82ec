//! Point-set constructions: the embedded hypercube, single-vertex
//! perturbation, full sweeps under an adaptive or geometric schedule, the
//! apex point and a random greedy baseline.
//!
//! Every perturbed vertex is `(a, .., a, b)`-shifted from its cube vertex,
//! with `a = (d-1) s^2 / lambda` and `b = (d-1) s`, so `b^2 = lambda (d-1) a`.
//! `lambda = 1` is the tight coupling; the sweeps default to `lambda = 2`,
//! which leaves slack in the inequality `b^2 >= (d-1) a` that later steps
//! can spend.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    dot_at_apex, first_dot_at_most, squared_diameter, Gram, Point, PointSet, Tolerance,
};
use crate::scalar::{LiftedValue, Rational, Scalar};

/// Largest supported dimension; the cube has `2^(d-1)` vertices.
pub const MAX_DIM: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule<S> {
    /// Step sizes derived from the safe radius of the current mixed set.
    Adaptive,
    /// `s_i = s1 * gamma^i`, retried with `s1` halved on failure.
    Geometric { s1: S, gamma: S },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleKind {
    Adaptive,
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionConfig<S> {
    pub dim: usize,
    pub schedule: Schedule<S>,
    /// Height `c` of the apex above the cube centre.
    pub apex_height: S,
    /// The coupling `lambda` in `b^2 = lambda (d-1) a`; at least 1.
    pub coupling: S,
    pub max_retries: u32,
    /// Adaptive schedule only: give up once a step size needs more bits.
    pub max_bits: u64,
    /// Used by the random baseline only.
    pub seed: u64,
}

impl<S: Scalar> ConstructionConfig<S> {
    /// Geometric schedule with `s1 = 1/10` and `gamma = 1/(2(d-1))`.
    pub fn new(dim: usize) -> Self {
        let gamma = if dim >= 2 {
            S::ratio(1, 2 * (dim as i64 - 1))
        } else {
            S::ratio(1, 4)
        };
        ConstructionConfig {
            dim,
            schedule: Schedule::Geometric {
                s1: S::ratio(1, 10),
                gamma,
            },
            apex_height: S::ratio(dim as i64, 2),
            coupling: S::from_int(2),
            max_retries: 40,
            max_bits: 1 << 20,
            seed: 0,
        }
    }

    pub fn adaptive(dim: usize) -> Self {
        ConstructionConfig {
            schedule: Schedule::Adaptive,
            ..Self::new(dim)
        }
    }

    pub fn geometric(dim: usize, s1: S, gamma: S) -> Self {
        ConstructionConfig {
            schedule: Schedule::Geometric { s1, gamma },
            ..Self::new(dim)
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_dim(self.dim)?;
        check_apex_height(self.dim, &self.apex_height)?;
        if self.coupling < S::one() {
            return Err(Error::InvalidParameter("coupling must be at least 1".into()));
        }
        if let Schedule::Geometric { s1, gamma } = &self.schedule {
            if !s1.is_positive() {
                return Err(Error::InvalidParameter("s1 must be positive".into()));
            }
            if !gamma.is_positive() || *gamma >= S::one() {
                return Err(Error::InvalidParameter("gamma must lie in (0, 1)".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep<S> {
    /// Index of the cube vertex moved at this step.
    pub index: usize,
    /// Bound on the displacement of this vertex.
    pub epsilon: S,
    pub s: S,
    pub a: S,
    pub b: S,
    /// Adaptive only: minimum margin over the acute triples before the move.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace<S> {
    pub schedule: ScheduleKind,
    pub coupling: S,
    pub vertex_order: Vec<usize>,
    pub steps: Vec<TraceStep<S>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s1: Option<S>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<S>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apex_height: Option<S>,
    /// Geometric only: number of halvings of `s1` that were needed.
    pub retries: u32,
}

fn check_dim(d: usize) -> Result<()> {
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(())
}

fn check_apex_height<S: Scalar>(d: usize, c: &S) -> Result<()> {
    // c > sqrt(d-1)/2, decided on squares.
    let four_c_sq = S::from_int(4) * c.clone() * c.clone();
    if !c.is_positive() || four_c_sq <= S::from_int(d as i64 - 1) {
        return Err(Error::InvalidParameter(format!(
            "apex height must exceed sqrt({})/2",
            d - 1
        )));
    }
    Ok(())
}

/// The `2^(d-1)` points of `{0,1}^(d-1) x {0}` in binary-counter order.
pub fn hypercube_vertices<S: Scalar>(d: usize) -> Result<PointSet<S>> {
    check_dim(d)?;
    let n = 1usize << (d - 1);
    let points = (0..n)
        .map(|i| {
            let mut coords: Vec<S> = (0..d - 1)
                .map(|bit| {
                    if i >> (d - 2 - bit) & 1 == 1 {
                        S::one()
                    } else {
                        S::zero()
                    }
                })
                .collect();
            coords.push(S::zero());
            Point::new(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(d, points)
}

/// `(a, b)` for step size `s`: `a = (d-1) s^2 / lambda`, `b = (d-1) s`.
pub fn shift_parameters<S: Scalar>(d: usize, s: &S, coupling: &S) -> Result<(S, S)> {
    let k = S::from_int(d as i64 - 1);
    let b = k.clone() * s.clone();
    let a = (k * s.clone() * s.clone()).checked_div(coupling)?;
    Ok((a, b))
}

/// Moves a cube vertex toward the cube centre by `a` in every cube
/// coordinate and lifts it by `b`, with the tight coupling `b^2 = (d-1) a`.
pub fn perturb_vertex<S: Scalar>(v: &Point<S>, s: &S) -> Result<Point<S>> {
    perturb_vertex_coupled(v, s, &S::one())
}

pub fn perturb_vertex_coupled<S: Scalar>(v: &Point<S>, s: &S, coupling: &S) -> Result<Point<S>> {
    let d = v.dim();
    check_dim(d)?;
    let coords = v.coords();
    let is_vertex = coords[..d - 1]
        .iter()
        .all(|c| *c == S::zero() || *c == S::one())
        && coords[d - 1] == S::zero();
    if !is_vertex {
        return Err(Error::NotAVertex);
    }
    if !s.is_positive() {
        return Err(Error::InvalidParameter("step size must be positive".into()));
    }
    if *coupling < S::one() {
        return Err(Error::InvalidParameter("coupling must be at least 1".into()));
    }
    let (a, b) = shift_parameters(d, s, coupling)?;
    if a >= S::one() {
        return Err(Error::InvalidParameter(
            "step size too large: need (d-1) s^2 < coupling".into(),
        ));
    }
    let one_minus_a = S::one() - a.clone();
    let mut out: Vec<S> = coords[..d - 1]
        .iter()
        .map(|c| {
            if *c == S::zero() {
                a.clone()
            } else {
                one_minus_a.clone()
            }
        })
        .collect();
    out.push(b);
    Point::new(out)
}

/// Moves the origin vertex with step `s` and checks every angle `x'yz` and
/// `yx'z` against the remaining cube vertices.
pub fn lemma_check<S: Scalar>(d: usize, s: &S) -> Result<bool> {
    let cube = hypercube_vertices::<S>(d)?;
    let moved = perturb_vertex(cube.point(0), s)?;
    let rest = &cube.points()[1..];
    for (yi, y) in rest.iter().enumerate() {
        for (zi, z) in rest.iter().enumerate() {
            if yi == zi {
                continue;
            }
            if !dot_at_apex(y, &moved, z)?.is_positive() {
                return Ok(false);
            }
            if !dot_at_apex(&moved, y, z)?.is_positive() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Radius `delta` such that moving every point by at most `delta` keeps
/// each triple with margin at least `m` acute.
pub fn safe_radius<S: Scalar>(ps: &PointSet<S>, current_margin: &S) -> Result<S> {
    if !current_margin.is_positive() {
        return Err(Error::NonPositiveMargin);
    }
    let d_hat = squared_diameter(ps)?.ceil_sqrt();
    safe_radius_from_bound(current_margin, &d_hat)
}

/// `min(1/4, m / (2 (2 D + 1)))` for a diameter bound `D`.
///
/// A dot product of two edge vectors changes by at most
/// `4 delta (D + delta)` when each point moves by `delta`, which is strictly
/// below `m` for this choice.
pub fn safe_radius_from_bound<S: Scalar>(margin: &S, diameter_bound: &S) -> Result<S> {
    if !margin.is_positive() {
        return Err(Error::NonPositiveMargin);
    }
    if *diameter_bound < S::zero() {
        return Err(Error::InvalidParameter("diameter bound must be non-negative".into()));
    }
    let denom = S::from_int(2) * (S::from_int(2) * diameter_bound.clone() + S::one());
    let delta = margin.checked_div(&denom)?;
    Ok(delta.min_of(S::ratio(1, 4)))
}

/// `(1/2, .., 1/2, c)`, equidistant from every cube vertex.
pub fn apex_point<S: Scalar>(d: usize, c: &S) -> Result<Point<S>> {
    check_dim(d)?;
    check_apex_height(d, c)?;
    let mut coords = vec![S::ratio(1, 2); d - 1];
    coords.push(c.clone());
    Point::new(coords)
}

/// Minimum triangle margin over the triples whose three apex dots are all
/// positive, or `None` when no triple is acute.
pub fn acute_triple_margin<S: Scalar>(ps: &PointSet<S>) -> Option<S> {
    let n = ps.len();
    if n < 3 {
        return None;
    }
    let gram = Gram::new(ps);
    let zero = <S::Lifted as LiftedValue>::zero();
    let mut best: Option<S::Lifted> = None;
    let mut dots = [zero.clone(), zero.clone(), zero.clone()];
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                gram.apex_dot_into(i, j, k, &mut dots[0]);
                gram.apex_dot_into(j, i, k, &mut dots[1]);
                gram.apex_dot_into(k, i, j, &mut dots[2]);
                if dots.iter().any(|v| *v <= zero) {
                    continue;
                }
                for v in &dots {
                    if best.as_ref().is_none_or(|b| v < b) {
                        best = Some(v.clone());
                    }
                }
            }
        }
    }
    best.map(|b| S::unlift(&b, gram.unit_sq()))
}

/// Perturbs all cube vertices. The result has `2^(d-1)` points and is
/// certified acute (exactly, or with the default float tolerance).
pub fn construct_acute_cube<S: Scalar>(
    cfg: &ConstructionConfig<S>,
) -> Result<(PointSet<S>, ConstructionTrace<S>)> {
    build(cfg, false)
}

/// [`construct_acute_cube`] plus the apex point, `2^(d-1) + 1` points.
pub fn construct_full<S: Scalar>(
    cfg: &ConstructionConfig<S>,
) -> Result<(PointSet<S>, ConstructionTrace<S>)> {
    build(cfg, true)
}

fn build<S: Scalar>(
    cfg: &ConstructionConfig<S>,
    with_apex: bool,
) -> Result<(PointSet<S>, ConstructionTrace<S>)> {
    cfg.validate()?;
    let d = cfg.dim;
    let cube = hypercube_vertices::<S>(d)?;
    let apex = if with_apex {
        check_apex_angle(&cube, &cfg.apex_height)?;
        Some(apex_point(d, &cfg.apex_height)?)
    } else {
        None
    };
    let (ps, mut trace) = match &cfg.schedule {
        Schedule::Adaptive => adaptive(cfg, &cube, apex.as_ref())?,
        Schedule::Geometric { s1, gamma } => geometric(cfg, &cube, apex.as_ref(), s1, gamma)?,
    };
    if with_apex {
        trace.apex_height = Some(cfg.apex_height.clone());
    }
    Ok((ps.with_provenance(trace.clone()), trace))
}

/// Apex triangles on the unperturbed cube are isosceles with legs
/// `(d-1)/4 + c^2`; they are acute iff every base is shorter than
/// `sqrt(2)` times the leg.
fn check_apex_angle<S: Scalar>(cube: &PointSet<S>, c: &S) -> Result<()> {
    let d = cube.dim() as i64;
    let leg_sq = S::ratio(d - 1, 4) + c.clone() * c.clone();
    let base_sq = if cube.len() >= 2 {
        squared_diameter(cube)?
    } else {
        S::zero()
    };
    if base_sq >= S::from_int(2) * leg_sq {
        return Err(Error::ConstructionFailed(
            "apex triangles are not acute on the cube".into(),
        ));
    }
    Ok(())
}

fn with_point<S: Scalar>(d: usize, mut points: Vec<Point<S>>, extra: Option<&Point<S>>) -> Result<PointSet<S>> {
    if let Some(p) = extra {
        points.push(p.clone());
    }
    PointSet::new(d, points)
}

fn certify<S: Scalar>(ps: &PointSet<S>) -> Result<Option<String>> {
    let tol = Tolerance::for_set(ps)?;
    Ok(first_dot_at_most(ps, tol.strict_margin())?.map(|w| {
        format!(
            "angle at {} in triple ({}, {}) has dot {}",
            w.apex_index, w.leg_index_1, w.leg_index_2, w.dot_value
        )
    }))
}

/// True when every triangle through the last point is acute.
fn last_point_triangles_ok<S: Scalar>(ps: &PointSet<S>) -> Result<bool> {
    let n = ps.len();
    let gram = Gram::new(ps);
    let tol = Tolerance::for_set(ps)?;
    let t = gram.threshold(tol.strict_margin());
    let x = n - 1;
    let mut v = <S::Lifted as LiftedValue>::zero();
    for i in 0..x {
        for j in i + 1..x {
            for (apex, l1, l2) in [(i, j, x), (j, i, x), (x, i, j)] {
                gram.apex_dot_into(apex, l1, l2, &mut v);
                if v <= t {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn displacement_bound<S: Scalar>(d: usize, a: &S, b: &S) -> S {
    // |x' - x|^2 = (d-1) a^2 + b^2 <= (b + (d-1) a)^2
    b.clone() + S::from_int(d as i64 - 1) * a.clone()
}

fn geometric<S: Scalar>(
    cfg: &ConstructionConfig<S>,
    cube: &PointSet<S>,
    apex: Option<&Point<S>>,
    s1: &S,
    gamma: &S,
) -> Result<(PointSet<S>, ConstructionTrace<S>)> {
    let d = cfg.dim;
    let mut start = s1.clone();
    let mut last_failure = String::new();
    for attempt in 0..=cfg.max_retries {
        if attempt > 0 {
            start = start.checked_div(&S::from_int(2))?;
        }
        let mut steps = Vec::with_capacity(cube.len());
        let mut points = Vec::with_capacity(cube.len() + 1);
        let mut s = start.clone();
        let mut underflow = false;
        for (i, v) in cube.points().iter().enumerate() {
            if i > 0 {
                s = s * gamma.clone();
            }
            if !s.is_positive() {
                underflow = true;
                break;
            }
            let p = perturb_vertex_coupled(v, &s, &cfg.coupling)?;
            let (a, b) = shift_parameters(d, &s, &cfg.coupling)?;
            if !a.is_positive() || p == *v {
                underflow = true;
                break;
            }
            steps.push(TraceStep {
                index: i,
                epsilon: displacement_bound(d, &a, &b),
                s: s.clone(),
                a,
                b,
                margin: None,
            });
            points.push(p);
        }
        if underflow {
            return Err(Error::ConstructionFailed(
                "step sizes underflowed the number format".into(),
            ));
        }
        let ps = match with_point(d, points, apex) {
            Ok(ps) => ps,
            Err(Error::CoincidentPoints(i, j)) => {
                return Err(Error::ConstructionFailed(format!(
                    "perturbed points {i} and {j} coincide"
                )))
            }
            Err(e) => return Err(e),
        };
        if apex.is_some() && !last_point_triangles_ok(&ps)? {
            last_failure = "an apex triangle is not acute".into();
            continue;
        }
        if let Some(why) = certify(&ps)? {
            last_failure = why;
            continue;
        }
        let trace = ConstructionTrace {
            schedule: ScheduleKind::Geometric,
            coupling: cfg.coupling.clone(),
            vertex_order: (0..cube.len()).collect(),
            steps,
            s1: Some(start),
            gamma: Some(gamma.clone()),
            apex_height: None,
            retries: attempt,
        };
        return Ok((ps, trace));
    }
    Err(Error::ConstructionFailed(format!(
        "geometric schedule failed after {} retries ({last_failure}); use a smaller s1 or gamma",
        cfg.max_retries
    )))
}

fn adaptive<S: Scalar>(
    cfg: &ConstructionConfig<S>,
    cube: &PointSet<S>,
    apex: Option<&Point<S>>,
) -> Result<(PointSet<S>, ConstructionTrace<S>)> {
    let d = cfg.dim;
    let k = S::from_int(d as i64 - 1);
    let two_k = S::from_int(2) * k.clone();
    // Keeps b well below the apex height and (d-1) s below 1/2.
    let mut eps = S::ratio(1, (d * (d - 1)) as i64);
    let mut points: Vec<Point<S>> = cube.points().to_vec();
    let mut steps = Vec::with_capacity(cube.len());
    for (i, v) in cube.points().iter().enumerate() {
        let mixed = with_point(d, points.clone(), apex)?;
        let margin = acute_triple_margin(&mixed);
        if let Some(m) = &margin {
            eps = eps.min_of(safe_radius(&mixed, m)?);
        }
        let s = eps
            .checked_div(&two_k)?
            .floor_pow2()
            .ok_or_else(|| Error::ConstructionFailed("step size vanished".into()))?;
        if s.precision_bits() > cfg.max_bits {
            return Err(Error::ConstructionFailed(format!(
                "adaptive step {i} needs more than {} bits; use the geometric schedule",
                cfg.max_bits
            )));
        }
        let (a, b) = shift_parameters(d, &s, &cfg.coupling)?;
        let p = perturb_vertex_coupled(v, &s, &cfg.coupling)?;
        if !a.is_positive() || p == *v {
            return Err(Error::ConstructionFailed(
                "step sizes underflowed the number format".into(),
            ));
        }
        points[i] = p;
        steps.push(TraceStep {
            index: i,
            epsilon: eps.clone(),
            s,
            a,
            b,
            margin,
        });
    }
    let ps = with_point(d, points, apex)?;
    if let Some(why) = certify(&ps)? {
        return Err(Error::ConstructionFailed(format!(
            "adaptive schedule produced a non-acute set: {why}"
        )));
    }
    let trace = ConstructionTrace {
        schedule: ScheduleKind::Adaptive,
        coupling: cfg.coupling.clone(),
        vertex_order: (0..cube.len()).collect(),
        steps,
        s1: None,
        gamma: None,
        apex_height: None,
        retries: 0,
    };
    Ok((ps, trace))
}

/// Greedy random subset of cube vertices: sample `trials` vertices and keep
/// each one that forms only acute triangles with the kept pairs.
pub fn random_baseline(d: usize, trials: usize, seed: u64) -> Result<PointSet<Rational>> {
    check_dim(d)?;
    let n = 1usize << (d - 1);
    let bits: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..d - 1).map(|b| (i >> (d - 2 - b) & 1) as i64).collect())
        .collect();
    let apex_dot = |q: usize, p: usize, r: usize| -> i64 {
        (0..d - 1)
            .map(|t| (bits[p][t] - bits[q][t]) * (bits[r][t] - bits[q][t]))
            .sum()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept: Vec<usize> = Vec::new();
    for _ in 0..trials {
        let z = rng.gen_range(0..n);
        if kept.contains(&z) {
            continue;
        }
        let ok = kept.iter().enumerate().all(|(ix, &x)| {
            kept[ix + 1..].iter().all(|&y| {
                apex_dot(x, y, z) > 0 && apex_dot(y, x, z) > 0 && apex_dot(z, x, y) > 0
            })
        });
        if ok {
            kept.push(z);
        }
    }
    let cube = hypercube_vertices::<Rational>(d)?;
    let points = kept.iter().map(|&i| cube.point(i).clone()).collect();
    PointSet::new(d, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::set_margin;

    fn q(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    #[test]
    fn cube_order_is_binary_counter() {
        let c = hypercube_vertices::<Rational>(3).unwrap();
        let rows: Vec<Vec<String>> = c
            .points()
            .iter()
            .map(|p| p.coords().iter().map(|x| x.to_f64().to_string()).collect())
            .collect();
        assert_eq!(
            rows,
            vec![
                vec!["0", "0", "0"],
                vec!["0", "1", "0"],
                vec!["1", "0", "0"],
                vec!["1", "1", "0"]
            ]
        );
        assert_eq!(hypercube_vertices::<Rational>(11).unwrap().len(), 1024);
        assert_eq!(
            hypercube_vertices::<Rational>(1),
            Err(Error::UnsupportedDimension(1))
        );
    }

    #[test]
    fn perturb_examples() {
        let c = hypercube_vertices::<Rational>(3).unwrap();
        let p = perturb_vertex(c.point(0), &q("1/10")).unwrap();
        assert_eq!(p.coords(), &[q("1/50"), q("1/50"), q("1/5")]);
        let p = perturb_vertex(c.point(3), &q("1/10")).unwrap();
        assert_eq!(p.coords(), &[q("49/50"), q("49/50"), q("1/5")]);
        assert!(perturb_vertex(c.point(0), &q("1")).is_err());
        assert!(perturb_vertex(c.point(0), &q("0")).is_err());
        let off = Point::new(vec![q("1/2"), q("0"), q("0")]).unwrap();
        assert_eq!(perturb_vertex(&off, &q("1/10")), Err(Error::NotAVertex));
    }

    #[test]
    fn safe_radius_examples() {
        assert_eq!(safe_radius_from_bound(&q("1/2"), &q("2")).unwrap(), q("1/20"));
        assert_eq!(safe_radius_from_bound(&q("1/2"), &q("1")).unwrap(), q("1/12"));
        assert_eq!(safe_radius_from_bound(&q("100"), &q("1")).unwrap(), q("1/4"));
        assert_eq!(
            safe_radius_from_bound(&q("0"), &q("1")),
            Err(Error::NonPositiveMargin)
        );
    }

    #[test]
    fn apex_examples() {
        let p = apex_point(3, &q("3/2")).unwrap();
        assert_eq!(p.coords(), &[q("1/2"), q("1/2"), q("3/2")]);
        assert_eq!(apex_point(2, &q("1")).unwrap().coords(), &[q("1/2"), q("1")]);
        // c = sqrt(4)/2 = 1 at d = 5 sits on the boundary.
        assert!(apex_point(5, &q("1")).is_err());
        assert!(apex_point(5, &q("-3")).is_err());
    }

    #[test]
    fn small_constructions_are_acute() {
        for d in 2..=4 {
            let (ps, trace) = construct_full(&ConstructionConfig::<Rational>::new(d)).unwrap();
            assert_eq!(ps.len(), (1 << (d - 1)) + 1);
            assert!(set_margin(&ps).unwrap().0.is_positive());
            assert_eq!(trace.steps.len(), 1 << (d - 1));
        }
        let (ps, _) = construct_full(&ConstructionConfig::<Rational>::adaptive(3)).unwrap();
        assert!(set_margin(&ps).unwrap().0.is_positive());
    }

    #[test]
    fn baseline_is_deterministic() {
        let a = random_baseline(5, 200, 7).unwrap();
        let b = random_baseline(5, 200, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.len() >= 2);
    }
}
