//! Values checked against independent computations written here, not
//! against the library's own predicate code.

use acuta::construct::{
    apex_point, construct_acute_cube, construct_full, hypercube_vertices, lemma_check,
    perturb_vertex, random_baseline, safe_radius, safe_radius_from_bound, ConstructionConfig,
};
use acuta::geometry::{set_margin, squared_diameter, triangle_margin};
use acuta::verify::{verify_acute, verify_nonobtuse};
use acuta::{Error, Float, Point, PointSet, Rational, Scalar, Tolerance};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn to_set(rows: &[Vec<Q>]) -> PointSet<Rational> {
    let d = rows[0].len();
    PointSet::from_coords(
        d,
        rows.iter()
            .map(|r| r.iter().cloned().map(Rational::from_big).collect())
            .collect(),
    )
    .unwrap()
}

fn rows_of(ps: &PointSet<Rational>) -> Vec<Vec<Q>> {
    ps.points()
        .iter()
        .map(|p| p.coords().iter().map(|c| c.as_big().clone()).collect())
        .collect()
}

/// Plain three-loop margin with direct rational arithmetic.
fn naive_margin(rows: &[Vec<Q>]) -> (Q, (usize, usize, usize)) {
    let apex = |a: &[Q], b: &[Q], c: &[Q]| -> Q {
        let mut s = q(0, 1);
        for t in 0..a.len() {
            s += (&b[t] - &a[t]) * (&c[t] - &a[t]);
        }
        s
    };
    let n = rows.len();
    let mut best: Option<(Q, (usize, usize, usize))> = None;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let cands = [
                    (apex(&rows[i], &rows[j], &rows[k]), (i, j, k)),
                    (apex(&rows[j], &rows[i], &rows[k]), (j, i, k)),
                    (apex(&rows[k], &rows[i], &rows[j]), (k, i, j)),
                ];
                for (v, w) in cands {
                    if best.as_ref().is_none_or(|(b, _)| v < *b) {
                        best = Some((v, w));
                    }
                }
            }
        }
    }
    best.unwrap()
}

fn random_rows(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vec<Q>> {
    loop {
        let rows: Vec<Vec<Q>> = (0..n)
            .map(|_| {
                (0..d)
                    .map(|_| q(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
                    .collect()
            })
            .collect();
        let distinct = (0..n).all(|i| (i + 1..n).all(|j| rows[i] != rows[j]));
        if distinct {
            return rows;
        }
    }
}

#[test]
fn set_margin_matches_naive_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let n = rng.gen_range(3..=30);
        let d = rng.gen_range(1..=5);
        let rows = random_rows(&mut rng, n, d);
        let (want, (a, l1, l2)) = naive_margin(&rows);
        let (got, w) = set_margin(&to_set(&rows)).unwrap();
        assert_eq!(got.as_big(), &want);
        assert_eq!((w.apex_index, w.leg_index_1, w.leg_index_2), (a, l1, l2));
        assert_eq!(w.dot_value, got);
    }
}

#[test]
fn verify_agrees_with_naive_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..25 {
        let d = rng.gen_range(2..=6);
        let rows = random_rows(&mut rng, 20, d);
        let ps = to_set(&rows);
        let tol = Tolerance::for_set(&ps).unwrap();
        let report = verify_acute(&ps, &tol).unwrap();
        let (want, (a, l1, l2)) = naive_margin(&rows);
        assert_eq!(report.margin.as_big(), &want);
        let w = report.witness.unwrap();
        assert_eq!((w.apex_index, w.leg_index_1, w.leg_index_2), (a, l1, l2));
        assert_eq!(report.passed, want > q(0, 1));
    }
}

#[test]
fn equilateral_margin_and_safe_radius() {
    // An equilateral triangle with rational coordinates: e1, e2, e3.
    // Side^2 = 2, so each apex dot is |u||v| cos 60 = 2 * 1/2 = 1.
    let rows = vec![
        vec![q(1, 1), q(0, 1), q(0, 1)],
        vec![q(0, 1), q(1, 1), q(0, 1)],
        vec![q(0, 1), q(0, 1), q(1, 1)],
    ];
    let ps = to_set(&rows);
    assert_eq!(set_margin(&ps).unwrap().0, Rational::from_int(1));
    // The side-1 case from the apex-dot formula: margin 1/2, D_hat = 1.
    assert_eq!(
        safe_radius_from_bound(&Rational::ratio(1, 2), &Rational::from_int(1)).unwrap(),
        Rational::ratio(1, 12)
    );
    // For this triangle D^2 = 2 so D_hat = 2 and delta = 1 / (2 * 5).
    assert_eq!(
        safe_radius(&ps, &Rational::from_int(1)).unwrap(),
        Rational::ratio(1, 10)
    );
}

#[test]
fn float_equilateral_matches_hand_value() {
    let h = 3f64.sqrt() / 2.0;
    let pts = [[0.0, 0.0], [1.0, 0.0], [0.5, h]];
    let ps = PointSet::from_coords(
        2,
        pts.iter()
            .map(|p| p.iter().map(|&x| Float::new(x).unwrap()).collect())
            .collect(),
    )
    .unwrap();
    let (m, _) = set_margin(&ps).unwrap();
    assert!((m.get() - 0.5).abs() < 1e-12);
}

#[test]
fn triangle_margin_hand_values() {
    let p = |x: i64, y: i64| Point::new(vec![Rational::from_int(x), Rational::from_int(y)]).unwrap();
    // Base apexes: <(2,0),(1,10)> = 2 and <(-2,0),(-1,10)> = 2; top apex 99.
    assert_eq!(
        triangle_margin(&p(0, 0), &p(2, 0), &p(1, 10)).unwrap(),
        Rational::from_int(2)
    );
    // Collinear: the middle point sees <(-1,0),(1,0)> = -1.
    assert!(triangle_margin(&p(0, 0), &p(1, 0), &p(2, 0)).unwrap() <= Rational::zero());
}

#[test]
fn perturbation_matches_hand_arithmetic() {
    // d = 3, s = 1/10: a = 2/100 = 1/50, b = 2/10 = 1/5.
    let cube = hypercube_vertices::<Rational>(3).unwrap();
    let s = Rational::ratio(1, 10);
    let p0 = perturb_vertex(cube.point(0), &s).unwrap();
    let want: Vec<Rational> = [(1, 50), (1, 50), (1, 5)]
        .iter()
        .map(|&(n, d)| Rational::ratio(n, d))
        .collect();
    assert_eq!(p0.coords(), want.as_slice());
    let b = Rational::ratio(1, 5);
    assert_eq!(b.clone() * b, Rational::from_int(2) * Rational::ratio(1, 50));

    // |x - x'|^2 = (d-1) a^2 + b^2 = (d-1)^3 s^4 + (d-1)^2 s^2.
    for d in 2..=7usize {
        let cube = hypercube_vertices::<Rational>(d).unwrap();
        let s = Rational::ratio(1, 37);
        let k = Rational::from_int(d as i64 - 1);
        let s2 = s.clone() * s.clone();
        let want = k.clone() * k.clone() * k.clone() * s2.clone() * s2.clone() + k.clone() * k * s2;
        for v in cube.points() {
            let moved = perturb_vertex(v, &s).unwrap();
            assert_eq!(moved.squared_distance(v).unwrap(), want);
        }
    }
}

#[test]
fn lemma_examples() {
    assert!(lemma_check::<Rational>(4, &Rational::ratio(1, 10)).unwrap());
    assert!(lemma_check::<Rational>(6, &Rational::ratio(1, 100)).unwrap());
    // (d-1) s^2 = 2 >= 1.
    assert!(matches!(
        lemma_check::<Rational>(3, &Rational::from_int(1)),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn apex_distance_matches_closed_form() {
    let cube = hypercube_vertices::<Rational>(3).unwrap();
    let apex = apex_point(3, &Rational::ratio(3, 2)).unwrap();
    for v in cube.points() {
        assert_eq!(apex.squared_distance(v).unwrap(), Rational::ratio(11, 4));
    }
}

#[test]
fn construction_examples() {
    let (two, _) = construct_acute_cube(&ConstructionConfig::<Rational>::adaptive(2)).unwrap();
    assert_eq!(two.len(), 2);
    let (three, _) = construct_acute_cube(&ConstructionConfig::<Rational>::adaptive(3)).unwrap();
    assert_eq!(three.len(), 4);
    let (m, _) = naive_margin(&rows_of(&three));
    assert!(m > q(0, 1));

    let (full, _) = construct_full(&ConstructionConfig::<Rational>::new(2)).unwrap();
    assert_eq!(full.len(), 3);
    let (m, _) = naive_margin(&rows_of(&full));
    assert!(m > q(0, 1));

    let (five, _) = construct_full(&ConstructionConfig::<Rational>::new(5)).unwrap();
    assert_eq!(five.len(), 17);
    let (m, _) = naive_margin(&rows_of(&five));
    assert!(m > q(0, 1));
    assert!(squared_diameter(&five).unwrap() >= Rational::from_int(4));
}

#[test]
fn construction_d3_margin_is_frozen() {
    // Confirmed against the naive loop above, then frozen.
    let (ps, _) = construct_full(&ConstructionConfig::<Rational>::new(3)).unwrap();
    let (m, _) = set_margin(&ps).unwrap();
    assert_eq!(m.as_big(), &naive_margin(&rows_of(&ps)).0);
    assert_eq!(m.render(), "18431181/16777216000");
}

#[test]
fn geometric_quarter_ratio_in_dimension_six() {
    // With gamma = 1/4 the lifted vertices outgrow the earlier ones once
    // d >= 4, so every retry fails and the run reports it.
    let cfg = ConstructionConfig::<Rational>::geometric(6, Rational::ratio(1, 10), Rational::ratio(1, 4));
    let cfg = ConstructionConfig {
        max_retries: 3,
        ..cfg
    };
    assert!(matches!(
        construct_acute_cube(&cfg),
        Err(Error::ConstructionFailed(_))
    ));
    let (ps, _) = construct_acute_cube(&ConstructionConfig::<Rational>::new(6)).unwrap();
    assert_eq!(ps.len(), 32);
    assert!(naive_margin(&rows_of(&ps)).0 > q(0, 1));
}

/// All subsets of the square's vertices that are acute, by brute force.
fn largest_acute_subset_of_square() -> usize {
    let v = [[0i64, 0], [0, 1], [1, 0], [1, 1]];
    let mut best = 0;
    for mask in 0u32..16 {
        let idx: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
        let mut ok = true;
        for a in 0..idx.len() {
            for b in 0..idx.len() {
                for c in 0..idx.len() {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let (x, y, z) = (v[idx[a]], v[idx[b]], v[idx[c]]);
                    let dot = (y[0] - x[0]) * (z[0] - x[0]) + (y[1] - x[1]) * (z[1] - x[1]);
                    ok &= dot > 0;
                }
            }
        }
        if ok {
            best = best.max(idx.len());
        }
    }
    best
}

#[test]
fn baseline_in_dimension_three_is_small() {
    let limit = largest_acute_subset_of_square();
    assert_eq!(limit, 2);
    for seed in 0..20 {
        let ps = random_baseline(3, 50, seed).unwrap();
        assert!(ps.len() <= 4);
        assert!(ps.len() <= limit);
    }
}

#[test]
fn baseline_output_is_acute() {
    for (d, seed) in [(5, 1), (6, 2), (7, 3), (8, 4)] {
        let ps = random_baseline(d, 500, seed).unwrap();
        if ps.len() >= 3 {
            let tol = Tolerance::for_set(&ps).unwrap();
            assert!(verify_acute(&ps, &tol).unwrap().passed);
        }
    }
}

#[test]
fn cube_is_nonobtuse_but_not_acute() {
    for d in 3..=6 {
        let cube = hypercube_vertices::<Rational>(d).unwrap();
        let tol = Tolerance::for_set(&cube).unwrap();
        assert!(!verify_acute(&cube, &tol).unwrap().passed);
        assert!(verify_nonobtuse(&cube, &tol).unwrap().passed);
    }
}

#[test]
fn lifted_integers_are_exact_for_huge_denominators() {
    // Denominators well past 64 bits on purpose.
    let big = BigInt::from(3u32).pow(90);
    let rows = vec![
        vec![Q::new(1.into(), big.clone()), q(0, 1)],
        vec![q(1, 1), Q::new(1.into(), big.clone() * 7)],
        vec![q(0, 1), q(1, 1)],
    ];
    let (want, _) = naive_margin(&rows);
    assert_eq!(set_margin(&to_set(&rows)).unwrap().0.as_big(), &want);
}
