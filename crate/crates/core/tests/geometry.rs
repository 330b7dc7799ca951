use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uplab::geometry::{
    collinear, coordinatize_on_plane, lift_to_plane, random_generic_section, random_plane, section_polynomial,
    through_coordinate_point, PlanePredicate,
};
use uplab::harness::{rathmann_curve, rathmann_section_direct};
use uplab::upp::collinear_triples;
use uplab::{make_extension, plane_section, Error, FieldElement, ParamCurve, Plane, ProjPoint, UniPoly};

#[test]
fn section_polynomial_examples() {
    let f101 = make_extension(101, 1).unwrap();
    let cubic = ParamCurve::twisted_cubic(&f101);
    let h = Plane::from_i64(&f101, &[0, 0, 0, 1]).unwrap();
    let s = section_polynomial(&cubic, &h).unwrap();
    assert_eq!(s.degree(), Some(3));
    assert!(s.coeffs()[..3].iter().all(|c| c.is_zero()));

    let c2 = rathmann_curve(2, 1).unwrap();
    let f = make_extension(2, 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let duals: Vec<FieldElement> = (0..4).map(|_| f.random_nonzero(&mut rng)).collect();
    let h = Plane::new(duals).unwrap();
    let s = section_polynomial(&c2, &h).unwrap();
    assert_eq!(s.degree(), Some(4));
    // t0 t + t1 t^2 + t2 t^4 + t3, after normalization
    let t = h.duals();
    let expected = UniPoly::new(
        &f,
        vec![t[3].clone(), t[0].clone(), t[1].clone(), f.zero(), t[2].clone()],
    );
    assert_eq!(s, expected);
}

#[test]
fn section_polynomial_vanishes_at_sampled_parameters() {
    let f = make_extension(7, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for curve in [ParamCurve::twisted_cubic(&f), rathmann_curve(7, 1).unwrap()] {
        let curve = if curve.field() == &f {
            curve
        } else {
            curve.map(&uplab::Embedding::new(curve.field(), &f).unwrap())
        };
        for _ in 0..10 {
            let ts: Vec<FieldElement> = (0..3).map(|_| f.random(&mut rng)).collect();
            let pts: Vec<ProjPoint> = ts.iter().map(|t| curve.point_at(t)).collect();
            let Ok(h) = Plane::through([&pts[0], &pts[1], &pts[2]]) else {
                continue;
            };
            let s = section_polynomial(&curve, &h).unwrap();
            for t in &ts {
                assert!(s.eval(t).is_zero());
            }
        }
    }
}

#[test]
fn plane_containing_the_curve() {
    let f5 = make_extension(5, 1).unwrap();
    let line = ParamCurve::new(
        &f5,
        vec![
            UniPoly::from_i64(&f5, &[1]),
            UniPoly::from_i64(&f5, &[0, 1]),
            UniPoly::zero(&f5),
            UniPoly::zero(&f5),
        ],
        "line",
    )
    .unwrap();
    let h = Plane::from_i64(&f5, &[0, 0, 1, 0]).unwrap();
    assert_eq!(section_polynomial(&line, &h).unwrap_err(), Error::CurveInPlane);
}

#[test]
fn twisted_cubic_random_planes() {
    let f101 = make_extension(101, 1).unwrap();
    let cubic = ParamCurve::twisted_cubic(&f101);
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut distinct = 0;
    for i in 0..30 {
        let (h, _) = random_plane(&f101, &mut rng, &[], 100).unwrap();
        let Ok(sec) = plane_section(&cubic, &h, 3, i) else {
            continue;
        };
        assert!(sec.complete);
        assert_eq!(sec.total_multiplicity(), 3);
        distinct += (sec.points.len() == 3) as usize;
        for p in &sec.points {
            assert!(sec.plane.contains(p));
        }
    }
    assert!(distinct >= 25);
}

#[test]
fn rathmann_plane_at_infinity_is_not_reduced() {
    let curve = rathmann_curve(2, 2).unwrap();
    let h = Plane::from_i64(curve.field(), &[0, 0, 0, 1]).unwrap();
    let sec = plane_section(&curve, &h, 1, 0).unwrap();
    assert!(!sec.reduced);
    assert_eq!(sec.points.len(), 1);
    assert_eq!(sec.multiplicities, vec![16]);
}

#[test]
fn coordinatize_examples() {
    let f7 = make_extension(7, 1).unwrap();
    let h = Plane::from_i64(&f7, &[0, 0, 0, 1]).unwrap();
    let p = ProjPoint::from_i64(&f7, &[2, 3, 5, 0]).unwrap();
    let x = coordinatize_on_plane(std::slice::from_ref(&p), &h, "x").unwrap();
    assert_eq!(x.points()[0], ProjPoint::from_i64(&f7, &[2, 3, 5]).unwrap());
    assert_eq!(lift_to_plane(&x.points()[0], &h).unwrap(), p);

    let off = ProjPoint::from_i64(&f7, &[0, 0, 0, 1]).unwrap();
    assert_eq!(
        coordinatize_on_plane(&[off], &h, "x").unwrap_err(),
        Error::PointOffPlane
    );
}

#[test]
fn coordinatization_preserves_collinearity() {
    let f = make_extension(5, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let mut checked = 0;
    while checked < 100 {
        let (h, _) = random_plane(&f, &mut rng, &[], 100).unwrap();
        // three points of P^3 on h, the third on the line through the first two
        let on_plane = |rng: &mut ChaCha8Rng| loop {
            let c: Vec<FieldElement> = (0..3).map(|_| f.random(rng)).collect();
            if let Ok(q) = ProjPoint::new(c) {
                return lift_to_plane(&q, &h).unwrap();
            }
        };
        let (a, b) = (on_plane(&mut rng), on_plane(&mut rng));
        if a == b {
            continue;
        }
        let (s, t) = (f.random_nonzero(&mut rng), f.random_nonzero(&mut rng));
        let c: Vec<FieldElement> = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| &(&s * x) + &(&t * y))
            .collect();
        let Ok(c) = ProjPoint::new(c) else { continue };
        if c == a || c == b {
            continue;
        }
        let x = coordinatize_on_plane(&[a, b, c], &h, "x").unwrap();
        let p = x.points();
        assert!(collinear(&p[0], &p[1], &p[2]));
        checked += 1;
    }
}

#[test]
fn collinear_examples() {
    let f3 = make_extension(3, 1).unwrap();
    let p = |c: [i64; 3]| ProjPoint::from_i64(&f3, &c).unwrap();
    assert!(collinear(&p([1, 0, 0]), &p([0, 1, 0]), &p([1, 1, 0])));
    assert!(!collinear(&p([1, 0, 0]), &p([0, 1, 0]), &p([0, 0, 1])));
    for a in 0..3 {
        for b in 0..3 {
            let (u, v) = ([1, a, b], [1, b, a]);
            if u == v {
                continue;
            }
            let w = [2, a + b, a + b];
            assert!(collinear(&p(u), &p(v), &p(w)));
        }
    }
}

#[test]
fn random_plane_examples() {
    let f64 = make_extension(2, 6).unwrap();
    let a = random_plane(&f64, &mut ChaCha8Rng::seed_from_u64(9), &[], 100).unwrap();
    let b = random_plane(&f64, &mut ChaCha8Rng::seed_from_u64(9), &[], 100).unwrap();
    assert_eq!(a, b);

    let curve = rathmann_curve(2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (sec, _) = random_generic_section(&curve, &f64, &mut rng, 3, 100, 0).unwrap();
    assert_eq!(sec.points.len(), 4);
    assert!(sec.reduced);

    let f2 = make_extension(2, 1).unwrap();
    let never: &PlanePredicate = &|_h: &Plane| Some("never".to_string());
    let err = random_plane(&f2, &mut rng, &[never, &through_coordinate_point], 100).unwrap_err();
    assert!(matches!(err, Error::GenericityExhausted { retries: 100, .. }));
}

fn affine_span_check(p: u64, f: usize, ext_m: usize, seed: u64) {
    let q = p.pow(f as u32);
    let sec = rathmann_section_direct(p, f, ext_m, seed).unwrap();
    assert!(sec.matches_plane_section, "q={q}");
    assert_eq!(sec.points.len() as u64, q * q);
    let curve = rathmann_curve(p, f).unwrap();
    let emb = uplab::Embedding::new(curve.field(), sec.field()).unwrap();
    let curve = curve.map(&emb);
    let section = plane_section(&curve, &sec.plane, 1, seed).unwrap();
    assert!(section.reduced);
    let mut a = section.points.clone();
    let mut b = sec.points_p3.clone();
    a.sort_by_key(|x| format!("{x:?}"));
    b.sort_by_key(|x| format!("{x:?}"));
    assert_eq!(a, b);
}

#[test]
fn rathmann_section_is_an_affine_span() {
    affine_span_check(2, 1, 2, 1);
    affine_span_check(2, 1, 3, 2);
    affine_span_check(3, 1, 3, 3);
    affine_span_check(2, 2, 3, 4);
    affine_span_check(2, 2, 2, 5);
}

#[test]
fn rathmann_section_lines_meet_in_q_points() {
    let sec = rathmann_section_direct(2, 2, 2, 5).unwrap();
    assert_eq!(sec.points.len(), 16);
    assert_eq!(collinear_triples(&sec.points).len(), 80);
    let pts = sec.points.points();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let on_line = (0..pts.len()).filter(|&k| collinear(&pts[i], &pts[j], &pts[k])).count();
            assert_eq!(on_line, 4);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn section_points_satisfy_the_plane(seed in any::<u64>()) {
        let f = make_extension(3, 2).unwrap();
        let curve = ParamCurve::twisted_cubic(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (h, _) = random_plane(&f, &mut rng, &[], 100).unwrap();
        let sec = plane_section(&curve, &h, 3, seed).unwrap();
        for p in &sec.points {
            prop_assert!(sec.plane.contains(p));
        }
        let s = section_polynomial(&curve, &h).unwrap();
        if sec.complete {
            prop_assert_eq!(sec.total_multiplicity(), 3);
            prop_assert!(s.degree().unwrap() <= 3);
        }
    }
}
