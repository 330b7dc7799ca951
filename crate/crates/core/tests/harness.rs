use uplab::harness::{
    collinear_control, common_factor_checks, rathmann_parameter, rathmann_section_direct, trial_seed,
};
use uplab::upp::UppVerdict;
use uplab::{
    make_extension, rathmann_curve, rathmann_pipeline, verify_decreasing_type, verify_theorem3, Error, ParamCurve,
    TrialOptions,
};

#[test]
fn rathmann_curve_examples() {
    let c = rathmann_curve(2, 2).unwrap();
    assert_eq!(c.field().small_order(), Some(4));
    assert_eq!(c.degree(), 16);
    assert_eq!(rathmann_parameter(&c), Some(4));
    assert_eq!(rathmann_parameter(&rathmann_curve(3, 1).unwrap()), Some(3));
    let f = make_extension(101, 1).unwrap();
    assert_eq!(rathmann_parameter(&ParamCurve::twisted_cubic(&f)), None);

    assert!(matches!(rathmann_curve(4, 1), Err(Error::InvalidParameters(_))));
    assert!(matches!(rathmann_curve(2, 7), Err(Error::InvalidParameters(_))));
    assert!(matches!(
        rathmann_section_direct(2, 2, 1, 0),
        Err(Error::InvalidParameters(_))
    ));
}

#[test]
fn trial_seeds_are_distinct() {
    let mut seeds: Vec<u64> = (0..1000).map(|i| trial_seed(7, i)).collect();
    seeds.sort();
    seeds.dedup();
    assert_eq!(seeds.len(), 1000);
    assert_ne!(trial_seed(7, 0), trial_seed(8, 0));
}

#[test]
fn direct_section_examples() {
    for (p, f, n) in [(2u64, 1usize, 4usize), (3, 1, 9), (2, 2, 16)] {
        let sec = rathmann_section_direct(p, f, 3, 11).unwrap();
        assert!(sec.matches_plane_section);
        assert_eq!(sec.points.len(), n);
        assert_eq!(sec.points_p3.len(), n);
        for pt in &sec.points_p3 {
            assert!(sec.plane.contains(pt));
        }
    }
}

#[test]
fn twisted_cubic_trials() {
    let f = make_extension(101, 1).unwrap();
    let curve = ParamCurve::twisted_cubic(&f);
    let opts = TrialOptions::for_curve(&curve);
    assert_eq!((opts.plane_ext, opts.threshold), (1, 0.95));
    let r = verify_theorem3(&curve, 20, 20, 5, 3, &opts).unwrap();
    assert_eq!(r.trials_completed, 20);
    assert!(r.singleton_assertions_ok && r.fraction_ok && r.all_pass);
    for t in &r.trials {
        assert_eq!(t.section_size, 3);
        assert_eq!(t.minimal_degree, 2);
        assert_eq!(t.system_dimension, 3);
        assert!(t.irreducible_fraction >= 0.95);
        assert_eq!(t.upp, UppVerdict::Holds);
        assert!(t.decreasing_type);
    }
    assert_eq!(r, verify_theorem3(&curve, 20, 20, 5, 3, &opts).unwrap());
}

#[test]
fn rathmann_q2_trials() {
    let curve = rathmann_curve(2, 1).unwrap();
    let opts = TrialOptions::for_curve(&curve);
    assert_eq!((opts.plane_ext, opts.threshold), (6, 1.0));
    let r = verify_theorem3(&curve, 20, 20, 6, 4, &opts).unwrap();
    assert_eq!(r.trials_completed, 20);
    assert!(r.all_pass);
    for t in &r.trials {
        assert_eq!((t.section_size, t.minimal_degree, t.system_dimension), (4, 2, 2));
        assert_eq!(t.irreducible, t.members_tested);
        assert_eq!(t.upp, UppVerdict::Holds);
    }
}

#[test]
fn rathmann_q4_trials() {
    let curve = rathmann_curve(2, 2).unwrap();
    let opts = TrialOptions::for_curve(&curve);
    let r = verify_theorem3(&curve, 5, 10, 8, 8, &opts).unwrap();
    assert_eq!(r.trials_completed, 5);
    assert!(r.all_pass);
    for t in &r.trials {
        assert_eq!((t.section_size, t.minimal_degree, t.system_dimension), (16, 4, 2));
        assert_eq!(t.delta, vec![1, 2, 3, 4, 3, 2, 1]);
        assert_eq!(t.upp, UppVerdict::Fails);
    }
}

#[test]
fn decreasing_type_trials_and_control() {
    let f = make_extension(101, 1).unwrap();
    let curve = ParamCurve::twisted_cubic(&f);
    let r = verify_decreasing_type(&curve, 10, 9, 3, &TrialOptions::for_curve(&curve)).unwrap();
    assert_eq!(r.trials_completed, 10);
    assert!(r.all_decreasing && r.control.ok && r.all_pass);
    assert_eq!(r.control.delta, vec![1, 2, 1, 1, 1]);
    let s: Vec<usize> = r.control.checks.iter().map(|c| c.s).collect();
    assert_eq!(s, vec![3, 4]);
    for c in &r.control.checks {
        assert_eq!((c.c_s, c.gcd_degree), (1, 1));
    }

    let curve = rathmann_curve(2, 2).unwrap();
    let r = verify_decreasing_type(&curve, 4, 9, 8, &TrialOptions::for_curve(&curve)).unwrap();
    assert!(r.all_pass);
}

#[test]
fn control_configuration_examples() {
    let f2 = make_extension(2, 1).unwrap();
    assert!(matches!(collinear_control(&f2), Err(Error::InvalidParameters(_))));
    let f7 = make_extension(7, 1).unwrap();
    let r = common_factor_checks(&collinear_control(&f7).unwrap()).unwrap();
    assert!(r.ok);
    assert_eq!(r.checks.len(), 2);
}

#[test]
fn rathmann_pipeline_verifies() {
    for (p, f) in [(2u64, 1usize), (3, 1), (2, 2)] {
        let r = rathmann_pipeline(p, f, 3, 50, 13, true).unwrap();
        assert!(r.all_pass, "q={}: {:?}", r.q, r.checks);
        assert!(r.checks.values().all(|&ok| ok));
        assert_eq!(r.members_irreducible, 50);
    }
    let r = rathmann_pipeline(2, 2, 3, 50, 13, false).unwrap();
    assert!(r.checks.is_empty());
    assert_eq!((r.points, r.collinear_triples, r.minimal_degree), (16, 80, 4));
    let w = r.upp_witness.unwrap();
    assert_eq!((w.size, w.degree), (3, 1));
}
