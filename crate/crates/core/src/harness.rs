//! End-to-end checks on explicit space curves: the curve (t, t^q, t^{q^2})
//! in characteristic p, random plane sections, and the minimal curves
//! through them.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::curves::{
    gcd_of_system, linear_system, minimal_degree, random_combination, random_member, Irreducibility,
    IrreducibilityTester, TernaryForm,
};
use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::field::{make_extension, Field, FieldElement};
use crate::fp::is_prime;
use crate::geometry::{
    coordinatize_on_plane, plane_section, random_generic_section, ParamCurve, Plane, PointConfiguration, ProjPoint,
    DEFAULT_PLANE_RETRIES,
};
use crate::hilbert::{is_decreasing_type, profile, HilbertProfile};
use crate::io::element_to_json;
use crate::poly::UniPoly;
use crate::upp::{collinear_triples, upp_check, UppMode, UppVerdict, DEFAULT_UPP_BUDGET};

/// Seed for trial `index` of a run seeded with `seed` (splitmix64 finalizer).
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn checked_q(p: u64, f: usize) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    if f == 0 {
        return Err(Error::InvalidParameters("f must be at least 1".into()));
    }
    let q = (0..f)
        .try_fold(1u64, |acc, _| acc.checked_mul(p))
        .filter(|&q| q <= 64)
        .ok_or_else(|| Error::InvalidParameters(format!("q = {p}^{f} is too large (limit 64)")))?;
    Ok(q)
}

/// (t, t^q, t^{q^2}, 1) over F_q with q = p^f.
pub fn rathmann_curve(p: u64, f: usize) -> Result<ParamCurve> {
    let q = checked_q(p, f)? as usize;
    let field = make_extension(p, f)?;
    let one = field.one();
    let comps = vec![
        UniPoly::monomial(one.clone(), 1),
        UniPoly::monomial(one.clone(), q),
        UniPoly::monomial(one.clone(), q * q),
        UniPoly::constant(one),
    ];
    ParamCurve::new(&field, comps, format!("rathmann q={q}"))
}

/// q when the curve is (t, t^q, t^{q^2}, 1) for a power q of the characteristic.
pub fn rathmann_parameter(curve: &ParamCurve) -> Option<u64> {
    let c = curve.components();
    let is_monomial = |u: &UniPoly, d: usize| {
        u.degree() == Some(d) && u.coeffs()[..d].iter().all(|x| x.is_zero()) && u.coeffs()[d].is_one()
    };
    if !is_monomial(&c[0], 1) || !is_monomial(&c[3], 0) {
        return None;
    }
    let q = c[1].degree()?;
    let p = curve.field().characteristic() as usize;
    let mut r = q;
    while r > 1 && p > 1 && r % p == 0 {
        r /= p;
    }
    (q > 1 && r == 1 && is_monomial(&c[1], q) && is_monomial(&c[2], q * q)).then_some(q as u64)
}

/// q^2 points of the curve on the plane through three of its points,
/// written as an affine F_q-span.
#[derive(Clone, Debug)]
pub struct RathmannSection {
    pub q: u64,
    pub params: [FieldElement; 3],
    pub plane: Plane,
    pub points_p3: Vec<ProjPoint>,
    pub points: PointConfiguration,
    /// The span agrees, as a set, with the plane section computed from the
    /// section polynomial.
    pub matches_plane_section: bool,
}

impl RathmannSection {
    pub fn field(&self) -> &Field {
        self.points.field()
    }
}

/// Samples parameters t0, t1, t2 in F_{q^ext_m} whose curve points are
/// affinely independent and returns P0 + l1 (P1 - P0) + l2 (P2 - P0) for
/// l1, l2 in F_q, on the plane the three points span.
pub fn rathmann_section_direct(p: u64, f: usize, ext_m: usize, seed: u64) -> Result<RathmannSection> {
    let q = checked_q(p, f)?;
    if ext_m < 2 {
        return Err(Error::InvalidParameters("ext_m must be at least 2".into()));
    }
    let curve = rathmann_curve(p, f)?;
    let base = curve.field().clone();
    let field = make_extension(p, f * ext_m)?;
    let emb = Embedding::new(&base, &field)?;
    let scalars: Vec<FieldElement> = base.elements().expect("small field").map(|l| emb.apply(&l)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let affine = |t: &FieldElement| -> [FieldElement; 3] {
        let tq = t.pow(q);
        let tqq = tq.pow(q);
        [t.clone(), tq, tqq]
    };
    for _ in 0..DEFAULT_PLANE_RETRIES {
        let ts: [FieldElement; 3] = std::array::from_fn(|_| field.random(&mut rng));
        let pts = ts.each_ref().map(affine);
        let u: Vec<FieldElement> = (0..3).map(|k| &pts[1][k] - &pts[0][k]).collect();
        let v: Vec<FieldElement> = (0..3).map(|k| &pts[2][k] - &pts[0][k]).collect();
        let cross = [
            &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
            &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
            &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
        ];
        if cross.iter().all(|c| c.is_zero()) {
            continue;
        }
        let homog = |a: &[FieldElement; 3]| {
            ProjPoint::new(vec![a[0].clone(), a[1].clone(), a[2].clone(), field.one()]).expect("affine point")
        };
        let plane = Plane::through([&homog(&pts[0]), &homog(&pts[1]), &homog(&pts[2])])?;
        let mut span = Vec::with_capacity((q * q) as usize);
        for l1 in &scalars {
            for l2 in &scalars {
                let a: [FieldElement; 3] = std::array::from_fn(|k| &(&pts[0][k] + &(l1 * &u[k])) + &(l2 * &v[k]));
                span.push(homog(&a));
            }
        }
        let section = plane_section(&curve, &plane, 1, seed)?;
        let mut expected = section.points.clone();
        expected.sort_by_key(|p| format!("{p:?}"));
        let mut got = span.clone();
        got.sort_by_key(|p| format!("{p:?}"));
        let matches = section.reduced && expected == got;
        let points = coordinatize_on_plane(&span, &plane, format!("rathmann q={q} section"))?;
        return Ok(RathmannSection {
            q,
            params: ts,
            plane,
            points_p3: span,
            points,
            matches_plane_section: matches,
        });
    }
    Err(Error::DependentSample(DEFAULT_PLANE_RETRIES))
}

/// Knobs shared by the trial runners.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialOptions {
    /// Planes are drawn over the curve's field extended by this degree.
    pub plane_ext: usize,
    /// Members are drawn over the plane's field extended by this degree.
    pub member_ext: usize,
    pub max_retries: usize,
    /// Minimum fraction of sampled members that must be absolutely irreducible.
    pub threshold: f64,
    pub upp_budget: u128,
    pub upp_samples: usize,
}

impl TrialOptions {
    /// Planes over an extension with at least 64 elements, members over a
    /// cubic extension, and threshold 1 for the curve (t, t^q, t^{q^2}).
    pub fn for_curve(curve: &ParamCurve) -> Self {
        let q = curve.field().small_order().unwrap_or(u64::MAX);
        let mut plane_ext = 1;
        let mut size = q;
        while size < 64 {
            size = size.saturating_mul(q);
            plane_ext += 1;
        }
        TrialOptions {
            plane_ext,
            member_ext: 3,
            max_retries: DEFAULT_PLANE_RETRIES,
            threshold: if rathmann_parameter(curve).is_some() { 1.0 } else { 0.95 },
            upp_budget: DEFAULT_UPP_BUDGET,
            upp_samples: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: u64,
    pub seed: u64,
    pub plane: Vec<Value>,
    pub resampled: Vec<String>,
    pub ext_degree: usize,
    pub section_size: usize,
    pub minimal_degree: usize,
    pub system_dimension: usize,
    pub members_tested: usize,
    pub irreducible: usize,
    pub inconclusive: usize,
    pub irreducible_fraction: f64,
    /// Field the members were drawn from.
    pub member_field: Value,
    /// Absolute irreducibility of the unique minimal curve, when there is one.
    pub singleton_irreducible: Option<bool>,
    pub upp: UppVerdict,
    pub delta: Vec<usize>,
    pub decreasing_type: bool,
    pub shape_warnings: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub curve: String,
    pub seed: u64,
    pub threshold: f64,
    pub trials_requested: usize,
    pub trials_completed: usize,
    pub trials_rejected: usize,
    pub rejection_tags: BTreeMap<String, usize>,
    pub trials: Vec<TrialRecord>,
    pub singleton_assertions_ok: bool,
    pub fraction_ok: bool,
    pub all_pass: bool,
}

fn plane_field(curve: &ParamCurve, opts: &TrialOptions) -> Result<Field> {
    let base = curve.field();
    if !base.is_finite() {
        return Err(Error::RationalField);
    }
    if opts.plane_ext == 1 {
        Ok(base.clone())
    } else {
        make_extension(base.characteristic(), base.degree() * opts.plane_ext)
    }
}

struct Sectioned {
    seed: u64,
    plane: Plane,
    resampled: Vec<String>,
    ext_degree: usize,
    points: PointConfiguration,
    profile: HilbertProfile,
}

fn sample_section(
    curve: &ParamCurve,
    field: &Field,
    seed: u64,
    max_ext: usize,
    opts: &TrialOptions,
) -> std::result::Result<Sectioned, Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (section, resampled) = match random_generic_section(curve, field, &mut rng, max_ext, opts.max_retries, seed) {
        Ok(x) => x,
        Err(Error::GenericityExhausted { tags, .. }) => return Err(tags),
        Err(e) => return Err(vec![e.code().to_string()]),
    };
    let points = coordinatize_on_plane(&section.points, &section.plane, curve.label())
        .map_err(|e| vec![e.code().to_string()])?;
    let profile = profile(&points).map_err(|e| vec![e.code().to_string()])?;
    Ok(Sectioned {
        seed,
        plane: section.plane.clone(),
        resampled,
        ext_degree: section.ext_degree,
        points,
        profile,
    })
}

fn upp_verdict(x: &PointConfiguration, seed: u64, opts: &TrialOptions) -> UppVerdict {
    match upp_check(x, UppMode::Exhaustive, 0, seed, opts.upp_budget) {
        Ok(r) => r.verdict,
        Err(_) => upp_check(x, UppMode::Sampled, opts.upp_samples, seed, opts.upp_budget)
            .map(|r| r.verdict)
            .unwrap_or(UppVerdict::HoldsOnSample),
    }
}

fn tally(tags: &mut BTreeMap<String, usize>, list: &[String]) {
    for t in list {
        *tags.entry(t.clone()).or_default() += 1;
    }
}

/// Random sections of the curve, their minimal curves, and absolute
/// irreducibility of the unique minimal curve or of sampled members.
pub fn verify_theorem3(
    curve: &ParamCurve,
    trials: usize,
    members_per_trial: usize,
    seed: u64,
    max_ext: usize,
    opts: &TrialOptions,
) -> Result<TrialReport> {
    if trials == 0 || members_per_trial == 0 || max_ext == 0 {
        return Err(Error::InvalidParameters(
            "trials, members and max_ext must be positive".into(),
        ));
    }
    let field = plane_field(curve, opts)?;
    let outcomes: Vec<std::result::Result<TrialRecord, Vec<String>>> = (0..trials as u64)
        .into_par_iter()
        .map(|index| {
            let s = trial_seed(seed, index);
            let sec = sample_section(curve, &field, s, max_ext, opts)?;
            run_minimal_curves(index, sec, &field, members_per_trial, opts).map_err(|e| vec![e.code().to_string()])
        })
        .collect();
    let mut rejection_tags = BTreeMap::new();
    let mut records = Vec::new();
    let mut rejected = 0;
    for o in outcomes {
        match o {
            Ok(r) => {
                tally(&mut rejection_tags, &r.resampled);
                records.push(r);
            }
            Err(tags) => {
                rejected += 1;
                tally(&mut rejection_tags, &tags);
            }
        }
    }
    let singleton_assertions_ok = records.iter().all(|r| r.singleton_irreducible != Some(false));
    let fraction_ok = records.iter().all(|r| r.irreducible_fraction >= opts.threshold);
    Ok(TrialReport {
        curve: curve.label().to_string(),
        seed,
        threshold: opts.threshold,
        trials_requested: trials,
        trials_completed: records.len(),
        trials_rejected: rejected,
        rejection_tags,
        all_pass: singleton_assertions_ok && fraction_ok && !records.is_empty(),
        trials: records,
        singleton_assertions_ok,
        fraction_ok,
    })
}

/// The basis written over `small` when every coefficient lies there (as it
/// does for a system through a point set stable under Frobenius of `small`),
/// otherwise unchanged.
fn descend_basis(basis: &[TernaryForm], small: &Field) -> Result<(Field, Vec<TernaryForm>)> {
    let big = basis[0].field();
    if big == small {
        return Ok((big.clone(), basis.to_vec()));
    }
    let down = Embedding::new(small, big)?;
    Ok(
        match basis.iter().map(|f| f.restrict(&down)).collect::<Option<Vec<_>>>() {
            Some(b) => (small.clone(), b),
            None => (big.clone(), basis.to_vec()),
        },
    )
}

fn run_minimal_curves(
    index: u64,
    sec: Sectioned,
    plane_field: &Field,
    members: usize,
    opts: &TrialOptions,
) -> Result<TrialRecord> {
    let x = &sec.points;
    let s = minimal_degree(x);
    let sys = linear_system(x, s);
    let (base, basis) = descend_basis(&sys.basis, plane_field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(sec.seed ^ 0x5EED);
    let (tested, irreducible, inconclusive, singleton, member_field) = if basis.len() == 1 {
        let verdict = IrreducibilityTester::new(&base, s.max(1), sec.seed).test(&basis[0])?;
        let ok = verdict == Irreducibility::True;
        (
            1,
            ok as usize,
            (verdict == Irreducibility::Inconclusive) as usize,
            Some(ok),
            base,
        )
    } else {
        let ext = make_extension(base.characteristic(), base.degree() * opts.member_ext)?;
        let up = Embedding::new(&base, &ext)?;
        let lifted: Vec<TernaryForm> = basis.iter().map(|f| f.map(&up)).collect();
        let forms = (0..members)
            .map(|_| random_combination(&lifted, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        let tester = IrreducibilityTester::new(&ext, s.max(1), sec.seed);
        let verdicts = forms.par_iter().map(|f| tester.test(f)).collect::<Result<Vec<_>>>()?;
        let irr = verdicts.iter().filter(|v| **v == Irreducibility::True).count();
        let inc = verdicts.iter().filter(|v| **v == Irreducibility::Inconclusive).count();
        (members, irr, inc, None, ext)
    };
    let fraction = irreducible as f64 / tested as f64;
    let decreasing = is_decreasing_type(&sec.profile);
    Ok(TrialRecord {
        index,
        seed: sec.seed,
        plane: sec.plane.duals().iter().map(element_to_json).collect(),
        resampled: sec.resampled,
        ext_degree: sec.ext_degree,
        section_size: x.len(),
        minimal_degree: s,
        system_dimension: sys.dimension(),
        members_tested: tested,
        irreducible,
        inconclusive,
        irreducible_fraction: fraction,
        member_field: crate::io::field_to_json(&member_field),
        singleton_irreducible: singleton,
        upp: upp_verdict(x, sec.seed, opts),
        delta: sec.profile.deltas.clone(),
        decreasing_type: decreasing,
        shape_warnings: sec.profile.shape_warnings.len(),
        pass: singleton != Some(false) && fraction >= opts.threshold,
    })
}

/// gcd check at one degree s with c_{s-1} = c_s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommonFactorCheck {
    pub s: usize,
    pub c_s: usize,
    pub gcd_degree: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlReport {
    pub label: String,
    pub delta: Vec<usize>,
    pub checks: Vec<CommonFactorCheck>,
    pub ok: bool,
}

/// For every s in [a1, t] with Δ(s-1) = Δ(s), the curves of degree s
/// through X share a factor of degree Δ(s).
pub fn common_factor_checks(x: &PointConfiguration) -> Result<ControlReport> {
    let prof = profile(x)?;
    let mut checks = Vec::new();
    for s in prof.a1.max(1)..=prof.t {
        let c = prof.delta(s);
        if prof.delta(s - 1) != c {
            continue;
        }
        let g = gcd_of_system(&linear_system(x, s))?;
        checks.push(CommonFactorCheck {
            s,
            c_s: c,
            gcd_degree: g.degree(),
            ok: g.degree() == c,
        });
    }
    Ok(ControlReport {
        label: x.label().to_string(),
        delta: prof.deltas.clone(),
        ok: !checks.is_empty() && checks.iter().all(|c| c.ok),
        checks,
    })
}

/// Five points on the line z = 0 and the point (0:0:1).
pub fn collinear_control(field: &Field) -> Result<PointConfiguration> {
    if field.small_order().is_some_and(|q| q < 5) {
        return Err(Error::InvalidParameters(
            "control configuration needs at least 5 field elements".into(),
        ));
    }
    let mut pts: Vec<ProjPoint> = (0..5)
        .map(|i| ProjPoint::new(vec![field.one(), field.element_by_index(i), field.zero()]))
        .collect::<Result<_>>()?;
    pts.push(ProjPoint::new(vec![field.zero(), field.zero(), field.one()])?);
    PointConfiguration::new(field, pts, "five collinear plus one")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecreasingTrial {
    pub index: u64,
    pub seed: u64,
    pub section_size: usize,
    pub delta: Vec<usize>,
    pub a1: usize,
    pub a2: usize,
    pub t: usize,
    pub decreasing_type: bool,
    pub shape_warnings: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecreasingTypeReport {
    pub curve: String,
    pub seed: u64,
    pub trials_requested: usize,
    pub trials_completed: usize,
    pub trials_rejected: usize,
    pub rejection_tags: BTreeMap<String, usize>,
    pub trials: Vec<DecreasingTrial>,
    pub shape_warnings: usize,
    pub all_decreasing: bool,
    pub control: ControlReport,
    pub all_pass: bool,
}

/// Hilbert functions of random sections, which should all be of decreasing
/// type, plus the common-factor mechanism on a control configuration.
pub fn verify_decreasing_type(
    curve: &ParamCurve,
    trials: usize,
    seed: u64,
    max_ext: usize,
    opts: &TrialOptions,
) -> Result<DecreasingTypeReport> {
    if trials == 0 || max_ext == 0 {
        return Err(Error::InvalidParameters("trials and max_ext must be positive".into()));
    }
    let field = plane_field(curve, opts)?;
    let outcomes: Vec<_> = (0..trials as u64)
        .into_par_iter()
        .map(|index| {
            let s = trial_seed(seed, index);
            sample_section(curve, &field, s, max_ext, opts).map(|sec| (index, sec))
        })
        .collect();
    let mut rejection_tags = BTreeMap::new();
    let mut records = Vec::new();
    let mut rejected = 0;
    for o in outcomes {
        match o {
            Ok((index, sec)) => {
                tally(&mut rejection_tags, &sec.resampled);
                let p = &sec.profile;
                records.push(DecreasingTrial {
                    index,
                    seed: sec.seed,
                    section_size: sec.points.len(),
                    delta: p.deltas.clone(),
                    a1: p.a1,
                    a2: p.a2,
                    t: p.t,
                    decreasing_type: is_decreasing_type(p),
                    shape_warnings: p.shape_warnings.len(),
                });
            }
            Err(tags) => {
                rejected += 1;
                tally(&mut rejection_tags, &tags);
            }
        }
    }
    let control_field = if field.small_order().is_some_and(|q| q < 5) {
        make_extension(field.characteristic(), field.degree() * 3)?
    } else {
        field.clone()
    };
    let control = common_factor_checks(&collinear_control(&control_field)?)?;
    let all_decreasing = !records.is_empty() && records.iter().all(|r| r.decreasing_type);
    Ok(DecreasingTypeReport {
        curve: curve.label().to_string(),
        seed,
        trials_requested: trials,
        trials_completed: records.len(),
        trials_rejected: rejected,
        rejection_tags,
        shape_warnings: records.iter().map(|r| r.shape_warnings).sum(),
        trials: records,
        all_decreasing,
        all_pass: all_decreasing && control.ok,
        control,
    })
}

/// Every check on the section of (t, t^q, t^{q^2}) through three of its points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RathmannReport {
    pub p: u64,
    pub f: usize,
    pub q: u64,
    pub seed: u64,
    pub field: Value,
    pub plane: Vec<Value>,
    pub points: usize,
    pub matches_plane_section: bool,
    pub collinear_triples: usize,
    pub upp: UppVerdict,
    pub upp_witness: Option<crate::upp::UppWitness>,
    pub minimal_degree: usize,
    pub system_dimension: usize,
    pub delta: Vec<usize>,
    pub decreasing_type: bool,
    pub members_tested: usize,
    pub members_irreducible: usize,
    pub member_field: Value,
    /// Each expected value and whether it was met; empty unless verification was requested.
    pub checks: BTreeMap<String, bool>,
    pub all_pass: bool,
}

/// Binomial coefficient for small arguments.
fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn rathmann_pipeline(
    p: u64,
    f: usize,
    ext_m: usize,
    members: usize,
    seed: u64,
    verify: bool,
) -> Result<RathmannReport> {
    let sec = rathmann_section_direct(p, f, ext_m, seed)?;
    let q = sec.q;
    let x = &sec.points;
    let triples = collinear_triples(x).len();
    let upp = upp_check(x, UppMode::Exhaustive, 0, seed, DEFAULT_UPP_BUDGET)?;
    let prof = profile(x)?;
    let s = minimal_degree(x);
    let sys = linear_system(x, s);
    let base = x.field().clone();
    let ext = make_extension(base.characteristic(), base.degree() * 3)?;
    let emb = Embedding::new(&base, &ext)?;
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, u64::MAX));
    let forms = (0..members)
        .map(|_| random_member(&sys, &mut rng, Some(&emb)))
        .collect::<Result<Vec<_>>>()?;
    let tester = IrreducibilityTester::new(&ext, s.max(1), seed);
    let verdicts = forms.par_iter().map(|g| tester.test(g)).collect::<Result<Vec<_>>>()?;
    let irreducible = verdicts.iter().filter(|v| **v == Irreducibility::True).count();
    let decreasing = is_decreasing_type(&prof);

    let mut checks = BTreeMap::new();
    if verify {
        let expected_delta: Vec<usize> = (1..=q as usize).chain((1..q as usize).rev()).collect();
        checks.insert(format!("points = {}", q * q), x.len() as u64 == q * q);
        checks.insert("matches plane section".into(), sec.matches_plane_section);
        let t = q * (q + 1) * choose(q, 3);
        checks.insert(format!("collinear triples = {t}"), triples as u64 == t);
        let upp_expected = if q >= 3 { UppVerdict::Fails } else { UppVerdict::Holds };
        checks.insert(
            format!("upp {upp_expected:?}").to_lowercase(),
            upp.verdict == upp_expected,
        );
        checks.insert(format!("minimal degree = {q}"), s as u64 == q);
        checks.insert("system dimension = 2".into(), sys.dimension() == 2);
        checks.insert(format!("delta = {expected_delta:?}"), prof.deltas == expected_delta);
        checks.insert("decreasing type".into(), decreasing);
        checks.insert("all members irreducible".into(), members > 0 && irreducible == members);
    }
    let all_pass = checks.values().all(|&b| b);
    Ok(RathmannReport {
        p,
        f,
        q,
        seed,
        field: crate::io::field_to_json(&base),
        plane: sec.plane.duals().iter().map(element_to_json).collect(),
        points: x.len(),
        matches_plane_section: sec.matches_plane_section,
        collinear_triples: triples,
        upp: upp.verdict,
        upp_witness: upp.witness,
        minimal_degree: s,
        system_dimension: sys.dimension(),
        delta: prof.deltas,
        decreasing_type: decreasing,
        members_tested: members,
        members_irreducible: irreducible,
        member_field: crate::io::field_to_json(&ext),
        checks,
        all_pass,
    })
}
