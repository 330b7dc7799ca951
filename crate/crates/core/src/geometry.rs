//! Projective points, planes, rational space curves and their plane sections.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::factor::{factor_univariate, find_roots};
use crate::field::{make_extension, Field, FieldElement};
use crate::linalg::{kernel_basis, ExactMatrix};
use crate::poly::UniPoly;

/// Retry bound used by [`random_plane`] when the caller does not choose one.
pub const DEFAULT_PLANE_RETRIES: usize = 100;

fn normalize(coords: &mut [FieldElement]) -> bool {
    let Some(first) = coords.iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let inv = coords[first].inv().expect("nonzero");
    for c in coords.iter_mut() {
        *c = &*c * &inv;
    }
    true
}

/// A point of P^2 or P^3, scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl ProjPoint {
    pub fn new(mut coords: Vec<FieldElement>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidInput(
                "a projective point needs at least two coordinates".into(),
            ));
        }
        let field = coords[0].field().clone();
        if coords.iter().any(|c| c.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        if !normalize(&mut coords) {
            return Err(Error::InvalidInput("zero vector is not a projective point".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(field: &Field, coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Number of homogeneous coordinates (3 for P^2, 4 for P^3).
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn map(&self, emb: &Embedding) -> ProjPoint {
        ProjPoint {
            coords: self.coords.iter().map(|c| emb.apply(c)).collect(),
        }
    }
}

/// A plane in P^3 given by dual coordinates (t0:t1:t2:t3), normalized like a point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Plane {
    duals: ProjPoint,
}

impl Plane {
    pub fn new(duals: Vec<FieldElement>) -> Result<Self> {
        if duals.len() != 4 {
            return Err(Error::InvalidInput("a plane has four dual coordinates".into()));
        }
        Ok(Plane {
            duals: ProjPoint::new(duals)?,
        })
    }

    pub fn from_i64(field: &Field, duals: &[i64]) -> Result<Self> {
        Self::new(duals.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// The plane spanned by three points of P^3.
    pub fn through(points: [&ProjPoint; 3]) -> Result<Self> {
        let field = points[0].field().clone();
        let m = ExactMatrix::from_rows(&field, points.iter().map(|p| p.coords().to_vec()).collect());
        let k = kernel_basis(&m);
        if k.len() != 1 {
            return Err(Error::DependentSample(1));
        }
        Plane::new(k.into_iter().next().unwrap())
    }

    pub fn field(&self) -> &Field {
        self.duals.field()
    }

    pub fn duals(&self) -> &[FieldElement] {
        self.duals.coords()
    }

    /// sum t_i x_i
    pub fn eval(&self, point: &ProjPoint) -> FieldElement {
        self.duals()
            .iter()
            .zip(point.coords())
            .fold(self.field().zero(), |acc, (t, x)| &acc + &(t * x))
    }

    pub fn contains(&self, point: &ProjPoint) -> bool {
        self.eval(point).is_zero()
    }

    pub fn map(&self, emb: &Embedding) -> Plane {
        Plane {
            duals: self.duals.map(emb),
        }
    }

    /// Index of the first nonzero dual coordinate; that coordinate is dropped
    /// when identifying the plane with P^2.
    pub fn chart_index(&self) -> usize {
        self.duals().iter().position(|c| !c.is_zero()).expect("nonzero plane")
    }
}

/// A rational curve t -> (x0(t):x1(t):x2(t):x3(t)) in P^3, homogenized to
/// degree `degree` so the parameter point at infinity is included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCurve {
    field: Field,
    components: Vec<UniPoly>,
    degree: usize,
    label: String,
}

impl ParamCurve {
    pub fn new(field: &Field, components: Vec<UniPoly>, label: impl Into<String>) -> Result<Self> {
        if components.len() != 4 {
            return Err(Error::InvalidInput("a space curve needs four components".into()));
        }
        if components.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let g = components.iter().fold(UniPoly::zero(field), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::InvalidInput("all components vanish".into()));
        }
        let components: Vec<UniPoly> = components
            .iter()
            .map(|c| c.exact_div(&g).expect("gcd divides"))
            .collect();
        let degree = components.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
        if degree == 0 {
            return Err(Error::InvalidInput("parametrization is constant".into()));
        }
        Ok(ParamCurve {
            field: field.clone(),
            components,
            degree,
            label: label.into(),
        })
    }

    /// The twisted cubic (1, t, t^2, t^3).
    pub fn twisted_cubic(field: &Field) -> Self {
        let comps = (0..4).map(|i| UniPoly::monomial(field.one(), i)).collect();
        ParamCurve::new(field, comps, "twisted_cubic").expect("valid curve")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn components(&self) -> &[UniPoly] {
        &self.components
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn point_at(&self, t: &FieldElement) -> ProjPoint {
        ProjPoint::new(self.components.iter().map(|c| c.eval(t)).collect())
            .expect("coprime components never vanish together")
    }

    /// Image of the parameter (1:0).
    pub fn point_at_infinity(&self) -> ProjPoint {
        ProjPoint::new(self.components.iter().map(|c| c.coeff(self.degree)).collect())
            .expect("some component has full degree")
    }

    pub fn map(&self, emb: &Embedding) -> ParamCurve {
        let target = emb.target();
        ParamCurve {
            field: target.clone(),
            components: self
                .components
                .iter()
                .map(|c| c.map_coeffs(target, |x| emb.apply(x)))
                .collect(),
            degree: self.degree,
            label: self.label.clone(),
        }
    }

    fn over(&self, field: &Field) -> Result<ParamCurve> {
        if &self.field == field {
            return Ok(self.clone());
        }
        Ok(self.map(&Embedding::new(&self.field, field)?))
    }
}

/// Distinct points of P^2 over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    field: Field,
    points: Vec<ProjPoint>,
    label: String,
}

impl PointConfiguration {
    pub fn new(field: &Field, points: Vec<ProjPoint>, label: impl Into<String>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if p.len() != 3 {
                return Err(Error::InvalidInput("configuration points must lie in P^2".into()));
            }
            if p.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !seen.insert(p.clone()) {
                return Err(Error::InvalidInput(format!("duplicate point {p:?}")));
            }
        }
        Ok(PointConfiguration {
            field: field.clone(),
            points,
            label: label.into(),
        })
    }

    pub fn from_i64(field: &Field, points: &[[i64; 3]], label: impl Into<String>) -> Result<Self> {
        let pts = points
            .iter()
            .map(|c| ProjPoint::from_i64(field, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, pts, label)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn subset(&self, idx: &[usize]) -> PointConfiguration {
        PointConfiguration {
            field: self.field.clone(),
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            label: format!("{}[{idx:?}]", self.label),
        }
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn map(&self, emb: &Embedding) -> PointConfiguration {
        PointConfiguration {
            field: emb.target().clone(),
            points: self.points.iter().map(|p| p.map(emb)).collect(),
            label: self.label.clone(),
        }
    }
}

/// sum t_i x_i(t) for the curve embedded into the plane's field.
pub fn section_polynomial(curve: &ParamCurve, plane: &Plane) -> Result<UniPoly> {
    let c = curve.over(plane.field())?;
    let field = plane.field();
    let s = c
        .components
        .iter()
        .zip(plane.duals())
        .fold(UniPoly::zero(field), |acc, (x, t)| acc.add(&x.scale(t)));
    if s.is_zero() {
        return Err(Error::CurveInPlane);
    }
    Ok(s)
}

/// Intersection of a parametrized curve with a plane.
#[derive(Clone, Debug)]
pub struct PlaneSection {
    /// The plane, over the field of the points.
    pub plane: Plane,
    /// Points of P^3, one per distinct parameter found.
    pub points: Vec<ProjPoint>,
    pub multiplicities: Vec<usize>,
    /// Degree of the points' field over the plane's field.
    pub ext_degree: usize,
    /// Degree of the curve: the expected total multiplicity.
    pub curve_degree: usize,
    /// Degrees of irreducible factors of the section polynomial that exceed `max_ext`.
    pub missing_degrees: Vec<usize>,
    pub complete: bool,
    pub reduced: bool,
    pub distinct: bool,
}

impl PlaneSection {
    pub fn field(&self) -> &Field {
        self.plane.field()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Complete, reduced and with pairwise distinct points.
    pub fn is_generic(&self) -> bool {
        self.complete && self.reduced && self.distinct
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    a / x * b
}

/// Points of C ∩ H whose parameters lie in extensions of degree at most
/// `max_ext` over the plane's field, all expressed in the smallest common
/// extension. Factors of higher degree are reported in `missing_degrees`.
pub fn plane_section(curve: &ParamCurve, plane: &Plane, max_ext: usize, seed: u64) -> Result<PlaneSection> {
    let base = plane.field().clone();
    if !base.is_finite() {
        return Err(Error::RationalField);
    }
    let s = section_polynomial(curve, plane)?;
    let c_base = curve.over(&base)?;
    let fact = factor_univariate(&s, seed)?;
    let mut missing = Vec::new();
    let mut l = 1;
    for (g, _) in &fact.factors {
        let d = g.degree().unwrap();
        if d > max_ext {
            missing.push(d);
        } else {
            l = lcm(l, d);
        }
    }
    let (field, emb) = if l == 1 {
        (base.clone(), Embedding::identity(&base))
    } else {
        let f = make_extension(base.characteristic(), base.degree() * l)?;
        let e = Embedding::new(&base, &f)?;
        (f, e)
    };
    let c = c_base.map(&emb);
    let mut points = Vec::new();
    let mut mults = Vec::new();
    for (g, e) in &fact.factors {
        if g.degree().unwrap() > max_ext {
            continue;
        }
        let lifted = g.map_coeffs(&field, |x| emb.apply(x));
        for r in find_roots(&lifted, seed)? {
            points.push(c.point_at(&r));
            mults.push(*e);
        }
    }
    let deg_s = s.degree().unwrap();
    if deg_s < curve.degree() {
        points.push(c.point_at_infinity());
        mults.push(curve.degree() - deg_s);
    }
    let distinct = points.iter().collect::<HashSet<_>>().len() == points.len();
    let complete = missing.is_empty();
    let reduced = complete && mults.iter().all(|&m| m == 1);
    Ok(PlaneSection {
        plane: plane.map(&emb),
        points,
        multiplicities: mults,
        ext_degree: l,
        curve_degree: curve.degree(),
        missing_degrees: missing,
        complete,
        reduced,
        distinct,
    })
}

/// Identify the plane with P^2 by dropping the coordinate at
/// [`Plane::chart_index`].
pub fn coordinatize_on_plane(
    points: &[ProjPoint],
    plane: &Plane,
    label: impl Into<String>,
) -> Result<PointConfiguration> {
    let j = plane.chart_index();
    let field = plane.field();
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        if p.len() != 4 {
            return Err(Error::InvalidInput("expected points of P^3".into()));
        }
        if p.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !plane.contains(p) {
            return Err(Error::PointOffPlane);
        }
        let coords = p
            .coords()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, c)| c.clone())
            .collect();
        out.push(ProjPoint::new(coords)?);
    }
    PointConfiguration::new(field, out, label)
}

/// Inverse of [`coordinatize_on_plane`] for a single point.
pub fn lift_to_plane(point: &ProjPoint, plane: &Plane) -> Result<ProjPoint> {
    if point.len() != 3 {
        return Err(Error::InvalidInput("expected a point of P^2".into()));
    }
    let j = plane.chart_index();
    let t = plane.duals();
    let field = plane.field();
    let mut coords = Vec::with_capacity(4);
    let mut rest = point.coords().iter();
    let mut acc = field.zero();
    for (i, ti) in t.iter().enumerate() {
        if i == j {
            coords.push(field.zero());
        } else {
            let x = rest.next().unwrap().clone();
            acc += &(ti * &x);
            coords.push(x);
        }
    }
    coords[j] = -&(&acc / &t[j]);
    ProjPoint::new(coords)
}

pub fn determinant3(rows: [&[FieldElement]; 3]) -> FieldElement {
    let [a, b, c] = rows;
    let m1 = &(&b[1] * &c[2]) - &(&b[2] * &c[1]);
    let m2 = &(&b[0] * &c[2]) - &(&b[2] * &c[0]);
    let m3 = &(&b[0] * &c[1]) - &(&b[1] * &c[0]);
    &(&(&a[0] * &m1) - &(&a[1] * &m2)) + &(&a[2] * &m3)
}

/// Whether three points of P^2 lie on a line.
pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    determinant3([p.coords(), q.coords(), r.coords()]).is_zero()
}

/// A rejection predicate for [`random_plane`]: returns a tag when the plane
/// should be resampled.
pub type PlanePredicate<'a> = dyn Fn(&Plane) -> Option<String> + 'a;

/// Fires when the plane passes through one of the coordinate points.
pub fn through_coordinate_point(plane: &Plane) -> Option<String> {
    plane
        .duals()
        .iter()
        .any(|t| t.is_zero())
        .then(|| "through_coordinate_point".to_string())
}

/// Uniformly random plane over a finite field, resampled while any
/// predicate fires. Returns the plane and the tags of rejected samples.
pub fn random_plane<R: Rng + ?Sized>(
    field: &Field,
    rng: &mut R,
    avoid: &[&PlanePredicate<'_>],
    max_retries: usize,
) -> Result<(Plane, Vec<String>)> {
    if !field.is_finite() {
        return Err(Error::RationalField);
    }
    let mut tags = Vec::new();
    for _ in 0..max_retries {
        let duals: Vec<FieldElement> = (0..4).map(|_| field.random(rng)).collect();
        let Ok(plane) = Plane::new(duals) else {
            tags.push("zero_plane".to_string());
            continue;
        };
        match avoid.iter().find_map(|pred| pred(&plane)) {
            Some(tag) => tags.push(tag),
            None => return Ok((plane, tags)),
        }
    }
    Err(Error::GenericityExhausted {
        retries: max_retries,
        tags,
    })
}

/// Rejection tags of [`random_generic_section`], in the order checked.
pub fn section_rejection_tag(section: &PlaneSection) -> Option<String> {
    if !section.complete {
        Some("incomplete_section".into())
    } else if !section.reduced {
        Some("non_reduced_section".into())
    } else if !section.distinct {
        Some("coincident_points".into())
    } else {
        None
    }
}

/// Samples planes over `field` until the section is complete within
/// `max_ext`, reduced, and made of distinct points, and the plane avoids
/// the coordinate points.
pub fn random_generic_section<R: Rng + ?Sized>(
    curve: &ParamCurve,
    field: &Field,
    rng: &mut R,
    max_ext: usize,
    max_retries: usize,
    seed: u64,
) -> Result<(PlaneSection, Vec<String>)> {
    let mut tags = Vec::new();
    for _ in 0..max_retries {
        let (plane, mut rejected) = match random_plane(field, rng, &[&through_coordinate_point], 1) {
            Ok(x) => x,
            Err(Error::GenericityExhausted { tags: t, .. }) => {
                tags.extend(t);
                continue;
            }
            Err(e) => return Err(e),
        };
        tags.append(&mut rejected);
        let section = match plane_section(curve, &plane, max_ext, seed) {
            Ok(s) => s,
            Err(Error::CurveInPlane) => {
                tags.push("curve_in_plane".into());
                continue;
            }
            Err(e) => return Err(e),
        };
        match section_rejection_tag(&section) {
            Some(tag) => tags.push(tag),
            None => return Ok((section, tags)),
        }
    }
    Err(Error::GenericityExhausted {
        retries: max_retries,
        tags,
    })
}
