//! Plane curves through a point set: forms, linear systems, common factors
//! and absolute irreducibility over finite fields.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bivariate::{factor_bivariate, BiPoly};
use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::field::{make_extension, Field, FieldElement};
use crate::fp::prime_factors;
use crate::geometry::{PointConfiguration, ProjPoint};
use crate::hilbert::{evaluation_matrix, forms_dimension, hilbert_value, monomial_index, monomials};
use crate::linalg::kernel_basis;

/// Homogeneous polynomial in x, y, z; coefficients follow
/// [`monomials`] of its degree. Nonzero forms are scaled so the first
/// nonzero coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryForm {
    field: Field,
    degree: usize,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*x^{}y^{}z^{}", m[0], m[1], m[2])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl TernaryForm {
    pub fn new(field: &Field, degree: usize, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != forms_dimension(degree) {
            return Err(Error::InvalidInput(format!(
                "a form of degree {degree} has {} coefficients",
                forms_dimension(degree)
            )));
        }
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if let Some(first) = coeffs.iter().find(|c| !c.is_zero()) {
            let inv = first.inv().unwrap();
            for c in coeffs.iter_mut() {
                *c = &*c * &inv;
            }
        }
        Ok(TernaryForm {
            field: field.clone(),
            degree,
            coeffs,
        })
    }

    pub fn zero(field: &Field, degree: usize) -> Self {
        TernaryForm {
            field: field.clone(),
            degree,
            coeffs: vec![field.zero(); forms_dimension(degree)],
        }
    }

    /// Sum of c x^a y^b z^c; every exponent triple must have the given degree.
    pub fn from_terms(field: &Field, degree: usize, terms: &[([usize; 3], FieldElement)]) -> Result<Self> {
        let mut coeffs = vec![field.zero(); forms_dimension(degree)];
        for (e, c) in terms {
            if e.iter().sum::<usize>() != degree {
                return Err(Error::InvalidInput(format!("monomial {e:?} is not of degree {degree}")));
            }
            let k = monomial_index(*e);
            coeffs[k] = &coeffs[k] + c;
        }
        TernaryForm::new(field, degree, coeffs)
    }

    pub fn from_i64(field: &Field, degree: usize, terms: &[([usize; 3], i64)]) -> Result<Self> {
        let t: Vec<_> = terms.iter().map(|&(e, c)| (e, field.from_i64(c))).collect();
        Self::from_terms(field, degree, &t)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [usize; 3]) -> FieldElement {
        self.coeffs[monomial_index(e)].clone()
    }

    /// Nonzero (exponents, coefficient) pairs in graded lex order.
    pub fn terms(&self) -> Vec<([usize; 3], FieldElement)> {
        monomials(self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, p: &ProjPoint) -> FieldElement {
        let c = p.coords();
        monomials(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, a)| !a.is_zero())
            .fold(self.field.zero(), |acc, (m, a)| {
                &acc + &(&(&(a * &c[0].pow(m[0] as u64)) * &c[1].pow(m[1] as u64)) * &c[2].pow(m[2] as u64))
            })
    }

    pub fn vanishes_on(&self, x: &PointConfiguration) -> bool {
        x.points().iter().all(|p| self.eval(p).is_zero())
    }

    pub fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let degree = self.degree + other.degree;
        let mut coeffs = vec![self.field.zero(); forms_dimension(degree)];
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let k = monomial_index([a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
                coeffs[k] = &coeffs[k] + &(&ca * &cb);
            }
        }
        TernaryForm::new(&self.field, degree, coeffs).expect("consistent degree")
    }

    pub fn map(&self, emb: &Embedding) -> TernaryForm {
        TernaryForm::new(
            emb.target(),
            self.degree,
            self.coeffs.iter().map(|c| emb.apply(c)).collect(),
        )
        .expect("same shape")
    }

    /// Largest k with z^k dividing the form.
    pub fn z_valuation(&self) -> usize {
        self.terms().iter().map(|(m, _)| m[2]).min().unwrap_or(0)
    }

    /// F(x, y, 1).
    pub fn dehomogenize(&self) -> BiPoly {
        let terms: Vec<_> = self.terms().into_iter().map(|(m, c)| (m[0], m[1], c)).collect();
        BiPoly::from_terms(&self.field, &terms)
    }

    /// z^(degree - total degree) f(x/z, y/z) for a polynomial of total
    /// degree at most `degree`.
    pub fn homogenize(f: &BiPoly, degree: usize) -> Result<TernaryForm> {
        let terms: Vec<_> = f
            .terms()
            .map(|(i, j, c)| {
                let k = degree
                    .checked_sub(i + j)
                    .ok_or_else(|| Error::InvalidInput("polynomial degree exceeds form degree".into()))?;
                Ok(([i, j, k], c.clone()))
            })
            .collect::<Result<_>>()?;
        TernaryForm::from_terms(f.field(), degree, &terms)
    }

    /// The same form over the source of `emb`, if every coefficient lies there.
    pub fn restrict(&self, emb: &Embedding) -> Option<TernaryForm> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| emb.restrict(c))
            .collect::<Option<Vec<_>>>()?;
        TernaryForm::new(emb.source(), self.degree, coeffs).ok()
    }

    /// Whether this form divides `other` exactly.
    pub fn divides(&self, other: &TernaryForm) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        if self.degree > other.degree {
            return other.is_zero();
        }
        if self.z_valuation() > other.z_valuation() && !other.is_zero() {
            return false;
        }
        other.dehomogenize().exact_div(&self.dehomogenize()).is_some()
    }
}

/// Forms of degree `degree` vanishing on X: the canonical kernel of the
/// evaluation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub points: PointConfiguration,
    pub degree: usize,
    pub basis: Vec<TernaryForm>,
}

impl LinearSystem {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Least s with a nonzero form of degree s through X.
pub fn minimal_degree(x: &PointConfiguration) -> usize {
    (0..).find(|&s| hilbert_value(x, s) < forms_dimension(s)).unwrap()
}

pub fn linear_system(x: &PointConfiguration, s: usize) -> LinearSystem {
    let field = x.field();
    let basis = if x.is_empty() {
        (0..forms_dimension(s))
            .map(|k| {
                let mut c = vec![field.zero(); forms_dimension(s)];
                c[k] = field.one();
                TernaryForm::new(field, s, c).unwrap()
            })
            .collect()
    } else {
        kernel_basis(&evaluation_matrix(x.points(), s))
            .into_iter()
            .map(|v| TernaryForm::new(field, s, v).expect("kernel vector has the right length"))
            .collect()
    };
    LinearSystem {
        points: x.clone(),
        degree: s,
        basis,
    }
}

/// A random combination of the basis with coefficients drawn uniformly
/// from the system's field, or from the target of `over` when given.
pub fn random_member<R: Rng + ?Sized>(
    sys: &LinearSystem,
    rng: &mut R,
    over: Option<&Embedding>,
) -> Result<TernaryForm> {
    match over {
        Some(emb) => random_combination(&sys.basis.iter().map(|f| f.map(emb)).collect::<Vec<_>>(), rng),
        None => random_combination(&sys.basis, rng),
    }
}

/// A nonzero-weighted random combination of forms sharing a field and degree.
pub fn random_combination<R: Rng + ?Sized>(basis: &[TernaryForm], rng: &mut R) -> Result<TernaryForm> {
    let first = basis.first().ok_or(Error::EmptySystem)?;
    let (field, degree) = (first.field().clone(), first.degree());
    if basis.iter().any(|f| f.field() != &field || f.degree() != degree) {
        return Err(Error::FieldMismatch);
    }
    loop {
        let weights: Vec<FieldElement> = (0..basis.len()).map(|_| field.random(rng)).collect();
        if weights.iter().all(|w| w.is_zero()) {
            continue;
        }
        let mut coeffs = vec![field.zero(); forms_dimension(degree)];
        for (w, f) in weights.iter().zip(basis) {
            for (c, a) in coeffs.iter_mut().zip(f.coeffs()) {
                *c = &*c + &(w * a);
            }
        }
        return TernaryForm::new(&field, degree, coeffs);
    }
}

/// Greatest common divisor of all basis forms, normalized; degree 0 means
/// the forms share no factor.
pub fn gcd_of_system(sys: &LinearSystem) -> Result<TernaryForm> {
    if sys.basis.is_empty() {
        return Err(Error::EmptySystem);
    }
    let field = sys.points.field();
    let v = sys.basis.iter().map(|f| f.z_valuation()).min().unwrap();
    let g = sys
        .basis
        .iter()
        .fold(BiPoly::zero(field), |acc, f| acc.gcd(&f.dehomogenize()));
    let dg = g.total_degree().unwrap_or(0);
    let zpow = TernaryForm::from_terms(field, v, &[([0, 0, v], field.one())])?;
    Ok(TernaryForm::homogenize(&g, dg)?.mul(&zpow))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    True,
    False,
    Inconclusive,
}

/// Absolute irreducibility tests over one base field, caching the
/// extensions F_{q^r} and their embeddings across calls.
pub struct IrreducibilityTester {
    base: Field,
    max_conj: usize,
    seed: u64,
    extensions: Mutex<HashMap<usize, Embedding>>,
}

impl IrreducibilityTester {
    pub fn new(base: &Field, max_conj: usize, seed: u64) -> Self {
        IrreducibilityTester {
            base: base.clone(),
            max_conj,
            seed,
            extensions: Mutex::new(HashMap::new()),
        }
    }

    fn extension(&self, r: usize) -> Result<Embedding> {
        if let Some(e) = self.extensions.lock().unwrap().get(&r) {
            return Ok(e.clone());
        }
        let ext = make_extension(self.base.characteristic(), self.base.degree() * r)?;
        let emb = Embedding::new(&self.base, &ext)?;
        self.extensions.lock().unwrap().insert(r, emb.clone());
        Ok(emb)
    }

    /// An irreducible form over F_q splits over the algebraic closure into
    /// r conjugate factors defined over F_{q^r}, with r dividing the
    /// degree; it suffices to factor over F_{q^r} for primes r.
    pub fn test(&self, form: &TernaryForm) -> Result<Irreducibility> {
        if form.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if form.field() != &self.base {
            return Err(Error::FieldMismatch);
        }
        if !self.base.is_finite() {
            return Err(Error::RationalField);
        }
        let d = form.degree();
        if d == 0 {
            return Err(Error::InvalidInput("constant form".into()));
        }
        if d == 1 {
            return Ok(Irreducibility::True);
        }
        if form.z_valuation() > 0 {
            return Ok(Irreducibility::False);
        }
        let f = form.dehomogenize();
        if !factor_bivariate(&f, self.seed)?.is_irreducible() {
            return Ok(Irreducibility::False);
        }
        let mut skipped = false;
        for r in prime_factors(d as u64) {
            let r = r as usize;
            if r > self.max_conj {
                skipped = true;
                continue;
            }
            let emb = self.extension(r)?;
            let lifted = f.map_coeffs(emb.target(), |c| emb.apply(c));
            if !factor_bivariate(&lifted, self.seed)?.is_irreducible() {
                return Ok(Irreducibility::False);
            }
        }
        Ok(if skipped {
            Irreducibility::Inconclusive
        } else {
            Irreducibility::True
        })
    }
}

pub fn is_absolutely_irreducible(form: &TernaryForm, max_conj: usize) -> Result<Irreducibility> {
    IrreducibilityTester::new(form.field(), max_conj, 0).test(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn simple_forms() {
        let f5 = make_extension(5, 1).unwrap();
        let xy = TernaryForm::from_i64(&f5, 2, &[([1, 1, 0], 1)]).unwrap();
        assert_eq!(is_absolutely_irreducible(&xy, 3).unwrap(), Irreducibility::False);
        let conic = TernaryForm::from_i64(&f5, 2, &[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], -1)]).unwrap();
        assert_eq!(is_absolutely_irreducible(&conic, 3).unwrap(), Irreducibility::True);
        let line = TernaryForm::from_i64(&f5, 1, &[([0, 0, 1], 1)]).unwrap();
        assert_eq!(is_absolutely_irreducible(&line, 1).unwrap(), Irreducibility::True);
        assert_eq!(
            is_absolutely_irreducible(&TernaryForm::zero(&f5, 2), 2).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn sum_of_squares_over_f3() {
        let f3 = make_extension(3, 1).unwrap();
        let form = TernaryForm::from_i64(&f3, 2, &[([2, 0, 0], 1), ([0, 2, 0], 1)]).unwrap();
        assert!(factor_bivariate(&form.dehomogenize(), 0).unwrap().is_irreducible());
        assert_eq!(is_absolutely_irreducible(&form, 2).unwrap(), Irreducibility::False);
        assert_eq!(
            is_absolutely_irreducible(&form, 1).unwrap(),
            Irreducibility::Inconclusive
        );
    }

    #[test]
    fn systems_through_points() {
        let f = make_extension(101, 1).unwrap();
        let one = PointConfiguration::from_i64(&f, &[[1, 2, 3]], "p").unwrap();
        assert_eq!(minimal_degree(&one), 1);
        let tri = PointConfiguration::from_i64(&f, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]], "t").unwrap();
        assert_eq!(minimal_degree(&tri), 2);
        assert!(linear_system(&tri, 1).basis.is_empty());
        let net = linear_system(&tri, 2);
        assert_eq!(net.dimension(), 3);
        assert!(net.basis.iter().all(|f| f.vanishes_on(&tri)));
        assert_eq!(gcd_of_system(&net).unwrap().degree(), 0);

        let two = PointConfiguration::from_i64(&f, &[[1, 0, 0], [0, 1, 0]], "2").unwrap();
        let l = linear_system(&two, 1);
        assert_eq!(l.basis, vec![TernaryForm::from_i64(&f, 1, &[([0, 0, 1], 1)]).unwrap()]);
        let m = random_member(&l, &mut rand_chacha::ChaCha8Rng::seed_from_u64(1), None).unwrap();
        assert_eq!(m, l.basis[0]);
    }

    #[test]
    fn gcd_of_constructed_system() {
        let f = make_extension(7, 1).unwrap();
        let x = TernaryForm::from_i64(&f, 1, &[([1, 0, 0], 1)]).unwrap();
        let l1 = TernaryForm::from_i64(&f, 1, &[([0, 1, 0], 1), ([0, 0, 1], 2)]).unwrap();
        let l2 = TernaryForm::from_i64(&f, 1, &[([0, 1, 0], 3), ([0, 0, 1], 1)]).unwrap();
        let pts = PointConfiguration::new(&f, vec![], "none").unwrap();
        let sys = LinearSystem {
            points: pts,
            degree: 2,
            basis: vec![x.mul(&l1), x.mul(&l2)],
        };
        assert_eq!(gcd_of_system(&sys).unwrap(), x);
        let z = TernaryForm::from_i64(&f, 1, &[([0, 0, 1], 1)]).unwrap();
        let sys = LinearSystem {
            basis: vec![z.mul(&x), z.mul(&l1.mul(&l2)).mul(&z)],
            degree: 2,
            ..sys
        };
        assert_eq!(gcd_of_system(&sys).unwrap(), z);
    }

    #[test]
    fn five_on_a_line_plus_one() {
        let f = make_extension(101, 1).unwrap();
        let mut pts: Vec<[i64; 3]> = (0..5).map(|i| [1, i, 0]).collect();
        pts.push([0, 0, 1]);
        let x = PointConfiguration::from_i64(&f, &pts, "control").unwrap();
        let sys = linear_system(&x, 2);
        let g = gcd_of_system(&sys).unwrap();
        assert_eq!(g, TernaryForm::from_i64(&f, 1, &[([0, 0, 1], 1)]).unwrap());
        for b in &sys.basis {
            assert!(g.divides(b));
        }
    }
}
