//! Polynomials in two variables over a finite field, with gcd and
//! factorization by Hensel lifting from a good specialization x = x0.

use std::cmp::Ordering;
use std::fmt;

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::factor::factor_univariate;
use crate::field::{make_extension, Field, FieldElement};
use crate::poly::UniPoly;

/// sum_j c_j(x) y^j, stored as the list of c_j.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: Field,
    coeffs: Vec<UniPoly>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*x^{i}*y^{j}")?;
        }
        Ok(())
    }
}

impl BiPoly {
    pub fn new(field: &Field, mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Self {
        BiPoly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        BiPoly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        BiPoly::new(&field, vec![UniPoly::constant(c)])
    }

    /// Sum of c x^i y^j over the given terms.
    pub fn from_terms(field: &Field, terms: &[(usize, usize, FieldElement)]) -> Self {
        let dy = terms.iter().map(|t| t.1).max().map_or(0, |d| d + 1);
        let mut rows: Vec<Vec<FieldElement>> = vec![Vec::new(); dy];
        for (i, j, c) in terms {
            let row = &mut rows[*j];
            if row.len() <= *i {
                row.resize(i + 1, field.zero());
            }
            row[*i] = &row[*i] + c;
        }
        BiPoly::new(field, rows.into_iter().map(|r| UniPoly::new(field, r)).collect())
    }

    pub fn from_i64(field: &Field, terms: &[(usize, usize, i64)]) -> Self {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, field.from_i64(c))).collect();
        BiPoly::from_terms(field, &t)
    }

    pub fn x(field: &Field) -> Self {
        BiPoly::from_x_poly(UniPoly::x(field))
    }

    pub fn y(field: &Field) -> Self {
        BiPoly::new(field, vec![UniPoly::zero(field), UniPoly::one(field)])
    }

    pub fn from_x_poly(p: UniPoly) -> Self {
        let field = p.field().clone();
        BiPoly::new(&field, vec![p])
    }

    pub fn from_y_poly(p: &UniPoly) -> Self {
        let field = p.field().clone();
        BiPoly::new(
            &field,
            p.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficients of y^0, y^1, ... as polynomials in x.
    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + j).max()
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        self.coeffs.get(j).map_or(self.field.zero(), |c| c.coeff(i))
    }

    /// Nonzero terms (i, j, c) for c x^i y^j, by increasing j then i.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &FieldElement)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(j, c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(i, v)| (i, j, v))
        })
    }

    /// Coefficient of the highest power of y, a polynomial in x.
    pub fn lc_y(&self) -> &UniPoly {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// Coefficient of the largest monomial ordered by y-degree, then x-degree.
    pub fn leading_scalar(&self) -> &FieldElement {
        self.lc_y().leading().expect("nonzero")
    }

    /// Scaled so [`BiPoly::leading_scalar`] is 1, with the scale removed.
    pub fn normalize(&self) -> (FieldElement, BiPoly) {
        if self.is_zero() {
            return (self.field.one(), self.clone());
        }
        let lc = self.leading_scalar().clone();
        (lc.clone(), self.scale(&lc.inv().unwrap()))
    }

    pub fn normalized(&self) -> BiPoly {
        self.normalize().1
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = UniPoly::zero(&self.field);
        BiPoly::new(
            &self.field,
            (0..n)
                .map(|j| {
                    self.coeffs
                        .get(j)
                        .unwrap_or(&zero)
                        .add(other.coeffs.get(j).unwrap_or(&zero))
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut out = vec![UniPoly::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(&self.field, out)
    }

    pub fn pow(&self, e: usize) -> BiPoly {
        (0..e).fold(BiPoly::one(&self.field), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &FieldElement) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_x_poly(&self, p: &UniPoly) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    fn shift_y(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![UniPoly::zero(&self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BiPoly::new(&self.field, coeffs)
    }

    pub fn derivative_x(&self) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c.derivative()).collect())
    }

    pub fn derivative_y(&self) -> BiPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&self.field.from_i64(j as i64)))
            .collect();
        BiPoly::new(&self.field, coeffs)
    }

    /// f(y, x).
    pub fn swap(&self) -> BiPoly {
        let terms: Vec<_> = self.terms().map(|(i, j, c)| (j, i, c.clone())).collect();
        BiPoly::from_terms(&self.field, &terms)
    }

    /// Monic gcd of the coefficients in x; zero for the zero polynomial.
    pub fn content_x(&self) -> UniPoly {
        let mut g = UniPoly::zero(&self.field);
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        g
    }

    /// Exact division of every coefficient by a polynomial in x.
    pub fn div_x_poly(&self, p: &UniPoly) -> Option<BiPoly> {
        let coeffs = self.coeffs.iter().map(|c| c.exact_div(p)).collect::<Option<Vec<_>>>()?;
        Some(BiPoly::new(&self.field, coeffs))
    }

    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.div_x_poly(&self.content_x()).expect("content divides")
    }

    /// q with self = q * divisor, if it exists.
    pub fn exact_div(&self, divisor: &BiPoly) -> Option<BiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        let dg = divisor.deg_y().unwrap();
        if dg == 0 {
            return self.div_x_poly(&divisor.coeffs[0]);
        }
        let df = self.deg_y().unwrap();
        if df < dg {
            return None;
        }
        let lc = divisor.lc_y();
        let mut q = vec![UniPoly::zero(&self.field); df - dg + 1];
        let mut r = self.clone();
        while let Some(dr) = r.deg_y() {
            if dr < dg {
                return None;
            }
            let t = r.lc_y().exact_div(lc)?;
            let k = dr - dg;
            r = r.sub(&divisor.mul_x_poly(&t).shift_y(k));
            if r.deg_y() == Some(dr) {
                return None;
            }
            q[k] = t;
        }
        Some(BiPoly::new(&self.field, q))
    }

    /// lc(b)^(deg a - deg b + 1) * a reduced modulo b in y.
    pub fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg_y().expect("nonzero divisor");
        let lc = BiPoly::from_x_poly(b.lc_y().clone());
        let mut r = self.clone();
        while let Some(dr) = r.deg_y() {
            if dr < db {
                break;
            }
            let lead = BiPoly::from_x_poly(r.lc_y().clone()).shift_y(dr - db);
            r = r.mul(&lc).sub(&lead.mul(b));
        }
        r
    }

    /// Normalized greatest common divisor.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let c = self.content_x().gcd(&other.content_x());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            if b.is_zero() {
                break a;
            }
            if b.deg_y() == Some(0) {
                break BiPoly::one(&self.field);
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        };
        g.primitive_part().mul_x_poly(&c).normalized()
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.eval_x(x).eval(y)
    }

    /// f(a, y) as a polynomial in y.
    pub fn eval_x(&self, a: &FieldElement) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| c.eval(a)).collect())
    }

    /// f(x + c, y).
    pub fn shift_x(&self, c: &FieldElement) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|p| p.taylor_shift(c)).collect())
    }

    pub fn map_coeffs<F>(&self, target: &Field, f: F) -> BiPoly
    where
        F: Fn(&FieldElement) -> FieldElement,
    {
        BiPoly::new(target, self.coeffs.iter().map(|p| p.map_coeffs(target, &f)).collect())
    }

    /// Whether f = g^p for the field characteristic p.
    pub fn is_pth_power(&self) -> bool {
        self.field.is_finite() && self.derivative_x().is_zero() && self.derivative_y().is_zero()
    }

    /// g with g^p = f; only meaningful when [`BiPoly::is_pth_power`].
    pub fn pth_root(&self) -> BiPoly {
        let p = self.field.characteristic() as usize;
        let terms: Vec<_> = self
            .terms()
            .map(|(i, j, c)| (i / p, j / p, c.pth_root().expect("finite field")))
            .collect();
        BiPoly::from_terms(&self.field, &terms)
    }

    /// Total degree, then y-degree, then coefficients.
    pub fn canonical_cmp(&self, other: &BiPoly) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| {
                self.coeffs
                    .iter()
                    .zip(&other.coeffs)
                    .map(|(a, b)| a.canonical_cmp(b))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

/// unit * prod f_i^e_i with each f_i normalized and irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiFactorization {
    pub unit: FieldElement,
    pub factors: Vec<(BiPoly, usize)>,
}

impl BiFactorization {
    pub fn expand(&self) -> BiPoly {
        self.factors
            .iter()
            .fold(BiPoly::constant(self.unit.clone()), |acc, (f, e)| acc.mul(&f.pow(*e)))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factorization over the coefficient field. Each squarefree part is
/// specialized at a point x = x0 where it stays squarefree of full
/// y-degree, the univariate factors are lifted x-adically and recombined
/// by subset search. When no such point exists in the field, the lifting
/// runs over an extension and conjugate factors are multiplied back together.
pub fn factor_bivariate(f: &BiPoly, seed: u64) -> Result<BiFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.field().is_finite() {
        return Err(Error::RationalField);
    }
    let (unit, g) = f.normalize();
    let mut irreducibles = Vec::new();
    let c = g.content_x();
    if !c.is_constant() {
        for (u, _) in factor_univariate(&c, seed)?.factors {
            irreducibles.push(BiPoly::from_x_poly(u));
        }
    }
    let mut rest = g.div_x_poly(&c).expect("content divides");
    while !rest.is_constant() {
        if rest.is_pth_power() {
            rest = rest.pth_root();
            continue;
        }
        let d = rest.gcd(&rest.derivative_x()).gcd(&rest.derivative_y());
        let s = rest.exact_div(&d).expect("gcd divides");
        let found = factor_squarefree(&s, seed)?;
        for h in &found {
            while let Some(q) = rest.exact_div(h) {
                rest = q;
            }
        }
        irreducibles.extend(found);
    }
    let mut remaining = g;
    let mut factors = Vec::with_capacity(irreducibles.len());
    for h in irreducibles {
        let mut e = 0;
        while let Some(q) = remaining.exact_div(&h) {
            remaining = q;
            e += 1;
        }
        debug_assert!(e > 0);
        factors.push((h, e));
    }
    debug_assert!(remaining.is_constant());
    let unit = &unit * &remaining.coeff(0, 0);
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(BiFactorization { unit, factors })
}

/// Normalized irreducible factors of a squarefree polynomial.
fn factor_squarefree(s: &BiPoly, seed: u64) -> Result<Vec<BiPoly>> {
    let mut out = Vec::new();
    if s.is_constant() {
        return Ok(out);
    }
    let c = s.content_x();
    if !c.is_constant() {
        for (u, _) in factor_univariate(&c, seed)?.factors {
            out.push(BiPoly::from_x_poly(u));
        }
    }
    let s = s.div_x_poly(&c).expect("content divides");
    match s.deg_y() {
        Some(0) => return Ok(out),
        Some(1) => {
            out.push(s.normalized());
            return Ok(out);
        }
        _ => {}
    }
    let sy = s.derivative_y();
    if sy.is_zero() {
        out.extend(
            factor_squarefree(&s.swap(), seed)?
                .iter()
                .map(|h| h.swap().normalized()),
        );
        return Ok(out);
    }
    let d = s.gcd(&sy);
    if !d.is_constant() {
        out.extend(factor_squarefree(&d, seed)?);
        out.extend(factor_squarefree(&s.exact_div(&d).expect("gcd divides"), seed)?);
        return Ok(out);
    }
    out.extend(factor_separable(&s, seed)?);
    Ok(out)
}

/// Upper bound on the number of x0 where the leading coefficient vanishes
/// or the specialization acquires a repeated root.
fn bad_point_bound(s: &BiPoly) -> u64 {
    let n = s.deg_y().unwrap() as u64;
    let dx = s.deg_x().unwrap_or(0) as u64;
    dx + (2 * n).saturating_sub(1) * dx
}

fn good_point(s: &BiPoly, candidates: impl Iterator<Item = FieldElement>) -> Option<FieldElement> {
    candidates.filter(|a| !s.lc_y().eval(a).is_zero()).find(|a| {
        let u = s.eval_x(a);
        u.gcd(&u.derivative()).is_constant()
    })
}

fn candidates(field: &Field, limit: u64) -> impl Iterator<Item = FieldElement> + '_ {
    let count = field.small_order().map_or(limit, |q| q.min(limit));
    (0..count).map(move |i| field.element_by_index(i))
}

/// Primitive, squarefree, every factor has nonzero y-derivative, deg_y ≥ 2.
fn factor_separable(s: &BiPoly, seed: u64) -> Result<Vec<BiPoly>> {
    let base = s.field().clone();
    let limit = bad_point_bound(s) + 1;
    if let Some(x0) = good_point(s, candidates(&base, limit)) {
        return hensel_factor(s, &x0, seed);
    }
    for k in 2..=16 {
        let ext = make_extension(base.characteristic(), base.degree() * k)?;
        let emb = Embedding::new(&base, &ext)?;
        let lifted = s.map_coeffs(&ext, |c| emb.apply(c));
        if let Some(x0) = good_point(&lifted, candidates(&ext, limit)) {
            let over_ext = hensel_factor(&lifted, &x0, seed)?;
            return Ok(descend(&over_ext, &emb));
        }
    }
    Err(Error::SubstitutionExhausted)
}

/// Groups factors over an extension into Frobenius orbits over the base
/// field and returns the orbit products, restricted to the base.
fn descend(factors: &[BiPoly], emb: &Embedding) -> Vec<BiPoly> {
    let base = emb.source();
    let ext = emb.target();
    let e = base.degree();
    let frob = |f: &BiPoly| f.map_coeffs(ext, |c| c.frobenius(e).expect("finite"));
    let mut used = vec![false; factors.len()];
    let mut out = Vec::new();
    for i in 0..factors.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut prod = factors[i].clone();
        let mut g = frob(&factors[i]);
        while g != factors[i] {
            let j = factors
                .iter()
                .position(|h| *h == g)
                .expect("factor set is Frobenius-stable");
            used[j] = true;
            prod = prod.mul(&g);
            g = frob(&g);
        }
        let restricted = prod.map_coeffs(base, |c| {
            emb.restrict(c).expect("orbit product is defined over the base")
        });
        out.push(restricted.normalized());
    }
    out
}

/// x-adic series sum_k a_k(y) x^k truncated at a fixed precision.
type Series = Vec<UniPoly>;

fn series_mul(a: &Series, b: &Series, prec: usize, field: &Field) -> Series {
    let mut out = vec![UniPoly::zero(field); prec];
    for (i, ai) in a.iter().enumerate().take(prec) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(prec - i) {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

/// Inverse of a power series in x with nonzero constant term, mod x^prec.
fn series_inverse(p: &UniPoly, prec: usize) -> UniPoly {
    let field = p.field();
    let c0inv = p.coeff(0).inv().expect("unit constant term");
    let mut inv = vec![c0inv.clone()];
    for k in 1..prec {
        let mut acc = field.zero();
        for i in 1..=k {
            acc += &(&p.coeff(i) * &inv[k - i]);
        }
        inv.push(-&(&acc * &c0inv));
    }
    UniPoly::new(field, inv)
}

/// Given A ≡ g0 h0 (mod x) with g0, h0 coprime and monic in y, lifts to
/// A ≡ G H (mod x^prec).
fn lift_pair(a: &Series, g0: &UniPoly, h0: &UniPoly, prec: usize) -> (Series, Series) {
    let field = g0.field();
    let (_, _, t) = g0.ext_gcd(h0);
    let mut g = vec![g0.clone()];
    let mut h = vec![h0.clone()];
    for k in 1..prec {
        let mut e = a.get(k).cloned().unwrap_or_else(|| UniPoly::zero(field));
        for i in 0..=k {
            if i < g.len() && k - i < h.len() {
                e = e.sub(&g[i].mul(&h[k - i]));
            }
        }
        let dg = t.mul(&e).rem(g0);
        let dh = e.sub(&dg.mul(h0)).exact_div(g0).expect("Bezout identity");
        g.push(dg);
        h.push(dh);
    }
    (g, h)
}

fn to_bipoly(series: &Series, field: &Field) -> BiPoly {
    let mut terms = Vec::new();
    for (i, p) in series.iter().enumerate() {
        for (j, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.push((i, j, c.clone()));
            }
        }
    }
    BiPoly::from_terms(field, &terms)
}

fn hensel_factor(s: &BiPoly, x0: &FieldElement, seed: u64) -> Result<Vec<BiPoly>> {
    let field = s.field().clone();
    let t = s.shift_x(x0);
    let u0 = t.eval_x(&field.zero());
    let fac = factor_univariate(&u0, seed)?;
    if fac.factors.len() == 1 {
        return Ok(vec![s.normalized()]);
    }
    let prec = t.deg_x().unwrap_or(0) + 1;
    let inv = series_inverse(t.lc_y(), prec);
    // monic series M = T / lc(T)
    let scaled: Vec<UniPoly> = t.coeffs().iter().map(|c| c.mul(&inv).truncate(prec)).collect();
    let monic: Series = (0..prec)
        .map(|k| UniPoly::new(&field, scaled.iter().map(|c| c.coeff(k)).collect()))
        .collect();

    let locals: Vec<UniPoly> = fac.factors.iter().map(|(u, _)| u.clone()).collect();
    let mut lifted: Vec<Series> = Vec::with_capacity(locals.len());
    let mut target = monic;
    for i in 0..locals.len() - 1 {
        let rest = locals[i + 1..].iter().fold(UniPoly::one(&field), |acc, u| acc.mul(u));
        let (g, h) = lift_pair(&target, &locals[i], &rest, prec);
        lifted.push(g);
        target = h;
    }
    lifted.push(target);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = t;
    let mut found = Vec::new();
    let mut k = 1;
    while 2 * k <= remaining.len() {
        let mut hit = None;
        let mut sub: Vec<usize> = (0..k).collect();
        loop {
            let lc_series: Series = (0..prec).map(|i| UniPoly::constant(current.lc_y().coeff(i))).collect();
            let prod = sub.iter().fold(lc_series, |acc, &i| {
                series_mul(&acc, &lifted[remaining[i]], prec, &field)
            });
            let cand = to_bipoly(&prod, &field).primitive_part();
            if let Some(q) = current.exact_div(&cand) {
                hit = Some((sub.clone(), cand, q));
                break;
            }
            if !next_subset(&mut sub, remaining.len()) {
                break;
            }
        }
        match hit {
            Some((sub, cand, q)) => {
                found.push(cand);
                current = q;
                let chosen: Vec<usize> = sub.iter().map(|&i| remaining[i]).collect();
                remaining.retain(|i| !chosen.contains(i));
            }
            None => k += 1,
        }
    }
    found.push(current);
    let back = -x0;
    Ok(found.into_iter().map(|f| f.shift_x(&back).normalized()).collect())
}

fn next_subset(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_poly(field: &Field, deg: usize, rng: &mut ChaCha8Rng) -> BiPoly {
        let mut terms = Vec::new();
        for i in 0..=deg {
            for j in 0..=deg - i {
                terms.push((i, j, field.random(rng)));
            }
        }
        BiPoly::from_terms(field, &terms)
    }

    #[test]
    fn arithmetic_and_division() {
        let f = make_extension(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = random_poly(&f, 3, &mut rng);
            let b = random_poly(&f, 2, &mut rng);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let ab = a.mul(&b);
            assert_eq!(ab.exact_div(&b), Some(a.clone()));
            assert_eq!(ab.swap().swap(), ab);
            let g = ab.gcd(&a);
            assert_eq!(g, a.normalized());
        }
        let x = BiPoly::x(&f);
        let y = BiPoly::y(&f);
        assert_eq!(x.add(&BiPoly::one(&f)).exact_div(&y), None);
    }

    #[test]
    fn difference_of_squares_over_f5() {
        let f5 = make_extension(5, 1).unwrap();
        let x = BiPoly::x(&f5);
        let y = BiPoly::y(&f5);
        let p = y.sub(&x).mul(&y.add(&x));
        let fac = factor_bivariate(&p, 0).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(g, e)| g.total_degree() == Some(1) && *e == 1));
        assert_eq!(fac.expand(), p);
    }

    #[test]
    fn frobenius_twisted_factors_need_descent() {
        // x^2 + y^2 over F_3 is irreducible; over F_9 it splits
        let f3 = make_extension(3, 1).unwrap();
        let p = BiPoly::from_i64(&f3, &[(2, 0, 1), (0, 2, 1)]);
        assert!(factor_bivariate(&p, 0).unwrap().is_irreducible());
        let f9 = make_extension(3, 2).unwrap();
        let emb = Embedding::new(&f3, &f9).unwrap();
        let p9 = p.map_coeffs(&f9, |c| emb.apply(c));
        assert_eq!(factor_bivariate(&p9, 0).unwrap().factors.len(), 2);
    }

    #[test]
    fn powers_and_inseparable_factors() {
        let f2 = make_extension(2, 1).unwrap();
        let x = BiPoly::x(&f2);
        let y = BiPoly::y(&f2);
        // (y^2 + x)^2 (x + y + 1)^3 x
        let a = y.pow(2).add(&x);
        let b = x.add(&y).add(&BiPoly::one(&f2));
        let p = a.pow(2).mul(&b.pow(3)).mul(&x);
        let fac = factor_bivariate(&p, 0).unwrap();
        assert_eq!(fac.expand(), p);
        let mut mults: Vec<usize> = fac.factors.iter().map(|f| f.1).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn random_products_over_f3_recovered() {
        let f3 = make_extension(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let parts: Vec<BiPoly> = (0..3)
                .map(|_| loop {
                    let d = 1 + (rand::Rng::gen_range(&mut rng, 0..2));
                    let g = random_poly(&f3, d, &mut rng);
                    if !g.is_constant() {
                        break g;
                    }
                })
                .collect();
            let p = parts.iter().fold(BiPoly::one(&f3), |acc, g| acc.mul(g));
            let fac = factor_bivariate(&p, 7).unwrap();
            assert_eq!(fac.expand(), p);
            for (g, _) in &fac.factors {
                assert!(factor_bivariate(g, 1).unwrap().is_irreducible());
            }
            // every factor of every part appears
            for part in &parts {
                for (g, _) in &factor_bivariate(part, 3).unwrap().factors {
                    assert!(fac.factors.iter().any(|(h, _)| h == g));
                }
            }
        }
    }

    #[test]
    fn y_squared_minus_cubic_over_f2_is_irreducible() {
        let f2 = make_extension(2, 1).unwrap();
        let p = BiPoly::from_i64(&f2, &[(0, 2, 1), (3, 0, 1), (1, 0, 1), (0, 0, 1)]);
        let fac = factor_bivariate(&p, 0).unwrap();
        assert!(fac.is_irreducible());
        // no divisor of the form y + a(x) with deg a ≤ 2
        for a in 0..8u32 {
            let terms: Vec<(usize, usize, i64)> = (0..3)
                .filter(|i| a >> i & 1 == 1)
                .map(|i| (i, 0, 1))
                .chain([(0, 1, 1)])
                .collect();
            let d = BiPoly::from_i64(&f2, &terms);
            assert!(p.exact_div(&d).is_none());
        }
    }
}
