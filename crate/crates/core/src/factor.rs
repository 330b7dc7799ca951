//! Factorization and root finding for univariate polynomials over finite fields.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::field::{make_extension, Field, FieldElement};
use crate::poly::UniPoly;

/// `unit * prod(factor^mult)`, factors monic, irreducible, distinct and
/// sorted canonically (degree, then coefficients lowest degree first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(UniPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// A root of a polynomial in some extension of its coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Value in the smallest field containing it.
    pub value: FieldElement,
    pub multiplicity: usize,
    /// Degree of that field over the coefficient field.
    pub ext_degree: usize,
}

fn require_finite(f: &UniPoly) -> Result<()> {
    if !f.field().is_finite() {
        return Err(Error::RationalField);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

/// Complete factorization over the coefficient field. The seed drives the
/// randomized equal-degree splitting; the result does not depend on it.
pub fn factor_univariate(f: &UniPoly, seed: u64) -> Result<Factorization> {
    require_finite(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = f.leading().cloned().expect("nonzero");
    let monic = f.monic();
    let mut factors: Vec<(UniPoly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    Ok(Factorization {
        unit,
        factors: merge_factors(factors),
    })
}

fn merge_factors(mut factors: Vec<(UniPoly, usize)>) -> Vec<(UniPoly, usize)> {
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let mut out: Vec<(UniPoly, usize)> = Vec::with_capacity(factors.len());
    for (g, e) in factors {
        match out.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => out.push((g, e)),
        }
    }
    out
}

fn pth_root_poly(f: &UniPoly) -> UniPoly {
    let p = f.field().characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| c.pth_root().expect("finite field"))
        .collect();
    UniPoly::new(f.field(), coeffs)
}

/// Squarefree parts of a monic polynomial with their multiplicities. An
/// irreducible may appear in more than one entry when its multiplicity is
/// not a multiple of p but exceeds p; callers merge.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.field().characteristic() as usize;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).expect("gcd divides");
        if !fac.is_constant() {
            out.push((fac.monic(), i));
        }
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        for (g, e) in squarefree_decomposition(&pth_root_poly(&c).monic()) {
            out.push((g, e * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: `(product, degree)`.
pub fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field();
    let q = field.order().expect("finite field");
    let x = UniPoly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(&q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_constant() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if !rest.is_constant() {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct monic irreducibles
/// of degree `d`.
pub fn equal_degree<R: Rng + ?Sized>(f: &UniPoly, d: usize, rng: &mut R) -> Vec<UniPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let p = field.characteristic();
    let m = field.degree();
    let qd = BigUint::from(p).pow((m * d) as u32);
    let half = (&qd - BigUint::one()) >> 1;
    loop {
        let a = UniPoly::new(&field, (0..n).map(|_| field.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // absolute trace to F_2: a + a^2 + ... + a^(2^(md-1))
            let mut acc = a.rem(f);
            let mut term = acc.clone();
            for _ in 1..(m * d) {
                term = term.mulmod(&term, f);
                acc = acc.add(&term);
            }
            acc
        } else {
            a.powmod(&half, f).sub(&UniPoly::one(&field))
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let other = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Roots of `f` lying in its own coefficient field, without multiplicity,
/// in canonical element order.
pub fn find_roots(f: &UniPoly, seed: u64) -> Result<Vec<FieldElement>> {
    require_finite(f)?;
    let field = f.field();
    let q = field.order().expect("finite");
    let monic = f.monic();
    let x = UniPoly::x(field);
    let xq = x.powmod(&q, &monic);
    let split = monic.gcd(&xq.sub(&x));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots: Vec<FieldElement> = equal_degree(&split, 1, &mut rng)
        .into_iter()
        .map(|g| -&g.coeff(0))
        .collect();
    roots.sort();
    Ok(roots)
}

/// Roots of `f` in F_{q^d} for every d <= `max_ext`, each reported in the
/// smallest such field (the canonical F_{p^{m d}}).
pub fn roots_in_extension(f: &UniPoly, max_ext: usize, seed: u64) -> Result<Vec<Root>> {
    require_finite(f)?;
    let base = f.field().clone();
    let fact = factor_univariate(f, seed)?;
    let mut out = Vec::new();
    let mut fields: Vec<Option<(Field, Embedding)>> = vec![None; max_ext + 1];
    for (g, e) in &fact.factors {
        let d = g.degree().unwrap();
        if d > max_ext {
            continue;
        }
        if d == 1 {
            out.push(Root {
                value: -&g.coeff(0),
                multiplicity: *e,
                ext_degree: 1,
            });
            continue;
        }
        if fields[d].is_none() {
            let ext = make_extension(base.characteristic(), base.degree() * d)?;
            let emb = Embedding::new(&base, &ext)?;
            fields[d] = Some((ext, emb));
        }
        let (ext, emb) = fields[d].as_ref().unwrap();
        let lifted = g.map_coeffs(ext, |c| emb.apply(c));
        for r in find_roots(&lifted, seed)? {
            out.push(Root {
                value: r,
                multiplicity: *e,
                ext_degree: d,
            });
        }
    }
    out.sort_by(|a, b| a.ext_degree.cmp(&b.ext_degree).then_with(|| a.value.cmp(&b.value)));
    Ok(out)
}

/// Monic irreducibles of degree `d` over a small field, by exhaustive
/// search with [`factor_univariate`].
pub fn irreducibles_of_degree(field: &Field, d: usize) -> Vec<UniPoly> {
    let q = field.small_order().expect("small finite field");
    let count = q.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut k = idx;
        for _ in 0..d {
            coeffs.push(field.element_by_index(k % q));
            k /= q;
        }
        coeffs.push(field.one());
        let f = UniPoly::new(field, coeffs);
        if factor_univariate(&f, 0).unwrap().is_irreducible() {
            out.push(f);
        }
    }
    out
}
