//! Divisor-enumeration oracle for absolute reducibility of small ternary
//! forms over a prime field F_p.
//!
//! A form F of degree d over F_p that splits over the algebraic closure has
//! an absolutely irreducible factor G of degree e ≤ d/2, defined over some
//! F_{p^r}, and the product N(G) of its r Frobenius conjugates divides F
//! over F_p. So the absolutely reducible forms of degree d are exactly the
//! products N(G)·H with G a form of degree e over F_{p^r}, e·r ≤ d, and H a
//! form over F_p of the remaining degree. (When G is itself defined over a
//! smaller field, N(G) is a power and the product is still reducible.)
//! Enumerating those products gives the full set.

#![allow(dead_code)]

use std::collections::HashSet;

use uplab::hilbert::{forms_dimension, monomial_index, monomials};
use uplab::{embed, make_extension, Field, FieldElement, TernaryForm};

/// Every coefficient vector (in monomial order) whose first nonzero entry is 1.
fn normalized_forms(field: &Field, degree: usize) -> Vec<Vec<FieldElement>> {
    let n = forms_dimension(degree);
    let elems: Vec<FieldElement> = field.elements().unwrap().collect();
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        let mut idx = vec![0usize; tail];
        loop {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            for (k, &i) in idx.iter().enumerate() {
                v[lead + 1 + k] = elems[i].clone();
            }
            out.push(v);
            // odometer over the tail
            let Some(pos) = idx.iter().position(|&i| i + 1 < elems.len()) else {
                break;
            };
            idx[pos] += 1;
            for slot in &mut idx[..pos] {
                *slot = 0;
            }
        }
    }
    out
}

fn mul(field: &Field, a: &[FieldElement], da: usize, b: &[FieldElement], db: usize) -> Vec<FieldElement> {
    let mut out = vec![field.zero(); forms_dimension(da + db)];
    for (ma, ca) in monomials(da).iter().zip(a) {
        if ca.is_zero() {
            continue;
        }
        for (mb, cb) in monomials(db).iter().zip(b) {
            let k = monomial_index([ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]]);
            out[k] = &out[k] + &(ca * cb);
        }
    }
    out
}

fn mul_mod(p: u64, a: &[u64], da: usize, b: &[u64], db: usize) -> Vec<u64> {
    let mut out = vec![0u64; forms_dimension(da + db)];
    for (ma, ca) in monomials(da).iter().zip(a) {
        for (mb, cb) in monomials(db).iter().zip(b) {
            let k = monomial_index([ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]]);
            out[k] = (out[k] + ca * cb) % p;
        }
    }
    out
}

fn inverse_mod(p: u64, a: u64) -> u64 {
    (1..p).find(|&b| a * b % p == 1).unwrap()
}

/// Scale so the first nonzero coefficient is 1.
fn normalize_mod(p: u64, mut v: Vec<u64>) -> Vec<u64> {
    if let Some(&lead) = v.iter().find(|&&c| c != 0) {
        let s = inverse_mod(p, lead);
        for c in v.iter_mut() {
            *c = *c * s % p;
        }
    }
    v
}

/// All absolutely reducible forms of degree `d` over F_p, as normalized
/// coefficient vectors in monomial order.
pub fn absolutely_reducible_forms(p: u64, d: usize) -> HashSet<Vec<u64>> {
    let base = make_extension(p, 1).unwrap();
    let mut out = HashSet::new();
    for e in 1..=d / 2 {
        for r in (1..).take_while(|r| e * r <= d) {
            let ext = make_extension(p, r).unwrap();
            let prime_images: Vec<FieldElement> = (0..p)
                .map(|k| embed(&base.element_by_index(k), &ext).unwrap())
                .collect();
            let rest = d - e * r;
            let cofactors: Vec<Vec<u64>> = normalized_forms(&base, rest)
                .into_iter()
                .map(|v| {
                    v.iter()
                        .map(|c| prime_images.iter().position(|x| *x == embed(c, &ext).unwrap()).unwrap() as u64)
                        .collect()
                })
                .collect();
            for g in normalized_forms(&ext, e) {
                let mut norm = g.clone();
                let mut conj = g;
                for i in 1..r {
                    conj = conj.iter().map(|c| c.pow(p)).collect();
                    norm = mul(&ext, &norm, e * i, &conj, e);
                }
                // the norm is fixed by Frobenius, so its coefficients lie in F_p
                let norm_p: Vec<u64> = norm
                    .iter()
                    .map(|c| {
                        prime_images
                            .iter()
                            .position(|x| x == c)
                            .expect("norm not over the prime field") as u64
                    })
                    .collect();
                let norm_deg = e * r;
                for h in &cofactors {
                    out.insert(normalize_mod(p, mul_mod(p, &norm_p, norm_deg, h, rest)));
                }
            }
        }
    }
    out
}

/// Normalized coefficient vector of a form over a prime field.
pub fn prime_key(form: &TernaryForm) -> Vec<u64> {
    let f = form.field();
    let p = f.characteristic();
    let v: Vec<u64> = form
        .coeffs()
        .iter()
        .map(|c| (0..p).find(|&k| f.element_by_index(k) == *c).unwrap())
        .collect();
    normalize_mod(p, v)
}

/// Every nonzero form of the given degree over a prime field.
pub fn all_forms(field: &Field, degree: usize) -> Vec<TernaryForm> {
    normalized_forms(field, degree)
        .into_iter()
        .map(|v| TernaryForm::new(field, degree, v).unwrap())
        .collect()
}
