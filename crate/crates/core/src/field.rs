//! Exact coefficient fields: F_p, F_{p^m} and the rationals.
//!
//! A [`Field`] is a cheap, shareable handle around a [`FieldSpec`]. Every
//! [`FieldElement`] carries its field, and arithmetic between elements of
//! different fields panics; moving between fields goes through an
//! [`Embedding`](crate::embed::Embedding).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::fp;

/// Description of a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// F_p[t]/(modulus) with `modulus` monic irreducible of degree `m`.
    Finite {
        p: u64,
        m: usize,
        modulus: Vec<u64>,
    },
    Rational,
}

#[derive(Clone)]
pub struct Field {
    spec: Arc<FieldSpec>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.spec {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::Finite { p, m: 1, .. } => write!(f, "GF({p})"),
            FieldSpec::Finite { p, m, .. } => write!(f, "GF({p}^{m})"),
        }
    }
}

/// The field F_{p^m} with the canonical modulus: the lexicographically
/// smallest monic irreducible of degree `m`, comparing coefficient vectors
/// `(c_0, c_1, ..., c_{m-1})` as integers.
pub fn make_extension(p: u64, m: usize) -> Result<Field> {
    if !fp::is_prime(p) {
        return Err(Error::CompositeCharacteristic(p));
    }
    if p > u32::MAX as u64 {
        return Err(Error::InvalidParameters(format!("characteristic {p} exceeds 32 bits")));
    }
    if m == 0 {
        return Err(Error::DegreeZero);
    }
    let modulus = canonical_modulus(p, m);
    Ok(Field::from_spec(FieldSpec::Finite { p, m, modulus }))
}

fn canonical_modulus(p: u64, m: usize) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    // every candidate with c_0 = 0 is divisible by t, so start at c_0 = 1
    let mut low = vec![0u64; m];
    low[0] = 1;
    loop {
        let mut f = low.clone();
        f.push(1);
        if fp::is_irreducible(&f, p) {
            return f;
        }
        // advance (c_0, ..., c_{m-1}) in lexicographic order: last digit fastest
        let mut i = m - 1;
        loop {
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            // c_0 never wraps: an irreducible exists with c_0 != 0
            i -= 1;
        }
    }
}

impl Field {
    pub fn from_spec(spec: FieldSpec) -> Self {
        Field { spec: Arc::new(spec) }
    }

    pub fn rational() -> Self {
        Field::from_spec(FieldSpec::Rational)
    }

    pub fn prime(p: u64) -> Result<Self> {
        make_extension(p, 1)
    }

    /// F_p[t]/(modulus) with a caller-supplied modulus (lowest degree first).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidParameters(format!("characteristic {p} exceeds 32 bits")));
        }
        if modulus.len() < 2 {
            return Err(Error::DegreeZero);
        }
        let m = modulus.len() - 1;
        if modulus.iter().any(|&c| c >= p) || modulus[m] != 1 || !fp::is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Field::from_spec(FieldSpec::Finite { p, m, modulus }))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_finite(&self) -> bool {
        matches!(*self.spec, FieldSpec::Finite { .. })
    }

    /// Characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match &*self.spec {
            FieldSpec::Finite { p, .. } => *p,
            FieldSpec::Rational => 0,
        }
    }

    /// Degree over the prime field; 1 for the rationals.
    pub fn degree(&self) -> usize {
        match &*self.spec {
            FieldSpec::Finite { m, .. } => *m,
            FieldSpec::Rational => 1,
        }
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        match &*self.spec {
            FieldSpec::Finite { modulus, .. } => Some(modulus),
            FieldSpec::Rational => None,
        }
    }

    pub fn order(&self) -> Option<BigUint> {
        match &*self.spec {
            FieldSpec::Finite { p, m, .. } => Some(BigUint::from(*p).pow(*m as u32)),
            FieldSpec::Rational => None,
        }
    }

    /// Field size if finite and small enough to enumerate.
    pub fn small_order(&self) -> Option<u64> {
        self.order().and_then(|o| o.to_u64())
    }

    pub fn zero(&self) -> FieldElement {
        let repr = match &*self.spec {
            FieldSpec::Finite { m, .. } => Repr::Finite(SmallVec::from_elem(0, *m)),
            FieldSpec::Rational => Repr::Rational(BigRational::zero()),
        };
        FieldElement {
            field: self.clone(),
            repr,
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        let repr = match &*self.spec {
            FieldSpec::Finite { p, m, .. } => {
                let mut c = SmallVec::from_elem(0, *m);
                c[0] = v.rem_euclid(*p as i64) as u64;
                Repr::Finite(c)
            }
            FieldSpec::Rational => Repr::Rational(BigRational::from_integer(BigInt::from(v))),
        };
        FieldElement {
            field: self.clone(),
            repr,
        }
    }

    /// Element with the given coefficients in the power basis 1, a, a^2, ...
    /// Extra coefficients are reduced modulo the field's modulus.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement> {
        match &*self.spec {
            FieldSpec::Finite { p, m, modulus } => {
                let mut v: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(*p as i64) as u64).collect();
                fp::trim(&mut v);
                let r = fp::rem(&v, modulus, *p);
                let mut c: SmallVec<[u64; 8]> = SmallVec::from_elem(0, *m);
                c[..r.len()].copy_from_slice(&r);
                Ok(FieldElement {
                    field: self.clone(),
                    repr: Repr::Finite(c),
                })
            }
            FieldSpec::Rational => match coeffs {
                [] => Ok(self.zero()),
                [c] => Ok(self.from_i64(*c)),
                _ => Err(Error::InvalidInput("rational elements take a single integer".into())),
            },
        }
    }

    pub fn from_rational(&self, q: BigRational) -> Result<FieldElement> {
        match &*self.spec {
            FieldSpec::Rational => Ok(FieldElement {
                field: self.clone(),
                repr: Repr::Rational(q),
            }),
            FieldSpec::Finite { p, .. } => {
                let p = BigInt::from(*p);
                let num = q.numer().mod_floor_big(&p);
                let den = q.denom().mod_floor_big(&p);
                if den.is_zero() {
                    return Err(Error::InvalidInput(
                        "denominator vanishes in this characteristic".into(),
                    ));
                }
                let num = self.from_i64(num.to_i64().unwrap_or(0));
                let den = self.from_i64(den.to_i64().unwrap_or(0));
                Ok(&num / &den)
            }
        }
    }

    /// The class of t in F_p[t]/(modulus).
    pub fn generator(&self) -> FieldElement {
        match &*self.spec {
            FieldSpec::Finite { m: 1, .. } | FieldSpec::Rational => self.one(),
            FieldSpec::Finite { .. } => self.from_coeffs(&[0, 1]).expect("finite field"),
        }
    }

    /// Uniform element (finite fields); small random fractions over the rationals.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        match &*self.spec {
            FieldSpec::Finite { p, m, .. } => {
                let c: SmallVec<[u64; 8]> = (0..*m).map(|_| rng.gen_range(0..*p)).collect();
                FieldElement {
                    field: self.clone(),
                    repr: Repr::Finite(c),
                }
            }
            FieldSpec::Rational => {
                let n = rng.gen_range(-1000i64..=1000);
                let d = rng.gen_range(1i64..=1000);
                FieldElement {
                    field: self.clone(),
                    repr: Repr::Rational(BigRational::new(BigInt::from(n), BigInt::from(d))),
                }
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Element number `index` in the canonical enumeration (coefficient
    /// vector read as base-p digits, c_0 least significant).
    pub fn element_by_index(&self, mut index: u64) -> FieldElement {
        match &*self.spec {
            FieldSpec::Finite { p, m, .. } => {
                let mut c: SmallVec<[u64; 8]> = SmallVec::from_elem(0, *m);
                for slot in c.iter_mut() {
                    *slot = index % p;
                    index /= p;
                }
                FieldElement {
                    field: self.clone(),
                    repr: Repr::Finite(c),
                }
            }
            FieldSpec::Rational => {
                // 0, 1, -1, 2, -2, ...
                let i = index as i64;
                let v = if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) };
                self.from_i64(v)
            }
        }
    }

    /// All elements of a finite field that is small enough to enumerate.
    pub fn elements(&self) -> Option<impl Iterator<Item = FieldElement> + '_> {
        let n = self.small_order()?;
        Some((0..n).map(move |i| self.element_by_index(i)))
    }
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Finite(SmallVec<[u64; 8]>),
    Rational(BigRational),
}

/// An exact element of a [`Field`].
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state)
    }
}

/// Canonical order: coefficient vectors compared lowest degree first
/// (finite), numeric order (rationals).
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => a.cmp(b),
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Finite(_), Repr::Rational(_)) => Ordering::Less,
            (Repr::Rational(_), Repr::Finite(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => write!(f, "{q}"),
            Repr::Finite(c) if c.len() == 1 => write!(f, "{}", c[0]),
            Repr::Finite(c) => {
                write!(f, "[")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Finite(c) => c.iter().all(|&x| x == 0),
            Repr::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Finite(c) => c[0] == 1 && c[1..].iter().all(|&x| x == 0),
            Repr::Rational(q) => q.is_one(),
        }
    }

    /// Power-basis coefficients of a finite-field element.
    pub fn coeffs(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Finite(c) => Some(c),
            Repr::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            Repr::Finite(_) => None,
        }
    }

    /// Position in the canonical enumeration, when it fits in a u64.
    pub fn index(&self) -> Option<u64> {
        let c = self.coeffs()?;
        let p = self.field.characteristic();
        let mut acc: u64 = 0;
        for &x in c.iter().rev() {
            acc = acc.checked_mul(p)?.checked_add(x)?;
        }
        Some(acc)
    }

    /// Whether the element lies in the prime field.
    pub fn is_prime_field_element(&self) -> bool {
        match &self.repr {
            Repr::Finite(c) => c[1..].iter().all(|&x| x == 0),
            Repr::Rational(_) => true,
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let repr = match (&self.repr, &*self.field.spec) {
            (Repr::Finite(c), FieldSpec::Finite { p, m, modulus }) => {
                if *m == 1 {
                    let mut out = SmallVec::from_elem(0, 1);
                    out[0] = fp::inv_scalar(c[0], *p);
                    Repr::Finite(out)
                } else {
                    let mut a: Vec<u64> = c.to_vec();
                    fp::trim(&mut a);
                    let r = fp::inv_mod(&a, modulus, *p)?;
                    let mut out: SmallVec<[u64; 8]> = SmallVec::from_elem(0, *m);
                    out[..r.len()].copy_from_slice(&r);
                    Repr::Finite(out)
                }
            }
            (Repr::Rational(q), _) => Repr::Rational(q.recip()),
            _ => unreachable!("representation matches field"),
        };
        Some(FieldElement {
            field: self.field.clone(),
            repr,
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> FieldElement {
        let mut acc = self.field.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = &acc * &acc;
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    /// x^(p^e).
    pub fn frobenius(&self, e: usize) -> Result<FieldElement> {
        let p = self.field.characteristic();
        if p == 0 {
            return Err(Error::RationalField);
        }
        let m = self.field.degree();
        let mut x = self.clone();
        if m == 1 {
            return Ok(x);
        }
        for _ in 0..(e % m) {
            x = x.pow(p);
        }
        Ok(x)
    }

    /// The unique p-th root (finite fields are perfect).
    pub fn pth_root(&self) -> Result<FieldElement> {
        let m = self.field.degree();
        self.frobenius(m - 1)
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "arithmetic between {} and {}",
            self.field,
            other.field
        );
    }

    fn add_ref(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => {
                let p = self.field.characteristic();
                Repr::Finite(a.iter().zip(b.iter()).map(|(&x, &y)| (x + y) % p).collect())
            }
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            _ => unreachable!(),
        };
        FieldElement {
            field: self.field.clone(),
            repr,
        }
    }

    fn sub_ref(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => {
                let p = self.field.characteristic();
                Repr::Finite(a.iter().zip(b.iter()).map(|(&x, &y)| (x + p - y) % p).collect())
            }
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a - b),
            _ => unreachable!(),
        };
        FieldElement {
            field: self.field.clone(),
            repr,
        }
    }

    fn mul_ref(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let repr = match (&self.repr, &other.repr, &*self.field.spec) {
            (Repr::Finite(a), Repr::Finite(b), FieldSpec::Finite { p, m, modulus }) => {
                Repr::Finite(mul_reduce(a, b, *p, *m, modulus))
            }
            (Repr::Rational(a), Repr::Rational(b), _) => Repr::Rational(a * b),
            _ => unreachable!(),
        };
        FieldElement {
            field: self.field.clone(),
            repr,
        }
    }

    fn neg_ref(&self) -> FieldElement {
        let repr = match &self.repr {
            Repr::Finite(a) => {
                let p = self.field.characteristic();
                Repr::Finite(a.iter().map(|&x| (p - x) % p).collect())
            }
            Repr::Rational(a) => Repr::Rational(-a),
        };
        FieldElement {
            field: self.field.clone(),
            repr,
        }
    }
}

fn mul_reduce(a: &[u64], b: &[u64], p: u64, m: usize, modulus: &[u64]) -> SmallVec<[u64; 8]> {
    if m == 1 {
        let mut out = SmallVec::from_elem(0, 1);
        out[0] = fp::mul_mod(a[0], b[0], p);
        return out;
    }
    let mut prod: SmallVec<[u64; 32]> = SmallVec::from_elem(0, 2 * m - 1);
    // p < 2^32, so p^2 fits; accumulate with a reduction per term
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = (prod[i + j] + x * y % p) % p;
            }
        }
    }
    for i in (m..2 * m - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        let neg = p - c;
        for (j, &mj) in modulus[..m].iter().enumerate() {
            if mj != 0 {
                let k = i - m + j;
                prod[k] = (prod[k] + neg * mj % p) % p;
            }
        }
        prod[i] = 0;
    }
    prod.truncate(m);
    prod.into_iter().collect()
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$inner(rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$inner(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$inner(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl FieldElement {
    fn div_ref(&self, rhs: &FieldElement) -> FieldElement {
        self.mul_ref(&rhs.inv().expect("division by zero"))
    }
}

forward_binop!(Div, div, div_ref);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = self.mul_ref(rhs);
    }
}

/// Free-function form of [`FieldElement::frobenius`].
pub fn frobenius(x: &FieldElement, e: usize) -> Result<FieldElement> {
    x.frobenius(e)
}
