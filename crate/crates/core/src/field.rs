//! Exact fields: prime fields `F_p` (p < 2^61), finite extensions
//! `F_p[x]/(f)` presented over their prime field, and the rationals.
//!
//! A [`Field`] is a validated handle; elements are plain values operated on
//! through the handle (`field.add(&a, &b)`). All arithmetic is exact and
//! total except inversion of zero. Handles and elements are immutable, so
//! everything here is safe to share across threads.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest supported prime modulus; residues stay machine words and products
/// fit in u128.
pub const MAX_PRIME: u64 = 1 << 61;

/// Serializable description of a field.
///
/// Extensions are always presented over their prime field; towers are not
/// representable. The modulus is little-endian (constant term first) and must
/// be monic irreducible over `F_p`, which [`Field::make`] verifies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Prime { p: u64 },
    Extension { p: u64, modulus: Vec<u64> },
    Rationals,
}

/// An element of a field. Representations are canonical:
/// prime residues lie in `[0, p)`, extension coefficient vectors have
/// length exactly `deg(modulus)` with entries in `[0, p)`, and rationals
/// are reduced with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Fp(u64),
    Ext(Vec<u64>),
    Rat(BigRational),
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: within a field, elements compare by their integer
/// encoding (residue, base-p digits most-significant-last, or rational
/// value). Used for the canonical ordering of polynomials.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElem::Fp(a), FieldElem::Fp(b)) => a.cmp(b),
            (FieldElem::Ext(a), FieldElem::Ext(b)) => {
                a.iter().rev().cmp(b.iter().rev())
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => a.cmp(b),
            (FieldElem::Fp(_), _) => Ordering::Less,
            (_, FieldElem::Fp(_)) => Ordering::Greater,
            (FieldElem::Ext(_), _) => Ordering::Less,
            (_, FieldElem::Ext(_)) => Ordering::Greater,
        }
    }
}

/// A validated field handle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Field {
    desc: FieldDescriptor,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.desc {
            FieldDescriptor::Prime { p } => write!(f, "F_{p}"),
            FieldDescriptor::Extension { p, modulus } => {
                write!(f, "F_{p}^{}", modulus.len() - 1)
            }
            FieldDescriptor::Rationals => write!(f, "Q"),
        }
    }
}

impl Field {
    /// Validates a descriptor and returns the field handle.
    ///
    /// Rejects composite characteristics (`NotPrime`), primes at or above
    /// 2^61 (`PrimeTooLarge`), and non-monic or reducible extension moduli
    /// (`ReducibleModulus`). Irreducibility is checked by factoring the
    /// modulus over the prime field.
    pub fn make(desc: FieldDescriptor) -> Result<Field> {
        match &desc {
            FieldDescriptor::Prime { p } => {
                check_prime(*p)?;
            }
            FieldDescriptor::Extension { p, modulus } => {
                check_prime(*p)?;
                let base = Field {
                    desc: FieldDescriptor::Prime { p: *p },
                };
                if modulus.len() < 2 {
                    return Err(Error::ReducibleModulus(
                        "modulus must have degree >= 1".into(),
                    ));
                }
                if modulus.iter().any(|c| *c >= *p) {
                    return Err(Error::ReducibleModulus(
                        "modulus coefficients must be reduced mod p".into(),
                    ));
                }
                if *modulus.last().unwrap() != 1 {
                    return Err(Error::ReducibleModulus("modulus must be monic".into()));
                }
                let m = Poly::new(
                    base.clone(),
                    modulus.iter().map(|c| FieldElem::Fp(*c)).collect(),
                );
                if modulus.len() > 2 && !crate::poly::is_irreducible(&m, 0)? {
                    return Err(Error::ReducibleModulus(format!(
                        "modulus {m} factors over F_{p}"
                    )));
                }
            }
            FieldDescriptor::Rationals => {}
        }
        Ok(Field { desc })
    }

    pub fn rationals() -> Field {
        Field {
            desc: FieldDescriptor::Rationals,
        }
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::make(FieldDescriptor::Prime { p })
    }

    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Field> {
        Field::make(FieldDescriptor::Extension { p, modulus })
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    /// Characteristic: p for finite fields, 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match &self.desc {
            FieldDescriptor::Prime { p } | FieldDescriptor::Extension { p, .. } => *p,
            FieldDescriptor::Rationals => 0,
        }
    }

    /// Number of elements, or `None` for the rationals.
    pub fn cardinality(&self) -> Option<BigUint> {
        match &self.desc {
            FieldDescriptor::Prime { p } => Some(BigUint::from(*p)),
            FieldDescriptor::Extension { p, modulus } => {
                Some(BigUint::from(*p).pow(modulus.len() as u32 - 1))
            }
            FieldDescriptor::Rationals => None,
        }
    }

    /// Degree over the prime subfield (1 for prime fields and the rationals).
    pub fn extension_degree(&self) -> usize {
        match &self.desc {
            FieldDescriptor::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// The prime subfield (self for prime fields and the rationals).
    pub fn prime_subfield(&self) -> Field {
        match &self.desc {
            FieldDescriptor::Extension { p, .. } => Field {
                desc: FieldDescriptor::Prime { p: *p },
            },
            _ => self.clone(),
        }
    }

    /// The defining modulus as a polynomial over the prime subfield.
    pub fn modulus_poly(&self) -> Option<Poly> {
        match &self.desc {
            FieldDescriptor::Extension { p: _, modulus } => Some(Poly::new(
                self.prime_subfield(),
                modulus.iter().map(|c| FieldElem::Fp(*c)).collect(),
            )),
            _ => None,
        }
    }

    /// Class of `t` in `F_p[t]/(modulus)`; the canonical root of the modulus.
    pub fn alpha(&self) -> Option<FieldElem> {
        match &self.desc {
            FieldDescriptor::Extension { modulus, .. } => {
                let k = modulus.len() - 1;
                let mut v = vec![0u64; k];
                if k == 1 {
                    // degree-1 "extension": alpha = -c0
                    let p = self.characteristic();
                    v[0] = (p - modulus[0] % p) % p;
                } else {
                    v[1] = 1;
                }
                Some(FieldElem::Ext(v))
            }
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElem {
        match &self.desc {
            FieldDescriptor::Prime { .. } => FieldElem::Fp(0),
            FieldDescriptor::Extension { modulus, .. } => {
                FieldElem::Ext(vec![0; modulus.len() - 1])
            }
            FieldDescriptor::Rationals => FieldElem::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> FieldElem {
        match &self.desc {
            FieldDescriptor::Prime { .. } => FieldElem::Fp(1),
            FieldDescriptor::Extension { modulus, .. } => {
                let mut v = vec![0; modulus.len() - 1];
                v[0] = 1;
                FieldElem::Ext(v)
            }
            FieldDescriptor::Rationals => FieldElem::Rat(BigRational::one()),
        }
    }

    /// Image of an integer under the unique ring map from Z.
    pub fn from_int(&self, n: i64) -> FieldElem {
        match &self.desc {
            FieldDescriptor::Prime { p } => FieldElem::Fp(n.rem_euclid(*p as i64) as u64),
            FieldDescriptor::Extension { p, modulus } => {
                let mut v = vec![0; modulus.len() - 1];
                v[0] = n.rem_euclid(*p as i64) as u64;
                FieldElem::Ext(v)
            }
            FieldDescriptor::Rationals => FieldElem::Rat(BigRational::from(BigInt::from(n))),
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Fp(x) => *x == 0,
            FieldElem::Ext(v) => v.iter().all(|c| *c == 0),
            FieldElem::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&self.desc, a, b) {
            (FieldDescriptor::Prime { p }, FieldElem::Fp(x), FieldElem::Fp(y)) => {
                FieldElem::Fp(fp_add(*x, *y, *p))
            }
            (FieldDescriptor::Extension { p, .. }, FieldElem::Ext(x), FieldElem::Ext(y)) => {
                FieldElem::Ext(
                    x.iter()
                        .zip(y.iter())
                        .map(|(u, v)| fp_add(*u, *v, *p))
                        .collect(),
                )
            }
            (FieldDescriptor::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => {
                FieldElem::Rat(x + y)
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (&self.desc, a) {
            (FieldDescriptor::Prime { p }, FieldElem::Fp(x)) => FieldElem::Fp(fp_neg(*x, *p)),
            (FieldDescriptor::Extension { p, .. }, FieldElem::Ext(x)) => {
                FieldElem::Ext(x.iter().map(|u| fp_neg(*u, *p)).collect())
            }
            (FieldDescriptor::Rationals, FieldElem::Rat(x)) => FieldElem::Rat(-x),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&self.desc, a, b) {
            (FieldDescriptor::Prime { p }, FieldElem::Fp(x), FieldElem::Fp(y)) => {
                FieldElem::Fp(fp_mul(*x, *y, *p))
            }
            (FieldDescriptor::Extension { p, modulus }, FieldElem::Ext(x), FieldElem::Ext(y)) => {
                FieldElem::Ext(ext_mul(x, y, modulus, *p))
            }
            (FieldDescriptor::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => {
                FieldElem::Rat(x * y)
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; `DivisionByZero` on zero.
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&self.desc, a) {
            (FieldDescriptor::Prime { p }, FieldElem::Fp(x)) => FieldElem::Fp(fp_inv(*x, *p)),
            (FieldDescriptor::Extension { p, modulus }, FieldElem::Ext(x)) => {
                FieldElem::Ext(ext_inv(x, modulus, *p))
            }
            (FieldDescriptor::Rationals, FieldElem::Rat(x)) => FieldElem::Rat(x.recip()),
            _ => panic!("element does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &FieldElem, e: &BigUint) -> FieldElem {
        let mut acc = self.one();
        let mut base = a.clone();
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
        }
        acc
    }

    /// The n-th element in the canonical enumeration of a finite field
    /// (base-p digits of n). Panics for the rationals or out-of-range n.
    pub fn elem_from_index(&self, n: &BigUint) -> FieldElem {
        match &self.desc {
            FieldDescriptor::Prime { p } => {
                let d: u64 = n.try_into().expect("index in range");
                assert!(d < *p);
                FieldElem::Fp(d)
            }
            FieldDescriptor::Extension { p, modulus } => {
                let k = modulus.len() - 1;
                let mut v = vec![0u64; k];
                let mut rest = n.clone();
                let pb = BigUint::from(*p);
                for slot in v.iter_mut() {
                    let digit = &rest % &pb;
                    *slot = (&digit).try_into().unwrap();
                    rest /= &pb;
                }
                assert!(rest.is_zero(), "index out of range");
                FieldElem::Ext(v)
            }
            FieldDescriptor::Rationals => panic!("rationals are not enumerable"),
        }
    }

    /// Index of an element in the canonical enumeration.
    pub fn elem_index(&self, a: &FieldElem) -> BigUint {
        match a {
            FieldElem::Fp(x) => BigUint::from(*x),
            FieldElem::Ext(v) => {
                let p = BigUint::from(self.characteristic());
                let mut acc = BigUint::zero();
                for c in v.iter().rev() {
                    acc = acc * &p + BigUint::from(*c);
                }
                acc
            }
            FieldElem::Rat(_) => panic!("rationals are not enumerable"),
        }
    }

    /// Uniform random element (finite fields only).
    pub fn random_elem<R: rand::Rng>(&self, rng: &mut R) -> FieldElem {
        match &self.desc {
            FieldDescriptor::Prime { p } => FieldElem::Fp(rng.gen_range(0..*p)),
            FieldDescriptor::Extension { p, modulus } => FieldElem::Ext(
                (0..modulus.len() - 1).map(|_| rng.gen_range(0..*p)).collect(),
            ),
            FieldDescriptor::Rationals => panic!("cannot sample the rationals uniformly"),
        }
    }

    /// Matrix (columns, little-endian over the prime subfield) of
    /// multiplication by `a` on the extension viewed as a prime-field
    /// vector space in the basis 1, alpha, ..., alpha^(k-1).
    pub fn regular_representation(&self, a: &FieldElem) -> Vec<Vec<FieldElem>> {
        let k = self.extension_degree();
        match &self.desc {
            FieldDescriptor::Extension { .. } => {
                let alpha = self.alpha().unwrap();
                let mut cols = Vec::with_capacity(k);
                let mut pow = self.one();
                for _ in 0..k {
                    let prod = self.mul(a, &pow);
                    let FieldElem::Ext(v) = &prod else { unreachable!() };
                    cols.push(v.iter().map(|c| FieldElem::Fp(*c)).collect());
                    pow = self.mul(&pow, &alpha);
                }
                cols
            }
            _ => vec![vec![a.clone()]],
        }
    }

    /// Coordinates of an element over the prime subfield in the basis
    /// 1, alpha, ..., alpha^(k-1).
    pub fn coords(&self, a: &FieldElem) -> Vec<FieldElem> {
        match a {
            FieldElem::Ext(v) => v.iter().map(|c| FieldElem::Fp(*c)).collect(),
            other => vec![other.clone()],
        }
    }

    /// Rebuild an element from prime-subfield coordinates.
    pub fn from_coords(&self, coords: &[FieldElem]) -> FieldElem {
        match &self.desc {
            FieldDescriptor::Extension { modulus, .. } => {
                let k = modulus.len() - 1;
                assert_eq!(coords.len(), k);
                let v = coords
                    .iter()
                    .map(|c| match c {
                        FieldElem::Fp(x) => *x,
                        _ => panic!("coordinates must lie in the prime subfield"),
                    })
                    .collect();
                FieldElem::Ext(v)
            }
            _ => {
                assert_eq!(coords.len(), 1);
                coords[0].clone()
            }
        }
    }
}

/// Ring-homomorphic embedding of `base` into `ext`.
///
/// Supports the identity on any field and the embedding of a prime field
/// into an extension presented over it. Unital: `embed(1) = 1`.
pub fn embed(base: &Field, ext: &Field, a: &FieldElem) -> Result<FieldElem> {
    if base == ext {
        return Ok(a.clone());
    }
    match (base.descriptor(), ext.descriptor()) {
        (FieldDescriptor::Prime { p }, FieldDescriptor::Extension { p: q, modulus })
            if p == q =>
        {
            let FieldElem::Fp(x) = a else {
                return Err(Error::FieldMismatch);
            };
            let mut v = vec![0; modulus.len() - 1];
            v[0] = *x;
            Ok(FieldElem::Ext(v))
        }
        _ => Err(Error::FieldMismatch),
    }
}

/// Residue field `base[t]/(m)` for a monic irreducible `m`.
///
/// Degree-1 moduli return the base field itself. Proper extensions are
/// supported over prime fields only; the descriptor format has no home for
/// towers or number fields.
pub fn residue_field(base: &Field, m: &Poly) -> Result<Field> {
    if m.field() != base {
        return Err(Error::FieldMismatch);
    }
    let deg = m.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::ReducibleModulus("unit ideal".into()));
    }
    if !m.is_monic() {
        return Err(Error::ReducibleModulus("modulus must be monic".into()));
    }
    if deg == 1 {
        return Ok(base.clone());
    }
    match base.descriptor() {
        FieldDescriptor::Prime { p } => {
            let coeffs = m
                .coeffs()
                .iter()
                .map(|c| match c {
                    FieldElem::Fp(x) => *x,
                    _ => unreachable!(),
                })
                .collect();
            Field::extension(*p, coeffs)
        }
        _ => Err(Error::UnsupportedResidueField),
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Deterministic Miller-Rabin, valid for all u64 with the standard
/// twelve-witness set.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = fp_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mul(acc, b, m);
        }
        b = fp_mul(b, b, m);
        e >>= 1;
    }
    acc
}

#[inline]
fn fp_add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn fp_neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on signed 128-bit; p < 2^61 keeps everything in range
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of non-unit");
    s0.rem_euclid(p as i128) as u64
}

/// Multiply coefficient vectors and reduce modulo the monic modulus.
fn ext_mul(x: &[u64], y: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    debug_assert!(x.len() == k && y.len() == k);
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, a) in x.iter().enumerate() {
        if *a == 0 {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            prod[i + j] = fp_add(prod[i + j], fp_mul(*a, *b, p), p);
        }
    }
    // t^k = -(m_0 + m_1 t + ... + m_{k-1} t^{k-1})
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            let sub = fp_mul(c, modulus[j], p);
            prod[i - k + j] = fp_add(prod[i - k + j], fp_neg(sub, p), p);
        }
    }
    prod.truncate(k);
    prod
}

fn ext_inv(x: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    // extended Euclid in F_p[t] on raw little-endian vectors
    let k = modulus.len() - 1;
    let mut r0: Vec<u64> = modulus.to_vec();
    let mut r1: Vec<u64> = x.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = raw_divmod(&r0, &r1, p);
        let qs1 = raw_mul(&q, &s1, p);
        let s_next = raw_sub(&s0, &qs1, p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s_next;
    }
    debug_assert_eq!(r0.len(), 1, "inverse of non-unit in extension field");
    let lead_inv = fp_inv(r0[0], p);
    let mut out: Vec<u64> = s0.iter().map(|c| fp_mul(*c, lead_inv, p)).collect();
    out.resize(k, 0);
    out
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn raw_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = fp_add(out[i + j], fp_mul(*x, *y, p), p);
        }
    }
    trim(&mut out);
    out
}

fn raw_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = fp_add(x, fp_neg(y, p), p);
    }
    trim(&mut out);
    out
}

fn raw_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    debug_assert!(!b.is_empty());
    let mut rem: Vec<u64> = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![0u64; rem.len() - b.len() + 1];
    let lead_inv = fp_inv(*b.last().unwrap(), p);
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = fp_mul(*rem.last().unwrap(), lead_inv, p);
        quot[shift] = c;
        for (j, y) in b.iter().enumerate() {
            let sub = fp_mul(c, *y, p);
            rem[shift + j] = fp_add(rem[shift + j], fp_neg(sub, p), p);
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

/// Canonical text form of a rational: `n` when integral, `n/d` otherwise.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `n` or `n/d` into a reduced rational.
pub fn rational_from_string(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from(parse_int(s)?)),
    }
}

/// Canonical text form of any field element (used in displays and keys).
pub fn elem_to_string(field: &Field, a: &FieldElem) -> String {
    match a {
        FieldElem::Fp(x) => x.to_string(),
        FieldElem::Ext(v) => {
            let _ = field;
            let mut parts = vec![];
            for (i, c) in v.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                parts.push(match i {
                    0 => c.to_string(),
                    1 if *c == 1 => "a".into(),
                    1 => format!("{c}a"),
                    _ if *c == 1 => format!("a^{i}"),
                    _ => format!("{c}a^{i}"),
                });
            }
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join("+")
            }
        }
        FieldElem::Rat(r) => rational_to_string(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f4() -> Field {
        // irreducibility of t^2+t+1 over F_2: no root among {0, 1}
        for x in 0..2u64 {
            assert_ne!((x * x + x + 1) % 2, 0);
        }
        Field::extension(2, vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn smallest_field() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.add(&f2.one(), &f2.one()), f2.zero());
    }

    #[test]
    fn f4_constructs() {
        let f = f4();
        assert_eq!(f.cardinality(), Some(BigUint::from(4u32)));
        // alpha^2 = alpha + 1
        let a = f.alpha().unwrap();
        assert_eq!(f.mul(&a, &a), f.add(&a, &f.one()));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2+1 = (t+1)^2 over F_2
        assert_eq!(
            Field::extension(2, vec![1, 0, 1]).unwrap_err().code(),
            "ReducibleModulus"
        );
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(Field::prime(6).unwrap_err(), Error::NotPrime(6));
        assert!(Field::prime((1 << 61) + 1).is_err());
    }

    #[test]
    fn rationals_are_exact() {
        let q = Field::rationals();
        let third = q.div(&q.one(), &q.from_int(3)).unwrap();
        let sum = q.add(&q.add(&third, &third), &third);
        assert_eq!(sum, q.one());
    }

    #[test]
    fn embed_is_unital_and_constant() {
        let f2 = Field::prime(2).unwrap();
        let f = f4();
        assert_eq!(embed(&f2, &f, &f2.one()).unwrap(), f.one());
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::extension(3, vec![1, 0, 1]).unwrap(); // t^2+1 irreducible over F_3
        assert_eq!(
            embed(&f3, &f9, &f3.from_int(2)).unwrap(),
            FieldElem::Ext(vec![2, 0])
        );
        assert_eq!(embed(&f3, &f, &f3.one()).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn regular_representation_of_alpha() {
        // multiplication by alpha on F_4 = companion matrix of t^2+t+1
        let f = f4();
        let cols = f.regular_representation(&f.alpha().unwrap());
        assert_eq!(
            cols,
            vec![
                vec![FieldElem::Fp(0), FieldElem::Fp(1)],
                vec![FieldElem::Fp(1), FieldElem::Fp(1)],
            ]
        );
    }

    #[test]
    fn inverse_in_extension() {
        let f = f4();
        let a = f.alpha().unwrap();
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
        assert_eq!(f.inv(&f.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn residue_fields() {
        let f2 = Field::prime(2).unwrap();
        let m = Poly::from_ints(&f2, &[1, 1, 1]);
        assert_eq!(residue_field(&f2, &m).unwrap(), f4());
        // degree-1 modulus returns the base itself
        let f3 = Field::prime(3).unwrap();
        let lin = Poly::from_ints(&f3, &[-1, 1]);
        assert_eq!(residue_field(&f3, &lin).unwrap(), f3);
        // t^2 = t * t is not maximal
        let sq = Poly::from_ints(&f2, &[0, 0, 1]);
        assert_eq!(
            residue_field(&f2, &sq).unwrap_err().code(),
            "ReducibleModulus"
        );
        // no number fields: proper extensions of the rationals are out
        let q = Field::rationals();
        let quad = Poly::from_ints(&q, &[1, 0, 1]);
        assert_eq!(
            residue_field(&q, &quad).unwrap_err(),
            Error::UnsupportedResidueField
        );
    }

    #[test]
    fn element_enumeration_round_trips() {
        let f = f4();
        for i in 0..4u32 {
            let e = f.elem_from_index(&BigUint::from(i));
            assert_eq!(f.elem_index(&e), BigUint::from(i));
        }
    }

    fn sample_fields() -> Vec<Field> {
        vec![
            Field::prime(2).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(97).unwrap(),
            f4(),
            Field::extension(3, vec![1, 2, 0, 1]).unwrap(), // t^3+2t+1 over F_3
            Field::rationals(),
        ]
    }

    fn pick(field: &Field, n: u64, num: i32, den: i32) -> FieldElem {
        match field.descriptor() {
            FieldDescriptor::Rationals => {
                FieldElem::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
            _ => {
                let q: BigUint = field.cardinality().unwrap();
                field.elem_from_index(&(BigUint::from(n) % q))
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms(
            idx in 0usize..6,
            raw in proptest::collection::vec((any::<u64>(), any::<i32>(), 1..50i32), 3),
        ) {
            let field = sample_fields().remove(idx);
            let elems: Vec<FieldElem> =
                raw.iter().map(|(n, u, d)| pick(&field, *n, *u, *d)).collect();
            let (a, b, c) = (&elems[0], &elems[1], &elems[2]);
            // associativity + distributivity
            prop_assert_eq!(field.add(&field.add(a, b), c), field.add(a, &field.add(b, c)));
            prop_assert_eq!(field.mul(&field.mul(a, b), c), field.mul(a, &field.mul(b, c)));
            prop_assert_eq!(
                field.mul(a, &field.add(b, c)),
                field.add(&field.mul(a, b), &field.mul(a, c))
            );
            // inverses
            if !field.is_zero(a) {
                prop_assert_eq!(field.mul(a, &field.inv(a).unwrap()), field.one());
            }
        }
    }

    proptest! {
        #[test]
        fn frobenius_is_additive(idx in 0usize..5, i in any::<u64>(), j in any::<u64>()) {
            // characteristic p only
            let field = sample_fields().remove(idx);
            let q: BigUint = field.cardinality().unwrap();
            let a = field.elem_from_index(&(BigUint::from(i) % &q));
            let b = field.elem_from_index(&(BigUint::from(j) % &q));
            let p = field.characteristic();
            let lhs = field.pow(&field.add(&a, &b), p);
            let rhs = field.add(&field.pow(&a, p), &field.pow(&b, p));
            prop_assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #[test]
        fn embed_is_homomorphic(i in any::<u64>(), j in any::<u64>()) {
            let f3 = Field::prime(3).unwrap();
            let f9 = Field::extension(3, vec![1, 0, 1]).unwrap();
            let a = FieldElem::Fp(i % 3);
            let b = FieldElem::Fp(j % 3);
            let ea = embed(&f3, &f9, &a).unwrap();
            let eb = embed(&f3, &f9, &b).unwrap();
            prop_assert_eq!(embed(&f3, &f9, &f3.add(&a, &b)).unwrap(), f9.add(&ea, &eb));
            prop_assert_eq!(embed(&f3, &f9, &f3.mul(&a, &b)).unwrap(), f9.mul(&ea, &eb));
            // injectivity on samples
            if a != b {
                prop_assert_ne!(ea, eb);
            }
        }
    }
}
