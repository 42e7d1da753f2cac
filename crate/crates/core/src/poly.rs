//! Univariate polynomials over an exact field: arithmetic, gcd,
//! squarefree decomposition, separability, and complete factorization over
//! finite fields (over the rationals up to a degree cap).
//!
//! Coefficient vectors are little-endian (constant term first) with no
//! trailing zeros; the zero polynomial is the empty vector.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, FieldElem};

/// Degree cap for factorization over the rationals; the Kronecker search
/// is exhaustive and only meant for desk-sized inputs.
pub const RATIONAL_FACTOR_CAP: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: degree first, then lexicographic on the coefficient
/// vector (constant term first) via the canonical element order.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let cs = crate::field::elem_to_string(&self.field, c);
            let part = match i {
                0 => cs,
                1 if cs == "1" => "t".into(),
                1 => format!("{cs}*t"),
                _ if cs == "1" => format!("t^{i}"),
                _ => format!("{cs}*t^{i}"),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl Poly {
    /// Construct from a little-endian coefficient vector; trailing zeros
    /// are trimmed.
    pub fn new(field: Field, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().map(|c| field.is_zero(c)).unwrap_or(false) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: vec![],
        }
    }

    pub fn constant(field: Field, c: FieldElem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn one(field: Field) -> Poly {
        let c = field.one();
        Poly::constant(field, c)
    }

    /// The monomial t^k.
    pub fn t_power(field: Field, k: usize) -> Poly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        Poly { field, coeffs }
    }

    /// Convenience for tests and examples: integer coefficient list.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(
            field.clone(),
            coeffs.iter().map(|c| field.from_int(*c)).collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u32 - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_zero(&self.field.sub(&self.coeffs[0], &self.field.one()))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff()
            .map(|c| *c == self.field.one())
            .unwrap_or(false)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Poly::new(self.field.clone(), coeffs))
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field.clone()));
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = self.field.mul(a, b);
                coeffs[i + j] = self.field.add(&coeffs[i + j], &prod);
            }
        }
        Ok(Poly::new(self.field.clone(), coeffs))
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    /// Euclidean division: returns (q, r) with self = q*other + r and
    /// deg r < deg other.
    pub fn divmod(&self, other: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let field = &self.field;
        let d = other.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < d {
            return Ok((Poly::zero(field.clone()), self.clone()));
        }
        let lead_inv = field.inv(other.leading_coeff().unwrap())?;
        let mut quot = vec![field.zero(); rem.len() - d + 1];
        while rem.len() >= d {
            let c = field.mul(rem.last().unwrap(), &lead_inv);
            let shift = rem.len() - d;
            quot[shift] = c.clone();
            for (j, b) in other.coeffs.iter().enumerate() {
                let sub = field.mul(&c, b);
                rem[shift + j] = field.sub(&rem[shift + j], &sub);
            }
            while rem.last().map(|x| field.is_zero(x)).unwrap_or(false) {
                rem.pop();
            }
            if rem.len() < d {
                break;
            }
        }
        Ok((
            Poly::new(field.clone(), quot),
            Poly::new(field.clone(), rem),
        ))
    }

    pub fn rem(&self, other: &Poly) -> Result<Poly> {
        Ok(self.divmod(other)?.1)
    }

    pub fn div_exact(&self, other: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(other)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// Scale so that the leading coefficient is 1 (zero stays zero).
    pub fn make_monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                if *lc == self.field.one() {
                    self.clone()
                } else {
                    let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                    self.scale(&inv)
                }
            }
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(c, &self.field.from_int(i as i64)))
            .collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x), c);
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// self^e mod m, with a big-integer exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(self.field.clone()).rem(m)?;
        let mut base = self.rem(m)?;
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base)?.rem(m)?;
            }
            base = base.mul(&base)?.rem(m)?;
        }
        Ok(acc)
    }
}

/// True iff all roots of `f` are distinct in the algebraic closure,
/// i.e. gcd(f, f') is constant.
pub fn is_separable(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = f.gcd(&f.derivative())?;
    Ok(g.is_constant())
}

/// A complete factorization: `unit * prod factor^exponent` reproduces the
/// input exactly. Factors are distinct monic irreducibles in canonical
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Re-multiply; the independent check used throughout the tests.
    pub fn product(&self, field: &Field) -> Poly {
        let mut acc = Poly::constant(field.clone(), self.unit.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e)).unwrap();
        }
        acc
    }
}

/// Complete factorization into monic irreducibles.
///
/// Over finite fields: squarefree decomposition (with p-th root
/// extraction), distinct-degree splitting, then seeded Cantor-Zassenhaus
/// equal-degree splitting. Over the rationals: squarefree decomposition,
/// rational-root extraction, then exhaustive Kronecker search up to
/// [`RATIONAL_FACTOR_CAP`]. Deterministic for a fixed seed.
pub fn factor(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let unit = f.leading_coeff().unwrap().clone();
    let monic = f.make_monic();
    let mut factors: Vec<(Poly, u32)> = vec![];
    if monic.degree() != Some(0) {
        match field.descriptor() {
            FieldDescriptor::Rationals => factor_rational(&monic, &mut factors)?,
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for (g, e) in squarefree_finite(&monic)? {
                    for h in distinct_degree(&g)? {
                        for irr in equal_degree(&h.1, h.0, &mut rng)? {
                            factors.push((irr, e));
                        }
                    }
                }
            }
        }
    }
    Ok(normalize_factors(factors, unit))
}

fn normalize_factors(factors: Vec<(Poly, u32)>, unit: FieldElem) -> Factorization {
    let mut merged: Vec<(Poly, u32)> = vec![];
    let mut sorted = factors;
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    for (f, e) in sorted {
        match merged.last_mut() {
            Some((g, me)) if *g == f => *me += e,
            _ => merged.push((f, e)),
        }
    }
    Factorization {
        unit,
        factors: merged,
    }
}

/// Squarefree decomposition of a monic polynomial over a finite field,
/// handling multiplicities divisible by the characteristic via p-th roots.
fn squarefree_finite(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let field = f.field().clone();
    let p = field.characteristic();
    let mut out: Vec<(Poly, u32)> = vec![];
    let mut stack: Vec<(Poly, u32)> = vec![(f.clone(), 1)];
    while let Some((g, mult)) = stack.pop() {
        if g.is_constant() {
            continue;
        }
        let deriv = g.derivative();
        if deriv.is_zero() {
            stack.push((pth_root(&g)?, mult * p as u32));
            continue;
        }
        let mut c = g.gcd(&deriv)?;
        let mut w = g.div_exact(&c)?;
        let mut i = 1u32;
        while !w.is_constant() {
            let y = w.gcd(&c)?;
            let fac = w.div_exact(&y)?;
            if !fac.is_constant() {
                out.push((fac, i * mult));
            }
            w = y;
            c = c.div_exact(&w)?;
            i += 1;
        }
        if !c.is_constant() {
            // remaining part is a p-th power
            stack.push((pth_root(&c)?, mult * p as u32));
        }
    }
    Ok(out)
}

/// p-th root of a polynomial whose derivative vanishes: g(t) = h(t^p) with
/// root coefficients c^(q/p).
fn pth_root(g: &Poly) -> Result<Poly> {
    let field = g.field().clone();
    let p = field.characteristic();
    let q = field.cardinality().expect("finite field");
    let exp = &q / BigUint::from(p); // q/p = p^(k-1)
    let mut coeffs = vec![];
    for (i, c) in g.coeffs().iter().enumerate() {
        if i % p as usize == 0 {
            coeffs.push(field.pow_big(c, &exp));
        } else {
            debug_assert!(field.is_zero(c), "derivative was nonzero");
        }
    }
    Ok(Poly::new(field, coeffs))
}

/// Distinct-degree splitting of a monic squarefree polynomial; returns
/// pairs (d, product of all irreducible factors of degree d).
fn distinct_degree(f: &Poly) -> Result<Vec<(u32, Poly)>> {
    let field = f.field().clone();
    let q = field.cardinality().expect("finite field");
    let t = Poly::t_power(field.clone(), 1);
    let mut h = t.rem(f)?;
    let mut rest = f.clone();
    let mut out = vec![];
    let mut d = 0u32;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if rest.degree().unwrap() < 2 * d {
            out.push((rest.degree().unwrap(), rest.clone()));
            break;
        }
        h = h.pow_mod(&q, &rest)?;
        let g = rest.gcd(&h.sub(&t)?)?;
        if !g.is_constant() {
            out.push((d, g.clone()));
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting: factor a monic squarefree
/// product of irreducibles all of degree d.
fn equal_degree(f: &Poly, d: u32, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(vec![]);
    }
    if deg == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let q = field.cardinality().expect("finite field");
    let split = loop {
        let a = random_poly_below(&field, deg, rng);
        if a.is_constant() {
            continue;
        }
        let g = f.gcd(&a)?;
        if !g.is_constant() && g.degree() < f.degree() {
            break g; // lucky split straight from the gcd
        }
        let candidate = if field.characteristic() == 2 {
            // trace map: a + a^2 + a^4 + ... over F_{2^k}, k*d terms
            let k = field.extension_degree() as u32;
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..(k * d) {
                cur = cur.mul(&cur)?.rem(f)?;
                acc = acc.add(&cur)?;
            }
            acc.rem(f)?
        } else {
            let e = (q.pow(d) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod(&e, f)?;
            b.sub(&Poly::one(field.clone()))?
        };
        let g = f.gcd(&candidate)?;
        if !g.is_constant() && g.degree() < f.degree() {
            break g;
        }
    };
    let rest = f.div_exact(&split)?;
    let mut out = equal_degree(&split, d, rng)?;
    out.extend(equal_degree(&rest, d, rng)?);
    Ok(out)
}

fn random_poly_below(field: &Field, deg: u32, rng: &mut ChaCha8Rng) -> Poly {
    let coeffs = (0..deg).map(|_| field.random_elem(rng)).collect();
    Poly::new(field.clone(), coeffs)
}

// ---- factorization over the rationals ----

fn factor_rational(monic: &Poly, out: &mut Vec<(Poly, u32)>) -> Result<()> {
    // char 0: plain gcd-ladder squarefree decomposition
    let field = monic.field().clone();
    let mut c = monic.gcd(&monic.derivative())?;
    let mut w = monic.div_exact(&c)?;
    let mut parts: Vec<(Poly, u32)> = vec![];
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c)?;
        let fac = w.div_exact(&y)?;
        if !fac.is_constant() {
            parts.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    for (g, e) in parts {
        let mut g = g;
        // strip a root at 0 (squarefree, so multiplicity one)
        if field.is_zero(&g.coeff(0)) {
            out.push((Poly::t_power(field.clone(), 1), e));
            g = g.div_exact(&Poly::t_power(field.clone(), 1))?;
        }
        if g.is_constant() {
            continue;
        }
        let mut zg = to_primitive_integer(&g);
        // rational roots num/den: num | constant term, den | leading term
        for root in rational_roots(&zg) {
            let lin = Poly::new(
                field.clone(),
                vec![FieldElem::Rat(-root.clone()), field.one()],
            );
            out.push((lin, e));
            let quotient = rational_of_integer(&field, &zg)
                .div_exact(&Poly::new(
                    field.clone(),
                    vec![FieldElem::Rat(-root), field.one()],
                ))?
                .make_monic();
            zg = to_primitive_integer(&quotient);
        }
        let remaining = rational_of_integer(&field, &zg).make_monic();
        let deg = remaining.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        if deg > RATIONAL_FACTOR_CAP {
            return Err(Error::DegreeCapExceeded {
                cap: RATIONAL_FACTOR_CAP,
                got: deg,
            });
        }
        for irr in kronecker(&zg) {
            out.push((rational_of_integer(&field, &irr).make_monic(), e));
        }
    }
    Ok(())
}

/// Clear denominators and content: primitive integer coefficients with
/// positive leading coefficient.
fn to_primitive_integer(f: &Poly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        let FieldElem::Rat(r) = c else { unreachable!() };
        den = den.lcm(r.denom());
    }
    let mut ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let FieldElem::Rat(r) = c else { unreachable!() };
            (r * BigRational::from(den.clone())).to_integer()
        })
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
    }
    if ints.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn rational_of_integer(field: &Field, coeffs: &[BigInt]) -> Poly {
    Poly::new(
        field.clone(),
        coeffs
            .iter()
            .map(|c| FieldElem::Rat(BigRational::from(c.clone())))
            .collect(),
    )
}

fn eval_int_at(f: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in f.iter().rev() {
        acc = acc * x + BigRational::from(c.clone());
    }
    acc
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = vec![];
    let mut large = vec![];
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Rational roots of a primitive integer polynomial (with multiplicity one
/// expected; the caller passes squarefree input). Roots are returned in a
/// deterministic order.
fn rational_roots(f: &[BigInt]) -> Vec<BigRational> {
    if f.len() < 2 {
        return vec![];
    }
    let a0 = &f[0];
    let an = f.last().unwrap();
    debug_assert!(!a0.is_zero(), "root at zero should be stripped first");
    let mut roots = vec![];
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i32, -1] {
                let cand = BigRational::new(num.clone() * BigInt::from(sign), den.clone());
                if eval_int_at(f, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Exhaustive Kronecker factor search on a primitive squarefree integer
/// polynomial with no rational roots; returns primitive irreducible
/// factors.
fn kronecker(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let points: Vec<BigInt> = [0i64, 1, -1, 2, -2, 3, -3]
        .iter()
        .map(|x| BigInt::from(*x))
        .collect();
    for k in 2..=n / 2 {
        // degree-1 factors would be rational roots, already excluded
        let xs = &points[..=k];
        let values: Vec<BigInt> = xs
            .iter()
            .map(|x| eval_int_at(f, &BigRational::from(x.clone())).to_integer())
            .collect();
        debug_assert!(values.iter().all(|v| !v.is_zero()));
        let divisor_lists: Vec<Vec<BigInt>> = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut ds: Vec<BigInt> = divisors(v);
                if i > 0 {
                    // first point stays positive to fix the overall sign
                    let negs: Vec<BigInt> = ds.iter().map(|d| -d).collect();
                    ds.extend(negs);
                }
                ds
            })
            .collect();
        let mut idx = vec![0usize; k + 1];
        loop {
            let tuple: Vec<BigInt> = idx
                .iter()
                .enumerate()
                .map(|(i, j)| divisor_lists[i][*j].clone())
                .collect();
            if let Some(g) = interpolate_integer(xs, &tuple) {
                if g.len() == k + 1 {
                    if let Some(q) = divide_integer_poly(f, &g) {
                        let mut rest = kronecker(&primitive(&q));
                        let mut out = kronecker(&primitive(&g));
                        out.append(&mut rest);
                        return out;
                    }
                }
            }
            // odometer over divisor tuples
            let mut pos = 0;
            loop {
                idx[pos] += 1;
                if idx[pos] < divisor_lists[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
                if pos > k {
                    break;
                }
            }
            if pos > k {
                break;
            }
        }
    }
    vec![f.to_vec()]
}

fn primitive(f: &[BigInt]) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in f {
        content = content.gcd(c);
    }
    let mut out: Vec<BigInt> = f.iter().map(|c| c / &content).collect();
    if out.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

/// Lagrange interpolation; `None` if the result is not an integer
/// polynomial.
fn interpolate_integer(xs: &[BigInt], ys: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = xs.len();
    // coefficients over Q, little-endian
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial for point i
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            // basis *= (t - xj)
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigRational::from(xj.clone());
            }
            basis = next;
            denom *= BigRational::from(&xs[i] - xj);
        }
        let scale = BigRational::from(ys[i].clone()) / denom;
        for (d, c) in basis.iter().enumerate() {
            acc[d] += c * &scale;
        }
    }
    while acc.last().map(|c| c.is_zero()).unwrap_or(false) {
        acc.pop();
    }
    let mut out = vec![];
    for c in acc {
        if !c.denom().is_one() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(out)
}

/// Exact division of integer polynomials; `None` if not divisible.
fn divide_integer_poly(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    if g.is_empty() || f.len() < g.len() {
        return None;
    }
    let mut rem: Vec<BigInt> = f.to_vec();
    let mut quot = vec![BigInt::zero(); f.len() - g.len() + 1];
    let lead = g.last().unwrap();
    while rem.len() >= g.len() {
        let r_lead = rem.last().unwrap();
        if (r_lead % lead) != BigInt::zero() {
            return None;
        }
        let c = r_lead / lead;
        let shift = rem.len() - g.len();
        quot[shift] = c.clone();
        for (j, b) in g.iter().enumerate() {
            let t = &c * b;
            rem[shift + j] -= t;
        }
        while rem.last().map(|x| x.is_zero()).unwrap_or(false) {
            rem.pop();
        }
        if rem.is_empty() {
            return Some(quot);
        }
    }
    None
}

/// True iff `f` (degree >= 1) is irreducible; decided by factoring.
pub fn is_irreducible(f: &Poly, seed: u64) -> Result<bool> {
    match f.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Ok(false),
        Some(d) => {
            let fac = factor(f, seed)?;
            Ok(fac.factors.len() == 1
                && fac.factors[0].1 == 1
                && fac.factors[0].0.degree() == Some(d))
        }
    }
}

/// All monic irreducibles of degree <= d over a finite field, complete and
/// in canonical order (degree, then constant-first lexicographic). Sieve by
/// trial division against the lower-degree irreducibles already found.
pub fn irreducibles_up_to(field: &Field, d: u32) -> Result<Vec<Poly>> {
    let q: BigUint = field.cardinality().ok_or(Error::InfiniteField)?;
    let q_usize: usize = (&q).try_into().map_err(|_| Error::InfiniteField)?;
    let mut out: Vec<Poly> = vec![];
    for deg in 1..=d {
        let count = q_usize.checked_pow(deg).expect("enumeration in range");
        for n in 0..count {
            // digits of n, most significant first, give the coefficient
            // vector constant-term first so that increasing n is the
            // canonical lexicographic order
            let mut digits = vec![0usize; deg as usize];
            let mut rest = n;
            for slot in digits.iter_mut().rev() {
                *slot = rest % q_usize;
                rest /= q_usize;
            }
            let mut coeffs: Vec<FieldElem> = digits
                .iter()
                .map(|i| field.elem_from_index(&BigUint::from(*i)))
                .collect();
            coeffs.push(field.one());
            let f = Poly::new(field.clone(), coeffs);
            let composite = out.iter().take_while(|g| g.degree().unwrap() <= deg / 2).any(
                |g| f.rem(g).map(|r| r.is_zero()).unwrap_or(false),
            );
            if !composite {
                out.push(f);
            }
        }
    }
    Ok(out)
}
