//! Grothendieck-group invariants: the complete classification of
//! automorphisms (by elementary divisors away from t) and of nilpotent
//! endomorphisms (by Jordan block sizes), with formal group completion.

use std::collections::BTreeMap;

use crate::equivalence::{fext_forward, PrimaryComponent};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::torsion::{
    elementary_divisors, invariant_factors, is_automorphism, DivisorClass, TorsionModule,
};

/// Element of the Grothendieck group of automorphisms: integer
/// coefficients on the index set of pairs (m, r) with m a monic
/// irreducible different from t and r >= 1. Classes are tagged with the
/// field, since the index set depends on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Class {
    field: Field,
    entries: BTreeMap<(Poly, u32), i64>,
}

impl K0Class {
    pub fn zero(field: Field) -> K0Class {
        K0Class {
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Poly, u32, i64)> {
        self.entries.iter().map(|((m, r), c)| (m, *r, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The class of an automorphism: coefficient at (m, r) is the multiplicity
/// of the elementary divisor m^r. A complete invariant for similarity.
pub fn aut_k0_class(module: &TorsionModule, seed: u64) -> Result<K0Class> {
    if !is_automorphism(module) {
        return Err(Error::NotAutomorphism);
    }
    let class = elementary_divisors(module, seed)?;
    Ok(class_of_divisors(module.field().clone(), &class))
}

/// Reinterpret a divisor multiset as a nonnegative group element.
pub fn class_of_divisors(field: Field, class: &DivisorClass) -> K0Class {
    let mut out = K0Class::zero(field);
    for (m, r, mult) in class.entries() {
        out = k0_add_single(out, m.clone(), r, mult as i64);
    }
    out
}

fn k0_add_single(mut class: K0Class, m: Poly, r: u32, coeff: i64) -> K0Class {
    if coeff == 0 {
        return class;
    }
    let key = (m, r);
    let slot = class.entries.entry(key.clone()).or_insert(0);
    *slot += coeff;
    if *slot == 0 {
        class.entries.remove(&key);
    }
    class
}

pub fn k0_add(a: &K0Class, b: &K0Class) -> Result<K0Class> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let mut out = a.clone();
    for (m, r, c) in b.entries() {
        out = k0_add_single(out, m.clone(), r, c);
    }
    Ok(out)
}

pub fn k0_neg(a: &K0Class) -> K0Class {
    let mut out = K0Class::zero(a.field.clone());
    for (m, r, c) in a.entries() {
        out = k0_add_single(out, m.clone(), r, -c);
    }
    out
}

pub fn k0_eq(a: &K0Class, b: &K0Class) -> Result<bool> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    Ok(a.entries == b.entries)
}

/// Realize a nonnegative class as a block-diagonal module of companion
/// matrices; rejects classes with negative coefficients.
pub fn k0_realize(class: &K0Class) -> Result<TorsionModule> {
    let mut divisors = DivisorClass::empty();
    for (m, r, c) in class.entries() {
        if c < 0 {
            return Err(Error::NegativeCoefficient(format!("(({m}), {r})")));
        }
        divisors.insert(m.clone(), r, c as u32);
    }
    Ok(crate::torsion::build_module(&class.field, &divisors))
}

/// Element of the Grothendieck group of nilpotent endomorphisms: integer
/// coefficients indexed by Jordan block size. The index set does not
/// depend on the field.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NilK0Class {
    entries: BTreeMap<u32, i64>,
}

impl NilK0Class {
    pub fn entries(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.entries.iter().map(|(r, c)| (*r, *c))
    }

    pub fn from_counts(counts: &[(u32, i64)]) -> NilK0Class {
        let mut entries = BTreeMap::new();
        for (r, c) in counts {
            if *c != 0 {
                *entries.entry(*r).or_insert(0) += c;
            }
        }
        entries.retain(|_, c| *c != 0);
        NilK0Class { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The class of a nilpotent endomorphism: coefficient at r is the number
/// of Jordan blocks of size r. A complete invariant for nilpotent
/// similarity. The block sizes are the degrees of the invariant factors,
/// which are powers of t.
pub fn nil_k0_class(module: &TorsionModule) -> Result<NilK0Class> {
    if !module.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let mut entries = BTreeMap::new();
    for f in invariant_factors(module) {
        let r = f.degree().unwrap();
        debug_assert_eq!(f, Poly::t_power(module.field().clone(), r as usize));
        *entries.entry(r).or_insert(0i64) += 1;
    }
    Ok(NilK0Class { entries })
}

/// Commutativity of the transport square at the level of classes: the
/// exponent multiset of an m-primary component equals the Jordan type of
/// its transported nilpotent module.
pub fn transport_check(c: &PrimaryComponent, seed: u64) -> Result<bool> {
    let exponents = elementary_divisors(&c.module, seed)?.exponent_multiset();
    let (_, n) = fext_forward(c, seed)?;
    let nil = nil_k0_class(&n)?;
    let nil_as_u32: BTreeMap<u32, u32> = nil
        .entries()
        .map(|(r, c)| (r, u32::try_from(c).expect("counts are nonnegative")))
        .collect();
    Ok(exponents == nil_as_u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::{build_module, companion, jordan_block, similar};

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn identity_class_over_f2() {
        let f = f2();
        let m = TorsionModule::from_ints(&f, &[&[1, 0], &[0, 1]]);
        let class = aut_k0_class(&m, 0).unwrap();
        let entries: Vec<_> = class.entries().collect();
        assert_eq!(entries.len(), 1);
        let (poly, r, c) = &entries[0];
        assert_eq!(**poly, Poly::from_ints(&f, &[1, 1]));
        assert_eq!((*r, *c), (1, 2));
    }

    #[test]
    fn companion_class() {
        let f = f2();
        let p = Poly::from_ints(&f, &[1, 1, 1]);
        let m = TorsionModule::new(companion(&p)).unwrap();
        let class = aut_k0_class(&m, 0).unwrap();
        let entries: Vec<_> = class.entries().collect();
        assert_eq!(entries.len(), 1);
        assert_eq!(*entries[0].0, p);
        assert_eq!((entries[0].1, entries[0].2), (1, 1));
    }

    #[test]
    fn zero_module_class_is_empty() {
        let f = f2();
        let class = aut_k0_class(&TorsionModule::zero(f), 0).unwrap();
        assert!(class.is_zero());
    }

    #[test]
    fn non_automorphism_rejected() {
        let f = f2();
        let m = jordan_block(&f, 2);
        assert_eq!(aut_k0_class(&m, 0).unwrap_err(), Error::NotAutomorphism);
    }

    #[test]
    fn group_law() {
        let f = f2();
        let a = aut_k0_class(&TorsionModule::from_ints(&f, &[&[1]]), 0).unwrap();
        let double = k0_add(&a, &a).unwrap();
        let id2 = aut_k0_class(&TorsionModule::from_ints(&f, &[&[1, 0], &[0, 1]]), 0).unwrap();
        assert!(k0_eq(&double, &id2).unwrap());
        let cancel = k0_add(&a, &k0_neg(&a)).unwrap();
        assert!(cancel.is_zero());
        // mismatched fields are an error, not inequality
        let b = K0Class::zero(Field::prime(3).unwrap());
        assert_eq!(k0_eq(&a, &b).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn additivity_under_direct_sum() {
        let f = Field::prime(3).unwrap();
        let a = TorsionModule::from_ints(&f, &[&[1, 1], &[0, 1]]);
        let b = TorsionModule::from_ints(&f, &[&[2]]);
        let lhs = aut_k0_class(&a.direct_sum(&b).unwrap(), 0).unwrap();
        let rhs = k0_add(
            &aut_k0_class(&a, 0).unwrap(),
            &aut_k0_class(&b, 0).unwrap(),
        )
        .unwrap();
        assert!(k0_eq(&lhs, &rhs).unwrap());
    }

    #[test]
    fn nil_classes() {
        let f = f2();
        let z3 = TorsionModule::from_ints(&f, &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(
            nil_k0_class(&z3).unwrap(),
            NilK0Class::from_counts(&[(1, 3)])
        );
        assert_eq!(
            nil_k0_class(&jordan_block(&f, 3)).unwrap(),
            NilK0Class::from_counts(&[(3, 1)])
        );
        let m = jordan_block(&f, 2).direct_sum(&jordan_block(&f, 1)).unwrap();
        assert_eq!(
            nil_k0_class(&m).unwrap(),
            NilK0Class::from_counts(&[(1, 1), (2, 1)])
        );
        // rank-sequence oracle: blocks of size >= k have count
        // rank(A^(k-1)) - rank(A^k)
        let class = nil_k0_class(&m).unwrap();
        for (r, c) in class.entries() {
            let ge = |k: usize| {
                m.mat().pow(k - 1).unwrap().rank() as i64 - m.mat().pow(k).unwrap().rank() as i64
            };
            let expect = ge(r as usize) - ge(r as usize + 1);
            assert_eq!(c, expect);
        }
        assert_eq!(
            nil_k0_class(&TorsionModule::from_ints(&f, &[&[1]])).unwrap_err(),
            Error::NotNilpotent
        );
    }

    #[test]
    fn key_exclusion_and_completeness_small() {
        let f = f2();
        // class never carries the key t; aut classes agree iff similar
        let mats = [
            TorsionModule::from_ints(&f, &[&[1, 0], &[0, 1]]),
            TorsionModule::from_ints(&f, &[&[1, 1], &[0, 1]]),
            TorsionModule::from_ints(&f, &[&[0, 1], &[1, 1]]),
        ];
        for a in &mats {
            let ca = aut_k0_class(a, 0).unwrap();
            for (m, _, _) in ca.entries() {
                assert_ne!(*m, Poly::t_power(f.clone(), 1));
            }
            for b in &mats {
                let cb = aut_k0_class(b, 0).unwrap();
                assert_eq!(k0_eq(&ca, &cb).unwrap(), similar(a, b).unwrap());
            }
        }
    }

    #[test]
    fn realization() {
        let f = f2();
        let m = TorsionModule::from_ints(&f, &[&[1, 1], &[0, 1]]);
        let class = aut_k0_class(&m, 0).unwrap();
        let realized = k0_realize(&class).unwrap();
        assert!(similar(&realized, &m).unwrap());
        assert!(k0_eq(&aut_k0_class(&realized, 0).unwrap(), &class).unwrap());
        // negative classes are rejected
        let neg = k0_neg(&class);
        assert!(matches!(
            k0_realize(&neg).unwrap_err(),
            Error::NegativeCoefficient(_)
        ));
        // realization of a divisor-built module round-trips
        let mut div = DivisorClass::empty();
        div.insert(Poly::from_ints(&f, &[1, 1]), 2, 3);
        let built = build_module(&f, &div);
        assert_eq!(elementary_divisors(&built, 0).unwrap(), div);
    }

    #[test]
    fn transport_examples() {
        let f = f2();
        let p = Poly::from_ints(&f, &[1, 1, 1]);
        let c = PrimaryComponent::new(
            p.clone(),
            TorsionModule::new(companion(&p)).unwrap(),
            0,
        )
        .unwrap();
        assert!(transport_check(&c, 0).unwrap());

        let f3 = Field::prime(3).unwrap();
        let lin = Poly::from_ints(&f3, &[-1, 1]);
        let c = PrimaryComponent::new(
            lin.clone(),
            TorsionModule::new(companion(&lin.pow(2))).unwrap(),
            0,
        )
        .unwrap();
        assert!(transport_check(&c, 0).unwrap());

        let c = PrimaryComponent::new(p, TorsionModule::zero(f), 0).unwrap();
        assert!(transport_check(&c, 0).unwrap());
    }
}
