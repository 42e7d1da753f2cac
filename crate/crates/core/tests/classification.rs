//! Randomized classification invariants: conjugation invariance,
//! direct-sum additivity, and the build/classify round trip.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use endoclass::field::{Field, FieldElem};
use endoclass::matrix::Mat;
use endoclass::torsion::{build_module, elementary_divisors, similar, TorsionModule};

fn random_matrix(field: &Field, d: usize, rng: &mut ChaCha8Rng) -> Mat {
    let mut m = Mat::zeros(field.clone(), d, d);
    for i in 0..d {
        for j in 0..d {
            let e: FieldElem = if field.cardinality().is_some() {
                field.random_elem(rng)
            } else {
                field.from_int(rng.gen_range(-2..=2))
            };
            m.set(i, j, e);
        }
    }
    m
}

fn random_invertible(field: &Field, d: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = random_matrix(field, d, rng);
        if !field.is_zero(&m.det().unwrap()) {
            return m;
        }
    }
}

fn cases() -> Vec<(Field, usize, usize)> {
    vec![
        (Field::prime(2).unwrap(), 4, 200),
        (Field::prime(3).unwrap(), 4, 200),
        (Field::prime(5).unwrap(), 4, 200),
        (Field::rationals(), 3, 200),
    ]
}

#[test]
fn conjugation_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (field, max_d, count) in cases() {
        for _ in 0..count {
            let d = rng.gen_range(0..=max_d);
            let a = TorsionModule::new(random_matrix(&field, d, &mut rng)).unwrap();
            let p = random_invertible(&field, d, &mut rng);
            let conj = a.conjugate(&p).unwrap();
            assert_eq!(
                elementary_divisors(&conj, 0).unwrap(),
                elementary_divisors(&a, 0).unwrap(),
            );
        }
    }
}

#[test]
fn direct_sum_additivity_and_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (field, max_d, _) in cases() {
        for _ in 0..60 {
            let d1 = rng.gen_range(0..=max_d.min(3));
            let d2 = rng.gen_range(0..=max_d.min(3));
            let a = TorsionModule::new(random_matrix(&field, d1, &mut rng)).unwrap();
            let b = TorsionModule::new(random_matrix(&field, d2, &mut rng)).unwrap();
            let sum = a.direct_sum(&b).unwrap();
            let ca = elementary_divisors(&a, 0).unwrap();
            let cb = elementary_divisors(&b, 0).unwrap();
            let cs = elementary_divisors(&sum, 0).unwrap();
            assert_eq!(cs, ca.add(&cb));
            // rebuild from the class and compare up to similarity
            let rebuilt = build_module(&field, &cs);
            assert!(similar(&rebuilt, &sum).unwrap());
        }
    }
}
