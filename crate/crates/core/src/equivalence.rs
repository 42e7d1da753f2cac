//! The explicit equivalences between categories of endomorphisms and
//! nilpotent modules over residue fields: primary splitting, the
//! t -> t - alpha coordinate shift, transport across a finite field
//! extension (in both directions), and explicit unit/counit certificates
//! for the adjunction underlying the transport.

use crate::error::{Error, Result};
use crate::field::{embed, residue_field, Field, FieldElem};
use crate::matrix::Mat;
use crate::poly::{is_irreducible, is_separable, Poly};
use crate::torsion::{elementary_divisors, similar, TorsionModule};

/// An m-primary summand: a module all of whose elementary divisors are
/// powers of the monic irreducible `ideal_gen`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub ideal_gen: Poly,
    pub module: TorsionModule,
}

impl PrimaryComponent {
    /// Validates the invariants: monic irreducible generator and all
    /// elementary divisors powers of it.
    pub fn new(ideal_gen: Poly, module: TorsionModule, seed: u64) -> Result<PrimaryComponent> {
        if ideal_gen.field() != module.field() {
            return Err(Error::FieldMismatch);
        }
        if !ideal_gen.is_monic() || !is_irreducible(&ideal_gen, seed)? {
            return Err(Error::ReducibleModulus(format!("{ideal_gen}")));
        }
        let class = elementary_divisors(&module, seed)?;
        if class.entries().any(|(m, _, _)| *m != ideal_gen) {
            return Err(Error::NotPrimary);
        }
        Ok(PrimaryComponent { ideal_gen, module })
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// Evaluate a polynomial at a square matrix (Horner).
pub fn eval_at_matrix(p: &Poly, a: &Mat) -> Mat {
    let field = a.field().clone();
    let n = a.rows();
    let mut acc = Mat::zeros(field.clone(), n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(a).expect("square");
        for i in 0..n {
            let v = field.add(acc.at(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}

/// Split a module into its primary components, one per maximal ideal in
/// its support, in canonical key order. The component for a key m is the
/// restriction of the action to ker(m(A)^dim), in the echelon basis of
/// that kernel.
pub fn endo_classify(module: &TorsionModule, seed: u64) -> Result<Vec<PrimaryComponent>> {
    let class = elementary_divisors(module, seed)?;
    let d = module.dim();
    let mut out = vec![];
    for key in class.keys() {
        let m_at_a = eval_at_matrix(&key, module.mat());
        let power = m_at_a.pow(d).expect("square");
        let basis = power.kernel_basis();
        let restricted = module.mat().restrict_to_invariant(&basis)?;
        out.push(PrimaryComponent {
            ideal_gen: key,
            module: TorsionModule::new(restricted)?,
        });
    }
    debug_assert_eq!(out.iter().map(|c| c.dim()).sum::<usize>(), d);
    Ok(out)
}

/// Primary splitting of an automorphism. Rejects modules with a
/// (t)-primary part; use [`endo_classify`] for general endomorphisms.
pub fn primary_split(module: &TorsionModule, seed: u64) -> Result<Vec<PrimaryComponent>> {
    let parts = endo_classify(module, seed)?;
    let t = Poly::t_power(module.field().clone(), 1);
    if parts.iter().any(|c| c.ideal_gen == t) {
        return Err(Error::NotAutomorphism);
    }
    Ok(parts)
}

/// For a component primary at a linear ideal (t - alpha), subtract alpha
/// from the action: the result is nilpotent. The inverse operation adds
/// alpha * I back.
pub fn shift_to_nilpotent(c: &PrimaryComponent, alpha: &FieldElem) -> Result<TorsionModule> {
    let field = c.module.field().clone();
    let expected = Poly::new(field.clone(), vec![field.neg(alpha), field.one()]);
    if c.ideal_gen != expected {
        return Err(Error::NotLinearIdeal);
    }
    let shifted = c
        .module
        .mat()
        .sub(&Mat::identity(field, c.dim()).scale(alpha))?;
    TorsionModule::new(shifted)
}

/// Everything the forward transport computes: the residue field, the
/// distinguished root, the base-changed action, the echelon basis of the
/// generalized eigenspace, and the nilpotent restriction.
struct ForwardData {
    l: Field,
    alpha: FieldElem,
    a_l: Mat,
    eigen: Mat,
    nilpotent: TorsionModule,
}

fn forward_data(c: &PrimaryComponent) -> Result<ForwardData> {
    let f = c.module.field().clone();
    let m = &c.ideal_gen;
    debug_assert!(is_separable(m).unwrap_or(false));
    let l = residue_field(&f, m)?;
    let k = m.degree().unwrap() as usize;
    let d = c.dim();
    let alpha = if k == 1 {
        f.neg(&m.coeff(0))
    } else {
        l.alpha().unwrap()
    };
    let mut a_l = Mat::zeros(l.clone(), d, d);
    for i in 0..d {
        for j in 0..d {
            a_l.set(i, j, embed(&f, &l, c.module.mat().at(i, j))?);
        }
    }
    let b = a_l.sub(&Mat::identity(l.clone(), d).scale(&alpha))?;
    let eigen = b.pow(d)?.kernel_basis();
    if eigen.cols() * k != d {
        return Err(Error::NotPrimary);
    }
    let nilpotent = TorsionModule::new(b.restrict_to_invariant(&eigen)?)?;
    Ok(ForwardData {
        l,
        alpha,
        a_l,
        eigen,
        nilpotent,
    })
}

/// Transport an m-primary module to a nilpotent module over the residue
/// field L = F[t]/m: base-change the action to L, extract the generalized
/// eigenspace of the canonical root, and subtract the root. The dimension
/// over L is dim_F / deg(m).
pub fn fext_forward(c: &PrimaryComponent, _seed: u64) -> Result<(Field, TorsionModule)> {
    let data = forward_data(c)?;
    Ok((data.l, data.nilpotent))
}

/// Inverse transport: view L^n as an F-vector space (dimension multiplies
/// by deg m) with t acting as multiplication by the root plus the
/// nilpotent part. The output is m-primary.
pub fn fext_backward(l: &Field, n: &TorsionModule, m: &Poly) -> Result<TorsionModule> {
    let f = m.field().clone();
    let expected = residue_field(&f, m)?;
    if *l != expected || n.field() != l {
        return Err(Error::FieldMismatch);
    }
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let k = m.degree().unwrap() as usize;
    let nn = n.dim();
    let alpha = if k == 1 {
        f.neg(&m.coeff(0))
    } else {
        l.alpha().unwrap()
    };
    let mut out = Mat::zeros(f.clone(), nn * k, nn * k);
    for bi in 0..nn {
        for bj in 0..nn {
            let mut entry = n.mat().at(bi, bj).clone();
            if bi == bj {
                entry = l.add(&entry, &alpha);
            }
            if l.is_zero(&entry) {
                continue;
            }
            // F-linear block: multiplication by the entry on L in the
            // basis 1, alpha, ..., alpha^(k-1)
            let cols = l.regular_representation(&entry);
            for (ci, col) in cols.iter().enumerate() {
                for (ri, val) in col.iter().enumerate() {
                    out.set(bi * k + ri, bj * k + ci, val.clone());
                }
            }
        }
    }
    TorsionModule::new(out)
}

/// Certificates that the transport is an equivalence on this object: the
/// unit (an F-linear isomorphism from the module to the backward-forward
/// round trip) and the counit (an L-linear isomorphism from the
/// forward-backward round trip to the nilpotent module).
#[derive(Debug, Clone)]
pub struct FExtWitness {
    pub source: TorsionModule,
    pub target_field: Field,
    pub target: TorsionModule,
    pub unit_matrix: Mat,
    pub counit_matrix: Mat,
}

/// Column-space basis in reduced echelon form.
fn column_space_basis(m: &Mat) -> Mat {
    let (rref, pivots) = m.transpose().rref();
    let field = m.field().clone();
    let cols: Vec<Vec<FieldElem>> = (0..pivots.len()).map(|r| rref.row(r)).collect();
    if cols.is_empty() {
        Mat::zeros(field, m.rows(), 0)
    } else {
        Mat::from_cols(field, cols)
    }
}

/// Build the unit and counit on basis vectors and certify both are
/// isomorphisms by exact rank computation; also checks that the round
/// trips preserve the similarity class on both sides. Panics on internal
/// certification failure (the library is then wrong, not the input).
pub fn verify_adjunction(c: &PrimaryComponent, seed: u64) -> Result<FExtWitness> {
    let f = c.module.field().clone();
    let m = &c.ideal_gen;
    let k = m.degree().unwrap() as usize;
    let d = c.dim();
    let data = forward_data(c)?;
    let l = data.l.clone();
    let n = data.nilpotent.clone();
    let back = fext_backward(&l, &n, m)?;

    // unit: project 1 (x) e_j onto the generalized eigenspace along the
    // complementary Fitting summand, then expand eigenspace coordinates
    // over F
    let b = data
        .a_l
        .sub(&Mat::identity(l.clone(), d).scale(&data.alpha))?;
    let b_power = b.pow(d)?;
    let complement = column_space_basis(&b_power);
    let dim_p = data.eigen.cols();
    let mut g_cols: Vec<Vec<FieldElem>> = vec![];
    for j in 0..dim_p {
        g_cols.push(data.eigen.col(j));
    }
    for j in 0..complement.cols() {
        g_cols.push(complement.col(j));
    }
    let g = if g_cols.is_empty() {
        Mat::zeros(l.clone(), d, 0)
    } else {
        Mat::from_cols(l.clone(), g_cols)
    };
    assert_eq!(g.cols(), d, "Fitting decomposition must fill the space");
    let g_inv = g.inverse().expect("Fitting basis is invertible");
    let mut unit = Mat::zeros(f.clone(), d, d);
    for col in 0..d {
        let mut e = vec![l.zero(); d];
        e[col] = l.one();
        let coords = g_inv.mul_vec(&e);
        for j in 0..dim_p {
            for (i, v) in l.coords(&coords[j]).into_iter().enumerate() {
                unit.set(j * k + i, col, v);
            }
        }
    }
    assert_eq!(unit.rank(), d, "unit certificate must be invertible");
    assert_eq!(
        unit.mul(c.module.mat()).expect("shape"),
        back.mat().mul(&unit).expect("shape"),
        "unit must intertwine the actions"
    );

    // counit: transport the round-tripped module forward again and fold
    // the eigenspace basis back to L^n by multiplying out the powers of
    // the root
    let back_component = PrimaryComponent {
        ideal_gen: m.clone(),
        module: back.clone(),
    };
    let data2 = forward_data(&back_component)?;
    let n2 = data2.nilpotent.clone();
    let nn = n.dim();
    assert_eq!(n2.dim(), nn);
    let mut counit = Mat::zeros(l.clone(), nn, nn);
    for col in 0..nn {
        let w = data2.eigen.col(col);
        for j in 0..nn {
            let mut acc = l.zero();
            let mut pow = l.one();
            for i in 0..k {
                acc = l.add(&acc, &l.mul(&w[j * k + i], &pow));
                pow = l.mul(&pow, &data.alpha);
            }
            counit.set(j, col, acc);
        }
    }
    assert_eq!(counit.rank(), nn, "counit certificate must be invertible");
    assert_eq!(
        counit.mul(n2.mat()).expect("shape"),
        n.mat().mul(&counit).expect("shape"),
        "counit must intertwine the nilpotent actions"
    );

    // round trips preserve classification on both sides
    assert!(
        similar(&back, &c.module)?,
        "backward-forward round trip must preserve the similarity class"
    );
    assert_eq!(
        elementary_divisors(&n2, seed)?,
        elementary_divisors(&n, seed)?,
        "forward-backward round trip must preserve the nilpotent class"
    );

    Ok(FExtWitness {
        source: c.module.clone(),
        target_field: l,
        target: n,
        unit_matrix: unit,
        counit_matrix: counit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::{companion, invariant_factors, jordan_block};

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    /// Jordan exponents of a nilpotent module, read off the invariant
    /// factors (each is a power of t).
    fn nil_exponents(n: &TorsionModule) -> Vec<u32> {
        invariant_factors(n)
            .iter()
            .map(|p| p.degree().unwrap())
            .collect()
    }

    #[test]
    fn split_distinct_eigenvalues() {
        let f5 = Field::prime(5).unwrap();
        let m = TorsionModule::from_ints(&f5, &[&[1, 0], &[0, 2]]);
        let parts = primary_split(&m, 0).unwrap();
        assert_eq!(parts.len(), 2);
        // canonical order: t+3 (eigenvalue 2) before t+4 (eigenvalue 1)
        assert_eq!(parts[0].ideal_gen, Poly::from_ints(&f5, &[3, 1]));
        assert_eq!(parts[0].module, TorsionModule::from_ints(&f5, &[&[2]]));
        assert_eq!(parts[1].ideal_gen, Poly::from_ints(&f5, &[4, 1]));
        assert_eq!(parts[1].module, TorsionModule::from_ints(&f5, &[&[1]]));
    }

    #[test]
    fn split_identity_is_single_component() {
        let q = Field::rationals();
        let m = TorsionModule::from_ints(&q, &[&[1, 0], &[0, 1]]);
        let parts = primary_split(&m, 0).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].ideal_gen, Poly::from_ints(&q, &[-1, 1]));
        assert_eq!(parts[0].dim(), 2);
    }

    #[test]
    fn split_irreducible_companion() {
        let f = f2();
        let p = Poly::from_ints(&f, &[1, 1, 1]);
        let m = TorsionModule::new(companion(&p)).unwrap();
        let parts = primary_split(&m, 0).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].ideal_gen, p);
    }

    #[test]
    fn split_components_union_to_class() {
        let f = f3();
        // mixed: eigenvalue 1 twice (one J_2), eigenvalue 2 once
        let m = TorsionModule::from_ints(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        let class = elementary_divisors(&m, 0).unwrap();
        let parts = primary_split(&m, 0).unwrap();
        let mut union = crate::torsion::DivisorClass::empty();
        for c in &parts {
            union = union.add(&elementary_divisors(&c.module, 0).unwrap());
        }
        assert_eq!(union, class);
    }

    #[test]
    fn primary_split_rejects_nilpotent_part() {
        let f = f2();
        let m = jordan_block(&f, 2)
            .direct_sum(&TorsionModule::from_ints(&f, &[&[1]]))
            .unwrap();
        assert_eq!(primary_split(&m, 0).unwrap_err(), Error::NotAutomorphism);
        // endo_classify admits the (t)-part
        let parts = endo_classify(&m, 0).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].ideal_gen, Poly::t_power(f.clone(), 1));
        assert!(parts[0].module.is_nilpotent());
        assert_eq!(parts[1].ideal_gen, Poly::from_ints(&f, &[1, 1]));
        // restricting to keys != t reproduces primary_split of the
        // invertible part
        let invertible = TorsionModule::from_ints(&f, &[&[1]]);
        let split = primary_split(&invertible, 0).unwrap();
        assert_eq!(split[0].ideal_gen, parts[1].ideal_gen);
        assert!(similar(&split[0].module, &parts[1].module).unwrap());
    }

    #[test]
    fn endo_classify_matches_primary_split_on_automorphisms() {
        let f = f3();
        let m = TorsionModule::from_ints(&f, &[&[1, 1], &[0, 2]]);
        assert_eq!(endo_classify(&m, 0).unwrap(), primary_split(&m, 0).unwrap());
    }

    #[test]
    fn endo_classify_zero_matrix() {
        let f = f2();
        let m = TorsionModule::from_ints(&f, &[&[0]]);
        let parts = endo_classify(&m, 0).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].ideal_gen, Poly::t_power(f, 1));
    }

    #[test]
    fn shift_examples() {
        let q = Field::rationals();
        let c = PrimaryComponent::new(
            Poly::from_ints(&q, &[-1, 1]),
            TorsionModule::from_ints(&q, &[&[1]]),
            0,
        )
        .unwrap();
        let shifted = shift_to_nilpotent(&c, &q.one()).unwrap();
        assert_eq!(shifted, TorsionModule::from_ints(&q, &[&[0]]));

        let f = f3();
        let j2 = jordan_block(&f, 2);
        let plus_one = TorsionModule::new(
            j2.mat().add(&Mat::identity(f.clone(), 2)).unwrap(),
        )
        .unwrap();
        let c = PrimaryComponent::new(Poly::from_ints(&f, &[-1, 1]), plus_one, 0).unwrap();
        assert_eq!(shift_to_nilpotent(&c, &f.one()).unwrap(), j2);

        // alpha mismatch
        assert_eq!(
            shift_to_nilpotent(&c, &f.from_int(2)).unwrap_err(),
            Error::NotLinearIdeal
        );
    }

    #[test]
    fn forward_examples() {
        let f = f2();
        let p = Poly::from_ints(&f, &[1, 1, 1]);
        let c = PrimaryComponent::new(
            p.clone(),
            TorsionModule::new(companion(&p)).unwrap(),
            0,
        )
        .unwrap();
        let (l, n) = fext_forward(&c, 0).unwrap();
        assert_eq!(l, Field::extension(2, vec![1, 1, 1]).unwrap());
        assert_eq!(n.dim(), 1);
        assert!(n.mat().is_zero());

        // shift case: companion of (t-1)^2 over F_3 transports to a
        // nilpotent block of exponent 2 over F_3 itself
        let f = f3();
        let sq = Poly::from_ints(&f, &[-1, 1]).pow(2);
        let c = PrimaryComponent::new(
            Poly::from_ints(&f, &[-1, 1]),
            TorsionModule::new(companion(&sq)).unwrap(),
            0,
        )
        .unwrap();
        let (l, n) = fext_forward(&c, 0).unwrap();
        assert_eq!(l, f);
        assert_eq!(n.dim(), 2);
        assert_eq!(nil_exponents(&n), vec![2]);

        // zero module
        let c = PrimaryComponent::new(
            Poly::from_ints(&f2(), &[1, 1, 1]),
            TorsionModule::zero(f2()),
            0,
        )
        .unwrap();
        let (_, n) = fext_forward(&c, 0).unwrap();
        assert_eq!(n.dim(), 0);
    }

    #[test]
    fn backward_examples() {
        let f = f2();
        let p = Poly::from_ints(&f, &[1, 1, 1]);
        let l = Field::extension(2, vec![1, 1, 1]).unwrap();
        let n = TorsionModule::new(Mat::zeros(l.clone(), 1, 1)).unwrap();
        let back = fext_backward(&l, &n, &p).unwrap();
        // multiplication by the root on F_4 over F_2 is the companion
        assert_eq!(*back.mat(), companion(&p));

        let f = f3();
        let j2 = jordan_block(&f, 2);
        let back = fext_backward(&f, &j2, &Poly::from_ints(&f, &[-1, 1])).unwrap();
        assert_eq!(
            *back.mat(),
            j2.mat().add(&Mat::identity(f.clone(), 2)).unwrap()
        );

        let empty = TorsionModule::zero(l.clone());
        let back = fext_backward(&l, &empty, &p).unwrap();
        assert_eq!(back.dim(), 0);

        // guards
        let not_nil = TorsionModule::new(Mat::identity(l.clone(), 1)).unwrap();
        assert_eq!(
            fext_backward(&l, &not_nil, &p).unwrap_err(),
            Error::NotNilpotent
        );
        let wrong_field = TorsionModule::zero(f2());
        assert_eq!(
            fext_backward(&l, &wrong_field, &p).unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn adjunction_witnesses() {
        let f = f2();
        let p = Poly::from_ints(&f, &[1, 1, 1]);
        // M = F[t]/p
        let c = PrimaryComponent::new(
            p.clone(),
            TorsionModule::new(companion(&p)).unwrap(),
            0,
        )
        .unwrap();
        let w = verify_adjunction(&c, 0).unwrap();
        assert_eq!(w.unit_matrix.rank(), 2);
        assert_eq!(w.counit_matrix.rank(), 1);

        // M = F[t]/p^2: dim 4 over F_2, nilpotent block of exponent 2 over F_4
        let c = PrimaryComponent::new(
            p.clone(),
            TorsionModule::new(companion(&p.pow(2))).unwrap(),
            0,
        )
        .unwrap();
        let w = verify_adjunction(&c, 0).unwrap();
        assert_eq!(w.source.dim(), 4);
        assert_eq!(w.target.dim(), 2);
        assert_eq!(nil_exponents(&w.target), vec![2]);
        assert_eq!(w.unit_matrix.rank(), 4);

        // zero module: empty certificates
        let c = PrimaryComponent::new(p, TorsionModule::zero(f), 0).unwrap();
        let w = verify_adjunction(&c, 0).unwrap();
        assert_eq!(w.unit_matrix.rows(), 0);
        assert_eq!(w.counit_matrix.rows(), 0);
    }

    #[test]
    fn components_with_distinct_keys_are_orthogonal() {
        // no nonzero module maps between components at different ideals
        let f = f3();
        let m = TorsionModule::from_ints(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        let parts = primary_split(&m, 0).unwrap();
        assert_eq!(parts.len(), 2);
        for (i, a) in parts.iter().enumerate() {
            for (j, b) in parts.iter().enumerate() {
                let dim = crate::selftest::intertwiner_space_dim(a.module.mat(), b.module.mat());
                if i == j {
                    assert!(dim > 0);
                } else {
                    assert_eq!(dim, 0);
                }
            }
        }
    }

    #[test]
    fn dimension_bookkeeping() {
        let f = f3();
        for m in crate::poly::irreducibles_up_to(&f, 2).unwrap() {
            for r in 1..=2u32 {
                let module = TorsionModule::new(companion(&m.pow(r))).unwrap();
                let c = PrimaryComponent::new(m.clone(), module, 0).unwrap();
                let dim_f = c.dim();
                let (l, n) = fext_forward(&c, 0).unwrap();
                assert_eq!(
                    dim_f,
                    n.dim() * m.degree().unwrap() as usize,
                    "dim_F = deg(m) * dim_L fails at m={m} r={r}"
                );
                let back = fext_backward(&l, &n, &m).unwrap();
                assert!(similar(&back, &c.module).unwrap());
            }
        }
    }
}
