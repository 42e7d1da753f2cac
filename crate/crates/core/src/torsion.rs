//! Finitely generated torsion F[t]-modules presented as square matrices
//! (the matrix is the action of t), their Smith normal form over F[t],
//! elementary-divisor classification, the Jordan-block morphism calculus,
//! and the nilpotent devissage filtration.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::matrix::Mat;
use crate::poly::{factor, Poly};

/// A finite-dimensional vector space together with an endomorphism,
/// i.e. a finitely generated torsion F[t]-module. The zero module is the
/// 0x0 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionModule {
    field: Field,
    mat: Mat,
}

impl TorsionModule {
    pub fn new(mat: Mat) -> Result<TorsionModule> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        Ok(TorsionModule {
            field: mat.field().clone(),
            mat,
        })
    }

    pub fn zero(field: Field) -> TorsionModule {
        TorsionModule {
            mat: Mat::zeros(field.clone(), 0, 0),
            field,
        }
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> TorsionModule {
        TorsionModule::new(Mat::from_ints(field, rows)).unwrap()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn direct_sum(&self, other: &TorsionModule) -> Result<TorsionModule> {
        TorsionModule::new(self.mat.direct_sum(&other.mat)?)
    }

    pub fn conjugate(&self, p: &Mat) -> Result<TorsionModule> {
        let inv = p.inverse()?;
        TorsionModule::new(p.mul(&self.mat)?.mul(&inv)?)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.mat.pow(self.dim()).map(|m| m.is_zero()).unwrap_or(false)
    }

    /// Least l with mat^l = 0; `None` if not nilpotent. The index of a
    /// nilpotent matrix never exceeds its dimension.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut acc = Mat::identity(self.field.clone(), self.dim());
        for l in 0..=self.dim() {
            if acc.is_zero() {
                return Some(l);
            }
            acc = acc.mul(&self.mat).expect("square");
        }
        None
    }
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal, the
/// negated coefficients in the last column.
pub fn companion(f: &Poly) -> Mat {
    assert!(f.is_monic(), "companion matrix needs a monic polynomial");
    let field = f.field().clone();
    let n = f.degree().unwrap() as usize;
    let mut m = Mat::zeros(field.clone(), n, n);
    for i in 0..n.saturating_sub(1) {
        m.set(i + 1, i, field.one());
    }
    for i in 0..n {
        m.set(i, n - 1, field.neg(&f.coeff(i)));
    }
    m
}

/// The Jordan block module M_r = F[t]/t^r as a torsion module.
pub fn jordan_block(field: &Field, r: usize) -> TorsionModule {
    TorsionModule::new(companion(&Poly::t_power(field.clone(), r))).unwrap()
}

// ---- polynomial matrices and Smith normal form ----

/// Dense matrix with entries in F[t].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMat {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Poly>) -> PolyMat {
        assert_eq!(data.len(), rows * cols);
        PolyMat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: Field, n: usize) -> PolyMat {
        let mut data = vec![Poly::zero(field.clone()); n * n];
        for i in 0..n {
            data[i * n + i] = Poly::one(field.clone());
        }
        PolyMat {
            field,
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMat::new(
            self.field.clone(),
            self.rows,
            other.cols,
            vec![Poly::zero(self.field.clone()); self.rows * other.cols],
        );
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.mul(other.at(k, j)).expect("same field");
                    let sum = out.at(i, j).add(&prod).expect("same field");
                    out.set(i, j, sum);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_k
    fn row_sub_mul(&mut self, i: usize, k: usize, q: &Poly) {
        for j in 0..self.cols {
            let sub = q.mul(self.at(k, j)).expect("same field");
            let v = self.at(i, j).sub(&sub).expect("same field");
            self.set(i, j, v);
        }
    }

    /// col_j -= q * col_k
    fn col_sub_mul(&mut self, j: usize, k: usize, q: &Poly) {
        for i in 0..self.rows {
            let sub = q.mul(self.at(i, k)).expect("same field");
            let v = self.at(i, j).sub(&sub).expect("same field");
            self.set(i, j, v);
        }
    }

    /// row_k += row_i
    fn row_add(&mut self, k: usize, i: usize) {
        for j in 0..self.cols {
            let v = self.at(k, j).add(self.at(i, j)).expect("same field");
            self.set(k, j, v);
        }
    }

    fn scale_row(&mut self, i: usize, c: &FieldElem) {
        for j in 0..self.cols {
            let v = self.at(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    /// Determinant by cofactor expansion; intended for the small matrices
    /// in the certificate checks.
    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Poly::one(self.field.clone());
        }
        if n == 1 {
            return self.at(0, 0).clone();
        }
        let mut acc = Poly::zero(self.field.clone());
        for i in 0..n {
            if self.at(i, 0).is_zero() {
                continue;
            }
            let mut minor = PolyMat::new(
                self.field.clone(),
                n - 1,
                n - 1,
                vec![Poly::zero(self.field.clone()); (n - 1) * (n - 1)],
            );
            for (mi, si) in (0..n).filter(|x| *x != i).enumerate() {
                for j in 1..n {
                    minor.set(mi, j - 1, self.at(si, j).clone());
                }
            }
            let mut term = self.at(i, 0).mul(&minor.det()).expect("same field");
            if i % 2 == 1 {
                term = term.neg();
            }
            acc = acc.add(&term).expect("same field");
        }
        acc
    }
}

/// tI - A for the action matrix A.
pub fn char_matrix(m: &TorsionModule) -> PolyMat {
    let field = m.field().clone();
    let n = m.dim();
    let mut out = PolyMat::new(
        field.clone(),
        n,
        n,
        vec![Poly::zero(field.clone()); n * n],
    );
    for i in 0..n {
        for j in 0..n {
            let a = field.neg(m.mat().at(i, j));
            let coeffs = if i == j {
                vec![a, field.one()]
            } else {
                vec![a]
            };
            out.set(i, j, Poly::new(field.clone(), coeffs));
        }
    }
    out
}

/// Smith normal form certificate: U * input * V = D with U, V of unit
/// determinant and D diagonal with monic entries in a divisibility chain.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: PolyMat,
    pub d: PolyMat,
    pub v: PolyMat,
    pub det_u: FieldElem,
    pub det_v: FieldElem,
}

impl Snf {
    /// Diagonal entries of D.
    pub fn diagonal(&self) -> Vec<Poly> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.at(i, i).clone())
            .collect()
    }

    /// The nonconstant diagonal entries: the invariant factors.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        self.diagonal()
            .into_iter()
            .filter(|p| p.degree().map(|d| d >= 1).unwrap_or(false))
            .collect()
    }
}

/// Smith normal form over F[t] by Euclidean elimination, pivoting on the
/// entry of least degree (ties broken by smallest row, then column).
pub fn smith_normal_form(input: &PolyMat) -> Snf {
    let field = input.field.clone();
    let (n, m) = (input.rows, input.cols);
    let mut d = input.clone();
    let mut u = PolyMat::identity(field.clone(), n);
    let mut v = PolyMat::identity(field.clone(), m);
    let mut det_u = field.one();
    let mut det_v = field.one();
    for k in 0..n.min(m) {
        loop {
            // minimal-degree pivot in the trailing block
            let mut best: Option<(usize, usize, u32)> = None;
            for i in k..n {
                for j in k..m {
                    if let Some(deg) = d.at(i, j).degree() {
                        if best.map(|(_, _, bd)| deg < bd).unwrap_or(true) {
                            best = Some((i, j, deg));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break; // trailing block is zero
            };
            if pi != k {
                d.swap_rows(k, pi);
                u.swap_rows(k, pi);
                det_u = field.neg(&det_u);
            }
            if pj != k {
                d.swap_cols(k, pj);
                v.swap_cols(k, pj);
                det_v = field.neg(&det_v);
            }
            let mut dirty = false;
            for i in k + 1..n {
                if d.at(i, k).is_zero() {
                    continue;
                }
                let (q, r) = d.at(i, k).divmod(d.at(k, k)).expect("pivot nonzero");
                d.row_sub_mul(i, k, &q);
                u.row_sub_mul(i, k, &q);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            for j in k + 1..m {
                if d.at(k, j).is_zero() {
                    continue;
                }
                let (q, r) = d.at(k, j).divmod(d.at(k, k)).expect("pivot nonzero");
                d.col_sub_mul(j, k, &q);
                v.col_sub_mul(j, k, &q);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot row/column clear: force pivot | trailing block
            let pivot = d.at(k, k).clone();
            let mut offender = None;
            'scan: for i in k + 1..n {
                for j in k + 1..m {
                    if !d.at(i, j).rem(&pivot).expect("pivot nonzero").is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    d.row_add(k, i);
                    u.row_add(k, i);
                }
                None => break,
            }
        }
    }
    // normalize the diagonal to monic
    for k in 0..n.min(m) {
        if let Some(lc) = d.at(k, k).leading_coeff().cloned() {
            if lc != field.one() {
                let inv = field.inv(&lc).expect("leading coefficient nonzero");
                d.scale_row(k, &inv);
                u.scale_row(k, &inv);
                det_u = field.mul(&det_u, &inv);
            }
        }
    }
    Snf {
        u,
        d,
        v,
        det_u,
        det_v,
    }
}

/// SNF of the characteristic matrix tI - A; the invariant-factor
/// decomposition of the module.
pub fn char_matrix_snf(m: &TorsionModule) -> Snf {
    smith_normal_form(&char_matrix(m))
}

/// Invariant factors d_1 | d_2 | ... of the module.
pub fn invariant_factors(m: &TorsionModule) -> Vec<Poly> {
    char_matrix_snf(m).invariant_factors()
}

// ---- elementary divisors ----

/// Multiset of elementary divisors: (monic irreducible m, exponent r) with
/// multiplicities, canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DivisorClass {
    entries: BTreeMap<(Poly, u32), u32>,
}

impl DivisorClass {
    pub fn empty() -> DivisorClass {
        DivisorClass::default()
    }

    pub fn insert(&mut self, m: Poly, r: u32, mult: u32) {
        if mult == 0 {
            return;
        }
        *self.entries.entry((m, r)).or_insert(0) += mult;
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Poly, u32, u32)> {
        self.entries.iter().map(|((m, r), mult)| (m, *r, *mult))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total dimension: sum of mult * r * deg(m).
    pub fn dimension(&self) -> usize {
        self.entries()
            .map(|(m, r, mult)| m.degree().unwrap() as usize * r as usize * mult as usize)
            .sum()
    }

    /// Multiset sum.
    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        let mut out = self.clone();
        for (m, r, mult) in other.entries() {
            out.insert(m.clone(), r, mult);
        }
        out
    }

    /// The distinct irreducibles appearing as keys.
    pub fn keys(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = vec![];
        for (m, _, _) in self.entries() {
            if out.last() != Some(m) {
                out.push(m.clone());
            }
        }
        out
    }

    /// Exponent multiset {r: total multiplicity}, forgetting the keys.
    pub fn exponent_multiset(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for (_, r, mult) in self.entries() {
            *out.entry(r).or_insert(0) += mult;
        }
        out
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .map(|(m, r, mult)| format!("(({m}), {r}): {mult}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Classify the module: factor each invariant factor and collect the
/// elementary divisors (m, r) with multiplicity.
pub fn elementary_divisors(module: &TorsionModule, seed: u64) -> Result<DivisorClass> {
    let mut out = DivisorClass::empty();
    for inv in invariant_factors(module) {
        let fac = factor(&inv, seed)?;
        for (m, e) in fac.factors {
            out.insert(m, e, 1);
        }
    }
    debug_assert_eq!(out.dimension(), module.dim());
    Ok(out)
}

/// The module is an automorphism iff its action matrix is invertible,
/// equivalently iff no elementary divisor is a power of t.
pub fn is_automorphism(module: &TorsionModule) -> bool {
    !module
        .field()
        .is_zero(&module.mat().det().expect("square by construction"))
}

/// Block-diagonal module of companion matrices of m^r, one block per unit
/// of multiplicity, in canonical key order. Inverse of classification up
/// to similarity.
pub fn build_module(field: &Field, class: &DivisorClass) -> TorsionModule {
    let mut acc = TorsionModule::zero(field.clone());
    for (m, r, mult) in class.entries() {
        let block = TorsionModule::new(companion(&m.pow(r))).unwrap();
        for _ in 0..mult {
            acc = acc.direct_sum(&block).expect("same field");
        }
    }
    acc
}

/// Similarity test via invariant factors; no factorization involved.
pub fn similar(a: &TorsionModule, b: &TorsionModule) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    Ok(invariant_factors(a) == invariant_factors(b))
}

// ---- morphisms between Jordan blocks ----

/// An F[t]-linear map M_s -> M_r between Jordan blocks: multiplication by
/// a polynomial p with deg p < r, where t^(r-s) must divide p if s < r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanHom {
    pub s: usize,
    pub r: usize,
    pub p: Poly,
}

impl JordanHom {
    pub fn new(s: usize, r: usize, p: Poly) -> Result<JordanHom> {
        let h = JordanHom { s, r, p };
        h.validate()?;
        Ok(h)
    }

    /// The zero morphism.
    pub fn zero(field: &Field, s: usize, r: usize) -> JordanHom {
        JordanHom {
            s,
            r,
            p: Poly::zero(field.clone()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(d) = self.p.degree() {
            if d as usize >= self.r {
                return Err(Error::ShapeMismatch(format!(
                    "multiplier degree {d} >= target block size {}",
                    self.r
                )));
            }
        }
        if self.s < self.r {
            let need = self.r - self.s;
            let ok = self
                .p
                .coeffs()
                .iter()
                .take(need)
                .all(|c| self.p.field().is_zero(c));
            if !ok {
                return Err(Error::ShapeMismatch(format!(
                    "multiplier not divisible by t^{need}"
                )));
            }
        }
        Ok(())
    }

    /// Composition self o other (other: M_s -> M_m, self: M_m -> M_r).
    pub fn compose(&self, other: &JordanHom) -> JordanHom {
        debug_assert_eq!(other.r, self.s);
        let field = self.p.field().clone();
        let prod = self.p.mul(&other.p).expect("same field");
        let p = prod
            .rem(&Poly::t_power(field, self.r))
            .expect("t^r nonzero");
        JordanHom {
            s: other.s,
            r: self.r,
            p,
        }
    }
}

/// Basis of Hom(M_s, M_r): the maps multiplication-by-t^j for
/// max(0, r-s) <= j < r. Its size is min(r, s).
pub fn jordan_hom_basis(field: &Field, s: usize, r: usize) -> Vec<JordanHom> {
    let lo = r.saturating_sub(s);
    (lo..r)
        .map(|j| JordanHom {
            s,
            r,
            p: Poly::t_power(field.clone(), j),
        })
        .collect()
}

/// Matrix of x -> p*x : M_s -> M_r in the bases 1, t, ..., t^(k-1).
/// Composition of homs corresponds to matrix product.
pub fn hom_to_matrix(h: &JordanHom) -> Mat {
    let field = h.p.field().clone();
    let mut out = Mat::zeros(field.clone(), h.r, h.s);
    let tr = Poly::t_power(field.clone(), h.r);
    for i in 0..h.s {
        let img = h
            .p
            .mul(&Poly::t_power(field.clone(), i))
            .expect("same field")
            .rem(&tr)
            .expect("t^r nonzero");
        for (row, c) in img.coeffs().iter().enumerate() {
            out.set(row, i, c.clone());
        }
    }
    out
}

// ---- devissage filtration ----

/// An ascending chain of t-invariant subspaces 0 = T_0 < ... < T_l = F^d
/// with t * T_{k+1} contained in T_k; the bases are nested column sets.
#[derive(Debug, Clone)]
pub struct Filtration {
    steps: Vec<Mat>,
}

impl Filtration {
    pub fn steps(&self) -> &[Mat] {
        &self.steps
    }

    /// Number of proper inclusions (the nilpotency index).
    pub fn length(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn quotient_dims(&self) -> Vec<usize> {
        self.steps
            .windows(2)
            .map(|w| w[1].cols() - w[0].cols())
            .collect()
    }
}

/// Filtration by kernels of powers: T_k = ker(A^k). Each quotient carries
/// the zero induced endomorphism. Errors on non-nilpotent input.
pub fn devissage_filtration(module: &TorsionModule) -> Result<Filtration> {
    let l = module.nilpotency_index().ok_or(Error::NotNilpotent)?;
    let field = module.field().clone();
    let d = module.dim();
    let mut steps = vec![Mat::zeros(field.clone(), d, 0)];
    let mut power = Mat::identity(field.clone(), d);
    for _ in 1..=l {
        power = power.mul(module.mat())?;
        let kernel = power.kernel_basis();
        let prev = steps.last().unwrap();
        steps.push(Mat::extend_basis(prev, &kernel));
    }
    debug_assert_eq!(steps.last().unwrap().cols(), d);
    Ok(Filtration { steps })
}

/// Check t * T_{k+1} lies in T_k for every step; used by the verification
/// suites.
pub fn filtration_quotients_trivial(module: &TorsionModule, filt: &Filtration) -> bool {
    for w in filt.steps().windows(2) {
        let (lower, upper) = (&w[0], &w[1]);
        let image = match module.mat().mul(upper) {
            Ok(m) => m,
            Err(_) => return false,
        };
        let combined = Mat::extend_basis(lower, &image);
        if combined.cols() != lower.cols() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn rationals() -> Field {
        Field::rationals()
    }

    fn certificate_holds(m: &TorsionModule, snf: &Snf) -> bool {
        let residual = snf.u.mul(&char_matrix(m)).mul(&snf.v);
        residual == snf.d
    }

    #[test]
    fn snf_identity_two_by_two() {
        let q = rationals();
        let m = TorsionModule::from_ints(&q, &[&[1, 0], &[0, 1]]);
        let snf = char_matrix_snf(&m);
        assert!(certificate_holds(&m, &snf));
        let tm1 = Poly::from_ints(&q, &[-1, 1]);
        assert_eq!(snf.diagonal(), vec![tm1.clone(), tm1]);
    }

    #[test]
    fn snf_nilpotent_block() {
        let q = rationals();
        let m = TorsionModule::from_ints(&q, &[&[0, 1], &[0, 0]]);
        let snf = char_matrix_snf(&m);
        assert!(certificate_holds(&m, &snf));
        assert_eq!(
            snf.diagonal(),
            vec![Poly::one(q.clone()), Poly::t_power(q.clone(), 2)]
        );
        assert_eq!(snf.invariant_factors(), vec![Poly::t_power(q, 2)]);
    }

    #[test]
    fn snf_distinct_eigenvalues() {
        let q = rationals();
        let m = TorsionModule::from_ints(&q, &[&[1, 0], &[0, 2]]);
        let snf = char_matrix_snf(&m);
        assert!(certificate_holds(&m, &snf));
        // invariant factors 1, (t-1)(t-2)
        let expect = Poly::from_ints(&q, &[-1, 1])
            .mul(&Poly::from_ints(&q, &[-2, 1]))
            .unwrap();
        assert_eq!(snf.invariant_factors(), vec![expect]);
    }

    #[test]
    fn snf_unit_determinants() {
        let q = rationals();
        let m = TorsionModule::from_ints(&q, &[&[0, 1, 2], &[1, 1, 0], &[0, 3, 1]]);
        let snf = char_matrix_snf(&m);
        assert!(certificate_holds(&m, &snf));
        // tracked determinants match the cofactor expansion and are units
        assert!(!q.is_zero(&snf.det_u));
        assert!(!q.is_zero(&snf.det_v));
        assert_eq!(snf.u.det(), Poly::constant(q.clone(), snf.det_u.clone()));
        assert_eq!(snf.v.det(), Poly::constant(q.clone(), snf.det_v.clone()));
        // product of diagonal = char poly up to the tracked unit
        let mut prod = Poly::one(q.clone());
        for e in snf.diagonal() {
            prod = prod.mul(&e).unwrap();
        }
        let charpoly = char_matrix(&m).det();
        assert_eq!(
            charpoly.make_monic(),
            prod,
            "diagonal product must be the characteristic polynomial up to a unit"
        );
    }

    #[test]
    fn elementary_divisor_examples() {
        let f = f2();
        // identity 1x1 over F_2: divisor (t+1, 1)
        let m = TorsionModule::from_ints(&f, &[&[1]]);
        let class = elementary_divisors(&m, 0).unwrap();
        let mut expect = DivisorClass::empty();
        expect.insert(Poly::from_ints(&f, &[1, 1]), 1, 1);
        assert_eq!(class, expect);

        // nilpotent 2x2: divisor (t, 2)
        let m = TorsionModule::from_ints(&f, &[&[0, 1], &[0, 0]]);
        let class = elementary_divisors(&m, 0).unwrap();
        let mut expect = DivisorClass::empty();
        expect.insert(Poly::t_power(f.clone(), 1), 2, 1);
        assert_eq!(class, expect);

        // companion of t^2+t+1: a single divisor of degree 2
        let g = Poly::from_ints(&f, &[1, 1, 1]);
        let m = TorsionModule::new(companion(&g)).unwrap();
        let class = elementary_divisors(&m, 0).unwrap();
        let mut expect = DivisorClass::empty();
        expect.insert(g, 1, 1);
        assert_eq!(class, expect);
    }

    #[test]
    fn automorphism_detection() {
        let f = f3();
        assert!(is_automorphism(&TorsionModule::from_ints(
            &f,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]
        )));
        assert!(!is_automorphism(&TorsionModule::from_ints(
            &f,
            &[&[0, 1], &[0, 0]]
        )));
        // companion of t(t-1) = t^2 - t has determinant 0
        let g = Poly::from_ints(&f, &[0, -1, 1]);
        assert!(!is_automorphism(&TorsionModule::new(companion(&g)).unwrap()));
        // agreement with the divisor criterion
        for m in [
            TorsionModule::from_ints(&f, &[&[0, 1], &[0, 0]]),
            TorsionModule::from_ints(&f, &[&[1, 1], &[0, 2]]),
            TorsionModule::new(companion(&g)).unwrap(),
        ] {
            let class = elementary_divisors(&m, 0).unwrap();
            let has_t = class
                .entries()
                .any(|(p, _, _)| *p == Poly::t_power(f.clone(), 1));
            assert_eq!(is_automorphism(&m), !has_t);
        }
    }

    #[test]
    fn build_module_examples() {
        let f = f2();
        let mut class = DivisorClass::empty();
        class.insert(Poly::t_power(f.clone(), 1), 3, 1);
        let m = build_module(&f, &class);
        assert_eq!(m.mat(), jordan_block(&f, 3).mat());

        let mut class = DivisorClass::empty();
        class.insert(Poly::from_ints(&f, &[1, 1]), 1, 2);
        let m = build_module(&f, &class);
        assert_eq!(*m.mat(), Mat::identity(f.clone(), 2));

        assert_eq!(build_module(&f, &DivisorClass::empty()).dim(), 0);
    }

    #[test]
    fn round_trip_classification() {
        let f = f3();
        let m = TorsionModule::from_ints(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        let class = elementary_divisors(&m, 0).unwrap();
        let rebuilt = build_module(&f, &class);
        assert!(similar(&rebuilt, &m).unwrap());
    }

    #[test]
    fn similarity_examples() {
        let f = f2();
        let j2 = jordan_block(&f, 2);
        let zero2 = TorsionModule::from_ints(&f, &[&[0, 0], &[0, 0]]);
        assert!(!similar(&j2, &zero2).unwrap());
        let e = TorsionModule::zero(f.clone());
        assert!(similar(&e, &e).unwrap());
        let p = Mat::from_ints(&f, &[&[1, 1], &[0, 1]]);
        let conj = j2.conjugate(&p).unwrap();
        assert!(similar(&j2, &conj).unwrap());
        assert_eq!(
            similar(&j2, &TorsionModule::zero(f3())).unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn jordan_hom_basis_sizes() {
        let f = f2();
        let b = jordan_hom_basis(&f, 1, 1);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].p, Poly::one(f.clone()));

        let b = jordan_hom_basis(&f, 2, 3);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].p, Poly::t_power(f.clone(), 1));
        assert_eq!(b[1].p, Poly::t_power(f.clone(), 2));

        let b = jordan_hom_basis(&f, 3, 2);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].p, Poly::one(f.clone()));
        assert_eq!(b[1].p, Poly::t_power(f.clone(), 1));

        for h in jordan_hom_basis(&f, 2, 5) {
            h.validate().unwrap();
        }
    }

    #[test]
    fn hom_matrices() {
        let f = f2();
        // multiplication by t: M_1 -> M_2 is the column (0, 1)
        let h = JordanHom::new(1, 2, Poly::t_power(f.clone(), 1)).unwrap();
        assert_eq!(hom_to_matrix(&h), Mat::from_ints(&f, &[&[0], &[1]]));
        // reduction M_2 -> M_1 is the row (1, 0)
        let h = JordanHom::new(2, 1, Poly::one(f.clone())).unwrap();
        assert_eq!(hom_to_matrix(&h), Mat::from_ints(&f, &[&[1, 0]]));
        // identity on M_3
        let h = JordanHom::new(3, 3, Poly::one(f.clone())).unwrap();
        assert_eq!(hom_to_matrix(&h), Mat::identity(f.clone(), 3));
    }

    #[test]
    fn hom_composition_matches_matrix_product() {
        let f = f3();
        for (s, m, r) in [(2usize, 3usize, 2usize), (1, 2, 4), (3, 2, 3), (4, 4, 2)] {
            for a in jordan_hom_basis(&f, m, r) {
                for b in jordan_hom_basis(&f, s, m) {
                    let comp = a.compose(&b);
                    comp.validate().unwrap();
                    let lhs = hom_to_matrix(&comp);
                    let rhs = hom_to_matrix(&a).mul(&hom_to_matrix(&b)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn invalid_hom_rejected() {
        let f = f2();
        // p = 1 into a bigger block needs divisibility by t^(r-s)
        assert!(JordanHom::new(1, 2, Poly::one(f.clone())).is_err());
        assert!(JordanHom::new(2, 2, Poly::t_power(f, 2)).is_err());
    }

    #[test]
    fn devissage_examples() {
        let f = f2();
        let j3 = jordan_block(&f, 3);
        let filt = devissage_filtration(&j3).unwrap();
        assert_eq!(filt.length(), 3);
        assert_eq!(filt.quotient_dims(), vec![1, 1, 1]);
        assert!(filtration_quotients_trivial(&j3, &filt));

        let z = TorsionModule::from_ints(&f, &[&[0, 0], &[0, 0]]);
        let filt = devissage_filtration(&z).unwrap();
        assert_eq!(filt.length(), 1);
        assert_eq!(filt.quotient_dims(), vec![2]);

        let f3 = f3();
        let m = jordan_block(&f3, 2)
            .direct_sum(&jordan_block(&f3, 1))
            .unwrap();
        let filt = devissage_filtration(&m).unwrap();
        assert_eq!(filt.length(), 2);
        assert_eq!(filt.quotient_dims(), vec![2, 1]);
        assert!(filtration_quotients_trivial(&m, &filt));

        let not_nil = TorsionModule::from_ints(&f, &[&[1]]);
        assert_eq!(
            devissage_filtration(&not_nil).unwrap_err(),
            Error::NotNilpotent
        );
    }

    #[test]
    fn zero_module_everywhere() {
        let f = f2();
        let z = TorsionModule::zero(f.clone());
        assert!(is_automorphism(&z));
        assert!(elementary_divisors(&z, 0).unwrap().is_empty());
        let filt = devissage_filtration(&z).unwrap();
        assert_eq!(filt.length(), 0);
        let snf = char_matrix_snf(&z);
        assert!(snf.invariant_factors().is_empty());
    }

    #[test]
    fn additivity_of_divisors() {
        let f = f3();
        let a = TorsionModule::from_ints(&f, &[&[1, 1], &[0, 1]]);
        let b = TorsionModule::new(companion(&Poly::from_ints(&f, &[1, 0, 1]))).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        let lhs = elementary_divisors(&sum, 0).unwrap();
        let rhs = elementary_divisors(&a, 0)
            .unwrap()
            .add(&elementary_divisors(&b, 0).unwrap());
        assert_eq!(lhs, rhs);
    }
}
