//! Coherent functors on nilpotent modules, presented as cokernels of Hom
//! along an epimorphism between direct sums of Jordan blocks, and made
//! computable by evaluating on the finitely many block sizes that can
//! carry a nonzero value.
//!
//! The data of an evaluated functor is one vector space per block size,
//! with three structure maps: the action of t, the map induced by the
//! projection M_{s+1} ->> M_s, and the map induced by the inclusion
//! t : M_s -> M_{s+1}. The split subcategory is cut out by the vanishing
//! of the latter two.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::torsion::{hom_to_matrix, JordanHom};

/// A presentation beta : B ->> B' by block sizes and a matrix of
/// Jordan-block morphisms; surjectivity is verified at construction.
/// Size-0 blocks are allowed and behave as the zero module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentFunctor {
    field: Field,
    source_blocks: Vec<usize>,
    target_blocks: Vec<usize>,
    beta: Vec<Vec<JordanHom>>,
}

impl CoherentFunctor {
    /// Validate shapes and the epimorphism condition (exact rank of the
    /// assembled linear map).
    pub fn new(
        field: Field,
        source_blocks: Vec<usize>,
        target_blocks: Vec<usize>,
        beta: Vec<Vec<JordanHom>>,
    ) -> Result<CoherentFunctor> {
        if beta.len() != target_blocks.len()
            || beta.iter().any(|row| row.len() != source_blocks.len())
        {
            return Err(Error::ShapeMismatch(
                "beta must be target_blocks x source_blocks".into(),
            ));
        }
        for (i, row) in beta.iter().enumerate() {
            for (j, h) in row.iter().enumerate() {
                if h.s != source_blocks[j] || h.r != target_blocks[i] {
                    return Err(Error::ShapeMismatch(format!(
                        "entry ({i}, {j}) maps M_{} -> M_{}, expected M_{} -> M_{}",
                        h.s, h.r, source_blocks[j], target_blocks[i]
                    )));
                }
                if h.p.field() != &field {
                    return Err(Error::FieldMismatch);
                }
                h.validate()?;
            }
        }
        let functor = CoherentFunctor {
            field,
            source_blocks,
            target_blocks,
            beta,
        };
        let total_target: usize = functor.target_blocks.iter().sum();
        if functor.beta_matrix().rank() != total_target {
            return Err(Error::NotEpimorphism);
        }
        Ok(functor)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn source_blocks(&self) -> &[usize] {
        &self.source_blocks
    }

    pub fn target_blocks(&self) -> &[usize] {
        &self.target_blocks
    }

    pub fn beta(&self) -> &[Vec<JordanHom>] {
        &self.beta
    }

    /// The underlying linear map of beta, assembled from hom blocks.
    pub fn beta_matrix(&self) -> Mat {
        let rows: usize = self.target_blocks.iter().sum();
        let cols: usize = self.source_blocks.iter().sum();
        let mut out = Mat::zeros(self.field.clone(), rows, cols);
        let mut row0 = 0;
        for (i, &ri) in self.target_blocks.iter().enumerate() {
            let mut col0 = 0;
            for (j, &sj) in self.source_blocks.iter().enumerate() {
                let block = hom_to_matrix(&self.beta[i][j]);
                for a in 0..ri {
                    for b in 0..sj {
                        out.set(row0 + a, col0 + b, block.at(a, b).clone());
                    }
                }
                col0 += sj;
            }
            row0 += ri;
        }
        out
    }

    /// Block-diagonal direct sum of presentations; presents the direct
    /// sum of the functors.
    pub fn direct_sum(&self, other: &CoherentFunctor) -> Result<CoherentFunctor> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut source = self.source_blocks.clone();
        source.extend_from_slice(&other.source_blocks);
        let mut target = self.target_blocks.clone();
        target.extend_from_slice(&other.target_blocks);
        let mut beta = vec![];
        for (i, row) in self.beta.iter().enumerate() {
            let mut new_row = row.clone();
            new_row.extend(
                other
                    .source_blocks
                    .iter()
                    .map(|&s| JordanHom::zero(&self.field, s, self.target_blocks[i])),
            );
            beta.push(new_row);
        }
        for (i, row) in other.beta.iter().enumerate() {
            let mut new_row: Vec<JordanHom> = self
                .source_blocks
                .iter()
                .map(|&s| JordanHom::zero(&self.field, s, other.target_blocks[i]))
                .collect();
            new_row.extend(row.clone());
            beta.push(new_row);
        }
        CoherentFunctor::new(self.field.clone(), source, target, beta)
    }

    /// Matrix of [M_s, beta] : Hom(M_s, B) -> Hom(M_s, B') in the
    /// canonical hom bases.
    pub fn presentation_matrix(&self, s: usize) -> Mat {
        let src = hom_labels(&self.source_blocks, s);
        let tgt = hom_labels(&self.target_blocks, s);
        let tgt_index: BTreeMap<(usize, usize), usize> = tgt
            .iter()
            .enumerate()
            .map(|(n, lab)| (*lab, n))
            .collect();
        let mut out = Mat::zeros(self.field.clone(), tgt.len(), src.len());
        for (col, &(j, c)) in src.iter().enumerate() {
            let h = JordanHom {
                s,
                r: self.source_blocks[j],
                p: Poly::t_power(self.field.clone(), c),
            };
            for (i, row) in self.beta.iter().enumerate() {
                let comp = row[j].compose(&h);
                for (e, coeff) in comp.p.coeffs().iter().enumerate() {
                    if self.field.is_zero(coeff) {
                        continue;
                    }
                    let idx = tgt_index[&(i, e)];
                    out.set(idx, col, coeff.clone());
                }
            }
        }
        out
    }

    /// Dimension of the value at M_s, computable for any s (used to check
    /// vanishing beyond the evaluation window).
    pub fn value_space_dim(&self, s: usize) -> usize {
        let phi = self.presentation_matrix(s);
        phi.rows() - phi.rank()
    }
}

/// Canonical basis labels (block index, exponent) of Hom(M_s, direct sum
/// of the given blocks).
fn hom_labels(blocks: &[usize], s: usize) -> Vec<(usize, usize)> {
    let mut out = vec![];
    for (j, &r) in blocks.iter().enumerate() {
        for c in r.saturating_sub(s)..r {
            out.push((j, c));
        }
    }
    out
}

/// Matrix of a precomposition operator between hom spaces, given by the
/// shift it applies to the exponent of each basis element.
fn precompose_shift(field: &Field, blocks: &[usize], s_from: usize, s_to: usize, shift: usize) -> Mat {
    let src = hom_labels(blocks, s_from);
    let tgt = hom_labels(blocks, s_to);
    let tgt_index: BTreeMap<(usize, usize), usize> = tgt
        .iter()
        .enumerate()
        .map(|(n, lab)| (*lab, n))
        .collect();
    let mut out = Mat::zeros(field.clone(), tgt.len(), src.len());
    for (col, &(j, c)) in src.iter().enumerate() {
        let e = c + shift;
        if e < blocks[j] {
            out.set(tgt_index[&(j, e)], col, field.one());
        }
    }
    out
}

/// Cokernel of Hom along the projection M_{r+1} ->> M_r. For r = 1 this
/// presents the atom at 1; for r >= 2 it is the standard example of a
/// functor outside the split subcategory.
pub fn projection_cokernel(field: &Field, r: usize) -> CoherentFunctor {
    assert!(r >= 1);
    CoherentFunctor::new(
        field.clone(),
        vec![r + 1],
        vec![r],
        vec![vec![JordanHom::new(r + 1, r, Poly::one(field.clone())).unwrap()]],
    )
    .expect("projections are epimorphisms")
}

/// The presentation of F_r: beta_r : M_{r-1} + M_{r+1} ->> M_r sending
/// (x, y) to t*x + y. For r = 1 the first summand is the zero module.
pub fn f_r(field: &Field, r: usize) -> CoherentFunctor {
    assert!(r >= 1);
    let first = if r == 1 {
        JordanHom::zero(field, 0, 1)
    } else {
        JordanHom::new(r - 1, r, Poly::t_power(field.clone(), 1)).unwrap()
    };
    let second = JordanHom::new(r + 1, r, Poly::one(field.clone())).unwrap();
    CoherentFunctor::new(
        field.clone(),
        vec![r - 1, r + 1],
        vec![r],
        vec![vec![first, second]],
    )
    .expect("beta_r is an epimorphism")
}

// ---- quotient machinery ----

/// Coordinates for a quotient of F^ambient by a subspace, via the reduced
/// echelon basis of the subspace: quotient coordinates are the non-pivot
/// coordinates after reduction.
#[derive(Debug, Clone)]
struct Quotient {
    field: Field,
    ambient: usize,
    pivots: Vec<usize>,
    nonpivots: Vec<usize>,
    basis: Vec<Vec<FieldElem>>,
}

impl Quotient {
    fn of_subspace(field: &Field, span: &Mat) -> Quotient {
        let ambient = span.rows();
        let (rref, pivots) = span.transpose().rref();
        let basis: Vec<Vec<FieldElem>> = (0..pivots.len()).map(|r| rref.row(r)).collect();
        let nonpivots = (0..ambient).filter(|i| !pivots.contains(i)).collect();
        Quotient {
            field: field.clone(),
            ambient,
            pivots,
            nonpivots,
            basis,
        }
    }

    fn dim(&self) -> usize {
        self.nonpivots.len()
    }

    fn project_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(self.pivots.iter()) {
            let c = w[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for i in 0..self.ambient {
                w[i] = f.sub(&w[i], &f.mul(&c, &b[i]));
            }
        }
        self.nonpivots.iter().map(|&i| w[i].clone()).collect()
    }

    fn lift_matrix(&self) -> Mat {
        let mut out = Mat::zeros(self.field.clone(), self.ambient, self.dim());
        for (k, &i) in self.nonpivots.iter().enumerate() {
            out.set(i, k, self.field.one());
        }
        out
    }

    /// Induced map on quotients for an ambient map that carries the
    /// subspace of `self` into the subspace of `target`.
    fn induced(&self, target: &Quotient, ambient_map: &Mat) -> Mat {
        debug_assert!(self.basis.iter().all(|b| {
            target
                .project_vec(&ambient_map.mul_vec(b))
                .iter()
                .all(|x| self.field.is_zero(x))
        }), "map must preserve the subspaces");
        let lifted = ambient_map.mul(&self.lift_matrix()).expect("shape");
        let cols = (0..lifted.cols())
            .map(|j| target.project_vec(&lifted.col(j)))
            .collect::<Vec<_>>();
        if cols.is_empty() {
            Mat::zeros(self.field.clone(), target.dim(), 0)
        } else {
            Mat::from_cols(self.field.clone(), cols)
        }
    }
}

// ---- evaluated functors ----

/// The values and structure maps of a coherent functor on M_1 ... M_s_max:
/// per level, the value space V_s with the action t_s, the map
/// u_s : V_s -> V_{s+1} induced by the projection M_{s+1} ->> M_s, and the
/// map d_s : V_{s+1} -> V_s induced by multiplication t : M_s -> M_{s+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorData {
    field: Field,
    dims: Vec<usize>,
    t_maps: Vec<Mat>,
    u_maps: Vec<Mat>,
    d_maps: Vec<Mat>,
}

impl FunctorData {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn s_max(&self) -> usize {
        self.dims.len()
    }

    /// dim V_s (zero beyond the window).
    pub fn dim_at(&self, s: usize) -> usize {
        if s >= 1 && s <= self.dims.len() {
            self.dims[s - 1]
        } else {
            0
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn t_map(&self, s: usize) -> &Mat {
        &self.t_maps[s - 1]
    }

    pub fn u_map(&self, s: usize) -> &Mat {
        &self.u_maps[s - 1]
    }

    pub fn d_map(&self, s: usize) -> &Mat {
        &self.d_maps[s - 1]
    }

    /// The functoriality relations: t_s is nilpotent with t_s^s = 0,
    /// d_s u_s = t_s, and u_s d_s = t_{s+1}.
    pub fn check_relations(&self) -> bool {
        for s in 1..=self.s_max() {
            let t = self.t_map(s);
            if !t.pow(s).map(|m| m.is_zero()).unwrap_or(false) {
                return false;
            }
            let du = self.d_map(s).mul(self.u_map(s)).expect("shape");
            if du != *t {
                return false;
            }
            if s < self.s_max() {
                let ud = self.u_map(s).mul(self.d_map(s)).expect("shape");
                if ud != *self.t_map(s + 1) {
                    return false;
                }
            }
        }
        true
    }
}

/// Evaluate the presentation: V_s = coker([M_s, B] -> [M_s, B']) for each
/// s up to the largest source block, with the induced structure maps.
/// Values vanish above that bound.
pub fn evaluate(functor: &CoherentFunctor) -> FunctorData {
    let field = functor.field().clone();
    let s_max = functor.source_blocks().iter().copied().max().unwrap_or(0);
    let quots: Vec<Quotient> = (1..=s_max)
        .map(|s| Quotient::of_subspace(&field, &functor.presentation_matrix(s)))
        .collect();
    let dims: Vec<usize> = quots.iter().map(|q| q.dim()).collect();
    let tb = functor.target_blocks();
    let mut t_maps = vec![];
    let mut u_maps = vec![];
    let mut d_maps = vec![];
    for s in 1..=s_max {
        let q = &quots[s - 1];
        t_maps.push(q.induced(q, &precompose_shift(&field, tb, s, s, 1)));
        if s < s_max {
            let qn = &quots[s];
            u_maps.push(q.induced(qn, &precompose_shift(&field, tb, s, s + 1, 0)));
            d_maps.push(qn.induced(q, &precompose_shift(&field, tb, s + 1, s, 1)));
        } else {
            u_maps.push(Mat::zeros(field.clone(), 0, dims[s - 1]));
            d_maps.push(Mat::zeros(field.clone(), dims[s - 1], 0));
        }
    }
    let data = FunctorData {
        field,
        dims,
        t_maps,
        u_maps,
        d_maps,
    };
    debug_assert!(data.check_relations());
    data
}

/// Total dimension, summed over all levels.
pub fn dim_functor(data: &FunctorData) -> usize {
    data.total_dim()
}

/// A finitely supported multiplicity vector: how many copies of the atom
/// at each block size.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NuVector {
    entries: BTreeMap<usize, u32>,
}

impl NuVector {
    pub fn from_pairs(pairs: &[(usize, u32)]) -> NuVector {
        let mut entries = BTreeMap::new();
        for (r, n) in pairs {
            if *n > 0 {
                *entries.entry(*r).or_insert(0) += n;
            }
        }
        NuVector { entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.entries.iter().map(|(r, n)| (*r, *n))
    }

    pub fn total(&self) -> u32 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Membership in the split subcategory: all structure maps u and d must
/// vanish; the multiplicity at r is then dim V_r. `None` means the functor
/// is not split (a result, not an error).
pub fn in_f_prime(data: &FunctorData) -> Option<NuVector> {
    let all_zero = (1..=data.s_max())
        .all(|s| data.u_map(s).is_zero() && data.d_map(s).is_zero());
    if !all_zero {
        return None;
    }
    Some(NuVector::from_pairs(
        &(1..=data.s_max())
            .filter(|s| data.dim_at(*s) > 0)
            .map(|s| (s, data.dim_at(s) as u32))
            .collect::<Vec<_>>(),
    ))
}

/// Find an embedded atom: the least r where u_r is not injective carries a
/// vector v with u_r v = 0, t_r v = 0 and d_{r-1} v = 0, whose line is a
/// subfunctor isomorphic to the atom at r. The vector is the first echelon
/// kernel vector, normalized by replacing v with t*v until t*v = 0, so the
/// operation is deterministic (the seed is accepted for interface
/// uniformity but not consumed).
pub fn find_mono(data: &FunctorData, _seed: u64) -> Option<(usize, Vec<FieldElem>)> {
    let field = data.field().clone();
    for s in 1..=data.s_max() {
        let kernel = data.u_map(s).kernel_basis();
        if kernel.cols() == 0 {
            continue;
        }
        let mut v = kernel.col(0);
        loop {
            let tv = data.t_map(s).mul_vec(&v);
            if tv.iter().all(|x| field.is_zero(x)) {
                break;
            }
            v = tv;
        }
        debug_assert!(data
            .u_map(s)
            .mul_vec(&v)
            .iter()
            .all(|x| field.is_zero(x)));
        if s > 1 {
            debug_assert!(data
                .d_map(s - 1)
                .mul_vec(&v)
                .iter()
                .all(|x| field.is_zero(x)));
        }
        return Some((s, v));
    }
    None
}

/// Quotient the evaluated functor by a subfunctor given as per-level
/// column spans (which must be closed under t, u, d).
pub fn quotient_functor(data: &FunctorData, spans: &[Mat]) -> FunctorData {
    assert_eq!(spans.len(), data.s_max());
    let field = data.field().clone();
    let quots: Vec<Quotient> = spans
        .iter()
        .map(|m| Quotient::of_subspace(&field, m))
        .collect();
    let dims: Vec<usize> = quots.iter().map(|q| q.dim()).collect();
    let mut t_maps = vec![];
    let mut u_maps = vec![];
    let mut d_maps = vec![];
    for s in 1..=data.s_max() {
        let q = &quots[s - 1];
        t_maps.push(q.induced(q, data.t_map(s)));
        if s < data.s_max() {
            let qn = &quots[s];
            u_maps.push(q.induced(qn, data.u_map(s)));
            d_maps.push(qn.induced(q, data.d_map(s)));
        } else {
            u_maps.push(Mat::zeros(field.clone(), 0, dims[s - 1]));
            d_maps.push(Mat::zeros(field.clone(), dims[s - 1], 0));
        }
    }
    FunctorData {
        field,
        dims,
        t_maps,
        u_maps,
        d_maps,
    }
}

/// Devissage: repeatedly split off an atom and quotient by it. Returns
/// the multiset of atom sizes; each step removes exactly one dimension,
/// and by the Jordan-Holder property the outcome does not depend on the
/// choices made along the way.
pub fn devissage_functor(data: &FunctorData, seed: u64) -> NuVector {
    let field = data.field().clone();
    let mut cur = data.clone();
    let mut counts: Vec<(usize, u32)> = vec![];
    while cur.total_dim() > 0 {
        let (r, v) = find_mono(&cur, seed).expect("nonzero functor contains an atom");
        counts.push((r, 1));
        let spans: Vec<Mat> = (1..=cur.s_max())
            .map(|s| {
                if s == r {
                    Mat::from_cols(field.clone(), vec![v.clone()])
                } else {
                    Mat::zeros(field.clone(), cur.dim_at(s), 0)
                }
            })
            .collect();
        let next = quotient_functor(&cur, &spans);
        debug_assert_eq!(next.total_dim() + 1, cur.total_dim());
        cur = next;
    }
    NuVector::from_pairs(&counts)
}

/// The equivalence out of the split subcategory: the tuple of value
/// dimensions. Errors if a structure map is nonvanishing.
pub fn phi(data: &FunctorData) -> Result<Vec<(usize, usize)>> {
    let nu = in_f_prime(data).ok_or(Error::NotInFPrime)?;
    Ok(nu.entries().map(|(r, n)| (r, n as usize)).collect())
}

/// Dimension of the space of natural transformations between two
/// evaluated functors: linear maps per level commuting with t, u and d.
/// This is the brute-force oracle used by the verification suites.
pub fn nat_trans_space_dim(a: &FunctorData, b: &FunctorData) -> usize {
    assert_eq!(a.field(), b.field());
    let field = a.field().clone();
    let s_max = a.s_max().max(b.s_max());
    // unknowns: for each level s, a dim_b(s) x dim_a(s) matrix
    let mut offsets = vec![0usize];
    for s in 1..=s_max {
        let prev = *offsets.last().unwrap();
        offsets.push(prev + a.dim_at(s) * b.dim_at(s));
    }
    let unknowns = *offsets.last().unwrap();
    let mut rows: Vec<Vec<FieldElem>> = vec![];
    let zero_mat = |r: usize, c: usize| Mat::zeros(field.clone(), r, c);
    let a_t = |s: usize| {
        if s <= a.s_max() {
            a.t_map(s).clone()
        } else {
            zero_mat(0, 0)
        }
    };
    let b_t = |s: usize| {
        if s <= b.s_max() {
            b.t_map(s).clone()
        } else {
            zero_mat(0, 0)
        }
    };
    // constraint rows for L_to * M_from = N_to * L_from, indexed by
    // (row of target level, column of source level)
    let push_commute = |s_from: usize,
                            s_to: usize,
                            m_a: &Mat,
                            m_b: &Mat,
                            rows: &mut Vec<Vec<FieldElem>>| {
        let (da_from, da_to) = (a.dim_at(s_from), a.dim_at(s_to));
        let (db_from, db_to) = (b.dim_at(s_from), b.dim_at(s_to));
        // lambda_to . m_a  = m_b . lambda_from
        for i in 0..db_to {
            for j in 0..da_from {
                let mut row = vec![field.zero(); unknowns];
                // sum_k lambda_to[i][k] * m_a[k][j]
                for k in 0..da_to {
                    let idx = offsets[s_to - 1] + i * da_to + k;
                    row[idx] = field.add(&row[idx], m_a.at(k, j));
                }
                // - sum_k m_b[i][k] * lambda_from[k][j]
                for k in 0..db_from {
                    let idx = offsets[s_from - 1] + k * da_from + j;
                    let v = field.sub(&row[idx], m_b.at(i, k));
                    row[idx] = v;
                }
                rows.push(row);
            }
        }
    };
    for s in 1..=s_max {
        push_commute(s, s, &a_t(s), &b_t(s), &mut rows);
        if s < s_max {
            let a_u = if s <= a.s_max() {
                a.u_map(s).clone()
            } else {
                zero_mat(a.dim_at(s + 1), a.dim_at(s))
            };
            let b_u = if s <= b.s_max() {
                b.u_map(s).clone()
            } else {
                zero_mat(b.dim_at(s + 1), b.dim_at(s))
            };
            push_commute(s, s + 1, &a_u, &b_u, &mut rows);
            let a_d = if s <= a.s_max() {
                a.d_map(s).clone()
            } else {
                zero_mat(a.dim_at(s), a.dim_at(s + 1))
            };
            let b_d = if s <= b.s_max() {
                b.d_map(s).clone()
            } else {
                zero_mat(b.dim_at(s), b.dim_at(s + 1))
            };
            push_commute(s + 1, s, &a_d, &b_d, &mut rows);
        }
    }
    if unknowns == 0 {
        return 0;
    }
    let system = if rows.is_empty() {
        Mat::zeros(field, 0, unknowns)
    } else {
        Mat::from_rows(field, rows)
    };
    unknowns - system.rank()
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

    use super::projection_cokernel as coker_projection;

    #[test]
    fn presentation_validation() {
        let f = f2();
        // identity presents the zero functor
        let id = CoherentFunctor::new(
            f.clone(),
            vec![2],
            vec![2],
            vec![vec![JordanHom::new(2, 2, Poly::one(f.clone())).unwrap()]],
        );
        assert!(id.is_ok());
        // beta_2 is an epimorphism
        assert_eq!(f_r(&f, 2).source_blocks(), &[1, 3]);
        // t : M_1 -> M_2 alone has image t*M_2, not all of M_2
        let not_epi = CoherentFunctor::new(
            f.clone(),
            vec![1],
            vec![2],
            vec![vec![JordanHom::new(1, 2, Poly::t_power(f.clone(), 1)).unwrap()]],
        );
        assert_eq!(not_epi.unwrap_err(), Error::NotEpimorphism);
        // shape mismatch
        let bad = CoherentFunctor::new(
            f.clone(),
            vec![2],
            vec![2],
            vec![vec![JordanHom::new(3, 2, Poly::one(f)).unwrap()]],
        );
        assert!(matches!(bad.unwrap_err(), Error::ShapeMismatch(_)));
    }

    #[test]
    fn first_atom_has_zero_summand() {
        let f = f2();
        let atom = f_r(&f, 1);
        assert_eq!(atom.source_blocks(), &[0, 2]);
        assert_eq!(atom.target_blocks(), &[1]);
        assert!(atom.beta()[0][0].p.is_zero());
        assert_eq!(evaluate(&atom).dim_at(1), 1);
    }

    #[test]
    fn atom_evaluation() {
        let f = f2();
        let data = evaluate(&f_r(&f, 2));
        assert_eq!(data.s_max(), 3);
        assert_eq!((data.dim_at(1), data.dim_at(2), data.dim_at(3)), (0, 1, 0));
        assert!(data.t_map(2).is_zero());
        assert!((1..=3).all(|s| data.u_map(s).is_zero() && data.d_map(s).is_zero()));
        assert_eq!(dim_functor(&data), 1);
    }

    #[test]
    fn zero_functor_evaluation() {
        let f = f2();
        let id = CoherentFunctor::new(
            f.clone(),
            vec![2],
            vec![2],
            vec![vec![JordanHom::new(2, 2, Poly::one(f)).unwrap()]],
        )
        .unwrap();
        let data = evaluate(&id);
        assert_eq!(data.total_dim(), 0);
    }

    #[test]
    fn coker_projection_evaluation() {
        // hand-computed: V_1 and V_2 one-dimensional, V_3 = 0, u_1 = 0 and
        // d_1 != 0
        let f = f2();
        let data = evaluate(&coker_projection(&f, 2));
        assert_eq!((data.dim_at(1), data.dim_at(2), data.dim_at(3)), (1, 1, 0));
        assert!(data.u_map(1).is_zero());
        assert!(!data.d_map(1).is_zero());
        assert_eq!(dim_functor(&data), 2);
    }

    #[test]
    fn atom_value_table() {
        for field in [f2(), f3()] {
            for r in 1..=4usize {
                let fr = f_r(&field, r);
                for s in 1..=6usize {
                    let expect = usize::from(r == s);
                    assert_eq!(
                        fr.value_space_dim(s),
                        expect,
                        "dim F_{r} M_{s} over {field}"
                    );
                }
            }
        }
    }

    #[test]
    fn values_vanish_beyond_source_bound() {
        let f = f3();
        let pres = f_r(&f, 3).direct_sum(&coker_projection(&f, 2)).unwrap();
        let bound = pres.source_blocks().iter().max().copied().unwrap();
        for s in bound + 1..=bound + 2 {
            assert_eq!(pres.value_space_dim(s), 0);
        }
    }

    #[test]
    fn membership_and_phi() {
        let f = f2();
        let nu = in_f_prime(&evaluate(&f_r(&f, 3))).unwrap();
        assert_eq!(nu, NuVector::from_pairs(&[(3, 1)]));

        assert!(in_f_prime(&evaluate(&coker_projection(&f, 2))).is_none());

        let zero = CoherentFunctor::new(
            f.clone(),
            vec![1],
            vec![1],
            vec![vec![JordanHom::new(1, 1, Poly::one(f.clone())).unwrap()]],
        )
        .unwrap();
        let nu = in_f_prime(&evaluate(&zero)).unwrap();
        assert!(nu.is_empty());

        // direct sums: F_2 + F_2 and F_1 + F_3
        let two = f_r(&f, 2).direct_sum(&f_r(&f, 2)).unwrap();
        assert_eq!(phi(&evaluate(&two)).unwrap(), vec![(2, 2)]);
        let mixed = f_r(&f, 1).direct_sum(&f_r(&f, 3)).unwrap();
        assert_eq!(phi(&evaluate(&mixed)).unwrap(), vec![(1, 1), (3, 1)]);
        assert_eq!(
            phi(&evaluate(&coker_projection(&f, 2))).unwrap_err(),
            Error::NotInFPrime
        );
    }

    #[test]
    fn mono_finder() {
        let f = f2();
        let data = evaluate(&f_r(&f, 2));
        let (r, v) = find_mono(&data, 0).unwrap();
        assert_eq!(r, 2);
        assert_eq!(v, vec![f.one()]);

        let data = evaluate(&coker_projection(&f, 2));
        let (r, v) = find_mono(&data, 0).unwrap();
        assert_eq!(r, 1);
        assert!(!v.iter().all(|x| f.is_zero(x)));

        let zero = CoherentFunctor::new(
            f.clone(),
            vec![1],
            vec![1],
            vec![vec![JordanHom::new(1, 1, Poly::one(f)).unwrap()]],
        )
        .unwrap();
        assert!(find_mono(&evaluate(&zero), 0).is_none());
    }

    #[test]
    fn devissage_examples() {
        let f = f2();
        assert_eq!(
            devissage_functor(&evaluate(&f_r(&f, 3)), 0),
            NuVector::from_pairs(&[(3, 1)])
        );
        // two steps: split off the atom at 1, the quotient is the atom at 2
        assert_eq!(
            devissage_functor(&evaluate(&coker_projection(&f, 2)), 0),
            NuVector::from_pairs(&[(1, 1), (2, 1)])
        );
        // the reduction M_2 ->> M_1 presents the atom at 1
        let pres = coker_projection(&f, 1);
        assert_eq!(
            devissage_functor(&evaluate(&pres), 0),
            NuVector::from_pairs(&[(1, 1)])
        );
    }

    #[test]
    fn devissage_is_objectwise_exact() {
        // the subfunctor line and its quotient have complementary
        // dimensions in every degree
        let f = f3();
        let data = evaluate(&coker_projection(&f, 3));
        let (r, v) = find_mono(&data, 0).unwrap();
        let spans: Vec<Mat> = (1..=data.s_max())
            .map(|s| {
                if s == r {
                    Mat::from_cols(f.clone(), vec![v.clone()])
                } else {
                    Mat::zeros(f.clone(), data.dim_at(s), 0)
                }
            })
            .collect();
        let quot = quotient_functor(&data, &spans);
        for s in 1..=data.s_max() {
            let sub_dim = usize::from(s == r);
            assert_eq!(sub_dim + quot.dim_at(s), data.dim_at(s));
        }
    }

    #[test]
    fn hom_spaces_between_atoms() {
        let f = f2();
        for r in 1..=3usize {
            for s in 1..=3usize {
                let a = evaluate(&f_r(&f, r));
                let b = evaluate(&f_r(&f, s));
                assert_eq!(
                    nat_trans_space_dim(&a, &b),
                    usize::from(r == s),
                    "Hom(F_{r}, F_{s})"
                );
            }
        }
    }

    #[test]
    fn relations_hold_on_mixed_presentations() {
        let f = f3();
        let pres = f_r(&f, 2)
            .direct_sum(&coker_projection(&f, 3))
            .unwrap()
            .direct_sum(&coker_projection(&f, 2))
            .unwrap();
        let data = evaluate(&pres);
        assert!(data.check_relations());
        // total dimension adds over direct sums
        assert_eq!(
            dim_functor(&data),
            1 + dim_functor(&evaluate(&coker_projection(&f, 3)))
                + dim_functor(&evaluate(&coker_projection(&f, 2)))
        );
    }
}
