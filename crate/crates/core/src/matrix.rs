//! Dense matrices over an exact field. Row-major storage, Gaussian
//! elimination for rank / kernel / inverse, all arithmetic exact.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Mat {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Mat {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        let z = field.zero();
        Mat {
            field,
            rows,
            cols,
            data: vec![z; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElem>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Build from columns; handy because bases are stored column-wise.
    pub fn from_cols(field: Field, cols: Vec<Vec<FieldElem>>) -> Mat {
        let c = cols.len();
        let r = cols.first().map(|col| col.len()).unwrap_or(0);
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = Mat::zeros(field, r, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            field.clone(),
            rows.iter()
                .map(|row| row.iter().map(|x| field.from_int(*x)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<FieldElem> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.at(i, j).clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(Mat::new(self.field.clone(), self.rows, self.cols, data))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Ok(Mat::new(self.field.clone(), self.rows, self.cols, data))
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Mat::new(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &FieldElem) -> Mat {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Mat::new(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = f.mul(a, other.at(k, j));
                    let sum = f.add(out.at(i, j), &prod);
                    out.set(i, j, sum);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.at(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Mat::identity(self.field.clone(), self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Direct sum: block diagonal of self and other.
    pub fn direct_sum(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Mat::zeros(
            self.field.clone(),
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.at(i, j).clone());
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|i| !f.is_zero(m.at(*i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = f.inv(m.at(r, c)).unwrap();
            for j in 0..m.cols {
                let v = f.mul(m.at(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.at(i, c)) {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in 0..m.cols {
                    let v = f.sub(m.at(i, j), &f.mul(&factor, m.at(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis as columns, one per free column of the RREF, in
    /// ascending free-column order (deterministic echelon form).
    pub fn kernel_basis(&self) -> Mat {
        let f = self.field.clone();
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut cols = vec![];
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rref.at(r, fc));
            }
            cols.push(v);
        }
        if cols.is_empty() {
            Mat::zeros(f, self.cols, 0)
        } else {
            Mat::from_cols(f, cols)
        }
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let f = self.field.clone();
        let mut aug = Mat::zeros(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().any(|p| *p >= n) {
            return Err(Error::NotAutomorphism);
        }
        let mut out = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, rref.at(i, n + j).clone());
            }
        }
        Ok(out)
    }

    pub fn det(&self) -> Result<FieldElem> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|i| !f.is_zero(m.at(*i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                det = f.neg(&det);
                for j in 0..n {
                    let a = m.at(c, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(c, j, b);
                    m.set(p, j, a);
                }
            }
            det = f.mul(&det, m.at(c, c));
            let inv = f.inv(m.at(c, c)).unwrap();
            for i in c + 1..n {
                if f.is_zero(m.at(i, c)) {
                    continue;
                }
                let factor = f.mul(m.at(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.at(i, j), &f.mul(&factor, m.at(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Solve self * x = b for each column of b; `None` if inconsistent.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows);
        let f = self.field.clone();
        let n = self.cols;
        let mut aug = Mat::zeros(f.clone(), self.rows, n + b.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            for j in 0..b.cols {
                aug.set(i, n + j, b.at(i, j).clone());
            }
        }
        let (rref, pivots) = aug.rref();
        // consistency: no pivot in the augmented block
        if pivots.iter().any(|p| *p >= n) {
            return None;
        }
        let mut x = Mat::zeros(f, n, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, rref.at(r, n + j).clone());
            }
        }
        Some(x)
    }

    /// Coordinates of the columns of `vecs` in the given column basis;
    /// panics if a vector lies outside the span (callers pass genuine
    /// invariant subspaces).
    pub fn coords_in_basis(basis: &Mat, vecs: &Mat) -> Mat {
        basis
            .solve(vecs)
            .expect("vectors must lie in the span of the basis")
    }

    /// Columns of `self` restricted to the invariant subspace spanned by
    /// the columns of `basis`: the matrix X with self * basis = basis * X.
    pub fn restrict_to_invariant(&self, basis: &Mat) -> Result<Mat> {
        let image = self.mul(basis)?;
        Ok(Mat::coords_in_basis(basis, &image))
    }

    /// Greedily extend `basis` (columns, possibly empty) by those columns
    /// of `candidates` that enlarge the span; returns the extended basis.
    pub fn extend_basis(basis: &Mat, candidates: &Mat) -> Mat {
        let f = basis.field().clone();
        let mut cols: Vec<Vec<FieldElem>> = (0..basis.cols).map(|j| basis.col(j)).collect();
        for j in 0..candidates.cols {
            let cand = candidates.col(j);
            let mut trial = cols.clone();
            trial.push(cand);
            let m = Mat::from_cols(f.clone(), trial);
            if m.rank() == cols.len() + 1 {
                cols.push(m.col(cols.len()));
            }
        }
        if cols.is_empty() {
            Mat::zeros(f, basis.rows, 0)
        } else {
            Mat::from_cols(f, cols)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn multiply_and_identity() {
        let f = f5();
        let a = Mat::from_ints(&f, &[&[1, 2], &[3, 4]]);
        let id = Mat::identity(f.clone(), 2);
        assert_eq!(a.mul(&id).unwrap(), a);
        let b = Mat::from_ints(&f, &[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, Mat::from_ints(&f, &[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn rank_and_kernel() {
        let f = f5();
        let a = Mat::from_ints(&f, &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let f = f5();
        let a = Mat::from_ints(&f, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Mat::identity(f.clone(), 2));
        let sing = Mat::from_ints(&f, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn determinant() {
        let q = Field::rationals();
        let a = Mat::from_ints(&q, &[&[2, 1], &[1, 1]]);
        assert_eq!(a.det().unwrap(), q.one());
        let sing = Mat::from_ints(&q, &[&[1, 2], &[2, 4]]);
        assert_eq!(sing.det().unwrap(), q.zero());
    }

    #[test]
    fn solve_and_restrict() {
        let f = f5();
        // invariant line of [[2,0],[0,3]] spanned by e1
        let a = Mat::from_ints(&f, &[&[2, 0], &[0, 3]]);
        let basis = Mat::from_cols(f.clone(), vec![vec![f.one(), f.zero()]]);
        let r = a.restrict_to_invariant(&basis).unwrap();
        assert_eq!(r, Mat::from_ints(&f, &[&[2]]));
    }

    #[test]
    fn zero_dimensional_edge_cases() {
        let f = f5();
        let a = Mat::zeros(f.clone(), 0, 0);
        assert!(a.is_square());
        assert_eq!(a.rank(), 0);
        assert_eq!(a.mul(&a).unwrap(), a);
        assert_eq!(a.inverse().unwrap(), a);
        assert_eq!(a.det().unwrap(), f.one());
    }
}
