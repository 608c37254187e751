//! Dense exact linear algebra: reduced row-echelon form, nullspaces and
//! pivot-canonical solutions, generic over the exact fields used in the crate.

use std::fmt;

use crate::scalar::{Gf, Scalar};

/// Field operations needed by the elimination routines.
pub trait FieldElem: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn fzero(&self) -> Self;
    fn fone(&self) -> Self;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn finv(&self) -> Self;
}

impl FieldElem for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn fzero(&self) -> Self {
        Scalar::zero()
    }
    fn fone(&self) -> Self {
        Scalar::one()
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Self {
        self.inv()
    }
}

impl FieldElem for Gf {
    fn is_zero(&self) -> bool {
        Gf::is_zero(self)
    }
    fn fzero(&self) -> Self {
        Gf::new(self.p, 0)
    }
    fn fone(&self) -> Self {
        Gf::new(self.p, 1)
    }
    fn fadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn fsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn fmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn fneg(&self) -> Self {
        self.neg()
    }
    fn finv(&self) -> Self {
        self.inv()
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

/// Result of reduced row-echelon elimination.
#[derive(Clone, Debug)]
pub struct Rref<T> {
    pub rref: Matrix<T>,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub nullspace: Vec<Vec<T>>,
}

impl<T: FieldElem> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, z: T) -> Matrix<T> {
        Matrix { rows, cols, data: vec![z; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize, z: &T) -> Matrix<T> {
        let r = rows.len();
        let mut m = Matrix::filled(r, cols, z.fzero());
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, x) in row.into_iter().enumerate() {
                m.data[i * cols + j] = x;
            }
        }
        m
    }

    pub fn identity_like(n: usize, z: &T) -> Matrix<T> {
        let mut m = Matrix::filled(n, n, z.fzero());
        for i in 0..n {
            m.data[i * n + i] = z.fone();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let z = self.zero_hint(o);
        let mut out = Matrix::filled(self.rows, o.cols, z.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].fadd(&a.fmul(b));
                }
            }
        }
        out
    }

    fn zero_hint(&self, o: &Matrix<T>) -> T {
        self.data
            .first()
            .or(o.data.first())
            .map(|x| x.fzero())
            .expect("zero hint needs a nonempty matrix")
    }

    pub fn add(&self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.fadd(b)).collect() }
    }

    pub fn sub(&self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in difference");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.fsub(b)).collect() }
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.fmul(c)).collect() }
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "shape mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = match v.first() {
                    Some(x) => x.fzero(),
                    None => return self.get(i, 0).fzero(),
                };
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.fadd(&a.fmul(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row-echelon form with rank, pivot columns and the canonical
    /// nullspace basis (one vector per free column, that column set to 1).
    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).finv();
            for j in c..m.cols {
                let x = m.get(r, j).fmul(&inv);
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let x = m.get(i, j).fsub(&f.fmul(m.get(r, j)));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        let mut nullspace = Vec::new();
        if m.cols > 0 {
            let z = m.data.first().map(|x| x.fzero());
            if let Some(z) = z {
                for f in (0..m.cols).filter(|c| !pivots.contains(c)) {
                    let mut v = vec![z.clone(); m.cols];
                    v[f] = z.fone();
                    for (ri, &pc) in pivots.iter().enumerate() {
                        v[pc] = m.get(ri, f).fneg();
                    }
                    nullspace.push(v);
                }
            }
        }
        Rref { rref: m, rank, pivots, nullspace }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// One solution of `self · x = b` with free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows, "shape mismatch in solve");
        let z = self.data.first().or(b.first())?.fzero();
        let mut aug = Matrix::filled(self.rows, self.cols + 1, z.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![z; self.cols];
        for (ri, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.rref.get(ri, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix<T>> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let z = self.data[0].fzero();
        let mut aug = Matrix::filled(n, 2 * n, z.clone());
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, z.fone());
        }
        let red = aug.rref();
        if red.pivots.iter().take(n).cloned().collect::<Vec<_>>() != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut out = Matrix::filled(n, n, z);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.rref.get(i, n + j).clone());
            }
        }
        Some(out)
    }
}

/// Canonical basis (nonzero RREF rows) of the span of `vectors` in dimension `dim`.
pub fn span_basis<T: FieldElem>(vectors: &[Vec<T>], dim: usize, z: &T) -> Vec<Vec<T>> {
    if vectors.is_empty() || dim == 0 {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec(), dim, z);
    let red = m.rref();
    (0..red.rank).map(|i| red.rref.row(i).to_vec()).collect()
}

/// Whether `v` lies in the span of the canonical basis `basis`.
pub fn in_span<T: FieldElem>(basis: &[Vec<T>], v: &[T], z: &T) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    span_basis(&rows, v.len(), z).len() == span_basis(basis, v.len(), z).len()
}

/// Quotient of `K^dim` by a subspace: coordinates on the non-pivot columns
/// of the subspace's RREF basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Complement {
    pub dim: usize,
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub keep: Vec<usize>,
}

impl Complement {
    pub fn new(sub: &[Vec<Scalar>], dim: usize) -> Complement {
        let rows = span_basis(sub, dim, &Scalar::zero());
        let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|c| !c.is_zero()).expect("nonzero row")).collect();
        let keep = (0..dim).filter(|k| !pivots.contains(k)).collect();
        Complement { dim, rows, pivots, keep }
    }

    /// Representative of `v` with zero pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(r) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        w
    }

    /// Quotient coordinates of `v`.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let w = self.reduce(v);
        self.keep.iter().map(|&k| w[k].clone()).collect()
    }

    /// Canonical representative of quotient coordinates.
    pub fn section(&self, c: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        for (x, &k) in c.iter().zip(&self.keep) {
            v[k] = x.clone();
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }
}

pub type QMatrix = Matrix<Scalar>;

impl Matrix<Scalar> {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        Matrix::filled(rows, cols, Scalar::zero())
    }

    pub fn identity(n: usize) -> QMatrix {
        Matrix::identity_like(n, &Scalar::zero())
    }

    pub fn from_ints(rows: &[&[i64]]) -> QMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect(),
            cols,
            &Scalar::zero(),
        )
    }

    /// `self · x = b` over ℚ(√d), with zero-sized systems handled.
    pub fn solve_q(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.rows == 0 {
            return Some(vec![Scalar::zero(); self.cols]);
        }
        if self.cols == 0 {
            return if b.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
        }
        self.solve(b)
    }

    /// Nullspace that also works for matrices with no rows.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        if self.rows == 0 {
            return (0..self.cols)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); self.cols];
                    v[i] = Scalar::one();
                    v
                })
                .collect();
        }
        self.rref().nullspace
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_full_rank() {
        let r = QMatrix::identity(3).rref();
        assert_eq!(r.rank, 3);
        assert!(r.nullspace.is_empty());
    }

    #[test]
    fn zero_matrix_kernel() {
        let r = QMatrix::zeros(2, 4).rref();
        assert_eq!(r.rank, 0);
        assert_eq!(r.nullspace.len(), 4);
    }

    #[test]
    fn proportional_rows() {
        let m = QMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.nullspace, vec![vec![Scalar::from_int(-2), Scalar::from_int(1)]]);
    }

    #[test]
    fn solves() {
        let i = QMatrix::identity(2);
        assert_eq!(i.solve(&[1.into(), 2.into()]), Some(vec![1.into(), 2.into()]));
        let m = QMatrix::from_ints(&[&[1, 1]]);
        assert_eq!(m.solve(&[3.into()]), Some(vec![3.into(), 0.into()]));
        let z = QMatrix::from_ints(&[&[0]]);
        assert_eq!(z.solve(&[1.into()]), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        assert!(QMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn span_and_membership() {
        let z = Scalar::zero();
        let v = |a: i64, b: i64, c: i64| vec![Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c)];
        let b = span_basis(&[v(1, 1, 0), v(2, 2, 0), v(0, 1, 1)], 3, &z);
        assert_eq!(b.len(), 2);
        assert!(in_span(&b, &v(1, 2, 1), &z));
        assert!(!in_span(&b, &v(0, 0, 1), &z));
    }
}
