//! Small dense matrices over an arbitrary scalar.
//!
//! Everything the structure checks need lives here: exact Gaussian
//! elimination (determinant, rank, solve, inverse), leading principal minors
//! for Sylvester's positive-definiteness criterion, and congruence
//! diagonalization for signatures. Pivoting picks the entry of largest
//! absolute value, which is exact over the rationals and stable over `f64`.

use crate::report::{LieError, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>, // row-major
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).clone() + other.get(r, c).clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).clone() - other.get(r, c).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| -self.get(r, c).clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).clone() * s.clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        Self::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(r, k).clone() * other.get(k, c).clone();
            }
            acc
        })
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// Matrix applied to a coordinate vector: `e_j ↦ Σ_i M[i][j] e_i`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.cols {
                    acc = acc + self.get(r, c).clone() * v[c].clone();
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self);
        }
        acc
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        Self::from_fn(row_idx.len(), col_idx.len(), |r, c| {
            self.get(row_idx[r], col_idx[c]).clone()
        })
    }

    /// Block-diagonal composition of `self` and `other`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let (r1, c1) = (self.rows, self.cols);
        Self::from_fn(r1 + other.rows, c1 + other.cols, |r, c| {
            if r < r1 && c < c1 {
                self.get(r, c).clone()
            } else if r >= r1 && c >= c1 {
                other.get(r - r1, c - c1).clone()
            } else {
                T::zero()
            }
        })
    }

    /// Determinant by Gaussian elimination with largest-|pivot| selection.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for k in 0..n {
            let mut piv = k;
            for r in k + 1..n {
                if m.get(r, k).abs() > m.get(piv, k).abs() {
                    piv = r;
                }
            }
            if m.get(piv, k).is_zero() {
                return T::zero();
            }
            if piv != k {
                m.swap_rows(piv, k);
                det = -det;
            }
            let p = m.get(k, k).clone();
            det = det * p.clone();
            for r in k + 1..n {
                let f = m.get(r, k).clone() / p.clone();
                for c in k..n {
                    let v = m.get(r, c).clone() - f.clone() * m.get(k, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        row_echelon_basis(&self.row_vectors()).len()
    }

    /// Solve `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert!(self.is_square());
        assert_eq!(self.rows, b.len());
        let n = self.rows;
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let mut piv = k;
            for r in k + 1..n {
                if m.get(r, k).abs() > m.get(piv, k).abs() {
                    piv = r;
                }
            }
            if m.get(piv, k).is_zero() {
                return None;
            }
            m.swap_rows(piv, k);
            rhs.swap(piv, k);
            let p = m.get(k, k).clone();
            for r in k + 1..n {
                let f = m.get(r, k).clone() / p.clone();
                for c in k..n {
                    let v = m.get(r, c).clone() - f.clone() * m.get(k, c).clone();
                    m.set(r, c, v);
                }
                rhs[r] = rhs[r].clone() - f * rhs[k].clone();
            }
        }
        let mut x = vec![T::zero(); n];
        for k in (0..n).rev() {
            let mut acc = rhs[k].clone();
            for c in k + 1..n {
                acc = acc - m.get(k, c).clone() * x[c].clone();
            }
            x[k] = acc / m.get(k, k).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            cols.push(self.solve(&basis_vector(n, j))?);
        }
        Some(Self::from_fn(n, n, |r, c| cols[c][r].clone()))
    }

    pub fn leading_principal_minor(&self, k: usize) -> T {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx).det()
    }

    /// Sylvester's criterion: symmetric with all leading principal minors
    /// strictly positive. Exact over the rationals.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric()
            && (1..=self.rows).all(|k| self.leading_principal_minor(k).is_positive())
    }

    /// Signature (positive, negative, zero inertia) of a symmetric matrix by
    /// congruence diagonalization.
    pub fn signature(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "signature needs a symmetric matrix");
        let n = self.rows;
        let mut m = self.clone();
        let (mut pos, mut neg, mut zero) = (0, 0, 0);
        for k in 0..n {
            if m.get(k, k).is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !m.get(j, j).is_zero()) {
                    m.swap_rows(k, j);
                    m.swap_cols(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !m.get(k, j).is_zero()) {
                    // all remaining diagonal entries vanish: make one by a
                    // symmetric row+col addition (characteristic zero)
                    m.add_row(j, k);
                    m.add_col(j, k);
                }
            }
            let p = m.get(k, k).clone();
            if p.is_zero() {
                zero += 1;
                continue;
            }
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for r in k + 1..n {
                let f = m.get(r, k).clone() / p.clone();
                for c in k..n {
                    let v = m.get(r, c).clone() - f.clone() * m.get(k, c).clone();
                    m.set(r, c, v);
                }
                for c in k..n {
                    let v = m.get(c, r).clone() - f.clone() * m.get(c, k).clone();
                    m.set(c, r, v);
                }
            }
        }
        (pos, neg, zero)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn add_row(&mut self, src: usize, dst: usize) {
        for c in 0..self.cols {
            let v = self.get(dst, c).clone() + self.get(src, c).clone();
            self.set(dst, c, v);
        }
    }

    fn add_col(&mut self, src: usize, dst: usize) {
        for r in 0..self.rows {
            let v = self.get(r, dst).clone() + self.get(r, src).clone();
            self.set(r, dst, v);
        }
    }
}

/// Symmetric bilinear form carried by its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<T> {
    mat: Matrix<T>,
}

impl<T: Scalar> BilinearForm<T> {
    pub fn symmetric(mat: Matrix<T>) -> Result<Self> {
        if !mat.is_square() {
            return Err(LieError::Dimension {
                what: "bilinear form".into(),
                expected: mat.rows(),
                found: mat.cols(),
            });
        }
        if !mat.is_symmetric() {
            return Err(LieError::Structure { what: "bilinear form is not symmetric".into() });
        }
        Ok(Self { mat })
    }

    pub fn identity(n: usize) -> Self {
        Self { mat: Matrix::identity(n) }
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut m = Matrix::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        Self { mat: m }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.mat
    }

    pub fn eval(&self, x: &[T], y: &[T]) -> T {
        let mut acc = T::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc = acc + x[i].clone() * self.mat.get(i, j).clone() * y[j].clone();
            }
        }
        acc
    }

    pub fn is_positive_definite(&self) -> bool {
        self.mat.is_positive_definite()
    }

    pub fn signature(&self) -> (usize, usize, usize) {
        self.mat.signature()
    }

    /// Pullback under a linear map: `B'(x, y) = B(Px, Py)`.
    pub fn pullback(&self, p: &Matrix<T>) -> Result<Self> {
        Self::symmetric(p.transpose().matmul(&self.mat).matmul(p))
    }

    /// Block-diagonal sum of two forms.
    pub fn block_diag(&self, other: &Self) -> Self {
        Self { mat: self.mat.block_diag(&other.mat) }
    }
}

pub fn basis_vector<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

pub fn vec_add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_scale<T: Scalar>(s: &T, a: &[T]) -> Vec<T> {
    a.iter().map(|x| s.clone() * x.clone()).collect()
}

pub fn vec_is_zero<T: Scalar>(a: &[T]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Coordinate tuple like `(0, 1, -1/2)` for report output.
pub fn fmt_vector<T: Scalar>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Row space basis by Gaussian elimination; rows come out in echelon form.
pub fn row_echelon_basis<T: Scalar>(rows: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut basis: Vec<Vec<T>> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for b in &basis {
            let lead = b.iter().position(|x| !x.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let f = v[lead].clone() / b[lead].clone();
                v = vec_sub(&v, &vec_scale(&f, b));
            }
        }
        if !vec_is_zero(&v) {
            basis.push(v);
            basis.sort_by_key(|b| b.iter().position(|x| !x.is_zero()).unwrap());
        }
    }
    basis
}
