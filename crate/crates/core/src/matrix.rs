//! Dense matrices and fraction-free determinants over integral domains.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::laurent::LaurentPoly;
use crate::scalar::Coeff;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self[(r, c)].clone());
            }
        }
        Self {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Integral domain with exact division, enough for Bareiss elimination.
pub trait ExactDomain: Clone + PartialEq + Zero + One {
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `self / d`, which the caller guarantees to be exact.
    fn div_exact_ref(&self, d: &Self) -> Self;
}

impl<C: Coeff> ExactDomain for C {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }

    fn neg_ref(&self) -> Self {
        -self.clone()
    }

    fn div_exact_ref(&self, d: &Self) -> Self {
        debug_assert!((self.clone() % d.clone()).is_zero());
        self.clone() / d.clone()
    }
}

impl<C: Coeff> ExactDomain for LaurentPoly<C> {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn div_exact_ref(&self, d: &Self) -> Self {
        self.div_exact(d)
            .expect("Bareiss step divides exactly in an integral domain")
    }
}

/// Determinant of a square matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_det<T: ExactDomain>(m: &Matrix<T>) -> T {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return T::zero();
            };
            a.swap_rows(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(i, j)]
                    .mul_ref(&a[(k, k)])
                    .sub_ref(&a[(i, k)].mul_ref(&a[(k, j)]));
                a[(i, j)] = num.div_exact_ref(&prev);
            }
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    if negate {
        det.neg_ref()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    fn laplace(m: &Matrix<i64>) -> i64 {
        let n = m.nrows();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let rest: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let rows: Vec<usize> = (1..n).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[(0, j)] * laplace(&m.submatrix(&rows, &rest))
            })
            .sum()
    }

    #[test]
    fn bareiss_matches_laplace() {
        let m = Matrix::from_rows(vec![
            vec![0, 2, -1, 3],
            vec![4, 0, 5, -2],
            vec![1, 1, 0, 0],
            vec![-3, 2, 2, 1],
        ]);
        assert_eq!(bareiss_det(&m), laplace(&m));
        let singular = Matrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(bareiss_det(&singular), 0);
        assert_eq!(bareiss_det(&Matrix::<i64>::zeros(0, 0)), 1);
    }

    #[test]
    fn bareiss_over_laurent() {
        type P = LaurentPoly<BigInt>;
        let p = |s: &str| s.parse::<P>().unwrap();
        let m = Matrix::from_rows(vec![vec![p("t"), p("1-t")], vec![p("t^-1"), p("2")]]);
        // 2t - (1-t) t^-1 = 2t - t^-1 + 1
        assert_eq!(bareiss_det(&m), p("2t + 1 - t^-1"));
    }
}
