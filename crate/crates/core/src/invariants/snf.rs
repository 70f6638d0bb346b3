//! Smith normal form over the integers.

use crate::matrix::Matrix;
use crate::scalar::Coeff;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf<C> {
    /// Positive invariant factors `d₁ | d₂ | … | d_r`.
    pub factors: Vec<C>,
}

impl<C: Coeff> Snf<C> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `d₁ ⋯ d_j`, the gcd of all `j × j` minors. `j = 0` gives 1, `j > rank` gives 0.
    pub fn minor_gcd(&self, j: usize) -> C {
        if j > self.factors.len() {
            return C::zero();
        }
        self.factors[..j]
            .iter()
            .fold(C::one(), |acc, d| acc * d.clone())
    }
}

/// Invariant factors of `m`.
///
/// Each pass moves the smallest nonzero entry of the remaining block to the
/// pivot and reduces its row and column with nearest-integer quotients, which
/// keeps entries from growing the way plain Euclid steps do.
pub fn smith_normal_form<C: Coeff>(m: &Matrix<C>) -> Snf<C> {
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&a, t) else {
                return Snf { factors };
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = nearest_quotient(&a[(i, t)], &pivot);
                    add_row_multiple(&mut a, i, t, &-q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = nearest_quotient(&a[(t, j)], &pivot);
                    add_col_multiple(&mut a, j, t, &-q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide everything left over
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(a[(i, j)].clone() % pivot.clone()).is_zero());
            match bad {
                Some((i, _)) => add_row_multiple(&mut a, t, i, &C::one()),
                None => break,
            }
        }
        factors.push(a[(t, t)].abs());
    }
    Snf { factors }
}

/// `x / d` rounded to the nearest integer, so the remainder is at most `|d| / 2`.
fn nearest_quotient<C: Coeff>(x: &C, d: &C) -> C {
    let q = x.div_floor(d);
    let r = x.clone() - q.clone() * d.clone();
    let two = C::one() + C::one();
    if r.abs() * two > d.abs() {
        q + C::one()
    } else {
        q
    }
}

fn smallest_entry<C: Coeff>(a: &Matrix<C>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), C)> = None;
    for i in t..a.nrows() {
        for j in t..a.ncols() {
            let v = a[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                let done = v.is_one();
                best = Some(((i, j), v));
                if done {
                    return best.map(|(p, _)| p);
                }
            }
        }
    }
    best.map(|(p, _)| p)
}

/// `row[dst] += q · row[src]`.
fn add_row_multiple<C: Coeff>(a: &mut Matrix<C>, dst: usize, src: usize, q: &C) {
    for j in 0..a.ncols() {
        let v = a[(src, j)].clone() * q.clone();
        a[(dst, j)] = a[(dst, j)].clone() + v;
    }
}

/// `col[dst] += q · col[src]`.
fn add_col_multiple<C: Coeff>(a: &mut Matrix<C>, dst: usize, src: usize, q: &C) {
    for i in 0..a.nrows() {
        let v = a[(i, src)].clone() * q.clone();
        a[(i, dst)] = a[(i, dst)].clone() + v;
    }
}
