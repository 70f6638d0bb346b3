//! Elementary ideals of Alexander matrices: `det(M, k)`, the Alexander
//! polynomials `Δ_k`, and the integer determinants `det_k(n)`.

mod snf;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::{bareiss_det, Matrix};
use crate::scalar::Coeff;
use crate::wirtinger::{alexander_matrix, AlexMatrix};

pub use snf::{smith_normal_form, Snf};

#[derive(Clone, Debug)]
pub struct DetOptions {
    /// Stop enumerating minors once the running gcd is a unit.
    pub early_exit: bool,
    /// Pivot away unit entries (`±t^r`) before enumerating minors.
    pub unit_reduction: bool,
    /// Drop the last relation row when at least one row is redundant.
    pub drop_redundant_row: bool,
    /// Worker threads for minor enumeration; 0 uses every core.
    pub threads: usize,
    /// Largest number of minors evaluated before giving up.
    pub max_minors: u64,
}

impl Default for DetOptions {
    fn default() -> Self {
        Self {
            early_exit: true,
            unit_reduction: true,
            drop_redundant_row: false,
            threads: 1,
            max_minors: 10_000_000,
        }
    }
}

impl DetOptions {
    /// Full enumeration with no pruning or reduction.
    pub fn naive() -> Self {
        Self {
            early_exit: false,
            unit_reduction: false,
            ..Self::default()
        }
    }
}

type Rows<C> = Vec<Vec<LaurentPoly<C>>>;

/// gcd of all `k × k` minors, normalized. `k ≤ 0` gives 1.
pub fn det_poly<C: Coeff>(
    m: &Matrix<LaurentPoly<C>>,
    k: i64,
    opts: &DetOptions,
) -> Result<LaurentPoly<C>> {
    if k <= 0 {
        return Ok(LaurentPoly::one());
    }
    let mut k = k as usize;
    let mut a = m.to_rows();
    if opts.unit_reduction {
        k = unit_reduce(&mut a, k);
        if k == 0 {
            return Ok(LaurentPoly::one());
        }
    }
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if k > rows.min(cols) {
        return Ok(LaurentPoly::zero());
    }
    clear_row_exponents(&mut a);
    minor_gcd(&Matrix::from_rows(a), k, opts)
}

/// `Δ_k`: `det(M, c + v - k)` of the diagram's Alexander matrix.
pub fn alexander_poly<C: Coeff>(d: &Diagram, k: i64, opts: &DetOptions) -> Result<LaurentPoly<C>> {
    alexander_poly_of(&alexander_matrix(d)?, k, opts)
}

pub fn alexander_poly_of<C: Coeff>(
    am: &AlexMatrix<C>,
    k: i64,
    opts: &DetOptions,
) -> Result<LaurentPoly<C>> {
    let size = am.relation_count() as i64 - k;
    if opts.drop_redundant_row && k >= 1 && am.matrix.nrows() > 0 {
        let keep: Vec<usize> = (0..am.matrix.nrows() - 1).collect();
        let all: Vec<usize> = (0..am.matrix.ncols()).collect();
        return det_poly(&am.matrix.submatrix(&keep, &all), size, opts);
    }
    det_poly(&am.matrix, size, opts)
}

/// Multiply each row by the power of `t` that makes its lowest exponent 0.
pub fn clear_row_exponents<C: Coeff>(rows: &mut Rows<C>) {
    for row in rows.iter_mut() {
        let lo = row.iter().filter_map(LaurentPoly::min_exp).min();
        if let Some(lo) = lo {
            for x in row.iter_mut() {
                *x = x.shift(-lo);
            }
        }
    }
}

/// Repeatedly pivots on unit entries. Each pivot lowers the minor size by
/// one: after clearing its row and column the matrix is block diagonal with
/// a unit block, and `det(u ⊕ N, k) = det(N, k - 1)`. Zero rows and columns
/// are discarded along the way. Returns the remaining minor size.
fn unit_reduce<C: Coeff>(a: &mut Rows<C>, mut k: usize) -> usize {
    while k > 0 {
        a.retain(|row| row.iter().any(|x| !x.is_zero()));
        let cols = a.first().map_or(0, Vec::len);
        let live: Vec<usize> = (0..cols)
            .filter(|&j| a.iter().any(|row| !row[j].is_zero()))
            .collect();
        if live.len() < cols {
            for row in a.iter_mut() {
                *row = live.iter().map(|&j| row[j].clone()).collect();
            }
        }
        let Some((pi, pj)) = best_unit_pivot(a) else {
            break;
        };
        let pivot_row = a.remove(pi);
        let inv = unit_inverse(&pivot_row[pj]);
        for row in a.iter_mut() {
            if row[pj].is_zero() {
                continue;
            }
            let f = &row[pj] * &inv;
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        for row in a.iter_mut() {
            row.remove(pj);
        }
        k -= 1;
    }
    k
}

/// The unit entry with least fill-in (Markowitz count).
fn best_unit_pivot<C: Coeff>(a: &Rows<C>) -> Option<(usize, usize)> {
    let cols = a.first().map_or(0, Vec::len);
    let row_nz: Vec<usize> = a
        .iter()
        .map(|r| r.iter().filter(|x| !x.is_zero()).count())
        .collect();
    let col_nz: Vec<usize> = (0..cols)
        .map(|j| a.iter().filter(|r| !r[j].is_zero()).count())
        .collect();
    let mut best = None;
    let mut best_cost = usize::MAX;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.is_unit() {
                let cost = (row_nz[i] - 1) * (col_nz[j] - 1);
                if cost < best_cost {
                    best_cost = cost;
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

fn unit_inverse<C: Coeff>(u: &LaurentPoly<C>) -> LaurentPoly<C> {
    let (e, c) = u.terms().next().expect("unit is nonzero");
    LaurentPoly::monomial(c.clone(), -e)
}

fn minor_gcd<C: Coeff>(
    a: &Matrix<LaurentPoly<C>>,
    k: usize,
    opts: &DetOptions,
) -> Result<LaurentPoly<C>> {
    let rows = a.nrows();
    let evaluated = AtomicU64::new(0);
    let done = AtomicBool::new(false);
    let fold = |mut acc: LaurentPoly<C>, cs: Vec<usize>| -> Result<LaurentPoly<C>> {
        for rs in (0..rows).combinations(k) {
            if done.load(Ordering::Relaxed) {
                break;
            }
            let n = evaluated.fetch_add(1, Ordering::Relaxed) + 1;
            if n > opts.max_minors {
                return Err(Error::CapExceeded {
                    what: "minor enumeration",
                    needed: format!("more than {} minors", opts.max_minors),
                    cap: opts.max_minors,
                });
            }
            let det = bareiss_det(&a.submatrix(&rs, &cs));
            if det.is_zero() {
                continue;
            }
            acc = acc.gcd(&det);
            if opts.early_exit && acc.is_one() {
                done.store(true, Ordering::Relaxed);
                break;
            }
        }
        Ok(acc)
    };
    let columns = (0..a.ncols()).combinations(k);
    if opts.threads == 1 {
        let mut acc = LaurentPoly::zero();
        for cs in columns {
            if done.load(Ordering::Relaxed) {
                break;
            }
            acc = fold(acc, cs)?;
        }
        return Ok(acc);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    pool.install(|| {
        columns
            .par_bridge()
            .try_fold(LaurentPoly::zero, fold)
            .try_reduce(LaurentPoly::zero, |x, y| Ok(x.gcd(&y)))
    })
}

/// Substitute `t = n` after clearing negative exponents row by row.
pub fn evaluate_matrix<C: Coeff>(m: &Matrix<LaurentPoly<C>>, n: &C) -> Result<Matrix<C>> {
    let mut rows = m.to_rows();
    clear_row_exponents(&mut rows);
    let vals = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.eval_int(n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(vals))
}

/// `det_k(n)`, with its raw gcd-of-minors value before stripping powers of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetAt<C> {
    pub value: C,
    pub raw: C,
    /// False when `|n|` is composite: the value then depends on the diagram.
    pub invariant: bool,
}

pub fn determinant_at<C: Coeff>(d: &Diagram, n: i64, k: i64) -> Result<DetAt<C>> {
    determinant_at_of(&alexander_matrix(d)?, n, k)
}

pub fn determinant_at_of<C: Coeff>(am: &AlexMatrix<C>, n: i64, k: i64) -> Result<DetAt<C>> {
    if n == 0 {
        return Err(Error::ZeroArgument("n"));
    }
    let size = am.relation_count() as i64 - k;
    let raw = if size <= 0 {
        C::one()
    } else {
        let ints = evaluate_matrix(&am.matrix, &C::from_i64_exact(n))?;
        smith_normal_form(&ints).minor_gcd(size as usize)
    };
    let abs_n = n.unsigned_abs();
    let (value, invariant) = if abs_n == 1 {
        (raw.clone(), true)
    } else if is_prime(abs_n) {
        (strip_factor(&raw, abs_n), true)
    } else {
        (raw.clone(), false)
    };
    Ok(DetAt {
        value,
        raw,
        invariant,
    })
}

fn strip_factor<C: Coeff>(x: &C, p: u64) -> C {
    let p = C::from_u64(p).expect("prime fits the coefficient type");
    let mut v = x.abs();
    if v.is_zero() {
        return v;
    }
    while (v.clone() % p.clone()).is_zero() {
        v = v / p.clone();
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
