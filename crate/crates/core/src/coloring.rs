//! p-colorings at n: the Alexander matrix evaluated at `t = n` over `F_p`.

use serde::Serialize;

use crate::diagram::{ensure_balanced, ArcIndex, Diagram, Sign};
use crate::error::{Error, Result};
use crate::invariants::{determinant_at, is_prime};
use crate::wirtinger::closed_form_matrix;

/// Arithmetic modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Self { p }
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    /// `n^e` for any integer exponent; `n` must be a unit.
    pub fn pow_signed(&self, n: u64, e: i64) -> u64 {
        let b = if e < 0 { self.inv(n) } else { n };
        self.pow(b, e.unsigned_abs())
    }
}

/// A dense matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub field: Fp,
    pub rows: Vec<Vec<u64>>,
    pub cols: usize,
}

impl FpMatrix {
    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let f = self.field;
        let mut a = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, pr);
            let inv = f.inv(a[r][c]);
            for x in a[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let factor = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = f.sub(*x, f.mul(factor, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == a.len() {
                break;
            }
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let (a, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.sub(0, a[r][fc]);
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ColoringOptions {
    /// Permit `p = 2`; the counting and divisibility results assume an odd prime.
    pub allow_two: bool,
}

fn check_params(n: i64, p: u64, opts: ColoringOptions) -> Result<Fp> {
    let odd_ok = p != 2 || opts.allow_two;
    if !is_prime(p) || !odd_ok {
        return Err(Error::NotPrime(p as i64));
    }
    if n.rem_euclid(p as i64) == 0 {
        return Err(Error::NotInvertible { p, n });
    }
    Ok(Fp::new(p))
}

/// `M(D, ω)` at `t = n` reduced mod `p`, with `t^-1` read as the inverse of `n`.
pub fn coloring_matrix(d: &Diagram, n: i64, p: u64, opts: ColoringOptions) -> Result<FpMatrix> {
    let f = check_params(n, p, opts)?;
    let m = closed_form_matrix::<i64>(d)?;
    let nn = f.reduce(n);
    let rows = m
        .matrix
        .to_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    x.terms().fold(0, |acc, (e, c)| {
                        f.add(acc, f.mul(f.reduce(*c), f.pow_signed(nn, e)))
                    })
                })
                .collect()
        })
        .collect();
    Ok(FpMatrix {
        field: f,
        rows,
        cols: m.matrix.ncols(),
    })
}

/// `N_p(G, ω, n)`.
pub fn nullity(d: &Diagram, n: i64, p: u64) -> Result<usize> {
    Ok(coloring_matrix(d, n, p, ColoringOptions::default())?.nullity())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub p: u64,
    pub n: i64,
    pub arcs: Vec<String>,
    pub values: Vec<u64>,
}

impl Coloring {
    pub fn value(&self, arc: &str) -> Option<u64> {
        self.arcs
            .iter()
            .position(|a| a == arc)
            .map(|i| self.values[i])
    }
}

/// Checks the crossing and vertex coloring relations directly from the diagram.
pub fn satisfies_relations(d: &Diagram, values: &[u64], n: i64, p: u64) -> Result<bool> {
    ensure_balanced(d)?;
    let f = check_params(n, p, ColoringOptions { allow_two: true })?;
    let idx = ArcIndex::new(d);
    let nn = f.reduce(n);
    let pw = |e: i64| f.pow_signed(nn, e);
    for c in &d.crossings {
        let (a, b, cc) = (
            idx.get(&c.under_in),
            idx.get(&c.over),
            idx.get(&c.under_out),
        );
        let (w1, w2) = (idx.arc_weight[b], idx.arc_weight[a]);
        let shear = f.mul(f.sub(1, pw(w2)), values[b]);
        // (1 - n^w2) γ(b) + n^w1 γ(c) - γ(a) for positive crossings; the
        // negative relation is the same with the roles of a and c swapped.
        let (fwd, back) = match c.sign {
            Sign::Positive => (values[cc], values[a]),
            Sign::Negative => (values[a], values[cc]),
        };
        let lhs = f.sub(f.add(shear, f.mul(pw(w1), fwd)), back);
        if lhs != 0 {
            return Ok(false);
        }
    }
    for v in &d.vertices {
        let mut running = 0i64;
        let mut sum = 0;
        for inc in &v.incident {
            let j = idx.get(&inc.arc);
            let w = idx.arc_weight[j];
            let eps = inc.sign.as_i64();
            let term = f.mul(pw(running + eps.min(0) * w), values[j]);
            sum = if eps > 0 {
                f.add(sum, term)
            } else {
                f.sub(sum, term)
            };
            running += eps * w;
        }
        if sum != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A basis of the coloring space.
pub fn coloring_basis(d: &Diagram, n: i64, p: u64, opts: ColoringOptions) -> Result<Vec<Coloring>> {
    let m = coloring_matrix(d, n, p, opts)?;
    let arcs = ArcIndex::new(d).arcs;
    Ok(m.nullspace()
        .into_iter()
        .map(|values| Coloring {
            p,
            n,
            arcs: arcs.clone(),
            values,
        })
        .collect())
}

pub const DEFAULT_COLORING_CAP: u64 = 1_000_000;

/// All `p^{N_p}` colorings, in lexicographic order of basis coefficients.
pub fn enumerate_colorings(
    d: &Diagram,
    n: i64,
    p: u64,
    cap: u64,
    opts: ColoringOptions,
) -> Result<Vec<Coloring>> {
    let basis = coloring_basis(d, n, p, opts)?;
    let dim = basis.len() as u32;
    let total = (p as u128).checked_pow(dim).filter(|&t| t <= cap as u128);
    let Some(total) = total else {
        return Err(Error::CapExceeded {
            what: "coloring enumeration",
            needed: format!("{p}^{dim}"),
            cap,
        });
    };
    let f = Fp::new(p);
    let arcs = ArcIndex::new(d).arcs;
    let mut out = Vec::with_capacity(total as usize);
    let mut coeffs = vec![0u64; basis.len()];
    for _ in 0..total {
        let mut values = vec![0u64; arcs.len()];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (v, x) in values.iter_mut().zip(&b.values) {
                *v = f.add(*v, f.mul(*c, *x));
            }
        }
        out.push(Coloring {
            p,
            n,
            arcs: arcs.clone(),
            values,
        });
        for c in coeffs.iter_mut().rev() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    Ok(out)
}

/// Both sides of the determinant criterion for extra colorings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityCheck {
    pub nullity: usize,
    /// `e - v + k`.
    pub threshold: i64,
    pub det_raw: String,
    pub extra_colorings: bool,
    pub p_divides: bool,
}

impl DivisibilityCheck {
    pub fn holds(&self) -> bool {
        self.extra_colorings == self.p_divides
    }
}

/// `N_p > e - v + k` against `p | det_k(n)` (raw value).
pub fn coloring_determinant_check(
    d: &Diagram,
    n: i64,
    p: u64,
    k: i64,
) -> Result<DivisibilityCheck> {
    let nullity = nullity(d, n, p)?;
    let det = determinant_at::<num_bigint::BigInt>(d, n, k)?;
    let threshold = d.edges.len() as i64 - d.vertices.len() as i64 + k;
    let p_divides = (&det.raw % num_bigint::BigInt::from(p)) == num_bigint::BigInt::from(0);
    Ok(DivisibilityCheck {
        nullity,
        threshold,
        det_raw: det.raw.to_string(),
        extra_colorings: nullity as i64 > threshold,
        p_divides,
    })
}

/// A nonzero vector in the span of `span` whose coordinates in `zeros` vanish.
pub fn zero_coordinate_witness(span: &[Vec<u64>], zeros: &[usize], p: u64) -> Option<Vec<u64>> {
    let f = Fp::new(p);
    let len = span.first()?.len();
    let basis = {
        let (r, piv) = FpMatrix {
            field: f,
            rows: span.to_vec(),
            cols: len,
        }
        .rref();
        r.into_iter().take(piv.len()).collect::<Vec<_>>()
    };
    if basis.is_empty() {
        return None;
    }
    // coefficients x with Σ x_i basis_i vanishing on `zeros`
    let system = FpMatrix {
        field: f,
        rows: zeros
            .iter()
            .map(|&j| basis.iter().map(|b| b[j]).collect())
            .collect(),
        cols: basis.len(),
    };
    let x = system.nullspace().into_iter().next()?;
    let mut v = vec![0; len];
    for (c, b) in x.iter().zip(&basis) {
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi = f.add(*vi, f.mul(*c, *bi));
        }
    }
    Some(v)
}
