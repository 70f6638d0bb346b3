//! One-variable Laurent polynomials over an integer coefficient ring.
//!
//! A polynomial is a finitely supported map from exponent to nonzero
//! coefficient. Exponents may be negative. Two polynomials that differ by a
//! unit `±t^r` generate the same ideal; [`LaurentPoly::normalize_unit`] picks
//! the representative whose lowest exponent is 0 and whose value at `t = 1` is
//! positive, falling back to a positive constant term when that value is 0.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{pow_u, Coeff};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: C, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(C::one(), e)
    }

    pub fn t() -> Self {
        Self::t_pow(1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    /// Ascending coefficients `c_0 + c_1 t + ...`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        Self::from_dense(0, coeffs)
    }

    pub fn from_i64_terms(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, C::from_i64_exact(c))))
    }

    pub fn add_term(&mut self, e: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True for `±t^r`, the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The representative `±t^r p` with lowest exponent 0 and positive value at 1
    /// (positive constant term if `p(1) = 0`).
    pub fn normalize_unit(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let shifted = self.shift(-lo);
        let at_one = shifted
            .terms()
            .fold(C::zero(), |acc, (_, c)| acc + c.clone());
        let negate = if at_one.is_zero() {
            shifted.coeff(0).is_negative()
        } else {
            at_one.is_negative()
        };
        if negate {
            -shifted
        } else {
            shifted
        }
    }

    /// `t ↦ t^g`.
    pub fn substitute(&self, g: i64) -> Result<Self> {
        if g == 0 {
            return Err(Error::ZeroArgument("substitution exponent"));
        }
        Ok(Self {
            terms: self.terms.iter().map(|(k, c)| (k * g, c.clone())).collect(),
        })
    }

    /// Exact rational value at `t = n`.
    pub fn eval_at(&self, n: &C) -> Result<Ratio<C>> {
        if n.is_zero() {
            return Err(Error::ZeroArgument("evaluation point"));
        }
        let mut acc = Ratio::zero();
        for (e, c) in self.terms() {
            let p = pow_u(n, e.unsigned_abs());
            let term = if e >= 0 {
                Ratio::from_integer(c.clone() * p)
            } else {
                Ratio::new(c.clone(), p)
            };
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Integer value at `t = n`; the polynomial must have no negative exponents.
    pub fn eval_int(&self, n: &C) -> Result<C> {
        if n.is_zero() {
            return Err(Error::ZeroArgument("evaluation point"));
        }
        if self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::NegativeExponent);
        }
        Ok(self.terms().fold(C::zero(), |acc, (e, c)| {
            acc + c.clone() * pow_u(n, e as u64)
        }))
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / d` when the quotient exists in the Laurent ring.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sa, a) = self.to_dense();
        let (sd, b) = d.to_dense();
        let q = dense::div_exact(&a, &b)?;
        Some(Self::from_dense(sa - sd, q))
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// A gcd in the Laurent ring, in normalized form. `gcd(0, q) = normalize_unit(q)`.
    ///
    /// Content and primitive part are handled separately; the primitive
    /// parts go through a subresultant remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_unit();
        }
        if other.is_zero() {
            return self.normalize_unit();
        }
        if self.is_unit() || other.is_unit() {
            return Self::one();
        }
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        Self::from_dense(0, dense::gcd(&a, &b)).normalize_unit()
    }

    /// `(exponent, coefficient)` pairs sorted by exponent.
    pub fn to_pairs(&self) -> Vec<(i64, C)> {
        self.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    /// Lowest exponent and ascending dense coefficients.
    pub(crate) fn to_dense(&self) -> (i64, Vec<C>) {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return (0, Vec::new());
        };
        let mut v = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms() {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub(crate) fn from_dense(shift: i64, coeffs: Vec<C>) -> Self {
        Self {
            terms: coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c))
                .collect(),
        }
    }

    /// Same polynomial over another coefficient ring.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e, f(c))))
    }
}

impl<C: Coeff> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for LaurentPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<'a, C: Coeff> Add<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Add for LaurentPoly<C> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<C: Coeff> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl<C: Coeff> SubAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c.clone());
        }
    }
}

impl<'a, C: Coeff> Sub<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coeff> Sub for LaurentPoly<C> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<'a, C: Coeff> Mul<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Mul for LaurentPoly<C> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn neg(self) -> LaurentPoly<C> {
        -self.clone()
    }
}

impl<C: Coeff> Sum for LaurentPoly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc + p)
    }
}

impl<C: Coeff> Product for LaurentPoly<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| acc * p)
    }
}

/// `2*t^2 - t + 3 - t^-1`: descending exponents, unit coefficients elided.
impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

/// Accepts the display form plus loose variants: `1-t`, `2t^{-1}`, `-t^(-2)`, `3 * t ^ 4`.
impl<C: Coeff> FromStr for LaurentPoly<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::Parse(format!("empty polynomial '{s}'")));
        }
        let bad = || Error::Parse(format!("malformed polynomial '{s}'"));
        let mut out = Self::zero();
        let mut i = 0;
        while i < chars.len() {
            let mut negative = false;
            if chars[i] == '+' || chars[i] == '-' {
                negative = chars[i] == '-';
                i += 1;
            } else if i != 0 {
                return Err(bad());
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let mut coeff = if digits.is_empty() {
                None
            } else {
                Some(C::from_str_radix(&digits, 10).map_err(|_| bad())?)
            };
            if i < chars.len() && chars[i] == '*' {
                if coeff.is_none() {
                    return Err(bad());
                }
                i += 1;
                if i >= chars.len() || chars[i] != 't' {
                    return Err(bad());
                }
            }
            let mut exp = 0i64;
            if i < chars.len() && chars[i] == 't' {
                i += 1;
                exp = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let close = match chars.get(i) {
                        Some('{') => Some('}'),
                        Some('(') => Some(')'),
                        _ => None,
                    };
                    if close.is_some() {
                        i += 1;
                    }
                    let estart = i;
                    if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let etext: String = chars[estart..i].iter().collect();
                    exp = etext.parse().map_err(|_| bad())?;
                    if let Some(c) = close {
                        if chars.get(i) != Some(&c) {
                            return Err(bad());
                        }
                        i += 1;
                    }
                }
                coeff.get_or_insert_with(C::one);
            }
            let mut c = coeff.ok_or_else(bad)?;
            if negative {
                c = -c;
            }
            out.add_term(exp, c);
        }
        Ok(out)
    }
}

/// Dense ascending-coefficient polynomial routines over an integral domain.
mod dense {
    use crate::scalar::{pow_u, Coeff};

    fn trim<C: Coeff>(v: &mut Vec<C>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    fn deg<C>(v: &[C]) -> usize {
        v.len() - 1
    }

    fn content<C: Coeff>(v: &[C]) -> C {
        v.iter().fold(C::zero(), |acc, c| acc.gcd(c))
    }

    fn div_scalar<C: Coeff>(v: &[C], s: &C) -> Vec<C> {
        v.iter().map(|c| c.clone() / s.clone()).collect()
    }

    fn primitive_part<C: Coeff>(v: &[C]) -> Vec<C> {
        let c = content(v);
        let mut out = div_scalar(v, &c);
        if out.last().is_some_and(|l| l.is_negative()) {
            out.iter_mut().for_each(|x| *x = -x.clone());
        }
        out
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    fn prem<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
        let mut r = a.to_vec();
        let db = deg(b);
        let lb = b[db].clone();
        let mut steps = deg(a) + 1 - db;
        while !r.is_empty() && r.len() > db {
            let dr = deg(&r);
            let lr = r[dr].clone();
            r.iter_mut().for_each(|x| *x = x.clone() * lb.clone());
            for (i, bc) in b.iter().enumerate() {
                let idx = dr - db + i;
                r[idx] = r[idx].clone() - lr.clone() * bc.clone();
            }
            trim(&mut r);
            steps -= 1;
        }
        if steps > 0 {
            let f = pow_u(&lb, steps as u64);
            r.iter_mut().for_each(|x| *x = x.clone() * f.clone());
        }
        r
    }

    pub(super) fn div_exact<C: Coeff>(a: &[C], b: &[C]) -> Option<Vec<C>> {
        if a.len() < b.len() {
            return None;
        }
        let mut r = a.to_vec();
        let db = deg(b);
        let lb = &b[db];
        let mut q = vec![C::zero(); a.len() - b.len() + 1];
        while !r.is_empty() && r.len() > db {
            let dr = deg(&r);
            let (quo, rem) = r[dr].div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.iter().enumerate() {
                let idx = dr - db + i;
                r[idx] = r[idx].clone() - quo.clone() * bc.clone();
            }
            q[dr - db] = quo;
            trim(&mut r);
        }
        if !r.is_empty() {
            return None;
        }
        trim(&mut q);
        Some(q)
    }

    /// Subresultant remainder sequence on primitive parts, times the content gcd.
    pub(super) fn gcd<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
        let d = content(a).gcd(&content(b));
        let (mut a, mut b) = if a.len() >= b.len() {
            (primitive_part(a), primitive_part(b))
        } else {
            (primitive_part(b), primitive_part(a))
        };
        let mut g = C::one();
        let mut h = C::one();
        loop {
            let delta = (deg(&a) - deg(&b)) as u64;
            let r = prem(&a, &b);
            if r.is_empty() {
                return primitive_part(&b)
                    .into_iter()
                    .map(|c| c * d.clone())
                    .collect();
            }
            if r.len() == 1 {
                return vec![d];
            }
            let divisor = g.clone() * pow_u(&h, delta);
            a = b;
            b = div_scalar(&r, &divisor);
            g = a[deg(&a)].clone();
            h = if delta == 0 {
                h
            } else {
                pow_u(&g, delta) / pow_u(&h, delta - 1)
            };
        }
    }
}
