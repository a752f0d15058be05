//! Dense univariate polynomials over F_q: the ring A = F_q[T].
//!
//! Coefficients are stored in ascending order without trailing zeros. Most
//! polynomials arising here (brackets `T^(q^n) - T`, their products, powers
//! of T) are long but sparse, so the multiplication and division kernels
//! iterate over the nonzero terms of the sparser operand.

use std::cmp::Ordering;

use super::field::{FieldContext, FqElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<FqElem>) -> FqPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn zero() -> FqPoly {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn one() -> FqPoly {
        FqPoly::constant(FqElem::ONE)
    }

    pub fn constant(c: FqElem) -> FqPoly {
        FqPoly::new(vec![c])
    }

    /// `c * T^k`.
    pub fn monomial(c: FqElem, k: usize) -> FqPoly {
        if c.is_zero() {
            return FqPoly::zero();
        }
        let mut coeffs = vec![FqElem::ZERO; k + 1];
        coeffs[k] = c;
        FqPoly { coeffs }
    }

    /// `T^k`.
    pub fn t_pow(k: usize) -> FqPoly {
        FqPoly::monomial(FqElem::ONE, k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    /// Degree in T; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FqElem::ONE)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Order of vanishing at T = 0; `None` for zero.
    pub fn ord_t(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Number of nonzero coefficients.
    pub fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// `Some((c, k))` when the polynomial is the single term `c T^k`.
    pub fn as_monomial(&self) -> Option<(FqElem, usize)> {
        let k = self.ord_t()?;
        (k + 1 == self.coeffs.len()).then(|| (self.coeffs[k], k))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, FqElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: usize) -> FqPoly {
        if self.is_zero() {
            return FqPoly::zero();
        }
        let mut coeffs = vec![FqElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        FqPoly { coeffs }
    }

    /// Divide by `T^k`, which must divide the polynomial.
    pub fn unshift(&self, k: usize) -> FqPoly {
        debug_assert!(self.is_zero() || self.ord_t().unwrap() >= k);
        FqPoly::new(self.coeffs.get(k..).map(|s| s.to_vec()).unwrap_or_default())
    }

    /// Substitute `T -> T^m`; with coefficients in F_q this is the
    /// `log_q(m)`-fold Frobenius when m is a power of q.
    pub fn inflate(&self, m: usize) -> FqPoly {
        if self.is_zero() || m == 1 {
            return self.clone();
        }
        let mut coeffs = vec![FqElem::ZERO; self.degree().unwrap() * m + 1];
        for (i, c) in self.terms() {
            coeffs[i * m] = c;
        }
        FqPoly { coeffs }
    }

    /// Total order used for enumeration: by degree, then by the packed code
    /// `sum code(c_i) q^i` of the lower coefficients, i.e. comparing from
    /// the coefficient of `T^(d-1)` down to the constant term.
    pub fn enumeration_cmp(&self, other: &FqPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// The polynomial ring A = F_q[T].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    fq: FieldContext,
}

impl PolyRing {
    pub fn new(fq: FieldContext) -> PolyRing {
        PolyRing { fq }
    }

    pub fn fq(&self) -> &FieldContext {
        &self.fq
    }

    pub fn q(&self) -> u64 {
        self.fq.q()
    }

    /// The generator T.
    pub fn t(&self) -> FqPoly {
        FqPoly::t_pow(1)
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> FqPoly {
        FqPoly::new(coeffs.iter().map(|&c| self.fq.from_int(c)).collect())
    }

    pub fn add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() {
            (a, b)
        } else {
            (b, a)
        };
        let mut coeffs = long.coeffs.clone();
        for (d, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *d = self.fq.add(*d, s);
        }
        FqPoly::new(coeffs)
    }

    pub fn neg(&self, a: &FqPoly) -> FqPoly {
        if self.fq.is_char_two() {
            return a.clone();
        }
        FqPoly::new(a.coeffs.iter().map(|&c| self.fq.neg(c)).collect())
    }

    pub fn sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &FqPoly, c: FqElem) -> FqPoly {
        if c == FqElem::ONE {
            return a.clone();
        }
        FqPoly::new(a.coeffs.iter().map(|&x| self.fq.mul(x, c)).collect())
    }

    /// `a + c T^k b`, in place on `a`.
    pub fn add_scaled_shifted(&self, a: &mut FqPoly, c: FqElem, k: usize, b: &FqPoly) {
        if b.is_zero() || c.is_zero() {
            return;
        }
        let need = k + b.coeffs.len();
        if a.coeffs.len() < need {
            a.coeffs.resize(need, FqElem::ZERO);
        }
        self.fq.axpy(&mut a.coeffs[k..need], c, &b.coeffs);
        while a.coeffs.last().is_some_and(|c| c.is_zero()) {
            a.coeffs.pop();
        }
    }

    pub fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let (sparse, dense) = if a.nnz() <= b.nnz() { (a, b) } else { (b, a) };
        let mut out = vec![FqElem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, c) in sparse.terms() {
            self.fq
                .axpy(&mut out[i..i + dense.coeffs.len()], c, &dense.coeffs);
        }
        FqPoly::new(out)
    }

    pub fn pow(&self, a: &FqPoly, mut e: u64) -> FqPoly {
        let mut base = a.clone();
        let mut acc = FqPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^(q^k)`; exact because coefficients lie in F_q.
    pub fn frobenius(&self, a: &FqPoly, k: u32) -> FqPoly {
        a.inflate((self.q() as usize).pow(k))
    }

    pub fn make_monic(&self, a: &FqPoly) -> FqPoly {
        match a.leading() {
            None => FqPoly::zero(),
            Some(lc) => self.scale(a, self.fq.inv(lc).unwrap()),
        }
    }

    /// Division with remainder, `a = quotient * b + remainder`, deg r < deg b.
    pub fn divmod(&self, a: &FqPoly, b: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = a.degree() else {
            return Ok((FqPoly::zero(), FqPoly::zero()));
        };
        if da < db {
            return Ok((FqPoly::zero(), a.clone()));
        }
        let lc_inv = self.fq.inv(b.leading().unwrap()).unwrap();
        let mut rem = a.coeffs.clone();
        let mut quot = vec![FqElem::ZERO; da - db + 1];
        // Terms of b below its leading term, negated.
        let tail: Vec<(usize, FqElem)> = b
            .terms()
            .filter(|&(i, _)| i < db)
            .map(|(i, c)| (i, self.fq.neg(c)))
            .collect();
        let sparse = tail.len() * 4 < db;
        let neg_b: Vec<FqElem> = if sparse {
            Vec::new()
        } else {
            b.coeffs[..db].iter().map(|&c| self.fq.neg(c)).collect()
        };
        for k in (db..=da).rev() {
            let c = rem[k];
            if c.is_zero() {
                continue;
            }
            let f = self.fq.mul(c, lc_inv);
            quot[k - db] = f;
            rem[k] = FqElem::ZERO;
            let base = k - db;
            if sparse {
                for &(i, nc) in &tail {
                    rem[base + i] = self.fq.add(rem[base + i], self.fq.mul(f, nc));
                }
            } else {
                self.fq.axpy(&mut rem[base..k], f, &neg_b);
            }
        }
        rem.truncate(db);
        Ok((FqPoly::new(quot), FqPoly::new(rem)))
    }

    pub fn rem(&self, a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
        Ok(self.divmod(a, b)?.1)
    }

    /// `a / b`, failing with an internal error if b does not divide a.
    pub fn exact_div(&self, a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
        let (quot, rem) = self.divmod(a, b)?;
        if !rem.is_zero() {
            return Err(Error::internal("exact division left a nonzero remainder"));
        }
        Ok(quot)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() {
            return self.make_monic(b);
        }
        if b.is_zero() {
            return self.make_monic(a);
        }
        if a.is_constant() || b.is_constant() {
            return FqPoly::one();
        }
        // A pure power of T only shares powers of T.
        for (m, other) in [(a, b), (b, a)] {
            if let Some((_, k)) = m.as_monomial() {
                return FqPoly::t_pow(k.min(other.ord_t().unwrap()));
            }
        }
        // Common powers of T are cheap to split off first.
        let ta = a.ord_t().unwrap();
        let tb = b.ord_t().unwrap();
        let t = ta.min(tb);
        let mut x = a.unshift(ta);
        let mut y = b.unshift(tb);
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.make_monic(&x).shift(t)
    }

    /// Inverse of a modulo m, by the extended Euclidean algorithm.
    pub fn inv_mod(&self, a: &FqPoly, m: &FqPoly) -> Result<FqPoly> {
        let a = self.rem(a, m)?;
        let (mut r0, mut r1) = (m.clone(), a);
        let (mut s0, mut s1) = (FqPoly::zero(), FqPoly::one());
        while !r1.is_zero() {
            let (quot, r2) = self.divmod(&r0, &r1)?;
            let s2 = self.sub(&s0, &self.mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.degree() != Some(0) {
            return Err(Error::pre("element is not invertible modulo m"));
        }
        let c = self.fq.inv(r0.leading().unwrap()).unwrap();
        self.rem(&self.scale(&s0, c), m)
    }

    pub fn mulmod(&self, a: &FqPoly, b: &FqPoly, m: &FqPoly) -> Result<FqPoly> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &FqPoly, mut e: u64, m: &FqPoly) -> Result<FqPoly> {
        let mut base = self.rem(a, m)?;
        let mut acc = self.rem(&FqPoly::one(), m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m)?;
            }
        }
        Ok(acc)
    }

    /// Evaluate at an element of F_q.
    pub fn eval(&self, a: &FqPoly, x: FqElem) -> FqElem {
        a.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| self.fq.add(self.fq.mul(acc, x), c))
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree at most half the input degree.
    pub fn is_irreducible(&self, f: &FqPoly) -> Result<bool> {
        let d = match f.degree() {
            None | Some(0) => return Err(Error::ConstantInput),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        if f.coeff(0).is_zero() {
            return Ok(false);
        }
        let q = self.q();
        for k in 1..=d / 2 {
            let count = (q as u128).pow(k as u32);
            for code in 0..count {
                let g = self.monic_from_code(k, code as u64);
                if self.rem(f, &g)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The monic polynomial `T^d + sum_i digit_i(code) T^i`, where the
    /// base-q digits of `code` are read constant term first.
    pub fn monic_from_code(&self, d: usize, mut code: u64) -> FqPoly {
        let q = self.q();
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(FqElem((code % q) as u8));
            code /= q;
        }
        coeffs.push(FqElem::ONE);
        FqPoly::new(coeffs)
    }

    /// Number of monic polynomials of degree d, checked against the
    /// enumeration bound.
    fn monic_candidates(&self, d: usize) -> Result<u64> {
        let count = (self.q() as u128)
            .checked_pow(d as u32)
            .unwrap_or(u128::MAX);
        self.fq
            .limits()
            .check_field_size("q^d (enumeration size)", count)?;
        Ok(count as u64)
    }

    pub(crate) fn first_monic_irreducible(&self, d: usize) -> Result<Option<FqPoly>> {
        let count = (self.q() as u128).pow(d as u32) as u64;
        for code in 0..count {
            let f = self.monic_from_code(d, code);
            if self.is_irreducible(&f)? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    /// All monic irreducibles of degree d, ordered by [`FqPoly::enumeration_cmp`]
    /// (leading coefficients compared first, constant term last).
    pub fn monic_irreducibles(&self, d: usize) -> Result<Vec<FqPoly>> {
        if d == 0 {
            return Err(Error::pre("degree must be at least 1"));
        }
        let count = self.monic_candidates(d)?;
        let mut out = Vec::new();
        for code in 0..count {
            let f = self.monic_from_code(d, code);
            if self.is_irreducible(&f)? {
                out.push(f);
            }
        }
        Ok(out)
    }

    /// The smallest monic irreducible of degree d in enumeration order.
    pub fn canonical_irreducible(&self, d: usize) -> Result<FqPoly> {
        self.monic_candidates(d)?;
        self.first_monic_irreducible(d)?
            .ok_or_else(|| Error::internal(format!("no irreducible polynomial of degree {d}")))
    }

    fn q_pow(&self, n: u32) -> Result<u64> {
        let v = (self.q() as u128).checked_pow(n).unwrap_or(u128::MAX);
        self.fq.limits().check_degree("q^n", v)?;
        Ok(v as u64)
    }

    /// The bracket `[n] = T^(q^n) - T`.
    pub fn bracket(&self, n: u32) -> Result<FqPoly> {
        if n == 0 {
            return Err(Error::pre("bracket index must be positive"));
        }
        let qn = self.q_pow(n)? as usize;
        Ok(self.bracket_power(qn, 1))
    }

    /// `[n]^(q^i) = T^(q^(n+i)) - T^(q^i)`, given `q^(n+i)` and `q^i`.
    pub(crate) fn bracket_power(&self, high: usize, low: usize) -> FqPoly {
        let mut coeffs = vec![FqElem::ZERO; high + 1];
        coeffs[high] = FqElem::ONE;
        coeffs[low] = self.fq.neg(FqElem::ONE);
        FqPoly::new(coeffs)
    }

    /// `[n]^(q^i)`, checked against the degree bound.
    pub fn bracket_frobenius(&self, n: u32, i: u32) -> Result<FqPoly> {
        let high = self.q_pow(n + i)? as usize;
        let low = self.q_pow(i)? as usize;
        Ok(self.bracket_power(high, low))
    }

    /// `(D_n, L_n)` with `D_n = prod_{i=1..n} [i]^(q^(n-i))` and
    /// `L_n = prod_{i=1..n} [i]`; `D_0 = L_0 = 1`.
    pub fn products(&self, n: u32) -> Result<(FqPoly, FqPoly)> {
        if n == 0 {
            return Ok((FqPoly::one(), FqPoly::one()));
        }
        let qn = self.q_pow(n)? as u128;
        self.fq.limits().check_degree("deg D_n", qn * n as u128)?;
        let mut d = FqPoly::one();
        let mut l = FqPoly::one();
        for i in 1..=n {
            d = self.mul(&d, &self.bracket_frobenius(i, n - i)?);
            l = self.mul(&l, &self.bracket(i)?);
        }
        Ok((d, l))
    }
}
