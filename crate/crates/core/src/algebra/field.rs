//! The finite field F_q, q = p^e, and the [`Field`] abstraction shared by every
//! coefficient field in the crate (F_q itself, F_q(T), finite extensions of F_q).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard ceiling on q: elements are stored as one byte.
pub const MAX_Q_HARD: u64 = 256;

/// Size limits enforced at operation entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_q: u64,
    pub max_degree: u64,
    pub max_field_size: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_q: 64,
            max_degree: 200_000,
            max_field_size: 4096,
        }
    }
}

impl Limits {
    pub fn check_degree(&self, what: &'static str, degree: u128) -> Result<()> {
        if degree > self.max_degree as u128 {
            return Err(Error::bound(what, degree, self.max_degree));
        }
        Ok(())
    }

    pub fn check_field_size(&self, what: &'static str, size: u128) -> Result<()> {
        if size > self.max_field_size as u128 {
            return Err(Error::bound(what, size, self.max_field_size));
        }
        Ok(())
    }
}

/// An element of F_q, stored as the packed code `sum r_i p^i` of its
/// coordinates `r_i` over the prime field in the basis `1, u, ..., u^(e-1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct FqElem(pub(crate) u8);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn code(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u64,
    e: u32,
    q: u64,
    /// Monic irreducible over F_p of degree e, ascending coefficients.
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    limits: Limits,
}

/// The finite field F_q. Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct FieldContext(Arc<Inner>);

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p() == other.p() && self.e() == other.e())
    }
}

impl Eq for FieldContext {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds F_{p^e} with the default limits.
pub fn make_context(p: u64, e: u32) -> Result<FieldContext> {
    FieldContext::with_limits(p, e, Limits::default())
}

// Arithmetic in F_p[u] on plain coefficient vectors, used only to bootstrap
// the multiplication table of F_q.
fn fp_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u64) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate() {
            let idx = k - e + j;
            prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
        }
    }
    prod.truncate(e);
    prod.into_iter().map(|x| x as u32).collect()
}

fn digits(mut code: u64, base: u64, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % base) as u32);
        code /= base;
    }
    out
}

fn undigits(ds: &[u32], base: u64) -> u64 {
    ds.iter().rev().fold(0u64, |acc, &d| acc * base + d as u64)
}

impl FieldContext {
    pub fn with_limits(p: u64, e: u32, limits: Limits) -> Result<FieldContext> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::pre("extension degree e must be at least 1"));
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        let limit = limits.max_q.min(MAX_Q_HARD);
        if q > limit as u128 {
            return Err(Error::bound("q", q, limit));
        }
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            let prime = FieldContext::with_limits(p, 1, limits)?;
            let ring = super::poly::PolyRing::new(prime);
            let m = ring
                .first_monic_irreducible(e as usize)?
                .ok_or_else(|| Error::internal("no irreducible modulus found"))?;
            m.coeffs().iter().map(|c| c.code()).collect()
        };
        Ok(Self::from_modulus(p, e, modulus, limits))
    }

    fn from_modulus(p: u64, e: u32, modulus: Vec<u32>, limits: Limits) -> FieldContext {
        let q = p.pow(e);
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        let el = e as usize;
        let ds: Vec<Vec<u32>> = (0..q).map(|c| digits(c, p, el)).collect();
        for a in 0..qs {
            let na: Vec<u32> = ds[a].iter().map(|&x| ((p - x as u64) % p) as u32).collect();
            neg[a] = undigits(&na, p) as u8;
            for b in 0..qs {
                let s: Vec<u32> = ds[a]
                    .iter()
                    .zip(&ds[b])
                    .map(|(&x, &y)| ((x as u64 + y as u64) % p) as u32)
                    .collect();
                add[a * qs + b] = undigits(&s, p) as u8;
                let m = fp_mulmod(&ds[a], &ds[b], &modulus, p);
                mul[a * qs + b] = undigits(&m, p) as u8;
            }
        }
        for a in 1..qs {
            if let Some(b) = (1..qs).find(|&b| mul[a * qs + b] == 1) {
                inv[a] = b as u8;
            }
        }
        FieldContext(Arc::new(Inner {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            limits,
        }))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn limits(&self) -> &Limits {
        &self.0.limits
    }

    /// The defining polynomial of F_q over F_p, ascending coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_char_two(&self) -> bool {
        self.0.p == 2
    }

    /// Element with the given packed code; `None` when out of range.
    pub fn elem(&self, code: u64) -> Option<FqElem> {
        (code < self.q()).then_some(FqElem(code as u8))
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p() as i64) as u8)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q()).map(|c| FqElem(c as u8))
    }

    /// The class of `u` (generator of F_q over F_p); equals 0 when e = 1.
    pub fn generator(&self) -> FqElem {
        if self.e() == 1 {
            FqElem(0)
        } else {
            FqElem(self.p() as u8)
        }
    }

    pub fn coords(&self, a: FqElem) -> Vec<u32> {
        digits(a.0 as u64, self.p(), self.e() as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FqElem> {
        if coords.len() != self.e() as usize || coords.iter().any(|&c| c as u64 >= self.p()) {
            return Err(Error::pre(
                "coordinate vector does not describe an element of F_q",
            ));
        }
        Ok(FqElem(undigits(coords, self.p()) as u8))
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.0.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        FqElem(self.0.add[a.0 as usize * self.0.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.0.mul[a.0 as usize * self.0.q as usize + b.0 as usize])
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        (a.0 != 0).then(|| FqElem(self.0.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `dst[i] += c * src[i]`, the inner kernel of multiplication and division.
    #[inline]
    pub(crate) fn axpy(&self, dst: &mut [FqElem], c: FqElem, src: &[FqElem]) {
        if c.0 == 0 {
            return;
        }
        let qs = self.0.q as usize;
        if self.0.p == 2 {
            if c.0 == 1 {
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 ^= s.0;
                }
            } else {
                let row = &self.0.mul[c.0 as usize * qs..(c.0 as usize + 1) * qs];
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 ^= row[s.0 as usize];
                }
            }
            return;
        }
        let row = &self.0.mul[c.0 as usize * qs..(c.0 as usize + 1) * qs];
        let add = &self.0.add;
        for (d, s) in dst.iter_mut().zip(src) {
            d.0 = add[d.0 as usize * qs + row[s.0 as usize] as usize];
        }
    }
}

/// A commutative field of characteristic p containing F_q, with the q-power
/// Frobenius. Every coefficient field used by skew polynomials implements it.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn base(&self) -> &FieldContext;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_base(&self, c: FqElem) -> Self::Elem;
    /// `a^(q^k)`.
    fn frobenius(&self, a: &Self::Elem, k: u32) -> Self::Elem;
    /// Whether two field handles describe the same field.
    fn same_field(&self, other: &Self) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
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
}

impl Field for FieldContext {
    type Elem = FqElem;

    fn base(&self) -> &FieldContext {
        self
    }
    fn zero(&self) -> FqElem {
        FqElem::ZERO
    }
    fn one(&self) -> FqElem {
        FqElem::ONE
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FieldContext::add(self, *a, *b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        FieldContext::neg(self, *a)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FieldContext::mul(self, *a, *b)
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        FieldContext::inv(self, *a)
    }
    fn from_base(&self, c: FqElem) -> FqElem {
        c
    }
    fn frobenius(&self, a: &FqElem, _k: u32) -> FqElem {
        *a
    }
    fn same_field(&self, other: &Self) -> bool {
        self == other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f2 = make_context(2, 1).unwrap();
        assert_eq!(f2.q(), 2);
        assert_eq!(f2.modulus().len(), 2);
        let f3 = make_context(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.add(FqElem(2), FqElem(2)), FqElem(1));
        assert_eq!(f3.inv(FqElem(2)), Some(FqElem(2)));
    }

    #[test]
    fn f4_modulus_is_smallest_irreducible_quadratic() {
        // Monic quadratics over F_2 in order: u^2, u^2+1, u^2+u, u^2+u+1.
        // Only the last has no root in F_2.
        let f4 = make_context(2, 2).unwrap();
        assert_eq!(f4.q(), 4);
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let u = f4.generator();
        // u^2 = u + 1
        assert_eq!(f4.mul(u, u), f4.add(u, FqElem::ONE));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_context(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(make_context(2, 0).is_err());
        assert!(make_context(2, 7).unwrap_err().is_resource_bound());
    }

    #[test]
    fn same_parameters_give_same_modulus() {
        let a = make_context(3, 2).unwrap();
        let b = make_context(3, 2).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a, b);
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3)] {
            let f = make_context(p, e).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
                }
                // Every element of F_q satisfies a^q = a.
                assert_eq!(f.pow(a, f.q()), a);
                for &b in &els {
                    for &c in &els {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
