//! The rational function field K = F_q(T) and its valuation at infinity.

use std::cmp::Ordering;
use std::fmt;

use super::field::{Field, FieldContext, FqElem};
use super::poly::{FqPoly, PolyRing};
use crate::error::{Error, Result};

/// A valuation value: an integer or +infinity (the valuation of zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// An element of K in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

impl RatFunc {
    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(k)` when the denominator is `T^k`.
    pub fn t_power_denominator(&self) -> Option<usize> {
        self.den.as_monomial().map(|(_, k)| k)
    }

    /// Infinity valuation `deg den - deg num`, with v(T) = -1.
    pub fn valuation(&self) -> Valuation {
        match self.num.degree() {
            None => Valuation::Infinite,
            Some(dn) => Valuation::Finite(self.den.degree().unwrap() as i64 - dn as i64),
        }
    }

    pub fn from_poly(p: FqPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: FqPoly::one(),
        }
    }
}

/// An element of K kept as an unreduced quotient over a known denominator.
///
/// The recursions for log/exp coefficients and period sums produce
/// numerators over denominators with known factorisations (products of
/// brackets and powers of T); carrying those instead of reducing at every
/// step avoids gcds of degree `~ n q^n`.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: FqPoly,
    pub den: FqPoly,
}

impl Fraction {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<Fraction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fraction { num, den })
    }

    pub fn from_poly(p: FqPoly) -> Fraction {
        Fraction {
            num: p,
            den: FqPoly::one(),
        }
    }

    /// Valuation at infinity; independent of the representative.
    pub fn valuation(&self) -> Valuation {
        match self.num.degree() {
            None => Valuation::Infinite,
            Some(dn) => Valuation::Finite(self.den.degree().unwrap() as i64 - dn as i64),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact equality as elements of K.
    pub fn equals(&self, other: &Fraction, ring: &PolyRing) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        ring.mul(&self.num, &other.den) == ring.mul(&other.num, &self.den)
    }
}

/// The field K = F_q(T).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFuncField {
    ring: PolyRing,
}

impl RatFuncField {
    pub fn new(fq: FieldContext) -> RatFuncField {
        RatFuncField {
            ring: PolyRing::new(fq),
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn q(&self) -> u64 {
        self.ring.q()
    }

    /// Reduce `num/den` to lowest terms with monic denominator.
    pub fn make(&self, num: FqPoly, den: FqPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: FqPoly::one(),
            });
        }
        let g = self.ring.gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                self.ring.exact_div(&num, &g)?,
                self.ring.exact_div(&den, &g)?,
            )
        };
        let lc_inv = self.ring.fq().inv(den.leading().unwrap()).unwrap();
        Ok(RatFunc {
            num: self.ring.scale(&num, lc_inv),
            den: self.ring.scale(&den, lc_inv),
        })
    }

    pub fn from_poly(&self, p: FqPoly) -> RatFunc {
        RatFunc::from_poly(p)
    }

    pub fn from_fraction(&self, f: &Fraction) -> Result<RatFunc> {
        self.make(f.num.clone(), f.den.clone())
    }

    /// `c T^k` for any integer k.
    pub fn t_pow(&self, k: i64) -> RatFunc {
        if k >= 0 {
            RatFunc::from_poly(FqPoly::t_pow(k as usize))
        } else {
            RatFunc {
                num: FqPoly::one(),
                den: FqPoly::t_pow((-k) as usize),
            }
        }
    }

    pub fn t(&self) -> RatFunc {
        self.t_pow(1)
    }

    pub fn from_int(&self, n: i64) -> RatFunc {
        RatFunc::from_poly(FqPoly::constant(self.ring.fq().from_int(n)))
    }

    pub fn to_fraction(&self, r: &RatFunc) -> Fraction {
        Fraction {
            num: r.num.clone(),
            den: r.den.clone(),
        }
    }

    pub fn valuation(&self, r: &RatFunc) -> Valuation {
        r.valuation()
    }

    /// `r^n` for any integer n.
    pub fn pow_signed(&self, r: &RatFunc, n: i64) -> Result<RatFunc> {
        if n >= 0 {
            Ok(self.pow(r, n as u64))
        } else {
            let inv = self.inv(r).ok_or(Error::DivisionByZero)?;
            Ok(self.pow(&inv, n.unsigned_abs()))
        }
    }
}

impl Field for RatFuncField {
    type Elem = RatFunc;

    fn base(&self) -> &FieldContext {
        self.ring.fq()
    }

    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(FqPoly::zero())
    }

    fn one(&self) -> RatFunc {
        RatFunc::from_poly(FqPoly::one())
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let r = &self.ring;
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let num = r.add(&a.num, &b.num);
            return self.make(num, a.den.clone()).unwrap();
        }
        // Henrici: with g = gcd(b1, b2), the sum reduces only by factors of g.
        let g = r.gcd(&a.den, &b.den);
        let a_co = r.exact_div(&a.den, &g).unwrap();
        let b_co = r.exact_div(&b.den, &g).unwrap();
        let num = r.add(&r.mul(&a.num, &b_co), &r.mul(&b.num, &a_co));
        let den = r.mul(&a_co, &b.den);
        if num.is_zero() {
            return self.zero();
        }
        if g.is_one() {
            return RatFunc { num, den };
        }
        let h = r.gcd(&num, &g);
        if h.is_one() {
            return RatFunc { num, den };
        }
        RatFunc {
            num: r.exact_div(&num, &h).unwrap(),
            den: r.exact_div(&den, &h).unwrap(),
        }
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let r = &self.ring;
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let g1 = r.gcd(&a.num, &b.den);
        let g2 = r.gcd(&b.num, &a.den);
        let an = if g1.is_one() {
            a.num.clone()
        } else {
            r.exact_div(&a.num, &g1).unwrap()
        };
        let bd = if g1.is_one() {
            b.den.clone()
        } else {
            r.exact_div(&b.den, &g1).unwrap()
        };
        let bn = if g2.is_one() {
            b.num.clone()
        } else {
            r.exact_div(&b.num, &g2).unwrap()
        };
        let ad = if g2.is_one() {
            a.den.clone()
        } else {
            r.exact_div(&a.den, &g2).unwrap()
        };
        RatFunc {
            num: r.mul(&an, &bn),
            den: r.mul(&ad, &bd),
        }
    }

    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        if a.is_zero() {
            return None;
        }
        let lc = a.num.leading().unwrap();
        let li = self.ring.fq().inv(lc).unwrap();
        Some(RatFunc {
            num: self.ring.scale(&a.den, li),
            den: self.ring.scale(&a.num, li),
        })
    }

    fn from_base(&self, c: FqElem) -> RatFunc {
        RatFunc::from_poly(FqPoly::constant(c))
    }

    fn frobenius(&self, a: &RatFunc, k: u32) -> RatFunc {
        // T -> T^(q^k) preserves coprimality and monicity.
        RatFunc {
            num: self.ring.frobenius(&a.num, k),
            den: self.ring.frobenius(&a.den, k),
        }
    }

    fn same_field(&self, other: &Self) -> bool {
        self == other
    }
}

/// Infinity valuation of an element of K.
pub fn infinity_valuation(r: &RatFunc) -> Valuation {
    r.valuation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::make_context;

    fn k(p: u64) -> RatFuncField {
        RatFuncField::new(make_context(p, 1).unwrap())
    }

    #[test]
    fn valuation_examples() {
        let k = k(2);
        assert_eq!(k.t().valuation(), Valuation::Finite(-1));
        assert_eq!(k.zero().valuation(), Valuation::Infinite);
        let r = k
            .make(FqPoly::one(), k.ring().from_ints(&[1, 0, 1]))
            .unwrap();
        assert_eq!(r.valuation(), Valuation::Finite(2));
    }

    #[test]
    fn canonical_form() {
        let k = k(3);
        let r = k.ring();
        // (2T^2 + 2T) / (2T) = T + 1
        let x = k
            .make(r.from_ints(&[0, 2, 2]), r.from_ints(&[0, 2]))
            .unwrap();
        assert_eq!(x, k.from_poly(r.from_ints(&[1, 1])));
        let y = k.make(r.from_ints(&[1]), r.from_ints(&[0, 2])).unwrap();
        assert!(y.den().is_monic());
        assert_eq!(
            k.make(FqPoly::one(), FqPoly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn arithmetic_roundtrips() {
        let k = k(3);
        let r = k.ring();
        let a = k
            .make(r.from_ints(&[1, 1]), r.from_ints(&[0, 0, 1]))
            .unwrap();
        let b = k
            .make(r.from_ints(&[2, 0, 1]), r.from_ints(&[1, 1, 1]))
            .unwrap();
        let s = k.add(&a, &b);
        assert_eq!(k.sub(&s, &b), a);
        let m = k.mul(&a, &b);
        assert_eq!(k.div(&m, &b).unwrap(), a);
        assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
        assert_eq!(k.frobenius(&a, 1), k.pow(&a, 3));
    }

    #[test]
    fn fraction_equality_and_valuation() {
        let k = k(2);
        let r = k.ring();
        let f1 = Fraction::new(r.from_ints(&[0, 1, 1]), r.from_ints(&[0, 0, 1])).unwrap();
        let f2 = Fraction::new(r.from_ints(&[1, 1]), r.t()).unwrap();
        assert!(f1.equals(&f2, r));
        assert_eq!(f1.valuation(), f2.valuation());
        assert_eq!(k.from_fraction(&f1).unwrap(), k.from_fraction(&f2).unwrap());
    }
}
