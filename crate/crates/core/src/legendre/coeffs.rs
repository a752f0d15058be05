//! The normalized period coefficients b_n (in D = Delta/T^q), the
//! coefficients a_n, and the polynomials p_n(x).

use serde::{Deserialize, Serialize};

use super::index::{bounded_weight, IndexSet};
use crate::algebra::field::Field;
use crate::algebra::poly::FqPoly;
use crate::algebra::ratfunc::{RatFunc, RatFuncField};
use crate::algebra::series::SeriesPoly;
use crate::algebra::text::poly_to_string;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Recursive,
    Closed,
}

fn check_size(k: &RatFuncField, n: u32) -> Result<()> {
    if n >= 64 {
        return Err(Error::bound("n", n as u128, 63u128));
    }
    bounded_weight(IndexSet::range(n), k.base(), "series degree (q^n-1)/(q-1)")?;
    Ok(())
}

/// `T^(1 - s) - 1`.
fn shifted_bracket_ratio(k: &RatFuncField, s: u64) -> RatFunc {
    k.sub(&k.t_pow(1 - s as i64), &k.one())
}

/// `sum_{S in N(n)} sign(S) var^w(S) / m(S)`.
fn subset_sum(
    k: &RatFuncField,
    n: u32,
    var: &str,
    sign: impl Fn(IndexSet) -> bool,
) -> Result<SeriesPoly> {
    check_size(k, n)?;
    let q = k.q();
    let mut terms = Vec::with_capacity(1 << n);
    for s in IndexSet::subsets(n) {
        let w = s.weight(q).unwrap() as u64;
        let c = k.t_pow(-(s.monomial_degree(q).unwrap() as i64));
        terms.push((w, if sign(s) { k.neg(&c) } else { c }));
    }
    let out = SeriesPoly::from_terms(var, terms);
    if out.num_terms() != 1 << n {
        return Err(Error::internal("subset weights collided"));
    }
    Ok(out)
}

/// `b_n` as a polynomial in D.
pub fn bn(k: &RatFuncField, n: u32, mode: Mode) -> Result<SeriesPoly> {
    match mode {
        Mode::Closed => subset_sum(k, n, "D", |_| false),
        Mode::Recursive => {
            check_size(k, n)?;
            let q = k.q();
            let mut prev = SeriesPoly::zero("D");
            let mut cur = SeriesPoly::constant("D", k.one());
            for i in 1..=n {
                let s = q.pow(i - 1);
                let next = cur
                    .add(k, &cur.shift(s))
                    .add(k, &prev.shift(s).scale(k, &shifted_bracket_ratio(k, s)));
                prev = std::mem::replace(&mut cur, next);
            }
            Ok(cur)
        }
    }
}

/// `p_n(x)`, with `p_-1 = 0` represented by `n = -1`.
pub fn pn(k: &RatFuncField, n: i32, mode: Mode) -> Result<SeriesPoly> {
    if n < -1 {
        return Err(Error::pre("p_n is defined for n >= -1"));
    }
    if n == -1 {
        return Ok(SeriesPoly::zero("x"));
    }
    let n = n as u32;
    let out = match mode {
        Mode::Closed => subset_sum(k, n, "x", |s| (n - s.len()) % 2 == 1)?,
        Mode::Recursive => {
            check_size(k, n)?;
            let q = k.q();
            let mut prev = SeriesPoly::zero("x");
            let mut cur = SeriesPoly::constant("x", k.one());
            for i in 1..=n {
                let s = q.pow(i - 1);
                let one_minus = k.neg(&shifted_bracket_ratio(k, s));
                let next = cur
                    .shift(s)
                    .sub(k, &cur)
                    .add(k, &prev.shift(s).scale(k, &one_minus));
                prev = std::mem::replace(&mut cur, next);
            }
            cur
        }
    };
    if let Some((e, _)) = out.terms().find(|(_, c)| c.t_power_denominator().is_none()) {
        return Err(Error::internal(format!(
            "coefficient of x^{e} has a denominator other than a power of T"
        )));
    }
    Ok(out)
}

/// `a_n = T^(1 + q + ... + q^n) / L_n * b_n`, kept as scalar times a
/// polynomial in D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodCoefficient {
    pub scalar: RatFunc,
    pub series: SeriesPoly,
}

impl PeriodCoefficient {
    /// Value at `D = Delta / T^q`.
    pub fn specialize(&self, k: &RatFuncField, delta: &RatFunc) -> RatFunc {
        let d = k.mul(delta, &k.t_pow(-(k.q() as i64)));
        k.mul(&self.scalar, &self.series.substitute(k, &d))
    }
}

pub fn an(k: &RatFuncField, n: u32) -> Result<PeriodCoefficient> {
    let series = bn(k, n, Mode::Closed)?;
    let exp = bounded_weight(IndexSet::range(n + 1), k.base(), "1 + q + ... + q^n")?;
    let (_, l) = k.ring().products(n)?;
    let scalar = k.make(FqPoly::t_pow(exp as usize), l)?;
    Ok(PeriodCoefficient { scalar, series })
}

/// Whether `p_n(-Delta/T^q) = 0` in A/p, for p of degree n.
pub fn legendre_ss_by_pn(k: &RatFuncField, delta: &FqPoly, p: &FqPoly) -> Result<bool> {
    let n = p.degree().ok_or(Error::ConstantInput)?;
    let pn = pn(k, n as i32, Mode::Closed)?;
    legendre_ss_with(k, &pn, delta, p)
}

/// As [`legendre_ss_by_pn`] with `p_n` supplied by the caller.
pub fn legendre_ss_with(
    k: &RatFuncField,
    pn: &SeriesPoly,
    delta: &FqPoly,
    p: &FqPoly,
) -> Result<bool> {
    let r = k.ring();
    let p = r.make_monic(p);
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantInput);
    }
    if p == r.t() {
        return Err(Error::pre(
            "the criterion needs T invertible modulo p (p != T)",
        ));
    }
    let delta = r.rem(delta, &p)?;
    if delta.is_zero() {
        return Err(Error::BadReduction {
            prime: poly_to_string(k.base(), &p),
        });
    }
    let t_inv = r.inv_mod(&r.t(), &p)?;
    let x0 = r.neg(&r.mulmod(&delta, &r.powmod(&t_inv, k.q(), &p)?, &p)?);
    let mut acc = FqPoly::zero();
    for (e, c) in pn.terms() {
        let s = c
            .t_power_denominator()
            .ok_or_else(|| Error::pre("p_n coefficients must have T-power denominators"))?;
        let coeff = r.mulmod(c.num(), &r.powmod(&t_inv, s as u64, &p)?, &p)?;
        acc = r.add(&acc, &r.mulmod(&coeff, &r.powmod(&x0, e, &p)?, &p)?);
    }
    Ok(acc.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::make_context;
    use crate::algebra::text::{parse_series, series_to_string};

    fn k(p: u64, e: u32) -> RatFuncField {
        RatFuncField::new(make_context(p, e).unwrap())
    }

    #[test]
    fn small_b_and_p() {
        for k in [k(2, 1), k(3, 1), k(2, 2)] {
            for mode in [Mode::Recursive, Mode::Closed] {
                assert_eq!(
                    bn(&k, 0, mode).unwrap(),
                    parse_series(&k, "1", "D").unwrap()
                );
                assert_eq!(
                    bn(&k, 1, mode).unwrap(),
                    parse_series(&k, "D+1", "D").unwrap()
                );
                let q = k.q();
                let b2 = format!("D^{}+D^{q}*T^{}+D+1", q + 1, 1 - q as i64);
                assert_eq!(
                    bn(&k, 2, mode).unwrap(),
                    parse_series(&k, &b2, "D").unwrap()
                );
                assert_eq!(
                    pn(&k, 1, mode).unwrap(),
                    parse_series(&k, "x-1", "x").unwrap()
                );
                assert_eq!(
                    pn(&k, 0, mode).unwrap(),
                    parse_series(&k, "1", "x").unwrap()
                );
                assert!(pn(&k, -1, mode).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn p2_over_f2_prints_as_documented() {
        let k = k(2, 1);
        let p2 = pn(&k, 2, Mode::Closed).unwrap();
        assert_eq!(series_to_string(k.base(), &p2), "x^3+T^-1*x^2+x+1");
    }

    #[test]
    fn a_n_small_cases() {
        let k = k(2, 1);
        assert_eq!(an(&k, 0).unwrap().specialize(&k, &k.t()), k.t());
        // a_1 = T^3/[1] (D + 1)
        let a1 = an(&k, 1).unwrap();
        let bracket = k.from_poly(k.ring().bracket(1).unwrap());
        assert_eq!(a1.scalar, k.div(&k.pow(&k.t(), 3), &bracket).unwrap());
        assert_eq!(a1.series, parse_series(&k, "D+1", "D").unwrap());
    }

    #[test]
    fn ss_by_pn_examples() {
        let k = k(2, 1);
        let r = k.ring();
        let p = r.from_ints(&[1, 1, 1]);
        assert!(legendre_ss_by_pn(&k, &FqPoly::one(), &p).unwrap());
        assert!(legendre_ss_by_pn(&k, &FqPoly::one(), &r.t()).is_err());
        assert!(matches!(
            legendre_ss_by_pn(&k, &p, &p),
            Err(Error::BadReduction { .. })
        ));
    }
}
