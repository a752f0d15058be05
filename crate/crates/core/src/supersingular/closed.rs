//! Closed forms over shadowed partitions: the exponential and logarithm
//! coefficients, and the polynomials mu_n, gamma_n in j.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::partitions::{enum_p2, product_quotients, ShadowedPair};
use crate::algebra::field::Field;
use crate::algebra::poly::{FqPoly, PolyRing};
use crate::algebra::ratfunc::{Fraction, RatFunc, RatFuncField};
use crate::algebra::series::SeriesPoly;
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::legendre::index::IndexSet;

/// A polynomial in j with coefficients in A.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JPoly {
    terms: BTreeMap<u64, FqPoly>,
}

impl JPoly {
    pub fn zero() -> JPoly {
        JPoly::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, FqPoly)>) -> JPoly {
        JPoly {
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn add_term(&mut self, r: &PolyRing, e: u64, c: &FqPoly) {
        let sum = match self.terms.get(&e) {
            Some(old) => r.add(old, c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: u64) -> FqPoly {
        self.terms.get(&e).cloned().unwrap_or_else(FqPoly::zero)
    }

    /// Ascending exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u64, &FqPoly)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_monic(&self) -> bool {
        self.terms.values().next_back().is_some_and(FqPoly::is_one)
    }

    /// Coefficients reduced modulo p.
    pub fn reduce_mod(&self, r: &PolyRing, p: &FqPoly) -> Result<JPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (&e, c) in &self.terms {
            terms.push((e, r.rem(c, p)?));
        }
        Ok(JPoly::from_terms(terms))
    }

    pub fn to_series(&self, k: &RatFuncField) -> SeriesPoly {
        SeriesPoly::from_terms(
            "j",
            self.terms.iter().map(|(&e, c)| (e, k.from_poly(c.clone()))),
        )
    }

    /// Rejects coefficients outside A.
    pub fn from_series(s: &SeriesPoly) -> Result<JPoly> {
        let mut terms = Vec::with_capacity(s.num_terms());
        for (e, c) in s.terms() {
            if !c.is_integral() {
                return Err(Error::pre(format!("coefficient of j^{e} is not in A")));
            }
            terms.push((e, c.num().clone()));
        }
        Ok(JPoly::from_terms(terms))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JKind {
    Mu,
    Gamma,
}

impl JKind {
    pub fn name(self) -> &'static str {
        match self {
            JKind::Mu => "mu",
            JKind::Gamma => "gamma",
        }
    }
}

/// `a^w(S) = prod_{i in S} a^(q^i)`, multiplied onto `acc`.
fn times_frobenius_power(r: &PolyRing, mut acc: FqPoly, a: &FqPoly, s: IndexSet) -> FqPoly {
    for i in s.iter() {
        acc = r.mul(&acc, &r.frobenius(a, i));
    }
    acc
}

/// `alpha_n` and `beta_n` from the sums over `P_2(n)`.
///
/// For g, Delta in A the results come over the fixed denominators `D_n`
/// and `L_n`, unreduced.
pub fn eisenstein_closed(
    dm: &DrinfeldModule<RatFuncField>,
    n: u32,
) -> Result<(Fraction, Fraction)> {
    let k = dm.field();
    let r = k.ring();
    if n == 0 {
        return Ok((
            Fraction::from_poly(FqPoly::one()),
            Fraction::from_poly(FqPoly::one()),
        ));
    }
    let (d_n, l_n) = r.products(n)?;
    let pairs = enum_p2(n)?;
    if dm.g().is_integral() && dm.delta().is_integral() {
        let (g, delta) = (dm.g().num(), dm.delta().num());
        let parts: Vec<(FqPoly, FqPoly)> = pairs
            .par_iter()
            .map(|pair| {
                let (dq, lq) = product_quotients(r, n, pair.union(), &d_n, &l_n)?;
                let a = times_frobenius_power(
                    r,
                    times_frobenius_power(r, dq, g, pair.s1),
                    delta,
                    pair.s2,
                );
                let b = times_frobenius_power(
                    r,
                    times_frobenius_power(r, lq, g, pair.s1),
                    delta,
                    pair.s2,
                );
                Ok((a, b))
            })
            .collect::<Result<_>>()?;
        let (mut alpha, mut beta) = (FqPoly::zero(), FqPoly::zero());
        for (a, b) in parts {
            alpha = r.add(&alpha, &a);
            beta = r.add(&beta, &b);
        }
        // The quotient carries (-1)^n L_n / L_n(S).
        let beta = if n % 2 == 1 { r.neg(&beta) } else { beta };
        return Ok((Fraction::new(alpha, d_n)?, Fraction::new(beta, l_n)?));
    }
    let (mut alpha, mut beta) = (k.zero(), k.zero());
    for pair in &pairs {
        let (dq, lq) = product_quotients(r, n, pair.union(), &d_n, &l_n)?;
        let mono = k.mul(
            &frobenius_power_k(k, dm.g(), pair.s1),
            &frobenius_power_k(k, dm.delta(), pair.s2),
        );
        alpha = k.add(&alpha, &k.mul(&mono, &k.from_poly(dq)));
        beta = k.add(&beta, &k.mul(&mono, &k.from_poly(lq)));
    }
    let beta = if n % 2 == 1 { k.neg(&beta) } else { beta };
    let alpha = k.div(&alpha, &k.from_poly(d_n))?;
    let beta = k.div(&beta, &k.from_poly(l_n))?;
    Ok((k.to_fraction(&alpha), k.to_fraction(&beta)))
}

fn frobenius_power_k(k: &RatFuncField, a: &RatFunc, s: IndexSet) -> RatFunc {
    s.iter()
        .fold(k.one(), |acc, i| k.mul(&acc, &k.frobenius(a, i)))
}

/// The j-exponent of a pair: `w(S_1)/(q+1)` for even n and
/// `(w(S_1) - 1)/(q+1)` for odd n.
fn j_exponent(pair: &ShadowedPair, q: u64) -> Result<u64> {
    let w = pair
        .s1
        .weight(q)
        .ok_or(Error::bound("w(S_1)", u128::MAX, u64::MAX as u128))?;
    let shift = (pair.n % 2) as u128;
    let num = w
        .checked_sub(shift)
        .filter(|v| v % (q as u128 + 1) == 0)
        .ok_or_else(|| {
            Error::internal(format!(
                "w(S_1) = {w} for {pair:?} is not {shift} mod q+1 = {}",
                q + 1
            ))
        })?;
    Ok((num / (q as u128 + 1)) as u64)
}

/// `mu_n` or `gamma_n`.
pub fn mu_gamma(k: &RatFuncField, n: u32, kind: JKind) -> Result<JPoly> {
    if n == 0 {
        return Err(Error::pre("mu_n and gamma_n need n >= 1"));
    }
    let r = k.ring();
    let q = k.q();
    let (d_n, l_n) = r.products(n)?;
    let pairs = enum_p2(n)?;
    let parts: Vec<(u64, FqPoly)> = pairs
        .par_iter()
        .map(|pair| {
            let e = j_exponent(pair, q)?;
            let (dq, lq) = product_quotients(r, n, pair.union(), &d_n, &l_n)?;
            Ok((e, if kind == JKind::Mu { dq } else { lq }))
        })
        .collect::<Result<_>>()?;
    let mut out = JPoly::zero();
    for (e, c) in &parts {
        out.add_term(r, *e, c);
    }
    Ok(out)
}

/// `mu_n` and `gamma_n` together.
pub fn mu_and_gamma(k: &RatFuncField, n: u32) -> Result<(JPoly, JPoly)> {
    Ok((mu_gamma(k, n, JKind::Mu)?, mu_gamma(k, n, JKind::Gamma)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::make_context;
    use crate::drinfeld::AFieldMap;
    use crate::legendre::logexp::log_exp_coeffs;

    fn k(p: u64, e: u32) -> RatFuncField {
        RatFuncField::new(make_context(p, e).unwrap())
    }

    #[test]
    fn first_closed_forms() {
        let k = k(3, 1);
        let r = k.ring();
        let g = k.from_poly(r.from_ints(&[1, 2, 1]));
        let delta = k.from_poly(r.from_ints(&[0, 1]));
        let dm = DrinfeldModule::new(AFieldMap::generic(&k), g.clone(), delta).unwrap();
        let (a0, b0) = eisenstein_closed(&dm, 0).unwrap();
        assert!(
            a0.equals(&Fraction::from_poly(FqPoly::one()), r)
                && b0.equals(&Fraction::from_poly(FqPoly::one()), r)
        );
        let (a1, b1) = eisenstein_closed(&dm, 1).unwrap();
        let bracket = k.from_poly(r.bracket(1).unwrap());
        assert_eq!(k.from_fraction(&a1).unwrap(), k.div(&g, &bracket).unwrap());
        assert_eq!(
            k.from_fraction(&b1).unwrap(),
            k.neg(&k.div(&g, &bracket).unwrap())
        );
    }

    #[test]
    fn closed_forms_match_recursion_for_rational_inputs() {
        let k = k(2, 1);
        let r = k.ring();
        let g = k
            .make(r.from_ints(&[1, 1]), r.from_ints(&[1, 0, 1]))
            .unwrap();
        let delta = k.make(FqPoly::one(), r.t()).unwrap();
        let dm = DrinfeldModule::new(AFieldMap::generic(&k), g, delta).unwrap();
        let rec = log_exp_coeffs(&dm, 4).unwrap();
        for n in 0..=4u32 {
            let (a, b) = eisenstein_closed(&dm, n).unwrap();
            let i = n as usize;
            assert_eq!(
                k.from_fraction(&a).unwrap(),
                k.from_fraction(&rec.alpha[i]).unwrap(),
                "alpha_{n}"
            );
            assert_eq!(
                k.from_fraction(&b).unwrap(),
                k.from_fraction(&rec.beta[i]).unwrap(),
                "beta_{n}"
            );
        }
    }

    #[test]
    fn small_mu_and_gamma() {
        for k in [k(2, 1), k(3, 1), k(2, 2)] {
            let r = k.ring();
            let one = JPoly::from_terms([(0, FqPoly::one())]);
            assert_eq!(mu_gamma(&k, 1, JKind::Mu).unwrap(), one);
            assert_eq!(mu_gamma(&k, 1, JKind::Gamma).unwrap(), one);
            let mu2 =
                JPoly::from_terms([(1, FqPoly::one()), (0, r.bracket_frobenius(1, 1).unwrap())]);
            assert_eq!(mu_gamma(&k, 2, JKind::Mu).unwrap(), mu2);
        }
    }

    #[test]
    fn degrees_and_monicity() {
        for k in [k(2, 1), k(3, 1)] {
            let q = k.q();
            for n in 1..=6u32 {
                let qn = q.pow(n);
                let expected = if n % 2 == 0 {
                    (qn - 1) / (q * q - 1)
                } else {
                    (qn - q) / (q * q - 1)
                };
                for kind in [JKind::Mu, JKind::Gamma] {
                    let p = mu_gamma(&k, n, kind).unwrap();
                    assert_eq!(p.degree(), Some(expected), "q = {q}, n = {n}");
                    assert!(p.is_monic());
                }
            }
        }
    }

    #[test]
    fn series_round_trip() {
        let k = k(3, 1);
        let mu = mu_gamma(&k, 3, JKind::Mu).unwrap();
        assert_eq!(JPoly::from_series(&mu.to_series(&k)).unwrap(), mu);
        let bad = SeriesPoly::from_terms("j", [(0, k.t_pow(-1))]);
        assert!(JPoly::from_series(&bad).is_err());
    }
}
