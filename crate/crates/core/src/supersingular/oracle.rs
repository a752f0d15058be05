//! Brute-force supersingular j-invariants over the quadratic extension of
//! A/p, and the three-way congruence with mu_n and gamma_n.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::closed::{mu_and_gamma, JPoly};
use crate::algebra::ext::{subfield_express, ExtElem, ExtField};
use crate::algebra::field::Field;
use crate::algebra::poly::FqPoly;
use crate::algebra::ratfunc::RatFuncField;
use crate::algebra::text::{poly_to_string, series_to_string};
use crate::drinfeld::{AFieldMap, DrinfeldModule};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SsOracle {
    pub field: ExtField,
    /// The image of T in `field`.
    pub t0: ExtElem,
    /// Supersingular j-invariants, in element order.
    pub u: Vec<ExtElem>,
    /// `prod_{j in U, j != 0} (x - j)` with coefficients in A/p, each
    /// written as a polynomial in T of degree below deg p.
    pub ss: JPoly,
}

impl SsOracle {
    pub fn contains_zero(&self) -> bool {
        self.u.first() == Some(&ExtElem::ZERO)
    }

    /// Whether U is stable under `j -> j^(q^n)`.
    pub fn galois_stable(&self, n: u32) -> bool {
        let set: HashSet<ExtElem> = self.u.iter().copied().collect();
        self.u
            .iter()
            .all(|j| set.contains(&self.field.frobenius(j, n)))
    }
}

/// Test every j in the degree-2n extension of F_q containing A/p.
pub fn ss_oracle(k: &RatFuncField, p: &FqPoly) -> Result<SsOracle> {
    let r = k.ring();
    let fq = k.base();
    let n = p.degree().ok_or(Error::ConstantInput)?;
    if n == 0 {
        return Err(Error::ConstantInput);
    }
    if !p.is_monic() || !r.is_irreducible(p)? {
        return Err(Error::pre(format!(
            "{} is not a monic prime",
            poly_to_string(fq, p)
        )));
    }
    let size = (fq.q() as u128)
        .checked_pow(2 * n as u32)
        .unwrap_or(u128::MAX);
    fq.limits().check_field_size("q^(2 deg p)", size)?;
    let field = ExtField::new(fq, 2 * n)?;
    let map = AFieldMap::into_extension(p, &field)?;
    let t0 = *map.t_image();

    let elems: Vec<ExtElem> = field.elements().collect();
    let flags: Vec<bool> = elems
        .par_iter()
        .map(|&j| {
            let (g, delta) = if j == ExtElem::ZERO {
                (ExtElem::ZERO, ExtElem::ONE)
            } else {
                (ExtElem::ONE, field.inv(&j).unwrap())
            };
            DrinfeldModule::new(map.clone(), g, delta)?.is_supersingular()
        })
        .collect::<Result<_>>()?;
    let u: Vec<ExtElem> = elems
        .iter()
        .zip(&flags)
        .filter(|(_, &f)| f)
        .map(|(&j, _)| j)
        .collect();

    // prod (x - j), lowest coefficient first.
    let mut prod = vec![ExtElem::ONE];
    for &j in u.iter().filter(|&&j| j != ExtElem::ZERO) {
        let mut next = vec![ExtElem::ZERO; prod.len() + 1];
        for (i, &c) in prod.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], &c);
            next[i] = field.sub(&next[i], &field.mul(&c, &j));
        }
        prod = next;
    }
    let mut terms = Vec::with_capacity(prod.len());
    for (e, &c) in prod.iter().enumerate() {
        let coeff = subfield_express(&field, c, t0, p).map_err(|err| match err {
            Error::Precondition(msg) => {
                Error::internal(format!("coefficient of x^{e} of ss_p: {msg}"))
            }
            other => other,
        })?;
        terms.push((e as u64, coeff));
    }
    Ok(SsOracle {
        field,
        t0,
        u,
        ss: JPoly::from_terms(terms),
    })
}

/// One line of the congruence report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeReport {
    pub prime: String,
    pub degree: u32,
    pub u_size: usize,
    pub zero_in_u: bool,
    pub galois_stable: bool,
    pub ss: String,
    pub mu_mod_p: String,
    pub gamma_mod_p: String,
    pub pass: bool,
}

/// Compare `mu_n mod p`, `gamma_n mod p` and the oracle for every monic
/// prime of degree n.
pub fn universal_check(k: &RatFuncField, n: u32) -> Result<Vec<PrimeReport>> {
    let (mu, gamma) = mu_and_gamma(k, n)?;
    universal_check_with(k, n, &mu, &gamma)
}

/// As [`universal_check`] with `mu_n` and `gamma_n` supplied.
pub fn universal_check_with(
    k: &RatFuncField,
    n: u32,
    mu: &JPoly,
    gamma: &JPoly,
) -> Result<Vec<PrimeReport>> {
    let primes = k.ring().monic_irreducibles(n as usize)?;
    primes
        .par_iter()
        .map(|p| prime_report(k, p, mu, gamma))
        .collect()
}

/// The congruence check at one prime p, against `mu_n`, `gamma_n` for
/// `n = deg p`.
pub fn prime_report(
    k: &RatFuncField,
    p: &FqPoly,
    mu: &JPoly,
    gamma: &JPoly,
) -> Result<PrimeReport> {
    let r = k.ring();
    let fq = k.base();
    let oracle = ss_oracle(k, p)?;
    let n = p.degree().unwrap() as u32;
    let mu_p = mu.reduce_mod(r, p)?;
    let gamma_p = gamma.reduce_mod(r, p)?;
    let zero_in_u = oracle.contains_zero();
    let galois_stable = oracle.galois_stable(n);
    let pass =
        mu_p == oracle.ss && gamma_p == oracle.ss && galois_stable && zero_in_u == (n % 2 == 1);
    let show = |j: &JPoly| series_to_string(fq, &j.to_series(k));
    Ok(PrimeReport {
        prime: poly_to_string(fq, p),
        degree: n,
        u_size: oracle.u.len(),
        zero_in_u,
        galois_stable,
        ss: show(&oracle.ss),
        mu_mod_p: show(&mu_p),
        gamma_mod_p: show(&gamma_p),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::make_context;
    use crate::supersingular::closed::{mu_gamma, JKind};

    fn k(p: u64, e: u32) -> RatFuncField {
        RatFuncField::new(make_context(p, e).unwrap())
    }

    #[test]
    fn degree_one_prime_over_f2() {
        let k = k(2, 1);
        let o = ss_oracle(&k, &k.ring().t()).unwrap();
        assert_eq!(o.u, vec![ExtElem::ZERO]);
        assert_eq!(o.ss, JPoly::from_terms([(0, FqPoly::one())]));
    }

    #[test]
    fn degree_two_prime_over_f2() {
        let k = k(2, 1);
        let r = k.ring();
        let p = r.from_ints(&[1, 1, 1]);
        let o = ss_oracle(&k, &p).unwrap();
        let mu = mu_gamma(&k, 2, JKind::Mu)
            .unwrap()
            .reduce_mod(r, &p)
            .unwrap();
        assert_eq!(o.ss, mu);
        // (T^2 + T)^2 = 1 mod p.
        assert_eq!(
            o.ss,
            JPoly::from_terms([(1, FqPoly::one()), (0, FqPoly::one())])
        );
        assert!(!o.contains_zero());
        assert!(o.galois_stable(2));
    }

    #[test]
    fn reports_for_small_degrees() {
        for (k, n, count) in [(k(2, 1), 2, 1), (k(2, 1), 3, 2), (k(3, 1), 2, 3)] {
            let rep = universal_check(&k, n).unwrap();
            assert_eq!(rep.len(), count);
            assert!(rep.iter().all(|l| l.pass), "{rep:?}");
            assert!(rep.iter().all(|l| l.zero_in_u == (n % 2 == 1)));
        }
    }

    #[test]
    fn non_primes_are_rejected() {
        let k = k(2, 1);
        let r = k.ring();
        assert!(ss_oracle(&k, &r.from_ints(&[0, 1, 1])).is_err());
        assert!(ss_oracle(&k, &FqPoly::one()).is_err());
    }
}
