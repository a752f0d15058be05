//! Partial sums of the period `f(c) = sum_n a_n c^(q^n)` of a Legendre
//! module with `1 in ker phi_T`, where `c^(q-1) = T/Delta`.
//!
//! Since `c^(q^n) = c (T/Delta)^e_n` with `e_n = (q^n - 1)/(q - 1)`, every
//! partial sum is `c W_N` for some `W_N` in K.

use num_rational::Ratio;

use crate::algebra::field::{Field, FieldContext};
use crate::algebra::laurent::Laurent;
use crate::algebra::poly::{FqPoly, PolyRing};
use crate::algebra::ratfunc::{Fraction, RatFunc, RatFuncField, Valuation};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};

/// `sum_i k_i c^i` in `K[c]/(c^(q-1) - T/Delta)`, coefficients unreduced.
#[derive(Clone, Debug)]
pub struct KummerElem {
    coeffs: Vec<Fraction>,
    delta: RatFunc,
    q: u64,
}

impl KummerElem {
    pub fn new(q: u64, delta: RatFunc, coeffs: Vec<Fraction>) -> Result<KummerElem> {
        if q < 2 || coeffs.len() as u64 != q - 1 {
            return Err(Error::pre("a Kummer element has exactly q-1 coefficients"));
        }
        if delta.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(KummerElem { coeffs, delta, q })
    }

    pub fn coeffs(&self) -> &[Fraction] {
        &self.coeffs
    }

    pub fn delta(&self) -> &RatFunc {
        &self.delta
    }

    /// `v(c) = v(T/Delta)/(q-1)`.
    pub fn c_valuation(&self) -> Result<Ratio<i64>> {
        c_valuation(self.q, &self.delta)
    }

    /// `min_i v(k_i) + i v(c)`, or `None` for zero.
    pub fn valuation(&self) -> Result<Option<Ratio<i64>>> {
        let vc = self.c_valuation()?;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, k)| {
                k.valuation()
                    .finite()
                    .map(|v| Ratio::from_integer(v) + vc * i as i64)
            })
            .min())
    }
}

/// `v(c)`, refusing valuation classes where distinct powers of c could
/// share a valuation mod 1.
fn c_valuation(q: u64, delta: &RatFunc) -> Result<Ratio<i64>> {
    let vd = delta.valuation().finite().ok_or(Error::DivisionByZero)?;
    let vc = Ratio::new(-1 - vd, q as i64 - 1);
    if q != 2 && *vc.denom() != q as i64 - 1 {
        return Err(Error::pre(format!(
            "v(T/Delta) = {} is not coprime to q-1 = {}; the valuation of c-expansions is ambiguous",
            -1 - vd,
            q - 1
        )));
    }
    Ok(vc)
}

#[derive(Clone, Debug)]
pub struct PeriodPartial {
    pub value: KummerElem,
    pub c_valuation: Ratio<i64>,
    /// `v(a_n c^(q^n))` for `n = 0..=N`; `None` when the term vanishes.
    pub term_valuations: Vec<Option<Ratio<i64>>>,
}

struct LegendreData {
    g: FqPoly,
    delta: FqPoly,
    vc: Ratio<i64>,
}

fn check_module(dm: &DrinfeldModule<RatFuncField>) -> Result<LegendreData> {
    let k = dm.field();
    if !k.is_zero(&dm.phi_t().eval(&k.one())) {
        return Err(Error::pre(
            "the module is not in the Legendre family (phi_T(1) != 0)",
        ));
    }
    if !dm.g().is_integral() || !dm.delta().is_integral() {
        return Err(Error::pre("period sums need g and Delta in A"));
    }
    if !dm.f_star_check(&k.one()) {
        return Err(Error::pre(
            "the module fails the valuation conditions for delta = 1",
        ));
    }
    let vc = c_valuation(k.q(), dm.delta())?;
    Ok(LegendreData {
        g: dm.g().num().clone(),
        delta: dm.delta().num().clone(),
        vc,
    })
}

fn check_deg(fq: &FieldContext, what: &'static str, p: &FqPoly) -> Result<()> {
    fq.limits()
        .check_degree(what, p.degree().unwrap_or(0) as u128)
}

/// `c W_N` exactly, with the valuation of each summand.
pub fn period_partial(dm: &DrinfeldModule<RatFuncField>, n_terms: u32) -> Result<PeriodPartial> {
    let data = check_module(dm)?;
    let k = dm.field();
    let r = k.ring();
    let fq = k.base();
    let q = k.q();

    // beta_n = m[n]/L_n; T sum_{j<=n} beta_j = T acc/L_n;
    // W_n = w_num/w_den with w_den = L_n Delta^e_n.
    let mut m_prev = FqPoly::zero();
    let mut m_cur = FqPoly::one();
    let mut acc = FqPoly::one();
    let mut l = FqPoly::one();
    let mut w_num = FqPoly::t_pow(1);
    let mut w_den = FqPoly::one();
    let mut e = 0u64;
    let mut terms = vec![term_valuation(&l, &acc, 0, data.vc, q)?];
    for n in 1..=n_terms {
        let bracket = r.bracket(n)?;
        let mut next = r.mul(&r.frobenius(&data.g, n - 1), &m_cur);
        if n >= 2 {
            let prev_bracket = r.bracket(n - 1)?;
            next = r.add(
                &next,
                &r.mul(
                    &r.mul(&r.frobenius(&data.delta, n - 2), &prev_bracket),
                    &m_prev,
                ),
            );
        }
        m_prev = std::mem::replace(&mut m_cur, r.neg(&next));
        l = r.mul(&l, &bracket);
        acc = r.add(&r.mul(&acc, &bracket), &m_cur);
        check_deg(fq, "period numerator", &acc)?;

        let step = r.mul(&bracket, &r.frobenius(&data.delta, n - 1));
        e = e * q + 1;
        w_den = r.mul(&w_den, &step);
        check_deg(fq, "period denominator", &w_den)?;
        w_num = r.add(
            &r.mul(&w_num, &step),
            &r.mul(&FqPoly::t_pow(1 + e as usize), &acc),
        );
        terms.push(term_valuation(&l, &acc, n, data.vc, q)?);
    }

    let zero = || Fraction::from_poly(FqPoly::zero());
    let mut coeffs: Vec<Fraction> = (0..q - 1).map(|_| zero()).collect();
    if q == 2 {
        // c = T/Delta lies in K.
        coeffs[0] = Fraction::new(w_num.shift(1), r.mul(&w_den, &data.delta))?;
    } else {
        coeffs[1] = Fraction::new(w_num, w_den)?;
    }
    let value = KummerElem::new(q, dm.delta().clone(), coeffs)?;
    Ok(PeriodPartial {
        value,
        c_valuation: data.vc,
        term_valuations: terms,
    })
}

fn term_valuation(
    l: &FqPoly,
    acc: &FqPoly,
    n: u32,
    vc: Ratio<i64>,
    q: u64,
) -> Result<Option<Ratio<i64>>> {
    let Some(d) = acc.degree() else {
        return Ok(None);
    };
    let va = l.degree().unwrap() as i64 - 1 - d as i64;
    let qn = i64::try_from((q as u128).pow(n))
        .map_err(|_| Error::bound("q^n", u128::MAX, i64::MAX as u128))?;
    Ok(Some(Ratio::from_integer(va) + vc * qn))
}

/// `v(sum_{n<=N} alpha_n w^(q^n))` for `w = c W_N`: how close the partial
/// sum is to a zero of the exponential.
pub fn period_residual(dm: &DrinfeldModule<RatFuncField>, n_terms: u32) -> Result<Ratio<i64>> {
    let data = check_module(dm)?;
    let k = dm.field();
    let max = k.base().limits().max_degree as i64;
    let mut prec = 64i64;
    loop {
        if let Valuation::Finite(v) = residual_sum(k, &data, n_terms, prec)?.valuation() {
            return Ok(data.vc + v);
        }
        if prec >= max {
            return Err(Error::PrecisionExhausted(prec as u64));
        }
        prec = (prec * 2).min(max);
    }
}

/// `sum_n alpha_n (T/Delta)^e_n W_N(T^(q^n))` to absolute precision `cap`.
fn residual_sum(k: &RatFuncField, data: &LegendreData, n_terms: u32, cap: i64) -> Result<Laurent> {
    let r = k.ring();
    let fq = k.base();
    let q = k.q();
    let ratio = Laurent::t_pow(1, cap).div_poly(fq, &data.delta, cap);

    let mut powers = vec![Laurent::from_poly(&FqPoly::one(), cap)];
    for _ in 0..n_terms {
        let next = powers.last().unwrap().inflate(q, cap).mul(fq, &ratio, cap);
        powers.push(next);
    }

    let beta = beta_series(r, data, n_terms, cap)?;
    let mut sum_beta = Laurent::zero(cap);
    let mut w = Laurent::zero(cap);
    for (b, e) in beta.iter().zip(&powers) {
        sum_beta = sum_beta.add(fq, b);
        w = w.add(fq, &sum_beta.shift(1).mul(fq, e, cap));
    }

    let alpha = alpha_series(r, data, n_terms, cap)?;
    let mut out = Laurent::zero(cap);
    let mut qn = 1u64;
    for (a, e) in alpha.iter().zip(&powers) {
        let term = a.mul(fq, e, cap).mul(fq, &w.inflate(qn, cap), cap);
        out = out.add(fq, &term);
        qn *= q;
    }
    Ok(out)
}

fn beta_series(r: &PolyRing, data: &LegendreData, n_terms: u32, cap: i64) -> Result<Vec<Laurent>> {
    let fq = r.fq();
    let mut out = vec![Laurent::from_poly(&FqPoly::one(), cap)];
    for n in 1..=n_terms {
        let i = n as usize;
        let mut s = out[i - 1].mul_poly(fq, &r.frobenius(&data.g, n - 1), cap);
        if n >= 2 {
            s = s.add(
                fq,
                &out[i - 2].mul_poly(fq, &r.frobenius(&data.delta, n - 2), cap),
            );
        }
        out.push(s.div_poly(fq, &r.bracket(n)?, cap).neg(fq));
    }
    Ok(out)
}

fn alpha_series(r: &PolyRing, data: &LegendreData, n_terms: u32, cap: i64) -> Result<Vec<Laurent>> {
    let fq = r.fq();
    let q = r.q();
    let mut out = vec![Laurent::from_poly(&FqPoly::one(), cap)];
    for n in 1..=n_terms {
        let i = n as usize;
        let mut s = out[i - 1].inflate(q, cap).mul_poly(fq, &data.g, cap);
        if n >= 2 {
            s = s.add(
                fq,
                &out[i - 2]
                    .inflate(q * q, cap)
                    .mul_poly(fq, &data.delta, cap),
            );
        }
        out.push(s.div_poly(fq, &r.bracket(n)?, cap));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::make_context;
    use crate::drinfeld::AFieldMap;
    use crate::legendre::logexp::log_exp_coeffs;

    fn legendre(p: u64, delta: FqPoly) -> (RatFuncField, DrinfeldModule<RatFuncField>) {
        let k = RatFuncField::new(make_context(p, 1).unwrap());
        let dm = DrinfeldModule::legendre(AFieldMap::generic(&k), k.from_poly(delta)).unwrap();
        (k, dm)
    }

    #[test]
    fn first_term_over_f2() {
        let (k, dm) = legendre(2, FqPoly::t_pow(2));
        let p = period_partial(&dm, 0).unwrap();
        assert_eq!(p.c_valuation, Ratio::from_integer(1));
        assert_eq!(p.term_valuations, vec![Some(Ratio::from_integer(0))]);
        // T * (T/T^2) = 1.
        assert_eq!(k.from_fraction(&p.value.coeffs()[0]).unwrap(), k.one());
    }

    #[test]
    fn exact_value_matches_the_beta_sums() {
        let (k, dm) = legendre(3, FqPoly::t_pow(2));
        let n = 4;
        let p = period_partial(&dm, n).unwrap();
        let beta = log_exp_coeffs(&dm, n).unwrap().beta_reduced(&k).unwrap();
        let ratio = k.div(&k.t(), dm.delta()).unwrap();
        let mut acc = k.zero();
        let mut w = k.zero();
        let mut e = 0u64;
        for (j, b) in beta.iter().enumerate() {
            acc = k.add(&acc, b);
            let a = k.mul(&k.t(), &acc);
            w = k.add(&w, &k.mul(&a, &k.pow(&ratio, e)));
            let v = k.valuation(&a).finite().unwrap();
            assert_eq!(
                p.term_valuations[j],
                Some(Ratio::from_integer(v) + p.c_valuation * 3i64.pow(j as u32))
            );
            e = e * 3 + 1;
        }
        assert_eq!(k.from_fraction(&p.value.coeffs()[1]).unwrap(), w);
        assert!(p.value.coeffs()[0].is_zero());
        assert_eq!(p.c_valuation, Ratio::new(1, 2));
    }

    #[test]
    fn residual_grows_with_the_truncation() {
        let (_, dm) = legendre(2, FqPoly::t_pow(2));
        let r4 = period_residual(&dm, 4).unwrap();
        let r8 = period_residual(&dm, 8).unwrap();
        assert!(r8 > r4, "{r4} vs {r8}");
    }

    #[test]
    fn modules_outside_the_family_are_rejected() {
        let (k, dm) = legendre(2, FqPoly::t_pow(1));
        assert!(period_partial(&dm, 2).is_err());
        assert!(period_residual(&dm, 2).is_err());
        let not_legendre = DrinfeldModule::new(AFieldMap::generic(&k), k.one(), k.one()).unwrap();
        assert!(period_partial(&not_legendre, 1).is_err());
        // q = 4, Delta = T^4: v(c) = 1 is an integer, so the classes collide.
        let k4 = RatFuncField::new(make_context(2, 2).unwrap());
        let dm4 = DrinfeldModule::legendre(AFieldMap::generic(&k4), k4.from_poly(FqPoly::t_pow(4)))
            .unwrap();
        assert!(matches!(
            period_partial(&dm4, 1),
            Err(Error::Precondition(_))
        ));
    }
}
