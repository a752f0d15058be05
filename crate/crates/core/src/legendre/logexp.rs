//! Coefficients of the exponential and logarithm of a rank-2 module over K,
//! and the partial sums a_delta(n).

use crate::algebra::field::Field;
use crate::algebra::poly::FqPoly;
use crate::algebra::ratfunc::{Fraction, RatFunc, RatFuncField};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};

/// `alpha_0..alpha_N` (exponential) and `beta_0..beta_N` (logarithm).
///
/// When g and Delta lie in A the entries share the denominators `D_n` and
/// `L_n` and are left unreduced.
#[derive(Clone, Debug)]
pub struct LogExpCoeffs {
    pub alpha: Vec<Fraction>,
    pub beta: Vec<Fraction>,
}

impl LogExpCoeffs {
    pub fn alpha_reduced(&self, k: &RatFuncField) -> Result<Vec<RatFunc>> {
        self.alpha.iter().map(|f| k.from_fraction(f)).collect()
    }

    pub fn beta_reduced(&self, k: &RatFuncField) -> Result<Vec<RatFunc>> {
        self.beta.iter().map(|f| k.from_fraction(f)).collect()
    }
}

/// Run the recursions
/// `[n] alpha_n = g alpha_{n-1}^q + Delta alpha_{n-2}^(q^2)` and
/// `-[n] beta_n = g^(q^(n-1)) beta_{n-1} + Delta^(q^(n-2)) beta_{n-2}`
/// from `alpha_0 = beta_0 = 1`.
pub fn log_exp_coeffs(dm: &DrinfeldModule<RatFuncField>, n_max: u32) -> Result<LogExpCoeffs> {
    let r = dm.field().ring();
    if n_max > 0 {
        r.products(n_max)?;
    }
    if dm.g().is_integral() && dm.delta().is_integral() {
        recurse_integral(dm, n_max)
    } else {
        recurse_generic(dm, n_max)
    }
}

fn recurse_integral(dm: &DrinfeldModule<RatFuncField>, n_max: u32) -> Result<LogExpCoeffs> {
    let r = dm.field().ring();
    let (g, delta) = (dm.g().num(), dm.delta().num());
    // alpha_n = num_alpha[n] / D_n, beta_n = num_beta[n] / L_n.
    let mut num_alpha = vec![FqPoly::one()];
    let mut num_beta = vec![FqPoly::one()];
    let mut d = vec![FqPoly::one()];
    let mut l = vec![FqPoly::one()];
    for n in 1..=n_max as usize {
        let bracket = r.bracket(n as u32)?;
        d.push(r.mul(&bracket, &r.frobenius(&d[n - 1], 1)));
        l.push(r.mul(&bracket, &l[n - 1]));
        let mut a = r.mul(g, &r.frobenius(&num_alpha[n - 1], 1));
        let mut b = r.mul(&r.frobenius(g, n as u32 - 1), &num_beta[n - 1]);
        if n >= 2 {
            let prev = r.bracket(n as u32 - 1)?;
            let a2 = r.mul(
                &r.mul(delta, &r.frobenius(&prev, 1)),
                &r.frobenius(&num_alpha[n - 2], 2),
            );
            a = r.add(&a, &a2);
            let b2 = r.mul(
                &r.mul(&r.frobenius(delta, n as u32 - 2), &prev),
                &num_beta[n - 2],
            );
            b = r.add(&b, &b2);
        }
        num_alpha.push(a);
        num_beta.push(r.neg(&b));
    }
    let alpha = num_alpha
        .into_iter()
        .zip(d)
        .map(|(a, d)| Fraction { num: a, den: d })
        .collect();
    let beta = num_beta
        .into_iter()
        .zip(l)
        .map(|(b, l)| Fraction { num: b, den: l })
        .collect();
    Ok(LogExpCoeffs { alpha, beta })
}

fn recurse_generic(dm: &DrinfeldModule<RatFuncField>, n_max: u32) -> Result<LogExpCoeffs> {
    let k = dm.field();
    let r = k.ring();
    let (g, delta) = (dm.g(), dm.delta());
    let mut alpha = vec![k.one()];
    let mut beta = vec![k.one()];
    for n in 1..=n_max as usize {
        let bracket = k.from_poly(r.bracket(n as u32)?);
        let mut a = k.mul(g, &k.frobenius(&alpha[n - 1], 1));
        let mut b = k.mul(&k.frobenius(g, n as u32 - 1), &beta[n - 1]);
        if n >= 2 {
            a = k.add(&a, &k.mul(delta, &k.frobenius(&alpha[n - 2], 2)));
            b = k.add(&b, &k.mul(&k.frobenius(delta, n as u32 - 2), &beta[n - 2]));
        }
        alpha.push(k.div(&a, &bracket)?);
        beta.push(k.neg(&k.div(&b, &bracket)?));
    }
    Ok(LogExpCoeffs {
        alpha: alpha.iter().map(|x| k.to_fraction(x)).collect(),
        beta: beta.iter().map(|x| k.to_fraction(x)).collect(),
    })
}

/// `a_delta(n) = T sum_{j <= n} beta_j delta^(q^j)` for `n = 0..=n_max`;
/// requires `phi_T(delta) = 0`.
pub fn a_delta_series(
    dm: &DrinfeldModule<RatFuncField>,
    delta: &RatFunc,
    n_max: u32,
) -> Result<Vec<RatFunc>> {
    let k = dm.field();
    if delta.is_zero() || !k.is_zero(&dm.phi_t().eval(delta)) {
        return Err(Error::pre("delta is not a nonzero element of ker phi_T"));
    }
    let beta = log_exp_coeffs(dm, n_max)?.beta_reduced(k)?;
    let mut acc = k.zero();
    let mut out = Vec::with_capacity(beta.len());
    for (j, b) in beta.iter().enumerate() {
        acc = k.add(&acc, &k.mul(b, &k.frobenius(delta, j as u32)));
        out.push(k.mul(&k.t(), &acc));
    }
    Ok(out)
}
