//! Identity and congruence suites over one base field, with a JSON report.
//!
//! Every randomized suite draws from a ChaCha stream seeded by the run seed
//! and the suite name, so reports are reproducible and independent of
//! scheduling.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::ext::ExtField;
use crate::algebra::field::Field;
use crate::algebra::poly::FqPoly;
use crate::algebra::ratfunc::RatFuncField;
use crate::algebra::text::poly_to_string;
use crate::drinfeld::{AFieldMap, DrinfeldModule};
use crate::error::{Error, Result};
use crate::legendre::{
    an, bn, legendre_ss_with, log_exp_coeffs, period_partial, period_residual, pn, Mode,
};
use crate::supersingular::{
    eisenstein_closed, enum_p2, mu_and_gamma, universal_check_with, PrimeReport, ShadowedPair,
};

pub const REPORT_FORMAT: u32 = 1;
const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
            pass: true,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.pass = false;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(msg);
        }
    }

    /// Record an error as a failure, except resource bounds, which end the run.
    fn absorb(&mut self, e: Error) -> Result<()> {
        if e.is_resource_bound() {
            return Err(e);
        }
        self.fail(format!("error: {e}"));
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub format: u32,
    pub q: u64,
    pub max_n: u32,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub congruence: Vec<PrimeReport>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Perturb one coefficient of mu_1 before the congruence suite.
    FlipMuCoefficient,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_n: u32,
    pub seed: u64,
    pub fault: Fault,
}

fn rng_for(seed: u64, suite: &str) -> ChaCha8Rng {
    let tag = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ tag)
}

/// A polynomial of degree at most `max_deg` with uniform coefficients.
pub fn random_poly(k: &RatFuncField, rng: &mut impl Rng, max_deg: usize) -> FqPoly {
    let fq = k.base();
    let coeffs = (0..=max_deg)
        .map(|_| fq.elem(rng.gen_range(0..fq.q())).unwrap())
        .collect();
    FqPoly::new(coeffs)
}

/// Largest n in `0..=cap` whose weight `(q^n - 1)/(q - 1)` fits the degree
/// bound.
fn series_range(k: &RatFuncField, cap: u32) -> u32 {
    let q = k.q() as u128;
    let max = k.base().limits().max_degree as u128;
    (0..=cap.min(62))
        .take_while(|&n| (q.pow(n) - 1) / (q - 1) <= max)
        .last()
        .unwrap_or(0)
}

/// Largest n in `1..=cap` with `n q^n` (the degree of D_n) in bounds.
fn product_range(k: &RatFuncField, cap: u32) -> u32 {
    let q = k.q() as u128;
    let max = k.base().limits().max_degree as u128;
    (1..=cap.min(40))
        .take_while(|&n| n as u128 * q.pow(n) <= max)
        .last()
        .unwrap_or(0)
}

/// Largest n in `1..=cap` with `q^(2n)` within the field-size bound.
fn field_range(k: &RatFuncField, cap: u32) -> u32 {
    let q = k.q() as u128;
    let max = k.base().limits().max_field_size as u128;
    (1..=cap.min(12))
        .take_while(|&n| q.pow(2 * n) <= max)
        .last()
        .unwrap_or(0)
}

/// Recursive and closed forms of b_n and p_n agree; identity (i); shape of p_n.
pub fn check_series(k: &RatFuncField, max_n: u32) -> Result<Vec<SuiteReport>> {
    let mut modes = SuiteReport::new("series_modes");
    let mut ident = SuiteReport::new("series_identity");
    let mut shape = SuiteReport::new("series_shape");
    let top = series_range(k, max_n);
    for n in 0..=top {
        let run = || -> Result<_> {
            Ok((
                bn(k, n, Mode::Recursive)?,
                bn(k, n, Mode::Closed)?,
                pn(k, n as i32, Mode::Recursive)?,
                pn(k, n as i32, Mode::Closed)?,
            ))
        };
        let (b_rec, b_cl, p_rec, p_cl) = match run() {
            Ok(v) => v,
            Err(e) => {
                modes.absorb(e)?;
                continue;
            }
        };
        modes.check(b_rec == b_cl, || format!("b_{n}: recursive != closed"));
        modes.check(p_rec == p_cl, || format!("p_{n}: recursive != closed"));

        let lhs = p_cl.negate_var(k);
        let rhs = if n % 2 == 1 {
            b_cl.neg(k)
        } else {
            b_cl.clone()
        }
        .with_var("x");
        ident.check(lhs == rhs, || format!("p_{n}(-x) != (-1)^{n} b_{n}(x)"));

        let size = 1usize << n;
        shape.check(b_cl.num_terms() == size, || {
            format!("b_{n} has {} terms", b_cl.num_terms())
        });
        shape.check(p_cl.num_terms() == size, || {
            format!("p_{n} has {} terms", p_cl.num_terms())
        });
        shape.check(p_cl.leading() == Some(&k.one()), || {
            format!("p_{n} is not monic")
        });
        let sign = if n % 2 == 1 { k.neg(&k.one()) } else { k.one() };
        shape.check(p_cl.coeff(0) == Some(&sign), || {
            format!("p_{n} has constant term != (-1)^{n}")
        });
        shape.check(
            p_cl.terms().all(|(_, c)| c.t_power_denominator().is_some()),
            || format!("p_{n} has a denominator that is not a power of T"),
        );
    }
    Ok(vec![modes, ident, shape])
}

/// `|P_2(n)|` follows Fibonacci, pairs are valid and distinct.
pub fn check_partitions(max_n: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("partitions");
    let (mut a, mut b) = (1usize, 1usize);
    for n in 0..=max_n.min(crate::supersingular::MAX_PARTITION_N) {
        let pairs = enum_p2(n)?;
        rep.check(pairs.len() == a, || {
            format!("|P_2({n})| = {} != {a}", pairs.len())
        });
        rep.check(pairs.iter().all(ShadowedPair::is_valid), || {
            format!("P_2({n}) has an invalid pair")
        });
        let mut seen: Vec<_> = pairs.iter().map(|p| (p.s1, p.s2)).collect();
        seen.sort();
        seen.dedup();
        rep.check(seen.len() == pairs.len(), || {
            format!("P_2({n}) has duplicates")
        });
        (a, b) = (b, a + b);
    }
    Ok(rep)
}

/// a_n at `D = Delta/T^q` equals `T sum_{j<=n} beta_j` on random Legendre
/// modules.
pub fn check_an(k: &RatFuncField, max_n: u32, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("period_coefficients");
    let mut rng = rng_for(seed, &rep.name);
    let top = product_range(k, max_n.min(6));
    for _ in 0..samples {
        let delta = loop {
            let d = random_poly(k, &mut rng, 3);
            if !d.is_zero() {
                break d;
            }
        };
        let dm = DrinfeldModule::legendre(AFieldMap::generic(k), k.from_poly(delta.clone()))?;
        let beta = match log_exp_coeffs(&dm, top).and_then(|c| c.beta_reduced(k)) {
            Ok(b) => b,
            Err(e) => {
                rep.absorb(e)?;
                continue;
            }
        };
        let mut acc = k.zero();
        for (n, b) in beta.iter().enumerate() {
            acc = k.add(&acc, b);
            let closed = an(k, n as u32)?.specialize(k, dm.delta());
            rep.check(closed == k.mul(&k.t(), &acc), || {
                format!(
                    "a_{n} mismatch at Delta = {}",
                    poly_to_string(k.base(), &delta)
                )
            });
        }
    }
    Ok(rep)
}

/// Closed forms over `P_2(n)` against the recursions, random g, Delta in A.
pub fn check_eisenstein(
    k: &RatFuncField,
    max_n: u32,
    samples: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("eisenstein");
    let mut rng = rng_for(seed, &rep.name);
    let top = product_range(k, max_n);
    let r = k.ring();
    for _ in 0..samples {
        let g = random_poly(k, &mut rng, 3);
        let delta = loop {
            let d = random_poly(k, &mut rng, 3);
            if !d.is_zero() {
                break d;
            }
        };
        let dm = DrinfeldModule::new(AFieldMap::generic(k), k.from_poly(g), k.from_poly(delta))?;
        let rec = log_exp_coeffs(&dm, top)?;
        for n in 0..=top {
            let i = n as usize;
            match eisenstein_closed(&dm, n) {
                Ok((a, b)) => {
                    rep.check(a.equals(&rec.alpha[i], r), || format!("alpha_{n} mismatch"));
                    rep.check(b.equals(&rec.beta[i], r), || format!("beta_{n} mismatch"));
                }
                Err(e) => rep.absorb(e)?,
            }
        }
    }
    Ok(rep)
}

/// A (prime, Delta) label with the p_n and kernel verdicts.
type Verdicts = (String, Result<bool>, Result<bool>);

/// The p_n criterion agrees with the kernel test for every prime
/// `p != T` of degree `<= max_deg` and every nonzero Delta mod p.
pub fn check_ss_equivalence(k: &RatFuncField, max_deg: u32) -> Result<SuiteReport> {
    let r = k.ring();
    let mut rep = SuiteReport::new("ss_equivalence");
    for d in 1..=max_deg {
        let p_d = pn(k, d as i32, Mode::Closed)?;
        let primes: Vec<FqPoly> = r
            .monic_irreducibles(d as usize)?
            .into_iter()
            .filter(|p| *p != r.t())
            .collect();
        let results: Vec<Vec<Verdicts>> = primes
            .par_iter()
            .map(|p| {
                let map = AFieldMap::residue(k, p)?;
                let l: ExtField = map.field().clone();
                Ok(l.elements()
                    .skip(1)
                    .map(|delta| {
                        let dpoly = l.to_poly(delta);
                        let by_pn = legendre_ss_with(k, &p_d, &dpoly, p);
                        let by_kernel = DrinfeldModule::legendre(map.clone(), delta)
                            .and_then(|m| m.is_supersingular());
                        (
                            format!(
                                "p = {}, Delta = {}",
                                poly_to_string(k.base(), p),
                                poly_to_string(k.base(), &dpoly)
                            ),
                            by_pn,
                            by_kernel,
                        )
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        for (label, a, b) in results.into_iter().flatten() {
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    rep.check(a == b, || format!("{label}: p_n says {a}, kernel says {b}"))
                }
                (Err(e), _) | (_, Err(e)) => rep.absorb(e)?,
            }
        }
    }
    Ok(rep)
}

/// `mu_n = gamma_n = ss_p mod p` for all primes of degree `n <= max_n`.
pub fn check_congruence(
    k: &RatFuncField,
    max_n: u32,
    fault: Fault,
) -> Result<(SuiteReport, Vec<PrimeReport>)> {
    let mut rep = SuiteReport::new("congruence");
    let mut lines = Vec::new();
    for n in 1..=field_range(k, max_n) {
        let (mut mu, gamma) = mu_and_gamma(k, n)?;
        if n == 1 && fault == Fault::FlipMuCoefficient {
            mu.add_term(k.ring(), 0, &FqPoly::one());
        }
        for line in universal_check_with(k, n, &mu, &gamma)? {
            rep.check(line.pass, || {
                format!("degree {n}: prime {} fails", line.prime)
            });
            lines.push(line);
        }
    }
    Ok((rep, lines))
}

/// For the Legendre module with `Delta = T^2`: term valuations strictly
/// increase from n = 3 among the nonzero terms, and the residual grows
/// from N = 4 to N = 8.
pub fn check_period(k: &RatFuncField, max_terms: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("period");
    let dm = DrinfeldModule::legendre(AFieldMap::generic(k), k.from_poly(FqPoly::t_pow(2)))?;
    rep.check(dm.f_star_check(&k.one()), || {
        "Delta = T^2 fails the valuation conditions".into()
    });
    let mut partial = None;
    for n in (0..=max_terms).rev() {
        match period_partial(&dm, n) {
            Ok(p) => {
                partial = Some(p);
                break;
            }
            Err(e) if e.is_resource_bound() => continue,
            Err(e) => return rep.absorb(e).map(|_| rep),
        }
    }
    if let Some(p) = partial {
        let tail: Vec<Ratio<i64>> = p
            .term_valuations
            .iter()
            .skip(3)
            .flatten()
            .copied()
            .collect();
        rep.check(tail.windows(2).all(|w| w[0] < w[1]), || {
            format!("term valuations {tail:?} do not increase")
        });
    }
    match (period_residual(&dm, 4), period_residual(&dm, 8)) {
        (Ok(r4), Ok(r8)) => rep.check(r8 > r4, || {
            format!("residual at N = 8 ({r8}) not above N = 4 ({r4})")
        }),
        (Err(e), _) | (_, Err(e)) if e.is_resource_bound() => {}
        (Err(e), _) | (_, Err(e)) => rep.absorb(e)?,
    }
    Ok(rep)
}

/// Run every suite for one field.
pub fn run_verify(k: &RatFuncField, cfg: &VerifyConfig) -> Result<VerifyReport> {
    type Suite<'a> = Box<dyn Fn() -> Result<Vec<SuiteReport>> + Send + Sync + 'a>;
    let seed = cfg.seed;
    let max_n = cfg.max_n;
    let suites: Vec<Suite> = vec![
        Box::new(|| check_series(k, max_n)),
        Box::new(|| Ok(vec![check_partitions(max_n)?])),
        Box::new(|| Ok(vec![check_an(k, max_n, 10, seed)?])),
        Box::new(|| Ok(vec![check_eisenstein(k, max_n, 20, seed)?])),
        Box::new(|| Ok(vec![check_ss_equivalence(k, ss_range(k, max_n))?])),
        Box::new(|| Ok(vec![check_period(k, 10)?])),
    ];
    let reports: Vec<Vec<SuiteReport>> = suites.par_iter().map(|s| s()).collect::<Result<_>>()?;
    let mut suites: Vec<SuiteReport> = reports.into_iter().flatten().collect();
    let (cong, congruence) = check_congruence(k, max_n, cfg.fault)?;
    suites.push(cong);
    let pass = suites.iter().all(|s| s.pass);
    Ok(VerifyReport {
        format: REPORT_FORMAT,
        q: k.q(),
        max_n,
        seed,
        suites,
        congruence,
        pass,
    })
}

/// Degrees for the equivalence grid: every Delta mod p is tried, so keep
/// `q^(2d)` modest.
fn ss_range(k: &RatFuncField, cap: u32) -> u32 {
    let q = k.q() as u128;
    (1..=cap.min(12))
        .take_while(|&d| q.pow(2 * d) <= 1 << 16)
        .last()
        .unwrap_or(0)
}
