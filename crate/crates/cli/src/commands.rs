use drinfeld::algebra::text::{parse_poly, series_to_sparse, series_to_string, SparseSeries};
use drinfeld::algebra::{make_context, Field, RatFuncField, SeriesPoly};
use drinfeld::drinfeld::{AFieldMap, DrinfeldModule};
use drinfeld::legendre::{
    bn, legendre_ss_with, period_partial, period_residual, pn, IndexSet, Mode,
};
use drinfeld::supersingular::{enum_p2, prime_report, JKind};
use drinfeld::verify::{run_verify, Fault, VerifyConfig};
use drinfeld::Result;
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::{Command, Format, ModeArg, QSpec};

pub struct Output {
    pub text: String,
    pub failed: bool,
}

impl Output {
    fn ok(text: String) -> Output {
        Output {
            text,
            failed: false,
        }
    }
}

fn field(q: QSpec) -> Result<RatFuncField> {
    Ok(RatFuncField::new(make_context(q.p, q.e)?))
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Rec => Mode::Recursive,
        ModeArg::Closed => Mode::Closed,
    }
}

fn json_line(mut v: Value) -> String {
    v["format"] = json!(drinfeld::verify::REPORT_FORMAT);
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn render_series(k: &RatFuncField, fmt: Format, meta: Value, s: &SeriesPoly) -> String {
    match fmt {
        Format::Text => format!("{}\n", series_to_string(k.base(), s)),
        Format::Sparse => format!("{}\n", series_to_sparse(k.base(), s)),
        Format::Json => {
            let mut v = meta;
            v["q"] = json!(k.q());
            v["poly"] = json!(SparseSeries::from_series(k.base(), s));
            json_line(v)
        }
    }
}

fn set_text(s: IndexSet) -> String {
    let items: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn run(cmd: Command, fmt: Format, cache: &Cache) -> Result<Output> {
    match cmd {
        Command::Pn { q, n, mode: m } => {
            let k = field(q.q)?;
            let s = if m == ModeArg::Closed && n >= 0 {
                cache.pn(&k, n as u32)?
            } else {
                pn(&k, n, mode(m))?
            };
            let meta =
                json!({"kind": "pn", "n": n, "mode": format!("{:?}", mode(m)).to_lowercase()});
            Ok(Output::ok(render_series(&k, fmt, meta, &s)))
        }
        Command::Bn { q, n, mode: m } => {
            let k = field(q.q)?;
            let s = bn(&k, n, mode(m))?;
            let meta =
                json!({"kind": "bn", "n": n, "mode": format!("{:?}", mode(m)).to_lowercase()});
            Ok(Output::ok(render_series(&k, fmt, meta, &s)))
        }
        Command::Mu { q, n } => jpoly(q.q, n, JKind::Mu, fmt, cache),
        Command::Gamma { q, n } => jpoly(q.q, n, JKind::Gamma, fmt, cache),
        Command::Ss { q, prime } => {
            let k = field(q.q)?;
            let p = k.ring().make_monic(&parse_poly(&k, &prime)?);
            let n = p.degree().ok_or(drinfeld::Error::ConstantInput)? as u32;
            if n == 0 {
                return Err(drinfeld::Error::ConstantInput);
            }
            let mu = cache.jpoly(&k, n, JKind::Mu)?;
            let gamma = cache.jpoly(&k, n, JKind::Gamma)?;
            let rep = prime_report(&k, &p, &mu, &gamma)?;
            let text = match fmt {
                Format::Json => json_line(json!(rep)),
                _ => format!(
                    "prime: {}\ndegree: {}\nu_size: {}\nzero_in_u: {}\ngalois_stable: {}\nss: {}\nmu_mod_p: {}\ngamma_mod_p: {}\npass: {}\n",
                    rep.prime, rep.degree, rep.u_size, rep.zero_in_u, rep.galois_stable, rep.ss, rep.mu_mod_p, rep.gamma_mod_p, rep.pass
                ),
            };
            Ok(Output {
                text,
                failed: !rep.pass,
            })
        }
        Command::Sstest { q, prime, delta } => {
            let k = field(q.q)?;
            let p = k.ring().make_monic(&parse_poly(&k, &prime)?);
            let delta = parse_poly(&k, &delta)?;
            let n = p.degree().ok_or(drinfeld::Error::ConstantInput)? as u32;
            let p_n = if n == 0 {
                SeriesPoly::zero("x")
            } else {
                cache.pn(&k, n)?
            };
            let by_pn = legendre_ss_with(&k, &p_n, &delta, &p)?;
            let dm = DrinfeldModule::legendre(AFieldMap::generic(&k), k.from_poly(delta))?;
            let by_kernel = dm.reduce_at(&p)?.is_supersingular()?;
            let agreement = by_pn == by_kernel;
            let text = match fmt {
                Format::Json => json_line(json!({
                    "prime": drinfeld::algebra::text::poly_to_string(k.base(), &p),
                    "by_pn": by_pn,
                    "by_kernel": by_kernel,
                    "agreement": agreement,
                })),
                _ => format!(
                    "p_n criterion: supersingular: {by_pn}\nkernel test: supersingular: {by_kernel}\nagreement: {agreement}\n"
                ),
            };
            Ok(Output {
                text,
                failed: !agreement,
            })
        }
        Command::Partitions { n } => {
            let pairs = enum_p2(n)?;
            let text = match fmt {
                Format::Json => {
                    let list: Vec<Value> = pairs
                        .iter()
                        .map(|p| json!({"s1": p.s1.iter().collect::<Vec<_>>(), "s2": p.s2.iter().collect::<Vec<_>>()}))
                        .collect();
                    json_line(json!({"n": n, "count": pairs.len(), "pairs": list}))
                }
                _ => {
                    let mut out = format!("count: {}\n", pairs.len());
                    for p in &pairs {
                        out.push_str(&format!("S1={} S2={}\n", set_text(p.s1), set_text(p.s2)));
                    }
                    out
                }
            };
            Ok(Output::ok(text))
        }
        Command::Period { q, delta, terms } => {
            let k = field(q.q)?;
            let delta = parse_poly(&k, &delta)?;
            let dm = DrinfeldModule::legendre(AFieldMap::generic(&k), k.from_poly(delta.clone()))?;
            let partial = period_partial(&dm, terms)?;
            let residual = period_residual(&dm, terms)?;
            let vals: Vec<Option<String>> = partial
                .term_valuations
                .iter()
                .map(|v| v.map(|r| r.to_string()))
                .collect();
            let text = match fmt {
                Format::Json => json_line(json!({
                    "q": k.q(),
                    "delta": drinfeld::algebra::text::poly_to_string(k.base(), &delta),
                    "terms": terms,
                    "c_valuation": partial.c_valuation.to_string(),
                    "term_valuations": vals,
                    "residual": residual.to_string(),
                })),
                _ => {
                    let mut out = format!("v(c): {}\n", partial.c_valuation);
                    for (n, v) in vals.iter().enumerate() {
                        out.push_str(&format!("term {n}: {}\n", v.as_deref().unwrap_or("inf")));
                    }
                    out.push_str(&format!("residual: {residual}\n"));
                    out
                }
            };
            Ok(Output::ok(text))
        }
        Command::Verify {
            q,
            max_n,
            seed,
            inject_fault,
        } => {
            let k = field(q.q)?;
            let fault = if inject_fault {
                Fault::FlipMuCoefficient
            } else {
                Fault::None
            };
            let rep = run_verify(&k, &VerifyConfig { max_n, seed, fault })?;
            let mut text = serde_json::to_string_pretty(&rep).expect("reports serialize");
            text.push('\n');
            Ok(Output {
                text,
                failed: !rep.pass,
            })
        }
    }
}

fn jpoly(q: QSpec, n: u32, kind: JKind, fmt: Format, cache: &Cache) -> Result<Output> {
    let k = field(q)?;
    let j = cache.jpoly(&k, n, kind)?;
    let meta = json!({"kind": kind.name(), "n": n});
    Ok(Output::ok(render_series(&k, fmt, meta, &j.to_series(&k))))
}
