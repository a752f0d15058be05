//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. All comparisons are exact.

use std::process::Command;
use std::time::{Duration, Instant};

use drinfeld::algebra::text::parse_series;
use drinfeld::algebra::{make_context, Field, FqPoly, RatFuncField, SeriesPoly};
use drinfeld::drinfeld::{AFieldMap, DrinfeldModule};
use drinfeld::legendre::{
    bn, legendre_ss_with, period_partial, period_residual, pn, IndexSet, Mode,
};
use drinfeld::supersingular::{enum_p2, universal_check, PrimeReport, ShadowedPair};
use drinfeld::verify::check_eisenstein;

type Outcome = Result<String, String>;

fn field(p: u64, e: u32) -> RatFuncField {
    RatFuncField::new(make_context(p, e).unwrap())
}

fn fields(qs: &[u64]) -> Vec<RatFuncField> {
    qs.iter()
        .map(|&q| match q {
            4 => field(2, 2),
            p => field(p, 1),
        })
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    format!("error: {err}")
}

/// p_1..p_4 exactly as displayed, for a numeric q.
fn displayed_pn(q: i64) -> [String; 4] {
    let (q2, q3) = (q * q, q * q * q);
    [
        "x-1".to_string(),
        format!("x^{}-T^{}*x^{}-x+1", q + 1, 1 - q, q),
        format!(
            "x^{}-T^{}*x^{}-T^{}*x^{}+T^{}*x^{}-x^{}+T^{}*x^{}+x-1",
            q2 + q + 1,
            1 - q,
            q2 + q,
            1 - q2,
            q2 + 1,
            1 - q2,
            q2,
            q + 1,
            1 - q,
            q
        ),
        format!(
            "x^{a}-x^{b}/T^{c}-x^{d}/T^{f}+x^{g}/T^{f}-x^{h}/T^{i}+x^{j}/T^{k}+x^{l}/T^{i}-x^{m}/T^{i}\
             -x^{n}+x^{o}/T^{c}+x^{r}/T^{f}-x^{s}/T^{f}+x^{t}-x^{u}/T^{c}-x+1",
            a = q3 + q2 + q + 1,
            b = q3 + q2 + q,
            c = q - 1,
            d = q3 + q2 + 1,
            f = q2 - 1,
            g = q3 + q2,
            h = q3 + q + 1,
            i = q3 - 1,
            j = q3 + q,
            k = q3 + q - 2,
            l = q3 + 1,
            m = q3,
            n = q2 + q + 1,
            o = q2 + q,
            r = q2 + 1,
            s = q2,
            t = q + 1,
            u = q,
        ),
    ]
}

/// b_0..b_3 exactly as displayed.
fn displayed_bn(q: i64) -> [String; 4] {
    let q2 = q * q;
    [
        "1".to_string(),
        "D+1".to_string(),
        format!("D^{}+D^{}*T^{}+D+1", q + 1, q, 1 - q),
        format!(
            "D^{}+D^{}*T^{}+D^{}*T^{}+D^{}*T^{}+D^{}+D^{}*T^{}+D+1",
            q2 + q + 1,
            q2 + q,
            1 - q,
            q2 + 1,
            1 - q2,
            q2,
            1 - q2,
            q + 1,
            q,
            1 - q
        ),
    ]
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for k in fields(&[2, 3, 4]) {
        let q = k.q();
        for (i, text) in displayed_pn(q as i64).iter().enumerate() {
            let n = i as i32 + 1;
            let expected = parse_series(&k, text, "x").map_err(e)?;
            for mode in [Mode::Closed, Mode::Recursive] {
                let got = pn(&k, n, mode).map_err(e)?;
                ensure(got == expected, || {
                    format!("p_{n} ({mode:?}) differs from the table at q = {q}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} comparisons"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for k in fields(&[2, 3, 4]) {
        let q = k.q();
        for (n, text) in displayed_bn(q as i64).iter().enumerate() {
            let expected = parse_series(&k, text, "D").map_err(e)?;
            let got = bn(&k, n as u32, Mode::Closed).map_err(e)?;
            ensure(got == expected, || {
                format!("b_{n} differs from the table at q = {q}")
            })?;
            checked += 1;
        }
        for n in 0..=8 {
            let rec = bn(&k, n, Mode::Recursive).map_err(e)?;
            let closed = bn(&k, n, Mode::Closed).map_err(e)?;
            ensure(rec == closed, || {
                format!("b_{n} recursive != closed at q = {q}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} comparisons"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for k in fields(&[2, 3, 5]) {
        for n in 0..=8u32 {
            let b = bn(&k, n, Mode::Closed).map_err(e)?;
            let p = pn(&k, n as i32, Mode::Closed).map_err(e)?;
            let sign = if n % 2 == 1 { k.neg(&k.one()) } else { k.one() };
            let lhs = b.scale(&k, &sign).with_var("x");
            ensure(lhs == p.negate_var(&k), || {
                format!("identity fails at n = {n}, q = {}", k.q())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} identities"))
}

fn criterion_4() -> Outcome {
    let mut cases = 0;
    for (k, max_deg) in [(field(2, 1), 4), (field(3, 1), 3)] {
        let r = k.ring();
        for d in 1..=max_deg {
            let p_d = pn(&k, d as i32, Mode::Closed).map_err(e)?;
            for prime in r.monic_irreducibles(d).map_err(e)? {
                if prime == r.t() {
                    continue;
                }
                let map = AFieldMap::residue(&k, &prime).map_err(e)?;
                let l = map.field().clone();
                for delta in l.elements().skip(1) {
                    let by_pn = legendre_ss_with(&k, &p_d, &l.to_poly(delta), &prime).map_err(e)?;
                    let by_kernel = DrinfeldModule::legendre(map.clone(), delta)
                        .map_err(e)?
                        .is_supersingular()
                        .map_err(e)?;
                    ensure(by_pn == by_kernel, || {
                        format!(
                            "mismatch at q = {}, prime {prime:?}, Delta {delta:?}",
                            k.q()
                        )
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (prime, Delta) pairs, 0 mismatches"))
}

fn congruence_reports() -> Result<Vec<(u64, PrimeReport)>, String> {
    let mut out = Vec::new();
    for (k, max_n) in [(field(2, 1), 4), (field(3, 1), 3), (field(2, 2), 2)] {
        for n in 1..=max_n {
            for line in universal_check(&k, n).map_err(e)? {
                out.push((k.q(), line));
            }
        }
    }
    Ok(out)
}

fn criterion_5(reports: &[(u64, PrimeReport)]) -> Outcome {
    for (q, r) in reports {
        ensure(r.ss == r.mu_mod_p && r.ss == r.gamma_mod_p, || {
            format!(
                "q = {q}, prime {}: ss {} mu {} gamma {}",
                r.prime, r.ss, r.mu_mod_p, r.gamma_mod_p
            )
        })?;
    }
    Ok(format!("{} primes agree three ways", reports.len()))
}

fn criterion_6(reports: &[(u64, PrimeReport)]) -> Outcome {
    for (q, r) in reports {
        ensure(r.zero_in_u == (r.degree % 2 == 1), || {
            format!("q = {q}, prime {}: parity of 0 in U", r.prime)
        })?;
        ensure(r.galois_stable, || {
            format!("q = {q}, prime {}: U not Frobenius-stable", r.prime)
        })?;
    }
    Ok(format!("{} primes, 0 exceptions", reports.len()))
}

fn criterion_7() -> Outcome {
    let (samples, max_n) = (20, 7);
    let mut cases = 0;
    for k in fields(&[2, 3]) {
        let rep = check_eisenstein(&k, max_n, samples, 0).map_err(e)?;
        ensure(rep.pass, || format!("q = {}: {:?}", k.q(), rep.failures))?;
        let expected = samples as u64 * (max_n as u64 + 1) * 2;
        ensure(rep.cases == expected, || {
            format!("q = {}: {} of {expected} cases ran", k.q(), rep.cases)
        })?;
        cases += rep.cases;
    }
    Ok(format!("{cases} coefficient comparisons"))
}

fn fibonacci(n: u32) -> usize {
    let (mut a, mut b) = (1usize, 1usize);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

fn shape_ok(k: &RatFuncField, n: u32, p: &SeriesPoly) -> bool {
    let sign = if n % 2 == 1 { k.neg(&k.one()) } else { k.one() };
    p.leading() == Some(&k.one())
        && p.coeff(0) == Some(&sign)
        && p.terms().all(|(_, c)| c.t_power_denominator().is_some())
}

fn criterion_8() -> Outcome {
    for n in 0..=15 {
        let pairs = enum_p2(n).map_err(e)?;
        ensure(pairs.len() == fibonacci(n), || {
            format!("|P_2({n})| = {} != {}", pairs.len(), fibonacci(n))
        })?;
        if n <= 10 {
            let all = 1u64 << n;
            let mut brute: Vec<(u64, u64)> = Vec::new();
            for s1 in 0..all {
                for s2 in 0..all {
                    let pair = ShadowedPair {
                        s1: IndexSet::from_bits(s1),
                        s2: IndexSet::from_bits(s2),
                        n,
                    };
                    if pair.is_valid() {
                        brute.push((s1, s2));
                    }
                }
            }
            let mut listed: Vec<(u64, u64)> =
                pairs.iter().map(|p| (p.s1.bits(), p.s2.bits())).collect();
            brute.sort_unstable();
            listed.sort_unstable();
            ensure(brute == listed, || {
                format!("P_2({n}) differs from exhaustive enumeration")
            })?;
        }
    }
    for k in fields(&[2, 3, 4]) {
        for n in 0..=8u32 {
            let b = bn(&k, n, Mode::Closed).map_err(e)?;
            let p = pn(&k, n as i32, Mode::Closed).map_err(e)?;
            ensure(b.num_terms() == 1 << n && p.num_terms() == 1 << n, || {
                format!("term count at n = {n}, q = {}", k.q())
            })?;
            ensure(shape_ok(&k, n, &p), || {
                format!("p_{n} shape at q = {}", k.q())
            })?;
        }
    }
    Ok("n <= 15 counts, n <= 10 exhaustive, shapes n <= 8".into())
}

fn criterion_9() -> Outcome {
    let mut notes = Vec::new();
    for k in fields(&[2, 3]) {
        let q = k.q();
        let dm = DrinfeldModule::legendre(AFieldMap::generic(&k), k.from_poly(FqPoly::t_pow(2)))
            .map_err(e)?;
        ensure(dm.f_star_check(&k.one()), || {
            format!("q = {q}: Delta = T^2 outside F_1*")
        })?;
        let partial = period_partial(&dm, 10).map_err(e)?;
        let tail: Vec<_> = partial
            .term_valuations
            .iter()
            .enumerate()
            .skip(3)
            .filter_map(|(n, v)| v.map(|v| (n, v)))
            .collect();
        ensure(tail.len() >= 4, || {
            format!("q = {q}: only {} nonzero terms beyond n = 3", tail.len())
        })?;
        for w in tail.windows(2) {
            ensure(w[0].1 < w[1].1, || {
                format!(
                    "q = {q}: v(term {}) = {} not below v(term {}) = {}",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )
            })?;
        }
        let r4 = period_residual(&dm, 4).map_err(e)?;
        let r8 = period_residual(&dm, 8).map_err(e)?;
        ensure(r8 > r4, || {
            format!("q = {q}: residual {r8} at N = 8 not above {r4} at N = 4")
        })?;
        notes.push(format!(
            "q = {q}: {} nonzero terms, residual {r4} -> {r8}",
            tail.len()
        ));
    }
    Ok(notes.join("; "))
}

fn criterion_10() -> Outcome {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_drinfeld"))
            .args(args)
            .env_remove("DRINFELD_CACHE_DIR")
            .output()
            .map_err(e)
    };
    for q in ["2", "3"] {
        let args = ["verify", "--q", q, "--max-n", "3"];
        let a = run(&args)?;
        let b = run(&args)?;
        ensure(a.status.code() == Some(0), || {
            format!("verify --q {q} exited {:?}", a.status.code())
        })?;
        ensure(a.stdout == b.stdout, || {
            format!("verify --q {q} output differs between runs")
        })?;
        let faulty = run(&["verify", "--q", q, "--max-n", "3", "--inject-fault"])?;
        ensure(faulty.status.code() == Some(1), || {
            format!(
                "fault injection at q = {q} exited {:?}",
                faulty.status.code()
            )
        })?;
    }
    Ok("byte-identical reports; fault gives exit 1".into())
}

fn report(n: u32, what: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let took = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(msg), Some(limit)) if took > limit => {
            Err(format!("{msg}, but took longer than {limit:?}"))
        }
        (other, _) => other,
    };
    let (status, msg) = match &outcome {
        Ok(m) => ("PASS", m),
        Err(m) => ("FAIL", m),
    };
    println!(
        "criterion {n:>2} [{status}] {what}: {msg} ({:.2}s)",
        took.as_secs_f64()
    );
    outcome.is_ok()
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let mut ok = true;
    ok &= report(1, "p_n tables", secs(1), criterion_1);
    ok &= report(2, "b_n tables and recursion", secs(10), criterion_2);
    ok &= report(3, "sign identity", secs(10), criterion_3);
    ok &= report(4, "supersingularity equivalence", secs(60), criterion_4);
    let mut reports = Err("congruence reports were not computed".to_string());
    ok &= report(5, "universal congruence", secs(120), || {
        reports = congruence_reports();
        criterion_5(reports.as_deref().map_err(Clone::clone)?)
    });
    ok &= report(6, "parity and Galois stability", None, || {
        criterion_6(reports.as_deref().map_err(Clone::clone)?)
    });
    ok &= report(7, "Eisenstein closed forms", secs(30), criterion_7);
    ok &= report(8, "combinatorics", None, criterion_8);
    ok &= report(9, "periods", secs(30), criterion_9);
    ok &= report(10, "determinism", None, criterion_10);
    println!("acceptance: {}", if ok { "PASS" } else { "FAIL" });
    if !ok {
        std::process::exit(1);
    }
}
