//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fintype::oracle::{brute_type, cross_check, random_corpus, OracleConfig};
use fintype::{
    closure_generators, closure_member, nss_exponent, sigma_min, ttype, type_m_primary, verify_briancon_skoda,
    verify_geometric_bound, verify_nss_inclusion, witness_curves, MonomialIdeal, Rational,
};
use rayon::prelude::*;
use serde_json::Value;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

const CORPUS_MIN: usize = 200;
const WITNESS_SEED: u64 = 17;
const PROBE_SEED: u64 = 0;
const ASYMPTOTIC_IDEALS: usize = 20;
const ASYMPTOTIC_MAX_K: u32 = 4;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, rows).unwrap()
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn err(e: fintype::Error) -> String {
    e.to_string()
}

fn corpus() -> Result<Vec<MonomialIdeal>, String> {
    let cfg = OracleConfig::default();
    let corpus = random_corpus(&cfg);
    ensure(corpus.len() >= CORPUS_MIN, || format!("corpus has {} ideals", corpus.len()))?;
    for i in &corpus {
        let entries_ok = i.generators().iter().flat_map(|g| g.entries()).all(|&e| e <= 6);
        ensure(i.ambient_dim() <= 4 && i.generators().len() <= 8 && entries_ok, || {
            format!("{i} is outside the corpus caps")
        })?;
    }
    Ok(corpus)
}

/// Runs `check` on every ideal, returning the first failure in corpus order.
fn over_corpus<F>(corpus: &[MonomialIdeal], check: F) -> Result<(), String>
where
    F: Fn(&MonomialIdeal) -> Result<(), String> + Sync,
{
    let results: Vec<Result<(), String>> = corpus.par_iter().map(&check).collect();
    results.into_iter().collect()
}

fn maximal_ideal() -> Outcome {
    for n in 1..=6 {
        let m = MonomialIdeal::maximal(n);
        let t = type_m_primary(&m).map_err(err)?.value;
        let tt = ttype(&m).map_err(err)?.value;
        ensure(t == q(1) && tt == q(1), || format!("n = {n}: T = {t}, 𝒯 = {tt}"))?;
    }
    Ok("T(m) = 𝒯(m) = 1 for n = 1..6".into())
}

fn coordinate_powers() -> Outcome {
    let m = MonomialIdeal::maximal(2);
    for p in 1..=6u32 {
        for r in 1..=6u32 {
            let i = ideal(2, &[&[p, 0], &[0, r]]);
            let t = type_m_primary(&i).map_err(err)?.value;
            let brute = brute_type(&i, &m, 12).map_err(err)?.value;
            let expected = q(p.max(r).into());
            ensure(t == expected && brute == expected, || {
                format!("(x^{p}, y^{r}): T = {t}, brute force = {brute}, expected {expected}")
            })?;
        }
    }
    Ok("36 ideals, T = max(p, q) = brute force (B = 12)".into())
}

fn mixed_ideal() -> Outcome {
    let i = ideal(2, &[&[2, 1], &[1, 2]]);
    let t = ttype(&i).map_err(err)?.value;
    let n = nss_exponent(&i).map_err(err)?;
    let cert = verify_nss_inclusion(&i).map_err(err)?;
    let sigma = sigma_min(&i).map_err(err)?;
    ensure(t == Rational::new(3.into(), 2.into()), || format!("𝒯 = {t}"))?;
    ensure(n == 3, || format!("N = {n}"))?;
    ensure(cert.holds, || format!("inclusion fails: {:?}", cert.violations))?;
    let [(u, g)] = cert.certificates.as_slice() else {
        return Err(format!("expected one certificate, got {:?}", cert.certificates));
    };
    let cofactor_is_generator = u.entries() == [3, 3]
        && i.generators().iter().any(|h| h != g && g.add(h) == *u);
    ensure(cofactor_is_generator, || format!("certificate {u} via {g}"))?;
    ensure(sigma == 3, || {
        format!("σ_min = {sigma}, expected 3 (rad(I)^2 = (x^2 y^2) is divisible by x^2 y)")
    })?;
    Ok("𝒯 = 3/2, N = 3, x^3 y^3 = (x^2 y)(x y^2), σ_min = 3".into())
}

fn line_ideal() -> Outcome {
    let i = ideal(2, &[&[2, 0], &[1, 1]]);
    let t = ttype(&i).map_err(err)?.value;
    let n = nss_exponent(&i).map_err(err)?;
    let sigma = sigma_min(&i).map_err(err)?;
    ensure(t == q(2) && n == 4 && sigma == 2, || format!("𝒯 = {t}, N = {n}, σ_min = {sigma}"))?;
    ensure(verify_nss_inclusion(&i).map_err(err)?.holds, || "inclusion fails".into())?;
    Ok("𝒯 = 2, N = 4, σ_min = 2 < N".into())
}

fn theorem_corpus() -> Outcome {
    let corpus = corpus()?;
    over_corpus(&corpus, |i| {
        let t = ttype(i).map_err(err)?.value;
        let n = nss_exponent(i).map_err(err)?;
        ensure(t >= q(1), || format!("{i}: 𝒯 = {t} < 1"))?;
        ensure(verify_nss_inclusion(i).map_err(err)?.holds, || format!("{i}: rad^{n} not in I"))?;
        ensure(verify_briancon_skoda(i).map_err(err)?, || format!("{i}: closure(I^n) not in I"))?;
        let g = verify_geometric_bound(i).map_err(err)?;
        ensure(g.holds, || format!("{i}: 𝒯 = {t} > {}", g.bound))?;
        let s = sigma_min(i).map_err(err)?;
        ensure(s <= n, || format!("{i}: σ_min = {s} > N = {n}"))
    })?;
    Ok(format!("{} ideals, zero failures", corpus.len()))
}

fn oracle_equivalence() -> Outcome {
    let corpus = corpus()?;
    let cfg = OracleConfig::default();
    let reports: Vec<Result<usize, String>> = corpus
        .par_iter()
        .map(|i| {
            let r = cross_check(i, &cfg).map_err(err)?;
            ensure(r.closure_mismatches.is_empty(), || {
                format!("{i}: closure mismatches {:?}", r.closure_mismatches)
            })?;
            ensure(r.facet_problems.is_empty(), || format!("{i}: {:?}", r.facet_problems))?;
            if r.max_witness_entry <= u64::from(cfg.weight_bound) {
                ensure(r.brute_value == r.ttype_value, || {
                    format!("{i}: brute force {} vs 𝒯 {}", r.brute_value, r.ttype_value)
                })?;
            }
            ensure(r.type_agrees, || format!("{i}: brute force {} vs 𝒯 {}", r.brute_value, r.ttype_value))?;
            Ok(r.points_checked)
        })
        .collect();
    let points: usize = reports.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("{} ideals, {points} lattice points, zero mismatches", corpus.len()))
}

fn closure_invariance() -> Outcome {
    let corpus = corpus()?;
    over_corpus(&corpus, |i| {
        let c = closure_generators(i, 1).map_err(err)?;
        let (a, b) = (ttype(i).map_err(err)?.value, ttype(&c).map_err(err)?.value);
        ensure(a == b, || format!("{i}: 𝒯 = {a}, closure gives {b}"))
    })?;
    Ok(format!("{} ideals", corpus.len()))
}

fn witness_exactness() -> Outcome {
    let corpus = corpus()?;
    let counts: Vec<Result<usize, String>> = corpus
        .par_iter()
        .map(|i| {
            let report = ttype(i).map_err(err)?;
            let curves = witness_curves(&report, WITNESS_SEED).map_err(err)?;
            ensure(curves.len() == report.witnesses.len(), || format!("{i}: missing curves"))?;
            for (c, w) in curves.iter().zip(&report.witnesses) {
                let got = (q(c.ideal_order as i64), q(c.denominator_order as i64));
                ensure(got == (w.r.clone(), w.m.clone()), || {
                    format!("{i}: curve orders {got:?} vs witness ({}, {})", w.r, w.m)
                })?;
                ensure(got.0 / got.1 == report.value, || format!("{i}: curve ratio is not 𝒯"))?;
            }
            Ok(curves.len())
        })
        .collect();
    let total: usize = counts.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("{total} curves on {} ideals reproduce (r, m)", corpus.len()))
}

fn kohn_probe() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    for b in 1..=4 {
        let path = dir.path().join(format!("kohn{b}.ideal"));
        fs::write(&path, format!("ring n=2 vars=z1,z2\nz1^3 + z1*z2^{b}\nz2\n")).map_err(|e| e.to_string())?;
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_fintype"))
                .args(["probe", path.to_str().unwrap(), "--json", "--weight-bound", "6", "--trunc", "64"])
                .args(["--seed", &PROBE_SEED.to_string()])
                .output()
                .map_err(|e| e.to_string())
        };
        let first = run()?;
        ensure(first.status.success(), || {
            format!("b = {b}: {}", String::from_utf8_lossy(&first.stderr))
        })?;
        ensure(first.stdout == run()?.stdout, || format!("b = {b}: output differs between runs"))?;
        let doc: Value = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
        let r = &doc["result"];
        ensure(r["lower_bound"] == "3" && r["boundary_lower_bound"] == "6", || {
            format!("b = {b}: lower bound {}, boundary {}", r["lower_bound"], r["boundary_lower_bound"])
        })?;
    }
    Ok("b = 1..4: lower bound 3, boundary 6, reproducible".into())
}

fn ceil_u32(x: &Rational) -> u32 {
    u32::try_from(&x.ceil().to_integer()).expect("small exponent")
}

fn asymptotic_exponent() -> Outcome {
    let corpus = corpus()?;
    let sample = &corpus[..ASYMPTOTIC_IDEALS];
    let mut minimality_checked = 0;
    for i in sample {
        let t = ttype(i).map_err(err)?.value;
        let rad = i.radical().map_err(err)?;
        for k in 1..=ASYMPTOTIC_MAX_K {
            let e = ceil_u32(&(&t * q(k.into())));
            let power = rad.power(e).map_err(err)?;
            for g in power.generators() {
                ensure(closure_member(g, i, k).map_err(err)?, || {
                    format!("{i}: {g} in rad^{e} is not in closure(I^{k})")
                })?;
            }
        }
        if t > q(1) {
            let denom = t.denom().clone();
            let step = Rational::new(1.into(), denom.clone());
            let smaller = &t - step;
            let max_k = 2 * u32::try_from(&denom).expect("small denominator");
            let mut fails = false;
            for k in 1..=max_k {
                let e = ceil_u32(&(&smaller * q(k.into())));
                let power = rad.power(e.max(1)).map_err(err)?;
                for g in power.generators() {
                    if !closure_member(g, i, k).map_err(err)? {
                        fails = true;
                    }
                }
                if fails {
                    break;
                }
            }
            ensure(fails, || format!("{i}: exponent {smaller} already suffices up to k = {max_k}"))?;
            minimality_checked += 1;
        }
    }
    Ok(format!(
        "{ASYMPTOTIC_IDEALS} ideals, k = 1..{ASYMPTOTIC_MAX_K}; minimality certified on {minimality_checked}"
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "type of the maximal ideal", limit: Some(Duration::from_secs(1)), run: maximal_ideal },
        Criterion { id: 2, name: "type of (x^p, y^q) against brute force", limit: Some(Duration::from_secs(10)), run: coordinate_powers },
        Criterion { id: 3, name: "(x^2 y, x y^2): 𝒯, N, certificate, σ_min", limit: None, run: mixed_ideal },
        Criterion { id: 4, name: "(x^2, x y): 𝒯, N, σ_min", limit: None, run: line_ideal },
        Criterion { id: 5, name: "theorem conformance on the corpus", limit: Some(Duration::from_secs(300)), run: theorem_corpus },
        Criterion { id: 6, name: "oracle equivalence on the corpus", limit: Some(Duration::from_secs(600)), run: oracle_equivalence },
        Criterion { id: 7, name: "closure invariance of 𝒯", limit: None, run: closure_invariance },
        Criterion { id: 8, name: "witness curves reproduce (r, m)", limit: None, run: witness_exactness },
        Criterion { id: 9, name: "probe on (z1^3 + z1 z2^b, z2)", limit: Some(Duration::from_secs(5)), run: kohn_probe },
        Criterion { id: 10, name: "asymptotic exponent and its minimality", limit: None, run: asymptotic_exponent },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let limit = c.limit.map(|l| format!(" / {l:?}")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {} [{elapsed:.2?}{limit}]: {detail}", c.id, c.name),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {} [{elapsed:.2?}{limit}]: {detail}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
