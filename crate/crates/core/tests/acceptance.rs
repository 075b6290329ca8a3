//! Acceptance criteria A1 to A6. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::time::{Duration, Instant};

use fthresh::bertini::{fpure_sequence, SearchOptions};
use fthresh::cli::{corpus, corpus_entry, RingFile};
use fthresh::frobenius::{trace, FrobeniusContext, Rational};
use fthresh::ideal::{HilbertBound, Ideal};
use fthresh::resolution::{a_invariants, a_invariants_from, betti_table, classify, free_resolution, homological_bounds};
use fthresh::ring::{Monomial, Polynomial, Ring, RingRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(start: Instant, limit: Duration, what: &str) -> Outcome {
    let t = start.elapsed();
    ensure!(t <= limit, "{what} took {t:?}, limit {limit:?}");
    Ok(())
}

fn a1() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        let start = Instant::now();
        let ring = Ring::grevlex(p, &["x", "y", "z"]).map_err(err)?;
        let ideal = Ideal::parse(&ring, &["x*y", "x*z", "y*z"]).map_err(err)?;
        let ctx = FrobeniusContext::new(ideal.clone()).map_err(err)?;
        ensure!(ctx.is_f_pure().map_err(err)?.f_pure, "p = {p}: not F-pure");
        for e in 1..=3 {
            let b = ctx.b_invariant(e).map_err(err)?;
            ensure!(b == 0, "p = {p}: b(p^{e}) = {b}");
        }
        let split = ctx.splitting_prime_estimate(2).map_err(err)?;
        let prime = split.stabilized_prime.as_ref().ok_or(format!("p = {p}: splitting chain did not stabilize"))?;
        ensure!(prime.same_ideal(&Ideal::maximal(&ring)).map_err(err)?, "p = {p}: splitting prime {prime}");
        ensure!(split.sdim == Some(0), "p = {p}: sdim {:?}", split.sdim);
        let a = a_invariants(&ideal).map_err(err)?;
        ensure!(a.values == vec![None, Some(0)], "p = {p}: a = {:?}", a.values);
        let class = classify(&ideal).map_err(err)?;
        ensure!(
            class.is_cm && class.dim == 1 && class.cm_type == 2 && !class.is_gorenstein,
            "p = {p}: {class:?}"
        );
        let fpt = Rational::from_integer(0);
        let h = homological_bounds(&ideal, Some(fpt), true).map_err(err)?;
        ensure!(h.pd == 2 && h.mu == 3 && h.pd_bound, "p = {p}: pd {} mu {}", h.pd, h.mu);
        ensure!(
            h.reg == 1 && Rational::from_integer(h.reg) <= Rational::from_integer(h.dim) - fpt && h.reg_bound == Some(true),
            "p = {p}: reg {} dim {}",
            h.reg,
            h.dim
        );
        within(start, Duration::from_secs(5), &format!("p = {p}"))?;
    }
    Ok(())
}

const HYPERSURFACES: &[&str] = &["xy2", "xy5", "quadric3", "quadric5", "quadric7", "fermat7", "fermat13"];

fn a2() -> Outcome {
    let start = Instant::now();
    for name in HYPERSURFACES {
        let file = corpus_entry(name).unwrap();
        let ideal = &file.ideal;
        let n = ideal.ring().nvars() as i64;
        let p = ideal.ring().p() as i64;
        let ctx = FrobeniusContext::new(ideal.clone()).map_err(err)?;
        let cert = ctx.gorenstein_fpt().map_err(err)?;
        let a = a_invariants(ideal).map_err(err)?;
        let a_d = a.top().ok_or(format!("{name}: a_d = -inf"))?;
        ensure!(cert.fpt_exact == Rational::from_integer(-a_d), "{name}: fpt {} vs a_d {a_d}", cert.fpt_exact);
        ensure!(cert.deg_f as i64 == (p - 1) * (n + a_d), "{name}: deg f = {}, a_d = {a_d}", cert.deg_f);
    }
    within(start, Duration::from_secs(30), "A2")
}

fn max_e(file: &RingFile) -> u32 {
    file.emax.unwrap_or(2)
}

fn a3() -> Outcome {
    for file in corpus() {
        let name = file.name.clone().unwrap_or_default();
        let ctx = FrobeniusContext::new(file.ideal.clone()).map_err(err)?;
        if !ctx.is_f_pure().map_err(err)?.f_pure {
            continue;
        }
        let p = ctx.ring().p() as u64;
        let n = ctx.ring().nvars() as i64;
        let rep = ctx.fpt_report(max_e(&file), None).map_err(err)?;
        ensure!(rep.complete, "{name}: report stopped early: {:?}", rep.stopped);
        for w in rep.levels.windows(2) {
            ensure!(p * w[0].b <= w[1].b, "{name}: p b({}) = {} > b({}) = {}", w[0].q, p * w[0].b, w[1].q, w[1].b);
            ensure!(w[0].fpt_lower <= w[1].fpt_lower, "{name}: fpt lower bound decreased at e = {}", w[1].e);
        }
        if classify(&file.ideal).map_err(err)?.is_gorenstein {
            let exact = ctx.gorenstein_fpt().map_err(err)?.fpt_exact;
            let last = rep.levels.last().unwrap();
            let gap = exact - last.fpt_lower;
            ensure!(
                gap >= Rational::from_integer(0) && gap <= Rational::new(n, last.q as i64),
                "{name}: gap {gap} at q = {}",
                last.q
            );
        }
    }
    Ok(())
}

fn a4() -> Outcome {
    for file in corpus() {
        let name = file.name.clone().unwrap_or_default();
        let ctx = FrobeniusContext::new(file.ideal.clone()).map_err(err)?;
        if !ctx.is_f_pure().map_err(err)?.f_pure {
            continue;
        }
        let a = a_invariants(&file.ideal).map_err(err)?;
        let p = ctx.ring().p() as i64;
        for e in 1..=max_e(&file) {
            let q = p.pow(e);
            let b = ctx.b_invariant(e).map_err(err)? as i64;
            let nu = ctx.nu_invariant(e).map_err(err)? as i64;
            let lower = Rational::new(b, q);
            for (i, a_i) in a.finite() {
                ensure!(lower <= Rational::from_integer(-a_i), "{name}: e = {e}: b/q = {lower} > -a_{i} = {}", -a_i);
                ensure!((1 - q) * a_i <= nu, "{name}: e = {e}: (1 - q) a_{i} = {} > nu = {nu}", (1 - q) * a_i);
            }
        }
    }
    Ok(())
}

fn a5() -> Outcome {
    for (name, expected) in [("quadric5", 1usize), ("poly2", 2), ("poly3", 3)] {
        let file = corpus_entry(name).unwrap();
        let seq = fpure_sequence(&file.ideal, &SearchOptions::default()).map_err(err)?;
        ensure!(seq.forms.len() == expected, "{name}: {} forms, expected {expected}", seq.forms.len());
        for s in &seq.steps {
            ensure!(
                s.fpt_after == s.fpt_before - 1 && s.a_top_after == s.a_top_before + 1,
                "{name}: step {} gives fpt {} -> {}, a_d {} -> {}",
                s.certificate.form,
                s.fpt_before,
                s.fpt_after,
                s.a_top_before,
                s.a_top_after
            );
        }
    }
    Ok(())
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_exp: u32) -> Monomial {
    let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
    Monomial::from_exponents(&exps)
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &RingRef, terms: usize, max_exp: u32) -> Polynomial {
    let n = ring.nvars();
    let p = ring.p();
    let ts = (0..terms)
        .map(|_| (random_monomial(rng, n, max_exp), rng.gen_range(1..p)))
        .collect();
    Polynomial::from_terms(ring, ts)
}

/// Membership in a monomial ideal presented by a triangular change of
/// generators, against termwise divisibility.
fn a6_membership(rng: &mut ChaCha8Rng) -> Outcome {
    for instance in 0..200 {
        let n = rng.gen_range(1..=4);
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let ring = Ring::grevlex(5, &refs).map_err(err)?;
        let k = rng.gen_range(1..=4);
        let mons: Vec<Monomial> = (0..k).map(|_| random_monomial(rng, n, 6)).collect();
        let gens: Vec<Polynomial> = (0..k)
            .map(|i| {
                let mut terms = vec![(mons[i].clone(), 1)];
                for m in &mons[i + 1..] {
                    terms.push((m.clone(), rng.gen_range(0..5)));
                }
                Polynomial::from_terms(&ring, terms)
            })
            .collect();
        let ideal = Ideal::new(&ring, gens).map_err(err)?;
        for _ in 0..10 {
            let len = rng.gen_range(1..=3);
            let f = random_poly(rng, &ring, len, 8);
            let expected = f.terms().iter().all(|(t, _)| mons.iter().any(|m| m.divides(t)));
            ensure!(
                ideal.contains(&f) == expected,
                "instance {instance}: {f} in ({}) should be {expected}",
                mons.iter().map(|m| Polynomial::term(&ring, m.clone(), 1).to_string()).collect::<Vec<_>>().join(", ")
            );
        }
    }
    Ok(())
}

fn a6_trace(rng: &mut ChaCha8Rng) -> Outcome {
    for instance in 0..200 {
        let p = [2u64, 3, 5][instance % 3];
        let ring = Ring::grevlex(p, &["x", "y", "z"]).map_err(err)?;
        let e = rng.gen_range(1..=2);
        let e2 = rng.gen_range(1..=3 - e);
        let q = p.pow(e + e2) as u32;
        let len = rng.gen_range(1..=6);
        let g = random_poly(rng, &ring, len, 2 * q);
        let composed = trace(&trace(&g, e).map_err(err)?, e2).map_err(err)?;
        let direct = trace(&g, e + e2).map_err(err)?;
        ensure!(composed == direct, "p = {p}, e = {e}, e' = {e2}, g = {g}: {composed} vs {direct}");
    }
    Ok(())
}

fn a6_euler() -> Outcome {
    for file in corpus() {
        let name = file.name.clone().unwrap_or_default();
        let n = file.ideal.ring().nvars();
        let complex = free_resolution(&file.ideal).map_err(err)?;
        let betti = betti_table(&complex).map_err(err)?;
        let up_to = 8;
        let from_betti = betti.hilbert_function(n, up_to);
        let hf = file.ideal.hilbert_function(HilbertBound::UpTo(up_to), 10_000_000).map_err(err)?;
        for t in 0..=up_to {
            ensure!(
                from_betti[t as usize] == hf.value(t) as i64,
                "{name}: degree {t}: {} from Betti numbers, {} by counting",
                from_betti[t as usize],
                hf.value(t)
            );
        }
        a_invariants_from(&file.ideal, &complex).map_err(err)?;
    }
    Ok(())
}

/// Random forms with a pure power of the first variable, so none is a
/// monomial or shares an obvious common factor.
fn a6_colon(rng: &mut ChaCha8Rng) -> Outcome {
    for instance in 0..50 {
        let p = [2u64, 3, 5][instance % 3];
        let ring = Ring::grevlex(p, &["x", "y", "z"]).map_err(err)?;
        let d = rng.gen_range(2..=3);
        let mut terms = vec![(Monomial::from_exponents(&[d, 0, 0]), 1)];
        for _ in 0..3 {
            let a = rng.gen_range(0..d);
            let b = rng.gen_range(0..=d - a);
            terms.push((Monomial::from_exponents(&[a, b, d - a - b]), rng.gen_range(1..p as u32)));
        }
        let f = Polynomial::from_terms(&ring, terms);
        if f.is_monomial() {
            continue;
        }
        let q = p;
        let fq = Ideal::new(&ring, vec![f.pow(q)]).map_err(err)?;
        let colon = fq.colon_by_intersection(&Ideal::new(&ring, vec![f.clone()]).map_err(err)?).map_err(err)?;
        let expected = Ideal::new(&ring, vec![f.pow(q - 1)]).map_err(err)?;
        ensure!(colon.same_ideal(&expected).map_err(err)?, "instance {instance}: ({f})^{q} : ({f}) = {colon}");
    }
    Ok(())
}

fn a6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    a6_membership(&mut rng).map_err(|e| format!("membership: {e}"))?;
    a6_trace(&mut rng).map_err(|e| format!("trace: {e}"))?;
    a6_euler().map_err(|e| format!("euler characteristic: {e}"))?;
    a6_colon(&mut rng).map_err(|e| format!("colon: {e}"))?;
    within(start, Duration::from_secs(120), "A6")
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome); 6] = [
        ("A1", "squarefree (xy, xz, yz) over F_2, F_3, F_5, F_7", a1),
        ("A2", "exact fpt = -a_d on Gorenstein hypersurfaces", a2),
        ("A3", "b monotonicity and Gorenstein gap band", a3),
        ("A4", "fpt lower bound and nu against finite a_i", a4),
        ("A5", "F-pure sequences and the staircase", a5),
        ("A6", "oracle suites", a6),
    ];
    let mut failed = 0;
    for (id, what, run) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("{id} PASS  {what}  ({t:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("{id} FAIL  {what}  ({t:.2}s): {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
