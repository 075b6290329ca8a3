//! Checks the numeric relations between F-thresholds, a-invariants, Betti
//! numbers and splitting data on a concrete ring.

use std::fmt;

use crate::error::{Error, Result};
use crate::frobenius::{FThresholdReport, FrobeniusContext, Rational};
use crate::ideal::{HilbertBound, Ideal};
use crate::resolution::{a_invariants_from, betti_table, classify_from, free_resolution, AInvariants, BettiTable, Classification};
use crate::ring::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Verification {
    pub checks: Vec<Check>,
    pub f_pure: bool,
    pub fpt: FThresholdReport,
    pub a: AInvariants,
    pub betti: BettiTable,
    pub class: Classification,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    fn skip(&mut self, name: &str, why: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            status: Status::Skipped,
            detail: why.into(),
        });
    }
}

/// First variable or sum of two variables that is a nonzerodivisor on `S/I`.
fn regular_linear_form(ideal: &Ideal) -> Result<Option<Polynomial>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut candidates: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(ring, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            candidates.push(&Polynomial::var(ring, i) + &Polynomial::var(ring, j));
        }
    }
    candidates.push((0..n).fold(Polynomial::zero(ring), |acc, i| &acc + &Polynomial::var(ring, i)));
    for l in candidates {
        if ideal.quotient(&l)?.same_ideal(ideal)? && !ideal.add_element(&l)?.is_unit() {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Runs every check on `S/I` with levels `e = 1..=max_e`.
pub fn verify_ring(ctx: &FrobeniusContext, max_e: u32) -> Result<Verification> {
    let ideal = ctx.ideal();
    let ring = ctx.ring();
    let n = ring.nvars() as i64;
    let p = ring.p() as i64;
    let mut c = Checks(Vec::new());

    let complex = free_resolution(ideal)?;
    let betti = betti_table(&complex)?;
    let a = a_invariants_from(ideal, &complex)?;
    let class = classify_from(ideal, &betti);

    c.add(
        "resolution is a complex",
        complex.composes_to_zero() && complex.entries_homogeneous(),
        format!("length {}", complex.length()),
    );
    let up_to = (betti.reg + betti.pd as i64 + 2) as u32;
    let direct = ideal.hilbert_function(HilbertBound::UpTo(up_to), ctx.budget())?;
    let from_betti = betti.hilbert_function(ring.nvars(), up_to);
    c.add(
        "euler characteristic",
        from_betti.iter().zip(&direct.values).all(|(x, &y)| *x == y as i64),
        format!("degrees 0..={up_to}"),
    );
    if class.is_cm {
        let d = class.dim;
        let top = betti.max_shift((n - d) as usize).unwrap_or(0);
        let single = a.finite().count() == 1;
        c.add(
            "a_d from top betti shift",
            single && a.top() == Some(top - n),
            format!("max j = {top}, a_d = {:?}", a.top()),
        );
    } else {
        c.skip("a_d from top betti shift", "ring is not Cohen-Macaulay");
    }
    let mu = complex.modules.get(1).map_or(0, |m| m.rank());
    c.add("pd <= mu", betti.pd <= mu, format!("pd = {}, mu = {mu}", betti.pd));

    let purity = ctx.is_f_pure()?;
    if !purity.f_pure {
        c.skip("fedder criterion", "ring is not F-pure; threshold checks do not apply");
        let fpt = FThresholdReport {
            levels: Vec::new(),
            fpt_upper_from_a: a.min_negated().map(Rational::from_integer),
            a_checks: Vec::new(),
            gorenstein_exact: None,
            complete: false,
            stopped: Some("not F-pure".into()),
        };
        return Ok(Verification {
            checks: c.0,
            f_pure: false,
            fpt,
            a,
            betti,
            class,
        });
    }
    let witness = purity.witness.as_ref().unwrap();
    c.add(
        "fedder criterion",
        ctx.fedder_colon(1)?.contains(witness) && !witness.in_bracket_of_max_ideal(p as u64),
        format!("witness of degree {}", witness.degree().unwrap()),
    );

    let report = ctx.fpt_report(max_e, Some(&a))?;
    c.add("p b(q) <= b(pq)", report.b_monotone(p as u64), b_list(&report));
    c.add("fpt lower bound nondecreasing", report.fpt_lower_nondecreasing(), "");
    c.add(
        "0 <= b <= nu <= n(q - 1)",
        report.levels.iter().all(|l| l.b <= l.nu && l.nu <= n as u64 * (l.q - 1)),
        "",
    );
    c.add(
        "fpt lower bound <= -a_i",
        report.a_checks.iter().all(|x| x.fpt_bound_holds),
        format!("{} comparisons", report.a_checks.len()),
    );
    c.add(
        "(1 - q) a_i <= nu(q)",
        report.a_checks.iter().all(|x| x.nu_bound_holds),
        format!("{} comparisons", report.a_checks.len()),
    );
    c.add(
        "finite a_i <= 0",
        a.finite().all(|(_, v)| v <= 0),
        format!("{:?}", a.values),
    );

    let lower = report.best_lower().unwrap_or_else(|| Rational::from_integer(0));
    let pinned = match (report.fpt_upper_from_a, report.gorenstein_exact) {
        (Some(up), _) if up == lower => Some(lower),
        (_, Some(exact)) if class.is_gorenstein => Some(exact),
        _ => None,
    };
    match pinned {
        Some(fpt) => c.add(
            "reg <= dim - fpt",
            Rational::from_integer(betti.reg) <= Rational::from_integer(class.dim) - fpt,
            format!("reg = {}, dim = {}, fpt = {fpt}", betti.reg, class.dim),
        ),
        None => c.add(
            "reg <= dim - fpt",
            Rational::from_integer(betti.reg) <= Rational::from_integer(class.dim) - lower,
            format!("fpt not pinned; checked with the lower bound {lower}"),
        ),
    }

    if class.is_gorenstein {
        match ctx.gorenstein_fpt() {
            Ok(cert) => {
                let a_d = a.top().unwrap();
                c.add(
                    "gorenstein fpt = -a_d",
                    cert.fpt_exact == Rational::from_integer(-a_d),
                    format!("fpt = {}, a_d = {a_d}", cert.fpt_exact),
                );
                c.add(
                    "deg f = (p - 1)(n + a_d)",
                    cert.deg_f as i64 == (p - 1) * (n + a_d),
                    format!("deg f = {}", cert.deg_f),
                );
                let last = report.levels.last().unwrap();
                c.add(
                    "gorenstein gap <= n/q",
                    cert.fpt_exact - last.fpt_lower <= Rational::new(n, last.q as i64),
                    format!("gap {}", cert.fpt_exact - last.fpt_lower),
                );
                if report.levels.len() >= 2 {
                    c.add("second level colon", ctx.gorenstein_second_level_check(&cert)?, "");
                }
            }
            Err(Error::NotPrincipal(_)) => c.add("gorenstein fpt = -a_d", false, "Fedder colon not principal"),
            Err(err) => return Err(err),
        }
    } else {
        c.skip("gorenstein fpt = -a_d", "ring is not Gorenstein");
    }

    let split = ctx.splitting_prime_estimate(max_e)?;
    c.add("splitting chain decreasing", split.chain_decreasing, "");
    c.add(
        "splitting ideals contain I and are proper",
        split.levels.iter().all(|l| l.contains_defining_ideal && l.proper),
        "",
    );
    if a.finite().any(|(_, v)| v == 0) {
        let m = Ideal::maximal(ring);
        let all_m = split
            .levels
            .iter()
            .map(|l| l.ideal.same_ideal(&m))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|x| x);
        c.add(
            "a_i = 0 forces b = 0 and sdim = 0",
            all_m && report.levels.iter().all(|l| l.b == 0) && split.sdim.is_none_or(|s| s == 0),
            format!("sdim = {:?}", split.sdim),
        );
    }
    match &split.stabilized_prime {
        Some(prime) => {
            let compat = split.compatibility.as_ref().unwrap();
            c.add("splitting prime candidate compatible", compat.iter().all(|&x| x), format!("{compat:?}"));
            let cmp = ctx.fpt_of_quotient_check(prime, max_e)?;
            c.add(
                "b(R) <= b(R/P)",
                cmp.levels.iter().all(|l| l.holds),
                format!("{:?}", cmp.levels.iter().map(|l| (l.b_ring, l.b_quotient)).collect::<Vec<_>>()),
            );
            c.add(
                "fpt lower bound <= sdim",
                cmp.dim_bound_holds,
                format!("sdim = {}", cmp.quotient_dim),
            );
        }
        None => c.skip("splitting prime candidate compatible", "chain did not stabilize"),
    }

    match regular_linear_form(ideal)? {
        Some(l) => {
            let cut = a_invariants_from(&ideal.add_element(&l)?, &free_resolution(&ideal.add_element(&l)?)?)?;
            let holds = a
                .finite()
                .filter(|&(i, _)| i >= 1)
                .all(|(i, v)| cut.get(i - 1).is_some_and(|w| v < w));
            c.add("hyperplane section shifts a_i", holds, format!("cut by {l}"));
        }
        None => c.skip("hyperplane section shifts a_i", "no regular linear form among the candidates"),
    }

    Ok(Verification {
        checks: c.0,
        f_pure: true,
        fpt: report,
        a,
        betti,
        class,
    })
}

fn b_list(report: &FThresholdReport) -> String {
    let bs: Vec<String> = report.levels.iter().map(|l| l.b.to_string()).collect();
    format!("b = [{}]", bs.join(", "))
}
