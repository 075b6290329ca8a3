//! Search for F-pure regular sequences of linear forms: cut `R` by a linear
//! form `ℓ` with `ℓ^{p-1} f ∉ n^[p]` that is a nonzerodivisor outside the
//! splitting prime, and repeat while the F-pure threshold is positive.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frobenius::{FrobeniusContext, Rational};
use crate::ideal::Ideal;
use crate::resolution::{a_invariants, classify};
use crate::ring::{Monomial, Polynomial, RingRef};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub seed: u64,
    /// Pseudorandom candidates tried before the exhaustive pass.
    pub random_samples: usize,
    /// Largest `|P^{n-1}(F_p)|` enumerated exhaustively.
    pub exhaustive_limit: u64,
    /// Levels used for the splitting prime guard.
    pub splitting_levels: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            random_samples: 64,
            exhaustive_limit: 100_000,
            splitting_levels: 2,
        }
    }
}

/// The ideal a candidate form must avoid.
#[derive(Clone, Debug)]
pub enum PrimeGuard {
    /// A stabilized splitting prime candidate.
    Stabilized(Ideal),
    /// The last splitting ideal `I_e`, used when the chain did not stabilize.
    Heuristic { ideal: Ideal, e: u32 },
}

impl PrimeGuard {
    pub fn from_context(ctx: &FrobeniusContext, levels: u32) -> Result<PrimeGuard> {
        let data = ctx.splitting_prime_estimate(levels)?;
        Ok(match data.stabilized_prime {
            Some(prime) => PrimeGuard::Stabilized(prime),
            None => {
                let last = data.levels.into_iter().last().expect("at least one level");
                PrimeGuard::Heuristic {
                    ideal: last.ideal,
                    e: last.e,
                }
            }
        })
    }

    pub fn ideal(&self) -> &Ideal {
        match self {
            PrimeGuard::Stabilized(i) | PrimeGuard::Heuristic { ideal: i, .. } => i,
        }
    }

    pub fn is_heuristic(&self) -> bool {
        matches!(self, PrimeGuard::Heuristic { .. })
    }
}

#[derive(Clone, Debug)]
pub struct LinearFormCertificate {
    pub form: Polynomial,
    /// A monomial of `ℓ^{p-1} f` with all exponents below `p`.
    pub witness: Monomial,
    /// `I : ℓ = I`.
    pub nonzerodivisor: bool,
    /// `ℓ` avoided a splitting ideal rather than a stabilized prime.
    pub guard_heuristic: bool,
    /// Candidates examined, including the accepted one.
    pub tried: usize,
}

fn linear_form(ring: &RingRef, v: &[u32]) -> Polynomial {
    let n = ring.nvars();
    let terms = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (Monomial::var(n, i), c))
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Points of `P^{n-1}(F_p)` with first nonzero coordinate 1, in
/// lexicographic order of the coordinate vectors.
fn projective_points(n: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    (0..n).rev().flat_map(move |lead| {
        let tail = n - lead - 1;
        (0..(p as u64).pow(tail as u32)).map(move |mut code| {
            let mut v = vec![0u32; n];
            v[lead] = 1;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = (code % p as u64) as u32;
                code /= p as u64;
            }
            v
        })
    })
}

fn normalize(mut v: Vec<u32>, p: u32, ring: &RingRef) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&c| c != 0)?;
    let inv = ring.inv(lead) as u64;
    for c in v.iter_mut() {
        *c = (*c as u64 * inv % p as u64) as u32;
    }
    Some(v)
}

/// Finds a linear form passing the three cut conditions for `f`.
pub fn find_fpure_linear(
    ctx: &FrobeniusContext,
    f: &Polynomial,
    guard: &PrimeGuard,
    opts: &SearchOptions,
) -> Result<LinearFormCertificate> {
    let ring = ctx.ring();
    let p = ring.p();
    let n = ring.nvars();
    if !f.is_homogeneous() || f.is_zero() {
        return Err(Error::Precondition("f must be a nonzero homogeneous polynomial".into()));
    }
    if f.in_bracket_of_max_ideal(p as u64) || !ctx.fedder_colon(1)?.contains(f) {
        return Err(Error::Precondition("f must lie in (I^[p] : I) outside n^[p]".into()));
    }
    let cap = (p as u64 - 1) * (n as u64 - 1);
    if f.degree().unwrap() as u64 > cap {
        return Err(Error::Precondition(format!(
            "deg f = {} exceeds (p - 1)(n - 1) = {cap}",
            f.degree().unwrap()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let random = (0..opts.random_samples).filter_map(|_| {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        normalize(v, p, ring)
    });
    let total = (0..n as u32).map(|k| (p as u64).pow(k)).sum::<u64>();
    let exhaustive: Box<dyn Iterator<Item = Vec<u32>>> = if total <= opts.exhaustive_limit {
        Box::new(projective_points(n, p))
    } else {
        Box::new(std::iter::empty())
    };
    let mut tried = 0;
    let mut seen = std::collections::HashSet::new();
    for v in random.collect::<Vec<_>>().into_iter().chain(exhaustive) {
        if !seen.insert(v.clone()) {
            continue;
        }
        tried += 1;
        let form = linear_form(ring, &v);
        let product = form.pow(p as u64 - 1).mul_unchecked(f);
        let Some((witness, _)) = product.term_below_bracket(p as u64) else { continue };
        let witness = witness.clone();
        if guard.ideal().contains(&form) {
            continue;
        }
        if !ctx.ideal().quotient(&form)?.same_ideal(ctx.ideal())? {
            continue;
        }
        return Ok(LinearFormCertificate {
            form,
            witness,
            nonzerodivisor: true,
            guard_heuristic: guard.is_heuristic(),
            tried,
        });
    }
    Err(Error::FieldTooSmall {
        p,
        tried,
        partial: Vec::new(),
    })
}

#[derive(Clone, Debug)]
pub struct SequenceStep {
    pub certificate: LinearFormCertificate,
    /// `ℓ^{p-1} f` lies in the Fedder colon of the cut ring.
    pub fedder_witness_holds: bool,
    pub quotient_f_pure: bool,
    pub fpt_before: Rational,
    pub fpt_after: Rational,
    pub a_top_before: i64,
    pub a_top_after: i64,
}

#[derive(Clone, Debug)]
pub struct FPureSequence {
    pub forms: Vec<Polynomial>,
    pub steps: Vec<SequenceStep>,
    /// Exact F-pure threshold of the input ring.
    pub fpt: Rational,
}

/// Cuts a Gorenstein F-pure ring by linear forms until its F-pure threshold
/// reaches zero; each step must lower `fpt` by one and raise `a_d` by one.
pub fn fpure_sequence(ideal: &Ideal, opts: &SearchOptions) -> Result<FPureSequence> {
    let cls = classify(ideal)?;
    if !cls.is_gorenstein {
        return Err(Error::Precondition("F-pure sequences need a Gorenstein ring".into()));
    }
    let mut ctx = FrobeniusContext::new(ideal.clone())?;
    if !ctx.is_f_pure()?.f_pure {
        return Err(Error::Precondition("ring is not F-pure".into()));
    }
    let mut cert = ctx.gorenstein_fpt()?;
    let fpt = cert.fpt_exact;
    let mut a_top = a_invariants(ctx.ideal())?.top().expect("a_d is finite");
    let mut forms = Vec::new();
    let mut steps = Vec::new();
    while cert.fpt_exact > Rational::from_integer(0) {
        let guard = PrimeGuard::from_context(&ctx, opts.splitting_levels)?;
        let found = match find_fpure_linear(&ctx, &cert.f, &guard, opts) {
            Ok(found) => found,
            Err(Error::FieldTooSmall { p, tried, .. }) => {
                return Err(Error::FieldTooSmall { p, tried, partial: forms });
            }
            Err(err) => return Err(err),
        };
        let p = ctx.ring().p() as u64;
        let cut = ctx.ideal().add_element(&found.form)?;
        let next = FrobeniusContext::with_budget(cut, ctx.budget())?;
        let witness = found.form.pow(p - 1).mul_unchecked(&cert.f);
        let fedder_witness_holds = next.fedder_colon(1)?.contains(&witness);
        let quotient_f_pure = next.is_f_pure()?.f_pure;
        let next_cert = next.gorenstein_fpt().map_err(|err| match err {
            Error::NotPrincipal(_) => Error::InvariantViolation("cut ring lost principality of its Fedder colon".into()),
            other => other,
        })?;
        let a_next = a_invariants(next.ideal())?.top().expect("a_d is finite");
        let step = SequenceStep {
            certificate: found.clone(),
            fedder_witness_holds,
            quotient_f_pure,
            fpt_before: cert.fpt_exact,
            fpt_after: next_cert.fpt_exact,
            a_top_before: a_top,
            a_top_after: a_next,
        };
        if !fedder_witness_holds || !quotient_f_pure {
            return Err(Error::InvariantViolation(format!("cut by {} is not F-pure", found.form)));
        }
        if step.fpt_after != step.fpt_before - 1 || step.a_top_after != step.a_top_before + 1 {
            return Err(Error::InvariantViolation(format!(
                "cut by {} moved (fpt, a_d) from ({}, {}) to ({}, {})",
                found.form, step.fpt_before, step.a_top_before, step.fpt_after, step.a_top_after
            )));
        }
        forms.push(found.form);
        steps.push(step);
        ctx = next;
        cert = next_cert;
        a_top = a_next;
    }
    if Rational::from_integer(forms.len() as i64) != fpt {
        return Err(Error::InvariantViolation(format!(
            "sequence has {} forms but fpt = {fpt}",
            forms.len()
        )));
    }
    Ok(FPureSequence { forms, steps, fpt })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceBoundCheck {
    pub passed: bool,
    /// The first stage that failed.
    pub failure: Option<String>,
    pub degree_sum: u64,
    /// `min_i (-a_i(R))`.
    pub bound: Option<i64>,
}

/// Checks that `forms` is a regular sequence with F-pure quotients whose
/// degrees sum to at most `min_i (-a_i(R))`.
pub fn check_fpure_sequence_bound(ctx: &FrobeniusContext, forms: &[Polynomial]) -> Result<SequenceBoundCheck> {
    let bound = a_invariants(ctx.ideal())?.min_negated();
    let degree_sum = forms.iter().map(|f| f.degree().unwrap_or(0) as u64).sum();
    let fail = |msg: String| SequenceBoundCheck {
        passed: false,
        failure: Some(msg),
        degree_sum,
        bound,
    };
    let mut current = ctx.ideal().clone();
    for (k, form) in forms.iter().enumerate() {
        if form.is_zero() || !form.is_homogeneous() {
            return Ok(fail(format!("form {k} is not a nonzero homogeneous polynomial")));
        }
        if !current.quotient(form)?.same_ideal(&current)? {
            return Ok(fail(format!("form {k} ({form}) is a zerodivisor")));
        }
        let next = current.add_element(form)?;
        if next.is_unit() {
            return Ok(fail(format!("form {k} ({form}) generates the unit ideal")));
        }
        let next_ctx = FrobeniusContext::with_budget(next.clone(), ctx.budget())?;
        if !next_ctx.is_f_pure()?.f_pure {
            return Ok(fail(format!("quotient after form {k} ({form}) is not F-pure")));
        }
        current = next;
    }
    match bound {
        Some(b) if degree_sum as i64 > b => Ok(fail(format!("degree sum {degree_sum} exceeds {b}"))),
        _ => Ok(SequenceBoundCheck {
            passed: true,
            failure: None,
            degree_sum,
            bound,
        }),
    }
}
