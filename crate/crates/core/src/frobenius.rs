//! Frobenius invariants of `R = S/I`: the trace map, Fedder colons
//! `(I^[q] : I)`, F-purity, the sequences `b_m(q)` and `ν_m(q)`, F-pure
//! threshold bounds, splitting ideals and compatibility.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::ideal::{HilbertBound, Ideal};
use crate::resolution::AInvariants;
use crate::ring::{Monomial, Polynomial, RingRef};

pub type Rational = Ratio<i64>;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// `Φ_e(g^{1/q})` on integer exponents: `c·x^α ↦ c·x^{(α - (q-1))/q}` when
/// every `α_i ≡ q - 1 (mod q)`, and `0` otherwise.
pub fn trace(g: &Polynomial, e: u32) -> Result<Polynomial> {
    if e < 1 {
        return Err(Error::Argument("trace needs e >= 1".into()));
    }
    let q = (g.ring().p() as u64)
        .checked_pow(e)
        .ok_or_else(|| Error::Argument(format!("p^{e} overflows")))?;
    let terms = g
        .terms()
        .iter()
        .filter(|(m, _)| m.exponents().iter().all(|&a| (a as u64 + 1).is_multiple_of(q)))
        .map(|(m, c)| {
            let exps: Vec<u32> = m.exponents().iter().map(|&a| ((a as u64 + 1) / q - 1) as u32).collect();
            (Monomial::from_exponents(&exps), *c)
        })
        .collect();
    Ok(Polynomial::from_terms(g.ring(), terms))
}

/// `q = p^e`, rejecting `e = 0` and overflow past `u32`.
pub(crate) fn level(p: u32, e: u32) -> Result<u32> {
    if e < 1 {
        return Err(Error::Argument("level e must be >= 1".into()));
    }
    p.checked_pow(e)
        .ok_or_else(|| Error::Argument(format!("{p}^{e} does not fit in 32 bits")))
}

/// Least-degree homogeneous element of `colon` outside `n^[q]`, taken among
/// the homogeneous components of its Gröbner basis. Ties go to the smallest
/// leading monomial.
fn least_survivor(colon: &Ideal, q: u64) -> Option<Polynomial> {
    let ring = colon.ring();
    let mut best: Option<Polynomial> = None;
    for g in colon.groebner_basis() {
        for (_, h) in g.homogeneous_components() {
            if h.in_bracket_of_max_ideal(q) {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => {
                    let (dh, db) = (h.degree().unwrap(), b.degree().unwrap());
                    dh < db
                        || (dh == db
                            && ring.cmp_monomials(h.lead_monomial().unwrap(), b.lead_monomial().unwrap()).is_lt())
                }
            };
            if better {
                best = Some(h.monic());
            }
        }
    }
    best
}

#[derive(Clone, Debug)]
pub struct FPurity {
    pub f_pure: bool,
    /// An element of `(I^[p] : I)` with a monomial outside `n^[p]`.
    pub witness: Option<Polynomial>,
    /// The witness term with all exponents below `p`.
    pub witness_term: Option<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptLevel {
    pub e: u32,
    pub q: u64,
    pub b: u64,
    pub nu: u64,
    /// `b / q`.
    pub fpt_lower: Rational,
    /// `ν / q`.
    pub c_estimate: Rational,
}

/// `(1 - q)·a_i ≤ ν(q)` and `b(q)/q ≤ -a_i` at one `(e, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInequality {
    pub e: u32,
    pub i: usize,
    pub a_i: i64,
    pub lhs: i64,
    pub nu: u64,
    pub nu_bound_holds: bool,
    pub fpt_bound_holds: bool,
}

#[derive(Clone, Debug)]
pub struct FThresholdReport {
    pub levels: Vec<FptLevel>,
    /// `min_i (-a_i)` over the finite a-invariants.
    pub fpt_upper_from_a: Option<Rational>,
    pub a_checks: Vec<AInequality>,
    /// `n - deg f / (p - 1)` when the Fedder colon is `(f) + I^[p]`, and
    /// `(f^{1+p}) + I^[p^2]` at the second level if one was computed.
    pub gorenstein_exact: Option<Rational>,
    /// False when a level hit the budget; `levels` then holds the completed prefix.
    pub complete: bool,
    pub stopped: Option<String>,
}

impl FThresholdReport {
    /// `p·b(q) ≤ b(pq)` for consecutive levels.
    pub fn b_monotone(&self, p: u64) -> bool {
        self.levels.windows(2).all(|w| p * w[0].b <= w[1].b)
    }

    pub fn fpt_lower_nondecreasing(&self) -> bool {
        self.levels.windows(2).all(|w| w[0].fpt_lower <= w[1].fpt_lower)
    }

    pub fn best_lower(&self) -> Option<Rational> {
        self.levels.last().map(|l| l.fpt_lower)
    }
}

#[derive(Clone, Debug)]
pub struct GorensteinFptCertificate {
    pub f: Polynomial,
    pub deg_f: u32,
    pub fpt_exact: Rational,
    pub principality_verified: bool,
}

#[derive(Clone, Debug)]
pub struct SplittingLevel {
    pub e: u32,
    /// Pullback of `I_e(R)` to `S`.
    pub ideal: Ideal,
    /// The cumulative intersection `I_1 ∩ ... ∩ I_e`.
    pub cumulative: Ideal,
    pub contains_defining_ideal: bool,
    pub proper: bool,
}

#[derive(Clone, Debug)]
pub struct SplittingData {
    pub levels: Vec<SplittingLevel>,
    /// `I_{e+1} ⊆ I_e` for every computed pair.
    pub chain_decreasing: bool,
    /// Candidate for the splitting prime after two equal cumulative steps.
    pub stabilized_prime: Option<Ideal>,
    pub stabilized_at: Option<u32>,
    pub sdim: Option<i64>,
    /// Per-level compatibility of the candidate, when there is one.
    pub compatibility: Option<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientLevel {
    pub e: u32,
    pub b_ring: u64,
    pub b_quotient: u64,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct QuotientComparison {
    pub levels: Vec<QuotientLevel>,
    pub fpt_lower_ring: Vec<Rational>,
    pub fpt_lower_quotient: Vec<Rational>,
    /// `dim S/J`, the sdim bound when `J` is the splitting prime candidate.
    pub quotient_dim: i64,
    /// `fptLower(R) ≤ dim S/J` at every level.
    pub dim_bound_holds: bool,
}

impl QuotientComparison {
    pub fn holds(&self) -> bool {
        self.levels.iter().all(|l| l.holds) && self.dim_bound_holds
    }
}

pub struct FrobeniusContext {
    ring: RingRef,
    ideal: Ideal,
    budget: u64,
    colons: Mutex<BTreeMap<u32, Arc<Ideal>>>,
}

impl FrobeniusContext {
    pub fn new(ideal: Ideal) -> Result<Self> {
        Self::with_budget(ideal, DEFAULT_BUDGET)
    }

    pub fn with_budget(ideal: Ideal, budget: u64) -> Result<Self> {
        if !ideal.is_homogeneous() {
            return Err(Error::Precondition("defining ideal must be homogeneous".into()));
        }
        if ideal.is_unit() {
            return Err(Error::Precondition("defining ideal must be proper".into()));
        }
        Ok(FrobeniusContext {
            ring: ideal.ring().clone(),
            ideal,
            budget,
            colons: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn p(&self) -> u32 {
        self.ring.p()
    }

    fn n(&self) -> u64 {
        self.ring.nvars() as u64
    }

    /// Refuses levels whose standard-monomial table `q^n` exceeds the budget.
    fn guard(&self, what: &str, q: u64) -> Result<()> {
        let cells = (q as u128).pow(self.ring.nvars() as u32);
        if cells > self.budget as u128 {
            return Err(Error::Budget {
                what: format!("{what} at q = {q}"),
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// `(I^[q] : I)` with `q = p^e`; the zero ideal gives `S`.
    pub fn fedder_colon(&self, e: u32) -> Result<Arc<Ideal>> {
        let q = level(self.p(), e)?;
        if let Some(c) = self.colons.lock().unwrap().get(&e) {
            return Ok(c.clone());
        }
        let colon = if self.ideal.is_zero() {
            Ideal::unit(&self.ring)
        } else {
            self.ideal.bracket_power(q as u64)?.colon(&self.ideal)?
        };
        colon.groebner_basis();
        let colon = Arc::new(colon);
        Ok(self.colons.lock().unwrap().entry(e).or_insert(colon).clone())
    }

    /// Fedder's criterion: `R` is F-pure iff `(I^[p] : I) ⊄ n^[p]`.
    pub fn is_f_pure(&self) -> Result<FPurity> {
        let colon = self.fedder_colon(1)?;
        let q = self.p() as u64;
        let witness = least_survivor(&colon, q);
        let witness_term = witness.as_ref().and_then(|w| w.term_below_bracket(q)).map(|t| t.0.clone());
        Ok(FPurity {
            f_pure: witness.is_some(),
            witness,
            witness_term,
        })
    }

    /// `b_m(q) = n(q - 1) - u`, where `u` is the least degree of an element of
    /// the Fedder colon outside `n^[q]`.
    pub fn b_invariant(&self, e: u32) -> Result<u64> {
        let q = level(self.p(), e)? as u64;
        let colon = self.fedder_colon(e)?;
        let f = least_survivor(&colon, q).ok_or(Error::NotSplit { e, q })?;
        let u = f.degree().unwrap() as u64;
        let top = self.n() * (q - 1);
        if u > top {
            return Err(Error::InvariantViolation(format!(
                "element of degree {u} outside n^[{q}] exceeds n(q - 1) = {top}"
            )));
        }
        Ok(top - u)
    }

    /// `b_m(q)` from the first degree where the Hilbert functions of
    /// `S/n^[q]` and `S/(colon + n^[q])` differ.
    pub fn b_invariant_by_hilbert(&self, e: u32) -> Result<u64> {
        let q = level(self.p(), e)?;
        self.guard("Hilbert function comparison", q as u64)?;
        let colon = self.fedder_colon(e)?;
        let bracket = Ideal::maximal_bracket(&self.ring, q);
        let full = bracket.hilbert_function(HilbertBound::Auto, self.budget)?;
        let cut = colon.sum(&bracket)?.hilbert_function(HilbertBound::Auto, self.budget)?;
        let u = (0..full.values.len())
            .find(|&d| cut.value(d as u32) != full.values[d])
            .ok_or(Error::NotSplit { e, q: q as u64 })?;
        Ok(self.n() * (q as u64 - 1) - u as u64)
    }

    /// `ν_m(q)`: the top degree of `S/(I + n^[q])`.
    pub fn nu_invariant(&self, e: u32) -> Result<u64> {
        let q = level(self.p(), e)?;
        self.guard("ν table", q as u64)?;
        let j = self.ideal.sum(&Ideal::maximal_bracket(&self.ring, q))?;
        let table = j.hilbert_function(HilbertBound::Auto, self.budget)?;
        table
            .top
            .map(u64::from)
            .ok_or_else(|| Error::InvariantViolation("S/(I + n^[q]) vanishes for a proper I".into()))
    }

    pub fn fpt_report(&self, max_e: u32, a: Option<&AInvariants>) -> Result<FThresholdReport> {
        if max_e < 1 {
            return Err(Error::Argument("maxE must be >= 1".into()));
        }
        let mut levels = Vec::new();
        let mut stopped = None;
        for e in 1..=max_e {
            match self.level_values(e) {
                Ok(l) => levels.push(l),
                Err(Error::Budget { what, budget }) if e > 1 => {
                    stopped = Some(format!("{what} exceeds budget {budget}"));
                    break;
                }
                Err(err) => return Err(err),
            }
        }
        let mut fpt_upper_from_a = None;
        let mut a_checks = Vec::new();
        if let Some(a) = a {
            fpt_upper_from_a = a.finite().map(|(_, v)| Rational::from_integer(-v)).min();
            for l in &levels {
                for (i, a_i) in a.finite() {
                    let lhs = (1 - l.q as i64) * a_i;
                    a_checks.push(AInequality {
                        e: l.e,
                        i,
                        a_i,
                        lhs,
                        nu: l.nu,
                        nu_bound_holds: lhs <= l.nu as i64,
                        fpt_bound_holds: l.fpt_lower <= Rational::from_integer(-a_i),
                    });
                }
            }
        }
        let gorenstein_exact = match self.gorenstein_fpt() {
            Ok(cert) if levels.len() < 2 || self.gorenstein_second_level_check(&cert)? => Some(cert.fpt_exact),
            Ok(_) | Err(Error::NotPrincipal(_)) => None,
            Err(err) => return Err(err),
        };
        Ok(FThresholdReport {
            levels,
            fpt_upper_from_a,
            a_checks,
            gorenstein_exact,
            complete: stopped.is_none(),
            stopped,
        })
    }

    fn level_values(&self, e: u32) -> Result<FptLevel> {
        let q = level(self.p(), e)? as u64;
        self.guard("ν table", q)?;
        let b = self.b_invariant(e)?;
        let nu = self.nu_invariant(e)?;
        let qi = q as i64;
        Ok(FptLevel {
            e,
            q,
            b,
            nu,
            fpt_lower: Rational::new(b as i64, qi),
            c_estimate: Rational::new(nu as i64, qi),
        })
    }

    /// The least-degree Fedder element `f` at `e = 1` and
    /// `fpt = n - deg f / (p - 1)`, with a check that `(f) + I^[p]` is the
    /// whole colon.
    pub fn gorenstein_fpt(&self) -> Result<GorensteinFptCertificate> {
        let p = self.p() as u64;
        let colon = self.fedder_colon(1)?;
        let f = least_survivor(&colon, p).ok_or(Error::NotSplit { e: 1, q: p })?;
        let deg_f = f.degree().unwrap();
        let principal = self.ideal.bracket_power(p)?.add_element(&f)?;
        let cert = GorensteinFptCertificate {
            deg_f,
            fpt_exact: Rational::from_integer(self.n() as i64) - Rational::new(deg_f as i64, p as i64 - 1),
            principality_verified: principal.same_ideal(&colon)?,
            f,
        };
        if cert.principality_verified {
            Ok(cert)
        } else {
            Err(Error::NotPrincipal(Box::new(cert)))
        }
    }

    /// `(I^[p^2] : I) = (f^{1+p}) + I^[p^2]` for the certified `f`.
    pub fn gorenstein_second_level_check(&self, cert: &GorensteinFptCertificate) -> Result<bool> {
        let p = self.p() as u64;
        let colon = self.fedder_colon(2)?;
        let expected = self.ideal.bracket_power(p * p)?.add_element(&cert.f.pow(1 + p))?;
        expected.same_ideal(&colon)
    }

    /// Pullback of `I_e(R)`: `n^[q] : (I^[q] : I)`.
    pub fn splitting_ideal(&self, e: u32) -> Result<Ideal> {
        let q = level(self.p(), e)?;
        let colon = self.fedder_colon(e)?;
        Ideal::maximal_bracket(&self.ring, q).colon(&colon)
    }

    pub fn splitting_prime_estimate(&self, max_e: u32) -> Result<SplittingData> {
        if max_e < 1 {
            return Err(Error::Argument("maxE must be >= 1".into()));
        }
        let mut levels: Vec<SplittingLevel> = Vec::new();
        let mut chain_decreasing = true;
        let mut stabilized_at = None;
        for e in 1..=max_e {
            let ideal = self.splitting_ideal(e)?;
            let cumulative = match levels.last() {
                None => ideal.clone(),
                Some(prev) => {
                    let inside = prev.ideal.contains_ideal(&ideal)?;
                    chain_decreasing &= inside;
                    if prev.cumulative.contains_ideal(&ideal)? {
                        ideal.clone()
                    } else {
                        prev.cumulative.intersect(&ideal)?
                    }
                }
            };
            if let Some(prev) = levels.last() {
                if stabilized_at.is_none() && prev.cumulative.same_ideal(&cumulative)? {
                    stabilized_at = Some(e);
                }
            }
            levels.push(SplittingLevel {
                e,
                contains_defining_ideal: ideal.contains_ideal(&self.ideal)?,
                proper: !ideal.is_unit(),
                ideal,
                cumulative,
            });
        }
        let stabilized_prime = stabilized_at.map(|e| levels[e as usize - 1].cumulative.clone());
        let sdim = stabilized_prime.as_ref().map(Ideal::krull_dim);
        let compatibility = match &stabilized_prime {
            Some(prime) => Some(self.is_compatible(prime, max_e)?),
            None => None,
        };
        Ok(SplittingData {
            levels,
            chain_decreasing,
            stabilized_prime,
            stabilized_at,
            sdim,
            compatibility,
        })
    }

    /// Per level `e ≤ maxE`: `(I^[q] : I) ⊆ (J^[q] : J)`. A `false` entry
    /// certifies that `J/I` is not compatible.
    pub fn is_compatible(&self, j: &Ideal, max_e: u32) -> Result<Vec<bool>> {
        if !j.contains_ideal(&self.ideal)? {
            return Err(Error::Argument("J must contain the defining ideal".into()));
        }
        (1..=max_e)
            .map(|e| {
                let q = level(self.p(), e)? as u64;
                let colon = self.fedder_colon(e)?;
                let target = if j.is_zero() {
                    Ideal::unit(&self.ring)
                } else {
                    j.bracket_power(q)?.colon(j)?
                };
                target.contains_ideal(&colon)
            })
            .collect()
    }

    /// Compares the b-sequences of `R` and `R/J` level by level.
    pub fn fpt_of_quotient_check(&self, j: &Ideal, max_e: u32) -> Result<QuotientComparison> {
        let quotient = FrobeniusContext::with_budget(j.clone(), self.budget)?;
        let quotient_dim = j.krull_dim();
        let mut levels = Vec::new();
        let mut fpt_lower_ring = Vec::new();
        let mut fpt_lower_quotient = Vec::new();
        for e in 1..=max_e {
            let q = level(self.p(), e)? as i64;
            let b_ring = self.b_invariant(e)?;
            let b_quotient = quotient.b_invariant(e)?;
            fpt_lower_ring.push(Rational::new(b_ring as i64, q));
            fpt_lower_quotient.push(Rational::new(b_quotient as i64, q));
            levels.push(QuotientLevel {
                e,
                b_ring,
                b_quotient,
                holds: b_ring <= b_quotient,
            });
        }
        let dim_bound_holds = fpt_lower_ring.iter().all(|l| *l <= Rational::from_integer(quotient_dim));
        Ok(QuotientComparison {
            levels,
            fpt_lower_ring,
            fpt_lower_quotient,
            quotient_dim,
            dim_bound_holds,
        })
    }
}
