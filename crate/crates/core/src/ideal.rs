//! Ideals of `S = F_p[x_1, ..., x_n]` with a cached reduced Gröbner basis,
//! and the operations built on it: membership, sums and products, bracket
//! powers, intersections, colons, Hilbert functions and Krull dimension.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner;
use crate::ring::{log_p, same_ring, Monomial, Polynomial, RingRef};

pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(basis) = self.gb.get() {
            let _ = gb.set(basis.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// How far [`Ideal::hilbert_function`] tabulates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertBound {
    UpTo(u32),
    /// Until the function vanishes for good; requires an Artinian quotient.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunctionTable {
    /// `values[d] = dim_K [S/J]_d`.
    pub values: Vec<u64>,
    /// Largest degree with a nonzero value, when the quotient is Artinian.
    pub top: Option<u32>,
}

impl HilbertFunctionTable {
    pub fn value(&self, d: u32) -> u64 {
        self.values.get(d as usize).copied().unwrap_or(0)
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::Context);
        }
        Ok(Self::from_gens(ring, gens))
    }

    pub(crate) fn from_gens(ring: &RingRef, gens: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<Ideal> {
        let gens = gens.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_gens(ring, gens))
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Self::from_gens(ring, Vec::new())
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Self::from_gens(ring, vec![Polynomial::one(ring)])
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &RingRef) -> Ideal {
        Self::from_gens(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect())
    }

    /// `(x_1^q, ..., x_n^q)`.
    pub fn maximal_bracket(ring: &RingRef, q: u32) -> Ideal {
        let n = ring.nvars();
        let gens = (0..n)
            .map(|i| Polynomial::term(ring, Monomial::var(n, i).pow(q), 1))
            .collect();
        Self::from_gens(ring, gens)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(Polynomial::is_monomial)
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Context)
        }
    }

    /// Reduced Gröbner basis for the ring's order, computed once and cached.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| self.compute_groebner_basis())
    }

    fn compute_groebner_basis(&self) -> Vec<Polynomial> {
        if self.is_monomial() {
            let monos: Vec<Monomial> = self.gens.iter().map(|g| g.lead_monomial().unwrap().clone()).collect();
            let mut basis: Vec<Polynomial> = minimal_monomials(monos)
                .into_iter()
                .map(|m| Polynomial::term(&self.ring, m, 1))
                .collect();
            basis.sort_by(|a, b| self.ring.cmp_monomials(b.lead_monomial().unwrap(), a.lead_monomial().unwrap()));
            return basis;
        }
        let gens = self.gens.iter().map(|g| vec![g.clone()]).collect();
        groebner::groebner_basis(&self.ring, 1, &[0], gens)
            .into_iter()
            .map(|mut v| v.pop().unwrap())
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis()
            .iter()
            .map(|g| g.lead_monomial().unwrap().clone())
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::Context);
        }
        Ok(self.reduce(f))
    }

    pub(crate) fn reduce(&self, f: &Polynomial) -> Polynomial {
        let basis: Vec<Vec<Polynomial>> = self.groebner_basis().iter().map(|g| vec![g.clone()]).collect();
        let refs: Vec<&Vec<Polynomial>> = basis.iter().collect();
        groebner::normal_form(vec![f.clone()], &refs).pop().unwrap()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().first().is_some_and(Polynomial::is_constant)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        Ok(other.gens.iter().all(|g| self.contains(g)))
    }

    /// Equality as ideals, tested by comparing reduced Gröbner bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_gens(&self.ring, gens))
    }

    pub fn add_element(&self, f: &Polynomial) -> Result<Ideal> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::Context);
        }
        let mut gens = self.gens.clone();
        gens.push(f.clone());
        Ok(Self::from_gens(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul_unchecked(b));
            }
        }
        Ok(Self::from_gens(&self.ring, gens))
    }

    /// `self^r`; `r = 0` gives the unit ideal.
    pub fn power(&self, r: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..r {
            acc = acc.product(self).expect("same ring");
            acc.gens.sort_by(|a, b| self.ring.cmp_monomials(b.lead_monomial().unwrap(), a.lead_monomial().unwrap()));
            acc.gens.dedup();
        }
        acc
    }

    /// The Frobenius bracket power `(g^q : g a generator)`, `q = p^e`.
    pub fn bracket_power(&self, q: u64) -> Result<Ideal> {
        let p = self.ring.p() as u64;
        if log_p(q, p).is_none() {
            return Err(Error::Argument(format!("{q} is not a power of {p}")));
        }
        let q = u32::try_from(q).map_err(|_| Error::Argument(format!("{q} is too large")))?;
        Ok(Self::from_gens(&self.ring, self.gens.iter().map(|g| g.frobenius(q)).collect()))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        if self.is_monomial() && other.is_monomial() {
            let mut gens = Vec::new();
            for a in self.groebner_basis() {
                for b in other.groebner_basis() {
                    gens.push(a.lead_monomial().unwrap().lcm(b.lead_monomial().unwrap()));
                }
            }
            return Ok(self.monomial_ideal(gens));
        }
        Ok(self.intersect_by_elimination(other))
    }

    /// `A ∩ B` as the `t`-free part of `t·A + (1 - t)·B` in `S[t]`.
    pub fn intersect_by_elimination(&self, other: &Ideal) -> Ideal {
        let ext = self.ring.with_elimination_vars(&["t"]);
        let n = self.ring.nvars();
        let t = Polynomial::var(&ext, n);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&ext).mul_unchecked(&t)).collect();
        gens.extend(other.gens.iter().map(|g| g.embed(&ext).mul_unchecked(&one_minus_t)));
        let big = Ideal::from_gens(&ext, gens);
        let kept: Vec<Polynomial> = big
            .groebner_basis()
            .iter()
            .filter_map(|g| g.restrict(&self.ring))
            .collect();
        Ideal::from_gens(&self.ring, kept)
    }

    fn monomial_ideal(&self, monos: Vec<Monomial>) -> Ideal {
        let gens = minimal_monomials(monos)
            .into_iter()
            .map(|m| Polynomial::term(&self.ring, m, 1))
            .collect();
        Ideal::from_gens(&self.ring, gens)
    }

    /// `self : (g)`.
    pub fn quotient(&self, g: &Polynomial) -> Result<Ideal> {
        if !same_ring(g.ring(), &self.ring) {
            return Err(Error::Context);
        }
        if g.is_zero() {
            return Err(Error::Argument("colon by the zero ideal".into()));
        }
        if self.contains(g) {
            return Ok(Ideal::unit(&self.ring));
        }
        if self.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_monomial() && g.is_monomial() {
            let m = g.lead_monomial().unwrap();
            let gens = self
                .groebner_basis()
                .iter()
                .map(|a| {
                    let a = a.lead_monomial().unwrap();
                    m.quotient_of(&a.lcm(m))
                })
                .collect();
            return Ok(self.monomial_ideal(gens));
        }
        if self.gens.len() == 1 {
            // S is a domain: (F) : (g) = (F / g) whenever g divides F.
            if let Some(q) = self.gens[0].div_exact(g) {
                return Ok(Ideal::from_gens(&self.ring, vec![q]));
            }
        }
        Ok(self.quotient_by_intersection(g))
    }

    /// `self : (g) = (self ∩ (g)) / g`, always through elimination.
    pub fn quotient_by_intersection(&self, g: &Polynomial) -> Ideal {
        let principal = Ideal::from_gens(&self.ring, vec![g.clone()]);
        let meet = self.intersect_by_elimination(&principal);
        let gens = meet
            .gens
            .iter()
            .map(|h| h.div_exact(g).expect("elements of (g) are multiples of g"))
            .collect();
        Ideal::from_gens(&self.ring, gens)
    }

    /// `self : other = ∩_i (self : g_i)`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if other.is_zero() {
            return Err(Error::Argument("colon by the zero ideal".into()));
        }
        let mut acc: Option<Ideal> = None;
        for g in other.minimal_or_gb_generators() {
            let part = self.quotient(&g)?;
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part)?,
            });
            if acc.as_ref().unwrap().same_ideal(self)? {
                break;
            }
        }
        Ok(acc.unwrap())
    }

    /// `self : other` computed only through elimination.
    pub fn colon_by_intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if other.is_zero() {
            return Err(Error::Argument("colon by the zero ideal".into()));
        }
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let part = self.quotient_by_intersection(g);
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect_by_elimination(&part),
            });
        }
        Ok(acc.unwrap())
    }

    fn minimal_or_gb_generators(&self) -> Vec<Polynomial> {
        if self.gens.len() <= self.groebner_basis().len() {
            self.gens.clone()
        } else {
            self.groebner_basis().to_vec()
        }
    }

    /// A minimal homogeneous generating set; its size is `μ(I)`.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>> {
        if !self.is_homogeneous() {
            return Err(Error::Precondition("minimal generators need a homogeneous ideal".into()));
        }
        let gens = self.gens.iter().map(|g| vec![g.clone()]).collect();
        Ok(groebner::minimal_generators(&self.ring, &[0], gens)
            .into_iter()
            .map(|mut v| v.pop().unwrap())
            .collect())
    }

    /// `dim_K [S/J]_d`, counted as standard monomials outside the
    /// leading-term ideal.
    pub fn hilbert_function(&self, bound: HilbertBound, budget: u64) -> Result<HilbertFunctionTable> {
        if !self.is_homogeneous() {
            return Err(Error::Precondition("Hilbert function needs a homogeneous ideal".into()));
        }
        let n = self.ring.nvars();
        let leads = self.leading_monomials();
        if leads.iter().any(Monomial::is_one) {
            let len = match bound {
                HilbertBound::UpTo(d) => d as usize + 1,
                HilbertBound::Auto => 1,
            };
            return Ok(HilbertFunctionTable {
                values: vec![0; len],
                top: None,
            });
        }
        let max_deg = match bound {
            HilbertBound::UpTo(d) => d,
            HilbertBound::Auto => {
                let mut cap = 0u32;
                for i in 0..n {
                    let pure = leads
                        .iter()
                        .filter(|m| m.support_mask() == 1 << i)
                        .map(|m| m.exponents()[i])
                        .min()
                        .ok_or(Error::NotArtinian)?;
                    cap += pure - 1;
                }
                cap
            }
        };
        let values = count_standard_monomials(&leads, n, max_deg, budget)?;
        let top = match bound {
            HilbertBound::Auto => values.iter().rposition(|&v| v > 0).map(|d| d as u32),
            HilbertBound::UpTo(_) => None,
        };
        Ok(HilbertFunctionTable { values, top })
    }

    /// Krull dimension of `S/J` from the leading-term ideal: the largest set
    /// of variables containing the support of no leading monomial. The unit
    /// ideal gives -1.
    pub fn krull_dim(&self) -> i64 {
        let n = self.ring.nvars();
        let leads = self.leading_monomials();
        if leads.iter().any(Monomial::is_one) {
            return -1;
        }
        let masks: Vec<u64> = leads.iter().map(Monomial::support_mask).collect();
        let mut best = 0;
        for subset in 0u64..(1 << n) {
            let size = subset.count_ones() as i64;
            if size > best && masks.iter().all(|m| m & !subset != 0) {
                best = size;
            }
        }
        best
    }
}

/// Drops monomials divisible by another one in the list.
fn minimal_monomials(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by_key(Monomial::degree);
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(monos.len());
    for m in monos {
        if !out.iter().any(|k| k.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Counts monomials of each degree `0..=max_deg` outside the monomial ideal
/// generated by `leads`, by depth-first search pruned at the first divisible
/// monomial. `budget` caps the number of visited monomials.
fn count_standard_monomials(leads: &[Monomial], n: usize, max_deg: u32, budget: u64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; max_deg as usize + 1];
    let mut exps = vec![0u32; n];
    let mut visited = 0u64;
    fn divisible(leads: &[Monomial], exps: &[u32]) -> bool {
        leads.iter().any(|m| m.exponents().iter().zip(exps).all(|(a, b)| a <= b))
    }
    fn walk(
        var: usize,
        deg: u32,
        exps: &mut Vec<u32>,
        leads: &[Monomial],
        max_deg: u32,
        counts: &mut [u64],
        visited: &mut u64,
        budget: u64,
    ) -> Result<()> {
        let n = exps.len();
        if var == n {
            counts[deg as usize] += 1;
            *visited += 1;
            if *visited > budget {
                return Err(Error::Budget {
                    what: "standard monomial enumeration".into(),
                    budget,
                });
            }
            return Ok(());
        }
        let mut e = 0;
        loop {
            exps[var] = e;
            if divisible(leads, exps) {
                break;
            }
            walk(var + 1, deg + e, exps, leads, max_deg, counts, visited, budget)?;
            if deg + e >= max_deg {
                break;
            }
            e += 1;
        }
        exps[var] = 0;
        Ok(())
    }
    walk(0, 0, &mut exps, leads, max_deg, &mut counts, &mut visited, budget)?;
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    const BUDGET: u64 = 10_000_000;

    fn ring(p: u64, vars: &[&str]) -> RingRef {
        Ring::grevlex(p, vars).unwrap()
    }

    fn poly(r: &RingRef, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::parse(r, gens).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn groebner_basis_examples() {
        let r = ring(5, &["x", "y"]);
        assert_eq!(ideal(&r, &["x+y", "x-y"]).groebner_basis(), &[poly(&r, "x"), poly(&r, "y")]);
        let r3 = ring(5, &["x", "y", "z"]);
        let mono = ideal(&r3, &["x*y", "x*z", "y*z"]);
        let gb: Vec<String> = mono.groebner_basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(gb, vec!["x*y", "x*z", "y*z"]);
        assert!(Ideal::zero(&r).groebner_basis().is_empty());
    }

    #[test]
    fn groebner_basis_of_two_conics_over_f7() {
        // Hand run: the leading monomials x^2 and y^2 are coprime, so the only
        // S-pair reduces to zero and the generators are already a reduced basis.
        // The quotient has the four standard monomials 1, x, y, x*y, matching
        // the Bezout count 2 * 2.
        let r = ring(7, &["x", "y"]);
        let j = ideal(&r, &["x^2 - y", "y^2 - x"]);
        assert_eq!(j.groebner_basis(), &[poly(&r, "x^2 - y"), poly(&r, "y^2 - x")]);
        assert!(!j.contains(&poly(&r, "x*y")));
        assert!(j.contains(&poly(&r, "x^3 - x*y")));
        assert!(j.contains(&poly(&r, "x^4 - x")));
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(5, &["x", "y", "z"]);
        assert!(ideal(&r, &["x"]).normal_form(&poly(&r, "x^2")).unwrap().is_zero());
        assert_eq!(ideal(&r, &["y"]).normal_form(&poly(&r, "x+1")).unwrap(), poly(&r, "x+1"));
        assert!(ideal(&r, &["x*y", "x*z", "y*z"]).normal_form(&poly(&r, "x^2*y^2")).unwrap().is_zero());
        let other = ring(3, &["x", "y", "z"]);
        assert!(matches!(ideal(&r, &["x"]).normal_form(&poly(&other, "x")), Err(Error::Context)));
    }

    #[test]
    fn ideal_operation_examples() {
        let r = ring(5, &["x", "y"]);
        let s = ideal(&r, &["x"]).sum(&ideal(&r, &["y"])).unwrap();
        assert!(s.same_ideal(&ideal(&r, &["x", "y"])).unwrap());
        let sq = ideal(&r, &["x", "y"]).power(2);
        assert!(sq.same_ideal(&ideal(&r, &["x^2", "x*y", "y^2"])).unwrap());
        assert!(ideal(&r, &["x^2+y^2"]).power(0).is_unit());
    }

    #[test]
    fn bracket_power_examples() {
        let r = ring(5, &["x", "y"]);
        let b = ideal(&r, &["x", "y"]).bracket_power(5).unwrap();
        assert_eq!(b.generators(), &[poly(&r, "x^5"), poly(&r, "y^5")]);
        let r2 = ring(2, &["x", "y"]);
        assert_eq!(ideal(&r2, &["x+y"]).bracket_power(2).unwrap().generators(), &[poly(&r2, "x^2+y^2")]);
        let j = ideal(&r, &["x^2 + 3*x*y"]);
        assert!(j.bracket_power(1).unwrap().same_ideal(&j).unwrap());
        assert!(matches!(j.bracket_power(10), Err(Error::Argument(_))));
    }

    #[test]
    fn intersection_examples() {
        let r = ring(5, &["x", "y", "z"]);
        let a = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(a.same_ideal(&ideal(&r, &["x*y"])).unwrap());
        // Oracle: lcm of generator pairs gives (x, xz, xy, yz) = (x, yz).
        let b = ideal(&r, &["x", "y"]).intersect(&ideal(&r, &["x", "z"])).unwrap();
        assert!(b.same_ideal(&ideal(&r, &["x", "y*z"])).unwrap());
        let b2 = ideal(&r, &["x", "y"]).intersect_by_elimination(&ideal(&r, &["x", "z"]));
        assert!(b2.same_ideal(&ideal(&r, &["x", "y*z"])).unwrap());
        let j = ideal(&r, &["x^2 + y*z", "x*y"]);
        assert!(j.intersect(&Ideal::unit(&r)).unwrap().same_ideal(&j).unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = ring(5, &["x", "y", "z"]);
        let c = ideal(&r, &["x^2"]).colon(&ideal(&r, &["x"])).unwrap();
        assert!(c.same_ideal(&ideal(&r, &["x"])).unwrap());
        let c = ideal(&r, &["x^5*y^5"]).colon(&ideal(&r, &["x*y"])).unwrap();
        assert!(c.same_ideal(&ideal(&r, &["x^4*y^4"])).unwrap());
        // Oracle: monomial colon by exponent subtraction.
        let c = ideal(&r, &["x*y", "x*z", "y*z"]).colon(&ideal(&r, &["x"])).unwrap();
        assert!(c.same_ideal(&ideal(&r, &["y", "z"])).unwrap());
        let c2 = ideal(&r, &["x*y", "x*z", "y*z"]).colon_by_intersection(&ideal(&r, &["x"])).unwrap();
        assert!(c2.same_ideal(&ideal(&r, &["y", "z"])).unwrap());
        assert!(matches!(ideal(&r, &["x"]).colon(&Ideal::zero(&r)), Err(Error::Argument(_))));
    }

    #[test]
    fn colon_and_intersection_containments() {
        let r = ring(3, &["x", "y", "z"]);
        let a = ideal(&r, &["x^2 + y*z", "x*y*z"]);
        let b = ideal(&r, &["x + y", "z^2"]);
        let meet = a.intersect(&b).unwrap();
        assert!(a.contains_ideal(&meet).unwrap());
        assert!(b.contains_ideal(&meet).unwrap());
        let c = a.colon(&b).unwrap();
        assert!(a.contains_ideal(&c.product(&b).unwrap()).unwrap());
        assert!(c.contains_ideal(&a).unwrap());
    }

    #[test]
    fn hilbert_function_examples() {
        let r = ring(5, &["x", "y"]);
        let h = ideal(&r, &["x^2", "y^2"]).hilbert_function(HilbertBound::Auto, BUDGET).unwrap();
        assert_eq!(h.values, vec![1, 2, 1]);
        assert_eq!(h.top, Some(2));
        let r3 = ring(5, &["x", "y", "z"]);
        let h = Ideal::zero(&r3).hilbert_function(HilbertBound::UpTo(6), BUDGET).unwrap();
        for d in 0..=6 {
            assert_eq!(h.value(d), binomial(d as u64 + 2, 2));
        }
        for p in [2u64, 3, 5, 7] {
            let r = ring(p, &["x", "y", "z"]);
            let q = p.to_string();
            let j = ideal(&r, &["x*y", "x*z", "y*z", &format!("x^{q}"), &format!("y^{q}"), &format!("z^{q}")]);
            let h = j.hilbert_function(HilbertBound::Auto, BUDGET).unwrap();
            assert_eq!(h.top, Some(p as u32 - 1));
            // Standard monomials are 1 and x^i, y^i, z^i for 1 <= i < p.
            assert_eq!(h.values.iter().sum::<u64>(), 1 + 3 * (p - 1));
        }
        assert!(matches!(
            ideal(&r3, &["x^2"]).hilbert_function(HilbertBound::Auto, BUDGET),
            Err(Error::NotArtinian)
        ));
        assert!(matches!(
            Ideal::zero(&r3).hilbert_function(HilbertBound::UpTo(50), 100),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn hilbert_function_is_complementary() {
        let r = ring(3, &["x", "y", "z"]);
        let j = ideal(&r, &["x^2 + y*z", "x*y^2 + z^3"]);
        let h = j.hilbert_function(HilbertBound::UpTo(8), BUDGET).unwrap();
        let s = Ideal::zero(&r).hilbert_function(HilbertBound::UpTo(8), BUDGET).unwrap();
        // dim [J]_d computed independently as the rank of the span of m*g.
        for d in 0..=8u32 {
            let in_j = graded_piece_dim(&j, d);
            assert_eq!(h.value(d) + in_j, s.value(d), "degree {d}");
        }
    }

    /// Rank of the span of `m * g` over monomials `m` and generators `g`
    /// with `deg(m*g) = d`, by Gaussian elimination.
    fn graded_piece_dim(j: &Ideal, d: u32) -> u64 {
        let r = j.ring();
        let p = r.p() as u64;
        let n = r.nvars();
        let monos = monomials_of_degree(n, d);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for g in j.generators() {
            let dg = g.degree().unwrap();
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(n, d - dg) {
                let prod = g.mul_term(&m, 1);
                let mut row = vec![0u64; monos.len()];
                for (mm, c) in prod.terms() {
                    let idx = monos.iter().position(|x| x == mm).unwrap();
                    row[idx] = *c as u64;
                }
                rows.push(row);
            }
        }
        rank_mod_p(rows, p)
    }

    fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        if n == 1 {
            return vec![Monomial::from_exponents(&[d])];
        }
        let mut out = Vec::new();
        for e in 0..=d {
            for rest in monomials_of_degree(n - 1, d - e) {
                let mut exps = vec![e];
                exps.extend_from_slice(rest.exponents());
                out.push(Monomial::from_exponents(&exps));
            }
        }
        out
    }

    fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> u64 {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(rank, piv);
            let inv = (1..p).find(|x| x * rows[rank][c] % p == 1).unwrap();
            for i in 0..rows.len() {
                if i != rank && rows[i][c] != 0 {
                    let f = rows[i][c] * inv % p;
                    for k in 0..cols {
                        rows[i][k] = (rows[i][k] + p * p - f * rows[rank][k] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank as u64
    }

    #[test]
    fn krull_dimension_examples() {
        let r = ring(5, &["x", "y", "z"]);
        assert_eq!(Ideal::zero(&r).krull_dim(), 3);
        assert_eq!(ideal(&r, &["x*y", "x*z", "y*z"]).krull_dim(), 1);
        assert_eq!(ideal(&r, &["x^2 + y*z"]).krull_dim(), 2);
        assert_eq!(Ideal::unit(&r).krull_dim(), -1);
    }

    #[test]
    fn gb_is_independent_of_generator_order() {
        let r = ring(7, &["x", "y", "z"]);
        let a = ideal(&r, &["x^2 + y*z", "x*y - z^2", "y^3 + x*z^2"]);
        let b = ideal(&r, &["y^3 + x*z^2", "x^2 + y*z", "x*y - z^2"]);
        assert_eq!(a.groebner_basis(), b.groebner_basis());
    }

    #[test]
    fn minimal_generator_count() {
        let r = ring(5, &["x", "y", "z"]);
        let j = ideal(&r, &["x*y", "x*y*z", "x*z", "y*z", "x^2*y + x*z^2"]);
        assert_eq!(j.minimal_generators().unwrap().len(), 3);
    }
}
