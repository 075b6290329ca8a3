//! Polynomial arithmetic over a prime field `F_p` in a fixed set of
//! variables, with grevlex, lex and elimination monomial orders.
//!
//! Polynomials keep their terms strictly descending in the ring's order with
//! no zero coefficients, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `Some(e)` when `q = p^e`.
pub fn log_p(q: u64, p: u64) -> Option<u32> {
    if q == 0 {
        return None;
    }
    let mut e = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        e += 1;
    }
    (x == 1).then_some(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// The last `eliminate` variables form a block that is compared first
    /// (grevlex inside the block), then grevlex on the remaining variables.
    Elimination { eliminate: usize },
}

impl MonomialOrder {
    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination { eliminate } => format!("elim{eliminate}"),
        }
    }
}

/// An element of `F_p`, kept in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u32,
    modulus: u32,
}

impl PrimeFieldElement {
    pub fn new(value: i64, modulus: u32) -> Self {
        PrimeFieldElement {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::new(self.value as i64 + other.value as i64, self.modulus)
    }

    pub fn sub(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::new(self.value as i64 - other.value as i64, self.modulus)
    }

    pub fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        PrimeFieldElement {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn pow(self, exp: u64) -> Self {
        PrimeFieldElement {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.modulus as u64 - 2))
    }
}

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// The ambient ring `F_p[x_1, ..., x_n]` together with its monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    p: u32,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(p: u64, vars: Vec<String>, order: MonomialOrder) -> Result<RingRef> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Argument(format!("{p} is not a prime below 2^31")));
        }
        if vars.is_empty() {
            return Err(Error::Argument("a ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Argument(format!("duplicate variable name `{v}`")));
            }
        }
        if let MonomialOrder::Elimination { eliminate } = order {
            if eliminate == 0 || eliminate > vars.len() {
                return Err(Error::Argument("elimination block out of range".into()));
            }
        }
        Ok(Arc::new(Ring {
            p: p as u32,
            vars,
            order,
        }))
    }

    pub fn grevlex(p: u64, vars: &[&str]) -> Result<RingRef> {
        Ring::new(p, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::Grevlex)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.exps.len(), b.exps.len());
        match self.order {
            MonomialOrder::Grevlex => grevlex(a, b, 0, a.exps.len()),
            MonomialOrder::Lex => a.exps.iter().cmp(b.exps.iter()),
            MonomialOrder::Elimination { eliminate } => {
                let split = a.exps.len() - eliminate;
                grevlex(a, b, split, a.exps.len()).then_with(|| grevlex(a, b, 0, split))
            }
        }
    }

    /// The same variables with `extra` appended, ordered so that the new
    /// variables are eliminated first.
    pub(crate) fn with_elimination_vars(&self, extra: &[&str]) -> RingRef {
        let mut vars = self.vars.clone();
        for name in extra {
            let mut candidate = name.to_string();
            while vars.contains(&candidate) {
                candidate.push('_');
            }
            vars.push(candidate);
        }
        Arc::new(Ring {
            p: self.p,
            vars,
            order: MonomialOrder::Elimination {
                eliminate: extra.len(),
            },
        })
    }

    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        pow_mod(a, self.p as u64 - 2, self.p)
    }

    pub fn element(&self, value: i64) -> PrimeFieldElement {
        PrimeFieldElement::new(value, self.p)
    }
}

fn grevlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let da: u64 = a.exps[lo..hi].iter().map(|&e| e as u64).sum();
    let db: u64 = b.exps[lo..hi].iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (lo..hi).rev() {
            match a.exps[i].cmp(&b.exps[i]) {
                Ordering::Equal => continue,
                other => return other.reverse(),
            }
        }
        Ordering::Equal
    })
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, n),
            degree: 0,
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            exps: exps.iter().copied().collect(),
            degree: exps.iter().sum(),
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
            degree: self.degree * k,
        }
    }

    /// True when every exponent is below `q`, i.e. the monomial is outside
    /// the bracket power `(x_1^q, ..., x_n^q)`.
    pub fn below_bracket(&self, q: u64) -> bool {
        self.exps.iter().all(|&e| (e as u64) < q)
    }

    pub(crate) fn extended(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat_n(0, extra));
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    pub(crate) fn truncated(&self, n: usize) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self.exps[..n].iter().copied().collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub(crate) fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | (1 << i))
    }
}

pub type Term = (Monomial, u32);

#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        let c = ring.element(c).value();
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn term(ring: &RingRef, m: Monomial, c: u32) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let c = c % ring.p();
        Polynomial {
            ring: ring.clone(),
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zero coefficients.
    pub fn from_terms(ring: &RingRef, terms: Vec<Term>) -> Self {
        let p = ring.p();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let slot = acc.entry(m).or_insert(0);
            *slot = add_mod(*slot, c % p, p);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0 && t.1 < ring.p()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut parts: BTreeMap<u32, Vec<Term>> = BTreeMap::new();
        for t in &self.terms {
            parts.entry(t.0.degree()).or_default().push(t.clone());
        }
        parts
            .into_iter()
            .map(|(d, terms)| (d, Polynomial::from_sorted_terms(&self.ring, terms)))
            .collect()
    }

    /// True when the polynomial lies in `(x_1^q, ..., x_n^q)`.
    pub fn in_bracket_of_max_ideal(&self, q: u64) -> bool {
        self.terms.iter().all(|t| !t.0.below_bracket(q))
    }

    /// A term whose monomial has all exponents below `q`, if any.
    pub fn term_below_bracket(&self, q: u64) -> Option<&Term> {
        self.terms.iter().find(|t| t.0.below_bracket(q))
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Context)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_scaled(other, 1, None))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_scaled(other, self.ring.p() - 1, None))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * m * other`, computed by a single merge.
    pub(crate) fn add_scaled(&self, other: &Polynomial, c: u32, m: Option<&Monomial>) -> Polynomial {
        let p = self.ring.p();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(mm, cc)| (m.map_or_else(|| mm.clone(), |m| m.mul(mm)), mul_mod(*cc, c, p)))
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ring.cmp_monomials(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let t = b.next().unwrap();
                    if t.1 != 0 {
                        out.push(t);
                    }
                }
                Ordering::Equal => {
                    let x = a.next().unwrap();
                    let y = b.next().unwrap();
                    let s = add_mod(x.1, y.1, p);
                    if s != 0 {
                        out.push((x.0.clone(), s));
                    }
                }
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let p = self.ring.p();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), neg_mod(*c, p))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let p = self.ring.p();
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, cc)| (m.clone(), mul_mod(*cc, c, p))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let p = self.ring.p();
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(mm, cc)| (m.mul(mm), mul_mod(*cc, c, p))).collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, *c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, *c);
        }
        let p = self.ring.p();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = add_mod(*slot, mul_mod(*ca, *cb, p), p);
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    /// Raises every monomial to the `q`-th power. Coefficients are fixed
    /// because `c^p = c` in `F_p`, so for `q` a power of `p` this is `f^q`.
    pub fn frobenius(&self, q: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.pow(q), *c)).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Polynomial {
        let p = self.ring.p() as u64;
        if k == 0 {
            return Polynomial::one(&self.ring);
        }
        if k >= p {
            // f^k = (f^(k / p))^p * f^(k mod p), and the p-th power is Frobenius.
            let high = self.pow(k / p).frobenius(p as u32);
            return high.mul_unchecked(&self.pow(k % p));
        }
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> Polynomial {
        match self.lead_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.inv(c)),
        }
    }

    /// Exact quotient `self / divisor` when the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.lead_term()?;
        let inv = self.ring.inv(*lc);
        let p = self.ring.p();
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.lead_term().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = mul_mod(c, inv, p);
            rest = rest.add_scaled(divisor, neg_mod(qc, p), Some(&qm));
            quotient.push((qm, qc));
        }
        Some(Polynomial::from_sorted_terms(&self.ring, quotient))
    }

    /// Re-expresses the polynomial in `target`, whose variables extend this
    /// ring's variables by `target.nvars() - n` trailing ones.
    pub(crate) fn embed(&self, target: &RingRef) -> Polynomial {
        let extra = target.nvars() - self.ring.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.extended(extra), *c)).collect(),
        )
    }

    /// Inverse of [`Polynomial::embed`]; `None` if a dropped variable occurs.
    pub(crate) fn restrict(&self, target: &RingRef) -> Option<Polynomial> {
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.exponents()[n..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((m.truncated(n), *c));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    pub fn parse(ring: &RingRef, text: &str) -> Result<Polynomial> {
        Parser::new(ring, text).parse()
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (v, &e) in self.ring.vars().iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parser for `[coeff*] var[^exp] {* var[^exp]}` terms joined by `+`/`-`.
struct Parser<'a> {
    ring: &'a RingRef,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a RingRef, text: &str) -> Self {
        Parser {
            ring,
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::parse(0, self.pos + 1, message))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u128> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        // Reduce digit by digit so arbitrarily long literals are accepted.
        let p = self.ring.p() as u128;
        Ok(digits.bytes().fold(0u128, |acc, d| (acc * 10 + (d - b'0') as u128) % p))
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        match digits.parse::<u32>() {
            Ok(e) => Ok(e),
            Err(_) => {
                self.pos = start;
                self.err("expected a non-negative exponent")
            }
        }
    }

    fn ident(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        if name.is_empty() {
            return self.err("expected a variable or coefficient");
        }
        match self.ring.var_index(&name) {
            Some(i) => Ok(i),
            None => {
                self.pos = start;
                self.err(format!("unknown variable `{name}`"))
            }
        }
    }

    fn factor(&mut self, exps: &mut [u32], coeff: &mut u128) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let k = self.number()?;
                *coeff = *coeff * k % self.ring.p() as u128;
                Ok(())
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let v = self.ident()?;
                let mut e = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    e = self.exponent()?;
                }
                exps[v] += e;
                Ok(())
            }
            _ => self.err("expected a variable or coefficient"),
        }
    }

    fn parse(mut self) -> Result<Polynomial> {
        let n = self.ring.nvars();
        let p = self.ring.p() as u128;
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut negative = false;
            match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some('+') if !first => self.pos += 1,
                Some('-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(_) if first => {}
                Some(c) => return self.err(format!("unexpected `{c}`")),
            }
            first = false;
            let mut exps = vec![0u32; n];
            let mut coeff = 1u128;
            self.factor(&mut exps, &mut coeff)?;
            while self.peek() == Some('*') {
                self.pos += 1;
                self.factor(&mut exps, &mut coeff)?;
            }
            if let Some(c) = self.peek() {
                if c != '+' && c != '-' {
                    return self.err(format!("unexpected `{c}`"));
                }
            }
            let mut c = coeff as u32;
            if negative {
                c = ((p - coeff) % p) as u32;
            }
            terms.push((Monomial::from_exponents(&exps), c));
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}
