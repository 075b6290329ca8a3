//! Minimal graded free resolutions of `S/I`, Betti tables, a-invariants via
//! `Ext^k(S/I, S)`, and the Cohen–Macaulay / Gorenstein classification.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frobenius::Rational;
use crate::groebner::{self, Vector};
use crate::ideal::Ideal;
use crate::ring::{Polynomial, RingRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeModule {
    /// `j` for each summand `S(-j)`.
    pub shifts: Vec<i64>,
}

impl GradedFreeModule {
    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
}

/// A matrix stored by columns; column `c` is the image of the `c`-th basis
/// element of the source.
pub type Matrix = Vec<Vector>;

#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub ring: RingRef,
    /// `modules[k] = F_k`.
    pub modules: Vec<GradedFreeModule>,
    /// `maps[k] : F_{k+1} -> F_k`.
    pub maps: Vec<Matrix>,
}

impl GradedComplex {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `d_k ∘ d_{k+1} = 0` for every consecutive pair.
    pub fn composes_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| {
            let (outer, inner) = (&w[0], &w[1]);
            inner.iter().all(|col| apply(outer, col).iter().all(Polynomial::is_zero))
        })
    }

    /// Entry `(r, c)` of `maps[k]` is zero or homogeneous of degree
    /// `shift_{k+1}(c) - shift_k(r)`.
    pub fn entries_homogeneous(&self) -> bool {
        self.maps.iter().enumerate().all(|(k, m)| {
            m.iter().enumerate().all(|(c, col)| {
                col.iter().enumerate().all(|(r, f)| {
                    f.is_zero()
                        || (f.is_homogeneous()
                            && f.degree().unwrap() as i64
                                == self.modules[k + 1].shifts[c] - self.modules[k].shifts[r])
                })
            })
        })
    }

    /// Location of a nonzero constant entry, if any.
    pub fn unit_entry(&self) -> Option<(usize, usize, usize)> {
        for (k, m) in self.maps.iter().enumerate() {
            for (c, col) in m.iter().enumerate() {
                for (r, f) in col.iter().enumerate() {
                    if !f.is_zero() && f.is_constant() {
                        return Some((k, r, c));
                    }
                }
            }
        }
        None
    }
}

/// `Σ_j v_j · column_j`.
fn apply(m: &Matrix, v: &[Polynomial]) -> Vector {
    let ring = v[0].ring();
    let rank = m.first().map_or(0, Vec::len);
    let mut out = groebner::zero_vector(ring, rank);
    for (coef, col) in v.iter().zip(m) {
        if coef.is_zero() {
            continue;
        }
        for (o, entry) in out.iter_mut().zip(col) {
            *o = o.add_scaled(&coef.mul_unchecked(entry), 1, None);
        }
    }
    out
}

/// Transpose of a column-stored matrix with `rows` rows.
fn transpose(m: &Matrix, rows: usize) -> Matrix {
    (0..rows).map(|r| m.iter().map(|col| col[r].clone()).collect()).collect()
}

/// Minimal graded free resolution of `S/I` by iterated syzygies, each
/// module trimmed to a minimal generating set.
pub fn free_resolution(ideal: &Ideal) -> Result<GradedComplex> {
    if !ideal.is_homogeneous() {
        return Err(Error::Precondition("resolution needs a homogeneous ideal".into()));
    }
    if ideal.is_unit() {
        return Err(Error::Precondition("resolution needs a proper ideal".into()));
    }
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let mut modules = vec![GradedFreeModule { shifts: vec![0] }];
    let mut maps: Vec<Matrix> = Vec::new();
    let gens = ideal.minimal_generators()?;
    if gens.is_empty() {
        return Ok(GradedComplex { ring, modules, maps });
    }
    modules.push(GradedFreeModule {
        shifts: gens.iter().map(|g| g.degree().unwrap() as i64).collect(),
    });
    maps.push(gens.into_iter().map(|g| vec![g]).collect());
    while maps.len() < n {
        let k = maps.len();
        let target = &modules[k - 1].shifts;
        let source = modules[k].shifts.clone();
        let syz = groebner::kernel(&ring, target, &source, &maps[k - 1]);
        let minimal = groebner::minimal_generators(&ring, &source, syz);
        if minimal.is_empty() {
            break;
        }
        modules.push(GradedFreeModule {
            shifts: minimal.iter().map(|v| groebner::vector_degree(v, &source).unwrap()).collect(),
        });
        maps.push(minimal);
    }
    let complex = GradedComplex { ring, modules, maps };
    if !complex.composes_to_zero() {
        return Err(Error::InvariantViolation("resolution maps do not compose to zero".into()));
    }
    if !complex.entries_homogeneous() {
        return Err(Error::InvariantViolation("resolution has an inhomogeneous entry".into()));
    }
    if let Some((map, row, col)) = complex.unit_entry() {
        return Err(Error::Minimality { map, row, col });
    }
    Ok(complex)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    /// `(i, j) ↦ β_{i,j}`; only positive entries are stored.
    pub entries: BTreeMap<(usize, i64), u64>,
    pub pd: usize,
    pub reg: i64,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, i64::MIN)..=(i, i64::MAX)).map(|(_, v)| v).sum()
    }

    /// Largest `j` with `β_{i,j} ≠ 0`.
    pub fn max_shift(&self, i: usize) -> Option<i64> {
        self.entries.range((i, i64::MIN)..=(i, i64::MAX)).map(|(&(_, j), _)| j).max()
    }

    /// `dim_K [S/I]_t` for `t = 0..=up_to` from the alternating sum
    /// `Σ (-1)^i β_{i,j} C(t - j + n - 1, n - 1)`.
    pub fn hilbert_function(&self, n: usize, up_to: u32) -> Vec<i64> {
        (0..=up_to as i64)
            .map(|t| {
                self.entries
                    .iter()
                    .map(|(&(i, j), &b)| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        sign * b as i64 * binomial(t - j + n as i64 - 1, n as i64 - 1)
                    })
                    .sum()
            })
            .collect()
    }
}

fn binomial(top: i64, k: i64) -> i64 {
    if top < k || k < 0 {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (top - i) / (i + 1))
}

pub fn betti_table(complex: &GradedComplex) -> Result<BettiTable> {
    if let Some((map, row, col)) = complex.unit_entry() {
        return Err(Error::Minimality { map, row, col });
    }
    let mut entries = BTreeMap::new();
    for (i, m) in complex.modules.iter().enumerate() {
        for &j in &m.shifts {
            *entries.entry((i, j)).or_insert(0) += 1;
        }
    }
    let pd = complex.modules.len() - 1;
    let reg = entries.keys().map(|&(i, j)| j - i as i64).max().unwrap_or(0);
    Ok(BettiTable { entries, pd, reg })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInvariants {
    /// `values[i] = a_i(R)` for `0 ≤ i ≤ d`; `None` is `-∞`.
    pub values: Vec<Option<i64>>,
    pub d: usize,
}

impl AInvariants {
    pub fn get(&self, i: usize) -> Option<i64> {
        self.values.get(i).copied().flatten()
    }

    pub fn top(&self) -> Option<i64> {
        self.get(self.d)
    }

    /// `(i, a_i)` for every finite a-invariant.
    pub fn finite(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.values.iter().enumerate().filter_map(|(i, v)| v.map(|a| (i, a)))
    }

    /// `min_i (-a_i)` over finite entries.
    pub fn min_negated(&self) -> Option<i64> {
        self.finite().map(|(_, a)| -a).min()
    }
}

/// `a_{n-k}(R) = -n - indeg Ext^k(S/I, S)`, with `Ext^k` read off the dual
/// of the minimal resolution.
pub fn a_invariants(ideal: &Ideal) -> Result<AInvariants> {
    let complex = free_resolution(ideal)?;
    a_invariants_from(ideal, &complex)
}

pub fn a_invariants_from(ideal: &Ideal, complex: &GradedComplex) -> Result<AInvariants> {
    let ring = &complex.ring;
    let n = ring.nvars();
    let d = ideal.krull_dim();
    if d < 0 {
        return Err(Error::Precondition("a-invariants need a proper ideal".into()));
    }
    let d = d as usize;
    let mut values = vec![None; d + 1];
    let pd = complex.modules.len() - 1;
    for k in 0..=pd {
        if let Some(indeg) = ext_initial_degree(complex, k) {
            let i = n as i64 - k as i64;
            if i < 0 || i as usize > d {
                return Err(Error::InvariantViolation(format!(
                    "Ext^{k} is nonzero outside the range n - d ≤ k"
                )));
            }
            values[i as usize] = Some(-(n as i64) - indeg);
        }
    }
    if values[d].is_none() {
        return Err(Error::InvariantViolation("top a-invariant is -∞".into()));
    }
    Ok(AInvariants { values, d })
}

/// Least degree of an element of `ker(d_{k+1}^T) / im(d_k^T)`, or `None`
/// when that homology vanishes.
fn ext_initial_degree(complex: &GradedComplex, k: usize) -> Option<i64> {
    let ring = &complex.ring;
    let rank = complex.modules[k].rank();
    let dual: Vec<i64> = complex.modules[k].shifts.iter().map(|s| -s).collect();
    let kernel: Vec<Vector> = match complex.maps.get(k) {
        None => (0..rank)
            .map(|i| {
                let mut v = groebner::zero_vector(ring, rank);
                v[i] = Polynomial::one(ring);
                v
            })
            .collect(),
        Some(m) => {
            let next: Vec<i64> = complex.modules[k + 1].shifts.iter().map(|s| -s).collect();
            let t = transpose(m, rank);
            groebner::kernel(ring, &next, &dual, &t)
        }
    };
    // Rows of d_k generate im(d_k^T) inside G_k^*.
    let image: Vec<Vector> = match k {
        0 => Vec::new(),
        _ => transpose(&complex.maps[k - 1], complex.modules[k - 1].rank()),
    };
    let gb = groebner::groebner_basis(ring, rank, &dual, image);
    let refs: Vec<&Vector> = gb.iter().collect();
    kernel
        .into_iter()
        .filter(|v| !groebner::is_zero(&groebner::normal_form(v.clone(), &refs)))
        .filter_map(|v| groebner::vector_degree(&v, &dual))
        .min()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub dim: i64,
    pub depth: i64,
    pub pd: usize,
    pub is_cm: bool,
    pub cm_type: u64,
    pub is_gorenstein: bool,
}

pub fn classify(ideal: &Ideal) -> Result<Classification> {
    let complex = free_resolution(ideal)?;
    let betti = betti_table(&complex)?;
    Ok(classify_from(ideal, &betti))
}

pub fn classify_from(ideal: &Ideal, betti: &BettiTable) -> Classification {
    let n = ideal.ring().nvars() as i64;
    let dim = ideal.krull_dim();
    let pd = betti.pd;
    let is_cm = pd as i64 == n - dim;
    let cm_type = betti.total(pd);
    Classification {
        dim,
        depth: n - pd as i64,
        pd,
        is_cm,
        cm_type,
        is_gorenstein: is_cm && cm_type == 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologicalBounds {
    pub pd: usize,
    pub mu: usize,
    pub reg: i64,
    pub dim: i64,
    pub fpt: Option<Rational>,
    /// Whether the ring is F-pure, so that both inequalities must hold.
    pub asserted: bool,
    /// `pd ≤ μ`.
    pub pd_bound: bool,
    /// `reg ≤ dim - fpt`, when `fpt` is known.
    pub reg_bound: Option<bool>,
}

pub fn homological_bounds(ideal: &Ideal, fpt: Option<Rational>, f_pure: bool) -> Result<HomologicalBounds> {
    let complex = free_resolution(ideal)?;
    let betti = betti_table(&complex)?;
    let mu = complex.modules.get(1).map_or(0, GradedFreeModule::rank);
    let dim = ideal.krull_dim();
    Ok(HomologicalBounds {
        pd: betti.pd,
        mu,
        reg: betti.reg,
        dim,
        fpt,
        asserted: f_pure,
        pd_bound: betti.pd <= mu,
        reg_bound: fpt.map(|f| Rational::from_integer(betti.reg) <= Rational::from_integer(dim) - f),
    })
}
