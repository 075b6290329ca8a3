//! Buchberger's algorithm for submodules of graded free modules `S^r`.
//!
//! Ideals are the rank-one case. Module terms are ordered position over
//! term: a lower component index is larger, ties are broken by the ring's
//! monomial order. Pairs are pruned with the Gebauer–Möller criteria and
//! selected by smallest sugar degree, then smallest lcm.

use std::cmp::Ordering;

use crate::ring::{Monomial, Polynomial, RingRef};

/// A vector of `S^r`, one polynomial per component.
pub type Vector = Vec<Polynomial>;

pub(crate) fn zero_vector(ring: &RingRef, rank: usize) -> Vector {
    vec![Polynomial::zero(ring); rank]
}

pub(crate) fn is_zero(v: &[Polynomial]) -> bool {
    v.iter().all(Polynomial::is_zero)
}

/// Leading component, monomial and coefficient.
pub(crate) fn lead(v: &[Polynomial]) -> Option<(usize, &Monomial, u32)> {
    v.iter()
        .enumerate()
        .find_map(|(c, f)| f.lead_term().map(|(m, k)| (c, m, *k)))
}

pub(crate) fn cmp_terms(ring: &RingRef, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| ring.cmp_monomials(a.1, b.1))
}

/// Degree of a homogeneous vector under the given component shifts.
pub(crate) fn vector_degree(v: &[Polynomial], shifts: &[i64]) -> Option<i64> {
    v.iter()
        .zip(shifts)
        .find_map(|(f, s)| f.lead_monomial().map(|m| m.degree() as i64 + s))
}

fn sugar_of(v: &[Polynomial], shifts: &[i64]) -> i64 {
    v.iter()
        .zip(shifts)
        .filter_map(|(f, s)| f.degree().map(|d| d as i64 + s))
        .max()
        .unwrap_or(0)
}

fn scale_vector(v: &[Polynomial], c: u32) -> Vector {
    v.iter().map(|f| f.scale(c)).collect()
}

fn monic_vector(v: Vector) -> Vector {
    match lead(&v) {
        Some((_, _, 1)) | None => v,
        Some((_, _, c)) => {
            let inv = v[0].ring().inv(c);
            scale_vector(&v, inv)
        }
    }
}

struct Leads {
    comps: Vec<usize>,
    monos: Vec<Monomial>,
    coeffs: Vec<u32>,
}

impl Leads {
    fn of(basis: &[&Vector]) -> Self {
        let mut comps = Vec::with_capacity(basis.len());
        let mut monos = Vec::with_capacity(basis.len());
        let mut coeffs = Vec::with_capacity(basis.len());
        for b in basis {
            let (c, m, k) = lead(b).expect("basis elements are nonzero");
            comps.push(c);
            monos.push(m.clone());
            coeffs.push(k);
        }
        Leads { comps, monos, coeffs }
    }

    fn divisor(&self, comp: usize, m: &Monomial) -> Option<usize> {
        (0..self.monos.len()).find(|&i| self.comps[i] == comp && self.monos[i].divides(m))
    }
}

/// Full normal form of `v` with respect to `basis` (every term reduced).
pub(crate) fn normal_form(v: Vector, basis: &[&Vector]) -> Vector {
    if basis.is_empty() || is_zero(&v) {
        return v;
    }
    let leads = Leads::of(basis);
    reduce_with(v, basis, &leads)
}

fn reduce_with(mut work: Vector, basis: &[&Vector], leads: &Leads) -> Vector {
    let ring = work[0].ring().clone();
    let p = ring.p();
    let rank = work.len();
    let mut rem: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
    for c in 0..rank {
        while let Some((m, k)) = work[c].lead_term().cloned() {
            match leads.divisor(c, &m) {
                Some(i) => {
                    let b = basis[i];
                    let factor = leads.monos[i].quotient_of(&m);
                    let ratio = (k as u64 * ring.inv(leads.coeffs[i]) as u64 % p as u64) as u32;
                    let coeff = if ratio == 0 { 0 } else { p - ratio };
                    for j in c..rank {
                        if !b[j].is_zero() {
                            work[j] = work[j].add_scaled(&b[j], coeff, Some(&factor));
                        }
                    }
                }
                None => {
                    let terms = work[c].terms()[1..].to_vec();
                    work[c] = Polynomial::from_sorted_terms(&ring, terms);
                    rem[c].push((m, k));
                }
            }
        }
    }
    rem.into_iter()
        .map(|terms| Polynomial::from_sorted_terms(&ring, terms))
        .collect()
}

struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
    sugar: i64,
}

struct Engine<'a> {
    ring: RingRef,
    shifts: &'a [i64],
    is_ideal: bool,
    polys: Vec<Vector>,
    comps: Vec<usize>,
    leads: Vec<Monomial>,
    sugar: Vec<i64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn active_basis(&self) -> (Vec<&Vector>, Leads) {
        let basis: Vec<&Vector> = (0..self.polys.len())
            .filter(|&i| self.active[i])
            .map(|i| &self.polys[i])
            .collect();
        let leads = Leads::of(&basis);
        (basis, leads)
    }

    fn insert(&mut self, v: Vector, sugar: i64) {
        let (comp, lm, _) = lead(&v).expect("nonzero");
        let lm = lm.clone();
        let h = self.polys.len();
        self.polys.push(v);
        self.comps.push(comp);
        self.leads.push(lm.clone());
        self.sugar.push(sugar);
        self.active.push(false);

        // Gebauer–Möller update.
        let mut candidates: Vec<(usize, Monomial)> = (0..h)
            .filter(|&g| self.active[g] && self.comps[g] == comp)
            .map(|g| (g, lm.lcm(&self.leads[g])))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, l)) = candidates.pop() {
            let coprime = self.is_ideal && lm.is_coprime(&self.leads[g]);
            let dominated = candidates.iter().any(|(_, l2)| l2.divides(&l))
                || kept.iter().any(|(_, l2)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l));
            }
        }
        let leads = &self.leads;
        self.pairs.retain(|pr| {
            !(pr.comp == comp
                && lm.divides(&pr.lcm)
                && leads[pr.i].lcm(&lm) != pr.lcm
                && leads[pr.j].lcm(&lm) != pr.lcm)
        });
        for (g, l) in kept {
            if self.is_ideal && lm.is_coprime(&self.leads[g]) {
                continue;
            }
            let s = (self.sugar[h] - lm.degree() as i64).max(self.sugar[g] - self.leads[g].degree() as i64)
                + l.degree() as i64;
            self.pairs.push(Pair {
                i: g,
                j: h,
                comp,
                lcm: l,
                sugar: s,
            });
        }
        for g in 0..h {
            if self.active[g] && self.comps[g] == comp && lm.divides(&self.leads[g]) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn select(&mut self) -> Option<Pair> {
        let ring = &self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar
                .cmp(&pb.sugar)
                .then_with(|| cmp_terms(ring, (pa.comp, &pa.lcm), (pb.comp, &pb.lcm)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_vector(&self, pair: &Pair) -> Vector {
        let a = &self.polys[pair.i];
        let b = &self.polys[pair.j];
        let fa = self.leads[pair.i].quotient_of(&pair.lcm);
        let fb = self.leads[pair.j].quotient_of(&pair.lcm);
        let minus_one = self.ring.p() - 1;
        a.iter()
            .zip(b)
            .map(|(x, y)| x.mul_term(&fa, 1).add_scaled(y, minus_one, Some(&fb)))
            .collect()
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens` in a free
/// module of the given rank. Elements are monic and sorted by leading term,
/// largest first. `shifts` only steer pair selection.
pub(crate) fn groebner_basis(ring: &RingRef, rank: usize, shifts: &[i64], gens: Vec<Vector>) -> Vec<Vector> {
    debug_assert_eq!(shifts.len(), rank);
    let mut inputs: Vec<Vector> = gens.into_iter().filter(|v| !is_zero(v)).map(monic_vector).collect();
    inputs.sort_by(|a, b| {
        let (ca, ma, _) = lead(a).unwrap();
        let (cb, mb, _) = lead(b).unwrap();
        cmp_terms(ring, (ca, ma), (cb, mb))
    });
    inputs.dedup();
    let mut engine = Engine {
        ring: ring.clone(),
        shifts,
        is_ideal: rank == 1,
        polys: Vec::new(),
        comps: Vec::new(),
        leads: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for v in inputs {
        let s = sugar_of(&v, engine.shifts);
        engine.insert(v, s);
    }
    while let Some(pair) = engine.select() {
        let s = engine.s_vector(&pair);
        let (basis, leads) = engine.active_basis();
        let h = reduce_with(s, &basis, &leads);
        if !is_zero(&h) {
            engine.insert(monic_vector(h), pair.sugar);
        }
    }
    let actives: Vec<Vector> = (0..engine.polys.len())
        .filter(|&i| engine.active[i])
        .map(|i| std::mem::take(&mut engine.polys[i]))
        .collect();
    reduce_basis(ring, actives)
}

/// Minimalizes and inter-reduces a Gröbner basis.
fn reduce_basis(ring: &RingRef, mut basis: Vec<Vector>) -> Vec<Vector> {
    basis.sort_by(|a, b| {
        let (ca, ma, _) = lead(a).unwrap();
        let (cb, mb, _) = lead(b).unwrap();
        cmp_terms(ring, (ca, ma), (cb, mb))
    });
    // Drop elements whose leading term is divisible by another one's.
    let mut minimal: Vec<Vector> = Vec::with_capacity(basis.len());
    for v in basis {
        let (c, m, _) = lead(&v).unwrap();
        let redundant = minimal.iter().any(|w| {
            let (cw, mw, _) = lead(w).unwrap();
            cw == c && mw.divides(m)
        });
        if !redundant {
            let (c, m, _) = lead(&v).unwrap();
            let m = m.clone();
            minimal.retain(|w| {
                let (cw, mw, _) = lead(w).unwrap();
                !(cw == c && m.divides(mw))
            });
            minimal.push(v);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Vector> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, w)| w)
            .collect();
        reduced.push(monic_vector(normal_form(minimal[i].clone(), &others)));
    }
    reduced.sort_by(|a, b| {
        let (ca, ma, _) = lead(a).unwrap();
        let (cb, mb, _) = lead(b).unwrap();
        cmp_terms(ring, (cb, mb), (ca, ma))
    });
    reduced
}

/// Generators of the kernel of the map `S^m -> S^r` whose columns are
/// `columns`, computed by elimination: a Gröbner basis of the graph
/// `(column_i, e_i)` in `S^(r+m)`; elements vanishing on the first `r`
/// components are syzygies.
pub(crate) fn kernel(
    ring: &RingRef,
    target_shifts: &[i64],
    source_shifts: &[i64],
    columns: &[Vector],
) -> Vec<Vector> {
    let r = target_shifts.len();
    let m = source_shifts.len();
    debug_assert_eq!(columns.len(), m);
    let mut shifts = target_shifts.to_vec();
    shifts.extend_from_slice(source_shifts);
    let gens: Vec<Vector> = columns
        .iter()
        .enumerate()
        .map(|(i, col)| {
            let mut v = col.clone();
            v.extend(zero_vector(ring, m));
            v[r + i] = Polynomial::one(ring);
            v
        })
        .collect();
    groebner_basis(ring, r + m, &shifts, gens)
        .into_iter()
        .filter(|v| lead(v).is_some_and(|(c, _, _)| c >= r))
        .map(|v| v[r..].to_vec())
        .collect()
}

/// Selects a minimal generating set of a graded submodule from homogeneous
/// generators: scan by degree, keep an element only if it is not in the
/// span of the ones already kept.
pub(crate) fn minimal_generators(ring: &RingRef, shifts: &[i64], gens: Vec<Vector>) -> Vec<Vector> {
    let rank = shifts.len();
    let mut gens: Vec<Vector> = gens.into_iter().filter(|v| !is_zero(v)).collect();
    gens.sort_by(|a, b| {
        let da = vector_degree(a, shifts).unwrap();
        let db = vector_degree(b, shifts).unwrap();
        let (ca, ma, _) = lead(a).unwrap();
        let (cb, mb, _) = lead(b).unwrap();
        da.cmp(&db).then_with(|| cmp_terms(ring, (ca, ma), (cb, mb)))
    });
    let mut kept: Vec<Vector> = Vec::new();
    let mut gb: Vec<Vector> = Vec::new();
    for g in gens {
        let refs: Vec<&Vector> = gb.iter().collect();
        if !is_zero(&normal_form(g.clone(), &refs)) {
            kept.push(g);
            gb = groebner_basis(ring, rank, shifts, kept.clone());
        }
    }
    kept
}
