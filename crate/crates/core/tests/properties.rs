use std::cmp::Ordering;

use fthresh::frobenius::trace;
use fthresh::ideal::{HilbertBound, Ideal};
use fthresh::ring::{Monomial, MonomialOrder, Polynomial, Ring, RingRef};
use proptest::prelude::*;

fn ring(p: u64, order: MonomialOrder) -> RingRef {
    Ring::new(p, vec!["x".into(), "y".into(), "z".into()], order).unwrap()
}

fn exps(max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, 3)
}

fn poly_terms(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
    prop::collection::vec((exps(max_exp), 1u32..1000), 0..=max_terms)
}

fn build(ring: &RingRef, terms: &[(Vec<u32>, u32)]) -> Polynomial {
    let ts = terms
        .iter()
        .map(|(e, c)| (Monomial::from_exponents(e), c % ring.p()))
        .collect();
    Polynomial::from_terms(ring, ts)
}

fn homogeneous(ring: &RingRef, degree: u32, coeffs: &[u32]) -> Polynomial {
    let mut terms = Vec::new();
    let mut k = 0;
    for a in 0..=degree {
        for b in 0..=degree - a {
            let c = coeffs.get(k).copied().unwrap_or(0) % ring.p();
            terms.push((Monomial::from_exponents(&[a, b, degree - a - b]), c));
            k += 1;
        }
    }
    Polynomial::from_terms(ring, terms)
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop::sample::select(vec![MonomialOrder::Grevlex, MonomialOrder::Lex])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_is_additive(p in prime(), f in poly_terms(3, 5), g in poly_terms(3, 5)) {
        let r = ring(p, MonomialOrder::Grevlex);
        let (f, g) = (build(&r, &f), build(&r, &g));
        let q = p as u32;
        prop_assert_eq!((&f + &g).frobenius(q), &f.frobenius(q) + &g.frobenius(q));
        prop_assert_eq!(f.frobenius(q), f.pow(p));
    }

    #[test]
    fn monomial_orders_are_multiplicative_well_orders(o in order(), a in exps(4), b in exps(4), c in exps(4)) {
        let r = ring(7, o);
        let (a, b, c) = (Monomial::from_exponents(&a), Monomial::from_exponents(&b), Monomial::from_exponents(&c));
        let ab = r.cmp_monomials(&a, &b);
        prop_assert_eq!(ab, r.cmp_monomials(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(r.cmp_monomials(&a.mul(&c), &b.mul(&c)), ab);
        prop_assert_ne!(r.cmp_monomials(&Monomial::one(3), &a), Ordering::Greater);
        if ab != Ordering::Greater && r.cmp_monomials(&b, &c) != Ordering::Greater {
            prop_assert_ne!(r.cmp_monomials(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order(
        p in prime(),
        o in order(),
        gens in prop::collection::vec((1u32..=3, prop::collection::vec(0u32..100, 10)), 1..=3),
        seed in any::<u64>(),
    ) {
        let r = ring(p, o);
        let polys: Vec<Polynomial> = gens.iter().map(|(d, c)| homogeneous(&r, *d, c)).collect();
        let mut shuffled = polys.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        shuffled.push(&polys[0] + &polys[k - 1]);
        let a = Ideal::new(&r, polys).unwrap();
        let b = Ideal::new(&r, shuffled).unwrap();
        prop_assert_eq!(a.groebner_basis(), b.groebner_basis());
        for g in a.groebner_basis() {
            prop_assert_eq!(g.lead_coeff(), Some(1));
        }
    }

    #[test]
    fn monomial_membership_is_divisibility(
        gens in prop::collection::vec(exps(5), 1..=4),
        probe in exps(7),
        mix in prop::collection::vec(1u32..5, 4),
    ) {
        let r = ring(5, MonomialOrder::Grevlex);
        let mons: Vec<Monomial> = gens.iter().map(|e| Monomial::from_exponents(e)).collect();
        // A triangular change of generators hides the monomial structure.
        let polys: Vec<Polynomial> = (0..mons.len())
            .map(|i| {
                let mut terms = vec![(mons[i].clone(), 1)];
                if i + 1 < mons.len() {
                    terms.push((mons[i + 1].clone(), mix[i]));
                }
                Polynomial::from_terms(&r, terms)
            })
            .collect();
        let ideal = Ideal::new(&r, polys).unwrap();
        let m = Monomial::from_exponents(&probe);
        let expected = mons.iter().any(|g| g.divides(&m));
        prop_assert_eq!(ideal.contains(&Polynomial::term(&r, m, 1)), expected);
    }

    #[test]
    fn trace_composes(p in prime(), g in poly_terms(12, 8)) {
        let r = ring(p, MonomialOrder::Grevlex);
        let g = build(&r, &g);
        prop_assert_eq!(trace(&trace(&g, 1).unwrap(), 1).unwrap(), trace(&g, 2).unwrap());
    }

    #[test]
    fn trace_is_inverse_frobenius_linear(p in prime(), f in poly_terms(2, 3), g in poly_terms(6, 6)) {
        let r = ring(p, MonomialOrder::Grevlex);
        let (f, g) = (build(&r, &f), build(&r, &g));
        let lhs = trace(&(&f.frobenius(p as u32) * &g), 1).unwrap();
        prop_assert_eq!(lhs, &f * &trace(&g, 1).unwrap());
    }

    #[test]
    fn trace_of_the_socle_monomial_is_one(p in prime(), e in 1u32..=2) {
        let r = ring(p, MonomialOrder::Grevlex);
        let q1 = p.pow(e) as u32 - 1;
        let socle = Polynomial::term(&r, Monomial::from_exponents(&[q1, q1, q1]), 1);
        prop_assert_eq!(trace(&socle, e).unwrap(), Polynomial::one(&r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn colon_commutes_with_bracket_powers(
        p in prop::sample::select(vec![2u64, 3]),
        gens in prop::collection::vec(exps(2), 1..=3),
        a in exps(1),
        b in exps(1),
    ) {
        let r = ring(p, MonomialOrder::Grevlex);
        let mons: Vec<Polynomial> = gens.iter().map(|e| Polynomial::term(&r, Monomial::from_exponents(e), 1)).collect();
        let ideal = Ideal::new(&r, mons).unwrap();
        let ma = Monomial::from_exponents(&a);
        let mb = Monomial::from_exponents(&b);
        prop_assume!(ma != mb && ma.degree() == mb.degree());
        let g = Polynomial::from_terms(&r, vec![(ma, 1), (mb, 1)]);
        let q = p;
        let lhs = ideal.quotient(&g).unwrap().bracket_power(q).unwrap();
        let rhs = ideal.bracket_power(q).unwrap().quotient(&g.frobenius(q as u32)).unwrap();
        prop_assert!(lhs.same_ideal(&rhs).unwrap());
    }

    #[test]
    fn hilbert_function_is_additive_along_a_variable(
        gens in prop::collection::vec(exps(3), 1..=4),
        v in 0usize..3,
    ) {
        let r = ring(3, MonomialOrder::Grevlex);
        let mons: Vec<Polynomial> = gens.iter().map(|e| Polynomial::term(&r, Monomial::from_exponents(e), 1)).collect();
        let ideal = Ideal::new(&r, mons).unwrap();
        let x = Polynomial::var(&r, v);
        let colon = ideal.quotient(&x).unwrap();
        let plus = ideal.add_element(&x).unwrap();
        let top = 7;
        let h = |i: &Ideal| i.hilbert_function(HilbertBound::UpTo(top), 1_000_000).unwrap();
        let (hi, hc, hp) = (h(&ideal), h(&colon), h(&plus));
        for d in 0..=top {
            let shifted = if d == 0 { 0 } else { hc.value(d - 1) };
            prop_assert_eq!(hi.value(d), shifted + hp.value(d), "degree {}", d);
        }
    }
}
