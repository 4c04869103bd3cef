mod common;

use cmlab_core::algebra::{FreeVector, Monomial, Polynomial, TermOrder};
use cmlab_core::artinian::agree_check;
use cmlab_core::graded::homdim::{bass_numbers, depth, hom_dim_report, ring_depth, HomDim};
use cmlab_core::graded::hilbert::Laurent;
use cmlab_core::graded::{cut_by_general_sop, matlis_dual, CutMode, GradedModule};
use cmlab_core::invariants::module_invariants;
use cmlab_core::lab::{random_artinian_ring, random_module as explorer_module, ExplorerParams};
use common::{random_module, ring, test_rings};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_poly(r: &cmlab_core::graded::GradedRing, g: &mut ChaCha8Rng, max_deg: u32, homogeneous: bool) -> Polynomial {
    let f = r.field();
    let top = g.gen_range(1..=max_deg);
    let mut terms = Vec::new();
    for d in if homogeneous { top..=top } else { 0..=top } {
        for m in Monomial::all_of_degree(r.nvars(), d) {
            if g.gen_bool(0.4) {
                terms.push((m, g.gen_range(1..f.characteristic())));
            }
        }
    }
    Polynomial::from_terms(f, terms)
}

/// `sum_c v[c] * cols[c]`, the image of `v` under the map with columns `cols`.
fn apply(r: &cmlab_core::graded::GradedRing, v: &FreeVector, cols: &[FreeVector]) -> FreeVector {
    let f = r.field();
    let mut acc = FreeVector::zero();
    for t in v.terms() {
        let img = cols[t.comp as usize].mul_term(f, &t.mono, t.coeff);
        acc = acc.add(f, TermOrder::Grevlex, &img);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn normal_form_is_idempotent_and_differs_by_an_ideal_element(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = ring(&["x", "y", "z"], &[]);
        let gens: Vec<Polynomial> = (0..g.gen_range(1..=3)).map(|_| random_poly(&s, &mut g, 3, true)).filter(|p| !p.is_zero()).collect();
        let names: Vec<String> = gens.iter().map(|p| p.format(s.field(), s.vars())).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let r = ring(&["x", "y", "z"], &refs);
        let f = random_poly(&r, &mut g, 4, false);
        let nf = r.reduce_poly(&f);
        prop_assert_eq!(r.reduce_poly(&nf), nf.clone());
        let diff = f.sub(r.field(), &nf);
        prop_assert!(r.reduce_poly(&diff).is_zero());
        // no term of the normal form is divisible by a leading monomial
        for (m, _) in nf.terms() {
            for b in r.ideal_gb().elements() {
                prop_assert!(!b.lead().unwrap().mono.divides(m));
            }
        }
    }

    #[test]
    fn resolution_differentials_compose_to_zero(seed in any::<u64>()) {
        let mut g = rng(seed);
        let rings = test_rings();
        let (_, r) = &rings[g.gen_range(0..rings.len())];
        let (_, m) = random_module(r, &mut g);
        let res = m.resolve(4).unwrap();
        for i in 1..4 {
            let lower = res.differential(i);
            for col in res.differential(i + 1) {
                let img = r.reduce_vector(&apply(r, col, lower));
                prop_assert!(img.is_zero(), "d{} d{} != 0", i, i + 1);
            }
        }
    }

    #[test]
    fn hilbert_numerator_is_the_euler_characteristic_of_the_resolution(seed in any::<u64>()) {
        let mut g = rng(seed);
        let vars: &[&str] = if g.gen_bool(0.5) { &["x", "y"] } else { &["x", "y", "z"] };
        let s = ring(vars, &[]);
        let (_, m) = random_module(&s, &mut g);
        let res = m.resolve(vars.len() + 1).unwrap();
        prop_assert!(res.length().is_some());
        let mut chi = Laurent::zero();
        for ((i, d), b) in res.betti_table() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            chi = chi.add(&Laurent::monomial(d, sign * b as i64));
        }
        prop_assert_eq!(chi, m.hilbert_series().unwrap().numerator.clone());
    }

    #[test]
    fn hilbert_series_is_additive(seed in any::<u64>()) {
        let mut g = rng(seed);
        let rings = test_rings();
        let (_, r) = &rings[g.gen_range(0..rings.len())];
        let (_, m) = random_module(r, &mut g);
        let (_, n) = random_module(r, &mut g);
        let sum = m.direct_sum(&n).unwrap();
        let hm = m.hilbert_series().unwrap();
        let hn = n.hilbert_series().unwrap();
        prop_assert_eq!(&sum.hilbert_series().unwrap().numerator, &hm.numerator.add(&hn.numerator));
        // 0 -> lM -> M -> M/lM -> 0
        let l = random_poly(r, &mut g, 1, true);
        let gens: Vec<FreeVector> = (0..m.rank()).map(|j| l.to_vector(r.field(), TermOrder::Grevlex, j as u32)).collect();
        let lm = m.submodule(&gens).unwrap();
        let q = m.quotient_by(std::slice::from_ref(&l)).unwrap();
        let total = lm.hilbert_series().unwrap().numerator.add(&q.hilbert_series().unwrap().numerator);
        prop_assert_eq!(total, hm.numerator.clone());
    }

    #[test]
    fn auslander_buchsbaum(seed in any::<u64>()) {
        let mut g = rng(seed);
        let rings = test_rings();
        let (_, r) = &rings[g.gen_range(0..rings.len())];
        let (_, m) = random_module(r, &mut g);
        let dr = ring_depth(r).unwrap();
        let hd = hom_dim_report(&m).unwrap();
        let res = m.resolve(dr + 1).unwrap();
        match hd.pd {
            HomDim::Finite(p) => {
                prop_assert_eq!(p + depth(&m).unwrap(), dr);
                prop_assert_eq!(res.length(), Some(p));
            }
            HomDim::Infinite => prop_assert!(res.betti(dr + 1).unwrap() > 0),
        }
    }

    #[test]
    fn bass_numbers_of_a_regular_quotient(seed in any::<u64>(), s in 1usize..=2) {
        let mut g = rng(seed);
        let choices: &[(&[&str], &[&str])] = &[
            (&["x", "y"], &[]),
            (&["x", "y", "z"], &[]),
            (&["x", "y"], &["x^2"]),
            (&["x", "y", "z"], &["x*y"]),
            (&["x", "y", "z"], &["x^2 + y*z"]),
        ];
        let (v, i) = choices[g.gen_range(0..choices.len())];
        let r = ring(v, i);
        prop_assume!(r.dim() >= s);
        let m = if g.gen_bool(0.5) { GradedModule::ring_module(r.clone()) } else { cmlab_core::graded::canonical_module(&r).unwrap() };
        let cut = cut_by_general_sop(&m, s, CutMode::RegularOnly, &mut g).unwrap();
        let top = 4;
        let mu = bass_numbers(&m, top + s).unwrap();
        let mu_q = bass_numbers(&cut.module, top).unwrap();
        for j in 0..=top {
            let expect: u64 = (0..=s).map(|i| binom(s, i) * mu[j + i]).sum();
            prop_assert_eq!(mu_q[j], expect, "j = {}", j);
        }
    }

    #[test]
    fn multiplicity_bound_on_cm_modules(seed in any::<u64>()) {
        let mut g = rng(seed);
        let rings = test_rings();
        let (_, r) = &rings[g.gen_range(0..rings.len())];
        let (_, m) = random_module(r, &mut g);
        let inv = module_invariants(&m).unwrap();
        if inv.is_cm {
            prop_assert!(inv.e >= inv.min_mult_bound());
            prop_assert_eq!(inv.has_min_mult, inv.e == inv.min_mult_bound());
        }
    }

    #[test]
    fn matlis_duality(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = random_artinian_ring(&ExplorerParams { max_vars: 2, ..Default::default() }, &mut g).unwrap();
        let (_, m) = random_module(&r, &mut g);
        let d = matlis_dual(&m).unwrap();
        let a = module_invariants(&m).unwrap();
        let b = module_invariants(&d).unwrap();
        prop_assert_eq!(a.length, b.length);
        prop_assert_eq!(a.mu as u64, b.type_);
        prop_assert_eq!(a.type_, b.mu as u64);
        let dd = matlis_dual(&d).unwrap();
        prop_assert_eq!(&dd.hilbert_series().unwrap().numerator, &m.hilbert_series().unwrap().numerator);
    }

    #[test]
    fn graded_engine_agrees_with_oracle(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = random_artinian_ring(&ExplorerParams { max_vars: 3, ..Default::default() }, &mut g).unwrap();
        let m = if g.gen_bool(0.3) { explorer_module(&r, 1, &mut g).unwrap() } else { random_module(&r, &mut g).1 };
        let a = agree_check(&m, 4).unwrap();
        prop_assert!(a.agree, "{:?}", a.discrepancy);
    }
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}
