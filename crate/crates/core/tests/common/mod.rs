#![allow(dead_code)]

use std::sync::Arc;

use cmlab_core::algebra::{Monomial, Polynomial};
use cmlab_core::graded::ring::ring_from_strings;
use cmlab_core::graded::{canonical_module, dagger, GradedModule, GradedRing};
use rand::Rng;

pub fn ring(vars: &[&str], gens: &[&str]) -> Arc<GradedRing> {
    ring_from_strings("R", vars, gens).unwrap()
}

pub fn poly(r: &GradedRing, s: &str) -> Polynomial {
    cmlab_core::algebra::parse_polynomial(r.field(), r.vars(), s).unwrap()
}

pub fn cyclic(r: &Arc<GradedRing>, gens: &[&str]) -> GradedModule {
    let p: Vec<Polynomial> = gens.iter().map(|g| poly(r, g)).collect();
    GradedModule::cyclic(r.clone(), &p).unwrap()
}

/// Small rings covering regular, hypersurface, Gorenstein, CM and non-CM cases.
pub fn test_rings() -> Vec<(&'static str, Arc<GradedRing>)> {
    let specs: &[(&str, &[&str], &[&str])] = &[
        ("k[x]", &["x"], &[]),
        ("k[x,y]", &["x", "y"], &[]),
        ("k[x]/(x^2)", &["x"], &["x^2"]),
        ("k[x]/(x^3)", &["x"], &["x^3"]),
        ("k[x,y]/(x^2)", &["x", "y"], &["x^2"]),
        ("k[x,y]/(xy)", &["x", "y"], &["x*y"]),
        ("k[x,y]/(x^2,y^2)", &["x", "y"], &["x^2", "y^2"]),
        ("k[x,y]/(x,y)^2", &["x", "y"], &["x^2", "x*y", "y^2"]),
        ("k[x,y]/(x^2,xy)", &["x", "y"], &["x^2", "x*y"]),
        ("k[x,y,z]/(x^2,y^2,z^2)", &["x", "y", "z"], &["x^2", "y^2", "z^2"]),
        ("k[x,y,z]/(xy,z^2)", &["x", "y", "z"], &["x*y", "z^2"]),
    ];
    specs.iter().map(|(n, v, g)| (*n, ring(v, g))).collect()
}

fn random_form<R: Rng>(r: &GradedRing, deg: u32, rng: &mut R) -> Polynomial {
    let monos = Monomial::all_of_degree(r.nvars(), deg);
    let p = r.field().characteristic();
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    for m in monos {
        if rng.gen_bool(0.6) {
            terms.push((m, if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..p) }));
        }
    }
    Polynomial::from_terms(r.field(), terms)
}

/// A random small module with a readable name.
pub fn random_module<R: Rng>(r: &Arc<GradedRing>, rng: &mut R) -> (String, GradedModule) {
    loop {
        let pick = rng.gen_range(0..7);
        let out = match pick {
            0 => ("k".to_string(), Ok(GradedModule::residue_field(r.clone()))),
            1 => ("R".to_string(), Ok(GradedModule::ring_module(r.clone()))),
            2 => ("omega".to_string(), canonical_module(r)),
            3 | 4 => {
                let count = rng.gen_range(1..=2);
                let gens: Vec<Polynomial> =
                    (0..count).map(|_| random_form(r, rng.gen_range(1..=2), rng)).filter(|g| !g.is_zero()).collect();
                let names: Vec<String> = gens.iter().map(|g| g.format(r.field(), r.vars())).collect();
                (format!("R/({})", names.join(", ")), GradedModule::cyclic(r.clone(), &gens))
            }
            5 => {
                let l = random_form(r, 1, rng);
                let name = format!("dagger(R/({}, m^2))", l.format(r.field(), r.vars()));
                let mut gens = vec![l];
                gens.extend(Monomial::all_of_degree(r.nvars(), 2).into_iter().map(|m| Polynomial::from_terms(r.field(), vec![(m, 1)])));
                (name, GradedModule::cyclic(r.clone(), &gens).and_then(|m| dagger(&m)))
            }
            _ => {
                let a = GradedModule::residue_field(r.clone());
                ("k + R(-1)".to_string(), a.direct_sum(&GradedModule::ring_module(r.clone()).shift_degrees(1)))
            }
        };
        if let (name, Ok(m)) = out {
            if !m.is_zero().unwrap() {
                return (name, m);
            }
        }
    }
}
