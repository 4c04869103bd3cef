mod common;

use cmlab_core::graded::GradedModule;
use cmlab_core::lab::{
    check, corpus_cases, run_corpus_cases, witness, CheckInput, CheckOptions, Mode, Status, ROWS, WITNESS_THEOREMS,
};
use cmlab_core::Error;
use common::{cyclic, ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn double_point_free_module_fails_hypotheses() {
    let r = ring(&["x"], &["x^2"]);
    let m = GradedModule::ring_module(r.clone());
    let k = GradedModule::residue_field(r);
    let input = CheckInput::new("k[x]/(x^2)", "R", m).with_n("k", k);
    for id in ["T37.1", "T37.2", "T38"] {
        let v = check(id, &input, 1, &CheckOptions::default()).unwrap();
        assert_eq!(v.status, Status::HypothesisFailed, "{id}");
        assert_eq!(v.vanished, Some(true), "{id}: windows are still evaluated");
        assert!(v.consistent);
    }
}

#[test]
fn strict_inequalities_do_not_fire_on_equality() {
    // e = 2 mu = 2 type for R over k[x]/(x^2) and for k over k[x]
    let r = ring(&["x"], &["x^2"]);
    let m = GradedModule::ring_module(r.clone());
    let input = CheckInput::new("R", "R", m.clone()).with_n("R", m);
    for id in ["P32.1", "P32.2", "P33", "T37.1", "T37.2", "T38", "T310.1", "T310.3", "T61.1", "T61.3", "T62.1", "T62.3"] {
        let v = check(id, &input, 2, &CheckOptions::default()).unwrap();
        assert_ne!(v.status, Status::Fired, "{id}");
    }
}

#[test]
fn restricting_the_corpus_to_the_rad_square_zero_remark() {
    let cases: Vec<_> = corpus_cases().into_iter().filter(|c| c.id == "remark-rad-square-zero").collect();
    assert_eq!(cases.len(), 1);
    let rep = run_corpus_cases(&cases, 0);
    for v in &rep.cases[0].verdicts {
        assert_eq!(v.failed_hypotheses(), vec!["R Gorenstein"]);
        assert_eq!(v.vanished, Some(true));
        assert_eq!(v.status, Status::HypothesisFailed);
    }
}

#[test]
fn empty_corpus_gives_empty_report() {
    let rep = run_corpus_cases(&[], 3);
    assert!(rep.cases.is_empty());
    assert_eq!(rep.certificate.checks + rep.evidence.checks, 0);
    assert!(rep.all_consistent());
}

#[test]
fn evidence_rows_stay_out_of_certificate_tally() {
    let cases: Vec<_> = corpus_cases().into_iter().filter(|c| c.id.contains("gorenstein") || c.id.starts_with("self-test")).collect();
    let rep = run_corpus_cases(&cases, 0);
    let mut cert = 0;
    let mut evid = 0;
    for c in &rep.cases {
        for v in &c.verdicts {
            let info = ROWS.iter().find(|r| r.id == v.theorem).unwrap();
            assert_eq!(info.mode, v.mode);
            match v.mode {
                Mode::Certificate => cert += 1,
                Mode::Evidence => evid += 1,
            }
        }
    }
    assert_eq!(rep.certificate.checks, cert);
    assert_eq!(rep.evidence.checks, evid);
    assert!(evid > 0 && cert > 0);
}

#[test]
fn witness_preconditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let fat = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
    for t in WITNESS_THEOREMS {
        assert!(matches!(witness(t, &fat, &mut rng), Err(Error::Inadmissible(_))), "{t}");
    }
    let line = ring(&["x"], &[]);
    assert!(matches!(witness("T43", &line, &mut rng), Err(Error::Inadmissible(_))));
    let field = ring(&[], &[]);
    assert!(matches!(witness("T44", &field, &mut rng), Err(Error::Inadmissible(_))));
    let ws = witness("T42", &field, &mut rng).unwrap();
    assert!(ws.iter().all(|w| w.ok()));
}

#[test]
fn witnesses_are_reproducible_from_the_seed() {
    let r = ring(&["x", "y", "z"], &[]);
    let a = witness("T43", &r, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
    let b = witness("T43", &r, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
    let da: Vec<&String> = a.iter().map(|w| &w.description).collect();
    let db: Vec<&String> = b.iter().map(|w| &w.description).collect();
    assert_eq!(da, db);
    assert!(a.iter().all(|w| w.ok()));
}

#[test]
fn inadmissible_j_is_an_error() {
    // T37.3 needs j >= dim M + depth R
    let r = ring(&["x", "y"], &[]);
    let m = GradedModule::residue_field(r.clone());
    let input = CheckInput::new("k[x,y]", "k", m).with_n("R/(x)", cyclic(&r, &["x"]));
    assert!(matches!(check("T37.3", &input, 0, &CheckOptions::default()), Err(Error::Inadmissible(_))));
    assert!(check("T37.3", &input, 2, &CheckOptions::default()).is_ok());
}

#[test]
fn rank_cap_makes_checks_inconclusive() {
    use cmlab_core::algebra::{parse_polynomial, GbLimits, PrimeField};
    use cmlab_core::graded::GradedRing;
    let f = PrimeField::default();
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let gens = ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"].iter().map(|g| parse_polynomial(&f, &vars, g).unwrap()).collect();
    let limits = GbLimits { max_rank: 20, ..GbLimits::default() };
    let r = GradedRing::new("R", vars, f, gens, limits).unwrap();
    let k = GradedModule::residue_field(r);
    // beta_n(k) = 3^n passes 20 at n = 3
    assert!(matches!(k.betti_numbers(6), Err(Error::ResourceLimit(_))));
    let input = CheckInput::new("R", "k", k.clone()).with_n("k", k);
    let v = check("P32.1", &input, 4, &CheckOptions::default()).unwrap();
    assert_eq!(v.status, Status::Inconclusive);
    assert!(v.consistent);
}
