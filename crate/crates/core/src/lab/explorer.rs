//! Random search around the open question on modules with `m^2 M = 0` and
//! `lambda(M) = 2 mu(M)` whose Ext against `R` vanishes: is `R` then Gorenstein?
//! A hit is only bounded evidence and is reported for manual audit.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gdim::{bounded_gdim, GDimDiagnosis};
use crate::algebra::{GbLimits, Monomial, Polynomial, PrimeField};
use crate::error::{Error, Result};
use crate::graded::homdim::{id_certificate, type_of, HomDim};
use crate::graded::homology::ext_vanishes;
use crate::graded::module::vector_from_row;
use crate::graded::{GradedModule, GradedRing};

#[derive(Clone, Debug, Serialize)]
pub struct ExplorerParams {
    pub char: u32,
    pub max_vars: usize,
    /// Extra random quadrics on top of a power of the maximal ideal.
    pub max_extra: usize,
    pub max_rank: usize,
    pub bound: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExplorerParams {
    fn default() -> Self {
        Self { char: 32003, max_vars: 3, max_extra: 3, max_rank: 2, bound: 12, trials: 1000, seed: 0 }
    }
}

/// What was learned about one pair `(R, M)`.
#[derive(Clone, Debug, Serialize)]
pub struct Examination {
    pub length: i64,
    pub mu: usize,
    /// Smallest `i` in `1..=B` with `Ext^i(M, R) != 0`.
    pub ext_nonvanishing_at: Option<usize>,
    pub passed_filter: bool,
    pub type_r: u64,
    pub gdim: Option<GDimDiagnosis>,
    pub flagged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Trial {
    pub trial: usize,
    pub seed: u64,
    pub ring: String,
    pub module: Vec<String>,
    pub examination: Option<Examination>,
    /// Why the pair was discarded or left unfinished.
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplorerReport {
    pub params: ExplorerParams,
    pub trials: Vec<Trial>,
    pub examined: usize,
    pub passed_filter: usize,
    pub gorenstein_passed: usize,
    pub inconclusive: usize,
    pub flagged: Vec<usize>,
    pub elapsed_ms: u64,
}

impl ExplorerReport {
    pub fn verdict(&self) -> String {
        if self.flagged.is_empty() {
            format!("no counterexample found up to bounds (B = {})", self.params.bound)
        } else {
            format!("potential counterexample (bounded evidence) in trials {:?}", self.flagged)
        }
    }
}

/// Runs the Ext filter and, for survivors, the type and the bounded G-dimension
/// diagnosis. `m` must satisfy `m^2 M = 0` and `lambda(M) = 2 mu(M)`.
pub fn examine(m: &GradedModule, bound: usize) -> Result<Examination> {
    if bound < 2 {
        return Err(Error::Inadmissible("explorer bound must be at least 2".into()));
    }
    let ring = m.ring();
    let r = GradedModule::ring_module(ring.clone());
    let length = m.length()?.ok_or_else(|| Error::Inadmissible("module must have finite length".into()))?;
    let mu = m.num_generators()?;
    if !m.is_killed_by_max_squared()? || length != 2 * mu as i64 {
        return Err(Error::Inadmissible("need m^2 M = 0 and lambda(M) = 2 mu(M)".into()));
    }
    // past a finite id R every Ext against R vanishes
    let top = match id_certificate(&r)? {
        HomDim::Finite(d) => bound.min(d),
        HomDim::Infinite => bound,
    };
    let mut ext_nonvanishing_at = None;
    for i in 1..=top {
        if !ext_vanishes(m, &r, i)? {
            ext_nonvanishing_at = Some(i);
            break;
        }
    }
    let passed_filter = ext_nonvanishing_at.is_none();
    let type_r = type_of(&r)?;
    let gdim = if passed_filter { Some(bounded_gdim(m, bound)?) } else { None };
    Ok(Examination { length, mu, ext_nonvanishing_at, passed_filter, type_r, gdim, flagged: passed_filter && type_r != 1 })
}

fn random_coeff<R: Rng + ?Sized>(f: &PrimeField, rng: &mut R) -> u32 {
    rng.gen_range(1..f.characteristic())
}

fn random_quadric<R: Rng + ?Sized>(f: &PrimeField, quads: &[Monomial], rng: &mut R) -> Polynomial {
    // half dense, half supported on two monomials
    let support: Vec<Monomial> = if rng.gen_bool(0.5) || quads.len() < 3 {
        quads.to_vec()
    } else {
        let a = rng.gen_range(0..quads.len());
        let mut b = rng.gen_range(0..quads.len() - 1);
        if b >= a {
            b += 1;
        }
        vec![quads[a], quads[b]]
    };
    Polynomial::from_terms(f, support.into_iter().map(|m| (m, random_coeff(f, rng))).collect())
}

/// Artinian `k[x_1..x_v]/(m^{s+1} + quadrics)` with `s` in `{1, 2}`.
pub fn random_artinian_ring<R: Rng + ?Sized>(params: &ExplorerParams, rng: &mut R) -> Result<Arc<GradedRing>> {
    let f = PrimeField::new(params.char)?;
    let v = rng.gen_range(1..=params.max_vars.max(1));
    let socle_deg: u32 = rng.gen_range(1..=2);
    let mut gens: Vec<Polynomial> = Monomial::all_of_degree(v, socle_deg + 1)
        .into_iter()
        .map(|m| Polynomial::from_terms(&f, vec![(m, 1)]))
        .collect();
    if socle_deg == 2 {
        let quads = Monomial::all_of_degree(v, 2);
        let extra = rng.gen_range(0..=params.max_extra.min(quads.len() - 1));
        for _ in 0..extra {
            gens.push(random_quadric(&f, &quads, rng));
        }
    }
    let names = ["x", "y", "z", "u", "v", "w", "s", "t"];
    let vars: Vec<String> = names[..v].iter().map(|s| s.to_string()).collect();
    let ring = GradedRing::new("R", vars, f, gens, GbLimits::default())?;
    let (min, _) = ring.minimalize()?;
    Ok(min)
}

/// `R^a / (m^2 R^a + U)` with `U` a general subspace of `m R^a / m^2 R^a`
/// of codimension `a`, so that `lambda = 2a` when `m^2 != 0`.
pub fn random_module<R: Rng + ?Sized>(ring: &Arc<GradedRing>, a: usize, rng: &mut R) -> Result<GradedModule> {
    let f = ring.field();
    let v = ring.nvars();
    let mut rels = Vec::new();
    for j in 0..a {
        for mono in Monomial::all_of_degree(v, 2) {
            let mut row = vec![Polynomial::zero(); a];
            row[j] = Polynomial::from_terms(f, vec![(mono, 1)]);
            rels.push(vector_from_row(ring, &row));
        }
    }
    for _ in 0..a * v.saturating_sub(1) {
        let row: Vec<Polynomial> = (0..a)
            .map(|_| Polynomial::from_terms(f, (0..v).map(|i| (Monomial::var(i), rng.gen_range(0..f.characteristic()))).collect()))
            .collect();
        rels.push(vector_from_row(ring, &row));
    }
    GradedModule::new(ring.clone(), vec![0; a], rels)?.minimal_presentation()
}

fn describe_module(m: &GradedModule) -> Vec<String> {
    let ring = m.ring();
    m.relation_rows()
        .iter()
        .map(|row| {
            let e: Vec<String> = row.iter().map(|p| p.format(ring.field(), ring.vars())).collect();
            e.join(", ")
        })
        .collect()
}

fn run_trial(params: &ExplorerParams, trial: usize) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(trial as u64);
    let mut out = Trial { trial, seed: params.seed, ring: String::new(), module: Vec::new(), examination: None, note: None };
    let result = (|| -> Result<()> {
        let ring = random_artinian_ring(params, &mut rng)?;
        out.ring = ring.describe();
        let a = rng.gen_range(1..=params.max_rank.max(1));
        let m = random_module(&ring, a, &mut rng)?;
        out.module = describe_module(&m);
        if m.length()? != Some(2 * a as i64) || m.num_generators()? != a {
            out.note = Some("sampled module misses lambda = 2 mu; discarded".into());
            return Ok(());
        }
        out.examination = Some(examine(&m, params.bound)?);
        Ok(())
    })();
    if let Err(e) = result {
        out.note = Some(match e {
            Error::ResourceLimit(msg) => format!("inconclusive: limit ({msg})"),
            other => format!("error: {other}"),
        });
    }
    out
}

/// Seeded trials in parallel, one random stream per trial.
pub fn explore_q52(params: &ExplorerParams) -> Result<ExplorerReport> {
    if params.bound < 2 {
        return Err(Error::Inadmissible("explorer bound must be at least 2".into()));
    }
    let start = Instant::now();
    let trials: Vec<Trial> = (0..params.trials).into_par_iter().map(|t| run_trial(params, t)).collect();
    let examined = trials.iter().filter(|t| t.examination.is_some()).count();
    let passed: Vec<&Trial> =
        trials.iter().filter(|t| t.examination.as_ref().is_some_and(|e| e.passed_filter)).collect();
    let gorenstein_passed = passed.iter().filter(|t| t.examination.as_ref().unwrap().type_r == 1).count();
    let inconclusive = trials.iter().filter(|t| t.note.as_deref().is_some_and(|n| n.starts_with("inconclusive"))).count();
    let flagged = trials.iter().filter(|t| t.examination.as_ref().is_some_and(|e| e.flagged)).map(|t| t.trial).collect();
    Ok(ExplorerReport {
        params: params.clone(),
        examined,
        passed_filter: passed.len(),
        gorenstein_passed,
        inconclusive,
        flagged,
        trials,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ring::ring_from_strings;

    #[test]
    fn zero_trials_is_empty() {
        let r = explore_q52(&ExplorerParams { trials: 0, ..Default::default() }).unwrap();
        assert!(r.trials.is_empty());
        assert!(r.flagged.is_empty());
    }

    #[test]
    fn gorenstein_pair_passes_with_type_one() {
        // R = k[x,y]/(x^2, y^2), M = R/(x) has m^2 M = 0 and lambda = 2 = 2 mu
        let r = ring_from_strings("R", &["x", "y"], &["x^2", "y^2"]).unwrap();
        let m = GradedModule::cyclic(r, &[Polynomial::var(0)]).unwrap();
        let e = examine(&m, 12).unwrap();
        assert!(e.passed_filter);
        assert_eq!(e.type_r, 1);
        assert!(!e.flagged);
        assert!(e.gdim.unwrap().passed);
    }

    #[test]
    fn rad_square_zero_fails_filter() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_module(&r, 1, &mut rng).unwrap();
        assert_eq!(m.length().unwrap(), Some(2));
        let e = examine(&m, 12).unwrap();
        assert_eq!(e.ext_nonvanishing_at, Some(1));
        assert_eq!(e.type_r, 2);
    }

    #[test]
    fn small_run_is_deterministic() {
        let p = ExplorerParams { trials: 20, seed: 9, ..Default::default() };
        let a = explore_q52(&p).unwrap();
        let b = explore_q52(&p).unwrap();
        let ra: Vec<&String> = a.trials.iter().map(|t| &t.ring).collect();
        let rb: Vec<&String> = b.trials.iter().map(|t| &t.ring).collect();
        assert_eq!(ra, rb);
        assert!(a.flagged.is_empty());
    }
}
