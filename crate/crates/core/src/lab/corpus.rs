//! Labelled cases run by `cmlab corpus`: every certificate row on inputs
//! where it fires and where it must not, the small worked examples, the
//! witness constructions, and contrapositive scans.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::check::{check, scan_contrapositive, CheckInput, CheckOptions, Status, TheoremVerdict, DEFAULT_JMAX};
use super::rows::Mode;
use super::witness::{witness, WitnessSummary};
use crate::error::{Error, Result};
use crate::graded::ring::ring_from_strings;
use crate::graded::{canonical_module, dagger, GradedModule, GradedRing};
use crate::algebra::parse_polynomial;

#[derive(Clone, Debug)]
pub struct RingSpec {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub gens: &'static [&'static str],
}

impl RingSpec {
    pub fn build(&self) -> Result<Arc<GradedRing>> {
        ring_from_strings(self.name, self.vars, self.gens)
    }
}

#[derive(Clone, Debug)]
pub enum ModSpec {
    K,
    R,
    Omega,
    /// `R/(gens)`.
    Cyclic(&'static [&'static str]),
    Dagger(Box<ModSpec>),
}

impl ModSpec {
    pub fn name(&self) -> String {
        match self {
            ModSpec::K => "k".into(),
            ModSpec::R => "R".into(),
            ModSpec::Omega => "omega".into(),
            ModSpec::Cyclic(g) => format!("R/({})", g.join(", ")),
            ModSpec::Dagger(m) => format!("dagger({})", m.name()),
        }
    }

    pub fn build(&self, ring: &Arc<GradedRing>) -> Result<GradedModule> {
        match self {
            ModSpec::K => Ok(GradedModule::residue_field(ring.clone())),
            ModSpec::R => Ok(GradedModule::ring_module(ring.clone())),
            ModSpec::Omega => canonical_module(ring),
            ModSpec::Cyclic(g) => {
                let polys = g
                    .iter()
                    .map(|s| parse_polynomial(ring.field(), ring.vars(), s))
                    .collect::<Result<Vec<_>>>()?;
                GradedModule::cyclic(ring.clone(), &polys)
            }
            ModSpec::Dagger(m) => dagger(&m.build(ring)?),
        }
    }
}

#[derive(Clone, Debug)]
pub enum CaseKind {
    /// Every row at every listed `j`.
    Check { m: ModSpec, n: Option<ModSpec>, rows: Vec<&'static str>, js: Vec<usize> },
    /// Contrapositive scans over `0..=jmax`.
    Scan { m: ModSpec, n: Option<ModSpec>, rows: Vec<&'static str>, jmax: usize },
    /// Witness modules, each fed to the rows as `N` with `M = k` at `j = dim R`,
    /// or as `M` itself when `as_m` is set.
    Witness { theorem: &'static str, rows: Vec<&'static str>, as_m: bool },
}

#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub id: String,
    pub description: &'static str,
    pub ring: RingSpec,
    pub kind: CaseKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub description: String,
    pub ring: String,
    pub verdicts: Vec<TheoremVerdict>,
    pub witnesses: Vec<WitnessSummary>,
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ModeTally {
    pub checks: usize,
    pub fired: usize,
    pub hypothesis_failed: usize,
    pub window_not_satisfied: usize,
    pub inconclusive: usize,
    pub inconsistent: usize,
}

impl ModeTally {
    fn add(&mut self, v: &TheoremVerdict) {
        self.checks += 1;
        match v.status {
            Status::Fired => self.fired += 1,
            Status::HypothesisFailed => self.hypothesis_failed += 1,
            Status::WindowNotSatisfied => self.window_not_satisfied += 1,
            Status::Inconclusive => self.inconclusive += 1,
        }
        if !v.consistent {
            self.inconsistent += 1;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub cases: Vec<CaseReport>,
    pub certificate: ModeTally,
    pub evidence: ModeTally,
    pub witnesses: usize,
    pub witnesses_ok: usize,
    pub errors: usize,
}

impl CorpusReport {
    pub fn inconsistent(&self) -> usize {
        self.certificate.inconsistent + self.evidence.inconsistent + (self.witnesses - self.witnesses_ok)
    }

    pub fn inconclusive(&self) -> usize {
        self.certificate.inconclusive + self.evidence.inconclusive
    }

    pub fn all_consistent(&self) -> bool {
        self.inconsistent() == 0 && self.errors == 0
    }

    /// Rows that fired at least once, by id.
    pub fn fired_rows(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for c in &self.cases {
            for v in &c.verdicts {
                if v.status == Status::Fired {
                    *out.entry(v.theorem.clone()).or_insert(0) += 1;
                }
            }
        }
        out
    }
}

const FIELD: RingSpec = RingSpec { name: "k", vars: &[], gens: &[] };
const A1: RingSpec = RingSpec { name: "k[x]", vars: &["x"], gens: &[] };
const A2: RingSpec = RingSpec { name: "k[x,y]", vars: &["x", "y"], gens: &[] };
const A3: RingSpec = RingSpec { name: "k[x,y,z]", vars: &["x", "y", "z"], gens: &[] };
const DOUBLE_POINT: RingSpec = RingSpec { name: "k[x]/(x^2)", vars: &["x"], gens: &["x^2"] };
const TRIPLE_POINT: RingSpec = RingSpec { name: "k[x]/(x^3)", vars: &["x"], gens: &["x^3"] };
const DOUBLE_LINE: RingSpec = RingSpec { name: "k[x,y]/(x^2)", vars: &["x", "y"], gens: &["x^2"] };
const NODE: RingSpec = RingSpec { name: "k[x,y]/(xy)", vars: &["x", "y"], gens: &["x*y"] };
const FAT2: RingSpec = RingSpec { name: "k[x,y]/(x,y)^2", vars: &["x", "y"], gens: &["x^2", "x*y", "y^2"] };
const FAT3: RingSpec = RingSpec {
    name: "k[x,y,z]/(x,y,z)^2",
    vars: &["x", "y", "z"],
    gens: &["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"],
};
const CI: RingSpec = RingSpec { name: "k[x,y]/(x^2,y^2)", vars: &["x", "y"], gens: &["x^2", "y^2"] };
const EMBEDDED: RingSpec = RingSpec { name: "k[x,y]/(x^2,xy)", vars: &["x", "y"], gens: &["x^2", "x*y"] };

fn chk(id: &str, description: &'static str, ring: RingSpec, m: ModSpec, n: Option<ModSpec>, rows: &[&'static str], js: &[usize]) -> CorpusCase {
    CorpusCase { id: id.into(), description, ring, kind: CaseKind::Check { m, n, rows: rows.to_vec(), js: js.to_vec() } }
}

fn scan(id: &str, description: &'static str, ring: RingSpec, m: ModSpec, n: Option<ModSpec>, rows: &[&'static str]) -> CorpusCase {
    CorpusCase {
        id: id.into(),
        description,
        ring,
        kind: CaseKind::Scan { m, n, rows: rows.to_vec(), jmax: DEFAULT_JMAX },
    }
}

fn wit(id: &str, description: &'static str, ring: RingSpec, theorem: &'static str, rows: &[&'static str], as_m: bool) -> CorpusCase {
    CorpusCase { id: id.into(), description, ring, kind: CaseKind::Witness { theorem, rows: rows.to_vec(), as_m } }
}

const C41: &[&str] = &["C41.6", "C41.7", "C41.8"];
const C42: &[&str] = &["C42.6", "C42.7", "C42.8"];
const C43: &[&str] = &["C43.6", "C43.7", "C43.8", "C43.6'", "C43.8'", "C43.8''"];
const C44: &[&str] = &["C44.6", "C44.7", "C44.8"];
const C46: &[&str] = &["C46.6", "C46.7"];

/// The labelled corpus, in id order.
pub fn corpus_cases() -> Vec<CorpusCase> {
    use ModSpec::*;
    let sq2 = || Cyclic(&["x^2", "x*y", "y^2"]);
    let mut v = vec![
        chk(
            "ex-double-point-free",
            "M = R over k[x]/(x^2): Tor and Ext with k vanish, yet hypotheses fail",
            DOUBLE_POINT,
            R,
            Some(K),
            &["T37.1", "T37.2", "T38", "T310.1", "T310.3", "P32.1", "P34.1"],
            &[0, 1, 2],
        ),
        scan(
            "ex-double-point-residue",
            "k over k[x]/(x^2): infinite pd and id, no window may vanish",
            DOUBLE_POINT,
            K,
            Some(K),
            &["P32.1", "P32.2", "P33", "T37.1", "T37.2", "T38", "T310.2", "T310.4"],
        ),
        chk(
            "free-test-double-line",
            "k tested against the free module over k[x,y]/(x^2)",
            DOUBLE_LINE,
            K,
            Some(R),
            &["T37.1", "T37.3", "T38", "P32.1", "P33"],
            &[1, 2],
        ),
        scan(
            "fat-plane-residue",
            "k against k over k[x,y]/(x,y)^2",
            FAT2,
            K,
            Some(K),
            &["P32.1", "P32.2", "P33", "P34.2", "T38", "T310.2"],
        ),
        scan(
            "fat-plane-ring",
            "R with lambda > 2mu against k over k[x,y]/(x,y)^2",
            FAT2,
            R,
            Some(K),
            &["P34.1", "T310.1"],
        ),
        scan(
            "fat-plane-canonical",
            "omega with lambda < 2mu and lambda > 2type against k",
            FAT2,
            Omega,
            Some(K),
            &["P32.1", "P32.2", "P34.3", "P34.4", "T310.3"],
        ),
        chk(
            "fat-plane-ring-free",
            "R with lambda > 2mu tested against R over k[x,y]/(x,y)^2",
            FAT2,
            R,
            Some(R),
            &["P34.1", "T310.1"],
            &[0, 1],
        ),
        chk(
            "fat-plane-canonical-free",
            "omega tested against R: pd R is finite",
            FAT2,
            Omega,
            Some(R),
            &["P32.1", "P33", "P34.3", "T37.1", "T310.3"],
            &[0, 1],
        ),
        chk(
            "fat-plane-canonical-injective",
            "omega tested against omega: id omega is finite",
            FAT2,
            Omega,
            Some(Omega),
            &["P32.2", "P34.4", "T37.2", "T310.4"],
            &[0, 1],
        ),
        chk(
            "fat-plane-residue-injective",
            "k tested against omega over k[x,y]/(x,y)^2",
            FAT2,
            K,
            Some(Omega),
            &["T37.2", "T310.2", "P34.2", "C41.7", "C51.4", "C56.2"],
            &[0, 1],
        ),
        chk(
            "gorenstein-double-point",
            "Gorenstein tests over k[x]/(x^2)",
            DOUBLE_POINT,
            K,
            Some(R),
            &["C51.2", "C51.3", "C51.4", "C56.2"],
            &[0, 1],
        ),
        chk(
            "non-gorenstein-fat-plane",
            "Gorenstein tests over k[x,y]/(x,y)^2 must not fire",
            FAT2,
            K,
            Some(R),
            &["C51.2", "C51.3", "C51.4"],
            &[0, 1],
        ),
        chk(
            "remark-rad-square-zero",
            "M = R over k[x,y]/(x,y)^2: only the Gorenstein hypothesis fails",
            FAT2,
            R,
            None,
            C46,
            &[0, 1, 2],
        ),
        chk(
            "remark-rad-square-zero-3",
            "M = R over k[x,y,z]/(x,y,z)^2: only the Gorenstein hypothesis fails",
            FAT3,
            R,
            None,
            C46,
            &[0, 1],
        ),
        chk(
            "remark-multiplicity-two",
            "M = R over k[x]/(x^2): e(M) = 2mu(M) fails",
            DOUBLE_POINT,
            R,
            None,
            C46,
            &[0, 1],
        ),
        chk(
            "remark-multiplicity-two-line",
            "M = R over k[x,y]/(x^2): e(M) = 2mu(M) fails",
            DOUBLE_LINE,
            R,
            None,
            C46,
            &[0, 1],
        ),
        chk(
            "remark-not-min-mult",
            "M = R over k[x]/(x^3): minimal multiplicity fails",
            TRIPLE_POINT,
            R,
            None,
            C46,
            &[0, 1],
        ),
        chk(
            "self-test-line",
            "self tests over k[x]",
            A1,
            K,
            None,
            &["T61.1", "T61.2", "T62.1", "T62.2"],
            &[0, 1, 2],
        ),
        chk(
            "self-test-line-free",
            "R tested against itself over k[x]",
            A1,
            R,
            None,
            &["T61.1", "T62.1", "T62.2", "T61.3", "T62.3"],
            &[0, 1],
        ),
        chk(
            "self-test-plane-square",
            "R/(x,y)^2 over k[x,y]: e > 2mu, pd finite",
            A2,
            sq2(),
            Some(K),
            &["T61.3", "T62.3", "T310.1", "T310.3"],
            &[1, 2, 3],
        ),
        chk(
            "self-test-fat-plane",
            "M = R over k[x,y]/(x,y)^2 with e > 2mu",
            FAT2,
            R,
            None,
            &["T61.3", "T62.3"],
            &[0, 1],
        ),
        chk(
            "self-test-double-point",
            "M = R over k[x]/(x^2) with e = 2mu",
            DOUBLE_POINT,
            R,
            None,
            &["T61.2", "T62.2"],
            &[0, 1],
        ),
        chk(
            "residue-plane",
            "k against k over k[x,y]",
            A2,
            K,
            Some(K),
            &["T37.1", "T37.2", "T37.3", "T38", "T310.2", "T310.4", "P32.1", "P33"],
            &[2, 3],
        ),
        chk(
            "dagger-plane-square",
            "dagger(R/(x,y)^2) over k[x,y]: e > 2type",
            A2,
            Dagger(Box::new(sq2())),
            Some(K),
            &["T310.3", "T310.5", "T310.4"],
            &[2, 3],
        ),
        chk(
            "regular-line-free",
            "k tested against R over k[x]",
            A1,
            K,
            Some(R),
            &["C42.6", "C42.8", "C44.6", "C44.8", "C41.6"],
            &[1, 2],
        ),
        chk(
            "regular-plane-residue",
            "k tested against k over k[x,y]",
            A2,
            K,
            Some(K),
            &["C42.6", "C42.7", "C42.8", "C43.6'", "C43.8'", "C43.8''", "C41.6", "C41.8"],
            &[2, 3],
        ),
        scan(
            "fat-plane-characterizations",
            "characterizations over k[x,y]/(x,y)^2 with M = N = k",
            FAT2,
            K,
            Some(K),
            &["C41.6", "C41.7", "C41.8", "C42.6", "C42.7", "C42.8", "C44.6", "C44.7", "C44.8"],
        ),
        scan(
            "complete-intersection-residue",
            "k over k[x,y]/(x^2,y^2): Gorenstein but not a hypersurface",
            CI,
            K,
            Some(K),
            &["C41.6", "C41.7", "C41.8", "T37.1", "T38", "P32.1"],
        ),
        chk(
            "complete-intersection-gorenstein",
            "Gorenstein tests over k[x,y]/(x^2,y^2)",
            CI,
            K,
            Some(R),
            &["C51.2", "C51.3", "C51.4"],
            &[0, 1],
        ),
        scan(
            "non-cm-residue",
            "k over the non-CM ring k[x,y]/(x^2,xy)",
            EMBEDDED,
            K,
            Some(K),
            &["P32.1", "P33", "T37.1", "T37.2", "T38", "C41.6"],
        ),
        chk(
            "non-cm-self",
            "self tests over the non-CM ring k[x,y]/(x^2,xy)",
            EMBEDDED,
            K,
            None,
            &["T61.1", "T62.1", "C51.2", "C51.3"],
            &[0, 1],
        ),
        scan(
            "node-residue",
            "k against k over k[x,y]/(xy)",
            NODE,
            K,
            Some(K),
            &["T37.1", "T37.2", "T38", "P32.1", "C42.6"],
        ),
        scan(
            "node-branch",
            "R/(x) against k over k[x,y]/(xy): periodic resolution",
            NODE,
            Cyclic(&["x"]),
            Some(K),
            &["T37.1", "T37.3", "P32.1"],
        ),
        chk(
            "node-free",
            "k tested against R over k[x,y]/(xy)",
            NODE,
            K,
            Some(R),
            &["T37.1", "C41.6", "C44.6"],
            &[1, 2],
        ),
        scan(
            "fat-space-residue",
            "k against k over k[x,y,z]/(x,y,z)^2",
            FAT3,
            K,
            Some(K),
            &["T38", "P32.1", "P34.2"],
        ),
        wit("witness-41-double-point", "hypersurface witnesses over k[x]/(x^2)", DOUBLE_POINT, "T41", C41, false),
        wit("witness-41-double-line", "hypersurface witnesses over k[x,y]/(x^2)", DOUBLE_LINE, "T41", C41, false),
        wit("witness-41-node", "hypersurface witnesses over k[x,y]/(xy)", NODE, "T41", C41, false),
        wit("witness-41-plane", "hypersurface witnesses over k[x,y]", A2, "T41", C41, false),
        wit("witness-42-field", "regular witnesses over k", FIELD, "T42", C42, false),
        wit("witness-42-plane", "regular witnesses over k[x,y]", A2, "T42", C42, false),
        wit("witness-43-plane", "squared-form witnesses over k[x,y]", A2, "T43", C43, false),
        wit("witness-43-space", "squared-form witnesses over k[x,y,z]", A3, "T43", C43, false),
        wit("witness-44-double-line", "witnesses over k[x,y]/(x^2)", DOUBLE_LINE, "T44", C44, false),
        wit("witness-44-line", "double point witnesses over k[x]", A1, "T44", C44, false),
        wit("witness-44-plane", "witnesses over k[x,y]", A2, "T44", C44, false),
        wit("witness-46-plane", "self-test witnesses over k[x,y]", A2, "C46", C46, true),
    ];
    v.sort_by(|a, b| a.id.cmp(&b.id));
    v
}

fn record_err(e: Error, note: &mut Option<String>) {
    *note = Some(e.to_string());
}

fn run_rows(
    rows: &[&'static str],
    input: &CheckInput,
    js: &[usize],
    seed: u64,
    case: &str,
    out: &mut Vec<TheoremVerdict>,
) -> Result<()> {
    for &row in rows {
        for &j in js {
            let opts = CheckOptions { seed, check_id: Some(format!("{case}/{row}@j={j}")), ..Default::default() };
            out.push(check(row, input, j, &opts)?);
        }
    }
    Ok(())
}

fn run_case(case: &CorpusCase, index: usize, seed: u64) -> CaseReport {
    let start = Instant::now();
    let mut verdicts = Vec::new();
    let mut witnesses = Vec::new();
    let mut error = None;
    let result = (|| -> Result<()> {
        let ring = case.ring.build()?;
        match &case.kind {
            CaseKind::Check { m, n, rows, js } => {
                let mut input = CheckInput::new(case.ring.name, &m.name(), m.build(&ring)?);
                if let Some(n) = n {
                    input = input.with_n(&n.name(), n.build(&ring)?);
                }
                run_rows(rows, &input, js, seed, &case.id, &mut verdicts)
            }
            CaseKind::Scan { m, n, rows, jmax } => {
                let mut input = CheckInput::new(case.ring.name, &m.name(), m.build(&ring)?);
                if let Some(n) = n {
                    input = input.with_n(&n.name(), n.build(&ring)?);
                }
                for row in rows {
                    let opts = CheckOptions { seed, check_id: Some(format!("{}/{row}", case.id)), ..Default::default() };
                    verdicts.extend(scan_contrapositive(row, &input, *jmax, &opts)?);
                }
                Ok(())
            }
            CaseKind::Witness { theorem, rows, as_m } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index as u64);
                let ws = witness(theorem, &ring, &mut rng)?;
                let d = ring.dim();
                let k = GradedModule::residue_field(ring.clone());
                for (i, w) in ws.iter().enumerate() {
                    witnesses.push(w.summary());
                    let label = format!("W{}({}).{}n={}", &theorem[1..], w.description, w.item, w.n);
                    let input = if *as_m {
                        CheckInput::new(case.ring.name, &label, w.module.clone())
                    } else {
                        CheckInput::new(case.ring.name, "k", k.clone()).with_n(&label, w.module.clone())
                    };
                    let tag = format!("{}#{i}", case.id);
                    run_rows(rows, &input, &[d], seed, &tag, &mut verdicts)?;
                }
                Ok(())
            }
        }
    })();
    if let Err(e) = result {
        record_err(e, &mut error);
    }
    CaseReport {
        id: case.id.clone(),
        description: case.description.into(),
        ring: case.ring.name.into(),
        verdicts,
        witnesses,
        error,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs the cases in parallel; results come back in id order.
pub fn run_corpus_cases(cases: &[CorpusCase], seed: u64) -> CorpusReport {
    let mut reports: Vec<CaseReport> =
        cases.par_iter().enumerate().map(|(i, c)| run_case(c, i, seed)).collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    let mut certificate = ModeTally::default();
    let mut evidence = ModeTally::default();
    let mut witnesses = 0;
    let mut witnesses_ok = 0;
    let mut errors = 0;
    for r in &reports {
        for v in &r.verdicts {
            match v.mode {
                Mode::Certificate => certificate.add(v),
                Mode::Evidence => evidence.add(v),
            }
        }
        witnesses += r.witnesses.len();
        witnesses_ok += r.witnesses.iter().filter(|w| w.ok).count();
        if r.error.is_some() {
            errors += 1;
        }
    }
    CorpusReport { seed, cases: reports, certificate, evidence, witnesses, witnesses_ok, errors }
}

pub fn run_corpus(seed: u64) -> CorpusReport {
    run_corpus_cases(&corpus_cases(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ring_builds() {
        let k = FIELD.build().unwrap();
        assert_eq!(k.dim(), 0);
        assert_eq!(k.multiplicity(), 1);
        let m = ModSpec::K.build(&k).unwrap();
        assert_eq!(m.length().unwrap(), Some(1));
    }

    #[test]
    fn ids_are_unique() {
        let cases = corpus_cases();
        let mut ids: Vec<&str> = cases.iter().map(|c| c.id.as_str()).collect();
        ids.dedup();
        assert_eq!(ids.len(), cases.len());
    }
}
