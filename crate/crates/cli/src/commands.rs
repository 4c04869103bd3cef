//! Subcommands: each returns human-readable text, report records and an exit code.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use cmlab_core::artinian::agree_check;
use cmlab_core::graded::{bass_numbers, ext, tor, GradedModule};
use cmlab_core::invariants::{classify_ring, complexity_estimate, invariant_report};
use cmlab_core::lab::{
    check, corpus_cases, explore_q52, row_info, run_corpus_cases, witness, CheckInput, CheckOptions, ExplorerParams,
    Record, Status, TheoremVerdict, DEFAULT_BOUND, DEFAULT_JMAX, DEFAULT_NMAX,
};
use cmlab_core::Error;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult, EXIT_INCONSISTENT, EXIT_LIMIT, EXIT_OK};
use crate::session::Session;

#[derive(Parser, Debug)]
#[command(name = "cmlab", version, about = "Graded commutative algebra engine and criterion checker")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Session file (same as --file)
    #[arg(value_name = "FILE")]
    pub path: Option<PathBuf>,
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Write one JSON record per result to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Module invariants and certified pd/id
    Invariants {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
    },
    /// Ring classification
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Graded Betti table of a minimal free resolution
    Resolve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Betti numbers beta_0..beta_nmax
    Betti {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Bass numbers mu^0..mu^nmax
    Bass {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Tor_n(M, N), for one n or for 0..nmax
    Tor {
        #[command(flatten)]
        common: Common,
        #[arg(long = "M")]
        m: String,
        #[arg(long = "N")]
        n: String,
        #[arg(long = "n")]
        deg: Option<usize>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Ext^n(M, N), for one n or for 0..nmax
    Ext {
        #[command(flatten)]
        common: Common,
        #[arg(long = "M")]
        m: String,
        #[arg(long = "N")]
        n: String,
        #[arg(long = "n")]
        deg: Option<usize>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// One criterion at one j, or at every admissible j up to jmax
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        id: String,
        #[arg(long = "M")]
        m: String,
        #[arg(long = "N")]
        n: Option<String>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// The builtin corpus
    Corpus {
        #[command(flatten)]
        common: Common,
        /// Only cases whose id contains this text
        #[arg(long)]
        case: Option<String>,
    },
    /// Witness modules for T41, T42, T43, T44 or C46 over the session ring
    Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        id: String,
    },
    /// Random search on the Gorenstein question for lambda(M) = 2 mu(M)
    #[command(name = "explore-q52")]
    ExploreQ52 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Compare the graded engine with the finite-dimensional oracle
    Agree {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        nmax: Option<usize>,
    },
}

pub struct Outcome {
    pub text: String,
    pub records: Vec<Value>,
    pub exit: i32,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Invariants { common, .. }
            | Command::Classify { common }
            | Command::Resolve { common, .. }
            | Command::Betti { common, .. }
            | Command::Bass { common, .. }
            | Command::Tor { common, .. }
            | Command::Ext { common, .. }
            | Command::Check { common, .. }
            | Command::Corpus { common, .. }
            | Command::Witness { common, .. }
            | Command::ExploreQ52 { common, .. }
            | Command::Agree { common, .. } => common,
        }
    }
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("records serialize")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load(common: &Common) -> CliResult<Session> {
    let path = match (&common.path, &common.file) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give the session file once".into())),
        (Some(p), None) | (None, Some(p)) => p,
        (None, None) => return Err(CliError::Usage("a session file is required (--file PATH)".into())),
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Session::parse(&text)
}

struct Ctx {
    session: Session,
    seed: u64,
}

impl Ctx {
    fn new(common: &Common) -> CliResult<Self> {
        let session = load(common)?;
        let seed = common.seed.or(session.seed()).unwrap_or(0);
        Ok(Self { session, seed })
    }

    fn module_name<'a>(&'a self, name: &'a Option<String>) -> &'a str {
        name.as_deref().unwrap_or(&self.session.file.ring.name)
    }

    fn nmax(&self, flag: Option<usize>) -> usize {
        flag.or(self.session.file.options.nmax).unwrap_or(DEFAULT_NMAX)
    }

    fn ring_label(&self) -> String {
        self.session.ring.describe()
    }

    fn computation<V: Serialize>(&self, id: String, what: &str, modules: &[(&str, &str)], value: V, start: Instant) -> Value {
        let modules: BTreeMap<String, String> = modules.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        json(&Record::computation(
            id,
            what,
            self.ring_label(),
            modules,
            value,
            self.seed,
            self.session.ring.characteristic(),
            start.elapsed().as_millis() as u64,
        ))
    }
}

fn ok(text: String, records: Vec<Value>) -> CliResult<Outcome> {
    Ok(Outcome { text, records, exit: EXIT_OK })
}

pub fn run(cmd: &Command) -> CliResult<Outcome> {
    match cmd {
        Command::Invariants { common, module } => {
            let ctx = Ctx::new(common)?;
            let name = ctx.module_name(module);
            let start = Instant::now();
            let m = ctx.session.module(name)?;
            let r = invariant_report(&m)?;
            let b = &r.base;
            let mut t = format!("module {name} over {}\n", ctx.ring_label());
            let len = b.length.map_or("inf".to_string(), |l| l.to_string());
            for (k, v) in [
                ("dim", b.dim.to_string()),
                ("depth", b.depth.to_string()),
                ("CM", yes(b.is_cm).to_string()),
                ("e", b.e.to_string()),
                ("mu", b.mu.to_string()),
                ("mu(mM)", b.mu_m.to_string()),
                ("length", len),
                ("type", b.type_.to_string()),
                ("min mult", yes(b.has_min_mult).to_string()),
                ("Ulrich", yes(b.is_ulrich).to_string()),
                ("pd", r.pd.to_string()),
                ("id", r.id.to_string()),
            ] {
                let _ = writeln!(t, "  {k:<9} {v}");
            }
            let rec = ctx.computation(format!("invariants/{name}"), "invariants", &[("M", name)], &r, start);
            ok(t, vec![rec])
        }
        Command::Classify { common } => {
            let ctx = Ctx::new(common)?;
            let start = Instant::now();
            let c = classify_ring(&ctx.session.ring)?;
            let mut t = format!("ring {} = {}\n", ctx.session.file.ring.name, ctx.ring_label());
            for (k, v) in [
                ("regular", yes(c.is_regular).to_string()),
                ("hypersurface", yes(c.is_hypersurface).to_string()),
                ("Gorenstein", yes(c.is_gorenstein).to_string()),
                ("CM", yes(c.is_cm).to_string()),
                ("min mult", yes(c.has_min_mult).to_string()),
                ("field", yes(c.is_field).to_string()),
                ("e", c.e.to_string()),
                ("dim", c.dim.to_string()),
                ("depth", c.depth.to_string()),
                ("embdim", c.embdim.to_string()),
                ("type", c.type_.to_string()),
            ] {
                let _ = writeln!(t, "  {k:<13} {v}");
            }
            let rec = ctx.computation("classify".into(), "classify", &[], &c, start);
            ok(t, vec![rec])
        }
        Command::Resolve { common, module, nmax } => {
            let ctx = Ctx::new(common)?;
            let name = ctx.module_name(module);
            let n = ctx.nmax(*nmax);
            let start = Instant::now();
            let m = ctx.session.module(name)?;
            let res = m.resolve(n)?;
            let table = res.betti_table();
            let cols = (0..=n).take_while(|&i| res.betti(i).is_some_and(|b| b > 0)).count();
            let mut t = format!("minimal free resolution of {name} over {}\n", ctx.ring_label());
            let _ = write!(t, "{:>7}", "");
            for i in 0..cols {
                let _ = write!(t, "{i:>7}");
            }
            let _ = write!(t, "\n{:>7}", "total:");
            for i in 0..cols {
                let _ = write!(t, "{:>7}", res.betti(i).unwrap_or(0));
            }
            t.push('\n');
            let shifts: std::collections::BTreeSet<i64> =
                table.keys().filter(|(i, _)| *i <= n).map(|(i, d)| *d as i64 - *i as i64).collect();
            let mut rows = Vec::new();
            for s in &shifts {
                let _ = write!(t, "{:>7}", format!("{s}:"));
                let mut row = Vec::new();
                for i in 0..cols {
                    let v = table.get(&(i, (s + i as i64) as i32)).copied().unwrap_or(0);
                    row.push(v);
                    if v == 0 {
                        let _ = write!(t, "{:>7}", "-");
                    } else {
                        let _ = write!(t, "{v:>7}");
                    }
                }
                rows.push((*s, row));
                t.push('\n');
            }
            match res.length() {
                Some(l) if l <= n => {
                    let _ = writeln!(t, "resolution has length {l}");
                }
                _ => {
                    let _ = writeln!(t, "truncated at homological degree {n}");
                }
            }
            let totals: Vec<usize> = (0..cols).map(|i| res.betti(i).unwrap_or(0)).collect();
            let value = serde_json::json!({ "betti": totals, "table": rows, "length": res.length() });
            let rec = ctx.computation(format!("resolve/{name}"), "resolve", &[("M", name)], value, start);
            ok(t, vec![rec])
        }
        Command::Betti { common, module, nmax } => {
            let ctx = Ctx::new(common)?;
            let name = ctx.module_name(module);
            let n = ctx.nmax(*nmax);
            let start = Instant::now();
            let b = ctx.session.module(name)?.betti_numbers(n)?;
            // too short a sequence gives no estimate rather than an error
            let c = complexity_estimate(&b).ok();
            let mut t = format!("Betti numbers of {name}, n = 0..{n}\n  {b:?}\n");
            if let Some(c) = &c {
                let cx = c.estimate.map_or("unbounded".to_string(), |v| v.to_string());
                let _ = writeln!(t, "  complexity estimate: {cx} (heuristic)");
            }
            let value = serde_json::json!({ "betti": b, "complexity": c });
            let rec = ctx.computation(format!("betti/{name}"), "betti", &[("M", name)], value, start);
            ok(t, vec![rec])
        }
        Command::Bass { common, module, nmax } => {
            let ctx = Ctx::new(common)?;
            let name = ctx.module_name(module);
            let n = ctx.nmax(*nmax);
            let start = Instant::now();
            let b = bass_numbers(&ctx.session.module(name)?, n)?;
            let t = format!("Bass numbers of {name}, n = 0..{n}\n  {b:?}\n");
            let rec = ctx.computation(format!("bass/{name}"), "bass", &[("M", name)], &b, start);
            ok(t, vec![rec])
        }
        Command::Tor { common, m, n, deg, nmax } | Command::Ext { common, m, n, deg, nmax } => {
            let is_tor = matches!(cmd, Command::Tor { .. });
            let what = if is_tor { "tor" } else { "ext" };
            let ctx = Ctx::new(common)?;
            let mm = ctx.session.module(m)?;
            let nn = ctx.session.module(n)?;
            let degs: Vec<usize> = match deg {
                Some(d) => vec![*d],
                None => (0..=ctx.nmax(*nmax)).collect(),
            };
            let mut t = String::new();
            let mut recs = Vec::new();
            for d in degs {
                let start = Instant::now();
                let h = if is_tor { tor(&mm, &nn, d)? } else { ext(&mm, &nn, d)? };
                let dim = h.k_dimension.map_or("infinite length".to_string(), |v| format!("dim_k = {v}"));
                let label = if is_tor { format!("Tor_{d}({m},{n})") } else { format!("Ext^{d}({m},{n})") };
                let _ = writeln!(t, "{label:<16} {} ({dim})", if h.vanishes { "0" } else { "nonzero" });
                let id = format!("{what}/{m}/{n}/{d}");
                recs.push(ctx.computation(id, what, &[("M", m), ("N", n)], serde_json::json!({ "n": d, "result": h }), start));
            }
            ok(t, recs)
        }
        Command::Check { common, id, m, n, j, jmax, bound } => {
            let ctx = Ctx::new(common)?;
            let info = row_info(id).ok_or_else(|| CliError::Usage(format!("unknown criterion '{id}'")))?;
            let mut input = CheckInput::new(&ctx.ring_label(), m, ctx.session.module(m)?);
            if let Some(n) = n {
                input = input.with_n(n, ctx.session.module(n)?);
            } else if info.needs_n {
                return Err(CliError::Usage(format!("{id} needs --N")));
            }
            let bound = bound.or(ctx.session.file.options.bound).unwrap_or(DEFAULT_BOUND);
            let opts = CheckOptions { bound, seed: ctx.seed, check_id: None };
            let verdicts = match j {
                Some(j) => vec![check(id, &input, *j, &opts)?],
                None => {
                    let top = jmax.or(ctx.session.file.options.jmax).unwrap_or(DEFAULT_JMAX);
                    let mut out = Vec::new();
                    for j in 0..=top {
                        match check(id, &input, j, &opts) {
                            Ok(v) => out.push(v),
                            Err(Error::Inadmissible(_)) => continue,
                            Err(e) => return Err(e.into()),
                        }
                    }
                    out
                }
            };
            let mut t = String::new();
            for v in &verdicts {
                t.push_str(&format_verdict(v, info.summary));
            }
            Ok(verdict_outcome(t, &verdicts))
        }
        Command::Corpus { common, case } => {
            let seed = common.seed.unwrap_or(0);
            let mut cases = corpus_cases();
            if let Some(c) = case {
                cases.retain(|x| x.id.contains(c.as_str()));
            }
            let start = Instant::now();
            let report = run_corpus_cases(&cases, seed);
            let mut t = String::new();
            let mut recs = Vec::new();
            for c in &report.cases {
                let inc = c.verdicts.iter().filter(|v| !v.consistent).count() + c.witnesses.iter().filter(|w| !w.ok).count();
                let fired = c.verdicts.iter().filter(|v| v.status == Status::Fired).count();
                let _ = writeln!(
                    t,
                    "{:<34} {:>4} checks {:>4} fired {:>3} witnesses  {}",
                    c.id,
                    c.verdicts.len(),
                    fired,
                    c.witnesses.len(),
                    match (&c.error, inc) {
                        (Some(e), _) => format!("ERROR {e}"),
                        (None, 0) => "consistent".to_string(),
                        (None, k) => format!("{k} INCONSISTENT"),
                    }
                );
                for v in &c.verdicts {
                    if !v.consistent {
                        let _ = writeln!(t, "    {}: {}", v.check_id, v.note);
                    }
                    recs.push(json(&Record::from_verdict(v)));
                }
                for (i, w) in c.witnesses.iter().enumerate() {
                    let mut modules = BTreeMap::new();
                    modules.insert("N".to_string(), w.description.clone());
                    let mut r = Record::computation(
                        format!("{}/witness#{i}", c.id),
                        format!("{}({})", w.theorem, w.item),
                        c.ring.clone(),
                        modules,
                        w.ok,
                        seed,
                        cmlab_core::algebra::PrimeField::default().characteristic(),
                        0,
                    );
                    r.mode = "witness".into();
                    r.j = Some(w.n);
                    r.hypotheses = w.checks.clone();
                    r.predicted = format!("existence clause of item {} for n = {}", w.item, w.n);
                    r.consistent = w.ok;
                    recs.push(json(&r));
                }
                if let Some(e) = &c.error {
                    let mut modules = BTreeMap::new();
                    modules.insert("case".to_string(), c.description.clone());
                    let mut r = Record::computation(format!("{}/error", c.id), "error", c.ring.clone(), modules, e.clone(), seed, 32003, 0);
                    r.predicted = "case runs to completion".into();
                    recs.push(json(&r));
                }
            }
            let ce = &report.certificate;
            let ev = &report.evidence;
            let _ = writeln!(
                t,
                "\n{} cases in {:.1} s\ncertificate: {} checks, {} fired, {} hypothesis failed, {} window not satisfied, {} inconclusive, {} inconsistent",
                report.cases.len(),
                start.elapsed().as_secs_f64(),
                ce.checks,
                ce.fired,
                ce.hypothesis_failed,
                ce.window_not_satisfied,
                ce.inconclusive,
                ce.inconsistent
            );
            let _ = writeln!(
                t,
                "evidence:    {} checks, {} fired, {} hypothesis failed, {} window not satisfied, {} inconclusive, {} inconsistent",
                ev.checks, ev.fired, ev.hypothesis_failed, ev.window_not_satisfied, ev.inconclusive, ev.inconsistent
            );
            let _ = writeln!(t, "witnesses:   {}/{} satisfy their clause", report.witnesses_ok, report.witnesses);
            let exit = if report.inconsistent() > 0 {
                t.push_str("verdict: INCONSISTENT\n");
                EXIT_INCONSISTENT
            } else if report.errors > 0 {
                t.push_str("verdict: errors in some cases\n");
                crate::error::EXIT_USAGE
            } else if report.inconclusive() > 0 {
                t.push_str("verdict: consistent, some checks inconclusive\n");
                EXIT_LIMIT
            } else {
                t.push_str("verdict: all consistent\n");
                EXIT_OK
            };
            Ok(Outcome { text: t, records: recs, exit })
        }
        Command::Witness { common, id } => {
            let ctx = Ctx::new(common)?;
            let start = Instant::now();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(ctx.seed);
            let ws = witness(id, &ctx.session.ring, &mut rng)?;
            let mut t = format!("{id} witnesses over {}\n", ctx.ring_label());
            let mut recs = Vec::new();
            let mut all = true;
            for (i, w) in ws.iter().enumerate() {
                all &= w.ok();
                let _ = writeln!(t, "item {} n = {}: {}  [{}]", w.item, w.n, w.description, if w.ok() { "ok" } else { "FAILED" });
                for (k, v) in &w.checks {
                    let _ = writeln!(t, "    {k:<14} {}", yes(*v));
                }
                let value = serde_json::json!({ "ok": w.ok(), "relations": describe_rows(&w.module) });
                let mut r = Record::computation(
                    format!("witness/{id}#{i}"),
                    format!("{id}({})", w.item),
                    ctx.ring_label(),
                    BTreeMap::from([("N".to_string(), w.description.clone())]),
                    value,
                    ctx.seed,
                    ctx.session.ring.characteristic(),
                    start.elapsed().as_millis() as u64,
                );
                r.mode = "witness".into();
                r.j = Some(w.n);
                r.hypotheses = w.checks.clone();
                r.predicted = format!("existence clause of item {} for n = {}", w.item, w.n);
                r.consistent = w.ok();
                recs.push(json(&r));
            }
            Ok(Outcome { text: t, records: recs, exit: if all { EXIT_OK } else { EXIT_INCONSISTENT } })
        }
        Command::ExploreQ52 { common, bound, trials } => {
            let defaults = ExplorerParams::default();
            let params = ExplorerParams {
                bound: bound.unwrap_or(defaults.bound),
                trials: trials.unwrap_or(defaults.trials),
                seed: common.seed.unwrap_or(0),
                ..defaults
            };
            let report = explore_q52(&params)?;
            let mut recs = Vec::new();
            for tr in &report.trials {
                let Some(e) = &tr.examination else { continue };
                if !e.passed_filter {
                    continue;
                }
                let mut r = Record::computation(
                    format!("q52/trial{}", tr.trial),
                    "Q52",
                    tr.ring.clone(),
                    BTreeMap::from([("M".to_string(), format!("R^{} / ({})", e.mu, tr.module.join("; ")))]),
                    json(e),
                    tr.seed,
                    params.char,
                    0,
                );
                r.mode = "evidence".into();
                r.window_lo = Some(1);
                r.window_hi = Some(params.bound as i64);
                r.vanished = Some(true);
                r.hypotheses = BTreeMap::from([
                    ("m^2 M = 0".to_string(), true),
                    ("lambda(M) = 2mu(M)".to_string(), true),
                ]);
                r.predicted = "R Gorenstein".into();
                recs.push(json(&r));
            }
            let mut t = format!(
                "{} trials (seed {}, B = {}): {} examined, {} passed the Ext filter ({} over Gorenstein rings), {} inconclusive\n",
                params.trials,
                params.seed,
                params.bound,
                report.examined,
                report.passed_filter,
                report.gorenstein_passed,
                report.inconclusive
            );
            for &i in &report.flagged {
                let tr = &report.trials[i];
                let _ = writeln!(t, "FLAGGED trial {i}: R = {}, relations {:?}", tr.ring, tr.module);
            }
            let _ = writeln!(t, "{}", report.verdict());
            ok(t, recs)
        }
        Command::Agree { common, module, nmax } => {
            let ctx = Ctx::new(common)?;
            let name = ctx.module_name(module);
            let n = nmax.unwrap_or(8);
            let start = Instant::now();
            let a = agree_check(&ctx.session.module(name)?, n)?;
            let mut t = format!("{name} over {}, n <= {n}\n", ctx.ring_label());
            let _ = writeln!(t, "  length  {} / {}", a.length_graded, a.length_oracle);
            let _ = writeln!(t, "  betti   {:?}\n          {:?}", a.betti_graded, a.betti_oracle);
            let _ = writeln!(t, "  bass    {:?}\n          {:?}", a.bass_graded, a.bass_oracle);
            let _ = writeln!(t, "  agree   {}", yes(a.agree));
            if let Some(d) = &a.discrepancy {
                let _ = writeln!(t, "  first discrepancy: {d}");
            }
            let mut rec = Record::computation(
                format!("agree/{name}"),
                "agree",
                ctx.ring_label(),
                BTreeMap::from([("M".to_string(), name.to_string())]),
                json(&a),
                ctx.seed,
                ctx.session.ring.characteristic(),
                start.elapsed().as_millis() as u64,
            );
            rec.predicted = "graded engine = oracle".into();
            rec.consistent = a.agree;
            let exit = if a.agree { EXIT_OK } else { EXIT_INCONSISTENT };
            Ok(Outcome { text: t, records: vec![json(&rec)], exit })
        }
    }
}

fn describe_rows(m: &GradedModule) -> Vec<String> {
    let ring = m.ring();
    m.relation_rows()
        .iter()
        .map(|row| row.iter().map(|p| p.format(ring.field(), ring.vars())).collect::<Vec<_>>().join(", "))
        .collect()
}

pub fn format_verdict(v: &TheoremVerdict, summary: &str) -> String {
    let mut t = String::new();
    let mods: Vec<String> = v.modules.iter().map(|(k, n)| format!("{k} = {n}")).collect();
    let mode = match v.mode {
        cmlab_core::lab::Mode::Certificate => "certificate",
        cmlab_core::lab::Mode::Evidence => "evidence",
    };
    let _ = writeln!(t, "{} over {}, {}, j = {} [{mode}]", v.theorem, v.ring, mods.join(", "), v.j);
    let _ = writeln!(t, "  {summary}");
    for (h, ok) in &v.hypotheses {
        let _ = writeln!(t, "  hypothesis {h:<24} {}", yes(*ok));
    }
    for w in &v.windows {
        let state = if w.lo > w.hi {
            "empty".to_string()
        } else if w.vanished {
            "vanished".to_string()
        } else {
            match w.first_nonvanishing {
                Some(i) => format!("not vanished (nonzero at {i})"),
                None => "not evaluated".to_string(),
            }
        };
        let _ = writeln!(t, "  window {} [{}, {}]: {state}", w.label, w.lo, w.hi);
    }
    let _ = writeln!(t, "  verdict: {}", v.note);
    t
}

fn verdict_outcome(text: String, verdicts: &[TheoremVerdict]) -> Outcome {
    let exit = if verdicts.iter().any(|v| !v.consistent) {
        EXIT_INCONSISTENT
    } else if verdicts.iter().any(|v| v.status == Status::Inconclusive) {
        EXIT_LIMIT
    } else {
        EXIT_OK
    };
    let records = verdicts.iter().map(|v| json(&Record::from_verdict(v))).collect();
    Outcome { text, records, exit }
}

/// Writes records as one JSON object per line.
pub fn write_records(path: &PathBuf, records: &[Value]) -> CliResult<()> {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).expect("records serialize"));
        s.push('\n');
    }
    std::fs::write(path, s).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}
