//! Evaluation of table rows on concrete inputs.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use super::rows::{binomial_bass_sum, plan, row_info, Conclusion, Functor, Mode, RowInfo, Slot};
use crate::error::{Error, Result};
use crate::graded::homdim::{bass_number, hom_dim_report, pd_certificate, ring_depth};
use crate::graded::homology::{ext_vanishes, tor_vanishes};
use crate::graded::{GradedModule, GradedRing};
use crate::invariants::{classify_ring, module_invariants, ModuleInvariants, RingClass};

pub const DEFAULT_JMAX: usize = 6;
pub const DEFAULT_NMAX: usize = 12;
/// Length of evidence windows `[j+1, j+B]`.
pub const DEFAULT_BOUND: usize = 12;

/// Named inputs of a check.
#[derive(Clone, Debug)]
pub struct CheckInput {
    pub ring_name: String,
    pub m_name: String,
    pub m: GradedModule,
    pub n: Option<(String, GradedModule)>,
}

impl CheckInput {
    pub fn new(ring_name: &str, m_name: &str, m: GradedModule) -> Self {
        Self { ring_name: ring_name.into(), m_name: m_name.into(), m, n: None }
    }

    pub fn with_n(mut self, name: &str, n: GradedModule) -> Self {
        self.n = Some((name.into(), n));
        self
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub bound: usize,
    pub seed: u64,
    pub check_id: Option<String>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { bound: DEFAULT_BOUND, seed: 0, check_id: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Hypotheses held and every window vanished.
    Fired,
    HypothesisFailed,
    WindowNotSatisfied,
    /// A resource cap stopped the computation.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowResult {
    pub label: String,
    pub lo: i64,
    pub hi: i64,
    pub vanished: bool,
    pub first_nonvanishing: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremVerdict {
    pub check_id: String,
    pub theorem: String,
    pub ring: String,
    pub modules: BTreeMap<String, String>,
    pub j: usize,
    pub hypotheses: BTreeMap<String, bool>,
    pub windows: Vec<WindowResult>,
    pub vanished: Option<bool>,
    pub mode: Mode,
    pub predicted: String,
    pub verified: Option<bool>,
    pub consistent: bool,
    pub status: Status,
    pub note: String,
    pub seed: u64,
    pub char: u32,
    pub elapsed_ms: u64,
}

impl TheoremVerdict {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.values().all(|&v| v)
    }

    pub fn failed_hypotheses(&self) -> Vec<&str> {
        self.hypotheses.iter().filter(|(_, &v)| !v).map(|(k, _)| k.as_str()).collect()
    }

    /// `min lo` and `max hi` over all windows.
    pub fn window_span(&self) -> Option<(i64, i64)> {
        let lo = self.windows.iter().map(|w| w.lo).min()?;
        let hi = self.windows.iter().map(|w| w.hi).max()?;
        Some((lo, hi))
    }
}

/// Invariants shared by every row evaluated on one input.
pub(crate) struct Ctx<'a> {
    pub ring: &'a Arc<GradedRing>,
    pub m: &'a GradedModule,
    pub n: Option<&'a GradedModule>,
    pub r: GradedModule,
    pub inv_m: ModuleInvariants,
    pub inv_n: Option<ModuleInvariants>,
    pub class: RingClass,
    pub ring_dim: usize,
    pub bound: usize,
}

impl<'a> Ctx<'a> {
    pub(crate) fn new(input: &'a CheckInput, bound: usize) -> Result<Self> {
        let ring = input.m.ring();
        if let Some((_, n)) = &input.n {
            if !Arc::ptr_eq(n.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        let inv_m = module_invariants(&input.m)?;
        let inv_n = match &input.n {
            Some((_, n)) => Some(module_invariants(n)?),
            None => None,
        };
        Ok(Self {
            ring,
            m: &input.m,
            n: input.n.as_ref().map(|(_, n)| n),
            r: GradedModule::ring_module(ring.clone()),
            inv_m,
            inv_n,
            class: classify_ring(ring)?,
            ring_dim: ring.dim(),
            bound,
        })
    }

    pub(crate) fn module(&self, s: Slot) -> Result<&GradedModule> {
        match s {
            Slot::M => Ok(self.m),
            Slot::N => self.n.ok_or_else(|| Error::Inadmissible("row needs a module N".into())),
            Slot::R => Ok(&self.r),
        }
    }

    pub(crate) fn beta(&self, s: Slot, j: usize) -> Result<usize> {
        self.module(s)?.betti(j)
    }

    pub(crate) fn bass(&self, s: Slot, j: usize) -> Result<u64> {
        bass_number(self.module(s)?, j)
    }

    pub(crate) fn bass_sum(&self, s: Slot, j: usize, len: usize) -> Result<u64> {
        let m = self.module(s)?;
        binomial_bass_sum(|i| bass_number(m, i), j, len)
    }

    fn verify(&self, c: Conclusion) -> Result<bool> {
        let class = &self.class;
        Ok(match c {
            Conclusion::PdN => hom_dim_report(self.module(Slot::N)?)?.pd.is_finite(),
            Conclusion::IdN => hom_dim_report(self.module(Slot::N)?)?.id.is_finite(),
            Conclusion::RingCmPdM => {
                ring_depth(self.ring)? == self.ring_dim && pd_certificate(self.m)?.is_finite()
            }
            Conclusion::FreeM => self.m.betti(1)? == 0 && class.is_cm && class.has_min_mult,
            Conclusion::Hypersurface2 => class.is_hypersurface && class.e <= 2,
            Conclusion::Regular => class.is_regular,
            Conclusion::RegularDim2 => class.is_regular && class.dim >= 2,
            Conclusion::Hypersurface2NotField => class.is_hypersurface && class.e <= 2 && !class.is_field,
            Conclusion::Gorenstein => class.is_gorenstein,
            Conclusion::RingCm => class.is_cm,
        })
    }

    fn evaluate_windows(&self, specs: &[super::rows::WindowSpec]) -> Result<Vec<WindowResult>> {
        let mut out = Vec::with_capacity(specs.len());
        for w in specs {
            let a = self.module(w.args.0)?;
            let b = self.module(w.args.1)?;
            let mut first = None;
            for n in w.lo.max(0)..=w.hi {
                let zero = match w.functor {
                    Functor::Tor => tor_vanishes(a, b, n as usize)?,
                    Functor::Ext => ext_vanishes(a, b, n as usize)?,
                };
                if !zero {
                    first = Some(n);
                    break;
                }
            }
            out.push(WindowResult { label: w.label(), lo: w.lo, hi: w.hi, vanished: first.is_none(), first_nonvanishing: first });
            if first.is_some() {
                // a single failing window settles the conjunction
                break;
            }
        }
        Ok(out)
    }
}

fn lookup(id: &str) -> Result<&'static RowInfo> {
    row_info(id).ok_or_else(|| Error::Inadmissible(format!("unknown theorem row {id}")))
}

fn blank_verdict(row: &RowInfo, input: &CheckInput, j: usize, opts: &CheckOptions) -> TheoremVerdict {
    let mut modules = BTreeMap::new();
    modules.insert("M".to_string(), input.m_name.clone());
    if let Some((name, _)) = &input.n {
        modules.insert("N".to_string(), name.clone());
    }
    TheoremVerdict {
        check_id: opts.check_id.clone().unwrap_or_else(|| format!("{}@j={j}", row.id)),
        theorem: row.id.to_string(),
        ring: input.ring_name.clone(),
        modules,
        j,
        hypotheses: BTreeMap::new(),
        windows: Vec::new(),
        vanished: None,
        mode: row.mode,
        predicted: row.conclusion.describe().to_string(),
        verified: None,
        consistent: true,
        status: Status::Inconclusive,
        note: String::new(),
        seed: opts.seed,
        char: input.m.ring().characteristic(),
        elapsed_ms: 0,
    }
}

fn run_row(row: &RowInfo, ctx: &Ctx, input: &CheckInput, j: usize, opts: &CheckOptions) -> Result<TheoremVerdict> {
    let start = Instant::now();
    let mut v = blank_verdict(row, input, j, opts);
    let outcome = (|| -> Result<()> {
        let p = plan(row, ctx, j)?;
        v.hypotheses = p.hypotheses.into_iter().collect();
        v.windows = ctx.evaluate_windows(&p.windows)?;
        let vanished = v.windows.iter().all(|w| w.vanished);
        v.vanished = Some(vanished);
        if !v.hypotheses_hold() {
            v.status = Status::HypothesisFailed;
            v.note = format!("hypothesis failed: {}; no conclusion", v.failed_hypotheses().join(", "));
        } else if !vanished {
            v.status = Status::WindowNotSatisfied;
            v.note = "window not satisfied; no conclusion".into();
        } else {
            v.status = Status::Fired;
            let ok = ctx.verify(row.conclusion)?;
            v.verified = Some(ok);
            v.consistent = ok;
            v.note = if ok {
                format!("{} verified directly", row.conclusion.describe())
            } else {
                format!("INCONSISTENT: window vanished but {} is false", row.conclusion.describe())
            };
        }
        Ok(())
    })();
    match outcome {
        Ok(()) => {}
        Err(Error::ResourceLimit(msg)) => {
            v.status = Status::Inconclusive;
            v.note = format!("inconclusive: limit ({msg})");
        }
        Err(e) => return Err(e),
    }
    v.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(v)
}

/// Evaluates one table row at one `j`.
pub fn check(id: &str, input: &CheckInput, j: usize, opts: &CheckOptions) -> Result<TheoremVerdict> {
    let row = lookup(id)?;
    if row.needs_n && input.n.is_none() {
        return Err(Error::Inadmissible(format!("{id} needs a module N")));
    }
    let ctx = match Ctx::new(input, opts.bound) {
        Ok(c) => c,
        Err(Error::ResourceLimit(msg)) => {
            let mut v = blank_verdict(row, input, j, opts);
            v.note = format!("inconclusive: limit ({msg})");
            return Ok(v);
        }
        Err(e) => return Err(e),
    };
    run_row(row, &ctx, input, j, opts)
}

/// Runs `id` for every admissible `j <= j_max`, provided the conclusion is
/// directly verified false. Each returned verdict is consistent exactly when
/// its window does not fully vanish under the hypotheses.
pub fn scan_contrapositive(id: &str, input: &CheckInput, j_max: usize, opts: &CheckOptions) -> Result<Vec<TheoremVerdict>> {
    let row = lookup(id)?;
    if row.needs_n && input.n.is_none() {
        return Err(Error::Inadmissible(format!("{id} needs a module N")));
    }
    let ctx = Ctx::new(input, opts.bound)?;
    if ctx.verify(row.conclusion)? {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for j in 0..=j_max {
        let mut o = opts.clone();
        o.check_id = opts.check_id.as_ref().map(|c| format!("{c}@j={j}"));
        match run_row(row, &ctx, input, j, &o) {
            Ok(v) => out.push(v),
            Err(Error::Inadmissible(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ring::ring_from_strings;

    fn dual_numbers() -> Arc<GradedRing> {
        ring_from_strings("R", &["x"], &["x^2"]).unwrap()
    }

    #[test]
    fn free_test_module_fires() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2"]).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let input = CheckInput::new("R", "k", k).with_n("R", GradedModule::ring_module(r));
        let v = check("T37.1", &input, 1, &CheckOptions::default()).unwrap();
        assert_eq!(v.status, Status::Fired);
        assert_eq!(v.verified, Some(true));
        assert!(v.consistent);
    }

    #[test]
    fn equality_case_fails_hypothesis() {
        let r = dual_numbers();
        let m = GradedModule::ring_module(r.clone());
        let input = CheckInput::new("R", "R", m.clone()).with_n("R", m);
        let v = check("T37.1", &input, 0, &CheckOptions::default()).unwrap();
        assert_eq!(v.status, Status::HypothesisFailed);
        assert_eq!(v.failed_hypotheses(), vec!["e(M) < 2mu(M)"]);
        assert_eq!(v.verified, None);
    }

    #[test]
    fn residue_field_window_does_not_vanish() {
        let r = dual_numbers();
        let k = GradedModule::residue_field(r);
        let input = CheckInput::new("R", "k", k.clone()).with_n("k", k);
        let v = check("P32.1", &input, 0, &CheckOptions::default()).unwrap();
        assert_eq!((v.windows[0].lo, v.windows[0].hi), (1, 1));
        assert_eq!(v.status, Status::WindowNotSatisfied);
        let scan = scan_contrapositive("P33", &input, 6, &CheckOptions::default()).unwrap();
        assert_eq!(scan.len(), 7);
        assert!(scan.iter().all(|v| v.consistent && v.vanished == Some(false)));
    }

    #[test]
    fn scan_is_empty_when_conclusion_holds() {
        let r = dual_numbers();
        let k = GradedModule::residue_field(r.clone());
        let input = CheckInput::new("R", "k", k).with_n("R", GradedModule::ring_module(r));
        assert!(scan_contrapositive("T37.1", &input, 6, &CheckOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn inadmissible_j_is_an_error() {
        let s = ring_from_strings("S", &["x"], &[]).unwrap();
        let k = GradedModule::residue_field(s.clone());
        let input = CheckInput::new("S", "k", k.clone()).with_n("S", GradedModule::ring_module(s));
        assert!(matches!(check("T37.3", &input, 0, &CheckOptions::default()), Err(Error::Inadmissible(_))));
        assert!(check("T37.3", &input, 1, &CheckOptions::default()).is_ok());
    }
}
