//! The window table: one row per test criterion.

use serde::Serialize;

use super::check::Ctx;
use super::gdim::{bounded_gdim, bounded_semidualizing};
use crate::error::{Error, Result};
use crate::graded::hilbert::binomial;
use crate::graded::homdim::pd_certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Certificate,
    Evidence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Functor {
    Tor,
    Ext,
}

/// Which input fills an argument slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Slot {
    M,
    N,
    R,
}

impl Slot {
    fn name(self) -> &'static str {
        match self {
            Slot::M => "M",
            Slot::N => "N",
            Slot::R => "R",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    PdN,
    IdN,
    RingCmPdM,
    FreeM,
    Hypersurface2,
    Regular,
    RegularDim2,
    Hypersurface2NotField,
    Gorenstein,
    RingCm,
}

impl Conclusion {
    pub fn describe(self) -> &'static str {
        match self {
            Conclusion::PdN => "pd N < inf",
            Conclusion::IdN => "id N < inf",
            Conclusion::RingCmPdM => "R CM and pd M < inf",
            Conclusion::FreeM => "M free and R CM of minimal multiplicity",
            Conclusion::Hypersurface2 => "R hypersurface with e(R) <= 2",
            Conclusion::Regular => "R regular",
            Conclusion::RegularDim2 => "R regular of dimension >= 2",
            Conclusion::Hypersurface2NotField => "R hypersurface with e(R) <= 2, not a field",
            Conclusion::Gorenstein => "R Gorenstein",
            Conclusion::RingCm => "R CM",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowInfo {
    pub id: &'static str,
    pub mode: Mode,
    pub needs_n: bool,
    pub conclusion: Conclusion,
    /// Only meaningful when the conclusion is about `N`.
    pub summary: &'static str,
}

macro_rules! row {
    ($id:expr, $mode:ident, $n:expr, $c:ident, $s:expr) => {
        RowInfo { id: $id, mode: Mode::$mode, needs_n: $n, conclusion: Conclusion::$c, summary: $s }
    };
}

pub const ROWS: &[RowInfo] = &[
    row!("T37.1", Certificate, true, PdN, "M CM, e<2mu; Tor(M,N) on [j-dimM+1, j+b_j(N)]"),
    row!("T37.2", Certificate, true, IdN, "M CM, e<2mu, N CM; Ext(M,N) on [j-dimM+1, j+s+sum C(s,i)mu^{j+i}(N)]"),
    row!("T37.3", Certificate, true, IdN, "M CM, e<2mu, R CM, j>=dimM+d; Ext(M,N) with d"),
    row!("T38", Certificate, true, PdN, "M CM, e<2type; Ext(N,M) on [j+1, j+b_j(N)+dimM]"),
    row!("T310.1", Certificate, true, PdN, "M min mult, e>2mu; Ext(N,M) on [j+1, j+b_j(N)+dimM]"),
    row!("T310.2", Certificate, true, IdN, "M min mult, e<2mu, j>=depth N; Ext(M,N) on [j-dimM+1, j+mu^j(N)]"),
    row!("T310.3", Certificate, true, PdN, "M min mult, e>2type; Tor(M,N) on [j-dimM+1, j+b_j(N)]"),
    row!("T310.4", Certificate, true, IdN, "M min mult, e>2type, N CM; Ext(M,N) with s"),
    row!("T310.5", Certificate, true, IdN, "M min mult, e>2type, R CM, j>=dimM+d; Ext(M,N) with d"),
    row!("P32.1", Certificate, true, PdN, "l(M)<2mu(M); Tor(M,N) on [j+1, j+b_j(N)]"),
    row!("P32.2", Certificate, true, IdN, "l(M)<2mu(M), l(N)<inf; Ext(M,N) on [j+1, j+mu^j(N)]"),
    row!("P33", Certificate, true, PdN, "l(M)<2type(M); Ext(N,M) on [j+1, j+b_j(N)]"),
    row!("P34.1", Certificate, true, PdN, "m^2M=0, l>2mu; Ext(N,M) on [j+1, j+b_j(N)]"),
    row!("P34.2", Certificate, true, IdN, "m^2M=0, l<2mu, j>=depth N; Ext(M,N) on [j+1, j+mu^j(N)]"),
    row!("P34.3", Certificate, true, PdN, "m^2M=0, l>2type; Tor(N,M) on [j+1, j+b_j(N)]"),
    row!("P34.4", Certificate, true, IdN, "m^2M=0, l>2type, l(N)<inf; Ext(M,N) on [j+1, j+mu^j(N)]"),
    row!("T61.1", Certificate, false, RingCmPdM, "M CM, e<2mu; Ext(M,R) with d and Ext(M,M) with s"),
    row!("T61.2", Evidence, false, RingCmPdM, "e=2mu, M min mult; Ext(M,M) on [j+1, j+B]"),
    row!("T61.3", Certificate, false, RingCmPdM, "e>2mu, M min mult; Ext(M,M) on [j+1, j+b_j(M)+dimM]"),
    row!("T62.1", Certificate, false, FreeM, "M min mult, e<2mu; Ext(M,R) and Ext(M,M) from 1"),
    row!("T62.2", Evidence, false, FreeM, "M min mult, e=2mu; Ext(M,M) on [1, B]"),
    row!("T62.3", Certificate, false, FreeM, "M min mult, e>2mu; Ext(M,M) on [1, max(mu+dimM, depth R)]"),
    row!("C41.6", Certificate, true, Hypersurface2, "e(M)<2mu(M), e(N)<=2mu(N); Tor(M,N)"),
    row!("C41.7", Certificate, true, Hypersurface2, "e(M)<2mu(M), e(N)<=2type(N); Ext(M,N)"),
    row!("C41.8", Certificate, true, Hypersurface2, "e(M)<2type(M), e(N)<=2mu(N); Ext(N,M)"),
    row!("C42.6", Certificate, true, Regular, "e(M)<2mu(M), e(N)<2mu(N); Tor(M,N)"),
    row!("C42.7", Certificate, true, Regular, "e(M)<2mu(M), e(N)<2type(N); Ext(M,N)"),
    row!("C42.8", Certificate, true, Regular, "e(M)<2type(M), e(N)<2mu(N); Ext(N,M)"),
    row!("C43.6", Certificate, true, RegularDim2, "e(M)<2mu(M), e(N)>2type(N), N min mult; Tor(M,N)"),
    row!("C43.7", Certificate, true, RegularDim2, "e(M)<2type(M), e(N)>2type(N), N min mult; Ext(N,M)"),
    row!("C43.8", Certificate, true, RegularDim2, "e(M)<2mu(M), e(N)>2mu(N), N min mult; Ext(M,N)"),
    row!("C43.6'", Certificate, true, RegularDim2, "as C43.6; Tor(M,N) on [j-dimN+1, j+b_j(M)]"),
    row!("C43.8'", Certificate, true, RegularDim2, "as C43.8; Ext(M,N) on [j+1, j+b_j(M)+dimN]"),
    row!("C43.8''", Certificate, true, RegularDim2, "as C43.8, M min mult, j>=depth N; Ext(M,N) on [j-dimM+1, j+mu^j(N)]"),
    row!("C44.6", Certificate, true, Hypersurface2NotField, "e(M)<2mu(M), e(N)>=2type(N), N min mult; Tor(M,N)"),
    row!("C44.7", Certificate, true, Hypersurface2NotField, "e(M)<2type(M), e(N)>=2type(N), N min mult; Ext(N,M)"),
    row!("C44.8", Certificate, true, Hypersurface2NotField, "e(M)<2mu(M), e(N)>=2mu(N), N min mult; Ext(M,N)"),
    row!("C46.6", Certificate, false, Regular, "R Gorenstein, M min mult, e!=2mu; self-Ext window"),
    row!("C46.7", Certificate, false, Regular, "R Gorenstein, M min mult, e!=2type; self-Ext window"),
    row!("C51.2", Evidence, false, Gorenstein, "M min mult, e<=2mu, bounded gdim check"),
    row!("C51.3", Evidence, false, Gorenstein, "M min mult, e<2mu; Ext(M,R) on [j+1, j+B]"),
    row!("C51.4", Evidence, true, Gorenstein, "M, N CM, e(M)<2mu(M), pd N<inf; Ext(M,N) on [j+1, j+B]"),
    row!("C56.2", Evidence, true, RingCm, "N semidualizing (bounded), M min mult, e<2mu; Ext(M,N) on [j+1, j+B]"),
];

pub fn row_info(id: &str) -> Option<&'static RowInfo> {
    ROWS.iter().find(|r| r.id == id)
}

/// One vanishing window with evaluated bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowSpec {
    pub functor: Functor,
    pub args: (Slot, Slot),
    pub lo: i64,
    pub hi: i64,
}

impl WindowSpec {
    pub fn label(&self) -> String {
        let f = match self.functor {
            Functor::Tor => "Tor",
            Functor::Ext => "Ext",
        };
        format!("{f}({},{})", self.args.0.name(), self.args.1.name())
    }
}

pub(crate) struct Plan {
    pub hypotheses: Vec<(String, bool)>,
    pub windows: Vec<WindowSpec>,
}

fn w(functor: Functor, a: Slot, b: Slot, lo: i64, hi: i64) -> WindowSpec {
    WindowSpec { functor, args: (a, b), lo, hi }
}

fn inadmissible(row: &str, why: String) -> Error {
    Error::Inadmissible(format!("j is not admissible for {row}: {why}"))
}

/// Evaluates hypotheses and window bounds of `row` at `j`.
pub(crate) fn plan(row: &RowInfo, ctx: &Ctx, j: usize) -> Result<Plan> {
    use Functor::*;
    use Slot::*;
    let ji = j as i64;
    let mut hyps: Vec<(String, bool)> = Vec::new();
    let mut h = |name: &str, v: bool| hyps.push((name.to_string(), v));
    let im = &ctx.inv_m;
    let rm = im.dim as i64;
    let (e, mu, ty) = (im.e, im.mu as i64, im.type_ as i64);
    let lam = im.length;
    let d = ctx.ring_dim as i64;
    let bound = ctx.bound as i64;
    let n_inv = || ctx.inv_n.as_ref().ok_or_else(|| Error::Inadmissible(format!("{} needs a module N", row.id)));

    // shared window shapes
    let tor_mn = || -> Result<WindowSpec> { Ok(w(Tor, M, N, ji - rm + 1, ji + ctx.beta(N, j)? as i64)) };
    let ext_mn_s = |s: i64| -> Result<WindowSpec> {
        Ok(w(Ext, M, N, ji - rm + 1, ji + s + ctx.bass_sum(N, j, s as usize)? as i64))
    };
    let ext_nm = || -> Result<WindowSpec> { Ok(w(Ext, N, M, ji + 1, ji + ctx.beta(N, j)? as i64 + rm)) };

    let windows = match row.id {
        "T37.1" => {
            h("M CM", im.is_cm);
            h("e(M) < 2mu(M)", e < 2 * mu);
            vec![tor_mn()?]
        }
        "T37.2" => {
            let ni = n_inv()?;
            h("M CM", im.is_cm);
            h("e(M) < 2mu(M)", e < 2 * mu);
            h("N CM", ni.is_cm);
            vec![ext_mn_s(ni.dim as i64)?]
        }
        "T37.3" | "T310.5" => {
            if ji < rm + d {
                return Err(inadmissible(row.id, format!("need j >= dim M + d = {}", rm + d)));
            }
            if row.id == "T37.3" {
                h("M CM", im.is_cm);
                h("e(M) < 2mu(M)", e < 2 * mu);
            } else {
                h("M min mult", im.has_min_mult);
                h("e(M) > 2type(M)", e > 2 * ty);
            }
            h("R CM", ctx.class.is_cm);
            vec![ext_mn_s(d)?]
        }
        "T38" => {
            h("M CM", im.is_cm);
            h("e(M) < 2type(M)", e < 2 * ty);
            vec![ext_nm()?]
        }
        "T310.1" => {
            h("M min mult", im.has_min_mult);
            h("e(M) > 2mu(M)", e > 2 * mu);
            vec![ext_nm()?]
        }
        "T310.2" => {
            let ni = n_inv()?;
            if j < ni.depth {
                return Err(inadmissible(row.id, format!("need j >= depth N = {}", ni.depth)));
            }
            h("M min mult", im.has_min_mult);
            h("e(M) < 2mu(M)", e < 2 * mu);
            vec![w(Ext, M, N, ji - rm + 1, ji + ctx.bass(N, j)? as i64)]
        }
        "T310.3" => {
            h("M min mult", im.has_min_mult);
            h("e(M) > 2type(M)", e > 2 * ty);
            vec![tor_mn()?]
        }
        "T310.4" => {
            let ni = n_inv()?;
            h("M min mult", im.has_min_mult);
            h("e(M) > 2type(M)", e > 2 * ty);
            h("N CM", ni.is_cm);
            vec![ext_mn_s(ni.dim as i64)?]
        }
        "P32.1" => {
            h("l(M) < 2mu(M)", lam.is_some_and(|l| l < 2 * mu));
            vec![w(Tor, M, N, ji + 1, ji + ctx.beta(N, j)? as i64)]
        }
        "P32.2" => {
            let ni = n_inv()?;
            h("l(M) < 2mu(M)", lam.is_some_and(|l| l < 2 * mu));
            h("l(N) < inf", ni.length.is_some());
            vec![w(Ext, M, N, ji + 1, ji + ctx.bass(N, j)? as i64)]
        }
        "P33" => {
            h("l(M) < 2type(M)", lam.is_some_and(|l| l < 2 * ty));
            vec![w(Ext, N, M, ji + 1, ji + ctx.beta(N, j)? as i64)]
        }
        "P34.1" | "P34.2" | "P34.3" | "P34.4" => {
            h("m^2 M = 0", ctx.m.is_killed_by_max_squared()?);
            let l = lam.unwrap_or(i64::MAX);
            match row.id {
                "P34.1" => {
                    h("l(M) > 2mu(M)", l > 2 * mu);
                    vec![w(Ext, N, M, ji + 1, ji + ctx.beta(N, j)? as i64)]
                }
                "P34.2" => {
                    let ni = n_inv()?;
                    if j < ni.depth {
                        return Err(inadmissible(row.id, format!("need j >= depth N = {}", ni.depth)));
                    }
                    h("l(M) < 2mu(M)", l < 2 * mu);
                    vec![w(Ext, M, N, ji + 1, ji + ctx.bass(N, j)? as i64)]
                }
                "P34.3" => {
                    h("l(M) > 2type(M)", l > 2 * ty);
                    vec![w(Tor, N, M, ji + 1, ji + ctx.beta(N, j)? as i64)]
                }
                _ => {
                    let ni = n_inv()?;
                    h("l(M) > 2type(M)", l > 2 * ty);
                    h("l(N) < inf", ni.length.is_some());
                    vec![w(Ext, M, N, ji + 1, ji + ctx.bass(N, j)? as i64)]
                }
            }
        }
        "T61.1" => {
            h("M CM", im.is_cm);
            h("e(M) < 2mu(M)", e < 2 * mu);
            vec![
                w(Ext, M, R, ji - rm + 1, ji + d + ctx.bass_sum(R, j, d as usize)? as i64),
                w(Ext, M, M, ji - rm + 1, ji + rm + ctx.bass_sum(M, j, rm as usize)? as i64),
            ]
        }
        "T61.2" => {
            h("M min mult", im.has_min_mult);
            h("e(M) = 2mu(M)", e == 2 * mu);
            vec![w(Ext, M, M, ji + 1, ji + bound)]
        }
        "T61.3" => {
            h("M min mult", im.has_min_mult);
            h("e(M) > 2mu(M)", e > 2 * mu);
            vec![w(Ext, M, M, ji + 1, ji + ctx.beta(M, j)? as i64 + rm)]
        }
        "T62.1" => {
            h("M min mult", im.has_min_mult);
            h("e(M) < 2mu(M)", e < 2 * mu);
            let depth_r = ctx.class.depth as i64;
            let hi_r = (depth_r + ctx.class.type_ as i64).max(rm + ctx.bass(R, im.dim)? as i64);
            vec![w(Ext, M, R, 1, hi_r), w(Ext, M, M, 1, rm + ty)]
        }
        "T62.2" => {
            h("M min mult", im.has_min_mult);
            h("e(M) = 2mu(M)", e == 2 * mu);
            vec![w(Ext, M, M, 1, bound)]
        }
        "T62.3" => {
            h("M min mult", im.has_min_mult);
            h("e(M) > 2mu(M)", e > 2 * mu);
            vec![w(Ext, M, M, 1, (mu + rm).max(ctx.class.depth as i64))]
        }
        id if id.starts_with("C41") || id.starts_with("C42") => {
            let ni = n_inv()?;
            let strict = id.starts_with("C42");
            let cmp = |a: i64, b: i64| if strict { a < b } else { a <= b };
            let rel = if strict { "<" } else { "<=" };
            let (ne, nmu, nty) = (ni.e, ni.mu as i64, ni.type_ as i64);
            h("M CM", im.is_cm);
            h("N CM", ni.is_cm);
            match &id[4..] {
                "6" => {
                    h("e(M) < 2mu(M)", e < 2 * mu);
                    h(&format!("e(N) {rel} 2mu(N)"), cmp(ne, 2 * nmu));
                    vec![tor_mn()?]
                }
                "7" => {
                    h("e(M) < 2mu(M)", e < 2 * mu);
                    h(&format!("e(N) {rel} 2type(N)"), cmp(ne, 2 * nty));
                    vec![ext_mn_s(ni.dim as i64)?]
                }
                _ => {
                    h("e(M) < 2type(M)", e < 2 * ty);
                    h(&format!("e(N) {rel} 2mu(N)"), cmp(ne, 2 * nmu));
                    vec![ext_nm()?]
                }
            }
        }
        id if id.starts_with("C43") || id.starts_with("C44") => {
            let ni = n_inv()?;
            let weak = id.starts_with("C44");
            let cmp = |a: i64, b: i64| if weak { a >= b } else { a > b };
            let rel = if weak { ">=" } else { ">" };
            let (ne, nmu, nty) = (ni.e, ni.mu as i64, ni.type_ as i64);
            let s = ni.dim as i64;
            h("M CM", im.is_cm);
            h("N min mult", ni.has_min_mult);
            match &id[4..] {
                "6" | "6'" => {
                    h("e(M) < 2mu(M)", e < 2 * mu);
                    h(&format!("e(N) {rel} 2type(N)"), cmp(ne, 2 * nty));
                    if id.ends_with('\'') {
                        vec![w(Tor, M, N, ji - s + 1, ji + ctx.beta(M, j)? as i64)]
                    } else {
                        vec![tor_mn()?]
                    }
                }
                "7" => {
                    h("e(M) < 2type(M)", e < 2 * ty);
                    h(&format!("e(N) {rel} 2type(N)"), cmp(ne, 2 * nty));
                    vec![ext_nm()?]
                }
                "8" | "8'" => {
                    h("e(M) < 2mu(M)", e < 2 * mu);
                    h(&format!("e(N) {rel} 2mu(N)"), cmp(ne, 2 * nmu));
                    if id.ends_with('\'') {
                        vec![w(Ext, M, N, ji + 1, ji + ctx.beta(M, j)? as i64 + s)]
                    } else {
                        vec![ext_mn_s(s)?]
                    }
                }
                _ => {
                    if j < ni.depth {
                        return Err(inadmissible(row.id, format!("need j >= depth N = {}", ni.depth)));
                    }
                    h("e(M) < 2mu(M)", e < 2 * mu);
                    h(&format!("e(N) {rel} 2mu(N)"), cmp(ne, 2 * nmu));
                    h("M min mult", im.has_min_mult);
                    vec![w(Ext, M, N, ji - rm + 1, ji + ctx.bass(N, j)? as i64)]
                }
            }
        }
        "C46.6" | "C46.7" => {
            h("R Gorenstein", ctx.class.is_gorenstein);
            h("M min mult", im.has_min_mult);
            if row.id == "C46.6" {
                h("e(M) != 2mu(M)", e != 2 * mu);
            } else {
                h("e(M) != 2type(M)", e != 2 * ty);
            }
            let s = rm;
            let a = ji + 2 * s + ctx.bass_sum(M, j + s as usize, s as usize)? as i64;
            let b = ji + ctx.beta(M, j)? as i64 + s;
            vec![w(Ext, M, M, ji + 1, a.max(b))]
        }
        "C51.2" => {
            h("M CM", im.is_cm);
            h("M min mult", im.has_min_mult);
            h("e(M) <= 2mu(M)", e <= 2 * mu);
            h("gdim M < inf (bounded check)", bounded_gdim(ctx.m, ctx.bound)?.passed);
            vec![]
        }
        "C51.3" => {
            h("M min mult", im.has_min_mult);
            h("e(M) < 2mu(M)", e < 2 * mu);
            vec![w(Ext, M, R, ji + 1, ji + bound)]
        }
        "C51.4" => {
            let ni = n_inv()?;
            h("M CM", im.is_cm);
            h("N CM", ni.is_cm);
            h("e(M) < 2mu(M)", e < 2 * mu);
            h("pd N < inf", pd_certificate(ctx.n.unwrap())?.is_finite());
            vec![w(Ext, M, N, ji + 1, ji + bound)]
        }
        "C56.2" => {
            h("N semidualizing (bounded check)", bounded_semidualizing(ctx.n.unwrap(), ctx.bound)?.passed);
            h("M min mult", im.has_min_mult);
            h("e(M) < 2mu(M)", e < 2 * mu);
            vec![w(Ext, M, N, ji + 1, ji + bound)]
        }
        other => return Err(Error::Inadmissible(format!("unknown theorem row {other}"))),
    };
    Ok(Plan { hypotheses: hyps, windows })
}

/// `sum_{i=0}^{s} C(s,i) mu^{j+i}`.
pub(crate) fn binomial_bass_sum(bass: impl Fn(usize) -> Result<u64>, j: usize, s: usize) -> Result<u64> {
    let mut acc = 0u64;
    for i in 0..=s {
        acc += binomial(s as i64, i as i64) as u64 * bass(j + i)?;
    }
    Ok(acc)
}
