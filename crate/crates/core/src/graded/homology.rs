//! Tor and Ext as homology of `F(M) (x) N` and `Hom(F(M), N)`.
//!
//! Both complexes are sums of shifted copies of `N` with maps induced by a
//! matrix over `R`, so a single routine handles them: build the kernel of the
//! outgoing map modulo the target relations, then compare it with the image of
//! the incoming map plus the middle relations.

use std::sync::Arc;

use serde::Serialize;

use super::hilbert::HilbertSeries;
use super::module::GradedModule;
use super::ring::GradedRing;
use crate::algebra::{buchberger, kernel, mingens, FreeVector, GroebnerBasis, Term, TermOrder};
use crate::error::{Error, Result};

/// A map between sums of shifted copies of `R`: column `j` is the image of
/// source block `j`, written in the target blocks.
#[derive(Clone, Debug)]
pub struct BlockMap {
    pub src: Vec<i32>,
    pub tgt: Vec<i32>,
    pub cols: Vec<FreeVector>,
}

impl BlockMap {
    /// Dual map with negated shifts, as used by `Hom(-, N)`.
    pub fn dual(&self, field: &crate::algebra::PrimeField) -> BlockMap {
        let mut rows: Vec<Vec<Term>> = vec![Vec::new(); self.tgt.len()];
        for (j, col) in self.cols.iter().enumerate() {
            for t in col.terms() {
                rows[t.comp as usize].push(Term { comp: j as u32, ..*t });
            }
        }
        BlockMap {
            src: self.tgt.iter().map(|d| -d).collect(),
            tgt: self.src.iter().map(|d| -d).collect(),
            cols: rows.into_iter().map(|r| FreeVector::from_terms(field, TermOrder::Grevlex, r)).collect(),
        }
    }
}

/// Outcome of one Tor/Ext computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyInfo {
    pub vanishes: bool,
    /// k-dimension, present iff the homology has finite length.
    pub k_dimension: Option<u64>,
}

/// Data of `N` needed to form sums of copies.
struct Coefficients {
    degrees: Vec<i32>,
    gb: Arc<GroebnerBasis>,
}

impl Coefficients {
    fn of(n: &GradedModule) -> Result<Self> {
        let mp = n.minimal_presentation()?;
        Ok(Self { degrees: mp.degrees().to_vec(), gb: mp.relation_gb()? })
    }

    fn a(&self) -> usize {
        self.degrees.len()
    }

    fn twists(&self, shifts: &[i32]) -> Vec<i32> {
        let mut t = Vec::with_capacity(shifts.len() * self.a());
        for s in shifts {
            for d in &self.degrees {
                t.push(s + d);
            }
        }
        t
    }

    fn relations(&self, blocks: usize) -> Vec<FreeVector> {
        let a = self.a() as i64;
        let mut out = Vec::with_capacity(blocks * self.gb.len());
        for k in 0..blocks as i64 {
            out.extend(self.gb.elements().iter().map(|g| g.shift_components(k * a)));
        }
        out
    }

    /// Columns of `map (x) N`, indexed by `(source block, generator of N)`.
    fn tensor(&self, map: &BlockMap) -> Vec<FreeVector> {
        let a = self.a() as u32;
        let mut out = Vec::with_capacity(map.cols.len() * self.a());
        for col in &map.cols {
            for s in 0..a {
                let terms = col.terms().iter().map(|t| Term { comp: t.comp * a + s, ..*t }).collect();
                out.push(FreeVector::from_sorted_unchecked(terms));
            }
        }
        out
    }
}

/// Homology at the middle of `src --in--> mid --out--> tgt`, each a sum of copies of `N`.
struct Homology {
    twists: Vec<i32>,
    kernel_gens: Vec<FreeVector>,
    boundary: GroebnerBasis,
}

fn middle_homology(
    ring: &GradedRing,
    n: &Coefficients,
    mid: &[i32],
    incoming: Option<&BlockMap>,
    outgoing: Option<&BlockMap>,
) -> Result<Homology> {
    let f = ring.field();
    let limits = ring.limits();
    let twists = n.twists(mid);
    let kernel_gens = match outgoing {
        Some(out) if !out.tgt.is_empty() => {
            let cols = n.tensor(out);
            kernel(f, &n.twists(&out.tgt), &cols, &twists, &n.relations(out.tgt.len()), limits)?
        }
        _ => (0..twists.len()).map(|i| FreeVector::unit(i as u32)).collect(),
    };
    let mut bgens = n.relations(mid.len());
    if let Some(inc) = incoming {
        bgens.extend(n.tensor(inc));
    }
    let boundary = buchberger(f, TermOrder::Grevlex, &twists, &bgens, limits)?;
    Ok(Homology { twists, kernel_gens, boundary })
}

impl Homology {
    fn vanishes(&self) -> bool {
        self.kernel_gens.iter().all(|v| self.boundary.contains(v))
    }

    fn info(&self, ring: &GradedRing) -> Result<HomologyInfo> {
        if self.vanishes() {
            return Ok(HomologyInfo { vanishes: true, k_dimension: Some(0) });
        }
        let f = ring.field();
        let mut gens = self.kernel_gens.clone();
        gens.extend(self.boundary.elements().iter().cloned());
        let kgb = buchberger(f, TermOrder::Grevlex, &self.twists, &gens, ring.limits())?;
        let h = series_of(&self.boundary, &self.twists, ring.nvars()).sub(&series_of(&kgb, &self.twists, ring.nvars()));
        let k_dimension = if h.pole == 0 { Some(h.reduced.eval_one() as u64) } else { None };
        Ok(HomologyInfo { vanishes: false, k_dimension })
    }

    fn module(&self, ring: &Arc<GradedRing>) -> Result<GradedModule> {
        let f = ring.field();
        let limits = ring.limits();
        let sel = mingens(f, &self.twists, &self.kernel_gens, self.boundary.elements(), limits)?;
        let cols: Vec<FreeVector> = sel.iter().map(|&i| self.boundary.normal_form(&self.kernel_gens[i])).collect();
        let degs: Vec<i32> = cols.iter().map(|c| c.degree(&self.twists).unwrap()).collect();
        let raw = kernel(f, &self.twists, &cols, &degs, self.boundary.elements(), limits)?;
        let keep = mingens(f, &degs, &raw, &ring.ideal_relations(&degs), limits)?;
        let rels = keep.into_iter().map(|i| ring.reduce_vector(&raw[i])).collect();
        GradedModule::new(ring.clone(), degs, rels)
    }
}

fn series_of(gb: &GroebnerBasis, twists: &[i32], nvars: usize) -> HilbertSeries {
    let mut num = super::hilbert::Laurent::zero();
    for (c, ms) in gb.leading_monomials().iter().enumerate() {
        num = num.add(&super::hilbert::monomial_ideal_numerator(ms).shift(twists[c]));
    }
    HilbertSeries::new(num, nvars)
}

fn check_rings(m: &GradedModule, n: &GradedModule) -> Result<()> {
    if Arc::ptr_eq(m.ring(), n.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn tor_complex(m: &GradedModule, deg: usize) -> Result<(Vec<i32>, Option<BlockMap>, Option<BlockMap>)> {
    let res = m.resolve(deg + 1)?;
    let mid = res.degrees(deg).to_vec();
    let incoming = (res.betti(deg + 1).unwrap_or(0) > 0).then(|| BlockMap {
        src: res.degrees(deg + 1).to_vec(),
        tgt: mid.clone(),
        cols: res.differential(deg + 1).to_vec(),
    });
    let outgoing = (deg > 0).then(|| BlockMap {
        src: mid.clone(),
        tgt: res.degrees(deg - 1).to_vec(),
        cols: res.differential(deg).to_vec(),
    });
    Ok((mid, incoming, outgoing))
}

fn ext_complex(m: &GradedModule, deg: usize) -> Result<(Vec<i32>, Option<BlockMap>, Option<BlockMap>)> {
    let f = *m.ring().field();
    let (mid, tor_in, tor_out) = tor_complex(m, deg)?;
    let mid: Vec<i32> = mid.iter().map(|d| -d).collect();
    // Hom turns the outgoing Tor map into the incoming Ext map and vice versa
    Ok((mid, tor_out.map(|b| b.dual(&f)), tor_in.map(|b| b.dual(&f))))
}

/// `Tor_n^R(M, N)` computed from the minimal resolution of `M`.
pub fn tor_raw(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<HomologyInfo> {
    check_rings(m, n)?;
    let (mid, inc, out) = tor_complex(m, deg)?;
    if mid.is_empty() || n.is_zero()? {
        return Ok(HomologyInfo { vanishes: true, k_dimension: Some(0) });
    }
    let c = Coefficients::of(n)?;
    middle_homology(m.ring(), &c, &mid, inc.as_ref(), out.as_ref())?.info(m.ring())
}

/// `Ext^n_R(M, N)` computed from the minimal resolution of `M`.
pub fn ext_raw(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<HomologyInfo> {
    check_rings(m, n)?;
    let (mid, inc, out) = ext_complex(m, deg)?;
    if mid.is_empty() || n.is_zero()? {
        return Ok(HomologyInfo { vanishes: true, k_dimension: Some(0) });
    }
    let c = Coefficients::of(n)?;
    middle_homology(m.ring(), &c, &mid, inc.as_ref(), out.as_ref())?.info(m.ring())
}

/// Vanishing only; cheaper than [`tor_raw`] when nonzero.
pub fn tor_vanishes_raw(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<bool> {
    check_rings(m, n)?;
    let (mid, inc, out) = tor_complex(m, deg)?;
    if mid.is_empty() || n.is_zero()? {
        return Ok(true);
    }
    let c = Coefficients::of(n)?;
    Ok(middle_homology(m.ring(), &c, &mid, inc.as_ref(), out.as_ref())?.vanishes())
}

pub fn ext_vanishes_raw(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<bool> {
    check_rings(m, n)?;
    let (mid, inc, out) = ext_complex(m, deg)?;
    if mid.is_empty() || n.is_zero()? {
        return Ok(true);
    }
    let c = Coefficients::of(n)?;
    Ok(middle_homology(m.ring(), &c, &mid, inc.as_ref(), out.as_ref())?.vanishes())
}

/// Projective dimension if finite. Finite pd is at most `depth R`, so the
/// resolution is examined up to that index plus one.
pub fn finite_pd(m: &GradedModule, depth_r: usize) -> Result<Option<usize>> {
    let res = m.resolve(depth_r + 1)?;
    Ok(if res.betti(depth_r + 1) == Some(0) { res.length() } else { None })
}

/// `Tor_n(M, N)`, using the vanishing beyond a finite projective dimension of either side.
pub fn tor(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<HomologyInfo> {
    let depth_r = super::homdim::ring_depth(m.ring())?;
    for x in [m, n] {
        if let Some(pd) = finite_pd(x, depth_r)? {
            if deg > pd {
                return Ok(HomologyInfo { vanishes: true, k_dimension: Some(0) });
            }
        }
    }
    if finite_pd(m, depth_r)?.is_none() && finite_pd(n, depth_r)?.is_some() {
        return tor_raw(n, m, deg);
    }
    tor_raw(m, n, deg)
}

pub fn tor_vanishes(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<bool> {
    let depth_r = super::homdim::ring_depth(m.ring())?;
    let pm = finite_pd(m, depth_r)?;
    let pn = finite_pd(n, depth_r)?;
    if pm.is_some_and(|p| deg > p) || pn.is_some_and(|p| deg > p) {
        return Ok(true);
    }
    if pm.is_none() && pn.is_some() {
        return tor_vanishes_raw(n, m, deg);
    }
    tor_vanishes_raw(m, n, deg)
}

/// True when `Ext^deg(M, N) = 0` follows from a certified finite pd of `M`
/// or a certified finite id of `N`.
fn ext_vanishes_by_dimension(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<bool> {
    check_rings(m, n)?;
    let depth_r = super::homdim::ring_depth(m.ring())?;
    if finite_pd(m, depth_r)?.is_some_and(|p| deg > p) {
        return Ok(true);
    }
    if deg > depth_r && !n.is_zero()? {
        if let super::homdim::HomDim::Finite(i) = super::homdim::id_certificate(n)? {
            return Ok(deg > i);
        }
    }
    Ok(false)
}

/// `Ext^n(M, N)`, using vanishing beyond a finite pd of `M` or a finite id of `N`.
pub fn ext(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<HomologyInfo> {
    if ext_vanishes_by_dimension(m, n, deg)? {
        return Ok(HomologyInfo { vanishes: true, k_dimension: Some(0) });
    }
    ext_raw(m, n, deg)
}

pub fn ext_vanishes(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<bool> {
    if ext_vanishes_by_dimension(m, n, deg)? {
        return Ok(true);
    }
    ext_vanishes_raw(m, n, deg)
}

/// `Hom(M, N)` inside the sum of copies of `N` indexed by the minimal
/// generators of `M`: block `k` holds the image of generator `k`.
pub(crate) struct HomEmbedding {
    pub twists: Vec<i32>,
    pub gens: Vec<FreeVector>,
    pub boundary: GroebnerBasis,
    /// Minimal generators of `N`, i.e. the size of one block.
    pub block: usize,
}

pub(crate) fn hom_embedding(m: &GradedModule, n: &GradedModule) -> Result<HomEmbedding> {
    check_rings(m, n)?;
    let (mid, inc, out) = ext_complex(m, 0)?;
    let c = Coefficients::of(n)?;
    let h = middle_homology(m.ring(), &c, &mid, inc.as_ref(), out.as_ref())?;
    Ok(HomEmbedding { twists: h.twists, gens: h.kernel_gens, boundary: h.boundary, block: c.a() })
}

/// `Tor_n(M, N)` presented as a graded module.
pub fn tor_module(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<GradedModule> {
    check_rings(m, n)?;
    let (mid, inc, out) = tor_complex(m, deg)?;
    let c = Coefficients::of(n)?;
    middle_homology(m.ring(), &c, &mid, inc.as_ref(), out.as_ref())?.module(m.ring())
}

/// `Ext^n(M, N)` presented as a graded module.
pub fn ext_module(m: &GradedModule, n: &GradedModule, deg: usize) -> Result<GradedModule> {
    check_rings(m, n)?;
    let (mid, inc, out) = ext_complex(m, deg)?;
    let c = Coefficients::of(n)?;
    middle_homology(m.ring(), &c, &mid, inc.as_ref(), out.as_ref())?.module(m.ring())
}
