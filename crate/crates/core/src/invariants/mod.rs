//! Per-module invariant reports and per-ring classification.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{depth, hom_dim_report, type_of, GradedModule, GradedRing, HomDim};

/// Invariants that need no homological-dimension certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    pub dim: usize,
    pub depth: usize,
    pub is_cm: bool,
    pub e: i64,
    pub mu: usize,
    pub mu_m: usize,
    pub length: Option<i64>,
    #[serde(rename = "type")]
    pub type_: u64,
    pub has_min_mult: bool,
    pub is_ulrich: bool,
}

impl ModuleInvariants {
    /// `mu(mM) + (1 - dim) mu(M)`, the lower bound for `e` on CM modules.
    pub fn min_mult_bound(&self) -> i64 {
        self.mu_m as i64 + (1 - self.dim as i64) * self.mu as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    #[serde(flatten)]
    pub base: ModuleInvariants,
    pub pd: HomDim,
    pub id: HomDim,
}

pub fn module_invariants(m: &GradedModule) -> Result<ModuleInvariants> {
    let dim = m.dim()?.ok_or(Error::ZeroModule("invariant report"))?;
    let depth = depth(m)?;
    let is_cm = depth == dim;
    let e = m.multiplicity()?;
    let mu = m.num_generators()?;
    let mu_m = m.mu_of_maximal_ideal_times()?;
    let length = m.length()?;
    let type_ = type_of(m)?;
    let bound = mu_m as i64 + (1 - dim as i64) * mu as i64;
    let has_min_mult = is_cm && e == bound;
    let is_ulrich = is_cm && e == mu as i64;
    Ok(ModuleInvariants { dim, depth, is_cm, e, mu, mu_m, length, type_, has_min_mult, is_ulrich })
}

pub fn invariant_report(m: &GradedModule) -> Result<InvariantReport> {
    let base = module_invariants(m)?;
    let hd = hom_dim_report(m)?;
    Ok(InvariantReport { base, pd: hd.pd, id: hd.id })
}

/// Structural classification of a ring, read off its minimalized presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingClass {
    pub is_regular: bool,
    pub is_hypersurface: bool,
    pub is_gorenstein: bool,
    pub is_cm: bool,
    pub has_min_mult: bool,
    pub e: i64,
    pub dim: usize,
    pub depth: usize,
    pub embdim: usize,
    #[serde(rename = "type")]
    pub type_: u64,
    pub is_field: bool,
}

pub fn classify_ring(ring: &Arc<GradedRing>) -> Result<RingClass> {
    let (min, _) = ring.minimalize()?;
    let gens = min.minimal_ideal_generators()?;
    let r = GradedModule::ring_module(ring.clone());
    let dim = ring.dim();
    let depth = depth(&r)?;
    let is_cm = depth == dim;
    let type_ = type_of(&r)?;
    let e = ring.multiplicity();
    let embdim = min.nvars();
    let is_regular = gens.is_empty();
    Ok(RingClass {
        is_regular,
        is_hypersurface: gens.len() <= 1,
        is_gorenstein: is_cm && type_ == 1,
        is_cm,
        has_min_mult: is_cm && e == embdim as i64 - dim as i64 + 1,
        e,
        dim,
        depth,
        embdim,
        type_,
        is_field: dim == 0 && e == 1,
    })
}

/// Growth fit of a Betti sequence. Not a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityEstimate {
    /// `None` when the growth looks exponential.
    pub estimate: Option<usize>,
    pub heuristic: bool,
}

pub const MIN_COMPLEXITY_WINDOW: usize = 6;

pub fn complexity_estimate(betti: &[usize]) -> Result<ComplexityEstimate> {
    if betti.len() < MIN_COMPLEXITY_WINDOW {
        return Err(Error::Inadmissible(format!(
            "complexity needs at least {MIN_COMPLEXITY_WINDOW} Betti numbers, got {}",
            betti.len()
        )));
    }
    let done = |estimate| Ok(ComplexityEstimate { estimate, heuristic: true });
    if betti.last() == Some(&0) {
        return done(Some(0));
    }
    let tail = &betti[betti.len() - 4..];
    if tail.windows(2).all(|w| w[0] > 0 && 2 * w[1] >= 3 * w[0]) {
        return done(None);
    }
    // degree of a polynomial through the window, by finite differences
    let mut diff: Vec<i64> = betti.iter().map(|&b| b as i64).collect();
    for k in 1..betti.len() - 1 {
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        if diff.iter().all(|&d| d == 0) {
            return done(Some(k));
        }
    }
    // log-log slope between the middle and the end
    let n1 = betti.len() / 2;
    let n2 = betti.len() - 1;
    let (b1, b2) = (betti[n1].max(1) as f64, betti[n2].max(1) as f64);
    let slope = (b2 / b1).ln() / ((n2 as f64) / (n1 as f64)).ln();
    done(Some(slope.round().max(0.0) as usize + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ring::ring_from_strings;

    #[test]
    fn complexity_shapes() {
        assert_eq!(complexity_estimate(&[1, 2, 1, 0, 0, 0]).unwrap().estimate, Some(0));
        assert_eq!(complexity_estimate(&[1; 8]).unwrap().estimate, Some(1));
        assert_eq!(complexity_estimate(&[1, 2, 3, 4, 5, 6, 7]).unwrap().estimate, Some(2));
        let pow: Vec<usize> = (0..8).map(|n| 1 << n).collect();
        assert_eq!(complexity_estimate(&pow).unwrap().estimate, None);
        assert!(complexity_estimate(&[1, 1, 1]).is_err());
    }

    #[test]
    fn dual_numbers_report() {
        let r = ring_from_strings("R", &["x"], &["x^2"]).unwrap();
        let rep = invariant_report(&GradedModule::ring_module(r.clone())).unwrap();
        assert_eq!((rep.base.e, rep.base.mu, rep.base.type_, rep.base.mu_m), (2, 1, 1, 1));
        assert!(rep.base.has_min_mult && !rep.base.is_ulrich);
        assert_eq!((rep.pd, rep.id), (HomDim::Finite(0), HomDim::Finite(0)));
        let k = invariant_report(&GradedModule::residue_field(r)).unwrap();
        assert!(k.base.is_ulrich && k.base.has_min_mult);
        assert_eq!((k.pd, k.id), (HomDim::Infinite, HomDim::Infinite));
    }
}
