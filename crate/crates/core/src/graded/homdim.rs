use std::sync::Arc;

use serde::Serialize;

use super::homology::{ext_raw, ext_vanishes_raw};
use super::module::GradedModule;
use super::ring::GradedRing;
use crate::error::{Error, Result};

/// `mu^n(M) = dim_k Ext^n(k, M)`.
pub fn bass_number(m: &GradedModule, n: usize) -> Result<u64> {
    if let Some(v) = m.cache().bass.lock().unwrap_or_else(|e| e.into_inner()).get(&n) {
        return Ok(*v);
    }
    let k = GradedModule::residue_field(m.ring().clone());
    let info = ext_raw(&k, m, n)?;
    let v = info.k_dimension.expect("Ext(k, -) has finite length");
    m.cache().bass.lock().unwrap_or_else(|e| e.into_inner()).insert(n, v);
    Ok(v)
}

pub fn bass_numbers(m: &GradedModule, n_max: usize) -> Result<Vec<u64>> {
    (0..=n_max).map(|n| bass_number(m, n)).collect()
}

/// `mu^n(M) = 0`, without computing the dimension when it is not.
pub fn bass_vanishes(m: &GradedModule, n: usize) -> Result<bool> {
    if let Some(v) = m.cache().bass.lock().unwrap_or_else(|e| e.into_inner()).get(&n) {
        return Ok(*v == 0);
    }
    let k = GradedModule::residue_field(m.ring().clone());
    ext_vanishes_raw(&k, m, n)
}

/// Least `n` with `mu^n(M) != 0`.
pub fn depth(m: &GradedModule) -> Result<usize> {
    let d = m.cache().depth.get_or_try(|| {
        let dim = m.dim()?.ok_or(Error::ZeroModule("depth"))?;
        for n in 0..=dim {
            if !bass_vanishes(m, n)? {
                return Ok(n);
            }
        }
        Err(Error::Inadmissible("no nonzero Bass number up to the dimension".into()))
    })?;
    Ok(*d)
}

pub fn ring_depth(ring: &Arc<GradedRing>) -> Result<usize> {
    let d = ring.depth.get_or_try(|| depth(&GradedModule::ring_module(ring.clone())))?;
    Ok(*d)
}

/// `type(M) = mu^{depth M}(M)`.
pub fn type_of(m: &GradedModule) -> Result<u64> {
    bass_number(m, depth(m)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HomDim {
    Finite(usize),
    Infinite,
}

impl HomDim {
    pub fn is_finite(&self) -> bool {
        matches!(self, HomDim::Finite(_))
    }
}

impl std::fmt::Display for HomDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HomDim::Finite(v) => write!(f, "{v}"),
            HomDim::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomDimReport {
    pub pd: HomDim,
    pub id: HomDim,
}

/// Projective dimension by Auslander–Buchsbaum: with `t = depth R - depth M`,
/// pd is finite iff `beta_{t+1} = 0`, and then equals `t`.
pub fn pd_certificate(m: &GradedModule) -> Result<HomDim> {
    let t = ring_depth(m.ring())? as i64 - depth(m)? as i64;
    if t < 0 {
        return Ok(HomDim::Infinite);
    }
    let t = t as usize;
    Ok(if m.betti(t + 1)? == 0 { HomDim::Finite(t) } else { HomDim::Infinite })
}

/// Injective dimension: finite iff `mu^m = 0` at `m = max(depth R, depth M) + 1`,
/// and then equals `depth R`.
pub fn id_certificate(m: &GradedModule) -> Result<HomDim> {
    let dr = ring_depth(m.ring())?;
    let at = dr.max(depth(m)?) + 1;
    Ok(if bass_vanishes(m, at)? { HomDim::Finite(dr) } else { HomDim::Infinite })
}

pub fn hom_dim_report(m: &GradedModule) -> Result<HomDimReport> {
    if m.is_zero()? {
        return Err(Error::ZeroModule("homological dimensions"));
    }
    Ok(HomDimReport { pd: pd_certificate(m)?, id: id_certificate(m)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ring::ring_from_strings;

    #[test]
    fn depth_and_type_examples() {
        let r = ring_from_strings("R", &["x"], &["x^2"]).unwrap();
        let m = GradedModule::ring_module(r.clone());
        assert_eq!((depth(&m).unwrap(), type_of(&m).unwrap()), (0, 1));
        let k = GradedModule::residue_field(r);
        assert_eq!(bass_number(&k, 0).unwrap(), 1);

        let s = ring_from_strings("S", &["x", "y"], &[]).unwrap();
        let m = GradedModule::ring_module(s);
        assert_eq!(bass_numbers(&m, 2).unwrap(), vec![0, 0, 1]);
        assert_eq!(depth(&m).unwrap(), 2);
    }

    #[test]
    fn certificates() {
        let s = ring_from_strings("S", &["x", "y"], &[]).unwrap();
        let k = GradedModule::residue_field(s);
        let rep = hom_dim_report(&k).unwrap();
        assert_eq!(rep, HomDimReport { pd: HomDim::Finite(2), id: HomDim::Finite(2) });

        let r = ring_from_strings("R", &["x"], &["x^2"]).unwrap();
        let k = GradedModule::residue_field(r.clone());
        assert_eq!(hom_dim_report(&k).unwrap(), HomDimReport { pd: HomDim::Infinite, id: HomDim::Infinite });
        let m = GradedModule::ring_module(r);
        assert_eq!(hom_dim_report(&m).unwrap(), HomDimReport { pd: HomDim::Finite(0), id: HomDim::Finite(0) });
    }

    #[test]
    fn non_cm_ring_has_depth_zero() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2", "x*y"]).unwrap();
        let m = GradedModule::ring_module(r);
        assert_eq!(m.dim().unwrap(), Some(1));
        assert_eq!(depth(&m).unwrap(), 0);
        assert_eq!(type_of(&m).unwrap(), 1);
    }
}
