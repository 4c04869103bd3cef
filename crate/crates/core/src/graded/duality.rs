//! Matlis duals, the canonical module and `M^dagger`, all by Ext over the
//! ambient polynomial ring or over `R`.

use super::homdim::{depth, ring_depth};
use super::homology::ext_module;
use super::module::GradedModule;
use super::ring::GradedRing;
use crate::error::{Error, Result};
use std::sync::Arc;

/// Graded Matlis dual of a finite-length module: `Ext^n_S(M, S(-n))`.
pub fn matlis_dual(m: &GradedModule) -> Result<GradedModule> {
    match m.length()? {
        None => return Err(Error::InfiniteLength),
        Some(0) => return Ok(GradedModule::free(m.ring().clone(), Vec::new())),
        Some(_) => {}
    }
    let n = m.ring().nvars();
    let ms = m.over_ambient()?;
    let s = ms.ring().clone();
    let twist = GradedModule::free(s, vec![n as i32]);
    let e = ext_module(&ms, &twist, n)?;
    e.over_ring(m.ring().clone())?.minimal_presentation()
}

/// Canonical module `omega_R = Ext^{n-d}_S(R, S(-n))`; requires `R` Cohen–Macaulay.
pub fn canonical_module(ring: &Arc<GradedRing>) -> Result<GradedModule> {
    let data = ring.canonical.get_or_try(|| {
        let d = ring.dim();
        if ring_depth(ring)? != d {
            return Err(Error::NotCohenMacaulay);
        }
        let n = ring.nvars();
        let s = ring.ambient();
        let rs = GradedModule::cyclic(s.clone(), ring.ideal_generators())?;
        let twist = GradedModule::free(s, vec![n as i32]);
        let e = ext_module(&rs, &twist, n - d)?;
        let w = e.over_ring(ring.clone())?.minimal_presentation()?;
        Ok((w.degrees().to_vec(), w.relations().to_vec()))
    })?;
    GradedModule::new(ring.clone(), data.0.clone(), data.1.clone())?.minimal_presentation()
}

/// `M^dagger = Ext^{d-r}_R(M, omega)` with `d = dim R`, `r = dim M`.
pub fn dagger(m: &GradedModule) -> Result<GradedModule> {
    let w = canonical_module(m.ring())?;
    let d = m.ring().dim();
    let r = m.dim()?.ok_or(Error::ZeroModule("dagger"))?;
    if depth(m)? != r {
        return Err(Error::Inadmissible("dagger requires a Cohen-Macaulay module".into()));
    }
    ext_module(m, &w, d - r)?.minimal_presentation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::homdim::type_of;
    use crate::graded::ring::ring_from_strings;

    #[test]
    fn duals_of_small_algebras() {
        let r = ring_from_strings("R", &["x"], &["x^2"]).unwrap();
        let d = matlis_dual(&GradedModule::ring_module(r.clone())).unwrap();
        assert_eq!(d.num_generators().unwrap(), 1);
        assert_eq!(d.length().unwrap(), Some(2));

        let r = ring_from_strings("R", &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let m = GradedModule::ring_module(r.clone());
        let d = matlis_dual(&m).unwrap();
        assert_eq!(d.num_generators().unwrap(), 2);
        assert_eq!(d.length().unwrap(), Some(3));
        let k = matlis_dual(&GradedModule::residue_field(r)).unwrap();
        assert_eq!(k.length().unwrap(), Some(1));
        assert_eq!(k.degrees(), &[0]);
    }

    #[test]
    fn canonical_and_dagger() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let m = GradedModule::ring_module(r.clone());
        let md = dagger(&m).unwrap();
        assert_eq!(md.num_generators().unwrap(), 2);
        assert_eq!(type_of(&md).unwrap(), 1);
        assert_eq!(md.multiplicity().unwrap(), 3);

        let r = ring_from_strings("R", &["x", "y"], &["x^2"]).unwrap();
        let w = canonical_module(&r).unwrap();
        assert_eq!(w.num_generators().unwrap(), 1);
        let k = GradedModule::residue_field(r);
        let kdd = dagger(&dagger(&k).unwrap()).unwrap();
        assert_eq!(kdd.hilbert_series().unwrap().reduced, k.hilbert_series().unwrap().reduced);
        assert_eq!(kdd.betti_numbers(3).unwrap(), k.betti_numbers(3).unwrap());
    }
}
