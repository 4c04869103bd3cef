//! Bounded total-reflexivity and semidualizing checks. Both truncate an
//! infinite condition at a bound `B`, so their outcome is evidence only.

use serde::Serialize;

use crate::algebra::{buchberger, kernel, mingens, FreeVector, TermOrder};
use crate::error::Result;
use crate::graded::homdim::{depth, id_certificate, ring_depth, HomDim};
use crate::graded::homology::{ext_vanishes, hom_embedding, BlockMap};
use crate::graded::GradedModule;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GDimDiagnosis {
    /// `depth R - depth M`; `None` when negative (then gdim is infinite).
    pub t: Option<usize>,
    pub bound: usize,
    pub ext_m_r: bool,
    pub ext_g_r: bool,
    pub ext_gdual_r: bool,
    pub biduality: bool,
    pub passed: bool,
}

/// `Ext^i(M, N) = 0` for `lo <= i <= hi`, stopping at the first nonzero
/// group. Degrees past a certified finite `id N` are skipped.
pub(crate) fn ext_range_vanishes(m: &GradedModule, n: &GradedModule, lo: usize, hi: usize) -> Result<bool> {
    let hi = match id_certificate(n)? {
        HomDim::Finite(d) => hi.min(d),
        HomDim::Infinite => hi,
    };
    for i in lo..=hi {
        if !ext_vanishes(m, n, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `t`-th syzygy of `M` (for `t = 0`, its minimal presentation).
fn syzygy(m: &GradedModule, t: usize) -> Result<GradedModule> {
    if t == 0 {
        return m.minimal_presentation();
    }
    let res = m.resolve(t + 1)?;
    GradedModule::new(m.ring().clone(), res.degrees(t).to_vec(), res.differential(t + 1).to_vec())
}

/// Outcome of dualizing a minimal presentation once.
struct Dual {
    /// Generators `psi_l` of `G*` as vectors of `F0*` (twists `-a`).
    psi: Vec<FreeVector>,
    psi_degrees: Vec<i32>,
    module: GradedModule,
}

fn dual_of(g: &GradedModule) -> Result<Dual> {
    let ring = g.ring();
    let f = ring.field();
    let limits = ring.limits();
    let a = g.degrees().to_vec();
    let neg_a: Vec<i32> = a.iter().map(|d| -d).collect();
    let rel_degs: Vec<i32> = g.relations().iter().map(|v| v.degree(&a).unwrap()).collect();
    let raw = if g.relations().is_empty() {
        (0..a.len()).map(|i| FreeVector::unit(i as u32)).collect()
    } else {
        let phi_t = BlockMap { src: rel_degs, tgt: a.clone(), cols: g.relations().to_vec() }.dual(f);
        kernel(f, &phi_t.tgt, &phi_t.cols, &phi_t.src, &ring.ideal_relations(&phi_t.tgt), limits)?
    };
    let keep = mingens(f, &neg_a, &raw, &ring.ideal_relations(&neg_a), limits)?;
    let psi: Vec<FreeVector> = keep.into_iter().map(|i| ring.reduce_vector(&raw[i])).collect();
    let psi_degrees: Vec<i32> = psi.iter().map(|v| v.degree(&neg_a).unwrap()).collect();
    let zraw = kernel(f, &neg_a, &psi, &psi_degrees, &ring.ideal_relations(&neg_a), limits)?;
    let zkeep = mingens(f, &psi_degrees, &zraw, &ring.ideal_relations(&psi_degrees), limits)?;
    let z = zkeep.into_iter().map(|i| ring.reduce_vector(&zraw[i])).collect();
    let module = GradedModule::new(ring.clone(), psi_degrees.clone(), z)?;
    Ok(Dual { psi, psi_degrees, module })
}

/// Exact test that `G -> G**` is an isomorphism, for `G` given by a minimal presentation.
fn biduality_holds(g: &GradedModule, dual: &Dual) -> Result<bool> {
    let ring = g.ring();
    let f = ring.field();
    let limits = ring.limits();
    let a = g.degrees().to_vec();
    let neg_c: Vec<i32> = dual.psi_degrees.iter().map(|d| -d).collect();
    if a.is_empty() {
        return Ok(true);
    }
    // F0 -> R^s, e_i -> (psi_l(e_i))_l
    let nat = BlockMap { src: dual.psi_degrees.clone(), tgt: a.iter().map(|d| -d).collect(), cols: dual.psi.clone() }
        .dual(f);
    let ker = kernel(f, &nat.tgt, &nat.cols, &nat.src, &ring.ideal_relations(&nat.tgt), limits)?;
    let rel_gb = g.relation_gb()?;
    if !ker.iter().all(|v| rel_gb.contains(v)) {
        return Ok(false);
    }
    // G** = kernel of Z^T on R^s
    let z = dual.module.relations();
    let double: Vec<FreeVector> = if z.is_empty() {
        (0..neg_c.len()).map(|i| FreeVector::unit(i as u32)).collect()
    } else {
        let zdeg: Vec<i32> = z.iter().map(|v| v.degree(&dual.psi_degrees).unwrap()).collect();
        let zt = BlockMap { src: zdeg, tgt: dual.psi_degrees.clone(), cols: z.to_vec() }.dual(f);
        kernel(f, &zt.tgt, &zt.cols, &zt.src, &ring.ideal_relations(&zt.tgt), limits)?
    };
    let mut image = nat.cols.clone();
    image.extend(ring.ideal_relations(&neg_c));
    let img_gb = buchberger(f, TermOrder::Grevlex, &neg_c, &image, limits)?;
    Ok(double.iter().all(|v| img_gb.contains(v)))
}

/// Truncated total-reflexivity test for `gdim M < inf`.
pub fn bounded_gdim(m: &GradedModule, bound: usize) -> Result<GDimDiagnosis> {
    let r = GradedModule::ring_module(m.ring().clone());
    let t = ring_depth(m.ring())? as i64 - depth(m)? as i64;
    let mut out = GDimDiagnosis {
        t: None,
        bound,
        ext_m_r: false,
        ext_g_r: false,
        ext_gdual_r: false,
        biduality: false,
        passed: false,
    };
    if t < 0 {
        return Ok(out);
    }
    let t = t as usize;
    out.t = Some(t);
    out.ext_m_r = ext_range_vanishes(m, &r, t + 1, t + bound)?;
    let g = syzygy(m, t)?;
    if g.is_zero()? {
        out.ext_g_r = true;
        out.ext_gdual_r = true;
        out.biduality = true;
    } else {
        out.ext_g_r = ext_range_vanishes(&g, &r, 1, bound)?;
        let g = g.minimal_presentation()?;
        let dual = dual_of(&g)?;
        out.ext_gdual_r = dual.module.is_zero()? || ext_range_vanishes(&dual.module, &r, 1, bound)?;
        out.biduality = biduality_holds(&g, &dual)?;
    }
    out.passed = out.ext_m_r && out.ext_g_r && out.ext_gdual_r && out.biduality;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemidualizingDiagnosis {
    pub bound: usize,
    /// `Hom(C, C)` is generated by the identity.
    pub homothety_onto: bool,
    /// `ann C = 0`.
    pub faithful: bool,
    pub self_ext: bool,
    pub passed: bool,
}

/// `R -> Hom(C, C)` bijective and `Ext^{1..B}(C, C) = 0`.
pub fn bounded_semidualizing(c: &GradedModule, bound: usize) -> Result<SemidualizingDiagnosis> {
    let ring = c.ring();
    let f = ring.field();
    let limits = ring.limits();
    let mut out = SemidualizingDiagnosis { bound, homothety_onto: false, faithful: false, self_ext: false, passed: false };
    if c.is_zero()? {
        return Ok(out);
    }
    let h = hom_embedding(c, c)?;
    let id = FreeVector::from_terms(
        f,
        TermOrder::Grevlex,
        (0..h.block)
            .map(|k| crate::algebra::Term {
                comp: (k * h.block + k) as u32,
                mono: crate::algebra::Monomial::one(),
                coeff: 1,
            })
            .collect(),
    );
    let mut span = h.boundary.elements().to_vec();
    span.push(id.clone());
    let span_gb = buchberger(f, TermOrder::Grevlex, &h.twists, &span, limits)?;
    out.homothety_onto = h.gens.iter().all(|v| span_gb.contains(v));
    let ann = kernel(f, &h.twists, &[id], &[0], h.boundary.elements(), limits)?;
    out.faithful = ann.iter().all(|v| ring.reduce_vector(v).is_zero());
    out.self_ext = ext_range_vanishes(c, c, 1, bound)?;
    out.passed = out.homothety_onto && out.faithful && out.self_ext;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::canonical_module;
    use crate::graded::ring::ring_from_strings;

    #[test]
    fn residue_field_over_gorenstein_and_not() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2", "y^2"]).unwrap();
        let k = GradedModule::residue_field(r.clone());
        assert!(bounded_gdim(&k, 4).unwrap().passed);
        assert!(bounded_gdim(&GradedModule::ring_module(r), 4).unwrap().passed);

        let r = ring_from_strings("R", &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let d = bounded_gdim(&k, 4).unwrap();
        assert!(!d.ext_m_r && !d.passed);
        assert!(bounded_gdim(&GradedModule::ring_module(r), 4).unwrap().passed);
    }

    #[test]
    fn biduality_fails_for_non_reflexive() {
        // over k[x,y], G = m is torsion-free but not reflexive (m** = R)
        let s = ring_from_strings("S", &["x", "y"], &[]).unwrap();
        let k = GradedModule::residue_field(s.clone());
        let m = syzygy(&k, 1).unwrap().minimal_presentation().unwrap();
        let dual = dual_of(&m).unwrap();
        assert!(!biduality_holds(&m, &dual).unwrap());
        let free = GradedModule::free(s, vec![0, 1]);
        let dual = dual_of(&free).unwrap();
        assert!(biduality_holds(&free, &dual).unwrap());
    }

    #[test]
    fn semidualizing_modules() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let w = canonical_module(&r).unwrap();
        assert!(bounded_semidualizing(&w, 3).unwrap().passed);
        assert!(bounded_semidualizing(&GradedModule::ring_module(r.clone()), 3).unwrap().passed);
        let k = GradedModule::residue_field(r);
        let d = bounded_semidualizing(&k, 3).unwrap();
        assert!(d.homothety_onto && !d.faithful && !d.passed);
    }
}
