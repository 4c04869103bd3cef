use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::hilbert::{monomial_ideal_numerator, HilbertSeries, Laurent};
use super::resolution::Resolution;
use super::ring::GradedRing;
use super::Memo;
use crate::algebra::{
    buchberger, kernel, mingens, FreeVector, GroebnerBasis, Monomial, Polynomial, TermOrder,
};
use crate::error::{Error, Result};

#[derive(Default)]
pub(crate) struct ModuleCache {
    gb: Memo<GroebnerBasis>,
    hilbert: Memo<HilbertSeries>,
    minimal: Memo<GradedModule>,
    is_minimal: bool,
    resolution: Arc<Mutex<Resolution>>,
    pub(crate) bass: Mutex<BTreeMap<usize, u64>>,
    pub(crate) depth: Memo<usize>,
}

/// Cokernel of a homogeneous map `F_1 -> F_0 = S^r` viewed as a module over `R = S/I`:
/// `M = S^r / (relations + I S^r)`. Generator `i` sits in degree `degrees[i]`.
#[derive(Clone)]
pub struct GradedModule {
    ring: Arc<GradedRing>,
    degrees: Vec<i32>,
    relations: Vec<FreeVector>,
    cache: Arc<ModuleCache>,
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedModule(rank {}, {} relations over {})", self.rank(), self.relations.len(), self.ring.describe())
    }
}

impl GradedModule {
    pub fn new(ring: Arc<GradedRing>, degrees: Vec<i32>, relations: Vec<FreeVector>) -> Result<Self> {
        Self::build(ring, degrees, relations, false, None)
    }

    fn build(
        ring: Arc<GradedRing>,
        degrees: Vec<i32>,
        relations: Vec<FreeVector>,
        is_minimal: bool,
        resolution: Option<Arc<Mutex<Resolution>>>,
    ) -> Result<Self> {
        let relations: Vec<FreeVector> = relations.into_iter().filter(|v| !v.is_zero()).collect();
        for (k, v) in relations.iter().enumerate() {
            if v.max_component().is_some_and(|c| c as usize >= degrees.len()) {
                return Err(Error::Inadmissible(format!("relation {k} has more entries than generators")));
            }
            if !v.is_homogeneous(&degrees) {
                return Err(Error::Inhomogeneous(format!("relation {} is not homogeneous for the generator degrees", k + 1)));
            }
        }
        let cache = ModuleCache { is_minimal, resolution: resolution.unwrap_or_default(), ..Default::default() };
        Ok(Self { ring, degrees, relations, cache: Arc::new(cache) })
    }

    pub fn free(ring: Arc<GradedRing>, degrees: Vec<i32>) -> Self {
        Self::build(ring, degrees, Vec::new(), true, None).expect("free module")
    }

    pub fn ring_module(ring: Arc<GradedRing>) -> Self {
        Self::free(ring, vec![0])
    }

    /// Residue field `k = R/m`, sharing the ring's cached resolution of `k`.
    pub fn residue_field(ring: Arc<GradedRing>) -> Self {
        let f = *ring.field();
        let rels = (0..ring.nvars()).map(|i| Polynomial::var(i).to_vector(&f, TermOrder::Grevlex, 0)).collect();
        let minimal = ring.linear_part_dim() == 0;
        let res = ring.residue_resolution.clone();
        Self::build(ring, vec![0], rels, minimal, Some(res)).expect("residue field")
    }

    /// `R/J` for homogeneous `J`.
    pub fn cyclic(ring: Arc<GradedRing>, gens: &[Polynomial]) -> Result<Self> {
        let f = *ring.field();
        let rels = gens.iter().map(|g| g.to_vector(&f, TermOrder::Grevlex, 0)).collect();
        Self::new(ring, vec![0], rels)
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[FreeVector] {
        &self.relations
    }

    pub fn is_minimal_presentation(&self) -> bool {
        self.cache.is_minimal
    }

    pub(crate) fn cache(&self) -> &ModuleCache {
        &self.cache
    }

    /// Gröbner basis of `relations + I S^r`.
    pub fn relation_gb(&self) -> Result<Arc<GroebnerBasis>> {
        self.cache.gb.get_or_try(|| {
            let mut gens = self.relations.clone();
            gens.extend(self.ring.ideal_relations(&self.degrees));
            buchberger(self.ring.field(), TermOrder::Grevlex, &self.degrees, &gens, self.ring.limits())
        })
    }

    pub fn hilbert_series(&self) -> Result<Arc<HilbertSeries>> {
        self.cache.hilbert.get_or_try(|| {
            let gb = self.relation_gb()?;
            let leads = gb.leading_monomials();
            let mut num = Laurent::zero();
            for (c, ms) in leads.iter().enumerate() {
                num = num.add(&monomial_ideal_numerator(ms).shift(self.degrees[c]));
            }
            Ok(HilbertSeries::new(num, self.ring.nvars()))
        })
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.rank() == 0 || self.relation_gb()?.is_everything())
    }

    /// Krull dimension; `None` for the zero module.
    pub fn dim(&self) -> Result<Option<usize>> {
        Ok(self.hilbert_series()?.dim())
    }

    pub fn multiplicity(&self) -> Result<i64> {
        Ok(self.hilbert_series()?.multiplicity())
    }

    pub fn length(&self) -> Result<Option<i64>> {
        Ok(self.hilbert_series()?.length())
    }

    /// Presentation with minimal generators and minimal relations.
    pub fn minimal_presentation(&self) -> Result<GradedModule> {
        if self.cache.is_minimal {
            return Ok(self.clone());
        }
        let m = self.cache.minimal.get_or_try(|| {
            let f = self.ring.field();
            let gb = self.relation_gb()?;
            let units: Vec<FreeVector> = (0..self.rank()).map(|i| FreeVector::unit(i as u32)).collect();
            let keep = mingens(f, &self.degrees, &units, gb.elements(), self.ring.limits())?;
            let cols: Vec<FreeVector> = keep.iter().map(|&i| units[i].clone()).collect();
            let degs: Vec<i32> = keep.iter().map(|&i| self.degrees[i]).collect();
            let raw = kernel(f, &self.degrees, &cols, &degs, gb.elements(), self.ring.limits())?;
            let sel = mingens(f, &degs, &raw, &self.ring.ideal_relations(&degs), self.ring.limits())?;
            let mut rels: Vec<FreeVector> = sel.into_iter().map(|i| self.ring.reduce_vector(&raw[i])).collect();
            rels.sort_by_key(|v| v.degree(&degs).unwrap());
            Self::build(self.ring.clone(), degs, rels, true, Some(self.cache.resolution.clone()))
        })?;
        Ok((*m).clone())
    }

    /// Minimal number of generators.
    pub fn num_generators(&self) -> Result<usize> {
        Ok(self.minimal_presentation()?.rank())
    }

    /// Minimal resolution known at least through homological degree `n`.
    pub fn resolve(&self, n: usize) -> Result<Resolution> {
        let mut guard = self.cache.resolution.lock().unwrap_or_else(|e| e.into_inner());
        if !guard.is_started() {
            let mp = self.minimal_presentation()?;
            let rel_degs = mp.relations.iter().map(|v| v.degree(&mp.degrees).unwrap()).collect();
            guard.start(mp.degrees.clone(), mp.relations.clone(), rel_degs);
        }
        guard.extend(&self.ring, n)?;
        Ok(guard.clone())
    }

    pub fn betti(&self, n: usize) -> Result<usize> {
        Ok(self.resolve(n)?.betti(n).expect("resolved"))
    }

    pub fn betti_numbers(&self, n_max: usize) -> Result<Vec<usize>> {
        let res = self.resolve(n_max)?;
        Ok((0..=n_max).map(|i| res.betti(i).expect("resolved")).collect())
    }

    /// `M / J M`.
    pub fn quotient_by(&self, gens: &[Polynomial]) -> Result<GradedModule> {
        let f = *self.ring.field();
        let mut rels = self.relations.clone();
        for g in gens {
            for j in 0..self.rank() {
                rels.push(g.to_vector(&f, TermOrder::Grevlex, j as u32));
            }
        }
        Self::new(self.ring.clone(), self.degrees.clone(), rels)
    }

    /// `M / m^k M`.
    pub fn truncate(&self, k: u32) -> Result<GradedModule> {
        let monos: Vec<Polynomial> = Monomial::all_of_degree(self.ring.nvars(), k)
            .into_iter()
            .map(|m| Polynomial::from_terms(self.ring.field(), vec![(m, 1)]))
            .collect();
        self.quotient_by(&monos)
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule> {
        if !Arc::ptr_eq(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        let mut rels = self.relations.clone();
        let off = self.rank() as i64;
        rels.extend(other.relations.iter().map(|v| v.shift_components(off)));
        Self::new(self.ring.clone(), degrees, rels)
    }

    /// Adds `by` to every generator degree (the module `M(-by)`).
    pub fn shift_degrees(&self, by: i32) -> GradedModule {
        let degrees = self.degrees.iter().map(|d| d + by).collect();
        Self::build(self.ring.clone(), degrees, self.relations.clone(), self.cache.is_minimal, None).expect("shift")
    }

    /// The same presentation read over another ring on the same variables.
    pub fn over_ring(&self, ring: Arc<GradedRing>) -> Result<GradedModule> {
        Self::new(ring, self.degrees.clone(), self.relations.clone())
    }

    /// `M` as a module over the ambient polynomial ring.
    pub fn over_ambient(&self) -> Result<GradedModule> {
        let mut rels = self.relations.clone();
        rels.extend(self.ring.ideal_relations(&self.degrees));
        Self::new(self.ring.ambient(), self.degrees.clone(), rels)
    }

    /// Presentation of the submodule generated by `vectors` (elements of `S^r`).
    pub fn submodule(&self, vectors: &[FreeVector]) -> Result<GradedModule> {
        let gb = self.relation_gb()?;
        let f = self.ring.field();
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for v in vectors {
            let r = gb.normal_form(v);
            if let Some(d) = r.degree(&self.degrees) {
                if !r.is_homogeneous(&self.degrees) {
                    return Err(Error::Inhomogeneous("submodule generator".into()));
                }
                cols.push(r);
                degs.push(d);
            }
        }
        let raw = kernel(f, &self.degrees, &cols, &degs, gb.elements(), self.ring.limits())?;
        let sel = mingens(f, &degs, &raw, &self.ring.ideal_relations(&degs), self.ring.limits())?;
        let rels = sel.into_iter().map(|i| self.ring.reduce_vector(&raw[i])).collect();
        Self::new(self.ring.clone(), degs, rels)
    }

    /// The submodule `m M`.
    pub fn maximal_ideal_times(&self) -> Result<GradedModule> {
        let mp = self.minimal_presentation()?;
        let mut vecs = Vec::new();
        for j in 0..mp.rank() {
            for i in 0..self.ring.nvars() {
                vecs.push(FreeVector::monomial(j as u32, Monomial::var(i), 1));
            }
        }
        mp.submodule(&vecs)
    }

    /// `mu(m M)`, counted directly as minimal generators of `m M` modulo relations.
    pub fn mu_of_maximal_ideal_times(&self) -> Result<usize> {
        let mp = self.minimal_presentation()?;
        let gb = mp.relation_gb()?;
        let mut vecs = Vec::new();
        for j in 0..mp.rank() {
            for i in 0..self.ring.nvars() {
                vecs.push(FreeVector::monomial(j as u32, Monomial::var(i), 1));
            }
        }
        Ok(mingens(self.ring.field(), &mp.degrees, &vecs, gb.elements(), self.ring.limits())?.len())
    }

    /// True when `m^2 M = 0`.
    pub fn is_killed_by_max_squared(&self) -> Result<bool> {
        let gb = self.relation_gb()?;
        for j in 0..self.rank() {
            for m in Monomial::all_of_degree(self.ring.nvars(), 2) {
                if !gb.contains(&FreeVector::monomial(j as u32, m, 1)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Relations rendered as rows of polynomials, one entry per generator.
    pub fn relation_rows(&self) -> Vec<Vec<Polynomial>> {
        let f = self.ring.field();
        self.relations
            .iter()
            .map(|v| {
                (0..self.rank() as u32)
                    .map(|c| Polynomial::from_terms(f, v.component(c)))
                    .collect()
            })
            .collect()
    }
}

/// Builds a relation vector from one polynomial entry per generator.
pub fn vector_from_row(ring: &GradedRing, row: &[Polynomial]) -> FreeVector {
    let f = ring.field();
    let mut terms = Vec::new();
    for (c, p) in row.iter().enumerate() {
        terms.extend(p.to_vector(f, TermOrder::Grevlex, c as u32).terms().iter().copied());
    }
    FreeVector::from_terms(f, TermOrder::Grevlex, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ring::ring_from_strings;

    #[test]
    fn hilbert_of_small_modules() {
        let r = ring_from_strings("R", &["x"], &["x^2"]).unwrap();
        let m = GradedModule::ring_module(r.clone());
        let h = m.hilbert_series().unwrap();
        assert_eq!(h.length(), Some(2));
        let k = GradedModule::residue_field(r.clone());
        assert_eq!(k.length().unwrap(), Some(1));
        assert_eq!(k.betti_numbers(6).unwrap(), vec![1; 7]);
    }

    #[test]
    fn betti_of_residue_field_with_square_zero_max_ideal() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let k = GradedModule::residue_field(r);
        let b = k.betti_numbers(7).unwrap();
        assert_eq!(b, (0..8).map(|n| 1usize << n).collect::<Vec<_>>());
    }

    #[test]
    fn minimal_presentation_drops_redundancy() {
        let r = ring_from_strings("R", &["x", "y"], &[]).unwrap();
        let f = *r.field();
        // generators e0, e1 with relation e1 - x*e0 of degree 1 (e1 in degree 1)
        let row = vec![Polynomial::var(0).neg(&f), Polynomial::constant(&f, 1)];
        let v = vector_from_row(&r, &row);
        let m = GradedModule::new(r, vec![0, 1], vec![v]).unwrap();
        let mp = m.minimal_presentation().unwrap();
        assert_eq!(mp.rank(), 1);
        assert!(mp.relations().is_empty());
        assert_eq!(m.betti_numbers(2).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn free_module_over_polynomial_ring() {
        let r = ring_from_strings("R", &["x", "y"], &[]).unwrap();
        let k = GradedModule::residue_field(r);
        assert_eq!(k.betti_numbers(3).unwrap(), vec![1, 2, 1, 0]);
        assert!(k.resolve(3).unwrap().is_terminated());
    }
}
