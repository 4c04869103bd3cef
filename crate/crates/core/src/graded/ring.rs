use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::hilbert::{monomial_ideal_numerator, HilbertSeries};
use super::resolution::Resolution;
use super::Memo;
use crate::algebra::{
    buchberger, mingens, FreeVector, GbLimits, GroebnerBasis, Monomial, Polynomial, PrimeField, TermOrder, Term,
    MAX_VARS,
};
use crate::error::{Error, Result};

/// Standard graded quotient `k[x_1..x_n]/I` with `I` homogeneous and proper.
pub struct GradedRing {
    name: String,
    vars: Vec<String>,
    field: PrimeField,
    gens: Vec<Polynomial>,
    gb: GroebnerBasis,
    limits: GbLimits,
    hilbert: OnceLock<HilbertSeries>,
    ambient: OnceLock<Arc<GradedRing>>,
    pub(crate) residue_resolution: Arc<Mutex<Resolution>>,
    pub(crate) canonical: Memo<(Vec<i32>, Vec<FreeVector>)>,
    pub(crate) depth: Memo<usize>,
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedRing({})", self.describe())
    }
}

impl GradedRing {
    pub fn new(
        name: impl Into<String>,
        vars: Vec<String>,
        field: PrimeField,
        gens: Vec<Polynomial>,
        limits: GbLimits,
    ) -> Result<Arc<Self>> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("ideal generator {}", g.format(&field, &vars))));
            }
            if g.degree() == Some(0) {
                return Err(Error::UnitIdeal);
            }
        }
        let vecs: Vec<FreeVector> = gens.iter().map(|g| g.to_vector(&field, TermOrder::Grevlex, 0)).collect();
        let gb = buchberger(&field, TermOrder::Grevlex, &[0], &vecs, limits)?;
        Ok(Arc::new(Self {
            name: name.into(),
            vars,
            field,
            gens,
            gb,
            limits,
            hilbert: OnceLock::new(),
            ambient: OnceLock::new(),
            residue_resolution: Arc::new(Mutex::new(Resolution::default())),
            canonical: Memo::default(),
            depth: Memo::default(),
        }))
    }

    /// The polynomial ring itself.
    pub fn polynomial(name: impl Into<String>, vars: Vec<String>, field: PrimeField) -> Result<Arc<Self>> {
        Self::new(name, vars, field, Vec::new(), GbLimits::default())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn limits(&self) -> GbLimits {
        self.limits
    }

    pub fn ideal_generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn ideal_gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.is_empty()
    }

    /// Human-readable `k[x,y]/(x^2, x*y)`.
    pub fn describe(&self) -> String {
        let mut s = format!("k[{}]", self.vars.join(","));
        if !self.gens.is_empty() {
            let g: Vec<String> = self.gens.iter().map(|p| p.format(&self.field, &self.vars)).collect();
            s.push_str(&format!("/({})", g.join(", ")));
        }
        s
    }

    /// The ambient polynomial ring `S` on the same variables.
    pub fn ambient(&self) -> Arc<GradedRing> {
        self.ambient
            .get_or_init(|| {
                Self::new(format!("{}_S", self.name), self.vars.clone(), self.field, Vec::new(), self.limits)
                    .expect("polynomial ring is always valid")
            })
            .clone()
    }

    /// Generators of `I * S^r` for the given twists.
    pub fn ideal_relations(&self, twists: &[i32]) -> Vec<FreeVector> {
        let mut out = Vec::with_capacity(self.gb.len() * twists.len());
        for j in 0..twists.len() {
            for g in self.gb.elements() {
                out.push(g.shift_components(j as i64));
            }
        }
        out
    }

    /// `I * S^r` as a Gröbner basis (block copies of the ideal basis).
    pub fn ideal_free_gb(&self, twists: &[i32]) -> GroebnerBasis {
        GroebnerBasis::trusted(self.field, TermOrder::Grevlex, twists.to_vec(), self.ideal_relations(twists))
    }

    /// Normal form of every coordinate modulo `I`.
    pub fn reduce_vector(&self, v: &FreeVector) -> FreeVector {
        if self.gb.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut terms = Vec::with_capacity(v.len());
        let mut start = 0;
        let t = v.terms();
        while start < t.len() {
            let c = t[start].comp;
            let mut end = start;
            while end < t.len() && t[end].comp == c {
                end += 1;
            }
            let comp: Vec<Term> = t[start..end].iter().map(|x| Term { comp: 0, ..*x }).collect();
            let nf = self.gb.normal_form(&FreeVector::from_terms(&self.field, TermOrder::Grevlex, comp));
            terms.extend(nf.terms().iter().map(|x| Term { comp: c, ..*x }));
            start = end;
        }
        FreeVector::from_terms(&self.field, TermOrder::Grevlex, terms)
    }

    pub fn reduce_poly(&self, p: &Polynomial) -> Polynomial {
        let v = self.gb.normal_form(&p.to_vector(&self.field, TermOrder::Grevlex, 0));
        Polynomial::from_terms(&self.field, v.terms().iter().map(|t| (t.mono, t.coeff)).collect())
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        self.hilbert.get_or_init(|| {
            let leads: Vec<Monomial> = self.gb.elements().iter().map(|g| g.lead().unwrap().mono).collect();
            HilbertSeries::new(monomial_ideal_numerator(&leads), self.nvars())
        })
    }

    pub fn dim(&self) -> usize {
        self.hilbert_series().pole
    }

    pub fn multiplicity(&self) -> i64 {
        self.hilbert_series().multiplicity()
    }

    /// Minimal homogeneous generators of `I`.
    pub fn minimal_ideal_generators(&self) -> Result<Vec<Polynomial>> {
        let vecs: Vec<FreeVector> =
            self.gens.iter().map(|g| g.to_vector(&self.field, TermOrder::Grevlex, 0)).collect();
        let keep = mingens(&self.field, &[0], &vecs, &[], self.limits)?;
        Ok(keep.into_iter().map(|i| self.gens[i].clone()).collect())
    }

    /// Dimension of `I` in degree one.
    pub fn linear_part_dim(&self) -> usize {
        self.gb.elements().iter().filter(|g| g.degree(&[0]) == Some(1)).count()
    }

    /// Embedding dimension `mu(m) = n - dim_k I_1`.
    pub fn embedding_dim(&self) -> usize {
        self.nvars() - self.linear_part_dim()
    }

    /// Removes linear generators by substitution, giving an isomorphic ring
    /// with `I` inside `m^2`. Returns the new ring and the image of every old
    /// variable.
    pub fn minimalize(&self) -> Result<(Arc<GradedRing>, Vec<Polynomial>)> {
        let f = &self.field;
        let n = self.nvars();
        let mut eliminated: Vec<Option<Polynomial>> = vec![None; n];
        let mut rest: Vec<Polynomial> = Vec::new();
        for g in self.gb.elements() {
            let p = Polynomial::from_terms(f, g.terms().iter().map(|t| (t.mono, t.coeff)).collect());
            if p.degree() == Some(1) {
                // reduced basis: the lead variable occurs nowhere else
                let (lead, _) = p.terms()[0];
                let i = (0..n).find(|&i| lead.exponent(i) == 1).unwrap();
                let tail = Polynomial::from_terms(f, p.terms()[1..].to_vec()).neg(f);
                eliminated[i] = Some(tail);
            } else {
                rest.push(p);
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&i| eliminated[i].is_none()).collect();
        let new_vars: Vec<String> = kept.iter().map(|&i| self.vars[i].clone()).collect();
        // old variable index -> polynomial in new variables
        let rename: Vec<Polynomial> = (0..n)
            .map(|i| match kept.iter().position(|&k| k == i) {
                Some(pos) => Polynomial::var(pos),
                None => Polynomial::zero(),
            })
            .collect();
        let images: Vec<Polynomial> = (0..n)
            .map(|i| match &eliminated[i] {
                None => rename[i].clone(),
                Some(t) => t.substitute(f, &rename),
            })
            .collect();
        let new_gens: Vec<Polynomial> = rest.iter().map(|p| p.substitute(f, &rename)).collect();
        let tmp = GradedRing::new(self.name.clone(), new_vars.clone(), *f, new_gens, self.limits)?;
        let minimal = tmp.minimal_ideal_generators()?;
        let ring = GradedRing::new(self.name.clone(), new_vars, *f, minimal, self.limits)?;
        Ok((ring, images))
    }
}

/// Shorthand used by tests and the corpus: variables and generator strings.
pub fn ring_from_strings(name: &str, vars: &[&str], gens: &[&str]) -> Result<Arc<GradedRing>> {
    ring_from_strings_with(name, vars, gens, PrimeField::default())
}

pub fn ring_from_strings_with(name: &str, vars: &[&str], gens: &[&str], field: PrimeField) -> Result<Arc<GradedRing>> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let polys = gens
        .iter()
        .map(|g| crate::algebra::parse_polynomial(&field, &vars, g))
        .collect::<Result<Vec<_>>>()?;
    GradedRing::new(name, vars, field, polys, GbLimits::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_units_and_inhomogeneous() {
        assert!(matches!(ring_from_strings("R", &["x"], &["x + 1"]), Err(Error::Inhomogeneous(_))));
        assert!(matches!(ring_from_strings("R", &["x"], &["3"]), Err(Error::UnitIdeal)));
    }

    #[test]
    fn minimalize_drops_linear_generators() {
        let r = ring_from_strings("R", &["x", "y", "z"], &["x - y", "x^2 + z^2"]).unwrap();
        assert_eq!(r.embedding_dim(), 2);
        let (m, images) = r.minimalize().unwrap();
        assert_eq!(m.nvars(), 2);
        assert_eq!(m.ideal_generators().len(), 1);
        assert_eq!(images.len(), 3);
        assert_eq!(m.hilbert_series().reduced, r.hilbert_series().reduced);
    }

    #[test]
    fn hilbert_of_ring() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2"]).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.multiplicity(), 2);
    }
}
