use std::collections::HashMap;

use super::linalg::Matrix;
use super::module::FiniteModule;
use crate::algebra::{FreeVector, GroebnerBasis, Monomial};
use crate::error::{Error, Result};
use crate::graded::{GradedModule, GradedRing};
use std::sync::Arc;

/// Artinian graded algebra: its regular representation plus a monomial label
/// and a parent `(variable, index one degree lower)` for every basis element.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    pub regular: FiniteModule,
    pub labels: Vec<Vec<Monomial>>,
    pub parents: Vec<Vec<Option<(usize, usize)>>>,
}

impl FiniteAlgebra {
    pub fn dim(&self) -> usize {
        self.regular.dim()
    }

    /// Top degree with a nonzero component.
    pub fn top_degree(&self) -> usize {
        self.regular.dims.len().saturating_sub(1)
    }

    /// True when the radical squares to zero.
    pub fn radical_square_zero(&self) -> bool {
        self.regular.dims.len() <= 2
    }
}

/// Standard monomials `(component, monomial)` of a finite-length quotient, by degree.
fn standard_basis(gb: &GroebnerBasis, nvars: usize) -> Result<(i32, Vec<Vec<(u32, Monomial)>>)> {
    let leads = gb.leading_monomials();
    let twists = gb.twists();
    let mut by_degree: std::collections::BTreeMap<i32, Vec<(u32, Monomial)>> = Default::default();
    for (c, ls) in leads.iter().enumerate() {
        let mut d = 0u32;
        loop {
            let std: Vec<Monomial> = Monomial::all_of_degree(nvars, d)
                .into_iter()
                .filter(|m| !ls.iter().any(|l| l.divides(m)))
                .collect();
            if std.is_empty() {
                break;
            }
            if d > 10_000 {
                return Err(Error::InfiniteLength);
            }
            let e = twists[c] + d as i32;
            by_degree.entry(e).or_default().extend(std.into_iter().map(|m| (c as u32, m)));
            d += 1;
        }
    }
    let Some(&min) = by_degree.keys().next() else { return Ok((0, Vec::new())) };
    let max = *by_degree.keys().last().unwrap();
    let levels = (min..=max).map(|e| by_degree.remove(&e).unwrap_or_default()).collect();
    Ok((min, levels))
}

fn flatten_from_gb(gb: &GroebnerBasis, nvars: usize) -> Result<(FiniteModule, Vec<Vec<(u32, Monomial)>>)> {
    let field = *gb.field();
    let (min, levels) = standard_basis(gb, nvars)?;
    let index: Vec<HashMap<(u32, Monomial), usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(j, &cm)| (cm, j)).collect())
        .collect();
    let dims: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    let mut actions = vec![Vec::with_capacity(dims.len()); nvars];
    for (i, blocks) in actions.iter_mut().enumerate() {
        let x = Monomial::var(i);
        for k in 0..dims.len() {
            let rows = dims.get(k + 1).copied().unwrap_or(0);
            let mut mat = Matrix::zeros(rows, dims[k]);
            for (j, &(c, m)) in levels[k].iter().enumerate() {
                let nf = gb.normal_form(&FreeVector::monomial(c, m.mul(&x), 1));
                for t in nf.terms() {
                    let row = index[k + 1][&(t.comp, t.mono)];
                    mat.set(row, j, t.coeff);
                }
            }
            blocks.push(mat);
        }
    }
    Ok((FiniteModule { field, nvars, min_degree: min, dims, actions }, levels))
}

/// Regular representation of `R` (or of `R/m^t` when truncating).
pub fn flatten_ring(ring: &Arc<GradedRing>, truncation: Option<u32>) -> Result<FiniteAlgebra> {
    let mut r = GradedModule::ring_module(ring.clone());
    if ring.dim() > 0 {
        match truncation {
            Some(t) => r = r.truncate(t)?,
            None => return Err(Error::InfiniteLength),
        }
    }
    let gb = r.relation_gb()?;
    let (regular, levels) = flatten_from_gb(&gb, ring.nvars())?;
    let labels: Vec<Vec<Monomial>> = levels.iter().map(|l| l.iter().map(|&(_, m)| m).collect()).collect();
    let mut parents = Vec::with_capacity(labels.len());
    for (k, level) in labels.iter().enumerate() {
        let mut ps = Vec::with_capacity(level.len());
        for m in level {
            if k == 0 {
                ps.push(None);
                continue;
            }
            let i = (0..ring.nvars()).find(|&i| m.exponent(i) > 0).unwrap();
            let p = Monomial::var(i).quotient_of(m).unwrap();
            let idx = labels[k - 1].iter().position(|q| *q == p).expect("divisors of standard monomials are standard");
            ps.push(Some((i, idx)));
        }
        parents.push(ps);
    }
    Ok(FiniteAlgebra { regular, labels, parents })
}

/// Module data of `M` (or `M/m^t M`) over its basis of standard monomials.
pub fn flatten_module(m: &GradedModule, truncation: Option<u32>) -> Result<FiniteModule> {
    let mut src = m.clone();
    if m.length()?.is_none() {
        match truncation {
            Some(t) => src = src.truncate(t)?,
            None => return Err(Error::InfiniteLength),
        }
    }
    let gb = src.relation_gb()?;
    Ok(flatten_from_gb(&gb, m.ring().nvars())?.0.normalize())
}

pub fn flatten(m: &GradedModule, truncation: Option<u32>) -> Result<(FiniteAlgebra, FiniteModule)> {
    Ok((flatten_ring(m.ring(), truncation)?, flatten_module(m, truncation)?))
}
