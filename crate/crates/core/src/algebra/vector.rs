use std::cmp::Ordering;

use super::field::{Coeff, PrimeField};
use super::monomial::Monomial;
use super::order::TermOrder;

/// A single term `c * m * e_comp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Element of a free module `S^r`, stored as a sparse term list strictly
/// descending in position-over-term order. No zero coefficients.
///
/// The order is not stored; every constructor and mutating operation takes
/// the order the caller maintains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeVector {
    terms: Vec<Term>,
}

#[inline]
fn cmp_terms(order: TermOrder, a: &Term, b: &Term) -> Ordering {
    order.cmp_pot(a.comp, &a.mono, b.comp, &b.mono)
}

impl FreeVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a vector from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(field: &PrimeField, order: TermOrder, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| cmp_terms(order, b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mono == t.mono {
                    last.coeff = field.add(last.coeff, t.coeff);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| t.coeff != 0);
        Self { terms: out }
    }

    /// Wraps terms already sorted descending and free of zeros.
    pub(crate) fn from_sorted_unchecked(terms: Vec<Term>) -> Self {
        Self { terms }
    }

    pub fn unit(comp: u32) -> Self {
        Self { terms: vec![Term { comp, mono: Monomial::one(), coeff: 1 }] }
    }

    pub fn monomial(comp: u32, mono: Monomial, coeff: Coeff) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        Self { terms: vec![Term { comp, mono, coeff }] }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Degree of the leading term under the given component twists.
    pub fn degree(&self, twists: &[i32]) -> Option<i32> {
        self.lead().map(|t| t.mono.degree() as i32 + twists[t.comp as usize])
    }

    pub fn is_homogeneous(&self, twists: &[i32]) -> bool {
        match self.degree(twists) {
            None => true,
            Some(d) => self.terms.iter().all(|t| t.mono.degree() as i32 + twists[t.comp as usize] == d),
        }
    }

    pub fn scale(&self, field: &PrimeField, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|t| Term { coeff: field.mul(t.coeff, c), ..*t }).collect(),
        }
    }

    pub fn make_monic(&mut self, field: &PrimeField) {
        if let Some(lc) = self.lead().map(|t| t.coeff) {
            if lc != 1 {
                let inv = field.inv(lc);
                for t in &mut self.terms {
                    t.coeff = field.mul(t.coeff, inv);
                }
            }
        }
    }

    /// `c * m * self`. Multiplication by a monomial preserves the order.
    pub fn mul_term(&self, field: &PrimeField, m: &Monomial, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term { comp: t.comp, mono: t.mono.mul(m), coeff: field.mul(t.coeff, c) })
                .collect(),
        }
    }

    /// `self + c * m * other`, merging in linear time.
    pub fn add_scaled(&self, field: &PrimeField, order: TermOrder, c: Coeff, m: &Monomial, other: &Self) -> Self {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        Self { terms: merge_terms(field, order, &self.terms, c, m, &other.terms) }
    }

    pub fn add(&self, field: &PrimeField, order: TermOrder, other: &Self) -> Self {
        self.add_scaled(field, order, 1, &Monomial::one(), other)
    }

    pub fn sub(&self, field: &PrimeField, order: TermOrder, other: &Self) -> Self {
        self.add_scaled(field, order, field.neg(1), &Monomial::one(), other)
    }

    /// Moves every component index by `delta`. Relative order is preserved.
    pub fn shift_components(&self, delta: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term { comp: (t.comp as i64 + delta) as u32, ..*t })
                .collect(),
        }
    }

    /// Renumbers components through `map`; the result is re-sorted.
    pub fn map_components(&self, field: &PrimeField, order: TermOrder, map: impl Fn(u32) -> u32) -> Self {
        let terms = self.terms.iter().map(|t| Term { comp: map(t.comp), ..*t }).collect();
        Self::from_terms(field, order, terms)
    }

    /// Coefficient polynomial of component `comp`, as (monomial, coeff) pairs.
    pub fn component(&self, comp: u32) -> Vec<(Monomial, Coeff)> {
        self.terms.iter().filter(|t| t.comp == comp).map(|t| (t.mono, t.coeff)).collect()
    }

    pub fn max_component(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.comp).max()
    }

    pub fn min_component(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.comp).min()
    }

    /// Re-sorts terms for a different order.
    pub fn reorder(&self, field: &PrimeField, order: TermOrder) -> Self {
        Self::from_terms(field, order, self.terms.clone())
    }
}

/// `a + c * m * b` on sorted term slices.
pub(crate) fn merge_terms(
    field: &PrimeField,
    order: TermOrder,
    a: &[Term],
    c: Coeff,
    m: &Monomial,
    b: &[Term],
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let scaled = |t: &Term| Term { comp: t.comp, mono: t.mono.mul(m), coeff: field.mul(t.coeff, c) };
    while i < a.len() && j < b.len() {
        let bt = scaled(&b[j]);
        match cmp_terms(order, &a[i], &bt) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(bt);
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(a[i].coeff, bt.coeff);
                if s != 0 {
                    out.push(Term { coeff: s, ..a[i] });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(scaled));
    out
}
