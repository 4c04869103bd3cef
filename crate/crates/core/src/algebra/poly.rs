use std::cmp::Ordering;

use super::field::{Coeff, PrimeField};
use super::monomial::Monomial;
use super::order::TermOrder;
use super::vector::{FreeVector, Term};

/// Polynomial in `k[x_0, ..., x_{n-1}]`, terms strictly descending in grevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(field: &PrimeField, c: i64) -> Self {
        Self::from_terms(field, vec![(Monomial::one(), field.from_i64(c))])
    }

    pub fn var(i: usize) -> Self {
        Self { terms: vec![(Monomial::var(i), 1)] }
    }

    pub fn from_terms(field: &PrimeField, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = field.add(last.1, c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|t| t.1 != 0);
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.terms.iter().all(|t| t.0.degree() == d),
        }
    }

    /// Nonzero constant term present.
    pub fn is_unit_like(&self) -> bool {
        self.terms.iter().any(|t| t.0.is_one())
    }

    pub fn add(&self, field: &PrimeField, other: &Self) -> Self {
        let mut v = self.terms.clone();
        v.extend_from_slice(&other.terms);
        Self::from_terms(field, v)
    }

    pub fn neg(&self, field: &PrimeField) -> Self {
        Self { terms: self.terms.iter().map(|&(m, c)| (m, field.neg(c))).collect() }
    }

    pub fn sub(&self, field: &PrimeField, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn scale(&self, field: &PrimeField, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|&(m, k)| (m, field.mul(k, c))).collect() }
    }

    pub fn mul(&self, field: &PrimeField, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                v.push((ma.mul(mb), field.mul(*ca, *cb)));
            }
        }
        Self::from_terms(field, v)
    }

    pub fn pow(&self, field: &PrimeField, e: u32) -> Self {
        let mut acc = Self::constant(field, 1);
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// `self * e_comp` as a free-module vector.
    pub fn to_vector(&self, field: &PrimeField, order: TermOrder, comp: u32) -> FreeVector {
        let terms = self.terms.iter().map(|&(mono, coeff)| Term { comp, mono, coeff }).collect();
        if order == TermOrder::Grevlex {
            FreeVector::from_sorted_unchecked(terms)
        } else {
            FreeVector::from_terms(field, order, terms)
        }
    }

    /// `self * v`, re-sorted in `order`.
    pub fn mul_vector(&self, field: &PrimeField, order: TermOrder, v: &FreeVector) -> FreeVector {
        let mut acc = FreeVector::zero();
        for (m, c) in &self.terms {
            acc = acc.add_scaled(field, order, *c, m, v);
        }
        acc
    }

    /// Substitutes polynomials for variables (`images[i]` replaces `x_i`).
    pub fn substitute(&self, field: &PrimeField, images: &[Polynomial]) -> Self {
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(field, 1).scale(field, *c);
            for (i, img) in images.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = t.mul(field, &img.pow(field, e));
                }
            }
            acc = acc.add(field, &t);
        }
        acc
    }

    pub fn format(&self, field: &PrimeField, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let v = field.to_signed(*c);
            let (neg, abs) = (v < 0, v.unsigned_abs());
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs == 1 {
                s.push_str(&m.format(names));
            } else {
                s.push_str(&format!("{}*{}", abs, m.format(names)));
            }
        }
        s
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp_grevlex(&b.0).then(a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}
