use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 8;

/// A monomial `x^a` with its total degree cached.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            if e > u16::MAX as u32 {
                return Err(Error::ResourceLimit(format!("exponent {e} too large")));
            }
            m.exps[i] = e as u16;
            m.deg += e;
        }
        Ok(m)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += *o;
        }
        Self { exps, deg: self.deg + other.deg }
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (e, s) in exps.iter_mut().zip(self.exps.iter()) {
            *e -= *s;
        }
        Some(Self { exps, deg: other.deg - self.deg })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
            deg += exps[i] as u32;
        }
        Self { exps, deg }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].min(other.exps[i]);
            deg += exps[i] as u32;
        }
        Self { exps, deg }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Degree reverse lexicographic comparison (`x_0 > x_1 > ...`).
    #[inline]
    pub fn cmp_grevlex(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// Pure lexicographic comparison (`x_0 > x_1 > ...`).
    #[inline]
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    /// All monomials of total degree `deg` in `nvars` variables, in descending grevlex order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = [0u32; MAX_VARS];
        fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur[i] = left;
                out.push(Monomial::from_exponents(&cur[..nvars]).expect("bounded exponents"));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, nvars, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(0, nvars, deg, &mut cur, &mut out);
        out.sort_by(|a, b| b.cmp_grevlex(a));
        out
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        // x^2 > xy > y^2 > xz > yz > z^2 in grevlex
        let seq = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in seq.windows(2) {
            assert_eq!(w[0].cmp_grevlex(&w[1]), Ordering::Greater);
        }
        assert_eq!(m(&[0, 0, 3]).cmp_grevlex(&m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_examples() {
        assert_eq!(m(&[1, 0, 0]).cmp_lex(&m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(m(&[0, 1, 0]).cmp_lex(&m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(a.gcd(&b), m(&[1, 1]));
        assert!(m(&[1, 1]).divides(&a));
        assert_eq!(m(&[1, 1]).quotient_of(&a), Some(m(&[1, 0])));
        assert_eq!(b.quotient_of(&a), None);
    }

    #[test]
    fn enumerate_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 0), vec![Monomial::one()]);
        assert_eq!(Monomial::all_of_degree(0, 1).len(), 0);
    }
}
