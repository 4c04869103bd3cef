use std::fmt;

use serde::Serialize;

use crate::algebra::Monomial;

/// Laurent polynomial in `t` with integer coefficients: `sum coeffs[i] t^(low+i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i32, c: i64) -> Self {
        let mut l = Self { low: exp, coeffs: vec![c] };
        l.trim();
        l
    }

    pub fn from_coeffs(low: i32, coeffs: Vec<i64>) -> Self {
        let mut l = Self { low, coeffs };
        l.trim();
        l
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> Vec<(i32, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.low + i as i32, c))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let coeffs = (low..=high).map(|e| self.coeff(e) + other.coeff(e)).collect();
        Self::from_coeffs(low, coeffs)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.low + other.low, coeffs)
    }

    pub fn shift(&self, by: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    /// `1 - t^d`.
    pub fn one_minus_t_pow(d: i32) -> Self {
        Self::monomial(0, 1).sub(&Self::monomial(d, 1))
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact division by `1 - t`; requires `eval_one() == 0`.
    pub fn div_one_minus_t(&self) -> Self {
        debug_assert_eq!(self.eval_one(), 0);
        let mut acc = 0i64;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            acc += c;
            out.push(acc);
        }
        Self::from_coeffs(self.low, out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                1 if a == 1 => write!(f, "t")?,
                1 => write!(f, "{a}t")?,
                _ if a == 1 => write!(f, "t^{e}")?,
                _ => write!(f, "{a}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// `H(t) = numerator / (1-t)^nvars`, kept together with its reduced form
/// `q(t) / (1-t)^pole`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub numerator: Laurent,
    pub nvars: usize,
    pub reduced: Laurent,
    pub pole: usize,
}

impl HilbertSeries {
    pub fn new(numerator: Laurent, nvars: usize) -> Self {
        let mut reduced = numerator.clone();
        let mut pole = nvars;
        while pole > 0 && !reduced.is_zero() && reduced.eval_one() == 0 {
            reduced = reduced.div_one_minus_t();
            pole -= 1;
        }
        if reduced.is_zero() {
            pole = 0;
        }
        Self { numerator, nvars, reduced, pole }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Krull dimension; `None` for the zero module.
    pub fn dim(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.pole)
        }
    }

    /// Multiplicity `q(1)`; equals the length in dimension zero.
    pub fn multiplicity(&self) -> i64 {
        self.reduced.eval_one()
    }

    /// Length, when finite.
    pub fn length(&self) -> Option<i64> {
        if self.is_zero() {
            Some(0)
        } else if self.pole == 0 {
            Some(self.reduced.eval_one())
        } else {
            None
        }
    }

    /// Value of the Hilbert function in degree `d`.
    pub fn value(&self, d: i32) -> i64 {
        let n = self.pole as i64;
        let mut total = 0i64;
        for (e, c) in self.reduced.terms() {
            let k = (d - e) as i64;
            if k < 0 {
                continue;
            }
            total += c * binomial(k + n - 1, n - 1);
        }
        total
    }

    /// Difference of two series over the same ambient ring.
    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        Self::new(self.numerator.sub(&other.numerator), self.nvars)
    }

    /// `(1 - t) * H`.
    pub fn times_one_minus_t(&self) -> Self {
        Self::new(self.numerator.mul(&Laurent::one_minus_t_pow(1)), self.nvars)
    }
}

/// `C(n, k)` with the convention `C(n, -1) = [n == -1]` used by the Hilbert function.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 {
        return if n == -1 && k == -1 { 1 } else { 0 };
    }
    if n < k || n < 0 {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Numerator `N` with `H(S/J) = N / (1-t)^n` for a monomial ideal `J`.
pub fn monomial_ideal_numerator(gens: &[Monomial]) -> Laurent {
    let mut g = minimize(gens.to_vec());
    numerator_rec(&mut g)
}

fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn numerator_rec(gens: &mut [Monomial]) -> Laurent {
    if gens.is_empty() {
        return Laurent::monomial(0, 1);
    }
    if gens.iter().any(|m| m.is_one()) {
        return Laurent::zero();
    }
    // pivot on the variable occurring in the most non-pure-power generators
    let mut counts = [0usize; crate::algebra::MAX_VARS];
    for m in gens.iter() {
        let support = m.exponents().iter().filter(|&&e| e > 0).count();
        if support > 1 {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    counts[i] += 1;
                }
            }
        }
    }
    let pivot = (0..counts.len()).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    if counts[pivot] == 0 {
        // pairwise coprime pure powers
        return gens.iter().fold(Laurent::monomial(0, 1), |acc, m| {
            acc.mul(&Laurent::one_minus_t_pow(m.degree() as i32))
        });
    }
    let x = Monomial::var(pivot);
    // J + (x)
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exponent(pivot) == 0).copied().collect();
    plus.push(x);
    let mut plus = minimize(plus);
    // J : x
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| if m.exponent(pivot) > 0 { x.quotient_of(m).unwrap() } else { *m })
        .collect();
    let mut colon = minimize(colon);
    numerator_rec(&mut plus).add(&numerator_rec(&mut colon).shift(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn series_of_simple_quotients() {
        // k[x]/(x^2)
        let h = HilbertSeries::new(monomial_ideal_numerator(&[mono(&[2])]), 1);
        assert_eq!(h.dim(), Some(0));
        assert_eq!(h.reduced, Laurent::from_coeffs(0, vec![1, 1]));
        assert_eq!(h.length(), Some(2));
        // k[x,y]
        let h = HilbertSeries::new(monomial_ideal_numerator(&[]), 2);
        assert_eq!((h.dim(), h.multiplicity()), (Some(2), 1));
        // k[x,y]/(x^2)
        let h = HilbertSeries::new(monomial_ideal_numerator(&[mono(&[2, 0])]), 2);
        assert_eq!((h.dim(), h.multiplicity()), (Some(1), 2));
        assert_eq!(h.reduced, Laurent::from_coeffs(0, vec![1, 1]));
        // k[x,y]/(x^2,xy,y^2)
        let h = HilbertSeries::new(monomial_ideal_numerator(&[mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]), 2);
        assert_eq!(h.length(), Some(3));
        assert_eq!(h.value(1), 2);
        // k[x,y]/(x^2,xy): dim 1, e = 1
        let h = HilbertSeries::new(monomial_ideal_numerator(&[mono(&[2, 0]), mono(&[1, 1])]), 2);
        assert_eq!((h.dim(), h.multiplicity()), (Some(1), 1));
        assert_eq!(h.value(0), 1);
        assert_eq!(h.value(1), 2);
        assert_eq!(h.value(5), 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(-1, -1), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
