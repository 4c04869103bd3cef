use std::cmp::Ordering;

use super::monomial::Monomial;

/// Monomial order. Vectors in free modules always use position-over-term
/// with this order inside; component 0 is the largest position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    #[default]
    Grevlex,
    Lex,
}

impl TermOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => a.cmp_grevlex(b),
            TermOrder::Lex => a.cmp_lex(b),
        }
    }

    /// Position-over-term comparison of `(component, monomial)` pairs.
    #[inline]
    pub fn cmp_pot(&self, ca: u32, a: &Monomial, cb: u32, b: &Monomial) -> Ordering {
        match cb.cmp(&ca) {
            Ordering::Equal => self.cmp(a, b),
            o => o,
        }
    }
}
