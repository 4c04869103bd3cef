use rand::Rng;

use super::homdim::depth;
use super::module::GradedModule;
use crate::algebra::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// Number of random linear forms tried before giving up.
pub const SAMPLE_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutMode {
    RegularOnly,
    /// Also require `lambda(M/xM) = e(M)` once `t = dim M`.
    Reduction,
}

#[derive(Clone, Debug)]
pub struct CutResult {
    pub module: GradedModule,
    pub forms: Vec<Polynomial>,
    pub samples: usize,
}

pub fn random_linear_form<R: Rng + ?Sized>(m: &GradedModule, rng: &mut R) -> Polynomial {
    let ring = m.ring();
    let f = ring.field();
    let p = f.characteristic();
    loop {
        let terms: Vec<(Monomial, u32)> = (0..ring.nvars()).map(|i| (Monomial::var(i), rng.gen_range(0..p))).collect();
        let form = Polynomial::from_terms(f, terms);
        if !form.is_zero() || ring.nvars() == 0 {
            return form;
        }
    }
}

/// True when `l` is `M`-regular, tested by `H_{M/lM} = (1-t) H_M`.
pub fn is_regular_form(m: &GradedModule, l: &Polynomial) -> Result<(bool, GradedModule)> {
    let q = m.quotient_by(std::slice::from_ref(l))?;
    let expected = m.hilbert_series()?.times_one_minus_t();
    Ok((q.hilbert_series()?.numerator == expected.numerator, q))
}

/// Cuts `M` by `t` general linear forms verified to form an `M`-regular sequence.
pub fn cut_by_general_sop<R: Rng + ?Sized>(m: &GradedModule, t: usize, mode: CutMode, rng: &mut R) -> Result<CutResult> {
    let dim = m.dim()?.ok_or(Error::ZeroModule("cut by system of parameters"))?;
    if t > dim {
        return Err(Error::Inadmissible(format!("cannot cut {t} times a module of dimension {dim}")));
    }
    if mode == CutMode::Reduction && depth(m)? != dim {
        return Err(Error::NotCohenMacaulay);
    }
    if t == 0 {
        return Ok(CutResult { module: m.clone(), forms: Vec::new(), samples: 0 });
    }
    let e = m.multiplicity()?;
    let mut samples = 0;
    while samples < SAMPLE_BUDGET {
        let mut cur = m.clone();
        let mut forms = Vec::new();
        while forms.len() < t && samples < SAMPLE_BUDGET {
            samples += 1;
            let l = random_linear_form(m, rng);
            let (ok, q) = is_regular_form(&cur, &l)?;
            if ok {
                cur = q;
                forms.push(l);
            }
        }
        if forms.len() < t {
            break;
        }
        if mode == CutMode::Reduction && t == dim && cur.length()? != Some(e) {
            continue;
        }
        return Ok(CutResult { module: cur, forms, samples });
    }
    Err(Error::ReductionNotFound(samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ring::ring_from_strings;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cut_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = ring_from_strings("R", &["x", "y"], &["x^2"]).unwrap();
        let m = GradedModule::ring_module(r);
        let c = cut_by_general_sop(&m, 1, CutMode::Reduction, &mut rng).unwrap();
        assert_eq!(c.forms.len(), 1);
        assert_eq!(c.module.length().unwrap(), Some(2));

        let s = ring_from_strings("S", &["x", "y"], &[]).unwrap();
        let m = GradedModule::ring_module(s);
        let c = cut_by_general_sop(&m, 2, CutMode::Reduction, &mut rng).unwrap();
        assert_eq!(c.module.length().unwrap(), Some(1));

        let a = ring_from_strings("A", &["x"], &["x^2"]).unwrap();
        let m = GradedModule::ring_module(a);
        let c = cut_by_general_sop(&m, 0, CutMode::Reduction, &mut rng).unwrap();
        assert!(c.forms.is_empty());
    }
}
