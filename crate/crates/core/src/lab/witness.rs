//! Modules built the way the characterization proofs build them, each
//! checked against the existence clause it is supposed to satisfy.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::graded::sop::{random_linear_form, SAMPLE_BUDGET};
use crate::graded::{cut_by_general_sop, dagger, hom_dim_report, CutMode, GradedModule, GradedRing};
use crate::invariants::{classify_ring, module_invariants, RingClass};

/// Theorems with a witness construction.
pub const WITNESS_THEOREMS: &[&str] = &["T41", "T42", "T43", "T44", "C46"];

#[derive(Clone, Debug)]
pub struct Witness {
    pub theorem: String,
    /// Item of the theorem whose existence clause the module satisfies.
    pub item: u8,
    pub n: usize,
    pub description: String,
    pub module: GradedModule,
    pub checks: BTreeMap<String, bool>,
}

impl Witness {
    pub fn ok(&self) -> bool {
        self.checks.values().all(|&v| v)
    }

    pub fn summary(&self) -> WitnessSummary {
        WitnessSummary {
            theorem: self.theorem.clone(),
            item: self.item,
            n: self.n,
            description: self.description.clone(),
            checks: self.checks.clone(),
            ok: self.ok(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub theorem: String,
    pub item: u8,
    pub n: usize,
    pub description: String,
    pub checks: BTreeMap<String, bool>,
    pub ok: bool,
}

#[derive(Clone, Copy)]
enum Bound {
    Mu,
    Type,
}

#[derive(Clone, Copy)]
enum Rel {
    Lt,
    Le,
    Gt,
    Ge,
    Ne,
}

#[derive(Clone, Copy)]
enum Finite {
    Pd,
    Id,
}

fn verify(
    theorem: &str,
    item: u8,
    n: usize,
    description: String,
    module: GradedModule,
    rel: Rel,
    bound: Bound,
    finite: Finite,
) -> Result<Witness> {
    let inv = module_invariants(&module)?;
    let hd = hom_dim_report(&module)?;
    let rhs = 2 * match bound {
        Bound::Mu => inv.mu as i64,
        Bound::Type => inv.type_ as i64,
    };
    let (sym, holds) = match rel {
        Rel::Lt => ("<", inv.e < rhs),
        Rel::Le => ("<=", inv.e <= rhs),
        Rel::Gt => (">", inv.e > rhs),
        Rel::Ge => (">=", inv.e >= rhs),
        Rel::Ne => ("!=", inv.e != rhs),
    };
    let bname = match bound {
        Bound::Mu => "mu",
        Bound::Type => "type",
    };
    let mut checks = BTreeMap::new();
    checks.insert("CM".to_string(), inv.is_cm);
    checks.insert(format!("dim = {n}"), inv.dim == n);
    checks.insert("min mult".to_string(), inv.has_min_mult);
    checks.insert(format!("e {sym} 2{bname}"), holds);
    match finite {
        Finite::Pd => checks.insert("pd < inf".to_string(), hd.pd.is_finite()),
        Finite::Id => checks.insert("id < inf".to_string(), hd.id.is_finite()),
    };
    Ok(Witness { theorem: theorem.into(), item, n, description, module, checks })
}

fn format_forms(ring: &GradedRing, forms: &[Polynomial]) -> String {
    let f: Vec<String> = forms.iter().map(|p| p.format(ring.field(), ring.vars())).collect();
    f.join(", ")
}

/// `R/(x_1..x_t)` for general linear forms, verified regular on `base`.
fn cut<R: Rng + ?Sized>(base: &GradedModule, t: usize, rng: &mut R) -> Result<(GradedModule, Vec<Polynomial>)> {
    match cut_by_general_sop(base, t, CutMode::RegularOnly, rng) {
        Ok(c) => Ok((c.module, c.forms)),
        Err(Error::ReductionNotFound(k)) => Err(Error::WitnessFailed(format!("no regular sequence after {k} samples"))),
        Err(e) => Err(e),
    }
}

/// `R/(l_1..l_t)^2` for general linear forms with `dim = d - t`.
fn square_of_forms<R: Rng + ?Sized>(r: &GradedModule, t: usize, rng: &mut R) -> Result<(GradedModule, Vec<Polynomial>)> {
    let ring = r.ring();
    let f = ring.field();
    let want = ring.dim() - t;
    for _ in 0..SAMPLE_BUDGET {
        let forms: Vec<Polynomial> = (0..t).map(|_| random_linear_form(r, rng)).collect();
        let mut prods = Vec::new();
        for a in 0..t {
            for b in a..t {
                prods.push(forms[a].mul(f, &forms[b]));
            }
        }
        let n = GradedModule::cyclic(ring.clone(), &prods)?;
        if n.dim()? == Some(want) {
            return Ok((n, forms));
        }
    }
    Err(Error::WitnessFailed(format!("no independent forms after {SAMPLE_BUDGET} samples")))
}

fn require(ok: bool, theorem: &str, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Inadmissible(format!("{theorem} witnesses need R {what}")))
    }
}

/// Builds and checks the witnesses of `theorem` over `ring`.
pub fn witness<R: Rng + ?Sized>(theorem: &str, ring: &Arc<GradedRing>, rng: &mut R) -> Result<Vec<Witness>> {
    let class: RingClass = classify_ring(ring)?;
    let d = class.dim;
    let r = GradedModule::ring_module(ring.clone());
    let mut out = Vec::new();
    match theorem {
        "T41" | "T42" | "C46" => {
            let (rel_mu, rel_ty, label) = match theorem {
                "T41" => {
                    require(class.is_hypersurface && class.e <= 2, theorem, "a hypersurface with e <= 2")?;
                    (Rel::Le, Rel::Le, "R/(x)")
                }
                "T42" => {
                    require(class.is_regular, theorem, "regular")?;
                    (Rel::Lt, Rel::Lt, "R/(x)")
                }
                _ => {
                    require(class.is_gorenstein && class.is_regular, theorem, "Gorenstein and regular")?;
                    (Rel::Ne, Rel::Ne, "M = R/(x)")
                }
            };
            for n in 0..=d {
                let (m, forms) = cut(&r, d - n, rng)?;
                let desc = format!("{label} with x = ({})", format_forms(ring, &forms));
                // for C46 the Ext condition follows from pd < inf over a regular ring
                out.push(verify(theorem, 2, n, desc.clone(), m.clone(), rel_mu, Bound::Mu, Finite::Pd)?);
                let fin = if theorem == "C46" { Finite::Pd } else { Finite::Id };
                out.push(verify(theorem, 3, n, desc, m, rel_ty, Bound::Type, fin)?);
            }
        }
        "T43" => {
            require(class.is_regular && d >= 2, theorem, "regular of dimension >= 2")?;
            for n in 0..=d - 2 {
                let (m, forms) = square_of_forms(&r, d - n, rng)?;
                let desc = format!("R/(x)^2 with x = ({})", format_forms(ring, &forms));
                out.push(verify(theorem, 3, n, desc.clone(), m.clone(), Rel::Gt, Bound::Mu, Finite::Id)?);
                let dual = dagger(&m)?;
                out.push(verify(theorem, 2, n, format!("dagger of {desc}"), dual, Rel::Gt, Bound::Type, Finite::Pd)?);
            }
        }
        "T44" => {
            require(
                class.is_hypersurface && class.e <= 2 && !class.is_field,
                theorem,
                "a hypersurface with e <= 2 that is not a field",
            )?;
            let top = d.saturating_sub(1);
            if class.is_regular {
                // R' = R/(l^2) is a hypersurface of multiplicity 2
                let l = random_linear_form(&r, rng);
                let x = l.mul(ring.field(), &l);
                let base = GradedModule::cyclic(ring.clone(), std::slice::from_ref(&x))?;
                for n in 0..=top {
                    let (m, forms) = cut(&base, d - 1 - n, rng)?;
                    let desc = format!(
                        "R'/(x) with R' = R/({}), x = ({})",
                        x.format(ring.field(), ring.vars()),
                        format_forms(ring, &forms)
                    );
                    out.push(verify(theorem, 2, n, desc.clone(), m.clone(), Rel::Ge, Bound::Type, Finite::Pd)?);
                    out.push(verify(theorem, 3, n, desc, m, Rel::Ge, Bound::Mu, Finite::Id)?);
                }
            } else {
                for n in 0..=top {
                    let (m, forms) = cut(&r, d - n, rng)?;
                    let desc = format!("R/(x) with x = ({})", format_forms(ring, &forms));
                    out.push(verify(theorem, 2, n, desc.clone(), m.clone(), Rel::Ge, Bound::Type, Finite::Pd)?);
                    out.push(verify(theorem, 3, n, desc, m, Rel::Ge, Bound::Mu, Finite::Id)?);
                }
            }
        }
        other => return Err(Error::Inadmissible(format!("no witness construction for {other}"))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ring::ring_from_strings;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn square_of_maximal_ideal_in_plane() {
        let r = ring_from_strings("R", &["x", "y"], &[]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ws = witness("T43", &r, &mut rng).unwrap();
        assert_eq!(ws.len(), 2);
        assert!(ws.iter().all(|w| w.ok()), "{:?}", ws.iter().map(|w| &w.checks).collect::<Vec<_>>());
        let n = &ws[0].module;
        assert_eq!(n.length().unwrap(), Some(3));
        assert_eq!(n.num_generators().unwrap(), 1);
    }

    #[test]
    fn regular_line_gets_a_double_point() {
        let r = ring_from_strings("R", &["x"], &[]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ws = witness("T44", &r, &mut rng).unwrap();
        assert_eq!(ws.len(), 2);
        assert!(ws.iter().all(|w| w.ok()));
        assert_eq!(ws[0].module.length().unwrap(), Some(2));
    }

    #[test]
    fn hypersurface_witnesses_and_precondition() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ws = witness("T41", &r, &mut rng).unwrap();
        assert_eq!(ws.len(), 4);
        assert!(ws.iter().all(|w| w.ok()));
        assert!(matches!(witness("T42", &r, &mut rng), Err(Error::Inadmissible(_))));
    }
}
