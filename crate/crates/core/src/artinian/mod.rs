//! Independent engine for Artinian rings: modules become matrices over the
//! field and resolutions are computed by plain linear algebra.

mod agree;
mod algebra;
mod linalg;
mod module;
mod resolution;

pub use agree::{agree_check, AgreeReport};
pub use algebra::{flatten, flatten_module, flatten_ring, FiniteAlgebra};
pub use linalg::{EchelonBasis, Matrix};
pub use module::FiniteModule;
pub use resolution::{fd_bass, fd_betti, syzygy_step, FD_DIM_CAP};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ring::ring_from_strings;
    use crate::graded::GradedModule;

    #[test]
    fn residue_field_betti() {
        let r = ring_from_strings("R", &["x"], &["x^2"]).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let (a, m) = flatten(&k, None).unwrap();
        assert_eq!(fd_betti(&a, &m, 6).unwrap(), vec![1; 7]);

        let r = ring_from_strings("R", &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let (a, m) = flatten(&k, None).unwrap();
        let expect: Vec<usize> = (0..=10).map(|n| 1 << n).collect();
        assert_eq!(fd_betti(&a, &m, 10).unwrap(), expect);
    }

    #[test]
    fn regular_representation_commutes() {
        let r = ring_from_strings("R", &["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y*z"]).unwrap();
        let a = flatten_ring(&r, None).unwrap();
        assert_eq!(a.dim(), 7);
        assert!(a.regular.actions_commute());
        assert!(a.regular.dual().actions_commute());
        assert_eq!(a.regular.dual().dual(), a.regular);
    }

    #[test]
    fn gorenstein_ring_is_self_injective() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2", "y^2"]).unwrap();
        let a = flatten_ring(&r, None).unwrap();
        assert_eq!(fd_bass(&a, &a.regular, 4).unwrap(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn agrees_with_groebner_engine() {
        let r = ring_from_strings("R", &["x", "y"], &["x^2", "x*y"]).unwrap();
        assert!(matches!(agree_check(&GradedModule::ring_module(r), 3), Err(crate::Error::Inadmissible(_))));
        let r = ring_from_strings("R", &["x", "y"], &["x^2", "x*y", "y^3"]).unwrap();
        for m in [GradedModule::residue_field(r.clone()), GradedModule::ring_module(r.clone())] {
            let rep = agree_check(&m, 4).unwrap();
            assert!(rep.agree, "{:?}", rep);
        }
    }
}
