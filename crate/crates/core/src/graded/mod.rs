//! Graded quotient rings `S/I` and finitely generated graded modules over them.

pub mod duality;
pub mod hilbert;
pub mod homdim;
pub mod homology;
pub mod module;
pub mod resolution;
pub mod ring;
pub mod sop;

use std::sync::{Arc, Mutex};

use crate::error::Result;

pub use duality::{canonical_module, dagger, matlis_dual};
pub use hilbert::{HilbertSeries, Laurent};
pub use homdim::{bass_number, bass_numbers, depth, hom_dim_report, type_of, HomDim, HomDimReport};
pub use homology::{ext, ext_module, tor, tor_module, HomologyInfo};
pub use module::GradedModule;
pub use resolution::Resolution;
pub use ring::GradedRing;
pub use sop::{cut_by_general_sop, CutMode, CutResult};

/// Fallible, compute-once cell. Computation runs under the lock, so a
/// session must not re-enter the same cell.
pub(crate) struct Memo<T>(Mutex<Option<Arc<T>>>);

impl<T> Default for Memo<T> {
    fn default() -> Self {
        Self(Mutex::new(None))
    }
}

impl<T> Memo<T> {
    pub(crate) fn get_or_try(&self, f: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
        let mut guard = self.0.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(v) = guard.as_ref() {
            return Ok(v.clone());
        }
        let v = Arc::new(f()?);
        *guard = Some(v.clone());
        Ok(v)
    }
}
