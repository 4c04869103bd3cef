use std::collections::BTreeMap;
use std::sync::Arc;

use super::ring::GradedRing;
use crate::algebra::{kernel, mingens, FreeVector};
use crate::error::{Error, Result};

/// One free module `F_i` of a resolution together with `d_i : F_i -> F_{i-1}`.
#[derive(Debug)]
pub struct Level {
    pub degrees: Vec<i32>,
    /// Columns of `d_i`, as vectors of `F_{i-1}`. Empty for `i = 0`.
    pub differential: Vec<FreeVector>,
}

/// Minimal graded free resolution, computed lazily and shared through caches.
/// Cloning is cheap.
#[derive(Clone, Debug, Default)]
pub struct Resolution {
    levels: Vec<Arc<Level>>,
    terminated: bool,
}

impl Resolution {
    pub(crate) fn is_started(&self) -> bool {
        !self.levels.is_empty() || self.terminated
    }

    /// Seeds the resolution from a minimal presentation.
    pub(crate) fn start(&mut self, degrees: Vec<i32>, relations: Vec<FreeVector>, relation_degrees: Vec<i32>) {
        self.levels.clear();
        if degrees.is_empty() {
            self.terminated = true;
            return;
        }
        self.levels.push(Arc::new(Level { degrees, differential: Vec::new() }));
        if relations.is_empty() {
            self.terminated = true;
        } else {
            self.levels.push(Arc::new(Level { degrees: relation_degrees, differential: relations }));
        }
    }

    /// Number of computed levels.
    pub fn computed(&self) -> usize {
        self.levels.len()
    }

    /// True when the resolution is known to stop after the computed levels.
    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    /// Projective dimension when the resolution is known to be finite.
    pub fn length(&self) -> Option<usize> {
        if self.terminated {
            Some(self.levels.len().saturating_sub(1))
        } else {
            None
        }
    }

    /// `beta_i`, when determined by the computed prefix.
    pub fn betti(&self, i: usize) -> Option<usize> {
        match self.levels.get(i) {
            Some(l) => Some(l.degrees.len()),
            None if self.terminated => Some(0),
            None => None,
        }
    }

    pub fn degrees(&self, i: usize) -> &[i32] {
        self.levels.get(i).map(|l| l.degrees.as_slice()).unwrap_or(&[])
    }

    pub fn differential(&self, i: usize) -> &[FreeVector] {
        self.levels.get(i).map(|l| l.differential.as_slice()).unwrap_or(&[])
    }

    /// Graded Betti numbers `beta_{i,j}` of the computed prefix.
    pub fn betti_table(&self) -> BTreeMap<(usize, i32), usize> {
        let mut t = BTreeMap::new();
        for (i, l) in self.levels.iter().enumerate() {
            for &d in &l.degrees {
                *t.entry((i, d)).or_insert(0) += 1;
            }
        }
        t
    }

    /// Computes levels until `upto` is known.
    pub(crate) fn extend(&mut self, ring: &GradedRing, upto: usize) -> Result<()> {
        while self.levels.len() <= upto && !self.terminated {
            let i = self.levels.len();
            debug_assert!(i >= 2);
            let target = &self.levels[i - 2].degrees;
            let prev = &self.levels[i - 1];
            if prev.degrees.len() > ring.limits().max_rank {
                return Err(Error::ResourceLimit(format!(
                    "resolution rank {} at step {} exceeds {}",
                    prev.degrees.len(),
                    i - 1,
                    ring.limits().max_rank
                )));
            }
            let raw = kernel(
                ring.field(),
                target,
                &prev.differential,
                &prev.degrees,
                &ring.ideal_relations(target),
                ring.limits(),
            )?;
            let keep = mingens(ring.field(), &prev.degrees, &raw, &ring.ideal_relations(&prev.degrees), ring.limits())?;
            if keep.is_empty() {
                self.terminated = true;
                break;
            }
            let mut cols: Vec<FreeVector> = keep.into_iter().map(|k| ring.reduce_vector(&raw[k])).collect();
            cols.sort_by_key(|c| c.degree(&prev.degrees).unwrap());
            let degrees = cols.iter().map(|c| c.degree(&prev.degrees).unwrap()).collect();
            self.levels.push(Arc::new(Level { degrees, differential: cols }));
        }
        Ok(())
    }
}
