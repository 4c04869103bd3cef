use serde::Serialize;

use super::algebra::flatten;
use super::resolution::{fd_bass, fd_betti};
use crate::error::{Error, Result};
use crate::graded::{bass_numbers, GradedModule};

/// Side-by-side invariants from the Gröbner engine and the linear-algebra oracle.
#[derive(Clone, Debug, Serialize)]
pub struct AgreeReport {
    pub n_max: usize,
    pub length_graded: i64,
    pub length_oracle: usize,
    pub betti_graded: Vec<usize>,
    pub betti_oracle: Vec<usize>,
    pub bass_graded: Vec<usize>,
    pub bass_oracle: Vec<usize>,
    pub agree: bool,
    /// First disagreement, as `invariant[index]`.
    pub discrepancy: Option<String>,
}

fn first_mismatch(name: &str, a: &[usize], b: &[usize]) -> Option<String> {
    a.iter().zip(b).position(|(x, y)| x != y).map(|i| format!("{name}[{i}]: graded {} vs oracle {}", a[i], b[i]))
}

/// Compares length, Betti and Bass numbers up to `n_max`. The ring must be Artinian.
pub fn agree_check(m: &GradedModule, n_max: usize) -> Result<AgreeReport> {
    if m.ring().dim() > 0 {
        return Err(Error::Inadmissible("the oracle needs an Artinian ring".into()));
    }
    let length_graded = m.length()?.ok_or(Error::InfiniteLength)?;
    let (alg, fm) = flatten(m, None)?;
    let length_oracle = fm.dim();
    let betti_graded = m.betti_numbers(n_max)?;
    let betti_oracle = fd_betti(&alg, &fm, n_max)?;
    let bass_graded: Vec<usize> = bass_numbers(m, n_max)?.into_iter().map(|v| v as usize).collect();
    let bass_oracle = fd_bass(&alg, &fm, n_max)?;
    let discrepancy = if length_graded != length_oracle as i64 {
        Some(format!("length: graded {length_graded} vs oracle {length_oracle}"))
    } else {
        first_mismatch("beta", &betti_graded, &betti_oracle).or_else(|| first_mismatch("mu", &bass_graded, &bass_oracle))
    };
    Ok(AgreeReport {
        n_max,
        length_graded,
        length_oracle,
        betti_graded,
        betti_oracle,
        bass_graded,
        bass_oracle,
        agree: discrepancy.is_none(),
        discrepancy,
    })
}
