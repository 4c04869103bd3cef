use crate::algebra::{Coeff, PrimeField};

use super::linalg::Matrix;

/// Finite-dimensional graded module given by one action matrix per variable
/// and degree: `actions[i][k]` maps degree `min_degree + k` to the next degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    pub field: PrimeField,
    pub nvars: usize,
    pub min_degree: i32,
    pub dims: Vec<usize>,
    pub actions: Vec<Vec<Matrix>>,
}

impl FiniteModule {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Self { field, nvars, min_degree: 0, dims: Vec::new(), actions: vec![Vec::new(); nvars] }
    }

    /// Total k-dimension.
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn dim_in_degree(&self, d: i32) -> usize {
        let k = d - self.min_degree;
        if k < 0 {
            0
        } else {
            self.dims.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// Image of a degree-`k` vector under variable `i`.
    pub fn act(&self, i: usize, k: usize, v: &[Coeff]) -> Vec<Coeff> {
        self.actions[i][k].apply(&self.field, v)
    }

    /// Drops zero degrees at both ends.
    pub fn normalize(mut self) -> Self {
        let lead = self.dims.iter().take_while(|&&d| d == 0).count();
        if lead == self.dims.len() {
            return Self::zero(self.field, self.nvars);
        }
        let trail = self.dims.iter().rev().take_while(|&&d| d == 0).count();
        let keep = self.dims.len() - lead - trail;
        self.dims = self.dims[lead..lead + keep].to_vec();
        for a in self.actions.iter_mut() {
            let mut blocks: Vec<Matrix> = a.drain(lead..lead + keep).collect();
            if let Some(last) = blocks.last_mut() {
                *last = Matrix::zeros(0, last.cols());
            }
            *a = blocks;
        }
        self.min_degree += lead as i32;
        self
    }

    /// Graded k-dual: degrees negated, actions transposed.
    pub fn dual(&self) -> Self {
        let l = self.dims.len();
        if l == 0 {
            return self.clone();
        }
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let actions = self
            .actions
            .iter()
            .map(|blocks| {
                (0..l)
                    .map(|k| {
                        if k + 1 < l {
                            blocks[l - 2 - k].transpose()
                        } else {
                            Matrix::zeros(0, dims[k])
                        }
                    })
                    .collect()
            })
            .collect();
        Self { field: self.field, nvars: self.nvars, min_degree: -(self.min_degree + l as i32 - 1), dims, actions }
    }

    /// Checks that the variable actions commute.
    pub fn actions_commute(&self) -> bool {
        let f = &self.field;
        for k in 0..self.dims.len().saturating_sub(2) {
            for i in 0..self.nvars {
                for j in (i + 1)..self.nvars {
                    let a = self.actions[j][k + 1].mul(f, &self.actions[i][k]);
                    let b = self.actions[i][k + 1].mul(f, &self.actions[j][k]);
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }
}
