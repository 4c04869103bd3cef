use super::algebra::FiniteAlgebra;
use super::linalg::{EchelonBasis, Matrix};
use super::module::FiniteModule;
use crate::algebra::Coeff;
use crate::error::{Error, Result};

/// Largest free-module dimension the oracle will build in one step.
pub const FD_DIM_CAP: usize = 400_000;

/// Minimal generators, by degree index, as non-pivot coordinates of
/// `M_k / (sum_i x_i M_{k-1})`.
fn minimal_generators(m: &FiniteModule) -> Vec<(usize, usize)> {
    let f = &m.field;
    let mut gens = Vec::new();
    for k in 0..m.dims.len() {
        let dk = m.dims[k];
        if dk == 0 {
            continue;
        }
        let mut images = Vec::new();
        if k > 0 {
            for i in 0..m.nvars {
                for c in 0..m.dims[k - 1] {
                    images.push(m.actions[i][k - 1].column(c));
                }
            }
        }
        let eb = EchelonBasis::new(f, &images, dk);
        let mut is_pivot = vec![false; dk];
        for &p in &eb.pivots {
            is_pivot[p] = true;
        }
        gens.extend((0..dk).filter(|&j| !is_pivot[j]).map(|j| (k, j)));
    }
    gens
}

/// One step of the minimal resolution: the number of minimal generators of
/// `M` and, when asked, the first syzygy module.
pub fn syzygy_step(a: &FiniteAlgebra, m: &FiniteModule, want_kernel: bool) -> Result<(usize, Option<FiniteModule>)> {
    let f = m.field;
    let gens = minimal_generators(m);
    if !want_kernel || gens.is_empty() {
        return Ok((gens.len(), None));
    }
    let adims = &a.regular.dims;
    let atop = adims.len() - 1;
    let span = m.dims.len() + atop;

    // positions in F_e of the basis (a_deg, a_idx, g)
    let mut offsets = vec![vec![usize::MAX; gens.len()]; span];
    let mut fdims = vec![0usize; span];
    for e in 0..span {
        for (gi, &(k, _)) in gens.iter().enumerate() {
            if e >= k && e - k <= atop {
                offsets[e][gi] = fdims[e];
                fdims[e] += adims[e - k];
            }
        }
    }
    let total: usize = fdims.iter().sum();
    if total > FD_DIM_CAP {
        return Err(Error::ResourceLimit(format!("free module of dimension {total} in the finite-dimensional oracle")));
    }

    // images a * g in M, through the parent chain
    let mdim = |e: usize| m.dims.get(e).copied().unwrap_or(0);
    let mut images: Vec<Vec<Vec<Vec<Coeff>>>> = Vec::with_capacity(gens.len());
    for &(k, j) in &gens {
        let mut per_deg: Vec<Vec<Vec<Coeff>>> = Vec::with_capacity(atop + 1);
        let mut unit = vec![0; m.dims[k]];
        unit[j] = 1;
        per_deg.push(vec![unit]);
        for d in 1..=atop {
            let e = k + d;
            let level: Vec<Vec<Coeff>> = a.parents[d]
                .iter()
                .map(|p| {
                    let (i, pi) = p.expect("positive degree");
                    if e > m.dims.len() - 1 {
                        Vec::new()
                    } else {
                        m.act(i, e - 1, &per_deg[d - 1][pi])
                    }
                })
                .collect();
            per_deg.push(level);
        }
        images.push(per_deg);
    }

    // kernel of F_e -> M_e
    let mut kernels: Vec<EchelonBasis> = Vec::with_capacity(span);
    for e in 0..span {
        let rows = mdim(e);
        let mut phi = Matrix::zeros(rows, fdims[e]);
        if rows > 0 {
            for (gi, &(k, _)) in gens.iter().enumerate() {
                if offsets[e][gi] == usize::MAX {
                    continue;
                }
                for (ai, v) in images[gi][e - k].iter().enumerate() {
                    for (r, &c) in v.iter().enumerate() {
                        if c != 0 {
                            phi.set(r, offsets[e][gi] + ai, c);
                        }
                    }
                }
            }
        }
        let ns = phi.nullspace(&f);
        kernels.push(EchelonBasis::new(&f, &ns, fdims[e]));
    }

    // variable actions on the kernel
    let kdims: Vec<usize> = kernels.iter().map(|k| k.dim()).collect();
    let mut actions = vec![Vec::with_capacity(span); m.nvars];
    for (i, blocks) in actions.iter_mut().enumerate() {
        for e in 0..span {
            let target = kdims.get(e + 1).copied().unwrap_or(0);
            let mut block = Matrix::zeros(target, kdims[e]);
            if target > 0 {
                for (col, v) in kernels[e].rows_iter().enumerate() {
                    let mut w = vec![0; fdims[e + 1]];
                    for (gi, &(k, _)) in gens.iter().enumerate() {
                        let off = offsets[e][gi];
                        if off == usize::MAX || e - k == atop {
                            continue;
                        }
                        let d = e - k;
                        let act = &a.regular.actions[i][d];
                        let off2 = offsets[e + 1][gi];
                        for ai in 0..adims[d] {
                            let c = v[off + ai];
                            if c == 0 {
                                continue;
                            }
                            for b in 0..adims[d + 1] {
                                let s = act.get(b, ai);
                                if s != 0 {
                                    w[off2 + b] = f.add(w[off2 + b], f.mul(c, s));
                                }
                            }
                        }
                    }
                    for (r, c) in kernels[e + 1].coordinates(&w).into_iter().enumerate() {
                        block.set(r, col, c);
                    }
                }
            }
            blocks.push(block);
        }
    }
    let next = FiniteModule { field: f, nvars: m.nvars, min_degree: m.min_degree, dims: kdims, actions };
    Ok((gens.len(), Some(next.normalize())))
}

/// Betti numbers `beta_0..beta_{n_max}` by linear algebra.
pub fn fd_betti(a: &FiniteAlgebra, m: &FiniteModule, n_max: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut cur = m.clone();
    for n in 0..=n_max {
        let (beta, next) = syzygy_step(a, &cur, n < n_max)?;
        out.push(beta);
        match next {
            Some(k) => cur = k,
            None => break,
        }
    }
    out.resize(n_max + 1, 0);
    Ok(out)
}

/// Bass numbers via `mu^n(M) = beta_n(M^vee)` for the graded k-dual.
pub fn fd_bass(a: &FiniteAlgebra, m: &FiniteModule, n_max: usize) -> Result<Vec<usize>> {
    fd_betti(a, &m.dual(), n_max)
}
