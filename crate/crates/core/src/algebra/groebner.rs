//! Homogeneous Buchberger engine over free modules.
//!
//! Everything is processed degree by degree. The same engine drives Gröbner
//! bases, minimal generator selection and kernels by elimination.

use std::collections::BTreeMap;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::TermOrder;
use super::vector::{merge_terms, FreeVector, Term};
use crate::error::{Error, Result};

/// Hard caps on a single Gröbner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    pub max_pairs: usize,
    pub max_degree: i32,
    /// Largest free module a resolution may extend from.
    pub max_rank: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        let max_pairs = std::env::var("CMLAB_MAX_PAIRS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(4_000_000);
        Self { max_pairs, max_degree: 400, max_rank: 10_000 }
    }
}

/// Lookup of reducers by (component, leading monomial).
#[derive(Clone, Debug, Default)]
struct Divisors {
    by_comp: Vec<Vec<(Monomial, usize)>>,
}

impl Divisors {
    fn push(&mut self, comp: u32, mono: Monomial, idx: usize) {
        let c = comp as usize;
        if self.by_comp.len() <= c {
            self.by_comp.resize_with(c + 1, Vec::new);
        }
        self.by_comp[c].push((mono, idx));
    }

    #[inline]
    fn find(&self, comp: u32, mono: &Monomial) -> Option<usize> {
        self.by_comp
            .get(comp as usize)?
            .iter()
            .find(|(m, _)| m.divides(mono))
            .map(|&(_, i)| i)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Full,
    /// Top-reduce only while the lead component is below the bound.
    TopBelow(u32),
}

fn reduce_with(
    field: &PrimeField,
    order: TermOrder,
    elems: &[FreeVector],
    index: &Divisors,
    v: &FreeVector,
    mode: Mode,
) -> FreeVector {
    let mut rem: Vec<Term> = Vec::new();
    let mut p: Vec<Term> = v.terms().to_vec();
    let mut start = 0;
    while start < p.len() {
        let lt = p[start];
        if let Mode::TopBelow(bound) = mode {
            if lt.comp >= bound {
                break;
            }
        }
        match index.find(lt.comp, &lt.mono) {
            Some(i) => {
                let g = &elems[i];
                let glt = g.terms()[0];
                let q = glt.mono.quotient_of(&lt.mono).expect("divisor");
                let lc = if glt.coeff == 1 { 1 } else { field.inv(glt.coeff) };
                let c = field.neg(field.mul(lt.coeff, lc));
                p = merge_terms(field, order, &p[start..], c, &q, g.terms());
                start = 0;
            }
            None => {
                if mode != Mode::Full {
                    break;
                }
                rem.push(lt);
                start += 1;
            }
        }
    }
    rem.extend_from_slice(&p[start..]);
    FreeVector::from_sorted_unchecked(rem)
}

/// Division algorithm against an arbitrary list of vectors.
///
/// The remainder has no term divisible by a leading term of `basis`.
pub fn normal_form(field: &PrimeField, order: TermOrder, f: &FreeVector, basis: &[FreeVector]) -> FreeVector {
    let mut index = Divisors::default();
    for (i, g) in basis.iter().enumerate() {
        if let Some(t) = g.lead() {
            index.push(t.comp, t.mono, i);
        }
    }
    reduce_with(field, order, basis, &index, f, Mode::Full)
}

/// Reduced Gröbner basis of a homogeneous submodule of a twisted free module.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: PrimeField,
    order: TermOrder,
    twists: Vec<i32>,
    elems: Vec<FreeVector>,
    index: Divisors,
}

impl GroebnerBasis {
    fn from_elems(field: PrimeField, order: TermOrder, twists: Vec<i32>, elems: Vec<FreeVector>) -> Self {
        let mut index = Divisors::default();
        for (i, g) in elems.iter().enumerate() {
            let t = g.lead().expect("nonzero basis element");
            index.push(t.comp, t.mono, i);
        }
        Self { field, order, twists, elems, index }
    }

    /// Wraps vectors the caller already knows to be a monic Gröbner basis.
    pub fn trusted(field: PrimeField, order: TermOrder, twists: Vec<i32>, elems: Vec<FreeVector>) -> Self {
        Self::from_elems(field, order, twists, elems)
    }

    pub fn elements(&self) -> &[FreeVector] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn normal_form(&self, f: &FreeVector) -> FreeVector {
        reduce_with(&self.field, self.order, &self.elems, &self.index, f, Mode::Full)
    }

    pub fn contains(&self, f: &FreeVector) -> bool {
        self.normal_form(f).is_zero()
    }

    /// True when the submodule contains the whole free module.
    pub fn is_everything(&self) -> bool {
        (0..self.rank() as u32).all(|c| self.index.find(c, &Monomial::one()).is_some())
    }

    /// Leading monomials grouped by component.
    pub fn leading_monomials(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.rank()];
        for g in &self.elems {
            let t = g.lead().expect("nonzero");
            out[t.comp as usize].push(t.mono);
        }
        out
    }
}

struct Elem {
    lead: Monomial,
    pure: bool,
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: i32,
}

enum Input {
    Base,
    Countable(usize),
}

/// Degree-by-degree Buchberger state.
struct Engine {
    field: PrimeField,
    order: TermOrder,
    twists: Vec<i32>,
    limits: GbLimits,
    vecs: Vec<FreeVector>,
    meta: Vec<Elem>,
    index: Divisors,
    pairs: Vec<Vec<Pair>>,
    pair_degrees: BTreeMap<i32, usize>,
    inputs: BTreeMap<i32, Vec<(FreeVector, Input)>>,
    processed: usize,
    bound: Option<u32>,
    kernel: Vec<FreeVector>,
    minimal: Vec<usize>,
}

impl Engine {
    fn new(field: PrimeField, order: TermOrder, twists: Vec<i32>, limits: GbLimits, bound: Option<u32>) -> Self {
        let n = twists.len();
        Self {
            field,
            order,
            twists,
            limits,
            vecs: Vec::new(),
            meta: Vec::new(),
            index: Divisors::default(),
            pairs: vec![Vec::new(); n],
            pair_degrees: BTreeMap::new(),
            inputs: BTreeMap::new(),
            processed: 0,
            bound,
            kernel: Vec::new(),
            minimal: Vec::new(),
        }
    }

    fn check_input(&self, v: &FreeVector) -> Result<Option<i32>> {
        if let Some(c) = v.max_component() {
            if c as usize >= self.twists.len() {
                return Err(Error::Inadmissible(format!("component {c} outside rank {}", self.twists.len())));
            }
        }
        if !v.is_homogeneous(&self.twists) {
            return Err(Error::Inhomogeneous("vector is not homogeneous for the given twists".into()));
        }
        Ok(v.degree(&self.twists))
    }

    fn add_input(&mut self, v: FreeVector, kind: Input) -> Result<()> {
        if let Some(d) = self.check_input(&v)? {
            self.inputs.entry(d).or_default().push((v, kind));
        }
        Ok(())
    }

    fn reduce(&self, v: &FreeVector) -> FreeVector {
        let mode = match self.bound {
            Some(b) => Mode::TopBelow(b),
            None => Mode::Full,
        };
        reduce_with(&self.field, self.order, &self.vecs, &self.index, v, mode)
    }

    /// Stores a reduced nonzero vector, or routes it to the kernel output.
    fn absorb(&mut self, mut r: FreeVector) -> bool {
        let lead = match r.lead() {
            None => return false,
            Some(t) => *t,
        };
        if let Some(b) = self.bound {
            if lead.comp >= b {
                self.kernel.push(r);
                return true;
            }
        }
        r.make_monic(&self.field);
        let pure = r.min_component() == r.max_component();
        let k = self.vecs.len();
        self.update_pairs(k, lead.comp, lead.mono, pure);
        self.index.push(lead.comp, lead.mono, k);
        self.vecs.push(r);
        self.meta.push(Elem { lead: lead.mono, pure });
        true
    }

    /// Gebauer–Möller update for a new element `k`.
    fn update_pairs(&mut self, k: usize, comp: u32, lead: Monomial, pure: bool) {
        let c = comp as usize;
        let tw = self.twists[c];
        let meta = &self.meta;

        // old pairs made redundant by the new lead
        let old = std::mem::take(&mut self.pairs[c]);
        let mut kept = Vec::with_capacity(old.len());
        for p in old {
            if lead.divides(&p.lcm) && meta[p.i].lead.lcm(&lead) != p.lcm && meta[p.j].lead.lcm(&lead) != p.lcm {
                Self::dec(&mut self.pair_degrees, p.deg);
            } else {
                kept.push(p);
            }
        }

        let mut fresh: Vec<(Pair, bool)> = Vec::new();
        let same: &[(Monomial, usize)] = self.index.by_comp.get(c).map(|v| v.as_slice()).unwrap_or(&[]);
        for &(_, i) in same {
            let e = &meta[i];
            let lcm = e.lead.lcm(&lead);
            let coprime = pure && e.pure && e.lead.is_coprime(&lead);
            fresh.push((Pair { i, j: k, lcm, deg: lcm.degree() as i32 + tw }, coprime));
        }
        // chain criterion among the new pairs
        let mut survivors: Vec<(Pair, bool)> = Vec::new();
        for (idx, (p, cp)) in fresh.iter().enumerate() {
            let dominated = fresh
                .iter()
                .enumerate()
                .any(|(o, (q, _))| o != idx && q.lcm.divides(&p.lcm) && q.lcm != p.lcm);
            if !dominated {
                survivors.push((*p, *cp));
            }
        }
        // equal lcms: keep one, or none if any is coprime
        survivors.sort_by(|a, b| self.order.cmp(&a.0.lcm, &b.0.lcm).then(a.0.i.cmp(&b.0.i)));
        let mut s = 0;
        while s < survivors.len() {
            let mut e = s;
            let mut any_coprime = false;
            while e < survivors.len() && survivors[e].0.lcm == survivors[s].0.lcm {
                any_coprime |= survivors[e].1;
                e += 1;
            }
            if !any_coprime {
                let p = survivors[s].0;
                *self.pair_degrees.entry(p.deg).or_insert(0) += 1;
                kept.push(p);
            }
            s = e;
        }
        self.pairs[c] = kept;
    }

    fn dec(map: &mut BTreeMap<i32, usize>, d: i32) {
        if let Some(n) = map.get_mut(&d) {
            *n -= 1;
            if *n == 0 {
                map.remove(&d);
            }
        }
    }

    fn spoly(&self, p: &Pair) -> FreeVector {
        let qi = self.meta[p.i].lead.quotient_of(&p.lcm).expect("lcm");
        let qj = self.meta[p.j].lead.quotient_of(&p.lcm).expect("lcm");
        let a = self.vecs[p.i].mul_term(&self.field, &qi, 1);
        a.add_scaled(&self.field, self.order, self.field.neg(1), &qj, &self.vecs[p.j])
    }

    /// Runs until no work remains; with `inputs_only`, stops once every input is consumed.
    fn run(&mut self, inputs_only: bool) -> Result<()> {
        loop {
            let next_pair = self.pair_degrees.keys().next().copied();
            let next_input = self.inputs.keys().next().copied();
            let d = match (next_pair, next_input) {
                (_, None) if inputs_only => break,
                (None, None) => break,
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
            };
            if d > self.limits.max_degree {
                return Err(Error::ResourceLimit(format!("degree {d} exceeds cap {}", self.limits.max_degree)));
            }
            if next_pair == Some(d) {
                self.pair_degrees.remove(&d);
                let mut batch = Vec::new();
                for list in self.pairs.iter_mut() {
                    let (now, later): (Vec<Pair>, Vec<Pair>) = list.drain(..).partition(|p| p.deg == d);
                    *list = later;
                    batch.extend(now);
                }
                self.processed += batch.len();
                if self.processed > self.limits.max_pairs {
                    return Err(Error::ResourceLimit(format!(
                        "more than {} S-pairs (raise CMLAB_MAX_PAIRS)",
                        self.limits.max_pairs
                    )));
                }
                for p in batch {
                    let s = self.spoly(&p);
                    let r = self.reduce(&s);
                    self.absorb(r);
                }
            }
            if next_input == Some(d) {
                let mut items = self.inputs.remove(&d).unwrap_or_default();
                // base inputs before countable ones, stable otherwise
                items.sort_by_key(|(_, k)| matches!(k, Input::Countable(_)));
                for (v, kind) in items {
                    let r = self.reduce(&v);
                    let nonzero = self.absorb(r.clone());
                    if let Input::Countable(i) = kind {
                        let landed_in_kernel = self.bound.is_some_and(|b| r.lead().is_some_and(|t| t.comp >= b));
                        if nonzero && !landed_in_kernel {
                            self.minimal.push(i);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn into_reduced(self) -> GroebnerBasis {
        let field = self.field;
        let order = self.order;
        // minimal leads
        let mut keep: Vec<usize> = Vec::new();
        for list in &self.index.by_comp {
            for &(lead, i) in list {
                let redundant = list.iter().any(|&(m, j)| j != i && m.divides(&lead) && (m != lead || j < i));
                if !redundant {
                    keep.push(i);
                }
            }
        }
        keep.sort_unstable();
        let mut basis: Vec<FreeVector> = keep.iter().map(|&i| self.vecs[i].clone()).collect();
        let mut index = Divisors::default();
        for (i, g) in basis.iter().enumerate() {
            let t = g.lead().expect("nonzero");
            index.push(t.comp, t.mono, i);
        }
        // tail reduction
        let mut reduced = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let g = &basis[i];
            let head = g.terms()[0];
            let tail = FreeVector::from_sorted_unchecked(g.terms()[1..].to_vec());
            let nf = reduce_with(&field, order, &basis, &index, &tail, Mode::Full);
            let mut t = vec![head];
            t.extend_from_slice(nf.terms());
            reduced.push(FreeVector::from_sorted_unchecked(t));
        }
        basis = reduced;
        basis.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            order.cmp_pot(y.comp, &y.mono, x.comp, &x.mono)
        });
        GroebnerBasis::from_elems(field, order, self.twists, basis)
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger(
    field: &PrimeField,
    order: TermOrder,
    twists: &[i32],
    gens: &[FreeVector],
    limits: GbLimits,
) -> Result<GroebnerBasis> {
    let mut e = Engine::new(*field, order, twists.to_vec(), limits, None);
    for g in gens {
        let g = if order == TermOrder::Grevlex { g.clone() } else { g.reorder(field, order) };
        e.add_input(g, Input::Base)?;
    }
    e.run(false)?;
    Ok(e.into_reduced())
}

/// Indices of a minimal generating subset of `candidates` modulo the submodule
/// generated by `base`. Candidates are considered degree by degree in input order.
pub fn mingens(
    field: &PrimeField,
    twists: &[i32],
    candidates: &[FreeVector],
    base: &[FreeVector],
    limits: GbLimits,
) -> Result<Vec<usize>> {
    let mut e = Engine::new(*field, TermOrder::Grevlex, twists.to_vec(), limits, None);
    for b in base {
        e.add_input(b.clone(), Input::Base)?;
    }
    for (i, c) in candidates.iter().enumerate() {
        e.add_input(c.clone(), Input::Countable(i))?;
    }
    e.run(true)?;
    let mut m = e.minimal;
    m.sort_unstable();
    Ok(m)
}

/// Generators of the kernel of `S^g -> S^r / U`, `e_j -> columns[j]`.
///
/// `col_degrees[j]` is the degree of `e_j`; `relations` generate `U`. The
/// result lives in `S^g` and is usually far from minimal.
pub fn kernel(
    field: &PrimeField,
    target_twists: &[i32],
    columns: &[FreeVector],
    col_degrees: &[i32],
    relations: &[FreeVector],
    limits: GbLimits,
) -> Result<Vec<FreeVector>> {
    let r = target_twists.len();
    let g = columns.len();
    assert_eq!(g, col_degrees.len());
    let mut twists = target_twists.to_vec();
    twists.extend_from_slice(col_degrees);
    let mut e = Engine::new(*field, TermOrder::Grevlex, twists, limits, Some(r as u32));
    for u in relations {
        e.add_input(u.clone(), Input::Base)?;
    }
    for (j, c) in columns.iter().enumerate() {
        if let Some(d) = c.degree(target_twists) {
            if d != col_degrees[j] {
                return Err(Error::Inhomogeneous(format!("column {j} has degree {d}, expected {}", col_degrees[j])));
            }
        }
        let mut terms = c.terms().to_vec();
        terms.push(Term { comp: (r + j) as u32, mono: Monomial::one(), coeff: 1 });
        e.add_input(FreeVector::from_sorted_unchecked(terms), Input::Base)?;
    }
    e.run(false)?;
    Ok(e.kernel.into_iter().map(|v| v.shift_components(-(r as i64))).collect())
}

/// Syzygy module of a Gröbner basis: columns generating all relations
/// `sum a_i g_i = 0`, over the free module with one generator per element.
pub fn syzygy_matrix(gb: &GroebnerBasis, limits: GbLimits) -> Result<Vec<FreeVector>> {
    let degrees: Vec<i32> = gb.elements().iter().map(|g| g.degree(gb.twists()).unwrap()).collect();
    let raw = kernel(gb.field(), gb.twists(), gb.elements(), &degrees, &[], limits)?;
    let keep = mingens(gb.field(), &degrees, &raw, &[], limits)?;
    Ok(keep.into_iter().map(|i| raw[i].clone()).collect())
}

/// `sum_j a_j * columns[j]` for a vector `a` of coefficients in `S^g`.
pub fn apply_columns(field: &PrimeField, a: &FreeVector, columns: &[FreeVector]) -> FreeVector {
    let mut acc = FreeVector::zero();
    for t in a.terms() {
        acc = acc.add_scaled(field, TermOrder::Grevlex, t.coeff, &t.mono, &columns[t.comp as usize]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn polys(f: &PrimeField, vars: &[String], order: TermOrder, src: &[&str]) -> Vec<FreeVector> {
        src.iter().map(|s| parse_polynomial(f, vars, s).unwrap().to_vector(f, order, 0)).collect()
    }

    fn show(f: &PrimeField, vars: &[String], v: &FreeVector) -> String {
        let p = crate::algebra::Polynomial::from_terms(f, v.terms().iter().map(|t| (t.mono, t.coeff)).collect());
        p.format(f, vars)
    }

    #[test]
    fn normal_form_examples() {
        let f = PrimeField::default();
        let v = names(&["x", "y"]);
        let g = polys(&f, &v, TermOrder::Grevlex, &["x"]);
        let x2 = polys(&f, &v, TermOrder::Grevlex, &["x^2"]);
        assert!(normal_form(&f, TermOrder::Grevlex, &x2[0], &g).is_zero());
        let y = polys(&f, &v, TermOrder::Grevlex, &["y"]);
        assert_eq!(normal_form(&f, TermOrder::Grevlex, &y[0], &g), y[0]);
        let h = polys(&f, &v, TermOrder::Grevlex, &["x^2 - y"]);
        let p = polys(&f, &v, TermOrder::Grevlex, &["x^2 + y"]);
        let r = normal_form(&f, TermOrder::Grevlex, &p[0], &h);
        assert_eq!(show(&f, &v, &r), "2*y");
    }

    #[test]
    fn buchberger_examples() {
        let f = PrimeField::default();
        let v = names(&["x", "y"]);
        let gens = polys(&f, &v, TermOrder::Grevlex, &["x^2 + y^2", "x*y"]);
        let gb = buchberger(&f, TermOrder::Grevlex, &[0], &gens, GbLimits::default()).unwrap();
        let shown: Vec<String> = gb.elements().iter().map(|g| show(&f, &v, g)).collect();
        assert_eq!(shown, vec!["y^3", "x^2 + y^2", "x*y"]);

        let v3 = names(&["x", "y", "z"]);
        let gens = polys(&f, &v3, TermOrder::Lex, &["x - y", "y - z"]);
        let gb = buchberger(&f, TermOrder::Lex, &[0], &gens, GbLimits::default()).unwrap();
        let mut shown: Vec<String> = gb
            .elements()
            .iter()
            .map(|g| {
                let mut t: Vec<_> = g.terms().iter().map(|t| (t.mono, t.coeff)).collect();
                t.sort_by(|a, b| b.0.cmp_lex(&a.0));
                crate::algebra::Polynomial::from_terms(&f, t).format(&f, &v3)
            })
            .collect();
        shown.sort();
        assert_eq!(shown, vec!["x - z", "y - z"]);
    }

    #[test]
    fn syzygy_examples() {
        let f = PrimeField::default();
        let v = names(&["x", "y"]);
        let gens = polys(&f, &v, TermOrder::Grevlex, &["x", "y"]);
        let gb = buchberger(&f, TermOrder::Grevlex, &[0], &gens, GbLimits::default()).unwrap();
        let syz = syzygy_matrix(&gb, GbLimits::default()).unwrap();
        assert_eq!(syz.len(), 1);
        assert!(apply_columns(&f, &syz[0], gb.elements()).is_zero());
        assert_eq!(syz[0].len(), 2);

        let gens = polys(&f, &v, TermOrder::Grevlex, &["x^2"]);
        let gb = buchberger(&f, TermOrder::Grevlex, &[0], &gens, GbLimits::default()).unwrap();
        assert!(syzygy_matrix(&gb, GbLimits::default()).unwrap().is_empty());
    }

    #[test]
    fn kernel_modulo_relations() {
        // x acting on k[x]/(x^2): kernel of 1 -> x is generated by x
        let f = PrimeField::default();
        let v = names(&["x"]);
        let col = polys(&f, &v, TermOrder::Grevlex, &["x"]);
        let rel = polys(&f, &v, TermOrder::Grevlex, &["x^2"]);
        let k = kernel(&f, &[0], &col, &[1], &rel, GbLimits::default()).unwrap();
        let keep = mingens(&f, &[1], &k, &rel, GbLimits::default()).unwrap();
        assert_eq!(keep.len(), 1);
        let mut g = k[keep[0]].clone();
        g.make_monic(&f);
        assert_eq!(show(&f, &v, &g), "x");
    }

    #[test]
    fn pair_cap_is_enforced() {
        let f = PrimeField::default();
        let v = names(&["x", "y", "z"]);
        let gens = polys(&f, &v, TermOrder::Grevlex, &["x^3 + y^2*z", "x*y*z - z^3", "y^3 - x^2*z"]);
        let limits = GbLimits { max_pairs: 1, max_degree: 100, ..GbLimits::default() };
        let err = buchberger(&f, TermOrder::Grevlex, &[0], &gens, limits).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }
}
