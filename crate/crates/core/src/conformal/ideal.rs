//! Ideal closure and derived subalgebra inside a ∂-truncated copy of the
//! algebra: elements with ∂-power at most `cap`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};

use super::{ConformalAlgebra, Element};

/// A subspace of `{x : max ∂-power of x ≤ cap}`. Columns are ordered with
/// the highest ∂-power first, so rows with a low pivot power span exactly
/// the intersection with lower truncations.
#[derive(Clone, Debug)]
pub struct Subspace {
    rank: usize,
    cap: u32,
    echelon: Echelon,
    pub saturates: bool,
}

impl Subspace {
    fn empty(rank: usize, cap: u32) -> Self {
        Subspace {
            rank,
            cap,
            echelon: Echelon::new(),
            saturates: false,
        }
    }

    /// ℂ[∂]-span of `gens`, truncated at `cap`.
    pub fn generated(rank: usize, cap: u32, gens: &[Element]) -> Self {
        let mut s = Self::empty(rank, cap);
        for g in gens {
            let mut x = g.clone();
            while x.max_dpow() <= cap && !x.is_zero() {
                s.insert(&x);
                x = x.partial(1);
            }
        }
        s.finish();
        s
    }

    fn col(&self, k: usize, t: u32) -> usize {
        (self.cap - t) as usize * self.rank + k
    }

    fn to_vec(&self, x: &Element) -> SparseVec {
        x.terms()
            .iter()
            .map(|(&(k, t), c)| (self.col(k, t), c.clone()))
            .collect()
    }

    fn to_element(&self, v: &SparseVec) -> Element {
        Element::from_terms(v.iter().map(|(&col, c)| {
            let t = self.cap - (col / self.rank) as u32;
            ((col % self.rank, t), c.clone())
        }))
    }

    fn insert(&mut self, x: &Element) -> bool {
        let v = self.to_vec(x);
        self.echelon.insert(v).is_some()
    }

    fn finish(&mut self) {
        self.echelon.make_reduced();
        self.saturates = self.dim() == self.ambient_dim();
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rank * (self.cap as usize + 1)
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.max_dpow() <= self.cap && self.echelon.contains(&self.to_vec(x))
    }

    /// Reduced echelon basis.
    pub fn basis(&self) -> Vec<Element> {
        self.echelon.rows().map(|v| self.to_element(v)).collect()
    }

    /// Intersection with `{∂-power ≤ cap}`: the rows whose pivot lies there.
    fn restrict(&self, cap: u32) -> Subspace {
        let mut out = Self::empty(self.rank, cap);
        for (p, v) in self.echelon.pivots().zip(self.echelon.rows()) {
            if self.pivot_power(p) <= cap {
                out.insert(&self.to_element(v));
            }
        }
        out.finish();
        out
    }

    fn pivot_power(&self, pivot: usize) -> u32 {
        self.cap - (pivot / self.rank) as u32
    }

    /// `profile[t] = dim (S ∩ {∂-power ≤ t})`.
    pub fn profile(&self) -> Vec<usize> {
        let mut out = vec![0; self.cap as usize + 1];
        for p in self.echelon.pivots() {
            out[self.pivot_power(p) as usize] += 1;
        }
        for t in 1..out.len() {
            out[t] += out[t - 1];
        }
        out
    }
}

/// Whether two subspaces of the same truncation coincide.
pub fn same_span(a: &Subspace, b: &Subspace) -> bool {
    a.rank == b.rank
        && a.cap == b.cap
        && a.dim() == b.dim()
        && a.basis().iter().all(|x| b.contains(x))
}

fn closure_run(a: &ConformalAlgebra, seeds: &[Element], cap: u32) -> Subspace {
    let mut space = Subspace::empty(a.rank(), cap);
    let mut queue: VecDeque<Element> = seeds.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if v.is_zero() || v.max_dpow() > cap || !space.insert(&v) {
            continue;
        }
        queue.push_back(v.partial(1));
        for g in 0..a.rank() {
            for x in a.bracket(&Element::gen(g), &v).coeffs().values() {
                queue.push_back(x.clone());
            }
        }
    }
    space.finish();
    space
}

fn check_stable(name: &str, low: &Subspace, high: &Subspace) -> Result<()> {
    let p = low.profile();
    let q = high.profile();
    if p[..] != q[..p.len()] {
        return Err(Error::Cap(format!(
            "{name}: closure profile {p:?} at cap {} changes to {:?} at cap {}",
            low.cap,
            &q[..p.len()],
            high.cap
        )));
    }
    Ok(())
}

fn check_cap(a: &ConformalAlgebra, seeds: &[Element], cap: u32) -> Result<()> {
    let need = seeds
        .iter()
        .map(Element::max_dpow)
        .chain([a.max_dpow()])
        .max()
        .unwrap_or(0);
    if cap < need {
        return Err(Error::Cap(format!(
            "cap {cap} below the ∂-degree {need} of the input"
        )));
    }
    Ok(())
}

/// Smallest subspace of the truncation containing `seeds`, stable under ∂
/// and under every `g_(n)` for generators `g`. Products leaving the
/// truncation are lost, so the top layer of a run can come out short: the
/// closure is run at `cap + 1` and `cap + 2`, cut back to `cap`, and the two
/// results must coincide.
pub fn ideal_closure(a: &ConformalAlgebra, seeds: &[Element], cap: u32) -> Result<Subspace> {
    for s in seeds {
        a.validate(s)?;
    }
    check_cap(a, seeds, cap)?;
    let low = closure_run(a, seeds, cap + 1).restrict(cap);
    let high = closure_run(a, seeds, cap + 2).restrict(cap);
    if !same_span(&low, &high) {
        return Err(Error::Cap(format!(
            "{}: closure profile {:?} at cap {} changes to {:?} at cap {}",
            a.name(),
            low.profile(),
            cap + 1,
            high.profile(),
            cap + 2
        )));
    }
    Ok(low)
}

#[derive(Clone, Debug)]
pub struct DerivedSubalgebra {
    pub subspace: Subspace,
    /// Free ℂ[∂]-generators, in order of ∂-power.
    pub generators: Vec<Element>,
}

fn products(a: &ConformalAlgebra) -> Vec<Element> {
    let r = a.rank();
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            out.extend(a.table(i, j).coeffs().values().cloned());
        }
    }
    out
}

/// ℂ[∂]-submodule spanned by all n-th products of generators.
pub fn derived_subalgebra(a: &ConformalAlgebra, cap: u32) -> Result<DerivedSubalgebra> {
    check_cap(a, &[], cap)?;
    let prods = products(a);
    let low = Subspace::generated(a.rank(), cap, &prods);
    let high = Subspace::generated(a.rank(), cap + 1, &prods);
    check_stable(a.name(), &low, &high)?;

    // Layer by ∂-power: a basis row is a new free generator when it is not
    // already in the ∂-span of the generators found so far.
    let mut gens: Vec<Element> = Vec::new();
    let mut span = Subspace::empty(a.rank(), cap);
    let mut rows: Vec<(u32, Element)> = low
        .echelon
        .pivots()
        .zip(low.basis())
        .map(|(p, x)| (low.pivot_power(p), x))
        .collect();
    rows.sort_by_key(|(t, _)| *t);
    for (_, x) in rows {
        if span.contains(&x) {
            continue;
        }
        let mut y = x.clone();
        while y.max_dpow() <= cap {
            span.insert(&y);
            y = y.partial(1);
        }
        gens.push(x);
    }
    Ok(DerivedSubalgebra {
        subspace: low,
        generators: gens,
    })
}
