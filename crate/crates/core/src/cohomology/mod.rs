//! Reduced 2-cocycles with values in a trivial even one-dimensional module,
//! coboundaries and H² with a λ-degree cap.

mod fixture;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::conformal::{ConformalAlgebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, axpy, Echelon, SparseVec};
use crate::scalar::{binomial, format_scalar, int, sign_pow, Scalar};

pub use fixture::{
    builtin_fixtures, fixture_for, load_fixture, normalization_resolve, resolve, verify_fixture,
    CocycleTable, Coeff, Fixture, FixtureBasis, FixtureEntry, FixtureFamily, FixtureReport,
    ImageTerm, Normalization, NormalizationOutcome, ResolvedFixture,
};

/// Scalar polynomial in λ, as λ-power → coefficient.
pub type ScalarPoly = BTreeMap<u32, Scalar>;

/// Scalar polynomial in (λ, μ).
pub type BivarScalar = BTreeMap<(u32, u32), Scalar>;

pub fn format_poly(p: &ScalarPoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (&n, c)) in p.iter().rev().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        match n {
            0 => write!(out, "{}", format_scalar(c)),
            1 => write!(out, "{}*λ", format_scalar(c)),
            _ => write!(out, "{}*λ^{n}", format_scalar(c)),
        }
        .expect("write to string");
    }
    out
}

pub fn format_bivar_scalar(p: &BivarScalar) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter()
        .rev()
        .map(|(&(m, n), c)| format!("{}*λ^{m}μ^{n}", format_scalar(c)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A reduced 2-cochain `α_λ(e_i, e_j)` on generator pairs. Missing pairs
/// are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cocycle2 {
    pub entries: BTreeMap<(usize, usize), ScalarPoly>,
}

impl Cocycle2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn get(&self, i: usize, j: usize) -> ScalarPoly {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, n: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let p = self.entries.entry((i, j)).or_default();
        let slot = p.entry(n).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            p.remove(&n);
            if p.is_empty() {
                self.entries.remove(&(i, j));
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (&(i, j), p) in &self.entries {
            for (&n, v) in p {
                out.add_term(i, j, n, v * c);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), p) in &other.entries {
            for (&n, v) in p {
                out.add_term(i, j, n, v.clone());
            }
        }
        out
    }

    /// Fills each missing ordered pair from its transpose by
    /// `α_λ(b, a) = −(−1)^{p(a)p(b)} α_{−λ}(a, b)`. Fails if both orders
    /// are given inconsistently.
    pub fn skew_completed(&self, alg: &ConformalAlgebra) -> Result<Self> {
        let mut out = self.clone();
        for (&(i, j), p) in &self.entries {
            let want = skew_transpose(alg, i, j, p);
            match self.entries.get(&(j, i)) {
                Some(q) if *q != want => {
                    return Err(Error::Fixture(format!(
                        "entries on ({}, {}) and ({}, {}) violate skew-symmetry",
                        alg.generator(i).id,
                        alg.generator(j).id,
                        alg.generator(j).id,
                        alg.generator(i).id
                    )))
                }
                Some(_) => {}
                None => {
                    out.entries.insert((j, i), want);
                }
            }
        }
        Ok(out)
    }

    /// `α_λ(x, y)` on arbitrary elements, using `α_λ(∂x, y) = −λ α_λ(x, y)`
    /// and `α_λ(x, ∂y) = λ α_λ(x, y)`.
    pub fn eval(&self, x: &Element, y: &Element) -> ScalarPoly {
        let mut out = ScalarPoly::new();
        for (&(i, s), c) in x.terms() {
            for (&(j, t), d) in y.terms() {
                let sign = sign_pow(s);
                for (&n, v) in self.entries.get(&(i, j)).into_iter().flatten() {
                    let slot = out.entry(n + s + t).or_insert_with(Scalar::zero);
                    *slot += c * d * v * &sign;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn format(&self, alg: &ConformalAlgebra) -> String {
        let mut parts = Vec::new();
        for (&(i, j), p) in &self.entries {
            parts.push(format!(
                "α({}, {}) = {}",
                alg.generator(i).id,
                alg.generator(j).id,
                format_poly(p)
            ));
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join("; ")
    }
}

fn skew_transpose(alg: &ConformalAlgebra, i: usize, j: usize, p: &ScalarPoly) -> ScalarPoly {
    let s = -alg.parity(i).koszul(alg.parity(j));
    p.iter().map(|(&n, c)| (n, c * &s * sign_pow(n))).collect()
}

/// `α(e_i, e_j)` with coefficients that are linear forms on some unknowns.
type FormPoly = Vec<(u32, SparseVec)>;

/// Cocycle-equation residual of a triple as linear forms:
/// `α_λ(a, [b μ c]) − α_{λ+μ}([a λ b], c) − (−1)^{p(a)p(b)} α_μ(b, [a λ c])`.
fn triple_forms(
    alg: &ConformalAlgebra,
    a: usize,
    b: usize,
    c: usize,
    entry: &(impl Fn(usize, usize) -> FormPoly + Sync),
) -> BTreeMap<(u32, u32), SparseVec> {
    let mut out: BTreeMap<(u32, u32), SparseVec> = BTreeMap::new();
    let mut add = |m: u32, n: u32, v: &SparseVec, c: &Scalar| {
        axpy(out.entry((m, n)).or_default(), c, v);
    };
    for (&n, x) in alg.table(b, c).coeffs() {
        for (&(k, t), coef) in x.terms() {
            for (p, v) in entry(a, k) {
                add(p + t, n, &v, coef);
            }
        }
    }
    for (&n, x) in alg.table(a, b).coeffs() {
        for (&(k, t), coef) in x.terms() {
            let base = -coef * sign_pow(t);
            for (p, v) in entry(k, c) {
                let d = p + t;
                for q in 0..=d {
                    add(n + q, d - q, &v, &(&base * binomial(d, q)));
                }
            }
        }
    }
    let sign = -alg.parity(a).koszul(alg.parity(b));
    for (&n, x) in alg.table(a, c).coeffs() {
        for (&(k, t), coef) in x.terms() {
            for (p, v) in entry(b, k) {
                add(n, p + t, &v, &(coef * &sign));
            }
        }
    }
    out.retain(|_, v| {
        v.retain(|_, c| !c.is_zero());
        !v.is_empty()
    });
    out
}

#[derive(Clone, Debug, Default)]
pub struct CocycleResidual {
    /// `(i, j, α(e_j, e_i) + (−1)^{p_i p_j} α_{−λ}(e_i, e_j))` where nonzero.
    pub skew: Vec<(usize, usize, ScalarPoly)>,
    /// `(a, b, c, residual)` where nonzero.
    pub triples: Vec<(usize, usize, usize, BivarScalar)>,
    pub triples_checked: usize,
}

impl CocycleResidual {
    pub fn is_zero(&self) -> bool {
        self.skew.is_empty() && self.triples.is_empty()
    }
}

fn scalar_entry(alpha: &Cocycle2) -> impl Fn(usize, usize) -> FormPoly + Sync + '_ {
    move |i, j| {
        alpha
            .get(i, j)
            .into_iter()
            .map(|(n, c)| (n, SparseVec::from([(0, c)])))
            .collect()
    }
}

/// Skew residual per pair and cocycle residual per generator triple.
pub fn cocycle_residual(alg: &ConformalAlgebra, alpha: &Cocycle2) -> CocycleResidual {
    let r = alg.rank();
    let mut skew = Vec::new();
    for i in 0..r {
        for j in i..r {
            let mut res = alpha.get(j, i);
            for (n, c) in skew_transpose(alg, i, j, &alpha.get(i, j)) {
                let slot = res.entry(n).or_insert_with(Scalar::zero);
                *slot -= c;
            }
            res.retain(|_, c| !c.is_zero());
            if !res.is_empty() {
                skew.push((i, j, res));
            }
        }
    }
    let entry = scalar_entry(alpha);
    let triples_list: Vec<(usize, usize, usize)> = (0..r)
        .flat_map(|a| (0..r).flat_map(move |b| (0..r).map(move |c| (a, b, c))))
        .collect();
    let triples = triples_list
        .par_iter()
        .filter_map(|&(a, b, c)| {
            let forms = triple_forms(alg, a, b, c, &entry);
            let res: BivarScalar = forms
                .into_iter()
                .filter_map(|(k, v)| v.get(&0).map(|x| (k, x.clone())))
                .collect();
            (!res.is_empty()).then_some((a, b, c, res))
        })
        .collect();
    CocycleResidual {
        skew,
        triples,
        triples_checked: triples_list.len(),
    }
}

/// Layout of the unknowns `α_p(e_i, e_j)`, `i ≤ j`, same parity, `p ≤ cap(i, j)`.
struct Unknowns {
    index: BTreeMap<(usize, usize, u32), usize>,
    keys: Vec<(usize, usize, u32)>,
}

impl Unknowns {
    fn new(alg: &ConformalAlgebra, caps: &dyn Fn(usize, usize) -> u32) -> Self {
        let r = alg.rank();
        let mut index = BTreeMap::new();
        let mut keys = Vec::new();
        for i in 0..r {
            for j in i..r {
                if alg.parity(i) != alg.parity(j) {
                    continue;
                }
                for p in 0..=caps(i, j) {
                    // α_λ(e, e) = −(−1)^{p(e)} α_{−λ}(e, e)
                    if i == j && (p % 2 == 1) == alg.parity(i).is_odd() {
                        continue;
                    }
                    index.insert((i, j, p), keys.len());
                    keys.push((i, j, p));
                }
            }
        }
        Unknowns { index, keys }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn entry(&self, alg: &ConformalAlgebra, i: usize, j: usize) -> FormPoly {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let flip = -alg.parity(i).koszul(alg.parity(j));
        self.index
            .range((lo, hi, 0)..=(lo, hi, u32::MAX))
            .map(|(&(_, _, p), &v)| {
                let c = if i <= j { int(1) } else { &flip * sign_pow(p) };
                (p, SparseVec::from([(v, c)]))
            })
            .collect()
    }

    fn to_cocycle(&self, alg: &ConformalAlgebra, v: &SparseVec) -> Cocycle2 {
        let mut out = Cocycle2::zero();
        for (&k, c) in v {
            let (i, j, p) = self.keys[k];
            out.add_term(i, j, p, c.clone());
            if i != j {
                let s = -alg.parity(i).koszul(alg.parity(j)) * sign_pow(p);
                out.add_term(j, i, p, c * s);
            }
        }
        out
    }

    fn from_cocycle(&self, alpha: &Cocycle2) -> Option<SparseVec> {
        let mut v = SparseVec::new();
        for (&(i, j), p) in &alpha.entries {
            if i > j {
                continue;
            }
            for (&n, c) in p {
                add_entry(&mut v, *self.index.get(&(i, j, n))?, c.clone());
            }
        }
        Some(v)
    }
}

/// Change-of-splitting cocycles `α^ε_λ(e_i, e_j) = ε([e_i λ e_j])` with `ε`
/// killing `∂`-multiples, one for each even generator.
pub fn coboundary_space(alg: &ConformalAlgebra) -> Vec<Cocycle2> {
    let r = alg.rank();
    let mut out = Vec::new();
    for k in (0..r).filter(|&k| !alg.parity(k).is_odd()) {
        let mut alpha = Cocycle2::zero();
        for i in 0..r {
            for j in 0..r {
                for (&n, x) in alg.table(i, j).coeffs() {
                    alpha.add_term(i, j, n, x.coeff(k, 0));
                }
            }
        }
        if !alpha.is_zero() {
            out.push(alpha);
        }
    }
    out
}

/// Degree cap for the H² solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeCap {
    /// Per pair `⌈Δ_i + Δ_j⌉` from the weights, 4 when a weight is missing,
    /// with stability re-runs at +1 and +2.
    Auto,
    Fixed(u32),
}

#[derive(Clone, Debug)]
pub struct H2Result {
    pub dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub unknowns: usize,
    pub representatives: Vec<Cocycle2>,
    /// `(extra degree, dimension)` of each run.
    pub runs: Vec<(u32, usize)>,
}

fn auto_cap(alg: &ConformalAlgebra, i: usize, j: usize) -> u32 {
    match (&alg.generator(i).weight, &alg.generator(j).weight) {
        (Some(a), Some(b)) => {
            let s = (a + b).ceil();
            if s.is_negative() {
                0
            } else {
                s.to_integer().try_into().unwrap_or(u32::MAX)
            }
        }
        _ => 4,
    }
}

fn table_degree(alg: &ConformalAlgebra, i: usize, j: usize) -> u32 {
    alg.table(i, j)
        .degree()
        .unwrap_or(0)
        .max(alg.table(j, i).degree().unwrap_or(0))
}

fn solve(alg: &ConformalAlgebra, caps: &(dyn Fn(usize, usize) -> u32 + Sync)) -> H2Result {
    let unknowns = Unknowns::new(alg, caps);
    let r = alg.rank();
    // (a, b, c) and (b, a, c) give the same equations once α is skew
    let triples: Vec<(usize, usize, usize)> = (0..r)
        .flat_map(|a| (a..r).flat_map(move |b| (0..r).map(move |c| (a, b, c))))
        .filter(|&(a, b, c)| !(alg.parity(a) + alg.parity(b) + alg.parity(c)).is_odd())
        .collect();
    let entry = |i: usize, j: usize| unknowns.entry(alg, i, j);
    let rows: Vec<Vec<SparseVec>> = triples
        .par_chunks(64)
        .map(|chunk| {
            let mut local = Echelon::new();
            for &(a, b, c) in chunk {
                for (_, v) in triple_forms(alg, a, b, c, &entry) {
                    local.insert(v);
                }
            }
            local.rows().cloned().collect()
        })
        .collect();
    let mut system = Echelon::new();
    for v in rows.into_iter().flatten() {
        system.insert(v);
    }
    let null = system.null_space(unknowns.len());

    let mut cob = Echelon::new();
    for alpha in coboundary_space(alg) {
        if let Some(v) = unknowns.from_cocycle(&alpha) {
            cob.insert(v);
        }
    }
    let coboundary_dim = cob.rank();
    let mut representatives = Vec::new();
    for v in &null {
        if cob.insert(v.clone()).is_some() {
            representatives.push(unknowns.to_cocycle(alg, v));
        }
    }
    H2Result {
        dim: representatives.len(),
        cocycle_dim: null.len(),
        coboundary_dim,
        unknowns: unknowns.len(),
        representatives,
        runs: Vec::new(),
    }
}

/// dim H² of the reduced complex with trivial even coefficients.
pub fn h2_conformal(alg: &ConformalAlgebra, cap: DegreeCap) -> Result<H2Result> {
    match cap {
        DegreeCap::Fixed(n) => {
            let need = alg.max_lambda_degree();
            if n < need {
                return Err(Error::Cap(format!(
                    "λ-degree cap {n} below the bracket degree {need}"
                )));
            }
            let mut res = solve(alg, &|_, _| n);
            res.runs = vec![(0, res.dim)];
            Ok(res)
        }
        DegreeCap::Auto => {
            let mut first: Option<H2Result> = None;
            let mut runs = Vec::new();
            for extra in 0..=2u32 {
                let caps = move |i: usize, j: usize| {
                    auto_cap(alg, i, j).max(table_degree(alg, i, j)) + extra
                };
                let res = solve(alg, &caps);
                runs.push((extra, res.dim));
                if first.is_none() {
                    first = Some(res);
                }
            }
            let mut res = first.expect("three runs");
            if runs.iter().any(|&(_, d)| d != res.dim) {
                let detail: Vec<String> = runs.iter().map(|(e, d)| format!("+{e}: {d}")).collect();
                return Err(Error::CapInstability(format!(
                    "{}: dimensions {}",
                    alg.name(),
                    detail.join(", ")
                )));
            }
            res.runs = runs;
            Ok(res)
        }
    }
}

/// Whether `alpha` is a cocycle that is a coboundary (`Some(true)`), a
/// cocycle outside the coboundaries (`Some(false)`), or not a cocycle.
pub fn is_trivial(alg: &ConformalAlgebra, alpha: &Cocycle2) -> Option<bool> {
    if !cocycle_residual(alg, alpha).is_zero() {
        return None;
    }
    Some(in_span(&coboundary_space(alg), alpha))
}

fn flatten(alpha: &Cocycle2) -> BTreeMap<(usize, usize, u32), Scalar> {
    alpha
        .entries
        .iter()
        .flat_map(|(&(i, j), p)| p.iter().map(move |(&n, c)| ((i, j, n), c.clone())))
        .collect()
}

/// Whether `alpha` lies in the span of `basis`.
pub fn in_span(basis: &[Cocycle2], alpha: &Cocycle2) -> bool {
    rank_of_cocycles(basis.iter().chain([alpha])) == rank_of_cocycles(basis.iter())
}

pub fn rank_of_cocycles<'a>(items: impl IntoIterator<Item = &'a Cocycle2>) -> usize {
    let items: Vec<&Cocycle2> = items.into_iter().collect();
    let mut keys = BTreeMap::new();
    for a in &items {
        for k in flatten(a).into_keys() {
            let n = keys.len();
            keys.entry(k).or_insert(n);
        }
    }
    let mut e = Echelon::new();
    for a in items {
        e.insert(flatten(a).into_iter().map(|(k, c)| (keys[&k], c)).collect());
    }
    e.rank()
}

/// dim of the reduced H¹ with trivial coefficients: functionals on
/// `R / (∂R + R′)`.
pub fn h1_conformal(alg: &ConformalAlgebra) -> usize {
    let r = alg.rank();
    let mut e = Echelon::new();
    for i in 0..r {
        for j in 0..r {
            for x in alg.table(i, j).coeffs().values() {
                let v: SparseVec = x
                    .terms()
                    .iter()
                    .filter(|(&(_, t), _)| t == 0)
                    .map(|(&(k, _), c)| (k, c.clone()))
                    .collect();
                if !v.is_empty() {
                    e.insert(v);
                }
            }
        }
    }
    r - e.rank()
}
