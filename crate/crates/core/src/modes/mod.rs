//! Annihilation (non-negative mode) Lie superalgebras of conformal algebras,
//! and concrete realizations to compare them against.

mod checks;
mod models;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::conformal::{ConformalAlgebra, Element};
use crate::parity::Parity;
use crate::scalar::{binomial, factorial, falling, format_scalar, int, sign_pow, Scalar};

pub use checks::{
    format_center, k4prime_center_check, outer_sl2_on_s, witt_check, CenterReport, PsiEntry,
    SPrime2, Sl2Report, WittReport,
};
pub use models::{
    compare_realization, contact_model, current_model, current_pairing, k_pairing,
    vector_field_model, w_pairing, ContactModel, CurrentModel, PolyField, Realization,
    RealizationReport, SuperPoly, VectorFieldModel,
};

/// A finite combination of modes `g_{i,n}`, keyed by `(i, n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModeElement {
    terms: BTreeMap<(usize, u32), Scalar>,
}

impl ModeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize, n: u32) -> Self {
        Self::term(i, n, crate::scalar::one())
    }

    pub fn term(i: usize, n: u32, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(i, n, c);
        x
    }

    pub fn terms(&self) -> &BTreeMap<(usize, u32), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, n: u32) -> Scalar {
        self.terms
            .get(&(i, n))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, i: usize, n: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, n)).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, n));
        }
    }

    pub fn add_scaled(&mut self, other: &ModeElement, c: &Scalar) {
        for (&(i, n), v) in &other.terms {
            self.add_term(i, n, v * c);
        }
    }

    pub fn sub(&self, other: &ModeElement) -> ModeElement {
        let mut out = self.clone();
        out.add_scaled(other, &int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> ModeElement {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn max_mode(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, n)| n).max()
    }

    pub fn min_mode(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, n)| n).min()
    }
}

type BasisKey = (usize, u32, usize, u32);

/// `(Lie R)_−` for a conformal algebra `R`: basis `g_{i,n}`, `n ≥ 0`, with
/// `[a_m, b_n] = Σ_j C(m, j) (a_(j) b)_{m+n−j}`. Basis brackets are computed
/// on demand and cached.
pub struct ModeAlgebra {
    source: ConformalAlgebra,
    cache: RwLock<HashMap<BasisKey, Arc<ModeElement>>>,
}

impl ModeAlgebra {
    pub fn source(&self) -> &ConformalAlgebra {
        &self.source
    }

    pub fn rank(&self) -> usize {
        self.source.rank()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.source.parity(i)
    }

    pub fn element_parity(&self, x: &ModeElement) -> Option<Parity> {
        let mut ps = x.terms.keys().map(|&(i, _)| self.parity(i));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    pub fn format(&self, x: &ModeElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (&(i, n), c)) in x.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            write!(
                out,
                "{}*{}_{n}",
                format_scalar(c),
                self.source.generator(i).id
            )
            .expect("write to string");
        }
        out
    }

    /// Modes of a conformal element: `(∂^t e_k)_p = (−1)^t p(p−1)…(p−t+1) e_{k,p−t}`.
    pub fn modes_of(&self, x: &Element, p: u32) -> ModeElement {
        let mut out = ModeElement::zero();
        for (&(k, t), c) in x.terms() {
            if t <= p {
                out.add_term(k, p - t, c * sign_pow(t) * falling(p, t));
            }
        }
        out
    }

    fn compute(&self, i: usize, m: u32, j: usize, n: u32) -> ModeElement {
        let mut out = ModeElement::zero();
        for (&s, x) in self.source.table(i, j).coeffs() {
            if s > m {
                continue;
            }
            // a_(s) b = s! · [λ^s]
            let c = binomial(m, s) * factorial(s);
            out.add_scaled(&self.modes_of(x, m + n - s), &c);
        }
        out
    }

    /// `[g_{i,m}, g_{j,n}]`.
    pub fn bracket_basis(&self, i: usize, m: u32, j: usize, n: u32) -> Arc<ModeElement> {
        let key = (i, m, j, n);
        if let Some(v) = self.cache.read().expect("mode cache poisoned").get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.compute(i, m, j, n));
        self.cache
            .write()
            .expect("mode cache poisoned")
            .insert(key, v.clone());
        v
    }

    pub fn bracket(&self, x: &ModeElement, y: &ModeElement) -> ModeElement {
        let mut out = ModeElement::zero();
        for (&(i, m), c) in &x.terms {
            for (&(j, n), d) in &y.terms {
                out.add_scaled(&self.bracket_basis(i, m, j, n), &(c * d));
            }
        }
        out
    }

    /// `T g_{i,n} = −n g_{i,n−1}`.
    pub fn t_derivation(&self, x: &ModeElement) -> ModeElement {
        let mut out = ModeElement::zero();
        for (&(i, n), c) in &x.terms {
            if n > 0 {
                out.add_term(i, n - 1, -c * int(n as i64));
            }
        }
        out
    }

    /// The basis `g_{i,n}` with `n ≤ max_mode`.
    pub fn window(&self, max_mode: u32) -> Vec<(usize, u32)> {
        (0..=max_mode)
            .flat_map(|n| (0..self.rank()).map(move |i| (i, n)))
            .collect()
    }

    /// Pairs `(x, y)` of window elements with `[x, y] ≠ −(−1)^{p(x)p(y)} [y, x]`.
    pub fn anticommutativity_violations(&self, max_mode: u32) -> Vec<((usize, u32), (usize, u32))> {
        let w = self.window(max_mode);
        w.par_iter()
            .flat_map_iter(|&(i, m)| {
                w.iter()
                    .filter(move |&&(j, n)| (i, m) <= (j, n))
                    .filter(move |&&(j, n)| {
                        let s = -self.parity(i).koszul(self.parity(j));
                        *self.bracket_basis(i, m, j, n) != self.bracket_basis(j, n, i, m).scale(&s)
                    })
                    .map(move |&b| ((i, m), b))
            })
            .collect()
    }

    /// `[a, [b, c]] − [[a, b], c] − (−1)^{p(a)p(b)} [b, [a, c]]` on basis elements.
    pub fn jacobi_residual(
        &self,
        a: (usize, u32),
        b: (usize, u32),
        c: (usize, u32),
    ) -> ModeElement {
        let (xa, xb, xc) = (
            ModeElement::basis(a.0, a.1),
            ModeElement::basis(b.0, b.1),
            ModeElement::basis(c.0, c.1),
        );
        let mut r = self.bracket(&xa, &self.bracket(&xb, &xc));
        r.add_scaled(&self.bracket(&self.bracket(&xa, &xb), &xc), &int(-1));
        r.add_scaled(
            &self.bracket(&xb, &self.bracket(&xa, &xc)),
            &-self.parity(a.0).koszul(self.parity(b.0)),
        );
        r
    }

    /// All ordered triples of the window with a nonzero Jacobi residual.
    pub fn jacobi_violations(&self, max_mode: u32) -> (usize, Vec<[(usize, u32); 3]>) {
        let w = self.window(max_mode);
        let w = &w;
        let bad: Vec<_> = w
            .par_iter()
            .flat_map_iter(|&a| {
                w.iter().flat_map(move |&b| {
                    w.iter().filter_map(move |&c| {
                        (!self.jacobi_residual(a, b, c).is_zero()).then_some([a, b, c])
                    })
                })
            })
            .collect();
        (w.len().pow(3), bad)
    }

    /// Jacobi on `samples` seeded random triples of the window.
    pub fn jacobi_sampled(
        &self,
        max_mode: u32,
        samples: usize,
        seed: u64,
    ) -> Vec<[(usize, u32); 3]> {
        let w = self.window(max_mode);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<[(usize, u32); 3]> = (0..samples)
            .map(|_| [0; 3].map(|_| w[rng.gen_range(0..w.len())]))
            .collect();
        triples
            .into_par_iter()
            .filter(|&[a, b, c]| !self.jacobi_residual(a, b, c).is_zero())
            .collect()
    }

    /// Checks `T[x, y] = [Tx, y] + [x, Ty]` on seeded pairs of the window.
    pub fn t_derivation_violations(
        &self,
        max_mode: u32,
        samples: usize,
        seed: u64,
    ) -> Vec<((usize, u32), (usize, u32))> {
        let w = self.window(max_mode);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<_> = (0..samples)
            .map(|_| (w[rng.gen_range(0..w.len())], w[rng.gen_range(0..w.len())]))
            .collect();
        pairs
            .into_par_iter()
            .filter(|&((i, m), (j, n))| {
                let x = ModeElement::basis(i, m);
                let y = ModeElement::basis(j, n);
                let lhs = self.t_derivation(&self.bracket(&x, &y));
                let mut rhs = self.bracket(&self.t_derivation(&x), &y);
                rhs.add_scaled(&self.bracket(&x, &self.t_derivation(&y)), &int(1));
                lhs != rhs
            })
            .collect()
    }

    /// Codimensions of the filtration `L_j = span{g_{i,n} : n ≥ j}` and the
    /// observed depth `d` with `[L_i, L_j] ⊆ L_{i+j−d}`.
    pub fn filtration_profile(&self, depth: u32) -> FiltrationProfile {
        let codims = (0..=depth).map(|j| self.rank() * j as usize).collect();
        let w = self.window(depth);
        let d = w
            .par_iter()
            .flat_map_iter(|&(i, m)| {
                w.iter().filter_map(move |&(j, n)| {
                    self.bracket_basis(i, m, j, n)
                        .min_mode()
                        .map(|low| (m + n) as i64 - low as i64)
                })
            })
            .max()
            .unwrap_or(0);
        let t_ok = w.iter().all(|&(i, n)| {
            let tx = self.t_derivation(&ModeElement::basis(i, n));
            tx.min_mode().is_none_or(|low| low + 1 >= n)
        });
        FiltrationProfile {
            codims,
            graded_dims: vec![self.rank(); depth as usize],
            depth: d,
            t_lowers_by_one: t_ok,
        }
    }

    /// Structure constants of the window, with `(i, n)` ids `e@n`, for pairs
    /// whose bracket stays in the window.
    pub fn export(&self, max_mode: u32) -> crate::document::AlgebraDocument {
        use crate::document::{AlgebraDocument, BracketEntry, GeneratorEntry, TermEntry};
        let w = self.window(max_mode);
        let index: HashMap<(usize, u32), usize> =
            w.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let generators = w
            .iter()
            .map(|&(i, n)| GeneratorEntry {
                id: format!("{}@{n}", self.source.generator(i).id),
                parity: self.parity(i),
                weight: None,
            })
            .collect();
        let mut brackets = Vec::new();
        for (a, &(i, m)) in w.iter().enumerate() {
            for (b, &(j, n)) in w.iter().enumerate() {
                let x = self.bracket_basis(i, m, j, n);
                if x.is_zero() || x.max_mode().is_some_and(|p| p > max_mode) {
                    continue;
                }
                let terms = x
                    .terms
                    .iter()
                    .map(|(key, c)| TermEntry {
                        k: index[key],
                        lpow: 0,
                        dpow: 0,
                        coeff: format_scalar(c),
                    })
                    .collect();
                brackets.push(BracketEntry { i: a, j: b, terms });
            }
        }
        AlgebraDocument::new(
            format!("modes of {} (≤ {max_mode})", self.source.name()),
            generators,
            brackets,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationProfile {
    /// `dim L_0 / L_j` for `j = 0..=depth`.
    pub codims: Vec<usize>,
    /// `dim L_j / L_{j+1}`.
    pub graded_dims: Vec<usize>,
    /// Largest observed mode drop `m + n − min mode of [g_m, g_n]`.
    pub depth: i64,
    pub t_lowers_by_one: bool,
}

pub fn build_modes(a: &ConformalAlgebra) -> ModeAlgebra {
    ModeAlgebra {
        source: a.clone(),
        cache: RwLock::new(HashMap::new()),
    }
}
