//! Elements of a free ℂ[∂]-module and polynomials in λ (and μ) with such
//! elements as coefficients.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::SparseVec;
use crate::scalar::{binomial, one, sign_pow, Scalar};

/// `Σ c · ∂^t e_k`, keyed by `(k, t)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<(usize, u32), Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The generator `e_k`.
    pub fn gen(k: usize) -> Self {
        Self::term(k, 0, one())
    }

    pub fn term(k: usize, t: u32, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(k, t, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, u32), Scalar)>) -> Self {
        let mut e = Self::zero();
        for ((k, t), c) in terms {
            e.add_term(k, t, c);
        }
        e
    }

    pub fn terms(&self) -> &BTreeMap<(usize, u32), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: usize, t: u32) -> Scalar {
        self.terms
            .get(&(k, t))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, k: usize, t: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((k, t)).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(k, t));
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (&(k, t), x) in &other.terms {
            self.add_term(k, t, x * c);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &one());
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &-one());
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&-one())
    }

    /// `∂^u x`.
    pub fn partial(&self, u: u32) -> Element {
        if u == 0 {
            return self.clone();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(&(k, t), c)| ((k, t + u), c.clone()))
                .collect(),
        }
    }

    /// Largest ∂-power present (0 for the zero element).
    pub fn max_dpow(&self) -> u32 {
        self.terms.keys().map(|&(_, t)| t).max().unwrap_or(0)
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        let mut ks: Vec<usize> = self.terms.keys().map(|&(k, _)| k).collect();
        ks.dedup();
        ks.into_iter()
    }

    /// Coordinates in the truncated space with column `t * rank + k`.
    pub fn to_vec(&self, rank: usize) -> SparseVec {
        self.terms
            .iter()
            .map(|(&(k, t), c)| (t as usize * rank + k, c.clone()))
            .collect()
    }

    pub fn from_vec(v: &SparseVec, rank: usize) -> Element {
        Element::from_terms(
            v.iter()
                .map(|(&col, c)| ((col % rank, (col / rank) as u32), c.clone())),
        )
    }

    /// Projection to ∂-power zero (what a functional killing ∂R sees).
    pub fn constant_part(&self) -> Element {
        Element::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, t), _)| t == 0)
                .map(|(&k, c)| (k, c.clone())),
        )
    }

    /// Whether `self == c * other` for some scalar `c`; returns `c`.
    pub fn proportional_to(&self, other: &Element) -> Option<Scalar> {
        let (&key, lead) = other.terms.iter().next()?;
        let c = self.coeff(key.0, key.1) / lead;
        (other.scale(&c) == *self).then_some(c)
    }
}

/// `Σ λ^n x_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaPoly {
    coeffs: BTreeMap<u32, Element>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(x: Element) -> Self {
        Self::monomial(0, x)
    }

    pub fn monomial(n: u32, x: Element) -> Self {
        let mut p = Self::zero();
        p.add_at(n, &x, &one());
        p
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Element> {
        &self.coeffs
    }

    pub fn coeff(&self, n: u32) -> Element {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_at(&mut self, n: u32, x: &Element, c: &Scalar) {
        if c.is_zero() || x.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(n).or_default();
        entry.add_scaled(x, c);
        if entry.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn add_scaled(&mut self, other: &LambdaPoly, c: &Scalar) {
        for (&n, x) in &other.coeffs {
            self.add_at(n, x, c);
        }
    }

    pub fn add(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out.add_scaled(other, &one());
        out
    }

    pub fn sub(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out.add_scaled(other, &-one());
        out
    }

    pub fn scale(&self, c: &Scalar) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        out.add_scaled(self, c);
        out
    }

    /// Multiplies by `(-λ)^s (∂ + λ)^t`, with ∂ acting on the coefficients.
    pub fn sesqui(&self, s: u32, t: u32) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        let sgn = sign_pow(s);
        for (&n, x) in &self.coeffs {
            for u in 0..=t {
                let c = &sgn * binomial(t, u);
                out.add_at(n + s + t - u, &x.partial(u), &c);
            }
        }
        out
    }

    /// Formal substitution λ ↦ -λ-∂ (∂ acting on the coefficients).
    pub fn substitute_neg(&self) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&n, x) in &self.coeffs {
            for k in 0..=n {
                // C(n,k) (-λ)^{n-k} (-∂)^k
                let c = binomial(n, k) * sign_pow(n);
                out.add_at(n - k, &x.partial(k), &c);
            }
        }
        out
    }

    /// Applies ∂^u to every coefficient.
    pub fn partial(&self, u: u32) -> LambdaPoly {
        LambdaPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&n, x)| (n, x.partial(u)))
                .collect(),
        }
    }
}

/// `Σ λ^m μ^n x_{m,n}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivarPoly {
    coeffs: BTreeMap<(u32, u32), Element>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), Element> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_at(&mut self, m: u32, n: u32, x: &Element, c: &Scalar) {
        if c.is_zero() || x.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((m, n)).or_default();
        entry.add_scaled(x, c);
        if entry.is_zero() {
            self.coeffs.remove(&(m, n));
        }
    }

    pub fn add_scaled(&mut self, other: &BivarPoly, c: &Scalar) {
        for (&(m, n), x) in &other.coeffs {
            self.add_at(m, n, x, c);
        }
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out.add_scaled(other, &-one());
        out
    }
}

/// Structure polynomial `[e_i λ e_j] = Σ c λ^s ∂^t e_k`, keyed by `(s, t, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructurePoly {
    pub terms: BTreeMap<(u32, u32, usize), Scalar>,
}

impl StructurePoly {
    pub fn from_lambda(p: &LambdaPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (&s, x) in p.coeffs() {
            for (&(k, t), c) in x.terms() {
                terms.insert((s, t, k), c.clone());
            }
        }
        StructurePoly { terms }
    }

    pub fn to_lambda(&self) -> LambdaPoly {
        let mut p = LambdaPoly::zero();
        for (&(s, t, k), c) in &self.terms {
            p.add_at(s, &Element::term(k, t, one()), c);
        }
        p
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(s, _, _)| s).max()
    }

    pub fn dpow_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, t, _)| t).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn substitute_neg_examples() {
        let e = Element::gen(0);
        let p = LambdaPoly::constant(e.clone());
        assert_eq!(p.substitute_neg(), p);

        // λ e ↦ -λ e - ∂e
        let p = LambdaPoly::monomial(1, e.clone());
        let mut expected = LambdaPoly::monomial(1, e.neg());
        expected.add_at(0, &e.partial(1), &int(-1));
        assert_eq!(p.substitute_neg(), expected);

        let p = LambdaPoly::monomial(2, e);
        assert_eq!(p.substitute_neg().substitute_neg(), p);
    }

    #[test]
    fn sesqui_matches_hand_expansion() {
        // (∂+λ)(λ e) = λ ∂e + λ² e
        let e = Element::gen(0);
        let p = LambdaPoly::monomial(1, e.clone());
        let mut expected = LambdaPoly::monomial(2, e.clone());
        expected.add_at(1, &e.partial(1), &int(1));
        assert_eq!(p.sesqui(0, 1), expected);
        // (-λ)(e) = -λ e
        assert_eq!(
            LambdaPoly::constant(e.clone()).sesqui(1, 0),
            LambdaPoly::monomial(1, e.neg())
        );
    }

    #[test]
    fn element_vec_round_trip_and_proportionality() {
        let x = Element::from_terms([((1, 2), int(3)), ((0, 0), int(-1))]);
        assert_eq!(Element::from_vec(&x.to_vec(4), 4), x);
        assert_eq!(x.scale(&int(-2)).proportional_to(&x), Some(int(-2)));
        assert_eq!(x.add(&Element::gen(2)).proportional_to(&x), None);
        assert_eq!(x.max_dpow(), 2);
        assert_eq!(x.constant_part(), Element::term(0, 0, int(-1)));
    }
}
