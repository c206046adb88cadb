//! The exterior superalgebra Λ(N) on odd generators ξ_1, …, ξ_N.
//!
//! Monomials are stored as sorted index sets (a bitmask). Every super-sign in
//! the crate ultimately comes from [`Monomial::mul`], which counts the
//! inversions needed to sort a concatenation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::scalar::{int, one, Scalar};

/// Largest number of odd variables accepted by constructors.
pub const MAX_ODD_VARS: usize = 8;

/// A monomial ξ_{i_1} ⋯ ξ_{i_k} with i_1 < ⋯ < i_k, stored as a bitmask
/// (bit `i-1` set iff ξ_i occurs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_indices(indices: &[usize]) -> Option<(Scalar, Monomial)> {
        let mut sign = one();
        let mut m = Monomial::ONE;
        for &i in indices {
            let (s, next) = m.mul(Monomial::var(i))?;
            sign *= s;
            m = next;
        }
        Some((sign, m))
    }

    /// ξ_i (1-based).
    pub fn var(i: usize) -> Monomial {
        debug_assert!(i >= 1);
        Monomial(1 << (i - 1))
    }

    /// ξ_1 ⋯ ξ_n.
    pub fn top(n: usize) -> Monomial {
        Monomial((1u32 << n) - 1)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn parity(self) -> Parity {
        Parity::from_degree(self.degree())
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    /// Indices in increasing order (1-based).
    pub fn indices(self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.0 & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    /// Signed product; `None` when the index sets intersect.
    pub fn mul(self, other: Monomial) -> Option<(Scalar, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // inversions: pairs (i in self, j in other) with i > j
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            inversions += (self.0 >> (j + 1)).count_ones();
        }
        let sign = if inversions.is_multiple_of(2) {
            one()
        } else {
            -one()
        };
        Some((sign, Monomial(self.0 | other.0)))
    }

    /// ∂/∂ξ_i applied to the monomial: removes ξ_i with the sign of moving it
    /// to the front.
    pub fn partial(self, i: usize) -> Option<(Scalar, Monomial)> {
        if !self.contains(i) {
            return None;
        }
        let before = (self.0 & ((1 << (i - 1)) - 1)).count_ones();
        let sign = if before.is_multiple_of(2) {
            one()
        } else {
            -one()
        };
        Some((sign, Monomial(self.0 & !(1 << (i - 1)))))
    }

    pub fn fits(self, n: usize) -> bool {
        self.0 >> n == 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for i in self.indices() {
            write!(f, "xi{i}")?;
        }
        Ok(())
    }
}

/// All monomials of Λ(n), ordered by degree and then lexicographically by
/// index list. This is the canonical generator order used by the families.
pub fn monomials(n: usize) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = (0..(1u32 << n)).map(Monomial).collect();
    all.sort_by_key(|m| (m.degree(), m.indices()));
    all
}

/// Parses `1`, `xi1xi3`, `xi2` into a monomial (indices must be increasing).
pub fn parse_monomial(s: &str) -> Option<Monomial> {
    if s == "1" {
        return Some(Monomial::ONE);
    }
    let mut idx = Vec::new();
    for part in s.split("xi").skip(1) {
        idx.push(part.parse::<usize>().ok()?);
    }
    if idx.is_empty() || idx.windows(2).any(|w| w[0] >= w[1]) || idx[0] == 0 {
        return None;
    }
    let (_, m) = Monomial::from_indices(&idx)?;
    if m.to_string() != s {
        return None;
    }
    Some(m)
}

/// Exact linear combination of monomials of Λ(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannElement {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GrassmannElement {
    pub fn zero(n: usize) -> Self {
        GrassmannElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Monomial::ONE, one())
    }

    pub fn monomial(n: usize, m: Monomial, c: Scalar) -> Self {
        let mut e = Self::zero(n);
        e.add_term(m, c);
        e
    }

    /// ξ_i.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        check_index(n, i)?;
        Ok(Self::monomial(n, Monomial::var(i), one()))
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert!(m.fits(self.n));
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Parity if every term has the same parity; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity());
        match it.next() {
            None => Some(Parity::Even),
            Some(p) => it.all(|q| q == p).then_some(p),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_ambient(self, other)?;
        let mut out = self.clone();
        for (m, x) in &other.terms {
            out.add_term(*m, x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-one()))
    }

    /// Exterior product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_ambient(self, other)?;
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((s, m)) = a.mul(*b) {
                    out.add_term(m, s * x * y);
                }
            }
        }
        Ok(out)
    }

    /// The odd derivation ∂/∂ξ_i.
    pub fn odd_partial(&self, i: usize) -> Result<Self> {
        check_index(self.n, i)?;
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            if let Some((s, rest)) = m.partial(i) {
                out.add_term(rest, s * x);
            }
        }
        Ok(out)
    }

    /// Berezin integral: the coefficient of ξ_1 ⋯ ξ_N.
    pub fn berezin(&self) -> Scalar {
        self.coeff(Monomial::top(self.n))
    }

    /// `{f, g} = Σ_i ∂_i f · ∂_i g`.
    pub fn poisson(&self, other: &Self) -> Result<Self> {
        same_ambient(self, other)?;
        let mut out = Self::zero(self.n);
        for i in 1..=self.n {
            out = out.add(&self.odd_partial(i)?.mul(&other.odd_partial(i)?)?)?;
        }
        Ok(out)
    }

    /// The Lie superalgebra bracket underlying H(n): `(-1)^{p(f)} {f, g}`
    /// extended bilinearly over the homogeneous components of `f`.
    pub fn hamiltonian_bracket(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            let f = Self::monomial(self.n, *m, m.parity().sign() * x);
            out = out.add(&f.poisson(other)?)?;
        }
        Ok(out)
    }

    /// Euler operator Σ ξ_i ∂_i: multiplies each monomial by its degree.
    pub fn euler(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(*m, int(m.degree() as i64) * x);
        }
        out
    }

    /// `(f, g) = ∫ f g`.
    pub fn berezin_form(&self, other: &Self) -> Result<Scalar> {
        Ok(self.mul(other)?.berezin())
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}*{}", crate::scalar::format_scalar(c), m))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::Index(format!(
            "odd variable index {i} outside 1..={n}"
        )));
    }
    Ok(())
}

fn same_ambient(a: &GrassmannElement, b: &GrassmannElement) -> Result<()> {
    if a.n != b.n {
        return Err(Error::Dimension(format!("Λ({}) vs Λ({})", a.n, b.n)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(n: usize, idx: &[usize]) -> GrassmannElement {
        let (s, m) = Monomial::from_indices(idx).unwrap();
        GrassmannElement::monomial(n, m, s)
    }

    #[test]
    fn product_signs() {
        let n = 3;
        assert_eq!(xi(n, &[1]).mul(&xi(n, &[2])).unwrap(), xi(n, &[1, 2]));
        assert_eq!(
            xi(n, &[2]).mul(&xi(n, &[1])).unwrap(),
            xi(n, &[1, 2]).scale(&int(-1))
        );
        assert!(xi(n, &[1]).mul(&xi(n, &[1])).unwrap().is_zero());
        assert!(xi(2, &[1]).mul(&xi(3, &[1])).is_err());
    }

    #[test]
    fn odd_partial_signs() {
        let f = xi(2, &[1, 2]);
        assert_eq!(f.odd_partial(1).unwrap(), xi(2, &[2]));
        assert_eq!(f.odd_partial(2).unwrap(), xi(2, &[1]).scale(&int(-1)));
        assert!(xi(2, &[2]).odd_partial(1).unwrap().is_zero());
        assert!(f.odd_partial(3).is_err());
        assert!(f.odd_partial(0).is_err());
    }

    #[test]
    fn berezin_reads_top_coefficient() {
        assert_eq!(xi(2, &[1, 2]).berezin(), int(1));
        let f = GrassmannElement::one(2).add(&xi(2, &[1])).unwrap();
        assert_eq!(f.berezin(), int(0));
        let g = xi(2, &[1, 2]).scale(&int(3)).sub(&xi(2, &[1])).unwrap();
        assert_eq!(g.berezin(), int(3));
    }

    #[test]
    fn poisson_examples() {
        assert_eq!(
            xi(2, &[1]).poisson(&xi(2, &[1])).unwrap(),
            GrassmannElement::one(2)
        );
        assert!(xi(2, &[1]).poisson(&xi(2, &[2])).unwrap().is_zero());
        // only i = 2 contributes: ∂_2(ξ1ξ2) = -ξ1, ∂_2 ξ2 = 1
        assert_eq!(
            xi(2, &[1, 2]).poisson(&xi(2, &[2])).unwrap(),
            xi(2, &[1]).scale(&int(-1))
        );
    }

    #[test]
    fn euler_multiplies_by_degree() {
        assert_eq!(xi(2, &[1, 2]).euler(), xi(2, &[1, 2]).scale(&int(2)));
        assert!(GrassmannElement::one(2).euler().is_zero());
        let f = xi(3, &[1]).add(&xi(3, &[1, 2, 3])).unwrap();
        let expected = xi(3, &[1]).add(&xi(3, &[1, 2, 3]).scale(&int(3))).unwrap();
        assert_eq!(f.euler(), expected);
    }

    #[test]
    fn monomial_listing_and_parsing() {
        let ms = monomials(3);
        assert_eq!(ms.len(), 8);
        assert_eq!(ms[0], Monomial::ONE);
        assert_eq!(ms[1].to_string(), "xi1");
        assert_eq!(ms[7].to_string(), "xi1xi2xi3");
        for m in ms {
            assert_eq!(parse_monomial(&m.to_string()), Some(m));
        }
        assert_eq!(parse_monomial("xi2xi1"), None);
        assert_eq!(parse_monomial("xi0"), None);
    }
}
