//! Truncated polynomial realizations: vector fields on `(x | ξ_1 … ξ_N)`,
//! the contact bracket on functions, and `g[t]`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_traits::Zero;
use rayon::prelude::*;

use crate::families::{WFamily, WGen};
use crate::finite::FiniteLieSuperalgebra;
use crate::grassmann::{monomials, Monomial};
use crate::parity::Parity;
use crate::scalar::{format_scalar, int, one, ratio, Scalar};

use super::{ModeAlgebra, ModeElement};

/// A polynomial `Σ c x^n A` in one even and `N` odd variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuperPoly {
    terms: BTreeMap<(u32, Monomial), Scalar>,
}

impl SuperPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(n: u32, a: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(n, a, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<(u32, Monomial), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, n: u32, a: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((n, a)).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(n, a));
        }
    }

    pub fn add_scaled(&mut self, other: &SuperPoly, c: &Scalar) {
        for (&(n, a), v) in &other.terms {
            self.add_term(n, a, v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> SuperPoly {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &SuperPoly) -> SuperPoly {
        let mut out = Self::zero();
        for (&(n, a), c) in &self.terms {
            for (&(m, b), d) in &other.terms {
                if let Some((s, ab)) = a.mul(b) {
                    out.add_term(n + m, ab, c * d * s);
                }
            }
        }
        out
    }

    /// `∂_0 = d/dx` for `i = 0`, the left odd derivative `∂/∂ξ_i` otherwise.
    pub fn partial(&self, i: usize) -> SuperPoly {
        let mut out = Self::zero();
        for (&(n, a), c) in &self.terms {
            if i == 0 {
                if n > 0 {
                    out.add_term(n - 1, a, c * int(n as i64));
                }
            } else if let Some((s, b)) = a.partial(i) {
                out.add_term(n, b, c * s);
            }
        }
        out
    }

    /// `Σ ξ_i ∂_i`, i.e. multiplication of each monomial by its degree.
    pub fn euler(&self) -> SuperPoly {
        let mut out = Self::zero();
        for (&(n, a), c) in &self.terms {
            out.add_term(n, a, c * int(a.degree() as i64));
        }
        out
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(n, _)| n).max()
    }

    /// Splits into even and odd parts.
    pub fn parts(&self) -> [(Parity, SuperPoly); 2] {
        let mut even = Self::zero();
        let mut odd = Self::zero();
        for (&(n, a), c) in &self.terms {
            match a.parity() {
                Parity::Even => even.add_term(n, a, c.clone()),
                Parity::Odd => odd.add_term(n, a, c.clone()),
            }
        }
        [(Parity::Even, even), (Parity::Odd, odd)]
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(n, a), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*x^{n}*{a}", format_scalar(c))?;
        }
        Ok(())
    }
}

/// A vector field `Σ_j P_j ∂_j` with `∂_0 = d/dx` even and `∂_1 … ∂_N` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyField {
    pub comps: Vec<SuperPoly>,
}

impl PolyField {
    pub fn zero(n: usize) -> Self {
        PolyField {
            comps: vec![SuperPoly::zero(); n + 1],
        }
    }

    /// `x^k A ∂_j`.
    pub fn unit(n: usize, k: u32, a: Monomial, j: usize) -> Self {
        let mut v = Self::zero(n);
        v.comps[j].add_term(k, a, one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(SuperPoly::is_zero)
    }

    pub fn add_scaled(&mut self, other: &PolyField, c: &Scalar) {
        for (p, q) in self.comps.iter_mut().zip(&other.comps) {
            p.add_scaled(q, c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> PolyField {
        PolyField {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.comps.iter().filter_map(SuperPoly::x_degree).max()
    }

    /// `X(f) = Σ_j P_j ∂_j f`.
    pub fn apply(&self, f: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (j, p) in self.comps.iter().enumerate() {
            out.add_scaled(&p.mul(&f.partial(j)), &one());
        }
        out
    }

    pub fn divergence(&self) -> SuperPoly {
        let mut out = self.comps[0].partial(0);
        for (j, p) in self.comps.iter().enumerate().skip(1) {
            for (par, q) in p.parts() {
                out.add_scaled(&q.partial(j), &par.sign());
            }
        }
        out
    }

    fn parts(&self) -> [(Parity, PolyField); 2] {
        let n = self.comps.len() - 1;
        let mut even = Self::zero(n);
        let mut odd = Self::zero(n);
        for (j, p) in self.comps.iter().enumerate() {
            for (par, q) in p.parts() {
                let field_par = if j == 0 { par } else { par + Parity::Odd };
                match field_par {
                    Parity::Even => even.comps[j].add_scaled(&q, &one()),
                    Parity::Odd => odd.comps[j].add_scaled(&q, &one()),
                }
            }
        }
        [(Parity::Even, even), (Parity::Odd, odd)]
    }

    /// Homogeneous parity, if any.
    pub fn parity(&self) -> Option<Parity> {
        let [(_, e), (_, o)] = self.parts();
        match (e.is_zero(), o.is_zero()) {
            (false, true) => Some(Parity::Even),
            (true, false) => Some(Parity::Odd),
            _ => None,
        }
    }

    /// `[X, Y]_j = X(Q_j) − (−1)^{p(X)p(Y)} Y(P_j)`.
    pub fn bracket(&self, other: &PolyField) -> PolyField {
        let n = self.comps.len() - 1;
        let mut out = Self::zero(n);
        for (px, x) in self.parts() {
            for (py, y) in other.parts() {
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let s = -px.koszul(py);
                for j in 0..=n {
                    out.comps[j].add_scaled(&x.apply(&y.comps[j]), &one());
                    out.comps[j].add_scaled(&y.apply(&x.comps[j]), &s);
                }
            }
        }
        out
    }
}

impl fmt::Display for PolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, p) in self.comps.iter().enumerate() {
            if !p.is_zero() {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({p})d{j}")?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A Lie superalgebra of polynomials truncated at x-degree `cap`.
pub trait Realization: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;
    fn name(&self) -> String;
    fn cap(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn add_scaled(&self, acc: &mut Self::Elem, x: &Self::Elem, c: &Scalar);
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn degree(&self, x: &Self::Elem) -> Option<u32>;
    fn format(&self, x: &Self::Elem) -> String;

    fn overflows(&self, x: &Self::Elem) -> bool {
        self.degree(x).is_some_and(|d| d > self.cap())
    }
}

#[derive(Clone, Debug)]
pub struct VectorFieldModel {
    pub n: usize,
    pub cap: u32,
}

pub fn vector_field_model(n: usize, cap: u32) -> VectorFieldModel {
    VectorFieldModel { n, cap }
}

impl VectorFieldModel {
    /// `x^k A ∂_j` for `k ≤ cap`.
    pub fn basis(&self) -> Vec<PolyField> {
        let mut out = Vec::new();
        for k in 0..=self.cap {
            for &a in &monomials(self.n) {
                for j in 0..=self.n {
                    out.push(PolyField::unit(self.n, k, a, j));
                }
            }
        }
        out
    }
}

impl Realization for VectorFieldModel {
    type Elem = PolyField;

    fn name(&self) -> String {
        format!("W(1,{}) to x-degree {}", self.n, self.cap)
    }

    fn cap(&self) -> u32 {
        self.cap
    }

    fn zero(&self) -> PolyField {
        PolyField::zero(self.n)
    }

    fn add_scaled(&self, acc: &mut PolyField, x: &PolyField, c: &Scalar) {
        acc.add_scaled(x, c);
    }

    fn bracket(&self, x: &PolyField, y: &PolyField) -> PolyField {
        x.bracket(y)
    }

    fn degree(&self, x: &PolyField) -> Option<u32> {
        x.x_degree()
    }

    fn format(&self, x: &PolyField) -> String {
        x.to_string()
    }
}

#[derive(Clone, Debug)]
pub struct ContactModel {
    pub n: usize,
    pub cap: u32,
}

pub fn contact_model(n: usize, cap: u32) -> ContactModel {
    ContactModel { n, cap }
}

impl ContactModel {
    /// `[f, g] = (f − ½Ef) ∂_0 g − ∂_0 f (g − ½Eg) + (−1)^{p(f)} ½ Σ ∂_i f ∂_i g`.
    pub fn contact_bracket(&self, f: &SuperPoly, g: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero();
        let half = ratio(1, 2);
        let mut g_twist = g.clone();
        g_twist.add_scaled(&g.euler(), &-&half);
        for (pf, f) in f.parts() {
            if f.is_zero() {
                continue;
            }
            let mut f_twist = f.clone();
            f_twist.add_scaled(&f.euler(), &-&half);
            out.add_scaled(&f_twist.mul(&g.partial(0)), &one());
            out.add_scaled(&f.partial(0).mul(&g_twist), &int(-1));
            for i in 1..=self.n {
                out.add_scaled(&f.partial(i).mul(&g.partial(i)), &(pf.sign() * &half));
            }
        }
        out
    }

    /// `D^f = f ∂_0 + ½ (−1)^{p(f)} Σ (ξ_i ∂_0 + ∂_i)(f) (ξ_i ∂_0 + ∂_i)`.
    pub fn contact_field(&self, f: &SuperPoly) -> PolyField {
        let mut out = PolyField::zero(self.n);
        for (pf, f) in f.parts() {
            if f.is_zero() {
                continue;
            }
            out.comps[0].add_scaled(&f, &one());
            let c = pf.sign() * ratio(1, 2);
            for i in 1..=self.n {
                let xi = SuperPoly::term(0, Monomial::var(i), one());
                let mut d = xi.mul(&f.partial(0));
                d.add_scaled(&f.partial(i), &one());
                out.comps[0].add_scaled(&d.mul(&xi), &c);
                out.comps[i].add_scaled(&d, &c);
            }
        }
        out
    }

    /// `x^k A` for `k ≤ cap`.
    pub fn basis(&self) -> Vec<SuperPoly> {
        (0..=self.cap)
            .flat_map(|k| {
                monomials(self.n)
                    .into_iter()
                    .map(move |a| SuperPoly::term(k, a, one()))
            })
            .collect()
    }

    /// Basis pairs within the cap where `[D^f, D^g] ≠ D^{[f,g]}`, and the
    /// number of pairs compared.
    pub fn field_homomorphism_violations(&self) -> (usize, Vec<(SuperPoly, SuperPoly)>) {
        let basis = self.basis();
        let fields = vector_field_model(self.n, self.cap);
        let pairs: Vec<(&SuperPoly, &SuperPoly)> = basis
            .iter()
            .flat_map(|f| basis.iter().map(move |g| (f, g)))
            .collect();
        let results: Vec<Option<bool>> = pairs
            .par_iter()
            .map(|(f, g)| {
                let fg = self.contact_bracket(f, g);
                let lhs = self.contact_field(f).bracket(&self.contact_field(g));
                if self.overflows(&fg) || fields.overflows(&lhs) {
                    return None;
                }
                Some(lhs == self.contact_field(&fg))
            })
            .collect();
        let compared = results.iter().filter(|r| r.is_some()).count();
        let bad = pairs
            .iter()
            .zip(&results)
            .filter(|(_, r)| **r == Some(false))
            .map(|((f, g), _)| ((*f).clone(), (*g).clone()))
            .collect();
        (compared, bad)
    }
}

impl Realization for ContactModel {
    type Elem = SuperPoly;

    fn name(&self) -> String {
        format!("K(1,{}) to x-degree {}", self.n, self.cap)
    }

    fn cap(&self) -> u32 {
        self.cap
    }

    fn zero(&self) -> SuperPoly {
        SuperPoly::zero()
    }

    fn add_scaled(&self, acc: &mut SuperPoly, x: &SuperPoly, c: &Scalar) {
        acc.add_scaled(x, c);
    }

    fn bracket(&self, x: &SuperPoly, y: &SuperPoly) -> SuperPoly {
        self.contact_bracket(x, y)
    }

    fn degree(&self, x: &SuperPoly) -> Option<u32> {
        x.x_degree()
    }

    fn format(&self, x: &SuperPoly) -> String {
        x.to_string()
    }
}

/// `g[t]` truncated at `t^cap`; elements keyed by `(t-power, basis index)`.
#[derive(Clone, Debug)]
pub struct CurrentModel {
    pub g: FiniteLieSuperalgebra,
    pub cap: u32,
}

pub fn current_model(g: &FiniteLieSuperalgebra, cap: u32) -> CurrentModel {
    CurrentModel { g: g.clone(), cap }
}

impl Realization for CurrentModel {
    type Elem = BTreeMap<(u32, usize), Scalar>;

    fn name(&self) -> String {
        format!("{}[t] to degree {}", self.g.name(), self.cap)
    }

    fn cap(&self) -> u32 {
        self.cap
    }

    fn zero(&self) -> Self::Elem {
        BTreeMap::new()
    }

    fn add_scaled(&self, acc: &mut Self::Elem, x: &Self::Elem, c: &Scalar) {
        for (&k, v) in x {
            let slot = acc.entry(k).or_insert_with(Scalar::zero);
            *slot += v * c;
            if slot.is_zero() {
                acc.remove(&k);
            }
        }
    }

    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut out = BTreeMap::new();
        for (&(m, i), c) in x {
            for (&(n, j), d) in y {
                let mut z = BTreeMap::new();
                for (&k, v) in self.g.bracket_basis(i, j) {
                    z.insert((m + n, k), v.clone());
                }
                self.add_scaled(&mut out, &z, &(c * d));
            }
        }
        out
    }

    fn degree(&self, x: &Self::Elem) -> Option<u32> {
        x.keys().map(|&(m, _)| m).max()
    }

    fn format(&self, x: &Self::Elem) -> String {
        if x.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (&(m, i), c)) in x.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            write!(out, "{}*{} t^{m}", format_scalar(c), self.g.id(i)).expect("write to string");
        }
        out
    }
}

/// `(A^j, n) ↦ x^n A ∂_j`, with the function generators `f` sent to
/// `x^n f ∂_0`, for the generator order of [`WFamily`].
pub fn w_pairing(w: &WFamily) -> impl Fn(usize, u32) -> PolyField + Sync + '_ {
    move |k, p| match w.decode(k) {
        WGen::Function(m) => PolyField::unit(w.n(), p, m, 0),
        WGen::Field(m, i) => PolyField::unit(w.n(), p, m, i),
    }
}

/// `(A, n) ↦ x^n A` for the monomial generators of K_N.
pub fn k_pairing(n: usize) -> impl Fn(usize, u32) -> SuperPoly + Sync {
    let monos = monomials(n);
    move |k, p| SuperPoly::term(p, monos[k], one())
}

/// `(a, n) ↦ a t^n`.
pub fn current_pairing() -> impl Fn(usize, u32) -> BTreeMap<(u32, usize), Scalar> + Sync {
    |k, p| BTreeMap::from([((p, k), one())])
}

#[derive(Clone, Debug, Default)]
pub struct RealizationReport {
    pub model: String,
    pub compared: usize,
    /// Pairs skipped because the model bracket leaves the degree cap.
    pub overflow: usize,
    /// `(x, y, mode-side image, model bracket)`.
    pub mismatches: Vec<(String, String, String, String)>,
}

impl RealizationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.compared > 0
    }
}

/// Compares `[g_{i,m}, g_{j,n}]` (mapped by `pairing`) with the model
/// bracket of the paired elements, for `m, n ≤ max_mode`.
pub fn compare_realization<R: Realization>(
    modes: &ModeAlgebra,
    model: &R,
    pairing: &(impl Fn(usize, u32) -> R::Elem + Sync),
    max_mode: u32,
) -> RealizationReport {
    let image = |x: &ModeElement| {
        let mut out = model.zero();
        for (&(k, p), c) in x.terms() {
            model.add_scaled(&mut out, &pairing(k, p), c);
        }
        out
    };
    let w = modes.window(max_mode);
    let outcomes: Vec<Option<Option<(String, String, String, String)>>> = w
        .par_iter()
        .flat_map_iter(|&(i, m)| w.iter().map(move |&(j, n)| ((i, m), (j, n))))
        .map(|((i, m), (j, n))| {
            let x = pairing(i, m);
            let y = pairing(j, n);
            let z = model.bracket(&x, &y);
            if model.overflows(&x) || model.overflows(&y) || model.overflows(&z) {
                return None;
            }
            let lhs = image(&modes.bracket_basis(i, m, j, n));
            if lhs == z {
                return Some(None);
            }
            let src = modes.source();
            Some(Some((
                format!("{}_{m}", src.generator(i).id),
                format!("{}_{n}", src.generator(j).id),
                model.format(&lhs),
                model.format(&z),
            )))
        })
        .collect();
    RealizationReport {
        model: model.name(),
        compared: outcomes.iter().filter(|o| o.is_some()).count(),
        overflow: outcomes.iter().filter(|o| o.is_none()).count(),
        mismatches: outcomes.into_iter().flatten().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cur, k_conformal, parse_finite};
    use crate::modes::build_modes;

    #[test]
    fn vector_field_brackets() {
        let x_d0 = PolyField::unit(1, 1, Monomial::ONE, 0);
        let d0 = PolyField::unit(1, 0, Monomial::ONE, 0);
        assert_eq!(x_d0.bracket(&d0), d0.scale(&int(-1)));
        let xi_d1 = PolyField::unit(1, 0, Monomial::var(1), 1);
        let d1 = PolyField::unit(1, 0, Monomial::ONE, 1);
        assert_eq!(d1.bracket(&d1), PolyField::zero(1));
        assert_eq!(d1.bracket(&xi_d1), d1);
    }

    #[test]
    fn contact_fields() {
        let k = contact_model(2, 4);
        assert_eq!(
            k.contact_field(&SuperPoly::term(0, Monomial::ONE, one())),
            PolyField::unit(2, 0, Monomial::ONE, 0)
        );
        let (compared, bad) = k.field_homomorphism_violations();
        assert!(compared > 0);
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn realizations_agree() {
        let w = WFamily::new(1).unwrap();
        let m = build_modes(&w.algebra);
        let r = compare_realization(&m, &vector_field_model(1, 6), &w_pairing(&w), 6);
        assert!(r.passed(), "{:?}", r.mismatches.first());
        let m = build_modes(&k_conformal(2).unwrap());
        let r = compare_realization(&m, &contact_model(2, 6), &k_pairing(2), 6);
        assert!(r.passed(), "{:?}", r.mismatches.first());
        let g = parse_finite("sl(2)").unwrap();
        let m = build_modes(&cur(&g));
        let r = compare_realization(&m, &current_model(&g, 6), &current_pairing(), 6);
        assert!(r.passed());
    }
}
