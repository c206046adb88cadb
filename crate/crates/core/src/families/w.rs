//! W_N = ℂ[∂] ⊗ (W(N) ⊕ Λ(N)), its module ℂ[∂] ⊗ Λ(N) and divergences.

use num_traits::Zero;

use crate::conformal::{ConformalAlgebra, Element, Generator, LambdaPoly};
use crate::error::{Error, Result};
use crate::grassmann::{monomials, GrassmannElement, Monomial, MAX_ODD_VARS};
use crate::parity::Parity;
use crate::scalar::{int, one, Scalar};

/// W_N together with its indexing of generators: functions first, in the
/// order of [`monomials`], then `f ∂_i` ordered by `f` and then `i`.
#[derive(Clone, Debug)]
pub struct WFamily {
    n: usize,
    monos: Vec<Monomial>,
    pos: Vec<usize>,
    pub algebra: ConformalAlgebra,
}

/// A generator of W_N in Grassmann terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WGen {
    Function(Monomial),
    Field(Monomial, usize),
}

fn mono_mul(a: Monomial, b: Monomial) -> Option<(Scalar, Monomial)> {
    a.mul(b)
}

impl WFamily {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ODD_VARS {
            return Err(Error::SizeBound(format!(
                "N = {n} exceeds the cap {MAX_ODD_VARS}"
            )));
        }
        let monos = monomials(n);
        let mut pos = vec![0; 1 << n];
        for (k, m) in monos.iter().enumerate() {
            pos[m.0 as usize] = k;
        }
        let mut gens = Vec::new();
        for m in &monos {
            gens.push(Generator::new(m.to_string(), m.parity()));
        }
        for m in &monos {
            for i in 1..=n {
                gens.push(Generator::new(
                    format!("({m})^{i}"),
                    m.parity() + Parity::Odd,
                ));
            }
        }
        let mut w = WFamily {
            n,
            monos,
            pos,
            algebra: ConformalAlgebra::from_fn(format!("W{n}"), Vec::new(), |_, _| {
                LambdaPoly::zero()
            }),
        };
        let table_owner = w.clone();
        w.algebra = ConformalAlgebra::from_fn(format!("W{n}"), gens, |i, j| {
            table_owner.generator_bracket(i, j)
        });
        let expect = (n + 1) << n;
        if w.algebra.rank() != expect {
            return Err(Error::Contract(format!(
                "rank of W{n} is {}, expected {expect}",
                w.algebra.rank()
            )));
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn fn_index(&self, m: Monomial) -> usize {
        self.pos[m.0 as usize]
    }

    pub fn field_index(&self, m: Monomial, i: usize) -> usize {
        self.monos.len() + self.pos[m.0 as usize] * self.n + (i - 1)
    }

    pub fn decode(&self, k: usize) -> WGen {
        let d = self.monos.len();
        if k < d {
            WGen::Function(self.monos[k])
        } else {
            let r = k - d;
            WGen::Field(self.monos[r / self.n], r % self.n + 1)
        }
    }

    /// `f` viewed in W_N.
    pub fn function(&self, f: &GrassmannElement) -> Element {
        Element::from_terms(
            f.terms()
                .iter()
                .map(|(m, c)| ((self.fn_index(*m), 0), c.clone())),
        )
    }

    /// `f ∂_i` viewed in W_N.
    pub fn field(&self, f: &GrassmannElement, i: usize) -> Element {
        Element::from_terms(
            f.terms()
                .iter()
                .map(|(m, c)| ((self.field_index(*m, i), 0), c.clone())),
        )
    }

    /// `Σ P_i ∂_i` with constant coefficients.
    pub fn vector_field(&self, d: &[GrassmannElement]) -> Element {
        let mut out = Element::zero();
        for (i, p) in d.iter().enumerate() {
            out = out.add(&self.field(p, i + 1));
        }
        out
    }

    /// Left multiplication by a function: `h (Σ P_i ∂_i + f) = Σ h P_i ∂_i + h f`.
    pub fn mul_function(&self, h: &GrassmannElement, x: &Element) -> Element {
        let mut out = Element::zero();
        for (&(k, t), c) in x.terms() {
            for (hm, hc) in h.terms() {
                let coef = c * hc;
                match self.decode(k) {
                    WGen::Function(m) => {
                        if let Some((s, p)) = mono_mul(*hm, m) {
                            out.add_term(self.fn_index(p), t, s * &coef);
                        }
                    }
                    WGen::Field(m, i) => {
                        if let Some((s, p)) = mono_mul(*hm, m) {
                            out.add_term(self.field_index(p, i), t, s * &coef);
                        }
                    }
                }
            }
        }
        out
    }

    /// `[e_i λ e_j]` on generators.
    fn generator_bracket(&self, i: usize, j: usize) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        match (self.decode(i), self.decode(j)) {
            (WGen::Function(f), WGen::Function(g)) => {
                // −∂(fg) − 2λ fg
                if let Some((s, p)) = mono_mul(f, g) {
                    let k = self.fn_index(p);
                    out.add_at(0, &Element::term(k, 1, -s.clone()), &one());
                    out.add_at(1, &Element::term(k, 0, -s * int(2)), &one());
                }
            }
            (WGen::Field(a, p), WGen::Field(b, q)) => {
                // a ∂_p(b) ∂_q − (−1)^{p(x)p(y)} b ∂_q(a) ∂_p
                let sign = (a.parity() + Parity::Odd).koszul(b.parity() + Parity::Odd);
                let mut x = Element::zero();
                if let Some((s1, db)) = b.partial(p) {
                    if let Some((s2, m)) = mono_mul(a, db) {
                        x.add_term(self.field_index(m, q), 0, s1 * s2);
                    }
                }
                if let Some((s1, da)) = a.partial(q) {
                    if let Some((s2, m)) = mono_mul(b, da) {
                        x.add_term(self.field_index(m, p), 0, -(s1 * s2 * &sign));
                    }
                }
                out.add_at(0, &x, &one());
            }
            (WGen::Field(a, p), WGen::Function(f)) => {
                // a(f) − λ (−1)^{p(a)p(f)} f a
                let sign = (a.parity() + Parity::Odd).koszul(f.parity());
                if let Some((s1, df)) = f.partial(p) {
                    if let Some((s2, m)) = mono_mul(a, df) {
                        out.add_at(0, &Element::term(self.fn_index(m), 0, s1 * s2), &one());
                    }
                }
                if let Some((s, m)) = mono_mul(f, a) {
                    out.add_at(
                        1,
                        &Element::term(self.field_index(m, p), 0, -(s * sign)),
                        &one(),
                    );
                }
            }
            (WGen::Function(f), WGen::Field(a, p)) => {
                // −(−1)^{p(a)p(f)} a(f) − (∂ + λ) f a
                let sign = (a.parity() + Parity::Odd).koszul(f.parity());
                if let Some((s1, df)) = f.partial(p) {
                    if let Some((s2, m)) = mono_mul(a, df) {
                        out.add_at(
                            0,
                            &Element::term(self.fn_index(m), 0, -(s1 * s2 * sign)),
                            &one(),
                        );
                    }
                }
                if let Some((s, m)) = mono_mul(f, a) {
                    let k = self.field_index(m, p);
                    out.add_at(0, &Element::term(k, 1, -s.clone()), &one());
                    out.add_at(1, &Element::term(k, 0, -s), &one());
                }
            }
        }
        out
    }

    /// Action of a generator on a monomial of the module ℂ[∂] ⊗ Λ(N), whose
    /// elements use the monomial positions as indices.
    fn generator_action(&self, i: usize, g: Monomial) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        match self.decode(i) {
            WGen::Field(a, p) => {
                if let Some((s1, dg)) = g.partial(p) {
                    if let Some((s2, m)) = mono_mul(a, dg) {
                        out.add_at(0, &Element::term(self.fn_index(m), 0, s1 * s2), &one());
                    }
                }
            }
            WGen::Function(f) => {
                if let Some((s, m)) = mono_mul(f, g) {
                    let k = self.fn_index(m);
                    out.add_at(0, &Element::term(k, 1, -s.clone()), &one());
                    out.add_at(1, &Element::term(k, 0, -s), &one());
                }
            }
        }
        out
    }

    /// `D_λ g` for `D ∈ W_N` and `g ∈ ℂ[∂] ⊗ Λ(N)`.
    pub fn action(&self, d: &Element, g: &Element) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&(i, s), c) in d.terms() {
            for (&(k, t), e) in g.terms() {
                let p = self.generator_action(i, self.monos[k]);
                if !p.is_zero() {
                    out.add_scaled(&p.sesqui(s, t), &(c * e));
                }
            }
        }
        out
    }

    /// `div_a D = Σ (−1)^{p(P_i)} ∂_i P_i − ∂f + a f`, valued in ℂ[∂] ⊗ Λ(N).
    pub fn divergence(&self, d: &Element, a: &Scalar) -> Element {
        let mut out = Element::zero();
        for (&(k, t), c) in d.terms() {
            match self.decode(k) {
                WGen::Function(f) => {
                    let idx = self.fn_index(f);
                    out.add_term(idx, t + 1, -c.clone());
                    if !a.is_zero() {
                        out.add_term(idx, t, c * a);
                    }
                }
                WGen::Field(m, i) => {
                    if let Some((s, p)) = m.partial(i) {
                        out.add_term(self.fn_index(p), t, m.parity().sign() * s * c);
                    }
                }
            }
        }
        out
    }

    /// `div((1 + ξ_1…ξ_N) D)`.
    pub fn twisted_divergence(&self, d: &Element) -> Element {
        let mut h = GrassmannElement::one(self.n);
        h.add_term(Monomial::top(self.n), one());
        self.divergence(&self.mul_function(&h, d), &Scalar::zero())
    }

    /// Residual of
    /// `div_a [D1 λ D2] = D1 λ (div_a D2) − (−1)^{p(D1)p(D2)} D2_{−λ−∂} (div_a D1)`
    /// for homogeneous `D1`, `D2`.
    pub fn div_identity_residual(&self, d1: &Element, d2: &Element, a: &Scalar) -> LambdaPoly {
        let alg = &self.algebra;
        let sign = match (alg.element_parity(d1), alg.element_parity(d2)) {
            (Some(p), Some(q)) => p.koszul(q),
            _ => one(),
        };
        let br = alg.bracket(d1, d2);
        let mut lhs = LambdaPoly::zero();
        for (&n, x) in br.coeffs() {
            lhs.add_at(n, &self.divergence(x, a), &one());
        }
        let first = self.action(d1, &self.divergence(d2, a));
        let second = self.action(d2, &self.divergence(d1, a)).substitute_neg();
        lhs.sub(&first).add(&second.scale(&sign))
    }

    /// Formats a module element of ℂ[∂] ⊗ Λ(N).
    pub fn format_module(&self, g: &Element) -> String {
        if g.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (&(k, t), c) in g.terms() {
            let d = match t {
                0 => String::new(),
                1 => "d ".into(),
                _ => format!("d^{t} "),
            };
            parts.push(format!(
                "{}*{d}{}",
                crate::scalar::format_scalar(c),
                self.monos[k]
            ));
        }
        parts.join(" + ")
    }
}

/// Report of the divergence identity over generator pairs.
#[derive(Clone, Debug)]
pub struct DivIdentityReport {
    pub a: Scalar,
    pub pairs_checked: usize,
    /// `(i, j, residual)` for failing pairs.
    pub failures: Vec<(usize, usize, LambdaPoly)>,
}

impl DivIdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the divergence identity on all generator pairs of W_N, or on a
/// seeded sample of `samples` pairs.
pub fn check_div_identity(
    n: usize,
    a: &Scalar,
    samples: Option<(usize, u64)>,
) -> Result<DivIdentityReport> {
    use rand::{Rng, SeedableRng};
    use rayon::prelude::*;

    let w = WFamily::new(n)?;
    let r = w.algebra.rank();
    let pairs: Vec<(usize, usize)> = match samples {
        None => (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect(),
        Some((count, seed)) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| (rng.gen_range(0..r), rng.gen_range(0..r)))
                .collect()
        }
    };
    let failures = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let res = w.div_identity_residual(&Element::gen(i), &Element::gen(j), a);
            (!res.is_zero()).then_some((i, j, res))
        })
        .collect();
    Ok(DivIdentityReport {
        a: a.clone(),
        pairs_checked: pairs.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{check_jacobi, check_skew, Triples};
    use crate::scalar::ratio;

    #[test]
    fn ranks() {
        for n in 0..=3 {
            assert_eq!(WFamily::new(n).unwrap().algebra.rank(), (n + 1) << n);
        }
    }

    #[test]
    fn w0_virasoro() {
        let w = WFamily::new(0).unwrap();
        let p = w.algebra.table(0, 0);
        assert_eq!(p.coeff(0), Element::term(0, 1, int(-1)));
        assert_eq!(p.coeff(1), Element::term(0, 0, int(-2)));
    }

    #[test]
    fn w1_odd_bracket() {
        // [∂_1 λ ξ1] = 1 + λ ξ1∂_1
        let w = WFamily::new(1).unwrap();
        let d1 = w.algebra.gen("(1)^1").unwrap();
        let x1 = w.algebra.gen("xi1").unwrap();
        let p = w.algebra.bracket(&d1, &x1);
        assert_eq!(p.coeff(0), w.algebra.gen("1").unwrap());
        assert_eq!(p.coeff(1), w.algebra.gen("(xi1)^1").unwrap());
    }

    #[test]
    fn axioms_small() {
        for n in 0..=2 {
            let w = WFamily::new(n).unwrap();
            assert!(check_skew(&w.algebra).passed());
            assert!(check_jacobi(&w.algebra, Triples::All).passed());
        }
    }

    #[test]
    fn module_action_examples() {
        let w = WFamily::new(2).unwrap();
        let x1 = GrassmannElement::var(2, 1).unwrap();
        let a = w.field(&x1, 1);
        let g = Element::gen(w.fn_index(Monomial::var(1)));
        assert_eq!(w.action(&a, &g), LambdaPoly::constant(g.clone()));
        let one_fn = w.function(&GrassmannElement::one(2));
        let p = w.action(&one_fn, &Element::gen(0));
        assert_eq!(p.coeff(0), Element::term(0, 1, int(-1)));
        assert_eq!(p.coeff(1), Element::term(0, 0, int(-1)));
    }

    #[test]
    fn divergence_examples() {
        let w = WFamily::new(2).unwrap();
        let one_fn = w.function(&GrassmannElement::one(2));
        assert_eq!(
            w.divergence(&one_fn, &Scalar::zero()),
            Element::term(0, 1, int(-1))
        );
        let euler = w
            .field(&GrassmannElement::var(2, 1).unwrap(), 1)
            .add(&w.field(&GrassmannElement::var(2, 2).unwrap(), 2));
        assert_eq!(
            w.divergence(&euler, &ratio(3, 7)),
            Element::term(0, 0, int(-2))
        );
    }

    #[test]
    fn div_identity_w1() {
        for a in [Scalar::zero(), ratio(3, 7)] {
            assert!(check_div_identity(1, &a, None).unwrap().passed());
        }
    }
}
