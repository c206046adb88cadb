//! Finite Lie conformal superalgebras presented as free ℂ[∂]-modules with a
//! λ-bracket table on generators.

mod checks;
mod element;
mod embed;
mod ideal;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::scalar::{binomial, factorial, format_scalar, one, Scalar};

pub use checks::{
    check_jacobi, check_skew, jacobi_residual, JacobiReport, JacobiViolation, SkewReport,
    SkewViolation, Triples,
};
pub use element::{BivarPoly, Element, LambdaPoly, StructurePoly};
pub use embed::{Expresser, Subalgebra};
pub use ideal::{derived_subalgebra, ideal_closure, same_span, DerivedSubalgebra, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub parity: Parity,
    pub weight: Option<Scalar>,
}

impl Generator {
    pub fn new(id: impl Into<String>, parity: Parity) -> Self {
        Generator {
            id: id.into(),
            parity,
            weight: None,
        }
    }
}

/// A rank-`r` Lie conformal superalgebra. Only brackets of generators are
/// stored; everything else follows from sesquilinearity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalAlgebra {
    name: String,
    generators: Vec<Generator>,
    table: Vec<LambdaPoly>,
}

impl ConformalAlgebra {
    /// Builds the table from `f(i, j) = [e_i λ e_j]`.
    pub fn from_fn(
        name: impl Into<String>,
        generators: Vec<Generator>,
        mut f: impl FnMut(usize, usize) -> LambdaPoly,
    ) -> Self {
        let r = generators.len();
        let mut table = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                table.push(f(i, j));
            }
        }
        ConformalAlgebra {
            name: name.into(),
            generators,
            table,
        }
    }

    /// Builds from structure polynomials; absent pairs bracket to zero.
    pub fn from_structure(
        name: impl Into<String>,
        generators: Vec<Generator>,
        brackets: &BTreeMap<(usize, usize), StructurePoly>,
    ) -> Result<Self> {
        let r = generators.len();
        for (&(i, j), p) in brackets {
            if i >= r || j >= r {
                return Err(Error::Index(format!("bracket ({i}, {j}) with rank {r}")));
            }
            if let Some(&(_, _, k)) = p.terms.keys().find(|&&(_, _, k)| k >= r) {
                return Err(Error::Index(format!("target generator {k} with rank {r}")));
            }
        }
        Ok(Self::from_fn(name, generators, |i, j| {
            brackets
                .get(&(i, j))
                .map(StructurePoly::to_lambda)
                .unwrap_or_default()
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.generators[i].parity
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.id == id)
            .ok_or_else(|| Error::UnknownGenerator(id.to_string()))
    }

    pub fn gen(&self, id: &str) -> Result<Element> {
        Ok(Element::gen(self.index_of(id)?))
    }

    pub fn set_weights(&mut self, weights: Vec<Option<Scalar>>) {
        for (g, w) in self.generators.iter_mut().zip(weights) {
            g.weight = w;
        }
    }

    /// `[e_i λ e_j]`.
    pub fn table(&self, i: usize, j: usize) -> &LambdaPoly {
        &self.table[i * self.rank() + j]
    }

    pub fn structure(&self, i: usize, j: usize) -> StructurePoly {
        StructurePoly::from_lambda(self.table(i, j))
    }

    pub fn validate(&self, x: &Element) -> Result<()> {
        match x.terms().keys().find(|&&(k, _)| k >= self.rank()) {
            Some(&(k, _)) => Err(Error::Index(format!("generator {k} in {}", self.name))),
            None => Ok(()),
        }
    }

    /// `[x λ y]`, extended from the table by sesquilinearity.
    pub fn bracket(&self, x: &Element, y: &Element) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&(i, s), c) in x.terms() {
            for (&(j, t), d) in y.terms() {
                let p = self.table(i, j);
                if p.is_zero() {
                    continue;
                }
                out.add_scaled(&p.sesqui(s, t), &(c * d));
            }
        }
        out
    }

    pub fn checked_bracket(&self, x: &Element, y: &Element) -> Result<LambdaPoly> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.bracket(x, y))
    }

    /// `x_(n) y = n! · [λ^n] [x λ y]`.
    pub fn nth_product(&self, x: &Element, n: u32, y: &Element) -> Element {
        self.bracket(x, y).coeff(n).scale(&factorial(n))
    }

    /// `[P_{λ+μ} c]` where `P = Σ λ^n x_n`, as a polynomial in (λ, μ).
    pub fn bracket_shifted(&self, p: &LambdaPoly, c: &Element) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&n, x) in p.coeffs() {
            for (&m, z) in self.bracket(x, c).coeffs() {
                for q in 0..=m {
                    out.add_at(n + q, m - q, z, &binomial(m, q));
                }
            }
        }
        out
    }

    pub fn element_parity(&self, x: &Element) -> Option<Parity> {
        let mut ps = x.generators().map(|k| self.parity(k));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    pub fn max_lambda_degree(&self) -> u32 {
        self.table
            .iter()
            .filter_map(LambdaPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn max_dpow(&self) -> u32 {
        self.table
            .iter()
            .flat_map(|p| p.coeffs().values().map(Element::max_dpow))
            .max()
            .unwrap_or(0)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(LambdaPoly::is_zero)
    }

    pub fn format_element(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (&(k, t), c)) in x.terms().iter().enumerate() {
            let neg = c < &Scalar::zero();
            if n > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let a = if neg { -c.clone() } else { c.clone() };
            if !a.is_one() {
                let _ = write!(out, "{}*", format_scalar(&a));
            }
            if t == 1 {
                out.push_str("d ");
            } else if t > 1 {
                let _ = write!(out, "d^{t} ");
            }
            let _ = write!(out, "[{}]", self.generators[k].id);
        }
        out
    }

    pub fn format_lambda(&self, p: &LambdaPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = p
            .coeffs()
            .iter()
            .rev()
            .map(|(&n, x)| format!("λ^{n} ({})", self.format_element(x)))
            .collect();
        parts.join(" + ")
    }

    pub fn format_bivar(&self, p: &BivarPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = p
            .coeffs()
            .iter()
            .map(|(&(m, n), x)| format!("λ^{m} μ^{n} ({})", self.format_element(x)))
            .collect();
        parts.join(" + ")
    }
}

/// Constant-in-λ polynomial with a single generator term, convenient in
/// constructors.
pub fn poly_term(n: u32, k: usize, t: u32, c: Scalar) -> LambdaPoly {
    LambdaPoly::monomial(n, Element::term(k, t, c))
}

/// `[e λ e] = -(∂ + 2λ) e` on a single even generator.
pub fn virasoro_poly(k: usize) -> LambdaPoly {
    let mut p = poly_term(0, k, 1, -one());
    p.add_at(1, &Element::gen(k), &Scalar::from_integer((-2).into()));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn w0() -> ConformalAlgebra {
        ConformalAlgebra::from_fn("W0", vec![Generator::new("1", Parity::Even)], |_, _| {
            virasoro_poly(0)
        })
    }

    #[test]
    fn w0_brackets_and_products() {
        let a = w0();
        let e = Element::gen(0);
        assert_eq!(a.bracket(&e, &e), virasoro_poly(0));

        // [∂e λ e] = λ(∂ + 2λ) e
        let mut expected = poly_term(1, 0, 1, int(1));
        expected.add_at(2, &e, &int(2));
        assert_eq!(a.bracket(&e.partial(1), &e), expected);
        assert!(a.bracket(&e, &Element::zero()).is_zero());

        assert_eq!(a.nth_product(&e, 0, &e), Element::term(0, 1, int(-1)));
        assert_eq!(a.nth_product(&e, 1, &e), Element::term(0, 0, int(-2)));
        assert!(a.nth_product(&e, 2, &e).is_zero());
    }

    #[test]
    fn sesquilinearity_on_derivatives() {
        let a = w0();
        let x = Element::from_terms([((0, 0), int(2)), ((0, 2), int(-1))]);
        let y = Element::from_terms([((0, 1), int(3))]);
        let lhs = a.bracket(&x.partial(1), &y);
        let rhs = a.bracket(&x, &y).sesqui(1, 0);
        assert_eq!(lhs, rhs);
        let lhs = a.bracket(&x, &y.partial(1));
        let rhs = a.bracket(&x, &y).sesqui(0, 1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unknown_generators_are_rejected() {
        let a = w0();
        assert!(a.index_of("xi1").is_err());
        assert!(a
            .checked_bracket(&Element::gen(3), &Element::gen(0))
            .is_err());
    }

    #[test]
    fn formatting() {
        let a = w0();
        assert_eq!(
            a.format_lambda(&virasoro_poly(0)),
            "λ^1 (-2*[1]) + λ^0 (-d [1])"
        );
    }
}
