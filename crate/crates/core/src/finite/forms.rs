//! Supersymmetric invariant bilinear forms.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grassmann::parse_monomial;
use crate::grassmann::GrassmannElement;
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::parity::Parity;
use crate::scalar::one;

use super::matrix::{supertrace, MatrixKind};
use super::{CartanKind, FiniteLieSuperalgebra, Kind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub matrix: Matrix,
    pub parity: Parity,
}

impl BilinearForm {
    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> crate::scalar::Scalar {
        let mut s = crate::scalar::zero();
        for (&i, a) in x {
            for (&j, b) in y {
                s += a * b * self.matrix.get(i, j);
            }
        }
        s
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rank() == self.matrix.rows
    }

    /// Basis pairs violating supersymmetry or the parity condition.
    pub fn symmetry_violations(&self, g: &FiniteLieSuperalgebra) -> Vec<(usize, usize)> {
        let d = g.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let a = self.matrix.get(i, j);
                let b = self.matrix.get(j, i);
                let s = g.parity(i).koszul(g.parity(j));
                let parity_ok = a.is_zero() || g.parity(i) + g.parity(j) == self.parity;
                if *a != s * b || !parity_ok {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Basis triples violating `([x, y], z) = (x, [y, z])`.
    pub fn invariance_violations(&self, g: &FiniteLieSuperalgebra) -> Vec<(usize, usize, usize)> {
        let d = g.dim();
        let mut out = Vec::new();
        for i in 0..d {
            let ei = SparseVec::from([(i, one())]);
            for j in 0..d {
                for k in 0..d {
                    let ek = SparseVec::from([(k, one())]);
                    let lhs = self.eval(g.bracket_basis(i, j), &ek);
                    let rhs = self.eval(&ei, g.bracket_basis(j, k));
                    if lhs != rhs {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    fn verified(self, g: &FiniteLieSuperalgebra) -> Result<Self> {
        if let Some(&(i, j)) = self.symmetry_violations(g).first() {
            return Err(Error::Contract(format!(
                "{}: form not supersymmetric at ({}, {})",
                g.name(),
                g.id(i),
                g.id(j)
            )));
        }
        if let Some(&(i, j, k)) = self.invariance_violations(g).first() {
            return Err(Error::Contract(format!(
                "{}: form not invariant at ({}, {}, {})",
                g.name(),
                g.id(i),
                g.id(j),
                g.id(k)
            )));
        }
        if self.matrix.is_zero() {
            return Err(Error::NoForm(format!(
                "{}: the form vanishes identically",
                g.name()
            )));
        }
        Ok(self)
    }
}

fn gram(
    g: &FiniteLieSuperalgebra,
    parity: Parity,
    f: impl Fn(usize, usize) -> crate::scalar::Scalar,
) -> BilinearForm {
    let d = g.dim();
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, f(i, j));
        }
    }
    BilinearForm { matrix: m, parity }
}

/// `(x, y) = str(XY)` on gl, sl and psl.
pub fn supertrace_form(g: &FiniteLieSuperalgebra) -> Result<BilinearForm> {
    let rep = match (&g.kind, &g.rep) {
        (Kind::Matrix(MatrixKind::Q { .. }), _) => {
            return Err(Error::NoForm(format!(
                "{}: the supertrace form vanishes; use the odd form",
                g.name()
            )))
        }
        (Kind::Matrix(_), Some(rep)) => rep,
        _ => {
            return Err(Error::NoForm(format!(
                "{}: not a matrix superalgebra",
                g.name()
            )))
        }
    };
    gram(g, Parity::Even, |i, j| {
        supertrace(rep.m, &rep.mats[i].mul(&rep.mats[j]))
    })
    .verified(g)
}

/// `(x, y) = tr B` for `XY = (A B; B A)` on Q(n).
pub fn odd_form_q(g: &FiniteLieSuperalgebra) -> Result<BilinearForm> {
    let (n, rep) = match (&g.kind, &g.rep) {
        (Kind::Matrix(MatrixKind::Q { n }), Some(rep)) => (*n, rep),
        _ => {
            return Err(Error::NoForm(format!(
                "{}: the odd form is defined on Q(n) only",
                g.name()
            )))
        }
    };
    gram(g, Parity::Odd, |i, j| {
        let p = rep.mats[i].mul(&rep.mats[j]);
        (0..n).map(|a| p.get(a, a + n).clone()).sum()
    })
    .verified(g)
}

/// `(f, g) = ∫ f g` on H(n).
pub fn berezin_form_h(g: &FiniteLieSuperalgebra) -> Result<BilinearForm> {
    let n = match g.kind {
        Kind::Cartan(CartanKind::H(n)) => n,
        _ => {
            return Err(Error::NoForm(format!(
                "{}: the Berezin form is defined on H(n) only",
                g.name()
            )))
        }
    };
    let elems: Vec<GrassmannElement> = g
        .basis()
        .iter()
        .map(|(id, _)| {
            GrassmannElement::monomial(n, parse_monomial(id).expect("monomial id"), one())
        })
        .collect();
    gram(g, Parity::from_degree(n), |i, j| {
        elems[i].berezin_form(&elems[j]).expect("same ambient")
    })
    .verified(g)
}

/// The form canonically attached to the algebra, if any.
pub fn invariant_form(g: &FiniteLieSuperalgebra) -> Result<BilinearForm> {
    match g.kind {
        Kind::Matrix(MatrixKind::Q { .. }) => odd_form_q(g),
        Kind::Matrix(_) => supertrace_form(g),
        Kind::Cartan(CartanKind::H(_)) => berezin_form_h(g),
        _ => Err(Error::NoForm(format!(
            "{} carries no nondegenerate invariant form",
            g.name()
        ))),
    }
}

/// Basis of all supersymmetric invariant forms of the given parity, by
/// direct linear solve.
pub fn invariant_forms(g: &FiniteLieSuperalgebra, parity: Parity) -> Vec<BilinearForm> {
    let d = g.dim();
    // unknowns: B(i, j) for i ≤ j of matching parity, (x, x) = 0 for odd x
    let mut var = vec![None; d * d];
    let mut count = 0;
    for i in 0..d {
        for j in i..d {
            if g.parity(i) + g.parity(j) != parity || (i == j && g.parity(i).is_odd()) {
                continue;
            }
            var[i * d + j] = Some((count, one()));
            if i != j {
                var[j * d + i] = Some((count, g.parity(i).koszul(g.parity(j))));
            }
            count += 1;
        }
    }
    let add = |row: &mut SparseVec, x: &SparseVec, k: usize, sign: &crate::scalar::Scalar| {
        for (&a, c) in x {
            if let Some((v, s)) = &var[a * d + k] {
                crate::linalg::add_entry(row, *v, c * s * sign);
            }
        }
    };
    let mut ech = Echelon::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                // ([e_i, e_j], e_k) - (e_i, [e_j, e_k]) with (x, y) = ± (y, x)
                let mut row = SparseVec::new();
                add(&mut row, g.bracket_basis(i, j), k, &one());
                for (&b, c) in g.bracket_basis(j, k) {
                    if let Some((v, s)) = &var[i * d + b] {
                        crate::linalg::add_entry(&mut row, *v, -(c * s));
                    }
                }
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    ech.null_space(count)
        .into_iter()
        .map(|sol| {
            gram(g, parity, |i, j| match &var[i * d + j] {
                Some((v, s)) => sol.get(v).map(|x| x * s).unwrap_or_default(),
                None => crate::scalar::zero(),
            })
        })
        .collect()
}
