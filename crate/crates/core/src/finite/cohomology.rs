//! Second cohomology with trivial coefficients by exact linear algebra.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grassmann::{parse_monomial, GrassmannElement, Monomial};
use crate::linalg::{add_entry, Echelon, Matrix, SparseVec};
use crate::parity::Parity;
use crate::scalar::{one, Scalar};

use super::{BilinearForm, CartanKind, FiniteLieSuperalgebra, Kind};

/// Skew-supersymmetric bilinear map `α(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCocycle2 {
    pub matrix: Matrix,
}

impl FiniteCocycle2 {
    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> Scalar {
        let mut s = Scalar::zero();
        for (&i, a) in x {
            for (&j, b) in y {
                s += a * b * self.matrix.get(i, j);
            }
        }
        s
    }

    pub fn parity(&self, g: &FiniteLieSuperalgebra) -> Option<Parity> {
        let d = g.dim();
        let mut ps = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.matrix.get(i, j).is_zero())
            .map(|(i, j)| g.parity(i) + g.parity(j));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }
}

/// Coordinates of skew-supersymmetric forms: one unknown per pair `i < j`
/// and per odd diagonal entry.
struct Unknowns {
    d: usize,
    var: Vec<Option<(usize, Scalar)>>,
    count: usize,
}

impl Unknowns {
    fn new(g: &FiniteLieSuperalgebra) -> Self {
        let d = g.dim();
        let mut var = vec![None; d * d];
        let mut count = 0;
        for i in 0..d {
            for j in i..d {
                if i == j && !g.parity(i).is_odd() {
                    continue;
                }
                var[i * d + j] = Some((count, one()));
                if i != j {
                    var[j * d + i] = Some((count, -g.parity(i).koszul(g.parity(j))));
                }
                count += 1;
            }
        }
        Unknowns { d, var, count }
    }

    /// Adds `c · α(x, e_k)` to `row`.
    fn add_left(&self, row: &mut SparseVec, x: &SparseVec, k: usize, c: &Scalar) {
        for (&a, v) in x {
            if let Some((u, s)) = &self.var[a * self.d + k] {
                add_entry(row, *u, v * s * c);
            }
        }
    }

    /// Adds `c · α(e_k, x)` to `row`.
    fn add_right(&self, row: &mut SparseVec, k: usize, x: &SparseVec, c: &Scalar) {
        for (&a, v) in x {
            if let Some((u, s)) = &self.var[k * self.d + a] {
                add_entry(row, *u, v * s * c);
            }
        }
    }

    fn to_matrix(&self, v: &SparseVec) -> Matrix {
        let mut m = Matrix::zeros(self.d, self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                if let Some((u, s)) = &self.var[i * self.d + j] {
                    if let Some(x) = v.get(u) {
                        m.set(i, j, x * s);
                    }
                }
            }
        }
        m
    }

    fn from_matrix(&self, m: &Matrix) -> SparseVec {
        let mut v = SparseVec::new();
        for i in 0..self.d {
            for j in i..self.d {
                if let Some((u, _)) = &self.var[i * self.d + j] {
                    let x = m.get(i, j);
                    if !x.is_zero() {
                        v.insert(*u, x.clone());
                    }
                }
            }
        }
        v
    }
}

/// `α([x,y],z) - α(x,[y,z]) + (-1)^{p(x)p(y)} α(y,[x,z])` as a linear form
/// in the unknowns.
fn cocycle_row(g: &FiniteLieSuperalgebra, u: &Unknowns, i: usize, j: usize, k: usize) -> SparseVec {
    let mut row = SparseVec::new();
    u.add_left(&mut row, g.bracket_basis(i, j), k, &one());
    u.add_right(&mut row, i, g.bracket_basis(j, k), &-one());
    u.add_right(
        &mut row,
        j,
        g.bracket_basis(i, k),
        &g.parity(i).koszul(g.parity(j)),
    );
    row
}

/// Basis triples where the cocycle equation fails, plus pairs where the
/// matrix is not skew-supersymmetric.
pub fn cocycle_residual(
    g: &FiniteLieSuperalgebra,
    alpha: &FiniteCocycle2,
) -> (Vec<(usize, usize)>, Vec<(usize, usize, usize)>) {
    let d = g.dim();
    let mut skew = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let s = -g.parity(i).koszul(g.parity(j));
            if *alpha.matrix.get(j, i) != s * alpha.matrix.get(i, j) {
                skew.push((i, j));
            }
        }
    }
    let triples: Vec<(usize, usize, usize)> = (0..d)
        .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
        .collect();
    let bad = triples
        .into_par_iter()
        .filter(|&(i, j, k)| {
            let ek = SparseVec::from([(k, one())]);
            let ei = SparseVec::from([(i, one())]);
            let ej = SparseVec::from([(j, one())]);
            let r = alpha.eval(g.bracket_basis(i, j), &ek) - alpha.eval(&ei, g.bracket_basis(j, k))
                + g.parity(i).koszul(g.parity(j)) * alpha.eval(&ej, g.bracket_basis(i, k));
            !r.is_zero()
        })
        .collect();
    (skew, bad)
}

/// `α_f(x, y) = f([x, y])` for `f` running over the dual basis.
pub fn coboundary_space(g: &FiniteLieSuperalgebra) -> Vec<FiniteCocycle2> {
    let d = g.dim();
    (0..d)
        .map(|k| {
            let mut m = Matrix::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    if let Some(c) = g.bracket_basis(i, j).get(&k) {
                        m.set(i, j, c.clone());
                    }
                }
            }
            FiniteCocycle2 { matrix: m }
        })
        .filter(|a| !a.matrix.is_zero())
        .collect()
}

#[derive(Clone, Debug)]
pub struct FiniteH2 {
    pub dim: usize,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub representatives: Vec<FiniteCocycle2>,
}

pub fn h2_finite(g: &FiniteLieSuperalgebra, dim_bound: usize) -> Result<FiniteH2> {
    let d = g.dim();
    if d > dim_bound {
        return Err(Error::SizeBound(format!(
            "{} has dimension {d} > {dim_bound}",
            g.name()
        )));
    }
    let u = Unknowns::new(g);
    let triples: Vec<(usize, usize, usize)> = (0..d)
        .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
        .collect();
    let rows: Vec<SparseVec> = triples
        .par_iter()
        .map(|&(i, j, k)| cocycle_row(g, &u, i, j, k))
        .collect();
    let mut ech = Echelon::new();
    for r in rows {
        if !r.is_empty() {
            ech.insert(r);
        }
    }
    let z = ech.null_space(u.count);
    let mut span = Echelon::new();
    let mut coboundary_dim = 0;
    for b in coboundary_space(g) {
        if span.insert(u.from_matrix(&b.matrix)).is_some() {
            coboundary_dim += 1;
        }
    }
    let mut reps = Vec::new();
    for v in &z {
        if span.insert(v.clone()).is_some() {
            reps.push(FiniteCocycle2 {
                matrix: u.to_matrix(v),
            });
        }
    }
    let even_dim = reps
        .iter()
        .filter(|a| a.parity(g) == Some(Parity::Even))
        .count();
    Ok(FiniteH2 {
        dim: reps.len(),
        even_dim,
        odd_dim: reps.len() - even_dim,
        cocycle_dim: z.len(),
        coboundary_dim,
        representatives: reps,
    })
}

/// `c` with `a - c·b` a coboundary, if it exists (`b` nontrivial), or
/// `Some(0)` when both are trivial.
pub fn cohomologous(
    g: &FiniteLieSuperalgebra,
    a: &FiniteCocycle2,
    b: &FiniteCocycle2,
) -> Option<Scalar> {
    let u = Unknowns::new(g);
    let span = Echelon::from_vectors(
        &coboundary_space(g)
            .iter()
            .map(|c| u.from_matrix(&c.matrix))
            .collect::<Vec<_>>(),
    );
    let ra = span.reduce(&u.from_matrix(&a.matrix));
    let rb = span.reduce(&u.from_matrix(&b.matrix));
    if rb.is_empty() {
        return ra.is_empty().then(Scalar::zero);
    }
    let (k, lead) = rb.iter().next()?;
    let c = ra.get(k).cloned().unwrap_or_default() / lead;
    let scaled: SparseVec = rb
        .iter()
        .map(|(i, x)| (*i, x * &c))
        .filter(|(_, x)| !x.is_zero())
        .collect();
    (scaled == ra).then_some(c)
}

/// Parity of a homogeneous endomorphism (column `j` is `D(e_j)`).
fn endo_parity(g: &FiniteLieSuperalgebra, m: &Matrix) -> Option<Parity> {
    let mut ps = (0..g.dim())
        .flat_map(|j| m.column(j).into_keys().map(move |i| (i, j)))
        .map(|(i, j)| g.parity(i) + g.parity(j));
    let first = ps.next().unwrap_or(Parity::Even);
    ps.all(|p| p == first).then_some(first)
}

/// `α_D(x, y) = (Dx, y)` for a derivation `D` skew with respect to `form`.
pub fn cocycle_from_derivation(
    g: &FiniteLieSuperalgebra,
    dmat: &Matrix,
    form: &BilinearForm,
) -> Result<FiniteCocycle2> {
    let d = g.dim();
    let pd = endo_parity(g, dmat)
        .ok_or_else(|| Error::Contract("endomorphism is not homogeneous".into()))?;
    let apply = |x: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, c) in x {
            crate::linalg::axpy(&mut out, c, &dmat.column(j));
        }
        out
    };
    for i in 0..d {
        for j in 0..d {
            let ei = SparseVec::from([(i, one())]);
            let ej = SparseVec::from([(j, one())]);
            let lhs = apply(g.bracket_basis(i, j));
            let mut rhs = g.bracket(&apply(&ei), &ej);
            crate::linalg::axpy(
                &mut rhs,
                &pd.koszul(g.parity(i)),
                &g.bracket(&ei, &apply(&ej)),
            );
            if lhs != rhs {
                return Err(Error::Contract(format!(
                    "not a derivation on ({}, {})",
                    g.id(i),
                    g.id(j)
                )));
            }
            let s =
                form.eval(&apply(&ei), &ej) + pd.koszul(g.parity(i)) * form.eval(&ei, &apply(&ej));
            if !s.is_zero() {
                return Err(Error::Contract(format!(
                    "not skew for the form on ({}, {})",
                    g.id(i),
                    g.id(j)
                )));
            }
        }
    }
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        let di = dmat.column(i);
        for j in 0..d {
            let s: Scalar = di.iter().map(|(a, c)| c * form.matrix.get(*a, j)).sum();
            m.set(i, j, s);
        }
    }
    let alpha = FiniteCocycle2 { matrix: m };
    let (skew, bad) = cocycle_residual(g, &alpha);
    if let Some(&(i, j)) = skew.first() {
        return Err(Error::Contract(format!(
            "α_D not skew on ({}, {})",
            g.id(i),
            g.id(j)
        )));
    }
    if let Some(&(i, j, k)) = bad.first() {
        return Err(Error::Contract(format!(
            "α_D fails the cocycle equation on ({}, {}, {})",
            g.id(i),
            g.id(j),
            g.id(k)
        )));
    }
    Ok(alpha)
}

/// `D = Σ_i (∂_i ξ_1⋯ξ_n) ∂_i` acting on H(n).
pub fn hamiltonian_top_derivation(g: &FiniteLieSuperalgebra) -> Result<Matrix> {
    let n = match g.kind {
        Kind::Cartan(CartanKind::H(n)) => n,
        _ => {
            return Err(Error::InvalidParameters(format!(
                "{} is not H(n)",
                g.name()
            )))
        }
    };
    let top = GrassmannElement::monomial(n, Monomial::top(n), one());
    let d = g.dim();
    let mut m = Matrix::zeros(d, d);
    for j in 0..d {
        let f = GrassmannElement::monomial(n, parse_monomial(g.id(j)).expect("monomial id"), one());
        let mut image = GrassmannElement::zero(n);
        for i in 1..=n {
            image = image.add(&top.odd_partial(i)?.mul(&f.odd_partial(i)?)?)?;
        }
        for (mono, c) in image.terms() {
            if mono.degree() == 0 {
                continue;
            }
            let row = g
                .index_of(&mono.to_string())
                .map_err(|_| Error::Contract("D leaves Λ(n)′".into()))?;
            m.set(row, j, c.clone());
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{
        berezin_form_h, cartan_superalgebra, invariant_form, matrix_superalgebra, MatrixKind,
    };

    #[test]
    fn sl2_has_no_h2() {
        let g = matrix_superalgebra(MatrixKind::Sl { m: 2, n: 0 }).unwrap();
        assert_eq!(h2_finite(&g, 64).unwrap().dim, 0);
    }

    #[test]
    fn q2_has_one_dimensional_h2() {
        let g = matrix_superalgebra(MatrixKind::Q { n: 2 }).unwrap();
        let h = h2_finite(&g, 64).unwrap();
        assert_eq!(h.dim, 1);
        assert_eq!(h.even_dim, 1);
    }

    #[test]
    fn inner_derivations_give_coboundaries() {
        let g = matrix_superalgebra(MatrixKind::Sl { m: 2, n: 1 }).unwrap();
        let form = invariant_form(&g).unwrap();
        for z in 0..g.dim() {
            if g.parity(z).is_odd() {
                continue;
            }
            let ad = g.ad(&SparseVec::from([(z, one())]));
            let alpha = cocycle_from_derivation(&g, &ad, &form).unwrap();
            let zero = FiniteCocycle2 {
                matrix: Matrix::zeros(g.dim(), g.dim()),
            };
            assert_eq!(cohomologous(&g, &alpha, &zero), Some(Scalar::zero()));
        }
    }

    #[test]
    fn zero_derivation_gives_zero_cocycle() {
        let g = matrix_superalgebra(MatrixKind::Sl { m: 2, n: 0 }).unwrap();
        let form = invariant_form(&g).unwrap();
        let alpha = cocycle_from_derivation(&g, &Matrix::zeros(3, 3), &form).unwrap();
        assert!(alpha.matrix.is_zero());
    }

    #[test]
    fn non_derivation_is_rejected() {
        let g = matrix_superalgebra(MatrixKind::Sl { m: 2, n: 0 }).unwrap();
        let form = invariant_form(&g).unwrap();
        assert!(cocycle_from_derivation(&g, &Matrix::identity(3), &form).is_err());
    }

    #[test]
    fn h5_top_derivation_is_nontrivial() {
        let g = cartan_superalgebra(CartanKind::H(5)).unwrap();
        let form = berezin_form_h(&g).unwrap();
        let dmat = hamiltonian_top_derivation(&g).unwrap();
        let alpha = cocycle_from_derivation(&g, &dmat, &form).unwrap();
        let h = h2_finite(&g, 64).unwrap();
        assert_eq!(h.dim, 1);
        let c = cohomologous(&g, &h.representatives[0], &alpha).unwrap();
        assert!(!c.is_zero());
    }
}
