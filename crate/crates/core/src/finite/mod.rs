//! Finite-dimensional Lie superalgebras given by structure constants.

mod cartan;
mod cohomology;
mod forms;
mod matrix;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{axpy, Echelon, Matrix, SparseVec};
use crate::parity::Parity;
use crate::scalar::one;

pub use cartan::{
    cartan_superalgebra, divergence_free_fields, vf_apply, vf_bracket, vf_divergence, vf_format,
    vf_parity, vf_unit, vf_unit_id, CartanKind, VectorField,
};
pub use cohomology::{
    coboundary_space, cocycle_from_derivation, cocycle_residual, cohomologous, h2_finite,
    hamiltonian_top_derivation, FiniteCocycle2, FiniteH2,
};
pub use forms::{
    berezin_form_h, invariant_form, invariant_forms, odd_form_q, supertrace_form, BilinearForm,
};
pub use matrix::{matrix_superalgebra, MatrixKind};

/// Default dimension bound for the H² solver.
pub const DEFAULT_DIM_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Matrix(MatrixKind),
    Cartan(CartanKind),
    Other,
}

/// Matrix representatives of the basis inside gl(m|n); for quotients these
/// are representatives of the cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub m: usize,
    pub n: usize,
    pub mats: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLieSuperalgebra {
    name: String,
    basis: Vec<(String, Parity)>,
    table: Vec<SparseVec>,
    pub kind: Kind,
    pub rep: Option<MatrixRep>,
}

impl FiniteLieSuperalgebra {
    pub fn from_fn(
        name: impl Into<String>,
        basis: Vec<(String, Parity)>,
        mut f: impl FnMut(usize, usize) -> SparseVec,
    ) -> Self {
        let d = basis.len();
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(f(i, j));
            }
        }
        FiniteLieSuperalgebra {
            name: name.into(),
            basis,
            table,
            kind: Kind::Other,
            rep: None,
        }
    }

    pub fn abelian(name: impl Into<String>, basis: Vec<(String, Parity)>) -> Self {
        Self::from_fn(name, basis, |_, _| SparseVec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(String, Parity)] {
        &self.basis
    }

    pub fn id(&self, i: usize) -> &str {
        &self.basis[i].0
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].1
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|(b, _)| b == id)
            .ok_or_else(|| Error::UnknownGenerator(id.to_string()))
    }

    /// Even and odd dimensions.
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.basis.iter().filter(|(_, p)| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                axpy(&mut out, &(a * b), self.bracket_basis(i, j));
            }
        }
        out
    }

    pub fn vec_parity(&self, x: &SparseVec) -> Option<Parity> {
        let mut ps = x.keys().map(|&k| self.parity(k));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    /// Pairs violating `[x, y] = -(-1)^{p(x)p(y)} [y, x]`.
    pub fn anticommutativity_violations(&self) -> Vec<(usize, usize)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i..d {
                let mut s = self.bracket_basis(i, j).clone();
                axpy(
                    &mut s,
                    &self.parity(i).koszul(self.parity(j)),
                    self.bracket_basis(j, i),
                );
                if !s.is_empty() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `[x,[y,z]] - [[x,y],z] - (-1)^{p(x)p(y)} [y,[x,z]]` on basis vectors.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let ei = SparseVec::from([(i, one())]);
        let ej = SparseVec::from([(j, one())]);
        let ek = SparseVec::from([(k, one())]);
        let mut r = self.bracket(&ei, self.bracket_basis(j, k));
        axpy(
            &mut r,
            &-one(),
            &self.bracket(self.bracket_basis(i, j), &ek),
        );
        let sign = self.parity(i).koszul(self.parity(j));
        axpy(&mut r, &-sign, &self.bracket(&ej, self.bracket_basis(i, k)));
        r
    }

    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim();
        let triples: Vec<(usize, usize, usize)> = (0..d)
            .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
            .collect();
        triples
            .into_par_iter()
            .filter(|&(i, j, k)| !self.jacobi_residual(i, j, k).is_empty())
            .collect()
    }

    /// Checks parity compatibility, super-anticommutativity and Jacobi.
    pub fn verify(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let b = self.bracket_basis(i, j);
                if !b.is_empty() && self.vec_parity(b) != Some(self.parity(i) + self.parity(j)) {
                    return Err(Error::Contract(format!(
                        "{}: [{}, {}] has the wrong parity",
                        self.name,
                        self.id(i),
                        self.id(j)
                    )));
                }
            }
        }
        if let Some(&(i, j)) = self.anticommutativity_violations().first() {
            return Err(Error::Contract(format!(
                "{}: anticommutativity fails on ({}, {})",
                self.name,
                self.id(i),
                self.id(j)
            )));
        }
        if let Some(&(i, j, k)) = self.jacobi_violations().first() {
            return Err(Error::Contract(format!(
                "{}: Jacobi fails on ({}, {}, {})",
                self.name,
                self.id(i),
                self.id(j),
                self.id(k)
            )));
        }
        Ok(())
    }

    /// Matrix of `ad x` (column `j` is `[x, e_j]`).
    pub fn ad(&self, x: &SparseVec) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            let col = self.bracket(x, &SparseVec::from([(j, one())]));
            for (r, c) in col {
                m.set(r, j, c);
            }
        }
        m
    }
}

/// Subalgebra or quotient of a bracket computed on representatives: `elems`
/// spans the algebra, `center` (possibly empty) is quotiented out.
/// `bracket` computes brackets of representatives and `flatten` gives
/// coordinates for linear algebra.
pub(crate) fn induced<T: Sync>(
    name: &str,
    ids: Vec<(String, Parity)>,
    elems: &[T],
    center: &[T],
    bracket: impl Fn(&T, &T) -> T + Sync,
    flatten: impl Fn(&T) -> SparseVec + Sync,
) -> Result<(FiniteLieSuperalgebra, Vec<usize>)> {
    // complement: lexicographically first elements completing the center
    let mut ech = Echelon::tracking();
    for c in center {
        if ech.insert(flatten(c)).is_none() {
            return Err(Error::Contract(format!(
                "{name}: center is linearly dependent"
            )));
        }
    }
    // insertion index → position in the kept basis
    let mut slot: Vec<Option<usize>> = vec![None; center.len()];
    let mut kept = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        if ech.insert(flatten(e)).is_some() {
            slot.push(Some(kept.len()));
            kept.push(i);
        } else {
            slot.push(None);
        }
    }
    let basis: Vec<(String, Parity)> = kept.iter().map(|&i| ids[i].clone()).collect();
    let d = kept.len();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect();
    let rows: Vec<Result<SparseVec>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let v = bracket(&elems[kept[a]], &elems[kept[b]]);
            let combo = ech.express(&flatten(&v)).ok_or_else(|| {
                Error::Closure(format!(
                    "{name}: [{}, {}] leaves the span",
                    basis[a].0, basis[b].0
                ))
            })?;
            Ok(combo
                .into_iter()
                .filter_map(|(k, c)| slot[k].map(|pos| (pos, c)))
                .collect())
        })
        .collect();
    let mut table = Vec::with_capacity(d * d);
    for r in rows {
        table.push(r?);
    }
    let mut it = table.into_iter();
    let g = FiniteLieSuperalgebra::from_fn(name, basis, |_, _| it.next().unwrap_or_default());
    Ok((g, kept))
}
