//! W(N), S(N) and H(n) built on the exterior algebra.

use crate::error::{Error, Result};
use crate::grassmann::{monomials, GrassmannElement, Monomial, MAX_ODD_VARS};
use crate::linalg::{Echelon, SparseVec};
use crate::parity::Parity;
use num_traits::{One, Zero};

use crate::scalar::{format_scalar, one};

use super::{induced, FiniteLieSuperalgebra, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartanKind {
    W(usize),
    S(usize),
    H(usize),
}

/// `Σ P_i ∂_i`, stored as the coefficient list `(P_1, …, P_N)`.
pub type VectorField = Vec<GrassmannElement>;

pub fn vf_parity(d: &VectorField) -> Option<Parity> {
    let mut ps = d
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.parity().map(|q| q + Parity::Odd));
    let first = ps.next()?;
    if ps.all(|q| q == first) {
        first
    } else {
        None
    }
}

/// `D(g) = Σ P_i ∂_i g`.
pub fn vf_apply(d: &VectorField, g: &GrassmannElement) -> GrassmannElement {
    let mut out = GrassmannElement::zero(g.ambient());
    for (i, p) in d.iter().enumerate() {
        let term = p
            .mul(&g.odd_partial(i + 1).expect("index in range"))
            .expect("same ambient");
        out = out.add(&term).expect("same ambient");
    }
    out
}

/// Supercommutator of homogeneous vector fields.
pub fn vf_bracket(a: &VectorField, b: &VectorField) -> VectorField {
    let sign = match (vf_parity(a), vf_parity(b)) {
        (Some(p), Some(q)) => p.koszul(q),
        _ => one(),
    };
    a.iter()
        .zip(b)
        .map(|(pa, pb)| {
            vf_apply(a, pb)
                .sub(&vf_apply(b, pa).scale(&sign))
                .expect("same ambient")
        })
        .collect()
}

/// Finite divergence `Σ (-1)^{p(P_i)} ∂_i P_i`.
pub fn vf_divergence(d: &VectorField) -> GrassmannElement {
    let n = d.first().map(GrassmannElement::ambient).unwrap_or(0);
    let mut out = GrassmannElement::zero(n);
    for (i, p) in d.iter().enumerate() {
        for (m, c) in p.terms() {
            let term = GrassmannElement::monomial(n, *m, m.parity().sign() * c);
            out = out
                .add(&term.odd_partial(i + 1).expect("index in range"))
                .expect("same ambient");
        }
    }
    out
}

pub fn vf_flatten(d: &VectorField) -> SparseVec {
    let n = d.first().map(GrassmannElement::ambient).unwrap_or(0);
    let mut out = SparseVec::new();
    for (i, p) in d.iter().enumerate() {
        for (m, c) in p.terms() {
            out.insert((i << n) + m.0 as usize, c.clone());
        }
    }
    out
}

/// `f ∂_i` (1-based `i`).
pub fn vf_unit(n: usize, f: Monomial, i: usize) -> VectorField {
    (1..=n)
        .map(|j| {
            if j == i {
                GrassmannElement::monomial(n, f, one())
            } else {
                GrassmannElement::zero(n)
            }
        })
        .collect()
}

/// Identifier `(f)^i` for `f ∂_i`.
pub fn vf_unit_id(f: Monomial, i: usize) -> String {
    format!("({f})^{i}")
}

fn w_units(n: usize) -> (Vec<VectorField>, Vec<(String, Parity)>) {
    let mut elems = Vec::new();
    let mut ids = Vec::new();
    for f in monomials(n) {
        for i in 1..=n {
            elems.push(vf_unit(n, f, i));
            ids.push((vf_unit_id(f, i), f.parity() + Parity::Odd));
        }
    }
    (elems, ids)
}

/// Human-readable form of a vector field, e.g. `(xi1)^1-(xi2)^2`.
pub fn vf_format(d: &VectorField) -> String {
    let mut out = String::new();
    for (i, p) in d.iter().enumerate() {
        for (m, c) in p.terms() {
            let unit = vf_unit_id(*m, i + 1);
            let coeff = if c.is_one() {
                String::new()
            } else if (-c).is_one() {
                "-".to_string()
            } else {
                format!("{}*", format_scalar(c))
            };
            if !out.is_empty() && !coeff.starts_with('-') {
                out.push('+');
            }
            out.push_str(&coeff);
            out.push_str(&unit);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Basis of S(N): the kernel of the finite divergence on W(N), as
/// `(id, parity, field)`.
pub fn divergence_free_fields(n: usize) -> Result<Vec<(String, Parity, VectorField)>> {
    if n < 2 {
        return Err(Error::InvalidParameters("S(N) needs N ≥ 2".into()));
    }
    if n > MAX_ODD_VARS {
        return Err(Error::SizeBound(format!(
            "N = {n} exceeds the cap {MAX_ODD_VARS}"
        )));
    }
    let (units, _) = w_units(n);
    let mut rows = Echelon::new();
    let divs: Vec<GrassmannElement> = units.iter().map(vf_divergence).collect();
    for m in monomials(n) {
        let row: SparseVec = divs
            .iter()
            .enumerate()
            .filter_map(|(col, d)| {
                let c = d.coeff(m);
                (!c.is_zero()).then_some((col, c))
            })
            .collect();
        rows.insert(row);
    }
    let mut out = Vec::new();
    for v in rows.null_space(units.len()) {
        let mut d: VectorField = vec![GrassmannElement::zero(n); n];
        for (&col, c) in &v {
            for (slot, p) in d.iter_mut().zip(&units[col]) {
                *slot = slot.add(&p.scale(c))?;
            }
        }
        let parity = vf_parity(&d)
            .ok_or_else(|| Error::Contract("divergence-free vector is not homogeneous".into()))?;
        out.push((vf_format(&d), parity, d));
    }
    Ok(out)
}

pub fn cartan_superalgebra(kind: CartanKind) -> Result<FiniteLieSuperalgebra> {
    let n = match kind {
        CartanKind::W(n) | CartanKind::S(n) | CartanKind::H(n) => n,
    };
    if n > MAX_ODD_VARS {
        return Err(Error::SizeBound(format!(
            "N = {n} exceeds the cap {MAX_ODD_VARS}"
        )));
    }
    let (mut g, _) = match kind {
        CartanKind::W(n) => {
            if n < 1 {
                return Err(Error::InvalidParameters("W(N) needs N ≥ 1".into()));
            }
            let (elems, ids) = w_units(n);
            induced(&format!("W({n})"), ids, &elems, &[], vf_bracket, vf_flatten)?
        }
        CartanKind::S(n) => {
            let fields = divergence_free_fields(n)?;
            let names = fields.iter().map(|(id, p, _)| (id.clone(), *p)).collect();
            let elems: Vec<VectorField> = fields.into_iter().map(|(_, _, d)| d).collect();
            induced(
                &format!("S({n})"),
                names,
                &elems,
                &[],
                vf_bracket,
                vf_flatten,
            )?
        }
        CartanKind::H(n) => {
            if n < 4 {
                return Err(Error::InvalidParameters("H(n) needs n ≥ 4".into()));
            }
            let elems: Vec<GrassmannElement> = monomials(n)
                .into_iter()
                .filter(|m| (1..n).contains(&m.degree()))
                .map(|m| GrassmannElement::monomial(n, m, one()))
                .collect();
            let ids = elems
                .iter()
                .map(|f| {
                    let m = *f.terms().keys().next().expect("monomial");
                    (m.to_string(), m.parity())
                })
                .collect();
            let center = vec![GrassmannElement::one(n)];
            induced(
                &format!("H({n})"),
                ids,
                &elems,
                &center,
                |f, g| f.hamiltonian_bracket(g).expect("same ambient"),
                |f| {
                    f.terms()
                        .iter()
                        .map(|(m, c)| (m.0 as usize, c.clone()))
                        .collect()
                },
            )?
        }
    };
    g.kind = Kind::Cartan(kind);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(cartan_superalgebra(CartanKind::W(2)).unwrap().dim(), 8);
        for n in 2..=4 {
            let s = cartan_superalgebra(CartanKind::S(n)).unwrap();
            assert_eq!(s.dim(), (n - 1) * (1 << n) + 1);
        }
        assert_eq!(cartan_superalgebra(CartanKind::H(5)).unwrap().dim(), 30);
    }

    #[test]
    fn constructions_verify() {
        for kind in [
            CartanKind::W(2),
            CartanKind::S(2),
            CartanKind::S(3),
            CartanKind::H(4),
            CartanKind::H(5),
        ] {
            cartan_superalgebra(kind).unwrap().verify().unwrap();
        }
    }

    #[test]
    fn h_quotients_constants() {
        // {ξ1, ξ1} is a constant, hence zero in H(n)
        let h = cartan_superalgebra(CartanKind::H(4)).unwrap();
        let x1 = h.index_of("xi1").unwrap();
        assert!(h.bracket_basis(x1, x1).is_empty());
    }

    #[test]
    fn size_bounds() {
        assert!(cartan_superalgebra(CartanKind::S(1)).is_err());
        assert!(cartan_superalgebra(CartanKind::H(3)).is_err());
        assert!(cartan_superalgebra(CartanKind::W(9)).is_err());
    }
}
