//! S_{N,a} and S̃_N as subalgebras of W_N.

use num_traits::Zero;

use crate::conformal::{Element, Generator, Subalgebra};
use crate::error::{Error, Result};
use crate::finite::divergence_free_fields;
use crate::grassmann::{monomials, GrassmannElement, Monomial};
use crate::scalar::{format_scalar, int, Scalar};

use super::w::WFamily;

/// A subalgebra of W_N together with the ambient W_N.
#[derive(Clone, Debug)]
pub struct WSubalgebra {
    pub w: WFamily,
    pub sub: Subalgebra,
}

/// `s_B = (l − N) B + (∂ − a) Σ_i (B ξ_i) ∂_i` for a monomial `B` of degree `l`.
pub fn s_generator(w: &WFamily, b: Monomial, a: &Scalar) -> Element {
    let n = w.n();
    let mut x = Element::term(w.fn_index(b), 0, int(b.degree() as i64 - n as i64));
    for i in 1..=n {
        if let Some((s, m)) = b.mul(Monomial::var(i)) {
            let k = w.field_index(m, i);
            x.add_term(k, 1, s.clone());
            x.add_term(k, 0, -(s * a));
        }
    }
    x
}

fn s_images(w: &WFamily, a: &Scalar) -> Result<Vec<(Generator, Element)>> {
    let n = w.n();
    let mut out = Vec::new();
    for (id, parity, field) in divergence_free_fields(n)? {
        out.push((Generator::new(id, parity), w.vector_field(&field)));
    }
    for b in monomials(n).into_iter().filter(|b| b.degree() < n) {
        out.push((
            Generator::new(format!("s[{b}]"), b.parity()),
            s_generator(w, b, a),
        ));
    }
    Ok(out)
}

fn check_rank(name: &str, got: usize, expect: usize) -> Result<()> {
    if got != expect {
        return Err(Error::Contract(format!(
            "rank of {name} is {got}, expected {expect}"
        )));
    }
    Ok(())
}

/// S_{N,a} = {D ∈ W_N : div_a D = 0}.
pub fn s_conformal(n: usize, a: &Scalar) -> Result<WSubalgebra> {
    if n < 2 {
        return Err(Error::Constraint("S_{N,a} needs N ≥ 2".into()));
    }
    let w = WFamily::new(n)?;
    let pairs = s_images(&w, a)?;
    for (g, x) in &pairs {
        let d = w.divergence(x, a);
        if !d.is_zero() {
            return Err(Error::Divergence(format!(
                "div_a of {} is {}",
                g.id,
                w.format_module(&d)
            )));
        }
    }
    let name = if a.is_zero() {
        format!("S{n},0")
    } else {
        format!("S{n},{}", format_scalar(a))
    };
    let (gens, images) = pairs.into_iter().unzip();
    let sub = Subalgebra::new(&name, &w.algebra, gens, images)?;
    check_rank(&name, sub.algebra.rank(), n << n)?;
    Ok(WSubalgebra { w, sub })
}

/// S̃_N = (1 − ξ_1…ξ_N) S_N for even N.
pub fn s_tilde(n: usize) -> Result<WSubalgebra> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Constraint("S̃_N needs N even and N ≥ 2".into()));
    }
    let w = WFamily::new(n)?;
    let mut h = GrassmannElement::one(n);
    h.add_term(Monomial::top(n), int(-1));
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for (g, x) in s_images(&w, &Scalar::zero())? {
        let y = w.mul_function(&h, &x);
        let d = w.twisted_divergence(&y);
        if !d.is_zero() {
            return Err(Error::Divergence(format!(
                "div((1+ξ…)D) of ~{} is {}",
                g.id,
                w.format_module(&d)
            )));
        }
        gens.push(Generator::new(format!("~{}", g.id), g.parity));
        images.push(y);
    }
    let name = format!("S~{n}");
    let sub = Subalgebra::new(&name, &w.algebra, gens, images)?;
    check_rank(&name, sub.algebra.rank(), n << n)?;
    Ok(WSubalgebra { w, sub })
}
