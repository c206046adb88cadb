//! Contact family K_N and K′_4.

use crate::conformal::{ConformalAlgebra, Element, Generator, LambdaPoly, Subalgebra};
use crate::error::{Error, Result};
use crate::grassmann::{monomials, Monomial, MAX_ODD_VARS};
use crate::scalar::{one, ratio, Scalar};

/// `[A λ B] = (r/2 − 1) ∂(AB) + (−1)^r ½ Σ ∂_i A ∂_i B + λ((r + s)/2 − 2) AB`
/// on monomials of degrees `r`, `s`.
fn contact_bracket(n: usize, pos: &[usize], a: Monomial, b: Monomial) -> LambdaPoly {
    let r = a.degree() as i64;
    let s = b.degree() as i64;
    let mut out = LambdaPoly::zero();
    if let Some((sign, ab)) = a.mul(b) {
        let k = pos[ab.0 as usize];
        out.add_at(0, &Element::term(k, 1, ratio(r - 2, 2) * &sign), &one());
        out.add_at(1, &Element::term(k, 0, ratio(r + s - 4, 2) * sign), &one());
    }
    let half = if r % 2 == 0 {
        ratio(1, 2)
    } else {
        ratio(-1, 2)
    };
    let mut x = Element::zero();
    for i in 1..=n {
        if let (Some((s1, da)), Some((s2, db))) = (a.partial(i), b.partial(i)) {
            if let Some((s3, m)) = da.mul(db) {
                x.add_term(pos[m.0 as usize], 0, s1 * s2 * s3 * &half);
            }
        }
    }
    out.add_at(0, &x, &one());
    out
}

/// K_N on the monomials of Λ(N).
pub fn k_conformal(n: usize) -> Result<ConformalAlgebra> {
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
    let gens = monos
        .iter()
        .map(|m| Generator::new(m.to_string(), m.parity()))
        .collect();
    let alg = ConformalAlgebra::from_fn(format!("K{n}"), gens, |i, j| {
        contact_bracket(n, &pos, monos[i], monos[j])
    });
    if alg.rank() != 1 << n {
        return Err(Error::Contract(format!(
            "rank of K{n} is {}, expected {}",
            alg.rank(),
            1 << n
        )));
    }
    Ok(alg)
}

/// Identifier of the generator `∂ξ_1ξ_2ξ_3ξ_4` of K′_4.
pub const K4_PRIME_TOP: &str = "d(xi1xi2xi3xi4)";

/// K′_4 inside K_4: monomials of degree below 4 and `∂ξ_1ξ_2ξ_3ξ_4`.
pub fn k4_prime() -> Result<Subalgebra> {
    let k4 = k_conformal(4)?;
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for (i, g) in k4.generators().iter().enumerate() {
        if i + 1 < k4.rank() {
            gens.push(g.clone());
            images.push(Element::gen(i));
        }
    }
    let top = k4.rank() - 1;
    gens.push(Generator::new(K4_PRIME_TOP, k4.parity(top)));
    images.push(Element::term(top, 1, one()));
    let sub = Subalgebra::new("K'4", &k4, gens, images)?;
    if sub.algebra.rank() != 16 {
        return Err(Error::Contract(format!(
            "rank of K'4 is {}, expected 16",
            sub.algebra.rank()
        )));
    }
    Ok(sub)
}

/// Weight `2 − deg/2` of a monomial generator of K_N with respect to `L = −1`.
pub fn k_weight(m: Monomial) -> Scalar {
    ratio(4 - m.degree() as i64, 2)
}
