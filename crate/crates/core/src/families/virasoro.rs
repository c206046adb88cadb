//! Virasoro elements and conformal weights.

use num_traits::{One, Zero};

use crate::conformal::{ConformalAlgebra, Element};
use crate::parity::Parity;
use crate::scalar::{one, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirasoroElement {
    pub element: Element,
    /// `Δ_j` with `[L λ e_j] = (∂ + Δ_j λ) e_j + (λ-free corrections)`.
    pub weights: Vec<Option<Scalar>>,
}

fn weight_of(alg: &ConformalAlgebra, l: &Element, j: usize) -> Option<Scalar> {
    let p = alg.bracket(l, &Element::gen(j));
    if p.degree().unwrap_or(0) > 1 || !p.coeff(0).coeff(j, 1).is_one() {
        return None;
    }
    let top = p.coeff(1);
    let delta = top.coeff(j, 0);
    (top == Element::term(j, 0, delta.clone()) || top.is_zero()).then_some(delta)
}

/// Looks for `L = c e_k` with `[L λ L] = (∂ + 2λ) L` among even generators,
/// preferring the candidate that assigns the most weights.
pub fn virasoro_probe(alg: &ConformalAlgebra) -> Option<VirasoroElement> {
    let mut best: Option<(usize, VirasoroElement)> = None;
    for k in (0..alg.rank()).filter(|&k| alg.parity(k) == Parity::Even) {
        let p = alg.table(k, k);
        if p.degree() != Some(1) {
            continue;
        }
        // [e λ e] = (α∂ + 2αλ) e forces c = 1/α
        let alpha = p.coeff(0).coeff(k, 1);
        if alpha.is_zero() || p.coeff(0) != Element::term(k, 1, alpha.clone()) {
            continue;
        }
        if p.coeff(1) != Element::term(k, 0, &alpha * crate::scalar::int(2)) {
            continue;
        }
        let l = Element::term(k, 0, one() / alpha);
        let weights: Vec<Option<Scalar>> = (0..alg.rank()).map(|j| weight_of(alg, &l, j)).collect();
        let count = weights.iter().filter(|w| w.is_some()).count();
        if best.as_ref().is_none_or(|(c, _)| count > *c) {
            best = Some((
                count,
                VirasoroElement {
                    element: l,
                    weights,
                },
            ));
        }
    }
    best.map(|(_, v)| v)
}

/// Attaches the weights of a found Virasoro element.
pub fn with_weights(mut alg: ConformalAlgebra) -> (ConformalAlgebra, Option<VirasoroElement>) {
    let v = virasoro_probe(&alg);
    if let Some(v) = &v {
        alg.set_weights(v.weights.clone());
    }
    (alg, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cur, k_conformal, parse_finite, s_conformal, WFamily};
    use crate::scalar::{int, ratio};

    #[test]
    fn w0_and_k() {
        let w0 = WFamily::new(0).unwrap().algebra;
        let v = virasoro_probe(&w0).unwrap();
        assert_eq!(v.element, Element::term(0, 0, int(-1)));
        assert_eq!(v.weights, vec![Some(int(2))]);
        let k3 = k_conformal(3).unwrap();
        let v = virasoro_probe(&k3).unwrap();
        assert_eq!(v.weights[7], Some(ratio(1, 2)));
    }

    #[test]
    fn s2a_probe_matches_la() {
        // L_a = −1 + ½(∂ − a)((ξ1)^1 + (ξ2)^2)
        let a = ratio(3, 7);
        let s = s_conformal(2, &a).unwrap();
        let v = virasoro_probe(&s.sub.algebra).unwrap();
        let image = s.sub.expresser.image(&v.element);
        let w = &s.w;
        let mut la = Element::term(w.fn_index(crate::grassmann::Monomial::ONE), 0, int(-1));
        for i in 1..=2 {
            let k = w.field_index(crate::grassmann::Monomial::var(i), i);
            la.add_term(k, 1, ratio(1, 2));
            la.add_term(k, 0, -ratio(1, 2) * &a);
        }
        assert_eq!(image, la);
    }

    #[test]
    fn current_algebra_has_none() {
        assert!(virasoro_probe(&cur(&parse_finite("sl(2)").unwrap())).is_none());
    }
}
