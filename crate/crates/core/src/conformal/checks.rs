//! Skew-commutativity and Jacobi identity checks on generator pairs and
//! triples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{BivarPoly, ConformalAlgebra, Element, LambdaPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewViolation {
    pub i: usize,
    pub j: usize,
    pub residual: LambdaPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewReport {
    pub pairs_checked: usize,
    pub violations: Vec<SkewViolation>,
}

impl SkewReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `[e_j λ e_i] = -(-1)^{p_i p_j} [e_i_{-λ-∂} e_j]` for all ordered
/// pairs.
pub fn check_skew(a: &ConformalAlgebra) -> SkewReport {
    let r = a.rank();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
    let violations = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let lhs = a.table(j, i);
            let sign = -a.parity(i).koszul(a.parity(j));
            let rhs = a.table(i, j).substitute_neg().scale(&sign);
            let residual = lhs.sub(&rhs);
            (!residual.is_zero()).then_some(SkewViolation { i, j, residual })
        })
        .collect();
    SkewReport {
        pairs_checked: pairs.len(),
        violations,
    }
}

/// Which generator triples to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triples {
    All,
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: BivarPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub seed: Option<u64>,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `[a λ [b μ c]] - [[a λ b]_{λ+μ} c] - (-1)^{p(a)p(b)} [b μ [a λ c]]`.
pub fn jacobi_residual(alg: &ConformalAlgebra, a: &Element, b: &Element, c: &Element) -> BivarPoly {
    let mut out = BivarPoly::zero();
    let one = crate::scalar::one();
    for (&n, x) in alg.bracket(b, c).coeffs() {
        for (&m, y) in alg.bracket(a, x).coeffs() {
            out.add_at(m, n, y, &one);
        }
    }
    out = out.sub(&alg.bracket_shifted(&alg.bracket(a, b), c));
    let sign = match (alg.element_parity(a), alg.element_parity(b)) {
        (Some(p), Some(q)) => p.koszul(q),
        _ => one.clone(),
    };
    let mut t2 = BivarPoly::zero();
    for (&n, w) in alg.bracket(a, c).coeffs() {
        for (&m, v) in alg.bracket(b, w).coeffs() {
            t2.add_at(n, m, v, &one);
        }
    }
    out.add_scaled(&t2, &-sign);
    out
}

pub fn check_jacobi(a: &ConformalAlgebra, triples: Triples) -> JacobiReport {
    let r = a.rank();
    let (list, seed): (Vec<(usize, usize, usize)>, Option<u64>) = match triples {
        Triples::All => (
            (0..r)
                .flat_map(|i| (0..r).flat_map(move |j| (0..r).map(move |k| (i, j, k))))
                .collect(),
            None,
        ),
        Triples::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let list = (0..count)
                .map(|_| {
                    (
                        rng.gen_range(0..r),
                        rng.gen_range(0..r),
                        rng.gen_range(0..r),
                    )
                })
                .collect();
            (list, Some(seed))
        }
    };
    if r == 0 {
        return JacobiReport {
            triples_checked: 0,
            seed,
            violations: Vec::new(),
        };
    }
    let violations = list
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let residual = jacobi_residual(a, &Element::gen(i), &Element::gen(j), &Element::gen(k));
            (!residual.is_zero()).then_some(JacobiViolation { i, j, k, residual })
        })
        .collect();
    JacobiReport {
        triples_checked: list.len(),
        seed,
        violations,
    }
}
