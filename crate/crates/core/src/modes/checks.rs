//! Witt relations, the center of the modes of K′_4, and the outer sl₂ on
//! the divergence-free fields in two odd variables.

use num_traits::Zero;
use rayon::prelude::*;

use crate::conformal::ConformalAlgebra;
use crate::error::{Error, Result};
use crate::families::{k4_prime, virasoro_probe, K4_PRIME_TOP};
use crate::grassmann::Monomial;
use crate::linalg::{Echelon, SparseVec};
use crate::scalar::{format_scalar, int, one, ratio, Scalar};

use super::models::{PolyField, SuperPoly};
use super::{build_modes, ModeElement};

#[derive(Clone, Debug)]
pub struct WittReport {
    pub algebra: String,
    /// Whether a Virasoro element was found.
    pub found: bool,
    pub checked: usize,
    /// `(m, n)` with `[L_m, L_n] ≠ (m − n) L_{m+n−1}`.
    pub failures: Vec<(u32, u32)>,
}

impl WittReport {
    pub fn passed(&self) -> bool {
        self.found && self.failures.is_empty()
    }
}

/// `[L_m, L_n] = (m − n) L_{m+n−1}` for `0 ≤ m, n ≤ max` with `L` from the
/// Virasoro probe.
pub fn witt_check(a: &ConformalAlgebra, max: u32) -> WittReport {
    let mut report = WittReport {
        algebra: a.name().to_string(),
        found: false,
        checked: 0,
        failures: Vec::new(),
    };
    let Some(v) = virasoro_probe(a) else {
        return report;
    };
    report.found = true;
    let modes = build_modes(a);
    let l = |n| modes.modes_of(&v.element, n);
    for m in 0..=max {
        for n in 0..=max {
            let expect = if m + n > 0 {
                l(m + n - 1).scale(&int(m as i64 - n as i64))
            } else {
                ModeElement::zero()
            };
            report.checked += 1;
            if modes.bracket(&l(m), &l(n)) != expect {
                report.failures.push((m, n));
            }
        }
    }
    report
}

/// A tabulated value `ψ(x, y)` next to the coefficient of `(∂ξ_1ξ_2ξ_3ξ_4)_0`
/// in the mode bracket of the corresponding elements.
#[derive(Clone, Debug)]
pub struct PsiEntry {
    pub class: &'static str,
    pub label: String,
    pub psi: Scalar,
    pub central: Scalar,
}

impl PsiEntry {
    pub fn ratio(&self) -> Scalar {
        &self.central / &self.psi
    }
}

#[derive(Clone, Debug)]
pub struct CenterReport {
    pub max_mode: u32,
    pub checked: usize,
    /// Modes `g_{j,n}` that do not commute with `(∂ξ_1ξ_2ξ_3ξ_4)_0`.
    pub noncentral: Vec<(String, u32)>,
    pub entries: Vec<PsiEntry>,
    /// The common value of `central / ψ`, if there is one and it is nonzero.
    pub constant: Option<Scalar>,
}

impl CenterReport {
    pub fn passed(&self) -> bool {
        self.noncentral.is_empty() && self.constant.is_some()
    }
}

/// Checks that `(∂ξ_1ξ_2ξ_3ξ_4)_0` is central in the modes of K′_4 up to
/// `max_mode`, and compares the central terms of `[1, ξ_1ξ_2ξ_3ξ_4]` and
/// `[ξ_i, ∂_i ξ_1ξ_2ξ_3ξ_4]` with the ψ table. In K̄(1,4), `x^p A` is
/// `g_{A,p}` for `A ≠ ξ_1ξ_2ξ_3ξ_4` and `x^p ξ_1ξ_2ξ_3ξ_4 = −(∂ξ_1ξ_2ξ_3ξ_4)_{p+1} / (p+1)`.
pub fn k4prime_center_check(max_mode: u32) -> Result<CenterReport> {
    let kp = k4_prime()?;
    let modes = build_modes(&kp.algebra);
    let alg = modes.source();
    let c = alg.index_of(K4_PRIME_TOP)?;
    let pairs: Vec<(usize, u32)> = modes.window(max_mode);
    let noncentral = pairs
        .par_iter()
        .filter(|&&(j, n)| !modes.bracket_basis(c, 0, j, n).is_zero())
        .map(|&(j, n)| (alg.generator(j).id.clone(), n))
        .collect();

    let mono = |m: Monomial| alg.index_of(&m.to_string());
    let omega = ModeElement::term(c, 1, int(-1));
    let one_ = ModeElement::basis(mono(Monomial::ONE)?, 0);
    let central = |x: &ModeElement, y: &ModeElement| modes.bracket(x, y).coeff(c, 0);
    let mut entries = vec![
        PsiEntry {
            class: "ψ(1, ξ1ξ2ξ3ξ4)",
            label: "ψ(1, xi1xi2xi3xi4)".into(),
            psi: one(),
            central: central(&one_, &omega),
        },
        PsiEntry {
            class: "ψ(ξ1ξ2ξ3ξ4, 1)",
            label: "ψ(xi1xi2xi3xi4, 1)".into(),
            psi: int(-1),
            central: central(&omega, &one_),
        },
    ];
    let top = Monomial::top(4);
    for i in 1..=4 {
        let (s, rest) = top.partial(i).expect("ξ_i divides the top monomial");
        let xi = ModeElement::basis(mono(Monomial::var(i))?, 0);
        let d_omega = ModeElement::term(mono(rest)?, 0, s);
        entries.push(PsiEntry {
            class: "ψ(ξi, ∂i ξ1ξ2ξ3ξ4)",
            label: format!("ψ(xi{i}, d{i}(xi1xi2xi3xi4))"),
            psi: ratio(1, 2),
            central: central(&xi, &d_omega),
        });
        entries.push(PsiEntry {
            class: "ψ(∂i ξ1ξ2ξ3ξ4, ξi)",
            label: format!("ψ(d{i}(xi1xi2xi3xi4), xi{i})"),
            psi: ratio(1, 2),
            central: central(&d_omega, &xi),
        });
    }
    let first = entries[0].ratio();
    let constant =
        (!first.is_zero() && entries.iter().all(|e| e.ratio() == first)).then_some(first);
    Ok(CenterReport {
        max_mode,
        checked: pairs.len(),
        noncentral,
        entries,
        constant,
    })
}

/// Which formula of the outer derivation F applies to a basis field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// `P(x) s`, `s` divergence-free in the odd variables only; also
    /// `P ∂_0 + ½ P′ Σ ξ_i ∂_i`. F vanishes on these.
    Killed,
    /// `P ξ_2 ∂_0 − P′ ξ_1ξ_2 ∂_1 ↦ −P ∂_1`.
    U(u32),
    /// `P ξ_1 ∂_0 + P′ ξ_1ξ_2 ∂_2 ↦ P ∂_2`.
    V(u32),
}

/// Divergence-free fields on `(x | ξ_1, ξ_2)` without `ξ_1ξ_2 ∂_0`, up to
/// x-degree `cap`, with the outer derivations E, H, F.
pub struct SPrime2 {
    pub cap: u32,
    basis: Vec<(PolyField, Kind)>,
    echelon: Echelon,
}

const WIDTH: usize = 4 * 3;

fn flatten(x: &PolyField) -> SparseVec {
    let mut v = SparseVec::new();
    for (j, p) in x.comps.iter().enumerate() {
        for (&(n, a), c) in p.terms() {
            v.insert(n as usize * WIDTH + a.0 as usize * 3 + j, c.clone());
        }
    }
    v
}

fn unit(n: u32, a: u32, j: usize) -> PolyField {
    PolyField::unit(2, n, Monomial(a), j)
}

fn xi12() -> Monomial {
    Monomial(0b11)
}

impl SPrime2 {
    pub fn new(cap: u32) -> Result<Self> {
        if cap < 4 {
            return Err(Error::Cap(format!(
                "outer sl2 check needs cap ≥ 4, got {cap}"
            )));
        }
        let mut basis = Vec::new();
        let odd_part = [
            unit(0, 0, 1),
            unit(0, 0, 2),
            unit(0, 0b01, 2),
            unit(0, 0b10, 1),
            {
                let mut h = unit(0, 0b01, 1);
                h.add_scaled(&unit(0, 0b10, 2), &int(-1));
                h
            },
        ];
        for n in 0..=cap {
            let xn = SuperPoly::term(n, Monomial::ONE, one());
            for s in &odd_part {
                let f = PolyField {
                    comps: s.comps.iter().map(|p| xn.mul(p)).collect(),
                };
                basis.push((f, Kind::Killed));
            }
            let dn = |c: Scalar| {
                if n == 0 {
                    Scalar::zero()
                } else {
                    c * int(n as i64)
                }
            };
            let mut d0 = unit(n, 0, 0);
            if n > 0 {
                d0.add_scaled(&unit(n - 1, 0b01, 1), &dn(ratio(1, 2)));
                d0.add_scaled(&unit(n - 1, 0b10, 2), &dn(ratio(1, 2)));
            }
            basis.push((d0, Kind::Killed));
            let mut u = unit(n, 0b10, 0);
            let mut v = unit(n, 0b01, 0);
            if n > 0 {
                u.add_scaled(&unit(n - 1, 0b11, 1), &dn(int(-1)));
                v.add_scaled(&unit(n - 1, 0b11, 2), &dn(one()));
            }
            basis.push((u, Kind::U(n)));
            basis.push((v, Kind::V(n)));
        }
        for (x, _) in &basis {
            if !x.divergence().is_zero() {
                return Err(Error::Contract(format!(
                    "basis field {x} is not divergence-free"
                )));
            }
        }
        let mut echelon = Echelon::tracking();
        for (x, _) in &basis {
            if echelon.insert(flatten(x)).is_none() {
                return Err(Error::Contract(format!("basis field {x} is dependent")));
            }
        }
        Ok(SPrime2 {
            cap,
            basis,
            echelon,
        })
    }

    pub fn basis(&self) -> Vec<PolyField> {
        self.basis.iter().map(|(x, _)| x.clone()).collect()
    }

    pub fn contains(&self, x: &PolyField) -> bool {
        x.x_degree().is_none_or(|d| d <= self.cap) && self.echelon.contains(&flatten(x))
    }

    fn coords(&self, x: &PolyField) -> Result<SparseVec> {
        if x.x_degree().is_some_and(|d| d > self.cap) {
            return Err(Error::Cap(format!("{x} exceeds x-degree {}", self.cap)));
        }
        self.echelon
            .express(&flatten(x))
            .ok_or_else(|| Error::Closure(format!("{x} is not in S(1,2)′")))
    }

    pub fn e(&self, x: &PolyField) -> PolyField {
        unit(0, xi12().0, 0).bracket(x)
    }

    pub fn h(&self, x: &PolyField) -> PolyField {
        let mut euler = unit(0, 0b01, 1);
        euler.add_scaled(&unit(0, 0b10, 2), &one());
        euler.bracket(x)
    }

    pub fn f(&self, x: &PolyField) -> Result<PolyField> {
        let mut out = PolyField::zero(2);
        for (k, c) in self.coords(x)? {
            match self.basis[k].1 {
                Kind::Killed => {}
                Kind::U(n) => out.add_scaled(&unit(n, 0, 1), &-c),
                Kind::V(n) => out.add_scaled(&unit(n, 0, 2), &c),
            }
        }
        Ok(out)
    }

    fn apply(&self, d: usize, x: &PolyField) -> Result<PolyField> {
        match d {
            0 => Ok(self.e(x)),
            1 => Ok(self.h(x)),
            _ => self.f(x),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Sl2Report {
    pub cap: u32,
    pub basis_size: usize,
    /// Safe basis pairs whose bracket leaves the span.
    pub closure_failures: usize,
    pub pairs_checked: usize,
    /// `(derivation, x, y)` where the Leibniz rule fails.
    pub derivation_failures: Vec<(char, String, String)>,
    /// Images of basis fields that leave the span.
    pub image_failures: Vec<(char, String)>,
    pub he_2e: bool,
    pub hf_minus_2f: bool,
    /// `κ` with `[E, F] = κ H` on the basis, if any.
    pub ef_multiple_of_h: Option<Scalar>,
    pub span_dim: usize,
}

impl Sl2Report {
    pub fn passed(&self) -> bool {
        self.closure_failures == 0
            && self.derivation_failures.is_empty()
            && self.image_failures.is_empty()
            && self.he_2e
            && self.hf_minus_2f
            && self.ef_multiple_of_h.as_ref().is_some_and(|k| !k.is_zero())
            && self.span_dim == 3
    }
}

/// Realizes E = ad(ξ_1ξ_2∂_0), H = ad(ξ_1∂_1 + ξ_2∂_2) and F on the
/// truncation of S̄(1,2)′ at x-degree `cap`, and checks that they are
/// derivations spanning sl₂.
pub fn outer_sl2_on_s(cap: u32) -> Result<Sl2Report> {
    let s = SPrime2::new(cap)?;
    let basis = s.basis();
    let names = ['E', 'H', 'F'];
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .collect();
    let safe: Vec<(usize, usize, PolyField)> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let z = basis[i].bracket(&basis[j]);
            z.x_degree().is_none_or(|d| d <= cap).then_some((i, j, z))
        })
        .collect();
    let closure_failures = safe.iter().filter(|(_, _, z)| !s.contains(z)).count();

    let mut image_failures = Vec::new();
    let mut images: Vec<[PolyField; 3]> = Vec::new();
    for x in &basis {
        let mut row = Vec::new();
        for d in 0..3 {
            let y = s.apply(d, x)?;
            if !s.contains(&y) {
                image_failures.push((names[d], x.to_string()));
            }
            row.push(y);
        }
        images.push(row.try_into().expect("three derivations"));
    }

    let derivation_failures: Vec<(char, String, String)> = safe
        .par_iter()
        .flat_map_iter(|(i, j, z)| {
            let (x, y) = (&basis[*i], &basis[*j]);
            let images = &images;
            let s = &s;
            (0..3).filter_map(move |d| {
                let lhs = s.apply(d, z).ok()?;
                let mut rhs = images[*i][d].bracket(y);
                rhs.add_scaled(&x.bracket(&images[*j][d]), &one());
                (lhs != rhs).then(|| (names[d], x.to_string(), y.to_string()))
            })
        })
        .collect();

    let comm = |a: usize, b: usize, k: usize| -> Result<PolyField> {
        let mut r = s.apply(a, &images[k][b])?;
        r.add_scaled(&s.apply(b, &images[k][a])?, &int(-1));
        Ok(r)
    };
    let mut he_2e = image_failures.is_empty();
    let mut hf_minus_2f = image_failures.is_empty();
    let mut kappa: Option<Option<Scalar>> = None;
    if image_failures.is_empty() {
        for k in 0..basis.len() {
            he_2e &= comm(1, 0, k)? == images[k][0].scale(&int(2));
            hf_minus_2f &= comm(1, 2, k)? == images[k][2].scale(&int(-2));
            let ef = comm(0, 2, k)?;
            let h = &images[k][1];
            let here = if h.is_zero() {
                ef.is_zero().then_some(None)
            } else {
                proportion(&ef, h).map(Some)
            };
            kappa = match (kappa, here) {
                (_, None) => Some(None),
                (None, Some(None)) => None,
                (None, Some(Some(c))) => Some(Some(c)),
                (Some(None), _) => Some(None),
                (Some(Some(a)), Some(Some(b))) if a != b => Some(None),
                (k, _) => k,
            };
        }
    }
    let ef_multiple_of_h = kappa.flatten();

    let flat: Vec<SparseVec> = (0..3)
        .map(|d| {
            let mut v = SparseVec::new();
            for (k, row) in images.iter().enumerate() {
                for (idx, c) in flatten(&row[d]) {
                    v.insert(k * (cap as usize + 2) * WIDTH + idx, c);
                }
            }
            v
        })
        .collect();
    let span_dim = crate::linalg::rank_of(&flat);
    Ok(Sl2Report {
        cap,
        basis_size: basis.len(),
        closure_failures,
        pairs_checked: safe.len(),
        derivation_failures,
        image_failures,
        he_2e,
        hf_minus_2f,
        ef_multiple_of_h,
        span_dim,
    })
}

/// `c` with `x = c y`, for nonzero `y`.
fn proportion(x: &PolyField, y: &PolyField) -> Option<Scalar> {
    let fy = flatten(y);
    let fx = flatten(x);
    let (&k, v) = fy.iter().next()?;
    let c = fx.get(&k).cloned().unwrap_or_else(Scalar::zero) / v;
    (flatten(&y.scale(&c)) == fx).then_some(c)
}

/// Prints the report rows as `label: central (ψ)`.
pub fn format_center(r: &CenterReport) -> String {
    let mut out = String::new();
    for e in &r.entries {
        out.push_str(&format!(
            "{}: central {} / ψ {} = {}\n",
            e.label,
            format_scalar(&e.central),
            format_scalar(&e.psi),
            format_scalar(&e.ratio())
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::WFamily;

    #[test]
    fn witt_w0() {
        let r = witt_check(&WFamily::new(0).unwrap().algebra, 6);
        assert!(r.passed());
    }

    #[test]
    fn center_of_k4_prime() {
        let r = k4prime_center_check(3).unwrap();
        assert!(r.noncentral.is_empty());
        assert_eq!(r.constant, Some(int(-1)), "{}", format_center(&r));
    }

    #[test]
    fn sl2_pieces() {
        let s = SPrime2::new(4).unwrap();
        let d1 = unit(0, 0, 1);
        assert_eq!(s.h(&d1), d1.scale(&int(-1)));
        // F(ξ_1 ∂_0) = ∂_2
        assert_eq!(s.f(&unit(0, 0b01, 0)).unwrap(), unit(0, 0, 2));
        // E maps the −1 eigenspace to the +1 eigenspace, and E∘E = 0 there
        let e1 = s.e(&d1);
        assert_eq!(s.h(&e1), e1);
        assert!(s.e(&e1).is_zero());
    }

    #[test]
    fn sl2_report() {
        let r = outer_sl2_on_s(4).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.span_dim, 3);
    }
}
