//! The families of finite simple Lie conformal superalgebras.

mod k;
mod s;
mod virasoro;
mod w;

use serde::Serialize;

use crate::conformal::{ConformalAlgebra, Element, Generator, LambdaPoly};
use crate::error::{Error, Result};
use crate::finite::{
    cartan_superalgebra, matrix_superalgebra, CartanKind, FiniteLieSuperalgebra, MatrixKind,
};
use crate::scalar::{format_scalar, Scalar};

pub use k::{k4_prime, k_conformal, k_weight, K4_PRIME_TOP};
pub use s::{s_conformal, s_generator, s_tilde, WSubalgebra};
pub use virasoro::{virasoro_probe, with_weights, VirasoroElement};
pub use w::{check_div_identity, DivIdentityReport, WFamily, WGen};

/// `Cur g`: `[a λ b] = [a, b]`.
pub fn cur(g: &FiniteLieSuperalgebra) -> ConformalAlgebra {
    let gens = g
        .basis()
        .iter()
        .map(|(id, p)| Generator::new(id.clone(), *p))
        .collect();
    ConformalAlgebra::from_fn(format!("Cur {}", g.name()), gens, |i, j| {
        let x = Element::from_terms(
            g.bracket_basis(i, j)
                .iter()
                .map(|(&k, c)| ((k, 0), c.clone())),
        );
        if x.is_zero() {
            LambdaPoly::zero()
        } else {
            LambdaPoly::constant(x)
        }
    })
}

/// Parses `sl(2)`, `sl(2|1)`, `gl(1|1)`, `psl(2|2)`, `Q(2)`, `W(2)`, `S(3)`, `H(5)`.
pub fn parse_finite(spec: &str) -> Result<FiniteLieSuperalgebra> {
    let bad = || Error::Parse(format!("unrecognized Lie superalgebra '{spec}'"));
    let s = spec.replace(' ', "");
    let open = s.find('(').ok_or_else(bad)?;
    if !s.ends_with(')') {
        return Err(bad());
    }
    let head = &s[..open];
    let args: Vec<usize> = s[open + 1..s.len() - 1]
        .split(['|', ','])
        .map(|x| x.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let (m, n) = match args.as_slice() {
        [m] => (*m, 0),
        [m, n] => (*m, *n),
        _ => return Err(bad()),
    };
    match head {
        "gl" => matrix_superalgebra(MatrixKind::Gl { m, n }),
        "sl" => matrix_superalgebra(MatrixKind::Sl { m, n }),
        "psl" if args.len() == 2 && m == n => matrix_superalgebra(MatrixKind::Psl { n }),
        "Q" if args.len() == 1 => matrix_superalgebra(MatrixKind::Q { n: m }),
        "W" if args.len() == 1 => cartan_superalgebra(CartanKind::W(m)),
        "S" if args.len() == 1 => cartan_superalgebra(CartanKind::S(m)),
        "H" if args.len() == 1 => cartan_superalgebra(CartanKind::H(m)),
        _ => Err(bad()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyTag {
    Cur,
    W,
    S,
    STilde,
    K,
    K4Prime,
    CK6,
}

impl FamilyTag {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "Cur" | "cur" => FamilyTag::Cur,
            "W" => FamilyTag::W,
            "S" => FamilyTag::S,
            "S~" | "Stilde" | "STilde" => FamilyTag::STilde,
            "K" => FamilyTag::K,
            "K'4" | "K4'" | "K4prime" | "Kprime4" => FamilyTag::K4Prime,
            "CK6" => FamilyTag::CK6,
            _ => return Err(Error::Parse(format!("unknown family '{s}'"))),
        })
    }
}

/// A requested member of a family.
#[derive(Clone, Debug)]
pub struct FamilyDescriptor {
    pub tag: FamilyTag,
    pub n: usize,
    pub a: Scalar,
    /// The finite Lie superalgebra of `Cur g`, e.g. `sl(2|1)`.
    pub g: Option<String>,
}

impl FamilyDescriptor {
    pub fn new(tag: FamilyTag, n: usize) -> Self {
        FamilyDescriptor {
            tag,
            n,
            a: num_traits::Zero::zero(),
            g: None,
        }
    }

    pub fn with_a(mut self, a: Scalar) -> Self {
        self.a = a;
        self
    }

    pub fn current(g: &str) -> Self {
        FamilyDescriptor {
            tag: FamilyTag::Cur,
            n: 0,
            a: num_traits::Zero::zero(),
            g: Some(g.to_string()),
        }
    }

    /// Checks the constraints of the classification list.
    pub fn validate(&self) -> Result<()> {
        match self.tag {
            FamilyTag::S if self.n < 2 => Err(Error::Constraint("S_{N,a} requires N ≥ 2".into())),
            FamilyTag::STilde if self.n < 2 || self.n % 2 == 1 => {
                Err(Error::Constraint("S̃_N requires N even and N ≥ 2".into()))
            }
            FamilyTag::K if self.n == 4 => Err(Error::Constraint(
                "K_N is listed for N ≥ 0, N ≠ 4; the simple member for N = 4 is K'_4 (use --family K'4)".into(),
            )),
            FamilyTag::Cur if self.g.is_none() => {
                Err(Error::Constraint("Cur g requires a simple finite-dimensional Lie superalgebra g".into()))
            }
            FamilyTag::CK6 => Err(Error::NotImplemented(
                "CK_6: its λ-brackets are given in an external reference and are not constructed".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match self.tag {
            FamilyTag::Cur => format!("Cur {}", self.g.as_deref().unwrap_or("?")),
            FamilyTag::W => format!("W{}", self.n),
            FamilyTag::S => format!("S{},{}", self.n, format_scalar(&self.a)),
            FamilyTag::STilde => format!("S~{}", self.n),
            FamilyTag::K => format!("K{}", self.n),
            FamilyTag::K4Prime => "K'4".into(),
            FamilyTag::CK6 => "CK6".into(),
        }
    }

    /// Inverse of [`FamilyDescriptor::label`].
    pub fn from_label(label: &str) -> Option<Self> {
        if let Some(g) = label.strip_prefix("Cur ") {
            return Some(Self::current(g));
        }
        if label == "K'4" {
            return Some(Self::new(FamilyTag::K4Prime, 4));
        }
        if label == "CK6" {
            return Some(Self::new(FamilyTag::CK6, 6));
        }
        let num = |s: &str| s.parse::<usize>().ok();
        if let Some(rest) = label.strip_prefix("S~") {
            return Some(Self::new(FamilyTag::STilde, num(rest)?));
        }
        if let Some(rest) = label.strip_prefix('S') {
            let (n, a) = rest.split_once(',')?;
            return Some(
                Self::new(FamilyTag::S, num(n)?).with_a(crate::scalar::parse_scalar(a).ok()?),
            );
        }
        if let Some(rest) = label.strip_prefix('W') {
            return Some(Self::new(FamilyTag::W, num(rest)?));
        }
        if let Some(rest) = label.strip_prefix('K') {
            return Some(Self::new(FamilyTag::K, num(rest)?));
        }
        None
    }

    /// Builds the algebra, with weights attached when a Virasoro element is
    /// found.
    pub fn build(&self) -> Result<ConformalAlgebra> {
        self.validate()?;
        let alg = match self.tag {
            FamilyTag::Cur => cur(&parse_finite(self.g.as_deref().unwrap_or_default())?),
            FamilyTag::W => WFamily::new(self.n)?.algebra,
            FamilyTag::S => s_conformal(self.n, &self.a)?.sub.algebra,
            FamilyTag::STilde => s_tilde(self.n)?.sub.algebra,
            FamilyTag::K => k_conformal(self.n)?,
            FamilyTag::K4Prime => k4_prime()?.algebra,
            FamilyTag::CK6 => unreachable!("rejected by validate"),
        };
        Ok(with_weights(alg.with_name(self.label())).0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub family: &'static str,
    pub tag: FamilyTag,
    pub constraint: &'static str,
    pub rank: &'static str,
    pub annihilation_algebra: &'static str,
    pub central_extensions: &'static str,
    pub status: &'static str,
}

/// The list of finite simple Lie conformal superalgebras.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            family: "Cur g",
            tag: FamilyTag::Cur,
            constraint: "g a simple finite-dimensional Lie superalgebra",
            rank: "dim g",
            annihilation_algebra: "g[[t]]",
            central_extensions:
                "α_0(a,b) + (a,b)λ: 2-cocycles of g plus invariant supersymmetric forms",
            status: "implemented",
        },
        CatalogEntry {
            family: "W_N",
            tag: FamilyTag::W,
            constraint: "N ≥ 0",
            rank: "(N+1)2^N",
            annihilation_algebra: "W̄(1,N)",
            central_extensions: "1 for N ≤ 2, none for N ≥ 3",
            status: "implemented",
        },
        CatalogEntry {
            family: "S_{N,a}",
            tag: FamilyTag::S,
            constraint: "N ≥ 2, a ∈ ℂ (rational here)",
            rank: "N2^N",
            annihilation_algebra: "S̄(1,N)′",
            central_extensions: "1 for N = 2, none for N > 2",
            status: "implemented",
        },
        CatalogEntry {
            family: "S̃_N",
            tag: FamilyTag::STilde,
            constraint: "N even, N ≥ 2",
            rank: "N2^N",
            annihilation_algebra: "S̄(1,N)′",
            central_extensions: "1 for N = 2, none for N > 2",
            status: "implemented",
        },
        CatalogEntry {
            family: "K_N",
            tag: FamilyTag::K,
            constraint: "N ≥ 0, N ≠ 4",
            rank: "2^N",
            annihilation_algebra: "K̄(1,N)",
            central_extensions: "1 for N ≤ 3, none for N ≥ 5",
            status: "implemented",
        },
        CatalogEntry {
            family: "K′_4",
            tag: FamilyTag::K4Prime,
            constraint: "derived subalgebra of K_4",
            rank: "16",
            annihilation_algebra: "K̄(1,4)′",
            central_extensions: "2",
            status: "implemented",
        },
        CatalogEntry {
            family: "CK_6",
            tag: FamilyTag::CK6,
            constraint: "subalgebra of K_6",
            rank: "32",
            annihilation_algebra: "CK̄_6, even part W_0 ⋉ Cur so_6",
            central_extensions: "none",
            status: "not implemented: relations in external reference",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{check_jacobi, Triples};

    #[test]
    fn cur_sl2() {
        let g = parse_finite("sl(2)").unwrap();
        let c = cur(&g);
        let h = c.gen("h1").unwrap();
        let e = c.gen("e12").unwrap();
        assert_eq!(
            c.bracket(&h, &e),
            LambdaPoly::constant(e.scale(&crate::scalar::int(2)))
        );
        assert!(check_jacobi(&cur(&parse_finite("sl(2|1)").unwrap()), Triples::All).passed());
    }

    #[test]
    fn descriptor_constraints() {
        let err = FamilyDescriptor::new(FamilyTag::K, 4)
            .validate()
            .unwrap_err();
        assert!(err.to_string().contains("N ≠ 4"));
        assert!(FamilyDescriptor::new(FamilyTag::STilde, 3)
            .validate()
            .is_err());
        assert!(FamilyDescriptor::new(FamilyTag::S, 1).validate().is_err());
        assert!(matches!(
            FamilyDescriptor::new(FamilyTag::CK6, 6).build(),
            Err(Error::NotImplemented(_))
        ));
        assert_eq!(catalog().len(), 7);
    }

    #[test]
    fn labels_round_trip() {
        let ds = [
            FamilyDescriptor::new(FamilyTag::W, 2),
            FamilyDescriptor::new(FamilyTag::S, 2).with_a(crate::scalar::ratio(3, 7)),
            FamilyDescriptor::new(FamilyTag::STilde, 2),
            FamilyDescriptor::new(FamilyTag::K, 3),
            FamilyDescriptor::new(FamilyTag::K4Prime, 4),
            FamilyDescriptor::current("sl(2|1)"),
        ];
        for d in ds {
            let back = FamilyDescriptor::from_label(&d.label()).unwrap();
            assert_eq!(
                (back.tag, back.n, &back.a, &back.g),
                (d.tag, d.n, &d.a, &d.g)
            );
        }
        assert!(FamilyDescriptor::from_label("X3").is_none());
    }
}
