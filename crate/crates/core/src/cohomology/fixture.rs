//! Tabulated central-extension cocycles and their verification.

use serde::{Deserialize, Serialize};

use crate::conformal::{ConformalAlgebra, Element, Generator, Subalgebra};
use crate::error::{Error, Result};
use crate::families::{with_weights, FamilyDescriptor, FamilyTag};
use crate::parity::Parity;
use crate::scalar::{factorial, parse_scalar, Scalar};

use super::{coboundary_space, cocycle_residual, rank_of_cocycles, Cocycle2, CocycleResidual};

/// A rational number, or a polynomial in the family parameter `a` given by
/// its coefficients in increasing degree.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Coeff {
    Scalar(String),
    Poly { a: Vec<String> },
}

impl Coeff {
    pub fn eval(&self, a: &Scalar) -> Result<Scalar> {
        match self {
            Coeff::Scalar(s) => parse_scalar(s),
            Coeff::Poly { a: cs } => {
                let mut out = Scalar::from_integer(0.into());
                for c in cs.iter().rev() {
                    out = out * a + parse_scalar(c)?;
                }
                Ok(out)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureFamily {
    pub tag: String,
    pub n: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ImageTerm {
    pub gen: String,
    #[serde(default)]
    pub dpow: u32,
    pub coeff: Coeff,
}

/// A basis element given by its image in the ambient algebra (W_N for the
/// S-type families, the algebra itself otherwise).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureBasis {
    pub id: String,
    pub parity: Parity,
    pub image: Vec<ImageTerm>,
}

/// `α_n(x, y) = coeff`; `x` and `y` are basis ids, optionally prefixed by `-`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub n: u32,
    pub x: String,
    pub y: String,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleTable {
    pub label: String,
    pub entries: Vec<FixtureEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub family: FixtureFamily,
    /// Parameter values at which the table is checked (S_{N,a} only).
    #[serde(default)]
    pub a_values: Vec<String>,
    #[serde(default)]
    pub basis: Option<Vec<FixtureBasis>>,
    pub cocycles: Vec<CocycleTable>,
}

macro_rules! fixtures {
    ($($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../../fixtures/", $file, ".json")))),*]
    };
}

const BUILTIN: &[(&str, &str)] =
    fixtures!["W0", "W1", "W2", "S2a", "S~2", "K0", "K1", "K2", "K3", "K'4"];

pub fn load_fixture(json: &str) -> Result<Fixture> {
    Ok(serde_json::from_str(json)?)
}

pub fn builtin_fixtures() -> Result<Vec<Fixture>> {
    BUILTIN.iter().map(|(_, s)| load_fixture(s)).collect()
}

/// The shipped fixture for an algebra label such as `W1`, `K'4`, `S2,a`.
pub fn fixture_for(desc: &FamilyDescriptor) -> Result<Option<Fixture>> {
    let key = match desc.tag {
        FamilyTag::S => format!("S{}a", desc.n),
        _ => desc.label(),
    };
    match BUILTIN.iter().find(|(name, _)| *name == key) {
        Some((_, s)) => Ok(Some(load_fixture(s)?)),
        None => Ok(None),
    }
}

/// How the tabulated `α_n` enter `α_λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Normalization {
    /// `α_λ = Σ α_n λ^n`
    Power,
    /// `α_λ = Σ α_n λ^n / n!`
    DividedPower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormalizationOutcome {
    Power,
    DividedPower,
    /// Both readings give cocycles.
    Indeterminate,
}

/// A fixture instantiated at a parameter value: the algebra in the
/// fixture's basis and the tabulated cochains under one reading.
#[derive(Clone, Debug)]
pub struct ResolvedFixture {
    pub algebra: ConformalAlgebra,
    pub cocycles: Vec<(String, Cocycle2)>,
}

fn descriptor(f: &Fixture, a: &Scalar) -> Result<FamilyDescriptor> {
    let tag = FamilyTag::parse(&f.family.tag)?;
    Ok(FamilyDescriptor::new(tag, f.family.n).with_a(a.clone()))
}

fn parse_image(ambient: &ConformalAlgebra, terms: &[ImageTerm], a: &Scalar) -> Result<Element> {
    let mut x = Element::zero();
    for t in terms {
        x.add_term(ambient.index_of(&t.gen)?, t.dpow, t.coeff.eval(a)?);
    }
    Ok(x)
}

/// Builds the algebra in the fixture basis and checks that it is the
/// family's algebra (same ℂ[∂]-span in the ambient algebra).
fn fixture_algebra(f: &Fixture, a: &Scalar) -> Result<ConformalAlgebra> {
    let desc = descriptor(f, a)?;
    let Some(basis) = &f.basis else {
        return desc.build();
    };
    let (ambient, family_images): (ConformalAlgebra, Vec<Element>) = match desc.tag {
        FamilyTag::S => {
            let s = crate::families::s_conformal(desc.n, a)?;
            (s.w.algebra, s.sub.expresser.images().to_vec())
        }
        FamilyTag::STilde => {
            let s = crate::families::s_tilde(desc.n)?;
            (s.w.algebra, s.sub.expresser.images().to_vec())
        }
        _ => {
            let alg = desc.build()?;
            let images = (0..alg.rank()).map(Element::gen).collect();
            (alg, images)
        }
    };
    let gens: Vec<Generator> = basis
        .iter()
        .map(|b| Generator::new(b.id.clone(), b.parity))
        .collect();
    let images = basis
        .iter()
        .map(|b| parse_image(&ambient, &b.image, a))
        .collect::<Result<Vec<_>>>()?;
    let sub = Subalgebra::new(&f.name, &ambient, gens, images)?;
    let family = crate::conformal::Expresser::new(ambient.rank(), family_images.clone(), 0)?;
    for (b, x) in basis.iter().zip(sub.expresser.images()) {
        if family.express(x).is_none() {
            return Err(Error::Fixture(format!(
                "{}: basis element {} is not in the algebra",
                f.name, b.id
            )));
        }
    }
    for x in &family_images {
        if sub.expresser.express(x).is_none() {
            return Err(Error::Fixture(format!(
                "{}: fixture basis does not span the algebra",
                f.name
            )));
        }
    }
    Ok(with_weights(sub.algebra).0)
}

fn signed_index(alg: &ConformalAlgebra, id: &str) -> Result<(Scalar, usize)> {
    match id.strip_prefix('-') {
        Some(rest) => Ok((Scalar::from_integer((-1).into()), alg.index_of(rest)?)),
        None => Ok((Scalar::from_integer(1.into()), alg.index_of(id)?)),
    }
}

fn table_cocycle(
    alg: &ConformalAlgebra,
    t: &CocycleTable,
    a: &Scalar,
    norm: Normalization,
) -> Result<Cocycle2> {
    let mut alpha = Cocycle2::zero();
    for e in &t.entries {
        let (sx, i) = signed_index(alg, &e.x)?;
        let (sy, j) = signed_index(alg, &e.y)?;
        if alpha
            .entries
            .get(&(i, j))
            .is_some_and(|p| p.contains_key(&e.n))
        {
            return Err(Error::Fixture(format!(
                "duplicate entry α_{}({}, {})",
                e.n, e.x, e.y
            )));
        }
        let mut c = e.coeff.eval(a)? * sx * sy;
        if norm == Normalization::DividedPower {
            c /= factorial(e.n);
        }
        alpha.add_term(i, j, e.n, c);
    }
    alpha.skew_completed(alg)
}

pub fn resolve(f: &Fixture, a: &Scalar, norm: Normalization) -> Result<ResolvedFixture> {
    let algebra = fixture_algebra(f, a)?;
    let cocycles = f
        .cocycles
        .iter()
        .map(|t| Ok((t.label.clone(), table_cocycle(&algebra, t, a, norm)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResolvedFixture { algebra, cocycles })
}

fn all_cocycles(r: &ResolvedFixture) -> bool {
    r.cocycles
        .iter()
        .all(|(_, c)| cocycle_residual(&r.algebra, c).is_zero())
}

/// Runs the residual under both readings of `α_n`.
pub fn normalization_resolve(f: &Fixture, a: &Scalar) -> Result<NormalizationOutcome> {
    let power = all_cocycles(&resolve(f, a, Normalization::Power)?);
    let divided = all_cocycles(&resolve(f, a, Normalization::DividedPower)?);
    match (power, divided) {
        (true, true) => Ok(NormalizationOutcome::Indeterminate),
        (true, false) => Ok(NormalizationOutcome::Power),
        (false, true) => Ok(NormalizationOutcome::DividedPower),
        (false, false) => Err(Error::Fixture(format!(
            "{}: nonzero cocycle residual under both normalization readings",
            f.name
        ))),
    }
}

#[derive(Clone, Debug)]
pub struct FixtureReport {
    pub name: String,
    pub a: Scalar,
    pub normalization: NormalizationOutcome,
    /// Residual of each table under the accepted reading.
    pub residuals: Vec<(String, CocycleResidual)>,
    /// Whether each table is outside the coboundary space.
    pub nontrivial: Vec<(String, bool)>,
    /// Whether all tables are independent modulo coboundaries.
    pub independent: bool,
    pub resolved: ResolvedFixture,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
            && self.nontrivial.iter().all(|(_, b)| *b)
            && self.independent
    }
}

/// Verifies a fixture at the parameter value `a`.
pub fn verify_fixture(f: &Fixture, a: &Scalar) -> Result<FixtureReport> {
    let normalization = normalization_resolve(f, a)?;
    let norm = match normalization {
        NormalizationOutcome::DividedPower => Normalization::DividedPower,
        _ => Normalization::Power,
    };
    let resolved = resolve(f, a, norm)?;
    let cob = coboundary_space(&resolved.algebra);
    let base = rank_of_cocycles(&cob);
    let residuals = resolved
        .cocycles
        .iter()
        .map(|(l, c)| (l.clone(), cocycle_residual(&resolved.algebra, c)))
        .collect();
    let nontrivial = resolved
        .cocycles
        .iter()
        .map(|(l, c)| {
            (
                l.clone(),
                rank_of_cocycles(cob.iter().chain([c])) == base + 1,
            )
        })
        .collect();
    let independent = rank_of_cocycles(cob.iter().chain(resolved.cocycles.iter().map(|(_, c)| c)))
        == base + resolved.cocycles.len();
    Ok(FixtureReport {
        name: f.name.clone(),
        a: a.clone(),
        normalization,
        residuals,
        nontrivial,
        independent,
        resolved,
    })
}
