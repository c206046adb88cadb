//! JSON interchange for conformal algebras: generators and the λ-bracket
//! table as `(k, lpow, dpow, coeff)` terms with `"p/q"` coefficients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::conformal::{ConformalAlgebra, Generator, StructurePoly};
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::scalar::{format_scalar, parse_scalar};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub id: String,
    pub parity: Parity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub k: usize,
    pub lpow: u32,
    pub dpow: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub schema_version: u32,
    pub name: String,
    pub generators: Vec<GeneratorEntry>,
    pub brackets: Vec<BracketEntry>,
}

impl AlgebraDocument {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<GeneratorEntry>,
        brackets: Vec<BracketEntry>,
    ) -> Self {
        AlgebraDocument {
            schema_version: SCHEMA_VERSION,
            name: name.into(),
            generators,
            brackets,
        }
    }

    /// Nonzero brackets of generator pairs, in `(i, j)` order.
    pub fn from_algebra(a: &ConformalAlgebra) -> Self {
        let generators = a
            .generators()
            .iter()
            .map(|g| GeneratorEntry {
                id: g.id.clone(),
                parity: g.parity,
                weight: g.weight.as_ref().map(format_scalar),
            })
            .collect();
        let mut brackets = Vec::new();
        for i in 0..a.rank() {
            for j in 0..a.rank() {
                let s = a.structure(i, j);
                if s.terms.is_empty() {
                    continue;
                }
                let terms = s
                    .terms
                    .iter()
                    .map(|(&(lpow, dpow, k), c)| TermEntry {
                        k,
                        lpow,
                        dpow,
                        coeff: format_scalar(c),
                    })
                    .collect();
                brackets.push(BracketEntry { i, j, terms });
            }
        }
        Self::new(a.name(), generators, brackets)
    }

    pub fn to_algebra(&self) -> Result<ConformalAlgebra> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        let mut weights = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            if gens.iter().any(|h: &Generator| h.id == g.id) {
                return Err(Error::Parse(format!("duplicate generator id '{}'", g.id)));
            }
            gens.push(Generator::new(g.id.clone(), g.parity));
            weights.push(g.weight.as_deref().map(parse_scalar).transpose()?);
        }
        let mut table: BTreeMap<(usize, usize), StructurePoly> = BTreeMap::new();
        for b in &self.brackets {
            let p = table.entry((b.i, b.j)).or_default();
            if !p.terms.is_empty() {
                return Err(Error::Parse(format!(
                    "bracket ({}, {}) given twice",
                    b.i, b.j
                )));
            }
            for t in &b.terms {
                let c = parse_scalar(&t.coeff)?;
                if p.terms.insert((t.lpow, t.dpow, t.k), c).is_some() {
                    return Err(Error::Parse(format!(
                        "repeated term in bracket ({}, {})",
                        b.i, b.j
                    )));
                }
            }
        }
        let mut alg = ConformalAlgebra::from_structure(self.name.clone(), gens, &table)?;
        alg.set_weights(weights);
        Ok(alg)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{FamilyDescriptor, FamilyTag};

    #[test]
    fn round_trip_k2() {
        let a = FamilyDescriptor::new(FamilyTag::K, 2).build().unwrap();
        let doc = AlgebraDocument::from_algebra(&a);
        let json = doc.to_json().unwrap();
        assert!(json.contains("\"schema_version\": 1"));
        let back = AlgebraDocument::from_json(&json)
            .unwrap()
            .to_algebra()
            .unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn rejects_bad_input() {
        let a = FamilyDescriptor::new(FamilyTag::W, 0).build().unwrap();
        let mut doc = AlgebraDocument::from_algebra(&a);
        doc.brackets[0].terms[0].k = 5;
        assert!(doc.to_algebra().is_err());
        let mut doc = AlgebraDocument::from_algebra(&a);
        doc.brackets[0].terms[0].coeff = "0.5".into();
        assert!(doc.to_algebra().is_err());
    }
}
