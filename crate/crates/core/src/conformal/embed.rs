//! Subalgebras given by ℂ[∂]-free generators inside an ambient algebra.
//! Brackets are computed in the ambient algebra and re-expressed in the
//! generator basis.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Echelon;

use super::{ConformalAlgebra, Element, Generator, LambdaPoly};

/// Writes ambient elements as ℂ[∂]-combinations of fixed images.
#[derive(Clone, Debug)]
pub struct Expresser {
    ambient_rank: usize,
    images: Vec<Element>,
    depth: u32,
    echelon: Echelon,
    /// insertion index → (generator, ∂-power)
    index: Vec<(usize, u32)>,
}

impl Expresser {
    /// Fails if the images are not ℂ[∂]-independent up to ∂-power `depth`.
    pub fn new(ambient_rank: usize, images: Vec<Element>, depth: u32) -> Result<Self> {
        let mut echelon = Echelon::tracking();
        let mut index = Vec::new();
        for u in 0..=depth {
            for (j, g) in images.iter().enumerate() {
                if g.is_zero() || echelon.insert(g.partial(u).to_vec(ambient_rank)).is_none() {
                    return Err(Error::Closure(format!(
                        "image of generator {j} is ℂ[∂]-dependent on the others"
                    )));
                }
                index.push((j, u));
            }
        }
        Ok(Expresser {
            ambient_rank,
            images,
            depth,
            echelon,
            index,
        })
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `None` when `x` is outside the ℂ[∂]-span of the images.
    pub fn express(&self, x: &Element) -> Option<Element> {
        if x.max_dpow() > self.depth {
            let deeper =
                Expresser::new(self.ambient_rank, self.images.clone(), x.max_dpow()).ok()?;
            return deeper.express(x);
        }
        let combo = self.echelon.express(&x.to_vec(self.ambient_rank))?;
        Some(Element::from_terms(
            combo.into_iter().map(|(i, c)| (self.index[i], c)),
        ))
    }

    /// Maps a subalgebra element back to the ambient algebra.
    pub fn image(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (&(j, t), c) in x.terms() {
            out.add_scaled(&self.images[j].partial(t), c);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: ConformalAlgebra,
    pub expresser: Expresser,
}

impl Subalgebra {
    /// Builds the subalgebra on `generators` with the given ambient images.
    /// Fails loudly if a bracket leaves the span.
    pub fn new(
        name: &str,
        ambient: &ConformalAlgebra,
        generators: Vec<Generator>,
        images: Vec<Element>,
    ) -> Result<Self> {
        if generators.len() != images.len() {
            return Err(Error::Dimension(format!(
                "{} generators but {} images",
                generators.len(),
                images.len()
            )));
        }
        for (g, x) in generators.iter().zip(&images) {
            ambient.validate(x)?;
            if ambient.element_parity(x) != Some(g.parity) {
                return Err(Error::Contract(format!(
                    "image of {} is not homogeneous of parity {}",
                    g.id, g.parity
                )));
            }
        }
        let r = images.len();
        let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
        let raw: Vec<LambdaPoly> = pairs
            .par_iter()
            .map(|&(i, j)| ambient.bracket(&images[i], &images[j]))
            .collect();
        let depth = raw
            .iter()
            .flat_map(|p| p.coeffs().values().map(Element::max_dpow))
            .max()
            .unwrap_or(0);
        let expresser = Expresser::new(ambient.rank(), images, depth)?;

        let expressed: Vec<Result<LambdaPoly>> = pairs
            .par_iter()
            .zip(raw.par_iter())
            .map(|(&(i, j), p)| {
                let mut out = LambdaPoly::zero();
                for (&n, x) in p.coeffs() {
                    let y = expresser.express(x).ok_or_else(|| {
                        Error::Closure(format!(
                            "{name}: [{} λ {}] at λ^{n} is {}",
                            generators[i].id,
                            generators[j].id,
                            ambient.format_element(x)
                        ))
                    })?;
                    out.add_at(n, &y, &crate::scalar::one());
                }
                Ok(out)
            })
            .collect();
        let mut table = BTreeMap::new();
        for (pair, p) in pairs.into_iter().zip(expressed) {
            table.insert(pair, p?);
        }
        let algebra = ConformalAlgebra::from_fn(name, generators, |i, j| {
            table.remove(&(i, j)).unwrap_or_default()
        });
        Ok(Subalgebra { algebra, expresser })
    }
}
