use std::sync::Arc;

use super::{Algebra, DgAlgebra, Grading, Poly};
use crate::{Error, Result};

/// A map of free graded-commutative algebras, given by the images of the
/// source generators.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    images: Vec<Poly>,
}

impl AlgebraMap {
    /// Checks that each image has the degree of its generator.
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Precondition(format!("{} images for {} generators", images.len(), source.len())));
        }
        for (i, img) in images.iter().enumerate() {
            target.check(img)?;
            match target.grading(img) {
                Grading::Zero => {}
                Grading::Homogeneous { degree, .. } if degree == source.generator(i).degree => {}
                _ => {
                    return Err(Error::Precondition(format!(
                        "image of `{}` is not of degree {}",
                        source.generator(i).name,
                        source.generator(i).degree
                    )))
                }
            }
        }
        Ok(AlgebraMap { source, target, images })
    }

    /// Like [`AlgebraMap::new`], and also checks `f ∘ d = d ∘ f` on
    /// generators.
    pub fn dga(source: &DgAlgebra, target: &DgAlgebra, images: Vec<Poly>) -> Result<Self> {
        let f = AlgebraMap::new(source.algebra().clone(), target.algebra().clone(), images)?;
        for i in 0..f.source.len() {
            let lhs = f.apply(&source.differential().value(i))?;
            let rhs = target.d(&f.images[i])?;
            if lhs != rhs {
                return Err(Error::Precondition(format!(
                    "the map does not commute with the differentials on `{}`",
                    f.source.generator(i).name
                )));
            }
        }
        Ok(f)
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.source.substitute(p, &self.images, &self.target)
    }
}
