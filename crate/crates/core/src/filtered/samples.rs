//! Small foliation maps of relative rank one, used by the examples and the
//! acceptance suite.

use std::sync::Arc;

use super::{check_foliation, Caps, FilteredDga, FoliationMap, FoliationPresentation};
use crate::derham::de_rham;
use crate::graded::{Algebra, Derivation, DgAlgebra, Generator, Poly};
use crate::{Error, Result};

/// `F → G` over a common base, with the generator images.
#[derive(Clone, Debug)]
pub struct SampleMap {
    pub name: &'static str,
    pub source: FoliationPresentation,
    pub target: FoliationPresentation,
    pub images: Vec<Poly>,
}

impl SampleMap {
    pub fn map(&self) -> FoliationMap<'_> {
        FoliationMap { source: &self.source, target: &self.target, images: self.images.clone() }
    }
}

fn present(f: FilteredDga, base: &DgAlgebra, caps: Caps) -> Result<FoliationPresentation> {
    check_foliation(&f, base, caps)?
        .presentation()
        .cloned()
        .ok_or_else(|| Error::Internal("sample is not a foliation".into()))
}

fn polynomial(vars: &[&str]) -> Result<DgAlgebra> {
    Ok(DgAlgebra::free(Arc::new(Algebra::new(vars.iter().map(|v| Generator::new(*v, 0)).collect())?)))
}

/// Three rank-one maps:
///
/// * `trivial_to_de_rham`: `ℚ[x]` with no leaves → `DR(ℚ[x])`;
/// * `leaf_to_de_rham`: the foliation of the plane by `x`-lines (only
///   `d(x)` adjoined, `d(y) = 0` leafwise) → `DR(ℚ[x, y])`;
/// * `even_direction`: `ℚ[x]` → `ℚ[x, t]` with `t` of degree 0 and weight 1.
pub fn rank_one_maps(caps: Caps) -> Result<Vec<SampleMap>> {
    let mut out = Vec::new();

    let line = polynomial(&["x"])?;
    let dr = de_rham(&line)?;
    out.push(SampleMap {
        name: "trivial_to_de_rham",
        source: present(FilteredDga::new(line.clone(), vec![0])?, &line, caps)?,
        target: present(dr.filtered().clone(), &line, caps)?,
        images: vec![dr.algebra().gen(0)],
    });

    let plane = polynomial(&["x", "y"])?;
    let dr = de_rham(&plane)?;
    let a = dr.algebra();
    let leaf_alg = Arc::new(plane.algebra().extend([Generator::with_weights("d(x)", 1, 0, 1)])?);
    let d = Derivation::new(&leaf_alg, 1, (0, 1), [(0, leaf_alg.gen(2))])?;
    let leaf = FilteredDga::new(DgAlgebra::new(leaf_alg, d)?, vec![0, 0, 1])?;
    let dx = dr.form_generator(0).expect("form");
    out.push(SampleMap {
        name: "leaf_to_de_rham",
        source: present(leaf, &plane, caps)?,
        target: present(dr.filtered().clone(), &plane, caps)?,
        images: vec![a.gen(0), a.gen(1), a.gen(dx)],
    });

    let ext = Arc::new(line.algebra().extend([Generator::new("t", 0)])?);
    let target = FilteredDga::new(DgAlgebra::free(ext.clone()), vec![0, 1])?;
    out.push(SampleMap {
        name: "even_direction",
        source: present(FilteredDga::new(line.clone(), vec![0])?, &line, caps)?,
        target: present(target, &line, caps)?,
        images: vec![ext.gen(0)],
    });
    Ok(out)
}
