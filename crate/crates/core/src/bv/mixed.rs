use std::collections::BTreeMap;

use super::ce::BvAlgebra;
use super::cme::{verify_cme, CmeCertificate};
use crate::filtered::{check_foliation, Caps, FilteredDga, FoliationCheck};
use crate::graded::{Derivation, DgAlgebra, Poly};
use crate::{Error, Result};

/// `ε = {𝒮, -}` on `CE(L)`, split by how much it raises the ghost number.
#[derive(Clone, Debug)]
pub struct MixedStructure {
    pub order: u32,
    pub epsilon: Derivation,
    /// `ε_i(g)` for each generator `g`, keyed by `i`.
    pub components: BTreeMap<u32, Vec<Poly>>,
    /// Generators on which `ε₀` differs from the Koszul-Tate differential,
    /// with the difference.
    pub eps0_residue: Vec<(String, Poly)>,
    /// Generators on which `ε²` has a component of ghost change below
    /// `N`, with that part.
    pub square_residue: Vec<(String, Poly)>,
    /// The ghost-filtered `CE(L)` checked as a foliation over the
    /// Koszul-Tate model.
    pub foliation: FoliationCheck,
}

impl MixedStructure {
    pub fn is_ok(&self) -> bool {
        self.eps0_residue.is_empty() && self.square_residue.is_empty() && self.foliation.is_foliation()
    }

    pub fn component(&self, i: u32) -> Option<&[Poly]> {
        self.components.get(&i).map(Vec::as_slice)
    }
}

/// Builds the weak mixed structure of a verified certificate and checks
/// `ε₀ = d`, `ε² ≡ 0` modulo the truncation, and the foliation condition
/// within `caps`.
pub fn mixed_structure(bv: &BvAlgebra, cert: &CmeCertificate, caps: Caps) -> Result<MixedStructure> {
    let v = verify_cme(bv, cert)?;
    if let Some((c, _)) = v.failure() {
        return Err(Error::Precondition(format!("certificate fails the {} condition", c.as_str())));
    }
    let alg = bv.algebra();
    let action = cert.action();
    let mut epsilon = Derivation::zero(1);
    let mut components: BTreeMap<u32, Vec<Poly>> = BTreeMap::new();
    for i in 0..alg.len() {
        let g = alg.gen(i);
        let e = bv.bracket(&action, &g)?;
        let base = bv.ghost_of(g.leading().expect("generator").0);
        for (k, part) in bv.ghost_components(&e) {
            let shift = k
                .checked_sub(base)
                .ok_or_else(|| Error::Internal(format!("ε lowers the ghost number on `{}`", alg.generator(i).name)))?;
            components.entry(shift).or_insert_with(|| vec![Poly::zero(); alg.len()])[i] = part;
        }
        epsilon.set_unchecked(i, e);
    }
    let kt = bv.kt();
    let zero = vec![Poly::zero(); alg.len()];
    let eps0 = components.get(&0).unwrap_or(&zero);
    let eps0_residue = (0..bv.kt_len())
        .filter_map(|i| {
            let r = &eps0[i] - &kt.dga.differential().value(i);
            (!r.is_zero()).then(|| (alg.generator(i).name.clone(), r))
        })
        .collect();
    let mut square_residue = Vec::new();
    for i in 0..alg.len() {
        let g = alg.gen(i);
        let base = bv.ghost_of(g.leading().expect("generator").0);
        let sq = bv.bracket(&action, &epsilon.value(i))?;
        let low = sq.filter(|m| bv.ghost_of(m) < base + cert.order);
        if !low.is_zero() {
            square_residue.push((alg.generator(i).name.clone(), low));
        }
    }
    let weights = (0..alg.len()).map(|i| u32::from(bv.is_dual(i))).collect();
    let filtered = FilteredDga::new(DgAlgebra::new(alg.clone(), epsilon.clone())?, weights)?;
    let foliation = check_foliation(&filtered, &kt.dga, caps)?;
    Ok(MixedStructure { order: cert.order, epsilon, components, eps0_residue, square_residue, foliation })
}
