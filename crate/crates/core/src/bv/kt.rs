use std::collections::BTreeMap;
use std::sync::Arc;

use super::potential::{derived_critical_locus, Potential};
use crate::graded::{cohomology_truncated, Algebra, Derivation, DgAlgebra, Generator};
use crate::{Error, Result};

/// Generators adjoined at one stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KtStage {
    pub stage: u32,
    pub generators: Vec<usize>,
}

/// A Koszul-Tate resolution of `ℚ[x]/(∂S)`, certified within a
/// polynomial-degree cap.
#[derive(Clone, Debug)]
pub struct KoszulTate {
    pub potential: Potential,
    pub dga: DgAlgebra,
    /// Stage 1 holds the antifields.
    pub stages: Vec<KtStage>,
    pub max_stage: u32,
    pub cap: u32,
    /// `dim H^{-j}` for `j = 1..=max_stage`, within the cap.
    pub cohomology: BTreeMap<i32, usize>,
    /// Negative degrees `-1, -2, ...` on which the cohomology vanishes,
    /// up to the first nonzero one.
    pub certified: Vec<i32>,
    /// `H^{-j} = 0` for `j = 1..=max(1, max_stage - 1)`.
    pub complete: bool,
}

impl KoszulTate {
    pub fn algebra(&self) -> &Arc<Algebra> {
        self.dga.algebra()
    }

    /// Whether `H^k = 0` was certified.
    pub fn is_certified(&self, k: i32) -> bool {
        self.certified.contains(&k)
    }

    /// Generators adjoined after the antifields, in order.
    pub fn higher_generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.stages.iter().filter(|s| s.stage >= 2).flat_map(|s| s.generators.iter().copied())
    }

    pub fn stage(&self, s: u32) -> Option<&KtStage> {
        self.stages.iter().find(|st| st.stage == s)
    }
}

/// Adjoins generators of degree `-s` for `s = 2..=max_stage`, one per
/// least cohomology representative of `H^{-(s-1)}`, until that group
/// vanishes within the cap.
pub fn koszul_tate(p: &Potential, max_stage: u32, cap: u32) -> Result<KoszulTate> {
    if max_stage < 1 {
        return Err(Error::Precondition("max_stage must be at least 1".into()));
    }
    let mut dga = derived_critical_locus(p)?.dga;
    let m = p.len();
    let mut stages = vec![KtStage { stage: 1, generators: (m..2 * m).collect() }];
    let mut count = 0usize;
    for s in 2..=max_stage {
        let k = -(s as i32 - 1);
        let mut stage = KtStage { stage: s, generators: Vec::new() };
        loop {
            let h = cohomology_truncated(&dga, (k, k), cap)?;
            let piece = h.piece(k).expect("window");
            let Some(rep) = piece.representatives.first() else { break };
            count += 1;
            let alg = dga.algebra();
            let new = Arc::new(alg.extend([Generator::new(format!("c{count}"), -(s as i32))])?);
            let mut d = Derivation::new(&new, 1, (0, 0), (0..alg.len()).map(|i| (i, dga.differential().value(i))))?;
            d.set(&new, alg.len(), rep.clone())?;
            stage.generators.push(alg.len());
            dga = DgAlgebra::new(new, d)?;
        }
        stages.push(stage);
    }
    let lo = -(max_stage as i32);
    let h = cohomology_truncated(&dga, (lo, -1), cap)?;
    let cohomology: BTreeMap<i32, usize> = h.pieces.iter().map(|(k, p)| (*k, p.dimension)).collect();
    let certified: Vec<i32> = (lo..=-1).rev().take_while(|k| cohomology[k] == 0).collect();
    let need = max_stage.saturating_sub(1).max(1) as i32;
    let complete = (1..=need).all(|j| cohomology.get(&-j).is_some_and(|&d| d == 0));
    Ok(KoszulTate { potential: p.clone(), dga, stages, max_stage, cap, cohomology, certified, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    fn pot(vars: &[&str], s: &str) -> Potential {
        let alg = Arc::new(Algebra::new(vars.iter().map(|v| Generator::new(*v, 0)).collect()).unwrap());
        let s = parse_poly(&alg, s).unwrap();
        Potential::new(alg, s).unwrap()
    }

    #[test]
    fn regular_needs_nothing() {
        let kt = koszul_tate(&pot(&["x"], "1/2*x^2"), 2, 6).unwrap();
        assert_eq!(kt.higher_generators().count(), 0);
        assert!(kt.complete);
        assert!(kt.is_certified(-1));
    }

    #[test]
    fn zero_potential_kills_antifield() {
        let kt = koszul_tate(&pot(&["x"], "0"), 2, 5).unwrap();
        let c: Vec<usize> = kt.higher_generators().collect();
        assert_eq!(c.len(), 1);
        let a = kt.algebra();
        assert_eq!(kt.dga.differential().value(c[0]), a.gen(1));
        assert_eq!(kt.cohomology[&-1], 0);
    }

    #[test]
    fn syzygy_of_x2y() {
        let kt = koszul_tate(&pot(&["x", "y"], "x^2*y"), 2, 6).unwrap();
        let c: Vec<usize> = kt.higher_generators().collect();
        assert_eq!(c.len(), 1);
        let a = kt.algebra();
        let sigma = parse_poly(a, "x*xi_x - 2*y*xi_y").unwrap();
        let dc = kt.dga.differential().value(c[0]);
        let (m, c) = dc.leading().unwrap();
        assert_eq!(dc.scale(&(sigma.coefficient(m) / c)), sigma);
        assert!(kt.complete);
        assert!(kt.dga.check_square_zero().is_ok());
    }
}
