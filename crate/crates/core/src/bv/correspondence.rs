use std::sync::Arc;

use num_traits::{One, Zero};

use super::ce::BvAlgebra;
use super::cme::{verify_cme, CmeCertificate};
use super::kt::KoszulTate;
use super::potential::{derived_critical_locus, Potential};
use crate::derham::{check_isotropic_lagrangian, IsotropyReport};
use crate::graded::{Algebra, AlgebraMap, DgAlgebra, Generator, Poly};
use crate::{Error, Result, Q};

pub const COISOTROPIC_STATUS: &str = "stated, not machine-checked";
pub const PERFECT_COTANGENT: &str =
    "the strict critical locus is assumed to have a perfect cotangent complex; this is not verified";

/// A presentation of `ℚ[x]/(∂S)` as a polynomial ring, obtained by solving
/// the gradient equations for variables that occur linearly.
#[derive(Clone, Debug)]
pub struct StrictModel {
    pub dga: DgAlgebra,
    /// `(variable, expression in the surviving variables)`.
    pub eliminated: Vec<(String, Poly)>,
    /// The map `O(dCrit(S)) → model`: coordinates to their values,
    /// antifields to zero.
    pub map: AlgebraMap,
}

/// Eliminates variables `x_j` from gradient components of the form
/// `c·x_j + (terms free of x_j)`; `None` when some component survives.
pub fn strict_model(p: &Potential) -> Result<Option<StrictModel>> {
    let alg = p.algebra();
    let m = p.len();
    let mut eqs: Vec<Poly> = p.gradient().to_vec();
    // current value of each variable, over the full coordinate ring
    let mut values: Vec<Poly> = (0..m).map(|i| alg.gen(i)).collect();
    let mut gone = vec![false; m];
    loop {
        eqs.retain(|e| !e.is_zero());
        let pick = eqs.iter().enumerate().find_map(|(k, e)| {
            (0..m).filter(|&j| !gone[j]).find_map(|j| {
                let lin = crate::graded::Monomial::var(j);
                let c = e.coefficient(&lin);
                let rest = e.filter(|mo| *mo != lin);
                (!c.is_zero() && rest.terms().all(|(mo, _)| mo.exponent(j) == 0))
                    .then(|| (k, j, rest.scale(&(-Q::one() / c))))
            })
        });
        let Some((k, j, expr)) = pick else { break };
        eqs.remove(k);
        gone[j] = true;
        let mut sub: Vec<Poly> = (0..m).map(|i| alg.gen(i)).collect();
        sub[j] = expr;
        for e in eqs.iter_mut().chain(values.iter_mut()) {
            *e = alg.substitute(e, &sub, alg)?;
        }
    }
    if !eqs.is_empty() {
        return Ok(None);
    }
    let keep: Vec<usize> = (0..m).filter(|&i| !gone[i]).collect();
    let target = Arc::new(Algebra::new(keep.iter().map(|&i| alg.generator(i).clone()).collect::<Vec<Generator>>())?);
    let mut rename = vec![Poly::zero(); m];
    for (k, &i) in keep.iter().enumerate() {
        rename[i] = target.gen(k);
    }
    let images: Vec<Poly> = values.iter().map(|v| alg.substitute(v, &rename, &target)).collect::<Result<_>>()?;
    let eliminated = (0..m).filter(|&i| gone[i]).map(|i| (alg.generator(i).name.clone(), images[i].clone())).collect();
    let dcrit = derived_critical_locus(p)?;
    let model = DgAlgebra::free(target.clone());
    let mut all = images;
    all.extend((0..m).map(|_| Poly::zero()));
    let map = AlgebraMap::dga(&dcrit.dga, &model, all)?;
    Ok(Some(StrictModel { dga: model, eliminated, map }))
}

/// One antibracket pairing on the BV side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingEntry {
    pub q: String,
    pub p: String,
    pub value: Q,
}

/// Both legs of `stCrit(S) → dCrit(S)` and `stCrit(S) → BV`.
#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub strict_model: Option<StrictModel>,
    /// `f*ω` under `ξ ↦ 0`, which the strict leg needs to vanish.
    pub pullback_vanishes: bool,
    /// `None` when no polynomial strict model was found.
    pub isotropy: Option<IsotropyReport>,
    pub bracket_degree: i32,
    pub pairings: Vec<PairingEntry>,
    pub cme_ok: bool,
    pub coisotropic: &'static str,
    pub hypotheses: Vec<String>,
}

/// Checks the strict leg (isotropy of `stCrit(S) → dCrit(S)` with zero
/// homotopy) and reports the BV leg. A certificate is required.
pub fn check_correspondence(
    p: &Potential,
    kt: &KoszulTate,
    bv: &BvAlgebra,
    cert: Option<&CmeCertificate>,
) -> Result<CorrespondenceReport> {
    let cert = cert.ok_or_else(|| Error::Certificate("no master-equation certificate supplied".into()))?;
    if kt.potential.s() != p.s() || kt.potential.algebra().generators() != p.algebra().generators() {
        return Err(Error::Precondition("the Koszul-Tate resolution is for a different potential".into()));
    }
    let cme_ok = verify_cme(bv, cert)?.is_ok();
    let dcrit = derived_critical_locus(p)?;
    let m = p.len();
    let a = dcrit.de_rham.algebra();
    let mut kill = (0..a.len()).map(|i| a.gen(i)).collect::<Vec<_>>();
    for i in 0..m {
        kill[dcrit.de_rham.form_generator(m + i).expect("form")] = Poly::zero();
        kill[m + i] = Poly::zero();
    }
    let pullback_vanishes = a.substitute(&dcrit.symplectic.tower.form(2), &kill, a)?.is_zero();
    let strict = strict_model(p)?;
    let isotropy = match &strict {
        Some(s) => Some(check_isotropic_lagrangian(&dcrit.de_rham, &dcrit.symplectic, &s.dga, &s.map, &[])?),
        None => None,
    };
    let alg = bv.algebra();
    let mut pairings = Vec::new();
    for i in 0..alg.len() {
        if let Some((j, v)) = bv.pairing().partner(i) {
            if i < j {
                pairings.push(PairingEntry {
                    q: alg.generator(i).name.clone(),
                    p: alg.generator(j).name.clone(),
                    value: v.clone(),
                });
            }
        }
    }
    Ok(CorrespondenceReport {
        strict_model: strict,
        pullback_vanishes,
        isotropy,
        bracket_degree: bv.pairing().degree(),
        pairings,
        cme_ok,
        coisotropic: COISOTROPIC_STATUS,
        hypotheses: vec![PERFECT_COTANGENT.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::super::{ce_algebra, koszul_tate, solve_cme};
    use super::*;
    use crate::derham::{IsotropyVerdict, LagrangianVerdict};
    use crate::expr::parse_poly;

    fn run(vars: &[&str], s: &str) -> CorrespondenceReport {
        let alg = Arc::new(Algebra::new(vars.iter().map(|v| Generator::new(*v, 0)).collect()).unwrap());
        let p = Potential::new(alg.clone(), parse_poly(&alg, s).unwrap()).unwrap();
        let kt = koszul_tate(&p, 2, 4).unwrap();
        let bv = ce_algebra(&kt).unwrap();
        let cert = solve_cme(&bv, 2, 4).unwrap();
        check_correspondence(&p, &kt, &bv, Some(&cert)).unwrap()
    }

    #[test]
    fn quadratic_is_lagrangian() {
        let r = run(&["x"], "1/2*x^2");
        assert!(r.pullback_vanishes && r.cme_ok);
        let model = r.strict_model.unwrap();
        assert_eq!(model.eliminated, [("x".to_string(), Poly::zero())]);
        assert!(r.isotropy.unwrap().is_lagrangian());
        assert_eq!(r.bracket_degree, 1);
        assert_eq!(r.pairings.len(), 1);
    }

    #[test]
    fn zero_potential_counts_one_relative_generator() {
        let r = run(&["x"], "0");
        match r.isotropy.unwrap().verdict {
            IsotropyVerdict::Isotropic(LagrangianVerdict::Lagrangian { relative_generators, .. }) => {
                assert_eq!(relative_generators.len(), 1)
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn cubic_has_no_polynomial_model() {
        let r = run(&["x"], "1/3*x^3");
        assert!(r.strict_model.is_none() && r.isotropy.is_none());
    }

    #[test]
    fn certificate_is_required() {
        let alg = Arc::new(Algebra::new(vec![Generator::new("x", 0)]).unwrap());
        let p = Potential::new(alg.clone(), parse_poly(&alg, "1/2*x^2").unwrap()).unwrap();
        let kt = koszul_tate(&p, 2, 4).unwrap();
        let bv = ce_algebra(&kt).unwrap();
        assert!(matches!(check_correspondence(&p, &kt, &bv, None), Err(Error::Certificate(_))));
    }
}
