//! Canonical JSON reports.
//!
//! Every report is a struct whose fields serialize in declaration order,
//! so key order is fixed. Rationals are `"p/q"` strings, polynomials use the
//! canonical text of [`format_poly`], and dimension tables are lists of rows
//! sorted by their keys. [`to_json`] pretty-prints with two-space indent and
//! a trailing newline, so identical inputs give byte-identical files.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bv::{
    ce_algebra, koszul_tate, BvAlgebra, CmeCertificate, CmeVerdict, CorrespondenceReport, KoszulTate, MixedStructure,
    Potential,
};
use crate::derham::{IsotropyVerdict, LagrangianVerdict, SymplecticCheck, TowerCheck};
use crate::expr::{format_poly, parse_poly, q_string};
use crate::filtered::{DimTable, FoliationCheck, FoliationFailure};
use crate::graded::{Algebra, DgAlgebra, Generator, Poly};
use crate::{Error, Result};

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn poly(alg: &Algebra, p: &Poly) -> String {
    format_poly(alg, p)
}

pub fn matrix(alg: &Algebra, m: &[Vec<Poly>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|p| poly(alg, p)).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRow {
    pub name: String,
    pub degree: i32,
    pub weight: i32,
    pub hodge: i32,
}

pub fn generator_rows(alg: &Algebra) -> Vec<GeneratorRow> {
    alg.generators()
        .iter()
        .map(|g| GeneratorRow { name: g.name.clone(), degree: g.degree, weight: g.weight, hodge: g.hodge })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRow {
    pub generator: String,
    pub value: String,
}

pub fn differential_rows(dga: &DgAlgebra) -> Vec<ValueRow> {
    let alg = dga.algebra();
    (0..alg.len())
        .filter_map(|i| {
            let v = dga.differential().value_ref(i)?;
            Some(ValueRow { generator: alg.generator(i).name.clone(), value: poly(alg, v) })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub weight: i32,
    pub degree: i32,
    pub dim: usize,
}

pub fn dim_rows(t: &DimTable) -> Vec<DimRow> {
    t.iter().map(|(&(weight, degree), &dim)| DimRow { weight, degree, dim }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapsJson {
    pub weight: u32,
    pub degrees: [i32; 2],
    pub polydegree: u32,
}

impl From<crate::filtered::Caps> for CapsJson {
    fn from(c: crate::filtered::Caps) -> Self {
        CapsJson { weight: c.weight, degrees: [c.degrees.0, c.degrees.1], polydegree: c.polydegree }
    }
}

// algebra check

#[derive(Clone, Debug, Serialize)]
pub struct SquareZeroJson {
    pub ok: bool,
    pub generator: Option<String>,
    pub residue: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignsJson {
    pub ok: bool,
    pub pairs_checked: usize,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub command: &'static str,
    pub ok: bool,
    pub generators: Vec<GeneratorRow>,
    pub differential: Vec<ValueRow>,
    pub square_zero: SquareZeroJson,
    pub signs: SignsJson,
}

/// `g h = (-1)^{|g||h|} h g` on generator pairs, and `g² = 0` for odd `g`.
fn sign_audit(alg: &Algebra) -> Result<SignsJson> {
    let mut checked = 0;
    for i in 0..alg.len() {
        for j in 0..alg.len() {
            checked += 1;
            let (a, b) = (alg.gen(i), alg.gen(j));
            let ab = alg.mul(&a, &b)?;
            let ba = alg.mul(&b, &a)?.scale(&alg.koszul_sign(&a, &b));
            let square_ok = i != j || !alg.is_odd(i) || ab.is_zero();
            if ab != ba || !square_ok {
                let names = (&alg.generator(i).name, &alg.generator(j).name);
                return Ok(SignsJson {
                    ok: false,
                    pairs_checked: checked,
                    failure: Some(format!("{} * {}", names.0, names.1)),
                });
            }
        }
    }
    Ok(SignsJson { ok: true, pairs_checked: checked, failure: None })
}

pub fn algebra_report(dga: &DgAlgebra) -> Result<AlgebraReport> {
    let alg = dga.algebra();
    let square_zero = match dga.check_square_zero() {
        crate::graded::SquareZero::Ok => SquareZeroJson { ok: true, generator: None, residue: None },
        crate::graded::SquareZero::Counterexample { generator, residue } => {
            SquareZeroJson { ok: false, generator: Some(generator), residue: Some(poly(alg, &residue)) }
        }
    };
    let signs = sign_audit(alg)?;
    Ok(AlgebraReport {
        command: "algebra check",
        ok: square_zero.ok && signs.ok,
        generators: generator_rows(alg),
        differential: differential_rows(dga),
        square_zero,
        signs,
    })
}

// foliation checks

#[derive(Clone, Debug, Serialize)]
pub struct SymRowJson {
    pub weight: u32,
    pub degree: i32,
    pub gr: usize,
    pub sym: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankRow {
    pub weight: u32,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FoliationJson {
    pub ok: bool,
    pub failure: Option<String>,
    pub cot: Vec<GeneratorDegree>,
    pub rank_by_weight: Vec<RankRow>,
    pub sym_table: Vec<SymRowJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorDegree {
    pub name: String,
    pub degree: i32,
}

pub fn foliation_json(f: &FoliationCheck) -> FoliationJson {
    match f {
        FoliationCheck::Foliation(p) => FoliationJson {
            ok: true,
            failure: None,
            cot: p.cot.iter().map(|(name, degree)| GeneratorDegree { name: name.clone(), degree: *degree }).collect(),
            rank_by_weight: p.rank_by_weight.iter().map(|(&weight, &rank)| RankRow { weight, rank }).collect(),
            sym_table: p
                .sym_table
                .iter()
                .map(|r| SymRowJson { weight: r.weight, degree: r.degree, gr: r.gr, sym: r.sym })
                .collect(),
        },
        FoliationCheck::Counterexample(e) => FoliationJson {
            ok: false,
            failure: Some(match e {
                FoliationFailure::Base(s) => s.clone(),
                FoliationFailure::Sym { weight, degree, gr, sym } => {
                    format!("weight {weight}, degree {degree}: gr has dimension {gr}, Sym has {sym}")
                }
            }),
            cot: Vec::new(),
            rank_by_weight: Vec::new(),
            sym_table: Vec::new(),
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DrReport {
    pub command: &'static str,
    pub ok: bool,
    pub caps: CapsJson,
    pub generators: Vec<GeneratorRow>,
    pub gr_check: FoliationJson,
}

// symplectic check

#[derive(Clone, Debug, Serialize)]
pub struct TowerJson {
    pub ok: bool,
    pub index: Option<u32>,
    pub weight: Option<u32>,
    pub residue: Option<String>,
}

pub fn tower_json(alg: &Algebra, t: &TowerCheck) -> TowerJson {
    match t {
        TowerCheck::Ok => TowerJson { ok: true, index: None, weight: None, residue: None },
        TowerCheck::Counterexample { index, weight, residue } => {
            TowerJson { ok: false, index: Some(*index), weight: Some(*weight), residue: Some(poly(alg, residue)) }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymplecticJson {
    pub verdict: &'static str,
    pub generators: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
    pub block_degree: Option<i32>,
    pub witness: Option<String>,
}

pub fn symplectic_json(alg: &Algebra, base: &Algebra, s: &SymplecticCheck) -> SymplecticJson {
    match s {
        SymplecticCheck::Symplectic(st) => SymplecticJson {
            verdict: "symplectic",
            generators: st.generators.iter().map(|&g| base.generator(g).name.clone()).collect(),
            matrix: matrix(alg, &st.matrix),
            determinant: poly(alg, &st.determinant),
            block_degree: None,
            witness: None,
        },
        SymplecticCheck::Degenerate { matrix: m, determinant, block_degree, witness } => SymplecticJson {
            verdict: "degenerate",
            generators: Vec::new(),
            matrix: matrix(alg, m),
            determinant: poly(alg, determinant),
            block_degree: Some(*block_degree),
            witness: Some(poly(alg, witness)),
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymplecticReport {
    pub command: &'static str,
    pub ok: bool,
    pub shift: i32,
    pub tower: TowerJson,
    pub symplectic: Option<SymplecticJson>,
}

// poisson

#[derive(Clone, Debug, Serialize)]
pub struct ResidueRow {
    pub weight: u32,
    pub residue: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct McReport {
    pub command: &'static str,
    pub ok: bool,
    pub shift: i32,
    pub bracket_degree: i32,
    pub pi: String,
    pub residues: Vec<ResidueRow>,
    pub failure: Option<ResidueRow>,
}

pub fn residue_rows(alg: &Algebra, r: &BTreeMap<u32, Poly>) -> Vec<ResidueRow> {
    r.iter().map(|(&weight, p)| ResidueRow { weight, residue: poly(alg, p) }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaJson {
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
    pub block_degree: Option<i32>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub command: &'static str,
    pub ok: bool,
    pub shift: i32,
    pub bivector: String,
    pub theta: ThetaJson,
    pub omega: Option<String>,
    pub omega_matrix: Option<Vec<Vec<String>>>,
    pub back: Option<String>,
    pub round_trip: bool,
}

// critical loci

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialJson {
    pub variables: Vec<String>,
    #[serde(rename = "S")]
    pub s: String,
}

pub fn potential_json(p: &Potential) -> PotentialJson {
    PotentialJson {
        variables: p.algebra().generators().iter().map(|g| g.name.clone()).collect(),
        s: poly(p.algebra(), p.s()),
    }
}

/// Rebuilds a potential from its JSON form.
pub fn potential_from_json(p: &PotentialJson) -> Result<Potential> {
    let alg = Arc::new(Algebra::new(p.variables.iter().map(|v| Generator::new(v.clone(), 0)).collect())?);
    let s = parse_poly(&alg, &p.s)?;
    Potential::new(alg, s)
}

#[derive(Clone, Debug, Serialize)]
pub struct PolydegreeRow {
    pub polydegree: u32,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrictJson {
    pub cap: u32,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub table: Vec<PolydegreeRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DcritReport {
    pub command: &'static str,
    pub ok: bool,
    pub potential: PotentialJson,
    pub generators: Vec<GeneratorRow>,
    pub differential: Vec<ValueRow>,
    pub square_zero: bool,
    pub omega: String,
    pub pairing_determinant: String,
    pub strict_locus: StrictJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RosterRow {
    pub name: String,
    pub degree: i32,
    pub stage: u32,
    pub d: String,
}

pub fn roster(kt: &KoszulTate) -> Vec<RosterRow> {
    let alg = kt.algebra();
    let m = kt.potential.len();
    let mut rows: Vec<RosterRow> =
        (0..m).map(|i| RosterRow { name: alg.generator(i).name.clone(), degree: 0, stage: 0, d: "0".into() }).collect();
    for st in &kt.stages {
        for &g in &st.generators {
            rows.push(RosterRow {
                name: alg.generator(g).name.clone(),
                degree: alg.generator(g).degree,
                stage: st.stage,
                d: poly(alg, &kt.dga.differential().value(g)),
            });
        }
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub degree: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KtJson {
    pub max_stage: u32,
    pub cap: u32,
    pub roster: Vec<RosterRow>,
    pub cohomology: Vec<CohomologyRow>,
    pub certified: Vec<i32>,
    pub complete: bool,
}

pub fn kt_json(kt: &KoszulTate) -> KtJson {
    KtJson {
        max_stage: kt.max_stage,
        cap: kt.cap,
        roster: roster(kt),
        cohomology: kt.cohomology.iter().rev().map(|(&degree, &dim)| CohomologyRow { degree, dim }).collect(),
        certified: kt.certified.clone(),
        complete: kt.complete,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KtReport {
    pub command: &'static str,
    pub ok: bool,
    pub potential: PotentialJson,
    pub koszul_tate: KtJson,
}

// master equation

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRow {
    pub ghost: u32,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeRow {
    pub order: u32,
    pub candidates: usize,
    pub rank: usize,
    pub support: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionFlags {
    pub master_equation: bool,
    pub restriction: bool,
    pub linear_term: bool,
}

/// The certificate file: everything needed to rebuild `CE(L)` and re-check
/// the three conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub command: String,
    pub ok: bool,
    pub kind: String,
    pub potential: PotentialJson,
    pub koszul_tate: KtJson,
    pub order: u32,
    pub cap: u32,
    pub terms: Vec<TermRow>,
    pub residue: String,
    pub window: Vec<i32>,
    pub gauge: Vec<GaugeRow>,
    pub conditions: ConditionFlags,
}

pub const CERTIFICATE_KIND: &str = "cme_certificate";

pub fn certificate_json(bv: &BvAlgebra, c: &CmeCertificate) -> CertificateJson {
    let alg = bv.algebra();
    CertificateJson {
        command: "cme solve".into(),
        ok: c.master && c.restriction && c.linear,
        kind: CERTIFICATE_KIND.into(),
        potential: potential_json(&bv.kt().potential),
        koszul_tate: kt_json(bv.kt()),
        order: c.order,
        cap: c.cap,
        terms: c.terms.iter().map(|(&ghost, p)| TermRow { ghost, value: poly(alg, p) }).collect(),
        residue: poly(alg, &c.residue),
        window: c.window.clone(),
        gauge: c
            .gauge
            .iter()
            .map(|g| GaugeRow {
                order: g.order,
                candidates: g.candidates,
                rank: g.rank,
                support: g.support.iter().map(|m| poly(alg, &Poly::monomial(m.clone()))).collect(),
            })
            .collect(),
        conditions: ConditionFlags { master_equation: c.master, restriction: c.restriction, linear_term: c.linear },
    }
}

/// Rebuilds `CE(L)` from the recorded potential and resolution parameters,
/// checks that the recorded roster is the one obtained, and parses the
/// terms.
pub fn certificate_from_json(j: &CertificateJson) -> Result<(BvAlgebra, CmeCertificate)> {
    if j.kind != CERTIFICATE_KIND {
        return Err(Error::Certificate(format!("unexpected kind `{}`", j.kind)));
    }
    let p = potential_from_json(&j.potential)?;
    let kt = koszul_tate(&p, j.koszul_tate.max_stage, j.koszul_tate.cap)?;
    if roster(&kt) != j.koszul_tate.roster {
        return Err(Error::Certificate("recorded Koszul-Tate roster does not match the rebuilt resolution".into()));
    }
    let bv = ce_algebra(&kt)?;
    let alg = bv.algebra();
    let mut terms = BTreeMap::new();
    for t in &j.terms {
        if terms.insert(t.ghost, parse_poly(alg, &t.value)?).is_some() {
            return Err(Error::Certificate(format!("ghost order {} listed twice", t.ghost)));
        }
    }
    let residue = parse_poly(alg, &j.residue)?;
    let cert = CmeCertificate {
        order: j.order,
        cap: j.cap,
        terms,
        gauge: Vec::new(),
        window: j.window.clone(),
        certified: j.koszul_tate.certified.clone(),
        residue,
        master: j.conditions.master_equation,
        restriction: j.conditions.restriction,
        linear: j.conditions.linear_term,
    };
    Ok((bv, cert))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionJson {
    pub ok: bool,
    pub residue: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionsJson {
    pub master_equation: ConditionJson,
    pub restriction: ConditionJson,
    pub linear_term: ConditionJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureJson {
    pub condition: &'static str,
    pub residue: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub ok: bool,
    pub order: u32,
    pub conditions: ConditionsJson,
    pub failure: Option<FailureJson>,
}

pub fn verify_report(bv: &BvAlgebra, order: u32, v: &CmeVerdict) -> VerifyReport {
    let alg = bv.algebra();
    let c = |p: &Poly| ConditionJson { ok: p.is_zero(), residue: poly(alg, p) };
    VerifyReport {
        command: "cme verify",
        ok: v.is_ok(),
        order,
        conditions: ConditionsJson {
            master_equation: c(&v.master),
            restriction: c(&v.restriction),
            linear_term: c(&v.linear),
        },
        failure: v.failure().map(|(cond, r)| FailureJson { condition: cond.as_str(), residue: poly(alg, r) }),
    }
}

// correspondence

#[derive(Clone, Debug, Serialize)]
pub struct EliminatedRow {
    pub variable: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrictModelJson {
    pub variables: Vec<String>,
    pub eliminated: Vec<EliminatedRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotropicLegJson {
    pub verdict: &'static str,
    pub pullback: Vec<String>,
    pub relative_generators: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub determinant: Option<String>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingRow {
    pub q: String,
    pub p: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MixedJson {
    pub eps0_equals_d: bool,
    pub square_vanishes: bool,
    pub components: Vec<u32>,
    pub foliation: FoliationJson,
}

pub fn mixed_json(m: &MixedStructure) -> MixedJson {
    MixedJson {
        eps0_equals_d: m.eps0_residue.is_empty(),
        square_vanishes: m.square_residue.is_empty(),
        components: m.components.keys().copied().collect(),
        foliation: foliation_json(&m.foliation),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BvLegJson {
    pub bracket_degree: i32,
    pub pairings: Vec<PairingRow>,
    pub cme_ok: bool,
    pub mixed: MixedJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceJson {
    pub command: &'static str,
    pub ok: bool,
    pub potential: PotentialJson,
    pub strict_model: Option<StrictModelJson>,
    pub pullback_vanishes: bool,
    pub isotropic_leg: IsotropicLegJson,
    pub bv_leg: BvLegJson,
    pub coisotropic: &'static str,
    pub hypotheses: Vec<String>,
}

pub fn correspondence_json(p: &Potential, r: &CorrespondenceReport, mixed: &MixedStructure) -> CorrespondenceJson {
    let strict_model = r.strict_model.as_ref().map(|s| StrictModelJson {
        variables: s.dga.algebra().generators().iter().map(|g| g.name.clone()).collect(),
        eliminated: s
            .eliminated
            .iter()
            .map(|(v, e)| EliminatedRow { variable: v.clone(), value: poly(s.dga.algebra(), e) })
            .collect(),
    });
    let empty = IsotropicLegJson {
        verdict: "no_strict_model",
        pullback: Vec::new(),
        relative_generators: Vec::new(),
        matrix: Vec::new(),
        determinant: None,
        reason: Some("the gradient cannot be solved for linearly occurring variables".into()),
    };
    let (isotropic_leg, leg_ok) = match (&r.isotropy, &r.strict_model) {
        (Some(iso), Some(model)) => {
            let a = crate::derham::de_rham(&model.dga)
                .map(|d| d.algebra().clone())
                .unwrap_or_else(|_| model.dga.algebra().clone());
            let pullback = iso.pullback.iter().map(|q| poly(&a, q)).collect();
            let leg = match &iso.verdict {
                IsotropyVerdict::Fail { weight, residue } => IsotropicLegJson {
                    verdict: "not_isotropic",
                    pullback,
                    relative_generators: Vec::new(),
                    matrix: Vec::new(),
                    determinant: None,
                    reason: Some(format!("weight {weight}: residue {}", poly(&a, residue))),
                },
                IsotropyVerdict::Isotropic(LagrangianVerdict::Lagrangian {
                    relative_generators,
                    matrix: m,
                    determinant,
                }) => IsotropicLegJson {
                    verdict: "lagrangian",
                    pullback,
                    relative_generators: relative_generators.clone(),
                    matrix: matrix(&a, m),
                    determinant: Some(poly(&a, determinant)),
                    reason: None,
                },
                IsotropyVerdict::Isotropic(LagrangianVerdict::NotLagrangian {
                    relative_generators,
                    matrix: m,
                    reason,
                }) => IsotropicLegJson {
                    verdict: "not_lagrangian",
                    pullback,
                    relative_generators: relative_generators.clone(),
                    matrix: matrix(&a, m),
                    determinant: None,
                    reason: Some(reason.clone()),
                },
                IsotropyVerdict::Isotropic(LagrangianVerdict::NotEvaluated(why)) => IsotropicLegJson {
                    verdict: "not_evaluated",
                    pullback,
                    relative_generators: Vec::new(),
                    matrix: Vec::new(),
                    determinant: None,
                    reason: Some(why.clone()),
                },
            };
            (leg, iso.is_isotropic())
        }
        _ => (empty, true),
    };
    let mixed = mixed_json(mixed);
    let ok =
        leg_ok && r.pullback_vanishes && r.cme_ok && mixed.eps0_equals_d && mixed.square_vanishes && mixed.foliation.ok;
    CorrespondenceJson {
        command: "bv correspondence",
        ok,
        potential: potential_json(p),
        strict_model,
        pullback_vanishes: r.pullback_vanishes,
        isotropic_leg,
        bv_leg: BvLegJson {
            bracket_degree: r.bracket_degree,
            pairings: r
                .pairings
                .iter()
                .map(|e| PairingRow { q: e.q.clone(), p: e.p.clone(), value: q_string(&e.value) })
                .collect(),
            cme_ok: r.cme_ok,
            mixed,
        },
        coisotropic: r.coisotropic,
        hypotheses: r.hypotheses.clone(),
    }
}

// filtered modules

#[derive(Clone, Debug, Serialize)]
pub struct GrHomCase {
    pub index: usize,
    pub x_dim: usize,
    pub y_dim: usize,
    pub ok: bool,
    pub lhs: Vec<DimRow>,
    pub rhs: Vec<DimRow>,
    pub mismatch: Option<[i32; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrHomJson {
    pub command: &'static str,
    pub ok: bool,
    pub seed: u64,
    pub cases: Vec<GrHomCase>,
}
