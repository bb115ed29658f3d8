use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::ce::BvAlgebra;
use crate::graded::{Monomial, Poly, DEFAULT_PIECE_LIMIT};
use crate::linalg::{monomials_of_degree, Echelon, SparseVec};
use crate::{Error, Result, Q};

/// The choice made when solving one order: the candidate monomials, and the
/// particular solution picked by the echelon (pivots on the largest column).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge {
    pub order: u32,
    pub candidates: usize,
    pub rank: usize,
    pub support: Vec<Monomial>,
}

/// A solution of the classical master equation modulo `F^{N+1}`.
#[derive(Clone, Debug)]
pub struct CmeCertificate {
    pub order: u32,
    pub cap: u32,
    /// `𝒮_k` by ghost number `k`.
    pub terms: BTreeMap<u32, Poly>,
    pub gauge: Vec<Gauge>,
    /// Koszul-Tate degrees whose acyclicity the construction relied on.
    pub window: Vec<i32>,
    pub certified: Vec<i32>,
    /// `{𝒮, 𝒮}` with ghost numbers above `N` dropped.
    pub residue: Poly,
    pub master: bool,
    pub restriction: bool,
    pub linear: bool,
}

impl CmeCertificate {
    pub fn action(&self) -> Poly {
        let mut s = Poly::zero();
        for t in self.terms.values() {
            s += t;
        }
        s
    }

    /// The same data with the terms of ghost number above `k` removed.
    pub fn truncated(&self, k: u32) -> CmeCertificate {
        let mut c = self.clone();
        c.terms.retain(|&g, _| g <= k);
        c.gauge.retain(|g| g.order <= k);
        c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CmeCondition {
    MasterEquation,
    Restriction,
    LinearTerm,
}

impl CmeCondition {
    pub fn as_str(self) -> &'static str {
        match self {
            CmeCondition::MasterEquation => "master_equation",
            CmeCondition::Restriction => "restriction",
            CmeCondition::LinearTerm => "linear_term",
        }
    }
}

/// Residues of the three defining conditions; zero means satisfied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmeVerdict {
    pub master: Poly,
    pub restriction: Poly,
    pub linear: Poly,
}

impl CmeVerdict {
    pub fn is_ok(&self) -> bool {
        self.failure().is_none()
    }

    /// The first failing condition, in the order master equation,
    /// restriction, linear term.
    pub fn failure(&self) -> Option<(CmeCondition, &Poly)> {
        [
            (CmeCondition::MasterEquation, &self.master),
            (CmeCondition::Restriction, &self.restriction),
            (CmeCondition::LinearTerm, &self.linear),
        ]
        .into_iter()
        .find(|(_, r)| !r.is_zero())
    }
}

fn half() -> Q {
    Q::new(1.into(), 2.into())
}

/// Solves `{𝒮, 𝒮} = 0` modulo `F^{N+1}` order by order, starting from
/// `𝒮_0 + 𝒮_1 = S + S₁`.
///
/// At order `k ≥ 2` the obstruction `Q_k` is the ghost-`k` part of
/// `½{𝒮^{<k}, 𝒮^{<k}}`, and `𝒮_k` is a preimage of `-Q_k` under `ε₀`
/// among monomials of degree 0, ghost `k` and exponent at most `cap`.
/// Every Koszul-Tate degree `1 - |μ|` (for the dual parts `μ` of `Q_k`) and
/// `-1` must be certified acyclic.
pub fn solve_cme(bv: &BvAlgebra, order: u32, cap: u32) -> Result<CmeCertificate> {
    let alg = bv.algebra();
    let s = bv.kt().potential.s().clone();
    let s1 = bv.s1()?;
    let lin = &s + &s1;
    let sq = bv.bracket(&lin, &lin)?;
    for k in 0..=1 {
        let part = bv.ghost_component(&sq, k);
        if !part.is_zero() {
            return Err(Error::Internal(format!("ghost-{k} part of {{S + S1, S + S1}} is {part:?}")));
        }
    }
    let mut terms = BTreeMap::from([(0, s), (1, s1)]);
    let mut gauge = Vec::new();
    let mut window: BTreeSet<i32> = BTreeSet::new();
    if order >= 2 {
        window.insert(-1);
    }
    let mut total = lin.clone();
    for k in 2..=order {
        let q = bv.ghost_component(&bv.bracket(&total, &total)?, k).scale(&half());
        for (m, _) in q.terms() {
            let need = 1 - bv.dual_degree(m);
            if need < 0 {
                window.insert(need);
            }
        }
        if let Some(&bad) = window.iter().find(|&&w| !bv.kt().is_certified(w)) {
            return Err(Error::UncertifiedWindow(format!(
                "order {k} needs H^{bad} = 0 of the Koszul-Tate complex; certified degrees are {:?}",
                bv.kt().certified
            )));
        }
        if q.is_zero() {
            terms.insert(k, Poly::zero());
            gauge.push(Gauge { order: k, candidates: 0, rank: 0, support: Vec::new() });
            continue;
        }
        let all = |_: usize| true;
        let cands: Vec<Monomial> = monomials_of_degree(alg, 0, cap, &all, DEFAULT_PIECE_LIMIT)?
            .into_iter()
            .filter(|m| bv.ghost_of(m) == k)
            .collect();
        let mut cols: HashMap<Monomial, usize> = HashMap::new();
        let mut vector = |p: &Poly| -> SparseVec {
            p.terms()
                .map(|(m, c)| {
                    let n = cols.len();
                    (*cols.entry(m.clone()).or_insert(n), c.clone())
                })
                .collect()
        };
        let mut ech = Echelon::tracking();
        for m in &cands {
            let img = eps0(bv, &lin, &Poly::monomial(m.clone()), k)?;
            ech.insert(vector(&img));
        }
        let target = vector(&-&q);
        let pre = ech.preimage(&target).ok_or(Error::PreimageNotFound { order: k, cap })?;
        let sk: Poly = pre.iter().map(|(&i, c)| (cands[i].clone(), c.clone())).collect();
        gauge.push(Gauge {
            order: k,
            candidates: cands.len(),
            rank: ech.rank(),
            support: sk.terms().map(|(m, _)| m.clone()).collect(),
        });
        total += &sk;
        terms.insert(k, sk);
    }
    let mut cert = CmeCertificate {
        order,
        cap,
        terms,
        gauge,
        window: window.into_iter().rev().collect(),
        certified: bv.kt().certified.clone(),
        residue: Poly::zero(),
        master: false,
        restriction: false,
        linear: false,
    };
    let v = verify_cme(bv, &cert)?;
    cert.residue = v.master.clone();
    cert.master = v.master.is_zero();
    cert.restriction = v.restriction.is_zero();
    cert.linear = v.linear.is_zero();
    if !cert.master {
        return Err(Error::Internal(format!("solved action leaves residue {:?}", cert.residue)));
    }
    Ok(cert)
}

/// `ε₀(X)`: the ghost-preserving part of `{S + S₁, X}` for `X` of ghost `k`.
fn eps0(bv: &BvAlgebra, lin: &Poly, x: &Poly, k: u32) -> Result<Poly> {
    Ok(bv.ghost_component(&bv.bracket(lin, x)?, k))
}

/// Re-checks a certificate from scratch: `{𝒮, 𝒮} ≡ 0 mod F^{N+1}`,
/// `𝒮|_U = S`, and `𝒮 ≡ S + S₁ mod F²` with `S₁` recomputed.
pub fn verify_cme(bv: &BvAlgebra, cert: &CmeCertificate) -> Result<CmeVerdict> {
    let alg = bv.algebra();
    for (&k, t) in &cert.terms {
        alg.check(t)?;
        if let Some((m, _)) = t.terms().find(|(m, _)| bv.ghost_of(m) != k || alg.degree_of(m) != 0) {
            return Err(Error::Certificate(format!("term of ghost {k} contains {m:?}")));
        }
    }
    let action = cert.action();
    let master = bv.truncate(&bv.bracket(&action, &action)?, cert.order);
    let m = bv.kt().potential.len();
    let restriction = &alg.kill(&action, |i| i >= m) - bv.kt().potential.s();
    let low = action.filter(|mo| bv.ghost_of(mo) <= 1);
    let linear = &(&low - bv.kt().potential.s()) - &bv.s1()?;
    Ok(CmeVerdict { master, restriction, linear })
}
