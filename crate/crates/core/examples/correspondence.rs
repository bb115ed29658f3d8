//! Both legs of the critical-locus correspondence: the strict Lagrangian
//! and the BV side.
//!
//! ```bash
//! cargo run --example correspondence
//! ```

use shiftcalc::bv::{ce_algebra, check_correspondence, koszul_tate, solve_cme, COISOTROPIC_STATUS};
use shiftcalc::derham::{IsotropyVerdict, LagrangianVerdict};
use shiftcalc::expr::Definition;

fn main() -> shiftcalc::Result<()> {
    for s in ["x^2/2", "x^3/3", "0"] {
        let p = Definition::parse(&format!("[generators]\nx, 0\n[potential]\nS = {s}\n"))?.potential()?;
        let kt = koszul_tate(&p, 2, 6)?;
        let bv = ce_algebra(&kt)?;
        let cert = solve_cme(&bv, 2, 6)?;
        let r = check_correspondence(&p, &kt, &bv, Some(&cert))?;
        let strict = match r.isotropy.as_ref().map(|i| &i.verdict) {
            None => "no polynomial strict model".to_string(),
            Some(IsotropyVerdict::Fail { weight, .. }) => format!("not isotropic at weight {weight}"),
            Some(IsotropyVerdict::Isotropic(LagrangianVerdict::Lagrangian { .. })) => "Lagrangian".into(),
            Some(IsotropyVerdict::Isotropic(LagrangianVerdict::NotLagrangian { reason, .. })) => {
                format!("isotropic, {reason}")
            }
            Some(IsotropyVerdict::Isotropic(LagrangianVerdict::NotEvaluated(why))) => format!("isotropic ({why})"),
        };
        println!("S = {s:<6} strict leg: {strict}; master equation: {}; bracket degree {}", r.cme_ok, r.bracket_degree);
    }
    println!("coisotropic structure: {COISOTROPIC_STATUS}");
    Ok(())
}
