//! Command-line front end. Every subcommand writes one canonical JSON
//! report; exit status 0 means every check passed, 1 that a mathematical
//! check failed (the report carries the witness), 2 an input or usage error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use shiftcalc::bv::{
    ce_algebra, check_correspondence, derived_critical_locus, koszul_tate, mixed_structure, solve_cme,
    strict_critical_locus, verify_cme,
};
use shiftcalc::derham::{check_closed_tower, check_symplectic, de_rham, pairing_matrix, ClosedFormTower};
use shiftcalc::expr::{format_poly, parse_poly_at, Definition};
use shiftcalc::filtered::{check_gr_hom, random_module, Caps};
use shiftcalc::graded::Poly;
use shiftcalc::poisson::{
    mc_residues, poisson_to_symplectic, symplectic_to_poisson, theta, PoissonCandidate, PolyvectorAlgebra,
};
use shiftcalc::report::*;
use shiftcalc::Error;

#[derive(Parser)]
#[command(name = "shiftcalc", version, about = "Exact calculus for shifted symplectic and Poisson structures")]
struct Cli {
    /// What to print on standard output.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Square-zero and sign checks of an algebra definition.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// De Rham complex and the Hodge-graded check.
    Dr {
        input: PathBuf,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Closed form towers and non-degeneracy.
    #[command(subcommand)]
    Symplectic(SymplecticCmd),
    /// Shifted Poisson bivectors.
    #[command(subcommand)]
    Poisson(PoissonCmd),
    /// Derived and strict critical locus of a potential.
    Dcrit {
        input: PathBuf,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        cap: u32,
    },
    /// Koszul-Tate resolution of the critical locus.
    Kt {
        input: PathBuf,
        #[command(flatten)]
        kt: KtArgs,
    },
    /// Classical master equation certificates.
    #[command(subcommand)]
    Cme(CmeCmd),
    /// BV side of the critical locus.
    #[command(subcommand)]
    Bv(BvCmd),
    /// Filtered modules.
    #[command(subcommand)]
    Filtered(FilteredCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// `d² = 0` on generators and a Koszul sign audit.
    Check { input: PathBuf },
}

#[derive(Subcommand)]
enum SymplecticCmd {
    /// Closedness of the `[form]` tower and non-degeneracy of its 2-form.
    Check { input: PathBuf },
}

#[derive(Subcommand)]
enum PoissonCmd {
    /// Maurer-Cartan residues of the `[poisson]` polyvector.
    Mc { input: PathBuf },
    /// Bivector to 2-form and back.
    Roundtrip { input: PathBuf },
}

#[derive(Subcommand)]
enum CmeCmd {
    /// Solves the master equation and prints a certificate.
    Solve {
        input: PathBuf,
        #[command(flatten)]
        kt: KtArgs,
        /// Ghost order `N`.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
    },
    /// Re-checks a certificate produced by `cme solve`.
    Verify { certificate: PathBuf },
}

#[derive(Subcommand)]
enum BvCmd {
    /// Strict and BV legs of the critical-locus correspondence.
    Correspondence {
        input: PathBuf,
        #[command(flatten)]
        kt: KtArgs,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
        /// Polynomial-degree cap of the foliation table.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        polydeg: u32,
    },
}

#[derive(Subcommand)]
enum FilteredCmd {
    /// `gr Hom = Hom gr` on seeded random filtered modules.
    Grhom {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
        cases: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        max_steps: u32,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        max_dim: u32,
    },
}

#[derive(Args)]
struct KtArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    max_stage: u32,
    /// Polynomial-degree cap for every truncated computation.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    cap: u32,
}

#[derive(Args)]
struct CapsArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    weight: u32,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    polydeg: u32,
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    deg_lo: i32,
    #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
    deg_hi: i32,
}

impl CapsArgs {
    fn caps(&self) -> Caps {
        Caps { weight: self.weight, degrees: (self.deg_lo, self.deg_hi), polydegree: self.polydeg }
    }
}

/// A finished report: its JSON, a one-paragraph summary and the verdict.
struct Outcome {
    json: String,
    text: String,
    ok: bool,
}

fn outcome<T: Serialize>(report: &T, ok: bool, text: String) -> Outcome {
    Outcome { json: to_json(report), text, ok }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn definition(path: &Path) -> Result<Definition, Error> {
    Definition::parse(&read(path)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &out.json) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            match cli.format {
                Format::Json => print!("{}", out.json),
                Format::Text => println!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Algebra(AlgebraCmd::Check { input }) => {
            let r = algebra_report(&definition(input)?.dga()?)?;
            let text = format!(
                "{} generators; d^2 = 0: {}; signs: {}",
                r.generators.len(),
                yes(r.square_zero.ok),
                yes(r.signs.ok)
            );
            Ok(outcome(&r, r.ok, text))
        }
        Command::Dr { input, caps } => {
            let dga = definition(input)?.dga()?;
            let dr = de_rham(&dga)?;
            let check = foliation_json(&dr.check_gr(caps.caps())?);
            let ranks: Vec<String> = check.rank_by_weight.iter().map(|r| format!("{}:{}", r.weight, r.rank)).collect();
            let text = format!("Hodge gr is Sym of forms: {}; rank by weight {}", yes(check.ok), ranks.join(" "));
            let r = DrReport {
                command: "dr",
                ok: check.ok,
                caps: caps.caps().into(),
                generators: generator_rows(dr.algebra()),
                gr_check: check,
            };
            Ok(outcome(&r, r.ok, text))
        }
        Command::Symplectic(SymplecticCmd::Check { input }) => symplectic(input),
        Command::Poisson(PoissonCmd::Mc { input }) => poisson_mc(input),
        Command::Poisson(PoissonCmd::Roundtrip { input }) => poisson_roundtrip(input),
        Command::Dcrit { input, cap } => {
            let p = definition(input)?.potential()?;
            let dc = derived_critical_locus(&p)?;
            let st = strict_critical_locus(&p, *cap)?;
            let da = dc.dga.algebra();
            let sa = dc.de_rham.algebra();
            let square_zero = dc.dga.check_square_zero().is_ok();
            let r = DcritReport {
                command: "dcrit",
                ok: square_zero,
                potential: potential_json(&p),
                generators: generator_rows(da),
                differential: differential_rows(&dc.dga),
                square_zero,
                omega: format_poly(sa, &dc.symplectic.tower.form(2)),
                pairing_determinant: format_poly(sa, &dc.symplectic.determinant),
                strict_locus: StrictJson {
                    cap: st.cap,
                    dimension: st.dimension(),
                    basis: st.basis.iter().map(|b| format_poly(p.algebra(), b)).collect(),
                    table: st.table.iter().map(|(&polydegree, &dim)| PolydegreeRow { polydegree, dim }).collect(),
                },
            };
            let text = format!("dim H0 up to polydegree {cap}: {}; omega = {}", r.strict_locus.dimension, r.omega);
            Ok(outcome(&r, r.ok, text))
        }
        Command::Kt { input, kt } => {
            let p = definition(input)?.potential()?;
            let k = koszul_tate(&p, kt.max_stage, kt.cap)?;
            let j = kt_json(&k);
            let text = format!(
                "{} generators; certified degrees {:?}; complete: {}",
                j.roster.len(),
                j.certified,
                yes(j.complete)
            );
            let r = KtReport { command: "kt", ok: k.complete, potential: potential_json(&p), koszul_tate: j };
            Ok(outcome(&r, r.ok, text))
        }
        Command::Cme(CmeCmd::Solve { input, kt, order }) => {
            let p = definition(input)?.potential()?;
            let bv = ce_algebra(&koszul_tate(&p, kt.max_stage, kt.cap)?)?;
            let c = solve_cme(&bv, *order, kt.cap)?;
            let j = certificate_json(&bv, &c);
            let text = format!(
                "action to ghost order {order}: {}; residue {}",
                j.terms.iter().map(|t| format!("[{}] {}", t.ghost, t.value)).collect::<Vec<_>>().join("; "),
                j.residue
            );
            Ok(outcome(&j, j.ok, text))
        }
        Command::Cme(CmeCmd::Verify { certificate }) => {
            let j: CertificateJson = serde_json::from_str(&read(certificate)?)
                .map_err(|e| Error::Certificate(format!("{}: {e}", certificate.display())))?;
            let (bv, c) = certificate_from_json(&j)?;
            let r = verify_report(&bv, c.order, &verify_cme(&bv, &c)?);
            let text = match &r.failure {
                None => "all three conditions hold".to_string(),
                Some(f) => format!("{} fails; residue {}", f.condition, f.residue),
            };
            Ok(outcome(&r, r.ok, text))
        }
        Command::Bv(BvCmd::Correspondence { input, kt, order, polydeg }) => {
            let p = definition(input)?.potential()?;
            let k = koszul_tate(&p, kt.max_stage, kt.cap)?;
            let bv = ce_algebra(&k)?;
            let c = solve_cme(&bv, *order, kt.cap)?;
            let lo = -(kt.max_stage as i32) - 1;
            let caps = Caps { weight: *order, degrees: (lo, 2), polydegree: *polydeg };
            let mixed = mixed_structure(&bv, &c, caps)?;
            let rep = check_correspondence(&p, &k, &bv, Some(&c))?;
            let j = correspondence_json(&p, &rep, &mixed);
            let text = format!(
                "isotropic leg: {}; master equation: {}; coisotropic structure: {}",
                j.isotropic_leg.verdict,
                yes(j.bv_leg.cme_ok),
                j.coisotropic
            );
            Ok(outcome(&j, j.ok, text))
        }
        Command::Filtered(FilteredCmd::Grhom { seed, cases, max_steps, max_dim }) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut out = Vec::new();
            for index in 0..*cases as usize {
                let x = random_module(&mut rng, *max_steps as usize, *max_dim as usize);
                let y = random_module(&mut rng, *max_steps as usize, *max_dim as usize);
                let g = check_gr_hom(&x, &y);
                out.push(GrHomCase {
                    index,
                    x_dim: x.total_dim(),
                    y_dim: y.total_dim(),
                    ok: g.is_ok(),
                    lhs: dim_rows(&g.lhs),
                    rhs: dim_rows(&g.rhs),
                    mismatch: g.mismatch.map(|(a, b)| [a, b]),
                });
            }
            let ok = out.iter().all(|c| c.ok);
            let text = format!("{} of {} instances agree", out.iter().filter(|c| c.ok).count(), out.len());
            let r = GrHomJson { command: "filtered grhom", ok, seed: *seed, cases: out };
            Ok(outcome(&r, ok, text))
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `shift = n` and `<prefix>_<w> = expr` lines of a section.
/// Tower entries by weight, with their source line.
type TowerLines<'a> = BTreeMap<u32, (usize, &'a str)>;

fn tower_lines<'a>(entries: &'a [(usize, String, String)], prefix: &str) -> Result<(i32, TowerLines<'a>), Error> {
    let mut shift = None;
    let mut forms = BTreeMap::new();
    for (line, k, v) in entries {
        if k == "shift" {
            shift =
                Some(v.trim().parse().map_err(|_| Error::Parse { line: *line, message: format!("bad shift `{v}`") })?);
        } else if let Some(w) = k.strip_prefix(prefix).and_then(|w| w.strip_prefix('_')) {
            let w: u32 =
                w.parse().map_err(|_| Error::Parse { line: *line, message: format!("bad weight in `{k}`") })?;
            forms.insert(w, (*line, v.as_str()));
        } else {
            return Err(Error::Parse { line: *line, message: format!("unexpected key `{k}`") });
        }
    }
    let shift = shift.ok_or(Error::Parse { line: 0, message: "missing `shift = n`".into() })?;
    Ok((shift, forms))
}

fn symplectic(input: &Path) -> Result<Outcome, Error> {
    let def = definition(input)?;
    let dr = de_rham(&def.dga()?)?;
    let alg = dr.algebra();
    let (shift, lines) = tower_lines(&def.form, "omega")?;
    let start = *lines.keys().next().ok_or(Error::Parse { line: 0, message: "no `omega_w` lines".into() })?;
    if lines.keys().copied().ne(start..start + lines.len() as u32) {
        return Err(Error::Parse { line: 0, message: "tower weights must be consecutive".into() });
    }
    let forms = lines.values().map(|(l, v)| parse_poly_at(alg, v, *l)).collect::<Result<Vec<_>, _>>()?;
    let tower = ClosedFormTower::new(shift, start, forms);
    let t = check_closed_tower(&dr, &tower)?;
    let tj = tower_json(alg, &t);
    let sym = if t.is_ok() { Some(check_symplectic(&dr, &tower)?) } else { None };
    let sj = sym.as_ref().map(|s| symplectic_json(alg, dr.base().algebra(), s));
    let ok = tj.ok && sj.as_ref().is_some_and(|s| s.verdict == "symplectic");
    let text = match (&tj, &sj) {
        (t, _) if !t.ok => format!("tower not closed at weight {}", t.weight.unwrap_or(0)),
        (_, Some(s)) if s.verdict == "symplectic" => format!("symplectic; determinant {}", s.determinant),
        (_, Some(s)) => format!("degenerate; block witness {}", s.witness.clone().unwrap_or_default()),
        _ => String::new(),
    };
    let r = SymplecticReport { command: "symplectic check", ok, shift, tower: tj, symplectic: sj };
    Ok(outcome(&r, ok, text))
}

fn poisson_input(input: &Path) -> Result<(PolyvectorAlgebra, PoissonCandidate), Error> {
    let def = definition(input)?;
    let dga = def.dga()?;
    let (shift, lines) = tower_lines(&def.poisson, "pi")?;
    let pol = PolyvectorAlgebra::new(&dga, shift)?;
    let mut pi = Poly::zero();
    for (_, (l, v)) in lines {
        pi += &parse_poly_at(pol.algebra(), v, l)?;
    }
    let c = PoissonCandidate::new(&pol, pi)?;
    Ok((pol, c))
}

fn poisson_mc(input: &Path) -> Result<Outcome, Error> {
    let (pol, c) = poisson_input(input)?;
    let alg = pol.algebra();
    let res = mc_residues(&pol, &c)?;
    let failure =
        res.iter().find(|(_, p)| !p.is_zero()).map(|(&weight, p)| ResidueRow { weight, residue: format_poly(alg, p) });
    let ok = failure.is_none();
    let text = match &failure {
        None => "Maurer-Cartan equation holds in every weight".into(),
        Some(f) => format!("Maurer-Cartan fails in weight {}: {}", f.weight, f.residue),
    };
    let r = McReport {
        command: "poisson mc",
        ok,
        shift: pol.shift(),
        bracket_degree: pol.bracket_degree(),
        pi: format_poly(alg, &c.pi),
        residues: residue_rows(alg, &res),
        failure,
    };
    Ok(outcome(&r, ok, text))
}

fn poisson_roundtrip(input: &Path) -> Result<Outcome, Error> {
    let (pol, c) = poisson_input(input)?;
    let alg = pol.algebra().clone();
    let th = theta(&pol, &c)?;
    let theta_json = ThetaJson {
        matrix: matrix(&alg, &th.matrix),
        determinant: format_poly(&alg, &th.determinant),
        block_degree: th.witness.as_ref().map(|w| w.0),
        witness: th.witness.as_ref().map(|w| format_poly(&alg, &w.1)),
    };
    let mut omega = None;
    let mut omega_matrix = None;
    let mut back = None;
    let mut round_trip = false;
    if th.is_nondegenerate() {
        let dr = de_rham(pol.base())?;
        let da: Arc<_> = dr.algebra().clone();
        let sym = poisson_to_symplectic(&pol, &c, &dr)?;
        let (_, m) = pairing_matrix(&dr, &sym.tower.form(2))?;
        omega = Some(format_poly(&da, &sym.tower.form(2)));
        omega_matrix = Some(matrix(&da, &m));
        let again = symplectic_to_poisson(&pol, &sym, &dr)?;
        round_trip = again.bivector(&pol) == c.bivector(&pol);
        back = Some(format_poly(&alg, &again.pi));
    }
    let text = match &omega {
        Some(o) => format!("omega = {o}; round trip exact: {}", yes(round_trip)),
        None => format!("degenerate bivector; block witness {}", theta_json.witness.clone().unwrap_or_default()),
    };
    let r = RoundtripReport {
        command: "poisson roundtrip",
        ok: round_trip,
        shift: pol.shift(),
        bivector: format_poly(&alg, &c.bivector(&pol)),
        theta: theta_json,
        omega,
        omega_matrix,
        back,
        round_trip,
    };
    Ok(outcome(&r, round_trip, text))
}
