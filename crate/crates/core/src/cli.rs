//! The `invk` command line: `invk validate|pbw|nf|hopf|rep <file> [flags]`.
//!
//! Each command prints a JSON [`Report`] on stdout and a short summary on
//! stderr. Exit codes: 0 pass (or exploratory), 2 mathematical failure,
//! 1 usage or I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;

use crate::coalgebra::{self, Bialgebra, HopfVariant, SSource};
use crate::envelope::{self, build_reducer, build_uncertified_quotient, Reducer};
use crate::error::{Error, Result};
use crate::file::{default_variant, AlgebraFile, Definition};
use crate::linrep::{self, LinearInvariantAlgebra, MatRep, MatrixAlgebra};
use crate::parser::parse_expr;
use crate::report::Report;
use crate::scalar::{parse_scalar, Scalar};
use crate::structures::{validate_structure, BracketKind, Variant};

#[derive(Debug, Parser)]
#[command(name = "invk", version, about = "Exact checks for invariant algebras and their envelopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Lie or Leibniz identities of a structure-constant table.
    Validate { file: PathBuf },
    /// Certify the normal-monomial basis of the envelope up to a degree cap.
    Pbw(EnvArgs),
    /// Reduce an expression to its normal form in the envelope.
    Nf {
        #[command(flatten)]
        env: EnvArgs,
        /// Expression in the basis labels and `q`, e.g. "x2*x1 - 1/2*q*x1".
        #[arg(long)]
        expr: String,
    },
    /// Check the coalgebra structure and the antipode-like diagram.
    Hopf(HopfArgs),
    /// Check the matrix representation described in the file.
    Rep { file: PathBuf },
}

#[derive(Debug, Args)]
pub struct EnvArgs {
    pub file: PathBuf,
    /// 6th or 4th; defaults to 6th for Lie and 4th for Leibniz algebras.
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub k: String,
    /// Cap on the X-degree of the presentation.
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
}

#[derive(Debug, Args)]
pub struct HopfArgs {
    pub file: PathBuf,
    /// 6th, 4th1 or 4th2; defaults to 6th for Lie and 4th2 for Leibniz.
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub k: String,
    /// Cap on the X-degree; diagrams are checked one degree below it.
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    /// paper-gen-antihom (generator values extended anti-multiplicatively)
    /// or solver.
    #[arg(long, default_value = "paper-gen-antihom")]
    pub s_source: String,
    /// Work in the standard-monomial basis when the normal monomials fail
    /// to certify, instead of stopping at the PBW defect.
    #[arg(long)]
    pub uncertified: bool,
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.to_json());
            let mut err = std::io::stderr().lock();
            let _ = write!(err, "{}", report.summary());
            let _ = writeln!(err, "  elapsed: {:.3?}", start.elapsed());
            report.verdict.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                1
            } else {
                2
            }
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Pbw(args) => cmd_pbw(args),
        Command::Nf { env, expr } => cmd_nf(env, expr),
        Command::Hopf(args) => cmd_hopf(args),
        Command::Rep { file } => cmd_rep(file),
    }
}

fn load(file: &PathBuf) -> Result<Definition> {
    AlgebraFile::load(file)?.definition()
}

fn input(file: &PathBuf) -> String {
    file.display().to_string()
}

fn parse_k(s: &str) -> Result<Scalar> {
    let k = parse_scalar(s)?;
    if k.is_zero() {
        return Err(Error::ZeroK);
    }
    Ok(k)
}

fn pbw_anchor(variant: Variant) -> &'static str {
    match variant {
        Variant::Sixth => "Extended 6th P-B-W theorem",
        Variant::Fourth => "Extended <4th> P-B-W theorem",
    }
}

pub fn cmd_validate(file: &PathBuf) -> Result<Report> {
    let def = load(file)?;
    let anchor = match def.structure.kind() {
        BracketKind::Lie => "Lie algebra axioms",
        BracketKind::Leibniz => "Leibniz algebra axioms",
    };
    let mut report = Report::new("validate", &input(file), &def.name, &def.labels, anchor);
    let sr = validate_structure(&def.structure);
    report.count("dim", sr.dim);
    report.count("violations", sr.violations.len());
    report.check("structure identities", sr.valid, None);
    for v in &sr.violations {
        let kind = serde_json::to_value(v.kind).expect("unit enum serializes");
        let kind = kind.as_str().unwrap_or("violation").to_string();
        let idx: Vec<String> = v.indices.iter().map(ToString::to_string).collect();
        report.witness(format!("{kind} ({}): {}", idx.join(", "), v.defect));
    }
    report.settle(false);
    Ok(report)
}

fn env_params(report: &mut Report, variant: Variant, k: &Scalar, degree: usize) {
    report.parameters.variant = Some(variant.tag().to_string());
    report.parameters.k = Some(k.to_string());
    report.parameters.degree = Some(degree);
}

fn resolve_variant(def: &Definition, flag: &Option<String>) -> Result<Variant> {
    match flag {
        Some(v) => v.parse(),
        None => Ok(default_variant(def.structure.kind())),
    }
}

pub fn cmd_pbw(args: &EnvArgs) -> Result<Report> {
    let def = load(&args.file)?;
    let variant = resolve_variant(&def, &args.variant)?;
    let k = parse_k(&args.k)?;
    let mut report = Report::new("pbw", &input(&args.file), &def.name, &def.labels, pbw_anchor(variant));
    env_params(&mut report, variant, &k, args.degree);

    let quotient = build_uncertified_quotient(&def.structure, &k, variant, args.degree)?;
    let c = quotient.certificate();
    report.count("basis_count", c.basis_count);
    report.count("normal_count", c.normal_count);
    report.count("span_rank", c.span_rank);
    report.count("relation_multiples", c.relation_multiples);
    report.count("stacked_rank", c.stacked_rank);
    report.check(
        "normal monomials complement the relations",
        c.complementary,
        Some(format!(
            "{} normal + {} rank vs {} words",
            c.normal_count, c.span_rank, c.basis_count
        )),
    );
    match build_reducer(&def.structure, &k, variant, args.degree) {
        Ok(_) => report.check("filtration stability", true, None),
        Err(Error::PbwDefect { reason, witness }) => {
            if c.complementary {
                report.check("filtration stability", false, Some(reason));
            }
            report.witness(witness);
        }
        Err(e) => return Err(e),
    }
    report.settle(false);
    Ok(report)
}

pub fn cmd_nf(args: &EnvArgs, expr: &str) -> Result<Report> {
    let def = load(&args.file)?;
    let variant = resolve_variant(&def, &args.variant)?;
    let k = parse_k(&args.k)?;
    let mut report = Report::new("nf", &input(&args.file), &def.name, &def.labels, pbw_anchor(variant));
    env_params(&mut report, variant, &k, args.degree);
    report.parameters.expr = Some(expr.to_string());

    let e = parse_expr(expr, &def.labels)?;
    if e.max_generator() > def.structure.dim() {
        return Err(Error::Usage(format!("expression uses more than {} generators", def.structure.dim())));
    }
    let r = match build_reducer(&def.structure, &k, variant, args.degree) {
        Ok(r) => r,
        Err(Error::PbwDefect { reason, witness }) => {
            report.check("PBW certificate", false, Some(reason));
            report.witness(witness);
            report.settle(false);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let nf = r.reduce(&e)?;
    let again = r.reduce(nf.as_free())?;
    report.check("normal form is stable under reduction", again == nf, None);
    report.count("terms", nf.terms().count());
    report.result("normal_form", nf.as_free().display_with(&def.labels).to_string());
    report.settle(false);
    Ok(report)
}

fn hopf_reducer(def: &Definition, k: &Scalar, variant: Variant, degree: usize, uncertified: bool, report: &mut Report) -> Result<Option<Reducer>> {
    if uncertified {
        let r = build_uncertified_quotient(&def.structure, k, variant, degree)?;
        let basis = if r.is_certified() { "normal monomials" } else { "standard monomials (uncertified)" };
        report.result("basis", basis);
        return Ok(Some(r));
    }
    match build_reducer(&def.structure, k, variant, degree) {
        Ok(r) => {
            report.result("basis", "normal monomials");
            Ok(Some(r))
        }
        Err(Error::PbwDefect { reason, witness }) => {
            report.check("PBW certificate", false, Some(reason));
            report.witness(witness);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn cmd_hopf(args: &HopfArgs) -> Result<Report> {
    let def = load(&args.file)?;
    let which: HopfVariant = match &args.variant {
        Some(v) => v.parse()?,
        None => match def.structure.kind() {
            BracketKind::Lie => HopfVariant::Sixth,
            BracketKind::Leibniz => HopfVariant::Fourth2,
        },
    };
    let source: SSource = args.s_source.parse()?;
    let k = parse_k(&args.k)?;
    if args.degree < 2 {
        return Err(Error::Usage(format!("degree cap must be at least 2, got {}", args.degree)));
    }
    let mut report = Report::new("hopf", &input(&args.file), &def.name, &def.labels, which.anchor());
    report.parameters.variant = Some(which.tag().to_string());
    report.parameters.k = Some(k.to_string());
    report.parameters.degree = Some(args.degree);
    report.parameters.s_source = Some(source.to_string());
    let exploratory = which == HopfVariant::Fourth1 && k != Scalar::from_integer(1.into());

    let Some(r) = hopf_reducer(&def, &k, which.envelope(), args.degree, args.uncertified, &mut report)? else {
        report.settle(false);
        return Ok(report);
    };
    let check_degree = args.degree - 1;
    report.count("degree_checked", check_degree);

    let b = match Bialgebra::attach(&r) {
        Ok(b) => b,
        Err(Error::IllDefinedDelta { relation, image }) => {
            report.check("Delta annihilates the relations", false, None);
            report.witness(format!("Delta({relation}) = {image}"));
            report.settle(exploratory);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.check("Delta annihilates the relations", true, None);

    let bialgebra = coalgebra::verify_bialgebra(&b, check_degree)?;
    for d in &bialgebra.diagrams {
        report.check(&format!("bialgebra: {}", d.name), d.passed(), Some(format!("{} cases", d.checked)));
        for f in &d.failures {
            report.witness(format!("{}: {f}", d.name));
        }
    }

    match coalgebra::verify_hopflike(&r, which, check_degree, source) {
        Ok(h) => {
            for p in &h.preamble {
                report.check(&format!("preamble: {}", p.name), p.passed(), Some(format!("{} cases", p.checked)));
                for f in &p.failures {
                    report.witness(format!("{}: {f}", p.name));
                }
            }
            report.count("monomials_checked", h.monomials.len());
            report.check("antipode diagram on 1, q and generators", h.generators_commute, None);
            report.check("antipode diagram on all checked monomials", h.all_commute, None);
            for m in h.monomials.iter().filter(|m| !m.commutes) {
                report.witness(format!(
                    "{}: top = {}, middle = {}, bottom = {}",
                    m.monomial, m.top, m.middle, m.bottom
                ));
            }
        }
        Err(Error::Usage(msg)) if source == SSource::Solver => {
            report.check("antipode diagram with the solver's S", false, Some(msg));
        }
        Err(e) => return Err(e),
    }

    let solve_degree = check_degree.min(2);
    let sol = coalgebra::solve_antipode(&r, which, solve_degree)?;
    let s = &sol.summary;
    report.count("solver_degree", solve_degree);
    report.count("solver_unknowns", s.unknowns);
    report.count("solver_equations", s.equations);
    report.count("solver_solution_dim", s.solution_dim);
    report.check("antipode system solvable", s.solvable, None);
    report.check("solver residuals are exactly zero", s.residuals_zero, None);
    report.check("generator values extend to a solution", s.consistent_with_generators, s.witness.clone());
    report.check("anti-multiplicative S solves the system", s.antihom_is_solution, None);
    report.settle(exploratory);
    Ok(report)
}

pub fn cmd_rep(file: &PathBuf) -> Result<Report> {
    let def = load(file)?;
    let Some(cfg) = def.rep.clone() else {
        return Err(Error::Usage(format!("{} has no matrices section", file.display())));
    };
    let mut report = Report::new(
        "rep",
        &input(file),
        &def.name,
        &def.labels,
        "representation, regular embedding and universal property",
    );
    report.parameters.variant = Some(cfg.variant.tag().to_string());
    report.parameters.k = Some(cfg.k.to_string());
    report.parameters.degree = Some(cfg.degree);
    report.count("dim_v", cfg.dim_v);
    report.count("dim_w", cfg.w.len());

    let idem = linrep::validate_idempotent(cfg.dim_v, &cfg.w, &cfg.q)?;
    report.check("q is a W-idempotent", idem.valid, idem.violations.first().cloned());
    for v in &idem.violations {
        report.witness(v.clone());
    }
    if !idem.valid {
        report.settle(false);
        return Ok(report);
    }
    let target = LinearInvariantAlgebra::new(cfg.dim_v, cfg.w.clone(), cfg.q.clone())?;
    let mut preserved = true;
    for (label, m) in def.labels.iter().zip(&cfg.rho) {
        let ok = target.in_end_w(m)?;
        preserved &= ok;
        report.check(&format!("rho({label}) preserves W"), ok, None);
    }
    if preserved {
        let rep = MatRep::new(cfg.rho.clone(), target, cfg.k.clone())?;
        let rr = linrep::check_rep(&def.structure, &rep, cfg.variant)?;
        report.check(
            "rho preserves the bracket",
            rr.passed(),
            Some(format!("{} pairs", rr.pairs_checked)),
        );
        for d in &rr.defects {
            report.witness(format!("pair ({}, {}): {}", d.pair.0, d.pair.1, d.defect));
        }
        if cfg.k.is_zero() {
            report.result("extension", "skipped: the envelope needs k != 0");
        } else {
            match build_reducer(&def.structure, &cfg.k, cfg.variant, cfg.degree) {
                Ok(r) => {
                    let ext = linrep::extend_to_envelope(&r, &rep)?;
                    report.count("extension_pairs", ext.pairs_checked);
                    report.check("extension to the envelope is an invariant homomorphism", ext.passed(), None);
                    for d in &ext.defects {
                        report.witness(d.clone());
                    }
                    if let Ok(emb) = envelope::check_embedding(&r) {
                        report.check("generators embed into the envelope", emb.passed(), None);
                    }
                }
                Err(Error::PbwDefect { reason, witness }) => {
                    report.check("PBW certificate", false, Some(reason));
                    report.witness(witness);
                }
                Err(e) => return Err(e),
            }
        }
    }
    if let Some((basis, q)) = &cfg.algebra {
        match MatrixAlgebra::new(basis.clone(), q.clone()) {
            Ok(alg) => {
                let emb = linrep::regular_embedding(&alg)?;
                report.count("regular_dim_a", emb.dim_a);
                report.count("regular_dim_ann", emb.dim_ann);
                report.check("regular embedding", emb.passed(), None);
                for f in &emb.failures {
                    report.witness(f.clone());
                }
            }
            Err(e @ (Error::NotClosed(_) | Error::NotInvariant(_))) => {
                report.check("regular embedding", false, Some(e.to_string()));
            }
            Err(e) => return Err(e),
        }
    }
    report.settle(false);
    Ok(report)
}
