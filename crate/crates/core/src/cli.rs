//! Command-line front end. `run` returns the exit code and writes the
//! report to the given sink: 0 on success, 1 when a mathematical check
//! fails, 2 on input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::{corpus_example_with_order, CORPUS_NAMES};
use crate::duality::theorem_check;
use crate::exterior::{column_to_cycle, wedge_compose};
use crate::golden::{self, Status};
use crate::groebner::Ideal;
use crate::koszul::{koszul_cohomology_dim, CohomologyQuery, KoszulModule};
use crate::resolution::{free_resolution, minimal_resolution, minimalize, BettiTable};
use crate::ring::{Coeff, MonomialOrder, PolyRing, Polynomial};
use crate::syzscheme::{drop_generator_transform, quadric_count_bounds, support_span, syzygy_scheme_decompose};
use crate::textio::{format_exterior, format_ideal, parse_document};

#[derive(Parser, Debug)]
#[command(name = "syzygies", version, about = "Exact graded free resolutions and syzygy structure")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal free resolution and Betti table.
    Resolve(Common),
    /// The wedge composition D_p = d_2 ^ ... ^ d_p of the minimal resolution.
    Wedge(Common),
    /// Self-dual bases and the skew-symmetry of D_{e-1}.
    TheoremCheck(Common),
    /// Syzygy ideal, colon and decomposition for one cycle of D_{e-1}.
    SyzygyScheme(Common),
    /// Koszul cohomology dimensions K_{p,q}.
    KoszulDim(Common),
    /// List corpus entries, or print one as an input file.
    Corpus {
        #[arg(long)]
        corpus: Option<String>,
    },
    /// Regenerate every golden file and compare with the checked-in copies.
    VerifyFixtures {
        /// Overwrite the golden files instead of comparing.
        #[arg(long)]
        bless: bool,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleArg {
    Quotient,
    Ideal,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// A corpus entry name.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub corpus: Option<String>,
    /// An input file: `ring` line, `ideal` line, one polynomial per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "grevlex")]
    pub order: OrderArg,
    /// Stop the resolution after this many steps.
    #[arg(long)]
    pub max_length: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<i64>,
    /// 1-based column of D_{e-1}.
    #[arg(long)]
    pub column: Option<usize>,
    /// Comma-separated coefficient row combining the columns of D_{e-1}.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Divide wedge matrices by the gcd of their coefficients.
    #[arg(long)]
    pub primitive: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Coefficient module for koszul-dim.
    #[arg(long, value_enum, default_value = "quotient")]
    pub module: ModuleArg,
}

struct Failure {
    code: i32,
    msg: String,
}

fn input_error(msg: impl std::fmt::Display) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

fn check_failure(msg: impl std::fmt::Display) -> Failure {
    Failure { code: 1, msg: msg.to_string() }
}

struct Loaded {
    ring: std::sync::Arc<PolyRing>,
    gens: Vec<Polynomial>,
    ideal: Ideal,
}

fn load(args: &Common) -> Result<Loaded, Failure> {
    let order = match args.order {
        OrderArg::Grevlex => MonomialOrder::Grevlex,
        OrderArg::Lex => MonomialOrder::Lex,
    };
    if let Some(name) = &args.corpus {
        let e = corpus_example_with_order(name, order).map_err(input_error)?;
        return Ok(Loaded { ring: e.ring, gens: e.gens, ideal: e.ideal });
    }
    let path = args.input.as_ref().ok_or_else(|| input_error("no input given"))?;
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let doc = parse_document(&text, order).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let gens = doc.ideal.ok_or_else(|| input_error(format!("{}: no ideal block", path.display())))?;
    let ideal = Ideal::new(&doc.ring, gens.clone()).map_err(input_error)?;
    if ideal.is_zero() {
        return Err(input_error(format!("{}: the ideal is zero", path.display())));
    }
    if !ideal.is_homogeneous() {
        return Err(input_error(format!("{}: the ideal is not homogeneous", path.display())));
    }
    Ok(Loaded { ring: doc.ring, gens, ideal })
}

fn resolve(args: &Common, out: &mut String) -> Result<(), Failure> {
    let l = load(args)?;
    let c = match args.max_length {
        Some(n) => minimalize(&free_resolution(&l.ideal, Some(n)).map_err(input_error)?),
        None => minimal_resolution(&l.ideal).map_err(input_error)?,
    };
    let b = BettiTable::from_complex(&c).map_err(check_failure)?;
    match args.format {
        Format::Text => out.push_str(&b.to_string()),
        Format::Kv => out.push_str(&b.to_kv()),
    }
    Ok(())
}

fn wedge(args: &Common, out: &mut String) -> Result<(), Failure> {
    let l = load(args)?;
    let c = minimal_resolution(&l.ideal).map_err(input_error)?;
    let p = args.p.ok_or_else(|| input_error("--p is required"))?;
    if p < 2 || p > c.len() {
        return Err(input_error(format!("--p must lie in 2..={}", c.len())));
    }
    let d = wedge_compose(&c.differentials()[1..p]).map_err(check_failure)?;
    let (shown, factor) = if args.primitive { d.primitive_part() } else { (d.clone(), Coeff::from_integer(1.into())) };
    match args.format {
        Format::Text => {
            if args.primitive {
                out.push_str(&format!("factor {factor}\n"));
            }
            out.push_str(&format_exterior(&format!("D{p}"), &shown));
        }
        Format::Kv => {
            out.push_str(&format!("D.rows = {}\nD.cols = {}\nD.factor = {factor}\n", shown.nrows(), shown.ncols()));
            out.push_str(&shown.to_kv("D"));
        }
    }
    Ok(())
}

fn theorem(args: &Common, out: &mut String) -> Result<(), Failure> {
    let l = load(args)?;
    let report = theorem_check(&l.ideal).map_err(|e| check_failure(format!("precondition failed: {e}")))?;
    let shown = if args.primitive { report.wedge.primitive_part().0 } else { report.wedge.clone() };
    let e = report.codimension;
    let yes = if report.is_skew() { "yes" } else { "no" };
    match args.format {
        Format::Text => {
            out.push_str(&report.betti.to_string());
            out.push_str(&format!(
                "codimension: {e}\ntwist: {}\ncomparison sign: {}\nsymmetry: {}\nskew-symmetric: {yes}\n",
                report.duality.twist,
                report.duality.sign,
                report.symmetry.name()
            ));
            out.push_str(&format_exterior(&format!("D{}", e - 1), &shown));
        }
        Format::Kv => {
            out.push_str(&format!(
                "codimension = {e}\ntwist = {}\nsign = {}\nsymmetry = {}\nskew = {yes}\n",
                report.duality.twist,
                report.duality.sign,
                report.symmetry.name()
            ));
            out.push_str(&shown.to_kv("D"));
        }
    }
    if report.is_skew() {
        Ok(())
    } else {
        Err(check_failure("D is not skew-symmetric"))
    }
}

fn parse_coeffs(text: &str) -> Result<Vec<Coeff>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse::<Coeff>().map_err(|_| input_error(format!("bad coefficient {t:?}"))))
        .collect()
}

fn syzygy_scheme(args: &Common, out: &mut String) -> Result<(), Failure> {
    let l = load(args)?;
    let report = theorem_check(&l.ideal).map_err(|e| check_failure(format!("precondition failed: {e}")))?;
    let gens = report.complex.d(1).row(0).to_vec();
    let d = &report.wedge;
    let gamma = match (&args.column, &args.coeffs) {
        (Some(_), Some(_)) => return Err(input_error("give either --column or --coeffs")),
        (Some(col), None) => {
            if *col == 0 || *col > d.ncols() {
                return Err(input_error(format!("--column must lie in 1..={}", d.ncols())));
            }
            column_to_cycle(d, col - 1, &gens).map_err(check_failure)?
        }
        (None, coeffs) => {
            let c = match coeffs {
                Some(t) => parse_coeffs(t)?,
                None => (0..d.ncols()).map(|i| Coeff::from_integer(i64::from(i == 0).into())).collect(),
            };
            if c.len() != d.ncols() {
                return Err(input_error(format!("--coeffs needs {} entries", d.ncols())));
            }
            drop_generator_transform(d, &c, &gens)
                .map_err(input_error)?
                .first_cycle()
                .map_err(check_failure)?
        }
    };
    let rep = syzygy_scheme_decompose(&gamma, &l.ideal).map_err(check_failure)?;
    let span = support_span(&gamma).map_err(check_failure)?;
    let list = |v: &[Polynomial]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
    let yes = |b: bool| if b { "yes" } else { "no" };
    let e = report.codimension as i64;
    let (lower, upper) = (crate::ring::binomial(e, 2), crate::ring::binomial(e + 1, 2) - 2);
    let within = (lower..=upper).contains(&(rep.quadric_count() as i64));
    let colon = rep.colon.groebner().elements().to_vec();
    match args.format {
        Format::Text => {
            out.push_str(&format!("cycle: {gamma}\n"));
            out.push_str(&format!("quadric count: {} (bounds {lower}..={upper})\n", rep.quadric_count()));
            out.push_str(&format!("quadrics: {}\n", list(&rep.quadrics)));
            out.push_str(&format!("colon: {}\n", list(&colon)));
            out.push_str(&format!("union with colon verified: {}\n", yes(rep.decomposition_verified)));
            out.push_str(&format!("saturation equals ideal: {}\n", yes(rep.saturation_equals_ideal)));
            out.push_str(&format!("support span: {}\n", list(&span)));
        }
        Format::Kv => {
            out.push_str(&format!("quadric_count = {}\nbounds = {lower},{upper}\n", rep.quadric_count()));
            for (i, q) in rep.quadrics.iter().enumerate() {
                out.push_str(&format!("quadric.{} = {q}\n", i + 1));
            }
            for (i, q) in colon.iter().enumerate() {
                out.push_str(&format!("colon.{} = {q}\n", i + 1));
            }
            out.push_str(&format!("decomposition = {}\nsaturation = {}\n", yes(rep.decomposition_verified), yes(rep.saturation_equals_ideal)));
            for (i, q) in span.iter().enumerate() {
                out.push_str(&format!("span.{} = {q}\n", i + 1));
            }
        }
    }
    let mut ok = within;
    if args.samples > 0 {
        let b = quadric_count_bounds(&report, args.samples, args.seed).map_err(check_failure)?;
        for s in &b.samples {
            out.push_str(&match args.format {
                Format::Text => format!("sample {}: {}\n", s.label, s.count),
                Format::Kv => format!("sample.{} = {}\n", s.label.replace(' ', "_"), s.count),
            });
        }
        ok &= b.all_within();
    }
    if ok {
        Ok(())
    } else {
        Err(check_failure("quadric count outside the bounds"))
    }
}

fn koszul_dim(args: &Common, out: &mut String) -> Result<(), Failure> {
    let l = load(args)?;
    let module = match args.module {
        ModuleArg::Quotient => KoszulModule::Quotient,
        ModuleArg::Ideal => KoszulModule::Ideal,
    };
    let query = |p: usize, q: i64| {
        koszul_cohomology_dim(&CohomologyQuery { ideal: l.ideal.clone(), module, p, q })
    };
    if let (Some(p), Some(q)) = (args.p, args.q) {
        let k = query(p, q);
        out.push_str(&match args.format {
            Format::Text => format!("K_{p},{q} = {k}\n"),
            Format::Kv => format!("koszul.{p}.{q} = {k}\n"),
        });
        return Ok(());
    }
    let n = l.ring.nvars();
    let qmax = l.gens.iter().filter_map(Polynomial::homogeneous_degree).max().unwrap_or(1) as i64 + 1;
    let ps: Vec<usize> = match args.p { Some(p) => vec![p], None => (0..=n).collect() };
    let qs: Vec<i64> = match args.q { Some(q) => vec![q], None => (0..=qmax).collect() };
    match args.format {
        Format::Text => {
            let mut rows = vec![std::iter::once("q\\p".to_string()).chain(ps.iter().map(|p| p.to_string())).collect::<Vec<_>>()];
            for &q in &qs {
                let mut row = vec![q.to_string()];
                row.extend(ps.iter().map(|&p| match query(p, q) { 0 => ".".to_string(), k => k.to_string() }));
                rows.push(row);
            }
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
            for row in rows {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                out.push_str(cells.join(" ").trim_end());
                out.push('\n');
            }
        }
        Format::Kv => {
            for &p in &ps {
                for &q in &qs {
                    out.push_str(&format!("koszul.{p}.{q} = {}\n", query(p, q)));
                }
            }
        }
    }
    Ok(())
}

fn corpus(name: Option<&str>, out: &mut String) -> Result<(), Failure> {
    match name {
        None => {
            for n in CORPUS_NAMES {
                let e = corpus_example_with_order(n, MonomialOrder::Grevlex).map_err(input_error)?;
                let m = e.metadata;
                out.push_str(&format!(
                    "{n}: n={} e={} r={} d={} del_pezzo={} gorenstein={}\n",
                    m.n, m.e, m.r, m.d, m.del_pezzo, m.gorenstein
                ));
            }
        }
        Some(n) => {
            let e = corpus_example_with_order(n, MonomialOrder::Grevlex).map_err(input_error)?;
            out.push_str(&format_ideal(&e.ring, &e.gens));
        }
    }
    Ok(())
}

fn verify_fixtures(bless: bool, dir: Option<PathBuf>, out: &mut String) -> Result<(), Failure> {
    let dir = dir.unwrap_or_else(golden::default_dir);
    let results = golden::verify(&dir, bless).map_err(check_failure)?;
    let mut ok = true;
    for (name, status) in results {
        let word = match status {
            Status::Match => "ok",
            Status::Written => "written",
            Status::Differs => "DIFFERS",
            Status::Missing => "MISSING",
        };
        ok &= matches!(status, Status::Match | Status::Written);
        out.push_str(&format!("{name}: {word}\n"));
    }
    if ok {
        Ok(())
    } else {
        Err(check_failure("golden files differ"))
    }
}

/// Runs one command, writing its report to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let mut buf = String::new();
    let result = match cli.command {
        Command::Resolve(a) => resolve(&a, &mut buf),
        Command::Wedge(a) => wedge(&a, &mut buf),
        Command::TheoremCheck(a) => theorem(&a, &mut buf),
        Command::SyzygyScheme(a) => syzygy_scheme(&a, &mut buf),
        Command::KoszulDim(a) => koszul_dim(&a, &mut buf),
        Command::Corpus { corpus: name } => corpus(name.as_deref(), &mut buf),
        Command::VerifyFixtures { bless, dir } => verify_fixtures(bless, dir, &mut buf),
    };
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

/// Parses arguments and runs; argument errors exit with code 2.
pub fn main_with_args(args: impl IntoIterator<Item = String>, out: &mut impl Write, err: &mut impl Write) -> i32 {
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(if code == 0 { out as &mut dyn Write } else { err as &mut dyn Write }, "{e}");
            code
        }
    }
}
