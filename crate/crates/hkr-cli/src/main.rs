use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use hkr_core::text::{self, Element};
use hkr_core::verify::{run_suite, RunConfig, Suite};
use hkr_core::{
    bar_h, bar_h_unit, hkr_decompose, koszul_h_unit, koszul_to_bar, monomial_tuples, xi_hat, Comparison, Error,
    SymBimodule,
};

const EXIT_VERIFY: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_SHAPE: u8 = 3;

#[derive(Parser)]
#[command(name = "hkr", version, about = "Exact Bar/Koszul resolutions, comparison maps and HKR decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapName {
    #[value(name = "bar_d")]
    BarD,
    #[value(name = "bar_h")]
    BarH,
    #[value(name = "koszul_partial")]
    KoszulPartial,
    #[value(name = "koszul_delta")]
    KoszulDelta,
    #[value(name = "koszul_h")]
    KoszulH,
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    #[value(name = "omega")]
    Omega,
    #[value(name = "s")]
    S,
    #[value(name = "eps")]
    Eps,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a map to an element file and write the result.
    Apply {
        #[arg(long)]
        map: MapName,
        input: PathBuf,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        dim: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_degree: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_k: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Report file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add a check against a deliberately corrupted differential bimodule.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Decompose a cochain over S(V) into its antisymmetric part and a coboundary.
    Hkr {
        spec: PathBuf,
        /// Directory receiving antisymmetric.txt, corrector.txt and residuals.txt.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

enum Failure {
    Parse(String),
    Shape(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Shape(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, body: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Shape(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn shape(msg: impl Into<String>) -> Failure {
    Failure::Shape(msg.into())
}

fn apply(map: MapName, input: Element) -> Result<Element, Failure> {
    let kind = input.kind().name();
    let wrong = || shape(format!("map does not accept a {kind} element"));
    Ok(match (map, input) {
        (MapName::BarD, Element::Bar(c)) => Element::Bar(c.differential()?),
        (MapName::BarH, Element::Bar(c)) => Element::Bar(bar_h(&c, c.arity() as isize)?),
        (MapName::BarH, Element::Sym(a)) => Element::Bar(bar_h_unit(&a)),
        (MapName::KoszulPartial, Element::Koszul(c)) => Element::Koszul(c.boundary()?),
        (MapName::KoszulDelta, Element::Koszul(c)) => Element::Koszul(c.delta()),
        (MapName::KoszulH, Element::Koszul(c)) => Element::Koszul(c.homotopy(c.degree())?),
        (MapName::KoszulH, Element::Sym(a)) => Element::Koszul(koszul_h_unit(&a)),
        (MapName::F, Element::Koszul(c)) => Element::Bar(koszul_to_bar(&c)),
        (MapName::G, Element::Bar(c)) => Element::Koszul(Comparison::new(c.dim()).to_koszul(&c)),
        (MapName::Omega, Element::Bar(c)) => Element::Bar(Comparison::new(c.dim()).retract(&c)),
        (MapName::S, Element::Bar(c)) => Element::Bar(Comparison::new(c.dim()).homotopy(&c)),
        (MapName::Eps, Element::Bar(c)) => Element::Sym(c.augment()?),
        (MapName::Eps, Element::Koszul(c)) => Element::Sym(c.augment()?),
        _ => return Err(wrong()),
    })
}

fn hkr(spec_path: &Path, out: &Path, max_degree: usize) -> Result<String, Failure> {
    let spec = text::parse_cochain_spec(&read(spec_path)?)?;
    if spec.arity == 0 {
        return Err(shape("the decomposition needs arity at least 1"));
    }
    let module = SymBimodule::new(spec.dim);
    let phi = spec.cochain()?;
    let samples = monomial_tuples(spec.dim, spec.arity, max_degree);
    let cmp = Arc::new(Comparison::new(spec.dim));
    let dec = hkr_decompose(&phi, &module, cmp, &samples)?;

    let table = xi_hat(&phi, &module);
    let mut antisymmetric = String::from("# k!·Alt(φ) on basis vectors\n");
    antisymmetric.push_str(&text::format_table_spec(&table));

    let corrector_values: Vec<_> = monomial_tuples(spec.dim, spec.arity - 1, max_degree)
        .into_iter()
        .map(|t| {
            let v = dec.corrector.eval(&module, &t);
            (t, v)
        })
        .collect();
    let corrector = text::format_points_spec(spec.dim, spec.arity - 1, &corrector_values);

    let mut residuals = format!("residual {} {}\n", spec.dim, spec.arity);
    for (t, r) in &dec.residuals {
        let slots: Vec<String> = t.iter().map(text::format_monomial).collect();
        residuals.push_str(&format!("{} = {}\n", slots.join(" | "), text::format_value(r)));
    }

    fs::create_dir_all(out).map_err(|e| shape(format!("{}: {e}", out.display())))?;
    for (name, body) in [("antisymmetric.txt", antisymmetric), ("corrector.txt", corrector), ("residuals.txt", residuals)] {
        write(Some(&out.join(name)), &body)?;
    }
    let nonzero = dec.residuals.iter().filter(|(_, r)| !r.is_zero()).count();
    Ok(format!("samples {}  nonzero residuals {nonzero}\n", dec.residuals.len()))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Apply { map, input, out } => {
            let element = text::parse_element(&read(&input)?)?;
            let result = apply(map, element)?;
            write(out.as_deref(), &text::format_element(&result))?;
            Ok(0)
        }
        Command::Verify { suite, dim, max_degree, max_k, seed, samples, format, out, inject_fault } => {
            let suite = Suite::parse(&suite).ok_or_else(|| shape(format!("unknown suite {suite:?}")))?;
            let cfg = RunConfig {
                dim: dim as usize,
                max_degree: max_degree as usize,
                max_k: max_k as usize,
                seed,
                samples: samples as usize,
            };
            let report = run_suite(suite, cfg, inject_fault);
            let body = match format {
                Format::Text => report.render_text(),
                Format::Machine => report.render_machine(),
            };
            write(out.as_deref(), &body)?;
            Ok(if report.passed() { 0 } else { EXIT_VERIFY })
        }
        Command::Hkr { spec, out, max_degree } => {
            print!("{}", hkr(&spec, &out, max_degree)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Shape(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_SHAPE)
        }
    }
}
