//! `orbijac`: orbifold Chow rings, mirror fibrations and their checks from
//! the command line.
//!
//! Exit status: 0 on success, 1 for invalid input, 2 when a verification
//! fails, 3 when an internal consistency check fails.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use orbijac_core::deformed_ring::default_degree_cap;
use orbijac_core::isomorphism::chow_invariance;
use orbijac_core::lattice::{gcd_all, WeightKind};
use orbijac_core::presentation::{
    affine_embedding, chain_presentation, chow_presentation, rerender, QuotientSummary, DEFAULT_BOUND,
};
use orbijac_core::rational::{fmt_rat, parse_rat};
use orbijac_core::semigroup::{s_generators, t_generators, verify_generators};
use orbijac_core::verify::{property_suite, rescale_suite, SuiteConfig, DEFAULT_CASES, DEFAULT_SEED};
use orbijac_core::{DeformedRing, Error, Fibration, Format, Strategy, WeightVector};

#[derive(Parser)]
#[command(name = "orbijac", version, about = "Orbifold Chow rings of root stacks over weighted projective spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded orbifold Chow ring, cross-checked on the zero fibre.
    Chow(ChowArgs),
    /// Affine embedding of the mirror fibration.
    Fibration(FibrationArgs),
    /// Generators of the semigroups S and T.
    Semigroup(Common),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Re-render a stored JSON document.
    Export(ExportArgs),
}

#[derive(Args)]
struct Common {
    /// Weights, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<i64>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ChowArgs {
    #[command(flatten)]
    common: Common,
    /// Root multiplicities, comma separated (default: all ones).
    #[arg(long, value_delimiter = ',')]
    w: Option<Vec<i64>>,
    /// Highest degree to compute, e.g. `3` or `7/2` (default: n + 1).
    #[arg(long)]
    degree_cap: Option<String>,
    /// Generator bound for the presentation formats.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: u32,
}

#[derive(Args)]
struct FibrationArgs {
    #[command(flatten)]
    common: Common,
    /// Maximal number of generator factors in a relation.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: u32,
    /// Use the closed-form chain presentation (needs p_0 = 1 and p_i | p_{i+1}).
    #[arg(long)]
    chain: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Lemma31,
    Properties,
    Rescale,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Weights; without them `lemma31` sweeps all p with entries <= 6 and n <= 2.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',')]
    w: Option<Vec<i64>>,
    /// Box size for `lemma31`.
    #[arg(long, default_value_t = 4)]
    bound: u32,
    /// Rescale factor for `rescale`.
    #[arg(long)]
    a: Option<i64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CASES)]
    cases: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    /// JSON file written by another subcommand.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Singular,
    Macaulay2,
    Latex,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Singular => Format::Singular,
            FormatArg::Macaulay2 => Format::Macaulay2,
            FormatArg::Latex => Format::Latex,
        }
    }
}

enum Failure {
    Input(String),
    Verification(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Chow(args) => chow(args),
        Command::Fibration(args) => fibration(args),
        Command::Semigroup(args) => semigroup(args),
        Command::Verify(args) => verify(args),
        Command::Export(args) => export(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> CliResult {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn weights(p: Vec<i64>) -> Result<WeightVector, Failure> {
    Ok(WeightVector::weights(p)?)
}

fn multiplicities(w: Option<Vec<i64>>, len: usize) -> Result<WeightVector, Failure> {
    match w {
        Some(w) => Ok(WeightVector::multiplicities(w)?),
        None => Ok(WeightVector::ones(len, WeightKind::Multiplicities)),
    }
}

fn chow(args: ChowArgs) -> CliResult {
    let p = weights(args.common.p)?;
    let w = multiplicities(args.w, p.len())?;
    let cap = match &args.degree_cap {
        Some(s) => parse_rat(s)?,
        None => default_degree_cap(&p),
    };
    let ring = DeformedRing::new(p.clone(), w.clone())?;
    let format = Format::from(args.common.format);
    let text = match format {
        Format::Json | Format::Latex => {
            let q = ring.orbifold_chow(&cap)?;
            // the zero-fibre construction must reproduce the same data
            if p.len() >= 2 {
                Fibration::new(p.clone()).jacobian_algebra_zero_fiber(&w, &cap)?;
            }
            QuotientSummary::from(&q).export(format)?
        }
        Format::Singular | Format::Macaulay2 => chow_presentation(&p, &w, args.bound)?.export(format),
    };
    emit(&text, &args.common.out)
}

fn fibration(args: FibrationArgs) -> CliResult {
    let p = weights(args.common.p)?;
    let pres = if args.chain {
        chain_presentation(&p)?
    } else {
        affine_embedding(&p, args.bound)?
    };
    if !pres.verify_all()? {
        return Err(Failure::Internal("an emitted relation does not hold".into()));
    }
    emit(&pres.export(args.common.format.into()), &args.common.out)
}

fn semigroup(args: Common) -> CliResult {
    let p = weights(args.p)?;
    if !matches!(args.format, FormatArg::Json) {
        return Err(Failure::Input("semigroup output is only available as json".into()));
    }
    let s = s_generators(&p);
    let t = t_generators(&p)?;
    let vec = |v: &[orbijac_core::Rat]| v.iter().map(fmt_rat).collect::<Vec<_>>();
    let doc = json!({
        "kind": "semigroup",
        "p": p.entries(),
        "unit_vectors": s.unit_vectors.iter().map(|e| vec(e.entries())).collect::<Vec<_>>(),
        "fractional": s.fractional.iter().enumerate().map(|(i, list)| {
            list.iter().map(|(k, g)| json!({"index": i, "k": k, "exponent": vec(g.entries())})).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "irreducible": s.pruned().iter().map(|g| vec(g.exponent.entries())).collect::<Vec<_>>(),
        "t_generators": vec(&t.generators),
        "ell": fmt_rat(&t.ell),
    });
    emit(&(serde_json::to_string_pretty(&doc).expect("plain data") + "\n"), &args.out)
}

fn verify(args: VerifyArgs) -> CliResult {
    let (doc, pass) = match args.suite {
        Suite::Lemma31 => {
            let ps = match args.p {
                Some(p) => vec![weights(p)?],
                None => small_weights(6, 2),
            };
            let reports = ps
                .iter()
                .map(|p| verify_generators(p, args.bound, Strategy::default()))
                .collect::<Result<Vec<_>, _>>()?;
            let pass = reports.iter().all(|r| r.pass);
            let doc = if reports.len() == 1 {
                serde_json::to_value(&reports[0])
            } else {
                serde_json::to_value(json!({"kind": "generator-sweep", "pass": pass, "reports": reports}))
            };
            (doc.expect("plain data"), pass)
        }
        Suite::Properties => {
            let cfg = SuiteConfig {
                seed: args.seed,
                cases: args.cases,
                ..SuiteConfig::default()
            };
            let r = property_suite(&cfg);
            (serde_json::to_value(&r).expect("plain data"), r.pass)
        }
        Suite::Rescale => {
            let triples = match (args.p, args.a) {
                (Some(p), Some(a)) => {
                    let p = weights(p)?;
                    let w = multiplicities(args.w, p.len())?;
                    vec![(p, w, a)]
                }
                (None, None) => [(vec![1, 2], 3), (vec![1, 1], 2), (vec![2, 3], 5)]
                    .into_iter()
                    .map(|(p, a)| (WeightVector::weights(p).expect("valid"), WeightVector::ones(2, WeightKind::Multiplicities), a))
                    .collect(),
                _ => return Err(Failure::Input("--p and --a go together".into())),
            };
            let reports = triples
                .iter()
                .map(|(p, w, a)| chow_invariance(w, p, *a, None))
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = SuiteConfig {
                seed: args.seed,
                cases: args.cases,
                ..SuiteConfig::default()
            };
            let props = rescale_suite(&cfg);
            let pass = props.pass && reports.iter().all(|r| r.pass);
            let doc = json!({"kind": "rescale", "pass": pass, "invariance": reports, "properties": props});
            (doc, pass)
        }
    };
    emit(&(serde_json::to_string_pretty(&doc).expect("plain data") + "\n"), &args.out)?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification("see report".into()))
    }
}

/// All weight vectors of length 2 to `max_n + 1` with entries in
/// `1..=max_entry` and gcd 1.
fn small_weights(max_entry: i64, max_n: usize) -> Vec<WeightVector> {
    let mut out = Vec::new();
    for len in 2..=max_n + 1 {
        let mut v = vec![1i64; len];
        loop {
            if gcd_all(&v) == 1 {
                out.push(WeightVector::weights(v.clone()).expect("gcd checked"));
            }
            let Some(i) = (0..len).rev().find(|&i| v[i] < max_entry) else {
                break;
            };
            v[i] += 1;
            for x in &mut v[i + 1..] {
                *x = 1;
            }
        }
    }
    out
}

fn export(args: ExportArgs) -> CliResult {
    let text = fs::read_to_string(&args.input)?;
    emit(&rerender(&text, args.format.into())?, &args.out)
}
