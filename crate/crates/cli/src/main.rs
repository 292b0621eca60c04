//! `gsu`: uncertainty bounds, Fourier transforms and verification suites
//! for functions on finite transitive G-sets.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use gsu_core::character::homs_to_units;
use gsu_core::field::splitting_extension;
use gsu_core::fourier::{
    abelian_characters, build_dual_set, chebotarev_minor_check, fourier_transform, min_supp_witness, rank_support,
    DEFAULT_CHEBOTAREV_CAP,
};
use gsu_core::harness::{
    emit_report, ledger_csv, render_json, run_sweep, single_instance_ledger, Format, SuiteRegistry, SweepConfig,
    SweepLedger, VerifyConfig,
};
use gsu_core::io::{group_from_value, load_bundle, load_function};
use gsu_core::uncertainty::{analyze, classify_equality_classical, coset_indicator_function, rank_support_analyze};
use gsu_core::{field_from_spec, Error, ErrorClass, FunctionOnX};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gsu", version, about = "Support/dimension uncertainty bounds on finite G-sets")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for sweeps (0 uses every core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Bound report for one function file.
    Analyze {
        #[arg(long)]
        function: PathBuf,
        /// Base point in the support; defaults to the smallest.
        #[arg(long)]
        x0: Option<usize>,
        /// Representation bundle; adds the rank support of the transform.
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Exhaustive sweep driven by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Fourier transform of a function. Without a bundle the group must be
    /// abelian and its characters are used.
    Fourier {
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Run named verification suites.
    Verify {
        /// Suite name, repeatable; `all` runs everything.
        #[arg(long = "suite", default_value = "all")]
        suites: Vec<String>,
        /// Random instances per sampled property.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// List the registered suites and exit.
        #[arg(long)]
        list: bool,
    },
    /// Check every square minor of the p-point DFT matrix.
    Chebotarev {
        #[arg(long)]
        p: u64,
        /// Largest accepted p.
        #[arg(long, default_value_t = DEFAULT_CHEBOTAREV_CAP)]
        cap: u64,
    },
    /// Write `c·η` on the coset `γH` of the regular set as a function file.
    MakeWitness {
        /// Catalog name or group file.
        #[arg(long)]
        group: String,
        /// Comma-separated element indices of H.
        #[arg(long)]
        subgroup: String,
        #[arg(long, default_value_t = 0)]
        gamma: usize,
        /// Index into the characters of H; the trivial character by default.
        #[arg(long)]
        character: Option<usize>,
        #[arg(long, default_value = "1")]
        scalar: String,
        #[arg(long)]
        field: String,
    },
}

enum Output {
    Json(Value),
    Ledger(SweepLedger),
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Usage => 1,
        ErrorClass::Validation => 2,
        ErrorClass::Violation => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.class()))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let format: Format = cli.global.format.parse()?;
    let seed = cli.global.seed.unwrap_or(0);
    let output = match cli.command {
        Command::Analyze { function, x0, bundle } => cmd_analyze(&function, x0, bundle.as_deref(), format, seed)?,
        Command::Sweep { config } => {
            let mut cfg = SweepConfig::load(&config)?;
            if let Some(j) = cli.global.jobs {
                cfg.jobs = j;
            }
            if let Some(s) = cli.global.seed {
                cfg.seed = s;
            }
            Output::Ledger(run_sweep(&cfg)?)
        }
        Command::Fourier { function, bundle } => Output::Json(cmd_fourier(&function, bundle.as_deref(), seed)?),
        Command::Verify { suites, samples, list } => {
            let registry = SuiteRegistry::default();
            if list {
                let names: Vec<Value> = registry.describe().into_iter().map(|(n, a)| json!({"name": n, "about": a})).collect();
                Output::Json(Value::Array(names))
            } else {
                Output::Ledger(registry.run(&suites, &VerifyConfig { seed, samples })?)
            }
        }
        Command::Chebotarev { p, cap } => {
            let r = chebotarev_minor_check(p, cap)?;
            if !r.all_nonzero {
                emit(&Output::Json(serde_json::to_value(&r)?), format, cli.global.out.as_deref())?;
                return Ok(3);
            }
            Output::Json(serde_json::to_value(&r)?)
        }
        Command::MakeWitness { group, subgroup, gamma, character, scalar, field } => {
            Output::Json(cmd_make_witness(&group, &subgroup, gamma, character, &scalar, &field)?)
        }
    };
    emit(&output, format, cli.global.out.as_deref())?;
    Ok(match &output {
        Output::Ledger(l) if !l.is_clean() => 3,
        _ => 0,
    })
}

fn emit(output: &Output, format: Format, out: Option<&Path>) -> Result<(), Error> {
    let text = match (output, format) {
        (Output::Json(v), Format::Json) => render_json(v),
        (Output::Ledger(l), Format::Json) => render_json(&l.to_json()),
        (Output::Ledger(l), Format::Csv) => ledger_csv(l)?,
        (Output::Json(_), Format::Csv) => {
            return Err(Error::ParseError("csv output is available for analyze, sweep and verify".into()))
        }
    };
    emit_report(&text, out)
}

fn cmd_analyze(path: &Path, x0: Option<usize>, bundle: Option<&Path>, format: Format, seed: u64) -> Result<Output, Error> {
    let f = load_function(path)?;
    if format == Format::Csv {
        if x0.is_some() || bundle.is_some() {
            return Err(Error::ParseError("csv output takes neither --x0 nor --bundle".into()));
        }
        return Ok(Output::Ledger(single_instance_ledger(&f, seed)?));
    }
    let mut report = match bundle {
        Some(b) => {
            let bundle = Arc::new(load_bundle(b, Some(f.gset().group_arc()))?);
            let fe = f.embed(bundle.field())?;
            let ds = build_dual_set(fe.gset().clone(), bundle)?;
            let mut r = rank_support_analyze(&fe, &ds)?;
            if x0.is_some() {
                let at = analyze(&fe, x0)?;
                r = gsu_core::uncertainty::UncertaintyReport { rank_support: r.rank_support, ..at };
            }
            r
        }
        None => analyze(&f, x0)?,
    };
    report.certificate = classify_equality_classical(&f, Some(report.x0))?.certificate;
    Ok(Output::Json(report.to_json()))
}

fn cmd_fourier(path: &Path, bundle: Option<&Path>, seed: u64) -> Result<Value, Error> {
    let f = load_function(path)?;
    let g = f.gset().group_arc().clone();
    let bundle = match bundle {
        Some(b) => Arc::new(load_bundle(b, Some(&g))?),
        None => {
            let e = splitting_extension(f.field(), &g)?;
            Arc::new(abelian_characters(g, &e)?)
        }
    };
    let f = f.embed(bundle.field())?;
    let ds = build_dual_set(f.gset().clone(), bundle)?;
    let ft = fourier_transform(&f, &ds)?;
    let witness = min_supp_witness(&ft, 16, &mut ChaCha8Rng::seed_from_u64(seed))?;
    let mut v = ft.to_json();
    v["rank_support"] = json!(rank_support(&ft));
    v["multiplicities"] = json!(ds.multiplicities());
    v["min_supp"] = serde_json::to_value(&witness.summary)?;
    Ok(v)
}

fn cmd_make_witness(
    group: &str,
    subgroup: &str,
    gamma: usize,
    character: Option<usize>,
    scalar: &str,
    field: &str,
) -> Result<Value, Error> {
    let g = Arc::new(group_from_value(&Value::from(group), Path::new(""))?);
    let field = field_from_spec(field)?;
    let elems = subgroup
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::ParseError(format!("subgroup element {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let h = g.subgroup(&elems)?;
    let chars = homs_to_units(&g, &h, &field);
    let eta = match character {
        Some(i) => chars
            .get(i)
            .ok_or_else(|| Error::InputError(format!("character {i} of {} available", chars.len())))?
            .clone(),
        None => chars.into_iter().find(|c| c.is_trivial()).expect("trivial character exists"),
    };
    let c = field.parse_str(scalar)?;
    let f: FunctionOnX = coset_indicator_function(g.clone(), &h, gamma, &eta, &c, &field)?;
    Ok(json!({
        "action": {"group": serde_json::to_value(g.to_spec())?, "kind": "regular"},
        "field": field.spec(),
        "values": f.values().iter().map(|v| field.value_to_json(v)).collect::<Vec<_>>(),
    }))
}
