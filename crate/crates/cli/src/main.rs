//! `geamkit` command-line front end.
//!
//! Exit codes: 0 pass, 1 verification or certification failure, 2 usage,
//! parse or build error. Errors are reported on stdout as
//! `{"error": ..., "kind": ...}`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use geamkit::designs::{conical_check_direct, kappas_closed_form};
use geamkit::geam::{
    completeness_rank, constant_r_family, design2_family, equal_trace_weights, extract_parameters, mub_geam,
    rescale_to_geam, uniform_weights, Classification,
};
use geamkit::io::{read_json, to_json_string, write_json};
use geamkit::operator::{random_density, trace_distance, DensityOperator, HermitianOperator};
use geamkit::tomography::{
    born_probabilities, geam_dual_frame, index_of_coincidence, ioc_closed_form, purity_from_probabilities,
    reconstruct_state, sample_measurements,
};
use geamkit::{build_gsm, gell_mann_basis, Error, Geam};

mod csv;

#[derive(Parser)]
#[command(name = "geamkit", version, about = "Generalized equiangular measurements")]
struct Cli {
    /// Verifier tolerance.
    #[arg(long, global = true, env = "GEAMKIT_TOL", default_value_t = 1e-10)]
    tol: f64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family and write it as JSON.
    Construct(ConstructArgs),
    /// Check the defining relations and the span of a family file.
    Verify { file: PathBuf },
    /// Certify a family file as a conical 2-design.
    DesignCheck { file: PathBuf },
    /// Probabilities, coincidence index, purity and reconstruction for a state.
    Tomo(TomoArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum WeightPolicy {
    EqualTrace,
    Uniform,
    Explicit,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    d: usize,
    /// Line sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Constant ratio `Tr P P' = eta Tr P^2`.
    #[arg(long)]
    eta: Option<f64>,
    /// Equal-trace family with `b - c = R`.
    #[arg(long = "R")]
    r: Option<f64>,
    /// Complete set of mutually unbiased bases (prime d).
    #[arg(long)]
    mub: bool,
    /// Explicit mixing parameter per line.
    #[arg(long, value_delimiter = ',')]
    t_list: Option<Vec<f64>>,
    /// Line weights for `--t-list`, comma separated.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    weight_policy: Option<WeightPolicy>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TomoArgs {
    file: PathBuf,
    /// State as a matrix JSON file.
    #[arg(long, conflicts_with = "random_rank")]
    state: Option<PathBuf>,
    /// Draw a random state of this rank instead.
    #[arg(long)]
    random_rank: Option<usize>,
    /// Simulated shots; exact probabilities when absent.
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(Value, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = if cli.tol.is_nan() || cli.tol <= 0.0 {
        Err(Failure::Usage(format!("tolerance must be positive, got {}", cli.tol)))
    } else {
        match &cli.command {
            Command::Construct(a) => construct(a, cli.tol),
            Command::Verify { file } => verify(file, cli.tol),
            Command::DesignCheck { file } => design_check(file, cli.tol),
            Command::Tomo(a) => tomo(a, cli.tol),
        }
    };
    match result {
        Ok((report, pass)) => {
            let out = match cli.format {
                Format::Json => to_json_string(&report),
                Format::Csv => Ok(csv::long_format(&report)),
            };
            match out {
                // ignore a closed pipe
                Ok(text) => {
                    let _ = writeln!(std::io::stdout(), "{text}");
                }
                Err(e) => return fail(Failure::Lib(e)),
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    let (msg, kind) = match f {
        Failure::Usage(m) => (m, "UsageError".to_string()),
        Failure::Lib(e) => (e.to_string(), e.kind().to_string()),
    };
    println!("{}", json!({ "error": msg, "kind": kind }));
    ExitCode::from(2)
}

fn construct(a: &ConstructArgs, tol: f64) -> CmdResult {
    let chosen = [a.eta.is_some(), a.r.is_some(), a.mub, a.t_list.is_some()]
        .iter()
        .filter(|&&x| x)
        .count();
    if !a.mub {
        geamkit::basis::check_sizes(a.d, &a.sizes)?;
    }
    if chosen != 1 {
        return Err(Failure::Usage("give exactly one of --eta, --R, --mub, --t-list".into()));
    }
    let fixed_weights = a.t_list.is_none();
    if fixed_weights && (a.weights.is_some() || a.weight_policy.is_some()) {
        return Err(Failure::Usage("--weights and --weight-policy apply only to --t-list".into()));
    }
    let g = if a.mub {
        mub_geam(a.d)?
    } else if let Some(eta) = a.eta {
        design2_family(a.d, &a.sizes, eta, &gell_mann_basis(a.d)?)?
    } else if let Some(r) = a.r {
        constant_r_family(a.d, &a.sizes, r, &gell_mann_basis(a.d)?)?
    } else {
        let t = a.t_list.as_ref().expect("one builder chosen");
        let policy = a.weight_policy.unwrap_or(if a.weights.is_some() {
            WeightPolicy::Explicit
        } else {
            WeightPolicy::EqualTrace
        });
        let weights = match (policy, &a.weights) {
            (WeightPolicy::Explicit, Some(w)) => w.clone(),
            (WeightPolicy::Explicit, None) => return Err(Failure::Usage("--weight-policy explicit needs --weights".into())),
            (_, Some(_)) => return Err(Failure::Usage("--weights requires --weight-policy explicit".into())),
            (WeightPolicy::EqualTrace, None) => equal_trace_weights(a.d, &a.sizes)?,
            (WeightPolicy::Uniform, None) => uniform_weights(a.sizes.len()),
        };
        let gsm = build_gsm(a.d, &a.sizes, t, &gell_mann_basis(a.d)?)?;
        rescale_to_geam(&gsm, &weights)?
    };
    let report = extract_parameters(&g, tol);
    let family = serde_json::to_value(&g).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = json!({
        "d": g.d,
        "sizes": g.sizes,
        "gammas": g.gammas,
        "params": report.params,
        "pass": report.pass,
    });
    match &a.out {
        Some(path) => {
            write_json(path, &g)?;
            out["out"] = json!(path.display().to_string());
        }
        None => out["family"] = family,
    }
    Ok((out, report.pass))
}

fn load_family(path: &Path) -> Result<Geam, Failure> {
    Ok(read_json(path)?)
}

fn verify(file: &Path, tol: f64) -> CmdResult {
    let g = load_family(file)?;
    let r = extract_parameters(&g, tol);
    let c = completeness_rank(&g, tol);
    let pass = r.pass && c.classification != Classification::Deficient;
    Ok((
        json!({
            "deviations": r.deviations,
            "params": r.params,
            "min_eigenvalue": r.min_eigenvalue,
            "b_in_range": r.b_in_range,
            "rank": c.rank,
            "element_count": c.element_count,
            "classification": c.classification,
            "count_equality": c.count_equality,
            "pass": pass,
        }),
        pass,
    ))
}

fn design_check(file: &Path, tol: f64) -> CmdResult {
    let g = load_family(file)?;
    let direct = conical_check_direct(&g, tol);
    let mut out = json!({ "direct": direct, "line_S": g.line_s() });
    match kappas_closed_form(&g, tol) {
        Ok(cf) => {
            let gap = (cf.kappa_plus - direct.kappa_plus).abs().max((cf.kappa_minus - direct.kappa_minus).abs());
            out["closed_form"] = json!(cf);
            out["agreement"] = json!(gap);
        }
        Err(e) => out["closed_form_error"] = json!({ "error": e.to_string(), "kind": e.kind() }),
    }
    out["is_design"] = json!(direct.is_design);
    Ok((out, direct.is_design))
}

fn tomo(a: &TomoArgs, tol: f64) -> CmdResult {
    let g = load_family(&a.file)?;
    let rho = match (&a.state, a.random_rank) {
        (Some(path), _) => DensityOperator::new(read_json::<HermitianOperator>(path)?)?,
        (None, Some(rank)) => random_density(g.d, rank, a.seed)?,
        (None, None) => return Err(Failure::Usage("give --state FILE or --random-rank R".into())),
    };
    if rho.dim() != g.d {
        return Err(Error::DimensionMismatch(rho.dim(), g.d).into());
    }
    if a.shots == Some(0) {
        return Err(Failure::Usage("--shots must be at least 1".into()));
    }
    let exact = born_probabilities(&rho, &g)?;
    let duals = geam_dual_frame(&g)?;
    let mut out = json!({
        "exact_probabilities": exact.p,
        "ioc_exact": index_of_coincidence(&exact),
        "purity_true": rho.purity(),
        "purity_formula_exact": purity_from_probabilities(&g, &exact)?,
    });
    match ioc_closed_form(&g, rho.purity(), tol) {
        Ok(cf) => {
            out["ioc_closed_form"] = json!(cf.c);
            out["ioc_max"] = json!(cf.c_max);
        }
        Err(e @ Error::NotConstantS(_)) => out["warning"] = json!(format!("closed-form index omitted: {e}")),
        Err(e) => return Err(e.into()),
    }
    let observed = match a.shots {
        Some(shots) => {
            let t = sample_measurements(&rho, &g, shots, a.seed)?;
            out["shots"] = json!(shots);
            out["seed"] = json!(a.seed);
            out["empirical_probabilities"] = json!(t.p);
            out["ioc_empirical"] = json!(index_of_coincidence(&t));
            out["purity_formula_empirical"] = json!(purity_from_probabilities(&g, &t)?);
            t
        }
        None => exact,
    };
    let est = reconstruct_state(&observed, &duals, true)?;
    out["purity_reconstructed"] = json!(geamkit::hs_inner(&est, &est)?);
    out["trace_distance"] = json!(trace_distance(&est, rho.operator())?);
    if let Some(path) = &a.out {
        write_json(path, &out)?;
    }
    Ok((out, true))
}
