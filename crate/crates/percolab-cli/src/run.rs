//! Subcommand implementations and exit-code mapping.
//!
//! Machine-readable results go to stdout (or `--out`); the config echo
//! and every diagnostic go to stderr. Exit codes: 0 success or
//! certified, 1 refuted, 2 usage error, 3 inconclusive.

use crate::args::{
    CertifyArgs, Cli, Command, ExpCommand, Family, Format, GenArgs, Method, PropertyArg, SimArgs,
    StructureArgs, SweepArgs, SweepPropertyArg, TightnessArgs,
};
use percolab_core::graph::{generate, read_graph_file, write_graph, GeneratorSpec};
use percolab_core::harness::{
    run_hitting_experiment, run_structure_experiment, run_tightness_experiment, sweep_probability,
    write_report, ExperimentConfig, GraphSource, RunMode, SweepProperty,
};
use percolab_core::spectral::{certify, small_set_bound, CertifyOptions, CertifyRoute, ExpansionProperty, Verdict};
use percolab_core::{Error, Result};
use std::io::Write;
use std::path::PathBuf;

pub fn run(cli: Cli) -> i32 {
    eprintln!("config: {}", config_echo(&cli));
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return 2;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: worker pool: {e}");
            return 2;
        }
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

/// Inconclusive outcomes (randomized generation gave up, solver did not
/// converge, enumeration budget ran out) exit 3; everything else that
/// errors is a usage problem and exits 2.
fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::GenerationFailed(_)
        | Error::EigenNonConvergence(_)
        | Error::BudgetExceeded(_)
        | Error::SpectralInapplicable(_) => 3,
        _ => 2,
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Gen(args) => gen(cli, args),
        Command::Certify(args) => run_certify(cli, args),
        Command::Sim(args) => sim(cli, args),
        Command::Exp(ExpCommand::Structure(args)) => exp_structure(cli, args),
        Command::Exp(ExpCommand::Tightness(args)) => exp_tightness(cli, args),
        Command::Sweep(args) => sweep(cli, args),
    }
}

/// One-line JSON restatement of the invocation, with the resolved seed,
/// so any run can be reproduced from its error stream alone.
fn config_echo(cli: &Cli) -> serde_json::Value {
    let command = match &cli.command {
        Command::Gen(a) => serde_json::json!({ "gen": format!("{a:?}") }),
        Command::Certify(a) => serde_json::json!({ "certify": format!("{a:?}") }),
        Command::Sim(a) => serde_json::json!({ "sim": format!("{a:?}") }),
        Command::Exp(ExpCommand::Structure(a)) => {
            serde_json::json!({ "exp structure": format!("{a:?}") })
        }
        Command::Exp(ExpCommand::Tightness(a)) => {
            serde_json::json!({ "exp tightness": format!("{a:?}") })
        }
        Command::Sweep(a) => serde_json::json!({ "sweep": format!("{a:?}") }),
    };
    serde_json::json!({
        "seed": cli.seed,
        "threads": cli.threads,
        "format": match cli.format { Format::Json => "json", Format::Csv => "csv" },
        "out": cli.out.as_ref().map(|p| p.display().to_string()),
        "command": command,
    })
}

/// Writes `text` (already newline-terminated) to `--out` or stdout.
fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| {
        Error::InvalidParameter(format!("{flag} is required for --type {family}"))
    })
}

fn forbid_unused(unused: &[(&str, bool)], family: &str) -> Result<()> {
    for &(flag, present) in unused {
        if present {
            return Err(Error::InvalidParameter(format!(
                "{flag} does not apply to --type {family}"
            )));
        }
    }
    Ok(())
}

fn gen(cli: &Cli, args: &GenArgs) -> Result<i32> {
    let spec = gen_spec(args, cli.seed)?;
    let g = generate(&spec)?;
    emit(&cli.out, &write_graph(&g))?;
    Ok(0)
}

fn gen_spec(args: &GenArgs, seed: u64) -> Result<GeneratorSpec> {
    let dim_set = args.dim.is_some();
    let n_set = args.n.is_some();
    let d_set = args.d.is_some();
    let factors_set = args.factors.is_some();
    match args.family {
        Family::Hypercube => {
            forbid_unused(&[("--n", n_set), ("--d", d_set), ("--factors", factors_set)], "hypercube")?;
            Ok(GeneratorSpec::Hypercube { dim: require(args.dim, "--dim", "hypercube")? })
        }
        Family::Complete => {
            forbid_unused(&[("--dim", dim_set), ("--d", d_set), ("--factors", factors_set)], "complete")?;
            Ok(GeneratorSpec::Complete { n: require(args.n, "--n", "complete")? })
        }
        Family::Cycle => {
            forbid_unused(&[("--dim", dim_set), ("--d", d_set), ("--factors", factors_set)], "cycle")?;
            Ok(GeneratorSpec::Cycle { n: require(args.n, "--n", "cycle")? })
        }
        Family::Rrg => {
            forbid_unused(&[("--dim", dim_set), ("--factors", factors_set)], "rrg")?;
            Ok(GeneratorSpec::RandomRegular {
                n: require(args.n, "--n", "rrg")?,
                d: require(args.d, "--d", "rrg")?,
                seed,
            })
        }
        Family::Tightness => {
            forbid_unused(&[("--dim", dim_set), ("--factors", factors_set)], "tightness")?;
            Ok(GeneratorSpec::Tightness {
                d: require(args.d, "--d", "tightness")?,
                n: require(args.n, "--n", "tightness")?,
                seed,
            })
        }
        Family::Product => {
            forbid_unused(&[("--dim", dim_set), ("--n", n_set), ("--d", d_set)], "product")?;
            let list = require(args.factors.as_deref(), "--factors", "product")?;
            let factors: Result<Vec<GeneratorSpec>> =
                list.split(',').map(|token| parse_factor(token.trim(), seed)).collect();
            let factors = factors?;
            if factors.len() < 2 {
                return Err(Error::InvalidParameter(
                    "--factors needs at least two comma-separated factors".into(),
                ));
            }
            Ok(GeneratorSpec::Product { factors })
        }
    }
}

/// Parses one product factor: `hypercube:DIM`, `complete:N`, `cycle:N`,
/// or `rrg:N:D[:SEED]` (seed defaults to the global seed).
fn parse_factor(token: &str, default_seed: u64) -> Result<GeneratorSpec> {
    fn num<T: std::str::FromStr>(text: &str, what: &str) -> Result<T> {
        text.parse().map_err(|_| {
            Error::InvalidParameter(format!("factor {what} {text:?} is not a valid number"))
        })
    }
    let parts: Vec<&str> = token.split(':').collect();
    match parts.as_slice() {
        ["hypercube", dim] => Ok(GeneratorSpec::Hypercube { dim: num(dim, "dimension")? }),
        ["complete", n] => Ok(GeneratorSpec::Complete { n: num(n, "vertex count")? }),
        ["cycle", n] => Ok(GeneratorSpec::Cycle { n: num(n, "vertex count")? }),
        ["rrg", n, d] => Ok(GeneratorSpec::RandomRegular {
            n: num(n, "vertex count")?,
            d: num(d, "degree")?,
            seed: default_seed,
        }),
        ["rrg", n, d, seed] => Ok(GeneratorSpec::RandomRegular {
            n: num(n, "vertex count")?,
            d: num(d, "degree")?,
            seed: num(seed, "seed")?,
        }),
        _ => Err(Error::InvalidParameter(format!(
            "unrecognized factor {token:?}; expected hypercube:DIM, complete:N, cycle:N, or rrg:N:D[:SEED]"
        ))),
    }
}

fn run_certify(cli: &Cli, args: &CertifyArgs) -> Result<i32> {
    require_json(cli.format, "certificates")?;
    let g = read_graph_file(&args.graph)?;
    let property = match args.property {
        PropertyArg::P1 => ExpansionProperty::EdgeExpansion {
            c: args.c.ok_or_else(|| {
                Error::InvalidParameter("--c is required for --property p1".into())
            })?,
        },
        PropertyArg::P2 => {
            let epsilon = args.epsilon.ok_or_else(|| {
                Error::InvalidParameter("--epsilon is required for --property p2".into())
            })?;
            let d = g.degree_uniform().ok_or(Error::NotRegular)?;
            ExpansionProperty::SmallSetExpansion {
                epsilon,
                size_bound: small_set_bound(args.c.unwrap_or(1.0), d, g.n()),
            }
        }
    };
    let mut opts = CertifyOptions::default();
    opts.max_size = args.max_size;
    opts.routes = match args.method {
        Method::Auto => opts.routes,
        Method::Harper => vec![CertifyRoute::Harper],
        Method::Spectral => vec![CertifyRoute::Spectral],
        Method::Brute => vec![CertifyRoute::BruteForce],
    };
    let cert = certify(&g, &property, &opts)?;
    let mut text = serde_json::to_string_pretty(&cert)?;
    text.push('\n');
    emit(&cli.out, &text)?;
    Ok(match cert.verdict {
        Verdict::Certified => 0,
        Verdict::Refuted => 1,
        Verdict::Unknown => 3,
    })
}

fn require_json(format: Format, what: &str) -> Result<()> {
    if format == Format::Csv {
        return Err(Error::InvalidParameter(format!(
            "{what} have no csv form; use --format json"
        )));
    }
    Ok(())
}

fn sim(cli: &Cli, args: &SimArgs) -> Result<i32> {
    require_json(cli.format, "simulation reports")?;
    let mut config = ExperimentConfig::new(
        GraphSource::File { path: args.graph.clone() },
        args.k,
        args.trials,
        cli.seed,
    );
    config.workers = cli.threads;
    if args.exhaustive {
        config.mode = RunMode::Exhaustive;
    }
    let report = run_hitting_experiment(&config)?;
    emit(&cli.out, &write_report(&report))?;
    Ok(0)
}

fn exp_structure(cli: &Cli, args: &StructureArgs) -> Result<i32> {
    require_json(cli.format, "experiment reports")?;
    let mut config = ExperimentConfig::new(
        GraphSource::File { path: args.graph.clone() },
        args.k,
        args.trials,
        cli.seed,
    );
    config.workers = cli.threads;
    config.phi = args.phi;
    config.big_c = args.big_c;
    config.p_override = args.p;
    let report = run_structure_experiment(&config)?;
    emit(&cli.out, &write_report(&report))?;
    Ok(0)
}

fn exp_tightness(cli: &Cli, args: &TightnessArgs) -> Result<i32> {
    require_json(cli.format, "experiment reports")?;
    let source = match (&args.graph, args.d, args.n) {
        (Some(path), _, _) => GraphSource::File { path: path.clone() },
        (None, Some(d), Some(n)) => {
            GraphSource::Generator { spec: GeneratorSpec::Tightness { d, n, seed: cli.seed } }
        }
        _ => {
            return Err(Error::InvalidParameter(
                "exp tightness needs either --graph or both --d and --n".into(),
            ))
        }
    };
    let mut config = ExperimentConfig::new(source, 1, args.trials, cli.seed);
    config.workers = cli.threads;
    config.process_trials = args.process_trials;
    config.p_override = args.p;
    let report = run_tightness_experiment(&config)?;
    emit(&cli.out, &write_report(&report))?;
    Ok(0)
}

fn sweep(cli: &Cli, args: &SweepArgs) -> Result<i32> {
    let grid = build_grid(args.pmin, args.pmax, args.step)?;
    let mut config = ExperimentConfig::new(
        GraphSource::File { path: args.graph.clone() },
        args.k,
        args.trials,
        cli.seed,
    );
    config.workers = cli.threads;
    config.p_grid = grid;
    let property = match args.property {
        SweepPropertyArg::MinDegreeGeK => SweepProperty::MinDegreeGeK,
        SweepPropertyArg::Connected => SweepProperty::Connected,
        SweepPropertyArg::KConnected => SweepProperty::KConnected,
    };
    let table = sweep_probability(&config, property)?;
    let text = match cli.format {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
    };
    emit(&cli.out, &text)?;
    Ok(0)
}

/// Inclusive arithmetic grid from `pmin` to `pmax`; the final point
/// snaps to `pmax` when accumulated rounding overshoots it.
fn build_grid(pmin: f64, pmax: f64, step: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&pmin) || !(0.0..=1.0).contains(&pmax) || pmin > pmax {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= pmin <= pmax <= 1, got pmin={pmin} pmax={pmax}"
        )));
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidParameter(format!("--step must be positive, got {step}")));
    }
    let tolerance = step * 1e-9;
    let mut grid = Vec::new();
    for j in 0.. {
        let p = pmin + j as f64 * step;
        if p > pmax + tolerance {
            break;
        }
        grid.push(p.min(pmax));
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive_and_clamped() {
        let grid = build_grid(0.16, 0.34, 0.02).unwrap();
        assert_eq!(grid.len(), 10);
        assert_eq!(grid[0], 0.16);
        assert!((grid[9] - 0.34).abs() < 1e-12);
        for pair in grid.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        assert_eq!(build_grid(0.5, 0.5, 0.1).unwrap(), vec![0.5]);
        // Step landing exactly on pmax keeps the endpoint once.
        assert_eq!(build_grid(0.0, 1.0, 0.25).unwrap().len(), 5);
        assert!(build_grid(0.4, 0.2, 0.1).is_err());
        assert!(build_grid(0.0, 1.0, 0.0).is_err());
        assert!(build_grid(-0.1, 0.5, 0.1).is_err());
    }

    #[test]
    fn factor_parsing_round_trips_known_forms() {
        assert_eq!(
            parse_factor("hypercube:3", 7).unwrap(),
            GeneratorSpec::Hypercube { dim: 3 }
        );
        assert_eq!(parse_factor("cycle:5", 7).unwrap(), GeneratorSpec::Cycle { n: 5 });
        assert_eq!(
            parse_factor("rrg:100:6", 7).unwrap(),
            GeneratorSpec::RandomRegular { n: 100, d: 6, seed: 7 }
        );
        assert_eq!(
            parse_factor("rrg:100:6:42", 7).unwrap(),
            GeneratorSpec::RandomRegular { n: 100, d: 6, seed: 42 }
        );
        assert!(parse_factor("torus:3", 7).is_err());
        assert!(parse_factor("cycle:x", 7).is_err());
        assert!(parse_factor("hypercube", 7).is_err());
    }

    #[test]
    fn gen_spec_validates_flag_usage() {
        let args = |family, dim, n, d, factors: Option<&str>| GenArgs {
            family,
            dim,
            n,
            d,
            factors: factors.map(str::to_owned),
        };
        let spec = gen_spec(&args(Family::Hypercube, Some(3), None, None, None), 9).unwrap();
        assert_eq!(spec, GeneratorSpec::Hypercube { dim: 3 });
        let spec = gen_spec(&args(Family::Rrg, None, Some(50), Some(4), None), 9).unwrap();
        assert_eq!(spec, GeneratorSpec::RandomRegular { n: 50, d: 4, seed: 9 });
        // Missing required flag.
        assert!(gen_spec(&args(Family::Hypercube, None, None, None, None), 9).is_err());
        // Flag that the family ignores.
        assert!(gen_spec(&args(Family::Hypercube, Some(3), Some(8), None, None), 9).is_err());
        // Product needs two factors.
        assert!(gen_spec(&args(Family::Product, None, None, None, Some("cycle:4")), 9).is_err());
        let spec =
            gen_spec(&args(Family::Product, None, None, None, Some("cycle:4, cycle:6")), 9).unwrap();
        assert_eq!(
            spec,
            GeneratorSpec::Product {
                factors: vec![GeneratorSpec::Cycle { n: 4 }, GeneratorSpec::Cycle { n: 6 }]
            }
        );
    }

    #[test]
    fn exit_codes_partition_the_error_space() {
        assert_eq!(error_exit_code(&Error::InvalidParameter("x".into())), 2);
        assert_eq!(error_exit_code(&Error::NotRegular), 2);
        assert_eq!(error_exit_code(&Error::GenerationFailed("y".into())), 3);
        assert_eq!(error_exit_code(&Error::BudgetExceeded(5)), 3);
        assert_eq!(error_exit_code(&Error::EigenNonConvergence(10)), 3);
    }
}
