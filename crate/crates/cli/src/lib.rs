//! Command-line front end for the `octder` verifier.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for usage and parse errors.

pub mod algebra_file;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use octder::sampling::{corrupt_table, random_derivation, random_element};
use octder::{
    build_octonion, derivation_space, evaluation_orbit, is_derivation, killing_form_rank,
    table_consistency_check, verify_local_with, verify_pattern, AlgebraElement, DerivationBasis,
    FieldSpec, ProbeSet, Scalar, StructureConstants, TwoLocalTable, TwoLocalVerifier,
};

pub use algebra_file::{emit, parse_algebra_file, AlgebraFile, ParseError};
pub use report::{Check, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "octder",
    version,
    about = "Exact verification of octonion derivation certificates"
)]
pub struct Cli {
    /// Field of scalars: `Q` or `GF(p)` for an odd prime p (default Q).
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<FieldSpec>,

    /// Algebra definition file (default: the built-in octonions).
    #[arg(long, global = true)]
    pub algebra: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Include elapsed time in JSON reports.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the built-in octonion table as an algebra file.
    EmitOctonion,
    /// Compare the structure constants with the hard-coded octonion table.
    CheckTable,
    /// Check the alternative laws on basis elements and random elements.
    CheckAlternative,
    /// Compute the derivation algebra.
    Derivations {
        /// Print the basis matrices.
        #[arg(long)]
        matrices: bool,
    },
    /// Compare the derivation algebra with the 14-parameter pattern.
    VerifyProp1,
    /// Span of D(x) over all derivations D.
    Orbit {
        /// Comma-separated coordinates of x.
        #[arg(long)]
        element: String,
    },
    /// Compare the local derivations on basis vectors and pair sums with Der.
    VerifyLocal,
    /// Randomized 2-local trials with hidden and corrupted tables.
    #[command(name = "verify-2local")]
    Verify2local {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 100)]
        corrupted: usize,
    },
    /// Rank of the Killing form of the derivation algebra.
    KillingRank,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: octder::Error| e.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: if message.ends_with('\n') {
                message
            } else {
                message + "\n"
            },
            report: None,
        }
    }
}

const SPOT_CHECKS: usize = 200;
const COEFFICIENTS: std::ops::RangeInclusive<i64> = -9..=9;

pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                    report: None,
                }
            };
        }
    };
    let started = Instant::now();
    let sc = match load_algebra(&cli) {
        Ok(sc) => sc,
        Err(message) => return Outcome::usage(message),
    };
    let text = emit(&sc);
    let checks = match run_checks(&cli, &sc) {
        Ok(checks) => checks,
        Err(message) => return Outcome::usage(message),
    };
    let elapsed = started.elapsed().as_secs_f64();
    let passed = checks.iter().all(|c| c.passed);
    let report = Report {
        command: command_name(&cli.command).to_string(),
        algebra: sc.name().to_string(),
        field: sc.field().to_string(),
        input_digest: digest(&text),
        passed,
        checks,
        elapsed_seconds: cli.timing.then_some(elapsed),
    };
    let stdout = match (cli.format, &cli.command) {
        (Format::Json, _) => report.to_json(),
        (Format::Text, Command::EmitOctonion) => text,
        (Format::Text, _) => report.to_text(elapsed),
    };
    Outcome {
        code: if passed { EXIT_PASS } else { EXIT_FAIL },
        stdout,
        stderr: String::new(),
        report: Some(report),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::EmitOctonion => "emit-octonion",
        Command::CheckTable => "check-table",
        Command::CheckAlternative => "check-alternative",
        Command::Derivations { .. } => "derivations",
        Command::VerifyProp1 => "verify-prop1",
        Command::Orbit { .. } => "orbit",
        Command::VerifyLocal => "verify-local",
        Command::Verify2local { .. } => "verify-2local",
        Command::KillingRank => "killing-rank",
    }
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn load_algebra(cli: &Cli) -> Result<StructureConstants, String> {
    let Some(path) = &cli.algebra else {
        return Ok(build_octonion(cli.field.unwrap_or(FieldSpec::RATIONALS)));
    };
    if matches!(cli.command, Command::EmitOctonion) {
        return Err("emit-octonion does not read an algebra file".into());
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let sc = parse_algebra_file(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(field) = cli.field {
        if field != sc.field() {
            return Err(format!(
                "--field {field} conflicts with `field {}` in {}",
                sc.field(),
                path.display()
            ));
        }
    }
    Ok(sc)
}

fn run_checks(cli: &Cli, sc: &StructureConstants) -> Result<Vec<Check>, String> {
    let n = sc.dim();
    let field = sc.field();
    let checks = match &cli.command {
        Command::EmitOctonion => {
            let terms = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| sc.product_terms(i, j).len())
                .sum();
            vec![Check::new("emit", true)
                .dim("dim", n)
                .dim("products", terms)
                .note(emit(sc))]
        }
        Command::CheckTable => {
            vec![Check::new("table-consistency", table_consistency_check(sc)).dim("dim", n)]
        }
        Command::CheckAlternative => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut failures = 0;
            for _ in 0..SPOT_CHECKS {
                let a = random_element(field, n, &mut rng, COEFFICIENTS);
                let b = random_element(field, n, &mut rng, COEFFICIENTS);
                let left = sc.associator(&a, &a, &b).map_err(|e| e.to_string())?;
                let right = sc.associator(&a, &b, &b).map_err(|e| e.to_string())?;
                if !left.is_zero() || !right.is_zero() {
                    failures += 1;
                }
            }
            vec![
                Check::new("basis-alternative-laws", sc.check_alternative()).dim("dim", n),
                Check::new("random-spot-checks", failures == 0)
                    .dim("samples", SPOT_CHECKS)
                    .dim("failures", failures),
            ]
        }
        Command::Derivations { matrices } => {
            let db = derivation_space(sc);
            let mut check = Check::new("derivation-space", true)
                .dim("dim", db.dim())
                .dim("unknowns", n * n)
                .dim("equations", n * n * n);
            if *matrices {
                check = check.matrices(db.maps().iter().map(report::map_rows).collect());
            }
            vec![check]
        }
        Command::VerifyProp1 => {
            let db = derivation_space(sc);
            vec![Check::new("pattern-space-equality", verify_pattern(sc))
                .dim("derivations", db.dim())
                .dim("pattern", octder::derivation::PATTERN_PARAMETERS.len())]
        }
        Command::Orbit { element } => {
            let coords = element
                .split(',')
                .map(|s| Scalar::parse(field, s).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            if coords.len() != n {
                return Err(format!(
                    "--element has {} coordinates, expected {n}",
                    coords.len()
                ));
            }
            let x = AlgebraElement::new(field, coords).map_err(|e| e.to_string())?;
            let db = derivation_space(sc);
            let orbit = evaluation_orbit(&db, &x).map_err(|e| e.to_string())?;
            vec![Check::new("orbit", true)
                .dim("dim", orbit.dim())
                .matrices(vec![report::matrix_rows(orbit.basis())])]
        }
        Command::VerifyLocal => {
            let db = derivation_space(sc);
            let r = verify_local_with(&db).map_err(|e| e.to_string())?;
            let mut check = Check::new("local-equals-derivations", r.equal_to_der)
                .dim("local_basis_probes", r.local_dim_basis_only)
                .dim("local_all_probes", r.local_dim_full)
                .dim("derivations", r.derivation_dim);
            if !r.equal_to_der {
                check =
                    check.note("the local space is strictly larger than the derivation algebra");
            }
            vec![check]
        }
        Command::Verify2local { trials, corrupted } => {
            two_local_trials(sc, cli.seed, *trials, *corrupted).map_err(|e| e.to_string())?
        }
        Command::KillingRank => {
            let db = derivation_space(sc);
            let rank = killing_form_rank(&db).map_err(|e| e.to_string())?;
            vec![Check::new("killing-form-nondegenerate", rank == db.dim())
                .dim("rank", rank)
                .dim("derivations", db.dim())]
        }
    };
    Ok(checks)
}

fn two_local_trials(
    sc: &StructureConstants,
    seed: u64,
    trials: usize,
    corrupted: usize,
) -> octder::Result<Vec<Check>> {
    let field = sc.field();
    let db = derivation_space(sc);
    let probes = ProbeSet::basis_and_pair_sums(field, sc.dim())?;
    let verifier = TwoLocalVerifier::new(&db, probes.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut failures = 0;
    let mut witnesses = 0;
    let mut unsound = 0;
    for _ in 0..trials {
        let d = random_derivation(&db, &mut rng, COEFFICIENTS);
        let table = TwoLocalTable::from_map(probes.clone(), &d)?;
        let report = verifier.verify_with(&table, |i, j, w| {
            witnesses += 1;
            if !witness_is_sound(&db, &table, i, j, w) {
                unsound += 1;
            }
        })?;
        let ok = report.all_pairs_witnessed
            && report.agrees_on_probes
            && report.reconstructed == Some(d);
        if !ok {
            failures += 1;
        }
    }

    let mut rejected = 0;
    let mut skipped = 0;
    for _ in 0..corrupted {
        let d = random_derivation(&db, &mut rng, COEFFICIENTS);
        let table = TwoLocalTable::from_map(probes.clone(), &d)?;
        match corrupt_table(&db, &table, &mut rng)? {
            Some((_, bad)) => {
                if !verifier.verify(&bad)?.all_pairs_witnessed {
                    rejected += 1;
                }
            }
            None => skipped += 1,
        }
    }

    let pairs = verifier.pair_count();
    let mut corrupted_check = Check::new("corrupted-tables-rejected", rejected == corrupted)
        .dim("tables", corrupted)
        .dim("rejected", rejected);
    if skipped > 0 {
        corrupted_check = corrupted_check.note(format!("{skipped} tables could not be corrupted"));
    }
    Ok(vec![
        Check::new("hidden-derivations-recovered", failures == 0)
            .dim("trials", trials)
            .dim("probes", probes.len())
            .dim("pairs", pairs)
            .dim("failures", failures),
        Check::new("witness-soundness", unsound == 0)
            .dim("witnesses", witnesses)
            .dim("unsound", unsound),
        corrupted_check,
    ])
}

fn witness_is_sound(
    db: &DerivationBasis,
    table: &TwoLocalTable,
    i: usize,
    j: usize,
    w: &octder::LinearMap,
) -> bool {
    let probes = table.probes().elements();
    is_derivation(db.algebra(), w)
        && [i, j]
            .iter()
            .all(|&k| w.apply(&probes[k]).is_ok_and(|v| v == table.values()[k]))
}
