//! Command-line front end: load regularized characters, run the Birkhoff
//! decompositions, print idempotent tables and verification reports.
//!
//! Exit codes: 0 success, 1 failed verification, 2 malformed input or usage,
//! 3 computation limits (pole depth or degree caps), 4 disagreement between
//! decomposition routes (which would indicate a bug).

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use renorm_core::CoreError;
use renorm_core::bogoliubov::bogoliubov_decompose;
use renorm_core::bridge;
use renorm_core::characters::Character;
use renorm_core::descent::{Side, change_of_basis, dynkin, zassenhaus};
use renorm_core::factorization::{
    ExpFactorization, FactorizationMode, assemble, exp_factorize, verify_theorem,
};
use renorm_core::json::{
    CharacterJson, DecompositionReport, DescentElementJson, factors_json, family_tag,
};
use renorm_core::verify::run_suite;

#[derive(Parser)]
#[command(
    name = "renorm",
    about = "Exact Birkhoff decomposition of Hopf-algebra characters and the descent-algebra idempotents behind it"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Bogoliubov,
    Zassenhaus,
    Accelerated,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesChoice {
    Left,
    Right,
    AccelLeft,
    AccelRight,
    Dynkin,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a character into counterterm and renormalized parts.
    Decompose {
        /// Character JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Truncation degree; defaults to the one in the input.
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the Zassenhaus and Dynkin elements in the composition basis.
    Idempotents {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "all")]
        series: SeriesChoice,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run a named verification suite.
    Verify {
        /// rota-baxter | hopf-axioms | theorem | zassenhaus | beta | all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value = "5")]
        degree: u32,
        #[arg(long, default_value = "1")]
        seed: u64,
    },
    /// Compute the β-function components of a character.
    Beta {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn exit_code_for(err: &CoreError) -> u8 {
    match err {
        CoreError::Parse(_) => 2,
        CoreError::FloorExceeded { .. } | CoreError::DegreeTooLarge { .. } => 3,
        CoreError::BridgeMismatch { .. } => 4,
        _ => 1,
    }
}

fn fail(err: CoreError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(&err))
}

/// Degree caps per family; RENORM_MAX_DEGREE overrides them (at own risk).
fn degree_cap(default_cap: u32) -> u32 {
    std::env::var("RENORM_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default_cap)
}

fn load_character(path: &PathBuf, degree: Option<u32>) -> Result<Character, CoreError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CoreError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let mut json: CharacterJson = serde_json::from_str(&text)
        .map_err(|e| CoreError::Parse(format!("malformed character JSON: {e}")))?;
    if let Some(n) = degree {
        json.truncation = n;
        json.values.retain(|code, _| {
            renorm_core::hopf::Forest::parse(code)
                .map(|f| f.degree() <= n)
                .unwrap_or(true)
        });
    }
    let character = json.to_character()?;
    let cap = match character.family() {
        renorm_core::hopf::TreeFamily::RootedTrees => degree_cap(6),
        renorm_core::hopf::TreeFamily::Ladders => degree_cap(8),
    };
    if character.truncation() > cap {
        return Err(CoreError::DegreeTooLarge {
            degree: character.truncation(),
            cap,
        });
    }
    Ok(character)
}

fn emit(text: String, output: Option<&PathBuf>) -> Result<(), CoreError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CoreError::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn character_table(label: &str, c: &Character, lines: &mut Vec<String>) {
    lines.push(format!("{label}:"));
    for (t, v) in c.tree_values() {
        if !v.is_zero_on_window() {
            lines.push(format!("  {}({}) = {}", label, t.code(), v));
        }
    }
}

fn run_decompose(
    input: PathBuf,
    degree: Option<u32>,
    method: Method,
    output: Option<PathBuf>,
    format: Format,
) -> Result<bool, CoreError> {
    let phi = load_character(&input, degree)?;
    let (report, agreement) = match method {
        Method::All => {
            let theorem = verify_theorem(&phi)?;
            (
                DecompositionReport::from_theorem(&theorem),
                theorem.agreement,
            )
        }
        Method::Bogoliubov => {
            let pair = bogoliubov_decompose(&phi)?;
            (
                DecompositionReport {
                    phi_minus: CharacterJson::from_character(&pair.phi_minus),
                    phi_plus: CharacterJson::from_character(&pair.phi_plus),
                    factors: Vec::new(),
                    agreement: true,
                    first_mismatch: None,
                },
                true,
            )
        }
        Method::Zassenhaus | Method::Accelerated => {
            let mode = if method == Method::Zassenhaus {
                FactorizationMode::Plain
            } else {
                FactorizationMode::Accelerated
            };
            let fact: ExpFactorization = exp_factorize(&phi, mode)?;
            let (minus_inv, plus) = assemble(&fact)?;
            let minus = minus_inv.conv_inverse()?;
            (
                DecompositionReport {
                    phi_minus: CharacterJson::from_character(&minus),
                    phi_plus: CharacterJson::from_character(&plus),
                    factors: factors_json(&fact),
                    agreement: true,
                    first_mismatch: None,
                },
                true,
            )
        }
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report)
            .map_err(|e| CoreError::Parse(format!("serialization failed: {e}")))?,
        Format::Table => {
            let mut lines = Vec::new();
            lines.push(format!(
                "character over {} at degree {}",
                family_tag(phi.family()),
                phi.truncation()
            ));
            let minus = report.phi_minus.to_character()?;
            let plus = report.phi_plus.to_character()?;
            character_table("phi_minus", &minus, &mut lines);
            character_table("phi_plus", &plus, &mut lines);
            lines.push(format!(
                "agreement: {}{}",
                report.agreement,
                report
                    .first_mismatch
                    .as_ref()
                    .map(|m| format!(" (first mismatch at {m})"))
                    .unwrap_or_default()
            ));
            lines.join("\n")
        }
    };
    emit(text, output.as_ref())?;
    Ok(agreement)
}

fn series_table(
    label: &str,
    elems: &[renorm_core::descent::DescentElement],
    lines: &mut Vec<String>,
) {
    lines.push(format!("{label}:"));
    for (i, e) in elems.iter().enumerate() {
        lines.push(format!("  {}: {}", i + 1, e));
    }
}

fn run_idempotents(
    degree: u32,
    series: SeriesChoice,
    output: Option<PathBuf>,
    format: Format,
) -> Result<(), CoreError> {
    let cap = degree_cap(8);
    if degree > cap || degree == 0 {
        return Err(CoreError::DegreeTooLarge { degree, cap });
    }
    let selected: Vec<(&str, Vec<renorm_core::descent::DescentElement>)> = match series {
        SeriesChoice::Left => vec![(
            "left Zassenhaus",
            zassenhaus(degree, Side::Left, FactorizationMode::Plain),
        )],
        SeriesChoice::Right => vec![(
            "right Zassenhaus",
            zassenhaus(degree, Side::Right, FactorizationMode::Plain),
        )],
        SeriesChoice::AccelLeft => vec![(
            "accelerated left Zassenhaus",
            zassenhaus(degree, Side::Left, FactorizationMode::Accelerated),
        )],
        SeriesChoice::AccelRight => vec![(
            "accelerated right Zassenhaus",
            zassenhaus(degree, Side::Right, FactorizationMode::Accelerated),
        )],
        SeriesChoice::Dynkin => vec![("Dynkin", dynkin(degree))],
        SeriesChoice::All => vec![
            (
                "left Zassenhaus",
                zassenhaus(degree, Side::Left, FactorizationMode::Plain),
            ),
            (
                "right Zassenhaus",
                zassenhaus(degree, Side::Right, FactorizationMode::Plain),
            ),
            (
                "accelerated left Zassenhaus",
                zassenhaus(degree, Side::Left, FactorizationMode::Accelerated),
            ),
            (
                "accelerated right Zassenhaus",
                zassenhaus(degree, Side::Right, FactorizationMode::Accelerated),
            ),
            ("Dynkin", dynkin(degree)),
        ],
    };
    let with_tables = matches!(series, SeriesChoice::All);
    let text = match format {
        Format::Json => {
            let mut doc: BTreeMap<String, serde_json::Value> = BTreeMap::new();
            for (label, elems) in &selected {
                let jsons: Vec<DescentElementJson> = elems
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        DescentElementJson::from_element(
                            e,
                            e.homogeneous_weight().unwrap_or(i as u32 + 1),
                        )
                    })
                    .collect();
                doc.insert(label.to_string(), serde_json::to_value(jsons).unwrap());
            }
            if with_tables {
                let tables = change_of_basis(degree)?;
                let dz: Vec<DescentElementJson> = tables
                    .dynkin_in_right_zassenhaus
                    .iter()
                    .map(|(n, coeffs)| {
                        DescentElementJson::from_word_coeffs(coeffs, *n, "right-zassenhaus-words")
                    })
                    .collect();
                doc.insert(
                    "dynkin in right-zassenhaus words".to_owned(),
                    serde_json::to_value(dz).unwrap(),
                );
                let zd: Vec<DescentElementJson> = tables
                    .zassenhaus_in_dynkin
                    .iter()
                    .map(|(n, coeffs)| {
                        DescentElementJson::from_word_coeffs(coeffs, *n, "dynkin-words")
                    })
                    .collect();
                doc.insert(
                    "left zassenhaus in dynkin words".to_owned(),
                    serde_json::to_value(zd).unwrap(),
                );
            }
            serde_json::to_string_pretty(&doc)
                .map_err(|e| CoreError::Parse(format!("serialization failed: {e}")))?
        }
        Format::Table => {
            let mut lines = Vec::new();
            for (label, elems) in &selected {
                series_table(label, elems, &mut lines);
            }
            if with_tables {
                let tables = change_of_basis(degree)?;
                lines.push("Dynkin in right-Zassenhaus words (universal coefficients):".to_owned());
                for (n, coeffs) in &tables.dynkin_in_right_zassenhaus {
                    let mut body = String::new();
                    for (i, (c, r)) in coeffs.iter().enumerate() {
                        let (negative, abs) = renorm_core::rational::signed_parts(r);
                        if i == 0 {
                            if negative {
                                body.push('-');
                            }
                        } else {
                            body.push_str(if negative { " - " } else { " + " });
                        }
                        body.push_str(&format!("{abs}·Zt{c}"));
                    }
                    lines.push(format!("  {n}: {body}"));
                }
            }
            lines.join("\n")
        }
    };
    emit(text, output.as_ref())
}

// Check lines go to stdout and are byte-identical for identical config and
// seed; timing is real and goes to stderr.
fn run_verify(suite: &str, degree: u32, seed: u64) -> Result<bool, CoreError> {
    let reports = run_suite(suite, degree, seed)?;
    let mut all_passed = true;
    for report in &reports {
        println!(
            "suite {}: {}",
            report.suite,
            if report.passed() { "PASS" } else { "FAIL" }
        );
        for check in &report.checks {
            println!(
                "  [{}] {} — {}",
                if check.passed { "ok" } else { "FAIL" },
                check.name,
                check.detail
            );
            all_passed &= check.passed;
        }
        eprintln!("suite {} completed in {} ms", report.suite, report.elapsed_ms);
    }
    Ok(all_passed)
}

fn run_beta(
    input: PathBuf,
    degree: Option<u32>,
    output: Option<PathBuf>,
    format: Format,
) -> Result<(), CoreError> {
    let phi = load_character(&input, degree)?;
    let components = bridge::beta(&phi)?;
    let counterterm = bridge::zassenhaus_counterterm(&phi)?;
    let text = match format {
        Format::Json => {
            let doc = serde_json::json!({
                "hopf": family_tag(phi.family()),
                "degree": phi.truncation(),
                "beta": components.iter().map(CharacterJson::from_inf_char).collect::<Vec<_>>(),
                "counterterm_components": counterterm.iter().map(CharacterJson::from_inf_char).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc)
                .map_err(|e| CoreError::Parse(format!("serialization failed: {e}")))?
        }
        Format::Table => {
            let mut lines = Vec::new();
            for (n, b) in components.iter().enumerate() {
                for f in b.as_linmap().basis() {
                    let v = b.value(&f);
                    if !v.is_zero_on_window() {
                        lines.push(format!("beta_{}({}) = {}", n + 1, f.code(), v));
                    }
                }
            }
            if lines.is_empty() {
                lines.push("beta = 0".to_owned());
            }
            lines.join("\n")
        }
    };
    emit(text, output.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Decompose {
            input,
            degree,
            method,
            output,
            format,
        } => match run_decompose(input, degree, method, output, format) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => {
                eprintln!("error: decomposition routes disagree");
                ExitCode::from(4)
            }
            Err(e) => fail(e),
        },
        Command::Idempotents {
            degree,
            series,
            output,
            format,
        } => match run_idempotents(degree, series, output, format) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Command::Verify {
            suite,
            degree,
            seed,
        } => match run_verify(&suite, degree, seed) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => fail(e),
        },
        Command::Beta {
            input,
            degree,
            output,
            format,
        } => match run_beta(input, degree, output, format) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
    }
}
