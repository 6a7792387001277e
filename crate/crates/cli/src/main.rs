//! Command-line front end: parses cover files and parameters, dispatches to
//! the library and emits one machine-readable JSON report per invocation on
//! stdout, with a short human summary on stderr.
//!
//! Exit status: 0 on success, 1 when a verification suite finds a failure,
//! 2 on input errors.

mod coverfile;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use equichar_core::cover::{CharacterSpec, CoverDatum};
use equichar_core::intersection::{a_invariant, euler_delta, t_invariant, twisted_delta};
use equichar_core::modular::{norm_report, search_prime, ModularParams};
use equichar_core::resolvent::{resolvent_divisor, support_divisor, SheafSpec};
use equichar_core::verify::{
    b_sum_factorization_case, conjugate_pair_suite, power_sum_identity_suite, SuiteOutcome,
};
use equichar_core::Error;

use report::{bigint_json, divisor_json, rational_json, ring_json, verdict_json, Report};

#[derive(Parser)]
#[command(
    name = "equichar",
    version,
    about = "Exact invariants of tame cyclic covers of arithmetic surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolvent divisor coefficients and support sets for one character.
    Resolvent(ResolventArgs),
    /// T-invariants, Euler-characteristic deltas and a(phi) per character.
    Invariants(InvariantsArgs),
    /// Exact identity suites; exits 1 if any identity fails.
    Verify(VerifyArgs),
    /// The modular-curve pipeline: exponents, norm verdicts, prime search.
    Modular(ModularArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SheafArg {
    Structure,
    Canonical,
    CanonicalHalf,
    Custom,
}

impl From<SheafArg> for SheafSpec {
    fn from(s: SheafArg) -> Self {
        match s {
            SheafArg::Structure => SheafSpec::Structure,
            SheafArg::Canonical => SheafSpec::Canonical,
            SheafArg::CanonicalHalf => SheafSpec::CanonicalHalf,
            SheafArg::Custom => SheafSpec::Custom,
        }
    }
}

#[derive(Args)]
struct ResolventArgs {
    /// Cover description file (JSON).
    cover_file: PathBuf,
    #[arg(long, value_enum, default_value = "structure")]
    sheaf: SheafArg,
    /// Character as a power of the fixed generator.
    #[arg(long, conflicts_with = "raw_exponents")]
    character: Option<u64>,
    /// Character as raw local exponents, e.g. "y0=3,y1=0".
    #[arg(long)]
    raw_exponents: Option<String>,
}

#[derive(Args)]
struct InvariantsArgs {
    cover_file: PathBuf,
    #[arg(long, value_enum, default_value = "structure")]
    sheaf: SheafArg,
    /// Tabulate every non-trivial character chi^a, a in [1, n).
    #[arg(long, conflicts_with_all = ["character", "raw_exponents"])]
    all_characters: bool,
    #[arg(long, conflicts_with = "raw_exponents")]
    character: Option<u64>,
    #[arg(long)]
    raw_exponents: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check the s_i/Stickelberger identities over a prime range.
    #[arg(long = "lemma-6-3")]
    lemma_6_3: bool,
    /// Prime range A..B (inclusive) for --lemma-6-3.
    #[arg(long = "l-range", default_value = "5..199")]
    l_range: String,
    /// Check the conjugate-pair resolvent identities on random covers.
    #[arg(long = "corollary-3-8")]
    corollary_3_8: bool,
    /// Number of random cases for --corollary-3-8.
    #[arg(long, default_value_t = 1000)]
    random: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Check one b-sum factorization case: L S T U.
    #[arg(long = "eq-5-3", num_args = 4, value_names = ["L", "S", "T", "U"])]
    eq_5_3: Option<Vec<u64>>,
}

#[derive(Args)]
struct ModularArgs {
    /// Residue prime p = 1 mod 24 with l | p - 1.
    #[arg(long, required_unless_present = "search")]
    p: Option<u64>,
    /// Prime order l > 3 of the covering group.
    #[arg(long)]
    l: u64,
    /// Search for the smallest p whose norm images are all non-trivial.
    #[arg(long)]
    search: bool,
    /// Upper bound for the search.
    #[arg(long, default_value_t = 1_000_000)]
    limit: u64,
    /// Use the strict predicate of the l = 401 example verbatim (p != 1
    /// mod 5 and beta non-principal) instead of the class-number-aware one.
    #[arg(long = "strict-paper-predicate")]
    strict_paper_predicate: bool,
    /// Write the cover file for (p, l) to the given path ("-" for stdout)
    /// instead of running the pipeline.
    #[arg(long = "emit-cover")]
    emit_cover: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match cli.command {
        Command::Resolvent(args) => cmd_resolvent(args, started),
        Command::Invariants(args) => cmd_invariants(args, started),
        Command::Verify(args) => cmd_verify(args, started),
        Command::Modular(args) => cmd_modular(args, started),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_raw_exponents(text: &str) -> Result<CharacterSpec, String> {
    let mut map = BTreeMap::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (id, value) = part
            .split_once('=')
            .ok_or_else(|| format!("raw exponent entry '{part}' is not of the form id=value"))?;
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|e| format!("raw exponent entry '{part}': {e}"))?;
        map.insert(id.trim().to_string(), value);
    }
    if map.is_empty() {
        return Err("no raw exponents given".into());
    }
    Ok(CharacterSpec::Raw(map))
}

fn character_from_flags(
    character: Option<u64>,
    raw: Option<&String>,
) -> Result<CharacterSpec, String> {
    match (character, raw) {
        (Some(a), None) => Ok(CharacterSpec::Exponent(a)),
        (None, Some(text)) => parse_raw_exponents(text),
        (None, None) => Err("give a character with --character or --raw-exponents".into()),
        (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
    }
}

fn character_label(phi: &CharacterSpec) -> Value {
    match phi {
        CharacterSpec::Exponent(a) => json!({ "exponent": a }),
        CharacterSpec::Raw(map) => json!({ "raw": map }),
    }
}

fn cmd_resolvent(args: ResolventArgs, started: Instant) -> Result<ExitCode, String> {
    let cover = coverfile::load_cover(&args.cover_file)?;
    let sheaf: SheafSpec = args.sheaf.into();
    let phi = character_from_flags(args.character, args.raw_exponents.as_ref())?;
    let divisor = resolvent_divisor(&cover, &sheaf, &phi).map_err(|e| e.to_string())?;
    let support = support_divisor(&cover, &phi, false).map_err(|e| e.to_string())?;
    let strict = support_divisor(&cover, &phi, true).map_err(|e| e.to_string())?;
    let support_ids: Vec<&String> = support
        .iter()
        .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
        .map(|(id, _)| id)
        .collect();
    let strict_ids: Vec<&String> = strict
        .iter()
        .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
        .map(|(id, _)| id)
        .collect();

    for (id, v) in divisor.iter() {
        eprintln!("{id}: {v}");
    }

    let report = Report {
        command: "resolvent".into(),
        inputs: json!({
            "cover_file": args.cover_file.display().to_string(),
            "sheaf": sheaf.label(),
            "character": character_label(&phi),
        }),
        results: json!({
            "coefficients": divisor_json(&divisor),
            "support": support_ids,
            "strict_support": strict_ids,
        }),
        verdicts: None,
        timing_ms: started.elapsed().as_millis(),
    };
    report.emit();
    Ok(ExitCode::SUCCESS)
}

fn invariant_row(
    cover: &CoverDatum,
    sheaf: &SheafSpec,
    phi: &CharacterSpec,
    integrality_failures: &mut u64,
) -> Value {
    let t = t_invariant(cover, sheaf, phi);
    let a_inv = a_invariant(cover, phi);
    let mut row = serde_json::Map::new();
    row.insert("character".into(), character_label(phi));
    match t {
        Ok(t) => {
            row.insert("t_value".into(), rational_json(&t.value));
            row.insert("t_quadratic".into(), rational_json(&t.quadratic_part));
            row.insert("t_linear".into(), rational_json(&t.linear_part));
        }
        Err(e) => {
            row.insert("t_error".into(), json!(e.to_string()));
        }
    }
    match sheaf {
        SheafSpec::Custom => {
            row.insert("euler_delta".into(), Value::Null);
            row.insert("twisted_delta".into(), Value::Null);
        }
        _ => {
            match euler_delta(cover, sheaf, phi) {
                Ok(v) => {
                    row.insert("euler_delta".into(), bigint_json(&v));
                }
                Err(Error::NonIntegralDelta(msg)) => {
                    *integrality_failures += 1;
                    row.insert("euler_delta_error".into(), json!(msg));
                }
                Err(e) => {
                    row.insert("euler_delta_error".into(), json!(e.to_string()));
                }
            }
            match twisted_delta(cover, sheaf, phi) {
                Ok(v) => {
                    row.insert("twisted_delta".into(), bigint_json(&v));
                }
                Err(Error::NonIntegralDelta(msg)) => {
                    *integrality_failures += 1;
                    row.insert("twisted_delta_error".into(), json!(msg));
                }
                Err(e) => {
                    row.insert("twisted_delta_error".into(), json!(e.to_string()));
                }
            }
        }
    }
    match a_inv {
        Ok(v) => {
            row.insert("a_invariant".into(), bigint_json(&v));
        }
        Err(e) => {
            row.insert("a_invariant_error".into(), json!(e.to_string()));
        }
    }
    Value::Object(row)
}

fn cmd_invariants(args: InvariantsArgs, started: Instant) -> Result<ExitCode, String> {
    let cover = coverfile::load_cover(&args.cover_file)?;
    let sheaf: SheafSpec = args.sheaf.into();
    let characters: Vec<CharacterSpec> =
        if args.all_characters || (args.character.is_none() && args.raw_exponents.is_none()) {
            (1..cover.group_order)
                .map(CharacterSpec::Exponent)
                .collect()
        } else {
            vec![character_from_flags(
                args.character,
                args.raw_exponents.as_ref(),
            )?]
        };

    let mut integrality_failures = 0u64;
    let rows: Vec<Value> = characters
        .iter()
        .map(|phi| invariant_row(&cover, &sheaf, phi, &mut integrality_failures))
        .collect();

    eprintln!(
        "{} characters tabulated, {} integrality failures",
        rows.len(),
        integrality_failures
    );

    let report = Report {
        command: "invariants".into(),
        inputs: json!({
            "cover_file": args.cover_file.display().to_string(),
            "sheaf": sheaf.label(),
            "all_characters": args.all_characters,
        }),
        results: json!({
            "rows": rows,
            "integrality_failures": integrality_failures,
        }),
        verdicts: None,
        timing_ms: started.elapsed().as_millis(),
    };
    report.emit();
    if integrality_failures > 0 {
        // the input data does not describe a tame cover
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_range(text: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("range '{text}' is not of the form A..B"))?;
    let lo: u64 = lo.trim().parse().map_err(|e| format!("range: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("range: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn suite_json(outcome: &SuiteOutcome) -> Value {
    json!({
        "suite": outcome.name,
        "cases": outcome.cases,
        "failures": outcome.failures,
        "passed": outcome.passed(),
    })
}

fn cmd_verify(args: VerifyArgs, started: Instant) -> Result<ExitCode, String> {
    let selected = [args.lemma_6_3, args.corollary_3_8, args.eq_5_3.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if selected != 1 {
        return Err("select exactly one of --lemma-6-3, --corollary-3-8, --eq-5-3".into());
    }

    let (outcome, inputs) = if args.lemma_6_3 {
        let (lo, hi) = parse_range(&args.l_range)?;
        (
            power_sum_identity_suite(lo, hi + 1),
            json!({ "suite": "lemma-6-3", "l_range": [lo, hi] }),
        )
    } else if args.corollary_3_8 {
        (
            conjugate_pair_suite(args.random, args.seed),
            json!({ "suite": "corollary-3-8", "random": args.random, "seed": args.seed }),
        )
    } else {
        let v = args.eq_5_3.as_ref().expect("checked above");
        let (l, s, t, u) = (v[0], v[1] as u32, v[2] as u32, v[3]);
        (
            b_sum_factorization_case(l, s, t, u),
            json!({ "suite": "eq-5-3", "l": l, "s": s, "t": t, "u": u }),
        )
    };

    eprintln!(
        "{}: {} cases, {}",
        outcome.name,
        outcome.cases,
        if outcome.passed() {
            "all pass"
        } else {
            "FAILURES"
        }
    );

    let passed = outcome.passed();
    let report = Report {
        command: "verify".into(),
        inputs,
        results: suite_json(&outcome),
        verdicts: Some(json!({ "passed": passed })),
        timing_ms: started.elapsed().as_millis(),
    };
    report.emit();
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_modular(args: ModularArgs, started: Instant) -> Result<ExitCode, String> {
    if args.search {
        let outcome = search_prime(args.l, args.limit, args.strict_paper_predicate)
            .map_err(|e| e.to_string())?;
        match outcome.found {
            Some(p) => eprintln!(
                "smallest p: {p} ({} candidates tested)",
                outcome.candidates_tested
            ),
            None => eprintln!(
                "no prime below {} ({} candidates tested)",
                outcome.limit, outcome.candidates_tested
            ),
        }
        let report = Report {
            command: "modular-search".into(),
            inputs: json!({
                "l": outcome.l,
                "limit": outcome.limit,
                "strict_paper_predicate": outcome.strict,
            }),
            results: json!({
                "found": outcome.found,
                "candidates_tested": outcome.candidates_tested,
            }),
            verdicts: None,
            timing_ms: started.elapsed().as_millis(),
        };
        report.emit();
        return Ok(ExitCode::SUCCESS);
    }

    let p = args.p.expect("clap requires --p without --search");
    let mp = ModularParams::new(p, args.l).map_err(|e| e.to_string())?;

    if let Some(target) = &args.emit_cover {
        let file = coverfile::modular_cover_file(&mp)?;
        let text = serde_json::to_string_pretty(&file).expect("cover file serializes");
        if target == "-" {
            println!("{text}");
        } else {
            std::fs::write(target, text + "\n").map_err(|e| format!("{target}: {e}"))?;
            eprintln!("cover file written to {target}");
        }
        return Ok(ExitCode::SUCCESS);
    }

    let report_data = norm_report(&mp).map_err(|e| e.to_string())?;
    let ex = &report_data.exponents;

    let norm_value = match &report_data.norm {
        Some(n) => {
            eprintln!(
                "wide class number {}; beta {} (order {}); verdicts: V {:?}, omega^1/2 {:?}, O {:?}",
                n.class_group.wide_class_number,
                if n.beta_principal { "principal" } else { "non-principal" },
                n.beta_order,
                report_data.verdict_v,
                report_data.verdict_half,
                report_data.verdict_structure,
            );
            json!({
                "class_group": {
                    "l": n.class_group.l,
                    "narrow_class_number": n.class_group.narrow_class_number,
                    "wide_class_number": n.class_group.wide_class_number,
                    "fundamental_unit_norm": n.class_group.fundamental_unit_norm,
                    "cf_period": n.class_group.cf_period,
                },
                "beta": {
                    "form": [n.beta.a.to_string(), n.beta.b.to_string(), n.beta.c.to_string()],
                    "principal": n.beta_principal,
                    "order": n.beta_order,
                },
                "t1": bigint_json(&n.t1),
                "t2": bigint_json(&n.t2),
                "exponent_v": bigint_json(&n.exponent_v),
                "exponent_half": bigint_json(&n.exponent_half),
                "exponent_structure": bigint_json(&n.exponent_structure),
                "routes_agree": n.routes_agree,
            })
        }
        None => {
            eprintln!("l = 3 mod 4: quadratic subfield imaginary, norm test inconclusive");
            Value::Null
        }
    };

    let report = Report {
        command: "modular".into(),
        inputs: json!({ "p": mp.p, "l": mp.l }),
        results: json!({
            "exponents": {
                "v_base_p_pbar": ring_json(&ex.v_simplified),
                "half_base_p_pbar": ring_json(&ex.half_simplified),
                "structure_base_p_pbar": ring_json(&ex.structure_simplified),
                "v_raw_base_p": ring_json(&ex.v_raw),
                "v_closed_base_p": ring_json(&ex.v_closed),
                "raw_matches_closed": ex.raw_matches_closed,
                "structure_alternate_base_p": ring_json(&ex.structure_alternate),
            },
            "norm": norm_value,
        }),
        verdicts: Some(json!({
            "v": verdict_json(report_data.verdict_v),
            "half_canonical": verdict_json(report_data.verdict_half),
            "structure": verdict_json(report_data.verdict_structure),
        })),
        timing_ms: started.elapsed().as_millis(),
    };
    report.emit();
    Ok(ExitCode::SUCCESS)
}
