//! `waring`: ranks, decompositions, lower bounds and surveys from the command line.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 verification
//! failure, 3 resource bound exceeded.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use waring_core::apolarity::{self, ClaimReport, HilbertFunctionTable};
use waring_core::decompose::{decompose_form, least_variable_check, verify_decomposition};
use waring_core::forms::{parse_form, parse_general_form, MonomialIdeal};
use waring_core::rank::{self, generic_rank, DEFAULT_ENUMERATION_CAP};
use waring_core::{serial, Error, Rational};

#[derive(Parser)]
#[command(name = "waring", version, about = "Waring rank of sums of coprime monomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of a sum of pairwise coprime monomials, with a per-monomial breakdown.
    Rank {
        form: String,
        #[arg(long)]
        json: bool,
    },
    /// Minimal sum-of-powers decomposition, verified before it is printed.
    Decompose {
        form: String,
        #[arg(long, conflicts_with = "pretty")]
        json: bool,
        /// Human-readable output (the default).
        #[arg(long)]
        pretty: bool,
    },
    /// Catalecticant lower bound; accepts any homogeneous form.
    Bound {
        form: String,
        /// Largest catalecticant degree to try (default: the form's degree).
        #[arg(long)]
        tmax: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Checks a JSON decomposition (path, or `-` for stdin) against a form.
    Verify {
        form: String,
        decomposition: String,
        #[arg(long)]
        json: bool,
    },
    /// Maximal monomial rank against the generic rank.
    Survey(SurveyArgs),
    /// Hilbert functions of monomial quotients and the additivity identity.
    Hf {
        #[command(subcommand)]
        command: HfCommand,
    },
}

#[derive(Args)]
struct SurveyArgs {
    /// Number of variables.
    n: u32,
    /// Degree; omit when using `--range` or `--ratio`.
    d: Option<u32>,
    /// Inclusive degree range `A..B`.
    #[arg(long, conflicts_with_all = ["d", "ratio"])]
    range: Option<String>,
    /// Convergence table of the ratio to the generic rank.
    #[arg(long)]
    ratio: bool,
    /// Number of rows in the ratio table.
    #[arg(long, default_value_t = 50)]
    kmax: u32,
    /// Largest number of exponent vectors to enumerate per degree.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_enum: u128,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum HfCommand {
    /// Hilbert function of T/J for J generated by exponent vectors like `2,0`.
    Quotient {
        #[arg(required = true)]
        generators: Vec<String>,
        #[arg(long, default_value_t = 10)]
        tmax: u32,
        #[arg(long)]
        json: bool,
    },
    /// Checks the identity for blocks of exponents like `1,2 3`, laid out
    /// on consecutive variables.
    Claim {
        #[arg(required = true)]
        blocks: Vec<String>,
        #[arg(long)]
        tmax: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Checks the identity for the monomials of a coprime form.
    ClaimForm {
        form: String,
        #[arg(long)]
        tmax: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Checks the identity on random block configurations.
    ClaimRandom {
        #[arg(long, default_value_t = 50)]
        count: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A command outcome other than plain success.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceBound { .. } => 3,
            Error::InternalContradiction(_) => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<waring_core::forms::ParseError> for Failure {
    fn from(e: waring_core::forms::ParseError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<serial::SerialError> for Failure {
    fn from(e: serial::SerialError) -> Self {
        Failure::invalid(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Rank { form, json } => cmd_rank(&form, json),
        Command::Decompose { form, json, .. } => cmd_decompose(&form, json),
        Command::Bound { form, tmax, json } => cmd_bound(&form, tmax, json),
        Command::Verify {
            form,
            decomposition,
            json,
        } => cmd_verify(&form, &decomposition, json),
        Command::Survey(args) => cmd_survey(&args),
        Command::Hf { command } => cmd_hf(command),
    }
}

fn pretty_json(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("in-memory JSON"))
}

fn cmd_rank(text: &str, json: bool) -> Outcome {
    let form = parse_form(text)?;
    let total = rank::rank_coprime_sum(&form);
    let parts: Vec<(String, u64)> = if form.degree() == 1 {
        vec![(form.to_string(), 1)]
    } else {
        form.monomials()
            .iter()
            .map(|m| (m.to_string(), rank::rank_monomial(m)))
            .collect()
    };
    if json {
        let monomials: Vec<Value> = parts
            .iter()
            .map(|(m, r)| json!({ "monomial": m, "rank": r }))
            .collect();
        return Ok(pretty_json(&json!({
            "form": form.to_string(),
            "degree": form.degree(),
            "rank": total,
            "monomials": monomials,
        })));
    }
    let mut out = format!("{total}\n");
    let width = parts.iter().map(|(m, _)| m.len()).max().unwrap_or(0);
    for (m, r) in &parts {
        writeln!(out, "  {m:<width$}  {r}").unwrap();
    }
    Ok(out)
}

fn cmd_decompose(text: &str, json: bool) -> Outcome {
    let form = parse_form(text)?;
    let decomposition = decompose_form(&form)?;
    let report = verify_decomposition(&form, &decomposition);
    if !report.passed() {
        return Err(Failure::verification(format!(
            "refusing to print an unverified decomposition\n{report}"
        )));
    }
    let lv = least_variable_check(&form, &decomposition);
    if !lv.passed() {
        return Err(Failure::verification(
            "decomposition fails the least-variable check",
        ));
    }
    if json {
        return Ok(format!(
            "{}\n",
            serial::to_json_string(&serial::decomposition_to_json(&decomposition))
        ));
    }
    Ok(format!(
        "{form} =\n{decomposition}\n({} terms, verified)\n",
        decomposition.len()
    ))
}

fn cmd_bound(text: &str, tmax: Option<u32>, json: bool) -> Outcome {
    let form = parse_general_form(text)?;
    let t_max = tmax.unwrap_or(form.degree());
    let bound = apolarity::catalecticant_lower_bound(&form.to_polynomial(), t_max);
    if json {
        return Ok(pretty_json(&json!({
            "form": form.to_string(),
            "degree": form.degree(),
            "tmax": t_max.min(form.degree()),
            "bound": bound,
        })));
    }
    Ok(format!("{bound}\n"))
}

fn read_input(path: &str) -> Result<String, Failure> {
    let read = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    read.map_err(|e| Failure::invalid(format!("cannot read {path}: {e}")))
}

fn cmd_verify(text: &str, path: &str, json: bool) -> Outcome {
    let form = parse_form(text)?;
    let decomposition = serial::decomposition_from_str(&read_input(path)?)?;
    let report = verify_decomposition(&form, &decomposition);
    let rendered = if json {
        pretty_json(&json!({
            "passed": report.passed(),
            "degree_matches": report.degree_matches,
            "missing_variables": report.missing_variables.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "residual_terms": report.residual_terms,
            "dependent_pairs": report.dependent_pairs,
            "term_count": report.term_count,
            "expected_rank": report.expected_rank,
        }))
    } else {
        format!("{report}\n")
    };
    if report.passed() {
        Ok(format!("{rendered}{}", if json { "" } else { "PASS\n" }))
    } else {
        print!("{rendered}");
        Err(Failure::verification("decomposition does not verify"))
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::invalid(format!("range '{s}' must look like A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn decimal(r: &Rational) -> String {
    let num: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    format!("{:.4}", num / den)
}

fn render_table(header: &[&str], rows: &[Vec<String>], csv: bool) -> String {
    let mut out = String::new();
    if csv {
        writeln!(out, "{}", header.join(",")).unwrap();
        for row in rows {
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        return out;
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(header.to_vec())).unwrap();
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
    }
    out
}

fn cmd_survey(args: &SurveyArgs) -> Outcome {
    if args.ratio {
        return survey_ratio(args);
    }
    let (lo, hi) = match (&args.range, args.d) {
        (Some(r), _) => parse_range(r)?,
        (None, Some(d)) => (d, d),
        (None, None) => return Err(Failure::invalid("survey needs a degree, --range or --ratio")),
    };
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for d in lo..=hi {
        let survey = rank::survey_max_monomial_rank(args.n, d, args.max_enum)?;
        let generic = generic_rank(args.n, d);
        let ratio = Rational::new(survey.value.into(), generic.value.into());
        rows.push(vec![
            args.n.to_string(),
            d.to_string(),
            survey.value.to_string(),
            survey.witness.to_string(),
            format!("{}{}", generic.value, if generic.exceptional { "*" } else { "" }),
            ratio.to_string(),
            if survey.value > generic.value { "yes" } else { "no" }.to_string(),
        ]);
        records.push(json!({
            "n": args.n,
            "d": d,
            "max_monomial_rank": survey.value,
            "witness": survey.witness.to_string(),
            "generic_rank": generic.value,
            "generic_exceptional": generic.exceptional,
            "ratio": ratio.to_string(),
        }));
    }
    if args.json {
        return Ok(pretty_json(&Value::Array(records)));
    }
    let mut out = render_table(
        &["n", "d", "max", "witness", "generic", "ratio", "exceeds"],
        &rows,
        args.csv,
    );
    if !args.csv && rows.iter().any(|r| r[4].ends_with('*')) {
        out.push_str("* exceptional case: the true generic rank exceeds the formula\n");
    }
    Ok(out)
}

fn survey_ratio(args: &SurveyArgs) -> Outcome {
    let report = rank::asymptotic_ratio_report(args.n, args.kmax)?;
    if args.json {
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "k": r.k,
                    "d": r.d,
                    "monomial_rank": r.monomial_rank,
                    "generic_rank": r.generic_rank,
                    "ratio": r.ratio.to_string(),
                })
            })
            .collect();
        return Ok(pretty_json(&json!({
            "n": report.n,
            "limit": report.limit.to_string(),
            "rows": rows,
        })));
    }
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                r.d.to_string(),
                r.monomial_rank.to_string(),
                r.generic_rank.to_string(),
                r.ratio.to_string(),
                decimal(&r.ratio),
            ]
        })
        .collect();
    let table = render_table(&["k", "d", "monomial", "generic", "ratio", "approx"], &rows, args.csv);
    if args.csv {
        return Ok(table);
    }
    Ok(format!(
        "n = {}, limit {} ~ {}\n{table}",
        report.n,
        report.limit,
        decimal(&report.limit)
    ))
}

fn parse_vector(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Failure::invalid(format!("'{s}' is not a comma-separated list of exponents")))
        })
        .collect()
}

fn claim_output(report: &ClaimReport, json: bool) -> Outcome {
    let rendered = if json {
        pretty_json(&json!({
            "passed": report.passed(),
            "tmax": report.t_max,
            "intersection_sum": report.intersection_sum,
            "individual_sums": report.individual_sums,
            "corrected_sum": report.corrected_sum,
            "tails_vanish": report.tails_vanish,
        }))
    } else {
        let sums: Vec<String> = report.individual_sums.iter().map(ToString::to_string).collect();
        format!(
            "tmax {}\nintersection {}\nindividual {} (corrected {})\ntails vanish {}\n{}\n",
            report.t_max,
            report.intersection_sum,
            sums.join(" + "),
            report.corrected_sum,
            report.tails_vanish,
            if report.passed() { "PASS" } else { "FAIL" }
        )
    };
    if report.passed() {
        Ok(rendered)
    } else {
        print!("{rendered}");
        Err(Failure::verification("identity does not hold"))
    }
}

/// Random blocks: up to 3 blocks of up to 3 exponents in `1..=4`.
fn random_blocks(rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let r = rng.gen_range(1..=3);
    (0..r)
        .map(|_| {
            let size = rng.gen_range(1..=3);
            (0..size).map(|_| rng.gen_range(1..=4)).collect()
        })
        .collect()
}

fn cmd_hf(command: HfCommand) -> Outcome {
    match command {
        HfCommand::Quotient {
            generators,
            tmax,
            json,
        } => {
            let gens = generators
                .iter()
                .map(|g| parse_vector(g))
                .collect::<Result<Vec<_>, _>>()?;
            let n = gens[0].len();
            if gens.iter().any(|g| g.len() != n) {
                return Err(Failure::invalid("generators must all have the same length"));
            }
            let ideal = MonomialIdeal::new(n, gens);
            let table = HilbertFunctionTable::new(&ideal, tmax);
            if json {
                return Ok(pretty_json(&json!({
                    "values": table.values,
                    "total": table.total(),
                    "tail_vanishes": table.tail_vanishes(),
                })));
            }
            let mut out = String::new();
            for (t, v) in table.values.iter().enumerate() {
                writeln!(out, "{t}  {v}").unwrap();
            }
            writeln!(out, "total {}", table.total()).unwrap();
            Ok(out)
        }
        HfCommand::Claim { blocks, tmax, json } => {
            let blocks = blocks
                .iter()
                .map(|b| parse_vector(b))
                .collect::<Result<Vec<_>, _>>()?;
            if blocks.iter().flatten().any(|&a| a == 0) {
                return Err(Failure::invalid("block exponents must be positive"));
            }
            let report = apolarity::verify_claim_identity(&apolarity::claim_ideals(&blocks), tmax)?;
            claim_output(&report, json)
        }
        HfCommand::ClaimForm { form, tmax, json } => {
            let form = parse_form(&form)?;
            let report = apolarity::verify_claim_identity(&apolarity::claim_ideals_for_form(&form), tmax)?;
            claim_output(&report, json)
        }
        HfCommand::ClaimRandom { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = String::new();
            let mut failures = 0;
            for i in 0..count {
                let blocks = random_blocks(&mut rng);
                let report = apolarity::verify_claim_identity(&apolarity::claim_ideals(&blocks), None)?;
                let status = if report.passed() { "ok" } else { "FAIL" };
                if !report.passed() {
                    failures += 1;
                }
                writeln!(
                    out,
                    "{i:>3}  {blocks:?}  {} = {}  {status}",
                    report.intersection_sum, report.corrected_sum
                )
                .unwrap();
            }
            if failures > 0 {
                print!("{out}");
                return Err(Failure::verification(format!("{failures} of {count} configurations failed")));
            }
            writeln!(out, "{count} configurations passed").unwrap();
            Ok(out)
        }
    }
}
