//! `lusztig`: cone matrices, reduced words, membership tests and min-plus
//! tropicalization from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lusztig_cones::cartan::{CartanMatrix, WeightVec};
use lusztig_cones::conemat::{lowest_string, IntMatrix, WordMatrices};
use lusztig_cones::tropical::{tropicalize, SubtractionFreeExpr};
use lusztig_cones::verify::{default_box_radius, verify_word, ConeReport};
use lusztig_cones::weyl::{enumerate_reduced_words, sample_reduced_words, ReducedWord};

#[derive(Parser)]
#[command(
    name = "lusztig",
    about = "Exact matrix calculus of Lusztig cones for reduced words of the longest Weyl element",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print cone matrices of a reduced word
    Matrices(MatricesArgs),
    /// Run the identity and cone checks over one or many words
    Verify(VerifyArgs),
    /// Decide Lusztig-cone membership of a point, two independent ways
    Member(MemberArgs),
    /// Enumerate reduced words for the longest element
    Words(WordsArgs),
    /// Tropicalize and evaluate subtraction-free rational expressions
    Trop(TropArgs),
    /// String of the lowest-weight vector attached to a dominant weight
    StringLowest(StringLowestArgs),
}

#[derive(Args)]
struct CartanArgs {
    /// Cartan type label, e.g. A3 or g2
    #[arg(long, value_name = "LABEL")]
    cartan: Option<String>,
    /// Explicit Cartan matrix as semicolon-separated rows, e.g. "2,-1;-1,2"
    #[arg(long, value_name = "ROWS")]
    cartan_matrix: Option<String>,
}

impl CartanArgs {
    fn resolve(&self) -> Result<CartanMatrix, String> {
        match (&self.cartan, &self.cartan_matrix) {
            (Some(label), None) => CartanMatrix::from_label(label).map_err(|e| e.to_string()),
            (None, Some(rows)) => CartanMatrix::from_row_text(rows).map_err(|e| e.to_string()),
            (Some(_), Some(_)) => {
                Err("provide only one of --cartan and --cartan-matrix".to_string())
            }
            (None, None) => Err("one of --cartan or --cartan-matrix is required".to_string()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct MatricesArgs {
    #[command(flatten)]
    cartan: CartanArgs,
    /// Reduced word as comma-separated 1-based letters
    #[arg(long, value_name = "LETTERS")]
    word: String,
    /// Comma-separated subset of V,W,S,T,C,P,X,Ltilde,L
    #[arg(long, value_name = "NAMES", default_value = "V,W,S,T,C,P,X,Ltilde,L")]
    which: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    cartan: CartanArgs,
    /// Verify a single word
    #[arg(long, value_name = "LETTERS")]
    word: Option<String>,
    /// Verify every reduced word, in lexicographic order
    #[arg(long)]
    all: bool,
    /// Truncate the enumeration after this many words
    #[arg(long, value_name = "COUNT")]
    limit: Option<usize>,
    /// Verify this many distinct seeded-random words
    #[arg(long, value_name = "COUNT")]
    sample: Option<usize>,
    /// Seed for --sample
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
    /// Box radius r for the membership comparison on [-r, r+2]^N
    #[arg(long = "box", value_name = "RADIUS")]
    box_radius: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct MemberArgs {
    #[command(flatten)]
    cartan: CartanArgs,
    #[arg(long, value_name = "LETTERS")]
    word: String,
    /// Candidate point, comma-separated integers of length N
    #[arg(long, value_name = "COORDS")]
    point: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct WordsArgs {
    #[command(flatten)]
    cartan: CartanArgs,
    /// Print the words one per line (default prints only the count)
    #[arg(long)]
    list: bool,
    #[arg(long, value_name = "COUNT")]
    limit: Option<usize>,
}

#[derive(Args)]
struct TropArgs {
    #[command(subcommand)]
    command: TropCommand,
}

#[derive(Subcommand)]
enum TropCommand {
    /// Evaluate the tropicalization at an integer point
    Eval(TropEvalArgs),
    /// Print the numerator/denominator supports of the tropicalization
    Form(TropFormArgs),
}

#[derive(Args)]
struct TropEvalArgs {
    /// Ordered variable names, comma-separated
    #[arg(long, value_name = "NAMES")]
    vars: String,
    /// Subtraction-free expression over the variables
    #[arg(long, value_name = "EXPR")]
    expr: String,
    /// Evaluation point, comma-separated integers
    #[arg(long, value_name = "COORDS")]
    point: String,
}

#[derive(Args)]
struct TropFormArgs {
    #[arg(long, value_name = "NAMES")]
    vars: String,
    #[arg(long, value_name = "EXPR")]
    expr: String,
}

#[derive(Args)]
struct StringLowestArgs {
    #[command(flatten)]
    cartan: CartanArgs,
    #[arg(long, value_name = "LETTERS")]
    word: String,
    /// Dominant weight in fundamental-weight coordinates
    #[arg(long, value_name = "COORDS")]
    weight: String,
}

/// Prints one line, exiting quietly if the downstream consumer closed the
/// pipe.
fn emit(text: impl std::fmt::Display) {
    let mut stdout = io::stdout().lock();
    if writeln!(stdout, "{text}").is_err() {
        std::process::exit(0);
    }
}

fn parse_letters(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| format!("cannot parse letter {:?}", part.trim()))
        })
        .collect()
}

fn parse_ints(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| format!("cannot parse integer {:?}", part.trim()))
        })
        .collect()
}

fn resolve_word(cartan: &CartanMatrix, letters_text: &str) -> Result<ReducedWord, String> {
    let letters = parse_letters(letters_text)?;
    ReducedWord::new(cartan, &letters).map_err(|e| e.to_string())
}

fn join_ints(values: &[i64]) -> String {
    values.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

const MATRIX_NAMES: [&str; 9] = ["V", "W", "S", "T", "C", "P", "X", "Ltilde", "L"];

/// Requested subset of the matrices, serialized in the fixed documented
/// order V, W, S, T, C, P, X, Ltilde, L.
#[derive(Serialize)]
struct MatrixSubset<'a> {
    #[serde(rename = "V", skip_serializing_if = "Option::is_none")]
    v: Option<&'a IntMatrix>,
    #[serde(rename = "W", skip_serializing_if = "Option::is_none")]
    w: Option<&'a IntMatrix>,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    s: Option<&'a IntMatrix>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    t: Option<&'a IntMatrix>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    c: Option<&'a IntMatrix>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    p: Option<&'a IntMatrix>,
    #[serde(rename = "X", skip_serializing_if = "Option::is_none")]
    x: Option<&'a IntMatrix>,
    #[serde(rename = "Ltilde", skip_serializing_if = "Option::is_none")]
    l_tilde: Option<&'a IntMatrix>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    l: Option<&'a IntMatrix>,
}

#[derive(Serialize)]
struct MatricesOutput<'a> {
    cartan: &'a [Vec<i64>],
    word: &'a [usize],
    matrices: MatrixSubset<'a>,
}

fn cmd_matrices(args: &MatricesArgs) -> Result<u8, String> {
    let cartan = args.cartan.resolve()?;
    let word = resolve_word(&cartan, &args.word)?;
    let requested: Vec<String> =
        args.which.split(',').map(|name| name.trim().to_string()).collect();
    for name in &requested {
        if !MATRIX_NAMES.contains(&name.as_str()) {
            return Err(format!(
                "unknown matrix {name:?}; choose from {}",
                MATRIX_NAMES.join(",")
            ));
        }
    }
    let wm = WordMatrices::compute(&word).map_err(|e| e.to_string())?;
    match args.format {
        Format::Text => {
            let sections: Vec<String> = requested
                .iter()
                .map(|name| format!("{name}\n{}", wm.by_name(name).expect("validated name")))
                .collect();
            emit(sections.join("\n\n"));
        }
        Format::Json => {
            let pick = |name: &str| -> Option<&IntMatrix> {
                requested.iter().any(|r| r == name).then(|| wm.by_name(name).unwrap())
            };
            let output = MatricesOutput {
                cartan: cartan.rows(),
                word: word.letters(),
                matrices: MatrixSubset {
                    v: pick("V"),
                    w: pick("W"),
                    s: pick("S"),
                    t: pick("T"),
                    c: pick("C"),
                    p: pick("P"),
                    x: pick("X"),
                    l_tilde: pick("Ltilde"),
                    l: pick("L"),
                },
            };
            emit(serde_json::to_string(&output).expect("serializable"));
        }
    }
    Ok(0)
}

fn verify_targets(args: &VerifyArgs, cartan: &CartanMatrix) -> Result<Vec<ReducedWord>, String> {
    let selections =
        usize::from(args.word.is_some()) + usize::from(args.all) + usize::from(args.sample.is_some());
    if selections != 1 {
        return Err("choose exactly one of --word, --all, --sample".to_string());
    }
    if let Some(letters) = &args.word {
        return Ok(vec![resolve_word(cartan, letters)?]);
    }
    if args.all {
        let iter = enumerate_reduced_words(cartan).map_err(|e| e.to_string())?;
        return Ok(match args.limit {
            Some(limit) => iter.take(limit).collect(),
            None => iter.collect(),
        });
    }
    let count = args.sample.expect("selection checked");
    let seed = args.seed.ok_or_else(|| "--sample requires --seed".to_string())?;
    sample_reduced_words(cartan, count, seed).map_err(|e| e.to_string())
}

fn render_verify_text(report: &ConeReport) -> String {
    let word = report.word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
    if report.all_pass {
        format!("word {word}: all checks passed")
    } else {
        let failed: Vec<String> = report
            .checks
            .all()
            .iter()
            .filter(|(_, check)| !check.pass)
            .map(|(name, check)| match &check.witness {
                Some(witness) => format!("{name} ({})", witness.description),
                None => (*name).to_string(),
            })
            .collect();
        format!("word {word}: FAILED {}", failed.join("; "))
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, String> {
    let cartan = args.cartan.resolve()?;
    let words = verify_targets(args, &cartan)?;
    let mut all_pass = true;
    let mut passed = 0usize;
    for word in &words {
        let radius = args.box_radius.unwrap_or_else(|| default_box_radius(word.len()));
        let report = verify_word(word, radius);
        if report.all_pass {
            passed += 1;
        } else {
            all_pass = false;
        }
        match args.format {
            Format::Text => emit(render_verify_text(&report)),
            Format::Json => {
                emit(serde_json::to_string(&report).expect("serializable"))
            }
        }
    }
    if args.format == Format::Text {
        emit(format!("verified {} words: {} passed, {} failed", words.len(), passed, words.len() - passed));
    }
    Ok(if all_pass { 0 } else { 1 })
}

#[derive(Serialize)]
struct MemberOutput<'a> {
    cartan: &'a [Vec<i64>],
    word: &'a [usize],
    point: &'a [i64],
    definition_member: bool,
    matrix_member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<&'a [i64]>,
}

fn cmd_member(args: &MemberArgs) -> Result<u8, String> {
    let cartan = args.cartan.resolve()?;
    let word = resolve_word(&cartan, &args.word)?;
    let point = parse_ints(&args.point)?;
    let wm = WordMatrices::compute(&word).map_err(|e| e.to_string())?;
    let by_def = wm.member_def(&point).map_err(|e| e.to_string())?;
    let (by_l, coefficients) = wm.member_l(&point).map_err(|e| e.to_string())?;
    let verdict = |inside: bool| if inside { "inside" } else { "outside" };
    match args.format {
        Format::Text => {
            emit(format!("definition: {}", verdict(by_def)));
            emit(format!("matrix: {}", verdict(by_l)));
            if by_l {
                emit(format!("coefficients: {}", join_ints(&coefficients)));
            }
        }
        Format::Json => {
            let output = MemberOutput {
                cartan: cartan.rows(),
                word: word.letters(),
                point: &point,
                definition_member: by_def,
                matrix_member: by_l,
                coefficients: by_l.then_some(coefficients.as_slice()),
            };
            emit(serde_json::to_string(&output).expect("serializable"));
        }
    }
    Ok(0)
}

fn cmd_words(args: &WordsArgs) -> Result<u8, String> {
    let cartan = args.cartan.resolve()?;
    let iter = enumerate_reduced_words(&cartan).map_err(|e| e.to_string())?;
    let words: Vec<ReducedWord> = match args.limit {
        Some(limit) => iter.take(limit).collect(),
        None => iter.collect(),
    };
    if args.list {
        for word in &words {
            emit(word);
        }
    } else {
        emit(words.len());
    }
    Ok(0)
}

fn split_vars(text: &str) -> Vec<String> {
    text.split(',').map(|v| v.trim().to_string()).collect()
}

fn cmd_trop(args: &TropArgs) -> Result<u8, String> {
    match &args.command {
        TropCommand::Eval(eval) => {
            let vars = split_vars(&eval.vars);
            let expr =
                SubtractionFreeExpr::parse(&eval.expr, &vars).map_err(|e| e.to_string())?;
            let point = parse_ints(&eval.point)?;
            let value = tropicalize(&expr).eval(&point).map_err(|e| e.to_string())?;
            emit(value);
        }
        TropCommand::Form(form) => {
            let vars = split_vars(&form.vars);
            let expr =
                SubtractionFreeExpr::parse(&form.expr, &vars).map_err(|e| e.to_string())?;
            let tropical = tropicalize(&expr);
            #[derive(Serialize)]
            struct FormOutput<'a> {
                vars: &'a [String],
                num: Vec<&'a Vec<i64>>,
                den: Vec<&'a Vec<i64>>,
            }
            let output = FormOutput {
                vars: &vars,
                num: tropical.num_exponents().iter().collect(),
                den: tropical.den_exponents().iter().collect(),
            };
            emit(serde_json::to_string(&output).expect("serializable"));
        }
    }
    Ok(0)
}

fn cmd_string_lowest(args: &StringLowestArgs) -> Result<u8, String> {
    let cartan = args.cartan.resolve()?;
    let word = resolve_word(&cartan, &args.word)?;
    let coords = parse_ints(&args.weight)?;
    let lambda = WeightVec(coords);
    let string = lowest_string(&word, &lambda).map_err(|e| e.to_string())?;
    emit(join_ints(&string));
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, String> {
    match &cli.command {
        Command::Matrices(args) => cmd_matrices(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Member(args) => cmd_member(args),
        Command::Words(args) => cmd_words(args),
        Command::Trop(args) => cmd_trop(args),
        Command::StringLowest(args) => cmd_string_lowest(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
