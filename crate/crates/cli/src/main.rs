use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fruit_core::curves::{
    audit_alpha, curve_from_alpha, integral_point_search, torsion_candidates_over_q,
};
use fruit_core::density::{density_report, ResidueClassQuery, DEFAULT_SEGMENT_BITS};
use fruit_core::obstruction::{decide, FruitParams, Verdict};
use fruit_core::quad_field::{split_type, t_k_nonempty, Field, PrimeAbove2, QuadInt};
use fruit_core::search::{enumerate_solutions, SearchBox, DEFAULT_COST_CAP};
use fruit_core::Error;

const MIN_COST_CAP: u128 = 10_000;
const ROOT_BITS: u32 = 32;

#[derive(Parser, Debug)]
#[command(
    name = "fruit",
    version,
    about = "Obstructions, searches, densities and curve audits for a·x^d − y² − z² + xyz − c = 0"
)]
struct Cli {
    /// Largest number of tuples a box search may visit.
    #[arg(long, global = true, env = "FRUIT_COST_CAP", default_value_t = DEFAULT_COST_CAP)]
    cost_cap: u128,

    /// log₂ of the sieve segment length.
    #[arg(long, global = true, default_value_t = DEFAULT_SEGMENT_BITS)]
    segment_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral basis and splitting of 2 in Q(√t).
    Field(FieldArgs),
    /// Decide the local obstruction for solutions with 2 | x.
    Obstruct(ObstructArgs),
    /// Exhaustively search a coordinate box for solutions.
    Search(SearchArgs),
    /// Square-free density of a residue class.
    Density(DensityArgs),
    /// Audit the curve E_α : y² − αxy = x³ − (α² + 5).
    Curve(CurveArgs),
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Square-free t, or Q.
    #[arg(long = "t", visible_alias = "field", allow_hyphen_values = true)]
    t: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ObstructArgs {
    #[arg(long, allow_hyphen_values = true)]
    field: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, allow_hyphen_values = true)]
    field: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// The constant c; alternatively derive it from --b and --r.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["b", "r"])]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "r")]
    b: Option<String>,
    #[arg(long, requires = "b")]
    r: Option<u32>,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    bound: u32,
    #[arg(long)]
    even_x: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[arg(long)]
    residue: u64,
    #[arg(long)]
    modulus: u64,
    #[arg(long)]
    limit: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long, allow_hyphen_values = true)]
    field: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Search integral points with x in [−B, B] per coordinate.
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long)]
    even_x: bool,
    /// Enumerate Nagell–Lutz torsion candidates (K = Q only).
    #[arg(long)]
    torsion: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputMode {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy)]
struct GlobalConfig {
    cost_cap: u128,
    sieve_segment_bits: u32,
    output_mode: OutputMode,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            other => Failure::Core(other),
        }
    }
}

type Outcome = Result<Output, Failure>;

/// What a subcommand prints: a JSON document or human-readable lines.
struct Output {
    json: Value,
    human: Vec<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let json = match &cli.command {
        Command::Field(a) => a.json,
        Command::Obstruct(a) => a.json,
        Command::Search(a) => a.json,
        Command::Density(a) => a.json,
        Command::Curve(a) => a.json,
    };
    let config = GlobalConfig {
        cost_cap: cli.cost_cap,
        sieve_segment_bits: cli.segment_bits,
        output_mode: if json { OutputMode::Json } else { OutputMode::Human },
    };
    match run(&cli.command, config) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let written = match config.output_mode {
                OutputMode::Json => writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serialisable")
                ),
                OutputMode::Human => out.human.iter().try_for_each(|l| writeln!(stdout, "{l}")),
            };
            if written.is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::CostCap { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: &Command, config: GlobalConfig) -> Outcome {
    if config.cost_cap < MIN_COST_CAP {
        return Err(Failure::Usage(format!(
            "cost cap must be at least {MIN_COST_CAP}"
        )));
    }
    match command {
        Command::Field(args) => field_cmd(args),
        Command::Obstruct(args) => obstruct_cmd(args),
        Command::Search(args) => search_cmd(args, config),
        Command::Density(args) => density_cmd(args, config),
        Command::Curve(args) => curve_cmd(args, config),
    }
}

fn parse_field(s: &str) -> Result<Field, Failure> {
    s.parse::<Field>().map_err(Failure::from)
}

fn parse_elem(field: Field, s: &str) -> Result<QuadInt, Failure> {
    QuadInt::parse(field, s).map_err(Failure::from)
}

fn field_cmd(args: &FieldArgs) -> Outcome {
    let field = parse_field(&args.t)?;
    let prime = PrimeAbove2::new(field, ROOT_BITS);
    let (t, basis, disc) = match field {
        Field::Rational => (None, None, None),
        Field::Quadratic(k) => (
            Some(k.t().to_string()),
            Some(k.basis_kind()),
            Some(k.field_discriminant().to_string()),
        ),
    };
    let json = json!({
        "field": field,
        "t": t,
        "basis": basis,
        "field_discriminant": disc,
        "split_type": split_type(&field),
        "tk_nonempty": t_k_nonempty(&field),
        "canonical_root": prime.canonical_root().map(|s| s.to_string()),
        "root_precision": prime.canonical_root().map(|_| prime.precision().to_string()),
    });
    let mut human = vec![format!("field: {field}")];
    if let Field::Quadratic(k) = field {
        human.push(format!("basis: {:?}", k.basis_kind()));
        human.push(format!("field discriminant: {}", k.field_discriminant()));
    }
    human.push(format!("2 is: {:?}", split_type(&field)));
    human.push(format!("T_K nonempty: {}", t_k_nonempty(&field)));
    if let Some(s) = prime.canonical_root() {
        human.push(format!(
            "canonical root of t mod 2^{}: {s}",
            prime.precision()
        ));
    }
    Ok(Output { json, human })
}

fn obstruct_cmd(args: &ObstructArgs) -> Outcome {
    let field = parse_field(&args.field)?;
    let params = FruitParams::new(
        parse_elem(field, &args.a)?,
        parse_elem(field, &args.b)?,
        args.r,
        args.d,
    )?;
    let report = decide(field, &params)?;
    let json = serde_json::to_value(&report).expect("serialisable");
    let h = report.hypothesis;
    let mut human = vec![
        format!("field: {}", report.field),
        format!(
            "a = {}, b = {}, r = {}, d = {}, c = 2^d·b − 3^r = {}",
            report.a, report.b, report.r, report.d, report.c
        ),
        format!("T_K nonempty: {}", report.tk_nonempty),
    ];
    if let (Some(a4), Some(c4)) = (report.a_mod4, report.c_residue_mod4) {
        human.push(format!("a mod 𝔓² = {a4}, c mod 𝔓² = {c4}"));
    }
    human.push(format!("locally obstructed: {}", report.locally_obstructed));
    human.push(format!(
        "stated hypotheses (d odd, r ≥ 2): {}; hypotheses used by the argument (d ≥ 2, r odd): {}",
        h.statement_satisfied, h.proof_effective
    ));
    if h.mismatch() {
        human.push(
            "warning: the stated and the argument's hypotheses disagree for these r, d".into(),
        );
    }
    human.push(format!(
        "verdict: {}",
        match report.verdict {
            Verdict::NoSolutionWithEvenX => "NoSolutionWithEvenX",
            Verdict::Inconclusive => "Inconclusive",
        }
    ));
    Ok(Output { json, human })
}

fn search_cmd(args: &SearchArgs, config: GlobalConfig) -> Outcome {
    let field = parse_field(&args.field)?;
    let a = parse_elem(field, &args.a)?;
    let c = match (&args.c, &args.b, args.r) {
        (Some(c), None, None) => parse_elem(field, c)?,
        (None, Some(b), Some(r)) => {
            FruitParams::new(a.clone(), parse_elem(field, b)?, r, args.d)?
                .c()
                .clone()
        }
        _ => return Err(Failure::Usage("give either --c or both --b and --r".into())),
    };
    let witnesses = enumerate_solutions(
        field,
        &a,
        &c,
        args.d,
        SearchBox::new(args.bound)?,
        args.even_x,
        config.cost_cap,
    )?;
    if config.output_mode == OutputMode::Human {
        eprintln!("{} solution(s), c = {c}", witnesses.len());
    }
    Ok(Output {
        json: serde_json::to_value(&witnesses).expect("serialisable"),
        human: witnesses.iter().map(ToString::to_string).collect(),
    })
}

fn density_cmd(args: &DensityArgs, config: GlobalConfig) -> Outcome {
    let query = ResidueClassQuery::new(args.residue, args.modulus, args.limit)?;
    let report = density_report(&query, config.sieve_segment_bits)?;
    let view = report.to_json_view();
    let json = serde_json::to_value(&view).expect("serialisable");
    let none = || "n/a (gcd(r, N) not square-free)".to_string();
    let human = vec![
        format!("class: t ≡ {} (mod {}), 2 ≤ t ≤ {}", view.r, view.modulus, view.limit),
        format!("square-free in class: {}", view.count_class),
        format!("square-free total: {}", view.count_squarefree),
        format!(
            "relative density: {} ≈ {}",
            view.rel_empirical, view.rel_empirical_decimal
        ),
        format!(
            "predicted relative density: {}",
            view.rel_predicted.clone().unwrap_or_else(none)
        ),
        format!(
            "absolute density: {} ≈ {}",
            view.abs_empirical, view.abs_empirical_decimal
        ),
        format!(
            "predicted absolute density: ({})/π² ≈ {}",
            view.abs_predicted_times_pi2.clone().unwrap_or_else(none),
            view.abs_predicted_decimal.clone().unwrap_or_else(none)
        ),
    ];
    Ok(Output { json, human })
}

fn curve_cmd(args: &CurveArgs, config: GlobalConfig) -> Outcome {
    let field = parse_field(&args.field)?;
    let alpha = parse_elem(field, &args.alpha)?;
    let curve = curve_from_alpha(&alpha);
    let audit = audit_alpha(&alpha);
    if (args.bound.is_some() || args.torsion) && !audit.valid {
        return Err(Failure::Core(Error::Domain(format!(
            "Δ(E_α) = 0 at α = {alpha}; the curve is singular"
        ))));
    }
    let points = match args.bound {
        Some(b) => integral_point_search(&curve, b, args.even_x, config.cost_cap)?,
        None => Vec::new(),
    };
    let torsion = if args.torsion {
        torsion_candidates_over_q(&curve)?
    } else {
        Vec::new()
    };

    let mut json = serde_json::to_value(&curve).expect("serialisable");
    let obj = json.as_object_mut().expect("struct");
    let mut ordered = serde_json::Map::new();
    ordered.insert("field".into(), json!(field));
    ordered.insert("alpha".into(), json!(alpha));
    ordered.append(obj);
    ordered.insert("valid".into(), json!(audit.valid));
    ordered.insert("paper_poly_at_alpha".into(), json!(audit.printed_poly_at_alpha));
    ordered.insert(
        "discriminant_matches_printed".into(),
        json!(audit.discriminant_matches_printed),
    );
    ordered.insert("points".into(), json!(points));
    ordered.insert("torsion_candidates".into(), json!(torsion));

    let mut human = vec![
        format!("E_α over {field}, α = {alpha}: y² + a1·xy = x³ + a6"),
        format!("a1 = {}, a6 = {}", curve.a1, curve.a6),
        format!(
            "b2 = {}, b4 = {}, b6 = {}, b8 = {}",
            curve.b2, curve.b4, curve.b6, curve.b8
        ),
        format!("Δ = {} (elliptic: {})", curve.delta, audit.valid),
        format!("printed degree-8 polynomial at α: {}", audit.printed_poly_at_alpha),
    ];
    if !audit.discriminant_matches_printed {
        human.push("warning: Δ differs from the printed discriminant polynomial".into());
    }
    if let Some(b) = args.bound {
        human.push(format!(
            "{} integral point(s) with x in the box [−{b}, {b}]{}",
            points.len(),
            if args.even_x { " and 2 | x" } else { "" }
        ));
        human.extend(points.iter().map(|p| format!("  x=({}) y=({})", p.x, p.y)));
    }
    if args.torsion {
        human.push(format!("{} Nagell–Lutz candidate(s)", torsion.len()));
        human.extend(torsion.iter().map(|c| {
            format!(
                "  ({}, {}){}",
                c.x,
                c.y,
                if c.x_numerator_even { " even numerator" } else { "" }
            )
        }));
    }
    Ok(Output {
        json: Value::Object(ordered),
        human,
    })
}
