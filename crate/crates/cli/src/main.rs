use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lexlab::cohomology::{default_window, depth_and_dim, local_cohomology_table, DegreeWindow, LCTable};
use lexlab::groebner::{buchberger, gin, initial_ideal, GinOptions};
use lexlab::hilbert::{dimension, hilbert_series, multiplicity};
use lexlab::lab::{
    all_strongly_stable, enumerate_strongly_stable, probe_rigidity, verify_main, FamilySpec, FamilyTarget,
    VerificationReport,
};
use lexlab::lex::lex_ideal;
use lexlab::parse::{parse_ideal, IdealInput};
use lexlab::{Error, MonomialIdeal, RingSpec, TermOrder};
use serde_json::json;

#[derive(Parser)]
#[command(name = "lexlab", version, about = "Lex ideals, saturation, gin and local cohomology of monomial ideals")]
struct Cli {
    /// Comma-separated variable names, largest first, e.g. `x,y,z`.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Degree window `lo:hi` for local cohomology.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    /// Number of gin trials that must agree.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    /// Base seed for the random coordinate changes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bound on the entries of the random coordinate changes.
    #[arg(long, global = true, default_value_t = 1000)]
    bound: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Largest degree shown (hf) or allowed for generators (enumerate, probe-rigidity).
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function, series numerator, Hilbert polynomial, dimension and multiplicity.
    Hf { ideal: String },
    /// The lex ideal with the same Hilbert function.
    Lex { ideal: String },
    /// Saturation with respect to the maximal ideal.
    Sat { ideal: String },
    /// Generic initial ideal in degrevlex.
    Gin { ideal: String },
    /// Local cohomology table of R/I.
    Lc { ideal: String },
    /// Compare (I^sat)^lex = (I^lex)^sat with equality of local cohomology tables.
    VerifyMain {
        ideal: String,
        /// Also evaluate "sequentially CM and gin(I) = I^lex".
        #[arg(long)]
        with_gin: bool,
    },
    /// List strongly stable ideals with a given Hilbert function.
    Enumerate {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Search a strongly stable family for ideals whose table rows agree with the
    /// lex ideal's at some index but not at a larger one.
    ProbeRigidity {
        #[command(flatten)]
        target: TargetArgs,
    },
}

#[derive(clap::Args)]
struct TargetArgs {
    /// Hilbert function values `h0,h1,...` of R/I.
    #[arg(long, conflicts_with = "like")]
    values: Option<String>,
    /// Use the Hilbert function of this ideal.
    #[arg(long)]
    like: Option<String>,
}

enum Failure {
    Input(String),
    Engine(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Input(e.to_string())
        } else {
            Failure::Engine(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Violation(out)) => {
            print!("{out}");
            eprintln!("THEOREM VIOLATION: (i) and (ii) disagree on a default-or-wider window");
            ExitCode::from(4)
        }
    }
}

fn parse_ring(cli: &Cli) -> Result<RingSpec, Failure> {
    let text = cli.ring.as_deref().ok_or_else(|| Failure::Input("--ring is required".into()))?;
    let names: Vec<&str> = text.split(',').map(str::trim).collect();
    Ok(RingSpec::with_names(&names)?)
}

fn parse_window(cli: &Cli) -> Result<Option<DegreeWindow>, Failure> {
    let Some(text) = &cli.window else { return Ok(None) };
    let bad = || Failure::Input(format!("invalid window `{text}`, expected lo:hi"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    DegreeWindow::new(lo, hi).map(Some).map_err(|e| Failure::Input(e.to_string()))
}

fn gin_options(cli: &Cli) -> GinOptions {
    GinOptions { trials: cli.trials, seed: cli.seed, bound: cli.bound }
}

fn monomial_only(input: IdealInput, command: &str) -> Result<MonomialIdeal, Failure> {
    match input {
        IdealInput::Monomial(i) => Ok(i),
        IdealInput::Polynomial { .. } => {
            Err(Failure::Input(format!("`{command}` needs monomial generators; run `gin` on polynomial input first")))
        }
    }
}

/// Monomial ideal with the same Hilbert function: the input itself, or its
/// degrevlex initial ideal for polynomial input.
fn hilbert_representative(input: &IdealInput) -> Result<MonomialIdeal, Failure> {
    match input {
        IdealInput::Monomial(i) => Ok(i.clone()),
        IdealInput::Polynomial { ring, gens } => {
            if !gens.iter().all(|g| g.is_homogeneous()) {
                return Err(Error::NotHomogeneous.into());
            }
            Ok(initial_ideal(&buchberger(ring, gens, TermOrder::DegRevLex)?))
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn run(cli: &Cli) -> Outcome {
    let ring = parse_ring(cli)?;
    let window = parse_window(cli)?;
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Hf { ideal } => {
            let input = parse_ideal(ideal, &ring)?;
            let i = hilbert_representative(&input)?;
            let probe = hilbert_series(&i, 0);
            let shown = cli.max_degree.map_or(probe.d0.max(probe.numerator.len()) + 2, |d| d as usize);
            let data = hilbert_series(&i, shown);
            if i.is_unit() {
                return Ok(if json { to_json(&data) } else { "unit ideal: R/I = 0\n".into() });
            }
            let dim = dimension(&i)?;
            let e = multiplicity(&i)?;
            if json {
                return Ok(to_json(&json!({ "hilbert": data, "dimension": dim, "multiplicity": e })));
            }
            let mut out = String::new();
            let values: Vec<String> = data.values.iter().map(u64::to_string).collect();
            writeln!(out, "H(d), d = 0..{shown}: {}", values.join(", ")).unwrap();
            writeln!(out, "numerator: {:?}", data.numerator).unwrap();
            writeln!(out, "Hilbert polynomial: {}", data.hilbert_polynomial).unwrap();
            writeln!(out, "polynomial from degree: {}", data.d0).unwrap();
            writeln!(out, "dimension: {dim}").unwrap();
            writeln!(out, "multiplicity: {e}").unwrap();
            Ok(out)
        }
        Command::Lex { ideal } => {
            let i = hilbert_representative(&parse_ideal(ideal, &ring)?)?;
            let lex = lex_ideal(&i)?;
            Ok(if json { to_json(&lex) } else { format!("{lex}\n") })
        }
        Command::Sat { ideal } => {
            let i = monomial_only(parse_ideal(ideal, &ring)?, "sat")?;
            let sat = i.saturate();
            Ok(if json { to_json(&sat) } else { format!("{sat}\n") })
        }
        Command::Gin { ideal } => {
            let g = gin(&parse_ideal(ideal, &ring)?, &gin_options(cli))?;
            Ok(if json { to_json(&g) } else { format!("{g}\n") })
        }
        Command::Lc { ideal } => {
            let i = monomial_only(parse_ideal(ideal, &ring)?, "lc")?;
            let w = window.unwrap_or_else(|| default_window(&i));
            let table = local_cohomology_table(&i, w)?;
            if json {
                return Ok(to_json(&table));
            }
            let mut out = render_table(&table);
            if !i.is_unit() {
                let (depth, dim) = depth_and_dim(&i)?;
                writeln!(out, "depth {depth}, dimension {dim}").unwrap();
            }
            Ok(out)
        }
        Command::VerifyMain { ideal, with_gin } => {
            let i = monomial_only(parse_ideal(ideal, &ring)?, "verify-main")?;
            let opts = gin_options(cli);
            let report = verify_main(&i, window, with_gin.then_some(&opts))?;
            let out = if json { to_json(&report) } else { render_report(&report) };
            if report.is_violation() {
                Err(Failure::Violation(out))
            } else {
                Ok(out)
            }
        }
        Command::Enumerate { target } => {
            let family = match family_spec(cli, &ring, target)? {
                Some(spec) => enumerate_strongly_stable(&spec)?,
                None => all_strongly_stable(&ring, max_degree(cli)?),
            };
            if json {
                return Ok(to_json(&family));
            }
            let mut out = String::new();
            for i in &family {
                writeln!(out, "{i}").unwrap();
            }
            writeln!(out, "{} ideals", family.len()).unwrap();
            Ok(out)
        }
        Command::ProbeRigidity { target } => {
            let spec = family_spec(cli, &ring, target)?
                .ok_or_else(|| Failure::Input("probe-rigidity needs --values or --like".into()))?;
            let report = probe_rigidity(&spec, window)?;
            if json {
                return Ok(to_json(&report));
            }
            let mut out = String::new();
            for m in &report.members {
                let pattern: Vec<&str> = m.equal_rows.iter().map(|&e| if e { "=" } else { "x" }).collect();
                write!(out, "{}  rows [{}]", m.ideal, pattern.join(" ")).unwrap();
                if !m.candidates.is_empty() {
                    write!(out, "  candidates {:?}", m.candidates).unwrap();
                }
                out.push('\n');
            }
            if report.candidates_found {
                writeln!(out, "candidates found (window-limited, not conclusive)").unwrap();
            } else {
                writeln!(out, "none found ({} members, window-limited)", report.members.len()).unwrap();
            }
            Ok(out)
        }
    }
}

fn max_degree(cli: &Cli) -> Result<u32, Failure> {
    cli.max_degree.ok_or_else(|| Failure::Input("--max-degree is required".into()))
}

fn family_spec(cli: &Cli, ring: &RingSpec, target: &TargetArgs) -> Result<Option<FamilySpec>, Failure> {
    let target = match (&target.values, &target.like) {
        (Some(v), _) => {
            let values = v
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Input(format!("invalid Hilbert function values `{v}`")))?;
            FamilyTarget::Values(values)
        }
        (None, Some(text)) => FamilyTarget::Ideal(monomial_only(parse_ideal(text, ring)?, "--like")?),
        (None, None) => return Ok(None),
    };
    Ok(Some(FamilySpec { ring: ring.clone(), target, max_degree: max_degree(cli)? }))
}

fn render_table(t: &LCTable) -> String {
    let w = t.window();
    let width = w
        .degrees()
        .map(|j| j.to_string().len())
        .chain((0..=t.n()).flat_map(|i| t.row(i).iter().map(|v| v.to_string().len())))
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    write!(out, "{:>5}", "j").unwrap();
    for j in w.degrees() {
        write!(out, " {j:>width$}").unwrap();
    }
    out.push('\n');
    for i in 0..=t.n() {
        write!(out, "{:>5}", format!("h^{i}")).unwrap();
        for v in t.row(i) {
            write!(out, " {v:>width$}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn render_report(r: &VerificationReport) -> String {
    let mut out = String::new();
    writeln!(out, "ideal:            {}", r.ideal).unwrap();
    writeln!(out, "lex ideal:        {}", r.lex).unwrap();
    writeln!(out, "(I^sat)^lex:      {}", r.lex_of_saturation).unwrap();
    writeln!(out, "(I^lex)^sat:      {}", r.saturation_of_lex).unwrap();
    writeln!(out, "condition (i):    {}", r.condition_i).unwrap();
    writeln!(out, "condition (ii):   {} on window {}:{}", r.condition_ii_on_window, r.lc_window.lo(), r.lc_window.hi())
        .unwrap();
    if let Some((i, j)) = r.first_mismatch {
        writeln!(out, "first mismatch:   i = {i}, j = {j}").unwrap();
    }
    if let (Some(g), Some(seq), Some(iii)) = (&r.gin, &r.sequentially_cm, &r.condition_iii) {
        writeln!(out, "gin:              {g}").unwrap();
        writeln!(out, "sequentially CM:  {seq:?}").unwrap();
        writeln!(out, "condition (iii):  {iii}").unwrap();
    }
    writeln!(out, "verdict:          {:?}", r.verdict).unwrap();
    out.push_str("\ntable of R/I\n");
    out.push_str(&render_table(&r.table_ideal));
    out.push_str("\ntable of R/I^lex\n");
    out.push_str(&render_table(&r.table_lex));
    out
}
