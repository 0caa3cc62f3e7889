//! `plakit` command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch (or a fault report
//! requested as failure), 2 usage or I/O error, 3 capacity error, 4 format
//! error. Diagnostics go to stderr; results go to stdout.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use plakit::device::{fault_sweep, find_test_vector, render_crosspoint_diagram, Fault, PlaProfile};
use plakit::expr::{
    parse_equations, parse_expression_with, Equation, EquationError, IdentMode, VarOrder,
};
use plakit::fit::{
    compile, emit_fusemap, parse_fusemap, verify_device, write_berkeley_pla, CompileOptions,
    FitError, FormatError,
};
use plakit::fsm::{
    format_trace, parse_encoding, parse_kiss2, simulate_controller, synthesize_controller,
    ControllerImage, FsmError, SynthOptions,
};
use plakit::logic::{canonical_sop, row_to_string, table_from_expr, LogicError};
use plakit::minimize::{self, share_terms, MinimizeError, MinimizeSpec};
use plakit::PlaState;

#[derive(Parser, Debug)]
#[command(name = "plakit", version, about = "Two-level logic synthesis for PLAs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct ExprFlags {
    /// Identifiers are multi-character (`en`, `s0`); AND must be explicit.
    #[arg(short = 'm', long)]
    multi_letter: bool,
    /// Input variable order, comma or space separated.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the truth table of an expression.
    Table {
        expr: String,
        #[command(flatten)]
        flags: ExprFlags,
        /// Output column name.
        #[arg(long, default_value = "F")]
        name: String,
    },
    /// Equations file to a Berkeley `.pla` cover.
    Synth {
        /// Equations file, `-` for stdin.
        input: PathBuf,
        #[command(flatten)]
        flags: ExprFlags,
        #[arg(long)]
        minimize: bool,
    },
    /// Equations file to a fuse map; the fit report goes to stderr.
    Compile {
        input: PathBuf,
        #[arg(short, long)]
        profile: PlaProfile,
        #[command(flatten)]
        flags: ExprFlags,
        #[arg(long)]
        minimize: bool,
        /// Outputs implemented complemented through the output XOR.
        #[arg(long, value_delimiter = ',')]
        polarity: Vec<String>,
        /// Map SOP equations term for term instead of expanding to minterms.
        #[arg(long, conflicts_with = "minimize")]
        as_written: bool,
    },
    /// Evaluate a fuse map on input vectors.
    Sim {
        fusemap: PathBuf,
        /// `all`, `allN` (N = 2^n), or a vector file (`-` for stdin).
        #[arg(long)]
        vectors: String,
    },
    /// Exhaustively compare a fuse map against an equations file.
    Verify {
        fusemap: PathBuf,
        equations: PathBuf,
        #[arg(short = 'm', long)]
        multi_letter: bool,
    },
    /// ASCII crosspoint picture of a fuse map.
    Diagram { fusemap: PathBuf },
    /// KISS2 state table to a controller fuse map.
    Fsm {
        input: PathBuf,
        #[arg(short, long)]
        profile: PlaProfile,
        /// Where to write the state-encoding sidecar.
        #[arg(long)]
        encoding: PathBuf,
        #[arg(long)]
        minimize: bool,
        /// Reject unspecified (state, input) combinations.
        #[arg(long)]
        strict: bool,
    },
    /// Simulate a controller fuse map cycle by cycle.
    Fsmsim {
        fusemap: PathBuf,
        #[arg(long)]
        encoding: PathBuf,
        /// Vector file, one input vector per cycle (`-` for stdin).
        #[arg(long)]
        vectors: PathBuf,
    },
    /// Stuck-crosspoint fault analysis.
    Fault {
        fusemap: PathBuf,
        /// `and:ROW:COL:0|1` or `or:OUTPUT:TERM:0|1`.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        fault: Option<Fault>,
        /// Sweep every single fault.
        #[arg(long)]
        all: bool,
        /// Exit 1 when any analysed fault is detectable.
        #[arg(long)]
        fail_on_detect: bool,
    },
}

enum CliError {
    Mismatch(String),
    Usage(String),
    Capacity(String),
    Format(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Format(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Mismatch(m)
            | CliError::Usage(m)
            | CliError::Capacity(m)
            | CliError::Format(m) => m,
        }
    }
}

fn format_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Format(format!("{}: {e}", path.display()))
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        match e {
            FitError::Capacity { .. } => CliError::Capacity(e.to_string()),
            FitError::Logic(LogicError::TooManyVariables { .. }) => {
                CliError::Capacity(e.to_string())
            }
            FitError::Minimize(MinimizeError::TooManyVariables { .. }) => {
                CliError::Capacity(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<FsmError> for CliError {
    fn from(e: FsmError) -> Self {
        match e {
            FsmError::Fit(f) => f.into(),
            FsmError::Minimize(MinimizeError::TooManyVariables { .. }) => {
                CliError::Capacity(e.to_string())
            }
            FsmError::Invalid(_) | FsmError::Names(_) | FsmError::Minimize(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Format(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

fn ident_mode(multi: bool) -> IdentMode {
    if multi {
        IdentMode::MultiLetter
    } else {
        IdentMode::SingleLetter
    }
}

fn parse_order(text: &str) -> Result<VarOrder> {
    VarOrder::new(
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty()),
    )
    .map_err(|e| CliError::Usage(format!("--order: {e}")))
}

fn read_equations(path: &Path, multi: bool) -> Result<Vec<Equation>> {
    let text = read_input(path)?;
    let eqs = parse_equations(&text, ident_mode(multi))
        .map_err(|e: EquationError| format_err(path, e))?;
    if eqs.is_empty() {
        return Err(format_err(path, "no equations"));
    }
    Ok(eqs)
}

fn read_fusemap(path: &Path) -> Result<PlaState> {
    parse_fusemap(&read_input(path)?).map_err(|e| format_err(path, e))
}

fn bits_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Parses a vector file: one vector of `width` characters in {0,1} per
/// line; blank lines and `#` comments are skipped.
fn parse_vectors(path: &Path, text: &str, width: usize) -> Result<Vec<Vec<bool>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| format_err(path, FormatErrorText(i + 1, msg));
        if line.chars().count() != width {
            return Err(bad(format!(
                "vector `{line}` has {} bits, expected {width}",
                line.chars().count()
            )));
        }
        let v = line
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(bad(format!("illegal vector character `{other}`"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        out.push(v);
    }
    Ok(out)
}

struct FormatErrorText(usize, String);

impl std::fmt::Display for FormatErrorText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.0, self.1)
    }
}

/// Rows `0..2^n` for `all`/`allN`, otherwise `None`.
fn exhaustive_rows(spec: &str, n: usize) -> Result<Option<u64>> {
    let Some(rest) = spec.strip_prefix("all") else {
        return Ok(None);
    };
    if n > 24 {
        return Err(CliError::Usage(format!(
            "refusing to enumerate 2^{n} vectors; `all` is limited to 24 inputs"
        )));
    }
    let total = 1u64 << n;
    if !rest.is_empty() {
        match rest.parse::<u64>() {
            Ok(k) if k == total => {}
            Ok(k) => {
                return Err(CliError::Usage(format!(
                    "`all{k}` does not match the device: {n} inputs give {total} vectors"
                )))
            }
            // Not `allN`: treat as a file name starting with "all".
            Err(_) => return Ok(None),
        }
    }
    Ok(Some(total))
}

fn run(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> Result<()> {
    match cli.command {
        Command::Table { expr, flags, name } => {
            let e = parse_expression_with(&expr, ident_mode(flags.multi_letter))
                .map_err(|e| CliError::Format(format!("{e}")))?;
            let order = match &flags.order {
                Some(o) => parse_order(o)?,
                None => e.variables(),
            };
            let table = table_from_expr(&e, &order).map_err(|e| match e {
                LogicError::TooManyVariables { .. } => CliError::Capacity(e.to_string()),
                other => CliError::Usage(other.to_string()),
            })?;
            let n = order.len();
            writeln!(out, "{} | {name}", order.names().join(" "))?;
            for (row, &bit) in table.bits().iter().enumerate() {
                let ins: Vec<String> = row_to_string(row as u32, n)
                    .chars()
                    .map(String::from)
                    .collect();
                writeln!(out, "{} | {}", ins.join(" "), bit as u8)?;
            }
        }
        Command::Synth {
            input,
            flags,
            minimize,
        } => {
            let eqs = read_equations(&input, flags.multi_letter)?;
            let order = match &flags.order {
                Some(o) => parse_order(o)?,
                None => plakit::fit::equations_order(&eqs),
            };
            let mut covers = Vec::with_capacity(eqs.len());
            for eq in &eqs {
                let table = table_from_expr(&eq.expr, &order).map_err(FitError::from)?;
                let cover = if minimize {
                    let spec = MinimizeSpec::from_table(&table, &[]).map_err(FitError::from)?;
                    minimize::minimize(&spec).map_err(FitError::from)?
                } else {
                    canonical_sop(&table)
                };
                covers.push((eq.name.clone(), cover));
            }
            let netlist = share_terms(&covers).map_err(FitError::from)?;
            out.write_all(write_berkeley_pla(&netlist).as_bytes())?;
        }
        Command::Compile {
            input,
            profile,
            flags,
            minimize,
            polarity,
            as_written,
        } => {
            let eqs = read_equations(&input, flags.multi_letter)?;
            let options = CompileOptions {
                minimize,
                complemented: polarity,
                order: flags.order.as_deref().map(parse_order).transpose()?,
                as_written,
            };
            let c = compile(&eqs, &profile, &options)?;
            for line in &c.log {
                writeln!(err, "{line}")?;
            }
            write!(err, "{}", c.report)?;
            out.write_all(emit_fusemap(&c.state).as_bytes())?;
        }
        Command::Sim { fusemap, vectors } => {
            let state = read_fusemap(&fusemap)?;
            let n = state.profile().n_inputs();
            let ev = state.evaluator();
            match exhaustive_rows(&vectors, n)? {
                Some(total) => {
                    for row in 0..total {
                        let row = row as u32;
                        writeln!(
                            out,
                            "{} {}",
                            row_to_string(row, n),
                            bits_string(&ev.eval_row(row))
                        )?;
                    }
                }
                None => {
                    let path = PathBuf::from(&vectors);
                    let vs = parse_vectors(&path, &read_input(&path)?, n)?;
                    for v in vs {
                        let o = ev.eval(&v).map_err(|e| CliError::Usage(e.to_string()))?;
                        writeln!(out, "{} {}", bits_string(&v), bits_string(&o))?;
                    }
                }
            }
        }
        Command::Verify {
            fusemap,
            equations,
            multi_letter,
        } => {
            let state = read_fusemap(&fusemap)?;
            let eqs = read_equations(&equations, multi_letter)?;
            let n = state.profile().n_inputs();
            match verify_device(&state, &eqs)? {
                None => writeln!(
                    out,
                    "equivalent: {} outputs over {} vectors",
                    eqs.len(),
                    1u64 << n
                )?,
                Some(m) => {
                    let msg = format!(
                        "mismatch: input {} output {} expected {} device {}",
                        row_to_string(m.row, n),
                        m.output,
                        m.expected as u8,
                        m.actual as u8
                    );
                    writeln!(out, "{msg}")?;
                    return Err(CliError::Mismatch(msg));
                }
            }
        }
        Command::Diagram { fusemap } => {
            let state = read_fusemap(&fusemap)?;
            out.write_all(render_crosspoint_diagram(&state).as_bytes())?;
        }
        Command::Fsm {
            input,
            profile,
            encoding,
            minimize,
            strict,
        } => {
            let fsm = parse_kiss2(&read_input(&input)?).map_err(|e| match e {
                FsmError::Format(f) => format_err(&input, f),
                other => other.into(),
            })?;
            let (image, report) =
                synthesize_controller(&fsm, &profile, SynthOptions { minimize, strict })?;
            write!(err, "{report}")?;
            fs::write(&encoding, image.sidecar())
                .map_err(|e| CliError::Usage(format!("{}: {e}", encoding.display())))?;
            out.write_all(emit_fusemap(image.device()).as_bytes())?;
        }
        Command::Fsmsim {
            fusemap,
            encoding,
            vectors,
        } => {
            let state = read_fusemap(&fusemap)?;
            let side = parse_encoding(&read_input(&encoding)?)
                .map_err(|e: FormatError| format_err(&encoding, e))?;
            let bits = side.encoding.bits();
            let image = ControllerImage::new(state, side.encoding, side.n_inputs, side.n_outputs)?;
            let vs = parse_vectors(&vectors, &read_input(&vectors)?, image.n_inputs())?;
            let trace = simulate_controller(&image, &vs)?;
            out.write_all(format_trace(&trace, bits).as_bytes())?;
        }
        Command::Fault {
            fusemap,
            fault,
            all,
            fail_on_detect,
        } => {
            let state = read_fusemap(&fusemap)?;
            let n = state.profile().n_inputs();
            let mut detected = 0usize;
            if all {
                let outcomes = fault_sweep(&state);
                for o in &outcomes {
                    match o.test_row {
                        Some(r) => {
                            detected += 1;
                            writeln!(out, "{}: detected by {}", o.fault, row_to_string(r, n))?;
                        }
                        None => writeln!(out, "{}: undetectable", o.fault)?,
                    }
                }
                writeln!(out, "coverage: {detected}/{} detectable", outcomes.len())?;
            } else if let Some(f) = fault {
                match find_test_vector(&state, &f).map_err(|e| CliError::Usage(e.to_string()))? {
                    Some(v) => {
                        detected = 1;
                        writeln!(out, "{f}: detected by {}", bits_string(&v))?;
                    }
                    None => writeln!(out, "{f}: undetectable")?,
                }
            }
            if fail_on_detect && detected > 0 {
                return Err(CliError::Mismatch(format!(
                    "{detected} detectable fault(s)"
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let stderr = io::stderr();
    let mut err = stderr.lock();
    let result = run(cli, &mut out, &mut err);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(err, "plakit: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
