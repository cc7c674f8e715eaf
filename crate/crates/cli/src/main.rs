use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qarith::bennett::bennett_wrap;
use qarith::clifford_t::expand_toffolis;
use qarith::format::{self, Format};
use qarith::resources::{self, reproduce_table, Design, ResourceReport, TableId};
use qarith::simulate::{run_reversible, run_statevector, BasisState, SimConfig};
use qarith::verify::{self, Target, VerifyReport};
use qarith::{Circuit, Synthesis};

/// Garbageless quantum adder and multiplier synthesis.
#[derive(Parser)]
#[command(name = "qarith", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a circuit netlist.
    Gen(GenArgs),
    /// Check a generated circuit against its arithmetic oracle.
    Verify(VerifyArgs),
    /// Report gate counts and T-count.
    Resources(ResourcesArgs),
    /// Write one of the comparison tables as CSV.
    Tables(TablesArgs),
    /// Run a circuit on one basis-state input.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Adder,
    Mult,
}

impl Kind {
    fn target(self) -> Target {
        match self {
            Kind::Adder => Target::Adder,
            Kind::Mult => Target::Multiplier,
        }
    }

    fn design(self) -> Design {
        match self {
            Kind::Adder => Design::ProposedAdder,
            Kind::Mult => Design::ProposedMult,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Qasm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Args)]
struct GenArgs {
    kind: Kind,
    /// Operand width in bits (at least 2).
    #[arg(long)]
    n: usize,
    /// Replace every Toffoli with its 7-T Clifford+T realization.
    #[arg(long)]
    expand: bool,
    /// Compute, copy the result register to fresh wires, uncompute.
    #[arg(long)]
    wrap: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check this netlist (laid out like the builder's circuit) instead.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct ResourcesArgs {
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    kind: Option<Kind>,
    #[arg(long, requires = "kind")]
    n: Option<usize>,
    /// A JSON or QASM netlist instead of a builder target.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// II, V, VI or VII.
    #[arg(long)]
    id: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    kind: Option<Kind>,
    #[arg(long, requires = "kind")]
    n: Option<usize>,
    #[arg(long)]
    file: Option<PathBuf>,
    /// Expand Toffolis first (forces the statevector backend).
    #[arg(long)]
    expand: bool,
    /// Input as a bit string, wire 0 leftmost.
    #[arg(long, conflicts_with = "set")]
    bits: Option<String>,
    /// Input as `register=value`; repeatable. Unset wires start at 0.
    #[arg(long)]
    set: Vec<String>,
}

/// Exit 2 with a message on standard error.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Verify(a) => verify(a),
        Command::Resources(a) => resources(a),
        Command::Tables(a) => tables(a),
        Command::Simulate(a) => simulate(a),
    };
    result.unwrap_or_else(|Usage(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Usage> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Usage(format!("{}: {e}", path.display()))),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(Usage::from),
    }
}

fn build(kind: Kind, n: usize) -> Result<Synthesis, Usage> {
    Ok(kind.target().build(n)?)
}

fn read_circuit(path: &Path) -> Result<Option<Circuit>, Usage> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    if text.trim().is_empty() {
        return Ok(None);
    }
    format::parse(&text)
        .map(Some)
        .map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn gen(a: GenArgs) -> CmdResult {
    let s = build(a.kind, a.n)?;
    let mut c = s.circuit;
    if a.wrap {
        c = bennett_wrap(&c, &s.result)?;
    }
    if a.expand {
        c = expand_toffolis(&c);
    }
    let fmt = match a.format {
        OutFormat::Json => Format::Json,
        OutFormat::Qasm => Format::Qasm,
    };
    emit(a.out.as_deref(), &format::serialize(&c, fmt))?;
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> CmdResult {
    let target = a.kind.target();
    let reference = build(a.kind, a.n)?.circuit;
    let circuit = match &a.file {
        Some(path) => {
            let c = read_circuit(path)?.ok_or_else(|| Usage(format!("{}: empty circuit", path.display())))?;
            if c.width() != reference.width() {
                return Err(Usage(format!(
                    "{}: width {} does not match the {} layout for n = {} ({} wires)",
                    path.display(),
                    c.width(),
                    target.name(),
                    a.n,
                    reference.width()
                )));
            }
            c
        }
        None => reference,
    };
    let (label, report): (String, VerifyReport) = match a.mode {
        Mode::Exhaustive => (
            "exhaustive".into(),
            verify::verify_circuit_exhaustive(target, &circuit, a.n)?,
        ),
        Mode::Sample => (
            format!("sample seed={}", a.seed),
            verify::verify_circuit_sampled(target, &circuit, a.n, a.samples, a.seed)?,
        ),
    };
    let mut text = format!(
        "{} n={} {label}\n{}/{} pass\n",
        target.name(),
        a.n,
        report.passed,
        report.checked
    );
    if let Some(m) = &report.first_failure {
        text.push_str(&format!("first counterexample: {m}\n"));
    }
    emit(None, &text)?;
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn empty_report() -> ResourceReport {
    let mut r = resources::report(&Circuit::anonymous(1).expect("width 1 is valid"));
    r.width = 0;
    r
}

fn resources(a: ResourcesArgs) -> CmdResult {
    let (title, report, formula) = match (&a.file, a.kind) {
        (Some(path), _) => {
            let report = match read_circuit(path)? {
                Some(c) => resources::report_expanded(&c),
                None => empty_report(),
            };
            (path.display().to_string(), report, None)
        }
        (None, Some(kind)) => {
            let n = a.n.ok_or_else(|| Usage("--n is required with a builder target".into()))?;
            let s = build(kind, n)?;
            let formula = kind.design().t_count(n)?;
            (format!("{} n={n}", kind.target().name()), resources::report_synthesis(&s), Some(formula))
        }
        (None, None) => return Err(Usage("give a target or --file".into())),
    };
    let verdict = |f: u64| if f == report.t_count as u64 { "AGREE" } else { "DISAGREE" };

    let text = if a.json {
        let mut v = serde_json::to_value(&report)?;
        if let Some(f) = formula {
            v["formula_t_count"] = f.into();
            v["agreement"] = verdict(f).into();
        }
        let mut s = serde_json::to_string_pretty(&v)?;
        s.push('\n');
        s
    } else {
        let mut s = format!("target: {title}\n");
        s.push_str(&format!("width: {}\n", report.width));
        s.push_str(&format!("t_count: {}\n", report.t_count));
        s.push_str(&format!("toffoli_count_pre_expansion: {}\n", report.toffoli_count_pre_expansion));
        s.push_str(&format!("ancillae: {}\n", report.ancillae));
        s.push_str(&format!("garbage: {}\n", report.garbage));
        for (kind, count) in &report.counts {
            s.push_str(&format!("count {kind}: {count}\n"));
        }
        if let Some(f) = formula {
            s.push_str(&format!("formula t_count: {f} {}\n", verdict(f)));
        }
        s
    };
    emit(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn tables(a: TablesArgs) -> CmdResult {
    let id: TableId = a.id.parse()?;
    emit(a.out.as_deref(), &reproduce_table(id).to_csv())?;
    Ok(ExitCode::SUCCESS)
}

fn parse_input(c: &Circuit, a: &SimulateArgs) -> Result<BasisState, Usage> {
    if let Some(bits) = &a.bits {
        let s = BasisState::from_bit_string(bits)?;
        if s.width() != c.width() {
            return Err(Usage(format!("{} bits given, circuit has {} wires", s.width(), c.width())));
        }
        return Ok(s);
    }
    let mut s = BasisState::zeros(c.width());
    for item in &a.set {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Usage(format!("expected register=value, got `{item}`")))?;
        let wires = c.register(name.trim())?;
        let value: u128 = value
            .trim()
            .parse()
            .map_err(|_| Usage(format!("`{value}` is not a non-negative integer")))?;
        if wires.len() < 128 && value >> wires.len() != 0 {
            return Err(Usage(format!("{value} does not fit in {} wires of `{name}`", wires.len())));
        }
        s.write(wires, value);
    }
    Ok(s)
}

fn simulate(a: SimulateArgs) -> CmdResult {
    let mut c = match (&a.file, a.kind) {
        (Some(path), _) => read_circuit(path)?.ok_or_else(|| Usage(format!("{}: empty circuit", path.display())))?,
        (None, Some(kind)) => {
            let n = a.n.ok_or_else(|| Usage("--n is required with a builder target".into()))?;
            build(kind, n)?.circuit
        }
        (None, None) => return Err(Usage("give a target or --file".into())),
    };
    if a.expand {
        c = expand_toffolis(&c);
    }
    let input = parse_input(&c, &a)?;
    let mut text = format!("input:  {}\n", input.to_bit_string());

    if c.is_classical() {
        let out = run_reversible(&c, &input)?;
        text.push_str(&format!("output: {}\n", out.to_bit_string()));
        for (name, wires) in c.registers().iter() {
            text.push_str(&format!("{name} = {}\n", out.read(wires)));
        }
    } else {
        let sv = run_statevector(&c, &input, &SimConfig::from_env())?;
        for (i, amp) in sv.amplitudes().iter().enumerate() {
            if amp.norm() > 1e-12 {
                let bits = BasisState::from_index(c.width(), i as u64).to_bit_string();
                text.push_str(&format!("{bits} {:+.12} {:+.12}i\n", amp.re, amp.im));
            }
        }
    }
    emit(None, &text)?;
    Ok(ExitCode::SUCCESS)
}
