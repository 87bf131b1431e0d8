//! `rbf`: build, analyze and compile resilient Boolean functions.
//!
//! Exit status: 0 on success, 1 on bad arguments or input, 2 when a
//! verification finds a counterexample.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use resilient_bf::circuits::{synth_tree, verify_equivalence, Netlist, VerifyMode};
use resilient_bf::constructions::{
    gate_lower_bound, solve_tradeoff, table1, CaseSolution, Construction, ConstructionParams, Family, PsiSpec, StepOutput,
    TradeoffCase, TradeoffSolution,
};
use resilient_bf::immunity::{AiLimits, N_MAX_AI, N_MAX_FAI};
use resilient_bf::io::{read_function, write_function, VarOrder};
use resilient_bf::spectra::{analyze, AnalyzeOptions};

#[derive(Parser)]
#[command(name = "rbf", version, about = "Resilient Boolean functions with high nonlinearity and algebraic immunity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family instance and write its truth table.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output file; the table goes to stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write X_1 as the most significant index bit.
        #[arg(long)]
        msb_first: bool,
    },
    /// Report every metric of a truth-table file.
    Analyze {
        file: PathBuf,
        /// Compute algebraic immunity with an annihilator witness.
        #[arg(long)]
        ai: bool,
        /// Only search annihilators up to degree D (implies --ai); reports `>=D+1` when none exists.
        #[arg(long, value_name = "D")]
        ai_cap: Option<usize>,
        /// Refuse exact AI above this many variables.
        #[arg(long, default_value_t = N_MAX_AI)]
        ai_max_vars: usize,
        /// Memory budget for the AI elimination matrices.
        #[arg(long, default_value_t = 2048)]
        ai_max_mib: usize,
        /// Compute fast algebraic immunity.
        #[arg(long)]
        fai: bool,
        #[arg(long, default_value_t = N_MAX_FAI)]
        fai_max_vars: usize,
        /// Read X_1 as the most significant index bit.
        #[arg(long)]
        msb_first: bool,
    },
    /// Smallest n reaching resiliency m0, linear bias 2^-x0 and AI a0, per construction case.
    Solve {
        #[arg(long)]
        m0: usize,
        #[arg(long)]
        x0: usize,
        #[arg(long)]
        a0: usize,
        #[arg(long, value_enum, default_value = "all")]
        case: CaseArg,
        /// Write the netlist of the selected case (or of --case) to this file.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
        /// Permutation used by --emit.
        #[arg(long, default_value = "identity")]
        psi: PsiSpec,
        #[arg(long)]
        csv: bool,
    },
    /// Compile a family instance to a 2-input gate netlist.
    Netlist {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output file; the netlist goes to stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a netlist against a truth-table file.
    Verify {
        #[arg(long)]
        netlist: PathBuf,
        #[arg(long)]
        function: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        msb_first: bool,
    },
    /// Solve the twelve reference target rows.
    Table1 {
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// maj, mm, f5, parity_mm, parity_f5_mm, step, iter, iter_parity_mm, iter_gadget_mm
    #[arg(long)]
    family: Family,
    /// Variable count (seed size for step and iter).
    #[arg(long)]
    n: Option<usize>,
    /// Resiliency order.
    #[arg(long)]
    m: Option<usize>,
    /// Iteration rounds.
    #[arg(long)]
    t: Option<usize>,
    /// identity, random:SEED or an explicit 1-based image list such as 2,3,1.
    #[arg(long, conflicts_with = "seed")]
    psi: Option<PsiSpec>,
    /// Shorthand for --psi random:SEED.
    #[arg(long)]
    seed: Option<u64>,
    /// Which step output.
    #[arg(long, value_enum)]
    half: Option<Half>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Half {
    G,
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    All,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
}

impl CaseArg {
    fn case(self) -> Option<TradeoffCase> {
        match self {
            CaseArg::All => None,
            CaseArg::One => Some(TradeoffCase::Even),
            CaseArg::Two => Some(TradeoffCase::Odd),
            CaseArg::Three => Some(TradeoffCase::IterOdd),
            CaseArg::Four => Some(TradeoffCase::IterEven),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

enum Outcome {
    Done,
    VerificationFailed,
}

type CliResult = Result<Outcome, String>;

impl FamilyArgs {
    fn params(&self) -> Result<ConstructionParams, String> {
        let psi = match (&self.psi, self.seed) {
            (Some(p), _) => p.clone(),
            (None, Some(seed)) => PsiSpec::Random(seed),
            (None, None) => PsiSpec::Identity,
        };
        let mut p = ConstructionParams::new(self.family).with_psi(psi);
        p.n = self.n;
        p.m = self.m;
        p.t = self.t;
        if let Some(half) = self.half {
            if self.family != Family::Step {
                return Err(format!("family {} does not take --half", self.family));
            }
            p.half = match half {
                Half::G => StepOutput::G,
                Half::H => StepOutput::H,
            };
        }
        Ok(p)
    }

    fn build(&self) -> Result<(ConstructionParams, Construction), String> {
        let p = self.params()?;
        let c = p.build().map_err(|e| e.to_string())?;
        Ok((p, c))
    }
}

fn order(msb_first: bool) -> VarOrder {
    if msb_first {
        VarOrder::MsbFirst
    } else {
        VarOrder::LsbFirst
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn with_path<T>(path: &Path, r: resilient_bf::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{}: {e}", path.display()))
}

fn construct(family: &FamilyArgs, output: Option<&Path>, msb_first: bool) -> CliResult {
    let (p, c) = family.build()?;
    let tt = c.truth_table().map_err(|e| e.to_string())?;
    let text = write_function(&tt, order(msb_first));
    match output {
        Some(path) => {
            write(path, &text)?;
            println!("family = {}", p.family);
            println!("n = {}", tt.n());
            println!("psi = {}", p.psi);
            println!("expression = {c}");
            println!("output = {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(Outcome::Done)
}

#[allow(clippy::too_many_arguments)]
fn analyze_file(
    file: &Path,
    ai: bool,
    ai_cap: Option<usize>,
    ai_max_vars: usize,
    ai_max_mib: usize,
    fai: bool,
    fai_max_vars: usize,
    msb_first: bool,
) -> CliResult {
    let tt = with_path(file, read_function(&read(file)?, order(msb_first)))?;
    let limits = AiLimits { max_vars: ai_max_vars, max_degree: ai_cap, max_matrix_bytes: ai_max_mib.saturating_mul(1 << 20) };
    let options = AnalyzeOptions { ai: (ai || ai_cap.is_some()).then_some(limits), fai: fai.then_some(fai_max_vars) };
    let report = analyze(&tt, &options).map_err(|e| e.to_string())?;
    print!("{report}");
    Ok(Outcome::Done)
}

fn t_field(c: &CaseSolution) -> String {
    c.t.map_or_else(|| "-".to_string(), |t| t.to_string())
}

fn print_solution(sol: &TradeoffSolution, only: Option<TradeoffCase>, csv: bool, header: bool) {
    let (m0, x0, a0) = sol.targets;
    let cases: Vec<&CaseSolution> = sol.cases.iter().filter(|c| only.is_none_or(|k| c.case == k)).collect();
    let selected = only.unwrap_or(sol.selected);
    if csv {
        if header {
            println!("m0,x0,a0,case,n,m,x,a,t,selected");
        }
        for c in cases {
            println!("{m0},{x0},{a0},{},{},{},{},{},{},{}", c.case.id(), c.n, c.m, c.x, c.a, t_field(c), c.case == selected);
        }
        return;
    }
    println!("targets = ({m0},{x0},{a0})");
    println!("gate_lower_bound = {}", gate_lower_bound(m0, x0, a0));
    for c in cases {
        println!("case.{} = {c}", c.case.id());
        if let Some(t) = c.t {
            println!("case.{}.t = {t}", c.case.id());
        }
    }
    println!("selected = {}", selected.id());
}

fn solve(m0: usize, x0: usize, a0: usize, case: CaseArg, emit: Option<&Path>, psi: &PsiSpec, csv: bool) -> CliResult {
    let sol = solve_tradeoff(m0, x0, a0).map_err(|e| e.to_string())?;
    print_solution(&sol, case.case(), csv, true);
    if let Some(path) = emit {
        let chosen = sol.case(case.case().unwrap_or(sol.selected));
        let perm = psi.resolve(chosen.psi_len()).map_err(|e| e.to_string())?;
        let c = chosen.construction(&perm).map_err(|e| e.to_string())?;
        let nl = synth_tree(&c).map_err(|e| e.to_string())?;
        write(path, &nl.to_string())?;
        if !csv {
            println!("emitted = {}", path.display());
            println!("emitted.psi = {psi}");
            println!("emitted.gates = {}", nl.count_gates().total);
        }
    }
    Ok(Outcome::Done)
}

fn netlist(family: &FamilyArgs, output: Option<&Path>) -> CliResult {
    let (p, c) = family.build()?;
    let nl = synth_tree(&c).map_err(|e| e.to_string())?;
    match output {
        Some(path) => {
            write(path, &nl.to_string())?;
            println!("family = {}", p.family);
            println!("inputs = {}", nl.num_inputs());
            println!("psi = {}", p.psi);
            println!("{}", nl.count_gates());
            println!("output = {}", path.display());
        }
        None => print!("{nl}"),
    }
    Ok(Outcome::Done)
}

fn verify(netlist: &Path, function: &Path, mode: ModeArg, samples: u64, seed: u64, msb_first: bool) -> CliResult {
    let nl = with_path(netlist, Netlist::parse(&read(netlist)?))?;
    let tt = with_path(function, read_function(&read(function)?, order(msb_first)))?;
    if nl.num_inputs() != tt.n() {
        return Err(format!("netlist has {} inputs but the function has {} variables", nl.num_inputs(), tt.n()));
    }
    let mode = match mode {
        ModeArg::Exhaustive => VerifyMode::Exhaustive,
        ModeArg::Sampled => VerifyMode::Sampled { samples, seed },
    };
    let cert = verify_equivalence(&nl, &tt, mode).map_err(|e| e.to_string())?;
    print!("{cert}");
    Ok(if cert.passed { Outcome::Done } else { Outcome::VerificationFailed })
}

fn table(csv: bool) -> CliResult {
    for (i, sol) in table1().iter().enumerate() {
        if csv {
            print_solution(sol, None, true, i == 0);
        } else {
            let (m0, x0, a0) = sol.targets;
            let row: Vec<String> = sol.cases.iter().map(|c| c.to_string()).collect();
            println!("({m0},{x0},{a0}) = {}", row.join(" "));
        }
    }
    Ok(Outcome::Done)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Construct { family, output, msb_first } => construct(&family, output.as_deref(), msb_first),
        Command::Analyze { file, ai, ai_cap, ai_max_vars, ai_max_mib, fai, fai_max_vars, msb_first } => {
            analyze_file(&file, ai, ai_cap, ai_max_vars, ai_max_mib, fai, fai_max_vars, msb_first)
        }
        Command::Solve { m0, x0, a0, case, emit, psi, csv } => solve(m0, x0, a0, case, emit.as_deref(), &psi, csv),
        Command::Netlist { family, output } => netlist(&family, output.as_deref()),
        Command::Verify { netlist: nl, function, mode, samples, seed, msb_first } => verify(&nl, &function, mode, samples, seed, msb_first),
        Command::Table1 { csv } => table(csv),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(2),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
