//! Command-line front end. Exit statuses: `solve` 0 for paths, 2 for a
//! hitting set; `verify` 0 iff the certificate passes; `oracle` 3 when the
//! budget runs out; 1 for every other error.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::epsolve::{solver_budget, CertificateDoc, SolveParams, SolverRegistry};
use crate::error::{Error, Result};
use crate::gallery::{FamilyParams, FamilyRegistry};
use crate::graph::{parse_graph, serialize_graph, GraphDoc};
use crate::oracle::{
    count_paths, enumerate_paths, max_disjoint, min_hitting_set, verify_certificate, Budget, Disjointness, PathKind,
    PathSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_HITTING: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "epframe", version, about = "A-path packing/covering certificates and exhaustive oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a dichotomy solver; writes a certificate.
    Solve(SolveArgs),
    /// Check a certificate against its graph.
    Verify(VerifyArgs),
    /// Generate a gallery family.
    Gen(GenArgs),
    /// Exact answers by exhaustive search.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Search-node budget; also lifts the default vertex cap.
    #[arg(long, env = "EPFRAME_BUDGET")]
    pub budget: Option<u64>,
}

impl BudgetArgs {
    fn oracle(&self) -> Budget {
        self.budget.map_or_else(Budget::default, Budget::nodes)
    }

    fn solver(&self) -> Budget {
        self.budget.map_or_else(solver_budget, Budget::nodes)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub variant: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub ell: Option<usize>,
    /// Graph files; standard input when absent. Repeat for a batch.
    #[arg(long)]
    pub input: Vec<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Worker threads for batches; output order follows input order.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub cert: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Label group for zero-wall, e.g. `Zm:3`, `Z`, `Z2w:2`.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub mu: Option<String>,
    /// Target parity for wall-parity: `even` or `odd`.
    #[arg(long)]
    pub spec: Option<String>,
    /// Labeling mode for zero-wall: `undirected` or `directed`.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Question {
    MaxDisjoint,
    MinHitting,
    Enumerate,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub question: Question,
    /// Path kind, e.g. `plain`, `long:4`, `even`, `aba`, `zeromod:6:0`.
    #[arg(long)]
    pub spec: String,
    /// `vertex` or `edge` disjointness.
    #[arg(long, default_value = "vertex")]
    pub mode: String,
    #[arg(long)]
    pub input: Vec<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

fn read_source(path: Option<&PathBuf>) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|e| Error::InvalidParameter(format!("{}: {e}", p.display())))?
        }
        None => {
            io::stdin().read_to_string(&mut text).map_err(|e| Error::InvalidParameter(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_graph(path: Option<&PathBuf>) -> Result<GraphDoc> {
    parse_graph(&read_source(path)?)
}

/// One unit of command output.
struct Outcome {
    status: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(status: i32, stdout: String) -> Self {
        Outcome { status, stdout, stderr: String::new() }
    }

    fn error(e: &Error) -> Self {
        let status = if e.budget_exceeded() { EXIT_BUDGET } else { EXIT_ERROR };
        Outcome { status, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Runs `work` on every input, `jobs` at a time, keeping input order.
fn batch<F>(inputs: &[PathBuf], jobs: usize, work: F) -> Vec<Outcome>
where
    F: Fn(Option<&PathBuf>) -> Outcome + Sync,
{
    if inputs.is_empty() {
        return vec![work(None)];
    }
    let slots: Vec<Mutex<Option<Outcome>>> = inputs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, inputs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = inputs.get(i) else { break };
                let out = work(Some(path));
                *slots[i].lock().expect("no worker panics while holding a slot") = Some(out);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every slot is filled")).collect()
}

/// Batch status: the first error status wins, then any hitting outcome.
fn combine(outs: &[Outcome]) -> i32 {
    if let Some(o) = outs.iter().find(|o| o.status != EXIT_OK && o.status != EXIT_HITTING) {
        return o.status;
    }
    if outs.iter().any(|o| o.status == EXIT_HITTING) {
        EXIT_HITTING
    } else {
        EXIT_OK
    }
}

fn solve_one(args: &SolveArgs, reg: &SolverRegistry, path: Option<&PathBuf>) -> Outcome {
    let run = || -> Result<(bool, String)> {
        let solver = reg
            .get(&args.variant)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown variant '{}'", args.variant)))?;
        solver.variant().spec(args.ell)?;
        let doc = read_graph(path)?;
        let params = SolveParams { k: args.k, ell: args.ell };
        let cert = solver.solve(&doc.graph, &doc.a, params, &args.budget.solver())?;
        Ok((cert.is_paths(), cert.to_doc(&doc.graph).to_json()))
    };
    match run() {
        Ok((true, text)) => Outcome::ok(EXIT_OK, text),
        Ok((false, text)) => Outcome::ok(EXIT_HITTING, text),
        Err(e) => Outcome { status: EXIT_ERROR, ..Outcome::error(&e) },
    }
}

fn verify(args: &VerifyArgs) -> Outcome {
    let run = || -> Result<Outcome> {
        let doc = read_graph(Some(&args.input))?;
        let cert = CertificateDoc::from_json(&read_source(Some(&args.cert))?)?;
        let report = verify_certificate(&doc, &cert, &args.budget.oracle());
        let status = if report.passed() { EXIT_OK } else { EXIT_ERROR };
        Ok(Outcome::ok(status, report.to_string()))
    };
    run().unwrap_or_else(|e| Outcome { status: EXIT_ERROR, ..Outcome::error(&e) })
}

fn gen(args: &GenArgs) -> Outcome {
    let run = || -> Result<String> {
        let reg = FamilyRegistry::default();
        let params = FamilyParams {
            k: args.k,
            ell: args.ell,
            m: args.m,
            d: args.d,
            s: args.s,
            r: args.r,
            group: args.group.clone(),
            mu: args.mu.clone(),
            parity: args.spec.clone(),
            mode: args.mode.clone(),
            seed: args.seed,
        };
        Ok(serialize_graph(&reg.get(&args.family)?.generate(&params)?))
    };
    match run() {
        Ok(text) => Outcome::ok(EXIT_OK, text),
        Err(e) => Outcome { status: EXIT_ERROR, ..Outcome::error(&e) },
    }
}

fn oracle_one(args: &OracleArgs, path: Option<&PathBuf>) -> Outcome {
    let run = || -> Result<String> {
        let kind: PathKind = args.spec.parse()?;
        let mode: Disjointness = args.mode.parse()?;
        let spec = PathSpec { kind, disjointness: mode };
        let doc = read_graph(path)?;
        let inst = doc.instance();
        let budget = args.budget.oracle();
        let g = &doc.graph;
        let mut out = String::new();
        match args.question {
            Question::MaxDisjoint => {
                let pack = max_disjoint(&inst, spec, None, &budget)?;
                out.push_str(&format!("{}\n", pack.size));
                for p in &pack.witness {
                    out.push_str(&format!("path: {}\n", p.names(g).join(" ")));
                }
            }
            Question::MinHitting => {
                let cap = g.vertex_count().max(g.edge_count());
                let hit = min_hitting_set(&inst, spec, mode, cap, &budget)?
                    .ok_or_else(|| Error::Precondition("no hitting set within the universe".into()))?;
                out.push_str(&format!("{}\n", hit.len()));
                let names: Vec<String> = hit
                    .items
                    .iter()
                    .map(|&i| match mode {
                        Disjointness::Vertex => g.name(crate::graph::VertexId(i)).to_string(),
                        Disjointness::Edge => {
                            let e = g.edge(crate::graph::EdgeId(i));
                            format!("{}-{}", g.name(e.u), g.name(e.v))
                        }
                    })
                    .collect();
                out.push_str(&format!("hitting: {}\n", names.join(" ")));
            }
            Question::Enumerate => {
                let paths = enumerate_paths(&inst, spec, &budget)?;
                debug_assert_eq!(count_paths(&inst, kind, &budget).ok(), Some(paths.len()));
                out.push_str(&format!("{}\n", paths.len()));
                for p in &paths {
                    out.push_str(&format!("path: {}\n", p.names(g).join(" ")));
                }
            }
        }
        Ok(out)
    };
    match run() {
        Ok(text) => Outcome::ok(EXIT_OK, text),
        Err(e) => Outcome::error(&e),
    }
}

/// Executes a parsed command, writing documents to `out` (or `--output`)
/// and diagnostics to `err`. Returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (outs, target) = match &cli.command {
        Command::Solve(a) => {
            let reg = SolverRegistry::default();
            (batch(&a.input, a.jobs, |p| solve_one(a, &reg, p)), a.output.as_ref())
        }
        Command::Verify(a) => (vec![verify(a)], a.output.as_ref()),
        Command::Gen(a) => (vec![gen(a)], a.output.as_ref()),
        Command::Oracle(a) => (batch(&a.input, a.jobs, |p| oracle_one(a, p)), a.output.as_ref()),
    };
    let status = combine(&outs);
    let text: String = outs.iter().map(|o| o.stdout.as_str()).collect();
    for o in &outs {
        let _ = err.write_all(o.stderr.as_bytes());
    }
    let written = match target {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_ERROR;
    }
    status
}

/// Parses the process arguments and runs. Usage errors exit 1 so they never
/// read as a hitting-set outcome.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    run(&cli, &mut io::stdout().lock(), &mut io::stderr().lock())
}
