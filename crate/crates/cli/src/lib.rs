//! Command dispatch for the `tcw` binary.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tcw_core::certificates::{
    bramble_orders, find_tangle, verify_bramble, verify_tangle, CertificateError, TangleViolation,
};
use tcw_core::decomposition::{measure_widths, DecompositionError};
use tcw_core::game::{
    cop_strategy_from_decomposition, play, robber_strategy_from_bramble, Arena, CopStrategy, GameConfig, GameError,
    GreedyRobber, HumanCops, HumanRobber, RandomCops, RandomRobber, RobberStrategy,
};
use tcw_core::graph::{wall, GraphError};
use tcw_core::io::{
    bramble_to_json, decomposition_to_json, parse_bramble, parse_decomposition, parse_graph, parse_tangle,
    tangle_to_json, transcript_to_json, vertices_to_wire, violations_to_json, write_graph, IoError,
};
use tcw_core::solver::{
    ab_tcw, duality_sweep, exists_decomposition, synthesize_bramble, wollan_tcw, SolverBudget, SolverError,
};
use tcw_core::sweep::connected_multigraphs;
use tcw_core::tcc::{component_torso, glue, TccError, TorsoEdge};
use tcw_core::{MultiGraph, TreeCutDecomposition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable holding the solver time limit in milliseconds.
pub const BUDGET_VAR: &str = "TCW_BUDGET_MS";

#[derive(Parser, Debug)]
#[command(name = "tcw", version, about = "Tree-cut decompositions, brambles, tangles and the cops-and-robber game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A graph file in the `p tcw` format; `-` reads standard input.
#[derive(Args, Debug)]
struct GraphArg {
    graph: PathBuf,
}

#[derive(Args, Debug)]
struct Params {
    #[arg(short = 'a', value_parser = clap::value_parser!(u64).range(1..))]
    a: u64,
    #[arg(short = 'b', value_parser = clap::value_parser!(u64).range(1..))]
    b: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Width report of a decomposition.
    Width {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        decomp: PathBuf,
    },
    /// Decomposition of adhesion-width < a and bag-width < b.
    FindDecomp {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        params: Params,
    },
    /// Least k with a decomposition of adhesion-width and bag-width < k.
    AbTcw {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Least Wollan width over all decompositions.
    WollanTcw {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Checks a decomposition, optionally against width bounds.
    VerifyDecomp {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        decomp: PathBuf,
        #[arg(short = 'a')]
        a: Option<usize>,
        #[arg(short = 'b')]
        b: Option<usize>,
    },
    VerifyBramble {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        bramble: PathBuf,
    },
    VerifyTangle {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        tangle: PathBuf,
    },
    /// (a, b)-tangle, if one exists.
    FindTangle {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        params: Params,
    },
    BrambleOrders {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        bramble: PathBuf,
        /// Largest adhesion order searched for.
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Bramble of orders at least (a, b), when no decomposition exists.
    SynthesizeBramble {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        params: Params,
    },
    /// Tangle/decomposition duality over all small connected multigraphs.
    DualityCheck {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_m: usize,
        #[arg(long, default_value_t = 4)]
        max_a: usize,
        #[arg(long, default_value_t = 4)]
        max_b: usize,
        /// Check only this many graphs, drawn with --seed.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Glues per-component decompositions into one decomposition.
    Glue {
        #[command(flatten)]
        graph: GraphArg,
        /// JSON list of {"component": [...], "decomposition": {...}}.
        #[arg(long)]
        parts: PathBuf,
    },
    /// Torso of a 3-edge-connected component.
    Torso {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated vertices of the component.
        #[arg(long, value_delimiter = ',', required = true)]
        component: Vec<usize>,
    },
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    Game {
        #[command(subcommand)]
        action: GameAction,
    },
}

#[derive(Subcommand, Debug)]
enum GenFamily {
    /// Elementary wall of height k.
    Wall {
        #[arg(short = 'k')]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GameAction {
    /// Plays one game and prints its transcript.
    Play(PlayArgs),
}

#[derive(Args, Debug)]
struct PlayArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    cops: usize,
    #[arg(long)]
    dogs: usize,
    #[arg(long, default_value_t = 100)]
    max_rounds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cops follow this decomposition instead of moving at random.
    #[arg(long, conflicts_with = "interactive_cop")]
    decomp: Option<PathBuf>,
    /// Robber follows this bramble instead of the greedy strategy.
    #[arg(long, conflicts_with_all = ["interactive_robber", "random_robber"])]
    bramble: Option<PathBuf>,
    /// Robber moves at random.
    #[arg(long, conflicts_with = "interactive_robber")]
    random_robber: bool,
    #[arg(long, conflicts_with = "interactive_cop")]
    interactive_robber: bool,
    #[arg(long)]
    interactive_cop: bool,
}

/// A command's result: exit code plus the text for standard output.
struct Outcome {
    code: i32,
    stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout }
    }

    fn answer(found: bool, stdout: String) -> Self {
        Outcome { code: if found { EXIT_OK } else { EXIT_FALSE }, stdout }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = if matches!(e, GraphError::TooLarge { .. }) { EXIT_BUDGET } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        let code = match &e {
            SolverError::BudgetExceeded(_) => EXIT_BUDGET,
            SolverError::Graph(GraphError::TooLarge { .. }) => EXIT_BUDGET,
            SolverError::Certificate(CertificateError::BudgetExceeded { .. }) => EXIT_BUDGET,
            SolverError::PreconditionViolated(_) => EXIT_FALSE,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<CertificateError> for Failure {
    fn from(e: CertificateError) -> Self {
        let code = match &e {
            CertificateError::BudgetExceeded { .. } => EXIT_BUDGET,
            CertificateError::Graph(GraphError::TooLarge { .. }) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<DecompositionError> for Failure {
    fn from(e: DecompositionError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<TccError> for Failure {
    fn from(e: TccError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        let code = if matches!(e, GameError::TooLarge(_)) { EXIT_BUDGET } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

/// Streams a command talks to.
pub struct Streams<'a> {
    pub stdin: &'a mut dyn BufRead,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Runs one command line (program name first) and returns the exit code.
pub fn run<I, T>(args: I, streams: Streams) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { streams.stderr } else { streams.stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let budget = match budget_from_env() {
        Ok(b) => b,
        Err(f) => {
            let _ = writeln!(streams.stderr, "error: {}", f.message);
            return f.code;
        }
    };
    match dispatch(cli.command, &budget, streams.stdin, streams.stderr) {
        Ok(outcome) => {
            let _ = streams.stdout.write_all(outcome.stdout.as_bytes());
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(streams.stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn budget_from_env() -> Result<SolverBudget, Failure> {
    let budget = SolverBudget::default();
    match std::env::var(BUDGET_VAR) {
        Ok(ms) => {
            let ms: u64 = ms.trim().parse().map_err(|_| Failure::usage(format!("{BUDGET_VAR} must be a number")))?;
            Ok(budget.with_time_limit(Duration::from_millis(ms)))
        }
        Err(_) => Ok(budget),
    }
}

fn read_text(path: &Path, stdin: &mut dyn BufRead) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text).map_err(|e| Failure::usage(format!("standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

fn load_graph(arg: &GraphArg, stdin: &mut dyn BufRead) -> Result<MultiGraph, Failure> {
    let text = read_text(&arg.graph, stdin)?;
    parse_graph(&text).map_err(|e| Failure::usage(format!("{}: {e}", arg.graph.display())))
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialise");
    s.push('\n');
    s
}

fn line(mut s: String) -> String {
    s.push('\n');
    s
}

fn dispatch(
    command: Command,
    budget: &SolverBudget,
    stdin: &mut dyn BufRead,
    stderr: &mut dyn Write,
) -> Result<Outcome, Failure> {
    match command {
        Command::Width { graph, decomp } => {
            let g = load_graph(&graph, stdin)?;
            let d = parse_decomposition(&read_text(&decomp, stdin)?, &g)?;
            let report = measure_widths(&g, &d)?;
            Ok(Outcome::ok(pretty(&serde_json::to_value(report).expect("report serialises"))))
        }
        Command::FindDecomp { graph, params } => {
            let g = load_graph(&graph, stdin)?;
            match exists_decomposition(&g, params.a as usize, params.b as usize, budget)? {
                Some(d) => Ok(Outcome::ok(line(decomposition_to_json(&d)))),
                None => Ok(Outcome::answer(false, String::new())),
            }
        }
        Command::AbTcw { graph } => {
            let g = load_graph(&graph, stdin)?;
            Ok(Outcome::ok(pretty(&json!({ "ab_tcw": ab_tcw(&g, budget)? }))))
        }
        Command::WollanTcw { graph } => {
            let g = load_graph(&graph, stdin)?;
            Ok(Outcome::ok(pretty(&json!({ "wollan_tcw": wollan_tcw(&g, budget)? }))))
        }
        Command::VerifyDecomp { graph, decomp, a, b } => {
            let g = load_graph(&graph, stdin)?;
            let d = match parse_decomposition(&read_text(&decomp, stdin)?, &g) {
                Ok(d) => d,
                Err(IoError::InvalidDecomposition(violations)) => {
                    let doc = json!({ "valid": false, "violations": violations_to_json(&violations) });
                    return Ok(Outcome::answer(false, pretty(&doc)));
                }
                Err(e) => return Err(e.into()),
            };
            let report = measure_widths(&g, &d)?;
            let within = a.map_or(true, |a| report.adhesion_width < a) && b.map_or(true, |b| report.bag_width < b);
            let doc = json!({ "valid": true, "widths": report, "within_bounds": within });
            Ok(Outcome::answer(within, pretty(&doc)))
        }
        Command::VerifyBramble { graph, bramble } => {
            let g = load_graph(&graph, stdin)?;
            let br = parse_bramble(&read_text(&bramble, stdin)?)?;
            let doc = match verify_bramble(&g, &br) {
                Ok(()) => json!({ "valid": true }),
                Err(v) => json!({ "valid": false, "violation": format!("{v:?}") }),
            };
            Ok(Outcome::answer(doc["valid"] == true, pretty(&doc)))
        }
        Command::VerifyTangle { graph, tangle } => {
            let g = load_graph(&graph, stdin)?;
            let t = parse_tangle(&read_text(&tangle, stdin)?, &g)?;
            match verify_tangle(&g, &t) {
                Ok(()) => Ok(Outcome::ok(pretty(&json!({ "valid": true })))),
                Err(TangleViolation::TooLarge { n }) => {
                    Err(Failure { code: EXIT_BUDGET, message: format!("{n} vertices are too many to verify") })
                }
                Err(v) => Ok(Outcome::answer(false, pretty(&json!({ "valid": false, "violation": format!("{v:?}") })))),
            }
        }
        Command::FindTangle { graph, params } => {
            let g = load_graph(&graph, stdin)?;
            match find_tangle(&g, params.a as usize, params.b as usize)? {
                Some(t) => Ok(Outcome::ok(line(tangle_to_json(&t)))),
                None => Ok(Outcome::answer(false, String::new())),
            }
        }
        Command::BrambleOrders { graph, bramble, cap } => {
            let g = load_graph(&graph, stdin)?;
            let br = parse_bramble(&read_text(&bramble, stdin)?)?;
            if let Err(v) = verify_bramble(&g, &br) {
                return Err(Failure::usage(format!("invalid bramble: {v:?}")));
            }
            let orders = bramble_orders(&g, &br, cap);
            Ok(Outcome::ok(pretty(&serde_json::to_value(orders).expect("orders serialise"))))
        }
        Command::SynthesizeBramble { graph, params } => {
            let g = load_graph(&graph, stdin)?;
            match synthesize_bramble(&g, params.a as usize, params.b as usize, budget) {
                Ok(br) => Ok(Outcome::ok(line(bramble_to_json(&br)))),
                Err(SolverError::PreconditionViolated(message)) => {
                    let _ = writeln!(stderr, "{message}");
                    Ok(Outcome::answer(false, String::new()))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::DualityCheck { max_n, max_m, max_a, max_b, sample, seed } => {
            duality_check(max_n, max_m, max_a, max_b, sample, seed, budget)
        }
        Command::Glue { graph, parts } => {
            let g = load_graph(&graph, stdin)?;
            let per_component = parse_parts(&read_text(&parts, stdin)?, &g)?;
            let (d, _) = glue(&g, &per_component)?;
            Ok(Outcome::ok(line(decomposition_to_json(&d))))
        }
        Command::Torso { graph, component } => {
            let g = load_graph(&graph, stdin)?;
            let a = from_wire_vertices(&component, &g)?;
            let torso = component_torso(&g, &a)?;
            let mut out = String::new();
            for (i, v) in torso.vertices.iter().enumerate() {
                out.push_str(&format!("# vertex {} is {}\n", i + 1, v + 1));
            }
            for (i, e) in torso.edges.iter().enumerate() {
                let meaning = match e {
                    TorsoEdge::Original(id) => format!("edge {}", id + 1),
                    TorsoEdge::Replacement { component } => {
                        let vs: Vec<String> = vertices_to_wire(component).iter().map(ToString::to_string).collect();
                        format!("replacement for {{{}}}", vs.join(","))
                    }
                };
                out.push_str(&format!("# edge {} is {meaning}\n", i + 1));
            }
            out.push_str(&write_graph(&torso.graph));
            Ok(Outcome::ok(out))
        }
        Command::Gen { family: GenFamily::Wall { k } } => {
            if k == 0 {
                return Err(Failure::usage("wall height must be positive"));
            }
            Ok(Outcome::ok(write_graph(&wall(k))))
        }
        Command::Game { action: GameAction::Play(args) } => play_game(args, stdin, stderr),
    }
}

fn from_wire_vertices(vs: &[usize], g: &MultiGraph) -> Result<Vec<usize>, Failure> {
    let mut out: Vec<usize> = vs
        .iter()
        .map(|&v| {
            if v == 0 || v > g.vertex_count() {
                Err(Failure::usage(format!("vertex {v} is outside 1..={}", g.vertex_count())))
            } else {
                Ok(v - 1)
            }
        })
        .collect::<Result<_, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_parts(text: &str, g: &MultiGraph) -> Result<BTreeMap<Vec<usize>, TreeCutDecomposition>, Failure> {
    let parts: Vec<Value> = serde_json::from_str(text).map_err(|e| Failure::usage(format!("parts: {e}")))?;
    let mut out = BTreeMap::new();
    for (i, part) in parts.iter().enumerate() {
        let component: Vec<usize> = serde_json::from_value(part["component"].clone())
            .map_err(|e| Failure::usage(format!("part {i}: component: {e}")))?;
        let component = from_wire_vertices(&component, g)?;
        let torso = component_torso(g, &component)?;
        let d = parse_decomposition(&part["decomposition"].to_string(), &torso.graph)
            .map_err(|e| Failure::usage(format!("part {i}: {e}")))?;
        out.insert(component, d);
    }
    Ok(out)
}

fn duality_check(
    max_n: usize,
    max_m: usize,
    max_a: usize,
    max_b: usize,
    sample: Option<usize>,
    seed: u64,
    budget: &SolverBudget,
) -> Result<Outcome, Failure> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    if max_n > 6 {
        return Err(Failure { code: EXIT_BUDGET, message: format!("--max-n {max_n} is above the supported 6") });
    }
    let mut graphs = connected_multigraphs(max_n, max_m);
    if let Some(k) = sample {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut chosen: Vec<usize> = (0..graphs.len()).collect::<Vec<_>>();
        chosen.shuffle(&mut rng);
        chosen.truncate(k);
        chosen.sort_unstable();
        graphs = chosen.into_iter().map(|i| graphs[i].clone()).collect();
    }
    let records = duality_sweep(&graphs, max_a, max_b, budget);
    if let Some(r) = records.iter().find(|r| r.error.as_deref().is_some_and(|e| e.contains("budget"))) {
        return Err(Failure { code: EXIT_BUDGET, message: r.error.clone().unwrap_or_default() });
    }
    let disagreements: Vec<Value> = records
        .iter()
        .filter(|r| !r.agree || !r.witnesses_ok || r.error.is_some())
        .map(|r| {
            json!({
                "graph": write_graph(&graphs[r.graph]),
                "a": r.a,
                "b": r.b,
                "decomposition": r.decomposition.is_some(),
                "tangle": r.has_tangle,
                "witnesses_ok": r.witnesses_ok,
                "error": r.error,
            })
        })
        .collect();
    let doc = json!({
        "graphs": graphs.len(),
        "checks": records.len(),
        "agreements": records.iter().filter(|r| r.agree && r.witnesses_ok && r.error.is_none()).count(),
        "disagreements": disagreements,
    });
    Ok(Outcome::answer(disagreements.is_empty(), pretty(&doc)))
}

fn play_game(args: PlayArgs, stdin: &mut dyn BufRead, stderr: &mut dyn Write) -> Result<Outcome, Failure> {
    if args.interactive_cop && args.interactive_robber {
        return Err(Failure::usage("only one side can be interactive"));
    }
    let g = load_graph(&args.graph, stdin)?;
    let decomposition = match &args.decomp {
        Some(path) => Some(parse_decomposition(&read_text(path, stdin)?, &g)?),
        None => None,
    };
    let bramble = match &args.bramble {
        Some(path) => Some(parse_bramble(&read_text(path, stdin)?)?),
        None => None,
    };
    let config = GameConfig { cops: args.cops, dogs: args.dogs, max_rounds: args.max_rounds };
    let arena = Arena::new(&g, config);

    let auto_cops = || -> Result<Box<dyn CopStrategy>, Failure> {
        Ok(match &decomposition {
            Some(d) => Box::new(cop_strategy_from_decomposition(&g, d)?),
            None => Box::new(RandomCops::new(args.seed)),
        })
    };
    let auto_robber = || -> Result<Box<dyn RobberStrategy>, Failure> {
        Ok(match &bramble {
            Some(b) => Box::new(robber_strategy_from_bramble(&g, b)?.with_fallback()),
            None if args.random_robber => Box::new(RandomRobber::new(args.seed.wrapping_add(1))),
            None => Box::new(GreedyRobber),
        })
    };
    // prompts go to stderr so that stdout carries only the transcript
    let transcript = if args.interactive_cop {
        play(&arena, &mut HumanCops { input: stdin, output: stderr }, auto_robber()?.as_mut())?
    } else if args.interactive_robber {
        play(&arena, auto_cops()?.as_mut(), &mut HumanRobber { input: stdin, output: stderr })?
    } else {
        play(&arena, auto_cops()?.as_mut(), auto_robber()?.as_mut())?
    };
    Ok(Outcome::ok(line(transcript_to_json(&transcript))))
}
