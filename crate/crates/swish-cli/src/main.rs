//! Command-line interface for the swish toolkit.
//!
//! Exit status: 0 when the question was decided (including "invalid" and
//! "no" answers), 1 on usage or parse errors, 2 when the budget ran out
//! before a decision was reached.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use swish::{
    canonical_form, emit_card_file, enumerate_all_cards, even_dicycle_factor_oracle,
    exists_swish_geq, find_max_swish, parse_card_file, parse_digraph_file, parse_placement_list,
    reduce_column_grid, reduce_row_grid, search_no_swish_subset, solve_no_transform, verify_swish,
    CardSet, ColumnPolicy, Completion, Digraph, GridDims, OracleAnswer, Placement, SearchBudget,
    SwishDecision, SwishSolution, TransformPolicy, Verdict,
};

#[derive(Parser)]
#[command(name = "swish", version, about = "Swish card game solver and verification toolkit")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a placement list against a card file.
    Verify {
        /// Card file ("h w" header, then "i1 j1 i2 j2" per card).
        cards: PathBuf,
        /// Placement list ("index token" per line, tokens I/F/R/V).
        #[arg(long)]
        placements: PathBuf,
        #[arg(long, value_enum, default_value_t = PolicyArg::Both)]
        policy: PolicyArg,
    },
    /// Find the maximum swish, or decide a size threshold with --k.
    Solve {
        cards: PathBuf,
        #[arg(long, value_enum)]
        policy: PolicyArg,
        /// Decide whether a swish of at least this size exists.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Translate a digraph into a card instance whose target-size swish
    /// encodes an even dicycle-factor.
    Reduce {
        digraph: PathBuf,
        #[arg(long, value_enum)]
        gadget: GadgetArg,
        /// Transform policy for the column gadget.
        #[arg(long, value_enum, default_value_t = ColumnPolicyArg::Rotate)]
        column_policy: ColumnPolicyArg,
    },
    /// Decide whether a digraph has an even dicycle-factor.
    Oracle {
        digraph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Symmetry-class statistics of the full card enumeration for a grid.
    Deck {
        /// Grid dimensions as HxW, e.g. 4x3.
        #[arg(long)]
        dims: String,
    },
    /// Search for a large subset of a card file with no nonempty swish.
    Noswish {
        cards: PathBuf,
        #[arg(long, value_enum, default_value_t = PolicyArg::Both)]
        policy: PolicyArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    None,
    Flip,
    Rotate,
    Both,
}

impl From<PolicyArg> for TransformPolicy {
    fn from(arg: PolicyArg) -> Self {
        match arg {
            PolicyArg::None => TransformPolicy::NONE,
            PolicyArg::Flip => TransformPolicy::FLIP_ONLY,
            PolicyArg::Rotate => TransformPolicy::ROTATE_ONLY,
            PolicyArg::Both => TransformPolicy::BOTH,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetArg {
    Row,
    Column,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColumnPolicyArg {
    Rotate,
    Both,
}

#[derive(Args)]
struct BudgetArgs {
    /// Stop after exploring this many search nodes.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

impl BudgetArgs {
    fn to_budget(&self) -> SearchBudget {
        let mut budget = SearchBudget::default();
        if let Some(nodes) = self.max_nodes {
            budget = budget.with_node_limit(nodes);
        }
        if let Some(secs) = self.timeout {
            budget = budget.with_time_limit(Duration::from_secs_f64(secs.max(0.0)));
        }
        budget
    }
}

/// 0 = decided, 2 = budget exhausted before a decision.
const DECIDED: u8 = 0;
const UNDECIDED: u8 = 2;

fn main() -> ExitCode {
    // Die quietly when a pipe closes early, like other line-oriented tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Verify {
            cards,
            placements,
            policy,
        } => cmd_verify(cli.json, cards, placements, (*policy).into()),
        Command::Solve {
            cards,
            policy,
            k,
            budget,
        } => cmd_solve(cli.json, cards, (*policy).into(), *k, budget.to_budget()),
        Command::Reduce {
            digraph,
            gadget,
            column_policy,
        } => cmd_reduce(cli.json, digraph, *gadget, *column_policy),
        Command::Oracle { digraph, budget } => cmd_oracle(cli.json, digraph, budget.to_budget()),
        Command::Deck { dims } => cmd_deck(cli.json, dims),
        Command::Noswish {
            cards,
            policy,
            budget,
        } => cmd_noswish(cli.json, cards, (*policy).into(), budget.to_budget()),
    }
}

fn load_cards(path: &PathBuf) -> Result<CardSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_card_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_digraph(path: &PathBuf) -> Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_digraph_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn witness_json(solution: &SwishSolution) -> serde_json::Value {
    solution
        .placements()
        .iter()
        .map(|p| json!({"card": p.card_index + 1, "transform": p.transform.to_string()}))
        .collect()
}

fn print_witness(placements: &[Placement]) {
    println!("witness:");
    for p in placements {
        println!("  {} {}", p.card_index + 1, p.transform);
    }
}

fn cmd_verify(
    json: bool,
    cards_path: &PathBuf,
    placements_path: &PathBuf,
    policy: TransformPolicy,
) -> Result<u8> {
    let cards = load_cards(cards_path)?;
    let text = fs::read_to_string(placements_path)
        .with_context(|| format!("reading {}", placements_path.display()))?;
    let placements = parse_placement_list(&text, cards.len())
        .with_context(|| format!("parsing {}", placements_path.display()))?;
    let verdict = verify_swish(&cards, &placements, policy)?;
    match verdict {
        Verdict::Valid => {
            if json {
                println!("{}", json!({"command": "verify", "valid": true}));
            } else {
                println!("valid");
            }
        }
        Verdict::Invalid(report) => {
            if json {
                let points: serde_json::Value = report
                    .points
                    .iter()
                    .map(|v| {
                        json!({
                            "point": {"i": v.point.i, "j": v.point.j},
                            "hoops": v.hoops,
                            "balls": v.balls,
                        })
                    })
                    .collect();
                let disallowed: serde_json::Value = report
                    .disallowed
                    .iter()
                    .map(|p| json!({"card": p.card_index + 1, "transform": p.transform.to_string()}))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "command": "verify",
                        "valid": false,
                        "point_violations": points,
                        "disallowed_transforms": disallowed,
                    })
                );
            } else {
                println!("invalid");
                for v in &report.points {
                    println!(
                        "  point {}: {} hoops, {} balls",
                        v.point, v.hoops, v.balls
                    );
                }
                for p in &report.disallowed {
                    println!(
                        "  card {}: transform {} not permitted by policy",
                        p.card_index + 1,
                        p.transform
                    );
                }
            }
        }
    }
    Ok(DECIDED)
}

fn cmd_solve(
    json: bool,
    cards_path: &PathBuf,
    policy: TransformPolicy,
    k: Option<usize>,
    budget: SearchBudget,
) -> Result<u8> {
    let cards = load_cards(cards_path)?;
    if let Some(k) = k {
        anyhow::ensure!(k >= 1, "--k must be at least 1");
    }
    match k {
        Some(k) => {
            let decision = if policy == TransformPolicy::NONE {
                let (size, witness) = solve_no_transform(&cards);
                if size >= k {
                    SwishDecision::Yes(witness)
                } else {
                    SwishDecision::No
                }
            } else {
                exists_swish_geq(&cards, policy, k, budget)?
            };
            let (answer, witness, code) = match &decision {
                SwishDecision::Yes(w) => ("yes", Some(w), DECIDED),
                SwishDecision::No => ("no", None, DECIDED),
                SwishDecision::Unknown => ("unknown", None, UNDECIDED),
            };
            if json {
                let mut report = json!({
                    "command": "solve",
                    "mode": "threshold",
                    "policy": policy.to_string(),
                    "k": k,
                    "answer": answer,
                });
                if let Some(w) = witness {
                    report["witness"] = witness_json(w);
                }
                println!("{report}");
            } else {
                println!("swish of size >= {k}: {answer}");
                if let Some(w) = witness {
                    print_witness(w.placements());
                }
            }
            Ok(code)
        }
        None => {
            let (size, witness, exact) = if policy == TransformPolicy::NONE {
                let (size, witness) = solve_no_transform(&cards);
                (size, witness, true)
            } else {
                let result = find_max_swish(&cards, policy, budget);
                (
                    result.size,
                    result.witness,
                    result.completion == Completion::Exact,
                )
            };
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "solve",
                        "mode": "max",
                        "policy": policy.to_string(),
                        "size": size,
                        "exact": exact,
                        "witness": witness_json(&witness),
                    })
                );
            } else {
                if exact {
                    println!("max swish size: {size}");
                } else {
                    println!("max swish size: >= {size} (budget exhausted)");
                }
                print_witness(witness.placements());
            }
            Ok(if exact { DECIDED } else { UNDECIDED })
        }
    }
}

fn cmd_reduce(
    json: bool,
    digraph_path: &PathBuf,
    gadget: GadgetArg,
    column_policy: ColumnPolicyArg,
) -> Result<u8> {
    let g = load_digraph(digraph_path)?;
    let (out, gadget_name) = match gadget {
        GadgetArg::Row => (reduce_row_grid(&g)?, "row"),
        GadgetArg::Column => {
            let policy = match column_policy {
                ColumnPolicyArg::Rotate => ColumnPolicy::RotateOnly,
                ColumnPolicyArg::Both => ColumnPolicy::Both,
            };
            (reduce_column_grid(&g, policy)?, "column")
        }
    };
    if json {
        let cards: serde_json::Value = out
            .cards
            .cards()
            .iter()
            .map(|c| json!([c.hoop.i, c.hoop.j, c.ball.i, c.ball.j]))
            .collect();
        println!(
            "{}",
            json!({
                "command": "reduce",
                "gadget": gadget_name,
                "k": out.target_size,
                "policy": out.policy.to_string(),
                "h": out.cards.dims().rows(),
                "w": out.cards.dims().cols(),
                "cards": cards,
            })
        );
    } else {
        println!("# gadget: {gadget_name}");
        println!("# k = {}", out.target_size);
        println!("# policy = {}", out.policy);
        print!("{}", emit_card_file(&out.cards));
    }
    Ok(DECIDED)
}

fn cmd_oracle(json: bool, digraph_path: &PathBuf, budget: SearchBudget) -> Result<u8> {
    let g = load_digraph(digraph_path)?;
    let answer = even_dicycle_factor_oracle(&g, budget);
    match &answer {
        OracleAnswer::Yes(factor) => {
            if json {
                let edges: serde_json::Value = factor
                    .edges
                    .iter()
                    .map(|&ei| {
                        let (u, v) = g.edges()[ei];
                        json!({"edge": ei + 1, "from": u + 1, "to": v + 1})
                    })
                    .collect();
                println!(
                    "{}",
                    json!({"command": "oracle", "answer": "yes", "factor": edges})
                );
            } else {
                println!("even dicycle-factor: yes");
                for &ei in &factor.edges {
                    let (u, v) = g.edges()[ei];
                    println!("  edge {}: {} -> {}", ei + 1, u + 1, v + 1);
                }
            }
            Ok(DECIDED)
        }
        OracleAnswer::No => {
            if json {
                println!("{}", json!({"command": "oracle", "answer": "no"}));
            } else {
                println!("even dicycle-factor: no");
            }
            Ok(DECIDED)
        }
        OracleAnswer::Unknown => {
            if json {
                println!("{}", json!({"command": "oracle", "answer": "unknown"}));
            } else {
                println!("even dicycle-factor: unknown (budget exhausted)");
            }
            Ok(UNDECIDED)
        }
    }
}

fn cmd_deck(json: bool, dims: &str) -> Result<u8> {
    let (h, w) = parse_dims(dims)?;
    let dims = GridDims::new(h, w)?;
    let mut canonicals: Vec<_> = enumerate_all_cards(dims, false)
        .into_iter()
        .map(|card| canonical_form(card, dims).expect("enumerated cards are on the grid"))
        .collect();
    canonicals.sort_by_key(|class| class.canonical);
    canonicals.dedup();
    if json {
        let classes: serde_json::Value = canonicals
            .iter()
            .map(|class| {
                let c = class.canonical;
                json!({
                    "canonical": [c.hoop.i, c.hoop.j, c.ball.i, c.ball.j],
                    "orbit_size": class.orbit_size(),
                })
            })
            .collect();
        println!(
            "{}",
            json!({
                "command": "deck",
                "dims": dims.to_string(),
                "distinct_classes": canonicals.len(),
                "classes": classes,
            })
        );
    } else {
        println!("distinct classes: {}", canonicals.len());
        for class in &canonicals {
            println!("  {} orbit {}", class.canonical, class.orbit_size());
        }
    }
    Ok(DECIDED)
}

fn cmd_noswish(
    json: bool,
    cards_path: &PathBuf,
    policy: TransformPolicy,
    budget: SearchBudget,
) -> Result<u8> {
    let deck = load_cards(cards_path)?;
    let result = search_no_swish_subset(&deck, policy, budget);
    if json {
        let indices: serde_json::Value = result.cards.iter().map(|&i| json!(i + 1)).collect();
        println!(
            "{}",
            json!({
                "command": "noswish",
                "policy": policy.to_string(),
                "size": result.cards.len(),
                "verified": result.verified,
                "cards": indices,
            })
        );
    } else {
        let status = if result.verified { "verified" } else { "unverified" };
        println!("no-swish subset (size {}, {status}):", result.cards.len());
        let indices: Vec<String> = result.cards.iter().map(|&i| (i + 1).to_string()).collect();
        println!("  {}", indices.join(" "));
    }
    Ok(if result.verified { DECIDED } else { UNDECIDED })
}

fn parse_dims(text: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = text.split(['x', 'X']).collect();
    let [h, w] = parts[..] else {
        anyhow::bail!("dims must look like 4x3, got {text:?}");
    };
    Ok((
        h.trim().parse().with_context(|| format!("bad height in {text:?}"))?,
        w.trim().parse().with_context(|| format!("bad width in {text:?}"))?,
    ))
}
