//! Batch front end: parse boards, regions and game expressions, run the
//! analysis commands, and emit deterministic text reports.
//!
//! Reports are plain text with stable key ordering so outputs are
//! diff-able fixtures. Exit codes: 0 success, 1 input error, 2 budget
//! exhaustion, 3 precondition violation.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::error::{Budget, Error, Result, DEFAULT_BUDGET};
use crate::gameform::{self, Game};
use crate::poset::{self, Poset};
use crate::rexboard::{concrete_order_checks, GlueSpec, Region, RegionAnalysis, SetColoringGame};
use crate::{canonical, census, order, props};

#[derive(Parser, Debug)]
#[command(name = "rexcgt", version, about = "Game engine for Reverse Hex over posets")]
pub struct Cli {
    /// Node budget shared by all exhaustive searches in this invocation
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Outcome class of a board file or a game expression over bool
    Outcome {
        /// Board file
        input: Option<PathBuf>,
        /// Inline game expression
        #[arg(long)]
        expr: Option<String>,
        /// Poset for --expr: builtin name or poset file
        #[arg(long)]
        poset: Option<String>,
    },
    /// Game form of a board or region file
    Gameform {
        input: PathBuf,
    },
    /// Canonical form of a game, board, or region
    Canon {
        input: Option<PathBuf>,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        poset: Option<String>,
        /// Print the simplification trace
        #[arg(long)]
        trace: bool,
    },
    /// Compare two game expressions in both directions
    Compare {
        a: String,
        b: String,
        #[arg(long)]
        poset: Option<String>,
        /// Also run the bounded contextual oracle at this depth
        #[arg(long)]
        depth: Option<u32>,
        /// Option-set width for the contextual oracle
        #[arg(long, default_value_t = 2)]
        width: usize,
    },
    /// Parity, premotivity, and *-antimonotonicity report
    Props {
        input: Option<PathBuf>,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        poset: Option<String>,
    },
    /// Census of premotive *-antimonotone games up to equivalence
    Distinct {
        #[arg(long, default_value = "bool")]
        poset: String,
        #[arg(long, default_value_t = 3)]
        max_depth: u32,
    },
    /// Run a decomposition manifest: regions, sum, glue map, canonical form
    Glue {
        manifest: PathBuf,
    },
    /// Exhaustive minimax on a raw board plus position-level checks
    Oracle {
        input: PathBuf,
    },
    /// Quick internal consistency check
    Selftest,
}

pub fn run(cli: &Cli) -> Result<String> {
    let budget = Budget::new(cli.budget);
    match &cli.command {
        Command::Outcome { input, expr, poset } => {
            let game = load_bool_game(input.as_deref(), expr.as_deref(), poset.as_deref(), &budget)?;
            let o = order::outcome(&game)?;
            Ok(format!(
                "o_left: {}\no_right: {}\noutcome: {}\n",
                bool_name(o.o_left),
                bool_name(o.o_right),
                o.symbol()
            ))
        }
        Command::Gameform { input } => {
            let analysis = load_analysis(input, &budget)?;
            let game = analysis.game_form(&budget)?;
            Ok(format!(
                "poset: {}\nelements: {}\nparity: {}\ngame: {}\n",
                analysis.poset.name(),
                analysis.poset.elems().join(" "),
                gameform::parity(&game),
                gameform::serialize(&game)
            ))
        }
        Command::Canon { input, expr, poset, trace } => {
            let game = match (input, expr) {
                (Some(path), None) => {
                    let analysis = load_analysis(path, &budget)?;
                    if analysis.region.is_board() {
                        analysis.bool_game(&budget)?
                    } else {
                        analysis.game_form(&budget)?
                    }
                }
                (None, Some(text)) => parse_expr(text, poset.as_deref())?,
                _ => return Err(Error::Input("canon takes a file or --expr, not both".into())),
            };
            let result = canonical::canonical_form(&game, &budget)?;
            let mut out = format!("canonical: {}\n", gameform::serialize(&result.game));
            if *trace {
                for (i, step) in result.trace.iter().enumerate() {
                    out.push_str(&format!(
                        "step {}: {} {} => {}\n",
                        i,
                        step.kind,
                        gameform::serialize(&step.before),
                        gameform::serialize(&step.after)
                    ));
                }
            }
            Ok(out)
        }
        Command::Compare { a, b, poset, depth, width } => {
            let ga = parse_expr(a, poset.as_deref())?;
            let gb = parse_expr(b, poset.as_deref())?;
            let mut out = format!(
                "a: {}\nb: {}\n",
                gameform::serialize(&ga),
                gameform::serialize(&gb)
            );
            out.push_str(&format!("leq(a,b): {}\n", order::leq(&ga, &gb)?));
            out.push_str(&format!("leq(b,a): {}\n", order::leq(&gb, &ga)?));
            out.push_str(&format!("tri(a,b): {}\n", order::tri(&ga, &gb)?));
            out.push_str(&format!("tri(b,a): {}\n", order::tri(&gb, &ga)?));
            out.push_str(&format!("equiv: {}\n", order::equiv(&ga, &gb)?));
            if let Some(depth) = depth {
                for (x, y, tag) in [(&ga, &gb, "a,b"), (&gb, &ga, "b,a")] {
                    let verdict = order::leq_contextual_oracle(x, y, *depth, *width, &budget)?;
                    let text = match verdict {
                        order::OracleOutcome::Holds { contexts_checked } => {
                            format!("holds over {contexts_checked} contexts")
                        }
                        order::OracleOutcome::Refuted { witness } => {
                            format!("refuted by {}", gameform::serialize(&witness))
                        }
                    };
                    out.push_str(&format!("contextual({tag}): {text}\n"));
                }
            }
            Ok(out)
        }
        Command::Props { input, expr, poset } => {
            let game = match (input, expr) {
                (Some(path), None) => load_analysis(path, &budget)?.game_form(&budget)?,
                (None, Some(text)) => parse_expr(text, poset.as_deref())?,
                _ => return Err(Error::Input("props takes a file or --expr, not both".into())),
            };
            Ok(props::report(&game).to_string())
        }
        Command::Distinct { poset, max_depth } => {
            let p = resolve_poset(poset)?;
            let reps = census::distinct_census(&p, *max_depth, &budget)?;
            let mut out = format!("classes: {}\n", reps.len());
            for (i, rep) in reps.iter().enumerate() {
                out.push_str(&format!("class {}: {}\n", i, gameform::serialize(rep)));
            }
            Ok(out)
        }
        Command::Glue { manifest } => {
            let text = std::fs::read_to_string(manifest)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", manifest.display())))?;
            let base = manifest.parent().unwrap_or(Path::new("."));
            let spec = GlueSpec::parse(&text, base, &budget)?;
            let composed = spec.composed_game(&budget)?;
            let canon = canonical::canonical_form(&composed, &budget)?;
            let o = order::outcome(&canon.game)?;
            let names: Vec<&str> = spec.parts.iter().map(|(n, _)| n.as_str()).collect();
            Ok(format!(
                "parts: {}\ncanonical: {}\noutcome: {}\n",
                names.join(" "),
                gameform::serialize(&canon.game),
                o.symbol()
            ))
        }
        Command::Oracle { input } => {
            let region = load_region(input)?;
            if !region.is_board() {
                return Err(Error::Input("oracle runs on board files".into()));
            }
            let scg = SetColoringGame::from_board(&region)?;
            let o_left = scg.minimax(order::Player::Left, &budget)?;
            let o_right = scg.minimax(order::Player::Right, &budget)?;
            let o = order::OutcomeClass { o_left, o_right };
            let checks = concrete_order_checks(&region, &budget)?;
            Ok(format!(
                "o_left: {}\no_right: {}\noutcome: {}\n{}",
                bool_name(o_left),
                bool_name(o_right),
                o.symbol(),
                checks
            ))
        }
        Command::Selftest => selftest(&budget),
    }
}

fn bool_name(b: bool) -> &'static str {
    if b {
        "top"
    } else {
        "bot"
    }
}

fn resolve_poset(spec: &str) -> Result<Arc<Poset>> {
    if let Some(p) = poset::builtin(spec) {
        return Ok(p);
    }
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        return Poset::parse(&text);
    }
    Err(Error::Input(format!(
        "unknown poset {spec:?}: not a builtin (one, bool, chain3, diamond) or a file"
    )))
}

fn parse_expr(text: &str, poset_spec: Option<&str>) -> Result<Arc<Game>> {
    let p = resolve_poset(poset_spec.unwrap_or("bool"))?;
    gameform::parse(text, &p)
}

fn load_region(path: &Path) -> Result<Region> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let head = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if head.starts_with("board") {
        Region::parse_board(&text)
    } else if head.starts_with("region") {
        Region::parse_region(&text)
    } else {
        Err(Error::Input(format!(
            "{} is neither a board nor a region file",
            path.display()
        )))
    }
}

fn load_analysis(path: &Path, budget: &Budget) -> Result<RegionAnalysis> {
    RegionAnalysis::analyze(load_region(path)?, budget)
}

fn load_bool_game(
    input: Option<&Path>,
    expr: Option<&str>,
    poset_spec: Option<&str>,
    budget: &Budget,
) -> Result<Arc<Game>> {
    match (input, expr) {
        (Some(path), None) => {
            let analysis = load_analysis(path, budget)?;
            if !analysis.region.is_board() {
                return Err(Error::Input(
                    "outcome needs a board file or an expression over bool".into(),
                ));
            }
            analysis.bool_game(budget)
        }
        (None, Some(text)) => {
            let game = parse_expr(text, poset_spec)?;
            if game.poset() != &poset::bool_poset() {
                return Err(Error::Input("outcome expressions must be over bool".into()));
            }
            Ok(game)
        }
        _ => Err(Error::Input("outcome takes a board file or --expr, not both".into())),
    }
}

fn selftest(budget: &Budget) -> Result<String> {
    let b = poset::bool_poset();
    let star = gameform::star();
    let ss = gameform::sum(&star, &star);
    if gameform::serialize(&ss) != "{{0|0}|{0|0}}" {
        return Err(Error::Internal("star sum expansion failed".into()));
    }
    if canonical::canonical_form(&ss, budget)?.game != gameform::zero() {
        return Err(Error::Internal("star sum did not cancel".into()));
    }
    let top = gameform::atom(&b, b.top());
    let w = gameform::parse("{{bot|bot}|{top|top}}", &b)?;
    let bot = gameform::atom(&b, b.bottom());
    if !(order::leq(&top, &w)? && order::leq(&w, &bot)? && !order::leq(&top, &bot)?) {
        return Err(Error::Internal("intrinsic order fixture failed".into()));
    }
    let reps = census::distinct_census(&b, 2, budget)?;
    if reps.len() != 6 {
        return Err(Error::Internal(format!("expected 6 classes, found {}", reps.len())));
    }
    Ok("selftest: ok\n".to_string())
}
