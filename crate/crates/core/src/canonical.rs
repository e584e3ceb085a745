//! Game simplification: dominated-option removal, reversible-option
//! bypass, atomize collapse, and unique canonical forms.
//!
//! The simplification theorems hold for premotive games with parity, so
//! every rewriting entry point refuses inputs outside that class rather
//! than producing an unsound "simplification". `canonical_form` verifies
//! the preconditions bottom-up on option-canonicalized nodes: once the
//! options are canonical the local checks stay small even when the input
//! is a large shared DAG, and local premotivity transfers across the
//! option replacement because the replaced options are contextually
//! equivalent.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Budget, Error, Result};
use crate::gameform::{self, as_atomize, composite, Game, GameId, Parity};
use crate::order::{self, Player};
use crate::props;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    DominatedRemoval,
    ReversibleBypass,
    AtomizeCollapse,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::DominatedRemoval => write!(f, "dominated-removal"),
            StepKind::ReversibleBypass => write!(f, "reversible-bypass"),
            StepKind::AtomizeCollapse => write!(f, "atomize-collapse"),
        }
    }
}

/// One rewrite applied during canonicalization. Replaying a trace means
/// substituting `after` for every occurrence of `before`, in order.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub kind: StepKind,
    pub before: Arc<Game>,
    pub after: Arc<Game>,
}

#[derive(Debug, Clone)]
pub struct Canonicalized {
    pub game: Arc<Game>,
    pub trace: Vec<TraceStep>,
}

fn require_composite(g: &Arc<Game>, what: &str) -> Result<()> {
    if g.is_atomic() {
        return Err(Error::Input(format!("{what} expects a composite game")));
    }
    Ok(())
}

fn require_premotive_parity(g: &Arc<Game>, what: &str) -> Result<()> {
    if gameform::parity(g) == Parity::NoParity {
        return Err(Error::Precondition(format!(
            "{what} requires a game with parity; {} has none",
            gameform::serialize(g)
        )));
    }
    if !props::is_premotive(g) {
        return Err(Error::Precondition(format!("{what} requires a premotive game")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn options(g: &Arc<Game>, side: Side) -> &[Arc<Game>] {
    match side {
        Side::Left => g.left(),
        Side::Right => g.right(),
    }
}

fn rebuild(g: &Arc<Game>, side: Side, opts: Vec<Arc<Game>>) -> Arc<Game> {
    let (left, right) = match side {
        Side::Left => (opts, g.right().to_vec()),
        Side::Right => (g.left().to_vec(), opts),
    };
    composite(left, right).expect("rewrites keep option sets nonempty")
}

/// Index of a dominated option on `side`, or None. A left option is
/// dominated when it is `≤` a distinct left option (dually on the
/// right); among equivalent options the one with the larger
/// serialization is reported, so the kept representative is stable.
fn find_dominated(g: &Arc<Game>, side: Side) -> Option<usize> {
    let opts = options(g, side);
    for i in 0..opts.len() {
        for j in 0..opts.len() {
            if i == j {
                continue;
            }
            let (worse, better) = match side {
                Side::Left => (&opts[i], &opts[j]),
                Side::Right => (&opts[j], &opts[i]),
            };
            if !order::leq(worse, better).expect("options share the poset") {
                continue;
            }
            let equivalent = order::leq(better, worse).expect("options share the poset");
            if !equivalent || gameform::serialize(&opts[i]) > gameform::serialize(&opts[j]) {
                return Some(i);
            }
        }
    }
    None
}

/// A simple reversible option has the shape `{⊥|k}` on the left or
/// `{k|⊤}` on the right, with `k` atomic. These are left in place; they
/// are the exact residual case that bypassing cannot eliminate.
fn is_simple_shape(h: &Arc<Game>, side: Side) -> bool {
    if h.left().len() != 1 || h.right().len() != 1 {
        return false;
    }
    let p = h.poset();
    match side {
        Side::Left => {
            h.left()[0].atom_elem() == Some(p.bottom()) && h.right()[0].is_atomic()
        }
        Side::Right => {
            h.left()[0].is_atomic() && h.right()[0].atom_elem() == Some(p.top())
        }
    }
}

/// First non-simple reversible option on `side`: the option index and
/// the index of the option of the opposite flavor it reverses through.
fn find_reversible(g: &Arc<Game>, side: Side, skip_simple: bool) -> Option<(usize, usize)> {
    let opts = options(g, side);
    for (i, h) in opts.iter().enumerate() {
        if skip_simple && is_simple_shape(h, side) {
            continue;
        }
        let throughs = match side {
            Side::Left => h.right(),
            Side::Right => h.left(),
        };
        for (k, through) in throughs.iter().enumerate() {
            let reverses = match side {
                Side::Left => order::leq(through, g),
                Side::Right => order::leq(g, through),
            }
            .expect("followers share the poset");
            if reverses {
                return Some((i, k));
            }
        }
    }
    None
}

fn bypass_at(g: &Arc<Game>, side: Side, opt_idx: usize, through_idx: usize) -> Arc<Game> {
    let opts = options(g, side);
    let h = &opts[opt_idx];
    let k = match side {
        Side::Left => &h.right()[through_idx],
        Side::Right => &h.left()[through_idx],
    };
    let p = g.poset();
    let replacements: Vec<Arc<Game>> = if k.is_atomic() {
        // the stand-in option for an atom: {⊥|k} on the left, {k|⊤} dually
        let repl = match side {
            Side::Left => composite(vec![gameform::atom(p, p.bottom())], vec![k.clone()]),
            Side::Right => composite(vec![k.clone()], vec![gameform::atom(p, p.top())]),
        };
        vec![repl.expect("atoms form valid singleton options")]
    } else {
        match side {
            Side::Left => k.left().to_vec(),
            Side::Right => k.right().to_vec(),
        }
    };
    let mut new_opts: Vec<Arc<Game>> =
        opts.iter().enumerate().filter(|(j, _)| *j != opt_idx).map(|(_, o)| o.clone()).collect();
    new_opts.extend(replacements);
    rebuild(g, side, new_opts)
}

/// Remove dominated options from the top level until none remain. One
/// option is removed per pass because a removal changes which
/// comparisons matter.
pub fn remove_dominated(g: &Arc<Game>) -> Result<Arc<Game>> {
    require_composite(g, "remove_dominated")?;
    require_premotive_parity(g, "remove_dominated")?;
    let mut cur = g.clone();
    loop {
        let next = match find_dominated(&cur, Side::Left) {
            Some(i) => {
                let opts = cur.left().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| o.clone()).collect();
                rebuild(&cur, Side::Left, opts)
            }
            None => match find_dominated(&cur, Side::Right) {
                Some(i) => {
                    let opts =
                        cur.right().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| o.clone()).collect();
                    rebuild(&cur, Side::Right, opts)
                }
                None => return Ok(cur),
            },
        };
        cur = next;
    }
}

/// Bypass non-simple reversible options at the top level until none
/// remain. Simple reversible options are left in place.
pub fn bypass_reversible(g: &Arc<Game>) -> Result<Arc<Game>> {
    require_composite(g, "bypass_reversible")?;
    require_premotive_parity(g, "bypass_reversible")?;
    let mut cur = g.clone();
    let mut fuel = 100_000u32;
    loop {
        fuel = fuel
            .checked_sub(1)
            .ok_or_else(|| Error::Budget("bypass_reversible did not reach a fixpoint".into()))?;
        if let Some((i, k)) = find_reversible(&cur, Side::Left, true) {
            cur = bypass_at(&cur, Side::Left, i, k);
            continue;
        }
        if let Some((i, k)) = find_reversible(&cur, Side::Right, true) {
            cur = bypass_at(&cur, Side::Right, i, k);
            continue;
        }
        return Ok(cur);
    }
}

/// Replace every subgame structurally equal to `⌊x⌋` by the atom `x`.
pub fn collapse_atomize(g: &Arc<Game>) -> Arc<Game> {
    fn rec(g: &Arc<Game>, memo: &mut HashMap<GameId, Arc<Game>>) -> Arc<Game> {
        if let Some(r) = memo.get(&g.id()) {
            return r.clone();
        }
        let rebuilt = if g.is_atomic() {
            g.clone()
        } else {
            composite(
                g.left().iter().map(|o| rec(o, memo)).collect(),
                g.right().iter().map(|o| rec(o, memo)).collect(),
            )
            .expect("collapse preserves nonemptiness")
        };
        let result = as_atomize(&rebuilt).unwrap_or(rebuilt);
        memo.insert(g.id(), result.clone());
        result
    }
    rec(g, &mut HashMap::new())
}

/// Direct check of the canonical-form clauses: no dominated options,
/// only simple reversible options, not of the shape `⌊x⌋`, and all
/// options canonical.
pub fn is_canonical(g: &Arc<Game>) -> bool {
    fn rec(g: &Arc<Game>, memo: &mut HashMap<GameId, bool>) -> bool {
        if let Some(&r) = memo.get(&g.id()) {
            return r;
        }
        let result = g.is_atomic()
            || (find_dominated(g, Side::Left).is_none()
                && find_dominated(g, Side::Right).is_none()
                && find_reversible(g, Side::Left, true).is_none()
                && find_reversible(g, Side::Right, true).is_none()
                && as_atomize(g).is_none()
                && g.left().iter().chain(g.right()).all(|o| rec(o, memo)));
        memo.insert(g.id(), result);
        result
    }
    rec(g, &mut HashMap::new())
}

/// Whether this node, taken by itself, is premotive: Left wins moving
/// first in the self-comparison game.
fn locally_premotive(g: &Arc<Game>) -> bool {
    let comp = order::comparison_game(g, g).expect("self-comparison shares the poset");
    order::left_wins(&comp, Player::Left, false).expect("comparison games are over bool")
}

type CanonEntry = (Arc<Game>, Arc<Vec<TraceStep>>);

static CANON_MEMO: Lazy<Mutex<HashMap<GameId, CanonEntry>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Compute the unique canonical form of a finite premotive parity game,
/// together with the rewrite trace that produced it.
///
/// Options are canonicalized before their parent, then the parent runs a
/// fixpoint of dominated-removal, reversible-bypass and atomize-collapse.
/// The premotivity and parity preconditions are verified per follower on
/// the option-canonicalized node and violations are refused.
pub fn canonical_form(g: &Arc<Game>, budget: &Budget) -> Result<Canonicalized> {
    let game = canon_rec(g, budget)?;
    // assemble the full trace bottom-up over distinct followers
    let mut trace = Vec::new();
    let memo = CANON_MEMO.lock().unwrap();
    let mut followers = gameform::followers(g);
    followers.reverse(); // children before parents
    for f in &followers {
        if let Some((_, steps)) = memo.get(&f.id()) {
            trace.extend(steps.iter().cloned());
        }
    }
    Ok(Canonicalized { game, trace })
}

fn canon_rec(g: &Arc<Game>, budget: &Budget) -> Result<Arc<Game>> {
    if let Some((r, _)) = CANON_MEMO.lock().unwrap().get(&g.id()) {
        return Ok(r.clone());
    }
    if g.is_atomic() {
        CANON_MEMO
            .lock()
            .unwrap()
            .insert(g.id(), (g.clone(), Arc::new(Vec::new())));
        return Ok(g.clone());
    }
    let left: Vec<Arc<Game>> =
        g.left().iter().map(|o| canon_rec(o, budget)).collect::<Result<_>>()?;
    let right: Vec<Arc<Game>> =
        g.right().iter().map(|o| canon_rec(o, budget)).collect::<Result<_>>()?;
    let mut cur = composite(left, right)?;

    // Preconditions, checked here where the options are already small.
    // Replacing options by their canonical forms preserves parity and
    // local premotivity, so this decides the same class membership as a
    // check on the original follower.
    if gameform::parity(&cur) == Parity::NoParity {
        return Err(Error::Precondition(format!(
            "canonical_form requires parity; follower {} has none",
            brief(g)
        )));
    }
    if !locally_premotive(&cur) {
        return Err(Error::Precondition(format!(
            "canonical_form requires premotivity; follower {} is not locally premotive",
            brief(g)
        )));
    }

    let mut steps = Vec::new();
    loop {
        budget.tick(1, "canonical_form")?;
        if cur.is_atomic() {
            break;
        }
        if let Some(x) = as_atomize(&cur) {
            steps.push(TraceStep { kind: StepKind::AtomizeCollapse, before: cur.clone(), after: x.clone() });
            cur = x;
            continue;
        }
        if let Some(i) = find_dominated(&cur, Side::Left) {
            let opts = cur.left().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| o.clone()).collect();
            let next = rebuild(&cur, Side::Left, opts);
            steps.push(TraceStep { kind: StepKind::DominatedRemoval, before: cur.clone(), after: next.clone() });
            cur = next;
            continue;
        }
        if let Some(i) = find_dominated(&cur, Side::Right) {
            let opts = cur.right().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| o.clone()).collect();
            let next = rebuild(&cur, Side::Right, opts);
            steps.push(TraceStep { kind: StepKind::DominatedRemoval, before: cur.clone(), after: next.clone() });
            cur = next;
            continue;
        }
        if let Some((i, k)) = find_reversible(&cur, Side::Left, true) {
            let next = bypass_at(&cur, Side::Left, i, k);
            steps.push(TraceStep { kind: StepKind::ReversibleBypass, before: cur.clone(), after: next.clone() });
            cur = next;
            continue;
        }
        if let Some((i, k)) = find_reversible(&cur, Side::Right, true) {
            let next = bypass_at(&cur, Side::Right, i, k);
            steps.push(TraceStep { kind: StepKind::ReversibleBypass, before: cur.clone(), after: next.clone() });
            cur = next;
            continue;
        }
        break;
    }
    CANON_MEMO.lock().unwrap().insert(g.id(), (cur.clone(), Arc::new(steps)));
    Ok(cur)
}

/// Short display for error messages; deep games are elided.
fn brief(g: &Arc<Game>) -> String {
    if gameform::follower_count(g) <= 40 {
        gameform::serialize(g)
    } else {
        format!("<game #{} with {} followers>", g.id(), gameform::follower_count(g))
    }
}

/// Apply a trace to a game by substituting each step's rewrite
/// everywhere, in order. Used to validate traces.
pub fn replay_trace(g: &Arc<Game>, trace: &[TraceStep]) -> Arc<Game> {
    fn subst(
        g: &Arc<Game>,
        from: &Arc<Game>,
        to: &Arc<Game>,
        memo: &mut HashMap<GameId, Arc<Game>>,
    ) -> Arc<Game> {
        if g.id() == from.id() {
            return to.clone();
        }
        if let Some(r) = memo.get(&g.id()) {
            return r.clone();
        }
        let result = if g.is_atomic() {
            g.clone()
        } else {
            composite(
                g.left().iter().map(|o| subst(o, from, to, memo)).collect(),
                g.right().iter().map(|o| subst(o, from, to, memo)).collect(),
            )
            .expect("substitution preserves nonemptiness")
        };
        memo.insert(g.id(), result.clone());
        result
    }
    let mut cur = g.clone();
    for step in trace {
        cur = subst(&cur, &step.before, &step.after, &mut HashMap::new());
    }
    cur
}
