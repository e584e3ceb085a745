//! Shared helpers for the integration suites: fixture paths, seeded
//! generators, game perturbations, and an independent naive evaluator
//! used to cross-check the memoized engine.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use rexcgt::error::Budget;
use rexcgt::gameform::{self, atomize, composite, Game, Kind};
use rexcgt::order::Player;
use rexcgt::poset::Poset;
use rexcgt::rexboard::{Region, RegionAnalysis, RegionKind};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture file exists")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn budget() -> Budget {
    Budget::new(rexcgt::DEFAULT_BUDGET)
}

// ---------------------------------------------------------------------------
// Random generation

pub fn random_game(
    rng: &mut ChaCha8Rng,
    p: &Arc<Poset>,
    max_depth: u32,
    max_width: usize,
) -> Arc<Game> {
    if max_depth == 0 || rng.gen_bool(0.3) {
        return gameform::atom(p, rng.gen_range(0..p.len()));
    }
    let mut side = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(1..=max_width);
        (0..n).map(|_| random_game(rng, p, max_depth - 1, max_width)).collect::<Vec<_>>()
    };
    let left = side(rng);
    let right = side(rng);
    composite(left, right).expect("generated option sets are nonempty")
}

/// A random small Rex board with a few stones already placed.
pub fn random_board(rng: &mut ChaCha8Rng, max_empty: usize) -> Region {
    loop {
        let rows = rng.gen_range(2..=3);
        let cols = rng.gen_range(2..=3);
        let mut text = format!("board {rows} {cols}\n");
        for _ in 0..rows {
            let row: Vec<&str> = (0..cols)
                .map(|_| match rng.gen_range(0..10) {
                    0..=4 => ".",
                    5..=7 => "W",
                    _ => "B",
                })
                .collect();
            text.push_str(&row.join(" "));
            text.push('\n');
        }
        let board = Region::parse_board(&text).expect("generated boards are well-formed");
        let empties = board.empty_cells().len();
        if empties >= 1 && empties <= max_empty {
            return board;
        }
    }
}

/// A random small Shannon region with up to three cells and terminals.
pub fn random_region(rng: &mut ChaCha8Rng) -> Region {
    let n_cells = rng.gen_range(1..=3);
    let cells: Vec<String> = (0..n_cells).map(|i| format!("c{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n_cells {
        for j in i + 1..n_cells {
            if rng.gen_bool(0.6) {
                edges.push((format!("c{i}"), format!("c{j}")));
            }
        }
    }
    let n_terms = rng.gen_range(0..=2usize);
    let terminals: Vec<String> = (0..n_terms).map(|i| format!("t{i}")).collect();
    let mut tedges = Vec::new();
    for t in &terminals {
        for c in &cells {
            if rng.gen_bool(0.5) {
                tedges.push((t.clone(), c.clone()));
            }
        }
    }
    Region::new(RegionKind::Shannon, cells, edges, terminals, tedges, vec![], vec![])
        .expect("generated regions are well-formed")
}

/// A premotive parity game over bool, built from a random board position
/// with optional dead-cell padding.
pub fn random_premotive_bool(rng: &mut ChaCha8Rng) -> Arc<Game> {
    let board = random_board(rng, 4);
    let analysis = RegionAnalysis::analyze(board, &budget()).expect("analysis fits the budget");
    let mut g = analysis.bool_game(&budget()).expect("board games fit the budget");
    if rng.gen_bool(0.3) {
        g = gameform::sum(&g, &gameform::star());
    }
    g
}

// ---------------------------------------------------------------------------
// Equivalence-preserving perturbations

/// Add a redundant left option dominated by an existing one (and dually
/// on the right): the padded game is equivalent to the original.
pub fn gift_horse_pad(g: &Arc<Game>) -> Arc<Game> {
    if g.is_atomic() {
        return g.clone();
    }
    let star2 = gameform::sum(&gameform::star(), &gameform::star());
    let extra_left = gameform::sum(&g.left()[0], &star2);
    let extra_right = gameform::sum(&g.right()[0], &star2);
    let mut left = g.left().to_vec();
    left.push(extra_left);
    let mut right = g.right().to_vec();
    right.push(extra_right);
    composite(left, right).expect("padding keeps option sets nonempty")
}

pub fn star_star_pad(g: &Arc<Game>) -> Arc<Game> {
    gameform::sum(&gameform::sum(g, &gameform::star()), &gameform::star())
}

/// Replace the first atomic subgame with its `⌊x⌋` stand-in.
pub fn atomize_wrap(g: &Arc<Game>) -> Arc<Game> {
    fn rec(g: &Arc<Game>, done: &mut bool) -> Arc<Game> {
        if *done {
            return g.clone();
        }
        match g.kind() {
            Kind::Atom(_) => {
                *done = true;
                atomize(g).expect("atoms can be wrapped")
            }
            Kind::Composite { left, right } => {
                let left: Vec<_> = left.iter().map(|o| rec(o, done)).collect();
                let right: Vec<_> = right.iter().map(|o| rec(o, done)).collect();
                composite(left, right).expect("wrap keeps option sets nonempty")
            }
        }
    }
    rec(g, &mut false)
}

/// Rebuild the game with every option list reversed; interning must make
/// this the identity.
pub fn shuffled_rebuild(g: &Arc<Game>) -> Arc<Game> {
    match g.kind() {
        Kind::Atom(_) => g.clone(),
        Kind::Composite { left, right } => {
            let mut left: Vec<_> = left.iter().map(shuffled_rebuild).collect();
            let mut right: Vec<_> = right.iter().map(shuffled_rebuild).collect();
            left.reverse();
            right.reverse();
            composite(left, right).expect("rebuild keeps option sets nonempty")
        }
    }
}

// ---------------------------------------------------------------------------
// Independent naive evaluator

/// Winning-strategy evaluation transcribed directly from the recursive
/// definition, with no memoization and no shared state.
pub fn naive_left_wins(g: &Arc<Game>, mover: Player, lastmove: bool) -> bool {
    match g.kind() {
        Kind::Atom(e) => {
            let won = *e == g.poset().top();
            if lastmove {
                match mover {
                    Player::Left => false,
                    Player::Right => won,
                }
            } else {
                won
            }
        }
        Kind::Composite { left, right } => match mover {
            Player::Left => left.iter().any(|o| naive_left_wins(o, Player::Right, lastmove)),
            Player::Right => right.iter().all(|o| naive_left_wins(o, Player::Left, lastmove)),
        },
    }
}

/// The intrinsic order transcribed directly from its mutual recursion,
/// with no memoization.
pub fn naive_leq(g: &Arc<Game>, h: &Arc<Game>) -> bool {
    if let (Some(a), Some(b)) = (g.atom_elem(), h.atom_elem()) {
        if !g.poset().leq(a, b) {
            return false;
        }
    }
    g.left().iter().all(|gl| naive_tri(gl, h)) && h.right().iter().all(|hr| naive_tri(g, hr))
}

pub fn naive_tri(g: &Arc<Game>, h: &Arc<Game>) -> bool {
    g.right().iter().any(|gr| naive_leq(gr, h)) || h.left().iter().any(|hl| naive_leq(g, hl))
}
