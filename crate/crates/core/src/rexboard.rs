//! Rex boards, reverse Shannon regions, and antimonotone set coloring
//! games: completions, outcome posets, game forms of positions, glue
//! maps for board decomposition, and a brute-force minimax oracle on raw
//! positions.
//!
//! Shannon regions model the completion order through terminal
//! partitions: the outcome of a completion is the partition of the
//! black-terminal set induced by black connectivity, ordered by reverse
//! refinement. Free regions use black subsets under reverse inclusion.
//! Only partitions realized by some completion enter the outcome poset.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Budget, Error, Result};
use crate::gameform::{self, Game};
use crate::order::{OutcomeClass, Player};
use crate::poset::{self, ElemId, MonotoneMap, Poset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stone {
    Black,
    White,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    Shannon,
    Free,
}

/// A region of a board: cells with a symmetric adjacency, labeled black
/// terminals attached to cells, and a partial stone assignment. Boards
/// parse into Shannon regions with virtual `N`/`S` terminals.
#[derive(Debug, Clone)]
pub struct Region {
    kind: RegionKind,
    cells: Vec<String>,
    adj: Vec<Vec<usize>>,
    terminals: Vec<String>,
    tadj: Vec<Vec<usize>>,
    stones: Vec<Option<Stone>>,
    from_board: bool,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Sort key treating short names first, so "2" < "10" style labels order
/// naturally.
fn nat_key(s: &str) -> (usize, &str) {
    (s.len(), s)
}

impl Region {
    pub fn new(
        kind: RegionKind,
        cells: Vec<String>,
        edges: Vec<(String, String)>,
        terminals: Vec<String>,
        tedges: Vec<(String, String)>,
        black: Vec<String>,
        white: Vec<String>,
    ) -> Result<Region> {
        for name in cells.iter().chain(&terminals) {
            if !valid_name(name) {
                return Err(Error::Input(format!("invalid cell or terminal name {name:?}")));
            }
        }
        let mut cell_idx = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            if cell_idx.insert(c.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate cell {c:?}")));
            }
        }
        let mut term_idx = HashMap::new();
        for (i, t) in terminals.iter().enumerate() {
            if term_idx.insert(t.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate terminal {t:?}")));
            }
        }
        if kind == RegionKind::Free && !terminals.is_empty() {
            return Err(Error::Input("free regions have no terminals".into()));
        }
        let lookup_cell = |name: &str| -> Result<usize> {
            cell_idx
                .get(name)
                .copied()
                .ok_or_else(|| Error::Input(format!("edge references unknown cell {name:?}")))
        };
        let mut adj = vec![BTreeSet::new(); cells.len()];
        for (a, b) in &edges {
            let (ia, ib) = (lookup_cell(a)?, lookup_cell(b)?);
            if ia == ib {
                return Err(Error::Input(format!("self-loop on cell {a:?}")));
            }
            adj[ia].insert(ib);
            adj[ib].insert(ia);
        }
        let mut tadj = vec![BTreeSet::new(); terminals.len()];
        for (t, c) in &tedges {
            let it = term_idx
                .get(t)
                .copied()
                .ok_or_else(|| Error::Input(format!("tedge references unknown terminal {t:?}")))?;
            tadj[it].insert(lookup_cell(c)?);
        }
        let mut stones = vec![None; cells.len()];
        for (names, stone) in [(&black, Stone::Black), (&white, Stone::White)] {
            for name in names.iter() {
                let i = lookup_cell(name)?;
                if stones[i].is_some() {
                    return Err(Error::Input(format!("cell {name:?} assigned two stones")));
                }
                stones[i] = Some(stone);
            }
        }
        Ok(Region {
            kind,
            cells,
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            terminals,
            tadj: tadj.into_iter().map(|s| s.into_iter().collect()).collect(),
            stones,
            from_board: false,
        })
    }

    pub fn kind(&self) -> RegionKind {
        self.kind
    }
    pub fn cells(&self) -> &[String] {
        &self.cells
    }
    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }
    pub fn stone(&self, cell: usize) -> Option<Stone> {
        self.stones[cell]
    }
    pub fn is_board(&self) -> bool {
        self.from_board
    }

    /// Indices of cells with no stone, in cell order.
    pub fn empty_cells(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.stones[i].is_none()).collect()
    }

    pub fn cell_index(&self, name: &str) -> Result<usize> {
        self.cells
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Input(format!("unknown cell {name:?}")))
    }

    /// Copy of the region with one more stone placed.
    pub fn with_stone(&self, cell: usize, stone: Stone) -> Result<Region> {
        if self.stones[cell].is_some() {
            return Err(Error::Input(format!("cell {} is already filled", self.cells[cell])));
        }
        let mut r = self.clone();
        r.stones[cell] = Some(stone);
        Ok(r)
    }

    /// Parse the line-oriented region format. `#` starts a comment.
    pub fn parse_region(text: &str) -> Result<Region> {
        let mut kind = None;
        let mut cells = Vec::new();
        let mut edges = Vec::new();
        let mut terminals = Vec::new();
        let mut tedges = Vec::new();
        let mut black = Vec::new();
        let mut white = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let head = tok.next().unwrap();
            let rest: Vec<&str> = tok.collect();
            let ctx = |msg: &str| Error::Input(format!("line {}: {msg}", lineno + 1));
            match head {
                "region" => {
                    kind = Some(match rest.as_slice() {
                        ["shannon"] => RegionKind::Shannon,
                        ["free"] => RegionKind::Free,
                        _ => return Err(ctx("region must be `shannon` or `free`")),
                    });
                }
                "cells" => cells.extend(rest.iter().map(|s| s.to_string())),
                "terminals" => terminals.extend(rest.iter().map(|s| s.to_string())),
                "black" => black.extend(rest.iter().map(|s| s.to_string())),
                "white" => white.extend(rest.iter().map(|s| s.to_string())),
                "edges" => {
                    for e in rest {
                        let (a, b) = e
                            .split_once('-')
                            .ok_or_else(|| ctx("edges are written a-b"))?;
                        edges.push((a.to_string(), b.to_string()));
                    }
                }
                "tedges" => {
                    for e in rest {
                        let (t, c) = e
                            .split_once('-')
                            .ok_or_else(|| ctx("tedges are written T-cell"))?;
                        tedges.push((t.to_string(), c.to_string()));
                    }
                }
                other => return Err(ctx(&format!("unknown directive {other:?}"))),
            }
        }
        let kind = kind.ok_or_else(|| Error::Input("missing `region` line".into()))?;
        Region::new(kind, cells, edges, terminals, tedges, black, white)
    }

    /// Parse a rectangular board: `board <rows> <cols>` then one glyph
    /// row per line with cells in `.BW`. Hex adjacency links (r,c) to
    /// (r,c±1), (r±1,c), (r−1,c+1) and (r+1,c−1); virtual terminals `N`
    /// and `S` attach to the first and last rows.
    pub fn parse_board(text: &str) -> Result<Region> {
        let mut lines = text
            .lines()
            .map(|raw| raw.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Input("missing `board` line".into()))?;
        let mut tok = header.split_whitespace();
        if tok.next() != Some("board") {
            return Err(Error::Input("board files start with `board <rows> <cols>`".into()));
        }
        let rows: usize = tok
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Input("bad row count".into()))?;
        let cols: usize = tok
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Input("bad column count".into()))?;
        if rows == 0 || cols == 0 {
            return Err(Error::Input("board must have positive dimensions".into()));
        }
        let mut stones_by_cell: Vec<Option<Stone>> = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Input(format!("missing board row {}", r + 1)))?;
            let glyphs: Vec<&str> = line.split_whitespace().collect();
            if glyphs.len() != cols {
                return Err(Error::Input(format!(
                    "row {} has {} cells, expected {cols}",
                    r + 1,
                    glyphs.len()
                )));
            }
            for g in glyphs {
                stones_by_cell.push(match g {
                    "." => None,
                    "B" => Some(Stone::Black),
                    "W" => Some(Stone::White),
                    other => {
                        return Err(Error::Input(format!("invalid glyph {other:?} in row {}", r + 1)))
                    }
                });
            }
        }
        if lines.next().is_some() {
            return Err(Error::Input("trailing lines after board rows".into()));
        }
        let name = |r: usize, c: usize| format!("r{}c{}", r + 1, c + 1);
        let cells: Vec<String> =
            (0..rows).flat_map(|r| (0..cols).map(move |c| name(r, c))).collect();
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((name(r, c), name(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((name(r, c), name(r + 1, c)));
                    if c > 0 {
                        edges.push((name(r, c), name(r + 1, c - 1)));
                    }
                }
            }
        }
        let terminals = vec!["N".to_string(), "S".to_string()];
        let mut tedges = Vec::new();
        for c in 0..cols {
            tedges.push(("N".to_string(), name(0, c)));
            tedges.push(("S".to_string(), name(rows - 1, c)));
        }
        let black: Vec<String> = cells
            .iter()
            .zip(&stones_by_cell)
            .filter(|(_, s)| **s == Some(Stone::Black))
            .map(|(c, _)| c.clone())
            .collect();
        let white: Vec<String> = cells
            .iter()
            .zip(&stones_by_cell)
            .filter(|(_, s)| **s == Some(Stone::White))
            .map(|(c, _)| c.clone())
            .collect();
        let mut region =
            Region::new(RegionKind::Shannon, cells, edges, terminals, tedges, black, white)?;
        region.from_board = true;
        Ok(region)
    }
}

// ---------------------------------------------------------------------------
// Completions and outcomes

/// The outcome of one completion: the partition of the terminal set by
/// black connectivity for Shannon regions, the black subset for free
/// regions. Blocks and sets are kept sorted for canonical comparison.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompletionOutcome {
    Partition(Vec<Vec<String>>),
    BlackSet(Vec<String>),
}

impl CompletionOutcome {
    /// Poset order: reverse refinement for partitions (coarser is
    /// smaller), reverse inclusion for black sets.
    pub fn leq(&self, other: &CompletionOutcome) -> Option<bool> {
        match (self, other) {
            (CompletionOutcome::Partition(p), CompletionOutcome::Partition(q)) => Some(
                q.iter().all(|qb| p.iter().any(|pb| qb.iter().all(|t| pb.contains(t)))),
            ),
            (CompletionOutcome::BlackSet(s), CompletionOutcome::BlackSet(t)) => {
                Some(t.iter().all(|c| s.contains(c)))
            }
            _ => None,
        }
    }

    /// Element name: nontrivial blocks like `(1,2)` concatenated, `top`
    /// when nothing is joined; black sets print their members.
    pub fn name(&self) -> String {
        match self {
            CompletionOutcome::Partition(blocks) => {
                let nontrivial: Vec<String> = blocks
                    .iter()
                    .filter(|b| b.len() > 1)
                    .map(|b| format!("({})", b.join(",")))
                    .collect();
                if nontrivial.is_empty() {
                    "top".to_string()
                } else {
                    nontrivial.concat()
                }
            }
            CompletionOutcome::BlackSet(set) => {
                if set.is_empty() {
                    "top".to_string()
                } else {
                    format!("({})", set.join(","))
                }
            }
        }
    }
}

/// The outcome of a total completion of the region's empty cells, given
/// as stones in `empty_cells()` order.
pub fn outcome_of_completion(region: &Region, completion: &[Stone]) -> Result<CompletionOutcome> {
    let empty = region.empty_cells();
    if completion.len() != empty.len() {
        return Err(Error::Input(format!(
            "completion assigns {} cells, region has {} empty cells",
            completion.len(),
            empty.len()
        )));
    }
    let mut mask = 0u32;
    for (bit, &stone) in completion.iter().enumerate() {
        if stone == Stone::Black {
            mask |= 1 << bit;
        }
    }
    Ok(outcome_of_mask(region, &empty, mask))
}

/// Black cells for a completion bitmask: preplaced black stones plus the
/// black-assigned empty cells.
fn black_cells(region: &Region, empty: &[usize], mask: u32) -> Vec<bool> {
    let mut black: Vec<bool> = region.stones.iter().map(|s| *s == Some(Stone::Black)).collect();
    for (bit, &cell) in empty.iter().enumerate() {
        if mask & (1 << bit) != 0 {
            black[cell] = true;
        }
    }
    black
}

fn outcome_of_mask(region: &Region, empty: &[usize], mask: u32) -> CompletionOutcome {
    let black = black_cells(region, empty, mask);
    match region.kind {
        RegionKind::Free => {
            let mut set: Vec<String> = black
                .iter()
                .enumerate()
                .filter(|(_, b)| **b)
                .map(|(i, _)| region.cells[i].clone())
                .collect();
            set.sort_by(|a, b| nat_key(a).cmp(&nat_key(b)));
            CompletionOutcome::BlackSet(set)
        }
        RegionKind::Shannon => {
            // union-find over terminals ++ cells; only black cells conduct
            let t = region.terminals.len();
            let mut parent: Vec<usize> = (0..t + region.cells.len()).collect();
            fn find(parent: &mut Vec<usize>, x: usize) -> usize {
                let mut root = x;
                while parent[root] != root {
                    root = parent[root];
                }
                let mut cur = x;
                while parent[cur] != root {
                    let next = parent[cur];
                    parent[cur] = root;
                    cur = next;
                }
                root
            }
            let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
                let (ra, rb) = (find(parent, a), find(parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            };
            for (term, cells) in region.tadj.iter().enumerate() {
                for &c in cells {
                    if black[c] {
                        union(&mut parent, term, t + c);
                    }
                }
            }
            for (a, neighbors) in region.adj.iter().enumerate() {
                if !black[a] {
                    continue;
                }
                for &b in neighbors {
                    if black[b] {
                        union(&mut parent, t + a, t + b);
                    }
                }
            }
            let mut blocks: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for term in 0..t {
                let root = find(&mut parent, term);
                blocks.entry(root).or_default().push(region.terminals[term].clone());
            }
            let mut blocks: Vec<Vec<String>> = blocks
                .into_values()
                .map(|mut b| {
                    b.sort_by(|a, b| nat_key(a).cmp(&nat_key(b)));
                    b
                })
                .collect();
            blocks.sort_by(|a, b| nat_key(&a[0]).cmp(&nat_key(&b[0])));
            CompletionOutcome::Partition(blocks)
        }
    }
}

// ---------------------------------------------------------------------------
// Outcome posets and game forms

/// A region together with its outcome poset and the completion-to-element
/// map. Regions whose completions all land on one outcome get the
/// one-element poset, so a fully dead cell yields the game `*`.
pub struct RegionAnalysis {
    pub region: Region,
    pub poset: Arc<Poset>,
    outcomes: Vec<CompletionOutcome>,
    elem_of_mask: Vec<ElemId>,
}

impl RegionAnalysis {
    pub fn analyze(region: Region, budget: &Budget) -> Result<RegionAnalysis> {
        let empty = region.empty_cells();
        if empty.len() > 24 {
            return Err(Error::Input(format!(
                "region has {} empty cells; exhaustive analysis is capped at 24",
                empty.len()
            )));
        }
        let n = 1u32 << empty.len();
        budget.tick(n as u64, "region analysis")?;
        let mut by_outcome: BTreeMap<CompletionOutcome, Vec<u32>> = BTreeMap::new();
        for mask in 0..n {
            by_outcome.entry(outcome_of_mask(&region, &empty, mask)).or_default().push(mask);
        }
        let outcomes: Vec<CompletionOutcome> = by_outcome.keys().cloned().collect();
        let poset = if outcomes.len() == 1 {
            poset::one()
        } else {
            let names: Vec<String> = outcomes.iter().map(CompletionOutcome::name).collect();
            let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut pairs = Vec::new();
            for (i, a) in outcomes.iter().enumerate() {
                for (j, b) in outcomes.iter().enumerate() {
                    if i != j && a.leq(b) == Some(true) {
                        pairs.push((name_refs[i], name_refs[j]));
                    }
                }
            }
            let poset_name = format!(
                "outcomes({})",
                match region.kind {
                    RegionKind::Shannon => region.terminals.join(","),
                    RegionKind::Free => region.cells.join(","),
                }
            );
            Poset::new(&poset_name, &name_refs, &pairs)?
        };
        let mut elem_of_mask = vec![0; n as usize];
        for outcome in outcomes.iter() {
            let elem = if poset.len() == 1 { 0 } else { poset.elem(&outcome.name())? };
            for &mask in &by_outcome[outcome] {
                elem_of_mask[mask as usize] = elem;
            }
        }
        Ok(RegionAnalysis { region, poset, outcomes, elem_of_mask })
    }

    pub fn outcome_of_elem(&self, e: ElemId) -> &CompletionOutcome {
        &self.outcomes[if self.poset.len() == 1 { 0 } else { e }]
    }

    pub fn elem_of_completion(&self, completion: &[Stone]) -> Result<ElemId> {
        let empty = self.region.empty_cells();
        if completion.len() != empty.len() {
            return Err(Error::Input("completion does not cover the empty cells".into()));
        }
        let mut mask = 0u32;
        for (bit, &stone) in completion.iter().enumerate() {
            if stone == Stone::Black {
                mask |= 1 << bit;
            }
        }
        Ok(self.elem_of_mask[mask as usize])
    }

    /// The game form of the position: Left options place black stones,
    /// Right options place white stones, atomic positions map through
    /// the completion outcome.
    pub fn game_form(&self, budget: &Budget) -> Result<Arc<Game>> {
        let empty = self.region.empty_cells();
        let mut memo: HashMap<(u32, u32), Arc<Game>> = HashMap::new();
        self.gf_rec(0, 0, empty.len(), &mut memo, budget)
    }

    fn gf_rec(
        &self,
        black: u32,
        white: u32,
        n: usize,
        memo: &mut HashMap<(u32, u32), Arc<Game>>,
        budget: &Budget,
    ) -> Result<Arc<Game>> {
        if let Some(g) = memo.get(&(black, white)) {
            return Ok(g.clone());
        }
        budget.tick(1, "game form construction")?;
        let filled = black | white;
        let full = (1u32 << n) - 1;
        let game = if filled == full {
            gameform::atom(&self.poset, self.elem_of_mask[black as usize])
        } else {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for bit in 0..n {
                let b = 1u32 << bit;
                if filled & b == 0 {
                    left.push(self.gf_rec(black | b, white, n, memo, budget)?);
                    right.push(self.gf_rec(black, white | b, n, memo, budget)?);
                }
            }
            gameform::composite(left, right)?
        };
        memo.insert((black, white), game.clone());
        Ok(game)
    }

    /// For boards: the game form pushed onto the boolean poset through
    /// the `N`/`S` connectivity payoff (top = terminals separated).
    pub fn bool_game(&self, budget: &Budget) -> Result<Arc<Game>> {
        let payoff = self.board_payoff_map()?;
        gameform::map(&payoff, &self.game_form(budget)?)
    }

    fn board_payoff_map(&self) -> Result<MonotoneMap> {
        if !self.region.from_board {
            return Err(Error::Input("bool_game is defined for parsed boards".into()));
        }
        let b = poset::bool_poset();
        let table: Vec<ElemId> = (0..self.poset.len())
            .map(|e| match self.outcome_of_elem(e) {
                CompletionOutcome::Partition(blocks) => {
                    let joined = blocks
                        .iter()
                        .any(|blk| blk.contains(&"N".to_string()) && blk.contains(&"S".to_string()));
                    if joined {
                        b.bottom()
                    } else {
                        b.top()
                    }
                }
                CompletionOutcome::BlackSet(_) => b.top(),
            })
            .collect();
        MonotoneMap::new("board_payoff", self.poset.clone(), b, table)
            .map_err(|e| Error::Internal(format!("board payoff map must be monotone: {e}")))
    }
}

// ---------------------------------------------------------------------------
// Glue maps

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermRef {
    pub part: usize,
    pub terminal: usize,
}

pub struct GlueSpec {
    pub parts: Vec<(String, RegionAnalysis)>,
    pub identifications: Vec<(TermRef, TermRef)>,
    pub goal: (TermRef, TermRef),
}

impl GlueSpec {
    /// Parse a glue manifest; region files are resolved against `base`.
    pub fn parse(text: &str, base: &Path, budget: &Budget) -> Result<GlueSpec> {
        let mut parts: Vec<(String, RegionAnalysis)> = Vec::new();
        let mut identifications = Vec::new();
        let mut goal = None;
        let lookup = |parts: &[(String, RegionAnalysis)], spec: &str| -> Result<TermRef> {
            let (pname, tname) = spec
                .split_once('.')
                .ok_or_else(|| Error::Input(format!("terminal reference {spec:?} is written part.T")))?;
            let part = parts
                .iter()
                .position(|(n, _)| n == pname)
                .ok_or_else(|| Error::Input(format!("unknown part {pname:?}")))?;
            let terminal = parts[part]
                .1
                .region
                .terminals
                .iter()
                .position(|t| t == tname)
                .ok_or_else(|| Error::Input(format!("unknown terminal {tname:?} in part {pname:?}")))?;
            Ok(TermRef { part, terminal })
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let ctx = |msg: &str| Error::Input(format!("line {}: {msg}", lineno + 1));
            match toks.as_slice() {
                ["part", name, file] => {
                    if !valid_name(name) {
                        return Err(ctx("invalid part name"));
                    }
                    let path = base.join(file);
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        Error::Input(format!("cannot read region file {}: {e}", path.display()))
                    })?;
                    let region = Region::parse_region(&text)?;
                    if region.kind != RegionKind::Shannon {
                        return Err(ctx("glue parts must be shannon regions"));
                    }
                    parts.push((name.to_string(), RegionAnalysis::analyze(region, budget)?));
                }
                ["identify", a, "=", b] => {
                    identifications.push((lookup(&parts, a)?, lookup(&parts, b)?));
                }
                ["identify", rest] => {
                    let (a, b) = rest
                        .split_once('=')
                        .ok_or_else(|| ctx("identify is written a.T = b.T"))?;
                    identifications.push((lookup(&parts, a)?, lookup(&parts, b)?));
                }
                ["goal", a, b] => {
                    goal = Some((lookup(&parts, a)?, lookup(&parts, b)?));
                }
                _ => return Err(ctx("unknown or malformed directive")),
            }
        }
        if parts.is_empty() {
            return Err(Error::Input("glue manifest declares no parts".into()));
        }
        let goal = goal.ok_or_else(|| Error::Input("glue manifest needs a goal line".into()))?;
        Ok(GlueSpec { parts, identifications, goal })
    }

    /// The glue map from the product of the part posets to bool: top
    /// exactly when, after merging partition blocks within parts and
    /// across identified terminals, the two goal terminals lie in
    /// different blocks.
    pub fn build_glue_map(&self) -> Result<MonotoneMap> {
        let b = poset::bool_poset();
        let mut dom = poset::one();
        for (_, analysis) in &self.parts {
            dom = poset::product(&dom, &analysis.poset);
        }
        // enumerate tuples over part posets and fold them into the domain
        let sizes: Vec<usize> = self.parts.iter().map(|(_, a)| a.poset.len()).collect();
        let total: usize = sizes.iter().product();
        let mut table = vec![0; dom.len()];
        let term_node = |tr: TermRef| -> usize {
            self.parts[..tr.part].iter().map(|(_, a)| a.region.terminals.len()).sum::<usize>()
                + tr.terminal
        };
        let node_count: usize =
            self.parts.iter().map(|(_, a)| a.region.terminals.len()).sum();
        for code in 0..total {
            let mut rest = code;
            let mut tuple = vec![0usize; sizes.len()];
            for i in (0..sizes.len()).rev() {
                tuple[i] = rest % sizes[i];
                rest /= sizes[i];
            }
            let mut dom_poset = poset::one();
            let mut elem = 0;
            for (i, (_, analysis)) in self.parts.iter().enumerate() {
                let (p, e) = poset::pair_elem(&dom_poset, elem, &analysis.poset, tuple[i]);
                dom_poset = p;
                elem = e;
            }
            debug_assert_eq!(dom_poset, dom);
            let mut parent: Vec<usize> = (0..node_count).collect();
            fn find(parent: &mut Vec<usize>, x: usize) -> usize {
                let mut root = x;
                while parent[root] != root {
                    root = parent[root];
                }
                root
            }
            let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
                let (ra, rb) = (find(parent, a), find(parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            };
            for (i, (_, analysis)) in self.parts.iter().enumerate() {
                if let CompletionOutcome::Partition(blocks) = analysis.outcome_of_elem(tuple[i]) {
                    for block in blocks {
                        for pair in block.windows(2) {
                            let a = analysis.region.terminals.iter().position(|t| t == &pair[0]);
                            let bidx = analysis.region.terminals.iter().position(|t| t == &pair[1]);
                            if let (Some(a), Some(bi)) = (a, bidx) {
                                union(
                                    &mut parent,
                                    term_node(TermRef { part: i, terminal: a }),
                                    term_node(TermRef { part: i, terminal: bi }),
                                );
                            }
                        }
                    }
                } else {
                    return Err(Error::Input("glue parts must have partition outcomes".into()));
                }
            }
            for (a, bref) in &self.identifications {
                union(&mut parent, term_node(*a), term_node(*bref));
            }
            let separated =
                find(&mut parent, term_node(self.goal.0)) != find(&mut parent, term_node(self.goal.1));
            table[elem] = if separated { b.top() } else { b.bottom() };
        }
        MonotoneMap::new("glue", dom, b, table)
            .map_err(|e| Error::Internal(format!("glue map failed monotonicity: {e}")))
    }

    /// Full decomposition pipeline: game forms of all parts, disjunctive
    /// sum, glue map application.
    pub fn composed_game(&self, budget: &Budget) -> Result<Arc<Game>> {
        let glue = self.build_glue_map()?;
        let mut game = gameform::zero();
        for (_, analysis) in &self.parts {
            game = gameform::sum(&game, &analysis.game_form(budget)?);
        }
        gameform::map(&glue, &game)
    }
}

// ---------------------------------------------------------------------------
// Brute-force minimax oracle

/// A raw set coloring game: cells plus a payoff on black subsets. This
/// is the independent cross-validation path; it never touches game
/// forms.
pub struct SetColoringGame {
    cells: Vec<String>,
    payoff: Box<dyn Fn(u32) -> bool + Send + Sync>,
}

impl SetColoringGame {
    pub fn from_table(cells: Vec<String>, table: Vec<bool>) -> Result<SetColoringGame> {
        if table.len() != 1 << cells.len() {
            return Err(Error::Input("payoff table must cover all black subsets".into()));
        }
        Ok(SetColoringGame { cells, payoff: Box::new(move |mask| table[mask as usize]) })
    }

    /// Play-out view of a board position: cells are the empty cells and
    /// the payoff is "no black path joins N to S" on the completed board.
    pub fn from_board(region: &Region) -> Result<SetColoringGame> {
        if !region.from_board {
            return Err(Error::Input("the minimax oracle plays full boards".into()));
        }
        let empty = region.empty_cells();
        if empty.len() > 24 {
            return Err(Error::Input("board has too many empty cells for the oracle".into()));
        }
        let cells = empty.iter().map(|&i| region.cells[i].clone()).collect();
        let region = region.clone();
        let payoff = move |mask: u32| -> bool {
            match outcome_of_mask(&region, &empty, mask) {
                CompletionOutcome::Partition(blocks) => !blocks
                    .iter()
                    .any(|b| b.contains(&"N".to_string()) && b.contains(&"S".to_string())),
                CompletionOutcome::BlackSet(_) => true,
            }
        };
        Ok(SetColoringGame { cells, payoff: Box::new(payoff) })
    }

    pub fn cells(&self) -> &[String] {
        &self.cells
    }

    pub fn payoff(&self, black_mask: u32) -> bool {
        (self.payoff)(black_mask)
    }

    /// Antimonotone means extra black never helps Left; checked stepwise
    /// over every subset and cell.
    pub fn is_antimonotone(&self) -> bool {
        let n = self.cells.len();
        for mask in 0..(1u32 << n) {
            for bit in 0..n {
                let b = 1u32 << bit;
                if mask & b == 0 && self.payoff(mask | b) && !self.payoff(mask) {
                    return false;
                }
            }
        }
        true
    }

    /// Exhaustive alternating play. Left wins a terminal position iff
    /// the payoff on the final black set is top.
    pub fn minimax(&self, mover: Player, budget: &Budget) -> Result<bool> {
        let mut memo = HashMap::new();
        self.minimax_rec(0, 0, mover, &mut memo, budget)
    }

    fn minimax_rec(
        &self,
        black: u32,
        white: u32,
        mover: Player,
        memo: &mut HashMap<(u32, u32, Player), bool>,
        budget: &Budget,
    ) -> Result<bool> {
        let n = self.cells.len();
        let full = (1u32 << n) - 1;
        let filled = black | white;
        if filled == full {
            return Ok(self.payoff(black));
        }
        if let Some(&r) = memo.get(&(black, white, mover)) {
            return Ok(r);
        }
        budget.tick(1, "minimax oracle")?;
        let mut result = mover == Player::Right;
        for bit in 0..n {
            let b = 1u32 << bit;
            if filled & b != 0 {
                continue;
            }
            match mover {
                Player::Left => {
                    if self.minimax_rec(black | b, white, Player::Right, memo, budget)? {
                        result = true;
                        break;
                    }
                }
                Player::Right => {
                    if !self.minimax_rec(black, white | b, Player::Left, memo, budget)? {
                        result = false;
                        break;
                    }
                }
            }
        }
        memo.insert((black, white, mover), result);
        Ok(result)
    }

    /// A cell is dead when no completion of the rest is decided by it.
    pub fn is_dead(&self, cell: usize) -> bool {
        let n = self.cells.len();
        let b = 1u32 << cell;
        for mask in 0..(1u32 << n) {
            if mask & b == 0 && self.payoff(mask) != self.payoff(mask | b) {
                return false;
            }
        }
        true
    }

    pub fn dead_cells(&self) -> Vec<String> {
        (0..self.cells.len()).filter(|&i| self.is_dead(i)).map(|i| self.cells[i].clone()).collect()
    }
}

/// Outcome of a board position by exhaustive play for both movers.
pub fn board_outcome(region: &Region, budget: &Budget) -> Result<OutcomeClass> {
    let scg = SetColoringGame::from_board(region)?;
    Ok(OutcomeClass {
        o_left: scg.minimax(Player::Left, budget)?,
        o_right: scg.minimax(Player::Right, budget)?,
    })
}

// ---------------------------------------------------------------------------
// Concrete position-level order checks

/// Position-level facts verified by the raw oracle on a full board:
/// two-stone monotonicity, dead cells and the dead-cell exchange, and
/// the even-position lookahead.
#[derive(Debug, Clone)]
pub struct ConcreteChecks {
    pub dead_cells: Vec<String>,
    pub two_stone_monotonicity: bool,
    pub dead_exchange: bool,
    pub lookahead: bool,
    pub violations: Vec<String>,
}

impl fmt::Display for ConcreteChecks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dead_cells: {}", if self.dead_cells.is_empty() { "-".to_string() } else { self.dead_cells.join(" ") })?;
        writeln!(f, "two_stone_monotonicity: {}", self.two_stone_monotonicity)?;
        writeln!(f, "dead_exchange: {}", self.dead_exchange)?;
        writeln!(f, "lookahead: {}", self.lookahead)?;
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

pub fn concrete_order_checks(region: &Region, budget: &Budget) -> Result<ConcreteChecks> {
    if !region.from_board {
        return Err(Error::Input("concrete order checks run on parsed boards".into()));
    }
    let empty = region.empty_cells();
    let scg = SetColoringGame::from_board(region)?;
    let dead_cells = scg.dead_cells();
    let mut violations = Vec::new();

    let outcome_with = |stones: &[(usize, Stone)], budget: &Budget| -> Result<OutcomeClass> {
        let mut r = region.clone();
        for &(cell, stone) in stones {
            r = r.with_stone(cell, stone)?;
        }
        board_outcome(&r, budget)
    };

    // two black stones are worse than two empties, two empties worse
    // than two white stones
    let base = board_outcome(region, budget)?;
    let mut two_stone = true;
    for (i, &a) in empty.iter().enumerate() {
        for &b in &empty[i + 1..] {
            let bb = outcome_with(&[(a, Stone::Black), (b, Stone::Black)], budget)?;
            let ww = outcome_with(&[(a, Stone::White), (b, Stone::White)], budget)?;
            if !bb.leq(base) || !base.leq(ww) {
                two_stone = false;
                violations.push(format!(
                    "two-stone monotonicity fails on {},{}",
                    region.cells[a], region.cells[b]
                ));
            }
        }
    }

    // a black stone plus a dead cell is at most an empty cell, which is
    // at most a white stone plus a dead cell
    let mut dead_exchange = true;
    for dead in &dead_cells {
        let d = region.cell_index(dead)?;
        let dead_b = outcome_with(&[(d, Stone::Black)], budget)?;
        let dead_w = outcome_with(&[(d, Stone::White)], budget)?;
        if dead_b != dead_w {
            dead_exchange = false;
            violations.push(format!("cell {dead} is dead but its color changes the outcome"));
            continue;
        }
        for &x in &empty {
            if x == d {
                continue;
            }
            let xb = outcome_with(&[(x, Stone::Black)], budget)?;
            let xw = outcome_with(&[(x, Stone::White)], budget)?;
            if !xb.leq(dead_b) || !dead_w.leq(xw) {
                dead_exchange = false;
                violations.push(format!(
                    "dead-cell exchange fails on {} with dead {}",
                    region.cells[x], dead
                ));
            }
        }
    }

    // lookahead on the position itself: an even position with a Left
    // second-player win also has a Left first-player win
    let mut lookahead = true;
    if empty.len() % 2 == 0 && base.o_right && !base.o_left {
        lookahead = false;
        violations.push("even position is a second-player win but not a first-player win".into());
    }

    Ok(ConcreteChecks { dead_cells, two_stone_monotonicity: two_stone, dead_exchange, lookahead, violations })
}
