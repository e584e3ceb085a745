//! The intrinsic order on games, winning-strategy evaluation over the
//! boolean poset, and a bounded contextual-order oracle for tests.
//!
//! `leq` and `tri` implement the mutual recursion directly; both are
//! memoized on hash-consed game id pairs because the recursion revisits
//! pairs exponentially often. The contextual oracle enumerates contexts
//! over `F(A)` up to a depth/width bound under a node budget; it is a
//! falsification tool, never the definitional path.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Budget, Error, Result};
use crate::gameform::{self, Game, GameId, Kind};
use crate::poset::{self, Poset};

/// The two players. Everything is oriented through Left's eyes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

fn check_same_poset(g: &Arc<Game>, h: &Arc<Game>) -> Result<()> {
    if g.poset() != h.poset() {
        return Err(Error::Input(format!(
            "games over different posets: {} vs {}",
            g.poset().name(),
            h.poset().name()
        )));
    }
    Ok(())
}

static LEQ_MEMO: Lazy<Mutex<HashMap<(GameId, GameId), bool>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
static TRI_MEMO: Lazy<Mutex<HashMap<(GameId, GameId), bool>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The intrinsic `G ≤ H`: every left option of `G` is `⊲ H`, `G ⊲` every
/// right option of `H`, and atoms compare in the poset.
pub fn leq(g: &Arc<Game>, h: &Arc<Game>) -> Result<bool> {
    check_same_poset(g, h)?;
    Ok(leq_rec(g, h))
}

/// The intrinsic `G ⊲ H`: some right option of `G` is `≤ H`, or `G ≤`
/// some left option of `H`.
pub fn tri(g: &Arc<Game>, h: &Arc<Game>) -> Result<bool> {
    check_same_poset(g, h)?;
    Ok(tri_rec(g, h))
}

/// Intrinsic equivalence: `≤` in both directions.
pub fn equiv(g: &Arc<Game>, h: &Arc<Game>) -> Result<bool> {
    Ok(leq(g, h)? && leq(h, g)?)
}

fn leq_rec(g: &Arc<Game>, h: &Arc<Game>) -> bool {
    if let Some(&r) = LEQ_MEMO.lock().unwrap().get(&(g.id(), h.id())) {
        return r;
    }
    let result = (|| {
        if let (Some(a), Some(b)) = (g.atom_elem(), h.atom_elem()) {
            if !g.poset().leq(a, b) {
                return false;
            }
        }
        g.left().iter().all(|gl| tri_rec(gl, h)) && h.right().iter().all(|hr| tri_rec(g, hr))
    })();
    LEQ_MEMO.lock().unwrap().insert((g.id(), h.id()), result);
    result
}

fn tri_rec(g: &Arc<Game>, h: &Arc<Game>) -> bool {
    if let Some(&r) = TRI_MEMO.lock().unwrap().get(&(g.id(), h.id())) {
        return r;
    }
    let result = g.right().iter().any(|gr| leq_rec(gr, h))
        || h.left().iter().any(|hl| leq_rec(g, hl));
    TRI_MEMO.lock().unwrap().insert((g.id(), h.id()), result);
    result
}

/// The comparison game `λ(G^op + H)` over the boolean poset. Left wins
/// it making the last move exactly when `G ≤ H`.
pub fn comparison_game(g: &Arc<Game>, h: &Arc<Game>) -> Result<Arc<Game>> {
    check_same_poset(g, h)?;
    let lam = poset::lambda_map(g.poset());
    let s = gameform::sum(&gameform::dual(g), h);
    gameform::map(&lam, &s)
}

/// Winning-strategy evaluation for games over the boolean poset.
///
/// With `lastmove_required`, Left must always have a move on their turn:
/// an atomic game reached on Left's turn is a Left loss, and an atom
/// reached on Right's turn wins for Left iff it is top.
pub fn left_wins(g: &Arc<Game>, mover: Player, lastmove_required: bool) -> Result<bool> {
    if g.poset() != &poset::bool_poset() {
        return Err(Error::Input(format!(
            "winning strategies are evaluated over bool, got {}",
            g.poset().name()
        )));
    }
    Ok(left_wins_rec(g, mover, lastmove_required))
}

static WINS_MEMO: Lazy<Mutex<HashMap<(GameId, Player, bool), bool>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn left_wins_rec(g: &Arc<Game>, mover: Player, lastmove: bool) -> bool {
    if let Some(&r) = WINS_MEMO.lock().unwrap().get(&(g.id(), mover, lastmove)) {
        return r;
    }
    let result = match g.kind() {
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
            Player::Left => left.iter().any(|o| left_wins_rec(o, Player::Right, lastmove)),
            Player::Right => right.iter().all(|o| left_wins_rec(o, Player::Left, lastmove)),
        },
    };
    WINS_MEMO.lock().unwrap().insert((g.id(), mover, lastmove), result);
    result
}

/// The outcome class of a game over bool, as the pair of boolean verdicts
/// for Left moving first and Right moving first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OutcomeClass {
    /// Left wins with Left going first.
    pub o_left: bool,
    /// Left wins with Right going first.
    pub o_right: bool,
}

impl OutcomeClass {
    pub fn symbol(self) -> char {
        match (self.o_left, self.o_right) {
            (true, true) => 'L',
            (true, false) => 'N',
            (false, true) => 'P',
            (false, false) => 'R',
        }
    }

    /// Componentwise order: `R < N,P < L` with `N`, `P` incomparable.
    pub fn leq(self, other: OutcomeClass) -> bool {
        (!self.o_left || other.o_left) && (!self.o_right || other.o_right)
    }
}

impl fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

pub fn outcome(g: &Arc<Game>) -> Result<OutcomeClass> {
    Ok(OutcomeClass {
        o_left: left_wins(g, Player::Left, false)?,
        o_right: left_wins(g, Player::Right, false)?,
    })
}

// ---------------------------------------------------------------------------
// Contexts

/// Embed `G` into the context `X` over `F(A)`: the game `ε(G + X)`.
pub fn add_in_context(g: &Arc<Game>, x: &Arc<Game>) -> Result<Arc<Game>> {
    let eps = poset::eps_map(g.poset());
    let s = gameform::sum(g, x);
    if s.poset() != eps.domain() {
        return Err(Error::Input(format!(
            "context is not over F({}): got {}",
            g.poset().name(),
            x.poset().name()
        )));
    }
    gameform::map(&eps, &s)
}

/// Verdict of the bounded contextual check.
#[derive(Debug, Clone)]
pub enum OracleOutcome {
    /// No enumerated context refuted the relation.
    Holds { contexts_checked: u64 },
    /// A context with `o(G+X) ≰ o(H+X)`, in serialized form via `witness`.
    Refuted { witness: Arc<Game> },
}

/// Bounded check of the contextual order `G ≤_c H`: evaluates outcomes
/// under every context over `F(A)` with the given depth and option-width
/// bounds, atomic contexts first. Budget exhaustion is an error, which
/// callers treat as "inconclusive".
pub fn leq_contextual_oracle(
    g: &Arc<Game>,
    h: &Arc<Game>,
    max_depth: u32,
    max_width: usize,
    budget: &Budget,
) -> Result<OracleOutcome> {
    check_same_poset(g, h)?;
    if max_depth == 0 || max_width == 0 {
        return Err(Error::Input("oracle bounds must be at least 1".into()));
    }
    let eps = poset::eps_map(g.poset());
    let fa = poset::fun_poset(g.poset());
    let mut checked = 0u64;

    let mut check = |x: &Arc<Game>| -> Result<Option<Arc<Game>>> {
        budget.tick(1, "contextual oracle")?;
        let gx = gameform::map(&eps, &gameform::sum(g, x))?;
        let hx = gameform::map(&eps, &gameform::sum(h, x))?;
        checked += 1;
        if !outcome(&gx)?.leq(outcome(&hx)?) {
            return Ok(Some(x.clone()));
        }
        Ok(None)
    };

    let atoms: Vec<Arc<Game>> =
        (0..fa.poset.len()).map(|e| gameform::atom(&fa.poset, e)).collect();
    for x in &atoms {
        if let Some(w) = check(x)? {
            return Ok(OracleOutcome::Refuted { witness: w });
        }
    }
    let mut pool = atoms;
    for _ in 1..=max_depth {
        let subsets = bounded_subsets(&pool, max_width);
        let mut level = Vec::new();
        for l in &subsets {
            for r in &subsets {
                budget.tick(1, "contextual oracle")?;
                let x = gameform::composite(l.clone(), r.clone())
                    .expect("subset enumeration yields nonempty options");
                if let Some(w) = check(&x)? {
                    return Ok(OracleOutcome::Refuted { witness: w });
                }
                level.push(x);
            }
        }
        pool.extend(level);
    }
    Ok(OracleOutcome::Holds { contexts_checked: checked })
}

/// The deterministic context family scanned by the oracle, truncated to
/// `limit` entries: atoms of `F(A)` first, then composite contexts level
/// by level with option sets bounded by `max_width`.
pub fn enumerate_contexts(
    a: &Arc<Poset>,
    max_depth: u32,
    max_width: usize,
    limit: usize,
) -> Vec<Arc<Game>> {
    let fa = poset::fun_poset(a);
    let mut out: Vec<Arc<Game>> =
        (0..fa.poset.len()).map(|e| gameform::atom(&fa.poset, e)).collect();
    out.truncate(limit);
    let mut pool = out.clone();
    for _ in 1..=max_depth {
        if out.len() >= limit {
            break;
        }
        let subsets = bounded_subsets(&pool, max_width);
        let mut level = Vec::new();
        'level: for l in &subsets {
            for r in &subsets {
                let x = gameform::composite(l.clone(), r.clone())
                    .expect("subset enumeration yields nonempty options");
                level.push(x.clone());
                out.push(x);
                if out.len() >= limit {
                    break 'level;
                }
            }
        }
        pool.extend(level);
    }
    out
}

/// All nonempty subsets of `pool` of size at most `width`, ordered by
/// size and then lexicographically by index.
pub fn bounded_subsets(pool: &[Arc<Game>], width: usize) -> Vec<Vec<Arc<Game>>> {
    fn rec(
        pool: &[Arc<Game>],
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<Arc<Game>>>,
    ) {
        if cur.len() == size {
            out.push(cur.iter().map(|&i| pool[i].clone()).collect());
            return;
        }
        for i in start..pool.len() {
            cur.push(i);
            rec(pool, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=width.min(pool.len()) {
        rec(pool, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gameform::{atom_name, parse, serialize, star, zero};
    use crate::poset::{bool_poset, chain3};

    fn b(name: &str) -> Arc<Game> {
        atom_name(&bool_poset(), name).unwrap()
    }
    fn pb(s: &str) -> Arc<Game> {
        parse(s, &bool_poset()).unwrap()
    }

    #[test]
    fn nontransitivity_witness() {
        let w = pb("{{bot|bot}|{top|top}}");
        assert!(leq(&b("top"), &w).unwrap());
        assert!(leq(&w, &b("bot")).unwrap());
        assert!(!leq(&b("top"), &b("bot")).unwrap());
    }

    #[test]
    fn atom_order_matches_poset() {
        assert!(leq(&b("bot"), &b("top")).unwrap());
        assert!(!leq(&b("top"), &b("bot")).unwrap());
        assert!(!tri(&b("top"), &b("top")).unwrap());
        let c = chain3();
        assert!(leq(&atom_name(&c, "h").unwrap(), &atom_name(&c, "top").unwrap()).unwrap());
        assert!(leq(&b("top"), &atom_name(&c, "top").unwrap()).is_err());
    }

    #[test]
    fn reflexivity_on_samples() {
        for g in [b("top"), b("bot"), pb("{bot|top}"), pb("{{bot|bot}|{top|top}}"), star()] {
            assert!(leq(&g, &g).unwrap());
        }
    }

    #[test]
    fn comparison_game_examples() {
        let c = comparison_game(&b("top"), &b("top")).unwrap();
        assert_eq!(serialize(&c), "top");
        let c2 = comparison_game(&zero(), &zero()).unwrap();
        assert_eq!(serialize(&c2), "top");
        let c3 = comparison_game(&b("top"), &b("bot")).unwrap();
        assert_eq!(serialize(&c3), "bot");

        // comparison of * against itself: depth-2 composite over bool in
        // which Left wins going second
        let c4 = comparison_game(&star(), &star()).unwrap();
        assert_eq!(c4.depth(), 2);
        assert_eq!(c4.poset(), &bool_poset());
        assert!(left_wins(&c4, Player::Right, false).unwrap());
    }

    #[test]
    fn left_wins_examples() {
        assert!(left_wins(&b("top"), Player::Left, false).unwrap());
        assert!(left_wins(&b("top"), Player::Right, false).unwrap());
        let g = pb("{bot|top}");
        assert!(!left_wins(&g, Player::Left, false).unwrap());
        assert!(left_wins(&g, Player::Right, false).unwrap());
        assert_eq!(outcome(&g).unwrap().symbol(), 'P');
        // non-bool games are rejected
        assert!(left_wins(&star(), Player::Left, false).is_err());
    }

    #[test]
    fn outcome_examples() {
        assert_eq!(outcome(&b("top")).unwrap().symbol(), 'L');
        assert_eq!(outcome(&b("bot")).unwrap().symbol(), 'R');
        assert_eq!(outcome(&pb("{top|bot}")).unwrap().symbol(), 'N');
        assert_eq!(outcome(&pb("{bot|top}")).unwrap().symbol(), 'P');
    }

    #[test]
    fn outcome_class_poset() {
        let l = OutcomeClass { o_left: true, o_right: true };
        let n = OutcomeClass { o_left: true, o_right: false };
        let p = OutcomeClass { o_left: false, o_right: true };
        let r = OutcomeClass { o_left: false, o_right: false };
        assert!(r.leq(n) && r.leq(p) && n.leq(l) && p.leq(l) && r.leq(l));
        assert!(!n.leq(p) && !p.leq(n));
        assert!(l.leq(l));
    }

    #[test]
    fn characterization_against_comparison_game_small() {
        // exhaustive over depth ≤ 1 games over bool
        let atoms = [b("bot"), b("top")];
        let mut games: Vec<Arc<Game>> = atoms.to_vec();
        for l in crate::order::bounded_subsets(&atoms, 2) {
            for r in crate::order::bounded_subsets(&atoms, 2) {
                games.push(gameform::composite(l.clone(), r).unwrap());
            }
        }
        for g in &games {
            for h in &games {
                let c = comparison_game(g, h).unwrap();
                assert_eq!(
                    leq(g, h).unwrap(),
                    left_wins(&c, Player::Right, true).unwrap(),
                    "leq vs comparison game on {g} vs {h}"
                );
                assert_eq!(
                    tri(g, h).unwrap(),
                    left_wins(&c, Player::Left, true).unwrap(),
                    "tri vs comparison game on {g} vs {h}"
                );
            }
        }
    }

    #[test]
    fn top_leq_implies_win() {
        for g in [b("top"), pb("{{bot|top}|{top|top}}"), pb("{bot,top|top}")] {
            if leq(&b("top"), &g).unwrap() {
                assert!(left_wins(&g, Player::Right, false).unwrap());
            }
            if tri(&b("top"), &g).unwrap() {
                assert!(left_wins(&g, Player::Left, false).unwrap());
            }
        }
    }

    #[test]
    fn oracle_trivial_cases() {
        let budget = Budget::new(100_000);
        let g = pb("{bot|top}");
        match leq_contextual_oracle(&g, &g, 1, 1, &budget).unwrap() {
            OracleOutcome::Holds { contexts_checked } => assert!(contexts_checked >= 3),
            OracleOutcome::Refuted { witness } => panic!("self-comparison refuted by {witness}"),
        }
        match leq_contextual_oracle(&b("top"), &b("bot"), 1, 1, &budget).unwrap() {
            OracleOutcome::Refuted { witness } => assert_eq!(serialize(&witness), "f1"),
            OracleOutcome::Holds { .. } => panic!("top ≤c bot must be refuted"),
        }
    }

    #[test]
    fn oracle_refutes_the_nontransitive_middle() {
        // W ≤ bot holds intrinsically, but the identity context already
        // separates the outcomes, so the contextual order genuinely fails.
        let w = pb("{{bot|bot}|{top|top}}");
        let budget = Budget::new(1_000_000);
        match leq_contextual_oracle(&w, &b("bot"), 2, 2, &budget).unwrap() {
            OracleOutcome::Refuted { witness } => assert_eq!(serialize(&witness), "f1"),
            OracleOutcome::Holds { .. } => panic!("W ≤c bot must be refuted"),
        }
    }

    #[test]
    fn oracle_budget_guard() {
        let tiny = Budget::new(2);
        let g = pb("{bot|top}");
        assert!(matches!(
            leq_contextual_oracle(&g, &g, 2, 2, &tiny),
            Err(Error::Budget(_))
        ));
    }
}
