//! Game forms over a poset: atomic leaves and composite nodes with
//! nonempty left/right option sets.
//!
//! Games are hash-consed: structurally equal games are one shared value,
//! and identity of the intern id *is* structural equality. Option sets
//! are stored sorted and deduplicated, so the same game built in any
//! option order lands on the same id. All the order and canonicalization
//! caches key on these ids.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::{Lazy, OnceCell};

use crate::error::{Error, Result};
use crate::poset::{self, ElemId, MonotoneMap, Poset, PosetId};

pub type GameId = u32;

#[derive(Debug)]
pub enum Kind {
    Atom(ElemId),
    Composite { left: Vec<Arc<Game>>, right: Vec<Arc<Game>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    NoParity,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
            Parity::NoParity => write!(f, "none"),
        }
    }
}

#[derive(Debug)]
pub struct Game {
    id: GameId,
    poset: Arc<Poset>,
    kind: Kind,
    depth: u32,
    parity: OnceCell<Parity>,
    pub(crate) premotive: OnceCell<bool>,
    pub(crate) star_antimonotone: OnceCell<bool>,
}

impl PartialEq for Game {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for Game {}
impl std::hash::Hash for Game {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serialize(self))
    }
}

impl Game {
    pub fn id(&self) -> GameId {
        self.id
    }
    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }
    pub fn kind(&self) -> &Kind {
        &self.kind
    }
    pub fn depth(&self) -> u32 {
        self.depth
    }
    pub fn is_atomic(&self) -> bool {
        matches!(self.kind, Kind::Atom(_))
    }
    pub fn atom_elem(&self) -> Option<ElemId> {
        match self.kind {
            Kind::Atom(e) => Some(e),
            _ => None,
        }
    }
    /// Left options; empty slice for atoms.
    pub fn left(&self) -> &[Arc<Game>] {
        match &self.kind {
            Kind::Atom(_) => &[],
            Kind::Composite { left, .. } => left,
        }
    }
    /// Right options; empty slice for atoms.
    pub fn right(&self) -> &[Arc<Game>] {
        match &self.kind {
            Kind::Atom(_) => &[],
            Kind::Composite { right, .. } => right,
        }
    }
}

// ---------------------------------------------------------------------------
// Interning

#[derive(PartialEq, Eq, Hash)]
enum KeyKind {
    Atom(ElemId),
    Comp(Vec<GameId>, Vec<GameId>),
}

#[derive(PartialEq, Eq, Hash)]
struct Key {
    poset: PosetId,
    kind: KeyKind,
}

struct Store {
    by_key: HashMap<Key, Arc<Game>>,
    next: GameId,
}

static GAMES: Lazy<Mutex<Store>> =
    Lazy::new(|| Mutex::new(Store { by_key: HashMap::new(), next: 0 }));

fn intern(poset: Arc<Poset>, kind: Kind, depth: u32) -> Arc<Game> {
    let key = Key {
        poset: poset.id(),
        kind: match &kind {
            Kind::Atom(e) => KeyKind::Atom(*e),
            Kind::Composite { left, right } => KeyKind::Comp(
                left.iter().map(|g| g.id).collect(),
                right.iter().map(|g| g.id).collect(),
            ),
        },
    };
    let mut store = GAMES.lock().unwrap();
    if let Some(g) = store.by_key.get(&key) {
        return g.clone();
    }
    let id = store.next;
    store.next += 1;
    let game = Arc::new(Game {
        id,
        poset,
        kind,
        depth,
        parity: OnceCell::new(),
        premotive: OnceCell::new(),
        star_antimonotone: OnceCell::new(),
    });
    store.by_key.insert(key, game.clone());
    game
}

/// Total structural order used to keep option sets sorted. It is
/// independent of construction order: atoms compare by element name,
/// composites lexicographically by their (already sorted) option lists.
pub fn cmp_games(a: &Arc<Game>, b: &Arc<Game>) -> Ordering {
    static MEMO: Lazy<Mutex<HashMap<(GameId, GameId), Ordering>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if a.id == b.id {
        return Ordering::Equal;
    }
    if let Some(&ord) = MEMO.lock().unwrap().get(&(a.id, b.id)) {
        return ord;
    }
    let ord = match (&a.kind, &b.kind) {
        (Kind::Atom(_), Kind::Composite { .. }) => Ordering::Less,
        (Kind::Composite { .. }, Kind::Atom(_)) => Ordering::Greater,
        (Kind::Atom(x), Kind::Atom(y)) => a
            .poset
            .elem_name(*x)
            .cmp(b.poset.elem_name(*y))
            .then_with(|| a.poset.id().cmp(&b.poset.id())),
        (
            Kind::Composite { left: l1, right: r1 },
            Kind::Composite { left: l2, right: r2 },
        ) => cmp_lists(l1, l2).then_with(|| cmp_lists(r1, r2)),
    };
    MEMO.lock().unwrap().insert((a.id, b.id), ord);
    ord
}

fn cmp_lists(a: &[Arc<Game>], b: &[Arc<Game>]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match cmp_games(x, y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

// ---------------------------------------------------------------------------
// Constructors

/// The atomic game `[e]` over `p`.
pub fn atom(p: &Arc<Poset>, e: ElemId) -> Arc<Game> {
    assert!(e < p.len(), "element id out of range");
    intern(p.clone(), Kind::Atom(e), 0)
}

pub fn atom_name(p: &Arc<Poset>, name: &str) -> Result<Arc<Game>> {
    Ok(atom(p, p.elem(name)?))
}

/// A composite game from nonempty option sets. Options are sorted and
/// deduplicated; all options must live over one poset.
pub fn composite(left: Vec<Arc<Game>>, right: Vec<Arc<Game>>) -> Result<Arc<Game>> {
    if left.is_empty() || right.is_empty() {
        return Err(Error::Input("composite games need nonempty left and right option sets".into()));
    }
    let p = left[0].poset.clone();
    for o in left.iter().chain(&right) {
        if o.poset != p {
            return Err(Error::Input(format!(
                "options over different posets: {} vs {}",
                p.name(),
                o.poset.name()
            )));
        }
    }
    let mut left = left;
    let mut right = right;
    left.sort_by(cmp_games);
    left.dedup_by(|a, b| a.id == b.id);
    right.sort_by(cmp_games);
    right.dedup_by(|a, b| a.id == b.id);
    let depth = 1 + left.iter().chain(&right).map(|g| g.depth).max().unwrap();
    Ok(intern(p, Kind::Composite { left, right }, depth))
}

/// The unique atomic game over the one-element poset.
pub fn zero() -> Arc<Game> {
    atom(&poset::one(), 0)
}

/// `* = {0|0}`, the game of a single dead cell.
pub fn star() -> Arc<Game> {
    composite(vec![zero()], vec![zero()]).unwrap()
}

/// `⌊x⌋ = {{⊥|x} | {x|⊤}}`, the composite stand-in for an atom.
pub fn atomize(x: &Arc<Game>) -> Result<Arc<Game>> {
    let e = x
        .atom_elem()
        .ok_or_else(|| Error::Input("atomize is defined on atomic games".into()))?;
    let p = x.poset();
    let bottom = atom(p, p.bottom());
    let top = atom(p, p.top());
    let xg = atom(p, e);
    let l = composite(vec![bottom], vec![xg.clone()])?;
    let r = composite(vec![xg], vec![top])?;
    composite(vec![l], vec![r])
}

/// If `g` is structurally `⌊x⌋`, return the atom `x`.
pub fn as_atomize(g: &Arc<Game>) -> Option<Arc<Game>> {
    let (left, right) = match &g.kind {
        Kind::Composite { left, right } if left.len() == 1 && right.len() == 1 => (left, right),
        _ => return None,
    };
    let p = g.poset();
    let (lo, ro) = (&left[0], &right[0]);
    let x = match (&lo.kind, &ro.kind) {
        (Kind::Composite { left: ll, right: lr }, Kind::Composite { left: rl, right: rr })
            if ll.len() == 1 && lr.len() == 1 && rl.len() == 1 && rr.len() == 1 =>
        {
            let x = lr[0].atom_elem()?;
            if ll[0].atom_elem()? != p.bottom()
                || rl[0].atom_elem()? != x
                || rr[0].atom_elem()? != p.top()
            {
                return None;
            }
            x
        }
        _ => return None,
    };
    Some(atom(p, x))
}

// ---------------------------------------------------------------------------
// Structural operations

/// Disjunctive sum. Atoms pair into the product poset (with one-element
/// factors absorbed, so `G + 0` is literally `G`).
pub fn sum(g: &Arc<Game>, h: &Arc<Game>) -> Arc<Game> {
    let mut memo = HashMap::new();
    sum_rec(g, h, &mut memo)
}

fn sum_rec(
    g: &Arc<Game>,
    h: &Arc<Game>,
    memo: &mut HashMap<(GameId, GameId), Arc<Game>>,
) -> Arc<Game> {
    if let Some(r) = memo.get(&(g.id, h.id)) {
        return r.clone();
    }
    let result = match (&g.kind, &h.kind) {
        (Kind::Atom(a), Kind::Atom(b)) => {
            let (p, e) = poset::pair_elem(&g.poset, *a, &h.poset, *b);
            atom(&p, e)
        }
        (Kind::Composite { left, right }, Kind::Atom(_)) => composite(
            left.iter().map(|o| sum_rec(o, h, memo)).collect(),
            right.iter().map(|o| sum_rec(o, h, memo)).collect(),
        )
        .expect("sum of composites preserves nonemptiness"),
        (Kind::Atom(_), Kind::Composite { left, right }) => composite(
            left.iter().map(|o| sum_rec(g, o, memo)).collect(),
            right.iter().map(|o| sum_rec(g, o, memo)).collect(),
        )
        .expect("sum of composites preserves nonemptiness"),
        (
            Kind::Composite { left: gl, right: gr },
            Kind::Composite { left: hl, right: hr },
        ) => {
            let mut left: Vec<Arc<Game>> = gl.iter().map(|o| sum_rec(o, h, memo)).collect();
            left.extend(hl.iter().map(|o| sum_rec(g, o, memo)).collect::<Vec<_>>());
            let mut right: Vec<Arc<Game>> = gr.iter().map(|o| sum_rec(o, h, memo)).collect();
            right.extend(hr.iter().map(|o| sum_rec(g, o, memo)).collect::<Vec<_>>());
            composite(left, right).expect("sum of composites preserves nonemptiness")
        }
    };
    memo.insert((g.id, h.id), result.clone());
    result
}

/// The dual game: Left and Right swap sides, atoms move to the dual poset.
pub fn dual(g: &Arc<Game>) -> Arc<Game> {
    let mut memo = HashMap::new();
    dual_rec(g, &mut memo)
}

fn dual_rec(g: &Arc<Game>, memo: &mut HashMap<GameId, Arc<Game>>) -> Arc<Game> {
    if let Some(r) = memo.get(&g.id) {
        return r.clone();
    }
    let result = match &g.kind {
        // dual posets keep element indices, so the atom id carries over
        Kind::Atom(e) => atom(&poset::dual(&g.poset), *e),
        Kind::Composite { left, right } => composite(
            right.iter().map(|o| dual_rec(o, memo)).collect(),
            left.iter().map(|o| dual_rec(o, memo)).collect(),
        )
        .expect("dual preserves nonemptiness"),
    };
    memo.insert(g.id, result.clone());
    result
}

/// Apply a monotone map to every atom of the game.
pub fn map(phi: &MonotoneMap, g: &Arc<Game>) -> Result<Arc<Game>> {
    if &g.poset != phi.domain() {
        return Err(Error::Input(format!(
            "map {} expects games over {}, got {}",
            phi.name(),
            phi.domain().name(),
            g.poset.name()
        )));
    }
    let mut memo = HashMap::new();
    Ok(map_rec(phi, g, &mut memo))
}

fn map_rec(
    phi: &MonotoneMap,
    g: &Arc<Game>,
    memo: &mut HashMap<GameId, Arc<Game>>,
) -> Arc<Game> {
    if let Some(r) = memo.get(&g.id) {
        return r.clone();
    }
    let result = match &g.kind {
        Kind::Atom(e) => atom(phi.codomain(), phi.apply(*e)),
        Kind::Composite { left, right } => composite(
            left.iter().map(|o| map_rec(phi, o, memo)).collect(),
            right.iter().map(|o| map_rec(phi, o, memo)).collect(),
        )
        .expect("map preserves nonemptiness"),
    };
    memo.insert(g.id, result.clone());
    result
}

/// Even if atomic or all options odd; odd if composite with all options
/// even; no parity otherwise. Cached per game.
pub fn parity(g: &Arc<Game>) -> Parity {
    *g.parity.get_or_init(|| match &g.kind {
        Kind::Atom(_) => Parity::Even,
        Kind::Composite { left, right } => {
            let opts = left.iter().chain(right);
            let mut all_even = true;
            let mut all_odd = true;
            for o in opts {
                match parity(o) {
                    Parity::Even => all_odd = false,
                    Parity::Odd => all_even = false,
                    Parity::NoParity => {
                        all_even = false;
                        all_odd = false;
                    }
                }
            }
            if all_odd {
                Parity::Even
            } else if all_even {
                Parity::Odd
            } else {
                Parity::NoParity
            }
        }
    })
}

/// Reflexive-transitive closure of the option relation, in deterministic
/// preorder (a game is its own follower).
pub fn followers(g: &Arc<Game>) -> Vec<Arc<Game>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut stack = vec![g.clone()];
    while let Some(cur) = stack.pop() {
        if !seen.insert(cur.id) {
            continue;
        }
        out.push(cur.clone());
        if let Kind::Composite { left, right } = &cur.kind {
            for o in left.iter().chain(right).rev() {
                stack.push(o.clone());
            }
        }
    }
    out
}

pub fn follower_count(g: &Arc<Game>) -> usize {
    followers(g).len()
}

// ---------------------------------------------------------------------------
// Serialization

/// Deterministic text form. Options are printed sorted by their own
/// serialization, so equal games always print identically.
pub fn serialize(g: &Game) -> String {
    fn ser(g: &Game, memo: &mut HashMap<GameId, String>) -> String {
        if let Some(s) = memo.get(&g.id) {
            return s.clone();
        }
        let s = match &g.kind {
            Kind::Atom(e) => g.poset.elem_name(*e).to_string(),
            Kind::Composite { left, right } => {
                let mut ls: Vec<String> = left.iter().map(|o| ser(o, memo)).collect();
                let mut rs: Vec<String> = right.iter().map(|o| ser(o, memo)).collect();
                ls.sort();
                rs.sort();
                format!("{{{}|{}}}", ls.join(","), rs.join(","))
            }
        };
        memo.insert(g.id, s.clone());
        s
    }
    ser(g, &mut HashMap::new())
}

#[derive(Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Pipe,
    Comma,
    Atom(String),
}

/// Atom tokens may contain commas inside balanced parentheses, which is
/// how product elements `(a,b)` and partition names `(1,2)` survive the
/// option-separator syntax.
fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '{' => {
                out.push(Tok::Open);
                i += 1;
            }
            '}' => {
                out.push(Tok::Close);
                i += 1;
            }
            '|' => {
                out.push(Tok::Pipe);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            _ => {
                let mut depth = 0usize;
                let mut atom = String::new();
                while i < chars.len() {
                    let c = chars[i];
                    if "{}|".contains(c) || (depth == 0 && (c == ',' || c.is_whitespace())) {
                        break;
                    }
                    if c == '(' {
                        depth += 1;
                    }
                    if c == ')' {
                        depth = depth
                            .checked_sub(1)
                            .ok_or_else(|| Error::Input("unbalanced ')' in atom name".into()))?;
                    }
                    atom.push(c);
                    i += 1;
                }
                if depth != 0 {
                    return Err(Error::Input(format!("unbalanced '(' in atom name {atom:?}")));
                }
                out.push(Tok::Atom(atom));
            }
        }
    }
    Ok(out)
}

/// Parse a game expression against a poset that supplies the atom names.
pub fn parse(text: &str, p: &Arc<Poset>) -> Result<Arc<Game>> {
    let toks = tokenize(text)?;
    let mut pos = 0;
    let g = parse_game(&toks, &mut pos, p)?;
    if pos != toks.len() {
        return Err(Error::Input("trailing input after game expression".into()));
    }
    Ok(g)
}

fn parse_game(toks: &[Tok], pos: &mut usize, p: &Arc<Poset>) -> Result<Arc<Game>> {
    match toks.get(*pos) {
        Some(Tok::Atom(name)) => {
            *pos += 1;
            atom_name(p, name)
        }
        Some(Tok::Open) => {
            *pos += 1;
            let left = parse_list(toks, pos, p)?;
            expect(toks, pos, Tok::Pipe)?;
            let right = parse_list(toks, pos, p)?;
            expect(toks, pos, Tok::Close)?;
            composite(left, right)
        }
        other => Err(Error::Input(format!("expected a game, found {other:?}"))),
    }
}

fn parse_list(toks: &[Tok], pos: &mut usize, p: &Arc<Poset>) -> Result<Vec<Arc<Game>>> {
    let mut out = vec![parse_game(toks, pos, p)?];
    while toks.get(*pos) == Some(&Tok::Comma) {
        *pos += 1;
        out.push(parse_game(toks, pos, p)?);
    }
    Ok(out)
}

fn expect(toks: &[Tok], pos: &mut usize, want: Tok) -> Result<()> {
    if toks.get(*pos) == Some(&want) {
        *pos += 1;
        Ok(())
    } else {
        Err(Error::Input(format!("expected {want:?}, found {:?}", toks.get(*pos))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{bool_poset, chain3, one};

    fn b_atom(name: &str) -> Arc<Game> {
        atom_name(&bool_poset(), name).unwrap()
    }

    fn parse_b(s: &str) -> Arc<Game> {
        parse(s, &bool_poset()).unwrap()
    }

    // -----------------------------------------------------------------
    // An independent expansion oracle for the sum. Atoms are tuples of
    // primitive components; the empty tuple plays the role of 0.
    #[derive(Clone, PartialEq)]
    enum Naive {
        Atom(Vec<String>),
        Comp(Vec<Naive>, Vec<Naive>),
    }

    impl Naive {
        fn of(g: &Arc<Game>) -> Naive {
            match g.kind() {
                Kind::Atom(e) => {
                    let name = g.poset().elem_name(*e);
                    if g.poset().len() == 1 {
                        Naive::Atom(vec![])
                    } else if g.poset().factors().is_empty() {
                        Naive::Atom(vec![name.to_string()])
                    } else {
                        let comps = g.poset().components(*e);
                        Naive::Atom(
                            comps
                                .iter()
                                .zip(g.poset().factors())
                                .map(|(&c, f)| f.elem_name(c).to_string())
                                .collect(),
                        )
                    }
                }
                Kind::Composite { left, right } => Naive::Comp(
                    left.iter().map(Naive::of).collect(),
                    right.iter().map(Naive::of).collect(),
                ),
            }
        }

        fn sum(&self, other: &Naive) -> Naive {
            match (self, other) {
                (Naive::Atom(a), Naive::Atom(b)) => {
                    let mut t = a.clone();
                    t.extend(b.iter().cloned());
                    Naive::Atom(t)
                }
                (Naive::Comp(l, r), Naive::Atom(_)) => Naive::Comp(
                    l.iter().map(|o| o.sum(other)).collect(),
                    r.iter().map(|o| o.sum(other)).collect(),
                ),
                (Naive::Atom(_), Naive::Comp(l, r)) => Naive::Comp(
                    l.iter().map(|o| self.sum(o)).collect(),
                    r.iter().map(|o| self.sum(o)).collect(),
                ),
                (Naive::Comp(gl, gr), Naive::Comp(hl, hr)) => Naive::Comp(
                    gl.iter()
                        .map(|o| o.sum(other))
                        .chain(hl.iter().map(|o| self.sum(o)))
                        .collect(),
                    gr.iter()
                        .map(|o| o.sum(other))
                        .chain(hr.iter().map(|o| self.sum(o)))
                        .collect(),
                ),
            }
        }

        fn render(&self) -> String {
            match self {
                Naive::Atom(t) => match t.len() {
                    0 => "0".to_string(),
                    1 => t[0].clone(),
                    _ => format!("({})", t.join(",")),
                },
                Naive::Comp(l, r) => {
                    let mut ls: Vec<String> = l.iter().map(|o| o.render()).collect();
                    let mut rs: Vec<String> = r.iter().map(|o| o.render()).collect();
                    ls.sort();
                    ls.dedup();
                    rs.sort();
                    rs.dedup();
                    format!("{{{}|{}}}", ls.join(","), rs.join(","))
                }
            }
        }
    }

    fn check_sum_against_oracle(g: &Arc<Game>, h: &Arc<Game>) {
        let s = sum(g, h);
        assert_eq!(serialize(&s), Naive::of(g).sum(&Naive::of(h)).render());
    }

    #[test]
    fn atoms_pair_into_the_product() {
        let s = sum(&b_atom("top"), &b_atom("bot"));
        assert_eq!(serialize(&s), "(top,bot)");
        assert_eq!(s.poset().len(), 4);
    }

    #[test]
    fn sum_with_zero_is_identity() {
        for g in [b_atom("top"), parse_b("{bot|top}"), parse_b("{{bot|bot}|{top|top}}")] {
            assert_eq!(sum(&g, &zero()), g);
            assert_eq!(sum(&zero(), &g), g);
        }
    }

    #[test]
    fn star_plus_star_expands() {
        let s = sum(&star(), &star());
        assert_eq!(serialize(&s), "{{0|0}|{0|0}}");
        assert_eq!(s.poset(), &one());
        check_sum_against_oracle(&star(), &star());
    }

    #[test]
    fn sums_match_naive_expansion() {
        let games = [
            b_atom("bot"),
            b_atom("top"),
            parse_b("{bot|top}"),
            parse_b("{top,bot|top}"),
            parse_b("{{bot|top}|{top|top}}"),
        ];
        for g in &games {
            for h in &games {
                check_sum_against_oracle(g, h);
            }
        }
        check_sum_against_oracle(&parse_b("{bot|top}"), &star());
    }

    #[test]
    fn sum_is_associative_after_flattening() {
        let g = parse_b("{bot|top}");
        let h = b_atom("top");
        let k = parse("{bot|h}", &chain3()).unwrap();
        assert_eq!(sum(&sum(&g, &h), &k), sum(&g, &sum(&h, &k)));
    }

    #[test]
    fn map_examples() {
        let b = bool_poset();
        let id = MonotoneMap::identity(&b);
        let g = parse_b("{{bot|top}|top}");
        assert_eq!(map(&id, &g).unwrap(), g);

        let const_top =
            MonotoneMap::new("ctop", b.clone(), b.clone(), vec![b.top(), b.top()]).unwrap();
        assert_eq!(serialize(&map(&const_top, &parse_b("{bot|top}")).unwrap()), "{top|top}");

        // poset mismatch is an input error
        let c = chain3();
        let idc = MonotoneMap::identity(&c);
        assert!(map(&idc, &g).is_err());
    }

    #[test]
    fn comparison_shape_through_lambda() {
        // λ applied to dual({⊥|⊤}) + {⊥|⊤} gives the copycat comparison game
        let d = parse_b("{bot|top}");
        let lam = crate::poset::lambda_map(&bool_poset());
        let s = sum(&dual(&d), &d);
        let comp = map(&lam, &s).unwrap();
        assert_eq!(serialize(&comp), "{{bot|top}|{top|top}}");
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual(&star()), star());
        let t = b_atom("top");
        let dt = dual(&t);
        assert_eq!(serialize(&dt), "top^op");
        assert_eq!(dt.atom_elem().unwrap(), poset::dual(&bool_poset()).bottom());
        assert_eq!(serialize(&dual(&parse_b("{bot|top}"))), "{top^op|bot^op}");
        for g in [t, parse_b("{bot|top}"), parse_b("{{bot|bot}|{top|top}}"), star()] {
            assert_eq!(dual(&dual(&g)), g);
        }
    }

    #[test]
    fn dual_distributes_over_sum() {
        let g = parse_b("{bot|top}");
        let h = parse("{h|top}", &chain3()).unwrap();
        assert_eq!(dual(&sum(&g, &h)), sum(&dual(&g), &dual(&h)));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity(&b_atom("top")), Parity::Even);
        assert_eq!(parity(&zero()), Parity::Even);
        assert_eq!(parity(&star()), Parity::Odd);
        assert_eq!(parity(&parse_b("{bot|{top|top}}")), Parity::NoParity);
        assert_eq!(parity(&parse_b("{{bot|bot}|{top|top}}")), Parity::Even);
    }

    #[test]
    fn follower_examples() {
        assert_eq!(followers(&b_atom("top")).len(), 1);
        let st = star();
        let f: Vec<_> = followers(&st).iter().map(|g| serialize(g)).collect();
        assert_eq!(f, ["{0|0}", "0"]);
        assert_eq!(followers(&parse_b("{bot|top}")).len(), 3);
    }

    #[test]
    fn serialization_round_trip() {
        let b = bool_poset();
        for text in ["top", "{bot|top}", "{{bot|bot}|{top|top}}", "{bot,top|top}"] {
            let g = parse(text, &b).unwrap();
            assert_eq!(serialize(&g), text);
            assert_eq!(parse(&serialize(&g), &b).unwrap(), g);
        }
        // whitespace-insensitive, order-normalizing
        assert_eq!(parse_b(" { top , bot | top } "), parse_b("{bot,top|top}"));
    }

    #[test]
    fn parse_rejects_garbage() {
        let b = bool_poset();
        assert!(parse("", &b).is_err());
        assert!(parse("{|top}", &b).is_err());
        assert!(parse("{top|}", &b).is_err());
        assert!(parse("{top top|bot}", &b).is_err());
        assert!(parse("nope", &b).is_err());
        assert!(parse("{top|bot} x", &b).is_err());
        assert!(parse("(1,2", &b).is_err());
    }

    #[test]
    fn atoms_with_commas_survive_round_trips() {
        let p = crate::poset::Poset::new(
            "parts",
            &["(1,2,3)", "(1,2)", "top"],
            &[("(1,2,3)", "(1,2)"), ("(1,2)", "top")],
        )
        .unwrap();
        let g = parse("{(1,2,3),(1,2)|top}", &p).unwrap();
        assert_eq!(g.left().len(), 2);
        assert_eq!(serialize(&g), "{(1,2),(1,2,3)|top}");
    }

    #[test]
    fn hash_consing_dedups_options_and_structures() {
        let a = composite(vec![b_atom("top"), b_atom("bot"), b_atom("top")], vec![b_atom("bot")])
            .unwrap();
        let b = composite(vec![b_atom("bot"), b_atom("top")], vec![b_atom("bot")]).unwrap();
        assert_eq!(a.id(), b.id());
        assert_eq!(a.left().len(), 2);

        assert!(composite(vec![], vec![b_atom("top")]).is_err());
        let c = atom_name(&chain3(), "h").unwrap();
        assert!(composite(vec![b_atom("top")], vec![c]).is_err());
    }

    #[test]
    fn atomize_shape() {
        let floor_top = atomize(&b_atom("top")).unwrap();
        assert_eq!(serialize(&floor_top), "{{bot|top}|{top|top}}");
        assert_eq!(as_atomize(&floor_top).unwrap(), b_atom("top"));
        assert!(as_atomize(&parse_b("{bot|top}")).is_none());
        // star is ⌊0⌋ over the one-element poset
        let ss = sum(&star(), &star());
        assert_eq!(as_atomize(&ss).unwrap(), zero());
        assert!(atomize(&star()).is_err());
    }
}
