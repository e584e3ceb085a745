//! Finite posets with top and bottom, and monotone maps between them.
//!
//! Posets are stored extensionally: an element list plus an explicit
//! relation table, with the transitive closure computed on construction.
//! Every poset is interned in a global registry so that structurally
//! equal posets are represented by a single shared value; this is what
//! lets games key their caches on plain ids.
//!
//! Products are kept flat (a product of products concatenates the factor
//! lists) and one-element factors are absorbed, so `A × 1` *is* `A` at
//! the data level.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};

pub type ElemId = usize;
pub type PosetId = u32;

#[derive(Debug)]
pub struct Poset {
    id: PosetId,
    name: String,
    elems: Vec<String>,
    index: HashMap<String, ElemId>,
    /// Row-major n×n relation table; `leq[a*n+b]` holds iff `a ≤ b`.
    leq: Vec<bool>,
    top: ElemId,
    bottom: ElemId,
    /// Non-trivial prime factors; empty for primitive posets.
    factors: Vec<Arc<Poset>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for Poset {}
impl std::hash::Hash for Poset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[derive(PartialEq, Eq, Hash)]
struct Key {
    name: String,
    elems: Vec<String>,
    leq: Vec<bool>,
    factors: Vec<PosetId>,
}

struct Registry {
    by_key: HashMap<Key, Arc<Poset>>,
    next_id: PosetId,
}

static REGISTRY: Lazy<Mutex<Registry>> =
    Lazy::new(|| Mutex::new(Registry { by_key: HashMap::new(), next_id: 0 }));

/// Validate the relation and intern the poset, reusing an existing value
/// when an identical one was built before.
fn intern(
    name: String,
    elems: Vec<String>,
    leq: Vec<bool>,
    factors: Vec<Arc<Poset>>,
) -> Result<Arc<Poset>> {
    let n = elems.len();
    if n == 0 {
        return Err(Error::Input("poset must have at least one element".into()));
    }
    debug_assert_eq!(leq.len(), n * n);
    let mut index = HashMap::new();
    for (i, e) in elems.iter().enumerate() {
        if e.is_empty() || e.chars().any(|c| c.is_whitespace() || "{}|".contains(c)) {
            return Err(Error::Input(format!("invalid element name {e:?}")));
        }
        if index.insert(e.clone(), i).is_some() {
            return Err(Error::Input(format!("duplicate element name {e:?}")));
        }
    }
    for a in 0..n {
        if !leq[a * n + a] {
            return Err(Error::Input(format!("relation is not reflexive at {}", elems[a])));
        }
        for b in 0..n {
            if a != b && leq[a * n + b] && leq[b * n + a] {
                return Err(Error::Input(format!(
                    "relation is not antisymmetric: {} and {} are mutually related",
                    elems[a], elems[b]
                )));
            }
            for c in 0..n {
                if leq[a * n + b] && leq[b * n + c] && !leq[a * n + c] {
                    return Err(Error::Input("relation is not transitive".into()));
                }
            }
        }
    }
    let top = unique_extremum(&leq, n, true)
        .ok_or_else(|| Error::Input(format!("poset {name} has no unique greatest element")))?;
    let bottom = unique_extremum(&leq, n, false)
        .ok_or_else(|| Error::Input(format!("poset {name} has no unique least element")))?;

    let key = Key {
        name: name.clone(),
        elems: elems.clone(),
        leq: leq.clone(),
        factors: factors.iter().map(|f| f.id).collect(),
    };
    let mut reg = REGISTRY.lock().unwrap();
    if let Some(p) = reg.by_key.get(&key) {
        return Ok(p.clone());
    }
    let id = reg.next_id;
    reg.next_id += 1;
    let poset = Arc::new(Poset { id, name, elems, index, leq, top, bottom, factors });
    reg.by_key.insert(key, poset.clone());
    Ok(poset)
}

fn unique_extremum(leq: &[bool], n: usize, greatest: bool) -> Option<ElemId> {
    let mut found = None;
    for cand in 0..n {
        let ok = (0..n).all(|x| if greatest { leq[x * n + cand] } else { leq[cand * n + x] });
        if ok {
            if found.is_some() {
                return None;
            }
            found = Some(cand);
        }
    }
    found
}

impl Poset {
    /// Build a poset from generating pairs; the reflexive-transitive
    /// closure is computed here and antisymmetry failures are rejected.
    pub fn new(name: &str, elems: &[&str], pairs: &[(&str, &str)]) -> Result<Arc<Poset>> {
        let elems: Vec<String> = elems.iter().map(|s| s.to_string()).collect();
        let n = elems.len();
        let mut index = HashMap::new();
        for (i, e) in elems.iter().enumerate() {
            index.insert(e.clone(), i);
        }
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for (a, b) in pairs {
            let ia = *index
                .get(*a)
                .ok_or_else(|| Error::Input(format!("unknown element {a:?} in le pair")))?;
            let ib = *index
                .get(*b)
                .ok_or_else(|| Error::Input(format!("unknown element {b:?} in le pair")))?;
            leq[ia * n + ib] = true;
        }
        transitive_close(&mut leq, n);
        intern(name.to_string(), elems, leq, Vec::new())
    }

    pub fn id(&self) -> PosetId {
        self.id
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn elems(&self) -> &[String] {
        &self.elems
    }
    pub fn elem_name(&self, e: ElemId) -> &str {
        &self.elems[e]
    }
    pub fn elem(&self, name: &str) -> Result<ElemId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown element {name:?} in poset {}", self.name)))
    }
    pub fn top(&self) -> ElemId {
        self.top
    }
    pub fn bottom(&self) -> ElemId {
        self.bottom
    }
    pub fn factors(&self) -> &[Arc<Poset>] {
        &self.factors
    }

    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.leq[a * self.elems.len() + b]
    }

    pub fn leq_name(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.leq(self.elem(a)?, self.elem(b)?))
    }

    /// Mixed-radix decomposition of a product element, one component per
    /// factor. Primitive posets decompose into themselves.
    pub fn components(&self, e: ElemId) -> Vec<ElemId> {
        if self.factors.is_empty() {
            return vec![e];
        }
        let mut comps = vec![0; self.factors.len()];
        let mut rest = e;
        for (i, f) in self.factors.iter().enumerate().rev() {
            comps[i] = rest % f.len();
            rest /= f.len();
        }
        comps
    }

    pub fn elem_from_components(&self, comps: &[ElemId]) -> ElemId {
        if self.factors.is_empty() {
            debug_assert_eq!(comps.len(), 1);
            return comps[0];
        }
        debug_assert_eq!(comps.len(), self.factors.len());
        let mut e = 0;
        for (f, &c) in self.factors.iter().zip(comps) {
            e = e * f.len() + c;
        }
        e
    }

    /// Canonical text form: `poset` line, `elems` line, one `le` line per
    /// covering pair. Parsing this output reproduces the poset bit for bit.
    pub fn serialize(&self) -> String {
        let n = self.elems.len();
        let mut out = format!("poset {}\nelems {}\n", self.name, self.elems.join(" "));
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq[a * n + b] {
                    continue;
                }
                let covering = (0..n).all(|c| {
                    c == a || c == b || !(self.leq[a * n + c] && self.leq[c * n + b])
                });
                if covering {
                    out.push_str(&format!("le {} {}\n", self.elems[a], self.elems[b]));
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Arc<Poset>> {
        let mut name = None;
        let mut elems: Vec<String> = Vec::new();
        let mut pairs: Vec<(String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let head = tok.next().unwrap();
            match head {
                "poset" => {
                    name = Some(
                        tok.next()
                            .ok_or_else(|| Error::Input(format!("line {}: poset needs a name", lineno + 1)))?
                            .to_string(),
                    );
                    if tok.next().is_some() {
                        return Err(Error::Input(format!("line {}: trailing tokens after poset name", lineno + 1)));
                    }
                }
                "elems" => elems.extend(tok.map(str::to_string)),
                "le" => {
                    let a = tok.next().map(str::to_string);
                    let b = tok.next().map(str::to_string);
                    match (a, b, tok.next()) {
                        (Some(a), Some(b), None) => pairs.push((a, b)),
                        _ => {
                            return Err(Error::Input(format!("line {}: le takes exactly two elements", lineno + 1)))
                        }
                    }
                }
                other => {
                    return Err(Error::Input(format!("line {}: unknown directive {other:?}", lineno + 1)))
                }
            }
        }
        let name = name.ok_or_else(|| Error::Input("missing `poset <name>` line".into()))?;
        let elem_refs: Vec<&str> = elems.iter().map(String::as_str).collect();
        let pair_refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Poset::new(&name, &elem_refs, &pair_refs)
    }
}

fn decompose(e: ElemId, sizes: &[usize]) -> Vec<ElemId> {
    let mut comps = vec![0; sizes.len()];
    let mut rest = e;
    for (i, &s) in sizes.iter().enumerate().rev() {
        comps[i] = rest % s;
        rest /= s;
    }
    comps
}

fn transitive_close(leq: &mut [bool], n: usize) {
    for k in 0..n {
        for a in 0..n {
            if leq[a * n + k] {
                for b in 0..n {
                    if leq[k * n + b] {
                        leq[a * n + b] = true;
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Builtins

pub fn one() -> Arc<Poset> {
    static ONE: Lazy<Arc<Poset>> = Lazy::new(|| Poset::new("one", &["0"], &[]).unwrap());
    ONE.clone()
}

pub fn bool_poset() -> Arc<Poset> {
    static BOOL: Lazy<Arc<Poset>> =
        Lazy::new(|| Poset::new("bool", &["bot", "top"], &[("bot", "top")]).unwrap());
    BOOL.clone()
}

pub fn chain3() -> Arc<Poset> {
    static CHAIN: Lazy<Arc<Poset>> = Lazy::new(|| {
        Poset::new("chain3", &["bot", "h", "top"], &[("bot", "h"), ("h", "top")]).unwrap()
    });
    CHAIN.clone()
}

/// The four-element diamond `bot < a,b < top` with incomparable middles.
pub fn diamond() -> Arc<Poset> {
    static DIAMOND: Lazy<Arc<Poset>> = Lazy::new(|| {
        Poset::new(
            "diamond",
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap()
    });
    DIAMOND.clone()
}

pub fn builtin(name: &str) -> Option<Arc<Poset>> {
    match name {
        "one" => Some(one()),
        "bool" => Some(bool_poset()),
        "chain3" => Some(chain3()),
        "diamond" => Some(diamond()),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Product and dual

/// The non-trivial factor list of a poset: products contribute their
/// factors, one-element posets contribute nothing.
fn factor_vec(p: &Arc<Poset>) -> Vec<Arc<Poset>> {
    if p.len() == 1 {
        Vec::new()
    } else if p.factors.is_empty() {
        vec![p.clone()]
    } else {
        p.factors.clone()
    }
}

fn build_product(factors: Vec<Arc<Poset>>) -> Arc<Poset> {
    match factors.len() {
        0 => one(),
        1 => factors.into_iter().next().unwrap(),
        _ => {
            let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
            let n: usize = sizes.iter().product();
            let name = factors.iter().map(|f| f.name.clone()).collect::<Vec<_>>().join("*");
            let mut elems = Vec::with_capacity(n);
            for e in 0..n {
                let comps = decompose(e, &sizes);
                let parts: Vec<&str> =
                    comps.iter().zip(&factors).map(|(&c, f)| f.elem_name(c)).collect();
                elems.push(format!("({})", parts.join(",")));
            }
            let mut leq = vec![false; n * n];
            for a in 0..n {
                let ca = decompose(a, &sizes);
                for b in 0..n {
                    let cb = decompose(b, &sizes);
                    leq[a * n + b] =
                        ca.iter().zip(&cb).zip(&factors).all(|((&x, &y), f)| f.leq(x, y));
                }
            }
            intern(name, elems, leq, factors).expect("componentwise product is always a valid poset")
        }
    }
}

/// Cartesian product with the componentwise order. One-element factors
/// are absorbed and nested products are flattened.
pub fn product(a: &Arc<Poset>, b: &Arc<Poset>) -> Arc<Poset> {
    let mut fs = factor_vec(a);
    fs.extend(factor_vec(b));
    build_product(fs)
}

/// Components of `e` restricted to the non-trivial factors of `p`.
fn comps_kept(p: &Arc<Poset>, e: ElemId) -> Vec<ElemId> {
    if p.len() == 1 {
        Vec::new()
    } else if p.factors.is_empty() {
        vec![e]
    } else {
        p.components(e)
    }
}

/// Pair two elements into the product of their posets, honoring the
/// one-absorption so that pairing with `0 : one` is the identity.
pub fn pair_elem(pa: &Arc<Poset>, a: ElemId, pb: &Arc<Poset>, b: ElemId) -> (Arc<Poset>, ElemId) {
    let prod = product(pa, pb);
    let mut comps = comps_kept(pa, a);
    comps.extend(comps_kept(pb, b));
    if prod.len() == 1 {
        return (prod, 0);
    }
    let e = prod.elem_from_components(&comps);
    (prod, e)
}

fn op_name(s: &str) -> String {
    match s.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{s}^op"),
    }
}

/// Order-reversed poset. Elements are tagged with `^op` (toggled, so the
/// dual is an involution), and duals distribute over products.
pub fn dual(p: &Arc<Poset>) -> Arc<Poset> {
    if p.len() == 1 {
        return p.clone();
    }
    if !p.factors.is_empty() {
        return build_product(p.factors.iter().map(dual).collect());
    }
    let n = p.len();
    let elems: Vec<String> = p.elems.iter().map(|e| op_name(e)).collect();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = p.leq(b, a);
        }
    }
    intern(op_name(&p.name), elems, leq, Vec::new()).expect("dual of a valid poset is valid")
}

// ---------------------------------------------------------------------------
// Monotone maps

#[derive(Debug, Clone)]
pub struct MonotoneMap {
    name: String,
    domain: Arc<Poset>,
    codomain: Arc<Poset>,
    table: Vec<ElemId>,
}

impl MonotoneMap {
    /// Build a total map and verify order preservation exhaustively.
    pub fn new(
        name: &str,
        domain: Arc<Poset>,
        codomain: Arc<Poset>,
        table: Vec<ElemId>,
    ) -> Result<MonotoneMap> {
        if table.len() != domain.len() {
            return Err(Error::Input(format!("map {name} is not total on its domain")));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= codomain.len()) {
            return Err(Error::Input(format!("map {name} has out-of-range value {bad}")));
        }
        for a in 0..domain.len() {
            for b in 0..domain.len() {
                if domain.leq(a, b) && !codomain.leq(table[a], table[b]) {
                    return Err(Error::Input(format!(
                        "map {name} is not monotone: {} ≤ {} but images are unordered",
                        domain.elem_name(a),
                        domain.elem_name(b)
                    )));
                }
            }
        }
        Ok(MonotoneMap { name: name.to_string(), domain, codomain, table })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn domain(&self) -> &Arc<Poset> {
        &self.domain
    }
    pub fn codomain(&self) -> &Arc<Poset> {
        &self.codomain
    }
    pub fn apply(&self, e: ElemId) -> ElemId {
        self.table[e]
    }
    pub fn apply_name(&self, e: &str) -> Result<String> {
        let id = self.domain.elem(e)?;
        Ok(self.codomain.elem_name(self.table[id]).to_string())
    }
    pub fn table(&self) -> &[ElemId] {
        &self.table
    }

    /// Pointwise order on maps with a common domain and codomain.
    pub fn leq(&self, other: &MonotoneMap) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self
                .table
                .iter()
                .zip(&other.table)
                .all(|(&a, &b)| self.codomain.leq(a, b))
    }

    /// `other ∘ self`, defined when the posets line up.
    pub fn compose(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        if self.codomain != other.domain {
            return Err(Error::Input(format!(
                "cannot compose {} after {}: posets do not match",
                other.name, self.name
            )));
        }
        let table = self.table.iter().map(|&v| other.table[v]).collect();
        MonotoneMap::new(
            &format!("{}∘{}", other.name, self.name),
            self.domain.clone(),
            other.codomain.clone(),
            table,
        )
    }

    pub fn identity(p: &Arc<Poset>) -> MonotoneMap {
        MonotoneMap {
            name: format!("id_{}", p.name),
            domain: p.clone(),
            codomain: p.clone(),
            table: (0..p.len()).collect(),
        }
    }
}

/// All monotone maps between two posets, with the pointwise order.
/// Elements are named `f0, f1, ...` in enumeration order.
pub struct HomPoset {
    pub poset: Arc<Poset>,
    pub maps: Vec<MonotoneMap>,
}

/// Enumerate `hom(domain, codomain)` by filtering all total maps, taken
/// in lexicographic table order for determinism.
pub fn hom(domain: &Arc<Poset>, codomain: &Arc<Poset>) -> HomPoset {
    let dn = domain.len();
    let cn = codomain.len();
    let mut maps = Vec::new();
    let mut table = vec![0usize; dn];
    loop {
        let monotone = (0..dn).all(|a| {
            (0..dn).all(|b| !domain.leq(a, b) || codomain.leq(table[a], table[b]))
        });
        if monotone {
            maps.push(table.clone());
        }
        // next assignment in lexicographic order
        let mut i = dn;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < cn {
                break;
            }
            table[i] = 0;
        }
        if table.iter().all(|&v| v == 0) {
            break;
        }
    }
    let n = maps.len();
    let name = format!("hom({},{})", domain.name, codomain.name);
    let elems: Vec<String> = (0..n).map(|i| format!("f{i}")).collect();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = maps[a].iter().zip(&maps[b]).all(|(&x, &y)| codomain.leq(x, y));
        }
    }
    let poset = intern(name.clone(), elems, leq, Vec::new())
        .expect("hom posets inherit top and bottom from the codomain");
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(i, table)| MonotoneMap {
            name: format!("f{i}"),
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        })
        .collect();
    HomPoset { poset, maps }
}

/// `F(A) = hom(A, bool)`.
pub fn fun_poset(a: &Arc<Poset>) -> HomPoset {
    hom(a, &bool_poset())
}

/// λ : A^op × A → bool, true exactly on pairs with `a ≤ b`.
pub fn lambda_map(p: &Arc<Poset>) -> MonotoneMap {
    relation_map(p, false)
}

/// ρ : A × A^op → bool, true exactly on pairs with `a ≰ b`.
pub fn rho_map(p: &Arc<Poset>) -> MonotoneMap {
    relation_map(p, true)
}

fn relation_map(p: &Arc<Poset>, rho: bool) -> MonotoneMap {
    let b = bool_poset();
    let dp = dual(p);
    let dom = if rho { product(p, &dp) } else { product(&dp, p) };
    let mut table = vec![0; dom.len()];
    for x in 0..p.len() {
        for y in 0..p.len() {
            // dual posets keep element indices, so x names both a and a^op
            let (_, e) = if rho { pair_elem(p, x, &dp, y) } else { pair_elem(&dp, x, p, y) };
            let holds = if rho { !p.leq(x, y) } else { p.leq(x, y) };
            table[e] = if holds { b.top() } else { b.bottom() };
        }
    }
    MonotoneMap::new(if rho { "rho" } else { "lambda" }, dom, b, table)
        .expect("comparison maps are monotone by construction")
}

fn boolean_op(name: &str, f: impl Fn(bool, bool) -> bool) -> MonotoneMap {
    let b = bool_poset();
    let dom = product(&b, &b);
    let mut table = vec![0; dom.len()];
    for x in 0..2 {
        for y in 0..2 {
            let (_, e) = pair_elem(&b, x, &b, y);
            table[e] = if f(x == b.top(), y == b.top()) { b.top() } else { b.bottom() };
        }
    }
    MonotoneMap::new(name, dom, b, table).expect("boolean operations are monotone")
}

pub fn and_map() -> MonotoneMap {
    boolean_op("and", |x, y| x && y)
}

pub fn or_map() -> MonotoneMap {
    boolean_op("or", |x, y| x || y)
}

/// ε : A × F(A) → bool, the application map `ε(a, f) = f(a)`.
pub fn eps_map(a: &Arc<Poset>) -> MonotoneMap {
    let b = bool_poset();
    let fa = fun_poset(a);
    let dom = product(a, &fa.poset);
    let mut table = vec![0; dom.len()];
    for x in 0..a.len() {
        for (i, m) in fa.maps.iter().enumerate() {
            let (_, e) = pair_elem(a, x, &fa.poset, i);
            table[e] = m.apply(x);
        }
    }
    MonotoneMap::new("eps", dom, b, table).expect("application map is monotone")
}

/// Quotient a preorder by mutual comparability. Classes are named after
/// their lexicographically least member; the projection is returned as a
/// table from input index to class element.
pub fn quotient_preorder(
    name: &str,
    elems: &[&str],
    preleq: &dyn Fn(usize, usize) -> bool,
) -> Result<(Arc<Poset>, Vec<ElemId>)> {
    let n = elems.len();
    for a in 0..n {
        if !preleq(a, a) {
            return Err(Error::Input("preorder is not reflexive".into()));
        }
        for b in 0..n {
            for c in 0..n {
                if preleq(a, b) && preleq(b, c) && !preleq(a, c) {
                    return Err(Error::Input("preorder is not transitive".into()));
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut class_members: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let id = class_members.len();
        let members: Vec<usize> =
            (0..n).filter(|&b| preleq(a, b) && preleq(b, a)).collect();
        for &m in &members {
            class_of[m] = id;
        }
        class_members.push(members);
    }
    let k = class_members.len();
    let mut names: Vec<String> = class_members
        .iter()
        .map(|ms| ms.iter().map(|&m| elems[m]).min().unwrap().to_string())
        .collect();
    // keep class order stable but names unique even for odd inputs
    for i in 0..k {
        if names[..i].contains(&names[i]) {
            names[i] = format!("{}'", names[i]);
        }
    }
    let mut leq = vec![false; k * k];
    for (i, mi) in class_members.iter().enumerate() {
        for (j, mj) in class_members.iter().enumerate() {
            leq[i * k + j] = preleq(mi[0], mj[0]);
        }
    }
    let poset = intern(name.to_string(), names, leq, Vec::new())?;
    Ok((poset, class_of))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bool_basics() {
        let b = bool_poset();
        assert!(b.leq_name("bot", "top").unwrap());
        assert!(!b.leq_name("top", "bot").unwrap());
        for e in 0..b.len() {
            assert!(b.leq(e, e));
        }
        assert_eq!(b.elem_name(b.top()), "top");
        assert_eq!(b.elem_name(b.bottom()), "bot");
        assert!(b.leq_name("top", "nope").is_err());
    }

    #[test]
    fn diamond_middles_incomparable() {
        let d = diamond();
        assert!(!d.leq_name("a", "b").unwrap());
        assert!(!d.leq_name("b", "a").unwrap());
        assert!(d.leq_name("bot", "a").unwrap());
        assert!(d.leq_name("a", "top").unwrap());
    }

    #[test]
    fn product_with_one_is_identity() {
        let b = bool_poset();
        assert_eq!(product(&b, &one()), b);
        assert_eq!(product(&one(), &b), b);
        assert_eq!(product(&one(), &one()), one());
    }

    #[test]
    fn product_bool_bool_matches_hand_table() {
        let b = bool_poset();
        let p = product(&b, &b);
        assert_eq!(p.len(), 4);
        // all 16 relation checks against the componentwise definition
        for a1 in 0..2 {
            for b1 in 0..2 {
                let (_, x) = pair_elem(&b, a1, &b, b1);
                for a2 in 0..2 {
                    for b2 in 0..2 {
                        let (_, y) = pair_elem(&b, a2, &b, b2);
                        assert_eq!(p.leq(x, y), b.leq(a1, a2) && b.leq(b1, b2));
                    }
                }
            }
        }
        // two incomparable middle elements
        let bt = p.elem("(bot,top)").unwrap();
        let tb = p.elem("(top,bot)").unwrap();
        assert!(!p.leq(bt, tb) && !p.leq(tb, bt));
    }

    #[test]
    fn product_flattens_associatively() {
        let b = bool_poset();
        let c = chain3();
        let left = product(&product(&b, &c), &b);
        let right = product(&b, &product(&c, &b));
        assert_eq!(left, right);
        assert_eq!(left.factors().len(), 3);
    }

    #[test]
    fn dual_is_involution_and_swaps_extremes() {
        for p in [bool_poset(), chain3(), diamond()] {
            let d = dual(&p);
            assert_eq!(dual(&d), p);
            assert_eq!(d.elem_name(d.top()), format!("{}^op", p.elem_name(p.bottom())));
            for a in 0..p.len() {
                for b in 0..p.len() {
                    assert_eq!(d.leq(a, b), p.leq(b, a));
                }
            }
        }
        assert_eq!(dual(&one()), one());
    }

    #[test]
    fn dual_distributes_over_product() {
        let b = bool_poset();
        let c = chain3();
        assert_eq!(dual(&product(&b, &c)), product(&dual(&b), &dual(&c)));
    }

    /// Brute-force oracle: all |B|^|A| total maps, filtered for
    /// monotonicity by direct definition.
    fn count_monotone_brute(a: &Arc<Poset>, b: &Arc<Poset>) -> usize {
        let an = a.len();
        let bn = b.len();
        let total = bn.pow(an as u32);
        (0..total)
            .filter(|&code| {
                let table: Vec<usize> = (0..an)
                    .map(|i| (code / bn.pow((an - 1 - i) as u32)) % bn)
                    .collect();
                (0..an).all(|x| (0..an).all(|y| !a.leq(x, y) || b.leq(table[x], table[y])))
            })
            .count()
    }

    #[test]
    fn hom_counts_match_brute_force() {
        let b = bool_poset();
        assert_eq!(hom(&one(), &b).maps.len(), 2);
        assert_eq!(hom(&b, &b).maps.len(), 3);
        assert_eq!(hom(&chain3(), &b).maps.len(), 4);
        for dom in [one(), bool_poset(), chain3(), diamond()] {
            assert_eq!(hom(&dom, &b).maps.len(), count_monotone_brute(&dom, &b));
        }
    }

    #[test]
    fn hom_bool_bool_is_a_chain() {
        let h = hom(&bool_poset(), &bool_poset());
        let names: Vec<_> = h.maps.iter().map(|m| m.name().to_string()).collect();
        assert_eq!(names, ["f0", "f1", "f2"]);
        assert!(h.poset.leq_name("f0", "f1").unwrap());
        assert!(h.poset.leq_name("f1", "f2").unwrap());
        // f1 is the identity
        let b = bool_poset();
        assert_eq!(h.maps[1].apply(b.bottom()), b.bottom());
        assert_eq!(h.maps[1].apply(b.top()), b.top());
    }

    #[test]
    fn lambda_rho_examples() {
        let b = bool_poset();
        let lam = lambda_map(&b);
        assert_eq!(lam.apply_name("(top^op,bot)").unwrap(), "bot");
        assert_eq!(lam.apply_name("(bot^op,bot)").unwrap(), "top");
        assert_eq!(lam.apply_name("(top^op,top)").unwrap(), "top");

        let d = diamond();
        let lam_d = lambda_map(&d);
        assert_eq!(lam_d.apply_name("(a^op,b)").unwrap(), "bot");

        let rho = rho_map(&b);
        assert_eq!(rho.apply_name("(bot,top^op)").unwrap(), "bot");
        assert_eq!(rho.apply_name("(top,bot^op)").unwrap(), "top");
        let rho_c = rho_map(&chain3());
        assert_eq!(rho_c.apply_name("(h,h^op)").unwrap(), "bot");
    }

    #[test]
    fn boolean_maps() {
        let and = and_map();
        let or = or_map();
        assert_eq!(and.apply_name("(top,top)").unwrap(), "top");
        assert_eq!(and.apply_name("(top,bot)").unwrap(), "bot");
        assert_eq!(or.apply_name("(bot,bot)").unwrap(), "bot");
        assert_eq!(or.apply_name("(bot,top)").unwrap(), "top");
    }

    #[test]
    fn monotonicity_verified_exhaustively() {
        // MonotoneMap::new already checks; re-assert through the public order
        for p in [bool_poset(), chain3(), diamond()] {
            let lam = lambda_map(&p);
            let dom = lam.domain().clone();
            for a in 0..dom.len() {
                for b in 0..dom.len() {
                    if dom.leq(a, b) {
                        assert!(bool_poset().leq(lam.apply(a), lam.apply(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn application_map_examples() {
        let b = bool_poset();
        let fb = fun_poset(&b);
        // f0 = const bot, f1 = id, f2 = const top
        assert_eq!(fb.maps[1].apply_name("bot").unwrap(), "bot");
        assert_eq!(fb.maps[2].apply_name("bot").unwrap(), "top");
        let eps = eps_map(&b);
        assert_eq!(eps.apply_name("(bot,f1)").unwrap(), "bot");
        assert_eq!(eps.apply_name("(bot,f2)").unwrap(), "top");

        let c = chain3();
        let fc = fun_poset(&c);
        // the map that is top only on top: read its value at h off the table
        let only_top = fc
            .maps
            .iter()
            .find(|m| {
                m.apply(c.elem("top").unwrap()) == b.top()
                    && m.apply(c.elem("h").unwrap()) == b.bottom()
                    && m.apply(c.elem("bot").unwrap()) == b.bottom()
            })
            .expect("hom(chain3,bool) contains the top-only map");
        assert_eq!(only_top.apply_name("h").unwrap(), "bot");
    }

    #[test]
    fn quotient_examples() {
        // already antisymmetric: isomorphic output, identity-like projection
        let elems = ["x", "y"];
        let leq = |a: usize, b: usize| a == b || (a == 0 && b == 1);
        let (p, proj) = quotient_preorder("q1", &elems, &leq).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(proj, vec![0, 1]);

        // two mutually-≤ elements collapse into one class
        let leq2 = |_: usize, _: usize| true;
        let (p2, proj2) = quotient_preorder("q2", &elems, &leq2).unwrap();
        assert_eq!(p2.len(), 1);
        assert_eq!(proj2, vec![0, 0]);

        // non-transitive input is rejected
        let elems3 = ["x", "y", "z"];
        let bad = |a: usize, b: usize| a == b || (a == 0 && b == 1) || (a == 1 && b == 2);
        assert!(quotient_preorder("q3", &elems3, &bad).is_err());
    }

    #[test]
    fn completion_preorder_quotients_to_chain() {
        // the two-cell region with stones on its border: completions
        // BB < BW < WB ≃ WW under the completion order
        let elems = ["BB", "BW", "WB", "WW"];
        let rank = |i: usize| match i {
            0 => 0,
            1 => 1,
            _ => 2,
        };
        let leq = move |a: usize, b: usize| rank(a) <= rank(b);
        let (p, proj) = quotient_preorder("fig41", &elems, &leq).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(proj[2], proj[3]);
        assert!(p.leq(proj[0], proj[1]) && p.leq(proj[1], proj[2]));
    }

    #[test]
    fn rejects_bad_posets() {
        assert!(Poset::new("cyc", &["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(Poset::new("anti", &["a", "b"], &[]).is_err()); // no top
        assert!(Poset::new("dup", &["a", "a"], &[]).is_err());
    }

    #[test]
    fn text_round_trip_is_byte_stable() {
        for p in [bool_poset(), chain3(), diamond()] {
            let text = p.serialize();
            let q = Poset::parse(&text).unwrap();
            assert_eq!(p, q);
            assert_eq!(q.serialize(), text);
        }
        let parsed = Poset::parse("# comment\nposet bool\nelems bot top\nle bot top\n").unwrap();
        assert_eq!(parsed, bool_poset());
    }

    #[test]
    fn interning_reuses_structurally_equal_posets() {
        let a = Poset::new("p", &["x", "y"], &[("x", "y")]).unwrap();
        let b = Poset::new("p", &["x", "y"], &[("x", "y")]).unwrap();
        assert_eq!(a.id(), b.id());
        let c = Poset::new("p2", &["x", "y"], &[("x", "y")]).unwrap();
        assert_ne!(a.id(), c.id());
    }
}
