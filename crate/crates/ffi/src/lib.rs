//! C ABI for the rexcgt engine.
//!
//! Handles are opaque pointers owning reference-counted values; free
//! them with the matching `*_free` function. Functions that can fail
//! return a [`RexStatus`] (or a null pointer) and record a message
//! retrievable with [`rexcgt_last_error`]. The header is generated into
//! `include/rexcgt.h` by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::sync::Arc;

use rexcgt::gameform::{self, Game, Parity};
use rexcgt::poset::{self, Poset};
use rexcgt::rexboard::{board_outcome, Region, RegionAnalysis};
use rexcgt::{canonical, order, props, Budget, Error};

/// Status codes shared by all fallible entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RexStatus {
    RexOk = 0,
    RexInputError = 1,
    RexBudgetExceeded = 2,
    RexPreconditionViolation = 3,
    RexInternalError = 4,
    RexNullPointer = 5,
}

pub struct RexPoset(Arc<Poset>);
pub struct RexGame(Arc<Game>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let cstring = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn status_of(err: &Error) -> RexStatus {
    match err {
        Error::Input(_) => RexStatus::RexInputError,
        Error::Budget(_) => RexStatus::RexBudgetExceeded,
        Error::Precondition(_) => RexStatus::RexPreconditionViolation,
        Error::Internal(_) => RexStatus::RexInternalError,
    }
}

fn fail(err: &Error) -> RexStatus {
    set_error(&err.to_string());
    status_of(err)
}

fn fail_null<T>(err: &Error) -> *mut T {
    set_error(&err.to_string());
    std::ptr::null_mut()
}

/// # Safety
/// `ptr` must be either null or a valid nul-terminated C string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, RexStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(RexStatus::RexNullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        RexStatus::RexInputError
    })
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn rexcgt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the most recent error on this thread, or null. The caller
/// frees the result with `rexcgt_string_free`.
#[no_mangle]
pub extern "C" fn rexcgt_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Posets

/// One of the builtin posets: "one", "bool", "chain3", "diamond".
/// Returns null for unknown names.
///
/// # Safety
/// `name` must be a valid nul-terminated C string.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_poset_builtin(name: *const c_char) -> *mut RexPoset {
    let name = match read_str(name) {
        Ok(s) => s,
        Err(_) => return std::ptr::null_mut(),
    };
    match poset::builtin(name) {
        Some(p) => Box::into_raw(Box::new(RexPoset(p))),
        None => {
            set_error(&format!("unknown builtin poset {name:?}"));
            std::ptr::null_mut()
        }
    }
}

/// Parse the `poset`/`elems`/`le` text format.
///
/// # Safety
/// `text` must be a valid nul-terminated C string.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_poset_parse(text: *const c_char) -> *mut RexPoset {
    let text = match read_str(text) {
        Ok(s) => s,
        Err(_) => return std::ptr::null_mut(),
    };
    match Poset::parse(text) {
        Ok(p) => Box::into_raw(Box::new(RexPoset(p))),
        Err(e) => fail_null(&e),
    }
}

/// # Safety
/// `p` must be a live poset handle from this library.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_poset_serialize(p: *const RexPoset) -> *mut c_char {
    if p.is_null() {
        set_error("null poset handle");
        return std::ptr::null_mut();
    }
    out_string((*p).0.serialize())
}

/// # Safety
/// `p` must be a live poset handle; `a` and `b` nul-terminated strings;
/// `out` a valid bool location.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_poset_leq(
    p: *const RexPoset,
    a: *const c_char,
    b: *const c_char,
    out: *mut bool,
) -> RexStatus {
    if p.is_null() || out.is_null() {
        set_error("null argument");
        return RexStatus::RexNullPointer;
    }
    let (a, b) = match (read_str(a), read_str(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    match (*p).0.leq_name(a, b) {
        Ok(v) => {
            *out = v;
            RexStatus::RexOk
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `p` must be a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_poset_free(p: *mut RexPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

// ---------------------------------------------------------------------------
// Games

/// Parse a game expression whose atoms resolve against `p`.
///
/// # Safety
/// `p` must be a live poset handle and `expr` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_parse(
    p: *const RexPoset,
    expr: *const c_char,
) -> *mut RexGame {
    if p.is_null() {
        set_error("null poset handle");
        return std::ptr::null_mut();
    }
    let expr = match read_str(expr) {
        Ok(s) => s,
        Err(_) => return std::ptr::null_mut(),
    };
    match gameform::parse(expr, &(*p).0) {
        Ok(g) => Box::into_raw(Box::new(RexGame(g))),
        Err(e) => fail_null(&e),
    }
}

/// # Safety
/// `g` must be a live game handle.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_serialize(g: *const RexGame) -> *mut c_char {
    if g.is_null() {
        set_error("null game handle");
        return std::ptr::null_mut();
    }
    out_string(gameform::serialize(&(*g).0))
}

/// The poset a game is played over, as a fresh handle.
///
/// # Safety
/// `g` must be a live game handle.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_poset(g: *const RexGame) -> *mut RexPoset {
    if g.is_null() {
        set_error("null game handle");
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(RexPoset((*g).0.poset().clone())))
}

/// # Safety
/// `a` and `b` must be live game handles.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_sum(a: *const RexGame, b: *const RexGame) -> *mut RexGame {
    if a.is_null() || b.is_null() {
        set_error("null game handle");
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(RexGame(gameform::sum(&(*a).0, &(*b).0))))
}

/// # Safety
/// `g` must be a live game handle.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_dual(g: *const RexGame) -> *mut RexGame {
    if g.is_null() {
        set_error("null game handle");
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(RexGame(gameform::dual(&(*g).0))))
}

/// Parity: 0 even, 1 odd, 2 none, -1 on a null handle.
///
/// # Safety
/// `g` must be a live game handle.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_parity(g: *const RexGame) -> i32 {
    if g.is_null() {
        set_error("null game handle");
        return -1;
    }
    match gameform::parity(&(*g).0) {
        Parity::Even => 0,
        Parity::Odd => 1,
        Parity::NoParity => 2,
    }
}

/// # Safety
/// `a`, `b` must be live game handles and `out` a valid bool location.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_leq(
    a: *const RexGame,
    b: *const RexGame,
    out: *mut bool,
) -> RexStatus {
    binary_predicate(a, b, out, order::leq)
}

/// # Safety
/// `a`, `b` must be live game handles and `out` a valid bool location.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_tri(
    a: *const RexGame,
    b: *const RexGame,
    out: *mut bool,
) -> RexStatus {
    binary_predicate(a, b, out, order::tri)
}

unsafe fn binary_predicate(
    a: *const RexGame,
    b: *const RexGame,
    out: *mut bool,
    f: impl Fn(&Arc<Game>, &Arc<Game>) -> Result<bool, Error>,
) -> RexStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        set_error("null argument");
        return RexStatus::RexNullPointer;
    }
    match f(&(*a).0, &(*b).0) {
        Ok(v) => {
            *out = v;
            RexStatus::RexOk
        }
        Err(e) => fail(&e),
    }
}

/// Outcome class of a game over bool, written to `out` as one of
/// 'L', 'N', 'P', 'R'.
///
/// # Safety
/// `g` must be a live game handle and `out` a valid char location.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_outcome(g: *const RexGame, out: *mut c_char) -> RexStatus {
    if g.is_null() || out.is_null() {
        set_error("null argument");
        return RexStatus::RexNullPointer;
    }
    match order::outcome(&(*g).0) {
        Ok(o) => {
            *out = o.symbol() as c_char;
            RexStatus::RexOk
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `g` must be a live game handle and `out` a valid bool location.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_is_premotive(
    g: *const RexGame,
    out: *mut bool,
) -> RexStatus {
    if g.is_null() || out.is_null() {
        set_error("null argument");
        return RexStatus::RexNullPointer;
    }
    *out = props::is_premotive(&(*g).0);
    RexStatus::RexOk
}

/// # Safety
/// `g` must be a live game handle and `out` a valid bool location.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_is_star_antimonotone(
    g: *const RexGame,
    out: *mut bool,
) -> RexStatus {
    if g.is_null() || out.is_null() {
        set_error("null argument");
        return RexStatus::RexNullPointer;
    }
    *out = props::is_star_antimonotone(&(*g).0);
    RexStatus::RexOk
}

/// Canonical form of a premotive parity game, or null on refusal.
/// `budget` of 0 selects the default node budget.
///
/// # Safety
/// `g` must be a live game handle.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_canonical(g: *const RexGame, budget: u64) -> *mut RexGame {
    if g.is_null() {
        set_error("null game handle");
        return std::ptr::null_mut();
    }
    let budget = Budget::new(if budget == 0 { rexcgt::DEFAULT_BUDGET } else { budget });
    match canonical::canonical_form(&(*g).0, &budget) {
        Ok(c) => Box::into_raw(Box::new(RexGame(c.game))),
        Err(e) => fail_null(&e),
    }
}

/// # Safety
/// `g` must be a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_game_free(g: *mut RexGame) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

// ---------------------------------------------------------------------------
// Boards

/// The game form of a board position over bool. `budget` of 0 selects
/// the default node budget.
///
/// # Safety
/// `board_text` must be a valid nul-terminated C string.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_board_game(board_text: *const c_char, budget: u64) -> *mut RexGame {
    let text = match read_str(board_text) {
        Ok(s) => s,
        Err(_) => return std::ptr::null_mut(),
    };
    let budget = Budget::new(if budget == 0 { rexcgt::DEFAULT_BUDGET } else { budget });
    let build = || -> Result<Arc<Game>, Error> {
        let region = Region::parse_board(text)?;
        RegionAnalysis::analyze(region, &budget)?.bool_game(&budget)
    };
    match build() {
        Ok(g) => Box::into_raw(Box::new(RexGame(g))),
        Err(e) => fail_null(&e),
    }
}

/// Outcome class of a board by exhaustive play, written to `out` as one
/// of 'L', 'N', 'P', 'R'.
///
/// # Safety
/// `board_text` must be a nul-terminated string and `out` a valid char
/// location.
#[no_mangle]
pub unsafe extern "C" fn rexcgt_board_outcome(
    board_text: *const c_char,
    budget: u64,
    out: *mut c_char,
) -> RexStatus {
    if out.is_null() {
        set_error("null out pointer");
        return RexStatus::RexNullPointer;
    }
    let text = match read_str(board_text) {
        Ok(s) => s,
        Err(s) => return s,
    };
    let budget = Budget::new(if budget == 0 { rexcgt::DEFAULT_BUDGET } else { budget });
    let run = || -> Result<char, Error> {
        let region = Region::parse_board(text)?;
        Ok(board_outcome(&region, &budget)?.symbol())
    };
    match run() {
        Ok(symbol) => {
            *out = symbol as c_char;
            RexStatus::RexOk
        }
        Err(e) => fail(&e),
    }
}
