//! Premotivity, *-antimonotonicity, and the lookahead predicate.
//!
//! Both global properties quantify over all followers, so they are
//! computed bottom-up over the shared DAG and cached per game.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gameform::{self, Game, Parity};
use crate::order::{self, Player};
use crate::poset;

/// Whether Left has a first-player winning strategy in the
/// self-comparison game of this one node (not its followers).
fn locally_premotive(g: &Arc<Game>) -> bool {
    let comp = order::comparison_game(g, g).expect("self-comparison shares the poset");
    order::left_wins(&comp, Player::Left, false).expect("comparison games are over bool")
}

/// A game is premotive when every follower is locally premotive.
pub fn is_premotive(g: &Arc<Game>) -> bool {
    *g.premotive.get_or_init(|| {
        locally_premotive(g)
            && g.left().iter().chain(g.right()).all(is_premotive)
    })
}

/// First follower that fails the local premotivity check, if any.
pub fn premotive_failure(g: &Arc<Game>) -> Option<Arc<Game>> {
    gameform::followers(g).into_iter().find(|f| !locally_premotive(f))
}

/// Local *-antimonotonicity: `G^L + * ≤ G ≤ G^R + *` for every option.
fn locally_star_antimonotone(g: &Arc<Game>) -> bool {
    if g.is_atomic() {
        return true;
    }
    let star = gameform::star();
    g.left()
        .iter()
        .all(|gl| order::leq(&gameform::sum(gl, &star), g).expect("sum with * stays over the poset"))
        && g.right().iter().all(|gr| {
            order::leq(g, &gameform::sum(gr, &star)).expect("sum with * stays over the poset")
        })
}

/// A game is *-antimonotone when every follower is locally so.
pub fn is_star_antimonotone(g: &Arc<Game>) -> bool {
    *g.star_antimonotone.get_or_init(|| {
        locally_star_antimonotone(g)
            && g.left().iter().chain(g.right()).all(is_star_antimonotone)
    })
}

/// First follower that fails the local *-antimonotonicity check, if any.
pub fn star_antimonotone_failure(g: &Arc<Game>) -> Option<Arc<Game>> {
    gameform::followers(g).into_iter().find(|f| !locally_star_antimonotone(f))
}

/// The lookahead predicate on games over bool: an even game must not
/// have outcome P. Interesting only on even premotive games, where it is
/// a theorem; it is vacuously true when the game is not even.
pub fn lookahead_holds(g: &Arc<Game>) -> Result<bool> {
    if g.poset() != &poset::bool_poset() {
        return Err(Error::Input(format!(
            "lookahead is evaluated over bool, got {}",
            g.poset().name()
        )));
    }
    if gameform::parity(g) != Parity::Even {
        return Ok(true);
    }
    let o = order::outcome(g)?;
    Ok(!(o.o_right && !o.o_left))
}

/// Aggregated property check for one game. `failing_follower` is present
/// exactly when one of the boolean properties fails.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub parity: Parity,
    pub premotive: bool,
    pub star_antimonotone: bool,
    pub failing_follower: Option<Arc<Game>>,
}

pub fn report(g: &Arc<Game>) -> PropertyReport {
    let premotive = is_premotive(g);
    let star = is_star_antimonotone(g);
    let failing_follower = if !premotive {
        premotive_failure(g)
    } else if !star {
        star_antimonotone_failure(g)
    } else {
        None
    };
    PropertyReport {
        parity: gameform::parity(g),
        premotive,
        star_antimonotone: star,
        failing_follower,
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parity: {}", self.parity)?;
        writeln!(f, "premotive: {}", self.premotive)?;
        writeln!(f, "star_antimonotone: {}", self.star_antimonotone)?;
        if let Some(w) = &self.failing_follower {
            writeln!(f, "failing_follower: {}", gameform::serialize(w))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gameform::{atom_name, parse, serialize, star, sum, zero};
    use crate::poset::bool_poset;

    fn pb(s: &str) -> Arc<Game> {
        parse(s, &bool_poset()).unwrap()
    }

    #[test]
    fn atoms_are_premotive_and_star_antimonotone() {
        for g in [atom_name(&bool_poset(), "top").unwrap(), zero()] {
            assert!(is_premotive(&g));
            assert!(is_star_antimonotone(&g));
        }
    }

    #[test]
    fn star_is_star_antimonotone() {
        assert!(is_star_antimonotone(&star()));
        assert!(is_premotive(&star()));
    }

    #[test]
    fn top_bot_reversal_is_not_star_antimonotone() {
        // {⊤|⊥}: the option inequality ⊤+* ≤ {⊤|⊥} fails, checked both by
        // the engine and by a direct expansion of the ≤ recursion
        let g = pb("{top|bot}");
        assert!(!is_star_antimonotone(&g));
        let top_star = sum(&atom_name(&bool_poset(), "top").unwrap(), &star());
        assert_eq!(serialize(&top_star), "{top|top}");
        // direct expansion: {⊤|⊤} ≤ {⊤|⊥} needs {⊤|⊤} ⊲ ⊥, i.e. some
        // right option ⊤ ≤ ⊥ (false) or some left option of ⊥ (none)
        assert!(!crate::order::tri(&top_star, &atom_name(&bool_poset(), "bot").unwrap()).unwrap());
        assert!(!crate::order::leq(&top_star, &g).unwrap());
    }

    #[test]
    fn nontransitive_middle_is_not_premotive() {
        // the transitivity failure of the intrinsic order lives in the
        // middle game not being premotive
        let w = pb("{{bot|bot}|{top|top}}");
        assert!(!is_premotive(&w));
        let r = report(&w);
        assert!(!r.premotive);
        assert!(r.failing_follower.is_some());
    }

    #[test]
    fn lookahead_examples() {
        assert!(lookahead_holds(&atom_name(&bool_poset(), "top").unwrap()).unwrap());
        // odd games are vacuously fine
        assert!(lookahead_holds(&pb("{bot|top}")).unwrap());
        // an even premotive game with o_R = top also has o_L = top
        let g = pb("{{bot|top}|{top|top}}");
        if is_premotive(&g) {
            assert!(lookahead_holds(&g).unwrap());
        }
        assert!(lookahead_holds(&star()).is_err());
    }

    #[test]
    fn report_format_is_flat_key_value() {
        let text = report(&pb("{bot|top}")).to_string();
        assert!(text.contains("parity: odd"));
        assert!(text.contains("premotive: true"));
        assert!(text.contains("star_antimonotone: true"));
        assert!(!text.contains("failing_follower"));
    }
}
