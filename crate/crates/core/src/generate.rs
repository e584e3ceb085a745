//! Bounded-exhaustive enumeration of game forms.
//!
//! Level 0 is the atoms; level d+1 adds every composite whose option
//! sets are subsets (of size at most `max_width`) of the games found so
//! far. The family is deterministic, so expected values frozen in tests
//! stay stable. Sizes grow steeply with the width bound; callers pick
//! bounds that keep the family enumerable.

use std::collections::HashSet;
use std::sync::Arc;

use crate::gameform::{self, Game};
use crate::order::bounded_subsets;
use crate::poset::Poset;

pub fn enumerate_games(p: &Arc<Poset>, max_depth: u32, max_width: usize) -> Vec<Arc<Game>> {
    let mut all: Vec<Arc<Game>> = (0..p.len()).map(|e| gameform::atom(p, e)).collect();
    let mut seen: HashSet<u32> = all.iter().map(|g| g.id()).collect();
    for _ in 1..=max_depth {
        let pool = all.clone();
        let subsets = bounded_subsets(&pool, max_width);
        for l in &subsets {
            for r in &subsets {
                let g = gameform::composite(l.clone(), r.clone())
                    .expect("enumerated option sets are nonempty");
                if seen.insert(g.id()) {
                    all.push(g);
                }
            }
        }
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{bool_poset, chain3};

    #[test]
    fn family_sizes_over_bool() {
        assert_eq!(enumerate_games(&bool_poset(), 0, 2).len(), 2);
        // 9 depth-1 composites from nonempty subsets of two atoms
        assert_eq!(enumerate_games(&bool_poset(), 1, 2).len(), 11);
        // width 1: atoms, then all {g|h} with g,h of depth ≤ 1
        assert_eq!(enumerate_games(&bool_poset(), 2, 1).len(), 2 + 6 * 6);
        assert_eq!(enumerate_games(&bool_poset(), 2, 2).len(), 2 + 9 + (66 * 66 - 9));
    }

    #[test]
    fn family_is_deterministic() {
        let a: Vec<u32> = enumerate_games(&chain3(), 1, 2).iter().map(|g| g.id()).collect();
        let b: Vec<u32> = enumerate_games(&chain3(), 1, 2).iter().map(|g| g.id()).collect();
        assert_eq!(a, b);
    }
}
