//! Census of premotive *-antimonotone games up to intrinsic equivalence.
//!
//! Both properties are hereditary, so a qualifying game of depth d+1 has
//! qualifying options of depth at most d, and within the premotive
//! parity class an option may be swapped for its canonical form without
//! changing the equivalence class. The census therefore grows level by
//! level: candidates are composites over the class representatives found
//! so far, filtered and canonicalized. This covers every equivalence
//! class realized up to the requested depth without materializing the
//! full (hyper-exponential) space of game forms.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Budget, Result};
use crate::gameform::{self, Game};
use crate::order::bounded_subsets;
use crate::poset::Poset;
use crate::{canonical, props};

/// Canonical representatives of all equivalence classes of premotive
/// *-antimonotone games over `p` with depth at most `max_depth`, sorted
/// by serialization.
pub fn distinct_census(
    p: &Arc<Poset>,
    max_depth: u32,
    budget: &Budget,
) -> Result<Vec<Arc<Game>>> {
    let mut reps: Vec<Arc<Game>> = (0..p.len()).map(|e| gameform::atom(p, e)).collect();
    let mut rep_ids: HashSet<u32> = reps.iter().map(|g| g.id()).collect();
    let mut tried: HashSet<u32> = HashSet::new();
    for _ in 1..=max_depth {
        let pool = reps.clone();
        let subsets = bounded_subsets(&pool, pool.len());
        let mut grew = false;
        for l in &subsets {
            for r in &subsets {
                budget.tick(1, "distinct census")?;
                let cand = gameform::composite(l.clone(), r.clone())
                    .expect("census option sets are nonempty");
                if !tried.insert(cand.id()) {
                    continue;
                }
                if !props::is_star_antimonotone(&cand) || !props::is_premotive(&cand) {
                    continue;
                }
                let canon = canonical::canonical_form(&cand, budget)?.game;
                if rep_ids.insert(canon.id()) {
                    reps.push(canon);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    reps.sort_by_key(|g| gameform::serialize(g));
    Ok(reps)
}
