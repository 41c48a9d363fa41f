//! Linear-extension counting for small posets.
//!
//! The marking count of a floor diagram is the number of linear extensions of
//! its marking poset. Posets here have at most 20 elements (3d-1 for the
//! degrees in scope), so elements are bit positions and the count runs as a
//! dynamic program over reachable down-sets: `f(placed)` is the number of ways
//! to order the remaining elements, summing over elements whose predecessors
//! are all placed. The down-sets reachable from a mostly-chain poset are few,
//! so a hash-memo keeps the state space tiny in practice.

use std::collections::HashMap;

pub const MAX_ELEMENTS: usize = 20;

/// Counts linear extensions of the poset whose element `i` has the
/// predecessor set `preds[i]` (a bitmask over element indices). Predecessor
/// sets need not be transitively closed: only direct covers are required,
/// since an element becomes placeable exactly when all its predecessors are
/// placed, and transitive predecessors are forced earlier through the chain.
pub fn count_linear_extensions(preds: &[u32]) -> u128 {
    let n = preds.len();
    assert!(n <= MAX_ELEMENTS, "poset too large: {n} elements");
    if n == 0 {
        return 1;
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo: HashMap<u32, u128> = HashMap::new();
    count_from(0, full, preds, &mut memo)
}

fn count_from(placed: u32, full: u32, preds: &[u32], memo: &mut HashMap<u32, u128>) -> u128 {
    if placed == full {
        return 1;
    }
    if let Some(&v) = memo.get(&placed) {
        return v;
    }
    let mut total: u128 = 0;
    let mut remaining = full & !placed;
    while remaining != 0 {
        let x = remaining.trailing_zeros() as usize;
        remaining &= remaining - 1;
        if preds[x] & !placed == 0 {
            total += count_from(placed | (1 << x), full, preds, memo);
        }
    }
    memo.insert(placed, total);
    total
}
