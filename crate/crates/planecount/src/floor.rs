//! Floor-diagram enumeration for absolute and relative plane curve counts,
//! plus the degree-splitting recursion as an independent route to `N_d`.
//!
//! A floor diagram for degree `d` has `d` totally ordered floors, a spanning
//! tree of weighted elevator edges between them, and weighted downward ends
//! placed on floors. Requiring every floor to have net downward flow 1
//! determines all elevator weights from the end placement; a diagram is kept
//! only if every weight is at least 1. The count attached to a tangency
//! profile sums, over diagrams, multiplicity × markings / automorphisms:
//!
//! * multiplicity `μ` = product of squared elevator weights times the product
//!   of all end weights (fixed and free);
//! * markings `ν` = linear extensions of the marking poset (floors chained
//!   bottom to top, each elevator strictly between its floors, each free end
//!   strictly below its floor; fixed ends are not marked);
//! * automorphisms = factorials of the numbers of identical ends sharing a
//!   floor, weight, and fixed/free class.
//!
//! The profile `(α, β)` lists fixed-end and free-end weights. `N_d` is the
//! all-free, all-weight-1 count; a single weight-`w` free or fixed end gives
//! the weighted-end counts the line-descendant recursions consume.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ComputeError;
use crate::poset::count_linear_extensions;
use crate::rational::{binomial, Rational};

/// Fixed-end (`alpha`) and free-end (`beta`) weight multisets of a relative
/// count; both kept sorted descending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TangencyProfile {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl TangencyProfile {
    pub fn new(mut alpha: Vec<i64>, mut beta: Vec<i64>) -> Result<Self, ComputeError> {
        if alpha.iter().chain(beta.iter()).any(|&w| w < 1) {
            return Err(ComputeError::invalid("end weights must be ≥ 1"));
        }
        if alpha.len() > 1 {
            return Err(ComputeError::invalid("at most one fixed end is supported"));
        }
        alpha.sort_unstable_by(|a, b| b.cmp(a));
        beta.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TangencyProfile { alpha, beta })
    }

    /// The profile of the plain count `N_d`: `d` free ends of weight 1.
    pub fn plain(d: i64) -> Self {
        TangencyProfile { alpha: Vec::new(), beta: vec![1; d as usize] }
    }

    pub fn total_weight(&self) -> i64 {
        self.alpha.iter().chain(self.beta.iter()).sum()
    }
}

/// One placed end: which floor it hangs from, its weight, and whether it is
/// the fixed end of the profile.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EndPlacement {
    pub floor: usize,
    pub weight: i64,
    pub fixed: bool,
}

/// A feasible floor diagram. Floors are `0..d`, floor 0 lowest; elevator
/// edges `(i, j, w)` have `i < j` and carry the unique flow weight `w ≥ 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FloorDiagram {
    pub d: i64,
    pub edges: Vec<(usize, usize, i64)>,
    pub ends: Vec<EndPlacement>,
}

impl FloorDiagram {
    /// Net downward flow at each floor: weights of elevators leaving downward
    /// plus end weights at the floor, minus elevators arriving from above.
    /// Every floor of a valid diagram has divergence exactly 1.
    pub fn divergences(&self) -> Vec<i64> {
        let d = self.d as usize;
        let mut div = vec![0i64; d];
        for &(i, j, w) in &self.edges {
            div[j] += w;
            div[i] -= w;
        }
        for e in &self.ends {
            div[e.floor] += e.weight;
        }
        div
    }
}

/// All labeled trees on `d` vertices, as edge lists with `i < j`, in a fixed
/// deterministic order (decoded from sequence codes counted in base `d`).
pub fn labeled_trees(d: usize) -> Vec<Vec<(usize, usize)>> {
    match d {
        0 => Vec::new(),
        1 => vec![Vec::new()],
        2 => vec![vec![(0, 1)]],
        _ => {
            let len = d - 2;
            let count = (d as u64).pow(len as u32);
            let mut trees = Vec::with_capacity(count as usize);
            let mut seq = vec![0usize; len];
            for code in 0..count {
                let mut c = code;
                for slot in seq.iter_mut() {
                    *slot = (c % d as u64) as usize;
                    c /= d as u64;
                }
                trees.push(tree_from_sequence(&seq, d));
            }
            trees
        }
    }
}

/// Decodes one length d-2 sequence over the vertex set into its tree.
fn tree_from_sequence(seq: &[usize], d: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1i32; d];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(d - 1);
    for &x in seq {
        let leaf = (0..d).find(|&v| degree[v] == 1).expect("leaf exists");
        degree[leaf] -= 1;
        degree[x] -= 1;
        edges.push((leaf.min(x), leaf.max(x)));
    }
    let mut last = (0..d).filter(|&v| degree[v] == 1);
    let (u, v) = (last.next().unwrap(), last.next().unwrap());
    edges.push((u.min(v), u.max(v)));
    edges.sort_unstable();
    edges
}

/// All ways to put `count` identical items into `bins` ordered bins.
fn compositions(count: i64, bins: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![0i64; bins];
    fill_compositions(count, 0, &mut current, &mut out);
    out
}

fn fill_compositions(left: i64, bin: usize, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if bin + 1 == current.len() {
        current[bin] = left;
        out.push(current.clone());
        return;
    }
    for take in 0..=left {
        current[bin] = take;
        fill_compositions(left - take, bin + 1, current, out);
    }
}

/// Enumerates every feasible floor diagram for degree `d` and the given
/// profile, in a deterministic order.
pub fn enumerate_floor_diagrams(
    d: i64,
    profile: &TangencyProfile,
) -> Result<Vec<FloorDiagram>, ComputeError> {
    if d < 1 {
        return Err(ComputeError::invalid("d must be ≥ 1"));
    }
    if profile.total_weight() != d {
        return Err(ComputeError::invalid(format!(
            "end weights must sum to d: got {} for d={}",
            profile.total_weight(),
            d
        )));
    }
    let floors = d as usize;

    // Group the profile into (weight, fixed) classes with their counts; ends
    // within a class are identical, so placements are per-class compositions.
    let mut classes: Vec<(i64, bool, i64)> = Vec::new();
    for (list, fixed) in [(&profile.alpha, true), (&profile.beta, false)] {
        for &w in list {
            match classes.iter_mut().find(|c| c.0 == w && c.1 == fixed) {
                Some(c) => c.2 += 1,
                None => classes.push((w, fixed, 1)),
            }
        }
    }
    let placements_per_class: Vec<Vec<Vec<i64>>> =
        classes.iter().map(|&(_, _, count)| compositions(count, floors)).collect();

    let mut diagrams = Vec::new();
    for tree in labeled_trees(floors) {
        // For each elevator, the set of floors on its upper side (the
        // component of the upper endpoint once the elevator is removed).
        let upper_masks: Vec<u32> = tree
            .iter()
            .enumerate()
            .map(|(skip, &(_, j, ))| component_mask(&tree, skip, j))
            .collect();

        // Odometer over the per-class placement choices.
        let mut choice = vec![0usize; classes.len()];
        loop {
            let mut end_weight = vec![0i64; floors];
            for (ci, &(w, _, _)) in classes.iter().enumerate() {
                for (f, &c) in placements_per_class[ci][choice[ci]].iter().enumerate() {
                    end_weight[f] += w * c;
                }
            }

            // Solve the flow: each elevator carries (#upper floors) minus the
            // end weight on the upper side; all weights must be ≥ 1.
            let mut feasible = true;
            let mut weights = Vec::with_capacity(tree.len());
            for &mask in &upper_masks {
                let mut w = 0i64;
                for f in 0..floors {
                    if mask & (1 << f) != 0 {
                        w += 1 - end_weight[f];
                    }
                }
                if w < 1 {
                    feasible = false;
                    break;
                }
                weights.push(w);
            }

            if feasible {
                let edges: Vec<(usize, usize, i64)> = tree
                    .iter()
                    .zip(&weights)
                    .map(|(&(i, j), &w)| (i, j, w))
                    .collect();
                let mut ends = Vec::new();
                for (ci, &(w, fixed, _)) in classes.iter().enumerate() {
                    for (f, &c) in placements_per_class[ci][choice[ci]].iter().enumerate() {
                        for _ in 0..c {
                            ends.push(EndPlacement { floor: f, weight: w, fixed });
                        }
                    }
                }
                let diagram = FloorDiagram { d, edges, ends };
                assert!(
                    diagram.divergences().iter().all(|&x| x == 1),
                    "flow solution violates unit divergence"
                );
                // Marked elements: floors, elevators, free ends. This must
                // match the point-constraint count of the invariant.
                let marked = floors + tree.len() + profile.beta.len();
                let expected = 3 * d - 1
                    - profile.beta.iter().map(|w| w - 1).sum::<i64>()
                    - profile.alpha.iter().sum::<i64>();
                assert_eq!(marked as i64, expected, "marking count mismatch");
                diagrams.push(diagram);
            }

            // Advance the odometer.
            let mut ci = 0;
            loop {
                if ci == classes.len() {
                    break;
                }
                choice[ci] += 1;
                if choice[ci] < placements_per_class[ci].len() {
                    break;
                }
                choice[ci] = 0;
                ci += 1;
            }
            if ci == classes.len() {
                break;
            }
        }
    }
    Ok(diagrams)
}

/// Floors reachable from `start` without crossing edge `skip`, as a bitmask.
fn component_mask(tree: &[(usize, usize)], skip: usize, start: usize) -> u32 {
    let mut mask = 1u32 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for (idx, &(a, b)) in tree.iter().enumerate() {
            if idx == skip {
                continue;
            }
            let next = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if mask & (1 << next) == 0 {
                mask |= 1 << next;
                stack.push(next);
            }
        }
    }
    mask
}

/// `μ(D)`: squared elevator weights times all end weights.
pub fn diagram_multiplicity(diagram: &FloorDiagram) -> i64 {
    let edges: i64 = diagram.edges.iter().map(|&(_, _, w)| w * w).product();
    let ends: i64 = diagram.ends.iter().map(|e| e.weight).product();
    edges * ends
}

/// `ν(D)`: linear extensions of the marking poset, with identical free ends
/// treated as distinguishable (the automorphism quotient is separate).
pub fn count_markings(diagram: &FloorDiagram) -> u128 {
    let floors = diagram.d as usize;
    let free_ends: Vec<&EndPlacement> = diagram.ends.iter().filter(|e| !e.fixed).collect();
    let n = floors + diagram.edges.len() + free_ends.len();
    // Element layout: floors 0..floors, then elevators, then free ends.
    let mut preds = vec![0u32; n];
    for f in 1..floors {
        preds[f] |= 1 << (f - 1);
    }
    for (idx, &(i, j, _)) in diagram.edges.iter().enumerate() {
        let e = floors + idx;
        preds[e] |= 1 << i;
        preds[j] |= 1 << e;
    }
    for (idx, end) in free_ends.iter().enumerate() {
        let y = floors + diagram.edges.len() + idx;
        preds[end.floor] |= 1 << y;
    }
    count_linear_extensions(&preds)
}

/// Order of the diagram's automorphism group: identical ends sharing a floor,
/// weight, and fixed/free class may be permuted freely.
pub fn automorphism_order(diagram: &FloorDiagram) -> u128 {
    let mut groups: Vec<((usize, i64, bool), u128)> = Vec::new();
    for e in &diagram.ends {
        let key = (e.floor, e.weight, e.fixed);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, c)) => *c += 1,
            None => groups.push((key, 1)),
        }
    }
    groups
        .iter()
        .map(|&(_, c)| (1..=c).product::<u128>())
        .product()
}

/// The relative invariant: Σ over feasible diagrams of `μ·ν/|Aut|`.
pub fn relative_invariant(d: i64, profile: &TangencyProfile) -> Result<Rational, ComputeError> {
    let diagrams = enumerate_floor_diagrams(d, profile)?;
    let mut total = Rational::zero();
    for diagram in &diagrams {
        let mu = diagram_multiplicity(diagram);
        let nu = count_markings(diagram);
        let aut = automorphism_order(diagram);
        let term = Rational::new(
            BigInt::from(mu) * BigInt::from(nu),
            BigInt::from(aut),
        );
        total += term;
    }
    assert!(
        crate::rational::is_counting_number(&total),
        "relative invariant must be a nonnegative integer, got {total}"
    );
    Ok(total)
}

/// `N_d` by floor enumeration: degree-d rational curves through 3d-1 points.
pub fn n_floor(d: i64) -> Result<Rational, ComputeError> {
    if d < 1 {
        return Err(ComputeError::invalid("d must be ≥ 1"));
    }
    relative_invariant(d, &TangencyProfile::plain(d))
}

/// `N_d` by the degree-splitting recursion
/// `N_d = Σ N_{d1} N_{d2} (d1²d2²·C(3d-4,3d1-2) − d1³d2·C(3d-4,3d1-1))`,
/// seeded with `N_1 = 1`. Independent of the floor enumeration.
pub fn kontsevich_n(d: i64) -> Result<Rational, ComputeError> {
    if d < 1 {
        return Err(ComputeError::invalid("d must be ≥ 1"));
    }
    let mut table: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for n in 2..=d {
        let mut total = BigInt::zero();
        for d1 in 1..n {
            let d2 = n - d1;
            let split = BigInt::from(d1 * d1 * d2 * d2) * binomial(3 * n - 4, 3 * d1 - 2)
                - BigInt::from(d1 * d1 * d1 * d2) * binomial(3 * n - 4, 3 * d1 - 1);
            total += &table[d1 as usize] * &table[d2 as usize] * split;
        }
        table.push(total);
    }
    Ok(Rational::from(table[d as usize].clone()))
}

/// Free weighted-end count: one free end of weight `w`, the rest weight 1.
/// Weight above the degree gives 0; weight 1 carries the factor `d` for the
/// choice of the remembered end.
pub fn n_w(d: i64, w: i64) -> Result<Rational, ComputeError> {
    if d < 1 || w < 1 {
        return Err(ComputeError::invalid("d and w must be ≥ 1"));
    }
    if w > d {
        return Ok(Rational::zero());
    }
    if w == 1 {
        return Ok(Rational::from(d) * n_floor(d)?);
    }
    let mut beta = vec![1i64; (d - w) as usize];
    beta.push(w);
    relative_invariant(d, &TangencyProfile::new(vec![], beta)?)
}

/// Fixed weighted-end count: one fixed end of weight `w`, free weight-1 ends
/// for the rest. Weight above the degree gives 0.
pub fn n_tilde(d: i64, w: i64) -> Result<Rational, ComputeError> {
    if d < 1 || w < 1 {
        return Err(ComputeError::invalid("d and w must be ≥ 1"));
    }
    if w > d {
        return Ok(Rational::zero());
    }
    let beta = vec![1i64; (d - w) as usize];
    relative_invariant(d, &TangencyProfile::new(vec![w], beta)?)
}
