//! Genus-zero descendant correlators of the plane, evaluated by rewriting.
//!
//! A correlator `⟨ψ^{k_1}γ_1, …, ψ^{k_n}γ_n⟩_d` is reduced by the first
//! applicable rule:
//!
//! 1. dimension gate: `Σ(k_i + codim γ_i) = 3d + n − 1`, otherwise 0;
//! 2. degree 0: three-point values and the multinomial formula for `n ≥ 4`;
//! 3. all insertions plain points: the plane count `N_d`;
//! 4. string, dilaton, and divisor equations for `1`, `ψ1`, and `L`
//!    insertions;
//! 5. one- and two-point correlators: inverted divisor equations, with the
//!    three-point seed expanded directly;
//! 6. topological recursion on a ψ-insertion against two reference
//!    insertions, splitting the degree and distributing the rest.
//!
//! Each step lowers `(d, Σk_i, n)` lexicographically, so the rewriting
//! terminates. Values are memoized per evaluator on the canonical form, and
//! the recursion-choice policy is configurable so independence of the choices
//! can be tested.

use std::collections::HashMap;

use crate::error::ComputeError;
use crate::floor::kontsevich_n;
use crate::key::{Class, Correlator, Insertion};
use crate::rational::{multinomial, Rational};

/// Which ψ-insertion the topological recursion pulls out, and which two
/// insertions it keeps on the far factor. The value must not depend on the
/// choice; two policies are provided so tests can compare them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TrrStrategy {
    /// Last ψ-insertion in canonical order, against the two smallest others.
    Canonical,
    /// First ψ-insertion in canonical order, against the two largest others.
    Alternative,
}

/// Memoizing evaluator for descendant correlators.
pub struct DescendantEvaluator {
    memo: HashMap<String, Rational>,
    strategy: TrrStrategy,
}

impl Default for DescendantEvaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl DescendantEvaluator {
    pub fn new() -> Self {
        Self::with_strategy(TrrStrategy::Canonical)
    }

    pub fn with_strategy(strategy: TrrStrategy) -> Self {
        DescendantEvaluator { memo: HashMap::new(), strategy }
    }

    pub fn evaluate(&mut self, corr: &Correlator) -> Rational {
        let key = corr.to_string();
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let value = self.compute(corr);
        self.memo.insert(key, value.clone());
        value
    }

    fn compute(&mut self, corr: &Correlator) -> Rational {
        let d = corr.d;
        let ins = corr.insertions();
        let n = corr.n();

        if corr.total_psi() + corr.total_codim() != 3 * d + n - 1 {
            return Rational::zero();
        }
        if d == 0 {
            return degree_zero_value(ins);
        }
        if ins.iter().all(|i| i.psi == 0 && i.class == Class::Point) {
            debug_assert_eq!(n, 3 * d - 1);
            return kontsevich_n(d).expect("d ≥ 1");
        }

        // String equation: a plain fundamental-class insertion lowers one ψ
        // somewhere else.
        if let Some(pos) = find(ins, 0, Class::Fundamental) {
            let mut total = Rational::zero();
            for (j, item) in ins.iter().enumerate() {
                if j != pos && item.psi >= 1 {
                    let mut rest = corr.without(pos);
                    let jj = if j > pos { j - 1 } else { j };
                    rest[jj].psi -= 1;
                    total += self.eval_parts(d, rest);
                }
            }
            return total;
        }

        // Dilaton equation: a ψ1 insertion contributes a factor n − 3.
        if let Some(pos) = find(ins, 1, Class::Fundamental) {
            return Rational::from(n - 3) * self.eval_parts(d, corr.without(pos));
        }

        // Divisor equation for a plain line-class insertion.
        if let Some(pos) = find(ins, 0, Class::Line) {
            let rest = corr.without(pos);
            let mut total = Rational::from(d) * self.eval_parts(d, rest.clone());
            for (j, item) in rest.iter().enumerate() {
                if let Some(lowered) = lower(*item) {
                    let mut terms = rest.clone();
                    terms[j] = lowered;
                    total += self.eval_parts(d, terms);
                }
            }
            return total;
        }

        if n <= 2 {
            return self.small_correlator(d, ins);
        }
        self.topological_recursion(d, ins)
    }

    fn eval_parts(&mut self, d: i64, insertions: Vec<Insertion>) -> Rational {
        self.evaluate(&internal(d, insertions))
    }

    /// One- and two-point correlators, by running the divisor equation in
    /// reverse: pad with plain line classes up to three insertions, expand
    /// the padded correlator by topological recursion directly, and solve for
    /// the original value.
    fn small_correlator(&mut self, d: i64, ins: &[Insertion]) -> Rational {
        let line = Insertion::new(0, Class::Line);
        match ins {
            [a] => {
                assert!(a.psi >= 1, "one-point correlator without ψ survived the gate");
                let padded = internal(d, vec![line, line, *a]);
                let seed = self.topological_recursion(d, padded.insertions());
                let mut total = seed;
                if let Some(low) = lower(*a) {
                    total -= Rational::from(d) * self.eval_parts(d, vec![low]);
                    total -= self.eval_parts(d, vec![line, low]);
                }
                total / Rational::from(d * d)
            }
            [a, b] => {
                let padded = internal(d, vec![line, *a, *b]);
                let seed = self.topological_recursion(d, padded.insertions());
                let mut total = seed;
                if let Some(low) = lower(*a) {
                    total -= self.eval_parts(d, vec![low, *b]);
                }
                if let Some(low) = lower(*b) {
                    total -= self.eval_parts(d, vec![*a, low]);
                }
                total / Rational::from(d)
            }
            _ => unreachable!("small_correlator called with n > 2"),
        }
    }

    /// Genus-zero topological recursion. Pull one ψ off the chosen insertion,
    /// split the degree and the remaining insertions over two factors joined
    /// by a diagonal class pair, and keep the two reference insertions on the
    /// far factor.
    fn topological_recursion(&mut self, d: i64, ins: &[Insertion]) -> Rational {
        assert!(ins.len() >= 3);
        let (i1, i2, i3) = self.pick_indices(ins);
        let pulled = ins[i1];
        debug_assert!(pulled.psi >= 1);
        let lowered = Insertion::new(pulled.psi - 1, pulled.class);
        let rest: Vec<Insertion> = ins
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i1 && j != i2 && j != i3)
            .map(|(_, item)| *item)
            .collect();

        let mut total = Rational::zero();
        for d_left in 0..=d {
            let d_right = d - d_left;
            for mask in 0u32..(1 << rest.len()) {
                // Left factor keeps `lowered`, the masked rest, and one half
                // of the diagonal; skip it when unstable.
                let picked = mask.count_ones() as usize;
                if d_left == 0 && picked == 0 {
                    continue;
                }
                for codim_left in 0..=2i64 {
                    let left_class = Class::from_codim(codim_left).unwrap();
                    let right_class = Class::from_codim(2 - codim_left).unwrap();

                    let mut left = Vec::with_capacity(picked + 2);
                    left.push(lowered);
                    let mut right = Vec::with_capacity(rest.len() - picked + 3);
                    right.push(Insertion::new(0, right_class));
                    right.push(ins[i2]);
                    right.push(ins[i3]);
                    for (j, item) in rest.iter().enumerate() {
                        if mask & (1 << j) != 0 {
                            left.push(*item);
                        } else {
                            right.push(*item);
                        }
                    }
                    left.push(Insertion::new(0, left_class));

                    let left_value = self.eval_parts(d_left, left);
                    if left_value.is_zero() {
                        continue;
                    }
                    total += left_value * self.eval_parts(d_right, right);
                }
            }
        }
        total
    }

    fn pick_indices(&self, ins: &[Insertion]) -> (usize, usize, usize) {
        let with_psi = |j: &usize| ins[*j].psi >= 1;
        let i1 = match self.strategy {
            TrrStrategy::Canonical => (0..ins.len()).rev().find(with_psi),
            TrrStrategy::Alternative => (0..ins.len()).find(with_psi),
        }
        .expect("topological recursion needs a ψ-insertion");
        let mut others = (0..ins.len()).filter(|&j| j != i1);
        match self.strategy {
            TrrStrategy::Canonical => {
                let i2 = others.next().unwrap();
                let i3 = others.next().unwrap();
                (i1, i2, i3)
            }
            TrrStrategy::Alternative => {
                let picked: Vec<usize> = others.collect();
                let m = picked.len();
                (i1, picked[m - 2], picked[m - 1])
            }
        }
    }
}

fn find(ins: &[Insertion], psi: i64, class: Class) -> Option<usize> {
    ins.iter().position(|i| i.psi == psi && i.class == class)
}

/// The insertion with one ψ traded for one codimension, when that exists.
fn lower(i: Insertion) -> Option<Insertion> {
    if i.psi < 1 {
        return None;
    }
    Class::from_codim(i.class.codim() + 1).map(|c| Insertion::new(i.psi - 1, c))
}

fn internal(d: i64, insertions: Vec<Insertion>) -> Correlator {
    Correlator::new(d, insertions).expect("internally built correlator")
}

/// Degree-zero correlators: the classical intersection numbers of the plane.
fn degree_zero_value(ins: &[Insertion]) -> Rational {
    let n = ins.len() as i64;
    if n < 3 {
        return Rational::zero();
    }
    let codim: i64 = ins.iter().map(|i| i.class.codim()).sum();
    if codim != 2 {
        return Rational::zero();
    }
    if n == 3 {
        return if ins.iter().all(|i| i.psi == 0) {
            Rational::one()
        } else {
            Rational::zero()
        };
    }
    let powers: Vec<i64> = ins.iter().map(|i| i.psi).collect();
    Rational::from(multinomial(n - 3, &powers))
}

/// Evaluates one correlator with a fresh evaluator and the default policy.
pub fn descendant(corr: &Correlator) -> Rational {
    DescendantEvaluator::new().evaluate(corr)
}

/// Point descendants `⟨ψ^k P, P^{3d−2−k}⟩_d` with the exact-position count of
/// plain point insertions; `k = 0` is the plane count, out-of-range `k` is 0.
pub fn psi_p(d: i64, k: i64) -> Result<Rational, ComputeError> {
    psi_p_with(&mut DescendantEvaluator::new(), d, k)
}

/// Same as [`psi_p`] but reusing a caller-held evaluator, so related queries
/// share one memo table.
pub fn psi_p_with(
    evaluator: &mut DescendantEvaluator,
    d: i64,
    k: i64,
) -> Result<Rational, ComputeError> {
    if d < 1 {
        return Err(ComputeError::invalid("d must be ≥ 1"));
    }
    if k < 0 || k > 3 * d - 2 {
        return Ok(Rational::zero());
    }
    if k == 0 {
        return kontsevich_n(d);
    }
    let mut ins = vec![Insertion::new(k, Class::Point)];
    for _ in 0..(3 * d - 2 - k) {
        ins.push(Insertion::new(0, Class::Point));
    }
    Ok(evaluator.evaluate(&internal(d, ins)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corr(d: i64, spec: &[(i64, Class)]) -> Correlator {
        let ins = spec.iter().map(|&(k, c)| Insertion::new(k, c)).collect();
        Correlator::new(d, ins).unwrap()
    }

    #[test]
    fn dimension_gate_kills_off_balance_correlators() {
        let c = corr(1, &[(0, Class::Point), (0, Class::Point), (0, Class::Point)]);
        assert_eq!(descendant(&c), Rational::zero());
    }

    #[test]
    fn degree_zero_three_point_values() {
        let one = corr(0, &[(0, Class::Point), (0, Class::Fundamental), (0, Class::Fundamental)]);
        assert_eq!(descendant(&one), Rational::one());
        let lines = corr(0, &[(0, Class::Line), (0, Class::Line), (0, Class::Fundamental)]);
        assert_eq!(descendant(&lines), Rational::one());
        let with_psi = corr(0, &[(1, Class::Fundamental), (0, Class::Line), (0, Class::Line)]);
        assert_eq!(descendant(&with_psi), Rational::zero());
    }

    #[test]
    fn degree_zero_multinomial_values() {
        let c = corr(
            0,
            &[(1, Class::Point), (1, Class::Fundamental), (0, Class::Fundamental), (0, Class::Fundamental), (0, Class::Fundamental)],
        );
        assert_eq!(descendant(&c), Rational::from(2));
        let skewed = corr(
            0,
            &[(2, Class::Point), (0, Class::Fundamental), (0, Class::Fundamental), (0, Class::Fundamental), (0, Class::Fundamental)],
        );
        assert_eq!(descendant(&skewed), Rational::one());
    }

    #[test]
    fn plain_point_correlators_give_plane_counts() {
        for d in 1..=3 {
            let ins = vec![(0, Class::Point); (3 * d - 1) as usize];
            assert_eq!(descendant(&corr(d, &ins)), kontsevich_n(d).unwrap(), "d={d}");
        }
    }

    #[test]
    fn string_equation_applies() {
        // ⟨1, ψP, P⟩_1 reduces to ⟨P, P⟩_1 = 1.
        let c = corr(1, &[(0, Class::Fundamental), (1, Class::Point), (0, Class::Point)]);
        assert_eq!(descendant(&c), Rational::one());
    }

    #[test]
    fn divisor_equation_applies() {
        for d in 1..=3 {
            let mut ins = vec![(0, Class::Line)];
            ins.extend(vec![(0, Class::Point); (3 * d - 1) as usize]);
            let expected = Rational::from(d) * kontsevich_n(d).unwrap();
            assert_eq!(descendant(&corr(d, &ins)), expected, "d={d}");
        }
    }

    #[test]
    fn point_descendants_match_known_values() {
        assert_eq!(psi_p(1, 1).unwrap(), Rational::one());
        assert_eq!(psi_p(2, 1).unwrap(), Rational::one());
        assert_eq!(psi_p(3, 1).unwrap(), Rational::from(10));
    }

    #[test]
    fn point_descendants_vanish_out_of_range() {
        assert_eq!(psi_p(1, 2).unwrap(), Rational::zero());
        assert_eq!(psi_p(2, 5).unwrap(), Rational::zero());
        assert_eq!(psi_p(2, -1).unwrap(), Rational::zero());
    }

    #[test]
    fn top_psi_power_gives_inverse_cubed_factorials() {
        // ⟨ψ^{3d−2}P⟩_d = 1/(d!)³ for small d.
        let one = corr(1, &[(1, Class::Point)]);
        assert_eq!(descendant(&one), Rational::one());
        let two = corr(2, &[(4, Class::Point)]);
        assert_eq!(descendant(&two), Rational::ratio(1, 8));
    }

    #[test]
    fn recursion_choice_does_not_change_values() {
        let samples = [
            corr(2, &[(1, Class::Point), (0, Class::Point), (0, Class::Point), (0, Class::Point)]),
            corr(2, &[(1, Class::Point), (1, Class::Line), (0, Class::Point), (0, Class::Point)]),
            corr(2, &[(2, Class::Line), (0, Class::Point), (0, Class::Point), (0, Class::Point)]),
            corr(1, &[(1, Class::Point), (0, Class::Line)]),
        ];
        for c in &samples {
            let a = DescendantEvaluator::with_strategy(TrrStrategy::Canonical).evaluate(c);
            let b = DescendantEvaluator::with_strategy(TrrStrategy::Alternative).evaluate(c);
            assert_eq!(a, b, "{c}");
        }
    }

    #[test]
    fn insertion_order_does_not_change_values() {
        let a = corr(2, &[(1, Class::Point), (0, Class::Line), (1, Class::Line), (0, Class::Point), (0, Class::Point)]);
        let b = corr(2, &[(0, Class::Point), (1, Class::Line), (0, Class::Point), (1, Class::Point), (0, Class::Line)]);
        assert_eq!(descendant(&a), descendant(&b));
    }
}
