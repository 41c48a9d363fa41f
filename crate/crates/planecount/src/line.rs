//! Descendants with a line constraint: `⟨ψ^k L⟩_d` with `3d−1−k` point
//! conditions, and the two-line invariant `⟨ψL, ψL⟩_d`.
//!
//! These invariants are not computed by the correlator rewriting in
//! [`crate::descendant`]; they satisfy their own degree-splitting recursions
//! whose boundary contributions include multi-component configurations with
//! weighted ends, valued through the relative counts of [`crate::floor`].
//! Two equivalent groupings of the main recursion are implemented (`form_a`,
//! `form_b`) so they can be cross-checked, along with specialized recursions
//! for `k ≤ 3`, closed formulas for `k ≤ 2`, and a closed formula for the
//! two-line invariant. Seeds in degree 1: `⟨ψL⟩_1 = 2`, `⟨ψ^k L⟩_1 = 0` for
//! `k ≥ 2`, `⟨ψL, ψL⟩_1 = 2`, and `⟨ψ^0 L⟩_d = d·N_d` in every degree.
//!
//! Every formula pulls its ingredient values through the [`Values`] provider,
//! so a memoizing engine can serve repeated subvalues and the special blow-up
//! and polygon counts can come from tables.

use num_bigint::BigInt;

use crate::error::ComputeError;
use crate::key::SpecialDegree;
use crate::rational::{binomial, factorial, int_pow, multinomial, Rational};

/// Source of the ingredient values the recursions consume. Implementations
/// are expected to memoize; the recursions re-request values freely.
pub trait Values {
    /// Plane count `N_d`.
    fn n(&mut self, d: i64) -> Result<Rational, ComputeError>;
    /// Count with one free end of weight `w` remembered, `N_d(w)`.
    fn n_w(&mut self, d: i64, w: i64) -> Result<Rational, ComputeError>;
    /// Count with one fixed end of weight `w`.
    fn n_tilde(&mut self, d: i64, w: i64) -> Result<Rational, ComputeError>;
    /// Relative count for an explicit tangency profile.
    fn rel(&mut self, d: i64, alpha: Vec<i64>, beta: Vec<i64>)
        -> Result<Rational, ComputeError>;
    /// Point descendant `⟨ψ^k P⟩_d`; must return 0 for `k < 0`.
    fn psi_p(&mut self, d: i64, k: i64) -> Result<Rational, ComputeError>;
    /// Line descendant `⟨ψ^k L⟩_d`, including `k = 0`.
    fn psi_l(&mut self, d: i64, k: i64) -> Result<Rational, ComputeError>;
    /// Two-line invariant `⟨ψL, ψL⟩_d`.
    fn psi_ll(&mut self, d: i64) -> Result<Rational, ComputeError>;
    /// Blow-up and polygon counts that fall outside the plane recursions.
    fn special(&mut self, sd: SpecialDegree) -> Result<Rational, ComputeError>;
}

/// `⟨ψ^k L⟩_d` through the canonical route: seeds for `k = 0` and `d = 1`,
/// otherwise the first grouping of the main recursion.
pub fn psi_line(d: i64, k: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if d < 1 {
        return Err(ComputeError::invalid("d must be ≥ 1"));
    }
    if k < 0 {
        return Err(ComputeError::invalid("k must be ≥ 0"));
    }
    if k == 0 {
        return Ok(Rational::from(d) * v.n(d)?);
    }
    if d == 1 {
        return Ok(if k == 1 { Rational::from(2) } else { Rational::zero() });
    }
    psi_line_form_a(d, k, v)
}

/// First grouping of the main recursion for `⟨ψ^k L⟩_d`, `d ≥ 2`, `k ≥ 1`.
pub fn psi_line_form_a(d: i64, k: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    check_main_args(d, k)?;
    let n = 3 * d - 3 - k;
    let mut total = correction_term(d, k, v)?;
    for d1 in 1..d {
        let d2 = d - d1;
        let n1 = v.n(d1)?;
        let psi_l_k = v.psi_l(d2, k)?;
        let psi_p_k1 = v.psi_p(d2, k - 1)?;
        let psi_l_k1 = v.psi_l(d2, k - 1)?;
        let psi_p_k2 = v.psi_p(d2, k - 2)?;
        let c_low = Rational::from(binomial(n, 3 * d1 - 3));
        let c_mid = Rational::from(binomial(n, 3 * d1 - 2));
        let c_high = Rational::from(binomial(n, 3 * d1 - 1));

        total += &c_mid
            * &(Rational::from(d1 * d1 * d2)
                * &n1
                * &(Rational::from(d2) * &psi_l_k + &psi_p_k1));
        total -= &c_high * &(Rational::from(d1 * d1 * d1 * d2) * &n1 * &psi_l_k);
        total += &c_mid * &(Rational::from(d1 * d1 * d2) * &n1 * &psi_p_k1);
        total -= &c_high * &(Rational::from(d1 * d1 * d1) * &n1 * &psi_p_k1);
        total += &c_low
            * &(Rational::from(d1)
                * &n1
                * &(Rational::from(d2) * &psi_l_k1 + &psi_p_k2));
        total -= &c_mid * &(Rational::from(d1 * d1) * &n1 * &psi_l_k1);
    }
    Ok(total)
}

/// Second grouping of the main recursion; must agree with `form_a`.
pub fn psi_line_form_b(d: i64, k: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    check_main_args(d, k)?;
    let n = 3 * d - 3 - k;
    let mut total = correction_term(d, k, v)?;
    for d1 in 1..d {
        let d2 = d - d1;
        let n1 = v.n(d1)?;
        let psi_l_k = v.psi_l(d2, k)?;
        let psi_p_k1 = v.psi_p(d2, k - 1)?;
        let psi_l_k1 = v.psi_l(d2, k - 1)?;
        let psi_p_k2 = v.psi_p(d2, k - 2)?;
        let c_low = Rational::from(binomial(n, 3 * d1 - 3));
        let c_mid = Rational::from(binomial(n, 3 * d1 - 2));
        let c_high = Rational::from(binomial(n, 3 * d1 - 1));

        total -= &c_high
            * &(Rational::from(d1 * d1 * d1)
                * &n1
                * &(Rational::from(d2) * &psi_l_k + &psi_p_k1));
        total += &c_mid
            * &(Rational::from(d1 * d1)
                * &n1
                * &(Rational::from(d2 * d2) * &psi_l_k
                    + Rational::from(2 * d2) * &psi_p_k1
                    - &psi_l_k1));
        total += &c_low
            * &(Rational::from(d1)
                * &n1
                * &(Rational::from(d2) * &psi_l_k1 + &psi_p_k2));
    }
    Ok(total)
}

fn check_main_args(d: i64, k: i64) -> Result<(), ComputeError> {
    if d < 2 {
        return Err(ComputeError::invalid("the main recursion needs d ≥ 2"));
    }
    if k < 1 {
        return Err(ComputeError::invalid("the main recursion needs k ≥ 1"));
    }
    Ok(())
}

/// One multi-component boundary configuration of the correction term: a
/// central end of weight `r` shared by `plain.len()` free-end components,
/// `l` total tangency, and `tilde.len()` fixed-end components. Components
/// carry `(degree, end weight)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CorrectionDatum {
    pub r: i64,
    pub l: i64,
    pub plain: Vec<(i64, i64)>,
    pub tilde: Vec<(i64, i64)>,
}

impl CorrectionDatum {
    /// Checks the shape constraints relative to the recursion parameters.
    pub fn validate(&self, d: i64, k: i64) -> Result<(), ComputeError> {
        let s = self.tilde.len() as i64;
        if self.r < 0 || self.l < 1 || self.l > d {
            return Err(ComputeError::invalid("correction datum out of range"));
        }
        if s + self.r > self.l {
            return Err(ComputeError::invalid("fixed components exceed tangency"));
        }
        if 2 * self.r + self.l + s != k + 2 {
            return Err(ComputeError::invalid("correction datum misses the ψ budget"));
        }
        if self.r == 0 && !self.plain.is_empty() {
            return Err(ComputeError::invalid(
                "free-end components need a positive central weight",
            ));
        }
        let all = self.plain.iter().chain(self.tilde.iter());
        let (mut sum_d, mut sum_w) = (0, 0);
        for &(delta, omega) in all {
            if omega < 1 || omega > delta {
                return Err(ComputeError::invalid("component weight out of range"));
            }
            sum_d += delta;
            sum_w += omega;
        }
        if sum_d != d - self.r || sum_w != self.l - self.r {
            return Err(ComputeError::invalid("component sums do not fit the datum"));
        }
        Ok(())
    }
}

/// Sorted multisets of `(degree, weight)` pairs, `1 ≤ weight ≤ degree`, with
/// exactly `count` members and component-wise sums below the given caps.
fn multisets_exact_count(count: usize, max_sum_d: i64, max_sum_w: i64) -> Vec<Vec<(i64, i64)>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn step(
        count_left: usize,
        sum_d: i64,
        sum_w: i64,
        min: (i64, i64),
        current: &mut Vec<(i64, i64)>,
        out: &mut Vec<Vec<(i64, i64)>>,
    ) {
        if count_left == 0 {
            out.push(current.clone());
            return;
        }
        for delta in 1..=sum_d {
            for omega in 1..=delta.min(sum_w) {
                if (delta, omega) < min {
                    continue;
                }
                current.push((delta, omega));
                step(count_left - 1, sum_d - delta, sum_w - omega, (delta, omega), current, out);
                current.pop();
            }
        }
    }
    step(count, max_sum_d, max_sum_w, (1, 1), &mut current, &mut out);
    out
}

/// Sorted multisets of `(degree, weight)` pairs with exact component-wise
/// sums and any number of members, each pair at least `min`.
fn multisets_exact_sums(sum_d: i64, sum_w: i64, min: (i64, i64)) -> Vec<Vec<(i64, i64)>> {
    let mut out = Vec::new();
    if sum_d == 0 && sum_w == 0 {
        out.push(Vec::new());
        return out;
    }
    if sum_d < 1 || sum_w < 1 || sum_w > sum_d {
        return out;
    }
    for delta in 1..=sum_d {
        for omega in 1..=delta.min(sum_w) {
            if (delta, omega) < min {
                continue;
            }
            for mut rest in multisets_exact_sums(sum_d - delta, sum_w - omega, (delta, omega)) {
                let mut pairs = vec![(delta, omega)];
                pairs.append(&mut rest);
                out.push(pairs);
            }
        }
    }
    out
}

/// Enumerates every boundary configuration contributing to the correction
/// term of the main recursion at `(d, k)`.
pub fn enumerate_correction_data(d: i64, k: i64) -> Vec<CorrectionDatum> {
    let mut out = Vec::new();
    if 3 * d - k - 2 <= 0 {
        return out;
    }
    let mut r = 0;
    while 2 * r + 1 <= k + 2 {
        for l in 1..=d {
            let s = k + 2 - 2 * r - l;
            if s < 0 || s + r > l {
                continue;
            }
            for tilde in multisets_exact_count(s as usize, d - r, l - r) {
                let used_d: i64 = tilde.iter().map(|p| p.0).sum();
                let used_w: i64 = tilde.iter().map(|p| p.1).sum();
                let (rest_d, rest_w) = (d - r - used_d, l - r - used_w);
                if r == 0 {
                    if rest_d == 0 && rest_w == 0 {
                        let datum = CorrectionDatum { r, l, plain: Vec::new(), tilde };
                        debug_assert!(datum.validate(d, k).is_ok());
                        out.push(datum);
                    }
                    continue;
                }
                for plain in multisets_exact_sums(rest_d, rest_w, (1, 1)) {
                    let datum =
                        CorrectionDatum { r, l, plain, tilde: tilde.clone() };
                    debug_assert!(datum.validate(d, k).is_ok());
                    out.push(datum);
                }
            }
        }
        r += 1;
    }
    out
}

/// Multiplicity factorials of repeated pairs, taken within one component
/// list.
fn symmetry_factor(pairs: &[(i64, i64)]) -> BigInt {
    let mut sigma = BigInt::from(1);
    let mut run = 1u64;
    for w in pairs.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            sigma *= factorial(run);
            run = 1;
        }
    }
    if !pairs.is_empty() {
        sigma *= factorial(run);
    }
    sigma
}

fn datum_contribution(
    d: i64,
    k: i64,
    datum: &CorrectionDatum,
    v: &mut impl Values,
) -> Result<Rational, ComputeError> {
    let m = 3 * d - k - 2;
    let mut khat = Vec::new();
    let mut per_point = Rational::zero();
    let mut squares = Rational::zero();
    let mut prod = Rational::one();
    for (pairs, fixed) in [(&datum.plain, false), (&datum.tilde, true)] {
        for &(delta, omega) in pairs.iter() {
            let kh = 3 * delta - omega - if fixed { 1 } else { 0 };
            khat.push(kh);
            per_point += Rational::ratio(kh * delta, omega);
            squares += Rational::ratio(delta * delta, omega);
            let end = if fixed { v.n_tilde(delta, omega)? } else { v.n_w(delta, omega)? };
            prod = prod * (Rational::from(omega) * end);
        }
    }
    debug_assert_eq!(khat.iter().sum::<i64>(), m);

    let r = datum.r;
    let sigma = symmetry_factor(&datum.plain) * symmetry_factor(&datum.tilde);
    let denom = factorial(r as u64).pow(2) * factorial(datum.l as u64) * sigma;
    let coef = Rational::new(int_pow(r, datum.plain.len() as u32), denom);
    let weight = Rational::from(multinomial(m, &khat));
    let bracket = Rational::ratio(d, m) * per_point - squares;
    Ok(coef * weight * bracket * prod)
}

/// The reducible-configuration correction shared by both groupings of the
/// main recursion. Vanishes when there are no point conditions left.
pub fn correction_term(d: i64, k: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if 3 * d - k - 2 <= 0 {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    for datum in enumerate_correction_data(d, k) {
        total += datum_contribution(d, k, &datum, v)?;
    }
    Ok(Rational::from(3) * total)
}

/// Specialized recursions for `k ∈ {1, 2, 3}` with the correction term
/// already evaluated in closed form.
pub fn psi_line_corollary(d: i64, k: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if d < 1 {
        return Err(ComputeError::invalid("d must be ≥ 1"));
    }
    match k {
        1 => corollary_k1(d, v),
        2 => corollary_k2(d, v),
        3 => corollary_k3(d, v),
        _ => Err(ComputeError::invalid("specialized recursion exists for k ∈ {1,2,3} only")),
    }
}

fn corollary_k1(d: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if d == 1 {
        return Ok(Rational::from(2));
    }
    let n = 3 * d - 4;
    let mut total = Rational::zero();
    for d1 in 1..d {
        let d2 = d - d1;
        let n1 = v.n(d1)?;
        let n2 = v.n(d2)?;
        let bracket = Rational::from(d2) * v.psi_l(d2, 1)? + &n2;
        total -= Rational::from(binomial(n, 3 * d1 - 1))
            * &(Rational::from(d1 * d1 * d1) * &n1 * &bracket);
        total += Rational::from(binomial(n, 3 * d1 - 2))
            * &(Rational::from(d1 * d1 * d2) * &n1 * &bracket);
        total += Rational::from(binomial(n, 3 * d1 - 3))
            * &(Rational::from(d1 * d2 * d2) * &n1 * &n2);
    }
    Ok(total)
}

fn corollary_k2(d: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if d == 1 {
        return Ok(Rational::zero());
    }
    let n = 3 * d - 5;
    let mut total = Rational::zero();
    for d1 in 1..d {
        let d2 = d - d1;
        let n1 = v.n(d1)?;
        let psi2l = v.psi_l(d2, 2)?;
        let psi_p1 = v.psi_p(d2, 1)?;
        let psi_l1 = v.psi_l(d2, 1)?;
        total -= Rational::from(binomial(n, 3 * d1 - 1))
            * &(Rational::from(d1 * d1 * d1)
                * &n1
                * &(Rational::from(d2) * &psi2l + &psi_p1));
        total += Rational::from(binomial(n, 3 * d1 - 2))
            * &(Rational::from(d1 * d1)
                * &n1
                * &(Rational::from(d2 * d2) * &psi2l + Rational::from(2 * d2) * &psi_p1
                    - &psi_l1));
        total += Rational::from(binomial(n, 3 * d1 - 3))
            * &(Rational::from(d1)
                * &n1
                * &(Rational::from(d2) * &psi_l1 + v.n(d2)?));
    }
    let mut tail = Rational::from((d - 1) * (d - 1)) * v.n(d - 1)?;
    for d1 in 1..d {
        let d2 = d - d1;
        tail += Rational::from(binomial(n, 3 * d1 - 3))
            * &(Rational::from(d2 * (d1 - d2)) * &(v.n(d1)? * v.n(d2)?));
    }
    Ok(total + Rational::ratio(3, 2) * tail)
}

fn corollary_k3(d: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if d == 1 {
        return Ok(Rational::zero());
    }
    let n = 3 * d - 6;
    let mut total = Rational::zero();
    for d1 in 1..d {
        let d2 = d - d1;
        let n1 = v.n(d1)?;
        let psi3l = v.psi_l(d2, 3)?;
        let psi2p = v.psi_p(d2, 2)?;
        let psi2l = v.psi_l(d2, 2)?;
        let psi_p1 = v.psi_p(d2, 1)?;
        total -= Rational::from(binomial(n, 3 * d1 - 1))
            * &(Rational::from(d1 * d1 * d1)
                * &n1
                * &(Rational::from(d2) * &psi3l + &psi2p));
        total += Rational::from(binomial(n, 3 * d1 - 2))
            * &(Rational::from(d1 * d1)
                * &n1
                * &(Rational::from(d2 * d2) * &psi3l + Rational::from(2 * d2) * &psi2p
                    - &psi2l));
        total += Rational::from(binomial(n, 3 * d1 - 3))
            * &(Rational::from(d1)
                * &n1
                * &(Rational::from(d2) * &psi2l + &psi_p1));
    }
    let mut tail = Rational::from(d - 1) * &(v.n_w(d - 1, 2)? + Rational::from(3) * v.n(d - 1)?);
    for d1 in 1..(d - 1) {
        let d2 = d - 1 - d1;
        tail += Rational::from(binomial(n, 3 * d1 - 2))
            * &(Rational::from(d1 * d2 * (d1 * (d2 + 1) - d2 * d2)) * &(v.n(d1)? * v.n(d2)?));
    }
    // Splittings into a fixed weight-2 part and a fixed simple part. This
    // piece distributes one more point than the sums above, hence the
    // binomial top 3d-5. It first appears at d = 3 and vanishes there, so
    // checking d <= 3 alone cannot pin it down; d = 4 does.
    for d1 in 2..d {
        let d2 = d - d1;
        tail += Rational::from(binomial(3 * d - 5, 3 * d1 - 3))
            * &(Rational::ratio((2 * d1 - 3 * d2) * (d1 - 2 * d2), 3 * d - 5)
                * &(v.n_tilde(d1, 2)? * v.n(d2)?));
    }
    Ok(total + Rational::ratio(1, 2) * tail)
}

/// Closed formulas for `⟨ψL⟩_d` and `⟨ψ²L⟩_d` in terms of weighted-end and
/// polygon counts.
pub fn psi_line_explicit(d: i64, k: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if d < 1 {
        return Err(ComputeError::invalid("d must be ≥ 1"));
    }
    match k {
        1 => Ok(Rational::from(2) * v.n(d)? + v.n_w(d, 2)?),
        2 => {
            if d == 1 {
                return Ok(Rational::zero());
            }
            let boxed = v.special(SpecialDegree::BoxDegree { d })?;
            let mut split = Rational::zero();
            for d1 in 1..d {
                let d2 = d - d1;
                split += Rational::from(binomial(3 * d - 3, 3 * d1 - 1))
                    * &(Rational::from(d1) * &(v.n(d1)? * v.n(d2)?));
            }
            Ok(Rational::from(3) * boxed
                + Rational::ratio(1, 2) * v.n_w(d, 3)?
                + Rational::ratio(1, 2) * split)
        }
        _ => Err(ComputeError::invalid("closed formula exists for k ∈ {1,2} only")),
    }
}

/// `⟨ψL, ψL⟩_d` by its degree-splitting recursion, seeded with 2 in degree 1.
pub fn psi_line_line(d: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if d < 1 {
        return Err(ComputeError::invalid("d must be ≥ 1"));
    }
    if d == 1 {
        return Ok(Rational::from(2));
    }
    let n = 3 * d - 4;
    let mut total = Rational::zero();
    for d1 in 1..d {
        let d2 = d - d1;
        let n1 = v.n(d1)?;
        let n2 = v.n(d2)?;
        let line1 = Rational::from(d1) * v.psi_l(d1, 1)? + &n1;
        let line2 = Rational::from(d2) * v.psi_l(d2, 1)? + &n2;
        let c_high = Rational::from(binomial(n, 3 * d1 - 1));
        let c_mid = Rational::from(binomial(n, 3 * d1 - 2));

        total -= &c_high
            * &(Rational::from(d1 * d1 * d1)
                * &n1
                * &(Rational::from(d2) * v.psi_ll(d2)? + Rational::from(2) * v.psi_l(d2, 1)?));
        total -= Rational::from(2) * &(&c_mid * &(Rational::from(d1 * d1) * &n1 * &line2));
        total += &c_mid * &(Rational::from(d1 * d2) * &(&line1 * &line2));
        total += Rational::from(2) * &(&c_high * &(Rational::from(d1 * d1) * &n1 * &line2));
        total += Rational::from(2) * &(&c_mid * &(Rational::from(d1 * d2) * &n1 * &line2));
        total += &c_mid * &(Rational::from(d1 * d2) * &(&n1 * &n2));
    }
    total -= Rational::from(3 * (d - 1) * (d - 1) * (d - 1)) * v.n(d - 1)?;
    Ok(total)
}

/// Closed formula for `⟨ψL, ψL⟩_d`, `d ≥ 2`, in terms of blow-up, polygon,
/// and weighted-end counts.
pub fn two_lines_explicit(d: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if d < 2 {
        return Err(ComputeError::invalid("the closed two-line formula needs d ≥ 2"));
    }
    let blow2 = v.special(SpecialDegree::BlowupOnePoint { d, k: 2 }.validate()?)?;
    let two_tangent = if d >= 4 {
        let mut beta = vec![2, 2];
        beta.extend(std::iter::repeat(1).take((d - 4) as usize));
        v.rel(d, vec![], beta)?
    } else {
        Rational::zero()
    };
    let blow_w2 = v.special(SpecialDegree::BlowupOnePointWeightTwo { d })?;
    let boxed = v.special(SpecialDegree::BoxDegree { d })?;
    let mut split = Rational::zero();
    for d1 in 1..d {
        let d2 = d - d1;
        split += Rational::from(binomial(3 * d - 3, 3 * d1 - 1))
            * &(Rational::from(d1) * &(v.n(d1)? * v.n(d2)?));
    }
    Ok(Rational::from(4) * blow2
        + Rational::from(2) * two_tangent
        + Rational::from(4) * blow_w2
        + Rational::from(2) * v.n(d)?
        + Rational::from(10) * boxed
        + Rational::from(3) * v.n_w(d, 3)?
        + split
        + Rational::from(2) * v.psi_p(d, 1)?)
}

/// `⟨L, ψ^k L⟩_d` with `3d−k` point conditions, reduced through the divisor
/// equation: `d·⟨ψ^k L⟩_d + ⟨ψ^{k−1} P⟩_d`.
pub fn line_psi_line(d: i64, k: i64, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if d < 1 {
        return Err(ComputeError::invalid("d must be ≥ 1"));
    }
    if k < 0 {
        return Err(ComputeError::invalid("k must be ≥ 0"));
    }
    Ok(Rational::from(d) * v.psi_l(d, k)? + v.psi_p(d, k - 1)?)
}

/// Count with `m` extra line insertions and no ψ: each line contributes a
/// divisor factor `d`, so the value is `N_d · d^m`.
pub fn curve_insertion_count(d: i64, m: u32, v: &mut impl Values) -> Result<Rational, ComputeError> {
    if d < 1 {
        return Err(ComputeError::invalid("d must be ≥ 1"));
    }
    Ok(v.n(d)? * Rational::from(int_pow(d, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descendant;
    use crate::floor;
    use crate::tables;
    use std::collections::HashMap;

    /// Minimal provider over the base engines, memoizing the recursive
    /// values; the production engine adds persistent caching on top.
    struct BasicValues {
        psi_l: HashMap<(i64, i64), Rational>,
        psi_ll: HashMap<i64, Rational>,
        psi_p: HashMap<(i64, i64), Rational>,
    }

    impl BasicValues {
        fn new() -> Self {
            BasicValues { psi_l: HashMap::new(), psi_ll: HashMap::new(), psi_p: HashMap::new() }
        }
    }

    impl Values for BasicValues {
        fn n(&mut self, d: i64) -> Result<Rational, ComputeError> {
            floor::kontsevich_n(d)
        }
        fn n_w(&mut self, d: i64, w: i64) -> Result<Rational, ComputeError> {
            floor::n_w(d, w)
        }
        fn n_tilde(&mut self, d: i64, w: i64) -> Result<Rational, ComputeError> {
            floor::n_tilde(d, w)
        }
        fn rel(&mut self, d: i64, alpha: Vec<i64>, beta: Vec<i64>) -> Result<Rational, ComputeError> {
            floor::relative_invariant(d, &floor::TangencyProfile::new(alpha, beta)?)
        }
        fn psi_p(&mut self, d: i64, k: i64) -> Result<Rational, ComputeError> {
            if let Some(hit) = self.psi_p.get(&(d, k)) {
                return Ok(hit.clone());
            }
            let value = descendant::psi_p(d, k)?;
            self.psi_p.insert((d, k), value.clone());
            Ok(value)
        }
        fn psi_l(&mut self, d: i64, k: i64) -> Result<Rational, ComputeError> {
            if let Some(hit) = self.psi_l.get(&(d, k)) {
                return Ok(hit.clone());
            }
            let value = psi_line(d, k, self)?;
            self.psi_l.insert((d, k), value.clone());
            Ok(value)
        }
        fn psi_ll(&mut self, d: i64) -> Result<Rational, ComputeError> {
            if let Some(hit) = self.psi_ll.get(&d) {
                return Ok(hit.clone());
            }
            let value = psi_line_line(d, self)?;
            self.psi_ll.insert(d, value.clone());
            Ok(value)
        }
        fn special(&mut self, sd: SpecialDegree) -> Result<Rational, ComputeError> {
            match tables::resolve(sd) {
                Some(tables::TableResolution::Value(x)) => Ok(x),
                Some(tables::TableResolution::PlaneCount { d }) => self.n(d),
                None => Err(ComputeError::missing(vec![format!("special({sd})")])),
            }
        }
    }

    fn psi_l(d: i64, k: i64) -> Rational {
        BasicValues::new().psi_l(d, k).unwrap()
    }

    #[test]
    fn seeds() {
        assert_eq!(psi_l(1, 1), Rational::from(2));
        assert_eq!(psi_l(1, 2), Rational::zero());
        assert_eq!(psi_l(1, 5), Rational::zero());
        assert_eq!(psi_l(3, 0), Rational::from(36));
    }

    #[test]
    fn first_descendants_match_known_values() {
        assert_eq!(psi_l(2, 1), Rational::from(4));
        assert_eq!(psi_l(3, 1), Rational::from(60));
    }

    #[test]
    fn higher_descendants_match_known_values() {
        assert_eq!(psi_l(2, 2), Rational::ratio(9, 2));
        assert_eq!(psi_l(3, 2), Rational::from(54));
        assert_eq!(psi_l(2, 3), Rational::ratio(5, 2));
    }

    #[test]
    fn groupings_agree() {
        for (d, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let a = psi_line_form_a(d, k, &mut BasicValues::new()).unwrap();
            let b = psi_line_form_b(d, k, &mut BasicValues::new()).unwrap();
            assert_eq!(a, b, "(d,k)=({d},{k})");
        }
    }

    #[test]
    fn vanishing_beyond_the_point_budget() {
        assert_eq!(psi_l(2, 6), Rational::zero());
        assert_eq!(psi_l(3, 9), Rational::zero());
    }

    #[test]
    fn correction_data_counts() {
        assert_eq!(enumerate_correction_data(2, 1).len(), 1);
        assert!(enumerate_correction_data(1, 1).is_empty());
    }

    #[test]
    fn correction_values() {
        let mut v = BasicValues::new();
        assert_eq!(correction_term(2, 1, &mut v).unwrap(), Rational::zero());
        assert_eq!(correction_term(2, 2, &mut v).unwrap(), Rational::ratio(3, 2));
        assert_eq!(correction_term(3, 2, &mut v).unwrap(), Rational::from(9));
        assert_eq!(correction_term(2, 3, &mut v).unwrap(), Rational::ratio(3, 2));
    }

    #[test]
    fn specialized_recursions_match() {
        let mut v = BasicValues::new();
        assert_eq!(psi_line_corollary(2, 1, &mut v).unwrap(), Rational::from(4));
        assert_eq!(psi_line_corollary(3, 1, &mut v).unwrap(), Rational::from(60));
        assert_eq!(psi_line_corollary(2, 2, &mut v).unwrap(), Rational::ratio(9, 2));
        assert_eq!(psi_line_corollary(3, 2, &mut v).unwrap(), Rational::from(54));
        assert_eq!(psi_line_corollary(2, 3, &mut v).unwrap(), Rational::ratio(5, 2));
        assert_eq!(psi_line_corollary(3, 3, &mut v).unwrap(), Rational::from(29));
        assert!(psi_line_corollary(2, 4, &mut v).is_err());
    }

    #[test]
    fn closed_formulas_match() {
        let mut v = BasicValues::new();
        assert_eq!(psi_line_explicit(1, 1, &mut v).unwrap(), Rational::from(2));
        assert_eq!(psi_line_explicit(2, 1, &mut v).unwrap(), Rational::from(4));
        assert_eq!(psi_line_explicit(3, 1, &mut v).unwrap(), Rational::from(60));
        assert_eq!(psi_line_explicit(1, 2, &mut v).unwrap(), Rational::zero());
        assert_eq!(psi_line_explicit(2, 2, &mut v).unwrap(), Rational::ratio(9, 2));
        assert_eq!(psi_line_explicit(3, 2, &mut v).unwrap(), Rational::from(54));
    }

    #[test]
    fn two_line_recursion_and_formula() {
        let mut v = BasicValues::new();
        assert_eq!(v.psi_ll(1).unwrap(), Rational::from(2));
        assert_eq!(v.psi_ll(2).unwrap(), Rational::from(17));
        assert_eq!(v.psi_ll(3).unwrap(), Rational::from(302));
        assert_eq!(two_lines_explicit(2, &mut v).unwrap(), Rational::from(17));
        assert_eq!(two_lines_explicit(3, &mut v).unwrap(), Rational::from(302));
    }

    #[test]
    fn line_with_psi_line() {
        let mut v = BasicValues::new();
        assert_eq!(line_psi_line(2, 0, &mut v).unwrap(), Rational::from(4));
        assert_eq!(line_psi_line(3, 0, &mut v).unwrap(), Rational::from(108));
        assert_eq!(line_psi_line(2, 1, &mut v).unwrap(), Rational::from(9));
    }

    #[test]
    fn extra_line_insertions_scale_geometrically() {
        let mut v = BasicValues::new();
        assert_eq!(curve_insertion_count(2, 3, &mut v).unwrap(), Rational::from(8));
        assert_eq!(curve_insertion_count(3, 2, &mut v).unwrap(), Rational::from(108));
        assert_eq!(curve_insertion_count(1, 0, &mut v).unwrap(), Rational::from(1));
    }
}
