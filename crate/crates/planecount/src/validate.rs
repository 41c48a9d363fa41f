//! Self-checks over the engine: pinned values, cross-route agreement, and
//! oracle calibration, reported one line per check.
//!
//! The `known` suite pins counts that are established independently of this
//! crate; the `cross` suite checks that distinct internal routes to the same
//! quantity agree; `all` runs both plus the lattice-path oracle calibration
//! when that feature is compiled in. Values flow through the engine store,
//! so a preloaded cache is validated along with the code.

use std::fmt;
use std::str::FromStr;

use crate::descendant::{DescendantEvaluator, TrrStrategy};
use crate::engine::{Engine, PsiLineRoute};
use crate::error::ComputeError;
use crate::key::{Class, Correlator, Insertion, SpecialDegree};
use crate::line;
use crate::rational::Rational;

/// Which checks to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    /// Externally pinned values only.
    Known,
    /// Internal consistency between independent routes.
    Cross,
    /// Both, plus oracle calibration.
    All,
}

impl FromStr for Suite {
    type Err = ComputeError;

    fn from_str(s: &str) -> Result<Self, ComputeError> {
        match s {
            "known" => Ok(Suite::Known),
            "cross" => Ok(Suite::Cross),
            "all" => Ok(Suite::All),
            other => Err(ComputeError::invalid(format!(
                "unknown suite \"{}\": expected known, cross, or all",
                other
            ))),
        }
    }
}

/// Outcome of one check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail { expected: String, actual: String },
    Skip { reason: String },
    /// Commentary attached to the preceding check; never affects the result.
    Note { text: String },
}

/// One named check with its outcome.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
}

impl Check {
    fn pass(name: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Pass }
    }

    fn fail(name: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Check {
        Check {
            name: name.into(),
            status: Status::Fail { expected: expected.to_string(), actual: actual.to_string() },
        }
    }

    fn note(name: impl Into<String>, text: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Note { text: text.into() } }
    }
}

/// Compares a computed value against a pinned one; errors fail the check.
fn pinned(
    name: impl Into<String>,
    expected: Rational,
    actual: Result<Rational, ComputeError>,
) -> Check {
    match actual {
        Ok(v) if v == expected => Check::pass(name),
        Ok(v) => Check::fail(name, expected, v),
        Err(e) => Check::fail(name, expected, format!("error: {}", e)),
    }
}

/// Runs a family of comparisons as one check; the first mismatch fails it.
fn family<F>(name: impl Into<String>, mut f: F) -> Check
where
    F: FnMut() -> Result<(), (String, String)>,
{
    match f() {
        Ok(()) => Check::pass(name),
        Err((expected, actual)) => Check::fail(name, expected, actual),
    }
}

/// Folds a fallible pair of routes into the family error shape.
fn agree(
    label: &str,
    left: Result<Rational, ComputeError>,
    right: Result<Rational, ComputeError>,
) -> Result<(), (String, String)> {
    match (left, right) {
        (Ok(a), Ok(b)) if a == b => Ok(()),
        (Ok(a), Ok(b)) => Err((format!("{}: equal routes", label), format!("{} vs {}", a, b))),
        (Err(e), _) | (_, Err(e)) => {
            Err((format!("{}: a value", label), format!("error: {}", e)))
        }
    }
}

pub fn run_suite(engine: &Engine, suite: Suite) -> Vec<Check> {
    let mut checks = Vec::new();
    match suite {
        Suite::Known => known_checks(engine, &mut checks),
        Suite::Cross => cross_checks(engine, &mut checks),
        Suite::All => {
            known_checks(engine, &mut checks);
            cross_checks(engine, &mut checks);
            oracle_checks(engine, &mut checks);
        }
    }
    checks
}

fn known_checks(engine: &Engine, out: &mut Vec<Check>) {
    for (d, n) in [(1, 1), (2, 1), (3, 12)] {
        out.push(pinned(format!("N({}) = {} (floor count)", d, n), Rational::from(n), engine.n(d)));
    }
    for (d, n) in [(1, 1), (2, 1), (3, 12)] {
        out.push(pinned(
            format!("N({}) = {} (splitting recursion)", d, n),
            Rational::from(n),
            engine.n_recursion(d),
        ));
    }

    out.push(pinned("N_2(2) = 2", Rational::from(2), engine.n_weighted(2, 2)));
    out.push(pinned("Ntilde_2(2) = 2", Rational::from(2), engine.n_fixed(2, 2)));
    out.push(pinned("Ntilde_3(2) = 20", Rational::from(20), engine.n_fixed(3, 2)));
    out.push(pinned("N_3(3) = 21", Rational::from(21), engine.n_weighted(3, 3)));
    out.push(pinned(
        "N(Box,3) = 10 (table)",
        Rational::from(10),
        engine.special(SpecialDegree::BoxDegree { d: 3 }),
    ));

    out.push(pinned(
        "rel(3,[],[2,1]) = 36",
        Rational::from(36),
        engine.rel(3, vec![], vec![2, 1]),
    ));
    out.push(Check::note(
        "rel(3,[],[2,1]) consensus",
        "a value of 22 circulates for this count; direct floor-diagram enumeration \
         (16+8+12 by diagram class), the closed formula psiL(3,1) = 2*N_3 + N_3(2) = 60, \
         and the specialized k=1 recursion (also 60) all require 36, so 36 is served",
    ));

    out.push(pinned("psiP(2,1) = 1", Rational::from(1), engine.psi_p(2, 1)));
    out.push(pinned("psiP(3,1) = 10", Rational::from(10), engine.psi_p(3, 1)));

    let routes = [
        (PsiLineRoute::Main, "main"),
        (PsiLineRoute::Specialized, "specialized"),
        (PsiLineRoute::Closed, "closed"),
    ];
    for (d, value) in [(1, Rational::from(2)), (2, Rational::from(4)), (3, Rational::from(60))] {
        for (route, label) in routes {
            out.push(pinned(
                format!("psiL({},1) = {} ({})", d, value, label),
                value.clone(),
                engine.psi_l_route(d, 1, route),
            ));
        }
    }
    for (d, value) in [(1, Rational::zero()), (2, Rational::ratio(9, 2)), (3, Rational::from(54))] {
        for (route, label) in routes {
            out.push(pinned(
                format!("psiL({},2) = {} ({})", d, value, label),
                value.clone(),
                engine.psi_l_route(d, 2, route),
            ));
        }
    }
    for (route, label) in [(PsiLineRoute::Main, "main"), (PsiLineRoute::Specialized, "specialized")]
    {
        out.push(pinned(
            format!("psiL(2,3) = 5/2 ({})", label),
            Rational::ratio(5, 2),
            engine.psi_l_route(2, 3, route),
        ));
    }

    out.push(Check::note(
        "specialized k=2 tail index",
        "the tail sum couples C(3d-6,3d1-3) to d2 (d1-d2) N_{d1} N_{d2}; shifting the lower \
         index to 3d1-1 would drop psiL(3,2) from 54 to 33, so the route agreement above pins it",
    ));
    out.push(Check::note(
        "specialized k=3 weight-2 term",
        "the last tail sum (weight-2 part fixed on the line, top 3d-5) vanishes for d <= 3 and \
         first contributes at d = 4; route agreement at d = 3 (29) rules out merged forms with \
         top 3d-6 and agreement at d = 4 (1171) pins the coefficient",
    ));

    for (d, value) in [(1, 2), (2, 17), (3, 302)] {
        out.push(pinned(
            format!("psiLL({}) = {} (recursion)", d, value),
            Rational::from(value),
            engine.psi_ll(d),
        ));
    }
    for (d, value) in [(2, 17), (3, 302)] {
        out.push(pinned(
            format!("psiLL({}) = {} (closed)", d, value),
            Rational::from(value),
            engine.psi_ll_closed(d),
        ));
    }
}

fn cross_checks(engine: &Engine, out: &mut Vec<Check>) {
    out.push(family("main recursion groupings agree (2<=d<=5, 1<=k<=4)", || {
        for d in 2..=5 {
            for k in 1..=4 {
                agree(
                    &format!("psiL({},{})", d, k),
                    engine.psi_l_route(d, k, PsiLineRoute::Main),
                    engine.psi_l_route(d, k, PsiLineRoute::Regrouped),
                )?;
            }
        }
        Ok(())
    }));

    out.push(family("main matches the specialized recursions (2<=d<=4, k<=3)", || {
        for d in 2..=4 {
            for k in 1..=3 {
                agree(
                    &format!("psiL({},{})", d, k),
                    engine.psi_l_route(d, k, PsiLineRoute::Main),
                    engine.psi_l_route(d, k, PsiLineRoute::Specialized),
                )?;
            }
        }
        Ok(())
    }));

    out.push(family("psiL(d,1) = 2 N_d + N_d(2) (d<=6)", || {
        for d in 1..=6 {
            let closed = (|| {
                Ok::<_, ComputeError>(
                    Rational::from(2) * engine.n(d)? + engine.n_weighted(d, 2)?,
                )
            })();
            agree(&format!("psiL({},1)", d), engine.psi_l(d, 1), closed)?;
        }
        Ok(())
    }));

    out.push(family("correction data spend the full psi budget (d<=5, k<=4)", || {
        for d in 1..=5 {
            for k in 0..=4 {
                for datum in line::enumerate_correction_data(d, k) {
                    if let Err(e) = datum.validate(d, k) {
                        return Err((
                            format!("valid configuration at d={}, k={}", d, k),
                            format!("error: {}", e),
                        ));
                    }
                }
            }
        }
        Ok(())
    }));

    out.push(family("line factor splits off: <L, L>_d = d^2 N_d (d<=5)", || {
        for d in 1..=5 {
            let direct = (|| Ok::<_, ComputeError>(Rational::from(d * d) * engine.n(d)?))();
            agree(&format!("<L,L> at d={}", d), engine.line_psi_l(d, 0), direct)?;
        }
        Ok(())
    }));

    out.push(family("floor and splitting recursions agree (d<=6; N_4=620, N_5=87304)", || {
        for d in 1..=6 {
            agree(&format!("N({})", d), engine.n(d), engine.n_recursion(d))?;
        }
        for (d, pinned_value) in [(4, 620), (5, 87304)] {
            agree(
                &format!("N({})", d),
                engine.n(d),
                Ok(Rational::from(pinned_value)),
            )?;
        }
        Ok(())
    }));

    out.push(family("descendant value independent of recursion choices (d<=2)", || {
        let samples: [(i64, &[(i64, Class)]); 4] = [
            (2, &[(1, Class::Point), (0, Class::Point), (0, Class::Point), (0, Class::Point)]),
            (2, &[(1, Class::Point), (1, Class::Line), (0, Class::Point), (0, Class::Point)]),
            (2, &[(2, Class::Line), (0, Class::Point), (0, Class::Point), (0, Class::Point)]),
            (1, &[(1, Class::Point), (0, Class::Line)]),
        ];
        for (d, spec) in samples {
            let ins: Vec<Insertion> = spec.iter().map(|&(k, c)| Insertion::new(k, c)).collect();
            let mut reversed = ins.clone();
            reversed.reverse();
            let corr = Correlator::new(d, ins).expect("sample is valid");
            let corr_rev = Correlator::new(d, reversed).expect("sample is valid");
            let canonical = DescendantEvaluator::new().evaluate(&corr);
            let alternative =
                DescendantEvaluator::with_strategy(TrrStrategy::Alternative).evaluate(&corr);
            let label = format!("corr(d={},{:?})", d, spec);
            agree(&label, Ok(canonical.clone()), Ok(alternative))?;
            agree(&label, Ok(canonical), Ok(DescendantEvaluator::new().evaluate(&corr_rev)))?;
        }
        Ok(())
    }));

    out.push(family("divisor relation: <L, P^(3d-1)>_d = d N_d (d<=4)", || {
        for d in 1..=4 {
            let mut ins = vec![Insertion::new(0, Class::Line)];
            ins.extend((0..3 * d - 1).map(|_| Insertion::new(0, Class::Point)));
            let corr = Correlator::new(d, ins).expect("profile is valid");
            let direct = (|| Ok::<_, ComputeError>(Rational::from(d) * engine.n(d)?))();
            agree(&format!("<L, P^{}> at d={}", 3 * d - 1, d), engine.correlator(&corr), direct)?;
        }
        Ok(())
    }));
}

#[cfg(feature = "lattice-paths")]
fn oracle_checks(engine: &Engine, out: &mut Vec<Check>) {
    use crate::lattice;

    out.push(family("path oracle: triangle(d) matches N_d (d<=4)", || {
        for d in 1..=4 {
            agree(
                &format!("triangle({})", d),
                Ok(lattice::count_irreducible(&lattice::triangle(d))),
                engine.n(d),
            )?;
        }
        Ok(())
    }));
    out.push(Check::note(
        "path sum versus one-curve count",
        "at d = 4 the raw path sum is 675; the 55 configurations splitting into a degree-3 \
         curve and a line are removed before serving, leaving 620",
    ));
    let specials = [
        (SpecialDegree::BoxDegree { d: 3 }, 10, "Box(3)"),
        (SpecialDegree::BlowupOnePoint { d: 3, k: 2 }, 1, "3L-2E"),
        (SpecialDegree::BlowupOnePoint { d: 2, k: 1 }, 1, "2L-E"),
    ];
    for (sd, value, label) in specials {
        let counted = lattice::polygon_for_special(sd)
            .map(|p| lattice::count_irreducible(&p))
            .ok_or_else(|| ComputeError::invalid("degenerate dual polygon"));
        out.push(pinned(
            format!("path oracle: {} count = {}", label, value),
            Rational::from(value),
            counted,
        ));
    }
    out.push(family("path oracle: unimodular invariance", || {
        let shear = [[1, 1], [0, 1]];
        let turn = [[0, -1], [1, 0]];
        let t4 = lattice::triangle(4);
        for (m, name) in [(shear, "shear"), (turn, "quarter turn")] {
            agree(
                &format!("triangle(4) under {}", name),
                Ok(lattice::count_irreducible(&t4.transformed(m))),
                Ok(lattice::count_irreducible(&t4)),
            )?;
        }
        Ok(())
    }));
}

#[cfg(not(feature = "lattice-paths"))]
fn oracle_checks(_engine: &Engine, out: &mut Vec<Check>) {
    out.push(Check {
        name: "path oracle calibration".to_string(),
        status: Status::Skip { reason: "built without the lattice-paths feature".to_string() },
    });
}

/// Renders checks as aligned report lines plus a summary footer.
pub fn format_report(checks: &[Check]) -> String {
    let mut text = String::new();
    let mut passed = 0usize;
    let mut failed = 0usize;
    let mut skipped = 0usize;
    for check in checks {
        match &check.status {
            Status::Pass => {
                passed += 1;
                text.push_str(&format!("PASS  {}\n", check.name));
            }
            Status::Fail { expected, actual } => {
                failed += 1;
                text.push_str(&format!(
                    "FAIL  {}: expected {}, got {}\n",
                    check.name, expected, actual
                ));
            }
            Status::Skip { reason } => {
                skipped += 1;
                text.push_str(&format!("SKIP  {}: {}\n", check.name, reason));
            }
            Status::Note { text: note } => {
                text.push_str(&format!("NOTE  {}: {}\n", check.name, note));
            }
        }
    }
    let total = passed + failed + skipped;
    text.push_str(&format!(
        "\n{} checks: {} passed, {} failed, {} skipped\n",
        total, passed, failed, skipped
    ));
    text
}

pub fn has_failures(checks: &[Check]) -> bool {
    checks.iter().any(|c| matches!(c.status, Status::Fail { .. }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!(Suite::from_str("known").unwrap(), Suite::Known);
        assert_eq!(Suite::from_str("cross").unwrap(), Suite::Cross);
        assert_eq!(Suite::from_str("all").unwrap(), Suite::All);
        assert!(Suite::from_str("paper").is_err());
    }

    #[test]
    fn known_suite_passes_on_a_fresh_engine() {
        let engine = Engine::new();
        let checks = run_suite(&engine, Suite::Known);
        let report = format_report(&checks);
        assert!(!has_failures(&checks), "{}", report);
        assert!(report.contains("NOTE  rel(3,[],[2,1]) consensus"));
    }

    #[test]
    fn seeded_cache_faults_are_caught() {
        let engine = Engine::new();
        engine.store().insert("psiL(d=1,k=1)".to_string(), Rational::from(3));
        let checks = run_suite(&engine, Suite::Known);
        assert!(has_failures(&checks));
        let report = format_report(&checks);
        assert!(
            report.contains("FAIL  psiL(2,1) = 4 (main): expected 4, got 5"),
            "{}",
            report
        );
    }

    #[test]
    fn report_counts_lines() {
        let checks = vec![
            Check::pass("a"),
            Check::fail("b", "1", "2"),
            Check {
                name: "c".to_string(),
                status: Status::Skip { reason: "off".to_string() },
            },
            Check::note("d", "just saying"),
        ];
        let report = format_report(&checks);
        assert!(report.contains("3 checks: 1 passed, 1 failed, 1 skipped"));
    }
}
