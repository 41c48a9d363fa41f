//! Built-in values for blow-up and polygon degrees.
//!
//! The plane recursions generate `N_d`, relative counts, and descendants on
//! their own; counts on a blow-up or for the box polygon enter as external
//! inputs. This table holds the handful of such seeds the closed formulas
//! need, each with a note recording what pins the value. Lookups for degrees
//! not listed here report absence rather than zero, so the caller can fall
//! back to the polygon oracle or fail with a clear message.
//!
//! Blowing up base points that impose no tangency leaves the count unchanged,
//! so `dL-E` and `dL-E1-E2` resolve to the plane count `N_d` instead of
//! occupying table rows.

use crate::key::SpecialDegree;
use crate::rational::Rational;

/// One table row: a special degree, its count, and what pins the value.
pub struct ConstantEntry {
    pub key: SpecialDegree,
    pub value: i64,
    pub note: &'static str,
}

/// Outcome of a table lookup.
pub enum TableResolution {
    /// The degree has a stored count.
    Value(Rational),
    /// The degree reduces to the plane count in degree `d`.
    PlaneCount { d: i64 },
}

static CONSTANTS: [ConstantEntry; 7] = [
    ConstantEntry {
        key: SpecialDegree::BlowupOnePoint { d: 2, k: 2 },
        value: 0,
        note: "an irreducible conic has no double point",
    },
    ConstantEntry {
        key: SpecialDegree::BlowupOnePoint { d: 3, k: 2 },
        value: 1,
        note: "unique cubic with its double point at the blown-up point",
    },
    ConstantEntry {
        key: SpecialDegree::BlowupTwoPoints { d: 3, k1: 2, k2: 1 },
        value: 1,
        note: "unique cubic with a double point at one base point through the other",
    },
    ConstantEntry {
        key: SpecialDegree::BlowupOnePointWeightTwo { d: 2 },
        value: 0,
        note: "a conic meets the exceptional curve once, so weight-2 contact is impossible",
    },
    ConstantEntry {
        key: SpecialDegree::BlowupOnePointWeightTwo { d: 3 },
        value: 16,
        note: "cubics with weight-2 contact on the exceptional curve; pinned by the two-line closed formula at d=3",
    },
    ConstantEntry {
        key: SpecialDegree::BoxDegree { d: 2 },
        value: 1,
        note: "box polygon count in degree 2; pinned by inverting the closed ψ²L formula at d=2",
    },
    ConstantEntry {
        key: SpecialDegree::BoxDegree { d: 3 },
        value: 10,
        note: "box polygon count in degree 3; pinned by the two-line closed formula at d=3 and the path oracle",
    },
];

/// All stored rows, for listing.
pub fn constants() -> &'static [ConstantEntry] {
    &CONSTANTS
}

/// Looks a special degree up, applying the plane-count rewrites first.
pub fn resolve(sd: SpecialDegree) -> Option<TableResolution> {
    match sd {
        SpecialDegree::BlowupOnePoint { d, k: 1 } => Some(TableResolution::PlaneCount { d }),
        SpecialDegree::BlowupTwoPoints { d, k1: 1, k2: 1 } => {
            Some(TableResolution::PlaneCount { d })
        }
        _ => CONSTANTS
            .iter()
            .find(|e| e.key == sd)
            .map(|e| TableResolution::Value(Rational::from(e.value))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_rows_resolve() {
        match resolve(SpecialDegree::BoxDegree { d: 3 }) {
            Some(TableResolution::Value(v)) => assert_eq!(v, Rational::from(10)),
            _ => panic!("box degree 3 should be stored"),
        }
        match resolve(SpecialDegree::BlowupOnePointWeightTwo { d: 3 }) {
            Some(TableResolution::Value(v)) => assert_eq!(v, Rational::from(16)),
            _ => panic!("3L-E,rel2 should be stored"),
        }
    }

    #[test]
    fn trivial_blowups_rewrite_to_plane_counts() {
        match resolve(SpecialDegree::BlowupOnePoint { d: 4, k: 1 }) {
            Some(TableResolution::PlaneCount { d }) => assert_eq!(d, 4),
            _ => panic!("dL-E should rewrite"),
        }
        match resolve(SpecialDegree::BlowupTwoPoints { d: 5, k1: 1, k2: 1 }) {
            Some(TableResolution::PlaneCount { d }) => assert_eq!(d, 5),
            _ => panic!("dL-E1-E2 should rewrite"),
        }
    }

    #[test]
    fn unknown_degrees_are_absent_not_zero() {
        assert!(resolve(SpecialDegree::BoxDegree { d: 4 }).is_none());
        assert!(resolve(SpecialDegree::BlowupOnePoint { d: 4, k: 2 }).is_none());
    }

    #[test]
    fn every_row_validates_and_is_unique() {
        for (i, e) in CONSTANTS.iter().enumerate() {
            assert!(e.key.validate().is_ok(), "row {i}");
            assert!(!e.note.is_empty(), "row {i}");
            for later in &CONSTANTS[i + 1..] {
                assert_ne!(e.key, later.key);
            }
        }
    }
}
