//! Exact computation of genus-zero plane curve counts and their descendant
//! invariants with line constraints.
//!
//! The crate computes, in exact rational arithmetic:
//!
//! * absolute counts `N_d` of rational plane curves of degree `d` through
//!   `3d-1` generic points, by floor-diagram enumeration and independently by
//!   the degree-splitting recursion ([`floor`]);
//! * relative counts with a weighted bottom end, free (`N_d(w)`) or fixed
//!   (`Ñ_d(w)`), and general one-fixed-end tangency profiles ([`floor`]);
//! * stationary point descendants `⟨ψᵏP⟩_d` via genus-zero reconstruction:
//!   dimension gate, string/dilaton/divisor equations and the topological
//!   recursion relation ([`descendant`]);
//! * the line descendants `⟨ψᵏL⟩_d` by a degree-splitting recursion with a
//!   correction-term enumerator, together with specialized recursions for
//!   `k ≤ 3`, closed formulas, and the two-line invariant `⟨ψL,ψL⟩_d`
//!   ([`line`]);
//! * a small table of transcribed special-degree constants ([`tables`]) and,
//!   behind the `lattice-paths` feature, an independent polygon oracle
//!   ([`lattice`]).
//!
//! All public invariants are addressed by canonical string keys
//! ([`key::InvariantKey`]) and served by [`engine::Engine`], which memoizes
//! through an optional persistent cache ([`cache`]). [`validate`] bundles the
//! pinned anchor values and cross-formula consistency checks into runnable
//! suites.

pub mod cache;
pub mod descendant;
pub mod engine;
pub mod error;
pub mod floor;
pub mod key;
#[cfg(feature = "lattice-paths")]
pub mod lattice;
pub mod line;
pub mod poset;
pub mod rational;
pub mod tables;
pub mod validate;

pub use engine::Engine;
pub use error::ComputeError;
pub use key::InvariantKey;
pub use rational::Rational;
