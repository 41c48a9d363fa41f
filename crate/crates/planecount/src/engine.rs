//! Front end tying the counting routines together behind one memo store.
//!
//! The engine owns a [`CacheStore`] keyed by canonical invariant strings and
//! a shared descendant evaluator, and resolves special degrees through the
//! constant table (and the lattice-path oracle when that feature is on). All
//! recursions pull their ingredients back through the engine, so every
//! intermediate lands in the store exactly once and a preloaded cache file
//! short-circuits recomputation.

use std::fmt;
use std::sync::Mutex;

use crate::cache::CacheStore;
use crate::descendant::{self, DescendantEvaluator};
use crate::error::ComputeError;
use crate::floor::{self, TangencyProfile};
use crate::key::{Correlator, InvariantKey, SpecialDegree};
use crate::line;
use crate::rational::Rational;
use crate::tables::{self, TableResolution};

/// Where a value came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    /// Produced by a recursion or enumeration in this crate.
    Computed,
    /// Read from the built-in constant table.
    Table,
    /// Served by the lattice-path oracle.
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Computed => "computed",
            Provenance::Table => "table",
            Provenance::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

/// Which formula evaluates `⟨ψ^k L⟩_d`; the routes must agree wherever they
/// are all defined, and the cross-check suite holds them to that.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PsiLineRoute {
    /// Seeds plus the first grouping of the main recursion.
    Main,
    /// The second grouping of the main recursion (`d ≥ 2`, `k ≥ 1`).
    Regrouped,
    /// The specialized recursion for `k ∈ {1, 2, 3}`.
    Specialized,
    /// The closed formula for `k ∈ {1, 2}`.
    Closed,
}

/// Computation front end: store-backed, shared-memo, oracle-aware.
pub struct Engine {
    store: CacheStore,
    descendants: Mutex<DescendantEvaluator>,
    #[cfg(feature = "lattice-paths")]
    oracle: Mutex<crate::lattice::PolygonOracle>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::with_store(CacheStore::new())
    }

    /// Builds an engine over a preloaded store, typically from a cache file.
    pub fn with_store(store: CacheStore) -> Self {
        Engine {
            store,
            descendants: Mutex::new(DescendantEvaluator::new()),
            #[cfg(feature = "lattice-paths")]
            oracle: Mutex::new(crate::lattice::PolygonOracle::new()),
        }
    }

    pub fn store(&self) -> &CacheStore {
        &self.store
    }

    /// Plane count `N_d` by floor-diagram enumeration.
    pub fn n(&self, d: i64) -> Result<Rational, ComputeError> {
        let key = InvariantKey::n(d)?;
        self.store.get_or_compute(&key.to_string(), || floor::n_floor(d))
    }

    /// Plane count `N_d` by the degree-splitting recursion; not cached, so it
    /// stays an independent check on [`Engine::n`].
    pub fn n_recursion(&self, d: i64) -> Result<Rational, ComputeError> {
        floor::kontsevich_n(d)
    }

    /// Relative count for fixed-end weights `alpha` and free-end weights
    /// `beta` (summing to `d`, at most one fixed end).
    pub fn rel(&self, d: i64, alpha: Vec<i64>, beta: Vec<i64>) -> Result<Rational, ComputeError> {
        let key = InvariantKey::rel(d, alpha, beta)?;
        let (alpha, beta) = match &key {
            InvariantKey::Rel { alpha, beta, .. } => (alpha.clone(), beta.clone()),
            _ => unreachable!(),
        };
        self.store.get_or_compute(&key.to_string(), || {
            floor::relative_invariant(d, &TangencyProfile::new(alpha, beta)?)
        })
    }

    /// `N_d(w)`: one free end of weight `w` remembered, the rest weight 1.
    pub fn n_weighted(&self, d: i64, w: i64) -> Result<Rational, ComputeError> {
        if d < 1 || w < 1 {
            return Err(ComputeError::invalid("d and w must be ≥ 1"));
        }
        if w > d {
            return Ok(Rational::zero());
        }
        if w == 1 {
            return Ok(Rational::from(d) * self.n(d)?);
        }
        let mut beta = vec![1i64; (d - w) as usize];
        beta.push(w);
        self.rel(d, vec![], beta)
    }

    /// `Ñ_d(w)`: one fixed end of weight `w`, free weight-1 ends otherwise.
    pub fn n_fixed(&self, d: i64, w: i64) -> Result<Rational, ComputeError> {
        if d < 1 || w < 1 {
            return Err(ComputeError::invalid("d and w must be ≥ 1"));
        }
        if w > d {
            return Ok(Rational::zero());
        }
        self.rel(d, vec![w], vec![1i64; (d - w) as usize])
    }

    /// A special-degree count, resolved through the constant table first and
    /// the lattice-path oracle second; fails with the missing key when
    /// neither source covers the degree.
    pub fn special(&self, sd: SpecialDegree) -> Result<Rational, ComputeError> {
        let key = InvariantKey::special(sd)?;
        let sd = match key {
            InvariantKey::Special(sd) => sd,
            _ => unreachable!(),
        };
        self.store.get_or_compute(&key.to_string(), || match tables::resolve(sd) {
            Some(TableResolution::Value(v)) => Ok(v),
            Some(TableResolution::PlaneCount { d }) => self.n(d),
            None => {
                #[cfg(feature = "lattice-paths")]
                if let Some(v) = self.oracle.lock().unwrap().special_value(sd) {
                    return Ok(v);
                }
                Err(ComputeError::missing(vec![key.to_string()]))
            }
        })
    }

    /// `⟨ψ^k P⟩_d` with plain point insertions filling the dimension.
    pub fn psi_p(&self, d: i64, k: i64) -> Result<Rational, ComputeError> {
        if d < 1 {
            return Err(ComputeError::invalid("d must be ≥ 1"));
        }
        if k < 0 {
            return Ok(Rational::zero());
        }
        let key = InvariantKey::psi_p(d, k)?;
        self.store.get_or_compute(&key.to_string(), || {
            descendant::psi_p_with(&mut self.descendants.lock().unwrap(), d, k)
        })
    }

    /// `⟨ψ^k L⟩_d` through the main route.
    pub fn psi_l(&self, d: i64, k: i64) -> Result<Rational, ComputeError> {
        let key = InvariantKey::psi_l(d, k)?;
        self.store
            .get_or_compute(&key.to_string(), || line::psi_line(d, k, &mut EngineValues(self)))
    }

    /// `⟨ψ^k L⟩_d` through a chosen route, bypassing the store for the top
    /// value so routes stay comparable; ingredients are still shared.
    pub fn psi_l_route(&self, d: i64, k: i64, route: PsiLineRoute) -> Result<Rational, ComputeError> {
        let v = &mut EngineValues(self);
        match route {
            PsiLineRoute::Main => line::psi_line(d, k, v),
            PsiLineRoute::Regrouped => line::psi_line_form_b(d, k, v),
            PsiLineRoute::Specialized => line::psi_line_corollary(d, k, v),
            PsiLineRoute::Closed => line::psi_line_explicit(d, k, v),
        }
    }

    /// `⟨ψL, ψL⟩_d` through its recursion.
    pub fn psi_ll(&self, d: i64) -> Result<Rational, ComputeError> {
        let key = InvariantKey::psi_ll(d)?;
        self.store
            .get_or_compute(&key.to_string(), || line::psi_line_line(d, &mut EngineValues(self)))
    }

    /// `⟨ψL, ψL⟩_d` through the closed formula (`d ≥ 2`), store-bypassing
    /// like [`Engine::psi_l_route`].
    pub fn psi_ll_closed(&self, d: i64) -> Result<Rational, ComputeError> {
        line::two_lines_explicit(d, &mut EngineValues(self))
    }

    /// `⟨L, ψ^k L⟩_d` via the divisor relation.
    pub fn line_psi_l(&self, d: i64, k: i64) -> Result<Rational, ComputeError> {
        line::line_psi_line(d, k, &mut EngineValues(self))
    }

    /// `⟨L^m⟩`-style count: plane count times `d` per line insertion.
    pub fn curve_insertions(&self, d: i64, m: u32) -> Result<Rational, ComputeError> {
        line::curve_insertion_count(d, m, &mut EngineValues(self))
    }

    /// A general descendant correlator.
    pub fn correlator(&self, corr: &Correlator) -> Result<Rational, ComputeError> {
        let key = InvariantKey::Correlator(corr.clone());
        self.store.get_or_compute(&key.to_string(), || {
            Ok(self.descendants.lock().unwrap().evaluate(corr))
        })
    }

    /// Evaluates any invariant key.
    pub fn value(&self, key: &InvariantKey) -> Result<Rational, ComputeError> {
        match key {
            InvariantKey::N { d } => self.n(*d),
            InvariantKey::Rel { d, alpha, beta } => self.rel(*d, alpha.clone(), beta.clone()),
            InvariantKey::Special(sd) => self.special(*sd),
            InvariantKey::PsiP { d, k } => self.psi_p(*d, *k),
            InvariantKey::PsiL { d, k } => self.psi_l(*d, *k),
            InvariantKey::PsiLL { d } => self.psi_ll(*d),
            InvariantKey::Correlator(c) => self.correlator(c),
        }
    }

    /// Evaluates a key and reports the source the engine resolves that kind
    /// of key through; a hit from a preloaded cache still reports the route
    /// that would have produced it.
    pub fn value_with_provenance(
        &self,
        key: &InvariantKey,
    ) -> Result<(Rational, Provenance), ComputeError> {
        let value = self.value(key)?;
        let provenance = match key {
            InvariantKey::Special(sd) => match tables::resolve(*sd) {
                Some(TableResolution::Value(_)) => Provenance::Table,
                Some(TableResolution::PlaneCount { .. }) => Provenance::Computed,
                None => Provenance::Oracle,
            },
            _ => Provenance::Computed,
        };
        Ok((value, provenance))
    }
}

/// Ingredient provider backed by the engine, so every recursion reads and
/// fills the same store.
struct EngineValues<'a>(&'a Engine);

impl line::Values for EngineValues<'_> {
    fn n(&mut self, d: i64) -> Result<Rational, ComputeError> {
        self.0.n(d)
    }

    fn n_w(&mut self, d: i64, w: i64) -> Result<Rational, ComputeError> {
        self.0.n_weighted(d, w)
    }

    fn n_tilde(&mut self, d: i64, w: i64) -> Result<Rational, ComputeError> {
        self.0.n_fixed(d, w)
    }

    fn rel(&mut self, d: i64, alpha: Vec<i64>, beta: Vec<i64>) -> Result<Rational, ComputeError> {
        self.0.rel(d, alpha, beta)
    }

    fn psi_p(&mut self, d: i64, k: i64) -> Result<Rational, ComputeError> {
        self.0.psi_p(d, k)
    }

    fn psi_l(&mut self, d: i64, k: i64) -> Result<Rational, ComputeError> {
        self.0.psi_l(d, k)
    }

    fn psi_ll(&mut self, d: i64) -> Result<Rational, ComputeError> {
        self.0.psi_ll(d)
    }

    fn special(&mut self, sd: SpecialDegree) -> Result<Rational, ComputeError> {
        self.0.special(sd)
    }
}
