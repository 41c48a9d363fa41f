//! Canonical invariant keys.
//!
//! Every value the crate can produce is addressed by an [`InvariantKey`] with
//! a unique human-readable string form, used for memoization, the persistent
//! cache file, and the CLI. Two keys are equal exactly when they denote the
//! same invariant: profile lists are kept sorted descending and correlator
//! insertions sorted by (codimension, ψ-power), so canonicalization is
//! idempotent and insensitive to input order.
//!
//! Key syntax (ASCII, no spaces):
//!
//! * `N(d=3)` — rational curves of degree 3 through 8 generic points
//! * `rel(d=3,a=[2],b=[1])` — relative count, fixed-end weights `a`,
//!   free-end weights `b`
//! * `special(3L-2E)`, `special(3L-2E1-E2)`, `special(Box,d=3)`,
//!   `special(3L-E,rel2)` — special-degree counts (blow-ups, the box degree,
//!   the weight-2 relative count for one blown-up point)
//! * `psiP(d=2,k=1)`, `psiL(d=3,k=1)`, `psiLL(d=3)` — descendant invariants
//! * `corr(d=2,[0:P,0:P,0:P,1:P])` — general descendant correlator; classes
//!   print as `1` (fundamental), `L` (line), `P` (point)

use std::fmt;
use std::str::FromStr;

use crate::error::ComputeError;

/// Cohomology class of an insertion, by codimension.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Class {
    /// Fundamental class, codimension 0; prints as `1`.
    Fundamental,
    /// Line class, codimension 1; prints as `L`.
    Line,
    /// Point class, codimension 2; prints as `P`.
    Point,
}

impl Class {
    pub fn codim(self) -> i64 {
        match self {
            Class::Fundamental => 0,
            Class::Line => 1,
            Class::Point => 2,
        }
    }

    pub fn from_codim(c: i64) -> Option<Class> {
        match c {
            0 => Some(Class::Fundamental),
            1 => Some(Class::Line),
            2 => Some(Class::Point),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Class::Fundamental => '1',
            Class::Line => 'L',
            Class::Point => 'P',
        }
    }

    fn from_symbol(c: char) -> Option<Class> {
        match c {
            '1' => Some(Class::Fundamental),
            'L' => Some(Class::Line),
            'P' => Some(Class::Point),
            _ => None,
        }
    }
}

/// One correlator insertion: ψ-power and class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Insertion {
    pub psi: i64,
    pub class: Class,
}

impl Insertion {
    pub fn new(psi: i64, class: Class) -> Self {
        Insertion { psi, class }
    }

    /// Sort key giving the canonical insertion order.
    pub fn order_key(&self) -> (i64, i64) {
        (self.class.codim(), self.psi)
    }
}

/// A descendant correlator: degree plus a canonical multiset of insertions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Correlator {
    pub d: i64,
    insertions: Vec<Insertion>,
}

impl Correlator {
    /// Builds a correlator, sorting the insertions into canonical order.
    pub fn new(d: i64, mut insertions: Vec<Insertion>) -> Result<Self, ComputeError> {
        if d < 0 {
            return Err(ComputeError::invalid("d must be ≥ 0 for correlators"));
        }
        if insertions.is_empty() {
            return Err(ComputeError::invalid("correlator needs at least one insertion"));
        }
        if insertions.iter().any(|i| i.psi < 0) {
            return Err(ComputeError::invalid("ψ-power must be ≥ 0"));
        }
        insertions.sort_by_key(Insertion::order_key);
        Ok(Correlator { d, insertions })
    }

    pub fn insertions(&self) -> &[Insertion] {
        &self.insertions
    }

    pub fn n(&self) -> i64 {
        self.insertions.len() as i64
    }

    pub fn total_psi(&self) -> i64 {
        self.insertions.iter().map(|i| i.psi).sum()
    }

    pub fn total_codim(&self) -> i64 {
        self.insertions.iter().map(|i| i.class.codim()).sum()
    }

    /// A copy with the insertion at `idx` removed.
    pub fn without(&self, idx: usize) -> Vec<Insertion> {
        let mut v = self.insertions.clone();
        v.remove(idx);
        v
    }
}

impl fmt::Display for Correlator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "corr(d={},[", self.d)?;
        for (i, ins) in self.insertions.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", ins.psi, ins.class.symbol())?;
        }
        write!(f, "])")
    }
}

/// Degrees whose counts come from the table or the polygon oracle rather than
/// a recursion.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SpecialDegree {
    /// `dL-kE`: plane curves of degree d with a point of multiplicity k at
    /// one blown-up point.
    BlowupOnePoint { d: i64, k: i64 },
    /// `dL-k1E1-k2E2`: multiplicities at two blown-up points; stored with
    /// `k1 ≥ k2` (the two points play symmetric roles).
    BlowupTwoPoints { d: i64, k1: i64, k2: i64 },
    /// The box degree `{(1,1)^d, (0,-1)^(d-1), (-1,0)^(d-2), (-2,-1)}`.
    BoxDegree { d: i64 },
    /// `dL-E` with a weight-2 bottom end: the relative count the two-line
    /// closed formula consumes.
    BlowupOnePointWeightTwo { d: i64 },
}

impl SpecialDegree {
    pub fn validate(self) -> Result<Self, ComputeError> {
        match self {
            SpecialDegree::BlowupOnePoint { d, k } => {
                if d < 1 {
                    Err(ComputeError::invalid("d must be ≥ 1"))
                } else if k < 1 || k > d {
                    Err(ComputeError::invalid("blow-up multiplicity must satisfy 1 ≤ k ≤ d"))
                } else {
                    Ok(self)
                }
            }
            SpecialDegree::BlowupTwoPoints { d, k1, k2 } => {
                if d < 1 {
                    Err(ComputeError::invalid("d must be ≥ 1"))
                } else if k1 < 1 || k2 < 1 || k1 + k2 > d {
                    Err(ComputeError::invalid(
                        "blow-up multiplicities must satisfy k1, k2 ≥ 1 and k1+k2 ≤ d",
                    ))
                } else {
                    let (k1, k2) = if k1 >= k2 { (k1, k2) } else { (k2, k1) };
                    Ok(SpecialDegree::BlowupTwoPoints { d, k1, k2 })
                }
            }
            SpecialDegree::BoxDegree { d } => {
                if d < 2 {
                    Err(ComputeError::invalid("the box degree needs d ≥ 2"))
                } else {
                    Ok(self)
                }
            }
            SpecialDegree::BlowupOnePointWeightTwo { d } => {
                if d < 1 {
                    Err(ComputeError::invalid("d must be ≥ 1"))
                } else {
                    Ok(self)
                }
            }
        }
    }
}

impl fmt::Display for SpecialDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Multiplicity 1 prints without a coefficient: "3L-E", not "3L-1E".
        let coef = |k: i64| {
            if k == 1 {
                String::new()
            } else {
                k.to_string()
            }
        };
        match *self {
            SpecialDegree::BlowupOnePoint { d, k } => write!(f, "{}L-{}E", d, coef(k)),
            SpecialDegree::BlowupTwoPoints { d, k1, k2 } => {
                write!(f, "{}L-{}E1-{}E2", d, coef(k1), coef(k2))
            }
            SpecialDegree::BoxDegree { d } => write!(f, "Box,d={}", d),
            SpecialDegree::BlowupOnePointWeightTwo { d } => write!(f, "{}L-E,rel2", d),
        }
    }
}

/// Canonical identifier of one invariant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum InvariantKey {
    /// `N(d=…)`: degree-d rational curves through 3d-1 generic points.
    N { d: i64 },
    /// `rel(d=…,a=[…],b=[…])`: relative count with fixed-end weights `alpha`
    /// and free-end weights `beta`, both sorted descending.
    Rel { d: i64, alpha: Vec<i64>, beta: Vec<i64> },
    /// `special(…)`: a special-degree count.
    Special(SpecialDegree),
    /// `psiP(d=…,k=…)`: ⟨ψᵏP⟩_d.
    PsiP { d: i64, k: i64 },
    /// `psiL(d=…,k=…)`: ⟨ψᵏL⟩_d.
    PsiL { d: i64, k: i64 },
    /// `psiLL(d=…)`: ⟨ψL,ψL⟩_d.
    PsiLL { d: i64 },
    /// `corr(d=…,[…])`: a general descendant correlator.
    Correlator(Correlator),
}

impl InvariantKey {
    pub fn n(d: i64) -> Result<Self, ComputeError> {
        if d < 1 {
            return Err(ComputeError::invalid("d must be ≥ 1"));
        }
        Ok(InvariantKey::N { d })
    }

    /// Builds a relative-count key; sorts both weight lists descending.
    pub fn rel(d: i64, mut alpha: Vec<i64>, mut beta: Vec<i64>) -> Result<Self, ComputeError> {
        if d < 1 {
            return Err(ComputeError::invalid("d must be ≥ 1"));
        }
        if alpha.iter().chain(beta.iter()).any(|&w| w < 1) {
            return Err(ComputeError::invalid("end weights must be ≥ 1"));
        }
        if alpha.len() > 1 {
            return Err(ComputeError::invalid("at most one fixed end is supported"));
        }
        let total: i64 = alpha.iter().chain(beta.iter()).sum();
        if total != d {
            return Err(ComputeError::invalid(format!(
                "end weights must sum to d: got {} for d={}",
                total, d
            )));
        }
        alpha.sort_unstable_by(|a, b| b.cmp(a));
        beta.sort_unstable_by(|a, b| b.cmp(a));
        Ok(InvariantKey::Rel { d, alpha, beta })
    }

    pub fn special(sd: SpecialDegree) -> Result<Self, ComputeError> {
        Ok(InvariantKey::Special(sd.validate()?))
    }

    pub fn psi_p(d: i64, k: i64) -> Result<Self, ComputeError> {
        if d < 1 {
            return Err(ComputeError::invalid("d must be ≥ 1"));
        }
        if k < 0 {
            return Err(ComputeError::invalid("k must be ≥ 0"));
        }
        Ok(InvariantKey::PsiP { d, k })
    }

    pub fn psi_l(d: i64, k: i64) -> Result<Self, ComputeError> {
        if d < 1 {
            return Err(ComputeError::invalid("d must be ≥ 1"));
        }
        if k < 0 {
            return Err(ComputeError::invalid("k must be ≥ 0"));
        }
        Ok(InvariantKey::PsiL { d, k })
    }

    pub fn psi_ll(d: i64) -> Result<Self, ComputeError> {
        if d < 1 {
            return Err(ComputeError::invalid("d must be ≥ 1"));
        }
        Ok(InvariantKey::PsiLL { d })
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[i64]) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{}", x)?;
    }
    write!(f, "]")
}

impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantKey::N { d } => write!(f, "N(d={})", d),
            InvariantKey::Rel { d, alpha, beta } => {
                write!(f, "rel(d={},a=", d)?;
                write_list(f, alpha)?;
                write!(f, ",b=")?;
                write_list(f, beta)?;
                write!(f, ")")
            }
            InvariantKey::Special(sd) => write!(f, "special({})", sd),
            InvariantKey::PsiP { d, k } => write!(f, "psiP(d={},k={})", d, k),
            InvariantKey::PsiL { d, k } => write!(f, "psiL(d={},k={})", d, k),
            InvariantKey::PsiLL { d } => write!(f, "psiLL(d={})", d),
            InvariantKey::Correlator(c) => write!(f, "{}", c),
        }
    }
}

/// Error from parsing an invariant key string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyParseError {
    pub input: String,
    pub message: String,
}

impl fmt::Display for KeyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid key {:?}: {}", self.input, self.message)
    }
}

impl std::error::Error for KeyParseError {}

struct Parser<'a> {
    input: &'a str,
    rest: &'a str,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser { input, rest: input }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, KeyParseError> {
        Err(KeyParseError {
            input: self.input.to_string(),
            message: message.into(),
        })
    }

    fn eat(&mut self, token: &str) -> Result<(), KeyParseError> {
        match self.rest.strip_prefix(token) {
            Some(r) => {
                self.rest = r;
                Ok(())
            }
            None => self.fail(format!("expected {:?}", token)),
        }
    }

    fn try_eat(&mut self, token: &str) -> bool {
        match self.rest.strip_prefix(token) {
            Some(r) => {
                self.rest = r;
                true
            }
            None => false,
        }
    }

    fn integer(&mut self) -> Result<i64, KeyParseError> {
        let digits = self.rest.len() - self.rest.trim_start_matches(|c: char| c.is_ascii_digit()).len();
        if digits == 0 {
            return self.fail("expected an integer");
        }
        let (num, rest) = self.rest.split_at(digits);
        self.rest = rest;
        num.parse::<i64>().or_else(|_| self.fail("integer out of range"))
    }

    /// `[w1,w2,…]`, possibly empty.
    fn weight_list(&mut self) -> Result<Vec<i64>, KeyParseError> {
        self.eat("[")?;
        let mut xs = Vec::new();
        if self.try_eat("]") {
            return Ok(xs);
        }
        loop {
            xs.push(self.integer()?);
            if self.try_eat("]") {
                return Ok(xs);
            }
            self.eat(",")?;
        }
    }

    fn done(&self) -> bool {
        self.rest.is_empty()
    }
}

impl FromStr for InvariantKey {
    type Err = KeyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let fail_compute = |p: &Parser, e: ComputeError| KeyParseError {
            input: p.input.to_string(),
            message: e.to_string(),
        };

        let key = if p.try_eat("N(d=") {
            let d = p.integer()?;
            p.eat(")")?;
            InvariantKey::n(d).map_err(|e| fail_compute(&p, e))?
        } else if p.try_eat("rel(d=") {
            let d = p.integer()?;
            p.eat(",a=")?;
            let alpha = p.weight_list()?;
            p.eat(",b=")?;
            let beta = p.weight_list()?;
            p.eat(")")?;
            InvariantKey::rel(d, alpha, beta).map_err(|e| fail_compute(&p, e))?
        } else if p.try_eat("special(") {
            let sd = if p.try_eat("Box,d=") {
                let d = p.integer()?;
                SpecialDegree::BoxDegree { d }
            } else {
                let d = p.integer()?;
                p.eat("L-")?;
                if p.try_eat("E,rel2") {
                    SpecialDegree::BlowupOnePointWeightTwo { d }
                } else {
                    // "kE" or "E"; then optionally "1-k2E2" for two points.
                    let k = if p.rest.starts_with('E') { 1 } else { p.integer()? };
                    p.eat("E")?;
                    if p.try_eat("1-") {
                        let k2 = if p.rest.starts_with('E') { 1 } else { p.integer()? };
                        p.eat("E2")?;
                        SpecialDegree::BlowupTwoPoints { d, k1: k, k2 }
                    } else {
                        SpecialDegree::BlowupOnePoint { d, k }
                    }
                }
            };
            p.eat(")")?;
            InvariantKey::special(sd).map_err(|e| fail_compute(&p, e))?
        } else if p.try_eat("psiP(d=") {
            let d = p.integer()?;
            p.eat(",k=")?;
            let k = p.integer()?;
            p.eat(")")?;
            InvariantKey::psi_p(d, k).map_err(|e| fail_compute(&p, e))?
        } else if p.try_eat("psiL(d=") {
            let d = p.integer()?;
            p.eat(",k=")?;
            let k = p.integer()?;
            p.eat(")")?;
            InvariantKey::psi_l(d, k).map_err(|e| fail_compute(&p, e))?
        } else if p.try_eat("psiLL(d=") {
            let d = p.integer()?;
            p.eat(")")?;
            InvariantKey::psi_ll(d).map_err(|e| fail_compute(&p, e))?
        } else if p.try_eat("corr(d=") {
            let d = p.integer()?;
            p.eat(",[")?;
            let mut insertions = Vec::new();
            loop {
                let psi = p.integer()?;
                p.eat(":")?;
                let sym = match p.rest.chars().next() {
                    Some(c) => c,
                    None => return p.fail("expected a class symbol"),
                };
                let class = match Class::from_symbol(sym) {
                    Some(c) => c,
                    None => return p.fail(format!("unknown class symbol {:?}", sym)),
                };
                p.rest = &p.rest[sym.len_utf8()..];
                insertions.push(Insertion::new(psi, class));
                if p.try_eat("]") {
                    break;
                }
                p.eat(",")?;
            }
            p.eat(")")?;
            let corr = Correlator::new(d, insertions).map_err(|e| fail_compute(&p, e))?;
            InvariantKey::Correlator(corr)
        } else {
            return p.fail(
                "expected one of N(…), rel(…), special(…), psiP(…), psiL(…), psiLL(…), corr(…)",
            );
        };

        if !p.done() {
            return p.fail(format!("trailing input {:?}", p.rest));
        }
        Ok(key)
    }
}
