//! Closed-form dimensions of framed and dual-knot instanton homology.
//!
//! With `(M, R)` the invariant pair of the knot over the coefficient field:
//!
//! * `dim I#(S^3_{p/q}(K))  = qR + |p - qM|`, except at `p/q = M` with `M`
//!   even, where the two bundle classes realize `{R, R + 2}`;
//! * `dim I#(S^3_{p/q}(K), dual knot) = 2qR + 2|p - qM|` off `p/q = M`, and
//!   `2R` or `2R + 2` at `p/q = M` (only `2R` in characteristic 2);
//! * over `F2` the reduced version is half the unreduced one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::knot::{FieldSpec, InvariantPair};
use crate::slope::{Slope, SlopeError};
use crate::surgery::BundleClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("{0} is not an exact dimension")]
    NotExact(DimValue),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: &BigInt) -> Parity {
        if n.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn matches(self, n: &BigInt) -> bool {
        Parity::of(n) == self
    }

    pub fn plus(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(parity: Option<Parity>) -> &'static str {
        match parity {
            Some(Parity::Even) => "even",
            Some(Parity::Odd) => "odd",
            None => "unknown",
        }
    }
}

/// A dimension: exact, one of two values two apart, or a range
/// (possibly unbounded above) with an optional parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimValue {
    Exact(BigInt),
    /// `{a, b}` with `b = a + 2`.
    Pair(BigInt, BigInt),
    Interval {
        lo: BigInt,
        hi: Option<BigInt>,
        parity: Option<Parity>,
    },
}

impl DimValue {
    pub fn exact(n: impl Into<BigInt>) -> Self {
        DimValue::Exact(n.into())
    }

    /// `{a, a + 2}`.
    pub fn pair(a: impl Into<BigInt>) -> Self {
        let a = a.into();
        let b = &a + 2;
        DimValue::Pair(a, b)
    }

    /// The tightest value describing the integers of `[lo, hi]` with the
    /// given parity. Returns `None` when that set is empty.
    pub fn from_range(lo: BigInt, hi: Option<BigInt>, parity: Option<Parity>) -> Option<Self> {
        let mut lo = lo.max(BigInt::zero());
        let mut hi = hi;
        if let Some(p) = parity {
            if !p.matches(&lo) {
                lo += 1;
            }
            if let Some(h) = hi.as_mut() {
                if !p.matches(h) {
                    *h -= 1;
                }
            }
        }
        match hi {
            Some(h) if h < lo => None,
            Some(h) if h == lo => Some(DimValue::Exact(lo)),
            Some(h) if parity.is_some() && &h - &lo == BigInt::from(2) => {
                Some(DimValue::Pair(lo, h))
            }
            hi => Some(DimValue::Interval { lo, hi, parity }),
        }
    }

    pub fn as_exact(&self) -> Option<&BigInt> {
        match self {
            DimValue::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        match self {
            DimValue::Exact(v) => v == n,
            DimValue::Pair(a, b) => a == n || b == n,
            DimValue::Interval { lo, hi, parity } => {
                n >= lo && hi.as_ref().is_none_or(|h| n <= h) && parity.is_none_or(|p| p.matches(n))
            }
        }
    }

    /// `(lo, hi, parity)` of the smallest parity range containing this value.
    pub fn bounds(&self) -> (BigInt, Option<BigInt>, Option<Parity>) {
        match self {
            DimValue::Exact(n) => (n.clone(), Some(n.clone()), Some(Parity::of(n))),
            DimValue::Pair(a, b) => (a.clone(), Some(b.clone()), Some(Parity::of(a))),
            DimValue::Interval { lo, hi, parity } => (lo.clone(), hi.clone(), *parity),
        }
    }

    /// Explicit members, when there are finitely many.
    pub fn members(&self) -> Option<Vec<BigInt>> {
        let (lo, hi, parity) = self.bounds();
        let hi = hi?;
        let mut out = Vec::new();
        let mut n = lo;
        while n <= hi {
            if parity.is_none_or(|p| p.matches(&n)) {
                out.push(n.clone());
            }
            n += 1;
        }
        Some(out)
    }

    pub fn intersects(&self, other: &DimValue) -> bool {
        match (self.members(), other.members()) {
            (Some(a), _) => a.iter().any(|n| other.contains(n)),
            (None, Some(b)) => b.iter().any(|n| self.contains(n)),
            (None, None) => {
                // two unbounded ranges always share large values unless
                // their parities differ
                let (_, _, pa) = self.bounds();
                let (_, _, pb) = other.bounds();
                !matches!((pa, pb), (Some(x), Some(y)) if x != y)
            }
        }
    }

    /// Smallest value covering both.
    pub fn union(&self, other: &DimValue) -> DimValue {
        let (alo, ahi, ap) = self.bounds();
        let (blo, bhi, bp) = other.bounds();
        let lo = alo.min(blo);
        let hi = match (ahi, bhi) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        let parity = if ap == bp { ap } else { None };
        DimValue::from_range(lo, hi, parity).expect("union of nonempty values")
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Exact(n) => write!(f, "{n}"),
            DimValue::Pair(a, b) => write!(f, "{{{a}, {b}}}"),
            DimValue::Interval { lo, hi, parity } => {
                match hi {
                    Some(h) => write!(f, "[{lo}, {h}]")?,
                    None => write!(f, "[{lo}, inf)")?,
                }
                match parity {
                    Some(p) => write!(f, " {}", Parity::name(Some(*p))),
                    None => Ok(()),
                }
            }
        }
    }
}

impl Serialize for DimValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use crate::json::number;
        match self {
            DimValue::Exact(n) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("kind", "exact")?;
                map.serialize_entry("n", &number(n))?;
                map.end()
            }
            DimValue::Pair(a, b) => {
                let mut map = serializer.serialize_map(Some(3))?;
                map.serialize_entry("kind", "pair")?;
                map.serialize_entry("a", &number(a))?;
                map.serialize_entry("b", &number(b))?;
                map.end()
            }
            DimValue::Interval { lo, hi, parity } => {
                let mut map = serializer.serialize_map(Some(4))?;
                map.serialize_entry("kind", "interval")?;
                map.serialize_entry("lo", &number(lo))?;
                map.serialize_entry("hi", &hi.as_ref().map(number))?;
                map.serialize_entry("parity", Parity::name(*parity))?;
                map.end()
            }
        }
    }
}

fn is_at_m(r: &Slope, inv: &InvariantPair) -> bool {
    r.as_integer() == Some(inv.m())
}

/// `qR + |p - qM|`.
pub fn framed_formula(r: &Slope, inv: &InvariantPair) -> BigInt {
    r.q() * inv.r() + (r.p() - r.q() * inv.m()).abs()
}

/// `dim I#(S^3_r(K), omega)` for a bundle set of class `bundle`.
pub fn dim_framed(
    r: &Slope,
    inv: &InvariantPair,
    field: &FieldSpec,
    bundle: BundleClass,
) -> Result<DimValue, DimError> {
    r.require_finite()?;
    if is_at_m(r, inv) && inv.m().is_even() {
        let low = inv.r().clone();
        return Ok(if field.is_char2() && field.sgmme() {
            match bundle {
                BundleClass::Zero => DimValue::Exact(low + 2),
                BundleClass::Mu => DimValue::Exact(low),
            }
        } else {
            DimValue::pair(low)
        });
    }
    Ok(DimValue::Exact(framed_formula(r, inv)))
}

/// Unreduced dual-knot dimension `dim I#(S^3_r(K), K~_r, omega)`. It does not
/// depend on the bundle set.
pub fn dim_dual_unreduced(
    r: &Slope,
    inv: &InvariantPair,
    field: &FieldSpec,
) -> Result<DimValue, DimError> {
    r.require_finite()?;
    if is_at_m(r, inv) {
        let low = 2 * inv.r();
        return Ok(if field.is_char2() {
            DimValue::Exact(low)
        } else {
            DimValue::pair(low)
        });
    }
    Ok(DimValue::Exact(2 * framed_formula(r, inv)))
}

/// Reduced dual-knot dimension over `F2`.
pub fn dim_dual_reduced_f2(r: &Slope, inv: &InvariantPair) -> Result<BigInt, DimError> {
    r.require_finite()?;
    if is_at_m(r, inv) {
        return Ok(inv.r().clone());
    }
    Ok(framed_formula(r, inv))
}

/// Whether `qR + |p - qM|` has the parity of `p`, as the Euler
/// characteristic `|H_1| = |p|` forces.
pub fn euler_parity_check(r: &Slope, inv: &InvariantPair) -> bool {
    (framed_formula(r, inv) - r.p()).is_even()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks the general relations between the unreduced (`d_sharp`) and
/// reduced (`d_natural`) dimensions of the same knot:
///
/// * `doubling` (char 2): `d# = 2 d♮`
/// * `skein-bound` (any field): `d# <= 2 d♮`
/// * `even` (any field): `d#` is even
/// * `lower-bound` (char 0): `d# >= d♮`
pub fn validate_relations(
    d_sharp: &DimValue,
    d_natural: &DimValue,
    field: &FieldSpec,
) -> Result<RelationReport, DimError> {
    let sharp = d_sharp
        .as_exact()
        .ok_or_else(|| DimError::NotExact(d_sharp.clone()))?;
    let natural = d_natural
        .as_exact()
        .ok_or_else(|| DimError::NotExact(d_natural.clone()))?;
    let twice = 2 * natural;
    let mut checks = Vec::new();
    if field.is_char2() {
        checks.push(RelationCheck {
            name: "doubling",
            pass: *sharp == twice,
            detail: format!("{sharp} = 2 * {natural}"),
        });
    }
    checks.push(RelationCheck {
        name: "skein-bound",
        pass: *sharp <= twice,
        detail: format!("{sharp} <= 2 * {natural}"),
    });
    checks.push(RelationCheck {
        name: "even",
        pass: sharp.is_even(),
        detail: format!("{sharp} is even"),
    });
    if field.characteristic() == 0 {
        checks.push(RelationCheck {
            name: "lower-bound",
            pass: sharp >= natural,
            detail: format!("{sharp} >= {natural}"),
        });
    }
    Ok(RelationReport { checks })
}
