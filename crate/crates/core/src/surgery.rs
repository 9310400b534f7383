//! Homological bookkeeping for `S^3_{p/q}(K)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::slope::{Slope, SlopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("branched surgery slope needs odd p, got {0}")]
    EvenNumerator(Slope),
}

/// First homology of a surgery: `Z` for `p = 0`, `Z/|p|` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum H1Group {
    Infinite,
    Cyclic(BigInt),
}

impl H1Group {
    /// `|H_1|`, or `None` when infinite.
    pub fn order(&self) -> Option<&BigInt> {
        match self {
            H1Group::Infinite => None,
            H1Group::Cyclic(n) => Some(n),
        }
    }
}

impl fmt::Display for H1Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H1Group::Infinite => write!(f, "Z"),
            H1Group::Cyclic(n) => write!(f, "Z/{n}"),
        }
    }
}

impl Serialize for H1Group {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn h1_surgery(r: &Slope) -> Result<H1Group, SurgeryError> {
    r.require_finite()?;
    Ok(if r.p().is_zero() {
        H1Group::Infinite
    } else {
        H1Group::Cyclic(r.p().abs())
    })
}

/// A class in `H_1(S^3_{p/q}(K); F2)`, which is `0` for odd `p` and
/// `F2<[mu]>` for even `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BundleClass {
    Zero,
    Mu,
}

impl BundleClass {
    pub fn plus(self, other: BundleClass) -> BundleClass {
        if self == other {
            BundleClass::Zero
        } else {
            BundleClass::Mu
        }
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BundleClass::Zero => "0",
            BundleClass::Mu => "mu",
        })
    }
}

/// All classes of `H_1(S^3_r(K); F2)`.
pub fn bundle_classes(r: &Slope) -> Vec<BundleClass> {
    if r.p().is_even() {
        vec![BundleClass::Zero, BundleClass::Mu]
    } else {
        vec![BundleClass::Zero]
    }
}

/// Reduces a bundle set that is `k` times the meridian to its class in
/// `H_1(S^3_r(K); F2)`.
pub fn bundle_class_reduce(omega_in_mu_units: u64, r: &Slope) -> BundleClass {
    if r.p().is_odd() || omega_in_mu_units.is_multiple_of(2) {
        BundleClass::Zero
    } else {
        BundleClass::Mu
    }
}

/// The class of the dual knot, which is homologous to the meridian.
pub fn dual_knot_class(r: &Slope) -> BundleClass {
    bundle_class_reduce(1, r)
}

/// Slope `p/2q` of the lifted surgery in the double branched cover.
pub fn branched_surgery_slope(r: &Slope) -> Result<Slope, SurgeryError> {
    r.require_finite()?;
    if r.p().is_even() {
        return Err(SurgeryError::EvenNumerator(r.clone()));
    }
    Ok(Slope::new(r.p().clone(), r.q() * 2)?)
}
