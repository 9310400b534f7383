//! SU(2) obstruction verdicts for surgeries and for their lifts to the
//! double branched cover, plus the simple-knot gap that drives them.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::dimension::framed_formula;
use crate::knot::{knot_determinant, InvariantPair, KnotError, KnotRecord};
use crate::slope::{Slope, SlopeError};
use crate::surgery::branched_surgery_slope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error("verdicts need a positive slope, got {0}; mirror the knot for negative slopes")]
    NonPositiveSlope(Slope),
}

/// Whether `p = l^k` for an odd prime `l` and `k >= 1`. `1` is not a prime
/// power.
pub fn is_odd_prime_power(p: &BigInt) -> bool {
    if *p <= BigInt::one() || p.is_even() {
        return false;
    }
    let n = p.magnitude();
    (1..=n.bits() as u32).any(|k| {
        let root = n.nth_root(k);
        root.pow(k) == *n && is_prime(&root)
    })
}

fn is_prime(n: &BigUint) -> bool {
    match u64::try_from(n) {
        Ok(small) => num_prime::nt_funcs::is_prime64(small),
        Err(_) => num_prime::nt_funcs::is_prime(n, None).probably(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    NotAbelian,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::NotAbelian => "NotAbelian",
            Outcome::Inconclusive => "Inconclusive",
        })
    }
}

/// Which obstruction was attempted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// `S^3_{p/q}(K)` is not `p/q`-traceless SU(2)-abelian.
    Traceless,
    /// The surgery on the lifted knot in the double branched cover is not
    /// SU(2)-abelian.
    Branched,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Traceless => "traceless",
            Theorem::Branched => "branched",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChecklistItem {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub theorem: Theorem,
    pub slope: Slope,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branched_slope: Option<Slope>,
    pub checklist: Vec<ChecklistItem>,
}

impl Verdict {
    fn decide(
        theorem: Theorem,
        slope: &Slope,
        branched_slope: Option<Slope>,
        checklist: Vec<ChecklistItem>,
    ) -> Self {
        let outcome = if checklist.iter().all(|c| c.pass) {
            Outcome::NotAbelian
        } else {
            Outcome::Inconclusive
        };
        Verdict {
            outcome,
            theorem,
            slope: slope.clone(),
            branched_slope,
            checklist,
        }
    }

    pub fn failing(&self) -> impl Iterator<Item = &ChecklistItem> {
        self.checklist.iter().filter(|c| !c.pass)
    }
}

/// Upper end of the slope window: 6, or 8 under the SGMME assumption.
pub fn window_bound(sgmme: bool) -> u32 {
    if sgmme {
        8
    } else {
        6
    }
}

fn require_positive(r: &Slope) -> Result<(), ObstructionError> {
    r.require_finite()?;
    if !r.p().is_positive() {
        return Err(ObstructionError::NonPositiveSlope(r.clone()));
    }
    Ok(())
}

fn common_checks(k: &KnotRecord, r: &Slope, sgmme: bool) -> Vec<ChecklistItem> {
    let bound = window_bound(sgmme);
    let in_window = r.p() < &(r.q() * bound);
    let prime_power = is_odd_prime_power(r.p());
    vec![
        ChecklistItem {
            name: "not-excluded",
            pass: !k.excluded,
            detail: if k.excluded {
                format!("{} is one of U, T(2,3), T(2,5)", k.name)
            } else {
                format!("{} is not U, T(2,3) or T(2,5)", k.name)
            },
        },
        ChecklistItem {
            name: "window",
            pass: in_window,
            detail: format!(
                "{r} {} (0, {bound}){}",
                if in_window { "lies in" } else { "is outside" },
                if sgmme { " under sgmme" } else { "" }
            ),
        },
        ChecklistItem {
            name: "odd-prime-power",
            pass: prime_power,
            detail: format!(
                "p = {} {} an odd prime power",
                r.p(),
                if prime_power { "is" } else { "is not" }
            ),
        },
    ]
}

/// Whether `S^3_{p/q}(K)` is certified not `p/q`-traceless SU(2)-abelian.
pub fn verdict_traceless(
    k: &KnotRecord,
    r: &Slope,
    sgmme: bool,
) -> Result<Verdict, ObstructionError> {
    require_positive(r)?;
    let det = knot_determinant(k)?;
    let mut checklist = common_checks(k, r, sgmme);
    let divides = det.is_multiple_of(r.p());
    checklist.push(ChecklistItem {
        name: "p-does-not-divide-det",
        pass: !divides,
        detail: format!(
            "p = {} {} det = {det}",
            r.p(),
            if divides {
                "divides"
            } else {
                "does not divide"
            }
        ),
    });
    Ok(Verdict::decide(Theorem::Traceless, r, None, checklist))
}

/// Whether the `p/2q` surgery on the lift of `K` to its double branched
/// cover is certified not SU(2)-abelian.
pub fn verdict_branched(
    k: &KnotRecord,
    r: &Slope,
    sgmme: bool,
) -> Result<Verdict, ObstructionError> {
    require_positive(r)?;
    let det = knot_determinant(k)?;
    let mut checklist = common_checks(k, r, sgmme);
    checklist.insert(
        1,
        ChecklistItem {
            name: "det-one",
            pass: det.is_one(),
            detail: format!("det = {det}"),
        },
    );
    // p is odd whenever the prime-power gate passes; even p has no lift.
    let branched = branched_surgery_slope(r).ok();
    Ok(Verdict::decide(Theorem::Branched, r, branched, checklist))
}

/// `(qR + |p - qM|) - p`: how far the reduced dual-knot dimension exceeds
/// the Euler-characteristic lower bound `|H_1| = p`. A positive gap rules out
/// an instanton L-space surgery at `r`.
pub fn simple_knot_gap(r: &Slope, inv: &InvariantPair) -> Result<BigInt, SlopeError> {
    r.require_finite()?;
    Ok(framed_formula(r, inv) - r.p())
}

/// The positive slopes where [`simple_knot_gap`] is at most zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionWindow {
    Empty,
    AllPositive,
    /// `[start, inf)`.
    Ray {
        start: BigInt,
    },
}

impl ObstructionWindow {
    pub fn contains(&self, r: &Slope) -> bool {
        if r.is_infinite() || !r.p().is_positive() {
            return false;
        }
        match self {
            ObstructionWindow::Empty => false,
            ObstructionWindow::AllPositive => true,
            ObstructionWindow::Ray { start } => r.p() >= &(r.q() * start),
        }
    }
}

impl fmt::Display for ObstructionWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionWindow::Empty => write!(f, "empty"),
            ObstructionWindow::AllPositive => write!(f, "(0, inf)"),
            ObstructionWindow::Ray { start } => write!(f, "[{start}, inf)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowDescriptor {
    pub window: ObstructionWindow,
    pub derivation: Vec<String>,
}

/// Case analysis of `gap = qR + |p - qM| - p` over positive slopes.
///
/// For `p/q >= M` the gap is `q(R - M)`; for `p/q < M` it is
/// `q(R + M) - 2p > q(R - M) >= 0`. So the gap vanishes exactly on
/// `p/q >= M` when `R = M`, and is positive everywhere otherwise.
pub fn obstruction_window(inv: &InvariantPair) -> WindowDescriptor {
    let (m, r) = (inv.m(), inv.r());
    let excess = r - m;
    let mut derivation = vec![
        format!("p/q >= M = {m}: gap = q(R - M) = {excess}q"),
        format!("p/q < M = {m}: gap = q(R + M) - 2p > q(R - M) >= 0"),
    ];
    let window = if !excess.is_zero() {
        derivation.push(format!(
            "R - M = {excess} > 0: gap > 0 on every positive slope"
        ));
        ObstructionWindow::Empty
    } else if m.is_zero() {
        derivation.push("R = M = 0: gap = 0 on every positive slope".to_string());
        ObstructionWindow::AllPositive
    } else {
        derivation.push(format!("R = M = {m}: gap = 0 exactly on [{m}, inf)"));
        ObstructionWindow::Ray { start: m.clone() }
    };
    WindowDescriptor { window, derivation }
}
