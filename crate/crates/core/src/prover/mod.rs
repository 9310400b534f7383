//! Mechanical replay of the exact-triangle arguments for the dual-knot
//! dimension.
//!
//! For a slope `r0` the system holds the unknown dual-knot dimension `D`,
//! the framed surgery dimensions at the four fan slopes around `r0`
//! (pinned from the closed form), and the two exact triangles
//! `{D, dim(r3), dim(r2)}` and `{D, dim(r4), dim(r1)}`. Everything is
//! built twice, once per bundle class (`0` and `mu`), and the two copies of
//! `D` are equal: the dual knot is homologous to the meridian, and adding the
//! knot itself to the bundle set does not change the homology. At the slope
//! `M` (when `M` is even) the two copies of the framed dimension form a
//! couple `{R, R + 2}`. In characteristic 2 a reduced variable `N` with
//! `D = 2N` and `N ≡ p (mod 2)` is added.

mod propagate;
mod system;

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

pub use propagate::{propagate, Propagation};
pub use system::{
    ConstraintSystem, Couple, DimVar, Doubling, Equality, ParityFact, Pin, Rule, TraceStep,
    Triangle, VarId,
};

use crate::dimension::{dim_dual_unreduced, dim_framed, DimError, DimValue, Parity};
use crate::knot::{FieldSpec, InvariantPair};
use crate::slope::{farey_resolve, integer_fan, Slope, SlopeError};
use crate::surgery::BundleClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error(transparent)]
    Dim(#[from] DimError),
    #[error("variable #{0} does not exist")]
    UnknownVar(usize),
    #[error("a couple needs two distinct variables, got {0} twice")]
    SelfCouple(String),
    #[error("infeasible: {var} has no admissible value after {constraint}")]
    Infeasible { var: String, constraint: String },
    #[error("{0} two-way choices exceed the branching limit")]
    TooManyBranches(usize),
    #[error("no fixed point after {0} rounds")]
    NoFixedPoint(usize),
}

const SHEETS: [BundleClass; 2] = [BundleClass::Zero, BundleClass::Mu];

/// Name of the dual-knot variable for one bundle class.
pub fn dual_var_name(bundle: BundleClass) -> String {
    format!("D[{bundle}]")
}

/// Name of the reduced (`F2`) dual-knot variable.
pub const REDUCED_VAR: &str = "N";

fn framed_var_name(slope: &Slope, bundle: BundleClass) -> String {
    format!("dim({slope})[{bundle}]")
}

/// Builds the constraint system for the dual knot of `r0`-surgery.
///
/// When `r0 < M` the system is built for the mirror knot at `-r0`, which
/// has the same dual-knot dimension.
pub fn build_system(
    r0: &Slope,
    inv: &InvariantPair,
    field: &FieldSpec,
) -> Result<ConstraintSystem, ProverError> {
    r0.require_finite()?;
    let m_slope = Slope::integer(inv.m().clone());
    let (slope, inv) = if *r0 < m_slope {
        (r0.negate(), inv.mirror())
    } else {
        (r0.clone(), inv.clone())
    };
    let fan = match slope.as_integer() {
        Some(n) => integer_fan(n.clone()),
        None => farey_resolve(&slope)?,
    };

    let mut sys = ConstraintSystem::new();
    if slope != *r0 {
        sys.note(format!(
            "mirror: {r0} < M = {}, replaying {slope} for the mirror with {inv}",
            m_slope
        ));
    }
    sys.note(format!("fan {fan}"));

    let mut targets = Vec::new();
    let mut framed = Vec::new();
    for bundle in SHEETS {
        let target = sys.add_var(dual_var_name(bundle));
        targets.push(target);
        let mut var_at = |s: &Slope| -> Result<VarId, ProverError> {
            let id = sys.add_var(framed_var_name(s, bundle));
            let (value, label) = if s.is_infinite() {
                (DimValue::exact(1), "dim I#(S^3) = 1".to_string())
            } else {
                (
                    dim_framed(s, &inv, field, bundle)?,
                    format!("surgery formula at {s}"),
                )
            };
            sys.pin(id, value, label)?;
            Ok(id)
        };
        let [d1, d2, d3, d4] = [&fan.r1, &fan.r2, &fan.r3, &fan.r4].map(&mut var_at);
        let (d1, d2, d3, d4) = (d1?, d2?, d3?, d4?);
        sys.add_triangle(
            [target, d3, d2],
            format!("T1[{bundle}] ({slope}; {}, {})", fan.r3, fan.r2),
        )?;
        sys.add_triangle(
            [target, d4, d1],
            format!("T2[{bundle}] ({slope}; {}, {})", fan.r4, fan.r1),
        )?;
        framed.push([d1, d2, d3, d4]);
    }

    for (&a, &b) in framed[0].iter().zip(&framed[1]) {
        if matches!(sys.pins()[&a].value, DimValue::Pair(..)) {
            sys.add_couple(
                a,
                b,
                inv.r().clone(),
                format!("bundle classes at {m_slope} realize {{R, R+2}}"),
            )?;
        }
    }
    sys.add_equality(
        targets[0],
        targets[1],
        "flip symmetry: dual knot is homologous to mu",
    )?;
    if field.is_char2() {
        let natural = sys.add_var(REDUCED_VAR);
        sys.add_doubling(targets[0], natural, "F2 doubling: D = 2N")?;
        sys.set_parity(
            natural,
            Parity::of(r0.p()),
            "Euler characteristic: N ≡ |H_1| = |p| (mod 2)",
        )?;
    }
    sys.set_target(targets[0])?;
    Ok(sys)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    /// Propagation pins the closed-form value uniquely.
    Match,
    /// The closed-form value is admissible but not pinned uniquely.
    Consistent,
    /// Propagation excludes the closed-form value, or the system is
    /// infeasible.
    Mismatch,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Match => "MATCH",
            Status::Consistent => "CONSISTENT",
            Status::Mismatch => "MISMATCH",
        })
    }
}

fn compare(propagated: &DimValue, closed: &DimValue) -> Status {
    match (propagated, closed) {
        (DimValue::Exact(a), DimValue::Exact(b)) if a == b => Status::Match,
        _ if propagated.intersects(closed) => Status::Consistent,
        _ => Status::Mismatch,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofReport {
    pub slope: Slope,
    pub field: FieldSpec,
    pub invariants: InvariantPair,
    pub status: Status,
    pub closed_form: DimValue,
    pub propagated: Option<DimValue>,
    pub branches: usize,
    pub feasible_branches: usize,
    pub notes: Vec<String>,
    pub steps: Vec<TraceStep>,
}

impl ProofReport {
    /// The line-oriented trace: one tab-separated line per narrowing step,
    /// then the notes and the verdict as `#` lines.
    pub fn trace(&self) -> String {
        let mut out = String::from("step\tbranch\trule\tconstraint\tvar\told\tnew\n");
        for (i, s) in self.steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                i + 1,
                s.branch,
                s.rule,
                s.constraint,
                s.var,
                s.old,
                s.new
            );
        }
        for note in &self.notes {
            let _ = writeln!(out, "# {note}");
        }
        let propagated = self
            .propagated
            .as_ref()
            .map_or("infeasible".to_string(), |v| v.to_string());
        let _ = writeln!(
            out,
            "# {} slope {} over {} with {}: propagated {propagated}, closed form {}",
            self.status, self.slope, self.field, self.invariants, self.closed_form
        );
        out
    }
}

/// Runs propagation on `sys` and compares its target with `closed_form`.
pub fn certify_system(
    sys: &ConstraintSystem,
    closed_form: DimValue,
    slope: &Slope,
    inv: &InvariantPair,
    field: &FieldSpec,
) -> ProofReport {
    let target = sys.target().expect("system has a target");
    let mut notes = sys.notes().to_vec();
    let (status, propagated, branches, feasible, steps) = match propagate(sys) {
        Ok(p) => {
            let value = p.value(target).clone();
            (
                compare(&value, &closed_form),
                Some(value),
                p.branches,
                p.feasible_branches,
                p.steps,
            )
        }
        Err(e) => {
            notes.push(e.to_string());
            (Status::Mismatch, None, 0, 0, Vec::new())
        }
    };
    ProofReport {
        slope: slope.clone(),
        field: *field,
        invariants: inv.clone(),
        status,
        closed_form,
        propagated,
        branches,
        feasible_branches: feasible,
        notes,
        steps,
    }
}

/// Replays the triangle argument at `r0` and checks it against the
/// closed-form dual-knot dimension.
pub fn certify(
    r0: &Slope,
    inv: &InvariantPair,
    field: &FieldSpec,
) -> Result<ProofReport, ProverError> {
    let closed = dim_dual_unreduced(r0, inv, field)?;
    let sys = build_system(r0, inv, field)?;
    Ok(certify_system(&sys, closed, r0, inv, field))
}
