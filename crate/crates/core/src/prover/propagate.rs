//! Interval narrowing to a fixed point, with branch-and-union over
//! two-valued pins.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::system::{ConstraintSystem, Rule, TraceStep, VarId};
use super::ProverError;
use crate::dimension::{DimValue, Parity};

const MAX_CHOICES: usize = 16;
const MAX_ROUNDS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
struct State {
    lo: BigInt,
    hi: Option<BigInt>,
    parity: Option<Parity>,
}

impl State {
    fn show(&self) -> String {
        let range = match &self.hi {
            Some(h) if *h == self.lo => return h.to_string(),
            Some(h) => format!("[{}, {h}]", self.lo),
            None => format!("[{}, inf)", self.lo),
        };
        match self.parity {
            Some(p) => format!("{range} {}", Parity::name(Some(p))),
            None => range,
        }
    }

    fn value(&self) -> DimValue {
        DimValue::from_range(self.lo.clone(), self.hi.clone(), self.parity)
            .expect("narrowed states are nonempty")
    }
}

/// Narrowing request for one variable.
#[derive(Default)]
struct Narrow {
    lo: Option<BigInt>,
    hi: Option<BigInt>,
    parity: Option<Parity>,
}

struct Run<'a> {
    sys: &'a ConstraintSystem,
    branch: usize,
    states: Vec<State>,
    steps: Vec<TraceStep>,
}

impl Run<'_> {
    fn narrow(
        &mut self,
        var: VarId,
        req: Narrow,
        rule: Rule,
        label: &str,
    ) -> Result<bool, ProverError> {
        let old = self.states[var.0].clone();
        let state = &mut self.states[var.0];
        let infeasible = || ProverError::Infeasible {
            var: self.sys.vars[var.0].name.clone(),
            constraint: label.to_string(),
        };
        if let Some(p) = req.parity {
            match state.parity {
                Some(q) if q != p => return Err(infeasible()),
                _ => state.parity = Some(p),
            }
        }
        if let Some(lo) = req.lo {
            if lo > state.lo {
                state.lo = lo;
            }
        }
        if let Some(hi) = req.hi {
            if state.hi.as_ref().is_none_or(|h| hi < *h) {
                state.hi = Some(hi);
            }
        }
        if let Some(p) = state.parity {
            if !p.matches(&state.lo) {
                state.lo += 1;
            }
            if let Some(h) = state.hi.as_mut() {
                if !p.matches(h) {
                    *h -= 1;
                }
            }
        }
        match &state.hi {
            Some(h) if *h < state.lo => return Err(infeasible()),
            Some(h) if *h == state.lo && state.parity.is_none() => {
                state.parity = Some(Parity::of(h));
            }
            _ => {}
        }
        let changed = *state != old;
        if changed {
            let new = state.show();
            self.steps.push(TraceStep {
                branch: self.branch,
                rule,
                constraint: label.to_string(),
                var: self.sys.vars[var.0].name.clone(),
                old: old.show(),
                new,
            });
        }
        Ok(changed)
    }

    fn apply_value(
        &mut self,
        var: VarId,
        value: &DimValue,
        rule: Rule,
        label: &str,
    ) -> Result<(), ProverError> {
        let (lo, hi, parity) = value.bounds();
        self.narrow(
            var,
            Narrow {
                lo: Some(lo),
                hi,
                parity,
            },
            rule,
            label,
        )?;
        Ok(())
    }

    fn triangle(&mut self, idx: usize) -> Result<bool, ProverError> {
        let t = &self.sys.triangles[idx];
        let mut changed = false;
        for i in 0..3 {
            let a = t.vars[i];
            let b = &self.states[t.vars[(i + 1) % 3].0];
            let c = &self.states[t.vars[(i + 2) % 3].0];
            let hi = match (&b.hi, &c.hi) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            };
            let from_b = c.hi.as_ref().map(|h| &b.lo - h);
            let from_c = b.hi.as_ref().map(|h| &c.lo - h);
            let lo = from_b.into_iter().chain(from_c).max();
            let parity = match (b.parity, c.parity) {
                (Some(x), Some(y)) => Some(x.plus(y)),
                _ => None,
            };
            changed |= self.narrow(
                a,
                Narrow {
                    lo,
                    hi,
                    parity: None,
                },
                Rule::TriangleBound,
                &t.label,
            )?;
            changed |= self.narrow(
                a,
                Narrow {
                    parity,
                    ..Narrow::default()
                },
                Rule::TriangleParity,
                &t.label,
            )?;
        }
        Ok(changed)
    }

    fn equality(&mut self, idx: usize) -> Result<bool, ProverError> {
        let e = &self.sys.equalities[idx];
        let mut changed = false;
        for (to, from) in [(e.a, e.b), (e.b, e.a)] {
            let s = self.states[from.0].clone();
            changed |= self.narrow(
                to,
                Narrow {
                    lo: Some(s.lo),
                    hi: s.hi,
                    parity: s.parity,
                },
                Rule::Equality,
                &e.label,
            )?;
        }
        Ok(changed)
    }

    fn doubling(&mut self, idx: usize) -> Result<bool, ProverError> {
        let d = &self.sys.doublings[idx];
        let two = BigInt::from(2);
        let sharp = self.states[d.sharp.0].clone();
        let mut changed = self.narrow(
            d.natural,
            Narrow {
                lo: Some(sharp.lo.div_ceil(&two)),
                hi: sharp.hi.map(|h| h.div_floor(&two)),
                parity: None,
            },
            Rule::Doubling,
            &d.label,
        )?;
        let natural = self.states[d.natural.0].clone();
        changed |= self.narrow(
            d.sharp,
            Narrow {
                lo: Some(&natural.lo * 2),
                hi: natural.hi.map(|h| h * 2),
                parity: Some(Parity::Even),
            },
            Rule::Doubling,
            &d.label,
        )?;
        Ok(changed)
    }

    fn fixed_point(&mut self) -> Result<usize, ProverError> {
        let sys = self.sys;
        for round in 0..MAX_ROUNDS {
            let mut changed = false;
            for i in 0..sys.triangles.len() {
                changed |= self.triangle(i)?;
            }
            for i in 0..sys.equalities.len() {
                changed |= self.equality(i)?;
            }
            for i in 0..sys.doublings.len() {
                changed |= self.doubling(i)?;
            }
            if !changed {
                return Ok(round);
            }
        }
        Err(ProverError::NoFixedPoint(MAX_ROUNDS))
    }
}

/// A two-way choice explored by branching.
enum Choice {
    Couple(usize),
    PairPin(VarId, BigInt, BigInt),
}

/// Final values after propagation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Propagation {
    names: Vec<String>,
    values: Vec<DimValue>,
    pub steps: Vec<TraceStep>,
    pub branches: usize,
    pub feasible_branches: usize,
    /// Largest number of constraint sweeps that changed something, over
    /// all branches.
    pub rounds: usize,
}

impl Propagation {
    pub fn value(&self, var: VarId) -> &DimValue {
        &self.values[var.0]
    }

    pub fn value_named(&self, name: &str) -> Option<&DimValue> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| &self.values[i])
    }

    pub fn values(&self) -> impl Iterator<Item = (&str, &DimValue)> {
        self.names.iter().map(String::as_str).zip(&self.values)
    }
}

/// Final states, steps and rounds of a feasible branch; the error and the
/// steps up to it otherwise.
type BranchResult = Result<(Vec<State>, Vec<TraceStep>, usize), (ProverError, Vec<TraceStep>)>;

fn run_branch(sys: &ConstraintSystem, choices: &[Choice], branch: usize) -> BranchResult {
    let states = sys
        .vars
        .iter()
        .map(|v| State {
            lo: v.lo.clone().max(BigInt::zero()),
            hi: v.hi.clone(),
            parity: None,
        })
        .collect();
    let mut run = Run {
        sys,
        branch,
        states,
        steps: Vec::new(),
    };
    let result = (|| {
        for (i, v) in sys.vars.iter().enumerate() {
            // declared parities and bounds re-applied so they get snapped
            run.narrow(
                VarId(i),
                Narrow {
                    lo: None,
                    hi: None,
                    parity: v.parity,
                },
                Rule::Pin,
                "declared bounds",
            )?;
        }
        for (var, pin) in &sys.pins {
            run.apply_value(*var, &pin.value, Rule::Pin, &pin.label)?;
        }
        for (bit, choice) in choices.iter().enumerate() {
            let high_first = branch >> bit & 1 == 1;
            match choice {
                Choice::Couple(i) => {
                    let c = &sys.couples[*i];
                    let high = &c.low + 2;
                    let (va, vb) = if high_first {
                        (high, c.low.clone())
                    } else {
                        (c.low.clone(), high)
                    };
                    run.apply_value(c.a, &DimValue::Exact(va), Rule::Branch, &c.label)?;
                    run.apply_value(c.b, &DimValue::Exact(vb), Rule::Branch, &c.label)?;
                }
                Choice::PairPin(var, a, b) => {
                    let v = if high_first { b } else { a };
                    let label = format!("{} (branch)", sys.pins[var].label);
                    run.apply_value(*var, &DimValue::Exact(v.clone()), Rule::Branch, &label)?;
                }
            }
        }
        for fact in &sys.parities {
            run.narrow(
                fact.var,
                Narrow {
                    parity: Some(fact.parity),
                    ..Narrow::default()
                },
                Rule::EulerParity,
                &fact.label,
            )?;
        }
        run.fixed_point()
    })();
    match result {
        Ok(rounds) => Ok((run.states, run.steps, rounds)),
        Err(e) => Err((e, run.steps)),
    }
}

/// Narrows every variable to a fixed point. Two-valued pins and couples
/// are explored branch by branch; the result for each variable is the
/// union over the branches that stay feasible.
pub fn propagate(sys: &ConstraintSystem) -> Result<Propagation, ProverError> {
    let coupled: Vec<VarId> = sys.couples.iter().flat_map(|c| [c.a, c.b]).collect();
    let mut choices: Vec<Choice> = (0..sys.couples.len()).map(Choice::Couple).collect();
    for (var, pin) in &sys.pins {
        if let DimValue::Pair(a, b) = &pin.value {
            if !coupled.contains(var) {
                choices.push(Choice::PairPin(*var, a.clone(), b.clone()));
            }
        }
    }
    if choices.len() > MAX_CHOICES {
        return Err(ProverError::TooManyBranches(choices.len()));
    }
    let branches = 1usize << choices.len();
    let mut steps = Vec::new();
    let mut merged: Option<Vec<DimValue>> = None;
    let mut feasible = 0;
    let mut rounds = 0;
    let mut first_error = None;
    for branch in 0..branches {
        match run_branch(sys, &choices, branch) {
            Ok((states, branch_steps, r)) => {
                feasible += 1;
                rounds = rounds.max(r);
                steps.extend(branch_steps);
                let values: Vec<DimValue> = states.iter().map(State::value).collect();
                merged = Some(match merged {
                    None => values,
                    Some(prev) => prev.iter().zip(&values).map(|(a, b)| a.union(b)).collect(),
                });
            }
            Err((e, branch_steps)) => {
                steps.extend(branch_steps);
                first_error.get_or_insert(e);
            }
        }
    }
    let Some(values) = merged else {
        return Err(first_error.expect("at least one branch ran"));
    };
    Ok(Propagation {
        names: sys.vars.iter().map(|v| v.name.clone()).collect(),
        values,
        steps,
        branches,
        feasible_branches: feasible,
        rounds,
    })
}
