use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::ProverError;
use crate::dimension::{DimValue, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub(crate) usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A dimension variable with its initial bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimVar {
    pub name: String,
    pub lo: BigInt,
    pub hi: Option<BigInt>,
    pub parity: Option<Parity>,
}

/// Three vector spaces in an exact triangle: each dimension is at most the
/// sum of the other two, and the three dimensions sum to an even number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub vars: [VarId; 3],
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equality {
    pub a: VarId,
    pub b: VarId,
    pub label: String,
}

/// `{value(a), value(b)} = {low, low + 2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Couple {
    pub a: VarId,
    pub b: VarId,
    pub low: BigInt,
    pub label: String,
}

/// `value(sharp) = 2 * value(natural)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Doubling {
    pub sharp: VarId,
    pub natural: VarId,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityFact {
    pub var: VarId,
    pub parity: Parity,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pin {
    pub value: DimValue,
    pub label: String,
}

/// Variables and constraints of one proof replay.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub(crate) vars: Vec<DimVar>,
    pub(crate) triangles: Vec<Triangle>,
    pub(crate) pins: BTreeMap<VarId, Pin>,
    pub(crate) equalities: Vec<Equality>,
    pub(crate) couples: Vec<Couple>,
    pub(crate) doublings: Vec<Doubling>,
    pub(crate) parities: Vec<ParityFact>,
    pub(crate) target: Option<VarId>,
    pub(crate) notes: Vec<String>,
}

impl ConstraintSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// A variable ranging over all dimensions `[0, inf)`.
    pub fn add_var(&mut self, name: impl Into<String>) -> VarId {
        self.add_bounded_var(name, BigInt::zero(), None)
    }

    pub fn add_bounded_var(
        &mut self,
        name: impl Into<String>,
        lo: impl Into<BigInt>,
        hi: Option<BigInt>,
    ) -> VarId {
        let lo: BigInt = lo.into();
        self.vars.push(DimVar {
            name: name.into(),
            lo: lo.max(BigInt::zero()),
            hi,
            parity: None,
        });
        VarId(self.vars.len() - 1)
    }

    fn check(&self, id: VarId) -> Result<(), ProverError> {
        if id.0 < self.vars.len() {
            Ok(())
        } else {
            Err(ProverError::UnknownVar(id.0))
        }
    }

    pub fn pin(
        &mut self,
        var: VarId,
        value: DimValue,
        label: impl Into<String>,
    ) -> Result<(), ProverError> {
        self.check(var)?;
        self.pins.insert(
            var,
            Pin {
                value,
                label: label.into(),
            },
        );
        Ok(())
    }

    pub fn add_triangle(
        &mut self,
        vars: [VarId; 3],
        label: impl Into<String>,
    ) -> Result<(), ProverError> {
        for v in vars {
            self.check(v)?;
        }
        self.triangles.push(Triangle {
            vars,
            label: label.into(),
        });
        Ok(())
    }

    pub fn add_equality(
        &mut self,
        a: VarId,
        b: VarId,
        label: impl Into<String>,
    ) -> Result<(), ProverError> {
        self.check(a)?;
        self.check(b)?;
        self.equalities.push(Equality {
            a,
            b,
            label: label.into(),
        });
        Ok(())
    }

    pub fn add_couple(
        &mut self,
        a: VarId,
        b: VarId,
        low: impl Into<BigInt>,
        label: impl Into<String>,
    ) -> Result<(), ProverError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(ProverError::SelfCouple(self.vars[a.0].name.clone()));
        }
        self.couples.push(Couple {
            a,
            b,
            low: low.into(),
            label: label.into(),
        });
        Ok(())
    }

    pub fn add_doubling(
        &mut self,
        sharp: VarId,
        natural: VarId,
        label: impl Into<String>,
    ) -> Result<(), ProverError> {
        self.check(sharp)?;
        self.check(natural)?;
        self.doublings.push(Doubling {
            sharp,
            natural,
            label: label.into(),
        });
        Ok(())
    }

    pub fn set_parity(
        &mut self,
        var: VarId,
        parity: Parity,
        label: impl Into<String>,
    ) -> Result<(), ProverError> {
        self.check(var)?;
        self.parities.push(ParityFact {
            var,
            parity,
            label: label.into(),
        });
        Ok(())
    }

    pub fn set_target(&mut self, var: VarId) -> Result<(), ProverError> {
        self.check(var)?;
        self.target = Some(var);
        Ok(())
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn target(&self) -> Option<VarId> {
        self.target
    }

    pub fn vars(&self) -> &[DimVar] {
        &self.vars
    }

    pub fn var(&self, id: VarId) -> &DimVar {
        &self.vars[id.0]
    }

    pub fn find(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|v| v.name == name).map(VarId)
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn pins(&self) -> &BTreeMap<VarId, Pin> {
        &self.pins
    }

    pub fn pins_mut(&mut self) -> &mut BTreeMap<VarId, Pin> {
        &mut self.pins
    }

    pub fn equalities(&self) -> &[Equality] {
        &self.equalities
    }

    pub fn couples(&self) -> &[Couple] {
        &self.couples
    }

    pub fn doublings(&self) -> &[Doubling] {
        &self.doublings
    }

    pub fn parities(&self) -> &[ParityFact] {
        &self.parities
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Whether an explicit assignment satisfies every constraint. Used to
    /// cross-check propagation against enumeration.
    pub fn satisfied_by(&self, values: &[BigInt]) -> bool {
        let v = |id: VarId| &values[id.0];
        let bounds = self.vars.iter().zip(values).all(|(var, x)| {
            x >= &var.lo
                && var.hi.as_ref().is_none_or(|h| x <= h)
                && var.parity.is_none_or(|p| p.matches(x))
        });
        let pins = self.pins.iter().all(|(id, pin)| pin.value.contains(v(*id)));
        let triangles = self.triangles.iter().all(|t| {
            let [a, b, c] = t.vars.map(v);
            a <= &(b + c)
                && b <= &(a + c)
                && c <= &(a + b)
                && Parity::of(&(a + b + c)) == Parity::Even
        });
        let equalities = self.equalities.iter().all(|e| v(e.a) == v(e.b));
        let couples = self.couples.iter().all(|c| {
            let high = &c.low + 2;
            (v(c.a) == &c.low && v(c.b) == &high) || (v(c.a) == &high && v(c.b) == &c.low)
        });
        let doublings = self
            .doublings
            .iter()
            .all(|d| *v(d.sharp) == 2 * v(d.natural));
        let parities = self.parities.iter().all(|f| f.parity.matches(v(f.var)));
        bounds && pins && triangles && equalities && couples && doublings && parities
    }
}

/// Which rule produced a narrowing step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Pin,
    Branch,
    TriangleBound,
    TriangleParity,
    EulerParity,
    Equality,
    Doubling,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Pin => "pin",
            Rule::Branch => "branch",
            Rule::TriangleBound => "triangle-bound",
            Rule::TriangleParity => "triangle-parity",
            Rule::EulerParity => "euler-parity",
            Rule::Equality => "equality",
            Rule::Doubling => "doubling",
        })
    }
}

/// One narrowing of one variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub branch: usize,
    pub rule: Rule,
    /// Label of the constraint that fired.
    #[serde(rename = "triangle")]
    pub constraint: String,
    pub var: String,
    pub old: String,
    pub new: String,
}
