//! Knot records and classical invariants.
//!
//! The surgery invariants `(M, R)` of a knot are inputs: they are read from a
//! table or supplied by the caller and only validated here.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

mod table;

pub use table::{ingest_csv, ingest_json, ingest_table, IngestReport, KnotTable, RowError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("characteristic {0} is not 0, 2 or an odd prime")]
    BadCharacteristic(u32),
    #[error("the SGMME refinement only applies in characteristic 2")]
    SgmmeOutsideCharTwo,
    #[error("invariant pair (M, R) = ({m}, {r}) violates R = |M| + 2h with h >= 0")]
    BadInvariantPair { m: BigInt, r: BigInt },
    #[error("invariant pair (M, R) = ({m}, {r}) is not divisible by 4 as required over F2")]
    NotDivisibleByFour { m: BigInt, r: BigInt },
    #[error("Seifert matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("empty Alexander coefficient sequence")]
    EmptyAlexander,
    #[error("knot {0:?} carries no determinant data")]
    MissingDeterminant(String),
    #[error("knot {name:?}: determinant sources disagree ({detail})")]
    DeterminantMismatch { name: String, detail: String },
}

/// Coefficient field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    characteristic: u32,
    sgmme: bool,
}

impl FieldSpec {
    pub fn new(characteristic: u32, sgmme: bool) -> Result<Self, KnotError> {
        let prime_ok = characteristic == 0
            || characteristic == 2
            || (characteristic % 2 == 1 && num_prime::nt_funcs::is_prime64(characteristic as u64));
        if !prime_ok {
            return Err(KnotError::BadCharacteristic(characteristic));
        }
        if sgmme && characteristic != 2 {
            return Err(KnotError::SgmmeOutsideCharTwo);
        }
        Ok(FieldSpec {
            characteristic,
            sgmme,
        })
    }

    /// Characteristic zero (for instance `C`).
    pub const fn char0() -> Self {
        FieldSpec {
            characteristic: 0,
            sgmme: false,
        }
    }

    pub const fn f2() -> Self {
        FieldSpec {
            characteristic: 2,
            sgmme: false,
        }
    }

    /// `F2` with the refinement that fixes `M`, `R` modulo 4 and resolves
    /// the exceptional surgery per bundle class.
    pub const fn f2_sgmme() -> Self {
        FieldSpec {
            characteristic: 2,
            sgmme: true,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn sgmme(&self) -> bool {
        self.sgmme
    }

    pub fn is_char2(&self) -> bool {
        self.characteristic == 2
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.characteristic, self.sgmme) {
            (0, _) => write!(f, "char 0"),
            (2, true) => write!(f, "F2 (sgmme)"),
            (c, _) => write!(f, "F{c}"),
        }
    }
}

/// The pair `(M, R) = (nu_sharp, r)` of a knot over a field, with
/// `R = |M| + 2h`, `h >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantPair {
    #[serde(serialize_with = "crate::json::int")]
    m: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    r: BigInt,
}

impl InvariantPair {
    pub fn new(m: impl Into<BigInt>, r: impl Into<BigInt>) -> Result<Self, KnotError> {
        let pair = Self::new_unchecked(m, r);
        if pair.r < pair.m.abs() || (&pair.r - &pair.m).is_odd() {
            return Err(KnotError::BadInvariantPair {
                m: pair.m,
                r: pair.r,
            });
        }
        Ok(pair)
    }

    /// Builds the pair from `M` and `h`.
    pub fn from_h(m: impl Into<BigInt>, h: u64) -> Self {
        let m = m.into();
        let r = m.abs() + 2 * BigInt::from(h);
        InvariantPair { m, r }
    }

    /// Skips validation. Only meant for fault-injection and tests of the
    /// parity checks.
    pub fn new_unchecked(m: impl Into<BigInt>, r: impl Into<BigInt>) -> Self {
        InvariantPair {
            m: m.into(),
            r: r.into(),
        }
    }

    /// Validates the pair for use over `field`: under the SGMME refinement
    /// both entries must be divisible by 4.
    pub fn validated_for(self, field: &FieldSpec) -> Result<Self, KnotError> {
        let pair = Self::new(self.m, self.r)?;
        if field.sgmme() && !(pair.m.is_multiple_of(&4.into()) && pair.r.is_multiple_of(&4.into()))
        {
            return Err(KnotError::NotDivisibleByFour {
                m: pair.m,
                r: pair.r,
            });
        }
        Ok(pair)
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// `h = (R - |M|) / 2`.
    pub fn h(&self) -> BigInt {
        (&self.r - self.m.abs()) / 2
    }

    pub fn mirror(&self) -> Self {
        InvariantPair {
            m: -&self.m,
            r: self.r.clone(),
        }
    }
}

impl fmt::Display for InvariantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(M, R) = ({}, {})", self.m, self.r)
    }
}

pub type SeifertMatrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub seifert_matrix: Option<SeifertMatrix>,
    /// Coefficients of the Alexander polynomial in ascending powers of `t`,
    /// any power-of-`t` normalization.
    pub alexander_coeffs: Option<Vec<BigInt>>,
    /// A directly supplied determinant.
    pub determinant: Option<BigInt>,
    /// Invariant pairs keyed by field characteristic.
    pub invariants: BTreeMap<u32, InvariantPair>,
    /// Set for U, T(2,3) and T(2,5).
    pub excluded: bool,
}

impl KnotRecord {
    pub fn new(name: impl Into<String>) -> Self {
        KnotRecord {
            name: name.into(),
            seifert_matrix: None,
            alexander_coeffs: None,
            determinant: None,
            invariants: BTreeMap::new(),
            excluded: false,
        }
    }

    pub fn invariants_for(&self, field: &FieldSpec) -> Option<&InvariantPair> {
        self.invariants.get(&field.characteristic())
    }
}

/// Horner evaluation of `sum c_i t^i`.
pub fn alexander_eval(coeffs: &[BigInt], t: &BigInt) -> Result<BigInt, KnotError> {
    if coeffs.is_empty() {
        return Err(KnotError::EmptyAlexander);
    }
    Ok(coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * t + c))
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. The empty matrix has determinant 1.
pub fn integer_determinant(matrix: &[Vec<BigInt>]) -> Result<BigInt, KnotError> {
    check_square(matrix)?;
    let n = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 { sign } else { sign * prev })
}

fn check_square(matrix: &[Vec<BigInt>]) -> Result<(), KnotError> {
    let rows = matrix.len();
    match matrix.iter().position(|row| row.len() != rows) {
        Some(row) => Err(KnotError::NotSquare {
            rows,
            row,
            len: matrix[row].len(),
        }),
        None => Ok(()),
    }
}

/// `|det(V + V^T)| = |Δ(-1)|` for a Seifert matrix `V`.
pub fn determinant_from_seifert(v: &[Vec<BigInt>]) -> Result<BigInt, KnotError> {
    check_square(v)?;
    let n = v.len();
    let sym: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| &v[i][j] + &v[j][i]).collect())
        .collect();
    Ok(integer_determinant(&sym)?.abs())
}

/// `det(K) = |Δ_K(-1)|`, cross-checked across every source the record has.
pub fn knot_determinant(k: &KnotRecord) -> Result<BigInt, KnotError> {
    let mut sources: Vec<(&str, BigInt)> = Vec::new();
    if let Some(v) = &k.seifert_matrix {
        sources.push(("seifert", determinant_from_seifert(v)?));
    }
    if let Some(c) = &k.alexander_coeffs {
        sources.push(("alexander", alexander_eval(c, &BigInt::from(-1))?.abs()));
    }
    if let Some(d) = &k.determinant {
        sources.push(("direct", d.abs()));
    }
    let Some((_, first)) = sources.first() else {
        return Err(KnotError::MissingDeterminant(k.name.clone()));
    };
    if sources.iter().any(|(_, d)| d != first) {
        let detail = sources
            .iter()
            .map(|(src, d)| format!("{src} = {d}"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(KnotError::DeterminantMismatch {
            name: k.name.clone(),
            detail,
        });
    }
    Ok(first.clone())
}

fn mirror_name(name: &str) -> String {
    match name.strip_prefix("m(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("m({name})"),
    }
}

/// The mirror knot: `(M, R) -> (-M, R)` over every field, Seifert matrix
/// `V -> -V^T`, determinant data otherwise unchanged. An involution.
pub fn mirror(k: &KnotRecord) -> KnotRecord {
    let seifert_matrix = k.seifert_matrix.as_ref().map(|v| {
        let n = v.len();
        (0..n)
            .map(|i| (0..n).map(|j| -&v[j][i]).collect())
            .collect()
    });
    KnotRecord {
        name: mirror_name(&k.name),
        seifert_matrix,
        alexander_coeffs: k.alexander_coeffs.clone(),
        determinant: k.determinant.clone(),
        invariants: k
            .invariants
            .iter()
            .map(|(c, pair)| (*c, pair.mirror()))
            .collect(),
        excluded: k.excluded,
    }
}

fn ints(values: &[i64]) -> Vec<BigInt> {
    values.iter().copied().map(BigInt::from).collect()
}

fn matrix(rows: &[&[i64]]) -> SeifertMatrix {
    rows.iter().map(|r| ints(r)).collect()
}

/// Knots shipped with the crate. Only the unknot carries surgery invariants
/// (`(0, 0)` over every field); the others carry classical data only.
pub fn bundled_knots() -> Vec<KnotRecord> {
    let zero_pair = InvariantPair::new(0, 0).expect("valid pair");
    let mut unknot = KnotRecord::new("unknot");
    unknot.seifert_matrix = Some(Vec::new());
    unknot.alexander_coeffs = Some(ints(&[1]));
    unknot.invariants = [(0, zero_pair.clone()), (2, zero_pair)].into();
    unknot.excluded = true;

    let mut trefoil = KnotRecord::new("T(2,3)");
    trefoil.seifert_matrix = Some(matrix(&[&[-1, 1], &[0, -1]]));
    trefoil.alexander_coeffs = Some(ints(&[1, -1, 1]));
    trefoil.excluded = true;

    let mut cinquefoil = KnotRecord::new("T(2,5)");
    cinquefoil.seifert_matrix = Some(matrix(&[
        &[-1, 0, 0, 0],
        &[1, -1, 0, 0],
        &[0, 1, -1, 0],
        &[0, 0, 1, -1],
    ]));
    cinquefoil.alexander_coeffs = Some(ints(&[1, -1, 1, -1, 1]));
    cinquefoil.excluded = true;

    let mut figure_eight = KnotRecord::new("4_1");
    figure_eight.seifert_matrix = Some(matrix(&[&[1, 1], &[0, -1]]));
    figure_eight.alexander_coeffs = Some(ints(&[-1, 3, -1]));

    // genus one pretzel knot with trivial Alexander polynomial
    let mut pretzel = KnotRecord::new("P(-3,5,7)");
    pretzel.seifert_matrix = Some(matrix(&[&[1, 3], &[2, 6]]));
    pretzel.alexander_coeffs = Some(ints(&[1]));

    vec![unknot, trefoil, cinquefoil, figure_eight, pretzel]
}
