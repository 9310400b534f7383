//! Command-line front end. `run` parses arguments, dispatches one verb and
//! returns the process exit code: 0 on success, 1 on invalid input, 2 when
//! the proof replay disagrees with the closed form.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::dimension::{dim_dual_reduced_f2, dim_dual_unreduced, dim_framed, DimValue};
use crate::json::number;
use crate::knot::{FieldSpec, InvariantPair, KnotRecord, KnotTable};
use crate::prover::{certify, ProofReport, Status};
use crate::slope::{farey_resolve, integer_fan, Slope, SlopeError};
use crate::su2::{verdict_branched, verdict_traceless, Verdict};
use crate::surgery::BundleClass;

#[derive(Debug, Parser)]
#[command(
    name = "instanton-surgery",
    version,
    about = "Surgery slopes, instanton dimensions, proof replay and SU(2) verdicts"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    C0,
    F2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BundleArg {
    #[value(name = "0")]
    Zero,
    Mu,
}

impl From<BundleArg> for BundleClass {
    fn from(b: BundleArg) -> Self {
        match b {
            BundleArg::Zero => BundleClass::Zero,
            BundleArg::Mu => BundleClass::Mu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Traceless,
    Branched,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanTheorem {
    Traceless,
    Branched,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct KnotArgs {
    /// The invariant M (nu sharp).
    #[arg(long, allow_hyphen_values = true)]
    pub nu: BigInt,
    /// The invariant R = |M| + 2h.
    #[arg(long)]
    pub r: BigInt,
    #[arg(long, value_enum, default_value = "f2")]
    pub field: FieldArg,
    /// Assume the F2 invariants are divisible by 4.
    #[arg(long)]
    pub sgmme: bool,
}

impl KnotArgs {
    fn resolve(&self) -> Result<(InvariantPair, FieldSpec), String> {
        let characteristic = match self.field {
            FieldArg::C0 => 0,
            FieldArg::F2 => 2,
        };
        let field = FieldSpec::new(characteristic, self.sgmme).map_err(|e| e.to_string())?;
        let inv = InvariantPair::new(self.nu.clone(), self.r.clone())
            .and_then(|inv| inv.validated_for(&field))
            .map_err(|e| e.to_string())?;
        Ok((inv, field))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Slope triad fan around a slope.
    Triad {
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
    },
    /// Framed surgery dimension.
    DimSurgery {
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, value_enum, default_value = "0")]
        bundle: BundleArg,
    },
    /// Dual-knot dimension, cross-checked by proof replay.
    DimDual {
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
        #[command(flatten)]
        knot: KnotArgs,
        /// Accepted for symmetry with dim-surgery; the value does not depend on it.
        #[arg(long, value_enum)]
        bundle: Option<BundleArg>,
    },
    /// Replay the exact-triangle argument with a full trace.
    Prove {
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
        #[command(flatten)]
        knot: KnotArgs,
    },
    /// SU(2) obstruction verdict for one knot and slope.
    Verdict {
        #[arg(value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        knot: String,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
        #[arg(long)]
        sgmme: bool,
        /// CSV or JSON knot table; the bundled knots when omitted.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Verdicts for every knot in a table over a list of slopes.
    Scan {
        #[arg(long)]
        table: Option<PathBuf>,
        /// `p/q,p/q,...` or `p_min..p_max/q`.
        #[arg(long, allow_hyphen_values = true)]
        slopes: String,
        #[arg(long, value_enum, default_value = "both")]
        theorem: ScanTheorem,
        #[arg(long)]
        sgmme: bool,
    },
}

/// Expands a slope list: comma-separated slopes, or `a..b/q` for every
/// `p` in `[a, b]` coprime to `q`.
pub fn parse_slope_spec(spec: &str) -> Result<Vec<Slope>, SlopeError> {
    if let Some((lo, rest)) = spec.split_once("..") {
        let (hi, q) = rest.split_once('/').unwrap_or((rest, "1"));
        let bad = || SlopeError::Parse(spec.to_string());
        let lo: BigInt = lo.trim().parse().map_err(|_| bad())?;
        let hi: BigInt = hi.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q <= BigInt::from(0) {
            return Err(bad());
        }
        let mut out = Vec::new();
        let mut p = lo;
        while p <= hi {
            if p.gcd(&q) == BigInt::from(1) {
                out.push(Slope::new(p.clone(), q.clone())?);
            }
            p += 1;
        }
        return Ok(out);
    }
    spec.split(',').map(|s| s.trim().parse()).collect()
}

/// Failure of one command.
enum Failure {
    Invalid(String),
    Mismatch(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn load_table(path: &Option<PathBuf>, err: &mut dyn Write) -> Result<KnotTable, Failure> {
    let Some(path) = path else {
        return Ok(KnotTable::bundled());
    };
    let (table, errors) = KnotTable::load(path)?;
    for e in errors {
        let _ = writeln!(err, "warning: {}: {e}", path.display());
    }
    Ok(table)
}

fn verdict_for(
    theorem: TheoremArg,
    k: &KnotRecord,
    r: &Slope,
    sgmme: bool,
) -> Result<Verdict, String> {
    let v = match theorem {
        TheoremArg::Traceless => verdict_traceless(k, r, sgmme),
        TheoremArg::Branched => verdict_branched(k, r, sgmme),
    };
    v.map_err(|e| e.to_string())
}

fn theorem_name(t: TheoremArg) -> &'static str {
    match t {
        TheoremArg::Traceless => "traceless",
        TheoremArg::Branched => "branched",
    }
}

fn failing_names(v: &Verdict) -> String {
    v.failing().map(|c| c.name).collect::<Vec<_>>().join(",")
}

fn check_report(report: &ProofReport) -> Result<(), Failure> {
    if report.status == Status::Mismatch {
        return Err(Failure::Mismatch(format!(
            "MISMATCH at {} over {} with {}: closed form {}, propagated {}",
            report.slope,
            report.field,
            report.invariants,
            report.closed_form,
            report
                .propagated
                .as_ref()
                .map_or("infeasible".to_string(), DimValue::to_string)
        )));
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let tsv = cli.format == Format::Tsv;
    match cli.command {
        Command::Triad { slope } => {
            let fan = match slope.as_integer() {
                Some(n) => integer_fan(n.clone()),
                None => farey_resolve(&slope)?,
            };
            if tsv {
                writeln!(out, "r0\tr1\tr2\tr3\tr4")?;
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    fan.r0, fan.r1, fan.r2, fan.r3, fan.r4
                )?;
            } else {
                writeln!(out, "{}", to_json(&fan))?;
            }
        }
        Command::DimSurgery {
            slope,
            knot,
            bundle,
        } => {
            let (inv, field) = knot.resolve()?;
            let value = dim_framed(&slope, &inv, &field, bundle.into())?;
            if tsv {
                writeln!(out, "slope\tfield\tbundle\tdim")?;
                writeln!(
                    out,
                    "{slope}\t{field}\t{}\t{value}",
                    BundleClass::from(bundle)
                )?;
            } else {
                writeln!(out, "{}", to_json(&value))?;
            }
        }
        Command::DimDual {
            slope,
            knot,
            bundle,
        } => {
            let (inv, field) = knot.resolve()?;
            if bundle.is_some() {
                writeln!(
                    err,
                    "note: the dual-knot dimension does not depend on --bundle"
                )?;
            }
            let value = dim_dual_unreduced(&slope, &inv, &field)?;
            let reduced = if field.is_char2() {
                Some(dim_dual_reduced_f2(&slope, &inv)?)
            } else {
                None
            };
            if tsv {
                writeln!(out, "slope\tfield\tunreduced\treduced_f2")?;
                let reduced = reduced.map_or("-".to_string(), |n| n.to_string());
                writeln!(out, "{slope}\t{field}\t{value}\t{reduced}")?;
            } else {
                writeln!(out, "{}", to_json(&value))?;
                if let Some(n) = reduced {
                    writeln!(out, "{}", json!({ "reduced_f2": number(&n) }))?;
                }
            }
            check_report(&certify(&slope, &inv, &field)?)?;
        }
        Command::Prove { slope, knot } => {
            let (inv, field) = knot.resolve()?;
            let report = certify(&slope, &inv, &field)?;
            if tsv {
                write!(out, "{}", report.trace())?;
            } else {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                )?;
            }
            check_report(&report)?;
        }
        Command::Verdict {
            theorem,
            knot,
            slope,
            sgmme,
            table,
        } => {
            let table = load_table(&table, err)?;
            let record = table
                .get(&knot)
                .ok_or_else(|| Failure::Invalid(format!("unknown knot {knot:?}")))?;
            let v = verdict_for(theorem, record, &slope, sgmme).map_err(Failure::Invalid)?;
            if tsv {
                writeln!(
                    out,
                    "knot\ttheorem\tslope\toutcome\tbranched_slope\tfailing"
                )?;
                writeln!(
                    out,
                    "{knot}\t{}\t{slope}\t{}\t{}\t{}",
                    theorem_name(theorem),
                    v.outcome,
                    v.branched_slope
                        .as_ref()
                        .map_or("-".to_string(), Slope::to_string),
                    failing_names(&v)
                )?;
            } else {
                writeln!(out, "{}", to_json(&v))?;
            }
        }
        Command::Scan {
            table,
            slopes,
            theorem,
            sgmme,
        } => {
            let table = load_table(&table, err)?;
            let slopes = parse_slope_spec(&slopes)?;
            let theorems: &[TheoremArg] = match theorem {
                ScanTheorem::Traceless => &[TheoremArg::Traceless],
                ScanTheorem::Branched => &[TheoremArg::Branched],
                ScanTheorem::Both => &[TheoremArg::Traceless, TheoremArg::Branched],
            };
            let cells: Vec<(&KnotRecord, &Slope, TheoremArg)> = table
                .records()
                .iter()
                .flat_map(|k| {
                    slopes
                        .iter()
                        .flat_map(move |s| theorems.iter().map(move |t| (k, s, *t)))
                })
                .collect();
            let results: Vec<Result<Verdict, String>> = cells
                .par_iter()
                .map(|(k, s, t)| verdict_for(*t, k, s, sgmme))
                .collect();
            if tsv {
                writeln!(
                    out,
                    "knot\ttheorem\tslope\toutcome\tbranched_slope\tfailing"
                )?;
            }
            for ((k, s, t), result) in cells.iter().zip(results) {
                let theorem = theorem_name(*t);
                match (tsv, result) {
                    (true, Ok(v)) => writeln!(
                        out,
                        "{}\t{theorem}\t{s}\t{}\t{}\t{}",
                        k.name,
                        v.outcome,
                        v.branched_slope
                            .as_ref()
                            .map_or("-".to_string(), Slope::to_string),
                        failing_names(&v)
                    )?,
                    (true, Err(e)) => writeln!(out, "{}\t{theorem}\t{s}\terror\t-\t{e}", k.name)?,
                    (false, Ok(v)) => writeln!(
                        out,
                        "{}",
                        json!({ "knot": k.name, "theorem": theorem, "slope": s, "verdict": v })
                    )?,
                    (false, Err(e)) => writeln!(
                        out,
                        "{}",
                        json!({ "knot": k.name, "theorem": theorem, "slope": s, "error": e })
                    )?,
                }
            }
        }
    }
    Ok(())
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
