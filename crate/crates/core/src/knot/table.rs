//! Knot table ingestion.
//!
//! CSV header: `name,seifert_matrix,det,nu_c0,r_c0,nu_f2,r_f2,excluded`.
//! Matrices are written row by row, rows separated by `;` and entries by
//! spaces (`-1 1;0 -1`). Empty fields are absent values. A JSON array of
//! objects with the same keys is accepted too; there `seifert_matrix` may
//! also be an array of integer rows.
//!
//! Bad rows are collected with their location; good rows are kept.

use std::collections::HashSet;
use std::fmt;
use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Deserialize;

use super::{knot_determinant, FieldSpec, InvariantPair, KnotRecord, SeifertMatrix};

const COLUMNS: [&str; 8] = [
    "name",
    "seifert_matrix",
    "det",
    "nu_c0",
    "r_c0",
    "nu_f2",
    "r_f2",
    "excluded",
];

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("cannot read knot table: {0}")]
    Io(#[from] std::io::Error),
    #[error("knot table is missing columns: {}", .0.join(", "))]
    MissingColumns(Vec<String>),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed JSON knot table: {0}")]
    Json(#[from] serde_json::Error),
}

/// A rejected row. `line` is the 1-based file line for CSV input and the
/// 1-based array position for JSON input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, Default)]
pub struct IngestReport {
    pub records: Vec<KnotRecord>,
    pub errors: Vec<RowError>,
}

/// Field values of one row before validation.
#[derive(Debug, Default)]
struct RawRow {
    name: String,
    seifert_matrix: Option<SeifertMatrix>,
    det: Option<BigInt>,
    nu_c0: Option<BigInt>,
    r_c0: Option<BigInt>,
    nu_f2: Option<BigInt>,
    r_f2: Option<BigInt>,
    excluded: bool,
}

fn parse_int(column: &str, text: &str) -> Result<Option<BigInt>, String> {
    if text.is_empty() {
        return Ok(None);
    }
    text.parse()
        .map(Some)
        .map_err(|_| format!("column {column}: {text:?} is not an integer"))
}

fn parse_matrix(text: &str) -> Result<Option<SeifertMatrix>, String> {
    if text.is_empty() {
        return Ok(None);
    }
    text.split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|e| {
                    e.parse::<BigInt>()
                        .map_err(|_| format!("column seifert_matrix: bad entry {e:?}"))
                })
                .collect()
        })
        .collect::<Result<_, _>>()
        .map(Some)
}

fn parse_bool(text: &str) -> Result<bool, String> {
    match text {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(format!(
            "column excluded: expected true or false, got {other:?}"
        )),
    }
}

fn pair(
    label: &str,
    nu: Option<BigInt>,
    r: Option<BigInt>,
    field: &FieldSpec,
) -> Result<Option<InvariantPair>, String> {
    match (nu, r) {
        (None, None) => Ok(None),
        (Some(m), Some(r)) => InvariantPair::new_unchecked(m, r)
            .validated_for(field)
            .map(Some)
            .map_err(|e| format!("{label}: {e}")),
        _ => Err(format!("{label}: nu and r must be given together")),
    }
}

impl RawRow {
    fn into_record(self) -> Result<KnotRecord, String> {
        if self.name.is_empty() {
            return Err("empty knot name".into());
        }
        if let Some(d) = &self.det {
            if d.is_negative() {
                return Err(format!("column det: negative determinant {d}"));
            }
        }
        let mut record = KnotRecord::new(self.name);
        record.seifert_matrix = self.seifert_matrix;
        record.determinant = self.det;
        record.excluded = self.excluded;
        if let Some(p) = pair(
            "char 0 invariants",
            self.nu_c0,
            self.r_c0,
            &FieldSpec::char0(),
        )? {
            record.invariants.insert(0, p);
        }
        // Over F2 the pair is always divisible by 4.
        if let Some(p) = pair(
            "F2 invariants",
            self.nu_f2,
            self.r_f2,
            &FieldSpec::f2_sgmme(),
        )? {
            record.invariants.insert(2, p);
        }
        if record.seifert_matrix.is_some() || record.determinant.is_some() {
            knot_determinant(&record).map_err(|e| e.to_string())?;
        }
        Ok(record)
    }
}

fn finish(rows: Vec<(usize, Result<RawRow, String>)>) -> IngestReport {
    let mut report = IngestReport::default();
    let mut seen = HashSet::new();
    for (line, row) in rows {
        match row.and_then(RawRow::into_record) {
            Ok(record) if !seen.insert(record.name.clone()) => report.errors.push(RowError {
                line,
                message: format!("duplicate knot name {:?}", record.name),
            }),
            Ok(record) => report.records.push(record),
            Err(message) => report.errors.push(RowError { line, message }),
        }
    }
    report
}

/// Reads the CSV form of the table.
pub fn ingest_csv<R: Read>(input: R) -> Result<IngestReport, TableError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(input);
    let headers = reader.headers()?.clone();
    let missing: Vec<String> = COLUMNS
        .iter()
        .filter(|c| !headers.iter().any(|h| h == **c))
        .map(|c| c.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(TableError::MissingColumns(missing));
    }
    let index = |c: &str| headers.iter().position(|h| h == c).expect("checked above");
    let idx: Vec<usize> = COLUMNS.iter().map(|c| index(c)).collect();

    let mut rows = Vec::new();
    for result in reader.records() {
        let record = result?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if record.len() != headers.len() {
            rows.push((
                line,
                Err(format!(
                    "expected {} fields, found {}",
                    headers.len(),
                    record.len()
                )),
            ));
            continue;
        }
        let field = |i: usize| record.get(idx[i]).unwrap_or("").trim();
        let parsed = (|| {
            Ok(RawRow {
                name: field(0).to_string(),
                seifert_matrix: parse_matrix(field(1))?,
                det: parse_int("det", field(2))?,
                nu_c0: parse_int("nu_c0", field(3))?,
                r_c0: parse_int("r_c0", field(4))?,
                nu_f2: parse_int("nu_f2", field(5))?,
                r_f2: parse_int("r_f2", field(6))?,
                excluded: parse_bool(field(7))?,
            })
        })();
        rows.push((line, parsed));
    }
    Ok(finish(rows))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonMatrix {
    Text(String),
    Rows(Vec<Vec<serde_json::Number>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRow {
    name: String,
    #[serde(default)]
    seifert_matrix: Option<JsonMatrix>,
    #[serde(default)]
    det: Option<serde_json::Number>,
    #[serde(default)]
    nu_c0: Option<serde_json::Number>,
    #[serde(default)]
    r_c0: Option<serde_json::Number>,
    #[serde(default)]
    nu_f2: Option<serde_json::Number>,
    #[serde(default)]
    r_f2: Option<serde_json::Number>,
    excluded: bool,
}

fn json_int(column: &str, n: Option<serde_json::Number>) -> Result<Option<BigInt>, String> {
    n.map(|n| parse_int(column, &n.to_string()))
        .transpose()
        .map(Option::flatten)
}

impl JsonRow {
    fn into_raw(self) -> Result<RawRow, String> {
        let seifert_matrix = match self.seifert_matrix {
            None => None,
            Some(JsonMatrix::Text(t)) => parse_matrix(t.trim())?,
            Some(JsonMatrix::Rows(rows)) => Some(
                rows.into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|e| {
                                json_int("seifert_matrix", Some(e)).map(|v| v.unwrap_or_default())
                            })
                            .collect()
                    })
                    .collect::<Result<_, _>>()?,
            ),
        };
        Ok(RawRow {
            name: self.name.trim().to_string(),
            seifert_matrix,
            det: json_int("det", self.det)?,
            nu_c0: json_int("nu_c0", self.nu_c0)?,
            r_c0: json_int("r_c0", self.r_c0)?,
            nu_f2: json_int("nu_f2", self.nu_f2)?,
            r_f2: json_int("r_f2", self.r_f2)?,
            excluded: self.excluded,
        })
    }
}

/// Reads the JSON form of the table: an array of row objects.
pub fn ingest_json<R: Read>(input: R) -> Result<IngestReport, TableError> {
    let values: Vec<serde_json::Value> = serde_json::from_reader(input)?;
    let rows = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let row = serde_json::from_value::<JsonRow>(v)
                .map_err(|e| e.to_string())
                .and_then(JsonRow::into_raw);
            (i + 1, row)
        })
        .collect();
    Ok(finish(rows))
}

/// Reads either form; input starting with `[` is taken as JSON.
pub fn ingest_table<R: Read>(mut input: R) -> Result<IngestReport, TableError> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    if text.trim_start().starts_with('[') {
        ingest_json(text.as_bytes())
    } else {
        ingest_csv(text.as_bytes())
    }
}

/// Validated records with lookup by name.
#[derive(Debug, Clone, Default)]
pub struct KnotTable {
    records: Vec<KnotRecord>,
}

impl KnotTable {
    pub fn new(records: Vec<KnotRecord>) -> Self {
        KnotTable { records }
    }

    pub fn bundled() -> Self {
        KnotTable::new(super::bundled_knots())
    }

    /// Loads a table file, returning the rejected rows alongside it.
    pub fn load(path: impl AsRef<Path>) -> Result<(Self, Vec<RowError>), TableError> {
        let file = std::fs::File::open(path)?;
        let report = ingest_table(file)?;
        Ok((KnotTable::new(report.records), report.errors))
    }

    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.records.iter().find(|k| k.name == name)
    }

    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "name,seifert_matrix,det,nu_c0,r_c0,nu_f2,r_f2,excluded\n";

    fn csv(body: &str) -> IngestReport {
        ingest_csv(format!("{HEADER}{body}").as_bytes()).unwrap()
    }

    #[test]
    fn unknot_row() {
        let report = csv("unknot,,1,0,0,0,4,true\n");
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        let k = &report.records[0];
        assert_eq!(k.name, "unknot");
        assert_eq!(k.determinant, Some(BigInt::from(1)));
        assert_eq!(k.invariants[&0], InvariantPair::new(0, 0).unwrap());
        assert_eq!(k.invariants[&2], InvariantPair::new(0, 4).unwrap());
        assert!(k.excluded);
    }

    #[test]
    fn rejects_bad_pairs_and_keeps_good_rows() {
        let report = csv(concat!(
            "a,,1,3,1,,,false\n",
            "b,,1,,,2,2,false\n",
            "trefoil,-1 1;0 -1,3,,,,,true\n",
            "c,,1,1,,,,false\n",
        ));
        assert_eq!(report.records.len(), 1);
        assert_eq!(report.records[0].name, "trefoil");
        let lines: Vec<usize> = report.errors.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![2, 3, 5]);
        assert!(report.errors[0].message.contains("R = |M| + 2h"));
        assert!(report.errors[1].message.contains("divisible by 4"));
        assert!(report.errors[2].message.contains("together"));
    }

    #[test]
    fn rejects_inconsistent_and_malformed_rows() {
        let report = csv(concat!(
            "x,-1 1;0 -1,5,,,,,false\n",
            "y,1 2;3,,,,,,false\n",
            "z,,,,,,,maybe\n",
            "w,,abc,,,,,false\n",
            "x2,,1,,,,,false\n",
            "x2,,1,,,,,false\n",
            "short,1\n",
        ));
        assert_eq!(report.records.len(), 1);
        assert_eq!(report.errors.len(), 6);
        assert!(report.errors[0].message.contains("disagree"));
        assert!(report.errors[1].message.contains("not square"));
        assert!(report.errors[4].message.contains("duplicate"));
        assert!(report.errors[5].message.contains("expected 8 fields"));
    }

    #[test]
    fn missing_columns() {
        let err = ingest_csv("name,det\nu,1\n".as_bytes()).unwrap_err();
        match err {
            TableError::MissingColumns(cols) => assert!(cols.contains(&"excluded".to_string())),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn json_mirror() {
        let text = r#"[
            {"name": "trefoil", "seifert_matrix": [[-1, 1], [0, -1]], "det": 3, "excluded": true},
            {"name": "fig8", "seifert_matrix": "1 1;0 -1", "nu_c0": 0, "r_c0": 2, "excluded": false},
            {"name": "bad", "nu_f2": 2, "r_f2": 2, "excluded": false},
            {"name": "big", "det": 123456789012345678901234567890, "excluded": false}
        ]"#;
        let report = ingest_table(text.as_bytes()).unwrap();
        let names: Vec<&str> = report.records.iter().map(|k| k.name.as_str()).collect();
        assert_eq!(names, ["trefoil", "fig8", "big"]);
        assert_eq!(report.errors.len(), 1);
        assert_eq!(report.errors[0].line, 3);
        assert_eq!(
            knot_determinant(&report.records[2]).unwrap(),
            "123456789012345678901234567890".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn csv_and_json_agree() {
        let csv_report = csv("k,-1 1;0 -1,3,1,3,0,4,false\n");
        let json_report = ingest_json(
            r#"[{"name":"k","seifert_matrix":"-1 1;0 -1","det":3,"nu_c0":1,"r_c0":3,"nu_f2":0,"r_f2":4,"excluded":false}]"#
                .as_bytes(),
        )
        .unwrap();
        assert_eq!(csv_report.records, json_report.records);
    }
}
