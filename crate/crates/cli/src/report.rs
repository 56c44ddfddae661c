//! Report documents and their text, CSV and JSON renderings.
//!
//! JSON keys: `command`, `parameters`, `records`, `summary`, `tool_version`.
//! Each record carries a `kind` tag (`check`, `threshold`, `table_row`,
//! `thirty_property`) followed by that record's fields.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use primeineq::{CheckRecord, InequalityId, Method, Outcome, Params, Relation, TableRow, ThresholdReport};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv field {field}: {message}")]
    Field { field: &'static str, message: String },
    #[error("unrecognized csv header {0:?}")]
    Header(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// Listing of integers with the 30-property up to `limit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThirtyRecord {
    pub limit: u64,
    pub members: Vec<u64>,
}

impl ThirtyRecord {
    /// Holds when no member exceeds 30.
    pub fn outcome(&self) -> Outcome {
        Outcome::from_bool(self.members.iter().all(|&n| n <= 30))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Check(CheckRecord),
    Threshold(ThresholdReport),
    TableRow(TableRow),
    ThirtyProperty(ThirtyRecord),
}

impl Record {
    pub fn outcome(&self) -> Outcome {
        match self {
            Record::Check(r) => r.verdict,
            Record::Threshold(r) => r.outcome(),
            Record::TableRow(r) => Outcome::from_bool(r.chain_ok),
            Record::ThirtyProperty(r) => r.outcome(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub holds: u64,
    pub fails: u64,
    pub undecided: u64,
}

impl Summary {
    pub fn tally(records: &[Record]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.outcome() {
                Outcome::Holds => s.holds += 1,
                Outcome::Fails => s.fails += 1,
                Outcome::Undecided => s.undecided += 1,
            }
        }
        s
    }

    /// 0 when everything holds, 1 on any failure, 2 when only undecided
    /// records stand in the way.
    pub fn exit_code(&self) -> i32 {
        if self.fails > 0 {
            1
        } else if self.undecided > 0 {
            2
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub tool_version: String,
}

impl ReportDocument {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, records: Vec<Record>) -> Self {
        ReportDocument {
            command: command.to_owned(),
            parameters,
            summary: Summary::tally(&records),
            records,
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }
}

pub fn format_report(doc: &ReportDocument, format: Format) -> Vec<u8> {
    match format {
        Format::Text => render_text(doc).into_bytes(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => render_csv(&doc.records),
    }
}

pub fn parse_json(bytes: &[u8]) -> Result<ReportDocument, ReportError> {
    Ok(serde_json::from_slice(bytes)?)
}

fn join_params(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

fn join_list(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

fn opt_string<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn render_text(doc: &ReportDocument) -> String {
    let mut s = String::new();
    let params = doc
        .parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(s, "command: {}", doc.command);
    let _ = writeln!(s, "parameters: {params}");
    let _ = writeln!(s, "records:");
    for r in &doc.records {
        let line = match r {
            Record::Check(c) => {
                let relation = c.relation.map(|r| format!(", lhs {} rhs", r.as_str())).unwrap_or_default();
                let bits = if c.method == Method::ExactInteger {
                    format!(", lhs_bits {}, rhs_bits {}", c.lhs_bits, c.rhs_bits)
                } else {
                    String::new()
                };
                format!(
                    "{} {}: {} ({}, {} bits{bits}{relation})",
                    c.id,
                    join_params(&c.params).replace(';', " "),
                    c.verdict,
                    c.method,
                    c.precision_used
                )
            }
            Record::Threshold(t) => format!(
                "{} {}[{}..{}]: failures [{}], undecided [{}], stable_start {}",
                t.id,
                if t.fixed_params.is_empty() {
                    String::new()
                } else {
                    format!("{} ", join_params(&t.fixed_params).replace(';', " "))
                },
                t.scan_from,
                t.scan_to,
                join_list(&t.failures).replace(';', ", "),
                join_list(&t.undecided).replace(';', ", "),
                t.stable_start.map_or_else(|| "none".to_owned(), |v| v.to_string()),
            ),
            Record::TableRow(t) => format!(
                "r={} {} x ln {} >= {} > {} = {} x 0.7 > {} ln 2: {}{}",
                t.r,
                t.multiplier,
                t.prime,
                t.certified_lower,
                t.rhs_07,
                t.prime,
                t.prime,
                if t.chain_ok { "ok" } else { "BROKEN" },
                t.discrepancy.as_deref().map(|d| format!(" [{d}]")).unwrap_or_default(),
            ),
            Record::ThirtyProperty(t) => format!(
                "30-property up to {}: [{}]",
                t.limit,
                join_list(&t.members).replace(';', ", ")
            ),
        };
        let _ = writeln!(s, "  {line}");
    }
    let _ = writeln!(
        s,
        "summary: holds={} fails={} undecided={}",
        doc.summary.holds, doc.summary.fails, doc.summary.undecided
    );
    let _ = writeln!(s, "tool_version: {}", doc.tool_version);
    s
}

const CHECK_HEADER: [&str; 8] = [
    "id",
    "params",
    "verdict",
    "method",
    "precision_used",
    "lhs_bits",
    "rhs_bits",
    "relation",
];
const THRESHOLD_HEADER: [&str; 8] = [
    "id",
    "fixed_params",
    "scan_from",
    "scan_to",
    "failures",
    "undecided",
    "stable_start",
    "verdict",
];
const TABLE_HEADER: [&str; 9] = [
    "r",
    "multiplier",
    "prime",
    "certified_lower",
    "rhs_07",
    "chain_ok",
    "reference_multiplier",
    "reference_lower",
    "discrepancy",
];
const THIRTY_HEADER: [&str; 3] = ["limit", "members", "verdict"];

fn csv_row(r: &Record) -> Vec<String> {
    match r {
        Record::Check(c) => vec![
            c.id.to_string(),
            join_params(&c.params),
            c.verdict.to_string(),
            c.method.to_string(),
            c.precision_used.to_string(),
            c.lhs_bits.to_string(),
            c.rhs_bits.to_string(),
            opt_string(c.relation.map(Relation::as_str)),
        ],
        Record::Threshold(t) => vec![
            t.id.to_string(),
            join_params(&t.fixed_params),
            t.scan_from.to_string(),
            t.scan_to.to_string(),
            join_list(&t.failures),
            join_list(&t.undecided),
            opt_string(t.stable_start),
            t.outcome().to_string(),
        ],
        Record::TableRow(t) => vec![
            t.r.to_string(),
            t.multiplier.to_string(),
            t.prime.to_string(),
            t.certified_lower.clone(),
            t.rhs_07.clone(),
            t.chain_ok.to_string(),
            t.reference_multiplier.to_string(),
            t.reference_lower.clone(),
            t.discrepancy.clone().unwrap_or_default(),
        ],
        Record::ThirtyProperty(t) => vec![
            t.limit.to_string(),
            join_list(&t.members),
            t.outcome().to_string(),
        ],
    }
}

fn header_for(r: Option<&Record>) -> &'static [&'static str] {
    match r {
        None | Some(Record::Check(_)) => &CHECK_HEADER,
        Some(Record::Threshold(_)) => &THRESHOLD_HEADER,
        Some(Record::TableRow(_)) => &TABLE_HEADER,
        Some(Record::ThirtyProperty(_)) => &THIRTY_HEADER,
    }
}

fn render_csv(records: &[Record]) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header_for(records.first())).expect("in-memory write");
    for r in records {
        w.write_record(csv_row(r)).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn field<T: FromStr>(row: &csv::StringRecord, i: usize, name: &'static str) -> Result<T, ReportError>
where
    T::Err: std::fmt::Display,
{
    row.get(i)
        .ok_or_else(|| ReportError::Field {
            field: name,
            message: "missing".into(),
        })?
        .parse()
        .map_err(|e: T::Err| ReportError::Field {
            field: name,
            message: e.to_string(),
        })
}

fn text(row: &csv::StringRecord, i: usize) -> String {
    row.get(i).unwrap_or_default().to_owned()
}

fn opt_field<T: FromStr>(row: &csv::StringRecord, i: usize, name: &'static str) -> Result<Option<T>, ReportError>
where
    T::Err: std::fmt::Display,
{
    if row.get(i).unwrap_or_default().is_empty() {
        Ok(None)
    } else {
        field(row, i, name).map(Some)
    }
}

fn parse_params(s: &str) -> Result<Params, ReportError> {
    s.split(';')
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| ReportError::Field {
                field: "params",
                message: format!("expected key=value, got {p:?}"),
            })?;
            let v = v.parse().map_err(|e: std::num::ParseIntError| ReportError::Field {
                field: "params",
                message: e.to_string(),
            })?;
            Ok((k.to_owned(), v))
        })
        .collect()
}

fn parse_list(s: &str, name: &'static str) -> Result<Vec<u64>, ReportError> {
    s.split(';')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse().map_err(|e: std::num::ParseIntError| ReportError::Field {
                field: name,
                message: e.to_string(),
            })
        })
        .collect()
}

/// Parse records back from the CSV rendering.
pub fn records_from_csv(bytes: &[u8]) -> Result<Vec<Record>, ReportError> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(bytes);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    let is = |h: &[&str]| header.iter().map(String::as_str).eq(h.iter().copied());
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let rec = if is(&CHECK_HEADER) {
            Record::Check(CheckRecord {
                id: field::<InequalityId>(&row, 0, "id")?,
                params: parse_params(&text(&row, 1))?,
                verdict: field(&row, 2, "verdict")?,
                method: field(&row, 3, "method")?,
                precision_used: field(&row, 4, "precision_used")?,
                lhs_bits: field(&row, 5, "lhs_bits")?,
                rhs_bits: field(&row, 6, "rhs_bits")?,
                relation: opt_field::<Relation>(&row, 7, "relation")?,
            })
        } else if is(&THRESHOLD_HEADER) {
            Record::Threshold(ThresholdReport {
                id: field(&row, 0, "id")?,
                fixed_params: parse_params(&text(&row, 1))?,
                scan_from: field(&row, 2, "scan_from")?,
                scan_to: field(&row, 3, "scan_to")?,
                failures: parse_list(&text(&row, 4), "failures")?,
                undecided: parse_list(&text(&row, 5), "undecided")?,
                stable_start: opt_field(&row, 6, "stable_start")?,
            })
        } else if is(&TABLE_HEADER) {
            Record::TableRow(TableRow {
                r: field(&row, 0, "r")?,
                multiplier: field(&row, 1, "multiplier")?,
                prime: field(&row, 2, "prime")?,
                certified_lower: text(&row, 3),
                rhs_07: text(&row, 4),
                chain_ok: field(&row, 5, "chain_ok")?,
                reference_multiplier: field(&row, 6, "reference_multiplier")?,
                reference_lower: text(&row, 7),
                discrepancy: opt_field(&row, 8, "discrepancy")?,
            })
        } else if is(&THIRTY_HEADER) {
            Record::ThirtyProperty(ThirtyRecord {
                limit: field(&row, 0, "limit")?,
                members: parse_list(&text(&row, 1), "members")?,
            })
        } else {
            return Err(ReportError::Header(header));
        };
        out.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(verdict: Outcome) -> Record {
        Record::Check(CheckRecord {
            id: InequalityId::Theorem1,
            params: [("r".to_owned(), 20)].into_iter().collect(),
            verdict,
            method: Method::CertifiedInterval,
            precision_used: 64,
            lhs_bits: 0,
            rhs_bits: 0,
            relation: Some(Relation::Greater),
        })
    }

    #[test]
    fn empty_document() {
        let doc = ReportDocument::new("verify", BTreeMap::new(), vec![]);
        assert_eq!(doc.summary, Summary::default());
        assert_eq!(doc.summary.exit_code(), 0);
        let json = format_report(&doc, Format::Json);
        assert_eq!(parse_json(&json).unwrap(), doc);
        let csv = format_report(&doc, Format::Csv);
        assert_eq!(String::from_utf8(csv.clone()).unwrap(), format!("{}\n", CHECK_HEADER.join(",")));
        assert!(records_from_csv(&csv).unwrap().is_empty());
        let text = String::from_utf8(format_report(&doc, Format::Text)).unwrap();
        assert!(text.contains("summary: holds=0 fails=0 undecided=0"));
    }

    #[test]
    fn exit_codes_follow_summary() {
        let doc = |v: Vec<Outcome>| ReportDocument::new("x", BTreeMap::new(), v.into_iter().map(check).collect());
        assert_eq!(doc(vec![Outcome::Holds]).summary.exit_code(), 0);
        assert_eq!(doc(vec![Outcome::Holds, Outcome::Fails, Outcome::Undecided]).summary.exit_code(), 1);
        assert_eq!(doc(vec![Outcome::Holds, Outcome::Undecided]).summary.exit_code(), 2);
    }

    #[test]
    fn json_keys_are_stable() {
        let doc = ReportDocument::new("verify", BTreeMap::new(), vec![check(Outcome::Holds)]);
        let v: serde_json::Value = serde_json::from_slice(&format_report(&doc, Format::Json)).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let mut expect = vec!["command", "parameters", "records", "summary", "tool_version"];
        expect.sort();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort();
        assert_eq!(keys_sorted, expect);
        assert_eq!(v["records"][0]["kind"], "check");
        assert_eq!(v["records"][0]["verdict"], "holds");
        assert_eq!(v["records"][0]["method"], "certified-interval");
    }

    #[test]
    fn csv_rejects_unknown_header() {
        assert!(matches!(records_from_csv(b"a,b\n1,2\n"), Err(ReportError::Header(_))));
    }

    #[test]
    fn csv_quotes_fields_with_commas() {
        let row = Record::TableRow(TableRow {
            r: 43,
            multiplier: 29,
            prime: 193,
            certified_lower: "152.6".into(),
            rhs_07: "135.1".into(),
            chain_ok: true,
            reference_multiplier: 30,
            reference_lower: "152.6".into(),
            discrepancy: Some("a, b".into()),
        });
        let bytes = render_csv(std::slice::from_ref(&row));
        assert_eq!(records_from_csv(&bytes).unwrap(), vec![row]);
    }
}
