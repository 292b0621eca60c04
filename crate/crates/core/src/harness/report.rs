use std::fs;
use std::path::Path;

use serde_json::Value;

use super::SweepLedger;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::ParseError(format!("format {other:?}"))),
        }
    }
}

/// One row per analyzed instance under a fixed header.
pub fn ledger_csv(ledger: &SweepLedger) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &ledger.rows {
        w.serialize(row).map_err(|e| Error::InputError(format!("csv: {e}")))?;
    }
    if ledger.rows.is_empty() {
        w.write_record([
            "group", "action", "field", "f-index", "supp", "dim", "block", "lhs", "rhs_sharp", "rhs_classical",
            "sharp_eq", "classical_eq",
        ])
        .map_err(|e| Error::InputError(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InputError(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// JSON objects come out with sorted keys; output ends with a newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit_report(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::SweepRow;
    use serde_json::json;

    #[test]
    fn keys_sorted_and_csv_header() {
        let s = render_json(&json!({"zeta": 1, "alpha": {"b": 2, "a": 1}}));
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        let header = "group,action,field,f-index,supp,dim,block,lhs,rhs_sharp,rhs_classical,sharp_eq,classical_eq\n";
        assert_eq!(ledger_csv(&SweepLedger::default()).unwrap(), header);
        let mut l = SweepLedger::default();
        l.rows.push(SweepRow {
            group: "S3".into(),
            action: "G/[0, 3]".into(),
            field: "Q".into(),
            f_index: 4,
            supp: 2,
            dim: 2,
            block: 1,
            lhs: 4,
            rhs_sharp: 4,
            rhs_classical: 3,
            sharp_eq: true,
            classical_eq: false,
        });
        let csv = ledger_csv(&l).unwrap();
        assert!(csv.starts_with(header));
        assert!(csv.ends_with("S3,\"G/[0, 3]\",Q,4,2,2,1,4,4,3,true,false\n"));
    }
}
