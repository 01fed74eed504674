//! Catalog files: one JSON object per line, one [`CatalogRecord`] each.
//!
//! Fields, in order: `kind` (`semigroup`, `monoid`, `w_monoid`,
//! `nary_semigroup` or `in_semigroup`), `order`, `arity`, `table` (flat
//! row-major integers), `neutral`, `a`, `bitranslation` (`{"left": [...],
//! "right": [...]}`), `w_monoid` (flat table on `order + 1` elements),
//! `reductions`, `adjunctions`. Absent certificates are `null`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use polyadic_core::CatalogRecord;

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}: {source}")]
    Json { path: String, line: usize, source: serde_json::Error },
}

pub fn to_line(record: &CatalogRecord) -> String {
    serde_json::to_string(record).expect("records serialize")
}

pub fn emit(records: &[CatalogRecord], path: &Path) -> Result<(), CatalogError> {
    let io = |source| CatalogError::Io { path: path.display().to_string(), source };
    let mut out = BufWriter::new(File::create(path).map_err(io)?);
    for r in records {
        writeln!(out, "{}", to_line(r)).map_err(io)?;
    }
    out.flush().map_err(io)
}

pub fn load(path: &Path) -> Result<Vec<CatalogRecord>, CatalogError> {
    let io = |source| CatalogError::Io { path: path.display().to_string(), source };
    let reader = BufReader::new(File::open(path).map_err(io)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|source| CatalogError::Json {
            path: path.display().to_string(),
            line: i + 1,
            source,
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyadic_core::enumerate::w_monoid_records;

    fn temp(name: &str) -> std::path::PathBuf {
        std::env::temp_dir().join(format!("polyadic-catalog-{}-{}", std::process::id(), name))
    }

    #[test]
    fn empty_list_gives_empty_file() {
        let p = temp("empty");
        emit(&[], &p).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "");
        assert!(load(&p).unwrap().is_empty());
        std::fs::remove_file(p).ok();
    }

    #[test]
    fn order_four_w_monoids_roundtrip() {
        let records = w_monoid_records(4).unwrap();
        let p = temp("w4");
        emit(&records, &p).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text.lines().count(), records.len());
        assert_eq!(load(&p).unwrap(), records);
        std::fs::remove_file(p).ok();
    }

    #[test]
    fn field_order_is_fixed() {
        let line = to_line(&w_monoid_records(4).unwrap()[0]);
        let keys = ["kind", "order", "arity", "table", "neutral", "a", "bitranslation", "w_monoid", "reductions", "adjunctions"];
        let positions: Vec<usize> = keys.iter().map(|k| line.find(&format!("\"{}\":", k)).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{}", line);
        assert!(line.starts_with("{\"kind\":\"w_monoid\""));
    }

    #[test]
    fn bad_line_reports_position() {
        let p = temp("bad");
        std::fs::write(&p, "{\"kind\":\"monoid\"}\n").unwrap();
        let e = load(&p).unwrap_err().to_string();
        assert!(e.contains(":1:"), "{}", e);
        std::fs::remove_file(p).ok();
    }
}
