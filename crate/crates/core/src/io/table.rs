//! Eigenvalue tables from external sources.

use serde::{Deserialize, Serialize};

use super::json::{from_slice_with_path, Num};
use crate::error::{Error, Result};
use crate::satake::{is_prime_power, LocalEigenvalueData};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IngestMode {
    /// Every check is an error.
    Strict,
    /// A non-prime-power `q` becomes a warning.
    Trusted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub l: u64,
    pub q: u64,
    pub chi: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub label: String,
    pub n: usize,
    pub entries: Vec<TableEntry>,
    #[serde(default)]
    pub ramified_set: Vec<u64>,
    #[serde(default)]
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueTable {
    pub label: String,
    pub n: usize,
    pub entries: Vec<LocalEigenvalueData>,
    pub ramified_set: Vec<u64>,
    pub source: String,
    pub warnings: Vec<String>,
}

pub fn parse_eigenvalue_table(bytes: &[u8], mode: IngestMode) -> Result<EigenvalueTable> {
    let file: TableFile = from_slice_with_path(bytes)?;
    let mut warnings = Vec::new();
    let mut entries = Vec::new();
    let mut last: Option<u64> = None;
    for (i, e) in file.entries.iter().enumerate() {
        let path = format!("entries[{i}]");
        if e.chi.len() != file.n {
            return Err(Error::Schema { path: format!("{path}.chi"), message: format!("{} values, expected n = {}", e.chi.len(), file.n) });
        }
        if let Some(prev) = last {
            if e.l == prev {
                return Err(Error::Schema { path: format!("{path}.l"), message: format!("duplicate tag {}", e.l) });
            }
            if e.l < prev {
                return Err(Error::Schema { path: format!("{path}.l"), message: "tags must be strictly increasing".into() });
            }
        }
        last = Some(e.l);
        if !is_prime_power(e.q) {
            let msg = format!("q = {} at tag {} is not a prime power", e.q, e.l);
            match mode {
                IngestMode::Strict => return Err(Error::Schema { path: format!("{path}.q"), message: msg }),
                IngestMode::Trusted => warnings.push(msg),
            }
        }
        entries.push(LocalEigenvalueData::new(e.l, e.q, e.chi.iter().map(|c| c.0.clone()).collect()));
    }
    Ok(EigenvalueTable {
        label: file.label,
        n: file.n,
        entries,
        ramified_set: file.ramified_set,
        source: file.source,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    #[test]
    fn small_table() {
        let t = parse_eigenvalue_table(
            br#"{"label":"delta","n":2,"entries":[{"l":2,"q":2,"chi":["-24","1024"]},{"l":3,"q":3,"chi":[252,"59049"]}],"ramified_set":[],"source":"test"}"#,
            IngestMode::Strict,
        )
        .unwrap();
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.entries[1].chi[0], BigRational::from_integer(252.into()));
    }

    #[test]
    fn empty_table_is_valid() {
        let t = parse_eigenvalue_table(br#"{"label":"e","n":2,"entries":[]}"#, IngestMode::Strict).unwrap();
        assert!(t.entries.is_empty());
    }

    #[test]
    fn duplicate_tag_and_wrong_length() {
        let dup = br#"{"label":"x","n":1,"entries":[{"l":2,"q":2,"chi":[1]},{"l":2,"q":2,"chi":[1]}]}"#;
        assert!(parse_eigenvalue_table(dup, IngestMode::Trusted).is_err());
        let short = br#"{"label":"x","n":2,"entries":[{"l":2,"q":2,"chi":[1]}]}"#;
        assert!(parse_eigenvalue_table(short, IngestMode::Trusted).is_err());
    }

    #[test]
    fn prime_power_check_depends_on_mode() {
        let text = br#"{"label":"x","n":1,"entries":[{"l":2,"q":6,"chi":[1]}]}"#;
        assert!(parse_eigenvalue_table(text, IngestMode::Strict).is_err());
        let t = parse_eigenvalue_table(text, IngestMode::Trusted).unwrap();
        assert_eq!(t.warnings.len(), 1);
    }
}
