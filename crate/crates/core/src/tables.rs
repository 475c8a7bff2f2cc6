//! Reference conjugation tables for `Q` and `Q′`, shipped as versioned data
//! so that disagreements are reported against a fixed artifact.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::cartan::SignedGenerator;
use crate::error::{Error, Result};
use crate::iso::GeneratorIndex;

const RAW: &str = include_str!("../data/reference_tables.json");

#[derive(Debug, Clone, Deserialize)]
pub struct ReferenceTables {
    pub version: u32,
    /// The conjugation direction the entries describe.
    pub action: String,
    pub tables: BTreeMap<String, BTreeMap<String, SignedGenerator>>,
}

pub fn reference_tables() -> Result<ReferenceTables> {
    Ok(serde_json::from_str(RAW)?)
}

/// Table `name` (`"Q"` or `"Qprime"`) keyed by generator.
pub fn reference_table(name: &str) -> Result<BTreeMap<GeneratorIndex, SignedGenerator>> {
    let all = reference_tables()?;
    let raw = all
        .tables
        .get(name)
        .ok_or_else(|| Error::Parse(format!("no reference table named {name:?}")))?;
    let mut out = BTreeMap::new();
    for (key, &v) in raw {
        let d = key.as_bytes();
        if d.len() != 2 || !d.iter().all(u8::is_ascii_digit) {
            return Err(Error::Parse(format!("bad table key {key:?}")));
        }
        out.insert(GeneratorIndex::new((d[0] - b'0') as usize, (d[1] - b'0') as usize)?, v);
    }
    if out.len() != 15 {
        return Err(Error::Parse(format!("table {name:?} has {} entries", out.len())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads() {
        let t = reference_tables().unwrap();
        assert_eq!(t.version, 1);
        assert_eq!(reference_table("Q").unwrap().len(), 15);
        assert_eq!(reference_table("Qprime").unwrap().len(), 15);
        assert!(reference_table("R").is_err());
    }
}
