//! Transport block size tables, transcribed from 3GPP TS 36.213.
//!
//! One table per technology: the NPUSCH table keyed by resource-unit count
//! for NB-IoT, and the LTE table (1..6 resource columns, MCS 0..10) for
//! LTE-M. Tables ship as CSV with a SHA-256 manifest and are checked for
//! row/column monotonicity at load.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::error::{ModelError, Result};
use crate::profile::Technology;

#[derive(Debug, Clone)]
pub struct TbsTable {
    pub technology: Technology,
    entries: BTreeMap<(u8, u32), u32>,
}

impl TbsTable {
    /// Parse a `mcs,units,tbs_bits` CSV document.
    pub fn from_csv(technology: Technology, document: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(document.as_bytes());
        let mut entries = BTreeMap::new();
        for record in reader.deserialize() {
            let (mcs, units, tbs_bits): (u8, u32, u32) = record?;
            if tbs_bits == 0 {
                return Err(ModelError::UnitViolation {
                    field: "tbs_bits".to_string(),
                    detail: format!("TBS must be strictly positive at ({mcs}, {units})"),
                });
            }
            entries.insert((mcs, units), tbs_bits);
        }
        let table = TbsTable {
            technology,
            entries,
        };
        table.check_monotone()?;
        Ok(table)
    }

    /// Same as [`TbsTable::from_csv`] but verifies the document hash against
    /// a `sha256  filename` manifest line first.
    pub fn from_csv_checked(
        technology: Technology,
        document: &str,
        manifest: &str,
        file_name: &str,
    ) -> Result<Self> {
        let digest = hex_digest(document);
        let listed = manifest.lines().find_map(|line| {
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next()) {
                (Some(hash), Some(name)) if name == file_name => Some(hash.to_string()),
                _ => None,
            }
        });
        match listed {
            Some(hash) if hash == digest => Self::from_csv(technology, document),
            _ => Err(ModelError::ChecksumMismatch {
                file: file_name.to_string(),
            }),
        }
    }

    fn check_monotone(&self) -> Result<()> {
        for (&(mcs, units), &tbs) in &self.entries {
            if let Some(&next) = self.entries.get(&(mcs + 1, units)) {
                if next < tbs {
                    return Err(ModelError::TableNotMonotone {
                        mcs: mcs + 1,
                        units,
                    });
                }
            }
            // next column at the same MCS (columns are not contiguous)
            if let Some((&(m, u), &next)) = self
                .entries
                .range((mcs, units + 1)..=(mcs, u32::MAX))
                .next()
            {
                debug_assert_eq!(m, mcs);
                if next < tbs {
                    return Err(ModelError::TableNotMonotone { mcs, units: u });
                }
            }
        }
        Ok(())
    }

    pub fn lookup(&self, mcs: u8, units: u32) -> Result<u32> {
        self.entries
            .get(&(mcs, units))
            .copied()
            .ok_or(ModelError::OutOfDomain {
                technology: self.technology.to_string(),
                mcs,
                units,
            })
    }

    pub fn contains(&self, mcs: u8, units: u32) -> bool {
        self.entries.contains_key(&(mcs, units))
    }

    pub fn max_mcs(&self) -> u8 {
        self.entries.keys().map(|&(m, _)| m).max().unwrap_or(0)
    }
}

fn hex_digest(document: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(document.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use crate::data;
    use crate::error::ModelError;
    use crate::profile::Technology;

    use super::TbsTable;

    #[test]
    fn npusch_lowest_entry() {
        let table = data::tbs_table(Technology::Nbiot).unwrap();
        assert_eq!(table.lookup(0, 1).unwrap(), 16);
    }

    #[test]
    fn lookup_is_deterministic() {
        let table = data::tbs_table(Technology::Nbiot).unwrap();
        assert_eq!(table.lookup(5, 4).unwrap(), table.lookup(5, 4).unwrap());
    }

    #[test]
    fn higher_mcs_carries_more_bits() {
        let table = data::tbs_table(Technology::Nbiot).unwrap();
        assert!(table.lookup(10, 5).unwrap() > table.lookup(2, 5).unwrap());
    }

    #[test]
    fn out_of_domain_is_rejected() {
        let table = data::tbs_table(Technology::Ltem).unwrap();
        assert!(matches!(
            table.lookup(11, 1),
            Err(ModelError::OutOfDomain { .. })
        ));
        assert!(table.lookup(0, 7).is_err());
    }

    #[test]
    fn monotonicity_holds_over_full_tables() {
        // loading runs the check; a broken table must fail
        data::tbs_table(Technology::Nbiot).unwrap();
        data::tbs_table(Technology::Ltem).unwrap();
        let broken = "mcs,units,tbs_bits\n0,1,16\n0,2,8\n";
        assert!(matches!(
            TbsTable::from_csv(Technology::Nbiot, broken),
            Err(ModelError::TableNotMonotone { .. })
        ));
    }

    #[test]
    fn checksum_mismatch_is_rejected() {
        let err = TbsTable::from_csv_checked(
            Technology::Nbiot,
            "mcs,units,tbs_bits\n0,1,16\n",
            "deadbeef  nbiot.csv",
            "nbiot.csv",
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::ChecksumMismatch { .. }));
    }
}
