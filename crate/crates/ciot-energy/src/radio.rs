//! Physical-layer transmission parameters.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::profile::Technology;
use crate::scalar::{lit, Scalar};
use crate::tbs::TbsTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RapFormat {
    NbFmt0,
    NbFmt1,
    LtemFmt1,
}

/// One uplink/downlink transmission configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct RadioConfig<F: Scalar = f64> {
    pub technology: Technology,
    /// MCS index, 0..=10 with the bundled tables.
    pub mcs: u8,
    /// Repetitions for uplink data packets.
    pub rep_data_ul: u32,
    /// Repetitions for downlink data.
    pub rep_data_dl: u32,
    /// Repetitions for control: ACK transmissions, DCI/USS monitoring.
    pub rep_ctrl: u32,
    /// Repetitions for the random access preamble.
    pub rep_rap: u32,
    /// Allocated resource units (NB-IoT uplink).
    pub n_ru: u32,
    /// Resource-unit duration in ms, 1..=32 depending on the tone option.
    pub t_ru_ms: u32,
    /// Allocated subframes (LTE-M uplink and downlink of both technologies).
    pub n_sf: u32,
    pub header_bits_ul: u32,
    pub header_bits_dl: u32,
    pub rap_format: RapFormat,
    pub ul_tx_power_dbm: F,
    /// Subframes received per DCI occasion.
    #[serde(default = "default_dci_sf")]
    pub dci_sf: u32,
}

fn default_dci_sf() -> u32 {
    1
}

pub const SUBFRAME_MS: u32 = 1;
const VALID_RU_MS: [u32; 6] = [1, 2, 4, 8, 16, 32];

impl<F: Scalar> RadioConfig<F> {
    /// Measurement-settings defaults: 5 RUs / 5 SFs, single-tone 15 kHz
    /// uplink for NB-IoT (8 ms RU), 1 PRB uplink for LTE-M, 23 dBm.
    pub fn defaults(technology: Technology) -> Self {
        RadioConfig {
            technology,
            mcs: 10,
            rep_data_ul: 1,
            rep_data_dl: 1,
            rep_ctrl: 2,
            rep_rap: 1,
            n_ru: 5,
            t_ru_ms: 8,
            n_sf: 5,
            header_bits_ul: 40,
            header_bits_dl: 40,
            rap_format: match technology {
                Technology::Nbiot => RapFormat::NbFmt1,
                Technology::Ltem => RapFormat::LtemFmt1,
            },
            ul_tx_power_dbm: lit(23.0),
            dci_sf: 1,
        }
    }

    pub fn validate(&self, table: &TbsTable) -> Result<()> {
        if self.rep_data_ul == 0 || self.rep_data_dl == 0 || self.rep_ctrl == 0 || self.rep_rap == 0
        {
            return Err(ModelError::InvalidRepetitions);
        }
        if self.n_ru == 0 || self.n_sf == 0 {
            return Err(ModelError::UnitViolation {
                field: "n_ru/n_sf".to_string(),
                detail: "allocation counts must be >= 1".to_string(),
            });
        }
        if self.technology == Technology::Nbiot && !VALID_RU_MS.contains(&self.t_ru_ms) {
            return Err(ModelError::UnitViolation {
                field: "t_ru_ms".to_string(),
                detail: format!("must be one of {VALID_RU_MS:?}, got {}", self.t_ru_ms),
            });
        }
        if !table.contains(self.mcs, self.ul_tbs_units()) {
            return Err(ModelError::OutOfDomain {
                technology: self.technology.to_string(),
                mcs: self.mcs,
                units: self.ul_tbs_units(),
            });
        }
        match (self.technology, self.rap_format) {
            (Technology::Nbiot, RapFormat::LtemFmt1)
            | (Technology::Ltem, RapFormat::NbFmt0)
            | (Technology::Ltem, RapFormat::NbFmt1) => Err(ModelError::UnknownFormat),
            _ => Ok(()),
        }
    }

    /// Resource count indexing the TBS table for uplink transmissions.
    pub fn ul_tbs_units(&self) -> u32 {
        match self.technology {
            Technology::Nbiot => self.n_ru,
            Technology::Ltem => self.n_sf,
        }
    }

    /// Resource count indexing the TBS table for downlink receptions.
    pub fn dl_tbs_units(&self) -> u32 {
        self.n_sf
    }
}
