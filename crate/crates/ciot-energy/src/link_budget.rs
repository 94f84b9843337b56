//! Link budget: received SNR from coupling loss, chase-combining repetition
//! gain, and the three named coverage scenarios.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::profile::Technology;
use crate::radio::RadioConfig;
use crate::scalar::{lit, Scalar};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct LinkBudget<F: Scalar = f64> {
    pub tx_power_dbm: F,
    pub coupling_loss_db: F,
    pub noise_figure_db: F,
    pub thermal_noise_dbm_hz: F,
    pub bandwidth_hz: F,
}

impl<F: Scalar> LinkBudget<F> {
    /// 23 dBm, 5 dB noise figure, -174 dBm/Hz thermal noise; bandwidth is
    /// a single 15 kHz subcarrier for NB-IoT and one PRB for LTE-M.
    pub fn for_technology(technology: Technology, coupling_loss_db: F) -> Self {
        LinkBudget {
            tx_power_dbm: lit(23.0),
            coupling_loss_db,
            noise_figure_db: lit(5.0),
            thermal_noise_dbm_hz: lit(-174.0),
            bandwidth_hz: match technology {
                Technology::Nbiot => lit(15_000.0),
                Technology::Ltem => lit(180_000.0),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bandwidth_hz <= F::zero() {
            return Err(ModelError::UnitViolation {
                field: "bandwidth_hz".to_string(),
                detail: "must be > 0".to_string(),
            });
        }
        if self.coupling_loss_db <= F::zero() {
            return Err(ModelError::UnitViolation {
                field: "coupling_loss_db".to_string(),
                detail: "must be > 0".to_string(),
            });
        }
        Ok(())
    }
}

/// SNR at the receiver without repetitions, in dB.
pub fn rx_snr<F: Scalar>(budget: &LinkBudget<F>) -> Result<F> {
    budget.validate()?;
    let ten = lit::<F>(10.0);
    let noise_dbm =
        budget.thermal_noise_dbm_hz + ten * budget.bandwidth_hz.log10() + budget.noise_figure_db;
    Ok(budget.tx_power_dbm - budget.coupling_loss_db - noise_dbm)
}

/// Effective SNR after chase combining of `repetitions` blind repetitions.
pub fn combined_snr<F: Scalar>(snr_db: F, repetitions: u32) -> Result<F> {
    if repetitions == 0 {
        return Err(ModelError::InvalidRepetitions);
    }
    Ok(snr_db + lit::<F>(10.0) * F::from_count(repetitions as u64).log10())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioName {
    Good,
    Bad,
    Extreme,
}

impl ScenarioName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioName::Good => "good",
            ScenarioName::Bad => "bad",
            ScenarioName::Extreme => "extreme",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "good" => Ok(ScenarioName::Good),
            "bad" => Ok(ScenarioName::Bad),
            "extreme" => Ok(ScenarioName::Extreme),
            other => Err(ModelError::UnknownScenario(other.to_string())),
        }
    }
}

impl std::fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScenarioAssignment {
    pub mcs: u8,
    pub repetitions: u32,
}

/// One named coverage scenario with its per-technology configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverageScenario {
    pub name: ScenarioName,
    pub mcl_db: f64,
    pub nbiot: Option<ScenarioAssignment>,
    pub ltem: Option<ScenarioAssignment>,
}

impl CoverageScenario {
    pub fn assignment(&self, technology: Technology) -> Option<ScenarioAssignment> {
        match technology {
            Technology::Nbiot => self.nbiot,
            Technology::Ltem => self.ltem,
        }
    }
}

pub const MAX_REPETITIONS: u32 = 32;

/// Build the radio configuration for a scenario: the tabulated
/// (MCS, repetitions) pair over the measurement-settings defaults.
/// Control repetitions are twice the data repetitions, capped at 32.
pub fn scenario_radio_config<F: Scalar>(
    scenario: &CoverageScenario,
    technology: Technology,
) -> Result<RadioConfig<F>> {
    let assignment = scenario
        .assignment(technology)
        .ok_or_else(|| ModelError::Unreachable {
            scenario: scenario.name.to_string(),
            technology: technology.to_string(),
        })?;
    let mut radio = RadioConfig::defaults(technology);
    radio.mcs = assignment.mcs;
    radio.rep_data_ul = assignment.repetitions.min(MAX_REPETITIONS);
    radio.rep_data_dl = assignment.repetitions.min(MAX_REPETITIONS);
    radio.rep_ctrl = (assignment.repetitions * 2).min(MAX_REPETITIONS);
    radio.rep_rap = assignment.repetitions.min(MAX_REPETITIONS);
    Ok(radio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    fn snr(tech: Technology, mcl: f64) -> f64 {
        rx_snr(&LinkBudget::for_technology(tech, mcl)).unwrap()
    }

    #[test]
    fn snr_drops_db_for_db_of_coupling_loss() {
        let a = snr(Technology::Nbiot, 140.0);
        let b = snr(Technology::Nbiot, 150.0);
        assert!((a - b - 10.0).abs() < 1e-12);
    }

    #[test]
    fn combining_gain_is_log_additive() {
        let base = 0.24f64;
        let ab = combined_snr(base, 8 * 4).unwrap();
        let gain_a = combined_snr(base, 8).unwrap() - base;
        let gain_b = combined_snr(base, 4).unwrap() - base;
        assert!((ab - (base + gain_a + gain_b)).abs() < 1e-12);
    }

    #[test]
    fn single_repetition_is_identity() {
        assert_eq!(combined_snr(3.5, 1).unwrap(), 3.5);
        assert!(matches!(
            combined_snr(3.5, 0),
            Err(ModelError::InvalidRepetitions)
        ));
    }

    #[test]
    fn combined_snr_hand_values() {
        assert!((combined_snr(0.24f64, 8).unwrap() - 9.27).abs() < 0.01);
        assert!((combined_snr(-9.76f64, 32).unwrap() - 5.29).abs() < 0.01);
    }

    #[test]
    fn scenario_table_matches_configurations() {
        let scenarios = data::scenarios().unwrap();
        let pick = |n: ScenarioName| scenarios.iter().find(|s| s.name == n).unwrap().clone();
        let good =
            scenario_radio_config::<f64>(&pick(ScenarioName::Good), Technology::Nbiot).unwrap();
        assert_eq!((good.mcs, good.rep_data_ul), (10, 1));
        let bad = scenario_radio_config::<f64>(&pick(ScenarioName::Bad), Technology::Ltem).unwrap();
        assert_eq!((bad.mcs, bad.rep_data_ul), (0, 16));
        let err = scenario_radio_config::<f64>(&pick(ScenarioName::Extreme), Technology::Ltem)
            .unwrap_err();
        assert!(matches!(err, ModelError::Unreachable { .. }));
    }

    #[test]
    fn scenarios_trade_mcs_for_repetitions() {
        let scenarios = data::scenarios().unwrap();
        for tech in [Technology::Nbiot, Technology::Ltem] {
            let mut prev: Option<ScenarioAssignment> = None;
            for s in &scenarios {
                if let Some(a) = s.assignment(tech) {
                    if let Some(p) = prev {
                        assert!(a.mcs <= p.mcs);
                        assert!(a.repetitions >= p.repetitions);
                    }
                    prev = Some(a);
                }
            }
        }
    }

    #[test]
    fn repetitions_are_capped() {
        let scenarios = data::scenarios().unwrap();
        for s in &scenarios {
            for tech in [Technology::Nbiot, Technology::Ltem] {
                if s.assignment(tech).is_some() {
                    let radio = scenario_radio_config::<f64>(s, tech).unwrap();
                    assert!(radio.rep_ctrl <= MAX_REPETITIONS);
                }
            }
        }
    }
}
