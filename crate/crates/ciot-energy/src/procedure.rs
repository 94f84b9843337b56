//! Signalling procedures as data-driven message scripts: attach, service
//! request, release, resume, and tracking area update. Each script is an
//! ordered list of steps (UL data, DL data, preamble, DCI reception, ACK)
//! with optional inter-message delays charged at the device's delay power.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::profile::{DeviceProfile, Technology};
use crate::radio::RadioConfig;
use crate::scalar::Scalar;
use crate::state_energy::{
    ack_energy, rap_energy, rx_energy, tx_energy, EnergyComponent, GapModel, StateEnergyReport,
};
use crate::tbs::TbsTable;

/// What the modem does during one script step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    UlData,
    DlData,
    Rap,
    DciRx,
    AckUl,
}

/// One message-sequence-chart step.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MessageStep {
    pub name: String,
    pub kind: StepKind,
    /// Message size; carries meaning only for `ul_data`/`dl_data` steps.
    #[serde(default)]
    pub size_bits: u64,
    /// Delay-table key for the waiting period *before* this step; keys
    /// missing from a profile's table cost 0 ms.
    #[serde(default)]
    pub delay_key: Option<String>,
}

/// An ordered, immutable message script for one procedure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProcedureScript {
    pub technology: Technology,
    pub name: String,
    pub steps: Vec<MessageStep>,
}

impl ProcedureScript {
    pub fn total_ul_bits(&self) -> u64 {
        self.steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::UlData | StepKind::AckUl))
            .map(|s| s.size_bits)
            .sum()
    }

    pub fn total_dl_bits(&self) -> u64 {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::DlData)
            .map(|s| s.size_bits)
            .sum()
    }

    /// Concatenate another script after this one.
    pub fn concat(mut self, other: &ProcedureScript) -> ProcedureScript {
        self.steps.extend(other.steps.iter().cloned());
        self
    }
}

/// Parse and validate a procedure script from its JSON document.
pub fn load_procedure_script(
    technology: Technology,
    name: &str,
    document: &str,
) -> Result<ProcedureScript> {
    let steps: Vec<MessageStep> = serde_json::from_str(document)?;
    if steps.is_empty() {
        return Err(ModelError::EmptyScript);
    }
    Ok(ProcedureScript {
        technology,
        name: name.to_string(),
        steps,
    })
}

/// Energy of one downlink control (DCI) reception: `dci_sf` subframes
/// repeated `rep_ctrl` times at the RX power level.
pub fn dci_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    radio: &RadioConfig<F>,
) -> Result<StateEnergyReport<F>> {
    if radio.rep_ctrl == 0 {
        return Err(ModelError::InvalidRepetitions);
    }
    let t = F::from_count(radio.dci_sf as u64 * radio.rep_ctrl as u64);
    Ok(StateEnergyReport::new(
        t,
        F::zero(),
        F::zero(),
        vec![EnergyComponent::new("DCI", profile.p_rx_mw, t)],
    ))
}

/// Total energy of a procedure: per-step message energies plus all
/// inter-message delays charged at the profile's delay power level.
pub fn procedure_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    radio: &RadioConfig<F>,
    tbs: &TbsTable,
    script: &ProcedureScript,
) -> Result<StateEnergyReport<F>> {
    if script.technology != radio.technology {
        return Err(ModelError::TechnologyMismatch);
    }
    if script.steps.is_empty() {
        return Err(ModelError::EmptyScript);
    }
    let gaps = GapModel::for_technology(radio.technology);
    let mut report = StateEnergyReport::empty();
    let p_delay = profile.p_delay_mw();
    for step in &script.steps {
        if let Some(key) = &step.delay_key {
            let t_delay = profile.delay_ms(key);
            if t_delay > F::zero() {
                report.absorb(StateEnergyReport::new(
                    F::zero(),
                    F::zero(),
                    t_delay,
                    vec![EnergyComponent::new("DELAY", p_delay, t_delay)],
                ));
            }
        }
        let step_report = match step.kind {
            StepKind::UlData => tx_energy(profile, radio, tbs, step.size_bits)?,
            StepKind::DlData => rx_energy(profile, radio, tbs, step.size_bits, &gaps)?,
            StepKind::Rap => rap_energy(profile, radio)?,
            StepKind::DciRx => dci_energy(profile, radio)?,
            StepKind::AckUl => ack_energy(profile, radio)?,
        };
        report.absorb(step_report);
    }
    Ok(report)
}

/// Name of the NB-IoT script step that carries user data on the Control
/// Plane optimization path.
const NB_SR_DATA_STEP: &str = "service_request_ul_data";

/// Build the service-request script carrying `payload_bits` of user data:
/// NB-IoT piggybacks the payload on the Control Plane data message; LTE-M
/// sends it as a separate scheduled uplink transmission after RRC setup.
pub fn service_request_script(
    base: &ProcedureScript,
    payload_bits: u64,
) -> Result<ProcedureScript> {
    let mut script = base.clone();
    match script.technology {
        Technology::Nbiot => {
            let step = script
                .steps
                .iter_mut()
                .find(|s| s.name == NB_SR_DATA_STEP)
                .ok_or_else(|| {
                    ModelError::Parse(format!(
                        "service-request script lacks the `{NB_SR_DATA_STEP}` step"
                    ))
                })?;
            step.size_bits += payload_bits;
        }
        Technology::Ltem => {
            if payload_bits > 0 {
                script.steps.push(MessageStep {
                    name: "ul_grant_dci".to_string(),
                    kind: StepKind::DciRx,
                    size_bits: 0,
                    delay_key: Some("data_tx_to_dci".to_string()),
                });
                script.steps.push(MessageStep {
                    name: "ul_data".to_string(),
                    kind: StepKind::UlData,
                    size_bits: payload_bits,
                    delay_key: Some("dci_to_data_tx".to_string()),
                });
            }
        }
    }
    Ok(script)
}

/// Service-request-plus-data energy.
pub fn service_request_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    radio: &RadioConfig<F>,
    tbs: &TbsTable,
    base: &ProcedureScript,
    payload_bits: u64,
) -> Result<StateEnergyReport<F>> {
    let script = service_request_script(base, payload_bits)?;
    procedure_energy(profile, radio, tbs, &script)
}

/// Sum of all delay durations a profile charges for a script, in ms.
pub fn total_delay_ms<F: Scalar>(profile: &DeviceProfile<F>, script: &ProcedureScript) -> F {
    script
        .steps
        .iter()
        .filter_map(|s| s.delay_key.as_deref())
        .fold(F::zero(), |acc, key| acc + profile.delay_ms(key))
}
