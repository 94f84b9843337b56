//! Transmit-cycle composition, hourly energy, and battery-lifetime
//! estimation, plus the sweep engine producing one result row per grid point.

use serde::{Deserialize, Serialize};

use crate::config::{BatteryConfig, CycleSpec, TimerConfig, TrafficProfile, MS_PER_HOUR};
use crate::data;
use crate::error::{ModelError, Result};
use crate::link_budget::{scenario_radio_config, ScenarioName};
use crate::procedure::{
    procedure_energy, service_request_script, MessageStep, ProcedureScript, StepKind,
};
use crate::scalar::{lit, Scalar};
use crate::state_energy::{
    cdrx_cycle_energy, psm_cycle_energy, EnergyComponent, StateEnergyReport,
};
use crate::tbs::TbsTable;

/// Millijoules stored per watt-hour.
pub const MJ_PER_WH: f64 = 3_600_000.0;
/// Hours in a (non-leap) year.
pub const HOURS_PER_YEAR: f64 = 8760.0;

/// Per-phase energy of one transmit cycle, in µJ. The total is the exact
/// sum of the six parts.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct CycleEnergyBreakdown<F: Scalar = f64> {
    pub e_sync_uj: F,
    /// Service request (or attach) including appended user data.
    pub e_sr_uj: F,
    /// cDRX monitoring during the RRC inactivity window.
    pub e_cdrx_uj: F,
    pub e_release_uj: F,
    /// All TAU occurrences: wake-up sync plus script energy, × count.
    pub e_tau_uj: F,
    /// Power-saving phases (iDRX/eDRX windows and PSM deep sleep).
    pub e_sleep_uj: F,
    pub tau_count: u64,
    pub total_uj: F,
}

impl<F: Scalar> CycleEnergyBreakdown<F> {
    pub fn parts(&self) -> [F; 6] {
        [
            self.e_sync_uj,
            self.e_sr_uj,
            self.e_cdrx_uj,
            self.e_release_uj,
            self.e_tau_uj,
            self.e_sleep_uj,
        ]
    }
}

/// Number of tracking area updates within one transmit cycle. Every data
/// connection restarts the T3412 timer, so a cycle of exactly T3412
/// triggers none.
pub fn tau_count<F: Scalar>(cycle_ms: F, t3412_ms: F) -> Result<u64> {
    if t3412_ms <= F::zero() {
        return Err(ModelError::InvalidTimer("t3412 must be > 0".to_string()));
    }
    let n = (cycle_ms / t3412_ms).ceil();
    let n = n
        .to_i64()
        .ok_or_else(|| ModelError::InvalidTimer("TAU count overflow".to_string()))?;
    Ok((n - 1).max(0) as u64)
}

/// The connection-establishment script of a cycle: the service-request
/// script carrying the payload, or the attach script (first cycle after
/// power-up) with the payload appended as a separate scheduled uplink.
pub fn connection_script<F: Scalar>(spec: &CycleSpec<F>) -> Result<ProcedureScript> {
    let technology = spec.radio.technology;
    let payload_bits = spec.traffic.payload_bits();
    if spec.first_cycle_attach {
        let mut script = data::script(technology, "attach")?;
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
        Ok(script)
    } else {
        let base = data::script(technology, "service_request")?;
        service_request_script(&base, payload_bits)
    }
}

/// cDRX phase covering the RRC inactivity window: whole cDRX cycles plus a
/// prorated fractional tail at the sleep power level.
pub fn inactivity_energy<F: Scalar>(spec: &CycleSpec<F>) -> Result<StateEnergyReport<F>> {
    let profile = &spec.device;
    let timers = &spec.timers;
    let cycle_ms = F::from_count(timers.cdrx_long_cycle_sf as u64);
    let window = timers.rrc_inactivity_ms;
    if window <= F::zero() {
        return Ok(StateEnergyReport::empty());
    }
    let full = (window / cycle_ms)
        .floor()
        .to_u64()
        .ok_or_else(|| ModelError::InvalidTimer("cDRX cycle count overflow".to_string()))?;
    let mut report = StateEnergyReport::empty();
    if full > 0 {
        let unit = cdrx_cycle_energy(profile, timers)?;
        for _ in 0..full {
            report.absorb(unit.clone());
        }
    }
    let tail = window - cycle_ms * F::from_count(full);
    if tail > F::zero() {
        report.absorb(StateEnergyReport::new(
            F::zero(),
            F::zero(),
            tail,
            vec![EnergyComponent::new(
                "CDRX_SLEEP",
                profile.p_cdrx_sleep_mw,
                tail,
            )],
        ));
    }
    Ok(report)
}

/// Power-saving interval with the reachable window clamped to the interval
/// length (the final partial interval of a cycle may be shorter than T3324).
fn psm_interval<F: Scalar>(spec: &CycleSpec<F>, interval_ms: F) -> Result<StateEnergyReport<F>> {
    let mut timers = spec.timers;
    if timers.t3324_ms > interval_ms {
        timers.t3324_ms = interval_ms;
    }
    psm_cycle_energy(&spec.device, &timers, interval_ms, spec.ps_mode)
}

/// The power-saving intervals of one cycle, partitioned by TAU occurrences:
/// `tau_count` intervals of exactly T3412 followed by the remainder.
pub fn sleep_intervals<F: Scalar>(spec: &CycleSpec<F>) -> Result<Vec<F>> {
    let n = tau_count(spec.traffic.cycle_ms, spec.timers.t3412_ms)?;
    let mut intervals = Vec::with_capacity(n as usize + 1);
    for _ in 0..n {
        intervals.push(spec.timers.t3412_ms);
    }
    let tail = spec.traffic.cycle_ms - spec.timers.t3412_ms * F::from_count(n);
    if tail > F::zero() {
        intervals.push(tail);
    }
    Ok(intervals)
}

/// Energy of one complete transmit cycle, per phase.
pub fn cycle_energy<F: Scalar>(
    spec: &CycleSpec<F>,
    tbs: &TbsTable,
) -> Result<CycleEnergyBreakdown<F>> {
    spec.validate()?;
    let profile = &spec.device;
    let thousand = lit::<F>(1000.0);

    let e_sync = profile.e_sync_mj * thousand;

    let script = connection_script(spec)?;
    let e_sr = procedure_energy(profile, &spec.radio, tbs, &script)?.energy_uj;

    let e_cdrx = inactivity_energy(spec)?.energy_uj;

    let release = data::script(spec.radio.technology, "release")?;
    let e_release = procedure_energy(profile, &spec.radio, tbs, &release)?.energy_uj;

    let n_tau = tau_count(spec.traffic.cycle_ms, spec.timers.t3412_ms)?;
    let e_tau = if n_tau > 0 {
        let tau_script = data::script(spec.radio.technology, "tau")?;
        let per_tau = e_sync + procedure_energy(profile, &spec.radio, tbs, &tau_script)?.energy_uj;
        per_tau * F::from_count(n_tau)
    } else {
        F::zero()
    };

    let mut e_sleep = F::zero();
    for interval in sleep_intervals(spec)? {
        e_sleep = e_sleep + psm_interval(spec, interval)?.energy_uj;
    }

    let total = e_sync + e_sr + e_cdrx + e_release + e_tau + e_sleep;
    Ok(CycleEnergyBreakdown {
        e_sync_uj: e_sync,
        e_sr_uj: e_sr,
        e_cdrx_uj: e_cdrx,
        e_release_uj: e_release,
        e_tau_uj: e_tau,
        e_sleep_uj: e_sleep,
        tau_count: n_tau,
        total_uj: total,
    })
}

/// Average energy consumption in mJ per hour.
pub fn hourly_energy<F: Scalar>(spec: &CycleSpec<F>, tbs: &TbsTable) -> Result<F> {
    let breakdown = cycle_energy(spec, tbs)?;
    Ok(breakdown.total_uj / lit::<F>(1000.0) * spec.traffic.rate_per_hour)
}

/// Battery lifetime in hours.
pub fn estimate_lifetime<F: Scalar>(
    spec: &CycleSpec<F>,
    tbs: &TbsTable,
    battery: &BatteryConfig<F>,
) -> Result<F> {
    battery.validate()?;
    let e_hour_mj = hourly_energy(spec, tbs)?;
    let denominator = e_hour_mj + battery.e_device_per_hour_mj;
    if denominator <= F::zero() {
        return Err(ModelError::ZeroConsumption);
    }
    Ok(battery.capacity_wh * lit::<F>(MJ_PER_WH) * battery.safety_factor / denominator)
}

/// Axes of a sweep; the grid is their Cartesian product in axis order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct SweepGrid<F: Scalar = f64> {
    pub devices: Vec<String>,
    pub scenarios: Vec<ScenarioName>,
    pub payload_bytes: Vec<u64>,
    pub cycle_hours: Vec<F>,
    pub t3412_hours: Vec<F>,
}

impl<F: Scalar> SweepGrid<F> {
    pub fn is_empty(&self) -> bool {
        self.devices.is_empty()
            || self.scenarios.is_empty()
            || self.payload_bytes.is_empty()
            || self.cycle_hours.is_empty()
            || self.t3412_hours.is_empty()
    }
}

/// One output row of a sweep; failed points carry a message in `error`
/// and zeroed numeric columns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub device: String,
    pub technology: String,
    pub scenario: String,
    pub payload_bytes: u64,
    pub cycle_hours: f64,
    pub t3412_hours: f64,
    pub e_cycle_mj: f64,
    pub e_sync_mj: f64,
    pub e_sr_mj: f64,
    pub e_cdrx_mj: f64,
    pub e_release_mj: f64,
    pub e_tau_mj: f64,
    pub e_sleep_mj: f64,
    pub tau_count: u64,
    pub e_hour_mj: f64,
    pub lifetime_hours: f64,
    pub lifetime_years: f64,
    pub error: String,
}

fn evaluate_point<F: Scalar>(
    device: &str,
    scenario_name: ScenarioName,
    payload_bytes: u64,
    cycle_hours: F,
    t3412_hours: F,
    timers: &TimerConfig<F>,
    battery: &BatteryConfig<F>,
) -> Result<(String, CycleEnergyBreakdown<F>, F, F)> {
    let profile = data::device_profile::<F>(device)?;
    let technology = profile.technology;
    let scenarios = data::scenarios()?;
    let scenario = scenarios
        .iter()
        .find(|s| s.name == scenario_name)
        .ok_or_else(|| ModelError::UnknownScenario(scenario_name.as_str().to_string()))?;
    let radio = scenario_radio_config::<F>(scenario, technology)?;
    let tbs = data::tbs_table(technology)?;
    let cycle_ms = cycle_hours * lit::<F>(MS_PER_HOUR);
    let traffic = TrafficProfile::from_cycle_ms(payload_bytes, cycle_ms)?;
    let mut timers = *timers;
    timers.t3412_ms = t3412_hours * lit::<F>(MS_PER_HOUR);
    if timers.t3324_ms > timers.t3412_ms {
        timers.t3324_ms = timers.t3412_ms;
    }
    if timers.t3324_ms > cycle_ms {
        timers.t3324_ms = cycle_ms;
    }
    let spec = CycleSpec::new(profile, radio, traffic, timers);
    let breakdown = cycle_energy(&spec, &tbs)?;
    let e_hour = hourly_energy(&spec, &tbs)?;
    let lifetime = estimate_lifetime(&spec, &tbs, battery)?;
    let tech = match technology {
        crate::profile::Technology::Nbiot => "nbiot",
        crate::profile::Technology::Ltem => "ltem",
    };
    Ok((tech.to_string(), breakdown, e_hour, lifetime))
}

/// Evaluate every grid point; deterministic row order (device, scenario,
/// payload, cycle, t3412, nested in that order).
pub fn sweep<F: Scalar>(
    grid: &SweepGrid<F>,
    timers: &TimerConfig<F>,
    battery: &BatteryConfig<F>,
) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(ModelError::EmptyGrid);
    }
    let mut rows = Vec::new();
    for device in &grid.devices {
        for &scenario in &grid.scenarios {
            for &payload in &grid.payload_bytes {
                for &cycle_h in &grid.cycle_hours {
                    for &t3412_h in &grid.t3412_hours {
                        let mut row = SweepRow {
                            device: device.clone(),
                            technology: String::new(),
                            scenario: scenario.as_str().to_string(),
                            payload_bytes: payload,
                            cycle_hours: cycle_h.as_f64(),
                            t3412_hours: t3412_h.as_f64(),
                            e_cycle_mj: 0.0,
                            e_sync_mj: 0.0,
                            e_sr_mj: 0.0,
                            e_cdrx_mj: 0.0,
                            e_release_mj: 0.0,
                            e_tau_mj: 0.0,
                            e_sleep_mj: 0.0,
                            tau_count: 0,
                            e_hour_mj: 0.0,
                            lifetime_hours: 0.0,
                            lifetime_years: 0.0,
                            error: String::new(),
                        };
                        match evaluate_point(
                            device, scenario, payload, cycle_h, t3412_h, timers, battery,
                        ) {
                            Ok((tech, b, e_hour, lifetime)) => {
                                row.technology = tech;
                                row.e_cycle_mj = b.total_uj.as_f64() / 1000.0;
                                row.e_sync_mj = b.e_sync_uj.as_f64() / 1000.0;
                                row.e_sr_mj = b.e_sr_uj.as_f64() / 1000.0;
                                row.e_cdrx_mj = b.e_cdrx_uj.as_f64() / 1000.0;
                                row.e_release_mj = b.e_release_uj.as_f64() / 1000.0;
                                row.e_tau_mj = b.e_tau_uj.as_f64() / 1000.0;
                                row.e_sleep_mj = b.e_sleep_uj.as_f64() / 1000.0;
                                row.tau_count = b.tau_count;
                                row.e_hour_mj = e_hour.as_f64();
                                row.lifetime_hours = lifetime.as_f64();
                                row.lifetime_years = lifetime.as_f64() / HOURS_PER_YEAR;
                            }
                            Err(e) => row.error = e.to_string(),
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    Ok(rows)
}
