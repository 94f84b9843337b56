//! Closed-form time and energy models for the UE states: TX (data, control,
//! random access), RX, connected-mode USS monitoring, cDRX, iDRX, eDRX, PSM.
//!
//! Internal units: time ms, power mW, energy µJ (mW·ms).

use serde::{Deserialize, Serialize};

use crate::config::{PsMode, TimerConfig};
use crate::error::{ModelError, Result};
use crate::profile::{tx_power_consumption, DeviceProfile, Technology};
use crate::radio::{RadioConfig, RapFormat};
use crate::scalar::{lit, Scalar};
use crate::tbs::TbsTable;

/// Transmission/reception gap constants.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct GapModel<F: Scalar = f64> {
    /// Maximum continuous transmission before a mandatory gap (NB-IoT).
    pub tx_max_continuous_ms: F,
    pub tx_gap_ms: F,
    /// Fraction of subframes available for data reception.
    pub dl_availability: F,
    /// NB-IoT only; LTE-M has no uplink gap model.
    pub tx_gaps_enabled: bool,
}

impl<F: Scalar> GapModel<F> {
    pub fn for_technology(technology: Technology) -> Self {
        GapModel {
            tx_max_continuous_ms: lit(256.0),
            tx_gap_ms: lit(40.0),
            dl_availability: lit(14.0 / 20.0),
            tx_gaps_enabled: technology == Technology::Nbiot,
        }
    }

    pub fn with_dl_availability(mut self, dl_availability: F) -> Self {
        self.dl_availability = dl_availability;
        self
    }
}

/// One labelled (power, duration) term of a state-energy breakdown.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct EnergyComponent<F: Scalar = f64> {
    pub label: String,
    pub power_mw: F,
    pub duration_ms: F,
    pub energy_uj: F,
}

impl<F: Scalar> EnergyComponent<F> {
    pub fn new(label: &str, power_mw: F, duration_ms: F) -> Self {
        EnergyComponent {
            label: label.to_string(),
            power_mw,
            duration_ms,
            energy_uj: power_mw * duration_ms,
        }
    }

    /// A measured lump cost: energy is authoritative, power is derived.
    pub fn lump(label: &str, energy_uj: F, duration_ms: F) -> Self {
        let power_mw = if duration_ms > F::zero() {
            energy_uj / duration_ms
        } else {
            F::zero()
        };
        EnergyComponent {
            label: label.to_string(),
            power_mw,
            duration_ms,
            energy_uj,
        }
    }

    pub fn scaled(&self, count: u64) -> Self {
        let n = F::from_count(count);
        EnergyComponent {
            label: self.label.clone(),
            power_mw: self.power_mw,
            duration_ms: self.duration_ms * n,
            energy_uj: self.energy_uj * n,
        }
    }
}

/// Time/energy report for one state or composition; the total is always the
/// exact sum of the breakdown components.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct StateEnergyReport<F: Scalar = f64> {
    pub active_ms: F,
    pub gap_ms: F,
    pub sleep_ms: F,
    pub energy_uj: F,
    pub breakdown: Vec<EnergyComponent<F>>,
}

impl<F: Scalar> StateEnergyReport<F> {
    pub fn new(active_ms: F, gap_ms: F, sleep_ms: F, breakdown: Vec<EnergyComponent<F>>) -> Self {
        let energy_uj = breakdown.iter().fold(F::zero(), |acc, c| acc + c.energy_uj);
        StateEnergyReport {
            active_ms,
            gap_ms,
            sleep_ms,
            energy_uj,
            breakdown,
        }
    }

    pub fn empty() -> Self {
        StateEnergyReport::new(F::zero(), F::zero(), F::zero(), Vec::new())
    }

    pub fn total_ms(&self) -> F {
        self.active_ms + self.gap_ms + self.sleep_ms
    }

    /// Merge another report into this one, keeping totals consistent.
    pub fn absorb(&mut self, other: StateEnergyReport<F>) {
        self.active_ms = self.active_ms + other.active_ms;
        self.gap_ms = self.gap_ms + other.gap_ms;
        self.sleep_ms = self.sleep_ms + other.sleep_ms;
        for c in other.breakdown {
            self.energy_uj = self.energy_uj + c.energy_uj;
            self.breakdown.push(c);
        }
    }
}

/// Number of transport-block segments needed for `payload_bits`.
pub fn segments(payload_bits: u64, tbs_bits: u32, header_bits: u32) -> Result<u64> {
    if payload_bits == 0 {
        return Ok(0);
    }
    if tbs_bits <= header_bits {
        return Err(ModelError::HeaderExceedsTbs {
            tbs: tbs_bits,
            header: header_bits,
        });
    }
    let usable = (tbs_bits - header_bits) as u64;
    Ok(payload_bits.div_ceil(usable))
}

/// Uplink transmission time in ms.
pub fn tx_time<F: Scalar>(radio: &RadioConfig<F>, tbs: &TbsTable, payload_bits: u64) -> Result<F> {
    let tbs_bits = tbs.lookup(radio.mcs, radio.ul_tbs_units())?;
    let l = segments(payload_bits, tbs_bits, radio.header_bits_ul)?;
    let per_segment_ms = match radio.technology {
        Technology::Nbiot => radio.t_ru_ms * radio.n_ru,
        Technology::Ltem => radio.n_sf,
    };
    Ok(F::from_count(
        per_segment_ms as u64 * radio.rep_data_ul as u64 * l,
    ))
}

/// Time spent in mandatory transmission gaps for a transmission of `t_tx_ms`.
pub fn tx_gap_time<F: Scalar>(t_tx_ms: F, gaps: &GapModel<F>) -> F {
    if !gaps.tx_gaps_enabled {
        return F::zero();
    }
    (t_tx_ms / gaps.tx_max_continuous_ms).floor() * gaps.tx_gap_ms
}

/// TX-state energy for one uplink packet.
pub fn tx_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    radio: &RadioConfig<F>,
    tbs: &TbsTable,
    payload_bits: u64,
) -> Result<StateEnergyReport<F>> {
    let t_tx = tx_time(radio, tbs, payload_bits)?;
    if t_tx == F::zero() {
        return Ok(StateEnergyReport::empty());
    }
    let gaps = GapModel::for_technology(radio.technology);
    let t_gap = tx_gap_time(t_tx, &gaps);
    let p_tx = tx_power_consumption(profile, radio.ul_tx_power_dbm)?;
    let mut components = vec![EnergyComponent::new("TX", p_tx, t_tx)];
    if t_gap > F::zero() {
        components.push(EnergyComponent::new("TX_GAP", profile.p_tx_gaps_mw, t_gap));
    }
    Ok(StateEnergyReport::new(t_tx, t_gap, F::zero(), components))
}

/// RU duration of an NPUSCH format-2 ACK: one 15 kHz subcarrier, 4 slots.
const NB_ACK_RU_MS: u64 = 2;

/// Uplink control (ACK/NACK) energy.
pub fn ack_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    radio: &RadioConfig<F>,
) -> Result<StateEnergyReport<F>> {
    if radio.rep_ctrl == 0 {
        return Err(ModelError::InvalidRepetitions);
    }
    let t_ack = match radio.technology {
        Technology::Nbiot => F::from_count(NB_ACK_RU_MS * radio.rep_ctrl as u64),
        Technology::Ltem => F::from_count(radio.rep_ctrl as u64),
    };
    let gaps = GapModel::for_technology(radio.technology);
    let t_gap = tx_gap_time(t_ack, &gaps);
    let p_tx = tx_power_consumption(profile, radio.ul_tx_power_dbm)?;
    let mut components = vec![EnergyComponent::new("TX", p_tx, t_ack)];
    if t_gap > F::zero() {
        components.push(EnergyComponent::new("TX_GAP", profile.p_tx_gaps_mw, t_gap));
    }
    Ok(StateEnergyReport::new(t_ack, t_gap, F::zero(), components))
}

/// Random access preamble duration in ms.
pub fn rap_duration<F: Scalar>(radio: &RadioConfig<F>) -> Result<F> {
    if radio.rep_rap == 0 {
        return Err(ModelError::InvalidRepetitions);
    }
    let reps = F::from_count(radio.rep_rap as u64);
    let per_preamble_ms: F = match (radio.technology, radio.rap_format) {
        // 3.75 kHz NPRACH: symbol 266.7 µs, CP 66.7 µs (fmt 0) / 266.7 µs (fmt 1),
        // 4 symbol groups of (CP + 5 symbols)
        (Technology::Nbiot, RapFormat::NbFmt0) => lit((0.0667 + 5.0 * 0.2667) * 4.0),
        (Technology::Nbiot, RapFormat::NbFmt1) => lit((0.2667 + 5.0 * 0.2667) * 4.0),
        (Technology::Ltem, RapFormat::LtemFmt1) => lit(0.903),
        _ => return Err(ModelError::UnknownFormat),
    };
    Ok(per_preamble_ms * reps)
}

/// Preamble transmission energy; the preamble has no transmission gaps.
pub fn rap_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    radio: &RadioConfig<F>,
) -> Result<StateEnergyReport<F>> {
    let t_rap = rap_duration(radio)?;
    let p_tx = tx_power_consumption(profile, radio.ul_tx_power_dbm)?;
    Ok(StateEnergyReport::new(
        t_rap,
        F::zero(),
        F::zero(),
        vec![EnergyComponent::new("RAP", p_tx, t_rap)],
    ))
}

/// Downlink reception time in ms.
pub fn rx_time<F: Scalar>(radio: &RadioConfig<F>, tbs: &TbsTable, payload_bits: u64) -> Result<F> {
    let tbs_bits = tbs.lookup(radio.mcs, radio.dl_tbs_units())?;
    let l = segments(payload_bits, tbs_bits, radio.header_bits_dl)?;
    Ok(F::from_count(
        radio.n_sf as u64 * radio.rep_data_dl as u64 * l,
    ))
}

/// Reception-gap time for a reception of `t_rx_ms`.
pub fn rx_gap_time<F: Scalar>(t_rx_ms: F, gaps: &GapModel<F>) -> F {
    if t_rx_ms <= F::zero() {
        return F::zero();
    }
    (t_rx_ms * (F::one() / gaps.dl_availability - F::one())).ceil()
}

/// RX-state energy for one downlink packet.
pub fn rx_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    radio: &RadioConfig<F>,
    tbs: &TbsTable,
    payload_bits: u64,
    gaps: &GapModel<F>,
) -> Result<StateEnergyReport<F>> {
    let t_rx = rx_time(radio, tbs, payload_bits)?;
    if t_rx == F::zero() {
        return Ok(StateEnergyReport::empty());
    }
    let t_gap = rx_gap_time(t_rx, gaps);
    let mut components = vec![EnergyComponent::new("RX", profile.p_rx_mw, t_rx)];
    if t_gap > F::zero() {
        components.push(EnergyComponent::new("RX_GAP", profile.p_rx_gaps_mw, t_gap));
    }
    Ok(StateEnergyReport::new(t_rx, t_gap, F::zero(), components))
}

/// One cycle of default connected-mode USS monitoring.
pub fn uss_cycle_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    timers: &TimerConfig<F>,
    radio: &RadioConfig<F>,
    gaps: &GapModel<F>,
) -> Result<StateEnergyReport<F>> {
    let monitored_sf = timers.uss_monitor_sf as u64 * radio.rep_ctrl as u64;
    if monitored_sf > timers.uss_period_sf as u64 {
        return Err(ModelError::MonitoringExceedsPeriod);
    }
    let t_mon = F::from_count(monitored_sf);
    let t_gap = rx_gap_time(t_mon, gaps);
    let t_sleep = F::from_count(timers.uss_period_sf as u64 - monitored_sf);
    let mut components = Vec::new();
    if t_mon > F::zero() {
        components.push(EnergyComponent::new("RX", profile.p_rx_mw, t_mon));
    }
    if t_gap > F::zero() {
        components.push(EnergyComponent::new("RX_GAP", profile.p_rx_gaps_mw, t_gap));
    }
    if t_sleep > F::zero() {
        components.push(EnergyComponent::new(
            "CDRX_SLEEP",
            profile.p_cdrx_sleep_mw,
            t_sleep,
        ));
    }
    Ok(StateEnergyReport::new(t_mon, t_gap, t_sleep, components))
}

/// One connected-mode DRX cycle: measured OnDuration lump plus sleep.
pub fn cdrx_cycle_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    timers: &TimerConfig<F>,
) -> Result<StateEnergyReport<F>> {
    if timers.cdrx_ondur_sf > timers.cdrx_long_cycle_sf {
        return Err(ModelError::OnDurExceedsCycle);
    }
    let t_ondur = F::from_count(timers.cdrx_ondur_sf as u64);
    let t_sleep = F::from_count((timers.cdrx_long_cycle_sf - timers.cdrx_ondur_sf) as u64);
    let mut components = vec![EnergyComponent::lump(
        "CDRX_ONDUR",
        profile.e_cdrx_ondur_mj * lit::<F>(1000.0),
        t_ondur,
    )];
    if t_sleep > F::zero() {
        components.push(EnergyComponent::new(
            "CDRX_SLEEP",
            profile.p_cdrx_sleep_mw,
            t_sleep,
        ));
    }
    Ok(StateEnergyReport::new(
        t_ondur,
        F::zero(),
        t_sleep,
        components,
    ))
}

/// One idle-mode DRX cycle: sync lump, paging occasions, light sleep.
/// Idle sleep is charged at the eDRX sleep level, the AS-retained floor.
pub fn idrx_cycle_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    timers: &TimerConfig<F>,
) -> Result<StateEnergyReport<F>> {
    let active = timers.idrx_ondur_ms + profile.t_idrx_sync_ms;
    if timers.idrx_cycle_ms < active {
        return Err(ModelError::CycleTooShort);
    }
    let t_sleep = timers.idrx_cycle_ms - active;
    let mut components = vec![
        EnergyComponent::lump(
            "SYNC",
            profile.e_idrx_sync_mj * lit::<F>(1000.0),
            profile.t_idrx_sync_ms,
        ),
        EnergyComponent::lump(
            "IDRX",
            profile.e_paging_mj * lit::<F>(1000.0) * F::from_count(timers.n_paging as u64),
            timers.idrx_ondur_ms,
        ),
    ];
    if t_sleep > F::zero() {
        components.push(EnergyComponent::new(
            "EDRX_SLEEP",
            profile.p_edrx_sleep_mw,
            t_sleep,
        ));
    }
    Ok(StateEnergyReport::new(
        active,
        F::zero(),
        t_sleep,
        components,
    ))
}

fn count_cycles<F: Scalar>(window_ms: F, cycle_ms: F) -> Result<u64> {
    if window_ms <= F::zero() {
        return Ok(0);
    }
    if cycle_ms <= F::zero() {
        return Err(ModelError::InvalidTimer(
            "cycle length must be > 0".to_string(),
        ));
    }
    (window_ms / cycle_ms)
        .ceil()
        .to_u64()
        .ok_or_else(|| ModelError::InvalidTimer("cycle count overflow".to_string()))
}

/// One extended-DRX cycle: a paging time window of iDRX cycles plus deep
/// eDRX sleep for the remainder.
pub fn edrx_cycle_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    timers: &TimerConfig<F>,
) -> Result<StateEnergyReport<F>> {
    if timers.ptw_ms > timers.edrx_cycle_ms {
        return Err(ModelError::PtwExceedsCycle);
    }
    let n_idrx = count_cycles(timers.ptw_ms, timers.idrx_cycle_ms)?;
    let mut report = StateEnergyReport::empty();
    if n_idrx > 0 {
        let idrx = idrx_cycle_energy(profile, timers)?;
        for _ in 0..n_idrx {
            report.absorb(idrx.clone());
        }
    }
    let t_sleep = timers.edrx_cycle_ms - timers.ptw_ms;
    if t_sleep > F::zero() {
        report.absorb(StateEnergyReport::new(
            F::zero(),
            F::zero(),
            t_sleep,
            vec![EnergyComponent::new(
                "EDRX_SLEEP",
                profile.p_edrx_sleep_mw,
                t_sleep,
            )],
        ));
    }
    Ok(report)
}

/// Power-saving phase between two connected events: the T3324 reachable
/// window (iDRX or eDRX cycles per `ps_mode`) followed by deep sleep.
/// The `*_only` modes skip deep sleep and fill the whole interval with
/// their DRX cycles.
pub fn psm_cycle_energy<F: Scalar>(
    profile: &DeviceProfile<F>,
    timers: &TimerConfig<F>,
    inter_event_ms: F,
    ps_mode: PsMode,
) -> Result<StateEnergyReport<F>> {
    let mut report = StateEnergyReport::empty();
    match ps_mode {
        PsMode::PsmIdrx | PsMode::PsmEdrx => {
            if inter_event_ms < timers.t3324_ms {
                return Err(ModelError::ActiveWindowExceedsInterval);
            }
            let (n, unit) = match ps_mode {
                PsMode::PsmIdrx => (
                    count_cycles(timers.t3324_ms, timers.idrx_cycle_ms)?,
                    idrx_cycle_energy(profile, timers)?,
                ),
                _ => (
                    count_cycles(timers.t3324_ms, timers.edrx_cycle_ms)?,
                    edrx_cycle_energy(profile, timers)?,
                ),
            };
            for _ in 0..n {
                report.absorb(unit.clone());
            }
            let t_deep = inter_event_ms - timers.t3324_ms;
            if t_deep > F::zero() {
                report.absorb(StateEnergyReport::new(
                    F::zero(),
                    F::zero(),
                    t_deep,
                    vec![EnergyComponent::new(
                        "PSM_SLEEP",
                        profile.p_psm_sleep_mw,
                        t_deep,
                    )],
                ));
            }
        }
        PsMode::IdrxOnly => {
            let n = count_cycles(inter_event_ms, timers.idrx_cycle_ms)?;
            let unit = idrx_cycle_energy(profile, timers)?;
            for _ in 0..n {
                report.absorb(unit.clone());
            }
        }
        PsMode::EdrxOnly => {
            let n = count_cycles(inter_event_ms, timers.edrx_cycle_ms)?;
            let unit = edrx_cycle_energy(profile, timers)?;
            for _ in 0..n {
                report.absorb(unit.clone());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    fn n211() -> DeviceProfile {
        data::device_profile("n211").unwrap()
    }

    fn nb_radio() -> RadioConfig {
        RadioConfig::defaults(Technology::Nbiot)
    }

    fn nb_tbs() -> TbsTable {
        data::tbs_table(Technology::Nbiot).unwrap()
    }

    #[test]
    fn segment_counts() {
        assert_eq!(segments(800, 1000, 40).unwrap(), 1);
        assert_eq!(segments(2000, 1000, 40).unwrap(), 3);
        assert_eq!(segments(0, 1000, 40).unwrap(), 0);
        assert!(matches!(
            segments(800, 40, 40),
            Err(ModelError::HeaderExceedsTbs { .. })
        ));
    }

    #[test]
    fn nbiot_tx_time_is_ru_scaled() {
        let mut radio = nb_radio();
        // TBS(10, 5) = 872, usable 832: one segment at 800 bits
        assert_eq!(tx_time(&radio, &nb_tbs(), 800).unwrap(), 40.0);
        radio.rep_data_ul = 8;
        assert_eq!(tx_time(&radio, &nb_tbs(), 800).unwrap(), 320.0);
    }

    #[test]
    fn ltem_tx_time_is_sf_scaled() {
        let mut radio: RadioConfig = RadioConfig::defaults(Technology::Ltem);
        radio.rep_data_ul = 2;
        let tbs = data::tbs_table(Technology::Ltem).unwrap();
        // TBS(10, 5) = 872, one segment
        assert_eq!(tx_time(&radio, &tbs, 800).unwrap(), 10.0);
    }

    #[test]
    fn tx_gaps_follow_the_256_40_rule() {
        let gaps = GapModel::<f64>::for_technology(Technology::Nbiot);
        assert_eq!(tx_gap_time(100.0, &gaps), 0.0);
        assert_eq!(tx_gap_time(256.0, &gaps), 40.0);
        assert_eq!(tx_gap_time(512.0, &gaps), 80.0);
        let ltem = GapModel::<f64>::for_technology(Technology::Ltem);
        assert_eq!(tx_gap_time(512.0, &ltem), 0.0);
    }

    #[test]
    fn tx_energy_hand_value() {
        let report = tx_energy(&n211(), &nb_radio(), &nb_tbs(), 800).unwrap();
        assert_eq!(report.active_ms, 40.0);
        assert!((report.energy_uj - 40.0 * 742.858).abs() < 1e-9);
    }

    #[test]
    fn empty_payload_costs_nothing() {
        let report = tx_energy(&n211(), &nb_radio(), &nb_tbs(), 0).unwrap();
        assert_eq!(report.energy_uj, 0.0);
    }

    #[test]
    fn tx_energy_includes_gap_term_past_256_ms() {
        let mut radio = nb_radio();
        radio.rep_data_ul = 16; // 640 ms of TX
        let report = tx_energy(&n211(), &radio, &nb_tbs(), 800).unwrap();
        assert_eq!(report.active_ms, 640.0);
        assert_eq!(report.gap_ms, 80.0);
        let expected = 640.0 * 742.858 + 80.0 * 153.6;
        assert!((report.energy_uj - expected).abs() < 1e-6);
    }

    #[test]
    fn ack_durations() {
        let mut radio = nb_radio();
        radio.rep_ctrl = 1;
        let nb = ack_energy(&n211(), &radio).unwrap();
        assert_eq!(nb.active_ms, 2.0);
        assert!((nb.energy_uj - 2.0 * 742.858).abs() < 1e-9);
        radio.rep_ctrl = 2;
        let doubled = ack_energy(&n211(), &radio).unwrap();
        assert!((doubled.energy_uj - 2.0 * nb.energy_uj).abs() < 1e-9);

        let mut ltem: RadioConfig = RadioConfig::defaults(Technology::Ltem);
        ltem.rep_ctrl = 1;
        let profile = data::device_profile("r410m-ltem").unwrap();
        let report = ack_energy(&profile, &ltem).unwrap();
        assert_eq!(report.active_ms, 1.0);
    }

    #[test]
    fn rap_durations_match_preamble_formats() {
        let mut radio = nb_radio();
        radio.rep_rap = 1;
        radio.rap_format = RapFormat::NbFmt1;
        assert!((rap_duration(&radio).unwrap() - 6.4).abs() < 0.01);
        radio.rap_format = RapFormat::NbFmt0;
        assert!((rap_duration(&radio).unwrap() - 5.6).abs() < 0.01);

        let mut ltem: RadioConfig = RadioConfig::defaults(Technology::Ltem);
        ltem.rep_rap = 2;
        assert!((rap_duration(&ltem).unwrap() - 1.806).abs() < 1e-9);
    }

    #[test]
    fn rap_energy_hand_value() {
        let radio = nb_radio();
        let report = rap_energy(&n211(), &radio).unwrap();
        let expected = 6.4008 * 742.858;
        assert!((report.energy_uj - expected).abs() / expected < 0.01);
        // linear in repetitions
        let mut doubled = radio.clone();
        doubled.rep_rap = 2;
        let d = rap_energy(&n211(), &doubled).unwrap();
        assert!((d.energy_uj - 2.0 * report.energy_uj).abs() < 1e-9);
        // zero repetitions is a precondition violation
        doubled.rep_rap = 0;
        assert!(matches!(
            rap_energy(&n211(), &doubled),
            Err(ModelError::InvalidRepetitions)
        ));
    }

    #[test]
    fn rx_gap_hand_values() {
        let gaps = GapModel::<f64>::for_technology(Technology::Nbiot);
        assert_eq!(rx_gap_time(14.0, &gaps), 6.0);
        assert_eq!(rx_gap_time(0.0, &gaps), 0.0);
        assert_eq!(rx_gap_time(5.0, &gaps), 3.0);
    }

    #[test]
    fn rx_gap_ratio_converges_to_unavailability() {
        let gaps = GapModel::<f64>::for_technology(Technology::Nbiot);
        let t = 1_000_000.0;
        let ratio = rx_gap_time(t, &gaps) / t;
        assert!((ratio - (20.0 / 14.0 - 1.0)).abs() < 1e-5);
    }

    #[test]
    fn uss_cycle_hand_value() {
        let profile = n211();
        let mut timers = TimerConfig::defaults();
        timers.uss_period_sf = 10;
        timers.uss_monitor_sf = 1;
        let mut radio = nb_radio();
        radio.rep_ctrl = 1;
        let gaps = GapModel::for_technology(Technology::Nbiot);
        let report = uss_cycle_energy(&profile, &timers, &radio, &gaps).unwrap();
        let expected = 222.134 + 177.422 + 9.0 * 21.337;
        assert!((report.energy_uj - expected).abs() < 1e-9);
        // monitoring filling the whole period leaves no sleep
        timers.uss_monitor_sf = 10;
        let full = uss_cycle_energy(&profile, &timers, &radio, &gaps).unwrap();
        assert_eq!(full.sleep_ms, 0.0);
        // doubling control repetitions doubles monitoring time
        timers.uss_monitor_sf = 2;
        radio.rep_ctrl = 2;
        let doubled = uss_cycle_energy(&profile, &timers, &radio, &gaps).unwrap();
        assert_eq!(doubled.active_ms, 4.0);
        radio.rep_ctrl = 16;
        assert!(matches!(
            uss_cycle_energy(&profile, &timers, &radio, &gaps),
            Err(ModelError::MonitoringExceedsPeriod)
        ));
    }

    #[test]
    fn cdrx_cycle_hand_value() {
        let report = cdrx_cycle_energy(&n211(), &TimerConfig::defaults()).unwrap();
        let expected = 885.0 + 21.337 * 1016.0;
        assert!((report.energy_uj - expected).abs() / expected < 0.01);
    }

    #[test]
    fn cdrx_sleep_term_vanishes_when_ondur_fills_cycle() {
        let mut timers = TimerConfig::<f64>::defaults();
        timers.cdrx_ondur_sf = timers.cdrx_long_cycle_sf;
        let report = cdrx_cycle_energy(&n211(), &timers).unwrap();
        assert_eq!(report.sleep_ms, 0.0);
        assert_eq!(report.energy_uj, 885.0);
    }

    #[test]
    fn cdrx_sleep_grows_linearly_with_cycle() {
        let mut timers = TimerConfig::<f64>::defaults();
        let a = cdrx_cycle_energy(&n211(), &timers).unwrap().energy_uj;
        timers.cdrx_long_cycle_sf *= 2;
        let b = cdrx_cycle_energy(&n211(), &timers).unwrap().energy_uj;
        assert!((b - a - 21.337 * 1024.0).abs() < 1e-6);
    }

    #[test]
    fn idrx_cycle_sums_three_terms() {
        let profile = n211();
        let timers = TimerConfig::defaults();
        let report = idrx_cycle_energy(&profile, &timers).unwrap();
        let sleep_ms = 2560.0 - 2.0 - 15.0;
        let expected = 5000.0 + 326.0 + 0.0122 * sleep_ms;
        assert!((report.energy_uj - expected).abs() < 1e-9);
        // paging term is linear in occasions
        let mut t2 = timers;
        t2.n_paging = 2;
        let doubled = idrx_cycle_energy(&profile, &t2).unwrap();
        assert!((doubled.energy_uj - expected - 326.0).abs() < 1e-9);
    }

    #[test]
    fn idrx_cycle_too_short_is_rejected() {
        let mut timers = TimerConfig::<f64>::defaults();
        timers.idrx_cycle_ms = 4.0;
        assert!(matches!(
            idrx_cycle_energy(&n211(), &timers),
            Err(ModelError::CycleTooShort)
        ));
    }

    #[test]
    fn edrx_cycle_hand_value() {
        let profile = n211();
        let timers = TimerConfig::defaults();
        let idrx = idrx_cycle_energy(&profile, &timers).unwrap().energy_uj;
        let report = edrx_cycle_energy(&profile, &timers).unwrap();
        let expected = 2.0 * idrx + 15_360.0 * 0.0122;
        assert!((report.energy_uj - expected).abs() < 1e-6);
    }

    #[test]
    fn edrx_without_ptw_is_pure_sleep() {
        let mut timers = TimerConfig::<f64>::defaults();
        timers.ptw_ms = 0.0;
        let report = edrx_cycle_energy(&n211(), &timers).unwrap();
        assert!((report.energy_uj - 20_480.0 * 0.0122).abs() < 1e-9);
    }

    #[test]
    fn psm_pure_deep_sleep_hand_value() {
        let mut timers = TimerConfig::<f64>::defaults();
        timers.t3324_ms = 0.0;
        let report = psm_cycle_energy(&n211(), &timers, 7_200_000.0, PsMode::PsmIdrx).unwrap();
        assert!((report.energy_uj - 68_400.0).abs() < 1e-6);
    }

    #[test]
    fn psm_boundary_cases() {
        let timers = TimerConfig::<f64>::defaults();
        // interval equal to T3324: no deep-sleep term
        let report = psm_cycle_energy(&n211(), &timers, timers.t3324_ms, PsMode::PsmIdrx).unwrap();
        assert!(!report.breakdown.iter().any(|c| c.label == "PSM_SLEEP"));
        // interval below T3324 is an error
        assert!(matches!(
            psm_cycle_energy(&n211(), &timers, 1000.0, PsMode::PsmIdrx),
            Err(ModelError::ActiveWindowExceedsInterval)
        ));
    }

    #[test]
    fn psm_with_edrx_replaces_the_window_term() {
        let profile = n211();
        let timers = TimerConfig::defaults();
        let edrx = edrx_cycle_energy(&profile, &timers).unwrap().energy_uj;
        let report = psm_cycle_energy(&profile, &timers, 7_200_000.0, PsMode::PsmEdrx).unwrap();
        let n = (60_000.0f64 / 20_480.0).ceil();
        let expected = n * edrx + (7_200_000.0 - 60_000.0) * 0.0095;
        assert!((report.energy_uj - expected).abs() < 1e-6);
    }

    #[test]
    fn reports_conserve_energy() {
        let report = tx_energy(&n211(), &nb_radio(), &nb_tbs(), 5000).unwrap();
        let sum: f64 = report.breakdown.iter().map(|c| c.energy_uj).sum();
        assert_eq!(report.energy_uj, sum);
    }
}
