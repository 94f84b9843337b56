//! Property-based invariants of the model: monotonicity of energy and
//! lifetime in the operational knobs, conservation of the cycle breakdown,
//! and exactness of the trace-oracle TX comparison.

use proptest::prelude::*;

use ciot_energy::config::{BatteryConfig, CycleSpec, TimerConfig, TrafficProfile, MS_PER_HOUR};
use ciot_energy::data;
use ciot_energy::lifetime::{cycle_energy, estimate_lifetime};
use ciot_energy::profile::Technology;
use ciot_energy::radio::RadioConfig;
use ciot_energy::state_energy::tx_energy;
use ciot_energy::tbs::TbsTable;
use ciot_energy::trace::compare_tx_only;

fn nb_tbs() -> TbsTable {
    data::tbs_table(Technology::Nbiot).unwrap()
}

fn spec(payload_bytes: u64, cycle_hours: f64, t3412_hours: f64) -> CycleSpec {
    let profile: ciot_energy::DeviceProfileF64 = data::device_profile("n211").unwrap();
    let radio = RadioConfig::defaults(Technology::Nbiot);
    let traffic = TrafficProfile::from_cycle_ms(payload_bytes, cycle_hours * MS_PER_HOUR).unwrap();
    let mut timers = TimerConfig::defaults();
    timers.t3412_ms = t3412_hours * MS_PER_HOUR;
    if timers.t3324_ms > timers.t3412_ms {
        timers.t3324_ms = timers.t3412_ms;
    }
    CycleSpec::new(profile, radio, traffic, timers)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tx_energy_non_decreasing_in_payload(
        payload in 0u64..100_000,
        delta in 1u64..10_000,
        rep in 1u32..32,
    ) {
        let profile: ciot_energy::DeviceProfileF64 = data::device_profile("n211").unwrap();
        let mut radio = RadioConfig::defaults(Technology::Nbiot);
        radio.rep_data_ul = rep;
        let tbs = nb_tbs();
        let small = tx_energy(&profile, &radio, &tbs, payload).unwrap().energy_uj;
        let large = tx_energy(&profile, &radio, &tbs, payload + delta).unwrap().energy_uj;
        prop_assert!(large >= small);
    }

    #[test]
    fn tx_energy_non_decreasing_in_repetitions(
        payload in 1u64..100_000,
        rep in 1u32..31,
    ) {
        let profile: ciot_energy::DeviceProfileF64 = data::device_profile("n211").unwrap();
        let tbs = nb_tbs();
        let mut radio = RadioConfig::defaults(Technology::Nbiot);
        radio.rep_data_ul = rep;
        let low = tx_energy(&profile, &radio, &tbs, payload).unwrap().energy_uj;
        radio.rep_data_ul = rep + 1;
        let high = tx_energy(&profile, &radio, &tbs, payload).unwrap().energy_uj;
        prop_assert!(high >= low);
    }

    #[test]
    fn mcs_increase_never_increases_tx_energy(
        payload in 1u64..100_000,
        mcs in 0u8..10,
    ) {
        let profile: ciot_energy::DeviceProfileF64 = data::device_profile("n211").unwrap();
        let tbs = nb_tbs();
        let mut radio = RadioConfig::defaults(Technology::Nbiot);
        radio.mcs = mcs;
        let low = tx_energy(&profile, &radio, &tbs, payload).unwrap().energy_uj;
        radio.mcs = mcs + 1;
        let high = tx_energy(&profile, &radio, &tbs, payload).unwrap().energy_uj;
        prop_assert!(high <= low, "mcs {mcs}->{}: {low} -> {high}", mcs + 1);
    }

    #[test]
    fn lifetime_non_increasing_in_payload(
        payload in 1u64..10_000,
        delta in 1u64..10_000,
        cycle_h in 1.0f64..48.0,
    ) {
        let tbs = nb_tbs();
        let battery = BatteryConfig::defaults();
        let a = estimate_lifetime(&spec(payload, cycle_h, 2.0), &tbs, &battery).unwrap();
        let b = estimate_lifetime(&spec(payload + delta, cycle_h, 2.0), &tbs, &battery).unwrap();
        prop_assert!(b <= a * (1.0 + 1e-9));
    }

    #[test]
    fn lifetime_non_increasing_in_rate(
        payload in 1u64..10_000,
        cycle_h in 0.1f64..2.0,
        ratio in 0.1f64..0.95,
    ) {
        // higher rate = shorter cycle; sampled within one TAU regime
        // (cycle <= T3412 = 2 h), since crossing a TAU-count boundary
        // produces the deliberate turning-point sawtooth
        let tbs = nb_tbs();
        let battery = BatteryConfig::defaults();
        let slow = estimate_lifetime(&spec(payload, cycle_h, 2.0), &tbs, &battery).unwrap();
        let fast_cycle = (cycle_h * ratio).max(0.05);
        let fast = estimate_lifetime(&spec(payload, fast_cycle, 2.0), &tbs, &battery).unwrap();
        prop_assert!(fast <= slow * (1.0 + 1e-9));
    }

    #[test]
    fn lifetime_non_decreasing_in_t3412(
        payload in 1u64..10_000,
        cycle_h in 1.0f64..48.0,
        t3412_h in 0.5f64..24.0,
        factor in 1.1f64..4.0,
    ) {
        let tbs = nb_tbs();
        let battery = BatteryConfig::defaults();
        let short = estimate_lifetime(&spec(payload, cycle_h, t3412_h), &tbs, &battery).unwrap();
        let long = estimate_lifetime(&spec(payload, cycle_h, t3412_h * factor), &tbs, &battery).unwrap();
        prop_assert!(long >= short * (1.0 - 1e-9));
    }

    #[test]
    fn breakdown_components_sum_to_total(
        payload in 0u64..10_000,
        cycle_h in 1.0f64..72.0,
        t3412_h in 0.5f64..24.0,
    ) {
        let s = spec(payload, cycle_h, t3412_h);
        let b = cycle_energy(&s, &nb_tbs()).unwrap();
        let sum: f64 = b.parts().iter().sum();
        prop_assert!(b.parts().iter().all(|p| *p >= 0.0));
        prop_assert_eq!(sum, b.total_uj);
    }

    #[test]
    fn oracle_tx_comparison_is_exact_for_all_payloads(
        payload in 0u64..200_000,
        rep in 1u32..32,
    ) {
        let profile: ciot_energy::DeviceProfileF64 = data::device_profile("n211").unwrap();
        let mut radio = RadioConfig::defaults(Technology::Nbiot);
        radio.rep_data_ul = rep;
        let c = compare_tx_only(&profile, &radio, &nb_tbs(), payload).unwrap();
        prop_assert!(c.relative_error < 1e-12);
    }
}
