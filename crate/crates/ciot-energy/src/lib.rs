//! Energy and battery-lifetime model for NB-IoT and LTE-M devices.
//!
//! The crate provides:
//!
//! - a link-budget calculator mapping coupling loss to SNR and coverage
//!   scenarios ([`link_budget`]);
//! - closed-form per-state time/energy models — TX with mandatory gaps,
//!   RX on a partially available downlink, cDRX/iDRX/eDRX/PSM cycles
//!   ([`state_energy`]);
//! - data-driven signalling procedures (attach, service request, release,
//!   resume, TAU) composed from bundled message scripts ([`procedure`]);
//! - transmit-cycle composition, hourly energy, and lifetime estimation
//!   with a sweep engine ([`lifetime`]);
//! - an independent trace oracle that rebuilds a cycle as an explicit power
//!   timeline on a concrete subframe grid and integrates it numerically
//!   ([`trace`]).
//!
//! All numeric code is generic over the scalar type via [`Scalar`]
//! (`f32` or `f64`); the crate root exports `f64` aliases for the common
//! types. Canonical units: milliseconds, milliwatts, microjoules.

pub mod config;
pub mod data;
pub mod error;
pub mod lifetime;
pub mod link_budget;
pub mod procedure;
pub mod profile;
pub mod radio;
pub mod scalar;
pub mod state_energy;
pub mod tbs;
pub mod trace;

pub use error::{ModelError, Result};
pub use scalar::Scalar;

pub use config::{BatteryConfig, CycleSpec, PsMode, TimerConfig, TrafficProfile};
pub use lifetime::{
    cycle_energy, estimate_lifetime, hourly_energy, sweep, tau_count, CycleEnergyBreakdown,
    SweepGrid, SweepRow,
};
pub use link_budget::{
    combined_snr, rx_snr, scenario_radio_config, CoverageScenario, LinkBudget, ScenarioName,
};
pub use procedure::{procedure_energy, service_request_energy, MessageStep, ProcedureScript};
pub use profile::{DeviceProfile, Technology};
pub use radio::{RadioConfig, RapFormat};
pub use state_energy::{GapModel, StateEnergyReport};
pub use tbs::TbsTable;
pub use trace::{build_timeline, compare, compare_with_oracle_tx_gap, integrate, PowerTrace};

/// `f64` concrete aliases for the generic core types.
pub type DeviceProfileF64 = profile::DeviceProfile<f64>;
pub type RadioConfigF64 = radio::RadioConfig<f64>;
pub type CycleSpecF64 = config::CycleSpec<f64>;
pub type TimerConfigF64 = config::TimerConfig<f64>;
pub type BatteryConfigF64 = config::BatteryConfig<f64>;
pub type TrafficProfileF64 = config::TrafficProfile<f64>;
pub type LinkBudgetF64 = link_budget::LinkBudget<f64>;
pub type StateEnergyReportF64 = state_energy::StateEnergyReport<f64>;
pub type CycleEnergyBreakdownF64 = lifetime::CycleEnergyBreakdown<f64>;

/// `f32` concrete aliases.
pub type DeviceProfileF32 = profile::DeviceProfile<f32>;
pub type RadioConfigF32 = radio::RadioConfig<f32>;
pub type CycleSpecF32 = config::CycleSpec<f32>;
pub type TimerConfigF32 = config::TimerConfig<f32>;
pub type BatteryConfigF32 = config::BatteryConfig<f32>;
pub type TrafficProfileF32 = config::TrafficProfile<f32>;
pub type LinkBudgetF32 = link_budget::LinkBudget<f32>;
pub type StateEnergyReportF32 = state_energy::StateEnergyReport<f32>;
pub type CycleEnergyBreakdownF32 = lifetime::CycleEnergyBreakdown<f32>;
