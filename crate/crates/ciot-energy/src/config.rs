//! Traffic, battery, timer, and transmit-cycle configuration types.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::profile::DeviceProfile;
use crate::radio::RadioConfig;
use crate::scalar::{lit, Scalar};

pub const MS_PER_HOUR: f64 = 3_600_000.0;

/// Periodic uplink traffic: `payload_bytes` every `cycle_ms`, i.e.
/// `rate_per_hour` transmissions per hour.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct TrafficProfile<F: Scalar = f64> {
    pub payload_bytes: u64,
    pub rate_per_hour: F,
    pub cycle_ms: F,
}

impl<F: Scalar> TrafficProfile<F> {
    pub fn from_cycle_ms(payload_bytes: u64, cycle_ms: F) -> Result<Self> {
        if cycle_ms <= F::zero() {
            return Err(ModelError::InvalidTimer("cycle must be > 0".to_string()));
        }
        Ok(TrafficProfile {
            payload_bytes,
            rate_per_hour: lit::<F>(MS_PER_HOUR) / cycle_ms,
            cycle_ms,
        })
    }

    pub fn from_rate(payload_bytes: u64, rate_per_hour: F) -> Result<Self> {
        if rate_per_hour <= F::zero() {
            return Err(ModelError::InvalidTimer("rate must be > 0".to_string()));
        }
        Ok(TrafficProfile {
            payload_bytes,
            rate_per_hour,
            cycle_ms: lit::<F>(MS_PER_HOUR) / rate_per_hour,
        })
    }

    pub fn payload_bits(&self) -> u64 {
        self.payload_bytes * 8
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct BatteryConfig<F: Scalar = f64> {
    pub capacity_wh: F,
    pub safety_factor: F,
    /// Non-modem (sensor circuitry) consumption, mJ per hour.
    pub e_device_per_hour_mj: F,
}

impl<F: Scalar> BatteryConfig<F> {
    /// 5 Wh, safety factor 1, no sensor overhead.
    pub fn defaults() -> Self {
        BatteryConfig {
            capacity_wh: lit(5.0),
            safety_factor: lit(1.0),
            e_device_per_hour_mj: F::zero(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.capacity_wh <= F::zero() {
            return Err(ModelError::UnitViolation {
                field: "capacity_wh".to_string(),
                detail: "must be > 0".to_string(),
            });
        }
        if self.safety_factor <= F::zero() || self.safety_factor > F::one() {
            return Err(ModelError::UnitViolation {
                field: "safety_factor".to_string(),
                detail: "must be in (0, 1]".to_string(),
            });
        }
        if self.e_device_per_hour_mj < F::zero() {
            return Err(ModelError::UnitViolation {
                field: "e_device_per_hour_mj".to_string(),
                detail: "must be >= 0".to_string(),
            });
        }
        Ok(())
    }
}

/// Network timers controlling the power-saving phases.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct TimerConfig<F: Scalar = f64> {
    pub t3324_ms: F,
    pub t3412_ms: F,
    pub idrx_cycle_ms: F,
    pub idrx_ondur_ms: F,
    pub n_paging: u32,
    pub edrx_cycle_ms: F,
    pub ptw_ms: F,
    pub cdrx_long_cycle_sf: u32,
    pub cdrx_ondur_sf: u32,
    pub uss_period_sf: u32,
    pub uss_monitor_sf: u32,
    /// Duration of the cDRX phase between data exchange and release.
    pub rrc_inactivity_ms: F,
}

impl<F: Scalar> TimerConfig<F> {
    /// Measurement-settings defaults: T3324 60 s, T3412 2 h, PSM.
    pub fn defaults() -> Self {
        TimerConfig {
            t3324_ms: lit(60_000.0),
            t3412_ms: lit(7_200_000.0),
            idrx_cycle_ms: lit(2560.0),
            idrx_ondur_ms: lit(2.0),
            n_paging: 1,
            edrx_cycle_ms: lit(20_480.0),
            ptw_ms: lit(5120.0),
            cdrx_long_cycle_sf: 1024,
            cdrx_ondur_sf: 8,
            uss_period_sf: 16,
            uss_monitor_sf: 1,
            rrc_inactivity_ms: lit(20_000.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t3324_ms > self.t3412_ms {
            return Err(ModelError::InvalidTimer("t3324 > t3412".to_string()));
        }
        if self.ptw_ms > self.edrx_cycle_ms {
            return Err(ModelError::PtwExceedsCycle);
        }
        if self.cdrx_ondur_sf > self.cdrx_long_cycle_sf {
            return Err(ModelError::OnDurExceedsCycle);
        }
        if self.uss_monitor_sf > self.uss_period_sf {
            return Err(ModelError::MonitoringExceedsPeriod);
        }
        let times = [
            self.t3324_ms,
            self.t3412_ms,
            self.idrx_cycle_ms,
            self.idrx_ondur_ms,
            self.edrx_cycle_ms,
            self.ptw_ms,
            self.rrc_inactivity_ms,
        ];
        if times.iter().any(|t| *t < F::zero() || !t.is_finite()) {
            return Err(ModelError::InvalidTimer(
                "timer values must be finite and >= 0".to_string(),
            ));
        }
        Ok(())
    }
}

/// Power-saving mode applied between transmit cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsMode {
    PsmIdrx,
    PsmEdrx,
    EdrxOnly,
    IdrxOnly,
}

/// Full description of one transmit cycle.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct CycleSpec<F: Scalar = f64> {
    pub device: DeviceProfile<F>,
    pub radio: RadioConfig<F>,
    pub traffic: TrafficProfile<F>,
    pub timers: TimerConfig<F>,
    pub ps_mode: PsMode,
    /// Attach (first cycle after power-up) instead of service request.
    pub first_cycle_attach: bool,
    /// Fraction of subframes available for data reception.
    pub downlink_availability: F,
}

impl<F: Scalar> CycleSpec<F> {
    pub fn new(
        device: DeviceProfile<F>,
        radio: RadioConfig<F>,
        traffic: TrafficProfile<F>,
        timers: TimerConfig<F>,
    ) -> Self {
        CycleSpec {
            device,
            radio,
            traffic,
            timers,
            ps_mode: PsMode::PsmIdrx,
            first_cycle_attach: false,
            downlink_availability: lit(14.0 / 20.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.device.validate()?;
        self.timers.validate()?;
        if self.device.technology != self.radio.technology {
            return Err(ModelError::TechnologyMismatch);
        }
        if self.downlink_availability <= F::zero() || self.downlink_availability > F::one() {
            return Err(ModelError::UnitViolation {
                field: "downlink_availability".to_string(),
                detail: "must be in (0, 1]".to_string(),
            });
        }
        if self.traffic.cycle_ms < self.timers.t3324_ms {
            return Err(ModelError::InvalidTimer(
                "transmit cycle shorter than the T3324 reachable window".to_string(),
            ));
        }
        Ok(())
    }
}
