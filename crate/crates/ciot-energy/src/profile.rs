//! Device profiles: the measured per-state power and energy constants of a
//! specific modem, loaded from JSON and validated at load time.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Technology {
    Nbiot,
    Ltem,
}

impl Technology {
    pub fn as_str(&self) -> &'static str {
        match self {
            Technology::Nbiot => "nbiot",
            Technology::Ltem => "ltem",
        }
    }
}

impl std::fmt::Display for Technology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which measured power level stands in for the inter-message delay power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PDelayMode {
    AsRx,
    AsCdrxSleep,
}

/// Measured per-state power/energy constants of one modem.
///
/// Powers are mW, energies mJ, times ms, matching the unit suffixes in the
/// JSON schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct DeviceProfile<F: Scalar = f64> {
    pub name: String,
    pub technology: Technology,
    pub p_tx_mw: F,
    /// (uplink TX power dBm, consumption mW) knots, monotone in both axes.
    pub tx_power_curve: Vec<(F, F)>,
    #[serde(default)]
    pub p_tx_gaps_mw: F,
    pub p_rx_mw: F,
    pub p_rx_gaps_mw: F,
    pub p_cdrx_sleep_mw: F,
    pub e_cdrx_ondur_mj: F,
    pub t_cdrx_ondur_ms: F,
    pub p_edrx_sleep_mw: F,
    pub e_edrx_ondur_mj: F,
    pub t_edrx_ondur_ms: F,
    pub p_psm_sleep_mw: F,
    pub e_sync_mj: F,
    pub t_sync_ms: F,
    pub e_paging_mj: F,
    pub e_idrx_sync_mj: F,
    pub t_idrx_sync_ms: F,
    pub p_delay_mode: PDelayMode,
    /// Measured delays between message exchanges, keyed by transition name.
    #[serde(default)]
    pub delay_table_ms: BTreeMap<String, F>,
}

/// Parse and validate a device profile document.
pub fn load_device_profile<F: Scalar>(document: &str) -> Result<DeviceProfile<F>> {
    let profile: DeviceProfile<F> = serde_json::from_str(document)?;
    profile.validate()?;
    Ok(profile)
}

impl<F: Scalar> DeviceProfile<F> {
    pub fn validate(&self) -> Result<()> {
        let nonneg: [(&str, F); 14] = [
            ("p_tx_mw", self.p_tx_mw),
            ("p_tx_gaps_mw", self.p_tx_gaps_mw),
            ("p_rx_mw", self.p_rx_mw),
            ("p_rx_gaps_mw", self.p_rx_gaps_mw),
            ("p_cdrx_sleep_mw", self.p_cdrx_sleep_mw),
            ("e_cdrx_ondur_mj", self.e_cdrx_ondur_mj),
            ("t_cdrx_ondur_ms", self.t_cdrx_ondur_ms),
            ("p_edrx_sleep_mw", self.p_edrx_sleep_mw),
            ("e_edrx_ondur_mj", self.e_edrx_ondur_mj),
            ("p_psm_sleep_mw", self.p_psm_sleep_mw),
            ("e_sync_mj", self.e_sync_mj),
            ("t_sync_ms", self.t_sync_ms),
            ("e_paging_mj", self.e_paging_mj),
            ("e_idrx_sync_mj", self.e_idrx_sync_mj),
        ];
        for (field, value) in nonneg {
            if value < F::zero() || !value.is_finite() {
                return Err(ModelError::UnitViolation {
                    field: field.to_string(),
                    detail: format!("must be finite and >= 0, got {value}"),
                });
            }
        }
        for delay in self.delay_table_ms.values() {
            if *delay < F::zero() {
                return Err(ModelError::UnitViolation {
                    field: "delay_table_ms".to_string(),
                    detail: "delays must be >= 0".to_string(),
                });
            }
        }
        if !(self.p_psm_sleep_mw <= self.p_edrx_sleep_mw
            && self.p_edrx_sleep_mw <= self.p_cdrx_sleep_mw
            && self.p_cdrx_sleep_mw <= self.p_rx_mw)
        {
            return Err(ModelError::OrderingViolation(format!(
                "{} / {} / {} / {}",
                self.p_psm_sleep_mw, self.p_edrx_sleep_mw, self.p_cdrx_sleep_mw, self.p_rx_mw
            )));
        }
        if self.tx_power_curve.is_empty() {
            return Err(ModelError::MissingField("tx_power_curve".to_string()));
        }
        for pair in self.tx_power_curve.windows(2) {
            if pair[1].0 <= pair[0].0 || pair[1].1 < pair[0].1 {
                return Err(ModelError::UnitViolation {
                    field: "tx_power_curve".to_string(),
                    detail: "curve must be strictly increasing in dBm and non-decreasing in mW"
                        .to_string(),
                });
            }
        }
        Ok(())
    }

    /// Power consumed while delaying between message exchanges.
    pub fn p_delay_mw(&self) -> F {
        match self.p_delay_mode {
            PDelayMode::AsRx => self.p_rx_mw,
            PDelayMode::AsCdrxSleep => self.p_cdrx_sleep_mw,
        }
    }

    pub fn delay_ms(&self, key: &str) -> F {
        self.delay_table_ms.get(key).copied().unwrap_or(F::zero())
    }
}

/// Piecewise-linear interpolation of TX-state power over the profile curve.
pub fn tx_power_consumption<F: Scalar>(profile: &DeviceProfile<F>, ul_power_dbm: F) -> Result<F> {
    let curve = &profile.tx_power_curve;
    let first = curve.first().expect("validated non-empty");
    let last = curve.last().expect("validated non-empty");
    if ul_power_dbm < first.0 || ul_power_dbm > last.0 {
        return Err(ModelError::PowerOutOfDomain(ul_power_dbm.as_f64()));
    }
    for pair in curve.windows(2) {
        let (x0, y0) = pair[0];
        let (x1, y1) = pair[1];
        if ul_power_dbm <= x1 {
            let t = (ul_power_dbm - x0) / (x1 - x0);
            return Ok(y0 + t * (y1 - y0));
        }
    }
    Ok(last.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn bundled_n211_matches_measured_constants() {
        let p: DeviceProfile = data::device_profile("n211").unwrap();
        assert_eq!(p.technology, Technology::Nbiot);
        assert_eq!(p.p_tx_mw, 742.858);
        assert_eq!(p.p_tx_gaps_mw, 153.6);
        assert_eq!(p.p_rx_mw, 222.134);
        assert_eq!(p.p_psm_sleep_mw, 0.0095);
        assert_eq!(p.e_sync_mj, 160.0);
        assert_eq!(p.t_sync_ms, 2200.0);
        assert_eq!(p.p_delay_mode, PDelayMode::AsCdrxSleep);
    }

    #[test]
    fn bundled_r410m_ltem_matches_measured_constants() {
        let p: DeviceProfile = data::device_profile("r410m-ltem").unwrap();
        assert_eq!(p.technology, Technology::Ltem);
        assert_eq!(p.p_tx_mw, 1322.157);
        assert_eq!(p.p_rx_mw, 335.607);
        assert_eq!(p.e_sync_mj, 1095.0);
        assert_eq!(p.t_sync_ms, 4740.0);
        assert_eq!(p.p_delay_mode, PDelayMode::AsRx);
    }

    #[test]
    fn sleep_power_ordering_is_enforced() {
        let mut doc: serde_json::Value =
            serde_json::from_str(&data::raw_profile("n211").unwrap()).unwrap();
        doc["p_psm_sleep_mw"] = serde_json::json!(500.0);
        let err = load_device_profile::<f64>(&doc.to_string()).unwrap_err();
        assert!(matches!(err, ModelError::OrderingViolation(_)));
    }

    #[test]
    fn negative_power_is_a_unit_violation() {
        let mut doc: serde_json::Value =
            serde_json::from_str(&data::raw_profile("n211").unwrap()).unwrap();
        doc["p_rx_mw"] = serde_json::json!(-1.0);
        let err = load_device_profile::<f64>(&doc.to_string()).unwrap_err();
        assert!(matches!(err, ModelError::UnitViolation { .. }));
    }

    #[test]
    fn missing_field_is_reported_by_name() {
        let mut doc: serde_json::Value =
            serde_json::from_str(&data::raw_profile("n211").unwrap()).unwrap();
        doc.as_object_mut().unwrap().remove("p_rx_mw");
        let err = load_device_profile::<f64>(&doc.to_string()).unwrap_err();
        assert!(matches!(err, ModelError::MissingField(f) if f == "p_rx_mw"));
    }

    #[test]
    fn profile_roundtrips_through_serialization() {
        let p: DeviceProfile = data::device_profile("r410m-nbiot").unwrap();
        let json = serde_json::to_string(&p).unwrap();
        let back = load_device_profile::<f64>(&json).unwrap();
        assert_eq!(
            serde_json::to_value(&p).unwrap(),
            serde_json::to_value(&back).unwrap()
        );
    }

    #[test]
    fn tx_power_at_23_dbm_is_the_reference_level() {
        let p: DeviceProfile = data::device_profile("n211").unwrap();
        assert_eq!(tx_power_consumption(&p, 23.0).unwrap(), 742.858);
    }

    #[test]
    fn tx_power_interpolates_linearly_between_knots() {
        let p: DeviceProfile = data::device_profile("n211").unwrap();
        // tabulated knot
        assert_eq!(tx_power_consumption(&p, 10.0).unwrap(), 220.0);
        // midpoint of (10, 220) and (15, 350)
        assert_eq!(tx_power_consumption(&p, 12.5).unwrap(), 285.0);
    }

    #[test]
    fn tx_power_outside_curve_is_rejected() {
        let p: DeviceProfile = data::device_profile("n211").unwrap();
        assert!(matches!(
            tx_power_consumption(&p, 24.0),
            Err(ModelError::PowerOutOfDomain(_))
        ));
        assert!(tx_power_consumption(&p, -30.0).is_err());
    }

    #[test]
    fn tx_power_is_monotone_over_the_domain() {
        let p: DeviceProfile = data::device_profile("r410m-ltem").unwrap();
        let mut prev = 0.0;
        let mut dbm = -20.0;
        while dbm <= 23.0 {
            let pw = tx_power_consumption(&p, dbm).unwrap();
            assert!(pw >= prev, "not monotone at {dbm} dBm");
            prev = pw;
            dbm += 0.25;
        }
    }
}
