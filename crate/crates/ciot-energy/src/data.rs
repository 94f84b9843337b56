//! Bundled default data: device profiles, TBS tables (checksummed), coverage
//! scenarios, and procedure scripts. Everything ships inside the binary via
//! `include_str!`; setting `CIOT_DATA_DIR` redirects every loader to files of
//! the same layout under that directory instead.

use std::fs;
use std::path::PathBuf;

use crate::error::{ModelError, Result};
use crate::link_budget::CoverageScenario;
use crate::procedure::ProcedureScript;
use crate::profile::{DeviceProfile, Technology};
use crate::scalar::Scalar;
use crate::tbs::TbsTable;

/// Environment variable pointing at an alternative data directory.
pub const DATA_DIR_ENV: &str = "CIOT_DATA_DIR";

/// Bundled device names.
pub const DEVICES: [&str; 3] = ["n211", "r410m-nbiot", "r410m-ltem"];

/// Bundled procedure names (per technology).
pub const PROCEDURES: [&str; 5] = ["attach", "service_request", "release", "resume", "tau"];

struct Bundled {
    path: &'static str,
    content: &'static str,
}

macro_rules! bundled {
    ($path:literal) => {
        Bundled {
            path: $path,
            content: include_str!(concat!("../data/", $path)),
        }
    };
}

const BUNDLE: &[Bundled] = &[
    bundled!("profiles/n211.json"),
    bundled!("profiles/r410m_nbiot.json"),
    bundled!("profiles/r410m_ltem.json"),
    bundled!("tbs/nbiot.csv"),
    bundled!("tbs/ltem.csv"),
    bundled!("tbs/manifest.sha256"),
    bundled!("scenarios.json"),
    bundled!("scripts/nbiot/attach.json"),
    bundled!("scripts/nbiot/service_request.json"),
    bundled!("scripts/nbiot/release.json"),
    bundled!("scripts/nbiot/resume.json"),
    bundled!("scripts/nbiot/tau.json"),
    bundled!("scripts/ltem/attach.json"),
    bundled!("scripts/ltem/service_request.json"),
    bundled!("scripts/ltem/release.json"),
    bundled!("scripts/ltem/resume.json"),
    bundled!("scripts/ltem/tau.json"),
];

fn override_dir() -> Option<PathBuf> {
    std::env::var_os(DATA_DIR_ENV).map(PathBuf::from)
}

/// Raw text of a data file, honouring the `CIOT_DATA_DIR` override.
/// The override is partial: files absent from the override directory fall
/// back to the bundled copies.
pub fn raw(path: &str) -> Result<String> {
    if let Some(dir) = override_dir() {
        let candidate = dir.join(path);
        if candidate.exists() {
            return Ok(fs::read_to_string(candidate)?);
        }
    }
    BUNDLE
        .iter()
        .find(|b| b.path == path)
        .map(|b| b.content.to_string())
        .ok_or_else(|| {
            ModelError::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("no bundled data file `{path}`"),
            ))
        })
}

fn profile_path(device: &str) -> Result<String> {
    match device {
        "n211" => Ok("profiles/n211.json".to_string()),
        "r410m-nbiot" => Ok("profiles/r410m_nbiot.json".to_string()),
        "r410m-ltem" => Ok("profiles/r410m_ltem.json".to_string()),
        other => Err(ModelError::UnknownDevice(other.to_string())),
    }
}

/// Raw JSON of a bundled device profile.
pub fn raw_profile(device: &str) -> Result<String> {
    raw(&profile_path(device)?)
}

/// A validated bundled device profile.
pub fn device_profile<F: Scalar>(device: &str) -> Result<DeviceProfile<F>> {
    crate::profile::load_device_profile(&raw_profile(device)?)
}

/// The checksummed TBS table for a technology.
pub fn tbs_table(technology: Technology) -> Result<TbsTable> {
    let (csv_path, file_name) = match technology {
        Technology::Nbiot => ("tbs/nbiot.csv", "nbiot.csv"),
        Technology::Ltem => ("tbs/ltem.csv", "ltem.csv"),
    };
    let csv = raw(csv_path)?;
    let manifest = raw("tbs/manifest.sha256")?;
    TbsTable::from_csv_checked(technology, &csv, &manifest, file_name)
}

/// The bundled coverage scenarios (good / bad / extreme).
pub fn scenarios() -> Result<Vec<CoverageScenario>> {
    Ok(serde_json::from_str(&raw("scenarios.json")?)?)
}

/// A bundled procedure script for a technology.
pub fn script(technology: Technology, procedure: &str) -> Result<ProcedureScript> {
    if !PROCEDURES.contains(&procedure) {
        return Err(ModelError::UnknownProcedure(procedure.to_string()));
    }
    let tech_dir = match technology {
        Technology::Nbiot => "nbiot",
        Technology::Ltem => "ltem",
    };
    let path = format!("scripts/{tech_dir}/{procedure}.json");
    crate::procedure::load_procedure_script(technology, procedure, &raw(&path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_profiles_validate() {
        for device in DEVICES {
            let profile: DeviceProfile = device_profile(device).unwrap();
            profile.validate().unwrap();
        }
    }

    #[test]
    fn unknown_device_is_rejected() {
        assert!(matches!(
            device_profile::<f64>("nrf9160"),
            Err(ModelError::UnknownDevice(_))
        ));
    }

    #[test]
    fn tbs_tables_load_with_checksum() {
        for tech in [Technology::Nbiot, Technology::Ltem] {
            let table = tbs_table(tech).unwrap();
            assert!(table.max_mcs() >= 10);
        }
    }

    #[test]
    fn all_bundled_scripts_load() {
        for tech in [Technology::Nbiot, Technology::Ltem] {
            for procedure in PROCEDURES {
                let script = script(tech, procedure).unwrap();
                assert!(!script.steps.is_empty());
            }
        }
    }

    #[test]
    fn unknown_procedure_is_rejected() {
        assert!(matches!(
            script(Technology::Nbiot, "detach"),
            Err(ModelError::UnknownProcedure(_))
        ));
    }
}
