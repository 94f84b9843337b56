use thiserror::Error;

/// Errors raised while loading or evaluating the model.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("missing field: {0}")]
    MissingField(String),
    #[error("unit violation in `{field}`: {detail}")]
    UnitViolation { field: String, detail: String },
    #[error("sleep-power ordering violated: expected p_psm_sleep <= p_edrx_sleep <= p_cdrx_sleep <= p_rx, got {0}")]
    OrderingViolation(String),
    #[error("TBS lookup out of domain: mcs={mcs}, units={units} ({technology})")]
    OutOfDomain {
        technology: String,
        mcs: u8,
        units: u32,
    },
    #[error("TBS table not monotone at mcs={mcs}, units={units}")]
    TableNotMonotone { mcs: u8, units: u32 },
    #[error("TBS table checksum mismatch for {file}")]
    ChecksumMismatch { file: String },
    #[error("TX power {0} dBm outside the profile curve domain")]
    PowerOutOfDomain(f64),
    #[error("repetition count must be >= 1")]
    InvalidRepetitions,
    #[error("header size {header} bits leaves no usable capacity in a {tbs}-bit transport block")]
    HeaderExceedsTbs { tbs: u32, header: u32 },
    #[error("unknown RAP format for this technology")]
    UnknownFormat,
    #[error("USS monitoring time exceeds the search-space period")]
    MonitoringExceedsPeriod,
    #[error("cDRX OnDuration exceeds the LongDRX cycle")]
    OnDurExceedsCycle,
    #[error("iDRX cycle shorter than OnDuration plus synchronization")]
    CycleTooShort,
    #[error("paging time window exceeds the eDRX cycle")]
    PtwExceedsCycle,
    #[error("reachable window T3324 exceeds the inter-event interval")]
    ActiveWindowExceedsInterval,
    #[error("scenario `{scenario}` is unreachable for {technology}: coupling loss beyond the technology's link budget")]
    Unreachable {
        scenario: String,
        technology: String,
    },
    #[error("procedure script is empty")]
    EmptyScript,
    #[error("negative message size in step `{0}`")]
    NegativeSize(String),
    #[error("script technology does not match the device profile")]
    TechnologyMismatch,
    #[error("invalid timer: {0}")]
    InvalidTimer(String),
    #[error("sweep grid is empty")]
    EmptyGrid,
    #[error("zero hourly consumption: lifetime is unbounded")]
    ZeroConsumption,
    #[error("unknown device profile `{0}`")]
    UnknownDevice(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("unknown procedure `{0}`")]
    UnknownProcedure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for ModelError {
    fn from(e: serde_json::Error) -> Self {
        let msg = e.to_string();
        if let Some(rest) = msg.strip_prefix("missing field `") {
            if let Some(field) = rest.split('`').next() {
                return ModelError::MissingField(field.to_string());
            }
        }
        ModelError::Parse(msg)
    }
}

impl From<csv::Error> for ModelError {
    fn from(e: csv::Error) -> Self {
        ModelError::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, ModelError>;
