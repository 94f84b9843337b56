//! `ciot` — battery-lifetime estimation for NB-IoT and LTE-M devices.
//!
//! Subcommands: `estimate` (one configuration), `sweep` (parameter grid to
//! CSV, optionally with SVG charts), `validate` (closed-form model against
//! the trace oracle), `trace` (power-timeline CSV export), `scenarios`
//! (list bundled coverage scenarios).
//!
//! Exit codes: 0 success, 1 validation exceedance, 2 configuration error,
//! 3 unreachable coverage scenario.

mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use ciot_energy::lifetime::HOURS_PER_YEAR;
use ciot_energy::{
    build_timeline, compare_with_oracle_tx_gap, cycle_energy, data, estimate_lifetime,
    hourly_energy, scenario_radio_config, sweep, BatteryConfigF64, CycleSpecF64, DeviceProfileF64,
    ModelError, ScenarioName, SweepGrid, TbsTable, Technology, TimerConfigF64, TrafficProfileF64,
};

const EXIT_EXCEEDANCE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_UNREACHABLE: u8 = 3;

const MS_PER_HOUR: f64 = 3_600_000.0;
const DEFAULT_TOLERANCE: f64 = 0.01;
const STANDARD_TX_GAP_MS: u64 = 40;

#[derive(Parser)]
#[command(
    name = "ciot",
    version,
    about = "Battery-lifetime estimation for NB-IoT and LTE-M devices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate cycle energy and battery lifetime for one configuration.
    Estimate(SpecArgs),
    /// Evaluate a parameter grid and write one CSV row per point.
    Sweep(SweepArgs),
    /// Compare the closed-form model against the trace oracle.
    Validate(ValidateArgs),
    /// Export the power timeline of one configuration as CSV.
    Trace(TraceArgs),
    /// List the bundled coverage scenarios.
    Scenarios,
}

#[derive(Args, Default)]
struct SpecArgs {
    /// Device profile name (n211, r410m-nbiot, r410m-ltem).
    #[arg(long)]
    device: Option<String>,
    /// Coverage scenario: good, bad or extreme.
    #[arg(long)]
    scenario: Option<String>,
    /// Application payload per cycle, bytes.
    #[arg(long)]
    payload: Option<u64>,
    /// Transmit cycle (inter-event interval), hours.
    #[arg(long)]
    cycle_hours: Option<f64>,
    /// Periodic TAU timer T3412, hours.
    #[arg(long)]
    t3412_hours: Option<f64>,
    /// Reachable-window timer T3324, seconds.
    #[arg(long)]
    t3324_seconds: Option<f64>,
    /// Battery capacity, Wh.
    #[arg(long)]
    battery_wh: Option<f64>,
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output format: text, csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Device profile names (repeat or comma-separate).
    #[arg(long, value_delimiter = ',')]
    device: Vec<String>,
    /// Coverage scenarios (repeat or comma-separate).
    #[arg(long, value_delimiter = ',')]
    scenario: Vec<String>,
    /// Payload sizes in bytes (repeat or comma-separate).
    #[arg(long, value_delimiter = ',')]
    payload: Vec<u64>,
    /// Transmit cycles in hours (repeat or comma-separate).
    #[arg(long, value_delimiter = ',')]
    cycle_hours: Vec<f64>,
    /// T3412 values in hours (repeat or comma-separate).
    #[arg(long, value_delimiter = ',')]
    t3412_hours: Vec<f64>,
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the CSV to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Emit one SVG chart per figure recipe next to the output CSV.
    #[arg(long)]
    plot: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// JSON run configuration with an optional `specs` list.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Relative-error tolerance (default 0.01).
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Emit a pure PSM interval of `--cycle-hours` instead of a full cycle.
    #[arg(long)]
    psm_only: bool,
}

/// JSON run configuration accepted by `--config`. Every field is optional;
/// command-line flags take precedence.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RunConfig {
    device: Option<String>,
    scenario: Option<String>,
    payload_bytes: Option<u64>,
    cycle_hours: Option<f64>,
    t3412_hours: Option<f64>,
    t3324_seconds: Option<f64>,
    battery_wh: Option<f64>,
    safety_factor: Option<f64>,
    e_device_per_hour_mj: Option<f64>,
    format: Option<String>,
    output: Option<PathBuf>,
    grid: Option<GridConfig>,
    specs: Option<Vec<SpecPoint>>,
    tolerance: Option<f64>,
    /// Fault-injection knob: overrides the oracle's TX-gap duration so the
    /// validation failure path can be exercised. Standard value is 40.
    oracle_tx_gap_ms: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridConfig {
    devices: Vec<String>,
    scenarios: Vec<String>,
    payload_bytes: Vec<u64>,
    cycle_hours: Vec<f64>,
    t3412_hours: Vec<f64>,
}

/// One point of a validation matrix.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecPoint {
    device: String,
    scenario: String,
    payload_bytes: u64,
    cycle_hours: f64,
    #[serde(default = "default_t3412_hours")]
    t3412_hours: f64,
}

fn default_t3412_hours() -> f64 {
    2.0
}

/// Fully resolved single-point parameters (flags over config over defaults).
struct Params {
    device: String,
    scenario: String,
    payload_bytes: u64,
    cycle_hours: f64,
    t3412_hours: f64,
    t3324_seconds: f64,
    battery: BatteryConfigF64,
    format: Format,
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Text,
    Csv,
    Json,
}

/// CLI failure carrying the process exit code.
struct CliError {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, CliError>;

fn config_error(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_CONFIG,
        message: message.into(),
    }
}

/// Map a model error to an exit code; `Unreachable` cites the scenario's
/// maximum coupling loss, everything else is a configuration error.
fn model_error(e: ModelError) -> CliError {
    if let ModelError::Unreachable {
        ref scenario,
        ref technology,
    } = e
    {
        let mcl = data::scenarios()
            .ok()
            .and_then(|list| {
                list.iter()
                    .find(|s| s.name.as_str() == scenario)
                    .map(|s| s.mcl_db)
            })
            .map(|db| format!(" ({db:.0} dB maximum coupling loss)"))
            .unwrap_or_default();
        return CliError {
            code: EXIT_UNREACHABLE,
            message: format!(
                "scenario `{scenario}`{mcl} is unreachable for {technology}: \
                 no (MCS, repetitions) assignment closes the link"
            ),
        };
    }
    config_error(e.to_string())
}

fn load_config(path: Option<&Path>) -> CliResult<RunConfig> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| config_error(format!("config file `{}`: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| config_error(format!("config file `{}`: {e}", path.display())))
}

fn parse_format(s: &str) -> CliResult<Format> {
    match s {
        "text" => Ok(Format::Text),
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(config_error(format!(
            "format: unknown value `{other}` (expected text, csv or json)"
        ))),
    }
}

impl Params {
    /// Measurement-settings defaults: payload 100 B, cycle 24 h, T3412 2 h,
    /// T3324 60 s, 5 Wh battery, safety factor 1. The device has no default.
    fn resolve(args: &SpecArgs, cfg: &RunConfig) -> CliResult<Params> {
        let device = args
            .device
            .clone()
            .or_else(|| cfg.device.clone())
            .ok_or_else(|| config_error("device: missing (pass --device or set it in --config)"))?;
        let mut battery = BatteryConfigF64::defaults();
        if let Some(wh) = args.battery_wh.or(cfg.battery_wh) {
            battery.capacity_wh = wh;
        }
        if let Some(sf) = cfg.safety_factor {
            battery.safety_factor = sf;
        }
        if let Some(e) = cfg.e_device_per_hour_mj {
            battery.e_device_per_hour_mj = e;
        }
        battery.validate().map_err(model_error)?;
        let format = match args.format.as_deref().or(cfg.format.as_deref()) {
            Some(s) => parse_format(s)?,
            None => Format::Text,
        };
        Ok(Params {
            device,
            scenario: args
                .scenario
                .clone()
                .or_else(|| cfg.scenario.clone())
                .unwrap_or_else(|| "good".to_string()),
            payload_bytes: args.payload.or(cfg.payload_bytes).unwrap_or(100),
            cycle_hours: args.cycle_hours.or(cfg.cycle_hours).unwrap_or(24.0),
            t3412_hours: args.t3412_hours.or(cfg.t3412_hours).unwrap_or(2.0),
            t3324_seconds: args.t3324_seconds.or(cfg.t3324_seconds).unwrap_or(60.0),
            battery,
            format,
            output: args.output.clone().or_else(|| cfg.output.clone()),
        })
    }
}

/// Build the cycle spec for one (device, scenario, payload, cycle, T3412)
/// point; T3324 is clamped to both T3412 and the cycle.
fn build_spec(
    device: &str,
    scenario: &str,
    payload_bytes: u64,
    cycle_hours: f64,
    t3412_hours: f64,
    t3324_seconds: f64,
) -> Result<(CycleSpecF64, TbsTable), ModelError> {
    let profile: DeviceProfileF64 = data::device_profile(device)?;
    let technology = profile.technology;
    let name = ScenarioName::parse(scenario)?;
    let scenarios = data::scenarios()?;
    let scenario = scenarios
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| ModelError::UnknownScenario(name.as_str().to_string()))?;
    let radio = scenario_radio_config::<f64>(scenario, technology)?;
    let tbs = data::tbs_table(technology)?;
    let cycle_ms = cycle_hours * MS_PER_HOUR;
    let traffic = TrafficProfileF64::from_cycle_ms(payload_bytes, cycle_ms)?;
    let mut timers = TimerConfigF64::defaults();
    timers.t3412_ms = t3412_hours * MS_PER_HOUR;
    timers.t3324_ms = (t3324_seconds * 1000.0).min(timers.t3412_ms).min(cycle_ms);
    let spec = CycleSpecF64::new(profile, radio, traffic, timers);
    spec.validate()?;
    Ok((spec, tbs))
}

/// Single-point report: the sweep-row schema plus T3324 and battery columns.
#[derive(Serialize)]
struct EstimateReport {
    device: String,
    technology: String,
    scenario: String,
    payload_bytes: u64,
    cycle_hours: f64,
    t3412_hours: f64,
    t3324_seconds: f64,
    battery_wh: f64,
    e_cycle_mj: f64,
    e_sync_mj: f64,
    e_sr_mj: f64,
    e_cdrx_mj: f64,
    e_release_mj: f64,
    e_tau_mj: f64,
    e_sleep_mj: f64,
    tau_count: u64,
    e_hour_mj: f64,
    lifetime_hours: f64,
    lifetime_years: f64,
}

fn write_output(path: Option<&Path>, content: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| config_error(format!("output `{}`: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_estimate(args: &SpecArgs) -> CliResult<()> {
    let cfg = load_config(args.config.as_deref())?;
    let p = Params::resolve(args, &cfg)?;
    let (spec, tbs) = build_spec(
        &p.device,
        &p.scenario,
        p.payload_bytes,
        p.cycle_hours,
        p.t3412_hours,
        p.t3324_seconds,
    )
    .map_err(model_error)?;
    let breakdown = cycle_energy(&spec, &tbs).map_err(model_error)?;
    let e_hour = hourly_energy(&spec, &tbs).map_err(model_error)?;
    let lifetime = estimate_lifetime(&spec, &tbs, &p.battery).map_err(model_error)?;
    let technology = match spec.device.technology {
        Technology::Nbiot => "nbiot",
        Technology::Ltem => "ltem",
    };
    let report = EstimateReport {
        device: p.device.clone(),
        technology: technology.to_string(),
        scenario: p.scenario.clone(),
        payload_bytes: p.payload_bytes,
        cycle_hours: p.cycle_hours,
        t3412_hours: p.t3412_hours,
        t3324_seconds: spec.timers.t3324_ms / 1000.0,
        battery_wh: p.battery.capacity_wh,
        e_cycle_mj: breakdown.total_uj / 1000.0,
        e_sync_mj: breakdown.e_sync_uj / 1000.0,
        e_sr_mj: breakdown.e_sr_uj / 1000.0,
        e_cdrx_mj: breakdown.e_cdrx_uj / 1000.0,
        e_release_mj: breakdown.e_release_uj / 1000.0,
        e_tau_mj: breakdown.e_tau_uj / 1000.0,
        e_sleep_mj: breakdown.e_sleep_uj / 1000.0,
        tau_count: breakdown.tau_count,
        e_hour_mj: e_hour,
        lifetime_hours: lifetime,
        lifetime_years: lifetime / HOURS_PER_YEAR,
    };
    let out = match p.format {
        Format::Text => render_estimate_text(&report),
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&report).map_err(|e| config_error(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(&report)
                .and_then(|()| w.flush().map_err(Into::into))
                .map_err(|e| config_error(e.to_string()))?;
            String::from_utf8(w.into_inner().expect("flushed writer")).expect("csv output is UTF-8")
        }
    };
    write_output(p.output.as_deref(), &out)
}

fn render_estimate_text(r: &EstimateReport) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "device            {} ({})\n",
        r.device, r.technology
    ));
    s.push_str(&format!("scenario          {}\n", r.scenario));
    s.push_str(&format!("payload           {} B\n", r.payload_bytes));
    s.push_str(&format!(
        "cycle             {} h   (T3412 {} h, {} TAU per cycle)\n",
        r.cycle_hours, r.t3412_hours, r.tau_count
    ));
    s.push_str(&format!("battery           {} Wh\n", r.battery_wh));
    s.push_str(&format!("energy per cycle  {:.3} mJ\n", r.e_cycle_mj));
    s.push_str(&format!("  sync            {:.3} mJ\n", r.e_sync_mj));
    s.push_str(&format!("  service request {:.3} mJ\n", r.e_sr_mj));
    s.push_str(&format!("  cDRX            {:.3} mJ\n", r.e_cdrx_mj));
    s.push_str(&format!("  release         {:.3} mJ\n", r.e_release_mj));
    s.push_str(&format!("  TAU             {:.3} mJ\n", r.e_tau_mj));
    s.push_str(&format!("  sleep           {:.3} mJ\n", r.e_sleep_mj));
    s.push_str(&format!("energy per hour   {:.3} mJ\n", r.e_hour_mj));
    s.push_str(&format!(
        "lifetime          {:.0} h ({:.2} years)\n",
        r.lifetime_hours, r.lifetime_years
    ));
    s
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<()> {
    let cfg = load_config(args.config.as_deref())?;
    let from_cfg = cfg.grid.as_ref();
    let pick_str = |flag: &[String], cfg_axis: Option<&Vec<String>>| -> Vec<String> {
        if !flag.is_empty() {
            flag.to_vec()
        } else {
            cfg_axis.cloned().unwrap_or_default()
        }
    };
    let devices = pick_str(&args.device, from_cfg.map(|g| &g.devices));
    let scenario_names = pick_str(&args.scenario, from_cfg.map(|g| &g.scenarios));
    let payloads = if !args.payload.is_empty() {
        args.payload.clone()
    } else {
        from_cfg
            .map(|g| g.payload_bytes.clone())
            .unwrap_or_default()
    };
    let cycles = if !args.cycle_hours.is_empty() {
        args.cycle_hours.clone()
    } else {
        from_cfg.map(|g| g.cycle_hours.clone()).unwrap_or_default()
    };
    let t3412s = if !args.t3412_hours.is_empty() {
        args.t3412_hours.clone()
    } else {
        from_cfg.map(|g| g.t3412_hours.clone()).unwrap_or_default()
    };
    let mut scenarios = Vec::new();
    for s in &scenario_names {
        scenarios.push(ScenarioName::parse(s).map_err(model_error)?);
    }
    let grid = SweepGrid {
        devices,
        scenarios,
        payload_bytes: payloads,
        cycle_hours: cycles,
        t3412_hours: t3412s,
    };
    if grid.is_empty() {
        return Err(config_error(
            "grid: empty (every axis needs at least one value)",
        ));
    }
    let mut timers = TimerConfigF64::defaults();
    if let Some(t) = cfg.t3324_seconds {
        timers.t3324_ms = t * 1000.0;
    }
    let mut battery = BatteryConfigF64::defaults();
    if let Some(wh) = cfg.battery_wh {
        battery.capacity_wh = wh;
    }
    if let Some(sf) = cfg.safety_factor {
        battery.safety_factor = sf;
    }
    if let Some(e) = cfg.e_device_per_hour_mj {
        battery.e_device_per_hour_mj = e;
    }
    battery.validate().map_err(model_error)?;
    let rows = sweep(&grid, &timers, &battery).map_err(model_error)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).map_err(|e| config_error(e.to_string()))?;
    }
    w.flush().map_err(|e| config_error(e.to_string()))?;
    let csv_text =
        String::from_utf8(w.into_inner().expect("flushed writer")).expect("csv output is UTF-8");
    let output = args.output.clone().or_else(|| cfg.output.clone());
    write_output(output.as_deref(), &csv_text)?;

    if args.plot {
        let Some(out) = output.as_deref() else {
            return Err(config_error(
                "plot: --plot requires --output so chart files have a base name",
            ));
        };
        for (suffix, svg) in plot::figures(&rows) {
            let path = out.with_file_name(format!(
                "{}_{suffix}.svg",
                out.file_stem().unwrap_or_default().to_string_lossy()
            ));
            fs::write(&path, svg)
                .map_err(|e| config_error(format!("plot `{}`: {e}", path.display())))?;
        }
    }
    Ok(())
}

/// The bundled validation matrix: every device, every scenario its
/// technology can reach, at 1 h and 24 h cycles with 100 B payload.
fn bundled_matrix() -> CliResult<Vec<SpecPoint>> {
    let scenarios = data::scenarios().map_err(model_error)?;
    let mut points = Vec::new();
    for device in data::DEVICES {
        let profile: DeviceProfileF64 = data::device_profile(device).map_err(model_error)?;
        for scenario in &scenarios {
            if scenario.assignment(profile.technology).is_none() {
                continue;
            }
            for cycle_hours in [1.0, 24.0] {
                points.push(SpecPoint {
                    device: device.to_string(),
                    scenario: scenario.name.as_str().to_string(),
                    payload_bytes: 100,
                    cycle_hours,
                    t3412_hours: 2.0,
                });
            }
        }
    }
    Ok(points)
}

fn cmd_validate(args: &ValidateArgs) -> CliResult<()> {
    let cfg = load_config(args.config.as_deref())?;
    let specs = match cfg.specs {
        Some(list) => {
            if list.is_empty() {
                return Err(config_error("specs: empty list (nothing to validate)"));
            }
            list
        }
        None => bundled_matrix()?,
    };
    let tolerance = args
        .tolerance
        .or(cfg.tolerance)
        .unwrap_or(DEFAULT_TOLERANCE);
    let tx_gap_ms = cfg.oracle_tx_gap_ms.unwrap_or(STANDARD_TX_GAP_MS);

    let mut worst: Option<(String, f64)> = None;
    let mut failures = 0usize;
    for point in &specs {
        let (spec, tbs) = build_spec(
            &point.device,
            &point.scenario,
            point.payload_bytes,
            point.cycle_hours,
            point.t3412_hours,
            60.0,
        )
        .map_err(model_error)?;
        let cmp = compare_with_oracle_tx_gap(&spec, &tbs, tx_gap_ms).map_err(model_error)?;
        let label = format!(
            "{} {} {}B {}h",
            point.device, point.scenario, point.payload_bytes, point.cycle_hours
        );
        let status = if cmp.relative_error <= tolerance {
            "PASS"
        } else {
            failures += 1;
            "FAIL"
        };
        println!(
            "{status} {label}: model {:.3} uJ, oracle {:.3} uJ, relative error {:.3e}",
            cmp.closed_form_uj, cmp.oracle_uj, cmp.relative_error
        );
        if worst.as_ref().is_none_or(|(_, e)| cmp.relative_error > *e) {
            worst = Some((label, cmp.relative_error));
        }
    }
    let (label, error) = worst.expect("spec list verified non-empty");
    if failures > 0 {
        return Err(CliError {
            code: EXIT_EXCEEDANCE,
            message: format!(
                "{failures} of {} specs exceed the {tolerance} tolerance; \
                 worst offender: {label} at relative error {error:.3e}",
                specs.len()
            ),
        });
    }
    println!(
        "all {} specs within {tolerance}; worst: {label} at {error:.3e}",
        specs.len()
    );
    Ok(())
}

fn cmd_trace(args: &TraceArgs) -> CliResult<()> {
    let cfg = load_config(args.spec.config.as_deref())?;
    let p = Params::resolve(&args.spec, &cfg)?;
    let trace = if args.psm_only {
        let profile: DeviceProfileF64 = data::device_profile(&p.device).map_err(model_error)?;
        let mut t = ciot_energy::PowerTrace::new();
        t.push(
            "PSM_SLEEP",
            profile.p_psm_sleep_mw,
            p.cycle_hours * MS_PER_HOUR,
        );
        t
    } else {
        let (spec, tbs) = build_spec(
            &p.device,
            &p.scenario,
            p.payload_bytes,
            p.cycle_hours,
            p.t3412_hours,
            p.t3324_seconds,
        )
        .map_err(model_error)?;
        build_timeline(&spec, &tbs).map_err(model_error)?
    };
    write_output(p.output.as_deref(), &trace.to_csv())
}

fn cmd_scenarios() -> CliResult<()> {
    let scenarios = data::scenarios().map_err(model_error)?;
    println!("scenario  mcl_db  nbiot (mcs, rep)  ltem (mcs, rep)");
    for s in &scenarios {
        let show = |a: Option<ciot_energy::link_budget::ScenarioAssignment>| match a {
            Some(a) => format!("({}, {})", a.mcs, a.repetitions),
            None => "unreachable".to_string(),
        };
        println!(
            "{:<9} {:<7} {:<17} {}",
            s.name.as_str(),
            s.mcl_db,
            show(s.nbiot),
            show(s.ltem)
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Trace(args) => cmd_trace(args),
        Command::Scenarios => cmd_scenarios(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
