use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "pvflex",
    version,
    about = "Cost-optimal PV-battery dispatch, flexibility and sizing sweeps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal battery schedule for one day or the whole year
    Dispatch(DispatchArgs),
    /// Flexibility power, duration and energy around the optimal schedule
    Flex(DispatchArgs),
    /// AMEP over a grid of PV and battery sizes
    SweepSizing(SweepSizingArgs),
    /// Optimal AMEP and sizing over flexibility calls and prices
    SweepFlex(SweepFlexArgs),
    /// Write a synthetic year of PV, load and price data
    GenData(GenDataArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// PV power CSV (timestamp,value in kW) or `synthetic`
    #[arg(long, value_name = "PATH|synthetic")]
    pub pv: Option<String>,
    /// Household load CSV (kW) or `synthetic`
    #[arg(long, value_name = "PATH|synthetic")]
    pub load: Option<String>,
    /// Import price shape CSV (EUR/kWh) or `synthetic`
    #[arg(long, value_name = "PATH|synthetic")]
    pub price: Option<String>,
    /// Use synthetic data for every series not given explicitly
    #[arg(long)]
    pub synthetic: bool,
    /// Seed for synthetic data
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Annual demand in kWh; synthetic load is generated at this level and a
    /// load file is rescaled to it
    #[arg(long, value_name = "KWH")]
    pub demand_kwh: Option<f64>,
    /// Peak rating of the system that produced the PV series
    #[arg(long, value_name = "KWP", default_value_t = 3.0)]
    pub pv_ref_kwp: f64,
}

#[derive(Debug, Args)]
pub struct DeviceArgs {
    /// Battery efficiency when charging
    #[arg(long, value_name = "ETA")]
    pub eta_ch: Option<f64>,
    /// Battery efficiency when discharging
    #[arg(long, value_name = "ETA")]
    pub eta_dh: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output directory
    #[arg(long, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DispatchArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub device: DeviceArgs,
    #[command(flatten)]
    pub out: OutArgs,
    /// Scenario preset (present, longterm) or scenario file
    #[arg(long, default_value = "present")]
    pub scenario: String,
    /// Only report this day (0-based); earlier days still set its start SOC
    #[arg(long)]
    pub day: Option<usize>,
    /// PV size in kWp [default: the reference size]
    #[arg(long, value_name = "KWP")]
    pub pv_kwp: Option<f64>,
    /// Battery capacity in kWh
    #[arg(long, value_name = "KWH", default_value_t = 5.0)]
    pub bes_kwh: f64,
    /// Battery charge and discharge power [default: capacity over one hour]
    #[arg(long, value_name = "KW")]
    pub bes_power_kw: Option<f64>,
    /// Flexibility calls per year used for the AMEP report
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub flex_calls: u32,
    /// Flexibility price in EUR/kWh used for the AMEP report
    #[arg(long, value_name = "EUR", default_value_t = 0.0)]
    pub flex_price: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub device: DeviceArgs,
    #[command(flatten)]
    pub out: OutArgs,
    /// Comma-separated scenario presets or files
    #[arg(long, default_value = "present,longterm")]
    pub scenario: String,
    /// PV axis in kWp per MWh of annual demand, `start:stop:step` or a list
    #[arg(long, value_name = "AXIS", default_value = "0:2.5:0.25")]
    pub pv_axis: String,
    /// Battery axis in kWh per kWh of mean daily demand
    #[arg(long, value_name = "AXIS", default_value = "0:2.5:0.25")]
    pub bes_axis: String,
    /// Worker threads [default: available cores]
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepSizingArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Flexibility calls per year
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub flex_calls: u32,
    /// Flexibility price in EUR/kWh
    #[arg(long, value_name = "EUR", default_value_t = 0.0)]
    pub flex_price: f64,
}

#[derive(Debug, Args)]
pub struct SweepFlexArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Calls-per-year axis, `start:stop:step` or a list
    #[arg(long, value_name = "AXIS", default_value = "0:365:73")]
    pub flex_calls: String,
    /// Flexibility price axis in EUR/kWh
    #[arg(long, value_name = "AXIS", default_value = "0:0.16:0.02")]
    pub flex_price: String,
}

#[derive(Debug, Args)]
pub struct GenDataArgs {
    #[command(flatten)]
    pub out: OutArgs,
    /// Random seed
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Annual demand in kWh
    #[arg(long, value_name = "KWH", default_value_t = 4000.0)]
    pub demand_kwh: f64,
    /// PV peak power in kWp
    #[arg(long, value_name = "KWP", default_value_t = 3.0)]
    pub pv_kwp: f64,
}
