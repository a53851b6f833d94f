#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use pvflex::economics::{evaluate, load_scenario, FlexRemuneration, Scenario};
use pvflex::flexibility::{annual_flex_profile, average_flex_energy, day_flex_profile, write_flex_csv};
use pvflex::scheduler::{annual_dispatch, write_schedule_csv, AnnualSchedule, DeviceParams, DEFAULT_EFFICIENCY};
use pvflex::sensitivity::{
    parse_axis, parse_calls_axis, summary, sweep_flex, sweep_sizing, write_flex_sweep_csv, write_sizing_csv,
    DeviceTemplate, FlexGrid, FlexSweep, InputData, SizingGrid, SweepResult,
};
use pvflex::synthetic::{gen_data, write_data};
use pvflex::timeseries::{load_series, scale_to_annual_energy, SeriesKind, TimeSeries};
use pvflex::ErrorClass;

use args::{Cli, Command, DataArgs, DeviceArgs, DispatchArgs, GenDataArgs, SweepArgs, SweepFlexArgs, SweepSizingArgs};

/// Invalid combination of command-line options.
#[derive(Debug)]
struct ConfigError(String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config_err(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<ConfigError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<pvflex::Error>() {
            return match e.class() {
                ErrorClass::Config => 2,
                ErrorClass::Data => 3,
                ErrorClass::Solver => 4,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 3;
        }
    }
    1
}

/// Error chain joined with ": ", skipping causes already shown by their parent.
fn message(err: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in err.chain() {
        let text = cause.to_string();
        if !out.contains(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", message(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Dispatch(a) => dispatch(&a, false),
        Command::Flex(a) => dispatch(&a, true),
        Command::SweepSizing(a) => sweep_sizing_cmd(&a),
        Command::SweepFlex(a) => sweep_flex_cmd(&a),
        Command::GenData(a) => gen_data_cmd(&a),
    }
}

fn is_synthetic(source: &Option<String>, all: bool) -> Option<bool> {
    match source.as_deref() {
        Some("synthetic") => Some(true),
        Some(_) => Some(false),
        None if all => Some(true),
        None => None,
    }
}

fn load_data(a: &DataArgs) -> Result<InputData> {
    let sources = [("--pv", &a.pv), ("--load", &a.load), ("--price", &a.price)];
    let mut synthetic = [false; 3];
    for (i, (flag, src)) in sources.iter().enumerate() {
        synthetic[i] = is_synthetic(src, a.synthetic)
            .ok_or_else(|| config_err(format!("missing {flag} (give a CSV path, `synthetic`, or --synthetic)")))?;
    }
    if let Some(d) = a.demand_kwh {
        if !(d > 0.0) {
            return Err(config_err(format!("--demand-kwh {d} must be positive")));
        }
    }
    if !(a.pv_ref_kwp > 0.0) {
        return Err(config_err("--pv-ref-kwp must be positive"));
    }
    let generated = if synthetic.iter().any(|s| *s) {
        Some(gen_data(a.seed, a.demand_kwh.unwrap_or(4000.0), a.pv_ref_kwp)?)
    } else {
        None
    };
    let file = |src: &Option<String>, kind| -> Result<TimeSeries> {
        let path = src.as_deref().expect("file source present");
        Ok(load_series(Path::new(path), kind)?)
    };
    let pv = match &generated {
        Some(g) if synthetic[0] => g.pv.clone(),
        _ => file(&a.pv, SeriesKind::Power)?,
    };
    let load = match &generated {
        Some(g) if synthetic[1] => g.load.clone(),
        _ => {
            let l = file(&a.load, SeriesKind::Power)?;
            match a.demand_kwh {
                Some(d) => scale_to_annual_energy(&l, d)?,
                None => l,
            }
        }
    };
    let price = match &generated {
        Some(g) if synthetic[2] => g.price.clone(),
        _ => file(&a.price, SeriesKind::Price)?,
    };
    Ok(InputData::new(pv, a.pv_ref_kwp, load, price)?)
}

fn resolve_scenario(spec: &str) -> Result<(Scenario, Option<FlexRemuneration>)> {
    if let Some(s) = Scenario::preset(spec) {
        return Ok((s, None));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(config_err(format!(
            "unknown scenario '{spec}' (presets: present, longterm; or a scenario file)"
        )));
    }
    let (s, flex) = load_scenario(path)?;
    Ok((s, Some(flex)))
}

fn template(d: &DeviceArgs) -> Result<DeviceTemplate> {
    let t = DeviceTemplate {
        eta_ch: d.eta_ch.unwrap_or(DEFAULT_EFFICIENCY),
        eta_dh: d.eta_dh.unwrap_or(DEFAULT_EFFICIENCY),
        c_rate: 1.0,
    };
    for (flag, v) in [("--eta-ch", t.eta_ch), ("--eta-dh", t.eta_dh)] {
        if !(v > 0.0 && v <= 1.0) {
            return Err(config_err(format!("{flag} {v} must lie in (0, 1]")));
        }
    }
    Ok(t)
}

fn workers(w: Option<usize>) -> Result<usize> {
    match w {
        Some(0) => Err(config_err("--workers must be at least 1")),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| pvflex::Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    Ok(())
}

fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let io = |source| pvflex::Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    body(&mut w).and_then(|_| w.flush()).map_err(io)?;
    Ok(())
}

/// Keep the first `days` days of a series.
fn head_days(s: &TimeSeries, days: usize) -> Result<TimeSeries> {
    let n = days * s.steps_per_day();
    Ok(TimeSeries::new(s.values()[..n].to_vec(), s.step_minutes(), s.kind())?)
}

fn dispatch(a: &DispatchArgs, with_flex: bool) -> Result<()> {
    let data = load_data(&a.data)?;
    let (scenario, file_flex) = resolve_scenario(&a.scenario)?;
    let t = template(&a.device)?;
    let pv_kwp = a.pv_kwp.unwrap_or(data.pv_ref_kwp);
    let devices = DeviceParams {
        pv_peak_kw: pv_kwp,
        bes_capacity_kwh: a.bes_kwh,
        bes_charge_kw: a.bes_power_kw.unwrap_or(a.bes_kwh),
        bes_discharge_kw: a.bes_power_kw.unwrap_or(a.bes_kwh),
        eta_ch: t.eta_ch,
        eta_dh: t.eta_dh,
    };
    devices.validate().map_err(|e| config_err(e.to_string()))?;
    let remun = if a.flex_calls == 0 && a.flex_price == 0.0 {
        file_flex.unwrap_or_default()
    } else {
        FlexRemuneration::new(a.flex_price, a.flex_calls).map_err(|e| config_err(e.to_string()))?
    };

    let days = data.load.days();
    if let Some(d) = a.day {
        if d >= days {
            return Err(config_err(format!("--day {d} out of range (data has {days} days)")));
        }
    }
    let horizon = a.day.map_or(days, |d| d + 1);
    let pv = head_days(&data.pv_for(pv_kwp)?, horizon)?;
    let load = head_days(&data.load, horizon)?;
    let (import, export) = data.prices(&scenario)?;
    let (import, export) = (head_days(&import, horizon)?, head_days(&export, horizon)?);
    let annual = annual_dispatch(&pv, &load, &import, &export, &devices)?;

    create_dir(&a.out.out)?;
    let steps = data.load.steps_per_day();
    let schedule_path = a.out.out.join("schedule.csv");
    let (shown, first_step) = match a.day {
        Some(d) => (&annual.days[d..], d * steps),
        None => (&annual.days[..], 0),
    };
    write_file(&schedule_path, |w| write_schedule_csv(shown, first_step, w))?;
    let objective: f64 = shown.iter().map(|d| d.objective_eur).sum();

    println!("scenario: {}", scenario.name);
    println!(
        "pv_kwp: {pv_kwp:.6}  bes_kwh: {:.6}  bes_power_kw: {:.6}",
        devices.bes_capacity_kwh, devices.bes_charge_kw
    );
    match a.day {
        Some(d) => println!("day: {d}"),
        None => println!("days: {days}"),
    }
    println!("objective_eur: {objective:.6}");
    println!("schedule: {}", schedule_path.display());

    let mut flex_energy = 0.0;
    if with_flex {
        let flex_path = a.out.out.join("flex.csv");
        let profile = match a.day {
            Some(d) => day_flex_profile(
                &annual.days[d],
                data.pv_for(pv_kwp)?.day(d)?.values,
                &devices,
                annual.step_hours,
            ),
            None => annual_flex_profile(&annual, &pv, &devices)?,
        };
        write_file(&flex_path, |w| write_flex_csv(&profile, first_step, w))?;
        flex_energy = average_flex_energy(&profile)?;
        println!("average_flex_energy_kwh: {flex_energy:.6}");
        println!("flex: {}", flex_path.display());
    }
    if a.day.is_none() {
        report_amep(
            &scenario,
            pv_kwp,
            devices.bes_capacity_kwh,
            &annual,
            flex_energy,
            &remun,
        )?;
    }
    Ok(())
}

fn report_amep(
    scenario: &Scenario,
    pv_kwp: f64,
    bes_kwh: f64,
    annual: &AnnualSchedule,
    flex_energy: f64,
    remun: &FlexRemuneration,
) -> Result<()> {
    let r = evaluate(scenario, pv_kwp, bes_kwh, &annual.totals, flex_energy, remun)?;
    println!("export_ratio: {:.6}", r.export_ratio);
    println!("self_sufficiency: {:.6}", r.self_sufficiency);
    println!("annualized_capex_eur: {:.6}", r.annualized_capex_eur);
    println!("import_cost_eur: {:.6}", r.import_cost_eur);
    println!("pv_revenue_eur: {:.6}", r.pv_revenue_eur);
    println!("flex_revenue_eur: {:.6}", r.flex_revenue_eur);
    println!("amep_eur_per_kwh: {:.6}", r.amep_eur_per_kwh);
    Ok(())
}

struct SweepSetup {
    data: InputData,
    scenarios: Vec<(Scenario, Option<FlexRemuneration>)>,
    grid: SizingGrid,
    template: DeviceTemplate,
    workers: usize,
}

fn sweep_setup(a: &SweepArgs) -> Result<SweepSetup> {
    let grid = SizingGrid::new(parse_axis(&a.pv_axis)?, parse_axis(&a.bes_axis)?)?;
    let scenarios = a
        .scenario
        .split(',')
        .map(|s| resolve_scenario(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    let mut names: Vec<&str> = scenarios.iter().map(|(s, _)| s.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    if names.len() != scenarios.len() {
        return Err(config_err("scenario names must be distinct"));
    }
    let template = template(&a.device)?;
    let workers = workers(a.workers)?;
    let data = load_data(&a.data)?;
    Ok(SweepSetup {
        data,
        scenarios,
        grid,
        template,
        workers,
    })
}

/// Output directory of one scenario: the root for a single scenario,
/// otherwise a subdirectory per scenario.
fn scenario_dir(root: &Path, name: &str, many: bool) -> PathBuf {
    if many {
        root.join(name)
    } else {
        root.to_path_buf()
    }
}

fn sweep_sizing_cmd(a: &SweepSizingArgs) -> Result<()> {
    let setup = sweep_setup(&a.sweep)?;
    let root = &a.sweep.out.out;
    let many = setup.scenarios.len() > 1;
    let mut results = Vec::new();
    for (scenario, file_flex) in &setup.scenarios {
        let remun = if a.flex_calls == 0 && a.flex_price == 0.0 {
            file_flex.unwrap_or_default()
        } else {
            FlexRemuneration::new(a.flex_price, a.flex_calls)?
        };
        let r = sweep_sizing(
            &setup.grid,
            scenario,
            &setup.data,
            &setup.template,
            &remun,
            setup.workers,
        )?;
        let dir = scenario_dir(root, &scenario.name, many);
        create_dir(&dir)?;
        write_file(&dir.join("sizing_sweep.csv"), |w| write_sizing_csv(&r, w))?;
        results.push(r);
    }
    finish_sweep(root, &results, &[])
}

fn sweep_flex_cmd(a: &SweepFlexArgs) -> Result<()> {
    let setup = sweep_setup(&a.sweep)?;
    let flex_grid = FlexGrid::new(parse_calls_axis(&a.flex_calls)?, parse_axis(&a.flex_price)?)?;
    let root = &a.sweep.out.out;
    let many = setup.scenarios.len() > 1;
    let mut results = Vec::new();
    let mut flex = Vec::new();
    for (scenario, _) in &setup.scenarios {
        let (base, f) = sweep_flex(
            &flex_grid,
            &setup.grid,
            scenario,
            &setup.data,
            &setup.template,
            setup.workers,
        )?;
        let dir = scenario_dir(root, &scenario.name, many);
        create_dir(&dir)?;
        write_file(&dir.join("sizing_sweep.csv"), |w| write_sizing_csv(&base, w))?;
        write_file(&dir.join("flex_sweep.csv"), |w| write_flex_sweep_csv(&f, w))?;
        results.push(base);
        flex.push(f);
    }
    finish_sweep(root, &results, &flex)
}

fn finish_sweep(root: &Path, results: &[SweepResult], flex: &[FlexSweep]) -> Result<()> {
    if results.iter().all(|r| r.optimum.is_none()) {
        return Err(pvflex::Error::NoValidCell.into());
    }
    let refs: Vec<&SweepResult> = results.iter().collect();
    let mut text = summary(&refs);
    for f in flex {
        let last = f.cells.last().expect("flex grid is non-empty");
        text.push_str(&format!(
            "flex sweep {}: at {} calls and {:.6} EUR/kWh the optimum is {:.6} kWp PV, {:.6} kWh BES, amep {:.6} EUR/kWh\n",
            f.scenario, last.calls, last.flex_price, last.opt_pv_kwp, last.opt_bes_kwh, last.opt_amep
        ));
    }
    create_dir(root)?;
    let path = root.join("summary.txt");
    write_file(&path, |w| w.write_all(text.as_bytes()))?;
    print!("{text}");
    println!("summary: {}", path.display());
    Ok(())
}

fn gen_data_cmd(a: &GenDataArgs) -> Result<()> {
    if !(a.demand_kwh > 0.0) || !(a.pv_kwp > 0.0) {
        return Err(config_err("--demand-kwh and --pv-kwp must be positive"));
    }
    let data = gen_data(a.seed, a.demand_kwh, a.pv_kwp)?;
    let paths = write_data(&data, &a.out.out).context("writing synthetic data")?;
    println!("pv_kwh: {:.6}", data.pv.energy_kwh());
    println!("load_kwh: {:.6}", data.load.energy_kwh());
    println!("mean_price: {:.6}", data.price.mean());
    for p in paths {
        println!("wrote {}", p.display());
    }
    Ok(())
}
