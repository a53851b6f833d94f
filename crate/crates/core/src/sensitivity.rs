//! Grid sweeps over system size and flexibility remuneration.
//!
//! Sizes are normalized by demand: PV in kWp per MWh of annual demand, the
//! battery in kWh per kWh of mean daily demand. Every sizing cell runs a
//! full annual dispatch, its flexibility profile and the cost model. The
//! flexibility sweep reuses those cells, since called flexibility does not
//! change the baseline dispatch, and only re-prices the revenue term.

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;

use crate::economics::{evaluate, system_lcoe, AmepResult, FlexRemuneration, Scenario, MAX_CALLS_PER_YEAR};
use crate::error::{Error, Result};
use crate::flexibility::{annual_flex_profile, average_flex_energy};
use crate::scheduler::{annual_dispatch, DeviceParams, EnergyTotals, DEFAULT_EFFICIENCY};
use crate::timeseries::{scale_price_to_mean, SeriesKind, TimeSeries};

pub const MAX_FLEX_PRICE: f64 = 0.16;
const AXIS_EPS: f64 = 1e-9;

/// Parse `a:b:step` into `a, a+step, ...` up to `b`, or a comma list.
pub fn parse_axis(spec: &str) -> Result<Vec<f64>> {
    let bad = |msg: &str| Error::Config(format!("axis '{spec}': {msg}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:stop:step"));
        }
        let (a, b, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || !(b >= a) {
            return Err(bad("need step > 0 and stop >= start"));
        }
        let count = ((b - a) / step + AXIS_EPS).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let v = a + i as f64 * step;
                // drop float noise like 0.30000000000000004
                (v * 1e9).round() / 1e9
            })
            .collect()
    } else {
        spec.split(',').map(num).collect::<Result<Vec<f64>>>()?
    };
    if values.is_empty() {
        return Err(bad("empty"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(bad("values must be finite"));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(bad("values must be strictly increasing"));
    }
    Ok(values)
}

fn default_axis() -> Vec<f64> {
    (0..=10).map(|i| i as f64 * 0.25).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SizingGrid {
    pub pv_axis: Vec<f64>,
    pub bes_axis: Vec<f64>,
}

impl Default for SizingGrid {
    fn default() -> Self {
        Self {
            pv_axis: default_axis(),
            bes_axis: default_axis(),
        }
    }
}

impl SizingGrid {
    pub fn new(pv_axis: Vec<f64>, bes_axis: Vec<f64>) -> Result<Self> {
        let g = Self { pv_axis, bes_axis };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, axis) in [("PV", &self.pv_axis), ("BES", &self.bes_axis)] {
            if axis.first() != Some(&0.0) {
                return Err(Error::Config(format!("{name} axis must start at 0")));
            }
            if axis.windows(2).any(|w| !(w[1] > w[0])) || axis.iter().any(|v| !v.is_finite()) {
                return Err(Error::Config(format!("{name} axis must be strictly increasing")));
            }
        }
        Ok(())
    }

    pub fn cells(&self) -> usize {
        self.pv_axis.len() * self.bes_axis.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlexGrid {
    pub calls_axis: Vec<u32>,
    pub price_axis: Vec<f64>,
}

impl Default for FlexGrid {
    fn default() -> Self {
        Self {
            calls_axis: (0..=5).map(|i| i * 73).collect(),
            price_axis: (0..=8)
                .map(|i| f64::from(i) * 0.02)
                .map(|v| (v * 1e9).round() / 1e9)
                .collect(),
        }
    }
}

impl FlexGrid {
    pub fn new(calls_axis: Vec<u32>, price_axis: Vec<f64>) -> Result<Self> {
        let g = Self { calls_axis, price_axis };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.calls_axis.is_empty() || self.price_axis.is_empty() {
            return Err(Error::Config("flex axes must not be empty".into()));
        }
        if self.calls_axis.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("flex calls axis must be strictly increasing".into()));
        }
        if self.calls_axis.iter().any(|&c| c > MAX_CALLS_PER_YEAR) {
            return Err(Error::Config(format!(
                "flex calls are limited to {MAX_CALLS_PER_YEAR} per year"
            )));
        }
        if self.price_axis.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("flex price axis must be strictly increasing".into()));
        }
        if self
            .price_axis
            .iter()
            .any(|&p| !(0.0..=MAX_FLEX_PRICE + AXIS_EPS).contains(&p))
        {
            return Err(Error::Config(format!("flex prices must lie in [0, {MAX_FLEX_PRICE}]")));
        }
        Ok(())
    }
}

/// Parse calls as `a:b:step` or a comma list of integers.
pub fn parse_calls_axis(spec: &str) -> Result<Vec<u32>> {
    let values = parse_axis(spec)?;
    values
        .iter()
        .map(|&v| {
            if v >= 0.0 && v.fract() == 0.0 {
                Ok(v as u32)
            } else {
                Err(Error::Config(format!("flex calls '{spec}' must be whole numbers")))
            }
        })
        .collect()
}

/// Efficiencies and power rating applied to every swept battery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceTemplate {
    pub eta_ch: f64,
    pub eta_dh: f64,
    /// battery power per kWh of capacity
    pub c_rate: f64,
}

impl Default for DeviceTemplate {
    fn default() -> Self {
        Self {
            eta_ch: DEFAULT_EFFICIENCY,
            eta_dh: DEFAULT_EFFICIENCY,
            c_rate: 1.0,
        }
    }
}

impl DeviceTemplate {
    pub fn devices(&self, pv_kwp: f64, bes_kwh: f64) -> DeviceParams {
        DeviceParams {
            pv_peak_kw: pv_kwp,
            bes_capacity_kwh: bes_kwh,
            bes_charge_kw: bes_kwh * self.c_rate,
            bes_discharge_kw: bes_kwh * self.c_rate,
            eta_ch: self.eta_ch,
            eta_dh: self.eta_dh,
        }
    }
}

/// One year of input data. `pv` is the output of a `pv_ref_kwp` system and
/// is scaled linearly to other sizes; `price` gives the intra-day shape of
/// the import price and is shifted to each scenario's mean.
#[derive(Debug, Clone)]
pub struct InputData {
    pub pv: TimeSeries,
    pub pv_ref_kwp: f64,
    pub load: TimeSeries,
    pub price: TimeSeries,
}

impl InputData {
    pub fn new(pv: TimeSeries, pv_ref_kwp: f64, load: TimeSeries, price: TimeSeries) -> Result<Self> {
        if pv.kind() != SeriesKind::Power || load.kind() != SeriesKind::Power || price.kind() != SeriesKind::Price {
            return Err(Error::InvalidInput("series kinds do not match pv/load/price".into()));
        }
        if pv.len() != load.len() || pv.len() != price.len() {
            return Err(Error::InvalidInput(format!(
                "series lengths differ: pv {}, load {}, price {}",
                pv.len(),
                load.len(),
                price.len()
            )));
        }
        if pv.step_minutes() != load.step_minutes() || pv.step_minutes() != price.step_minutes() {
            return Err(Error::InvalidInput("series resolutions differ".into()));
        }
        if !(pv_ref_kwp > 0.0) {
            return Err(Error::InvalidInput("reference PV size must be positive".into()));
        }
        let max = pv.values().iter().copied().fold(0.0, f64::max);
        if max > pv_ref_kwp * (1.0 + 1e-9) {
            return Err(Error::InvalidInput(format!(
                "PV series peaks at {max} kW, above the {pv_ref_kwp} kWp reference size"
            )));
        }
        if !(load.energy_kwh() > 0.0) {
            return Err(Error::ZeroDemand);
        }
        Ok(Self {
            pv,
            pv_ref_kwp,
            load,
            price,
        })
    }

    pub fn demand_kwh(&self) -> f64 {
        self.load.energy_kwh()
    }

    pub fn pv_for(&self, pv_kwp: f64) -> Result<TimeSeries> {
        self.pv.scaled(pv_kwp / self.pv_ref_kwp)
    }

    /// Import and export price series for dispatch under `scenario`.
    pub fn prices(&self, scenario: &Scenario) -> Result<(TimeSeries, TimeSeries)> {
        let import = scale_price_to_mean(&self.price, scenario.mean_import_price)?;
        let export = TimeSeries::constant(
            scenario.feed_in_tariff,
            self.price.days(),
            self.price.step_minutes(),
            SeriesKind::Price,
        )?;
        Ok((import, export))
    }

    /// Absolute sizes of a normalized cell.
    pub fn sizes(&self, pv_norm: f64, bes_norm: f64) -> (f64, f64) {
        let e_d = self.demand_kwh();
        (pv_norm * e_d / 1000.0, bes_norm * e_d / 365.0)
    }
}

/// Energy and cost figures of a successfully evaluated cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellMetrics {
    pub totals: EnergyTotals,
    pub flex_energy_kwh: f64,
    /// annualized cost per kWh of PV yield; 0 without PV
    pub lcoe: f64,
    pub result: AmepResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellRecord {
    pub pv_norm: f64,
    pub bes_norm: f64,
    pub pv_kwp: f64,
    pub bes_kwh: f64,
    pub metrics: Option<CellMetrics>,
    pub error: Option<String>,
}

impl CellRecord {
    pub fn is_valid(&self) -> bool {
        self.metrics.is_some()
    }

    pub fn amep(&self) -> Option<f64> {
        self.metrics.map(|m| m.result.amep_eur_per_kwh)
    }

    pub fn capex(&self) -> Option<f64> {
        self.metrics.map(|m| m.result.annualized_capex_eur)
    }

    /// Cost breakdown under another remuneration. Flexibility is only sold
    /// when its price covers the cell's LCOE.
    pub fn repriced(&self, scenario: &Scenario, remun: &FlexRemuneration) -> Option<AmepResult> {
        let m = self.metrics?;
        let flex = if remun.price_per_kwh >= m.lcoe {
            m.flex_energy_kwh
        } else {
            0.0
        };
        evaluate(scenario, self.pv_kwp, self.bes_kwh, &m.totals, flex, remun).ok()
    }
}

/// Prices and data shared by all cells of one scenario.
struct SweepContext<'a> {
    data: &'a InputData,
    scenario: &'a Scenario,
    template: DeviceTemplate,
    remun: FlexRemuneration,
    import: TimeSeries,
    export: TimeSeries,
}

impl<'a> SweepContext<'a> {
    fn new(
        data: &'a InputData,
        scenario: &'a Scenario,
        template: DeviceTemplate,
        remun: FlexRemuneration,
    ) -> Result<Self> {
        scenario.validate()?;
        remun.validate()?;
        let (import, export) = data.prices(scenario)?;
        Ok(Self {
            data,
            scenario,
            template,
            remun,
            import,
            export,
        })
    }

    fn metrics(&self, pv_kwp: f64, bes_kwh: f64) -> Result<CellMetrics> {
        let devices = self.template.devices(pv_kwp, bes_kwh);
        let pv = self.data.pv_for(pv_kwp)?;
        let annual = annual_dispatch(&pv, &self.data.load, &self.import, &self.export, &devices)?;
        let profile = annual_flex_profile(&annual, &pv, &devices)?;
        let flex_energy_kwh = average_flex_energy(&profile)?;
        let capex = self.scenario.capex(pv_kwp, bes_kwh);
        let lcoe = if pv_kwp > 0.0 {
            system_lcoe(capex, annual.totals.pv_kwh)?
        } else {
            0.0
        };
        let flex = if self.remun.price_per_kwh >= lcoe {
            flex_energy_kwh
        } else {
            0.0
        };
        let result = evaluate(self.scenario, pv_kwp, bes_kwh, &annual.totals, flex, &self.remun)?;
        Ok(CellMetrics {
            totals: annual.totals,
            flex_energy_kwh,
            lcoe,
            result,
        })
    }

    fn cell(&self, pv_norm: f64, bes_norm: f64) -> CellRecord {
        let (pv_kwp, bes_kwh) = self.data.sizes(pv_norm, bes_norm);
        let (metrics, error) = match self.metrics(pv_kwp, bes_kwh) {
            Ok(m) => (Some(m), None),
            Err(e) => (None, Some(e.to_string())),
        };
        CellRecord {
            pv_norm,
            bes_norm,
            pv_kwp,
            bes_kwh,
            metrics,
            error,
        }
    }
}

/// Evaluate a single sizing cell exactly as the sweep does.
pub fn evaluate_cell(
    pv_norm: f64,
    bes_norm: f64,
    scenario: &Scenario,
    data: &InputData,
    template: &DeviceTemplate,
    remun: &FlexRemuneration,
) -> Result<CellRecord> {
    let ctx = SweepContext::new(data, scenario, *template, *remun)?;
    Ok(ctx.cell(pv_norm, bes_norm))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub scenario: Scenario,
    pub grid: SizingGrid,
    pub remuneration: FlexRemuneration,
    /// row-major: PV axis outer, BES axis inner
    pub cells: Vec<CellRecord>,
    pub optimum: Option<usize>,
}

impl SweepResult {
    pub fn cell(&self, pv_index: usize, bes_index: usize) -> &CellRecord {
        &self.cells[pv_index * self.grid.bes_axis.len() + bes_index]
    }

    pub fn optimum_cell(&self) -> Option<&CellRecord> {
        self.optimum.map(|i| &self.cells[i])
    }

    /// True when no installation beats buying everything from the grid.
    pub fn grid_only_optimal(&self) -> bool {
        match self.optimum_cell() {
            None => true,
            Some(c) => {
                (c.pv_kwp == 0.0 && c.bes_kwh == 0.0) || c.amep().is_some_and(|a| a >= self.scenario.mean_import_price)
            }
        }
    }
}

pub fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))
}

/// Evaluate every cell of `grid` in parallel on `workers` threads.
pub fn sweep_sizing(
    grid: &SizingGrid,
    scenario: &Scenario,
    data: &InputData,
    template: &DeviceTemplate,
    remun: &FlexRemuneration,
    workers: usize,
) -> Result<SweepResult> {
    grid.validate()?;
    let ctx = SweepContext::new(data, scenario, *template, *remun)?;
    let coords: Vec<(f64, f64)> = grid
        .pv_axis
        .iter()
        .flat_map(|&p| grid.bes_axis.iter().map(move |&b| (p, b)))
        .collect();
    let pool = thread_pool(workers)?;
    let cells: Vec<CellRecord> = pool.install(|| coords.par_iter().map(|&(p, b)| ctx.cell(p, b)).collect());
    let mut result = SweepResult {
        scenario: scenario.clone(),
        grid: grid.clone(),
        remuneration: *remun,
        cells,
        optimum: None,
    };
    result.optimum = find_optimum_index(&result.cells).ok();
    Ok(result)
}

fn find_optimum_index(cells: &[CellRecord]) -> Result<usize> {
    cells
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.metrics.map(|m| (i, c, m)))
        .min_by(|(_, a, ma), (_, b, mb)| {
            ma.result
                .amep_eur_per_kwh
                .total_cmp(&mb.result.amep_eur_per_kwh)
                .then(
                    ma.result
                        .annualized_capex_eur
                        .total_cmp(&mb.result.annualized_capex_eur),
                )
                .then(a.pv_norm.total_cmp(&b.pv_norm))
                .then(a.bes_norm.total_cmp(&b.bes_norm))
        })
        .map(|(i, _, _)| i)
        .ok_or(Error::NoValidCell)
}

/// Cell with the lowest AMEP; ties go to lower capex, then smaller PV, then
/// smaller battery.
pub fn find_optimum(result: &SweepResult) -> Result<&CellRecord> {
    find_optimum_index(&result.cells).map(|i| &result.cells[i])
}

/// Average flexibility energy per cell, indexed `[pv][bes]`; `None` for
/// invalid cells.
pub fn flex_energy_matrix(result: &SweepResult) -> Vec<Vec<Option<f64>>> {
    (0..result.grid.pv_axis.len())
        .map(|i| {
            (0..result.grid.bes_axis.len())
                .map(|j| result.cell(i, j).metrics.map(|m| m.flex_energy_kwh))
                .collect()
        })
        .collect()
}

/// Run the sizing sweep and return its flexibility energy surface.
pub fn flex_energy_surface(
    grid: &SizingGrid,
    scenario: &Scenario,
    data: &InputData,
    template: &DeviceTemplate,
    workers: usize,
) -> Result<Vec<Vec<Option<f64>>>> {
    let r = sweep_sizing(grid, scenario, data, template, &FlexRemuneration::default(), workers)?;
    Ok(flex_energy_matrix(&r))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlexCell {
    pub calls: u32,
    pub flex_price: f64,
    pub opt_amep: f64,
    pub opt_pv_norm: f64,
    pub opt_bes_norm: f64,
    pub opt_pv_kwp: f64,
    pub opt_bes_kwh: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlexSweep {
    pub scenario: String,
    pub grid: FlexGrid,
    /// row-major: calls outer, price inner
    pub cells: Vec<FlexCell>,
}

impl FlexSweep {
    pub fn cell(&self, calls_index: usize, price_index: usize) -> &FlexCell {
        &self.cells[calls_index * self.grid.price_axis.len() + price_index]
    }
}

/// Re-price a finished sizing sweep for every (calls, price) pair.
pub fn sweep_flex_from(base: &SweepResult, flex_grid: &FlexGrid) -> Result<FlexSweep> {
    flex_grid.validate()?;
    let mut cells = Vec::with_capacity(flex_grid.calls_axis.len() * flex_grid.price_axis.len());
    for &calls in &flex_grid.calls_axis {
        for &price in &flex_grid.price_axis {
            let remun = FlexRemuneration::new(price, calls)?;
            let best = base
                .cells
                .iter()
                .filter_map(|c| c.repriced(&base.scenario, &remun).map(|r| (c, r)))
                .min_by(|(a, ra), (b, rb)| {
                    ra.amep_eur_per_kwh
                        .total_cmp(&rb.amep_eur_per_kwh)
                        .then(ra.annualized_capex_eur.total_cmp(&rb.annualized_capex_eur))
                        .then(a.pv_norm.total_cmp(&b.pv_norm))
                        .then(a.bes_norm.total_cmp(&b.bes_norm))
                })
                .ok_or(Error::NoValidCell)?;
            cells.push(FlexCell {
                calls,
                flex_price: price,
                opt_amep: best.1.amep_eur_per_kwh,
                opt_pv_norm: best.0.pv_norm,
                opt_bes_norm: best.0.bes_norm,
                opt_pv_kwp: best.0.pv_kwp,
                opt_bes_kwh: best.0.bes_kwh,
            });
        }
    }
    Ok(FlexSweep {
        scenario: base.scenario.name.clone(),
        grid: flex_grid.clone(),
        cells,
    })
}

/// Sizing sweep without flexibility revenue, then re-priced over `flex_grid`.
pub fn sweep_flex(
    flex_grid: &FlexGrid,
    sizing_grid: &SizingGrid,
    scenario: &Scenario,
    data: &InputData,
    template: &DeviceTemplate,
    workers: usize,
) -> Result<(SweepResult, FlexSweep)> {
    flex_grid.validate()?;
    let base = sweep_sizing(
        sizing_grid,
        scenario,
        data,
        template,
        &FlexRemuneration::default(),
        workers,
    )?;
    let flex = sweep_flex_from(&base, flex_grid)?;
    Ok((base, flex))
}

fn fmt6(v: f64) -> String {
    format!("{v:.6}")
}

pub fn write_sizing_csv<W: Write>(result: &SweepResult, mut out: W) -> std::io::Result<()> {
    writeln!(
        out,
        "pv_norm,bes_norm,pv_kwp,bes_kwh,amep,f_e,f_s,flex_energy_kwh,status"
    )?;
    for (i, c) in result.cells.iter().enumerate() {
        let head = format!(
            "{},{},{},{}",
            fmt6(c.pv_norm),
            fmt6(c.bes_norm),
            fmt6(c.pv_kwp),
            fmt6(c.bes_kwh)
        );
        match c.metrics {
            Some(m) => {
                let status = if result.optimum == Some(i) { "optimal" } else { "ok" };
                writeln!(
                    out,
                    "{head},{},{},{},{},{status}",
                    fmt6(m.result.amep_eur_per_kwh),
                    fmt6(m.result.export_ratio),
                    fmt6(m.result.self_sufficiency),
                    fmt6(m.flex_energy_kwh)
                )?;
            }
            None => writeln!(out, "{head},NA,NA,NA,NA,invalid")?,
        }
    }
    Ok(())
}

pub fn write_flex_sweep_csv<W: Write>(sweep: &FlexSweep, mut out: W) -> std::io::Result<()> {
    writeln!(out, "calls,flex_price,opt_amep,opt_pv_kwp,opt_bes_kwh")?;
    for c in &sweep.cells {
        writeln!(
            out,
            "{},{},{},{},{}",
            c.calls,
            fmt6(c.flex_price),
            fmt6(c.opt_amep),
            fmt6(c.opt_pv_kwp),
            fmt6(c.opt_bes_kwh)
        )?;
    }
    Ok(())
}

/// Plain-text report of each scenario's optimum and profitability.
pub fn summary(results: &[&SweepResult]) -> String {
    let mut s = String::new();
    for r in results {
        let sc = &r.scenario;
        let valid = r.cells.iter().filter(|c| c.is_valid()).count();
        let profitable = r
            .cells
            .iter()
            .filter(|c| c.amep().is_some_and(|a| a < sc.mean_import_price))
            .count();
        let _ = writeln!(s, "scenario {}", sc.name);
        let _ = writeln!(
            s,
            "  cells: {} evaluated, {} invalid",
            r.cells.len(),
            r.cells.len() - valid
        );
        let _ = writeln!(
            s,
            "  flex remuneration: {} EUR/kWh x {} calls",
            fmt6(r.remuneration.price_per_kwh),
            r.remuneration.calls_per_year
        );
        match r.optimum_cell() {
            Some(c) => {
                let m = c.metrics.expect("optimum is valid");
                let _ = writeln!(
                    s,
                    "  optimum: pv_norm {} ({} kWp), bes_norm {} ({} kWh)",
                    fmt6(c.pv_norm),
                    fmt6(c.pv_kwp),
                    fmt6(c.bes_norm),
                    fmt6(c.bes_kwh)
                );
                let _ = writeln!(s, "  amep: {} EUR/kWh", fmt6(m.result.amep_eur_per_kwh));
                let _ = writeln!(
                    s,
                    "  export ratio {}, self-sufficiency {}, lcoe {} EUR/kWh",
                    fmt6(m.result.export_ratio),
                    fmt6(m.result.self_sufficiency),
                    fmt6(m.lcoe)
                );
                if m.result.amep_eur_per_kwh < 0.0 {
                    let _ = writeln!(s, "  note: negative amep, revenues exceed costs");
                }
            }
            None => {
                let _ = writeln!(s, "  optimum: none (no valid cell)");
            }
        }
        let _ = writeln!(
            s,
            "  profitability boundary: amep < {} EUR/kWh (mean import price) in {} of {} cells",
            fmt6(sc.mean_import_price),
            profitable,
            r.cells.len()
        );
        if r.grid_only_optimal() {
            let _ = writeln!(s, "  grid-only optimal: no installation beats grid supply");
        }
        let _ = writeln!(s);
    }
    s
}
