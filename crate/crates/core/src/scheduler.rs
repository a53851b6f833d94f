//! Cost-optimal daily dispatch of a PV-battery system.
//!
//! The day problem minimizes import cost minus export revenue subject to
//! the power balance, device power/energy boxes and the SOC recursion, with
//! the battery never charging and discharging in the same step.
//!
//! Internally the grid exchange is not a decision variable. Each step's
//! battery power is split into segments whose cost is the marginal grid
//! price of that slice of power:
//!
//! * charging first absorbs PV surplus (forgone export price), then imports;
//! * discharging first covers residual demand (avoided import price), then
//!   exports.
//!
//! Import and export are recovered from the balance, so they are never both
//! positive. When the export price exceeds the import price these segment
//! costs are non-convex and the LP may fill them out of order; such steps,
//! and steps with simultaneous charge and discharge, are resolved by a
//! best-first branch-and-bound.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::simplex::{self, LinearProgram, LpError};
use crate::timeseries::TimeSeries;

/// Power tolerance (kW) for flags and feasibility checks.
pub const POWER_TOL: f64 = 1e-6;
/// SOC tolerance (kWh).
pub const SOC_TOL: f64 = 1e-9;
const ACTIVE_TOL: f64 = 1e-9;

pub const DEFAULT_EFFICIENCY: f64 = 0.95;
pub const DEFAULT_NODE_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceParams {
    pub pv_peak_kw: f64,
    pub bes_capacity_kwh: f64,
    pub bes_charge_kw: f64,
    pub bes_discharge_kw: f64,
    pub eta_ch: f64,
    pub eta_dh: f64,
}

impl DeviceParams {
    /// PV and battery with a 1C power rating and default efficiencies.
    pub fn new(pv_peak_kw: f64, bes_capacity_kwh: f64) -> Self {
        Self {
            pv_peak_kw,
            bes_capacity_kwh,
            bes_charge_kw: bes_capacity_kwh,
            bes_discharge_kw: bes_capacity_kwh,
            eta_ch: DEFAULT_EFFICIENCY,
            eta_dh: DEFAULT_EFFICIENCY,
        }
    }

    pub fn has_battery(&self) -> bool {
        self.bes_capacity_kwh > 0.0 && (self.bes_charge_kw > 0.0 || self.bes_discharge_kw > 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("pv_peak_kw", self.pv_peak_kw),
            ("bes_capacity_kwh", self.bes_capacity_kwh),
            ("bes_charge_kw", self.bes_charge_kw),
            ("bes_discharge_kw", self.bes_discharge_kw),
        ];
        for (name, v) in fields {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} = {v} must be finite and >= 0")));
            }
        }
        for (name, v) in [("eta_ch", self.eta_ch), ("eta_dh", self.eta_dh)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidInput(format!("{name} = {v} must lie in (0, 1]")));
            }
        }
        if self.bes_capacity_kwh == 0.0 && (self.bes_charge_kw > 0.0 || self.bes_discharge_kw > 0.0) {
            return Err(Error::InvalidInput(
                "battery power limits must be zero when capacity is zero".into(),
            ));
        }
        Ok(())
    }
}

/// Inputs for one daily optimization. All slices have one sample per step.
#[derive(Debug, Clone, Copy)]
pub struct DayInputs<'a> {
    pub pv: &'a [f64],
    pub demand: &'a [f64],
    pub import_price: &'a [f64],
    pub export_price: &'a [f64],
    pub initial_soc_kwh: f64,
    pub step_hours: f64,
}

impl DayInputs<'_> {
    pub fn steps(&self) -> usize {
        self.pv.len()
    }

    fn validate(&self, devices: &DeviceParams) -> Result<()> {
        let n = self.pv.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty day".into()));
        }
        if self.demand.len() != n || self.import_price.len() != n || self.export_price.len() != n {
            return Err(Error::InvalidInput("day input lengths differ".into()));
        }
        if !(self.step_hours > 0.0) {
            return Err(Error::InvalidInput("step length must be positive".into()));
        }
        let cap = devices.bes_capacity_kwh;
        if !(self.initial_soc_kwh >= -SOC_TOL && self.initial_soc_kwh <= cap + SOC_TOL) {
            return Err(Error::InvalidInput(format!(
                "initial SOC {} outside [0, {cap}]",
                self.initial_soc_kwh
            )));
        }
        let pv_limit = devices.pv_peak_kw * (1.0 + 1e-9) + 1e-12;
        for t in 0..n {
            let (pv, d) = (self.pv[t], self.demand[t]);
            if !(pv >= 0.0) || !(d >= 0.0) {
                return Err(Error::InvalidInput(format!("negative or NaN power at step {t}")));
            }
            if pv > pv_limit {
                return Err(Error::InvalidInput(format!(
                    "PV {pv} kW at step {t} exceeds the {} kWp rating",
                    devices.pv_peak_kw
                )));
            }
            if !self.import_price[t].is_finite() || !self.export_price[t].is_finite() {
                return Err(Error::InvalidInput(format!("non-finite price at step {t}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
}

/// Per-step dispatch. `soc_kwh[t]` is the stored energy at the end of step t.
#[derive(Debug, Clone, PartialEq)]
pub struct DaySchedule {
    pub import_kw: Vec<f64>,
    pub export_kw: Vec<f64>,
    pub charge_kw: Vec<f64>,
    pub discharge_kw: Vec<f64>,
    pub soc_kwh: Vec<f64>,
    pub initial_soc_kwh: f64,
    pub objective_eur: f64,
    pub status: SolveStatus,
    /// Steps whose relaxed solution is not realizable: simultaneous charge
    /// and discharge, or a non-convex price slice used out of order. Empty
    /// for every schedule returned by [`solve_day`].
    pub flagged_steps: Vec<usize>,
    /// LPs solved to produce this schedule.
    pub lp_solves: usize,
}

impl DaySchedule {
    pub fn steps(&self) -> usize {
        self.import_kw.len()
    }

    pub fn terminal_soc_kwh(&self) -> f64 {
        self.soc_kwh.last().copied().unwrap_or(self.initial_soc_kwh)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub node_budget: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SegKind {
    /// charging from PV surplus, priced at the export price
    ChargeSurplus,
    /// charging from the grid, priced at the import price
    ChargeGrid,
    /// discharging into residual demand, valued at the import price
    DischargeLoad,
    /// discharging into the grid, valued at the export price
    DischargeGrid,
}

impl SegKind {
    fn is_charge(self) -> bool {
        matches!(self, SegKind::ChargeSurplus | SegKind::ChargeGrid)
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    step: usize,
    kind: SegKind,
    width: f64,
    /// EUR per kW held for one step
    cost: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum FlagKind {
    Mode,
    ChargeOrder,
    DischargeOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Flag {
    step: usize,
    kind: FlagKind,
}

struct DayModel<'a> {
    inputs: DayInputs<'a>,
    devices: DeviceParams,
    segments: Vec<Segment>,
    /// segment index range per step
    ranges: Vec<(usize, usize)>,
    lp: LinearProgram,
    costs: [Vec<f64>; 3],
    crash: Vec<usize>,
    base_cost: f64,
}

#[derive(Debug, Clone)]
struct NodeSolution {
    seg_values: Vec<f64>,
    bound: f64,
    flags: Vec<Flag>,
}

impl<'a> DayModel<'a> {
    fn build(inputs: DayInputs<'a>, devices: DeviceParams) -> Self {
        let n = inputs.steps();
        let dt = inputs.step_hours;
        let mut segments = Vec::with_capacity(4 * n);
        let mut ranges = Vec::with_capacity(n);
        let mut base_cost = 0.0;
        for t in 0..n {
            let start = segments.len();
            let kimp = inputs.import_price[t] * dt;
            let kexp = inputs.export_price[t] * dt;
            let net = inputs.demand[t] - inputs.pv[t];
            let deficit = net.max(0.0);
            let surplus = (-net).max(0.0);
            base_cost += kimp * deficit - kexp * surplus;

            let mut push = |kind, width: f64, cost| {
                if width > 0.0 {
                    segments.push(Segment {
                        step: t,
                        kind,
                        width,
                        cost,
                    });
                }
            };
            let ch = devices.bes_charge_kw;
            let dh = devices.bes_discharge_kw;
            let from_surplus = surplus.min(ch);
            push(SegKind::ChargeSurplus, from_surplus, kexp);
            push(SegKind::ChargeGrid, ch - from_surplus, kimp);
            let to_load = deficit.min(dh);
            push(SegKind::DischargeLoad, to_load, -kimp);
            push(SegKind::DischargeGrid, dh - to_load, -kexp);
            ranges.push((start, segments.len()));
        }

        // columns: SOC e_0..e_{n-1}, then one per segment
        let cols = n + segments.len();
        let mut lp = LinearProgram::new(cols);
        for t in 0..n {
            lp.upper[t] = devices.bes_capacity_kwh;
        }
        let mut row_entries: Vec<Vec<(usize, f64)>> = (0..n)
            .map(|t| {
                let mut r = vec![(t, 1.0)];
                if t > 0 {
                    r.push((t - 1, -1.0));
                }
                r
            })
            .collect();
        let ch_gain = devices.eta_ch * dt;
        let dh_loss = dt / devices.eta_dh;
        let mut costs = [vec![0.0; cols], vec![0.0; cols], vec![0.0; cols]];
        for (k, s) in segments.iter().enumerate() {
            let col = n + k;
            lp.upper[col] = s.width;
            let energy = if s.kind.is_charge() { ch_gain } else { -dh_loss };
            row_entries[s.step].push((col, -energy));
            costs[0][col] = s.cost;
            // tie-breaks: less charging, then less export
            if s.kind.is_charge() {
                costs[1][col] = 1.0;
            }
            costs[2][col] = match s.kind {
                SegKind::ChargeSurplus => -1.0,
                SegKind::DischargeGrid => 1.0,
                _ => 0.0,
            };
        }
        for (t, r) in row_entries.into_iter().enumerate() {
            lp.add_row(r, if t == 0 { inputs.initial_soc_kwh } else { 0.0 });
        }

        Self {
            inputs,
            devices,
            segments,
            ranges,
            lp,
            costs,
            crash: (0..n).collect(),
            base_cost,
        }
    }

    fn steps(&self) -> usize {
        self.inputs.steps()
    }

    /// Solve the relaxation under the given bounds; `None` when infeasible.
    fn solve(&self, lower: &[f64], upper: &[f64]) -> Result<Option<NodeSolution>> {
        let n = self.steps();
        let mut lp = self.lp.clone();
        lp.lower.copy_from_slice(lower);
        lp.upper.copy_from_slice(upper);
        let objectives = [&self.costs[0][..], &self.costs[1][..], &self.costs[2][..]];
        let sol = match simplex::solve_lexicographic(&lp, &objectives, Some(&self.crash)) {
            Ok(s) => s,
            Err(LpError::Infeasible) => return Ok(None),
            Err(e) => return Err(Error::Numerical(e.to_string())),
        };
        let seg_values = sol.x[n..].to_vec();
        let flags = self.flags(&seg_values);
        Ok(Some(NodeSolution {
            bound: self.base_cost + sol.objectives[0],
            seg_values,
            flags,
        }))
    }

    fn flags(&self, seg: &[f64]) -> Vec<Flag> {
        let mut flags = Vec::new();
        for (t, &(a, b)) in self.ranges.iter().enumerate() {
            let mut ch = 0.0;
            let mut dh = 0.0;
            for k in a..b {
                if self.segments[k].kind.is_charge() {
                    ch += seg[k];
                } else {
                    dh += seg[k];
                }
            }
            if ch > ACTIVE_TOL && dh > ACTIVE_TOL {
                flags.push(Flag {
                    step: t,
                    kind: FlagKind::Mode,
                });
            }
            for (first, second, kind) in [
                (SegKind::ChargeSurplus, SegKind::ChargeGrid, FlagKind::ChargeOrder),
                (SegKind::DischargeLoad, SegKind::DischargeGrid, FlagKind::DischargeOrder),
            ] {
                let i = (a..b).find(|&k| self.segments[k].kind == first);
                let j = (a..b).find(|&k| self.segments[k].kind == second);
                if let (Some(i), Some(j)) = (i, j) {
                    let out_of_order = seg[j] > ACTIVE_TOL && seg[i] < self.segments[i].width - ACTIVE_TOL;
                    // only a problem when the later slice is strictly cheaper
                    if out_of_order && self.segments[i].cost > self.segments[j].cost {
                        flags.push(Flag { step: t, kind });
                    }
                }
            }
        }
        flags
    }

    fn root_bounds(&self) -> (Vec<f64>, Vec<f64>) {
        (self.lp.lower.clone(), self.lp.upper.clone())
    }

    /// Child bound sets that split `flag` into two realizable halves.
    fn branch(&self, flag: Flag, lower: &[f64], upper: &[f64]) -> [(Vec<f64>, Vec<f64>); 2] {
        let n = self.steps();
        let (a, b) = self.ranges[flag.step];
        let col_of = |kind: SegKind| (a..b).find(|&k| self.segments[k].kind == kind).map(|k| n + k);
        let mut left = (lower.to_vec(), upper.to_vec());
        let mut right = (lower.to_vec(), upper.to_vec());
        match flag.kind {
            FlagKind::Mode => {
                // left: charge only, right: discharge only
                for k in a..b {
                    if self.segments[k].kind.is_charge() {
                        right.1[n + k] = 0.0;
                    } else {
                        left.1[n + k] = 0.0;
                    }
                }
            }
            FlagKind::ChargeOrder | FlagKind::DischargeOrder => {
                let (first, second) = if flag.kind == FlagKind::ChargeOrder {
                    (SegKind::ChargeSurplus, SegKind::ChargeGrid)
                } else {
                    (SegKind::DischargeLoad, SegKind::DischargeGrid)
                };
                let (i, j) = (col_of(first).unwrap(), col_of(second).unwrap());
                // left: first slice full, right: second slice unused
                left.0[i] = upper[i];
                right.1[j] = 0.0;
            }
        }
        [left, right]
    }

    fn schedule(&self, sol: &NodeSolution, lp_solves: usize, relaxed: bool) -> DaySchedule {
        let n = self.steps();
        let inp = &self.inputs;
        let dt = inp.step_hours;
        let mut charge = vec![0.0; n];
        let mut discharge = vec![0.0; n];
        for (k, s) in self.segments.iter().enumerate() {
            let v = sol.seg_values[k];
            if s.kind.is_charge() {
                charge[s.step] += v;
            } else {
                discharge[s.step] += v;
            }
        }
        for v in charge.iter_mut().chain(discharge.iter_mut()) {
            if *v < ACTIVE_TOL {
                *v = 0.0;
            }
        }
        let mut import = vec![0.0; n];
        let mut export = vec![0.0; n];
        let mut soc = vec![0.0; n];
        let mut e = inp.initial_soc_kwh;
        let mut cost = 0.0;
        for t in 0..n {
            let net = inp.demand[t] - inp.pv[t] + charge[t] - discharge[t];
            import[t] = net.max(0.0);
            export[t] = (-net).max(0.0);
            cost += (import[t] * inp.import_price[t] - export[t] * inp.export_price[t]) * dt;
            e += (charge[t] * self.devices.eta_ch - discharge[t] / self.devices.eta_dh) * dt;
            soc[t] = e;
        }
        let mut flagged: Vec<usize> = sol.flags.iter().map(|f| f.step).collect();
        flagged.dedup();
        DaySchedule {
            import_kw: import,
            export_kw: export,
            charge_kw: charge,
            discharge_kw: discharge,
            soc_kwh: soc,
            initial_soc_kwh: inp.initial_soc_kwh,
            objective_eur: if relaxed { sol.bound } else { cost },
            status: SolveStatus::Optimal,
            flagged_steps: flagged,
            lp_solves,
        }
    }

    fn branch_and_bound(&self, root: NodeSolution, options: &SolverOptions) -> Result<(NodeSolution, usize)> {
        struct Node {
            sol: NodeSolution,
            lower: Vec<f64>,
            upper: Vec<f64>,
            seq: usize,
        }
        impl PartialEq for Node {
            fn eq(&self, other: &Self) -> bool {
                self.cmp(other) == Ordering::Equal
            }
        }
        impl Eq for Node {}
        impl PartialOrd for Node {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for Node {
            // min-heap on (bound, seq)
            fn cmp(&self, other: &Self) -> Ordering {
                other
                    .sol
                    .bound
                    .total_cmp(&self.sol.bound)
                    .then(other.seq.cmp(&self.seq))
            }
        }

        let (lower, upper) = self.root_bounds();
        let mut heap = BinaryHeap::new();
        heap.push(Node {
            sol: root,
            lower,
            upper,
            seq: 0,
        });
        let mut seq = 1;
        let mut solves = 0;
        while let Some(node) = heap.pop() {
            let Some(&flag) = node.sol.flags.first() else {
                return Ok((node.sol, solves));
            };
            for (lower, upper) in self.branch(flag, &node.lower, &node.upper) {
                if lower.iter().zip(&upper).any(|(l, u)| l > u) {
                    continue;
                }
                solves += 1;
                if solves > options.node_budget {
                    return Err(Error::NodeBudget {
                        budget: options.node_budget,
                    });
                }
                if let Some(sol) = self.solve(&lower, &upper)? {
                    heap.push(Node { sol, lower, upper, seq });
                    seq += 1;
                }
            }
        }
        Err(Error::Infeasible(
            "no realizable dispatch in branch-and-bound tree".into(),
        ))
    }
}

fn idle_schedule(inputs: &DayInputs) -> DaySchedule {
    let n = inputs.steps();
    let mut import = vec![0.0; n];
    let mut export = vec![0.0; n];
    let mut cost = 0.0;
    for t in 0..n {
        let net = inputs.demand[t] - inputs.pv[t];
        import[t] = net.max(0.0);
        export[t] = (-net).max(0.0);
        cost += (import[t] * inputs.import_price[t] - export[t] * inputs.export_price[t]) * inputs.step_hours;
    }
    DaySchedule {
        import_kw: import,
        export_kw: export,
        charge_kw: vec![0.0; n],
        discharge_kw: vec![0.0; n],
        soc_kwh: vec![inputs.initial_soc_kwh; n],
        initial_soc_kwh: inputs.initial_soc_kwh,
        objective_eur: cost,
        status: SolveStatus::Optimal,
        flagged_steps: Vec::new(),
        lp_solves: 0,
    }
}

/// Optimal dispatch of the LP relaxation (no complementarity enforced).
/// `flagged_steps` lists the steps where the relaxed point is not a valid
/// dispatch; `objective_eur` is the relaxation's bound.
pub fn solve_lp_relaxation(inputs: &DayInputs, devices: &DeviceParams) -> Result<DaySchedule> {
    devices.validate()?;
    inputs.validate(devices)?;
    if !devices.has_battery() {
        return Ok(idle_schedule(inputs));
    }
    let model = DayModel::build(*inputs, *devices);
    let (lower, upper) = model.root_bounds();
    let root = model
        .solve(&lower, &upper)?
        .ok_or_else(|| Error::Infeasible("root relaxation infeasible".into()))?;
    Ok(model.schedule(&root, 1, true))
}

/// Resolve the flagged steps of a relaxed schedule by branch-and-bound.
pub fn branch_on_complementarity(
    inputs: &DayInputs,
    devices: &DeviceParams,
    lp: &DaySchedule,
    options: &SolverOptions,
) -> Result<DaySchedule> {
    if lp.flagged_steps.is_empty() {
        return Ok(lp.clone());
    }
    let model = DayModel::build(*inputs, *devices);
    let (lower, upper) = model.root_bounds();
    let root = model
        .solve(&lower, &upper)?
        .ok_or_else(|| Error::Infeasible("root relaxation infeasible".into()))?;
    let (best, solves) = model.branch_and_bound(root, options)?;
    Ok(model.schedule(&best, lp.lp_solves + solves, false))
}

pub fn solve_day_with(inputs: &DayInputs, devices: &DeviceParams, options: &SolverOptions) -> Result<DaySchedule> {
    devices.validate()?;
    inputs.validate(devices)?;
    if !devices.has_battery() {
        return Ok(idle_schedule(inputs));
    }
    let model = DayModel::build(*inputs, *devices);
    let (lower, upper) = model.root_bounds();
    let root = model
        .solve(&lower, &upper)?
        .ok_or_else(|| Error::Infeasible("root relaxation infeasible".into()))?;
    if root.flags.is_empty() {
        return Ok(model.schedule(&root, 1, false));
    }
    let (best, solves) = model.branch_and_bound(root, options)?;
    Ok(model.schedule(&best, 1 + solves, false))
}

/// Exact optimum of the daily dispatch problem.
pub fn solve_day(inputs: &DayInputs, devices: &DeviceParams) -> Result<DaySchedule> {
    solve_day_with(inputs, devices, &SolverOptions::default())
}

/// Annual energy quantities (kWh) derived from a year of schedules.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EnergyTotals {
    pub pv_kwh: f64,
    pub pv_export_kwh: f64,
    pub demand_from_pv_kwh: f64,
    pub demand_from_bes_kwh: f64,
    pub demand_kwh: f64,
}

impl EnergyTotals {
    /// Add one step. PV covers demand first; battery discharge is credited
    /// to the residual demand and PV export to what PV has left after
    /// direct use.
    pub fn add_step(&mut self, pv: f64, demand: f64, discharge: f64, export: f64, dt: f64) {
        let direct = pv.min(demand);
        self.pv_kwh += pv * dt;
        self.demand_kwh += demand * dt;
        self.demand_from_pv_kwh += direct * dt;
        self.demand_from_bes_kwh += discharge.min(demand - direct) * dt;
        self.pv_export_kwh += export.min(pv - direct) * dt;
    }
}

#[derive(Debug, Clone)]
pub struct AnnualSchedule {
    pub days: Vec<DaySchedule>,
    pub totals: EnergyTotals,
    pub step_hours: f64,
}

impl AnnualSchedule {
    pub fn objective_eur(&self) -> f64 {
        self.days.iter().map(|d| d.objective_eur).sum()
    }
}

/// Solve every day in order, carrying the terminal SOC forward. Day 0
/// starts half full.
pub fn annual_dispatch(
    pv: &TimeSeries,
    demand: &TimeSeries,
    import_price: &TimeSeries,
    export_price: &TimeSeries,
    devices: &DeviceParams,
) -> Result<AnnualSchedule> {
    annual_dispatch_with(
        pv,
        demand,
        import_price,
        export_price,
        devices,
        &SolverOptions::default(),
    )
}

pub fn annual_dispatch_with(
    pv: &TimeSeries,
    demand: &TimeSeries,
    import_price: &TimeSeries,
    export_price: &TimeSeries,
    devices: &DeviceParams,
    options: &SolverOptions,
) -> Result<AnnualSchedule> {
    devices.validate()?;
    let n = pv.len();
    if demand.len() != n || import_price.len() != n || export_price.len() != n {
        return Err(Error::InvalidInput("annual series lengths differ".into()));
    }
    let steps = [pv, demand, import_price, export_price].map(|s| s.step_minutes());
    if steps.iter().any(|&s| s != steps[0]) {
        return Err(Error::InvalidInput("annual series resolutions differ".into()));
    }
    let dt = pv.step_hours();
    let cap = devices.bes_capacity_kwh;
    let mut soc = 0.5 * cap;
    let mut days = Vec::with_capacity(pv.days());
    let mut totals = EnergyTotals::default();
    for d in 0..pv.days() {
        let inputs = DayInputs {
            pv: pv.day(d)?.values,
            demand: demand.day(d)?.values,
            import_price: import_price.day(d)?.values,
            export_price: export_price.day(d)?.values,
            initial_soc_kwh: soc,
            step_hours: dt,
        };
        let schedule = solve_day_with(&inputs, devices, options).map_err(|e| match e {
            Error::Infeasible(msg) => Error::Infeasible(format!("day {d}: {msg}")),
            other => other,
        })?;
        for t in 0..inputs.steps() {
            totals.add_step(
                inputs.pv[t],
                inputs.demand[t],
                schedule.discharge_kw[t],
                schedule.export_kw[t],
                dt,
            );
        }
        soc = schedule.terminal_soc_kwh().clamp(0.0, cap);
        days.push(schedule);
    }
    Ok(AnnualSchedule {
        days,
        totals,
        step_hours: dt,
    })
}

/// Write schedules as CSV with a running step index across days.
pub fn write_schedule_csv<W: Write>(days: &[DaySchedule], first_step: usize, mut out: W) -> std::io::Result<()> {
    writeln!(out, "step,import_kw,export_kw,charge_kw,discharge_kw,soc_kwh")?;
    let mut step = first_step;
    for d in days {
        for t in 0..d.steps() {
            writeln!(
                out,
                "{step},{:.6},{:.6},{:.6},{:.6},{:.6}",
                d.import_kw[t], d.export_kw[t], d.charge_kw[t], d.discharge_kw[t], d.soc_kwh[t]
            )?;
            step += 1;
        }
    }
    Ok(())
}
