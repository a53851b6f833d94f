//! Positive and negative flexibility of PV and battery around the optimal
//! schedule.
//!
//! Negative flexibility removes energy from the grid (extra charging, PV
//! curtailment); positive flexibility adds energy to the grid or avoids a
//! scheduled withdrawal. Every step gets a power, a duration over which that
//! power can be held, and the resulting energy. Durations never extend past
//! the end of the day and are capped so that the deviation, superimposed on
//! the baseline SOC, keeps the battery within its limits.

use std::io::Write;

use crate::error::{Error, Result};
use crate::scheduler::{AnnualSchedule, DaySchedule, DeviceParams, SOC_TOL};
use crate::timeseries::TimeSeries;

/// Slack when comparing flex powers along a run.
pub const RUN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Device {
    Pv,
    Bes,
}

impl Device {
    pub fn as_str(self) -> &'static str {
        match self {
            Device::Pv => "pv",
            Device::Bes => "bes",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Positive => "positive",
            Sign::Negative => "negative",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlexSample {
    pub device: Device,
    pub sign: Sign,
    pub power_kw: f64,
    pub duration_steps: usize,
    pub energy_kwh: f64,
}

/// Flexibility samples for a run of steps. Each present vector has one
/// sample per step; PV offers only negative flexibility, and a vector is
/// empty when the device is not installed.
#[derive(Debug, Clone, PartialEq)]
pub struct FlexProfile {
    pub step_hours: f64,
    pub steps: usize,
    pub pv_negative: Vec<FlexSample>,
    pub bes_negative: Vec<FlexSample>,
    pub bes_positive: Vec<FlexSample>,
}

impl FlexProfile {
    fn empty(step_hours: f64) -> Self {
        Self {
            step_hours,
            steps: 0,
            pv_negative: Vec::new(),
            bes_negative: Vec::new(),
            bes_positive: Vec::new(),
        }
    }

    fn extend(&mut self, other: FlexProfile) {
        self.steps += other.steps;
        self.pv_negative.extend(other.pv_negative);
        self.bes_negative.extend(other.bes_negative);
        self.bes_positive.extend(other.bes_positive);
    }

    /// All samples in step order, `(step, sample)`.
    pub fn samples(&self) -> impl Iterator<Item = (usize, &FlexSample)> {
        let pv = self.pv_negative.iter().enumerate();
        let neg = self.bes_negative.iter().enumerate();
        let pos = self.bes_positive.iter().enumerate();
        let mut all: Vec<_> = pv.chain(neg).chain(pos).collect();
        all.sort_by_key(|(t, s)| (*t, s.device as u8, s.sign as u8));
        all.into_iter()
    }

    /// Per-step positive energy, summed over devices.
    pub fn positive_energy(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.steps];
        for (t, s) in self.bes_positive.iter().enumerate() {
            out[t] += s.energy_kwh;
        }
        out
    }

    /// Per-step negative energy, summed over devices.
    pub fn negative_energy(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.steps];
        for (t, s) in self.pv_negative.iter().enumerate() {
            out[t] += s.energy_kwh;
        }
        for (t, s) in self.bes_negative.iter().enumerate() {
            out[t] += s.energy_kwh;
        }
        out
    }
}

/// Curtailment potential: the whole PV output.
pub fn pv_negative_flex_power(schedule: &DaySchedule, pv: &[f64]) -> Vec<f64> {
    debug_assert_eq!(schedule.steps(), pv.len());
    pv.to_vec()
}

/// Extra charging the battery could take on: unused charge power plus the
/// scheduled discharge it could cancel.
pub fn bes_negative_flex_power(schedule: &DaySchedule, devices: &DeviceParams) -> Vec<f64> {
    schedule
        .charge_kw
        .iter()
        .zip(&schedule.discharge_kw)
        .map(|(ch, dh)| (devices.bes_charge_kw + dh - ch).max(0.0))
        .collect()
}

/// Extra discharge the battery could deliver: unused discharge power plus
/// the scheduled charging it could skip.
pub fn bes_positive_flex_power(schedule: &DaySchedule, devices: &DeviceParams) -> Vec<f64> {
    schedule
        .charge_kw
        .iter()
        .zip(&schedule.discharge_kw)
        .map(|(ch, dh)| (devices.bes_discharge_kw - dh + ch).max(0.0))
        .collect()
}

/// Length of the run starting at `t` over which the flex power stays at or
/// above `flex_power[t]`.
pub fn flex_duration(flex_power: &[f64], t: usize) -> usize {
    let p = flex_power[t];
    flex_power[t..].iter().take_while(|&&v| v >= p - RUN_TOL).count()
}

/// SOC at the start of every step followed by the end-of-day value.
fn soc_before(schedule: &DaySchedule) -> Vec<f64> {
    let mut e = Vec::with_capacity(schedule.steps() + 1);
    e.push(schedule.initial_soc_kwh);
    e.extend_from_slice(&schedule.soc_kwh);
    e
}

/// Shorten `duration` until delivering `power` from step `t`, added to the
/// baseline SOC for the rest of the day, keeps the battery within
/// `[0, capacity]`. PV is not energy-limited and is returned unchanged.
#[allow(clippy::too_many_arguments)]
pub fn cap_by_soc(
    device: Device,
    sign: Sign,
    schedule: &DaySchedule,
    devices: &DeviceParams,
    t: usize,
    power: f64,
    duration: usize,
    step_hours: f64,
) -> usize {
    if device == Device::Pv {
        return duration;
    }
    let soc = &schedule.soc_kwh;
    let n = soc.len();
    // bound on how far baseline SOC may rise (negative) or fall (positive)
    let headroom: Vec<f64> = match sign {
        Sign::Negative => soc.iter().map(|e| devices.bes_capacity_kwh - e).collect(),
        Sign::Positive => soc.to_vec(),
    };
    let q = match sign {
        Sign::Negative => power * devices.eta_ch * step_hours,
        Sign::Positive => power / devices.eta_dh * step_hours,
    };
    // suffix minimum of the headroom
    let mut tail = vec![f64::INFINITY; n + 1];
    for k in (0..n).rev() {
        tail[k] = tail[k + 1].min(headroom[k]);
    }
    let mut best = 0;
    for d in 1..=duration.min(n - t) {
        // step t+d-1 now carries d increments, as do all later steps
        if (d as f64) * q > tail[t + d - 1] + SOC_TOL {
            break;
        }
        best = d;
    }
    best
}

pub fn flex_energy(power: f64, duration_steps: usize, step_hours: f64) -> f64 {
    power * duration_steps as f64 * step_hours
}

fn samples_for(
    device: Device,
    sign: Sign,
    power: &[f64],
    schedule: &DaySchedule,
    devices: &DeviceParams,
    step_hours: f64,
) -> Vec<FlexSample> {
    (0..power.len())
        .map(|t| {
            let p = power[t];
            let run = flex_duration(power, t);
            let d = cap_by_soc(device, sign, schedule, devices, t, p, run, step_hours);
            FlexSample {
                device,
                sign,
                power_kw: p,
                duration_steps: d,
                energy_kwh: flex_energy(p, d, step_hours),
            }
        })
        .collect()
}

/// Flexibility of one day's schedule.
pub fn day_flex_profile(schedule: &DaySchedule, pv: &[f64], devices: &DeviceParams, step_hours: f64) -> FlexProfile {
    let mut profile = FlexProfile::empty(step_hours);
    profile.steps = schedule.steps();
    if devices.pv_peak_kw > 0.0 {
        let p = pv_negative_flex_power(schedule, pv);
        profile.pv_negative = samples_for(Device::Pv, Sign::Negative, &p, schedule, devices, step_hours);
    }
    if devices.has_battery() {
        let p = bes_negative_flex_power(schedule, devices);
        profile.bes_negative = samples_for(Device::Bes, Sign::Negative, &p, schedule, devices, step_hours);
        let p = bes_positive_flex_power(schedule, devices);
        profile.bes_positive = samples_for(Device::Bes, Sign::Positive, &p, schedule, devices, step_hours);
    }
    profile
}

/// Flexibility over a whole year; runs do not cross midnight.
pub fn annual_flex_profile(annual: &AnnualSchedule, pv: &TimeSeries, devices: &DeviceParams) -> Result<FlexProfile> {
    let mut profile = FlexProfile::empty(annual.step_hours);
    for (d, schedule) in annual.days.iter().enumerate() {
        let day = pv.day(d)?;
        if day.values.len() != schedule.steps() {
            return Err(Error::InvalidInput("PV series does not match schedule".into()));
        }
        profile.extend(day_flex_profile(schedule, day.values, devices, annual.step_hours));
    }
    Ok(profile)
}

/// Mean of the per-step positive and negative flexibility energies.
pub fn average_flex_energy(profile: &FlexProfile) -> Result<f64> {
    if profile.steps == 0 {
        return Err(Error::EmptyProfile);
    }
    let n = profile.steps as f64;
    let pos: f64 = profile.positive_energy().iter().sum::<f64>() / n;
    let neg: f64 = profile.negative_energy().iter().sum::<f64>() / n;
    Ok((pos + neg) / 2.0)
}

/// Simulate a capped flex delivery on top of the baseline and report
/// whether the SOC stays within limits for the rest of the day.
pub fn soc_superposition_ok(
    sample: &FlexSample,
    schedule: &DaySchedule,
    devices: &DeviceParams,
    t: usize,
    step_hours: f64,
) -> bool {
    if sample.device == Device::Pv {
        return true;
    }
    let delta = match sample.sign {
        Sign::Negative => sample.power_kw * devices.eta_ch * step_hours,
        Sign::Positive => -sample.power_kw / devices.eta_dh * step_hours,
    };
    let soc = soc_before(schedule);
    let mut added = 0.0;
    for k in t..schedule.steps() {
        if k < t + sample.duration_steps {
            added += delta;
        }
        let e = soc[k + 1] + added;
        if e < -SOC_TOL || e > devices.bes_capacity_kwh + SOC_TOL {
            return false;
        }
    }
    true
}

pub fn write_flex_csv<W: Write>(profile: &FlexProfile, first_step: usize, mut out: W) -> std::io::Result<()> {
    writeln!(out, "step,device,sign,power_kw,duration_steps,energy_kwh")?;
    for (t, s) in profile.samples() {
        writeln!(
            out,
            "{},{},{},{:.6},{},{:.6}",
            first_step + t,
            s.device.as_str(),
            s.sign.as_str(),
            s.power_kw,
            s.duration_steps,
            s.energy_kwh
        )?;
    }
    Ok(())
}
