//! Deterministic synthetic year of PV, household load and retail price.
//!
//! PV is a daylight half-sine with a seasonal day length and amplitude and a
//! random daily cloudiness factor. Load has morning and evening peaks on a
//! base with multiplicative noise. Price follows a day-ahead-like daily shape
//! plus noise and is shifted to a retail mean.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Normal};

use crate::error::{Error, Result};
use crate::timeseries::{save_series, scale_price_to_mean, scale_to_annual_energy, SeriesKind, TimeSeries};

pub const DAYS: usize = 365;
pub const STEP_MINUTES: u32 = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticConfig {
    pub seed: u64,
    pub annual_demand_kwh: f64,
    pub pv_peak_kw: f64,
    /// annual yield per kWp
    pub specific_yield_kwh: f64,
    pub mean_price: f64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            annual_demand_kwh: 4000.0,
            pv_peak_kw: 3.0,
            specific_yield_kwh: 1000.0,
            mean_price: 0.319,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticData {
    pub pv: TimeSeries,
    pub load: TimeSeries,
    pub price: TimeSeries,
}

fn steps_per_day() -> usize {
    (24 * 60 / STEP_MINUTES) as usize
}

/// Position in the year in [0, 1), zero at the winter solstice.
fn season(day: usize) -> f64 {
    ((day as f64 + 10.0) / DAYS as f64).fract()
}

/// 1 at midsummer, -1 at midwinter.
fn summer(day: usize) -> f64 {
    -(2.0 * PI * season(day)).cos()
}

fn pv_shape(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = steps_per_day();
    let clouds = Beta::new(1.5, 1.2).expect("valid beta parameters");
    let mut out = Vec::with_capacity(DAYS * n);
    for day in 0..DAYS {
        let s = summer(day);
        let day_length = 12.0 + 4.0 * s;
        let amplitude = 0.6 + 0.4 * s;
        let cloud = 0.15 + 0.85 * clouds.sample(rng);
        let sunrise = 12.5 - day_length / 2.0;
        for t in 0..n {
            let hour = (t as f64 + 0.5) * 24.0 / n as f64;
            let x = (hour - sunrise) / day_length;
            let v = if (0.0..=1.0).contains(&x) {
                // intra-day flicker on cloudy days
                let flicker = 1.0 - (1.0 - cloud) * 0.3 * rng.gen::<f64>();
                amplitude * cloud * flicker * (PI * x).sin()
            } else {
                0.0
            };
            out.push(v.max(0.0));
        }
    }
    out
}

fn load_shape(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = steps_per_day();
    let noise = Normal::new(1.0, 0.25).expect("valid normal parameters");
    let bump = |h: f64, centre: f64, width: f64| (-((h - centre) / width).powi(2)).exp();
    let mut out = Vec::with_capacity(DAYS * n);
    for day in 0..DAYS {
        let seasonal = 1.0 - 0.15 * summer(day);
        let weekend = day % 7 >= 5;
        let morning = if weekend { 9.0 } else { 7.0 };
        for t in 0..n {
            let h = (t as f64 + 0.5) * 24.0 / n as f64;
            let shape = 0.25 + 0.55 * bump(h, morning, 1.2) + 0.25 * bump(h, 13.0, 2.0) + 0.9 * bump(h, 19.5, 2.2);
            let v: f64 = seasonal * shape * noise.sample(rng);
            out.push(v.max(0.02));
        }
    }
    out
}

fn price_shape(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = steps_per_day();
    let noise = Normal::new(0.0, 0.003).expect("valid normal parameters");
    let bump = |h: f64, centre: f64, width: f64| (-((h - centre) / width).powi(2)).exp();
    let mut out = Vec::with_capacity(DAYS * n);
    for day in 0..DAYS {
        let level = 0.04 + 0.008 * rng.gen::<f64>();
        let solar_dip = 0.006 + 0.006 * summer(day);
        for t in 0..n {
            let h = (t as f64 + 0.5) * 24.0 / n as f64;
            let v = level - 0.008 * (2.0 * PI * (h - 14.0) / 24.0).cos()
                + 0.010 * bump(h, 8.0, 1.5)
                + 0.014 * bump(h, 19.0, 2.0)
                - solar_dip * bump(h, 13.5, 2.5)
                + noise.sample(rng);
            out.push(v);
        }
    }
    out
}

/// Scale a non-negative shape so its energy matches `target_kwh` without
/// any sample exceeding `peak`.
fn fit_pv(shape: &[f64], peak: f64, target_kwh: f64, dt: f64) -> Result<Vec<f64>> {
    let raw: f64 = shape.iter().sum::<f64>() * dt;
    if raw <= 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let mut scale = target_kwh / raw;
    let mut values = Vec::new();
    for _ in 0..50 {
        values = shape.iter().map(|v| (v * scale).min(peak)).collect();
        let e: f64 = values.iter().sum::<f64>() * dt;
        if (e - target_kwh).abs() <= 1e-9 * target_kwh {
            break;
        }
        scale *= target_kwh / e;
    }
    Ok(values)
}

pub fn generate(cfg: &SyntheticConfig) -> Result<SyntheticData> {
    if !(cfg.annual_demand_kwh > 0.0) || !(cfg.pv_peak_kw > 0.0) || !(cfg.specific_yield_kwh > 0.0) {
        return Err(Error::InvalidInput(
            "synthetic demand, PV peak and specific yield must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dt = f64::from(STEP_MINUTES) / 60.0;

    let pv_raw = pv_shape(&mut rng);
    let pv_values = fit_pv(&pv_raw, cfg.pv_peak_kw, cfg.pv_peak_kw * cfg.specific_yield_kwh, dt)?;
    let pv = TimeSeries::new(pv_values, STEP_MINUTES, SeriesKind::Power)?;

    let load = TimeSeries::new(load_shape(&mut rng), STEP_MINUTES, SeriesKind::Power)?;
    let load = scale_to_annual_energy(&load, cfg.annual_demand_kwh)?;

    let price = TimeSeries::new(price_shape(&mut rng), STEP_MINUTES, SeriesKind::Price)?;
    let price = scale_price_to_mean(&price, cfg.mean_price)?;

    Ok(SyntheticData { pv, load, price })
}

/// Generate a year with default yield and price level.
pub fn gen_data(seed: u64, annual_demand_kwh: f64, pv_peak_kw: f64) -> Result<SyntheticData> {
    generate(&SyntheticConfig {
        seed,
        annual_demand_kwh,
        pv_peak_kw,
        ..SyntheticConfig::default()
    })
}

/// Write `pv.csv`, `load.csv` and `price.csv` into `dir`.
pub fn write_data(data: &SyntheticData, dir: &Path) -> Result<[PathBuf; 3]> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let paths = [dir.join("pv.csv"), dir.join("load.csv"), dir.join("price.csv")];
    save_series(&data.pv, &paths[0])?;
    save_series(&data.load, &paths[1])?;
    save_series(&data.price, &paths[2])?;
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_files() {
        let dir = tempfile::tempdir().unwrap();
        let a = gen_data(7, 4000.0, 3.0).unwrap();
        let b = gen_data(7, 4000.0, 3.0).unwrap();
        let pa = write_data(&a, &dir.path().join("a")).unwrap();
        let pb = write_data(&b, &dir.path().join("b")).unwrap();
        for (x, y) in pa.iter().zip(&pb) {
            assert_eq!(std::fs::read(x).unwrap(), std::fs::read(y).unwrap());
        }
        assert_ne!(gen_data(8, 4000.0, 3.0).unwrap(), a);
    }

    #[test]
    fn pv_respects_peak_and_yield() {
        let d = gen_data(1, 4000.0, 3.0).unwrap();
        let max = d.pv.values().iter().cloned().fold(0.0, f64::max);
        assert!(max <= 3.0);
        assert!(max > 2.0, "max {max}");
        assert!((d.pv.energy_kwh() - 3000.0).abs() < 3.0);
        assert_eq!(d.pv.days(), 365);
        // nights are dark
        assert_eq!(d.pv.values()[0], 0.0);
    }

    #[test]
    fn load_matches_demand() {
        let d = gen_data(3, 4000.0, 3.0).unwrap();
        assert!((d.load.energy_kwh() - 4000.0).abs() <= 4.0);
        assert!(d.load.values().iter().all(|v| *v > 0.0));
    }

    #[test]
    fn price_has_retail_mean_and_daily_spread() {
        let d = gen_data(3, 4000.0, 3.0).unwrap();
        assert!((d.price.mean() - 0.319).abs() < 1e-12);
        let day = d.price.day(100).unwrap().values;
        let hi = day.iter().cloned().fold(f64::MIN, f64::max);
        let lo = day.iter().cloned().fold(f64::MAX, f64::min);
        assert!(hi - lo > 0.01 && hi - lo < 0.1, "spread {}", hi - lo);
    }

    #[test]
    fn rejects_non_positive_parameters() {
        assert!(gen_data(1, 0.0, 3.0).is_err());
        assert!(gen_data(1, 4000.0, 0.0).is_err());
    }
}
