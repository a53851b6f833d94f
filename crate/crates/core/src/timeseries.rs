//! Uniformly sampled power and price series.
//!
//! Series are stored as plain sample vectors. The CSV format is a
//! `timestamp,value` header followed by one row per step; timestamps are
//! checked for uniform spacing but otherwise carry no information.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use chrono::{DateTime, Duration, NaiveDate, NaiveDateTime};

use crate::error::{Error, Result};

pub const MINUTES_PER_DAY: u32 = 1440;
pub const DAYS_PER_YEAR: usize = 365;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// kW, non-negative
    Power,
    /// EUR/kWh, any sign
    Price,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    step_minutes: u32,
    kind: SeriesKind,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>, step_minutes: u32, kind: SeriesKind) -> Result<Self> {
        if step_minutes == 0 || !MINUTES_PER_DAY.is_multiple_of(step_minutes) {
            return Err(Error::Resolution(format!(
                "step of {step_minutes} min does not divide a day"
            )));
        }
        let per_day = (MINUTES_PER_DAY / step_minutes) as usize;
        if values.is_empty() || !values.len().is_multiple_of(per_day) {
            return Err(Error::Resolution(format!(
                "{} samples is not a whole number of {per_day}-step days",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite sample at index {i}")));
        }
        if kind == SeriesKind::Power {
            if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| **v < 0.0) {
                return Err(Error::Negative {
                    what: "power",
                    index,
                    value,
                });
            }
        }
        Ok(Self {
            values,
            step_minutes,
            kind,
        })
    }

    /// A series holding `value` at every step for `days` days.
    pub fn constant(value: f64, days: usize, step_minutes: u32, kind: SeriesKind) -> Result<Self> {
        let per_day = (MINUTES_PER_DAY / step_minutes.max(1)) as usize;
        Self::new(vec![value; per_day * days], step_minutes, kind)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn step_minutes(&self) -> u32 {
        self.step_minutes
    }

    pub fn step_hours(&self) -> f64 {
        f64::from(self.step_minutes) / 60.0
    }

    pub fn steps_per_day(&self) -> usize {
        (MINUTES_PER_DAY / self.step_minutes) as usize
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn days(&self) -> usize {
        self.values.len() / self.steps_per_day()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Time integral in kWh (power series).
    pub fn energy_kwh(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.step_hours()
    }

    /// Energy integral normalized to a 365-day year.
    pub fn annual_energy_kwh(&self) -> f64 {
        self.energy_kwh() * DAYS_PER_YEAR as f64 / self.days() as f64
    }

    /// Multiply every sample by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.values.iter().map(|v| v * factor).collect(),
            self.step_minutes,
            self.kind,
        )
    }

    pub fn day(&self, day_index: usize) -> Result<DayView<'_>> {
        let days = self.days();
        if day_index >= days {
            return Err(Error::DayOutOfRange { day: day_index, days });
        }
        let n = self.steps_per_day();
        Ok(DayView {
            day_index,
            values: &self.values[day_index * n..(day_index + 1) * n],
        })
    }

    pub fn iter_days(&self) -> impl Iterator<Item = DayView<'_>> {
        self.values
            .chunks_exact(self.steps_per_day())
            .enumerate()
            .map(|(day_index, values)| DayView { day_index, values })
    }
}

/// One day's window into a [`TimeSeries`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DayView<'a> {
    pub day_index: usize,
    pub values: &'a [f64],
}

/// Rescale a power series so its (annualized) energy equals `target_kwh`.
pub fn scale_to_annual_energy(series: &TimeSeries, target_kwh: f64) -> Result<TimeSeries> {
    if series.kind != SeriesKind::Power {
        return Err(Error::InvalidInput("energy scaling needs a power series".into()));
    }
    if !(target_kwh > 0.0) {
        return Err(Error::InvalidInput(format!(
            "target energy {target_kwh} must be positive"
        )));
    }
    let current = series.annual_energy_kwh();
    if current <= 0.0 {
        return Err(Error::ZeroEnergy);
    }
    series.scaled(target_kwh / current)
}

/// Shift a price series by a constant so its mean equals `target_mean`.
/// The additive shift keeps the intra-day spread intact.
pub fn scale_price_to_mean(series: &TimeSeries, target_mean: f64) -> Result<TimeSeries> {
    if series.kind != SeriesKind::Price {
        return Err(Error::InvalidInput("mean shifting needs a price series".into()));
    }
    let offset = target_mean - series.mean();
    TimeSeries::new(
        series.values.iter().map(|v| v + offset).collect(),
        series.step_minutes,
        series.kind,
    )
}

pub fn day(series: &TimeSeries, day_index: usize) -> Result<DayView<'_>> {
    series.day(day_index)
}

fn parse_timestamp(s: &str) -> Option<NaiveDateTime> {
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return Some(t.naive_utc());
    }
    const FORMATS: [&str; 4] = [
        "%Y-%m-%d %H:%M:%S",
        "%Y-%m-%dT%H:%M:%S",
        "%Y-%m-%d %H:%M",
        "%Y-%m-%dT%H:%M",
    ];
    FORMATS.iter().find_map(|f| NaiveDateTime::parse_from_str(s, f).ok())
}

/// Read a `timestamp,value` CSV with `step_minutes` spacing.
pub fn load_series_with_step(path: &Path, kind: SeriesKind, step_minutes: u32) -> Result<TimeSeries> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let parse_err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };

    let headers = reader.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    if headers.len() != 2 || &headers[0] != "timestamp" || &headers[1] != "value" {
        return Err(parse_err(1, "expected header `timestamp,value`".into()));
    }

    let step = Duration::minutes(i64::from(step_minutes));
    let mut values = Vec::new();
    let mut prev: Option<NaiveDateTime> = None;
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| parse_err(line, e.to_string()))?;
        if record.len() != 2 {
            return Err(parse_err(line, format!("expected 2 fields, found {}", record.len())));
        }
        let ts =
            parse_timestamp(&record[0]).ok_or_else(|| parse_err(line, format!("bad timestamp `{}`", &record[0])))?;
        let value: f64 = record[1]
            .parse()
            .map_err(|_| parse_err(line, format!("bad value `{}`", &record[1])))?;
        if let Some(p) = prev {
            let gap = ts - p;
            if gap != step {
                return Err(Error::Resolution(format!(
                    "{}: line {line}: spacing of {} min, expected {step_minutes}",
                    path.display(),
                    gap.num_minutes()
                )));
            }
        }
        prev = Some(ts);
        values.push(value);
    }
    let series = TimeSeries::new(values, step_minutes, kind)?;
    if series.days() == DAYS_PER_YEAR + 1 {
        return Err(Error::Resolution(
            "leap-year series (366 days) are not supported".into(),
        ));
    }
    Ok(series)
}

pub fn load_series(path: &Path, kind: SeriesKind) -> Result<TimeSeries> {
    load_series_with_step(path, kind, 15)
}

/// Timestamps written to CSV start here; readers only check their spacing.
fn epoch() -> NaiveDateTime {
    NaiveDate::from_ymd_opt(2019, 1, 1)
        .and_then(|d| d.and_hms_opt(0, 0, 0))
        .expect("valid epoch")
}

pub fn write_series<W: Write>(series: &TimeSeries, mut out: W) -> std::io::Result<()> {
    let step = Duration::minutes(i64::from(series.step_minutes));
    let mut ts = epoch();
    writeln!(out, "timestamp,value")?;
    for v in &series.values {
        // `{}` is the shortest representation that parses back bit-identically
        writeln!(out, "{},{}", ts.format("%Y-%m-%d %H:%M:%S"), v)?;
        ts += step;
    }
    Ok(())
}

pub fn save_series(series: &TimeSeries, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    write_series(series, &mut out).map_err(io_err)?;
    out.flush().map_err(io_err)
}
