//! Dispatch, flexibility and sizing economics for residential PV-battery
//! systems.
//!
//! The pipeline runs a cost-optimal daily battery schedule over a year
//! ([`scheduler`]), measures the flexibility left around that schedule
//! ([`flexibility`]), prices the configuration ([`economics`]) and sweeps
//! sizes and flexibility remuneration ([`sensitivity`]).

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod economics;
pub mod error;
pub mod flexibility;
pub mod scheduler;
pub mod sensitivity;
pub mod simplex;
pub mod synthetic;
pub mod timeseries;

pub use economics::{AmepResult, FlexRemuneration, OpexBasis, Scenario};
pub use error::{Error, ErrorClass, Result};
pub use flexibility::{Device, FlexProfile, FlexSample, Sign};
pub use scheduler::{AnnualSchedule, DayInputs, DaySchedule, DeviceParams, EnergyTotals, SolveStatus};
pub use sensitivity::{CellRecord, DeviceTemplate, FlexGrid, FlexSweep, InputData, SizingGrid, SweepResult};
pub use timeseries::{DayView, SeriesKind, TimeSeries};
