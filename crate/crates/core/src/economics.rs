//! Annualized costs, energy ratios, revenues and the annual mean electricity
//! price (AMEP) of a PV-battery configuration.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheduler::{AnnualSchedule, EnergyTotals};

/// What the operating-cost fraction is a share of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OpexBasis {
    /// share of the annualized capital cost: β = fraction × α
    #[default]
    Annuity,
    /// share of the investment per year: β = fraction
    Capex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub pv_cost_per_kwp: f64,
    pub bes_cost_per_kwh: f64,
    pub mean_import_price: f64,
    pub feed_in_tariff: f64,
    pub interest_rate: f64,
    pub lifetime_years: u32,
    pub opex_fraction: f64,
    pub opex_basis: OpexBasis,
}

impl Scenario {
    pub fn present() -> Self {
        Self {
            name: "present".into(),
            pv_cost_per_kwp: 1200.0,
            bes_cost_per_kwh: 900.0,
            mean_import_price: 0.319,
            feed_in_tariff: 0.068,
            interest_rate: 0.035,
            lifetime_years: 20,
            opex_fraction: 0.04,
            opex_basis: OpexBasis::Annuity,
        }
    }

    pub fn longterm() -> Self {
        Self {
            name: "longterm".into(),
            pv_cost_per_kwp: 800.0,
            bes_cost_per_kwh: 500.0,
            mean_import_price: 0.37,
            feed_in_tariff: 0.02,
            ..Self::present()
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "present" => Some(Self::present()),
            "longterm" | "long-term" => Some(Self::longterm()),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let money = [
            ("pv_cost_per_kwp", self.pv_cost_per_kwp),
            ("bes_cost_per_kwh", self.bes_cost_per_kwh),
            ("mean_import_price", self.mean_import_price),
            ("feed_in_tariff", self.feed_in_tariff),
            ("opex_fraction", self.opex_fraction),
        ];
        for (key, v) in money {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{key} = {v} must be finite and >= 0")));
            }
        }
        if !(self.interest_rate > 0.0 && self.interest_rate < 1.0) {
            return Err(Error::Config(format!(
                "interest_rate = {} must lie in (0, 1)",
                self.interest_rate
            )));
        }
        if self.lifetime_years < 1 {
            return Err(Error::Config("lifetime_years must be at least 1".into()));
        }
        Ok(())
    }

    pub fn annuity(&self) -> f64 {
        annuity_factor(self.interest_rate, self.lifetime_years)
    }

    /// Yearly operating cost per unit of investment.
    pub fn opex_rate(&self) -> f64 {
        match self.opex_basis {
            OpexBasis::Annuity => self.opex_fraction * self.annuity(),
            OpexBasis::Capex => self.opex_fraction,
        }
    }

    /// Annualized cost of both devices.
    pub fn capex(&self, pv_kwp: f64, bes_kwh: f64) -> f64 {
        let (r, n, beta) = (self.interest_rate, self.lifetime_years, self.opex_rate());
        annualized_capex(pv_kwp, self.pv_cost_per_kwp, r, n, beta)
            + annualized_capex(bes_kwh, self.bes_cost_per_kwh, r, n, beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FlexRemuneration {
    pub price_per_kwh: f64,
    pub calls_per_year: u32,
}

pub const MAX_CALLS_PER_YEAR: u32 = 365;

impl FlexRemuneration {
    pub fn new(price_per_kwh: f64, calls_per_year: u32) -> Result<Self> {
        let r = Self {
            price_per_kwh,
            calls_per_year,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.price_per_kwh >= 0.0) || !self.price_per_kwh.is_finite() {
            return Err(Error::Config(format!(
                "flex price {} must be finite and >= 0",
                self.price_per_kwh
            )));
        }
        if self.calls_per_year > MAX_CALLS_PER_YEAR {
            return Err(Error::Config(format!(
                "flex calls {} exceed {MAX_CALLS_PER_YEAR} per year",
                self.calls_per_year
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmepResult {
    pub annualized_capex_eur: f64,
    pub import_cost_eur: f64,
    pub pv_revenue_eur: f64,
    pub flex_revenue_eur: f64,
    pub export_ratio: f64,
    pub self_sufficiency: f64,
    pub amep_eur_per_kwh: f64,
}

/// Capital recovery factor; `1/n` at zero interest.
pub fn annuity_factor(r: f64, n: u32) -> f64 {
    if r == 0.0 {
        return 1.0 / f64::from(n);
    }
    r / (1.0 - (1.0 + r).powi(-(n as i32)))
}

/// Yearly cost of `size` units at `unit_cost`, with `opex_rate` added to the
/// annuity factor.
pub fn annualized_capex(size: f64, unit_cost: f64, r: f64, n: u32, opex_rate: f64) -> f64 {
    size * unit_cost * (annuity_factor(r, n) + opex_rate)
}

/// Export ratio and self-sufficiency from annual energy totals.
pub fn energy_ratios_from_totals(totals: &EnergyTotals) -> Result<(f64, f64)> {
    if !(totals.demand_kwh > 0.0) {
        return Err(Error::ZeroDemand);
    }
    let f_e = if totals.pv_kwh > 0.0 {
        (totals.pv_export_kwh / totals.pv_kwh).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let f_s = ((totals.demand_from_pv_kwh + totals.demand_from_bes_kwh) / totals.demand_kwh).clamp(0.0, 1.0);
    Ok((f_e, f_s))
}

pub fn energy_ratios(annual: &AnnualSchedule) -> Result<(f64, f64)> {
    energy_ratios_from_totals(&annual.totals)
}

pub fn import_cost(e_d: f64, mean_import_price: f64, f_s: f64) -> f64 {
    e_d * mean_import_price * (1.0 - f_s)
}

pub fn feed_in_revenue(e_pv: f64, feed_in_tariff: f64, f_e: f64) -> f64 {
    e_pv * feed_in_tariff * f_e
}

pub fn flexibility_revenue(e_flex: f64, remun: &FlexRemuneration) -> f64 {
    e_flex * remun.price_per_kwh * f64::from(remun.calls_per_year)
}

pub fn amep(capex: f64, c_el: f64, r_pv: f64, r_flex: f64, e_d: f64) -> Result<f64> {
    if !(e_d > 0.0) {
        return Err(Error::ZeroDemand);
    }
    Ok((capex + c_el - r_pv - r_flex) / e_d)
}

pub fn system_lcoe(capex: f64, e_pv: f64) -> Result<f64> {
    if !(e_pv > 0.0) {
        return Err(Error::ZeroYield);
    }
    Ok(capex / e_pv)
}

/// Full cost breakdown of one sizing.
pub fn evaluate(
    scenario: &Scenario,
    pv_kwp: f64,
    bes_kwh: f64,
    totals: &EnergyTotals,
    flex_energy_kwh: f64,
    remun: &FlexRemuneration,
) -> Result<AmepResult> {
    let (f_e, f_s) = energy_ratios_from_totals(totals)?;
    let capex = scenario.capex(pv_kwp, bes_kwh);
    let c_el = import_cost(totals.demand_kwh, scenario.mean_import_price, f_s);
    let r_pv = feed_in_revenue(totals.pv_kwh, scenario.feed_in_tariff, f_e);
    let r_flex = flexibility_revenue(flex_energy_kwh, remun);
    Ok(AmepResult {
        annualized_capex_eur: capex,
        import_cost_eur: c_el,
        pv_revenue_eur: r_pv,
        flex_revenue_eur: r_flex,
        export_ratio: f_e,
        self_sufficiency: f_s,
        amep_eur_per_kwh: amep(capex, c_el, r_pv, r_flex, totals.demand_kwh)?,
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: Option<String>,
    pv: PvSection,
    bes: BesSection,
    prices: PriceSection,
    finance: FinanceSection,
    #[serde(default)]
    flex: FlexSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PvSection {
    pv_cost_per_kwp: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BesSection {
    bes_cost_per_kwh: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PriceSection {
    mean_import_price: f64,
    feed_in_tariff: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FinanceSection {
    interest_rate: f64,
    lifetime_years: u32,
    opex_fraction: f64,
    #[serde(default)]
    opex_basis: OpexBasis,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FlexSection {
    #[serde(default)]
    price_per_kwh: f64,
    #[serde(default)]
    calls_per_year: u32,
}

/// Parse a scenario file with `[pv]`, `[bes]`, `[prices]`, `[finance]` and
/// an optional `[flex]` section.
pub fn parse_scenario(text: &str, default_name: &str) -> Result<(Scenario, FlexRemuneration)> {
    let f: ScenarioFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let scenario = Scenario {
        name: f.name.unwrap_or_else(|| default_name.to_string()),
        pv_cost_per_kwp: f.pv.pv_cost_per_kwp,
        bes_cost_per_kwh: f.bes.bes_cost_per_kwh,
        mean_import_price: f.prices.mean_import_price,
        feed_in_tariff: f.prices.feed_in_tariff,
        interest_rate: f.finance.interest_rate,
        lifetime_years: f.finance.lifetime_years,
        opex_fraction: f.finance.opex_fraction,
        opex_basis: f.finance.opex_basis,
    };
    scenario.validate()?;
    let flex = FlexRemuneration {
        price_per_kwh: f.flex.price_per_kwh,
        calls_per_year: f.flex.calls_per_year,
    };
    flex.validate()?;
    Ok((scenario, flex))
}

pub fn load_scenario(path: &Path) -> Result<(Scenario, FlexRemuneration)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("custom");
    parse_scenario(&text, stem).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Render a scenario in the file format read by [`parse_scenario`].
pub fn scenario_to_toml(s: &Scenario, flex: &FlexRemuneration) -> String {
    let basis = match s.opex_basis {
        OpexBasis::Annuity => "annuity",
        OpexBasis::Capex => "capex",
    };
    format!(
        "name = \"{}\"\n\n[pv]\npv_cost_per_kwp = {:?}\n\n[bes]\nbes_cost_per_kwh = {:?}\n\n\
         [prices]\nmean_import_price = {:?}\nfeed_in_tariff = {:?}\n\n\
         [finance]\ninterest_rate = {:?}\nlifetime_years = {}\nopex_fraction = {:?}\nopex_basis = \"{basis}\"\n\n\
         [flex]\nprice_per_kwh = {:?}\ncalls_per_year = {}\n",
        s.name,
        s.pv_cost_per_kwp,
        s.bes_cost_per_kwh,
        s.mean_import_price,
        s.feed_in_tariff,
        s.interest_rate,
        s.lifetime_years,
        s.opex_fraction,
        flex.price_per_kwh,
        flex.calls_per_year
    )
}
