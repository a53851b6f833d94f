use pvflex::economics::{evaluate, FlexRemuneration, Scenario};
use pvflex::flexibility::{annual_flex_profile, average_flex_energy};
use pvflex::scheduler::annual_dispatch;
use pvflex::sensitivity::{
    evaluate_cell, sweep_sizing, write_sizing_csv, DeviceTemplate, InputData, SizingGrid, SweepResult,
};
use pvflex::synthetic::{gen_data, write_data};
use pvflex::timeseries::{load_series, SeriesKind};

fn data() -> InputData {
    let d = gen_data(11, 3500.0, 3.0).unwrap();
    InputData::new(d.pv, 3.0, d.load, d.price).unwrap()
}

fn small_sweep(scenario: &Scenario, remun: &FlexRemuneration, workers: usize) -> SweepResult {
    let grid = SizingGrid::new(vec![0.0, 0.5, 1.0, 1.5], vec![0.0, 0.5, 1.0]).unwrap();
    sweep_sizing(&grid, scenario, &data(), &DeviceTemplate::default(), remun, workers).unwrap()
}

#[test]
fn synthetic_files_round_trip_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let d = gen_data(3, 4000.0, 3.0).unwrap();
    let paths = write_data(&d, dir.path()).unwrap();
    let pv = load_series(&paths[0], SeriesKind::Power).unwrap();
    let load = load_series(&paths[1], SeriesKind::Power).unwrap();
    let price = load_series(&paths[2], SeriesKind::Price).unwrap();
    assert_eq!(pv, d.pv);
    assert_eq!(load, d.load);
    assert_eq!(price, d.price);
}

#[test]
fn sweep_cell_matches_a_hand_assembled_pipeline() {
    let data = data();
    let scenario = Scenario::present();
    let remun = FlexRemuneration::new(0.15, 200).unwrap();
    let (pv_kwp, bes_kwh) = data.sizes(1.0, 0.5);
    let dev = DeviceTemplate::default().devices(pv_kwp, bes_kwh);
    let pv = data.pv_for(pv_kwp).unwrap();
    let (import, export) = data.prices(&scenario).unwrap();
    let annual = annual_dispatch(&pv, &data.load, &import, &export, &dev).unwrap();
    let flex = average_flex_energy(&annual_flex_profile(&annual, &pv, &dev).unwrap()).unwrap();
    let lcoe = scenario.capex(pv_kwp, bes_kwh) / annual.totals.pv_kwh;
    let gated = if remun.price_per_kwh >= lcoe {
        remun
    } else {
        FlexRemuneration::default()
    };
    let by_hand = evaluate(&scenario, pv_kwp, bes_kwh, &annual.totals, flex, &gated).unwrap();

    let cell = evaluate_cell(1.0, 0.5, &scenario, &data, &DeviceTemplate::default(), &remun).unwrap();
    let m = cell.metrics.unwrap();
    assert_eq!(m.totals, annual.totals);
    assert_eq!(m.flex_energy_kwh, flex);
    assert_eq!(m.result, by_hand);
}

#[test]
fn optimum_is_the_minimum_of_the_exported_matrix() {
    let r = small_sweep(&Scenario::present(), &FlexRemuneration::default(), 2);
    let mut csv = Vec::new();
    write_sizing_csv(&r, &mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    let mut rows = text.lines();
    let header: Vec<&str> = rows.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (amep, status) = (col("amep"), col("status"));
    let mut best: Option<(f64, usize)> = None;
    let mut optimal_rows = Vec::new();
    for (i, row) in rows.enumerate() {
        let f: Vec<&str> = row.split(',').collect();
        if f[status] == "invalid" {
            continue;
        }
        if f[status] == "optimal" {
            optimal_rows.push(i);
        }
        let a: f64 = f[amep].parse().unwrap();
        if best.is_none_or(|(b, _)| a < b) {
            best = Some((a, i));
        }
    }
    assert_eq!(optimal_rows, vec![r.optimum.unwrap()]);
    let (b, _) = best.unwrap();
    assert!((r.optimum_cell().unwrap().amep().unwrap() - b).abs() <= 5e-7);
}

#[test]
fn sweep_cells_do_not_depend_on_execution_order() {
    let scenario = Scenario::longterm();
    let remun = FlexRemuneration::default();
    let one = small_sweep(&scenario, &remun, 1);
    let three = small_sweep(&scenario, &remun, 3);
    assert_eq!(one, three);
    let data = data();
    for c in one.cells.iter().rev() {
        let alone = evaluate_cell(
            c.pv_norm,
            c.bes_norm,
            &scenario,
            &data,
            &DeviceTemplate::default(),
            &remun,
        )
        .unwrap();
        assert_eq!(&alone, c);
    }
}

#[test]
fn profitable_optimum_or_grid_only_flag() {
    for scenario in [Scenario::present(), Scenario::longterm()] {
        let r = small_sweep(&scenario, &FlexRemuneration::default(), 2);
        let best = r.optimum_cell().unwrap().amep().unwrap();
        assert!(best <= scenario.mean_import_price || r.grid_only_optimal());
        let min = r.cells.iter().filter_map(|c| c.amep()).fold(f64::INFINITY, f64::min);
        assert_eq!(best, min);
    }
}
