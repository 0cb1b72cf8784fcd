// Full reports and sweep rows, as produced by the `circroute` binary.

use circroute::report::{build_report, render_table, sweep_row, ReportOptions, CSV_SCHEMA};
use circroute::CirculantGraph;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = CirculantGraph::new(25, 5)?;
    let doc = build_report(&g, ReportOptions::default())?;
    print!("{}", render_table(&doc));

    let json = build_report(&CirculantGraph::new(12, 3)?, ReportOptions::default())?.to_json();
    println!("{}", &json[..json.find("\"distances\"").unwrap_or(json.len())]);

    let mut csv = csv::Writer::from_writer(Vec::new());
    for g in circroute::graph::valid_instances(24, 26) {
        csv.serialize(sweep_row(&g, 2000))?;
    }
    println!("{CSV_SCHEMA}");
    print!("{}", String::from_utf8(csv.into_inner()?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
