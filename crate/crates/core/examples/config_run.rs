// A run driven by a JSON configuration, printed as the text report.

use ppwave_check::metrics::parse_metric_config;
use ppwave_check::suite::{render_text, run, Report};
use ppwave_check::Result;

const CONFIG: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/vacuum_wave.json"));

pub fn run_example() -> Result<Report> {
    let (_, cfg) = parse_metric_config(CONFIG)?;
    let report = run(&cfg, Some(1))?;
    print!("{}", render_text(&report));
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
