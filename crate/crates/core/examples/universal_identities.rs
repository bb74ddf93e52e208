// Identities that hold on every metric, evaluated exactly on a seeded
// perturbation of Minkowski space where no special structure is present.

use ppwave_check::checks::Status;
use ppwave_check::metrics::{generic_perturbed, RunConfig};
use ppwave_check::scalar::Mode;
use ppwave_check::suite::run;
use ppwave_check::Result;

pub const IDENTITIES: [&str; 5] =
    ["bianchi", "weyl_trace", "weyl_cyclic_identity", "weyl_divergence_formula", "conformal_invariance"];

/// Returns `(check, status, residual)` rows for the identities and for two
/// contrast checks that should fail on this metric. Residuals are rounded to
/// f64 for display.
pub fn run_example() -> Result<Vec<(String, Status, f64)>> {
    let spec = generic_perturbed(4, 1)?;
    let checks = IDENTITIES.iter().chain(&["conformal_recurrence", "schimming"]).copied();
    let cfg = RunConfig::new(spec).with_mode(Mode::Exact).with_jet_order(3).with_checks(checks);
    let report = run(&cfg, None)?;
    let rows: Vec<_> = report
        .rows
        .iter()
        .map(|r| (r.name.clone(), r.status, r.residual.to_f64()))
        .collect();
    for (name, status, residual) in &rows {
        println!("{name:<24} {:<8} {residual:.3e}", status.as_str());
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
