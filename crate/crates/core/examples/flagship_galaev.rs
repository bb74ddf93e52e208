// The conformally recurrent pp-wave `H = u (x1² + x2² + 4 x3²)`: the Weyl
// recurrence covector is `du/u`, null and collinear with `du`.

use num_rational::BigRational;
use ppwave_check::checks::CheckResult;
use ppwave_check::metrics::{build_galaev, chart_coords, RunConfig};
use ppwave_check::poly::Polynomial;
use ppwave_check::scalar::Mode;
use ppwave_check::suite::run;
use ppwave_check::Result;

/// Returns the `conformal_recurrence` and `collinearity` rows, one per u.
pub fn run_example() -> Result<Vec<(CheckResult, CheckResult)>> {
    let c = chart_coords(3);
    let lambda: Vec<BigRational> = [1, 1, -2].iter().map(|&l| BigRational::from_integer(l.into())).collect();
    let spec = build_galaev(3, &Polynomial::parse("0", &c)?, &Polynomial::parse("u", &c)?, &lambda)?;
    let cfg = RunConfig::new(spec)
        .with_mode(Mode::Exact)
        .with_jet_order(3)
        .with_checks(["conformal_recurrence", "collinearity", "galaev_alpha"]);
    let report = run(&cfg, None)?;

    let rec: Vec<_> = report.rows_named("conformal_recurrence").cloned().collect();
    let col: Vec<_> = report.rows_named("collinearity").cloned().collect();
    for (r, c) in rec.iter().zip(&col) {
        let alpha = r.witness("alpha").and_then(|w| w.as_vector()).map(|v| v[0].to_string()).unwrap_or_default();
        let mu = c.witness("mu").and_then(|w| w.as_scalar()).map(ToString::to_string).unwrap_or_default();
        println!("u = {:<4} alpha_u = {alpha:<5} mu = {mu:<5} {}", r.point[0].to_string(), r.status.as_str());
    }
    Ok(rec.into_iter().zip(col).collect())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
