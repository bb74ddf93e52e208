// Higher-order gravity operators `[a0 + a1 ∇² + a2 ∇⁴] Ricci` on a
// conformally recurrent pp-wave, where every Laplacian term drops out.

use num_rational::BigRational;
use ppwave_check::checks::CheckResult;
use ppwave_check::metrics::{build_galaev, chart_coords, RunConfig};
use ppwave_check::poly::Polynomial;
use ppwave_check::scalar::Mode;
use ppwave_check::suite::run;
use ppwave_check::Result;

/// Returns the `field_equations` rows for `a = (1, 3, 7)`.
pub fn run_example() -> Result<Vec<CheckResult>> {
    let c = chart_coords(3);
    let lambda: Vec<BigRational> = [1, 1, -2].iter().map(|&l| BigRational::from_integer(l.into())).collect();
    let spec = build_galaev(3, &Polynomial::parse("0", &c)?, &Polynomial::parse("u", &c)?, &lambda)?;
    let mut cfg = RunConfig::new(spec).with_mode(Mode::Exact).with_checks(["field_equations"]);
    cfg.field_coeffs = [1, 3, 7].iter().map(|&a| BigRational::from_integer(a.into())).collect();
    let report = run(&cfg, None)?;
    for r in &report.rows {
        let psi = r.witness("psi").and_then(|w| w.as_scalar()).map(ToString::to_string).unwrap_or_default();
        println!("u = {:<4} {:<5} psi = {psi:<6} residual {}", r.point[0].to_string(), r.status.as_str(), r.residual);
        for n in &r.notes {
            println!("    note: {n}");
        }
    }
    Ok(report.rows)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
