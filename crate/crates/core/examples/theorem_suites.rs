// Theorem bundles: hypotheses are checked first, conclusions only count
// when the hypotheses hold.

use num_rational::BigRational;
use ppwave_check::checks::Status;
use ppwave_check::metrics::{build_galaev, chart_coords, generic_perturbed, PointPlan, RunConfig};
use ppwave_check::poly::Polynomial;
use ppwave_check::suite::theorem_suite;
use ppwave_check::Result;

/// Returns `(theorem, metric, verdicts)` for each suite that was run.
pub fn run_example() -> Result<Vec<(String, String, Vec<Status>)>> {
    let c = chart_coords(3);
    let lambda: Vec<BigRational> = [1, 1, -2].iter().map(|&l| BigRational::from_integer(l.into())).collect();
    let galaev = build_galaev(3, &Polynomial::parse("0", &c)?, &Polynomial::parse("u", &c)?, &lambda)?;
    let points = PointPlan { count: 2, ..PointPlan::default() };
    let runs = [
        ("thm_3_8", "galaev", RunConfig::new(galaev.clone())),
        ("thm_3_13", "galaev", RunConfig::new(galaev.clone())),
        ("prop_2_10", "galaev", RunConfig::new(galaev)),
        ("thm_3_8", "generic", RunConfig::new(generic_perturbed(4, 1)?)),
    ];
    let mut out = Vec::new();
    for (thm, label, cfg) in runs {
        let report = theorem_suite(thm, &cfg.with_points(points.clone()), None)?;
        let verdicts: Vec<Status> = report.rows_named(thm).map(|r| r.status).collect();
        let shown: Vec<&str> = verdicts.iter().map(|s| s.as_str()).collect();
        println!("{thm:<10} on {label:<8} {}", shown.join(", "));
        out.push((thm.to_string(), label.to_string(), verdicts));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
