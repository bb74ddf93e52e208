// Curvature conditions that characterise pp-waves among Brinkmann waves,
// and what happens in Walker coordinates where the null field is only
// recurrent.

use num_rational::BigRational;
use ppwave_check::checks::{run_check, CheckContext, CheckResult};
use ppwave_check::geometry::CurvatureBundle;
use ppwave_check::metrics::{build_ppwave, build_walker, chart_coords, RunConfig, WalkerData};
use ppwave_check::poly::Polynomial;
use ppwave_check::Result;

fn report(label: &str, r: &CheckResult) {
    let subs = ["precondition", "cyclic", "decomposition", "chi_quartic", "riemann_square"]
        .iter()
        .filter_map(|k| r.sub_residual(k).map(|v| format!("{k}={v}")))
        .collect::<Vec<_>>()
        .join(" ");
    println!("{label:<10} {:<5} {subs}", r.status.as_str());
}

/// Returns the `schimming` results for a pp-wave and for a Walker metric.
pub fn run_example() -> Result<(CheckResult, CheckResult)> {
    let c = chart_coords(2);
    let point: Vec<BigRational> = [(1, 1), (1, 3), (-1, 2), (1, 5)]
        .iter()
        .map(|&(p, q)| BigRational::new(p.into(), q.into()))
        .collect();
    let eval = |spec| -> Result<CheckResult> {
        let cfg = RunConfig::new(spec);
        let b = CurvatureBundle::<BigRational>::at(&cfg.metric, &point, 2)?;
        Ok(run_check("schimming", &b, &CheckContext::new(&cfg, &point)))
    };

    let pp = eval(build_ppwave(&Polynomial::parse("x1^2*u + x2^3 - x1*x2", &c)?, 2)?)?;
    report("pp-wave", &pp);

    let zero = Polynomial::zero(&c);
    let one = Polynomial::parse("1", &c)?;
    let walker = eval(build_walker(&WalkerData {
        h: Polynomial::parse("v*x1^2", &c)?,
        a: vec![zero.clone(), zero.clone()],
        g_star: vec![vec![one.clone(), zero.clone()], vec![zero, one]],
    })?)?;
    report("walker", &walker);
    Ok((pp, walker))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
