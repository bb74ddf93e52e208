// The (1,3) Weyl tensor is unchanged by a conformal rescaling, exactly for a
// square factor and to rounding for `e^{2σ}`.

use num_rational::BigRational;
use ppwave_check::checks::{run_check, CheckContext};
use ppwave_check::geometry::CurvatureBundle;
use ppwave_check::metrics::{build_galaev, chart_coords, ConformalFactor, RunConfig};
use ppwave_check::poly::Polynomial;
use ppwave_check::scalar::{Mode, Number};
use ppwave_check::Result;

/// Returns the exact and the float residual.
pub fn run_example() -> Result<(Number, Number)> {
    let c = chart_coords(3);
    let lambda: Vec<BigRational> = [1, 1, -2].iter().map(|&l| BigRational::from_integer(l.into())).collect();
    let spec = build_galaev(3, &Polynomial::parse("0", &c)?, &Polynomial::parse("u", &c)?, &lambda)?;
    let point: Vec<BigRational> = [(1, 1), (1, 4), (-1, 2), (3, 4), (1, 3)]
        .iter()
        .map(|&(p, q)| BigRational::new(p.into(), q.into()))
        .collect();
    let factor = Polynomial::parse("u*x1/3 + v^2/5", &c)?;

    let mut exact = RunConfig::new(spec.clone()).with_mode(Mode::Exact);
    exact.conformal_factor = Some(ConformalFactor::Square(factor.clone()));
    let b = CurvatureBundle::<BigRational>::at(&spec, &point, 2)?;
    let r_exact = run_check("conformal_invariance", &b, &CheckContext::new(&exact, &point));
    println!("(1 + s)^2 factor, exact: {} residual {}", r_exact.status.as_str(), r_exact.residual);

    let mut float = RunConfig::new(spec.clone()).with_mode(Mode::Float);
    float.conformal_factor = Some(ConformalFactor::Exp(factor));
    let b = CurvatureBundle::<f64>::at(&spec, &point, 2)?;
    let r_float = run_check("conformal_invariance", &b, &CheckContext::new(&float, &point));
    println!("exp(2 sigma) factor, float: {} residual {}", r_float.status.as_str(), r_float.residual);
    Ok((r_exact.residual, r_float.residual))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
