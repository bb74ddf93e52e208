// Sign conventions: pp-wave Ricci tensors are `ψ X⊗X` with
// `ψ = -½ Σ ∂²H/∂x_ρ²`, and the scalar curvature vanishes.

use num_rational::BigRational;
use ppwave_check::geometry::CurvatureBundle;
use ppwave_check::metrics::{build_ppwave, chart_coords, laplacian_psi};
use ppwave_check::poly::Polynomial;
use ppwave_check::Result;

/// Returns `(H, ψ at the point, Ricci matches, R = 0)` for each potential.
pub fn run_example() -> Result<Vec<(String, BigRational, bool, bool)>> {
    let coords = chart_coords(2);
    let point: Vec<BigRational> = [(3, 2), (1, 3), (-1, 2), (2, 1)]
        .iter()
        .map(|&(p, q)| BigRational::new(p.into(), q.into()))
        .collect();
    let mut out = Vec::new();
    for text in ["x1^2 + x2^2", "x1^2 - x2^2", "u*(x1^2 + 2*x2^2)"] {
        let h = Polynomial::parse(text, &coords)?;
        let spec = build_ppwave(&h, 2)?;
        let b = CurvatureBundle::<BigRational>::at(&spec, &point, 2)?;
        let psi = laplacian_psi(&h, 2).eval(&point);
        let ric = b.ricci()?;
        let mut matches = true;
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == 0 && j == 0 { psi.clone() } else { BigRational::from_integer(0.into()) };
                matches &= ric.value(&[i, j]) == &expected;
            }
        }
        let flat_scalar = num_traits::Zero::is_zero(b.scalar()?.value(&[]));
        println!("H = {text:<18} psi = {psi:<4} Ricci = psi du du: {matches}  R = 0: {flat_scalar}");
        out.push((text.to_string(), psi, matches, flat_scalar));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
