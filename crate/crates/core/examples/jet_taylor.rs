// Exact Taylor jets of a polynomial: every partial derivative up to the jet
// order, read off at a rational point.

use num_rational::BigRational;
use ppwave_check::jet::{jet_from_polynomial, MultiIndex};
use ppwave_check::poly::Polynomial;
use ppwave_check::Result;

/// Returns `∂²_{x1} H` at the point for `H = u x1³ + x1 x2`.
pub fn run_example() -> Result<BigRational> {
    let vars = ["u", "x1", "x2", "v"];
    let h = Polynomial::parse("u*x1^3 + x1*x2", &vars)?;
    let point: Vec<BigRational> = [(2, 1), (1, 2), (3, 1), (0, 1)]
        .iter()
        .map(|&(p, q)| BigRational::new(p.into(), q.into()))
        .collect();
    let jet = jet_from_polynomial::<BigRational>(&h, &point, 3)?;

    let d_x1x1 = jet.derivative(&MultiIndex::from_slots(4, &[1, 1]));
    let d_ux1x1 = jet.derivative(&MultiIndex::from_slots(4, &[0, 1, 1]));
    println!("H          = {}", jet.value());
    println!("d2H/dx1^2  = {d_x1x1}   (6 u x1)");
    println!("d3H/du dx1^2 = {d_ux1x1}   (6 x1)");

    // Same jet in floating point.
    let f = jet_from_polynomial::<f64>(&h, &point, 3)?;
    println!("float d2H/dx1^2 = {}", f.derivative(&MultiIndex::from_slots(4, &[1, 1])));
    Ok(d_x1x1)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
