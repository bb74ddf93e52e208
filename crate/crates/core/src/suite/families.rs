//! Built-in family listing for `families --list`.

use std::fmt::Write as _;

use crate::checks::default_checks;
use crate::metrics::Family;

fn schema(f: Family) -> (&'static str, &'static [&'static str]) {
    match f {
        Family::PpWave => (
            "2 du dv + H(x, u) du^2 + sum dx^2",
            &["H: polynomial in u, x1..xd (no v)"],
        ),
        Family::Brinkmann => (
            "Walker form with v-independent H (parallel null vector du)",
            &[
                "H: polynomial in u, x1..xd",
                "walker_a: d polynomials, default all 0",
                "g_star: d x d polynomial matrix, default identity",
            ],
        ),
        Family::Walker => (
            "2 du dv + H du^2 + sum a_i du dx^i + g*_ij dx^i dx^j",
            &[
                "H: polynomial, may depend on v",
                "walker_a: d polynomials in u, x1..xd, default all 0",
                "g_star: d x d polynomial matrix in u, x1..xd, default identity",
            ],
        ),
        Family::Galaev => (
            "pp-wave with H = a(u) sum x_i^2 + F(u) sum lambda_i x_i^2",
            &["a: polynomial in u, default \"0\"", "F: polynomial in u", "lambda: d rationals summing to 0"],
        ),
        Family::TwoSymmetric => (
            "pp-wave with H = sum (u a_i delta_ij + b_ij) x_i x_j",
            &["a_vec: d rationals, 0 <= a_1 <= ... <= a_d", "b_mat: d x d symmetric rationals, default 0"],
        ),
        Family::Custom => (
            "arbitrary symmetric metric in the chart (u, x1..xd, v)",
            &[
                "components: n x n polynomial matrix",
                "generic_seed: integer; seeded perturbation of 2 du dv + sum dx^2 (instead of components)",
            ],
        ),
    }
}

/// Families, their parameters and default checks, as plain text.
pub fn families_listing() -> String {
    let mut out = String::new();
    for f in Family::ALL {
        let (form, params) = schema(f);
        let _ = writeln!(out, "{}\n  metric: {form}", f.name());
        for p in params {
            let _ = writeln!(out, "  param {p}");
        }
        let _ = writeln!(out, "  default checks: {}\n", default_checks(f).join(", "));
    }
    out.push_str(
        "common params: conformal = {\"square\": s} for (1+s)^2 g, or {\"exp\": sigma} for e^(2 sigma) g (float mode)\n\
         dimension: d (transverse) or n = d + 2, with 4 <= n <= 8\n",
    );
    out
}
