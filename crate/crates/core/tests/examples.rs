//! Every runnable example, executed and checked against its expected output.

use num_rational::BigRational;
use ppwave_check::checks::Status;

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(jet_taylor, "jet_taylor.rs");
example!(convention_oracle, "convention_oracle.rs");
example!(universal_identities, "universal_identities.rs");
example!(conformal_invariance, "conformal_invariance.rs");
example!(flagship_galaev, "flagship_galaev.rs");
example!(schimming_conditions, "schimming_conditions.rs");
example!(field_equations, "field_equations.rs");
example!(theorem_suites, "theorem_suites.rs");
example!(config_run, "config_run.rs");

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

#[test]
fn jet_taylor_example() {
    // 6 u x1 at u = 2, x1 = 1/2
    assert_eq!(jet_taylor::run_example().unwrap(), q(6, 1));
}

#[test]
fn convention_oracle_example() {
    let rows = convention_oracle::run_example().unwrap();
    let psis: Vec<_> = rows.iter().map(|r| r.1.clone()).collect();
    // u = 3/2 for the last potential: -½ (2u + 4u) = -3u
    assert_eq!(psis, vec![q(-2, 1), q(0, 1), q(-9, 2)]);
    assert!(rows.iter().all(|r| r.2 && r.3));
}

#[test]
fn universal_identities_example() {
    let rows = universal_identities::run_example().unwrap();
    for (name, status, residual) in rows {
        if universal_identities::IDENTITIES.contains(&name.as_str()) {
            assert_eq!((status, residual), (Status::Pass, 0.0), "{name}");
        } else {
            assert_eq!(status, Status::Fail, "{name}");
        }
    }
}

#[test]
fn conformal_invariance_example() {
    let (exact, float) = conformal_invariance::run_example().unwrap();
    assert!(exact.is_zero());
    assert!(float.to_f64() <= 1e-9);
}

#[test]
fn flagship_galaev_example() {
    for (rec, col) in flagship_galaev::run_example().unwrap() {
        let u = rec.point[0].as_rational().unwrap().clone();
        let alpha_u = rec.witness("alpha").unwrap().as_vector().unwrap()[0].as_rational().unwrap().clone();
        assert_eq!(alpha_u, q(1, 1) / &u);
        assert_eq!(col.witness("mu").unwrap().as_scalar().unwrap().as_rational().unwrap(), &(q(1, 1) / u));
        assert!(rec.passed() && col.passed());
    }
}

#[test]
fn schimming_conditions_example() {
    let (pp, walker) = schimming_conditions::run_example().unwrap();
    assert_eq!(pp.status, Status::Pass);
    assert_eq!(walker.status, Status::Fail);
    assert_eq!(walker.witness("precondition").unwrap().as_flag(), Some(false));
}

#[test]
fn field_equations_example() {
    let rows = field_equations::run_example().unwrap();
    assert_eq!(rows.len(), 5);
    for r in rows {
        let u = r.point[0].as_rational().unwrap().clone();
        assert!(r.passed());
        assert_eq!(r.witness("psi").unwrap().as_scalar().unwrap().as_rational().unwrap(), &(q(-6, 1) * u));
    }
}

#[test]
fn theorem_suites_example() {
    let runs = theorem_suites::run_example().unwrap();
    for (thm, metric, verdicts) in runs {
        let expected = if metric == "generic" { Status::HypothesesNotMet } else { Status::Pass };
        assert!(verdicts.iter().all(|&v| v == expected), "{thm} on {metric}: {verdicts:?}");
        assert_eq!(verdicts.len(), 2);
    }
}

#[test]
fn config_run_example() {
    let report = config_run::run_example().unwrap();
    assert!(report.all_passed());
    assert!(report.rows_named("ricci_recurrence").all(|r| r.status == Status::Vacuous));
}
