//! Property tests of the structural invariants over random families and
//! degrees.

use proptest::prelude::*;

use rakhmanov::asymptotics::{self, Quantity, Regime};
use rakhmanov::error::Error;
use rakhmanov::measures;
use rakhmanov::ortho;
use rakhmanov::quadrature::{self, AdaptiveOptions};
use rakhmanov::PolynomialFamily;

/// Families with moderate parameters and finite W_2.
fn family() -> impl Strategy<Value = PolynomialFamily> {
    prop_oneof![
        Just(PolynomialFamily::Hermite),
        (-0.45..6.0f64).prop_map(|alpha| PolynomialFamily::Laguerre { alpha }),
        (-0.45..4.0f64, -0.45..4.0f64).prop_map(|(alpha, beta)| PolynomialFamily::Jacobi { alpha, beta }),
        (0.05..5.0f64).prop_map(|lambda| PolynomialFamily::Gegenbauer { lambda }),
    ]
}

fn opts() -> AdaptiveOptions {
    AdaptiveOptions::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orthonormal_under_gauss_rule(f in family(), n in 0usize..12) {
        let rule = quadrature::gauss_rule(&f, n + 2).unwrap();
        let mut gram = vec![vec![0.0; n + 1]; n + 1];
        for (&x, &lw) in rule.nodes.iter().zip(&rule.log_unit_weights) {
            let p = ortho::eval_orthonormal(&f, n, x).unwrap();
            for j in 0..=n {
                for k in 0..=n {
                    gram[j][k] += p[j].sign * p[k].sign * (lw + rule.log_mass + p[j].ln_abs + p[k].ln_abs).exp();
                }
            }
        }
        for (j, row) in gram.iter().enumerate() {
            for (k, &g) in row.iter().enumerate() {
                let want = if j == k { 1.0 } else { 0.0 };
                prop_assert!((g - want).abs() < 1e-9, "{:?} <p{},p{}> = {}", f, j, k, g);
            }
        }
    }

    #[test]
    fn density_has_unit_mass(f in family(), n in 0usize..15) {
        let w1 = measures::entropic_moment_wq_adaptive(&f, n, 1.0, &opts()).unwrap();
        prop_assert!((w1.value - 1.0).abs() < 1e-9, "{:?} n={} mass {}", f, n, w1.value);
        prop_assert!(measures::log_entropic_moment_exact(&f, n, 1.0).unwrap().abs() < 1e-11);
    }

    #[test]
    fn w2_dual_path(f in family(), n in 0usize..15) {
        let exact = measures::log_entropic_moment_exact(&f, n, 2.0).unwrap().exp();
        let adaptive = measures::entropic_moment_wq_adaptive(&f, n, 2.0, &opts()).unwrap().value;
        prop_assert!(((adaptive - exact) / exact).abs() < 1e-9, "{:?} n={}: {} vs {}", f, n, adaptive, exact);
    }

    #[test]
    fn complexity_lower_bounds(f in family(), n in 0usize..8) {
        // LMC >= 1 for every density.
        let lmc = measures::lmc(&f, n, &opts()).unwrap();
        prop_assert!(lmc.value >= 1.0 - 1e-9, "{:?} n={} lmc {}", f, n, lmc.value);
        // Cramer-Rao and Stam: F V >= 1, F e^{2S}/(2 pi e) >= 1 (finite or +inf).
        let cr = measures::cramer_rao(&f, n, &opts()).unwrap();
        prop_assert!(cr.value >= 1.0 - 1e-9, "{:?} n={} cramer-rao {}", f, n, cr.value);
        let fs = measures::fisher_shannon(&f, n, &opts()).unwrap();
        prop_assert!(fs.value >= 1.0 - 1e-9, "{:?} n={} fisher-shannon {}", f, n, fs.value);
    }

    #[test]
    fn renyi_nonincreasing_in_q(f in family(), n in 0usize..8, q in 0.3..3.0f64) {
        let lo = measures::renyi_entropy(&f, n, q, &opts()).unwrap().value;
        let hi = measures::renyi_entropy(&f, n, q + 0.25, &opts()).unwrap().value;
        prop_assert!(hi <= lo + 1e-9, "{:?} n={}: R_{} = {} < R_{} = {}", f, n, q, lo, q + 0.25, hi);
    }

    #[test]
    fn shannon_split_agrees_with_direct(f in family(), n in 0usize..8) {
        let split = measures::shannon_s(&f, n, &opts()).unwrap().value;
        let direct = measures::shannon_s_direct(&f, n, &opts()).unwrap().value;
        prop_assert!((split - direct).abs() < 1e-8 * direct.abs().max(1.0), "{:?} n={}: {} vs {}", f, n, split, direct);
    }

    #[test]
    fn fisher_is_nonnegative(f in family(), n in 0usize..20) {
        let v = measures::fisher(&f, n, &opts()).unwrap();
        prop_assert!(v.value >= 0.0);
        prop_assert_eq!(v.is_divergent(), v.regime.is_some());
    }

    #[test]
    fn gegenbauer_branches_partition(lambda in -0.49..8.0f64, n in 0usize..6) {
        // Each asymptotic either applies (one branch) or is rejected as out of branch.
        // lambda = 0 is not a Gegenbauer family.
        prop_assume!(lambda.abs() > 1e-6);
        for regime in [Regime::DegreeToInfinity, Regime::ParameterToInfinity] {
            for q in Quantity::ALL {
                match asymptotics::formula(rakhmanov::FamilyKind::Gegenbauer, regime, q, n, lambda) {
                    Ok(formula) => prop_assert!(!formula.branch.is_empty()),
                    Err(Error::OutOfBranch(_) | Error::Unsupported(_) | Error::InvalidInput(_) | Error::Domain(_)) => {}
                    Err(e) => prop_assert!(false, "unexpected error {}", e),
                }
            }
        }
    }
}
