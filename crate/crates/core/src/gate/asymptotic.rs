use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use super::{AbsorberRates, Branches, Decay, ErrorPair, GateError, GateGeometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    Leading,
    First,
}

/// Large-N error expansions, valid for `N xi_2 >> 1 >> N xi_1`.
///
/// A perfect two-photon absorber drops every term that carries `xi_2`.
pub fn asymptotic_errors(geom: &GateGeometry, rates: &AbsorberRates, order: Order) -> ErrorPair {
    let n = geom.segments() as f64;
    let x1 = rates.xi_1();
    let perfect = rates.two_photon.is_perfect();
    let inv_x2 = if perfect { 0.0 } else { 1.0 / rates.xi_2() };
    let x2 = if perfect { 0.0 } else { rates.xi_2() };
    let (pi2, pi4, pi6) = (PI * PI, PI.powi(4), PI.powi(6));
    match (geom.branches(), order) {
        (Branches::Two, Order::Leading) => ErrorPair { one_photon: n * x1, two_photon: pi2 * inv_x2 / (2.0 * n) },
        (Branches::Three, Order::Leading) => ErrorPair { one_photon: n * x1 / 2.0, two_photon: pi2 * inv_x2 / n },
        (Branches::Two, Order::First) => ErrorPair {
            one_photon: n * x1 + x1,
            two_photon: pi2 * inv_x2 / (2.0 * n)
                + (2.0 * pi2 - pi4) / (48.0 * n * n)
                + (4.0 * pi4 + pi6) * inv_x2 / (192.0 * n.powi(3))
                + pi2 * (x1 + x2) / (24.0 * n),
        },
        (Branches::Three, Order::First) => ErrorPair {
            one_photon: n * x1 / 2.0 + x1,
            two_photon: pi2 * inv_x2 / n
                + (4.0 * pi2 - 3.0 * pi4) / (48.0 * n * n)
                + (2.0 * pi4 + pi6) * inv_x2 / (24.0 * n.powi(3))
                + pi2 * (x1 + x2) / (12.0 * n),
        },
    }
}

/// Rates that balance the leading-order errors at ratio `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalRates {
    pub xi_1: f64,
    pub xi_2: f64,
    /// Leading-order overall error `pi / sqrt(2 kappa)`.
    pub p_overall: f64,
}

impl OptimalRates {
    pub fn rates(&self) -> AbsorberRates {
        AbsorberRates { one_photon: Decay::Finite(self.xi_1), two_photon: Decay::Finite(self.xi_2), control: Decay::Finite(0.0) }
    }
}

pub fn optimal_rates(kappa: f64, n: u32, branches: Branches) -> Result<OptimalRates, GateError> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(GateError::Kappa(kappa));
    }
    if n == 0 {
        return Err(GateError::ZeroSegments);
    }
    let n = n as f64;
    let sk = kappa.sqrt();
    let (xi_1, xi_2) = match branches {
        Branches::Two => (PI / (sk * SQRT_2 * n), sk * PI / (SQRT_2 * n)),
        Branches::Three => (SQRT_2 * PI / (sk * n), sk * SQRT_2 * PI / n),
    };
    Ok(OptimalRates { xi_1, xi_2, p_overall: PI / (2.0 * kappa).sqrt() })
}

/// Ratio needed for leading-order error `p`: `pi^2 / (2 p^2)`.
pub fn required_kappa(p: f64) -> Result<f64, GateError> {
    check_threshold(p)?;
    Ok(PI * PI / (2.0 * p * p))
}

/// Ratio the Franson-type gate needs for error `p`: `32 pi^2 / p^2`.
pub fn franson_required_kappa(p: f64) -> Result<f64, GateError> {
    check_threshold(p)?;
    Ok(32.0 * PI * PI / (p * p))
}

fn check_threshold(p: f64) -> Result<(), GateError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(GateError::Threshold(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FransonErrors {
    pub one_photon: f64,
    pub two_photon: f64,
    /// `4 sqrt(2) pi / sqrt(kappa)` at the optimal rates.
    pub p_overall: f64,
    pub optimal_xi_1: f64,
    pub optimal_xi_2: f64,
}

/// Leading-order errors of the symmetric Franson-type gate.
pub fn franson_errors(rates: &AbsorberRates, n: u32) -> Result<FransonErrors, GateError> {
    let kappa = rates.kappa().ok_or(GateError::Kappa(f64::NAN))?;
    let opt = optimal_rates(kappa, n, Branches::Two)?;
    let nf = n as f64;
    let (x1, x2) = (rates.xi_1(), rates.xi_2());
    Ok(FransonErrors {
        one_photon: 2.0 * nf * x1,
        two_photon: 4.0 * nf * x1 + 2.0 * PI * PI / (nf * x2),
        p_overall: 4.0 * SQRT_2 * PI / kappa.sqrt(),
        optimal_xi_1: opt.xi_1,
        optimal_xi_2: opt.xi_2,
    })
}

/// Overall error with control-photon loss `xi_c` per segment.
pub fn control_loss_adjusted(kappa: f64, n: u32, xi_c: f64) -> Result<f64, GateError> {
    if !(kappa > 0.0) {
        return Err(GateError::Kappa(kappa));
    }
    let xi_c = Decay::new(xi_c)?.value();
    Ok(PI / (2.0 * kappa).sqrt() + 2.0 * n as f64 * xi_c)
}

/// Control loss as large as the target's optimal one-photon rate.
pub fn control_loss_worst_case(kappa: f64, n: u32, branches: Branches) -> Result<f64, GateError> {
    let opt = optimal_rates(kappa, n, branches)?;
    control_loss_adjusted(kappa, n, opt.xi_1)
}

/// Survival probability `cos^(2N)(pi / 2N)` of the frequently measured double well.
pub fn zeno_demo_survival(n: u32) -> Result<f64, GateError> {
    if n == 0 {
        return Err(GateError::ZeroSegments);
    }
    // cos(pi / 2N) as a sine of the complementary angle, exact zero at N = 1
    let c = (PI * (n - 1) as f64 / (2.0 * n as f64)).sin();
    Ok(c.powf(2.0 * n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn leading_at_optimum_is_overall() {
        let g = GateGeometry::new(Branches::Two, 1000).unwrap();
        let opt = optimal_rates(1e3, 1000, Branches::Two).unwrap();
        let p = asymptotic_errors(&g, &opt.rates(), Order::Leading);
        let oracle = PI / 2000f64.sqrt();
        assert!((p.one_photon - oracle).abs() < 1e-14);
        assert!((p.two_photon - oracle).abs() < 1e-14);
        assert!((oracle - 0.0702).abs() < 1e-4);
    }

    #[test]
    fn three_branch_leading_at_optimum() {
        let g = GateGeometry::new(Branches::Three, 300).unwrap();
        let opt = optimal_rates(700.0, 300, Branches::Three).unwrap();
        let p = asymptotic_errors(&g, &opt.rates(), Order::Leading);
        assert!((p.one_photon - opt.p_overall).abs() < 1e-14);
        assert!((p.two_photon - opt.p_overall).abs() < 1e-14);
    }

    #[test]
    fn perfect_absorber_leaves_discretisation_term() {
        let n = 250u32;
        let g = GateGeometry::new(Branches::Two, n).unwrap();
        let r = AbsorberRates::new(0.0, f64::INFINITY).unwrap();
        assert_eq!(asymptotic_errors(&g, &r, Order::Leading).two_photon, 0.0);
        let nf = n as f64;
        let expected = (2.0 * PI * PI - PI.powi(4)) / (48.0 * nf * nf);
        assert!((asymptotic_errors(&g, &r, Order::First).two_photon - expected).abs() < 1e-18);
    }

    #[test]
    fn overall_at_500() {
        let opt = optimal_rates(500.0, 100, Branches::Three).unwrap();
        assert!((opt.p_overall - 0.0993).abs() < 1e-4);
        assert!((required_kappa(0.1).unwrap() - 493.48).abs() < 0.01);
    }

    #[test]
    fn kappa_must_be_positive() {
        assert!(optimal_rates(0.0, 10, Branches::Two).is_err());
        assert!(optimal_rates(-3.0, 10, Branches::Three).is_err());
        assert!(required_kappa(0.0).is_err());
        assert!(required_kappa(1.0).is_err());
    }

    #[test]
    fn franson_ratio_is_64() {
        for p in [0.5, 0.25, 0.1, 0.01] {
            let ratio = franson_required_kappa(p).unwrap() / required_kappa(p).unwrap();
            assert!((ratio - 64.0).abs() < 1e-12);
        }
    }

    #[test]
    fn franson_at_1430() {
        let opt = optimal_rates(1430.0, 50, Branches::Two).unwrap();
        let f = franson_errors(&opt.rates(), 50).unwrap();
        assert!((f.p_overall - 0.470).abs() < 1e-3);
        assert!((f.two_photon - f.p_overall).abs() < 1e-12);
        assert!((opt.p_overall - 0.0587).abs() < 1e-4);
        assert_eq!(f.optimal_xi_1, opt.xi_1);
    }

    #[test]
    fn control_loss() {
        let base = PI / 1000f64.sqrt();
        assert_eq!(control_loss_adjusted(500.0, 100, 0.0).unwrap(), base);
        let p = control_loss_adjusted(500.0, 100, 1e-5).unwrap();
        assert!((p - (base + 2e-3)).abs() < 1e-15);
        let worst = control_loss_worst_case(500.0, 100, Branches::Three).unwrap();
        assert!((worst / base - 5.0).abs() < 1e-12);
        let two = control_loss_worst_case(500.0, 100, Branches::Two).unwrap();
        assert!((two / base - 3.0).abs() < 1e-12);
        assert!((required_kappa(base * 5.0).unwrap() * 25.0 / required_kappa(base).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zeno_demo() {
        assert_eq!(zeno_demo_survival(1).unwrap(), 0.0);
        let oracle = (PI / 20.0).cos().powi(20);
        assert!((zeno_demo_survival(10).unwrap() - oracle).abs() < 1e-15);
        assert!((oracle - 0.780546).abs() < 1e-6);
        for n in [100u32, 1000, 10000] {
            let nf = n as f64;
            let resid = (zeno_demo_survival(n).unwrap() - (1.0 - PI * PI / (4.0 * nf))).abs();
            assert!(resid < 4.0 / (nf * nf));
        }
        assert!(zeno_demo_survival(0).is_err());
    }

    #[test]
    fn first_order_residual_scales_as_inverse_square() {
        // validity regime: N xi_2 >> 1 >> N xi_1
        use crate::gate::exact_errors;
        for br in [Branches::Two, Branches::Three] {
            let resid = |n: u32| {
                let g = GateGeometry::new(br, n).unwrap();
                let r = AbsorberRates::new(1.0 / (n as f64).powi(2), 0.3).unwrap();
                let e = exact_errors(&g, &r);
                let a = asymptotic_errors(&g, &r, Order::First);
                ((e.one_photon - a.one_photon).abs(), (e.two_photon - a.two_photon).abs())
            };
            let (lo, hi) = (resid(100), resid(1000));
            assert!((lo.0 / hi.0).log10() >= 1.9, "{br:?} {lo:?} {hi:?}");
            assert!((lo.1 / hi.1).log10() >= 1.9, "{br:?} {lo:?} {hi:?}");
        }
    }

    proptest! {
        #[test]
        fn rate_product_is_kappa_free(kappa in 1.01f64..1e6, n in 1u32..10_000) {
            let nf = n as f64;
            let two = optimal_rates(kappa, n, Branches::Two).unwrap();
            let three = optimal_rates(kappa, n, Branches::Three).unwrap();
            prop_assert!((two.xi_1 * two.xi_2 / (PI * PI / (2.0 * nf * nf)) - 1.0).abs() < 1e-12);
            prop_assert!((three.xi_1 * three.xi_2 / (2.0 * PI * PI / (nf * nf)) - 1.0).abs() < 1e-12);
            prop_assert!((two.xi_2 / two.xi_1 / kappa - 1.0).abs() < 1e-12);
        }

        #[test]
        fn franson_two_photon_dominates(x1 in 1e-6f64..1.0, x2 in 1e-6f64..100.0, n in 1u32..10_000) {
            let f = franson_errors(&AbsorberRates::new(x1, x2).unwrap(), n).unwrap();
            prop_assert!(f.two_photon >= f.one_photon);
        }

        #[test]
        fn kappa_inverse(p in 0.001f64..0.999) {
            let k = required_kappa(p).unwrap();
            let opt = optimal_rates(k, 10, Branches::Three).unwrap();
            prop_assert!((opt.p_overall / p - 1.0).abs() < 1e-12);
        }
    }
}
