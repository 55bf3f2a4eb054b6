mod common;

use lomax_ebayes::dataset::Dataset;
use lomax_ebayes::{
    bayes, bayes_mse, ebayes, emse, kl_integral, kl_mse_integral, mle, Error, EstimateReport,
    GammaHyper, HyperBound, LossKind, Sample, SufficientStat,
};
use proptest::prelude::*;

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn stat() -> impl Strategy<Value = SufficientStat> {
    (1usize..=5_000, log_uniform(1e-3, 1e4)).prop_map(|(n, t)| SufficientStat::new(n, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn ebayes_scales_inversely(s in stat(), c in log_uniform(1e-2, 1e2), k in log_uniform(0.1, 10.0)) {
        let scaled = SufficientStat::new(s.n(), k * s.t()).unwrap();
        let kc = HyperBound::new(k * c).unwrap();
        let c = HyperBound::new(c).unwrap();
        for loss in LossKind::ALL {
            let base = ebayes(loss, c, s);
            let other = ebayes(loss, kc, scaled);
            prop_assert!((other * k - base).abs() <= 1e-12 * base);
            let m = emse(loss, c, s);
            let m2 = emse(loss, kc, scaled);
            prop_assert!((m2 * k * k - m).abs() <= 1e-12 * m);
        }
    }

    #[test]
    fn ebayes_decreases_in_t_and_c(
        s in stat(),
        c in log_uniform(1e-2, 1e2),
        dt in log_uniform(1e-3, 10.0),
        dc in log_uniform(1e-3, 10.0),
    ) {
        let bigger_t = SufficientStat::new(s.n(), s.t() * (1.0 + dt)).unwrap();
        let c0 = HyperBound::new(c).unwrap();
        let c1 = HyperBound::new(c * (1.0 + dc)).unwrap();
        for loss in LossKind::ALL {
            prop_assert!(ebayes(loss, c0, bigger_t) < ebayes(loss, c0, s));
            prop_assert!(ebayes(loss, c1, s) < ebayes(loss, c0, s));
            prop_assert!(emse(loss, c0, bigger_t) < emse(loss, c0, s));
            prop_assert!(emse(loss, c1, s) < emse(loss, c0, s));
        }
    }

    #[test]
    fn ebayes_lies_between_bayes_at_hyperprior_corners(s in stat(), c in log_uniform(1e-2, 1e2)) {
        let bound = HyperBound::new(c).unwrap();
        for loss in LossKind::ALL {
            // Bayes estimates are increasing in a and decreasing in b.
            let hi = bayes(loss, GammaHyper::new(1.0 - 1e-12, 1e-300).unwrap(), s);
            let lo = bayes(loss, GammaHyper::new(1e-300, c).unwrap(), s);
            let eb = ebayes(loss, bound, s);
            prop_assert!(lo <= eb && eb <= hi, "{lo} {eb} {hi}");
        }
    }

    #[test]
    fn bayes_orderings(s in stat(), a in 0.001f64..0.999, b in log_uniform(1e-3, 1e2)) {
        let h = GammaHyper::new(a, b).unwrap();
        prop_assert!(bayes(LossKind::El, h, s) < bayes(LossKind::Kl, h, s));
        prop_assert!(bayes(LossKind::Kl, h, s) < bayes(LossKind::Sel, h, s));
        prop_assert!(bayes_mse(LossKind::Sel, h, s) < bayes_mse(LossKind::Kl, h, s));
        prop_assert!(bayes_mse(LossKind::Kl, h, s) < bayes_mse(LossKind::El, h, s));
    }

    #[test]
    fn kl_mse_matches_posterior_moment_identity(s in stat(), a in 0.001f64..0.999, b in log_uniform(1e-3, 1e2)) {
        // E[(α−δ)²] = Var + (E α − δ)² with posterior Gamma(shape, rate).
        let h = GammaHyper::new(a, b).unwrap();
        let shape = a + s.n() as f64;
        let rate = b + s.t();
        let delta = bayes(LossKind::Kl, h, s);
        let direct = shape / (rate * rate) + (shape / rate - delta).powi(2);
        let got = bayes_mse(LossKind::Kl, h, s);
        prop_assert!((got - direct).abs() <= 1e-9 * direct, "{got} vs {direct}");
    }
}

#[test]
fn integrals_against_simpson_oracle() {
    for n in [3usize, 7, 40, 1000] {
        let nf = n as f64;
        let i = common::simpson(|a| ((a + nf) * (a + nf - 1.0)).sqrt(), 0.0, 1.0, 200_000);
        assert!((kl_integral(n).unwrap() - i).abs() <= 1e-12 * i, "n={n}");
        let j = common::simpson(
            |a| {
                let s = a + nf;
                s * (s - (s * (s - 1.0)).sqrt())
            },
            0.0,
            1.0,
            200_000,
        );
        assert!(
            (kl_mse_integral(n).unwrap() - j).abs() <= 1e-11 * j,
            "n={n}"
        );
    }
}

#[test]
fn n_equal_one_integrals_via_tanh_sinh() {
    let i = common::tanh_sinh(|a| (a * (a + 1.0)).sqrt(), 0.0, 1.0);
    assert!((kl_integral(1).unwrap() - i).abs() <= 1e-14 * i);
    // Closed form of ∫_0^1 √(a(a+1)) da.
    let closed = 0.75 * 2f64.sqrt() - 0.125 * (3.0 + 2.0 * 2f64.sqrt()).ln();
    assert!((kl_integral(1).unwrap() - closed).abs() <= 1e-14);
}

#[test]
fn real_data_report_matches_published_table() {
    let sample = Sample::new(Dataset::embedded().values, 3.0).unwrap();
    let stat = SufficientStat::from(&sample);
    assert!((mle(stat) - common::PUBLISHED_MLE).abs() < 1e-6);
    for (c, row) in common::TABLE_7 {
        let r = EstimateReport::compute(stat, HyperBound::new(c).unwrap());
        for (i, loss) in LossKind::ALL.iter().enumerate() {
            assert!((r.eb[*loss] - row[i]).abs() <= 5e-6, "c={c} eb_{loss}");
            assert!(
                (r.emse[*loss] - row[3 + i]).abs() <= 5e-6,
                "c={c} emse_{loss}"
            );
        }
    }
}

#[test]
fn constructors_validate() {
    assert!(GammaHyper::new(0.0, 1.0).is_err());
    assert!(GammaHyper::new(1.0, 1.0).is_err());
    assert!(GammaHyper::new(0.5, 0.0).is_err());
    assert!(HyperBound::new(0.0).is_err());
    assert!(HyperBound::new(f64::NAN).is_err());
    assert!(SufficientStat::new(0, 1.0).is_err());
    assert!(SufficientStat::new(3, 0.0).is_err());
    assert_eq!(kl_integral(0), Err(Error::ZeroCount));
}
