use proptest::prelude::*;
use wna_core::asymptotics::{main_term_c, regime_classify, Band};
use wna_core::boundslab::phi_sum;
use wna_core::kernels::{phi, KernelSpec, PhaseRule, TruncationBudget};
use wna_core::sharp::{centered_lp_distance, periodic_lp_norm, CosineSeries, NormRequest};
use wna_core::specfun::{f_power, HypergeomPath, HypergeomRequest};
use wna_core::{Exponent, ScaledValue};

fn fpow(s: f64, z: f64) -> f64 {
    f_power(&HypergeomRequest {
        s: Exponent::new(s).unwrap(),
        z,
        tol: 1e-14,
        path: HypergeomPath::Auto,
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaled_products_match_plain(a in 1e-3f64..1e3, b in 1e-3f64..1e3, la in -50f64..50.0, lb in -50f64..50.0) {
        let x = ScaledValue::new(a, la);
        let y = ScaledValue::new(b, lb);
        let want = a * la.exp() * b * lb.exp();
        prop_assert!((x.mul(&y).value() - want).abs() <= 1e-12 * want);
        let sum = a * la.exp() + b * lb.exp();
        prop_assert!((x.add(&y).value() - sum).abs() <= 1e-12 * sum);
    }

    #[test]
    fn phi_is_between_zero_and_the_polynomial(x in 1e-6f64..50.0, r in 1.01f64..500.0) {
        let v = phi(x, r);
        prop_assert!(v >= 0.0);
        prop_assert!(v <= (-r * x.ln_1p()).exp());
    }

    #[test]
    fn f_power_grows_with_s(s in 1.0f64..30.0, ds in 0.05f64..5.0, q in 0.05f64..0.95) {
        let z = q * q;
        prop_assert!(fpow(s + ds, z) > fpow(s, z));
        prop_assert!(fpow(s, z) < 1.0 / (1.0 - q));
    }

    #[test]
    fn bands_cover_their_ranges(n in 2u64..2000, t in 0.0f64..1.0) {
        let nf = n as f64;
        let lo1 = nf.sqrt() + 1.0;
        let r1 = lo1 + t * (nf + 1.0 - lo1);
        prop_assert!(regime_classify(r1, n).in_band1());
        let r2 = (nf + 1.0) * ((nf * nf) / (nf + 1.0)).powf(t);
        prop_assert!(regime_classify(r2, n).in_band2());
        prop_assert_eq!(regime_classify(nf * nf * 1.01, n).band, Band::Outside);
    }

    #[test]
    fn main_terms_share_one_scale(n in 4u64..200, t in 0.0f64..1.0, p in 1.0f64..10.0) {
        let nf = n as f64;
        let r = (nf.sqrt() + 1.0) * ((nf * nf) / (nf.sqrt() + 1.0)).powf(t);
        let m = main_term_c(Exponent::new(p).unwrap(), r, n).unwrap();
        prop_assert_eq!(m.main.log_scale, m.remainder_scale.log_scale);
        prop_assert!((m.main.log_scale + r * nf.ln()).abs() <= 1e-12 * r * nf.ln());
        prop_assert!(m.main.mantissa.is_finite() && m.main.mantissa > 0.0);
    }

    #[test]
    fn phi_sum_split_adds_up(n in 1u64..300, r in 1.2f64..400.0) {
        let s = phi_sum(r, n, &TruncationBudget::default()).unwrap();
        prop_assert!(s.value > 0.0);
        prop_assert!((s.split_head + s.split_tail - s.value).abs() <= s.residual_bound + 4.0 * f64::EPSILON * s.value);
        prop_assert!((s.m as f64).powi(2) * r <= (n as f64).powi(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn centring_never_hurts(r in 1.5f64..8.0, n in 1u64..12, beta in -2.0f64..2.0, p in 1.0f64..6.0) {
        let spec = KernelSpec::weyl_nagy(r, n, PhaseRule::constant(beta)).unwrap();
        let s = CosineSeries::kernel_tail(&spec, 200).unwrap();
        let p = Exponent::new(p).unwrap();
        let plain = periodic_lp_norm(&NormRequest::new(&s, p, 1e-9)).unwrap();
        let cent = centered_lp_distance(&NormRequest::new(&s, p, 1e-9)).unwrap();
        prop_assert!(cent.value <= plain.value * (1.0 + 1e-9));
    }
}
