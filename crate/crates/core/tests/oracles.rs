//! Reference values from independent high-precision computations.

use std::f64::consts::PI;

use wna_core::asymptotics::{classical_mains, main_term_c, main_term_l, remainder_scale, ClassicalVariant};
use wna_core::boundslab::{inequality_suite, lemma1_split_check, phi_sum, stechkin_sum_ratio};
use wna_core::kernels::{KernelSpec, PhaseRule, TruncationBudget};
use wna_core::sharp::{e_value_c, e_value_l, EvalOptions};
use wna_core::specfun::{cos_norm, exact_l2_routes, exact_l2_value, zeta_tail};
use wna_core::Exponent;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-300)
}

#[test]
fn exact_l2_values() {
    assert!(close(exact_l2_value(1.0, 2).unwrap().value(), 0.453_088_17, 1e-8));
    assert!(close(exact_l2_value(1.0, 1).unwrap().value(), 0.723_601_254_558_268, 1e-13));
    assert!(close(exact_l2_value(5.0, 16).unwrap().mantissa, 0.861_090_999_363_016, 1e-13));
    let routes = exact_l2_routes(0.6, 8).unwrap();
    assert!(routes.series.rel_diff(&routes.integral) < 1e-10);
    assert!(close(zeta_tail(5.0, 3).unwrap().value(), 0.005_677_755_143_37, 1e-11));
}

#[test]
fn sharp_values_at_small_n() {
    let opts = EvalOptions::default();
    let k = KernelSpec::weyl_nagy(2.0, 1, PhaseRule::constant(0.0)).unwrap();
    let v = e_value_c(&k, Exponent::Finite(2.0), &opts).unwrap();
    assert!(close(v.value.value(), (PI.powi(3) / 90.0).sqrt(), 1e-12));
    let k = KernelSpec::poisson(0.5, 3, PhaseRule::constant(0.0)).unwrap();
    let v = e_value_l(&k, Exponent::Finite(2.0), &opts).unwrap();
    assert!(close(v.value.value(), 0.125 / (0.75 * PI).sqrt(), 1e-12));
    let k = KernelSpec::weyl_nagy(1024.0, 32, PhaseRule::constant(0.0)).unwrap();
    // far into the second band the tail is essentially one cosine
    let c1 = e_value_c(&k, Exponent::Finite(1.0), &opts).unwrap();
    assert!(close(c1.value.mantissa, 1.0 / PI, 1e-12));
    let c_inf = e_value_c(&k, Exponent::Infinity, &opts).unwrap();
    assert!(close(c_inf.value.mantissa, 4.0 / PI, 1e-12));
}

#[test]
fn main_terms_and_scales() {
    let m = main_term_c(Exponent::Finite(1.0), 16.0, 16).unwrap();
    assert!(close(m.main.mantissa, 1.0 / (PI * (1.0 - (-1.0f64).exp())), 1e-15));
    let l = main_term_l(Exponent::Finite(2.0), 16.0, 16).unwrap();
    assert!(close(l.main.mantissa, 1.0 / (PI * (1.0 - (-2.0f64).exp())).sqrt(), 1e-13));
    assert!(close(remainder_scale(17.0, 16).unwrap().mantissa, 16.0 / 289.0, 1e-15));
    assert!(close(remainder_scale(16.0, 4).unwrap().mantissa, (-4.0f64).exp(), 1e-15));
    let g = classical_mains(40.0, 16, ClassicalVariant::General12(Exponent::Finite(3.0))).unwrap();
    assert!(close(g.main.mantissa, 1.386_722_548_701_27 / PI, 1e-13));
    assert!(close(cos_norm(1.5).unwrap(), 2.303_495_162_643_66, 1e-13));
    assert!(close(cos_norm(10.0).unwrap(), 1.044_547_142_291_86, 1e-13));
}

#[test]
fn lemma_and_sums() {
    let e2 = (-2.0f64).exp();
    let s = phi_sum(2.0, 1, &TruncationBudget::default()).unwrap();
    assert!(close(s.value, PI * PI / 6.0 - 1.0 - e2 / (1.0 - e2), 1e-14));
    for (r, n) in [(5.0, 16), (17.0, 256), (3.0, 4)] {
        assert!(lemma1_split_check(r, n).unwrap().holds());
    }
    assert!(close(stechkin_sum_ratio(17.0, 16).unwrap(), 2.551_174_148_108_133, 1e-10));
    assert!(inequality_suite().all_hold());
}
