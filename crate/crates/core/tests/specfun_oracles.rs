mod common;

use fracsolve_core::femcore::GaussLegendre;
use fracsolve_core::specfun::{
    caputo_power, caputo_sin, caputo_sin_antiderivative, gamma_fn, gegenbauer, jacobi, mittag_leffler, MLParams,
};

// Series summed at 400 digits with mpmath; all of these arguments lie beyond
// the power-series range of the library.
const ML_FROZEN: &[(f64, f64, f64, f64)] = &[
    (0.5, 1.0, -20.0, 0.028_174_348_741_051_319_318_65),
    (0.5, 1.0, -40.0, 0.014_100_335_983_377_813_624_74),
    (0.8, 1.0, -7.0, 0.037_861_333_396_684_905_032_74),
    (0.3, 1.0, -3.0, 0.211_802_633_196_435_780_394_2),
    (0.7, 0.7, -15.0, 0.001_154_139_503_117_337_955_1),
    (1.2, 1.2, -40.0, -0.000_144_670_403_919_136_433_103_6),
    (1.5, 1.0, -30.0, -0.014_470_224_834_105_874_553_27),
    (1.5, 2.0, -30.0, 0.019_875_580_087_330_172_013_96),
    (1.9, 1.0, -80.0, -0.385_821_122_447_063_008_347_3),
];

#[test]
fn mittag_leffler_matches_high_precision_series() {
    for &(a, b, z, want) in ML_FROZEN {
        let got = mittag_leffler(MLParams::new(a, b), z).unwrap();
        let tol = 1e-10 * want.abs().max(1e-3);
        assert!((got - want).abs() <= tol, "E_{{{a},{b}}}({z}) = {got}, want {want}");
    }
}

#[test]
fn mittag_leffler_decays_like_first_asymptotic_term() {
    // E_{a,1}(-x) ~ x^-1 / Gamma(1 - a) for 0 < a < 1
    for a in [0.3, 0.5, 0.8] {
        let x = 400.0;
        let lead = 1.0 / (x * gamma_fn(1.0 - a).unwrap());
        let v = mittag_leffler(MLParams::new(a, 1.0), -x).unwrap();
        assert!(v > 0.0 && ((v - lead) / lead).abs() < 0.02, "a={a}: {v} vs {lead}");
    }
}

#[test]
fn mittag_leffler_derivative_identity() {
    // d/dt E_{a,1}(-l t^a) = -l t^(a-1) E_{a,a}(-l t^a)
    for a in [0.4, 0.5, 0.9, 1.5, 1.6] {
        for lambda in [1.0, 5.0] {
            for t in [0.5, 1.0, 2.0, 5.0f64] {
                let h = 1e-5;
                let f = |t: f64| mittag_leffler(MLParams::new(a, 1.0), -lambda * t.powf(a)).unwrap();
                let fd = (f(t + h) - f(t - h)) / (2.0 * h);
                let exact =
                    -lambda * t.powf(a - 1.0) * mittag_leffler(MLParams::new(a, a), -lambda * t.powf(a)).unwrap();
                assert!((fd - exact).abs() < 1e-7, "a={a} l={lambda} t={t}: {fd} vs {exact}");
            }
        }
    }
}

#[test]
fn mittag_leffler_envelope_on_negative_axis() {
    // |E(z)| (1 + |z|) stays below 10 |E(0)| on [-1e4, 0]
    for a in [0.3, 0.8, 1.5] {
        let p = MLParams::new(a, 1.0);
        let bound = 10.0 * mittag_leffler(p, 0.0).unwrap();
        for i in 0..=4000 {
            // geometric spacing reaches -1e4
            let z = -(10f64.powf(-3.0 + 7.0 * i as f64 / 4000.0));
            let v = mittag_leffler(p, z).unwrap();
            assert!(v.abs() * (1.0 - z) <= bound, "a={a} z={z}: {v}");
        }
    }
}

#[test]
fn caputo_of_sine_matches_quadrature() {
    // mpmath, 40 digits
    let frozen = [
        (1.5, 1.0, -0.669_684_259_577_663_560_260_1),
        (0.5, 1.0, 0.846_056_786_724_152_909_988_4),
        (0.3, 2.5, 0.114_279_466_781_293_930_193_2),
        (1.8, 0.1, -0.057_184_614_642_358_785_952_75),
        (1.5, 3.0, -1.108_367_286_997_862_550_189),
    ];
    for (a, t, want) in frozen {
        let got = caputo_sin(a, t, 1e-17).unwrap();
        assert!((got - want).abs() < 1e-12, "alpha={a} t={t}: {got} vs {want}");
    }
    // and an independent quadrature of the same integral after r = t - u^2
    let a = 0.5;
    let t = 1.7f64;
    let q = 2.0 * common::tanh_sinh(|u| u * u.powf(-2.0 * a) * (t - u * u).cos(), 0.0, t.sqrt(), 1e-13)
        / common::sqrt_pi();
    assert!((caputo_sin(a, t, 1e-17).unwrap() - q).abs() < 1e-11);
}

#[test]
fn caputo_sine_antiderivative() {
    let frozen = [(1.5, 1.0, -0.282_322_380_371_359_659_601_9), (0.5, 0.7, 0.416_377_760_904_597_939_865_1)];
    for (a, t, want) in frozen {
        let got = caputo_sin_antiderivative(a, t, 1e-17).unwrap();
        assert!((got - want).abs() < 1e-12, "alpha={a} t={t}: {got} vs {want}");
    }
    for a in [0.6, 1.3] {
        let t = 0.9;
        let q = common::adaptive_simpson(&|r: f64| if r == 0.0 { 0.0 } else { caputo_sin(a, r, 1e-17).unwrap() }, 0.0, t, 1e-12);
        assert!((caputo_sin_antiderivative(a, t, 1e-17).unwrap() - q).abs() < 1e-8);
    }
}

#[test]
fn caputo_power_rule() {
    // D^a t^2 = 2 t^(2-a) / Gamma(3-a)
    let v = caputo_power(0.5, 2.0, 0.81).unwrap();
    let want = 2.0 * 0.81f64.powf(1.5) / (0.75 * common::sqrt_pi());
    assert!((v - want).abs() < 1e-14);
    // constants are annihilated
    assert_eq!(caputo_power(0.5, 0.0, 1.3).unwrap(), 0.0);
}

#[test]
fn orthogonal_polynomial_values() {
    // mpmath
    assert!((gegenbauer(3, 1.25, 0.3) + 1.358_437_5).abs() < 1e-14);
    assert!((gegenbauer(5, 0.75, -0.8) - 0.734_58).abs() < 1e-13);
    assert!((jacobi(4, 0.25, -0.5, 0.6) + 0.478_962_5).abs() < 1e-14);
}

#[test]
fn gegenbauer_orthogonality() {
    // weight (1 - x^2)^(lambda - 1/2) with integer exponent keeps Gauss exact
    let rule = GaussLegendre::new(24);
    for lambda in [0.5, 1.5, 2.5] {
        for j in 0..6 {
            for k in 0..j {
                let ip = rule.integrate(-1.0, 1.0, |x| {
                    (1.0 - x * x).powf(lambda - 0.5) * gegenbauer(j, lambda, x) * gegenbauer(k, lambda, x)
                });
                assert!(ip.abs() < 1e-12, "lambda={lambda} ({j},{k}): {ip}");
            }
        }
    }
}

#[test]
fn jacobi_orthogonality() {
    let rule = GaussLegendre::new(24);
    for (a, b) in [(1.0, 0.0), (2.0, 1.0)] {
        for j in 0..6 {
            for k in 0..j {
                let ip = rule.integrate(-1.0, 1.0, |x| {
                    (1.0 - x).powf(a) * (1.0 + x).powf(b) * jacobi(j, a, b, x) * jacobi(k, a, b, x)
                });
                assert!(ip.abs() < 1e-12, "({a},{b}) ({j},{k}): {ip}");
            }
        }
    }
}
