use num_traits::ToPrimitive;
use padic_brownian::laws::{
    ball_probability, conditional_ball_prob, density_at_level, radial_law, radial_mass, sphere_measure,
    survival_maxnorm, survival_product, ConditionalLaw, ProcessParams, SeriesTolerance,
};
use padic_brownian::padic::Norm;
use proptest::prelude::*;

fn tol() -> SeriesTolerance {
    SeriesTolerance::default()
}

fn process() -> impl Strategy<Value = ProcessParams> {
    (
        prop::sample::select(vec![2u32, 3, 5, 7]),
        1u32..=4,
        0.3f64..3.0,
        0.1f64..5.0,
    )
        .prop_map(|(p, d, b, s)| ProcessParams::new(p, d, b, s).unwrap())
}

fn log_time() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radial_law_sums_to_one(params in process(), t in log_time(), lo in -8i32..0, span in 0i32..16) {
        let law = radial_law(&params, t, lo, lo + span, &tol()).unwrap();
        prop_assert!((law.total() - 1.0).abs() < 1e-12, "total {}", law.total());
        prop_assert!(law.masses().iter().all(|&m| m >= 0.0));
    }

    #[test]
    fn density_integrates_to_radial_masses(params in process(), t in log_time(), k in -6i32..6) {
        let rho = density_at_level(&params, t, Norm::Level(k), &tol()).unwrap();
        let shell = sphere_measure(params.prime(), k as i64, params.dim()).unwrap().to_f64().unwrap();
        let mass = radial_mass(&params, t, k, &tol()).unwrap();
        prop_assert!((rho * shell - mass).abs() <= 1e-9 * mass.max(1e-300), "{} vs {}", rho * shell, mass);
    }

    #[test]
    fn ball_probability_is_nondecreasing_in_radius(params in process(), t in log_time(), r in -10i32..10) {
        let a = ball_probability(&params, t, r, &tol()).unwrap();
        let b = ball_probability(&params, t, r + 1, &tol()).unwrap();
        prop_assert!(a <= b + 1e-15);
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn conditional_probability_scales_exactly_with_p_to_the_r(
        params in process(), t in log_time(), big_r in -3i32..3, drop in 0i32..6,
    ) {
        prop_assume!(params.dim() >= 2);
        let law = ConditionalLaw::new(&params, t, big_r, &tol()).unwrap();
        let p = params.prime() as f64;
        let r = big_r - drop;
        let direct = conditional_ball_prob(&params, t, r, big_r, &tol()).unwrap();
        prop_assert_eq!(direct, law.prob(r).unwrap());
        let scaled = direct / p.powi(r);
        let top = law.prob(big_r).unwrap() / p.powi(big_r);
        prop_assert!((scaled - top).abs() <= 4.0 * f64::EPSILON * top);
        prop_assert!(law.prob(big_r).unwrap() <= 1.0 + 1e-12);
    }

    #[test]
    fn product_survival_is_a_power(params in process(), horizon in log_time(), r in -3i32..3) {
        let one = survival_maxnorm(&params.with_dim(1).unwrap(), horizon, r).unwrap();
        let prod = survival_product(&params, horizon, r).unwrap();
        prop_assert_eq!(prod, one.powi(params.dim() as i32));
    }
}

#[test]
fn max_norm_and_product_survival_coincide_in_one_dimension() {
    for (p, b) in [(2, 1.0), (3, 0.5), (5, 2.0)] {
        let params = ProcessParams::new(p, 1, b, 1.3).unwrap();
        for r in -2..3 {
            assert_eq!(
                survival_maxnorm(&params, 0.9, r).unwrap(),
                survival_product(&params, 0.9, r).unwrap()
            );
        }
    }
}

#[test]
fn ball_probability_decreases_in_time_at_small_times() {
    for (p, d, b) in [(2, 1, 1.0), (3, 2, 2.0), (2, 3, 0.5)] {
        let params = ProcessParams::new(p, d, b, 1.0).unwrap();
        for r in -3..=0 {
            let vals: Vec<f64> = [1e-4, 1e-3, 1e-2]
                .iter()
                .map(|&t| ball_probability(&params, t, r, &tol()).unwrap())
                .collect();
            assert!(vals[0] >= vals[1] && vals[1] >= vals[2], "{vals:?}");
        }
    }
}

#[test]
fn masses_for_the_reference_law() {
    // p = 2, d = 1, b = 1, sigma = 1, t = 1, from 50-digit mpmath.
    let want = [
        0.000_352_222_706_707_452_13,
        0.000_704_445_413_414_904_27,
        0.001_408_890_826_829_808_5,
        0.002_817_781_653_659_617_1,
        0.005_635_563_307_319_234_1,
        0.011_271_126_614_638_468,
        0.022_542_253_229_264_272,
        0.045_084_393_923_366_49,
        0.089_833_437_754_005_187,
        0.161_686_699_247_178_71,
        0.206_353_754_146_478_9,
        0.180_163_350_358_128_17,
        0.121_675_482_175_065_23,
        0.071_080_840_991_359_022,
        0.038_465_562_469_527_509,
        0.020_014_964_710_174_636,
        0.010_209_757_757_480_975,
        0.005_156_312_985_897_626_8,
        0.002_591_124_716_960_147_5,
        0.001_298_818_224_046_317_1,
        0.000_650_224_810_734_651_55,
    ];
    let params = ProcessParams::new(2, 1, 1.0, 1.0).unwrap();
    let law = radial_law(&params, 1.0, -10, 10, &tol()).unwrap();
    for ((k, m), w) in law.levels().zip(want) {
        assert!((m - w).abs() <= 1e-13 * w, "k={k}: {m} vs {w}");
    }
    assert!((law.lower_tail() - 0.000_352_222_706_707_452_13).abs() < 1e-17);
    assert!((law.upper_tail() - 0.000_650_769_271_055_224_18).abs() < 1e-16);
}
