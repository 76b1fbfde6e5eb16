use padic_brownian::laws::{ball_probability, radial_law, ProcessParams, RadialLaw, SeriesTolerance};
use padic_brownian::padic::{Norm, DEFAULT_WIDTH};
use padic_brownian::sampling::{
    uniform_ball_scalar, uniform_sphere_vector, IncrementSampler, RadialSampler, RadiusDraw, RngStream,
};
use padic_brownian::stats::{
    binomial_se, chi_square_critical, chi_square_gof, chi_square_independence, LevelHistogram,
};

fn params(p: u32, d: u32, b: f64) -> ProcessParams {
    ProcessParams::new(p, d, b, 1.0).unwrap()
}

fn tol() -> SeriesTolerance {
    SeriesTolerance::default()
}

fn uniform_chi_square(counts: &[u64]) -> (f64, f64) {
    let n: u64 = counts.iter().sum();
    let e = n as f64 / counts.len() as f64;
    let stat = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    (stat, chi_square_critical(counts.len() - 1).unwrap())
}

#[test]
fn ball_digits_are_uniform() {
    let mut rng = RngStream::new(11, 0);
    for (p, k) in [(2u32, 0), (3, 2), (7, -1)] {
        let mut counts = vec![vec![0u64; p as usize]; 6];
        for _ in 0..100_000 {
            let x = uniform_ball_scalar(p, k, DEFAULT_WIDTH, &mut rng).unwrap();
            for (i, row) in counts.iter_mut().enumerate() {
                row[x.digit_at(i as i64 - k as i64) as usize] += 1;
            }
        }
        for row in &counts {
            let (stat, crit) = uniform_chi_square(row);
            assert!(stat < crit, "p={p} k={k}: {stat} >= {crit}");
        }
    }
}

#[test]
fn inner_ball_has_probability_one_over_p() {
    let mut rng = RngStream::new(12, 0);
    for p in [2u32, 3, 5] {
        let n = 100_000u64;
        let hits = (0..n)
            .filter(|_| uniform_ball_scalar(p, 1, DEFAULT_WIDTH, &mut rng).unwrap().norm().within(0))
            .count() as u64;
        let est = hits as f64 / n as f64;
        let want = 1.0 / p as f64;
        assert!((est - want).abs() < 3.0 * (want * (1.0 - want) / n as f64).sqrt(), "p={p}: {est}");
    }
}

#[test]
fn sphere_coordinates_follow_leading_digit_combinatorics() {
    let mut rng = RngStream::new(13, 0);
    for (p, d) in [(2u32, 1usize), (2, 3), (3, 2)] {
        let n = 100_000u64;
        let (mut inner, mut rejections) = (0u64, 0u64);
        let mut table = vec![vec![0u64; p as usize]; d];
        for _ in 0..n {
            let s = uniform_sphere_vector(p, 0, d, 16, &mut rng).unwrap();
            assert_eq!(s.vector.max_norm(), Norm::Level(0));
            rejections += s.rejections as u64;
            inner += u64::from(s.vector.coords()[0].norm().within(-1));
            for (i, c) in s.vector.coords().iter().enumerate() {
                table[i][c.digit_at(0) as usize] += 1;
            }
        }
        let (pf, df) = (p as f64, d as i32);
        // leading digit of coordinate 1 is zero, some other one is not
        let want = (pf.powi(df - 1) - 1.0) / (pf.powi(df) - 1.0);
        let est = inner as f64 / n as f64;
        assert!((est - want).abs() < 3.0 * binomial_se(inner, n).max(1e-9), "p={p} d={d}: {est} vs {want}");
        let mean_rej = rejections as f64 / n as f64;
        let want_rej = pf.powi(-df) / (1.0 - pf.powi(-df));
        let sd = (want_rej * (1.0 + want_rej) / n as f64).sqrt();
        assert!((mean_rej - want_rej).abs() < 3.0 * sd, "rejections {mean_rej} vs {want_rej}");
        if d > 1 {
            assert!(chi_square_independence(&table).unwrap().pass, "leading digits not exchangeable");
        }
    }
}

#[test]
fn radius_frequencies_match_masses() {
    let law = radial_law(&params(2, 1, 1.0), 1.0, -12, 20, &tol()).unwrap();
    let sampler = RadialSampler::new(law.clone());
    let mut rng = RngStream::new(14, 0);
    let mut h = LevelHistogram::new();
    for _ in 0..100_000 {
        match sampler.sample(&mut rng) {
            RadiusDraw::Level(k) => h.record(Norm::Level(k)),
            RadiusDraw::TailLow => h.record(Norm::Zero),
            RadiusDraw::TailHigh => h.record(Norm::Level(21)),
        }
    }
    let v = chi_square_gof(&h, &law, 5).unwrap();
    assert!(v.pass, "{v}");
}

#[test]
fn tail_markers_are_rare() {
    // window chosen so both tails are about 1e-8
    let p = params(2, 1, 1.0);
    let law = radial_law(&p, 1.0, -25, 26, &tol()).unwrap();
    assert!(law.lower_tail() > 1e-9 && law.lower_tail() < 1e-7);
    assert!(law.upper_tail() > 1e-9 && law.upper_tail() < 1e-7);
    let sampler = RadialSampler::new(law.clone());
    let mut rng = RngStream::new(15, 0);
    let n = 1_000_000u64;
    let (mut low, mut high) = (0u64, 0u64);
    for _ in 0..n {
        match sampler.sample(&mut rng) {
            RadiusDraw::TailLow => low += 1,
            RadiusDraw::TailHigh => high += 1,
            RadiusDraw::Level(_) => {}
        }
    }
    assert!(low as f64 <= (2.0 * law.lower_tail() * n as f64).max(1.0));
    assert!(high as f64 <= (2.0 * law.upper_tail() * n as f64).max(1.0));
}

#[test]
fn radial_law_is_a_valid_law_for_the_sampler() {
    let p = params(3, 2, 1.0);
    let law = RadialLaw::from_masses(p, 1.0, 0, vec![0.2, 0.3, 0.5], 0.0, 0.0).unwrap();
    let sampler = RadialSampler::new(law);
    let mut rng = RngStream::new(16, 0);
    for _ in 0..1000 {
        assert!(matches!(sampler.sample(&mut rng), RadiusDraw::Level(0..=2)));
    }
}

#[test]
fn increments_hit_balls_with_the_closed_form_probability() {
    for (p, d, b, dt) in [(2u32, 2u32, 1.0, 0.5), (3, 1, 2.0, 1.0), (5, 3, 0.7, 2.0)] {
        let pr = params(p, d, b);
        let sampler = IncrementSampler::new(&pr, dt, DEFAULT_WIDTH, &tol()).unwrap();
        let mut rng = RngStream::new(17, u64::from(p));
        let n = 100_000u64;
        let levels: Vec<Norm> = (0..n).map(|_| sampler.increment(&mut rng).unwrap().max_norm()).collect();
        for r in -2..=2 {
            let hits = levels.iter().filter(|l| l.within(r)).count() as u64;
            let est = hits as f64 / n as f64;
            let want = ball_probability(&pr, dt, r, &tol()).unwrap();
            let se = (want * (1.0 - want) / n as f64).sqrt();
            assert!((est - want).abs() <= 3.0 * se.max(1e-12), "p={p} d={d} R={r}: {est} vs {want}");
        }
    }
}

#[test]
fn one_dimensional_increments_follow_the_one_dimensional_law() {
    let pr = params(3, 1, 1.0);
    let sampler = IncrementSampler::new(&pr, 1.0, DEFAULT_WIDTH, &tol()).unwrap();
    let mut rng = RngStream::new(18, 0);
    let mut h = LevelHistogram::new();
    for _ in 0..100_000 {
        h.record(sampler.increment(&mut rng).unwrap().coords()[0].norm());
    }
    let law = radial_law(&pr, 1.0, -8, 8, &tol()).unwrap();
    assert!(chi_square_gof(&h, &law, 5).unwrap().pass);
}

#[test]
fn increments_from_distinct_streams_are_uncorrelated() {
    let pr = params(2, 2, 1.0);
    let sampler = IncrementSampler::new(&pr, 1.0, DEFAULT_WIDTH, &tol()).unwrap();
    let (mut a, mut b) = (RngStream::new(19, 0), RngStream::new(19, 1));
    let n = 100_000;
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let x = sampler.level(&mut a).unwrap().level().unwrap_or(-100) as f64;
            let y = sampler.level(&mut b).unwrap().level().unwrap_or(-100) as f64;
            (x, y)
        })
        .collect();
    let nf = n as f64;
    let (mx, my) = pairs.iter().fold((0.0, 0.0), |s, p| (s.0 + p.0 / nf, s.1 + p.1 / nf));
    let (sxy, sxx, syy) = pairs.iter().fold((0.0, 0.0, 0.0), |s, p| {
        (s.0 + (p.0 - mx) * (p.1 - my), s.1 + (p.0 - mx).powi(2), s.2 + (p.1 - my).powi(2))
    });
    let corr = sxy / (sxx * syy).sqrt();
    assert!(corr.abs() < 3.0 / nf.sqrt(), "correlation {corr}");
}

#[test]
fn identical_seeds_reproduce_bit_for_bit() {
    let pr = params(3, 3, 1.5);
    let sampler = IncrementSampler::new(&pr, 0.3, DEFAULT_WIDTH, &tol()).unwrap();
    let draw = |seed| {
        let mut rng = RngStream::new(seed, 4);
        (0..200).map(|_| sampler.increment(&mut rng).unwrap()).collect::<Vec<_>>()
    };
    assert_eq!(draw(99), draw(99));
    assert_ne!(draw(99), draw(100));
}
