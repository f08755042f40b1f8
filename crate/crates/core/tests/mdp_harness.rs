use cumdev_core::bounds::{rss_corridor, CumulantCondition, RssQuantities};
use cumdev_core::mdp::{
    estimate_tail_rate, normal_zone_ratio, wilson_interval, GeneratorSpec, MdpExperiment, WILSON_Z,
};
use proptest::prelude::*;

fn experiment(generator: GeneratorSpec, a_n: f64, x_grid: Vec<f64>, trials: usize, seed: u64) -> MdpExperiment {
    MdpExperiment { generator, a_n, x_grid, trials, root_seed: seed, allow_rare: false }
}

#[test]
fn wilson_coverage_is_calibrated() {
    // P(Z >= 1) for a standardized sum of 100 signs is the binomial tail P(K >= 55).
    let exp = experiment(GeneratorSpec::Binomial { n: 100 }, 2.0, vec![0.5], 1000, 0);
    let truth = exp.build_generator().unwrap().exact_law().unwrap().upper_tail(1.0);
    assert!((truth - 0.1841).abs() < 1e-3);
    let reps = 1000;
    let covered = (0..reps)
        .filter(|&r| {
            let e = MdpExperiment { root_seed: 1000 + r, ..exp.clone() };
            let (lo, hi) = estimate_tail_rate(&e).unwrap().records[0].wilson_interval;
            lo <= truth && truth <= hi
        })
        .count();
    let coverage = covered as f64 / reps as f64;
    assert!((0.93..=0.97).contains(&coverage), "coverage {coverage}");
}

#[test]
fn reports_are_deterministic_and_thread_independent() {
    let exp = experiment(GeneratorSpec::Chain { n: 50, law: Default::default() }, 1.5, vec![0.0, 0.5, 1.0], 50_000, 9);
    let a = serde_json::to_string(&estimate_tail_rate(&exp).unwrap()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(2).build().unwrap();
    let b = pool.install(|| serde_json::to_string(&estimate_tail_rate(&exp).unwrap()).unwrap());
    assert_eq!(a, b);
    let other = MdpExperiment { root_seed: 10, ..exp };
    assert_ne!(a, serde_json::to_string(&estimate_tail_rate(&other).unwrap()).unwrap());
}

#[test]
fn symmetric_generator_tails_agree() {
    let exp = experiment(GeneratorSpec::Binomial { n: 400 }, 2.0, vec![0.25, 0.5, 0.75], 200_000, 3);
    let r = estimate_tail_rate(&exp).unwrap();
    let n = exp.trials as f64;
    for rec in &r.records {
        let (p, q) = (rec.hit_count as f64 / n, rec.left_hit_count as f64 / n);
        let se = ((p * (1.0 - p) + q * (1.0 - q)) / n).sqrt();
        assert!((p - q).abs() <= 4.0 * se, "x = {}: {p} vs {q}", rec.x);
        assert_eq!(rec.theoretical_rate, rec.x * rec.x / 2.0);
        assert!(rec.hit_count <= exp.trials as u64);
    }
}

#[test]
fn exact_rate_nears_fixed_a_n_limit_at_largest_n() {
    // At fixed a_n the rate tends to -ln(1 - Φ(a_n x))/a_n², not to x²/2.
    let limit = -cumdev_core::specfun::std_normal_sf(2.0).unwrap().ln() / 4.0;
    let gaps: Vec<f64> = [100, 1000, 10_000]
        .iter()
        .map(|&n| {
            let g = GeneratorSpec::Binomial { n }.build(0).unwrap();
            let law = g.exact_law().unwrap();
            // Mid-p tail: an atom sitting exactly on the threshold counts half.
            let p = 0.5 * (law.upper_tail(2.0) + law.upper_tail(2f64.next_up()));
            (-p.ln() / 4.0 - limit).abs()
        })
        .collect();
    // The lattice term oscillates with n, so only the final size is asserted.
    assert!(gaps[2] < gaps[0].min(gaps[1]) && gaps[2] < 1e-3, "{gaps:?}");
}

#[test]
fn every_generator_passes_standardization() {
    let specs = vec![
        GeneratorSpec::Binomial { n: 64 },
        GeneratorSpec::HeteroSum { sigmas: (1..=40).map(|i| i as f64 / 10.0).collect() },
        GeneratorSpec::BernoulliSum { lambdas: vec![0.1, 0.4, 0.5, 0.7, 0.95, 0.3] },
        GeneratorSpec::Subgraph { n: 12, p: 0.4, motif: "triangle".into() },
        GeneratorSpec::Chain { n: 30, law: Default::default() },
        GeneratorSpec::Ustat {
            n: 10,
            kernel: cumdev_core::generators::Kernel::Sum,
            law: cumdev_core::generators::LawSpec::StandardNormal,
        },
        serde_json::from_str(r#"{"kind":"dpp","kernel":{"family":"sine"},"a":-3,"b":3,"points":32}"#).unwrap(),
    ];
    for spec in specs {
        let id = spec.id();
        let exp = experiment(spec, 1.5, vec![0.0, 0.5], 20_000, 4);
        let r = estimate_tail_rate(&exp).unwrap_or_else(|e| panic!("{id}: {e}"));
        assert!(r.standardization.pass, "{id}");
        let z = normal_zone_ratio(&exp).unwrap();
        assert_eq!(z.records.len(), 2);
    }
}

#[test]
fn censored_cells_bound_the_rate_from_below() {
    let exp = MdpExperiment { allow_rare: true, ..experiment(GeneratorSpec::Binomial { n: 16 }, 2.0, vec![2.5], 1000, 1) };
    let rec = &estimate_tail_rate(&exp).unwrap().records[0];
    assert!(rec.censored && rec.empirical_rate.is_none());
    assert!(rec.rate_interval.upper.is_infinite() && rec.rate_interval.lower > 0.0);
    let json = serde_json::to_string(rec).unwrap();
    assert!(json.contains("\"upper\":null"));
}

proptest! {
    #[test]
    fn wilson_contains_point_estimate(hits in 0u64..=5000, extra in 0u64..5000) {
        let n = hits + extra + 1;
        let (lo, hi) = wilson_interval(hits, n, WILSON_Z);
        let p = hits as f64 / n as f64;
        prop_assert!(0.0 <= lo && lo <= p + 1e-15 && p <= hi + 1e-15 && hi <= 1.0);
    }

    #[test]
    fn corridor_never_shrinks_as_delta_shrinks(gamma in 0.0f64..3.0, d in 1e3f64..1e8, shrink in 0.5f64..0.99, frac in 0.0f64..0.9) {
        let big = RssQuantities::new(CumulantCondition::new(gamma, d).unwrap());
        let small = RssQuantities::new(CumulantCondition::new(gamma, d * shrink).unwrap());
        prop_assume!(small.delta_gamma() >= 4.0);
        let x = frac * small.delta_gamma();
        let cb = rss_corridor(x, &big).unwrap();
        let cs = rss_corridor(x, &small).unwrap();
        prop_assert!(cs.upper >= cb.upper && cs.lower <= cb.lower);
    }
}

#[test]
fn corridor_upper_end_is_not_monotone_for_small_delta_gamma() {
    // Near x = 0 the factor Δ_γ² e^{-√Δ_γ} in ψ grows until Δ_γ = 16.
    let at = |dg: f64| {
        let d = (6.0 * dg) * 6.0 / 2f64.sqrt();
        rss_corridor(0.0, &RssQuantities::new(CumulantCondition::new(0.0, d).unwrap())).unwrap().upper
    };
    assert!(at(2.0) < at(3.0));
    assert!(at(5.0) > at(8.0));
}
