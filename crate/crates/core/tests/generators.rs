use cumdev_core::dpp::{
    build_kernel_matrix, occupation_moments, poisson_binomial_pmf, sample_occupation_seeded, spectral_data, GridSpec,
    KernelSpec, DEFAULT_GOODNESS_TOL,
};
use cumdev_core::generators::*;
use cumdev_core::mc;
use cumdev_core::quadrature::QuadratureRule;

/// Mean and variance of the motif count over all 2^{n(n-1)/2} graphs.
fn enumerate_moments(n: usize, p: f64, motif: &Motif) -> (f64, f64) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let (mut m1, mut m2) = (0.0, 0.0);
    for mask in 0u64..1 << pairs.len() {
        let mut g = Graph::empty(n);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(a, b);
            }
        }
        let e = mask.count_ones() as i32;
        let w = p.powi(e) * (1.0 - p).powi(pairs.len() as i32 - e);
        let c = g.motif_count(motif) as f64;
        m1 += w * c;
        m2 += w * c * c;
    }
    (m1, m2 - m1 * m1)
}

#[test]
fn subgraph_formulas_match_enumeration() {
    for p in [0.3, 0.5] {
        let (mean, var) = enumerate_moments(5, p, &Motif::triangle());
        let spec = Motif::triangle().spec();
        assert!((exact_subgraph_mean(5, p, &spec).unwrap() - mean).abs() < 1e-12);
        assert!((exact_triangle_variance(5, p).unwrap() - var).abs() < 1e-12);
        let path = Motif::path(3).unwrap();
        let (pm, _) = enumerate_moments(5, p, &path);
        assert!((exact_subgraph_mean(5, p, &path.spec()).unwrap() - pm).abs() < 1e-12);
    }
}

#[test]
fn dependency_degree_bound_dominates_exact() {
    for n in [4, 6, 8] {
        for m in [Motif::triangle(), Motif::path(3).unwrap(), Motif::cycle(4).unwrap()] {
            if n < m.vertices() {
                continue;
            }
            let exact = exact_dependency_degree(n, &m).unwrap();
            assert!(exact <= subgraph_degree_count_bound(n, &m.spec()), "{} n={n}", m.name());
            if m.is_triangle() {
                assert_eq!(exact, 3 * (n - 3));
                assert!(exact <= subgraph_degree_bound(n, &m.spec()));
            }
        }
    }
}

#[test]
fn vertex_choice_bound_undercounts_paths() {
    let p3 = Motif::path(3).unwrap();
    assert_eq!(exact_dependency_degree(4, &p3).unwrap(), 6);
    assert_eq!(subgraph_degree_bound(4, &p3.spec()), 3);
    let cfg = GnpConfig::new(4, 0.5, p3).unwrap();
    assert_eq!(dependency_summary_for_subgraphs(&cfg, 0).unwrap().summary.max_degree(), 6);
}

#[test]
fn seeded_samplers_are_reproducible() {
    let g = GnpConfig::new(20, 0.3, Motif::triangle()).unwrap();
    assert_eq!(sample_subgraph_count_seeded(&g, 4), sample_subgraph_count_seeded(&g, 4));
    let c = ChainConfig::iid(30, DiscreteLaw::rademacher()).unwrap();
    assert_eq!(sample_chain_seeded(&c, 4), sample_chain_seeded(&c, 4));
    let u = UStatConfig::new(10, Kernel::Sum, InputLaw::StandardNormal).unwrap();
    assert_eq!(sample_ustatistic_seeded(&u, 4), sample_ustatistic_seeded(&u, 4));
    let h = HeteroSumConfig::scaled_rademacher(&[1.0, 2.0, 0.5]).unwrap();
    assert_eq!(sample_hetero_sum_seeded(&h, 4), sample_hetero_sum_seeded(&h, 4));
}

#[test]
fn lee_variance_for_linear_kernel() {
    let u = UStatConfig::new(3, Kernel::Sum, InputLaw::StandardNormal).unwrap();
    assert!((u.variance() - 4.0 / 3.0).abs() < 1e-12);
    let m = u.moments();
    assert!((m.sigma1sq - 1.0).abs() < 1e-12 && (m.sigma2sq - 2.0).abs() < 1e-12);
}

#[test]
fn chain_variance_matches_monte_carlo() {
    let law = DiscreteLaw::new(vec![-1.0, 2.0], vec![2.0 / 3.0, 1.0 / 3.0]).unwrap();
    let c = ChainConfig::iid(12, law).unwrap();
    let trials = 200_000;
    let v = mc::draw_values(trials, 8, |r| sample_chain(&c, r));
    let mean = v.iter().sum::<f64>() / trials as f64;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
    let se = c.variance() * (2.0 / trials as f64).sqrt() * 3.0;
    assert!((var - c.variance()).abs() < 3.0 * se, "{var} vs {}", c.variance());
    assert!(c.dependency_summary().unwrap().max_degree() == 2);
}

#[test]
fn occupation_law_agrees_with_spectrum() {
    let grid = GridSpec::new(-4.0, 4.0, 48, QuadratureRule::GaussLegendre).unwrap();
    let s = spectral_data(&build_kernel_matrix(&KernelSpec::Sine, &grid).unwrap(), DEFAULT_GOODNESS_TOL).unwrap();
    assert!(s.lambdas().iter().all(|l| (0.0..=1.0).contains(l)));
    let (mean, var) = occupation_moments(&s);
    assert!((mean - 8.0 / std::f64::consts::PI).abs() < 1e-8);
    let law = poisson_binomial_pmf(s.lambdas()).unwrap();
    assert!((law.pmf.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    assert!((law.mean() - mean).abs() < 1e-10 && (law.variance() - var).abs() < 1e-10);
    let k = sample_occupation_seeded(&s, 1);
    assert!((k as usize) < law.pmf.len());
}

#[test]
fn bernstein_margin_for_rademacher() {
    let r = bernstein_condition_margin(&DiscreteLaw::rademacher(), 20).unwrap();
    // |E X^4| = 1 = 4! K² gives the largest requirement.
    assert!((r.k_min - (1.0f64 / 24.0).sqrt()).abs() < 1e-14);
    assert!(r.satisfied_by(1.0));
}
