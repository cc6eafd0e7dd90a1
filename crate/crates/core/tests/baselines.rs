//! Expectation identities and Monte-Carlo behavior of the comparison
//! estimators, plus strict-oracle runs of everything.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tetris_core::baselines::{rws, serwc, srw, vertex_mcmc};
use tetris_core::graph::exact_triangle_count;
use tetris_core::{
    generate, random_walk, Algorithm, Diagnostics, EstimatorConfig, Graph, OracleSession,
    RunOptions,
};

fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("k3", generate::complete(3)),
        ("k4", generate::complete(4)),
        ("bowtie", generate::bowtie()),
        ("k5", generate::complete(5)),
    ]
}

fn closed_pairs_at(g: &Graph, v: u32) -> u64 {
    let n = g.neighbors(v);
    let mut c = 0;
    for (i, &a) in n.iter().enumerate() {
        for &b in &n[i + 1..] {
            c += g.has_edge(a, b) as u64;
        }
    }
    c
}

#[test]
fn wedge_walk_success_rate_is_three_t_over_w() {
    for (name, g) in fixtures() {
        let s = exact_triangle_count(&g);
        // π(v) = C(d,2)/W, success at v = closed(v)/C(d,2)
        let p: f64 = g
            .vertices()
            .map(|v| closed_pairs_at(&g, v) as f64 / s.wedges as f64)
            .sum();
        assert!(
            (p - 3.0 * s.triangles as f64 / s.wedges as f64).abs() < 1e-12,
            "{name}"
        );
    }
}

#[test]
fn weighted_closed_triples_average_three_t_over_m() {
    for (name, g) in fixtures() {
        let s = exact_triangle_count(&g);
        let two_m = 2.0 * s.m as f64;
        let mut e = 0.0;
        for a in g.vertices() {
            for &b in g.neighbors(a) {
                for &c in g.neighbors(b) {
                    let db = g.neighbors(b).len() as f64;
                    let da = g.neighbors(a).len() as f64;
                    if c != a && g.has_edge(a, c) {
                        e += (da / two_m) * (1.0 / da) * (1.0 / db) * db;
                    }
                }
            }
        }
        assert!(
            (e - 3.0 * s.triangles as f64 / s.m as f64).abs() < 1e-12,
            "{name}"
        );
    }
}

#[test]
fn incident_triangles_average_three_t_over_m() {
    for (name, g) in fixtures() {
        let s = exact_triangle_count(&g);
        let total: usize = g
            .edges()
            .map(|(u, v)| g.triangles_on_edge(u, v).unwrap())
            .sum();
        assert_eq!(total as u64, 3 * s.triangles, "{name}");
    }
}

#[test]
fn wedge_estimate_is_exact_in_stationary_expectation() {
    for (name, g) in fixtures() {
        let s = exact_triangle_count(&g);
        let mean_d_minus_1: f64 = g
            .vertices()
            .map(|v| {
                let d = g.neighbors(v).len() as f64;
                d / (2.0 * s.m as f64) * (d - 1.0)
            })
            .sum();
        assert!(
            (s.m as f64 * mean_d_minus_1 - s.wedges as f64).abs() < 1e-9,
            "{name}"
        );
    }
}

fn mean_estimate(g: &Graph, algo: Algorithm, r: usize, runs: u64, opts: &RunOptions) -> f64 {
    (0..runs)
        .map(|run| {
            let cfg = EstimatorConfig::new(r, 1, 25).with_rng_seed(run);
            algo.run(g, &cfg, opts).unwrap().value
        })
        .sum::<f64>()
        / runs as f64
}

#[test]
fn baselines_are_close_on_small_graphs() {
    for (name, g) in [
        ("k4", generate::complete(4)),
        ("bowtie", generate::bowtie()),
    ] {
        let s = exact_triangle_count(&g);
        let t = s.triangles as f64;
        let hook = RunOptions {
            exact_wedges: Some(s.wedges as f64),
            ..RunOptions::default()
        };
        for (algo, opts) in [
            (Algorithm::VertexMcmc, hook),
            (Algorithm::Srw, RunOptions::default()),
            (Algorithm::Serwc, RunOptions::default()),
        ] {
            let mean = mean_estimate(&g, algo, 20_000, 40, &opts);
            assert!((mean - t).abs() <= 0.1 * t, "{name}/{algo}: {mean}");
        }
    }
}

#[test]
fn vertex_mcmc_without_wedge_hook_is_close() {
    let g = generate::bowtie();
    let mean = mean_estimate(
        &g,
        Algorithm::VertexMcmc,
        20_000,
        40,
        &RunOptions::default(),
    );
    assert!((mean - 2.0).abs() <= 0.2, "{mean}");
}

#[test]
fn ledgers_match_the_walk() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g = generate::holme_kim(300, 4, 0.6, &mut rng);
    let cfg = EstimatorConfig::new(4000, 1, 25)
        .with_rng_seed(17)
        .with_seed_vertex(9);
    let opts = RunOptions::default();

    let mut replay = OracleSession::open(&g, 9, 17, false).unwrap();
    let trace = random_walk(&mut replay, 4000, false).unwrap();
    let sum_de: u64 = trace.edge_degrees().iter().sum();

    let out = serwc(&g, &cfg, &opts).unwrap();
    assert_eq!(out.ledger.rn_queries, 4000);
    assert_eq!(out.ledger.idx_queries, sum_de);
    assert_eq!(out.ledger.edge_queries, sum_de);

    let out = srw(&g, &cfg, &opts).unwrap();
    let non_backtracking = trace.vertices().windows(3).filter(|w| w[0] != w[2]).count() as u64;
    assert_eq!(out.ledger.rn_queries, 4000);
    assert_eq!(out.ledger.edge_queries, non_backtracking);
    assert!(out.ledger.edge_queries < 4000);

    let out = rws(&g, &cfg, &opts).unwrap();
    assert_eq!(out.ledger.countable_queries(), 4000);

    let out = vertex_mcmc(&g, &cfg, &opts).unwrap();
    match out.diagnostics {
        Diagnostics::VertexMcmc {
            wedge_samples,
            proposals,
            neighbor_draws,
            ..
        } => {
            assert_eq!(out.ledger.edge_queries, wedge_samples);
            assert_eq!(out.ledger.rn_queries, proposals + neighbor_draws);
            assert!(wedge_samples <= 4000);
        }
        _ => unreachable!(),
    }
}

#[test]
fn rws_scales_by_inverse_cube() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = generate::holme_kim(2000, 5, 0.9, &mut rng);
    for seed in 0..10 {
        let cfg = EstimatorConfig::new(3000, 1, 25).with_rng_seed(seed);
        let out = rws(&g, &cfg, &RunOptions::default()).unwrap();
        match out.diagnostics {
            Diagnostics::Rws {
                subgraph_triangles,
                sample_probability,
                clamped,
                ..
            } => {
                assert!(!clamped);
                let expect = subgraph_triangles as f64 / sample_probability.powi(3);
                assert!((out.estimate - expect).abs() <= 1e-9 * expect.max(1.0));
            }
            _ => unreachable!(),
        }
    }
}

#[test]
fn everything_runs_under_the_strict_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let graphs = [
        generate::bowtie(),
        generate::complete(4),
        generate::holme_kim(200, 3, 0.5, &mut rng),
    ];
    for g in &graphs {
        for lazy in [false, true] {
            let opts = RunOptions {
                strict: true,
                lazy,
                ..RunOptions::default()
            };
            for algo in Algorithm::ALL {
                let cfg = EstimatorConfig::new(3000, 150, 25).with_rng_seed(1);
                let est = algo.run(g, &cfg, &opts).unwrap();
                assert!(est.value.is_finite() && est.value >= 0.0, "{algo}");
            }
        }
    }
}

#[test]
fn baselines_replay_exactly() {
    let g = generate::bowtie();
    let cfg = EstimatorConfig::new(500, 25, 5)
        .with_rng_seed(3)
        .with_seed_vertex(4);
    for algo in Algorithm::ALL {
        let a = algo.run(&g, &cfg, &RunOptions::default()).unwrap();
        let b = algo.run(&g, &cfg, &RunOptions::default()).unwrap();
        assert_eq!(a, b, "{algo}");
    }
}
