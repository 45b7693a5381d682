use cascadelab::generators::{
    gen_ba, gen_er, gen_price, gen_waxman, laplace_g, line_picking_pdf, waxman_q, GeneratorSpec,
};
use cascadelab::{Error, Graph, RngStream};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, Discrete};

fn pair_distance(rng: &mut ChaCha8Rng) -> f64 {
    let (x1, y1, x2, y2): (f64, f64, f64, f64) = (rng.random(), rng.random(), rng.random(), rng.random());
    ((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt()
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, var.sqrt())
}

#[test]
fn line_picking_density_matches_histogram_at_half() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples = 10_000_000;
    let width = 1e-3;
    let hits = (0..samples)
        .filter(|_| (pair_distance(&mut rng) - 0.5).abs() < width / 2.0)
        .count();
    let p = hits as f64 / samples as f64;
    let estimate = p / width;
    let se = (p * (1.0 - p) / samples as f64).sqrt() / width;
    let exact = line_picking_pdf(0.5).unwrap();
    assert!((estimate - exact).abs() < 3.0 * se, "{estimate} vs {exact} (se {se})");
}

#[test]
fn laplace_transform_matches_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let d: Vec<f64> = (0..10_000_000).map(|_| pair_distance(&mut rng)).collect();
    for s in [1.0, 5.0, 10.0] {
        let vals: Vec<f64> = d.iter().map(|&t| (-s * t).exp()).collect();
        let (m, sd) = mean_sd(&vals);
        let se = sd / (vals.len() as f64).sqrt();
        let g = laplace_g(s).unwrap();
        assert!((g - m).abs() < 3.0 * se, "s={s}: quadrature {g}, MC {m} (se {se})");
    }
}

#[test]
fn laplace_transform_shape() {
    assert!((laplace_g(0.0).unwrap() - 1.0).abs() < 1e-9);
    let grid: Vec<f64> = (0..=200).map(|i| laplace_g(i as f64 * 0.1).unwrap()).collect();
    assert!(grid.windows(2).all(|w| w[1] < w[0]));
    assert!(laplace_g(-0.1).is_err());
}

#[test]
fn calibration_examples() {
    assert!((waxman_q(10_000, 6.0, 0.0).unwrap() - 6.0 / 9999.0).abs() < 1e-12);
    let q10 = waxman_q(10_000, 6.0, 10.0).unwrap();
    assert!((q10 - 6.0 / (9999.0 * laplace_g(10.0).unwrap())).abs() < 1e-15);
    match waxman_q(10, 20.0, 0.0) {
        Err(Error::Infeasible { max_z, .. }) => assert!((max_z - 9.0).abs() < 1e-6),
        other => panic!("expected infeasibility, got {other:?}"),
    }
}

#[test]
fn two_node_waxman_edge_probability() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let trials = 100_000;
    let edges = (0..trials)
        .filter(|_| gen_waxman(2, 1.0, 1.0, &mut rng).unwrap().edge_count() == 1)
        .count();
    let p = laplace_g(1.0).unwrap();
    let se = (p * (1.0 - p) / trials as f64).sqrt();
    let freq = edges as f64 / trials as f64;
    assert!((freq - p).abs() < 3.0 * se, "{freq} vs {p}");
}

fn degree_moments(g: &Graph) -> (f64, f64) {
    let d: Vec<f64> = g.degrees().into_iter().map(|k| k as f64).collect();
    let m = d.iter().sum::<f64>() / d.len() as f64;
    (m, d.iter().map(|x| (x - m).powi(2)).sum::<f64>() / d.len() as f64)
}

#[test]
fn waxman_at_zero_decay_is_erdos_renyi() {
    let (n, reps) = (2000, 30);
    let q = waxman_q(n, 6.0, 0.0).unwrap();
    let mut wax = (Vec::new(), Vec::new());
    let mut er = (Vec::new(), Vec::new());
    for r in 0..reps {
        let w = gen_waxman(n, 0.0, q, &mut RngStream::new(14, r).rng()).unwrap();
        let e = gen_er(n, q, &mut RngStream::new(15, r).rng()).unwrap();
        let (wm, wv) = degree_moments(&w);
        let (em, ev) = degree_moments(&e);
        wax.0.push(wm);
        wax.1.push(wv);
        er.0.push(em);
        er.1.push(ev);
    }
    for (a, b, what) in [(&wax.0, &er.0, "mean"), (&wax.1, &er.1, "variance")] {
        let (ma, sa) = mean_sd(a);
        let (mb, sb) = mean_sd(b);
        let se = ((sa * sa + sb * sb) / reps as f64).sqrt();
        assert!((ma - mb).abs() < 3.0 * se, "{what}: {ma} vs {mb} (se {se})");
    }
}

#[test]
fn waxman_calibration_hits_target_degree() {
    for s in [0.0, 2.0, 5.0, 10.0] {
        for z in [3.0, 6.0] {
            let spec = GeneratorSpec::Waxman { n: 2000, s, target_z: z };
            let mean = (0..10)
                .map(|r| spec.generate(RngStream::new(16, r)).unwrap().mean_degree().unwrap())
                .sum::<f64>()
                / 10.0;
            assert!((mean / z - 1.0).abs() < 0.03, "s={s} z={z}: {mean}");
        }
    }
}

#[test]
fn er_paper_scale_mean_degree() {
    let spec = GeneratorSpec::Er { n: 10_000, q: 6.0 / 9999.0 };
    let mean = (0..10)
        .map(|r| spec.generate(RngStream::new(17, r)).unwrap().mean_degree().unwrap())
        .sum::<f64>()
        / 10.0;
    assert!((mean / 6.0 - 1.0).abs() < 0.03, "{mean}");
}

#[test]
fn er_degree_is_binomial() {
    let (n, q, samples) = (100usize, 0.05, 10_000);
    let mut counts = vec![0usize; n];
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..samples {
        counts[gen_er(n, q, &mut rng).unwrap().degree_of(0)] += 1;
    }
    let binom = Binomial::new(q, (n - 1) as u64).unwrap();
    // pool bins from both ends until each holds at least 5 expected samples
    let mut bins: Vec<(f64, usize)> = Vec::new();
    let (mut exp_acc, mut obs_acc) = (0.0, 0);
    for (k, &observed) in counts.iter().enumerate() {
        exp_acc += binom.pmf(k as u64) * samples as f64;
        obs_acc += observed;
        if exp_acc >= 5.0 {
            bins.push((exp_acc, obs_acc));
            exp_acc = 0.0;
            obs_acc = 0;
        }
    }
    let last = bins.last_mut().unwrap();
    last.0 += exp_acc;
    last.1 += obs_acc;
    let chi2: f64 = bins.iter().map(|&(e, o)| (o as f64 - e).powi(2) / e).sum();
    let critical = ChiSquared::new((bins.len() - 1) as f64).unwrap().inverse_cdf(0.99);
    assert!(chi2 < critical, "chi2 {chi2} >= {critical} with {} bins", bins.len());
}

#[test]
fn ba_paper_scale_edge_count() {
    let g = gen_ba(10_000, 3, &mut ChaCha8Rng::seed_from_u64(19)).unwrap();
    assert_eq!(g.edge_count(), 29_991);
    assert!((g.mean_degree().unwrap() - 5.9982).abs() < 1e-12);
}

#[test]
fn ba_degree_tail_slope() {
    let mut degrees = Vec::new();
    for r in 0..10 {
        degrees.extend(gen_ba(10_000, 3, &mut RngStream::new(20, r).rng()).unwrap().degrees());
    }
    let total = degrees.len() as f64;
    // least squares on log CCDF over a log-spaced grid of degrees
    let ks: Vec<usize> = (0..12).map(|i| (6.0 * 1.3f64.powi(i)).round() as usize).collect();
    let pts: Vec<(f64, f64)> = ks
        .iter()
        .map(|&k| {
            let tail = degrees.iter().filter(|&&d| d >= k).count() as f64 / total;
            ((k as f64).ln(), tail.ln())
        })
        .collect();
    let (mx, my) = (
        pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64,
        pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64,
    );
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!((slope + 2.0).abs() < 0.5, "slope {slope}");
}

#[test]
fn ba_four_three_by_hand() {
    let g = gen_ba(4, 3, &mut ChaCha8Rng::seed_from_u64(21)).unwrap();
    assert_eq!(g.degrees(), vec![1, 1, 1, 3]);
}

#[test]
fn price_mean_degree_matches_truncated_poisson() {
    let lambda: f64 = 3.0;
    let expected = 2.0 * lambda / (1.0 - (-lambda).exp());
    let mean = (0..10)
        .map(|r| gen_price(5000, lambda, false, &mut RngStream::new(22, r).rng()).unwrap().mean_degree().unwrap())
        .sum::<f64>()
        / 10.0;
    assert!((mean / expected - 1.0).abs() < 0.1, "{mean} vs {expected}");
}

#[test]
fn directed_price_points_to_older_nodes() {
    let g = gen_price(500, 0.5, true, &mut ChaCha8Rng::seed_from_u64(23)).unwrap();
    for &(u, v) in g.edges() {
        assert!(u > v);
    }
    for u in 1..500 {
        let out = g.degree_of(u);
        assert!(out >= 1 && out <= u, "node {u} has out-degree {out}");
    }
    assert_eq!(g.degree_of(0), 0);
}

#[test]
fn small_c_still_links_every_newcomer() {
    for r in 0..50 {
        let g = gen_price(4, 0.5, false, &mut RngStream::new(24, r).rng()).unwrap();
        // every arrival adds at least one edge
        assert!(g.edge_count() >= 3);
        assert!(g.degrees().iter().all(|&d| d >= 1));
    }
}

#[test]
fn generators_are_deterministic_per_stream() {
    let specs = [
        GeneratorSpec::Er { n: 300, q: 0.02 },
        GeneratorSpec::Waxman { n: 300, s: 5.0, target_z: 6.0 },
        GeneratorSpec::Ba { n: 300, m: 2 },
        GeneratorSpec::Price { n: 300, c: 2.5, directed: true },
    ];
    for spec in specs {
        let a = spec.generate(RngStream::new(25, 3)).unwrap();
        let b = spec.generate(RngStream::new(25, 3)).unwrap();
        let c = spec.generate(RngStream::new(25, 4)).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.positions(), b.positions());
        assert_ne!(a.edges(), c.edges(), "{spec:?}");
    }
}

proptest! {
    #[test]
    fn ba_edge_identity(n in 2usize..200, m_frac in 0.0..1.0f64, seed: u64) {
        let m = 1 + ((n - 1) as f64 * m_frac) as usize % (n - 1);
        let g = gen_ba(n, m, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(g.edge_count(), (n - m) * m);
    }

    #[test]
    fn waxman_positions_in_unit_square(n in 1usize..100, s in 0.0..20.0f64, seed: u64) {
        let g = gen_waxman(n, s, 1.0, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let pos = g.positions().unwrap();
        prop_assert_eq!(pos.len(), n);
        prop_assert!(pos.iter().flatten().all(|c| (0.0..=1.0).contains(c)));
    }
}
