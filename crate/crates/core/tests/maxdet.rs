mod common;

use common::*;
use nalgebra::DMatrix;
use pellkit::maxdet::{
    assemble_instance, dual_certificate, extension_sweep, fenchel_slack, gradient_fd_check, moment_bound_excess,
    solve_primal, solve_set, SolverConfig, EXTENSION_TOL,
};
use pellkit::measures::{uniform_start_moments, SampleBudget};
use pellkit::momkit::MomentSequence;
use pellkit::mvpoly::Poly;
use pellkit::sets::{builtin, compare_reference};
use pellkit::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn solve(name: &str, t: u32) -> pellkit::maxdet::SolveReport {
    solve_set(&set(name), t, &SolverConfig::default()).unwrap()
}

#[test]
fn block_structure_examples() {
    let inst = assemble_instance(&set("interval"), 1).unwrap();
    assert_eq!(inst.num_vars(), 2);
    assert_eq!(inst.blocks.iter().map(|b| b.size()).collect::<Vec<_>>(), vec![2, 1]);

    let inst = assemble_instance(&set("ball2d"), 2).unwrap();
    assert_eq!(inst.blocks.iter().map(|b| b.size()).collect::<Vec<_>>(), vec![6, 3]);

    let inst = assemble_instance(&set("box2d"), 1).unwrap();
    assert_eq!(inst.blocks.iter().map(|b| b.generator).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert_eq!(inst.pell_constant(), 5);

    assert!(matches!(assemble_instance(&set("tvscreen"), 1), Err(Error::OrderTooSmall { .. })));
    assert!(matches!(assemble_instance(&set("interval"), 0), Err(Error::OrderTooSmall { .. })));
}

#[test]
fn blocks_reproduce_localizing_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for name in ["interval", "box2d", "ball2d", "simplex2d", "tvscreen", "ellipsoids2"] {
        let s = set(name);
        for t in 1..=3 {
            let Ok(inst) = assemble_instance(&s, t) else { continue };
            let vars: Vec<f64> = (0..inst.num_vars()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let phi = inst.sequence(&vars);
            let full = inst.full(&vars);
            for b in &inst.blocks {
                for a in b.coefficients.iter().map(|(_, a)| a) {
                    assert_eq!(a, &a.transpose());
                }
                let g: Poly<f64> = s.generator(b.generator).convert();
                let want = phi.localizing_matrix(&g, t - s.half_degree(b.generator)).unwrap().to_dmatrix();
                assert!((b.assemble(&full) - want).amax() <= 1e-12, "{name} t={t}");
            }
        }
    }
}

#[test]
fn solver_examples() {
    let r = solve("interval", 2);
    for (v, w) in r.phi.values().iter().zip([1.0, 0.0, 0.5, 0.0, 0.375]) {
        assert!((v - w).abs() <= 1e-6);
    }
    let r = solve("ball2d", 2);
    for (e, w) in [(&[2, 0][..], 1.0 / 3.0), (&[4, 0], 0.2), (&[2, 2], 1.0 / 15.0)] {
        assert!((r.phi.get(&mi(e)).unwrap() - w).abs() <= 1e-6);
    }
    let r = solve("simplex2d", 1);
    for (v, w) in r.phi.values().iter().zip([1.0, 1.0 / 3.0, 1.0 / 3.0, 0.2, 1.0 / 15.0, 0.2]) {
        assert!((v - w).abs() <= 1e-6);
    }
}

/// Root of 1/a − 5/(1−5a) on (0, 1/5) by bisection.
fn ellipsoid_oracle() -> f64 {
    let f = |a: f64| 1.0 / a - 5.0 / (1.0 - 5.0 * a);
    let (mut lo, mut hi) = (1e-9, 0.2 - 1e-9);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn ellipsoids_match_stationarity_oracle() {
    let a = ellipsoid_oracle();
    let r = solve("ellipsoids2", 1);
    assert!((r.phi.get(&mi(&[2, 0])).unwrap() - a).abs() <= 1e-8);
    assert!((r.phi.get(&mi(&[0, 2])).unwrap() - a).abs() <= 1e-8);
    let cmp = compare_reference(&r).unwrap();
    assert!(cmp.flagged);
    assert_eq!(cmp.entries.len(), 2);
}

#[test]
fn dual_certificate_examples() {
    for (name, t, c, tol) in [("tvscreen", 2, 7, 1e-6), ("tvscreen", 3, 13, 1e-6), ("interval", 3, 7, 1e-8)] {
        let r = solve(name, t);
        let cert = dual_certificate(&r).unwrap();
        assert_eq!(cert.constant, c);
        assert!(cert.residual_max.0 <= tol, "{name} t={t}: {}", cert.residual_max.0);
        assert!(cert.duality_gap_relative.0 <= 1e-7);
    }
    let mut r = solve("interval", 1);
    r.converged = false;
    assert!(matches!(dual_certificate(&r), Err(Error::NotConverged)));
}

#[test]
fn duals_invert_localizing_blocks() {
    let r = solve("box2d", 2);
    let inst = assemble_instance(&r.set, r.t).unwrap();
    let full = r.phi.values().to_vec();
    for (b, d) in inst.blocks.iter().zip(&r.duals) {
        let m = b.assemble(&full);
        let prod = &m * d.matrix.to_dmatrix();
        let eye = DMatrix::identity(b.size(), b.size());
        assert!((prod - eye).amax() <= 1e-8);
    }
}

#[test]
fn sweep_examples() {
    let cfg = SolverConfig::default();
    let table = extension_sweep(&set("ball2d"), 1, 3, &cfg, EXTENSION_TOL).unwrap();
    assert_eq!(table.rows.len(), 2);
    assert!(table.rows.iter().all(|r| r.distance.0 <= 1e-6 && r.extension));

    let table = extension_sweep(&set("tvscreen"), 2, 3, &cfg, EXTENSION_TOL).unwrap();
    assert!(table.rows[0].distance.0 > 1e-3);
    assert!(!table.rows[0].extension);

    let table = extension_sweep(&set("interval"), 1, 4, &cfg, EXTENSION_TOL).unwrap();
    assert!(table.rows.iter().all(|r| r.distance.0 <= 1e-8));
    assert!(table.to_csv().starts_with("t,t_next,distance,extension\n"));

    assert!(extension_sweep(&set("ball2d"), 3, 1, &cfg, EXTENSION_TOL).is_err());
    assert!(extension_sweep(&set("tvscreen"), 1, 2, &cfg, EXTENSION_TOL).is_err());
}

#[test]
fn finite_difference_examples() {
    for name in ["interval", "ball2d"] {
        let inst = assemble_instance(&set(name), 2).unwrap();
        let start = uniform_start_moments(&inst.set, 2, SampleBudget::default()).unwrap();
        let vars = inst.vars_from(&start).unwrap();
        let err = gradient_fd_check(&inst, &vars, 1e-5).unwrap();
        assert!(err <= 1e-6, "{name}: {err}");
        assert!(matches!(gradient_fd_check(&inst, &vars, 0.0), Err(Error::InvalidStep(_))));
    }
}

#[test]
fn fenchel_inequality_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..100 {
        let k = rng.gen_range(1..7);
        let m = random_spd(&mut rng, k);
        let qm = random_spd(&mut rng, k);
        assert!(fenchel_slack(&m, &qm).unwrap() >= -1e-10);
        let inv = m.clone().try_inverse().unwrap();
        assert!(fenchel_slack(&m, &inv).unwrap().abs() <= 1e-10);
    }
}

#[test]
fn optimum_is_unique() {
    for (name, t) in [("ball2d", 2), ("tvscreen", 2), ("simplex2d", 2)] {
        let s = set(name);
        let inst = assemble_instance(&s, t).unwrap();
        let a = uniform_start_moments(&s, t, SampleBudget { samples: 20_000, seed: 1 }).unwrap();
        let b = uniform_start_moments(&s, t, SampleBudget { samples: 40_000, seed: 99 }).unwrap();
        assert_ne!(a.values(), b.values());
        let ra = solve_primal(&inst, &a, &SolverConfig::default()).unwrap();
        let rb = solve_primal(&inst, &b, &SolverConfig::default()).unwrap();
        let d = pellkit::momkit::extension_distance(&ra.phi, &rb.phi).unwrap();
        assert!(d <= 1e-7, "{name}: {d}");
    }
}

#[test]
fn objective_decreases_and_moments_are_bounded() {
    for name in ["interval", "box2d", "ball2d", "simplex2d", "ellipsoids2", "tvscreen"] {
        let s = set(name);
        let max_tg = (0..s.generators().len()).map(|i| s.half_degree(i)).max().unwrap();
        for t in max_tg.max(1)..=3 {
            let r = solve_set(&s, t, &SolverConfig::default()).unwrap();
            for w in r.trace.windows(2) {
                let (f0, f1) = (w[0].objective.0, w[1].objective.0);
                assert!(f1 <= f0 + 1e-12 * f0.abs().max(1.0), "{name} t={t}: {f0} -> {f1}");
            }
            assert_eq!(moment_bound_excess(&r.phi, s.radius()), 0.0, "{name} t={t}");
        }
    }
}

#[test]
fn infeasible_start_is_rejected() {
    let s = set("interval");
    let inst = assemble_instance(&s, 1).unwrap();
    let outside = MomentSequence::<f64>::from_values(1, 2, vec![1.0, 0.0, 2.0]).unwrap();
    assert!(matches!(solve_primal(&inst, &outside, &SolverConfig::default()), Err(Error::InfeasibleStart { generator: 1 })));
}

#[test]
fn iteration_limit_is_reported() {
    let cfg = SolverConfig { max_iter: 1, ..SolverConfig::default() };
    assert!(matches!(solve_set(&set("ball2d"), 3, &cfg), Err(Error::MaxIterations { .. })));
}

#[test]
fn solver_matches_known_models() {
    for (name, tmax) in [("interval", 4), ("box2d", 3), ("ball2d", 3), ("simplex2d", 3)] {
        let m = builtin(name).unwrap().1.unwrap();
        for t in 1..=tmax {
            let r = solve(name, t);
            assert!(distance_to_model(&r.phi, &m) <= 1e-6, "{name} t={t}");
        }
    }
}

#[test]
fn report_json_has_trace_only_on_request() {
    let r = solve("interval", 2);
    let plain = serde_json::to_value(r.to_json(false)).unwrap();
    assert!(plain.get("trace").is_none());
    assert!(plain.get("reference").is_none());
    let traced = serde_json::to_value(r.to_json(true)).unwrap();
    assert_eq!(traced["trace"].as_array().unwrap().len(), r.iterations);
}
