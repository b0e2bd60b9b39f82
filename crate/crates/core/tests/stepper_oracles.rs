use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fracsolve_core::cqtime::UniformTimeGrid;
use fracsolve_core::femcore::{assemble_mass, assemble_stiffness, UniformMesh1D};
use fracsolve_core::specfun::{mittag_leffler, MLParams};
use fracsolve_core::stepper::{
    semidiscrete_exact, solve_diffusion, solve_wave, Forcing, ModalBasis, SolverConfig,
};
use fracsolve_core::Error;

fn random(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn modal_basis_solves_generalized_problem() {
    let mesh = UniformMesh1D::unit(24).unwrap();
    let k = assemble_stiffness(&mesh, 0.4).unwrap();
    let m = assemble_mass(&mesh);
    let basis = ModalBasis::new(&k, &m).unwrap();
    let kd = k.matrix().to_nalgebra();
    let md = m.to_dense().to_nalgebra();
    for (i, &lambda) in basis.eigenvalues.iter().enumerate() {
        assert!(lambda > 0.0);
        let phi = basis.modes.column(i);
        let r = &kd * phi - lambda * (&md * phi);
        assert!(r.amax() < 1e-9 * lambda.max(1.0));
        assert!(((phi.transpose() * &md * phi)[(0, 0)] - 1.0).abs() < 1e-10);
    }
}

#[test]
fn wave_with_initial_velocity_is_first_order() {
    let mesh = UniformMesh1D::unit(32).unwrap();
    let s = 0.6;
    let k = assemble_stiffness(&mesh, s).unwrap();
    let m = assemble_mass(&mesh);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let v = random(&mut rng, mesh.dofs());
    let b = random(&mut rng, mesh.dofs());
    let alpha = 1.7;
    let exact = semidiscrete_exact(&k, &m, &v, Some(&b), alpha, 0.5).unwrap();
    let errs: Vec<f64> = [100usize, 200, 400]
        .iter()
        .map(|&n| {
            let cfg = SolverConfig::new(alpha, s, UniformTimeGrid::new(0.5 / n as f64, n).unwrap(), mesh).unwrap();
            max_diff(solve_wave(&cfg, &k, &m, &v, &b, &Forcing::Zero).unwrap().last(), &exact)
        })
        .collect();
    for p in errs.windows(2) {
        let r = p[0] / p[1];
        assert!((1.7..2.3).contains(&r), "{errs:?}");
    }
}

#[test]
fn constant_forcing_against_modal_solution() {
    // mode k: c_k E_a(-l t^a) + g_k t^a E_{a,a+1}(-l t^a)
    let mesh = UniformMesh1D::unit(20).unwrap();
    let s = 0.5;
    let alpha = 0.6;
    let t = 1.0f64;
    let k = assemble_stiffness(&mesh, s).unwrap();
    let m = assemble_mass(&mesh);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let v = random(&mut rng, mesh.dofs());
    let g = random(&mut rng, mesh.dofs());
    let basis = ModalBasis::new(&k, &m).unwrap();
    let (cv, cg) = (basis.coordinates(&v), basis.coordinates(&g));
    let amp: Vec<f64> = basis
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let z = -l * t.powf(alpha);
            cv[i] * mittag_leffler(MLParams::new(alpha, 1.0), z).unwrap()
                + cg[i] * t.powf(alpha) * mittag_leffler(MLParams::new(alpha, alpha + 1.0), z).unwrap()
        })
        .collect();
    let exact: Vec<f64> = (&basis.modes * DVector::from_vec(amp)).iter().copied().collect();

    let errs: Vec<f64> = [100usize, 200, 400]
        .iter()
        .map(|&n| {
            let cfg = SolverConfig::new(alpha, s, UniformTimeGrid::new(t / n as f64, n).unwrap(), mesh).unwrap();
            let gg = g.clone();
            let forcing = Forcing::pointwise(move |_| Ok(gg.clone()));
            max_diff(solve_diffusion(&cfg, &k, &m, &v, &forcing).unwrap().last(), &exact)
        })
        .collect();
    for p in errs.windows(2) {
        let r = p[0] / p[1];
        assert!((1.7..2.3).contains(&r), "{errs:?}");
    }
}

#[test]
fn averaged_forcing_of_constant_equals_pointwise() {
    let mesh = UniformMesh1D::unit(10).unwrap();
    let k = assemble_stiffness(&mesh, 0.5).unwrap();
    let m = assemble_mass(&mesh);
    let cfg = SolverConfig::new(1.3, 0.5, UniformTimeGrid::new(0.05, 10).unwrap(), mesh).unwrap();
    let n = mesh.dofs();
    let v = vec![0.1; n];
    let b = vec![-0.2; n];
    let g: Vec<f64> = (0..n).map(|i| i as f64).collect();
    let g1 = g.clone();
    let g2 = g.clone();
    let p = solve_wave(&cfg, &k, &m, &v, &b, &Forcing::pointwise(move |_| Ok(g1.clone()))).unwrap();
    let a = solve_wave(&cfg, &k, &m, &v, &b, &Forcing::averaged(move |t| Ok(g2.iter().map(|x| x * t).collect())))
        .unwrap();
    for (x, y) in p.states.iter().zip(&a.states) {
        assert!(max_diff(x, y) < 1e-12);
    }
}

#[test]
fn rejects_wrong_regime_and_lengths() {
    let mesh = UniformMesh1D::unit(6).unwrap();
    let k = assemble_stiffness(&mesh, 0.5).unwrap();
    let m = assemble_mass(&mesh);
    let grid = UniformTimeGrid::new(0.1, 3).unwrap();
    let v = vec![0.0; 5];
    let wave = SolverConfig::new(1.5, 0.5, grid, mesh).unwrap();
    assert!(matches!(solve_diffusion(&wave, &k, &m, &v, &Forcing::Zero), Err(Error::Config(_))));
    let diff = SolverConfig::new(0.5, 0.5, grid, mesh).unwrap();
    assert!(matches!(solve_wave(&diff, &k, &m, &v, &v, &Forcing::Zero), Err(Error::Config(_))));
    assert!(matches!(
        solve_diffusion(&diff, &k, &m, &[0.0; 4], &Forcing::Zero),
        Err(Error::LengthMismatch { .. })
    ));
    let bad = Forcing::pointwise(|_| Ok(vec![1.0; 3]));
    assert!(matches!(solve_diffusion(&diff, &k, &m, &v, &bad), Err(Error::LengthMismatch { .. })));
    assert!(SolverConfig::new(2.5, 0.5, grid, mesh).is_err());
    assert!(SolverConfig::new(0.5, 1.0, grid, mesh).is_err());
}

#[test]
fn max_over_time_error_is_first_order() {
    // The error behaves like tau t^(alpha-1): for alpha > 1 the maximum over
    // the whole run is O(tau), for alpha < 1 only away from t = 0 (near 0 it
    // is O(tau^alpha)), so the window starts at t = 0.1 there.
    let mesh = UniformMesh1D::unit(64).unwrap();
    let s = 0.5;
    let k = assemble_stiffness(&mesh, s).unwrap();
    let m = assemble_mass(&mesh);
    let basis = ModalBasis::new(&k, &m).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let v = random(&mut rng, mesh.dofs());
    let zero = vec![0.0; v.len()];
    let t_end = 1.0;
    for alpha in [0.4, 0.8, 1.2, 1.6] {
        let b = (alpha > 1.0).then_some(zero.as_slice());
        let t_min = if alpha < 1.0 { 0.1 } else { 0.0 };
        // compared on the times t = i / 50 shared by every grid
        let coarse = 50usize;
        let exact: Vec<Option<Vec<f64>>> = (1..=coarse)
            .map(|i| {
                let t = i as f64 * t_end / coarse as f64;
                (t >= t_min - 1e-12).then(|| basis.evolve(&v, b, alpha, t).unwrap())
            })
            .collect();
        let errs: Vec<f64> = [50usize, 100, 200, 400]
            .iter()
            .map(|&n| {
                let tau = t_end / n as f64;
                let cfg = SolverConfig::new(alpha, s, UniformTimeGrid::new(tau, n).unwrap(), mesh).unwrap();
                let traj = if alpha > 1.0 {
                    solve_wave(&cfg, &k, &m, &v, &zero, &Forcing::Zero)
                } else {
                    solve_diffusion(&cfg, &k, &m, &v, &Forcing::Zero)
                }
                .unwrap();
                let stride = n / coarse;
                exact
                    .iter()
                    .enumerate()
                    .filter_map(|(i, e)| e.as_ref().map(|e| max_diff(&traj.states[(i + 1) * stride], e)))
                    .fold(0.0, f64::max)
            })
            .collect();
        for p in errs.windows(2) {
            let r = p[0] / p[1];
            assert!((1.7..=2.3).contains(&r), "alpha={alpha}: {errs:?}");
        }
    }
}
