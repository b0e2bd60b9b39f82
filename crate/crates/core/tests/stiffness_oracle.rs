mod common;

use fracsolve_core::femcore::{assemble_stiffness, normalization_constant, UniformMesh1D};

#[test]
fn two_cell_entry_matches_double_quadrature() {
    let mesh = UniformMesh1D::unit(2).unwrap();
    for s in [0.25, 0.5, 0.75] {
        let k = assemble_stiffness(&mesh, s).unwrap();
        let c = normalization_constant(1, s).unwrap();
        let oracle = common::stiffness_entry_oracle(-1.0, 1.0, 2, s, 0, 0, c);
        let v = k.get(0, 0);
        println!("s {s}: K00 {v} oracle {oracle}");
        assert!((v - oracle).abs() <= 1e-8 * oracle.abs());
    }
}

#[test]
fn scaling_with_domain_length() {
    for s in [0.2, 0.5, 0.85] {
        let k1 = assemble_stiffness(&UniformMesh1D::new(-1.0, 1.0, 12).unwrap(), s).unwrap();
        for rho in [0.25, 3.0] {
            let kr = assemble_stiffness(&UniformMesh1D::new(-rho, rho, 12).unwrap(), s).unwrap();
            let factor = rho.powf(1.0 - 2.0 * s);
            for j in 0..k1.dim() {
                let want = factor * k1.get(0, j);
                assert!((kr.get(0, j) - want).abs() <= 1e-12 * want.abs(), "s={s} rho={rho} j={j}");
            }
        }
    }
}

#[test]
fn spd_with_negative_far_field() {
    for s in [0.1, 0.5, 0.9] {
        let k = assemble_stiffness(&UniformMesh1D::unit(40).unwrap(), s).unwrap();
        assert!(k.matrix().is_symmetric());
        assert!(k.matrix().cholesky().is_ok());
        let row = k.first_row();
        assert!(row[0] > 0.0);
        // hats with disjoint supports couple only through -|x-y|^(-1-2s)
        assert!(row[2..].iter().all(|&v| v < 0.0));
        // row sums are positive (coupling to the exterior)
        assert!((0..k.dim()).all(|i| (0..k.dim()).map(|j| k.get(i, j)).sum::<f64>() > 0.0));
    }
}

#[test]
fn steady_state_converges_to_weighted_polynomial() {
    // (-Delta)^s (w_s g_k) = mu g_k, so K u = (mu g_k, phi) should approach w_s g_k
    use fracsolve_core::femcore::{l2_error, load_vector};
    use fracsolve_core::manufactured::{CaseId, ManufacturedCase};
    for (s, min_rate) in [(0.75, 0.9), (0.25, 0.6)] {
        let case = ManufacturedCase::new(CaseId::A, 0.5, s, 3).unwrap();
        let mu = case.mu();
        let errors: Vec<f64> = [32usize, 64, 128]
            .iter()
            .map(|&m| {
                let mesh = UniformMesh1D::new(-1.0, 1.0, m).unwrap();
                let k = assemble_stiffness(&mesh, s).unwrap();
                let rhs = load_vector(|x| mu * case.polynomial(x), &mesh, 8);
                let u = k.matrix().cholesky().unwrap().solve(&rhs);
                let residual: f64 = k.matvec(&u).iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                assert!(residual < 1e-10);
                l2_error(&u, |x| case.profile(x), &mesh)
            })
            .collect();
        for p in errors.windows(2) {
            let rate = (p[0] / p[1]).log2();
            assert!(rate > min_rate, "s={s}: errors {errors:?}");
        }
    }
}
