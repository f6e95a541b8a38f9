//! Numerical verification of the Jordan-pair identities in the classical
//! matrix models: the fundamental identity, the determinant-genus identity
//! Det B(x,y) = Δ(x,y)^g, and the Bergman eigenvalue layout on the frame.
//!
//! Run with: cargo run --example jordan_identities

use nearhol::jordan::{JordanPoint, MatrixModel, Side};
use nearhol::linalg;
use nearhol::rootdata::{Family, HermitianType};
use nearhol::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for family in [
        Family::I { p: 2, q: 3 },
        Family::II { n: 4 },
        Family::III { n: 3 },
    ] {
        let space = HermitianType::new(family)?;
        let model = MatrixModel::new(&space)?;
        let mut worst_fund: f64 = 0.0;
        let mut worst_det: f64 = 0.0;
        for _ in 0..100 {
            let x = model.random_point(&mut rng, 0.8);
            let y = model.conjugate(&model.random_point(&mut rng, 0.8));
            let w = model.conjugate(&model.random_point(&mut rng, 0.8));

            // Q_{Q_x y} = Q_x Q_y Q_x
            let qxy = model.quadratic(&x, &y)?;
            let lhs = model.quadratic(&qxy, &w)?;
            let rhs = model.quadratic(&x, &model.quadratic(&y, &model.quadratic(&x, &w)?)?)?;
            worst_fund = worst_fund
                .max(lhs.value.sub(&rhs.value).fro_norm() / lhs.value.fro_norm().max(1e-9));

            // Det B(x,y) = Δ(x,y)^g
            let b = model.bergman_matrix(&x, &y)?;
            let det_b = linalg::lu_det(&b);
            let delta_g = model.delta(&x, &y)?.powu(model.genus());
            worst_det = worst_det.max((det_b - delta_g).norm() / delta_g.norm().max(1e-9));
        }
        println!(
            "{family}: fundamental identity ≤ {worst_fund:.2e}, Det B = Δ^g ≤ {worst_det:.2e}"
        );

        // Frame diagonal: eigenvalues of B(z_t, −z̄_t) are (1+tᵢ²)(1+tⱼ²).
        let t: Vec<f64> = (0..model.rank()).map(|i| 1.0 + i as f64).collect();
        let z = model.frame_point(&t);
        let y = JordanPoint { value: model.conjugate(&z).value.neg(), side: Side::Minus };
        let (vals, _) = linalg::hermitian_eigen(&model.bergman_matrix(&z, &y)?);
        println!("  B(z_t, −z̄_t) spectrum at t = {t:?}:");
        println!("  {:?}", vals.iter().map(|v| (v * 1e6).round() / 1e6).collect::<Vec<_>>());
    }
    Ok(())
}
