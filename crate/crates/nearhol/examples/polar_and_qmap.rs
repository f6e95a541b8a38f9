//! Polar decompositions z = k·z_t, the q-map q(z) = z̄^{−z}, its defining
//! differential identities, and K-equivariance.
//!
//! Run with: cargo run --example polar_and_qmap

use nearhol::jordan::{verify_qmap_identities, JordanPoint, LElement, MatrixModel, Side};
use nearhol::rootdata::{Family, HermitianType};
use nearhol::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for family in [Family::I { p: 2, q: 3 }, Family::II { n: 5 }, Family::III { n: 2 }] {
        let space = HermitianType::new(family)?;
        let model = MatrixModel::new(&space)?;
        let z = model.random_point(&mut rng, 1.0);
        let polar = model.polar_decompose(&z)?;
        println!("{family}: polar parameters t = {:?}", polar.t);
        let rebuilt = model.apply_k_plus(&polar.k, &model.frame_point(&polar.t).value);
        println!(
            "  reconstruction ‖k z_t − z‖/‖z‖ = {:.2e}",
            rebuilt.sub(&z.value).fro_norm() / z.value.fro_norm()
        );

        // Diagonal q-map: q(z_t) = Σ tᵢ/(1+tᵢ²) ēᵢ.
        let zt = model.frame_point(&polar.t);
        let q = model.qmap(&zt)?;
        let predicted: Vec<f64> = polar.t.iter().map(|t| t / (1.0 + t * t)).collect();
        println!("  q(z_t) frame coefficients ≈ {predicted:?}");
        drop(q);

        // The three q-map identities by central finite differences.
        let v = model.random_point(&mut rng, 1.0).value;
        let w = model.conjugate(&model.random_point(&mut rng, 1.0)).value;
        let a = model.random_point(&mut rng, 0.7);
        let b = model.conjugate(&model.random_point(&mut rng, 0.7));
        let t_elem = LElement::from_dop(&model, &a, &b)?;
        let residual = verify_qmap_identities(&model, &z, &v, &t_elem, &w, 1e-5)?;
        println!("  q-map identity residual (max of three): {residual:.2e}");

        // K-equivariance: q(k·z) = k·q(z).
        let k = model.haar_k(&mut rng);
        let moved = JordanPoint { value: model.apply_k_plus(&k, &z.value), side: Side::Plus };
        let equiv = model
            .qmap(&moved)?
            .value
            .sub(&model.apply_k_minus(&k, &model.qmap(&z)?.value))
            .fro_norm();
        println!("  equivariance residual: {equiv:.2e}\n");
    }
    Ok(())
}
