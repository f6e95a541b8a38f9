//! L² integration: the total-mass baseline on ℂP¹, closed-form Selberg
//! bound integrals against the minor criterion, and Monte-Carlo convergence
//! probes for sections of the cotangent bundle.
//!
//! Run with: cargo run --example l2_integrals

use nearhol::decomp::{minor_l2_condition, BundleSpec};
use nearhol::integrals::{
    line_total_mass, norm_probe, selberg_bound, QuadratureSpec,
};
use nearhol::jordan::{minor_poly, BundleModel, MatrixModel, PolyMap, Side};
use nearhol::linalg::{c, CMat};
use nearhol::weights::Partition;
use nearhol::rootdata::{build_root_data, Family, HermitianType};
use nearhol::Result;

fn main() -> Result<()> {
    // Total mass of the trivial line bundle on ℂP¹ is π.
    let space = HermitianType::new(Family::I { p: 1, q: 1 })?;
    let model = MatrixModel::new(&space)?;
    let mass = line_total_mass(&model, 0, &QuadratureSpec::quadrature_default())?;
    println!(
        "ℂP¹ trivial-bundle mass: {:.6} (π = {:.6}), {}",
        mass.value,
        std::f64::consts::PI,
        mass.classification
    );

    // Selberg bound integrals vs the minor criterion on I(2,3).
    let data = build_root_data(&HermitianType::new(Family::I { p: 2, q: 3 })?)?;
    let bundle = BundleSpec::line(-2, &data)?;
    println!("\nSelberg bounds for the k = −2 line bundle on I(2,3):");
    for parts in [vec![0, 0], vec![2, 1], vec![2, 2], vec![4, 3]] {
        let m = Partition::new(parts)?;
        let verdict = selberg_bound(&m, &bundle, &data.space);
        println!(
            "  m = {m}: {} (value {:.6}), minor criterion: {}",
            verdict.classification,
            verdict.value,
            minor_l2_condition(&m, &bundle)
        );
    }

    // Convergence probes for p_m ⊗ v sections of the cotangent bundle.
    println!("\ncotangent probes on ℂP¹ (divergent below m = 2):");
    let (rows, cols) = model.shape(Side::Minus);
    let unit = CMat::from_fn(rows, cols, |i, j| {
        if (i, j) == (0, 0) { c(1.0, 0.0) } else { c(0.0, 0.0) }
    });
    let spec = QuadratureSpec::monte_carlo_default(13);
    for mval in 0u32..=3 {
        let m = Partition::new(vec![mval])?;
        let p = minor_poly(&model, &m).scalar_mul(&PolyMap::constant_fiber(unit.clone()));
        let verdict = norm_probe(&model, BundleModel::Cotangent, &p, &spec)?;
        match verdict.stderr {
            Some(s) if verdict.value.is_finite() => println!(
                "  m = {mval}: {} (I ≈ {:.5} ± {:.1e})",
                verdict.classification, verdict.value, s
            ),
            _ => println!("  m = {mval}: {}", verdict.classification),
        }
    }
    Ok(())
}
