//! Weight-lattice arithmetic: dominance tests, full weight systems of
//! irreducible K-modules, and the two-sided pairing inequalities.
//!
//! Run with: cargo run --example weight_systems

use nearhol::rootdata::{build_root_data, Family, HermitianType};
use nearhol::weights::{
    is_dominant_k, is_dominant_u, verify_weight_inequalities, weight_system, weyl_dim_compact,
};
use nearhol::Result;

fn main() -> Result<()> {
    let space = HermitianType::new(Family::I { p: 2, q: 2 })?;
    let data = build_root_data(&space)?;

    // The cotangent fiber n⁻ has highest weight μ = −α₁: K-dominant but not
    // U-dominant, so the bundle has no holomorphic sections.
    let mu = data.simple_roots[0].neg();
    println!("μ = −α₁ = {mu}");
    println!("  U-dominant: {}", is_dominant_u(&mu, &data));
    println!("  K-dominant: {}", is_dominant_k(&mu, &data));
    println!("  dim E_μ = {}", weyl_dim_compact(&mu, &data)?);

    let system = weight_system(&mu, &data)?;
    println!("  weights of E_μ (multiplicity):");
    for (w, m) in &system.entries {
        println!("    {w}  x{m}");
    }

    // Every weight of E_μ satisfies μ(H_α₁) ≤ λ(H_γᵢ) ≤ μ(H_γ₁).
    println!(
        "  pairing inequalities hold: {}",
        verify_weight_inequalities(&mu, &data)?
    );

    // A larger module: the K-type generated by the highest root.
    let gamma1 = data.strongly_orthogonal[0].clone();
    let adjoint_like = weight_system(&gamma1, &data)?;
    println!(
        "\nE_γ₁ has {} weights, dimension {}",
        adjoint_like.entries.len(),
        adjoint_like.total()
    );
    Ok(())
}
