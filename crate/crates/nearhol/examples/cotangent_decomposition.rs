//! K-type decomposition of polynomials valued in the cotangent fiber:
//! per-signature tensor K-types, descent-count multiplicities, and the
//! candidate U-type support with decided and undecided L² statuses.
//!
//! Run with: cargo run --example cotangent_decomposition

use nearhol::decomp::{
    cotangent_multiplicity, cotangent_tensor_ktypes, spectrum_support, BundleSpec, L2Status,
};
use nearhol::weights::{gamma_weight, signature_of, Partition};
use nearhol::rootdata::{build_root_data, Family, HermitianType};
use nearhol::Result;

fn main() -> Result<()> {
    let space = HermitianType::new(Family::I { p: 2, q: 2 })?;
    let data = build_root_data(&space)?;
    let bundle = BundleSpec::cotangent(&data)?;

    println!("tensor K-types Λ_m(n⁻) for small signatures:");
    for m in Partition::enumerate(2, 2) {
        let set = cotangent_tensor_ktypes(&m, &data);
        println!("  m = {m}: {} K-types", set.len());
        for lam in &set {
            let tag = match signature_of(lam, &data) {
                Some(sig) => format!("= γ_{sig}"),
                None => String::new(),
            };
            println!("    {lam} {tag}");
        }
    }

    // Multiplicities M^λ: descent counts for λ = γ_m.
    println!("\ndescent-count multiplicities:");
    for parts in [vec![2, 1], vec![1, 1], vec![3, 0]] {
        let m = Partition::new(parts)?;
        let lam = gamma_weight(&m, &data);
        println!("  M^(γ_{m}) = {}", cotangent_multiplicity(&lam, 6, &data));
    }

    let table = spectrum_support(&bundle, 4, &data)?;
    let decided = table.entries.iter().filter(|e| e.l2_status == L2Status::InL2).count();
    let undecided = table.entries.iter().filter(|e| e.l2_status == L2Status::Undecided).count();
    println!(
        "\ncandidate support up to Σm ≤ 4: {} entries ({decided} in L², {undecided} undecided)",
        table.entries.len()
    );
    for e in table.entries.iter().take(8) {
        let (m, _) = e.origin.as_ref().unwrap();
        println!("  λ = {} mult ≤ {} [{}] from m = {m}", e.lambda, e.multiplicity, e.l2_status);
    }
    Ok(())
}
