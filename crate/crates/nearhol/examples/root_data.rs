//! Build the root data of several spaces and print their structure
//! constants, simple systems and strongly orthogonal roots.
//!
//! Run with: cargo run --example root_data

use nearhol::rootdata::{build_root_data, structure_constants, Family, HermitianType};
use nearhol::Result;

fn main() -> Result<()> {
    let families = [
        Family::I { p: 1, q: 1 },
        Family::I { p: 2, q: 3 },
        Family::II { n: 5 },
        Family::III { n: 3 },
        Family::IV { n: 6 },
        Family::EIII,
        Family::EVII,
    ];
    for family in families {
        let space = HermitianType::new(family)?;
        let data = build_root_data(&space)?;
        let (r, a, b, g, n) = structure_constants(&data)?;
        println!("{family}: r={r} a={a} b={b} g={g} n={n}, tube type: {}", space.tube_type);
        println!("  noncompact simple root α₁ = {}", data.simple_roots[0]);
        println!("  fundamental weight λ₁ = {}", data.fundamental_alpha1);
        println!(
            "  |Φ⁺| = {}, |Φ_c⁺| = {}, |Φ_nc⁺| = {}",
            data.positive_roots.len(),
            data.compact_positive.len(),
            data.noncompact_positive.len()
        );
        for (i, gamma) in data.strongly_orthogonal.iter().enumerate() {
            println!("  γ_{} = {gamma}", i + 1);
        }
        println!();
    }
    Ok(())
}
