//! Multiplicity-free L² spectra of line bundles, with the reversed-order
//! parameters m̃ᵢ = 2m_{r−i+1} + k.
//!
//! Run with: cargo run --example line_bundle_spectrum

use nearhol::decomp::{borel_weil, line_bundle_spectrum, schlichtkrull_params, BundleSpec};
use nearhol::rootdata::{build_root_data, Family, HermitianType};
use nearhol::Result;

fn main() -> Result<()> {
    let space = HermitianType::new(Family::I { p: 2, q: 2 })?;
    let data = build_root_data(&space)?;

    for k in [-2i64, 0, 1] {
        let bundle = BundleSpec::line(k, &data)?;
        println!(
            "line bundle k = {k}: holomorphic sections exist: {}",
            borel_weil(&bundle)
        );
        let table = line_bundle_spectrum(k, 3, &data)?;
        println!("  {} U-types up to Σm ≤ 3 (all multiplicity one):", table.entries.len());
        for entry in &table.entries {
            let (m, _) = entry.origin.as_ref().unwrap();
            let tilde = schlichtkrull_params(&entry.lambda, k, &data)?;
            println!("    m = {m}: λ = {}, reversed parameters {tilde:?}", entry.lambda);
        }
        println!();
    }

    // On ℂP¹ the k = 0 spectrum is the even ladder of SU(2)-types.
    let p1 = build_root_data(&HermitianType::new(Family::I { p: 1, q: 1 })?)?;
    let ladder = line_bundle_spectrum(0, 4, &p1)?;
    let dims: Vec<String> = ladder
        .entries
        .iter()
        .map(|e| {
            let n = p1.pairing(&e.lambda, &p1.simple_roots[0]);
            format!("{}", nearhol::exact::fmt_rat(&n))
        })
        .collect();
    println!("ℂP¹, k = 0: H_α₁-pairings of the spectrum: {}", dims.join(", "));
    Ok(())
}
