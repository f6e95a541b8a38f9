//! Consistency ledger for the degree criterion on the p_m ⊗ v family:
//! the frame-degree bound against the decided minor criterion and the
//! numerical convergence probes.
//!
//! Run with: cargo run --example conjecture_scan

use nearhol::decomp::BundleSpec;
use nearhol::integrals::{QuadratureSpec, Scheme};
use nearhol::jordan::MatrixModel;
use nearhol::rootdata::{build_root_data, Family, HermitianType};
use nearhol::scan::conjecture_scan;
use nearhol::Result;

fn main() -> Result<()> {
    let space = HermitianType::new(Family::I { p: 1, q: 1 })?;
    let data = build_root_data(&space)?;
    let model = MatrixModel::new(&space)?;
    let bundle = BundleSpec::cotangent(&data)?;
    let spec = QuadratureSpec {
        scheme: Scheme::MonteCarlo { samples: 30_000, seed: 5 },
        ..QuadratureSpec::monte_carlo_default(5)
    };
    let report = conjecture_scan(&bundle, 5, &data, &model, Some(&spec))?;

    println!("cotangent bundle on ℂP¹, signatures up to Σm ≤ 5:");
    println!("{:<8} {:>10} {:>6} {:>10} {:>9} {:>12} {:>9}", "m", "λ(H_γ)", "deg", "deg ≤ λ?", "decided", "probe", "verdict");
    for row in &report.rows {
        println!(
            "{:<8} {:>10} {:>6} {:>10} {:>9} {:>12} {:>9}",
            row.m.to_string(),
            format!("{:?}", row.weight_profile),
            format!("{:?}", row.degrees),
            row.degree_ok,
            row.decided.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
            row.probe.map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
            row.verdict.to_string()
        );
    }
    println!(
        "\nall rows agree: {} (the scan corroborates, it never asserts)",
        report.all_agree()
    );

    // Line bundles scan purely combinatorially (no probes).
    let d22 = build_root_data(&HermitianType::new(Family::I { p: 2, q: 2 })?)?;
    let m22 = MatrixModel::new(&HermitianType::new(Family::I { p: 2, q: 2 })?)?;
    for k in [-2i64, 1] {
        let bundle = BundleSpec::line(k, &d22)?;
        let report = conjecture_scan(&bundle, 4, &d22, &m22, None)?;
        println!("I(2,2), line k = {k}: {} vectors, all agree: {}", report.rows.len(), report.all_agree());
    }
    Ok(())
}
