//! Consistency scanner for the degree criterion on highest-weight vectors:
//! for each constructible weight vector p_m ⊗ v it compares the frame-degree
//! bound deg_{tᵢ} p ≤ λ(H_{γᵢ}) against the decided minor criterion and
//! against numerical convergence probes. The scanner reports agreement per
//! vector; it never asserts the criterion itself.

use crate::decomp::{minor_l2_condition, BundleKind, BundleSpec};
use crate::error::{Error, Result};
use crate::integrals::{norm_probe, Classification, QuadratureSpec};
use crate::jordan::{
    diagonal_degrees, minor_poly, BundleModel, LElement, MatrixModel, PolyMap, Side, DEGREE_BUDGET,
};
use crate::linalg::c;
use crate::rootdata::RootSystemData;
use crate::weights::Partition;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Agree,
    Disagree,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Agree => write!(f, "agree"),
            Verdict::Disagree => write!(f, "disagree"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// One scanned weight vector p_m ⊗ v.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub m: Partition,
    /// Frame-torus profile ν(H_{γᵢ}) of the fiber vector v.
    pub fiber_profile: Vec<i64>,
    /// Weight profile λ(H_{γᵢ}) = 2mᵢ + νᵢ of p_m ⊗ v.
    pub weight_profile: Vec<i64>,
    /// Measured frame degrees of the vector.
    pub degrees: Vec<u32>,
    /// The degree criterion degᵢ ≤ λ(H_{γᵢ}).
    pub degree_ok: bool,
    /// L² membership where a proven criterion decides it.
    pub decided: Option<bool>,
    /// Numerical convergence probe, when run.
    pub probe: Option<Classification>,
    /// Whether v lies on the highest frame profile of the fiber.
    pub top_profile: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub bundle: BundleSpec,
    pub cutoff: u32,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.verdict != Verdict::Disagree)
    }
}

/// Distinct frame-torus profiles of the n⁻ basis, with one representative
/// basis index each (deterministic order).
fn fiber_profiles(model: &MatrixModel) -> Vec<(Vec<i64>, usize)> {
    let r = model.rank();
    let cartans: Vec<LElement> = (0..r).map(|i| LElement::frame_cartan(model, i)).collect();
    let basis = model.basis(Side::Minus);
    let mut seen: Vec<(Vec<i64>, usize)> = Vec::new();
    for (idx, b) in basis.iter().enumerate() {
        let mut profile = Vec::with_capacity(r);
        let mut eigenvector = true;
        for t in &cartans {
            let image = t.apply_minus(model, b);
            // Basis elements are joint eigenvectors of the frame torus.
            let lambda = image.frobenius_inner(b);
            if image.sub(&b.scale(lambda)).max_abs() > 1e-10 {
                eigenvector = false;
                break;
            }
            profile.push(lambda.re.round() as i64);
        }
        if eigenvector && !seen.iter().any(|(p, _)| *p == profile) {
            seen.push((profile, idx));
        }
    }
    seen.sort_by(|a, b| b.0.cmp(&a.0));
    seen
}

/// Scans the p_m ⊗ v family up to Σmᵢ ≤ cutoff.
pub fn conjecture_scan(
    bundle: &BundleSpec,
    cutoff: u32,
    data: &RootSystemData,
    model: &MatrixModel,
    probe_spec: Option<&QuadratureSpec>,
) -> Result<ScanReport> {
    let r = data.rank();
    let (bundle_model, fibers): (BundleModel, Vec<(Vec<i64>, Option<usize>)>) = match bundle.kind {
        BundleKind::Line { k } => (BundleModel::Line { k }, vec![(vec![k; r], None)]),
        BundleKind::Cotangent => (
            BundleModel::Cotangent,
            fiber_profiles(model)
                .into_iter()
                .map(|(p, idx)| (p, Some(idx)))
                .collect(),
        ),
        BundleKind::General => {
            return Err(Error::Unsupported(
                "the scanner covers line bundles and the cotangent bundle".into(),
            ))
        }
    };
    let top = fibers
        .iter()
        .map(|(p, _)| p.clone())
        .max()
        .expect("fiber profile set is never empty");

    let mut rows = Vec::new();
    for m in Partition::enumerate(r, cutoff) {
        for (profile, fiber_idx) in &fibers {
            let p = match fiber_idx {
                None => minor_poly(model, &m),
                Some(idx) => {
                    let v = model.basis(Side::Minus)[*idx].clone();
                    minor_poly(model, &m).scalar_mul(&PolyMap::constant_fiber(v))
                }
            };
            let degrees = diagonal_degrees(model, &p, DEGREE_BUDGET)?;
            let weight_profile: Vec<i64> = m
                .parts()
                .iter()
                .zip(profile)
                .map(|(mi, nu)| 2 * *mi as i64 + nu)
                .collect();
            let degree_ok = degrees
                .iter()
                .zip(&weight_profile)
                .all(|(d, l)| (*d as i64) <= *l);
            let decided = if minor_l2_condition(&m, bundle) {
                Some(true)
            } else if !degree_ok {
                // The degree bound is a proven necessary condition.
                Some(false)
            } else {
                None
            };
            let probe = match probe_spec {
                Some(spec) => Some(norm_probe(model, bundle_model, &p, spec)?.classification),
                None => None,
            };
            let top_profile = *profile == top;
            let verdict = judge(degree_ok, decided, probe, top_profile);
            rows.push(ScanRow {
                m: m.clone(),
                fiber_profile: profile.clone(),
                weight_profile,
                degrees,
                degree_ok,
                decided,
                probe,
                top_profile,
                verdict,
            });
        }
    }
    Ok(ScanReport { bundle: bundle.clone(), cutoff, rows })
}

fn judge(
    degree_ok: bool,
    decided: Option<bool>,
    probe: Option<Classification>,
    top_profile: bool,
) -> Verdict {
    let probe_bool = match probe {
        Some(Classification::Convergent) => Some(true),
        Some(Classification::Divergent) => Some(false),
        _ => None,
    };
    if let Some(d) = decided {
        if d != degree_ok {
            return Verdict::Disagree;
        }
        if let Some(pb) = probe_bool {
            if pb != d {
                return Verdict::Disagree;
            }
        }
        return Verdict::Agree;
    }
    match probe_bool {
        Some(true) => {
            // A convergent probe with a violated degree bound would break
            // the proven necessary direction.
            if degree_ok {
                Verdict::Agree
            } else {
                Verdict::Disagree
            }
        }
        Some(false) => {
            if !degree_ok {
                Verdict::Agree
            } else if top_profile {
                // Divergence against a satisfied bound on the highest
                // profile contradicts the conjectured sufficiency.
                Verdict::Disagree
            } else {
                Verdict::Unknown
            }
        }
        None => Verdict::Unknown,
    }
}

/// Convenience: the fiber vector used for a cotangent row (unit basis
/// element), exposed for reporting.
pub fn fiber_label(model: &MatrixModel, idx: usize) -> String {
    let b = &model.basis(Side::Minus)[idx];
    for i in 0..b.rows {
        for j in 0..b.cols {
            if (b[(i, j)] - c(0.0, 0.0)).norm() > 0.5 {
                return format!("e^-({i},{j})");
            }
        }
    }
    "e^-".into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_data, Family, HermitianType};

    fn setup(f: Family) -> (RootSystemData, MatrixModel) {
        let space = HermitianType::new(f).unwrap();
        (build_root_data(&space).unwrap(), MatrixModel::new(&space).unwrap())
    }

    #[test]
    fn trivial_scan_single_agree() {
        let (data, model) = setup(Family::I { p: 1, q: 1 });
        let bundle = BundleSpec::line(0, &data).unwrap();
        let report = conjecture_scan(&bundle, 0, &data, &model, None).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].verdict, Verdict::Agree);
        assert!(report.rows[0].degree_ok);
    }

    #[test]
    fn rank_one_cotangent_scan_agrees() {
        let (data, model) = setup(Family::I { p: 1, q: 1 });
        let bundle = BundleSpec::cotangent(&data).unwrap();
        let spec = QuadratureSpec {
            scheme: crate::integrals::Scheme::MonteCarlo { samples: 30_000, seed: 3 },
            ..QuadratureSpec::monte_carlo_default(3)
        };
        let report = conjecture_scan(&bundle, 4, &data, &model, Some(&spec)).unwrap();
        assert!(report.all_agree());
        // m = 1 row: degree bound fails, probe diverges.
        let row1 = report.rows.iter().find(|r| r.m.parts() == [1]).unwrap();
        assert!(!row1.degree_ok);
        assert_eq!(row1.decided, Some(false));
        assert_eq!(row1.probe, Some(Classification::Divergent));
        // m = 2 row: minor criterion decides positively.
        let row2 = report.rows.iter().find(|r| r.m.parts() == [2]).unwrap();
        assert!(row2.degree_ok);
        assert_eq!(row2.decided, Some(true));
    }

    #[test]
    fn line_bundle_scan_without_probe() {
        let (data, model) = setup(Family::I { p: 2, q: 2 });
        for k in -3i64..=3 {
            let bundle = BundleSpec::line(k, &data).unwrap();
            let report = conjecture_scan(&bundle, 4, &data, &model, None).unwrap();
            assert!(report.all_agree(), "k = {k}");
            for row in &report.rows {
                // Minor-positive rows always satisfy the degree criterion.
                if row.decided == Some(true) {
                    assert!(row.degree_ok, "k = {k}, m = {}", row.m);
                }
            }
        }
    }

    #[test]
    fn cotangent_profiles_cover_highest_weight() {
        let (data, model) = setup(Family::I { p: 2, q: 3 });
        let profiles = fiber_profiles(&model);
        // The highest profile matches μ(H_{γᵢ}) for μ = −α₁.
        let mu = data.simple_roots[0].neg();
        let expect: Vec<i64> = data
            .strongly_orthogonal
            .iter()
            .map(|g| data.pairing_int(&mu, g).unwrap())
            .collect();
        assert_eq!(profiles.first().unwrap().0, expect);
    }

    #[test]
    fn general_bundle_rejected() {
        let (data, model) = setup(Family::I { p: 2, q: 2 });
        let bundle = BundleSpec::general(data.strongly_orthogonal[0].clone(), &data).unwrap();
        assert!(matches!(
            conjecture_scan(&bundle, 2, &data, &model, None),
            Err(Error::Unsupported(_))
        ));
    }
}
