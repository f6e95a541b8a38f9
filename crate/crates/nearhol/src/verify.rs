//! Named verification suites with measured residuals, backing the `verify`
//! command and the acceptance tests. Each check reports a pass flag and a
//! human-readable detail string; suites are deterministic for a fixed seed.

use crate::charring;
use crate::decomp::{
    borel_weil, cotangent_multiplicity, cotangent_tensor_ktypes, line_bundle_spectrum,
    minor_l2_condition, schlichtkrull_params, spectrum_support, BundleSpec, L2Status,
};
use crate::error::{Error, Result};
use crate::exact::rint;
use crate::integrals::{
    l2_density, line_total_mass, norm_probe, polar_integrate, selberg_bound, Classification,
    QuadratureSpec, Scheme,
};
use crate::jordan::{
    bergman_bundle_action, diagonal_degrees, minor_poly, potential_pairing_ratio,
    verify_qmap_identities, BundleModel, JordanPoint, LElement, MatrixModel, PolyMap, Side, Value,
    DEGREE_BUDGET,
};
use crate::linalg::{self, c};
use crate::rootdata::{build_root_data, structure_constants, Family, HermitianType};
use crate::tolerances;
use crate::weights::{gamma_weight, is_dominant_u, verify_weight_inequalities, Partition, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> CheckResult {
    CheckResult { name: name.to_string(), passed, detail }
}

pub fn rootdata_suite(space: &HermitianType) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let data = build_root_data(space)?;
    let (r, a, b, g, n) = structure_constants(&data)?;
    out.push(check(
        "rootdata.structure_constants",
        (r, a, b, g, n) == (space.rank, space.a, space.b, space.genus, space.dim_nplus),
        format!("(r,a,b,g,n) = ({r},{a},{b},{g},{n})"),
    ));
    out.push(check(
        "rootdata.genus_relation",
        g == 2 + a * (r as u32 - 1) + b,
        format!("g = {g}, 2+a(r-1)+b = {}", 2 + a * (r as u32 - 1) + b),
    ));
    let gamma1 = &data.strongly_orthogonal[0];
    out.push(check(
        "rootdata.gamma1_is_w0_alpha1",
        data.apply_w0_compact(&data.simple_roots[0]) == *gamma1,
        format!("γ₁ = {gamma1}"),
    ));
    let orbit = data.orbit_compact(gamma1);
    out.push(check(
        "rootdata.orbit_covers_frame",
        data.strongly_orthogonal.iter().all(|gm| orbit.contains(gm)),
        format!("|W_c·γ₁| = {}", orbit.len()),
    ));
    let integral = data.positive_roots.iter().all(|alpha| {
        data.simple_roots.iter().all(|beta| data.pairing(alpha, beta).is_integer())
    });
    out.push(check("rootdata.pairing_integrality", integral, String::new()));
    Ok(out)
}

pub fn weights_suite(space: &HermitianType) -> Result<Vec<CheckResult>> {
    let data = build_root_data(space)?;
    let mut out = Vec::new();

    // Probe modules: the fiber of the cotangent bundle and a line character.
    let mut mus: Vec<Weight> = vec![
        data.simple_roots[0].neg(),
        data.fundamental_alpha1.scale(rint(2)),
    ];
    if space.rank >= 2 {
        mus.push(gamma_weight(
            &Partition::new(vec![1; space.rank]).unwrap(),
            &data,
        ));
    }
    let mut orbit_ok = true;
    let mut bounds_ok = true;
    for mu in &mus {
        let sys = crate::weights::weight_system(mu, &data)?;
        for (w, m) in &sys.entries {
            for alpha in data.compact_simple() {
                if sys.multiplicity(&data.reflect(w, alpha)) != *m {
                    orbit_ok = false;
                }
            }
        }
        if !verify_weight_inequalities(mu, &data)? {
            bounds_ok = false;
        }
    }
    out.push(check("weights.orbit_closure", orbit_ok, format!("{} modules", mus.len())));
    out.push(check("weights.pairing_inequalities", bounds_ok, String::new()));

    // Kostant cross-check on the smallest probe module, small ranks only.
    if data.compact_positive.len() <= 12 {
        let mu = data.simple_roots[0].neg();
        let sys = crate::weights::weight_system(&mu, &data)?;
        let agree = sys
            .entries
            .iter()
            .all(|(nu, m)| charring::kostant_multiplicity(&mu, nu, &data) == *m);
        out.push(check("weights.kostant_agreement", agree, format!("{} weights", sys.total())));
    }
    Ok(out)
}

pub fn decomp_suite(space: &HermitianType, cutoff: u32) -> Result<Vec<CheckResult>> {
    let data = build_root_data(space)?;
    let mut out = Vec::new();

    // Line-bundle spectra: multiplicity-free, Λ-membership, parameters.
    let mut spectra_ok = true;
    let mut params_ok = true;
    for k in -2i64..=2 {
        let table = line_bundle_spectrum(k, cutoff, &data)?;
        let mut seen = BTreeSet::new();
        for e in &table.entries {
            if !seen.insert(e.lambda.clone()) || e.multiplicity != 1 {
                spectra_ok = false;
            }
            if !is_dominant_u(&e.lambda, &data) {
                spectra_ok = false;
            }
            if schlichtkrull_params(&e.lambda, k, &data).is_err() {
                params_ok = false;
            }
        }
    }
    out.push(check("decomp.line_spectrum_multiplicity_free", spectra_ok, String::new()));
    out.push(check("decomp.schlichtkrull_parameters", params_ok, String::new()));

    // Frobenius-reciprocity oracle at small rank.
    if matches!(space.family, Family::I { p: 1, q } if q <= 2) {
        let mut agree = true;
        for k in -2i64..=2 {
            let table = line_bundle_spectrum(k, cutoff.min(3), &data)?;
            for e in &table.entries {
                if charring::frobenius_line_multiplicity(&e.lambda, k, &data)? != 1 {
                    agree = false;
                }
            }
        }
        out.push(check("decomp.frobenius_oracle", agree, String::new()));
    }

    // Cotangent bundle: tensor rule vs the character-ring oracle, descent
    // multiplicities, support statuses, module property.
    if data.compact_positive.len() <= 12 {
        let mu = data.simple_roots[0].neg();
        let mut tensor_ok = true;
        for m in Partition::enumerate(space.rank, cutoff.min(3)) {
            let got = cotangent_tensor_ktypes(&m, &data);
            let oracle = charring::klimyk_tensor(&gamma_weight(&m, &data), &mu, &data)?;
            if got != oracle.keys().cloned().collect::<BTreeSet<_>>()
                || oracle.values().any(|&v| v != 1)
            {
                tensor_ok = false;
            }
        }
        out.push(check("decomp.cotangent_tensor_oracle", tensor_ok, String::new()));

        let mut descent_ok = true;
        for m in Partition::enumerate(space.rank, cutoff.min(3)) {
            let lam = gamma_weight(&m, &data);
            let enumerated = Partition::enumerate(space.rank, m.total() + 1)
                .into_iter()
                .filter(|mp| cotangent_tensor_ktypes(mp, &data).contains(&lam))
                .count() as u64;
            if cotangent_multiplicity(&lam, m.total() + 1, &data) != enumerated {
                descent_ok = false;
            }
        }
        out.push(check("decomp.cotangent_descent_count", descent_ok, String::new()));
    }

    let cot = BundleSpec::cotangent(&data)?;
    let table = spectrum_support(&cot, cutoff, &data)?;
    let dim_e = cot.fiber_dim(&data)?;
    let bounds = table.entries.iter().all(|e| e.multiplicity >= 1 && e.multiplicity <= dim_e);
    out.push(check(
        "decomp.multiplicity_bound_chain",
        bounds,
        format!("dim E = {dim_e}, {} entries", table.entries.len()),
    ));
    let statuses = table.entries.iter().all(|e| match e.l2_status {
        L2Status::InL2 => is_dominant_u(&e.lambda, &data),
        L2Status::Undecided => e.origin.as_ref().is_some_and(|(m, _)| m.last() <= 1),
        L2Status::NotInL2 => false,
    });
    out.push(check("decomp.cotangent_statuses", statuses, String::new()));

    let support: BTreeSet<Weight> = table.entries.iter().map(|e| e.lambda.clone()).collect();
    let mut module_ok = true;
    for e in &table.entries {
        let (m, _) = e.origin.as_ref().unwrap();
        for shift in Partition::enumerate(space.rank, cutoff - m.total()) {
            if shift.total() > 0 && !support.contains(&e.lambda.add(&gamma_weight(&shift, &data))) {
                module_ok = false;
            }
        }
    }
    out.push(check("decomp.translation_invariance", module_ok, String::new()));

    // Holomorphic-section criterion consistency across bundles.
    let mut bw_ok = borel_weil(&cot) == table.entries.iter().any(|e| e.lambda == cot.mu);
    for k in -2i64..=2 {
        let bundle = BundleSpec::line(k, &data)?;
        let spec_table = line_bundle_spectrum(k, cutoff, &data)?;
        let has_m0 = spec_table.entries.iter().any(|e| e.lambda == bundle.mu);
        if borel_weil(&bundle) != has_m0 {
            bw_ok = false;
        }
    }
    out.push(check("decomp.borel_weil_consistency", bw_ok, String::new()));
    Ok(out)
}

pub fn jordan_suite(space: &HermitianType, seed: u64, samples: usize) -> Result<Vec<CheckResult>> {
    let model = MatrixModel::new(space)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut max_fund: f64 = 0.0;
    let mut max_det: f64 = 0.0;
    let mut max_polar: f64 = 0.0;
    for _ in 0..samples {
        let x = model.random_point(&mut rng, 0.8);
        let y = model.conjugate(&model.random_point(&mut rng, 0.8));
        let w = model.conjugate(&model.random_point(&mut rng, 0.8));

        // Q_{Q_x y} = Q_x Q_y Q_x applied to w.
        let qxy = model.quadratic(&x, &y)?;
        let lhs = model.quadratic(&qxy, &w)?;
        let rhs = model.quadratic(&x, &model.quadratic(&y, &model.quadratic(&x, &w)?)?)?;
        let denom = lhs.value.fro_norm().max(1e-9);
        max_fund = max_fund.max(lhs.value.sub(&rhs.value).fro_norm() / denom);

        // Det B(x,y) = Δ(x,y)^g.
        let bmat = model.bergman_matrix(&x, &y)?;
        let det_b = linalg::lu_det(&bmat);
        let delta_pow = model.delta(&x, &y)?.powu(model.genus());
        max_det = max_det.max((det_b - delta_pow).norm() / delta_pow.norm().max(1e-9));

        // Δ(z,−z̄) = ∏(1+tᵢ²) through the polar parameters.
        let z = model.random_point(&mut rng, 1.0);
        let polar = model.polar_decompose(&z)?;
        let minus_zbar = JordanPoint { value: model.conjugate(&z).value.neg(), side: Side::Minus };
        let delta = model.delta(&z, &minus_zbar)?;
        let expect: f64 = polar.t.iter().map(|t| 1.0 + t * t).product();
        max_polar = max_polar.max((delta - c(expect, 0.0)).norm() / expect);
    }
    out.push(check(
        "jordan.fundamental_identity",
        max_fund <= tolerances::JORDAN_IDENTITY_REL,
        format!("max residual {max_fund:.3e}"),
    ));
    out.push(check(
        "jordan.determinant_genus_identity",
        max_det <= tolerances::JORDAN_IDENTITY_REL,
        format!("max residual {max_det:.3e}"),
    ));
    out.push(check(
        "jordan.polar_determinant_identity",
        max_polar <= tolerances::POLAR_IDENTITY_REL,
        format!("max residual {max_polar:.3e}"),
    ));

    // q-map identities on 50 random configurations.
    let mut max_qmap: f64 = 0.0;
    for _ in 0..50 {
        let z = model.random_point(&mut rng, 0.8);
        let v = model.random_point(&mut rng, 1.0).value;
        let w = model.conjugate(&model.random_point(&mut rng, 1.0)).value;
        let a = model.random_point(&mut rng, 0.7);
        let b = model.conjugate(&model.random_point(&mut rng, 0.7));
        let t = LElement::from_dop(&model, &a, &b)?;
        max_qmap = max_qmap.max(verify_qmap_identities(&model, &z, &v, &t, &w, tolerances::FD_STEP)?);
    }
    out.push(check(
        "jordan.qmap_identities",
        max_qmap <= tolerances::QMAP_FD_ABS,
        format!("max residual {max_qmap:.3e}"),
    ));

    // K-equivariance of the q-map and the quasi-inverse relation.
    let mut max_equi: f64 = 0.0;
    let mut max_qi: f64 = 0.0;
    let mut bergman_pd = true;
    for _ in 0..20 {
        let z = model.random_point(&mut rng, 0.9);
        let k = model.haar_k(&mut rng);
        let moved = JordanPoint { value: model.apply_k_plus(&k, &z.value), side: Side::Plus };
        let lhs = model.qmap(&moved)?.value;
        let rhs = model.apply_k_minus(&k, &model.qmap(&z)?.value);
        max_equi = max_equi.max(lhs.sub(&rhs).fro_norm());

        let zbar = model.conjugate(&z);
        let minus_z = JordanPoint { value: z.value.neg(), side: Side::Plus };
        let minus_zbar = JordanPoint { value: zbar.value.neg(), side: Side::Minus };
        // Positive definiteness on both sides.
        let bplus = model.bergman_matrix(&z, &minus_zbar)?;
        let (pvals, _) = linalg::hermitian_eigen(&bplus);
        let bm = model.bergman_matrix(&zbar, &minus_z)?;
        let (vals, _) = linalg::hermitian_eigen(&bm);
        if vals.iter().chain(pvals.iter()).any(|&l| l <= 0.0) {
            bergman_pd = false;
        }
        let inv_sqrt = linalg::hermitian_power(&bm, -0.5)?;
        let coords = model.flatten(&zbar);
        let mapped: Vec<_> = (0..coords.len())
            .map(|i| (0..coords.len()).map(|j| inv_sqrt[(i, j)] * coords[j]).sum())
            .collect();
        let lhs = model.unflatten(&mapped, Side::Minus).value;
        let rhs = model.quasi_inverse(&zbar, &minus_z)?.value;
        max_qi = max_qi.max(lhs.sub(&rhs).fro_norm());
    }
    out.push(check(
        "jordan.qmap_equivariance",
        max_equi <= tolerances::EQUIVARIANCE_ABS,
        format!("max residual {max_equi:.3e}"),
    ));
    out.push(check(
        "jordan.quasi_inverse_consistency",
        max_qi <= tolerances::EQUIVARIANCE_ABS,
        format!("max residual {max_qi:.3e}"),
    ));
    out.push(check("jordan.bergman_positive_definite", bergman_pd, String::new()));

    // Stability of the measured potential normalization constant.
    let mut ratios = Vec::new();
    for _ in 0..10 {
        let z = model.random_point(&mut rng, 0.7);
        let v = model.random_point(&mut rng, 1.0).value;
        if let Ok(r) = potential_pairing_ratio(&model, &z, &v, tolerances::FD_STEP) {
            ratios.push(r);
        }
    }
    let stable = ratios.len() >= 5
        && ratios.iter().all(|r| (r - ratios[0]).norm() <= 1e-4 * ratios[0].norm());
    out.push(check(
        "jordan.potential_normalization",
        stable,
        format!("ratio ≈ {:.6}", ratios.first().map(|r| r.re).unwrap_or(f64::NAN)),
    ));
    Ok(out)
}

pub fn integrals_suite(space: &HermitianType, seed: u64) -> Result<Vec<CheckResult>> {
    let data = build_root_data(space)?;
    let model = MatrixModel::new(space)?;
    let mut out = Vec::new();

    // Selberg classification against the minor criterion.
    let mut agree = true;
    for k in -4i64..=4 {
        let bundle = BundleSpec::line(k, &data)?;
        for m in Partition::enumerate(space.rank, 4) {
            let verdict = selberg_bound(&m, &bundle, space);
            if (verdict.classification == Classification::Convergent)
                != minor_l2_condition(&m, &bundle)
            {
                agree = false;
            }
        }
    }
    out.push(check("integrals.selberg_minor_equivalence", agree, String::new()));

    // Quadrature vs Monte Carlo on the trivial-bundle mass.
    let quad = line_total_mass(&model, 0, &QuadratureSpec::quadrature_default())?;
    let mc_spec = QuadratureSpec {
        scheme: Scheme::MonteCarlo { samples: 100_000, seed },
        ..QuadratureSpec::monte_carlo_default(seed)
    };
    let mc = polar_integrate(
        &|t: &[f64]| t.iter().map(|ti| (1.0 + ti * ti).powi(-(space.genus as i32))).product(),
        &model,
        &mc_spec,
    )?;
    let sigma = mc.stderr.unwrap_or(f64::INFINITY);
    let compatible = quad.classification == Classification::Convergent
        && mc.classification == Classification::Convergent
        && (quad.value - mc.value).abs() <= 3.0 * sigma + 1e-3 * quad.value;
    out.push(check(
        "integrals.quadrature_mc_agreement",
        compatible,
        format!("quad {:.6} vs mc {:.6} ± {:.1e}", quad.value, mc.value, sigma),
    ));

    // Rank-one baselines and probe soundness.
    if space.dim_nplus == 1 {
        let pi = std::f64::consts::PI;
        let base_ok = (quad.value - pi).abs() <= tolerances::QUADRATURE_REL * pi;
        out.push(check(
            "integrals.projective_line_mass",
            base_ok,
            format!("mass {:.6}", quad.value),
        ));

        let probe_spec = QuadratureSpec::monte_carlo_default(seed);
        let mut sound = true;
        let mut degree_ok = true;
        let cot = BundleSpec::cotangent(&data)?;
        for mval in 0u32..=5 {
            let m = Partition::new(vec![mval]).unwrap();
            let (rows, cols) = model.shape(Side::Minus);
            let unit = crate::linalg::CMat::from_fn(rows, cols, |i, j| {
                if (i, j) == (0, 0) { c(1.0, 0.0) } else { c(0.0, 0.0) }
            });
            let p = minor_poly(&model, &m).scalar_mul(&PolyMap::constant_fiber(unit));
            let verdict = norm_probe(&model, BundleModel::Cotangent, &p, &probe_spec)?;
            let analytic = minor_l2_condition(&m, &cot);
            match verdict.classification {
                Classification::Convergent => {
                    if !analytic {
                        sound = false;
                    }
                    // Degree necessity on probe-convergent vectors.
                    let degs = diagonal_degrees(&model, &p, DEGREE_BUDGET)?;
                    let lam = gamma_weight(&m, &data).add(&cot.mu);
                    if !crate::decomp::degree_l2_necessary(&lam, &degs, &data) {
                        degree_ok = false;
                    }
                }
                Classification::Divergent => {
                    if analytic {
                        sound = false;
                    }
                }
                Classification::Inconclusive => sound = false,
            }
        }
        out.push(check("integrals.probe_soundness_rank_one", sound, String::new()));
        out.push(check("integrals.degree_necessity", degree_ok, String::new()));
    }

    // Densities agree between the generic and the simplified line route.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
    let mut density_ok = true;
    for k in [-2i64, 0, 1] {
        for _ in 0..10 {
            let z = model.random_point(&mut rng, 0.9);
            let d = l2_density(&model, BundleModel::Line { k }, &PolyMap::one(), &z)?;
            let minus_zbar =
                JordanPoint { value: model.conjugate(&z).value.neg(), side: Side::Minus };
            let delta = model.delta(&z, &minus_zbar)?.re;
            let direct = delta.powi(-((k + space.genus as i64) as i32));
            if (d - direct).abs() > 1e-9 * direct.abs().max(1e-12) {
                density_ok = false;
            }
        }
    }
    out.push(check("integrals.line_density_exponent", density_ok, String::new()));

    // The Bergman action respects the two-sided density bound on samples.
    let cot = BundleSpec::cotangent(&data)?;
    let lo = -data.pairing_int(&cot.mu, &data.strongly_orthogonal[0])?;
    let hi = -cot.mu_h_alpha1;
    let mut bound_ok = true;
    for _ in 0..100 {
        let z = model.random_point(&mut rng, 1.1);
        let minus_zbar = JordanPoint { value: model.conjugate(&z).value.neg(), side: Side::Minus };
        let delta = model.delta(&z, &minus_zbar)?.re;
        let raw = model.conjugate(&model.random_point(&mut rng, 1.0));
        let unit = raw.value.scale(c(1.0 / raw.value.fro_norm(), 0.0));
        let moved = bergman_bundle_action(&model, BundleModel::Cotangent, &z, &Value::Mat(unit))?;
        let norm2 = moved.norm().powi(2);
        let lo_v = delta.powi(lo as i32);
        let hi_v = delta.powi(hi as i32);
        if norm2 < lo_v * (1.0 - tolerances::BERGMAN_BOUND_SLACK) - tolerances::BERGMAN_BOUND_SLACK
            || norm2 > hi_v * (1.0 + tolerances::BERGMAN_BOUND_SLACK) + tolerances::BERGMAN_BOUND_SLACK
        {
            bound_ok = false;
        }
    }
    out.push(check("integrals.bergman_density_bounds", bound_ok, String::new()));
    Ok(out)
}

/// Runs the requested suite; `all` runs every applicable one.
pub fn run_suite(
    space: &HermitianType,
    suite: &str,
    seed: u64,
    samples: usize,
) -> Result<Vec<CheckResult>> {
    match suite {
        "rootdata" => rootdata_suite(space),
        "weights" => weights_suite(space),
        "decomp" => decomp_suite(space, 4),
        "jordan" => jordan_suite(space, seed, samples),
        "integrals" => integrals_suite(space, seed),
        "all" => {
            let mut out = rootdata_suite(space)?;
            out.extend(weights_suite(space)?);
            out.extend(decomp_suite(space, 4)?);
            if MatrixModel::new(space).is_ok() {
                out.extend(jordan_suite(space, seed, samples)?);
                out.extend(integrals_suite(space, seed)?);
            }
            Ok(out)
        }
        other => Err(Error::Parameter(format!("unknown suite `{other}`"))),
    }
}

pub fn format_report(checks: &[CheckResult]) -> (String, bool) {
    let mut buf = String::new();
    let mut all = true;
    for ch in checks {
        let status = if ch.passed { "PASS" } else { "FAIL" };
        all &= ch.passed;
        if ch.detail.is_empty() {
            let _ = writeln!(buf, "{status} {}", ch.name);
        } else {
            let _ = writeln!(buf, "{status} {} ({})", ch.name, ch.detail);
        }
    }
    let _ = writeln!(
        buf,
        "{}: {} checks, {} failed",
        if all { "OK" } else { "FAILED" },
        checks.len(),
        checks.iter().filter(|ch| !ch.passed).count()
    );
    (buf, all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rootdata_suite_passes() {
        for f in [Family::I { p: 2, q: 2 }, Family::II { n: 5 }, Family::EIII] {
            let checks = rootdata_suite(&HermitianType::new(f).unwrap()).unwrap();
            assert!(checks.iter().all(|c| c.passed), "{f}: {checks:?}");
        }
    }

    #[test]
    fn jordan_suite_passes_quickly() {
        let space = HermitianType::new(Family::III { n: 2 }).unwrap();
        let checks = jordan_suite(&space, 7, 25).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn exceptional_numeric_suites_unsupported() {
        let space = HermitianType::new(Family::EIII).unwrap();
        assert!(matches!(jordan_suite(&space, 1, 10), Err(Error::Unsupported(_))));
        assert!(matches!(integrals_suite(&space, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn report_formatting() {
        let checks = vec![
            CheckResult { name: "a.b".into(), passed: true, detail: "x".into() },
            CheckResult { name: "c.d".into(), passed: false, detail: String::new() },
        ];
        let (text, ok) = format_report(&checks);
        assert!(!ok);
        assert!(text.contains("PASS a.b (x)"));
        assert!(text.contains("FAIL c.d"));
        assert!(text.contains("FAILED: 2 checks, 1 failed"));
    }
}
