//! Point evaluation of the complexified Lie-algebra action on sections
//! f_p(z) = p(z, q(z)), finite-difference verification of the q-map
//! identities, and the Bergman operator action on bundle fibers.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, C64};
use crate::tolerances;

use super::model::{triple_raw, JordanPoint, MatrixModel, Side};
use super::poly::{PolyMap, Value};

/// An element of l_ℂ represented by its adjoint actions on the coordinate
/// bases of n⁺ and n⁻.
#[derive(Clone, Debug)]
pub struct LElement {
    pub plus: CMat,
    pub minus: CMat,
}

impl LElement {
    /// The inner derivation D_{x,y} = {x, y, ·} on n⁺, acting on n⁻ as
    /// −D_{y,x}.
    pub fn from_dop(model: &MatrixModel, x: &JordanPoint, y: &JordanPoint) -> Result<Self> {
        if x.side != Side::Plus || y.side != Side::Minus {
            return Err(Error::Domain("inner derivation takes (n⁺, n⁻) arguments".into()));
        }
        let plus = operator_matrix(model, Side::Plus, |z| triple_raw(&x.value, &y.value, z));
        let minus = operator_matrix(model, Side::Minus, |w| {
            triple_raw(&y.value, &x.value, w).neg()
        });
        Ok(LElement { plus, minus })
    }

    /// D_{eᵢ, ēᵢ}, realizing the coroot H_{γᵢ} of the frame torus.
    pub fn frame_cartan(model: &MatrixModel, i: usize) -> Self {
        let e = JordanPoint { value: model.frame(i).clone(), side: Side::Plus };
        let ebar = model.conjugate(&e);
        Self::from_dop(model, &e, &ebar).expect("frame sides are fixed")
    }

    pub fn apply_plus(&self, model: &MatrixModel, z: &CMat) -> CMat {
        apply_operator(model, &self.plus, z, Side::Plus)
    }

    pub fn apply_minus(&self, model: &MatrixModel, w: &CMat) -> CMat {
        apply_operator(model, &self.minus, w, Side::Minus)
    }

    /// Coefficient of the grading element: tr(T|_{n⁺}) / n.
    pub fn central_component(&self, model: &MatrixModel) -> C64 {
        self.plus.trace() / c(model.dim() as f64, 0.0)
    }
}

fn operator_matrix(model: &MatrixModel, side: Side, f: impl Fn(&CMat) -> CMat) -> CMat {
    let basis = model.basis(side);
    let dim = basis.len();
    let mut m = CMat::zeros(dim, dim);
    for (k, b) in basis.iter().enumerate() {
        let image = f(b);
        for (j, bj) in basis.iter().enumerate() {
            m[(j, k)] = image.frobenius_inner(bj);
        }
    }
    m
}

fn apply_operator(model: &MatrixModel, op: &CMat, v: &CMat, side: Side) -> CMat {
    let coords = model.flatten(&JordanPoint { value: v.clone(), side });
    let mapped: Vec<C64> = (0..coords.len())
        .map(|i| (0..coords.len()).map(|j| op[(i, j)] * coords[j]).sum())
        .collect();
    model.unflatten(&mapped, side).value
}

/// Bundles whose fiber action is realized numerically.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BundleModel {
    /// Character parameter k = μ(H_{α₁}); dρ(T) = k · tr(T|_{n⁺}) / g.
    Line { k: i64 },
    /// Fiber n⁻ with the adjoint action.
    Cotangent,
}

impl BundleModel {
    fn fiber_action(&self, model: &MatrixModel, t: &LElement, v: &Value) -> Result<Value> {
        match self {
            BundleModel::Line { k } => {
                let scale = c(*k as f64, 0.0) * t.plus.trace() / c(model.genus() as f64, 0.0);
                Ok(Value::Scalar(scale * v.as_scalar()?))
            }
            BundleModel::Cotangent => Ok(Value::Mat(t.apply_minus(model, v.as_mat()?))),
        }
    }
}

/// A generator of u_ℂ = n⁺ ⊕ l_ℂ ⊕ n⁻.
#[derive(Clone, Debug)]
pub enum Generator {
    Plus(CMat),
    L(LElement),
    Minus(CMat),
}

/// Evaluates the u_ℂ-action on f_p at z:
///   v ∈ n⁺:  −∂_{(v,0)} p,
///   T ∈ l:   (−∂_{(Tz, Tq)} + dρ(T)) p,
///   w ∈ n⁻:  (−∂_{(Q_z w, w − {q,z,w})} + dρ(D_{z,w})) p,
/// all evaluated at (z, q(z)) with exact polynomial derivatives.
pub fn uc_action(
    model: &MatrixModel,
    bundle: BundleModel,
    p: &PolyMap,
    z: &JordanPoint,
    generator: &Generator,
) -> Result<Value> {
    let q = model.qmap(z)?;
    let (ry, cy) = model.shape(Side::Minus);
    match generator {
        Generator::Plus(v) => {
            let (_, d) = p.eval_dual(model, &z.value, &q.value, v, &CMat::zeros(ry, cy))?;
            Ok(neg(d))
        }
        Generator::L(t) => {
            let dz = t.apply_plus(model, &z.value);
            let dq = t.apply_minus(model, &q.value);
            let (val, d) = p.eval_dual(model, &z.value, &q.value, &dz, &dq)?;
            add(neg(d), bundle.fiber_action(model, t, &val)?)
        }
        Generator::Minus(w) => {
            let qz_w = z.value.mul(w).mul(&z.value); // Q_z w
            let braces = triple_raw(&q.value, &z.value, w); // {q(z), z, w}
            let dy = w.sub(&braces);
            let (val, d) = p.eval_dual(model, &z.value, &q.value, &qz_w, &dy)?;
            let wp = JordanPoint { value: w.clone(), side: Side::Minus };
            let t = LElement::from_dop(model, z, &wp)?;
            add(neg(d), bundle.fiber_action(model, &t, &val)?)
        }
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(-s),
        Value::Mat(m) => Value::Mat(m.neg()),
    }
}

fn add(a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x + y)),
        (Value::Mat(x), Value::Mat(y)) => Ok(Value::Mat(x.add(&y))),
        _ => Err(Error::Domain("mismatched fiber values".into())),
    }
}

/// Central-difference directional derivative of the q-map along a real
/// direction in n⁺.
fn dq_real(model: &MatrixModel, z: &CMat, dir: &CMat, h: f64) -> Result<CMat> {
    let plus = model.qmap(&JordanPoint { value: z.add(&dir.scale(c(h, 0.0))), side: Side::Plus })?;
    let minus = model.qmap(&JordanPoint { value: z.sub(&dir.scale(c(h, 0.0))), side: Side::Plus })?;
    Ok(plus.value.sub(&minus.value).scale(c(1.0 / (2.0 * h), 0.0)))
}

/// Holomorphic derivative ∂_a q by Wirtinger combination of real finite
/// differences.
fn del_holo(model: &MatrixModel, z: &CMat, a: &CMat, h: f64) -> Result<CMat> {
    let d1 = dq_real(model, z, a, h)?;
    let d2 = dq_real(model, z, &a.scale(c(0.0, 1.0)), h)?;
    Ok(d1.sub(&d2.scale(c(0.0, 1.0))).scale(c(0.5, 0.0)))
}

/// Antiholomorphic derivative ∂̄_b q along b ∈ n⁻ (z̄ moves along b).
fn del_anti(model: &MatrixModel, z: &CMat, b: &CMat, h: f64) -> Result<CMat> {
    let u = b.adjoint();
    let d1 = dq_real(model, z, &u, h)?;
    let d2 = dq_real(model, z, &u.scale(c(0.0, 1.0)), h)?;
    Ok(d1.add(&d2.scale(c(0.0, 1.0))).scale(c(0.5, 0.0)))
}

/// Finite-difference residuals of the three q-map identities
///   (−∂_v − ∂̄_{Q_{z̄} v}) q = 0,
///   (−∂_{Tz} − ∂̄_{Tz̄}) q = −T q,
///   (−∂_{Q_z w} − ∂̄_w) q = −w + {q, z, w};
/// returns the maximum of the three norms.
pub fn verify_qmap_identities(
    model: &MatrixModel,
    z: &JordanPoint,
    v: &CMat,
    t: &LElement,
    w: &CMat,
    h: f64,
) -> Result<f64> {
    let zv = &z.value;
    let zbar = zv.adjoint();
    let q = model.qmap(z)?.value;

    // (1) holomorphy: −∂_v q − ∂̄_{Q_{z̄} v} q = 0
    let qbar_v = zbar.mul(v).mul(&zbar);
    let r1 = del_holo(model, zv, v, h)?
        .add(&del_anti(model, zv, &qbar_v, h)?)
        .fro_norm();

    // (2) −∂_{Tz} q − ∂̄_{Tz̄} q = −T q
    let tz = t.apply_plus(model, zv);
    let tzbar = t.apply_minus(model, &zbar);
    let lhs2 = del_holo(model, zv, &tz, h)?.add(&del_anti(model, zv, &tzbar, h)?).neg();
    let r2 = lhs2.add(&t.apply_minus(model, &q)).fro_norm();

    // (3) −∂_{Q_z w} q − ∂̄_w q = −w + {q, z, w}
    let qz_w = zv.mul(w).mul(zv);
    let lhs3 = del_holo(model, zv, &qz_w, h)?.add(&del_anti(model, zv, w, h)?).neg();
    let rhs3 = w.neg().add(&triple_raw(&q, zv, w));
    let r3 = lhs3.sub(&rhs3).fro_norm();

    Ok(r1.max(r2).max(r3))
}

/// Applies ρ(B(z, −z̄)^{−1/2}) to a fiber value: the scalar Δ^{−k/2} for line
/// bundles, the operator square root of B(z̄, −z) on n⁻ for the cotangent
/// bundle.
pub fn bergman_bundle_action(
    model: &MatrixModel,
    bundle: BundleModel,
    z: &JordanPoint,
    vec: &Value,
) -> Result<Value> {
    let zbar = model.conjugate(z);
    let minus_zbar = JordanPoint { value: zbar.value.neg(), side: Side::Minus };
    match bundle {
        BundleModel::Line { k } => {
            let delta = model.delta(z, &minus_zbar)?;
            if delta.im.abs() > 1e-9 * delta.re.abs().max(1.0) || delta.re <= 0.0 {
                return Err(Error::Integrity(format!("Δ(z,−z̄) = {delta} is not positive")));
            }
            let factor = delta.re.powf(-(k as f64) / 2.0);
            Ok(Value::Scalar(c(factor, 0.0) * vec.as_scalar()?))
        }
        BundleModel::Cotangent => {
            let minus_z = JordanPoint { value: z.value.neg(), side: Side::Plus };
            let b = model.bergman_matrix(&zbar, &minus_z)?;
            let herm_res = b.sub(&b.adjoint()).max_abs();
            if herm_res > tolerances::HERMITICITY_REL * b.max_abs().max(1.0) {
                return Err(Error::Integrity(format!(
                    "Bergman operator hermiticity residual {herm_res:.2e}"
                )));
            }
            let sqrt = linalg::hermitian_power(&b, 0.5)?;
            let coords =
                model.flatten(&JordanPoint { value: vec.as_mat()?.clone(), side: Side::Minus });
            let mapped: Vec<C64> = (0..coords.len())
                .map(|i| (0..coords.len()).map(|j| sqrt[(i, j)] * coords[j]).sum())
                .collect();
            Ok(Value::Mat(model.unflatten(&mapped, Side::Minus).value))
        }
    }
}

/// K-invariant potential Ψ(z) = 2g · ln Δ(z, −z̄).
pub fn kahler_potential(model: &MatrixModel, z: &JordanPoint) -> Result<f64> {
    let minus_zbar = JordanPoint { value: model.conjugate(z).value.neg(), side: Side::Minus };
    let delta = model.delta(z, &minus_zbar)?;
    if delta.re <= 0.0 {
        return Err(Error::Integrity("Δ(z,−z̄) must be positive".into()));
    }
    Ok(2.0 * model.genus() as f64 * delta.re.ln())
}

/// Ratio ∂Ψ(z)(v) / tr(v·q(z)) measured by finite differences; constant per
/// family (the trace-form normalization of the potential identity q = ∂Ψ).
pub fn potential_pairing_ratio(
    model: &MatrixModel,
    z: &JordanPoint,
    v: &CMat,
    h: f64,
) -> Result<C64> {
    let psi = |zv: &CMat| -> Result<f64> {
        kahler_potential(model, &JordanPoint { value: zv.clone(), side: Side::Plus })
    };
    let real_dir = |dir: &CMat| -> Result<f64> {
        let p = psi(&z.value.add(&dir.scale(c(h, 0.0))))?;
        let m = psi(&z.value.sub(&dir.scale(c(h, 0.0))))?;
        Ok((p - m) / (2.0 * h))
    };
    let dv = real_dir(v)?;
    let div = real_dir(&v.scale(c(0.0, 1.0)))?;
    let grad = c(0.5, 0.0) * (c(dv, 0.0) - c(0.0, 1.0) * c(div, 0.0));
    let q = model.qmap(z)?.value;
    let pairing = v.mul(&q).trace();
    if pairing.norm() < 1e-12 {
        return Err(Error::Domain("pairing too small to measure the ratio".into()));
    }
    Ok(grad / pairing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Family, HermitianType};
    use crate::weights::Partition;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::super::poly::{eval_section, minor_poly};

    fn model(f: Family) -> MatrixModel {
        MatrixModel::new(&HermitianType::new(f).unwrap()).unwrap()
    }

    fn classical() -> Vec<Family> {
        vec![
            Family::I { p: 1, q: 1 },
            Family::I { p: 2, q: 2 },
            Family::I { p: 2, q: 3 },
            Family::II { n: 4 },
            Family::III { n: 2 },
            Family::III { n: 3 },
        ]
    }

    #[test]
    fn frame_cartan_eigenvalues() {
        // D_{eᵢ,ēᵢ} acts with eigenvalue 2 on eᵢ and −2 on ēᵢ.
        for f in classical() {
            let m = model(f);
            let t = LElement::frame_cartan(&m, 0);
            let e0 = m.frame(0);
            assert!(t.apply_plus(&m, e0).sub(&e0.scale(c(2.0, 0.0))).max_abs() < 1e-12);
            let ebar = e0.adjoint();
            assert!(t.apply_minus(&m, &ebar).add(&ebar.scale(c(2.0, 0.0))).max_abs() < 1e-12);
            // tr(D_{e,ē}|n⁺) = g.
            assert!((t.plus.trace() - c(m.genus() as f64, 0.0)).norm() < 1e-10, "{f}");
        }
    }

    #[test]
    fn qmap_identities_at_zero() {
        for f in classical() {
            let m = model(f);
            let (r, cdim) = m.shape(Side::Plus);
            let z = m.point(CMat::zeros(r, cdim), Side::Plus).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(21);
            let v = m.random_point(&mut rng, 1.0).value;
            let w = m.conjugate(&m.random_point(&mut rng, 1.0)).value;
            let x = m.random_point(&mut rng, 1.0);
            let y = m.conjugate(&m.random_point(&mut rng, 1.0));
            let t = LElement::from_dop(&m, &x, &y).unwrap();
            let res = verify_qmap_identities(&m, &z, &v, &t, &w, tolerances::FD_STEP).unwrap();
            assert!(res < 1e-9, "{f}: residual {res:.2e} at z = 0");
        }
    }

    #[test]
    fn qmap_identities_random_points() {
        for f in classical() {
            let m = model(f);
            let mut rng = ChaCha8Rng::seed_from_u64(22);
            for _ in 0..5 {
                let z = m.random_point(&mut rng, 0.8);
                let v = m.random_point(&mut rng, 1.0).value;
                let w = m.conjugate(&m.random_point(&mut rng, 1.0)).value;
                let x = m.random_point(&mut rng, 0.7);
                let y = m.conjugate(&m.random_point(&mut rng, 0.7));
                let t = LElement::from_dop(&m, &x, &y).unwrap();
                let res = verify_qmap_identities(&m, &z, &v, &t, &w, tolerances::FD_STEP).unwrap();
                assert!(res < tolerances::QMAP_FD_ABS, "{f}: residual {res:.2e}");
            }
        }
    }

    #[test]
    fn rank_one_analytic_qmap_derivatives() {
        // q(z) = z̄/(1+|z|²): ∂_v q = −z̄² v/(1+|z|²)², ∂̄_b q = b/(1+|z|²)².
        let m = model(Family::I { p: 1, q: 1 });
        let z = c(0.37, -0.21);
        let zp = m.point(CMat::from_fn(1, 1, |_, _| z), Side::Plus).unwrap();
        let v = CMat::from_fn(1, 1, |_, _| c(0.83, 0.12));
        let b = CMat::from_fn(1, 1, |_, _| c(-0.44, 0.29));
        let denom = (1.0 + z.norm_sqr()).powi(2);
        let holo = del_holo(&m, &zp.value, &v, tolerances::FD_STEP).unwrap();
        let expect_h = -z.conj() * z.conj() * v[(0, 0)] / c(denom, 0.0);
        assert!((holo[(0, 0)] - expect_h).norm() < 1e-9);
        let anti = del_anti(&m, &zp.value, &b, tolerances::FD_STEP).unwrap();
        let expect_a = b[(0, 0)] / c(denom, 0.0);
        assert!((anti[(0, 0)] - expect_a).norm() < 1e-9);
    }

    #[test]
    fn uc_action_annihilation_and_weight() {
        let m = model(Family::I { p: 2, q: 2 });
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let z = m.random_point(&mut rng, 0.6);
        let sig = Partition::new(vec![2, 1]).unwrap();
        let p = minor_poly(&m, &sig);

        // p constant along n⁺: the n⁺-action annihilates.
        let v = m.random_point(&mut rng, 1.0).value;
        let out = uc_action(&m, BundleModel::Line { k: 1 }, &p, &z, &Generator::Plus(v)).unwrap();
        assert!(out.norm() < 1e-12);

        // Frame Cartan elements act by the weight: λ(H_{γᵢ}) = 2mᵢ + k.
        let k = 1i64;
        let f_p = eval_section(&m, &p, &z).unwrap().as_scalar().unwrap();
        for (i, mi) in sig.parts().iter().enumerate() {
            let t = LElement::frame_cartan(&m, i);
            let out = uc_action(&m, BundleModel::Line { k }, &p, &z, &Generator::L(t))
                .unwrap()
                .as_scalar()
                .unwrap();
            let expect = c(2.0 * *mi as f64 + k as f64, 0.0) * f_p;
            assert!(
                (out - expect).norm() < 1e-8 * expect.norm().max(1e-8),
                "weight eigenvalue at frame index {i}"
            );
        }
    }

    #[test]
    fn uc_action_trivial_bundle_minus_generator() {
        // w ∈ n⁻ acting on p = 1 in the trivial bundle gives 0.
        let m = model(Family::I { p: 2, q: 2 });
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let z = m.random_point(&mut rng, 0.5);
        let w = m.conjugate(&m.random_point(&mut rng, 1.0)).value;
        let out =
            uc_action(&m, BundleModel::Line { k: 0 }, &PolyMap::one(), &z, &Generator::Minus(w))
                .unwrap();
        assert!(out.norm() < 1e-12);
    }

    #[test]
    fn bergman_action_examples() {
        let m = model(Family::I { p: 1, q: 1 });
        let zval = c(0.6, -0.3);
        let z = m.point(CMat::from_fn(1, 1, |_, _| zval), Side::Plus).unwrap();
        let one = 1.0 + zval.norm_sqr();

        // Line bundle: scalar Δ^{−k/2}.
        for k in [-2i64, 0, 3] {
            let out =
                bergman_bundle_action(&m, BundleModel::Line { k }, &z, &Value::Scalar(c(1.0, 0.0)))
                    .unwrap()
                    .as_scalar()
                    .unwrap();
            assert!((out - c(one.powf(-(k as f64) / 2.0), 0.0)).norm() < 1e-12, "k = {k}");
        }

        // Cotangent on the unit fiber vector: |result|² = (1+|z|²)².
        let vec = Value::Mat(CMat::from_fn(1, 1, |_, _| c(1.0, 0.0)));
        let out = bergman_bundle_action(&m, BundleModel::Cotangent, &z, &vec).unwrap();
        let norm2 = out.as_mat().unwrap().fro_norm().powi(2);
        assert!((norm2 - one * one).abs() < 1e-10);

        // z = 0 is the identity.
        let zero = m.point(CMat::zeros(1, 1), Side::Plus).unwrap();
        let out = bergman_bundle_action(&m, BundleModel::Cotangent, &zero, &vec).unwrap();
        assert!((out.as_mat().unwrap()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn bergman_bound_two_sided() {
        // Δ^{−μ(H_{γ₁})} ≤ |ρ(B^{−1/2})v|² ≤ Δ^{−μ(H_{α₁})} for the cotangent
        // bundle on I(2,2): bounds Δ⁰ and Δ².
        let m = model(Family::I { p: 2, q: 2 });
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..50 {
            let z = m.random_point(&mut rng, 1.2);
            let minus_zbar = JordanPoint { value: m.conjugate(&z).value.neg(), side: Side::Minus };
            let delta = m.delta(&z, &minus_zbar).unwrap().re;
            let raw = m.conjugate(&m.random_point(&mut rng, 1.0));
            let norm = raw.value.fro_norm();
            let vec = Value::Mat(raw.value.scale(c(1.0 / norm, 0.0)));
            let out = bergman_bundle_action(&m, BundleModel::Cotangent, &z, &vec).unwrap();
            let val = out.as_mat().unwrap().fro_norm().powi(2);
            assert!(val >= 1.0 - 1e-10 && val <= delta * delta * (1.0 + 1e-10));
        }
    }

    #[test]
    fn potential_ratio_is_stable() {
        // ∂Ψ(v) / tr(v q(z)) is a constant per family (2g for types I and
        // III, g for type II where Δ² = det).
        for f in classical() {
            let m = model(f);
            let mut rng = ChaCha8Rng::seed_from_u64(26);
            let mut ratios = Vec::new();
            for _ in 0..5 {
                let z = m.random_point(&mut rng, 0.7);
                let v = m.random_point(&mut rng, 1.0).value;
                match potential_pairing_ratio(&m, &z, &v, tolerances::FD_STEP) {
                    Ok(r) => ratios.push(r),
                    Err(Error::Domain(_)) => continue,
                    Err(e) => panic!("{e}"),
                }
            }
            assert!(ratios.len() >= 3, "{f}: too few measurable samples");
            let first = ratios[0];
            for r in &ratios {
                assert!((r - first).norm() < 1e-4 * first.norm(), "{f}: ratio drift");
            }
            let expect = match f {
                Family::II { .. } => m.genus() as f64,
                _ => 2.0 * m.genus() as f64,
            };
            assert!(
                (first - c(expect, 0.0)).norm() < 1e-4 * expect,
                "{f}: ratio {first} vs {expect}"
            );
        }
    }
}
