//! Composable polynomial maps on n⁺ × n⁻ with values in ℂ or in a bundle
//! fiber, supporting evaluation and exact directional derivatives.
//!
//! Maps are expression DAGs over the matrix arguments with node kinds
//! constant, coordinate, matrix product, Jordan determinant, linear map, sum
//! and scalar product. Derivatives are forward-mode: the determinant node
//! differentiates through the adjugate rule (or the Pfaffian expansion for
//! type II), so no finite differencing is involved.

use crate::error::{Error, Result};
use crate::linalg::{c, CMat, C64};
use crate::tolerances;
use crate::weights::Partition;

use super::model::{JordanPoint, MatrixModel, Side};

#[derive(Clone, Debug)]
pub enum Value {
    Scalar(C64),
    Mat(CMat),
}

impl Value {
    pub fn as_scalar(&self) -> Result<C64> {
        match self {
            Value::Scalar(s) => Ok(*s),
            Value::Mat(_) => Err(Error::Domain("expected a scalar value".into())),
        }
    }

    pub fn as_mat(&self) -> Result<&CMat> {
        match self {
            Value::Mat(m) => Ok(m),
            Value::Scalar(_) => Err(Error::Domain("expected a matrix value".into())),
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            Value::Scalar(s) => s.norm(),
            Value::Mat(m) => m.fro_norm(),
        }
    }
}

#[derive(Clone, Debug)]
enum Node {
    ConstScalar(C64),
    ConstMat(CMat),
    /// The n⁺ argument.
    VarPlus,
    /// The n⁻ argument.
    VarMinus,
    /// Entry of one of the arguments, as a scalar.
    Coord(Side, usize, usize),
    Add(usize, usize),
    Neg(usize),
    /// Matrix product of two matrix-valued subexpressions.
    MatMul(usize, usize),
    /// Scalar-valued first operand times arbitrary second operand.
    ScalarMul(usize, usize),
    /// Integer power of a scalar subexpression.
    Pow(usize, u32),
    /// Jordan determinant Δ(a, b) of an (n⁺, n⁻)-valued pair.
    JordanDelta(usize, usize),
    /// Fixed linear operator in trace-orthonormal coordinates of `Side`.
    LinearOp(CMat, usize, Side),
}

/// A polynomial map on n⁺ × n⁻.
#[derive(Clone, Debug)]
pub struct PolyMap {
    nodes: Vec<Node>,
    root: usize,
}

impl PolyMap {
    fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    pub fn constant_scalar(v: C64) -> Self {
        PolyMap { nodes: vec![Node::ConstScalar(v)], root: 0 }
    }

    pub fn one() -> Self {
        Self::constant_scalar(c(1.0, 0.0))
    }

    /// Constant fiber vector (an n⁻ value for the cotangent bundle).
    pub fn constant_fiber(v: CMat) -> Self {
        PolyMap { nodes: vec![Node::ConstMat(v)], root: 0 }
    }

    /// The coordinate function (i, j) of the n⁺ or n⁻ argument.
    pub fn coordinate(side: Side, i: usize, j: usize) -> Self {
        PolyMap { nodes: vec![Node::Coord(side, i, j)], root: 0 }
    }

    /// self + other.
    pub fn sum(mut self, other: &PolyMap) -> Self {
        let offset = self.nodes.len();
        self.nodes.extend(other.nodes.iter().cloned().map(|n| shift(n, offset)));
        let r2 = other.root + offset;
        let r1 = self.root;
        self.root = self.push(Node::Add(r1, r2));
        self
    }

    /// Scalar-valued self times other (scalar or fiber-valued).
    pub fn scalar_mul(mut self, other: &PolyMap) -> Self {
        let offset = self.nodes.len();
        self.nodes.extend(other.nodes.iter().cloned().map(|n| shift(n, offset)));
        let r2 = other.root + offset;
        let r1 = self.root;
        self.root = self.push(Node::ScalarMul(r1, r2));
        self
    }

    /// Matrix product of two matrix-valued maps.
    pub fn mat_mul(mut self, other: &PolyMap) -> Self {
        let offset = self.nodes.len();
        self.nodes.extend(other.nodes.iter().cloned().map(|n| shift(n, offset)));
        let r2 = other.root + offset;
        let r1 = self.root;
        self.root = self.push(Node::MatMul(r1, r2));
        self
    }

    pub fn pow(mut self, e: u32) -> Self {
        let r = self.root;
        self.root = self.push(Node::Pow(r, e));
        self
    }

    /// Applies a fixed linear operator (coordinates of `side`) to a
    /// matrix-valued map.
    pub fn linear_map(mut self, op: CMat, side: Side) -> Self {
        let r = self.root;
        self.root = self.push(Node::LinearOp(op, r, side));
        self
    }

    /// Δ(x, y) as a polynomial map.
    pub fn delta_xy() -> Self {
        let mut p = PolyMap { nodes: vec![Node::VarPlus, Node::VarMinus], root: 0 };
        p.root = p.push(Node::JordanDelta(0, 1));
        p
    }

    /// The i-th Jordan minor Δᵢ(y) = Δ(εᵢ, ε̄ᵢ − y), i ≥ 1.
    pub fn minor(model: &MatrixModel, i: usize) -> Self {
        let eps = model.frame_sum(i);
        let eps_bar = eps.adjoint();
        let mut p = PolyMap { nodes: Vec::new(), root: 0 };
        let e = p.push(Node::ConstMat(eps));
        let ebar = p.push(Node::ConstMat(eps_bar));
        let y = p.push(Node::VarMinus);
        let ny = p.push(Node::Neg(y));
        let arg = p.push(Node::Add(ebar, ny));
        p.root = p.push(Node::JordanDelta(e, arg));
        p
    }

    /// Evaluate at (x, y).
    pub fn eval(&self, model: &MatrixModel, x: &CMat, y: &CMat) -> Result<Value> {
        let (rx, cx) = model.shape(Side::Plus);
        let (ry, cy) = model.shape(Side::Minus);
        let zx = CMat::zeros(rx, cx);
        let zy = CMat::zeros(ry, cy);
        Ok(self.eval_dual(model, x, y, &zx, &zy)?.0)
    }

    /// Evaluate together with the directional derivative along (dx, dy).
    pub fn eval_dual(
        &self,
        model: &MatrixModel,
        x: &CMat,
        y: &CMat,
        dx: &CMat,
        dy: &CMat,
    ) -> Result<(Value, Value)> {
        let mut vals: Vec<(Value, Value)> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let pair = match node {
                Node::ConstScalar(s) => (Value::Scalar(*s), Value::Scalar(c(0.0, 0.0))),
                Node::ConstMat(m) => (
                    Value::Mat(m.clone()),
                    Value::Mat(CMat::zeros(m.rows, m.cols)),
                ),
                Node::VarPlus => (Value::Mat(x.clone()), Value::Mat(dx.clone())),
                Node::VarMinus => (Value::Mat(y.clone()), Value::Mat(dy.clone())),
                Node::Coord(side, i, j) => {
                    let (v, d) = match side {
                        Side::Plus => (x[(*i, *j)], dx[(*i, *j)]),
                        Side::Minus => (y[(*i, *j)], dy[(*i, *j)]),
                    };
                    (Value::Scalar(v), Value::Scalar(d))
                }
                Node::Add(a, b) => {
                    let (va, da) = &vals[*a];
                    let (vb, db) = &vals[*b];
                    (add_values(va, vb)?, add_values(da, db)?)
                }
                Node::Neg(a) => {
                    let (va, da) = &vals[*a];
                    (neg_value(va), neg_value(da))
                }
                Node::MatMul(a, b) => {
                    let (va, da) = &vals[*a];
                    let (vb, db) = &vals[*b];
                    let ma = va.as_mat()?;
                    let dma = da.as_mat()?;
                    let mb = vb.as_mat()?;
                    let dmb = db.as_mat()?;
                    (
                        Value::Mat(ma.mul(mb)),
                        Value::Mat(dma.mul(mb).add(&ma.mul(dmb))),
                    )
                }
                Node::ScalarMul(a, b) => {
                    let (va, da) = &vals[*a];
                    let (vb, db) = &vals[*b];
                    let s = va.as_scalar()?;
                    let ds = da.as_scalar()?;
                    match (vb, db) {
                        (Value::Scalar(t), Value::Scalar(dt)) => {
                            (Value::Scalar(s * t), Value::Scalar(ds * t + s * dt))
                        }
                        (Value::Mat(t), Value::Mat(dt)) => (
                            Value::Mat(t.scale(s)),
                            Value::Mat(t.scale(ds).add(&dt.scale(s))),
                        ),
                        _ => return Err(Error::Domain("inconsistent dual values".into())),
                    }
                }
                Node::Pow(a, e) => {
                    let (va, da) = &vals[*a];
                    let s = va.as_scalar()?;
                    let ds = da.as_scalar()?;
                    let v = s.powu(*e);
                    let d = if *e == 0 {
                        c(0.0, 0.0)
                    } else {
                        c(*e as f64, 0.0) * s.powu(*e - 1) * ds
                    };
                    (Value::Scalar(v), Value::Scalar(d))
                }
                Node::JordanDelta(a, b) => {
                    let (va, da) = &vals[*a];
                    let (vb, db) = &vals[*b];
                    let (v, d) = model.delta_dual(
                        va.as_mat()?,
                        vb.as_mat()?,
                        da.as_mat()?,
                        db.as_mat()?,
                    );
                    (Value::Scalar(v), Value::Scalar(d))
                }
                Node::LinearOp(op, a, side) => {
                    let (va, da) = &vals[*a];
                    (
                        Value::Mat(apply_linear(model, op, va.as_mat()?, *side)),
                        Value::Mat(apply_linear(model, op, da.as_mat()?, *side)),
                    )
                }
            };
            vals.push(pair);
        }
        Ok(vals.swap_remove(self.root))
    }
}

fn shift(n: Node, offset: usize) -> Node {
    match n {
        Node::Add(a, b) => Node::Add(a + offset, b + offset),
        Node::Neg(a) => Node::Neg(a + offset),
        Node::MatMul(a, b) => Node::MatMul(a + offset, b + offset),
        Node::ScalarMul(a, b) => Node::ScalarMul(a + offset, b + offset),
        Node::Pow(a, e) => Node::Pow(a + offset, e),
        Node::JordanDelta(a, b) => Node::JordanDelta(a + offset, b + offset),
        Node::LinearOp(op, a, side) => Node::LinearOp(op, a + offset, side),
        other => other,
    }
}

fn add_values(a: &Value, b: &Value) -> Result<Value> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x + y)),
        (Value::Mat(x), Value::Mat(y)) => Ok(Value::Mat(x.add(y))),
        _ => Err(Error::Domain("cannot add scalar and matrix values".into())),
    }
}

fn neg_value(a: &Value) -> Value {
    match a {
        Value::Scalar(x) => Value::Scalar(-x),
        Value::Mat(x) => Value::Mat(x.neg()),
    }
}

fn apply_linear(model: &MatrixModel, op: &CMat, v: &CMat, side: Side) -> CMat {
    let p = JordanPoint { value: v.clone(), side };
    let coords = model.flatten(&p);
    let mapped: Vec<C64> = (0..coords.len())
        .map(|i| (0..coords.len()).map(|j| op[(i, j)] * coords[j]).sum())
        .collect();
    model.unflatten(&mapped, side).value
}

/// The highest-weight polynomial p_m(y) = Δ₁^{m₁−m₂} ⋯ Δ_r^{m_r}, constant
/// along n⁺.
pub fn minor_poly(model: &MatrixModel, m: &Partition) -> PolyMap {
    let r = model.rank();
    assert_eq!(m.len(), r, "signature length must equal the model rank");
    let mut acc = PolyMap::one();
    for i in 0..r {
        let next = m.parts().get(i + 1).copied().unwrap_or(0);
        let e = m.parts()[i] - next;
        if e == 0 {
            continue;
        }
        acc = acc.scalar_mul(&PolyMap::minor(model, i + 1).pow(e));
    }
    acc
}

/// fₚ(z) = p(z, q(z)).
pub fn eval_section(model: &MatrixModel, p: &PolyMap, z: &JordanPoint) -> Result<Value> {
    let q = model.qmap(z)?;
    p.eval(model, &z.value, &q.value)
}

/// Default interpolation budget for `diagonal_degrees`.
pub const DEGREE_BUDGET: u32 = 16;

/// Per-frame-variable degrees of t ↦ p(t₁ē₁ + … + t_r ē_r), by exact Newton
/// interpolation at budget+1 integer nodes with the other variables held at
/// generic values (and x = 0). Exceeding the budget raises a budget error.
pub fn diagonal_degrees(model: &MatrixModel, p: &PolyMap, budget: u32) -> Result<Vec<u32>> {
    let r = model.rank();
    let (rx, cx) = model.shape(Side::Plus);
    let x0 = CMat::zeros(rx, cx);
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let anchor = |j: usize| 0.437 + 0.1731 * j as f64;
        let eval_at = |ti: f64| -> Result<Vec<C64>> {
            let t: Vec<f64> = (0..r).map(|j| if j == i { ti } else { anchor(j) }).collect();
            let y = model.conjugate(&model.frame_point(&t)).value;
            match p.eval(model, &x0, &y)? {
                Value::Scalar(s) => Ok(vec![s]),
                Value::Mat(m) => {
                    Ok(model.flatten(&JordanPoint { value: m, side: Side::Minus }))
                }
            }
        };
        let nodes: Vec<f64> = (0..=budget).map(|k| k as f64).collect();
        let samples: Vec<Vec<C64>> = nodes.iter().map(|&t| eval_at(t)).collect::<Result<_>>()?;
        let ncomp = samples[0].len();
        let mut degree = 0u32;
        for comp in 0..ncomp {
            let values: Vec<C64> = samples.iter().map(|s| s[comp]).collect();
            let coeffs = newton_coefficients(&nodes, &values);
            let scale = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
            let deg = coeffs
                .iter()
                .enumerate()
                .rev()
                .find(|(_, z)| z.norm() > tolerances::DEGREE_COEFF_REL * scale)
                .map(|(k, _)| k as u32)
                .unwrap_or(0);
            degree = degree.max(deg);
            // Budget check: the interpolant must reproduce an extra node.
            let extra_t = budget as f64 + 1.0;
            let predicted = horner_eval(&coeffs, extra_t);
            let actual = eval_at(extra_t)?[comp];
            let err = (predicted - actual).norm();
            if err > 1e-6 * actual.norm().max(scale) {
                return Err(Error::Budget(format!(
                    "degree in t_{} exceeds the interpolation budget {budget}",
                    i + 1
                )));
            }
        }
        out.push(degree);
    }
    Ok(out)
}

fn newton_coefficients(nodes: &[f64], values: &[C64]) -> Vec<C64> {
    // Divided differences, then expansion to monomial coefficients.
    let n = nodes.len();
    let mut dd: Vec<C64> = values.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (dd[k] - dd[k - 1]) / c(nodes[k] - nodes[k - level], 0.0);
        }
    }
    let mut coeffs = vec![c(0.0, 0.0); n];
    for k in (0..n).rev() {
        // coeffs ← coeffs·(X − nodes[k]) + dd[k]
        for idx in (1..n).rev() {
            let lower = coeffs[idx - 1];
            coeffs[idx] = lower + coeffs[idx] * c(-nodes[k], 0.0);
        }
        coeffs[0] = coeffs[0] * c(-nodes[k], 0.0) + dd[k];
    }
    coeffs
}

fn horner_eval(monomial_coeffs: &[C64], t: f64) -> C64 {
    let mut acc = c(0.0, 0.0);
    for k in (0..monomial_coeffs.len()).rev() {
        acc = acc * c(t, 0.0) + monomial_coeffs[k];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Family, HermitianType};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn model(f: Family) -> MatrixModel {
        MatrixModel::new(&HermitianType::new(f).unwrap()).unwrap()
    }

    #[test]
    fn minor_values_on_frame_diagonal() {
        for f in [
            Family::I { p: 2, q: 2 },
            Family::II { n: 4 },
            Family::III { n: 2 },
        ] {
            let m = model(f);
            let sig = Partition::new(vec![2, 1]).unwrap();
            let p = minor_poly(&m, &sig);
            let t = [1.7, 0.6];
            let y = m.conjugate(&m.frame_point(&t)).value;
            let (rx, cx) = m.shape(Side::Plus);
            let v = p.eval(&m, &CMat::zeros(rx, cx), &y).unwrap().as_scalar().unwrap();
            let expect: f64 = t[0].powi(2) * t[1];
            assert!((v - c(expect, 0.0)).norm() < 1e-10 * expect.abs().max(1.0), "{f}");
        }
    }

    #[test]
    fn minor_normalization_at_frame() {
        // Δᵢ(ε̄ᵢ) = 1.
        for f in [Family::I { p: 2, q: 3 }, Family::II { n: 5 }, Family::III { n: 3 }] {
            let m = model(f);
            for i in 1..=m.rank() {
                let p = PolyMap::minor(&m, i);
                let mut t = vec![1.0; i];
                t.resize(m.rank(), 0.0);
                let y = m.conjugate(&m.frame_point(&t)).value;
                let (rx, cx) = m.shape(Side::Plus);
                let v = p.eval(&m, &CMat::zeros(rx, cx), &y).unwrap().as_scalar().unwrap();
                assert!((v - c(1.0, 0.0)).norm() < 1e-12, "{f}, minor {i}");
            }
        }
    }

    #[test]
    fn zero_signature_is_constant_one() {
        let m = model(Family::I { p: 2, q: 2 });
        let p = minor_poly(&m, &Partition::zero(2));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let y = m.conjugate(&m.random_point(&mut rng, 1.0)).value;
        let v = p.eval(&m, &CMat::zeros(2, 2), &y).unwrap().as_scalar().unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn minor_singular_value_bound() {
        // |p_m(y)| ≤ ∏ σᵢ^{mᵢ} on random samples.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for f in [Family::I { p: 2, q: 2 }, Family::III { n: 2 }, Family::II { n: 4 }] {
            let m = model(f);
            let sig = Partition::new(vec![2, 1]).unwrap();
            let p = minor_poly(&m, &sig);
            for _ in 0..20 {
                let yplus = m.random_point(&mut rng, 1.0);
                let y = m.conjugate(&yplus);
                let (rx, cx) = m.shape(Side::Plus);
                let v = p.eval(&m, &CMat::zeros(rx, cx), &y.value).unwrap().as_scalar().unwrap();
                let polar = m.polar_decompose(&yplus).unwrap();
                let bound: f64 = polar
                    .t
                    .iter()
                    .zip(sig.parts())
                    .map(|(s, e)| s.powi(*e as i32))
                    .product();
                assert!(v.norm() <= bound * (1.0 + 1e-8), "{f}: |p_m| bound");
            }
        }
    }

    #[test]
    fn diagonal_degrees_examples() {
        let m = model(Family::I { p: 2, q: 2 });
        let sig = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(
            diagonal_degrees(&m, &minor_poly(&m, &sig), DEGREE_BUDGET).unwrap(),
            vec![3, 1]
        );
        assert_eq!(
            diagonal_degrees(&m, &PolyMap::one(), DEGREE_BUDGET).unwrap(),
            vec![0, 0]
        );
        // Δ_r² has degree 2 in every variable.
        let p = PolyMap::minor(&m, 2).pow(2);
        assert_eq!(diagonal_degrees(&m, &p, DEGREE_BUDGET).unwrap(), vec![2, 2]);
    }

    #[test]
    fn degrees_match_signature_across_families() {
        for f in [Family::II { n: 4 }, Family::III { n: 2 }] {
            let m = model(f);
            let sig = Partition::new(vec![2, 1]).unwrap();
            assert_eq!(
                diagonal_degrees(&m, &minor_poly(&m, &sig), DEGREE_BUDGET).unwrap(),
                vec![2, 1],
                "{f}"
            );
        }
    }

    #[test]
    fn budget_error_on_overflow() {
        let m = model(Family::I { p: 1, q: 1 });
        let p = PolyMap::minor(&m, 1).pow(7);
        assert!(matches!(diagonal_degrees(&m, &p, 5), Err(Error::Budget(_))));
    }

    #[test]
    fn dual_derivative_matches_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = model(Family::I { p: 2, q: 2 });
        let sig = Partition::new(vec![2, 1]).unwrap();
        let p = minor_poly(&m, &sig).scalar_mul(&PolyMap::delta_xy());
        let x = m.random_point(&mut rng, 0.7).value;
        let y = m.conjugate(&m.random_point(&mut rng, 0.7)).value;
        let dx = m.random_point(&mut rng, 1.0).value;
        let dy = m.conjugate(&m.random_point(&mut rng, 1.0)).value;
        let (_, grad) = p.eval_dual(&m, &x, &y, &dx, &dy).unwrap();
        let h = 1e-6;
        let vp = p
            .eval(&m, &x.add(&dx.scale(c(h, 0.0))), &y.add(&dy.scale(c(h, 0.0))))
            .unwrap()
            .as_scalar()
            .unwrap();
        let vm = p
            .eval(&m, &x.sub(&dx.scale(c(h, 0.0))), &y.sub(&dy.scale(c(h, 0.0))))
            .unwrap()
            .as_scalar()
            .unwrap();
        let fd = (vp - vm) / c(2.0 * h, 0.0);
        assert!((grad.as_scalar().unwrap() - fd).norm() < 1e-7);
    }

    #[test]
    fn type_ii_dual_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let m = model(Family::II { n: 4 });
        let p = minor_poly(&m, &Partition::new(vec![2, 1]).unwrap());
        let x = CMat::zeros(4, 4);
        let y = m.conjugate(&m.random_point(&mut rng, 0.8)).value;
        let dy = m.conjugate(&m.random_point(&mut rng, 1.0)).value;
        let dx = CMat::zeros(4, 4);
        let (_, grad) = p.eval_dual(&m, &x, &y, &dx, &dy).unwrap();
        let h = 1e-6;
        let vp = p.eval(&m, &x, &y.add(&dy.scale(c(h, 0.0)))).unwrap().as_scalar().unwrap();
        let vm = p.eval(&m, &x, &y.sub(&dy.scale(c(h, 0.0)))).unwrap().as_scalar().unwrap();
        let fd = (vp - vm) / c(2.0 * h, 0.0);
        assert!((grad.as_scalar().unwrap() - fd).norm() < 1e-7);
    }

    #[test]
    fn eval_section_examples() {
        // p = 1 is the constant section.
        let m = model(Family::I { p: 1, q: 1 });
        let z = m.point(CMat::from_fn(1, 1, |_, _| c(0.4, -0.2)), Side::Plus).unwrap();
        let one = eval_section(&m, &PolyMap::one(), &z).unwrap().as_scalar().unwrap();
        assert!((one - c(1.0, 0.0)).norm() < 1e-15);

        // p = p_(1): f(z) = z̄ / (1 + |z|²).
        let p = minor_poly(&m, &Partition::new(vec![1]).unwrap());
        let v = eval_section(&m, &p, &z).unwrap().as_scalar().unwrap();
        let zc = c(0.4, -0.2);
        assert!((v - zc.conj() / (1.0 + zc.norm_sqr())).norm() < 1e-14);

        // p depending only on x is holomorphic: q never enters.
        let px = PolyMap::coordinate(Side::Plus, 0, 0).pow(3);
        let v = eval_section(&m, &px, &z).unwrap().as_scalar().unwrap();
        assert!((v - zc.powu(3)).norm() < 1e-15);
    }
}
