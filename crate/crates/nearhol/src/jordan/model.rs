//! Complex matrix models of the classical Jordan pairs: rectangular (type I),
//! antisymmetric (type II) and symmetric (type III) matrices, with triple
//! products {x,y,z} = xyz + zyx, Bergman operators B(x,y)w = (1−xy)w(1−yx),
//! the Jordan determinant, quasi-inverses, and type-adapted polar
//! decompositions.
//!
//! The frame eᵢ uses diagonal matrix units (2×2 antisymmetric blocks for type
//! II); it realizes the strongly orthogonal torus up to a fixed K-rotation,
//! and D_{eᵢ,ēᵢ} realizes the coroot H_{γᵢ} on both sides.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, C64};
use crate::rootdata::{Family, HermitianType};
use crate::tolerances;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// An element of n⁺ or n⁻ in the matrix realization.
#[derive(Clone, Debug)]
pub struct JordanPoint {
    pub value: CMat,
    pub side: Side,
}

/// K-witness of a polar decomposition: the unitaries realizing the model's
/// K-action.
#[derive(Clone, Debug)]
pub enum KWitness {
    /// Type I: z ↦ u z vᴴ.
    Pair(CMat, CMat),
    /// Types II and III: z ↦ u z uᵀ.
    Single(CMat),
}

#[derive(Clone, Debug)]
pub struct Polar {
    pub k: KWitness,
    /// Frame parameters t₁ ≥ … ≥ t_r ≥ 0 (paired singular values collapse
    /// for type II).
    pub t: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub space: HermitianType,
    frame: Vec<CMat>,
    basis_plus: Vec<CMat>,
    basis_minus: Vec<CMat>,
    /// Pf(S(0,0)) normalizing the type II determinant.
    pf0: C64,
}

impl MatrixModel {
    pub fn new(space: &HermitianType) -> Result<Self> {
        let (rows, cols) = match space.family {
            Family::I { p, q } => (p as usize, q as usize),
            Family::II { n } | Family::III { n } => (n as usize, n as usize),
            other => {
                return Err(Error::Unsupported(format!(
                    "no matrix model for {other}; only types I, II, III are realized"
                )))
            }
        };
        let r = space.rank;
        let mut frame = Vec::with_capacity(r);
        let mut basis_plus = Vec::new();
        match space.family {
            Family::I { .. } => {
                for i in 0..r {
                    frame.push(CMat::from_fn(rows, cols, |a, b| {
                        if (a, b) == (i, i) { c(1.0, 0.0) } else { c(0.0, 0.0) }
                    }));
                }
                for i in 0..rows {
                    for j in 0..cols {
                        basis_plus.push(CMat::from_fn(rows, cols, |a, b| {
                            if (a, b) == (i, j) { c(1.0, 0.0) } else { c(0.0, 0.0) }
                        }));
                    }
                }
            }
            Family::II { .. } => {
                for i in 0..r {
                    frame.push(CMat::from_fn(rows, cols, |a, b| {
                        if (a, b) == (2 * i, 2 * i + 1) {
                            c(1.0, 0.0)
                        } else if (a, b) == (2 * i + 1, 2 * i) {
                            c(-1.0, 0.0)
                        } else {
                            c(0.0, 0.0)
                        }
                    }));
                }
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..rows {
                    for j in (i + 1)..cols {
                        basis_plus.push(CMat::from_fn(rows, cols, |a, b| {
                            if (a, b) == (i, j) {
                                c(s, 0.0)
                            } else if (a, b) == (j, i) {
                                c(-s, 0.0)
                            } else {
                                c(0.0, 0.0)
                            }
                        }));
                    }
                }
            }
            Family::III { .. } => {
                for i in 0..r {
                    frame.push(CMat::from_fn(rows, cols, |a, b| {
                        if (a, b) == (i, i) { c(1.0, 0.0) } else { c(0.0, 0.0) }
                    }));
                }
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..rows {
                    for j in i..cols {
                        basis_plus.push(CMat::from_fn(rows, cols, |a, b| {
                            if i == j {
                                if (a, b) == (i, i) { c(1.0, 0.0) } else { c(0.0, 0.0) }
                            } else if (a, b) == (i, j) || (a, b) == (j, i) {
                                c(s, 0.0)
                            } else {
                                c(0.0, 0.0)
                            }
                        }));
                    }
                }
            }
            _ => unreachable!(),
        }
        if basis_plus.len() != space.dim_nplus {
            return Err(Error::Integrity("matrix-model dimension mismatch".into()));
        }
        let basis_minus: Vec<CMat> = basis_plus.iter().map(|b| b.adjoint()).collect();
        let pf0 = if matches!(space.family, Family::II { .. }) {
            let z = CMat::zeros(rows, cols);
            linalg::pfaffian(&pair_pfaffian_matrix(&z, &z))
        } else {
            c(1.0, 0.0)
        };
        Ok(MatrixModel { space: *space, frame, basis_plus, basis_minus, pf0 })
    }

    pub fn rank(&self) -> usize {
        self.space.rank
    }

    pub fn genus(&self) -> u32 {
        self.space.genus
    }

    pub fn dim(&self) -> usize {
        self.space.dim_nplus
    }

    pub fn shape(&self, side: Side) -> (usize, usize) {
        let (r, c) = match self.space.family {
            Family::I { p, q } => (p as usize, q as usize),
            Family::II { n } | Family::III { n } => (n as usize, n as usize),
            _ => unreachable!(),
        };
        match side {
            Side::Plus => (r, c),
            Side::Minus => (c, r),
        }
    }

    pub fn frame(&self, i: usize) -> &CMat {
        &self.frame[i]
    }

    /// εᵢ = e₁ + … + eᵢ (1-based count).
    pub fn frame_sum(&self, i: usize) -> CMat {
        let (rows, cols) = self.shape(Side::Plus);
        let mut acc = CMat::zeros(rows, cols);
        for e in &self.frame[..i] {
            acc = acc.add(e);
        }
        acc
    }

    pub fn basis(&self, side: Side) -> &[CMat] {
        match side {
            Side::Plus => &self.basis_plus,
            Side::Minus => &self.basis_minus,
        }
    }

    /// Checked constructor for points: shape and structural symmetry.
    pub fn point(&self, value: CMat, side: Side) -> Result<JordanPoint> {
        let (rows, cols) = self.shape(side);
        if (value.rows, value.cols) != (rows, cols) {
            return Err(Error::Domain(format!(
                "point shape {}x{} does not match model side",
                value.rows, value.cols
            )));
        }
        let scale = value.max_abs().max(1.0);
        let residual = match self.space.family {
            Family::II { .. } => value.add(&value.transpose()).max_abs(),
            Family::III { .. } => value.sub(&value.transpose()).max_abs(),
            _ => 0.0,
        };
        if residual > tolerances::POINT_SHAPE_ABS * scale {
            return Err(Error::Domain(format!(
                "structural residual {residual:.2e} exceeds tolerance"
            )));
        }
        Ok(JordanPoint { value, side })
    }

    /// z ↦ z̄, the conjugation n⁺ → n⁻ (entrywise conjugate composed with the
    /// transpose identification).
    pub fn conjugate(&self, p: &JordanPoint) -> JordanPoint {
        JordanPoint { value: p.value.adjoint(), side: p.side.flip() }
    }

    /// Triple product {x, y, z} = xyz + zyx for x, z on one side and y on the
    /// other.
    pub fn triple(&self, x: &JordanPoint, y: &JordanPoint, z: &JordanPoint) -> Result<JordanPoint> {
        if x.side != z.side || y.side != x.side.flip() {
            return Err(Error::Domain("triple product requires sides (s, -s, s)".into()));
        }
        let v = triple_raw(&x.value, &y.value, &z.value);
        Ok(JordanPoint { value: v, side: x.side })
    }

    /// Q_x y = x y x.
    pub fn quadratic(&self, x: &JordanPoint, y: &JordanPoint) -> Result<JordanPoint> {
        if y.side != x.side.flip() {
            return Err(Error::Domain("quadratic operator requires opposite sides".into()));
        }
        Ok(JordanPoint { value: x.value.mul(&y.value).mul(&x.value), side: x.side })
    }

    /// D_{x,y} z = {x, y, z}.
    pub fn dop(&self, x: &JordanPoint, y: &JordanPoint, z: &JordanPoint) -> Result<JordanPoint> {
        self.triple(x, y, z)
    }

    /// B(x,y) w = (1 − xy) w (1 − yx), applied to w on the side of x.
    pub fn bergman_apply(&self, x: &CMat, y: &CMat, w: &CMat) -> CMat {
        let left = CMat::eye(x.rows).sub(&x.mul(y));
        let right = CMat::eye(y.rows).sub(&y.mul(x));
        left.mul(w).mul(&right)
    }

    /// Dense matrix of B(x,y) on the trace-orthonormal basis of the side of x.
    pub fn bergman_matrix(&self, x: &JordanPoint, y: &JordanPoint) -> Result<CMat> {
        if y.side != x.side.flip() {
            return Err(Error::Domain("Bergman operator requires opposite sides".into()));
        }
        let basis = self.basis(x.side);
        let dim = basis.len();
        let mut m = CMat::zeros(dim, dim);
        for (k, b) in basis.iter().enumerate() {
            let image = self.bergman_apply(&x.value, &y.value, b);
            for (j, bj) in basis.iter().enumerate() {
                m[(j, k)] = image.frobenius_inner(bj);
            }
        }
        Ok(m)
    }

    /// Coordinates of a point in the trace-orthonormal basis of its side.
    pub fn flatten(&self, p: &JordanPoint) -> Vec<C64> {
        self.basis(p.side).iter().map(|b| p.value.frobenius_inner(b)).collect()
    }

    pub fn unflatten(&self, coords: &[C64], side: Side) -> JordanPoint {
        let (rows, cols) = self.shape(side);
        let mut acc = CMat::zeros(rows, cols);
        for (c_k, b) in coords.iter().zip(self.basis(side)) {
            acc = acc.add(&b.scale(*c_k));
        }
        JordanPoint { value: acc, side }
    }

    /// Jordan pair determinant Δ(x, y) normalized by Δ(0, ·) = 1. For types I
    /// and III this is det(1 − xy); for type II its Pfaffian square root.
    pub fn delta(&self, x: &JordanPoint, y: &JordanPoint) -> Result<C64> {
        if x.side != Side::Plus || y.side != Side::Minus {
            return Err(Error::Domain("Δ takes (n⁺, n⁻) arguments".into()));
        }
        Ok(self.delta_raw(&x.value, &y.value))
    }

    pub(crate) fn delta_raw(&self, x: &CMat, y: &CMat) -> C64 {
        match self.space.family {
            Family::II { .. } => {
                linalg::pfaffian(&pair_pfaffian_matrix(x, y)) / self.pf0
            }
            _ => {
                let m = CMat::eye(x.rows).sub(&x.mul(y));
                linalg::lu_det(&m)
            }
        }
    }

    /// Δ with a forward-mode directional derivative along (dx, dy).
    pub(crate) fn delta_dual(&self, x: &CMat, y: &CMat, dx: &CMat, dy: &CMat) -> (C64, C64) {
        match self.space.family {
            Family::II { .. } => {
                let s = pair_pfaffian_matrix(x, y);
                let ds = pair_pfaffian_matrix_dual(dx, dy);
                let (v, dv) = linalg::pfaffian_dual(&s, &ds);
                (v / self.pf0, dv / self.pf0)
            }
            _ => {
                let m = CMat::eye(x.rows).sub(&x.mul(y));
                let dm = x.mul(dy).add(&dx.mul(y)).neg();
                det_dual(&m, &dm)
            }
        }
    }

    /// The i-th Jordan minor Δᵢ(y) = Δ(εᵢ, ε̄ᵢ − y) at a point, i ≥ 1.
    pub fn minor(&self, y: &JordanPoint, i: usize) -> Result<C64> {
        if y.side != Side::Minus || i == 0 || i > self.rank() {
            return Err(Error::Domain("minor index out of range or wrong side".into()));
        }
        let eps = self.frame_sum(i);
        let arg = eps.adjoint().sub(&y.value);
        Ok(self.delta_raw(&eps, &arg))
    }

    /// Quasi-inverse x^y = B(x,y)⁻¹(x − Q_x y) = (1 − xy)⁻¹ x.
    pub fn quasi_inverse(&self, x: &JordanPoint, y: &JordanPoint) -> Result<JordanPoint> {
        if y.side != x.side.flip() {
            return Err(Error::Domain("quasi-inverse requires opposite sides".into()));
        }
        let m = CMat::eye(x.value.rows).sub(&x.value.mul(&y.value));
        let v = linalg::solve(&m, &x.value)
            .ok_or_else(|| Error::Singular("Bergman operator is singular".into()))?;
        Ok(JordanPoint { value: v, side: x.side })
    }

    /// q(z) = z̄^{−z} = (1 + z̄ z)⁻¹ z̄ ∈ n⁻.
    pub fn qmap(&self, z: &JordanPoint) -> Result<JordanPoint> {
        if z.side != Side::Plus {
            return Err(Error::Domain("q-map takes n⁺ points".into()));
        }
        let zbar = z.value.adjoint();
        let m = CMat::eye(zbar.rows).add(&zbar.mul(&z.value));
        let v = linalg::solve(&m, &zbar)
            .ok_or_else(|| Error::Singular("1 + z̄z is singular".into()))?;
        Ok(JordanPoint { value: v, side: Side::Minus })
    }

    /// z_t = Σ tᵢ eᵢ.
    pub fn frame_point(&self, t: &[f64]) -> JordanPoint {
        assert!(t.len() <= self.rank());
        let (rows, cols) = self.shape(Side::Plus);
        let mut acc = CMat::zeros(rows, cols);
        for (ti, e) in t.iter().zip(&self.frame) {
            acc = acc.add(&e.scale(c(*ti, 0.0)));
        }
        JordanPoint { value: acc, side: Side::Plus }
    }

    pub fn apply_k_plus(&self, k: &KWitness, z: &CMat) -> CMat {
        match k {
            KWitness::Pair(u, v) => u.mul(z).mul(&v.adjoint()),
            KWitness::Single(u) => u.mul(z).mul(&u.transpose()),
        }
    }

    pub fn apply_k_minus(&self, k: &KWitness, w: &CMat) -> CMat {
        match k {
            KWitness::Pair(u, v) => v.mul(w).mul(&u.adjoint()),
            KWitness::Single(u) => u.conj().mul(w).mul(&u.adjoint()),
        }
    }

    /// Polar decomposition z = k·z_t with t descending; the witness is
    /// checked to reconstruct z within tolerance.
    pub fn polar_decompose(&self, z: &JordanPoint) -> Result<Polar> {
        if z.side != Side::Plus {
            return Err(Error::Domain("polar decomposition takes n⁺ points".into()));
        }
        let polar = match self.space.family {
            Family::I { .. } => {
                let (u, s, v) = linalg::svd(&z.value);
                Polar { k: KWitness::Pair(u, v), t: s[..self.rank()].to_vec() }
            }
            Family::III { .. } => takagi(&z.value)?,
            Family::II { .. } => youla(&z.value, self.rank())?,
            _ => unreachable!(),
        };
        let rebuilt = self.apply_k_plus(&polar.k, &self.frame_point(&polar.t).value);
        let scale = z.value.fro_norm();
        let err = rebuilt.sub(&z.value).fro_norm();
        if err > tolerances::POLAR_RECONSTRUCT_REL * scale.max(1e-12) {
            return Err(Error::Integrity(format!(
                "polar reconstruction residual {err:.2e} at scale {scale:.2e}"
            )));
        }
        Ok(polar)
    }

    /// Haar-distributed K-element (QR of complex Ginibre samples).
    pub fn haar_k(&self, rng: &mut ChaCha8Rng) -> KWitness {
        match self.space.family {
            Family::I { .. } => {
                let (p, q) = self.shape(Side::Plus);
                KWitness::Pair(haar_unitary(p, rng), haar_unitary(q, rng))
            }
            _ => {
                let (n, _) = self.shape(Side::Plus);
                KWitness::Single(haar_unitary(n, rng))
            }
        }
    }

    /// Random bounded sample of n⁺ with the model's structural symmetry.
    pub fn random_point(&self, rng: &mut ChaCha8Rng, scale: f64) -> JordanPoint {
        let (rows, cols) = self.shape(Side::Plus);
        let g = CMat::from_fn(rows, cols, |_, _| {
            c(scale * (rng.gen::<f64>() - 0.5), scale * (rng.gen::<f64>() - 0.5))
        });
        let v = match self.space.family {
            Family::II { .. } => g.sub(&g.transpose()).scale(c(0.5, 0.0)),
            Family::III { .. } => g.add(&g.transpose()).scale(c(0.5, 0.0)),
            _ => g,
        };
        JordanPoint { value: v, side: Side::Plus }
    }
}

pub(crate) fn triple_raw(x: &CMat, y: &CMat, z: &CMat) -> CMat {
    x.mul(y).mul(z).add(&z.mul(y).mul(x))
}

/// det with a forward-mode derivative via the adjugate rule
/// d det(M)[dM] = tr(adj(M) · dM).
pub(crate) fn det_dual(m: &CMat, dm: &CMat) -> (C64, C64) {
    let n = m.rows;
    let det = linalg::lu_det(m);
    let mut grad = c(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            // adj(M)_{ji} = (−1)^{i+j} det(minor_ij)
            let minor = CMat::from_fn(n - 1, n - 1, |a, b| {
                let ai = if a < i { a } else { a + 1 };
                let bj = if b < j { b } else { b + 1 };
                m[(ai, bj)]
            });
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            let cof = linalg::lu_det(&minor) * c(sign, 0.0);
            grad += cof * dm[(i, j)];
        }
    }
    (det, grad)
}

/// The antisymmetric block matrix [[x, −I], [I, −y]] whose Pfaffian squares
/// to det(1 − xy).
fn pair_pfaffian_matrix(x: &CMat, y: &CMat) -> CMat {
    let n = x.rows;
    CMat::from_fn(2 * n, 2 * n, |i, j| {
        if i < n && j < n {
            x[(i, j)]
        } else if i >= n && j >= n {
            -y[(i - n, j - n)]
        } else if i < n && j >= n {
            if j - n == i { c(-1.0, 0.0) } else { c(0.0, 0.0) }
        } else if i - n == j {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

fn pair_pfaffian_matrix_dual(dx: &CMat, dy: &CMat) -> CMat {
    let n = dx.rows;
    CMat::from_fn(2 * n, 2 * n, |i, j| {
        if i < n && j < n {
            dx[(i, j)]
        } else if i >= n && j >= n {
            -dy[(i - n, j - n)]
        } else {
            c(0.0, 0.0)
        }
    })
}

fn haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    use rand_distr::StandardNormal;
    let g = CMat::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re / 2f64.sqrt(), im / 2f64.sqrt())
    });
    linalg::qr_unitary(&g)
}

/// Takagi factorization S = U Σ Uᵀ of a complex symmetric matrix via the
/// real symmetric embedding of the con-eigenvalue problem S·conj(u) = σu.
fn takagi(s: &CMat) -> Result<Polar> {
    let n = s.rows;
    let shat = CMat::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, ii) = (i / n, i % n);
        let (bj, jj) = (j / n, j % n);
        let v = s[(ii, jj)];
        match (bi, bj) {
            (0, 0) => c(v.re, 0.0),
            (0, 1) => c(v.im, 0.0),
            (1, 0) => c(v.im, 0.0),
            _ => c(-v.re, 0.0),
        }
    });
    let (vals, vecs) = linalg::hermitian_eigen(&shat);
    let scale = vals.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(1e-300);
    // Descending nonnegative half of the ± spectrum.
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap());
    let mut cols: Vec<Vec<C64>> = Vec::new();
    let mut sigma: Vec<f64> = Vec::new();
    for &idx in &order {
        if cols.len() == n {
            break;
        }
        if vals[idx] < -1e-10 * scale {
            break;
        }
        let mut u: Vec<C64> = (0..n).map(|i| c(vecs[(i, idx)].re, vecs[(i + n, idx)].re)).collect();
        // Complex Gram-Schmidt keeps one of each conjugate pair in the
        // (possibly zero) eigenspace.
        for existing in &cols {
            let inner: C64 = existing.iter().zip(&u).map(|(e, x)| e.conj() * x).sum();
            for i in 0..n {
                u[i] -= inner * existing[i];
            }
        }
        let norm: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 0.5 {
            continue;
        }
        for z in &mut u {
            *z /= norm;
        }
        cols.push(u);
        sigma.push(vals[idx].max(0.0));
    }
    if cols.len() != n {
        return Err(Error::Integrity("Takagi basis incomplete".into()));
    }
    let u = CMat::from_fn(n, n, |i, j| cols[j][i]);
    Ok(Polar { k: KWitness::Single(u), t: sigma })
}

/// Youla normal form A = U (Σ t_i J₂ ⊕ 0) Uᵀ of a complex antisymmetric
/// matrix, built from the eigenspaces of A·Aᴴ with partners −A·conj(u)/t.
fn youla(a: &CMat, rank: usize) -> Result<Polar> {
    let n = a.rows;
    let h = a.mul(&a.adjoint());
    let (vals, vecs) = linalg::hermitian_eigen(&h);
    let scale = vals.iter().fold(0.0f64, |x, &y| x.max(y.abs())).max(1e-300);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| vals[y].partial_cmp(&vals[x]).unwrap());
    let mut cols: Vec<Vec<C64>> = Vec::new();
    let mut t: Vec<f64> = Vec::new();
    let gs = |u: &mut Vec<C64>, cols: &Vec<Vec<C64>>| -> f64 {
        for existing in cols {
            let inner: C64 = existing.iter().zip(u.iter()).map(|(e, x)| e.conj() * x).sum();
            for i in 0..existing.len() {
                u[i] -= inner * existing[i];
            }
        }
        let norm: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for z in u.iter_mut() {
                *z /= norm;
            }
        }
        norm
    };
    for &idx in &order {
        // Eigenvalues of A·Aᴴ at noise level are zero modes of A.
        if vals[idx] <= 1e-13 * scale {
            break;
        }
        let mut u: Vec<C64> = vecs.col(idx);
        if gs(&mut u, &cols) < 0.5 {
            continue; // consumed as a partner of an earlier column
        }
        let ti = vals[idx].max(0.0).sqrt();
        // Partner column: A·conj(u) = −t·u'.
        let conj_u: Vec<C64> = u.iter().map(|z| z.conj()).collect();
        let mut up: Vec<C64> = (0..n)
            .map(|i| -(0..n).map(|j| a[(i, j)] * conj_u[j]).sum::<C64>() / c(ti, 0.0))
            .collect();
        cols.push(u);
        if gs(&mut up, &cols) < 0.5 {
            return Err(Error::Integrity("Youla partner column collapsed".into()));
        }
        cols.push(up);
        t.push(ti);
    }
    // Complete with the con-kernel (A·conj(u) = 0 on the zero eigenspace).
    for &idx in order.iter().rev() {
        if cols.len() == n {
            break;
        }
        let mut u: Vec<C64> = vecs.col(idx);
        if gs(&mut u, &cols) >= 0.5 {
            cols.push(u);
        }
    }
    if cols.len() != n {
        return Err(Error::Integrity("Youla basis incomplete".into()));
    }
    let u = CMat::from_fn(n, n, |i, j| cols[j][i]);
    t.resize(rank, 0.0);
    Ok(Polar { k: KWitness::Single(u), t })
}
