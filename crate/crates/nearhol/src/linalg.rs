//! Small dense complex matrices and the numerical kernels the Jordan models
//! need: LU determinants and solves, Hermitian eigendecompositions and
//! operator powers (cyclic Jacobi), one-sided Jacobi SVD, modified
//! Gram–Schmidt QR, and Pfaffians of antisymmetric matrices.
//!
//! Matrices here are tiny (dimension ≲ 30), where cyclic Jacobi converges in
//! a handful of sweeps and to high relative accuracy.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;

pub type C64 = Complex64;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Clone, PartialEq, Debug)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn eye(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn neg(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)])
    }

    pub fn scale(&self, s: C64) -> CMat {
        CMat::from_fn(self.rows, self.cols, |i, j| s * self[(i, j)])
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Hermitian inner product ⟨self, other⟩ = tr(self · otherᴴ).
    pub fn frobenius_inner(&self, other: &CMat) -> C64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant by LU with partial pivoting.
pub fn lu_det(a: &CMat) -> C64 {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut det = C64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n).max_by(|&i, &j| {
            m[(i, k)].norm().partial_cmp(&m[(j, k)].norm()).unwrap()
        });
        let p = pivot.unwrap();
        if m[(p, k)].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if p != k {
            for j in 0..n {
                let t = m[(p, j)];
                m[(p, j)] = m[(k, j)];
                m[(k, j)] = t;
            }
            det = -det;
        }
        det *= m[(k, k)];
        for i in (k + 1)..n {
            let f = m[(i, k)] / m[(k, k)];
            for j in k..n {
                let v = m[(k, j)];
                m[(i, j)] -= f * v;
            }
        }
    }
    det
}

/// Solves a · x = b by LU with partial pivoting; `None` if a is singular.
pub fn solve(a: &CMat, b: &CMat) -> Option<CMat> {
    assert!(a.is_square() && a.rows == b.rows);
    let n = a.rows;
    let nrhs = b.cols;
    let mut m = a.clone();
    let mut x = b.clone();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| {
            m[(i, k)].norm().partial_cmp(&m[(j, k)].norm()).unwrap()
        })?;
        if m[(p, k)].norm() < 1e-300 {
            return None;
        }
        if p != k {
            for j in 0..n {
                let t = m[(p, j)];
                m[(p, j)] = m[(k, j)];
                m[(k, j)] = t;
            }
            for j in 0..nrhs {
                let t = x[(p, j)];
                x[(p, j)] = x[(k, j)];
                x[(k, j)] = t;
            }
        }
        for i in (k + 1)..n {
            let f = m[(i, k)] / m[(k, k)];
            for j in k..n {
                let v = m[(k, j)];
                m[(i, j)] -= f * v;
            }
            for j in 0..nrhs {
                let v = x[(k, j)];
                x[(i, j)] -= f * v;
            }
        }
    }
    for k in (0..n).rev() {
        for i in (k + 1)..n {
            let f = m[(k, i)];
            for j in 0..nrhs {
                let v = x[(i, j)];
                x[(k, j)] -= f * v;
            }
        }
        for j in 0..nrhs {
            x[(k, j)] /= m[(k, k)];
        }
    }
    Some(x)
}

pub fn inverse(a: &CMat) -> Option<CMat> {
    solve(a, &CMat::eye(a.rows))
}

/// Cyclic complex Jacobi eigendecomposition of a Hermitian matrix.
/// Returns eigenvalues in ascending order and the unitary of eigenvectors
/// (columns), so a = v · diag(λ) · vᴴ.
pub fn hermitian_eigen(a: &CMat) -> (Vec<f64>, CMat) {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut v = CMat::eye(n);
    let scale = m.fro_norm().max(1e-300);
    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let abs = apq.norm();
                if abs <= 1e-18 * scale {
                    continue;
                }
                let phase = apq / abs;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let sth = t * cth;
                // Column rotation: cols p,q of M and V.
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * cth - akq * sth * phase.conj();
                    m[(k, q)] = akp * sth * phase + akq * cth;
                }
                // Row rotation (adjoint side).
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk * cth - aqk * sth * phase;
                    m[(q, k)] = apk * sth * phase.conj() + aqk * cth;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cth - vkq * sth * phase.conj();
                    v[(k, q)] = vkp * sth * phase + vkq * cth;
                }
            }
        }
    }
    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (m[(i, i)].re, i)).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let vals: Vec<f64> = pairs.iter().map(|(l, _)| *l).collect();
    let vecs = CMat::from_fn(n, n, |i, j| v[(i, pairs[j].1)]);
    (vals, vecs)
}

/// f(A) for Hermitian positive semidefinite A via the eigendecomposition.
/// Negative eigenvalues beyond tolerance raise an integrity error.
pub fn hermitian_power(a: &CMat, exponent: f64) -> Result<CMat> {
    let (vals, vecs) = hermitian_eigen(a);
    let scale = vals.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1e-300);
    let mut d = CMat::zeros(a.rows, a.rows);
    for (i, &l) in vals.iter().enumerate() {
        if l < -1e-10 * scale {
            return Err(Error::Integrity(format!(
                "operator is not positive semidefinite (eigenvalue {l:.3e})"
            )));
        }
        if l <= 0.0 && exponent < 0.0 {
            return Err(Error::Singular("negative power of a singular operator".into()));
        }
        d[(i, i)] = C64::new(l.max(0.0).powf(exponent), 0.0);
    }
    Ok(vecs.mul(&d).mul(&vecs.adjoint()))
}

/// One-sided Jacobi SVD: a = u · Σ · vᴴ with full square unitaries and
/// singular values in descending order.
pub fn svd(a: &CMat) -> (CMat, Vec<f64>, CMat) {
    if a.rows < a.cols {
        let (u, s, v) = svd(&a.adjoint());
        return (v, s, u);
    }
    let m = a.rows;
    let n = a.cols;
    let mut b = a.clone();
    let mut v = CMat::eye(n);
    let scale = a.fro_norm().max(1e-300);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let bp = b.col(p);
                let bq = b.col(q);
                let hpp: f64 = bp.iter().map(|z| z.norm_sqr()).sum();
                let hqq: f64 = bq.iter().map(|z| z.norm_sqr()).sum();
                let hpq: C64 = bp.iter().zip(&bq).map(|(x, y)| x.conj() * y).sum();
                if hpq.norm() <= 1e-15 * (hpp.sqrt() * hqq.sqrt()).max(1e-30 * scale * scale) {
                    continue;
                }
                rotated = true;
                let abs = hpq.norm();
                let phase = hpq / abs;
                let tau = (hqq - hpp) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let sth = t * cth;
                for k in 0..m {
                    let bkp = b[(k, p)];
                    let bkq = b[(k, q)];
                    b[(k, p)] = bkp * cth - bkq * sth * phase.conj();
                    b[(k, q)] = bkp * sth * phase + bkq * cth;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cth - vkq * sth * phase.conj();
                    v[(k, q)] = vkp * sth * phase + vkq * cth;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigma: Vec<(f64, usize)> = (0..n)
        .map(|j| ((0..m).map(|i| b[(i, j)].norm_sqr()).sum::<f64>().sqrt(), j))
        .collect();
    sigma.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let smax = sigma.first().map(|(s, _)| *s).unwrap_or(0.0).max(1e-300);
    let mut u = CMat::zeros(m, m);
    let mut ucols: Vec<Vec<C64>> = Vec::new();
    for (s, j) in &sigma {
        if *s > 1e-14 * smax {
            let col: Vec<C64> = (0..m).map(|i| b[(i, *j)] / *s).collect();
            ucols.push(col);
        }
    }
    // Complete the unitary with Gram-Schmidt against the canonical basis.
    let mut k = 0;
    while ucols.len() < m && k < m {
        let mut cand: Vec<C64> = (0..m).map(|i| if i == k { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect();
        for existing in &ucols {
            let inner: C64 = existing.iter().zip(&cand).map(|(e, c)| e.conj() * c).sum();
            for i in 0..m {
                cand[i] -= inner * existing[i];
            }
        }
        let norm: f64 = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for z in &mut cand {
                *z /= norm;
            }
            ucols.push(cand);
        }
        k += 1;
    }
    for (j, col) in ucols.iter().enumerate() {
        for i in 0..m {
            u[(i, j)] = col[i];
        }
    }
    let vperm = CMat::from_fn(n, n, |i, j| v[(i, sigma[j].1)]);
    (u, sigma.into_iter().map(|(s, _)| s).collect(), vperm)
}

/// Unitary factor of the QR decomposition by modified Gram–Schmidt. Applied
/// to a complex Ginibre sample this gives a Haar-distributed unitary (the
/// MGS diagonal of R is real positive).
pub fn qr_unitary(a: &CMat) -> CMat {
    assert!(a.is_square());
    let n = a.rows;
    let mut q: Vec<Vec<C64>> = (0..n).map(|j| a.col(j)).collect();
    for j in 0..n {
        for i in 0..j {
            let inner: C64 = q[i].iter().zip(&q[j]).map(|(x, y)| x.conj() * y).sum();
            for k in 0..n {
                let v = q[i][k];
                q[j][k] -= inner * v;
            }
        }
        let norm: f64 = q[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 1e-12, "rank-deficient sample in QR");
        for z in &mut q[j] {
            *z /= norm;
        }
    }
    CMat::from_fn(n, n, |i, j| q[j][i])
}

/// Pfaffian of an antisymmetric matrix by memoized row expansion, together
/// with a forward-mode directional derivative along `da`.
pub fn pfaffian_dual(a: &CMat, da: &CMat) -> (C64, C64) {
    assert!(a.is_square() && a.rows % 2 == 0);
    let n = a.rows;
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo: HashMap<u32, (C64, C64)> = HashMap::new();
    pf_rec(a, da, full, &mut memo)
}

pub fn pfaffian(a: &CMat) -> C64 {
    pfaffian_dual(a, &CMat::zeros(a.rows, a.cols)).0
}

fn pf_rec(a: &CMat, da: &CMat, mask: u32, memo: &mut HashMap<u32, (C64, C64)>) -> (C64, C64) {
    if mask == 0 {
        return (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let idx: Vec<usize> = (0..a.rows).filter(|i| mask & (1 << i) != 0).collect();
    let first = idx[0];
    let mut val = C64::new(0.0, 0.0);
    let mut dval = C64::new(0.0, 0.0);
    let mut sign = 1.0;
    for (t, &j) in idx[1..].iter().enumerate() {
        let sub = mask & !(1 << first) & !(1 << j);
        let (pv, pdv) = pf_rec(a, da, sub, memo);
        let aij = a[(first, j)];
        let daij = da[(first, j)];
        let s = C64::new(sign, 0.0);
        val += s * aij * pv;
        dval += s * (daij * pv + aij * pdv);
        sign = -sign;
        let _ = t;
    }
    memo.insert(mask, (val, dval));
    (val, dval)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_cmat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
        CMat::from_fn(rows, cols, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
    }

    #[test]
    fn lu_det_small() {
        let a = CMat::from_fn(2, 2, |i, j| c((i * 2 + j + 1) as f64, 0.0));
        // det [[1,2],[3,4]] = -2
        assert!((lu_det(&a) - c(-2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn solve_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_cmat(&mut rng, 5, 5);
        let b = random_cmat(&mut rng, 5, 2);
        let x = solve(&a, &b).unwrap();
        assert!(a.mul(&x).sub(&b).max_abs() < 1e-10);
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [2usize, 3, 6] {
            let g = random_cmat(&mut rng, n, n);
            let h = g.add(&g.adjoint());
            let (vals, vecs) = hermitian_eigen(&h);
            let d = CMat::from_fn(n, n, |i, j| if i == j { c(vals[i], 0.0) } else { c(0.0, 0.0) });
            let rec = vecs.mul(&d).mul(&vecs.adjoint());
            assert!(rec.sub(&h).max_abs() < 1e-10 * h.fro_norm().max(1.0));
            assert!(vecs.adjoint().mul(&vecs).sub(&CMat::eye(n)).max_abs() < 1e-12);
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn hermitian_power_sqrt() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_cmat(&mut rng, 4, 4);
        let h = g.mul(&g.adjoint()).add(&CMat::eye(4).scale(c(0.1, 0.0)));
        let s = hermitian_power(&h, 0.5).unwrap();
        assert!(s.mul(&s).sub(&h).max_abs() < 1e-9);
        let inv = hermitian_power(&h, -1.0).unwrap();
        assert!(h.mul(&inv).sub(&CMat::eye(4)).max_abs() < 1e-9);
    }

    #[test]
    fn svd_reconstructs_rectangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (m, n) in [(3usize, 5usize), (5, 3), (4, 4)] {
            let a = random_cmat(&mut rng, m, n);
            let (u, s, v) = svd(&a);
            assert!(u.adjoint().mul(&u).sub(&CMat::eye(m)).max_abs() < 1e-11);
            assert!(v.adjoint().mul(&v).sub(&CMat::eye(n)).max_abs() < 1e-11);
            let mut sig = CMat::zeros(m, n);
            for (i, &x) in s.iter().enumerate() {
                sig[(i, i)] = c(x, 0.0);
            }
            let rec = u.mul(&sig).mul(&v.adjoint());
            assert!(rec.sub(&a).max_abs() < 1e-10, "{m}x{n} svd residual");
            assert!(s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn svd_rank_deficient() {
        let a = CMat::from_fn(3, 3, |i, j| if i == 0 && j == 0 { c(2.0, 1.0) } else { c(0.0, 0.0) });
        let (u, s, v) = svd(&a);
        assert!((s[0] - 5.0f64.sqrt()).abs() < 1e-12);
        assert!(s[1] < 1e-12 && s[2] < 1e-12);
        assert!(u.adjoint().mul(&u).sub(&CMat::eye(3)).max_abs() < 1e-10);
        assert!(v.adjoint().mul(&v).sub(&CMat::eye(3)).max_abs() < 1e-10);
    }

    #[test]
    fn qr_gives_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_cmat(&mut rng, 6, 6);
        let q = qr_unitary(&a);
        assert!(q.adjoint().mul(&q).sub(&CMat::eye(6)).max_abs() < 1e-11);
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in [2usize, 4, 6] {
            let g = random_cmat(&mut rng, n, n);
            let a = g.sub(&g.transpose()).scale(c(0.5, 0.0));
            let pf = pfaffian(&a);
            let det = lu_det(&a);
            assert!((pf * pf - det).norm() < 1e-10 * det.norm().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn pfaffian_derivative_matches_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_cmat(&mut rng, 6, 6);
        let a = g.sub(&g.transpose()).scale(c(0.5, 0.0));
        let gd = random_cmat(&mut rng, 6, 6);
        let da = gd.sub(&gd.transpose()).scale(c(0.5, 0.0));
        let (_, grad) = pfaffian_dual(&a, &da);
        let h = 1e-6;
        let fd = (pfaffian(&a.add(&da.scale(c(h, 0.0)))) - pfaffian(&a.sub(&da.scale(c(h, 0.0)))))
            / c(2.0 * h, 0.0);
        assert!((grad - fd).norm() < 1e-7);
    }
}
