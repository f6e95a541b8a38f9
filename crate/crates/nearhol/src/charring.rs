//! Independent reference computations over the Weyl character ring, used to
//! cross-check the production decomposition paths at desk scale: Kostant's
//! multiplicity formula (checks the Freudenthal recursion), Klimyk tensor
//! products over Φ_c (checks the cotangent tensor rule), restriction of
//! U-modules to K, and the Frobenius-reciprocity count for line bundles
//! (checks the line-bundle spectrum).
//!
//! These routines are deliberately slow and bounded to small ranks.

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::rootdata::RootSystemData;
use crate::weights::{
    self, is_dominant_u, pairing_free, reflect_free, Weight, WeightMultiset,
};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Enumerates the compact Weyl group as words, keyed by the image of ρ_c.
/// Returns (word, sign) pairs; words apply left-to-right via `reflect_free`.
fn compact_weyl_elements(data: &RootSystemData) -> Vec<(Vec<usize>, i64)> {
    let simples = data.compact_simple();
    let mut seen: HashMap<Weight, (Vec<usize>, i64)> = HashMap::new();
    let mut queue = VecDeque::from([(data.rho_compact.clone(), Vec::new(), 1i64)]);
    while let Some((img, word, sign)) = queue.pop_front() {
        if seen.contains_key(&img) {
            continue;
        }
        for (i, alpha) in simples.iter().enumerate() {
            let mut w = word.clone();
            w.push(i);
            queue.push_back((reflect_free(&img, alpha), w, -sign));
        }
        seen.insert(img, (word, sign));
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, ws)| ws).collect()
}

fn apply_word(v: &Weight, word: &[usize], simples: &[Weight]) -> Weight {
    word.iter().fold(v.clone(), |w, &i| reflect_free(&w, &simples[i]))
}

/// Kostant partition function over Φ_c⁺: number of ways to write `target`
/// as an ℕ-combination of positive compact roots. Every positive root has
/// positive ρ_c-height, so negative height terminates the descent.
fn kostant_partition(
    target: &Weight,
    positives: &[Weight],
    rho_c: &Weight,
    idx: usize,
    memo: &mut HashMap<(Vec<Rat>, usize), u64>,
) -> u64 {
    if target.is_zero() {
        return 1;
    }
    if target.dot(rho_c).is_negative() || idx == positives.len() {
        return 0;
    }
    if let Some(&v) = memo.get(&(target.0.clone(), idx)) {
        return v;
    }
    let mut total = 0u64;
    let mut t = target.clone();
    loop {
        total += kostant_partition(&t, positives, rho_c, idx + 1, memo);
        t = t.sub(&positives[idx]);
        if t.dot(rho_c).is_negative() {
            break;
        }
    }
    memo.insert((target.0.clone(), idx), total);
    total
}

/// Weight multiplicity of ν in the K-module E_μ by Kostant's formula,
/// independent of the Freudenthal recursion.
pub fn kostant_multiplicity(mu: &Weight, nu: &Weight, data: &RootSystemData) -> u64 {
    let rho = &data.rho_compact;
    let mut memo = HashMap::new();
    let mut acc: i64 = 0;
    for (word, sign) in compact_weyl_elements(data) {
        let wmu = apply_word(&mu.add(rho), &word, data.compact_simple());
        let target = wmu.sub(&nu.add(rho));
        let p = kostant_partition(&target, &data.compact_positive, rho, 0, &mut memo);
        acc += sign * p as i64;
    }
    assert!(acc >= 0, "Kostant multiplicity must be nonnegative");
    acc as u64
}

/// K-type decomposition of E_λ ⊗ E_μ over Φ_c by the Klimyk rule.
pub fn klimyk_tensor(
    lambda: &Weight,
    mu: &Weight,
    data: &RootSystemData,
) -> Result<BTreeMap<Weight, u64>> {
    let wts = weights::weight_system(mu, data)?;
    let rho = &data.rho_compact;
    let simples: Vec<Weight> = data.compact_simple().to_vec();
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, mult) in &wts.entries {
        let x = lambda.add(nu).add(rho);
        let (rep, sign) = dominant_rep_signed(&x, &simples);
        // Singular points (on a chamber wall) contribute nothing; walls are
        // visible on the dominant representative.
        if simples.iter().any(|a| pairing_free(&rep, a).is_zero()) {
            continue;
        }
        let hw = rep.sub(rho);
        *acc.entry(hw).or_insert(0) += sign * *mult as i64;
    }
    let mut out = BTreeMap::new();
    for (hw, m) in acc {
        if m < 0 {
            return Err(Error::Integrity(format!(
                "negative tensor multiplicity at {hw}"
            )));
        }
        if m > 0 {
            out.insert(hw, m as u64);
        }
    }
    Ok(out)
}

fn dominant_rep_signed(v: &Weight, simples: &[Weight]) -> (Weight, i64) {
    let mut w = v.clone();
    let mut sign = 1i64;
    'outer: loop {
        for alpha in simples {
            if pairing_free(&w, alpha).is_negative() {
                w = reflect_free(&w, alpha);
                sign = -sign;
                continue 'outer;
            }
        }
        return (w, sign);
    }
}

/// Weight multiset of the irreducible U-module V_λ (over the full root
/// system).
pub fn weight_system_u(lambda: &Weight, data: &RootSystemData) -> Result<WeightMultiset> {
    weights::weight_system_over(
        lambda,
        &data.simple_roots,
        &data.positive_roots,
        &data.rho,
    )
}

/// Restriction of a U-module weight multiset to K: repeatedly strips the
/// highest remaining weight, which must be Φ_c⁺-dominant.
pub fn branch_to_k(system: &WeightMultiset, data: &RootSystemData) -> Result<BTreeMap<Weight, u64>> {
    let mut remaining: BTreeMap<Weight, i64> = system
        .entries
        .iter()
        .map(|(w, m)| (w.clone(), *m as i64))
        .collect();
    let mut out = BTreeMap::new();
    while let Some(top) = highest_remaining(&remaining, data) {
        let mult = remaining[&top];
        let sys = weights::weight_system(&top, data)?;
        for (w, m) in &sys.entries {
            let e = remaining.entry(w.clone()).or_insert(0);
            *e -= mult * *m as i64;
            if *e < 0 {
                return Err(Error::Integrity(format!(
                    "branching went negative at weight {w}"
                )));
            }
            if *e == 0 {
                remaining.remove(w);
            }
        }
        out.insert(top, mult as u64);
    }
    Ok(out)
}

fn highest_remaining(remaining: &BTreeMap<Weight, i64>, data: &RootSystemData) -> Option<Weight> {
    // ρ_c-height argmax is K-dominant since the multiset is W_c-stable;
    // ties broken lexicographically for determinism.
    remaining
        .keys()
        .max_by(|a, b| {
            a.dot(&data.rho_compact)
                .cmp(&b.dot(&data.rho_compact))
                .then_with(|| a.cmp(b))
        })
        .cloned()
}

/// Frobenius-reciprocity multiplicity of the U-type V_λ in the L²-sections of
/// the line bundle with parameter k: the multiplicity of the one-dimensional
/// K-type of highest weight kλ₁ in V_λ|_K.
pub fn frobenius_line_multiplicity(lambda: &Weight, k: i64, data: &RootSystemData) -> Result<u64> {
    if !is_dominant_u(lambda, data) {
        return Err(Error::Domain(format!("{lambda} is not Φ⁺-dominant")));
    }
    let target = data.fundamental_alpha1.scale(crate::exact::rint(k));
    let branches = branch_to_k(&weight_system_u(lambda, data)?, data)?;
    Ok(branches.get(&target).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rint;
    use crate::rootdata::{build_root_data, Family, HermitianType};
    use crate::weights::{gamma_weight, Partition};

    fn space(f: Family) -> RootSystemData {
        build_root_data(&HermitianType::new(f).unwrap()).unwrap()
    }

    #[test]
    fn kostant_agrees_with_freudenthal() {
        for f in [Family::I { p: 2, q: 2 }, Family::I { p: 2, q: 3 }, Family::III { n: 2 }] {
            let data = space(f);
            let mu = data.dominant_rep_compact(&data.strongly_orthogonal[0]);
            let sys = weights::weight_system(&mu, &data).unwrap();
            for (nu, m) in &sys.entries {
                assert_eq!(kostant_multiplicity(&mu, nu, &data), *m, "at {nu}");
            }
        }
    }

    #[test]
    fn su2_line_bundle_frobenius() {
        // ℂP¹: V_n contains the weight k exactly once iff |k| ≤ n with equal
        // parity; here λ = γ_m + kλ₁ has n = 2m + k.
        let data = space(Family::I { p: 1, q: 1 });
        for k in -2i64..=2 {
            for m in 0u32..=4 {
                let lam = gamma_weight(&Partition::new(vec![m]).unwrap(), &data)
                    .add(&data.fundamental_alpha1.scale(rint(k)));
                if !is_dominant_u(&lam, &data) {
                    continue;
                }
                let expect = u64::from(m as i64 >= -k);
                assert_eq!(
                    frobenius_line_multiplicity(&lam, k, &data).unwrap(),
                    expect,
                    "k={k}, m={m}"
                );
            }
        }
    }

    #[test]
    fn tensor_with_trivial_factor() {
        let data = space(Family::I { p: 2, q: 2 });
        let mu = data.simple_roots[0].neg();
        let zero = Weight::zero(data.ambient_dim());
        let t = klimyk_tensor(&zero, &mu, &data).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(&mu), Some(&1));
    }

    #[test]
    fn branching_total_dimension() {
        let data = space(Family::I { p: 1, q: 2 });
        // Adjoint module of su(3): highest weight = highest root, dim 8.
        let lam = data.strongly_orthogonal[0].clone();
        let sys = weight_system_u(&lam, &data).unwrap();
        assert_eq!(sys.total(), 8);
        let branches = branch_to_k(&sys, &data).unwrap();
        let mut total = 0u64;
        for (hw, mult) in &branches {
            let dim = weights::weyl_dim_compact(hw, &data).unwrap();
            total += mult * u64::try_from(dim).unwrap();
        }
        assert_eq!(total, 8);
    }
}
